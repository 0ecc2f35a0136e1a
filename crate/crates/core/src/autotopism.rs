use serde::Serialize;

use crate::error::{LoopError, PermError, Result};
use crate::perm::Perm;
use crate::table::{CayleyTable, Elem};

/// A triple with `alpha(x) beta(y) = gamma(xy)` when it is an autotopism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Autotopism {
    pub alpha: Perm,
    pub beta: Perm,
    pub gamma: Perm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MInverseVariant {
    /// `(J^{m+1} beta I^{m+1}, J^m gamma I^m, J^m alpha I^m)`
    First,
    /// `(I^m gamma J^m, I^{m+1} alpha J^{m+1}, I^m beta J^m)`
    Second,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutotopismKind {
    /// `(L_x, R_x^-1, L_x R_x^-1)`
    Buch(Elem),
    /// `(L_{xy}, R_{yx}^-1, L_{xy} R_{yx}^-1)`
    BigBuch(Elem, Elem),
    /// `(L_a, R_a^-1, R_a^-1 L_a)`
    Extra(Elem),
    /// `(L_a, R_a, L_a R_a)`
    Moufang(Elem),
    /// `(R_x^-1 L_x, L_x, L_x)`
    Lcc(Elem),
    /// `(R_x, L_x^-1 R_x, R_x)`
    Rcc(Elem),
    NucLeft(Elem),
    NucMiddle(Elem),
    NucRight(Elem),
    MInverse {
        m: i64,
        inner: Box<Autotopism>,
        variant: MInverseVariant,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutotopismCheck {
    pub holds: bool,
    pub witness: Option<(Elem, Elem)>,
}

impl Autotopism {
    pub fn identity(n: usize) -> Autotopism {
        let id = Perm::identity(n);
        Autotopism { alpha: id.clone(), beta: id.clone(), gamma: id }
    }

    pub fn compose(&self, other: &Autotopism) -> Autotopism {
        Autotopism {
            alpha: self.alpha.compose(&other.alpha),
            beta: self.beta.compose(&other.beta),
            gamma: self.gamma.compose(&other.gamma),
        }
    }

    pub fn inverse(&self) -> Autotopism {
        Autotopism { alpha: self.alpha.inverse(), beta: self.beta.inverse(), gamma: self.gamma.inverse() }
    }
}

pub fn build_autotopism(t: &CayleyTable, kind: &AutotopismKind) -> Result<Autotopism> {
    let check = |x: Elem| if t.contains(x) { Ok(()) } else { Err(LoopError::ElementOutOfRange(x)) };
    let id = Perm::identity(t.order());
    let (l, r) = (|x| t.left_translation(x), |x| t.right_translation(x));
    let a = match kind {
        AutotopismKind::Buch(x) => {
            check(*x)?;
            let (lx, rxi) = (l(*x), r(*x).inverse());
            Autotopism { gamma: lx.compose(&rxi), alpha: lx, beta: rxi }
        }
        AutotopismKind::BigBuch(x, y) => {
            check(*x)?;
            check(*y)?;
            let (lxy, ryxi) = (l(t.mul(*x, *y)), r(t.mul(*y, *x)).inverse());
            Autotopism { gamma: lxy.compose(&ryxi), alpha: lxy, beta: ryxi }
        }
        AutotopismKind::Extra(a) => {
            check(*a)?;
            let (la, rai) = (l(*a), r(*a).inverse());
            Autotopism { gamma: rai.compose(&la), alpha: la, beta: rai }
        }
        AutotopismKind::Moufang(a) => {
            check(*a)?;
            let (la, ra) = (l(*a), r(*a));
            Autotopism { gamma: la.compose(&ra), alpha: la, beta: ra }
        }
        AutotopismKind::Lcc(x) => {
            check(*x)?;
            let lx = l(*x);
            Autotopism { alpha: r(*x).inverse().compose(&lx), beta: lx.clone(), gamma: lx }
        }
        AutotopismKind::Rcc(x) => {
            check(*x)?;
            let rx = r(*x);
            Autotopism { alpha: rx.clone(), beta: l(*x).inverse().compose(&rx), gamma: rx }
        }
        AutotopismKind::NucLeft(a) => {
            check(*a)?;
            Autotopism { alpha: l(*a), beta: id.clone(), gamma: l(*a) }
        }
        AutotopismKind::NucMiddle(a) => {
            check(*a)?;
            Autotopism { alpha: r(*a), beta: l(*a).inverse(), gamma: id }
        }
        AutotopismKind::NucRight(a) => {
            check(*a)?;
            Autotopism { alpha: id, beta: r(*a), gamma: r(*a) }
        }
        AutotopismKind::MInverse { m, inner, variant } => {
            for p in [&inner.alpha, &inner.beta, &inner.gamma] {
                if p.degree() != t.order() {
                    return Err(PermError::DegreeMismatch(p.degree(), t.order()).into());
                }
            }
            m_inverse_transform(t, *m, inner, *variant)
        }
    };
    Ok(a)
}

/// Conjugates an autotopism of an `m`-inverse loop into another autotopism.
pub fn m_inverse_transform(t: &CayleyTable, m: i64, a: &Autotopism, variant: MInverseVariant) -> Autotopism {
    let i = t.i_map();
    let j = t.j_map();
    let conj = |outer: &Perm, p: &Perm, inner: &Perm| outer.compose(p).compose(inner);
    match variant {
        MInverseVariant::First => {
            let (jm, im) = (j.pow(m), i.pow(m));
            let (jm1, im1) = (j.pow(m + 1), i.pow(m + 1));
            Autotopism { alpha: conj(&jm1, &a.beta, &im1), beta: conj(&jm, &a.gamma, &im), gamma: conj(&jm, &a.alpha, &im) }
        }
        MInverseVariant::Second => {
            let (im, jm) = (i.pow(m), j.pow(m));
            let (im1, jm1) = (i.pow(m + 1), j.pow(m + 1));
            Autotopism { alpha: conj(&im, &a.gamma, &jm), beta: conj(&im1, &a.alpha, &jm1), gamma: conj(&im, &a.beta, &jm) }
        }
    }
}

/// Checks `alpha(x) beta(y) = gamma(xy)` over all pairs; the witness is the
/// lexicographically smallest failing pair.
pub fn is_autotopism(t: &CayleyTable, a: &Autotopism) -> Result<AutotopismCheck> {
    let n = t.order();
    for p in [&a.alpha, &a.beta, &a.gamma] {
        if p.degree() != n {
            return Err(PermError::DegreeMismatch(p.degree(), n).into());
        }
    }
    for x in 0..n {
        let ax = a.alpha.apply(x);
        for y in 0..n {
            if t.mul(ax, a.beta.apply(y)) != a.gamma.apply(t.mul(x, y)) {
                return Ok(AutotopismCheck { holds: false, witness: Some((x, y)) });
            }
        }
    }
    Ok(AutotopismCheck { holds: true, witness: None })
}
