//! Structural facts about Buchsteiner loops, checked on a concrete table.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{LoopError, Result};
use crate::group::{self, MultGroups};
use crate::identity::{check_identity, element_properties, Law, Mode};
use crate::report::{Outcome, Record, Report};
use crate::subloop::{self, SubloopSet};
use crate::suite::{sweep_all, SuiteOptions};
use crate::table::{CayleyTable, Elem};

/// Pointwise formulas for the maps built from translations.
struct Maps<'a> {
    t: &'a CayleyTable,
}

impl Maps<'_> {
    fn m(&self, a: Elem, b: Elem) -> Elem {
        self.t.mul(a, b)
    }
    fn ld(&self, a: Elem, b: Elem) -> Elem {
        self.t.ldiv(a, b)
    }
    fn rd(&self, a: Elem, b: Elem) -> Elem {
        self.t.rdiv(a, b)
    }
    /// `L(x,y) = L_{xy}^-1 L_x L_y`
    fn lin(&self, x: Elem, y: Elem, w: Elem) -> Elem {
        self.ld(self.m(x, y), self.m(x, self.m(y, w)))
    }
    fn lin_inv(&self, x: Elem, y: Elem, w: Elem) -> Elem {
        self.ld(y, self.ld(x, self.m(self.m(x, y), w)))
    }
    /// `R(x,y) = R_{yx}^-1 R_x R_y`
    fn rin(&self, x: Elem, y: Elem, w: Elem) -> Elem {
        self.rd(self.m(self.m(w, y), x), self.m(y, x))
    }
    /// `T_a = R_a^-1 L_a`
    fn tmap(&self, a: Elem, w: Elem) -> Elem {
        self.rd(self.m(a, w), a)
    }
    /// `E_x = L_{J(x)} L_x`
    fn e(&self, x: Elem, w: Elem) -> Elem {
        self.m(self.t.inv_j(x), self.m(x, w))
    }
    fn e_inv(&self, x: Elem, w: Elem) -> Elem {
        self.ld(x, self.ld(self.t.inv_j(x), w))
    }
    /// `[L_x, R_y] = L_x^-1 R_y^-1 L_x R_y`
    fn comm_lr(&self, x: Elem, y: Elem, w: Elem) -> Elem {
        self.ld(x, self.rd(self.m(x, self.m(w, y)), y))
    }
}

fn aut1(id: &str, desc: &str, t: &CayleyTable, mode: Mode, phi: impl Fn(Elem, Elem) -> Elem + Sync) -> Record {
    sweep_all::<3, _>(id, desc, t.order(), mode, |[x, a, b]| phi(x, t.mul(a, b)) == t.mul(phi(x, a), phi(x, b)))
}

fn is_aut_fn(t: &CayleyTable, phi: impl Fn(Elem) -> Elem) -> bool {
    let img: Vec<Elem> = t.elements().map(phi).collect();
    t.elements().all(|a| t.elements().all(|b| img[t.mul(a, b)] == t.mul(img[a], img[b])))
}

/// The subloop `M` and the related centres of the one-sided
/// multiplication groups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialSubloops {
    /// `{a : L_a in RMlt}`
    pub m: Vec<Elem>,
    /// `{a : R_a in LMlt}`
    pub right_in_lmlt: Vec<Elem>,
    /// `{a : T_a in LMlt_1}`
    pub t_in_lmlt1: Vec<Elem>,
    /// `{a : T_a in RMlt_1}`
    pub t_in_rmlt1: Vec<Elem>,
    /// `b` with `R_b` in the centre of LMlt, from `{R_b : b in N_rho} ∩ LMlt`.
    pub z_lmlt: Vec<Elem>,
    /// `b` with `L_b` in the centre of RMlt.
    pub z_rmlt: Vec<Elem>,
}

pub fn special_subloops(t: &CayleyTable, g: &MultGroups) -> SpecialSubloops {
    let collect = |f: &(dyn Fn(Elem) -> bool + Sync)| -> Vec<Elem> { (0..t.order()).into_par_iter().filter(|&a| f(a)).collect() };
    let m = collect(&|a| g.rmlt.contains(&t.left_translation(a)).unwrap());
    let right_in_lmlt = collect(&|a| g.lmlt.contains(&t.right_translation(a)).unwrap());
    let t_in_lmlt1 = collect(&|a| g.lmlt1.contains(&t.t_inner(a)).unwrap());
    let t_in_rmlt1 = collect(&|a| g.rmlt1.contains(&t.t_inner(a)).unwrap());
    let nr = subloop::right_nucleus(t);
    let nl = subloop::left_nucleus(t);
    let z_lmlt = nr.members().iter().copied().filter(|&b| g.lmlt.contains(&t.right_translation(b)).unwrap()).collect();
    let z_rmlt = nl.members().iter().copied().filter(|&b| g.rmlt.contains(&t.left_translation(b)).unwrap()).collect();
    SpecialSubloops { m, right_in_lmlt, t_in_lmlt1, t_in_rmlt1, z_lmlt, z_rmlt }
}

pub fn theorem_suite(t: &CayleyTable, opts: &SuiteOptions) -> Result<Report> {
    let n = t.order();
    let b = check_identity(t, Law::Buchsteiner, opts.mode(n, 3));
    if !b.passed {
        return Err(LoopError::NotBuchsteiner(b.witness.unwrap_or_default()));
    }
    let mut report = Report::new(t.label());
    report.push(Record::from_check("precondition.buchsteiner", "x\\(xy.z) = (y.zx)/x", &b, 0));
    let (m1, m2, m3) = (opts.mode(n, 1), opts.mode(n, 2), opts.mode(n, 3));
    let ex = Mode::Exhaustive;
    let mp = Maps { t };
    let mp = &mp;
    let (m, ld, rd) = (|a, b| t.mul(a, b), |a, b| t.ldiv(a, b), |a, b| t.rdiv(a, b));
    let (ii, jj, sq) = (|x| t.inv_i(x), |x| t.inv_j(x), |x| t.mul(x, x));

    let g = group::mult_groups(t);
    let nu = subloop::nuclei(t);
    let nuc = nu.nucleus.clone();
    let in_n = |a: Elem| nuc.contains(a);

    // multiplication groups
    report.push(Record::run("inner.lmlt1_equals_rmlt1", "LMlt_1 = RMlt_1 (mutual membership of generators)", ex, || {
        Outcome::from_bool(g.lmlt1.same_group(&g.rmlt1).unwrap()).with_detail(format!(
            "|LMlt_1| = {}, |RMlt_1| = {}",
            g.lmlt1.order(),
            g.rmlt1.order()
        ))
    }));
    report.push(sweep_all::<3, _>("inner.r_map_is_commutator", "R(x,y) = [L_x,R_y] = L(y,x)^-1", n, m3, |[x, y, w]| {
        let r = mp.rin(x, y, w);
        r == mp.comm_lr(x, y, w) && r == mp.lin_inv(y, x, w)
    }));
    report.push(Record::run("mlt.one_sided_groups_normal", "LMlt and RMlt are normal in Mlt", ex, || {
        Outcome::from_bool(g.mlt.is_normal(&g.lmlt).unwrap() && g.mlt.is_normal(&g.rmlt).unwrap()).with_detail(format!(
            "|Mlt| = {}, |LMlt| = {}, |RMlt| = {}",
            g.mlt.order(),
            g.lmlt.order(),
            g.rmlt.order()
        ))
    }));
    report.push(Record::run("nucleus.equal_nuclei", "N_lambda = N_mu = N_rho", ex, || {
        Outcome::from_bool(nu.left == nu.middle && nu.middle == nu.right).with_detail(format!("|N| = {}", nuc.len()))
    }));
    report.push(Record::run("nucleus.normal", "N is a normal subloop, invariant under Inn", ex, || {
        let inv = g.inn.generators().iter().all(|p| nuc.members().iter().all(|&a| nuc.contains(p.apply(a))));
        Outcome::from_bool(subloop::is_normal(t, &nuc) && inv)
    }));
    report.push(Record::run("nucleus.translation_groups_normal", "L_(N) and R_(N) are normal in Mlt", ex, || {
        let l = group::left_translations_group(t, nuc.members());
        let r = group::right_translations_group(t, nuc.members());
        Outcome::from_bool(g.mlt.is_normal(&l).unwrap() && g.mlt.is_normal(&r).unwrap())
    }));
    report.push(Record::run("center.equals_commutant", "Z(Q) = C(Q)", ex, || {
        let z = subloop::center(t);
        let c = subloop::commutant(t);
        Outcome::from_bool(z.members() == c.as_slice()).with_detail(format!("|Z| = {}, |C| = {}", z.len(), c.len()))
    }));

    // inverses
    report.push(sweep_all::<1, _>("inverse.eta_two_forms", "I(x)x = xJ(x)", n, m1, |[x]| m(ii(x), x) == m(x, jj(x))));
    let tech: [(&str, &str, fn(&CayleyTable, Elem) -> bool); 9] = [
        ("inverse.squares_recover_inverses", "J(x)^2 x = I(x) and x I(x)^2 = J(x)", |t, x| {
            let (i, j) = (t.inv_i(x), t.inv_j(x));
            t.mul(t.mul(j, j), x) == i && t.mul(x, t.mul(i, i)) == j
        }),
        ("inverse.divisions_agree", "I(x)/x = x\\J(x)", |t, x| t.rdiv(t.inv_i(x), x) == t.ldiv(x, t.inv_j(x))),
        ("inverse.equal_squares", "J(x)^2 = I(x)^2", |t, x| {
            let (i, j) = (t.inv_i(x), t.inv_j(x));
            t.mul(j, j) == t.mul(i, i)
        }),
        ("inverse.square_products", "I(x)x = I(x)^2 x^2 and xJ(x) = x^2 J(x)^2", |t, x| {
            let (i, j, s) = (t.inv_i(x), t.inv_j(x), t.mul(x, x));
            t.mul(i, x) == t.mul(t.mul(i, i), s) && t.mul(x, j) == t.mul(s, t.mul(j, j))
        }),
        ("inverse.iterated_products", "I(x)x = J(x)J^2(x) and xJ(x) = I^2(x)I(x)", |t, x| {
            let (i, j) = (t.inv_i(x), t.inv_j(x));
            t.mul(i, x) == t.mul(j, t.inv_j(j)) && t.mul(x, j) == t.mul(t.inv_i(i), i)
        }),
        ("inverse.triple_products", "I(x)(xJ(x)) = J(x) and (I(x)x)J(x) = I(x)", |t, x| {
            let (i, j) = (t.inv_i(x), t.inv_j(x));
            t.mul(i, t.mul(x, j)) == j && t.mul(t.mul(i, x), j) == i
        }),
        ("inverse.mixed_products", "(J(x)I(x))x = J(x) and x(J(x)I(x)) = I(x)", |t, x| {
            let (i, j) = (t.inv_i(x), t.inv_j(x));
            t.mul(t.mul(j, i), x) == j && t.mul(x, t.mul(j, i)) == i
        }),
        ("inverse.divisions_swap", "J(x)/x = x\\I(x)", |t, x| t.rdiv(t.inv_j(x), x) == t.ldiv(x, t.inv_i(x))),
        ("inverse.second_powers", "I^2(x) = (xJ(x))x and J^2(x) = x(I(x)x)", |t, x| {
            let (i, j) = (t.inv_i(x), t.inv_j(x));
            t.inv_i(i) == t.mul(t.mul(x, j), x) && t.inv_j(j) == t.mul(x, t.mul(i, x))
        }),
    ];
    for (id, desc, f) in tech {
        report.push(sweep_all::<1, _>(id, desc, n, m1, |[x]| f(t, x)));
    }
    report.push(sweep_all::<1, _>("inverse.eta_nuclear", "eta(x) = xJ(x) lies in N", n, m1, |[x]| in_n(t.eta(x))));

    // inner maps
    report.push(aut1("aut.l_diagonal", "L(x,x) is an automorphism", t, m3, |x, w| mp.lin(x, x, w)));
    report.push(aut1("aut.r_diagonal", "R(x,x) is an automorphism", t, m3, |x, w| mp.rin(x, x, w)));
    report.push(sweep_all::<2, _>("shift.left_and_right", "L_{I^2 x} = L_{eta x} L_x and R_{eta x} R_x = R_{J^2 x}", n, m2, |[x, w]| {
        let e = t.eta(x);
        m(ii(ii(x)), w) == m(e, m(x, w)) && m(m(w, x), e) == m(w, jj(jj(x)))
    }));
    report.push(sweep_all::<2, _>("shift.reversed", "L_x L_{eta x} = L_{J^2 x} and R_x R_{eta x} = R_{I^2 x}", n, m2, |[x, w]| {
        let e = t.eta(x);
        m(x, m(e, w)) == m(jj(jj(x)), w) && m(m(w, e), x) == m(w, ii(ii(x)))
    }));
    report.push(sweep_all::<2, _>("shift.commuting", "L_x R_{eta x} = R_{eta x} L_x and R_x L_{eta x} = L_{eta x} R_x", n, m2, |[x, w]| {
        let e = t.eta(x);
        m(x, m(w, e)) == m(m(x, w), e) && m(m(e, w), x) == m(e, m(w, x))
    }));
    report.push(sweep_all::<2, _>("eta.inner_map", "T_{eta(x)} = R(x,x) E_x^-1", n, m2, |[x, w]| {
        mp.tmap(t.eta(x), w) == mp.rin(x, x, mp.e_inv(x, w))
    }));
    report.push(aut1("eta.inner_map_automorphic", "T_{eta(x)} is an automorphism", t, m3, |x, w| mp.tmap(t.eta(x), w)));
    report.push(Record::run("nucleus.inner_map_criterion", "L_a R_a^-1 in Aut <=> T_a in Aut <=> a in N, for every a", ex, || {
        let w = (0..n).into_par_iter().find_first(|&a| {
            let lr = is_aut_fn(t, |w| m(a, rd(w, a)));
            let ta = is_aut_fn(t, |w| mp.tmap(a, w));
            !(lr == ta && ta == in_n(a))
        });
        Outcome::from_witness(w)
    }));
    report.push(Record::from_check("wwip", "I(xy) I^2(x) = I(y)", &check_identity(t, Law::Wwip, m2), 0));
    let q = subloop::quotient(t, &nuc);
    report.push(Record::run("quotient.abelian_group", "Q/N is an abelian group", ex, || match &q {
        Ok(q) => Outcome::from_bool(q.table.is_associative() && q.table.is_commutative()),
        Err(e) => Outcome::fail(e.to_string()),
    }));
    report.push(Record::run("quotient.exponent_divides_four", "Q/N has exponent dividing 4", ex, || match &q {
        Ok(q) => {
            let qt = &q.table;
            let ords: Vec<usize> = qt.elements().map(|x| qt.element_order(x)).collect();
            let exp = ords.iter().fold(1usize, |a, &b| lcm(a, b));
            Outcome::from_bool(4 % exp == 0).with_detail(format!("|Q/N| = {}, exponent {}", qt.order(), exp))
        }
        Err(e) => Outcome::fail(e.to_string()),
    }));
    report.push(Record::run("inner.one_sided_automorphic", "every element of LMlt_1 and RMlt_1 is an automorphism", ex, || {
        let bad = g.lmlt1.generators().iter().chain(g.rmlt1.generators()).find(|p| !t.is_automorphism(p));
        Outcome::from_witness(bad.map(|p| p.to_string()))
    }));

    // the maps E_x
    report.push(sweep_all::<2, _>("emap.as_inner_map", "E_x = R(x,J(x))^-1 = [L_x,R_{J(x)}]^-1", n, m2, |[x, w]| {
        mp.e(x, mp.rin(x, jj(x), w)) == w && mp.comm_lr(x, jj(x), mp.e(x, w)) == w
    }));
    report.push(aut1("emap.automorphic", "E_x is an automorphism", t, m3, |x, w| mp.e(x, w)));
    report.push(sweep_all::<2, _>("emap.inverse_invariant", "E_{J(x)} = E_x = E_{I(x)}", n, m2, |[x, w]| {
        let e = mp.e(x, w);
        e == mp.e(jj(x), w) && e == mp.e(ii(x), w)
    }));
    let i_order = t.i_map().order();
    report.push(sweep_all::<1, _>("emap.shifts_inverses", "E_x(I^k x) = I^(k-2) x and E_x(J^k x) = J^(k+2) x", n, m1, |[x]| {
        (0..i_order as i64).all(|k| mp.e(x, t.inv_pow(x, k)) == t.inv_pow(x, k - 2) && mp.e(x, t.inv_pow(x, -k)) == t.inv_pow(x, -k - 2))
    }));
    report.push(sweep_all::<2, _>("emap.commutator_form", "E_x = [L_x^-1, R_x^-1]", n, m2, |[x, w]| {
        mp.e(x, w) == m(x, m(ld(x, rd(w, x)), x))
    }));
    report.push(sweep_all::<2, _>(
        "emap.conjugated_r_map",
        "E_x = L_x R_x R(x,x) R_x^-1 L_x^-1 = R_x L_x R(x,x) L_x^-1 R_x^-1",
        n,
        m2,
        |[x, w]| {
            let e = mp.e(x, w);
            e == m(x, m(mp.rin(x, x, rd(ld(x, w), x)), x)) && e == m(m(x, mp.rin(x, x, ld(x, rd(w, x)))), x)
        },
    ));
    report.push(sweep_all::<2, _>(
        "emap.conjugated_l_map",
        "E_x^-1 = L_x R_x L(x,x) R_x^-1 L_x^-1 = R_x L_x L(x,x) L_x^-1 R_x^-1",
        n,
        m2,
        |[x, w]| {
            let e = mp.e_inv(x, w);
            e == m(x, m(mp.lin(x, x, rd(ld(x, w), x)), x)) && e == m(m(x, mp.lin(x, x, ld(x, rd(w, x)))), x)
        },
    ));

    // identities
    report.push(sweep_all::<3, _>("assoc.cyclic_associativity", "x.yz = xy.z <=> y.zx = yz.x <=> z.xy = zx.y", n, m3, |[x, y, z]| {
        let p = m(x, m(y, z)) == m(m(x, y), z);
        let q = m(y, m(z, x)) == m(m(y, z), x);
        let r = m(z, m(x, y)) == m(m(z, x), y);
        p == q && q == r
    }));
    report.push(sweep_all::<3, _>("isotope.left_equals_right", "e\\(ex.y) = (x.ye)/e for all e", n, m3, |[e, x, y]| {
        ld(e, m(m(e, x), y)) == rd(m(x, m(y, e)), e)
    }));
    let lcc = check_identity(t, Law::Lcc, m3);
    let rcc = check_identity(t, Law::Rcc, m3);
    let squares_nuclear = t.elements().filter(|&x| in_n(sq(x))).count();
    report.push(Record::run("cc.left_iff_right", "LCC <=> RCC", m3, || {
        Outcome::from_bool(lcc.passed == rcc.passed).with_detail(format!("lcc {}, rcc {}", pf(lcc.passed), pf(rcc.passed)))
    }));
    report.push(Record::run("cc.squares_nuclear", "if Q is CC then every square lies in N", m3, || {
        let cc = lcc.passed && rcc.passed;
        Outcome::from_bool(!cc || squares_nuclear == n).with_detail(format!("cc {}, {} of {} squares nuclear", pf(cc), squares_nuclear, n))
    }));
    report.push(Record::run("squares.normal_group", "{x^2 a : x in Q, a in N} is a normal subloop and a group", ex, || {
        let mut set: Vec<Elem> = t.elements().flat_map(|x| nuc.members().iter().map(move |&a| m(sq(x), a))).collect();
        set.sort_unstable();
        set.dedup();
        match SubloopSet::new(t, set) {
            Ok(s) => Outcome::from_bool(subloop::is_normal(t, &s) && s.is_group(t)).with_detail(format!("order {}", s.len())),
            Err(e) => Outcome::fail(e.to_string()),
        }
    }));
    let z = subloop::center(t);
    let qz = subloop::quotient(t, &z);
    let qz_mode = qz.as_ref().map(|q| opts.mode(q.table.order(), 3)).unwrap_or(ex);
    report.push(Record::run("center.quotient_cc", "Q/Z(Q) is conjugacy closed", qz_mode, || match &qz {
        Ok(q) => {
            let r = check_identity(&q.table, Law::Cc, qz_mode);
            Outcome::from_witness(r.witness).with_detail(format!("|Z| = {}", z.len()))
        }
        Err(e) => Outcome::fail(e.to_string()),
    }));
    let flags: Vec<_> = (0..n).into_par_iter().map(|a| element_properties(t, a).unwrap()).collect();
    report.push(Record::run(
        "elements.inverse_property_chain",
        "for each a: LIP <=> RIP <=> flexible <=> left alternative <=> right alternative <=> extra",
        ex,
        || {
            let w = flags.iter().position(|f| {
                let v = [f.lip, f.rip, f.flexible, f.left_alt, f.right_alt, f.extra];
                v.iter().any(|&b| b != v[0])
            });
            let extra = flags.iter().filter(|f| f.extra).count();
            Outcome::from_witness(w).with_detail(format!("{extra} extra elements"))
        },
    ));
    report.push(Record::run("elements.moufang_criterion", "a is Moufang <=> a is extra and a^2 in N", ex, || {
        let w = flags.iter().enumerate().position(|(a, f)| f.moufang != (f.extra && in_n(sq(a))));
        Outcome::from_witness(w)
    }));

    // the subloop M
    let sp = special_subloops(t, &g);
    report.push(Record::run("special.four_descriptions", "{L_a in RMlt} = {R_a in LMlt} = {T_a in LMlt_1} = {T_a in RMlt_1}", ex, || {
        Outcome::from_bool(sp.m == sp.right_in_lmlt && sp.m == sp.t_in_lmlt1 && sp.m == sp.t_in_rmlt1)
            .with_detail(format!("|M| = {}", sp.m.len()))
    }));
    report.push(Record::run("special.normal_subloop", "M is a normal subloop", ex, || match SubloopSet::new(t, sp.m.clone()) {
        Ok(s) => Outcome::from_bool(subloop::is_normal(t, &s)),
        Err(e) => Outcome::fail(e.to_string()),
    }));
    report.push(Record::run("special.central_in_nucleus", "M <= Z(N)", ex, || {
        let ok = sp.m.iter().all(|&a| in_n(a) && nuc.members().iter().all(|&b| m(a, b) == m(b, a)));
        Outcome::from_bool(ok)
    }));
    report.push(Record::run("special.one_sided_centres", "Z(LMlt) = R_(M) and Z(RMlt) = L_(M)", ex, || {
        let central_l = sp.z_lmlt.iter().all(|&b| g.lmlt.centralizes(&t.right_translation(b)));
        let central_r = sp.z_rmlt.iter().all(|&b| g.rmlt.centralizes(&t.left_translation(b)));
        Outcome::from_bool(sp.z_lmlt == sp.m && sp.z_rmlt == sp.m && central_l && central_r).with_detail(format!(
            "|Z(LMlt)| = {}, |Z(RMlt)| = {}",
            sp.z_lmlt.len(),
            sp.z_rmlt.len()
        ))
    }));
    Ok(report)
}

fn pf(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "fails"
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}
