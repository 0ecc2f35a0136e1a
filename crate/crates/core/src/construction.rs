//! The Buchsteiner loop of order 1024 as an extension of the group
//! `B = C4 x C4` by `A = F_2^6`, and its quotient of order 64.
//!
//! Elements of `B` are `e1^(a1 + 2 a1') e2^(a2 + 2 a2')`, packed as
//! `a1 | a1' << 1 | a2 << 2 | a2' << 3`. Vectors of `A` use the basis
//! `c111, c222, c112, c121, c122, c212` on bits 0..5, with `c211 = c112`
//! and `c221 = c122`. The loop element `(x, a)` has index `64 x + a`.

use std::sync::OnceLock;

use crate::error::Result;
use crate::subloop::{self, QuotientMap, SubloopSet};
use crate::table::{CayleyTable, Elem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BElem(u8);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct B2Elem(u8);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AVec(pub u8);

impl BElem {
    pub const ONE: BElem = BElem(0);
    pub const E1: BElem = BElem(1);
    pub const E2: BElem = BElem(4);

    pub fn new(a1: u8, a1p: u8, a2: u8, a2p: u8) -> BElem {
        BElem((a1 & 1) | (a1p & 1) << 1 | (a2 & 1) << 2 | (a2p & 1) << 3)
    }

    pub fn from_index(i: usize) -> BElem {
        assert!(i < 16);
        BElem(i as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// `(a1, a1', a2, a2')`.
    pub fn bits(self) -> [u8; 4] {
        [self.0 & 1, self.0 >> 1 & 1, self.0 >> 2 & 1, self.0 >> 3 & 1]
    }

    /// Exponents of `e1` and `e2` in `0..4`.
    pub fn exponents(self) -> (u8, u8) {
        (self.0 & 3, self.0 >> 2 & 3)
    }

    pub fn from_exponents(u: u8, v: u8) -> BElem {
        BElem((u & 3) | (v & 3) << 2)
    }

    pub fn mul(self, other: BElem) -> BElem {
        let (a, b) = self.exponents();
        let (c, d) = other.exponents();
        BElem::from_exponents(a + c, b + d)
    }

    pub fn pi(self) -> B2Elem {
        let [a1, _, a2, _] = self.bits();
        B2Elem(a1 | a2 << 1)
    }

    pub fn all() -> impl Iterator<Item = BElem> {
        (0..16u8).map(BElem)
    }
}

impl B2Elem {
    pub const ZERO: B2Elem = B2Elem(0);
    pub const E1: B2Elem = B2Elem(1);
    pub const E2: B2Elem = B2Elem(2);
    pub const E3: B2Elem = B2Elem(3);

    pub fn new(a1: u8, a2: u8) -> B2Elem {
        B2Elem((a1 & 1) | (a2 & 1) << 1)
    }

    pub fn coords(self) -> (u8, u8) {
        (self.0 & 1, self.0 >> 1 & 1)
    }

    pub fn add(self, other: B2Elem) -> B2Elem {
        B2Elem(self.0 ^ other.0)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn all() -> impl Iterator<Item = B2Elem> {
        (0..4u8).map(B2Elem)
    }

    pub fn name(self) -> &'static str {
        ["0", "e1", "e2", "e3"][self.index()]
    }
}

pub const BASIS_NAMES: [&str; 6] = ["c111", "c222", "c112", "c121", "c122", "c212"];

impl AVec {
    pub const ZERO: AVec = AVec(0);

    pub fn add(self, other: AVec) -> AVec {
        AVec(self.0 ^ other.0)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn all() -> impl Iterator<Item = AVec> {
        (0..64u8).map(AVec)
    }

    pub fn has(self, bit: usize) -> bool {
        self.0 >> bit & 1 == 1
    }

    pub fn render(self) -> String {
        let parts: Vec<&str> = (0..6).filter(|&i| self.has(i)).map(|i| BASIS_NAMES[i]).collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Basis vector `c_ijk` for `i, j, k` in `{1, 2}`.
pub fn c(i: u8, j: u8, k: u8) -> AVec {
    let bit = match (i, j, k) {
        (1, 1, 1) => 0,
        (2, 2, 2) => 1,
        (1, 1, 2) | (2, 1, 1) => 2,
        (1, 2, 1) => 3,
        (1, 2, 2) | (2, 2, 1) => 4,
        (2, 1, 2) => 5,
        _ => panic!("bad basis index {i}{j}{k}"),
    };
    AVec(1 << bit)
}

pub fn sum(vs: &[AVec]) -> AVec {
    vs.iter().fold(AVec::ZERO, |a, &b| a.add(b))
}

/// `z1 = c112 + c121`.
pub fn z1() -> AVec {
    sum(&[c(1, 1, 2), c(1, 2, 1)])
}

/// `z2 = c122 + c212`.
pub fn z2() -> AVec {
    sum(&[c(1, 2, 2), c(2, 1, 2)])
}

fn linear(images: [AVec; 6], a: AVec) -> AVec {
    (0..6).filter(|&i| a.has(i)).fold(AVec::ZERO, |acc, i| acc.add(images[i]))
}

fn e1_images() -> [AVec; 6] {
    [c(1, 1, 1), sum(&[c(2, 2, 2), c(1, 2, 2), c(2, 1, 2)]), c(1, 2, 1), c(1, 1, 2), c(1, 2, 2), c(2, 1, 2)]
}

fn e2_images() -> [AVec; 6] {
    [sum(&[c(1, 1, 1), c(1, 1, 2), c(1, 2, 1)]), c(2, 2, 2), c(1, 1, 2), c(1, 2, 1), c(2, 1, 2), c(1, 2, 2)]
}

/// The action of `B` on `A`; it factors through `pi: B -> B2`.
pub fn act(b: B2Elem, a: AVec) -> AVec {
    let (u, v) = b.coords();
    let a = if u == 1 { linear(e1_images(), a) } else { a };
    if v == 1 {
        linear(e2_images(), a)
    } else {
        a
    }
}

fn e(h: u8) -> B2Elem {
    B2Elem::new(h & 1, h >> 1)
}

fn c_form_table() -> &'static [[[AVec; 4]; 4]; 4] {
    static TABLE: OnceLock<[[[AVec; 4]; 4]; 4]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [[[None::<AVec>; 4]; 4]; 4];
        let mut set = |a: B2Elem, b: B2Elem, cc: B2Elem, v: AVec| {
            for (x, y, z) in [(a, b, cc), (cc, b, a)] {
                let slot = &mut t[x.index()][y.index()][z.index()];
                assert!(slot.is_none_or(|old| old == v), "inconsistent C form");
                *slot = Some(v);
            }
        };
        for i in 1..=2u8 {
            for j in 1..=2u8 {
                for k in 1..=2u8 {
                    set(e(i), e(j), e(k), c(i, j, k));
                }
            }
        }
        for (i, j) in [(1u8, 2u8), (2, 1)] {
            let (ei, ej, e3) = (e(i), e(j), B2Elem::E3);
            set(ei, ei, e3, sum(&[c(i, i, i), c(i, j, i)]));
            set(ei, e3, ei, sum(&[c(i, i, i), c(i, i, j)]));
            set(ei, e3, ej, sum(&[c(i, i, j), c(j, j, i)]));
            set(ei, ej, e3, sum(&[c(i, j, j), c(i, j, i)]));
            set(ei, e3, e3, sum(&[c(i, i, i), c(i, i, j), c(j, j, i), c(i, j, i)]));
            set(e3, ej, e3, sum(&[c(j, j, j), c(i, j, i)]));
            set(e3, e3, e3, sum(&[c(i, i, i), c(j, j, j), c(i, i, j), c(j, j, i)]));
        }
        let mut out = [[[AVec::ZERO; 4]; 4]; 4];
        for a in 1..4 {
            for b in 1..4 {
                for cc in 1..4 {
                    out[a][b][cc] = t[a][b][cc].expect("C form fully defined");
                }
            }
        }
        out
    })
}

/// The trilinear-looking form `C: B2^3 -> A`, zero when an argument is 0.
pub fn c_form(a: B2Elem, b: B2Elem, cc: B2Elem) -> AVec {
    c_form_table()[a.index()][b.index()][cc.index()]
}

/// The correction `D: B2^2 -> A`.
pub fn d_corr(u: B2Elem, v: B2Elem) -> AVec {
    use B2Elem as E;
    match (u, v) {
        (E::E1, E::E3) => z1(),
        (E::E2, E::E3) => z2(),
        (E::E3, E::E1) => c(1, 1, 2),
        (E::E3, E::E2) => c(1, 2, 2),
        (E::E3, E::E3) => sum(&[c(1, 2, 1), c(2, 1, 2)]),
        _ => AVec::ZERO,
    }
}

/// `s_h(x,y,z)` for `h` in `{1, 2}`.
pub fn s_h(h: u8, x: BElem, y: BElem, z: BElem) -> bool {
    let [a1, p1, a2, p2] = x.bits();
    let [b1, q1, b2, q2] = y.bits();
    let [c1, r1, c2, r2] = z.bits();
    let (ap, bp, cp) = if h == 1 { (p1, q1, r1) } else { (p2, q2, r2) };
    (ap & (b2 & c1 ^ b1 & c2)) ^ (bp & (c2 & a1 ^ c1 & a2)) ^ (cp & (a2 & b1 ^ a1 & b2)) == 1
}

/// The associator `f(x,y,z)` of the order-1024 loop on `B x {0}`.
pub fn f_assoc(x: BElem, y: BElem, z: BElem) -> AVec {
    let mut v = c_form(x.pi(), y.pi(), z.pi());
    if s_h(1, x, y, z) {
        v = v.add(z1());
    }
    if s_h(2, x, y, z) {
        v = v.add(z2());
    }
    v
}

/// The cocycle `g` with `(x,a)(y,b) = (xy, g(x,y) + pi(y) a + b)`.
pub fn g_cocycle(x: BElem, y: BElem) -> AVec {
    let [a1, p1, a2, p2] = x.bits();
    let [b1, q1, b2, q2] = y.bits();
    let mut v = d_corr(x.pi(), y.pi());
    if (a1 & b2 ^ a2 & b1) == 1 {
        if q1 == 1 {
            v = v.add(z1());
        }
        if q2 == 1 {
            v = v.add(z2());
        }
    }
    let (al, be) = ([p1, p2], [b1, b2]);
    for i in 0..2u8 {
        for j in 0..2u8 {
            if al[i as usize] & be[j as usize] == 1 {
                v = v.add(c(i + 1, j + 1, i + 1));
            }
        }
    }
    v
}

pub fn elem(x: BElem, a: AVec) -> Elem {
    x.index() * 64 + a.0 as usize
}

pub fn split(e: Elem) -> (BElem, AVec) {
    (BElem::from_index(e / 64), AVec((e % 64) as u8))
}

pub fn q1024_mul(p: Elem, q: Elem) -> Elem {
    let (x, a) = split(p);
    let (y, b) = split(q);
    elem(x.mul(y), g_cocycle(x, y).add(act(y.pi(), a)).add(b))
}

pub fn build_q1024() -> CayleyTable {
    CayleyTable::from_fn(1024, q1024_mul).expect("order-1024 table is a loop").with_label("Q1024")
}

/// `{1} x A`, the nucleus of the order-1024 loop.
pub fn q1024_nucleus_members() -> Vec<Elem> {
    (0..64).collect()
}

/// The normal subloop `{1, e2^2} x span{c222, c122, c212}` of order 16.
pub fn q64_kernel_members() -> Vec<Elem> {
    let span = [c(2, 2, 2), c(1, 2, 2), c(2, 1, 2)];
    let mut v = Vec::new();
    for b in [BElem::ONE, BElem::from_exponents(0, 2)] {
        for mask in 0..8u8 {
            let a = sum(&(0..3).filter(|&i| mask >> i & 1 == 1).map(|i| span[i]).collect::<Vec<_>>());
            v.push(elem(b, a));
        }
    }
    v.sort_unstable();
    v
}

/// The four-dimensional subspace `span{c222, c122, c212, c111 + c121}`
/// lifted to `{1} x H`; it is not normal in the order-1024 loop.
pub fn h_subspace_members() -> Vec<Elem> {
    let span = [c(2, 2, 2), c(1, 2, 2), c(2, 1, 2), sum(&[c(1, 1, 1), c(1, 2, 1)])];
    let mut v: Vec<Elem> =
        (0..16u8).map(|mask| elem(BElem::ONE, sum(&(0..4).filter(|&i| mask >> i & 1 == 1).map(|i| span[i]).collect::<Vec<_>>()))).collect();
    v.sort_unstable();
    v
}

pub fn q64_kernel(q1024: &CayleyTable) -> Result<SubloopSet> {
    SubloopSet::new(q1024, q64_kernel_members())
}

/// The order-64 quotient together with its projection from `q1024`.
pub fn build_q64_from(q1024: &CayleyTable) -> Result<QuotientMap> {
    let k = q64_kernel(q1024)?;
    let mut q = subloop::quotient(q1024, &k)?;
    q.table = q.table.clone().with_label("Q64");
    Ok(q)
}

pub fn build_q64() -> CayleyTable {
    build_q64_from(&build_q1024()).expect("kernel is normal").table
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b_is_c4_by_c4() {
        for x in BElem::all() {
            for y in BElem::all() {
                let [a1, p1, a2, p2] = x.bits();
                let [b1, q1, b2, q2] = y.bits();
                let expect = BElem::new(a1 ^ b1, a1 & b1 ^ p1 ^ q1, a2 ^ b2, a2 & b2 ^ p2 ^ q2);
                assert_eq!(x.mul(y), expect);
            }
        }
        assert_eq!(BElem::E1.mul(BElem::E1).bits(), [0, 1, 0, 0]);
    }

    #[test]
    fn action_is_an_involutive_group_action() {
        for a in AVec::all() {
            assert_eq!(act(B2Elem::E1, act(B2Elem::E2, a)), act(B2Elem::E2, act(B2Elem::E1, a)));
            assert_eq!(act(B2Elem::E1, act(B2Elem::E1, a)), a);
            assert_eq!(act(B2Elem::E2, act(B2Elem::E2, a)), a);
            assert_eq!(act(B2Elem::E3, a), act(B2Elem::E2, act(B2Elem::E1, a)));
        }
    }

    #[test]
    fn c_form_reverses() {
        for a in B2Elem::all() {
            for b in B2Elem::all() {
                for cc in B2Elem::all() {
                    assert_eq!(c_form(a, b, cc), c_form(cc, b, a));
                }
            }
        }
        assert_eq!(c_form(B2Elem::E1, B2Elem::E2, B2Elem::E1), c(1, 2, 1));
    }

    #[test]
    fn cocycle_is_normalised() {
        for x in BElem::all() {
            assert!(g_cocycle(x, BElem::ONE).is_zero());
            assert!(g_cocycle(BElem::ONE, x).is_zero());
        }
    }

    #[test]
    fn kernel_shape() {
        let k = q64_kernel_members();
        assert_eq!(k.len(), 16);
        assert_eq!(&k[..8], &[0, 2, 16, 18, 32, 34, 48, 50]);
        assert!(k[8..].iter().zip(&k[..8]).all(|(hi, lo)| *hi == lo + 512));
    }
}
