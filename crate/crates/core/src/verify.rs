//! Checks of the explicit construction: the tabulated values of `C`, the
//! associator formula row by row, the two conditions on `f`, and the
//! structure of the order-1024 and order-64 loops.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::construction::{self as k, act, c, c_form, d_corr, f_assoc, s_h, sum, z1, z2, AVec, B2Elem, BElem};
use std::time::Instant;

use crate::calculus::calculus_suite;
use crate::error::Result;
use crate::identity::{check_identity, Law, Mode, DEFAULT_SAMPLES};
use crate::isotopy::{gloop_report, is_isomorphic, Buchsteiner, GLoopPlan};
use crate::report::{Outcome, Record, Report};
use crate::samples;
use crate::subloop::{self, SubloopSet};
use crate::suite::{minverse_report, SuiteOptions};
use crate::table::CayleyTable;
use crate::theorems::theorem_suite;

const E1: B2Elem = B2Elem::E1;
const E2: B2Elem = B2Elem::E2;
const E3: B2Elem = B2Elem::E3;

/// One row of the tables for `C`: `(b, c, C(a,b,c), C(b,c,a))`.
pub type CRow = (B2Elem, B2Elem, AVec, AVec);

/// The printed tables of `C` for `a = e1`, `e2` and `e1 + e2`.
pub fn printed_c_tables() -> [(B2Elem, [CRow; 6]); 3] {
    let s = |v: &[(u8, u8, u8)]| sum(&v.iter().map(|&(i, j, l)| c(i, j, l)).collect::<Vec<_>>());
    [
        (
            E1,
            [
                (E1, E2, s(&[(1, 1, 2)]), s(&[(1, 2, 1)])),
                (E1, E3, s(&[(1, 1, 1), (1, 2, 1)]), s(&[(1, 1, 1), (1, 1, 2)])),
                (E2, E1, s(&[(1, 2, 1)]), s(&[(1, 1, 2)])),
                (E2, E3, s(&[(1, 2, 2), (1, 2, 1)]), s(&[(1, 2, 2), (1, 1, 2)])),
                (E3, E1, s(&[(1, 1, 1), (1, 1, 2)]), s(&[(1, 1, 1), (1, 2, 1)])),
                (E3, E2, s(&[(1, 1, 2), (1, 2, 2)]), s(&[(1, 2, 2), (1, 2, 1)])),
            ],
        ),
        (
            E2,
            [
                (E1, E2, s(&[(2, 1, 2)]), s(&[(1, 2, 2)])),
                (E1, E3, s(&[(1, 1, 2), (2, 1, 2)]), s(&[(1, 1, 2), (1, 2, 2)])),
                (E2, E1, s(&[(1, 2, 2)]), s(&[(2, 1, 2)])),
                (E2, E3, s(&[(2, 2, 2), (2, 1, 2)]), s(&[(2, 2, 2), (1, 2, 2)])),
                (E3, E1, s(&[(1, 1, 2), (1, 2, 2)]), s(&[(1, 1, 2), (2, 1, 2)])),
                (E3, E2, s(&[(2, 2, 2), (1, 2, 2)]), s(&[(2, 2, 2), (2, 1, 2)])),
            ],
        ),
        (
            E3,
            [
                (E1, E2, s(&[(1, 1, 2), (2, 1, 2)]), s(&[(1, 2, 2), (1, 2, 1)])),
                (E1, E3, s(&[(1, 1, 1), (2, 1, 2)]), s(&[(1, 1, 1), (1, 1, 2), (1, 2, 2), (1, 2, 1)])),
                (E2, E1, s(&[(1, 2, 2), (2, 1, 2)]), s(&[(1, 1, 2), (1, 2, 1)])),
                (E2, E3, s(&[(2, 2, 2), (1, 2, 1)]), s(&[(2, 2, 2), (1, 2, 2), (1, 1, 2), (2, 1, 2)])),
                (E3, E1, s(&[(1, 1, 1), (1, 1, 2), (1, 2, 2), (1, 2, 1)]), s(&[(1, 1, 1), (2, 1, 2)])),
                (E3, E2, s(&[(2, 2, 2), (1, 2, 2), (1, 1, 2), (2, 1, 2)]), s(&[(2, 2, 2), (1, 2, 1)])),
            ],
        ),
    ]
}

/// Column order of the printed associator-formula table.
pub const FORMULA_COLUMNS: [(u8, u8, u8); 6] = [(1, 1, 1), (2, 2, 2), (1, 2, 1), (2, 1, 2), (1, 1, 2), (1, 2, 2)];

/// The printed associator-formula table, one string per cell.
pub const PRINTED_FORMULA_ROWS: [(&str, [&str; 6]); 27] = [
    ("e1 e1 e1", ["06", "", "", "", "", ""]),
    ("e1 e1 e2", ["", "", "36", "", "03", ""]),
    ("e1 e1 e3", ["06", "", "0456", "", "45", ""]),
    ("e1 e2 e1", ["", "", "03", "", "13", ""]),
    ("e1 e2 e2", ["", "", "", "", "", "01"]),
    ("e1 e2 e3", ["", "", "01", "14", "", "04"]),
    ("e1 e3 e1", ["06", "", "25", "", "0245", ""]),
    ("e1 e3 e2", ["", "", "26", "", "02", "04"]),
    ("e1 e3 e3", ["06", "", "0246", "14", "02", "01"]),
    ("e2 e1 e1", ["", "", "", "", "01", ""]),
    ("e2 e1 e2", ["", "", "", "03", "", "13"]),
    ("e2 e1 e3", ["", "", "14", "01", "04", ""]),
    ("e2 e2 e1", ["", "", "", "36", "0", "3"]),
    ("e2 e2 e2", ["", "06", "", "", "", ""]),
    ("e2 e2 e3", ["", "06", "", "0456", "", "45"]),
    ("e2 e3 e1", ["", "", "", "26", "04", "02"]),
    ("e2 e3 e2", ["", "06", "", "25", "", "0245"]),
    ("e2 e3 e3", ["", "06", "14", "0246", "01", "02"]),
    ("e3 e1 e1", ["06", "", "02", "", "", ""]),
    ("e3 e1 e2", ["", "", "36", "30", "20", ""]),
    ("e3 e1 e3", ["06", "", "2456", "01", "45", "13"]),
    ("e3 e2 e1", ["", "", "03", "36", "", "02"]),
    ("e3 e2 e2", ["", "06", "", "02", "", ""]),
    ("e3 e2 e3", ["", "06", "01", "2456", "13", "45"]),
    ("e3 e3 e1", ["06", "", "01", "26", "0241", "03"]),
    ("e3 e3 e2", ["", "06", "26", "02", "03", "0242"]),
    ("e3 e3 e3", ["06", "06", "46", "46", "02", "02"]),
];

/// One row of the associator-formula table: the target `C(a,b,c)` at
/// index 0 and the six summands of the expansion at indices 1..=6.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaRow {
    pub abc: (B2Elem, B2Elem, B2Elem),
    pub parts: [AVec; 7],
}

impl FormulaRow {
    pub fn compute(a: B2Elem, b: B2Elem, cc: B2Elem) -> FormulaRow {
        let (a1, a2) = a.coords();
        let (b1, b2) = b.coords();
        let (c1, c2) = cc.coords();
        let (al, be, ga) = ([a1, a2], [b1, b2], [c1, c2]);
        let bg = sum(&[if b1 & c1 == 1 { z1() } else { AVec::ZERO }, if b2 & c2 == 1 { z2() } else { AVec::ZERO }]);
        let fifth = if (a1 & (b2 ^ c2)) ^ (a2 & (b1 ^ c1)) == 1 { bg } else { AVec::ZERO };
        let mut sixth = AVec::ZERO;
        for i in 0..2 {
            for j in 0..2 {
                if al[i] & be[i] & ga[j] == 1 {
                    sixth = sixth.add(c(i as u8 + 1, j as u8 + 1, i as u8 + 1));
                }
            }
        }
        let parts = [c_form(a, b, cc), d_corr(a.add(b), cc), act(cc, d_corr(a, b)), d_corr(a, b.add(cc)), d_corr(b, cc), fifth, sixth];
        FormulaRow { abc: (a, b, cc), parts }
    }

    pub fn all() -> Vec<FormulaRow> {
        let nz = [E1, E2, E3];
        let mut v = Vec::new();
        for a in nz {
            for b in nz {
                for cc in nz {
                    v.push(FormulaRow::compute(a, b, cc));
                }
            }
        }
        v
    }

    /// The digits in each column, in the printed column order.
    pub fn cells(&self) -> [String; 6] {
        FORMULA_COLUMNS.map(|(i, j, l)| {
            let bit = c(i, j, l);
            (0..7).filter(|&d| self.parts[d].0 & bit.0 != 0).map(|d| char::from(b'0' + d as u8)).collect()
        })
    }

    pub fn even_cells(&self) -> bool {
        self.cells().iter().all(|s| s.len() % 2 == 0)
    }

    pub fn balanced(&self) -> bool {
        self.parts[1..].iter().fold(AVec::ZERO, |acc, &v| acc.add(v)) == self.parts[0]
    }

    pub fn name(&self) -> String {
        format!("{} {} {}", self.abc.0.name(), self.abc.1.name(), self.abc.2.name())
    }
}

fn ex(id: &str, description: &str, f: impl FnOnce() -> Outcome) -> Record {
    Record::run(id, description, Mode::Exhaustive, f)
}

fn first<T: std::fmt::Debug>(mut it: impl Iterator<Item = T>) -> Outcome {
    Outcome::from_witness(it.next())
}

fn triples() -> impl Iterator<Item = (BElem, BElem, BElem)> {
    BElem::all().flat_map(|x| BElem::all().flat_map(move |y| BElem::all().map(move |z| (x, y, z))))
}

fn quads() -> impl Iterator<Item = (BElem, BElem, BElem, BElem)> {
    triples().flat_map(|(x, y, z)| BElem::all().map(move |u| (x, y, z, u)))
}

fn span(vs: &[AVec]) -> Vec<AVec> {
    (0..1u32 << vs.len()).map(|m| sum(&(0..vs.len()).filter(|&i| m >> i & 1 == 1).map(|i| vs[i]).collect::<Vec<_>>())).collect()
}

/// The component-level checks that need no loop table.
pub fn verify_forms() -> Report {
    let mut r = Report::new("B, A and the forms C, D, s, f");

    r.push(ex("action.basis_examples", "e1 sends c112 to c121 and e2 sends c111 to c111+c112+c121", || {
        Outcome::from_bool(act(E1, c(1, 1, 2)) == c(1, 2, 1) && act(E2, c(1, 1, 1)) == sum(&[c(1, 1, 1), c(1, 1, 2), c(1, 2, 1)]))
    }));
    r.push(ex("action.group_action", "b(b'a) = (bb')a for all b, b' in B and a in A", || {
        first(BElem::all().flat_map(|x| {
            BElem::all().flat_map(move |y| {
                AVec::all().filter(move |&a| act(x.pi(), act(y.pi(), a)) != act(x.mul(y).pi(), a)).map(move |a| (x, y, a))
            })
        }))
    }));
    r.push(ex("action.linear_invertible", "each b acts linearly and bijectively on A", || {
        first(BElem::all().filter(|&x| {
            let imgs: std::collections::HashSet<AVec> = AVec::all().map(|a| act(x.pi(), a)).collect();
            imgs.len() != 64 || AVec::all().any(|a| AVec::all().any(|v| act(x.pi(), a.add(v)) != act(x.pi(), a).add(act(x.pi(), v))))
        }))
    }));
    r.push(ex("action.squares_trivial", "b acting twice is the identity on A", || {
        first(BElem::all().flat_map(|x| AVec::all().filter(move |&a| act(x.pi(), act(x.pi(), a)) != a).map(move |a| (x, a))))
    }));
    r.push(ex("action.fixed_subspace", "the vectors fixed by B are exactly span{z1, z2}", || {
        let fixed: Vec<AVec> = AVec::all().filter(|&a| act(E1, a) == a && act(E2, a) == a).collect();
        let mut want = span(&[z1(), z2()]);
        want.sort();
        if fixed == want {
            Outcome::pass()
        } else {
            Outcome::fail(format!("{fixed:?}"))
        }
    }));

    r.push(ex("cform.examples", "C(e1,e2,e1) = c121, C(0,b,c) = 0, C(e1+e2,e1,e2) = c112+c212", || {
        let zero = B2Elem::all().all(|b| B2Elem::all().all(|cc| c_form(B2Elem::ZERO, b, cc).is_zero()));
        Outcome::from_bool(zero && c_form(E1, E2, E1) == c(1, 2, 1) && c_form(E3, E1, E2) == sum(&[c(1, 1, 2), c(2, 1, 2)]))
    }));
    for (a, rows) in printed_c_tables() {
        let id = format!("cform.table_a_{}", a.name());
        let desc = format!("C(a,b,c) and C(b,c,a) match the printed table for a = {}", a.name());
        r.push(ex(&id, &desc, || {
            let bad = rows.iter().find(|&&(b, cc, x, y)| c_form(a, b, cc) != x || c_form(b, cc, a) != y);
            match bad {
                None => Outcome::pass(),
                Some(&(b, cc, x, y)) => Outcome::fail(format!(
                    "b={} c={}: printed {} / {}, computed {} / {}",
                    b.name(),
                    cc.name(),
                    x.render(),
                    y.render(),
                    c_form(a, b, cc).render(),
                    c_form(b, cc, a).render()
                )),
            }
        }));
    }
    r.push(ex("cform.table_sums", "each table row sums to the value of f(x^2,y,z) for that a", || {
        let lhs = |a: B2Elem| match a {
            E1 => z1(),
            E2 => z2(),
            _ => z1().add(z2()),
        };
        first(printed_c_tables().into_iter().flat_map(|(a, rows)| {
            rows.into_iter().filter(move |&(_, _, x, y)| x.add(y) != lhs(a)).map(move |(b, cc, _, _)| (a.name(), b.name(), cc.name()))
        }))
    }));
    r.push(ex("cform.cyclic_action", "aC(a,b,c) = C(b,c,a) for all a, b, c in B2", || {
        first(B2Elem::all().flat_map(|a| {
            B2Elem::all()
                .flat_map(move |b| B2Elem::all().filter(move |&cc| act(a, c_form(a, b, cc)) != c_form(b, cc, a)).map(move |cc| (a, b, cc)))
        }))
    }));

    r.push(ex("dcorr.examples", "D(e1,e2) = 0, D(e1+e2,e1) = c112, D(e1+e2,e1+e2) = c121+c212", || {
        Outcome::from_bool(d_corr(E1, E2).is_zero() && d_corr(E3, E1) == c(1, 1, 2) && d_corr(E3, E3) == sum(&[c(1, 2, 1), c(2, 1, 2)]))
    }));

    r.push(ex("sform.symmetric", "s_h is invariant under all permutations of its arguments", || {
        first(triples().filter(|&(x, y, z)| {
            (1..=2).any(|h| {
                let v = s_h(h, x, y, z);
                [(x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)].iter().any(|&(p, q, w)| s_h(h, p, q, w) != v)
            })
        }))
    }));
    r.push(ex("sform.square_rules", "s_h(xu^2,y,z) = s_h(x,y,z) + s_h(u^2,y,z), s_h(u^2,xy,z) splits, s_h(x^2,y^2,z) = 0", || {
        first(quads().filter(|&(x, y, z, u)| {
            let u2 = u.mul(u);
            (1..=2).any(|h| {
                s_h(h, x.mul(u2), y, z) != s_h(h, x, y, z) ^ s_h(h, u2, y, z)
                    || s_h(h, u2, x.mul(y), z) != s_h(h, u2, x, z) ^ s_h(h, u2, y, z)
                    || s_h(h, x.mul(x), y.mul(y), z)
            })
        }))
    }));

    r.push(ex("fform.examples", "f(x,1,z) = 0 and f(e1^2,e2,e1) = z1", || {
        let e1 = BElem::E1;
        let unit = BElem::all().all(|x| BElem::all().all(|z| f_assoc(x, BElem::ONE, z).is_zero()));
        Outcome::from_bool(unit && f_assoc(e1.mul(e1), BElem::E2, e1) == z1())
    }));
    r.push(ex("fform.square_additivity", "f is additive under multiplying any argument by a square", || {
        first(quads().filter(|&(x, y, z, u)| {
            let u2 = u.mul(u);
            f_assoc(x.mul(u2), y, z) != f_assoc(x, y, z).add(f_assoc(u2, y, z))
                || f_assoc(x, y.mul(u2), z) != f_assoc(x, y, z).add(f_assoc(x, u2, z))
                || f_assoc(x, y, z.mul(u2)) != f_assoc(x, y, z).add(f_assoc(x, y, u2))
        }))
    }));
    r.push(ex("fform.square_values", "f(u^2,y,z) is symmetric in its placements and fixed by B", || {
        first(triples().filter(|&(u, y, z)| {
            let u2 = u.mul(u);
            let v = f_assoc(u2, y, z);
            [f_assoc(u2, z, y), f_assoc(y, u2, z), f_assoc(z, u2, y), f_assoc(y, z, u2), f_assoc(z, y, u2)].iter().any(|&w| w != v)
                || act(E1, v) != v
                || act(E2, v) != v
        }))
    }));
    r.push(ex("fform.square_first_linear", "f(u^2,xy,z) = f(u^2,x,z) + f(u^2,y,z) and f(x^2,y^2,z) = 0", || {
        first(quads().filter(|&(x, y, z, u)| {
            let u2 = u.mul(u);
            f_assoc(u2, x.mul(y), z) != f_assoc(u2, x, z).add(f_assoc(u2, y, z)) || !f_assoc(x.mul(x), y.mul(y), z).is_zero()
        }))
    }));
    r.push(ex("fform.square_first", "f(x^2,y,z) = f(x,y,z) + f(y,z,x)", || {
        first(triples().filter(|&(x, y, z)| f_assoc(x.mul(x), y, z) != f_assoc(x, y, z).add(f_assoc(y, z, x))))
    }));
    r.push(ex("fform.cyclic_action", "x f(x,y,z) = -f(y,z,x) on all 16^3 triples (A has exponent 2)", || {
        first(triples().filter(|&(x, y, z)| act(x.pi(), f_assoc(x, y, z)) != f_assoc(y, z, x)))
    }));
    r.push(ex("fform.product_rule", "f(uv,y,z) = v f(u,y,z) + f(v,y,z) on all 16^4 quadruples", || {
        first(quads().filter(|&(u, v, y, z)| f_assoc(u.mul(v), y, z) != act(v.pi(), f_assoc(u, y, z)).add(f_assoc(v, y, z))))
    }));

    r.push(ex("cocycle.normalised", "g(1,y) = g(x,1) = 0", || {
        first(BElem::all().filter(|&x| !k::g_cocycle(x, BElem::ONE).is_zero() || !k::g_cocycle(BElem::ONE, x).is_zero()))
    }));

    let rows = FormulaRow::all();
    r.push(ex("assocformula.even_cells", "in all 27 rows every basis column carries an even number of digits", || {
        first(rows.iter().filter(|row| !row.even_cells()).map(|row| row.name()))
    }));
    r.push(ex("assocformula.balanced", "C(a,b,c) equals the sum of the six correction summands in all 27 rows", || {
        let matches = rows
            .iter()
            .zip(PRINTED_FORMULA_ROWS.iter())
            .filter(|(row, (_, printed))| row.cells().iter().zip(printed.iter()).all(|(a, b)| sorted(a) == sorted(b)));
        let n = matches.count();
        first(rows.iter().filter(|row| !row.balanced()).map(|row| row.name()))
            .with_detail(format!("{n} of 27 rows agree digit for digit with the printed table"))
    }));
    r
}

fn sorted(s: &str) -> Vec<u8> {
    let mut v: Vec<u8> = s.bytes().collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Checks on the built loops. `q64` must be the quotient of `q1024` by
/// [`k::q64_kernel`].
pub fn verify_loops(q1024: &CayleyTable, q64: &CayleyTable, seed: u64) -> Report {
    let mut r = Report::new("Q1024 and Q64");
    let e = |x: BElem| k::elem(x, AVec::ZERO);
    let e1 = BElem::E1;
    let e2 = BElem::E2;

    r.push(ex("q1024.valid", "order 1024 with identity at 0", || Outcome::from_bool(q1024.order() == 1024 && q1024.mul(0, 7) == 7)));
    r.push(ex("q1024.square_example", "(e1,0)(e1,0) = (e1^2,0)", || Outcome::from_bool(q1024.mul(e(e1), e(e1)) == e(e1.mul(e1)))));
    r.push(ex("q1024.associator_is_f", "[(x,0),(y,0),(z,0)] = (1, f(x,y,z)) for all 4096 triples", || {
        first(triples().filter(|&(x, y, z)| subloop::assoc(q1024, e(x), e(y), e(z)) != k::elem(BElem::ONE, f_assoc(x, y, z))))
    }));
    let samples = 1000;
    r.push(Record::run(
        "q1024.associator_independent",
        "[(x,a),(y,b),(z,c)] does not depend on a, b, c",
        Mode::Sampled { samples, seed },
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let bad = (0..samples).find_map(|_| {
                let p: [usize; 6] = std::array::from_fn(|i| if i < 3 { rng.random_range(0..16) } else { rng.random_range(0..64) });
                let (x, y, z) = (BElem::from_index(p[0]), BElem::from_index(p[1]), BElem::from_index(p[2]));
                let lifted =
                    subloop::assoc(q1024, k::elem(x, AVec(p[3] as u8)), k::elem(y, AVec(p[4] as u8)), k::elem(z, AVec(p[5] as u8)));
                (lifted != subloop::assoc(q1024, e(x), e(y), e(z))).then_some(p)
            });
            Outcome::from_witness(bad)
        },
    ));

    let n = subloop::nucleus(q1024);
    r.push(ex("q1024.nucleus", "N(Q1024) = {1} x A, of order 64", || {
        Outcome::from_bool(n.members() == k::q1024_nucleus_members().as_slice()).with_detail(format!("|N| = {}", n.len()))
    }));
    let quo = subloop::quotient(q1024, &n);
    r.push(ex("q1024.factor_is_b", "Q1024/N is an abelian group isomorphic to B = C4 x C4 via x -> (x,0)N", || {
        let Ok(quo) = quo else { return Outcome::fail("nucleus is not normal") };
        let b_table = samples::direct_product(&samples::cyclic(4), &samples::cyclic(4));
        let hom = triples().all(|(x, y, _)| quo.projection[e(x.mul(y))] == quo.table.mul(quo.projection[e(x)], quo.projection[e(y)]));
        let fibres = (0..1024).all(|p| quo.projection[p] == quo.projection[e(k::split(p).0)]);
        let group = quo.table.is_associative() && quo.table.is_commutative();
        let exp4 = quo.table.elements().all(|x| 4 % quo.table.element_order(x) == 0)
            && quo.table.elements().any(|x| quo.table.element_order(x) == 4);
        Outcome::from_bool(hom && fibres && group && exp4 && is_isomorphic(&quo.table, &b_table).is_some())
    }));

    let h = k::h_subspace_members();
    r.push(ex("q1024.listed_subspace_not_normal", "{1} x span{c222, c122, c212, c111+c121} is a subloop but not normal", || {
        match SubloopSet::new(q1024, h) {
            Ok(s) => Outcome::from_bool(!subloop::is_normal(q1024, &s)),
            Err(_) => Outcome::fail("not a subloop"),
        }
    }));
    r.push(ex("q1024.kernel_normal", "K = {1, e2^2} x span{c222, c122, c212} is a normal subloop of order 16", || {
        match k::q64_kernel(q1024) {
            Ok(s) => Outcome::from_bool(s.len() == 16 && subloop::is_normal(q1024, &s)),
            Err(err) => Outcome::fail(err.to_string()),
        }
    }));

    let proj = k::build_q64_from(q1024).map(|q| q.projection);
    let n64 = subloop::nucleus(q64);
    r.push(ex("q64.valid", "Q64 has order 64", || Outcome::from_bool(q64.order() == 64)));
    r.push(ex("q64.nucleus", "|N(Q64)| = 8", || Outcome::from_bool(n64.len() == 8).with_detail(format!("|N| = {}", n64.len()))));
    r.push(ex("q64.square_placement", "the image of e1^2 is not nuclear and the image of e2^2 is", || {
        let Ok(proj) = &proj else { return Outcome::fail("quotient failed") };
        let img = |x: BElem| proj[e(x)];
        Outcome::from_bool(!n64.contains(img(e1.mul(e1))) && n64.contains(img(e2.mul(e2))))
    }));
    r.push(ex("q64.non_nuclear_square", "some x in Q64 has x^2 outside N(Q64)", || {
        let count = q64.elements().filter(|&x| !n64.contains(q64.mul(x, x))).count();
        Outcome::from_bool(count > 0).with_detail(format!("{count} elements have non-nuclear squares"))
    }));
    r.push(ex("q64.factor", "Q64/N(Q64) is isomorphic to C4 x C2", || {
        let Ok(quo) = subloop::quotient(q64, &n64) else { return Outcome::fail("nucleus is not normal") };
        let want = samples::direct_product(&samples::cyclic(4), &samples::cyclic(2));
        Outcome::from_bool(is_isomorphic(&quo.table, &want).is_some())
    }));
    r
}

/// Builds both loops and runs every check: the construction, the laws,
/// the theorem and calculus suites, the inverse ladder and the isotope
/// isomorphisms. `fast` samples the Buchsteiner law on Q1024 and limits the
/// isotope checks there.
pub fn verify_all(fast: bool) -> Result<Report> {
    let q1024 = k::build_q1024();
    let q64 = k::build_q64_from(&q1024)?.table;
    let mut r = Report::new(if fast { "Q1024 and Q64 (fast)" } else { "Q1024 and Q64" });
    r.extend_prefixed("construction", verify_forms());
    r.extend_prefixed("construction", verify_loops(&q1024, &q64, 1));

    let big = if fast { Mode::Sampled { samples: DEFAULT_SAMPLES, seed: 1 } } else { Mode::Exhaustive };
    for (t, mode) in [(&q64, Mode::Exhaustive), (&q1024, big)] {
        let name = t.label().to_lowercase();
        let start = Instant::now();
        let c = check_identity(t, Law::Buchsteiner, mode);
        r.push(Record::from_check(&format!("{name}.law.buchsteiner"), "satisfies the Buchsteiner law", &c, ms(start)));
        let start = Instant::now();
        let cc = check_identity(t, Law::Cc, Mode::auto(t.order(), 3, Some(1), None)?);
        let mut rec = Record::from_check(&format!("{name}.law.not_cc"), "is not conjugacy closed", &cc, ms(start));
        rec.passed = !cc.passed;
        rec.detail = cc.witness.as_ref().map(|w| format!("cc fails at {w:?} ({})", cc.failed_part.clone().unwrap_or_default()));
        rec.witness = None;
        r.push(rec);
    }

    r.extend_prefixed("q64", theorem_suite(&q64, &SuiteOptions::default())?);
    r.extend_prefixed("q1024", theorem_suite(&q1024, &SuiteOptions::fast())?);
    r.extend_prefixed("q64", calculus_suite(&q64, &SuiteOptions::default())?);
    r.extend_prefixed("q1024", calculus_suite(&q1024, &if fast { SuiteOptions::fast() } else { SuiteOptions::default() })?);
    r.extend_prefixed("q64", minverse_report(&q64, 1)?);

    let b64 = Buchsteiner::verify(&q64, Mode::Exhaustive)?;
    r.extend_prefixed("q64", gloop_report(b64, &GLoopPlan::full(&q64, 8, 1))?);
    let b1024 = Buchsteiner::verify(&q1024, big)?;
    let plan = if fast { GLoopPlan::sampled(&q1024, 32, 0, 8, 1) } else { GLoopPlan::sampled(&q1024, 1023, 0, 64, 1) };
    r.extend_prefixed("q1024", gloop_report(b1024, &plan)?);
    Ok(r)
}

fn ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

/// Everything above, building both loops.
pub fn verify_construction() -> Report {
    let q1024 = k::build_q1024();
    let q64 = k::build_q64_from(&q1024).expect("kernel is normal").table;
    let mut r = verify_forms();
    r.extend(verify_loops(&q1024, &q64, 1));
    r.input = "construction of Q1024 and Q64".into();
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_example_row() {
        let row = FormulaRow::compute(E1, E1, E2);
        let cells = row.cells();
        assert_eq!(cells[2], "36");
        assert_eq!(cells[4], "03");
        assert!(row.balanced());
    }

    #[test]
    fn formula_rows_against_print() {
        let differing: Vec<String> = FormulaRow::all()
            .iter()
            .zip(PRINTED_FORMULA_ROWS.iter())
            .filter(|(row, (_, printed))| !row.cells().iter().zip(printed.iter()).all(|(a, b)| sorted(a) == sorted(b)))
            .map(|(row, (name, _))| {
                assert_eq!(&row.name(), name);
                row.name()
            })
            .collect();
        assert_eq!(differing, ["e2 e2 e1", "e3 e3 e1", "e3 e3 e2"]);
    }

    #[test]
    fn c_table_example() {
        let (_, rows) = printed_c_tables()[0];
        assert_eq!(rows[0], (E1, E2, c(1, 1, 2), c(1, 2, 1)));
        assert_eq!(c_form(E1, E1, E2), c(1, 1, 2));
    }

    #[test]
    fn forms_fail_only_on_the_swapped_cell() {
        let r = verify_forms();
        let failed: Vec<&str> = r.failures().map(|f| f.id.as_str()).collect();
        assert_eq!(failed, ["cform.table_a_e3"], "{}", r.render_text());
        let w = r.get("cform.table_a_e3").unwrap().witness.as_deref().unwrap();
        assert!(w.starts_with("b=e2 c=e1: printed c122 + c212 / c112 + c121"), "{w}");
    }
}
