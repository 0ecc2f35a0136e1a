//! Associator calculus for loops whose associators are nuclear.
//!
//! Identities are evaluated on the least element of each coset of the
//! nucleus, after checking that associators and the action on them do not
//! depend on that choice. Inverses inside associators resolve to `I(x)`.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{LoopError, Result};
use crate::identity::{check_identity, Law, Mode};
use crate::report::{Outcome, Record, Report};
use crate::subloop::{self, QuotientMap, SubloopSet};
use crate::suite::{sweep_all, sweep_record, SuiteOptions};
use crate::table::{CayleyTable, Elem};

const PERTURBATIONS: u64 = 1000;

/// Coset data shared by the calculus checks.
pub struct Calc<'a> {
    pub t: &'a CayleyTable,
    pub nucleus: SubloopSet,
    pub quotient: QuotientMap,
    pub reps: Vec<Elem>,
}

impl<'a> Calc<'a> {
    /// Fails unless the nucleus is normal with a group quotient.
    pub fn new(t: &'a CayleyTable) -> Result<Calc<'a>> {
        let nucleus = subloop::nucleus(t);
        let quotient = subloop::quotient(t, &nucleus)?;
        if !quotient.table.is_associative() {
            return Err(LoopError::AssociatorsNotNuclear);
        }
        let reps = (0..quotient.blocks.len()).map(|b| quotient.representative(b)).collect();
        Ok(Calc { t, nucleus, quotient, reps })
    }

    #[inline]
    pub fn m(&self, a: Elem, b: Elem) -> Elem {
        self.t.mul(a, b)
    }

    #[inline]
    pub fn i(&self, x: Elem) -> Elem {
        self.t.inv_i(x)
    }

    #[inline]
    pub fn sq(&self, x: Elem) -> Elem {
        self.t.mul(x, x)
    }

    #[inline]
    pub fn a(&self, x: Elem, y: Elem, z: Elem) -> Elem {
        subloop::assoc(self.t, x, y, z)
    }

    #[inline]
    pub fn c(&self, x: Elem, y: Elem) -> Elem {
        subloop::commutator(self.t, x, y)
    }

    /// `s^x = x \ (s x)`.
    #[inline]
    pub fn act(&self, s: Elem, x: Elem) -> Elem {
        self.t.ldiv(x, self.t.mul(s, x))
    }

    /// Left-to-right product.
    pub fn p(&self, xs: &[Elem]) -> Elem {
        xs.iter().fold(0, |acc, &x| self.t.mul(acc, x))
    }

    pub fn rep_of(&self, x: Elem) -> Elem {
        self.reps[self.quotient.projection[x]]
    }

    /// All associator values over representative triples.
    pub fn associator_values(&self) -> Vec<Elem> {
        let r = &self.reps;
        let mut s = BTreeSet::new();
        for &x in r {
            for &y in r {
                for &z in r {
                    s.insert(self.a(x, y, z));
                }
            }
        }
        s.into_iter().collect()
    }

    /// Whether two cosets generate the quotient.
    pub fn quotient_two_generated(&self) -> bool {
        let q = &self.quotient.table;
        let k = q.order();
        (0..k).any(|a| (a..k).any(|b| subloop::generate(q, &[a, b]).map(|s| s.len() == k).unwrap_or(false)))
    }
}

pub fn calculus_suite(t: &CayleyTable, opts: &SuiteOptions) -> Result<Report> {
    let mut report = Report::new(t.label());
    let n = t.order();
    let b = check_identity(t, Law::Buchsteiner, opts.mode(n, 3));
    let buch = Record::from_check("precondition.buchsteiner", "x\\(xy.z) = (y.zx)/x", &b, 0);
    if !b.passed {
        return Err(LoopError::NotBuchsteiner(b.witness.unwrap_or_default()));
    }
    report.push(buch);
    let cx = Calc::new(t)?;
    report.push(Record::run("precondition.nuclear_associators", "N is normal and Q/N is a group", Mode::Exhaustive, || {
        Outcome::pass().with_detail(format!("|N| = {}, |Q/N| = {}", cx.nucleus.len(), cx.reps.len()))
    }));
    for r in well_definedness(&cx, opts) {
        report.push(r);
    }
    for r in identities(&cx, opts) {
        report.push(r);
    }
    report.push(commuting_pair_formula(&cx, opts));
    Ok(report)
}

fn well_definedness(cx: &Calc, opts: &SuiteOptions) -> Vec<Record> {
    let t = cx.t;
    let n = t.order();
    let mut out = Vec::new();
    let mode = opts.mode(n, 3);
    let desc = "[x,y,z] depends only on the cosets xN, yN, zN";
    out.push(match mode {
        Mode::Exhaustive => sweep_all::<3, _>("assoc.coset_invariant", desc, n, mode, |[x, y, z]| {
            cx.a(x, y, z) == cx.a(cx.rep_of(x), cx.rep_of(y), cx.rep_of(z))
        }),
        Mode::Sampled { .. } => {
            let mode = Mode::Sampled { samples: PERTURBATIONS, seed: opts.seed };
            Record::run("assoc.coset_invariant", desc, mode, || {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                let nm = cx.nucleus.members();
                for _ in 0..PERTURBATIONS {
                    let [x, y, z] = [0; 3].map(|_| rng.random_range(0..n));
                    let [a, b, c] = [0; 3].map(|_| nm[rng.random_range(0..nm.len())]);
                    if cx.a(cx.m(x, a), cx.m(y, b), cx.m(z, c)) != cx.a(x, y, z) {
                        return Outcome::fail(format!("x={x} y={y} z={z} a={a} b={b} c={c}"));
                    }
                }
                Outcome::pass()
            })
        }
    });
    let values = cx.associator_values();
    out.push(Record::run("assoc.central_in_nucleus", "associators commute with every nuclear element", Mode::Exhaustive, || {
        let w = values.iter().find_map(|&s| cx.nucleus.members().iter().find(|&&a| cx.m(s, a) != cx.m(a, s)).map(|&a| (s, a)));
        Outcome::from_witness(w).with_detail(format!("{} distinct associators", values.len()))
    }));
    out.push(Record::run("action.coset_invariant", "s^x depends only on xN for every associator s", Mode::Exhaustive, || {
        let w = values.iter().find_map(|&s| t.elements().find(|&x| cx.act(s, x) != cx.act(s, cx.rep_of(x))).map(|x| (s, x)));
        Outcome::from_witness(w)
    }));
    let k = cx.reps.len();
    out.push(sweep_record::<3, _>(
        "assoc.inverse_choice",
        "I(x) and J(x) give the same associator in every position",
        &cx.reps,
        opts.mode(k, 3),
        |[x, y, z]| {
            let (ix, jx) = (cx.i(x), t.inv_j(x));
            cx.a(ix, y, z) == cx.a(jx, y, z) && cx.a(y, ix, z) == cx.a(y, jx, z) && cx.a(y, z, ix) == cx.a(y, z, jx)
        },
    ));
    out
}

fn identities(cx: &Calc, opts: &SuiteOptions) -> Vec<Record> {
    let k = cx.reps.len();
    let r = &cx.reps;
    let (m2, m3, m4) = (opts.mode(k, 2), opts.mode(k, 3), opts.mode(k, 4));
    let (a, act, i, sq) = (|x, y, z| cx.a(x, y, z), |s, x| cx.act(s, x), |x| cx.i(x), |x| cx.sq(x));
    let c = |x, y| cx.c(x, y);
    let p = |xs: &[Elem]| cx.p(xs);
    let mut out = vec![
        sweep_record::<3, _>("assoc.cyclic_action", "[x,y,z]^x = [y,z,x]^-1", r, m3, |[x, y, z]| {
            act(a(x, y, z), x) == i(a(y, z, x))
        }),
        sweep_record::<3, _>(
            "assoc.inverse_rotations",
            "[x,y,z] = [z^-1,x,y] = [y^-1,z^-1,x] = [x^-1,y^-1,z^-1] = [z,x^-1,y^-1] = [y,z,x^-1]",
            r,
            m3,
            |[x, y, z]| {
                let s = a(x, y, z);
                s == a(i(z), x, y)
                    && s == a(i(y), i(z), x)
                    && s == a(i(x), i(y), i(z))
                    && s == a(z, i(x), i(y))
                    && s == a(y, z, i(x))
            },
        ),
        sweep_record::<3, _>("assoc.inverse_last_to_front", "[z^-1,x,y] = [x,y,z]", r, m3, |[x, y, z]| {
            a(i(z), x, y) == a(x, y, z)
        }),
        sweep_record::<3, _>("assoc.squares_act_trivially", "[x,y,z] = [x,y,z]^(x^2) = [x,y,z]^(y^2) = [x,y,z]^(z^2)", r, m3, |[x, y, z]| {
            let s = a(x, y, z);
            s == act(s, sq(x)) && s == act(s, sq(y)) && s == act(s, sq(z))
        }),
        sweep_record::<3, _>(
            "assoc.argument_actions",
            "[x,y,z]^x = [y,z,x]^-1, [x,y,z]^z = [z,x,y]^-1, [x,y,z]^y = [x,y^-1,z]^-1, [x,y^-1,z]^x = [z,x,y]^-1, [x,y^-1,z]^y = [x,y,z]^-1, [x,y^-1,z]^z = [y,z,x]^-1",
            r,
            m3,
            |[x, y, z]| {
                let s = a(x, y, z);
                let u = a(x, i(y), z);
                act(s, x) == i(a(y, z, x))
                    && act(s, z) == i(a(z, x, y))
                    && act(s, y) == i(u)
                    && act(u, x) == i(a(z, x, y))
                    && act(u, y) == i(s)
                    && act(u, z) == i(a(y, z, x))
            },
        ),
        sweep_record::<4, _>(
            "assoc.twisted_additivity",
            "[uv,x,y] = [u,x,y]^v [v,x,y], [x,uv,y] = [x,u,y]^v [x,v,y], [x,y,uv] = [x,y,u]^v [x,y,v]",
            r,
            m4,
            |[u, v, x, y]| {
                let uv = cx.m(u, v);
                a(uv, x, y) == cx.m(act(a(u, x, y), v), a(v, x, y))
                    && a(x, uv, y) == cx.m(act(a(x, u, y), v), a(x, v, y))
                    && a(x, y, uv) == cx.m(act(a(x, y, u), v), a(x, y, v))
            },
        ),
        sweep_record::<2, _>("assoc.repeated_pair", "[x,y,y] = [y,y,x]", r, m2, |[x, y]| a(x, y, y) == a(y, y, x)),
        sweep_record::<3, _>("assoc.four_term", "[y,z,x][x,y,z] = [z,x,y][x,y^-1,z]", r, m3, |[x, y, z]| {
            cx.m(a(y, z, x), a(x, y, z)) == cx.m(a(z, x, y), a(x, i(y), z))
        }),
        sweep_record::<3, _>(
            "assoc.square_and_fourth_powers",
            "1 = [x^2,y,z]^2 = [x,y^2,z]^2 = [x,z,y^2]^2 = [x^4,y,z] = [x,y^4,z] = [x,y,z^4]",
            r,
            m3,
            |[x, y, z]| {
                let (x2, y2, z2) = (sq(x), sq(y), sq(z));
                [sq(a(x2, y, z)), sq(a(x, y2, z)), sq(a(x, z, y2)), a(sq(x2), y, z), a(x, sq(y2), z), a(x, y, sq(z2))]
                    .iter()
                    .all(|&e| e == 0)
            },
        ),
        sweep_record::<3, _>(
            "assoc.square_symmetries",
            "[x,y,z]^2 = [y,z,x]^2 = [z,x,y]^2 and [x^2,y,z] = [y,z,x^2] = [z,x^2,y]",
            r,
            m3,
            |[x, y, z]| {
                let x2 = sq(x);
                let s = sq(a(x, y, z));
                let v = a(x2, y, z);
                s == sq(a(y, z, x)) && s == sq(a(z, x, y)) && v == a(y, z, x2) && v == a(z, x2, y)
            },
        ),
        sweep_record::<3, _>("assoc.square_associator_fixed", "[x^2,y,z] is fixed by x, y and z", r, m3, |[x, y, z]| {
            let s = a(sq(x), y, z);
            act(s, x) == s && act(s, y) == s && act(s, z) == s
        }),
        sweep_record::<3, _>("assoc.two_squares_vanish", "[x^2,y^2,z] = [x^2,y,z^2] = [x,y^2,z^2] = 1", r, m3, |[x, y, z]| {
            let (x2, y2, z2) = (sq(x), sq(y), sq(z));
            a(x2, y2, z) == 0 && a(x2, y, z2) == 0 && a(x, y2, z2) == 0
        }),
        sweep_record::<3, _>(
            "assoc.repeated_fixed_by_squares",
            "[x,y,y]^(z^2) = [x,y,y] and [y,x,y]^(z^2) = [y,x,y]",
            r,
            m3,
            |[x, y, z]| {
                let z2 = sq(z);
                act(a(x, y, y), z2) == a(x, y, y) && act(a(y, x, y), z2) == a(y, x, y)
            },
        ),
        sweep_record::<2, _>(
            "assoc.two_variable_actions",
            "[x,x,y] = [y,x,x], [x,x,y]^x = [x,y,x]^-1, [x,y,x]^x = [x,x,y]^-1, [x,x,y]^y = [x,x,y]^-1, [x,y,x]^y = [x,y,x]^-1",
            r,
            m2,
            |[x, y]| {
                let (u, v) = (a(x, x, y), a(x, y, x));
                u == a(y, x, x) && act(u, x) == i(v) && act(v, x) == i(u) && act(u, y) == i(u) && act(v, y) == i(v)
            },
        ),
        sweep_record::<2, _>(
            "assoc.square_placements",
            "[x^2,y,x] = [x^2,x,y] = [x,x^2,y] = [x,y,x^2] = [y,x,x^2] = [y,x^2,x]",
            r,
            m2,
            |[x, y]| {
                let x2 = sq(x);
                let v = a(x2, y, x);
                [a(x2, x, y), a(x, x2, y), a(x, y, x2), a(y, x, x2), a(y, x2, x)].iter().all(|&e| e == v)
            },
        ),
        sweep_record::<2, _>("assoc.middle_split", "[x,y,x] = [x,x,y][x^2,x,y]", r, m2, |[x, y]| {
            a(x, y, x) == cx.m(a(x, x, y), a(sq(x), x, y))
        }),
        sweep_record::<2, _>("assoc.square_pairs_vanish", "[x,y^2,x] = [x,x,y^2] = [y^2,x,x] = 1 = [x^2,x,y]^2", r, m2, |[x, y]| {
            let y2 = sq(y);
            a(x, y2, x) == 0 && a(x, x, y2) == 0 && a(y2, x, x) == 0 && sq(a(sq(x), x, y)) == 0
        }),
        sweep_record::<2, _>("assoc.cube_action", "[x,x,x]^y = [x,x,x][x,x,y]^-1[x,y,x]^-1", r, m2, |[x, y]| {
            act(a(x, x, x), y) == p(&[a(x, x, x), i(a(x, x, y)), i(a(x, y, x))])
        }),
        sweep_record::<3, _>("comm.product_rule", "[xy,z] = [x,z]^y [y,z] [x,z,y]^-1 [x,y,z] [z,x,y]", r, m3, |[x, y, z]| {
            c(cx.m(x, y), z) == p(&[act(c(x, z), y), c(y, z), i(a(x, z, y)), a(x, y, z), a(z, x, y)])
        }),
        sweep_record::<3, _>(
            "comm.product_rule_symmetric",
            "if [x,z,y] = [y,z,x] then [xy,z] = [x,z]^y [y,z] [x,y^-1,z]",
            r,
            m3,
            |[x, y, z]| a(x, z, y) != a(y, z, x) || c(cx.m(x, y), z) == p(&[act(c(x, z), y), c(y, z), a(x, i(y), z)]),
        ),
        sweep_record::<2, _>("comm.square_left", "[x^2,y] = [x,y]^x [x,y] [x,y,x]", r, m2, |[x, y]| {
            c(sq(x), y) == p(&[act(c(x, y), x), c(x, y), a(x, y, x)])
        }),
        sweep_record::<2, _>("comm.square_against_product", "[x^2,xy] = [x,y]^x [x,y] [x,x,x] [x,y,x]^-1", r, m2, |[x, y]| {
            c(sq(x), cx.m(x, y)) == p(&[act(c(x, y), x), c(x, y), a(x, x, x), i(a(x, y, x))])
        }),
        sweep_record::<2, _>(
            "comm.two_squares_against_y",
            "[x^2y^2,y] = [x,y]^(xy^2) [x,y]^(y^2) [y,y,y] [x,y,x]",
            r,
            m2,
            |[x, y]| {
                let (y2, x2y2) = (sq(y), cx.m(sq(x), sq(y)));
                c(x2y2, y) == p(&[act(c(x, y), cx.m(x, y2)), act(c(x, y), y2), a(y, y, y), a(x, y, x)])
            },
        ),
        sweep_record::<2, _>("comm.two_squares_against_x", "[x^2y^2,x] = [y,x]^y [y,x] [x,x,x] [y,x,y]", r, m2, |[x, y]| {
            c(cx.m(sq(x), sq(y)), x) == p(&[act(c(y, x), y), c(y, x), a(x, x, x), a(y, x, y)])
        }),
        sweep_record::<2, _>(
            "comm.two_squares_against_product",
            "[x^2y^2,xy] = [x,y]^(xy^2) [y,x]^y [x,x,x] [y,y,y] [x,y,x]^-1 [y,x,y]^-1",
            r,
            m2,
            |[x, y]| {
                let (y2, x2y2) = (sq(y), cx.m(sq(x), sq(y)));
                c(x2y2, cx.m(x, y))
                    == p(&[
                        act(c(x, y), cx.m(x, y2)),
                        act(c(y, x), y),
                        a(x, x, x),
                        a(y, y, y),
                        i(a(x, y, x)),
                        i(a(y, x, y)),
                    ])
            },
        ),
    ];
    let two_gen = cx.quotient_two_generated();
    let mut rev = sweep_record::<3, _>(
        "assoc.reversal_when_two_generated",
        "if Q/N is generated by two cosets then [x,y,z] = [z,y,x]",
        r,
        m3,
        |[x, y, z]| !two_gen || a(x, y, z) == a(z, y, x),
    );
    if !two_gen {
        rev.detail = Some("not applicable: Q/N needs more than two generators".into());
    }
    out.push(rev);
    out
}

/// The commutator formula for commuting `e1, e2` whose associators
/// `c_ijk = [e_i,e_j,e_k]` have exponent 2, over every such pair.
fn commuting_pair_formula(cx: &Calc, opts: &SuiteOptions) -> Record {
    let t = cx.t;
    let n = t.order();
    let desc = "[e1^(2a1) e2^(2a2), e1^b1 e2^b2] = prod c_iji^(ai bj) for commuting e1, e2 with c_ijk of exponent 2";
    let mode = opts.mode(n, 2);
    let applicable = std::sync::atomic::AtomicU64::new(0);
    let pred = |[e1, e2]: [Elem; 2]| {
        if cx.m(e1, e2) != cx.m(e2, e1) {
            return true;
        }
        let e = [e1, e2];
        let cijk = |i: usize, j: usize, k: usize| cx.a(e[i], e[j], e[k]);
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    if cx.sq(cijk(i, j, k)) != 0 {
                        return true;
                    }
                }
            }
        }
        applicable.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        let sq = [cx.sq(e1), cx.sq(e2)];
        for al in 0..4usize {
            for be in 0..4usize {
                let (a1, a2, b1, b2) = (al & 1, al >> 1, be & 1, be >> 1);
                let left = cx.m(if a1 == 1 { sq[0] } else { 0 }, if a2 == 1 { sq[1] } else { 0 });
                let right = cx.m(if b1 == 1 { e1 } else { 0 }, if b2 == 1 { e2 } else { 0 });
                let (al_, be_) = ([a1, a2], [b1, b2]);
                let mut expect = 0;
                for i in 0..2 {
                    for j in 0..2 {
                        if al_[i] & be_[j] == 1 {
                            expect = cx.m(expect, cijk(i, j, i));
                        }
                    }
                }
                if cx.c(left, right) != expect {
                    return false;
                }
            }
        }
        true
    };
    let mut rec = sweep_all::<2, _>("comm.commuting_pair_formula", desc, n, mode, pred);
    let count = applicable.load(std::sync::atomic::Ordering::Relaxed);
    if rec.passed {
        rec.detail = Some(format!("{count} applicable pairs"));
    }
    rec
}
