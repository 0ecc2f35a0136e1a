//! Isotopes, the isomorphism onto the isotope at `x` for Buchsteiner loops,
//! and a backtracking isomorphism search.

use std::fmt;

use serde::Serialize;

use crate::error::{LoopError, Result};
use crate::identity::{check_identity, Law, Mode};
use crate::perm::Perm;
use crate::report::{Outcome, Record, Report};
use crate::subloop;
use crate::table::{CayleyTable, Elem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Designator {
    Left { at: Elem },
    Right { at: Elem },
    Principal { a: Elem, b: Elem },
}

impl fmt::Display for Designator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Designator::Left { at } => write!(f, "left isotope at {at}"),
            Designator::Right { at } => write!(f, "right isotope at {at}"),
            Designator::Principal { a, b } => write!(f, "principal isotope (x/{b})({a}\\y)"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct IsotopeResult {
    pub base: String,
    pub designator: Designator,
    pub table: CayleyTable,
    /// For principal isotopes, `new = relabel(old)`.
    pub relabel: Option<Perm>,
}

impl IsotopeResult {
    /// The table in text form; its label line names the isotope.
    pub fn to_text(&self) -> String {
        self.table.to_text()
    }
}

/// `right: x o y = (x.ye)/e`, `left: x o y = e\(ex.y)`.
pub fn isotope_at(t: &CayleyTable, side: Side, e: Elem) -> Result<IsotopeResult> {
    if !t.contains(e) {
        return Err(LoopError::ElementOutOfRange(e));
    }
    let table = match side {
        Side::Right => CayleyTable::from_fn(t.order(), |x, y| t.rdiv(t.mul(x, t.mul(y, e)), e))?,
        Side::Left => CayleyTable::from_fn(t.order(), |x, y| t.ldiv(e, t.mul(t.mul(e, x), y)))?,
    };
    let designator = match side {
        Side::Right => Designator::Right { at: e },
        Side::Left => Designator::Left { at: e },
    };
    let table = table.with_label(format!("{} of {}", designator, t.label()));
    Ok(IsotopeResult { base: t.label().to_string(), designator, table, relabel: None })
}

/// `x * y = (x/b)(a\y)`. Its neutral element is `ab`, which is moved to 0.
pub fn principal_isotope(t: &CayleyTable, a: Elem, b: Elem) -> Result<IsotopeResult> {
    for x in [a, b] {
        if !t.contains(x) {
            return Err(LoopError::ElementOutOfRange(x));
        }
    }
    let n = t.order();
    let rows: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| t.mul(t.rdiv(x, b), t.ldiv(a, y))).collect()).collect();
    let (table, sigma) = CayleyTable::from_rows_relabel(&rows)?;
    let designator = Designator::Principal { a, b };
    let table = table.with_label(format!("{} of {}", designator, t.label()));
    Ok(IsotopeResult { base: t.label().to_string(), designator, table, relabel: Some(sigma) })
}

/// A pair `(x, y)` where the left and right isotopes at `e` disagree.
pub fn isotope_sides_differ(t: &CayleyTable, e: Elem) -> Option<(Elem, Elem)> {
    t.elements().find_map(|x| t.elements().find(|&y| t.rdiv(t.mul(x, t.mul(y, e)), e) != t.ldiv(e, t.mul(t.mul(e, x), y))).map(|y| (x, y)))
}

/// Whether `R_e` carries `x o y = (x.ye)/e` onto `x * y = (x/e)y`.
pub fn right_translation_transports(t: &CayleyTable, e: Elem) -> bool {
    t.elements().all(|x| {
        t.elements().all(|y| {
            let circ = t.rdiv(t.mul(x, t.mul(y, e)), e);
            t.mul(circ, e) == t.mul(t.rdiv(t.mul(x, e), e), t.mul(y, e))
        })
    })
}

/// A table that has been checked to satisfy the Buchsteiner law.
#[derive(Clone, Copy, Debug)]
pub struct Buchsteiner<'a> {
    table: &'a CayleyTable,
}

impl<'a> Buchsteiner<'a> {
    pub fn verify(t: &'a CayleyTable, mode: Mode) -> Result<Buchsteiner<'a>> {
        let r = check_identity(t, Law::Buchsteiner, mode);
        match r.witness {
            None => Ok(Buchsteiner { table: t }),
            Some(w) => Err(LoopError::NotBuchsteiner(w)),
        }
    }

    pub fn table(&self) -> &'a CayleyTable {
        self.table
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WwipIsomorphism {
    pub x: Elem,
    pub u: Elem,
    pub map: Perm,
    pub verified: bool,
    /// First `(y, z)` with `map(yz) != map(y) o map(z)`.
    pub witness: Option<(Elem, Elem)>,
}

/// `alpha_u = L_{I(eta(u))}^-1 I L_u R_u^-1 J` with `u = J^4(x)`, checked
/// against the right isotope at `x`.
pub fn wwip_isomorphism(q: Buchsteiner<'_>, x: Elem) -> Result<WwipIsomorphism> {
    let t = q.table;
    if !t.contains(x) {
        return Err(LoopError::ElementOutOfRange(x));
    }
    let u = t.inv_pow(x, -4);
    let c = t.inv_i(t.eta(u));
    let map = Perm::from_fn(t.order(), |w| t.ldiv(c, t.inv_i(t.mul(u, t.rdiv(t.inv_j(w), u)))));
    let circ = |a, b| t.rdiv(t.mul(a, t.mul(b, x)), x);
    let witness =
        t.elements().find_map(|y| t.elements().find(|&z| map.apply(t.mul(y, z)) != circ(map.apply(y), map.apply(z))).map(|z| (y, z)));
    Ok(WwipIsomorphism { x, u, map, verified: witness.is_none(), witness })
}

/// Per-element data preserved by isomorphisms.
fn invariants(t: &CayleyTable) -> Vec<[usize; 7]> {
    let nuc = subloop::nucleus(t);
    t.elements()
        .map(|x| {
            let sq = t.mul(x, x);
            let commuting = t.elements().filter(|&y| t.mul(x, y) == t.mul(y, x)).count();
            let left_alt = t.elements().filter(|&y| t.mul(x, t.mul(x, y)) == t.mul(sq, y)).count();
            let flex = t.elements().filter(|&y| t.mul(x, t.mul(y, x)) == t.mul(t.mul(x, y), x)).count();
            [t.element_order(x), t.element_order(sq), nuc.contains(x) as usize, nuc.contains(sq) as usize, commuting, left_alt, flex]
        })
        .collect()
}

struct Search<'a> {
    a: &'a CayleyTable,
    b: &'a CayleyTable,
    inv_a: Vec<[usize; 7]>,
    inv_b: Vec<[usize; 7]>,
}

#[derive(Clone)]
struct Partial {
    phi: Vec<Option<Elem>>,
    used: Vec<bool>,
    known: Vec<Elem>,
}

impl Search<'_> {
    /// Adds `x -> y` and closes under products; false on a contradiction.
    fn extend(&self, p: &mut Partial, x: Elem, y: Elem) -> bool {
        if !self.assign(p, x, y) {
            return false;
        }
        let mut i = p.known.len() - 1;
        while i < p.known.len() {
            let u = p.known[i];
            for j in 0..=i {
                let v = p.known[j];
                for (s, r) in [(u, v), (v, u)] {
                    let img = self.b.mul(p.phi[s].unwrap(), p.phi[r].unwrap());
                    let prod = self.a.mul(s, r);
                    match p.phi[prod] {
                        Some(old) if old != img => return false,
                        Some(_) => {}
                        None => {
                            if !self.assign(p, prod, img) {
                                return false;
                            }
                        }
                    }
                }
            }
            i += 1;
        }
        true
    }

    fn assign(&self, p: &mut Partial, x: Elem, y: Elem) -> bool {
        if p.used[y] || self.inv_a[x] != self.inv_b[y] {
            return false;
        }
        p.phi[x] = Some(y);
        p.used[y] = true;
        p.known.push(x);
        true
    }

    fn run(&self, p: Partial) -> Option<Vec<Elem>> {
        let Some(x) = self.next_generator(&p) else {
            return Some(p.phi.iter().map(|v| v.unwrap()).collect());
        };
        for y in self.b.elements() {
            if p.used[y] || self.inv_a[x] != self.inv_b[y] {
                continue;
            }
            let mut q = p.clone();
            if self.extend(&mut q, x, y) {
                if let Some(done) = self.run(q) {
                    return Some(done);
                }
            }
        }
        None
    }

    /// An unmapped element with the fewest possible images.
    fn next_generator(&self, p: &Partial) -> Option<Elem> {
        let free: Vec<Elem> = self.a.elements().filter(|&x| p.phi[x].is_none()).collect();
        free.into_iter().min_by_key(|&x| (self.inv_b.iter().filter(|v| **v == self.inv_a[x]).count(), x))
    }
}

/// Searches for an isomorphism `phi: t1 -> t2`, returned as a permutation
/// with `phi(xy) = phi(x)phi(y)`.
pub fn is_isomorphic(t1: &CayleyTable, t2: &CayleyTable) -> Option<Perm> {
    if t1.order() != t2.order() {
        return None;
    }
    let s = Search { a: t1, b: t2, inv_a: invariants(t1), inv_b: invariants(t2) };
    let mut ia = s.inv_a.clone();
    let mut ib = s.inv_b.clone();
    ia.sort_unstable();
    ib.sort_unstable();
    if ia != ib {
        return None;
    }
    let n = t1.order();
    let mut p = Partial { phi: vec![None; n], used: vec![false; n], known: Vec::new() };
    if !s.extend(&mut p, 0, 0) {
        return None;
    }
    let phi = s.run(p)?;
    let perm = Perm::from_images(phi).ok()?;
    debug_assert!(t1.elements().all(|x| t1.elements().all(|y| perm.apply(t1.mul(x, y)) == t2.mul(perm.apply(x), perm.apply(y)))));
    Some(perm)
}

/// Which elements the G-loop checks run over.
#[derive(Clone, Debug, Default)]
pub struct GLoopPlan {
    /// Elements `x` for the constructed isomorphism onto the isotope at `x`.
    pub wwip: Vec<Elem>,
    /// Elements for the independent backtracking search.
    pub oracle: Vec<Elem>,
    /// Elements `e` at which left and right isotopes are compared.
    pub sides: Vec<Elem>,
    /// Seed the sampled lists were drawn with.
    pub seed: u64,
}

impl GLoopPlan {
    /// Everything exhaustively, with the search oracle on `oracle` seeded
    /// picks of `x`.
    pub fn full(t: &CayleyTable, oracle: usize, seed: u64) -> GLoopPlan {
        GLoopPlan { wwip: t.elements().collect(), oracle: sample_points(t.order(), oracle, seed), sides: t.elements().collect(), seed }
    }

    /// Seeded picks for every check.
    pub fn sampled(t: &CayleyTable, wwip: usize, oracle: usize, sides: usize, seed: u64) -> GLoopPlan {
        let n = t.order();
        GLoopPlan { wwip: sample_points(n, wwip, seed), oracle: sample_points(n, oracle, seed), sides: sample_points(n, sides, seed), seed }
    }
}

/// `k` distinct nonzero elements chosen by a seeded shuffle.
pub fn sample_points(n: usize, k: usize, seed: u64) -> Vec<Elem> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut v: Vec<Elem> = (1..n).collect();
    v.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
    v.truncate(k);
    v.sort_unstable();
    v
}

fn points_mode(points: &[Elem], n: usize, seed: u64) -> Mode {
    if points.len() == n {
        Mode::Exhaustive
    } else {
        Mode::Sampled { samples: points.len() as u64, seed }
    }
}

/// Isomorphisms onto isotopes: the constructed map, the search oracle and
/// the agreement of left and right isotopes.
pub fn gloop_report(q: Buchsteiner<'_>, plan: &GLoopPlan) -> Result<Report> {
    let t = q.table();
    let n = t.order();
    let mut r = Report::new(t.label());
    let mut maps = Vec::new();
    r.push(Record::run(
        "gloop.constructed_isomorphism",
        "the constructed map is an isomorphism onto the isotope at x",
        points_mode(&plan.wwip, n, plan.seed),
        || {
            let mut bad = None;
            for &x in &plan.wwip {
                let w = wwip_isomorphism(q, x).expect("element in range");
                if !w.verified && bad.is_none() {
                    bad = Some((x, w.witness));
                }
                if plan.oracle.contains(&x) {
                    maps.push((x, w.map));
                }
            }
            Outcome::from_witness(bad).with_detail(format!("{} values of x", plan.wwip.len()))
        },
    ));
    r.push(Record::run(
        "gloop.search_oracle",
        "backtracking finds an isomorphism onto the isotope at x",
        points_mode(&plan.oracle, n, plan.seed),
        || {
            let bad = plan.oracle.iter().find_map(|&x| {
                let iso = isotope_at(t, Side::Right, x).expect("element in range").table;
                let Some(phi) = is_isomorphic(t, &iso) else { return Some((x, "no isomorphism")) };
                // Both maps go Q -> Q[x], so one undoes the other up to an automorphism of Q.
                let alpha = maps
                    .iter()
                    .find(|(y, _)| *y == x)
                    .map(|(_, m)| m.clone())
                    .unwrap_or_else(|| wwip_isomorphism(q, x).expect("element in range").map);
                (!t.is_automorphism(&alpha.inverse().compose(&phi))).then_some((x, "maps differ by a non-automorphism"))
            });
            Outcome::from_witness(bad).with_detail(format!("x in {:?}", plan.oracle))
        },
    ));
    r.push(Record::run("gloop.sides_coincide", "left and right isotopes at e coincide", points_mode(&plan.sides, n, plan.seed), || {
        Outcome::from_witness(plan.sides.iter().find_map(|&e| isotope_sides_differ(t, e).map(|w| (e, w))))
    }));
    r.push(Record::run("gloop.translation_transport", "R_e maps (x.ye)/e onto (x/e)y", points_mode(&plan.sides, n, plan.seed), || {
        Outcome::from_witness(plan.sides.iter().find(|&&e| !right_translation_transports(t, e)))
    }));
    Ok(r)
}
