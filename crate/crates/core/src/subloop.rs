use rayon::prelude::*;
use serde::Serialize;

use crate::error::{LoopError, Result};
use crate::table::{CayleyTable, Elem};

/// A verified subloop, stored as its sorted member list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubloopSet {
    members: Vec<Elem>,
}

impl SubloopSet {
    pub fn new(t: &CayleyTable, members: impl IntoIterator<Item = Elem>) -> Result<SubloopSet> {
        let mut members: Vec<Elem> = members.into_iter().collect();
        if let Some(&x) = members.iter().find(|&&x| !t.contains(x)) {
            return Err(LoopError::ElementOutOfRange(x));
        }
        members.sort_unstable();
        members.dedup();
        let mut inside = vec![false; t.order()];
        for &x in &members {
            inside[x] = true;
        }
        let closed = inside[0]
            && members.iter().all(|&x| members.iter().all(|&y| inside[t.mul(x, y)] && inside[t.ldiv(x, y)] && inside[t.rdiv(x, y)]));
        if !closed {
            return Err(LoopError::NotASubloop);
        }
        Ok(SubloopSet { members })
    }

    fn trusted(mut members: Vec<Elem>) -> SubloopSet {
        members.sort_unstable();
        SubloopSet { members }
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &SubloopSet) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn is_group(&self, t: &CayleyTable) -> bool {
        let m = &self.members;
        m.iter().all(|&x| m.iter().all(|&y| m.iter().all(|&z| t.mul(t.mul(x, y), z) == t.mul(x, t.mul(y, z)))))
    }

    pub fn is_commutative(&self, t: &CayleyTable) -> bool {
        let m = &self.members;
        m.iter().all(|&x| m.iter().all(|&y| t.mul(x, y) == t.mul(y, x)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Nuclei {
    pub left: SubloopSet,
    pub middle: SubloopSet,
    pub right: SubloopSet,
    pub nucleus: SubloopSet,
}

fn collect_par(t: &CayleyTable, pred: impl Fn(Elem) -> bool + Sync) -> Vec<Elem> {
    (0..t.order()).into_par_iter().filter(|&a| pred(a)).collect()
}

fn all_pairs(t: &CayleyTable, f: impl Fn(Elem, Elem) -> bool) -> bool {
    t.elements().all(|x| t.elements().all(|y| f(x, y)))
}

pub fn left_nucleus(t: &CayleyTable) -> SubloopSet {
    SubloopSet::trusted(collect_par(t, |a| all_pairs(t, |x, y| t.mul(a, t.mul(x, y)) == t.mul(t.mul(a, x), y))))
}

pub fn middle_nucleus(t: &CayleyTable) -> SubloopSet {
    SubloopSet::trusted(collect_par(t, |a| all_pairs(t, |x, y| t.mul(x, t.mul(a, y)) == t.mul(t.mul(x, a), y))))
}

pub fn right_nucleus(t: &CayleyTable) -> SubloopSet {
    SubloopSet::trusted(collect_par(t, |a| all_pairs(t, |x, y| t.mul(x, t.mul(y, a)) == t.mul(t.mul(x, y), a))))
}

pub fn nuclei(t: &CayleyTable) -> Nuclei {
    let (left, middle, right) = (left_nucleus(t), middle_nucleus(t), right_nucleus(t));
    let nucleus = SubloopSet::trusted(left.members().iter().copied().filter(|&a| middle.contains(a) && right.contains(a)).collect());
    Nuclei { left, middle, right, nucleus }
}

/// The nucleus alone: elements lying in all three nuclei.
pub fn nucleus(t: &CayleyTable) -> SubloopSet {
    SubloopSet::trusted(collect_par(t, |a| {
        all_pairs(t, |x, y| {
            let m = |p, q| t.mul(p, q);
            m(a, m(x, y)) == m(m(a, x), y) && m(x, m(a, y)) == m(m(x, a), y) && m(x, m(y, a)) == m(m(x, y), a)
        })
    }))
}

pub fn commutant(t: &CayleyTable) -> Vec<Elem> {
    collect_par(t, |a| t.elements().all(|x| t.mul(a, x) == t.mul(x, a)))
}

/// The center: nuclear elements that commute with everything.
pub fn center(t: &CayleyTable) -> SubloopSet {
    let n = nucleus(t);
    SubloopSet::trusted(n.members().iter().copied().filter(|&a| t.elements().all(|x| t.mul(a, x) == t.mul(x, a))).collect())
}

/// The subloop generated by `gens`.
pub fn generate(t: &CayleyTable, gens: &[Elem]) -> Result<SubloopSet> {
    let mut inside = vec![false; t.order()];
    let mut members = vec![0];
    inside[0] = true;
    for &g in gens {
        if !t.contains(g) {
            return Err(LoopError::ElementOutOfRange(g));
        }
        if !inside[g] {
            inside[g] = true;
            members.push(g);
        }
    }
    let mut i = 0;
    while i < members.len() {
        let a = members[i];
        let mut j = 0;
        while j <= i {
            let b = members[j];
            for c in [t.mul(a, b), t.mul(b, a)] {
                if !inside[c] {
                    inside[c] = true;
                    members.push(c);
                }
            }
            j += 1;
        }
        i += 1;
    }
    Ok(SubloopSet::trusted(members))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
}

/// The smallest congruence identifying each given pair; returns, for each
/// element, the least element of its class.
pub fn congruence(t: &CayleyTable, pairs: impl IntoIterator<Item = (Elem, Elem)>) -> Vec<Elem> {
    let n = t.order();
    let mut uf = UnionFind { parent: (0..n).collect() };
    let mut stack: Vec<(Elem, Elem)> = pairs.into_iter().collect();
    while let Some((a, b)) = stack.pop() {
        let (ra, rb) = (uf.find(a), uf.find(b));
        if ra == rb {
            continue;
        }
        uf.parent[ra.max(rb)] = ra.min(rb);
        for x in 0..n {
            stack.push((t.mul(x, a), t.mul(x, b)));
            stack.push((t.mul(a, x), t.mul(b, x)));
        }
    }
    let mut least = vec![usize::MAX; n];
    for x in 0..n {
        let r = uf.find(x);
        least[r] = least[r].min(x);
    }
    (0..n).map(|x| least[uf.find(x)]).collect()
}

/// The smallest normal subloop containing `gens`.
pub fn normal_closure(t: &CayleyTable, gens: &[Elem]) -> Result<SubloopSet> {
    if let Some(&g) = gens.iter().find(|&&g| !t.contains(g)) {
        return Err(LoopError::ElementOutOfRange(g));
    }
    let cls = congruence(t, gens.iter().map(|&g| (0, g)));
    Ok(SubloopSet::trusted(t.elements().filter(|&x| cls[x] == 0).collect()))
}

pub fn is_normal(t: &CayleyTable, s: &SubloopSet) -> bool {
    normal_closure(t, s.members()).map(|c| c == *s).unwrap_or(false)
}

/// Invariance under every `T_x`, `L(x,y)` and `R(x,y)`.
pub fn is_inn_invariant(t: &CayleyTable, s: &SubloopSet) -> bool {
    let inv = |p: crate::perm::Perm| s.members().iter().all(|&a| s.contains(p.apply(a)));
    t.elements().all(|x| inv(t.t_inner(x)))
        && (0..t.order()).into_par_iter().all(|x| t.elements().all(|y| inv(t.l_inner(x, y)) && inv(t.r_inner(x, y))))
}

#[derive(Clone, Debug)]
pub struct QuotientMap {
    /// Cosets in order of their least member; block 0 is the subloop.
    pub blocks: Vec<Vec<Elem>>,
    pub projection: Vec<usize>,
    pub table: CayleyTable,
}

impl QuotientMap {
    pub fn representative(&self, block: usize) -> Elem {
        self.blocks[block][0]
    }
}

pub fn quotient(t: &CayleyTable, s: &SubloopSet) -> Result<QuotientMap> {
    let cls = congruence(t, s.members().iter().map(|&a| (0, a)));
    if t.elements().filter(|&x| cls[x] == 0).count() != s.len() {
        return Err(LoopError::NotNormal);
    }
    quotient_by_classes(t, &cls)
}

/// Quotient by a congruence given as least-element class labels.
pub fn quotient_by_classes(t: &CayleyTable, cls: &[Elem]) -> Result<QuotientMap> {
    let n = t.order();
    let mut index = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<Elem>> = Vec::new();
    for x in 0..n {
        let r = cls[x];
        if index[r] == usize::MAX {
            index[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[index[r]].push(x);
    }
    let projection: Vec<usize> = (0..n).map(|x| index[cls[x]]).collect();
    let k = blocks.len();
    let table = CayleyTable::from_fn(k, |a, b| projection[t.mul(blocks[a][0], blocks[b][0])])?;
    let table = table.with_label(format!("{} / ({} cosets)", t.label(), k));
    Ok(QuotientMap { blocks, projection, table })
}

/// `[x,y,z] = (x.yz) \ (xy.z)`.
#[inline]
pub fn assoc(t: &CayleyTable, x: Elem, y: Elem, z: Elem) -> Elem {
    t.ldiv(t.mul(x, t.mul(y, z)), t.mul(t.mul(x, y), z))
}

/// `[x,y] = (yx) \ (xy)`.
#[inline]
pub fn commutator(t: &CayleyTable, x: Elem, y: Elem) -> Elem {
    t.ldiv(t.mul(y, x), t.mul(x, y))
}

/// `a^x = x \ (a x)` for a nuclear `a`.
pub fn nuclear_action(t: &CayleyTable, nucleus: &SubloopSet, a: Elem, x: Elem) -> Result<Elem> {
    if !t.contains(x) {
        return Err(LoopError::ElementOutOfRange(x));
    }
    if !nucleus.contains(a) {
        return Err(LoopError::NotNuclear(a));
    }
    Ok(t.ldiv(x, t.mul(a, x)))
}

/// The smallest normal subloop containing all associators.
pub fn associator_subloop(t: &CayleyTable) -> SubloopSet {
    let n = t.order();
    let seen = (0..n)
        .into_par_iter()
        .fold(
            || vec![false; n],
            |mut seen, x| {
                for y in 0..n {
                    let xy = t.mul(x, y);
                    for z in 0..n {
                        seen[t.ldiv(t.mul(x, t.mul(y, z)), t.mul(xy, z))] = true;
                    }
                }
                seen
            },
        )
        .reduce(|| vec![false; n], |a, b| a.iter().zip(&b).map(|(p, q)| *p || *q).collect());
    let gens: Vec<Elem> = (0..n).filter(|&a| seen[a]).collect();
    normal_closure(t, &gens).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn group_nuclei_are_everything() {
        let t = samples::symmetric3();
        let nu = nuclei(&t);
        assert_eq!(nu.nucleus.len(), 6);
        assert_eq!(center(&t).len(), 1);
        assert_eq!(commutant(&t), vec![0]);
    }

    #[test]
    fn octonion_center() {
        let t = samples::octonion16();
        assert_eq!(nucleus(&t).members(), &[0, 8]);
        assert_eq!(center(&t).members(), &[0, 8]);
        assert_eq!(associator_subloop(&t).members(), &[0, 8]);
    }

    #[test]
    fn normal_subgroups_of_s3() {
        let t = samples::symmetric3();
        let a3 = generate(&t, &[4]).unwrap();
        assert_eq!(a3.members(), &[0, 4, 5]);
        assert!(is_normal(&t, &a3));
        assert!(is_inn_invariant(&t, &a3));
        let q = quotient(&t, &a3).unwrap();
        assert_eq!(q.table.order(), 2);
        let c2 = generate(&t, &[1]).unwrap();
        assert!(!is_normal(&t, &c2));
        assert!(!is_inn_invariant(&t, &c2));
        assert!(matches!(quotient(&t, &c2), Err(LoopError::NotNormal)));
        assert_eq!(normal_closure(&t, &[1]).unwrap().len(), 6);
    }

    #[test]
    fn rejects_non_subloop() {
        let t = samples::cyclic(4);
        assert!(matches!(SubloopSet::new(&t, [0, 1]), Err(LoopError::NotASubloop)));
        assert!(SubloopSet::new(&t, [0, 2]).is_ok());
    }

    #[test]
    fn action_requires_nuclear_element() {
        let t = samples::octonion16();
        let n = nucleus(&t);
        assert_eq!(nuclear_action(&t, &n, 1, 2), Err(LoopError::NotNuclear(1)));
        assert_eq!(nuclear_action(&t, &n, 8, 2).unwrap(), 8);
    }
}
