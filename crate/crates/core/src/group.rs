use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigUint;

use crate::error::GroupError;
use crate::perm::Perm;
use crate::table::{CayleyTable, Elem};

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    slot: Vec<u32>,
    reps: Vec<(Perm, Perm)>,
    done: Vec<usize>,
}

impl Level {
    fn new(degree: usize, base: usize) -> Level {
        let mut slot = vec![NONE; degree];
        slot[base] = 0;
        let id = Perm::identity(degree);
        Level { base, gens: Vec::new(), orbit: vec![base], slot, reps: vec![(id.clone(), id)], done: vec![0] }
    }

    fn extend_orbit(&mut self) {
        let mut pos = 0;
        while pos < self.orbit.len() {
            let b = self.orbit[pos];
            for s in &self.gens {
                let img = s.apply(b);
                if self.slot[img] == NONE {
                    let u = s.compose(&self.reps[pos].0);
                    let ui = u.inverse();
                    self.slot[img] = self.reps.len() as u32;
                    self.orbit.push(img);
                    self.reps.push((u, ui));
                    self.done.push(0);
                }
            }
            pos += 1;
        }
    }
}

/// Stabiliser chain built by deterministic Schreier-Sims.
#[derive(Clone, Debug)]
struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    fn new(degree: usize, prefix: &[usize]) -> StabChain {
        StabChain { degree, levels: prefix.iter().map(|&b| Level::new(degree, b)).collect() }
    }

    /// Sifts `g` from `start`; returns the residue and the level where it stopped.
    fn strip(&self, mut g: Perm, start: usize) -> (Perm, usize) {
        for l in start..self.levels.len() {
            let lev = &self.levels[l];
            let x = g.apply(lev.base);
            let s = lev.slot[x];
            if s == NONE {
                return (g, l);
            }
            g = lev.reps[s as usize].1.compose(&g);
        }
        (g, self.levels.len())
    }

    fn contains(&self, g: &Perm) -> bool {
        let (r, _) = self.strip(g.clone(), 0);
        r.is_identity()
    }

    fn install(&mut self, res: Perm, from: usize, to: usize) {
        if to == self.levels.len() {
            let b = res.first_moved().expect("nonidentity residue");
            self.levels.push(Level::new(self.degree, b));
        }
        for l in from..=to {
            self.levels[l].gens.push(res.clone());
            self.levels[l].extend_orbit();
        }
    }

    /// Returns false when `g` already lies in the group.
    fn add_generator(&mut self, g: &Perm) -> bool {
        let (res, j) = self.strip(g.clone(), 0);
        if res.is_identity() {
            return false;
        }
        self.install(res, 0, j);
        self.complete(j);
        true
    }

    fn complete(&mut self, top: usize) {
        let mut i = top as isize;
        while i >= 0 {
            let l = i as usize;
            let mut jump = None;
            'pairs: for p in 0..self.levels[l].orbit.len() {
                while self.levels[l].done[p] < self.levels[l].gens.len() {
                    let lev = &self.levels[l];
                    let sidx = lev.done[p];
                    let s = &lev.gens[sidx];
                    let b = lev.orbit[p];
                    let img = s.apply(b);
                    let h = lev.reps[lev.slot[img] as usize].1.compose(s).compose(&lev.reps[p].0);
                    self.levels[l].done[p] += 1;
                    if h.is_identity() {
                        continue;
                    }
                    let (res, j) = self.strip(h, l + 1);
                    if !res.is_identity() {
                        self.install(res, l + 1, j);
                        jump = Some(j);
                        break 'pairs;
                    }
                }
            }
            match jump {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
    }

    fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }
}

/// A permutation group given by generators, with a stabiliser chain
/// computed on first use.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    chain: OnceLock<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermGroup { degree: self.degree, generators: self.generators.clone(), chain }
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<PermGroup, GroupError> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch(g.degree(), degree));
        }
        Ok(PermGroup { degree, generators, chain: OnceLock::new() })
    }

    /// Keeps only the candidates not already generated by earlier ones.
    pub fn generated_by(degree: usize, candidates: impl IntoIterator<Item = Perm>) -> Result<PermGroup, GroupError> {
        let mut chain = StabChain::new(degree, &[]);
        let mut gens = Vec::new();
        for g in candidates {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch(g.degree(), degree));
            }
            if chain.add_generator(&g) {
                gens.push(g);
            }
        }
        let chain_cell = OnceLock::new();
        let _ = chain_cell.set(chain);
        Ok(PermGroup { degree, generators: gens, chain: chain_cell })
    }

    fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| {
            let mut c = StabChain::new(self.degree, &[]);
            for g in &self.generators {
                c.add_generator(g);
            }
            c
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain().levels.iter().map(|l| l.base).collect()
    }

    pub fn strong_generators(&self) -> Vec<Perm> {
        self.chain().levels.first().map(|l| l.gens.clone()).unwrap_or_default()
    }

    pub fn contains(&self, g: &Perm) -> Result<bool, GroupError> {
        if g.degree() != self.degree {
            return Err(GroupError::DegreeMismatch(g.degree(), self.degree));
        }
        Ok(self.chain().contains(g))
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut out = vec![point];
        let mut i = 0;
        while i < out.len() {
            for g in &self.generators {
                let y = g.apply(out[i]);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out
    }

    /// The stabiliser of `point`, generated by the second level of a chain
    /// whose first base point is `point`.
    pub fn point_stabilizer(&self, point: usize) -> PermGroup {
        let mut c = StabChain::new(self.degree, &[point]);
        for g in &self.generators {
            c.add_generator(g);
        }
        let gens = c.levels.get(1).map(|l| l.gens.clone()).unwrap_or_default();
        let mut sub = StabChain::new(self.degree, &[]);
        sub.levels = c.levels[1..].to_vec();
        let cell = OnceLock::new();
        let _ = cell.set(sub);
        PermGroup { degree: self.degree, generators: gens, chain: cell }
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> Result<bool, GroupError> {
        for g in &self.generators {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_group(&self, other: &PermGroup) -> Result<bool, GroupError> {
        Ok(self.is_subgroup_of(other)? && other.is_subgroup_of(self)?)
    }

    /// Whether `h` is a normal subgroup of `self`.
    pub fn is_normal(&self, h: &PermGroup) -> Result<bool, GroupError> {
        if h.degree != self.degree {
            return Err(GroupError::DegreeMismatch(h.degree, self.degree));
        }
        if !h.is_subgroup_of(self)? {
            return Err(GroupError::NotASubgroup);
        }
        for g in &self.generators {
            let gi = g.inverse();
            for x in &h.generators {
                if !h.contains(&g.compose(x).compose(&gi))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether `g` commutes with every generator.
    pub fn centralizes(&self, g: &Perm) -> bool {
        self.generators.iter().all(|s| s.compose(g) == g.compose(s))
    }

    /// Naive breadth-first closure; `None` when it exceeds `limit` elements.
    pub fn enumerate(&self, limit: usize) -> Option<HashSet<Perm>> {
        let id = Perm::identity(self.degree);
        let mut seen = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = g.compose(&x);
                if seen.insert(y.clone()) {
                    if seen.len() > limit {
                        return None;
                    }
                    queue.push_back(y);
                }
            }
        }
        Some(seen)
    }
}

/// The multiplication groups of a loop. Inner groups are point stabilisers
/// of the identity element.
#[derive(Clone, Debug)]
pub struct MultGroups {
    pub mlt: PermGroup,
    pub lmlt: PermGroup,
    pub rmlt: PermGroup,
    pub inn: PermGroup,
    pub lmlt1: PermGroup,
    pub rmlt1: PermGroup,
}

pub fn mult_groups(t: &CayleyTable) -> MultGroups {
    let n = t.order();
    let lefts: Vec<Perm> = t.elements().map(|x| t.left_translation(x)).collect();
    let rights: Vec<Perm> = t.elements().map(|x| t.right_translation(x)).collect();
    let lmlt = PermGroup::generated_by(n, lefts.iter().cloned()).unwrap();
    let rmlt = PermGroup::generated_by(n, rights.iter().cloned()).unwrap();
    let mlt = PermGroup::generated_by(n, lefts.into_iter().zip(rights).flat_map(|(l, r)| [l, r])).unwrap();
    MultGroups { inn: mlt.point_stabilizer(0), lmlt1: lmlt.point_stabilizer(0), rmlt1: rmlt.point_stabilizer(0), mlt, lmlt, rmlt }
}

/// Inner mapping groups generated literally: `T_x`, `L(x,y)`, `R(x,y)`
/// in lexicographic order.
pub fn inner_groups_from_maps(t: &CayleyTable) -> (PermGroup, PermGroup, PermGroup) {
    let n = t.order();
    let pairs = || t.elements().flat_map(move |x| t.elements().map(move |y| (x, y)));
    let lm: Vec<Perm> = pairs().map(|(x, y)| t.l_inner(x, y)).collect();
    let rm: Vec<Perm> = pairs().map(|(x, y)| t.r_inner(x, y)).collect();
    let tm: Vec<Perm> = t.elements().map(|x| t.t_inner(x)).collect();
    let inn = PermGroup::generated_by(n, tm.into_iter().chain(lm.iter().cloned()).chain(rm.iter().cloned())).unwrap();
    let lmlt1 = PermGroup::generated_by(n, lm).unwrap();
    let rmlt1 = PermGroup::generated_by(n, rm).unwrap();
    (inn, lmlt1, rmlt1)
}

/// Group generated by the left translations by members of `set`.
pub fn left_translations_group(t: &CayleyTable, set: &[Elem]) -> PermGroup {
    PermGroup::generated_by(t.order(), set.iter().map(|&a| t.left_translation(a))).unwrap()
}

pub fn right_translations_group(t: &CayleyTable, set: &[Elem]) -> PermGroup {
    PermGroup::generated_by(t.order(), set.iter().map(|&a| t.right_translation(a))).unwrap()
}
