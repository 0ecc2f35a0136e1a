//! Small standard loops used as fixtures and in examples.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::table::CayleyTable;

pub fn cyclic(n: usize) -> CayleyTable {
    CayleyTable::from_fn(n, |x, y| (x + y) % n).unwrap().with_label(format!("C{n}"))
}

/// Element `(a, b)` has index `a + |A| b`.
pub fn direct_product(a: &CayleyTable, b: &CayleyTable) -> CayleyTable {
    let na = a.order();
    CayleyTable::from_fn(na * b.order(), |x, y| a.mul(x % na, y % na) + na * b.mul(x / na, y / na)).unwrap().with_label(format!(
        "{} x {}",
        a.label(),
        b.label()
    ))
}

/// Dihedral group of order `2n`; `r^k s^b` has index `k + n b`.
pub fn dihedral(n: usize) -> CayleyTable {
    CayleyTable::from_fn(2 * n, |x, y| {
        let (a, b) = (x % n, x / n);
        let (c, d) = (y % n, y / n);
        let k = if b == 0 { (a + c) % n } else { (a + n - c) % n };
        k + n * ((b + d) % 2)
    })
    .unwrap()
    .with_label(format!("D{}", 2 * n))
}

pub fn symmetric3() -> CayleyTable {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    CayleyTable::from_fn(6, |x, y| {
        let (f, g) = (perms[x], perms[y]);
        index([f[g[0]], f[g[1]], f[g[2]]])
    })
    .unwrap()
    .with_label("S3")
}

/// Semidirect product `C_m x| C_k` with `b a b^-1 = a^r`; `a^i b^j` has
/// index `i + m j`. Needs `r^k = 1 mod m`.
pub fn metacyclic(m: usize, k: usize, r: usize) -> CayleyTable {
    let pow = |j: usize| (0..j).fold(1 % m, |acc, _| acc * r % m);
    assert_eq!(pow(k), 1 % m, "r^k must be 1 mod m");
    CayleyTable::from_fn(m * k, |x, y| {
        let (i, j) = (x % m, x / m);
        let (u, v) = (y % m, y / m);
        (i + pow(j) * u) % m + m * ((j + v) % k)
    })
    .unwrap()
    .with_label(format!("C{m} x| C{k} (r={r})"))
}

/// Dicyclic group of order `4n`: `a^i x^j` with `a^2n = 1`, `x^2 = a^n`,
/// `x a x^-1 = a^-1`; index `i + 2n j`.
pub fn dicyclic(n: usize) -> CayleyTable {
    let m = 2 * n;
    CayleyTable::from_fn(2 * m, |x, y| {
        let (i, j) = (x % m, x / m);
        let (u, v) = (y % m, y / m);
        let u = if j == 1 { (m - u) % m } else { u };
        let extra = if j == 1 && v == 1 { n } else { 0 };
        (i + u + extra) % m + m * ((j + v) % 2)
    })
    .unwrap()
    .with_label(format!("Dic{}", 4 * n))
}

/// Alternating group on four points.
pub fn alternating4() -> CayleyTable {
    let mut perms: Vec<[usize; 4]> = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct = (0..4).all(|i| (0..i).all(|j| p[i] != p[j]));
                    let inversions = (0..4).flat_map(|i| (0..i).map(move |j| (j, i))).filter(|&(j, i)| p[j] > p[i]).count();
                    if distinct && inversions % 2 == 0 {
                        perms.push(p);
                    }
                }
            }
        }
    }
    let index = |p: [usize; 4]| perms.iter().position(|q| *q == p).unwrap();
    CayleyTable::from_fn(12, |x, y| {
        let (f, g) = (perms[x], perms[y]);
        index([f[g[0]], f[g[1]], f[g[2]], f[g[3]]])
    })
    .unwrap()
    .with_label("A4")
}

/// A selection of groups of order at most 16, covering every order.
pub fn group_corpus() -> Vec<CayleyTable> {
    let c = cyclic;
    let mut v: Vec<CayleyTable> = (1..=16).map(c).collect();
    v.extend([
        direct_product(&c(2), &c(2)),
        direct_product(&c(2), &c(4)),
        direct_product(&direct_product(&c(2), &c(2)), &c(2)),
        direct_product(&c(3), &c(3)),
        direct_product(&c(4), &c(4)),
        direct_product(&c(2), &c(8)),
        direct_product(&direct_product(&c(2), &c(2)), &c(4)),
        symmetric3(),
        dihedral(4),
        dihedral(5),
        dihedral(6),
        dihedral(7),
        dihedral(8),
        quaternion8(),
        dicyclic(3),
        dicyclic(4),
        alternating4(),
        metacyclic(8, 2, 3),
        metacyclic(8, 2, 5),
        metacyclic(4, 4, 3),
        direct_product(&c(2), &dihedral(4)),
        direct_product(&c(2), &quaternion8()),
        direct_product(&c(2), &symmetric3()),
    ]);
    v
}

/// Loops of order at most 8: groups and a few nonassociative loops.
pub fn loop_corpus() -> Vec<CayleyTable> {
    let mut v: Vec<CayleyTable> = group_corpus().into_iter().filter(|t| t.order() <= 8).collect();
    v.extend([random_loop(5, 9), random_loop(5, 2), random_loop(6, 1), random_loop(7, 4), random_loop(8, 5)]);
    v.push(chein_double(&cyclic(3)));
    v.push(chein_double(&direct_product(&cyclic(2), &cyclic(2))));
    v
}

const FANO: [(usize, usize, usize); 7] = [(1, 2, 3), (1, 4, 5), (1, 7, 6), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 6, 5)];

/// Product of octonion units `e_i e_j = sign * e_k`.
fn octonion_unit(i: usize, j: usize) -> (bool, usize) {
    if i == 0 {
        return (false, j);
    }
    if j == 0 {
        return (false, i);
    }
    if i == j {
        return (true, 0);
    }
    for &(a, b, c) in &FANO {
        for (p, q, r) in [(a, b, c), (b, c, a), (c, a, b)] {
            if (p, q) == (i, j) {
                return (false, r);
            }
            if (q, p) == (i, j) {
                return (true, r);
            }
        }
    }
    unreachable!()
}

fn signed_units(dim: usize) -> CayleyTable {
    CayleyTable::from_fn(2 * dim, |x, y| {
        let (i, si) = (x % dim, x >= dim);
        let (j, sj) = (y % dim, y >= dim);
        let (s, k) = octonion_unit(i, j);
        k + dim * ((si ^ sj ^ s) as usize)
    })
    .unwrap()
}

/// Quaternion group; `+-1, +-i, +-j, +-k` with `-u` at index `u + 4`.
pub fn quaternion8() -> CayleyTable {
    signed_units(4).with_label("Q8")
}

/// Octonion loop of order 16, a nonassociative extra loop.
pub fn octonion16() -> CayleyTable {
    signed_units(8).with_label("O16")
}

/// Chein double `M(G, 2)`; `(g, b)` has index `g + |G| b`.
pub fn chein_double(g: &CayleyTable) -> CayleyTable {
    let n = g.order();
    CayleyTable::from_fn(2 * n, |x, y| {
        let (a, b) = (x % n, x / n);
        let (c, d) = (y % n, y / n);
        match (b, d) {
            (0, 0) => g.mul(a, c),
            (0, 1) => g.mul(c, a) + n,
            (1, 0) => g.mul(a, g.inv_i(c)) + n,
            _ => g.mul(g.inv_i(c), a),
        }
    })
    .unwrap()
    .with_label(format!("M({}, 2)", g.label()))
}

/// A pseudo-random loop of order `n` built by seeded backtracking.
pub fn random_loop(n: usize, seed: u64) -> CayleyTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut grid = vec![vec![usize::MAX; n]; n];
    for i in 0..n {
        grid[0][i] = i;
        grid[i][0] = i;
    }
    let order: Vec<Vec<usize>> = (0..n * n)
        .map(|_| {
            let mut v: Vec<usize> = (0..n).collect();
            v.shuffle(&mut rng);
            v
        })
        .collect();
    fn fill(grid: &mut Vec<Vec<usize>>, cell: usize, n: usize, order: &[Vec<usize>]) -> bool {
        if cell == n * n {
            return true;
        }
        let (r, c) = (cell / n, cell % n);
        if r == 0 || c == 0 {
            return fill(grid, cell + 1, n, order);
        }
        for &v in &order[cell] {
            if (0..c).any(|k| grid[r][k] == v) || (0..r).any(|k| grid[k][c] == v) {
                continue;
            }
            grid[r][c] = v;
            if fill(grid, cell + 1, n, order) {
                return true;
            }
        }
        grid[r][c] = usize::MAX;
        false
    }
    assert!(fill(&mut grid, 0, n, &order));
    CayleyTable::from_rows(&grid).unwrap().with_label(format!("random loop n={n} seed={seed}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_are_associative() {
        for t in [cyclic(5), dihedral(4), symmetric3(), quaternion8(), direct_product(&cyclic(2), &cyclic(4))] {
            assert!(t.is_associative(), "{}", t.label());
        }
        assert!(!symmetric3().is_commutative());
        assert!(!quaternion8().is_commutative());
    }

    #[test]
    fn octonions_are_not_associative() {
        assert!(!octonion16().is_associative());
        assert!(!chein_double(&symmetric3()).is_associative());
    }

    #[test]
    fn corpus_groups() {
        let groups = group_corpus();
        assert!(groups.iter().all(|t| t.is_associative()), "corpus contains a non-group");
        assert!((1..=16).all(|n| groups.iter().any(|t| t.order() == n)));
        assert!(!alternating4().is_commutative());
        assert!(!dicyclic(3).is_commutative());
        let d = dicyclic(2);
        assert_eq!(d.elements().filter(|&x| d.element_order(x) == 2).count(), 1);
        assert!(loop_corpus().iter().any(|t| t.order() == 5 && !t.is_associative()));
    }

    #[test]
    fn random_loops_are_deterministic() {
        assert_eq!(random_loop(7, 3), random_loop(7, 3));
    }
}
