use std::fmt::Write as _;

use crate::error::TableError;
use crate::perm::Perm;

pub type Elem = usize;

pub const MAX_ORDER: usize = 4096;

/// A validated loop multiplication table with identity at index 0,
/// together with both division tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    n: usize,
    mul: Vec<u16>,
    ldiv: Vec<u16>,
    rdiv: Vec<u16>,
    label: String,
}

impl CayleyTable {
    /// Validates a square table; the identity must be element 0.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<CayleyTable, TableError> {
        let n = rows.len();
        check_shape(rows)?;
        let mut mul = Vec::with_capacity(n * n);
        for row in rows {
            mul.extend(row.iter().map(|&v| v as u16));
        }
        let e = find_identity(n, &mul)?;
        if e != 0 {
            return Err(TableError::IdentityNotZero(e));
        }
        Ok(Self::build(n, mul))
    }

    /// Like [`CayleyTable::from_rows`], but moves a nonzero identity to 0.
    /// Returns the relabelling `sigma` with `new = sigma(old)`.
    pub fn from_rows_relabel(rows: &[Vec<usize>]) -> Result<(CayleyTable, Perm), TableError> {
        let n = rows.len();
        check_shape(rows)?;
        let raw: Vec<u16> = rows.iter().flat_map(|r| r.iter().map(|&v| v as u16)).collect();
        let e = find_identity(n, &raw)?;
        let sigma = Perm::from_fn(n, |x| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        });
        let mut mul = vec![0u16; n * n];
        for x in 0..n {
            for y in 0..n {
                let (sx, sy) = (sigma.apply(x), sigma.apply(y));
                mul[x * n + y] = sigma.apply(raw[sx * n + sy] as usize) as u16;
            }
        }
        Ok((Self::build(n, mul), sigma))
    }

    pub fn from_fn(n: usize, f: impl Fn(Elem, Elem) -> Elem) -> Result<CayleyTable, TableError> {
        let rows: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| f(x, y)).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn parse(text: &str) -> Result<CayleyTable, TableError> {
        Self::from_rows(&parse_rows(text)?)
    }

    fn build(n: usize, mul: Vec<u16>) -> CayleyTable {
        let mut ldiv = vec![0u16; n * n];
        let mut rdiv = vec![0u16; n * n];
        for x in 0..n {
            for y in 0..n {
                let z = mul[x * n + y] as usize;
                ldiv[x * n + z] = y as u16;
                rdiv[z * n + y] = x as u16;
            }
        }
        CayleyTable { n, mul, ldiv, rdiv, label: String::new() }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.n
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mul[x * self.n + y] as usize
    }

    /// `x \ y`, the unique `z` with `x z = y`.
    #[inline]
    pub fn ldiv(&self, x: Elem, y: Elem) -> Elem {
        self.ldiv[x * self.n + y] as usize
    }

    /// `x / y`, the unique `z` with `z y = x`.
    #[inline]
    pub fn rdiv(&self, x: Elem, y: Elem) -> Elem {
        self.rdiv[x * self.n + y] as usize
    }

    /// `I(x) = x \ 1`, the right inverse.
    #[inline]
    pub fn inv_i(&self, x: Elem) -> Elem {
        self.ldiv(x, 0)
    }

    /// `J(x) = 1 / x`, the left inverse.
    #[inline]
    pub fn inv_j(&self, x: Elem) -> Elem {
        self.rdiv(0, x)
    }

    /// `I^k(x)`; negative powers use `J`.
    pub fn inv_pow(&self, x: Elem, k: i64) -> Elem {
        let mut y = x;
        for _ in 0..k.unsigned_abs() {
            y = if k > 0 { self.inv_i(y) } else { self.inv_j(y) };
        }
        y
    }

    /// `eta(x) = x J(x)`.
    pub fn eta(&self, x: Elem) -> Elem {
        self.mul(x, self.inv_j(x))
    }

    pub fn contains(&self, x: Elem) -> bool {
        x < self.n
    }

    pub fn row(&self, x: Elem) -> &[u16] {
        &self.mul[x * self.n..(x + 1) * self.n]
    }

    pub fn left_translation(&self, x: Elem) -> Perm {
        Perm::from_raw(self.row(x).to_vec())
    }

    pub fn right_translation(&self, x: Elem) -> Perm {
        Perm::from_fn(self.n, |y| self.mul(y, x))
    }

    pub fn i_map(&self) -> Perm {
        Perm::from_fn(self.n, |x| self.inv_i(x))
    }

    pub fn j_map(&self) -> Perm {
        Perm::from_fn(self.n, |x| self.inv_j(x))
    }

    /// `L(x,y) = L_{xy}^-1 L_x L_y`.
    pub fn l_inner(&self, x: Elem, y: Elem) -> Perm {
        let xy = self.mul(x, y);
        Perm::from_fn(self.n, |z| self.ldiv(xy, self.mul(x, self.mul(y, z))))
    }

    /// `R(x,y) = R_{yx}^-1 R_x R_y`.
    pub fn r_inner(&self, x: Elem, y: Elem) -> Perm {
        let yx = self.mul(y, x);
        Perm::from_fn(self.n, |z| self.rdiv(self.mul(self.mul(z, y), x), yx))
    }

    /// `T_x = R_x^-1 L_x`.
    pub fn t_inner(&self, x: Elem) -> Perm {
        Perm::from_fn(self.n, |z| self.rdiv(self.mul(x, z), x))
    }

    /// `E_x = L_{J(x)} L_x`.
    pub fn e_map(&self, x: Elem) -> Perm {
        let jx = self.inv_j(x);
        Perm::from_fn(self.n, |z| self.mul(jx, self.mul(x, z)))
    }

    pub fn is_associative(&self) -> bool {
        let n = self.n;
        (0..n).all(|x| {
            (0..n).all(|y| {
                let xy = self.mul(x, y);
                (0..n).all(|z| self.mul(xy, z) == self.mul(x, self.mul(y, z)))
            })
        })
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// `phi(xy) = phi(x) phi(y)` for all `x, y`.
    pub fn is_automorphism(&self, phi: &Perm) -> bool {
        let n = self.n;
        phi.degree() == n
            && (0..n).all(|x| {
                let px = phi.apply(x);
                (0..n).all(|y| phi.apply(self.mul(x, y)) == self.mul(px, phi.apply(y)))
            })
    }

    /// Smallest `k >= 1` with the left-associated power `x^k = 1`.
    pub fn element_order(&self, x: Elem) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
            if k > self.n + 1 {
                break;
            }
        }
        k
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if !self.label.is_empty() {
            let _ = writeln!(s, "# {}", self.label);
        }
        let _ = writeln!(s, "{}", self.n);
        for x in 0..self.n {
            let row: Vec<String> = self.row(x).iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        s
    }
}

fn check_shape(rows: &[Vec<usize>]) -> Result<(), TableError> {
    let n = rows.len();
    if n == 0 {
        return Err(TableError::Empty);
    }
    if n > MAX_ORDER {
        return Err(TableError::TooLarge(n));
    }
    for (r, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(TableError::NotSquare { row: r, len: row.len(), n });
        }
        if let Some(c) = row.iter().position(|&v| v >= n) {
            return Err(TableError::EntryOutOfRange { row: r, col: c, value: row[c] });
        }
    }
    let mut seen = vec![false; n];
    for (r, row) in rows.iter().enumerate() {
        seen.fill(false);
        for &v in row {
            if std::mem::replace(&mut seen[v], true) {
                return Err(TableError::RowNotPermutation(r));
            }
        }
    }
    for c in 0..n {
        seen.fill(false);
        for row in rows {
            if std::mem::replace(&mut seen[row[c]], true) {
                return Err(TableError::ColNotPermutation(c));
            }
        }
    }
    Ok(())
}

fn find_identity(n: usize, mul: &[u16]) -> Result<Elem, TableError> {
    (0..n).find(|&e| (0..n).all(|x| mul[e * n + x] as usize == x && mul[x * n + e] as usize == x)).ok_or(TableError::NoIdentity)
}

/// Parses the text format: optional `#` comment lines, the order `n`,
/// then `n` rows of `n` whitespace-separated 0-based entries.
pub fn parse_rows(text: &str) -> Result<Vec<Vec<usize>>, TableError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (ln, first) = lines.next().ok_or(TableError::Empty)?;
    let n: usize = first.parse().map_err(|_| TableError::Parse { line: ln, msg: format!("expected order, got `{first}`") })?;
    if n == 0 {
        return Err(TableError::Empty);
    }
    if n > MAX_ORDER {
        return Err(TableError::TooLarge(n));
    }
    let mut rows = Vec::with_capacity(n);
    for (ln, line) in lines {
        if rows.len() == n {
            return Err(TableError::Parse { line: ln, msg: "trailing data after table".into() });
        }
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| TableError::Parse { line: ln, msg: e.to_string() })?;
        rows.push(row);
    }
    if rows.len() != n {
        return Err(TableError::Parse { line: 0, msg: format!("expected {n} rows, found {}", rows.len()) });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3() -> CayleyTable {
        CayleyTable::from_fn(3, |x, y| (x + y) % 3).unwrap()
    }

    #[test]
    fn divisions_invert_multiplication() {
        let t = z3();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(t.mul(x, t.ldiv(x, y)), y);
                assert_eq!(t.mul(t.rdiv(y, x), x), y);
            }
        }
    }

    #[test]
    fn column_failure_reported() {
        let rows = vec![vec![0, 1], vec![0, 1]];
        assert_eq!(CayleyTable::from_rows(&rows), Err(TableError::ColNotPermutation(0)));
    }

    #[test]
    fn identity_not_zero() {
        let rows = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(CayleyTable::from_rows(&rows), Err(TableError::IdentityNotZero(1)));
        let (t, sigma) = CayleyTable::from_rows_relabel(&rows).unwrap();
        assert_eq!(t.mul(1, 1), 0);
        assert_eq!(sigma.apply(1), 0);
    }

    #[test]
    fn no_identity() {
        let rows = vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]];
        assert_eq!(CayleyTable::from_rows(&rows), Err(TableError::NoIdentity));
    }

    #[test]
    fn text_round_trip() {
        let t = z3().with_label("cyclic group of order 3");
        let back = CayleyTable::parse(&t.to_text()).unwrap();
        assert_eq!(back.row(2), t.row(2));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(CayleyTable::parse("# nothing\n"), Err(TableError::Empty)));
        assert!(matches!(CayleyTable::parse("2\n0 1\n1\n"), Err(TableError::NotSquare { row: 1, .. })));
        assert!(matches!(CayleyTable::parse("2\n0 1\n1 x\n"), Err(TableError::Parse { line: 3, .. })));
        assert!(matches!(CayleyTable::parse("2\n0 1\n1 5\n"), Err(TableError::EntryOutOfRange { .. })));
    }

    #[test]
    fn inner_maps_fix_identity() {
        let t = crate::samples::symmetric3();
        for x in t.elements() {
            assert_eq!(t.t_inner(x).apply(0), 0);
            for y in t.elements() {
                assert_eq!(t.l_inner(x, y).apply(0), 0);
                assert_eq!(t.r_inner(x, y).apply(0), 0);
            }
        }
    }
}
