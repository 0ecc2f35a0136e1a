use std::fmt;

use crate::error::PermError;

/// A permutation of `0..degree`, stored as its image list.
///
/// Composition follows `(f * g)(x) = f(g(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, serde::Serialize)]
#[serde(transparent)]
pub struct Perm {
    img: Vec<u16>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm { img: (0..n as u16).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Perm, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(PermError::NotAPermutation(n));
            }
            seen[i] = true;
        }
        Ok(Perm { img: images.into_iter().map(|i| i as u16).collect() })
    }

    /// Caller guarantees the images form a permutation.
    pub(crate) fn from_raw(img: Vec<u16>) -> Perm {
        debug_assert!(Perm::from_images(img.iter().map(|&i| i as usize).collect()).is_ok());
        Perm { img }
    }

    pub(crate) fn from_fn(n: usize, f: impl Fn(usize) -> usize) -> Perm {
        Perm::from_raw((0..n).map(|x| f(x) as u16).collect())
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.img[x] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.img.iter().map(|&i| i as usize)
    }

    /// `self * other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm { img: other.img.iter().map(|&x| self.img[x as usize]).collect() }
    }

    pub fn try_compose(&self, other: &Perm) -> Result<Perm, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose(other))
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.img.len()];
        for (x, &y) in self.img.iter().enumerate() {
            inv[y as usize] = x as u16;
        }
        Perm { img: inv }
    }

    pub fn pow(&self, k: i64) -> Perm {
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Group commutator `f^-1 g^-1 f g`.
    pub fn commutator(&self, other: &Perm) -> Perm {
        self.inverse().compose(&other.inverse()).compose(self).compose(other)
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.img.iter().enumerate().position(|(i, &x)| i != x as usize)
    }

    pub fn order(&self) -> u64 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut acc: u64 = 1;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0u64;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            acc = lcm(acc, len);
        }
        acc
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.img.iter().map(|i| i.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}
