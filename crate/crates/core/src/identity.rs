use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{LoopError, Result};
use crate::table::{CayleyTable, Elem};

/// Tuple spaces up to this size are swept exhaustively by default.
pub const EXHAUSTIVE_LIMIT: u128 = 1 << 31;
pub const DEFAULT_SAMPLES: u64 = 10_000_000;
const CHUNK: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Law {
    Buchsteiner,
    BuchsteinerBig,
    Lcc,
    Rcc,
    Cc,
    Extra,
    Moufang,
    Wip,
    Wwip,
    MInverse(i64),
    Flexible,
    LeftAlt,
    RightAlt,
}

impl Law {
    pub fn arity(self) -> usize {
        match self {
            Law::BuchsteinerBig => 4,
            Law::Buchsteiner | Law::Lcc | Law::Rcc | Law::Cc | Law::Extra | Law::Moufang => 3,
            _ => 2,
        }
    }

    pub fn all_named() -> [Law; 12] {
        [
            Law::Buchsteiner,
            Law::BuchsteinerBig,
            Law::Lcc,
            Law::Rcc,
            Law::Cc,
            Law::Extra,
            Law::Moufang,
            Law::Wip,
            Law::Wwip,
            Law::Flexible,
            Law::LeftAlt,
            Law::RightAlt,
        ]
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Law::Buchsteiner => write!(f, "buchsteiner"),
            Law::BuchsteinerBig => write!(f, "buchsteiner_big"),
            Law::Lcc => write!(f, "lcc"),
            Law::Rcc => write!(f, "rcc"),
            Law::Cc => write!(f, "cc"),
            Law::Extra => write!(f, "extra"),
            Law::Moufang => write!(f, "moufang"),
            Law::Wip => write!(f, "wip"),
            Law::Wwip => write!(f, "wwip"),
            Law::MInverse(m) => write!(f, "minverse:{m}"),
            Law::Flexible => write!(f, "flexible"),
            Law::LeftAlt => write!(f, "left_alt"),
            Law::RightAlt => write!(f, "right_alt"),
        }
    }
}

impl FromStr for Law {
    type Err = LoopError;

    fn from_str(s: &str) -> Result<Law> {
        let s = s.trim().to_ascii_lowercase();
        if let Some(m) = s.strip_prefix("minverse:").or_else(|| s.strip_prefix("m-inverse:")).or_else(|| s.strip_prefix("m_inverse:")) {
            return m.trim().parse().map(Law::MInverse).map_err(|_| LoopError::UnknownLaw(s.clone()));
        }
        let s = s.replace('-', "_");
        Ok(match s.as_str() {
            "buchsteiner" => Law::Buchsteiner,
            "buchsteiner_big" => Law::BuchsteinerBig,
            "lcc" => Law::Lcc,
            "rcc" => Law::Rcc,
            "cc" => Law::Cc,
            "extra" => Law::Extra,
            "moufang" => Law::Moufang,
            "wip" => Law::Wip,
            "wwip" => Law::Wwip,
            "flexible" => Law::Flexible,
            "left_alt" | "lalt" => Law::LeftAlt,
            "right_alt" | "ralt" => Law::RightAlt,
            _ => return Err(LoopError::UnknownLaw(s)),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

impl Mode {
    /// Exhaustive when `n^arity` fits the limit, otherwise sampled with the
    /// given seed, which must then be present.
    pub fn auto(n: usize, arity: usize, seed: Option<u64>, samples: Option<u64>) -> Result<Mode> {
        if (n as u128).pow(arity as u32) <= EXHAUSTIVE_LIMIT {
            Ok(Mode::Exhaustive)
        } else {
            let seed = seed.ok_or(LoopError::MissingSeed)?;
            Ok(Mode::Sampled { samples: samples.unwrap_or(DEFAULT_SAMPLES), seed })
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Mode::Exhaustive => None,
            Mode::Sampled { seed, .. } => Some(*seed),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Sampled { .. } => "sampled",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub law: String,
    pub mode: Mode,
    pub passed: bool,
    pub witness: Option<Vec<Elem>>,
    pub evaluations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_part: Option<String>,
}

/// Searches for the lexicographically smallest `A`-tuple violating `pred`.
/// Returns the witness and the number of evaluations performed.
pub fn sweep<const A: usize, F>(n: usize, mode: Mode, pred: F) -> (Option<[Elem; A]>, u64)
where
    F: Fn([Elem; A]) -> bool + Sync,
{
    match mode {
        Mode::Exhaustive => exhaustive(n, &pred),
        Mode::Sampled { samples, seed } => sampled(n, samples, seed, &pred),
    }
}

fn exhaustive<const A: usize, F>(n: usize, pred: &F) -> (Option<[Elem; A]>, u64)
where
    F: Fn([Elem; A]) -> bool + Sync,
{
    if A == 0 {
        return (if pred([0; A]) { None } else { Some([0; A]) }, 1);
    }
    let first = (0..n).into_par_iter().find_map_first(|x| {
        let mut v = [0; A];
        v[0] = x;
        loop {
            if !pred(v) {
                return Some(v);
            }
            let mut k = A - 1;
            loop {
                if k == 0 {
                    return None;
                }
                v[k] += 1;
                if v[k] < n {
                    break;
                }
                v[k] = 0;
                k -= 1;
            }
        }
    });
    let total = (n as u64).pow(A as u32);
    let evaluated = match first {
        None => total,
        Some(w) => w.iter().fold(0u64, |acc, &x| acc * n as u64 + x as u64) + 1,
    };
    (first, evaluated)
}

fn sampled<const A: usize, F>(n: usize, samples: u64, seed: u64, pred: &F) -> (Option<[Elem; A]>, u64)
where
    F: Fn([Elem; A]) -> bool + Sync,
{
    let chunks = samples.div_ceil(CHUNK);
    let worst = (0..chunks)
        .into_par_iter()
        .filter_map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let len = CHUNK.min(samples - c * CHUNK);
            let mut best: Option<[Elem; A]> = None;
            for _ in 0..len {
                let mut v = [0; A];
                for x in v.iter_mut() {
                    *x = rng.random_range(0..n);
                }
                if !pred(v) && best.is_none_or(|b| v < b) {
                    best = Some(v);
                }
            }
            best
        })
        .min();
    (worst, samples)
}

/// Precomputed powers `I^k` for the exponents a law needs.
struct Powers {
    maps: Vec<(i64, Vec<u16>)>,
}

impl Powers {
    fn new(t: &CayleyTable, ks: &[i64]) -> Powers {
        let maps = ks.iter().map(|&k| (k, t.elements().map(|x| t.inv_pow(x, k) as u16).collect())).collect();
        Powers { maps }
    }

    #[inline]
    fn get(&self, k: i64, x: Elem) -> Elem {
        let m = &self.maps.iter().find(|(j, _)| *j == k).unwrap().1;
        m[x] as usize
    }
}

pub fn check_identity(t: &CayleyTable, law: Law, mode: Mode) -> CheckResult {
    let n = t.order();
    let (witness, evaluations, failed_part) = match law {
        Law::Cc => {
            let l = check_identity(t, Law::Lcc, mode);
            if !l.passed {
                (l.witness, l.evaluations, Some("lcc".to_string()))
            } else {
                let r = check_identity(t, Law::Rcc, mode);
                let part = (!r.passed).then(|| "rcc".to_string());
                (r.witness, l.evaluations + r.evaluations, part)
            }
        }
        Law::BuchsteinerBig => {
            let (w, e) = sweep::<4, _>(n, mode, |[x, y, u, v]| {
                let (xy, yx) = (t.mul(x, y), t.mul(y, x));
                t.ldiv(xy, t.mul(t.mul(xy, u), v)) == t.rdiv(t.mul(u, t.mul(v, yx)), yx)
            });
            (w.map(|a| a.to_vec()), e, None)
        }
        Law::Buchsteiner | Law::Lcc | Law::Rcc | Law::Extra | Law::Moufang => {
            let (w, e) = sweep::<3, _>(n, mode, |[x, y, z]| holds3(t, law, x, y, z));
            (w.map(|a| a.to_vec()), e, None)
        }
        _ => {
            let ks: Vec<i64> = match law {
                Law::MInverse(m) => vec![m, m + 1],
                _ => vec![1, 2],
            };
            let p = Powers::new(t, &ks);
            let (w, e) = sweep::<2, _>(n, mode, |[x, y]| holds2(t, &p, law, x, y));
            (w.map(|a| a.to_vec()), e, None)
        }
    };
    CheckResult { law: law.to_string(), mode, passed: witness.is_none(), witness, evaluations, failed_part }
}

#[inline]
fn holds3(t: &CayleyTable, law: Law, x: Elem, y: Elem, z: Elem) -> bool {
    let m = |a, b| t.mul(a, b);
    match law {
        Law::Buchsteiner => t.ldiv(x, m(m(x, y), z)) == t.rdiv(m(y, m(z, x)), x),
        Law::Lcc => m(x, m(y, z)) == m(t.rdiv(m(x, y), x), m(x, z)),
        Law::Rcc => m(m(z, y), x) == m(m(z, x), t.ldiv(x, m(y, x))),
        Law::Extra => m(x, m(y, m(z, x))) == m(m(m(x, y), z), x),
        Law::Moufang => m(x, m(m(y, z), x)) == m(m(x, y), m(z, x)),
        _ => unreachable!(),
    }
}

#[inline]
fn holds2(t: &CayleyTable, p: &Powers, law: Law, x: Elem, y: Elem) -> bool {
    let m = |a, b| t.mul(a, b);
    match law {
        Law::Wip => m(x, t.inv_i(m(y, x))) == t.inv_i(y),
        Law::Wwip => m(t.inv_i(m(x, y)), p.get(2, x)) == t.inv_i(y),
        Law::MInverse(k) => m(p.get(k, m(x, y)), p.get(k + 1, x)) == p.get(k, y),
        Law::Flexible => m(x, m(y, x)) == m(m(x, y), x),
        Law::LeftAlt => m(x, m(x, y)) == m(m(x, x), y),
        Law::RightAlt => m(m(y, x), x) == m(y, m(x, x)),
        _ => unreachable!(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ElementFlags {
    pub lip: bool,
    pub rip: bool,
    pub flexible: bool,
    pub left_alt: bool,
    pub right_alt: bool,
    pub extra: bool,
    pub moufang: bool,
    pub two_sided_inverse: bool,
}

pub fn element_properties(t: &CayleyTable, a: Elem) -> Result<ElementFlags> {
    if !t.contains(a) {
        return Err(LoopError::ElementOutOfRange(a));
    }
    let m = |x, y| t.mul(x, y);
    let all1 = |f: &dyn Fn(Elem) -> bool| t.elements().all(f);
    let all2 = |f: &dyn Fn(Elem, Elem) -> bool| t.elements().all(|x| t.elements().all(|y| f(x, y)));
    let (ia, ja) = (t.inv_i(a), t.inv_j(a));
    let two = ia == ja;
    Ok(ElementFlags {
        two_sided_inverse: two,
        lip: two && all1(&|x| m(a, m(ia, x)) == x && m(ia, m(a, x)) == x),
        rip: two && all1(&|x| m(m(x, a), ia) == x && m(m(x, ia), a) == x),
        flexible: all1(&|x| m(a, m(x, a)) == m(m(a, x), a)),
        left_alt: all1(&|x| m(a, m(a, x)) == m(m(a, a), x)),
        right_alt: all1(&|x| m(m(x, a), a) == m(x, m(a, a))),
        extra: all2(&|y, z| m(a, m(y, m(z, a))) == m(m(m(a, y), z), a)),
        moufang: all2(&|x, y| m(a, m(m(x, y), a)) == m(m(a, x), m(y, a))),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MInverseReport {
    pub m: i64,
    pub dual_m: i64,
    pub dual_holds: bool,
    pub automorphism_power: i64,
    pub automorphism_holds: bool,
    /// `(k, 2^k)` when `3m + 1 = +-2^k`, with whether `I^{2^k}` is an automorphism.
    pub power_of_two: Option<(u32, bool)>,
    /// `k` when `m = ((-2)^k - 1) / 3`, so the loop is WIP^k and also WIP^{k+1}.
    pub wip_level: Option<u32>,
}

/// Consequences of the `m`-inverse property: the loop is also
/// `(-2m-1)`-inverse and `I^{3m+1}` is an automorphism.
pub fn minverse_suite(t: &CayleyTable, m: i64) -> Result<MInverseReport> {
    let base = check_identity(t, Law::MInverse(m), Mode::Exhaustive);
    if !base.passed {
        return Err(LoopError::NotMInverse { m, witness: base.witness.unwrap() });
    }
    let dual_m = -2 * m - 1;
    let dual_holds = check_identity(t, Law::MInverse(dual_m), Mode::Exhaustive).passed;
    let k = 3 * m + 1;
    let pow_map = |k: i64| crate::perm::Perm::from_fn(t.order(), |x| t.inv_pow(x, k));
    let automorphism_holds = t.is_automorphism(&pow_map(k));
    let power_of_two = if k != 0 && k.unsigned_abs().is_power_of_two() {
        let e = k.unsigned_abs().trailing_zeros();
        Some((e, t.is_automorphism(&pow_map(1i64 << e))))
    } else {
        None
    };
    let wip_level = (0..40u32).find(|&j| ((-2i128).pow(j) - 1) / 3 == m as i128);
    Ok(MInverseReport { m, dual_m, dual_holds, automorphism_power: k, automorphism_holds, power_of_two, wip_level })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn groups_satisfy_all_named_laws() {
        for t in [samples::symmetric3(), samples::quaternion8(), samples::dihedral(4)] {
            for law in Law::all_named() {
                let r = check_identity(&t, law, Mode::Exhaustive);
                assert!(r.passed, "{} {}", t.label(), law);
                assert_eq!(r.evaluations, (t.order() as u64).pow(law.arity() as u32) * if law == Law::Cc { 2 } else { 1 });
            }
        }
    }

    #[test]
    fn octonions_are_moufang_not_associative() {
        let t = samples::octonion16();
        for law in [Law::Moufang, Law::Extra, Law::Buchsteiner, Law::Flexible, Law::Cc, Law::Wip, Law::Wwip] {
            assert!(check_identity(&t, law, Mode::Exhaustive).passed, "{law}");
        }
    }

    #[test]
    fn witness_is_lexicographically_smallest() {
        let t = samples::random_loop(7, 11);
        let r = check_identity(&t, Law::Buchsteiner, Mode::Exhaustive);
        let w = r.witness.clone().expect("random loop should fail");
        let mut first = None;
        'outer: for x in 0..7 {
            for y in 0..7 {
                for z in 0..7 {
                    if !holds3(&t, Law::Buchsteiner, x, y, z) {
                        first = Some(vec![x, y, z]);
                        break 'outer;
                    }
                }
            }
        }
        assert_eq!(Some(w), first);
    }

    #[test]
    fn sampled_is_deterministic_and_thread_independent() {
        let t = samples::random_loop(8, 5);
        let mode = Mode::Sampled { samples: 200_000, seed: 42 };
        let a = check_identity(&t, Law::Moufang, mode);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| check_identity(&t, Law::Moufang, mode));
        assert_eq!(a, b);
        assert!(!a.passed);
    }

    #[test]
    fn cc_reports_failing_half() {
        let t = samples::random_loop(6, 2);
        let r = check_identity(&t, Law::Cc, Mode::Exhaustive);
        assert!(!r.passed);
        assert!(r.failed_part.is_some());
    }

    #[test]
    fn law_names_round_trip() {
        for law in Law::all_named().into_iter().chain([Law::MInverse(-3)]) {
            assert_eq!(law.to_string().parse::<Law>().unwrap(), law);
        }
        assert!("nonsense".parse::<Law>().is_err());
    }

    #[test]
    fn auto_mode() {
        assert_eq!(Mode::auto(1024, 3, None, None).unwrap(), Mode::Exhaustive);
        assert_eq!(Mode::auto(1024, 4, None, None), Err(LoopError::MissingSeed));
        assert_eq!(Mode::auto(1024, 4, Some(1), None).unwrap(), Mode::Sampled { samples: DEFAULT_SAMPLES, seed: 1 });
    }

    #[test]
    fn wip_and_wwip_are_m_inverse() {
        let t = samples::octonion16();
        let r = minverse_suite(&t, -1).unwrap();
        assert!(r.dual_holds && r.automorphism_holds);
        assert_eq!(r.dual_m, 1);
        assert_eq!(r.wip_level, Some(1));
    }

    #[test]
    fn element_flags_in_groups() {
        let t = samples::symmetric3();
        for a in t.elements() {
            let f = element_properties(&t, a).unwrap();
            assert!(f.lip && f.rip && f.flexible && f.extra && f.moufang);
        }
        assert!(element_properties(&t, 6).is_err());
    }
}
