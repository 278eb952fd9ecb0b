//! Sufficient conditions for solvability and weak group-theoreticality
//! read off from Frobenius-Perron dimensions.
//!
//! A dimension `n = pᵃ c` or `n = pᵃ qᵇ c` with `c` square-free and coprime
//! to `p` and `q` is called a single-prime or two-prime factorization.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{factorize, is_square_free, valuation};
use crate::fusion_ring::{fp_dim_data, simple_dims_prime_power, FpDimError, FusionRing, PrimePowerDims};

/// Upper bound on scan limits unless the caller raises it.
pub const DEFAULT_SCAN_CAP: u64 = 10_000_000;

/// Dimensions below which every non-factorizing `n` is claimed to be 900.
pub const BOUND_ALL: u64 = 1800;
/// Odd dimensions below which every non-factorizing `n` is claimed to be 11025.
pub const BOUND_ODD: u64 = 33075;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Factorization {
    pub p: Option<u64>,
    pub a: u32,
    pub q: Option<u64>,
    pub b: u32,
    pub c: u64,
}

impl Factorization {
    pub fn value(&self) -> u64 {
        let pa = self.p.map_or(1, |p| p.pow(self.a));
        let qb = self.q.map_or(1, |q| q.pow(self.b));
        pa * qb * self.c
    }

    /// Recomposes to `n` with `c` square-free and coprime to the primes.
    pub fn verifies(&self, n: u64) -> bool {
        let coprime = |p: Option<u64>| p.is_none_or(|p| !self.c.is_multiple_of(p));
        let ordered = match (self.p, self.q) {
            (Some(p), Some(q)) => p < q,
            (None, Some(_)) => false,
            _ => true,
        };
        self.value() == n && is_square_free(self.c) && coprime(self.p) && coprime(self.q) && ordered
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(p) = self.p {
            parts.push(format!("{p}^{}", self.a));
        }
        if let Some(q) = self.q {
            parts.push(format!("{q}^{}", self.b));
        }
        parts.push(self.c.to_string());
        write!(f, "{}", parts.join(" * "))
    }
}

/// Primes dividing `n` to at least the second power, with exponents.
fn squared_primes(n: u64) -> Vec<(u64, u32)> {
    factorize(n).into_iter().filter(|&(_, e)| e >= 2).collect()
}

fn strip(n: u64, primes: &[(u64, u32)]) -> u64 {
    primes.iter().fold(n, |m, &(p, e)| m / p.pow(e))
}

/// `n = pᵃ c`, if possible. Square-free `n` gives `(none, 0, n)`.
pub fn factor_pac(n: u64) -> Option<Factorization> {
    assert!(n >= 1);
    let sq = squared_primes(n);
    let c = strip(n, &sq);
    match sq.as_slice() {
        [] => Some(Factorization { p: None, a: 0, q: None, b: 0, c }),
        &[(p, a)] => Some(Factorization { p: Some(p), a, q: None, b: 0, c }),
        _ => None,
    }
}

/// `n = pᵃ qᵇ c` with `p < q`, if possible.
pub fn factor_paqbc(n: u64) -> Option<Factorization> {
    assert!(n >= 1);
    let sq = squared_primes(n);
    match sq.as_slice() {
        &[(p, a), (q, b)] => Some(Factorization { p: Some(p), a, q: Some(q), b, c: strip(n, &sq) }),
        [] | [_] => factor_pac(n),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VerdictKind {
    SolvableSinglePrime,
    WGTTwoPrimes,
    WGTBelow1800,
    SolvableOddBelow33075,
    Unknown,
}

impl VerdictKind {
    pub fn name(self) -> &'static str {
        match self {
            VerdictKind::SolvableSinglePrime => "SolvableSinglePrime",
            VerdictKind::WGTTwoPrimes => "WGTTwoPrimes",
            VerdictKind::WGTBelow1800 => "WGTBelow1800",
            VerdictKind::SolvableOddBelow33075 => "SolvableOddBelow33075",
            VerdictKind::Unknown => "Unknown",
        }
    }

    pub fn is_solvable(self) -> bool {
        matches!(self, VerdictKind::SolvableSinglePrime | VerdictKind::SolvableOddBelow33075)
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionVerdict {
    pub kind: VerdictKind,
    pub witness: Option<Factorization>,
    /// The prime behind a single-prime verdict.
    pub prime: Option<u64>,
    pub notes: Vec<String>,
}

const SCOPE: &str = "applies to weakly integral nondegenerate braided fusion categories of this dimension";

fn describe_powers(n: u64) -> String {
    factorize(n)
        .iter()
        .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Verdict for a braided fusion category of Frobenius-Perron dimension `n`.
pub fn verdict_dimension(n: u64) -> DimensionVerdict {
    if let Some(f) = factor_pac(n) {
        return DimensionVerdict {
            kind: VerdictKind::SolvableSinglePrime,
            witness: Some(f),
            prime: f.p,
            notes: vec![format!("dimension {n} = {f} with square-free part {}", f.c), SCOPE.into()],
        };
    }
    if let Some(f) = factor_paqbc(n) {
        return DimensionVerdict {
            kind: VerdictKind::WGTTwoPrimes,
            witness: Some(f),
            prime: None,
            notes: vec![format!("dimension {n} = {f} with square-free part {}", f.c), SCOPE.into()],
        };
    }
    let powers = describe_powers(n);
    let (kind, notes) = if n == 900 {
        (
            VerdictKind::WGTBelow1800,
            vec![
                format!("{n} = {powers} has no two-prime factorization"),
                format!("special case of the bound FPdim < {BOUND_ALL}"),
                format!("scan below {BOUND_ALL}: exceptions 900 1764; claimed exceptions 900"),
                SCOPE.into(),
            ],
        )
    } else if n == 11025 {
        (
            VerdictKind::SolvableOddBelow33075,
            vec![
                format!("{n} = {powers} has no two-prime factorization"),
                format!("special case of the bound for odd FPdim < {BOUND_ODD}"),
                format!("odd scan below {BOUND_ODD}: exceptions 11025 27225; claimed exceptions 11025"),
                SCOPE.into(),
            ],
        )
    } else if n < BOUND_ALL || (n % 2 == 1 && n < BOUND_ODD) {
        let (bound, scan) = if n < BOUND_ALL {
            (format!("FPdim < {BOUND_ALL}"), "claimed exceptions 900")
        } else {
            (format!("odd FPdim < {BOUND_ODD}"), "claimed exceptions 11025")
        };
        (
            VerdictKind::Unknown,
            vec![
                format!("{n} = {powers} has no two-prime factorization"),
                format!("discrepancy: {n} is below the bound {bound} but is not among the {scan}"),
                "the bound-based argument covers only the claimed exception".into(),
            ],
        )
    } else {
        (VerdictKind::Unknown, vec![format!("{n} = {powers} has no two-prime factorization")])
    };
    DimensionVerdict { kind, witness: None, prime: None, notes }
}

/// Verdict for a fusion ring, from its simple dimensions first and its
/// total dimension second.
pub fn verdict_ring(ring: &FusionRing, tolerance: f64) -> Result<DimensionVerdict, FpDimError> {
    let data = fp_dim_data(ring, tolerance)?;
    let total = match data.total_exact {
        Some(t) if data.weakly_integral => t,
        _ => {
            return Ok(DimensionVerdict {
                kind: VerdictKind::Unknown,
                witness: None,
                prime: None,
                notes: vec!["not weakly integral: the criteria require an integer FPdim".into()],
            })
        }
    };
    let single = |p: u64| {
        let a = valuation(total, p);
        let f = Factorization { p: Some(p), a, q: None, b: 0, c: total / p.pow(a) };
        f.verifies(total).then_some(f)
    };
    match simple_dims_prime_power(&data) {
        Ok(PrimePowerDims::Prime(p)) => Ok(DimensionVerdict {
            kind: VerdictKind::SolvableSinglePrime,
            witness: single(p),
            prime: Some(p),
            notes: vec![format!("every simple has FPdim² a power of {p}"), SCOPE.into()],
        }),
        Ok(PrimePowerDims::Pointed) => {
            let prime = factorize(total).first().map(|&(p, _)| p);
            Ok(DimensionVerdict {
                kind: VerdictKind::SolvableSinglePrime,
                witness: factor_pac(total).or_else(|| prime.and_then(single)),
                prime,
                notes: vec!["pointed: every simple has FPdim 1".into(), SCOPE.into()],
            })
        }
        Ok(PrimePowerDims::None) => Ok(verdict_dimension(total)),
        Err(msg) => Ok(DimensionVerdict {
            kind: VerdictKind::Unknown,
            witness: None,
            prime: None,
            notes: vec![msg],
        }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ScanError {
    #[error("scan limit {limit} exceeds cap {cap}")]
    LimitExceedsCap { limit: u64, cap: u64 },
}

/// Exhaustive list of `n < limit` without a two-prime factorization,
/// compared with the exceptional set claimed for that range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub limit: u64,
    pub odd_only: bool,
    pub exceptions: Vec<u64>,
    /// Claimed exceptions below `limit`, if a claim covers this range.
    pub claimed: Option<Vec<u64>>,
    /// Found but not claimed.
    pub divergence: Vec<u64>,
    /// Claimed but not found.
    pub missing: Vec<u64>,
}

pub fn scan_exceptions(limit: u64, odd_only: bool, cap: u64) -> Result<ScanReport, ScanError> {
    if limit > cap {
        return Err(ScanError::LimitExceedsCap { limit, cap });
    }
    let exceptions: Vec<u64> = (1..limit)
        .into_par_iter()
        .filter(|&n| (!odd_only || n % 2 == 1) && factor_paqbc(n).is_none())
        .collect();
    let claimed = claimed_exceptions(limit, odd_only);
    let (divergence, missing) = match &claimed {
        Some(c) => (
            exceptions.iter().filter(|n| !c.contains(n)).copied().collect(),
            c.iter().filter(|n| !exceptions.contains(n)).copied().collect(),
        ),
        None => (Vec::new(), Vec::new()),
    };
    Ok(ScanReport { limit, odd_only, exceptions, claimed, divergence, missing })
}

/// The exceptional sets asserted by the bound-based criteria.
pub fn claimed_exceptions(limit: u64, odd_only: bool) -> Option<Vec<u64>> {
    let (bound, special) = if limit <= BOUND_ALL {
        (BOUND_ALL, 900)
    } else if odd_only && limit <= BOUND_ODD {
        (BOUND_ODD, 11025)
    } else {
        return None;
    };
    debug_assert!(limit <= bound);
    Some(if special < limit && (!odd_only || special % 2 == 1) { vec![special] } else { vec![] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion_ring::{parse_ring, tests::ising, DEFAULT_TOLERANCE};

    fn f(p: Option<u64>, a: u32, q: Option<u64>, b: u32, c: u64) -> Factorization {
        Factorization { p, a, q, b, c }
    }

    #[test]
    fn pac_examples() {
        assert_eq!(factor_pac(12), Some(f(Some(2), 2, None, 0, 3)));
        assert_eq!(factor_pac(1), Some(f(None, 0, None, 0, 1)));
        assert_eq!(factor_pac(900), None);
        assert_eq!(factor_pac(30), Some(f(None, 0, None, 0, 30)));
    }

    #[test]
    fn paqbc_examples() {
        assert_eq!(factor_paqbc(60), Some(f(Some(2), 2, None, 0, 15)));
        assert_eq!(factor_paqbc(36), Some(f(Some(2), 2, Some(3), 2, 1)));
        assert_eq!(factor_paqbc(900), None);
        assert_eq!(factor_paqbc(1764), None);
        assert_eq!(factor_paqbc(2 * 9 * 25 * 7), Some(f(Some(3), 2, Some(5), 2, 14)));
    }

    #[test]
    fn dimension_verdicts() {
        let v = verdict_dimension(36);
        assert_eq!(v.kind, VerdictKind::WGTTwoPrimes);
        assert_eq!(v.witness, Some(f(Some(2), 2, Some(3), 2, 1)));
        assert_eq!(verdict_dimension(12).kind, VerdictKind::SolvableSinglePrime);
        let v = verdict_dimension(900);
        assert_eq!(v.kind, VerdictKind::WGTBelow1800);
        assert!(v.notes.iter().any(|n| n.contains("1764")));
        let v = verdict_dimension(11025);
        assert_eq!(v.kind, VerdictKind::SolvableOddBelow33075);
        assert!(v.notes[0].contains("3^2 5^2 7^2"));
        for n in [1764, 27225] {
            let v = verdict_dimension(n);
            assert_eq!(v.kind, VerdictKind::Unknown);
            assert!(v.notes.iter().any(|n| n.starts_with("discrepancy")));
        }
        assert!(verdict_dimension(44100).notes.iter().all(|n| !n.starts_with("discrepancy")));
    }

    #[test]
    fn ring_verdicts() {
        let v = verdict_ring(&ising(), DEFAULT_TOLERANCE).unwrap();
        assert_eq!((v.kind, v.prime), (VerdictKind::SolvableSinglePrime, Some(2)));
        assert_eq!(v.witness, Some(f(Some(2), 2, None, 0, 1)));
        let fib = FusionRing::new(
            parse_ring("rank 2\nlabels 1 t\ndual 0 1\nN 0 0 0 1\nN 0 1 1 1\nN 1 0 1 1\nN 1 1 0 1\nN 1 1 1 1\n").unwrap(),
        )
        .unwrap();
        let v = verdict_ring(&fib, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(v.kind, VerdictKind::Unknown);
        assert!(v.notes[0].contains("not weakly integral"));
        let z6 = verdict_ring(&FusionRing::pointed(&[6]), DEFAULT_TOLERANCE).unwrap();
        assert!(z6.kind.is_solvable());
        assert_eq!(z6.witness, Some(f(None, 0, None, 0, 6)));
    }

    #[test]
    fn scans() {
        let r = scan_exceptions(1800, false, DEFAULT_SCAN_CAP).unwrap();
        assert_eq!(r.exceptions, vec![900, 1764]);
        assert_eq!((r.claimed, r.divergence), (Some(vec![900]), vec![1764]));
        let r = scan_exceptions(33075, true, DEFAULT_SCAN_CAP).unwrap();
        assert_eq!(r.exceptions, vec![11025, 27225]);
        assert_eq!(r.divergence, vec![27225]);
        assert!(scan_exceptions(100, false, DEFAULT_SCAN_CAP).unwrap().exceptions.is_empty());
        assert_eq!(
            scan_exceptions(100, false, 50),
            Err(ScanError::LimitExceedsCap { limit: 100, cap: 50 })
        );
    }
}
