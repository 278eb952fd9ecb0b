//! Frobenius-Perron dimensions with exact integrality certificates.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::FusionRing;
use crate::arith::isqrt;

pub const DEFAULT_TOLERANCE: f64 = 1e-12;

const MAX_ITERATIONS: usize = 200_000;

/// A certificate candidate is tested exactly only when the numeric
/// dimension is this close to `√s`.
const CERTIFY_WINDOW: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct FpDimData {
    /// `FPdim` of each simple, replaced by `√s` once certified.
    pub dims: Vec<f64>,
    /// Absolute error bound for each entry of `dims`.
    pub error_bounds: Vec<f64>,
    /// `s_i` with `dims[i] = √s_i` exactly.
    pub exact_square: Vec<Option<u64>>,
    pub total: f64,
    pub total_error: f64,
    pub total_exact: Option<u64>,
    pub integral: bool,
    pub weakly_integral: bool,
}

impl FpDimData {
    /// Certified integer dimension of simple `i`, if any.
    pub fn integer_dim(&self, i: usize) -> Option<u64> {
        self.exact_square[i].and_then(|s| {
            let r = isqrt(s);
            (r * r == s).then_some(r)
        })
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum FpDimError {
    #[error("power iteration for simple {simple} did not converge in {iterations} steps")]
    NoConvergence { simple: usize, iterations: usize },
    #[error("simple {simple}: FPdim {value} is within tolerance of sqrt({candidate}) but the exact check fails")]
    CertificationFailed { simple: usize, value: f64, candidate: u64 },
    #[error("tolerance must be positive and finite")]
    BadTolerance,
}

/// Perron root of a nonnegative matrix by power iteration on `M + I`,
/// starting from the all-ones vector. Returns the root and the last
/// change in the Rayleigh quotient.
fn perron_root(m: &[Vec<i64>], tolerance: f64) -> Option<(f64, f64)> {
    let n = m.len();
    let mut v = vec![1.0f64; n];
    let mut prev = f64::NAN;
    for _ in 0..MAX_ITERATIONS {
        let w: Vec<f64> = (0..n)
            .map(|j| v[j] + (0..n).map(|k| m[j][k] as f64 * v[k]).sum::<f64>())
            .collect();
        let rq = v.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>() / v.iter().map(|a| a * a).sum::<f64>();
        let diff = (rq - prev).abs();
        if diff < tolerance / 10.0 {
            return Some((rq - 1.0, diff));
        }
        prev = rq;
        let scale = w.iter().cloned().fold(0.0, f64::max);
        v = w.into_iter().map(|x| x / scale).collect();
    }
    None
}

/// Characteristic polynomial `det(xI - M)` by the division-free
/// Samuelson-Berkowitz recursion. Coefficients lowest degree first.
pub(crate) fn char_poly(m: &[Vec<i64>]) -> Vec<BigInt> {
    let n = m.len();
    let a = |i: usize, j: usize| BigInt::from(m[i][j]);
    // c holds det(xI - A_k) for the leading k×k block, highest degree first
    let mut c: Vec<BigInt> = vec![BigInt::one()];
    for k in 0..n {
        // A_{k+1} = [[A_k, col], [row, a_kk]]
        let col: Vec<BigInt> = (0..k).map(|i| a(i, k)).collect();
        let row: Vec<BigInt> = (0..k).map(|j| a(k, j)).collect();
        // Toeplitz column: 1, -a_kk, -row·col, -row·A·col, …
        let mut t = vec![BigInt::one(), -a(k, k)];
        let mut vec_ = col.clone();
        for _ in 0..k {
            let dot: BigInt = row.iter().zip(&vec_).map(|(x, y)| x * y).sum();
            t.push(-dot);
            vec_ = (0..k)
                .map(|i| (0..k).map(|j| a(i, j) * &vec_[j]).sum())
                .collect();
        }
        let mut next = vec![BigInt::zero(); k + 2];
        for (i, ti) in t.iter().enumerate() {
            for (j, cj) in c.iter().enumerate() {
                if i + j < k + 2 {
                    next[i + j] += ti * cj;
                }
            }
        }
        c = next;
    }
    c.reverse();
    c
}

/// Whether `x² - s` shares a root with `poly`.
fn shares_root_with_square(poly: &[BigInt], s: u64) -> bool {
    // poly(√s) = even + odd·√s
    let s_big = BigInt::from(s);
    let mut even = BigInt::zero();
    let mut odd = BigInt::zero();
    let mut pow = BigInt::one();
    for (deg, c) in poly.iter().enumerate() {
        if deg % 2 == 0 {
            even += c * &pow;
        } else {
            odd += c * &pow;
            pow *= &s_big;
        }
    }
    let r = isqrt(s);
    if r * r == s {
        even + odd * BigInt::from(r) == BigInt::zero()
    } else {
        even.is_zero() && odd.is_zero()
    }
}

/// Frobenius-Perron dimensions of all simples with exact certificates for
/// the ones whose square is an integer.
pub fn fp_dim_data(ring: &FusionRing, tolerance: f64) -> Result<FpDimData, FpDimError> {
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(FpDimError::BadTolerance);
    }
    let r = ring.rank();
    let mut dims = Vec::with_capacity(r);
    let mut error_bounds = Vec::with_capacity(r);
    let mut exact_square = Vec::with_capacity(r);
    for i in 0..r {
        let m = ring.left_matrix(i);
        let (d, diff) = perron_root(&m, tolerance).ok_or(FpDimError::NoConvergence {
            simple: i,
            iterations: MAX_ITERATIONS,
        })?;
        let s = (d * d).round().max(1.0) as u64;
        let gap = (d - (s as f64).sqrt()).abs();
        let certified = gap <= CERTIFY_WINDOW && shares_root_with_square(&char_poly(&m), s);
        if certified {
            dims.push((s as f64).sqrt());
            error_bounds.push(f64::EPSILON * (s as f64).sqrt());
            exact_square.push(Some(s));
        } else {
            if gap <= tolerance {
                return Err(FpDimError::CertificationFailed { simple: i, value: d, candidate: s });
            }
            dims.push(d);
            error_bounds.push(tolerance.max(diff));
            exact_square.push(None);
        }
    }
    let total: f64 = dims.iter().map(|d| d * d).sum();
    let total_error = dims
        .iter()
        .zip(&error_bounds)
        .map(|(d, e)| 2.0 * d * e + e * e)
        .sum::<f64>();
    let total_exact = exact_square.iter().copied().sum::<Option<u64>>();
    let data = FpDimData {
        integral: exact_square.iter().all(|s| s.is_some_and(|s| isqrt(s).pow(2) == s)),
        weakly_integral: total_exact.is_some(),
        dims,
        error_bounds,
        exact_square,
        total,
        total_error,
        total_exact,
    };
    Ok(data)
}
