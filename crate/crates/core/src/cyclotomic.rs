//! Exact arithmetic in the cyclotomic integers `Z[ζ_n]`.
//!
//! Elements are polynomials in `ζ_n` reduced modulo the cyclotomic
//! polynomial `Φ_n`, which makes the coefficient vector canonical: two
//! elements are equal iff their reduced coefficients agree.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn mobius(mut n: usize) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact quotient of `a` by the monic polynomial `m`.
fn poly_div_monic(a: &[i128], m: &[i128]) -> Vec<i128> {
    let dm = m.len() - 1;
    let mut rem = a.to_vec();
    let mut quot = vec![0i128; a.len().saturating_sub(dm).max(1)];
    for top in (dm..a.len()).rev() {
        let c = rem[top];
        if c != 0 {
            quot[top - dm] = c;
            for (k, &mk) in m.iter().enumerate() {
                rem[top - dm + k] -= c * mk;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact division");
    quot
}

/// Coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: usize) -> Arc<Vec<i128>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<i128>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // Φ_n = Π_{d | n} (x^d - 1)^{μ(n/d)}
    let x_pow_minus_one = |d: usize| {
        let mut v = vec![0i128; d + 1];
        v[0] = -1;
        v[d] = 1;
        v
    };
    let mut num = vec![1i128];
    let mut dens = Vec::new();
    for d in divisors(n) {
        match mobius(n / d) {
            1 => num = poly_mul(&num, &x_pow_minus_one(d)),
            -1 => dens.push(x_pow_minus_one(d)),
            _ => {}
        }
    }
    for den in dens {
        num = poly_div_monic(&num, &den);
    }
    while num.len() > 1 && *num.last().unwrap() == 0 {
        num.pop();
    }
    let p = Arc::new(num);
    cache.lock().unwrap().insert(n, p.clone());
    p
}

/// An element of `Z[ζ_n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicInt {
    order: usize,
    /// Coefficients of `1, ζ, ζ², …` reduced modulo `Φ_n`; length `φ(n)`.
    coeffs: Vec<i128>,
}

impl CyclotomicInt {
    /// Builds `Σ_k weights[k] ζ^k` for `weights` of length `n`.
    pub fn from_root_weights(order: usize, weights: &[i128]) -> CyclotomicInt {
        assert!(order >= 1 && weights.len() == order);
        Self::reduce(order, weights.to_vec())
    }

    pub fn zero(order: usize) -> CyclotomicInt {
        Self::reduce(order, vec![0; order])
    }

    pub fn integer(order: usize, value: i128) -> CyclotomicInt {
        let mut w = vec![0; order];
        w[0] = value;
        Self::reduce(order, w)
    }

    /// `ζ_n^k`.
    pub fn root(order: usize, k: i64) -> CyclotomicInt {
        let mut w = vec![0; order];
        w[k.rem_euclid(order as i64) as usize] = 1;
        Self::reduce(order, w)
    }

    fn reduce(order: usize, mut poly: Vec<i128>) -> CyclotomicInt {
        // fold with ζ^n = 1 first, then divide by Φ_n
        if poly.len() > order {
            for k in order..poly.len() {
                poly[k % order] += poly[k];
            }
            poly.truncate(order);
        }
        let phi = cyclotomic_polynomial(order);
        let deg = phi.len() - 1;
        for top in (deg..poly.len()).rev() {
            let c = poly[top];
            if c != 0 {
                for (k, &pk) in phi.iter().enumerate() {
                    poly[top - deg + k] -= c * pk;
                }
            }
        }
        poly.resize(deg, 0);
        CyclotomicInt { order, coeffs: poly }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The integer value, if this element lies in `Z`.
    pub fn as_integer(&self) -> Option<i128> {
        match self.coeffs.split_first() {
            None => Some(0),
            Some((&c0, rest)) if rest.iter().all(|&c| c == 0) => Some(c0),
            _ => None,
        }
    }

    /// Re-expresses this element in `Z[ζ_m]` for a multiple `m` of the order.
    pub fn lift(&self, order: usize) -> CyclotomicInt {
        assert!(order.is_multiple_of(self.order), "{} is not a multiple of {}", order, self.order);
        let step = order / self.order;
        let mut w = vec![0; order];
        for (k, &c) in self.coeffs.iter().enumerate() {
            w[k * step] += c;
        }
        Self::reduce(order, w)
    }

    fn common(&self, other: &CyclotomicInt) -> (CyclotomicInt, CyclotomicInt) {
        let n = self.order.lcm(&other.order);
        (self.lift(n), other.lift(n))
    }

    pub fn add(&self, other: &CyclotomicInt) -> CyclotomicInt {
        let (a, b) = self.common(other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CyclotomicInt { order: a.order, coeffs }
    }

    pub fn sub(&self, other: &CyclotomicInt) -> CyclotomicInt {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i128) -> CyclotomicInt {
        CyclotomicInt {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn mul(&self, other: &CyclotomicInt) -> CyclotomicInt {
        let (a, b) = self.common(other);
        if a.coeffs.is_empty() {
            return a;
        }
        Self::reduce(a.order, poly_mul(&a.coeffs, &b.coeffs))
    }

    /// Complex conjugation `ζ ↦ ζ⁻¹`.
    pub fn conj(&self) -> CyclotomicInt {
        let n = self.order;
        let mut w = vec![0; n];
        for (k, &c) in self.coeffs.iter().enumerate() {
            w[(n - k) % n] += c;
        }
        Self::reduce(n, w)
    }

    /// `|z|²` as an element of the same ring.
    pub fn norm_sq(&self) -> CyclotomicInt {
        self.mul(&self.conj())
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.order as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (k, &c)| {
            let t = TAU * k as f64 / n;
            (re + c as f64 * t.cos(), im + c as f64 * t.sin())
        })
    }
}
