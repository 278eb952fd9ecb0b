use super::{MetricError, MetricGroup};
use crate::cyclotomic::CyclotomicInt;
use num_integer::Integer;

/// Exact Gauss sum `Σ_x e^{2πi q(x)}` with its decoded magnitude and phase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussSum {
    pub value: CyclotomicInt,
    /// `|G|²` when it is a rational integer.
    pub magnitude_sq: Option<u64>,
    /// `k` with `arg G = 2πk/8`, when `G/|G|` is an eighth root of unity.
    pub eighth: Option<u8>,
}

impl GaussSum {
    /// Whether the phase was decided exactly as an eighth root of unity.
    pub fn exact(&self) -> bool {
        self.eighth.is_some()
    }

    /// `G · H`, with magnitude and phase re-decoded.
    pub fn mul(&self, other: &GaussSum) -> GaussSum {
        decode(self.value.mul(&other.value))
    }

    pub fn conj(&self) -> GaussSum {
        decode(self.value.conj())
    }

    /// Same value and phase, compared in a common cyclotomic ring.
    pub fn same_value(&self, other: &GaussSum) -> bool {
        self.value.sub(&other.value).is_zero()
    }
}

fn decode(value: CyclotomicInt) -> GaussSum {
    let n = value.order().lcm(&8);
    let value = value.lift(n);
    let magnitude_sq = value
        .norm_sq()
        .as_integer()
        .and_then(|m| u64::try_from(m).ok());
    let eighth = magnitude_sq.filter(|&m| m > 0).and_then(|m| {
        (0..8u8).find(|&k| {
            // G ζ_8^{-k} must be the positive real number √m
            let h = value.mul(&CyclotomicInt::root(n, -(k as i64) * (n as i64 / 8)));
            h == h.conj() && h.mul(&h).as_integer() == Some(m as i128) && h.to_complex().0 > 0.0
        })
    });
    GaussSum { value, magnitude_sq, eighth }
}

/// Computes the Gauss sum exactly over `Z[ζ_N]` where `N` is the common
/// denominator of the form (and a multiple of 8). For nondegenerate forms
/// it checks `|G|² = |A|` and that the phase is an eighth root of unity.
pub fn gauss_sum(mg: &MetricGroup, cap: u64) -> Result<GaussSum, MetricError> {
    mg.group().check_cap(cap)?;
    let n = mg.form().denominator().lcm(&8);
    let mut weights = vec![0i128; n as usize];
    for x in mg.group().elements() {
        let q = mg.form().value(&x);
        weights[q.numerator_over(n) as usize] += 1;
    }
    let g = decode(CyclotomicInt::from_root_weights(n as usize, &weights));
    if mg.is_nondegenerate() {
        if g.magnitude_sq != Some(mg.order()) {
            return Err(MetricError::Milgram(format!(
                "{}: |G|² = {:?}, expected {}",
                mg.describe(),
                g.magnitude_sq,
                mg.order()
            )));
        }
        if g.eighth.is_none() {
            return Err(MetricError::Milgram(format!("{}: phase is not an eighth root of unity", mg.describe())));
        }
    }
    Ok(g)
}
