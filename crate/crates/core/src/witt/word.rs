use std::fmt;

use super::{class_multiply, PointedWittClass, WittError};

/// A formal product `c · [I]^m` of a pointed class and a power of the
/// Ising generator, with `m` taken mod 16.
///
/// Pointed and Ising parts are kept independent, so equality of words is
/// sufficient for equality of Witt classes but may not be necessary.
#[derive(Clone, Debug, Default)]
pub struct WittWord {
    pub pointed: PointedWittClass,
    ising_exponent: u8,
}

impl WittWord {
    pub fn identity() -> WittWord {
        WittWord::default()
    }

    pub fn pointed(class: PointedWittClass) -> WittWord {
        WittWord { pointed: class, ising_exponent: 0 }
    }

    /// The generator `[I]`.
    pub fn ising_generator() -> WittWord {
        WittWord { pointed: PointedWittClass::identity(), ising_exponent: 1 }
    }

    /// The class of an Ising braided category, `[I]^m` for odd `m`.
    pub fn ising_category(m: i64) -> Result<WittWord, WittError> {
        if m.rem_euclid(2) == 0 {
            return Err(WittError::EvenIsingExponent(m));
        }
        Ok(WittWord { pointed: PointedWittClass::identity(), ising_exponent: m.rem_euclid(16) as u8 })
    }

    pub fn ising_exponent(&self) -> u8 {
        self.ising_exponent
    }

    pub fn is_identity(&self) -> bool {
        self.ising_exponent == 0 && self.pointed.is_identity()
    }

    pub fn compose(&self, other: &WittWord, cap: u64) -> Result<WittWord, WittError> {
        Ok(WittWord {
            pointed: class_multiply(&self.pointed, &other.pointed, cap)?,
            ising_exponent: (self.ising_exponent + other.ising_exponent) % 16,
        })
    }

    pub fn inverse(&self) -> WittWord {
        WittWord {
            pointed: self.pointed.inverse(),
            ising_exponent: (16 - self.ising_exponent) % 16,
        }
    }

    /// Least `n ≥ 1` with the `n`-th power the identity word.
    pub fn order(&self, order_cap: u32, cap: u64) -> Result<u32, WittError> {
        let mut power = self.clone();
        for n in 1..=order_cap {
            if power.is_identity() {
                return Ok(n);
            }
            power = power.compose(self, cap)?;
        }
        Err(WittError::OrderExceedsCap(order_cap))
    }

    /// Formal equality: same Ising exponent and same pointed class.
    pub fn formally_equal(&self, other: &WittWord, cap: u64) -> Result<bool, WittError> {
        Ok(self.ising_exponent == other.ising_exponent && self.pointed.same_class(&other.pointed, cap)?)
    }
}

impl fmt::Display for WittWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] · [I]^{}", self.pointed, self.ising_exponent)
    }
}
