//! Witt classes of metric groups.
//!
//! A class is represented by its completely anisotropic Sylow parts, found
//! by repeatedly passing to `x^⊥/⟨x⟩` for isotropic `x`. Two classes agree
//! when their representatives are isometric prime by prime.

mod group;
mod iso;
mod word;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::abelian::Sublattice;
use crate::arith::Qz;
use crate::metric_group::{
    gauss_sum, subquotient, sylow_decompose, Element, MetricError, MetricGroup,
};

pub use group::{class_multiply, class_order, classes_of, generated_subgroup, Subgroup};
pub use iso::metric_iso;
pub use word::WittWord;

/// Order cap used by [`class_order`] when none is given.
pub const DEFAULT_ORDER_CAP: u32 = 32;
/// Closure cap used by [`generated_subgroup`] when none is given.
pub const DEFAULT_CLOSURE_CAP: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum WittError {
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error("class order exceeds cap {0}")]
    OrderExceedsCap(u32),
    #[error("generated subgroup exceeds cap {0}")]
    ClosureExceedsCap(usize),
    #[error("Ising exponent must be odd, got {0}")]
    EvenIsingExponent(i64),
    #[error("{0}")]
    NotAGroup(String),
}

/// Nonzero `x` with `q(x) = 0`, in lexicographic order.
pub fn isotropic_elements(mg: &MetricGroup, cap: u64) -> Result<Vec<Element>, MetricError> {
    mg.group().check_cap(cap)?;
    Ok(mg
        .group()
        .elements()
        .skip(1)
        .filter(|x| mg.form().value(x).is_zero())
        .collect())
}

/// One reduction `A ↦ x^⊥/⟨x⟩`.
#[derive(Clone, Debug)]
pub struct ReductionStep {
    pub prime: u64,
    pub from: MetricGroup,
    pub element: Element,
    pub to: MetricGroup,
}

/// `x^⊥/⟨x⟩` with its induced form.
///
/// Checks that the order drops by `|⟨x⟩|²`, that the result is
/// nondegenerate, and that `G(A) = |⟨x⟩| · G(x^⊥/⟨x⟩)` exactly.
pub fn reduce_once(mg: &MetricGroup, x: &[i64], cap: u64) -> Result<MetricGroup, MetricError> {
    if !mg.group().contains(x) {
        return Err(MetricError::ElementOutOfRange(x.to_vec()));
    }
    if x.iter().all(|&c| c == 0) {
        return Err(MetricError::ZeroElement);
    }
    if !mg.form().value(x).is_zero() {
        return Err(MetricError::NotIsotropic(x.to_vec()));
    }
    if !mg.is_nondegenerate() {
        return Err(MetricError::Degenerate);
    }
    let orders = mg.orders();
    let exp = mg.group().exponent();
    let k = mg.rank();
    let row: Vec<i64> = (0..k)
        .map(|j| {
            let mut e = vec![0; k];
            e[j] = 1;
            mg.form().bilinear(x, &e).numerator_over(exp)
        })
        .collect();
    let lattice = Sublattice::congruence(&row, exp);
    let mut relations: Vec<Vec<i64>> = (0..k)
        .map(|i| (0..k).map(|j| if i == j { orders[i] } else { 0 }).collect())
        .collect();
    relations.push(x.to_vec());
    let (out, _) = subquotient(orders, mg.form(), &lattice, &relations);

    let m = mg.group().element_order(x) as u64;
    if out.order() * m * m != mg.order() {
        return Err(MetricError::Invariant(format!(
            "{} reduced along {x:?} has order {}, expected {}",
            mg.describe(),
            out.order(),
            mg.order() / (m * m)
        )));
    }
    if !out.is_nondegenerate() {
        return Err(MetricError::Invariant(format!("{} is degenerate after reduction", out.describe())));
    }
    let before = gauss_sum(mg, cap)?;
    let after = gauss_sum(&out, cap)?;
    if !before.value.sub(&after.value.scale(m as i128)).is_zero() {
        return Err(MetricError::Invariant(format!(
            "Gauss sum of {} not preserved by reduction along {x:?}",
            mg.describe()
        )));
    }
    Ok(out)
}

/// Class in the pointed Witt group: one completely anisotropic
/// representative per prime, trivial parts omitted.
#[derive(Clone, Debug, Default)]
pub struct PointedWittClass {
    parts: BTreeMap<u64, MetricGroup>,
}

impl PointedWittClass {
    pub fn identity() -> PointedWittClass {
        PointedWittClass::default()
    }

    /// Builds a class from representatives, certifying each one.
    pub fn from_parts(parts: BTreeMap<u64, MetricGroup>, cap: u64) -> Result<PointedWittClass, WittError> {
        let mut out = PointedWittClass::identity();
        for (p, mg) in parts {
            let (rep, _) = anisotropic_part(p, &mg, cap, &mut |_| 0)?;
            if !rep.is_trivial() {
                out.parts.insert(p, rep);
            }
        }
        Ok(out)
    }

    pub fn parts(&self) -> &BTreeMap<u64, MetricGroup> {
        &self.parts
    }

    pub fn is_identity(&self) -> bool {
        self.parts.is_empty()
    }

    /// Negates every representative.
    pub fn inverse(&self) -> PointedWittClass {
        PointedWittClass {
            parts: self.parts.iter().map(|(&p, mg)| (p, mg.negated())).collect(),
        }
    }

    /// Class equality, decided by isometry of the representatives.
    pub fn same_class(&self, other: &PointedWittClass, cap: u64) -> Result<bool, MetricError> {
        if self.parts.keys().ne(other.parts.keys()) {
            return Ok(false);
        }
        for (p, a) in &self.parts {
            if !metric_iso(a, &other.parts[p], cap)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for PointedWittClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "identity");
        }
        let parts: Vec<String> = self.parts.iter().map(|(p, mg)| format!("{p}: {}", mg.describe())).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// A class together with the reductions that produced it.
#[derive(Clone, Debug)]
pub struct WittReduction {
    pub class: PointedWittClass,
    pub steps: Vec<ReductionStep>,
}

/// Reduces with the lexicographically smallest isotropic element at each
/// step.
pub fn pointed_witt_class(mg: &MetricGroup, cap: u64) -> Result<WittReduction, WittError> {
    pointed_witt_class_with(mg, cap, &mut |_| 0)
}

/// Reduces using `choose` to pick an index into the list of isotropic
/// elements at each step.
pub fn pointed_witt_class_with(
    mg: &MetricGroup,
    cap: u64,
    choose: &mut dyn FnMut(&[Element]) -> usize,
) -> Result<WittReduction, WittError> {
    if !mg.is_nondegenerate() {
        return Err(MetricError::Degenerate.into());
    }
    mg.group().check_cap(cap)?;
    let mut class = PointedWittClass::identity();
    let mut steps = Vec::new();
    for (p, part) in sylow_decompose(mg) {
        let (rep, mut trace) = anisotropic_part(p, &part, cap, choose)?;
        steps.append(&mut trace);
        if !rep.is_trivial() {
            class.parts.insert(p, rep);
        }
    }
    Ok(WittReduction { class, steps })
}

/// Reduces a metric `p`-group to a completely anisotropic one and checks
/// that the Gauss sum survives up to the expected positive factor.
pub(crate) fn anisotropic_part(
    p: u64,
    mg: &MetricGroup,
    cap: u64,
    choose: &mut dyn FnMut(&[Element]) -> usize,
) -> Result<(MetricGroup, Vec<ReductionStep>), WittError> {
    let start = gauss_sum(mg, cap)?;
    let mut current = mg.clone();
    let mut steps = Vec::new();
    loop {
        let iso = isotropic_elements(&current, cap)?;
        if iso.is_empty() {
            break;
        }
        let x = iso[choose(&iso) % iso.len()].clone();
        let next = reduce_once(&current, &x, cap)?;
        steps.push(ReductionStep { prime: p, from: current, element: x, to: next.clone() });
        current = next;
    }
    let end = gauss_sum(&current, cap)?;
    if start.eighth != end.eighth {
        return Err(MetricError::Invariant(format!(
            "Gauss phase of {} changed from {:?} to {:?}",
            mg.describe(),
            start.eighth,
            end.eighth
        ))
        .into());
    }
    if p % 2 == 1 && ![1, p, p * p].contains(&current.order()) {
        return Err(MetricError::Invariant(format!(
            "anisotropic {p}-group {} has order {}, outside {{1, {p}, {}}}",
            current.describe(),
            current.order(),
            p * p
        ))
        .into());
    }
    Ok((current, steps))
}

/// Every rank-one form on `Z_d` that is nondegenerate, as `(Z_d, a/(2d))`
/// or `(Z_d, a/d)` for odd `d`.
pub fn cyclic_forms(d: i64) -> Vec<MetricGroup> {
    let den = if d % 2 == 0 { 2 * d } else { d };
    (1..den)
        .map(|a| MetricGroup::cyclic(d, Qz::new(a, den)))
        .filter(|mg| mg.is_nondegenerate())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric_group::DEFAULT_ELEMENT_CAP as CAP;

    fn qz(n: i64, d: i64) -> Qz {
        Qz::new(n, d)
    }

    fn hyperbolic3() -> MetricGroup {
        MetricGroup::from_parts(vec![3, 3], vec![Qz::ZERO, Qz::ZERO], vec![(0, 1, qz(1, 3))])
    }

    #[test]
    fn isotropic_examples() {
        let iso = isotropic_elements(&hyperbolic3(), CAP).unwrap();
        assert!(iso.contains(&vec![1, 0]) && iso.contains(&vec![0, 1]));
        assert!(isotropic_elements(&MetricGroup::cyclic(2, qz(1, 4)), CAP).unwrap().is_empty());
        assert!(isotropic_elements(&MetricGroup::cyclic(3, qz(1, 3)), CAP).unwrap().is_empty());
    }

    #[test]
    fn reduce_examples() {
        assert!(reduce_once(&hyperbolic3(), &[1, 0], CAP).unwrap().is_trivial());
        let diff = MetricGroup::from_parts(vec![3, 3], vec![qz(1, 3), qz(2, 3)], vec![]);
        assert!(reduce_once(&diff, &[1, 1], CAP).unwrap().is_trivial());
        let four = MetricGroup::from_parts(vec![2; 4], vec![qz(1, 4); 4], vec![]);
        let r = reduce_once(&four, &[1, 1, 1, 1], CAP).unwrap();
        assert_eq!(r.order(), 4);
        assert!(r.is_nondegenerate());
    }

    #[test]
    fn reduce_rejects_bad_elements() {
        let s = MetricGroup::cyclic(2, qz(1, 4));
        assert_eq!(reduce_once(&s, &[1], CAP), Err(MetricError::NotIsotropic(vec![1])));
        assert_eq!(reduce_once(&hyperbolic3(), &[0, 0], CAP), Err(MetricError::ZeroElement));
        assert!(matches!(reduce_once(&s, &[2], CAP), Err(MetricError::ElementOutOfRange(_))));
    }

    #[test]
    fn reduction_of_a_non_cyclic_order_element() {
        // Z_4 x Z_4 with q = xy/4: (2,0) has q = 0 but order 2
        let h = MetricGroup::from_parts(vec![4, 4], vec![Qz::ZERO, Qz::ZERO], vec![(0, 1, qz(1, 4))]);
        let r = reduce_once(&h, &[2, 0], CAP).unwrap();
        assert_eq!(r.order(), 4);
    }

    #[test]
    fn class_examples() {
        assert!(pointed_witt_class(&hyperbolic3(), CAP).unwrap().class.is_identity());
        let s = MetricGroup::cyclic(2, qz(1, 4));
        let c = pointed_witt_class(&s, CAP).unwrap().class;
        assert_eq!(c.parts().len(), 1);
        assert_eq!(c.parts()[&2], s);
        let z6 = pointed_witt_class(&MetricGroup::cyclic(6, qz(7, 12)), CAP).unwrap().class;
        assert_eq!(z6.parts()[&2], MetricGroup::cyclic(2, qz(1, 4)));
        assert_eq!(z6.parts()[&3], MetricGroup::cyclic(3, qz(1, 3)));
    }

    #[test]
    fn degenerate_input_is_rejected() {
        let d = MetricGroup::cyclic(2, qz(1, 2));
        assert_eq!(pointed_witt_class(&d, CAP).unwrap_err(), WittError::Metric(MetricError::Degenerate));
    }

    #[test]
    fn cyclic_forms_counts() {
        assert_eq!(cyclic_forms(3).len(), 2);
        assert_eq!(cyclic_forms(2).len(), 2);
        assert_eq!(cyclic_forms(4).len(), 4);
        assert_eq!(cyclic_forms(8).len(), 8);
    }
}
