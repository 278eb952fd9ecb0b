use rayon::prelude::*;

use super::{anisotropic_part, PointedWittClass, WittError};
use crate::abelian::{check_abelian_group, group_name, invariant_factors};
use crate::metric_group::{direct_sum, MetricGroup};

/// Orthogonal sum prime by prime, reduced back to anisotropic form.
pub fn class_multiply(a: &PointedWittClass, b: &PointedWittClass, cap: u64) -> Result<PointedWittClass, WittError> {
    let mut out = PointedWittClass::identity();
    let primes: std::collections::BTreeSet<u64> = a.parts.keys().chain(b.parts.keys()).copied().collect();
    for p in primes {
        let sum = match (a.parts.get(&p), b.parts.get(&p)) {
            (Some(x), Some(y)) => direct_sum(x, y),
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => unreachable!(),
        };
        let (rep, _) = anisotropic_part(p, &sum, cap, &mut |_| 0)?;
        if !rep.is_trivial() {
            out.parts.insert(p, rep);
        }
    }
    Ok(out)
}

/// Least `n ≥ 1` with `cⁿ` the identity, searched up to `order_cap`.
pub fn class_order(c: &PointedWittClass, order_cap: u32, cap: u64) -> Result<u32, WittError> {
    let mut power = c.clone();
    for n in 1..=order_cap {
        if power.is_identity() {
            return Ok(n);
        }
        power = class_multiply(&power, c, cap)?;
    }
    Err(WittError::OrderExceedsCap(order_cap))
}

/// A finite subgroup of the pointed Witt group with its Cayley table.
#[derive(Clone, Debug)]
pub struct Subgroup {
    /// `elements[0]` is the identity.
    pub elements: Vec<PointedWittClass>,
    pub table: Vec<Vec<usize>>,
    pub invariant_factors: Vec<u64>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }

    pub fn name(&self) -> String {
        group_name(&self.invariant_factors)
    }
}

fn position(elements: &[PointedWittClass], c: &PointedWittClass, cap: u64) -> Result<Option<usize>, WittError> {
    for (i, e) in elements.iter().enumerate() {
        if e.same_class(c, cap)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Closure of `gens` under multiplication, with the full table checked to
/// be an abelian group.
pub fn generated_subgroup(gens: &[PointedWittClass], closure_cap: usize, cap: u64) -> Result<Subgroup, WittError> {
    let mut elements = vec![PointedWittClass::identity()];
    let mut frontier = 0;
    while frontier < elements.len() {
        let x = elements[frontier].clone();
        for g in gens {
            let y = class_multiply(&x, g, cap)?;
            if position(&elements, &y, cap)?.is_none() {
                if elements.len() == closure_cap {
                    return Err(WittError::ClosureExceedsCap(closure_cap));
                }
                elements.push(y);
            }
        }
        frontier += 1;
    }
    let n = elements.len();
    let table: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    let y = class_multiply(&elements[i], &elements[j], cap)?;
                    position(&elements, &y, cap)?
                        .ok_or_else(|| WittError::NotAGroup(format!("product {i}·{j} left the closure")))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    check_abelian_group(&table).map_err(WittError::NotAGroup)?;
    let invariant_factors = invariant_factors(&table, 0);
    Ok(Subgroup { elements, table, invariant_factors })
}

/// Classes of the given metric groups, for feeding [`generated_subgroup`].
pub fn classes_of(groups: &[MetricGroup], cap: u64) -> Result<Vec<PointedWittClass>, WittError> {
    groups.iter().map(|mg| Ok(super::pointed_witt_class(mg, cap)?.class)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Qz;
    use crate::metric_group::DEFAULT_ELEMENT_CAP as CAP;
    use crate::witt::{cyclic_forms, metric_iso, pointed_witt_class, DEFAULT_CLOSURE_CAP, DEFAULT_ORDER_CAP};

    fn class(d: i64, a: i64, b: i64) -> PointedWittClass {
        pointed_witt_class(&MetricGroup::cyclic(d, Qz::new(a, b)), CAP).unwrap().class
    }

    #[test]
    fn multiply_examples() {
        assert!(class_multiply(&class(3, 1, 3), &class(3, 2, 3), CAP).unwrap().is_identity());
        let c = class(5, 2, 5);
        let e = class_multiply(&PointedWittClass::identity(), &c, CAP).unwrap();
        assert!(e.same_class(&c, CAP).unwrap());
        let sq = class_multiply(&class(2, 1, 4), &class(2, 1, 4), CAP).unwrap();
        let expect = MetricGroup::from_parts(vec![2, 2], vec![Qz::new(1, 4), Qz::new(1, 4)], vec![]);
        assert!(metric_iso(&sq.parts()[&2], &expect, CAP).unwrap());
    }

    #[test]
    fn inverse_cancels() {
        for c in [class(2, 1, 4), class(4, 3, 8), class(3, 1, 3), class(7, 1, 7)] {
            assert!(class_multiply(&c, &c.inverse(), CAP).unwrap().is_identity());
        }
    }

    #[test]
    fn order_examples() {
        assert_eq!(class_order(&class(3, 1, 3), DEFAULT_ORDER_CAP, CAP), Ok(4));
        assert_eq!(class_order(&class(5, 1, 5), DEFAULT_ORDER_CAP, CAP), Ok(2));
        assert_eq!(class_order(&PointedWittClass::identity(), DEFAULT_ORDER_CAP, CAP), Ok(1));
        assert_eq!(class_order(&class(2, 1, 4), DEFAULT_ORDER_CAP, CAP), Ok(8));
        assert_eq!(class_order(&class(3, 1, 3), 3, CAP), Err(WittError::OrderExceedsCap(3)));
    }

    #[test]
    fn odd_prime_subgroups() {
        let three = classes_of(&cyclic_forms(3), CAP).unwrap();
        let g = generated_subgroup(&three, DEFAULT_CLOSURE_CAP, CAP).unwrap();
        assert_eq!((g.order(), g.invariant_factors.clone()), (4, vec![4]));
        let five = classes_of(&cyclic_forms(5), CAP).unwrap();
        let g = generated_subgroup(&five, DEFAULT_CLOSURE_CAP, CAP).unwrap();
        assert_eq!((g.order(), g.invariant_factors.clone()), (4, vec![2, 2]));
    }

    #[test]
    fn two_primary_subgroup_from_small_cyclic_forms() {
        let mut groups = cyclic_forms(2);
        groups.extend(cyclic_forms(4));
        groups.extend(cyclic_forms(8));
        let g = generated_subgroup(&classes_of(&groups, CAP).unwrap(), DEFAULT_CLOSURE_CAP, CAP).unwrap();
        assert_eq!((g.order(), g.invariant_factors.clone()), (16, vec![2, 8]));
    }

    #[test]
    fn closure_cap_is_reported() {
        let three = classes_of(&cyclic_forms(3), CAP).unwrap();
        assert_eq!(generated_subgroup(&three, 3, CAP).unwrap_err(), WittError::ClosureExceedsCap(3));
    }
}
