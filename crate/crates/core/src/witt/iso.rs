use std::collections::HashSet;

use crate::arith::Qz;
use crate::metric_group::{Element, MetricError, MetricGroup};

/// Whether some group isomorphism carries `q_a` to `q_b`.
///
/// Searches generator images with matching order and `q`, pruning on the
/// bilinear values with earlier generators.
pub fn metric_iso(a: &MetricGroup, b: &MetricGroup, cap: u64) -> Result<bool, MetricError> {
    a.group().check_cap(cap)?;
    b.group().check_cap(cap)?;
    if a.orders() != b.orders() {
        return Ok(false);
    }
    if a == b {
        return Ok(true);
    }
    let k = a.rank();
    let pool: Vec<(Element, Qz, i64)> = b
        .group()
        .elements()
        .map(|y| {
            let q = b.form().value(&y);
            let o = b.group().element_order(&y);
            (y, q, o)
        })
        .collect();
    let candidates: Vec<Vec<&Element>> = (0..k)
        .map(|i| {
            let mut e = a.group().zero();
            e[i] = 1;
            let qa = a.form().value(&e);
            pool.iter()
                .filter(|(_, q, o)| *o == a.orders()[i] && *q == qa)
                .map(|(y, _, _)| y)
                .collect()
        })
        .collect();
    let mut images: Vec<&Element> = Vec::with_capacity(k);
    Ok(search(a, b, &candidates, &mut images))
}

fn search<'a>(a: &MetricGroup, b: &MetricGroup, candidates: &[Vec<&'a Element>], images: &mut Vec<&'a Element>) -> bool {
    let i = images.len();
    if i == candidates.len() {
        return a.is_nondegenerate() || is_injective(a, b, images);
    }
    for &y in &candidates[i] {
        let fits = (0..i).all(|j| b.form().bilinear(images[j], y) == a.form().cross(j, i));
        if fits {
            images.push(y);
            if search(a, b, candidates, images) {
                return true;
            }
            images.pop();
        }
    }
    false
}

/// With a nondegenerate source, preserving `b` already forces injectivity.
fn is_injective(a: &MetricGroup, b: &MetricGroup, images: &[&Element]) -> bool {
    let mut seen = HashSet::new();
    a.group().elements().all(|x| {
        let mut y = b.group().zero();
        for (c, img) in x.iter().zip(images) {
            y = b.group().add(&y, &b.group().scale(*c, img));
        }
        seen.insert(y)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric_group::DEFAULT_ELEMENT_CAP as CAP;

    fn qz(n: i64, d: i64) -> Qz {
        Qz::new(n, d)
    }

    #[test]
    fn iso_examples() {
        let s = MetricGroup::cyclic(2, qz(1, 4));
        assert!(!metric_iso(&s, &MetricGroup::cyclic(2, qz(3, 4)), CAP).unwrap());
        assert!(metric_iso(&s, &s, CAP).unwrap());
        assert!(metric_iso(&MetricGroup::cyclic(3, qz(1, 3)), &MetricGroup::cyclic(3, qz(4, 3)), CAP).unwrap());
    }

    #[test]
    fn iso_finds_nontrivial_maps() {
        // 4·1/3 = 1/3 and q(2) = 4/5 vs 1/5: x ↦ 2x identifies 1/5 with 4/5
        assert!(metric_iso(&MetricGroup::cyclic(5, qz(1, 5)), &MetricGroup::cyclic(5, qz(4, 5)), CAP).unwrap());
        assert!(!metric_iso(&MetricGroup::cyclic(5, qz(1, 5)), &MetricGroup::cyclic(5, qz(2, 5)), CAP).unwrap());
        // (x² + y²)/3 ≅ (2x² + 2y²)/3 since -1 is a sum of two squares mod 3
        let a = MetricGroup::from_parts(vec![3, 3], vec![qz(1, 3), qz(1, 3)], vec![]);
        let b = MetricGroup::from_parts(vec![3, 3], vec![qz(2, 3), qz(2, 3)], vec![]);
        assert!(metric_iso(&a, &b, CAP).unwrap());
        // xy/2 and (x² + xy + y²)/2 on Z_2²
        let h = MetricGroup::from_parts(vec![2, 2], vec![Qz::ZERO, Qz::ZERO], vec![(0, 1, qz(1, 2))]);
        let e = MetricGroup::from_parts(vec![2, 2], vec![qz(1, 2), qz(1, 2)], vec![(0, 1, qz(1, 2))]);
        assert!(!metric_iso(&h, &e, CAP).unwrap());
    }

    #[test]
    fn degenerate_forms_need_bijections() {
        // both forms vanish identically; every map preserves q, only bijections count
        let z = MetricGroup::from_parts(vec![2, 2], vec![Qz::ZERO, Qz::ZERO], vec![]);
        assert!(metric_iso(&z, &z.clone(), CAP).unwrap());
        let a = MetricGroup::from_parts(vec![2, 2], vec![qz(1, 2), Qz::ZERO], vec![]);
        let b = MetricGroup::from_parts(vec![2, 2], vec![qz(1, 2), qz(1, 2)], vec![]);
        assert!(metric_iso(&a, &b, CAP).unwrap());
    }
}
