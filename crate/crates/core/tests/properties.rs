use std::collections::BTreeSet;

use fusionkit::arith::{is_square_free, Qz};
use fusionkit::classifier::{factor_pac, factor_paqbc, scan_exceptions, DEFAULT_SCAN_CAP};
use fusionkit::corpus;
use fusionkit::fusion_ring::{fp_dim_data, subring_generated, universal_grading, DEFAULT_TOLERANCE};
use fusionkit::metric_group::{direct_sum, gauss_sum, inverse_form, sylow_decompose, MetricGroup};
use fusionkit::witt::{
    class_multiply, cyclic_forms, isotropic_elements, metric_iso, pointed_witt_class, PointedWittClass,
};
use proptest::prelude::*;

const CAP: u64 = 1 << 16;

fn cyclic_pool() -> Vec<MetricGroup> {
    [2, 3, 4, 5, 7, 8, 9].iter().flat_map(|&d| cyclic_forms(d)).collect()
}

/// Orthogonal sums of one to three nondegenerate cyclic forms.
fn metric_group() -> impl Strategy<Value = MetricGroup> {
    let pool = cyclic_pool();
    prop::collection::vec(0..pool.len(), 1..=3).prop_map(move |idx| {
        idx.iter().fold(MetricGroup::trivial(), |acc, &i| direct_sum(&acc, &pool[i]))
    })
}

fn class() -> impl Strategy<Value = PointedWittClass> {
    metric_group().prop_map(|mg| pointed_witt_class(&mg, CAP).unwrap().class)
}

fn element(mg: &MetricGroup, seed: u64) -> Vec<i64> {
    mg.group().element_at(seed % mg.order())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quadratic_law(mg in metric_group(), s in any::<u64>(), t in any::<u64>(), u in any::<u64>(), n in -20i64..20) {
        let g = mg.group();
        let (x, y, z) = (element(&mg, s), element(&mg, t), element(&mg, u));
        let q = |v: &[i64]| mg.evaluate(v).unwrap();
        let b = |v: &[i64], w: &[i64]| mg.bilinear(v, w).unwrap();
        prop_assert_eq!(q(&g.scale(n, &x)), q(&x).scale(n * n));
        prop_assert_eq!(q(&g.add(&x, &y)), q(&x) + q(&y) + b(&x, &y));
        prop_assert_eq!(b(&g.add(&x, &y), &z), b(&x, &z) + b(&y, &z));
        prop_assert_eq!(b(&x, &y), b(&y, &x));
    }

    #[test]
    fn gauss_sum_is_multiplicative_and_conjugates(a in metric_group(), b in metric_group()) {
        prop_assume!(a.order() * b.order() <= CAP);
        let ga = gauss_sum(&a, CAP).unwrap();
        let gb = gauss_sum(&b, CAP).unwrap();
        let gab = gauss_sum(&direct_sum(&a, &b), CAP).unwrap();
        prop_assert!(gab.same_value(&ga.mul(&gb)));
        prop_assert!(gauss_sum(&inverse_form(&a), CAP).unwrap().same_value(&ga.conj()));
        prop_assert_eq!(ga.magnitude_sq, Some(a.order()));
    }

    #[test]
    fn sylow_parts_sum_back(mg in metric_group()) {
        let parts = sylow_decompose(&mg);
        let sum = parts.values().fold(MetricGroup::trivial(), |acc, p| direct_sum(&acc, p));
        prop_assert!(metric_iso(&sum, &mg, CAP).unwrap());
        for (p, part) in &parts {
            prop_assert_eq!(fusionkit::arith::prime_power(part.order()).map(|(q, _)| q), Some(*p));
        }
    }

    #[test]
    fn representatives_are_anisotropic(mg in metric_group()) {
        let red = pointed_witt_class(&mg, CAP).unwrap();
        for (p, rep) in red.class.parts() {
            prop_assert!(isotropic_elements(rep, CAP).unwrap().is_empty());
            prop_assert!(rep.is_nondegenerate());
            if p % 2 == 1 {
                prop_assert!([*p, p * p].contains(&rep.order()));
            }
        }
        for s in &red.steps {
            prop_assert!(s.to.order() < s.from.order());
        }
    }

    #[test]
    fn class_group_laws(a in class(), b in class(), c in class()) {
        let m = |x: &PointedWittClass, y: &PointedWittClass| class_multiply(x, y, CAP).unwrap();
        prop_assert!(m(&a, &b).same_class(&m(&b, &a), CAP).unwrap());
        prop_assert!(m(&m(&a, &b), &c).same_class(&m(&a, &m(&b, &c)), CAP).unwrap());
        prop_assert!(m(&a, &PointedWittClass::identity()).same_class(&a, CAP).unwrap());
        prop_assert!(m(&a, &a.inverse()).is_identity());
    }

    #[test]
    fn factorizations_recompose(n in 1u64..2_000_000) {
        if let Some(f) = factor_paqbc(n) {
            prop_assert!(f.verifies(n));
        }
        if let Some(f) = factor_pac(n) {
            prop_assert!(f.verifies(n));
            prop_assert!(f.q.is_none());
            prop_assert!(factor_paqbc(n).is_some());
        }
        if is_square_free(n) {
            prop_assert_eq!(factor_pac(n).map(|f| (f.p, f.a, f.c)), Some((None, 0, n)));
        }
    }

    #[test]
    fn scans_are_monotone(a in 1u64..40_000, b in 1u64..40_000, odd in any::<bool>()) {
        let (lo, hi) = (a.min(b), a.max(b));
        let small = scan_exceptions(lo, odd, DEFAULT_SCAN_CAP).unwrap().exceptions;
        let large: BTreeSet<u64> = scan_exceptions(hi, odd, DEFAULT_SCAN_CAP).unwrap().exceptions.into_iter().collect();
        prop_assert!(small.iter().all(|n| large.contains(n)));
    }

    #[test]
    fn subring_generation_is_a_closure_operator(r in 0..corpus::RINGS.len(), s in any::<u32>(), t in any::<u32>()) {
        let (_, ring) = &corpus::rings()[r];
        let set = |bits: u32| -> BTreeSet<usize> { (0..ring.rank()).filter(|i| bits >> i & 1 == 1).collect() };
        let (a, b) = (set(s), set(s | t));
        let ca = subring_generated(ring, &a);
        prop_assert!(a.is_subset(&ca.members));
        prop_assert_eq!(&subring_generated(ring, &ca.members), &ca);
        prop_assert!(ca.members.is_subset(&subring_generated(ring, &b).members));
    }
}

#[test]
fn grading_is_a_ring_homomorphism() {
    for (name, ring) in corpus::rings() {
        let g = universal_grading(&ring).unwrap();
        for x in 0..ring.rank() {
            for y in 0..ring.rank() {
                let expected = g.table[g.block_of(x)][g.block_of(y)];
                for (k, _) in ring.product(x, y) {
                    assert_eq!(g.block_of(k), expected, "{name}: {x}⊗{y} ∋ {k}");
                }
            }
        }
    }
}

#[test]
fn fp_dims_are_characters() {
    for (name, ring) in corpus::rings() {
        let d = fp_dim_data(&ring, DEFAULT_TOLERANCE).unwrap().dims;
        for i in 0..ring.rank() {
            for j in 0..ring.rank() {
                let rhs: f64 = ring.product(i, j).map(|(k, m)| m as f64 * d[k]).sum();
                assert!((d[i] * d[j] - rhs).abs() < 1e-9, "{name}: d{i} d{j}");
            }
        }
    }
}

#[test]
fn anisotropic_semion_square() {
    let s = MetricGroup::cyclic(2, Qz::new(1, 4));
    assert!(isotropic_elements(&direct_sum(&s, &s), CAP).unwrap().is_empty());
}
