//! Example rings and metric groups shipped with the library.

use crate::fusion_ring::{parse_ring, FusionRing};
use crate::metric_group::{parse_metric, MetricGroup};

/// Fusion-ring files by name.
pub const RINGS: &[(&str, &str)] = &[
    ("fibonacci.fr", include_str!("../corpus/fibonacci.fr")),
    ("ising.fr", include_str!("../corpus/ising.fr")),
    ("rank1.fr", include_str!("../corpus/rank1.fr")),
    ("rep_a4.fr", include_str!("../corpus/rep_a4.fr")),
    ("rep_s3.fr", include_str!("../corpus/rep_s3.fr")),
    ("z2.fr", include_str!("../corpus/z2.fr")),
    ("z2xz2.fr", include_str!("../corpus/z2xz2.fr")),
    ("z3.fr", include_str!("../corpus/z3.fr")),
    ("z4.fr", include_str!("../corpus/z4.fr")),
    ("z6.fr", include_str!("../corpus/z6.fr")),
];

/// Metric-group files by name.
pub const METRIC_GROUPS: &[(&str, &str)] = &[
    ("antisemion.mg", include_str!("../corpus/antisemion.mg")),
    ("hyperbolic3.mg", include_str!("../corpus/hyperbolic3.mg")),
    ("semion.mg", include_str!("../corpus/semion.mg")),
    ("semion_antisemion.mg", include_str!("../corpus/semion_antisemion.mg")),
    ("semion_squared.mg", include_str!("../corpus/semion_squared.mg")),
    ("three_fermion.mg", include_str!("../corpus/three_fermion.mg")),
    ("toric_code.mg", include_str!("../corpus/toric_code.mg")),
    ("z2_z4.mg", include_str!("../corpus/z2_z4.mg")),
    ("z3_1.mg", include_str!("../corpus/z3_1.mg")),
    ("z3_2.mg", include_str!("../corpus/z3_2.mg")),
    ("z4_1.mg", include_str!("../corpus/z4_1.mg")),
    ("z4_3.mg", include_str!("../corpus/z4_3.mg")),
    ("z4_5.mg", include_str!("../corpus/z4_5.mg")),
    ("z4_7.mg", include_str!("../corpus/z4_7.mg")),
    ("z5_1.mg", include_str!("../corpus/z5_1.mg")),
    ("z5_2.mg", include_str!("../corpus/z5_2.mg")),
    ("z8_1.mg", include_str!("../corpus/z8_1.mg")),
    ("z8_3.mg", include_str!("../corpus/z8_3.mg")),
    ("z8_5.mg", include_str!("../corpus/z8_5.mg")),
    ("z8_7.mg", include_str!("../corpus/z8_7.mg")),
];

/// Text of a bundled file, by name with or without its extension.
pub fn lookup(name: &str) -> Option<&'static str> {
    RINGS
        .iter()
        .chain(METRIC_GROUPS)
        .find(|(file, _)| *file == name || file.rsplit_once('.').map(|(stem, _)| stem) == Some(name))
        .map(|(_, text)| *text)
}

/// Every bundled ring, parsed and validated.
pub fn rings() -> Vec<(&'static str, FusionRing)> {
    RINGS
        .iter()
        .map(|(name, text)| {
            let raw = parse_ring(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            (*name, FusionRing::new(raw).unwrap_or_else(|e| panic!("{name}: {e:?}")))
        })
        .collect()
}

/// Every bundled metric group, parsed and validated.
pub fn metric_groups() -> Vec<(&'static str, MetricGroup)> {
    METRIC_GROUPS
        .iter()
        .map(|(name, text)| {
            let raw = parse_metric(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            (*name, MetricGroup::new(&raw).unwrap_or_else(|e| panic!("{name}: {e:?}")))
        })
        .collect()
}

pub fn ring(name: &str) -> Option<FusionRing> {
    rings().into_iter().find(|(n, _)| n.strip_suffix(".fr") == Some(name) || *n == name).map(|(_, r)| r)
}

pub fn metric_group(name: &str) -> Option<MetricGroup> {
    metric_groups()
        .into_iter()
        .find(|(n, _)| n.strip_suffix(".mg") == Some(name) || *n == name)
        .map(|(_, m)| m)
}
