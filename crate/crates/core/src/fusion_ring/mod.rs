//! Fusion rings: based rings with nonnegative integer structure constants
//! `N_{ij}^k`, a unit, and a duality involution.

mod fpdim;
mod structure;

use std::collections::HashSet;
use std::fmt;

use crate::error::{content_lines, syntax, SyntaxError};

pub use fpdim::{fp_dim_data, FpDimData, FpDimError, DEFAULT_TOLERANCE};
pub use structure::{
    adjoint_subring, invertibles, nilpotency, simple_dims_prime_power, stabilizer, subring_generated,
    tensor_square_check, universal_grading, GradingData, GradingError, InvertibleGroup, Nilpotency,
    PrimePowerDims, Subring, TensorSquare,
};

/// Unvalidated fusion data, as read from a file or assembled by hand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingCandidate {
    pub rank: usize,
    pub labels: Vec<String>,
    pub dual: Vec<i64>,
    /// Flattened `coeff[i][j][k]` at index `(i * rank + j) * rank + k`.
    pub coeff: Vec<i64>,
}

impl RingCandidate {
    /// An all-zero candidate of the given rank with labels `0..rank`.
    pub fn zeros(rank: usize) -> RingCandidate {
        RingCandidate {
            rank,
            labels: (0..rank).map(|i| i.to_string()).collect(),
            dual: (0..rank as i64).collect(),
            coeff: vec![0; rank * rank * rank],
        }
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, m: i64) {
        let r = self.rank;
        self.coeff[(i * r + j) * r + k] = m;
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> i64 {
        let r = self.rank;
        self.coeff[(i * r + j) * r + k]
    }
}

/// One violated fusion-ring axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingViolation {
    Arity { field: &'static str, expected: usize, found: usize },
    EmptyRing,
    NegativeCoefficient { i: usize, j: usize, k: usize, value: i64 },
    DuplicateLabel { label: String },
    DualOutOfRange { i: usize, value: i64 },
    DualUnit,
    DualNotInvolution { i: usize },
    Unit { i: usize, j: usize, k: usize },
    Rigidity { i: usize, j: usize, k: usize },
    Reciprocity { i: usize, j: usize, k: usize },
    Commutativity { i: usize, j: usize, k: usize },
    Associativity { i: usize, j: usize, k: usize, l: usize },
}

impl RingViolation {
    /// Short axiom name.
    pub fn axiom(&self) -> &'static str {
        match self {
            RingViolation::Arity { .. } => "arity",
            RingViolation::EmptyRing => "arity",
            RingViolation::NegativeCoefficient { .. } => "nonnegativity",
            RingViolation::DuplicateLabel { .. } => "labels",
            RingViolation::DualOutOfRange { .. }
            | RingViolation::DualUnit
            | RingViolation::DualNotInvolution { .. } => "duality",
            RingViolation::Unit { .. } => "unit",
            RingViolation::Rigidity { .. } => "rigidity",
            RingViolation::Reciprocity { .. } => "frobenius-reciprocity",
            RingViolation::Commutativity { .. } => "commutativity",
            RingViolation::Associativity { .. } => "associativity",
        }
    }
}

impl fmt::Display for RingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingViolation::Arity { field, expected, found } => {
                write!(f, "arity: `{field}` has {found} entries, expected {expected}")
            }
            RingViolation::EmptyRing => write!(f, "arity: rank must be positive"),
            RingViolation::NegativeCoefficient { i, j, k, value } => {
                write!(f, "nonnegativity: N({i},{j},{k}) = {value}")
            }
            RingViolation::DuplicateLabel { label } => write!(f, "labels: `{label}` repeated"),
            RingViolation::DualOutOfRange { i, value } => {
                write!(f, "duality: dual({i}) = {value} out of range")
            }
            RingViolation::DualUnit => write!(f, "duality: dual(0) must be 0"),
            RingViolation::DualNotInvolution { i } => write!(f, "duality: dual(dual({i})) != {i}"),
            RingViolation::Associativity { i, j, k, l } => {
                write!(f, "associativity at ({i},{j},{k},{l})")
            }
            other => {
                let (i, j, k) = match other {
                    RingViolation::Unit { i, j, k }
                    | RingViolation::Rigidity { i, j, k }
                    | RingViolation::Reciprocity { i, j, k }
                    | RingViolation::Commutativity { i, j, k } => (i, j, k),
                    _ => unreachable!(),
                };
                write!(f, "{} at ({i},{j},{k})", other.axiom())
            }
        }
    }
}

/// Checks every fusion-ring axiom; an empty result means `raw` is valid.
pub fn validate_ring(raw: &RingCandidate) -> Vec<RingViolation> {
    let r = raw.rank;
    let mut out = Vec::new();
    if r == 0 {
        out.push(RingViolation::EmptyRing);
        return out;
    }
    for (field, found, expected) in [
        ("labels", raw.labels.len(), r),
        ("dual", raw.dual.len(), r),
        ("coeff", raw.coeff.len(), r * r * r),
    ] {
        if found != expected {
            out.push(RingViolation::Arity { field, expected, found });
        }
    }
    if !out.is_empty() {
        return out;
    }

    let mut seen = HashSet::new();
    for l in &raw.labels {
        if !seen.insert(l) {
            out.push(RingViolation::DuplicateLabel { label: l.clone() });
        }
    }
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let v = raw.get(i, j, k);
                if v < 0 {
                    out.push(RingViolation::NegativeCoefficient { i, j, k, value: v });
                }
            }
        }
    }
    for (i, &d) in raw.dual.iter().enumerate() {
        if d < 0 || d as usize >= r {
            out.push(RingViolation::DualOutOfRange { i, value: d });
        }
    }
    if !out.is_empty() {
        return out;
    }
    let dual: Vec<usize> = raw.dual.iter().map(|&d| d as usize).collect();
    if dual[0] != 0 {
        out.push(RingViolation::DualUnit);
    }
    for i in 0..r {
        if dual[dual[i]] != i {
            out.push(RingViolation::DualNotInvolution { i });
        }
    }
    if !out.is_empty() {
        return out;
    }

    let n = |i: usize, j: usize, k: usize| raw.get(i, j, k);
    let delta = |a: usize, b: usize| (a == b) as i64;
    for i in 0..r {
        for j in 0..r {
            // unit on both sides, reported once per coefficient
            if n(0, i, j) != delta(i, j) {
                out.push(RingViolation::Unit { i: 0, j: i, k: j });
            }
            if i != 0 && n(i, 0, j) != delta(i, j) {
                out.push(RingViolation::Unit { i, j: 0, k: j });
            }
        }
    }
    for i in 0..r {
        for j in 0..r {
            if n(i, j, 0) != delta(j, dual[i]) {
                out.push(RingViolation::Rigidity { i, j, k: 0 });
            }
            for k in 0..r {
                let v = n(i, j, k);
                if v != n(dual[i], k, j) || v != n(k, dual[j], i) {
                    out.push(RingViolation::Reciprocity { i, j, k });
                }
                if i < j && v != n(j, i, k) {
                    out.push(RingViolation::Commutativity { i, j, k });
                }
            }
        }
    }
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                for l in 0..r {
                    let lhs: i64 = (0..r).map(|m| n(i, j, m) * n(m, k, l)).sum();
                    let rhs: i64 = (0..r).map(|m| n(j, k, m) * n(i, m, l)).sum();
                    if lhs != rhs {
                        out.push(RingViolation::Associativity { i, j, k, l });
                    }
                }
            }
        }
    }
    out
}

/// A validated commutative fusion ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    rank: usize,
    labels: Vec<String>,
    dual: Vec<usize>,
    coeff: Vec<u32>,
}

impl FusionRing {
    pub fn new(raw: RingCandidate) -> Result<FusionRing, Vec<RingViolation>> {
        let report = validate_ring(&raw);
        if !report.is_empty() {
            return Err(report);
        }
        Ok(Self::from_candidate_unchecked(raw))
    }

    /// Builds a ring without checking the axioms beyond array shapes and
    /// index ranges. Results of the other operations are unspecified for
    /// data that violates the axioms.
    pub fn from_candidate_unchecked(raw: RingCandidate) -> FusionRing {
        let r = raw.rank;
        assert!(r > 0 && raw.labels.len() == r && raw.dual.len() == r && raw.coeff.len() == r * r * r);
        FusionRing {
            rank: r,
            labels: raw.labels,
            dual: raw.dual.iter().map(|&d| (d.max(0) as usize).min(r - 1)).collect(),
            coeff: raw.coeff.iter().map(|&c| c.max(0) as u32).collect(),
        }
    }

    /// The group ring `Z[Z_{n_1} × … × Z_{n_m}]`.
    pub fn pointed(orders: &[usize]) -> FusionRing {
        let size: usize = orders.iter().product();
        let decode = |mut x: usize| -> Vec<usize> {
            orders
                .iter()
                .map(|&o| {
                    let c = x % o;
                    x /= o;
                    c
                })
                .collect()
        };
        let encode = |v: &[usize]| {
            v.iter()
                .zip(orders)
                .rev()
                .fold(0, |acc, (&c, &o)| acc * o + c)
        };
        let mut raw = RingCandidate::zeros(size);
        raw.labels = (0..size)
            .map(|x| {
                if x == 0 {
                    "1".to_string()
                } else {
                    format!("g{}", decode(x).iter().map(|c| c.to_string()).collect::<Vec<_>>().join("_"))
                }
            })
            .collect();
        for a in 0..size {
            let va = decode(a);
            let inv: Vec<usize> = va.iter().zip(orders).map(|(&c, &o)| (o - c) % o).collect();
            raw.dual[a] = encode(&inv) as i64;
            for b in 0..size {
                let vb = decode(b);
                let s: Vec<usize> = va.iter().zip(&vb).zip(orders).map(|((x, y), o)| (x + y) % o).collect();
                raw.set(a, b, encode(&s), 1);
            }
        }
        FusionRing::new(raw).expect("group rings are fusion rings")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    /// `N_{ij}^k`.
    pub fn n(&self, i: usize, j: usize, k: usize) -> u32 {
        let r = self.rank;
        self.coeff[(i * r + j) * r + k]
    }

    /// Simple constituents of `i ⊗ j` with multiplicities.
    pub fn product(&self, i: usize, j: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        (0..self.rank).filter_map(move |k| {
            let m = self.n(i, j, k);
            (m > 0).then_some((k, m))
        })
    }

    /// Left multiplication matrix `(N_i)_{jk} = N_{ij}^k`.
    pub fn left_matrix(&self, i: usize) -> Vec<Vec<i64>> {
        (0..self.rank)
            .map(|j| (0..self.rank).map(|k| self.n(i, j, k) as i64).collect())
            .collect()
    }

    pub fn to_candidate(&self) -> RingCandidate {
        RingCandidate {
            rank: self.rank,
            labels: self.labels.clone(),
            dual: self.dual.iter().map(|&d| d as i64).collect(),
            coeff: self.coeff.iter().map(|&c| c as i64).collect(),
        }
    }

    /// Serializes to the line-oriented ring format.
    pub fn to_file_string(&self) -> String {
        let mut s = format!("rank {}\nlabels {}\ndual {}\n", self.rank, self.labels.join(" "), {
            self.dual.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")
        });
        for i in 0..self.rank {
            for j in 0..self.rank {
                for (k, m) in self.product(i, j) {
                    s.push_str(&format!("N {i} {j} {k} {m}\n"));
                }
            }
        }
        s
    }
}

/// Parses the ring file format into an unvalidated candidate.
///
/// ```text
/// rank 3
/// labels 1 e s
/// dual 0 1 2
/// N 2 2 0 1
/// ```
pub fn parse_ring(text: &str) -> Result<RingCandidate, SyntaxError> {
    let mut lines = content_lines(text);

    let mut header = |key: &str| -> Result<(usize, Vec<String>), SyntaxError> {
        let (line, l) = lines.next().ok_or_else(|| syntax(0, format!("missing {key}")))?;
        let mut words = l.split_whitespace();
        if words.next() != Some(key) {
            return Err(syntax(line, format!("missing {key}")));
        }
        Ok((line, words.map(str::to_string).collect()))
    };

    let (line, words) = header("rank")?;
    let rank = match words.as_slice() {
        [w] => w.parse::<usize>().map_err(|_| syntax(line, format!("bad rank `{w}`")))?,
        _ => return Err(syntax(line, "expected `rank <r>`")),
    };
    if rank == 0 {
        return Err(syntax(line, "rank must be positive"));
    }
    let (_, labels) = header("labels")?;
    let (line, words) = header("dual")?;
    let dual = words
        .iter()
        .map(|w| w.parse::<i64>().map_err(|_| syntax(line, format!("bad dual entry `{w}`"))))
        .collect::<Result<Vec<_>, _>>()?;

    let mut raw = RingCandidate { rank, labels, dual, coeff: vec![0; rank * rank * rank] };
    let mut seen = HashSet::new();
    for (line, l) in lines {
        let words: Vec<&str> = l.split_whitespace().collect();
        match words.as_slice() {
            ["N", rest @ ..] if rest.len() == 4 => {
                let idx = |w: &str| -> Result<usize, SyntaxError> {
                    let v: usize = w.parse().map_err(|_| syntax(line, format!("bad index `{w}`")))?;
                    if v >= rank {
                        return Err(syntax(line, format!("index {v} out of range for rank {rank}")));
                    }
                    Ok(v)
                };
                let (i, j, k) = (idx(rest[0])?, idx(rest[1])?, idx(rest[2])?);
                let m: i64 = rest[3]
                    .parse()
                    .map_err(|_| syntax(line, format!("bad multiplicity `{}`", rest[3])))?;
                if !seen.insert((i, j, k)) {
                    return Err(syntax(line, format!("duplicate coefficient N {i} {j} {k}")));
                }
                raw.set(i, j, k, m);
            }
            _ => return Err(syntax(line, format!("expected `N <i> <j> <k> <m>`, found `{l}`"))),
        }
    }
    Ok(raw)
}
