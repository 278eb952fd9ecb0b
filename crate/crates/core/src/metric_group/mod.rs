//! Finite abelian groups with quadratic forms into `Q/Z`.
//!
//! A form is stored by its values `q_i = q(e_i)` on the invariant-factor
//! generators and the bilinear values `b_ij = b(e_i, e_j)` for `i < j`.
//! The value on `x = Σ x_i e_i` is
//!
//! ```text
//! q(x) = Σ_i x_i² q_i + Σ_{i<j} x_i x_j b_ij   (mod 1)
//! ```
//!
//! which is well defined on the group exactly when `2 d_i q_i`, `d_i² q_i`
//! and `gcd(d_i, d_j) b_ij` are integers.

mod gauss;
mod ops;

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::abelian::{lcm_all, smith};
use crate::arith::Qz;
use crate::error::{content_lines, syntax, SyntaxError};

pub use gauss::{gauss_sum, GaussSum};
pub use ops::{direct_sum, inverse_form, sylow_decompose};
pub(crate) use ops::subquotient;

/// Default bound on the number of elements any exhaustive search visits.
pub const DEFAULT_ELEMENT_CAP: u64 = 1 << 16;

pub type Element = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("element {0:?} is not a valid coordinate tuple for this group")]
    ElementOutOfRange(Element),
    #[error("group of order {order} exceeds the element cap {cap}")]
    TooLarge { order: u64, cap: u64 },
    #[error("Gauss sum check failed: {0}")]
    Milgram(String),
    #[error("element {0:?} is not isotropic")]
    NotIsotropic(Element),
    #[error("the zero element cannot be used for reduction")]
    ZeroElement,
    #[error("form is degenerate")]
    Degenerate,
    #[error("reduction invariant violated: {0}")]
    Invariant(String),
}

/// A finite abelian group `Z_{d_1} ⊕ … ⊕ Z_{d_k}` with `d_1 | d_2 | … | d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    orders: Vec<i64>,
}

impl FiniteAbelianGroup {
    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().map(|&d| d as u64).product()
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn exponent(&self) -> i64 {
        self.orders.last().copied().unwrap_or(1)
    }

    pub fn zero(&self) -> Element {
        vec![0; self.orders.len()]
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.orders.len() && x.iter().zip(&self.orders).all(|(&c, &d)| (0..d).contains(&c))
    }

    pub fn normalize(&self, x: &[i64]) -> Element {
        x.iter().zip(&self.orders).map(|(&c, &d)| c.rem_euclid(d)).collect()
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Element {
        x.iter()
            .zip(y)
            .zip(&self.orders)
            .map(|((&a, &b), &d)| (a + b).rem_euclid(d))
            .collect()
    }

    pub fn scale(&self, n: i64, x: &[i64]) -> Element {
        x.iter()
            .zip(&self.orders)
            .map(|(&a, &d)| ((n as i128 * a as i128).rem_euclid(d as i128)) as i64)
            .collect()
    }

    pub fn element_order(&self, x: &[i64]) -> i64 {
        x.iter()
            .zip(&self.orders)
            .fold(1, |acc, (&c, &d)| acc.lcm(&(d / c.gcd(&d))))
    }

    /// The `idx`-th element in lexicographic order.
    pub fn element_at(&self, mut idx: u64) -> Element {
        let mut x = vec![0; self.orders.len()];
        for (c, &d) in x.iter_mut().zip(&self.orders).rev() {
            *c = (idx % d as u64) as i64;
            idx /= d as u64;
        }
        x
    }

    pub fn index_of(&self, x: &[i64]) -> u64 {
        x.iter().zip(&self.orders).fold(0, |acc, (&c, &d)| acc * d as u64 + c as u64)
    }

    /// All elements in lexicographic order of coordinate tuples.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order()).map(move |i| self.element_at(i))
    }

    pub fn check_cap(&self, cap: u64) -> Result<(), MetricError> {
        let order = self.order();
        if order > cap {
            Err(MetricError::TooLarge { order, cap })
        } else {
            Ok(())
        }
    }
}

/// Generator values `q_i` and cross terms `b_ij` (symmetric, zero diagonal).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    diag: Vec<Qz>,
    cross: Vec<Vec<Qz>>,
}

impl QuadraticForm {
    pub fn diag(&self) -> &[Qz] {
        &self.diag
    }

    /// `b(e_i, e_j)` for `i != j`.
    pub fn cross(&self, i: usize, j: usize) -> Qz {
        self.cross[i][j]
    }

    /// `q(x)` for any integer coordinate vector.
    pub fn value(&self, x: &[i64]) -> Qz {
        let mut acc = Qz::ZERO;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            acc += self.diag[i].scale(xi.wrapping_mul(xi));
            for (j, &xj) in x.iter().enumerate().skip(i + 1) {
                acc += self.cross[i][j].scale(xi.wrapping_mul(xj));
            }
        }
        acc
    }

    /// `b(x, y) = q(x + y) - q(x) - q(y)`.
    pub fn bilinear(&self, x: &[i64], y: &[i64]) -> Qz {
        let mut acc = Qz::ZERO;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                let bij = if i == j { self.diag[i].scale(2) } else { self.cross[i][j] };
                acc += bij.scale(xi.wrapping_mul(yj));
            }
        }
        acc
    }

    fn negate(&self) -> QuadraticForm {
        QuadraticForm {
            diag: self.diag.iter().map(|&q| -q).collect(),
            cross: self.cross.iter().map(|r| r.iter().map(|&b| -b).collect()).collect(),
        }
    }

    /// Common denominator of every value of the form.
    pub fn denominator(&self) -> i64 {
        lcm_all(
            self.diag
                .iter()
                .chain(self.cross.iter().flatten())
                .map(|q| q.den()),
        )
    }
}

/// Unvalidated metric-group data. Cross terms use 0-based indices `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricCandidate {
    pub orders: Vec<i64>,
    pub q: Vec<Qz>,
    pub cross: Vec<(usize, usize, Qz)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MetricViolation {
    Arity { expected: usize, found: usize },
    OrderTooSmall { i: usize, order: i64 },
    Divisibility { i: usize },
    CrossIndex { i: usize, j: usize },
    DuplicateCross { i: usize, j: usize },
    /// `2 d_i q_i` or `d_i² q_i` is not an integer.
    DiagonalCongruence { i: usize, q: Qz },
    /// `gcd(d_i, d_j) b_ij` is not an integer.
    CrossCongruence { i: usize, j: usize, b: Qz },
    TooLarge { order: u64, cap: u64 },
}

impl fmt::Display for MetricViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // generator indices are shown 1-based, as in the file format
        match self {
            MetricViolation::Arity { expected, found } => {
                write!(f, "arity: {found} generator values for {expected} orders")
            }
            MetricViolation::OrderTooSmall { i, order } => {
                write!(f, "orders: d{} = {order} must be at least 2", i + 1)
            }
            MetricViolation::Divisibility { i } => {
                write!(f, "orders: d{} does not divide d{}", i + 1, i + 2)
            }
            MetricViolation::CrossIndex { i, j } => {
                write!(f, "cross term ({}, {}) needs 1 <= i < j <= rank", i + 1, j + 1)
            }
            MetricViolation::DuplicateCross { i, j } => {
                write!(f, "cross term ({}, {}) given twice", i + 1, j + 1)
            }
            MetricViolation::DiagonalCongruence { i, q } => {
                write!(f, "well-definedness: q{} = {q} is not compatible with its order", i + 1)
            }
            MetricViolation::CrossCongruence { i, j, b } => {
                write!(f, "well-definedness: b({}, {}) = {b} is not killed by gcd of the orders", i + 1, j + 1)
            }
            MetricViolation::TooLarge { order, cap } => {
                write!(f, "size: group of order {order} exceeds the element cap {cap}")
            }
        }
    }
}

/// Violations plus, when the data is well defined, whether the form is
/// nondegenerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricReport {
    pub violations: Vec<MetricViolation>,
    pub nondegenerate: Option<bool>,
}

impl MetricReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_shape(c: &MetricCandidate) -> Vec<MetricViolation> {
    let k = c.orders.len();
    let mut out = Vec::new();
    if c.q.len() != k {
        out.push(MetricViolation::Arity { expected: k, found: c.q.len() });
    }
    for (i, &d) in c.orders.iter().enumerate() {
        if d < 2 {
            out.push(MetricViolation::OrderTooSmall { i, order: d });
        }
    }
    if out.is_empty() {
        for i in 0..k.saturating_sub(1) {
            if c.orders[i + 1] % c.orders[i] != 0 {
                out.push(MetricViolation::Divisibility { i });
            }
        }
    }
    let mut seen = std::collections::HashSet::new();
    for &(i, j, _) in &c.cross {
        if !(i < j && j < k) {
            out.push(MetricViolation::CrossIndex { i, j });
        } else if !seen.insert((i, j)) {
            out.push(MetricViolation::DuplicateCross { i, j });
        }
    }
    if !out.is_empty() {
        return out;
    }
    for (i, (&d, &q)) in c.orders.iter().zip(&c.q).enumerate() {
        if !(q.integral_after_scaling(2 * d) && q.integral_after_scaling(d * d)) {
            out.push(MetricViolation::DiagonalCongruence { i, q });
        }
    }
    for &(i, j, b) in &c.cross {
        if !b.integral_after_scaling(c.orders[i].gcd(&c.orders[j])) {
            out.push(MetricViolation::CrossCongruence { i, j, b });
        }
    }
    out
}

fn assemble(c: &MetricCandidate) -> (FiniteAbelianGroup, QuadraticForm) {
    let k = c.orders.len();
    let mut cross = vec![vec![Qz::ZERO; k]; k];
    for &(i, j, b) in &c.cross {
        cross[i][j] = b;
        cross[j][i] = b;
    }
    (
        FiniteAbelianGroup { orders: c.orders.clone() },
        QuadraticForm { diag: c.q.clone(), cross },
    )
}

/// Nonzero elements of the radical `{x : b(x, y) = 0 for all y}`, by
/// exhaustive search.
fn radical_exhaustive(group: &FiniteAbelianGroup, form: &QuadraticForm) -> Vec<Element> {
    let k = group.rank();
    let gens: Vec<Element> = (0..k)
        .map(|i| (0..k).map(|j| (i == j) as i64).collect())
        .collect();
    group
        .elements()
        .skip(1)
        .filter(|x| gens.iter().all(|e| form.bilinear(x, e).is_zero()))
        .collect()
}

/// Checks the candidate and decides nondegeneracy by an exhaustive radical
/// search over at most `cap` elements.
pub fn validate_metric(c: &MetricCandidate, cap: u64) -> MetricReport {
    let mut violations = check_shape(c);
    if !violations.is_empty() {
        return MetricReport { violations, nondegenerate: None };
    }
    let (group, form) = assemble(c);
    if group.order() > cap {
        violations.push(MetricViolation::TooLarge { order: group.order(), cap });
        return MetricReport { violations, nondegenerate: None };
    }
    let nondegenerate = radical_exhaustive(&group, &form).is_empty();
    MetricReport { violations, nondegenerate: Some(nondegenerate) }
}

/// A finite abelian group with a well-defined quadratic form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MetricGroup {
    group: FiniteAbelianGroup,
    form: QuadraticForm,
    nondegenerate: bool,
}

impl MetricGroup {
    pub fn new(c: &MetricCandidate) -> Result<MetricGroup, MetricReport> {
        Self::with_cap(c, DEFAULT_ELEMENT_CAP)
    }

    pub fn with_cap(c: &MetricCandidate, cap: u64) -> Result<MetricGroup, MetricReport> {
        let report = validate_metric(c, cap);
        if !report.is_valid() {
            return Err(report);
        }
        let (group, form) = assemble(c);
        Ok(MetricGroup {
            group,
            form,
            nondegenerate: report.nondegenerate.unwrap_or(false),
        })
    }

    /// Cyclic `Z_d` with `q(1) = q`. Panics if the data is not well defined.
    pub fn cyclic(d: i64, q: Qz) -> MetricGroup {
        Self::from_parts(vec![d], vec![q], vec![])
    }

    /// Panics if the data is not well defined.
    pub fn from_parts(orders: Vec<i64>, q: Vec<Qz>, cross: Vec<(usize, usize, Qz)>) -> MetricGroup {
        let c = MetricCandidate { orders, q, cross };
        let bad = check_shape(&c);
        assert!(bad.is_empty(), "invalid metric data: {bad:?}");
        Self::from_checked(&c)
    }

    pub fn trivial() -> MetricGroup {
        Self::from_parts(vec![], vec![], vec![])
    }

    /// Builds from data already known to satisfy the congruences; decides
    /// nondegeneracy through the Smith form of the bilinear matrix.
    fn from_checked(c: &MetricCandidate) -> MetricGroup {
        let (group, form) = assemble(c);
        let nondegenerate = bilinear_image_order(&group, &form) == group.order();
        MetricGroup { group, form, nondegenerate }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn form(&self) -> &QuadraticForm {
        &self.form
    }

    pub fn orders(&self) -> &[i64] {
        &self.group.orders
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn is_trivial(&self) -> bool {
        self.group.rank() == 0
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.nondegenerate
    }

    /// `q(x)`; `x` must be a reduced coordinate tuple.
    pub fn evaluate(&self, x: &[i64]) -> Result<Qz, MetricError> {
        if !self.group.contains(x) {
            return Err(MetricError::ElementOutOfRange(x.to_vec()));
        }
        Ok(self.form.value(x))
    }

    pub fn bilinear(&self, x: &[i64], y: &[i64]) -> Result<Qz, MetricError> {
        for v in [x, y] {
            if !self.group.contains(v) {
                return Err(MetricError::ElementOutOfRange(v.to_vec()));
            }
        }
        Ok(self.form.bilinear(x, y))
    }

    /// Exhaustive radical, for cross-checking the Smith-form decision.
    pub fn radical(&self, cap: u64) -> Result<Vec<Element>, MetricError> {
        self.group.check_cap(cap)?;
        Ok(radical_exhaustive(&self.group, &self.form))
    }

    pub fn to_candidate(&self) -> MetricCandidate {
        let k = self.rank();
        let mut cross = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                let b = self.form.cross[i][j];
                if !b.is_zero() {
                    cross.push((i, j, b));
                }
            }
        }
        MetricCandidate {
            orders: self.group.orders.clone(),
            q: self.form.diag.clone(),
            cross,
        }
    }

    /// Serializes to the line-oriented metric-group format.
    pub fn to_file_string(&self) -> String {
        let join = |xs: Vec<String>| xs.join(" ");
        let mut s = format!(
            "orders {}\nq {}\n",
            join(self.orders().iter().map(|d| d.to_string()).collect()),
            join(self.form.diag.iter().map(|q| fmt_fraction(*q)).collect()),
        );
        for (i, j, b) in self.to_candidate().cross {
            s.push_str(&format!("b {} {} {}\n", i + 1, j + 1, fmt_fraction(b)));
        }
        s
    }

    /// Compact description such as `Z_2 x Z_4 [q = 1/4, 1/8; b12 = 1/2]`.
    pub fn describe(&self) -> String {
        if self.is_trivial() {
            return "trivial".to_string();
        }
        let group = self.orders().iter().map(|d| format!("Z_{d}")).collect::<Vec<_>>().join(" x ");
        let qs = self.form.diag.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(", ");
        let cross: Vec<String> = self
            .to_candidate()
            .cross
            .iter()
            .map(|(i, j, b)| format!("b{}{} = {b}", i + 1, j + 1))
            .collect();
        if cross.is_empty() {
            format!("{group} [q = {qs}]")
        } else {
            format!("{group} [q = {qs}; {}]", cross.join(", "))
        }
    }

    pub(crate) fn with_form(group: FiniteAbelianGroup, form: QuadraticForm) -> MetricGroup {
        let nondegenerate = bilinear_image_order(&group, &form) == group.order();
        MetricGroup { group, form, nondegenerate }
    }

    pub(crate) fn negated(&self) -> MetricGroup {
        MetricGroup {
            group: self.group.clone(),
            form: self.form.negate(),
            nondegenerate: self.nondegenerate,
        }
    }
}

fn fmt_fraction(q: Qz) -> String {
    format!("{}/{}", q.num(), q.den())
}

/// Order of the image of `x ↦ b(x, ·)` in `Hom(A, Q/Z)`.
fn bilinear_image_order(group: &FiniteAbelianGroup, form: &QuadraticForm) -> u64 {
    let k = group.rank();
    if k == 0 {
        return 1;
    }
    let n = form.denominator().lcm(&group.exponent());
    // columns b(e_i, ·) scaled by n, plus n e_j, span a lattice Λ with
    // |image| = |Λ / n Z^k|
    let mut m = vec![vec![0i64; 2 * k]; k];
    for i in 0..k {
        for j in 0..k {
            let bij = if i == j { form.diag[i].scale(2) } else { form.cross[i][j] };
            m[j][i] = bij.numerator_over(n);
        }
        m[i][k + i] = n;
    }
    let s = smith(&m, k);
    // n Z^k lies in the lattice, so every elementary divisor divides n
    s.diagonal.iter().map(|&d| (n / d) as u64).product()
}

/// Parses the metric-group file format.
///
/// ```text
/// orders 2 4
/// q 1/4 1/8
/// b 1 2 1/2
/// ```
pub fn parse_metric(text: &str) -> Result<MetricCandidate, SyntaxError> {
    let mut orders: Option<Vec<i64>> = None;
    let mut q: Option<Vec<Qz>> = None;
    let mut cross = Vec::new();
    for (line, l) in content_lines(text) {
        let mut words = l.split_whitespace();
        let key = words.next().unwrap_or("");
        let rest: Vec<&str> = words.collect();
        match key {
            "orders" => {
                if orders.is_some() {
                    return Err(syntax(line, "duplicate orders line"));
                }
                let v = rest
                    .iter()
                    .map(|w| w.parse::<i64>().map_err(|_| syntax(line, format!("bad order `{w}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                orders = Some(v);
            }
            "q" => {
                if orders.is_none() {
                    return Err(syntax(line, "missing orders before q"));
                }
                if q.is_some() {
                    return Err(syntax(line, "duplicate q line"));
                }
                let v = rest
                    .iter()
                    .map(|w| w.parse::<Qz>().map_err(|e| syntax(line, e.to_string())))
                    .collect::<Result<Vec<_>, _>>()?;
                q = Some(v);
            }
            "b" => {
                let [i, j, b] = rest.as_slice() else {
                    return Err(syntax(line, "expected `b <i> <j> <a/b>`"));
                };
                let idx = |w: &str| -> Result<usize, SyntaxError> {
                    match w.parse::<usize>() {
                        Ok(v) if v >= 1 => Ok(v - 1),
                        _ => Err(syntax(line, format!("bad generator index `{w}`"))),
                    }
                };
                let b = b.parse::<Qz>().map_err(|e| syntax(line, e.to_string()))?;
                cross.push((idx(i)?, idx(j)?, b));
            }
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
    }
    let orders = orders.ok_or_else(|| syntax(0, "missing orders"))?;
    let q = q.ok_or_else(|| syntax(0, "missing q"))?;
    Ok(MetricCandidate { orders, q, cross })
}
