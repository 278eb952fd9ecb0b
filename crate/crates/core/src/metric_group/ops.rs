//! Orthogonal sums, Sylow decomposition, negation, and the subquotient
//! construction shared with Witt reduction.

use std::collections::BTreeMap;

use super::{Element, FiniteAbelianGroup, MetricGroup, QuadraticForm};
use crate::abelian::{smith, Sublattice};
use crate::arith::{factorize, valuation, Qz};

/// The form induced on `L / M`, where `L ⊆ Z^k` is a sublattice on which
/// `q` (read through the coordinates of `ambient`) is constant on cosets of
/// the relation lattice `M`.
///
/// `ambient` may have arbitrary orders; it only supplies the evaluation
/// rule. Returns the group in invariant-factor form together with the new
/// generators written in ambient coordinates.
pub(crate) fn subquotient(
    orders: &[i64],
    form: &QuadraticForm,
    lattice: &Sublattice,
    relations: &[Vec<i64>],
) -> (MetricGroup, Vec<Element>) {
    let k = lattice.rank();
    let coords: Vec<Vec<i64>> = relations
        .iter()
        .map(|r| lattice.coords(r).expect("relation outside the lattice"))
        .collect();
    let matrix: Vec<Vec<i64>> = (0..k).map(|i| coords.iter().map(|c| c[i]).collect()).collect();
    let snf = smith(&matrix, k);

    let mut new_orders = Vec::new();
    let mut gens = Vec::new();
    for (i, &d) in snf.diagonal.iter().enumerate() {
        assert!(d != 0, "subquotient is infinite");
        if d == 1 {
            continue;
        }
        let col: Vec<i64> = (0..k).map(|r| snf.left_inverse[r][i]).collect();
        let g: Element = lattice
            .combine(&col)
            .iter()
            .zip(orders)
            .map(|(&c, &m)| c.rem_euclid(m))
            .collect();
        new_orders.push(d);
        gens.push(g);
    }
    let r = gens.len();
    let diag: Vec<Qz> = gens.iter().map(|g| form.value(g)).collect();
    let mut cross = vec![vec![Qz::ZERO; r]; r];
    for i in 0..r {
        for j in i + 1..r {
            let b = form.bilinear(&gens[i], &gens[j]);
            cross[i][j] = b;
            cross[j][i] = b;
        }
    }
    let mg = MetricGroup::with_form(FiniteAbelianGroup { orders: new_orders }, QuadraticForm { diag, cross });
    (mg, gens)
}

/// Rewrites a form given on `Z_{m_1} ⊕ … ⊕ Z_{m_k}` (any orders) in
/// invariant-factor form.
fn canonicalize(orders: &[i64], form: &QuadraticForm) -> MetricGroup {
    let k = orders.len();
    let relations: Vec<Vec<i64>> = (0..k)
        .map(|i| (0..k).map(|j| if i == j { orders[i] } else { 0 }).collect())
        .collect();
    subquotient(orders, form, &Sublattice::full(k), &relations).0
}

/// Orthogonal direct sum.
pub fn direct_sum(a: &MetricGroup, b: &MetricGroup) -> MetricGroup {
    let (ka, kb) = (a.rank(), b.rank());
    let orders: Vec<i64> = a.orders().iter().chain(b.orders()).copied().collect();
    let diag: Vec<Qz> = a.form().diag().iter().chain(b.form().diag()).copied().collect();
    let mut cross = vec![vec![Qz::ZERO; ka + kb]; ka + kb];
    for i in 0..ka {
        for j in 0..ka {
            if i != j {
                cross[i][j] = a.form().cross(i, j);
            }
        }
    }
    for i in 0..kb {
        for j in 0..kb {
            if i != j {
                cross[ka + i][ka + j] = b.form().cross(i, j);
            }
        }
    }
    canonicalize(&orders, &QuadraticForm { diag, cross })
}

/// Splits into `p`-primary parts, which are mutually orthogonal.
pub fn sylow_decompose(mg: &MetricGroup) -> BTreeMap<u64, MetricGroup> {
    let mut out = BTreeMap::new();
    for (p, _) in factorize(mg.order()) {
        let mut orders = Vec::new();
        let mut gens: Vec<Element> = Vec::new();
        for (i, &d) in mg.orders().iter().enumerate() {
            let e = valuation(d as u64, p);
            if e == 0 {
                continue;
            }
            let pe = (p as i64).pow(e);
            let mut g = mg.group().zero();
            g[i] = d / pe;
            orders.push(pe);
            gens.push(g);
        }
        let r = gens.len();
        let diag = gens.iter().map(|g| mg.form().value(g)).collect();
        let mut cross = vec![vec![Qz::ZERO; r]; r];
        for i in 0..r {
            for j in 0..r {
                if i != j {
                    cross[i][j] = mg.form().bilinear(&gens[i], &gens[j]);
                }
            }
        }
        out.insert(p, canonicalize(&orders, &QuadraticForm { diag, cross }));
    }
    out
}

/// The same group with `q` replaced by `-q`.
pub fn inverse_form(mg: &MetricGroup) -> MetricGroup {
    mg.negated()
}
