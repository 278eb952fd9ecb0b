//! Invertible objects, stabilizers, fusion subrings, the universal grading
//! and the adjoint tower.

use std::collections::{BTreeMap, BTreeSet};

use super::{FpDimData, FusionRing};
use crate::abelian::{check_abelian_group, group_name, invariant_factors};
use crate::arith::factorize;

/// A set of simples closed under duals and fusion, always containing `0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subring {
    pub members: BTreeSet<usize>,
}

impl Subring {
    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }
}

/// The group of invertible simples with its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvertibleGroup {
    /// Simple indices, ascending; `members[0] == 0`.
    pub members: Vec<usize>,
    /// `table[a][b]` is the position in `members` of `members[a] ⊗ members[b]`.
    pub table: Vec<Vec<usize>>,
}

impl InvertibleGroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn invariant_factors(&self) -> Vec<u64> {
        invariant_factors(&self.table, 0)
    }
}

fn is_invertible(ring: &FusionRing, i: usize) -> bool {
    let d = ring.dual(i);
    ring.n(i, d, 0) == 1 && ring.product(i, d).map(|(_, m)| m).sum::<u32>() == 1
}

pub fn invertibles(ring: &FusionRing) -> InvertibleGroup {
    let members: Vec<usize> = (0..ring.rank()).filter(|&i| is_invertible(ring, i)).collect();
    let pos = |k: usize| members.binary_search(&k).expect("invertibles are closed under fusion");
    let table = members
        .iter()
        .map(|&a| {
            members
                .iter()
                .map(|&b| {
                    let (k, _) = ring.product(a, b).next().expect("nonzero product");
                    pos(k)
                })
                .collect()
        })
        .collect();
    InvertibleGroup { members, table }
}

/// `G[x] = {g invertible : g ⊗ x = x}`, as simple indices.
pub fn stabilizer(ring: &FusionRing, x: usize) -> Option<Vec<usize>> {
    (x < ring.rank()).then(|| {
        invertibles(ring)
            .members
            .into_iter()
            .filter(|&g| ring.n(g, x, x) == 1)
            .collect()
    })
}

/// Decomposition of `x ⊗ dual(x)` split into invertible and
/// non-invertible constituents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorSquare {
    pub invertible: BTreeMap<usize, u32>,
    pub non_invertible: BTreeMap<usize, u32>,
    pub stabilizer: Vec<usize>,
}

/// Decomposes `x ⊗ dual(x)` and checks that each invertible appears with
/// multiplicity exactly `[g ∈ G[x]]`.
pub fn tensor_square_check(ring: &FusionRing, x: usize) -> Result<TensorSquare, String> {
    let stab = stabilizer(ring, x).ok_or_else(|| format!("simple {x} out of range"))?;
    let inv = invertibles(ring);
    let mut invertible = BTreeMap::new();
    let mut non_invertible = BTreeMap::new();
    for (k, m) in ring.product(x, ring.dual(x)) {
        if inv.contains(k) {
            invertible.insert(k, m);
        } else {
            non_invertible.insert(k, m);
        }
    }
    let x = ring.label(x);
    for &g in &inv.members {
        let expected = stab.contains(&g) as u32;
        let found = invertible.get(&g).copied().unwrap_or(0);
        if expected != found {
            return Err(format!(
                "ring inconsistency: invertible {} appears {} times in {x}⊗{x}* but {} the stabilizer",
                ring.label(g),
                found,
                if expected == 1 { "lies in" } else { "is outside" }
            ));
        }
    }
    Ok(TensorSquare { invertible, non_invertible, stabilizer: stab })
}

/// Smallest subring containing `seed` (and the unit).
pub fn subring_generated(ring: &FusionRing, seed: &BTreeSet<usize>) -> Subring {
    let mut members: BTreeSet<usize> = seed.iter().copied().filter(|&i| i < ring.rank()).collect();
    members.insert(0);
    loop {
        let mut next = members.clone();
        for &i in &members {
            next.insert(ring.dual(i));
            for &j in &members {
                next.extend(ring.product(i, j).map(|(k, _)| k));
            }
        }
        if next == members {
            return Subring { members };
        }
        members = next;
    }
}

/// Subring generated by the constituents of `x ⊗ dual(x)` for `x` in `within`.
fn adjoint_of(ring: &FusionRing, within: &BTreeSet<usize>) -> Subring {
    let seed = within
        .iter()
        .flat_map(|&x| ring.product(x, ring.dual(x)).map(|(k, _)| k))
        .collect();
    subring_generated(ring, &seed)
}

pub fn adjoint_subring(ring: &FusionRing) -> Subring {
    adjoint_of(ring, &(0..ring.rank()).collect())
}

/// The universal grading: components, their group law, and its name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingData {
    /// Blocks of simples; block `neutral` is the adjoint subring.
    pub components: Vec<Vec<usize>>,
    pub neutral: usize,
    pub table: Vec<Vec<usize>>,
    pub invariant_factors: Vec<u64>,
    pub group_name: String,
}

impl GradingData {
    pub fn block_of(&self, i: usize) -> usize {
        self.components.iter().position(|b| b.contains(&i)).expect("grading is a partition")
    }

    pub fn order(&self) -> usize {
        self.components.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GradingError {
    #[error("block product not well defined: {0}")]
    NotWellDefined(String),
    #[error("grading table is not an abelian group: {0}")]
    NotAbelianGroup(String),
}

pub fn universal_grading(ring: &FusionRing) -> Result<GradingData, GradingError> {
    let r = ring.rank();
    let ad = adjoint_subring(ring);
    let related = |x: usize, y: usize| ring.product(x, ring.dual(y)).any(|(k, _)| ad.contains(k));

    // classes of x ~ y; the unit's class comes first
    let mut block = vec![usize::MAX; r];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for x in 0..r {
        if block[x] != usize::MAX {
            continue;
        }
        let b = components.len();
        let members: Vec<usize> = (x..r).filter(|&y| block[y] == usize::MAX && related(x, y)).collect();
        for &y in &members {
            block[y] = b;
        }
        components.push(members);
    }
    let neutral = block[0];
    if components[neutral].iter().copied().collect::<BTreeSet<_>>() != ad.members {
        return Err(GradingError::NotWellDefined("neutral block differs from the adjoint subring".into()));
    }
    // every pair related within a block, not just to its first member
    for comp in &components {
        for &x in comp {
            for &y in comp {
                if !related(x, y) {
                    return Err(GradingError::NotWellDefined(format!("relation not transitive at ({x}, {y})")));
                }
            }
        }
    }

    let n = components.len();
    let mut table = vec![vec![usize::MAX; n]; n];
    for x in 0..r {
        for y in 0..r {
            let (a, b) = (block[x], block[y]);
            for (k, _) in ring.product(x, y) {
                let c = block[k];
                if table[a][b] == usize::MAX {
                    table[a][b] = c;
                } else if table[a][b] != c {
                    return Err(GradingError::NotWellDefined(format!(
                        "{}⊗{} has constituents in blocks {} and {}",
                        ring.label(x),
                        ring.label(y),
                        table[a][b],
                        c
                    )));
                }
            }
        }
    }
    let e = check_abelian_group(&table).map_err(GradingError::NotAbelianGroup)?;
    if e != neutral {
        return Err(GradingError::NotAbelianGroup("identity is not the neutral block".into()));
    }
    let invariant_factors = invariant_factors(&table, neutral);
    Ok(GradingData {
        group_name: group_name(&invariant_factors),
        components,
        neutral,
        table,
        invariant_factors,
    })
}

/// The descending adjoint tower and whether it reaches the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nilpotency {
    pub nilpotent: bool,
    pub tower: Vec<Subring>,
}

pub fn nilpotency(ring: &FusionRing, max_depth: usize) -> Result<Nilpotency, String> {
    let mut tower = vec![Subring { members: (0..ring.rank()).collect() }];
    loop {
        let last = tower.last().unwrap();
        if last.is_trivial() {
            return Ok(Nilpotency { nilpotent: true, tower });
        }
        let next = adjoint_of(ring, &last.members);
        if next == *last {
            return Ok(Nilpotency { nilpotent: false, tower });
        }
        if !next.members.is_subset(&last.members) {
            return Err("internal error: adjoint tower is not decreasing".into());
        }
        if tower.len() >= max_depth {
            return Err(format!("internal error: adjoint tower did not stabilize within {max_depth} steps"));
        }
        tower.push(next);
    }
}

/// Outcome of asking whether all squared dimensions are powers of one prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimePowerDims {
    /// All dimensions are 1; any prime works.
    Pointed,
    Prime(u64),
    None,
}

pub fn simple_dims_prime_power(data: &FpDimData) -> Result<PrimePowerDims, String> {
    let squares: Vec<u64> = data
        .exact_square
        .iter()
        .enumerate()
        .map(|(i, s)| s.ok_or_else(|| format!("simple {i} has no integrality certificate")))
        .collect::<Result<_, _>>()?;
    let primes: BTreeSet<u64> = squares.iter().flat_map(|&s| factorize(s)).map(|(p, _)| p).collect();
    Ok(match primes.len() {
        0 => PrimePowerDims::Pointed,
        1 => PrimePowerDims::Prime(*primes.first().unwrap()),
        _ => PrimePowerDims::None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion_ring::tests::ising;
    use crate::fusion_ring::{fp_dim_data, parse_ring, DEFAULT_TOLERANCE};

    fn ring(text: &str) -> FusionRing {
        FusionRing::new(parse_ring(text).unwrap()).unwrap()
    }

    fn fib() -> FusionRing {
        ring("rank 2\nlabels 1 t\ndual 0 1\nN 0 0 0 1\nN 0 1 1 1\nN 1 0 1 1\nN 1 1 0 1\nN 1 1 1 1\n")
    }

    fn rep_s3() -> FusionRing {
        ring(
            "rank 3\nlabels 1 s t\ndual 0 1 2\n\
             N 0 0 0 1\nN 0 1 1 1\nN 0 2 2 1\nN 1 0 1 1\nN 2 0 2 1\n\
             N 1 1 0 1\nN 1 2 2 1\nN 2 1 2 1\nN 2 2 0 1\nN 2 2 1 1\nN 2 2 2 1\n",
        )
    }

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn invertible_groups() {
        let inv = invertibles(&ising());
        assert_eq!(inv.members, vec![0, 1]);
        assert_eq!(inv.invariant_factors(), vec![2]);
        assert_eq!(invertibles(&fib()).members, vec![0]);
        let z4 = invertibles(&FusionRing::pointed(&[4]));
        assert_eq!(z4.order(), 4);
        assert_eq!(z4.invariant_factors(), vec![4]);
    }

    #[test]
    fn stabilizers() {
        assert_eq!(stabilizer(&ising(), 2), Some(vec![0, 1]));
        assert_eq!(stabilizer(&ising(), 1), Some(vec![0]));
        assert_eq!(stabilizer(&fib(), 1), Some(vec![0]));
        assert_eq!(stabilizer(&fib(), 5), None);
    }

    #[test]
    fn tensor_squares() {
        let sq = tensor_square_check(&ising(), 2).unwrap();
        assert_eq!(sq.invertible, BTreeMap::from([(0, 1), (1, 1)]));
        assert!(sq.non_invertible.is_empty());
        let sq = tensor_square_check(&ising(), 1).unwrap();
        assert_eq!(sq.invertible, BTreeMap::from([(0, 1)]));
        let sq = tensor_square_check(&fib(), 1).unwrap();
        assert_eq!(sq.invertible, BTreeMap::from([(0, 1)]));
        assert_eq!(sq.non_invertible, BTreeMap::from([(1, 1)]));
    }

    #[test]
    fn tensor_square_flags_inconsistent_data() {
        // σσ = 1 + σ with ε fixing σ: ε is in G[σ] but missing from σσ*
        let mut raw = ising().to_candidate();
        raw.set(2, 2, 1, 0);
        raw.set(2, 2, 2, 1);
        let bad = FusionRing::from_candidate_unchecked(raw);
        assert!(tensor_square_check(&bad, 2).is_err());
    }

    #[test]
    fn generated_subrings() {
        let r = ising();
        assert_eq!(subring_generated(&r, &set(&[1])).members, set(&[0, 1]));
        assert_eq!(subring_generated(&r, &set(&[2])).members, set(&[0, 1, 2]));
        assert_eq!(subring_generated(&r, &set(&[])).members, set(&[0]));
    }

    #[test]
    fn adjoint_subrings() {
        assert_eq!(adjoint_subring(&ising()).members, set(&[0, 1]));
        assert_eq!(adjoint_subring(&FusionRing::pointed(&[2, 2])).members, set(&[0]));
        assert_eq!(adjoint_subring(&rep_s3()).members, set(&[0, 1, 2]));
    }

    #[test]
    fn gradings() {
        let g = universal_grading(&ising()).unwrap();
        assert_eq!(g.components, vec![vec![0, 1], vec![2]]);
        assert_eq!(g.group_name, "Z_2");
        let g = universal_grading(&rep_s3()).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.group_name, "1");
        let g = universal_grading(&FusionRing::pointed(&[4])).unwrap();
        assert_eq!(g.components.len(), 4);
        assert_eq!(g.invariant_factors, vec![4]);
    }

    #[test]
    fn adjoint_towers() {
        let n = nilpotency(&ising(), 16).unwrap();
        assert!(n.nilpotent);
        let tower: Vec<BTreeSet<usize>> = n.tower.into_iter().map(|s| s.members).collect();
        assert_eq!(tower, vec![set(&[0, 1, 2]), set(&[0, 1]), set(&[0])]);
        let n = nilpotency(&rep_s3(), 16).unwrap();
        assert!(!n.nilpotent);
        assert_eq!(n.tower.len(), 1);
        let n = nilpotency(&FusionRing::pointed(&[1]), 16).unwrap();
        assert!(n.nilpotent && n.tower.len() == 1);
    }

    #[test]
    fn prime_power_dimensions() {
        let d = fp_dim_data(&ising(), DEFAULT_TOLERANCE).unwrap();
        assert_eq!(simple_dims_prime_power(&d), Ok(PrimePowerDims::Prime(2)));
        let d = fp_dim_data(&rep_s3(), DEFAULT_TOLERANCE).unwrap();
        assert_eq!(simple_dims_prime_power(&d), Ok(PrimePowerDims::Prime(2)));
        let d = fp_dim_data(&FusionRing::pointed(&[6]), DEFAULT_TOLERANCE).unwrap();
        assert_eq!(simple_dims_prime_power(&d), Ok(PrimePowerDims::Pointed));
        let d = fp_dim_data(&fib(), DEFAULT_TOLERANCE).unwrap();
        assert!(simple_dims_prime_power(&d).is_err());
    }
}
