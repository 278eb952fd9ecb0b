//! Finite abelian groups: Smith normal form over `Z`, sublattices cut out
//! by a congruence, and invariant factors of abstract group tables.

use num_integer::Integer;

use crate::arith::factorize;

/// Result of diagonalizing an integer relation matrix `R` (rows index
/// coordinates, columns index relations) as `U R V = diag(s_1, s_2, …)`
/// with `s_1 | s_2 | …`.
#[derive(Clone, Debug)]
pub struct Smith {
    /// Diagonal entries, one per row of `R`; zero for free directions.
    pub diagonal: Vec<i64>,
    /// `U⁻¹`. Column `i` is the new generator of the summand `Z/s_i`,
    /// written in the original coordinates.
    pub left_inverse: Vec<Vec<i64>>,
}

/// Smith normal form of a `rows × cols` matrix, tracking the inverse of
/// the row transform.
pub fn smith(matrix: &[Vec<i64>], rows: usize) -> Smith {
    let cols = matrix.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<i128>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut uinv: Vec<Vec<i128>> = (0..rows)
        .map(|i| (0..rows).map(|j| (i == j) as i128).collect())
        .collect();

    // row_i += c * row_j  <=>  col_j(uinv) -= c * col_i(uinv)
    let add_row = |a: &mut Vec<Vec<i128>>, uinv: &mut Vec<Vec<i128>>, i: usize, j: usize, c: i128| {
        for k in 0..cols {
            a[i][k] += c * a[j][k];
        }
        for r in uinv.iter_mut() {
            r[j] -= c * r[i];
        }
    };
    let swap_rows = |a: &mut Vec<Vec<i128>>, uinv: &mut Vec<Vec<i128>>, i: usize, j: usize| {
        a.swap(i, j);
        for r in uinv.iter_mut() {
            r.swap(i, j);
        }
    };

    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero entry in the remaining block
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut a, &mut uinv, t, pi);
        for r in a.iter_mut() {
            r.swap(t, pj);
        }

        let mut clean = true;
        for i in t + 1..rows {
            let q = Integer::div_floor(&a[i][t], &a[t][t]);
            if q != 0 {
                add_row(&mut a, &mut uinv, i, t, -q);
            }
            clean &= a[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = Integer::div_floor(&a[t][j], &a[t][t]);
            if q != 0 {
                for r in a.iter_mut() {
                    r[j] -= q * r[t];
                }
            }
            clean &= a[t][j] == 0;
        }
        if !clean {
            continue;
        }
        // divisibility: fold any entry the pivot does not divide into row t
        let bad = (t + 1..rows)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| a[i][j] % a[t][t] != 0);
        if let Some((i, _)) = bad {
            add_row(&mut a, &mut uinv, t, i, 1);
            continue;
        }
        t += 1;
    }

    let diagonal = (0..rows)
        .map(|i| if i < cols { a[i][i].abs() as i64 } else { 0 })
        .collect();
    Smith {
        diagonal,
        left_inverse: uinv
            .into_iter()
            .map(|r| r.into_iter().map(|x| x as i64).collect())
            .collect(),
    }
}

/// A full-rank sublattice `L ⊆ Z^k` with a basis and a coordinate map.
#[derive(Clone, Debug)]
pub struct Sublattice {
    /// Basis vectors, each of length `k`.
    pub basis: Vec<Vec<i64>>,
    kind: LatticeKind,
}

#[derive(Clone, Debug)]
enum LatticeKind {
    Full,
    /// `{y : c·y ≡ 0 mod modulus}`; `inverse` is the inverse of the
    /// unimodular column transform of the augmented row `(c | modulus)`.
    Congruence {
        row: Vec<i64>,
        modulus: i64,
        inverse: Vec<Vec<i128>>,
    },
}

impl Sublattice {
    pub fn full(k: usize) -> Sublattice {
        let basis = (0..k)
            .map(|i| (0..k).map(|j| (i == j) as i64).collect())
            .collect();
        Sublattice { basis, kind: LatticeKind::Full }
    }

    /// The lattice of `y ∈ Z^k` with `row · y ≡ 0 (mod modulus)`.
    pub fn congruence(row: &[i64], modulus: i64) -> Sublattice {
        assert!(modulus > 0);
        let k = row.len();
        let n = k + 1;
        let mut r: Vec<i128> = row.iter().map(|&x| x as i128).collect();
        r.push(modulus as i128);
        let mut v: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
        let mut vinv = v.clone();

        // col_a += c col_b on (r, v); inverse: row_b -= c row_a on vinv
        let add_col = |r: &mut Vec<i128>, v: &mut Vec<Vec<i128>>, vinv: &mut Vec<Vec<i128>>, a: usize, b: usize, c: i128| {
            r[a] += c * r[b];
            for row in v.iter_mut() {
                row[a] += c * row[b];
            }
            for j in 0..n {
                vinv[b][j] -= c * vinv[a][j];
            }
        };
        let swap_col = |r: &mut Vec<i128>, v: &mut Vec<Vec<i128>>, vinv: &mut Vec<Vec<i128>>, a: usize, b: usize| {
            r.swap(a, b);
            for row in v.iter_mut() {
                row.swap(a, b);
            }
            vinv.swap(a, b);
        };

        loop {
            let nz: Vec<usize> = (0..n).filter(|&i| r[i] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&i) = nz.first() {
                    swap_col(&mut r, &mut v, &mut vinv, 0, i);
                }
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| r[i].abs()).unwrap();
            for &i in &nz {
                if i != p {
                    let q = Integer::div_floor(&r[i], &r[p]);
                    add_col(&mut r, &mut v, &mut vinv, i, p, -q);
                }
            }
        }

        let basis = (1..n)
            .map(|c| (0..k).map(|i| v[i][c] as i64).collect())
            .collect();
        Sublattice {
            basis,
            kind: LatticeKind::Congruence {
                row: row.to_vec(),
                modulus,
                inverse: vinv,
            },
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `y` in the lattice basis, or `None` if `y ∉ L`.
    pub fn coords(&self, y: &[i64]) -> Option<Vec<i64>> {
        match &self.kind {
            LatticeKind::Full => Some(y.to_vec()),
            LatticeKind::Congruence { row, modulus, inverse } => {
                let dot: i128 = row.iter().zip(y).map(|(&c, &x)| c as i128 * x as i128).sum();
                if dot % *modulus as i128 != 0 {
                    return None;
                }
                let mut aug: Vec<i128> = y.iter().map(|&x| x as i128).collect();
                aug.push(-dot / *modulus as i128);
                let z: Vec<i128> = inverse
                    .iter()
                    .map(|r| r.iter().zip(&aug).map(|(a, b)| a * b).sum())
                    .collect();
                debug_assert_eq!(z[0], 0);
                Some(z[1..].iter().map(|&x| x as i64).collect())
            }
        }
    }

    /// `Σ_i coeffs[i] · basis[i]`.
    pub fn combine(&self, coeffs: &[i64]) -> Vec<i64> {
        let k = self.basis.first().map_or(0, Vec::len);
        let mut out = vec![0i64; k];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            for (o, x) in out.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        out
    }
}

/// Invariant factors `d_1 | d_2 | … | d_r` (all `> 1`) of the abelian
/// group with the given Cayley table.
///
/// For each prime `p` the number of elements killed by `p^k` equals
/// `p^{Σ_j min(k, e_j)}`; the exponents `e_j` are read off from those counts.
pub fn invariant_factors(table: &[Vec<usize>], identity: usize) -> Vec<u64> {
    let n = table.len() as u64;
    let power = |x: usize, m: u64| {
        let mut acc = identity;
        for _ in 0..m {
            acc = table[acc][x];
        }
        acc
    };
    let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for (p, _) in factorize(n) {
        let mut counts = vec![0u32]; // log_p #{x : p^k x = 0}, k = 0, 1, …
        let mut pk = 1u64;
        loop {
            pk *= p;
            let mut c = (0..table.len()).filter(|&x| power(x, pk) == identity).count() as u64;
            let mut logc = 0u32;
            while c > 1 {
                c /= p;
                logc += 1;
            }
            if logc == *counts.last().unwrap() {
                break;
            }
            counts.push(logc);
        }
        // conjugate partition: #{j : e_j >= k} = counts[k] - counts[k-1]
        let mut exps = Vec::new();
        let cols: Vec<u32> = counts.windows(2).map(|w| w[1] - w[0]).collect();
        let parts = cols.first().copied().unwrap_or(0);
        for j in 0..parts {
            exps.push(cols.iter().filter(|&&c| c > j).count() as u32);
        }
        exps.sort_unstable();
        per_prime.push((p, exps));
    }
    let r = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut out = vec![1u64; r];
    for (p, exps) in &per_prime {
        let off = r - exps.len();
        for (j, e) in exps.iter().enumerate() {
            out[off + j] *= p.pow(*e);
        }
    }
    out
}

/// Checks that `table` is the Cayley table of an abelian group and returns
/// its identity.
pub fn check_abelian_group(table: &[Vec<usize>]) -> Result<usize, String> {
    let n = table.len();
    if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
        return Err("table is not square over its index set".into());
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or("no identity element")?;
    for a in 0..n {
        if !(0..n).any(|b| table[a][b] == e) {
            return Err(format!("element {a} has no inverse"));
        }
        for b in 0..n {
            if table[a][b] != table[b][a] {
                return Err(format!("not commutative at ({a}, {b})"));
            }
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(format!("not associative at ({a}, {b}, {c})"));
                }
            }
        }
    }
    Ok(e)
}

/// `Z_2 x Z_8`-style name for a list of invariant factors.
pub fn group_name(factors: &[u64]) -> String {
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors
            .iter()
            .map(|d| format!("Z_{d}"))
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

pub fn lcm_all(xs: impl IntoIterator<Item = i64>) -> i64 {
    xs.into_iter().fold(1, |acc, x| acc.lcm(&x))
}
