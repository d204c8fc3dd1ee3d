use super::{LinalgError, Ring, RowModule, ZModMatrix};

/// `P · M · Q = D` with `P`, `Q` invertible and `D` diagonal.
///
/// Diagonal entries are exact prime powers `p^v` (or zero), in
/// nondecreasing valuation order: units first, then `p`, …, then zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub p: ZModMatrix,
    pub d: ZModMatrix,
    pub q: ZModMatrix,
}

impl SmithForm {
    /// The diagonal of `D`, of length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<u32> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i))
            .collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|&&d| d != 0).count()
    }
}

/// Result of the elimination; transforms are only kept when requested.
pub(crate) struct Elimination {
    pub diag: Vec<u32>,
    pub p: Option<Vec<Vec<u32>>>,
    /// Rows of `Qᵀ`, so column operations become row operations.
    pub qt: Option<Vec<Vec<u32>>>,
}

fn identity_rows(n: usize) -> Vec<Vec<u32>> {
    (0..n)
        .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
        .collect()
}

/// Pivot: the first entry of least valuation in row-major order over the
/// trailing submatrix, stopping early at the first unit.
fn find_pivot(ring: &Ring, a: &[Vec<u32>], t: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(u32, usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, &x) in row.iter().enumerate().take(cols).skip(t) {
            if x == 0 {
                continue;
            }
            let v = ring.valuation(x);
            if best.map_or(true, |(bv, _, _)| v < bv) {
                best = Some((v, i, j));
                if v == 0 {
                    return Some((i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

pub(crate) fn eliminate(m: &ZModMatrix, track_p: bool, track_q: bool) -> Elimination {
    let ring = m.ring();
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<u32>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut p = track_p.then(|| identity_rows(rows));
    let mut qt = track_q.then(|| identity_rows(cols));
    let mut diag = vec![0; rows.min(cols)];

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = find_pivot(&ring, &a, t, cols) else {
            break;
        };
        a.swap(t, pi);
        if let Some(p) = p.as_mut() {
            p.swap(t, pi);
        }
        if pj != t {
            for row in a.iter_mut().skip(t) {
                row.swap(t, pj);
            }
            if let Some(qt) = qt.as_mut() {
                qt.swap(t, pj);
            }
        }
        let (v, unit_inv) = ring.normalizer(a[t][t]);
        let pivot = ring.prime_power(v);
        ring.scale(&mut a[t][t..], unit_inv);
        if let Some(p) = p.as_mut() {
            ring.scale(&mut p[t], unit_inv);
        }
        let pivot_row = a[t].clone();
        let p_pivot = p.as_ref().map(|p| p[t].clone());
        for i in t + 1..rows {
            let x = a[i][t];
            if x == 0 {
                continue;
            }
            let c = x / pivot;
            ring.sub_mul(&mut a[i][t..], &pivot_row[t..], c);
            if let (Some(p), Some(pr)) = (p.as_mut(), p_pivot.as_ref()) {
                ring.sub_mul(&mut p[i], pr, c);
            }
        }
        for j in t + 1..cols {
            let x = a[t][j];
            if x == 0 {
                continue;
            }
            let c = x / pivot;
            a[t][j] = 0;
            if let Some(qt) = qt.as_mut() {
                let (head, tail) = qt.split_at_mut(j);
                ring.sub_mul(&mut tail[0], &head[t], c);
            }
        }
        diag[t] = pivot;
    }
    Elimination { diag, p, qt }
}

pub fn smith_normal_form(m: &ZModMatrix) -> SmithForm {
    let (rows, cols) = m.shape();
    let modulus = m.modulus();
    let e = eliminate(m, true, true);
    let mut d = ZModMatrix::zeros(modulus, rows, cols);
    for (i, &x) in e.diag.iter().enumerate() {
        d.set(i, i, x);
    }
    let p = ZModMatrix::from_residues(modulus, rows, rows, e.p.unwrap().concat()).unwrap();
    let q = ZModMatrix::from_residues(modulus, cols, cols, e.qt.unwrap().concat())
        .unwrap()
        .transpose();
    SmithForm { p, d, q }
}

/// Kernel generators of the diagonal system in `Q`-coordinates, mapped back.
fn kernel_from_elimination(ring: &Ring, cols: usize, diag: &[u32], qt: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut gens = Vec::new();
    for (i, q_col) in qt.iter().enumerate().take(cols) {
        let d = diag.get(i).copied().unwrap_or(0);
        let scale = if d == 0 {
            1
        } else {
            let v = ring.valuation(d);
            if v == 0 {
                continue;
            }
            ring.prime_power(ring.exponent() - v)
        };
        let mut g = q_col.clone();
        ring.scale(&mut g, scale);
        gens.push(g);
    }
    gens
}

/// Generators of `{x : A·x = 0}`.
pub fn kernel(a: &ZModMatrix) -> Vec<Vec<u32>> {
    let ring = a.ring();
    let cols = a.cols();
    // Tall systems are first compressed to a Howell basis of their row module,
    // which has the same solution set and at most `cols` rows.
    let compressed;
    let a = if a.rows() > cols {
        let mut rm = RowModule::new(a.modulus(), cols);
        for i in 0..a.rows() {
            rm.insert(a.row(i).to_vec());
        }
        compressed = rm.to_matrix();
        &compressed
    } else {
        a
    };
    let e = eliminate(a, false, true);
    kernel_from_elimination(&ring, cols, &e.diag, e.qt.as_ref().unwrap())
}

/// Kernel of the linear map whose matrix has the given (possibly many) rows.
pub(crate) fn kernel_of_rows(
    modulus: u32,
    cols: usize,
    rows: impl IntoIterator<Item = Vec<u32>>,
) -> Vec<Vec<u32>> {
    let mut rm = RowModule::new(modulus, cols);
    for r in rows {
        rm.insert(r);
    }
    let h = rm.to_matrix();
    let ring = h.ring();
    let e = eliminate(&h, false, true);
    kernel_from_elimination(&ring, cols, &e.diag, e.qt.as_ref().unwrap())
}

/// One solution of `A·x = b` (if any) together with kernel generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Option<Vec<u32>>,
    pub kernel: Vec<Vec<u32>>,
}

impl Solution {
    pub fn is_consistent(&self) -> bool {
        self.particular.is_some()
    }
}

pub fn solve(a: &ZModMatrix, b: &[u32]) -> Result<Solution, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::DimensionMismatch {
            op: "solve",
            left: a.shape(),
            right: (b.len(), 1),
        });
    }
    let ring = a.ring();
    let (rows, cols) = a.shape();
    let e = eliminate(a, true, true);
    let p = e.p.as_ref().unwrap();
    let qt = e.qt.as_ref().unwrap();
    let kernel = kernel_from_elimination(&ring, cols, &e.diag, qt);

    let pb: Vec<u32> = p
        .iter()
        .map(|row| ring.reduce(row.iter().zip(b).map(|(&x, &y)| x as u64 * y as u64).sum()))
        .collect();
    let mut y = vec![0u32; cols];
    for i in 0..rows {
        let d = e.diag.get(i).copied().unwrap_or(0);
        let rhs = pb[i] % ring.modulus();
        if d == 0 {
            if rhs != 0 {
                return Ok(Solution {
                    particular: None,
                    kernel,
                });
            }
            continue;
        }
        if rhs % d != 0 {
            return Ok(Solution {
                particular: None,
                kernel,
            });
        }
        y[i] = rhs / d;
    }
    let mut x = vec![0u32; cols];
    for (i, &yi) in y.iter().enumerate() {
        ring.add_mul(&mut x, &qt[i], yi);
    }
    debug_assert_eq!(a.mul_vec(&x), b.iter().map(|v| v % ring.modulus()).collect::<Vec<_>>());
    Ok(Solution {
        particular: Some(x),
        kernel,
    })
}
