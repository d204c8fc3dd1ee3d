use std::fmt;

use serde::{Deserialize, Serialize};

use super::{LinalgError, Ring};

/// A dense `rows × cols` matrix over Z/m, stored row-major.
///
/// Zero-row and zero-column matrices are valid and represent maps to or from
/// the zero object.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix")]
pub struct ZModMatrix {
    modulus: u32,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

#[derive(Deserialize)]
struct RawMatrix {
    modulus: u32,
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl TryFrom<RawMatrix> for ZModMatrix {
    type Error = LinalgError;

    fn try_from(raw: RawMatrix) -> Result<Self, Self::Error> {
        ZModMatrix::from_i64(raw.modulus, raw.rows, raw.cols, &raw.entries)
    }
}

impl ZModMatrix {
    pub fn zeros(modulus: u32, rows: usize, cols: usize) -> Self {
        Ring::new(modulus).expect("unsupported modulus");
        ZModMatrix {
            modulus,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(modulus: u32, n: usize) -> Self {
        Self::scalar(modulus, n, 1)
    }

    /// `s` times the identity.
    pub fn scalar(modulus: u32, n: usize, s: i64) -> Self {
        let mut m = Self::zeros(modulus, n, n);
        let s = m.ring().from_i64(s);
        for i in 0..n {
            m.entries[i * n + i] = s;
        }
        m
    }

    pub fn diagonal(modulus: u32, diag: &[i64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(modulus, n, n);
        let ring = m.ring();
        for (i, d) in diag.iter().enumerate() {
            m.entries[i * n + i] = ring.from_i64(*d);
        }
        m
    }

    /// Builds a matrix from signed integers, reducing each modulo `modulus`.
    pub fn from_i64(
        modulus: u32,
        rows: usize,
        cols: usize,
        entries: &[i64],
    ) -> Result<Self, LinalgError> {
        let ring = Ring::new(modulus)?;
        if entries.len() != rows * cols {
            return Err(LinalgError::EntryCount {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(ZModMatrix {
            modulus,
            rows,
            cols,
            entries: entries.iter().map(|&x| ring.from_i64(x)).collect(),
        })
    }

    /// Builds a matrix from already-reduced residues.
    pub fn from_residues(
        modulus: u32,
        rows: usize,
        cols: usize,
        entries: Vec<u32>,
    ) -> Result<Self, LinalgError> {
        Ring::new(modulus)?;
        if entries.len() != rows * cols {
            return Err(LinalgError::EntryCount {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        if let Some(&bad) = entries.iter().find(|&&x| x >= modulus) {
            return Err(LinalgError::UnreducedEntry {
                value: bad as i64,
                modulus,
            });
        }
        Ok(ZModMatrix {
            modulus,
            rows,
            cols,
            entries,
        })
    }

    /// Convenience constructor from nested rows; panics on ragged input.
    pub fn from_rows(modulus: u32, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let flat: Vec<i64> = rows.iter().flat_map(|row| row.iter().copied()).collect();
        Self::from_i64(modulus, r, c, &flat).expect("valid matrix")
    }

    pub fn column(modulus: u32, v: &[u32]) -> Self {
        Self::from_residues(modulus, v.len(), 1, v.iter().map(|x| x % modulus).collect())
            .expect("valid column")
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn ring(&self) -> Ring {
        Ring::new(self.modulus).expect("validated at construction")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: u32) {
        self.entries[i * self.cols + j] = value % self.modulus;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column_vec(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.modulus, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &ZModMatrix) -> Result<ZModMatrix, LinalgError> {
        if self.modulus != rhs.modulus {
            return Err(LinalgError::ModulusMismatch(self.modulus, rhs.modulus));
        }
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "mul",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let ring = self.ring();
        let mut out = Self::zeros(self.modulus, self.rows, rhs.cols);
        for i in 0..self.rows {
            let dst = &mut out.entries[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a != 0 {
                    ring.add_mul(dst, rhs.row(k), a);
                }
            }
        }
        Ok(out)
    }

    /// Matrix product; panics on a shape or modulus mismatch.
    pub fn mul(&self, rhs: &ZModMatrix) -> ZModMatrix {
        self.checked_mul(rhs).unwrap()
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "vector length");
        let ring = self.ring();
        (0..self.rows)
            .map(|i| {
                let acc = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum::<u64>();
                ring.reduce(acc)
            })
            .collect()
    }

    fn zip_with(&self, rhs: &ZModMatrix, f: impl Fn(u32, u32) -> u32) -> ZModMatrix {
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch");
        ZModMatrix {
            modulus: self.modulus,
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn add(&self, rhs: &ZModMatrix) -> ZModMatrix {
        let ring = self.ring();
        self.zip_with(rhs, |a, b| ring.add(a, b))
    }

    pub fn sub(&self, rhs: &ZModMatrix) -> ZModMatrix {
        let ring = self.ring();
        self.zip_with(rhs, |a, b| ring.sub(a, b))
    }

    pub fn neg(&self) -> ZModMatrix {
        self.scale(-1)
    }

    pub fn scale(&self, s: i64) -> ZModMatrix {
        let ring = self.ring();
        let s = ring.from_i64(s);
        let mut out = self.clone();
        ring.scale(&mut out.entries, s);
        out
    }

    /// Reinterprets the entries modulo a divisor of the current modulus.
    pub fn reduce_mod(&self, modulus: u32) -> ZModMatrix {
        assert!(self.modulus % modulus == 0, "{modulus} does not divide {}", self.modulus);
        ZModMatrix::from_residues(
            modulus,
            self.rows,
            self.cols,
            self.entries.iter().map(|x| x % modulus).collect(),
        )
        .expect("divisor modulus")
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let mut out = Self::zeros(self.modulus, rows.len(), cols.len());
        for (oi, i) in rows.clone().enumerate() {
            for (oj, j) in cols.clone().enumerate() {
                out.entries[oi * out.cols + oj] = self.get(i, j);
            }
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &ZModMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.entries[(r0 + i) * self.cols + c0 + j] = block.get(i, j) % self.modulus;
            }
        }
    }

    pub fn block_diag(modulus: u32, blocks: &[&ZModMatrix]) -> ZModMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(modulus, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.paste(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    /// Assembles `[[a, b], [c, d]]`; blocks in a row share a row count.
    pub fn block2(a: &ZModMatrix, b: &ZModMatrix, c: &ZModMatrix, d: &ZModMatrix) -> ZModMatrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let mut out = Self::zeros(a.modulus, a.rows + c.rows, a.cols + b.cols);
        out.paste(0, 0, a);
        out.paste(0, a.cols, b);
        out.paste(a.rows, 0, c);
        out.paste(a.rows, a.cols, d);
        out
    }

    pub fn hstack(&self, rhs: &ZModMatrix) -> ZModMatrix {
        assert_eq!(self.rows, rhs.rows);
        let mut out = Self::zeros(self.modulus, self.rows, self.cols + rhs.cols);
        out.paste(0, 0, self);
        out.paste(0, self.cols, rhs);
        out
    }

    pub fn vstack(&self, rhs: &ZModMatrix) -> ZModMatrix {
        assert_eq!(self.cols, rhs.cols);
        let mut out = Self::zeros(self.modulus, self.rows + rhs.rows, self.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, 0, rhs);
        out
    }

    /// Rank of the reduction modulo the residue prime.
    pub fn residue_rank(&self) -> usize {
        let ring = self.ring();
        let p = ring.prime();
        let field = Ring::new(p).expect("prime modulus");
        let mut rows: Vec<Vec<u32>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x % p).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(rank, piv);
            let inv = field.inverse(rows[rank][col]).unwrap();
            field.scale(&mut rows[rank], inv);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[col] != 0 {
                    let c = row[col];
                    field.sub_mul(row, &pivot_row, c);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Over a local ring a square matrix is invertible exactly when its
    /// reduction modulo the maximal ideal is.
    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.residue_rank() == self.rows
    }

    pub fn inverse(&self) -> Option<ZModMatrix> {
        if !self.is_invertible() {
            return None;
        }
        let n = self.rows;
        let ring = self.ring();
        let mut a: Vec<Vec<u32>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut inv: Vec<Vec<u32>> = (0..n)
            .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| ring.is_unit(a[r][col]))?;
            a.swap(col, piv);
            inv.swap(col, piv);
            let u = ring.inverse(a[col][col]).unwrap();
            ring.scale(&mut a[col], u);
            ring.scale(&mut inv[col], u);
            let (pa, pi) = (a[col].clone(), inv[col].clone());
            for r in 0..n {
                if r != col && a[r][col] != 0 {
                    let c = a[r][col];
                    ring.sub_mul(&mut a[r], &pa, c);
                    ring.sub_mul(&mut inv[r], &pi, c);
                }
            }
        }
        Some(ZModMatrix {
            modulus: self.modulus,
            rows: n,
            cols: n,
            entries: inv.into_iter().flatten().collect(),
        })
    }

    /// The matrix of a Z/m-linear map, found by evaluating it on unit vectors.
    pub fn from_linear_map(
        modulus: u32,
        inputs: usize,
        outputs: usize,
        f: impl Fn(&[u32]) -> Vec<u32>,
    ) -> ZModMatrix {
        let mut out = Self::zeros(modulus, outputs, inputs);
        let mut e = vec![0u32; inputs];
        for j in 0..inputs {
            e[j] = 1;
            let col = f(&e);
            assert_eq!(col.len(), outputs, "linear map output length");
            for (i, &x) in col.iter().enumerate() {
                out.entries[i * inputs + j] = x % modulus;
            }
            e[j] = 0;
        }
        out
    }

    /// Row-major flattening, used to treat a Hom-group as a residue module.
    pub fn to_vector(&self) -> Vec<u32> {
        self.entries.clone()
    }

    pub fn from_vector(modulus: u32, rows: usize, cols: usize, v: &[u32]) -> ZModMatrix {
        Self::from_residues(modulus, rows, cols, v.iter().map(|x| x % modulus).collect())
            .expect("vector length matches shape")
    }
}

impl fmt::Debug for ZModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}{}", self.modulus, self)
    }
}

impl fmt::Display for ZModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        if self.rows == 0 || self.cols == 0 {
            write!(f, "{}x{}", self.rows, self.cols)?;
        }
        write!(f, "]")
    }
}
