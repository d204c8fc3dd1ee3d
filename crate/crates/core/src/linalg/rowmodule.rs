use super::{Ring, ZModMatrix};

/// A submodule of `(Z/p^e)^n`, kept as a Howell basis.
///
/// Rows have distinct leading columns and each leading entry is an exact
/// prime power. The Howell property holds: for every column `c`, the
/// elements of the module that vanish before `c` are spanned by the rows
/// leading at `c` or later. This makes reduction modulo the module canonical.
#[derive(Clone, Debug)]
pub struct RowModule {
    ring: Ring,
    dim: usize,
    /// `slot[c]` is the index into `rows` of the row leading at column `c`.
    slot: Vec<Option<usize>>,
    rows: Vec<Vec<u32>>,
    lead: Vec<(usize, u32)>,
}

fn first_nonzero(v: &[u32]) -> Option<usize> {
    v.iter().position(|&x| x != 0)
}

impl RowModule {
    pub fn new(modulus: u32, dim: usize) -> Self {
        RowModule {
            ring: Ring::new(modulus).expect("unsupported modulus"),
            dim,
            slot: vec![None; dim],
            rows: Vec::new(),
            lead: Vec::new(),
        }
    }

    pub fn from_generators<I, V>(modulus: u32, dim: usize, gens: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[u32]>,
    {
        let mut rm = Self::new(modulus, dim);
        for g in gens {
            rm.insert(g.as_ref().to_vec());
        }
        rm
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn modulus(&self) -> u32 {
        self.ring.modulus()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Adds a generator. Returns whether the module grew.
    pub fn insert(&mut self, v: Vec<u32>) -> bool {
        assert_eq!(v.len(), self.dim, "generator length");
        let ring = self.ring;
        let e = ring.exponent();
        let mut grew = false;
        let mut stack = vec![v];
        while let Some(mut r) = stack.pop() {
            while let Some(c) = first_nonzero(&r) {
                let (w, unit_inv) = ring.normalizer(r[c]);
                if unit_inv != 1 {
                    ring.scale(&mut r[c..], unit_inv);
                }
                match self.slot[c] {
                    None => {
                        if w > 0 {
                            let mut ann = r.clone();
                            ring.scale(&mut ann[c..], ring.prime_power(e - w));
                            stack.push(ann);
                        }
                        self.slot[c] = Some(self.rows.len());
                        self.rows.push(r);
                        self.lead.push((c, w));
                        grew = true;
                        break;
                    }
                    Some(idx) => {
                        let v = self.lead[idx].1;
                        if w >= v {
                            let c_mul = ring.prime_power(w - v);
                            ring.sub_mul(&mut r[c..], &self.rows[idx][c..], c_mul);
                        } else {
                            if w > 0 {
                                let mut ann = r.clone();
                                ring.scale(&mut ann[c..], ring.prime_power(e - w));
                                stack.push(ann);
                            }
                            let old = std::mem::replace(&mut self.rows[idx], r);
                            self.lead[idx] = (c, w);
                            r = old;
                            let c_mul = ring.prime_power(v - w);
                            ring.sub_mul(&mut r[c..], &self.rows[idx][c..], c_mul);
                            grew = true;
                        }
                    }
                }
            }
        }
        grew
    }

    /// Canonical representative of `v` modulo the module.
    pub fn reduce(&self, v: &mut [u32]) {
        for c in 0..self.dim {
            if v[c] == 0 {
                continue;
            }
            if let Some(idx) = self.slot[c] {
                let pivot = self.ring.prime_power(self.lead[idx].1);
                let q = v[c] / pivot;
                if q != 0 {
                    self.ring.sub_mul(&mut v[c..], &self.rows[idx][c..], q);
                }
            }
        }
    }

    pub fn reduced(&self, v: &[u32]) -> Vec<u32> {
        let mut out = v.to_vec();
        self.reduce(&mut out);
        out
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduced(v).iter().all(|&x| x == 0)
    }

    /// Coefficients `z` (indexed like [`Self::basis`]) with `Σ z_i b_i = v`.
    pub fn decompose(&self, v: &[u32]) -> Option<Vec<u32>> {
        let mut r = v.to_vec();
        let order = self.basis_order();
        let mut position = vec![0usize; self.rows.len()];
        for (k, &idx) in order.iter().enumerate() {
            position[idx] = k;
        }
        let mut z = vec![0u32; self.rows.len()];
        for c in 0..self.dim {
            if r[c] == 0 {
                continue;
            }
            let idx = self.slot[c]?;
            let pivot = self.ring.prime_power(self.lead[idx].1);
            if r[c] % pivot != 0 {
                return None;
            }
            let q = r[c] / pivot;
            self.ring.sub_mul(&mut r[c..], &self.rows[idx][c..], q);
            z[position[idx]] = q;
        }
        Some(z)
    }

    fn basis_order(&self) -> Vec<usize> {
        self.slot.iter().flatten().copied().collect()
    }

    /// Basis rows in increasing order of leading column.
    pub fn basis(&self) -> Vec<&[u32]> {
        self.basis_order()
            .into_iter()
            .map(|i| self.rows[i].as_slice())
            .collect()
    }

    /// `(leading column, valuation of the leading entry)` per basis row.
    pub fn leads(&self) -> Vec<(usize, u32)> {
        self.basis_order().into_iter().map(|i| self.lead[i]).collect()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `log_p` of the number of elements.
    pub fn log_order(&self) -> u32 {
        let e = self.ring.exponent();
        self.lead.iter().map(|&(_, w)| e - w).sum()
    }

    /// Number of elements; saturates for very large modules.
    pub fn order(&self) -> u128 {
        (self.ring.prime() as u128)
            .checked_pow(self.log_order())
            .unwrap_or(u128::MAX)
    }

    pub fn is_submodule_of(&self, other: &RowModule) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn same_module(&self, other: &RowModule) -> bool {
        self.is_submodule_of(other) && other.is_submodule_of(self)
    }

    pub fn to_matrix(&self) -> ZModMatrix {
        let b = self.basis();
        ZModMatrix::from_residues(self.modulus(), b.len(), self.dim, b.concat())
            .expect("rows have module dimension")
    }

    /// Relations among the basis rows: generators of
    /// `{z : Σ z_i b_i = 0}`. For a Howell basis these come from the
    /// annihilator multiple of each non-unit leading row.
    pub fn relations(&self) -> Vec<Vec<u32>> {
        let ring = self.ring;
        let e = ring.exponent();
        let order = self.basis_order();
        let mut rels = Vec::new();
        for (k, &idx) in order.iter().enumerate() {
            let (_, w) = self.lead[idx];
            if w == 0 {
                continue;
            }
            let s = ring.prime_power(e - w);
            let mut ann = self.rows[idx].clone();
            ring.scale(&mut ann, s);
            let mut z = self
                .decompose(&ann)
                .expect("annihilator multiple lies in the module");
            z[k] = ring.sub(z[k], s);
            rels.push(z);
        }
        rels
    }
}
