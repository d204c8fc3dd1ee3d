use std::collections::HashMap;

use crate::linalg::{GroupHom, ZModMatrix};

use super::bimodule::{hom, hom_tensor, reduce_rows};
use super::category::ProjTruncation;
use super::complex::{boundary_matrix, coboundary_matrix, SeqSpace, Variance};
use super::{CatError, MODULUS};

fn unit(rows: usize, cols: usize, i: usize, j: usize) -> ZModMatrix {
    let mut e = ZModMatrix::zeros(MODULUS, rows, cols);
    e.set(i, j, 1);
    e
}

fn trace(m: &ZModMatrix) -> u32 {
    (0..m.rows().min(m.cols())).map(|i| m.get(i, i)).sum::<u32>() % MODULUS
}

/// `Hom(Hom(Q,P), M) <-α- M ⊗ Hom(P,Q) -β-> Hom(P, M ⊗ Q)` for free
/// `P = R^p`, `Q = R^q` over `R = Z/4`.
///
/// Coordinates: `M ⊗ Hom(P,Q)` at `(i·p + j)·K + k` for `m_k ⊗ E_ij`;
/// `Hom(Hom(Q,P), M)` at `(a·q + b)·K + k`, the `k`-th component of the
/// value on `E_ab`; `Hom(P, M ⊗ Q)` at `(i·p + b)·K + k`, the `(i, k)`
/// component of the image of `e_b`.
#[derive(Clone, Debug)]
pub struct TraceDuality {
    pub p: usize,
    pub q: usize,
    pub m: Vec<u32>,
    pub alpha: GroupHom,
    pub beta: GroupHom,
}

impl TraceDuality {
    /// `α∘β⁻¹ : Hom(P, M ⊗ Q) → Hom(Hom(Q,P), M)`.
    pub fn comparison(&self) -> Option<GroupHom> {
        Some(self.alpha.compose(&self.beta.inverse()?))
    }
}

pub fn trace_duality(p: usize, q: usize, m: &[u32]) -> Result<TraceDuality, CatError> {
    if p > 3 || q > 3 {
        return Err(CatError::SizeLimit {
            what: "trace duality rank".into(),
            count: p.max(q),
            limit: 3,
        });
    }
    if m.iter().any(|&o| o != 2 && o != 4) {
        return Err(CatError::BadCoefficients(m.to_vec()));
    }
    let kk = m.len();
    let dim = p * q * kk;
    let orders: Vec<u32> = m.iter().copied().cycle().take(dim).collect();
    let mut alpha = ZModMatrix::zeros(MODULUS, dim, dim);
    let mut beta = ZModMatrix::zeros(MODULUS, dim, dim);
    for i in 0..q {
        for j in 0..p {
            let f = unit(q, p, i, j);
            for k in 0..kk {
                let col = (i * p + j) * kk + k;
                // α(m ⊗ f)(g) = m · trace(f g)
                for a in 0..p {
                    for b in 0..q {
                        let g = unit(p, q, a, b);
                        alpha.set((a * q + b) * kk + k, col, trace(&f.mul(&g)));
                    }
                }
                // β(m ⊗ f)(x) = m ⊗ f(x)
                for b in 0..p {
                    let mut e = vec![0; p];
                    e[b] = 1;
                    for (i2, y) in f.mul_vec(&e).into_iter().enumerate() {
                        beta.set((i2 * p + b) * kk + k, col, y);
                    }
                }
            }
        }
    }
    let alpha = GroupHom::new(orders.clone(), orders.clone(), reduce_rows(&alpha, &orders))?;
    let beta = GroupHom::new(orders.clone(), orders.clone(), reduce_rows(&beta, &orders))?;
    Ok(TraceDuality {
        p,
        q,
        m: m.to_vec(),
        alpha,
        beta,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeComparison {
    pub degree: usize,
    pub dim: usize,
    pub bijective: bool,
    /// Basis elements of `F^n` on which `Ψ d = δ Ψ` fails.
    pub failures: usize,
}

/// The comparison `F^*(P, Hom(−, M ⊗ −)) → Hom(F_*(P, Hom), M)` built from
/// `α∘β⁻¹` sequence by sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dualization {
    pub degrees: Vec<DegreeComparison>,
}

impl Dualization {
    pub fn holds(&self) -> bool {
        self.degrees.iter().all(|d| d.bijective && d.failures == 0)
    }
}

struct Side {
    /// Orders of `Hom(F_n, M)`, `(chain coordinate)·K + k`.
    left: Vec<u32>,
    right: SeqSpace,
    psi: ZModMatrix,
}

fn side(trunc: &ProjTruncation, m: &[u32], n: usize, duals: &mut HashMap<(usize, usize), GroupHom>) -> Result<(SeqSpace, Side), CatError> {
    let cat = trunc.category();
    let l = hom(trunc);
    let lm = hom_tensor(trunc, m)?;
    let kk = m.len();
    let chains = SeqSpace::new(cat, &l, n, Variance::Chain, false)?;
    let right = SeqSpace::new(cat, &lm, n, Variance::Cochain, false)?;
    assert_eq!(chains.sequences(), right.sequences());
    let left: Vec<u32> = (0..chains.dim()).flat_map(|_| m.iter().copied()).collect();
    let mut psi = ZModMatrix::zeros(MODULUS, left.len(), right.dim());
    for (s, seq) in right.sequences().iter().enumerate() {
        let x0 = cat.target(seq[0] as usize);
        let xn = cat.source(*seq.last().unwrap() as usize);
        let (p, q) = (xn, x0);
        if p * q * kk == 0 {
            continue;
        }
        if !duals.contains_key(&(p, q)) {
            let c = trace_duality(p, q, m)?.comparison().expect("β is bijective");
            duals.insert((p, q), c);
        }
        let block = duals[&(p, q)].matrix();
        let r0 = chains.block(s).start * kk;
        let c0 = right.block(s).start;
        psi.paste(r0, c0, block);
    }
    Ok((chains, Side { left, right, psi }))
}

/// Builds both complexes on `P(Z/4)_{≤1}` in degrees `0..=max_degree` and
/// checks that `α∘β⁻¹` is a degreewise bijection commuting with the
/// differentials, where `Hom(F_*, M)` carries `δφ = φ∘d`.
pub fn dualize_chain_complex(trunc: &ProjTruncation, m: &[u32], max_degree: usize) -> Result<Dualization, CatError> {
    if trunc.modulus() != MODULUS {
        return Err(CatError::UnsupportedModulus(trunc.modulus()));
    }
    if trunc.max_rank() > 1 {
        return Err(CatError::SizeLimit {
            what: "truncation rank for dualization".into(),
            count: trunc.max_rank(),
            limit: 1,
        });
    }
    let cat = trunc.category();
    let l = hom(trunc);
    let lm = hom_tensor(trunc, m)?;
    let kk = m.len();
    let mut duals = HashMap::new();
    let mut sides = Vec::new();
    for n in 0..=max_degree + 1 {
        sides.push(side(trunc, m, n, &mut duals)?);
    }
    let mut degrees = Vec::new();
    for n in 0..=max_degree {
        let (chains, here) = &sides[n];
        let (chains_up, up) = &sides[n + 1];
        // δ on Hom(F_n, M): (δφ)(u) = φ(d u), d : F_{n+1} → F_n
        let d = boundary_matrix(cat, &l, chains_up, chains);
        let mut delta = ZModMatrix::zeros(MODULUS, up.left.len(), here.left.len());
        for (v, row) in d.rows.iter().enumerate() {
            for &(u, x) in row {
                for k in 0..kk {
                    delta.set(u * kk + k, v * kk + k, x);
                }
            }
        }
        let d_right = coboundary_matrix(cat, &lm, &here.right, &up.right).to_dense();
        let lhs = reduce_rows(&up.psi.mul(&d_right), &up.left);
        let rhs = reduce_rows(&delta.mul(&here.psi), &up.left);
        let failures = (0..lhs.cols()).filter(|&j| lhs.column_vec(j) != rhs.column_vec(j)).count();
        let psi = GroupHom::new(here.right.orders().to_vec(), here.left.clone(), reduce_rows(&here.psi, &here.left))?;
        degrees.push(DegreeComparison {
            degree: n,
            dim: here.right.dim(),
            bijective: psi.is_bijective(),
            failures,
        });
    }
    Ok(Dualization { degrees })
}
