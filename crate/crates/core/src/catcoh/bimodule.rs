use crate::linalg::ZModMatrix;

use super::category::{FinCategory, Functor, ProjTruncation};
use super::{CatError, MODULUS};

/// Reduces row `i` modulo `orders[i]`.
pub(crate) fn reduce_rows(m: &ZModMatrix, orders: &[u32]) -> ZModMatrix {
    let mut out = m.clone();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(i, j, m.get(i, j) % orders[i]);
        }
    }
    out
}

/// `y = A x` reduced by the target orders.
pub(crate) fn apply(m: &ZModMatrix, x: &[u32], orders: &[u32]) -> Vec<u32> {
    let mut y = m.mul_vec(x);
    super::reduce_by(&mut y, orders);
    y
}

/// A functor `C^op × C → Ab` with finite `Z/4`-module values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    objects: usize,
    /// Orders of `L(x, y)`, at `x * objects + y`.
    groups: Vec<Vec<u32>>,
    /// `left[σ][w] = L(w, σ) : L(w, s) → L(w, t)` for `σ : s → t`.
    left: Vec<Vec<ZModMatrix>>,
    /// `right[σ][w] = L(σ, w) : L(t, w) → L(s, w)` for `σ : s → t`.
    right: Vec<Vec<ZModMatrix>>,
}

impl Bimodule {
    /// Assembles a bimodule and checks the axioms exhaustively.
    pub fn new(
        cat: &FinCategory,
        groups: Vec<Vec<u32>>,
        left: Vec<Vec<ZModMatrix>>,
        right: Vec<Vec<ZModMatrix>>,
    ) -> Result<Self, CatError> {
        let b = Self::unchecked(cat, groups, left, right);
        b.check(cat)?;
        Ok(b)
    }

    fn unchecked(
        cat: &FinCategory,
        groups: Vec<Vec<u32>>,
        left: Vec<Vec<ZModMatrix>>,
        right: Vec<Vec<ZModMatrix>>,
    ) -> Self {
        let n = cat.object_count();
        let mut b = Bimodule {
            objects: n,
            groups,
            left,
            right,
        };
        for m in 0..cat.morphism_count() {
            let (s, t) = (cat.source(m), cat.target(m));
            for w in 0..n {
                b.left[m][w] = reduce_rows(&b.left[m][w], &b.groups[w * n + t]);
                b.right[m][w] = reduce_rows(&b.right[m][w], &b.groups[s * n + w]);
            }
        }
        b
    }

    pub fn zero(cat: &FinCategory) -> Self {
        let n = cat.object_count();
        let empty = ZModMatrix::zeros(MODULUS, 0, 0);
        Bimodule {
            objects: n,
            groups: vec![Vec::new(); n * n],
            left: vec![vec![empty.clone(); n]; cat.morphism_count()],
            right: vec![vec![empty; n]; cat.morphism_count()],
        }
    }

    /// Orders of the coordinates of `L(x, y)`.
    pub fn group(&self, x: usize, y: usize) -> &[u32] {
        &self.groups[x * self.objects + y]
    }

    /// `L(w, σ)`.
    pub fn left(&self, sigma: usize, w: usize) -> &ZModMatrix {
        &self.left[sigma][w]
    }

    /// `L(σ, w)`.
    pub fn right(&self, sigma: usize, w: usize) -> &ZModMatrix {
        &self.right[sigma][w]
    }

    /// `L(*, −) = 0` and `L(−, *) = 0`.
    pub fn is_reduced(&self, cat: &FinCategory) -> Result<bool, CatError> {
        let z = cat.zero_object().ok_or(CatError::NoZeroObject)?;
        Ok((0..self.objects).all(|x| self.group(z, x).is_empty() && self.group(x, z).is_empty()))
    }

    pub fn check(&self, cat: &FinCategory) -> Result<(), CatError> {
        let n = self.objects;
        let err = |s: String| Err(CatError::NotBimodule(s));
        if self.groups.len() != n * n || self.left.len() != cat.morphism_count() || self.right.len() != cat.morphism_count() {
            return err("wrong number of groups or actions".into());
        }
        for o in &self.groups {
            if o.iter().any(|&x| x != 2 && x != 4) {
                return err(format!("orders {o:?}"));
            }
        }
        for m in 0..cat.morphism_count() {
            let (s, t) = (cat.source(m), cat.target(m));
            for w in 0..n {
                let l = &self.left[m][w];
                let r = &self.right[m][w];
                if l.shape() != (self.group(w, t).len(), self.group(w, s).len())
                    || r.shape() != (self.group(s, w).len(), self.group(t, w).len())
                {
                    return err(format!("action shapes of {}", cat.name(m)));
                }
                // well defined on the source relations
                for (j, &o) in self.group(w, s).iter().enumerate() {
                    for (i, &ot) in self.group(w, t).iter().enumerate() {
                        if (o * l.get(i, j)) % ot != 0 {
                            return err(format!("left action of {} is not well defined", cat.name(m)));
                        }
                    }
                }
                for (j, &o) in self.group(t, w).iter().enumerate() {
                    for (i, &ot) in self.group(s, w).iter().enumerate() {
                        if (o * r.get(i, j)) % ot != 0 {
                            return err(format!("right action of {} is not well defined", cat.name(m)));
                        }
                    }
                }
            }
        }
        for x in 0..n {
            let id = cat.identity(x);
            for w in 0..n {
                if self.left[id][w] != reduce_rows(&ZModMatrix::identity(MODULUS, self.group(w, x).len()), self.group(w, x))
                    || self.right[id][w]
                        != reduce_rows(&ZModMatrix::identity(MODULUS, self.group(x, w).len()), self.group(x, w))
                {
                    return err(format!("identity of {} acts nontrivially", cat.objects()[x]));
                }
            }
        }
        for g in 0..cat.morphism_count() {
            for f in 0..cat.morphism_count() {
                let Some(gf) = cat.compose(g, f) else { continue };
                let (s, t) = (cat.source(f), cat.target(g));
                for w in 0..n {
                    let l = reduce_rows(&self.left[g][w].mul(&self.left[f][w]), self.group(w, t));
                    if l != self.left[gf][w] {
                        return err(format!("left action of {}∘{}", cat.name(g), cat.name(f)));
                    }
                    let r = reduce_rows(&self.right[f][w].mul(&self.right[g][w]), self.group(s, w));
                    if r != self.right[gf][w] {
                        return err(format!("right action of {}∘{}", cat.name(g), cat.name(f)));
                    }
                }
            }
        }
        // L(τ, t)L(s, σ) = L(u, σ)L(τ, s) on L(v, s) for σ : s → t, τ : u → v
        for sigma in 0..cat.morphism_count() {
            let (s, t) = (cat.source(sigma), cat.target(sigma));
            for tau in 0..cat.morphism_count() {
                let (u, v) = (cat.source(tau), cat.target(tau));
                let a = self.right[tau][t].mul(&self.left[sigma][v]);
                let b = self.left[sigma][u].mul(&self.right[tau][s]);
                let o = self.group(u, t);
                if reduce_rows(&a, o) != reduce_rows(&b, o) {
                    return err(format!("actions of {} and {} do not commute", cat.name(sigma), cat.name(tau)));
                }
            }
        }
        Ok(())
    }

    /// `L(F−, F−)` on the source category of `F`.
    pub fn pullback(&self, source: &FinCategory, f: &Functor) -> Bimodule {
        let n = source.object_count();
        let mut groups = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                groups.push(self.group(f.object(x), f.object(y)).to_vec());
            }
        }
        let left = (0..source.morphism_count())
            .map(|m| (0..n).map(|w| self.left[f.morphism(m)][f.object(w)].clone()).collect())
            .collect();
        let right = (0..source.morphism_count())
            .map(|m| (0..n).map(|w| self.right[f.morphism(m)][f.object(w)].clone()).collect())
            .collect();
        Bimodule {
            objects: n,
            groups,
            left,
            right,
        }
    }
}

/// `Hom_R(−, M ⊗_R −)` on a truncation of `P(R)`, with `M = ⊕ Z/m_k`.
///
/// `L(r, s) = M^{s×r}`, coordinate `(i·r + j)·K + k` holding the `k`-th
/// component of entry `(i, j)`.
pub fn hom_tensor(trunc: &ProjTruncation, m: &[u32]) -> Result<Bimodule, CatError> {
    let ring = trunc.modulus();
    if m.iter().any(|&o| o == 0 || ring % o != 0 || o == 1) {
        return Err(CatError::BadCoefficients(m.to_vec()));
    }
    let cat = trunc.category();
    let n = cat.object_count();
    let kk = m.len();
    let mut groups = Vec::with_capacity(n * n);
    for r in 0..n {
        for s in 0..n {
            groups.push(m.iter().copied().cycle().take(r * s * kk).collect());
        }
    }
    let mut left = Vec::with_capacity(cat.morphism_count());
    let mut right = Vec::with_capacity(cat.morphism_count());
    for sigma in 0..cat.morphism_count() {
        let a = trunc.matrix(sigma);
        let (s, t) = (cat.source(sigma), cat.target(sigma));
        let mut ls = Vec::with_capacity(n);
        let mut rs = Vec::with_capacity(n);
        for w in 0..n {
            // M^{s×w} → M^{t×w}, x ↦ A x
            let mut l = ZModMatrix::zeros(MODULUS, t * w * kk, s * w * kk);
            for i2 in 0..t {
                for i in 0..s {
                    for j in 0..w {
                        for k in 0..kk {
                            l.set((i2 * w + j) * kk + k, (i * w + j) * kk + k, a.get(i2, i));
                        }
                    }
                }
            }
            // M^{w×t} → M^{w×s}, x ↦ x A
            let mut r = ZModMatrix::zeros(MODULUS, w * s * kk, w * t * kk);
            for i in 0..w {
                for j2 in 0..s {
                    for j in 0..t {
                        for k in 0..kk {
                            r.set((i * s + j2) * kk + k, (i * t + j) * kk + k, a.get(j, j2));
                        }
                    }
                }
            }
            ls.push(l);
            rs.push(r);
        }
        left.push(ls);
        right.push(rs);
    }
    Ok(Bimodule::unchecked(cat, groups, left, right))
}

/// `Hom_R(−, −)` on a truncation of `P(R)`.
pub fn hom(trunc: &ProjTruncation) -> Bimodule {
    hom_tensor(trunc, &[trunc.modulus()]).expect("R is an R-module")
}

/// A natural transformation `L → L'`, one matrix per object pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleMorphism {
    objects: usize,
    maps: Vec<ZModMatrix>,
}

impl BimoduleMorphism {
    /// Checks shapes, well-definedness and naturality in both variables.
    pub fn new(
        cat: &FinCategory,
        source: &Bimodule,
        target: &Bimodule,
        maps: Vec<ZModMatrix>,
    ) -> Result<Self, CatError> {
        let n = cat.object_count();
        let mut out = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let t = &maps[x * n + y];
                let (src, tgt) = (source.group(x, y), target.group(x, y));
                if t.shape() != (tgt.len(), src.len()) {
                    return Err(CatError::NotBimodule(format!("map at ({x}, {y}) has the wrong shape")));
                }
                for (j, &o) in src.iter().enumerate() {
                    for (i, &ot) in tgt.iter().enumerate() {
                        if (o * t.get(i, j)) % ot != 0 {
                            return Err(CatError::NotBimodule(format!("map at ({x}, {y}) is not well defined")));
                        }
                    }
                }
                out.push(reduce_rows(t, tgt));
            }
        }
        let tm = BimoduleMorphism { objects: n, maps: out };
        for sigma in 0..cat.morphism_count() {
            let (s, t) = (cat.source(sigma), cat.target(sigma));
            for w in 0..n {
                let a = tm.map(w, t).mul(source.left(sigma, w));
                let b = target.left(sigma, w).mul(tm.map(w, s));
                let o = target.group(w, t);
                let c = tm.map(s, w).mul(source.right(sigma, w));
                let d = target.right(sigma, w).mul(tm.map(t, w));
                let o2 = target.group(s, w);
                if reduce_rows(&a, o) != reduce_rows(&b, o) || reduce_rows(&c, o2) != reduce_rows(&d, o2) {
                    return Err(CatError::NotNatural { morphism: sigma, object: w });
                }
            }
        }
        Ok(tm)
    }

    pub fn identity(cat: &FinCategory, l: &Bimodule) -> Self {
        let n = cat.object_count();
        let mut maps = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let o = l.group(x, y);
                maps.push(reduce_rows(&ZModMatrix::identity(MODULUS, o.len()), o));
            }
        }
        BimoduleMorphism { objects: n, maps }
    }

    pub fn map(&self, x: usize, y: usize) -> &ZModMatrix {
        &self.maps[x * self.objects + y]
    }

    pub fn pullback(&self, source: &FinCategory, f: &Functor) -> BimoduleMorphism {
        let n = source.object_count();
        let mut maps = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                maps.push(self.map(f.object(x), f.object(y)).clone());
            }
        }
        BimoduleMorphism { objects: n, maps }
    }
}

/// `Hom(−, t ⊗ −) : Hom(−, M ⊗ −) → Hom(−, M' ⊗ −)` for a module map
/// `t : M → M'` given as a `|M'| × |M|` matrix.
pub fn coefficient_map(
    trunc: &ProjTruncation,
    m: &[u32],
    m2: &[u32],
    t: &ZModMatrix,
) -> Result<(Bimodule, Bimodule, BimoduleMorphism), CatError> {
    let source = hom_tensor(trunc, m)?;
    let target = hom_tensor(trunc, m2)?;
    let cat = trunc.category();
    let n = cat.object_count();
    let mut maps = Vec::with_capacity(n * n);
    for r in 0..n {
        for s in 0..n {
            let cells = r * s;
            let mut big = ZModMatrix::zeros(MODULUS, cells * m2.len(), cells * m.len());
            for c in 0..cells {
                for i in 0..m2.len() {
                    for j in 0..m.len() {
                        big.set(c * m2.len() + i, c * m.len() + j, t.get(i, j));
                    }
                }
            }
            maps.push(big);
        }
    }
    let tm = BimoduleMorphism::new(cat, &source, &target, maps)?;
    Ok((source, target, tm))
}

#[cfg(test)]
mod tests {
    use super::super::category::{build_toda_category, diagram_functor, truncated_proj_category};
    use super::*;

    #[test]
    fn hom_bimodules_satisfy_the_axioms() {
        for (ring, rank, m) in [(4, 1, vec![4]), (4, 1, vec![2]), (2, 2, vec![2]), (4, 1, vec![2, 4]), (4, 2, vec![4])] {
            let p = truncated_proj_category(ring, rank).unwrap();
            let l = hom_tensor(&p, &m).unwrap();
            l.check(p.category()).unwrap();
            assert!(l.is_reduced(p.category()).unwrap());
        }
        let p = truncated_proj_category(2, 1).unwrap();
        assert!(hom_tensor(&p, &[4]).is_err());
    }

    #[test]
    fn pulled_back_coefficients_on_toda() {
        let t = build_toda_category();
        let p = truncated_proj_category(4, 1).unwrap();
        let two = ZModMatrix::from_rows(4, &[&[2]]);
        let phi = diagram_functor(&t, &p, [&two, &two, &two]).unwrap();
        let l = hom(&p).pullback(&t, &phi);
        l.check(&t).unwrap();
        assert!(l.is_reduced(&t).unwrap());
        assert_eq!(l.group(1, 4), &[4]);
        let j3 = t.find("j3").unwrap();
        assert_eq!(l.left(j3, 1).get(0, 0), 2);
        let l2 = hom_tensor(&p, &[2]).unwrap().pullback(&t, &phi);
        assert!(l2.left(j3, 1).is_zero());
    }

    #[test]
    fn inclusion_of_z2_is_natural() {
        let p = truncated_proj_category(4, 1).unwrap();
        let i = ZModMatrix::from_rows(4, &[&[2]]);
        assert!(coefficient_map(&p, &[2], &[4], &i).is_ok());
        // reduction Z/4 → Z/2 is natural too; 1: Z/2 → Z/4 is not well defined
        let one = ZModMatrix::from_rows(4, &[&[1]]);
        assert!(coefficient_map(&p, &[4], &[2], &one).is_ok());
        assert!(coefficient_map(&p, &[2], &[4], &one).is_err());
    }

    #[test]
    fn non_natural_family_is_rejected() {
        let p = truncated_proj_category(2, 2).unwrap();
        let cat = p.category();
        let l = hom(&p);
        let n = cat.object_count();
        let mut maps = Vec::new();
        for x in 0..n {
            for y in 0..n {
                maps.push(ZModMatrix::identity(4, x * y));
            }
        }
        assert!(BimoduleMorphism::new(cat, &l, &l, maps.clone()).is_ok());
        // transposition on End(2)
        let mut t = ZModMatrix::zeros(4, 4, 4);
        for (i, j) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
            t.set(i, j, 1);
        }
        maps[2 * n + 2] = t;
        assert!(matches!(
            BimoduleMorphism::new(cat, &l, &l, maps),
            Err(CatError::NotNatural { .. })
        ));
    }
}
