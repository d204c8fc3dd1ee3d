use std::fmt;

use serde::{Deserialize, Serialize};

use super::smith::{eliminate, solve};
use super::{LinalgError, Ring, RowModule, ZModMatrix};

/// A finite abelian group by invariant factors, each dividing the next.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct FinAbGroup {
    factors: Vec<u32>,
}

impl FinAbGroup {
    pub fn new(mut factors: Vec<u32>) -> Result<Self, LinalgError> {
        factors.retain(|&f| f != 1);
        if factors.contains(&0) {
            return Err(LinalgError::BadInvariantFactors(factors));
        }
        factors.sort_unstable();
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(LinalgError::BadInvariantFactors(factors));
        }
        Ok(FinAbGroup { factors })
    }

    pub fn trivial() -> Self {
        FinAbGroup::default()
    }

    pub fn cyclic(n: u32) -> Self {
        Self::new(vec![n]).expect("cyclic group")
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn order(&self) -> u128 {
        self.factors
            .iter()
            .fold(1u128, |acc, &f| acc.saturating_mul(f as u128))
    }

    /// Every element as a coordinate vector, in lexicographic order.
    pub fn elements(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new()];
        for &f in &self.factors {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..f).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z/{n}")).collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// Generators `o_i · e_i` of the relations presenting `⊕ Z/o_i` as a
/// quotient of `(Z/m)^n`.
pub fn relation_generators(modulus: u32, orders: &[u32]) -> Vec<Vec<u32>> {
    let n = orders.len();
    orders
        .iter()
        .enumerate()
        .filter(|(_, &o)| o % modulus != 0)
        .map(|(i, &o)| {
            let mut v = vec![0; n];
            v[i] = o % modulus;
            v
        })
        .collect()
}

/// A quotient `K / I` of submodules `I ⊆ K ⊆ (Z/m)^n`, with a coordinate
/// map onto its invariant-factor decomposition.
#[derive(Clone, Debug)]
pub struct Subquotient {
    numerator: RowModule,
    group: FinAbGroup,
    /// Rows of the transform `P` restricted to the nontrivial components.
    class_rows: Vec<Vec<u32>>,
    /// Columns of `P⁻¹` for those components, as `numerator`-basis coefficients.
    lift_cols: Vec<Vec<u32>>,
}

pub fn subquotient<K, I>(
    modulus: u32,
    dim: usize,
    ker_gens: K,
    im_gens: I,
) -> Result<Subquotient, LinalgError>
where
    K: IntoIterator,
    K::Item: AsRef<[u32]>,
    I: IntoIterator,
    I::Item: AsRef<[u32]>,
{
    let numerator = RowModule::from_generators(modulus, dim, ker_gens);
    Subquotient::over(numerator, im_gens)
}

impl Subquotient {
    /// Quotient of an already-built numerator module by the span of `im_gens`.
    pub fn over<I>(numerator: RowModule, im_gens: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator,
        I::Item: AsRef<[u32]>,
    {
        let ring = numerator.ring();
        let modulus = ring.modulus();
        let s = numerator.len();
        let mut relations = Vec::new();
        for g in im_gens {
            let z = numerator
                .decompose(g.as_ref())
                .ok_or(LinalgError::ImNotInKer)?;
            relations.push(z);
        }
        relations.extend(numerator.relations());
        // Compress before the Smith form; the relation set can be long.
        let rel_module = RowModule::from_generators(modulus, s, &relations);
        let r = rel_module.to_matrix().transpose();
        let elim = eliminate(&r, true, false);
        let p_rows = elim.p.unwrap();
        let p = ZModMatrix::from_residues(modulus, s, s, p_rows.concat()).unwrap();
        let p_inv = p.inverse().expect("row transform is invertible");

        let mut factors = Vec::new();
        let mut class_rows = Vec::new();
        let mut lift_cols = Vec::new();
        for i in 0..s {
            let d = elim.diag.get(i).copied().unwrap_or(0);
            let order = if d == 0 {
                modulus
            } else {
                d // an exact prime power p^v; units give the trivial factor 1
            };
            if order == 1 {
                continue;
            }
            factors.push(order);
            class_rows.push(p.row(i).to_vec());
            lift_cols.push(p_inv.column_vec(i));
        }
        let group = FinAbGroup::new(factors)?;
        debug_assert_eq!(group.factors().len(), class_rows.len());
        Ok(Subquotient {
            numerator,
            group,
            class_rows,
            lift_cols,
        })
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn numerator(&self) -> &RowModule {
        &self.numerator
    }

    pub fn ring(&self) -> Ring {
        self.numerator.ring()
    }

    /// Coordinates of the class of `x`, which must lie in the numerator.
    pub fn class(&self, x: &[u32]) -> Result<Vec<u32>, LinalgError> {
        let z = self.numerator.decompose(x).ok_or(LinalgError::NotInSubgroup)?;
        let ring = self.ring();
        Ok(self
            .class_rows
            .iter()
            .zip(self.group.factors())
            .map(|(row, &f)| {
                let y = ring.reduce(row.iter().zip(&z).map(|(&a, &b)| a as u64 * b as u64).sum());
                y % f
            })
            .collect())
    }

    pub fn is_zero_class(&self, x: &[u32]) -> Result<bool, LinalgError> {
        Ok(self.class(x)?.iter().all(|&c| c == 0))
    }

    /// A representative in the numerator of the class with these coordinates.
    pub fn lift(&self, coords: &[u32]) -> Vec<u32> {
        assert_eq!(coords.len(), self.lift_cols.len());
        let ring = self.ring();
        let basis = self.numerator.basis();
        let mut z = vec![0u32; basis.len()];
        for (col, &c) in self.lift_cols.iter().zip(coords) {
            ring.add_mul(&mut z, col, c);
        }
        let mut x = vec![0u32; self.numerator.dim()];
        for (b, &zi) in basis.iter().zip(&z) {
            ring.add_mul(&mut x, b, zi);
        }
        x
    }

    /// Representatives of the standard generators.
    pub fn generator_lifts(&self) -> Vec<Vec<u32>> {
        (0..self.group.factors().len())
            .map(|k| {
                let mut e = vec![0; self.group.factors().len()];
                e[k] = 1;
                self.lift(&e)
            })
            .collect()
    }
}

/// A coset `representative + S` in `⊕ Z/o_i`, with `S` given by generators.
///
/// The representative is always kept reduced against a Howell basis of
/// `S` plus the relations of the ambient group, so two cosets are equal
/// exactly when their fields are.
#[derive(Clone, Debug)]
pub struct Coset {
    orders: Vec<u32>,
    representative: Vec<u32>,
    generators: Vec<Vec<u32>>,
    module: RowModule,
}

impl Coset {
    pub fn new(
        modulus: u32,
        orders: Vec<u32>,
        representative: Vec<u32>,
        generators: Vec<Vec<u32>>,
    ) -> Result<Self, LinalgError> {
        let ring = Ring::new(modulus)?;
        let n = orders.len();
        if representative.len() != n || generators.iter().any(|g| g.len() != n) {
            return Err(LinalgError::DimensionMismatch {
                op: "coset",
                left: (n, 1),
                right: (representative.len(), 1),
            });
        }
        if orders.iter().any(|&o| o == 0 || modulus % o != 0) {
            return Err(LinalgError::BadInvariantFactors(orders));
        }
        let mut module = RowModule::new(modulus, n);
        for g in relation_generators(modulus, &orders).into_iter().chain(generators.iter().cloned()) {
            module.insert(g.iter().map(|&x| x % ring.modulus()).collect());
        }
        let representative = representative.iter().map(|&x| x % modulus).collect();
        Ok(Coset {
            orders,
            representative,
            generators,
            module,
        }
        .reduced())
    }

    /// A coset in the free module `(Z/m)^n`.
    pub fn free(modulus: u32, representative: Vec<u32>, generators: Vec<Vec<u32>>) -> Result<Self, LinalgError> {
        let n = representative.len();
        Self::new(modulus, vec![modulus; n], representative, generators)
    }

    fn reduced(mut self) -> Self {
        self.module.reduce(&mut self.representative);
        self
    }

    pub fn representative(&self) -> &[u32] {
        &self.representative
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn modulus(&self) -> u32 {
        self.module.modulus()
    }

    pub fn contains(&self, x: &[u32]) -> bool {
        self.module.reduced(x) == self.representative
    }

    pub fn is_zero(&self) -> bool {
        self.representative.iter().all(|&x| x == 0)
    }

    /// The subgroup with the same ambient group and a new representative.
    pub fn with_representative(&self, representative: Vec<u32>) -> Coset {
        let modulus = self.modulus();
        Coset {
            orders: self.orders.clone(),
            representative: representative.iter().map(|&x| x % modulus).collect(),
            generators: self.generators.clone(),
            module: self.module.clone(),
        }
        .reduced()
    }

    /// The ambient group divided by the subgroup, e.g. `Z/2` for `Z/4 / 2Z/4`.
    pub fn quotient_group(&self) -> FinAbGroup {
        let n = self.orders.len();
        let modulus = self.modulus();
        let unit: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        let basis: Vec<Vec<u32>> = self.module.basis().into_iter().map(|b| b.to_vec()).collect();
        subquotient(modulus, n, unit, basis)
            .expect("subgroup lies in the ambient group")
            .group()
            .clone()
    }

    /// Index of the subgroup in the ambient group.
    pub fn index(&self) -> u128 {
        self.quotient_group().order()
    }

    /// Human-readable form; one-dimensional cosets print like `1 + 2Z/4`.
    pub fn describe(&self) -> String {
        let modulus = self.modulus();
        if self.orders.len() == 1 {
            let o = self.orders[0];
            let sub = match self.module.leads().first() {
                None => "0".to_string(),
                Some(&(_, w)) => {
                    let g = self.module.ring().prime_power(w);
                    if g % o == 0 {
                        "0".to_string()
                    } else if g == 1 {
                        format!("Z/{o}")
                    } else {
                        format!("{g}Z/{o}")
                    }
                }
            };
            let _ = modulus;
            return format!("{} + {}", self.representative[0], sub);
        }
        let rep: Vec<String> = self.representative.iter().map(|x| x.to_string()).collect();
        let gens: Vec<String> = self
            .module
            .basis()
            .iter()
            .map(|g| {
                let s: Vec<String> = g.iter().map(|x| x.to_string()).collect();
                format!("({})", s.join(","))
            })
            .collect();
        format!("({}) + <{}>", rep.join(","), gens.join(", "))
    }
}

impl PartialEq for Coset {
    fn eq(&self, other: &Self) -> bool {
        self.orders == other.orders
            && self.representative == other.representative
            && self.module.same_module(&other.module)
    }
}

impl Eq for Coset {}

/// The canonical form of a coset.
pub fn coset_reduce(c: &Coset) -> Coset {
    c.clone().reduced()
}

/// A homomorphism `⊕ Z/o_j → ⊕ Z/o'_i` given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: Vec<u32>,
    target: Vec<u32>,
    matrix: ZModMatrix,
}

impl GroupHom {
    /// Checks that each generator is sent to an element of compatible order.
    pub fn new(source: Vec<u32>, target: Vec<u32>, matrix: ZModMatrix) -> Result<Self, LinalgError> {
        if matrix.shape() != (target.len(), source.len()) {
            return Err(LinalgError::DimensionMismatch {
                op: "group hom",
                left: matrix.shape(),
                right: (target.len(), source.len()),
            });
        }
        let m = matrix.modulus();
        for (j, &o) in source.iter().enumerate() {
            for (i, &t) in target.iter().enumerate() {
                // o · A_ij must vanish in Z/t
                if (o as u64 * matrix.get(i, j) as u64) % t as u64 != 0 {
                    return Err(LinalgError::NotWellDefined { row: i, col: j });
                }
            }
            debug_assert!(m % o == 0);
        }
        Ok(GroupHom {
            source,
            target,
            matrix,
        })
    }

    pub fn source(&self) -> &[u32] {
        &self.source
    }

    pub fn target(&self) -> &[u32] {
        &self.target
    }

    pub fn matrix(&self) -> &ZModMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[u32]) -> Vec<u32> {
        self.matrix
            .mul_vec(x)
            .iter()
            .zip(&self.target)
            .map(|(&y, &t)| y % t)
            .collect()
    }

    fn log_order_of(&self, orders: &[u32]) -> u32 {
        let p = self.image_module().ring().prime();
        orders
            .iter()
            .map(|&o| {
                let (mut o, mut e) = (o, 0);
                while o > 1 {
                    o /= p;
                    e += 1;
                }
                e
            })
            .sum()
    }

    fn image_module(&self) -> RowModule {
        let m = self.matrix.modulus();
        let n = self.target.len();
        let cols = (0..self.source.len()).map(|j| self.matrix.column_vec(j));
        RowModule::from_generators(m, n, relation_generators(m, &self.target).into_iter().chain(cols))
    }

    /// `log_p` of the image order.
    fn image_log_order(&self) -> u32 {
        let relations = RowModule::from_generators(
            self.matrix.modulus(),
            self.target.len(),
            relation_generators(self.matrix.modulus(), &self.target),
        );
        self.image_module().log_order() - relations.log_order()
    }

    /// Saturates for very large images.
    pub fn image_order(&self) -> u128 {
        let p = self.image_module().ring().prime() as u128;
        p.checked_pow(self.image_log_order()).unwrap_or(u128::MAX)
    }

    pub fn is_surjective(&self) -> bool {
        self.image_log_order() == self.log_order_of(&self.target)
    }

    pub fn is_injective(&self) -> bool {
        self.image_log_order() == self.log_order_of(&self.source)
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn is_zero(&self) -> bool {
        self.image_log_order() == 0
    }

    /// The inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Option<GroupHom> {
        if !self.is_bijective() {
            return None;
        }
        let m = self.matrix.modulus();
        let (nt, ns) = (self.target.len(), self.source.len());
        // A x + Σ y_i o_i e_i = e_k, solved over Z/m
        let rels = relation_generators(m, &self.target);
        let mut system = ZModMatrix::zeros(m, nt, ns + rels.len());
        system.paste(0, 0, &self.matrix);
        for (j, r) in rels.iter().enumerate() {
            for (i, &x) in r.iter().enumerate() {
                system.set(i, ns + j, x);
            }
        }
        let mut inv = ZModMatrix::zeros(m, ns, nt);
        for k in 0..nt {
            let mut e = vec![0; nt];
            e[k] = 1;
            let x = solve(&system, &e).ok()?.particular?;
            for i in 0..ns {
                inv.set(i, k, x[i] % self.source[i]);
            }
        }
        GroupHom::new(self.target.clone(), self.source.clone(), inv).ok()
    }

    pub fn compose(&self, first: &GroupHom) -> GroupHom {
        assert_eq!(first.target, self.source);
        let m = self.matrix.mul(&first.matrix);
        let mut m2 = m.clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                m2.set(i, j, m.get(i, j) % self.target[i]);
            }
        }
        GroupHom::new(first.source.clone(), self.target.clone(), m2).expect("composite is well defined")
    }
}
