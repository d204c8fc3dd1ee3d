use crate::linalg::{relation_generators, subquotient, Coset, FinAbGroup, Subquotient};

use super::bimodule::Bimodule;
use super::category::FinCategory;
use super::complex::Cochain;
use super::homology::NormalizedCohomology;
use super::{CatError, MODULUS};

fn columns(m: &crate::linalg::ZModMatrix) -> Vec<Vec<u32>> {
    (0..m.cols()).map(|j| m.column_vec(j)).collect()
}

/// `M(1,4) / (M(1,j_3) M(1,3) + M(j_1,4) M(2,4))` for a reduced bimodule
/// on the Toda category.
#[derive(Clone, Debug)]
pub struct TodaQuotient {
    j: [u32; 3],
    sub: Subquotient,
}

impl TodaQuotient {
    pub fn group(&self) -> &FinAbGroup {
        self.sub.group()
    }

    /// The class of an element of `M(1, 4)`.
    pub fn class_of_value(&self, v: &[u32]) -> Result<Vec<u32>, CatError> {
        Ok(self.sub.class(v)?)
    }

    /// `c ↦ [c(j_3, j_2, j_1)]`, for a normalized 3-cocycle.
    pub fn class_of_cocycle(&self, toda: &FinCategory, m: &Bimodule, c: &Cochain) -> Result<Vec<u32>, CatError> {
        self.class_of_value(&c.value(toda, m, &[self.j[2], self.j[1], self.j[0]]))
    }

    /// `(j_3, j_2, j_1)` as a sequence.
    pub fn sequence(&self) -> [u32; 3] {
        [self.j[2], self.j[1], self.j[0]]
    }
}

fn toda_names(toda: &FinCategory) -> Result<([u32; 3], [usize; 4]), CatError> {
    let missing = || CatError::BadDiagram("not the Toda category".into());
    let mut j = [0u32; 3];
    for (k, slot) in j.iter_mut().enumerate() {
        *slot = toda.find(&format!("j{}", k + 1)).ok_or_else(missing)? as u32;
    }
    let mut x = [0usize; 4];
    for (k, slot) in x.iter_mut().enumerate() {
        *slot = toda.find_object(&(k + 1).to_string()).ok_or_else(missing)?;
    }
    Ok((j, x))
}

pub fn h3_toda_quotient(toda: &FinCategory, m: &Bimodule) -> Result<TodaQuotient, CatError> {
    if !m.is_reduced(toda)? {
        return Err(CatError::CoeffsNotReduced);
    }
    let (j, x) = toda_names(toda)?;
    let orders = m.group(x[0], x[3]);
    let dim = orders.len();
    let all: Vec<Vec<u32>> = (0..dim)
        .map(|i| {
            let mut e = vec![0; dim];
            e[i] = 1;
            e
        })
        .collect();
    let mut im = relation_generators(MODULUS, orders);
    im.extend(columns(m.left(j[2] as usize, x[0])));
    im.extend(columns(m.right(j[0] as usize, x[3])));
    let sub = subquotient(MODULUS, dim, all, im)?;
    Ok(TodaQuotient { j, sub })
}

fn check_diagram(cat: &FinCategory, diagram: [usize; 3]) -> Result<(), CatError> {
    let [h, g, f] = diagram;
    let bad = |s: &str| Err(CatError::BadDiagram(s.into()));
    match (cat.compose(g, f), cat.compose(h, g)) {
        (Some(gf), Some(hg)) => {
            if !cat.is_zero_morphism(gf) {
                return bad("gf ≠ 0");
            }
            if !cat.is_zero_morphism(hg) {
                return bad("hg ≠ 0");
            }
            Ok(())
        }
        _ => bad("maps are not composable"),
    }
}

/// The class of `c(h, g, f)` in `L(W, Z) / (L(W, h) L(W, Y) + L(f, Z) L(X, Z))`.
pub fn zeta_bracket_of_cocycle(
    cat: &FinCategory,
    l: &Bimodule,
    c: &Cochain,
    diagram: [usize; 3],
) -> Result<Coset, CatError> {
    check_diagram(cat, diagram)?;
    let [h, g, f] = diagram;
    let (w, z) = (cat.source(f), cat.target(h));
    let seq = [h as u32, g as u32, f as u32];
    let value = c.value(cat, l, &seq);
    let mut gens = columns(l.left(h, w));
    gens.extend(columns(l.right(f, z)));
    Ok(Coset::new(MODULUS, l.group(w, z).to_vec(), value, gens)?)
}

/// `⟨h, g, f⟩_ζ` for a class `ζ` of the full `H^3`, evaluated on a
/// normalized representative.
pub fn zeta_toda_bracket(
    cat: &FinCategory,
    l: &Bimodule,
    h3: &NormalizedCohomology,
    zeta: &[u32],
    diagram: [usize; 3],
) -> Result<Coset, CatError> {
    if !l.is_reduced(cat)? {
        return Err(CatError::CoeffsNotReduced);
    }
    if h3.full.degree() != 3 {
        return Err(CatError::Degree(h3.full.degree()));
    }
    let c = h3
        .normalized_representative(zeta)
        .ok_or(CatError::ComparisonFails(3))?;
    zeta_bracket_of_cocycle(cat, l, &c, diagram)
}
