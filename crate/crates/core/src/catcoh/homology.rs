use crate::linalg::{kernel_of_rows, subquotient, FinAbGroup, GroupHom, Subquotient, ZModMatrix};

use super::bimodule::Bimodule;
use super::category::FinCategory;
use super::complex::{boundary_matrix, coboundary_matrix, Chain, Cochain, SeqSpace, SparseMatrix, Variance};
use super::{CatError, MODULUS};

/// `ker(out) / (im(in) + relations)` inside the coordinates of `space`.
fn subquotient_at(space: &SeqSpace, d_in: Option<&SparseMatrix>, d_out: Option<(&SparseMatrix, &[u32])>) -> Result<Subquotient, CatError> {
    let dim = space.dim();
    let ker: Vec<Vec<u32>> = match d_out {
        // a Z/2 target coordinate only sees the source modulo 2, so its
        // equation is scaled by 2
        Some((d, orders)) => kernel_of_rows(
            MODULUS,
            dim,
            (0..d.rows.len()).map(|r| {
                let s = MODULUS / orders[r];
                d.dense_row(r).into_iter().map(|x| (x * s) % MODULUS).collect()
            }),
        ),
        None => (0..dim)
            .map(|i| {
                let mut e = vec![0; dim];
                e[i] = 1;
                e
            })
            .collect(),
    };
    let mut im = space.relations();
    if let Some(d) = d_in {
        im.extend(d.columns());
    }
    Ok(subquotient(MODULUS, dim, ker, im)?)
}

/// `H^n(C, L)` with its class map.
#[derive(Clone, Debug)]
pub struct Cohomology {
    space: SeqSpace,
    sub: Subquotient,
}

impl Cohomology {
    pub fn degree(&self) -> usize {
        self.space.degree()
    }

    pub fn group(&self) -> &FinAbGroup {
        self.sub.group()
    }

    pub fn space(&self) -> &SeqSpace {
        &self.space
    }

    pub fn is_normalized(&self) -> bool {
        self.space.is_normalized()
    }

    pub fn is_cocycle(&self, c: &Cochain) -> bool {
        self.sub.numerator().contains(&self.space.flatten_cochain(c))
    }

    /// Coordinates of the class of a cocycle.
    pub fn class(&self, c: &Cochain) -> Result<Vec<u32>, CatError> {
        Ok(self.sub.class(&self.space.flatten_cochain(c))?)
    }

    pub fn representative(&self, coords: &[u32]) -> Cochain {
        self.space.cochain(&self.sub.lift(coords))
    }

    /// Representatives of the standard generators.
    pub fn generators(&self) -> Vec<Cochain> {
        self.sub.generator_lifts().iter().map(|v| self.space.cochain(v)).collect()
    }
}

fn cohomology_of(cat: &FinCategory, l: &Bimodule, n: usize, normalized: bool) -> Result<Cohomology, CatError> {
    let space = SeqSpace::new(cat, l, n, Variance::Cochain, normalized)?;
    let next = SeqSpace::new(cat, l, n + 1, Variance::Cochain, normalized)?;
    let d_out = coboundary_matrix(cat, l, &space, &next);
    let d_in = if n > 0 {
        let prev = SeqSpace::new(cat, l, n - 1, Variance::Cochain, normalized)?;
        Some(coboundary_matrix(cat, l, &prev, &space))
    } else {
        None
    };
    let sub = subquotient_at(&space, d_in.as_ref(), Some((&d_out, next.orders())))?;
    Ok(Cohomology { space, sub })
}

pub fn cohomology(cat: &FinCategory, l: &Bimodule, n: usize) -> Result<Cohomology, CatError> {
    cohomology_of(cat, l, n, false)
}

/// `H_n(C, L)` with its class map.
#[derive(Clone, Debug)]
pub struct Homology {
    space: SeqSpace,
    sub: Subquotient,
}

impl Homology {
    pub fn degree(&self) -> usize {
        self.space.degree()
    }

    pub fn group(&self) -> &FinAbGroup {
        self.sub.group()
    }

    pub fn space(&self) -> &SeqSpace {
        &self.space
    }

    pub fn class(&self, z: &Chain) -> Result<Vec<u32>, CatError> {
        Ok(self.sub.class(&self.space.flatten_chain(z))?)
    }

    pub fn generators(&self) -> Vec<Chain> {
        self.sub.generator_lifts().iter().map(|v| self.space.chain(v)).collect()
    }
}

pub fn homology(cat: &FinCategory, l: &Bimodule, n: usize) -> Result<Homology, CatError> {
    let space = SeqSpace::new(cat, l, n, Variance::Chain, false)?;
    let above = SeqSpace::new(cat, l, n + 1, Variance::Chain, false)?;
    let d_in = boundary_matrix(cat, l, &above, &space);
    let sub = if n > 0 {
        let below = SeqSpace::new(cat, l, n - 1, Variance::Chain, false)?;
        let d_out = boundary_matrix(cat, l, &space, &below);
        subquotient_at(&space, Some(&d_in), Some((&d_out, below.orders())))?
    } else {
        subquotient_at(&space, Some(&d_in), None)?
    };
    Ok(Homology { space, sub })
}

/// The homomorphism `H(source) → H(target)` induced by a cochain map.
pub fn induced_map<F>(source: &Cohomology, target: &Cohomology, f: F) -> Result<GroupHom, CatError>
where
    F: Fn(&Cochain) -> Result<Cochain, CatError>,
{
    let gens = source.generators();
    let rows = target.group().factors().len();
    let mut m = ZModMatrix::zeros(MODULUS, rows, gens.len());
    for (j, g) in gens.iter().enumerate() {
        let image = f(g)?;
        for (i, x) in target.class(&image)?.into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    Ok(GroupHom::new(
        source.group().factors().to_vec(),
        target.group().factors().to_vec(),
        m,
    )?)
}

/// Cohomology of the subcomplex of cochains vanishing on every sequence
/// that contains an identity or a zero morphism, compared with the full
/// cohomology through the inclusion.
#[derive(Clone, Debug)]
pub struct NormalizedCohomology {
    pub normalized: Cohomology,
    pub full: Cohomology,
    /// `H(normalized) → H(full)`.
    pub comparison: GroupHom,
}

impl NormalizedCohomology {
    pub fn is_isomorphism(&self) -> bool {
        self.comparison.is_bijective()
    }

    /// A normalized cocycle representing the given class of the full cohomology.
    pub fn normalized_representative(&self, full_class: &[u32]) -> Option<Cochain> {
        let inv = self.comparison.inverse()?;
        Some(self.normalized.representative(&inv.apply(full_class)))
    }
}

pub fn normalized_cohomology(cat: &FinCategory, l: &Bimodule, n: usize) -> Result<NormalizedCohomology, CatError> {
    if !l.is_reduced(cat)? {
        return Err(CatError::CoeffsNotReduced);
    }
    let normalized = cohomology_of(cat, l, n, true)?;
    let full = cohomology_of(cat, l, n, false)?;
    // a normalized cochain is a cochain; the inclusion is the identity on values
    let comparison = induced_map(&normalized, &full, |c| Ok(c.clone()))?;
    Ok(NormalizedCohomology {
        normalized,
        full,
        comparison,
    })
}
