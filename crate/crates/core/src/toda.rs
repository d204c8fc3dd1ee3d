//! Toda brackets `⟨h, g, f⟩` in P(Z/4) with identity translation.

use std::fmt;

use thiserror::Error;

use crate::linalg::{solve, subquotient, Coset, FinAbGroup, LinalgError, ZModMatrix};
use crate::triangles::{cone_of_map, CandidateTriangle, MODULUS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TodaError {
    #[error("matrix {0} must be over Z/4")]
    Modulus(&'static str),
    #[error("maps are not composable: {0}")]
    Shape(String),
    #[error("composite {0} is not zero")]
    NonZeroComposite(&'static str),
    #[error("no fill-in (a, b) exists for the chosen cone")]
    NoFillIn,
    #[error("the given triangle does not start with f")]
    WrongCone,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `W -f-> X -g-> Y -h-> Z` with `gf = 0` and `hg = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TodaInput {
    f: ZModMatrix,
    g: ZModMatrix,
    h: ZModMatrix,
}

impl TodaInput {
    pub fn new(f: ZModMatrix, g: ZModMatrix, h: ZModMatrix) -> Result<Self, TodaError> {
        for (name, m) in [("f", &f), ("g", &g), ("h", &h)] {
            if m.modulus() != MODULUS {
                return Err(TodaError::Modulus(name));
            }
        }
        if g.cols() != f.rows() || h.cols() != g.rows() {
            return Err(TodaError::Shape(format!(
                "f is {}x{}, g is {}x{}, h is {}x{}",
                f.rows(),
                f.cols(),
                g.rows(),
                g.cols(),
                h.rows(),
                h.cols()
            )));
        }
        if !g.mul(&f).is_zero() {
            return Err(TodaError::NonZeroComposite("gf"));
        }
        if !h.mul(&g).is_zero() {
            return Err(TodaError::NonZeroComposite("hg"));
        }
        Ok(TodaInput { f, g, h })
    }

    pub fn f(&self) -> &ZModMatrix {
        &self.f
    }

    pub fn g(&self) -> &ZModMatrix {
        &self.g
    }

    pub fn h(&self) -> &ZModMatrix {
        &self.h
    }

    /// Ranks of `W, X, Y, Z`.
    pub fn ranks(&self) -> (usize, usize, usize, usize) {
        (self.f.cols(), self.f.rows(), self.g.rows(), self.h.rows())
    }
}

fn unit(rows: usize, cols: usize, r: usize, c: usize) -> ZModMatrix {
    let mut m = ZModMatrix::zeros(MODULUS, rows, cols);
    m.set(r, c, 1);
    m
}

/// Generators of `h·Hom(W,Y) + Hom(X,Z)·f`, flattened row-major.
pub fn indeterminacy(input: &TodaInput) -> Vec<Vec<u32>> {
    let (w, x, y, z) = input.ranks();
    let mut gens = Vec::new();
    for r in 0..y {
        for c in 0..w {
            gens.push(input.h.mul(&unit(y, w, r, c)).to_vector());
        }
    }
    for r in 0..z {
        for c in 0..x {
            gens.push(unit(z, x, r, c).mul(&input.f).to_vector());
        }
    }
    gens
}

/// A bracket as a coset in `Hom(W, Z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TodaBracket {
    rows: usize,
    cols: usize,
    value: Coset,
}

impl TodaBracket {
    fn new(input: &TodaInput, b: &ZModMatrix) -> Self {
        let value = Coset::free(MODULUS, b.to_vector(), indeterminacy(input)).expect("Z/4 coset");
        TodaBracket {
            rows: b.rows(),
            cols: b.cols(),
            value,
        }
    }

    pub fn coset(&self) -> &Coset {
        &self.value
    }

    /// The reduced representative as a `Z × W` matrix.
    pub fn representative(&self) -> ZModMatrix {
        ZModMatrix::from_vector(MODULUS, self.rows, self.cols, self.value.representative())
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn contains(&self, m: &ZModMatrix) -> bool {
        m.shape() == (self.rows, self.cols) && self.value.contains(&m.to_vector())
    }

    /// `Hom(W, Z)` modulo the indeterminacy.
    pub fn quotient_group(&self) -> FinAbGroup {
        self.value.quotient_group()
    }

    /// The indeterminacy subgroup itself.
    pub fn indeterminacy_group(&self) -> FinAbGroup {
        let n = self.rows * self.cols;
        subquotient(MODULUS, n, self.value.generators(), Vec::<Vec<u32>>::new())
            .expect("no image")
            .group()
            .clone()
    }
}

impl fmt::Display for TodaBracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows * self.cols == 1 {
            write!(f, "{}", self.value.describe())
        } else {
            write!(
                f,
                "{} + indeterminacy ≅ {}",
                self.representative(),
                self.indeterminacy_group()
            )
        }
    }
}

/// Solves `a·i = g` and `b·q = h·a` jointly for an exact triangle
/// `W -f-> X -i-> C -q-> W` and returns one solution.
fn fill_in(input: &TodaInput, cone: &CandidateTriangle) -> Result<(ZModMatrix, ZModMatrix, Vec<Vec<u32>>), TodaError> {
    let (w, _, y, z) = input.ranks();
    let c = cone.ranks().2;
    let shapes = [(y, c), (z, w)];
    let na = y * c;
    let unknowns = na + z * w;
    let gi = input.g.to_vector();
    let outputs = gi.len() + z * c;
    let split = |v: &[u32]| {
        (
            ZModMatrix::from_vector(MODULUS, shapes[0].0, shapes[0].1, &v[..na]),
            ZModMatrix::from_vector(MODULUS, shapes[1].0, shapes[1].1, &v[na..]),
        )
    };
    let system = ZModMatrix::from_linear_map(MODULUS, unknowns, outputs, |v| {
        let (a, b) = split(v);
        let mut out = a.mul(cone.i()).to_vector();
        out.extend(b.mul(cone.q()).sub(&input.h.mul(&a)).to_vector());
        out
    });
    let mut rhs = gi;
    rhs.extend(std::iter::repeat(0).take(z * c));
    let sol = solve(&system, &rhs)?;
    let x = sol.particular.ok_or(TodaError::NoFillIn)?;
    let (a, b) = split(&x);
    Ok((a, b, sol.kernel))
}

/// `⟨h, g, f⟩` computed with a given exact triangle on `f`.
pub fn toda_bracket_with(input: &TodaInput, cone: &CandidateTriangle) -> Result<TodaBracket, TodaError> {
    if cone.f() != input.f() {
        return Err(TodaError::WrongCone);
    }
    let (_, b, _) = fill_in(input, cone)?;
    Ok(TodaBracket::new(input, &b))
}

pub fn toda_bracket(input: &TodaInput) -> Result<TodaBracket, TodaError> {
    toda_bracket_with(input, &cone_of_map(input.f()).triangle)
}

/// Every `b` arising from some fill-in `(a, b)` over the given cone, up to
/// the span of the fill-in kernel: a particular `b` and generators of the
/// `b`-parts of solutions of the homogeneous system.
pub fn fill_in_variation(
    input: &TodaInput,
    cone: &CandidateTriangle,
) -> Result<(ZModMatrix, Vec<ZModMatrix>), TodaError> {
    let (w, _, y, z) = input.ranks();
    let c = cone.ranks().2;
    let (_, b, kernel) = fill_in(input, cone)?;
    let na = y * c;
    let shifts = kernel
        .iter()
        .map(|k| ZModMatrix::from_vector(MODULUS, z, w, &k[na..]))
        .collect();
    Ok((b, shifts))
}
