//! Candidate triangles in P(Z/4) with identity translation.
//!
//! Objects are free modules `(Z/4)^n`, identified with their rank. A
//! triangle `A -f-> B -i-> C -q-> A` stores `f: b×a`, `i: c×b`, `q: a×c`.

mod cone;
mod homotopy;
mod octahedron;
pub mod random;
mod search;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{LinalgError, ZModMatrix};

pub use cone::{cone_of_map, decompose_exact, is_exact, mapping_cone, Decomposition, ExactWitness, StandardCone};
pub use homotopy::{is_contractible, solve_homotopy, Homotopy};
pub use octahedron::octahedron_modify;
pub use search::{find_isomorphism, morphism_space};

pub const MODULUS: u32 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangleError {
    #[error("matrix {0} must be over Z/4")]
    Modulus(&'static str),
    #[error("matrix {name} has shape {found:?}, expected {expected:?}")]
    Shape {
        name: &'static str,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("composite {0} is not zero")]
    NonZeroComposite(&'static str),
    #[error("square {0} does not commute")]
    NotCommuting(&'static str),
    #[error("morphisms do not share source and target")]
    EndpointMismatch,
    #[error("triangle is not exact")]
    NotExact,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn check(name: &'static str, m: &ZModMatrix, shape: (usize, usize)) -> Result<(), TriangleError> {
    if m.modulus() != MODULUS {
        return Err(TriangleError::Modulus(name));
    }
    if m.shape() != shape {
        return Err(TriangleError::Shape {
            name,
            expected: shape,
            found: m.shape(),
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTriangle")]
pub struct CandidateTriangle {
    a: usize,
    b: usize,
    c: usize,
    f: ZModMatrix,
    i: ZModMatrix,
    q: ZModMatrix,
}

#[derive(Deserialize)]
struct RawTriangle {
    a: usize,
    b: usize,
    c: usize,
    f: ZModMatrix,
    i: ZModMatrix,
    q: ZModMatrix,
}

impl TryFrom<RawTriangle> for CandidateTriangle {
    type Error = TriangleError;

    fn try_from(r: RawTriangle) -> Result<Self, Self::Error> {
        check("f", &r.f, (r.b, r.a))?;
        check("i", &r.i, (r.c, r.b))?;
        check("q", &r.q, (r.a, r.c))?;
        CandidateTriangle::new(r.f, r.i, r.q)
    }
}

impl CandidateTriangle {
    /// Ranks are read off `f` and `i`; `q` must close the loop.
    pub fn new(f: ZModMatrix, i: ZModMatrix, q: ZModMatrix) -> Result<Self, TriangleError> {
        let (b, a) = f.shape();
        let c = i.rows();
        check("f", &f, (b, a))?;
        check("i", &i, (c, b))?;
        check("q", &q, (a, c))?;
        if !i.mul(&f).is_zero() {
            return Err(TriangleError::NonZeroComposite("if"));
        }
        if !q.mul(&i).is_zero() {
            return Err(TriangleError::NonZeroComposite("qi"));
        }
        if !f.mul(&q).is_zero() {
            return Err(TriangleError::NonZeroComposite("fq"));
        }
        Ok(CandidateTriangle { a, b, c, f, i, q })
    }

    pub fn from_rows(f: &[&[i64]], i: &[&[i64]], q: &[&[i64]]) -> Result<Self, TriangleError> {
        Self::new(
            ZModMatrix::from_rows(MODULUS, f),
            ZModMatrix::from_rows(MODULUS, i),
            ZModMatrix::from_rows(MODULUS, q),
        )
    }

    pub fn zero() -> Self {
        let z = ZModMatrix::zeros(MODULUS, 0, 0);
        Self::new(z.clone(), z.clone(), z).unwrap()
    }

    /// `X -2-> X -2-> X -2-> X` with `X = (Z/4)^n`.
    pub fn x2(n: usize) -> Self {
        let two = ZModMatrix::scalar(MODULUS, n, 2);
        Self::new(two.clone(), two.clone(), two).unwrap()
    }

    /// `Y -1-> Y -> 0 -> Y`, the cone of the identity.
    pub fn identity_cone(n: usize) -> Self {
        Self::new(
            ZModMatrix::identity(MODULUS, n),
            ZModMatrix::zeros(MODULUS, 0, n),
            ZModMatrix::zeros(MODULUS, n, 0),
        )
        .unwrap()
    }

    pub fn ranks(&self) -> (usize, usize, usize) {
        (self.a, self.b, self.c)
    }

    pub fn f(&self) -> &ZModMatrix {
        &self.f
    }

    pub fn i(&self) -> &ZModMatrix {
        &self.i
    }

    pub fn q(&self) -> &ZModMatrix {
        &self.q
    }

    /// `B -i-> C -q-> A -(-f)-> B`.
    pub fn rotate(&self) -> Self {
        Self::new(self.i.clone(), self.q.clone(), self.f.neg()).unwrap()
    }

    pub fn direct_sum(&self, other: &CandidateTriangle) -> Self {
        let ds = |x: &ZModMatrix, y: &ZModMatrix| ZModMatrix::block_diag(MODULUS, &[x, y]);
        Self::new(ds(&self.f, &other.f), ds(&self.i, &other.i), ds(&self.q, &other.q)).unwrap()
    }

    /// The triangle transported along invertible `(u0, u1, u2)`.
    pub fn conjugate(&self, u0: &ZModMatrix, u1: &ZModMatrix, u2: &ZModMatrix) -> Self {
        let (v0, v1, v2) = (
            u0.inverse().expect("u0 invertible"),
            u1.inverse().expect("u1 invertible"),
            u2.inverse().expect("u2 invertible"),
        );
        Self::new(u1.mul(&self.f).mul(&v0), u2.mul(&self.i).mul(&v1), u0.mul(&self.q).mul(&v2))
            .unwrap()
    }
}

/// `(k0, k1, k2)` with `k1 f = f' k0`, `k2 i = i' k1`, `k0 q = q' k2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleMorphism {
    source: CandidateTriangle,
    target: CandidateTriangle,
    k0: ZModMatrix,
    k1: ZModMatrix,
    k2: ZModMatrix,
}

impl TriangleMorphism {
    pub fn new(
        source: CandidateTriangle,
        target: CandidateTriangle,
        k0: ZModMatrix,
        k1: ZModMatrix,
        k2: ZModMatrix,
    ) -> Result<Self, TriangleError> {
        let (a, b, c) = source.ranks();
        let (a2, b2, c2) = target.ranks();
        check("k0", &k0, (a2, a))?;
        check("k1", &k1, (b2, b))?;
        check("k2", &k2, (c2, c))?;
        if k1.mul(&source.f) != target.f.mul(&k0) {
            return Err(TriangleError::NotCommuting("k1 f = f' k0"));
        }
        if k2.mul(&source.i) != target.i.mul(&k1) {
            return Err(TriangleError::NotCommuting("k2 i = i' k1"));
        }
        if k0.mul(&source.q) != target.q.mul(&k2) {
            return Err(TriangleError::NotCommuting("k0 q = q' k2"));
        }
        Ok(TriangleMorphism {
            source,
            target,
            k0,
            k1,
            k2,
        })
    }

    pub fn identity(t: &CandidateTriangle) -> Self {
        let (a, b, c) = t.ranks();
        Self::new(
            t.clone(),
            t.clone(),
            ZModMatrix::identity(MODULUS, a),
            ZModMatrix::identity(MODULUS, b),
            ZModMatrix::identity(MODULUS, c),
        )
        .unwrap()
    }

    pub fn zero(source: &CandidateTriangle, target: &CandidateTriangle) -> Self {
        let (a, b, c) = source.ranks();
        let (a2, b2, c2) = target.ranks();
        let z = |r, c| ZModMatrix::zeros(MODULUS, r, c);
        Self::new(source.clone(), target.clone(), z(a2, a), z(b2, b), z(c2, c)).unwrap()
    }

    /// `s` times the identity.
    pub fn scalar(t: &CandidateTriangle, s: i64) -> Self {
        let (a, b, c) = t.ranks();
        let m = |n| ZModMatrix::scalar(MODULUS, n, s);
        Self::new(t.clone(), t.clone(), m(a), m(b), m(c)).unwrap()
    }

    /// The isomorphism `T → T^u` onto the transported triangle.
    pub fn transport(t: &CandidateTriangle, u0: &ZModMatrix, u1: &ZModMatrix, u2: &ZModMatrix) -> Self {
        Self::new(t.clone(), t.conjugate(u0, u1, u2), u0.clone(), u1.clone(), u2.clone()).unwrap()
    }

    pub fn source(&self) -> &CandidateTriangle {
        &self.source
    }

    pub fn target(&self) -> &CandidateTriangle {
        &self.target
    }

    pub fn k0(&self) -> &ZModMatrix {
        &self.k0
    }

    pub fn k1(&self) -> &ZModMatrix {
        &self.k1
    }

    pub fn k2(&self) -> &ZModMatrix {
        &self.k2
    }

    pub fn components(&self) -> [&ZModMatrix; 3] {
        [&self.k0, &self.k1, &self.k2]
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &TriangleMorphism) -> Result<TriangleMorphism, TriangleError> {
        if first.target != self.source {
            return Err(TriangleError::EndpointMismatch);
        }
        Self::new(
            first.source.clone(),
            self.target.clone(),
            self.k0.mul(&first.k0),
            self.k1.mul(&first.k1),
            self.k2.mul(&first.k2),
        )
    }

    fn same_endpoints(&self, other: &TriangleMorphism) -> Result<(), TriangleError> {
        if self.source != other.source || self.target != other.target {
            return Err(TriangleError::EndpointMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &TriangleMorphism) -> Result<TriangleMorphism, TriangleError> {
        self.same_endpoints(other)?;
        Self::new(
            self.source.clone(),
            self.target.clone(),
            self.k0.add(&other.k0),
            self.k1.add(&other.k1),
            self.k2.add(&other.k2),
        )
    }

    pub fn sub(&self, other: &TriangleMorphism) -> Result<TriangleMorphism, TriangleError> {
        self.same_endpoints(other)?;
        Self::new(
            self.source.clone(),
            self.target.clone(),
            self.k0.sub(&other.k0),
            self.k1.sub(&other.k1),
            self.k2.sub(&other.k2),
        )
    }

    pub fn is_isomorphism(&self) -> bool {
        self.components().iter().all(|k| k.is_invertible())
    }

    pub fn inverse(&self) -> Option<TriangleMorphism> {
        Self::new(
            self.target.clone(),
            self.source.clone(),
            self.k0.inverse()?,
            self.k1.inverse()?,
            self.k2.inverse()?,
        )
        .ok()
    }

    /// Same components with the `C`-component replaced.
    pub fn with_k2(&self, k2: ZModMatrix) -> Result<TriangleMorphism, TriangleError> {
        Self::new(self.source.clone(), self.target.clone(), self.k0.clone(), self.k1.clone(), k2)
    }

    pub fn direct_sum(&self, other: &TriangleMorphism) -> TriangleMorphism {
        let ds = |x: &ZModMatrix, y: &ZModMatrix| ZModMatrix::block_diag(MODULUS, &[x, y]);
        Self::new(
            self.source.direct_sum(&other.source),
            self.target.direct_sum(&other.target),
            ds(&self.k0, &other.k0),
            ds(&self.k1, &other.k1),
            ds(&self.k2, &other.k2),
        )
        .unwrap()
    }
}

/// Splits a flat vector of unknowns into matrices of the given shapes.
pub(crate) fn unflatten(x: &[u32], shapes: &[(usize, usize)]) -> Vec<ZModMatrix> {
    let mut out = Vec::with_capacity(shapes.len());
    let mut at = 0;
    for &(r, c) in shapes {
        out.push(ZModMatrix::from_vector(MODULUS, r, c, &x[at..at + r * c]));
        at += r * c;
    }
    assert_eq!(at, x.len());
    out
}

pub(crate) fn flatten(ms: &[&ZModMatrix]) -> Vec<u32> {
    ms.iter().flat_map(|m| m.entries().iter().copied()).collect()
}
