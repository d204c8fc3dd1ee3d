use crate::linalg::{solve, ZModMatrix};

use super::{flatten, unflatten, CandidateTriangle, TriangleError, TriangleMorphism, MODULUS};

/// `(α1: B → A', α2: C → B', α0: A → C')` with
/// `k1' − k1 = f'α1 + α2 i`, `k2' − k2 = i'α2 + α0 q`, `k0' − k0 = q'α0 + α1 f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    pub alpha1: ZModMatrix,
    pub alpha2: ZModMatrix,
    pub alpha0: ZModMatrix,
}

impl Homotopy {
    /// The differences `(k0' − k0, k1' − k1, k2' − k2)` this homotopy produces.
    pub fn boundary(
        &self,
        source: &CandidateTriangle,
        target: &CandidateTriangle,
    ) -> [ZModMatrix; 3] {
        homotopy_terms(source, target, &self.alpha1, &self.alpha2, &self.alpha0)
    }

    /// Whether it is a homotopy from `k` to `k2`.
    pub fn connects(&self, k: &TriangleMorphism, k2: &TriangleMorphism) -> bool {
        let d = self.boundary(k.source(), k.target());
        d[0] == k2.k0().sub(k.k0()) && d[1] == k2.k1().sub(k.k1()) && d[2] == k2.k2().sub(k.k2())
    }
}

fn homotopy_terms(
    s: &CandidateTriangle,
    t: &CandidateTriangle,
    alpha1: &ZModMatrix,
    alpha2: &ZModMatrix,
    alpha0: &ZModMatrix,
) -> [ZModMatrix; 3] {
    [
        t.q().mul(alpha0).add(&alpha1.mul(s.f())),
        t.f().mul(alpha1).add(&alpha2.mul(s.i())),
        t.i().mul(alpha2).add(&alpha0.mul(s.q())),
    ]
}

/// The morphism `k + (q'α0 + α1 f, f'α1 + α2 i, i'α2 + α0 q)`, which is homotopic to `k`.
pub(crate) fn perturb(k: &TriangleMorphism, h: &Homotopy) -> TriangleMorphism {
    let d = h.boundary(k.source(), k.target());
    TriangleMorphism::new(
        k.source().clone(),
        k.target().clone(),
        k.k0().add(&d[0]),
        k.k1().add(&d[1]),
        k.k2().add(&d[2]),
    )
    .expect("homotopic morphisms commute")
}

pub(crate) fn homotopy_shapes(s: &CandidateTriangle, t: &CandidateTriangle) -> [(usize, usize); 3] {
    let (a, b, c) = s.ranks();
    let (a2, b2, c2) = t.ranks();
    [(a2, b), (b2, c), (c2, a)]
}

/// Solves the three homotopy equations as one linear system.
pub fn solve_homotopy(
    k: &TriangleMorphism,
    k2: &TriangleMorphism,
) -> Result<Option<Homotopy>, TriangleError> {
    if k.source() != k2.source() || k.target() != k2.target() {
        return Err(TriangleError::EndpointMismatch);
    }
    let (s, t) = (k.source(), k.target());
    let shapes = homotopy_shapes(s, t);
    let unknowns: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let diffs = [k2.k0().sub(k.k0()), k2.k1().sub(k.k1()), k2.k2().sub(k.k2())];
    let rhs = flatten(&[&diffs[0], &diffs[1], &diffs[2]]);
    let system = ZModMatrix::from_linear_map(MODULUS, unknowns, rhs.len(), |x| {
        let m = unflatten(x, &shapes);
        let d = homotopy_terms(s, t, &m[0], &m[1], &m[2]);
        flatten(&[&d[0], &d[1], &d[2]])
    });
    let Some(x) = solve(&system, &rhs)?.particular else {
        return Ok(None);
    };
    let m = unflatten(&x, &shapes);
    let h = Homotopy {
        alpha1: m[0].clone(),
        alpha2: m[1].clone(),
        alpha0: m[2].clone(),
    };
    debug_assert!(h.connects(k, k2));
    Ok(Some(h))
}

/// A homotopy from the identity to zero, if one exists.
pub fn is_contractible(t: &CandidateTriangle) -> Option<Homotopy> {
    solve_homotopy(&TriangleMorphism::identity(t), &TriangleMorphism::zero(t, t))
        .expect("same endpoints")
}
