//! Random triangles and morphisms for property tests and certification runs.

use rand::Rng;

use crate::linalg::{kernel, ZModMatrix};

use super::homotopy::{homotopy_shapes, perturb};
use super::{flatten, morphism_space, unflatten, CandidateTriangle, Homotopy, TriangleMorphism, MODULUS};

pub fn matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ZModMatrix {
    let entries = (0..rows * cols).map(|_| rng.gen_range(0..MODULUS)).collect();
    ZModMatrix::from_residues(MODULUS, rows, cols, entries).unwrap()
}

pub fn invertible<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ZModMatrix {
    loop {
        let m = matrix(rng, n, n);
        if m.is_invertible() {
            return m;
        }
    }
}

/// A random Z/4-combination of generators.
fn combination<R: Rng + ?Sized>(rng: &mut R, len: usize, gens: &[Vec<u32>]) -> Vec<u32> {
    let mut v = vec![0u32; len];
    for g in gens {
        let c = rng.gen_range(0..MODULUS);
        for (x, &y) in v.iter_mut().zip(g) {
            *x = (*x + c * y) % MODULUS;
        }
    }
    v
}

/// A random candidate triangle with the given ranks (usually not exact).
pub fn candidate<R: Rng + ?Sized>(rng: &mut R, a: usize, b: usize, c: usize) -> CandidateTriangle {
    let f = matrix(rng, b, a);
    // rows of i lie in the left kernel of f
    let left = kernel(&f.transpose());
    let mut i = ZModMatrix::zeros(MODULUS, c, b);
    for r in 0..c {
        let row = combination(rng, b, &left);
        for (j, &x) in row.iter().enumerate() {
            i.set(r, j, x);
        }
    }
    // q with q i = 0 and f q = 0
    let shape = [(a, c)];
    let system = ZModMatrix::from_linear_map(MODULUS, a * c, a * b + b * c, |x| {
        let q = &unflatten(x, &shape)[0];
        flatten(&[&q.mul(&i), &f.mul(q)])
    });
    let qv = combination(rng, a * c, &kernel(&system));
    let q = unflatten(&qv, &shape).remove(0);
    CandidateTriangle::new(f, i, q).unwrap()
}

fn conjugate_randomly<R: Rng + ?Sized>(rng: &mut R, t: &CandidateTriangle) -> CandidateTriangle {
    let (a, b, c) = t.ranks();
    t.conjugate(&invertible(rng, a), &invertible(rng, b), &invertible(rng, c))
}

/// The three rotations of `Y -1-> Y -> 0 -> Y` with `Y = Z/4`.
pub fn elementary_contractibles() -> [CandidateTriangle; 3] {
    let r1 = CandidateTriangle::identity_cone(1);
    let r2 = r1.rotate();
    let r3 = r2.rotate();
    [r1, r2, r3]
}

/// A sum of rotated identity cones, transported along random isomorphisms,
/// with every object of rank at most `max_rank`.
pub fn contractible<R: Rng + ?Sized>(rng: &mut R, max_rank: usize) -> CandidateTriangle {
    let mut t = CandidateTriangle::zero();
    let pieces = elementary_contractibles();
    for _ in 0..3 * max_rank {
        let p = &pieces[rng.gen_range(0..3)];
        let (a, b, c) = t.direct_sum(p).ranks();
        if a.max(b).max(c) <= max_rank && rng.gen_bool(0.6) {
            t = t.direct_sum(p);
        }
    }
    conjugate_randomly(rng, &t)
}

/// `X(2)^s ⊕ contractible`, transported along random isomorphisms.
pub fn exact<R: Rng + ?Sized>(rng: &mut R, max_rank: usize) -> CandidateTriangle {
    let s = rng.gen_range(0..=max_rank);
    let rest = contractible(rng, max_rank - s);
    conjugate_randomly(rng, &CandidateTriangle::x2(s).direct_sum(&rest))
}

pub fn morphism<R: Rng + ?Sized>(
    rng: &mut R,
    s: &CandidateTriangle,
    t: &CandidateTriangle,
) -> TriangleMorphism {
    let mut k = TriangleMorphism::zero(s, t);
    for g in morphism_space(s, t) {
        for _ in 0..rng.gen_range(0..MODULUS) {
            k = k.add(&g).unwrap();
        }
    }
    k
}

pub fn homotopy<R: Rng + ?Sized>(
    rng: &mut R,
    s: &CandidateTriangle,
    t: &CandidateTriangle,
) -> Homotopy {
    let [s1, s2, s0] = homotopy_shapes(s, t);
    Homotopy {
        alpha1: matrix(rng, s1.0, s1.1),
        alpha2: matrix(rng, s2.0, s2.1),
        alpha0: matrix(rng, s0.0, s0.1),
    }
}

/// A random morphism together with a homotopic one and the homotopy.
pub fn homotopic_pair<R: Rng + ?Sized>(
    rng: &mut R,
    s: &CandidateTriangle,
    t: &CandidateTriangle,
) -> (TriangleMorphism, TriangleMorphism, Homotopy) {
    let k = morphism(rng, s, t);
    let h = homotopy(rng, s, t);
    let k2 = perturb(&k, &h);
    (k, k2, h)
}
