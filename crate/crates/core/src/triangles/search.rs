use crate::linalg::{kernel, ZModMatrix};

use super::{flatten, unflatten, CandidateTriangle, TriangleMorphism, MODULUS};

/// Generators of the group of morphisms `s → t`.
pub fn morphism_space(s: &CandidateTriangle, t: &CandidateTriangle) -> Vec<TriangleMorphism> {
    let (a, b, c) = s.ranks();
    let (a2, b2, c2) = t.ranks();
    let shapes = [(a2, a), (b2, b), (c2, c)];
    let unknowns: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let outputs = b2 * a + c2 * b + a2 * c;
    let system = ZModMatrix::from_linear_map(MODULUS, unknowns, outputs, |x| {
        let k = unflatten(x, &shapes);
        flatten(&[
            &k[1].mul(s.f()).sub(&t.f().mul(&k[0])),
            &k[2].mul(s.i()).sub(&t.i().mul(&k[1])),
            &k[0].mul(s.q()).sub(&t.q().mul(&k[2])),
        ])
    });
    kernel(&system)
        .into_iter()
        .map(|g| {
            let k = unflatten(&g, &shapes);
            TriangleMorphism::new(s.clone(), t.clone(), k[0].clone(), k[1].clone(), k[2].clone())
                .expect("kernel elements are morphisms")
        })
        .collect()
}

/// Searches for an isomorphism `s → t`.
///
/// Invertibility only depends on the reduction mod 2, so it is enough to
/// try the 0/1 combinations of the generators. Gives up (returns `None`)
/// when there are more than `max_generators` of them.
pub fn find_isomorphism(
    s: &CandidateTriangle,
    t: &CandidateTriangle,
    max_generators: usize,
) -> Option<TriangleMorphism> {
    if s.ranks() != t.ranks() {
        return None;
    }
    let gens = morphism_space(s, t);
    assert!(gens.len() <= max_generators, "too many generators for exhaustive search");
    let zero = TriangleMorphism::zero(s, t);
    for mask in 0u64..(1u64 << gens.len()) {
        let mut k = zero.clone();
        for (bit, g) in gens.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                k = k.add(g).unwrap();
            }
        }
        if k.is_isomorphism() {
            return Some(k);
        }
    }
    None
}
