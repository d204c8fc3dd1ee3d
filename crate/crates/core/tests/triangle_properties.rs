use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tricert::linalg::{kernel, RowModule, ZModMatrix};
use tricert::triangles::{
    cone_of_map, decompose_exact, find_isomorphism, is_contractible, is_exact, mapping_cone, octahedron_modify, random,
    solve_homotopy, CandidateTriangle, TriangleMorphism,
};

/// Every `X(2)^s ⊕ R1^n1 ⊕ R2^n2 ⊕ R3^n3` with the given ranks, where the
/// `R`s are the rotations of the identity cone, of ranks (1,1,0), (0,1,1)
/// and (1,0,1).
fn models(ranks: (usize, usize, usize)) -> Vec<CandidateTriangle> {
    let (a, b, c) = ranks;
    let [r1, r2, r3] = random::elementary_contractibles();
    let mut out = Vec::new();
    for s in 0..=a.min(b).min(c) {
        for n1 in 0..=a - s {
            let n3 = a - s - n1;
            if b < s + n1 || c < s + n3 {
                continue;
            }
            let n2 = b - s - n1;
            if c != s + n2 + n3 {
                continue;
            }
            let mut t = CandidateTriangle::x2(s);
            for (piece, n) in [(&r1, n1), (&r3, n2), (&r2, n3)] {
                for _ in 0..n {
                    t = t.direct_sum(piece);
                }
            }
            out.push(t);
        }
    }
    out
}

fn exact_by_models(t: &CandidateTriangle) -> bool {
    models(t.ranks())
        .iter()
        .any(|m| find_isomorphism(m, t, 20).is_some())
}

/// The 3-periodic complex `A → B → C → A` is acyclic.
fn acyclic(t: &CandidateTriangle) -> bool {
    let pairs = [(t.q(), t.f()), (t.f(), t.i()), (t.i(), t.q())];
    pairs.iter().all(|(incoming, outgoing)| {
        let ker = RowModule::from_generators(4, outgoing.cols(), kernel(outgoing));
        let im = RowModule::from_generators(
            4,
            incoming.rows(),
            (0..incoming.cols()).map(|j| incoming.column_vec(j)),
        );
        ker.same_module(&im)
    })
}

fn all_matrices(rows: usize, cols: usize) -> Vec<ZModMatrix> {
    let n = rows * cols;
    (0..4usize.pow(n as u32))
        .map(|mut code| {
            let v: Vec<u32> = (0..n)
                .map(|_| {
                    let x = (code % 4) as u32;
                    code /= 4;
                    x
                })
                .collect();
            ZModMatrix::from_vector(4, rows, cols, &v)
        })
        .collect()
}

fn all_candidates(a: usize, b: usize, c: usize) -> Vec<CandidateTriangle> {
    let mut out = Vec::new();
    for f in all_matrices(b, a) {
        for i in all_matrices(c, b) {
            for q in all_matrices(a, c) {
                if let Ok(t) = CandidateTriangle::new(f.clone(), i.clone(), q.clone()) {
                    out.push(t);
                }
            }
        }
    }
    out
}

#[test]
fn exactness_matches_models_exhaustively_at_rank_one() {
    let mut exact_count = 0;
    for a in 0..=1 {
        for b in 0..=1 {
            for c in 0..=1 {
                for t in all_candidates(a, b, c) {
                    let w = is_exact(&t);
                    assert_eq!(w.is_exact(), exact_by_models(&t), "{t:?}");
                    if w.is_exact() {
                        exact_count += 1;
                        assert!(acyclic(&t));
                        let d = decompose_exact(&t).unwrap();
                        assert!(d.iso.is_isomorphism());
                        assert!(is_contractible(&d.contractible).is_some());
                    }
                }
            }
        }
    }
    assert!(exact_count > 0);
}

#[test]
fn fixed_two_two_zero_triangle_is_not_exact() {
    let t = CandidateTriangle::from_rows(&[&[2]], &[&[2]], &[&[0]]).unwrap();
    assert!(!is_exact(&t).is_exact());
    assert!(!acyclic(&t));
}

#[test]
fn twice_identity_of_the_cone_object_is_nonzero() {
    // X -2-> X -> Y -> X exact, yet 2·1_Y ≠ 0, for X of rank 1..3
    for n in 1..=3 {
        let cone = cone_of_map(&ZModMatrix::scalar(4, n, 2));
        assert!(is_exact(&cone.triangle).is_exact());
        let y = cone.object_rank();
        assert_eq!(y, n);
        assert!(!ZModMatrix::scalar(4, y, 2).is_zero());
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn exactness_matches_models_at_rank_two(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (r.gen_range(0..=2), r.gen_range(0..=2), r.gen_range(0..=2));
        let t = random::candidate(&mut r, a, b, c);
        prop_assert_eq!(is_exact(&t).is_exact(), exact_by_models(&t));
        let e = random::exact(&mut r, 2);
        prop_assert!(is_exact(&e).is_exact());
        prop_assert!(exact_by_models(&e));
    }

    #[test]
    fn exact_triangles_are_acyclic_and_decompose(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = random::exact(&mut r, 2);
        prop_assert!(acyclic(&t));
        let d = decompose_exact(&t).unwrap();
        prop_assert!(d.iso.is_isomorphism());
        prop_assert_eq!(d.iso.target(), &t);
        prop_assert_eq!(d.iso.source(), &CandidateTriangle::x2(d.s).direct_sum(&d.contractible));
        prop_assert!(is_contractible(&d.contractible).is_some());
    }

    #[test]
    fn exactness_is_invariant_under_isomorphism_and_contractible_sums(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (r.gen_range(0..=2), r.gen_range(0..=2), r.gen_range(0..=2));
        let t = if r.gen_bool(0.5) { random::exact(&mut r, 2) } else { random::candidate(&mut r, a, b, c) };
        let (a, b, c) = t.ranks();
        let u = t.conjugate(&random::invertible(&mut r, a), &random::invertible(&mut r, b), &random::invertible(&mut r, c));
        let e = is_exact(&t).is_exact();
        prop_assert_eq!(is_exact(&u).is_exact(), e);
        let k = random::contractible(&mut r, 2);
        prop_assert_eq!(is_exact(&t.direct_sum(&k)).is_exact(), e);
        prop_assert_eq!(is_exact(&k.direct_sum(&t)).is_exact(), e);
    }

    #[test]
    fn homotopy_is_an_equivalence_compatible_with_composition(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random::exact(&mut r, 2);
        let t = random::exact(&mut r, 2);
        let (k, k2, _) = random::homotopic_pair(&mut r, &s, &t);
        prop_assert!(solve_homotopy(&k, &k).unwrap().is_some());
        prop_assert!(solve_homotopy(&k2, &k).unwrap().is_some());
        // transitivity: k ≃ k2 ≃ k2 + (another boundary)
        let h = random::homotopy(&mut r, &s, &t);
        let d = h.boundary(&s, &t);
        let k4 = TriangleMorphism::new(s.clone(), t.clone(), k2.k0().add(&d[0]), k2.k1().add(&d[1]), k2.k2().add(&d[2])).unwrap();
        prop_assert!(solve_homotopy(&k, &k4).unwrap().is_some());

        let v_src = random::exact(&mut r, 2);
        let u_tgt = random::exact(&mut r, 2);
        let v = random::morphism(&mut r, &v_src, &s);
        let u = random::morphism(&mut r, &t, &u_tgt);
        let left = u.compose(&k).unwrap().compose(&v).unwrap();
        let right = u.compose(&k2).unwrap().compose(&v).unwrap();
        prop_assert!(solve_homotopy(&left, &right).unwrap().is_some());
    }

    #[test]
    fn homotopic_morphisms_have_equally_exact_cones(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random::exact(&mut r, 2);
        let t = random::exact(&mut r, 2);
        let (k, k2, _) = random::homotopic_pair(&mut r, &s, &t);
        prop_assert_eq!(is_exact(&mapping_cone(&k)).is_exact(), is_exact(&mapping_cone(&k2)).is_exact());
    }

    #[test]
    fn octahedron_modification_gives_exact_cones(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random::exact(&mut r, 2);
        let t = random::exact(&mut r, 2);
        let k = random::morphism(&mut r, &s, &t);
        let k2 = octahedron_modify(&k).unwrap();
        prop_assert_eq!(k2.k0(), k.k0());
        prop_assert_eq!(k2.k1(), k.k1());
        prop_assert!(is_exact(&mapping_cone(&k2)).is_exact());
    }
}

#[test]
fn homotopic_cones_are_isomorphic_at_rank_one() {
    let mut r = rng(11);
    let mut checked = 0;
    for _ in 0..60 {
        let s = random::exact(&mut r, 1);
        let t = random::exact(&mut r, 1);
        let (k, k2, _) = random::homotopic_pair(&mut r, &s, &t);
        let (c1, c2) = (mapping_cone(&k), mapping_cone(&k2));
        assert!(find_isomorphism(&c1, &c2, 24).is_some(), "{k:?} vs {k2:?}");
        checked += 1;
    }
    assert_eq!(checked, 60);
}
