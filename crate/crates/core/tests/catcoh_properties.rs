use std::collections::HashSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tricert::catcoh::*;
use tricert::linalg::{Coset, FinAbGroup, ZModMatrix};

struct Setup {
    toda: FinCategory,
    p: ProjTruncation,
    phi: Functor,
    hom: Bimodule,
    hom2: Bimodule,
    push: BimoduleMorphism,
}

fn setup() -> Setup {
    let toda = build_toda_category();
    let p = truncated_proj_category(4, 1).unwrap();
    let two = ZModMatrix::from_rows(4, &[&[2]]);
    let phi = diagram_functor(&toda, &p, [&two, &two, &two]).unwrap();
    let incl = ZModMatrix::from_rows(4, &[&[2]]);
    let (src, dst, t) = coefficient_map(&p, &[2], &[4], &incl).unwrap();
    Setup {
        hom: dst.pullback(&toda, &phi),
        hom2: src.pullback(&toda, &phi),
        push: t.pullback(&toda, &phi),
        toda,
        p,
        phi,
    }
}

fn j(t: &FinCategory) -> [usize; 3] {
    [t.find("j3").unwrap(), t.find("j2").unwrap(), t.find("j1").unwrap()]
}

fn same_coset(a: &Coset, b: &Coset) -> bool {
    a.contains(b.representative()) && b.contains(a.representative()) && a.index() == b.index()
}

/// `P(Z/4)_{≤1} → P(Z/2)_{≤1}`, reduction of matrices.
fn reduction(p4: &ProjTruncation, p2: &ProjTruncation) -> Functor {
    let c = p4.category();
    let objects = (0..c.object_count()).collect();
    let morphisms = (0..c.morphism_count())
        .map(|m| p2.morphism_of(&p4.matrix(m).reduce_mod(2)).unwrap())
        .collect();
    Functor::new(c, p2.category(), objects, morphisms).unwrap()
}

fn dd_cochain(cat: &FinCategory, l: &Bimodule, n: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space = SeqSpace::new(cat, l, n, Variance::Cochain, false).unwrap();
    let c = random_cochain(&mut rng, &space);
    let dd = bw_differential(cat, l, &bw_differential(cat, l, &c).unwrap()).unwrap();
    assert!(dd.is_zero(), "degree {n}");
}

fn dd_chain(cat: &FinCategory, l: &Bimodule, n: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space = SeqSpace::new(cat, l, n, Variance::Chain, false).unwrap();
    let z = random_chain(&mut rng, &space);
    let dd = pw_differential(cat, l, &pw_differential(cat, l, &z).unwrap()).unwrap();
    assert!(dd.is_zero(), "degree {n}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dd_vanishes_on_toda(seed in any::<u64>(), n in 0usize..=3) {
        let s = setup();
        dd_cochain(&s.toda, &s.hom, n, seed);
        dd_cochain(&s.toda, &s.hom2, n, seed);
        dd_chain(&s.toda, &s.hom, n + 2, seed);
    }

    #[test]
    fn dd_vanishes_on_truncations(seed in any::<u64>(), n in 0usize..=4) {
        let p = truncated_proj_category(4, 1).unwrap();
        for m in [vec![4], vec![2, 4]] {
            let l = hom_tensor(&p, &m).unwrap();
            dd_cochain(p.category(), &l, n, seed);
            dd_chain(p.category(), &l, n + 2, seed);
        }
        if n <= 2 {
            let p = truncated_proj_category(2, 2).unwrap();
            let l = hom(&p);
            dd_cochain(p.category(), &l, n, seed);
            dd_chain(p.category(), &l, n + 2, seed);
        }
    }

    #[test]
    fn normalized_cochains_form_a_subcomplex(seed in any::<u64>(), n in 0usize..=3) {
        let p = truncated_proj_category(4, 1).unwrap();
        let l = hom_tensor(&p, &[2, 4]).unwrap();
        let cat = p.category();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let space = SeqSpace::new(cat, &l, n, Variance::Cochain, true).unwrap();
        let dc = bw_differential(cat, &l, &random_cochain(&mut rng, &space)).unwrap();
        for (seq, _) in dc.support() {
            prop_assert!(seq.iter().all(|&m| !cat.is_degenerate(m as usize)));
        }
    }

    #[test]
    fn pullback_commutes_with_pushforward(seed in any::<u64>(), n in 0usize..=3) {
        let s = setup();
        let incl = ZModMatrix::from_rows(4, &[&[2]]);
        let (src, dst, t) = coefficient_map(&s.p, &[2], &[4], &incl).unwrap();
        let cat = s.p.category();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let space = SeqSpace::new(cat, &src, n, Variance::Cochain, false).unwrap();
        let c = random_cochain(&mut rng, &space);
        let a = pullback_cochain(&s.toda, &dst, &s.phi, &pushforward_cochain(cat, &dst, &t, &c)).unwrap();
        let b = pushforward_cochain(&s.toda, &s.hom, &s.push, &pullback_cochain(&s.toda, &src, &s.phi, &c).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn pullback_is_contravariant(seed in any::<u64>(), n in 0usize..=3) {
        let s = setup();
        let p2 = truncated_proj_category(2, 1).unwrap();
        let g = reduction(&s.p, &p2);
        let l = hom(&p2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let space = SeqSpace::new(p2.category(), &l, n, Variance::Cochain, false).unwrap();
        let c = random_cochain(&mut rng, &space);
        let direct = pullback_cochain(&s.toda, &l, &s.phi.then(&g), &c).unwrap();
        let mid = pullback_cochain(s.p.category(), &l, &g, &c).unwrap();
        let stepwise = pullback_cochain(&s.toda, &l.pullback(s.p.category(), &g), &s.phi, &mid).unwrap();
        prop_assert_eq!(direct, stepwise);
    }

    #[test]
    fn alpha_is_the_trace_pairing(p in 1usize..=3, q in 1usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = trace_duality(p, q, &[4]).unwrap();
        let f: Vec<u32> = (0..q * p).map(|_| rng.gen_range(0..4)).collect();
        let g: Vec<u32> = (0..p * q).map(|_| rng.gen_range(0..4)).collect();
        let x: Vec<u32> = (0..p).map(|_| rng.gen_range(0..4)).collect();
        let fm = ZModMatrix::from_vector(4, q, p, &f);
        let gm = ZModMatrix::from_vector(4, p, q, &g);
        let fg = fm.mul(&gm);
        let tr = (0..q).map(|i| fg.get(i, i)).sum::<u32>() % 4;
        let functional = t.alpha.apply(&f);
        let value = functional.iter().zip(&g).map(|(a, b)| a * b).sum::<u32>() % 4;
        prop_assert_eq!(value, tr);
        // β(f) evaluated at x is f x
        let bf = ZModMatrix::from_vector(4, q, p, &t.beta.apply(&f));
        prop_assert_eq!(bf.mul_vec(&x), fm.mul_vec(&x));
    }
}

#[test]
fn toda_h3_three_ways() {
    let s = setup();
    let nc = normalized_cohomology(&s.toda, &s.hom, 3).unwrap();
    let q = h3_toda_quotient(&s.toda, &s.hom).unwrap();
    let z2 = FinAbGroup::cyclic(2);
    assert_eq!(nc.full.group(), &z2);
    assert_eq!(nc.normalized.group(), &z2);
    assert_eq!(q.group(), &z2);
    assert!(nc.is_isomorphism());

    // the cocycle supported on (j3, j2, j1) with value 1
    let [h, g, f] = j(&s.toda);
    let mut c = Cochain::zero(3);
    c.set(&s.toda, &s.hom, vec![h as u32, g as u32, f as u32], vec![1]);
    assert!(bw_differential(&s.toda, &s.hom, &c).unwrap().is_zero());
    assert!(nc.normalized.is_cocycle(&c));
    assert_eq!(nc.normalized.class(&c).unwrap(), vec![1]);
    assert_eq!(nc.full.class(&c).unwrap(), vec![1]);
    assert_eq!(q.class_of_cocycle(&s.toda, &s.hom, &c).unwrap(), vec![1]);

    // class maps agree on every generator
    for gen in nc.normalized.generators() {
        let a = nc.comparison.apply(&nc.normalized.class(&gen).unwrap());
        assert_eq!(a, nc.full.class(&gen).unwrap());
        assert_eq!(q.class_of_cocycle(&s.toda, &s.hom, &gen).unwrap(), a);
    }
    // 2c is a coboundary
    let c2 = c.add(&c, &s.toda, &s.hom);
    assert_eq!(nc.full.class(&c2).unwrap(), vec![0]);
}

#[test]
fn z2_coefficients_push_forward_to_zero() {
    let s = setup();
    let h2 = normalized_cohomology(&s.toda, &s.hom2, 3).unwrap();
    let h4 = normalized_cohomology(&s.toda, &s.hom, 3).unwrap();
    assert_eq!(h2.full.group(), &FinAbGroup::cyclic(2));
    assert_eq!(h3_toda_quotient(&s.toda, &s.hom2).unwrap().group(), &FinAbGroup::cyclic(2));
    let push = |c: &Cochain| Ok(pushforward_cochain(&s.toda, &s.hom, &s.push, c));
    let full = induced_map(&h2.full, &h4.full, push).unwrap();
    let normalized = induced_map(&h2.normalized, &h4.normalized, push).unwrap();
    assert!(full.is_zero());
    assert!(normalized.is_zero());
    // by hand: the generator 1 of M(1,4) = Z/2 goes to 2, which lies in 2Z/4
    let q = h3_toda_quotient(&s.toda, &s.hom).unwrap();
    assert_eq!(q.class_of_value(&[2]).unwrap(), vec![0]);
}

#[test]
fn zeta_bracket_sweep_on_toda() {
    let s = setup();
    let diagram = j(&s.toda);
    let h2 = normalized_cohomology(&s.toda, &s.hom2, 3).unwrap();
    let h4 = normalized_cohomology(&s.toda, &s.hom, 3).unwrap();
    let push = induced_map(&h2.full, &h4.full, |c| Ok(pushforward_cochain(&s.toda, &s.hom, &s.push, c))).unwrap();
    let image: HashSet<Vec<u32>> = h2.full.group().elements().iter().map(|x| push.apply(x)).collect();
    for zeta in &image {
        let b = zeta_toda_bracket(&s.toda, &s.hom, &h4, zeta, diagram).unwrap();
        assert!(b.is_zero(), "{zeta:?}");
    }
    let b = zeta_toda_bracket(&s.toda, &s.hom, &h4, &[1], diagram).unwrap();
    assert_eq!(b.describe(), "1 + 2Z/4");
    assert_eq!(b.index(), 2);
    assert!(!b.is_zero());
}

#[test]
fn zeta_bracket_sweep_on_the_truncation() {
    let s = setup();
    let cat = s.p.category();
    let incl = ZModMatrix::from_rows(4, &[&[2]]);
    let (src, dst, t) = coefficient_map(&s.p, &[2], &[4], &incl).unwrap();
    let h2 = normalized_cohomology(cat, &src, 3).unwrap();
    let h4 = normalized_cohomology(cat, &dst, 3).unwrap();
    let push = induced_map(&h2.full, &h4.full, |c| Ok(pushforward_cochain(cat, &dst, &t, c))).unwrap();
    let two = s.p.morphism_of(&incl).unwrap();
    let image: HashSet<Vec<u32>> = h2.full.group().elements().iter().map(|x| push.apply(x)).collect();
    for zeta in &image {
        let b = zeta_toda_bracket(cat, &dst, &h4, zeta, [two, two, two]).unwrap();
        assert!(b.is_zero(), "{zeta:?}");
    }
}

#[test]
fn zeta_bracket_ignores_the_representative() {
    let s = setup();
    let diagram = j(&s.toda);
    let [h, g, f] = diagram;
    let mut c = Cochain::zero(3);
    c.set(&s.toda, &s.hom, vec![h as u32, g as u32, f as u32], vec![1]);
    let base = zeta_bracket_of_cocycle(&s.toda, &s.hom, &c, diagram).unwrap();
    let space = SeqSpace::new(&s.toda, &s.hom, 2, Variance::Cochain, true).unwrap();
    let all = FinAbGroup::new(space.orders().to_vec()).unwrap().elements();
    assert_eq!(all.len(), 16);
    for v in all {
        let db = bw_differential(&s.toda, &s.hom, &space.cochain(&v)).unwrap();
        let moved = zeta_bracket_of_cocycle(&s.toda, &s.hom, &c.add(&db, &s.toda, &s.hom), diagram).unwrap();
        assert!(same_coset(&base, &moved));
    }
}

#[test]
fn diagram_must_have_vanishing_composites() {
    let s = setup();
    let c = Cochain::zero(3);
    let one = s.toda.find("1_1").unwrap();
    let j1 = s.toda.find("j1").unwrap();
    let j2 = s.toda.find("j2").unwrap();
    assert!(zeta_bracket_of_cocycle(&s.toda, &s.hom, &c, [j2, one, j1]).is_err());
    assert!(zeta_bracket_of_cocycle(&s.toda, &s.hom, &c, [j2, j1, j1]).is_err());
}

fn endomorphism_families_match_h0(p: &ProjTruncation, expected: usize) {
    let cat = p.category();
    let l = hom(p);
    let fams = identity_endomorphisms(cat, FAMILY_LIMIT).unwrap();
    assert_eq!(fams.len(), expected);
    let h0 = cohomology(cat, &l, 0).unwrap();
    assert_eq!(h0.group().order(), expected as u128);
    let mut classes = HashSet::new();
    for fam in &fams {
        let mut c = Cochain::zero(0);
        for (x, &e) in fam.iter().enumerate() {
            c.set(cat, &l, vec![cat.identity(x) as u32], p.matrix(e).to_vector());
        }
        assert!(h0.is_cocycle(&c));
        classes.insert(h0.class(&c).unwrap());
    }
    assert_eq!(classes.len(), expected);
}

#[test]
fn h0_is_the_endomorphisms_of_the_identity() {
    let p2 = truncated_proj_category(2, 2).unwrap();
    endomorphism_families_match_h0(&p2, 2);
    let fams = identity_endomorphisms(p2.category(), FAMILY_LIMIT).unwrap();
    let is = |f: &Vec<usize>, scalar: u32| {
        f.iter().all(|&e| p2.matrix(e) == &ZModMatrix::scalar(2, p2.matrix(e).rows(), scalar as i64))
    };
    assert!(fams.iter().any(|f| is(f, 0)));
    assert!(fams.iter().any(|f| is(f, 1)));
    endomorphism_families_match_h0(&truncated_proj_category(4, 1).unwrap(), 4);
}

/// `|⊕_X End(X) / ⟨fg − gf⟩|` by closing the commutator subgroup in a bitset.
fn trace_quotient_order(p: &ProjTruncation) -> usize {
    let cat = p.category();
    let m = p.modulus();
    let ranks: Vec<usize> = (0..cat.object_count()).collect();
    let offsets: Vec<usize> = ranks.iter().scan(0, |acc, &r| {
        let o = *acc;
        *acc += r * r;
        Some(o)
    }).collect();
    let dim: usize = ranks.iter().map(|r| r * r).sum();
    let size = (m as usize).pow(dim as u32);
    let encode = |v: &[u32]| v.iter().fold(0usize, |a, &x| a * m as usize + x as usize);
    let mut gens = HashSet::new();
    for x in 0..ranks.len() {
        for y in 0..ranks.len() {
            for &f in cat.hom(x, y) {
                for &g in cat.hom(y, x) {
                    let mut v = vec![0u32; dim];
                    let fg = p.matrix(f).mul(p.matrix(g)).to_vector();
                    let gf = p.matrix(g).mul(p.matrix(f)).to_vector();
                    for (i, a) in fg.into_iter().enumerate() {
                        v[offsets[y] + i] = (v[offsets[y] + i] + a) % m;
                    }
                    for (i, a) in gf.into_iter().enumerate() {
                        v[offsets[x] + i] = (v[offsets[x] + i] + m - a) % m;
                    }
                    gens.insert(v);
                }
            }
        }
    }
    let mut seen = vec![false; size];
    let mut elems = vec![vec![0u32; dim]];
    seen[0] = true;
    let mut i = 0;
    while i < elems.len() {
        for gen in &gens {
            let s: Vec<u32> = elems[i].iter().zip(gen).map(|(a, b)| (a + b) % m).collect();
            let k = encode(&s);
            if !seen[k] {
                seen[k] = true;
                elems.push(s);
            }
        }
        i += 1;
    }
    size / elems.len()
}

#[test]
fn h0_homology_is_the_trace_quotient() {
    let p4 = truncated_proj_category(4, 2).unwrap();
    assert_eq!(trace_quotient_order(&p4), 4);
    assert_eq!(homology(p4.category(), &hom(&p4), 0).unwrap().group(), &FinAbGroup::cyclic(4));
    let p2 = truncated_proj_category(2, 2).unwrap();
    assert_eq!(trace_quotient_order(&p2), 2);
    assert_eq!(homology(p2.category(), &hom(&p2), 0).unwrap().group(), &FinAbGroup::cyclic(2));
}

#[test]
fn trace_dualities_are_bijective() {
    for m in [vec![2], vec![4], vec![2, 4]] {
        for p in 0..=3 {
            for q in 0..=3 {
                let t = trace_duality(p, q, &m).unwrap();
                assert!(t.alpha.is_bijective(), "α {p} {q} {m:?}");
                assert!(t.beta.is_bijective(), "β {p} {q} {m:?}");
                assert!(t.comparison().unwrap().is_bijective());
            }
        }
    }
}

#[test]
fn dualization_commutes_with_differentials() {
    let p = truncated_proj_category(4, 1).unwrap();
    for m in [vec![2], vec![4], vec![2, 4]] {
        let d = dualize_chain_complex(&p, &m, 3).unwrap();
        assert_eq!(d.degrees.len(), 4);
        assert!(d.holds(), "{m:?}");
    }
    let p2 = truncated_proj_category(4, 2).unwrap();
    assert!(matches!(dualize_chain_complex(&p2, &[4], 1), Err(CatError::SizeLimit { .. })));
}

#[test]
fn limits_and_bad_inputs() {
    assert!(matches!(truncated_proj_category(4, 3), Err(CatError::SizeLimit { .. })));
    assert!(matches!(truncated_proj_category(3, 1), Err(CatError::UnsupportedModulus(3))));
    let s = setup();
    let tampered = build_toda_category().with_composite(
        s.toda.find("j2").unwrap(),
        s.toda.find("j1").unwrap(),
        s.toda.find("j1").unwrap(),
    );
    assert!(tampered.check_axioms().is_err());
    let p = truncated_proj_category(4, 2).unwrap();
    let l = hom(&p);
    assert!(matches!(
        composable_sequences(p.category(), 4, false, SEQUENCE_LIMIT),
        Err(CatError::SizeLimit { .. })
    ));
    assert!(SeqSpace::new(p.category(), &l, 1, Variance::Cochain, false).is_ok());
}
