use std::collections::HashSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::catcoh::{
    build_toda_category, cohomology, coefficient_map, diagram_functor, dualize_chain_complex, h3_toda_quotient,
    hom, homology, identity_endomorphisms, induced_map, normalized_cohomology, pushforward_cochain,
    trace_duality, truncated_proj_category, zeta_toda_bracket, Bimodule, BimoduleMorphism, Cochain, FinCategory,
    NormalizedCohomology, ProjTruncation, FAMILY_LIMIT,
};
use crate::frobenius::{injective_hull, is_stably_zero, suspension, FGModMorphism, FGModZ4};
use crate::linalg::{FinAbGroup, ZModMatrix};
use crate::toda::{toda_bracket, TodaInput};
use crate::triangles::{
    cone_of_map, decompose_exact, is_contractible, is_exact, mapping_cone, morphism_space, octahedron_modify,
    random, CandidateTriangle, TriangleMorphism,
};

use super::report::{Assumption, CertificateReport, Check, Status};
use super::Config;

struct Outcome {
    status: Status,
    result: String,
    witness: Value,
}

fn verdict(ok: bool, result: impl Into<String>, witness: Value) -> Outcome {
    Outcome {
        status: if ok { Status::Pass } else { Status::Fail },
        result: result.into(),
        witness,
    }
}

fn skip(reason: &str) -> Outcome {
    Outcome {
        status: Status::Skip,
        result: reason.to_string(),
        witness: Value::Null,
    }
}

type CheckResult = Result<Outcome, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn rng_for(config: &Config, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(config.seed);
    r.set_stream(stream);
    r
}

fn scalar(v: i64) -> ZModMatrix {
    ZModMatrix::from_rows(4, &[&[v]])
}

fn toda(config: &Config) -> FinCategory {
    let t = build_toda_category();
    if config.tamper_toda {
        let (j1, j2) = (t.find("j1").unwrap(), t.find("j2").unwrap());
        t.with_composite(j2, j1, j1)
    } else {
        t
    }
}

/// The Toda category after its axiom check, so that a tampered table
/// fails every check built on it.
fn checked_toda(config: &Config) -> Result<FinCategory, String> {
    let t = toda(config);
    t.check_axioms().map_err(|e| format!("Toda category rejected: {e}"))?;
    Ok(t)
}

struct TodaSetup {
    toda: FinCategory,
    p: ProjTruncation,
    hom: Bimodule,
    hom2: Bimodule,
    push: BimoduleMorphism,
    diagram: [usize; 3],
}

fn toda_setup(config: &Config) -> Result<TodaSetup, String> {
    let toda = checked_toda(config)?;
    let p = truncated_proj_category(4, 1).map_err(err)?;
    let two = scalar(2);
    let phi = diagram_functor(&toda, &p, [&two, &two, &two]).map_err(err)?;
    let (src, dst, t) = coefficient_map(&p, &[2], &[4], &two).map_err(err)?;
    let diagram = [toda.find("j3").unwrap(), toda.find("j2").unwrap(), toda.find("j1").unwrap()];
    Ok(TodaSetup {
        hom: dst.pullback(&toda, &phi),
        hom2: src.pullback(&toda, &phi),
        push: t.pullback(&toda, &phi),
        toda,
        p,
        diagram,
    })
}

/// Nonzero values of a cochain, e.g. `c(j3,j2,j1) = 1`.
pub fn describe_cochain(cat: &FinCategory, c: &Cochain) -> String {
    let parts: Vec<String> = c
        .support()
        .map(|(seq, v)| {
            let names: Vec<&str> = seq.iter().map(|&m| cat.name(m as usize)).collect();
            let value = if v.len() == 1 { v[0].to_string() } else { format!("{v:?}") };
            format!("c({}) = {}", names.join(","), value)
        })
        .collect();
    if parts.is_empty() {
        "c = 0".to_string()
    } else {
        parts.join(", ")
    }
}

fn category_axioms_toda(config: &Config) -> CheckResult {
    let t = toda(config);
    Ok(match t.check_axioms() {
        Ok(()) => verdict(
            true,
            format!("{} objects, {} morphisms", t.object_count(), t.morphism_count()),
            json!({"objects": t.object_count(), "morphisms": t.morphism_count()}),
        ),
        Err(e) => verdict(false, e.to_string(), json!({"error": e.to_string()})),
    })
}

fn random_ranks<R: Rng>(r: &mut R, max: usize) -> (usize, usize) {
    (r.gen_range(0..=max), r.gen_range(0..=max))
}

fn triangle_axioms(config: &Config) -> CheckResult {
    if config.max_rank == 0 {
        return Ok(skip("max_rank = 0"));
    }
    let mut r = rng_for(config, 1);
    let (mut tr1, mut tr2, mut tr3) = (0, 0, 0);
    let mut failures = Vec::new();
    for _ in 0..config.samples {
        let (a, b) = random_ranks(&mut r, config.max_rank);
        let f = random::matrix(&mut r, b, a);
        let cone = cone_of_map(&f).triangle;
        let t = random::exact(&mut r, config.max_rank);
        let (ra, rb, rc) = t.ranks();
        let u = t.conjugate(
            &random::invertible(&mut r, ra),
            &random::invertible(&mut r, rb),
            &random::invertible(&mut r, rc),
        );
        if is_exact(&cone).is_exact() && is_exact(&u).is_exact() {
            tr1 += 1;
        } else {
            failures.push(json!({"axiom": "Tr1", "f": f}));
        }
        let rot = t.rotate();
        let thrice = rot.rotate().rotate();
        let negated = CandidateTriangle::new(t.f().neg(), t.i().neg(), t.q().neg()).map_err(err)?;
        if is_exact(&rot).is_exact() && is_exact(&thrice).is_exact() && thrice == negated {
            tr2 += 1;
        } else {
            failures.push(json!({"axiom": "Tr2", "triangle": t}));
        }
        let s = random::exact(&mut r, config.max_rank);
        let k = random::morphism(&mut r, &s, &t);
        match octahedron_modify(&k) {
            Ok(k2) if k2.k0() == k.k0() && k2.k1() == k.k1() => tr3 += 1,
            _ => failures.push(json!({"axiom": "Tr3", "source": s, "target": t})),
        }
    }
    for n in 0..=config.max_rank {
        if !is_exact(&CandidateTriangle::identity_cone(n)).is_exact() {
            failures.push(json!({"axiom": "Tr1", "identity_cone": n}));
        }
    }
    let ok = failures.is_empty();
    Ok(verdict(
        ok,
        format!("Tr1 {tr1}, Tr2 {tr2}, Tr3 {tr3} of {} samples", config.samples),
        json!({"samples": config.samples, "tr1": tr1, "tr2": tr2, "tr3": tr3, "failures": failures}),
    ))
}

/// Exact triangles of the exactness suite: `X(2)` up to rank 3, the
/// elementary contractibles, and random sums `X(2)^s ⊕ K`.
fn exact_samples(config: &Config) -> Vec<CandidateTriangle> {
    let mut out: Vec<CandidateTriangle> = (0..=3).map(CandidateTriangle::x2).collect();
    out.extend(random::elementary_contractibles());
    let mut r = rng_for(config, 2);
    for _ in 0..config.samples {
        out.push(random::contractible(&mut r, config.max_rank));
        out.push(random::exact(&mut r, config.max_rank));
    }
    out
}

fn exactness_suite(config: &Config) -> CheckResult {
    if config.max_rank == 0 {
        return Ok(skip("max_rank = 0"));
    }
    let samples = exact_samples(config);
    let bad: Vec<&CandidateTriangle> = samples.iter().filter(|t| !is_exact(t).is_exact()).collect();
    let non_exact = CandidateTriangle::from_rows(&[&[2]], &[&[2]], &[&[0]]).map_err(err)?;
    let w = is_exact(&non_exact);
    Ok(verdict(
        bad.is_empty() && !w.is_exact(),
        format!("{} exact triangles confirmed; (2,2,0) rejected", samples.len()),
        json!({"tested": samples.len(), "failures": bad, "rejected": w.describe()}),
    ))
}

/// Every exact triangle with objects of rank at most 1.
fn rank_one_exact() -> Vec<CandidateTriangle> {
    let mut out = Vec::new();
    for shape in 0..8u32 {
        let (a, b, c) = ((shape & 1) as usize, ((shape >> 1) & 1) as usize, ((shape >> 2) & 1) as usize);
        let entries = a * b + b * c + c * a;
        for code in 0..4u32.pow(entries as u32) {
            let mut v = (0..entries).map(|k| (code >> (2 * k)) & 3);
            let mut take = |rows, cols| {
                let e: Vec<u32> = (0..rows * cols).map(|_| v.next().unwrap()).collect();
                ZModMatrix::from_vector(4, rows, cols, &e)
            };
            let f = take(b, a);
            let i = take(c, b);
            let q = take(a, c);
            if let Ok(t) = CandidateTriangle::new(f, i, q) {
                if is_exact(&t).is_exact() {
                    out.push(t);
                }
            }
        }
    }
    out
}

fn all_morphisms(s: &CandidateTriangle, t: &CandidateTriangle) -> Vec<TriangleMorphism> {
    let mut seen = HashSet::new();
    let mut out = vec![TriangleMorphism::zero(s, t)];
    seen.insert(out[0].components().map(|m| m.to_vector()));
    for g in morphism_space(s, t) {
        let mut next = Vec::new();
        for k in &out {
            let mut x = k.clone();
            for _ in 0..3 {
                x = x.add(&g).expect("same endpoints");
                if seen.insert(x.components().map(|m| m.to_vector())) {
                    next.push(x.clone());
                }
            }
        }
        out.extend(next);
    }
    out
}

fn octahedral(config: &Config) -> CheckResult {
    if config.max_rank == 0 {
        return Ok(skip("max_rank = 0"));
    }
    let x = CandidateTriangle::x2(1);
    let k = TriangleMorphism::scalar(&x, 2);
    let k2 = octahedron_modify(&k).map_err(err)?;
    let worked = k2.components() == [&scalar(2), &scalar(2), &scalar(0)] && is_exact(&mapping_cone(&k2)).is_exact();

    let test = |k: &TriangleMorphism| match octahedron_modify(k) {
        Ok(k2) if k2.k0() == k.k0() && k2.k1() == k.k1() && is_exact(&mapping_cone(&k2)).is_exact() => None,
        _ => Some(json!({"k0": k.k0(), "k1": k.k1(), "k2": k.k2()})),
    };
    let mut failures = Vec::new();
    let mut exhaustive = 0usize;
    let small = rank_one_exact();
    for s in &small {
        for t in &small {
            for k in all_morphisms(s, t) {
                exhaustive += 1;
                failures.extend(test(&k));
            }
        }
    }
    let mut r = rng_for(config, 3);
    for _ in 0..config.samples {
        let s = random::exact(&mut r, config.max_rank);
        let t = random::exact(&mut r, config.max_rank);
        failures.extend(test(&random::morphism(&mut r, &s, &t)));
    }
    Ok(verdict(
        worked && failures.is_empty(),
        format!("(2,2,2) ↦ (2,2,0); {exhaustive} rank-one morphisms and {} samples give exact cones", config.samples),
        json!({"worked_instance": k2.components(), "rank_one_morphisms": exhaustive, "samples": config.samples, "failures": failures}),
    ))
}

fn lose_roundtrip(config: &Config) -> CheckResult {
    if config.max_rank == 0 {
        return Ok(skip("max_rank = 0"));
    }
    let mut r = rng_for(config, 4);
    let mut failures = Vec::new();
    for _ in 0..config.samples {
        let t = random::exact(&mut r, config.max_rank);
        let ok = match decompose_exact(&t) {
            Ok(d) => {
                d.iso.is_isomorphism()
                    && d.iso.target() == &t
                    && d.iso.source() == &CandidateTriangle::x2(d.s).direct_sum(&d.contractible)
                    && is_contractible(&d.contractible).is_some()
            }
            Err(_) => false,
        };
        // the other direction: a sum of X(2) and a contractible is exact
        let s = r.gen_range(0..=config.max_rank);
        let back = CandidateTriangle::x2(s).direct_sum(&random::contractible(&mut r, config.max_rank - s));
        if !ok || !is_exact(&back).is_exact() {
            failures.push(json!({"triangle": t}));
        }
    }
    Ok(verdict(
        failures.is_empty(),
        format!("{} exact triangles decomposed as X(2)^s ⊕ contractible and back", config.samples),
        json!({"samples": config.samples, "failures": failures}),
    ))
}

fn identity_in_bracket(config: &Config) -> CheckResult {
    if config.max_rank == 0 {
        return Ok(skip("max_rank = 0"));
    }
    let samples = exact_samples(config);
    let mut failures = Vec::new();
    for t in &samples {
        let ok = TodaInput::new(t.f().clone(), t.i().clone(), t.q().clone())
            .ok()
            .and_then(|input| toda_bracket(&input).ok())
            .is_some_and(|b| b.contains(&ZModMatrix::identity(4, t.ranks().0)));
        if !ok {
            failures.push(json!(t));
        }
    }
    Ok(verdict(
        failures.is_empty(),
        format!("1 ∈ ⟨q,i,f⟩ for {} exact triangles", samples.len()),
        json!({"tested": samples.len(), "failures": failures}),
    ))
}

fn bracket_nonzero(_: &Config) -> CheckResult {
    let input = TodaInput::new(scalar(2), scalar(2), scalar(2)).map_err(err)?;
    let b = toda_bracket(&input).map_err(err)?;
    let value = b.coset().describe();
    let ok = value == "1 + 2Z/4" && !b.is_zero() && b.coset().index() == 2;
    Ok(verdict(
        ok,
        format!("⟨2,2,2⟩ = {value} ({})", if b.is_zero() { "zero" } else { "nonzero" }),
        json!({
            "representative": b.representative(),
            "indeterminacy": b.indeterminacy_group().to_string(),
            "index": b.coset().index() as u64,
        }),
    ))
}

fn three_ways(s: &TodaSetup, l: &Bimodule) -> Result<(NormalizedCohomology, Value, bool), String> {
    let nc = normalized_cohomology(&s.toda, l, 3).map_err(err)?;
    let q = h3_toda_quotient(&s.toda, l).map_err(err)?;
    let z2 = FinAbGroup::cyclic(2);
    let mut agree = nc.is_isomorphism();
    for g in nc.normalized.generators() {
        let via_full = nc.comparison.apply(&nc.normalized.class(&g).map_err(err)?);
        agree &= via_full == nc.full.class(&g).map_err(err)?;
        agree &= q.class_of_cocycle(&s.toda, l, &g).map_err(err)? == via_full;
    }
    let ok = agree && nc.full.group() == &z2 && nc.normalized.group() == &z2 && q.group() == &z2;
    let reps: Vec<String> = nc.normalized.generators().iter().map(|g| describe_cochain(&s.toda, g)).collect();
    let w = json!({
        "full": nc.full.group().to_string(),
        "normalized": nc.normalized.group().to_string(),
        "quotient": q.group().to_string(),
        "class_maps_agree": agree,
        "representatives": reps,
    });
    Ok((nc, w, ok))
}

fn h3_toda_hom(config: &Config) -> CheckResult {
    let s = toda_setup(config)?;
    let (nc, mut w, ok) = three_ways(&s, &s.hom)?;
    // the truncation itself, reported only
    let h3p = cohomology(s.p.category(), &hom(&s.p), 3).map_err(err)?;
    w["exploratory_truncation_h3"] = json!(h3p.group().to_string());
    Ok(verdict(ok, format!("H^3(Toda, Hom(φ,φ)) ≅ {} three ways", nc.full.group()), w))
}

fn h3_toda_hom2(config: &Config) -> CheckResult {
    let s = toda_setup(config)?;
    let (nc, w, ok) = three_ways(&s, &s.hom2)?;
    Ok(verdict(ok, format!("H^3(Toda, Hom(φ, Z/2⊗φ)) ≅ {} three ways", nc.full.group()), w))
}

fn pushforward_h3(config: &Config) -> CheckResult {
    let s = toda_setup(config)?;
    let h2 = normalized_cohomology(&s.toda, &s.hom2, 3).map_err(err)?;
    let h4 = normalized_cohomology(&s.toda, &s.hom, 3).map_err(err)?;
    let push = |c: &Cochain| Ok(pushforward_cochain(&s.toda, &s.hom, &s.push, c));
    let full = induced_map(&h2.full, &h4.full, push).map_err(err)?;
    let normalized = induced_map(&h2.normalized, &h4.normalized, push).map_err(err)?;
    let ok = full.is_zero() && normalized.is_zero();
    Ok(verdict(
        ok,
        if ok { "zero_map" } else { "nonzero_map" },
        json!({"full": full.matrix(), "normalized": normalized.matrix()}),
    ))
}

fn cohomological_brackets_vanish(config: &Config) -> CheckResult {
    let s = toda_setup(config)?;
    let h2 = normalized_cohomology(&s.toda, &s.hom2, 3).map_err(err)?;
    let h4 = normalized_cohomology(&s.toda, &s.hom, 3).map_err(err)?;
    let push = induced_map(&h2.full, &h4.full, |c| Ok(pushforward_cochain(&s.toda, &s.hom, &s.push, c)))
        .map_err(err)?;
    let image: Vec<Vec<u32>> = h2
        .full
        .group()
        .elements()
        .iter()
        .map(|x| push.apply(x))
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    let mut all_zero = true;
    for zeta in &image {
        all_zero &= zeta_toda_bracket(&s.toda, &s.hom, &h4, zeta, s.diagram).map_err(err)?.is_zero();
    }
    let generator = zeta_toda_bracket(&s.toda, &s.hom, &h4, &[1], s.diagram).map_err(err)?;
    let ok = all_zero && generator.describe() == "1 + 2Z/4";
    Ok(verdict(
        ok,
        format!(
            "ζ-brackets of (j3,j2,j1) vanish on the pushforward image ({} classes); the nonzero class gives {}",
            image.len(),
            generator.describe()
        ),
        json!({"image_size": image.len(), "image_brackets_zero": all_zero, "nonzero_class_bracket": generator.describe()}),
    ))
}

fn trace_dualities(_: &Config) -> CheckResult {
    let mut failures = Vec::new();
    let mut checked = 0;
    for m in [vec![2], vec![4], vec![2, 4]] {
        for p in 0..=3 {
            for q in 0..=3 {
                let t = trace_duality(p, q, &m).map_err(err)?;
                checked += 1;
                if !(t.alpha.is_bijective() && t.beta.is_bijective()) {
                    failures.push(json!({"p": p, "q": q, "m": m}));
                }
            }
        }
    }
    Ok(verdict(
        failures.is_empty(),
        format!("α and β bijective for {checked} rank pairs and coefficient modules"),
        json!({"checked": checked, "failures": failures}),
    ))
}

fn dualize(_: &Config) -> CheckResult {
    let p = truncated_proj_category(4, 1).map_err(err)?;
    let mut ok = true;
    let mut w = serde_json::Map::new();
    for (name, m) in [("Z/2", vec![2]), ("Z/4", vec![4]), ("Z/2 ⊕ Z/4", vec![2, 4])] {
        let d = dualize_chain_complex(&p, &m, 3).map_err(err)?;
        ok &= d.holds();
        let dims: Vec<Value> = d
            .degrees
            .iter()
            .map(|x| json!({"degree": x.degree, "dim": x.dim, "bijective": x.bijective, "failures": x.failures}))
            .collect();
        w.insert(name.to_string(), Value::Array(dims));
    }
    Ok(verdict(ok, "duality commutes with differentials in degrees ≤ 3 on P(Z/4)≤1", Value::Object(w)))
}

fn homology_h0(_: &Config) -> CheckResult {
    let p = truncated_proj_category(4, 2).map_err(err)?;
    let h0 = homology(p.category(), &hom(&p), 0).map_err(err)?;
    let p2 = truncated_proj_category(2, 2).map_err(err)?;
    let h0_2 = homology(p2.category(), &hom(&p2), 0).map_err(err)?;
    let p1 = truncated_proj_category(4, 1).map_err(err)?;
    let mut higher = serde_json::Map::new();
    for n in 1..=2 {
        let h = homology(p1.category(), &hom(&p1), n).map_err(err)?;
        higher.insert(format!("H_{n}(P(Z/4)≤1)"), json!(h.group().to_string()));
    }
    let ok = h0.group() == &FinAbGroup::cyclic(4);
    Ok(verdict(
        ok,
        format!("H_0(P(Z/4)≤2, Hom) ≅ {}", h0.group()),
        json!({"h0_z4": h0.group().to_string(), "h0_z2": h0_2.group().to_string(), "exploratory": higher}),
    ))
}

fn h0_endomorphisms(_: &Config) -> CheckResult {
    let mut ok = true;
    let mut w = serde_json::Map::new();
    for (name, ring, rank) in [("P(Z/2)≤2", 2, 2), ("P(Z/4)≤1", 4, 1)] {
        let p = truncated_proj_category(ring, rank).map_err(err)?;
        let cat = p.category();
        let l = hom(&p);
        let fams = identity_endomorphisms(cat, FAMILY_LIMIT).map_err(err)?;
        let h0 = cohomology(cat, &l, 0).map_err(err)?;
        let mut classes = HashSet::new();
        for fam in &fams {
            let mut c = Cochain::zero(0);
            for (x, &e) in fam.iter().enumerate() {
                c.set(cat, &l, vec![cat.identity(x) as u32], p.matrix(e).to_vector());
            }
            ok &= h0.is_cocycle(&c);
            classes.insert(h0.class(&c).map_err(err)?);
        }
        ok &= classes.len() == fams.len() && h0.group().order() == fams.len() as u128;
        w.insert(name.into(), json!({"families": fams.len(), "h0": h0.group().to_string()}));
    }
    ok &= w["P(Z/2)≤2"]["families"] == 2;
    Ok(verdict(ok, "End(Id) = {0, id} on P(Z/2)≤2, equal to H^0", Value::Object(w)))
}

fn non_algebraic_witness(_: &Config) -> CheckResult {
    let cone = cone_of_map(&scalar(2));
    let y = cone.object_rank();
    let twice = ZModMatrix::scalar(4, y, 2);
    let ok = is_exact(&cone.triangle).is_exact() && !twice.is_zero();
    Ok(verdict(
        ok,
        format!("2·1_Y = {twice} ≠ 0 on the cone object of Z/4 -2-> Z/4"),
        json!({"cone": cone.triangle, "twice_identity": twice}),
    ))
}

fn frobenius(_: &Config) -> CheckResult {
    let mut ok = true;
    let z2 = FGModZ4::new(1, 0);
    let z4 = FGModZ4::new(0, 1);
    ok &= injective_hull(z2).0 == z4 && injective_hull(z4).0 == z4;
    ok &= suspension(z2).0 == z2 && suspension(z4).0 == FGModZ4::new(0, 0);
    ok &= !is_stably_zero(&FGModMorphism::identity(z2));
    ok &= is_stably_zero(&FGModMorphism::scalar(z4, 2));
    let mut stable = Vec::new();
    for a in 0..=2 {
        let x = FGModZ4::new(a, 0);
        let (cx, j) = injective_hull(x);
        let (_, r) = suspension(x);
        ok &= j.compose(&r).map_err(err)? == FGModMorphism::scalar(cx, 2);
        for c in 0..=2 {
            let all = FGModMorphism::all(x, FGModZ4::new(c, 0));
            let zero = all.iter().filter(|f| is_stably_zero(f)).count();
            let order = all.len() / zero;
            ok &= order == 1 << (a * c);
            stable.push(json!({"a": a, "c": c, "stable_hom_order": order}));
        }
    }
    Ok(verdict(ok, "stable category of Z/4-modules matches P(Z/2)", json!({"stable_homs": stable})))
}

const CHECKS: &[(&str, &str, fn(&Config) -> CheckResult)] = &[
    ("category_axioms_toda", "the Toda category satisfies the category axioms with a zero object", category_axioms_toda),
    ("triangle_axioms", "sampled Tr1 to Tr3 instances in P(Z/4)", triangle_axioms),
    ("exactness_suite", "X(2) triangles and contractibles are exact; (2,2,0) is not", exactness_suite),
    ("octahedral", "octahedral modification yields exact mapping cones", octahedral),
    ("lose_roundtrip", "exact triangles are exactly X(2)^s ⊕ contractible", lose_roundtrip),
    ("identity_in_bracket", "the identity lies in ⟨q,i,f⟩ for exact triangles", identity_in_bracket),
    ("bracket_nonzero", "the Toda bracket of 2,2,2 on Z/4", bracket_nonzero),
    ("h3_toda_hom", "full, normalized and quotient H^3 of Toda with Hom coefficients", h3_toda_hom),
    ("h3_toda_hom2", "full, normalized and quotient H^3 of Toda with Z/2 coefficients", h3_toda_hom2),
    ("pushforward_H3", "the map on H^3(Toda) induced by Z/2 ⊂ Z/4", pushforward_h3),
    ("cohomological_brackets_vanish", "ζ-brackets from the pushforward image vanish", cohomological_brackets_vanish),
    ("trace_duality", "trace pairings α and β are bijective", trace_dualities),
    ("dualize", "cochains with tensor coefficients are dual to chains", dualize),
    ("homology_h0", "degree 0 homology of the truncated category", homology_h0),
    ("h0_endomorphisms", "natural endomorphisms of the identity agree with H^0", h0_endomorphisms),
    ("non_algebraic_witness", "2·1 on the cone object of an exact triangle", non_algebraic_witness),
    ("frobenius", "injective hulls, suspension and the stable category", frobenius),
];

pub fn check_ids() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.0).collect()
}

fn assumptions() -> Vec<Assumption> {
    let a = |step: &str, statement: &str| Assumption {
        step: step.into(),
        statement: statement.into(),
        status: "assumed (cited)".into(),
    };
    vec![
        a(
            "universal_toda_bracket",
            "Toda brackets in a topological triangulated category are ζ-brackets of a universal class in H^3 with Hom coefficients, preserved by fully faithful exact functors",
        ),
        a(
            "pushforward_iso",
            "on P(Z/4) itself, H^3 with Z/2 coefficients maps isomorphically onto H^3 with Hom coefficients, so every class is a pushforward",
        ),
    ]
}

pub fn run_certificate(config: &Config) -> CertificateReport {
    let mut report = CertificateReport::new(config.clone());
    for &(id, description, f) in CHECKS {
        let start = Instant::now();
        let outcome = f(config).unwrap_or_else(|e| verdict(false, e.clone(), json!({"error": e})));
        report.push(Check {
            check: id.to_string(),
            description: description.to_string(),
            status: outcome.status,
            result: outcome.result,
            witness: outcome.witness,
            millis: Some(start.elapsed().as_millis()),
        });
    }
    report.assumed = assumptions();
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_exact_triangles() {
        let all = rank_one_exact();
        assert!(all.contains(&CandidateTriangle::x2(1)));
        assert!(all.contains(&CandidateTriangle::zero()));
        for t in random::elementary_contractibles() {
            assert!(all.contains(&t));
        }
    }

    #[test]
    fn morphisms_of_x2_are_the_scalars_up_to_homotopy_data() {
        let x = CandidateTriangle::x2(1);
        let all = all_morphisms(&x, &x);
        assert!(all.contains(&TriangleMorphism::scalar(&x, 2)));
        assert!(all.contains(&TriangleMorphism::identity(&x)));
    }

    #[test]
    fn describe_a_cochain() {
        let s = toda_setup(&Config::default()).unwrap();
        let mut c = Cochain::zero(3);
        let seq = s.diagram.map(|m| m as u32).to_vec();
        c.set(&s.toda, &s.hom, seq, vec![1]);
        assert_eq!(describe_cochain(&s.toda, &c), "c(j3,j2,j1) = 1");
        assert_eq!(describe_cochain(&s.toda, &Cochain::zero(3)), "c = 0");
    }
}
