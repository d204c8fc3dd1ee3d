use super::category::FinCategory;
use super::CatError;

pub const FAMILY_LIMIT: usize = 1 << 16;

/// All natural endomorphisms of the identity functor, as families of
/// morphism indices `(φ_X)_X` with `φ_Y σ = σ φ_X` for every `σ : X → Y`.
pub fn identity_endomorphisms(cat: &FinCategory, limit: usize) -> Result<Vec<Vec<usize>>, CatError> {
    let n = cat.object_count();
    let ends: Vec<&[usize]> = (0..n).map(|x| cat.hom(x, x)).collect();
    let count = ends.iter().try_fold(1usize, |acc, e| acc.checked_mul(e.len()));
    match count {
        Some(c) if c <= limit => {}
        _ => {
            return Err(CatError::SizeLimit {
                what: "endomorphism families".into(),
                count: count.unwrap_or(usize::MAX),
                limit,
            })
        }
    }
    let natural = |phi: &[usize]| {
        (0..cat.morphism_count()).all(|s| {
            let (x, y) = (cat.source(s), cat.target(s));
            cat.compose(phi[y], s) == cat.compose(s, phi[x])
        })
    };
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    if ends.iter().any(|e| e.is_empty()) {
        return Ok(out);
    }
    loop {
        let phi: Vec<usize> = idx.iter().zip(&ends).map(|(&i, e)| e[i]).collect();
        if natural(&phi) {
            out.push(phi);
        }
        let mut k = 0;
        while k < n {
            idx[k] += 1;
            if idx[k] < ends[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == n {
            return Ok(out);
        }
    }
}
