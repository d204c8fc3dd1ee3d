use crate::linalg::{smith_normal_form, ZModMatrix};

use super::{decompose_exact, is_exact, mapping_cone, TriangleError, TriangleMorphism, MODULUS};

/// Replaces `k2` so that the mapping cone of `k: T → T'` is exact.
///
/// Both triangles are split as `X(2) ⊕ contractible`. On the `X(2)` cores
/// the morphism is `(c0, c1, c2)`; with `P c0 Q = diag(1, 2, 0)` the new
/// core component is `c1 + P⁻¹ E Q⁻¹`, where `E` is 2 on the 2-block.
/// The rest of `k2` is left alone.
pub fn octahedron_modify(k: &TriangleMorphism) -> Result<TriangleMorphism, TriangleError> {
    let d = decompose_exact(k.source())?;
    let d2 = decompose_exact(k.target())?;
    let (s, s2) = (d.s, d2.s);
    let back = d2.iso.inverse().expect("decomposition is an isomorphism");
    let c = back.compose(k)?.compose(&d.iso)?;
    let core = |m: &ZModMatrix| m.submatrix(0..s2, 0..s);
    let (c0, c1, c2) = (core(c.k0()), core(c.k1()), core(c.k2()));

    let snf = smith_normal_form(&c0);
    let mut e = ZModMatrix::zeros(MODULUS, s2, s);
    for (t, &x) in snf.diagonal().iter().enumerate() {
        if x == 2 {
            e.set(t, t, 2);
        }
    }
    let e = snf.p.inverse().unwrap().mul(&e).mul(&snf.q.inverse().unwrap());
    let delta_core = c1.add(&e).sub(&c2);

    let (_, _, cs) = c.source().ranks();
    let (_, _, ct) = c.target().ranks();
    let mut delta = ZModMatrix::zeros(MODULUS, ct, cs);
    delta.paste(0, 0, &delta_core);
    let u2 = d.iso.k2();
    let u2t = d2.iso.k2();
    let dk2 = u2t.mul(&delta).mul(&u2.inverse().unwrap());
    let modified = k.with_k2(k.k2().add(&dk2))?;
    assert!(
        is_exact(&mapping_cone(&modified)).is_exact(),
        "modified morphism has an exact mapping cone"
    );
    Ok(modified)
}
