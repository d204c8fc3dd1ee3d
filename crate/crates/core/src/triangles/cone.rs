use crate::linalg::{kernel, smith_normal_form, solve, subquotient, ZModMatrix};

use super::{flatten, unflatten, CandidateTriangle, TriangleError, TriangleMorphism, MODULUS};

/// The mapping cone
/// `B⊕A' → C⊕B' → A⊕C' → B⊕A'` with blocks
/// `[[−i,0],[k1,f']]`, `[[−q,0],[k2,i']]`, `[[−f,0],[k0,q']]`.
pub fn mapping_cone(k: &TriangleMorphism) -> CandidateTriangle {
    let (s, t) = (k.source(), k.target());
    let (a, b, c) = s.ranks();
    let (a2, b2, c2) = t.ranks();
    let z = |r, c| ZModMatrix::zeros(MODULUS, r, c);
    let f = ZModMatrix::block2(&s.i().neg(), &z(c, a2), k.k1(), t.f());
    let i = ZModMatrix::block2(&s.q().neg(), &z(a, b2), k.k2(), t.i());
    let q = ZModMatrix::block2(&s.f().neg(), &z(b, c2), k.k0(), t.q());
    CandidateTriangle::new(f, i, q).expect("mapping cone is a candidate triangle")
}

/// A chosen exact triangle `A -f-> B -i-> C -q-> A` on a given `f`.
///
/// With `P f Q = D = diag(1^r1, 2^r2, 0)`, split `A = A1⊕A2⊕A3` and
/// `B = B1⊕B2⊕B3` along `D`. The cone object is `C = C2⊕B3⊕A3` and, in
/// the split coordinates, `i` is `2: B2 → C2` and `1: B3 → B3`, `q` is
/// `2: C2 → A2` and `1: A3 → A3`.
#[derive(Clone, Debug)]
pub struct StandardCone {
    pub triangle: CandidateTriangle,
    pub r1: usize,
    pub r2: usize,
    /// Row transform: `P f Q = D`.
    pub p: ZModMatrix,
    pub q: ZModMatrix,
}

impl StandardCone {
    pub fn i(&self) -> &ZModMatrix {
        self.triangle.i()
    }

    pub fn q(&self) -> &ZModMatrix {
        self.triangle.q()
    }

    pub fn object_rank(&self) -> usize {
        self.triangle.ranks().2
    }
}

pub fn cone_of_map(f: &ZModMatrix) -> StandardCone {
    assert_eq!(f.modulus(), MODULUS, "maps are over Z/4");
    let (b, a) = f.shape();
    let snf = smith_normal_form(f);
    let diag = snf.diagonal();
    let r1 = diag.iter().filter(|&&d| d == 1).count();
    let r2 = diag.iter().filter(|&&d| d == 2).count();
    let (a3, b3) = (a - r1 - r2, b - r1 - r2);
    let c = r2 + b3 + a3;
    let mut i_d = ZModMatrix::zeros(MODULUS, c, b);
    let mut q_d = ZModMatrix::zeros(MODULUS, a, c);
    for k in 0..r2 {
        i_d.set(k, r1 + k, 2);
        q_d.set(r1 + k, k, 2);
    }
    for k in 0..b3 {
        i_d.set(r2 + k, r1 + r2 + k, 1);
    }
    for k in 0..a3 {
        q_d.set(r1 + r2 + k, r2 + b3 + k, 1);
    }
    let i = i_d.mul(&snf.p);
    let q = snf.q.mul(&q_d);
    let triangle = CandidateTriangle::new(f.clone(), i, q).expect("standard cone is a candidate");
    StandardCone {
        triangle,
        r1,
        r2,
        p: snf.p,
        q: snf.q,
    }
}

/// Outcome of the exactness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactWitness {
    /// An invertible fill-in `c: C_std → C` with `c·i_std = i` and `q·c = q_std`.
    Isomorphism(ZModMatrix),
    /// No fill-in exists.
    NoFillIn,
    /// A fill-in exists but is not invertible.
    SingularFillIn(ZModMatrix),
}

impl ExactWitness {
    pub fn is_exact(&self) -> bool {
        matches!(self, ExactWitness::Isomorphism(_))
    }

    pub fn describe(&self) -> String {
        match self {
            ExactWitness::Isomorphism(c) => format!("exact: fill-in isomorphism c = {c}"),
            ExactWitness::NoFillIn => {
                "not exact: no c with c·i_std = i and q·c = q_std".to_string()
            }
            ExactWitness::SingularFillIn(c) => {
                format!("not exact: fill-in c = {c} is not invertible")
            }
        }
    }
}

/// Solves `c·i_std = i`, `q·c = q_std` for `c: C_std → C`.
fn fill_in(t: &CandidateTriangle, std: &StandardCone) -> Option<ZModMatrix> {
    let (_, _, c) = t.ranks();
    let cs = std.object_rank();
    let shape = [(c, cs)];
    let rhs = flatten(&[t.i(), std.q()]);
    let system = ZModMatrix::from_linear_map(MODULUS, c * cs, rhs.len(), |x| {
        let m = &unflatten(x, &shape)[0];
        flatten(&[&m.mul(std.i()), &t.q().mul(m)])
    });
    let x = solve(&system, &rhs).expect("shapes agree").particular?;
    Some(unflatten(&x, &shape).remove(0))
}

/// Compares `T` with the standard cone on its `f`. Any fill-in between
/// exact triangles restricting to identities is an isomorphism, so a
/// singular fill-in also shows `T` is not exact.
pub fn is_exact(t: &CandidateTriangle) -> ExactWitness {
    let std = cone_of_map(t.f());
    match fill_in(t, &std) {
        None => ExactWitness::NoFillIn,
        Some(c) if c.is_invertible() => ExactWitness::Isomorphism(c),
        Some(c) => ExactWitness::SingularFillIn(c),
    }
}

/// `T ≅ X(2)^s ⊕ K` with `K` contractible.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub s: usize,
    pub contractible: CandidateTriangle,
    /// An isomorphism `x2(s) ⊕ contractible → T`.
    pub iso: TriangleMorphism,
}

fn permutation(n: usize, order: &[usize]) -> ZModMatrix {
    // column k is the unit vector at order[k]
    let mut m = ZModMatrix::zeros(MODULUS, n, n);
    for (k, &src) in order.iter().enumerate() {
        m.set(src, k, 1);
    }
    m
}

pub fn decompose_exact(t: &CandidateTriangle) -> Result<Decomposition, TriangleError> {
    let ExactWitness::Isomorphism(c) = is_exact(t) else {
        return Err(TriangleError::NotExact);
    };
    let std = cone_of_map(t.f());
    let (a, b, _) = t.ranks();
    let (r1, r2) = (std.r1, std.r2);
    let (a3, b3) = (a - r1 - r2, b - r1 - r2);

    // ker f has r2 summands Z/2, a cross-check through the subquotient engine
    let ker = kernel(t.f());
    let ker_group = subquotient(MODULUS, a, &ker, Vec::<Vec<u32>>::new())?;
    let s = ker_group.group().factors().iter().filter(|&&x| x == 2).count();
    assert_eq!(s, r2, "Z/2 summands of ker f");

    // split coordinates to core-first order
    let range = |lo: usize, n: usize| (lo..lo + n).collect::<Vec<_>>();
    let order_a: Vec<usize> = [range(r1, r2), range(0, r1), range(r1 + r2, a3)].concat();
    let order_b: Vec<usize> = [range(r1, r2), range(0, r1), range(r1 + r2, b3)].concat();
    let pa = permutation(a, &order_a);
    let pb = permutation(b, &order_b);

    let p_inv = std.p.inverse().expect("invertible");
    let u0 = std.q.mul(&pa);
    let u1 = p_inv.mul(&pb);
    let u2 = c;

    let source = t.conjugate(
        &u0.inverse().unwrap(),
        &u1.inverse().unwrap(),
        &u2.inverse().unwrap(),
    );
    let iso = TriangleMorphism::new(source.clone(), t.clone(), u0, u1, u2)?;

    // read off the contractible block
    let (sa, sb, sc) = source.ranks();
    let core = CandidateTriangle::x2(s);
    let block = |m: &ZModMatrix, r: usize, c: usize| m.submatrix(s..r, s..c);
    let contractible = CandidateTriangle::new(
        block(source.f(), sb, sa),
        block(source.i(), sc, sb),
        block(source.q(), sa, sc),
    )?;
    debug_assert_eq!(core.direct_sum(&contractible), source);
    Ok(Decomposition {
        s,
        contractible,
        iso,
    })
}
