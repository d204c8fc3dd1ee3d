//! Finitely generated Z/4-modules as a Frobenius category.
//!
//! An object `(Z/2)^a ⊕ (Z/4)^b` is stored by its multiplicities. A
//! morphism is stored as four blocks, one per pair of summand types:
//!
//! | block | from | to  | group | stored as |
//! |-------|------|-----|-------|-----------|
//! | `zz`  | Z/2  | Z/2 | Z/2   | residue mod 2 |
//! | `fz`  | Z/4  | Z/2 | Z/2   | residue mod 2 (reduction) |
//! | `zf`  | Z/2  | Z/4 | Z/2   | 0 or 2 mod 4 |
//! | `ff`  | Z/4  | Z/4 | Z/4   | residue mod 4 |
//!
//! Composition multiplies integer representatives of the assembled matrix
//! and reduces each row modulo the order of its target summand.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{solve, ZModMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrobeniusError {
    #[error("block {block} has shape {found:?}, expected {expected:?}")]
    BlockShape {
        block: &'static str,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("block {block} must have modulus {expected}")]
    BlockModulus { block: &'static str, expected: u32 },
    #[error("block zf must have even entries")]
    OddEntry,
    #[error("morphisms are not composable")]
    NotComposable,
}

/// `(Z/2)^a ⊕ (Z/4)^b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FGModZ4 {
    pub a: usize,
    pub b: usize,
}

impl FGModZ4 {
    pub fn new(a: usize, b: usize) -> Self {
        FGModZ4 { a, b }
    }

    pub fn is_injective(&self) -> bool {
        self.a == 0
    }

    pub fn order(&self) -> u128 {
        1u128 << (self.a + 2 * self.b)
    }

    /// Orders of the coordinates: the Z/2 summands come first.
    pub fn coordinate_orders(&self) -> Vec<u32> {
        let mut v = vec![2; self.a];
        v.extend(std::iter::repeat(4).take(self.b));
        v
    }

    fn dim(&self) -> usize {
        self.a + self.b
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMorphism")]
pub struct FGModMorphism {
    source: FGModZ4,
    target: FGModZ4,
    zz: ZModMatrix,
    fz: ZModMatrix,
    zf: ZModMatrix,
    ff: ZModMatrix,
}

#[derive(Deserialize)]
struct RawMorphism {
    source: FGModZ4,
    target: FGModZ4,
    zz: ZModMatrix,
    fz: ZModMatrix,
    zf: ZModMatrix,
    ff: ZModMatrix,
}

impl TryFrom<RawMorphism> for FGModMorphism {
    type Error = FrobeniusError;

    fn try_from(r: RawMorphism) -> Result<Self, Self::Error> {
        FGModMorphism::new(r.source, r.target, r.zz, r.fz, r.zf, r.ff)
    }
}

fn check_block(
    block: &'static str,
    m: &ZModMatrix,
    modulus: u32,
    shape: (usize, usize),
) -> Result<(), FrobeniusError> {
    if m.modulus() != modulus {
        return Err(FrobeniusError::BlockModulus {
            block,
            expected: modulus,
        });
    }
    if m.shape() != shape {
        return Err(FrobeniusError::BlockShape {
            block,
            expected: shape,
            found: m.shape(),
        });
    }
    Ok(())
}

impl FGModMorphism {
    pub fn new(
        source: FGModZ4,
        target: FGModZ4,
        zz: ZModMatrix,
        fz: ZModMatrix,
        zf: ZModMatrix,
        ff: ZModMatrix,
    ) -> Result<Self, FrobeniusError> {
        check_block("zz", &zz, 2, (target.a, source.a))?;
        check_block("fz", &fz, 2, (target.a, source.b))?;
        check_block("zf", &zf, 4, (target.b, source.a))?;
        check_block("ff", &ff, 4, (target.b, source.b))?;
        if zf.entries().iter().any(|&x| x % 2 != 0) {
            return Err(FrobeniusError::OddEntry);
        }
        Ok(FGModMorphism {
            source,
            target,
            zz,
            fz,
            zf,
            ff,
        })
    }

    pub fn zero(source: FGModZ4, target: FGModZ4) -> Self {
        Self::from_unified(source, target, &ZModMatrix::zeros(4, target.dim(), source.dim()))
    }

    pub fn identity(x: FGModZ4) -> Self {
        Self::from_unified(x, x, &ZModMatrix::identity(4, x.dim()))
    }

    /// Multiplication by an integer.
    pub fn scalar(x: FGModZ4, s: i64) -> Self {
        Self::from_unified(x, x, &ZModMatrix::scalar(4, x.dim(), s))
    }

    /// Builds the blocks from a matrix of representatives mod 4 on the
    /// coordinates `[Z/2; a] ++ [Z/4; b]`. Entries of rows for Z/2 targets
    /// are reduced mod 2; entries from Z/2 to Z/4 must be even.
    pub fn from_unified(source: FGModZ4, target: FGModZ4, m: &ZModMatrix) -> Self {
        assert_eq!(m.shape(), (target.dim(), source.dim()));
        let (a, b, a2, b2) = (source.a, source.b, target.a, target.b);
        let zz = m.submatrix(0..a2, 0..a).reduce_mod(2);
        let fz = m.submatrix(0..a2, a..a + b).reduce_mod(2);
        let zf = m.submatrix(a2..a2 + b2, 0..a);
        let ff = m.submatrix(a2..a2 + b2, a..a + b);
        Self::new(source, target, zz, fz, zf, ff).expect("unified matrix is well defined")
    }

    /// The assembled matrix of representatives mod 4.
    pub fn unified(&self) -> ZModMatrix {
        let lift = |m: &ZModMatrix| {
            ZModMatrix::from_residues(4, m.rows(), m.cols(), m.entries().to_vec()).unwrap()
        };
        ZModMatrix::block2(&lift(&self.zz), &lift(&self.fz), &self.zf, &self.ff)
    }

    pub fn source(&self) -> FGModZ4 {
        self.source
    }

    pub fn target(&self) -> FGModZ4 {
        self.target
    }

    pub fn zz(&self) -> &ZModMatrix {
        &self.zz
    }

    pub fn fz(&self) -> &ZModMatrix {
        &self.fz
    }

    pub fn zf(&self) -> &ZModMatrix {
        &self.zf
    }

    pub fn ff(&self) -> &ZModMatrix {
        &self.ff
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &FGModMorphism) -> Result<FGModMorphism, FrobeniusError> {
        if first.target != self.source {
            return Err(FrobeniusError::NotComposable);
        }
        let product = self.unified().mul(&first.unified());
        Ok(Self::from_unified(first.source, self.target, &product))
    }

    pub fn add(&self, other: &FGModMorphism) -> FGModMorphism {
        assert_eq!((self.source, self.target), (other.source, other.target));
        Self::from_unified(self.source, self.target, &self.unified().add(&other.unified()))
    }

    pub fn sub(&self, other: &FGModMorphism) -> FGModMorphism {
        assert_eq!((self.source, self.target), (other.source, other.target));
        Self::from_unified(self.source, self.target, &self.unified().sub(&other.unified()))
    }

    pub fn is_zero(&self) -> bool {
        self.zz.is_zero() && self.fz.is_zero() && self.zf.is_zero() && self.ff.is_zero()
    }

    /// The image in the stable category, which is equivalent to P(Z/2):
    /// only the block between Z/2 summands survives.
    pub fn stable_class(&self) -> &ZModMatrix {
        &self.zz
    }

    /// Every morphism between two objects; intended for small objects.
    pub fn all(source: FGModZ4, target: FGModZ4) -> Vec<FGModMorphism> {
        let (a, b, a2, b2) = (source.a, source.b, target.a, target.b);
        // choices per entry: zz 2, fz 2, zf 2 (0 or 2), ff 4
        let slots: Vec<(usize, usize, u32, u32)> = (0..a2 + b2)
            .flat_map(|i| (0..a + b).map(move |j| (i, j)))
            .map(|(i, j)| {
                let (count, step) = match (i < a2, j < a) {
                    (true, _) => (2, 1),
                    (false, true) => (2, 2),
                    (false, false) => (4, 1),
                };
                (i, j, count, step)
            })
            .collect();
        let total: usize = slots.iter().map(|s| s.2 as usize).product();
        (0..total)
            .map(|mut code| {
                let mut m = ZModMatrix::zeros(4, a2 + b2, a + b);
                for &(i, j, count, step) in &slots {
                    let x = (code % count as usize) as u32;
                    code /= count as usize;
                    m.set(i, j, x * step);
                }
                Self::from_unified(source, target, &m)
            })
            .collect()
    }
}

/// The injective hull `X ↪ CX`, with `CX = (Z/4)^(a+b)`.
pub fn injective_hull(x: FGModZ4) -> (FGModZ4, FGModMorphism) {
    let cx = FGModZ4::new(0, x.a + x.b);
    let mut m = ZModMatrix::zeros(4, cx.dim(), x.dim());
    for k in 0..x.a {
        m.set(k, k, 2);
    }
    for k in x.a..x.dim() {
        m.set(k, k, 1);
    }
    (cx, FGModMorphism::from_unified(x, cx, &m))
}

/// The cokernel `CX ↠ SX` of the injective hull, with `SX = (Z/2)^a`.
pub fn suspension(x: FGModZ4) -> (FGModZ4, FGModMorphism) {
    let (cx, _) = injective_hull(x);
    let sx = FGModZ4::new(x.a, 0);
    let mut m = ZModMatrix::zeros(4, sx.dim(), cx.dim());
    for k in 0..x.a {
        m.set(k, k, 1);
    }
    (sx, FGModMorphism::from_unified(cx, sx, &m))
}

/// Solves `h ∘ j = f` for `h: CX → Y`, where `j: X ↪ CX` is the hull.
fn extend_over_hull(f: &FGModMorphism) -> Option<FGModMorphism> {
    let x = f.source();
    let y = f.target();
    let (cx, j) = injective_hull(x);
    let jm = j.unified();
    let fm = f.unified();
    let orders = y.coordinate_orders();
    let n = cx.dim();
    let mut h = ZModMatrix::zeros(4, y.dim(), n);
    // Row r of h∘j is (row r of h)·J, reduced mod the order of summand r.
    // For a Z/2 row the congruence mod 2 is multiplied by 2 to live mod 4.
    for (r, &o) in orders.iter().enumerate() {
        let scale = 4 / o;
        let mut a = jm.transpose();
        a = a.scale(scale as i64);
        let rhs: Vec<u32> = fm.row(r).iter().map(|&v| (v * scale) % 4).collect();
        let sol = solve(&a, &rhs).expect("shapes agree");
        let row = sol.particular?;
        for (c, &v) in row.iter().enumerate() {
            h.set(r, c, if o == 2 { v % 2 } else { v });
        }
    }
    let h = FGModMorphism::from_unified(cx, y, &h);
    debug_assert_eq!(h.compose(&j).unwrap(), *f);
    Some(h)
}

/// Whether `f` factors through an injective object.
///
/// Any factorization through an injective extends over the hull of the
/// source, so it suffices to solve one linear system.
pub fn is_stably_zero(f: &FGModMorphism) -> bool {
    extend_over_hull(f).is_some()
}

/// The induced map `Sf: SX → SY`, from an extension `Cf` with
/// `Cf ∘ j = j' ∘ f` and the relation `Sf ∘ r = r' ∘ Cf`.
pub fn suspend_morphism(f: &FGModMorphism) -> FGModMorphism {
    let (_, jy) = injective_hull(f.target());
    let (sx, _) = suspension(f.source());
    let (sy, ry) = suspension(f.target());
    let jf = jy.compose(f).unwrap();
    let cf = extend_over_hull(&jf).expect("the target hull is injective");
    let rc = ry.compose(&cf).unwrap();
    // r is the projection onto the first a coordinates of CX
    let m = rc.unified().submatrix(0..sy.a, 0..sx.a);
    let tail = rc.unified().submatrix(0..sy.a, sx.a..cf.source().b);
    debug_assert!(tail.reduce_mod(2).is_zero());
    FGModMorphism::from_unified(sx, sy, &m)
}
