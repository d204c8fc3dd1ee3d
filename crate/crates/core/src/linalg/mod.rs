//! Linear algebra over `Z/p^e`.

mod group;
mod matrix;
mod ring;
mod rowmodule;
mod smith;

pub use group::{coset_reduce, relation_generators, subquotient, Coset, FinAbGroup, GroupHom, Subquotient};
pub use matrix::ZModMatrix;
pub use ring::Ring;
pub use rowmodule::RowModule;
pub use smith::{kernel, smith_normal_form, solve, SmithForm, Solution};
#[allow(unused_imports)]
pub(crate) use smith::kernel_of_rows;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("modulus {0} is not a supported prime power")]
    UnsupportedModulus(u32),
    #[error("expected {expected} entries, found {found}")]
    EntryCount { expected: usize, found: usize },
    #[error("entry {value} is not reduced modulo {modulus}")]
    UnreducedEntry { value: i64, modulus: u32 },
    #[error("moduli differ: {0} and {1}")]
    ModulusMismatch(u32, u32),
    #[error("{op}: incompatible shapes {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("image is not contained in the kernel")]
    ImNotInKer,
    #[error("element is not in the subgroup")]
    NotInSubgroup,
    #[error("invalid invariant factors {0:?}")]
    BadInvariantFactors(Vec<u32>),
    #[error("homomorphism not well defined at ({row}, {col})")]
    NotWellDefined { row: usize, col: usize },
}
