//! Permutation arithmetic, generator files, and orbit computations on a
//! conjugacy class of involutions.

mod generators;
mod orbit;
mod perm;

use thiserror::Error;

pub use generators::GeneratorSet;
pub use orbit::{
    conjugation_orbit, find_central_involution, find_involution_in_class, klein_orbit_size,
    pair_orbitals, InvolutionClass, OrbitalPartition, CENTRAL_CLASS_SIZE,
};
pub use perm::Permutation;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("point {0} appears in more than one cycle")]
    RepeatedPoint(usize),
    #[error("point {point} out of range for degree {degree}")]
    OutOfRange { point: usize, degree: usize },
    #[error("malformed permutation: {0}")]
    Malformed(String),
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<GroupError>,
    },
    #[error("image table is not a bijection")]
    NotABijection,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("generator set is empty")]
    NoGenerators,
    #[error("element is not an involution")]
    NotAnInvolution,
    #[error("no involution of the requested class within {0} words")]
    BudgetExhausted(usize),
    #[error("points {0} and {1} do not commute")]
    NotCommuting(u32, u32),
    #[error("product of points {0} and {1} lies outside the class")]
    ProductOutsideClass(u32, u32),
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
