//! The near octagon on the 4095 central involutions: lines from Klein
//! four-groups, the line spread, the suborbit diagram, quads, and the
//! generalized hexagon formed by spread lines and quads.

mod build;
mod hexagon;
mod quads;
mod suborbits;

use thiserror::Error;

use crate::group::GroupError;
use crate::incidence::IncidenceError;

pub use build::{build_octagon, KleinClass, Octagon, OCTAGON_LINES, SPREAD_LINES};
pub use hexagon::{build_spread_hexagon, spread_distance_check, SpreadHexagon};
pub use quads::{commuting_iff_common_quad, enumerate_quads, quad_environment_checks, QuadSet};
pub use suborbits::{commuting_partner_counts, suborbit_diagram, Suborbit, SuborbitDiagram};

#[derive(Debug, Error)]
pub enum OctagonError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Incidence(#[from] IncidenceError),
    #[error("point {point} lies on {count} spread lines")]
    SpreadViolation { point: u32, count: usize },
    #[error("{what}: expected {expected}, found {found}")]
    LineCountMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("unexpected suborbit sizes {0:?}")]
    UnexpectedOrbitalCount(Vec<usize>),
    #[error("closure of {0} and {1} has {2} points and is not a quadrangle of order (2,2)")]
    NonQuadClosure(u32, u32, usize),
    #[error("axiom check failed: {0}")]
    AxiomFailure(String),
}
