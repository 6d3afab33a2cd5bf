//! Point-line geometries, collinearity distances, and axiom checkers for
//! near polygons, generalized polygons and strongly regular graphs.

mod axioms;
pub mod classical;
mod closure;
mod distance;
mod geometry;
mod graph;
mod report;

use thiserror::Error;

pub use axioms::{
    check_distance_regular, check_generalized_2dgon, check_near_polygon, check_srg, check_srg_spectrum,
    isometric_check, regular_parameters, srg_spectrum, SrgSpectrum,
};
pub use closure::{convex_closure, geodesic_interval};
pub use distance::{DistanceMatrix, INFINITE};
pub use geometry::{Geometry, InducedGeometry};
pub use graph::Graph;
pub use report::{AxiomReport, Parameters, Verdict, Witness};

#[allow(unused_imports)]
pub(crate) use geometry::{parse_indices, write_indices};

#[derive(Debug, Error)]
pub enum IncidenceError {
    #[error("line {0:?} has fewer than two points")]
    ShortLine(Vec<u32>),
    #[error("point {0} out of range for {1} points")]
    PointOutOfRange(u32, usize),
    #[error("line {0:?} repeats a point")]
    RepeatedPointOnLine(Vec<u32>),
    #[error("duplicate line {0:?}")]
    DuplicateLine(Vec<u32>),
    #[error("line {0}: {1}")]
    Format(usize, String),
    #[error("not a near polygon: {0}")]
    NotNearPolygon(String),
    #[error("graph is disconnected")]
    Disconnected,
}
