//! Suboctagons of the near octagon: the 416 Hall-Janko copies, the
//! near octagon built from a thin subhexagon of the spread hexagon, and thin
//! generalized polygons found by search or by intersection.

mod embedding;
mod gprime;
mod hall_janko;
mod thin;

use std::fmt::Write as _;

use thiserror::Error;

use crate::incidence::{parse_indices, write_indices, Geometry, IncidenceError, InducedGeometry};
use crate::octagon::OctagonError;

pub use embedding::dual_embedding_check;
pub use gprime::{build_gprime, gprime_go21_suboctagons, IntersectionCensus};
pub use hall_janko::{
    distance4_trace_distinguishes, enumerate_hj_suboctagons, hj_closure, hj_family_checks,
    hj_internal_checks, projection_onto_suboctagon, HjContext, HJ_COUNT, HJ_DISTRIBUTION,
};
pub use thin::{search_thin_subgeometry, SearchMode, ThinSelection, ThinTarget};

#[derive(Debug, Error)]
pub enum SubgeomError {
    #[error(transparent)]
    Octagon(#[from] OctagonError),
    #[error(transparent)]
    Incidence(#[from] IncidenceError),
    #[error("closure from {x} and {y} is not a Hall-Janko suboctagon: {reason}")]
    ClosureNotHJ { x: u32, y: u32, reason: String },
    #[error("expected {expected} suboctagons, found {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("point {0} has no neighbour in the suboctagon")]
    NoProjection(u32),
    #[error("point {0} has several neighbours in the suboctagon")]
    MultipleProjections(u32),
    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(usize),
    #[error("no subgeometry of the requested kind exists")]
    NoneFound,
    #[error("validation failed: {0}")]
    ValidationFailure(String),
    #[error("intersection of size {0} is neither kind")]
    UnexpectedIntersection(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubKind {
    HallJanko,
    GPrime,
    Go21,
    HexDual2,
}

/// A full subgeometry of the octagon given by its point set.
#[derive(Clone, Debug)]
pub struct Suboctagon {
    kind: SubKind,
    induced: InducedGeometry,
}

impl Suboctagon {
    pub fn new(kind: SubKind, ambient: &Geometry, points: &[u32]) -> Self {
        Suboctagon {
            kind,
            induced: ambient.induced(points),
        }
    }

    /// Subgeometry on `points` carrying only the given ambient lines.
    pub fn with_lines(kind: SubKind, ambient: &Geometry, points: &[u32], lines: &[u32]) -> Self {
        Suboctagon {
            kind,
            induced: restricted(ambient, points, lines),
        }
    }

    pub fn kind(&self) -> SubKind {
        self.kind
    }

    /// Sorted ambient point ids.
    pub fn points(&self) -> &[u32] {
        &self.induced.old_of_new
    }

    pub fn contains(&self, p: u32) -> bool {
        self.induced.contains(p)
    }

    pub fn geometry(&self) -> &Geometry {
        &self.induced.geometry
    }

    pub fn induced(&self) -> &InducedGeometry {
        &self.induced
    }

    /// Ambient ids of the lines of the subgeometry.
    pub fn ambient_lines(&self) -> &[u32] {
        &self.induced.ambient_lines
    }

    pub fn intersection_size(&self, other: &Suboctagon) -> usize {
        let (a, b) = (self.points(), other.points());
        let (mut i, mut j, mut n) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n
    }

    pub fn intersection(&self, other: &Suboctagon) -> Vec<u32> {
        self.points().iter().copied().filter(|&p| other.contains(p)).collect()
    }
}

/// Sorts `points` and keeps only `lines` (ambient ids, each inside `points`).
pub(crate) fn restricted(ambient: &Geometry, points: &[u32], lines: &[u32]) -> InducedGeometry {
    let mut old_of_new = points.to_vec();
    old_of_new.sort_unstable();
    let mut new_of_old = vec![u32::MAX; ambient.n_points()];
    for (i, &p) in old_of_new.iter().enumerate() {
        new_of_old[p as usize] = i as u32;
    }
    let local: Vec<Vec<u32>> = lines
        .iter()
        .map(|&l| ambient.line(l).iter().map(|&p| new_of_old[p as usize]).collect())
        .collect();
    let geometry = Geometry::new(old_of_new.len(), local).expect("lines are distinct and inside the point set");
    let ambient_lines = geometry
        .lines()
        .map(|ln| {
            let pts: Vec<u32> = ln.iter().map(|&q| old_of_new[q as usize]).collect();
            ambient.find_line(&pts).expect("ambient line")
        })
        .collect();
    InducedGeometry {
        geometry,
        old_of_new,
        new_of_old,
        ambient_lines,
    }
}

/// One sorted point set per line, preceded by `suboctagons N`.
pub fn point_sets_to_text(subs: &[Suboctagon]) -> String {
    let mut out = String::new();
    writeln!(out, "suboctagons {}", subs.len()).unwrap();
    for s in subs {
        write_indices(&mut out, s.points());
    }
    out
}

pub fn point_sets_from_text(text: &str) -> Result<Vec<Vec<u32>>, IncidenceError> {
    let mut rows = text.lines().enumerate();
    let count = rows
        .next()
        .and_then(|(_, h)| h.strip_prefix("suboctagons "))
        .and_then(|c| c.trim().parse::<usize>().ok())
        .ok_or_else(|| IncidenceError::Format(1, "expected `suboctagons N`".into()))?;
    let sets = rows
        .filter(|(_, r)| !r.trim().is_empty())
        .map(|(i, r)| parse_indices(r).map_err(|e| IncidenceError::Format(i + 1, e)))
        .collect::<Result<Vec<_>, _>>()?;
    if sets.len() != count {
        return Err(IncidenceError::Format(0, format!("announced {count} sets, found {}", sets.len())));
    }
    Ok(sets)
}
