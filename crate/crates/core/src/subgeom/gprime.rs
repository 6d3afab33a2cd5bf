use std::collections::BTreeMap;

use super::{SubKind, SubgeomError, Suboctagon, ThinSelection};
use crate::incidence::{check_generalized_2dgon, check_near_polygon, DistanceMatrix, Geometry, Parameters};
use crate::octagon::{Octagon, QuadSet, SpreadHexagon};

const GPRIME_POINTS: usize = 315;
const GPRIME_LINES: usize = 525;

/// Points on the spread lines of a thin subhexagon of order (4,1) of the
/// spread hexagon, with all octagon lines inside its quads.
pub fn build_gprime(
    oct: &Octagon,
    quads: &QuadSet,
    hex: &SpreadHexagon,
    ghsub: &ThinSelection,
) -> Result<Suboctagon, SubgeomError> {
    let geom = oct.geometry();
    let mut points: Vec<u32> = ghsub
        .points
        .iter()
        .flat_map(|&h| geom.line(hex.spread_line(h)).iter().copied())
        .collect();
    points.sort_unstable();
    points.dedup();
    let mut lines: Vec<u32> = ghsub
        .lines
        .iter()
        .flat_map(|&hl| quads.lines_of_quad(oct, hex.quad(hl)))
        .collect();
    lines.sort_unstable();
    lines.dedup();
    if points.len() != GPRIME_POINTS || lines.len() != GPRIME_LINES {
        return Err(SubgeomError::ValidationFailure(format!(
            "{} points and {} lines",
            points.len(),
            lines.len()
        )));
    }
    let sub = Suboctagon::with_lines(SubKind::GPrime, geom, &points, &lines);
    let sdm = DistanceMatrix::of(sub.geometry());
    let np = check_near_polygon(sub.geometry(), &sdm);
    let want = Parameters::NearPolygon {
        diameter: 4,
        order: Some((2, 4)),
    };
    if !np.passed() || np.parameters != want {
        return Err(SubgeomError::ValidationFailure(np.to_string()));
    }
    Ok(sub)
}

/// Sizes of the point-set intersections of the Hall-Janko suboctagons with
/// a fixed suboctagon, with how many intersections had each size.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntersectionCensus {
    pub by_size: BTreeMap<usize, usize>,
}

fn is_thin_polygon(g: &Geometry, d: usize) -> bool {
    g.order() == Some((2, 1)) && check_generalized_2dgon(g, d).passed()
}

/// Intersects each Hall-Janko suboctagon with `gprime` (common points and
/// common lines). Every intersection must be a thin hexagon of order (2,1)
/// on 21 points or a thin octagon of order (2,1) on 45 points; the distinct
/// octagons are returned sorted by point set.
pub fn gprime_go21_suboctagons(
    ambient: &Geometry,
    gprime: &Suboctagon,
    hjs: &[Suboctagon],
) -> Result<(Vec<Suboctagon>, IntersectionCensus), SubgeomError> {
    let mut census = IntersectionCensus::default();
    let mut octagons: BTreeMap<Vec<u32>, Suboctagon> = BTreeMap::new();
    for h in hjs {
        let points = gprime.intersection(h);
        *census.by_size.entry(points.len()).or_insert(0) += 1;
        let lines: Vec<u32> = gprime
            .ambient_lines()
            .iter()
            .copied()
            .filter(|l| h.ambient_lines().binary_search(l).is_ok())
            .collect();
        let sub = Suboctagon::with_lines(SubKind::Go21, ambient, &points, &lines);
        match points.len() {
            21 if is_thin_polygon(sub.geometry(), 3) => {}
            45 if is_thin_polygon(sub.geometry(), 4) => {
                octagons.entry(points).or_insert(sub);
            }
            k => return Err(SubgeomError::UnexpectedIntersection(k)),
        }
    }
    Ok((octagons.into_values().collect(), census))
}
