use std::fmt::Write as _;

use super::{Octagon, OctagonError, QuadSet};
use crate::incidence::{
    check_distance_regular, check_generalized_2dgon, AxiomReport, DistanceMatrix, Geometry, Graph,
    IncidenceError,
};

/// Spread lines as points and quads as lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpreadHexagon {
    geometry: Geometry,
    spread_ids: Vec<u32>,
    point_of_spread_line: Vec<u32>,
    quad_of_line: Vec<u32>,
}

impl SpreadHexagon {
    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    /// Octagon line id of hexagon point `p`.
    pub fn spread_line(&self, p: u32) -> u32 {
        self.spread_ids[p as usize]
    }

    /// Hexagon point of an octagon spread line.
    pub fn point_of(&self, spread_line: u32) -> Option<u32> {
        let p = self.point_of_spread_line[spread_line as usize];
        (p != u32::MAX).then_some(p)
    }

    /// Quad id of hexagon line `l`.
    pub fn quad(&self, l: u32) -> u32 {
        self.quad_of_line[l as usize]
    }

    pub fn line_of_quad(&self, quad: u32) -> u32 {
        self.quad_of_line.iter().position(|&q| q == quad).expect("quad is a hexagon line") as u32
    }

    /// Sidecar lines `p I LINE` and `l J QUAD` mapping hexagon ids back to octagon ids.
    pub fn index_to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "hexagon-index points {} lines {}", self.spread_ids.len(), self.quad_of_line.len()).unwrap();
        for (i, l) in self.spread_ids.iter().enumerate() {
            writeln!(out, "p {i} {l}").unwrap();
        }
        for (j, q) in self.quad_of_line.iter().enumerate() {
            writeln!(out, "l {j} {q}").unwrap();
        }
        out
    }

    /// Order (4,4), generalized hexagon axioms, and the distance-regular
    /// collinearity graph.
    pub fn axiom_reports(&self) -> Vec<AxiomReport> {
        let gh = check_generalized_2dgon(&self.geometry, 3);
        let drg = check_distance_regular(&Graph::collinearity(&self.geometry)).unwrap_or_else(|e| {
            AxiomReport::fail("distance-regular", crate::incidence::Parameters::None, crate::incidence::Witness::new(vec![], vec![], e.to_string()))
        });
        vec![gh, drg]
    }
}

pub fn build_spread_hexagon(oct: &Octagon, quads: &QuadSet) -> Result<SpreadHexagon, OctagonError> {
    let spread_ids = oct.spread_lines();
    let mut point_of_spread_line = vec![u32::MAX; oct.geometry().n_lines()];
    for (i, &l) in spread_ids.iter().enumerate() {
        point_of_spread_line[l as usize] = i as u32;
    }
    let mut hex_lines: Vec<(Vec<u32>, u32)> = (0..quads.len() as u32)
        .map(|q| {
            let mut pts: Vec<u32> = quads
                .lines_of_quad(oct, q)
                .into_iter()
                .filter(|&l| oct.is_spread(l))
                .map(|l| point_of_spread_line[l as usize])
                .collect();
            pts.sort_unstable();
            (pts, q)
        })
        .collect();
    hex_lines.sort_unstable();
    let quad_of_line = hex_lines.iter().map(|(_, q)| *q).collect();
    let geometry = Geometry::new(spread_ids.len(), hex_lines.into_iter().map(|(p, _)| p).collect())?;
    if geometry.order() != Some((4, 4)) {
        return Err(OctagonError::AxiomFailure(format!("hexagon order {:?}", geometry.order())));
    }
    let gh = check_generalized_2dgon(&geometry, 3);
    if !gh.passed() {
        return Err(OctagonError::AxiomFailure(gh.to_string()));
    }
    Ok(SpreadHexagon {
        geometry,
        spread_ids,
        point_of_spread_line,
        quad_of_line,
    })
}

impl SpreadHexagon {
    pub fn from_index_text(oct: &Octagon, quads: &QuadSet, text: &str) -> Result<Self, OctagonError> {
        let built = build_spread_hexagon(oct, quads)?;
        let expected = built.index_to_text();
        if expected != text {
            return Err(IncidenceError::Format(0, "hexagon index does not match the quads".into()).into());
        }
        Ok(built)
    }
}

/// For spread lines `K`, `M` at hexagon distance `δ`: the least octagon
/// distance between their points is `δ`, every point of `K` has exactly one
/// point of `M` at distance `δ`, and all other pairs are at distance `δ + 1`.
pub fn spread_distance_check(oct: &Octagon, dm: &DistanceMatrix, hex: &SpreadHexagon) -> AxiomReport {
    let hdm = DistanceMatrix::of(hex.geometry());
    let np = hex.geometry().n_points() as u32;
    let geom = oct.geometry();
    let mut line_pairs_ok = 0usize;
    let mut point_pairs_ok = 0usize;
    for a in 0..np {
        let k = geom.line(hex.spread_line(a));
        for b in 0..np {
            let m = geom.line(hex.spread_line(b));
            let delta = hdm.get(a, b);
            let mut least = u8::MAX;
            let mut rows_ok = true;
            for &y in k {
                let row = dm.row(y);
                let at_delta = m.iter().filter(|&&z| row[z as usize] == delta).count();
                let rest_ok = m.iter().all(|&z| row[z as usize] == delta || row[z as usize] == delta + 1);
                least = least.min(m.iter().map(|&z| row[z as usize]).min().unwrap());
                if at_delta == 1 && rest_ok {
                    point_pairs_ok += 3;
                } else {
                    rows_ok = false;
                }
            }
            if rows_ok && least == delta {
                line_pairs_ok += 1;
            }
        }
    }
    let n = np as usize;
    AxiomReport::from_checks(
        "spread-distances",
        vec![
            ("line-pairs".into(), line_pairs_ok, line_pairs_ok == n * n),
            ("point-pairs".into(), point_pairs_ok, point_pairs_ok == 9 * n * n),
        ],
    )
}
