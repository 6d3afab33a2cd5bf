use std::fmt::Write as _;

use super::{Octagon, OctagonError, Suborbit, SuborbitDiagram};
use crate::group::{InvolutionClass, OrbitalPartition};
use crate::incidence::{
    check_generalized_2dgon, convex_closure, parse_indices, write_indices, AxiomReport, DistanceMatrix,
    IncidenceError,
};

const QUAD_POINTS: usize = 15;

/// Quads as sorted point sets in lexicographic order, with incidence maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadSet {
    quads: Vec<Vec<u32>>,
    quads_of_point: Vec<Vec<u32>>,
    quads_of_line: Vec<Vec<u32>>,
}

impl QuadSet {
    pub fn from_quads(oct: &Octagon, mut quads: Vec<Vec<u32>>) -> Self {
        for q in &mut quads {
            q.sort_unstable();
        }
        quads.sort_unstable();
        let geom = oct.geometry();
        let mut quads_of_point = vec![Vec::new(); geom.n_points()];
        let mut quads_of_line = vec![Vec::new(); geom.n_lines()];
        for (i, q) in quads.iter().enumerate() {
            for &p in q {
                quads_of_point[p as usize].push(i as u32);
            }
            for l in geom.induced(q).ambient_lines {
                quads_of_line[l as usize].push(i as u32);
            }
        }
        QuadSet {
            quads,
            quads_of_point,
            quads_of_line,
        }
    }

    pub fn len(&self) -> usize {
        self.quads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quads.is_empty()
    }

    pub fn quad(&self, q: u32) -> &[u32] {
        &self.quads[q as usize]
    }

    pub fn quads(&self) -> &[Vec<u32>] {
        &self.quads
    }

    pub fn contains(&self, q: u32, p: u32) -> bool {
        self.quads[q as usize].binary_search(&p).is_ok()
    }

    pub fn quads_of_point(&self, p: u32) -> &[u32] {
        &self.quads_of_point[p as usize]
    }

    /// Quads containing the octagon line `l`.
    pub fn quads_of_line(&self, l: u32) -> &[u32] {
        &self.quads_of_line[l as usize]
    }

    /// Octagon lines inside quad `q`.
    pub fn lines_of_quad(&self, oct: &Octagon, q: u32) -> Vec<u32> {
        oct.geometry().induced(self.quad(q)).ambient_lines
    }

    pub fn common_quad(&self, x: u32, y: u32) -> Option<u32> {
        let qy = self.quads_of_point(y);
        self.quads_of_point(x).iter().copied().find(|q| qy.contains(q))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "quads {}", self.quads.len()).unwrap();
        for q in &self.quads {
            write_indices(&mut out, q);
        }
        out
    }

    pub fn from_text(oct: &Octagon, text: &str) -> Result<Self, OctagonError> {
        let mut rows = text.lines().enumerate();
        let count = rows
            .next()
            .and_then(|(_, h)| h.strip_prefix("quads "))
            .and_then(|c| c.trim().parse::<usize>().ok())
            .ok_or_else(|| IncidenceError::Format(1, "expected `quads N`".into()))?;
        let quads = rows
            .filter(|(_, r)| !r.trim().is_empty())
            .map(|(i, r)| parse_indices(r).map_err(|e| IncidenceError::Format(i + 1, e)))
            .collect::<Result<Vec<_>, _>>()?;
        if quads.len() != count {
            return Err(IncidenceError::Format(0, format!("announced {count} quads, found {}", quads.len())).into());
        }
        if let Some(q) = quads.iter().find(|q| q.iter().any(|&p| p as usize >= oct.n_points())) {
            return Err(IncidenceError::Format(0, format!("quad {q:?} out of range")).into());
        }
        Ok(QuadSet::from_quads(oct, quads))
    }
}

/// Convex closures of pairs at distance two in `O2a` position, each
/// validated as a 15-point quadrangle of order (2,2).
pub fn enumerate_quads(
    oct: &Octagon,
    dm: &DistanceMatrix,
    orbitals: &OrbitalPartition,
    diagram: &SuborbitDiagram,
) -> Result<QuadSet, OctagonError> {
    let o2a = diagram.orbital_of(Suborbit::O2a);
    let geom = oct.geometry();
    let n = geom.n_points() as u32;
    let mut quads: Vec<Vec<u32>> = Vec::new();
    let mut quads_of_point: Vec<Vec<u32>> = vec![Vec::new(); n as usize];
    for x in 0..n {
        for y in x + 1..n {
            if orbitals.orbital(x, y) != o2a {
                continue;
            }
            if quads_of_point[x as usize].iter().any(|q| quads_of_point[y as usize].contains(q)) {
                continue;
            }
            let closure = convex_closure(geom, dm, &[x, y]);
            let is_quad = closure.len() == QUAD_POINTS && {
                let sub = geom.induced(&closure).geometry;
                sub.order() == Some((2, 2)) && check_generalized_2dgon(&sub, 2).passed()
            };
            if !is_quad {
                return Err(OctagonError::NonQuadClosure(x, y, closure.len()));
            }
            let id = quads.len() as u32;
            for &p in &closure {
                quads_of_point[p as usize].push(id);
            }
            quads.push(closure);
        }
    }
    Ok(QuadSet::from_quads(oct, quads))
}

/// Distances from every point to the points of `quad`, reduced to the minimum.
fn distance_to_quad(dm: &DistanceMatrix, quad: &[u32]) -> Vec<u8> {
    let mut best = dm.row(quad[0]).to_vec();
    for &p in &quad[1..] {
        for (b, &d) in best.iter_mut().zip(dm.row(p)) {
            *b = (*b).min(d);
        }
    }
    best
}

/// Incidence counts of quads, their spreads, their distance layers, and
/// classicality of every point-quad pair.
pub fn quad_environment_checks(oct: &Octagon, dm: &DistanceMatrix, quads: &QuadSet) -> AxiomReport {
    let geom = oct.geometry();
    let n = geom.n_points() as u32;
    let spread = oct.spread_lines();

    let per_point_ok = (0..n).all(|x| {
        let qs = quads.quads_of_point(x);
        let lx = oct.spread_line_of(x);
        qs.len() == 5 && qs.iter().all(|q| quads.quads_of_line(lx).contains(q))
    });
    let mut quad_spread_ok = 0;
    let mut layer_ok = 0;
    let mut classical_pairs = 0usize;
    let mut spread_in_one_layer = 0usize;
    let mut far_spread_lines = 0usize;
    for q in 0..quads.len() as u32 {
        let pts = quads.quad(q);
        let inner_spread: Vec<u32> = quads
            .lines_of_quad(oct, q)
            .into_iter()
            .filter(|&l| oct.is_spread(l))
            .collect();
        let covered: usize = inner_spread.len() * 3;
        if inner_spread.len() == 5 && covered == QUAD_POINTS && pts.iter().all(|&p| inner_spread.contains(&oct.spread_line_of(p))) {
            quad_spread_ok += 1;
        }
        let dq = distance_to_quad(dm, pts);
        let mut layers = [0usize; 5];
        for x in 0..n {
            let d = dq[x as usize];
            layers[(d as usize).min(4)] += 1;
            let row = dm.row(x);
            let mut nearest = pts.iter().filter(|&&p| row[p as usize] == d);
            let gate = nearest.next().copied();
            if let (Some(g), None) = (gate, nearest.next()) {
                if pts.iter().all(|&z| row[z as usize] == d + dm.get(g, z)) {
                    classical_pairs += 1;
                }
            }
        }
        if layers == [15, 240, 3840, 0, 0] {
            layer_ok += 1;
        }
        for &l in &spread {
            let ds: Vec<u8> = geom.line(l).iter().map(|&p| dq[p as usize]).collect();
            if ds.iter().all(|&d| d == ds[0]) {
                spread_in_one_layer += 1;
                if ds[0] > 2 {
                    far_spread_lines += 1;
                }
            }
        }
    }
    let lines_in_one = (0..geom.n_lines() as u32)
        .filter(|&l| !oct.is_spread(l) && quads.quads_of_line(l).len() == 1)
        .count();
    let spread_in_five = spread.iter().filter(|&&l| quads.quads_of_line(l).len() == 5).count();
    let nq = quads.len();
    AxiomReport::from_checks(
        "quad-environment",
        vec![
            ("quads".into(), nq, nq == 1365),
            ("points-on-5-quads-through-spread-line".into(), n as usize, per_point_ok),
            ("quads-with-5-line-spread".into(), quad_spread_ok, quad_spread_ok == nq),
            ("quads-with-layers-15/240/3840".into(), layer_ok, layer_ok == nq),
            ("classical-point-quad-pairs".into(), classical_pairs, classical_pairs == nq * n as usize),
            ("spread-line-quad-pairs-in-one-layer".into(), spread_in_one_layer, spread_in_one_layer == nq * spread.len()),
            ("spread-lines-beyond-layer-2".into(), far_spread_lines, far_spread_lines == 0),
            ("non-spread-lines-in-one-quad".into(), lines_in_one, lines_in_one == geom.n_lines() - spread.len()),
            ("spread-lines-in-5-quads".into(), spread_in_five, spread_in_five == spread.len()),
        ],
    )
}

/// Two distinct members commute exactly when some quad contains both.
pub fn commuting_iff_common_quad(cls: &InvolutionClass, quads: &QuadSet) -> AxiomReport {
    let n = cls.len() as u32;
    let mut agree = 0usize;
    let mut commuting = 0usize;
    for x in 0..n {
        for y in x + 1..n {
            let c = cls.commute(x, y);
            commuting += usize::from(c);
            if c == quads.common_quad(x, y).is_some() {
                agree += 1;
            }
        }
    }
    let pairs = (n as usize) * (n as usize - 1) / 2;
    AxiomReport::from_checks(
        "commuting-iff-common-quad",
        vec![
            ("agreeing-pairs".into(), agree, agree == pairs),
            ("commuting-pairs".into(), commuting, true),
        ],
    )
}
