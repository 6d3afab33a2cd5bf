//! Strongly regular graphs read off the suboctagon families: the Suzuki
//! tower from the Hall-Janko suboctagons downwards, and three graphs on
//! thin suboctagons.

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::incidence::{
    check_generalized_2dgon, check_srg, check_srg_spectrum, AxiomReport, DistanceMatrix, Geometry, Graph,
    IncidenceError,
};
use crate::octagon::Octagon;
use crate::subgeom::{restricted, Suboctagon};

/// Rank checks of `A - rI` run up to this many vertices.
pub const RANK_LIMIT: usize = 500;

#[derive(Debug, Error)]
pub enum TowerError {
    #[error(transparent)]
    Incidence(#[from] IncidenceError),
    #[error("unclassified intersection: {0}")]
    ClassificationFailure(String),
    #[error("expected {expected} members, found {found}")]
    FamilySizeMismatch { expected: usize, found: usize },
}

/// A subgeometry as sorted ambient points and sorted ambient lines.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Member {
    pub points: Vec<u32>,
    pub lines: Vec<u32>,
}

fn sorted_meet(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

impl Member {
    pub fn from_suboctagon(s: &Suboctagon) -> Self {
        Member {
            points: s.points().to_vec(),
            lines: s.ambient_lines().to_vec(),
        }
    }

    /// Common points and common lines.
    pub fn meet(&self, other: &Member) -> Member {
        Member {
            points: sorted_meet(&self.points, &other.points),
            lines: sorted_meet(&self.lines, &other.lines),
        }
    }

    pub fn geometry(&self, ambient: &Geometry) -> Geometry {
        restricted(ambient, &self.points, &self.lines).geometry
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.points.len(), self.lines.len())
    }
}

fn is_polygon(g: &Geometry, order: (usize, usize), d: usize) -> bool {
    g.order() == Some(order) && check_generalized_2dgon(g, d).passed()
}

/// A graph with its verdicts and the shapes `(points, lines)` of the
/// intersections between adjacent and between non-adjacent vertices.
#[derive(Clone, Debug)]
pub struct TowerGraph {
    pub graph: Graph,
    pub reports: Vec<AxiomReport>,
    pub adjacent_shapes: BTreeMap<(usize, usize), usize>,
    pub non_adjacent_shapes: BTreeMap<(usize, usize), usize>,
}

type Shapes = BTreeMap<(usize, usize), usize>;

impl TowerGraph {
    fn srg(graph: Graph, (adjacent_shapes, non_adjacent_shapes): (Shapes, Shapes)) -> Self {
        let srg = check_srg(&graph);
        let spectrum = check_srg_spectrum(&graph, &srg, RANK_LIMIT);
        TowerGraph {
            graph,
            reports: vec![srg, spectrum],
            adjacent_shapes,
            non_adjacent_shapes,
        }
    }

    pub fn passed(&self) -> bool {
        self.reports.iter().all(AxiomReport::passed)
    }

    pub fn srg_report(&self) -> &AxiomReport {
        &self.reports[0]
    }

    /// Point counts of all pairwise intersections.
    pub fn meet_sizes(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for (&(p, _), &c) in self.adjacent_shapes.iter().chain(&self.non_adjacent_shapes) {
            *out.entry(p).or_insert(0) += c;
        }
        out
    }
}

/// Joins members whose intersection satisfies `adjacent`, tallying the
/// intersection shapes on both sides.
fn intersection_graph(
    members: &[Member],
    labels: Vec<String>,
    adjacent: impl Fn(&Member) -> Result<bool, TowerError> + Sync,
) -> Result<(Graph, (Shapes, Shapes)), TowerError> {
    type Row = Vec<(u32, bool, (usize, usize))>;
    let rows: Vec<Row> = (0..members.len())
        .into_par_iter()
        .map(|i| {
            members[i + 1..]
                .iter()
                .enumerate()
                .map(|(k, b)| {
                    let m = members[i].meet(b);
                    Ok(((i + 1 + k) as u32, adjacent(&m)?, m.shape()))
                })
                .collect()
        })
        .collect::<Result<_, TowerError>>()?;
    let mut g = Graph::new(members.len()).with_labels(labels);
    let (mut adj, mut non) = (Shapes::new(), Shapes::new());
    for (i, row) in rows.into_iter().enumerate() {
        for (j, is_edge, shape) in row {
            if is_edge {
                g.add_edge(i as u32, j);
                *adj.entry(shape).or_insert(0) += 1;
            } else {
                *non.entry(shape).or_insert(0) += 1;
            }
        }
    }
    Ok((g, (adj, non)))
}

/// Hall-Janko suboctagons, adjacent when they meet in 63 points forming a
/// generalized hexagon of order (2,2).
pub fn g2_4_graph(ambient: &Geometry, hjs: &[Suboctagon]) -> Result<TowerGraph, TowerError> {
    let members: Vec<Member> = hjs.iter().map(Member::from_suboctagon).collect();
    let labels = (0..members.len()).map(|i| format!("hj {i}")).collect();
    let (g, shapes) = intersection_graph(&members, labels, |m| {
        if m.points.len() != 63 {
            return Ok(false);
        }
        if is_polygon(&m.geometry(ambient), (2, 2), 3) {
            Ok(true)
        } else {
            Err(TowerError::ClassificationFailure(format!("63-point intersection {:?}", m.shape())))
        }
    })?;
    Ok(TowerGraph::srg(g, shapes))
}

/// Least point distance between two lines.
fn line_distance(geom: &Geometry, dm: &DistanceMatrix, k: u32, m: u32) -> u8 {
    let mk = geom.line(m);
    geom.line(k)
        .iter()
        .flat_map(|&a| mk.iter().map(move |&b| dm.get(a, b)))
        .min()
        .unwrap()
}

/// `{inf} + A + B` with `inf` joined to all of `A`, `A` carrying `a_graph`,
/// an `A`-`B` edge when a spread line meets the member, and a `B`-`B` edge
/// when two spread lines are at distance 2.
fn extend_by_spread(
    oct: &Octagon,
    dm: &DistanceMatrix,
    a_graph: &Graph,
    a_members: &[Vec<u32>],
    spread: &[u32],
) -> (Graph, usize) {
    let geom = oct.geometry();
    let na = a_graph.n();
    let n = 1 + na + spread.len();
    let mut labels = vec!["inf".to_string()];
    labels.extend(a_graph.labels().iter().cloned());
    labels.extend(spread.iter().map(|l| format!("spread {l}")));
    let mut g = Graph::new(n).with_labels(labels);
    let a = |i: usize| (1 + i) as u32;
    let b = |j: usize| (1 + na + j) as u32;
    let mut single_point_meets = 0;
    for (i, mem) in a_members.iter().enumerate().take(na) {
        g.add_edge(0, a(i));
        for j in a_graph.neighbors(i as u32).filter(|&j| j as usize > i) {
            g.add_edge(a(i), a(j as usize));
        }
        for (j, &l) in spread.iter().enumerate() {
            let meets = geom.line(l).iter().filter(|p| mem.binary_search(p).is_ok()).count();
            if meets > 0 {
                g.add_edge(a(i), b(j));
                single_point_meets += usize::from(meets == 1);
            }
        }
    }
    for (j, &k) in spread.iter().enumerate() {
        for (jj, &m) in spread.iter().enumerate().skip(j + 1) {
            if line_distance(geom, dm, k, m) == 2 {
                g.add_edge(b(j), b(jj));
            }
        }
    }
    (g, single_point_meets)
}

/// The Suzuki graph on `{inf}`, the Hall-Janko suboctagons, and the spread
/// lines. The tally records member-line incidences meeting in a single point.
pub fn suzuki_graph(
    oct: &Octagon,
    dm: &DistanceMatrix,
    hjs: &[Suboctagon],
    g24: &TowerGraph,
) -> (TowerGraph, usize) {
    let members: Vec<Vec<u32>> = hjs.iter().map(|h| h.points().to_vec()).collect();
    let (g, single) = extend_by_spread(oct, dm, &g24.graph, &members, &oct.spread_lines());
    (TowerGraph::srg(g, Default::default()), single)
}

/// Shapes per descent level: members, their count, and the adjacency meet.
struct Level {
    child_points: usize,
    degree: usize,
    edge_points: usize,
}

const LEVELS: [Level; 3] = [
    Level { child_points: 9, degree: 14, edge_points: 3 },
    Level { child_points: 21, degree: 36, edge_points: 9 },
    Level { child_points: 63, degree: 100, edge_points: 21 },
];

/// Fixes the member `center` of a family and takes its intersections with its
/// neighbours in `parent` as the next family down. Two of those are joined
/// when they meet in a thin hexagon (level 2), in nine points on four lines
/// (level 1), or in three pairwise non-collinear points (level 0). Level 2
/// starts from the Hall-Janko family, level 1 from the level 2 family, level
/// 0 from level 1.
pub fn descend_graph(
    level: usize,
    ambient: &Geometry,
    family: &[Member],
    parent: &Graph,
    center: u32,
) -> Result<(Vec<Member>, TowerGraph), TowerError> {
    let spec = LEVELS.get(level).ok_or_else(|| TowerError::ClassificationFailure(format!("level {level}")))?;
    let mut children: Vec<Member> = parent
        .neighbors(center)
        .map(|v| family[center as usize].meet(&family[v as usize]))
        .collect();
    if let Some(bad) = children.iter().find(|c| c.points.len() != spec.child_points) {
        return Err(TowerError::ClassificationFailure(format!("intersection of shape {:?}", bad.shape())));
    }
    if level >= 1 {
        let order = if level == 2 { (2, 2) } else { (2, 1) };
        if let Some(bad) = children.iter().find(|c| !is_polygon(&c.geometry(ambient), order, 3)) {
            return Err(TowerError::ClassificationFailure(format!("member of shape {:?} is not a hexagon", bad.shape())));
        }
    }
    children.sort();
    children.dedup();
    if children.len() != spec.degree {
        return Err(TowerError::FamilySizeMismatch {
            expected: spec.degree,
            found: children.len(),
        });
    }
    let labels = (0..children.len()).map(|i| format!("meet {center} {i}")).collect();
    let center_lines = &family[center as usize].lines;
    let collinear = |a: u32, b: u32| {
        ambient
            .line_through(a, b)
            .is_some_and(|l| center_lines.binary_search(&l).is_ok())
    };
    let (g, shapes) = intersection_graph(&children, labels, |m| {
        if m.points.len() != spec.edge_points {
            return Ok(false);
        }
        Ok(match level {
            2 => {
                if !is_polygon(&m.geometry(ambient), (2, 1), 3) {
                    return Err(TowerError::ClassificationFailure(format!("21-point meet of shape {:?}", m.shape())));
                }
                true
            }
            1 => m.lines.len() == 4,
            _ => {
                let p = &m.points;
                !collinear(p[0], p[1]) && !collinear(p[0], p[2]) && !collinear(p[1], p[2])
            }
        })
    })?;
    let tg = if level == 0 {
        let report = design_incidence_check(&g);
        TowerGraph {
            graph: g,
            reports: vec![report],
            adjacent_shapes: shapes.0,
            non_adjacent_shapes: shapes.1,
        }
    } else {
        TowerGraph::srg(g, shapes)
    };
    Ok((children, tg))
}

/// Fourteen vertices, quartic, bipartite in two halves of seven, any two
/// vertices of one half with exactly two common neighbours, girth 4: the
/// incidence graph of the complement of the Fano plane.
pub fn design_incidence_check(g: &Graph) -> AxiomReport {
    let deg = if g.n() == 0 { 0 } else { g.degree(0) };
    let regular = (0..g.n() as u32).all(|v| g.degree(v) == deg);
    let dist = if g.n() == 0 { Vec::new() } else { g.distances_from(0) };
    let half: Vec<u32> = (0..g.n() as u32).filter(|&v| dist[v as usize] % 2 == 0).collect();
    let other: Vec<u32> = (0..g.n() as u32).filter(|&v| dist[v as usize] % 2 == 1).collect();
    let pairs_with_two = [&half, &other]
        .iter()
        .map(|side| {
            side.iter()
                .enumerate()
                .flat_map(|(i, &a)| side[i + 1..].iter().map(move |&b| (a, b)))
                .filter(|&(a, b)| g.common_neighbors(a, b) == 2)
                .count()
        })
        .sum::<usize>();
    let girth = g.girth().unwrap_or(0);
    AxiomReport::from_checks(
        "co-heawood",
        vec![
            ("vertices".into(), g.n(), g.n() == 14),
            ("degree".into(), deg, regular && deg == 4),
            ("bipartite".into(), 1, g.is_bipartite() && half.len() == 7 && other.len() == 7),
            ("same-side-pairs-with-2-common".into(), pairs_with_two, pairs_with_two == 42),
            ("girth".into(), girth, girth == 4),
        ],
    )
}

/// Point sets joined when they meet in exactly `adjacent_size` points.
pub fn point_set_graph(sets: &[Vec<u32>], adjacent_size: usize, label: &str) -> TowerGraph {
    let members: Vec<Member> = sets
        .iter()
        .map(|p| Member {
            points: p.clone(),
            lines: Vec::new(),
        })
        .collect();
    let labels = (0..sets.len()).map(|i| format!("{label} {i}")).collect();
    let (g, shapes) = intersection_graph(&members, labels, |m| Ok(m.points.len() == adjacent_size))
        .expect("point-set adjacency never fails");
    TowerGraph::srg(g, shapes)
}

/// The three graphs on thin octagons of order (2,1): those inside one
/// Hall-Janko suboctagon (meeting in 15 points), those inside the
/// suboctagon built from a thin subhexagon (meeting in 9 points), and the
/// latter extended by `inf` and the spread lines inside that suboctagon.
pub struct BonusGraphs {
    pub hj_go21: TowerGraph,
    pub gprime_go21: TowerGraph,
    pub extended: TowerGraph,
}

pub fn bonus_srgs(
    oct: &Octagon,
    dm: &DistanceMatrix,
    hj_go21s: &[Vec<u32>],
    gprime: &Suboctagon,
    gprime_go21s: &[Suboctagon],
) -> BonusGraphs {
    let hj_go21 = point_set_graph(hj_go21s, 15, "go21");
    let sets: Vec<Vec<u32>> = gprime_go21s.iter().map(|s| s.points().to_vec()).collect();
    let gprime_go21 = point_set_graph(&sets, 9, "go21");
    let spread: Vec<u32> = oct
        .spread_lines()
        .into_iter()
        .filter(|&l| oct.geometry().line(l).iter().all(|&p| gprime.contains(p)))
        .collect();
    let (g, _) = extend_by_spread(oct, dm, &gprime_go21.graph, &sets, &spread);
    BonusGraphs {
        hj_go21,
        gprime_go21,
        extended: TowerGraph::srg(g, Default::default()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::{classical, Parameters};

    fn incidence_graph(geom: &Geometry, complement: bool) -> Graph {
        let n = geom.n_points();
        let edges = (0..geom.n_lines() as u32).flat_map(|l| {
            (0..n as u32)
                .filter(move |&p| geom.line(l).contains(&p) != complement)
                .map(move |p| (p, n as u32 + l))
        });
        Graph::from_edges(n + geom.n_lines(), edges)
    }

    #[test]
    fn co_heawood_passes_and_heawood_fails() {
        let fano = classical::fano();
        assert!(design_incidence_check(&incidence_graph(&fano, true)).passed());
        let heawood = incidence_graph(&fano, false);
        assert_eq!(heawood.girth(), Some(6));
        assert!(!design_incidence_check(&heawood).passed());
    }

    #[test]
    fn meet_of_members() {
        let a = Member { points: vec![1, 3, 5, 7], lines: vec![0, 2] };
        let b = Member { points: vec![3, 4, 5], lines: vec![2, 9] };
        assert_eq!(a.meet(&b), Member { points: vec![3, 5], lines: vec![2] });
        assert_eq!(a.meet(&b).shape(), (2, 1));
    }

    #[test]
    fn lines_meeting_in_a_point_give_the_dual_quadrangle() {
        let w2 = classical::w2();
        let sets: Vec<Vec<u32>> = w2.lines().map(<[u32]>::to_vec).collect();
        let tg = point_set_graph(&sets, 1, "line");
        assert!(tg.passed());
        assert_eq!(tg.srg_report().parameters, Parameters::Srg { v: 15, k: 6, lambda: Some(1), mu: Some(3) });
        assert_eq!(tg.meet_sizes(), BTreeMap::from([(0, 60), (1, 45)]));
    }
}
