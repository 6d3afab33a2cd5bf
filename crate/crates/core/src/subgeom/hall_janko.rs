use std::collections::BTreeMap;

use super::{SubKind, SubgeomError, Suboctagon};
use crate::group::OrbitalPartition;
use crate::incidence::{
    check_near_polygon, isometric_check, regular_parameters, AxiomReport, DistanceMatrix, Geometry, Parameters,
};
use crate::octagon::{Octagon, QuadSet, Suborbit, SuborbitDiagram};

pub const HJ_COUNT: usize = 416;
pub const HJ_DISTRIBUTION: [usize; 5] = [1, 10, 80, 160, 64];
const HJ_POINTS: usize = 315;
const HJ_LINES: usize = 525;

/// Everything the Hall-Janko reconstruction reads from the octagon.
#[derive(Clone, Copy)]
pub struct HjContext<'a> {
    pub oct: &'a Octagon,
    pub dm: &'a DistanceMatrix,
    pub orbitals: &'a OrbitalPartition,
    pub diagram: &'a SuborbitDiagram,
    pub quads: &'a QuadSet,
}

impl HjContext<'_> {
    #[inline]
    fn label(&self, x: u32, p: u32) -> Suborbit {
        self.diagram.relative_label(self.orbitals, x, p)
    }

    fn geometry(&self) -> &Geometry {
        self.oct.geometry()
    }

    fn lines_meeting(&self, x: u32, p: u32, target: Suborbit) -> Vec<u32> {
        let g = self.geometry();
        g.lines_through(p)
            .iter()
            .copied()
            .filter(|&l| g.line(l).iter().any(|&q| self.label(x, q) == target))
            .collect()
    }
}

/// Rebuilds the unique Hall-Janko suboctagon through the opposite points
/// `x`, `y`, working inwards from the points opposite `x`:
///
/// * at each point `w` opposite `x`, the suboctagon lines are the lines
///   meeting `O3b(x)` other than the spread line of `w`, and their far
///   points are again opposite `x`;
/// * at a point `y'` of `O3b(x)` reached along such a line `N`, the line
///   `M` through `y'` in the quad of `N` that is neither `N` nor the spread
///   line of `y'` is excluded, and the remaining four lines meeting `O2b(x)`
///   are kept;
/// * from a point of `O2b(x)` the unique line to `O1b(x)` is kept, and from
///   there the line to `x`.
pub fn hj_closure(ctx: &HjContext, x: u32, y: u32) -> Result<Suboctagon, SubgeomError> {
    let fail = |reason: String| SubgeomError::ClosureNotHJ { x, y, reason };
    if ctx.label(x, y) != Suborbit::O4 {
        return Err(fail("points are not opposite".into()));
    }
    let g = ctx.geometry();
    let n = g.n_points();
    let mut inside = vec![false; n];
    let add_line = |l: u32, inside: &mut Vec<bool>| {
        for &p in g.line(l) {
            inside[p as usize] = true;
        }
    };

    let mut seen_far = vec![false; n];
    seen_far[y as usize] = true;
    let mut stack = vec![y];
    let mut entries: Vec<(u32, u32)> = Vec::new();
    while let Some(w) = stack.pop() {
        let spread = ctx.oct.spread_line_of(w);
        let lines: Vec<u32> = ctx
            .lines_meeting(x, w, Suborbit::O3b)
            .into_iter()
            .filter(|&l| l != spread)
            .collect();
        if lines.len() != 5 {
            return Err(fail(format!("point {w} has {} lines back", lines.len())));
        }
        for l in lines {
            add_line(l, &mut inside);
            for &p in g.line(l) {
                match ctx.label(x, p) {
                    Suborbit::O4 if !seen_far[p as usize] => {
                        seen_far[p as usize] = true;
                        stack.push(p);
                    }
                    Suborbit::O3b => entries.push((p, l)),
                    _ => {}
                }
            }
        }
    }

    let mut kept_at: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for (yp, via) in entries {
        let quads = ctx.quads.quads_of_line(via);
        let [q] = quads else {
            return Err(fail(format!("line {via} lies in {} quads", quads.len())));
        };
        let spread = ctx.oct.spread_line_of(yp);
        let in_quad: Vec<u32> = g
            .lines_through(yp)
            .iter()
            .copied()
            .filter(|&l| ctx.quads.quads_of_line(l).contains(q))
            .collect();
        let excluded: Vec<u32> = in_quad.iter().copied().filter(|&l| l != via && l != spread).collect();
        let [m] = excluded[..] else {
            return Err(fail(format!("quad {q} has {} lines through {yp}", in_quad.len())));
        };
        let mut back: Vec<u32> = ctx
            .lines_meeting(x, yp, Suborbit::O2b)
            .into_iter()
            .filter(|&l| l != m)
            .collect();
        back.sort_unstable();
        if back.len() != 4 {
            return Err(fail(format!("point {yp} keeps {} lines back", back.len())));
        }
        match kept_at.get(&yp) {
            Some(prev) if *prev != back => {
                return Err(fail(format!("point {yp} reached along different lines keeps different lines")))
            }
            Some(_) => {}
            None => {
                kept_at.insert(yp, back);
            }
        }
    }

    for lines in kept_at.values() {
        for &l in lines {
            add_line(l, &mut inside);
            for &ypp in g.line(l).iter().filter(|&&p| ctx.label(x, p) == Suborbit::O2b) {
                let down = ctx.lines_meeting(x, ypp, Suborbit::O1b);
                let [d] = down[..] else {
                    return Err(fail(format!("point {ypp} has {} lines to O1b", down.len())));
                };
                add_line(d, &mut inside);
                let yppp = *g.line(d).iter().find(|&&p| ctx.label(x, p) == Suborbit::O1b).unwrap();
                let to_x = g.line_through(yppp, x).ok_or_else(|| fail(format!("{yppp} not collinear with {x}")))?;
                add_line(to_x, &mut inside);
            }
        }
    }

    let points: Vec<u32> = (0..n as u32).filter(|&p| inside[p as usize]).collect();
    let sub = Suboctagon::new(SubKind::HallJanko, g, &points);
    let mut dist = [0usize; 5];
    for &p in &points {
        dist[(ctx.dm.get(x, p) as usize).min(4)] += 1;
    }
    if dist != HJ_DISTRIBUTION || sub.geometry().n_lines() != HJ_LINES {
        return Err(fail(format!(
            "distribution {dist:?} with {} lines",
            sub.geometry().n_lines()
        )));
    }
    Ok(sub)
}

/// Runs the reconstruction over opposite pairs in increasing order, skipping
/// pairs already inside a found suboctagon, and returns the suboctagons sorted
/// by point set.
pub fn enumerate_hj_suboctagons(ctx: &HjContext) -> Result<Vec<Suboctagon>, SubgeomError> {
    let n = ctx.oct.n_points() as u32;
    let o4 = ctx.diagram.orbital_of(Suborbit::O4);
    let mut found: Vec<Suboctagon> = Vec::new();
    let mut subs_of_point: Vec<Vec<u32>> = vec![Vec::new(); n as usize];
    for x in 0..n {
        for y in x + 1..n {
            if ctx.orbitals.orbital(x, y) != o4 {
                continue;
            }
            if subs_of_point[x as usize].iter().any(|&s| found[s as usize].contains(y)) {
                continue;
            }
            let sub = hj_closure(ctx, x, y)?;
            if found.iter().any(|f| f.points() == sub.points()) {
                return Err(SubgeomError::ClosureNotHJ {
                    x,
                    y,
                    reason: "closure repeats a suboctagon not containing the pair".into(),
                });
            }
            let id = found.len() as u32;
            for &p in sub.points() {
                subs_of_point[p as usize].push(id);
            }
            found.push(sub);
        }
    }
    if found.len() != HJ_COUNT {
        return Err(SubgeomError::CountMismatch {
            expected: HJ_COUNT,
            found: found.len(),
        });
    }
    found.sort_by(|a, b| a.points().cmp(b.points()));
    Ok(found)
}

/// `x` itself when inside, else its unique neighbour in the suboctagon.
pub fn projection_onto_suboctagon(sub: &Suboctagon, geom: &Geometry, x: u32) -> Result<u32, SubgeomError> {
    if sub.contains(x) {
        return Ok(x);
    }
    let mut nbrs = geom.neighbors(x).iter().copied().filter(|&q| sub.contains(q));
    match (nbrs.next(), nbrs.next()) {
        (Some(p), None) => Ok(p),
        (None, _) => Err(SubgeomError::NoProjection(x)),
        (Some(_), Some(_)) => Err(SubgeomError::MultipleProjections(x)),
    }
}

fn far_trace(sub: &Suboctagon, dm: &DistanceMatrix, x: u32) -> Vec<u64> {
    let pts = sub.points();
    let mut bits = vec![0u64; pts.len().div_ceil(64)];
    let row = dm.row(x);
    for (i, &p) in pts.iter().enumerate() {
        if row[p as usize] == 4 {
            bits[i / 64] |= 1 << (i % 64);
        }
    }
    bits
}

/// Whether the points of the suboctagon opposite `x` differ from those opposite `y`.
pub fn distance4_trace_distinguishes(sub: &Suboctagon, dm: &DistanceMatrix, x: u32, y: u32) -> bool {
    far_trace(sub, dm, x) != far_trace(sub, dm, y)
}

/// Structural checks of one Hall-Janko suboctagon inside the octagon.
pub fn hj_internal_checks(ctx: &HjContext, sub: &Suboctagon) -> AxiomReport {
    let g = ctx.geometry();
    let sg = sub.geometry();
    let sdm = DistanceMatrix::of(sg);
    let np = check_near_polygon(sg, &sdm);
    let regular = regular_parameters(sg, &sdm)
        .map(|r| r.passed() && r.parameters == Parameters::Regular { s: 2, t: 4, ts: vec![0, 3] })
        .unwrap_or(false);
    let iso = isometric_check(ctx.dm, sub.induced());
    let spread_inside = sub.ambient_lines().iter().filter(|&&l| ctx.oct.is_spread(l)).count();

    // distance classes inside the suboctagon
    let pts = sub.points();
    let mut class_ok = true;
    for (i, &a) in pts.iter().enumerate() {
        for &b in &pts[i + 1..] {
            let want = match ctx.dm.get(a, b) {
                2 => Some(Suborbit::O2b),
                3 => Some(Suborbit::O3b),
                _ => None,
            };
            if want.is_some_and(|w| ctx.label(a, b) != w) {
                class_ok = false;
            }
        }
    }

    // each line of the suboctagon meets its quad only in itself, and the
    // quads through a point carry one suboctagon line through it each
    let mut quad_meets_line = 0;
    for &l in sub.ambient_lines() {
        if let [q] = ctx.quads.quads_of_line(l) {
            if ctx.quads.quad(*q).iter().filter(|&&p| sub.contains(p)).count() == 3 {
                quad_meets_line += 1;
            }
        }
    }
    let mut quads_at_point = 0;
    for &x in pts {
        let lines: Vec<u32> = g
            .lines_through(x)
            .iter()
            .copied()
            .filter(|l| sub.ambient_lines().binary_search(l).is_ok())
            .collect();
        let ok = ctx.quads.quads_of_point(x).iter().all(|&q| {
            lines.iter().filter(|&&l| ctx.quads.quads_of_line(l).contains(&q)).count() == 1
        });
        quads_at_point += usize::from(ok);
    }

    // projections and far traces
    let mut by_projection: BTreeMap<u32, Vec<Vec<u64>>> = BTreeMap::new();
    let mut projected = 0;
    for x in 0..g.n_points() as u32 {
        match projection_onto_suboctagon(sub, g, x) {
            Ok(p) if p != x => {
                projected += 1;
                by_projection.entry(p).or_default().push(far_trace(sub, ctx.dm, x));
            }
            _ => {}
        }
    }
    let fibres_of_12 = by_projection.values().filter(|v| v.len() == 12).count();
    let distinct_traces = by_projection
        .values()
        .filter(|traces| {
            let mut t = traces.to_vec();
            t.sort_unstable();
            t.dedup();
            t.len() == traces.len()
        })
        .count();

    // around a base point w: the O1b(w) points outside split O3b(w) into blocks of 16
    let w = pts[0];
    let far3: Vec<u32> = pts.iter().copied().filter(|&p| ctx.label(w, p) == Suborbit::O3b).collect();
    let outside1b: Vec<u32> = g
        .neighbors(w)
        .iter()
        .copied()
        .filter(|&u| !sub.contains(u) && ctx.label(w, u) == Suborbit::O1b)
        .collect();
    let mut block_of = vec![usize::MAX; far3.len()];
    let mut blocks_ok = far3.len() == 160 && outside1b.len() == 10;
    for (bi, &u) in outside1b.iter().enumerate() {
        let block: Vec<usize> = (0..far3.len()).filter(|&k| ctx.dm.get(u, far3[k]) == 2).collect();
        blocks_ok &= block.len() == 16;
        for k in block {
            blocks_ok &= block_of[k] == usize::MAX;
            block_of[k] = bi;
        }
    }
    blocks_ok &= block_of.iter().all(|&b| b != usize::MAX);

    AxiomReport::from_checks(
        "hall-janko-suboctagon",
        vec![
            ("points".into(), pts.len(), pts.len() == HJ_POINTS),
            ("lines".into(), sg.n_lines(), sg.n_lines() == HJ_LINES),
            ("near-octagon".into(), 1, np.passed() && np.parameters == Parameters::NearPolygon { diameter: 4, order: Some((2, 4)) }),
            ("regular-(2,4;0,3)".into(), 1, regular),
            ("isometric".into(), 1, iso.passed()),
            ("spread-lines-inside".into(), spread_inside, spread_inside == 0),
            ("distance-2-in-O2b-and-3-in-O3b".into(), 1, class_ok),
            ("lines-equal-to-quad-intersection".into(), quad_meets_line, quad_meets_line == HJ_LINES),
            ("points-with-one-line-per-quad".into(), quads_at_point, quads_at_point == HJ_POINTS),
            ("projected-points".into(), projected, projected + HJ_POINTS == g.n_points() && projected == HJ_POINTS * 12),
            ("projection-fibres-of-12".into(), fibres_of_12, fibres_of_12 == HJ_POINTS),
            ("fibres-with-distinct-far-traces".into(), distinct_traces, distinct_traces == HJ_POINTS),
            ("sixteen-point-blocks".into(), outside1b.len(), blocks_ok),
        ],
    )
}

/// Family-level counts: each point on 32 suboctagons and each opposite pair
/// in exactly one; reconstruction from any opposite pair inside a suboctagon
/// returns that suboctagon (checked on `uniqueness_samples` pairs per member).
pub fn hj_family_checks(ctx: &HjContext, hjs: &[Suboctagon], uniqueness_samples: usize) -> AxiomReport {
    let n = ctx.oct.n_points();
    let mut per_point = vec![0usize; n];
    let mut cover = vec![0u8; n * n];
    for h in hjs {
        let pts = h.points();
        for (i, &a) in pts.iter().enumerate() {
            per_point[a as usize] += 1;
            for &b in &pts[i + 1..] {
                if ctx.dm.get(a, b) == 4 {
                    let c = &mut cover[a as usize * n + b as usize];
                    *c = c.saturating_add(1);
                }
            }
        }
    }
    let on_32 = per_point.iter().filter(|&&c| c == 32).count();
    let mut opposite = 0usize;
    let mut covered_once = 0usize;
    for a in 0..n {
        for b in a + 1..n {
            if ctx.dm.get(a as u32, b as u32) == 4 {
                opposite += 1;
                covered_once += usize::from(cover[a * n + b] == 1);
            }
        }
    }
    let mut unique_ok = 0;
    let mut unique_tried = 0;
    for h in hjs {
        let pts = h.points();
        let pairs = pts
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| pts[i + 1..].iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| ctx.dm.get(a, b) == 4)
            .step_by(997)
            .take(uniqueness_samples);
        for (a, b) in pairs {
            unique_tried += 1;
            if hj_closure(ctx, b, a).is_ok_and(|s| s.points() == pts) {
                unique_ok += 1;
            }
        }
    }
    AxiomReport::from_checks(
        "hall-janko-family",
        vec![
            ("suboctagons".into(), hjs.len(), hjs.len() == HJ_COUNT),
            ("points-on-32".into(), on_32, on_32 == n),
            ("opposite-pairs".into(), opposite, opposite == n * 2048 / 2),
            ("opposite-pairs-covered-once".into(), covered_once, covered_once == opposite),
            ("reconstructions-agreeing".into(), unique_ok, unique_ok == unique_tried),
        ],
    )
}
