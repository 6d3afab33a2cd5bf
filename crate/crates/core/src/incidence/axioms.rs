use super::graph::{adjacency_diameter, adjacency_girth};
use super::{
    AxiomReport, DistanceMatrix, Geometry, Graph, IncidenceError, InducedGeometry, Parameters,
    Verdict, Witness, INFINITE,
};

/// Unique index of the minimum of `ds`, or the two tied indices.
fn nearest(ds: impl Iterator<Item = u8>) -> Result<(usize, u8), (usize, usize)> {
    let mut best = (usize::MAX, u8::MAX);
    let mut tie = None;
    for (i, d) in ds.enumerate() {
        if d < best.1 {
            best = (i, d);
            tie = None;
        } else if d == best.1 {
            tie = Some(i);
        }
    }
    match tie {
        Some(j) => Err((best.0, j)),
        None => Ok(best),
    }
}

fn partial_linear_witness(geom: &Geometry) -> Option<Witness> {
    for p in 0..geom.n_points() as u32 {
        let through = geom.lines_through(p);
        for (i, &a) in through.iter().enumerate() {
            for &b in &through[i + 1..] {
                if let Some(&q) = geom.line(a).iter().find(|&&q| q != p && geom.line(b).contains(&q)) {
                    return Some(Witness::new(vec![p, q], vec![a, b], "two points on two common lines"));
                }
            }
        }
    }
    None
}

/// Connectedness plus the unique-nearest-point property for every point-line pair.
pub fn check_near_polygon(geom: &Geometry, dm: &DistanceMatrix) -> AxiomReport {
    const NAME: &str = "near-polygon";
    let order = geom.order();
    if let Some(w) = partial_linear_witness(geom) {
        return AxiomReport::fail(NAME, Parameters::None, w);
    }
    if let Some(y) = (0..geom.n_points() as u32).find(|&y| dm.get(0, y) == INFINITE) {
        return AxiomReport::fail(NAME, Parameters::None, Witness::new(vec![0, y], vec![], "disconnected pair"));
    }
    let diameter = dm.diameter().unwrap_or(0);
    let params = Parameters::NearPolygon { diameter, order };
    for x in 0..geom.n_points() as u32 {
        let row = dm.row(x);
        for l in 0..geom.n_lines() as u32 {
            let pts = geom.line(l);
            if let Err((i, j)) = nearest(pts.iter().map(|&p| row[p as usize])) {
                return AxiomReport::fail(
                    NAME,
                    params,
                    Witness::new(
                        vec![x, pts[i], pts[j]],
                        vec![l],
                        format!("line {l} has two points nearest to {x}"),
                    ),
                );
            }
        }
    }
    AxiomReport::pass(NAME, params)
}

/// Per-pair counts of lines through `y` heading back towards `x`, which must
/// depend only on `d(x,y)`.
pub fn regular_parameters(geom: &Geometry, dm: &DistanceMatrix) -> Result<AxiomReport, IncidenceError> {
    const NAME: &str = "regular-near-polygon";
    let (s, t) = geom
        .order()
        .ok_or_else(|| IncidenceError::NotNearPolygon("lines or points have unequal degrees".into()))?;
    let d = dm
        .diameter()
        .ok_or_else(|| IncidenceError::NotNearPolygon("disconnected".into()))?;
    let n = geom.n_points();
    let mut expected: Vec<Option<usize>> = vec![None; d + 1];
    let mut back = vec![0usize; n];
    for x in 0..n as u32 {
        back.fill(0);
        let row = dm.row(x);
        for l in 0..geom.n_lines() as u32 {
            let pts = geom.line(l);
            let (i, _) = nearest(pts.iter().map(|&p| row[p as usize]))
                .map_err(|_| IncidenceError::NotNearPolygon(format!("line {l} has two points nearest to {x}")))?;
            for (k, &p) in pts.iter().enumerate() {
                if k != i {
                    back[p as usize] += 1;
                }
            }
        }
        for y in 0..n as u32 {
            let i = row[y as usize] as usize;
            if i == 0 {
                continue;
            }
            match expected[i] {
                None => expected[i] = Some(back[y as usize]),
                Some(e) if e != back[y as usize] => {
                    let params = Parameters::Regular { s, t, ts: vec![] };
                    return Ok(AxiomReport::fail(
                        NAME,
                        params,
                        Witness::new(
                            vec![x, y],
                            vec![],
                            format!(
                                "distance {i}: {} lines back, another pair has {e}",
                                back[y as usize]
                            ),
                        ),
                    ));
                }
                Some(_) => {}
            }
        }
    }
    let ts = (2..d).map(|i| expected[i].unwrap_or(0).saturating_sub(1)).collect();
    Ok(AxiomReport::pass(NAME, Parameters::Regular { s, t, ts }))
}

fn incidence_adjacency(geom: &Geometry) -> Vec<Vec<u32>> {
    let np = geom.n_points() as u32;
    let mut adj: Vec<Vec<u32>> = (0..np).map(|p| geom.lines_through(p).iter().map(|&l| np + l).collect()).collect();
    adj.extend(geom.lines().map(|l| l.to_vec()));
    adj
}

/// A generalized `2d`-gon is a geometry whose point-line incidence graph has
/// diameter `2d` and girth `4d`, with every element on at least two others.
pub fn check_generalized_2dgon(geom: &Geometry, d: usize) -> AxiomReport {
    let name = format!("generalized-{}-gon", 2 * d);
    let adj = incidence_adjacency(geom);
    let girth = adjacency_girth(&adj).unwrap_or(0);
    let diameter = adjacency_diameter(&adj).unwrap_or(0);
    let params = Parameters::GeneralizedPolygon {
        order: geom.order(),
        girth,
        diameter,
    };
    if let Some(p) = (0..geom.n_points() as u32).find(|&p| geom.lines_through(p).len() < 2) {
        return AxiomReport::fail(name, params, Witness::new(vec![p], vec![], "point on fewer than two lines"));
    }
    if girth != 4 * d || diameter != 2 * d {
        let note = format!("incidence graph girth {girth} diameter {diameter}, need {} and {}", 4 * d, 2 * d);
        return AxiomReport::fail(name, params, Witness::new(vec![], vec![], note));
    }
    AxiomReport::pass(name, params)
}

/// Regularity and constant common-neighbour counts on edges and non-edges.
/// A complete graph has no non-edges; it reports μ as undefined with verdict
/// [`Verdict::Complete`].
pub fn check_srg(g: &Graph) -> AxiomReport {
    const NAME: &str = "strongly-regular";
    let v = g.n();
    let k = if v == 0 { 0 } else { g.degree(0) };
    let params = |lambda, mu| Parameters::Srg { v, k, lambda, mu };
    if let Some(x) = (0..v as u32).find(|&x| g.degree(x) != k) {
        return AxiomReport::fail(
            NAME,
            params(None, None),
            Witness::new(vec![0, x], vec![], format!("degrees {k} and {}", g.degree(x))),
        );
    }
    let mut lambda: Option<(usize, u32, u32)> = None;
    let mut mu = lambda;
    for a in 0..v as u32 {
        for b in a + 1..v as u32 {
            let c = g.common_neighbors(a, b);
            let slot = if g.has_edge(a, b) { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some((c, a, b)),
                Some((e, a0, b0)) if e != c => {
                    let kind = if g.has_edge(a, b) { "edges" } else { "non-edges" };
                    return AxiomReport::fail(
                        NAME,
                        params(lambda.map(|x| x.0), mu.map(|x| x.0)),
                        Witness::new(vec![a0, b0, a, b], vec![], format!("{kind} with {e} and {c} common neighbours")),
                    );
                }
                Some(_) => {}
            }
        }
    }
    let mut report = AxiomReport::pass(NAME, params(lambda.map(|x| x.0), mu.map(|x| x.0)));
    if mu.is_none() && v > 0 {
        report.verdict = Verdict::Complete;
    }
    report
}

/// Intersection numbers `b_i`, `c_i` must depend only on the distance.
pub fn check_distance_regular(g: &Graph) -> Result<AxiomReport, IncidenceError> {
    const NAME: &str = "distance-regular";
    let adj = g.adjacency_lists();
    if !g.is_connected() {
        return Err(IncidenceError::Disconnected);
    }
    let n = g.n();
    let mut bs: Vec<Option<usize>> = Vec::new();
    let mut cs: Vec<Option<usize>> = Vec::new();
    for x in 0..n as u32 {
        let dist = g.distances_from(x);
        for y in 0..n as u32 {
            let i = dist[y as usize] as usize;
            let (mut b, mut c) = (0, 0);
            for &z in &adj[y as usize] {
                let dz = dist[z as usize] as usize;
                if dz == i + 1 {
                    b += 1;
                } else if dz + 1 == i {
                    c += 1;
                }
            }
            if bs.len() <= i {
                bs.resize(i + 1, None);
                cs.resize(i + 1, None);
            }
            for (slot, val, what) in [(&mut bs[i], b, "b"), (&mut cs[i], c, "c")] {
                match *slot {
                    None => *slot = Some(val),
                    Some(e) if e != val => {
                        let note = format!("{what}_{i} takes values {e} and {val}");
                        return Ok(AxiomReport::fail(NAME, Parameters::None, Witness::new(vec![x, y], vec![], note)));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let diam = bs.len() - 1;
    let b = bs[..diam].iter().map(|x| x.unwrap_or(0)).collect();
    let c = cs[1..].iter().map(|x| x.unwrap_or(0)).collect();
    Ok(AxiomReport::pass(NAME, Parameters::IntersectionArray { b, c }))
}

/// Internal distances of an induced subgeometry must equal ambient ones.
pub fn isometric_check(ambient: &DistanceMatrix, sub: &InducedGeometry) -> AxiomReport {
    const NAME: &str = "isometric-embedding";
    let inner = DistanceMatrix::of(&sub.geometry);
    let m = sub.old_of_new.len() as u32;
    for a in 0..m {
        for b in a + 1..m {
            let (pa, pb) = (sub.old_of_new[a as usize], sub.old_of_new[b as usize]);
            let (di, da) = (inner.get(a, b), ambient.get(pa, pb));
            if di != da {
                let fmt_d = |d: u8| if d == INFINITE { "inf".to_string() } else { d.to_string() };
                return AxiomReport::fail(
                    NAME,
                    Parameters::None,
                    Witness::new(
                        vec![pa, pb],
                        vec![],
                        format!("internal distance {} vs ambient {}", fmt_d(di), fmt_d(da)),
                    ),
                );
            }
        }
    }
    AxiomReport::pass(
        NAME,
        Parameters::Counts(vec![("points".into(), m as usize), ("diameter".into(), inner.diameter().unwrap_or(0))]),
    )
}

/// Eigenvalues `k > r > s` of a strongly regular graph with multiplicities `f`, `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SrgSpectrum {
    pub r: i64,
    pub s: i64,
    pub f: u64,
    pub g: u64,
}

/// Integral spectrum implied by `(v,k,λ,μ)`, or `None` when the eigenvalues
/// are irrational or the multiplicities fail to be nonnegative integers.
pub fn srg_spectrum(v: usize, k: usize, lambda: usize, mu: usize) -> Option<SrgSpectrum> {
    let (v, k, l, m) = (v as i64, k as i64, lambda as i64, mu as i64);
    let disc = (l - m) * (l - m) + 4 * (k - m);
    let root = (disc as f64).sqrt().round() as i64;
    if root * root != disc || root == 0 {
        return None;
    }
    if (l - m + root) % 2 != 0 {
        return None;
    }
    let r = (l - m + root) / 2;
    let s = (l - m - root) / 2;
    // f + g = v - 1 and k + f r + g s = 0
    let num = -(k + s * (v - 1));
    let den = r - s;
    if num % den != 0 {
        return None;
    }
    let f = num / den;
    let g = v - 1 - f;
    (f >= 0 && g >= 0).then_some(SrgSpectrum { r, s, f: f as u64, g: g as u64 })
}

const RANK_PRIME: u64 = 2_147_483_647;

/// Rank of `A - shift I` over GF(p) for a large prime p.
pub(crate) fn shifted_rank_mod_p(g: &Graph, shift: i64) -> usize {
    let n = g.n();
    let p = RANK_PRIME;
    let diag = (shift.rem_euclid(p as i64) as u64 * (p - 1)) % p;
    let mut m: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut row: Vec<u64> = (0..n).map(|j| u64::from(g.has_edge(i as u32, j as u32))).collect();
            row[i] = diag;
            row
        })
        .collect();
    let inv = |a: u64| {
        let (mut base, mut e, mut acc) = (a, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..n).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, piv);
        let scale = inv(m[rank][col]);
        for x in m[rank][col..].iter_mut() {
            *x = *x * scale % p;
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = (*x + p - factor * y % p) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Cross-checks an srg verdict against the spectrum its parameters force.
/// Always checks the counting identity and integral multiplicities; up to
/// `rank_limit` vertices it also confirms the eigenvalue multiplicities by
/// ranks of `A - rI` and `A - sI` modulo a prime.
pub fn check_srg_spectrum(g: &Graph, report: &AxiomReport, rank_limit: usize) -> AxiomReport {
    const NAME: &str = "srg-spectrum";
    let Parameters::Srg { v, k, lambda: Some(l), mu: Some(m) } = report.parameters else {
        return AxiomReport::fail(NAME, Parameters::None, Witness::new(vec![], vec![], "not a proper srg"));
    };
    let mut checks = vec![(
        "k(k-l-1)=(v-k-1)mu".to_string(),
        k * (k - l - 1),
        k * (k - l - 1) == (v - k - 1) * m,
    )];
    match srg_spectrum(v, k, l, m) {
        None => checks.push(("integral-multiplicities".into(), 0, false)),
        Some(sp) => {
            checks.push(("f".into(), sp.f as usize, true));
            checks.push(("g".into(), sp.g as usize, true));
            if v <= rank_limit {
                let rr = shifted_rank_mod_p(g, sp.r);
                let rs = shifted_rank_mod_p(g, sp.s);
                checks.push(("rank(A-rI)".into(), rr, rr == v - sp.f as usize));
                checks.push(("rank(A-sI)".into(), rs, rs == v - sp.g as usize));
            }
        }
    }
    AxiomReport::from_checks(NAME, checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::classical;

    fn cycle(n: u32) -> Graph {
        Graph::from_edges(n as usize, (0..n).map(|i| (i, (i + 1) % n)))
    }

    fn complete(n: u32) -> Graph {
        Graph::from_edges(n as usize, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    #[test]
    fn w2_is_quadrangle() {
        let w2 = classical::w2();
        let dm = DistanceMatrix::of(&w2);
        let np = check_near_polygon(&w2, &dm);
        assert!(np.passed());
        assert_eq!(np.parameters, Parameters::NearPolygon { diameter: 2, order: Some((2, 2)) });
        let reg = regular_parameters(&w2, &dm).unwrap();
        assert_eq!(reg.parameters, Parameters::Regular { s: 2, t: 2, ts: vec![] });
        let gq = check_generalized_2dgon(&w2, 2);
        assert!(gq.passed(), "{gq}");
        assert!(!check_generalized_2dgon(&w2, 3).passed());
    }

    #[test]
    fn flag_geometries_are_thin_polygons() {
        let gh21 = classical::flag_geometry(&classical::fano());
        assert!(check_generalized_2dgon(&gh21, 3).passed());
        let go21 = classical::flag_geometry(&classical::w2());
        let r = check_generalized_2dgon(&go21, 4);
        assert!(r.passed(), "{r}");
        let dm = DistanceMatrix::of(&go21);
        assert_eq!(
            regular_parameters(&go21, &dm).unwrap().parameters,
            Parameters::Regular { s: 2, t: 1, ts: vec![0, 0] }
        );
    }

    #[test]
    fn single_line_is_not_a_quadrangle() {
        let g = Geometry::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert!(!check_generalized_2dgon(&g, 2).passed());
    }

    #[test]
    fn cycle_of_lines_fails_near_polygon_with_witness() {
        // four 3-point lines closing up into a loop: corners 0,2,4,6, midpoints 1,3,5,7
        let lines = vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 6], vec![6, 7, 0]];
        let g = Geometry::new(8, lines.clone()).unwrap();
        let dm = DistanceMatrix::of(&g);
        let r = check_near_polygon(&g, &dm);
        assert!(!r.passed());
        let w = r.witness.unwrap();
        let (x, line) = (w.points[0], w.lines[0]);
        assert_eq!(dm.get(x, w.points[1]), dm.get(x, w.points[2]));
        assert!(g.line(line).contains(&w.points[1]) && g.line(line).contains(&w.points[2]));
        // removing one line leaves a tree of lines, where nearest points are unique
        let path = Geometry::new(8, lines[..3].to_vec()).unwrap();
        let dm = DistanceMatrix::of(&path);
        assert!(!check_near_polygon(&path, &dm).passed(), "point 7 is isolated");
        let path = Geometry::new(7, lines[..3].to_vec()).unwrap();
        assert!(check_near_polygon(&path, &DistanceMatrix::of(&path)).passed());
        // so does an odd cycle of 2-point lines
        let pentagon = classical::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert!(!check_near_polygon(&pentagon, &DistanceMatrix::of(&pentagon)).passed());
    }

    #[test]
    fn partial_linear_violation_reported() {
        let g = Geometry::new(3, vec![vec![0, 1, 2], vec![0, 1]]).unwrap();
        let dm = DistanceMatrix::of(&g);
        assert!(!check_near_polygon(&g, &dm).passed());
    }

    #[test]
    fn srg_examples() {
        let c5 = check_srg(&cycle(5));
        assert_eq!(c5.parameters, Parameters::Srg { v: 5, k: 2, lambda: Some(0), mu: Some(1) });
        let k4 = check_srg(&complete(4));
        assert_eq!(k4.verdict, Verdict::Complete);
        assert_eq!(k4.parameters, Parameters::Srg { v: 4, k: 3, lambda: Some(2), mu: None });
        assert!(!check_srg(&cycle(6)).passed());
        let w2 = check_srg(&Graph::collinearity(&classical::w2()));
        assert_eq!(w2.parameters, Parameters::Srg { v: 15, k: 6, lambda: Some(1), mu: Some(3) });
        let spec = check_srg_spectrum(&Graph::collinearity(&classical::w2()), &w2, 100);
        assert!(spec.passed(), "{spec}");
    }

    #[test]
    fn spectra() {
        assert_eq!(srg_spectrum(5, 2, 0, 1), None);
        assert_eq!(srg_spectrum(15, 6, 1, 3), Some(SrgSpectrum { r: 1, s: -3, f: 9, g: 5 }));
        assert_eq!(srg_spectrum(10, 3, 0, 1), Some(SrgSpectrum { r: 1, s: -2, f: 5, g: 4 }));
    }

    #[test]
    fn distance_regular_examples() {
        let w2 = check_distance_regular(&Graph::collinearity(&classical::w2())).unwrap();
        assert_eq!(w2.parameters, Parameters::IntersectionArray { b: vec![6, 4], c: vec![1, 3] });
        let k5 = check_distance_regular(&complete(5)).unwrap();
        assert_eq!(k5.parameters, Parameters::IntersectionArray { b: vec![4], c: vec![1] });
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]);
        assert!(!check_distance_regular(&path).unwrap().passed());
        let split = Graph::from_edges(4, [(0, 1), (2, 3)]);
        assert!(matches!(check_distance_regular(&split), Err(IncidenceError::Disconnected)));
    }

    #[test]
    fn isometry() {
        let w2 = classical::w2();
        let dm = DistanceMatrix::of(&w2);
        let line = w2.line(0).to_vec();
        assert!(isometric_check(&dm, &w2.induced(&line)).passed());
        let far = dm.at_distance(0, 2).next().unwrap();
        let r = isometric_check(&dm, &w2.induced(&[0, far]));
        assert!(!r.passed());
        assert_eq!(r.witness.unwrap().points, vec![0, far]);
    }
}
