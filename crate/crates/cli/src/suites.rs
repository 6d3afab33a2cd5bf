//! The report suites behind `verify <target>`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use nearoct::incidence::{
    check_generalized_2dgon, check_near_polygon, convex_closure, AxiomReport, DistanceMatrix, Geometry, Graph,
    Parameters,
};
use nearoct::octagon::{
    commuting_iff_common_quad, commuting_partner_counts, quad_environment_checks, spread_distance_check,
};
use nearoct::subgeom::{
    build_gprime, dual_embedding_check, gprime_go21_suboctagons, hj_family_checks, hj_internal_checks,
    search_thin_subgeometry, IntersectionCensus, SearchMode, Suboctagon, ThinTarget,
};
use nearoct::tower::{bonus_srgs, descend_graph, g2_4_graph, suzuki_graph, Member, TowerGraph};
use nearoct::valuations::{build_valuation_geometry, vprime_iso_check, ValType, Valuation};

use crate::cache::digest;
use crate::pipeline::Base;
use crate::CliError;

/// Opposite pairs per member re-closed in the family check.
const UNIQUENESS_SAMPLES: usize = 2;

pub struct Suite {
    pub target: &'static str,
    pub reports: Vec<AxiomReport>,
    /// Named text blocks appended to the report file.
    pub sections: Vec<(&'static str, String)>,
}

impl Suite {
    fn new(target: &'static str) -> Self {
        Suite {
            target,
            reports: Vec::new(),
            sections: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.reports.iter().all(AxiomReport::passed)
    }

    pub fn section(&self, name: &str) -> Option<&str> {
        self.sections.iter().find(|s| s.0 == name).map(|s| s.1.as_str())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "suite {} {}", self.target, if self.passed() { "PASS" } else { "FAIL" }).unwrap();
        for r in &self.reports {
            writeln!(out, "{r}").unwrap();
        }
        for (name, text) in &self.sections {
            write!(out, "\n[{name}]\n{text}").unwrap();
        }
        out
    }
}

fn counts(name: &str, checks: Vec<(&str, usize, bool)>) -> AxiomReport {
    AxiomReport::from_checks(name, checks.into_iter().map(|(k, v, ok)| (k.to_string(), v, ok)).collect())
}

pub fn near_octagon(base: &Base) -> Suite {
    let mut s = Suite::new("near-octagon");
    let g = base.oct.geometry();
    let np = check_near_polygon(g, &base.dm);
    let order_ok = np.parameters == Parameters::NearPolygon { diameter: 4, order: Some((2, 10)) };
    let spread = base.oct.spread_lines();
    s.reports.push(counts(
        "octagon-counts",
        vec![
            ("class", base.cls.len(), base.cls.len() == 4095),
            ("points", g.n_points(), g.n_points() == 4095),
            ("lines", g.n_lines(), g.n_lines() == 15015),
            ("spread", spread.len(), spread.len() * 3 == g.n_points()),
            ("diameter-4-order-(2,10)", usize::from(order_ok), order_ok),
        ],
    ));
    s.reports.push(np);
    s
}

pub fn suborbits(base: &Base) -> Suite {
    let mut s = Suite::new("suborbits");
    let mut sizes = base.diagram.sizes().to_vec();
    sizes.sort_unstable();
    let partners = commuting_partner_counts(&base.cls);
    let all_62 = partners.iter().all(|&c| c == 62);
    s.reports.push(counts(
        "suborbit-sizes",
        vec![
            ("rank", base.orbitals.rank(), base.orbitals.rank() == 8),
            ("sizes-match", sizes.iter().sum(), sizes == [1, 2, 20, 40, 320, 640, 1024, 2048]),
            ("commuting-partners", partners.first().copied().unwrap_or(0), all_62),
        ],
    ));
    s.reports.push(base.diagram.structure_checks(&base.oct, &base.orbitals));
    s.sections.push(("diagram", base.diagram.to_text()));
    s
}

pub fn quads(base: &Base) -> Suite {
    let mut s = Suite::new("quads");
    let g = base.oct.geometry();
    let gq22 = (0..base.quads.len() as u32)
        .filter(|&q| {
            let pts = base.quads.quad(q);
            let local: Vec<Vec<u32>> = base
                .quads
                .lines_of_quad(&base.oct, q)
                .iter()
                .map(|&l| g.line(l).iter().map(|p| pts.binary_search(p).unwrap_or(usize::MAX) as u32).collect())
                .collect();
            Geometry::new(pts.len(), local)
                .is_ok_and(|lg| lg.order() == Some((2, 2)) && check_generalized_2dgon(&lg, 2).passed())
        })
        .count();
    s.reports.push(counts("quads-are-gq(2,2)", vec![("quads", gq22, gq22 == base.quads.len())]));
    s.reports.push(quad_environment_checks(&base.oct, &base.dm, &base.quads));
    s.reports.push(commuting_iff_common_quad(&base.cls, &base.quads));
    s
}

fn incidence_graph(geom: &Geometry) -> Graph {
    let n = geom.n_points() as u32;
    let edges = (0..geom.n_lines() as u32).flat_map(|l| geom.line(l).iter().map(move |&p| (p, n + l)));
    Graph::from_edges(geom.n_points() + geom.n_lines(), edges)
}

pub fn hexagon(base: &Base) -> Suite {
    let mut s = Suite::new("hexagon");
    let hg = base.hex.geometry();
    let inc = incidence_graph(hg);
    let (girth, diameter) = (inc.girth().unwrap_or(0), inc.diameter().unwrap_or(0));
    s.reports.push(counts(
        "hexagon-counts",
        vec![
            ("points", hg.n_points(), hg.n_points() == 1365),
            ("lines", hg.n_lines(), hg.n_lines() == 1365),
            ("order-(4,4)", 1, hg.order() == Some((4, 4))),
            ("incidence-girth", girth, girth == 12),
            ("incidence-diameter", diameter, diameter == 6),
        ],
    ));
    s.reports.extend(base.hex.axiom_reports());
    s.reports.push(spread_distance_check(&base.oct, &base.dm, &base.hex));
    s
}

/// The thin subgeometries behind the suboctagon suite and the bonus graphs.
pub struct ThinData {
    pub gprime: Suboctagon,
    pub gprime_go21: Vec<Suboctagon>,
    pub census: IntersectionCensus,
    /// Thin octagons of order (2,1) inside the least Hall-Janko suboctagon, as octagon points.
    pub hj_go21: Vec<Vec<u32>>,
    pub hj_go21_convex: usize,
}

pub fn thin_data(base: &Base, hjs: &[Suboctagon], budget: usize) -> Result<ThinData, CliError> {
    let err = |e: nearoct::subgeom::SubgeomError| CliError::Stage {
        stage: "thin subgeometries",
        message: e.to_string(),
    };
    let hg = base.hex.geometry();
    let hdm = DistanceMatrix::of(hg);
    let gh = search_thin_subgeometry(hg, &hdm, ThinTarget::new(4, 3), SearchMode::FirstFound, budget).map_err(err)?;
    let gprime = build_gprime(&base.oct, &base.quads, &base.hex, &gh[0]).map_err(err)?;
    let (gprime_go21, census) = gprime_go21_suboctagons(base.oct.geometry(), &gprime, hjs).map_err(err)?;
    let host = &hjs[0];
    let sdm = DistanceMatrix::of(host.geometry());
    let found =
        search_thin_subgeometry(host.geometry(), &sdm, ThinTarget::new(2, 4), SearchMode::Exhaustive, budget).map_err(err)?;
    let hj_go21_convex = found
        .iter()
        .filter(|sel| convex_closure(host.geometry(), &sdm, &sel.points) == sel.points)
        .count();
    let hj_go21 = found
        .iter()
        .map(|sel| sel.points.iter().map(|&p| host.points()[p as usize]).collect())
        .collect();
    Ok(ThinData {
        gprime,
        gprime_go21,
        census,
        hj_go21,
        hj_go21_convex,
    })
}

pub fn suboctagons(base: &Base, hjs: &[Suboctagon], thin: &ThinData) -> Suite {
    let mut s = Suite::new("suboctagons");
    let ctx = base.hj_context();
    let internal: Vec<AxiomReport> = hjs.iter().map(|h| hj_internal_checks(&ctx, h)).collect();
    let internal_ok = internal.iter().filter(|r| r.passed()).count();
    let embed_ok = hjs
        .iter()
        .filter(|h| dual_embedding_check(&base.oct, &base.quads, h, &base.hex).passed())
        .count();
    let gp = thin.gprime.geometry();
    let gp_np = check_near_polygon(gp, &DistanceMatrix::of(gp));
    let gp_ok = gp_np.passed() && gp_np.parameters == Parameters::NearPolygon { diameter: 4, order: Some((2, 4)) };
    s.reports.push(counts(
        "hall-janko-family",
        vec![
            ("members", hjs.len(), hjs.len() == 416),
            ("internal-checks-passed", internal_ok, internal_ok == hjs.len()),
            ("dual-embeddings-passed", embed_ok, embed_ok == hjs.len()),
        ],
    ));
    if let Some(bad) = internal.iter().find(|r| !r.passed()) {
        s.reports.push(bad.clone());
    }
    s.reports.push(internal[0].clone());
    s.reports.push(hj_family_checks(&ctx, hjs, UNIQUENESS_SAMPLES));
    s.reports.push(counts(
        "thin-subhexagon-suboctagon",
        vec![
            ("points", gp.n_points(), gp.n_points() == 315),
            ("lines", gp.n_lines(), gp.n_lines() == 525),
            ("near-octagon-(2,4)", usize::from(gp_ok), gp_ok),
            ("thin-octagons-inside", thin.gprime_go21.len(), thin.gprime_go21.len() == 56),
            ("thin-octagons-in-one-hall-janko", thin.hj_go21.len(), thin.hj_go21.len() == 280),
        ],
    ));
    let mut census = String::new();
    for (size, c) in &thin.census.by_size {
        writeln!(census, "meet {size}: {c}").unwrap();
    }
    writeln!(census, "geodetically closed thin octagons in one hall-janko: {}", thin.hj_go21_convex).unwrap();
    s.sections.push(("intersections", census));
    s
}

pub const GRAPH_NAMES: [&str; 8] = [
    "g2-4-graph",
    "suzuki-graph",
    "hall-janko-graph",
    "u3-3-graph",
    "co-heawood-graph",
    "thin-octagons-hj-graph",
    "thin-octagons-gprime-graph",
    "thin-octagons-extended-graph",
];

/// The tower and the three graphs on thin octagons, with their text exports.
pub type Exports = Vec<(&'static str, String)>;

pub fn tower(base: &Base, hjs: &[Suboctagon], thin: &ThinData) -> Result<(Suite, Exports), CliError> {
    let err = |e: nearoct::tower::TowerError| CliError::Stage {
        stage: "tower",
        message: e.to_string(),
    };
    let geom = base.oct.geometry();
    let g24 = g2_4_graph(geom, hjs).map_err(err)?;
    let (suz, _) = suzuki_graph(&base.oct, &base.dm, hjs, &g24);
    let family: Vec<Member> = hjs.iter().map(Member::from_suboctagon).collect();
    let (f2, l2) = descend_graph(2, geom, &family, &g24.graph, 0).map_err(err)?;
    let (f1, l1) = descend_graph(1, geom, &f2, &l2.graph, 0).map_err(err)?;
    let (_, l0) = descend_graph(0, geom, &f1, &l1.graph, 0).map_err(err)?;
    let bonus = bonus_srgs(&base.oct, &base.dm, &thin.hj_go21, &thin.gprime, &thin.gprime_go21);

    let expected: [Option<(usize, usize, usize, usize)>; 8] = [
        Some((416, 100, 36, 20)),
        Some((1782, 416, 100, 96)),
        Some((100, 36, 14, 12)),
        Some((36, 14, 4, 6)),
        None,
        Some((280, 36, 8, 4)),
        Some((56, 10, 0, 2)),
        Some((162, 56, 10, 24)),
    ];
    let graphs: [&TowerGraph; 8] = [&g24, &suz, &l2, &l1, &l0, &bonus.hj_go21, &bonus.gprime_go21, &bonus.extended];
    let mut s = Suite::new("tower");
    let mut params = String::new();
    let mut exports = Vec::new();
    for ((name, tg), want) in GRAPH_NAMES.iter().zip(graphs).zip(expected) {
        let text = tg.graph.to_text();
        let first = &tg.reports[0];
        writeln!(params, "{name} {} {}", first.parameters, digest(text.as_bytes())).unwrap();
        s.reports.extend(tg.reports.iter().cloned());
        if let Some((v, k, l, m)) = want {
            let ok = first.parameters == Parameters::Srg { v, k, lambda: Some(l), mu: Some(m) };
            s.reports.push(counts(&format!("{name}-parameters"), vec![("expected", 1, ok)]));
        }
        exports.push((*name, text));
    }
    let meets = |tg: &TowerGraph| tg.meet_sizes().keys().copied().collect::<Vec<_>>();
    let (m280, m56) = (meets(&bonus.hj_go21), meets(&bonus.gprime_go21));
    s.reports.push(counts(
        "thin-octagon-meets",
        vec![("hj-sizes-5-15", m280.len(), m280 == [5, 15]), ("gprime-sizes-5-9", m56.len(), m56 == [5, 9])],
    ));
    s.sections.push(("parameters", params));
    let mut shapes = String::new();
    for (name, tg) in [("g2-4-graph", &g24), ("hall-janko-graph", &l2), ("u3-3-graph", &l1), ("co-heawood-graph", &l0)] {
        writeln!(shapes, "{name} adjacent {:?} non-adjacent {:?}", tg.adjacent_shapes, tg.non_adjacent_shapes).unwrap();
    }
    s.sections.push(("meet-shapes", shapes));
    Ok((s, exports))
}

fn table1_text(vals: &[Valuation]) -> String {
    let mut rows: BTreeMap<ValType, (usize, u8, Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for v in vals {
        let row = rows.entry(v.vtype()).or_default();
        row.0 += 1;
        row.1 = row.1.max(v.max_value());
        let z = v.zero_set().len();
        if !row.2.contains(&z) {
            row.2.push(z);
        }
        let d = v.distribution();
        if row.3.is_empty() {
            row.3 = d;
        } else if row.3 != d {
            row.3.clear();
        }
    }
    let join = |xs: &[usize]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let mut out = String::new();
    for (t, (count, max, zeros, dist)) in rows {
        let dist = if dist.is_empty() { "mixed".to_string() } else { join(&dist[..5]) };
        writeln!(out, "{t} count={count} max={max} zeros={} distribution={dist}", join(&zeros)).unwrap();
    }
    writeln!(out, "total {}", vals.len()).unwrap();
    out
}

pub fn valuations(base: &Base, host: &Suboctagon, vals: &[Valuation]) -> Result<Suite, CliError> {
    let mut s = Suite::new("valuations");
    let mut per_type = [0usize; 5];
    for v in vals {
        per_type[v.vtype().index()] += 1;
    }
    let capped = vals.iter().all(|v| v.max_value() <= 4);
    s.reports.push(counts(
        "valuation-census",
        vec![
            ("total", vals.len(), vals.len() == 7119),
            ("A", per_type[0], per_type[0] == 315),
            ("B", per_type[1], per_type[1] == 630),
            ("C", per_type[2], per_type[2] == 3150),
            ("D", per_type[3], per_type[3] == 1008),
            ("E", per_type[4], per_type[4] == 2016),
            ("largest-value-at-most-4", usize::from(capped), capped),
        ],
    ));
    s.sections.push(("table1", table1_text(vals)));
    let vg = build_valuation_geometry(host.geometry(), vals).map_err(|e| CliError::Stage {
        stage: "valuations",
        message: e.to_string(),
    })?;
    s.reports.push(vg.table2_report());
    s.reports.push(counts(
        "valuation-geometry",
        vec![
            ("lines", vg.geometry.n_lines(), true),
            ("ambiguous-shifts", vg.ambiguous_pairs, vg.ambiguous_pairs == 0),
        ],
    ));
    s.reports.push(vprime_iso_check(&base.oct, &base.dm, host, vals, &vg));
    s.sections.push(("table2", vg.table2_text()));
    Ok(s)
}
