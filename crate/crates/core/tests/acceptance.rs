//! End-to-end acceptance run on the vendored generators: one PASS/FAIL line
//! per criterion, nonzero exit status if any criterion fails.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::process::ExitCode;
use std::time::Instant;

use nearoct::group::{conjugation_orbit, find_central_involution, pair_orbitals, GeneratorSet};
use nearoct::incidence::{
    check_generalized_2dgon, check_near_polygon, check_srg, convex_closure, AxiomReport, DistanceMatrix, Geometry,
    Graph, Parameters, Verdict,
};
use nearoct::octagon::{
    build_octagon, build_spread_hexagon, commuting_iff_common_quad, commuting_partner_counts, enumerate_quads,
    quad_environment_checks, spread_distance_check, suborbit_diagram,
};
use nearoct::subgeom::{
    build_gprime, dual_embedding_check, enumerate_hj_suboctagons, gprime_go21_suboctagons, hj_family_checks,
    hj_internal_checks, search_thin_subgeometry, HjContext, SearchMode, ThinTarget,
};
use nearoct::tower::{bonus_srgs, descend_graph, g2_4_graph, suzuki_graph, Member, TowerGraph};
use nearoct::valuations::{
    build_valuation_geometry, enumerate_valuations, is_valuation, neighboring_epsilon, neighboring_epsilons,
    star_product, vprime_iso_check, ValType, TABLE1,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GENERATORS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/g2_4_2_deg416.gens");
const SEED: u64 = 0;
const WORD_BUDGET: usize = 10_000;
const THIN_BUDGET: usize = 1_000_000;
const HJ_THIN_BUDGET: usize = 10_000_000;
const PRODUCT_SAMPLES: usize = 10_000;

type Checks = Vec<(String, bool)>;

fn report(r: &AxiomReport) -> (String, bool) {
    (r.to_string(), r.passed())
}

fn fact(name: impl Into<String>, ok: bool) -> (String, bool) {
    (name.into(), ok)
}

fn srg_is(tg: &TowerGraph, v: usize, k: usize, l: usize, m: usize) -> (String, bool) {
    let want = Parameters::Srg { v, k, lambda: Some(l), mu: Some(m) };
    let ok = tg.passed() && tg.srg_report().parameters == want;
    (format!("srg({v},{k},{l},{m}) observed {}", tg.srg_report().parameters), ok)
}

struct Tally {
    start: Instant,
    failed: Vec<usize>,
}

impl Tally {
    fn record(&mut self, id: usize, title: &str, checks: Checks) {
        let ok = checks.iter().all(|c| c.1);
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {id:>2}: {title} [{:.1?}]", self.start.elapsed());
        for (name, good) in &checks {
            if !good {
                println!("     failed: {name}");
            }
        }
        if !ok {
            self.failed.push(id);
        }
    }
}

/// `(k, lambda, mu)` computed straight from adjacency, `None` if not strongly regular.
fn srg_oracle(g: &Graph) -> Option<(usize, Option<usize>, Option<usize>)> {
    let n = g.n() as u32;
    let k = g.neighbors(0).count();
    let (mut lambda, mut mu) = (None, None);
    for a in 0..n {
        if g.neighbors(a).count() != k {
            return None;
        }
        for b in a + 1..n {
            let c = (0..n).filter(|&z| g.has_edge(a, z) && g.has_edge(b, z)).count();
            let slot = if g.has_edge(a, b) { &mut lambda } else { &mut mu };
            if slot.is_some_and(|s| s != c) {
                return None;
            }
            *slot = Some(c);
        }
    }
    Some((k, lambda, mu))
}

fn oracle_agrees(g: &Graph) -> bool {
    let r = check_srg(g);
    match srg_oracle(g) {
        None => r.verdict == Verdict::Fail,
        Some((k, lambda, mu)) => r.passed() && r.parameters == Parameters::Srg { v: g.n(), k, lambda, mu },
    }
}

fn incidence_graph(geom: &Geometry) -> Graph {
    let n = geom.n_points() as u32;
    let edges = (0..geom.n_lines() as u32).flat_map(|l| geom.line(l).iter().map(move |&p| (p, n + l)));
    Graph::from_edges(geom.n_points() + geom.n_lines(), edges)
}

fn main() -> ExitCode {
    let mut t = Tally {
        start: Instant::now(),
        failed: Vec::new(),
    };

    let gens = GeneratorSet::load(GENERATORS).expect("vendored generators load");
    let x = find_central_involution(&gens, WORD_BUDGET, SEED).expect("central involution found");
    let cls = conjugation_orbit(&x, &gens).expect("class computed");
    let orbitals = pair_orbitals(&cls);
    let (oct, _) = build_octagon(&cls, &orbitals).expect("octagon built");
    let geom = oct.geometry();
    let dm = DistanceMatrix::of(geom);
    let np = check_near_polygon(geom, &dm);
    t.record(
        1,
        "near octagon with 4095 points, 15015 lines, order (2,10), diameter 4",
        vec![
            fact(format!("class size {}", cls.len()), cls.len() == 4095),
            fact(format!("points {}", geom.n_points()), geom.n_points() == 4095),
            fact(format!("lines {}", geom.n_lines()), geom.n_lines() == 15015),
            report(&np),
            fact(
                format!("parameters {}", np.parameters),
                np.parameters == Parameters::NearPolygon { diameter: 4, order: Some((2, 10)) },
            ),
        ],
    );

    let diagram = suborbit_diagram(&oct, &orbitals, &dm, 0).expect("suborbit diagram");
    let spread = oct.spread_lines();
    let covered: BTreeSet<u32> = spread.iter().flat_map(|&l| geom.line(l).iter().copied()).collect();
    let mut sizes = diagram.sizes().to_vec();
    sizes.sort_unstable();
    let partners = commuting_partner_counts(&cls);
    t.record(
        2,
        "spread of 1365 lines, suborbits 1/2/20/40/320/640/1024/2048, 62 commuting partners",
        vec![
            fact(format!("spread lines {}", spread.len()), spread.len() == 1365),
            fact("spread partitions the points", covered.len() == 4095 && spread.len() * 3 == 4095),
            fact(format!("suborbit sizes {sizes:?}"), sizes == [1, 2, 20, 40, 320, 640, 1024, 2048]),
            fact("62 commuting partners everywhere", partners.iter().all(|&c| c == 62)),
            report(&diagram.structure_checks(&oct, &orbitals)),
        ],
    );

    let quads = enumerate_quads(&oct, &dm, &orbitals, &diagram).expect("quads");
    let gq22 = (0..quads.len() as u32)
        .filter(|&q| {
            let lines = quads.lines_of_quad(&oct, q);
            let g = Geometry::new(
                geom.n_points(),
                lines.iter().map(|&l| geom.line(l).to_vec()).collect(),
            )
            .expect("quad lines");
            let local = g.induced(quads.quad(q)).geometry;
            local.order() == Some((2, 2)) && check_generalized_2dgon(&local, 2).passed()
        })
        .count();
    t.record(
        3,
        "1365 quads of order (2,2), layers 15/240/3840, all point-quad pairs classical",
        vec![
            fact(format!("quads {}", quads.len()), quads.len() == 1365),
            fact(format!("quads that are GQ(2,2): {gq22}"), gq22 == 1365),
            report(&quad_environment_checks(&oct, &dm, &quads)),
            report(&commuting_iff_common_quad(&cls, &quads)),
        ],
    );

    let hex = build_spread_hexagon(&oct, &quads).expect("spread hexagon");
    let hg = hex.geometry();
    let inc = incidence_graph(hg);
    let mut c4 = vec![
        fact(format!("hexagon points {} lines {}", hg.n_points(), hg.n_lines()), hg.n_points() == 1365 && hg.n_lines() == 1365),
        fact(format!("order {:?}", hg.order()), hg.order() == Some((4, 4))),
        fact(format!("incidence girth {:?}", inc.girth()), inc.girth() == Some(12)),
        fact(format!("incidence diameter {:?}", inc.diameter()), inc.diameter() == Some(6)),
        report(&spread_distance_check(&oct, &dm, &hex)),
    ];
    c4.extend(hex.axiom_reports().iter().map(report));
    t.record(4, "spread hexagon of order (4,4) with its distance laws", c4);

    let ctx = HjContext {
        oct: &oct,
        dm: &dm,
        orbitals: &orbitals,
        diagram: &diagram,
        quads: &quads,
    };
    let hjs = enumerate_hj_suboctagons(&ctx).expect("Hall-Janko suboctagons");
    let internal_bad: Vec<usize> = (0..hjs.len()).filter(|&i| !hj_internal_checks(&ctx, &hjs[i]).passed()).collect();
    let embed_bad: Vec<usize> = (0..hjs.len())
        .filter(|&i| !dual_embedding_check(&oct, &quads, &hjs[i], &hex).passed())
        .collect();
    let mut c5 = vec![
        fact(format!("suboctagons {}", hjs.len()), hjs.len() == 416),
        fact(format!("internal checks failing: {internal_bad:?}"), internal_bad.is_empty()),
        fact(format!("dual embeddings failing: {embed_bad:?}"), embed_bad.is_empty()),
        report(&hj_family_checks(&ctx, &hjs, 2)),
    ];
    if !internal_bad.is_empty() {
        c5.push(report(&hj_internal_checks(&ctx, &hjs[internal_bad[0]])));
    }
    t.record(
        5,
        "416 Hall-Janko suboctagons: 315 points, 525 lines, regular (2,4;0,3), isometric, projections 315*12+315",
        c5,
    );

    let hdm = DistanceMatrix::of(hg);
    let gh41 = search_thin_subgeometry(hg, &hdm, ThinTarget::new(4, 3), SearchMode::FirstFound, THIN_BUDGET);
    let gprime = gh41
        .as_ref()
        .ok()
        .and_then(|found| found.first())
        .map(|sel| build_gprime(&oct, &quads, &hex, sel));
    let mut c6 = vec![fact(format!("thin subhexagon within budget {THIN_BUDGET}"), matches!(&gh41, Ok(v) if !v.is_empty()))];
    match &gprime {
        Some(Ok(gp)) => {
            let g = gp.geometry();
            let r = check_near_polygon(g, &DistanceMatrix::of(g));
            c6.push(fact(format!("points {} lines {}", g.n_points(), g.n_lines()), g.n_points() == 315 && g.n_lines() == 525));
            c6.push(fact(
                format!("parameters {}", r.parameters),
                r.passed() && r.parameters == Parameters::NearPolygon { diameter: 4, order: Some((2, 4)) },
            ));
        }
        Some(Err(e)) => c6.push(fact(e.to_string(), false)),
        None => c6.push(fact("no suboctagon built", false)),
    }
    t.record(6, "suboctagon from a thin subhexagon: 315 points, 525 lines, order (2,4)", c6);

    let family: Vec<Member> = hjs.iter().map(Member::from_suboctagon).collect();
    let mut c7 = Checks::new();
    let mut small_graphs = Vec::new();
    match g2_4_graph(geom, &hjs) {
        Ok(g24) => {
            c7.push(srg_is(&g24, 416, 100, 36, 20));
            let (suz, _) = suzuki_graph(&oct, &dm, &hjs, &g24);
            c7.push(srg_is(&suz, 1782, 416, 100, 96));
            let descent = descend_graph(2, geom, &family, &g24.graph, 0).and_then(|(f2, l2)| {
                let (f1, l1) = descend_graph(1, geom, &f2, &l2.graph, 0)?;
                let (_, l0) = descend_graph(0, geom, &f1, &l1.graph, 0)?;
                Ok((l2, l1, l0))
            });
            match descent {
                Ok((l2, l1, l0)) => {
                    c7.push(srg_is(&l2, 100, 36, 14, 12));
                    c7.push(srg_is(&l1, 36, 14, 4, 6));
                    c7.extend(l0.reports.iter().map(report));
                    c7.push(fact(
                        format!("bottom graph: {} vertices, girth {:?}", l0.graph.n(), l0.graph.girth()),
                        l0.graph.n() == 14 && l0.graph.is_bipartite(),
                    ));
                    // a 4-regular bipartite graph of girth 6 needs 2(k^2 - k + 1) vertices
                    let moore = 2 * (4 * 4 - 4 + 1);
                    c7.push(fact(format!("girth 6 would need {moore} > 14 vertices"), moore > l0.graph.n()));
                    small_graphs.push(l1.graph);
                    small_graphs.push(l0.graph);
                }
                Err(e) => c7.push(fact(e.to_string(), false)),
            }
        }
        Err(e) => c7.push(fact(e.to_string(), false)),
    }
    t.record(
        7,
        "tower srg(416,100,36,20), srg(1782,416,100,96), srg(100,36,14,12), srg(36,14,4,6), co-Heawood",
        c7,
    );

    let host = &hjs[0];
    let sdm = DistanceMatrix::of(host.geometry());
    let mut c8 = Checks::new();
    let hj_go21 = search_thin_subgeometry(host.geometry(), &sdm, ThinTarget::new(2, 4), SearchMode::Exhaustive, HJ_THIN_BUDGET);
    match (&hj_go21, &gprime) {
        (Ok(found), Some(Ok(gp))) => {
            let hj_sets: Vec<Vec<u32>> = found
                .iter()
                .map(|s| s.points.iter().map(|&p| host.points()[p as usize]).collect())
                .collect();
            match gprime_go21_suboctagons(geom, gp, &hjs) {
                Ok((gp_go21, _)) => {
                    let b = bonus_srgs(&oct, &dm, &hj_sets, gp, &gp_go21);
                    let keys = |tg: &TowerGraph| tg.meet_sizes().keys().copied().collect::<Vec<_>>();
                    c8.push(srg_is(&b.hj_go21, 280, 36, 8, 4));
                    c8.push(fact(format!("meets {:?}", keys(&b.hj_go21)), keys(&b.hj_go21) == [5, 15]));
                    c8.push(srg_is(&b.gprime_go21, 56, 10, 0, 2));
                    c8.push(fact(format!("meets {:?}", keys(&b.gprime_go21)), keys(&b.gprime_go21) == [5, 9]));
                    c8.push(srg_is(&b.extended, 162, 56, 10, 24));
                }
                Err(e) => c8.push(fact(e.to_string(), false)),
            }
        }
        (Err(e), _) => c8.push(fact(e.to_string(), false)),
        _ => c8.push(fact("no suboctagon from a thin subhexagon", false)),
    }
    t.record(8, "srg(280,36,8,4), srg(56,10,0,2), srg(162,56,10,24)", c8);

    let mut c9 = Checks::new();
    let vals = enumerate_valuations(host.geometry());
    match &vals {
        Ok(vals) => {
            let mut per_type: BTreeMap<ValType, usize> = BTreeMap::new();
            let mut rows_ok = true;
            for v in vals {
                *per_type.entry(v.vtype()).or_insert(0) += 1;
                let row = TABLE1.iter().find(|r| r.0 == v.vtype()).expect("known type");
                rows_ok &= v.max_value() == row.2 && v.zero_set().len() == row.3 && v.distribution()[..5] == row.4;
            }
            let census: Vec<usize> = per_type.values().copied().collect();
            let valid = vals.iter().all(|v| is_valuation(host.geometry(), v.values()).is_ok_and(|r| r.passed()));
            c9.push(fact(format!("valuations {}", vals.len()), vals.len() == 7119));
            c9.push(fact(format!("type census {census:?}"), census == [315, 630, 3150, 1008, 2016]));
            c9.push(fact("every row of the distribution table", rows_ok));
            c9.push(fact("no value above 4", vals.iter().all(|v| v.max_value() <= 4)));
            c9.push(fact("every vector satisfies the axioms", valid));
            match build_valuation_geometry(host.geometry(), vals) {
                Ok(vg) => {
                    c9.push(report(&vg.table2_report()));
                    c9.push(fact(format!("ambiguous shifts {}", vg.ambiguous_pairs), vg.ambiguous_pairs == 0));
                    c9.push(report(&vprime_iso_check(&oct, &dm, host, vals, &vg)));
                }
                Err(e) => c9.push(fact(e.to_string(), false)),
            }
        }
        Err(e) => c9.push(fact(e.to_string(), false)),
    }
    t.record(9, "7119 valuations, both census tables, isomorphism onto the A/B/C subgeometry", c9);

    let mut c10 = Checks::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    if let Ok(vals) = &vals {
        let index: HashSet<&[u8]> = vals.iter().map(|v| v.values()).collect();
        let hjg = host.geometry();
        let (mut pairs, mut law_failures, mut draws) = (0usize, 0usize, 0usize);
        while pairs < PRODUCT_SAMPLES && draws < 100_000_000 {
            draws += 1;
            let (f1, f2) = (vals[rng.gen_range(0..vals.len())].values(), vals[rng.gen_range(0..vals.len())].values());
            if f1 == f2 || neighboring_epsilon(f1, f2).is_none() {
                continue;
            }
            pairs += 1;
            let ok = neighboring_epsilons(f1, f2).len() == 1
                && star_product(hjg, f1, f2).is_ok_and(|f3| {
                    index.contains(f3.as_slice())
                        && f3 != f1
                        && f3 != f2
                        && star_product(hjg, f2, f1).is_ok_and(|g| g == f3)
                        && star_product(hjg, f1, &f3).is_ok_and(|g| g == f2)
                        && star_product(hjg, f2, &f3).is_ok_and(|g| g == f1)
                });
            law_failures += usize::from(!ok);
        }
        c10.push(fact(format!("product laws on {pairs} sampled neighbouring pairs"), pairs == PRODUCT_SAMPLES));
        c10.push(fact(format!("pairs breaking a law: {law_failures}"), law_failures == 0));
    } else {
        c10.push(fact("no valuations to sample", false));
    }
    let mut closure_failures = 0;
    for _ in 0..200 {
        let k = rng.gen_range(1..=3);
        let seed: Vec<u32> = (0..k).map(|_| rng.gen_range(0..315)).collect();
        let c = convex_closure(host.geometry(), &sdm, &seed);
        let stable = convex_closure(host.geometry(), &sdm, &c) == c;
        if !stable || !seed.iter().all(|p| c.binary_search(p).is_ok()) {
            closure_failures += 1;
        }
    }
    c10.push(fact(format!("closure idempotence failures in 200 draws: {closure_failures}"), closure_failures == 0));
    let mut oracle_failures = 0;
    for _ in 0..300 {
        let n = rng.gen_range(1..=50u32);
        let p: f64 = rng.gen();
        let edges: Vec<(u32, u32)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|_| rng.gen::<f64>() < p)
            .collect();
        oracle_failures += usize::from(!oracle_agrees(&Graph::from_edges(n as usize, edges)));
    }
    for g in &small_graphs {
        oracle_failures += usize::from(!oracle_agrees(g));
    }
    c10.push(fact(
        format!("srg checker disagreeing with the oracle on {} graphs: {oracle_failures}", 300 + small_graphs.len()),
        oracle_failures == 0,
    ));
    t.record(10, "product laws, closure idempotence, srg checker against a brute-force oracle", c10);

    println!("total {:.1?}", t.start.elapsed());
    if t.failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failing criteria: {:?}", t.failed);
        ExitCode::FAILURE
    }
}
