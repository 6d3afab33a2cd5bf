use std::collections::BTreeSet;

use super::Suboctagon;
use crate::incidence::AxiomReport;
use crate::octagon::{Octagon, QuadSet, SpreadHexagon};

/// The maps `x -> L_x` (point to its spread line) and `L -> Q_L` (line to
/// its unique quad) send the suboctagon injectively into the spread hexagon,
/// keep incidence, cover all five hexagon lines through each image point, and
/// `Q_L` meets the suboctagon exactly in `L`.
pub fn dual_embedding_check(oct: &Octagon, quads: &QuadSet, sub: &Suboctagon, hex: &SpreadHexagon) -> AxiomReport {
    let geom = oct.geometry();
    let hg = hex.geometry();
    let mut hex_line_of_quad = vec![u32::MAX; quads.len()];
    for l in 0..hg.n_lines() as u32 {
        hex_line_of_quad[hex.quad(l) as usize] = l;
    }
    let point_image = |x: u32| hex.point_of(oct.spread_line_of(x));
    let line_image = |l: u32| match quads.quads_of_line(l) {
        [q] => Some(*q),
        _ => None,
    };

    let images: BTreeSet<Option<u32>> = sub.points().iter().map(|&x| point_image(x)).collect();
    let distinct_points = if images.contains(&None) { 0 } else { images.len() };
    let line_images: Vec<Option<u32>> = sub.ambient_lines().iter().map(|&l| line_image(l)).collect();
    let distinct_quads = line_images.iter().flatten().collect::<BTreeSet<_>>().len();

    let mut meets_in_line = 0;
    let mut incident = 0;
    for (&l, q) in sub.ambient_lines().iter().zip(&line_images) {
        let Some(q) = *q else { continue };
        if quads.quad(q).iter().filter(|&&p| sub.contains(p)).count() == geom.line(l).len() {
            meets_in_line += 1;
        }
        let hl = hex_line_of_quad[q as usize];
        if geom
            .line(l)
            .iter()
            .all(|&x| point_image(x).is_some_and(|hp| hg.line(hl).contains(&hp)))
        {
            incident += 1;
        }
    }

    let mut full_at = 0;
    for &x in sub.points() {
        let mut from_lines: Vec<u32> = geom
            .lines_through(x)
            .iter()
            .filter(|l| sub.ambient_lines().binary_search(l).is_ok())
            .filter_map(|&l| line_image(l))
            .collect();
        from_lines.sort_unstable();
        let mut through_spread = quads.quads_of_line(oct.spread_line_of(x)).to_vec();
        through_spread.sort_unstable();
        if from_lines == through_spread {
            full_at += 1;
        }
    }

    let np = sub.points().len();
    let nl = sub.ambient_lines().len();
    AxiomReport::from_checks(
        "dual-embedding",
        vec![
            ("distinct-spread-lines".into(), distinct_points, distinct_points == np),
            ("distinct-quads".into(), distinct_quads, distinct_quads == nl),
            ("quad-meets-in-line".into(), meets_in_line, meets_in_line == nl),
            ("incidences-kept".into(), incident, incident == nl),
            ("points-with-all-five-quads".into(), full_at, full_at == np),
        ],
    )
}
