use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;

use super::{induced_valuation, neighboring_epsilon, neighboring_epsilons, star_product, ValType, Valuation, ValuationError};
use crate::incidence::{check_near_polygon, AxiomReport, DistanceMatrix, Geometry, Parameters};
use crate::octagon::Octagon;
use crate::subgeom::Suboctagon;

/// Line types with the number of such lines through a point of each type.
pub const TABLE2: [(&str, [usize; 5]); 10] = [
    ("AAA", [5, 0, 0, 0, 0]),
    ("ABB", [1, 1, 0, 0, 0]),
    ("ACC", [5, 0, 1, 0, 0]),
    ("BBB", [0, 5, 0, 0, 0]),
    ("BBC", [0, 10, 1, 0, 0]),
    ("CCC", [0, 0, 9, 0, 0]),
    ("CDD", [0, 0, 4, 25, 0]),
    ("DDD", [0, 0, 0, 6, 0]),
    ("DEE", [0, 0, 0, 1, 1]),
    ("EEE", [0, 0, 0, 0, 6]),
];

/// Line types kept in the subgeometry on the valuations of types A, B, C.
pub const VPRIME_LINE_TYPES: [&str; 5] = ["AAA", "ABB", "ACC", "BBC", "CCC"];

/// Valuations as points, triples `{f1, f2, f1 * f2}` as lines.
#[derive(Clone, Debug)]
pub struct ValuationGeometry {
    pub geometry: Geometry,
    pub line_types: Vec<String>,
    /// Distinct neighbouring pairs admitting more than one shift.
    pub ambiguous_pairs: usize,
    /// Per point type and line type, the set of observed per-point counts.
    pub census: BTreeMap<(ValType, String), BTreeSet<usize>>,
}

impl ValuationGeometry {
    /// Lines of each type.
    pub fn type_counts(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for t in &self.line_types {
            *out.entry(t.clone()).or_insert(0) += 1;
        }
        out
    }

    /// Compares the per-point line counts with the table.
    pub fn table2_report(&self) -> AxiomReport {
        let mut checks = Vec::new();
        let observed: BTreeSet<&str> = self.line_types.iter().map(String::as_str).collect();
        let expected: BTreeSet<&str> = TABLE2.iter().map(|r| r.0).collect();
        checks.push(("line-types".to_string(), observed.len(), observed == expected));
        for (lt, row) in TABLE2 {
            for t in ValType::ALL {
                let want = row[t.index()];
                let seen = self.census.get(&(t, lt.to_string()));
                let ok = match seen {
                    Some(s) => s.len() == 1 && s.contains(&want),
                    None => want == 0,
                };
                if want > 0 || !ok {
                    checks.push((format!("{lt}@{t}"), want, ok));
                }
            }
        }
        AxiomReport::from_checks("valuation-lines", checks)
    }

    /// One line per type with per-point counts, in table order.
    pub fn table2_text(&self) -> String {
        let mut out = String::new();
        let counts = self.type_counts();
        for (lt, _) in TABLE2 {
            write!(out, "{lt} lines={}", counts.get(lt).copied().unwrap_or(0)).unwrap();
            for t in ValType::ALL {
                let c = self
                    .census
                    .get(&(t, lt.to_string()))
                    .and_then(|s| s.iter().next().copied())
                    .unwrap_or(0);
                write!(out, " {t}={c}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

fn type_word(vals: &[Valuation], line: &[u32]) -> String {
    let mut letters: Vec<char> = line.iter().map(|&i| vals[i as usize].vtype().letter()).collect();
    letters.sort_unstable();
    letters.into_iter().collect()
}

/// Finds all neighbouring pairs, forms their products and checks the
/// per-point line census against the table.
pub fn build_valuation_geometry(hj: &Geometry, vals: &[Valuation]) -> Result<ValuationGeometry, ValuationError> {
    let index: HashMap<&[u8], u32> = vals.iter().enumerate().map(|(i, v)| (v.values(), i as u32)).collect();
    let per_row: Vec<(Vec<[u32; 3]>, usize)> = (0..vals.len())
        .into_par_iter()
        .map(|i| {
            let mut lines = Vec::new();
            let mut ambiguous = 0;
            let f1 = vals[i].values();
            for (j, v2) in vals.iter().enumerate().skip(i + 1) {
                let f2 = v2.values();
                if neighboring_epsilon(f1, f2).is_none() {
                    continue;
                }
                if neighboring_epsilons(f1, f2).len() != 1 {
                    ambiguous += 1;
                }
                let f3 = star_product(hj, f1, f2)?;
                let k = *index
                    .get(f3.as_slice())
                    .ok_or_else(|| ValuationError::NotAValuation("product outside the list".into()))?;
                let mut t = [i as u32, j as u32, k];
                t.sort_unstable();
                if t[0] == t[1] || t[1] == t[2] {
                    return Err(ValuationError::NotAValuation(format!("product of {i} and {j} repeats a factor")));
                }
                lines.push(t);
            }
            Ok((lines, ambiguous))
        })
        .collect::<Result<_, ValuationError>>()?;
    let ambiguous_pairs = per_row.iter().map(|r| r.1).sum();
    let triples: BTreeSet<[u32; 3]> = per_row.into_iter().flat_map(|r| r.0).collect();
    let geometry = Geometry::new(vals.len(), triples.into_iter().map(|t| t.to_vec()).collect())
        .map_err(|e| ValuationError::NotAValuation(e.to_string()))?;
    let line_types: Vec<String> = geometry.lines().map(|l| type_word(vals, l)).collect();
    let mut census: BTreeMap<(ValType, String), BTreeSet<usize>> = BTreeMap::new();
    for p in 0..vals.len() as u32 {
        let mut here: BTreeMap<&str, usize> = TABLE2.iter().map(|r| (r.0, 0)).collect();
        for &l in geometry.lines_through(p) {
            *here.entry(line_types[l as usize].as_str()).or_insert(0) += 1;
        }
        for (lt, c) in here {
            census.entry((vals[p as usize].vtype(), lt.to_string())).or_default().insert(c);
        }
    }
    let vg = ValuationGeometry {
        geometry,
        line_types,
        ambiguous_pairs,
        census,
    };
    let report = vg.table2_report();
    if !report.passed() {
        return Err(ValuationError::TableMismatch(report.to_string()));
    }
    Ok(vg)
}

/// The map `x -> f_x` is a bijection from the octagon points onto the
/// valuations of types A, B, C; every octagon line goes to a valuation line
/// of one of the five kept types, and all 15015 such lines are hit.
pub fn vprime_iso_check(
    oct: &Octagon,
    dm: &DistanceMatrix,
    sub: &Suboctagon,
    vals: &[Valuation],
    vgeom: &ValuationGeometry,
) -> AxiomReport {
    let geom = oct.geometry();
    let index: HashMap<&[u8], u32> = vals.iter().enumerate().map(|(i, v)| (v.values(), i as u32)).collect();
    let induced: Vec<Option<u32>> = (0..geom.n_points() as u32)
        .map(|x| {
            induced_valuation(dm, sub, x)
                .ok()
                .and_then(|f| index.get(f.values()).copied())
        })
        .collect();
    let valid = induced.iter().filter(|i| i.is_some()).count();
    let distinct: BTreeSet<u32> = induced.iter().flatten().copied().collect();
    let mut per_type = [0usize; 5];
    for &i in &distinct {
        per_type[vals[i as usize].vtype().index()] += 1;
    }
    let abc: BTreeSet<u32> = (0..vals.len() as u32)
        .filter(|&i| matches!(vals[i as usize].vtype(), ValType::A | ValType::B | ValType::C))
        .collect();

    let mut lines_ok = 0;
    let mut images = BTreeSet::new();
    for line in geom.lines() {
        let mut t: Vec<u32> = line.iter().filter_map(|&p| induced[p as usize]).collect();
        t.sort_unstable();
        if let Some(l) = vgeom.geometry.find_line(&t) {
            if VPRIME_LINE_TYPES.contains(&vgeom.line_types[l as usize].as_str()) {
                lines_ok += 1;
                images.insert(l);
            }
        }
    }
    let kept_lines: Vec<Vec<u32>> = (0..vgeom.geometry.n_lines() as u32)
        .filter(|&l| VPRIME_LINE_TYPES.contains(&vgeom.line_types[l as usize].as_str()))
        .map(|l| vgeom.geometry.line(l).to_vec())
        .collect();
    let kept = kept_lines.len();
    let identity = 315 * 5 / 3 + 315 + 315 * 5 + 3150 + 3150 * 9 / 3;

    // the kept subgeometry relabelled on its own points
    let old: Vec<u32> = abc.iter().copied().collect();
    let mut new_of_old = vec![u32::MAX; vals.len()];
    for (i, &o) in old.iter().enumerate() {
        new_of_old[o as usize] = i as u32;
    }
    let local: Vec<Vec<u32>> = kept_lines
        .iter()
        .map(|l| l.iter().map(|&p| new_of_old[p as usize]).collect())
        .collect();
    let np_ok = Geometry::new(old.len(), local).is_ok_and(|vp| {
        let vdm = DistanceMatrix::of(&vp);
        let r = check_near_polygon(&vp, &vdm);
        r.passed()
            && r.parameters
                == Parameters::NearPolygon {
                    diameter: 4,
                    order: Some((2, 10)),
                }
    });

    let n = geom.n_points();
    AxiomReport::from_checks(
        "valuation-isomorphism",
        vec![
            ("induced-valuations".into(), valid, valid == n),
            ("distinct".into(), distinct.len(), distinct.len() == n),
            ("type-A".into(), per_type[0], per_type[0] == 315),
            ("type-B".into(), per_type[1], per_type[1] == 630),
            ("type-C".into(), per_type[2], per_type[2] == 3150),
            ("onto-types-ABC".into(), abc.len(), distinct == abc),
            ("lines-to-kept-lines".into(), lines_ok, lines_ok == geom.n_lines()),
            ("kept-lines-hit".into(), images.len(), images.len() == kept),
            ("kept-lines".into(), kept, kept == 15015),
            ("line-count-identity".into(), identity, identity == 15015 && n * 11 / 3 == identity),
            ("kept-subgeometry-near-octagon-(2,10)".into(), 1, np_ok),
        ],
    )
}
