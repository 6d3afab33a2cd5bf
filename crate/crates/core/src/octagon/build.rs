use std::fmt::Write as _;

use super::OctagonError;
use crate::group::{klein_orbit_size, GroupError, InvolutionClass, OrbitalPartition};
use crate::incidence::{parse_indices, Geometry};

pub const OCTAGON_LINES: usize = 15015;
pub const SPREAD_LINES: usize = 1365;
const LINE_KLEIN_SIZES: [usize; 2] = [1365, 13650];

/// Klein orbit size of a representative pair of one orbital; `None` when the
/// pair does not commute or its product leaves the class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KleinClass {
    pub orbital: u16,
    pub klein_size: Option<usize>,
}

/// Points are class members, lines are triples `{x, y, xy}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Octagon {
    geometry: Geometry,
    spread_flags: Vec<bool>,
    spread_line_of: Vec<u32>,
}

impl Octagon {
    /// Assembles an octagon from a geometry and its spread lines, checking
    /// that every point lies on exactly one spread line.
    pub fn from_parts(geometry: Geometry, spread: &[u32]) -> Result<Self, OctagonError> {
        let mut spread_flags = vec![false; geometry.n_lines()];
        let mut spread_line_of = vec![u32::MAX; geometry.n_points()];
        let mut count = vec![0usize; geometry.n_points()];
        for &l in spread {
            spread_flags[l as usize] = true;
            for &p in geometry.line(l) {
                spread_line_of[p as usize] = l;
                count[p as usize] += 1;
            }
        }
        if let Some((p, &c)) = count.iter().enumerate().find(|(_, &c)| c != 1) {
            return Err(OctagonError::SpreadViolation { point: p as u32, count: c });
        }
        Ok(Octagon {
            geometry,
            spread_flags,
            spread_line_of,
        })
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn n_points(&self) -> usize {
        self.geometry.n_points()
    }

    pub fn is_spread(&self, line: u32) -> bool {
        self.spread_flags[line as usize]
    }

    /// The spread line through `p`.
    pub fn spread_line_of(&self, p: u32) -> u32 {
        self.spread_line_of[p as usize]
    }

    pub fn spread_lines(&self) -> Vec<u32> {
        (0..self.geometry.n_lines() as u32).filter(|&l| self.is_spread(l)).collect()
    }

    /// Spread line ids, one per line of text.
    pub fn spread_to_text(&self) -> String {
        let mut out = String::new();
        for l in self.spread_lines() {
            writeln!(out, "{l}").unwrap();
        }
        out
    }

    pub fn spread_from_text(text: &str) -> Result<Vec<u32>, OctagonError> {
        Ok(text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| parse_indices(l).map_err(|e| crate::incidence::IncidenceError::Format(i + 1, e)))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .flatten()
            .collect())
    }
}

/// Lines are the triples `{x, y, xy}` of commuting members whose Klein
/// four-group has 1365 or 13650 conjugates; the 1365 kind form the spread.
///
/// The Klein orbit size is a function of the orbital of `(x, y)`, so it is
/// computed once per orbital at base point 0. Each line is still checked for
/// commutation and product membership directly.
pub fn build_octagon(
    cls: &InvolutionClass,
    orbitals: &OrbitalPartition,
) -> Result<(Octagon, Vec<KleinClass>), OctagonError> {
    let n = cls.len() as u32;
    let mut klein = Vec::with_capacity(orbitals.rank());
    for o in 0..orbitals.rank() as u16 {
        let y = (0..n).find(|&y| orbitals.orbital(0, y) == o).expect("every orbital meets row 0");
        let klein_size = match klein_orbit_size(0, y, cls) {
            Ok(k) => Some(k),
            Err(GroupError::NotCommuting(..)) | Err(GroupError::ProductOutsideClass(..)) => None,
            Err(e) => return Err(e.into()),
        };
        klein.push(KleinClass { orbital: o, klein_size });
    }
    let line_kind: Vec<Option<bool>> = klein
        .iter()
        .map(|k| match k.klein_size {
            Some(s) if LINE_KLEIN_SIZES.contains(&s) => Some(s == LINE_KLEIN_SIZES[0]),
            _ => None,
        })
        .collect();

    let mut lines = Vec::new();
    let mut spread_triples = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let Some(is_spread) = line_kind[orbitals.orbital(x, y) as usize] else { continue };
            if !cls.commute(x, y) {
                return Err(GroupError::NotCommuting(x, y).into());
            }
            let z = cls.product(x, y).ok_or(GroupError::ProductOutsideClass(x, y))?;
            if z > y {
                lines.push(vec![x, y, z]);
                if is_spread {
                    spread_triples.push([x, y, z]);
                }
            }
        }
    }
    if lines.len() != OCTAGON_LINES {
        return Err(OctagonError::LineCountMismatch {
            what: "lines",
            expected: OCTAGON_LINES,
            found: lines.len(),
        });
    }
    if spread_triples.len() != SPREAD_LINES {
        return Err(OctagonError::LineCountMismatch {
            what: "spread lines",
            expected: SPREAD_LINES,
            found: spread_triples.len(),
        });
    }
    let geometry = Geometry::new(n as usize, lines)?;
    let spread: Vec<u32> = spread_triples
        .iter()
        .map(|t| geometry.find_line(t).expect("spread triple is a line"))
        .collect();
    Ok((Octagon::from_parts(geometry, &spread)?, klein))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spread_must_partition() {
        let g = Geometry::new(4, vec![vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        assert!(Octagon::from_parts(g.clone(), &[0, 2]).is_ok());
        assert!(matches!(
            Octagon::from_parts(g.clone(), &[0, 1, 2]),
            Err(OctagonError::SpreadViolation { point: 1, count: 2 })
        ));
        assert!(matches!(
            Octagon::from_parts(g, &[0]),
            Err(OctagonError::SpreadViolation { point: 2, count: 0 })
        ));
    }

    #[test]
    fn spread_text_roundtrip() {
        let g = Geometry::new(4, vec![vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        let oct = Octagon::from_parts(g, &[0, 2]).unwrap();
        assert_eq!(Octagon::spread_from_text(&oct.spread_to_text()).unwrap(), vec![0, 2]);
        assert_eq!(oct.spread_line_of(3), 2);
    }
}
