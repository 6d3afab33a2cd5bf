use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use super::{Octagon, OctagonError};
use crate::group::{InvolutionClass, OrbitalPartition};
use crate::incidence::{AxiomReport, DistanceMatrix};

/// The eight suborbits of a point stabilizer, ordered by size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suborbit {
    O0,
    O1a,
    O1b,
    O2a,
    O2b,
    O3a,
    O3b,
    O4,
}

impl Suborbit {
    pub const ALL: [Suborbit; 8] = [
        Suborbit::O0,
        Suborbit::O1a,
        Suborbit::O1b,
        Suborbit::O2a,
        Suborbit::O2b,
        Suborbit::O3a,
        Suborbit::O3b,
        Suborbit::O4,
    ];
    const SIZES: [usize; 8] = [1, 2, 20, 40, 320, 640, 1024, 2048];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn size(self) -> usize {
        Self::SIZES[self.index()]
    }

    /// Distance from the base point.
    pub fn distance(self) -> u8 {
        [0, 1, 1, 2, 2, 3, 3, 4][self.index()]
    }

    pub fn name(self) -> &'static str {
        ["O0", "O1a", "O1b", "O2a", "O2b", "O3a", "O3b", "O4"][self.index()]
    }

    fn from_size(size: usize) -> Option<Self> {
        Self::SIZES.iter().position(|&s| s == size).map(|i| Self::ALL[i])
    }
}

impl fmt::Display for Suborbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Suborbits at a base point with the number of lines of each shape through
/// each point. A line through `y` has shape `[label(a), label(b)]` for its
/// other two points `a`, `b`; the per-point count of each shape is constant
/// on every suborbit.
#[derive(Clone, Debug)]
pub struct SuborbitDiagram {
    base: u32,
    label_of_point: Vec<Suborbit>,
    orbital_of: [u16; 8],
    label_of_orbital: Vec<Suborbit>,
    line_counts: BTreeMap<Suborbit, BTreeMap<[Suborbit; 2], usize>>,
}

impl SuborbitDiagram {
    pub fn base(&self) -> u32 {
        self.base
    }

    #[inline]
    pub fn label(&self, p: u32) -> Suborbit {
        self.label_of_point[p as usize]
    }

    pub fn orbital_of(&self, s: Suborbit) -> u16 {
        self.orbital_of[s.index()]
    }

    /// Suborbit of `p` relative to an arbitrary base `x`; labels are carried
    /// by orbitals, so they do not depend on the diagram's own base.
    #[inline]
    pub fn relative_label(&self, orbitals: &OrbitalPartition, x: u32, p: u32) -> Suborbit {
        self.label_of_orbital[orbitals.orbital(x, p) as usize]
    }

    pub fn points_in(&self, s: Suborbit) -> impl Iterator<Item = u32> + '_ {
        self.label_of_point
            .iter()
            .enumerate()
            .filter(move |(_, &l)| l == s)
            .map(|(i, _)| i as u32)
    }

    pub fn sizes(&self) -> [usize; 8] {
        let mut out = [0; 8];
        for l in &self.label_of_point {
            out[l.index()] += 1;
        }
        out
    }

    /// Per-point line shapes for points of `s`.
    pub fn line_counts(&self, s: Suborbit) -> &BTreeMap<[Suborbit; 2], usize> {
        &self.line_counts[&s]
    }

    /// Lines through a point of `from` containing at least one point of `to`.
    pub fn lines_meeting(&self, from: Suborbit, to: Suborbit) -> usize {
        self.line_counts(from)
            .iter()
            .filter(|(shape, _)| shape.contains(&to))
            .map(|(_, c)| c)
            .sum()
    }

    /// Human-readable diagram: sizes, distances, and line shapes per suborbit.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let sizes = self.sizes();
        for s in Suborbit::ALL {
            writeln!(out, "{s} size={} distance={}", sizes[s.index()], s.distance()).unwrap();
            for (shape, c) in self.line_counts(s) {
                writeln!(out, "  lines to {{{},{}}}: {c}", shape[0], shape[1]).unwrap();
            }
        }
        out
    }
}

/// Labels the orbitals at `omega` by suborbit size, checks the labelling
/// against collinearity distances and tabulates the line shapes.
pub fn suborbit_diagram(
    oct: &Octagon,
    orbitals: &OrbitalPartition,
    dm: &DistanceMatrix,
    omega: u32,
) -> Result<SuborbitDiagram, OctagonError> {
    let sizes = orbitals.suborbit_sizes(omega);
    let labels: Vec<Suborbit> = sizes
        .iter()
        .map(|&s| Suborbit::from_size(s))
        .collect::<Option<_>>()
        .filter(|l: &Vec<Suborbit>| l.len() == 8)
        .ok_or_else(|| OctagonError::UnexpectedOrbitalCount(sizes.clone()))?;
    let mut orbital_of = [u16::MAX; 8];
    for (o, l) in labels.iter().enumerate() {
        if orbital_of[l.index()] != u16::MAX {
            return Err(OctagonError::UnexpectedOrbitalCount(sizes));
        }
        orbital_of[l.index()] = o as u16;
    }
    let n = oct.n_points() as u32;
    let label_of_point: Vec<Suborbit> = (0..n).map(|y| labels[orbitals.orbital(omega, y) as usize]).collect();
    if let Some(y) = (0..n).find(|&y| dm.get(omega, y) != label_of_point[y as usize].distance()) {
        return Err(OctagonError::AxiomFailure(format!(
            "point {y} in {} lies at distance {} from {omega}",
            label_of_point[y as usize],
            dm.get(omega, y)
        )));
    }

    let geom = oct.geometry();
    let mut line_counts = BTreeMap::new();
    for s in Suborbit::ALL {
        let mut reference: Option<BTreeMap<[Suborbit; 2], usize>> = None;
        for y in (0..n).filter(|&y| label_of_point[y as usize] == s) {
            let mut shapes = BTreeMap::new();
            for &l in geom.lines_through(y) {
                let mut shape = [Suborbit::O0; 2];
                for (k, &p) in geom.line(l).iter().filter(|&&p| p != y).enumerate() {
                    shape[k] = label_of_point[p as usize];
                }
                shape.sort_unstable();
                *shapes.entry(shape).or_insert(0) += 1;
            }
            match &reference {
                None => reference = Some(shapes),
                Some(r) if *r != shapes => {
                    return Err(OctagonError::AxiomFailure(format!(
                        "line shapes through points of {s} vary (point {y})"
                    )))
                }
                Some(_) => {}
            }
        }
        line_counts.insert(s, reference.unwrap_or_default());
    }
    Ok(SuborbitDiagram {
        base: omega,
        label_of_point,
        orbital_of,
        label_of_orbital: labels,
        line_counts,
    })
}

/// Number of other class members commuting with each member, by direct
/// comparison of both products.
pub fn commuting_partner_counts(cls: &InvolutionClass) -> Vec<usize> {
    let n = cls.len() as u32;
    let mut counts = vec![0; n as usize];
    for x in 0..n {
        for y in x + 1..n {
            if cls.commute(x, y) {
                counts[x as usize] += 1;
                counts[y as usize] += 1;
            }
        }
    }
    counts
}

impl SuborbitDiagram {
    /// Every spread line meets exactly one of the consecutive pairs
    /// `(O0,O1a)`, `(O1b,O2a)`, `(O2b,O3a)`, `(O3b,O4)`, in one point of the
    /// first and two of the second; every orbital is self-paired.
    pub fn structure_checks(&self, oct: &Octagon, orbitals: &OrbitalPartition) -> AxiomReport {
        use Suborbit::*;
        let shapes = [[O0, O1a, O1a], [O1b, O2a, O2a], [O2b, O3a, O3a], [O3b, O4, O4]];
        let mut per_shape = [0usize; 4];
        let mut unexpected = 0;
        for l in oct.spread_lines() {
            let mut shape: Vec<Suborbit> = oct.geometry().line(l).iter().map(|&p| self.label(p)).collect();
            shape.sort_unstable();
            match shapes.iter().position(|s| s[..] == shape[..]) {
                Some(i) => per_shape[i] += 1,
                None => unexpected += 1,
            }
        }
        let self_paired = (0..orbitals.rank() as u16).filter(|&o| orbitals.paired(o) == o).count();
        let mut checks = Vec::new();
        for (i, s) in shapes.iter().enumerate() {
            checks.push((format!("spread {{{},{},{}}}", s[0], s[1], s[2]), per_shape[i], per_shape[i] == s[0].size()));
        }
        checks.push(("spread other".into(), unexpected, unexpected == 0));
        checks.push(("self-paired orbitals".into(), self_paired, self_paired == orbitals.rank()));
        let total: usize = Suborbit::ALL
            .iter()
            .map(|&s| self.line_counts(s).values().sum::<usize>())
            .sum();
        checks.push(("lines per point summed".into(), total, total == 8 * 11));
        AxiomReport::from_checks(format!("suborbit-structure@{}", self.base), checks)
    }
}
