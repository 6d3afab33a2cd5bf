//! Valuations of the Hall-Janko near octagon: axioms, the valuations
//! induced by points of the octagon, exhaustive enumeration, the product of
//! neighbouring valuations and the geometry it defines.

mod enumerate;
mod vgeometry;

use std::fmt;

use thiserror::Error;

use crate::incidence::{AxiomReport, DistanceMatrix, Geometry, Parameters, Witness};
use crate::subgeom::Suboctagon;

pub use enumerate::{enumerate_valuations, valuation_vectors};
pub use vgeometry::{build_valuation_geometry, vprime_iso_check, ValuationGeometry, TABLE2, VPRIME_LINE_TYPES};

/// Largest value the search admits; the tables never reach it.
pub const VALUE_CAP: u8 = 5;

#[derive(Debug, Error)]
pub enum ValuationError {
    #[error("vector has {found} entries for {expected} points")]
    IndexMismatch { expected: usize, found: usize },
    #[error("not a valuation: {0}")]
    NotAValuation(String),
    #[error("valuations are not neighbouring")]
    NotNeighboring,
    #[error("expected {expected} valuations, found {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("value distribution {0:?} matches no type")]
    UnknownDistribution(Vec<usize>),
    #[error("line census differs from the table: {0}")]
    TableMismatch(String),
}

/// The five classes, by value distribution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ValType {
    A,
    B,
    C,
    D,
    E,
}

/// Count, largest value, zero count and value distribution of each class.
pub const TABLE1: [(ValType, usize, u8, usize, [usize; 5]); 5] = [
    (ValType::A, 315, 4, 1, [1, 10, 80, 160, 64]),
    (ValType::B, 630, 3, 1, [1, 10, 112, 192, 0]),
    (ValType::C, 3150, 3, 1, [1, 26, 128, 160, 0]),
    (ValType::D, 1008, 2, 5, [5, 110, 200, 0, 0]),
    (ValType::E, 2016, 2, 25, [25, 130, 160, 0, 0]),
];

pub const VALUATION_COUNT: usize = 7119;

impl ValType {
    pub const ALL: [ValType; 5] = [ValType::A, ValType::B, ValType::C, ValType::D, ValType::E];

    pub fn letter(self) -> char {
        ['A', 'B', 'C', 'D', 'E'][self as usize]
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.letter() == c)
    }
}

impl fmt::Display for ValType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Value counts from 0 up to the cap or the largest value, whichever is larger.
pub fn distribution(values: &[u8]) -> Vec<usize> {
    let top = values.iter().copied().max().unwrap_or(0).max(VALUE_CAP);
    let mut d = vec![0; top as usize + 1];
    for &v in values {
        d[v as usize] += 1;
    }
    d
}

/// A classified valuation of the Hall-Janko near octagon.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Valuation {
    vtype: ValType,
    values: Vec<u8>,
}

impl Valuation {
    /// Classifies `values` by its distribution; no axiom check.
    pub fn classify(values: Vec<u8>) -> Result<Self, ValuationError> {
        let dist = distribution(&values);
        let vtype = TABLE1
            .iter()
            .find(|row| dist[..5] == row.4 && dist[5..].iter().all(|&c| c == 0))
            .map(|row| row.0)
            .ok_or(ValuationError::UnknownDistribution(dist))?;
        Ok(Valuation { vtype, values })
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn vtype(&self) -> ValType {
        self.vtype
    }

    pub fn max_value(&self) -> u8 {
        self.values.iter().copied().max().unwrap_or(0)
    }

    pub fn zero_set(&self) -> Vec<u32> {
        (0..self.values.len() as u32).filter(|&i| self.values[i as usize] == 0).collect()
    }

    pub fn distribution(&self) -> Vec<usize> {
        distribution(&self.values)
    }

    /// Type letter followed by one digit per point.
    pub fn to_line(&self) -> String {
        let mut s = String::with_capacity(self.values.len() + 1);
        s.push(self.vtype.letter());
        s.extend(self.values.iter().map(|&v| char::from(b'0' + v)));
        s
    }

    pub fn from_line(line: &str) -> Result<Self, ValuationError> {
        let mut chars = line.trim().chars();
        let letter = chars.next().and_then(ValType::from_letter);
        let values: Option<Vec<u8>> = chars.map(|c| c.to_digit(10).map(|d| d as u8)).collect();
        match (letter, values) {
            (Some(t), Some(values)) => {
                let v = Valuation::classify(values)?;
                if v.vtype != t {
                    return Err(ValuationError::NotAValuation(format!("tagged {t} but has type {}", v.vtype)));
                }
                Ok(v)
            }
            _ => Err(ValuationError::NotAValuation(format!("malformed line `{line}`"))),
        }
    }
}

/// Checks that some value is 0 and every line carries `{a, a+1, a+1}`.
pub fn is_valuation(geom: &Geometry, f: &[u8]) -> Result<AxiomReport, ValuationError> {
    const NAME: &str = "valuation";
    if f.len() != geom.n_points() {
        return Err(ValuationError::IndexMismatch {
            expected: geom.n_points(),
            found: f.len(),
        });
    }
    if !f.contains(&0) {
        return Ok(AxiomReport::fail(NAME, Parameters::None, Witness::new(vec![], vec![], "no zero")));
    }
    for (l, line) in geom.lines().enumerate() {
        if !line_pattern_ok(line.iter().map(|&p| f[p as usize])) {
            let vals: Vec<u8> = line.iter().map(|&p| f[p as usize]).collect();
            return Ok(AxiomReport::fail(
                NAME,
                Parameters::None,
                Witness::new(line.to_vec(), vec![l as u32], format!("values {vals:?}")),
            ));
        }
    }
    Ok(AxiomReport::pass(NAME, Parameters::None))
}

/// A unique minimum with every other value one higher.
fn line_pattern_ok(vals: impl Iterator<Item = u8> + Clone) -> bool {
    let min = vals.clone().min().unwrap_or(0);
    let mut at_min = 0;
    for v in vals {
        if v == min {
            at_min += 1;
        } else if v != min + 1 {
            return false;
        }
    }
    at_min == 1
}

/// `f(y) = d(x, y) - d(x, sub)` over the points of `sub` in sorted order.
pub fn induced_valuation(dm: &DistanceMatrix, sub: &Suboctagon, x: u32) -> Result<Valuation, ValuationError> {
    let row = dm.row(x);
    let m = sub.points().iter().map(|&p| row[p as usize]).min().unwrap_or(0);
    let values: Vec<u8> = sub.points().iter().map(|&p| row[p as usize] - m).collect();
    let report = is_valuation(sub.geometry(), &values)?;
    if !report.passed() {
        return Err(ValuationError::NotAValuation(report.to_string()));
    }
    Valuation::classify(values)
}

/// The shift `eps` with `|f1(x) - f2(x) + eps| <= 1` everywhere; `0` when
/// the two agree.
pub fn neighboring_epsilon(f1: &[u8], f2: &[u8]) -> Option<i8> {
    let mut lo = i8::MAX;
    let mut hi = i8::MIN;
    for (&a, &b) in f1.iter().zip(f2) {
        let d = a as i8 - b as i8;
        lo = lo.min(d);
        hi = hi.max(d);
        if hi - lo > 2 {
            return None;
        }
    }
    if lo == i8::MAX {
        return Some(0);
    }
    // eps must lie in [-1 - lo, 1 - hi]
    let (from, to) = ((-1 - lo).max(-1), (1 - hi).min(1));
    if from > to {
        None
    } else if (from..=to).contains(&0) {
        Some(0)
    } else {
        Some(from)
    }
}

/// Every admissible shift; three when the valuations agree.
pub fn neighboring_epsilons(f1: &[u8], f2: &[u8]) -> Vec<i8> {
    (-1..=1)
        .filter(|&e| f1.iter().zip(f2).all(|(&a, &b)| (a as i8 - b as i8 + e).abs() <= 1))
        .collect()
}

/// The product `f1 * f2`: where `f1 = f2 - eps` take `f1 - 1`, elsewhere
/// the larger of `f1` and `f2 - eps`, then shift to minimum 0.
pub fn star_product(geom: &Geometry, f1: &[u8], f2: &[u8]) -> Result<Vec<u8>, ValuationError> {
    if f1 == f2 {
        return Ok(f1.to_vec());
    }
    let eps = neighboring_epsilon(f1, f2).ok_or(ValuationError::NotNeighboring)?;
    let raw: Vec<i8> = f1
        .iter()
        .zip(f2)
        .map(|(&a, &b)| {
            let (a, b) = (a as i8, b as i8 - eps);
            if a == b {
                a - 1
            } else {
                a.max(b)
            }
        })
        .collect();
    let m = raw.iter().copied().min().unwrap_or(0);
    if !(-1..=1).contains(&m) {
        return Err(ValuationError::NotAValuation(format!("shift {m} outside -1..=1")));
    }
    let f3: Vec<u8> = raw.iter().map(|&v| (v - m) as u8).collect();
    let report = is_valuation(geom, &f3)?;
    if !report.passed() {
        return Err(ValuationError::NotAValuation(report.to_string()));
    }
    Ok(f3)
}
