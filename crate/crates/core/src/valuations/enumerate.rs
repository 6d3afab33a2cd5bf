use rayon::prelude::*;

use super::{Valuation, ValuationError, VALUATION_COUNT, VALUE_CAP};
use crate::incidence::{DistanceMatrix, Geometry};

const UNSET: u8 = u8::MAX;

struct Conflict;

#[derive(Clone)]
struct State {
    domain: Vec<u8>,
    value: Vec<u8>,
}

fn band(lo: i16, hi: i16) -> u8 {
    let lo = lo.max(0);
    let hi = hi.min(VALUE_CAP as i16);
    if lo > hi {
        return 0;
    }
    (lo..=hi).fold(0u8, |m, v| m | 1 << v)
}

struct Search<'a> {
    geom: &'a Geometry,
    dm: &'a DistanceMatrix,
}

impl Search<'_> {
    fn restrict(&self, st: &mut State, y: u32, mask: u8, queue: &mut Vec<u32>) -> Result<(), Conflict> {
        let yi = y as usize;
        if st.value[yi] != UNSET {
            return if mask & 1 << st.value[yi] != 0 { Ok(()) } else { Err(Conflict) };
        }
        let d = st.domain[yi] & mask;
        if d == 0 {
            return Err(Conflict);
        }
        st.domain[yi] = d;
        if d.count_ones() == 1 {
            st.value[yi] = d.trailing_zeros() as u8;
            queue.push(y);
        }
        Ok(())
    }

    fn propagate(&self, st: &mut State, mut queue: Vec<u32>) -> Result<(), Conflict> {
        while let Some(x) = queue.pop() {
            let v = st.value[x as usize] as i16;
            let row = self.dm.row(x);
            for y in 0..self.geom.n_points() as u32 {
                if st.value[y as usize] == UNSET {
                    let d = row[y as usize] as i16;
                    self.restrict(st, y, band(v - d, v + d), &mut queue)?;
                }
            }
            for &l in self.geom.lines_through(x) {
                let others: Vec<u32> = self.geom.line(l).iter().copied().filter(|&p| p != x).collect();
                let known: Vec<u32> = others.iter().copied().filter(|&p| st.value[p as usize] != UNSET).collect();
                match known[..] {
                    [] => {
                        for &o in &others {
                            self.restrict(st, o, band(v - 1, v + 1), &mut queue)?;
                        }
                    }
                    [w] => {
                        let u = st.value[w as usize] as i16;
                        let third = if u == v {
                            v - 1
                        } else if (u - v).abs() == 1 {
                            u.max(v)
                        } else {
                            return Err(Conflict);
                        };
                        let t = *others.iter().find(|&&o| o != w).unwrap();
                        self.restrict(st, t, band(third, third), &mut queue)?;
                    }
                    _ => {
                        let vals = self.geom.line(l).iter().map(|&p| st.value[p as usize]);
                        if !super::line_pattern_ok(vals) {
                            return Err(Conflict);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn run(&self, st: State, out: &mut Vec<Vec<u8>>) {
        let next = (0..st.value.len())
            .filter(|&i| st.value[i] == UNSET)
            .min_by_key(|&i| st.domain[i].count_ones());
        let Some(y) = next else {
            out.push(st.value);
            return;
        };
        let mut bits = st.domain[y];
        while bits != 0 {
            let v = bits.trailing_zeros() as u8;
            bits &= bits - 1;
            let mut child = st.clone();
            child.value[y] = v;
            child.domain[y] = 1 << v;
            if self.propagate(&mut child, vec![y as u32]).is_ok() {
                self.run(child, out);
            }
        }
    }

    /// Valuations whose least zero is `anchor`.
    fn anchored(&self, anchor: u32) -> Vec<Vec<u8>> {
        let n = self.geom.n_points();
        let row = self.dm.row(anchor);
        let domain = (0..n)
            .map(|q| {
                let lo = if (q as u32) < anchor { 1 } else { 0 };
                band(lo, row[q] as i16)
            })
            .collect();
        let mut st = State {
            domain,
            value: vec![UNSET; n],
        };
        st.value[anchor as usize] = 0;
        st.domain[anchor as usize] = 1;
        let mut out = Vec::new();
        if self.propagate(&mut st, vec![anchor]).is_ok() {
            self.run(st, &mut out);
        }
        out
    }
}

/// All valuations of a connected partial linear space with values at most
/// the cap, each produced once from its least zero, in increasing order.
pub fn valuation_vectors(geom: &Geometry) -> Vec<Vec<u8>> {
    let dm = DistanceMatrix::of(geom);
    let search = Search { geom, dm: &dm };
    let mut all: Vec<Vec<u8>> = (0..geom.n_points() as u32)
        .into_par_iter()
        .flat_map_iter(|a| search.anchored(a))
        .collect();
    all.sort_unstable();
    all
}

/// The valuations of the Hall-Janko near octagon, classified and sorted by
/// type and then by values.
pub fn enumerate_valuations(hj: &Geometry) -> Result<Vec<Valuation>, ValuationError> {
    let mut vals = valuation_vectors(hj)
        .into_iter()
        .map(Valuation::classify)
        .collect::<Result<Vec<_>, _>>()?;
    if vals.len() != VALUATION_COUNT {
        return Err(ValuationError::CountMismatch {
            expected: VALUATION_COUNT,
            found: vals.len(),
        });
    }
    vals.sort();
    Ok(vals)
}
