use std::collections::BTreeSet;

use super::{restricted, SubgeomError};
use crate::incidence::{check_generalized_2dgon, isometric_check, DistanceMatrix, Geometry, InducedGeometry};

/// A thin generalized `2d`-gon of order `(s,1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThinTarget {
    pub s: usize,
    pub gonality: usize,
    pub expected_points: usize,
}

impl ThinTarget {
    pub fn new(s: usize, d: usize) -> Self {
        ThinTarget {
            s,
            gonality: 2 * d,
            expected_points: (s + 1) * Self::geometric(s, d),
        }
    }

    fn geometric(s: usize, d: usize) -> usize {
        (0..d as u32).map(|i| s.pow(i)).sum()
    }

    pub fn d(&self) -> usize {
        self.gonality / 2
    }

    pub fn expected_lines(&self) -> usize {
        2 * Self::geometric(self.s, self.d())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Stop at the first subgeometry through the least line.
    FirstFound,
    /// All subgeometries, each reported once.
    Exhaustive,
}

/// Ambient point and line ids of a found subgeometry, both sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ThinSelection {
    pub points: Vec<u32>,
    pub lines: Vec<u32>,
}

impl ThinSelection {
    /// The selection as a subgeometry with only its own lines.
    pub fn induced(&self, ambient: &Geometry) -> InducedGeometry {
        restricted(ambient, &self.points, &self.lines)
    }

    /// Re-runs the generalized polygon and isometry checks.
    pub fn validate(&self, ambient: &Geometry, dm: &DistanceMatrix, target: ThinTarget) -> Result<(), SubgeomError> {
        if self.points.len() != target.expected_points || self.lines.len() != target.expected_lines() {
            return Err(SubgeomError::ValidationFailure(format!(
                "{} points and {} lines",
                self.points.len(),
                self.lines.len()
            )));
        }
        let sub = self.induced(ambient);
        let gp = check_generalized_2dgon(&sub.geometry, target.d());
        if !gp.passed() {
            return Err(SubgeomError::ValidationFailure(gp.to_string()));
        }
        if sub.geometry.order() != Some((target.s, 1)) {
            return Err(SubgeomError::ValidationFailure(format!("order {:?}", sub.geometry.order())));
        }
        let iso = isometric_check(dm, &sub);
        if !iso.passed() {
            return Err(SubgeomError::ValidationFailure(iso.to_string()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum LineState {
    Open,
    Selected,
    Excluded,
}

struct Conflict;

#[derive(Clone)]
struct State {
    lines: Vec<LineState>,
    on_point: Vec<u8>,
    inside: Vec<bool>,
    members: Vec<u32>,
    selected: usize,
}

struct Search<'a> {
    geom: &'a Geometry,
    dm: &'a DistanceMatrix,
    target: ThinTarget,
    budget: usize,
    nodes: usize,
    mode: SearchMode,
    found: BTreeSet<ThinSelection>,
}

impl Search<'_> {
    fn select(&self, st: &mut State, l: u32) -> Result<bool, Conflict> {
        match st.lines[l as usize] {
            LineState::Selected => return Ok(false),
            LineState::Excluded => return Err(Conflict),
            LineState::Open => {}
        }
        st.lines[l as usize] = LineState::Selected;
        st.selected += 1;
        for &p in self.geom.line(l) {
            st.on_point[p as usize] += 1;
            if st.on_point[p as usize] > 2 {
                return Err(Conflict);
            }
            if !st.inside[p as usize] {
                st.inside[p as usize] = true;
                st.members.push(p);
            }
        }
        Ok(true)
    }

    fn local_pass(&self, st: &mut State) -> Result<bool, Conflict> {
        let mut changed = false;
        let mut i = 0;
        while i < st.members.len() {
            let p = st.members[i];
            i += 1;
            let through = self.geom.lines_through(p);
            if st.on_point[p as usize] == 2 {
                for &l in through {
                    if st.lines[l as usize] == LineState::Open {
                        st.lines[l as usize] = LineState::Excluded;
                        changed = true;
                    }
                }
                continue;
            }
            let possible = through
                .iter()
                .filter(|&&l| st.lines[l as usize] != LineState::Excluded)
                .count();
            match possible {
                0 | 1 => return Err(Conflict),
                2 => {
                    for &l in through {
                        if st.lines[l as usize] != LineState::Excluded {
                            changed |= self.select(st, l)?;
                        }
                    }
                }
                _ => {}
            }
        }
        Ok(changed)
    }

    /// Inside an isometric thin polygon, each member has exactly one line
    /// towards any other member at distance below `d`.
    fn distance_pass(&self, st: &mut State) -> Result<bool, Conflict> {
        let d = self.target.d() as u8;
        let mut changed = false;
        let members = st.members.clone();
        for &p in &members {
            let through = self.geom.lines_through(p);
            for &q in &members {
                let k = self.dm.get(p, q);
                if k == 0 || k >= d {
                    continue;
                }
                let row = self.dm.row(q);
                let mut towards_selected = 0;
                let mut towards_open = None;
                let mut open_count = 0;
                for &l in through {
                    if !self.geom.line(l).iter().any(|&z| row[z as usize] == k - 1) {
                        continue;
                    }
                    match st.lines[l as usize] {
                        LineState::Selected => towards_selected += 1,
                        LineState::Open => {
                            open_count += 1;
                            towards_open = Some(l);
                        }
                        LineState::Excluded => {}
                    }
                }
                match (towards_selected, open_count) {
                    (0, 0) => return Err(Conflict),
                    (0, 1) => changed |= self.select(st, towards_open.unwrap())?,
                    (1, _) => {
                        for &l in through {
                            if st.lines[l as usize] == LineState::Open
                                && self.geom.line(l).iter().any(|&z| row[z as usize] == k - 1)
                            {
                                st.lines[l as usize] = LineState::Excluded;
                                changed = true;
                            }
                        }
                    }
                    (2.., _) => return Err(Conflict),
                    _ => {}
                }
            }
        }
        Ok(changed)
    }

    fn propagate(&self, st: &mut State) -> Result<(), Conflict> {
        loop {
            if st.members.len() > self.target.expected_points || st.selected > self.target.expected_lines() {
                return Err(Conflict);
            }
            if self.local_pass(st)? {
                continue;
            }
            if !self.distance_pass(st)? {
                return Ok(());
            }
        }
    }

    fn run(&mut self, mut st: State) -> Result<bool, SubgeomError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(SubgeomError::BudgetExhausted(self.budget));
        }
        if self.propagate(&mut st).is_err() {
            return Ok(false);
        }
        let open_point = st
            .members
            .iter()
            .copied()
            .filter(|&p| st.on_point[p as usize] < 2)
            .min_by_key(|&p| {
                self.geom
                    .lines_through(p)
                    .iter()
                    .filter(|&&l| st.lines[l as usize] == LineState::Open)
                    .count()
            });
        let Some(p) = open_point else {
            return Ok(self.record(&st));
        };
        let options: Vec<u32> = self
            .geom
            .lines_through(p)
            .iter()
            .copied()
            .filter(|&l| st.lines[l as usize] == LineState::Open)
            .collect();
        for (i, &l) in options.iter().enumerate() {
            let mut child = st.clone();
            for &earlier in &options[..i] {
                child.lines[earlier as usize] = LineState::Excluded;
            }
            if self.select(&mut child, l).is_err() {
                continue;
            }
            if self.run(child)? && self.mode == SearchMode::FirstFound {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn record(&mut self, st: &State) -> bool {
        let mut points = st.members.clone();
        points.sort_unstable();
        let lines: Vec<u32> = (0..st.lines.len() as u32)
            .filter(|&l| st.lines[l as usize] == LineState::Selected)
            .collect();
        let sel = ThinSelection { points, lines };
        if sel.validate(self.geom, self.dm, self.target).is_err() {
            return false;
        }
        self.found.insert(sel);
        true
    }
}

/// Backtracking search for full thin subgeometries of the requested order in
/// which every selected point lies on exactly two selected lines. Exhaustive
/// mode roots the search at each line in turn with all smaller lines excluded,
/// so every subgeometry is reached from its least line only.
pub fn search_thin_subgeometry(
    ambient: &Geometry,
    dm: &DistanceMatrix,
    target: ThinTarget,
    mode: SearchMode,
    budget: usize,
) -> Result<Vec<ThinSelection>, SubgeomError> {
    let n_lines = ambient.n_lines();
    let mut search = Search {
        geom: ambient,
        dm,
        target,
        budget,
        nodes: 0,
        mode,
        found: BTreeSet::new(),
    };
    let roots = match mode {
        SearchMode::FirstFound => 0..n_lines.min(1) as u32,
        SearchMode::Exhaustive => 0..n_lines as u32,
    };
    for root in roots {
        let mut st = State {
            lines: vec![LineState::Open; n_lines],
            on_point: vec![0; ambient.n_points()],
            inside: vec![false; ambient.n_points()],
            members: Vec::new(),
            selected: 0,
        };
        for l in 0..root {
            st.lines[l as usize] = LineState::Excluded;
        }
        if search.select(&mut st, root).is_err() {
            continue;
        }
        search.run(st)?;
    }
    if search.found.is_empty() {
        return Err(SubgeomError::NoneFound);
    }
    Ok(search.found.into_iter().collect())
}
