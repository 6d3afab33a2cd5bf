use std::fmt::Write as _;

use super::IncidenceError;

/// A point-line geometry with lines stored as sorted point tuples.
///
/// Lines are kept in lexicographic order, so line ids are canonical and two
/// geometries on the same point set are equal exactly when their line sets
/// are. Point-line incidences are indexed both ways in CSR form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Geometry {
    n_points: usize,
    line_offsets: Vec<u32>,
    line_points: Vec<u32>,
    point_offsets: Vec<u32>,
    point_lines: Vec<u32>,
    neighbor_offsets: Vec<u32>,
    neighbors: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl Geometry {
    pub fn new(n_points: usize, lines: Vec<Vec<u32>>) -> Result<Self, IncidenceError> {
        let mut lines: Vec<Vec<u32>> = lines
            .into_iter()
            .map(|mut l| {
                l.sort_unstable();
                l
            })
            .collect();
        for l in &lines {
            if l.len() < 2 {
                return Err(IncidenceError::ShortLine(l.clone()));
            }
            if let Some(&p) = l.iter().find(|&&p| p as usize >= n_points) {
                return Err(IncidenceError::PointOutOfRange(p, n_points));
            }
            if l.windows(2).any(|w| w[0] == w[1]) {
                return Err(IncidenceError::RepeatedPointOnLine(l.clone()));
            }
        }
        lines.sort_unstable();
        if let Some(w) = lines.windows(2).find(|w| w[0] == w[1]) {
            return Err(IncidenceError::DuplicateLine(w[0].clone()));
        }

        let mut line_offsets = Vec::with_capacity(lines.len() + 1);
        let mut line_points = Vec::new();
        line_offsets.push(0);
        for l in &lines {
            line_points.extend_from_slice(l);
            line_offsets.push(line_points.len() as u32);
        }

        let mut degree = vec![0u32; n_points];
        for &p in &line_points {
            degree[p as usize] += 1;
        }
        let point_offsets = prefix_sums(&degree);
        let mut fill = point_offsets.clone();
        let mut point_lines = vec![0u32; line_points.len()];
        for (li, l) in lines.iter().enumerate() {
            for &p in l {
                point_lines[fill[p as usize] as usize] = li as u32;
                fill[p as usize] += 1;
            }
        }

        let mut neighbor_offsets = Vec::with_capacity(n_points + 1);
        let mut neighbors = Vec::new();
        neighbor_offsets.push(0);
        for p in 0..n_points {
            let start = neighbors.len();
            for &li in &point_lines[point_offsets[p] as usize..point_offsets[p + 1] as usize] {
                let l = &line_points
                    [line_offsets[li as usize] as usize..line_offsets[li as usize + 1] as usize];
                neighbors.extend(l.iter().copied().filter(|&q| q as usize != p));
            }
            neighbors[start..].sort_unstable();
            let mut k = start;
            for i in start..neighbors.len() {
                if i == start || neighbors[i] != neighbors[k - 1] {
                    neighbors[k] = neighbors[i];
                    k += 1;
                }
            }
            neighbors.truncate(k);
            neighbor_offsets.push(neighbors.len() as u32);
        }

        Ok(Geometry {
            n_points,
            line_offsets,
            line_points,
            point_offsets,
            point_lines,
            neighbor_offsets,
            neighbors,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n_points);
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn n_lines(&self) -> usize {
        self.line_offsets.len() - 1
    }

    #[inline]
    pub fn line(&self, l: u32) -> &[u32] {
        &self.line_points[self.line_offsets[l as usize] as usize..self.line_offsets[l as usize + 1] as usize]
    }

    pub fn lines(&self) -> impl ExactSizeIterator<Item = &[u32]> + '_ {
        (0..self.n_lines() as u32).map(move |l| self.line(l))
    }

    #[inline]
    pub fn lines_through(&self, p: u32) -> &[u32] {
        &self.point_lines[self.point_offsets[p as usize] as usize..self.point_offsets[p as usize + 1] as usize]
    }

    /// Points collinear with `p`, excluding `p`, sorted.
    #[inline]
    pub fn neighbors(&self, p: u32) -> &[u32] {
        &self.neighbors[self.neighbor_offsets[p as usize] as usize..self.neighbor_offsets[p as usize + 1] as usize]
    }

    pub fn line_through(&self, p: u32, q: u32) -> Option<u32> {
        self.lines_through(p)
            .iter()
            .copied()
            .find(|&l| p != q && self.line(l).contains(&q))
    }

    /// Id of the line with exactly this (sorted) point set.
    pub fn find_line(&self, points: &[u32]) -> Option<u32> {
        let (mut lo, mut hi) = (0usize, self.n_lines());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.line(mid as u32).cmp(points) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid as u32),
            }
        }
        None
    }

    /// Any two distinct points share at most one line.
    pub fn is_partial_linear(&self) -> bool {
        (0..self.n_points as u32).all(|p| {
            let through = self.lines_through(p);
            let total: usize = through.iter().map(|&l| self.line(l).len() - 1).sum();
            total == self.neighbors(p).len()
        })
    }

    /// `(s, t)` when every line has `s+1` points and every point lies on `t+1` lines.
    pub fn order(&self) -> Option<(usize, usize)> {
        if self.n_lines() == 0 || self.n_points == 0 {
            return None;
        }
        let k = self.line(0).len();
        if self.lines().any(|l| l.len() != k) {
            return None;
        }
        let r = self.lines_through(0).len();
        if (0..self.n_points as u32).any(|p| self.lines_through(p).len() != r) || r == 0 {
            return None;
        }
        Some((k - 1, r - 1))
    }

    /// Full subgeometry on `points`: keeps exactly the lines lying inside the set.
    pub fn induced(&self, points: &[u32]) -> InducedGeometry {
        let mut old_of_new: Vec<u32> = points.to_vec();
        old_of_new.sort_unstable();
        old_of_new.dedup();
        let mut new_of_old = vec![u32::MAX; self.n_points];
        for (i, &p) in old_of_new.iter().enumerate() {
            new_of_old[p as usize] = i as u32;
        }
        let mut line_ids = Vec::new();
        for &p in &old_of_new {
            for &l in self.lines_through(p) {
                let pts = self.line(l);
                // visit each line once, from its least point
                if pts[0] == p && pts.iter().all(|&q| new_of_old[q as usize] != u32::MAX) {
                    line_ids.push(l);
                }
            }
        }
        line_ids.sort_unstable();
        let lines = line_ids
            .iter()
            .map(|&l| self.line(l).iter().map(|&q| new_of_old[q as usize]).collect())
            .collect();
        let geometry = Geometry::new(old_of_new.len(), lines).expect("induced geometry is valid");
        InducedGeometry {
            geometry,
            old_of_new,
            new_of_old,
            ambient_lines: line_ids,
        }
    }

    /// `points N lines M`, then one line per geometry line as space-separated
    /// 0-based point indices, in lexicographic order.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.line_points.len() * 6 + 32);
        writeln!(out, "points {} lines {}", self.n_points, self.n_lines()).unwrap();
        for l in self.lines() {
            write_indices(&mut out, l);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, IncidenceError> {
        let mut rows = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = rows
            .next()
            .ok_or_else(|| IncidenceError::Format(1, "empty geometry file".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let (n, m) = match fields.as_slice() {
            ["points", n, "lines", m] => (
                n.parse::<usize>()
                    .map_err(|_| IncidenceError::Format(1, "bad point count".into()))?,
                m.parse::<usize>()
                    .map_err(|_| IncidenceError::Format(1, "bad line count".into()))?,
            ),
            _ => return Err(IncidenceError::Format(1, format!("bad header {header:?}"))),
        };
        let lines = rows
            .map(|(i, row)| parse_indices(row).map_err(|e| IncidenceError::Format(i + 1, e)))
            .collect::<Result<Vec<_>, _>>()?;
        if lines.len() != m {
            return Err(IncidenceError::Format(
                0,
                format!("header announces {m} lines, found {}", lines.len()),
            ));
        }
        Geometry::new(n, lines)
    }
}

/// A full subgeometry together with its index maps back into the ambient geometry.
#[derive(Clone, Debug)]
pub struct InducedGeometry {
    pub geometry: Geometry,
    /// Ambient point index of each local point (sorted).
    pub old_of_new: Vec<u32>,
    /// Local index of each ambient point, `u32::MAX` when absent.
    pub new_of_old: Vec<u32>,
    /// Ambient line id of each local line.
    pub ambient_lines: Vec<u32>,
}

impl InducedGeometry {
    pub fn contains(&self, ambient_point: u32) -> bool {
        self.new_of_old[ambient_point as usize] != u32::MAX
    }

    pub fn local(&self, ambient_point: u32) -> Option<u32> {
        let i = self.new_of_old[ambient_point as usize];
        (i != u32::MAX).then_some(i)
    }
}

fn prefix_sums(counts: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(counts.len() + 1);
    let mut acc = 0;
    out.push(0);
    for &c in counts {
        acc += c;
        out.push(acc);
    }
    out
}

pub(crate) fn write_indices(out: &mut String, items: &[u32]) {
    for (k, p) in items.iter().enumerate() {
        if k > 0 {
            out.push(' ');
        }
        write!(out, "{p}").unwrap();
    }
    out.push('\n');
}

pub(crate) fn parse_indices(row: &str) -> Result<Vec<u32>, String> {
    row.split_whitespace()
        .map(|t| t.parse::<u32>().map_err(|_| format!("bad index {t:?}")))
        .collect()
}
