use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use super::{Geometry, IncidenceError, INFINITE};

/// A simple undirected graph on `0..n` with bit-row adjacency and a label per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    rows: Vec<FixedBitSet>,
    labels: Vec<String>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            rows: vec![FixedBitSet::with_capacity(n); n],
            labels: (0..n).map(|i| i.to_string()).collect(),
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut g = Graph::new(n);
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    /// Collinearity graph of a geometry.
    pub fn collinearity(geom: &Geometry) -> Self {
        let mut g = Graph::new(geom.n_points());
        for p in 0..geom.n_points() as u32 {
            for &q in geom.neighbors(p) {
                g.rows[p as usize].insert(q as usize);
            }
        }
        g
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n());
        self.labels = labels;
        self
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn add_edge(&mut self, a: u32, b: u32) {
        assert_ne!(a, b, "loops are not allowed");
        self.rows[a as usize].insert(b as usize);
        self.rows[b as usize].insert(a as usize);
    }

    #[inline]
    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.rows[a as usize].contains(b as usize)
    }

    pub fn degree(&self, v: u32) -> usize {
        self.rows[v as usize].count_ones(..)
    }

    pub fn neighbors(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        self.rows[v as usize].ones().map(|u| u as u32)
    }

    pub fn row(&self, v: u32) -> &FixedBitSet {
        &self.rows[v as usize]
    }

    #[inline]
    pub fn common_neighbors(&self, a: u32, b: u32) -> usize {
        self.rows[a as usize].intersection_count(&self.rows[b as usize])
    }

    pub fn n_edges(&self) -> usize {
        (0..self.n() as u32).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<u32>> {
        (0..self.n() as u32).map(|v| self.neighbors(v).collect()).collect()
    }

    pub fn distances_from(&self, src: u32) -> Vec<u8> {
        let mut dist = vec![INFINITE; self.n()];
        dist[src as usize] = 0;
        let mut queue = vec![src];
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for v in self.neighbors(u) {
                if dist[v as usize] == INFINITE {
                    dist[v as usize] = dist[u as usize] + 1;
                    queue.push(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.distances_from(0).iter().all(|&d| d != INFINITE)
    }

    pub fn diameter(&self) -> Option<usize> {
        adjacency_diameter(&self.adjacency_lists())
    }

    pub fn girth(&self) -> Option<usize> {
        adjacency_girth(&self.adjacency_lists())
    }

    pub fn is_bipartite(&self) -> bool {
        let mut colour = vec![u8::MAX; self.n()];
        for s in 0..self.n() {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            let mut stack = vec![s as u32];
            while let Some(u) = stack.pop() {
                for v in self.neighbors(u) {
                    if colour[v as usize] == u8::MAX {
                        colour[v as usize] = 1 - colour[u as usize];
                        stack.push(v);
                    } else if colour[v as usize] == colour[u as usize] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `vertices N edges M`, one `label I TEXT` line per vertex, then one
    /// `I: J K ..` adjacency line per vertex.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "vertices {} edges {}", self.n(), self.n_edges()).unwrap();
        for (i, l) in self.labels.iter().enumerate() {
            writeln!(out, "label {i} {l}").unwrap();
        }
        for v in 0..self.n() as u32 {
            write!(out, "{v}:").unwrap();
            for u in self.neighbors(v) {
                write!(out, " {u}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, IncidenceError> {
        let mut rows = text.lines().enumerate();
        let bad = |i: usize, m: &str| IncidenceError::Format(i + 1, m.to_string());
        let (_, header) = rows.next().ok_or_else(|| bad(0, "empty graph file"))?;
        let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["vertices", n, "edges", _] => n.parse::<usize>().map_err(|_| bad(0, "bad vertex count"))?,
            _ => return Err(bad(0, "bad header")),
        };
        let mut g = Graph::new(n);
        for (i, row) in rows {
            if let Some(rest) = row.strip_prefix("label ") {
                let (idx, label) = rest.split_once(' ').unwrap_or((rest, ""));
                let idx: usize = idx.parse().map_err(|_| bad(i, "bad label index"))?;
                if idx >= n {
                    return Err(bad(i, "label index out of range"));
                }
                g.labels[idx] = label.to_string();
            } else if let Some((v, adj)) = row.split_once(':') {
                let v: u32 = v.trim().parse().map_err(|_| bad(i, "bad vertex"))?;
                for u in super::parse_indices(adj).map_err(|e| bad(i, &e))? {
                    if u as usize >= n || v as usize >= n || u == v {
                        return Err(bad(i, "bad adjacency"));
                    }
                    g.add_edge(v, u);
                }
            } else if !row.trim().is_empty() {
                return Err(bad(i, "unrecognised line"));
            }
        }
        Ok(g)
    }
}

pub(crate) fn adjacency_diameter(adj: &[Vec<u32>]) -> Option<usize> {
    let n = adj.len();
    let mut best = 0;
    let mut dist = vec![u32::MAX; n];
    let mut queue = Vec::with_capacity(n);
    for s in 0..n {
        dist.fill(u32::MAX);
        dist[s] = 0;
        queue.clear();
        queue.push(s as u32);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head] as usize;
            head += 1;
            for &v in &adj[u] {
                if dist[v as usize] == u32::MAX {
                    dist[v as usize] = dist[u] + 1;
                    queue.push(v);
                }
            }
        }
        if queue.len() != n {
            return None;
        }
        best = best.max(dist[*queue.last().unwrap() as usize] as usize);
    }
    Some(best)
}

/// Length of a shortest cycle, by a BFS from every vertex.
pub(crate) fn adjacency_girth(adj: &[Vec<u32>]) -> Option<usize> {
    let n = adj.len();
    let mut best = usize::MAX;
    let mut dist = vec![u32::MAX; n];
    let mut parent = vec![u32::MAX; n];
    let mut queue = Vec::with_capacity(n);
    for s in 0..n {
        dist.fill(u32::MAX);
        dist[s] = 0;
        parent[s] = u32::MAX;
        queue.clear();
        queue.push(s as u32);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head] as usize;
            head += 1;
            if 2 * dist[u] as usize + 1 >= best {
                break;
            }
            for &v in &adj[u] {
                let vi = v as usize;
                if dist[vi] == u32::MAX {
                    dist[vi] = dist[u] + 1;
                    parent[vi] = u as u32;
                    queue.push(v);
                } else if parent[u] != v {
                    best = best.min((dist[u] + dist[vi] + 1) as usize);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> Graph {
        Graph::from_edges(n as usize, (0..n).map(|i| (i, (i + 1) % n)))
    }

    #[test]
    fn cycle_invariants() {
        for n in 3..9 {
            let c = cycle(n);
            assert_eq!(c.girth(), Some(n as usize));
            assert_eq!(c.diameter(), Some(n as usize / 2));
            assert_eq!(c.is_bipartite(), n % 2 == 0);
        }
    }

    #[test]
    fn tree_has_no_girth() {
        let path = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]);
        assert_eq!(path.girth(), None);
        assert_eq!(path.diameter(), Some(3));
        let split = Graph::from_edges(4, [(0, 1), (2, 3)]);
        assert_eq!(split.diameter(), None);
        assert!(!split.is_connected());
    }

    #[test]
    fn text_roundtrip() {
        let g = cycle(5).with_labels((0..5).map(|i| format!("v{i}")).collect());
        let back = Graph::from_text(&g.to_text()).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.common_neighbors(0, 2), 1);
        assert!(Graph::from_text("vertices 2 edges 1\n0: 0\n").is_err());
    }

    #[test]
    fn petersen_girth_five() {
        let mut g = Graph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        assert_eq!(g.girth(), Some(5));
        assert_eq!(g.diameter(), Some(2));
    }
}
