use super::Geometry;

/// Marks unreachable pairs; larger than any diameter that fits a `u8`.
pub const INFINITE: u8 = u8::MAX;

/// All-pairs hop distances in a collinearity graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u8>,
}

impl DistanceMatrix {
    pub fn of(geom: &Geometry) -> Self {
        Self::from_neighbors(geom.n_points(), |p| geom.neighbors(p))
    }

    pub(crate) fn from_neighbors<'a, F>(n: usize, neighbors: F) -> Self
    where
        F: Fn(u32) -> &'a [u32],
    {
        let mut dist = vec![INFINITE; n * n];
        let mut queue = Vec::with_capacity(n);
        for src in 0..n {
            let row = &mut dist[src * n..(src + 1) * n];
            row[src] = 0;
            queue.clear();
            queue.push(src as u32);
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                let du = row[u as usize];
                for &v in neighbors(u) {
                    if row[v as usize] == INFINITE {
                        row[v as usize] = du + 1;
                        queue.push(v);
                    }
                }
            }
        }
        DistanceMatrix { n, dist }
    }

    pub fn n_points(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: u32, y: u32) -> u8 {
        self.dist[x as usize * self.n + y as usize]
    }

    #[inline]
    pub fn row(&self, x: u32) -> &[u8] {
        &self.dist[x as usize * self.n..(x as usize + 1) * self.n]
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.row(0).iter().all(|&d| d != INFINITE)
    }

    /// Largest finite distance, or `None` when disconnected.
    pub fn diameter(&self) -> Option<usize> {
        if !self.is_connected() {
            return None;
        }
        self.dist.iter().max().map(|&d| d as usize)
    }

    /// Number of points at distance `0, 1, ..` from `x`; unreachable points are not counted.
    pub fn distribution(&self, x: u32) -> Vec<usize> {
        let mut out = Vec::new();
        for &d in self.row(x).iter().filter(|&&d| d != INFINITE) {
            if out.len() <= d as usize {
                out.resize(d as usize + 1, 0);
            }
            out[d as usize] += 1;
        }
        out
    }

    pub fn at_distance(&self, x: u32, k: u8) -> impl Iterator<Item = u32> + '_ {
        self.row(x)
            .iter()
            .enumerate()
            .filter(move |(_, &d)| d == k)
            .map(|(i, _)| i as u32)
    }

    /// Least distance from `x` to any point of `set`.
    pub fn to_set(&self, x: u32, set: &[u32]) -> u8 {
        let row = self.row(x);
        set.iter().map(|&p| row[p as usize]).min().unwrap_or(INFINITE)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::classical;

    #[test]
    fn single_line() {
        let g = Geometry::new(3, vec![vec![0, 1, 2]]).unwrap();
        let dm = DistanceMatrix::of(&g);
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(dm.get(x, y), u8::from(x != y));
            }
        }
    }

    #[test]
    fn disconnected_pair() {
        let g = Geometry::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let dm = DistanceMatrix::of(&g);
        assert_eq!(dm.get(0, 2), INFINITE);
        assert!(!dm.is_connected());
        assert_eq!(dm.diameter(), None);
        assert_eq!(dm.distribution(0), vec![1, 1]);
    }

    #[test]
    fn w2_distribution() {
        let dm = DistanceMatrix::of(&classical::w2());
        for x in 0..15 {
            assert_eq!(dm.distribution(x), vec![1, 6, 8]);
        }
        assert_eq!(dm.diameter(), Some(2));
    }

    #[test]
    fn metric_axioms_on_grid() {
        let g = classical::grid(4);
        let dm = DistanceMatrix::of(&g);
        let n = g.n_points() as u32;
        for x in 0..n {
            for y in 0..n {
                assert_eq!(dm.get(x, y), dm.get(y, x));
                assert_eq!(dm.get(x, y) == 1, g.line_through(x, y).is_some());
                for z in 0..n {
                    assert!(dm.get(x, z) <= dm.get(x, y) + dm.get(y, z));
                }
            }
        }
    }
}
