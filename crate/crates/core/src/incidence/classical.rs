//! Small classical geometries used as test fixtures and oracles.

use super::Geometry;

/// The symplectic quadrangle W(2): totally isotropic lines of PG(3,2).
pub fn w2() -> Geometry {
    // points are nonzero vectors of F_2^4; form x1y2 + x2y1 + x3y4 + x4y3
    let form = |a: u32, b: u32| {
        let bit = |v: u32, i: u32| (v >> i) & 1;
        (bit(a, 0) & bit(b, 1)) ^ (bit(a, 1) & bit(b, 0)) ^ (bit(a, 2) & bit(b, 3)) ^ (bit(a, 3) & bit(b, 2))
    };
    let mut lines = Vec::new();
    for a in 1..16u32 {
        for b in a + 1..16 {
            let c = a ^ b;
            if c > b && form(a, b) == 0 {
                lines.push(vec![a - 1, b - 1, c - 1]);
            }
        }
    }
    Geometry::new(15, lines).expect("W(2) is well formed")
}

/// The Fano plane PG(2,2).
pub fn fano() -> Geometry {
    let lines = (0..7u32).map(|i| vec![i, (i + 1) % 7, (i + 3) % 7]).collect();
    Geometry::new(7, lines).expect("Fano plane is well formed")
}

/// The `n x n` grid: a quadrangle of order `(n-1, 1)`.
pub fn grid(n: u32) -> Geometry {
    let mut lines = Vec::new();
    for i in 0..n {
        lines.push((0..n).map(|j| i * n + j).collect());
        lines.push((0..n).map(|j| j * n + i).collect());
    }
    Geometry::new((n * n) as usize, lines).expect("grid is well formed")
}

/// Flags of `geom` as points, with one line per point and per line of `geom`
/// (the flags containing it). A generalized `d`-gon of order `(s,s)` yields a
/// generalized `2d`-gon of order `(s,1)`.
pub fn flag_geometry(geom: &Geometry) -> Geometry {
    let mut flags = Vec::new();
    for l in 0..geom.n_lines() as u32 {
        for &p in geom.line(l) {
            flags.push((p, l));
        }
    }
    let index = |p: u32, l: u32| flags.iter().position(|&f| f == (p, l)).unwrap() as u32;
    let mut lines = Vec::new();
    for p in 0..geom.n_points() as u32 {
        lines.push(geom.lines_through(p).iter().map(|&l| index(p, l)).collect());
    }
    for l in 0..geom.n_lines() as u32 {
        lines.push(geom.line(l).iter().map(|&p| index(p, l)).collect());
    }
    Geometry::new(flags.len(), lines).expect("flag geometry is well formed")
}

/// A graph as a geometry with 2-point lines.
pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Geometry {
    Geometry::new(n, edges.iter().map(|&(a, b)| vec![a, b]).collect())
        .expect("edge list is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(fano().order(), Some((2, 2)));
        assert_eq!(grid(3).order(), Some((2, 1)));
        let gh21 = flag_geometry(&fano());
        assert_eq!((gh21.n_points(), gh21.n_lines()), (21, 14));
        assert_eq!(gh21.order(), Some((2, 1)));
        let go21 = flag_geometry(&w2());
        assert_eq!((go21.n_points(), go21.n_lines()), (45, 30));
    }
}
