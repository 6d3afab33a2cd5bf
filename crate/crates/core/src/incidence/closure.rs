use super::{DistanceMatrix, Geometry};

/// Points on shortest paths from `a` to `b`, including both ends.
pub fn geodesic_interval(geom: &Geometry, dm: &DistanceMatrix, a: u32, b: u32) -> Vec<u32> {
    let mut out = vec![a];
    let mut frontier = vec![a];
    let row_b = dm.row(b);
    let mut left = row_b[a as usize];
    while left > 0 {
        left -= 1;
        let mut next: Vec<u32> = frontier
            .iter()
            .flat_map(|&u| geom.neighbors(u).iter().copied())
            .filter(|&z| row_b[z as usize] == left)
            .collect();
        next.sort_unstable();
        next.dedup();
        out.extend_from_slice(&next);
        frontier = next;
    }
    out
}

/// Smallest superset of `seed` containing every geodesic between two of its
/// members and every line meeting it in two points. Returned sorted.
pub fn convex_closure(geom: &Geometry, dm: &DistanceMatrix, seed: &[u32]) -> Vec<u32> {
    let mut inside = vec![false; geom.n_points()];
    let mut members: Vec<u32> = Vec::with_capacity(seed.len());
    fn push(p: u32, inside: &mut [bool], members: &mut Vec<u32>) {
        if !inside[p as usize] {
            inside[p as usize] = true;
            members.push(p);
        }
    }
    for &p in seed {
        push(p, &mut inside, &mut members);
    }
    let mut done = 0;
    while done < members.len() {
        let p = members[done];
        for &l in geom.lines_through(p) {
            let pts = geom.line(l);
            if pts.iter().any(|&q| q != p && inside[q as usize]) {
                for &q in pts {
                    push(q, &mut inside, &mut members);
                }
            }
        }
        for k in 0..done {
            let q = members[k];
            if dm.get(p, q) >= 2 {
                for z in geodesic_interval(geom, dm, p, q) {
                    push(z, &mut inside, &mut members);
                }
            }
        }
        done += 1;
    }
    members.sort_unstable();
    members
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::classical;
    use proptest::prelude::*;

    #[test]
    fn small_seeds() {
        let w2 = classical::w2();
        let dm = DistanceMatrix::of(&w2);
        assert_eq!(convex_closure(&w2, &dm, &[4]), vec![4]);
        let line = w2.line(2).to_vec();
        assert_eq!(convex_closure(&w2, &dm, &line[..2]), line);
        let far = dm.at_distance(0, 2).next().unwrap();
        assert_eq!(convex_closure(&w2, &dm, &[0, far]).len(), 15);
    }

    #[test]
    fn interval_in_grid() {
        let g = classical::grid(3);
        let dm = DistanceMatrix::of(&g);
        // opposite corners of a 3x3 grid: the two corners plus the two common neighbours
        let mut iv = geodesic_interval(&g, &dm, 0, 4);
        iv.sort_unstable();
        assert_eq!(iv, vec![0, 1, 3, 4]);
        assert_eq!(convex_closure(&g, &dm, &[0, 4]), vec![0, 1, 2, 3, 4, 5, 6, 7, 8]);
    }

    /// Oracle: iterate the two closure rules over all pairs until nothing changes.
    fn naive_closure(g: &Geometry, dm: &DistanceMatrix, seed: &[u32]) -> Vec<u32> {
        let n = g.n_points() as u32;
        let mut inside = vec![false; n as usize];
        for &p in seed {
            inside[p as usize] = true;
        }
        loop {
            let mut changed = false;
            for a in 0..n {
                for b in 0..n {
                    if !(inside[a as usize] && inside[b as usize]) || a == b {
                        continue;
                    }
                    for z in 0..n {
                        let on_geodesic = dm.get(a, z) + dm.get(z, b) == dm.get(a, b);
                        let on_line = g.line_through(a, b).is_some_and(|l| g.line(l).contains(&z));
                        if (on_geodesic || on_line) && !inside[z as usize] {
                            inside[z as usize] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                return (0..n).filter(|&z| inside[z as usize]).collect();
            }
        }
    }

    proptest! {
        #[test]
        fn closure_matches_oracle_and_is_idempotent(seed in proptest::collection::vec(0u32..21, 1..4), extra in 0u32..21) {
            let g = classical::flag_geometry(&classical::fano());
            let dm = DistanceMatrix::of(&g);
            let c = convex_closure(&g, &dm, &seed);
            prop_assert_eq!(&c, &naive_closure(&g, &dm, &seed));
            prop_assert_eq!(&convex_closure(&g, &dm, &c), &c);
            let bigger: Vec<u32> = seed.iter().copied().chain([extra]).collect();
            let c2 = convex_closure(&g, &dm, &bigger);
            prop_assert!(c.iter().all(|p| c2.binary_search(p).is_ok()));
        }
    }
}
