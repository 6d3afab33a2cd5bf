use nearoct::incidence::{check_srg, classical, Graph, Parameters, Verdict};
use proptest::prelude::*;

/// `(k, lambda, mu)` straight from the adjacency matrix, or `None` when the
/// graph is not regular or some count varies.
fn oracle(n: usize, adj: &[Vec<bool>]) -> Option<(usize, Option<usize>, Option<usize>)> {
    let deg: Vec<usize> = adj.iter().map(|r| r.iter().filter(|&&b| b).count()).collect();
    if deg.iter().any(|&d| d != deg[0]) {
        return None;
    }
    let mut lambda = None;
    let mut mu = None;
    for a in 0..n {
        for b in a + 1..n {
            let c = (0..n).filter(|&z| adj[a][z] && adj[b][z]).count();
            let slot = if adj[a][b] { &mut lambda } else { &mut mu };
            if slot.is_some_and(|s| s != c) {
                return None;
            }
            *slot = Some(c);
        }
    }
    Some((deg[0], lambda, mu))
}

fn matrix(n: usize, edges: &[(u32, u32)]) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; n]; n];
    for &(a, b) in edges {
        adj[a as usize][b as usize] = true;
        adj[b as usize][a as usize] = true;
    }
    adj
}

fn agree(n: usize, edges: &[(u32, u32)]) -> Result<(), TestCaseError> {
    let report = check_srg(&Graph::from_edges(n, edges.iter().copied()));
    match oracle(n, &matrix(n, edges)) {
        None => prop_assert_eq!(report.verdict, Verdict::Fail),
        Some((k, lambda, mu)) => {
            prop_assert!(report.passed());
            prop_assert_eq!(report.verdict == Verdict::Complete, mu.is_none());
            prop_assert_eq!(report.parameters, Parameters::Srg { v: n, k, lambda, mu });
        }
    }
    Ok(())
}

fn pairs(n: usize) -> Vec<(u32, u32)> {
    (0..n as u32).flat_map(|a| (a + 1..n as u32).map(move |b| (a, b))).collect()
}

#[test]
fn every_graph_up_to_six_vertices() {
    for n in 1..=6 {
        let all = pairs(n);
        for mask in 0u32..1 << all.len() {
            let edges: Vec<(u32, u32)> =
                all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            agree(n, &edges).unwrap();
        }
    }
}

/// Known strongly regular graphs on at most 50 vertices.
fn known() -> Vec<(usize, Vec<(u32, u32)>)> {
    let mut out = Vec::new();
    let collinear = |g: &nearoct::incidence::Geometry| {
        let gr = Graph::collinearity(g);
        let e: Vec<(u32, u32)> = pairs(gr.n()).into_iter().filter(|&(a, b)| gr.has_edge(a, b)).collect();
        (gr.n(), e)
    };
    out.push(collinear(&classical::w2()));
    out.push(collinear(&classical::grid(5)));
    // Paley graphs on 13, 29 and 37 vertices
    for q in [13u32, 29, 37] {
        let squares: Vec<u32> = (1..q).map(|x| x * x % q).collect();
        let e = pairs(q as usize).into_iter().filter(|&(a, b)| squares.contains(&(b - a))).collect();
        out.push((q as usize, e));
    }
    // triangular graph T(10): 2-subsets of a 10-set meeting in one element
    let subsets: Vec<(u32, u32)> = pairs(10);
    let e = pairs(subsets.len())
        .into_iter()
        .filter(|&(i, j)| {
            let (a, b) = (subsets[i as usize], subsets[j as usize]);
            a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1
        })
        .collect();
    out.push((45, e));
    out
}

#[test]
fn known_graphs_pass() {
    let expected = [(15, 6, 1, 3), (25, 8, 3, 2), (13, 6, 2, 3), (29, 14, 6, 7), (37, 18, 8, 9), (45, 16, 8, 4)];
    for ((n, e), (v, k, l, m)) in known().into_iter().zip(expected) {
        assert_eq!(n, v);
        let r = check_srg(&Graph::from_edges(n, e));
        assert_eq!(r.parameters, Parameters::Srg { v, k, lambda: Some(l), mu: Some(m) });
    }
}

proptest! {
    #[test]
    fn random_graphs(n in 2usize..=50, density in 0.0f64..1.0, bits in proptest::collection::vec(0.0f64..1.0, 1225)) {
        let edges: Vec<(u32, u32)> = pairs(n).into_iter().zip(&bits).filter(|(_, &u)| u < density).map(|(e, _)| e).collect();
        agree(n, &edges)?;
    }

    #[test]
    fn relabelled_and_perturbed_known_graphs(which in 0usize..6, shift in 1u32..50, flip in proptest::option::of((0u32..50, 0u32..50))) {
        let (n, edges) = known().swap_remove(which);
        let relabel = |v: u32| (v * shift.max(1) + 1) % n as u32;
        let coprime = (2..=n as u32).all(|p| !((n as u32).is_multiple_of(p) && shift.is_multiple_of(p)));
        prop_assume!(coprime);
        let mut adj = matrix(n, &edges.iter().map(|&(a, b)| (relabel(a), relabel(b))).collect::<Vec<_>>());
        if let Some((a, b)) = flip {
            let (a, b) = ((a as usize) % n, (b as usize) % n);
            if a != b {
                adj[a][b] = !adj[a][b];
                adj[b][a] = adj[a][b];
            }
        }
        let e: Vec<(u32, u32)> = pairs(n).into_iter().filter(|&(a, b)| adj[a as usize][b as usize]).collect();
        agree(n, &e)?;
    }
}
