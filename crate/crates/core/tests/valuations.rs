use nearoct::incidence::{classical, DistanceMatrix, Geometry};
use nearoct::valuations::{
    distribution, is_valuation, neighboring_epsilon, neighboring_epsilons, star_product, valuation_vectors, ValType,
    Valuation, ValuationError, VALUE_CAP,
};
use proptest::prelude::*;

/// Every vector with entries up to the cap, checked line by line as soon as
/// a line is fully assigned.
fn brute_force(geom: &Geometry) -> Vec<Vec<u8>> {
    fn ok(line: &[u32], f: &[u8]) -> bool {
        let mut v: Vec<u8> = line.iter().map(|&p| f[p as usize]).collect();
        v.sort_unstable();
        v[0] + 1 == v[1] && v[1..].iter().all(|&x| x == v[1])
    }
    fn go(geom: &Geometry, f: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        let i = f.len();
        if i == geom.n_points() {
            if f.contains(&0) {
                out.push(f.clone());
            }
            return;
        }
        for v in 0..=VALUE_CAP {
            f.push(v);
            let closed = geom
                .lines_through(i as u32)
                .iter()
                .map(|&l| geom.line(l))
                .filter(|l| l.iter().all(|&p| (p as usize) <= i));
            if closed.clone().all(|l| ok(l, f)) {
                go(geom, f, out);
            }
            f.pop();
        }
    }
    let mut out = Vec::new();
    go(geom, &mut Vec::new(), &mut out);
    out
}

#[test]
fn enumeration_matches_brute_force() {
    for (name, g) in [
        ("grid", classical::grid(3)),
        ("w2", classical::w2()),
        ("fano", classical::fano()),
        ("gh21", classical::flag_geometry(&classical::fano())),
    ] {
        let fast = valuation_vectors(&g);
        assert_eq!(fast, brute_force(&g), "{name}");
        for f in &fast {
            assert!(is_valuation(&g, f).unwrap().passed(), "{name}");
        }
    }
}

#[test]
fn projective_plane_has_no_valuations() {
    assert!(valuation_vectors(&classical::fano()).is_empty());
}

#[test]
fn distance_vectors_are_valuations() {
    let g = classical::w2();
    let dm = DistanceMatrix::of(&g);
    let vals = valuation_vectors(&g);
    for x in 0..g.n_points() as u32 {
        assert!(vals.binary_search(&dm.row(x).to_vec()).is_ok());
    }
}

#[test]
fn zero_sets_are_cocliques() {
    let g = classical::w2();
    for f in valuation_vectors(&g) {
        let zeros: Vec<u32> = (0..f.len() as u32).filter(|&i| f[i as usize] == 0).collect();
        for (i, &a) in zeros.iter().enumerate() {
            assert!(zeros[i + 1..].iter().all(|&b| g.line_through(a, b).is_none()));
        }
    }
}

#[test]
fn axiom_failures() {
    let g = classical::grid(3);
    assert!(!is_valuation(&g, &[0; 9]).unwrap().passed());
    assert!(!is_valuation(&g, &[1; 9]).unwrap().passed());
    let r = is_valuation(&g, &[0, 1]);
    assert!(matches!(r, Err(ValuationError::IndexMismatch { expected: 9, found: 2 })));
}

#[test]
fn epsilon_conventions() {
    assert_eq!(neighboring_epsilon(&[0, 1, 2], &[0, 1, 2]), Some(0));
    assert_eq!(neighboring_epsilons(&[0, 1, 2], &[0, 1, 2]), vec![-1, 0, 1]);
    assert_eq!(neighboring_epsilon(&[0, 3], &[0, 0]), None);
    assert_eq!(neighboring_epsilon(&[0, 2], &[1, 1]), Some(0));
    assert_eq!(neighboring_epsilon(&[2, 2], &[0, 1]), Some(-1));
    assert_eq!(neighboring_epsilon(&[0, 0], &[2, 1]), Some(1));
}

#[test]
fn product_with_itself() {
    let g = classical::w2();
    for f in valuation_vectors(&g) {
        assert_eq!(star_product(&g, &f, &f).unwrap(), f);
    }
}

#[test]
fn not_neighboring_is_an_error() {
    let g = classical::grid(3);
    let r = star_product(&g, &[0, 1, 1, 1, 2, 2, 1, 2, 2], &[3; 9]);
    assert!(matches!(r, Err(ValuationError::NotNeighboring)));
}

#[test]
fn classification_by_distribution() {
    let mut a = vec![0u8];
    a.extend([1; 10]);
    a.extend([2; 80]);
    a.extend([3; 160]);
    a.extend([4; 64]);
    let v = Valuation::classify(a.clone()).unwrap();
    assert_eq!(v.vtype(), ValType::A);
    assert_eq!(v.max_value(), 4);
    assert_eq!(Valuation::from_line(&v.to_line()).unwrap(), v);
    a[1] = 5;
    assert_eq!(distribution(&a)[5], 1);
    assert!(matches!(Valuation::classify(a), Err(ValuationError::UnknownDistribution(_))));
    assert!(Valuation::from_line("B0").is_err());
}

fn laws(g: &Geometry, vals: &[Vec<u8>], i: usize, j: usize) -> Result<(), TestCaseError> {
    let (f1, f2) = (&vals[i], &vals[j]);
    if f1 == f2 || neighboring_epsilon(f1, f2).is_none() {
        return Ok(());
    }
    prop_assert_eq!(neighboring_epsilons(f1, f2).len(), 1);
    let f3 = star_product(g, f1, f2).unwrap();
    prop_assert!(vals.binary_search(&f3).is_ok());
    prop_assert!(&f3 != f1 && &f3 != f2);
    prop_assert_eq!(&star_product(g, f2, f1).unwrap(), &f3);
    prop_assert!(neighboring_epsilon(f1, &f3).is_some());
    prop_assert_eq!(&star_product(g, f1, &f3).unwrap(), f2);
    prop_assert!(neighboring_epsilon(f2, &f3).is_some());
    prop_assert_eq!(&star_product(g, f2, &f3).unwrap(), f1);
    Ok(())
}

proptest! {
    #[test]
    fn product_laws_on_the_symplectic_quadrangle(i in 0usize..1000, j in 0usize..1000) {
        let g = classical::w2();
        let vals = valuation_vectors(&g);
        laws(&g, &vals, i % vals.len(), j % vals.len())?;
    }

    #[test]
    fn product_laws_on_the_grid(i in 0usize..1000, j in 0usize..1000) {
        let g = classical::grid(3);
        let vals = valuation_vectors(&g);
        laws(&g, &vals, i % vals.len(), j % vals.len())?;
    }
}
