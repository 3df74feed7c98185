use std::collections::BTreeMap;

use cyclo_core::bracketings::{exotic_intervals, CyclicInterval};
use cyclo_core::polytopes::{
    build_k, build_k_with, build_simplex, build_w, build_w_with, enumerate_faces, power_c,
    FacetLabel, HRepPolytope,
};
use proptest::prelude::*;

fn check_face_dims(p: &HRepPolytope, offset: usize) {
    let lat = enumerate_faces(p);
    for (id, f) in lat.faces.iter().enumerate() {
        assert_eq!(f.dim + f.active.len() + offset, p.n, "{} face {id}", p.n);
    }
}

#[test]
fn face_dimensions() {
    for n in 2..=5 {
        check_face_dims(&build_k(n).unwrap(), 2);
    }
    for n in 1..=4 {
        check_face_dims(&build_w(n).unwrap(), 1);
    }
}

#[test]
fn geometric_facet_counts() {
    for n in 2..=5 {
        let p = build_w(n).unwrap();
        let lat = enumerate_faces(&p);
        let d = p.dim();
        assert_eq!(
            lat.faces.iter().filter(|f| f.dim + 1 == d).count(),
            n * (n - 1),
            "n = {n}"
        );
    }
}

#[test]
fn boundaries_are_spheres() {
    // Σ_{i ≤ d} (−1)^i f_i = 1 for a convex polytope: χ(S^{d−1}) plus the top cell.
    let mut polys = Vec::new();
    for n in 2..=5 {
        polys.push(build_k(n).unwrap());
    }
    for n in 1..=4 {
        polys.push(build_w(n).unwrap());
    }
    for n in 1..=6 {
        polys.push(build_simplex(n).unwrap());
    }
    for p in polys {
        assert_eq!(enumerate_faces(&p).euler(), 1, "{:?} {}", p.family, p.n);
    }
}

#[test]
fn cyclohedron_hyperplanes_extend_associahedron_hyperplanes() {
    for n in 1..=5 {
        let w = build_w(n).unwrap();
        let mut rest: BTreeMap<CyclicInterval, _> = w
            .halfspaces
            .iter()
            .map(|h| match h.label {
                FacetLabel::Cyclic(c) => (c, (h.coeffs.clone(), h.level.clone())),
                other => panic!("unexpected label {other:?}"),
            })
            .collect();
        let k = build_k(n + 1).unwrap();
        assert_eq!(k.ambient, w.ambient);
        for h in &k.halfspaces {
            let FacetLabel::Interval(iv) = h.label else {
                panic!("unexpected label")
            };
            let c = CyclicInterval::normal(n, iv.i, iv.j).unwrap();
            let (coeffs, level) = rest.remove(&c).expect("matching hyperplane");
            assert_eq!(coeffs, h.coeffs);
            assert_eq!(level, h.level);
        }
        let left: Vec<CyclicInterval> = rest.keys().copied().collect();
        let mut exotic = exotic_intervals(n);
        exotic.sort();
        assert_eq!(left, exotic, "n = {n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Any admissible power level function gives the same face lattice sizes.
    #[test]
    fn level_functions_do_not_change_combinatorics(base in 3i64..9, n in 2usize..=4) {
        let c = power_c(base);
        let k = enumerate_faces(&build_k_with(n + 1, &c).unwrap());
        let k3 = enumerate_faces(&build_k(n + 1).unwrap());
        prop_assert_eq!(k.f_vector(), k3.f_vector());
        let w = enumerate_faces(&build_w_with(n, &c).unwrap());
        let w3 = enumerate_faces(&build_w(n).unwrap());
        prop_assert_eq!(w.f_vector(), w3.f_vector());
    }
}

#[test]
fn low_bases_are_inadmissible() {
    let c = power_c(2);
    assert!(build_k_with(4, &c).is_err());
    assert!(build_w_with(3, &c).is_err());
}
