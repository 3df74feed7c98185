use cyclo_core::cobar::{
    cobar_module, cobar_operad, filtration_pages, identify_cyclohedron, koszul_cycl, Arrangement,
};
use cyclo_core::combinatorics::binomial;
use cyclo_core::polytopes::{build_w, enumerate_faces};

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Planar trees with `n` leaves and `j + 1` internal vertices, i.e.
/// dissections of an `(n + 1)`-gon by `j` diagonals.
fn dissections(n: usize, j: usize) -> usize {
    let m = n + 1;
    binomial(m - 3, j) * binomial(m + j - 1, j) / (j + 1)
}

#[test]
fn operad_cobar_dims_count_labeled_planar_trees() {
    for n in 2..=5 {
        let dims = cobar_operad(n).dims();
        let expected: Vec<usize> = (0..n - 1)
            .map(|d| factorial(n) * dissections(n, n - 2 - d))
            .collect();
        assert_eq!(dims, expected, "n = {n}");
    }
}

#[test]
fn module_cobar_dims_count_cyclohedron_faces() {
    for n in 1..=4 {
        let dims = cobar_module(n, Arrangement::Cyclic).complex.dims();
        let f = enumerate_faces(&build_w(n).unwrap()).f_vector();
        let expected: Vec<usize> = f.iter().map(|&x| x * factorial(n - 1)).collect();
        assert_eq!(dims, expected, "n = {n}");
    }
}

#[test]
fn euler_characteristics() {
    for n in 1..=5 {
        assert_eq!(
            cobar_operad(n).euler_characteristic(),
            factorial(n) as i64,
            "n = {n}"
        );
        let m = cobar_module(n, Arrangement::Cyclic).complex;
        assert_eq!(m.euler_characteristic(), factorial(n - 1) as i64, "n = {n}");
    }
}

#[test]
fn differentials_square_to_zero() {
    for n in 1..=5 {
        assert!(cobar_operad(n).check_d_squared().is_ok(), "n = {n}");
        assert!(
            cobar_module(n, Arrangement::Cyclic)
                .complex
                .check_d_squared()
                .is_ok(),
            "n = {n}"
        );
        assert!(
            cobar_module(n, Arrangement::Linear)
                .complex
                .check_d_squared()
                .is_ok(),
            "n = {n}"
        );
    }
}

#[test]
fn cyclic_cobar_is_koszul() {
    for n in 1..=5 {
        let r = koszul_cycl(n);
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.homology.iter().sum::<usize>(), factorial(n - 1));
    }
}

#[test]
fn combinatorial_cells() {
    for n in 1..=5 {
        let r = identify_cyclohedron(n, false);
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn filtration_collapses_at_e2() {
    for n in 1..=4 {
        let r = filtration_pages(n);
        assert!(
            r.filtration_closed && r.e1_matches_simplex && r.d1_matches_simplex,
            "{r:?}"
        );
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.e_infinity_total, factorial(n - 1));
    }
}
