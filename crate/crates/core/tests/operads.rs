use std::collections::BTreeMap;

use cyclo_core::chains::simplex_complex;
use cyclo_core::combinatorics::binomial;
use cyclo_core::operads::{
    ass_presentation, build_ass, build_cycl, comm_presentation, cycl_collection_only, cyclic_ass,
    free_binary_dim, free_module, free_operad, koszul_dual_operad, quadratic_quotient,
    regular_generators, verify_comp_reconstruction, verify_cyclic_axioms, verify_module_axioms,
    verify_operad_axioms,
};

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn catalan(m: usize) -> usize {
    binomial(2 * m, m) / (m + 1)
}

#[test]
fn free_operad_on_regular_generators() {
    let f = free_operad(&regular_generators(), 5).unwrap();
    for n in 1..=5 {
        // Planar binary trees with all leaf labelings.
        let expected = if n == 1 {
            1
        } else {
            factorial(n) * catalan(n - 1)
        };
        assert_eq!(f.operad.coll.dim(n), expected, "n = {n}");
        assert_eq!(free_binary_dim(n, 2), expected, "n = {n}");
    }
}

#[test]
fn quotients_have_classical_dims() {
    let ass = quadratic_quotient(&ass_presentation(), 5, "Ass").unwrap();
    let lie =
        quadratic_quotient(&koszul_dual_operad(&comm_presentation()).unwrap(), 5, "Lie").unwrap();
    let comm = quadratic_quotient(&comm_presentation(), 5, "Comm").unwrap();
    for n in 1..=5 {
        assert_eq!(ass.operad.coll.dim(n), factorial(n), "Ass({n})");
        assert_eq!(lie.operad.coll.dim(n), factorial(n - 1), "Lie({n})");
        assert_eq!(comm.operad.coll.dim(n), 1, "Comm({n})");
    }
}

#[test]
fn koszul_duality_is_involutive() {
    for pres in [ass_presentation(), comm_presentation()] {
        let twice = koszul_dual_operad(&koszul_dual_operad(&pres).unwrap()).unwrap();
        let a = quadratic_quotient(&pres, 4, "P").unwrap();
        let b = quadratic_quotient(&twice, 4, "P!!").unwrap();
        for n in 1..=4 {
            assert_eq!(a.operad.coll.dim(n), b.operad.coll.dim(n), "n = {n}");
        }
    }
}

#[test]
fn cycl_is_an_ass_module_through_arity_five() {
    let ass = build_ass(5, false);
    assert!(verify_operad_axioms(&ass, 5).is_ok());
    let cycl = build_cycl(5);
    for n in 1..=5 {
        assert_eq!(cycl.coll.dim(n), factorial(n - 1), "n = {n}");
    }
    assert!(verify_module_axioms(&cycl, &ass, 5).is_ok());
    assert!(verify_comp_reconstruction(5).is_ok());
    assert!(verify_cyclic_axioms(&cyclic_ass(5, true), 5).is_ok());
}

#[test]
fn free_module_on_suspended_cycl_matches_simplex_cells() {
    for n in 1..=4 {
        let ass = build_ass(n, false);
        let m = free_module(&cycl_collection_only(n).suspend(), &ass, n).unwrap();
        let expected: BTreeMap<i64, usize> = simplex_complex(n)
            .0
            .dims()
            .into_iter()
            .enumerate()
            .map(|(d, x)| (d as i64, x))
            .collect();
        assert_eq!(m.coll.graded_dims()[&n], expected, "n = {n}");
    }
}
