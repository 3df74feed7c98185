use cyclo_core::chains::simplex_complex;
use cyclo_core::combinatorics::binomial;
use proptest::prelude::*;

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[test]
fn simplex_chains_square_to_zero() {
    for n in 1..=6 {
        assert!(simplex_complex(n).0.check_d_squared().is_ok(), "n = {n}");
    }
}

#[test]
fn simplex_dims_count_faces_of_each_copy() {
    for n in 1..=6 {
        let dims = simplex_complex(n).0.dims();
        let expected: Vec<usize> = (1..=n).map(|l| binomial(n, l) * factorial(n - 1)).collect();
        assert_eq!(dims, expected, "n = {n}");
    }
}

#[test]
fn disjoint_simplices_are_acyclic_per_component() {
    for n in 1..=5 {
        let c = simplex_complex(n).0;
        let mut expected = vec![0; n];
        expected[0] = factorial(n - 1);
        assert_eq!(c.homology_dims(), expected, "n = {n}");
        assert_eq!(c.euler_characteristic(), factorial(n - 1) as i64);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn reordering_the_basis_keeps_homology(n in 2usize..=4, seed in any::<u64>()) {
        let c = simplex_complex(n).0;
        let mut s = seed;
        let perms: Vec<Vec<usize>> = c
            .dims()
            .iter()
            .map(|&m| {
                let mut p: Vec<usize> = (0..m).collect();
                for i in (1..m).rev() {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    p.swap(i, (s >> 33) as usize % (i + 1));
                }
                p
            })
            .collect();
        let moved = c.permute_basis(&perms);
        prop_assert!(moved.check_d_squared().is_ok());
        prop_assert_eq!(moved.homology_dims(), c.homology_dims());
    }
}
