use std::collections::BTreeSet;

use cyclo_core::combinatorics::{
    chi, coset_project, enumerate_planar_trees, koszul_sign, Permutation,
};
use proptest::prelude::*;

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn degree_vectors(n: usize) -> Vec<Vec<i64>> {
    (0..1u32 << n)
        .map(|m| (0..n).map(|i| (m >> i & 1) as i64).collect())
        .collect()
}

#[test]
fn composition_is_associative_and_inverses_cancel() {
    for n in 1..=5 {
        let all = Permutation::all(n);
        let id = Permutation::identity(n);
        for a in &all {
            assert_eq!(a.inverse().compose(a), id);
            assert_eq!(a.compose(&a.inverse()), id);
        }
        // Associativity on all triples is 120³ for n = 5; sample a stride.
        let step = if n == 5 { 7 } else { 1 };
        for a in all.iter().step_by(step) {
            for b in all.iter().step_by(step) {
                for c in all.iter().step_by(step) {
                    assert_eq!(a.compose(b).compose(c), a.compose(&b.compose(c)));
                }
            }
        }
    }
}

#[test]
fn chi_is_a_cocycle_on_sigma_4() {
    let all = Permutation::all(4);
    for d in degree_vectors(4) {
        for s in &all {
            let permuted: Vec<i64> = (1..=4).map(|i| d[s.apply(i) - 1]).collect();
            for t in &all {
                let lhs = chi(&s.compose(t), &d).unwrap();
                let rhs = chi(s, &d).unwrap() * chi(t, &permuted).unwrap();
                assert_eq!(lhs, rhs, "σ = {s}, τ = {t}, degrees {d:?}");
            }
        }
    }
}

/// Sign of sorting the graded letters of the word `σ(1) … σ(n)` back into
/// `1 … n` by adjacent swaps, counted directly.
fn bubble_koszul(s: &Permutation, d: &[i64]) -> i32 {
    let mut w: Vec<usize> = s.images().to_vec();
    let mut sign = 1;
    for i in 0..w.len() {
        for j in 0..w.len() - 1 - i {
            if w[j] > w[j + 1] {
                if d[w[j] - 1] * d[w[j + 1] - 1] % 2 != 0 {
                    sign = -sign;
                }
                w.swap(j, j + 1);
            }
        }
    }
    sign
}

proptest! {
    #[test]
    fn koszul_sign_matches_bubble_sort((s, d) in (1usize..=7).prop_flat_map(|n| (perm_strategy(n), proptest::collection::vec(0i64..=1, n)))) {
        prop_assert_eq!(koszul_sign(&s, &d).unwrap(), bubble_koszul(&s, &d));
    }

    #[test]
    fn chi_cocycle_random((s, t, d) in (1usize..=7).prop_flat_map(|n| (perm_strategy(n), perm_strategy(n), proptest::collection::vec(0i64..=3, n)))) {
        let permuted: Vec<i64> = (1..=s.len()).map(|i| d[s.apply(i) - 1]).collect();
        prop_assert_eq!(chi(&s.compose(&t), &d).unwrap(), chi(&s, &d).unwrap() * chi(&t, &permuted).unwrap());
    }

    #[test]
    fn coset_projection_absorbs_rotations((s, k) in (1usize..=6).prop_flat_map(|n| (perm_strategy(n), 0..n))) {
        let n = s.len();
        let zeta = Permutation::rotation(n, k);
        prop_assert_eq!(coset_project(&zeta.compose(&s)), coset_project(&s));
    }
}

#[test]
fn coset_fibres_are_rotation_orbits() {
    for n in 1..=6 {
        let all = Permutation::all(n);
        for s in &all {
            let orbit: BTreeSet<Permutation> = (0..n)
                .map(|k| Permutation::rotation(n, k).compose(s))
                .collect();
            let fibre: BTreeSet<Permutation> = all
                .iter()
                .filter(|t| coset_project(t) == coset_project(s))
                .cloned()
                .collect();
            assert_eq!(orbit, fibre, "n = {n}, σ = {s}");
        }
    }
}

#[test]
fn planar_tree_counts_follow_the_schroeder_recurrence() {
    // (m + 1) a(m) = 3(2m − 1) a(m − 1) − (m − 2) a(m − 2), a(0) = a(1) = 1,
    // and trees with n leaves number a(n − 1).
    let mut a: Vec<i64> = vec![1, 1];
    for m in 2..8i64 {
        let v = (3 * (2 * m - 1) * a[m as usize - 1] - (m - 2) * a[m as usize - 2]) / (m + 1);
        a.push(v);
    }
    for n in 1..=8 {
        assert_eq!(enumerate_planar_trees(n).len() as i64, a[n - 1], "n = {n}");
    }
}
