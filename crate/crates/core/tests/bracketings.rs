use cyclo_core::bracketings::{
    compose_b, compose_bc, enumerate_b, enumerate_bc, iso_b_i, iso_bc_ic, Bracketing,
    CyclicBracketing,
};
use cyclo_core::combinatorics::{binomial, Permutation};
use proptest::prelude::*;

/// Picks a symmetrized bracketing of arity `n` from a choice stream.
fn pick(n: usize, seed: usize) -> Bracketing {
    let (els, _) = enumerate_b(n);
    let perms = Permutation::all(n);
    let b = &els[seed % els.len()];
    let w = perms[(seed / els.len()) % perms.len()].word();
    Bracketing::with_letters(b.tree().clone(), w).unwrap()
}

fn pick_cyclic(n: usize, seed: usize) -> CyclicBracketing {
    let (els, _) = enumerate_bc(n);
    els[seed % els.len()].clone()
}

/// `γ(b; c_1, …, c_l)` followed by `d_1, …, d_m` equals `b` composed
/// with the `c_s` already composed with their blocks of `d`.
fn nested_children(cs: &[Bracketing], ds: &[Bracketing]) -> Vec<Bracketing> {
    let mut out = Vec::new();
    let mut start = 0;
    for c in cs {
        let block = &ds[start..start + c.arity()];
        out.push(compose_b(c, block).unwrap());
        start += c.arity();
    }
    out
}

fn arities(seeds: &[usize], count: usize, max: usize) -> Vec<usize> {
    seeds.iter().take(count).map(|s| 1 + s % max).collect()
}

proptest! {
    #[test]
    fn operad_associativity(l in 1usize..=3, seeds in proptest::collection::vec(0usize..10_000, 16)) {
        let c_ar = arities(&seeds[1..], l, 2);
        let m: usize = c_ar.iter().sum();
        let d_ar = arities(&seeds[4..], m, 2);
        prop_assume!(d_ar.iter().sum::<usize>() <= 6);
        let b = pick(l, seeds[0]);
        let cs: Vec<Bracketing> = c_ar.iter().enumerate().map(|(i, &a)| pick(a, seeds[10 + i % 6] + i)).collect();
        let ds: Vec<Bracketing> = d_ar.iter().enumerate().map(|(i, &a)| pick(a, seeds[(7 + i) % 16] * 3 + i)).collect();
        let lhs = compose_b(&compose_b(&b, &cs).unwrap(), &ds).unwrap();
        let rhs = compose_b(&b, &nested_children(&cs, &ds)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn module_associativity(l in 1usize..=3, seeds in proptest::collection::vec(0usize..10_000, 16)) {
        let c_ar = arities(&seeds[1..], l, 2);
        let m: usize = c_ar.iter().sum();
        let d_ar = arities(&seeds[4..], m, 2);
        prop_assume!(d_ar.iter().sum::<usize>() <= 6);
        let x = pick_cyclic(l, seeds[0]);
        let cs: Vec<Bracketing> = c_ar.iter().enumerate().map(|(i, &a)| pick(a, seeds[10 + i % 6] + i)).collect();
        let ds: Vec<Bracketing> = d_ar.iter().enumerate().map(|(i, &a)| pick(a, seeds[(7 + i) % 16] * 3 + i)).collect();
        let lhs = compose_bc(&compose_bc(&x, &cs).unwrap(), &ds).unwrap();
        let rhs = compose_bc(&x, &nested_children(&cs, &ds)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn units(n in 1usize..=5, seed in 0usize..10_000) {
        let b = pick(n, seed);
        let ones = vec![Bracketing::trivial(1); n];
        prop_assert_eq!(compose_b(&b, &ones).unwrap(), b.clone());
        prop_assert_eq!(compose_b(&Bracketing::trivial(1), std::slice::from_ref(&b)).unwrap(), b);
        let x = pick_cyclic(n, seed);
        prop_assert_eq!(compose_bc(&x, &ones).unwrap(), x);
    }
}

#[test]
fn poset_isomorphisms() {
    for n in 2..=7 {
        assert!(iso_b_i(n).passed(), "n = {n}");
    }
    for n in 1..=6 {
        assert!(iso_bc_ic(n).passed(), "n = {n}");
    }
}

#[test]
fn minimal_bracketings_are_counted_by_catalan() {
    for n in 2..=8 {
        let (_, p) = enumerate_b(n);
        let m = n - 1;
        assert_eq!(p.minimal().len(), binomial(2 * m, m) / (m + 1), "n = {n}");
    }
}

#[test]
fn single_bracket_cyclic_bracketings() {
    for n in 2..=7 {
        let (els, _) = enumerate_bc(n);
        assert_eq!(
            els.iter().filter(|b| b.codim() == 1).count(),
            n * (n - 1),
            "n = {n}"
        );
    }
}
