use std::collections::BTreeMap;

use cyclo_core::linalg::{q, SVec};
use cyclo_core::operads::{build_ass, build_cycl};
use cyclo_core::traces::{
    check_nabla, corner_entry, cycl_trace_map, generate_trace_axioms, matrix_trace,
    trace_from_module_map, AInfinityAlgebra, FiniteAlgebra, HomotopyTrace, Multilinear,
};
use proptest::prelude::*;

fn functional(v: [i64; 4]) -> Multilinear {
    Multilinear::from_fn(1, 4, |t| {
        SVec::from([(0, q(v[t[0]]))])
            .into_iter()
            .filter(|(_, c)| *c != q(0))
            .collect()
    })
}

/// `M_2(ℚ)` as an A(∞)-algebra with only `m_2`, and a functional as a
/// homotopy trace valued in `ℚ` with zero differential.
fn strict_pair(f: &Multilinear) -> (AInfinityAlgebra, HomotopyTrace) {
    let alg = FiniteAlgebra::matrices2();
    let a = AInfinityAlgebra {
        names: alg.names.clone(),
        degrees: vec![0; 4],
        ops: BTreeMap::from([(2, alg.word_operation(&[1, 2]))]),
    };
    let t = HomotopyTrace {
        w_names: vec!["w".into()],
        w_degrees: vec![0],
        delta: vec![SVec::new()],
        maps: BTreeMap::from([(1, f.clone())]),
    };
    (a, t)
}

#[test]
fn strict_traces_are_homotopy_traces() {
    let (a, t) = strict_pair(&matrix_trace());
    assert!(a.check_relations(4).is_ok());
    assert!(t.verify(&a, 3).is_ok());
    let (a, t) = strict_pair(&corner_entry());
    assert!(t.verify(&a, 3).is_err());
}

#[test]
fn homotopy_trace_example() {
    let a = AInfinityAlgebra::example();
    assert!(a.check_relations(4).is_ok());
    assert!(HomotopyTrace::example().verify(&a, 4).is_ok());
}

#[test]
fn axioms_render_in_every_arity() {
    for n in 1..=5 {
        for strict in [false, true] {
            let eq = generate_trace_axioms(n, strict).unwrap();
            assert!(!eq.is_empty(), "n = {n}");
            assert!(eq.render(strict).contains(&format!("T_{n}")), "n = {n}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// A functional on `M_2(ℚ)` gives a `Cycl`-trace exactly when it kills
    /// commutators, i.e. when it is a multiple of the matrix trace.
    #[test]
    fn cycl_traces_are_exactly_nabla_maps(v in prop::array::uniform4(-2i64..=2)) {
        let alg = FiniteAlgebra::matrices2();
        let cycl = build_cycl(3);
        let ass = build_ass(3, false);
        let f = functional(v);
        let is_trace = trace_from_module_map(&cycl, &ass, &alg, &cycl_trace_map(&cycl, &alg, &f), 3).is_ok();
        let is_multiple = v[1] == 0 && v[2] == 0 && v[0] == v[3];
        prop_assert_eq!(is_trace, is_multiple);
        prop_assert_eq!(check_nabla(&alg, &f).is_ok(), is_multiple);
    }
}
