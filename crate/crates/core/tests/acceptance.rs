//! Acceptance run: one PASS/FAIL line per criterion.

use std::process::ExitCode;

use cyclo_core::bracketings::{cyclic_intervals, iso_b_i, iso_bc_ic};
use cyclo_core::chains::simplex_complex;
use cyclo_core::cobar::{
    cobar_module, cobar_operad, filtration_pages, identify_cyclohedron, identify_simplex,
    koszul_ass, koszul_cycl, koszul_free_as_cycl, Arrangement,
};
use cyclo_core::operads::{
    ass_presentation, build_ass, build_cycl, check_module_self_duality, check_operad_self_duality,
    cycl_presentation, cyclic_ass, relation_free_presentation, verify_cyclic_axioms,
    verify_m_uass_is_cycl, verify_m_ucomm_is_comm,
};
use cyclo_core::polytopes::{
    build_k_with, build_w, build_w_with, enumerate_faces, facet_census, facet_product_check,
    match_lattice, power_c,
};
use cyclo_core::traces::{
    check_invariance, compare_with_reference, corner_entry, correspondence, cycl_trace_map,
    form_from_functional, matrix_trace, trace_from_module_map, FiniteAlgebra,
};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn poset_isomorphisms() -> Outcome {
    for n in 2..=7 {
        let r = iso_b_i(n);
        ensure(r.passed(), || format!("B({n}) vs I({n}): {r:?}"))?;
    }
    for n in 1..=6 {
        let r = iso_bc_ic(n);
        ensure(r.passed(), || format!("BC({n}) vs IC({n}): {r:?}"))?;
    }
    Ok("B(n) ≅ I(n) for 2 ≤ n ≤ 7, BC(n) ≅ IC(n) for 1 ≤ n ≤ 6".into())
}

fn geometric_realization() -> Outcome {
    for base in [3, 4] {
        let c = power_c(base);
        for n in 2..=5 {
            let p = build_k_with(n, &c).map_err(|e| e.to_string())?;
            let r = match_lattice(&enumerate_faces(&p));
            ensure(r.passed(), || format!("K_{n}, c = {base}^#I: {r:?}"))?;
        }
        for n in 1..=4 {
            let p = build_w_with(n, &c).map_err(|e| e.to_string())?;
            let r = match_lattice(&enumerate_faces(&p));
            ensure(r.passed(), || format!("W_{n}, c = {base}^#I: {r:?}"))?;
        }
    }
    Ok(
        "K_n ≅ I(n) for n ≤ 5 and W_n ≅ IC(n) for n ≤ 4 with face dimensions, c = 3^#I and 4^#I"
            .into(),
    )
}

fn facet_census_check() -> Outcome {
    for n in 1..=6 {
        let facets = cyclic_intervals(n).len();
        ensure(facets == n * (n - 1), || {
            format!("W_{n} has {facets} facets")
        })?;
    }
    let lat = enumerate_faces(&build_w(4).map_err(|e| e.to_string())?);
    let census = facet_census(&lat);
    let count = |v: usize| census.values().filter(|&&x| x == v).count();
    ensure(
        census.len() == 12 && count(6) == 4 && count(4) == 4 && count(5) == 4,
        || format!("W_4 facets: {census:?}"),
    )?;
    for k in 2..=4 {
        let r = facet_product_check(4, k).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("facet b_{{{k},4}}: {r:?}"))?;
    }
    Ok("n(n−1) facets for n ≤ 6; W_4: 4 hexagons, 4 squares, 4 pentagons; products for k = 2, 3, 4".into())
}

fn d_squared() -> Outcome {
    for n in 1..=5 {
        simplex_complex(n)
            .0
            .check_d_squared()
            .map_err(|w| format!("CC(Δ̄_{n}): {w}"))?;
        cobar_operad(n)
            .check_d_squared()
            .map_err(|w| format!("Ω(Ass)({n}): {w}"))?;
        cobar_module(n, Arrangement::Cyclic)
            .complex
            .check_d_squared()
            .map_err(|w| format!("Ω(Cycl, Ass)({n}): {w}"))?;
    }
    Ok("∂² = 0 on CC(Δ̄_n), Ω(Ass)(n), Ω(Cycl, Ass)(n) for n ≤ 5".into())
}

fn omega_bijection() -> Outcome {
    for n in 1..=6 {
        let r = identify_simplex(n);
        ensure(r.passed(), || format!("n = {n}: {r:?}"))?;
    }
    Ok("ω is a degreewise bijective chain map, dims C(n−1, l−1)·n!/l, n ≤ 6".into())
}

fn cyclohedron_cells() -> Outcome {
    for n in 1..=4 {
        let r = identify_cyclohedron(n, true);
        ensure(r.passed(), || format!("geometric, n = {n}: {r:?}"))?;
    }
    for n in 1..=5 {
        let r = identify_cyclohedron(n, false);
        ensure(r.passed(), || format!("combinatorial, n = {n}: {r:?}"))?;
    }
    Ok(
        "Ω(Cycl, Ass)(n) ↔ cells of W̄_n with incidences, geometric n ≤ 4, combinatorial n ≤ 5"
            .into(),
    )
}

fn koszulness() -> Outcome {
    for n in 1..=5 {
        let a = koszul_ass(n);
        ensure(a.passed(), || format!("Ass, n = {n}: {a:?}"))?;
        let c = koszul_cycl(n);
        ensure(c.passed(), || format!("Cycl, n = {n}: {c:?}"))?;
    }
    Ok("H(Ω Ass)(n) = n! and H(Ω(Cycl, Ass))(n) = (n−1)!, degree 0 only, n ≤ 5".into())
}

fn self_duality() -> Outcome {
    let r = check_operad_self_duality(&ass_presentation(), 4).map_err(|e| e.to_string())?;
    ensure(r.passed(), || format!("Ass: {r:?}"))?;
    let m = check_module_self_duality(&cycl_presentation(&build_ass(3, false)), 1)
        .map_err(|e| e.to_string())?;
    ensure(
        m.passed() && m.trivial_part == 1 && m.sign_part == 1,
        || format!("Cycl: {m:?}"),
    )?;
    Ok(format!(
        "Ass^! ≅ Ass via e^∨ ↦ {}; Cycl^! ≅ Cycl with (X∘Ass)(2) = 1 ⊕ sgn, R^⊥ = sgn",
        r.identification.unwrap_or_default()
    ))
}

fn spectral_sequence() -> Outcome {
    for n in 1..=4 {
        let r = filtration_pages(n);
        ensure(r.passed(), || format!("n = {n}: {r:?}"))?;
    }
    Ok("F_p closed, E^1 in row 0 equal to CC(Δ̄_n) with d^1 = simplex boundary, E^2 = E^∞ of dim (n−1)!, n ≤ 4".into())
}

fn associated_modules() -> Outcome {
    verify_m_uass_is_cycl(5).map_err(|w| format!("M_UAss ≅ Cycl: {w}"))?;
    verify_m_ucomm_is_comm(5).map_err(|w| format!("M_UComm ≅ Comm: {w}"))?;
    verify_cyclic_axioms(&cyclic_ass(4, true), 4).map_err(|w| format!("cyclic Ass: {w}"))?;
    Ok("M_UAss ≅ Cycl, M_UComm ≅ Comm for arity ≤ 5; cyclic axioms for Ass, arity ≤ 4".into())
}

fn traces() -> Outcome {
    for c in compare_with_reference().map_err(|e| e.to_string())? {
        ensure(c.matches, || {
            format!("n = {}: generated {} vs {}", c.n, c.generated, c.reference)
        })?;
    }
    let alg = FiniteAlgebra::matrices2();
    let cycl = build_cycl(4);
    let ass = build_ass(4, false);
    trace_from_module_map(
        &cycl,
        &ass,
        &alg,
        &cycl_trace_map(&cycl, &alg, &matrix_trace()),
        4,
    )
    .map_err(|w| format!("matrix trace: {w}"))?;
    let r = correspondence(&alg, &matrix_trace(), 4).map_err(|e| e.to_string())?;
    ensure(r.passed(), || format!("correspondence: {r:?}"))?;
    Ok("axioms for n ≤ 3 match the reference forms; matrix trace is a Cycl-trace; form ↔ trace round-trips".into())
}

fn negative_controls() -> Outcome {
    let corrupted = cobar_operad(4).with_flipped_sign(2, 0);
    let w1 = corrupted
        .check_d_squared()
        .err()
        .ok_or("sign-corrupted differential accepted")?;
    let alg = FiniteAlgebra::matrices2();
    let w2 = check_invariance(
        &cyclic_ass(3, false),
        &alg,
        &form_from_functional(&alg, &corner_entry()),
        3,
    )
    .err()
    .ok_or("non-invariant form accepted")?;
    let free = koszul_free_as_cycl(2);
    ensure(!free.passed(), || {
        "relation-free module accepted as Cycl by homology".into()
    })?;
    let dual =
        check_module_self_duality(&relation_free_presentation(), 1).map_err(|e| e.to_string())?;
    ensure(!dual.passed(), || {
        "relation-free module accepted as self-dual".into()
    })?;
    Ok(format!(
        "∂² ≠ 0 at {w1}; {w2}; relation-free module: H_0(2) = {} ≠ 1, dim M^!(2) = {} ≠ 1",
        free.homology.first().copied().unwrap_or(0),
        dual.dual_dim_two
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("poset isomorphisms", poset_isomorphisms),
        ("geometric realization", geometric_realization),
        ("facet census", facet_census_check),
        ("∂² = 0", d_squared),
        ("ω bijective chain map", omega_bijection),
        ("cobar cells of W̄_n", cyclohedron_cells),
        ("Koszulness", koszulness),
        ("Koszul self-duality", self_duality),
        ("spectral sequence", spectral_sequence),
        ("associated modules", associated_modules),
        ("traces", traces),
        ("negative controls", negative_controls),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(msg) => println!("PASS {:>2} {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
