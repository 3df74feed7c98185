//! Verification runners behind `cyclo verify`.

use std::collections::BTreeMap;

use serde::Serialize;

use cyclo_core::bracketings::{iso_b_i, iso_bc_ic};
use cyclo_core::chains::simplex_complex;
use cyclo_core::cobar::{
    cobar_module, cobar_operad, filtration_pages, identify_cyclohedron, identify_simplex,
    koszul_ass, koszul_cycl, koszul_free_as_cycl, Arrangement,
};
use cyclo_core::combinatorics::factorial;
use cyclo_core::operads::{
    ass_presentation, build_ass, build_comm, build_cycl, check_module_self_duality,
    check_operad_self_duality, comm_presentation, cycl_presentation, cyclic_ass, cyclic_comm,
    relation_free_presentation, uass_data, ucomm_data, verify_cyclic_axioms, verify_m_uass_is_cycl,
    verify_m_ucomm_is_comm, verify_module_axioms, verify_operad_axioms, verify_unital_presentation,
};
use cyclo_core::polytopes::{
    build_k_with, build_w_with, enumerate_faces, match_lattice, power_c, LevelFn,
};
use cyclo_core::traces::{
    check_invariance, check_nabla, compare_with_reference, corner_entry, correspondence,
    cycl_trace_map, form_from_functional, generate_trace_axioms, homotopy_trace_axiom,
    matrix_trace, trace_from_module_map, AInfinityAlgebra, FiniteAlgebra, HomotopyTrace,
};

/// One named check with its outcome.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: Option<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail,
        }
    }

    fn from_result<E: std::fmt::Display>(name: impl Into<String>, r: Result<(), E>) -> Self {
        match r {
            Ok(()) => Check::new(name, true, None),
            Err(e) => Check::new(name, false, Some(e.to_string())),
        }
    }

    fn from_debug<T: std::fmt::Debug>(name: impl Into<String>, passed: bool, report: &T) -> Self {
        Check::new(
            name,
            passed,
            if passed {
                None
            } else {
                Some(format!("{report:?}"))
            },
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl RunReport {
    pub fn new(command: &str, parameters: BTreeMap<String, String>, checks: Vec<Check>) -> Self {
        RunReport {
            command: command.to_string(),
            parameters,
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            match &c.detail {
                Some(d) => out.push_str(&format!("{tag} {}: {d}\n", c.name)),
                None => out.push_str(&format!("{tag} {}\n", c.name)),
            }
        }
        let n = self.checks.len();
        let ok = self.checks.iter().filter(|c| c.passed).count();
        out.push_str(&format!(
            "{} {ok}/{n} checks passed\n",
            if self.passed { "PASS" } else { "FAIL" }
        ));
        out
    }
}

/// Which algebraic object a target restricts to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ModuleChoice {
    Ass,
    Comm,
    Cycl,
    Free,
}

pub fn poset_iso(max_n: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        let r = iso_b_i(n);
        out.push(Check::from_debug(
            format!("B({n}) ≅ I({n})"),
            r.passed(),
            &r,
        ));
    }
    for n in 1..=max_n {
        let r = iso_bc_ic(n);
        out.push(Check::from_debug(
            format!("BC({n}) ≅ IC({n})"),
            r.passed(),
            &r,
        ));
    }
    out
}

pub fn lattice_match(max_n: usize, c_base: Option<i64>) -> Vec<Check> {
    let base = c_base.unwrap_or(3);
    let c = power_c(base);
    let c: LevelFn = &c;
    let mut out = Vec::new();
    for n in 2..=max_n {
        out.push(match build_k_with(n, c) {
            Ok(p) => {
                let r = match_lattice(&enumerate_faces(&p));
                Check::from_debug(format!("K_{n} ≅ I({n}), c = {base}^#I"), r.passed(), &r)
            }
            Err(e) => Check::new(format!("K_{n}, c = {base}^#I"), false, Some(e.to_string())),
        });
    }
    for n in 1..=max_n {
        out.push(match build_w_with(n, c) {
            Ok(p) => {
                let r = match_lattice(&enumerate_faces(&p));
                Check::from_debug(format!("W_{n} ≅ IC({n}), c = {base}^#I"), r.passed(), &r)
            }
            Err(e) => Check::new(format!("W_{n}, c = {base}^#I"), false, Some(e.to_string())),
        });
    }
    out
}

pub fn module_axioms(max_n: usize, module: Option<ModuleChoice>) -> Vec<Check> {
    let want = |m: ModuleChoice| module.is_none() || module == Some(m);
    let mut out = Vec::new();
    if want(ModuleChoice::Ass) {
        out.push(Check::from_result(
            format!("Ass operad axioms, arity ≤ {max_n}"),
            verify_operad_axioms(&build_ass(max_n, true), max_n),
        ));
        let r = verify_unital_presentation(&cyclic_ass(max_n, true), &uass_data(), max_n);
        out.push(match r {
            Ok(r) => Check::from_debug("M_UAss = ⟨ϑ; Ass; Ker s⟩", r.passed(), &r),
            Err(e) => Check::new("M_UAss = ⟨ϑ; Ass; Ker s⟩", false, Some(e.to_string())),
        });
    }
    if want(ModuleChoice::Comm) {
        out.push(Check::from_result(
            format!("Comm operad axioms, arity ≤ {max_n}"),
            verify_operad_axioms(&build_comm(max_n, true), max_n),
        ));
        out.push(Check::from_result(
            format!("M_UComm ≅ Comm, arity ≤ {max_n}"),
            verify_m_ucomm_is_comm(max_n),
        ));
        let r = verify_unital_presentation(&cyclic_comm(max_n, true), &ucomm_data(), max_n);
        out.push(match r {
            Ok(r) => Check::from_debug("M_UComm = ⟨ϑ; Comm; Ker s⟩", r.passed(), &r),
            Err(e) => Check::new("M_UComm = ⟨ϑ; Comm; Ker s⟩", false, Some(e.to_string())),
        });
    }
    if want(ModuleChoice::Cycl) {
        let ass = build_ass(max_n, false);
        out.push(Check::from_result(
            format!("Cycl module axioms, arity ≤ {max_n}"),
            verify_module_axioms(&build_cycl(max_n), &ass, max_n),
        ));
        out.push(Check::from_result(
            format!("M_UAss ≅ Cycl, arity ≤ {max_n}"),
            verify_m_uass_is_cycl(max_n),
        ));
    }
    out
}

pub fn cyclic_axioms(max_n: usize) -> Vec<Check> {
    vec![
        Check::from_result(
            format!("cyclic axioms for Ass, arity ≤ {max_n}"),
            verify_cyclic_axioms(&cyclic_ass(max_n, true), max_n),
        ),
        Check::from_result(
            format!("cyclic axioms for Comm, arity ≤ {max_n}"),
            verify_cyclic_axioms(&cyclic_comm(max_n, true), max_n),
        ),
    ]
}

pub fn koszul(max_n: usize, module: Option<ModuleChoice>) -> Vec<Check> {
    let mut out = Vec::new();
    let choices: Vec<ModuleChoice> = match module {
        Some(m) => vec![m],
        None => vec![ModuleChoice::Ass, ModuleChoice::Cycl],
    };
    for m in choices {
        match m {
            ModuleChoice::Ass => {
                for n in 1..=max_n {
                    let r = koszul_ass(n);
                    out.push(Check::from_debug(
                        format!("H(Ω Ass)({n}) = {}! in degree 0", n),
                        r.passed(),
                        &r,
                    ));
                }
                let r = check_operad_self_duality(&ass_presentation(), max_n.clamp(3, 4));
                out.push(match r {
                    Ok(r) => Check::from_debug("Ass^! ≅ Ass", r.passed(), &r),
                    Err(e) => Check::new("Ass^! ≅ Ass", false, Some(e.to_string())),
                });
            }
            ModuleChoice::Comm => {
                let r = check_operad_self_duality(&comm_presentation(), max_n.clamp(3, 4));
                // Comm is not self-dual; its dual is Lie.
                out.push(match r {
                    Ok(r) => Check::new(
                        "Comm^! has dims 1, 1, 2, 6",
                        r.dual_dims.iter().take(4).eq([1usize, 1, 2, 6].iter()),
                        Some(format!("dual dims {:?}", r.dual_dims)),
                    ),
                    Err(e) => Check::new("Comm^!", false, Some(e.to_string())),
                });
            }
            ModuleChoice::Cycl => {
                for n in 1..=max_n {
                    let r = koszul_cycl(n);
                    out.push(Check::from_debug(
                        format!("H(Ω(Cycl, Ass))({n}) = {}! in degree 0", n - 1),
                        r.passed(),
                        &r,
                    ));
                }
                let r = check_module_self_duality(&cycl_presentation(&build_ass(3, false)), 1);
                out.push(match r {
                    Ok(r) => Check::from_debug("Cycl^! ≅ Cycl", r.passed(), &r),
                    Err(e) => Check::new("Cycl^! ≅ Cycl", false, Some(e.to_string())),
                });
            }
            ModuleChoice::Free => {
                for n in 1..=max_n {
                    let r = koszul_free_as_cycl(n);
                    out.push(Check::from_debug(
                        format!("relation-free module: H({n}) = {}! in degree 0", n - 1),
                        r.passed(),
                        &r,
                    ));
                }
                let r = check_module_self_duality(&relation_free_presentation(), 1);
                out.push(match r {
                    Ok(r) => Check::from_debug("relation-free module self-dual", r.passed(), &r),
                    Err(e) => {
                        Check::new("relation-free module self-dual", false, Some(e.to_string()))
                    }
                });
            }
        }
    }
    out
}

pub fn resiz(max_n: usize) -> Vec<Check> {
    (1..=max_n)
        .map(|n| {
            let r = identify_simplex(n);
            Check::from_debug(format!("ω: (sCycl∘Ass)({n}) ≅ CC(Δ̄_{n})"), r.passed(), &r)
        })
        .collect()
}

pub fn ucpavka(max_n: usize, combinatorial_max_n: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.push(Check::from_result(
            format!("∂² = 0 on CC(Δ̄_{n})"),
            simplex_complex(n).0.check_d_squared(),
        ));
        out.push(Check::from_result(
            format!("∂² = 0 on Ω(Ass)({n})"),
            cobar_operad(n).check_d_squared(),
        ));
        out.push(Check::from_result(
            format!("∂² = 0 on Ω(Cycl, Ass)({n})"),
            cobar_module(n, Arrangement::Cyclic)
                .complex
                .check_d_squared(),
        ));
        let r = identify_cyclohedron(n, true);
        out.push(Check::from_debug(
            format!("Ω(Cycl, Ass)({n}) ≅ CC(W̄_{n}), geometric"),
            r.passed(),
            &r,
        ));
    }
    for n in 1..=combinatorial_max_n {
        let r = identify_cyclohedron(n, false);
        out.push(Check::from_debug(
            format!("Ω(Cycl, Ass)({n}) ≅ CC(W̄_{n}), combinatorial"),
            r.passed(),
            &r,
        ));
    }
    out
}

pub fn spectral(max_n: usize) -> Vec<Check> {
    (1..=max_n)
        .map(|n| {
            let r = filtration_pages(n);
            let name = format!(
                "filtration spectral sequence, n = {n}: E^2 = E^∞ of total dim {}",
                factorial(n - 1)
            );
            Check::from_debug(name, r.passed(), &r)
        })
        .collect()
}

pub fn traces(max_n: usize) -> Vec<Check> {
    let mut out = Vec::new();
    match compare_with_reference() {
        Ok(cs) => {
            for c in cs {
                let name = format!(
                    "{} axiom, n = {}",
                    if c.strict { "strict" } else { "general" },
                    c.n
                );
                let detail = if c.matches {
                    None
                } else {
                    Some(format!("generated {} vs {}", c.generated, c.reference))
                };
                out.push(Check::new(name, c.matches, detail));
            }
        }
        Err(e) => out.push(Check::new(
            "reference forms parse",
            false,
            Some(e.to_string()),
        )),
    }
    for n in 1..=max_n {
        let ok = generate_trace_axioms(n, false)
            .map(|e| e.render(false) == homotopy_trace_axiom(n).render(false));
        out.push(Check::new(
            format!("transcription equals (Ax), n = {n}"),
            ok == Ok(true),
            None,
        ));
    }
    let cap = max_n.max(2);
    let (alg, cycl, ass) = (
        FiniteAlgebra::matrices2(),
        build_cycl(cap),
        build_ass(cap, false),
    );
    let tr = matrix_trace();
    out.push(Check::from_result(
        "matrix trace on M_2(ℚ) is a Cycl-trace",
        trace_from_module_map(&cycl, &ass, &alg, &cycl_trace_map(&cycl, &alg, &tr), cap),
    ));
    out.push(Check::new(
        "matrix trace satisfies T(ab) = T(ba)",
        check_nabla(&alg, &tr).is_ok(),
        None,
    ));
    let corner = corner_entry();
    let rejected = trace_from_module_map(
        &cycl,
        &ass,
        &alg,
        &cycl_trace_map(&cycl, &alg, &corner),
        cap,
    );
    out.push(Check::new(
        "(1,1)-entry rejected as a Cycl-trace",
        rejected.is_err(),
        rejected.err().map(|w| format!("witness: {w}")),
    ));
    let a = AInfinityAlgebra::example();
    let cap = max_n.clamp(2, 4);
    out.push(Check::from_result(
        format!("A(∞) relations of the example, arity ≤ {cap}"),
        a.check_relations(cap),
    ));
    out.push(Check::from_result(
        format!("homotopy trace on the example, arity ≤ {cap}"),
        HomotopyTrace::example().verify(&a, cap),
    ));
    out
}

pub fn appendix(max_n: usize) -> Vec<Check> {
    let alg = FiniteAlgebra::matrices2();
    let c = cyclic_ass(max_n.min(3), false);
    let mut out = vec![Check::from_result(
        format!("B(x, y) = tr(xy) is invariant, n ≤ {}", max_n.min(3)),
        check_invariance(
            &c,
            &alg,
            &form_from_functional(&alg, &matrix_trace()),
            max_n.min(3),
        ),
    )];
    let bad = check_invariance(
        &c,
        &alg,
        &form_from_functional(&alg, &corner_entry()),
        max_n.min(3),
    );
    out.push(Check::new(
        "B(x, y) = (xy)_{11} rejected as non-invariant",
        bad.is_err(),
        bad.err().map(|w| format!("witness: {w}")),
    ));
    let cap = max_n.max(2);
    for (name, f) in [
        ("matrix-trace form", matrix_trace()),
        ("zero form", cyclo_core::traces::Multilinear::zero(1, 4)),
    ] {
        match correspondence(&alg, &f, cap) {
            Ok(r) => out.push(Check::from_debug(
                format!("{name} ↔ M_UAss-trace round trip, arity ≤ {cap}"),
                r.passed(),
                &r,
            )),
            Err(e) => out.push(Check::new(
                format!("{name} round trip"),
                false,
                Some(e.to_string()),
            )),
        }
    }
    out
}
