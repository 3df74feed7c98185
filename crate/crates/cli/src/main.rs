//! `cyclo`: face lattices, verifications, and exports.

mod checks;

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use checks::{Check, ModuleChoice, RunReport};
use cyclo_core::chains::{simplex_complex, ChainComplex};
use cyclo_core::cobar::{
    cobar_module, cobar_operad, deblow_report, deblow_text, free_simplex_module, Arrangement,
};
use cyclo_core::polytopes::{
    build_k_with, build_simplex, build_w_with, enumerate_faces, power_c, HRepPolytope, LevelFn,
};

#[derive(Parser, Debug)]
#[command(
    name = "cyclo",
    version,
    about = "Associahedra, cyclohedra and cyclic operads, verified exactly"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Use c(I) = base^#I for the polytopes.
    #[arg(long, global = true, allow_negative_numbers = true)]
    c_base: Option<i64>,
    /// Lift the arity caps.
    #[arg(long, global = true)]
    unsafe_max_n: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    #[value(name = "K")]
    K,
    #[value(name = "W")]
    W,
    #[value(name = "D")]
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    PosetIso,
    LatticeMatch,
    ModuleAxioms,
    CyclicAxioms,
    Koszul,
    Resiz,
    Ucpavka,
    Spectral,
    Traces,
    Appendix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CobarChoice {
    Ass,
    Cycl,
    Free,
    Simplex,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dump the face lattice of K_n, W_n or the simplex Δ_n.
    Faces {
        #[arg(value_enum)]
        family: FamilyArg,
        n: usize,
    },
    /// Run a verification target.
    Verify {
        #[arg(value_enum)]
        target: Target,
        /// Largest arity checked.
        #[arg(long)]
        max_n: Option<usize>,
        /// Restrict to one operad or module.
        #[arg(long, value_enum)]
        module: Option<ModuleChoice>,
    },
    /// Export an artifact.
    Export {
        #[command(subcommand)]
        what: Export,
    },
}

#[derive(Subcommand, Debug)]
enum Export {
    /// Exact H-representation.
    Hrep {
        #[arg(value_enum)]
        family: FamilyArg,
        n: usize,
    },
    /// A cobar complex, or the cellular chains of Δ̄_n.
    Complex {
        #[arg(long, value_enum)]
        cobar: CobarChoice,
        n: usize,
    },
    /// Cells of W̄_n with their image cells of Δ̄_n.
    DeblowReport { n: usize },
}

enum Failure {
    Usage(String),
    Verification(String),
}

fn check_cap(what: &str, n: usize, cap: usize, common: &Common) -> Result<(), Failure> {
    if n > cap && !common.unsafe_max_n {
        return Err(Failure::Usage(format!(
            "{what}: n = {n} exceeds the cap {cap}; pass --unsafe-max-n to override"
        )));
    }
    Ok(())
}

fn polytope(family: FamilyArg, n: usize, common: &Common) -> Result<HRepPolytope, Failure> {
    let cap = match family {
        FamilyArg::K => 7,
        FamilyArg::W => 6,
        FamilyArg::D => 10,
    };
    check_cap("polytope", n, cap, common)?;
    let min = if family == FamilyArg::K { 2 } else { 1 };
    if n < min {
        return Err(Failure::Usage(format!("n must be at least {min}")));
    }
    let c = power_c(common.c_base.unwrap_or(3));
    let c: LevelFn = &c;
    let p = match family {
        FamilyArg::K => build_k_with(n, c),
        FamilyArg::W => build_w_with(n, c),
        FamilyArg::D => build_simplex(n),
    };
    p.map_err(|e| Failure::Verification(e.to_string()))
}

fn family_name(f: FamilyArg) -> &'static str {
    match f {
        FamilyArg::K => "K",
        FamilyArg::W => "W",
        FamilyArg::D => "D",
    }
}

fn render_json(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn faces(family: FamilyArg, n: usize, common: &Common) -> Result<String, Failure> {
    let p = polytope(family, n, common)?;
    let lat = enumerate_faces(&p);
    Ok(match common.format {
        Format::Text => lat.to_text(),
        Format::Json => {
            let mut v = lat.to_json();
            v["family"] = family_name(family).into();
            v["n"] = n.into();
            v["f_vector"] = lat.f_vector().into();
            render_json(&v)
        }
    })
}

/// Default and hard arity caps per target.
fn caps(target: Target) -> (usize, usize) {
    match target {
        Target::PosetIso => (7, 8),
        Target::LatticeMatch => (4, 6),
        Target::ModuleAxioms => (5, 5),
        Target::CyclicAxioms => (4, 5),
        Target::Koszul => (5, 6),
        Target::Resiz => (6, 7),
        Target::Ucpavka => (4, 5),
        Target::Spectral => (4, 5),
        Target::Traces => (4, 5),
        Target::Appendix => (4, 4),
    }
}

fn verify(
    target: Target,
    max_n: Option<usize>,
    module: Option<ModuleChoice>,
    common: &Common,
) -> Result<(String, bool), Failure> {
    let (default, cap) = caps(target);
    let n = max_n.unwrap_or(default);
    check_cap("verify", n, cap, common)?;
    if n == 0 {
        return Err(Failure::Usage("--max-n must be positive".into()));
    }
    if module.is_some() && !matches!(target, Target::Koszul | Target::ModuleAxioms) {
        return Err(Failure::Usage(
            "--module applies to koszul and module-axioms".into(),
        ));
    }
    if module == Some(ModuleChoice::Free) && target == Target::ModuleAxioms {
        return Err(Failure::Usage(
            "module-axioms takes --module ass, comm or cycl".into(),
        ));
    }
    let checks: Vec<Check> = match target {
        Target::PosetIso => checks::poset_iso(n),
        Target::LatticeMatch => checks::lattice_match(n, common.c_base),
        Target::ModuleAxioms => checks::module_axioms(n, module),
        Target::CyclicAxioms => checks::cyclic_axioms(n),
        Target::Koszul => checks::koszul(n, module),
        Target::Resiz => checks::resiz(n),
        Target::Ucpavka => checks::ucpavka(n, n),
        Target::Spectral => checks::spectral(n),
        Target::Traces => checks::traces(n),
        Target::Appendix => checks::appendix(n),
    };
    let mut params = BTreeMap::from([("max_n".to_string(), n.to_string())]);
    if let Some(m) = module {
        params.insert("module".into(), format!("{m:?}").to_lowercase());
    }
    if let Some(b) = common.c_base {
        params.insert("c_base".into(), b.to_string());
    }
    let name = target
        .to_possible_value()
        .expect("named")
        .get_name()
        .to_string();
    let report = RunReport::new(&format!("verify {name}"), params, checks);
    let text = match common.format {
        Format::Text => report.to_text(),
        Format::Json => render_json(&serde_json::to_value(&report).expect("serializable")),
    };
    Ok((text, report.passed))
}

fn complex_output(c: &ChainComplex, format: Format) -> String {
    match format {
        Format::Text => c.to_text(),
        Format::Json => render_json(&c.to_json()),
    }
}

fn export(what: &Export, common: &Common) -> Result<String, Failure> {
    match what {
        Export::Hrep { family, n } => {
            let p = polytope(*family, *n, common)?;
            Ok(match common.format {
                Format::Text => p.to_text(),
                Format::Json => {
                    let lines: Vec<String> = p.to_text().lines().map(String::from).collect();
                    render_json(
                        &serde_json::json!({ "family": family_name(*family), "n": n, "hyperplanes": lines }),
                    )
                }
            })
        }
        Export::Complex { cobar, n } => {
            check_cap("export complex", *n, 6, common)?;
            if *n == 0 {
                return Err(Failure::Usage("n must be positive".into()));
            }
            let c = match cobar {
                CobarChoice::Ass => cobar_operad(*n),
                CobarChoice::Cycl => cobar_module(*n, Arrangement::Cyclic).complex,
                CobarChoice::Free => free_simplex_module(*n).complex,
                CobarChoice::Simplex => simplex_complex(*n).0,
            };
            Ok(complex_output(&c, common.format))
        }
        Export::DeblowReport { n } => {
            check_cap("export deblow-report", *n, 6, common)?;
            if *n == 0 {
                return Err(Failure::Usage("n must be positive".into()));
            }
            let rows = deblow_report(*n);
            Ok(match common.format {
                Format::Text => deblow_text(&rows),
                Format::Json => render_json(&serde_json::to_value(&rows).expect("serializable")),
            })
        }
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let common = &cli.common;
    let (text, passed) = match &cli.command {
        Command::Faces { family, n } => (faces(*family, *n, common)?, true),
        Command::Verify {
            target,
            max_n,
            module,
        } => verify(*target, *max_n, *module, common)?,
        Command::Export { what } => (export(what, common)?, true),
    };
    emit(&text, &common.out)?;
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
