use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gral_core::Caps;
use gral_harness::format::{read_document, resolve, Document, FormatError, Resolved};
use gral_harness::{replay, run_suite, Report, SuiteConfig, SUITES};
use gral_pgasm::asm::{find_realizer, product};
use gral_pgasm::pathcat::{is_fibration, path_object, pseudopullback_asm, pullback_asm};
use gral_pgasm::{dependent_product, weak_exponential, Asm, RealizedMorphism};

/// Finite groupoids, groupoidal assemblies and their axiom suites.
#[derive(Parser)]
#[command(name = "gral", version)]
struct Cli {
    /// Generator seed.
    #[arg(long, global = true, env = "GRAL_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = Caps::default().max_objects)]
    max_objects: usize,
    #[arg(long, global = true, default_value_t = Caps::default().max_morphisms)]
    max_morphisms: usize,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a file and validate every groupoid, assembly and functor in it.
    Check { file: PathBuf },
    /// Build a construction from blocks of an input file.
    Build {
        kind: Kind,
        /// Block names: assemblies for product, exp and pathobj; functors
        /// between assemblies for the others.
        names: Vec<String>,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Run an axiom suite, or all of them.
    Suite {
        name: Option<String>,
        /// Re-run the suite recorded in a counterexample payload.
        #[arg(long)]
        replay: Option<PathBuf>,
        /// Replace one fixture by a broken one.
        #[arg(long)]
        inject_fault: bool,
        /// Raise every instance count to at least this.
        #[arg(long)]
        min_instances: Option<usize>,
    },
    /// Print a file in canonical form.
    Fmt { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Product,
    Exp,
    Pathobj,
    Pullback,
    Pseudopullback,
    Pif,
}

/// Exit 1: a check failed. Exit 2: the input is malformed.
enum Failure {
    Check(String),
    Input(String),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<gral_core::Error> for Failure {
    fn from(e: gral_core::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(file: &Path) -> Result<Resolved, Failure> {
    let doc = read_document(file)?;
    Ok(resolve(&doc, file.parent())?)
}

fn check(cli: &Cli, file: &Path) -> Result<(), Failure> {
    let r = load(file)?;
    let mut lines = Vec::new();
    let mut failed = 0;
    for name in &r.order {
        let problems: Vec<String> = if let Some(g) = r.groupoids.get(name) {
            g.validate().violations.iter().map(|v| format!("{v:?}")).collect()
        } else if let Some(a) = r.assemblies.get(name) {
            a.rfun.validate().iter().map(|v| format!("{v:?}")).collect()
        } else {
            r.functors[name].fun.validate().iter().map(|v| format!("{v:?}")).collect()
        };
        failed += usize::from(!problems.is_empty());
        lines.push((name.clone(), problems));
    }
    let text = if cli.json {
        let v: Vec<_> = lines
            .iter()
            .map(|(n, p)| serde_json::json!({ "name": n, "passed": p.is_empty(), "problems": p }))
            .collect();
        serde_json::to_string_pretty(&v).expect("json") + "\n"
    } else {
        lines
            .iter()
            .map(|(n, p)| match p.first() {
                None => format!("pass {n}\n"),
                Some(first) => format!("FAIL {n}: {first}\n"),
            })
            .collect()
    };
    emit(cli, &text)?;
    if failed > 0 {
        return Err(Failure::Check(format!("{failed} blocks failed")));
    }
    Ok(())
}

fn assembly(r: &Resolved, name: &str) -> Result<Asm, Failure> {
    r.assemblies
        .get(name)
        .cloned()
        .ok_or_else(|| Failure::Input(format!("no assembly named {name}")))
}

/// A functor block between assemblies, with its least realizer.
fn realized(r: &Resolved, name: &str, caps: &Caps) -> Result<RealizedMorphism, Failure> {
    let f = r
        .functors
        .get(name)
        .ok_or_else(|| Failure::Input(format!("no functor named {name}")))?;
    let (Some(x), Some(y)) = (&f.dom_asm, &f.cod_asm) else {
        return Err(Failure::Input(format!("{name} is not a functor between assemblies")));
    };
    find_realizer(x, y, &f.fun, caps)?.ok_or_else(|| Failure::Check(format!("{name} has no realizer")))
}

fn build(cli: &Cli, kind: Kind, names: &[String], input: &Path) -> Result<(), Failure> {
    let caps = Caps::new(cli.max_objects, cli.max_morphisms)?;
    let r = load(input)?;
    let arity = match kind {
        Kind::Pathobj => 1,
        _ => 2,
    };
    if names.len() != arity {
        return Err(Failure::Input(format!("expected {arity} names, got {}", names.len())));
    }
    let asm = match kind {
        Kind::Product => product(&assembly(&r, &names[0])?, &assembly(&r, &names[1])?, &caps)?.asm,
        Kind::Exp => weak_exponential(&assembly(&r, &names[0])?, &assembly(&r, &names[1])?, &caps)?.asm,
        Kind::Pathobj => path_object(&assembly(&r, &names[0])?, &caps)?.exp.asm.clone(),
        Kind::Pullback => pullback_asm(&realized(&r, &names[0], &caps)?, &realized(&r, &names[1], &caps)?, &caps)?.asm,
        Kind::Pseudopullback => {
            pseudopullback_asm(&realized(&r, &names[0], &caps)?, &realized(&r, &names[1], &caps)?, &caps)?.asm
        }
        Kind::Pif => {
            let fib = |n: &str| -> Result<_, Failure> {
                is_fibration(&realized(&r, n, &caps)?).map_err(|e| Failure::Check(format!("{n}: {}", e.description)))
            };
            let (f, g) = (fib(&names[0])?, fib(&names[1])?);
            dependent_product(&g, &f, &caps)?.asm
        }
    };
    let mut doc = Document::new();
    doc.push_assembly("result", &asm);
    let text = if cli.json { doc.to_json() + "\n" } else { doc.to_string() };
    emit(cli, &text)
}

fn suite(cli: &Cli, name: Option<&str>, replay_file: Option<&Path>, inject_fault: bool, min_instances: Option<usize>) -> Result<(), Failure> {
    let reports: Vec<Report> = if let Some(p) = replay_file {
        let src = std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
        let v: serde_json::Value = serde_json::from_str(&src).map_err(|e| Failure::Input(e.to_string()))?;
        vec![replay(&v).map_err(|e| Failure::Input(e.to_string()))?]
    } else {
        let cfg = SuiteConfig {
            seed: cli.seed,
            max_objects: cli.max_objects,
            max_morphisms: cli.max_morphisms,
            min_instances,
            inject_fault,
        };
        let names: Vec<&str> = match name {
            None | Some("all") => SUITES.to_vec(),
            Some(n) => vec![n],
        };
        names
            .iter()
            .map(|n| run_suite(n, &cfg).map_err(|e| Failure::Input(e.to_string())))
            .collect::<Result<_, _>>()?
    };
    let text = if cli.json {
        let v: Vec<&Report> = reports.iter().collect();
        serde_json::to_string_pretty(&v).expect("json") + "\n"
    } else {
        reports.iter().map(Report::to_string).collect()
    };
    emit(cli, &text)?;
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.suite.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!("failed: {}", failed.join(", "))))
    }
}

fn fmt(cli: &Cli, file: &Path) -> Result<(), Failure> {
    let doc = read_document(file)?;
    let text = if cli.json { doc.to_json() + "\n" } else { doc.to_string() };
    emit(cli, &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Check { file } => check(&cli, file),
        Cmd::Build { kind, names, input } => build(&cli, *kind, names, input),
        Cmd::Suite {
            name,
            replay,
            inject_fault,
            min_instances,
        } => suite(&cli, name.as_deref(), replay.as_deref(), *inject_fault, *min_instances),
        Cmd::Fmt { file } => fmt(&cli, file),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(m)) => {
            eprintln!("gral: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("gral: {m}");
            ExitCode::from(2)
        }
    }
}
