use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use pbwcalc::calculus::{
    self, check_pbw_conditions, check_representation, default_window, partials, rho_matrix, BasisChange, CalculusSpec,
};
use pbwcalc::error::Error;
use pbwcalc::expr::eval_str;
use pbwcalc::liealg::{self, GenIndex, LieAlgebra, Window};
use pbwcalc::rewrite::confluence_report;
use pbwcalc::sampling::{seed_from_env, DEFAULT_SEED};
use pbwcalc::solver::{self, inconsistency_certificate, residual_system, CertificateOutcome};

#[derive(Parser)]
#[command(name = "pbwcalc", version, about = "Differential calculi on enveloping algebras in the PBW basis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CalculusArgs {
    /// Algebra id, e.g. heisenberg:1, sl2, witt
    #[arg(short = 'a', long = "algebra")]
    algebra: Option<String>,
    /// Calculus id (witt:mu), name on the algebra given by -a (IV), or a JSON file
    #[arg(short = 'c', long = "calculus")]
    calculus: String,
    /// Index window LO..HI for integer-indexed algebras, or `full`
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
}

#[derive(Args)]
struct ExprArgs {
    #[command(flatten)]
    cal: CalculusArgs,
    /// Expression, e.g. "p1*d(q1)"
    expr: String,
}

#[derive(Subcommand)]
enum Command {
    /// Print the normal form of an expression
    Nf(ExprArgs),
    /// Print the differential of an expression
    D(ExprArgs),
    /// Print the partial derivatives of a degree-0 expression
    Partials(ExprArgs),
    /// Check the consistency conditions and the overlaps of a calculus
    Check(CalculusArgs),
    /// Print the matrices of rho and check the representation equations
    Rep(CalculusArgs),
    /// Rewrite a calculus in a new basis
    Transform {
        #[command(flatten)]
        cal: CalculusArgs,
        /// JSON file {"tau": [[..], ..]}; column i holds the old coordinates of new generator i
        #[arg(long)]
        tau: String,
        /// Fail unless the basis change is an automorphism of the algebra
        #[arg(long)]
        check_auto: bool,
    },
    /// Verify or list the known solution families
    Family {
        #[command(subcommand)]
        command: FamilyCommand,
    },
    /// Sample the general solution of the linear condition on a semisimple algebra
    Refute {
        #[arg(short = 'a', long = "algebra")]
        algebra: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Defaults to PBWCALC_SEED, then 42
        #[arg(long)]
        seed: Option<u64>,
        /// Also search for an inconsistency certificate
        #[arg(long)]
        certificate: bool,
        #[arg(long, default_value_t = 4)]
        degree: u32,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// List catalog algebras and calculi
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
}

#[derive(Subcommand)]
enum FamilyCommand {
    Verify { id: String },
    List,
}

#[derive(Subcommand)]
enum CatalogCommand {
    List,
}

/// Result of a command: text to print and whether the check it ran passed.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

fn load_calculus(args: &CalculusArgs) -> pbwcalc::Result<CalculusSpec> {
    let c = args.calculus.as_str();
    if c.ends_with(".json") || Path::new(c).is_file() {
        let text = std::fs::read_to_string(c)?;
        let name = Path::new(c).file_stem().and_then(|s| s.to_str()).unwrap_or(c);
        return CalculusSpec::from_json(&text, name);
    }
    match &args.algebra {
        Some(a) => calculus::calculus_on(a, c).or_else(|_| calculus::calculus(c)),
        None => calculus::calculus(c),
    }
}

fn window_for(args: &CalculusArgs, g: &LieAlgebra) -> pbwcalc::Result<Window> {
    match &args.window {
        Some(w) => w.parse(),
        None => Ok(default_window(g)),
    }
}

fn label(g: &LieAlgebra, i: GenIndex) -> String {
    if g.is_finite() {
        g.index_name(i)
    } else {
        i.to_string()
    }
}

fn verified(args: &CalculusArgs) -> pbwcalc::Result<Arc<CalculusSpec>> {
    let mut cal = load_calculus(args)?;
    let window = window_for(args, cal.algebra())?;
    cal.verify(&window)?;
    Ok(Arc::new(cal))
}

fn run_check(args: &CalculusArgs) -> pbwcalc::Result<Outcome> {
    let cal = load_calculus(args)?;
    let g = cal.algebra();
    let window = window_for(args, g)?;
    let report = check_pbw_conditions(&cal, &window)?;
    let overlaps = confluence_report(&cal, &window)?;
    let mut out = String::new();
    writeln!(out, "calculus: {}", cal.name()).unwrap();
    writeln!(out, "window: {window}").unwrap();
    match report.linear.first() {
        None => writeln!(out, "linear condition: ok").unwrap(),
        Some(f) => writeln!(
            out,
            "linear condition: {} failures; first (i, j, k) = ({}, {}, {}), residual {}",
            report.linear.len(),
            label(g, f.i),
            label(g, f.j),
            label(g, f.k),
            f.residual
        )
        .unwrap(),
    }
    match report.quadratic.first() {
        None => writeln!(out, "quadratic condition: ok").unwrap(),
        Some(f) => writeln!(
            out,
            "quadratic condition: {} failures; first (i, j, k, r) = ({}, {}, {}, {}), residual {}",
            report.quadratic.len(),
            label(g, f.i),
            label(g, f.j),
            label(g, f.k),
            label(g, f.r),
            f.residual
        )
        .unwrap(),
    }
    match overlaps.first() {
        None => writeln!(out, "overlaps: ok").unwrap(),
        Some(f) => writeln!(
            out,
            "overlaps: {} failures; first {:?} at {}",
            overlaps.len(),
            f.case,
            f.word
        )
        .unwrap(),
    }
    Ok(Outcome {
        text: out,
        ok: report.is_clean() && overlaps.is_empty(),
    })
}

fn run_rep(args: &CalculusArgs) -> pbwcalc::Result<Outcome> {
    let cal = load_calculus(args)?;
    let g = cal.algebra();
    let window = window_for(args, g)?;
    let mut out = String::new();
    writeln!(out, "calculus: {}", cal.name()).unwrap();
    if g.is_finite() {
        for i in g.basis()? {
            writeln!(out, "rho({}) =\n{}", g.index_name(i), rho_matrix(&cal, i)?).unwrap();
        }
    }
    let report = check_representation(&cal, &window)?;
    match report.representation.first() {
        None => writeln!(out, "representation: ok").unwrap(),
        Some(f) => writeln!(
            out,
            "representation: {} failures; first ({}, {}) on {}: {}",
            report.representation.len(),
            label(g, f.i),
            label(g, f.j),
            label(g, f.a),
            f.residual
        )
        .unwrap(),
    }
    match report.cocycle.first() {
        None => writeln!(out, "cocycle: ok").unwrap(),
        Some(f) => writeln!(
            out,
            "cocycle: {} failures; first ({}, {}): {}",
            report.cocycle.len(),
            label(g, f.i),
            label(g, f.j),
            f.residual
        )
        .unwrap(),
    }
    Ok(Outcome {
        text: out,
        ok: report.is_clean(),
    })
}

fn run_transform(args: &CalculusArgs, tau: &str, check_auto: bool) -> pbwcalc::Result<Outcome> {
    let cal = load_calculus(args)?;
    let t = BasisChange::from_json(&std::fs::read_to_string(tau)?)?;
    let auto = t.is_automorphism(cal.algebra())?;
    let moved = t.transform(&cal)?;
    let mut out = String::new();
    write!(out, "{moved}").unwrap();
    writeln!(out, "automorphism: {}", if auto { "yes" } else { "no" }).unwrap();
    Ok(Outcome {
        text: out,
        ok: auto || !check_auto,
    })
}

fn run_family(command: &FamilyCommand) -> pbwcalc::Result<Outcome> {
    match command {
        FamilyCommand::List => Ok(Outcome::ok(solver::family_ids().join("\n") + "\n")),
        FamilyCommand::Verify { id } => {
            let v = solver::verify_family(id)?;
            let mut out = format!("{}: {} on window {}", v.id, if v.pass { "pass" } else { "FAIL" }, v.window);
            if !v.parameters.is_empty() {
                write!(out, ", parameters {}", v.parameters.join(", ")).unwrap();
            }
            out.push('\n');
            if let Some(w) = &v.witness {
                let r = w.r.map(|r| format!(", {r}")).unwrap_or_default();
                writeln!(out, "{} condition fails at ({}, {}, {}{r}): {}", w.condition, w.i, w.j, w.k, w.residual).unwrap();
            }
            Ok(Outcome { text: out, ok: v.pass })
        }
    }
}

fn run_refute(algebra: &str, samples: usize, seed: u64, cert: Option<(u32, u64)>) -> pbwcalc::Result<Outcome> {
    let g = liealg::catalog(algebra)?;
    let report = solver::refute_random(&g, samples, seed)?;
    let mut out = serde_json::to_string(&report)? + "\n";
    let mut ok = report.all_violated();
    if let Some((degree, budget)) = cert {
        let outcome = inconsistency_certificate(&residual_system(&g)?, degree, budget);
        match &outcome {
            CertificateOutcome::Certificate(c) => {
                ok &= c.is_valid();
                writeln!(out, "certificate: found, replays to {}", c.replay()).unwrap();
            }
            CertificateOutcome::Inconclusive {
                reason,
                steps,
                basis_size,
                ..
            } => writeln!(out, "certificate: inconclusive ({reason:?}) after {steps} steps, basis size {basis_size}").unwrap(),
        }
    }
    Ok(Outcome { text: out, ok })
}

fn run_catalog() -> Outcome {
    let mut out = String::from("algebras:\n");
    for id in liealg::ALGEBRA_NAMES {
        let probe = id.replace('N', "1");
        let aliases = liealg::catalog(&probe)
            .ok()
            .filter(|g| g.is_finite())
            .map(|g| {
                g.names()
                    .iter()
                    .enumerate()
                    .map(|(k, n)| format!("{n}={k}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .unwrap_or_else(|| if id == &"virasoro" { "t=central".into() } else { String::new() });
        if aliases.is_empty() {
            writeln!(out, "  {id}").unwrap();
        } else {
            writeln!(out, "  {id}  [{aliases}]").unwrap();
        }
    }
    out.push_str("calculi:\n");
    for id in calculus::catalog::CALCULUS_NAMES {
        writeln!(out, "  {id}").unwrap();
    }
    Outcome::ok(out)
}

fn run(cli: Cli) -> pbwcalc::Result<Outcome> {
    match cli.command {
        Command::Nf(a) => {
            // normal forms need no consistency; `d(..)` inside still does
            let mut cal = load_calculus(&a.cal)?;
            let window = window_for(&a.cal, cal.algebra())?;
            cal.verify(&window)?;
            let cal = Arc::new(cal);
            Ok(Outcome::ok(format!("{}\n", eval_str(&a.expr, &cal)?)))
        }
        Command::D(a) => {
            let cal = verified(&a.cal)?;
            let e = eval_str(&a.expr, &cal)?;
            Ok(Outcome::ok(format!("{}\n", calculus::differential(&e)?)))
        }
        Command::Partials(a) => {
            let cal = verified(&a.cal)?;
            let parts = partials(&eval_str(&a.expr, &cal)?)?;
            let g = cal.algebra();
            let mut out = String::new();
            for (i, e) in &parts {
                writeln!(out, "D[{}] = {e}", label(g, *i)).unwrap();
            }
            if parts.is_empty() {
                out.push_str("0\n");
            }
            Ok(Outcome::ok(out))
        }
        Command::Check(a) => run_check(&a),
        Command::Rep(a) => run_rep(&a),
        Command::Transform { cal, tau, check_auto } => run_transform(&cal, &tau, check_auto),
        Command::Family { command } => run_family(&command),
        Command::Refute {
            algebra,
            samples,
            seed,
            certificate,
            degree,
            budget,
        } => {
            let seed = seed.unwrap_or_else(|| seed_from_env(DEFAULT_SEED));
            run_refute(&algebra, samples, seed, certificate.then_some((degree, budget)))
        }
        Command::Catalog { command: CatalogCommand::List } => Ok(run_catalog()),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::UnverifiedCalculus(_) => 1,
        Error::CalculusMismatch | Error::DivisionByZero | Error::MissingParameter(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome { text, ok }) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
