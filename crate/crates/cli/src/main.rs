//! `oretel`: batch front end for creative telescoping of ∂-finite systems.
//!
//! Every subcommand reads a system file and prints a report, either as
//! human-readable text (with timing) or as stable `key: value` lines.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use oretel_core::arith::{X, Y};
use oretel_core::expr::{format_operator, format_poly, format_ratfunc, parse_operator, parse_poly, parse_ratfunc};
use oretel_core::gff::gff;
use oretel_core::properness::{properness_report, PropernessError};
use oretel_core::sysfile::{format_pair, parse_pair, read_system, PairFile, ReadError};
use oretel_core::system::DFiniteSystem;
use oretel_core::telescope::{bounds, telescope, verify_pair, TelescopeError, TelescopeOptions};

#[derive(Parser, Debug)]
#[command(name = "oretel", version, about = "Creative telescoping for ∂-finite systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Override φ (at most the system dimension).
    #[arg(long, global = true)]
    phi: Option<u32>,
    /// First order tried by the incremental search.
    #[arg(long, global = true, default_value_t = 1)]
    r_start: u32,
    /// Last order tried; defaults to the order bound.
    #[arg(long, global = true)]
    r_max: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report there instead of stdout. For `telescope` the pair
    /// file is written there and the report still goes to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Find a telescoper and certificate.
    Telescope { system: PathBuf },
    /// Print η, γ, ϱ, φ and the order bound n·ϱ + φ.
    Bound { system: PathBuf },
    /// Classify the denominator u and report η.
    Properness { system: PathBuf },
    /// Check a stored telescoper/certificate pair.
    Verify { system: PathBuf, pair: PathBuf },
    /// Greatest factorial factorization of a polynomial with respect to the
    /// system's algebra.
    Gff {
        system: PathBuf,
        poly: String,
        #[arg(long, value_enum, default_value_t = VarArg::Y)]
        var: VarArg,
    },
    /// Apply an operator to a rational function.
    Apply { system: PathBuf, operator: String, function: String },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Structured,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum VarArg {
    X,
    Y,
}

enum Failure {
    Math(String),
    Input(String),
}

impl From<TelescopeError> for Failure {
    fn from(e: TelescopeError) -> Self {
        match e {
            TelescopeError::Options(_) | TelescopeError::Properness(PropernessError::PhiOverride { .. }) => {
                Failure::Input(e.to_string())
            }
            _ => Failure::Math(e.to_string()),
        }
    }
}

impl From<PropernessError> for Failure {
    fn from(e: PropernessError) -> Self {
        TelescopeError::from(e).into()
    }
}

/// Ordered `key: value` lines plus the overall verdict.
struct Report {
    title: String,
    lines: Vec<(String, String)>,
    ok: bool,
}

impl Report {
    fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), lines: Vec::new(), ok: true }
    }

    fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.lines.push((key.into(), value.to_string()));
    }

    fn render(&self, format: Format, elapsed: f64) -> String {
        let mut out = String::new();
        match format {
            Format::Structured => {
                for (k, v) in &self.lines {
                    out.push_str(&format!("{k}: {v}\n"));
                }
            }
            Format::Text => {
                out.push_str(&format!("{}\n", self.title));
                let width = self.lines.iter().map(|(k, _)| k.len()).chain(["elapsed".len()]).max().unwrap_or(0);
                for (k, v) in &self.lines {
                    out.push_str(&format!("  {k:<width$}  {v}\n"));
                }
                out.push_str(&format!("  {:<width$}  {elapsed:.3} s\n", "elapsed"));
            }
        }
        out
    }
}

fn threads_from_env() -> Result<Option<usize>, Failure> {
    match std::env::var("ORETEL_THREADS") {
        Err(_) => Ok(None),
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::Input(format!("ORETEL_THREADS must be a non-negative integer, got {s:?}"))),
    }
}

fn load(path: &Path) -> Result<DFiniteSystem, Failure> {
    read_system(path).map_err(|e| match e {
        ReadError::Io(..) => Failure::Input(e.to_string()),
        ReadError::File(_) => Failure::Input(format!("{}: {e}", path.display())),
    })
}

fn run(cli: &Cli) -> Result<(Report, Option<String>), Failure> {
    if cli.r_start == 0 {
        return Err(Failure::Input("--r-start must be at least 1".into()));
    }
    match &cli.command {
        Command::Telescope { system } => {
            let sys = load(system)?;
            let opts = TelescopeOptions {
                phi_override: cli.phi,
                r_start: cli.r_start,
                r_max: cli.r_max,
                incremental: true,
                threads: threads_from_env()?,
            };
            let pair = telescope(&sys, &opts)?;
            let verified = verify_pair(&sys, &pair.telescoper, &pair.certificate);
            let field = &sys.field;
            let mut rep = Report::new(format!("telescope {}", system.display()));
            rep.push("order", pair.telescoper.ord_x().unwrap_or(0));
            rep.push("telescoper", format_operator(&pair.telescoper, field));
            let cert: Vec<String> = pair.certificate.iter().map(|c| format_ratfunc(c, field)).collect();
            rep.push("certificate", cert.join(", "));
            if let Some(op) = &pair.certificate_operator {
                rep.push("certificate_operator", format_operator(op, field));
            }
            rep.push("verified", verified);
            rep.push("diagnostics", &pair.diagnostics);
            rep.ok = verified;
            let file = format_pair(
                &PairFile {
                    telescoper: pair.telescoper,
                    certificate: pair.certificate,
                    certificate_operator: pair.certificate_operator,
                },
                field,
            );
            Ok((rep, Some(file)))
        }
        Command::Bound { system } => {
            let sys = load(system)?;
            let b = bounds(&sys, cli.phi)?;
            let mut rep = Report::new(format!("bound {}", system.display()));
            rep.push("n", b.n);
            rep.push("eta", b.eta);
            rep.push("eta_upper_bound_only", b.eta_upper_bound_only);
            rep.push("gamma", b.gamma);
            rep.push("rho", b.height);
            rep.push("phi", b.phi);
            rep.push("order_bound", b.order_bound);
            Ok((rep, None))
        }
        Command::Properness { system } => {
            let sys = load(system)?;
            let report = properness_report(&sys, cli.phi)?;
            let field = &sys.field;
            let mut rep = Report::new(format!("properness {}", system.display()));
            rep.push("proper", report.proper);
            if let Some(reason) = &report.reason {
                rep.push("reason", reason);
            }
            for cf in &report.classification {
                rep.push(
                    "factor",
                    format!(
                        "{}; multiplicity {}; {}",
                        format_poly(&cf.factor, field),
                        cf.multiplicity,
                        cf.class.describe(field)
                    ),
                );
            }
            rep.push("gamma", report.gamma);
            rep.push("phi_bound", report.phi_bound);
            if let Some(eta) = report.eta {
                rep.push("eta", eta);
                rep.push("eta_upper_bound_only", report.eta_upper_bound_only);
            }
            if let Some(h) = report.height {
                rep.push("rho", h);
            }
            for w in &report.witnesses {
                rep.push(
                    format!("witness r={}", w.r),
                    format!("g_left = {}, z = {}", format_poly(&w.g_left, field), format_ratfunc(&w.z, field)),
                );
            }
            rep.ok = report.proper;
            Ok((rep, None))
        }
        Command::Verify { system, pair } => {
            let sys = load(system)?;
            let src = std::fs::read_to_string(pair)
                .map_err(|e| Failure::Input(format!("cannot read {}: {e}", pair.display())))?;
            let parsed = parse_pair(&src, &sys).map_err(|e| Failure::Input(format!("{}: {e}", pair.display())))?;
            let verified = verify_pair(&sys, &parsed.telescoper, &parsed.certificate);
            let mut rep = Report::new(format!("verify {} {}", system.display(), pair.display()));
            rep.push("order", parsed.telescoper.ord_x().unwrap_or(0));
            rep.push("verified", verified);
            rep.ok = verified;
            Ok((rep, None))
        }
        Command::Gff { system, poly, var } => {
            let sys = load(system)?;
            let field = &sys.field;
            let p = parse_poly(poly, field).map_err(|e| Failure::Input(format!("polynomial: {e}")))?;
            let v = match var {
                VarArg::X => X,
                VarArg::Y => Y,
            };
            let dec = gff(&p, v, &sys.spec).map_err(|e| Failure::Math(e.to_string()))?;
            let mut rep = Report::new(format!("gff {}", format_poly(&p, field)));
            rep.push("content", format_ratfunc(&dec.content, field));
            for (f, i) in &dec.factors {
                rep.push("factor", format!("{}; index {i}", format_poly(f, field)));
            }
            rep.push("left_border", format_poly(&dec.left_border(), field));
            rep.push("right_border", format_poly(&dec.right_border(v, &sys.spec), field));
            Ok((rep, None))
        }
        Command::Apply { system, operator, function } => {
            let sys = load(system)?;
            let field = &sys.field;
            let op = parse_operator(operator, field, &sys.spec).map_err(|e| Failure::Input(format!("operator: {e}")))?;
            let f = parse_ratfunc(function, field).map_err(|e| Failure::Input(format!("function: {e}")))?;
            let mut rep = Report::new(format!("apply {}", format_operator(&op, field)));
            rep.push("result", format_ratfunc(&op.apply_rat(&f, &sys.spec), field));
            Ok((rep, None))
        }
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli).and_then(|(rep, pair_file)| {
        let text = rep.render(cli.format, start.elapsed().as_secs_f64());
        match pair_file {
            Some(file) => {
                if let Some(p) = &cli.out {
                    emit(Some(p), &file)?;
                }
                emit(None, &text)?;
            }
            None => emit(cli.out.as_deref(), &text)?,
        }
        Ok(rep.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
