//! `degen`: command-line access to the degeneration engine.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use degen_core::central_fiber::{design_f, restriction_matches, singular_locus, Hyperplane, PrescribedPoint};
use degen_core::curve_graph::{hyperplane_section, validate};
use degen_core::graft::{GraftKind, GraftSetup};
use degen_core::obstruction::{first_order_obstruction, obstruction_at_node};
use degen_core::poly::QuarticForm;
use degen_core::verify::{verify, VerifyConfig};
use degen_core::Error;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "degen", version, about = "Exact computations on the degeneration xyzw + t f = 0 of quartic surfaces")]
struct Cli {
    /// Print progress details on stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a quartic from 24 prescribed singular points.
    DesignF {
        prescription: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The rational singular points on the six edges.
    SingularLocus {
        f: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The hyperplane section of `h` as a curve graph, with marks on the singular locus of `f`.
    Section {
        h: PathBuf,
        f: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// First-order obstruction of a hyperplane section against `f`.
    Obstruction {
        /// Quartic to perturb by; omit with --symbolic.
        f: Option<PathBuf>,
        /// Hyperplane file; defaults to αx + βy + γz + w.
        #[arg(long)]
        h: Option<PathBuf>,
        /// Report a single node, such as "l^k".
        #[arg(long)]
        node: Option<String>,
        /// Use a quartic with 35 independent symbolic coefficients.
        #[arg(long)]
        symbolic: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search the singular points of `f` for a graft recipe.
    FindRecipe {
        f: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Rational)]
        kind: Kind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the grafted curve of a recipe.
    Graft {
        recipe: PathBuf,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run the table of checkable claims.
    Verify {
        f: Option<PathBuf>,
        #[arg(long)]
        symbolic: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        order: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Rational,
    Genus,
}

/// Failure of a command, with its exit code.
enum Failure {
    Usage(String),
    Precondition(String),
    Claims(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::Malformed(_) => Failure::Usage(e.to_string()),
            _ => Failure::Precondition(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_value(read_json(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(value: &Value, out: Option<&Path>) -> Outcome {
    let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_text(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Outcome {
    let verbose = cli.verbose;
    match cli.command {
        Command::DesignF { prescription, out } => {
            let p: Vec<PrescribedPoint> = parse(&prescription)?;
            let d = design_f(&p)?;
            let ok = restriction_matches(&d.f, &p);
            eprintln!(
                "restriction check: {} on all 6 edges; solution space of dimension {}",
                if ok { "ok" } else { "FAILED" },
                d.solution_dim
            );
            if !ok {
                return Err(Failure::Claims("designed quartic does not restrict to the prescription".into()));
            }
            emit(&serde_json::to_value(&d.f).expect("serializable"), out.as_deref())
        }
        Command::SingularLocus { f, out } => {
            let f: QuarticForm = parse(&f)?;
            let s = singular_locus(&f)?;
            if verbose {
                eprintln!("{} rational singular points, complete: {}", s.count(), s.complete());
            }
            emit(&s.to_json(), out.as_deref())
        }
        Command::Section { h, f, out, dot } => {
            let h: Hyperplane = parse(&h)?;
            let f: QuarticForm = parse(&f)?;
            let g = hyperplane_section(&h, &f)?;
            let genus = g.genus()?;
            let report = validate(&g, &f);
            eprintln!("genus {genus}, {} nodes, {} marks", g.nodes.len(), g.marks.len());
            if verbose {
                eprintln!("violations: {:?}", report.violations);
            }
            if let Some(d) = dot {
                write_text(&d, &g.to_dot())?;
            }
            emit(
                &json!({ "curve": g.to_json(), "genus": genus, "validity": report_json(&report) }),
                out.as_deref(),
            )
        }
        Command::Obstruction {
            f,
            h,
            node,
            symbolic,
            out,
        } => {
            let f = match (f, symbolic) {
                (Some(p), false) => parse::<QuarticForm>(&p)?,
                (None, true) => QuarticForm::symbolic(),
                (Some(_), true) => return Err(Failure::Usage("give either a quartic or --symbolic".into())),
                (None, false) => return Err(Failure::Usage("a quartic file or --symbolic is required".into())),
            };
            let h = match h {
                Some(p) => parse::<Hyperplane>(&p)?,
                None => Hyperplane::symbolic(),
            };
            let value = match node {
                Some(name) => {
                    let n = obstruction_at_node(&f, &h, &name)?;
                    json!({
                        "name": n.name,
                        "point": n.point,
                        "lines": n.lines.iter().map(|l| json!({ "line": l.line, "a1": l.a1, "value": l.value })).collect::<Vec<_>>(),
                        "value": n.value,
                    })
                }
                None => {
                    let r = first_order_obstruction(&f, &h)?;
                    eprintln!("total {}", r.total);
                    r.to_json()
                }
            };
            emit(&value, out.as_deref())
        }
        Command::FindRecipe { f, kind, out } => {
            let f: QuarticForm = parse(&f)?;
            let kind = match kind {
                Kind::Rational => GraftKind::Rational,
                Kind::Genus => GraftKind::Genus,
            };
            let recipe = GraftSetup::find(&f, kind)?;
            emit(&serde_json::to_value(&recipe).expect("serializable"), out.as_deref())
        }
        Command::Graft { recipe, r, out, dot } => {
            let recipe: GraftSetup = parse(&recipe)?;
            let g = recipe.graft(r)?;
            eprintln!(
                "genus {}, {} components, {} marks, degree {}",
                g.genus()?,
                g.components.len(),
                g.marks.len(),
                g.degree()
            );
            if let Some(d) = dot {
                write_text(&d, &g.to_dot())?;
            }
            emit(&g.to_json(), out.as_deref())
        }
        Command::Verify {
            f,
            symbolic,
            seed,
            trials,
            order,
            out,
        } => {
            let f = match f {
                Some(p) => Some(parse::<QuarticForm>(&p)?),
                None => None,
            };
            let cfg = VerifyConfig {
                seed,
                trials: trials as usize,
                order,
                f,
                symbolic,
            };
            let report = verify(&cfg)?;
            for c in &report.claims {
                eprintln!(
                    "{} {}: {}{}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.id,
                    c.computed,
                    if c.pass { String::new() } else { format!(" (expected {})", c.expected) }
                );
            }
            if let Some(t) = &report.cancellation_table {
                eprintln!("per-monomial totals:");
                for (m, v) in t {
                    eprintln!("  {m:>8}  {v}");
                }
                let total = report.claims.iter().find(|c| c.id == "cancellation.symbolic").map(|c| c.computed.as_str());
                eprintln!("  {:>8}  {}", "total", total.unwrap_or("?"));
            }
            emit(&report.to_json(), out.as_deref())?;
            if report.all_pass() {
                Ok(())
            } else {
                let ids: Vec<&str> = report.failures().map(|c| c.id.as_str()).collect();
                Err(Failure::Claims(format!("failed claims: {}", ids.join(", "))))
            }
        }
    }
}

fn report_json(r: &degen_core::curve_graph::ValidityReport) -> Value {
    json!({
        "torically_transverse": r.torically_transverse,
        "pre_log": r.pre_log,
        "pre_log_away_from_s": r.pre_log_away_from_s,
        "pre_smoothable": r.pre_smoothable,
        "simply_pre_smoothable": r.simply_pre_smoothable,
        "violations": r.violations,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Precondition(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Claims(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
