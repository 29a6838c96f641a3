use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use symplie_core::bracket::BracketFile;
use symplie_core::catalog::{curve, ClassId};
use symplie_core::degeneration::hasse::to_dot;
use symplie_core::degeneration::suites::{DEFAULT_SAMPLES, DEFAULT_SEED};
use symplie_core::degeneration::theorem_b::{ClassOutcome, NEGATIVE_SAMPLES, T_MAX};
use symplie_core::degeneration::{LimitVerdict, FINAL_DISTANCE};
use symplie_core::curvature::DET_TOLERANCE;
use symplie_core::error::Error;
use symplie_core::report;

#[derive(Parser)]
#[command(name = "symplie", version, about = "Exact checks for 4-dimensional symplectic Lie algebras")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args)]
struct Output {
    /// Emit JSON instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Verb {
    /// List the sampled classes, or print one bracket.
    Catalog {
        #[arg(long)]
        class: Option<ClassId>,
        #[command(flatten)]
        out: Output,
    },
    /// Check Jacobi and closedness of a class or a bracket file.
    Validate {
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        class: Option<ClassId>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Derivation dimensions and structural invariants against the table.
    Invariants {
        /// All sampled classes when omitted.
        #[arg(long)]
        class: Option<ClassId>,
        #[command(flatten)]
        out: Output,
    },
    /// Ricci form of the metric `<e_i, e_j> = δ_ij`.
    Ricci {
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        class: Option<ClassId>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Verify degeneration curves; all of them when `--curve` is omitted.
    Degenerate {
        #[arg(long)]
        curve: Option<String>,
        /// Source class, supplying the parameter of a family curve.
        #[arg(long, requires = "curve")]
        class: Option<ClassId>,
        /// Bound on the float distance at the last grid point.
        #[arg(long, default_value_t = FINAL_DISTANCE)]
        tol: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Verified degeneration diagram, pair statuses, optional DOT file.
    Hasse {
        #[arg(long)]
        dot: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Every diagram edge plus the non-degeneration arguments.
    TheoremA {
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Nondegenerate Ricci witnesses and the degenerate classes.
    TheoremB {
        #[arg(long, default_value_t = NEGATIVE_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = T_MAX)]
        tmax: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Ric(ρ₀) and the first degenerate Ric(ρ_t) on (0, 12).
    RemarkCheck {
        #[arg(long, default_value_t = DET_TOLERANCE)]
        tol: f64,
        #[command(flatten)]
        out: Output,
    },
}

enum Failure {
    Usage(String),
    Io(PathBuf, std::io::Error),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Domain { .. } => Failure::Usage(e.to_string()),
            e => Failure::Engine(e),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn emit<T: Serialize>(json: bool, value: &T, table: impl FnOnce(&T) -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
    } else {
        print!("{}", table(value));
    }
}

fn read_bracket(path: &Path) -> Result<BracketFile, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))?;
    Ok(BracketFile::from_json(&text)?)
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

fn catalog(class: Option<ClassId>, json: bool) -> Outcome {
    match class {
        Some(id) => {
            let (mu, _) = symplie_core::catalog::make(&id)?;
            let file = BracketFile::from_bracket(&mu);
            emit(json, &file, |f| {
                let mut s = format!("{id} (mu{})\n", id.mu_index());
                for (pair, value) in &f.bracket {
                    let terms: Vec<String> = value.iter().map(|(k, c)| format!("{c} {k}")).collect();
                    s += &format!("  [{pair}] = {}\n", terms.join(" + "));
                }
                s
            });
        }
        None => {
            let entries = report::catalog_entries()?;
            emit(json, &entries, |es| {
                let mut s = format!("{:<28} {:>4}  {}\n", "class", "mu", "node");
                for e in es {
                    s += &format!("{:<28} {:>4}  {}\n", e.class, e.mu_index, e.node);
                }
                s
            });
        }
    }
    Ok(true)
}

fn validate(class: Option<ClassId>, file: Option<PathBuf>, json: bool) -> Outcome {
    let v = match (class, file) {
        (Some(id), _) => report::validate_class(&id)?,
        (None, Some(path)) => {
            let (mu, omega) = read_bracket(&path)?.to_bracket()?;
            report::validate(&path.display().to_string(), &mu, &omega)
        }
        (None, None) => return Err(Failure::Usage("give --class or --file".into())),
    };
    emit(json, &v, |v| format!("{}\n", v.summary()));
    Ok(v.passed())
}

fn invariants(class: Option<ClassId>, json: bool) -> Outcome {
    let ids = match class {
        Some(id) => vec![id],
        None => {
            let mut ids = ClassId::samples();
            ids.sort_by_key(|c| c.to_string());
            ids
        }
    };
    let reports = ids.iter().map(report::invariants_report).collect::<Result<Vec<_>, _>>()?;
    let passed = reports.iter().all(|r| r.matches_table);
    emit(json, &reports, |rs| {
        let mut s = format!(
            "{:<28} {:>10} {:>7} {:>6}  {:<10} {:<9} {}\n",
            "class", "dim Der_ω", "dim Der", "table", "unimodular", "nilpotent", "lcs"
        );
        for r in rs {
            s += &format!(
                "{:<28} {:>10} {:>7} {:>6}  {:<10} {:<9} {:?}\n",
                r.class,
                r.dim_der_omega,
                r.dim_der,
                mark(r.matches_table),
                r.unimodular,
                r.nilpotent,
                r.lower_central_series
            );
        }
        s
    });
    Ok(passed)
}

fn ricci(class: Option<ClassId>, file: Option<PathBuf>, json: bool) -> Outcome {
    let r = match (class, file) {
        (Some(id), _) => report::ricci_report_for(&id)?,
        (None, Some(path)) => {
            let (mu, _) = read_bracket(&path)?.to_bracket()?;
            report::ricci_report(&path.display().to_string(), &mu)?
        }
        (None, None) => return Err(Failure::Usage("give --class or --file".into())),
    };
    emit(json, &r, |r| {
        let mut s = format!("{}\nRic =\n", r.class);
        for row in &r.ricci_matrix {
            s += &format!("  [{}]\n", row.join(", "));
        }
        s += &format!("signature {}\nscalar curvature {}\n", r.signature, r.scalar_curvature);
        s += &match &r.einstein {
            Some(c) => format!("Einstein, Ric = {c}·<,>\n"),
            None => "not Einstein\n".into(),
        };
        s
    });
    Ok(true)
}

fn degenerate(curve_id: Option<String>, class: Option<ClassId>, tol: f64, json: bool) -> Outcome {
    let param = class.as_ref().and_then(|c| c.parameter()).map(|(_, p)| p.clone());
    if let (Some(id), Some(source)) = (&curve_id, &class) {
        let spec = curve(id, param.as_ref())?;
        if &spec.source != source {
            return Err(Failure::Usage(format!("{id} starts at {}, not {source}", spec.source)));
        }
    }
    let reports = report::degenerate_report(curve_id.as_deref(), param.as_ref())?;
    let passed = reports.iter().all(|r| r.verified() && r.float_ok_within(tol));
    emit(json, &reports, |rs| {
        let mut s = format!("{:<28} {:<22} {:<22} {:<6} {:<12} {}\n", "curve", "source", "target", "exact", "d(25)", "float");
        for r in rs {
            let d = r.final_distance.map_or("overflow".to_string(), |d| format!("{d:.3e}"));
            s += &format!(
                "{:<28} {:<22} {:<22} {:<6} {:<12} {}\n",
                r.curve,
                r.source,
                r.target,
                mark(r.verified()),
                d,
                mark(r.float_ok_within(tol))
            );
            if let LimitVerdict::NoLimit { entries } = &r.verdict {
                for e in entries {
                    s += &format!("    diverges at {:?} with exponents {:?}\n", e.entry, e.exponents);
                }
            }
        }
        s
    });
    Ok(passed)
}

fn hasse(dot: Option<PathBuf>, json: bool) -> Outcome {
    let summary = report::hasse_summary()?;
    if let Some(path) = &dot {
        write_file(path, &to_dot(&summary.report))?;
    }
    emit(json, &summary, |h| {
        let mut s = String::from("edges:\n");
        for e in &h.report.edges {
            s += &format!(
                "  {:<24} -> {:<24} {:<10?} Der_ω {} -> {}\n",
                e.source, e.target, e.status, e.dim_der_omega.0, e.dim_der_omega.1
            );
        }
        s += &format!(
            "{} nodes, {} closure pairs, transitivity consistent: {}\n",
            h.report.nodes.len(),
            h.report.closure.len(),
            h.report.transitivity_consistent
        );
        let count = |st| h.pairs.iter().filter(|p| p.status == st).count();
        use symplie_core::degeneration::hasse::EdgeStatus::*;
        s += &format!(
            "pairs: {} verified, {} obstructed, {} open\n",
            count(Verified),
            count(Obstructed),
            count(Open)
        );
        for f in &h.report.failures {
            s += &format!("FAIL {f}\n");
        }
        s
    });
    Ok(summary.report.all_verified())
}

fn suite_table(r: &report::SuiteReport) -> String {
    let mut s = String::new();
    for e in &r.edges {
        s += &format!(
            "edge {:<28} {:<22} -> {:<22} {}\n",
            e.witness,
            e.source,
            e.target,
            mark(e.failure.is_none() && e.der_omega_increases)
        );
    }
    for c in &r.non_degenerations {
        s += &format!("non-degeneration {:<22} {} -/-> {} {}\n", c.name, c.source, c.target, mark(c.passed));
    }
    for o in &r.theorem_b {
        s += &match o {
            ClassOutcome::Witness(w) => format!(
                "witness {:<28} via [{}] -> {} signature {} {}\n",
                w.class,
                w.path.join(", "),
                w.lemma_class,
                w.signature,
                mark(o.passed())
            ),
            ClassOutcome::Degenerate { class, samples, nonzero_determinants } => format!(
                "degenerate {:<25} {nonzero_determinants}/{samples} nonzero det Ric {}\n",
                class,
                mark(o.passed())
            ),
            ClassOutcome::Exhausted { class, tried_paths } => {
                format!("no witness {class} after {tried_paths} paths FAIL\n")
            }
        };
    }
    s += &format!("{}\n", if r.passed() { "PASS" } else { "FAIL" });
    s
}

fn theorem_a(samples: usize, seed: u64, dot: Option<PathBuf>, json: bool) -> Outcome {
    let r = report::theorem_a_report(samples, seed)?;
    if let Some(path) = &dot {
        write_file(path, &to_dot(&report::hasse_summary()?.report))?;
    }
    emit(json, &r, suite_table);
    Ok(r.passed())
}

fn theorem_b(samples: usize, seed: u64, tmax: f64, json: bool) -> Outcome {
    if !(tmax.is_finite() && tmax > 0.0) {
        return Err(Failure::Usage(format!("--tmax {tmax} must be positive")));
    }
    let r = report::theorem_b_report(samples, seed, tmax)?;
    emit(json, &r, suite_table);
    Ok(r.passed())
}

fn remark_check(tol: f64, json: bool) -> Outcome {
    let r = report::remark_report(tol)?;
    emit(json, &r, |r| {
        let d = &r.degenerate;
        format!(
            "Ric(rho_0) signature {}, Einstein constant {}\n\
             t_hat = {:.6} (|det| = {:.3e}), signature {} below, {} above\n\
             {} sign change(s) on the scan grid\n{}\n",
            r.rho0.signature,
            r.rho0.einstein.as_deref().unwrap_or("none"),
            d.t_hat_f64,
            d.det_at_t_hat.abs(),
            d.signature_below,
            d.signature_above,
            d.sign_changes.len(),
            if r.passed() { "PASS" } else { "FAIL" }
        )
    });
    Ok(r.passed())
}

fn run(cli: Cli) -> Outcome {
    match cli.verb {
        Verb::Catalog { class, out } => catalog(class, out.json),
        Verb::Validate { class, file, out } => validate(class, file, out.json),
        Verb::Invariants { class, out } => invariants(class, out.json),
        Verb::Ricci { class, file, out } => ricci(class, file, out.json),
        Verb::Degenerate { curve, class, tol, out } => degenerate(curve, class, tol, out.json),
        Verb::Hasse { dot, out } => hasse(dot, out.json),
        Verb::TheoremA { samples, seed, dot, out } => theorem_a(samples, seed, dot, out.json),
        Verb::TheoremB { samples, seed, tmax, out } => theorem_b(samples, seed, tmax, out.json),
        Verb::RemarkCheck { tol, out } => remark_check(tol, out.json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Io(path, e)) => {
            eprintln!("error: {}: {e}", path.display());
            ExitCode::from(3)
        }
    }
}
