//! Command-line front end. Exit codes: 0 when every check passes, 1 when a
//! check fails, 2 for usage or input errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::error::{Error, Result};
use crate::flat_model::{self, FourierForm, OrbifoldQuotient, WSelector};
use crate::io::{self, DecompositionFile};
use crate::lefschetz::{rank_table_csv, Lefschetz};
use crate::report::{Check, SuiteReport, Timing};
use crate::sampling::FormSampler;
use crate::suite::{self, Suite, SuiteConfig};
use crate::symmetry::FiniteGroup;

#[derive(Debug, Parser)]
#[command(
    name = "qforms",
    version,
    about = "Exact quaternionic forms, Lefschetz decompositions and flat-model checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank table of L and effective dimensions as CSV.
    Dims {
        #[arg(long)]
        n: usize,
        /// Defaults to 4n.
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decompose a form file into effective components.
    Decompose {
        #[arg(long)]
        form: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Decompose outside the theorem range.
        #[arg(long)]
        force: bool,
    },
    /// Run a verification suite and emit a JSON report.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Defaults to the group file's n, or 2.
        #[arg(long)]
        q: Option<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        cutoff: u32,
        #[arg(long)]
        group: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Betti numbers and certificates of the torus quotient by a group file.
    OrbifoldBetti {
        #[arg(long)]
        group: PathBuf,
        /// Must match the group file's n when given.
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Laplacian checks on sampled Fourier forms, or on one given form.
    LaplacianCheck {
        #[arg(long, default_value_t = 1)]
        q: usize,
        #[arg(long, default_value_t = 1)]
        cutoff: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// Fourier form file; when given, the checks run on this form.
        #[arg(long)]
        form: Option<PathBuf>,
        #[arg(long)]
        group: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Runs a command; `Ok(false)` means a check failed.
pub fn execute(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Dims { n, max_degree, out } => dims(n, max_degree, out.as_deref()),
        Command::Decompose { form, out, force } => decompose(&form, &out, force),
        Command::Verify {
            suite,
            n,
            q,
            seed,
            samples,
            cutoff,
            group,
            out,
        } => {
            let group = group.as_deref().map(load_group).transpose()?;
            let q = q.or(group.as_ref().map(FiniteGroup::n)).unwrap_or(2);
            let cfg = SuiteConfig {
                n,
                q,
                seed,
                samples,
                cutoff,
                group,
            };
            let start = Instant::now();
            let mut report = suite::run(suite, &cfg)?;
            report.timing = Some(Timing {
                elapsed_ms: start.elapsed().as_millis(),
            });
            emit_suite(&report, out.as_deref(), "report.json")
        }
        Command::OrbifoldBetti { group, q, out } => orbifold_betti(&group, q, out.as_deref()),
        Command::LaplacianCheck {
            q,
            cutoff,
            seed,
            samples,
            form,
            group,
            out,
        } => laplacian_check(
            q,
            cutoff,
            seed,
            samples,
            form.as_deref(),
            group.as_deref(),
            out.as_deref(),
        ),
    }
}

fn load_group(path: &Path) -> Result<FiniteGroup> {
    io::read_group(path)?.to_group()
}

fn write_out(dir: &Path, name: &str, text: &str) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(name), text)?;
    Ok(())
}

fn emit(text: &str, out: Option<&Path>, name: &str) -> Result<()> {
    match out {
        Some(dir) => write_out(dir, name, text),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn emit_suite(report: &SuiteReport, out: Option<&Path>, name: &str) -> Result<bool> {
    for c in &report.checks {
        eprintln!("{:<8} {}", format!("{:?}", c.status).to_uppercase(), c.name);
    }
    eprintln!("overall: {:?}", report.overall);
    emit(&(report.to_json() + "\n"), out, name)?;
    Ok(report.passed())
}

fn dims(n: usize, max_degree: Option<usize>, out: Option<&Path>) -> Result<bool> {
    let lef = Lefschetz::new(n)?;
    let rows = lef.rank_table(max_degree.unwrap_or(4 * n))?;
    emit(&rank_table_csv(&rows), out, "rank_table.csv")?;
    Ok(rows.iter().all(|r| r.bookkeeping))
}

fn decompose(form: &Path, out: &Path, force: bool) -> Result<bool> {
    let a = io::read_form(form)?;
    let lef = Lefschetz::new(a.n())?;
    let d = lef.decompose(&a, force)?;
    fs::create_dir_all(out)?;
    for (i, c) in d.components.iter().enumerate() {
        io::write_form(&out.join(format!("component_{i}.json")), c)?;
    }
    io::write_form(&out.join("residual.json"), &d.residual)?;
    let file = serde_json::to_string_pretty(&DecompositionFile::from(&d))?;
    fs::write(out.join("decomposition.json"), file + "\n")?;

    let mut effective = true;
    for c in &d.components {
        effective &= lef.is_effective(c)?;
    }
    let residual_zero = d.residual.is_zero();
    println!(
        "degree {}: {} components, residual {}, components {}, {}",
        d.degree,
        d.components.len(),
        if residual_zero { "zero" } else { "NONZERO" },
        if effective { "effective" } else { "NOT effective" },
        if d.is_unique() {
            "unique".to_string()
        } else {
            format!("singular steps at degrees {:?}", d.singular_steps)
        }
    );
    Ok(residual_zero && effective)
}

fn orbifold_betti(group: &Path, q: Option<usize>, out: Option<&Path>) -> Result<bool> {
    let g = load_group(group)?;
    if let Some(q) = q {
        if q != g.n() {
            return Err(Error::DimensionMismatch {
                left: q,
                right: g.n(),
            });
        }
    }
    let report = OrbifoldQuotient::new(g)?.betti_report()?;
    eprintln!("betti: {:?}", report.betti);
    emit(&(report.to_json() + "\n"), out, "orbifold_report.json")?;
    Ok(report.passed())
}

#[allow(clippy::too_many_arguments)]
fn laplacian_check(
    q: usize,
    cutoff: u32,
    seed: u64,
    samples: usize,
    form: Option<&Path>,
    group: Option<&Path>,
    out: Option<&Path>,
) -> Result<bool> {
    let group = match group {
        Some(p) => load_group(p)?,
        None => FiniteGroup::minus_one(q)?,
    };
    let checks = match form {
        Some(path) => {
            let a = io::read_fourier(path)?;
            let checks = form_checks(&a, &group)?;
            if let Some(dir) = out {
                fs::create_dir_all(dir)?;
                io::write_fourier(&dir.join("laplacian.json"), &a.laplacian()?)?;
            }
            checks
        }
        None => {
            let lef = Lefschetz::new(q)?;
            let mut s = FormSampler::new(seed);
            let mut checks = vec![
                flat_model::weitzenbock(&mut s, q, cutoff, samples)?,
                flat_model::harmonic_dimensions(q, cutoff)?,
            ];
            for sel in [
                WSelector::EffectiveKernel,
                WSelector::LImage,
                WSelector::Invariants(&group),
            ] {
                checks.push(flat_model::chern_commutation(&mut s, &lef, sel, cutoff, samples)?);
            }
            checks.push(flat_model::lichnerowicz(&mut s, &lef, cutoff, samples, None)?);
            checks
        }
    };
    let config = json!({
        "q": q, "cutoff": cutoff, "seed": seed, "samples": samples,
        "form": form.map(|p| p.display().to_string()),
        "group_order": group.order(),
    });
    let report = SuiteReport::new("laplacian", config, checks);
    let name = if form.is_some() {
        "laplacian_report.json"
    } else {
        "report.json"
    };
    emit_suite(&report, out, name)
}

/// Checks on a single Fourier form: `Δ = |ξ|²`, `d² = 0`, `δ² = 0`, and
/// commutation with each blade projector in its degree.
fn form_checks(a: &FourierForm, group: &FiniteGroup) -> Result<Vec<Check>> {
    let q = a.q();
    let p = a.degree();
    let lap = a.laplacian()?;
    let mut checks = vec![Check::new(
        "weitzenbock_flat",
        lap == a.frequency_multiplier(),
        json!({ "q": q, "degree": p, "terms": a.len() }),
    )];
    if p + 2 <= 4 * q {
        checks.push(Check::new(
            "d_squared_zero",
            a.d()?.d()?.is_zero(),
            json!({ "degree": p }),
        ));
    }
    if p >= 2 {
        checks.push(Check::new(
            "delta_squared_zero",
            a.delta()?.delta()?.is_zero(),
            json!({ "degree": p }),
        ));
    }
    let lef = Lefschetz::new(q)?;
    for sel in [
        WSelector::EffectiveKernel,
        WSelector::LImage,
        WSelector::Invariants(group),
    ] {
        let pw = sel.projector(&lef, p)?;
        let ok = pw.apply_to(&lap)? == pw.apply_to(a)?.laplacian()?;
        checks.push(Check::new(
            format!("commutation_{}", sel.name()),
            ok,
            json!({ "degree": p }),
        ));
    }
    if p + 4 <= 4 * q {
        let omega = lef.kraines().omega();
        checks.push(Check::new(
            "lichnerowicz_omega",
            a.wedge_constant(omega)?.laplacian()? == lap.wedge_constant(omega)?,
            json!({ "degree": p }),
        ));
    }
    Ok(checks)
}
