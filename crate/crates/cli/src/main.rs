//! `gbd`: tables, moments, regime maps and invariant checks for the
//! generalized binomial distributions of spherical Landau levels.
//!
//! Exit codes: 0 success, 2 usage error, 3 domain error, 4 verification
//! failure (1 is reserved for I/O trouble writing the output).

mod output;

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gbd_core::gbd::{
    char_fn_closed, char_fn_direct, classify, linspace, mandel_q, moment_summary, mu_from_radius,
    pmf_table, regime_boundaries, GbdParams,
};
use gbd_core::verify::{self, CheckKind, Suite, VerifyConfig};
use gbd_core::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use output::{Cell, Format, Record};

#[derive(Debug, Parser)]
#[command(
    name = "gbd",
    version,
    about = "Generalized binomial distributions on spherical Landau levels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Level {
    /// Field strength B (monopole charge 2B).
    #[arg(long = "B", value_name = "B")]
    field: u32,
    /// Landau level m.
    #[arg(long = "m", value_name = "M")]
    level: u32,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Point {
    /// mu = |z|^2 / (1 + |z|^2), in [0, 1].
    #[arg(long, allow_negative_numbers = true)]
    mu: Option<f64>,
    /// Stereographic radius |z|; mu is derived from it.
    #[arg(long, allow_negative_numbers = true)]
    radius: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Probability mass and cumulative distribution for j = 0..2B+2m.
    Pmf {
        #[command(flatten)]
        level: Level,
        #[command(flatten)]
        point: Point,
    },
    /// Mean, variance, Mandel parameter and photon-statistics regime.
    Stats {
        #[command(flatten)]
        level: Level,
        #[command(flatten)]
        point: Point,
    },
    /// Critical radii and the regime along a radial grid.
    Regions {
        #[command(flatten)]
        level: Level,
        #[arg(long = "r_max", default_value_t = 3.0, allow_negative_numbers = true)]
        r_max: f64,
        #[arg(long = "n_grid", default_value_t = 301)]
        n_grid: usize,
    },
    /// Characteristic function: direct sum against the closed form.
    Charfn {
        #[command(flatten)]
        level: Level,
        #[command(flatten)]
        point: Point,
        #[arg(long = "t_min", default_value_t = -PI, allow_negative_numbers = true)]
        t_min: f64,
        #[arg(long = "t_max", default_value_t = PI, allow_negative_numbers = true)]
        t_max: f64,
        #[arg(long = "n_points", default_value_t = 101)]
        n_points: usize,
    },
    /// Run invariant suites; exits 4 if any check fails.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long = "B_max")]
        field_max: Option<u32>,
        #[arg(long = "m_max")]
        level_max: Option<u32>,
        /// Tolerance for every exact-identity check.
        #[arg(long, allow_negative_numbers = true)]
        tol: Option<f64>,
    },
    /// Inverse-transform samples from a ChaCha8 stream seeded by `--seed`.
    Sample {
        #[command(flatten)]
        level: Level,
        #[command(flatten)]
        point: Point,
        #[arg(long, default_value_t = 1000)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn domain<T>(msg: String) -> Result<T> {
    Err(Error::Domain(msg))
}

fn resolve(level: &Level, point: &Point, record: &mut Record) -> Result<GbdParams> {
    record.param("B", level.field);
    record.param("m", level.level);
    let mu = match (point.mu, point.radius) {
        (Some(mu), _) => mu,
        (None, Some(r)) => {
            if r.is_nan() || r < 0.0 {
                return domain(format!("radius = {r} must be nonnegative"));
            }
            record.param("radius", r);
            mu_from_radius(r)
        }
        (None, None) => unreachable!("clap enforces the group"),
    };
    let params = GbdParams::new(level.field, level.level, mu)?;
    record.param("mu", mu);
    Ok(params)
}

fn cmd_pmf(level: &Level, point: &Point) -> Result<Record> {
    let mut record = Record::new("pmf", vec!["j", "pmf", "cdf"]);
    let table = pmf_table(&resolve(level, point, &mut record)?);
    for (j, (p, c)) in table.probs.iter().zip(&table.cumulative).enumerate() {
        record.row(vec![Cell::Int(j as i64), Cell::Real(*p), Cell::Real(*c)]);
    }
    Ok(record)
}

fn cmd_stats(level: &Level, point: &Point) -> Result<Record> {
    let mut record = Record::new("stats", vec!["mean", "variance", "mandel_q", "regime"]);
    let summary = moment_summary(&resolve(level, point, &mut record)?);
    record.row(vec![
        summary.mean.into(),
        summary.variance.into(),
        summary.mandel_q.into(),
        summary.regime.as_str().into(),
    ]);
    Ok(record)
}

fn cmd_regions(level: &Level, r_max: f64, n_grid: usize) -> Result<Record> {
    if !(r_max > 0.0 && r_max.is_finite()) {
        return domain(format!("r_max = {r_max} must be positive and finite"));
    }
    if n_grid < 2 {
        return domain(format!("n_grid = {n_grid} must be at least 2"));
    }
    let (field, lvl) = (level.field, level.level);
    let mut record = Record::new("regions", vec!["radius", "mandel_q", "regime"]);
    record.param("B", field);
    record.param("m", lvl);
    record.param("r_max", r_max);
    record.param("n_grid", n_grid as u64);
    match regime_boundaries(field, lvl) {
        Ok(b) => {
            record.summary("r_minus", b.r_minus);
            record.summary("r_plus", b.r_plus);
            record.summary("mu_minus", b.mu_minus);
            record.summary("mu_plus", b.mu_plus);
        }
        Err(_) => {
            for key in ["r_minus", "r_plus", "mu_minus", "mu_plus"] {
                record.summary(key, Cell::Undefined);
            }
        }
    }
    for r in linspace(0.0, r_max, n_grid) {
        let q = mandel_q(&GbdParams::new(field, lvl, mu_from_radius(r))?);
        record.row(vec![
            r.into(),
            q.into(),
            classify(field, lvl, r).as_str().into(),
        ]);
    }
    Ok(record)
}

fn cmd_charfn(
    level: &Level,
    point: &Point,
    t_min: f64,
    t_max: f64,
    n_points: usize,
) -> Result<Record> {
    if n_points < 2 {
        return domain(format!("n_points = {n_points} must be at least 2"));
    }
    if !(t_min.is_finite() && t_max.is_finite()) {
        return domain("t_min and t_max must be finite".into());
    }
    let mut record = Record::new(
        "charfn",
        vec![
            "t",
            "direct_re",
            "direct_im",
            "closed_re",
            "closed_im",
            "abs_diff",
        ],
    );
    let params = resolve(level, point, &mut record)?;
    record.param("t_min", t_min);
    record.param("t_max", t_max);
    record.param("n_points", n_points as u64);
    let mut worst = 0.0_f64;
    for t in linspace(t_min, t_max, n_points) {
        let (d, c) = (char_fn_direct(&params, t), char_fn_closed(&params, t));
        let diff = (d - c).norm();
        worst = worst.max(diff);
        record.row(vec![
            t.into(),
            d.re.into(),
            d.im.into(),
            c.re.into(),
            c.im.into(),
            diff.into(),
        ]);
    }
    record.summary("max_abs_diff", worst);
    Ok(record)
}

fn cmd_verify(suite: Suite, config: VerifyConfig) -> Result<(Record, bool)> {
    if let Some(tol) = config.tol {
        if !(tol > 0.0 && tol.is_finite()) {
            return domain(format!("tol = {tol} must be positive"));
        }
    }
    let mut record = Record::new(
        "verify",
        vec![
            "suite",
            "check",
            "kind",
            "max_residual",
            "tolerance",
            "passed",
        ],
    );
    record.param("suite", suite.as_str());
    record.param(
        "B_max",
        config.field_max.map_or(Cell::from("default"), Cell::from),
    );
    record.param(
        "m_max",
        config.level_max.map_or(Cell::from("default"), Cell::from),
    );
    record.param("tol", config.tol.map_or(Cell::from("default"), Cell::from));
    let checks = verify::run(suite, &config);
    let failed = checks.iter().filter(|c| !c.passed()).count();
    for c in &checks {
        let kind = match c.kind {
            CheckKind::Exact => "exact",
            CheckKind::Approximate => "approximate",
        };
        record.row(vec![
            c.suite.as_str().into(),
            c.name.into(),
            kind.into(),
            c.max_residual.into(),
            c.tolerance.into(),
            c.passed().into(),
        ]);
    }
    record.summary("checks", checks.len() as u64);
    record.summary("failed", failed as u64);
    Ok((record, failed == 0))
}

fn cmd_sample(level: &Level, point: &Point, count: u64, seed: u64) -> Result<Record> {
    if count == 0 {
        return domain("count must be at least 1".into());
    }
    let mut record = Record::new("sample", vec!["j", "count", "frequency"]);
    let params = resolve(level, point, &mut record)?;
    record.param("count", count);
    record.param("seed", seed);
    let table = pmf_table(&params);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hist = vec![0u64; table.probs.len()];
    for _ in 0..count {
        hist[table.sample(rng.gen::<f64>()) as usize] += 1;
    }
    let n = count as f64;
    let mean = hist
        .iter()
        .enumerate()
        .map(|(j, &k)| j as f64 * k as f64)
        .sum::<f64>()
        / n;
    let var = hist
        .iter()
        .enumerate()
        .map(|(j, &k)| (j as f64 - mean).powi(2) * k as f64)
        .sum::<f64>()
        / n;
    record.summary("empirical_mean", mean);
    record.summary("empirical_variance", var);
    record.summary("mean", table.mean());
    record.summary("variance", table.variance());
    for (j, &k) in hist.iter().enumerate() {
        record.row(vec![Cell::Int(j as i64), k.into(), (k as f64 / n).into()]);
    }
    Ok(record)
}

fn execute(command: &Command) -> Result<(Record, bool)> {
    let ok = |r: Record| (r, true);
    match command {
        Command::Pmf { level, point } => cmd_pmf(level, point).map(ok),
        Command::Stats { level, point } => cmd_stats(level, point).map(ok),
        Command::Regions {
            level,
            r_max,
            n_grid,
        } => cmd_regions(level, *r_max, *n_grid).map(ok),
        Command::Charfn {
            level,
            point,
            t_min,
            t_max,
            n_points,
        } => cmd_charfn(level, point, *t_min, *t_max, *n_points).map(ok),
        Command::Verify {
            suite,
            field_max,
            level_max,
            tol,
        } => cmd_verify(
            *suite,
            VerifyConfig {
                field_max: *field_max,
                level_max: *level_max,
                tol: *tol,
            },
        ),
        Command::Sample {
            level,
            point,
            count,
            seed,
        } => cmd_sample(level, point, *count, *seed).map(ok),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let (record, passed) = match execute(&cli.command) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("gbd: {e}");
            return ExitCode::from(3);
        }
    };
    let text = record.render(cli.format);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => {
            use std::io::Write;
            std::io::stdout().lock().write_all(text.as_bytes())
        }
    };
    if let Err(e) = written {
        eprintln!("gbd: cannot write output: {e}");
        return ExitCode::from(1);
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(4)
    }
}
