use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hardy_core::export::{fmt_sig15, write_catalog, write_json, write_table, Format, SCHEMA_VERSION};
use hardy_core::zero_finder::DEFAULT_SCAN_STEP;
use hardy_core::{
    gram_point, hardy_z, n_riemann_von_mangoldt, parity_statistics, scan_zeros, theta_exact,
    verify_sign_relation, Definition, EvalConfig, ParityStats, SignReport, ZeroCatalog,
};
use serde_json::json;

/// Hardy's Z function, zero counting and sign/parity checks on the critical line.
#[derive(Parser, Debug)]
#[command(name = "hardy-sign", version)]
struct Cli {
    #[command(flatten)]
    common: Common,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutFormat::Csv, global = true)]
    format: OutFormat,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Absolute error target for zeta.
    #[arg(long, default_value_t = 1e-12, global = true)]
    tol: f64,

    /// Number of Euler-Maclaurin correction terms (2..=15).
    #[arg(long = "em-terms", default_value_t = 8, global = true)]
    em_terms: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
    Tsv,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Csv => Format::Csv,
            OutFormat::Json => Format::Json,
            OutFormat::Tsv => Format::Tsv,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Z(t), theta(t), S(t) and N(t) at one height.
    Eval {
        #[arg(allow_hyphen_values = true)]
        t: f64,
    },
    /// Zero ordinates in (from, to].
    Zeros {
        #[arg(long, default_value_t = 1.0)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long, default_value_t = DEFAULT_SCAN_STEP)]
        step: f64,
    },
    /// Check sign(Z(t)) = (-1)^(N(t)+1) on evenly spaced samples.
    Verify {
        #[arg(long, default_value_t = 0.1)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long, default_value_t = 5000)]
        samples: usize,
        #[arg(long, default_value_t = 1e-3)]
        exclusion: f64,
        /// Grid step of the zero scan behind the check.
        #[arg(long, default_value_t = DEFAULT_SCAN_STEP)]
        step: f64,
    },
    /// How many ordinates up to T have N(gamma) even.
    Stats {
        #[arg(allow_hyphen_values = true)]
        t: f64,
        #[arg(long, default_value_t = DEFAULT_SCAN_STEP)]
        step: f64,
    },
    /// Gram points g_n for n in [from, to].
    Gram {
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        from: i64,
        #[arg(long)]
        to: i64,
    },
}

fn cell(x: Option<f64>) -> String {
    x.map(fmt_sig15).unwrap_or_default()
}

fn int_cell<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn q(x: f64) -> f64 {
    hardy_core::export::quantize(x)
}

/// Result of a command: text already written to `out`, plus whether all
/// checks passed and a summary for the failure channel.
struct Outcome {
    pass: bool,
    summary: serde_json::Value,
}

impl Outcome {
    fn ok() -> Self {
        Self {
            pass: true,
            summary: serde_json::Value::Null,
        }
    }
}

fn table_or_json<W: Write>(
    out: W,
    format: Format,
    header: &[&str],
    rows: Vec<Vec<String>>,
    json_value: serde_json::Value,
) -> Result<()> {
    match format {
        Format::Json => write_json(out, &json_value)?,
        _ => write_table(out, format, header, &rows)?,
    }
    Ok(())
}

fn cmd_eval<W: Write>(t: f64, cfg: &EvalConfig, format: Format, out: W) -> Result<Outcome> {
    let z = hardy_z(t, cfg)?;
    let theta = theta_exact(t);
    let count = if t > 0.0 {
        Some(n_riemann_von_mangoldt(t, Definition::Titchmarsh, cfg)?)
    } else {
        None
    };
    let predicted = count.map(|c| if c.n_int % 2 == 0 { -1i8 } else { 1 });
    // At an ordinate Z carries no sign; the relation is not checked there.
    let agrees = match (predicted, count) {
        (Some(p), Some(c)) if !c.near_ordinate => Some(z.sign() == p),
        _ => None,
    };
    let header = ["t", "z", "zeta_abs", "theta", "s", "n_raw", "n_int", "predicted_sign", "sign_agrees"];
    let row = vec![
        fmt_sig15(t),
        fmt_sig15(z.z_value),
        fmt_sig15(z.zeta_modulus),
        fmt_sig15(theta),
        cell(count.map(|c| c.s_of_t)),
        cell(count.map(|c| c.n_raw)),
        int_cell(count.map(|c| c.n_int)),
        int_cell(predicted),
        int_cell(agrees),
    ];
    let value = json!({
        "schema_version": SCHEMA_VERSION,
        "t": q(t),
        "z": q(z.z_value),
        "zeta_abs": q(z.zeta_modulus),
        "theta": q(theta),
        "s": count.map(|c| q(c.s_of_t)),
        "n_raw": count.map(|c| q(c.n_raw)),
        "n_int": count.map(|c| c.n_int),
        "predicted_sign": predicted,
        "sign_agrees": agrees,
    });
    table_or_json(out, format, &header, vec![row], value)?;
    Ok(if agrees == Some(false) {
        Outcome {
            pass: false,
            summary: json!({"command": "eval", "t": t, "failure": "sign disagrees with parity"}),
        }
    } else {
        Outcome::ok()
    })
}

/// Scans from below the first zero so that the catalog covers `(0, to]`.
fn prefix_catalog(to: f64, step: f64, cfg: &EvalConfig) -> Result<ZeroCatalog> {
    let lo = 0.5f64.min(0.5 * to);
    Ok(scan_zeros(lo, to, step, cfg)?)
}

fn report_json(rep: &SignReport) -> serde_json::Value {
    let failures: Vec<_> = rep
        .failures()
        .map(|r| {
            json!({
                "t": q(r.t),
                "z_sign": r.z_sign,
                "n_parity": r.n_parity,
                "predicted_sign": r.predicted_sign,
                "n_value": r.n_value,
                "catalog_count": r.catalog_count,
                "dist_to_nearest_gamma": q(r.dist_to_nearest_gamma),
            })
        })
        .collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "range": [q(rep.t_lo), q(rep.t_hi)],
        "samples": rep.samples,
        "exclusion": q(rep.exclusion),
        "checked": rep.records.len(),
        "excluded": rep.excluded,
        "failures": failures,
        "pass": rep.pass(),
    })
}

fn cmd_verify<W: Write>(
    (from, to, samples, exclusion, step): (f64, f64, usize, f64, f64),
    cfg: &EvalConfig,
    format: Format,
    out: W,
) -> Result<Outcome> {
    let catalog = prefix_catalog(to, step, cfg)?;
    let rep = verify_sign_relation(&catalog, from, to, samples, exclusion, cfg)?;
    let header = ["t", "z_sign", "n_parity", "predicted_sign", "agrees", "dist_to_nearest_gamma"];
    let rows = rep
        .records
        .iter()
        .map(|r| {
            vec![
                fmt_sig15(r.t),
                r.z_sign.to_string(),
                r.n_parity.to_string(),
                r.predicted_sign.to_string(),
                r.passed().to_string(),
                fmt_sig15(r.dist_to_nearest_gamma),
            ]
        })
        .collect();
    let value = report_json(&rep);
    table_or_json(out, format, &header, rows, value.clone())?;
    Ok(if rep.pass() {
        Outcome::ok()
    } else {
        let n = rep.failures().count();
        Outcome {
            pass: false,
            summary: json!({"command": "verify", "failures": n, "report": value}),
        }
    })
}

fn cmd_stats<W: Write>(t: f64, step: f64, cfg: &EvalConfig, format: Format, out: W) -> Result<Outcome> {
    if !(t > 0.0) {
        bail!("T must be positive, got {t}");
    }
    let stats: ParityStats = if t <= 0.5 {
        ParityStats::from_counts(t, &[])
    } else {
        parity_statistics(&prefix_catalog(t, step, cfg)?, t, cfg)?
    };
    let identity = stats.floor_identity_holds();
    let header = ["T", "total", "even_count", "ratio", "floor_identity"];
    let row = vec![
        fmt_sig15(t),
        stats.total.to_string(),
        stats.even_count.to_string(),
        cell(stats.ratio),
        identity.to_string(),
    ];
    let value = json!({
        "schema_version": SCHEMA_VERSION,
        "T": q(t),
        "total": stats.total,
        "even_count": stats.even_count,
        "ratio": stats.ratio.map(q),
        "floor_identity": identity,
    });
    table_or_json(out, format, &header, vec![row], value)?;
    Ok(if identity {
        Outcome::ok()
    } else {
        Outcome {
            pass: false,
            summary: json!({"command": "stats", "T": t, "failure": "even_count != floor(total / 2)"}),
        }
    })
}

fn cmd_gram<W: Write>(from: i64, to: i64, format: Format, out: W) -> Result<Outcome> {
    if from > to {
        bail!("--from {from} exceeds --to {to}");
    }
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for n in from..=to {
        let g = gram_point(n)?;
        let residual = (theta_exact(g) - n as f64 * std::f64::consts::PI).abs();
        rows.push(vec![n.to_string(), fmt_sig15(g), fmt_sig15(residual)]);
        entries.push(json!({"n": n, "gram_point": q(g), "theta_residual": q(residual)}));
    }
    let value = json!({"schema_version": SCHEMA_VERSION, "gram_points": entries});
    table_or_json(out, format, &["n", "gram_point", "theta_residual"], rows, value)?;
    Ok(Outcome::ok())
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("HARDY_SIGN_THREADS") {
        let n: usize = v
            .parse()
            .with_context(|| format!("HARDY_SIGN_THREADS={v:?} is not a thread count"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Outcome> {
    configure_threads()?;
    let cfg = EvalConfig {
        target_abs_tol: cli.common.tol,
        euler_maclaurin_terms: cli.common.em_terms,
        ..EvalConfig::default()
    };
    cfg.validate()?;
    let format: Format = cli.common.format.into();

    // Output is assembled in memory so a failing command leaves no partial file.
    let mut buf = Vec::new();
    let outcome = match cli.command {
        Command::Eval { t } => cmd_eval(t, &cfg, format, &mut buf)?,
        Command::Zeros { from, to, step } => {
            let catalog = scan_zeros(from, to, step, &cfg)?;
            write_catalog(&mut buf, &catalog, format)?;
            Outcome::ok()
        }
        Command::Verify {
            from,
            to,
            samples,
            exclusion,
            step,
        } => cmd_verify((from, to, samples, exclusion, step), &cfg, format, &mut buf)?,
        Command::Stats { t, step } => cmd_stats(t, step, &cfg, format, &mut buf)?,
        Command::Gram { from, to } => cmd_gram(from, to, format, &mut buf)?,
    };

    match &cli.common.out {
        Some(path) => {
            let mut f = BufWriter::new(
                File::create(path).with_context(|| format!("creating {}", path.display()))?,
            );
            f.write_all(&buf)?;
            f.flush()?;
        }
        None => io::stdout().write_all(&buf)?,
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(o) if o.pass => ExitCode::SUCCESS,
        Ok(o) => {
            eprintln!("{}", json!({"status": "failed", "summary": o.summary}));
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("{}", json!({"status": "error", "error": format!("{e:#}")}));
            ExitCode::from(2)
        }
    }
}
