//! `qrk`: evaluate, tabulate and verify q-Racah and q-Racah-Krall polynomials.
//!
//! Exit codes: 0 success, 1 verification failure, 2 configuration or usage error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use qracah_krall::config::Config;
use qracah_krall::exec::Exec;
use qracah_krall::krall::KrallFamily;
use qracah_krall::limits::{dual_family, qhahn_family};
use qracah_krall::oracle::{gram_schmidt_monic, DiscreteMeasure};
use qracah_krall::verify::{self, Suite, VerifyOptions};
use qracah_krall::{OrthogonalFamily, Rational};

#[derive(Parser)]
#[command(name = "qrk", version, about = "Exact q-Racah and q-Racah-Krall polynomials")]
struct Cli {
    /// JSON parameter file; defaults to the canonical set with N = 4.
    #[arg(long, global = true)]
    params: Option<PathBuf>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print `P_n(x(s))` as an exact rational, then its decimal value.
    Eval {
        #[arg(long, value_enum, default_value_t = Family::Racah)]
        family: Family,
        #[arg(short)]
        n: usize,
        #[arg(short, allow_negative_numbers = true)]
        s: i64,
    },
    /// Tabulate values and masses per (n, s), or norms and recurrence coefficients per n.
    Table {
        #[arg(long, value_enum, default_value_t = Family::Racah)]
        family: Family,
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long, value_enum, default_value_t = TableKind::Values)]
        kind: TableKind,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run a verification suite; exits 1 when any check fails.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Disable the thread pool.
        #[arg(long)]
        sequential: bool,
    },
    /// Export Gram-Schmidt coefficients for the (modified) q-Racah measure.
    Oracle {
        #[arg(long)]
        nmax: Option<usize>,
        /// Ignore the endpoint masses.
        #[arg(long)]
        no_masses: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Racah,
    Krall,
    Dual,
    DualKrall,
    Qhahn,
    QhahnKrall,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Values,
    Degrees,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

/// Failures mapped onto exit codes.
enum Failure {
    Verification(String),
    Usage(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<qracah_krall::Error> for Failure {
    fn from(e: qracah_krall::Error) -> Self {
        Failure::Usage(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(out)) => {
            if emit(&cli, &out).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, text: &str) -> anyhow::Result<()> {
    match &cli.out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn load(cli: &Cli) -> anyhow::Result<Config> {
    match &cli.params {
        Some(p) => Config::from_path(p).map_err(|e| anyhow!(e)),
        None => Config::canonical(4).map_err(|e| anyhow!(e)),
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let cfg = load(cli)?;
    match &cli.cmd {
        Cmd::Eval { family, n, s } => {
            let out = with_family(&cfg, *family, |f| {
                f.check_degree(*n)?;
                f.check_node(*s)?;
                let v = f.eval(*n, *s)?;
                Ok(format!("{v}\n{}\n", v.to_f64()))
            })?;
            emit(cli, &out)?;
        }
        Cmd::Table { family, nmax, kind, format } => {
            let out = with_family(&cfg, *family, |f| table(f, *nmax, *kind, *format))?;
            emit(cli, &out)?;
        }
        Cmd::Verify { suite, nmax, format, sequential } => {
            let suite: Suite = suite.parse()?;
            let exec = if *sequential { Exec::Sequential } else { Exec::Parallel };
            let rep = verify::run(suite, &cfg, &VerifyOptions { exec, nmax: *nmax });
            let text = match format {
                ReportFormat::Text => rep.to_text(),
                ReportFormat::Json => rep.to_json() + "\n",
            };
            if !rep.passed() {
                return Err(Failure::Verification(text));
            }
            emit(cli, &text)?;
        }
        Cmd::Oracle { nmax, no_masses, format } => {
            let fam = cfg.family();
            let big = fam.degree_max();
            let nmax = nmax.unwrap_or(big).min(big);
            let mut mu = DiscreteMeasure::from_family(&fam)?;
            if !no_masses {
                mu = mu.with_endpoint_masses(cfg.masses.a.clone(), cfg.masses.b.clone());
            }
            let gs = gram_schmidt_monic(&mu, nmax)?;
            let out = match format {
                Format::Json => {
                    let v = serde_json::json!({
                        "params": cfg.echo(),
                        "masses_included": !no_masses,
                        "coeffs": gs.coeffs,
                        "norms": gs.norms,
                        "beta": gs.beta,
                        "gamma": gs.gamma,
                    });
                    serde_json::to_string_pretty(&v).map_err(|e| anyhow!(e))? + "\n"
                }
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["n", "k", "coeff"]).map_err(|e| anyhow!(e))?;
                    for (n, row) in gs.coeffs.iter().enumerate() {
                        for (k, c) in row.iter().enumerate() {
                            w.write_record([n.to_string(), k.to_string(), c.to_string()]).map_err(|e| anyhow!(e))?;
                        }
                    }
                    csv_string(w)?
                }
            };
            emit(cli, &out)?;
        }
    }
    Ok(())
}

type Dyn<'a> = &'a dyn OrthogonalFamily<Rational>;

fn with_family<R>(cfg: &Config, family: Family, f: impl FnOnce(Dyn<'_>) -> anyhow::Result<R>) -> anyhow::Result<R> {
    let masses = cfg.masses.clone();
    match family {
        Family::Racah => f(&cfg.family()),
        Family::Krall => {
            let base = cfg.family();
            f(&KrallFamily::new(&base, masses)?)
        }
        Family::Dual => f(&dual_family(&cfg.dual)?),
        Family::DualKrall => {
            let base = dual_family(&cfg.dual)?;
            f(&KrallFamily::new(&base, masses)?)
        }
        Family::Qhahn => f(&qhahn_family(&cfg.qhahn)?),
        Family::QhahnKrall => {
            let base = qhahn_family(&cfg.qhahn)?;
            f(&KrallFamily::new(&base, masses)?)
        }
    }
}

fn csv_string(w: csv::Writer<Vec<u8>>) -> anyhow::Result<String> {
    let bytes = w.into_inner().map_err(|e| anyhow!("{e}"))?;
    Ok(String::from_utf8(bytes)?)
}

fn table(f: Dyn<'_>, nmax: Option<usize>, kind: TableKind, format: Format) -> anyhow::Result<String> {
    let big = f.degree_max();
    let nmax = nmax.unwrap_or(big).min(big);
    let (header, rows): (Vec<&str>, Vec<Vec<String>>) = match kind {
        TableKind::Values => {
            let mut rows = Vec::new();
            for n in 0..=nmax {
                for s in 0..=big as i64 {
                    rows.push(vec![
                        n.to_string(),
                        s.to_string(),
                        f.node(s).to_string(),
                        f.eval(n, s)?.to_string(),
                        f.mass(s)?.to_string(),
                    ]);
                }
            }
            (vec!["n", "s", "x", "value", "mass"], rows)
        }
        TableKind::Degrees => {
            let mut rows = Vec::new();
            for n in 0..=nmax {
                let (b, g) = f.recurrence(n)?;
                rows.push(vec![n.to_string(), f.d2(n)?.to_string(), b.to_string(), g.to_string()]);
            }
            (vec!["n", "d2", "beta", "gamma"], rows)
        }
    };
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&header)?;
            for r in &rows {
                w.write_record(r)?;
            }
            csv_string(w)
        }
        Format::Json => {
            let objs: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    let m: serde_json::Map<String, serde_json::Value> = header
                        .iter()
                        .zip(r)
                        .map(|(h, v)| {
                            let val = if *h == "n" || *h == "s" {
                                serde_json::Value::from(v.parse::<i64>().expect("integer column"))
                            } else {
                                serde_json::Value::from(v.clone())
                            };
                            (h.to_string(), val)
                        })
                        .collect();
                    serde_json::Value::Object(m)
                })
                .collect();
            Ok(serde_json::to_string_pretty(&objs)? + "\n")
        }
    }
}
