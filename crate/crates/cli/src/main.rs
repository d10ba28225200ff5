mod emit;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use qdeform_core::checks::{self, Mode, Report};
use qdeform_core::exterior::Normalization;
use qdeform_core::{Kind, Model, Sign};

use emit::{Object, Request};

#[derive(Parser)]
#[command(
    name = "qdeform",
    version,
    about = "Exact q-deformed braid matrices, projectors, epsilon tensors and calculus"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    Scalar,
    Braid,
    Projectors,
    Epsilon,
    Hodge,
    Laplacian,
    Calculus,
}

#[derive(clap::Args)]
struct ModelArgs {
    /// gl or so
    #[arg(long = "algebra", value_parser = parse_kind)]
    algebra_flag: Option<Kind>,
    #[arg(long = "n")]
    n_flag: Option<usize>,
    #[arg(long, value_parser = parse_norm)]
    normalization: Option<Normalization>,
    #[arg(long, value_parser = parse_mode)]
    mode: Option<Mode>,
}

#[derive(Subcommand)]
enum Command {
    /// Print a constructed object
    Emit {
        #[arg(value_enum)]
        object: Object,
        #[arg(value_parser = parse_kind)]
        algebra: Option<Kind>,
        n: Option<usize>,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        level: Option<usize>,
        /// + or - (also plus, minus)
        #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
        sign: Option<Sign>,
        /// Substitute q, e.g. q=4 or q=1/9
        #[arg(long, value_parser = parse_eval)]
        eval: Option<BigRational>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run identity suites; exit code 0 iff every identity holds
    Check {
        #[arg(value_enum, default_value = "all")]
        suite: Suite,
        #[arg(value_parser = parse_kind)]
        algebra: Option<Kind>,
        n: Option<usize>,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        max_level: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare main-path results with the independent reference computations
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    Kind::from_str(s).map_err(|e| e.to_string())
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    Sign::from_str(s).map_err(|e| e.to_string())
}

fn parse_norm(s: &str) -> Result<Normalization, String> {
    Normalization::from_str(s).map_err(|e| e.to_string())
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    Mode::from_str(s).map_err(|e| e.to_string())
}

fn parse_eval(s: &str) -> Result<BigRational, String> {
    let v = s.strip_prefix("q=").ok_or("expected q=RATIONAL")?;
    BigRational::from_str(v.trim()).map_err(|e| format!("bad rational {:?}: {}", v, e))
}

fn pick<T: PartialEq + std::fmt::Debug>(
    what: &str,
    pos: Option<T>,
    flag: Option<T>,
) -> Result<Option<T>> {
    match (pos, flag) {
        (Some(a), Some(b)) if a != b => bail!(
            "{} given twice with different values ({:?} and {:?})",
            what,
            a,
            b
        ),
        (a, b) => Ok(a.or(b)),
    }
}

fn model_from(algebra: Option<Kind>, n: Option<usize>, args: &ModelArgs) -> Result<Option<Model>> {
    let kind = pick("algebra", algebra, args.algebra_flag)?;
    let n = pick("N", n, args.n_flag)?;
    match (kind, n) {
        (Some(k), Some(n)) => Ok(Some(Model::new(k, n)?)),
        (None, None) => Ok(None),
        _ => bail!("give both the algebra and N"),
    }
}

fn write_out(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes())?;
            so.flush()?;
            Ok(())
        }
    }
}

/// Runs `suite` on one model after checking the supported range.
fn suite_for(
    suite: Suite,
    m: &Model,
    norm: Option<Normalization>,
    mode: Option<Mode>,
    max_level: usize,
    seed: u64,
) -> Result<Report> {
    let full = match m.kind {
        Kind::Gl => (2..=4).contains(&m.n),
        Kind::So => (3..=4).contains(&m.n),
    };
    let so5_eps = m.is_so() && m.n == 5 && suite == Suite::Epsilon;
    if !full && !so5_eps {
        bail!(
            "{} is outside the supported range (gl 2-4, so 3-4; so 5 only for the epsilon suite)",
            m
        );
    }
    if so5_eps && norm != Some(Normalization::UnitTop) {
        bail!("so(5) epsilon needs --normalization unit-top");
    }
    if matches!(suite, Suite::Hodge | Suite::Laplacian) && !m.is_so() {
        bail!("the {:?} suite needs so (got {})", suite, m);
    }
    if mode.is_some() && !matches!(suite, Suite::Hodge | Suite::Laplacian | Suite::All) {
        bail!("--mode applies only to the hodge and laplacian suites");
    }
    let norm = match norm {
        Some(n) => n,
        None if qdeform_core::qcoeff::gamma_tabulated(m).is_ok() => Normalization::Tabulated,
        None => Normalization::UnitTop,
    };
    if norm == Normalization::Tabulated {
        qdeform_core::qcoeff::gamma_tabulated(m)?;
    }
    let mut r = Report::default();
    let so = m.is_so();
    if matches!(suite, Suite::All | Suite::Braid) {
        r.extend(checks::braid_suite(m));
    }
    if matches!(suite, Suite::All | Suite::Projectors) {
        r.extend(checks::projector_suite(m, max_level));
    }
    if matches!(suite, Suite::All | Suite::Epsilon) {
        r.extend(checks::epsilon_suite(m, norm, max_level, seed));
    }
    if matches!(suite, Suite::All | Suite::Calculus) {
        r.extend(checks::calculus_suite(m, seed));
    }
    if so && matches!(suite, Suite::All | Suite::Hodge) {
        r.extend(checks::hodge_suite(m, mode));
    }
    if so && matches!(suite, Suite::All | Suite::Laplacian) {
        r.extend(checks::laplacian_suite(m, mode));
    }
    Ok(r)
}

fn default_models(suite: Suite) -> Vec<Model> {
    let gl = (2..=4).map(Model::gl);
    let so = (3..=4).map(Model::so);
    match suite {
        Suite::Scalar => vec![],
        Suite::Hodge | Suite::Laplacian => so.collect(),
        _ => gl.chain(so).collect(),
    }
}

fn run() -> Result<bool> {
    let cli = Cli::parse();
    match cli.command {
        Command::Emit {
            object,
            algebra,
            n,
            model,
            level,
            sign,
            eval,
            format,
            out,
        } => {
            let m = model_from(algebra, n, &model)?
                .ok_or_else(|| anyhow!("emit needs the algebra and N"))?;
            if model.mode == Some(Mode::Extension) {
                bail!("--mode extension applies only to check hodge|laplacian; emitted objects live in Q(q^(1/2))");
            }
            let req = Request {
                object,
                model: m,
                level,
                sign,
                normalization: model.normalization,
                eval,
            };
            let doc = emit::build(&req)?;
            let text = match format {
                Format::Json => doc.to_json(),
                Format::Text => doc.to_text(),
            };
            write_out(out.as_ref(), &text)?;
            Ok(true)
        }
        Command::Check {
            suite,
            algebra,
            n,
            model,
            max_level,
            seed,
            out,
        } => {
            let m = model_from(algebra, n, &model)?;
            let max_level = max_level.unwrap_or(4);
            let mut r = Report::default();
            if matches!(suite, Suite::All | Suite::Scalar) {
                r.extend(checks::scalar_suite(seed));
            }
            if suite != Suite::Scalar {
                match &m {
                    Some(m) => r.extend(suite_for(
                        suite,
                        m,
                        model.normalization,
                        model.mode,
                        max_level,
                        seed,
                    )?),
                    None => {
                        for m in default_models(suite) {
                            r.extend(suite_for(
                                suite,
                                &m,
                                model.normalization,
                                model.mode,
                                max_level,
                                seed,
                            )?);
                        }
                        if matches!(suite, Suite::All | Suite::Hodge) {
                            for n in 5..=6 {
                                r.extend(checks::coefficient_suite(n));
                            }
                        }
                    }
                }
            }
            write_out(out.as_ref(), &r.render())?;
            Ok(r.all_pass())
        }
        Command::Selftest { seed, out } => {
            let r = checks::selftest(seed);
            write_out(out.as_ref(), &r.render())?;
            Ok(r.all_pass())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}
