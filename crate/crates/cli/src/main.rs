use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use susy_pt::ladder::{build_from_ground, build_up_prefactor, raising_chain};
use susy_pt::verify::{self, Suite, VerifyConfig};
use susy_pt::wavefun::build_eigenfunction;
use susy_pt::{ChainStep, ModelParams};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "susy-pt", version, about = "Relativistic Pöschl-Teller spectra, eigenfunctions and ladder checks")]
struct Cli {
    /// Output format (tables default to csv, verify to text).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Energy levels E_n², E_n and Δ-eigenvalues n(n+2k) for n = 0..=n_max.
    Spectrum {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
    },
    /// Samples of the normalized eigenfunction U_{k,n} on a uniform grid.
    Eigenfunction {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Number of rows, endpoints included.
        #[arg(long, default_value_t = 201)]
        samples: usize,
    },
    /// The chain of raising operators that builds U_{k,n} from a ground state.
    Hierarchy {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Run the verification suites and report residuals.
    Verify {
        #[command(flatten)]
        model: OptionalModelArgs,
        /// Suite to run (repeatable; all suites when absent).
        #[arg(long = "suite", value_parser = parse_suite)]
        suites: Vec<Suite>,
        #[arg(long, default_value_t = verify::DEFAULT_N_MAX)]
        n_max: usize,
        #[arg(long, default_value_t = verify::DEFAULT_GRID_N)]
        grid_n: usize,
        /// Record the current UTC time in the report metadata.
        #[arg(long)]
        timestamp: bool,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "model_param")]
struct KOrMass {
    /// Envelope exponent k (> 1).
    #[arg(long)]
    k: Option<f64>,
    /// Mass m, from which k is derived.
    #[arg(long)]
    mass: Option<f64>,
}

#[derive(Debug, Args)]
struct ModelArgs {
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    #[arg(long, default_value_t = 1.0)]
    epsilon: f64,
    #[command(flatten)]
    k_or_mass: KOrMass,
}

#[derive(Debug, Args)]
#[group(required = false, multiple = false, id = "verify_param")]
struct OptionalKOrMass {
    /// Verify a single model with this k instead of the default battery.
    #[arg(long)]
    k: Option<f64>,
    #[arg(long)]
    mass: Option<f64>,
}

#[derive(Debug, Args)]
struct OptionalModelArgs {
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    #[arg(long, default_value_t = 1.0)]
    epsilon: f64,
    #[command(flatten)]
    k_or_mass: OptionalKOrMass,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

fn build_params(omega: f64, epsilon: f64, k: Option<f64>, mass: Option<f64>) -> susy_pt::Result<ModelParams> {
    match (k, mass) {
        (Some(k), _) => ModelParams::new(omega, epsilon, k),
        (None, Some(m)) => ModelParams::from_mass(m, omega, epsilon),
        (None, None) => unreachable!("clap enforces one of --k / --mass"),
    }
}

impl ModelArgs {
    fn params(&self) -> susy_pt::Result<ModelParams> {
        build_params(self.omega, self.epsilon, self.k_or_mass.k, self.k_or_mass.mass)
    }
}

/// Seventeen significant digits.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn params_comment(p: &ModelParams) -> String {
    format!(
        "# omega={},epsilon={},k={},mass={}\n",
        num(p.omega()),
        num(p.epsilon()),
        num(p.k()),
        num(p.mass())
    )
}

#[derive(Serialize)]
struct ParamsOut {
    omega: f64,
    epsilon: f64,
    k: f64,
    mass: f64,
    hat_omega: f64,
    half_width: f64,
}

impl From<&ModelParams> for ParamsOut {
    fn from(p: &ModelParams) -> Self {
        Self {
            omega: p.omega(),
            epsilon: p.epsilon(),
            k: p.k(),
            mass: p.mass(),
            hat_omega: p.hat_omega(),
            half_width: p.half_width(),
        }
    }
}

/// Renders rows as CSV (with a parameter comment) or as an aligned table.
fn table(format: Format, p: &ModelParams, header: &[&str], rows: &[Vec<String>], notes: &[(&str, f64)]) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str(&params_comment(p));
            for (key, value) in notes {
                let _ = writeln!(out, "# {key}={}", num(*value));
            }
            out.push_str(&header.join(","));
            out.push('\n');
            for row in rows {
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }
        _ => {
            out.push_str(&params_comment(p));
            for (key, value) in notes {
                let _ = writeln!(out, "# {key}={}", num(*value));
            }
            let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for row in rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.len());
                }
            }
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            out.push_str(&line(header.to_vec()));
            for row in rows {
                out.push_str(&line(row.iter().map(String::as_str).collect()));
            }
        }
    }
    out
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serializes") + "\n"
}

fn cmd_spectrum(format: Format, model: &ModelArgs, n_max: usize) -> Result<String, Failure> {
    let p = model.params()?;
    let spectrum = p.spectrum(n_max);
    if format == Format::Json {
        #[derive(Serialize)]
        struct Out<'a> {
            params: ParamsOut,
            levels: &'a [susy_pt::Level],
        }
        return Ok(to_json(&Out {
            params: (&p).into(),
            levels: &spectrum.levels,
        }));
    }
    let rows: Vec<Vec<String>> = spectrum
        .levels
        .iter()
        .map(|l| vec![l.n.to_string(), num(l.e_squared), num(l.energy), num(l.delta_eig)])
        .collect();
    Ok(table(format, &p, &["n", "e_squared", "energy", "delta_eigenvalue"], &rows, &[]))
}

fn cmd_eigenfunction(format: Format, model: &ModelArgs, n: usize, samples: usize) -> Result<String, Failure> {
    if samples < 2 {
        return Err(Failure::Usage(format!("--samples must be at least 2 (got {samples})")));
    }
    let p = model.params()?;
    let u = build_eigenfunction(&p, n)?;
    let d = p.half_width();
    let last = samples - 1;
    let mut points = Vec::with_capacity(samples);
    for i in 0..samples {
        let x = if i == last { d } else { -d + 2.0 * d * i as f64 / last as f64 };
        let value = if i == 0 || i == last { 0.0 } else { u.evaluate(x)? };
        points.push((x, value));
    }
    if format == Format::Json {
        #[derive(Serialize)]
        struct Sample {
            x: f64,
            value: f64,
        }
        #[derive(Serialize)]
        struct Out {
            params: ParamsOut,
            n: usize,
            samples: Vec<Sample>,
        }
        return Ok(to_json(&Out {
            params: (&p).into(),
            n,
            samples: points.iter().map(|&(x, value)| Sample { x, value }).collect(),
        }));
    }
    let rows: Vec<Vec<String>> = points.iter().map(|&(x, v)| vec![num(x), num(v)]).collect();
    Ok(table(format, &p, &["x", "value"], &rows, &[]))
}

fn cmd_hierarchy(format: Format, model: &ModelArgs, n: usize) -> Result<String, Failure> {
    let p = model.params()?;
    let chain: Vec<ChainStep> = raising_chain(p.k(), n);
    let prefactor = build_up_prefactor(p.k(), n)?;
    let final_norm = build_from_ground(&p, n)?.norm();
    if format == Format::Json {
        #[derive(Serialize)]
        struct Out<'a> {
            params: ParamsOut,
            n: usize,
            chain: &'a [ChainStep],
            prefactor: f64,
            final_norm: f64,
        }
        return Ok(to_json(&Out {
            params: (&p).into(),
            n,
            chain: &chain,
            prefactor,
            final_norm,
        }));
    }
    let rows: Vec<Vec<String>> = chain
        .iter()
        .map(|s| vec![s.step.to_string(), num(s.k_level), s.n_from.to_string(), s.n_to.to_string(), num(s.factor)])
        .collect();
    Ok(table(
        format,
        &p,
        &["step", "k_level", "n_from", "n_to", "factor"],
        &rows,
        &[("prefactor", prefactor), ("final_norm", final_norm)],
    ))
}

struct VerifyArgs<'a> {
    model: &'a OptionalModelArgs,
    suites: &'a [Suite],
    n_max: usize,
    grid_n: usize,
    timestamp: bool,
}

fn cmd_verify(format: Format, args: VerifyArgs<'_>) -> Result<(String, bool), Failure> {
    let m = args.model;
    let params_set = if m.k_or_mass.k.is_some() || m.k_or_mass.mass.is_some() {
        vec![build_params(m.omega, m.epsilon, m.k_or_mass.k, m.k_or_mass.mass)?]
    } else {
        verify::default_battery()
    };
    if args.n_max > susy_pt::wavefun::MAX_LEVEL {
        return Err(Failure::Usage(format!("--n-max must not exceed {}", susy_pt::wavefun::MAX_LEVEL)));
    }
    if args.grid_n < 32 {
        return Err(Failure::Usage(format!("--grid-n must be at least 32 (got {})", args.grid_n)));
    }
    let config = VerifyConfig {
        params_set,
        n_max: args.n_max,
        grid_n: args.grid_n,
        ..VerifyConfig::default()
    };
    let suites = if args.suites.is_empty() { &Suite::ALL[..] } else { args.suites };
    let mut report = verify::run(&config, suites);
    if args.timestamp {
        report.meta.timestamp = Some(chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
    }
    let passed = report.all_passed();
    let text = match format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_string() + "\n",
        Format::Csv => {
            let mut out = String::from("suite,status,worst_residual,tolerance\n");
            for s in &report.suites {
                let _ = writeln!(out, "{},{},{},{}", s.name, s.status, num(s.worst_residual), num(s.tolerance));
            }
            out
        }
    };
    Ok((text, passed))
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Model(susy_pt::Error),
    Io(io::Error),
}

impl From<susy_pt::Error> for Failure {
    fn from(e: susy_pt::Error) -> Self {
        Failure::Model(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(msg) => f.write_str(msg),
            Failure::Model(e) => write!(f, "{e}"),
            Failure::Io(e) => write!(f, "{e}"),
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("SUSY_PT_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::Usage(format!("SUSY_PT_THREADS must be a positive integer (got '{raw}')")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn emit(output: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text).map_err(Failure::Io),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).map_err(Failure::Io)
        }
    }
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    configure_threads()?;
    let (text, passed) = match &cli.command {
        Command::Spectrum { model, n_max } => (cmd_spectrum(cli.format.unwrap_or(Format::Csv), model, *n_max)?, true),
        Command::Eigenfunction { model, n, samples } => {
            (cmd_eigenfunction(cli.format.unwrap_or(Format::Csv), model, *n, *samples)?, true)
        }
        Command::Hierarchy { model, n } => (cmd_hierarchy(cli.format.unwrap_or(Format::Csv), model, *n)?, true),
        Command::Verify {
            model,
            suites,
            n_max,
            grid_n,
            timestamp,
        } => cmd_verify(
            cli.format.unwrap_or(Format::Text),
            VerifyArgs {
                model,
                suites,
                n_max: *n_max,
                grid_n: *grid_n,
                timestamp: *timestamp,
            },
        )?,
    };
    emit(cli.output.as_ref(), &text)?;
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VERIFY_FAILED),
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
