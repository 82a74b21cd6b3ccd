//! Command-line front end: `classify`, `simulate`, `verify`, `sweep` and
//! `cases`. Every command returns an [`Output`] so it can be driven from tests
//! without spawning a process.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use riccati_planar::registry::case_spec;
use riccati_planar::simulate::{iterate, observe};
use riccati_planar::{CaseId, CaseParams, SimOptions, State, Symbol};

pub mod report;
pub mod sweep;

pub use sweep::{cmd_sweep, Flip, SweepReport, SweepRow, SweepSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_FORBIDDEN: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;

/// Default thresholds of `verify`.
pub const CONJUGACY_TOL: f64 = 1e-12;
pub const SPECTRUM_TOL: f64 = 1e-9;

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Forbidden(String),
    Verification(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Forbidden(_) => EXIT_FORBIDDEN,
            CliError::Verification(_) => EXIT_VERIFICATION,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) | CliError::Forbidden(m) | CliError::Verification(m) => {
                f.write_str(m)
            }
        }
    }
}

impl std::error::Error for CliError {}

impl From<riccati_planar::Error> for CliError {
    fn from(e: riccati_planar::Error) -> Self {
        use riccati_planar::Error as E;
        match e {
            E::ZeroDenominator { .. } | E::ForbiddenInitial { .. } | E::DomainViolation { .. } => {
                CliError::Forbidden(e.to_string())
            }
            other => CliError::Validation(other.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Default, Clone, PartialEq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn err(e: &CliError) -> Self {
        Output {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.code(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "riccati-planar",
    version,
    about = "Riccati-reducible cases of x' = a1/(A1+y), y' = (a2+b2x+c2y)/(A2+B2x+C2y)"
)]
pub struct Cli {
    /// TOML file with simulation defaults (keys as in `--max-iters` etc., snake_case).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Emit JSON instead of text/CSV.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the table of cases.
    Cases,
    /// Predicted behavior, equilibria and spectra for one parameter point.
    #[command(allow_negative_numbers = true)]
    Classify {
        case: CaseId,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Iterate one orbit; CSV `n,x,y` on stdout, observed behavior on stderr.
    #[command(allow_negative_numbers = true)]
    Simulate {
        case: CaseId,
        #[command(flatten)]
        params: ParamArgs,
        /// Initial condition `x,y`.
        #[arg(long, default_value = "1,1", value_parser = parse_state)]
        ic: State,
        #[command(flatten)]
        sim: SimArgs,
    },
    /// Conjugacy residual on a log grid and closed-form vs numeric spectra.
    #[command(allow_negative_numbers = true)]
    Verify {
        case: CaseId,
        #[command(flatten)]
        params: ParamArgs,
        /// Grid points per axis.
        #[arg(long, default_value_t = 20)]
        grid: usize,
        #[arg(long, default_value_t = CONJUGACY_TOL)]
        conj_tol: f64,
        #[arg(long, default_value_t = SPECTRUM_TOL)]
        eig_tol: f64,
    },
    /// Vary one parameter over a linear grid; CSV
    /// `param,predicted,observed,limit_x,limit_y` on stdout, one row per
    /// (value, initial condition).
    #[command(allow_negative_numbers = true)]
    Sweep {
        case: CaseId,
        #[command(flatten)]
        params: ParamArgs,
        /// Parameter to vary, e.g. `A2` or `alpha1`.
        #[arg(long)]
        vary: Symbol,
        #[arg(long)]
        lo: f64,
        #[arg(long)]
        hi: f64,
        #[arg(long, default_value_t = 19)]
        steps: usize,
        /// Initial condition `x,y`; repeatable.
        #[arg(long = "ic", value_parser = parse_state)]
        ics: Vec<State>,
        #[command(flatten)]
        sim: SimArgs,
    },
}

#[derive(Debug, Default, Clone, Args)]
pub struct ParamArgs {
    #[arg(long)]
    pub alpha1: Option<f64>,
    #[arg(long = "A1")]
    pub a1: Option<f64>,
    #[arg(long)]
    pub alpha2: Option<f64>,
    #[arg(long)]
    pub beta2: Option<f64>,
    #[arg(long)]
    pub gamma2: Option<f64>,
    #[arg(long = "A2")]
    pub a2: Option<f64>,
    #[arg(long = "B2")]
    pub b2: Option<f64>,
    #[arg(long = "C2")]
    pub c2: Option<f64>,
}

impl ParamArgs {
    pub fn get(&self, sym: Symbol) -> Option<f64> {
        match sym {
            Symbol::Alpha1 => self.alpha1,
            Symbol::A1 => self.a1,
            Symbol::Alpha2 => self.alpha2,
            Symbol::Beta2 => self.beta2,
            Symbol::Gamma2 => self.gamma2,
            Symbol::A2 => self.a2,
            Symbol::B2 => self.b2,
            Symbol::C2 => self.c2,
        }
    }

    /// Values in the order of `case`'s signature. `placeholder` fills in the
    /// swept symbol, which need not be given.
    pub fn values_for(
        &self,
        case: CaseId,
        placeholder: Option<(Symbol, f64)>,
    ) -> CliResult<Vec<f64>> {
        let names = case_spec(case).param_names;
        for sym in Symbol::ALL {
            if self.get(sym).is_some() && !names.contains(&sym) {
                return Err(CliError::Validation(format!(
                    "--{} is not a parameter of case {case} (expects {})",
                    sym.name(),
                    signature(case)
                )));
            }
        }
        names
            .iter()
            .map(|&sym| match (self.get(sym), placeholder) {
                (_, Some((p, v))) if p == sym => Ok(v),
                (Some(v), _) => Ok(v),
                (None, _) => Err(CliError::Validation(format!(
                    "missing parameter --{} for case {case} (expects {})",
                    sym.name(),
                    signature(case)
                ))),
            })
            .collect()
    }

    pub fn case_params(&self, case: CaseId) -> CliResult<CaseParams> {
        let values = self.values_for(case, None)?;
        Ok(CaseParams::new(case, &values)?)
    }
}

fn signature(case: CaseId) -> String {
    case_spec(case)
        .param_names
        .iter()
        .map(|s| format!("--{}", s.name()))
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Debug, Default, Clone, Args)]
pub struct SimArgs {
    #[arg(long)]
    pub max_iters: Option<usize>,
    #[arg(long)]
    pub conv_tol: Option<f64>,
    #[arg(long)]
    pub period_tol: Option<f64>,
    #[arg(long)]
    pub diverge_y: Option<f64>,
    #[arg(long)]
    pub diverge_x: Option<f64>,
    #[arg(long)]
    pub window: Option<usize>,
}

impl SimArgs {
    /// Flags layered over `base`.
    pub fn apply(&self, base: SimOptions) -> CliResult<SimOptions> {
        let o = SimOptions {
            max_iters: self.max_iters.unwrap_or(base.max_iters),
            conv_tol: self.conv_tol.unwrap_or(base.conv_tol),
            period_tol: self.period_tol.unwrap_or(base.period_tol),
            diverge_y: self.diverge_y.unwrap_or(base.diverge_y),
            diverge_x: self.diverge_x.unwrap_or(base.diverge_x),
            window: self.window.unwrap_or(base.window),
        };
        o.validate()?;
        Ok(o)
    }
}

pub fn parse_state(s: &str) -> Result<State, String> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `x,y`, got `{s}`"))?;
    let x: f64 = x
        .trim()
        .parse()
        .map_err(|e| format!("bad x in `{s}`: {e}"))?;
    let y: f64 = y
        .trim()
        .parse()
        .map_err(|e| format!("bad y in `{s}`: {e}"))?;
    State::new(x, y).map_err(|e| e.to_string())
}

/// Simulation defaults from a TOML file whose keys are the fields of
/// [`SimOptions`]; missing keys keep the library defaults.
pub fn load_config(path: &Path) -> CliResult<SimOptions> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
    let opts: SimOptions = toml::from_str(&text)
        .map_err(|e| CliError::Validation(format!("bad config {}: {e}", path.display())))?;
    opts.validate()?;
    Ok(opts)
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_VALIDATION
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Output::ok(text)
            } else {
                Output {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(out) => out,
        Err(e) => Output::err(&e),
    }
}

fn dispatch(cli: &Cli) -> CliResult<Output> {
    let base = match &cli.config {
        Some(p) => load_config(p)?,
        None => SimOptions::default(),
    };
    match &cli.command {
        Command::Cases => Ok(Output::ok(json_line(
            &riccati_planar::registry::case_table_json(),
        ))),
        Command::Classify { case, params } => cmd_classify(&params.case_params(*case)?, cli.json),
        Command::Simulate {
            case,
            params,
            ic,
            sim,
        } => cmd_simulate(
            &params.case_params(*case)?,
            *ic,
            &sim.apply(base)?,
            cli.json,
        ),
        Command::Verify {
            case,
            params,
            grid,
            conj_tol,
            eig_tol,
        } => {
            let cp = params.case_params(*case)?;
            let r = report::verify(&cp, *grid, *conj_tol, *eig_tol)?;
            let stdout = if cli.json {
                json_line(&r.to_json())
            } else {
                r.to_text()
            };
            Ok(Output {
                stdout,
                stderr: String::new(),
                code: if r.pass { EXIT_OK } else { EXIT_VERIFICATION },
            })
        }
        Command::Sweep {
            case,
            params,
            vary,
            lo,
            hi,
            steps,
            ics,
            sim,
        } => {
            let spec = SweepSpec::from_args(*case, params, *vary, (*lo, *hi, *steps), ics.clone())?;
            let r = cmd_sweep(&spec, &sim.apply(base)?)?;
            let mut out = Output::ok(if cli.json {
                json_line(&r.to_json())
            } else {
                r.to_csv()
            });
            if !cli.json {
                out.stderr = r.flip_summary();
            }
            Ok(out)
        }
    }
}

fn json_line(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// Prediction, equilibria and spectra of `cp`.
pub fn cmd_classify(cp: &CaseParams, json: bool) -> CliResult<Output> {
    let c = report::classify(cp)?;
    Ok(Output::ok(if json {
        json_line(&c.to_json())
    } else {
        c.to_text()
    }))
}

/// One orbit from `ic`.
pub fn cmd_simulate(
    cp: &CaseParams,
    ic: State,
    opts: &SimOptions,
    json: bool,
) -> CliResult<Output> {
    let orbit = iterate(cp, ic, opts)?;
    let observed = observe(&orbit, opts);
    let summary = report::observed_summary(&observed);
    if json {
        let mut v = orbit.to_json();
        v["case"] = serde_json::json!(cp.case());
        v["params"] = report::params_json(cp);
        v["observed"] = serde_json::to_value(&observed).expect("serializable");
        v["summary"] = serde_json::json!(summary);
        return Ok(Output::ok(json_line(&v)));
    }
    let mut buf = Vec::new();
    orbit
        .write_csv(&mut buf)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    let mut stderr = String::new();
    let _ = writeln!(
        stderr,
        "observed: {summary} after {} steps",
        orbit.states.len() - 1
    );
    Ok(Output {
        stdout: String::from_utf8(buf).expect("csv is utf-8"),
        stderr,
        code: EXIT_OK,
    })
}
