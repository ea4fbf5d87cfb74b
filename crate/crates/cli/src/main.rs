use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use aimspin_core::runner::{cmd_solve, cmd_sweep, cmd_verify, RunConfig, RunError, Suite, EXIT_BAD_INPUT};

/// Spectra of 2x2 spin-boson Hamiltonians by the asymptotic iteration method.
///
/// Settings come from an optional `key = value` config file; flags override it.
/// Writes CSV (or a verification report) to --out or standard output.
#[derive(Parser, Debug)]
#[command(name = "aimspin", version)]
struct Cli {
    /// Config file with `key = value` lines.
    #[arg(value_name = "CONFIG")]
    config_file: Option<PathBuf>,

    /// Config file (alternative to the positional argument).
    #[arg(long, value_name = "PATH", conflicts_with = "config_file")]
    config: Option<PathBuf>,

    /// jt, rashba, jc, mjc, dirac or custom.
    #[arg(long)]
    model: Option<String>,

    /// Coupling κ (rational, e.g. 0.25 or 1/4).
    #[arg(long, conflicts_with = "kappa_sq")]
    kappa: Option<String>,

    /// Squared coupling κ² (may be negative).
    #[arg(long = "kappa-sq")]
    kappa_sq: Option<String>,

    #[arg(long)]
    omega: Option<String>,

    #[arg(long)]
    omega0: Option<String>,

    /// Angular quantum number.
    #[arg(long)]
    k: Option<String>,

    /// Iteration depth.
    #[arg(long = "n-max")]
    n_max: Option<String>,

    /// Convergence tolerance between successive depths.
    #[arg(long)]
    tol: Option<String>,

    /// Expansion point of the termination condition.
    #[arg(long)]
    z0: Option<String>,

    /// Number of lowest levels to report.
    #[arg(long)]
    levels: Option<String>,

    /// Termination polynomial: d1, d2 or both.
    #[arg(long)]
    which: Option<String>,

    /// Coupling sweep `param:from:to:steps`.
    #[arg(long, value_name = "SPEC")]
    sweep: Option<String>,

    /// Output file; standard output when absent.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Run a verification suite: table1, jc, mjc, dirac or all.
    #[arg(long, value_name = "SUITE")]
    verify: Option<String>,

    /// Any other config key, as `key=value`; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

impl Cli {
    fn config(&self) -> Result<RunConfig, RunError> {
        let mut cfg = match self.config_file.as_ref().or(self.config.as_ref()) {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| RunError::BadInput(format!("cannot read {}: {e}", path.display())))?;
                RunConfig::parse(&text)?
            }
            None => RunConfig::default(),
        };
        // The model first: it decides which parameter names are accepted.
        if let Some(m) = &self.model {
            cfg.set("model", m)?;
        }
        let flags = [
            ("kappa", &self.kappa),
            ("kappa_sq", &self.kappa_sq),
            ("omega", &self.omega),
            ("omega0", &self.omega0),
            ("k", &self.k),
            ("n_max", &self.n_max),
            ("tol", &self.tol),
            ("z0", &self.z0),
            ("levels", &self.levels),
            ("which", &self.which),
            ("sweep", &self.sweep),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                cfg.set(key, v)?;
            }
        }
        for kv in &self.set {
            let (key, value) = kv
                .split_once('=')
                .ok_or_else(|| RunError::BadInput(format!("--set expects key=value, got '{kv}'")))?;
            cfg.set(key.trim(), value.trim())?;
        }
        if let Some(p) = &self.out {
            cfg.output_path = Some(p.display().to_string());
        }
        Ok(cfg)
    }
}

fn emit(path: Option<&str>, text: &str) -> Result<(), RunError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| RunError::BadInput(format!("cannot write {p}: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<i32, RunError> {
    if let Some(suite) = &cli.verify {
        let suite: Suite = suite.parse()?;
        let (report, code) = cmd_verify(suite);
        emit(cli.out.as_ref().and_then(|p| p.to_str()), &report)?;
        return Ok(code);
    }
    let cfg = cli.config()?;
    let out = if cfg.sweep.is_some() { cmd_sweep(&cfg)? } else { cmd_solve(&cfg)? };
    emit(cfg.output_path.as_deref(), &out.csv)?;
    if out.exit_code != 0 {
        eprintln!("warning: some requested levels did not converge");
    }
    Ok(out.exit_code)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    // Usage errors are bad input (exit 1); clap would use 2, which means non-convergence here.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_BAD_INPUT as u8 } else { 0 });
        }
    };
    let code = match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(u8::try_from(code).unwrap_or(EXIT_BAD_INPUT as u8))
}
