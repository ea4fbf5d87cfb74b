//! Command surface: solve, sweep and verify, producing CSV text and exit codes.

mod config;
mod format;
mod verify;

pub use config::{ModelKind, RunConfig, Sweep};
pub use format::{format_g12, format_rational};
pub use verify::{cmd_verify, verify_dirac, verify_jc, verify_mjc, verify_table1, Check, Suite, TABLE1};

use num_traits::{One, ToPrimitive};

use crate::aim::{solve_spectrum, AimError, SolveOptions};
use crate::algebra::BigRational;
use crate::catalog::{
    closed_form_dirac, closed_form_mjc, reduce_to_coupled_ode, seed_jc, seed_jt, seed_rashba, validate_model, Case,
    CatalogError, CoeffQuartet, Convention, ModelSpec, SymmetryClass,
};
use crate::par;

pub const EXIT_OK: i32 = 0;
pub const EXIT_BAD_INPUT: i32 = 1;
pub const EXIT_NOT_CONVERGED: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

pub const UNCOUPLED_MESSAGE: &str = "uncoupled system; use verify/closed-form";

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum RunError {
    #[error("{0}")]
    BadInput(String),
    #[error("{0}")]
    Solve(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::BadInput(_) => EXIT_BAD_INPUT,
            RunError::Solve(_) => EXIT_NOT_CONVERGED,
        }
    }
}

impl From<CatalogError> for RunError {
    fn from(e: CatalogError) -> Self {
        RunError::BadInput(e.to_string())
    }
}

/// What a configuration asks to solve.
#[derive(Clone, Debug)]
pub enum Problem {
    /// Run the iteration on this quartet.
    Aim(Box<CoeffQuartet>),
    /// Energies known in closed form, ascending.
    Closed(Vec<f64>),
}

fn coupling(cfg: &RunConfig) -> Result<(bool, BigRational), RunError> {
    if let Some(v) = cfg.params.get("kappa") {
        Ok((false, v.clone()))
    } else if let Some(v) = cfg.params.get("kappa_sq") {
        Ok((true, v.clone()))
    } else {
        Err(RunError::BadInput(format!("model {} needs kappa or kappa_sq", cfg.model.as_str())))
    }
}

fn require_coupled(q: CoeffQuartet) -> Result<Problem, RunError> {
    if q.is_coupled() {
        Ok(Problem::Aim(Box::new(q)))
    } else {
        Err(RunError::BadInput(UNCOUPLED_MESSAGE.into()))
    }
}

/// The model spec a configuration describes (closed-form-only models included).
pub fn model_spec(cfg: &RunConfig) -> Result<ModelSpec, RunError> {
    let k = cfg.k.clone();
    let w0 = cfg.param_or_zero("omega0");
    Ok(match cfg.model {
        ModelKind::Jt | ModelKind::Rashba | ModelKind::Jc => {
            let w = cfg.param_or_one("omega");
            let (squared, v) = coupling(cfg)?;
            match (cfg.model, squared) {
                (ModelKind::Jt, false) => ModelSpec::jt(w, w0, v, k),
                (ModelKind::Jt, true) => ModelSpec::jt_kappa_sq(w, w0, v, k),
                (ModelKind::Rashba, false) => ModelSpec::rashba(w, w0, v, k),
                (ModelKind::Rashba, true) => ModelSpec::rashba_kappa_sq(w, w0, v, k),
                (_, false) => ModelSpec::jc(w, w0, v, k),
                (_, true) => ModelSpec::jc_kappa_sq(w, w0, v, k),
            }
        }
        ModelKind::Mjc => ModelSpec::mjc(BigRational::one(), w0, cfg.param_or_zero("kappa"), k),
        ModelKind::Dirac => ModelSpec::dirac(
            cfg.param_or_one("mass"),
            cfg.param_or_one("c"),
            cfg.param_or_one("omega_prime"),
            cfg.param_or_one("hbar"),
            k,
        ),
        ModelKind::Custom => ModelSpec {
            omega1: cfg.param_or_one("omega1"),
            omega2: cfg.param_or_one("omega2"),
            omega0: w0,
            kappa1: cfg.param_or_zero("kappa1"),
            kappa2: cfg.param_or_zero("kappa2"),
            kappa3: cfg.param_or_zero("kappa3"),
            kappa4: cfg.param_or_zero("kappa4"),
            gamma1: cfg.param_or_zero("gamma1"),
            gamma2: cfg.param_or_zero("gamma2"),
            gamma3: cfg.param_or_zero("gamma3"),
            gamma4: cfg.param_or_zero("gamma4"),
            k,
        },
    })
}

/// Resolves a configuration to a quartet or a closed-form spectrum.
pub fn build_problem(cfg: &RunConfig) -> Result<Problem, RunError> {
    let m = model_spec(cfg)?;
    let unit = m.omega1.is_one() && m.omega2.is_one();
    match cfg.model {
        ModelKind::Jt if unit => require_coupled(seed_jt(&m)?),
        ModelKind::Rashba if unit => require_coupled(seed_rashba(&m)?),
        ModelKind::Jt | ModelKind::Rashba => {
            require_coupled(reduce_to_coupled_ode(&m, Case::K, Convention::for_case(Case::K))?)
        }
        ModelKind::Jc => match seed_jc(&m) {
            Ok(q) => require_coupled(q),
            Err(CatalogError::ZeroFrequency) => {
                Err(RunError::BadInput("jc needs omega != 0; the omega = 0 limit is the dirac model".into()))
            }
            Err(e) => Err(e.into()),
        },
        ModelKind::Mjc => {
            let mut energies = Vec::new();
            for n in 1..=cfg.n_max {
                if let Ok((lo, hi)) = closed_form_mjc(&m.k, n, &m.kappa1, &m.omega0) {
                    energies.extend([lo, hi]);
                }
            }
            energies.sort_by(f64::total_cmp);
            Ok(Problem::Closed(energies))
        }
        ModelKind::Dirac => {
            let p = |name: &str| cfg.param_or_one(name);
            let mut energies = Vec::new();
            for n in 1..=cfg.n_max {
                for b in closed_form_dirac(&p("mass"), &p("c"), &p("omega_prime"), &p("hbar"), &m.k, n) {
                    if let Ok(e) = b.energy {
                        energies.push(e);
                    }
                }
            }
            energies.sort_by(f64::total_cmp);
            Ok(Problem::Closed(energies))
        }
        ModelKind::Custom => {
            if m.is_uncoupled() {
                return Err(RunError::BadInput(UNCOUPLED_MESSAGE.into()));
            }
            let classes = validate_model(&m).classes;
            let has = |c: SymmetryClass| classes.contains(&c);
            let mut cases = Vec::new();
            if has(SymmetryClass::K2) || has(SymmetryClass::K1) {
                cases.push(Case::K);
            }
            if has(SymmetryClass::N1) || has(SymmetryClass::N2) {
                cases.push(Case::N);
            }
            if cases.is_empty() {
                return Err(RunError::BadInput("model satisfies none of the K1, N1, K2, N2 constraint sets".into()));
            }
            let mut last = None;
            for case in cases {
                match reduce_to_coupled_ode(&m, case, Convention::for_case(case)) {
                    Ok(q) => return require_coupled(q),
                    Err(e) => last = Some(e),
                }
            }
            Err(last.expect("at least one case tried").into())
        }
    }
}

/// One output row of a solve.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelRow {
    pub level: u32,
    pub energy: f64,
    pub n_converged: Option<u32>,
    pub converged: bool,
    pub flagged_first_root: bool,
}

pub fn solve_options(cfg: &RunConfig) -> SolveOptions {
    SolveOptions { z0: cfg.z0.clone(), n_max: cfg.n_max, tol: cfg.tol, which: cfg.which }
}

/// Up to `cfg.levels` rows, lowest energy first.
pub fn solve_levels(cfg: &RunConfig) -> Result<Vec<LevelRow>, RunError> {
    cfg.validate()?;
    let wanted = cfg.levels as usize;
    match build_problem(cfg)? {
        Problem::Closed(energies) => Ok(energies
            .into_iter()
            .take(wanted)
            .enumerate()
            .map(|(i, energy)| LevelRow {
                level: i as u32,
                energy,
                n_converged: Some(0),
                converged: true,
                flagged_first_root: false,
            })
            .collect()),
        Problem::Aim(q) => {
            let r = solve_spectrum(&q, &solve_options(cfg)).map_err(|e| match e {
                AimError::Decoupled => RunError::BadInput(UNCOUPLED_MESSAGE.into()),
                AimError::InvalidOptions(s) => RunError::BadInput(s),
                other => RunError::Solve(other.to_string()),
            })?;
            Ok(r.levels
                .iter()
                .take(wanted)
                .map(|l| LevelRow {
                    level: l.index as u32,
                    energy: l.energy,
                    n_converged: l.n_converged,
                    converged: l.converged,
                    flagged_first_root: r.discarded_first_root,
                })
                .collect())
        }
    }
}

/// CSV text plus exit status of a command.
#[derive(Clone, Debug, PartialEq)]
pub struct CommandOutput {
    pub csv: String,
    pub exit_code: i32,
}

pub const SOLVE_HEADER: &str = "level,energy,n_converged,converged,flagged_first_root";
pub const SWEEP_HEADER: &str = "sweep_value,level,energy,converged";

pub fn cmd_solve(cfg: &RunConfig) -> Result<CommandOutput, RunError> {
    let rows = solve_levels(cfg)?;
    let mut csv = format!("{SOLVE_HEADER}\n");
    for r in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            r.level,
            format_g12(r.energy),
            r.n_converged.map(|n| n.to_string()).unwrap_or_default(),
            r.converged,
            r.flagged_first_root
        ));
    }
    let all = rows.len() >= cfg.levels as usize && rows.iter().all(|r| r.converged);
    Ok(CommandOutput { csv, exit_code: if all { EXIT_OK } else { EXIT_NOT_CONVERGED } })
}

/// Rows for one sweep point: `levels` entries, `None` where the level is missing.
fn sweep_point(cfg: &RunConfig, param: &str, value: &BigRational) -> Vec<Option<(f64, bool)>> {
    let mut out = vec![None; cfg.levels as usize];
    let rows = cfg.with_param(param, value).and_then(|c| solve_levels(&c));
    match rows {
        Ok(rows) => {
            for r in rows {
                if let Some(slot) = out.get_mut(r.level as usize) {
                    *slot = Some((r.energy, r.converged));
                }
            }
        }
        Err(e) => log::warn!("sweep point {param} = {value}: {e}"),
    }
    out
}

/// Evaluates every sweep point (concurrently when enabled) and writes rows in sweep order.
pub fn cmd_sweep(cfg: &RunConfig) -> Result<CommandOutput, RunError> {
    cfg.validate()?;
    let sweep = cfg.sweep.clone().ok_or_else(|| RunError::BadInput("no sweep configured".into()))?;
    let points = sweep.points();
    let results = par::with_threads(par::threads_from_env(), || {
        par::map(&points, |p| sweep_point(cfg, &sweep.param, p))
    });
    Ok(sweep_csv(&points, &results))
}

/// The same sweep evaluated point by point on the calling thread.
pub fn cmd_sweep_sequential(cfg: &RunConfig) -> Result<CommandOutput, RunError> {
    cfg.validate()?;
    let sweep = cfg.sweep.clone().ok_or_else(|| RunError::BadInput("no sweep configured".into()))?;
    let points = sweep.points();
    let results = par::map_sequential(&points, |p| sweep_point(cfg, &sweep.param, p));
    Ok(sweep_csv(&points, &results))
}

fn sweep_csv(points: &[BigRational], results: &[Vec<Option<(f64, bool)>>]) -> CommandOutput {
    let mut csv = format!("{SWEEP_HEADER}\n");
    let mut ok = true;
    for (p, levels) in points.iter().zip(results) {
        let x = format_g12(p.to_f64().unwrap_or(f64::NAN));
        for (i, slot) in levels.iter().enumerate() {
            match slot {
                Some((e, conv)) => {
                    ok &= *conv;
                    csv.push_str(&format!("{x},{i},{},{conv}\n", format_g12(*e)));
                }
                None => {
                    ok = false;
                    csv.push_str(&format!("{x},{i},,false\n"));
                }
            }
        }
    }
    CommandOutput { csv, exit_code: if ok { EXIT_OK } else { EXIT_NOT_CONVERGED } }
}
