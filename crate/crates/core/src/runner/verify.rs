//! Oracle suites: published ground states, closed-form spectra and mapping identities.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{format_g12, RunError, EXIT_OK, EXIT_VERIFY_FAILED};
use crate::aim::{solve_spectrum, SolveOptions, SpectrumResult, WhichDelta};
use crate::algebra::{rat, BigRational};
use crate::catalog::{closed_form_dirac, closed_form_jc, closed_form_mjc, mjc_radicand, seed_jc, seed_jt, ModelSpec};
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Table1,
    Jc,
    Mjc,
    Dirac,
    All,
}

impl FromStr for Suite {
    type Err = RunError;
    fn from_str(s: &str) -> Result<Self, RunError> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "table1" => Suite::Table1,
            "jc" => Suite::Jc,
            "mjc" => Suite::Mjc,
            "dirac" => Suite::Dirac,
            "all" => Suite::All,
            other => return Err(RunError::BadInput(format!("unknown verify suite '{other}'"))),
        })
    }
}

/// One comparison of an observed value against an expected one.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub case: String,
    pub observed: Option<f64>,
    pub expected: Option<f64>,
    pub tol: f64,
    pub pass: bool,
}

impl Check {
    fn compare(suite: &'static str, case: String, observed: Option<f64>, expected: Option<f64>, tol: f64) -> Self {
        let pass = match (observed, expected) {
            (Some(o), Some(e)) => (o - e).abs() <= tol,
            _ => false,
        };
        Check { suite, case, observed, expected, tol, pass }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: Option<f64>| v.map(format_g12).unwrap_or_else(|| "none".into());
        write!(
            f,
            "{} {} {}: observed {} expected {} tol {:e}",
            if self.pass { "PASS" } else { "FAIL" },
            self.suite,
            self.case,
            show(self.observed),
            show(self.expected),
            self.tol
        )
    }
}

/// `(κ², published ground-state energy)` for the E⊗ε Jahn-Teller model at k = 0.
pub const TABLE1: [(&str, f64); 12] = [
    ("0.25", 0.7738),
    ("0.5", 0.5780),
    ("0.75", 0.3997),
    ("1", 0.2330),
    ("2", -0.3689),
    ("3", -0.9189),
    ("5", -1.9610),
    ("7", -2.9760),
    ("10", -4.4850),
    ("15", -6.9901),
    ("20", -9.4809),
    ("30", -14.488),
];

pub const TABLE1_TOL: f64 = 1e-3;
pub const JC_TOL: f64 = 1e-8;
pub const DIRAC_TOL: f64 = 1e-12;
pub const DIRAC_DRAWS: usize = 20;
const JC_N_MAX: u32 = 8;

fn parse(text: &str) -> BigRational {
    crate::algebra::parse_rational(text).expect("literal rational")
}

/// Lowest converged level, or the lowest live one when none converged.
pub fn ground_state(r: &SpectrumResult) -> Option<f64> {
    r.levels.iter().find(|l| l.converged).or(r.levels.first()).map(|l| l.energy)
}

pub fn table1_ground_state(kappa_sq: &BigRational) -> Option<f64> {
    let m = ModelSpec::jt_kappa_sq(rat(1, 1), BigRational::zero(), kappa_sq.clone(), BigRational::zero());
    let seed = seed_jt(&m).ok()?;
    solve_spectrum(&seed, &SolveOptions::default()).ok().as_ref().and_then(ground_state)
}

pub fn verify_table1() -> Vec<Check> {
    par::map(&TABLE1, |(k2, expected)| {
        let observed = table1_ground_state(&parse(k2));
        Check::compare("table1", format!("kappa_sq={k2}"), observed, Some(*expected), TABLE1_TOL)
    })
}

/// Real energies of closed-form lines `1..=n_max`.
pub fn jc_closed_set(k: &BigRational, omega: &BigRational, omega0: &BigRational, kappa_sq: &BigRational, n_max: u32) -> Vec<f64> {
    (1..=n_max)
        .filter_map(|n| closed_form_jc(k, n, omega, omega0, kappa_sq).ok())
        .flat_map(|(lo, hi)| [lo, hi])
        .collect()
}

fn nearest(set: &[f64], x: f64) -> Option<f64> {
    set.iter().copied().min_by(|a, b| (a - x).abs().total_cmp(&(b - x).abs()))
}

/// Parameter grid `(ω, ω₀, κ, k)` for the Jaynes-Cummings checks.
pub fn jc_grid() -> Vec<(BigRational, BigRational, BigRational, BigRational)> {
    let mut grid = Vec::new();
    for w in ["1", "2"] {
        for w0 in ["0", "0.3", "0.5"] {
            for kappa in ["0.1", "0.5"] {
                for k in ["0", "1", "2"] {
                    grid.push((parse(w), parse(w0), parse(kappa), parse(k)));
                }
            }
        }
    }
    grid
}

fn jc_case(w: &BigRational, w0: &BigRational, kappa: &BigRational, k: &BigRational) -> Vec<Check> {
    let label = format!("omega={w} omega0={w0} kappa={kappa} k={k}");
    let m = ModelSpec::jc(w.clone(), w0.clone(), kappa.clone(), k.clone());
    let seed = match seed_jc(&m) {
        Ok(s) => s,
        Err(e) => return vec![Check { suite: "jc", case: format!("{label}: {e}"), observed: None, expected: None, tol: JC_TOL, pass: false }],
    };
    let opts = |z0: BigRational| SolveOptions { z0, n_max: JC_N_MAX, tol: 1e-6, which: WhichDelta::D1 };
    let (r0, r1) = par::join(|| solve_spectrum(&seed, &opts(BigRational::zero())), || solve_spectrum(&seed, &opts(rat(1, 2))));
    let (r0, r1) = match (r0, r1) {
        (Ok(a), Ok(b)) => (a, b),
        (a, b) => {
            let err = a.err().or(b.err()).expect("one failed");
            return vec![Check { suite: "jc", case: format!("{label}: {err}"), observed: None, expected: None, tol: JC_TOL, pass: false }];
        }
    };
    let closed = jc_closed_set(k, w, w0, &(kappa * kappa), JC_N_MAX);
    let mut checks: Vec<Check> = r0
        .levels
        .iter()
        .filter(|l| l.converged)
        .map(|l| Check::compare("jc", format!("{label} level {}", l.index), Some(l.energy), nearest(&closed, l.energy), JC_TOL))
        .collect();
    if checks.is_empty() {
        checks.push(Check { suite: "jc", case: format!("{label}: no converged level"), observed: None, expected: None, tol: JC_TOL, pass: false });
    }
    // δ₁ roots at every depth must not depend on the expansion point.
    let mut worst = 0.0f64;
    let mut same_count = true;
    for (a, b) in r0.root_sets.iter().zip(&r1.root_sets) {
        same_count &= a.roots.len() == b.roots.len();
        for x in &a.roots {
            worst = worst.max(nearest(&b.roots, *x).map_or(f64::INFINITY, |y| (x - y).abs()));
        }
    }
    let mut inv = Check::compare("jc", format!("{label} z0 invariance (max root shift)"), Some(worst), Some(0.0), JC_TOL);
    inv.pass &= same_count;
    checks.push(inv);
    checks
}

pub fn verify_jc() -> Vec<Check> {
    let grid = jc_grid();
    par::map(&grid, |(w, w0, kappa, k)| jc_case(w, w0, kappa, k)).into_iter().flatten().collect()
}

pub fn verify_mjc() -> Vec<Check> {
    let mut checks = Vec::new();
    let exact = |case: String, pass: bool, observed: f64, expected: f64| Check {
        suite: "mjc",
        case,
        observed: Some(observed),
        expected: Some(expected),
        tol: 0.0,
        pass,
    };
    for k in 0..3i64 {
        let kq = rat(k, 1);
        for n in 1..=4u32 {
            // κ = 0: the radicand is (2ω₀ − 1)² for every line.
            for w0 in ["0", "0.3", "2"] {
                let w0 = parse(w0);
                let r = mjc_radicand(&kq, n, &BigRational::zero(), &w0);
                let shift: BigRational = rat(2, 1) * &w0 - rat(1, 1);
                let (lo, hi) = closed_form_mjc(&kq, n, &BigRational::zero(), &w0).expect("real at zero coupling");
                let half = (shift.abs() / rat(2, 1)).to_f64().unwrap_or(f64::NAN);
                let centre = k as f64 + 1.5;
                checks.push(exact(
                    format!("kappa=0 omega0={w0} k={k} n={n}"),
                    r == &shift * &shift && lo == centre - half && hi == centre + half,
                    hi - lo,
                    2.0 * half,
                ));
            }
        }
        // ω₀ = ½ and n = k + 1: both branches collapse to k + 3/2.
        for kappa in ["0.5", "1", "3"] {
            let n = (k + 1) as u32;
            let (lo, hi) = closed_form_mjc(&kq, n, &parse(kappa), &rat(1, 2)).expect("zero radicand");
            let zero = mjc_radicand(&kq, n, &parse(kappa), &rat(1, 2)).is_zero();
            checks.push(exact(format!("omega0=1/2 kappa={kappa} k={k} n={n}"), zero && lo == hi && lo == k as f64 + 1.5, lo, k as f64 + 1.5));
        }
    }
    checks
}

/// One random Dirac-oscillator parameter set.
#[derive(Clone, Debug)]
pub struct DiracDraw {
    pub mass: BigRational,
    pub c: BigRational,
    pub omega_prime: BigRational,
    pub hbar: BigRational,
    pub k: BigRational,
    pub n: u32,
}

/// Draws with a real lower-label branch, reproducible from `seed`.
pub fn dirac_draws(seed: u64, count: usize) -> Vec<DiracDraw> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut pos = || rat(rng.random_range(1..=12), rng.random_range(1..=4));
        let (mass, c, omega_prime, hbar) = (pos(), pos(), pos(), pos());
        let d = DiracDraw { mass, c, omega_prime, hbar, k: rat(rng.random_range(0..=3), 1), n: rng.random_range(1..=4) };
        let real = closed_form_dirac(&d.mass, &d.c, &d.omega_prime, &d.hbar, &d.k, d.n)
            .iter()
            .any(|b| b.inner_sign < 0 && b.energy.is_ok());
        if real {
            out.push(d);
        }
    }
    out
}

/// Dirac branch with label `k − n` against Jaynes-Cummings line `n + 2` under
/// `ω = 0, ω₀ = mc², κ² = −4c²mω′ħ` (both have `k + 2 − line = k − n`).
pub fn dirac_check(d: &DiracDraw) -> Vec<Check> {
    let mc2 = &d.mass * &d.c * &d.c;
    let kappa_sq = rat(-4, 1) * &d.c * &d.c * &d.mass * &d.omega_prime * &d.hbar;
    let jc = closed_form_jc(&d.k, d.n + 2, &BigRational::zero(), &mc2, &kappa_sq).ok();
    let label = format!("m={} c={} omega'={} hbar={} k={} n={}", d.mass, d.c, d.omega_prime, d.hbar, d.k, d.n);
    closed_form_dirac(&d.mass, &d.c, &d.omega_prime, &d.hbar, &d.k, d.n)
        .into_iter()
        .filter(|b| b.inner_sign < 0)
        .map(|b| {
            let expected = jc.map(|(lo, hi)| if b.outer_sign < 0 { lo } else { hi });
            let branch = if b.outer_sign < 0 { "-" } else { "+" };
            Check::compare("dirac", format!("{label} branch {branch}"), b.energy.ok(), expected, DIRAC_TOL)
        })
        .collect()
}

pub const DIRAC_SEED: u64 = 0x5eed_d1ac;

pub fn verify_dirac() -> Vec<Check> {
    dirac_draws(DIRAC_SEED, DIRAC_DRAWS).iter().flat_map(dirac_check).collect()
}

pub fn run_suite(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::Table1 => verify_table1(),
        Suite::Jc => verify_jc(),
        Suite::Mjc => verify_mjc(),
        Suite::Dirac => verify_dirac(),
        Suite::All => [Suite::Table1, Suite::Jc, Suite::Mjc, Suite::Dirac].into_iter().flat_map(run_suite).collect(),
    }
}

/// Report text (one line per check plus a summary) and exit code.
pub fn cmd_verify(suite: Suite) -> (String, i32) {
    let checks = par::with_threads(par::threads_from_env(), || run_suite(suite));
    let mut report = String::new();
    for c in &checks {
        report.push_str(&format!("{c}\n"));
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    report.push_str(&format!("{} checks, {} passed, {} failed\n", checks.len(), checks.len() - failed, failed));
    (report, if failed == 0 { EXIT_OK } else { EXIT_VERIFY_FAILED })
}
