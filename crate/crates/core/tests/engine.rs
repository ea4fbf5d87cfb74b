use aimspin_core::aim::{delta_at, aim_step, solve_spectrum, AimRow, SolveOptions, WhichDelta};
use aimspin_core::algebra::{rat, BigRational};
use aimspin_core::catalog::{closed_form_jc, seed_jc, seed_jt, ModelSpec};
use aimspin_core::runner::{cmd_sweep, cmd_sweep_sequential, RunConfig};

fn jc_seed() -> aimspin_core::catalog::CoeffQuartet {
    seed_jc(&ModelSpec::jc(rat(1, 1), rat(3, 10), rat(1, 5), rat(1, 1))).unwrap()
}

#[test]
fn both_termination_polynomials_find_the_jc_lines() {
    let base = SolveOptions { n_max: 6, ..SolveOptions::default() };
    let d1 = solve_spectrum(&jc_seed(), &base).unwrap();
    let d2 = solve_spectrum(&jc_seed(), &SolveOptions { which: WhichDelta::D2, ..base.clone() }).unwrap();
    let closed: Vec<f64> = (1..=6)
        .filter_map(|n| closed_form_jc(&rat(1, 1), n, &rat(1, 1), &rat(3, 10), &rat(1, 25)).ok())
        .flat_map(|(a, b)| [a, b])
        .collect();
    for r in [&d1, &d2] {
        for l in r.levels.iter().filter(|l| l.converged) {
            assert!(closed.iter().any(|e| (e - l.energy).abs() < 1e-8), "{} not a closed-form line", l.energy);
        }
    }
    let c1: Vec<f64> = d1.levels.iter().filter(|l| l.converged).map(|l| l.energy).collect();
    let c2: Vec<f64> = d2.levels.iter().filter(|l| l.converged).map(|l| l.energy).collect();
    assert!(c1.iter().all(|e| c2.iter().any(|x| (x - e).abs() < 1e-8)));
}

#[test]
fn delta_degree_grows_by_at_most_two() {
    let q = jc_seed();
    let mut prev = AimRow::seed(&q);
    let mut last = 0;
    for _ in 0..5 {
        let cur = aim_step(&prev, &q);
        let d = delta_at(&prev, &cur, &BigRational::from_integer(0.into())).unwrap();
        let deg = d.delta1.degree().unwrap();
        assert!(last == 0 || deg <= last + 2);
        last = deg;
        prev = cur;
    }
}

#[test]
fn weak_coupling_ground_state() {
    let m = ModelSpec::jt_kappa_sq(rat(1, 1), rat(0, 1), rat(1, 4), rat(0, 1));
    let r = solve_spectrum(&seed_jt(&m).unwrap(), &SolveOptions::default()).unwrap();
    let g = r.levels.iter().find(|l| l.converged).unwrap();
    assert!((g.energy - 0.7738).abs() < 1e-3);
}

#[test]
fn jt_sweep_is_continuous_and_order_independent() {
    let cfg = RunConfig::parse("model = jt\nkappa = 0.1\nomega0 = 1/2\nk = 0\nn_max = 10\nsweep = kappa:0.1:1.0:10\nlevels = 1").unwrap();
    let par = cmd_sweep(&cfg).unwrap();
    assert_eq!(par, cmd_sweep_sequential(&cfg).unwrap());
    let energies: Vec<f64> = par.csv.lines().skip(1).map(|l| l.split(',').nth(2).unwrap().parse().unwrap()).collect();
    assert_eq!(energies.len(), 10);
    assert!(energies.windows(2).all(|w| (w[1] - w[0]).abs() <= 0.5), "{energies:?}");
}

#[test]
fn jc_sweep_points_match_closed_form() {
    let cfg = RunConfig::parse("model = jc\nkappa = 0.1\nomega0 = 0.3\nk = 1\nn_max = 8\nlevels = 4\nsweep = kappa:0.1:0.2:2").unwrap();
    let out = cmd_sweep(&cfg).unwrap();
    for line in out.csv.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        let kappa: f64 = cols[0].parse().unwrap();
        let e: f64 = cols[2].parse().unwrap();
        let k2 = rat((kappa * 10.0).round() as i64, 10);
        let near = (1..=8)
            .filter_map(|n| closed_form_jc(&rat(1, 1), n, &rat(1, 1), &rat(3, 10), &(&k2 * &k2)).ok())
            .flat_map(|(a, b)| [a, b])
            .map(|x| (x - e).abs())
            .fold(f64::INFINITY, f64::min);
        assert!(near < 1e-8, "{line}");
    }
}
