//! Eigenvalue extraction: roots of the termination polynomials at each depth,
//! followed across depths into level trajectories.

use num_traits::Zero;

use crate::algebra::{BigRational, RatFunc, RationalPoly};
use crate::catalog::CoeffQuartet;
use crate::par;

use super::recursion::{delta_poly, pair_step};
use super::AimError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WhichDelta {
    D1,
    D2,
    Both,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveOptions {
    pub z0: BigRational,
    pub n_max: u32,
    pub tol: f64,
    pub which: WhichDelta,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { z0: BigRational::zero(), n_max: 14, tol: 1e-6, which: WhichDelta::D1 }
    }
}

/// Relative accuracy of every reported root.
const ROOT_REL_TOL: f64 = 1e-14;

/// Distinct real roots at one depth after removing the spurious factor.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub n: u32,
    pub roots: Vec<f64>,
    pub flagged: Vec<f64>,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub history: Vec<(u32, f64)>,
}

impl Trajectory {
    pub fn last(&self) -> (u32, f64) {
        *self.history.last().expect("trajectories are never empty")
    }

    /// First depth from which every successive change (two at least) stays within `tol`.
    pub fn n_converged(&self, tol: f64) -> Option<u32> {
        let h = &self.history;
        if h.len() < 3 {
            return None;
        }
        let mut start = h.len() - 1;
        while start >= 1 && (h[start].1 - h[start - 1].1).abs() <= tol {
            start -= 1;
        }
        // h[start..] are mutually within tol step by step; need two steps.
        (h.len() - 1 - start >= 2).then(|| h[start + 2].0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Level {
    pub index: usize,
    pub energy: f64,
    pub history: Vec<(u32, f64)>,
    pub converged: bool,
    pub n_converged: Option<u32>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumResult {
    /// Trajectories alive at the last depth, ascending in energy.
    pub levels: Vec<Level>,
    /// Trajectories that lost their root before the last depth.
    pub dead: Vec<Trajectory>,
    pub root_sets: Vec<RootSet>,
    pub iterations_used: u32,
    pub z0: BigRational,
    /// Whether a spurious root was removed at any depth.
    pub discarded_first_root: bool,
}

impl SpectrumResult {
    /// The level whose final energy is nearest `target`.
    pub fn nearest(&self, target: f64) -> Option<&Level> {
        self.levels.iter().min_by(|a, b| (a.energy - target).abs().total_cmp(&(b.energy - target).abs()))
    }

    pub fn roots_at(&self, n: u32) -> Option<&RootSet> {
        self.root_sets.iter().find(|r| r.n == n)
    }
}

/// Removes the spurious factor `gcd(δ, spurious)` once; returns the deflated
/// polynomial and the real roots of the removed factor.
fn deflate(delta: RationalPoly, spurious: &RationalPoly) -> (RationalPoly, Vec<f64>) {
    if spurious.degree().unwrap_or(0) == 0 {
        return (delta, Vec::new());
    }
    let g = delta.gcd(spurious);
    if g.degree().unwrap_or(0) == 0 {
        return (delta, Vec::new());
    }
    let flagged = g.distinct_real_roots(ROOT_REL_TOL);
    (delta.exact_div(&g).expect("gcd divides"), flagged)
}

fn merge_roots(mut a: Vec<f64>, b: Vec<f64>) -> Vec<f64> {
    for r in b {
        if !a.iter().any(|x| (x - r).abs() <= 1e-9 * (1.0 + r.abs())) {
            a.push(r);
        }
    }
    a.sort_by(f64::total_cmp);
    a
}

/// Greedy nearest assignment of each depth's roots onto the live trajectories.
#[derive(Default)]
struct Tracker {
    live: Vec<Trajectory>,
    dead: Vec<Trajectory>,
}

impl Tracker {
    fn push(&mut self, n: u32, roots: &[f64], tol: f64) {
        let gate = |j: usize| -> f64 {
            let left = if j > 0 { roots[j] - roots[j - 1] } else { f64::INFINITY };
            let right = if j + 1 < roots.len() { roots[j + 1] - roots[j] } else { f64::INFINITY };
            (10.0 * tol).max(0.5 * left.min(right))
        };
        let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
        for (t, traj) in self.live.iter().enumerate() {
            let last = traj.last().1;
            for (j, &r) in roots.iter().enumerate() {
                let dist = (r - last).abs();
                if dist <= gate(j) {
                    pairs.push((dist, t, j));
                }
            }
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        let mut traj_used = vec![false; self.live.len()];
        let mut root_used = vec![false; roots.len()];
        for (_, t, j) in pairs {
            if !traj_used[t] && !root_used[j] {
                traj_used[t] = true;
                root_used[j] = true;
                self.live[t].history.push((n, roots[j]));
            }
        }
        let mut next = Vec::with_capacity(roots.len());
        for (traj, used) in std::mem::take(&mut self.live).into_iter().zip(traj_used) {
            if used {
                next.push(traj);
            } else {
                self.dead.push(traj);
            }
        }
        for (j, &r) in roots.iter().enumerate() {
            if !root_used[j] {
                next.push(Trajectory { history: vec![(n, r)] });
            }
        }
        self.live = next;
    }
}

/// Runs the recursion to depth `n_max`, extracting roots of the selected
/// termination polynomials at every depth `n ≥ 1` and tracking them.
pub fn solve_spectrum(seed: &CoeffQuartet, opts: &SolveOptions) -> Result<SpectrumResult, AimError> {
    if !seed.is_coupled() {
        return Err(AimError::Decoupled);
    }
    if opts.n_max < 2 {
        return Err(AimError::InvalidOptions("n_max must be at least 2".into()));
    }
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(AimError::InvalidOptions("tol must be positive".into()));
    }
    let z0 = &opts.z0;
    let use1 = opts.which != WhichDelta::D2;
    let use2 = opts.which != WhichDelta::D1;
    let spurious1 = seed.b0.eval_numer_at(z0);
    let spurious2 = seed.d0.eval_numer_at(z0);

    let (mut a, mut b) = (seed.a0.clone(), seed.b0.clone());
    let (mut c, mut d) = (seed.c0.clone(), seed.d0.clone());
    let mut tracker = Tracker::default();
    let mut root_sets = Vec::new();
    let mut discarded = false;
    let mut prev_degree: Option<usize> = None;

    for n in 1..=opts.n_max {
        let step_ab = |a: &RatFunc, b: &RatFunc| pair_step(a, b, [&seed.a0, &seed.b0, &seed.c0, &seed.d0]);
        let step_cd = |c: &RatFunc, d: &RatFunc| pair_step(c, d, [&seed.c0, &seed.d0, &seed.a0, &seed.b0]);
        let (ab, cd) = par::join(
            || use1.then(|| {
                let (an, bn) = step_ab(&a, &b);
                let delta = delta_poly(&a, &b, &an, &bn, z0);
                (an, bn, delta)
            }),
            || use2.then(|| {
                let (cn, dn) = step_cd(&c, &d);
                let delta = delta_poly(&c, &d, &cn, &dn, z0);
                (cn, dn, delta)
            }),
        );

        let mut roots = Vec::new();
        let mut flagged = Vec::new();
        let mut degree = 0;
        let mut zero1 = false;
        let mut zero2 = false;
        if let Some((an, bn, delta)) = ab {
            a = an;
            b = bn;
            zero1 = delta.is_zero();
            degree = degree.max(delta.degree().unwrap_or(0));
            let (defl, fl) = deflate(delta, &spurious1);
            roots = merge_roots(roots, defl.distinct_real_roots(ROOT_REL_TOL));
            flagged = merge_roots(flagged, fl);
        }
        if let Some((cn, dn, delta)) = cd {
            c = cn;
            d = dn;
            zero2 = delta.is_zero();
            degree = degree.max(delta.degree().unwrap_or(0));
            let (defl, fl) = deflate(delta, &spurious2);
            roots = merge_roots(roots, defl.distinct_real_roots(ROOT_REL_TOL));
            flagged = merge_roots(flagged, fl);
        }
        if (use1 && zero1) || (use2 && zero2) {
            return Err(AimError::IdenticallyZero { n, delta1: zero1, delta2: zero2 });
        }
        if let Some(p) = prev_degree {
            debug_assert!(degree <= p + 2, "deg_E jumped from {p} to {degree} at n = {n}");
        }
        prev_degree = Some(degree);
        log::debug!("n = {n}: deg_E = {degree}, {} real roots, flagged {flagged:?}", roots.len());
        discarded |= !flagged.is_empty();
        tracker.push(n, &roots, opts.tol);
        root_sets.push(RootSet { n, roots, flagged, degree });
    }

    if root_sets.iter().all(|r| r.roots.is_empty()) {
        return Err(AimError::NoRealRoots);
    }
    let mut live = tracker.live;
    live.sort_by(|x, y| x.last().1.total_cmp(&y.last().1));
    let levels = live
        .into_iter()
        .enumerate()
        .map(|(index, t)| {
            let n_converged = t.n_converged(opts.tol);
            Level { index, energy: t.last().1, converged: n_converged.is_some(), n_converged, history: t.history }
        })
        .collect();
    Ok(SpectrumResult {
        levels,
        dead: tracker.dead,
        root_sets,
        iterations_used: opts.n_max,
        z0: opts.z0.clone(),
        discarded_first_root: discarded,
    })
}
