//! Polynomial eigenfunctions of the coupled system and the spinor wavefunction.

use nalgebra::DMatrix;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::{BigRational, RatFunc, RationalPoly};
use crate::catalog::{Case, CoeffQuartet};

use super::AimError;

/// Largest `σ_min / σ_max` accepted as a numerical kernel.
const KERNEL_RATIO: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct PolyEigenfunction {
    pub energy: f64,
    /// Coefficients, lowest power of `z` first.
    pub phi1: Vec<f64>,
    pub phi2: Vec<f64>,
    /// Max over the sample points of the larger of the two ODE defects.
    pub residual: f64,
}

fn horner(c: &[f64], z: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, x| acc * z + x)
}

fn derivative(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(i, x)| i as f64 * x).collect()
}

/// Sample points `0.1, 0.2, …, 1.6`.
pub fn sample_points() -> impl Iterator<Item = f64> {
    (1..=16).map(|i| f64::from(i) / 10.0)
}

/// Largest defect of `φ₁′ = aφ₁ + bφ₂`, `φ₂′ = cφ₂ + dφ₁` over the sample points.
pub fn ode_residual(seed: &CoeffQuartet, energy: f64, phi1: &[f64], phi2: &[f64]) -> f64 {
    let (d1, d2) = (derivative(phi1), derivative(phi2));
    sample_points()
        .map(|z| {
            let (p1, p2) = (horner(phi1, z), horner(phi2, z));
            let a = seed.a0.eval_f64(z, energy);
            let b = seed.b0.eval_f64(z, energy);
            let c = seed.c0.eval_f64(z, energy);
            let d = seed.d0.eval_f64(z, energy);
            let r1 = horner(&d1, z) - a * p1 - b * p2;
            let r2 = horner(&d2, z) - c * p2 - d * p1;
            r1.abs().max(r2.abs())
        })
        .fold(0.0, f64::max)
}

/// Multiplies each coefficient by the product of all monic denominators,
/// giving `(L, L·a, L·b, L·c, L·d)` as polynomials in `z`.
fn cleared(q: &[RatFunc; 4]) -> (RationalPoly, Vec<RationalPoly>) {
    let monic: Vec<RationalPoly> = q.iter().map(|f| f.den_poly().monic()).collect();
    let l = monic.iter().fold(RationalPoly::one(), |acc, m| &acc * m);
    let parts = q
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let lead = f.den_poly().leading().cloned().unwrap_or_else(BigRational::one);
            let others = monic
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(RationalPoly::one(), |acc, (_, m)| &acc * m);
            let num = f.numer().to_z_poly().expect("evaluated at fixed energy");
            (&num * &others).scale(&lead.recip())
        })
        .collect();
    (l, parts)
}

fn to_f64(p: &RationalPoly) -> Vec<f64> {
    p.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
}

fn coeff(p: &[f64], i: isize) -> f64 {
    if i < 0 {
        0.0
    } else {
        p.get(i as usize).copied().unwrap_or(0.0)
    }
}

/// Polynomial solution `(φ₁, φ₂)` of degree at most `max_deg` at `energy`, with the
/// largest coefficient scaled to 1.
pub fn polynomial_eigenfunction(
    seed: &CoeffQuartet,
    energy: f64,
    max_deg: usize,
    sample_tol: f64,
) -> Result<PolyEigenfunction, AimError> {
    let e = BigRational::from_float(energy).ok_or(AimError::InvalidOptions("energy must be finite".into()))?;
    let at_e = [seed.a0.at_energy(&e), seed.b0.at_energy(&e), seed.c0.at_energy(&e), seed.d0.at_energy(&e)];
    let (l, parts) = cleared(&at_e);
    let l = to_f64(&l);
    let [la, lb, lc, ld]: [Vec<f64>; 4] = parts.iter().map(to_f64).collect::<Vec<_>>().try_into().expect("four");
    let span = [&l, &la, &lb, &lc, &ld].iter().map(|p| p.len()).max().unwrap_or(1);

    for deg in 0..=max_deg {
        let cols = 2 * (deg + 1);
        let powers = deg + span;
        let rows = (2 * powers).max(cols);
        let mut m = DMatrix::<f64>::zeros(rows, cols);
        for j in 0..=deg {
            let (c1, c2) = (j, deg + 1 + j);
            for p in 0..powers {
                let pi = p as isize;
                let ji = j as isize;
                // L·j·z^{j−1} − (L·a)z^j on the first equation, −(L·d)z^j on the second.
                m[(p, c1)] = j as f64 * coeff(&l, pi - ji + 1) - coeff(&la, pi - ji);
                m[(powers + p, c1)] = -coeff(&ld, pi - ji);
                m[(p, c2)] = -coeff(&lb, pi - ji);
                m[(powers + p, c2)] = j as f64 * coeff(&l, pi - ji + 1) - coeff(&lc, pi - ji);
            }
        }
        let svd = m.svd(false, true);
        let v_t = svd.v_t.as_ref().expect("requested");
        let (imin, smin) = svd
            .singular_values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, s)| (i, *s))
            .expect("nonempty");
        let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
        if smax == 0.0 || smin / smax > KERNEL_RATIO {
            continue;
        }
        let v: Vec<f64> = v_t.row(imin).iter().copied().collect();
        let big = v.iter().copied().max_by(|a, b| a.abs().total_cmp(&b.abs())).unwrap_or(1.0);
        let v: Vec<f64> = v.iter().map(|x| x / big).collect();
        let (phi1, phi2) = (v[..=deg].to_vec(), v[deg + 1..].to_vec());
        let residual = ode_residual(seed, energy, &phi1, &phi2);
        if residual <= sample_tol {
            return Ok(PolyEigenfunction { energy, phi1, phi2, residual });
        }
    }
    Err(AimError::NotPolynomial { max_deg })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WavePoint {
    pub x: f64,
    pub y: f64,
    pub psi_up: f64,
    pub psi_down: f64,
}

fn power(x: f64, k: &BigRational, y: f64) -> Result<f64, AimError> {
    if k.is_integer() {
        let e = k.to_integer().to_i32().ok_or(AimError::DomainError { x, y })?;
        if x == 0.0 && e < 0 {
            return Err(AimError::DomainError { x, y });
        }
        Ok(x.powi(e))
    } else {
        if x < 0.0 || (x == 0.0 && *k < BigRational::zero()) {
            return Err(AimError::DomainError { x, y });
        }
        Ok(x.powf(k.to_f64().unwrap_or(f64::NAN)))
    }
}

/// Unnormalised spinor on a grid. K: `x^k φ₁(xy)|↑⟩ + x^{k+1} φ₂(xy)|↓⟩`;
/// N: `x^k φ₁(y/x)|↓⟩ + x^{k+1} φ₂(y/x)|↑⟩`.
pub fn assemble_wavefunction(
    case: Case,
    k: &BigRational,
    phi: &PolyEigenfunction,
    grid: &[(f64, f64)],
) -> Result<Vec<WavePoint>, AimError> {
    let k1 = k + BigRational::one();
    grid.iter()
        .map(|&(x, y)| {
            let z = match case {
                Case::K => x * y,
                Case::N => {
                    if x == 0.0 {
                        return Err(AimError::DomainError { x, y });
                    }
                    y / x
                }
            };
            let first = power(x, k, y)? * horner(&phi.phi1, z);
            let second = power(x, &k1, y)? * horner(&phi.phi2, z);
            let (psi_up, psi_down) = match case {
                Case::K => (first, second),
                Case::N => (second, first),
            };
            Ok(WavePoint { x, y, psi_up, psi_down })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, BiPoly};
    use crate::catalog::{closed_form_jc, seed_jc, ModelSpec};

    fn jc_seed() -> (CoeffQuartet, ModelSpec) {
        let m = ModelSpec::jc(rat(1, 1), rat(3, 10), rat(1, 5), rat(2, 1));
        (seed_jc(&m).unwrap(), m)
    }

    #[test]
    fn jc_monomial_solutions() {
        let (q, m) = jc_seed();
        let kap_sq = &m.kappa1 * &m.gamma2;
        for n in 1..=3u32 {
            let (lo, hi) = closed_form_jc(&m.k, n, &m.omega1, &m.omega0, &kap_sq).unwrap();
            for e in [lo, hi] {
                let f = polynomial_eigenfunction(&q, e, 4, 1e-8).unwrap();
                assert_eq!(f.phi1.len(), n as usize);
                assert!(f.residual <= 1e-8);
                for i in 0..(n as usize - 1) {
                    assert!(f.phi1[i].abs() < 1e-10 && f.phi2[i].abs() < 1e-10);
                }
                assert!(f.phi1[n as usize - 1].abs() > 1e-3 && f.phi2[n as usize - 1].abs() > 1e-3);
                let miss = polynomial_eigenfunction(&q, e + 0.1, 4, 1e-8);
                assert_eq!(miss, Err(AimError::NotPolynomial { max_deg: 4 }));
            }
        }
    }

    #[test]
    fn decoupled_power_law() {
        let over_z = |num: BiPoly| RatFunc::over_z_poly(num, &RationalPoly::from_ints(&[0, 1]));
        let q = CoeffQuartet::new(
            over_z(BiPoly::constant(rat(3, 1))),
            RatFunc::zero(),
            over_z(BiPoly::constant(rat(1, 2))),
            RatFunc::zero(),
        )
        .unwrap();
        let f = polynomial_eigenfunction(&q, 0.0, 5, 1e-10).unwrap();
        assert_eq!(f.phi1.len(), 4);
        assert!((f.phi1[3] - 1.0).abs() < 1e-12);
        assert!(f.phi2.iter().all(|c| c.abs() < 1e-12));
    }

    #[test]
    fn wavefunction_examples() {
        let unit = PolyEigenfunction { energy: 0.0, phi1: vec![1.0], phi2: vec![1.0], residual: 0.0 };
        let jc = assemble_wavefunction(Case::N, &rat(1, 1), &unit, &[(2.0, 3.0)]).unwrap();
        assert_eq!((jc[0].psi_down, jc[0].psi_up), (2.0, 4.0));
        let k = assemble_wavefunction(Case::K, &rat(0, 1), &unit, &[(1.0, 1.0)]).unwrap();
        assert_eq!((k[0].psi_up, k[0].psi_down), (1.0, 1.0));
        assert_eq!(
            assemble_wavefunction(Case::N, &rat(0, 1), &unit, &[(0.0, 1.0)]),
            Err(AimError::DomainError { x: 0.0, y: 1.0 })
        );
        assert!(assemble_wavefunction(Case::K, &rat(1, 2), &unit, &[(-1.0, 1.0)]).is_err());
    }

    #[test]
    fn y_scaling_of_monomial_solution() {
        // n = 3 solution z² in the N case: both components scale by 2² under y → 2y.
        let f = PolyEigenfunction { energy: 0.0, phi1: vec![0.0, 0.0, 1.0], phi2: vec![0.0, 0.0, 1.0], residual: 0.0 };
        let a = assemble_wavefunction(Case::N, &rat(2, 1), &f, &[(1.5, 0.7)]).unwrap()[0];
        let b = assemble_wavefunction(Case::N, &rat(2, 1), &f, &[(1.5, 1.4)]).unwrap()[0];
        assert!((b.psi_up / a.psi_up - 4.0).abs() < 1e-12);
        assert!((b.psi_down / a.psi_down - 4.0).abs() < 1e-12);
    }
}
