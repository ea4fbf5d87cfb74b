//! Closed-form spectra. Radicands are computed exactly so the sign test is exact.

use num_traits::{Signed, ToPrimitive};

use super::CatalogError;
use crate::algebra::BigRational;

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn half_sqrt(radicand: &BigRational) -> Result<f64, CatalogError> {
    let r = radicand.to_f64().unwrap_or(f64::NAN);
    if radicand.is_negative() {
        return Err(CatalogError::ComplexEnergy { radicand: r });
    }
    Ok(0.5 * r.sqrt())
}

/// `4κ²(k + 2 − n) + (ω + 2ω₀)²`.
pub fn jc_radicand(k: &BigRational, n: u32, omega: &BigRational, omega0: &BigRational, kappa_sq: &BigRational) -> BigRational {
    let shift = omega + int(2) * omega0;
    int(4) * kappa_sq * (k + int(2) - int(n.into())) + &shift * &shift
}

/// Jaynes-Cummings line `n`: `(k + 3/2 − n)ω ∓ ½√(4κ²(k+2−n) + (ω+2ω₀)²)`, lower branch first.
pub fn closed_form_jc(
    k: &BigRational,
    n: u32,
    omega: &BigRational,
    omega0: &BigRational,
    kappa_sq: &BigRational,
) -> Result<(f64, f64), CatalogError> {
    let h = half_sqrt(&jc_radicand(k, n, omega, omega0, kappa_sq))?;
    let centre = ((k + BigRational::new(3.into(), 2.into()) - int(n.into())) * omega).to_f64().unwrap_or(f64::NAN);
    Ok((centre - h, centre + h))
}

/// `8(k + 1 − n)κ² + (2ω₀ − 1)²`.
pub fn mjc_radicand(k: &BigRational, n: u32, kappa: &BigRational, omega0: &BigRational) -> BigRational {
    let shift = int(2) * omega0 - int(1);
    int(8) * (k + int(1) - int(n.into())) * kappa * kappa + &shift * &shift
}

/// Modified Jaynes-Cummings line `n` (unit mode frequency): `(k + 3/2) ± ½√(8(k+1−n)κ² + (2ω₀−1)²)`.
pub fn closed_form_mjc(k: &BigRational, n: u32, kappa: &BigRational, omega0: &BigRational) -> Result<(f64, f64), CatalogError> {
    let h = half_sqrt(&mjc_radicand(k, n, kappa, omega0))?;
    let centre = (k + BigRational::new(3.into(), 2.into())).to_f64().unwrap_or(f64::NAN);
    Ok((centre - h, centre + h))
}

/// `4m²c⁴ − 4ħω′mc²(k ± n)` with `inner_sign = ±1`.
pub fn dirac_radicand(
    mass: &BigRational,
    c: &BigRational,
    omega_prime: &BigRational,
    hbar: &BigRational,
    k: &BigRational,
    n: u32,
    inner_sign: i8,
) -> BigRational {
    let mc2 = mass * c * c;
    let label = k + int(inner_sign.into()) * int(n.into());
    int(4) * &mc2 * &mc2 - int(4) * hbar * omega_prime * &mc2 * label
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiracBranch {
    pub inner_sign: i8,
    pub outer_sign: i8,
    pub energy: Result<f64, CatalogError>,
}

/// All four sign combinations of `±½√(4m²c⁴ − 4ħω′mc²(k ± n))`, each real or `ComplexEnergy`.
pub fn closed_form_dirac(
    mass: &BigRational,
    c: &BigRational,
    omega_prime: &BigRational,
    hbar: &BigRational,
    k: &BigRational,
    n: u32,
) -> Vec<DiracBranch> {
    let mut out = Vec::with_capacity(4);
    for inner_sign in [-1i8, 1] {
        let h = half_sqrt(&dirac_radicand(mass, c, omega_prime, hbar, k, n, inner_sign));
        for outer_sign in [-1i8, 1] {
            out.push(DiracBranch {
                inner_sign,
                outer_sign,
                energy: h.clone().map(|v| f64::from(outer_sign) * v),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn jc_uncoupled_ladder() {
        assert_eq!(closed_form_jc(&rat(2, 1), 1, &rat(1, 1), &rat(0, 1), &rat(0, 1)).unwrap(), (2.0, 3.0));
    }

    #[test]
    fn jc_weak_coupling_example() {
        let (lo, hi) = closed_form_jc(&rat(1, 1), 1, &rat(1, 1), &rat(0, 1), &rat(1, 100)).unwrap();
        let h = 0.5 * 1.08f64.sqrt();
        assert!((lo - (1.5 - h)).abs() < 1e-15 && (hi - (1.5 + h)).abs() < 1e-15);
        assert!((lo - 0.980_384_757_729).abs() < 1e-12);
    }

    #[test]
    fn jc_complex_branch() {
        let err = closed_form_jc(&rat(0, 1), 5, &rat(0, 1), &rat(0, 1), &rat(1, 1)).unwrap_err();
        assert!(matches!(err, CatalogError::ComplexEnergy { .. }));
    }

    #[test]
    fn mjc_identities() {
        assert_eq!(closed_form_mjc(&rat(0, 1), 1, &rat(0, 1), &rat(0, 1)).unwrap(), (1.0, 2.0));
        assert_eq!(closed_form_mjc(&rat(3, 1), 4, &rat(7, 3), &rat(1, 2)).unwrap(), (4.5, 4.5));
        let (lo, hi) = closed_form_mjc(&rat(1, 1), 1, &rat(1, 2), &rat(0, 1)).unwrap();
        assert!((lo - (2.5 - 0.5 * 3f64.sqrt())).abs() < 1e-15);
        assert!((hi - (2.5 + 0.5 * 3f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn dirac_examples() {
        let rest = closed_form_dirac(&rat(3, 2), &rat(2, 1), &rat(0, 1), &rat(1, 1), &rat(1, 1), 2);
        for b in rest {
            assert_eq!(b.energy.unwrap(), f64::from(b.outer_sign) * 6.0);
        }
        let one = rat(1, 1);
        let branches = closed_form_dirac(&one, &one, &one, &one, &rat(0, 1), 1);
        let minus: Vec<f64> = branches.iter().filter(|b| b.inner_sign == -1).map(|b| b.energy.clone().unwrap()).collect();
        assert!((minus[0] + 2f64.sqrt()).abs() < 1e-15 && (minus[1] - 2f64.sqrt()).abs() < 1e-15);
        assert!(branches.iter().filter(|b| b.inner_sign == 1).all(|b| b.energy.is_ok()));
    }
}
