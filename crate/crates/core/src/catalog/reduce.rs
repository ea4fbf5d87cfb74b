//! Reduction of the Hamiltonian to a coupled first-order system in one variable.
//!
//! Bosons act as `a → ∂x`, `a⁺ → x`, `b → ∂y`, `b⁺ → y`. In the K sector the
//! spinor is `(x^k φ₁(xy), x^{k+1} φ₂(xy))`; in the N sector it is
//! `(x^k φ₁(y/x), x^{k+1} φ₂(y/x))`. Each row of `Hψ = Eψ` then becomes
//! `A·φ′ + B·φ = 0` with polynomial `A` (E-free) and `B` (E-affine).

use num_traits::{One, Zero};

use super::{validate_model, CatalogError, CoeffQuartet, ModelSpec, SymmetryClass};
use crate::algebra::{BiPoly, BigRational, RatFunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    /// `z = xy`, conserved `K`.
    K,
    /// `z = y/x`, conserved `N`.
    N,
}

/// Energy-origin choices that the reduction leaves open.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Convention {
    /// Add the zero-point energy `(ω₁ + ω₂)/2` to the diagonal.
    pub zero_point: bool,
    /// Sign of `ω₀` on the `φ₁` row; the `φ₂` row carries the opposite sign.
    pub omega0_sign_first: i8,
}

impl Convention {
    /// Conventions under which the reduction reproduces the catalog seeds.
    pub fn for_case(case: Case) -> Self {
        match case {
            Case::K => Convention { zero_point: true, omega0_sign_first: 1 },
            Case::N => Convention { zero_point: false, omega0_sign_first: -1 },
        }
    }
}

/// One row `A₁φ₁′ + A₂φ₂′ + B₁φ₁ + B₂φ₂ = 0`.
struct Row {
    a1: BiPoly,
    a2: BiPoly,
    b1: BiPoly,
    b2: BiPoly,
}

fn c(x: &BigRational) -> BiPoly {
    BiPoly::constant(x.clone())
}

fn cz(x: &BigRational) -> BiPoly {
    BiPoly::monomial(x.clone(), 1, 0)
}

/// Builds the coupled system for `case` and solves it for `(φ₁′, φ₂′)`.
///
/// K requires the K2 constraint set (K1 is accepted through the spin flip);
/// N requires N1 (N2 likewise).
pub fn reduce_to_coupled_ode(m: &ModelSpec, case: Case, conv: Convention) -> Result<CoeffQuartet, CatalogError> {
    let classes = validate_model(m).classes;
    let (direct, flipped, name) = match case {
        Case::K => (SymmetryClass::K2, SymmetryClass::K1, "K"),
        Case::N => (SymmetryClass::N1, SymmetryClass::N2, "N"),
    };
    let model = if classes.contains(&direct) {
        m.clone()
    } else if classes.contains(&flipped) {
        m.spin_flipped()
    } else {
        return Err(CatalogError::ConstraintViolation(name));
    };
    let (r1, r2) = rows(&model, case, conv);
    solve(&r1, &r2)
}

fn rows(m: &ModelSpec, case: Case, conv: Convention) -> (Row, Row) {
    let one = BigRational::one();
    let k1 = &m.k + &one;
    let zp = if conv.zero_point {
        (&m.omega1 + &m.omega2) / BigRational::from_integer(2.into())
    } else {
        BigRational::zero()
    };
    let s = BigRational::from_integer(conv.omega0_sign_first.into());
    let w0_first = &s * &m.omega0;
    let e = BiPoly::e();
    let diag1 = &c(&(&m.k * &m.omega1 + &zp + &w0_first)) - &e;
    let diag2 = &c(&(&k1 * &m.omega1 + &zp - &w0_first)) - &e;
    match case {
        Case::K => {
            // x∂x(x^j φ(xy)) = x^j (jφ + zφ′), y∂y → zφ′, ∂y(x^k φ₁) = x^{k+1} φ₁′, y x^{k+1} = x^k z.
            let dz = cz(&(&m.omega1 + &m.omega2));
            let r1 = Row {
                a1: dz.clone(),
                a2: cz(&m.kappa1),
                b1: diag1,
                b2: &c(&(&m.kappa1 * &k1)) + &cz(&m.kappa4),
            };
            let r2 = Row { a1: c(&m.gamma3), a2: dz, b1: c(&m.gamma2), b2: diag2 };
            (r1, r2)
        }
        Case::N => {
            // x∂x(x^j φ(y/x)) = x^j (jφ − zφ′), y∂y → zφ′, ∂x(x^{k+1}φ₂) = x^k((k+1)φ₂ − zφ₂′), ∂y → x^k φ₂′.
            let dz = cz(&(&m.omega2 - &m.omega1));
            let r1 = Row {
                a1: dz.clone(),
                a2: &c(&m.kappa3) - &cz(&m.kappa1),
                b1: diag1,
                b2: c(&(&m.kappa1 * &k1)),
            };
            let r2 = Row { a1: BiPoly::zero(), a2: dz, b1: &c(&m.gamma2) + &cz(&m.gamma4), b2: diag2 };
            (r1, r2)
        }
    }
}

/// Cramer's rule on `A φ′ = −B φ`.
fn solve(r1: &Row, r2: &Row) -> Result<CoeffQuartet, CatalogError> {
    let det = &(&r1.a1 * &r2.a2) - &(&r1.a2 * &r2.a1);
    if det.is_zero() {
        return Err(CatalogError::SingularSystem);
    }
    let frac = |num: BiPoly| RatFunc::new(num, det.clone()).expect("determinant is E-free and nonzero");
    let a0 = frac(&(&r1.a2 * &r2.b1) - &(&r2.a2 * &r1.b1));
    let b0 = frac(&(&r1.a2 * &r2.b2) - &(&r2.a2 * &r1.b2));
    let c0 = frac(&(&r2.a1 * &r1.b2) - &(&r1.a1 * &r2.b2));
    let d0 = frac(&(&r2.a1 * &r1.b1) - &(&r1.a1 * &r2.b1));
    CoeffQuartet::new(a0, b0, c0, d0)
}
