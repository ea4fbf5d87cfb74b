//! Hard-coded coefficient quartets for the Jahn-Teller, Rashba and
//! Jaynes-Cummings patterns, written for σ₊ couplings `p` and σ₋ couplings `q`.

use num_traits::{One, Zero};

use super::{CatalogError, ModelSpec};
use crate::algebra::{BiPoly, BigRational, RatFunc, RationalPoly};

/// `φ₁′ = a₀φ₁ + b₀φ₂`, `φ₂′ = c₀φ₂ + d₀φ₁`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffQuartet {
    pub a0: RatFunc,
    pub b0: RatFunc,
    pub c0: RatFunc,
    pub d0: RatFunc,
}

impl CoeffQuartet {
    /// Rejects any numerator of degree above one in `E`.
    pub fn new(a0: RatFunc, b0: RatFunc, c0: RatFunc, d0: RatFunc) -> Result<Self, CatalogError> {
        for f in [&a0, &b0, &c0, &d0] {
            if f.numer().deg_e().unwrap_or(0) > 1 {
                return Err(CatalogError::NotAffine);
            }
            debug_assert!(f.den().is_e_free());
        }
        Ok(CoeffQuartet { a0, b0, c0, d0 })
    }

    pub fn is_coupled(&self) -> bool {
        !(self.b0.is_zero() && self.d0.is_zero())
    }

    /// `(a₀, −b₀, c₀, −d₀)`: the quartet after `φ₂ → −φ₂`.
    pub fn parity_image(&self) -> Self {
        CoeffQuartet { a0: self.a0.clone(), b0: self.b0.neg(), c0: self.c0.clone(), d0: self.d0.neg() }
    }
}

/// `c + cz·z + ce·E`.
fn affine(c: BigRational, cz: BigRational, ce: BigRational) -> BiPoly {
    BiPoly::from_terms([((0, 0), c), ((1, 0), cz), ((0, 1), ce)])
}

/// `num` over the z-polynomial with coefficients `den`, lowest power first.
fn over(num: BiPoly, den: &[BigRational]) -> RatFunc {
    RatFunc::over_z_poly(num, &RationalPoly::from_coeffs(den.to_vec()))
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn require(ok: bool, name: &'static str) -> Result<(), CatalogError> {
    if ok {
        Ok(())
    } else {
        Err(CatalogError::BadPattern(name))
    }
}

fn unit_two_mode(m: &ModelSpec) -> bool {
    m.omega1.is_one() && m.omega2.is_one()
}

/// Jahn-Teller pattern at `ω₁ = ω₂ = 1`: `κ₁ = κ₄ = p`, `γ₂ = γ₃ = q`, all other couplings zero.
pub fn seed_jt(m: &ModelSpec) -> Result<CoeffQuartet, CatalogError> {
    require(
        unit_two_mode(m)
            && m.kappa2.is_zero()
            && m.kappa3.is_zero()
            && m.gamma1.is_zero()
            && m.gamma4.is_zero()
            && m.kappa1 == m.kappa4
            && m.gamma2 == m.gamma3,
        "Jahn-Teller",
    )?;
    let (p, q, w0, k) = (&m.kappa1, &m.gamma2, &m.omega0, &m.k);
    let pq = p * q;
    let two = int(2);
    let four = int(4);
    // a₀ = (pq − 2ω₀ − 2k + 2E − 2)/(4z − pq)
    let a0 = over(affine(&pq - &two * w0 - &two * k - &two, int(0), two.clone()), &[-pq.clone(), four.clone()]);
    // b₀ = p(ω₀ + k + 2z + E)/(pq − 4z)
    let b0 = over(affine(w0 + k, two.clone(), int(1)).scale(p), &[pq.clone(), -four.clone()]);
    // c₀ = (pq(1 + k + z) + 2z(ω₀ − k + E − 2))/(z(4z − pq))
    let c0_num = BiPoly::from_terms([
        ((0, 0), &pq * (k + int(1))),
        ((1, 0), &pq + &two * (w0 - k - &two)),
        ((1, 1), two.clone()),
    ]);
    let c0 = over(c0_num, &[int(0), -pq.clone(), four.clone()]);
    // d₀ = q(E − ω₀ − k + 2z − 1)/(z(pq − 4z))
    let d0 = over(affine(-w0 - k - int(1), two, int(1)).scale(q), &[int(0), pq, -four]);
    CoeffQuartet::new(a0, b0, c0, d0)
}

/// Rashba pattern at `ω₁ = ω₂ = 1`: `κ₁ = −κ₄ = p`, `γ₂ = −γ₃ = q`, all other couplings zero.
pub fn seed_rashba(m: &ModelSpec) -> Result<CoeffQuartet, CatalogError> {
    require(
        unit_two_mode(m)
            && m.kappa2.is_zero()
            && m.kappa3.is_zero()
            && m.gamma1.is_zero()
            && m.gamma4.is_zero()
            && m.kappa1 == -m.kappa4.clone()
            && m.gamma2 == -m.gamma3.clone(),
        "Rashba",
    )?;
    let (p, q, w0, k) = (&m.kappa1, &m.gamma2, &m.omega0, &m.k);
    let pq = p * q;
    let two = int(2);
    let four = int(4);
    // a₀ = (pq − 2ω₀ − 2k + 2E − 2)/(4z + pq)
    let a0 = over(affine(&pq - &two * w0 - &two * k - &two, int(0), two.clone()), &[pq.clone(), four.clone()]);
    // b₀ = p(2z − ω₀ − k − E)/(pq + 4z)
    let b0 = over(affine(-w0 - k, two.clone(), int(-1)).scale(p), &[pq.clone(), four.clone()]);
    // c₀ = (pq + 2(ω₀ + k + E))/(4z + pq) − (k + 1)/z
    let c0_first = over(affine(&pq + &two * (w0 + k), int(0), two.clone()), &[pq.clone(), four.clone()]);
    let c0_second = over(BiPoly::constant(k + int(1)), &[int(0), int(1)]);
    let c0 = c0_first.sub(&c0_second);
    // d₀ = q(E − ω₀ − k − 2z − 1)/(z(pq + 4z))
    let d0 = over(affine(-w0 - k - int(1), -two, int(1)).scale(q), &[int(0), pq, four]);
    CoeffQuartet::new(a0, b0, c0, d0)
}

/// Jaynes-Cummings pattern: `ω₁ = ω ≠ 0`, `ω₂ = 0`, `κ₁ = p`, `γ₂ = q`, all other couplings zero.
pub fn seed_jc(m: &ModelSpec) -> Result<CoeffQuartet, CatalogError> {
    require(
        m.omega2.is_zero()
            && m.kappa2.is_zero()
            && m.kappa3.is_zero()
            && m.kappa4.is_zero()
            && m.gamma1.is_zero()
            && m.gamma3.is_zero()
            && m.gamma4.is_zero(),
        "Jaynes-Cummings",
    )?;
    if m.omega1.is_zero() {
        return Err(CatalogError::ZeroFrequency);
    }
    let (w, p, q, w0, k) = (&m.omega1, &m.kappa1, &m.gamma2, &m.omega0, &m.k);
    let pq = p * q;
    let w2 = w * w;
    let zero = BigRational::zero;
    // a₀ = −(pq + ω(E − kω + ω₀))/(ω²z)
    let a0 = over(affine(-(&pq + w * (w0 - k * w)), zero(), -w.clone()), &[zero(), w2.clone()]);
    // b₀ = p(E − ω₀)/(ω²z)
    let b0 = over(affine(-w0.clone(), zero(), int(1)).scale(p), &[zero(), w2]);
    // c₀ = (−E + ω + kω + ω₀)/(ωz)
    let c0 = over(affine(w + k * w + w0, zero(), int(-1)), &[zero(), w.clone()]);
    // d₀ = q/(ωz)
    let d0 = over(BiPoly::constant(q.clone()), &[zero(), w.clone()]);
    CoeffQuartet::new(a0, b0, c0, d0)
}
