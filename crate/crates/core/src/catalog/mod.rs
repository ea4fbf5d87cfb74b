//! The two-mode spin-boson Hamiltonian family, its symmetry sectors, the
//! coupled first-order systems it reduces to, and closed-form spectra.

mod closed_form;
mod reduce;
mod seeds;

pub use closed_form::{
    closed_form_dirac, closed_form_jc, closed_form_mjc, dirac_radicand, jc_radicand, mjc_radicand,
    DiracBranch,
};
pub use reduce::{reduce_to_coupled_ode, Case, Convention};
pub use seeds::{seed_jc, seed_jt, seed_rashba, CoeffQuartet};

use num_traits::{One, Zero};

use crate::algebra::BigRational;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum CatalogError {
    #[error("parameters do not match the {0} pattern")]
    BadPattern(&'static str),
    #[error("mode frequency is zero; use the closed form")]
    ZeroFrequency,
    #[error("the derivative coefficient matrix is identically singular")]
    SingularSystem,
    #[error("model violates the {0} constraint set")]
    ConstraintViolation(&'static str),
    #[error("complex energy (radicand {radicand})")]
    ComplexEnergy { radicand: f64 },
    #[error("seed coefficient is not affine in E")]
    NotAffine,
}

/// Parameters of the Hamiltonian
/// `ω₁a⁺a + ω₂b⁺b + ω₀σ₀ + (κ₁a + κ₂a⁺ + κ₃b + κ₄b⁺)σ₊ + (γ₁a + γ₂a⁺ + γ₃b + γ₄b⁺)σ₋`
/// together with the sector label `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModelSpec {
    pub omega1: BigRational,
    pub omega2: BigRational,
    pub omega0: BigRational,
    pub kappa1: BigRational,
    pub kappa2: BigRational,
    pub kappa3: BigRational,
    pub kappa4: BigRational,
    pub gamma1: BigRational,
    pub gamma2: BigRational,
    pub gamma3: BigRational,
    pub gamma4: BigRational,
    pub k: BigRational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymmetryClass {
    K1,
    N1,
    K2,
    N2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Validation {
    pub hermitian: bool,
    pub classes: Vec<SymmetryClass>,
}

/// Hermiticity and every conserved-quantity constraint set the model satisfies.
pub fn validate_model(m: &ModelSpec) -> Validation {
    let z = |x: &BigRational| x.is_zero();
    let hermitian = m.kappa1 == m.gamma2
        && m.kappa2 == m.gamma1
        && m.kappa3 == m.gamma4
        && m.kappa4 == m.gamma3;
    let mut classes = Vec::new();
    if z(&m.gamma2) && z(&m.gamma3) && z(&m.kappa1) && z(&m.kappa4) {
        classes.push(SymmetryClass::K1);
    }
    if z(&m.gamma1) && z(&m.gamma3) && z(&m.kappa2) && z(&m.kappa4) {
        classes.push(SymmetryClass::N1);
    }
    if z(&m.gamma1) && z(&m.gamma4) && z(&m.kappa2) && z(&m.kappa3) {
        classes.push(SymmetryClass::K2);
    }
    if z(&m.gamma2) && z(&m.gamma4) && z(&m.kappa1) && z(&m.kappa3) {
        classes.push(SymmetryClass::N2);
    }
    Validation { hermitian, classes }
}

impl ModelSpec {
    /// No couplings, unit frequencies, `ω₀ = k = 0`.
    pub fn free() -> Self {
        let zero = BigRational::zero;
        ModelSpec {
            omega1: BigRational::one(),
            omega2: BigRational::one(),
            omega0: zero(),
            kappa1: zero(),
            kappa2: zero(),
            kappa3: zero(),
            kappa4: zero(),
            gamma1: zero(),
            gamma2: zero(),
            gamma3: zero(),
            gamma4: zero(),
            k: zero(),
        }
    }

    /// E⊗ε Jahn-Teller: `κ₁ = κ₄ = γ₂ = γ₃ = κ`.
    pub fn jt(omega: BigRational, omega0: BigRational, kappa: BigRational, k: BigRational) -> Self {
        Self::jt_gauge(omega, omega0, kappa.clone(), kappa, k)
    }

    /// Jahn-Teller with σ₊ couplings `p` and σ₋ couplings `q`; the spectrum depends on `pq` only.
    pub fn jt_gauge(omega: BigRational, omega0: BigRational, p: BigRational, q: BigRational, k: BigRational) -> Self {
        ModelSpec {
            omega1: omega.clone(),
            omega2: omega,
            omega0,
            kappa1: p.clone(),
            kappa4: p,
            gamma2: q.clone(),
            gamma3: q,
            k,
            ..Self::free()
        }
    }

    /// Jahn-Teller in the gauge `p = 1, q = κ²`, which admits any rational `κ²`.
    pub fn jt_kappa_sq(omega: BigRational, omega0: BigRational, kappa_sq: BigRational, k: BigRational) -> Self {
        Self::jt_gauge(omega, omega0, BigRational::one(), kappa_sq, k)
    }

    /// Rashba: `κ₁ = −κ₄ = γ₂ = −γ₃ = κ`.
    pub fn rashba(omega: BigRational, omega0: BigRational, kappa: BigRational, k: BigRational) -> Self {
        Self::rashba_gauge(omega, omega0, kappa.clone(), kappa, k)
    }

    pub fn rashba_gauge(omega: BigRational, omega0: BigRational, p: BigRational, q: BigRational, k: BigRational) -> Self {
        ModelSpec {
            omega1: omega.clone(),
            omega2: omega,
            omega0,
            kappa1: p.clone(),
            kappa4: -p,
            gamma2: q.clone(),
            gamma3: -q,
            k,
            ..Self::free()
        }
    }

    pub fn rashba_kappa_sq(omega: BigRational, omega0: BigRational, kappa_sq: BigRational, k: BigRational) -> Self {
        Self::rashba_gauge(omega, omega0, BigRational::one(), kappa_sq, k)
    }

    /// Jaynes-Cummings: single mode `ω₁ = ω`, `κ₁ = γ₂ = κ`.
    pub fn jc(omega: BigRational, omega0: BigRational, kappa: BigRational, k: BigRational) -> Self {
        Self::jc_gauge(omega, omega0, kappa.clone(), kappa, k)
    }

    pub fn jc_gauge(omega: BigRational, omega0: BigRational, p: BigRational, q: BigRational, k: BigRational) -> Self {
        ModelSpec {
            omega1: omega,
            omega2: BigRational::zero(),
            omega0,
            kappa1: p,
            gamma2: q,
            k,
            ..Self::free()
        }
    }

    pub fn jc_kappa_sq(omega: BigRational, omega0: BigRational, kappa_sq: BigRational, k: BigRational) -> Self {
        Self::jc_gauge(omega, omega0, BigRational::one(), kappa_sq, k)
    }

    /// Two-cavity modified Jaynes-Cummings: `ω₁ = ω₂ = ω`, `κ₁ = γ₂ = κ₃ = γ₄ = κ`.
    pub fn mjc(omega: BigRational, omega0: BigRational, kappa: BigRational, k: BigRational) -> Self {
        ModelSpec {
            omega1: omega.clone(),
            omega2: omega,
            omega0,
            kappa1: kappa.clone(),
            kappa3: kappa.clone(),
            gamma2: kappa.clone(),
            gamma4: kappa,
            k,
            ..Self::free()
        }
    }

    /// Dirac oscillator as a Jaynes-Cummings model with `ω = 0`, `ω₀ = mc²`, `κ² = −4c²mω′ħ`.
    pub fn dirac(mass: BigRational, c: BigRational, omega_prime: BigRational, hbar: BigRational, k: BigRational) -> Self {
        let omega0 = &mass * &c * &c;
        let kappa_sq = -(BigRational::from_integer(4.into()) * &c * &c * &mass * &omega_prime * &hbar);
        Self::jc_kappa_sq(BigRational::zero(), omega0, kappa_sq, k)
    }

    /// Interchanges the spinor components: `κᵢ ↔ γᵢ`, `ω₀ → −ω₀`.
    pub fn spin_flipped(&self) -> Self {
        ModelSpec {
            omega0: -self.omega0.clone(),
            kappa1: self.gamma1.clone(),
            kappa2: self.gamma2.clone(),
            kappa3: self.gamma3.clone(),
            kappa4: self.gamma4.clone(),
            gamma1: self.kappa1.clone(),
            gamma2: self.kappa2.clone(),
            gamma3: self.kappa3.clone(),
            gamma4: self.kappa4.clone(),
            ..self.clone()
        }
    }

    /// Every coupling negated; unitarily equivalent through σ₀.
    pub fn with_negated_couplings(&self) -> Self {
        ModelSpec {
            kappa1: -self.kappa1.clone(),
            kappa2: -self.kappa2.clone(),
            kappa3: -self.kappa3.clone(),
            kappa4: -self.kappa4.clone(),
            gamma1: -self.gamma1.clone(),
            gamma2: -self.gamma2.clone(),
            gamma3: -self.gamma3.clone(),
            gamma4: -self.gamma4.clone(),
            ..self.clone()
        }
    }

    pub fn is_uncoupled(&self) -> bool {
        [
            &self.kappa1, &self.kappa2, &self.kappa3, &self.kappa4, &self.gamma1, &self.gamma2, &self.gamma3,
            &self.gamma4,
        ]
        .iter()
        .all(|x| x.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn jt_is_hermitian_k2() {
        let v = validate_model(&ModelSpec::jt(rat(1, 1), rat(0, 1), rat(1, 4), rat(0, 1)));
        assert!(v.hermitian);
        assert_eq!(v.classes, vec![SymmetryClass::K2]);
    }

    #[test]
    fn free_model_has_every_class() {
        let v = validate_model(&ModelSpec::free());
        assert!(v.hermitian);
        assert_eq!(v.classes, vec![SymmetryClass::K1, SymmetryClass::N1, SymmetryClass::K2, SymmetryClass::N2]);
    }

    #[test]
    fn lone_kappa1() {
        let m = ModelSpec { kappa1: rat(1, 1), ..ModelSpec::free() };
        let v = validate_model(&m);
        assert!(!v.hermitian);
        // K2 (γ₁ = γ₄ = κ₂ = κ₃ = 0) holds as well.
        assert_eq!(v.classes, vec![SymmetryClass::N1, SymmetryClass::K2]);
    }

    #[test]
    fn spin_flip_maps_k1_to_k2() {
        let m = ModelSpec::jt(rat(1, 1), rat(1, 3), rat(1, 2), rat(0, 1)).spin_flipped();
        assert_eq!(validate_model(&m).classes, vec![SymmetryClass::K1]);
        assert_eq!(validate_model(&m.spin_flipped()).classes, vec![SymmetryClass::K2]);
    }

    #[test]
    fn catalog_patterns_classify() {
        let jc = ModelSpec::jc(rat(1, 1), rat(0, 1), rat(1, 5), rat(1, 1));
        assert_eq!(validate_model(&jc).classes, vec![SymmetryClass::N1, SymmetryClass::K2]);
        let mjc = ModelSpec::mjc(rat(1, 1), rat(0, 1), rat(1, 5), rat(1, 1));
        assert_eq!(validate_model(&mjc).classes, vec![SymmetryClass::N1]);
        let r = ModelSpec::rashba(rat(1, 1), rat(0, 1), rat(1, 5), rat(0, 1));
        assert!(validate_model(&r).hermitian);
        assert_eq!(validate_model(&r).classes, vec![SymmetryClass::K2]);
    }
}
