//! The coefficient recursion `φ^(n+1) = aₙφ₁ + bₙφ₂` (first component) and
//! `φ₂^(n+1) = cₙφ₂ + dₙφ₁`, and the termination polynomials built from it.

use crate::algebra::{BigRational, RatFunc, RationalPoly};
use crate::catalog::CoeffQuartet;
use crate::par;

use super::AimError;

#[derive(Clone, Debug, PartialEq)]
pub struct AimRow {
    pub n: u32,
    pub a: RatFunc,
    pub b: RatFunc,
    pub c: RatFunc,
    pub d: RatFunc,
}

impl AimRow {
    pub fn seed(q: &CoeffQuartet) -> Self {
        AimRow { n: 0, a: q.a0.clone(), b: q.b0.clone(), c: q.c0.clone(), d: q.d0.clone() }
    }
}

/// One step for a pair sharing the seeds `(α, β, γ, δ)`:
/// `p ← αp + p′ + δq`, `q ← βp + q′ + γq`.
/// `(a, b)` uses `(a₀, b₀, c₀, d₀)`; `(c, d)` uses `(c₀, d₀, a₀, b₀)`.
pub(crate) fn pair_step(p: &RatFunc, q: &RatFunc, s: [&RatFunc; 4]) -> (RatFunc, RatFunc) {
    let [alpha, beta, gamma, delta] = s;
    par::join(
        || alpha.mul(p).add(&p.derive_z()).add(&delta.mul(q)),
        || beta.mul(p).add(&q.derive_z()).add(&gamma.mul(q)),
    )
}

/// Row `n + 1` from row `n`.
pub fn aim_step(prev: &AimRow, seed: &CoeffQuartet) -> AimRow {
    let ((a, b), (c, d)) = par::join(
        || pair_step(&prev.a, &prev.b, [&seed.a0, &seed.b0, &seed.c0, &seed.d0]),
        || pair_step(&prev.c, &prev.d, [&seed.c0, &seed.d0, &seed.a0, &seed.b0]),
    );
    AimRow { n: prev.n + 1, a, b, c, d }
}

/// `δ` polynomials in `E` at `z = z₀` for the consecutive rows `n − 1` and `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaPair {
    pub n: u32,
    pub delta1: RationalPoly,
    pub delta2: RationalPoly,
}

/// Numerator at `z₀` of `q_prev·p_cur − p_prev·q_cur`.
pub(crate) fn delta_poly(p_prev: &RatFunc, q_prev: &RatFunc, p_cur: &RatFunc, q_cur: &RatFunc, z0: &BigRational) -> RationalPoly {
    let (lhs, rhs) = par::join(|| q_prev.mul(p_cur), || p_prev.mul(q_cur));
    lhs.sub(&rhs).eval_numer_at(z0)
}

/// `δ₁ = bₙ₋₁aₙ − aₙ₋₁bₙ` and `δ₂ = dₙ₋₁cₙ − cₙ₋₁dₙ`, as numerators at `z₀`.
pub fn delta_at(prev: &AimRow, cur: &AimRow, z0: &BigRational) -> Result<DeltaPair, AimError> {
    assert_eq!(prev.n + 1, cur.n, "rows must be consecutive");
    let (delta1, delta2) = par::join(
        || delta_poly(&prev.a, &prev.b, &cur.a, &cur.b, z0),
        || delta_poly(&prev.c, &prev.d, &cur.c, &cur.d, z0),
    );
    match (delta1.is_zero(), delta2.is_zero()) {
        (false, false) => Ok(DeltaPair { n: cur.n, delta1, delta2 }),
        (z1, z2) => Err(AimError::IdenticallyZero { n: cur.n, delta1: z1, delta2: z2 }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, BiPoly};
    use crate::catalog::{closed_form_jc, seed_jc, ModelSpec};
    use num_traits::Zero;

    #[test]
    fn constant_decoupled_seed_powers() {
        let lambda = RatFunc::constant(rat(3, 2));
        let q = CoeffQuartet::new(lambda.clone(), RatFunc::zero(), lambda.clone(), RatFunc::zero()).unwrap();
        let mut row = AimRow::seed(&q);
        for n in 1..5i32 {
            row = aim_step(&row, &q);
            let want = RatFunc::constant(rat(3, 2).pow(n + 1));
            assert_eq!(row.a, want);
            assert_eq!(row.c, want);
            assert!(row.b.is_zero() && row.d.is_zero());
        }
    }

    #[test]
    fn first_row_identity() {
        let m = ModelSpec::jc(rat(1, 1), rat(1, 3), rat(1, 2), rat(1, 1));
        let q = seed_jc(&m).unwrap();
        let row1 = aim_step(&AimRow::seed(&q), &q);
        let want = q.a0.mul(&q.a0).add(&q.a0.derive_z()).add(&q.d0.mul(&q.b0));
        assert_eq!(row1.a, want);
    }

    #[test]
    fn decoupled_delta_is_identically_zero() {
        let q = CoeffQuartet::new(
            RatFunc::from_poly(BiPoly::e()),
            RatFunc::zero(),
            RatFunc::constant(rat(2, 1)),
            RatFunc::zero(),
        )
        .unwrap();
        let r0 = AimRow::seed(&q);
        let r1 = aim_step(&r0, &q);
        let err = delta_at(&r0, &r1, &BigRational::zero()).unwrap_err();
        assert_eq!(err, AimError::IdenticallyZero { n: 1, delta1: true, delta2: true });
    }

    #[test]
    fn jc_first_delta_roots_are_closed_form() {
        let (w, w0, kap, k) = (rat(1, 1), rat(3, 10), rat(1, 5), rat(2, 1));
        let q = seed_jc(&ModelSpec::jc(w.clone(), w0.clone(), kap.clone(), k.clone())).unwrap();
        let r0 = AimRow::seed(&q);
        let r1 = aim_step(&r0, &q);
        let d = delta_at(&r0, &r1, &BigRational::zero()).unwrap();
        let roots = d.delta1.distinct_real_roots(1e-15);
        let (lo, hi) = closed_form_jc(&k, 1, &w, &w0, &(&kap * &kap)).unwrap();
        for want in [lo, hi] {
            assert!(roots.iter().any(|r| (r - want).abs() < 1e-12), "{want} not in {roots:?}");
        }
    }
}
