//! Exact arithmetic over `Q[z, E]` and rational functions with E-free denominators.

mod bipoly;
mod ratfunc;
mod rational_poly;
mod roots;

pub use bipoly::{bipoly_arith, ArithKind, BiPoly, Monomial};
pub use num_rational::BigRational;
pub use ratfunc::{ratfunc_arith, ratfunc_derive_z, ratfunc_eval_numer_at, RatFunc, RatKind};
pub use rational_poly::RationalPoly;
pub use roots::{poly_real_roots, UniPolyE, DEFAULT_IMAG_TOL};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("polynomial is a nonzero constant and has no roots")]
    DegreeZero,
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("denominator depends on E")]
    DenominatorDependsOnE,
}

/// Shorthand for the rational `n / d`; panics on `d = 0`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Exact value of a decimal or `p/q` literal such as `-0.25`, `3/4`, `1e-3`.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    use num_bigint::BigInt;
    use num_traits::Zero;
    let t = text.trim();
    if t.is_empty() {
        return None;
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        return (!d.is_zero()).then(|| BigRational::new(n, d));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10u8);
    let mut value = if scale >= 0 {
        BigRational::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        value = -value;
    }
    Some(value)
}
