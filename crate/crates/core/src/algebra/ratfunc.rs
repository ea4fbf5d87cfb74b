//! Rational functions `num(z, E) / den(z)` with the denominator kept factored.
//!
//! The denominator is `scale · ∏ fᵢ^mᵢ` where every `fᵢ` is monic, square-free,
//! E-free and the `fᵢ` are pairwise coprime. The numerator is primitive (integer
//! coefficients with gcd 1) and no `fᵢ` divides it.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{AlgebraError, BiPoly, RationalPoly};

#[derive(Clone, Debug)]
pub struct RatFunc {
    num: BiPoly,
    scale: BigRational,
    factors: Vec<(RationalPoly, u32)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RatKind {
    Add,
    Sub,
    Mul,
}

/// Dispatches one of the field operations on canonical operands.
pub fn ratfunc_arith(lhs: &RatFunc, rhs: &RatFunc, kind: RatKind) -> RatFunc {
    match kind {
        RatKind::Add => lhs.add(rhs),
        RatKind::Sub => lhs.sub(rhs),
        RatKind::Mul => lhs.mul(rhs),
    }
}

pub fn ratfunc_derive_z(f: &RatFunc) -> RatFunc {
    f.derive_z()
}

pub fn ratfunc_eval_numer_at(f: &RatFunc, z0: &BigRational) -> RationalPoly {
    f.eval_numer_at(z0)
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: BiPoly::zero(), scale: BigRational::one(), factors: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_poly(BiPoly::one())
    }

    pub fn from_poly(num: BiPoly) -> Self {
        Self::assemble(num, BigRational::one(), Vec::new())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(BiPoly::constant(c))
    }

    /// Builds `num / den`, rejecting zero or E-dependent denominators.
    pub fn new(num: BiPoly, den: BiPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        let den = den.to_z_poly().ok_or(AlgebraError::DenominatorDependsOnE)?;
        Ok(Self::over_z_poly(num, &den))
    }

    /// `num / den` for a nonzero univariate denominator in `z`.
    pub fn over_z_poly(num: BiPoly, den: &RationalPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let lead = den.leading().expect("nonzero").clone();
        let zmult = den.zero_root_multiplicity();
        let rest = RationalPoly::from_coeffs(den.coeffs()[zmult..].to_vec()).monic();
        let mut factors = Vec::new();
        if zmult > 0 {
            factors.push((RationalPoly::x(), zmult as u32));
        }
        for (f, m) in rest.square_free_decomposition() {
            factors.push((f, m as u32));
        }
        Self::assemble(num, lead, factors)
    }

    pub fn numer(&self) -> &BiPoly {
        &self.num
    }

    /// Positive leading coefficient of the denominator.
    pub fn den_scale(&self) -> &BigRational {
        &self.scale
    }

    /// Monic square-free coprime factors of the denominator with multiplicities.
    pub fn den_factors(&self) -> &[(RationalPoly, u32)] {
        &self.factors
    }

    /// Expanded denominator as a polynomial in `z`.
    pub fn den_poly(&self) -> RationalPoly {
        product(&self.factors).scale(&self.scale)
    }

    /// Expanded denominator lifted to a (z-only) bivariate polynomial.
    pub fn den(&self) -> BiPoly {
        BiPoly::from_z_poly(&self.den_poly())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Numerator `num(z0, E)`; the denominator is ignored by design.
    pub fn eval_numer_at(&self, z0: &BigRational) -> RationalPoly {
        self.num.eval_z(z0)
    }

    /// Float evaluation; `NaN`/`inf` at poles.
    pub fn eval_f64(&self, z: f64, e: f64) -> f64 {
        self.num.eval_f64(z, e) / self.den_poly().eval_f64(z)
    }

    /// Exact evaluation at `E = e0`, giving a rational function of `z` alone.
    pub fn at_energy(&self, e0: &BigRational) -> RatFunc {
        let n = BiPoly::from_z_poly(&self.num.eval_e(e0));
        Self::assemble(n, self.scale.clone(), self.factors.clone())
    }

    /// Re-establishes the canonical form. Idempotent.
    pub fn canonicalize(&self) -> RatFunc {
        Self::assemble(self.num.clone(), self.scale.clone(), self.factors.clone())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: -&self.num, scale: self.scale.clone(), factors: self.factors.clone() }
    }

    pub fn scale_by(&self, c: &BigRational) -> RatFunc {
        Self::assemble(self.num.scale(c), self.scale.clone(), self.factors.clone())
    }

    pub fn add(&self, rhs: &RatFunc) -> RatFunc {
        self.combine(rhs, false)
    }

    pub fn sub(&self, rhs: &RatFunc) -> RatFunc {
        self.combine(rhs, true)
    }

    pub fn mul(&self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        let (basis, ea, eb) = common_basis(&self.factors, &rhs.factors);
        let factors = basis
            .into_iter()
            .zip(ea.iter().zip(&eb))
            .map(|(f, (x, y))| (f, x + y))
            .collect();
        Self::assemble(&self.num * &rhs.num, &self.scale * &rhs.scale, factors)
    }

    /// Quotient rule on the factored form.
    pub fn derive_z(&self) -> RatFunc {
        if self.is_zero() {
            return RatFunc::zero();
        }
        let radical = product(&self.factors.iter().map(|(f, _)| (f.clone(), 1)).collect::<Vec<_>>());
        let mut num = &self.num.derive_z() * &BiPoly::from_z_poly(&radical);
        for (i, (f, m)) in self.factors.iter().enumerate() {
            let mut others = f.derivative().scale(&BigRational::from_integer((*m).into()));
            for (j, (g, _)) in self.factors.iter().enumerate() {
                if i != j {
                    others = &others * g;
                }
            }
            num = &num - &(&self.num * &BiPoly::from_z_poly(&others));
        }
        let factors = self.factors.iter().map(|(f, m)| (f.clone(), m + 1)).collect();
        Self::assemble(num, self.scale.clone(), factors)
    }

    fn combine(&self, rhs: &RatFunc, subtract: bool) -> RatFunc {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if subtract { rhs.neg() } else { rhs.clone() };
        }
        let (basis, ea, eb) = common_basis(&self.factors, &rhs.factors);
        let lcm: Vec<u32> = ea.iter().zip(&eb).map(|(x, y)| *x.max(y)).collect();
        let lift = |e: &[u32]| -> BiPoly {
            let parts: Vec<(RationalPoly, u32)> = basis
                .iter()
                .zip(lcm.iter().zip(e))
                .filter(|(_, (l, x))| *l > *x)
                .map(|(f, (l, x))| (f.clone(), l - x))
                .collect();
            BiPoly::from_z_poly(&product(&parts))
        };
        let lhs = (&self.num * &lift(&ea)).scale(&rhs.scale);
        let rhs_n = (&rhs.num * &lift(&eb)).scale(&self.scale);
        let num = if subtract { &lhs - &rhs_n } else { &lhs + &rhs_n };
        let factors = basis.into_iter().zip(lcm).collect();
        Self::assemble(num, &self.scale * &rhs.scale, factors)
    }

    /// Cancels denominator factors that divide the numerator, then moves the
    /// numerator content into the scale.
    fn assemble(mut num: BiPoly, mut scale: BigRational, factors: Vec<(RationalPoly, u32)>) -> RatFunc {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let mut kept = Vec::with_capacity(factors.len());
        for (f, mut m) in factors {
            if f.degree().unwrap_or(0) == 0 {
                scale *= f.leading().cloned().unwrap_or_else(BigRational::one).pow(m as i32);
                continue;
            }
            let is_z = f.degree() == Some(1) && f.coeff(0).is_zero();
            if is_z {
                let strip = num.z_order().unwrap_or(0).min(m);
                if strip > 0 {
                    num = num.shift_z_down(strip);
                    m -= strip;
                }
            } else {
                while m > 0 {
                    match num.div_exact_z_poly(&f) {
                        Some(q) => {
                            num = q;
                            m -= 1;
                        }
                        None => break,
                    }
                }
            }
            if m > 0 {
                kept.push((f, m));
            }
        }
        kept.sort_by_key(|a| factor_key(&a.0));
        let content = content(&num);
        if !content.is_one() {
            num = num.scale(&content.recip());
            scale /= content;
        }
        if scale.is_negative() {
            num = -&num;
            scale = -scale;
        }
        let out = RatFunc { num, scale, factors: kept };
        debug_assert!(out.den().is_e_free());
        out
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let lhs = &self.num * &other.den();
        let rhs = &other.num * &self.den();
        lhs == rhs
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() && self.scale.is_one() {
            return write!(f, "{}", self.num);
        }
        write!(f, "[{}] / [{}", self.num, self.scale)?;
        for (p, m) in &self.factors {
            write!(f, "·({p})")?;
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        write!(f, "]")
    }
}

fn factor_key(f: &RationalPoly) -> (usize, Vec<BigRational>) {
    (f.degree().unwrap_or(0), f.coeffs().to_vec())
}

fn product(parts: &[(RationalPoly, u32)]) -> RationalPoly {
    let mut acc = RationalPoly::one();
    for (f, m) in parts {
        for _ in 0..*m {
            acc = &acc * f;
        }
    }
    acc
}

/// Positive rational `c` such that `p / c` has coprime integer coefficients.
fn content(p: &BiPoly) -> BigRational {
    let mut g = BigInt::zero();
    let mut l = BigInt::one();
    for (_, c) in p.terms() {
        g = g.gcd(c.numer());
        l = l.lcm(c.denom());
    }
    BigRational::new(g, l)
}

/// Pairwise-coprime square-free refinement of two factor lists, with the
/// exponent of each basis element in either list.
fn common_basis(
    a: &[(RationalPoly, u32)],
    b: &[(RationalPoly, u32)],
) -> (Vec<RationalPoly>, Vec<u32>, Vec<u32>) {
    let mut basis: Vec<RationalPoly> = Vec::new();
    for (f, _) in a.iter().chain(b) {
        if !basis.contains(f) {
            basis.push(f.clone());
        }
    }
    refine(&mut basis);
    let exps = |list: &[(RationalPoly, u32)]| -> Vec<u32> {
        basis
            .iter()
            .map(|g| {
                list.iter()
                    .filter(|(f, _)| f == g || f.exact_div(g).is_some())
                    .map(|(_, m)| *m)
                    .sum()
            })
            .collect()
    };
    let ea = exps(a);
    let eb = exps(b);
    (basis, ea, eb)
}

fn refine(basis: &mut Vec<RationalPoly>) {
    'outer: loop {
        for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                let g = basis[i].gcd(&basis[j]);
                if g.degree().unwrap_or(0) == 0 {
                    continue;
                }
                let fi = basis[i].exact_div(&g).expect("gcd divides").monic();
                let fj = basis[j].exact_div(&g).expect("gcd divides").monic();
                basis.remove(j);
                basis.remove(i);
                for p in [fi, fj, g] {
                    if p.degree().unwrap_or(0) > 0 && !basis.contains(&p) {
                        basis.push(p);
                    }
                }
                continue 'outer;
            }
        }
        break;
    }
}
