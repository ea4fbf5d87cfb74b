//! Sparse bivariate polynomials in the reduced coordinate `z` and the energy `E`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::RationalPoly;

/// Exponent pair `(deg_z, deg_E)`.
pub type Monomial = (u32, u32);

/// Polynomial in `z` and `E` with exact coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
}

/// Dispatches one of the ring operations; total.
pub fn bipoly_arith(lhs: &BiPoly, rhs: &BiPoly, kind: ArithKind) -> BiPoly {
    match kind {
        ArithKind::Add => lhs + rhs,
        ArithKind::Sub => lhs - rhs,
        ArithKind::Mul => lhs * rhs,
    }
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: BigRational, deg_z: u32, deg_e: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((deg_z, deg_e), c);
        }
        BiPoly { terms }
    }

    /// The variable `z`.
    pub fn z() -> Self {
        Self::monomial(BigRational::one(), 1, 0)
    }

    /// The variable `E`.
    pub fn e() -> Self {
        Self::monomial(BigRational::one(), 0, 1)
    }

    /// Sums duplicate monomials and drops zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(iter: I) -> Self {
        let mut terms: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in iter {
            *terms.entry(m).or_insert_with(BigRational::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        BiPoly { terms }
    }

    /// Lifts a univariate polynomial in `z`.
    pub fn from_z_poly(p: &RationalPoly) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| ((i as u32, 0), c.clone())),
        )
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, deg_z: u32, deg_e: u32) -> BigRational {
        self.terms.get(&(deg_z, deg_e)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn deg_z(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.0).max()
    }

    pub fn deg_e(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.1).max()
    }

    /// Largest power of `z` dividing the polynomial (`None` for zero).
    pub fn z_order(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.0).min()
    }

    pub fn is_e_free(&self) -> bool {
        self.terms.keys().all(|m| m.1 == 0)
    }

    /// Formal ∂/∂z.
    pub fn derive_z(&self) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|((dz, _), _)| *dz > 0)
                .map(|(&(dz, de), c)| ((dz - 1, de), c * BigRational::from_integer(dz.into())))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiPoly { terms: self.terms.iter().map(|(&m, v)| (m, v * c)).collect() }
    }

    /// Divides by `z^k`; the caller guarantees `k ≤ z_order`.
    pub fn shift_z_down(&self, k: u32) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(&(dz, de), c)| ((dz - k, de), c.clone())).collect(),
        }
    }

    pub fn shift_z_up(&self, k: u32) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(&(dz, de), c)| ((dz + k, de), c.clone())).collect(),
        }
    }

    /// Substitutes `z = z0`, leaving a polynomial in `E`.
    pub fn eval_z(&self, z0: &BigRational) -> RationalPoly {
        let Some(de_max) = self.deg_e() else {
            return RationalPoly::zero();
        };
        let mut out = vec![BigRational::zero(); de_max as usize + 1];
        let mut powers: Vec<BigRational> = vec![BigRational::one()];
        for (&(dz, de), c) in &self.terms {
            while powers.len() <= dz as usize {
                let next = powers.last().expect("nonempty") * z0;
                powers.push(next);
            }
            out[de as usize] += c * &powers[dz as usize];
        }
        RationalPoly::from_coeffs(out)
    }

    /// Substitutes `E = e0`, leaving a polynomial in `z`.
    pub fn eval_e(&self, e0: &BigRational) -> RationalPoly {
        let Some(dz_max) = self.deg_z() else {
            return RationalPoly::zero();
        };
        let mut out = vec![BigRational::zero(); dz_max as usize + 1];
        for (&(dz, de), c) in &self.terms {
            out[dz as usize] += c * num_traits::pow(e0.clone(), de as usize);
        }
        RationalPoly::from_coeffs(out)
    }

    /// Float evaluation at `(z, E)`.
    pub fn eval_f64(&self, z: f64, e: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.terms
            .iter()
            .map(|(&(dz, de), c)| {
                c.to_f64().unwrap_or(f64::NAN) * z.powi(dz as i32) * e.powi(de as i32)
            })
            .sum()
    }

    /// Coefficients of `z^i` as polynomials in `E` when viewed in `Q[E][z]`.
    pub fn z_columns(&self) -> BTreeMap<u32, BTreeMap<u32, BigRational>> {
        let mut cols: BTreeMap<u32, BTreeMap<u32, BigRational>> = BTreeMap::new();
        for (&(dz, de), c) in &self.terms {
            cols.entry(de).or_default().insert(dz, c.clone());
        }
        cols
    }

    /// View of an E-free polynomial as a univariate polynomial in `z`.
    pub fn to_z_poly(&self) -> Option<RationalPoly> {
        if !self.is_e_free() {
            return None;
        }
        let n = self.deg_z().map_or(0, |d| d as usize + 1);
        let mut v = vec![BigRational::zero(); n];
        for (&(dz, _), c) in &self.terms {
            v[dz as usize] = c.clone();
        }
        Some(RationalPoly::from_coeffs(v))
    }

    /// Exact division by a monic univariate polynomial in `z`, if it divides.
    pub fn div_exact_z_poly(&self, f: &RationalPoly) -> Option<Self> {
        debug_assert!(f.is_monic());
        let d = f.degree()? as u32;
        if d == 0 {
            return Some(self.clone());
        }
        let fc = f.coeffs();
        let mut out = BTreeMap::new();
        for (de, col) in self.z_columns() {
            let mut rem = col;
            while let Some((&top, _)) = rem.last_key_value() {
                if top < d {
                    return None;
                }
                let lead = rem.remove(&top).expect("present");
                let shift = top - d;
                for (t, ft) in fc.iter().enumerate().take(d as usize) {
                    if ft.is_zero() {
                        continue;
                    }
                    let key = shift + t as u32;
                    let entry = rem.entry(key).or_insert_with(BigRational::zero);
                    *entry -= &lead * ft;
                    if entry.is_zero() {
                        rem.remove(&key);
                    }
                }
                out.insert((shift, de), lead);
            }
        }
        Some(BiPoly { terms: out })
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&(dz, de), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            match dz {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{dz}")?,
            }
            match de {
                0 => {}
                1 => write!(f, "E")?,
                _ => write!(f, "E^{de}")?,
            }
        }
        Ok(())
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut terms = big.terms.clone();
        for (m, c) in &small.terms {
            let entry = terms.entry(*m).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(m);
            }
        }
        BiPoly { terms }
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            let entry = terms.entry(*m).or_insert_with(BigRational::zero);
            *entry -= c;
            if entry.is_zero() {
                terms.remove(m);
            }
        }
        BiPoly { terms }
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut terms: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (&(az, ae), ac) in &self.terms {
            for (&(bz, be), bc) in &rhs.terms {
                let prod = ac * bc;
                let entry = terms.entry((az + bz, ae + be)).or_insert_with(BigRational::zero);
                *entry += prod;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        BiPoly { terms }
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(&m, c)| (m, -c)).collect() }
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: BiPoly) -> BiPoly {
        &self + &rhs
    }
}

impl Sub for BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: BiPoly) -> BiPoly {
        &self - &rhs
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: BiPoly) -> BiPoly {
        &self * &rhs
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}
