//! Dense univariate polynomials with exact rational coefficients.
//!
//! Used in two roles: polynomials in E obtained by evaluating a bivariate
//! numerator at a fixed z, and E-free denominator factors in z.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficients are stored lowest power first; the vector never ends in a zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn zero() -> Self {
        RationalPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    /// Convenience constructor from integer coefficients, lowest power first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    /// `∏ (x − rᵢ)`.
    pub fn from_roots(roots: &[BigRational]) -> Self {
        roots.iter().fold(Self::one(), |acc, r| {
            &acc * &Self::from_coeffs(vec![-r.clone(), BigRational::one()])
        })
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    /// Multiplicity of the root at zero.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] * &lc_inv;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    let t = &q * dc;
                    rem[i - dd + j] -= t;
                }
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Exact quotient if `divisor` divides `self`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        // Work on primitive integer images to keep coefficient growth in check.
        let mut a = self.primitive_int();
        let mut b = other.primitive_int();
        if a.is_empty() {
            return Self::from_int_coeffs(&b).monic();
        }
        while !b.is_empty() {
            let (r, _) = int_prem(&a, &b);
            a = b;
            b = int_primitive(r);
        }
        Self::from_int_coeffs(&a).monic()
    }

    /// Yun's square-free decomposition: returns `(fᵢ, i)` with `self = c · ∏ fᵢ^i`,
    /// each `fᵢ` monic, square-free and pairwise coprime. Constants are omitted.
    pub fn square_free_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.exact_div(&a).expect("gcd divides");
        let mut c = df.exact_div(&a).expect("gcd divides derivative");
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let g = b.gcd(&d);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), i));
            }
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            b = b.exact_div(&g).expect("gcd divides");
            c = d.exact_div(&g).expect("gcd divides");
            d = &c - &b.derivative();
            i += 1;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
        }
        out
    }

    /// Product of the distinct irreducible factors (monic); constant 1 when there are none.
    pub fn square_free_part(&self) -> Self {
        self.square_free_decomposition()
            .into_iter()
            .fold(Self::one(), |acc, (f, _)| &acc * &f)
    }

    /// Float image of the coefficients, scaled so the leading one is exactly 1.
    pub fn to_f64_monic(&self) -> Vec<f64> {
        self.monic().coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// Distinct real roots in ascending order, each accurate to roughly
    /// `rel_tol · max(1, |x|)`. Isolation is exact (Sturm sequence on the
    /// square-free part); refinement bisects with exact sign evaluation.
    pub fn distinct_real_roots(&self, rel_tol: f64) -> Vec<f64> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let sf = self.square_free_part();
        RootIsolator::new(&sf).roots(rel_tol)
    }

    /// Real roots listed with multiplicity, ascending.
    pub fn real_roots_with_multiplicity(&self, rel_tol: f64) -> Vec<f64> {
        let mut out = Vec::new();
        for (f, m) in self.square_free_decomposition() {
            for r in RootIsolator::new(&f).roots(rel_tol) {
                out.extend(std::iter::repeat_n(r, m));
            }
        }
        out.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
        out
    }

    /// Number of distinct real roots (exact).
    pub fn count_distinct_real_roots(&self) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let sf = self.square_free_part();
        let iso = RootIsolator::new(&sf);
        iso.changes_at_neg_inf() - iso.changes_at_pos_inf()
    }

    fn primitive_int(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        int_primitive(ints)
    }

    fn from_int_coeffs(c: &[BigInt]) -> Self {
        Self::from_coeffs(c.iter().map(|v| BigRational::from_integer(v.clone())).collect())
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<'a> std::ops::Add<&'a RationalPoly> for &'a RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> std::ops::Sub<&'a RationalPoly> for &'a RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> std::ops::Mul<&'a RationalPoly> for &'a RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::from_coeffs(out)
    }
}

fn int_trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

/// Divides out the (positive) content.
fn int_primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let v = int_trim(v);
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|c| c / &g).collect()
}

/// Pseudo-remainder of `a` by `b`; returns `(r, s)` with `lc(b)^s · a = q·b + r`.
fn int_prem(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, usize) {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let lc = &b[db];
    let mut steps = 0;
    while r.len() > db {
        steps += 1;
        let lead = r.last().cloned().expect("nonempty");
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= lc;
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &lead * bc;
        }
        r = int_trim(r);
    }
    (r, steps)
}

/// Sturm-sequence root isolation on a square-free integer polynomial.
struct RootIsolator {
    /// Sturm chain, each entry primitive with integer coefficients.
    chain: Vec<Vec<BigInt>>,
}

impl RootIsolator {
    fn new(p: &RationalPoly) -> Self {
        let p0 = p.primitive_int();
        let p1 = int_primitive(
            p0.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        );
        let mut chain = vec![p0, p1];
        loop {
            let n = chain.len();
            let (a, b) = (&chain[n - 2], &chain[n - 1]);
            if b.len() <= 1 {
                break;
            }
            // prem(a, b) = lc(b)^s · rem; Sturm needs −rem up to a positive factor.
            let (r, s) = int_prem(a, b);
            let lc_neg_odd = b.last().expect("nonempty").is_negative() && s % 2 == 1;
            if r.is_empty() {
                break;
            }
            let r = int_primitive(r);
            let next = if lc_neg_odd { r } else { r.into_iter().map(|c| -c).collect() };
            chain.push(next);
        }
        RootIsolator { chain }
    }

    fn sign_changes<I: Iterator<Item = Sign>>(signs: I) -> usize {
        let mut last = Sign::NoSign;
        let mut changes = 0;
        for s in signs {
            if s == Sign::NoSign {
                continue;
            }
            if last != Sign::NoSign && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    fn changes_at_pos_inf(&self) -> usize {
        Self::sign_changes(self.chain.iter().map(|p| p.last().map_or(Sign::NoSign, BigInt::sign)))
    }

    fn changes_at_neg_inf(&self) -> usize {
        Self::sign_changes(self.chain.iter().map(|p| {
            let s = p.last().map_or(Sign::NoSign, BigInt::sign);
            if (p.len() - 1) % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    fn changes_at(&self, x: &Dyadic) -> usize {
        Self::sign_changes(self.chain.iter().map(|p| x.sign_of(p)))
    }

    /// Power-of-two bound `B` with every real root in `(−B, B)`.
    fn root_bound_exp(&self) -> i64 {
        let p = &self.chain[0];
        let lc = p.last().expect("nonempty").abs();
        let max_ratio = p[..p.len() - 1]
            .iter()
            .map(|c| BigRational::new(c.abs(), lc.clone()))
            .max()
            .unwrap_or_else(BigRational::zero);
        let bound = max_ratio + BigRational::one();
        let mut e = 0i64;
        let mut pow = BigRational::one();
        while pow <= bound {
            pow *= BigRational::from_integer(2.into());
            e += 1;
        }
        e
    }

    fn roots(&self, rel_tol: f64) -> Vec<f64> {
        let p = &self.chain[0];
        if p.len() <= 1 {
            return Vec::new();
        }
        let e = self.root_bound_exp();
        let lo = Dyadic::pow2(e).neg();
        let hi = Dyadic::pow2(e);
        let mut isolated = Vec::new();
        let mut stack = vec![(lo.clone(), hi.clone(), self.changes_at(&lo), self.changes_at(&hi))];
        while let Some((l, r, vl, vr)) = stack.pop() {
            let count = vl.saturating_sub(vr);
            if count == 0 {
                continue;
            }
            if count == 1 {
                isolated.push((l, r));
                continue;
            }
            let m = l.midpoint(&r);
            let vm = self.changes_at(&m);
            stack.push((l, m.clone(), vl, vm));
            stack.push((m, r, vm, vr));
        }
        let mut roots: Vec<f64> = isolated
            .into_iter()
            .map(|(l, r)| refine(p, l, r, rel_tol))
            .collect();
        roots.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
        roots
    }
}

/// Bisection on `(l, r]` containing exactly one simple root of `p`.
fn refine(p: &[BigInt], mut l: Dyadic, mut r: Dyadic, rel_tol: f64) -> f64 {
    if r.sign_of(p) == Sign::NoSign {
        return r.to_f64();
    }
    let sr = r.sign_of(p);
    loop {
        let width = r.to_f64() - l.to_f64();
        let scale = r.to_f64().abs().max(l.to_f64().abs()).max(1.0);
        if width <= rel_tol * scale || r.exp > 1100 {
            return 0.5 * (l.to_f64() + r.to_f64());
        }
        let m = l.midpoint(&r);
        let sm = m.sign_of(p);
        if sm == Sign::NoSign {
            return m.to_f64();
        }
        // The open left end may itself be a root of p, so only compare against r.
        if sm == sr {
            r = m;
        } else {
            l = m;
        }
    }
}

/// Exact number `mant / 2^exp`.
#[derive(Clone, Debug)]
struct Dyadic {
    mant: BigInt,
    exp: u64,
}

impl Dyadic {
    fn pow2(e: i64) -> Self {
        if e >= 0 {
            Dyadic { mant: BigInt::one() << (e as u64), exp: 0 }
        } else {
            Dyadic { mant: BigInt::one(), exp: (-e) as u64 }
        }
    }

    fn neg(self) -> Self {
        Dyadic { mant: -self.mant, exp: self.exp }
    }

    fn midpoint(&self, other: &Self) -> Self {
        let exp = self.exp.max(other.exp);
        let a = &self.mant << (exp - self.exp);
        let b = &other.mant << (exp - other.exp);
        Dyadic { mant: a + b, exp: exp + 1 }
    }

    fn to_f64(&self) -> f64 {
        // Shift down to keep the mantissa inside f64 range before scaling.
        let bits = self.mant.bits();
        let drop = bits.saturating_sub(60);
        let m = (&self.mant >> drop).to_f64().unwrap_or(f64::NAN);
        m * 2f64.powi(drop as i32 - self.exp as i32)
    }

    /// Sign of `p(mant/2^exp)`, computed from the homogenised integer value.
    fn sign_of(&self, p: &[BigInt]) -> Sign {
        let n = p.len();
        if n == 0 {
            return Sign::NoSign;
        }
        let mut acc = p[n - 1].clone();
        for (j, c) in p[..n - 1].iter().rev().enumerate() {
            acc = acc * &self.mant + (c << (self.exp * (j as u64 + 1)));
        }
        acc.sign()
    }
}
