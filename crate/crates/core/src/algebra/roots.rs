//! Floating-point real roots of univariate polynomials in `E`.

use nalgebra::DMatrix;

use super::AlgebraError;

pub const DEFAULT_IMAG_TOL: f64 = 1e-8;

/// Polynomial in `E` with double coefficients, lowest power first, trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPolyE {
    coeffs: Vec<f64>,
}

impl UniPolyE {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        UniPolyE { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    /// Value and derivative by Horner's scheme.
    fn eval_with_derivative(&self, x: f64) -> (f64, f64) {
        let mut p = 0.0;
        let mut dp = 0.0;
        for c in self.coeffs.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    }
}

/// Real roots (with multiplicity, ascending) of `p`: eigenvalues of the balanced
/// companion matrix with `|Im| ≤ imag_tol·(1 + |Re|)`, each polished by Newton steps.
pub fn poly_real_roots(p: &UniPolyE, imag_tol: f64) -> Result<Vec<f64>, AlgebraError> {
    let deg = p.degree().ok_or(AlgebraError::ZeroPolynomial)?;
    if deg == 0 {
        return Err(AlgebraError::DegreeZero);
    }
    let zeros = p.coeffs.iter().take_while(|c| **c == 0.0).count();
    let reduced = UniPolyE::new(p.coeffs[zeros..].to_vec());
    let mut roots = vec![0.0; zeros];
    let n = deg - zeros;
    if n > 0 {
        let lead = reduced.coeffs[n];
        let mut m = DMatrix::<f64>::zeros(n, n);
        for i in 1..n {
            m[(i, i - 1)] = 1.0;
        }
        for i in 0..n {
            m[(i, n - 1)] = -reduced.coeffs[i] / lead;
        }
        balance(&mut m);
        for z in m.complex_eigenvalues().iter() {
            if z.im.abs() <= imag_tol * (1.0 + z.re.abs()) {
                roots.push(polish(&reduced, z.re));
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

/// Parlett–Reinsch diagonal similarity balancing with power-of-two scalings.
fn balance(m: &mut DMatrix<f64>) {
    let n = m.nrows();
    let radix = 2.0_f64;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].abs();
                    r += m[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / radix;
            while c < g {
                f *= radix;
                c *= radix * radix;
            }
            g = r * radix;
            while c > g {
                f /= radix;
                c /= radix * radix;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                    m[(j, i)] *= f;
                }
            }
        }
    }
}

/// A few Newton steps, keeping whichever iterate has the smallest residual.
fn polish(p: &UniPolyE, x0: f64) -> f64 {
    let mut best = x0;
    let mut best_val = p.eval(x0).abs();
    let mut x = x0;
    for _ in 0..8 {
        let (v, dv) = p.eval_with_derivative(x);
        if v == 0.0 || dv == 0.0 || !dv.is_finite() {
            break;
        }
        x -= v / dv;
        let val = p.eval(x).abs();
        if !x.is_finite() {
            break;
        }
        if val < best_val {
            best = x;
            best_val = val;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_roots() {
        let r = poly_real_roots(&UniPolyE::new(vec![-1.0, 0.0, 1.0]), DEFAULT_IMAG_TOL).unwrap();
        assert!((r[0] + 1.0).abs() < 1e-14 && (r[1] - 1.0).abs() < 1e-14);
        let r = poly_real_roots(&UniPolyE::new(vec![-1.0, 2.0]), DEFAULT_IMAG_TOL).unwrap();
        assert_eq!(r, vec![0.5]);
    }

    #[test]
    fn triple_zero() {
        let r = poly_real_roots(&UniPolyE::new(vec![0.0, 0.0, 0.0, 1.0]), DEFAULT_IMAG_TOL).unwrap();
        assert_eq!(r, vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn errors() {
        assert_eq!(poly_real_roots(&UniPolyE::new(vec![0.0, 0.0]), 1e-8), Err(AlgebraError::ZeroPolynomial));
        assert_eq!(poly_real_roots(&UniPolyE::new(vec![3.0]), 1e-8), Err(AlgebraError::DegreeZero));
    }

    #[test]
    fn complex_pair_is_dropped() {
        // (E² + 1)(E − 2)
        let r = poly_real_roots(&UniPolyE::new(vec![-2.0, 1.0, -2.0, 1.0]), DEFAULT_IMAG_TOL).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0] - 2.0).abs() < 1e-13);
    }
}
