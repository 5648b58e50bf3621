//! Complex univariate polynomial arithmetic, Sylvester resultants, and an
//! Aberth-Ehrlich simultaneous root finder.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::fmt;

/// A univariate polynomial over C, coefficients lowest degree first.
/// Trailing (exact) zeros are trimmed; the empty vector is the zero
/// polynomial.
#[derive(Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Self {
        let mut coeffs = coeffs;
        while let Some(last) = coeffs.last() {
            if last.re == 0.0 && last.im == 0.0 {
                coeffs.pop();
            } else {
                break;
            }
        }
        Poly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// `c * x^k`.
    pub fn monomial(k: usize, c: Complex64) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * Complex64::new(k as f64, 0.0))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs =
            vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (a, &ca) in self.coeffs.iter().enumerate() {
            for (b, &cb) in other.coeffs.iter().enumerate() {
                coeffs[a + b] += ca * cb;
            }
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: Complex64) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divides by the leading coefficient. Zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = Complex64::new(1.0, 0.0) / self.leading();
        self.scale(inv)
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// JSON form `{"coeffs": [[re, im], ...]}` lowest degree first.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "coeffs": self.coeffs.iter().map(|c| vec![c.re, c.im]).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let bad = || Error::InvalidSpec { what: "polynomial", text: value.to_string() };
        let arr = value.get("coeffs").and_then(|v| v.as_array()).ok_or_else(bad)?;
        let coeffs = arr
            .iter()
            .map(|pair| {
                if let Some(x) = pair.as_f64() {
                    return Ok(Complex64::new(x, 0.0));
                }
                let pair = pair.as_array().ok_or_else(bad)?;
                if pair.len() != 2 {
                    return Err(bad());
                }
                let re = pair[0].as_f64().ok_or_else(bad)?;
                let im = pair[1].as_f64().ok_or_else(bad)?;
                Ok(Complex64::new(re, im))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(coeffs))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() > 0.0)
            .map(|(k, c)| format!("({:.4}{:+.4}i)x^{}", c.re, c.im, k))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Resultant of `f` and `g` as the determinant of their Sylvester matrix.
/// Zero iff the polynomials share a root (up to floating precision).
pub fn sylvester_resultant(f: &Poly, g: &Poly) -> Result<Complex64> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::BothZero);
    }
    if f.is_zero() || g.is_zero() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let n = f.degree().unwrap();
    let m = g.degree().unwrap();
    if n == 0 {
        return Ok(f.coeff(0).powu(m as u32));
    }
    if m == 0 {
        return Ok(g.coeff(0).powu(n as u32));
    }
    let size = n + m;
    let zero = Complex64::new(0.0, 0.0);
    let mut mat = vec![vec![zero; size]; size];
    // m rows of f's coefficients (highest first), then n rows of g's
    for row in 0..m {
        for k in 0..=n {
            mat[row][row + k] = f.coeff(n - k);
        }
    }
    for row in 0..n {
        for k in 0..=m {
            mat[m + row][row + k] = g.coeff(m - k);
        }
    }
    Ok(determinant(mat))
}

/// LU determinant with partial pivoting.
fn determinant(mut mat: Vec<Vec<Complex64>>) -> Complex64 {
    let n = mat.len();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let mut pivot = col;
        let mut best = mat[col][col].norm();
        for row in col + 1..n {
            let mag = mat[row][col].norm();
            if mag > best {
                best = mag;
                pivot = row;
            }
        }
        if best == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            mat.swap(pivot, col);
            det = -det;
        }
        det *= mat[col][col];
        for row in col + 1..n {
            let factor = mat[row][col] / mat[col][col];
            for k in col..n {
                let sub = factor * mat[col][k];
                mat[row][k] -= sub;
            }
        }
    }
    det
}

/// Configuration for the root finder.
#[derive(Clone, Copy, Debug)]
pub struct RootConfig {
    /// Relative residual tolerance.
    pub tol: f64,
    /// Pairwise distance under which roots are flagged as (near-)multiple.
    pub multiplicity_threshold: f64,
    pub max_iterations: usize,
}

impl Default for RootConfig {
    fn default() -> Self {
        RootConfig { tol: 1e-9, multiplicity_threshold: 1e-7, max_iterations: 600 }
    }
}

/// Roots of a polynomial with convergence diagnostics.
#[derive(Clone, Debug)]
pub struct Roots {
    pub values: Vec<Complex64>,
    /// Some pair of roots is closer than the multiplicity threshold.
    pub near_multiple: bool,
    pub max_residual: f64,
    pub iterations: usize,
}

/// All roots of `p` by Aberth-Ehrlich simultaneous iteration.
pub fn roots(p: &Poly, cfg: &RootConfig) -> Result<Roots> {
    let n = p.degree().unwrap_or(0);
    assert!(n >= 1, "roots requires degree >= 1");
    let guesses = initial_guesses(p);
    roots_from(p, &guesses, cfg)
}

/// Aberth-Ehrlich iteration warm-started from the given guesses (one per
/// root). Used by path tracking so roots keep their indices between steps.
pub fn roots_from(p: &Poly, guesses: &[Complex64], cfg: &RootConfig) -> Result<Roots> {
    let n = p.degree().unwrap_or(0);
    assert!(n >= 1 && guesses.len() == n, "need one guess per root");
    let dp = p.derivative();
    let mut z: Vec<Complex64> = guesses.to_vec();
    let mut iterations = 0;
    let scale = p.max_coeff_norm().max(f64::MIN_POSITIVE);
    for iter in 0..cfg.max_iterations {
        iterations = iter + 1;
        let mut max_step = 0.0f64;
        for i in 0..n {
            let pv = p.eval(z[i]);
            if pv.norm() == 0.0 {
                continue;
            }
            let dv = dp.eval(z[i]);
            let newton = if dv.norm() > 0.0 {
                pv / dv
            } else {
                // nudge off an exact critical point
                Complex64::new(1e-12, 1e-12)
            };
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 0.0 {
                        s += Complex64::new(1.0, 0.0) / d;
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * s;
            let w = if denom.norm() > 1e-300 { newton / denom } else { newton };
            z[i] -= w;
            let rel = w.norm() / (1.0 + z[i].norm());
            if rel > max_step {
                max_step = rel;
            }
        }
        if max_step < cfg.tol * 0.01 {
            break;
        }
    }
    let mut max_residual = 0.0f64;
    for &zi in &z {
        // backward-error style residual: |p(z)| against the coefficient scale
        let mag: f64 = p
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| c.norm() * zi.norm().powi(k as i32))
            .sum::<f64>()
            .max(scale);
        let res = p.eval(zi).norm() / mag;
        if res > max_residual {
            max_residual = res;
        }
    }
    if max_residual > cfg.tol.max(1e-12) * 1e3 {
        return Err(Error::RootsDidNotConverge { iterations });
    }
    let near_multiple = min_pairwise_distance(&z)
        .map(|d| d < cfg.multiplicity_threshold)
        .unwrap_or(false);
    Ok(Roots { values: z, near_multiple, max_residual, iterations })
}

fn initial_guesses(p: &Poly) -> Vec<Complex64> {
    let n = p.degree().unwrap();
    let lead = p.leading().norm();
    // Cauchy-style radius
    let radius = 1.0
        + p.coeffs()
            .iter()
            .take(n)
            .map(|c| c.norm() / lead)
            .fold(0.0, f64::max);
    let r = radius.clamp(1e-3, 1e6);
    (0..n)
        .map(|i| {
            let angle = 2.0 * std::f64::consts::PI * (i as f64) / (n as f64) + 0.41;
            Complex64::from_polar(r * 0.8, angle)
        })
        .collect()
}

pub fn min_pairwise_distance(points: &[Complex64]) -> Option<f64> {
    let mut best: Option<f64> = None;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = (points[i] - points[j]).norm();
            best = Some(best.map_or(d, |b: f64| b.min(d)));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn arithmetic_and_eval() {
        let p = Poly::from_real(&[1.0, 0.0, 1.0]); // 1 + x^2
        let q = Poly::from_real(&[-1.0, 1.0]); // x - 1
        assert_eq!(p.mul(&q).degree(), Some(3));
        assert_eq!(p.eval(c(2.0, 0.0)), c(5.0, 0.0));
        assert_eq!(p.derivative(), Poly::from_real(&[0.0, 2.0]));
        assert!(p.sub(&p).is_zero());
        assert_eq!(Poly::from_real(&[1.0, 0.0, 0.0]).degree(), Some(0));
    }

    #[test]
    fn resultant_linear_pair() {
        // res(y - a, y - b) = a - b
        let a = c(2.0, 1.0);
        let b = c(-0.5, 3.0);
        let f = Poly::from_coeffs(vec![-a, c(1.0, 0.0)]);
        let g = Poly::from_coeffs(vec![-b, c(1.0, 0.0)]);
        let r = sylvester_resultant(&f, &g).unwrap();
        assert!((r - (a - b)).norm() < 1e-12);
    }

    #[test]
    fn resultant_shared_root_and_derivative() {
        // res(y^2 - x0, 2y) = -4 x0
        let x0 = c(1.5, -2.0);
        let f = Poly::from_coeffs(vec![-x0, c(0.0, 0.0), c(1.0, 0.0)]);
        let g = Poly::from_coeffs(vec![c(0.0, 0.0), c(2.0, 0.0)]);
        let r = sylvester_resultant(&f, &g).unwrap();
        assert!((r - c(-4.0, 0.0) * x0).norm() < 1e-12);
        // res(f, f) = 0
        let rr = sylvester_resultant(&f, &f).unwrap();
        assert!(rr.norm() < 1e-12);
        assert!(matches!(
            sylvester_resultant(&Poly::zero(), &Poly::zero()),
            Err(Error::BothZero)
        ));
    }

    #[test]
    fn resultant_multiplicative() {
        let f = Poly::from_real(&[1.0, 2.0, 1.0]);
        let g = Poly::from_real(&[-2.0, 0.0, 1.0]);
        let h = Poly::from_real(&[1.0, 1.0]);
        let lhs = sylvester_resultant(&f.mul(&g), &h).unwrap();
        let rhs = sylvester_resultant(&f, &h).unwrap() * sylvester_resultant(&g, &h).unwrap();
        assert!((lhs - rhs).norm() / rhs.norm().max(1.0) < 1e-10);
    }

    #[test]
    fn roots_of_simple_polynomials() {
        let p = Poly::from_real(&[-1.0, 0.0, 1.0]); // x^2 - 1
        let r = roots(&p, &RootConfig::default()).unwrap();
        let mut vals: Vec<f64> = r.values.iter().map(|z| z.re).collect();
        vals.sort_by(f64::total_cmp);
        assert!((vals[0] + 1.0).abs() < 1e-9 && (vals[1] - 1.0).abs() < 1e-9);
        assert!(!r.near_multiple);

        // x^4 - 1: fourth roots of unity
        let p = Poly::from_real(&[-1.0, 0.0, 0.0, 0.0, 1.0]);
        let r = roots(&p, &RootConfig::default()).unwrap();
        for z in &r.values {
            assert!((z.norm() - 1.0).abs() < 1e-9);
            assert!(p.eval(*z).norm() < 1e-9);
        }

        // (x + 1)^2 flags a multiple root
        let p = Poly::from_real(&[1.0, 2.0, 1.0]);
        let r = roots(&p, &RootConfig::default()).unwrap();
        assert!(r.near_multiple);
    }

    #[test]
    fn real_coefficients_give_conjugate_closed_roots() {
        let p = Poly::from_real(&[5.0, -1.0, 2.0, 0.5, 1.0]);
        let r = roots(&p, &RootConfig::default()).unwrap();
        for z in &r.values {
            let conj = z.conj();
            let nearest = r
                .values
                .iter()
                .map(|w| (w - conj).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(nearest < 1e-7, "conjugate of {z} missing (distance {nearest})");
        }
    }

    #[test]
    fn json_roundtrip() {
        let p = Poly::from_coeffs(vec![c(1.0, -2.0), c(0.0, 0.0), c(3.5, 0.125)]);
        let q = Poly::from_json(&p.to_json()).unwrap();
        assert_eq!(p, q);
    }
}
