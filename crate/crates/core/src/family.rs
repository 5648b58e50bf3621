//! Bivariate polynomials, discriminants in one variable, and the parametric
//! discriminant families whose branch points the tracker follows.

use crate::error::{Error, Result};
use crate::poly::{roots, sylvester_resultant, Poly, RootConfig};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::Arc;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A polynomial in x and y, stored as y-coefficients that are polynomials
/// in x: `f(x, y) = sum_j y_coeffs[j](x) * y^j`.
#[derive(Clone, Debug)]
pub struct Bivariate {
    y_coeffs: Vec<Poly>,
}

impl Bivariate {
    pub fn new(y_coeffs: Vec<Poly>) -> Self {
        let mut y_coeffs = y_coeffs;
        while y_coeffs.last().is_some_and(|p| p.is_zero()) {
            y_coeffs.pop();
        }
        Bivariate { y_coeffs }
    }

    pub fn y_degree(&self) -> usize {
        self.y_coeffs.len().saturating_sub(1)
    }

    /// The fiber polynomial y -> f(x0, y).
    pub fn eval_at_x(&self, x0: Complex64) -> Poly {
        Poly::from_coeffs(self.y_coeffs.iter().map(|p| p.eval(x0)).collect())
    }

    pub fn d_dy(&self) -> Bivariate {
        let coeffs = self
            .y_coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, p)| p.scale(c(j as f64, 0.0)))
            .collect();
        Bivariate::new(coeffs)
    }

    /// `y^{n+1} - (n+1) p(x) y + n q(x)`, the shape whose y-discriminant is
    /// proportional to `p^{n+1} - q^n`.
    pub fn unfolding_shape(n: usize, p: &Poly, q: &Poly) -> Bivariate {
        let mut coeffs = vec![Poly::zero(); n + 2];
        coeffs[0] = q.scale(c(n as f64, 0.0));
        coeffs[1] = p.scale(c(-((n + 1) as f64), 0.0));
        coeffs[n + 1] = Poly::one();
        Bivariate::new(coeffs)
    }
}

/// Coefficients of `res_y(f, d_y f)` as a polynomial in x, recovered by
/// evaluating the resultant at scaled roots of unity and interpolating.
///
/// `bound` is an upper bound for the x-degree of the result; an extra check
/// node detects when it was too small. With `normalize_monic` the result is
/// divided by its leading coefficient.
pub fn discriminant_in_x(f: &Bivariate, bound: usize, normalize_monic: bool) -> Result<Poly> {
    let radius = 1.37;
    let n_nodes = bound + 1;
    let fy = f.d_dy();
    let y_deg = f.y_degree();
    let mut values = Vec::with_capacity(n_nodes);
    for t in 0..n_nodes {
        let x = Complex64::from_polar(radius, 2.0 * PI * (t as f64) / (n_nodes as f64));
        let fiber = f.eval_at_x(x);
        if fiber.degree() != Some(y_deg) {
            return Err(Error::LeadingCoeffVanished { node: t });
        }
        values.push(sylvester_resultant(&fiber, &fy.eval_at_x(x))?);
    }
    // inverse DFT: values[t] = sum_j coeff_j radius^j w^{jt}
    let mut coeffs = Vec::with_capacity(n_nodes);
    for j in 0..n_nodes {
        let mut acc = c(0.0, 0.0);
        for (t, v) in values.iter().enumerate() {
            let angle = -2.0 * PI * (j as f64) * (t as f64) / (n_nodes as f64);
            acc += v * Complex64::from_polar(1.0, angle);
        }
        acc /= c(n_nodes as f64, 0.0);
        acc /= c(radius.powi(j as i32), 0.0);
        coeffs.push(acc);
    }
    // drop interpolation noise relative to the dominant coefficient
    let scale = coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let cleaned = coeffs
        .iter()
        .map(|&z| if z.norm() < scale * 1e-11 { c(0.0, 0.0) } else { z })
        .collect();
    let poly = Poly::from_coeffs(cleaned);
    // residual at a node off the interpolation grid
    let x_check = Complex64::from_polar(radius * 1.083, 0.7342);
    let fiber = f.eval_at_x(x_check);
    if fiber.degree() != Some(y_deg) {
        return Err(Error::LeadingCoeffVanished { node: n_nodes });
    }
    let direct = sylvester_resultant(&fiber, &fy.eval_at_x(x_check))?;
    let residual = (poly.eval(x_check) - direct).norm()
        / direct.norm().max(scale * x_check.norm().powi(bound as i32)).max(1e-300);
    if residual > 1e-6 {
        return Err(Error::BoundTooSmall { residual });
    }
    Ok(if normalize_monic { poly.monic() } else { poly })
}

/// A monic-in-x polynomial family over a complex parameter vector.
#[derive(Clone)]
pub struct PolynomialFamily {
    pub name: String,
    /// Number of complex parameters.
    pub arity: usize,
    /// Degree in x away from the degeneracy set.
    pub degree: usize,
    eval: Arc<dyn Fn(&[Complex64]) -> Poly + Send + Sync>,
}

impl PolynomialFamily {
    pub fn new(
        name: impl Into<String>,
        arity: usize,
        degree: usize,
        eval: impl Fn(&[Complex64]) -> Poly + Send + Sync + 'static,
    ) -> Self {
        PolynomialFamily { name: name.into(), arity, degree, eval: Arc::new(eval) }
    }

    pub fn at(&self, params: &[Complex64]) -> Poly {
        assert_eq!(params.len(), self.arity, "parameter arity mismatch");
        (self.eval)(params)
    }

    /// Parses family spec strings: `bp:n=2,k=3` or `plane:d=3`.
    /// `bp-disc:` is accepted as an alias of `bp:`.
    pub fn parse_spec(text: &str) -> Result<PolynomialFamily> {
        Ok(FamilySpec::parse(text)?.0.family())
    }
}

/// Structured form of a family spec string.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Bp { n: usize, k: usize },
    Plane { d: usize },
}

impl FamilySpec {
    /// Parses `bp:n=2,k=3` / `plane:d=3`; a trailing non-`key=value` field
    /// (e.g. `bp:n=1,k=2,u-loop`) is returned as a loop tag.
    pub fn parse(text: &str) -> Result<(FamilySpec, Option<String>)> {
        let bad = || Error::InvalidSpec { what: "family", text: text.to_string() };
        let (head, rest) = text.split_once(':').ok_or_else(bad)?;
        let mut fields = std::collections::BTreeMap::new();
        let mut loop_tag = None;
        for part in rest.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            match part.split_once('=') {
                Some((k, v)) if k.trim().len() == 1 => {
                    let v: usize = v.trim().parse().map_err(|_| bad())?;
                    fields.insert(k.trim().to_string(), v);
                }
                _ => loop_tag = Some(part.to_string()),
            }
        }
        let spec = match head.trim() {
            "bp" | "bp-disc" => {
                let n = *fields.get("n").ok_or_else(bad)?;
                let k = *fields.get("k").ok_or_else(bad)?;
                if n < 1 || k < 1 {
                    return Err(bad());
                }
                FamilySpec::Bp { n, k }
            }
            "plane" | "plane-disc" => {
                let d = *fields.get("d").ok_or_else(bad)?;
                if d < 2 {
                    return Err(bad());
                }
                FamilySpec::Plane { d }
            }
            _ => return Err(bad()),
        };
        Ok((spec, loop_tag))
    }

    pub fn family(&self) -> PolynomialFamily {
        match *self {
            FamilySpec::Bp { n, k } => bp_discriminant_family(n, k),
            FamilySpec::Plane { d } => plane_discriminant_family(d),
        }
    }
}

impl std::fmt::Debug for PolynomialFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PolynomialFamily({}, arity {}, degree {})", self.name, self.arity, self.degree)
    }
}

/// The branch-point family of the unfolding `y^{n+1} - (n+1)uy + n(x^k + v)`:
/// `p_{u,v}(x) = (x^k + v)^n - u^{n+1}`, monic of degree nk in x, with
/// parameters `[u, v]`.
pub fn bp_discriminant_family(n: usize, k: usize) -> PolynomialFamily {
    assert!(n >= 1 && k >= 1);
    PolynomialFamily::new(format!("bp:n={n},k={k}"), 2, n * k, move |params| {
        let (u, v) = (params[0], params[1]);
        let base = Poly::monomial(k, c(1.0, 0.0)).add(&Poly::constant(v));
        base.pow(n as u32)
            .sub(&Poly::constant(u.powu((n + 1) as u32)))
    })
}

/// The unfolding surface `f(x, y) = y^{n+1} - (n+1)uy + n(x^k + v)` at fixed
/// parameters, as a bivariate polynomial.
pub fn bp_surface(n: usize, k: usize, u: Complex64, v: Complex64) -> Bivariate {
    let mut coeffs = vec![Poly::zero(); n + 2];
    coeffs[0] = Poly::monomial(k, c(n as f64, 0.0)).add(&Poly::constant(v * c(n as f64, 0.0)));
    coeffs[1] = Poly::constant(-u * c((n + 1) as f64, 0.0));
    coeffs[n + 1] = Poly::one();
    Bivariate::new(coeffs)
}

/// The fiber of `bp_surface` over x, exposed as a one-parameter family in x.
/// Tracking its y-roots along loops in the x-plane yields covering data.
pub fn bp_fiber_family(n: usize, k: usize, u: Complex64, v: Complex64) -> PolynomialFamily {
    let surface = bp_surface(n, k, u, v);
    PolynomialFamily::new(format!("bp-fiber:n={n},k={k}"), 1, n + 1, move |params| {
        surface.eval_at_x(params[0])
    })
}

/// The plane-curve branch family in the chart z = 1:
/// `p_u(x) = (u x^{d-1} + 1)^d - x^{d(d-1)}`, parameter `[u]`, degree
/// d(d-1) away from `u^d = 1` where the leading coefficient `u^d - 1`
/// vanishes (degeneration at infinity).
pub fn plane_discriminant_family(d: usize) -> PolynomialFamily {
    assert!(d >= 2);
    PolynomialFamily::new(format!("plane:d={d}"), 1, d * (d - 1), move |params| {
        let u = params[0];
        let inner = Poly::monomial(d - 1, u).add(&Poly::one());
        inner
            .pow(d as u32)
            .sub(&Poly::monomial(d * (d - 1), c(1.0, 0.0)))
    })
}

/// True iff the branch points of the bp family at `(u, v)` fail to be
/// pairwise separated by `collision_tol`.
pub fn degeneracy_check_bp(
    n: usize,
    k: usize,
    u: Complex64,
    v: Complex64,
    collision_tol: f64,
) -> Result<bool> {
    let p = bp_discriminant_family(n, k).at(&[u, v]);
    let cfg = RootConfig { multiplicity_threshold: collision_tol, ..RootConfig::default() };
    let r = roots(&p, &cfg)?;
    Ok(r.near_multiple)
}

/// Closed-form degeneracy condition for the bp family:
/// `u^{n+1} = v^n`, together with `u = 0` when n >= 2. For k = 1 the first
/// branch is vacuous (the family only degenerates at u = 0); grid
/// comparisons use this condition as an exclusion band, which stays sound.
pub fn degeneracy_closed_bp(n: usize, u: Complex64, v: Complex64, band: f64) -> bool {
    let lhs = (u.powu((n + 1) as u32) - v.powu(n as u32)).norm();
    if lhs < band {
        return true;
    }
    n >= 2 && u.norm() < band
}

/// Degeneracy report for the plane-curve family at `u`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneDegeneracy {
    pub degenerate: bool,
    /// The x-degree dropped below d(d-1): branch points escaped to infinity.
    pub at_infinity: bool,
}

pub fn degeneracy_check_plane(d: usize, u: Complex64, collision_tol: f64) -> Result<PlaneDegeneracy> {
    let fam = plane_discriminant_family(d);
    let p = fam.at(&[u]);
    // the leading coefficient u^d - 1 vanishes on the degeneracy locus;
    // treat a relative near-vanishing as the degree drop it approximates
    let lead_small = p.coeff(fam.degree).norm() < collision_tol * p.max_coeff_norm();
    if p.degree() != Some(fam.degree) || lead_small {
        return Ok(PlaneDegeneracy { degenerate: true, at_infinity: true });
    }
    let cfg = RootConfig { multiplicity_threshold: collision_tol, ..RootConfig::default() };
    let r = roots(&p, &cfg)?;
    Ok(PlaneDegeneracy { degenerate: r.near_multiple, at_infinity: false })
}

/// Fits the single constant `c` with `lhs ~ c * rhs` from the largest
/// coefficient of `rhs`, then returns the max relative coefficient error.
pub fn proportionality_error(lhs: &Poly, rhs: &Poly) -> f64 {
    let n = lhs.coeffs().len().max(rhs.coeffs().len());
    let mut pivot = 0usize;
    let mut best = 0.0f64;
    for k in 0..n {
        let mag = rhs.coeff(k).norm();
        if mag > best {
            best = mag;
            pivot = k;
        }
    }
    if best == 0.0 {
        return if lhs.is_zero() { 0.0 } else { f64::INFINITY };
    }
    let factor = lhs.coeff(pivot) / rhs.coeff(pivot);
    let scale = lhs.max_coeff_norm().max(rhs.max_coeff_norm() * factor.norm());
    let mut worst = 0.0f64;
    for k in 0..n {
        let err = (lhs.coeff(k) - rhs.coeff(k) * factor).norm() / scale.max(1e-300);
        worst = worst.max(err);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::min_pairwise_distance;

    #[test]
    fn discriminant_of_simple_shapes() {
        // f = y^2 - 2xy + x: discriminant proportional to x^2 - x
        let f = Bivariate::unfolding_shape(1, &Poly::from_real(&[0.0, 1.0]), &Poly::from_real(&[0.0, 1.0]));
        let disc = discriminant_in_x(&f, 2, true).unwrap();
        let expect = Poly::from_real(&[0.0, -1.0, 1.0]);
        assert!(proportionality_error(&disc, &expect) < 1e-10);

        // f = y^2 - 1: no x dependence, nonzero constant
        let f = Bivariate::new(vec![Poly::from_real(&[-1.0]), Poly::zero(), Poly::one()]);
        let disc = discriminant_in_x(&f, 0, false).unwrap();
        assert_eq!(disc.degree(), Some(0));
        assert!(disc.coeff(0).norm() > 0.1);
    }

    #[test]
    fn bp_family_matches_resultant_at_base() {
        // n = k = 2 at (u, v) = (1, 0): family gives x^4 - 1
        let fam = bp_discriminant_family(2, 2);
        let p = fam.at(&[c(1.0, 0.0), c(0.0, 0.0)]);
        assert!(proportionality_error(&p, &Poly::from_real(&[-1.0, 0.0, 0.0, 0.0, 1.0])) < 1e-12);

        let surface = bp_surface(2, 2, c(1.0, 0.0), c(0.0, 0.0));
        let disc = discriminant_in_x(&surface, 4, true).unwrap();
        assert!(proportionality_error(&disc, &p) < 1e-9);
    }

    #[test]
    fn bp_family_special_values() {
        // (n,k,u,v) = (1,3,0,0) -> x^3
        let p = bp_discriminant_family(1, 3).at(&[c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(proportionality_error(&p, &Poly::from_real(&[0.0, 0.0, 0.0, 1.0])) < 1e-12);
        // (n,k,u,v) = (2,2,0,1) -> (x^2+1)^2
        let p = bp_discriminant_family(2, 2).at(&[c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(proportionality_error(&p, &Poly::from_real(&[1.0, 0.0, 2.0, 0.0, 1.0])) < 1e-12);
    }

    #[test]
    fn plane_family_values() {
        // d=2, u=0 -> 1 - x^2
        let p = plane_discriminant_family(2).at(&[c(0.0, 0.0)]);
        assert!(proportionality_error(&p, &Poly::from_real(&[1.0, 0.0, -1.0])) < 1e-12);
        // d=2, u=1 -> 2x + 1: degree drop flags degeneration at infinity
        let p = plane_discriminant_family(2).at(&[c(1.0, 0.0)]);
        assert_eq!(p.degree(), Some(1));
        let d = degeneracy_check_plane(2, c(1.0, 0.0), 1e-7).unwrap();
        assert!(d.degenerate && d.at_infinity);
        // d=3, u=0 -> 1 - x^6 with six simple roots
        let p = plane_discriminant_family(3).at(&[c(0.0, 0.0)]);
        assert_eq!(p.degree(), Some(6));
        let r = roots(&p, &RootConfig::default()).unwrap();
        assert!(!r.near_multiple);
        assert!(min_pairwise_distance(&r.values).unwrap() > 0.5);
    }

    #[test]
    fn degeneracy_checks_bp() {
        // (n,k) = (2,2), (u,v) = (1,1): on the locus u^3 = v^2
        assert!(degeneracy_check_bp(2, 2, c(1.0, 0.0), c(1.0, 0.0), 1e-6).unwrap());
        // base point (1,0) is never degenerate
        assert!(!degeneracy_check_bp(2, 2, c(1.0, 0.0), c(0.0, 0.0), 1e-6).unwrap());
        assert!(!degeneracy_check_bp(1, 2, c(1.0, 0.0), c(0.0, 0.0), 1e-6).unwrap());
        // u = 0 branch for n >= 2: (x^2 + i)^2
        assert!(degeneracy_check_bp(2, 2, c(0.0, 0.0), c(0.0, 1.0), 1e-6).unwrap());
        // closed conditions agree
        assert!(degeneracy_closed_bp(2, c(1.0, 0.0), c(1.0, 0.0), 1e-9));
        assert!(degeneracy_closed_bp(2, c(0.0, 0.0), c(0.3, 0.4), 1e-9));
        assert!(!degeneracy_closed_bp(1, c(0.0, 0.0), c(0.3, 0.4), 1e-9));
        assert!(!degeneracy_closed_bp(2, c(1.0, 0.0), c(0.0, 0.0), 1e-9));
    }

    #[test]
    fn family_spec_parsing() {
        let f = PolynomialFamily::parse_spec("bp:n=2,k=3").unwrap();
        assert_eq!((f.arity, f.degree), (2, 6));
        let f = PolynomialFamily::parse_spec("bp-disc:n=1,k=2,u-loop").unwrap();
        assert_eq!((f.arity, f.degree), (2, 2));
        let f = PolynomialFamily::parse_spec("plane:d=3").unwrap();
        assert_eq!((f.arity, f.degree), (1, 6));
        assert!(PolynomialFamily::parse_spec("plane:d=1").is_err());
        assert!(PolynomialFamily::parse_spec("nope:z=1").is_err());
    }
}
