//! Randomized properties of the polynomial layer: resultant
//! multiplicativity, the closed-form branch families against interpolated
//! discriminants, and root-finder symmetry.

use braidmono::family::{
    bp_discriminant_family, bp_surface, discriminant_in_x, proportionality_error,
};
use braidmono::poly::{roots, sylvester_resultant, Poly, RootConfig};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rand_poly(rng: &mut ChaCha8Rng, deg: usize) -> Poly {
    let coeffs = (0..=deg)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    Poly::from_coeffs(coeffs)
}

#[test]
fn resultant_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let (df, dg, dh) =
            (rng.gen_range(1..=4), rng.gen_range(1..=4), rng.gen_range(1..=4));
        let f = rand_poly(&mut rng, df);
        let g = rand_poly(&mut rng, dg);
        let h = rand_poly(&mut rng, dh);
        let lhs = sylvester_resultant(&f.mul(&g), &h).unwrap();
        let rhs =
            sylvester_resultant(&f, &h).unwrap() * sylvester_resultant(&g, &h).unwrap();
        let scale = lhs.norm().max(rhs.norm()).max(1e-12);
        assert!(
            (lhs - rhs).norm() / scale < 1e-8,
            "res(fg,h) != res(f,h)res(g,h): {lhs} vs {rhs}"
        );
    }
}

#[test]
fn bp_family_agrees_with_interpolated_discriminant() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for n in 1..=3usize {
        for k in 1..=3usize {
            let fam = bp_discriminant_family(n, k);
            // the proportionality constant depends only on n, so fit it once
            let u0 = Complex64::new(1.1, 0.3);
            let v0 = Complex64::new(-0.2, 0.7);
            let disc0 = discriminant_in_x(&bp_surface(n, k, u0, v0), n * k, false).unwrap();
            let fam0 = fam.at(&[u0, v0]);
            let pivot = (0..=n * k)
                .max_by(|&a, &b| fam0.coeff(a).norm().total_cmp(&fam0.coeff(b).norm()))
                .unwrap();
            let constant = disc0.coeff(pivot) / fam0.coeff(pivot);
            for _ in 0..50 {
                let u = Complex64::new(rng.gen_range(-1.2..1.2), rng.gen_range(-1.2..1.2));
                let v = Complex64::new(rng.gen_range(-1.2..1.2), rng.gen_range(-1.2..1.2));
                let disc = discriminant_in_x(&bp_surface(n, k, u, v), n * k, false).unwrap();
                let scaled = fam.at(&[u, v]).scale(constant);
                let err = proportionality_error(&disc, &scaled);
                assert!(err < 1e-8, "(n,k)=({n},{k}) at ({u},{v}): error {err:.2e}");
                // the fitted factor must itself be the global one
                let refit = proportionality_error(&disc, &fam.at(&[u, v]));
                assert!(refit < 1e-8);
            }
        }
    }
}

#[test]
fn roots_close_under_conjugation_for_real_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for _ in 0..40 {
        let deg = rng.gen_range(2..=7);
        let coeffs: Vec<f64> = (0..=deg).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let p = Poly::from_real(&coeffs);
        if p.degree().unwrap_or(0) < 2 {
            continue;
        }
        let r = match roots(&p, &RootConfig::default()) {
            Ok(r) => r,
            Err(_) => continue,
        };
        for z in &r.values {
            let conj = z.conj();
            let nearest = r
                .values
                .iter()
                .map(|w| (w - conj).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(nearest < 1e-6, "conjugate of {z} missing");
        }
    }
}
