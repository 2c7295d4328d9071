//! Three operations for the static page in `www/`.

use num_complex::Complex64;
use wasm_bindgen::prelude::*;
use zetalab::bundles::{Convention, EllipticData};
use zetalab::fields::WeierstrassCurve;
use zetalab::lattice::{rr_check, xi_q, Lattice};
use zetalab::nonabelian::ell_na_zeta;

/// `xi(1/2 + it)` at `steps + 1` evenly spaced `t`; real on the critical line.
pub fn xi_line_values(t0: f64, t1: f64, steps: usize) -> Result<Vec<f64>, String> {
    if !(t0.is_finite() && t1.is_finite()) || steps == 0 || steps > 2000 {
        return Err("need finite t0, t1 and 1 <= steps <= 2000".into());
    }
    (0..=steps)
        .map(|k| {
            let t = t0 + (t1 - t0) * k as f64 / steps as f64;
            xi_q(Complex64::new(0.5, t), 1e-12).map(|v| v.re).map_err(|e| e.to_string())
        })
        .collect()
}

/// `[h0, h1, deg, residual, tail_bound]` for a basis (`gram = false`) or Gram matrix.
pub fn theta_rr_values(rows: &str, gram: bool) -> Result<Vec<f64>, String> {
    let l = if gram { Lattice::parse_gram(rows) } else { Lattice::parse_basis(rows) }.map_err(|e| e.to_string())?;
    let r = rr_check(&l, 1e-10).map_err(|e| e.to_string())?;
    Ok(vec![r.h0, r.h1, r.deg, r.residual, r.tail_bound])
}

/// Reciprocal roots of the rank-`r` numerator of `y^2 = x^3 + ax + b` over `F_p`,
/// as `[re0, im0, re1, im1, ...]`.
pub fn na_roots_values(rank: u32, p: u64, a: i64, b: i64, convention: &str) -> Result<Vec<f64>, String> {
    let conv: Convention = convention.parse().map_err(|e: zetalab::Error| e.to_string())?;
    let c = WeierstrassCurve::over_prime(p, a, b).map_err(|e| e.to_string())?;
    let e = EllipticData::from_curve(&c).map_err(|e| e.to_string())?;
    let z = ell_na_zeta(rank, &e, conv).map_err(|e| e.to_string())?;
    let roots = z.reciprocal_roots().map_err(|e| e.to_string())?;
    Ok(roots.iter().flat_map(|w| [w.re, w.im]).collect())
}

#[wasm_bindgen]
pub fn xi_line(t0: f64, t1: f64, steps: usize) -> Result<Vec<f64>, JsError> {
    xi_line_values(t0, t1, steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn theta_rr(rows: &str, gram: bool) -> Result<Vec<f64>, JsError> {
    theta_rr_values(rows, gram).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn na_roots(rank: u32, p: u32, a: i32, b: i32, convention: &str) -> Result<Vec<f64>, JsError> {
    na_roots_values(rank, p.into(), a.into(), b.into(), convention).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_sign_change() {
        let v = xi_line_values(14.0, 14.3, 3).unwrap();
        assert!(v[0] * v[3] < 0.0);
        assert!(xi_line_values(0.0, 1.0, 0).is_err());
    }

    #[test]
    fn rr_and_roots() {
        let r = theta_rr_values("2 0 / 0 1/2", false).unwrap();
        assert!(r[3].abs() < 1e-9);
        // normalized split numerator 1 + 4t + 6t^2 + 20t^3 + 25t^4
        let w = na_roots_values(2, 5, 1, 1, "split").unwrap();
        assert_eq!(w.len(), 8);
        let roots: Vec<Complex64> = w.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect();
        let sum: Complex64 = roots.iter().sum();
        let prod: Complex64 = roots.iter().product();
        assert!((sum + 4.0).norm() < 1e-9 && (prod - 25.0).norm() < 1e-8, "{sum} {prod}");
        assert_eq!(na_roots_values(3, 7, 1, 1, "descent").unwrap().len(), 12);
        assert!(na_roots_values(2, 5, 1, 1, "nope").is_err());
    }
}
