//! Complex roots of real polynomials: companion-matrix eigenvalues, then a few
//! Newton steps on the original polynomial.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Roots of `sum c_i z^i` (ascending coefficients), sorted by argument then modulus.
pub fn poly_roots(c: &[f64]) -> Result<Vec<Complex64>> {
    let mut c = c.to_vec();
    while c.last() == Some(&0.0) {
        c.pop();
    }
    if c.is_empty() {
        return Err(invalid!("zero polynomial has no finite root set"));
    }
    let n = c.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = c[n];
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / lead;
    }
    // the unshifted QR can stall on companion matrices of even polynomials
    let ev: Vec<Complex64> = match m.try_schur(f64::EPSILON, 10_000) {
        Some(s) => s.complex_eigenvalues().iter().copied().collect(),
        None => durand_kerner(&c)?,
    };
    let mut roots: Vec<Complex64> = ev
        .iter()
        .map(|&z0| {
            let mut z = z0;
            for _ in 0..4 {
                let (p, dp) = horner(&c, z);
                if dp.norm() == 0.0 {
                    break;
                }
                let step = p / dp;
                let nz = z - step;
                if !(nz.re.is_finite() && nz.im.is_finite()) {
                    break;
                }
                if horner(&c, nz).0.norm() > p.norm() {
                    break;
                }
                z = nz;
            }
            z
        })
        .collect();
    roots.sort_by(|a, b| {
        a.arg()
            .partial_cmp(&b.arg())
            .unwrap()
            .then(a.norm().partial_cmp(&b.norm()).unwrap())
    });
    Ok(roots)
}

/// Simultaneous Weierstrass iteration from points on a circle of the Cauchy radius.
fn durand_kerner(c: &[f64]) -> Result<Vec<Complex64>> {
    let n = c.len() - 1;
    let lead = c[n];
    let radius = 1.0 + c[..n].iter().map(|a| (a / lead).abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    for _ in 0..5000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut den = Complex64::new(lead, 0.0);
            for j in 0..n {
                if j != i {
                    den *= z[i] - z[j];
                }
            }
            let step = horner(c, z[i]).0 / den;
            z[i] -= step;
            moved = moved.max(step.norm() / z[i].norm().max(1.0));
        }
        if moved < 1e-15 {
            return Ok(z);
        }
    }
    Err(Error::Numerical("root iteration did not converge".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic() {
        // (z - 2)(z^2 + 1)
        let r = poly_roots(&[-2.0, 1.0, -2.0, 1.0]).unwrap();
        assert_eq!(r.len(), 3);
        for want in [Complex64::new(2.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)] {
            assert!(r.iter().any(|z| (z - want).norm() < 1e-12));
        }
    }

    #[test]
    fn even_quartic() {
        // 1 + 7 z^2 + 49 z^4: every root has modulus 7^{-1/2}
        let r = poly_roots(&[1.0, 0.0, 7.0, 0.0, 49.0]).unwrap();
        assert_eq!(r.len(), 4);
        for z in r {
            assert!((z.norm_sqr() * 7.0 - 1.0).abs() < 1e-12);
        }
    }
}
