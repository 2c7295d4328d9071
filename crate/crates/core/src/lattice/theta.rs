use num_complex::Complex64;
use std::f64::consts::PI;

use super::{short_vectors, shortest_vector, Lattice};
use crate::error::{invalid, Error, Result};
use crate::exact::to_f64;
use crate::special::{compensated_sum, gauss_legendre, integrate};

#[derive(Clone, Debug, PartialEq)]
pub struct ThetaValue {
    /// `log sum_{v in L} exp(-pi |v|^2)`, zero vector included.
    pub value: f64,
    /// Proven bound on the truncation error of `value`.
    pub tail_bound: f64,
    pub radius: f64,
}

/// `sum_{|v| > R} exp(-pi |v|^2)` is at most
/// `sum_{k >= 0} N(R + (k+1)h) exp(-pi (R + k h)^2)` with the packing count
/// `N(rho) = #{|v| <= rho} <= ((2 rho + l1) / l1)^n`.
fn tail(n: usize, l1: f64, r: f64) -> f64 {
    let h = 0.25;
    let count = |rho: f64| ((2.0 * rho + l1) / l1).powi(n as i32);
    let mut s = 0.0;
    for k in 0.. {
        let a = r + k as f64 * h;
        let term = count(a + h) * (-PI * a * a).exp();
        s += term;
        if term < 1e-300 || (k > 8 && term < s * 1e-17) {
            break;
        }
    }
    s
}

pub fn theta_h0(l: &Lattice, eps: f64) -> Result<ThetaValue> {
    if !(eps > 0.0) {
        return Err(invalid!("tail tolerance must be positive"));
    }
    let n = l.rank();
    let l1 = to_f64(&shortest_vector(l)?.1).sqrt();
    let mut r = 1.0f64;
    while tail(n, l1, r) > eps {
        r += 0.25;
    }
    let tb = tail(n, l1, r);
    let mut terms: Vec<f64> = short_vectors(l, r * r, false)?
        .into_iter()
        .map(|(_, nv)| (-PI * to_f64(&nv)).exp())
        .collect();
    // small terms first
    terms.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let s = compensated_sum(terms);
    Ok(ThetaValue { value: s.ln_1p(), tail_bound: tb, radius: r })
}

/// `h^1(L) = h^0(L^dual)`
pub fn theta_h1(l: &Lattice, eps: f64) -> Result<ThetaValue> {
    theta_h0(&l.dual(), eps)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RrReport {
    pub h0: f64,
    pub h1: f64,
    pub deg: f64,
    /// `h0 - h1 - deg`
    pub residual: f64,
    pub tail_bound: f64,
    pub ok: bool,
}

/// Smallest tolerance accepted: below this rounding dominates the theta tails.
pub const RR_TOL_FLOOR: f64 = 1e-13;

pub fn rr_check(l: &Lattice, tol: f64) -> Result<RrReport> {
    if !(tol >= RR_TOL_FLOOR) {
        return Err(invalid!("tolerance {tol} is below the certified floor {RR_TOL_FLOOR}"));
    }
    let eps = tol / 8.0;
    let a = theta_h0(l, eps)?;
    let b = theta_h1(l, eps)?;
    let deg = l.deg();
    let residual = a.value - b.value - deg;
    Ok(RrReport {
        h0: a.value,
        h1: b.value,
        deg,
        residual,
        tail_bound: a.tail_bound + b.tail_bound,
        ok: residual.abs() <= tol,
    })
}

/// `psi(x) = sum_{n >= 1} exp(-pi n^2 x)` for `x >= 1`.
fn psi(x: f64) -> f64 {
    let mut s = 0.0;
    for n in 1.. {
        let t = (-PI * (n * n) as f64 * x).exp();
        s += t;
        if t < 1e-40 {
            break;
        }
    }
    s
}

/// `int_X^inf x^c exp(-pi x) dx <= X^c exp(-pi X) / (pi - max(c, 0)/X)`, and `psi <= 1.01 exp(-pi x)`.
fn xi_tail(s: Complex64, x: f64) -> f64 {
    let piece = |c: f64| {
        let rate = PI - c.max(0.0) / x;
        if rate <= 0.0 {
            f64::INFINITY
        } else {
            1.01 * x.powf(c) * (-PI * x).exp() / rate
        }
    };
    piece(s.re / 2.0 - 1.0) + piece(-s.re / 2.0 - 0.5)
}

/// `xi_Q(s) = pi^{-s/2} Gamma(s/2) zeta(s)` from
/// `-1/s - 1/(1-s) + int_1^inf (x^{s/2} + x^{(1-s)/2}) psi(x) dx/x`.
pub fn xi_q(s: Complex64, eps: f64) -> Result<Complex64> {
    if !(eps > 0.0) {
        return Err(invalid!("tolerance must be positive"));
    }
    if s.norm() < 1e-6 || (s - 1.0).norm() < 1e-6 {
        return Err(Error::Domain(format!("s = {s} is at a pole of xi")));
    }
    let mut x_max = 2.0;
    while xi_tail(s, x_max) > eps / 2.0 {
        x_max += 0.5;
        if x_max > 1e4 {
            return Err(Error::Numerical("theta integral tail does not close".into()));
        }
    }
    let f = |x: f64| {
        let lx = x.ln();
        let a = (s * 0.5 - 1.0) * lx;
        let b = (-s * 0.5 - 0.5) * lx;
        (a.exp() + b.exp()) * psi(x)
    };
    let rule = gauss_legendre(20);
    let width = x_max - 1.0;
    let mut panels = ((width * (1.0 + s.im.abs() / 8.0)).ceil() as usize).max(4);
    let mut prev = integrate(f, 1.0, x_max, &rule, panels);
    loop {
        panels *= 2;
        let cur = integrate(f, 1.0, x_max, &rule, panels);
        let diff = (cur - prev).norm();
        prev = cur;
        if diff <= eps / 4.0 {
            break;
        }
        if panels > 1 << 16 {
            return Err(Error::Numerical(format!("quadrature did not settle (last change {diff:e})")));
        }
    }
    Ok(-s.inv() - (1.0 - s).inv() + prev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ri};

    #[test]
    fn worked_t4() {
        let l = Lattice::lambda_t(ri(4)).unwrap();
        let a = theta_h0(&l, 1e-14).unwrap();
        let direct = (1.0 + 2.0 * (-4.0 * PI).exp() + 2.0 * (-16.0 * PI).exp()).ln();
        assert!((a.value - direct).abs() < 1e-16);
        assert!((a.value - 6.9745e-6).abs() < 1e-9);
        let r = rr_check(&l, 1e-10).unwrap();
        assert!((r.h1 - 0.6931542).abs() < 1e-7, "{}", r.h1);
        assert!(r.ok, "{r:?}");
    }

    #[test]
    fn z1_value() {
        let z = Lattice::standard(1).unwrap();
        let a = theta_h0(&z, 1e-14).unwrap();
        assert!((a.value - 0.08290).abs() < 1e-5);
        assert!(rr_check(&z, 1e-12).unwrap().residual.abs() < 1e-15);
        assert!(rr_check(&z, 1e-20).is_err());
        let small = Lattice::lambda_t(rat(1, 10)).unwrap();
        assert!(rr_check(&small, 1e-10).unwrap().ok);
    }

    #[test]
    fn xi_symmetry() {
        let s = Complex64::new(0.3, 2.0);
        let d = xi_q(s, 1e-13).unwrap() - xi_q(1.0 - s, 1e-13).unwrap();
        assert!(d.norm() < 1e-10);
        assert!((xi_q(Complex64::new(0.5, 0.0), 1e-13).unwrap().re + 3.97690).abs() < 1e-4);
        assert!(xi_q(Complex64::new(1.0, 0.0), 1e-10).is_err());
    }
}
