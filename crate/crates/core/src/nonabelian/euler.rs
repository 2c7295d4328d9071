use num_complex::Complex64;

use super::ell_na_zeta;
use crate::bundles::{Convention, EllipticData};
use crate::error::{invalid, Error, Result};
use crate::exact::Poly;
use crate::fields::{count_points, is_prime, WeierstrassCurve};
use crate::special::compensated_sum_c64;

pub const PRIME_BOUND_MAX: u64 = 100_000;

/// `y^2 = x^3 + A x + B` over `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalCurve {
    pub a: i64,
    pub b: i64,
}

impl GlobalCurve {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a.unsigned_abs() > 1 << 20 || b.unsigned_abs() > 1 << 30 {
            return Err(invalid!("coefficients too large"));
        }
        let c = GlobalCurve { a, b };
        if c.discriminant_core() == 0 {
            return Err(invalid!("4A^3 + 27B^2 = 0: singular curve"));
        }
        Ok(c)
    }

    /// `4A^3 + 27B^2`
    pub fn discriminant_core(&self) -> i128 {
        let (a, b) = (self.a as i128, self.b as i128);
        4 * a * a * a + 27 * b * b
    }

    /// Primes dividing `6(4A^3 + 27B^2)`, which are excluded from the product.
    pub fn is_bad(&self, p: u64) -> bool {
        p == 2 || p == 3 || self.discriminant_core() % p as i128 == 0
    }

    pub fn bad_primes_up_to(&self, bound: u64) -> Vec<u64> {
        (2..=bound).filter(|&p| is_prime(p) && self.is_bad(p)).collect()
    }

    pub fn reduction(&self, p: u64) -> Result<WeierstrassCurve> {
        if self.is_bad(p) {
            return Err(invalid!("{p} is a bad prime"));
        }
        WeierstrassCurve::over_prime(p, self.a, self.b)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EulerReport {
    pub value: Complex64,
    /// Compensated sum of `-log P~_p(p^{-s})` over the good primes.
    pub log_value: Complex64,
    pub good_primes: usize,
    pub bad_primes: Vec<u64>,
    /// Bound on `|log Z - log Z_{<=P}|` from the primes beyond the bound;
    /// infinite when the bound is too small for the estimate to apply.
    pub log_tail_bound: f64,
}

/// `P / P(0)` for the reduction at a good prime.
pub fn local_factor(c: &GlobalCurve, p: u64, r: u32, conv: Convention) -> Result<Poly> {
    let red = c.reduction(p)?;
    let e = if conv == Convention::GaloisDescent && r > 1 {
        EllipticData::from_curve(&red)?
    } else {
        EllipticData::from_counts(p, count_points(&red, 1)?)
    };
    Ok(ell_na_zeta(r, &e, conv)?.normalized_numerator())
}

fn log_factor(c: &GlobalCurve, p: u64, r: u32, s: Complex64, conv: Convention) -> Result<Complex64> {
    let f = local_factor(c, p, r, conv)?;
    let x = Complex64::new(p as f64, 0.0).powc(-s);
    Ok(-f.eval_c64(x).ln())
}

/// `1 + g + (r^2 - r)(g - 1)` at `g = 1`, the same for every rank.
const CONVERGENCE_ABSCISSA: f64 = 2.0;

/// `prod_{good p <= bound} 1 / P~_p(p^{-s})` for the rank `r` non-abelian zeta.
pub fn global_na_zeta_partial(
    c: &GlobalCurve,
    r: u32,
    s: Complex64,
    bound: u64,
    conv: Convention,
) -> Result<EulerReport> {
    if !(1..=2).contains(&r) {
        return Err(Error::Unsupported(format!("global product implemented for r = 1, 2; got {r}")));
    }
    let sigma0 = CONVERGENCE_ABSCISSA;
    if !(s.re > sigma0) {
        return Err(Error::Domain(format!("Re(s) = {} outside Re(s) > {sigma0}", s.re)));
    }
    if bound > PRIME_BOUND_MAX {
        return Err(Error::Resource(format!("prime bound {bound} exceeds {PRIME_BOUND_MAX}")));
    }
    let primes: Vec<u64> = (5..=bound).filter(|&p| is_prime(p) && !c.is_bad(p)).collect();
    let logs = log_terms(c, &primes, r, s, conv)?;
    let log_value = compensated_sum_c64(logs);
    Ok(EulerReport {
        value: log_value.exp(),
        log_value,
        good_primes: primes.len(),
        bad_primes: c.bad_primes_up_to(bound),
        log_tail_bound: tail_bound(r, s.re, bound),
    })
}

#[cfg(feature = "parallel")]
fn log_terms(c: &GlobalCurve, primes: &[u64], r: u32, s: Complex64, conv: Convention) -> Result<Vec<Complex64>> {
    use rayon::prelude::*;
    primes.par_iter().map(|&p| log_factor(c, p, r, s, conv)).collect()
}

#[cfg(not(feature = "parallel"))]
fn log_terms(c: &GlobalCurve, primes: &[u64], r: u32, s: Complex64, conv: Convention) -> Result<Vec<Complex64>> {
    primes.iter().map(|&p| log_factor(c, p, r, s, conv)).collect()
}

/// With `sum_i |a_i| p^{-i sigma} <= K p^{1 - sigma}` and `|log(1 + z)| <= 2|z|` for
/// `|z| <= 1/2`, the primes above `bound` contribute at most
/// `2K int_bound^inf x^{1-sigma} dx = 2K bound^{2-sigma} / (sigma - 2)`.
fn tail_bound(r: u32, sigma: f64, bound: u64) -> f64 {
    let k = if r == 1 { 3.0 } else { 8.0 };
    let p = (bound.max(1)) as f64;
    if k * p.powf(1.0 - sigma) > 0.5 {
        return f64::INFINITY;
    }
    2.0 * k * p.powf(2.0 - sigma) / (sigma - 2.0)
}
