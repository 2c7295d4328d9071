use std::f64::consts::PI;

use num_complex::Complex64;

use super::micro::{NFTestFn, QuadSpec};
use super::zeros::ZeroTable;
use crate::error::{invalid, Error, Result};
use crate::special::{compensated_sum, digamma, gauss_legendre, integrate};

pub const PRIME_BOUND_MAX: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct WeilReport {
    /// `sum_{i <= K} 2 Re f^hat(1/2 + i gamma_i)`
    pub zero_sum: f64,
    /// `f^hat(0) + f^hat(1)`
    pub poles: f64,
    /// `sum_{p^m <= P} log p (f(p^m) + p^{-m} f(p^{-m}))`
    pub prime_sum: f64,
    /// `(1/2pi) int Re f^hat(1/2 + it) (Re psi(1/4 + it/2) - log pi) dt`
    pub archimedean: f64,
    /// `zero_sum - (poles - prime_sum + archimedean)`
    pub residual: f64,
}

fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

fn prime_sum(f: &NFTestFn, bound: u64) -> f64 {
    let mut terms = Vec::new();
    for p in primes_up_to(bound) {
        let lp = (p as f64).ln();
        let mut pm = p;
        let mut m = 1.0;
        loop {
            let u = m * lp;
            terms.push(lp * (f.eval_log(u) + (-u).exp() * f.eval_log(-u)));
            match pm.checked_mul(p) {
                Some(next) if next <= bound => pm = next,
                _ => break,
            }
            m += 1.0;
        }
    }
    compensated_sum(terms)
}

/// The digamma-kernel integral over `t >= 0`, doubled; the integrand is even in `t`.
fn archimedean(f: &NFTestFn, quad: &QuadSpec) -> Result<f64> {
    if f.amplitude == 0.0 {
        return Ok(0.0);
    }
    // |f^hat(1/2 + it)| <= f^hat(1/2) exp(-sigma^2 t^2 / 2); beyond T the kernel's log growth is negligible
    let t_max = (2.0 * 45.0f64).sqrt() / f.sigma;
    let lpi = PI.ln();
    let g = |t: f64| {
        let k = digamma(Complex64::new(0.25, 0.5 * t)).re - lpi;
        Complex64::new(f.hat(Complex64::new(0.5, t)).re * k, 0.0)
    };
    let rule = gauss_legendre(20);
    let mut panels = ((t_max * (1.0 + f.mu.abs()) / PI).ceil() as usize).max(4);
    let mut prev = integrate(g, 0.0, t_max, &rule, panels).re;
    for _ in 0..quad.max_doublings {
        panels *= 2;
        let cur = integrate(g, 0.0, t_max, &rule, panels).re;
        let done = (cur - prev).abs() <= quad.rel_tol * cur.abs().max(1.0);
        prev = cur;
        if done {
            return Ok(prev / PI);
        }
    }
    Err(Error::Numerical(format!("archimedean integral did not settle at {panels} panels")))
}

pub fn riemann_weil_residual(
    f: &NFTestFn,
    zeros: &ZeroTable,
    k: usize,
    prime_bound: u64,
    quad: &QuadSpec,
) -> Result<WeilReport> {
    if prime_bound > PRIME_BOUND_MAX {
        return Err(Error::Resource(format!("prime bound {prime_bound} exceeds {PRIME_BOUND_MAX}")));
    }
    if !(quad.rel_tol > 0.0) {
        return Err(invalid!("quadrature target must be positive"));
    }
    let gammas = zeros.first(k)?;
    let zero_sum = compensated_sum(gammas.iter().map(|&g| 2.0 * f.hat(Complex64::new(0.5, g)).re));
    let poles = f.hat_re(0.0) + f.hat_re(1.0);
    let primes = prime_sum(f, prime_bound);
    let arch = archimedean(f, quad)?;
    Ok(WeilReport {
        zero_sum,
        poles,
        prime_sum: primes,
        archimedean: arch,
        residual: zero_sum - (poles - primes + arch),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> ZeroTable {
        ZeroTable::parse(include_str!("../../data/zeros100.txt")).unwrap()
    }

    #[test]
    fn zero_function() {
        let r = riemann_weil_residual(&NFTestFn::zero(), &table(), 100, 100, &QuadSpec::default()).unwrap();
        assert_eq!(r.residual, 0.0);
    }

    #[test]
    fn narrow_bump() {
        let f = NFTestFn::new(0.1, 0.05).unwrap();
        let r = riemann_weil_residual(&f, &table(), 100, 10_000, &QuadSpec::default()).unwrap();
        assert!(r.residual.abs() < 1e-3, "{r:?}");
    }

    #[test]
    fn primes() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert!(riemann_weil_residual(&NFTestFn::zero(), &table(), 1, 2_000_000, &QuadSpec::default()).is_err());
    }
}
