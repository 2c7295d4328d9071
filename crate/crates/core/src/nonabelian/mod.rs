//! Rank `r` non-abelian zeta functions
//! `Z_r(t) = sum_{V ss, rank r, deg >= 0} (q^{h0(V)} - 1)/#Aut(V) t^{deg V}
//!        = P(t) / ((1 - t^r)(1 - q^r t^r))`
//! of elliptic curves, with their structural checks.

mod allbundles;
mod andrianov;
mod euler;

pub use allbundles::{allbundles_rank2, AllBundlesReport, PositivePart};
pub use andrianov::{andrianov_formal_match, andrianov_substitution, rank2_numerator_bipoly, spinor_numerator, BiPoly};
pub use euler::{global_na_zeta_partial, local_factor, EulerReport, GlobalCurve, PRIME_BOUND_MAX};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::bundles::{invariant, Convention, EllipticData, InvariantKind};
use crate::error::{invalid, Error, Result};
use crate::exact::{
    decimate, fe_transform_check, power_sums_from_poly, ri, rpow, Poly, Rat, RatFunc, Series,
};
use crate::roots::poly_roots;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NAZeta {
    pub q: u64,
    pub g: usize,
    pub r: u32,
    pub convention: Convention,
    /// Numerator of degree `2rg`; `P(0) = gamma_r(0)`.
    pub p: Poly,
}

impl NAZeta {
    pub fn q_rat(&self) -> Rat {
        ri(self.q as i64)
    }

    pub fn weight(&self) -> usize {
        self.r as usize * self.g
    }

    pub fn denominator(&self) -> Poly {
        let r = self.r as usize;
        &Poly::one_minus(Rat::one(), r) * &Poly::one_minus(rpow(&self.q_rat(), r as i64), r)
    }

    pub fn rational_function(&self) -> Result<RatFunc> {
        RatFunc::new(self.p.clone(), self.denominator())
    }

    /// `P / P(0)`
    pub fn normalized_numerator(&self) -> Poly {
        let c0 = self.p.coeff(0);
        self.p.scale(&(Rat::one() / c0))
    }

    pub fn series(&self, order: usize) -> Result<Series> {
        self.rational_function()?.series(order)
    }

    /// Reciprocal roots `w_i` with `P = P(0) prod (1 - w_i t)`.
    pub fn reciprocal_roots(&self) -> Result<Vec<Complex64>> {
        let n = 2 * self.weight();
        poly_roots(&self.normalized_numerator().reversed(n).to_f64())
    }
}

/// Numerator of `gamma_0 + sum_{d>=1} (q^d - 1) beta(d mod r) t^d` over
/// `(1 - t^r)(1 - q^r t^r)`, with `betas[j] = beta(j)`.
pub fn assemble_numerator(q: &Rat, r: usize, betas: &[Rat], gamma0: &Rat) -> Poly {
    let qr = rpow(q, r as i64);
    let den = &Poly::one_minus(Rat::one(), r) * &Poly::one_minus(qr.clone(), r);
    let mut p = den.scale(gamma0);
    for j in 1..=r {
        let beta = &betas[j % r];
        let qj = rpow(q, j as i64);
        // q^j t^j (1 - t^r) - t^j (1 - q^r t^r)
        let term = &(&Poly::monomial(qj.clone(), j) - &Poly::monomial(qj, j + r))
            - &(&Poly::monomial(Rat::one(), j) - &Poly::monomial(qr.clone(), j + r));
        p = &p + &term.scale(beta);
    }
    p
}

/// Rank `r <= 3` non-abelian zeta of an elliptic curve.
pub fn ell_na_zeta(r: u32, e: &EllipticData, conv: Convention) -> Result<NAZeta> {
    if !(1..=3).contains(&r) {
        return Err(Error::Unsupported(format!("rank {r} not in 1..=3")));
    }
    let betas: Vec<Rat> = (0..r as i64)
        .map(|j| invariant(InvariantKind::Beta, r, j, e, conv))
        .collect::<Result<_>>()?;
    let gamma0 = invariant(InvariantKind::Gamma, r, 0, e, conv)?;
    let p = assemble_numerator(&e.q_rat(), r as usize, &betas, &gamma0);
    Ok(NAZeta { q: e.q, g: 1, r, convention: conv, p })
}

/// `N_r(m) = r(1 + q^m) - p_m` when `r | m` and `-p_m` otherwise, with `p_m` the
/// power sums of the reciprocal roots of `P / P(0)`.
pub fn na_counts(z: &NAZeta, m: usize) -> Result<Rat> {
    if m == 0 {
        return Err(invalid!("m must be positive"));
    }
    let pm = power_sums_from_poly(&z.normalized_numerator(), m)?.pop().unwrap();
    if m % z.r as usize == 0 {
        Ok(ri(z.r as i64) * (Rat::one() + rpow(&z.q_rat(), m as i64)) - pm)
    } else {
        Ok(-pm)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NaProperties {
    pub degree_ok: bool,
    pub functional_equation: bool,
    /// Both denominator factors survive reduction to lowest terms.
    pub poles_ok: bool,
    /// `max_i min_j |w_i w_j - q| / q` over reciprocal roots.
    pub root_pairing_residual: f64,
    pub root_pairing_ok: bool,
    /// `N_r(m)` against `m [t^m] log(Z / P(0))` for `m <= 6`.
    pub counts_match_log_derivative: bool,
}

impl NaProperties {
    pub fn all_ok(&self) -> bool {
        self.degree_ok
            && self.functional_equation
            && self.poles_ok
            && self.root_pairing_ok
            && self.counts_match_log_derivative
    }
}

pub fn na_properties_check(z: &NAZeta, tol: f64) -> Result<NaProperties> {
    let w = z.weight();
    let degree_ok = z.p.degree() == Some(2 * w);
    let functional_equation = fe_transform_check(&z.p, &z.q_rat(), w);
    let rf = z.rational_function()?;
    let poles_ok = rf.den().degree() == Some(2 * z.r as usize);
    let roots = z.reciprocal_roots()?;
    let q = z.q as f64;
    let root_pairing_residual = roots
        .iter()
        .map(|a| {
            roots
                .iter()
                .map(|b| (a * b - q).norm() / q)
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    let mmax = 6;
    let log = z.series(mmax + 1)?.scale(&(Rat::one() / z.p.coeff(0))).log()?;
    let counts_match_log_derivative = (1..=mmax)
        .map(|m| Ok(log.coeff(m) * ri(m as i64) == na_counts(z, m)?))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    Ok(NaProperties {
        degree_ok,
        functional_equation,
        poles_ok,
        root_pairing_residual,
        root_pairing_ok: root_pairing_residual <= tol,
        counts_match_log_derivative,
    })
}

/// `prod_{i=1}^{a} Z(zeta_a^i t) = P(0)^a exp(sum_m N(ma) T^m / m)`, `T = t^a`,
/// checked through `a * decimate(log(Z / P(0)), a)` against the counts.
pub fn roots_of_unity_product_check(z: &NAZeta, a: usize, order: usize) -> Result<bool> {
    if a == 0 {
        return Err(invalid!("a must be positive"));
    }
    let log = z.series(a * order)?.scale(&(Rat::one() / z.p.coeff(0))).log()?;
    let lhs = decimate(&log, a)?.scale(&ri(a as i64));
    let mut rhs = vec![Rat::zero(); order];
    for (m, slot) in rhs.iter_mut().enumerate().skip(1) {
        *slot = na_counts(z, m * a)? / ri(m as i64);
    }
    Ok(lhs.truncate(order) == Series::new(rhs))
}

/// Numerator coefficients `a(0..=2rg)` of `Z_r` for a curve of genus `g >= 2`
/// from `alpha(0..=r(g-1))` and `beta(0..r)`.
///
/// Degrees above `r(g-1)` are reached through `alpha(d) = q^{d-r(g-1)} alpha(2r(g-1)-d)`,
/// negative degrees through `alpha(d) = beta(d mod r)`; coefficients above `rg` follow
/// from the functional equation.
pub fn ugly_formula_coeffs(alpha: &[Rat], beta: &[Rat], q: u64, r: u32, g: u32) -> Result<Poly> {
    if g < 2 {
        return Err(invalid!("the general-genus formula needs g >= 2, got {g}"));
    }
    let (r, g) = (r as i64, g as i64);
    if r < 1 {
        return Err(invalid!("rank must be positive"));
    }
    if alpha.len() != (r * (g - 1) + 1) as usize || beta.len() != r as usize {
        return Err(invalid!(
            "need alpha(0..={}) and beta(0..{r}), got {} and {}",
            r * (g - 1),
            alpha.len(),
            beta.len()
        ));
    }
    if (1..r).any(|j| beta[j as usize] != beta[(r - j) as usize]) {
        return Err(invalid!("beta must satisfy beta(d) = beta(-d) (dual bundles)"));
    }
    let qq = ri(q as i64);
    let qr = rpow(&qq, r);
    let top = r * (g - 1);
    let b = |d: i64| beta[d.rem_euclid(r) as usize].clone();
    let al = |d: i64| -> Rat {
        if d < 0 {
            b(d)
        } else if d <= top {
            alpha[d as usize].clone()
        } else if d <= 2 * top {
            rpow(&qq, d - top) * alpha[(2 * top - d) as usize].clone()
        } else {
            rpow(&qq, d - top) * b(d)
        }
    };
    let qr1 = &qr + Rat::one();
    let mut a = vec![Rat::zero(); (2 * r * g + 1) as usize];
    for i in 0..=r * g {
        a[i as usize] = if i <= r - 1 {
            al(i) - b(i)
        } else if i <= 2 * r - 1 {
            al(i) - &qr1 * al(i - r) + &qr * b(i - r)
        } else if i <= top - 1 {
            al(i) - &qr1 * al(i - r) + &qr * al(i - 2 * r)
        } else if i == top {
            -(&qr1 * al(r * (g - 2))) + &qr * al(r * (g - 3)) + al(top)
        } else if i <= r * g - 1 {
            al(i) - &qr1 * al(i - r) + al(i - 2 * r) * &qr
        } else {
            ri(2) * &qr * al(r * (g - 2)) - &qr1 * al(top)
        };
    }
    for i in r * g + 1..=2 * r * g {
        a[i as usize] = &a[(2 * r * g - i) as usize] * rpow(&qq, i - r * g);
    }
    Ok(Poly::new(a))
}
