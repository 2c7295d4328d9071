//! Artin zeta functions `Z(t) = P(t) / ((1 - t)(1 - q t))` of curves over `F_q`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};
use crate::exact::{
    decimate, fe_transform_check, is_integer, poly_from_power_sums, power_sums_from_poly, ri,
    rpow, Poly, Rat, RatFunc, Series,
};
use crate::fields::{count_points, WeierstrassCurve};
use crate::roots::poly_roots;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaCurve {
    q: u64,
    g: usize,
    p: Poly,
}

impl ZetaCurve {
    /// Checks degree, `P(0) = 1`, integrality and the functional equation.
    pub fn new(q: u64, g: usize, p: Poly) -> Result<Self> {
        if q < 2 {
            return Err(invalid!("q = {q} is not a field size"));
        }
        if g == 0 {
            return Err(invalid!("genus must be positive"));
        }
        if p.degree() != Some(2 * g) {
            return Err(Error::Validation(format!("numerator degree {:?} != 2g = {}", p.degree(), 2 * g)));
        }
        if !p.coeff(0).is_one() {
            return Err(Error::Validation("P(0) != 1".into()));
        }
        if !p.coeffs().iter().all(is_integer) {
            return Err(Error::Validation("numerator has non-integral coefficients".into()));
        }
        if !fe_transform_check(&p, &ri(q as i64), g) {
            return Err(Error::Validation("numerator violates the functional equation".into()));
        }
        Ok(ZetaCurve { q, g, p })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn q_rat(&self) -> Rat {
        ri(self.q as i64)
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn numerator(&self) -> &Poly {
        &self.p
    }

    pub fn denominator(&self) -> Poly {
        &Poly::one_minus(Rat::one(), 1) * &Poly::one_minus(self.q_rat(), 1)
    }

    pub fn rational_function(&self) -> RatFunc {
        RatFunc::new(self.p.clone(), self.denominator()).expect("nonzero denominator")
    }

    pub fn series(&self, order: usize) -> Series {
        self.rational_function().series(order).expect("invertible denominator")
    }

    /// `Z(t)` at a rational point other than the poles `1` and `1/q`.
    pub fn eval(&self, t: &Rat) -> Result<Rat> {
        self.rational_function().eval(t)
    }

    /// `p_m = sum_i w_i^m` for `m = 1..=m_max`.
    pub fn power_sums(&self, m_max: usize) -> Vec<Rat> {
        power_sums_from_poly(&self.p, m_max).expect("P(0) = 1")
    }

    /// Reciprocal roots `w_i` (roots of `t^{2g} P(1/t)`).
    pub fn reciprocal_roots(&self) -> Result<Vec<Complex64>> {
        poly_roots(&self.p.reversed(2 * self.g).to_f64())
    }

    /// `N_1`
    pub fn n1(&self) -> u64 {
        nm(self, 1).expect("valid zeta").to_u64().expect("small count")
    }
}

/// `Z` from the first `g` (or more) point counts `N_m = #C(F_{q^m})`.
/// Counts beyond the `g`-th are checked against the reconstructed `Z`.
pub fn artin_zeta_from_counts(q: u64, g: usize, counts: &[u64]) -> Result<ZetaCurve> {
    if counts.len() < g {
        return Err(invalid!("genus {g} needs {g} point counts, got {}", counts.len()));
    }
    let qr = ri(q as i64);
    let sums: Vec<Rat> = (1..=g)
        .map(|m| rpow(&qr, m as i64) + Rat::one() - ri(counts[m - 1] as i64))
        .collect();
    let half = poly_from_power_sums(&sums, g)?;
    let mut c: Vec<Rat> = half.coeffs().to_vec();
    c.resize(g + 1, Rat::zero());
    for i in (0..g).rev() {
        c.push(&c[i] * rpow(&qr, (g - i) as i64));
    }
    let p = Poly::new(c);
    if !p.coeffs().iter().all(is_integer) {
        return Err(Error::Validation("point counts give non-integral zeta coefficients".into()));
    }
    if g == 1 {
        let a = -p.coeff(1);
        if &a * &a > ri(4 * q as i64) {
            return Err(Error::Validation(format!("N_1 = {} violates the Hasse bound", counts[0])));
        }
    }
    let z = ZetaCurve::new(q, g, p)?;
    for (m, &n) in counts.iter().enumerate().skip(g) {
        if nm(&z, m + 1)? != BigInt::from(n) {
            return Err(Error::Validation(format!("N_{} = {n} inconsistent with N_1..N_g", m + 1)));
        }
    }
    Ok(z)
}

/// Zeta function of an elliptic curve over its field of definition.
pub fn zeta_of_curve(c: &WeierstrassCurve) -> Result<ZetaCurve> {
    artin_zeta_from_counts(c.q(), 1, &[count_points(c, 1)?])
}

/// `N_m = q^m + 1 - p_m`
pub fn nm(z: &ZetaCurve, m: usize) -> Result<BigInt> {
    if m == 0 {
        return Err(invalid!("m must be positive"));
    }
    let pm = &z.power_sums(m)[m - 1];
    let v = rpow(&z.q_rat(), m as i64) + Rat::one() - pm;
    if !is_integer(&v) || v.is_negative() {
        return Err(Error::Validation(format!("N_{m} = {v} is not a count")));
    }
    Ok(v.to_integer())
}

/// Zeta of the same curve over `F_{q^n}`: reciprocal roots `w_i^n`.
pub fn base_extend(z: &ZetaCurve, n: usize) -> Result<ZetaCurve> {
    if n == 0 {
        return Err(invalid!("extension degree must be positive"));
    }
    let deg = 2 * z.g;
    let all = z.power_sums(deg * n);
    let sums: Vec<Rat> = (1..=deg).map(|k| all[k * n - 1].clone()).collect();
    let qn = z
        .q
        .checked_pow(n as u32)
        .ok_or_else(|| Error::Resource(format!("q^{n} overflows")))?;
    ZetaCurve::new(qn, z.g, poly_from_power_sums(&sums, deg)?)
}

/// `prod_{zeta^n = 1} Z_C(zeta t) = Z_{C/F_{q^n}}(t^n)`, tested in `T = t^n` as
/// `exp(n * decimate(log Z_C, n)) = Z_{C/F_{q^n}}(T)` up to `T^{order-1}`.
pub fn reciprocity_check(z: &ZetaCurve, n: usize, order: usize) -> Result<bool> {
    let ext = base_extend(z, n)?;
    let log_z = z.series(order * n).log()?;
    let lhs = decimate(&log_z, n)?.scale(&ri(n as i64)).exp()?;
    Ok(lhs.truncate(order) == ext.series(order))
}

/// Riemann hypothesis: `|w_i|^2 = q` for all reciprocal roots.
/// Exact for `g = 1` (`a^2 <= 4q`), numerical with tolerance `tol` otherwise.
pub fn rh_check(z: &ZetaCurve, tol: f64) -> Result<bool> {
    if z.g == 1 {
        let a = -z.p.coeff(1);
        return Ok(&a * &a <= ri(4 * z.q as i64));
    }
    let q = z.q as f64;
    Ok(z
        .reciprocal_roots()?
        .iter()
        .all(|w| (w.norm_sqr() - q).abs() <= tol * q))
}

pub fn fe_check_zeta(z: &ZetaCurve) -> bool {
    fe_transform_check(&z.p, &z.q_rat(), z.g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_curve() {
        let z = artin_zeta_from_counts(5, 1, &[9]).unwrap();
        assert_eq!(z.numerator(), &Poly::from_ints(&[1, 3, 5]));
        assert_eq!(nm(&z, 2).unwrap(), BigInt::from(27));
        assert_eq!(nm(&z, 3).unwrap(), BigInt::from(108));
        let e = base_extend(&z, 2).unwrap();
        assert_eq!(e.q(), 25);
        assert_eq!(e.numerator(), &Poly::from_ints(&[1, 1, 25]));
    }

    #[test]
    fn hasse_violation_rejected() {
        assert!(artin_zeta_from_counts(5, 1, &[12]).is_err());
        assert!(artin_zeta_from_counts(5, 1, &[9, 26]).is_err());
    }

    #[test]
    fn rh_on_fabricated_numerator() {
        let bad = ZetaCurve::new(5, 1, Poly::from_ints(&[1, 5, 5])).unwrap();
        assert!(!rh_check(&bad, 1e-9).unwrap());
    }
}
