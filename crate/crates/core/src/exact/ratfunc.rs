use std::fmt;

use num_traits::{One, Zero};

use super::{Poly, Rat, Series};
use crate::error::{invalid, Error, Result};

/// `num / den` in lowest terms. The denominator is scaled to constant term 1
/// when it does not vanish at 0, and made monic otherwise.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(invalid!("zero denominator"));
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree().unwrap_or(0) > 0 {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        } else {
            (num, den)
        };
        let c0 = den.coeff(0);
        let norm = if c0.is_zero() { den.lead() } else { c0 };
        if !norm.is_one() {
            let inv = Rat::one() / norm;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn eval(&self, x: &Rat) -> Result<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Domain(format!("pole at {x}")));
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn series(&self, order: usize) -> Result<Series> {
        let inv = Series::from_poly(&self.den, order).inverse()?;
        Ok(&Series::from_poly(&self.num, order) * &inv)
    }

    pub fn add(&self, o: &RatFunc) -> Result<RatFunc> {
        RatFunc::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }

    pub fn mul(&self, o: &RatFunc) -> Result<RatFunc> {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn scale(&self, a: &Rat) -> RatFunc {
        RatFunc { num: self.num.scale(a), den: self.den.clone() }
    }

    /// The same function written in `u = 1/t`.
    pub fn in_reciprocal_variable(&self) -> Result<RatFunc> {
        let n = self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0));
        RatFunc::new(self.num.reversed(n), self.den.reversed(n))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// Recovers `num` from a series known to equal `num / den` with `deg num <= deg_bound`,
/// checking that every coefficient of `S * den` above `deg_bound` vanishes.
pub fn rf_from_series(s: &Series, den: &Poly, deg_bound: usize) -> Result<RatFunc> {
    if s.order() <= deg_bound {
        return Err(invalid!(
            "series of order {} cannot certify a numerator of degree {deg_bound}",
            s.order()
        ));
    }
    let prod = s * &Series::from_poly(den, s.order());
    if let Some(k) = (deg_bound + 1..prod.order()).find(|&k| !prod.coeff(k).is_zero()) {
        return Err(Error::Validation(format!(
            "series times denominator has nonzero coefficient at t^{k}"
        )));
    }
    RatFunc::new(prod.to_poly().truncate(deg_bound + 1), den.clone())
}
