//! Exact arithmetic over `Q`: rationals, dense polynomials, rational functions and
//! truncated power series, plus Newton-identity conversions between power sums
//! and polynomials with constant term one.

mod newton;
mod poly;
mod ratfunc;
mod series;

pub use newton::{
    fe_transform_check, poly_from_power_sums, power_sums_from_poly, series_exp_from_power_sums,
};
pub use poly::Poly;
pub use ratfunc::{rf_from_series, RatFunc};
pub use series::{decimate, Series};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn ri(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rbig(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

/// `q^e` for a possibly negative exponent.
pub fn rpow(q: &Rat, e: i64) -> Rat {
    if e >= 0 {
        num_traits::pow(q.clone(), e as usize)
    } else {
        Rat::one() / num_traits::pow(q.clone(), (-e) as usize)
    }
}

pub fn to_f64(x: &Rat) -> f64 {
    if let Some(v) = x.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // numerator or denominator overflow f64: scale through bit lengths
    let n = x.numer();
    let d = x.denom();
    let shift = n.bits() as i64 - d.bits() as i64;
    let scaled = if shift > 0 {
        x / Rat::from_integer(BigInt::one() << shift as usize)
    } else {
        x * Rat::from_integer(BigInt::one() << (-shift) as usize)
    };
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
}

pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

/// Parses `"p/q"`, `"n"` or a finite decimal such as `"-0.25"` exactly.
pub fn parse_rat(s: &str) -> crate::Result<Rat> {
    let s = s.trim();
    let bad = || crate::error::invalid!("cannot parse rational `{s}`");
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(n, d));
    }
    let (mant, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    let digits = format!("{ip}{fp}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let mut v = Rat::from_integer(digits.parse::<BigInt>().map_err(|_| bad())?);
    v = v * rpow(&ri(10), exp - fp.len() as i64);
    Ok(if neg { -v } else { v })
}

/// `num/den` rendering used by every report.
pub fn fmt_rat(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn abs(x: &Rat) -> Rat {
    x.abs()
}
