use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use super::{ri, Poly, Rat};
use crate::error::{invalid, Result};

/// Truncated power series `sum_{k < order} c_k t^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    c: Vec<Rat>,
}

impl Series {
    pub fn new(c: Vec<Rat>) -> Self {
        Series { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Series::new(c.iter().map(|&x| ri(x)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Series::new(vec![Rat::zero(); order])
    }

    pub fn from_poly(p: &Poly, order: usize) -> Self {
        Series::new((0..order).map(|i| p.coeff(i)).collect())
    }

    pub fn order(&self) -> usize {
        self.c.len()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.c.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn truncate(&self, order: usize) -> Series {
        Series::new(self.c.iter().take(order).cloned().collect())
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(self.c.clone())
    }

    pub fn scale(&self, a: &Rat) -> Series {
        Series::new(self.c.iter().map(|x| x * a).collect())
    }

    pub fn inverse(&self) -> Result<Series> {
        let a0 = self.coeff(0);
        if a0.is_zero() {
            return Err(invalid!("series with zero constant term is not invertible"));
        }
        let inv0 = Rat::one() / &a0;
        let n = self.order();
        let mut b: Vec<Rat> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                b.push(inv0.clone());
                continue;
            }
            let mut s = Rat::zero();
            for j in 1..=k {
                if !self.c[j].is_zero() {
                    s += &self.c[j] * &b[k - j];
                }
            }
            b.push(-s * &inv0);
        }
        Ok(Series::new(b))
    }

    /// `log S` for `S(0) = 1`.
    pub fn log(&self) -> Result<Series> {
        if !self.coeff(0).is_one() {
            return Err(invalid!("log needs constant term 1"));
        }
        let n = self.order();
        let mut l = vec![Rat::zero(); n];
        for k in 1..n {
            let mut s = &self.c[k] * ri(k as i64);
            for j in 1..k {
                if !l[j].is_zero() && !self.c[k - j].is_zero() {
                    s -= &l[j] * ri(j as i64) * &self.c[k - j];
                }
            }
            l[k] = s / ri(k as i64);
        }
        Ok(Series::new(l))
    }

    /// `exp S` for `S(0) = 0`.
    pub fn exp(&self) -> Result<Series> {
        if !self.coeff(0).is_zero() {
            return Err(invalid!("exp needs constant term 0"));
        }
        let n = self.order();
        let mut e = vec![Rat::zero(); n];
        if n == 0 {
            return Ok(Series::new(e));
        }
        e[0] = Rat::one();
        for k in 1..n {
            let mut s = Rat::zero();
            for j in 1..=k {
                if !self.c[j].is_zero() {
                    s += ri(j as i64) * &self.c[j] * &e[k - j];
                }
            }
            e[k] = s / ri(k as i64);
        }
        Ok(Series::new(e))
    }
}

/// Keeps every `n`-th coefficient: `[c_0, c_n, c_2n, ...]`, of order `ceil(order / n)`.
pub fn decimate(s: &Series, n: usize) -> Result<Series> {
    if n == 0 {
        return Err(invalid!("decimation step must be positive"));
    }
    Ok(Series::new(s.c.iter().step_by(n).cloned().collect()))
}

impl Add for &Series {
    type Output = Series;
    fn add(self, o: &Series) -> Series {
        let n = self.order().min(o.order());
        Series::new((0..n).map(|i| &self.c[i] + &o.c[i]).collect())
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, o: &Series) -> Series {
        let n = self.order().min(o.order());
        Series::new((0..n).map(|i| &self.c[i] - &o.c[i]).collect())
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, o: &Series) -> Series {
        let n = self.order().min(o.order());
        let mut out = vec![Rat::zero(); n];
        for (i, a) in self.c.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().take(n - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        Series::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_log_roundtrip() {
        let s = Series::from_ints(&[1, 3, 7, -2, 5, 0, 1]);
        assert_eq!(s.log().unwrap().exp().unwrap(), s);
    }

    #[test]
    fn decimate_keeps_multiples() {
        let s = Series::from_ints(&[1, 2, 3, 4, 5]);
        assert_eq!(decimate(&s, 2).unwrap(), Series::from_ints(&[1, 3, 5]));
        assert_eq!(decimate(&s, 1).unwrap(), s);
    }

    #[test]
    fn inverse_of_geometric() {
        let s = Series::from_ints(&[1, -2, 0, 0, 0]);
        assert_eq!(s.inverse().unwrap(), Series::from_ints(&[1, 2, 4, 8, 16]));
    }
}
