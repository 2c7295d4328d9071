use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{ri, rpow, to_f64, Rat};

/// Dense univariate polynomial over `Q`, coefficients in ascending degree,
/// trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    c: Vec<Rat>,
}

impl Poly {
    pub fn new(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| ri(x)).collect())
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { c: vec![Rat::one()] }
    }

    pub fn constant(a: Rat) -> Self {
        Poly::new(vec![a])
    }

    pub fn monomial(a: Rat, k: usize) -> Self {
        let mut c = vec![Rat::zero(); k + 1];
        c[k] = a;
        Poly::new(c)
    }

    /// `1 - a t^k`
    pub fn one_minus(a: Rat, k: usize) -> Self {
        &Poly::one() - &Poly::monomial(a, k)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.c.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn lead(&self) -> Rat {
        self.c.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.c.iter().rev().fold(Rat::zero(), |acc, a| acc * x + a)
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        self.c
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + to_f64(a))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.c.iter().map(to_f64).collect()
    }

    pub fn scale(&self, a: &Rat) -> Poly {
        Poly::new(self.c.iter().map(|x| x * a).collect())
    }

    /// `P(a t)`
    pub fn subs_scale(&self, a: &Rat) -> Poly {
        let mut p = Rat::one();
        let mut out = Vec::with_capacity(self.c.len());
        for x in &self.c {
            out.push(x * &p);
            p *= a;
        }
        Poly::new(out)
    }

    /// `P(t^k)`
    pub fn subs_power(&self, k: usize) -> Poly {
        assert!(k >= 1);
        if self.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); (self.c.len() - 1) * k + 1];
        for (i, x) in self.c.iter().enumerate() {
            out[i * k] = x.clone();
        }
        Poly::new(out)
    }

    /// `t^n P(1/t)`; requires `n >= deg P`.
    pub fn reversed(&self, n: usize) -> Poly {
        assert!(self.degree().map_or(true, |d| d <= n));
        let mut out = vec![Rat::zero(); n + 1];
        for (i, x) in self.c.iter().enumerate() {
            out[n - i] = x.clone();
        }
        Poly::new(out)
    }

    pub fn truncate(&self, n: usize) -> Poly {
        Poly::new(self.c.iter().take(n).cloned().collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, x)| x * ri(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut r = Poly::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.lead();
        let mut r = self.c.clone();
        let nq = self.c.len().saturating_sub(dd);
        let mut q = vec![Rat::zero(); nq];
        for k in (0..nq).rev() {
            let a = &r[k + dd] / &lead;
            if !a.is_zero() {
                for (j, dj) in d.c.iter().enumerate() {
                    r[k + j] -= &a * dj;
                }
            }
            q[k] = a;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let l = self.lead();
        self.scale(&(Rat::one() / l))
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Numerator of `q^k t^{2k} P(1/(q t))`, the image of `P` under the
    /// functional-equation involution for weight `k`.
    pub fn fe_image(&self, q: &Rat, k: usize) -> Poly {
        let n = 2 * k;
        let mut out = vec![Rat::zero(); n + 1];
        for (i, a) in self.c.iter().enumerate() {
            if i <= n {
                out[n - i] = a * rpow(q, k as i64 - i as i64);
            }
        }
        Poly::new(out)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{a}")?,
                1 => write!(f, "({a})t")?,
                _ => write!(f, "({a})t^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.c.iter().map(|x| -x).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly { (&self).$m(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn div_rem_roundtrip() {
        let a = Poly::from_ints(&[3, 0, -2, 5, 1]);
        let b = Poly::from_ints(&[1, 1, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_of_products() {
        let f = Poly::from_ints(&[1, -1]);
        let a = &f * &Poly::from_ints(&[1, 2]);
        let b = &f * &Poly::from_ints(&[4, 0, 1]);
        assert_eq!(a.gcd(&b), Poly::from_ints(&[-1, 1]));
    }

    #[test]
    fn fe_image_of_curve_numerator_is_itself() {
        let p = Poly::from_ints(&[1, 3, 5]);
        assert_eq!(p.fe_image(&ri(5), 1), p);
    }
}
