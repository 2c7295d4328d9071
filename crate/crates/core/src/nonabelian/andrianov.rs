use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::exact::{ri, Rat};

/// Polynomial in `p` and `t`, keyed by `(deg_p, deg_t)`.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct BiPoly(BTreeMap<(u32, u32), Rat>);

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly(BTreeMap::new())
    }

    pub fn term(c: Rat, dp: u32, dt: u32) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert((dp, dt), c);
        }
        BiPoly(m)
    }

    pub fn constant(c: i64) -> Self {
        Self::term(ri(c), 0, 0)
    }

    pub fn p() -> Self {
        Self::term(ri(1), 1, 0)
    }

    pub fn t() -> Self {
        Self::term(ri(1), 0, 1)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(BiPoly::constant(1), |acc, _| &acc * self)
    }

    pub fn eval(&self, p: f64, t: f64) -> f64 {
        self.0
            .iter()
            .map(|(&(i, j), c)| crate::exact::to_f64(c) * p.powi(i as i32) * t.powi(j as i32))
            .sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.0.iter()
    }

    fn insert_add(&mut self, k: (u32, u32), c: Rat) {
        let e = self.0.entry(k).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&k);
        }
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let mut r = self.clone();
        for (&k, c) in &o.0 {
            r.insert_add(k, c.clone());
        }
        r
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly(self.0.iter().map(|(&k, c)| (k, -c)).collect())
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        self + &(-o)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        let mut r = BiPoly::zero();
        for (&(a, b), c) in &self.0 {
            for (&(x, y), d) in &o.0 {
                r.insert_add((a + x, b + y), c * d);
            }
        }
        r
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|(&(i, j), c)| format!("{c} p^{i} t^{j}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Spinor numerator
/// `1 - l t + (l^2 - l2 - p^{2k-4}) t^2 - l p^{2k-3} t^3 + p^{4k-6} t^4`
/// with `l = lambda(p)` and `l2 = lambda(p^2)` given as polynomials in `p`.
pub fn spinor_numerator(k: u32, lambda: &BiPoly, lambda2: &BiPoly) -> BiPoly {
    assert!(k >= 2, "weight k >= 2 keeps the exponents nonnegative");
    let p = BiPoly::p();
    let t = BiPoly::t();
    let c2 = &(&(lambda * lambda) - lambda2) - &p.pow(2 * k - 4);
    let c3 = &(-lambda) * &p.pow(2 * k - 3);
    let mut s = BiPoly::constant(1);
    s = &s - &(lambda * &t);
    s = &s + &(&c2 * &t.pow(2));
    s = &s + &(&c3 * &t.pow(3));
    &s + &(&p.pow(4 * k - 6) * &t.pow(4))
}

/// `1 + (p-1)t + (2p-4)t^2 + (p^2-p)t^3 + p^2 t^4`, the split rank-2 local numerator.
pub fn rank2_numerator_bipoly() -> BiPoly {
    let p = BiPoly::p();
    let t = BiPoly::t();
    let c = BiPoly::constant;
    let mut s = c(1);
    s = &s + &(&(&p - &c(1)) * &t);
    s = &s + &(&(&(&c(2) * &p) - &c(4)) * &t.pow(2));
    s = &s + &(&(&p.pow(2) - &p) * &t.pow(3));
    &s + &(&p.pow(2) * &t.pow(4))
}

/// The two substitutions of `andrianov_formal_match`: `lambda(p) = 1 - p`,
/// `lambda(p^2) = p^2 - 4p + 4`.
pub fn andrianov_substitution() -> (BiPoly, BiPoly) {
    let p = BiPoly::p();
    let c = BiPoly::constant;
    (&c(1) - &p, &(&p.pow(2) - &(&c(4) * &p)) + &c(4))
}

/// Symbolic identity between the weight-2 spinor numerator under the substitution
/// and the split rank-2 numerator.
pub fn andrianov_formal_match() -> bool {
    let (l, l2) = andrianov_substitution();
    spinor_numerator(2, &l, &l2) == rank2_numerator_bipoly()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formal_match() {
        assert!(andrianov_formal_match());
        let (_, l2) = andrianov_substitution();
        assert_ne!(spinor_numerator(2, &BiPoly::zero(), &l2), rank2_numerator_bipoly());
    }

    #[test]
    fn numeric_at_seven() {
        let (l, l2) = andrianov_substitution();
        let s = spinor_numerator(2, &l, &l2);
        let n = rank2_numerator_bipoly();
        for t in [0.013, -0.2, 0.37, 1.5, -2.25] {
            let a = s.eval(7.0, t);
            let b = 1.0 + 6.0 * t + 10.0 * t * t + 42.0 * t.powi(3) + 49.0 * t.powi(4);
            assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0));
            assert!((n.eval(7.0, t) - b).abs() <= 1e-12 * b.abs().max(1.0));
        }
    }
}
