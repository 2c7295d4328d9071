use num_traits::{One, Zero};

use crate::bundles::EllipticData;
use crate::error::{Error, Result};
use crate::exact::{rpow, Poly, Rat, RatFunc};

pub const MAX_ORDER: usize = 40;

/// The four families of unstable positive-degree rank-2 bundles `L_1 + L_2`, `d_1 > d_2`:
/// `d_2 > 0`, `d_2 = 0` with `L_2 = O`, `d_2 = 0` with `L_2 != O`, and `d_2 < 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivePart<T> {
    pub i: T,
    pub ii_a: T,
    pub ii_b: T,
    pub iii: T,
}

impl<T> PositivePart<T> {
    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> PositivePart<U> {
        PositivePart { i: f(&self.i), ii_a: f(&self.ii_a), ii_b: f(&self.ii_b), iii: f(&self.iii) }
    }

    pub fn zip_with<U, V>(&self, o: &PositivePart<U>, f: impl Fn(&T, &U) -> V) -> PositivePart<V> {
        PositivePart {
            i: f(&self.i, &o.i),
            ii_a: f(&self.ii_a, &o.ii_a),
            ii_b: f(&self.ii_b, &o.ii_b),
            iii: f(&self.iii, &o.iii),
        }
    }

    pub fn as_array(&self) -> [&T; 4] {
        [&self.i, &self.ii_a, &self.ii_b, &self.iii]
    }
}

/// Unstable rank-2 contributions to the all-bundles zeta, closed forms against
/// enumeration over split pairs. Coefficient vectors hold degrees `1..=order`
/// (in `t` for the positive part, in `u = 1/t` for the negative part).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AllBundlesReport {
    pub order: usize,
    pub zero_closed: Rat,
    pub zero_direct: Rat,
    pub positive_closed: PositivePart<RatFunc>,
    pub positive_closed_coeffs: PositivePart<Vec<Rat>>,
    pub positive_direct: PositivePart<Vec<Rat>>,
    /// Written in `u = 1/t`.
    pub negative_closed: RatFunc,
    pub negative_closed_coeffs: Vec<Rat>,
    pub negative_direct: Vec<Rat>,
}

impl AllBundlesReport {
    pub fn zero_agrees(&self) -> bool {
        self.zero_closed == self.zero_direct
    }

    pub fn positive_agrees(&self) -> PositivePart<bool> {
        self.positive_closed_coeffs.zip_with(&self.positive_direct, |a, b| a == b)
    }

    pub fn negative_agrees(&self) -> bool {
        self.negative_closed_coeffs == self.negative_direct
    }

    pub fn all_agree(&self) -> bool {
        self.zero_agrees() && self.positive_agrees().as_array().iter().all(|b| **b) && self.negative_agrees()
    }
}

fn p(c: &[Rat]) -> Poly {
    Poly::new(c.to_vec())
}

fn closed_forms(q: &Rat, n1: &Rat) -> Result<(Rat, PositivePart<RatFunc>, RatFunc)> {
    let one = Rat::one();
    let q1 = q - &one;
    let q2 = q * q;
    let zero = q * n1 * n1 / ((&q2 - &one) * &q1 * &q1);
    let q_minus_t = p(&[q.clone(), -one.clone()]);
    let one_minus_t = Poly::one_minus(one.clone(), 1);
    // N_1^2 t^3/(q-1) (q^2+q+1+q^2 t) / ((1-t^2)(1-q^2 t^2)(q-t))
    let i = RatFunc::new(
        &Poly::monomial(n1 * n1 / &q1, 3) * &p(&[&q2 + q + &one, q2.clone()]),
        &(&Poly::one_minus(one.clone(), 2) * &Poly::one_minus(q2.clone(), 2)) * &q_minus_t,
    )?;
    let qt1 = &q_minus_t * &one_minus_t;
    // N_1 t/(q-1) (q+1-t) / ((q-t)(1-t))
    let ii_a = RatFunc::new(
        &Poly::monomial(n1 / &q1, 1) * &p(&[q + &one, -one.clone()]),
        qt1.clone(),
    )?;
    // N_1(N_1-1)/(q-1) t / ((q-t)(1-t))
    let ii_b = RatFunc::new(Poly::monomial(n1 * (n1 - &one) / &q1, 1), qt1.clone())?;
    // N_1^2 t/((q-1)^2(q^2-1)) (q^2+q-1-qt) / ((1-t)(q-t))
    let iii = RatFunc::new(
        &Poly::monomial(n1 * n1 / (&q1 * &q1 * (&q2 - &one)), 1) * &p(&[&q2 + q - &one, -q.clone()]),
        qt1,
    )?;
    // N_1^2/(q-1)^2 q/((qt-1)(q^2-1)) + N_1/(q-1) 1/(qt-1)
    let qt_minus_1 = p(&[-one.clone(), q.clone()]);
    let neg = RatFunc::new(Poly::constant(n1 * n1 * q / (&q1 * &q1 * (&q2 - &one))), qt_minus_1.clone())?
        .add(&RatFunc::new(Poly::constant(n1 / &q1), qt_minus_1)?)?;
    Ok((zero, PositivePart { i, ii_a, ii_b, iii }, neg.in_reciprocal_variable()?))
}

/// `h^0` of a line bundle of degree `d`, `trivial` meaning it is `O`.
fn h0_line(d: i64, trivial: bool) -> i64 {
    if d > 0 {
        d
    } else if trivial {
        1
    } else {
        0
    }
}

struct Direct {
    q: Rat,
    n1: Rat,
    x: Rat,
}

impl Direct {
    /// `(q^{h0} - 1) / ((q-1)^2 q^{d1-d2})`
    fn term(&self, h0: i64, d1: i64, d2: i64) -> Rat {
        let q1 = &self.q - Rat::one();
        (rpow(&self.q, h0) - Rat::one()) / (&q1 * &q1) * rpow(&self.x, d1 - d2)
    }

    /// Sum over `d1 > cut` of `N_1^2 term(d1, d - d1)`; there `d2 < 0 < d1` and `h0 = d1`.
    fn tail(&self, d: i64, cut: i64) -> Rat {
        let one = Rat::one();
        let q1 = &self.q - &one;
        let x = &self.x;
        // sum_{d1 > cut} (q^{d1} - 1) x^{2 d1 - d}
        let s = rpow(&self.q, d)
            * (rpow(x, cut + 1) / (&one - x) - rpow(x, 2 * (cut + 1)) / (&one - x * x));
        &self.n1 * &self.n1 * s / (&q1 * &q1)
    }

    /// Split pairs with `d2 < 0 < d1` and `d1 + d2 = d`, plus the exact tail.
    fn straddling(&self, d: i64) -> Rat {
        let cut = d.max(0) + 2;
        let mut s = Rat::zero();
        for d1 in (d + 1).max(1)..=cut {
            let d2 = d - d1;
            s += &self.n1 * &self.n1 * self.term(h0_line(d1, false) + h0_line(d2, false), d1, d2);
        }
        s + self.tail(d, cut)
    }

    fn positive(&self, d: i64) -> PositivePart<Rat> {
        let n1 = &self.n1;
        let mut i = Rat::zero();
        for d2 in 1..d {
            let d1 = d - d2;
            if d1 > d2 {
                i += n1 * n1 * self.term(h0_line(d1, false) + h0_line(d2, false), d1, d2);
            }
        }
        let ii_a = n1 * self.term(h0_line(d, false) + h0_line(0, true), d, 0);
        let ii_b = n1 * (n1 - Rat::one()) * self.term(h0_line(d, false) + h0_line(0, false), d, 0);
        PositivePart { i, ii_a, ii_b, iii: self.straddling(d) }
    }

    fn negative(&self, d: i64) -> Rat {
        // d1 = 0 > d2: only L_1 = O carries sections; 0 > d1 > d2 has none
        let ii_a = &self.n1 * self.term(h0_line(0, true) + h0_line(d, false), 0, d);
        self.straddling(d) + ii_a
    }
}

/// Closed forms and enumerated sums for the unstable part of the rank-2
/// all-bundles zeta of `E`, compared through degree `order`.
pub fn allbundles_rank2(e: &EllipticData, order: usize) -> Result<AllBundlesReport> {
    if order > MAX_ORDER {
        return Err(Error::Resource(format!("order {order} exceeds {MAX_ORDER}")));
    }
    let q = e.q_rat();
    let n1 = e.n1_rat();
    let (zero_closed, positive_closed, negative_closed) = closed_forms(&q, &n1)?;
    let coeffs = |f: &RatFunc| -> Result<Vec<Rat>> {
        Ok(f.series(order + 1)?.coeffs()[1..].to_vec())
    };
    let positive_closed_coeffs = PositivePart {
        i: coeffs(&positive_closed.i)?,
        ii_a: coeffs(&positive_closed.ii_a)?,
        ii_b: coeffs(&positive_closed.ii_b)?,
        iii: coeffs(&positive_closed.iii)?,
    };
    let negative_closed_coeffs = coeffs(&negative_closed)?;

    let dir = Direct { x: Rat::one() / &q, q, n1 };
    let zero_direct = dir.straddling(0);
    let pos: Vec<PositivePart<Rat>> = (1..=order as i64).map(|d| dir.positive(d)).collect();
    let col = |f: fn(&PositivePart<Rat>) -> &Rat| pos.iter().map(|x| f(x).clone()).collect::<Vec<_>>();
    let positive_direct = PositivePart {
        i: col(|x| &x.i),
        ii_a: col(|x| &x.ii_a),
        ii_b: col(|x| &x.ii_b),
        iii: col(|x| &x.iii),
    };
    let negative_direct = (1..=order as i64).map(|k| dir.negative(-k)).collect();
    Ok(AllBundlesReport {
        order,
        zero_closed,
        zero_direct,
        positive_closed,
        positive_closed_coeffs,
        positive_direct,
        negative_closed,
        negative_closed_coeffs,
        negative_direct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn degree_zero_value() {
        let r = allbundles_rank2(&EllipticData::from_counts(5, 9), 10).unwrap();
        assert_eq!(r.zero_closed, rat(135, 128));
        assert_eq!(r.zero_direct, rat(135, 128));
        let agree = r.positive_agrees();
        assert!(agree.i && agree.ii_a && agree.ii_b, "{agree:?}");
        assert!(r.negative_agrees());
    }

    #[test]
    fn empty_order() {
        let r = allbundles_rank2(&EllipticData::from_counts(5, 9), 0).unwrap();
        assert!(r.negative_direct.is_empty() && r.positive_direct.i.is_empty());
        assert_eq!(r.zero_closed, rat(135, 128));
        assert!(allbundles_rank2(&EllipticData::from_counts(5, 9), 41).is_err());
    }
}
