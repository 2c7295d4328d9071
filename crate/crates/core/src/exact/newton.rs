use num_traits::{One, Zero};

use super::{ri, Poly, Rat, Series};
use crate::error::{invalid, Result};

/// Power sums `p_m = sum_i w_i^m`, `m = 1..=m_max`, of the reciprocal roots of
/// `P(t) = prod_i (1 - w_i t)`.
pub fn power_sums_from_poly(p: &Poly, m_max: usize) -> Result<Vec<Rat>> {
    if !p.coeff(0).is_one() {
        return Err(invalid!("power sums need P(0) = 1, got {}", p.coeff(0)));
    }
    let mut s: Vec<Rat> = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        let mut v = -ri(m as i64) * p.coeff(m);
        for k in 1..m {
            let c = p.coeff(k);
            if !c.is_zero() {
                v -= c * &s[m - k - 1];
            }
        }
        s.push(v);
    }
    Ok(s)
}

/// Inverse of [`power_sums_from_poly`]: the degree `deg` polynomial with `P(0) = 1`
/// whose reciprocal roots have power sums `sums[0], sums[1], ...`.
pub fn poly_from_power_sums(sums: &[Rat], deg: usize) -> Result<Poly> {
    if sums.len() < deg {
        return Err(invalid!("need {deg} power sums, got {}", sums.len()));
    }
    let mut c: Vec<Rat> = vec![Rat::one()];
    for m in 1..=deg {
        let mut v = sums[m - 1].clone();
        for k in 1..m {
            v += &c[k] * &sums[m - k - 1];
        }
        c.push(-v / ri(m as i64));
    }
    Ok(Poly::new(c))
}

/// `exp(sum_{m>=1} N_m t^m / m)` truncated at `order`; `n[0]` is `N_1`.
pub fn series_exp_from_power_sums(n: &[Rat], order: usize) -> Result<Series> {
    if order > 0 && n.len() < order - 1 {
        return Err(invalid!(
            "series of order {order} needs {} counts, got {}",
            order - 1,
            n.len()
        ));
    }
    let mut l = vec![Rat::zero(); order];
    for m in 1..order {
        l[m] = &n[m - 1] / ri(m as i64);
    }
    Series::new(l).exp()
}

/// Does `P(t) = q^{rg} t^{2rg} P(1/(q t))` hold?
pub fn fe_transform_check(p: &Poly, q: &Rat, rg: usize) -> bool {
    if p.degree().is_some_and(|d| d > 2 * rg) {
        return false;
    }
    p.fe_image(q, rg) == *p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_sums_roundtrip() {
        let p = Poly::from_ints(&[1, -7, 3, 11, -2]);
        let s = power_sums_from_poly(&p, 4).unwrap();
        assert_eq!(poly_from_power_sums(&s, 4).unwrap(), p);
    }
}
