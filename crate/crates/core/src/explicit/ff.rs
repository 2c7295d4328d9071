use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Error, Result};
use crate::exact::{power_sums_from_poly, rbig, ri, rpow, Rat};
use crate::zeta::{nm, ZetaCurve};

/// A finitely supported function on `q^Z`, stored as `n -> f(q^n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FFTestFn {
    pub q: u64,
    support: BTreeMap<i64, Rat>,
}

impl FFTestFn {
    pub fn new(q: u64, values: impl IntoIterator<Item = (i64, Rat)>) -> Self {
        let support = values.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        FFTestFn { q, support }
    }

    pub fn zero(q: u64) -> Self {
        FFTestFn { q, support: BTreeMap::new() }
    }

    pub fn delta(q: u64, n: i64) -> Self {
        Self::new(q, [(n, Rat::one())])
    }

    pub fn at(&self, n: i64) -> Rat {
        self.support.get(&n).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.support.iter().map(|(&n, v)| (n, v))
    }

    /// `f^hat(s) = sum_n f(q^n) q^{ns}` at an integer `s`.
    pub fn hat_at(&self, s: i64) -> Rat {
        let q = ri(self.q as i64);
        self.support().map(|(n, v)| v * rpow(&q, n * s)).sum()
    }

    /// `f^*(q^n) = f(q^{-n}) q^{-n}`
    pub fn star(&self) -> Self {
        let q = ri(self.q as i64);
        Self::new(self.q, self.support().map(|(n, v)| (-n, v * rpow(&q, n))))
    }

    /// `(f * g)(q^n) = sum_m f(q^m) g(q^{n-m})`
    pub fn convolve(&self, g: &Self) -> Self {
        let mut out: BTreeMap<i64, Rat> = BTreeMap::new();
        for (m, a) in self.support() {
            for (k, b) in g.support() {
                *out.entry(m + k).or_insert_with(Rat::zero) += a * b;
            }
        }
        Self::new(self.q, out)
    }

    /// Coefficients `c_n` of `D_f = sum_n c_n A_n`: `f(q^n)` for `n > 0` and
    /// `f(q^n) q^n` for `n <= 0`.
    pub fn divisor(&self) -> BTreeMap<i64, Rat> {
        let q = ri(self.q as i64);
        self.support()
            .map(|(n, v)| (n, if n > 0 { v.clone() } else { v * rpow(&q, n) }))
            .collect()
    }
}

fn check_q(zc: &ZetaCurve, fs: &[&FFTestFn]) -> Result<()> {
    if let Some(f) = fs.iter().find(|f| f.q != zc.q()) {
        return Err(invalid!("test function over q = {} but curve over q = {}", f.q, zc.q()));
    }
    Ok(())
}

/// Intersection numbers of the graphs `A_n` of powers of Frobenius on `C x C`.
struct Intersections {
    q: Rat,
    n: BTreeMap<i64, Rat>,
}

impl Intersections {
    fn new(zc: &ZetaCurve, max_n: i64) -> Result<Self> {
        let mut n = BTreeMap::new();
        n.insert(0, ri(2 - 2 * zc.g() as i64));
        for k in 1..=max_n {
            n.insert(k, rbig(nm(zc, k as usize)?));
        }
        Ok(Intersections { q: zc.q_rat(), n })
    }

    fn count(&self, k: i64) -> &Rat {
        &self.n[&k.abs()]
    }

    fn f1(&self, n: i64) -> Rat {
        rpow(&self.q, n.max(0))
    }

    fn f2(&self, n: i64) -> Rat {
        rpow(&self.q, (-n).max(0))
    }

    fn pair(&self, n: i64, m: i64) -> Rat {
        let (n, m) = if n >= m { (n, m) } else { (m, n) };
        if m >= 0 {
            rpow(&self.q, m) * self.count(n - m)
        } else if n >= 0 {
            self.count(n - m).clone()
        } else {
            rpow(&self.q, -n) * self.count(n - m)
        }
    }
}

fn span(fs: &[&FFTestFn]) -> i64 {
    let lo = fs.iter().filter_map(|f| f.support.keys().next().copied()).min().unwrap_or(0);
    let hi = fs.iter().filter_map(|f| f.support.keys().next_back().copied()).max().unwrap_or(0);
    2 * (hi.abs().max(lo.abs()) + 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FFPairing {
    /// `<D_f, F_1>`
    pub deg1: Rat,
    /// `<D_f, F_2>`
    pub deg2: Rat,
    /// `<D_f, Diag>`
    pub diag: Rat,
    /// `<D_f, D_g>` expanded over the `<A_n, A_m>`.
    pub cross: Rat,
    /// `<D_{f * g^*}, Diag>`
    pub cross_fixed_point: Rat,
}

fn bilinear(ix: &Intersections, f: &FFTestFn, g: &FFTestFn) -> Rat {
    let (df, dg) = (f.divisor(), g.divisor());
    let mut s = Rat::zero();
    for (&n, a) in &df {
        for (&m, b) in &dg {
            s += a * b * ix.pair(n, m);
        }
    }
    s
}

fn diag(ix: &Intersections, f: &FFTestFn) -> Rat {
    f.divisor().iter().map(|(&n, c)| c * ix.count(n)).sum()
}

pub fn ff_pairing(zc: &ZetaCurve, f: &FFTestFn, g: &FFTestFn) -> Result<FFPairing> {
    check_q(zc, &[f, g])?;
    let h = f.convolve(&g.star());
    let ix = Intersections::new(zc, span(&[f, g, &h]))?;
    let df = f.divisor();
    Ok(FFPairing {
        deg1: df.iter().map(|(&n, c)| c * ix.f1(n)).sum(),
        deg2: df.iter().map(|(&n, c)| c * ix.f2(n)).sum(),
        diag: diag(&ix, f),
        cross: bilinear(&ix, f, g),
        cross_fixed_point: diag(&ix, &h),
    })
}

/// `sum_i w_i^n` for `n` in `lo..=hi`, the negative ones through the reversed polynomial
/// (whose reciprocal roots are the `1/w_i`).
fn power_sums(zc: &ZetaCurve, lo: i64, hi: i64) -> Result<BTreeMap<i64, Rat>> {
    let p = zc.numerator();
    let two_g = 2 * zc.g();
    let mut out = BTreeMap::new();
    out.insert(0, ri(two_g as i64));
    if hi > 0 {
        for (k, v) in power_sums_from_poly(p, hi as usize)?.into_iter().enumerate() {
            out.insert(k as i64 + 1, v);
        }
    }
    if lo < 0 {
        let rev = p.reversed(two_g);
        let rev = rev.scale(&(Rat::one() / rev.coeff(0)));
        for (k, v) in power_sums_from_poly(&rev, (-lo) as usize)?.into_iter().enumerate() {
            out.insert(-(k as i64 + 1), v);
        }
    }
    Ok(out)
}

/// `sum_rho f^hat(rho) = sum_n f(q^n) sum_i w_i^n`
pub fn ff_zero_sum(zc: &ZetaCurve, f: &FFTestFn) -> Result<Rat> {
    check_q(zc, &[f])?;
    let (lo, hi) = (f.support.keys().next().copied().unwrap_or(0), f.support.keys().next_back().copied().unwrap_or(0));
    let ps = power_sums(zc, lo.min(0), hi.max(0))?;
    Ok(f.support().map(|(n, v)| v * &ps[&n]).sum())
}

/// `f^hat(0) + f^hat(1) - sum_rho f^hat(rho) = <D_f, Diag>`, exactly.
pub fn ff_explicit_formula_check(zc: &ZetaCurve, f: &FFTestFn) -> Result<bool> {
    let lhs = f.hat_at(0) + f.hat_at(1) - ff_zero_sum(zc, f)?;
    Ok(lhs == ff_pairing(zc, f, f)?.diag)
}

/// `sum_rho f^hat(rho) f^hat(1 - rho) = sum_{n,m} f_n f_m q^m sum_i w_i^{n-m}`; an error when negative.
pub fn ff_positivity(zc: &ZetaCurve, f: &FFTestFn) -> Result<Rat> {
    check_q(zc, &[f])?;
    let ks: Vec<i64> = f.support.keys().copied().collect();
    let d = match (ks.first(), ks.last()) {
        (Some(a), Some(b)) => b - a,
        _ => 0,
    };
    let ps = power_sums(zc, -d, d)?;
    let q = zc.q_rat();
    let mut s = Rat::zero();
    for (n, a) in f.support() {
        for (m, b) in f.support() {
            s += a * b * rpow(&q, m) * &ps[&(n - m)];
        }
    }
    if s.is_negative() {
        return Err(Error::Validation(format!("positivity fails ({s}): numerator is not a curve's")));
    }
    Ok(s)
}

/// `2 f^hat(0) f^hat(1) - <D_f, D_f>`
pub fn ff_hodge_defect(zc: &ZetaCurve, f: &FFTestFn) -> Result<Rat> {
    let p = ff_pairing(zc, f, f)?;
    Ok(ri(2) * f.hat_at(0) * f.hat_at(1) - p.cross)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::artin_zeta_from_counts;

    #[test]
    fn delta_one() {
        let zc = artin_zeta_from_counts(5, 1, &[9]).unwrap();
        let f = FFTestFn::delta(5, 1);
        let p = ff_pairing(&zc, &f, &f).unwrap();
        assert_eq!((p.deg1, p.deg2, p.diag), (ri(5), ri(1), ri(9)));
        assert!(ff_explicit_formula_check(&zc, &f).unwrap());
        assert_eq!(ff_positivity(&zc, &f).unwrap(), ri(10));
        assert_eq!(ff_hodge_defect(&zc, &f).unwrap(), ri(10));
        let z = FFTestFn::zero(5);
        assert_eq!(ff_positivity(&zc, &z).unwrap(), ri(0));
        assert_eq!(ff_positivity(&zc, &FFTestFn::delta(5, 0)).unwrap(), ri(2));
        assert!(ff_pairing(&zc, &FFTestFn::delta(7, 0), &z).is_err());
    }
}
