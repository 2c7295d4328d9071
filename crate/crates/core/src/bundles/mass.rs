use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{ri, rpow, Rat};
use crate::zeta::ZetaCurve;

/// `zeta_E(i) = Z_E(q^{-i})`
pub fn zeta_e_at(z: &ZetaCurve, i: i64) -> Result<Rat> {
    z.eval(&rpow(&z.q_rat(), -i))
}

/// A Harder–Narasimhan type: ranks `r_i` and degrees `d_i` with strictly
/// decreasing slopes `d_i / r_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnType {
    pub ranks: Vec<u32>,
    pub degrees: Vec<i64>,
}

impl HnType {
    /// `sum_{i<j} (r_j d_i - r_i d_j)`
    pub fn exponent(&self) -> i64 {
        let k = self.ranks.len();
        let mut s = 0;
        for i in 0..k {
            for j in i + 1..k {
                s += self.ranks[j] as i64 * self.degrees[i] - self.ranks[i] as i64 * self.degrees[j];
            }
        }
        s
    }
}

fn compositions(r: u32) -> Vec<Vec<u32>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=r {
        for mut rest in compositions(r - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Non-trivial HN types of rank `r`, total degree `d`, with `|d_i| <= bound`.
pub fn hn_types(r: u32, d: i64, bound: i64) -> Vec<HnType> {
    let mut out = Vec::new();
    for ranks in compositions(r).into_iter().filter(|c| c.len() >= 2) {
        let k = ranks.len();
        let mut degs = vec![0i64; k];
        fn go(i: usize, left: i64, ranks: &[u32], degs: &mut Vec<i64>, bound: i64, out: &mut Vec<HnType>) {
            let k = ranks.len();
            if i == k - 1 {
                if left.abs() > bound {
                    return;
                }
                degs[i] = left;
                let ok = (0..k - 1).all(|j| {
                    degs[j] * ranks[j + 1] as i64 > degs[j + 1] * ranks[j] as i64
                });
                if ok {
                    out.push(HnType { ranks: ranks.to_vec(), degrees: degs.clone() });
                }
                return;
            }
            for di in -bound..=bound {
                degs[i] = di;
                go(i + 1, left - di, ranks, degs, bound, out);
            }
        }
        go(0, d, &ranks, &mut degs, bound, &mut out);
    }
    out
}

struct Masses<'a> {
    z: &'a ZetaCurve,
    n1: Rat,
    q: Rat,
}

impl Masses<'_> {
    fn stable(&self) -> Rat {
        &self.n1 / (&self.q - Rat::one())
    }

    fn beta(&self, r: u32, d: i64) -> Result<Rat> {
        if r == 1 {
            return Ok(self.stable());
        }
        let d = d.rem_euclid(r as i64);
        let mut main = self.stable();
        for i in 2..=r as i64 {
            main *= zeta_e_at(self.z, i)?;
        }
        Ok(main - self.unstable_sum(r, d)?)
    }

    /// Sum over non-trivial HN types of `prod beta_{r_i}(d_i) q^{-exponent}`,
    /// closed as geometric series.
    fn unstable_sum(&self, r: u32, d: i64) -> Result<Rat> {
        let x = Rat::one() / &self.q;
        let mut total = Rat::zero();
        for r1 in 1..r {
            let r2 = r - r1;
            // d1 / r1 > d2 / r2  <=>  r d1 > r1 d; the exponent is r d1 - r1 d
            let d1min = Integer::div_floor(&(r1 as i64 * d), &(r as i64)) + 1;
            let period = (r1 as i64).lcm(&(r2 as i64));
            let mut head = Rat::zero();
            for j in 0..period {
                let d1 = d1min + j;
                let e = r as i64 * d1 - r1 as i64 * d;
                head += self.beta(r1, d1)? * self.beta(r2, d - d1)? * rpow(&x, e);
            }
            total += head / (Rat::one() - rpow(&x, r as i64 * period));
        }
        if r == 3 {
            // three line bundles: gaps a = d1 - d2, b = d2 - d3 >= 1 with a + 2b = d (mod 3),
            // exponent 2(a + b)
            let mut s = Rat::zero();
            for a in 1..=3 {
                for b in 1..=3 {
                    if (a + 2 * b - d).rem_euclid(3) == 0 {
                        s += rpow(&x, 2 * (a + b));
                    }
                }
            }
            let geo = Rat::one() - rpow(&x, 6);
            total += num_traits::pow(self.stable(), 3) * s / (&geo * &geo);
        } else if r > 3 {
            return Err(Error::Unsupported(format!("mass recursion implemented for r <= 3, got {r}")));
        }
        Ok(total)
    }
}

/// `beta_{E,r}(d)` from the Harder–Narasimhan / Desale–Ramanan recursion:
/// `beta_r(d) = N_1/(q-1) prod_{i=2}^r zeta_E(i) - sum_{HN types} prod beta_{r_i}(d_i) q^{-sum_{i<j}(r_j d_i - r_i d_j)}`.
pub fn mass_recursion_beta(r: u32, d: i64, z: &ZetaCurve) -> Result<Rat> {
    if z.g() != 1 {
        return Err(Error::Unsupported("mass recursion implemented for elliptic curves".into()));
    }
    if !(1..=3).contains(&r) {
        return Err(Error::Unsupported(format!("mass recursion implemented for r <= 3, got {r}")));
    }
    let m = Masses { z, n1: ri(z.n1() as i64), q: z.q_rat() };
    m.beta(r, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, to_f64};
    use crate::zeta::artin_zeta_from_counts;

    #[test]
    fn rank_two_values() {
        let z = artin_zeta_from_counts(5, 1, &[9]).unwrap();
        assert_eq!(mass_recursion_beta(2, 0, &z).unwrap(), rat(99, 32));
        assert_eq!(mass_recursion_beta(1, 0, &z).unwrap(), rat(9, 4));
        let z = artin_zeta_from_counts(5, 1, &[8]).unwrap();
        assert_eq!(mass_recursion_beta(2, 0, &z).unwrap(), rat(8, 3));
    }

    /// Truncated enumeration of HN types against the closed geometric sums.
    #[test]
    fn closed_sums_match_truncated_enumeration() {
        for (q, n1) in [(5u64, 9u64), (7, 12), (11, 9)] {
            let z = artin_zeta_from_counts(q, 1, &[n1]).unwrap();
            let m = Masses { z: &z, n1: ri(n1 as i64), q: ri(q as i64) };
            for r in 2..=3u32 {
                for d in 0..r as i64 {
                    let closed = to_f64(&m.unstable_sum(r, d).unwrap());
                    let mut brute = Rat::zero();
                    for t in hn_types(r, d, 14) {
                        let mut term = rpow(&ri(q as i64), -t.exponent());
                        for (ri_, di) in t.ranks.iter().zip(&t.degrees) {
                            term *= m.beta(*ri_, *di).unwrap();
                        }
                        brute += term;
                    }
                    let brute = to_f64(&brute);
                    assert!((closed - brute).abs() < 1e-12 * closed.abs().max(1.0), "{q} {r} {d}: {closed} vs {brute}");
                }
            }
        }
    }
}
