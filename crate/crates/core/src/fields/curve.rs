use num_integer::Integer;

use super::field::{factorize, powmod, FieldSpec, FIELD_BUDGET};
use crate::error::{invalid, Error, Result};

/// `y^2 = x^3 + a x + b` over a field of characteristic `p > 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassCurve {
    pub field: FieldSpec,
    pub a: u64,
    pub b: u64,
}

/// `E(F_q) = Z/n1 x Z/n2` with `n1 | n2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupStructure {
    pub n1: u64,
    pub n2: u64,
}

impl GroupStructure {
    pub fn order(&self) -> u64 {
        self.n1 * self.n2
    }
}

type Point = Option<(u64, u64)>;

impl WeierstrassCurve {
    pub fn new(field: FieldSpec, a: u64, b: u64) -> Result<Self> {
        if field.p() <= 3 {
            return Err(invalid!("characteristic {} not supported", field.p()));
        }
        if a >= field.q() || b >= field.q() {
            return Err(invalid!("coefficient outside the field encoding"));
        }
        let c = WeierstrassCurve { field, a, b };
        if c.discriminant_core() == 0 {
            return Err(invalid!("singular curve: 4a^3 + 27b^2 = 0"));
        }
        Ok(c)
    }

    pub fn over_prime(p: u64, a: i64, b: i64) -> Result<Self> {
        let f = FieldSpec::prime(p)?;
        let (a, b) = (f.from_int(a), f.from_int(b));
        WeierstrassCurve::new(f, a, b)
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    /// `4a^3 + 27b^2`
    pub fn discriminant_core(&self) -> u64 {
        let f = &self.field;
        let a3 = f.mul(f.mul(self.a, self.a), self.a);
        f.add(f.mul(f.from_int(4), a3), f.mul(f.from_int(27), f.mul(self.b, self.b)))
    }

    pub fn rhs(&self, x: u64) -> u64 {
        let f = &self.field;
        f.add(f.mul(f.add(f.mul(x, x), self.a), x), self.b)
    }

    fn add_points(&self, p1: Point, p2: Point) -> Point {
        let f = &self.field;
        let ((x1, y1), (x2, y2)) = match (p1, p2) {
            (None, q) => return q,
            (p, None) => return p,
            (Some(a), Some(b)) => (a, b),
        };
        let lambda = if x1 == x2 {
            if f.add(y1, y2) == 0 {
                return None;
            }
            let num = f.add(f.mul(f.from_int(3), f.mul(x1, x1)), self.a);
            f.mul(num, f.inv(f.add(y1, y1)).ok()?)
        } else {
            f.mul(f.sub(y2, y1), f.inv(f.sub(x2, x1)).ok()?)
        };
        let x3 = f.sub(f.sub(f.mul(lambda, lambda), x1), x2);
        let y3 = f.sub(f.mul(lambda, f.sub(x1, x3)), y1);
        Some((x3, y3))
    }

    fn scalar_mul(&self, pt: Point, mut k: u64) -> Point {
        let mut acc = None;
        let mut base = pt;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_points(acc, base);
            }
            base = self.add_points(base, base);
            k >>= 1;
        }
        acc
    }

    /// The same curve viewed over the degree `m` extension of its field.
    pub fn base_change(&self, m: u32) -> Result<WeierstrassCurve> {
        if m == 1 {
            return Ok(self.clone());
        }
        let f = &self.field;
        let big = FieldSpec::new(f.p(), f.n() * m)?;
        let embed = if f.n() == 1 {
            Box::new(|x: u64| x) as Box<dyn Fn(u64) -> u64>
        } else {
            // a root of the small modulus inside the big field
            let mut poly: Vec<u64> = f.modulus().to_vec();
            poly.push(1);
            let alpha = (0..big.q())
                .find(|&z| big.eval_fp_poly(&poly, z) == 0)
                .ok_or_else(|| Error::Numerical("no embedding of the base field".into()))?;
            let n = f.n();
            let p = f.p();
            let big2 = big.clone();
            Box::new(move |x: u64| {
                let mut acc = 0;
                let mut pw = 1;
                let mut x = x;
                for _ in 0..n {
                    acc = big2.add(acc, big2.mul(x % p, pw));
                    pw = big2.mul(pw, alpha);
                    x /= p;
                }
                acc
            })
        };
        let (a, b) = (embed(self.a), embed(self.b));
        WeierstrassCurve::new(big, a, b)
    }
}

fn check_budget(c: &WeierstrassCurve, m: u32) -> Result<()> {
    let size = (c.q() as u128).checked_pow(m).unwrap_or(u128::MAX);
    if size > FIELD_BUDGET as u128 {
        return Err(Error::Resource(format!(
            "counting over a field of size {}^{m} exceeds the budget {FIELD_BUDGET}",
            c.q()
        )));
    }
    Ok(())
}

/// `#E(F_{q^m})` including the point at infinity, by direct enumeration.
pub fn count_points(c: &WeierstrassCurve, m: u32) -> Result<u64> {
    if m == 0 {
        return Err(invalid!("extension degree must be positive"));
    }
    check_budget(c, m)?;
    let e = c.base_change(m)?;
    let f = &e.field;
    if f.n() == 1 {
        let p = f.p();
        let chi = |x: u64| -> i64 {
            let v = e.rhs(x);
            if v == 0 {
                0
            } else if powmod(v, (p - 1) / 2, p) == 1 {
                1
            } else {
                -1
            }
        };
        let s: i64 = sum_over(p, chi);
        return Ok((p as i64 + 1 + s) as u64);
    }
    let q = f.q();
    let mut square = vec![false; q as usize];
    for x in 0..q {
        square[f.mul(x, x) as usize] = true;
    }
    let s: i64 = sum_over(q, |x| {
        let v = e.rhs(x);
        if v == 0 {
            0
        } else if square[v as usize] {
            1
        } else {
            -1
        }
    });
    Ok((q as i64 + 1 + s) as u64)
}

#[cfg(feature = "parallel")]
fn sum_over<F: Fn(u64) -> i64 + Sync + Send>(n: u64, f: F) -> i64 {
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).sum()
}

#[cfg(not(feature = "parallel"))]
fn sum_over<F: Fn(u64) -> i64>(n: u64, f: F) -> i64 {
    (0..n).map(f).sum()
}

/// Number of roots of `x^3 + a x + b` in the field plus one: `#E[2](F_q)`.
pub fn two_torsion_count(c: &WeierstrassCurve) -> u64 {
    1 + (0..c.q()).filter(|&x| c.rhs(x) == 0).count() as u64
}

/// `#E[3](F_q)` from the roots of the 3-division polynomial `3x^4 + 6ax^2 + 12bx - a^2`.
pub fn three_torsion_count(c: &WeierstrassCurve) -> u64 {
    let f = &c.field;
    let psi3 = [
        f.neg(f.mul(c.a, c.a)),
        f.mul(f.from_int(12), c.b),
        f.mul(f.from_int(6), c.a),
        0,
        f.from_int(3),
    ];
    let half = (f.q() - 1) / 2;
    1 + (0..f.q())
        .filter(|&x| psi3.iter().rev().fold(0, |acc, &k| f.add(f.mul(acc, x), k)) == 0)
        .map(|x| if f.pow(c.rhs(x), half) == 1 { 2 } else { 0 })
        .sum::<u64>()
}

/// Invariants `(n1, n2)` of the finite abelian group `E(F_q)`.
///
/// The exponent `n2` is the lcm of all point orders; `n1 = #E / n2` must divide
/// both `n2` and `q - 1`.
pub fn group_structure(c: &WeierstrassCurve) -> Result<GroupStructure> {
    check_budget(c, 1)?;
    let f = &c.field;
    let q = f.q();
    let mut root: Vec<u32> = vec![u32::MAX; q as usize];
    for y in 0..q {
        root[f.mul(y, y) as usize] = y as u32;
    }
    let mut points: Vec<(u64, u64)> = Vec::new();
    for x in 0..q {
        let v = c.rhs(x);
        let y = root[v as usize];
        if y != u32::MAX {
            points.push((x, y as u64));
            if y != 0 {
                points.push((x, f.neg(y as u64)));
            }
        }
    }
    let n = points.len() as u64 + 1;
    let primes = factorize(n);
    let mut exponent = 1u64;
    for &pt in &points {
        if exponent == n {
            break;
        }
        if c.scalar_mul(Some(pt), exponent).is_none() {
            continue;
        }
        let mut ord = n;
        for &(l, _) in &primes {
            while ord % l == 0 && c.scalar_mul(Some(pt), ord / l).is_none() {
                ord /= l;
            }
        }
        exponent = exponent.lcm(&ord);
    }
    let n1 = n / exponent;
    if exponent % n1 != 0 || (q - 1) % n1 != 0 {
        return Err(Error::Validation(format!(
            "inconsistent group structure ({n1}, {exponent}) for #E = {n}"
        )));
    }
    Ok(GroupStructure { n1, n2: exponent })
}

/// `#E[m](F_q) = gcd(m, n1) gcd(m, n2)`.
pub fn torsion_count(g: &GroupStructure, m: u64) -> u64 {
    m.gcd(&g.n1) * m.gcd(&g.n2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let e = WeierstrassCurve::over_prime(5, 1, 1).unwrap();
        assert_eq!(count_points(&e, 1).unwrap(), 9);
        assert_eq!(count_points(&e, 2).unwrap(), 27);
        let e = WeierstrassCurve::over_prime(5, 4, 0).unwrap();
        assert_eq!(count_points(&e, 1).unwrap(), 8);
    }

    #[test]
    fn structures() {
        let e = WeierstrassCurve::over_prime(5, 4, 0).unwrap();
        assert_eq!(group_structure(&e).unwrap(), GroupStructure { n1: 2, n2: 4 });
        let e = WeierstrassCurve::over_prime(5, 1, 1).unwrap();
        assert_eq!(group_structure(&e).unwrap(), GroupStructure { n1: 1, n2: 9 });
    }

    #[test]
    fn torsion_counts_agree_with_structure() {
        for p in [5u64, 7, 11, 13, 31] {
            for a in 0..p as i64 {
                for b in 0..p as i64 {
                    let Ok(e) = WeierstrassCurve::over_prime(p, a, b) else { continue };
                    let g = group_structure(&e).unwrap();
                    assert_eq!(g.order(), count_points(&e, 1).unwrap());
                    assert_eq!(torsion_count(&g, 2), two_torsion_count(&e));
                    assert_eq!(torsion_count(&g, 3), three_torsion_count(&e));
                }
            }
        }
    }

    #[test]
    fn singular_rejected() {
        assert!(WeierstrassCurve::over_prime(7, 0, 0).is_err());
        assert!(WeierstrassCurve::over_prime(3, 1, 1).is_err());
    }

    #[test]
    fn budget() {
        let e = WeierstrassCurve::over_prime(101, 1, 1).unwrap();
        assert!(matches!(count_points(&e, 4), Err(Error::Resource(_))));
    }
}
