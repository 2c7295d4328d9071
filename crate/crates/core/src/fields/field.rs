use crate::error::{invalid, Error, Result};

/// Largest field (or extension) the brute-force routines will enumerate.
pub const FIELD_BUDGET: u64 = 10_000_000;

const MAXN: usize = 24;

/// `F_{p^n}` realised as `F_p[x] / (m(x))`, with `m` the smallest monic irreducible
/// of degree `n` when the coefficient vector `(c_{n-1}, ..., c_0)` is read as a
/// base-`p` numeral. Elements are encoded as `sum c_i p^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    p: u64,
    n: u32,
    q: u64,
    /// Non-leading coefficients `c_0..c_{n-1}` of the monic modulus.
    modulus: Vec<u64>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// Polynomials over `F_p` as ascending coefficient vectors, used only to find moduli.
mod fp_poly {
    use super::{mulmod, powmod};

    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        let dm = m.len() - 1;
        let inv = powmod(m[dm], p - 2, p);
        while r.len() > dm {
            let top = *r.last().unwrap();
            if top != 0 {
                let f = mulmod(top, inv, p);
                let off = r.len() - 1 - dm;
                for (j, &mj) in m.iter().enumerate() {
                    r[off + j] = (r[off + j] + p - mulmod(f, mj, p)) % p;
                }
            }
            r.pop();
        }
        trim(r)
    }

    pub fn mulmod_poly(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
            }
        }
        rem(&out, m, p)
    }

    /// `x^(p^k) mod m`
    pub fn frob_power(k: u32, m: &[u64], p: u64) -> Vec<u64> {
        let mut r = rem(&[0, 1], m, p);
        for _ in 0..k {
            let mut acc = vec![1u64];
            let mut base = r.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod_poly(&acc, &base, m, p);
                }
                base = mulmod_poly(&base, &base, m, p);
                e >>= 1;
            }
            r = acc;
        }
        r
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn sub_x(a: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        if r.len() < 2 {
            r.resize(2, 0);
        }
        r[1] = (r[1] + p - 1) % p;
        trim(r)
    }
}

fn is_irreducible(m: &[u64], p: u64) -> bool {
    let n = (m.len() - 1) as u32;
    if fp_poly::sub_x(&fp_poly::frob_power(n, m, p), p).is_empty() {
        for (l, _) in factorize(n as u64) {
            let h = fp_poly::sub_x(&fp_poly::frob_power(n / l as u32, m, p), p);
            if fp_poly::gcd(m, &h, p).len() != 1 {
                return false;
            }
        }
        true
    } else {
        false
    }
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        FieldSpec::new(p, 1)
    }

    pub fn new(p: u64, n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(invalid!("{p} is not prime"));
        }
        if n == 0 || n as usize > MAXN {
            return Err(invalid!("extension degree {n} out of range"));
        }
        let q = (p as u128).pow(n);
        if q > FIELD_BUDGET as u128 {
            return Err(Error::Resource(format!("field of size {p}^{n} exceeds budget")));
        }
        let q = q as u64;
        if n == 1 {
            return Ok(FieldSpec { p, n, q, modulus: vec![0] });
        }
        for k in 0..q {
            let mut c: Vec<u64> = (0..n).map(|i| (k / p.pow(i)) % p).collect();
            c.push(1);
            if c[0] != 0 && is_irreducible(&c, p) {
                c.pop();
                return Ok(FieldSpec { p, n, q, modulus: c });
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn decode(&self, a: u64) -> [u64; MAXN] {
        let mut d = [0u64; MAXN];
        let mut a = a;
        for slot in d.iter_mut().take(self.n as usize) {
            *slot = a % self.p;
            a /= self.p;
        }
        d
    }

    fn encode(&self, d: &[u64]) -> u64 {
        d.iter().take(self.n as usize).rev().fold(0, |acc, &c| acc * self.p + c)
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.n == 1 {
            return (a + b) % self.p;
        }
        let (x, y) = (self.decode(a), self.decode(b));
        let mut z = [0u64; MAXN];
        for i in 0..self.n as usize {
            z[i] = (x[i] + y[i]) % self.p;
        }
        self.encode(&z)
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.n == 1 {
            return (self.p - a) % self.p;
        }
        let x = self.decode(a);
        let mut z = [0u64; MAXN];
        for i in 0..self.n as usize {
            z[i] = (self.p - x[i]) % self.p;
        }
        self.encode(&z)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let p = self.p;
        if self.n == 1 {
            return mulmod(a, b, p);
        }
        let n = self.n as usize;
        let (x, y) = (self.decode(a), self.decode(b));
        let mut prod = [0u64; 2 * MAXN];
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
            }
        }
        // x^n = -sum c_i x^i
        for k in (n..2 * n - 1).rev() {
            let t = prod[k];
            if t == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &c) in self.modulus.iter().enumerate() {
                prod[k - n + i] = (prod[k - n + i] + (p - c) % p * t) % p;
            }
        }
        self.encode(&prod[..n])
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(invalid!("zero has no inverse"));
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// Evaluates a polynomial with coefficients in `F_p` at `x`.
    pub fn eval_fp_poly(&self, c: &[u64], x: u64) -> u64 {
        c.iter().rev().fold(0, |acc, &ci| self.add(self.mul(acc, x), ci))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f25_modulus_and_inverses() {
        let f = FieldSpec::new(5, 2).unwrap();
        assert_eq!(f.modulus(), &[2, 0]);
        for a in 1..25 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic_of_right_order() {
        let f = FieldSpec::new(3, 3).unwrap();
        for a in 1..27 {
            assert_eq!(f.pow(a, 26), 1);
        }
        assert!((1..27).any(|g| (1..26).all(|e| f.pow(g, e) != 1)));
    }
}
