//! Full-rank lattices in `R^n` (n <= 4) held through their exact Gram matrix:
//! degree, duality, short-vector enumeration, slope stability and
//! Harder–Narasimhan filtrations, theta-series `h^0`/`h^1` and `xi_Q`.

mod enumerate;
mod stability;
mod theta;

pub use enumerate::{short_vectors, shortest_vector, ENUM_BUDGET};
pub use stability::{
    hn_filtration, is_semistable, is_stable, reduce_rank2, unimodular_semistable_check, HnFiltration, HnStep,
    Rank2Reduction,
};
pub use theta::{rr_check, theta_h0, theta_h1, xi_q, RrReport, ThetaValue};

use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Error, Result};
use crate::exact::{parse_rat, ri, to_f64, Rat};

pub const MAX_RANK: usize = 4;

pub type Mat = Vec<Vec<Rat>>;

pub(crate) fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let (n, m, k) = (a.len(), b[0].len(), b.len());
    (0..n)
        .map(|i| (0..m).map(|j| (0..k).map(|l| &a[i][l] * &b[l][j]).sum()).collect())
        .collect()
}

pub(crate) fn transpose(a: &Mat) -> Mat {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Determinant and inverse by exact Gauss–Jordan elimination.
pub(crate) fn det_inv(a: &Mat) -> (Rat, Option<Mat>) {
    let n = a.len();
    let mut m: Mat = a.clone();
    let mut inv: Mat = (0..n).map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()).collect();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return (Rat::zero(), None);
        };
        if piv != c {
            m.swap(piv, c);
            inv.swap(piv, c);
            det = -det;
        }
        let p = m[c][c].clone();
        det *= &p;
        for j in 0..n {
            m[c][j] = &m[c][j] / &p;
            inv[c][j] = &inv[c][j] / &p;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for j in 0..n {
                    let (mc, ic) = (m[c][j].clone(), inv[c][j].clone());
                    m[r][j] -= &f * mc;
                    inv[r][j] -= &f * ic;
                }
            }
        }
    }
    (det, Some(inv))
}

pub(crate) fn det(a: &Mat) -> Rat {
    det_inv(a).0
}

/// Gram matrix of the integer coordinate vectors `cols` (columns of a sublattice basis).
pub(crate) fn sub_gram(g: &Mat, cols: &[Vec<i64>]) -> Mat {
    cols.iter()
        .map(|u| {
            cols.iter()
                .map(|v| {
                    let mut s = Rat::zero();
                    for i in 0..u.len() {
                        for j in 0..v.len() {
                            if u[i] != 0 && v[j] != 0 {
                                s += &g[i][j] * ri(u[i] * v[j]);
                            }
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    gram: Mat,
    /// Basis vectors as columns, when the lattice was given by a basis.
    basis: Option<Mat>,
}

impl Lattice {
    /// Lattice spanned by the columns of `b`.
    pub fn from_basis(b: Mat) -> Result<Self> {
        let n = b.len();
        if n == 0 || n > MAX_RANK || b.iter().any(|r| r.len() != n) {
            return Err(invalid!("basis must be a square matrix of size 1..={MAX_RANK}"));
        }
        let gram = mat_mul(&transpose(&b), &b);
        let l = Lattice::from_gram(gram)?;
        Ok(Lattice { basis: Some(b), ..l })
    }

    /// Checks symmetry and positive definiteness through leading principal minors.
    pub fn from_gram(gram: Mat) -> Result<Self> {
        let n = gram.len();
        if n == 0 || n > MAX_RANK || gram.iter().any(|r| r.len() != n) {
            return Err(invalid!("Gram matrix must be square of size 1..={MAX_RANK}"));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(invalid!("Gram matrix is not symmetric"));
                }
            }
        }
        for k in 1..=n {
            let minor: Mat = gram[..k].iter().map(|r| r[..k].to_vec()).collect();
            if !det(&minor).is_positive() {
                return Err(invalid!("Gram matrix is not positive definite (basis singular)"));
            }
        }
        Ok(Lattice { gram, basis: None })
    }

    /// `Lambda_t = Z sqrt(t)`
    pub fn lambda_t(t: Rat) -> Result<Self> {
        Lattice::from_gram(vec![vec![t]])
    }

    pub fn standard(n: usize) -> Result<Self> {
        Lattice::from_basis((0..n).map(|i| (0..n).map(|j| if i == j { ri(1) } else { ri(0) }).collect()).collect())
    }

    /// Row-major matrix with rows separated by `/`, e.g. `"2 0 / 0 1/2"`; columns are basis vectors.
    pub fn parse_basis(s: &str) -> Result<Self> {
        Lattice::from_basis(parse_matrix(s)?)
    }

    pub fn parse_gram(s: &str) -> Result<Self> {
        Lattice::from_gram(parse_matrix(s)?)
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn basis(&self) -> Option<&Mat> {
        self.basis.as_ref()
    }

    pub fn covol2(&self) -> Rat {
        det(&self.gram)
    }

    pub fn covolume(&self) -> f64 {
        to_f64(&self.covol2()).sqrt()
    }

    /// `-log covol`
    pub fn deg(&self) -> f64 {
        -0.5 * ln_rat(&self.covol2())
    }

    pub fn dual(&self) -> Lattice {
        let inv = det_inv(&self.gram).1.expect("positive definite");
        let basis = self.basis.as_ref().map(|b| transpose(&det_inv(b).1.expect("nonsingular basis")));
        Lattice { gram: inv, basis }
    }

    /// Lattice scaled by `sqrt(c2)`.
    pub fn scaled(&self, c2: &Rat) -> Result<Lattice> {
        if !c2.is_positive() {
            return Err(invalid!("scale must be positive"));
        }
        Ok(Lattice { gram: self.gram.iter().map(|r| r.iter().map(|x| x * c2).collect()).collect(), basis: None })
    }

    pub fn is_integral(&self) -> bool {
        self.gram.iter().flatten().all(crate::exact::is_integer)
    }

    pub fn norm2(&self, v: &[i64]) -> Rat {
        sub_gram(&self.gram, &[v.to_vec()])[0][0].clone()
    }

    pub(crate) fn gram_f64(&self) -> Vec<Vec<f64>> {
        self.gram.iter().map(|r| r.iter().map(to_f64).collect()).collect()
    }
}

/// `ln x` for a positive rational of any size.
pub(crate) fn ln_rat(x: &Rat) -> f64 {
    let (n, d) = (x.numer(), x.denom());
    let ln_big = |v: &num_bigint::BigInt| -> f64 {
        let bits = v.bits();
        if bits < 1000 {
            to_f64(&Rat::from_integer(v.clone())).ln()
        } else {
            let shift = bits - 900;
            to_f64(&Rat::from_integer(v >> shift)).ln() + shift as f64 * std::f64::consts::LN_2
        }
    };
    ln_big(n) - ln_big(d)
}

pub fn parse_matrix(s: &str) -> Result<Mat> {
    let rows: Vec<Vec<Rat>> = s
        .split('/')
        .map(|row| row.split_whitespace().map(parse_rat).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    // `1/2` inside a row would be split as a row separator; rows are separated by ` / `
    if rows.iter().any(|r| r.is_empty()) {
        return parse_matrix_spaced(s);
    }
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return parse_matrix_spaced(s);
    }
    Ok(rows)
}

fn parse_matrix_spaced(s: &str) -> Result<Mat> {
    let rows: Vec<Vec<Rat>> = s
        .split(" / ")
        .map(|row| row.split_whitespace().map(parse_rat).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Invalid(format!("cannot parse square matrix `{s}`")));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn degree_and_duality() {
        let l = Lattice::lambda_t(ri(4)).unwrap();
        assert!((l.deg() + 2f64.ln()).abs() < 1e-15);
        assert_eq!(l.dual().gram()[0][0], rat(1, 4));
        let d = Lattice::parse_basis("3 0 / 0 1/3").unwrap();
        assert!(d.deg().abs() < 1e-15);
        let g = Lattice::parse_gram("2 0 / 0 1/2").unwrap();
        assert_eq!(g.dual().gram(), &vec![vec![rat(1, 2), ri(0)], vec![ri(0), ri(2)]]);
        let b = Lattice::parse_basis("1 2 0 / 0 1 1 / 1 0 3").unwrap();
        assert_eq!(b.dual().dual(), b);
        assert!((b.dual().deg() + b.deg()).abs() < 1e-14);
    }

    #[test]
    fn rejects_singular() {
        assert!(Lattice::parse_basis("1 2 / 2 4").is_err());
        assert!(Lattice::parse_gram("1 2 / 3 4").is_err());
        assert!(Lattice::parse_gram("1 2 3").is_err());
    }
}
