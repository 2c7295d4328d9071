use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{det, det_inv, ln_rat, mat_mul, shortest_vector, sub_gram, transpose, Lattice, Mat};
use crate::error::{invalid, Error, Result};
use crate::exact::{ri, to_f64, Rat};

fn rpow_u(x: &Rat, e: usize) -> Rat {
    num_traits::pow(x.clone(), e)
}

/// `slope(c_a, k_a) > slope(c_b, k_b)` for slopes `-log(c)/(2k)` of covolume^2 `c`.
fn slope_gt(ca: &Rat, ka: usize, cb: &Rat, kb: usize) -> bool {
    rpow_u(ca, kb) < rpow_u(cb, ka)
}

fn slope(c: &Rat, k: usize) -> f64 {
    -0.5 * ln_rat(c) / k as f64
}

struct Candidate {
    rank: usize,
    covol2: Rat,
    /// Unimodular matrix whose first `rank` columns span the sublattice.
    u: Vec<Vec<i64>>,
}

/// Minimal covolume^2 of rank 1 and rank `n - 1` sublattices, with completions.
fn candidates(l: &Lattice) -> Result<Vec<Candidate>> {
    let n = l.rank();
    if n > 3 {
        return Err(Error::Unsupported(format!("stability implemented for rank <= 3, got {n}")));
    }
    let mut out = Vec::new();
    if n == 1 {
        return Ok(out);
    }
    let (v, nv) = shortest_vector(l)?;
    out.push(Candidate { rank: 1, covol2: nv, u: complete_vector(&v) });
    if n == 3 {
        let (w, nw) = shortest_vector(&l.dual())?;
        out.push(Candidate { rank: 2, covol2: l.covol2() * nw, u: complete_kernel(&w) });
    }
    Ok(out)
}

pub fn is_semistable(l: &Lattice) -> Result<bool> {
    let (n, c) = (l.rank(), l.covol2());
    Ok(candidates(l)?.iter().all(|k| !slope_gt(&k.covol2, k.rank, &c, n)))
}

/// No proper sublattice of slope >= the slope of `l`.
pub fn is_stable(l: &Lattice) -> Result<bool> {
    let (n, c) = (l.rank(), l.covol2());
    Ok(candidates(l)?.iter().all(|k| slope_gt(&c, n, &k.covol2, k.rank)))
}

/// Column operations taking the integer vector `v` to `e_1`; returns the
/// accumulated inverse, a unimodular matrix with first column `v / gcd(v)`.
fn complete_vector(v: &[i64]) -> Vec<Vec<i64>> {
    let n = v.len();
    let mut x = v.to_vec();
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    // rows of x get reduced; M tracks E^{-1} by column operations
    loop {
        let nz: Vec<usize> = (0..n).filter(|&i| x[i] != 0).collect();
        if nz.len() <= 1 {
            break;
        }
        let p = *nz.iter().min_by_key(|&&i| x[i].abs()).unwrap();
        for &i in &nz {
            if i != p {
                let c = Integer::div_floor(&x[i], &x[p]);
                x[i] -= c * x[p];
                for row in m.iter_mut() {
                    row[p] += c * row[i];
                }
            }
        }
    }
    let p = (0..n).find(|&i| x[i] != 0).unwrap_or(0);
    if p != 0 {
        x.swap(0, p);
        for row in m.iter_mut() {
            row.swap(0, p);
        }
    }
    if x[0] < 0 {
        for row in m.iter_mut() {
            row[0] = -row[0];
        }
    }
    m
}

/// For a primitive functional `w`, a unimodular matrix whose first `n - 1`
/// columns span `ker w` and whose last column `c` has `w . c = 1`.
fn complete_kernel(w: &[i64]) -> Vec<Vec<i64>> {
    let n = w.len();
    let mut x = w.to_vec();
    let mut c: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    // column operations on the row vector x = w C
    loop {
        let nz: Vec<usize> = (0..n).filter(|&i| x[i] != 0).collect();
        if nz.len() <= 1 {
            break;
        }
        let p = *nz.iter().min_by_key(|&&i| x[i].abs()).unwrap();
        for &i in &nz {
            if i != p {
                let k = Integer::div_floor(&x[i], &x[p]);
                x[i] -= k * x[p];
                for row in c.iter_mut() {
                    row[i] -= k * row[p];
                }
            }
        }
    }
    let p = (0..n).find(|&i| x[i] != 0).unwrap_or(0);
    if x[p] < 0 {
        for row in c.iter_mut() {
            row[p] = -row[p];
        }
    }
    let mut order: Vec<usize> = (0..n).filter(|&i| i != p).collect();
    order.push(p);
    c.iter().map(|row| order.iter().map(|&j| row[j]).collect()).collect()
}

fn columns(u: &[Vec<i64>], k: std::ops::Range<usize>) -> Vec<Vec<i64>> {
    k.map(|j| u.iter().map(|row| row[j]).collect()).collect()
}

fn to_rat_mat(u: &[Vec<i64>]) -> Mat {
    u.iter().map(|r| r.iter().map(|&x| ri(x)).collect()).collect()
}

/// Gram of the projection of `l` onto the orthogonal complement of the first `k`
/// columns of `u`.
fn quotient_gram(g: &Mat, u: &[Vec<i64>], k: usize) -> Mat {
    let ur = to_rat_mat(u);
    let gp = mat_mul(&mat_mul(&transpose(&ur), g), &ur);
    let n = g.len();
    let g11: Mat = gp[..k].iter().map(|r| r[..k].to_vec()).collect();
    let inv = det_inv(&g11).1.expect("sublattice Gram is definite");
    let g12: Mat = gp[..k].iter().map(|r| r[k..].to_vec()).collect();
    let g21: Mat = gp[k..].iter().map(|r| r[..k].to_vec()).collect();
    let corr = mat_mul(&mat_mul(&g21, &inv), &g12);
    (0..n - k).map(|i| (0..n - k).map(|j| &gp[k + i][k + j] - &corr[i][j]).collect()).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct HnStep {
    /// Rank of `L_i / L_{i-1}`.
    pub rank: usize,
    pub covol2: Rat,
    /// `deg / rank` of the quotient.
    pub slope: f64,
    /// Basis of `L_i` as integer coordinates in the basis of `L`.
    pub sublattice: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HnFiltration {
    pub steps: Vec<HnStep>,
}

impl HnFiltration {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn slopes(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.slope).collect()
    }
}

/// Chain of sublattice bases `L_1 < ... < L_m = L` in coordinates of `g`'s basis.
fn hn_chain(l: &Lattice) -> Result<Vec<Vec<Vec<i64>>>> {
    let n = l.rank();
    let full = columns(&(0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect::<Vec<_>>(), 0..n);
    let c = l.covol2();
    let mut best: Option<Candidate> = None;
    for k in candidates(l)? {
        let beats_whole = slope_gt(&k.covol2, k.rank, &c, n);
        let better = match &best {
            None => beats_whole,
            Some(b) => {
                slope_gt(&k.covol2, k.rank, &b.covol2, b.rank)
                    || (!slope_gt(&b.covol2, b.rank, &k.covol2, k.rank) && k.rank > b.rank)
            }
        };
        if better {
            best = Some(k);
        }
    }
    let Some(b) = best else {
        return Ok(vec![full]);
    };
    let first = columns(&b.u, 0..b.rank);
    let q = Lattice::from_gram(quotient_gram(l.gram(), &b.u, b.rank))?;
    let mut chain = vec![first.clone()];
    for sub in hn_chain(&q)? {
        let mut basis = first.clone();
        for y in sub {
            // lift (0, y) through u
            let v: Vec<i64> = (0..n).map(|i| (0..y.len()).map(|j| b.u[i][b.rank + j] * y[j]).sum()).collect();
            basis.push(v);
        }
        chain.push(basis);
    }
    Ok(chain)
}

pub fn hn_filtration(l: &Lattice) -> Result<HnFiltration> {
    if l.rank() > 3 {
        return Err(Error::Unsupported(format!("filtrations implemented for rank <= 3, got {}", l.rank())));
    }
    let chain = hn_chain(l)?;
    let mut steps = Vec::with_capacity(chain.len());
    let mut prev = (0usize, Rat::one());
    for basis in chain {
        let c = det(&sub_gram(l.gram(), &basis));
        let rank = basis.len() - prev.0;
        let qc = &c / &prev.1;
        steps.push(HnStep { rank, slope: slope(&qc, rank), covol2: qc, sublattice: basis.clone() });
        prev = (basis.len(), c);
    }
    Ok(HnFiltration { steps })
}

/// For an integral lattice of covolume 1: asserts semistability and returns
/// whether it is stable.
pub fn unimodular_semistable_check(l: &Lattice) -> Result<bool> {
    if !l.is_integral() || !l.covol2().is_one() {
        return Err(invalid!("lattice is not integral unimodular"));
    }
    if !is_semistable(l)? {
        return Err(Error::Validation("unimodular lattice found unstable".into()));
    }
    is_stable(l)
}

/// `[[a, 0], [b, 1/a]]` (rows are basis vectors) of the lattice scaled to covolume 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Rank2Reduction {
    pub a: f64,
    pub b: f64,
    pub in_domain: bool,
    /// Reduced Gram `[[A, B], [B, C]]` before scaling, `A <= C`, `0 <= 2B <= A`.
    pub gram: [Rat; 3],
}

/// Gauss reduction, normalized to covolume 1 and tested against the fundamental
/// domain `1 <= a <= sqrt(2/sqrt 3)`, `sqrt(a^2 - a^-2) <= b <= a - sqrt(a^2 - a^-2)`.
pub fn reduce_rank2(l: &Lattice) -> Result<Rank2Reduction> {
    if l.rank() != 2 {
        return Err(invalid!("rank-2 lattice required, got rank {}", l.rank()));
    }
    let g = l.gram();
    let (mut a, mut b, mut c) = (g[0][0].clone(), g[0][1].clone(), g[1][1].clone());
    loop {
        if c < a {
            std::mem::swap(&mut a, &mut c);
        }
        // b2 <- b2 - k b1 with k = round(B / A)
        let k = (&b / &a).round();
        if k.is_zero() {
            break;
        }
        c = &c - ri(2) * &k * &b + &k * &k * &a;
        b = &b - &k * &a;
        if c >= a {
            break;
        }
    }
    if b.is_negative() {
        b = -b;
    }
    let d = &a * &c - &b * &b;
    let in_domain = &a * &a >= d && &a * &a * ri(3) <= &d * ri(4) && c >= a && c >= ri(2) * &b;
    let (af, bf, df) = (to_f64(&a), to_f64(&b), to_f64(&d).sqrt());
    let a_n = (af / df).sqrt();
    Ok(Rank2Reduction { a: a_n, b: bf / df / a_n, in_domain, gram: [a, b, c] })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_lattices() {
        for n in 1..=3 {
            let z = Lattice::standard(n).unwrap();
            assert!(is_semistable(&z).unwrap());
            assert_eq!(hn_filtration(&z).unwrap().len(), 1);
            assert_eq!(unimodular_semistable_check(&z).unwrap(), n == 1);
        }
    }

    #[test]
    fn diagonal_half_two() {
        let l = Lattice::parse_basis("1/2 0 / 0 2").unwrap();
        assert!(!is_semistable(&l).unwrap());
        let h = hn_filtration(&l).unwrap();
        assert_eq!(h.len(), 2);
        let s = h.slopes();
        assert!((s[0] - 2f64.ln()).abs() < 1e-15 && (s[1] + 2f64.ln()).abs() < 1e-15);
        assert_eq!(h.steps[0].sublattice, vec![vec![1, 0]]);
        assert_eq!(&h.steps[0].covol2 * &h.steps[1].covol2, l.covol2());
    }

    #[test]
    fn three_step_filtration() {
        let l = Lattice::parse_gram("1/9 0 0 / 0 1 0 / 0 0 9").unwrap();
        let h = hn_filtration(&l).unwrap();
        assert_eq!(h.len(), 3);
        let s = h.slopes();
        assert!(s[0] > s[1] && s[1] > s[2]);
        let prod: Rat = h.steps.iter().map(|x| x.covol2.clone()).product();
        assert_eq!(prod, l.covol2());
    }

    #[test]
    fn completions_are_unimodular() {
        for v in [vec![3i64, 5, 7], vec![0, -4, 9], vec![6, 10, 15]] {
            let u = complete_vector(&v);
            let d = det(&to_rat_mat(&u));
            assert!(d == ri(1) || d == ri(-1));
            let g = v.iter().fold(0i64, |a, &b| a.gcd(&b));
            assert_eq!(columns(&u, 0..1)[0], v.iter().map(|x| x / g).collect::<Vec<_>>());
            let k = complete_kernel(&v.iter().map(|x| x / g).collect::<Vec<_>>());
            let d = det(&to_rat_mat(&k));
            assert!(d == ri(1) || d == ri(-1));
            for col in columns(&k, 0..2) {
                assert_eq!(col.iter().zip(&v).map(|(a, b)| a * b / g).sum::<i64>(), 0);
            }
        }
    }

    #[test]
    fn fundamental_domain() {
        let r = reduce_rank2(&Lattice::standard(2).unwrap()).unwrap();
        assert!(r.in_domain && (r.a - 1.0).abs() < 1e-15 && r.b == 0.0);
        let hex = reduce_rank2(&Lattice::parse_gram("2 1 / 1 2").unwrap()).unwrap();
        assert!(hex.in_domain);
        assert!((hex.a - (2.0 / 3f64.sqrt()).sqrt()).abs() < 1e-12);
        let un = reduce_rank2(&Lattice::parse_basis("2 0 / 0 1/2").unwrap()).unwrap();
        assert!(!un.in_domain);
        assert!((un.a - 0.5).abs() < 1e-15);
        let sk = reduce_rank2(&Lattice::parse_gram("1 7 / 7 50").unwrap()).unwrap();
        assert_eq!(sk.gram, [ri(1), ri(0), ri(1)]);
    }
}
