use num_traits::Zero;

use super::Lattice;
use crate::error::{Error, Result};
use crate::exact::Rat;

/// Maximum number of enumeration nodes visited per call.
pub const ENUM_BUDGET: u64 = 20_000_000;

/// `Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2`
fn quadratic_form(g: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = g.len();
    let mut q: Vec<Vec<f64>> = g.to_vec();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    q
}

/// All nonzero coefficient vectors with `|v|^2 <= r2` (up to a relative slack of
/// 1e-9 in the float enumeration; the returned norms are exact), one of each `+-v` pair
/// when `halve` is set.
pub fn short_vectors(l: &Lattice, r2: f64, halve: bool) -> Result<Vec<(Vec<i64>, Rat)>> {
    let n = l.rank();
    let q = quadratic_form(&l.gram_f64());
    let bound = r2 * (1.0 + 1e-9) + 1e-12;
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    let mut nodes = 0u64;
    rec(&q, n, bound, 0.0, &mut x, &mut nodes, &mut |v: &[i64]| {
        if v.iter().all(|&c| c == 0) {
            return;
        }
        if halve {
            // keep v whose last nonzero coordinate is positive
            if v.iter().rev().find(|&&c| c != 0).is_some_and(|&c| c < 0) {
                return;
            }
        }
        let nv = l.norm2(v);
        out.push((v.to_vec(), nv));
    })?;
    Ok(out)
}

fn rec(
    q: &[Vec<f64>],
    level: usize,
    bound: f64,
    used: f64,
    x: &mut Vec<i64>,
    nodes: &mut u64,
    emit: &mut dyn FnMut(&[i64]),
) -> Result<()> {
    if level == 0 {
        emit(x);
        return Ok(());
    }
    let i = level - 1;
    let n = q.len();
    let c: f64 = -(i + 1..n).map(|j| q[i][j] * x[j] as f64).sum::<f64>();
    let room = (bound - used).max(0.0) / q[i][i];
    let w = room.sqrt();
    let (lo, hi) = ((c - w).ceil() as i64, (c + w).floor() as i64);
    for xi in lo..=hi {
        *nodes += 1;
        if *nodes > ENUM_BUDGET {
            return Err(Error::Resource(format!("lattice enumeration exceeded {ENUM_BUDGET} nodes")));
        }
        let t = xi as f64 - c;
        let u = used + q[i][i] * t * t;
        if u <= bound {
            x[i] = xi;
            rec(q, level - 1, bound, u, x, nodes, emit)?;
        }
    }
    x[i] = 0;
    Ok(())
}

/// A shortest nonzero vector and its exact squared length; among several, the first
/// in enumeration order.
pub fn shortest_vector(l: &Lattice) -> Result<(Vec<i64>, Rat)> {
    let r2 = l
        .gram()
        .iter()
        .enumerate()
        .map(|(i, r)| crate::exact::to_f64(&r[i]))
        .fold(f64::INFINITY, f64::min);
    let cands = short_vectors(l, r2, true)?;
    let mut best: Option<(Vec<i64>, Rat)> = None;
    for (v, nv) in cands {
        if nv.is_zero() {
            continue;
        }
        if best.as_ref().is_none_or(|(_, b)| nv < *b) {
            best = Some((v, nv));
        }
    }
    best.ok_or_else(|| Error::Numerical("enumeration found no nonzero vector".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ri;

    #[test]
    fn counts_in_z2() {
        let l = Lattice::standard(2).unwrap();
        // norms 1, 2, 4: (+-1,0),(0,+-1); 4 diagonal; (+-2,0),(0,+-2)
        assert_eq!(short_vectors(&l, 4.0, false).unwrap().len(), 12);
        assert_eq!(short_vectors(&l, 4.0, true).unwrap().len(), 6);
        assert_eq!(shortest_vector(&l).unwrap().1, ri(1));
    }

    #[test]
    fn skewed_basis() {
        // basis (1,0),(100,1): shortest vectors still have length 1
        let l = Lattice::parse_basis("1 100 / 0 1").unwrap();
        let (v, n) = shortest_vector(&l).unwrap();
        assert_eq!(n, ri(1));
        assert_eq!(l.norm2(&v), ri(1));
    }
}
