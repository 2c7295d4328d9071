use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{class_masses, Convention, EllipticData, Graded, LineTag, StratumKey};
use crate::error::{Error, Result};
use crate::exact::{rbig, rpow, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub stratum: StratumKey,
    /// Representative graded object of the classes counted in this row.
    pub gr: Graded,
    /// Number of S-classes (may be negative for split bookkeeping at small `q`).
    pub classes: BigInt,
    /// Per-class `sum 1/#Aut`.
    pub beta: Rat,
    /// Per-class `sum (q^{h0} - 1)/#Aut`.
    pub gamma: Rat,
}

/// S-classes of `M_{E,r}(lambda)`, for `lambda = O` except under split
/// bookkeeping in rank 3, where the classical table is for `lambda != O`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub rank: u32,
    pub convention: Convention,
    pub lambda_trivial: bool,
    pub rows: Vec<CensusRow>,
}

impl Census {
    pub fn total_classes(&self) -> BigInt {
        self.rows.iter().map(|r| &r.classes).sum()
    }

    pub fn beta(&self) -> Rat {
        self.rows.iter().map(|r| rbig(r.classes.clone()) * &r.beta).sum()
    }

    pub fn gamma(&self) -> Rat {
        self.rows.iter().map(|r| rbig(r.classes.clone()) * &r.gamma).sum()
    }

    /// Rows merged by stratum, in key order: `(key, classes, beta mass)`.
    pub fn by_stratum(&self) -> Vec<(StratumKey, BigInt, Rat)> {
        let mut m: BTreeMap<StratumKey, (BigInt, Rat)> = BTreeMap::new();
        for r in &self.rows {
            let e = m.entry(r.stratum.clone()).or_insert((BigInt::zero(), Rat::zero()));
            e.0 += &r.classes;
            e.1 += rbig(r.classes.clone()) * &r.beta;
        }
        m.into_iter().map(|(k, (c, b))| (k, c, b)).collect()
    }
}

const O: LineTag = LineTag::Trivial;
const fn l(i: u8) -> LineTag {
    LineTag::Rational(i)
}
const fn orb(d: u32) -> LineTag {
    LineTag::Orbit { degree: d, id: 0 }
}

fn exact_div(n: BigInt, d: i64, what: &str) -> Result<BigInt> {
    let (qt, r) = n.div_rem(&BigInt::from(d));
    if !r.is_zero() || qt.is_negative() {
        return Err(Error::Validation(format!("{what}: {n}/{d} is not a class count")));
    }
    Ok(qt)
}

fn split_rows(r: u32, e: &EllipticData) -> Vec<(Graded, BigInt)> {
    let q = BigInt::from(e.q);
    let n1 = BigInt::from(e.n1);
    let b = |x: i64| BigInt::from(x);
    match r {
        1 => vec![(vec![(O, 1)], b(1))],
        2 => vec![
            (vec![(O, 2)], b(1)),
            (vec![(l(0), 2)], b(3)),
            (vec![(l(0), 1), (l(1), 1)], &q + 1 - 4),
        ],
        _ => vec![
            (vec![(O, 2), (l(0), 1)], b(1)),
            (vec![(O, 1), (l(0), 2)], b(4)),
            (vec![(O, 1), (l(0), 1), (l(1), 1)], &q - 4),
            (vec![(l(0), 3)], b(9)),
            (vec![(l(0), 2), (l(1), 1)], &n1 - 14),
            (vec![(l(0), 1), (l(1), 1), (l(2), 1)], &q * &q - (&n1 - 5)),
        ],
    }
}

fn descent_rows(r: u32, e: &EllipticData) -> Result<Vec<(Graded, BigInt)>> {
    let q = BigInt::from(e.q);
    let n1 = BigInt::from(e.n1);
    let b = |x: u64| BigInt::from(x);
    if r == 1 {
        return Ok(vec![(vec![(O, 1)], b(1))]);
    }
    let (e2, e3) = e.torsion()?;
    let (e2, e3) = (b(e2), b(e3));
    // {L, L^-1} with L rational of order > 2, and conjugate pairs with Frob(L) = L^-1
    let rational_pairs = exact_div(&n1 - &e2, 2, "rational pairs")?;
    let twisted_pairs = exact_div(2 * &q + 2 - &n1 - &e2, 2, "conjugate pairs")?;
    if r == 2 {
        return Ok(vec![
            (vec![(O, 2)], b(1)),
            (vec![(l(0), 2)], &e2 - 1),
            (vec![(l(0), 1), (l(1), 1)], rational_pairs),
            (vec![(orb(2), 1)], twisted_pairs),
        ]);
    }
    let n2 = e.nm(2)?;
    let n3 = e.nm(3)?;
    let (norm_zero, rem) = n3.div_rem(&n1);
    if !rem.is_zero() {
        return Err(Error::Validation("N_1 does not divide N_3".into()));
    }
    let triples = exact_div(&n1 * &n1 - 3 * &n1 + 2 * &e3, 6, "rational triples")?;
    let pair_plus_line = exact_div(&n2 - &n1, 2, "conjugate pair plus line")?;
    let cubic_orbits = exact_div(norm_zero - &e3, 3, "norm-zero orbits")?;
    Ok(vec![
        (vec![(O, 3)], b(1)),
        (vec![(l(0), 3)], &e3 - 1),
        (vec![(O, 1), (l(0), 2)], &e2 - 1),
        (vec![(l(0), 2), (l(1), 1)], &n1 - &e3 - (&e2 - 1)),
        (vec![(O, 1), (l(0), 1), (l(1), 1)], rational_pairs.clone()),
        (vec![(O, 1), (orb(2), 1)], twisted_pairs.clone()),
        (vec![(l(0), 1), (l(1), 1), (l(2), 1)], triples - rational_pairs),
        (vec![(l(0), 1), (orb(2), 1)], pair_plus_line - twisted_pairs),
        (vec![(orb(3), 1)], cubic_orbits),
    ])
}

/// S-class census of `M_{E,r}(lambda)` for `r <= 3`.
pub fn strata_census(r: u32, e: &EllipticData, conv: Convention) -> Result<Census> {
    if !(1..=3).contains(&r) {
        return Err(Error::Unsupported(format!("census implemented for rank 1..=3, got {r}")));
    }
    let raw = match conv {
        Convention::PaperSplit => split_rows(r, e),
        Convention::GaloisDescent => descent_rows(r, e)?,
    };
    let mut rows = Vec::with_capacity(raw.len());
    for (gr, classes) in raw {
        if conv == Convention::GaloisDescent && classes.is_negative() {
            return Err(Error::Validation(format!("negative class count for {gr:?}")));
        }
        let (beta, gamma) = class_masses(&gr, e.q)?;
        rows.push(CensusRow { stratum: StratumKey::of_graded(&gr), gr, classes, beta, gamma });
    }
    Ok(Census {
        rank: r,
        convention: conv,
        lambda_trivial: !(conv == Convention::PaperSplit && r == 3),
        rows,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InvariantKind {
    Alpha,
    Beta,
    Gamma,
}

impl std::str::FromStr for InvariantKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alpha" => Ok(InvariantKind::Alpha),
            "beta" => Ok(InvariantKind::Beta),
            "gamma" => Ok(InvariantKind::Gamma),
            _ => Err(crate::error::invalid!("unknown invariant `{s}`")),
        }
    }
}

pub type InvariantTable = BTreeMap<(InvariantKind, u32, i64), Rat>;

/// `beta(d)` and `gamma(0)` of `M_{E,r}(d)` (all determinants of degree `d`).
fn beta_gamma0(r: u32, d: i64, e: &EllipticData, conv: Convention) -> Result<(Rat, Rat)> {
    let stable = e.n1_rat() / (e.q_rat() - Rat::one());
    if r == 1 {
        return Ok((stable, Rat::one()));
    }
    let c = strata_census(r, e, conv)?;
    let gamma0 = e.n1_rat() * c.gamma();
    if d.rem_euclid(r as i64) != 0 {
        return Ok((stable, gamma0));
    }
    Ok((e.n1_rat() * c.beta(), gamma0))
}

/// `alpha_{E,r}(d)`, `beta_{E,r}(d)` or `gamma_{E,r}(d) = alpha - beta`.
///
/// Semistable bundles of degree `d > 0` have `h^0 = d` and those of negative degree
/// have none, so only `d = 0` needs sections counted class by class.
pub fn invariant(kind: InvariantKind, r: u32, d: i64, e: &EllipticData, conv: Convention) -> Result<Rat> {
    let (beta, gamma0) = beta_gamma0(r, d, e, conv)?;
    let gamma = match d {
        0 => gamma0,
        d if d < 0 => Rat::zero(),
        d => (rpow(&e.q_rat(), d) - Rat::one()) * &beta,
    };
    Ok(match kind {
        InvariantKind::Beta => beta,
        InvariantKind::Gamma => gamma,
        InvariantKind::Alpha => beta + gamma,
    })
}

pub fn invariant_table(
    r: u32,
    degrees: std::ops::RangeInclusive<i64>,
    e: &EllipticData,
    conv: Convention,
) -> Result<InvariantTable> {
    let mut t = InvariantTable::new();
    for d in degrees {
        for k in [InvariantKind::Alpha, InvariantKind::Beta, InvariantKind::Gamma] {
            t.insert((k, r, d), invariant(k, r, d, e, conv)?);
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ri};

    fn curve_data(q: u64, n1: u64) -> EllipticData {
        EllipticData::from_counts(q, n1)
    }

    #[test]
    fn split_rank_two_strata() {
        let c = strata_census(2, &curve_data(5, 9), Convention::PaperSplit).unwrap();
        let s: Vec<(String, BigInt)> =
            c.by_stratum().into_iter().map(|(k, n, _)| (k.to_string(), n)).collect();
        assert_eq!(
            s,
            vec![
                ("(0;1,1)".to_string(), BigInt::from(2)),
                ("(0;2)".to_string(), BigInt::from(3)),
                ("(2;0)".to_string(), BigInt::from(1)),
            ]
        );
    }

    #[test]
    fn descent_totals_are_projective_space_counts() {
        let e = EllipticData { q: 5, n1: 9, e2: Some(1), e3: Some(3) };
        for r in 1..=3u32 {
            let c = strata_census(r, &e, Convention::GaloisDescent).unwrap();
            assert_eq!(c.total_classes(), BigInt::from((5u64.pow(r) - 1) / 4));
        }
    }

    #[test]
    fn rank_two_betas() {
        use InvariantKind::*;
        let e = EllipticData { q: 5, n1: 9, e2: Some(1), e3: Some(3) };
        assert_eq!(invariant(Beta, 2, 0, &e, Convention::GaloisDescent).unwrap(), rat(99, 32));
        assert_eq!(invariant(Beta, 2, 0, &e, Convention::PaperSplit).unwrap(), ri(9 * 8) / ri(24));
        assert_eq!(invariant(Gamma, 2, 0, &e, Convention::PaperSplit).unwrap(), rat(9, 4));
        assert_eq!(invariant(Gamma, 2, 0, &e, Convention::GaloisDescent).unwrap(), rat(9, 4));
        assert_eq!(invariant(Beta, 2, 1, &e, Convention::PaperSplit).unwrap(), rat(9, 4));
        assert_eq!(invariant(Beta, 3, 2, &e, Convention::PaperSplit).unwrap(), rat(9, 4));
        assert_eq!(
            invariant(Gamma, 3, 0, &e, Convention::PaperSplit).unwrap(),
            ri(9 * 8) / ri(24)
        );
    }
}
