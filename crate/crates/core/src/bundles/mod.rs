//! Semistable bundles on an elliptic curve `E/F_q`: automorphism groups of
//! Atiyah-type bundles, S-equivalence classes and their strata, the masses
//! `alpha`, `beta`, `gamma`, and the Harder–Narasimhan mass recursion.

mod census;
mod mass;

pub use census::{
    invariant, invariant_table, strata_census, Census, CensusRow, InvariantKind, InvariantTable,
};
pub use mass::{hn_types, mass_recursion_beta, zeta_e_at, HnType};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::exact::{is_integer, ri, rpow, Rat};
use crate::fields::{
    count_points, group_structure, three_torsion_count, torsion_count, two_torsion_count,
    GroupStructure, WeierstrassCurve,
};
use crate::zeta::{artin_zeta_from_counts, nm, ZetaCurve};

/// How S-classes of semistable bundles are counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Convention {
    /// Split-bundle bookkeeping with fixed torsion counts (3 non-trivial 2-torsion
    /// points, 4 square roots, 9 cube roots) as in the classical worked examples.
    PaperSplit,
    /// Honest `F_q`-rational classes: Galois-stable graded objects, including
    /// conjugate orbits of line bundles defined over extensions.
    GaloisDescent,
}

impl Convention {
    pub fn name(&self) -> &'static str {
        match self {
            Convention::PaperSplit => "paper-split",
            Convention::GaloisDescent => "galois-descent",
        }
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper-split" | "paper" | "split" => Ok(Convention::PaperSplit),
            "galois-descent" | "descent" | "galois" => Ok(Convention::GaloisDescent),
            _ => Err(invalid!("unknown convention `{s}`")),
        }
    }
}

/// A degree-zero line bundle appearing in a graded object.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LineTag {
    Trivial,
    /// A non-trivial `F_q`-rational line bundle; ids only distinguish summands.
    Rational(u8),
    /// A Galois orbit of `degree` conjugate line bundles over `F_{q^degree}`.
    Orbit { degree: u32, id: u8 },
}

impl LineTag {
    pub fn orbit_degree(&self) -> u32 {
        match self {
            LineTag::Orbit { degree, .. } => *degree,
            _ => 1,
        }
    }
}

impl fmt::Display for LineTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineTag::Trivial => write!(f, "O"),
            LineTag::Rational(i) => write!(f, "L{i}"),
            LineTag::Orbit { degree, id } => write!(f, "Orb{degree}.{id}"),
        }
    }
}

/// `(+)_j I_{r_j} (x) L_j`: Atiyah bundle `I_r` twisted by a line (or orbit).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BundleDescriptor {
    pub summands: Vec<(u32, LineTag)>,
}

impl BundleDescriptor {
    pub fn new(mut summands: Vec<(u32, LineTag)>) -> Self {
        summands.sort_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)));
        BundleDescriptor { summands }
    }

    pub fn rank(&self) -> u32 {
        self.summands.iter().map(|(j, t)| j * t.orbit_degree()).sum()
    }
}

impl fmt::Display for BundleDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|(j, t)| if *j == 1 { t.to_string() } else { format!("I{j}{t}") })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Graded object `gr = (+) L^{m}` as (line, multiplicity) pairs.
pub type Graded = Vec<(LineTag, u32)>;

pub const MAX_RANK: u32 = 4;

fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Order of the centraliser of a nilpotent of Jordan type `lambda` in `GL(F_Q)`:
/// `Q^{sum lambda'_i^2} prod_i prod_{j <= m_i} (1 - Q^{-j})`.
fn centraliser_order(lambda: &[u32], qq: &Rat) -> Rat {
    let maxpart = lambda.iter().copied().max().unwrap_or(0);
    let conj_sq: i64 = (1..=maxpart)
        .map(|i| lambda.iter().filter(|&&l| l >= i).count() as i64)
        .map(|c| c * c)
        .sum();
    let mut v = rpow(qq, conj_sq);
    for i in 1..=maxpart {
        let m = lambda.iter().filter(|&&l| l == i).count() as i64;
        for j in 1..=m {
            v *= Rat::one() - rpow(qq, -j);
        }
    }
    v
}

/// `#Aut(V)` over `F_q`.
pub fn aut_order(b: &BundleDescriptor, q: u64) -> Result<BigInt> {
    if b.rank() == 0 || b.rank() > MAX_RANK {
        return Err(Error::Unsupported(format!("rank {} outside 1..={MAX_RANK}", b.rank())));
    }
    let mut blocks: BTreeMap<LineTag, Vec<u32>> = BTreeMap::new();
    for (j, t) in &b.summands {
        if *j == 0 {
            return Err(invalid!("empty Jordan block"));
        }
        blocks.entry(*t).or_default().push(*j);
    }
    let mut total = Rat::one();
    for (tag, lambda) in blocks {
        let qq = rpow(&ri(q as i64), tag.orbit_degree() as i64);
        total *= centraliser_order(&lambda, &qq);
    }
    debug_assert!(is_integer(&total));
    Ok(total.to_integer())
}

/// `h^0(V)` for a degree-zero bundle: one section per Jordan block of `O`.
pub fn h0_of_bundle(b: &BundleDescriptor) -> u32 {
    b.summands.iter().filter(|(_, t)| *t == LineTag::Trivial).count() as u32
}

/// All bundles in the S-class with graded object `gr`.
pub fn class_contents(gr: &Graded) -> Result<Vec<BundleDescriptor>> {
    let rank: u32 = gr.iter().map(|(t, m)| m * t.orbit_degree()).sum();
    if rank == 0 || rank > MAX_RANK {
        return Err(Error::Unsupported(format!("rank {rank} outside 1..={MAX_RANK}")));
    }
    let mut acc: Vec<Vec<(u32, LineTag)>> = vec![Vec::new()];
    for (t, m) in gr {
        let mut next = Vec::new();
        for base in &acc {
            for part in partitions(*m) {
                let mut b = base.clone();
                b.extend(part.iter().map(|&j| (j, *t)));
                next.push(b);
            }
        }
        acc = next;
    }
    Ok(acc.into_iter().map(BundleDescriptor::new).collect())
}

/// `(sum 1/#Aut, sum (q^{h0} - 1)/#Aut)` over the bundles of an S-class.
pub fn class_masses(gr: &Graded, q: u64) -> Result<(Rat, Rat)> {
    let qr = ri(q as i64);
    let mut beta = Rat::zero();
    let mut gamma = Rat::zero();
    for b in class_contents(gr)? {
        let inv = Rat::one() / Rat::from_integer(aut_order(&b, q)?);
        gamma += (rpow(&qr, h0_of_bundle(&b) as i64) - Rat::one()) * &inv;
        beta += inv;
    }
    Ok((beta, gamma))
}

/// Stratum `W^{a0; a1, ..., ak}`: multiplicity `a0` of `O` and the geometric
/// multiplicities of the other line bundles in `gr`, in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StratumKey {
    pub a0: u32,
    pub rest: Vec<u32>,
}

impl StratumKey {
    pub fn new(a0: u32, mut rest: Vec<u32>) -> Self {
        rest.sort_by(|a, b| b.cmp(a));
        StratumKey { a0, rest }
    }

    pub fn of_graded(gr: &Graded) -> Self {
        let mut a0 = 0;
        let mut rest = Vec::new();
        for (t, m) in gr {
            match t {
                LineTag::Trivial => a0 += m,
                LineTag::Rational(_) => rest.push(*m),
                LineTag::Orbit { degree, .. } => rest.extend((0..*degree).map(|_| *m)),
            }
        }
        StratumKey::new(a0, rest)
    }

    pub fn rank(&self) -> u32 {
        self.a0 + self.rest.iter().sum::<u32>()
    }
}

impl fmt::Display for StratumKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rest: Vec<String> = self.rest.iter().map(|m| m.to_string()).collect();
        let rest = if rest.is_empty() { "0".to_string() } else { rest.join(",") };
        write!(f, "({};{})", self.a0, rest)
    }
}

impl std::str::FromStr for StratumKey {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || invalid!("stratum key `{s}` is not of the form (a0;a1,...)");
        let inner = s.trim().strip_prefix('(').and_then(|x| x.strip_suffix(')')).ok_or_else(bad)?;
        let (a0, rest) = inner.split_once(';').ok_or_else(bad)?;
        let a0: u32 = a0.trim().parse().map_err(|_| bad())?;
        let mut v = Vec::new();
        for x in rest.split(',') {
            let m: u32 = x.trim().parse().map_err(|_| bad())?;
            if m > 0 {
                v.push(m);
            }
        }
        Ok(StratumKey::new(a0, v))
    }
}

/// Closure type of a stratum inside `M_{E,r}(lambda) = P^{r-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StratumShape {
    Point,
    ProjectiveLine,
    EllipticCurve,
    ProjectivePlane,
}

impl StratumShape {
    pub fn name(&self) -> &'static str {
        match self {
            StratumShape::Point => "point",
            StratumShape::ProjectiveLine => "P^1",
            StratumShape::EllipticCurve => "E",
            StratumShape::ProjectivePlane => "P^2",
        }
    }
}

/// The non-trivial lines move with one relation (their product is fixed): one free
/// line gives a point, two simple lines a `P^1`, `L^2 (+) M` a copy of `E`, three
/// simple lines a `P^2`.
pub fn bn_stratum_shape(key: &StratumKey) -> Result<StratumShape> {
    match key.rest.as_slice() {
        [] | [_] => Ok(StratumShape::Point),
        [1, 1] => Ok(StratumShape::ProjectiveLine),
        [2, 1] => Ok(StratumShape::EllipticCurve),
        [1, 1, 1] => Ok(StratumShape::ProjectivePlane),
        _ => Err(Error::Unsupported(format!("stratum {key} beyond rank 3"))),
    }
}

/// Everything the census needs about `E/F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticData {
    pub q: u64,
    pub n1: u64,
    /// `#E[2](F_q)` and `#E[3](F_q)`; needed only for Galois descent.
    pub e2: Option<u64>,
    pub e3: Option<u64>,
}

impl EllipticData {
    pub fn from_counts(q: u64, n1: u64) -> Self {
        EllipticData { q, n1, e2: None, e3: None }
    }

    pub fn with_group(q: u64, g: &GroupStructure) -> Self {
        EllipticData {
            q,
            n1: g.order(),
            e2: Some(torsion_count(g, 2)),
            e3: Some(torsion_count(g, 3)),
        }
    }

    /// Counts by enumeration; the torsion comes from division polynomials.
    pub fn from_curve(c: &WeierstrassCurve) -> Result<Self> {
        Ok(EllipticData {
            q: c.q(),
            n1: count_points(c, 1)?,
            e2: Some(two_torsion_count(c)),
            e3: Some(three_torsion_count(c)),
        })
    }

    /// Same as [`EllipticData::from_curve`] but with torsion read off `E(F_q)`.
    pub fn from_group_structure(c: &WeierstrassCurve) -> Result<Self> {
        Ok(EllipticData::with_group(c.q(), &group_structure(c)?))
    }

    pub fn zeta(&self) -> Result<ZetaCurve> {
        artin_zeta_from_counts(self.q, 1, &[self.n1])
    }

    pub fn q_rat(&self) -> Rat {
        ri(self.q as i64)
    }

    pub fn n1_rat(&self) -> Rat {
        ri(self.n1 as i64)
    }

    pub(crate) fn nm(&self, m: usize) -> Result<BigInt> {
        nm(&self.zeta()?, m)
    }

    pub(crate) fn torsion(&self) -> Result<(u64, u64)> {
        match (self.e2, self.e3) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(invalid!("Galois descent needs the 2- and 3-torsion of E(F_q)")),
        }
    }
}
