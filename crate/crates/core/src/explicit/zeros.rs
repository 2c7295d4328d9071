use std::path::Path;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::special::compensated_sum_c64;

/// Gate on the first entry: the lowest zero of `zeta` on the critical line.
pub const FIRST_ORDINATE: f64 = 14.134725;

/// Ascending positive ordinates `gamma_i` of zeros `1/2 + i gamma_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroTable {
    ordinates: Vec<f64>,
}

impl ZeroTable {
    pub fn new(ordinates: Vec<f64>) -> Result<Self> {
        let Some(&first) = ordinates.first() else {
            return Err(invalid!("zero table is empty"));
        };
        if let Some(i) = ordinates.iter().position(|g| !(g.is_finite() && *g > 0.0)) {
            return Err(invalid!("entry {} is not a positive ordinate", i + 1));
        }
        if let Some(i) = ordinates.windows(2).position(|w| w[1] <= w[0]) {
            return Err(invalid!("entries {} and {} are not strictly increasing", i + 1, i + 2));
        }
        if (first - FIRST_ORDINATE).abs() > 1e-3 {
            return Err(Error::Validation(format!("first ordinate {first} is not the first zeta zero {FIRST_ORDINATE}")));
        }
        Ok(ZeroTable { ordinates })
    }

    /// One decimal per line; blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut v = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let s = line.trim();
            if s.is_empty() || s.starts_with('#') {
                continue;
            }
            let g: f64 = s.parse().map_err(|_| invalid!("line {}: cannot parse `{s}`", i + 1))?;
            if !(g.is_finite() && g > 0.0) {
                return Err(invalid!("line {}: ordinate {s} is not positive", i + 1));
            }
            if v.last().is_some_and(|&p| g <= p) {
                return Err(invalid!("line {}: ordinate {s} is not larger than the previous one", i + 1));
            }
            v.push(g);
        }
        ZeroTable::new(v)
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    pub(crate) fn first(&self, k: usize) -> Result<&[f64]> {
        self.ordinates
            .get(..k)
            .ok_or_else(|| invalid!("K = {k} exceeds the {} zeros in the table", self.len()))
    }
}

pub fn load_zeros(path: impl AsRef<Path>) -> Result<ZeroTable> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| invalid!("{}: {e}", path.display()))?;
    ZeroTable::parse(&text)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CramerReport {
    /// `V_+^K(z) = sum_{i <= K} exp(z (1/2 + i gamma_i))`
    pub value: Complex64,
    /// `V_+^{floor(K/2)}(z)`
    pub half_value: Complex64,
    pub delta: f64,
}

pub fn cramer_partial(z: Complex64, k: usize, zeros: &ZeroTable) -> Result<CramerReport> {
    if !(z.im > 0.0) {
        return Err(Error::Domain(format!("Im z must be positive, got {z}")));
    }
    let g = zeros.first(k)?;
    let partial = |n: usize| compensated_sum_c64(g[..n].iter().map(|&t| (z * Complex64::new(0.5, t)).exp()));
    let value = partial(k);
    let half_value = partial(k / 2);
    Ok(CramerReport { value, half_value, delta: (value - half_value).norm() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rules() {
        let t = ZeroTable::parse("# c\n14.134725141735\n\n21.022039638772\n").unwrap();
        assert_eq!(t.len(), 2);
        assert!(ZeroTable::parse("").is_err());
        assert!(ZeroTable::parse("21.02\n14.13").is_err());
        assert!(ZeroTable::parse("14.134725\n-3").is_err());
        assert!(ZeroTable::parse("15.0").is_err());
        let e = ZeroTable::parse("14.134725\nabc").unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");
    }

    #[test]
    fn cramer_basics() {
        let t = ZeroTable::parse("14.134725141735\n21.022039638772\n25.010857580146").unwrap();
        let r = cramer_partial(Complex64::new(0.0, 1.0), 0, &t).unwrap();
        assert_eq!(r.value, Complex64::new(0.0, 0.0));
        assert!(cramer_partial(Complex64::new(1.0, 0.0), 2, &t).is_err());
        assert!(cramer_partial(Complex64::new(0.0, 1.0), 4, &t).is_err());
    }
}
