use std::f64::consts::PI;

use num_complex::Complex64;

use super::zeros::ZeroTable;
use crate::error::{invalid, Error, Result};
use crate::special::{compensated_sum, gauss_legendre};

/// Intersection symbols `<D_x, D_y>` on `[0, inf]` built from the first `K` zero pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct MicroModel {
    gammas: Vec<f64>,
}

impl MicroModel {
    pub fn new(zeros: &ZeroTable, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(invalid!("micro model needs K >= 1"));
        }
        Ok(MicroModel { gammas: zeros.first(k)?.to_vec() })
    }

    pub fn k(&self) -> usize {
        self.gammas.len()
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    /// `S_K(u) = sum_{i <= K} (u^{rho_i} + u^{conj rho_i})`
    pub fn zero_sum(&self, u: f64) -> f64 {
        if u == 0.0 {
            return 0.0;
        }
        let (r, l) = (u.sqrt(), u.ln());
        compensated_sum(self.gammas.iter().map(|g| 2.0 * r * (g * l).cos()))
    }

    /// `1 + x - S_K(x)`, the closed form of `<D_x, D_1>` on `[0, 1]` extended to all `x`.
    pub fn explicit_formula(&self, x: f64) -> f64 {
        1.0 + x - self.zero_sum(x)
    }

    /// `<D_u, D_1>` for `u` in `[0, 1]`.
    fn base(&self, u: f64) -> f64 {
        self.explicit_formula(u)
    }
}

fn check_point(x: f64) -> Result<()> {
    if x.is_nan() || x < 0.0 {
        return Err(invalid!("micro divisors are indexed by [0, inf], got {x}"));
    }
    Ok(())
}

/// Reduces `(x, y)` through symmetry, the mirror `x -> 1/x` and the two fixed-point
/// rules to `<D_u, D_1>` with `u` in `[0, 1]`. `f64::INFINITY` encodes `D_inf`.
pub fn micro_pairing(m: &MicroModel, x: f64, y: f64) -> Result<f64> {
    check_point(x)?;
    check_point(y)?;
    let (a, b) = if x <= y { (x, y) } else { (y, x) };
    Ok(if b <= 1.0 {
        if b == 0.0 {
            0.0
        } else {
            b * m.base(a / b)
        }
    } else if a <= 1.0 {
        m.base(if b.is_infinite() { 0.0 } else { a / b })
    } else if a.is_infinite() {
        0.0
    } else {
        m.base(if b.is_infinite() { 0.0 } else { a / b }) / a
    })
}

/// `f(x) = A exp(-(log x - mu)^2 / (2 sigma^2))`
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NFTestFn {
    pub mu: f64,
    pub sigma: f64,
    pub amplitude: f64,
}

impl NFTestFn {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        Self::with_amplitude(mu, sigma, 1.0)
    }

    pub fn with_amplitude(mu: f64, sigma: f64, amplitude: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite() && mu.is_finite() && amplitude.is_finite()) {
            return Err(invalid!("need finite mu, amplitude and sigma > 0"));
        }
        Ok(NFTestFn { mu, sigma, amplitude })
    }

    pub fn zero() -> Self {
        NFTestFn { mu: 0.0, sigma: 1.0, amplitude: 0.0 }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.eval_log(x.ln())
    }

    /// `f(e^u)`
    pub fn eval_log(&self, u: f64) -> f64 {
        let d = (u - self.mu) / self.sigma;
        self.amplitude * (-0.5 * d * d).exp()
    }

    /// `f^hat(s) = int_0^inf f(x) x^s dx/x = A sigma sqrt(2 pi) exp(mu s + sigma^2 s^2 / 2)`
    pub fn hat(&self, s: Complex64) -> Complex64 {
        (self.mu * s + 0.5 * self.sigma * self.sigma * s * s).exp() * (self.amplitude * self.sigma * (2.0 * PI).sqrt())
    }

    pub fn hat_re(&self, s: f64) -> f64 {
        self.hat(Complex64::new(s, 0.0)).re
    }

    /// `g^*(x) = g(1/x)/x`; the convolution `f * g^*` is again of this shape.
    pub fn convolve_star(&self, g: &NFTestFn) -> NFTestFn {
        let (sf, sg) = (self.sigma, g.sigma);
        let sh = (sf * sf + sg * sg).sqrt();
        let c = self.amplitude
            * g.amplitude
            * (g.mu + 0.5 * sg * sg).exp()
            * (2.0 * PI).sqrt()
            * sf
            * sg
            / sh;
        NFTestFn { mu: self.mu - g.mu - sg * sg, sigma: sh, amplitude: c }
    }

    /// Window in `log x` outside which `f` is below `exp(-72)` of its peak.
    fn window(&self) -> (f64, f64) {
        (self.mu - 12.0 * self.sigma, self.mu + 12.0 * self.sigma)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadSpec {
    /// Relative change between successive panel doublings accepted as converged.
    pub rel_tol: f64,
    pub max_doublings: u32,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec { rel_tol: 1e-10, max_doublings: 8 }
    }
}

impl QuadSpec {
    fn check(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-8) {
            return Err(invalid!("quadrature target must lie in (0, 1e-8], got {}", self.rel_tol));
        }
        Ok(())
    }
}

/// Nodes `(u, w)` of composite 20-point Gauss–Legendre on `[a, b]`.
fn nodes(a: f64, b: f64, panels: usize) -> Vec<(f64, f64)> {
    let rule = gauss_legendre(20);
    let h = (b - a) / panels as f64;
    (0..panels)
        .flat_map(|k| {
            let mid = a + (k as f64 + 0.5) * h;
            rule.iter().map(move |&(x, w)| (mid + 0.5 * h * x, 0.5 * h * w))
        })
        .collect()
}

/// Weight of `D_x` in `D_f^hat`: `1` on `[0, 1]`, `x` beyond.
fn weight(u: f64) -> f64 {
    if u <= 0.0 {
        1.0
    } else {
        u.exp()
    }
}

/// `int f(x) w(x) k(x) dx/x` in `u = log x`; `[0,1]` and `[1, inf)` are kept apart
/// because the weight has a kink at `x = 1`.
fn integrate_divisor(f: &NFTestFn, panels: usize, k: &dyn Fn(f64) -> Result<f64>) -> Result<f64> {
    let (a, b) = f.window();
    let mut terms = Vec::new();
    for (lo, hi) in split_at_zero(a, b) {
        for (u, w) in nodes(lo, hi, panels) {
            terms.push(w * f.eval_log(u) * weight(u) * k(u.exp())?);
        }
    }
    Ok(compensated_sum(terms))
}

fn split_at_zero(a: f64, b: f64) -> Vec<(f64, f64)> {
    if a < 0.0 && b > 0.0 {
        vec![(a, 0.0), (0.0, b)]
    } else {
        vec![(a, b)]
    }
}

fn integrate_pair(m: &MicroModel, f: &NFTestFn, g: &NFTestFn, panels: usize) -> Result<f64> {
    let (fa, fb) = f.window();
    let (ga, gb) = g.window();
    let xs: Vec<(f64, f64)> = split_at_zero(fa, fb)
        .into_iter()
        .flat_map(|(lo, hi)| nodes(lo, hi, panels))
        .map(|(u, w)| (u.exp(), w * f.eval_log(u) * weight(u)))
        .collect();
    let ys: Vec<(f64, f64)> = split_at_zero(ga, gb)
        .into_iter()
        .flat_map(|(lo, hi)| nodes(lo, hi, panels))
        .map(|(v, w)| (v.exp(), w * g.eval_log(v) * weight(v)))
        .collect();
    let rows = xs
        .iter()
        .map(|&(x, wx)| -> Result<f64> {
            let mut row = Vec::with_capacity(ys.len());
            for &(y, wy) in &ys {
                row.push(wy * micro_pairing(m, x, y)?);
            }
            Ok(wx * compensated_sum(row))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(compensated_sum(rows))
}

#[derive(Clone, Debug, PartialEq)]
pub struct GlobalPairingReport {
    /// `<D_f^hat, D_0>`
    pub d0: f64,
    /// `<D_f^hat, D_inf>`
    pub d_inf: f64,
    /// `<D_f^hat, D_1>`
    pub d1: f64,
    /// `<D_f^hat, D_g^hat>`
    pub fg: f64,
    /// `d0 - f^hat(1)`
    pub deg1_residual: f64,
    /// `d_inf - f^hat(0)`
    pub deg2_residual: f64,
    /// `<D_f^hat, D_g^hat> - <D_{f * g^*}, D_1>` at each panel doubling.
    pub fixed_point_history: Vec<f64>,
    pub fixed_point_residual: f64,
    /// `d1 - (f^hat(0) + f^hat(1) - sum_{i <= K} 2 Re f^hat(1/2 + i gamma_i))`
    pub explicit_residual: f64,
    pub panels: usize,
}

fn truncated_zero_sum(m: &MicroModel, f: &NFTestFn) -> f64 {
    compensated_sum(m.gammas().iter().map(|&g| 2.0 * f.hat(Complex64::new(0.5, g)).re))
}

struct Level {
    d0: f64,
    d_inf: f64,
    d1: f64,
    fg: f64,
    h1: f64,
}

fn level(m: &MicroModel, f: &NFTestFn, g: &NFTestFn, panels: usize) -> Result<Level> {
    let h = f.convolve_star(g);
    Ok(Level {
        d0: integrate_divisor(f, panels, &|x| micro_pairing(m, 0.0, x))?,
        d_inf: integrate_divisor(f, panels, &|x| micro_pairing(m, f64::INFINITY, x))?,
        d1: integrate_divisor(f, panels, &|x| micro_pairing(m, x, 1.0))?,
        fg: integrate_pair(m, f, g, panels)?,
        h1: integrate_divisor(&h, panels, &|x| micro_pairing(m, x, 1.0))?,
    })
}

pub fn global_pairing(m: &MicroModel, f: &NFTestFn, g: &NFTestFn, quad: &QuadSpec) -> Result<GlobalPairingReport> {
    quad.check()?;
    let gmax = m.gammas().last().copied().unwrap_or(0.0);
    // about one panel per oscillation of the highest zero across the widest window
    let width = 24.0 * f.sigma.max(g.sigma).max(f.convolve_star(g).sigma);
    let mut panels = ((width * (1.0 + gmax) / (2.0 * PI)).ceil() as usize / 4).max(2);
    let mut prev = level(m, f, g, panels)?;
    let mut history = vec![prev.fg - prev.h1];
    for _ in 0..quad.max_doublings {
        panels *= 2;
        let cur = level(m, f, g, panels)?;
        history.push(cur.fg - cur.h1);
        let pairs = [(cur.d0, prev.d0), (cur.d_inf, prev.d_inf), (cur.d1, prev.d1), (cur.fg, prev.fg), (cur.h1, prev.h1)];
        let done = pairs.iter().all(|&(c, p)| (c - p).abs() <= quad.rel_tol * c.abs().max(1.0));
        prev = cur;
        if done {
            let explicit = f.hat_re(0.0) + f.hat_re(1.0) - truncated_zero_sum(m, f);
            return Ok(GlobalPairingReport {
                d0: prev.d0,
                d_inf: prev.d_inf,
                d1: prev.d1,
                fg: prev.fg,
                deg1_residual: prev.d0 - f.hat_re(1.0),
                deg2_residual: prev.d_inf - f.hat_re(0.0),
                fixed_point_residual: prev.fg - prev.h1,
                fixed_point_history: history,
                explicit_residual: prev.d1 - explicit,
                panels,
            });
        }
    }
    Err(Error::Numerical(format!("global pairing quadrature did not settle at {panels} panels")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(k: usize) -> MicroModel {
        let t = ZeroTable::parse(include_str!("../../data/zeros100.txt")).unwrap();
        MicroModel::new(&t, k).unwrap()
    }

    #[test]
    fn normalization() {
        let m = model(5);
        assert_eq!(micro_pairing(&m, 0.0, 0.0).unwrap(), 0.0);
        assert_eq!(micro_pairing(&m, 0.0, 1.0).unwrap(), 1.0);
        assert_eq!(micro_pairing(&m, f64::INFINITY, f64::INFINITY).unwrap(), 0.0);
        for x in [0.0, 0.2, 0.7, 1.0] {
            assert!((micro_pairing(&m, 0.0, x).unwrap() - x).abs() < 1e-15);
            assert!((micro_pairing(&m, f64::INFINITY, x).unwrap() - 1.0).abs() < 1e-15);
        }
        for x in [1.0, 3.0, 40.0] {
            assert!((micro_pairing(&m, 0.0, x).unwrap() - 1.0).abs() < 1e-15);
            assert!((micro_pairing(&m, f64::INFINITY, x).unwrap() - 1.0 / x).abs() < 1e-15);
        }
        assert!((micro_pairing(&m, 1.0, 1.0).unwrap() - (2.0 - 10.0)).abs() < 1e-12);
        assert!(micro_pairing(&m, -1.0, 1.0).is_err());
    }

    #[test]
    fn remark_route() {
        let m = model(20);
        for x in [1.5, 2.0, 7.25, 100.0] {
            let direct = m.explicit_formula(x);
            let via = x * micro_pairing(&m, 1.0 / x, 1.0).unwrap();
            assert!((direct - via).abs() < 1e-12 * direct.abs().max(1.0), "{x}: {direct} {via}");
        }
    }

    #[test]
    fn zero_function() {
        let m = model(3);
        let z = NFTestFn::zero();
        let r = global_pairing(&m, &z, &z, &QuadSpec::default()).unwrap();
        assert_eq!((r.d0, r.d_inf, r.d1, r.fg), (0.0, 0.0, 0.0, 0.0));
        assert_eq!(r.explicit_residual, 0.0);
    }

    #[test]
    fn star_convolution_mellin() {
        let f = NFTestFn::with_amplitude(0.3, 0.2, 1.5).unwrap();
        let g = NFTestFn::new(-0.1, 0.15).unwrap();
        let h = f.convolve_star(&g);
        for s in [Complex64::new(0.0, 0.0), Complex64::new(0.5, 3.0), Complex64::new(1.2, -1.0)] {
            let want = f.hat(s) * g.hat(1.0 - s);
            assert!((h.hat(s) - want).norm() < 1e-13 * want.norm());
        }
    }
}

#[cfg(test)]
mod quad_tests {
    use super::*;

    #[test]
    fn key_relations() {
        let t = ZeroTable::parse(include_str!("../../data/zeros100.txt")).unwrap();
        let m = MicroModel::new(&t, 10).unwrap();
        let f = NFTestFn::new(0.0, 0.1).unwrap();
        let g = NFTestFn::new(0.2, 0.15).unwrap();
        let r = global_pairing(&m, &f, &g, &QuadSpec::default()).unwrap();
        assert!((f.hat_re(0.0) - 0.1 * (2.0 * PI).sqrt()).abs() < 1e-15);
        assert!(r.deg1_residual.abs() < 1e-6 && r.deg2_residual.abs() < 1e-6, "{r:?}");
        assert!(r.fixed_point_residual.abs() < 1e-8, "{r:?}");
        assert!(r.explicit_residual.abs() < 1e-8, "{r:?}");
        let h = &r.fixed_point_history;
        assert!(h.last().unwrap().abs() <= h[0].abs());
    }
}
