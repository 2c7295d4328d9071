//! Double-precision helpers: compensated summation, the complex digamma
//! function and Gauss–Legendre rules.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Neumaier's variant of Kahan summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(it: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in it {
            s.add(x);
        }
        s
    }
}

pub fn compensated_sum<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    it.into_iter().collect::<CompensatedSum>().value()
}

pub fn compensated_sum_c64<I: IntoIterator<Item = Complex64>>(it: I) -> Complex64 {
    let (mut re, mut im) = (CompensatedSum::new(), CompensatedSum::new());
    for z in it {
        re.add(z.re);
        im.add(z.im);
    }
    Complex64::new(re.value(), im.value())
}

// B_{2k} / (2k) for k = 1..=8
const DIGAMMA_COEF: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

/// `psi(z) = Gamma'(z)/Gamma(z)` for `Re z > 0`, to about 1e-14 relative.
pub fn digamma(z: Complex64) -> Complex64 {
    let mut z = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while z.norm() < 16.0 {
        acc -= z.inv();
        z += 1.0;
    }
    let w = (z * z).inv();
    let mut tail = Complex64::new(0.0, 0.0);
    let mut wp = w;
    for c in DIGAMMA_COEF {
        tail += wp * c;
        wp *= w;
    }
    acc + z.ln() - (2.0 * z).inv() - tail
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pm = if n <= 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out.reverse();
    out
}

/// `int_a^b f` by composite Gauss–Legendre with `panels` equal panels.
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, rule: &[(f64, f64)], panels: usize) -> Complex64 {
    let h = (b - a) / panels as f64;
    let mut terms = Vec::with_capacity(panels * rule.len());
    for k in 0..panels {
        let mid = a + (k as f64 + 0.5) * h;
        for &(x, w) in rule {
            terms.push(f(mid + 0.5 * h * x) * (0.5 * h * w));
        }
    }
    compensated_sum_c64(terms)
}
