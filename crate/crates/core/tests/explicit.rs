mod common;

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zetalab::exact::{rat, ri, Rat};
use zetalab::explicit::{
    cramer_partial, ff_explicit_formula_check, ff_hodge_defect, ff_pairing, ff_positivity, global_pairing,
    load_zeros, micro_pairing, riemann_weil_residual, FFTestFn, MicroModel, NFTestFn, QuadSpec, ZeroTable,
};
use zetalab::lattice::xi_q;
use zetalab::zeta::{artin_zeta_from_counts, zeta_of_curve, ZetaCurve};

fn zeros() -> ZeroTable {
    load_zeros(concat!(env!("CARGO_MANIFEST_DIR"), "/data/zeros100.txt")).unwrap()
}

fn random_ff(rng: &mut ChaCha8Rng, q: u64, lo: i64, hi: i64) -> FFTestFn {
    FFTestFn::new(q, (lo..=hi).map(|n| (n, rat(rng.gen_range(-6..=6), rng.gen_range(1..=4)))))
}

fn two_curves() -> Vec<ZetaCurve> {
    let g = common::gallery();
    vec![zeta_of_curve(&g[0]).unwrap(), zeta_of_curve(&g[6]).unwrap()]
}

#[test]
fn function_field_exactness() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for zc in two_curves() {
        for _ in 0..100 {
            let (lo, hi) = (rng.gen_range(-3..=0), rng.gen_range(0..=3));
            let f = random_ff(&mut rng, zc.q(), lo, hi);
            assert!(ff_explicit_formula_check(&zc, &f).unwrap());
            let pos = ff_positivity(&zc, &f).unwrap();
            assert!(pos >= Rat::zero());
            assert_eq!(ff_hodge_defect(&zc, &f).unwrap(), pos);
        }
    }
    // genus 2 as well
    let zc = artin_zeta_from_counts(7, 2, &[8, 64]).unwrap();
    for _ in 0..20 {
        let f = random_ff(&mut rng, 7, -2, 2);
        assert!(ff_explicit_formula_check(&zc, &f).unwrap());
        assert_eq!(ff_hodge_defect(&zc, &f).unwrap(), ff_positivity(&zc, &f).unwrap());
    }
}

#[test]
fn delta_examples() {
    for c in common::gallery() {
        let zc = zeta_of_curve(&c).unwrap();
        let q = zc.q() as i64;
        let d1 = FFTestFn::delta(zc.q(), 1);
        let p = ff_pairing(&zc, &d1, &d1).unwrap();
        assert_eq!((p.deg1, p.deg2, p.diag), (ri(q), ri(1), ri(zc.n1() as i64)));
        assert_eq!(ff_positivity(&zc, &d1).unwrap(), ri(2 * q));
        assert_eq!(ff_hodge_defect(&zc, &d1).unwrap(), ri(2 * q));
        assert_eq!(ff_positivity(&zc, &FFTestFn::delta(zc.q(), 0)).unwrap(), ri(2));
        let z = FFTestFn::zero(zc.q());
        let p0 = ff_pairing(&zc, &z, &z).unwrap();
        assert!(p0.deg1.is_zero() && p0.deg2.is_zero() && p0.diag.is_zero() && p0.cross.is_zero());
        assert!(ff_explicit_formula_check(&zc, &z).unwrap());
    }
}

#[test]
fn cross_two_ways_and_bilinearity() {
    let zc = zeta_of_curve(&common::gallery()[0]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let lin = |a: &FFTestFn, ca: &Rat, b: &FFTestFn, cb: &Rat| {
        FFTestFn::new(5, (-3..=3).map(|n| (n, ca * a.at(n) + cb * b.at(n))))
    };
    for _ in 0..30 {
        let f = random_ff(&mut rng, 5, -3, 3);
        let f2 = random_ff(&mut rng, 5, -3, 3);
        let g = random_ff(&mut rng, 5, -3, 3);
        let p = ff_pairing(&zc, &f, &g).unwrap();
        assert_eq!(p.cross, p.cross_fixed_point);
        let (a, b) = (rat(rng.gen_range(-5..=5), 3), rat(rng.gen_range(-5..=5), 2));
        let h = lin(&f, &a, &f2, &b);
        let lhs = ff_pairing(&zc, &h, &g).unwrap().cross;
        let rhs = &a * p.cross + &b * ff_pairing(&zc, &f2, &g).unwrap().cross;
        assert_eq!(lhs, rhs);
        let lhs = ff_pairing(&zc, &g, &h).unwrap().cross;
        let rhs = &a * ff_pairing(&zc, &g, &f).unwrap().cross + &b * ff_pairing(&zc, &g, &f2).unwrap().cross;
        assert_eq!(lhs, rhs);
    }
}

/// Zeros of `xi` in `[-1/2, 3/2] x [lo, hi]` by the change of argument along the boundary.
fn winding(lo: f64, hi: f64) -> f64 {
    let corners = [
        Complex64::new(-0.5, lo),
        Complex64::new(1.5, lo),
        Complex64::new(1.5, hi),
        Complex64::new(-0.5, hi),
    ];
    let mut total = 0.0;
    for k in 0..4 {
        let (a, b) = (corners[k], corners[(k + 1) % 4]);
        let steps = 400;
        let mut prev = xi_q(a, 1e-12).unwrap();
        for j in 1..=steps {
            let z = a + (b - a) * (j as f64 / steps as f64);
            let cur = xi_q(z, 1e-12).unwrap();
            total += (cur / prev).arg();
            prev = cur;
        }
    }
    total / (2.0 * PI)
}

#[test]
fn first_zero_gate() {
    assert!(winding(5.0, 14.0).abs() < 1e-6);
    assert!((winding(5.0, 14.3) - 1.0).abs() < 1e-6);
    // xi is real on the critical line: bisect the sign change
    let f = |t: f64| xi_q(Complex64::new(0.5, t), 1e-13).unwrap().re;
    let (mut a, mut b) = (14.0, 14.3);
    assert!(f(a) * f(b) < 0.0);
    for _ in 0..50 {
        let m = 0.5 * (a + b);
        if f(a) * f(m) <= 0.0 {
            b = m;
        } else {
            a = m;
        }
    }
    let t = zeros();
    assert_eq!(t.len(), 100);
    assert!((t.ordinates()[0] - a).abs() < 1e-6, "{a}");
    assert!(ZeroTable::parse("14.2\n20.0").is_err());
}

#[test]
fn riemann_weil() {
    let t = zeros();
    let q = QuadSpec::default();
    let f = NFTestFn::new(0.1, 0.05).unwrap();
    let r: Vec<f64> = [25, 50, 100]
        .iter()
        .map(|&k| riemann_weil_residual(&f, &t, k, 10_000, &q).unwrap().residual.abs())
        .collect();
    assert!(r[2] < 1e-3, "{r:?}");
    for w in r.windows(2) {
        assert!(w[1] <= w[0] || w[1] < 1e-6, "{r:?}");
    }
    assert_eq!(riemann_weil_residual(&NFTestFn::zero(), &t, 100, 10_000, &q).unwrap().residual, 0.0);
    // between 5 and 7 the prime sum vanishes and the zeros balance the poles and the archimedean part
    let g = NFTestFn::new(6f64.ln(), 0.03).unwrap();
    let rep = riemann_weil_residual(&g, &t, 100, 10_000, &q).unwrap();
    assert!(rep.prime_sum.abs() < 1e-4, "{rep:?}");
    assert!((rep.zero_sum - (rep.poles + rep.archimedean)).abs() < 1e-2, "{rep:?}");
}

#[test]
fn global_pairing_relations() {
    let t = zeros();
    let m = MicroModel::new(&t, 20).unwrap();
    let f = NFTestFn::new(0.0, 0.1).unwrap();
    assert!((f.hat_re(0.0) - 0.1 * (2.0 * PI).sqrt()).abs() < 1e-15);
    let g = NFTestFn::new(-0.15, 0.12).unwrap();
    for k in [5, 20] {
        let m = MicroModel::new(&t, k).unwrap();
        let r = global_pairing(&m, &f, &g, &QuadSpec::default()).unwrap();
        assert!(r.deg1_residual.abs() < 1e-6 && r.deg2_residual.abs() < 1e-6, "{r:?}");
        assert!(r.fixed_point_residual.abs() < 1e-8 && r.explicit_residual.abs() < 1e-8, "{r:?}");
    }
    let r = global_pairing(&m, &f, &f, &QuadSpec::default()).unwrap();
    let h = &r.fixed_point_history;
    assert!(h.last().unwrap().abs() <= h[0].abs() + 1e-15, "{h:?}");
    assert!(global_pairing(&m, &f, &f, &QuadSpec { rel_tol: 1e-6, max_doublings: 4 }).is_err());
}

#[test]
fn cramer() {
    let t = zeros();
    let i = Complex64::new(0.0, 1.0);
    let deltas: Vec<f64> = [10, 20, 40, 80].iter().map(|&k| cramer_partial(i, k, &t).unwrap().delta).collect();
    assert!(deltas.windows(2).all(|w| w[1] <= w[0]), "{deltas:?}");
    let slow = Complex64::new(0.0, 0.05);
    let deltas: Vec<f64> = [10, 20, 40, 80].iter().map(|&k| cramer_partial(slow, k, &t).unwrap().delta).collect();
    assert!(deltas.windows(2).all(|w| w[1] < w[0]), "{deltas:?}");
    let z = Complex64::new(0.7, 0.9);
    for k in [1, 10, 100] {
        let v = cramer_partial(z, k, &t).unwrap().value;
        assert!(v.norm() <= k as f64 * (-t.ordinates()[0] * z.im).exp() * (z.re / 2.0).exp() + 1e-15);
    }
}

fn point() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.0), Just(1.0), Just(f64::INFINITY), 0.0f64..1.0, 1.0f64..50.0]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn micro_symmetry_and_mirror(x in point(), y in point(), k in 1usize..40) {
        let m = MicroModel::new(&zeros(), k).unwrap();
        let a = micro_pairing(&m, x, y).unwrap();
        prop_assert_eq!(a, micro_pairing(&m, y, x).unwrap());
        let inv = |v: f64| if v == 0.0 { f64::INFINITY } else { 1.0 / v };
        let b = micro_pairing(&m, inv(x), inv(y)).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()), "{} {}", a, b);
    }

    #[test]
    fn remark_route(x in 1.0f64..1e4, k in 1usize..100) {
        let m = MicroModel::new(&zeros(), k).unwrap();
        let direct = m.explicit_formula(x);
        let via = x * micro_pairing(&m, 1.0 / x, 1.0).unwrap();
        prop_assert!((direct - via).abs() <= 1e-12 * (x + 2.0 * k as f64 * x.sqrt()), "{} {}", direct, via);
    }
}
