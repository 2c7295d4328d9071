mod common;

use num_complex::Complex64;
use num_traits::One;
use zetalab::bundles::{
    invariant, mass_recursion_beta, strata_census, Convention, EllipticData, InvariantKind,
};
use zetalab::exact::{rat, ri, rpow, Poly, Rat};
use zetalab::fields::WeierstrassCurve;
use zetalab::nonabelian::{
    allbundles_rank2, andrianov_formal_match, ell_na_zeta, global_na_zeta_partial, local_factor, na_counts,
    na_properties_check, GlobalCurve,
};
use zetalab::zeta::zeta_of_curve;

const CONVENTIONS: [Convention; 2] = [Convention::PaperSplit, Convention::GaloisDescent];

fn gallery_data() -> Vec<EllipticData> {
    common::gallery().iter().map(|c| EllipticData::from_curve(c).unwrap()).collect()
}

/// `N_1/(q-1) (1 + (q-1)t + (2q-4)t^2 + (q^2-q)t^3 + q^2 t^4)`
fn split_rank2(q: i64, n1: i64) -> Poly {
    Poly::from_ints(&[1, q - 1, 2 * q - 4, q * q - q, q * q]).scale(&rat(n1, q - 1))
}

#[test]
fn rank_two_split_formula() {
    assert_eq!(ell_na_zeta(2, &EllipticData::from_counts(5, 9), Convention::PaperSplit).unwrap().p, split_rank2(5, 9));
    assert_eq!(ell_na_zeta(2, &EllipticData::from_counts(5, 8), Convention::PaperSplit).unwrap().p, split_rank2(5, 8));
    // a polynomial identity in (q, N_1) of degree <= 3 in each variable: a 9 x 8 grid settles it
    for q in [5i64, 7, 8, 9, 11, 13, 16, 17, 19] {
        let h = (2.0 * (q as f64).sqrt()).floor() as i64;
        for n1 in (q + 1 - h..=q + 1 + h).take(8) {
            let z = ell_na_zeta(2, &EllipticData::from_counts(q as u64, n1 as u64), Convention::PaperSplit).unwrap();
            assert_eq!(z.p, split_rank2(q, n1), "q={q} N1={n1}");
        }
    }
}

#[test]
fn properties_of_every_generated_zeta() {
    for e in gallery_data() {
        for conv in CONVENTIONS {
            for r in 1..=3 {
                let z = ell_na_zeta(r, &e, conv).unwrap();
                let props = na_properties_check(&z, 1e-9).unwrap();
                assert!(props.all_ok(), "{e:?} {conv:?} r={r}: {props:?}");
                // log-derivative of Z / Z(0), coefficient by coefficient
                let log = z.series(7).unwrap().scale(&(Rat::one() / z.p.coeff(0))).log().unwrap();
                for m in 1..=6 {
                    assert_eq!(log.coeff(m) * ri(m as i64), na_counts(&z, m).unwrap());
                }
            }
        }
    }
}

#[test]
fn rank_one_is_artin() {
    for c in common::gallery() {
        let e = EllipticData::from_curve(&c).unwrap();
        let z = zeta_of_curve(&c).unwrap();
        for conv in CONVENTIONS {
            let na = ell_na_zeta(1, &e, conv).unwrap();
            assert_eq!(na.normalized_numerator(), *z.numerator());
            assert_eq!(na.series(12).unwrap().scale(&(Rat::one() / na.p.coeff(0))), z.series(12));
        }
    }
}

/// `gamma(0) + sum_{d >= 1} (q^d - 1) beta(d) t^d` straight from the census.
#[test]
fn series_equals_definition() {
    for e in gallery_data().into_iter().take(4) {
        for conv in CONVENTIONS {
            for r in 1..=3u32 {
                let z = ell_na_zeta(r, &e, conv).unwrap();
                let order = 3 * r as usize + 1;
                let s = z.series(order).unwrap();
                assert_eq!(s.coeff(0), invariant(InvariantKind::Gamma, r, 0, &e, conv).unwrap());
                for d in 1..order {
                    let beta = invariant(InvariantKind::Beta, r, d as i64, &e, conv).unwrap();
                    assert_eq!(s.coeff(d), (rpow(&e.q_rat(), d as i64) - ri(1)) * beta, "r={r} d={d}");
                }
            }
        }
    }
}

#[test]
fn descent_numerator_second_coefficient() {
    for e in gallery_data() {
        let z = ell_na_zeta(2, &e, Convention::GaloisDescent).unwrap();
        assert_eq!(z.normalized_numerator().coeff(2), ri(e.n1 as i64 - 2), "{e:?}");
    }
}

#[test]
fn mass_formula_consistency() {
    let mut fields = std::collections::BTreeSet::new();
    for c in common::gallery() {
        let e = EllipticData::from_curve(&c).unwrap();
        let z = zeta_of_curve(&c).unwrap();
        let rec = mass_recursion_beta(2, 0, &z).unwrap();
        assert_eq!(invariant(InvariantKind::Beta, 2, 0, &e, Convention::GaloisDescent).unwrap(), rec);
        fields.insert(e.q);
        let split = invariant(InvariantKind::Beta, 2, 0, &e, Convention::PaperSplit).unwrap();
        if e.n1 == 2 * (e.q - 1) {
            assert_eq!(split, rec);
        } else {
            // documented divergence of the split bookkeeping
            println!("q={} N1={}: split {} recursion {} difference {}", e.q, e.n1, split, rec, &split - &rec);
        }
    }
    assert!(fields.is_superset(&[5, 7, 11].into_iter().collect()));
    let e = EllipticData::from_curve(&WeierstrassCurve::over_prime(5, 4, 0).unwrap()).unwrap();
    assert_eq!(e.n1, 8);
    let split = invariant(InvariantKind::Beta, 2, 0, &e, Convention::PaperSplit).unwrap();
    assert_eq!(split, rat(8, 3));
    assert_eq!(split, mass_recursion_beta(2, 0, &e.zeta().unwrap()).unwrap());
}

#[test]
fn census_and_gamma() {
    for e in gallery_data() {
        for r in 2..=3u32 {
            let c = strata_census(r, &e, Convention::GaloisDescent).unwrap();
            let q = e.q as i64;
            let want = (q.pow(r) - 1) / (q - 1);
            assert_eq!(c.total_classes(), want.into(), "{e:?} r={r}");
        }
        for conv in CONVENTIONS {
            for r in 1..=3u32 {
                for d in -3..=6 {
                    let a = invariant(InvariantKind::Alpha, r, d, &e, conv).unwrap();
                    let b = invariant(InvariantKind::Beta, r, d, &e, conv).unwrap();
                    let g = invariant(InvariantKind::Gamma, r, d, &e, conv).unwrap();
                    assert_eq!(g, a - b);
                }
            }
        }
    }
}

#[test]
fn all_bundles_decomposition() {
    let r = allbundles_rank2(&EllipticData::from_counts(5, 9), 10).unwrap();
    assert_eq!(r.zero_closed, rat(135, 128));
    assert!(r.all_agree(), "{r:?}");
    for e in gallery_data().into_iter().skip(1).take(2) {
        assert!(allbundles_rank2(&e, 10).unwrap().all_agree(), "{e:?}");
    }
}

#[test]
fn andrianov() {
    assert!(andrianov_formal_match());
}

/// `a_p` from a table of squares mod `p`.
fn ap(p: u64, a: i64, b: i64) -> i64 {
    let mut chi = vec![-1i64; p as usize];
    chi[0] = 0;
    for y in 1..p {
        chi[(y * y % p) as usize] = 1;
    }
    let (a, b) = (a.rem_euclid(p as i64) as u64, b.rem_euclid(p as i64) as u64);
    -(0..p).map(|x| chi[((x * x % p * x + a * x + b) % p) as usize]).sum::<i64>()
}

#[test]
fn rank_one_euler_product() {
    let (a, b) = (-1i64, 1i64);
    let c = GlobalCurve::new(a, b).unwrap();
    let s = Complex64::new(2.5, 1.0);
    let rep = global_na_zeta_partial(&c, 1, s, 2000, Convention::PaperSplit).unwrap();
    let disc = 4 * a.pow(3) + 27 * b.pow(2);
    let mut want = Complex64::new(1.0, 0.0);
    for p in 5..=2000u64 {
        if (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) || disc % p as i64 == 0 {
            continue;
        }
        let x = Complex64::new(p as f64, 0.0).powc(-s);
        want /= 1.0 - ap(p, a, b) as f64 * x + p as f64 * x * x;
    }
    assert!((rep.value - want).norm() < 1e-12 * want.norm(), "{:?} {want}", rep.value);
    let bigger = global_na_zeta_partial(&c, 1, s, 8000, Convention::PaperSplit).unwrap();
    assert!((bigger.log_value - rep.log_value).norm() <= rep.log_tail_bound);
}

#[test]
fn rank_two_local_factors() {
    let c = GlobalCurve::new(-1, 1).unwrap();
    for p in [5u64, 7, 11, 13] {
        let f = local_factor(&c, p, 2, Convention::PaperSplit).unwrap();
        let q = p as i64;
        assert_eq!(f, Poly::from_ints(&[1, q - 1, 2 * q - 4, q * q - q, q * q]));
    }
    let s = Complex64::new(3.5, 0.0);
    let a = global_na_zeta_partial(&c, 2, s, 3000, Convention::GaloisDescent).unwrap();
    let b = global_na_zeta_partial(&c, 2, s, 6000, Convention::GaloisDescent).unwrap();
    assert!(a.log_tail_bound.is_finite());
    assert!((a.log_value - b.log_value).norm() <= a.log_tail_bound);
}
