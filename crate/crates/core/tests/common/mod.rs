#![allow(dead_code)]

use zetalab::fields::WeierstrassCurve;

/// `(p, a, b)` for `y^2 = x^3 + a x + b`.
pub const GALLERY: &[(u64, i64, i64)] = &[
    (5, 1, 1),
    (5, 4, 0),
    (5, 2, 1),
    (7, 1, 1),
    (7, 3, 2),
    (7, 0, 1),
    (11, 1, 1),
    (11, 2, 1),
    (13, 1, 6),
];

pub fn gallery() -> Vec<WeierstrassCurve> {
    GALLERY.iter().map(|&(p, a, b)| WeierstrassCurve::over_prime(p, a, b).unwrap()).collect()
}

/// Affine solutions of `y^2 = x^3 + a x + b` mod `p` by a double loop, plus infinity.
pub fn naive_count(p: u64, a: i64, b: i64) -> u64 {
    let (a, b) = (a.rem_euclid(p as i64) as u64, b.rem_euclid(p as i64) as u64);
    let mut n = 1;
    for x in 0..p {
        let rhs = (x * x % p * x + a * x + b) % p;
        for y in 0..p {
            if y * y % p == rhs {
                n += 1;
            }
        }
    }
    n
}
