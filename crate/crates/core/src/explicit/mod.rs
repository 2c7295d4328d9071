//! Explicit formulas as intersection numbers: exact pairings of divisors built
//! from Frobenius graphs on `C x C`, the micro-divisor model over `Q` truncated at
//! `K` zero pairs, and the Riemann–Weil residual.

mod ff;
mod micro;
mod weil;
mod zeros;

pub use ff::{ff_explicit_formula_check, ff_hodge_defect, ff_pairing, ff_positivity, ff_zero_sum, FFPairing, FFTestFn};
pub use micro::{global_pairing, micro_pairing, GlobalPairingReport, MicroModel, NFTestFn, QuadSpec};
pub use weil::{riemann_weil_residual, WeilReport, PRIME_BOUND_MAX};
pub use zeros::{cramer_partial, load_zeros, CramerReport, ZeroTable, FIRST_ORDINATE};
