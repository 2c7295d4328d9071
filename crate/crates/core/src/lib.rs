//! Zeta functions of curves over finite fields (abelian and rank `r`
//! non-abelian), moduli-of-bundles masses on elliptic curves, arithmetic
//! stability and theta invariants of lattices, and explicit-formula
//! pairings over function fields and over `Q`.

pub mod error;
pub mod exact;
pub mod fields;
pub mod bundles;
pub mod roots;
pub mod zeta;
pub mod nonabelian;
pub mod special;
pub mod lattice;
pub mod explicit;

pub use error::{Error, Result};
