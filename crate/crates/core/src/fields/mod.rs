//! Finite fields `F_{p^n}` and point counts / group structure of short
//! Weierstrass curves by enumeration.

mod curve;
mod field;

pub use curve::{
    count_points, group_structure, three_torsion_count, torsion_count, two_torsion_count, GroupStructure,
    WeierstrassCurve,
};
pub use field::{factorize, is_prime, powmod, FieldSpec, FIELD_BUDGET};
