//! Genus-one curves cut out by two quadrics in P^3.
//!
//! Over Q the group law is obtained by reducing to a Weierstrass model;
//! over the function field only the explicit doubling formulas are used.

use thiserror::Error;

pub mod curve;
pub mod doubling;
pub mod genus_one;
pub mod group;
pub mod linalg;
pub mod reduce;
pub mod weierstrass;

pub use curve::{ProjPoint, QICurve, QuadricPair};
pub use doubling::{
    double_c_explicit, double_c_symbolic, double_h_explicit, double_h_symbolic, double_normal_form,
    identity_c, identity_h,
};
pub use group::{certify_infinite_order, group_add, reduce_to_weierstrass, QiGroup};
pub use reduce::BirationalMaps;
pub use weierstrass::{OrderCertificate, WPoint, WeierstrassModel, MAX_TORSION_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("lambda coefficients must be nonzero")]
    ZeroLambda,
    #[error("zero input")]
    ZeroInput,
    #[error("all coordinates are zero")]
    ZeroPoint,
    #[error("point {0} is not on the curve")]
    NotOnCurve(String),
    #[error("curve is singular")]
    Singular,
    #[error("two-torsion not rational")]
    TwoTorsionNotRational,
    #[error("degenerate projection: {0}")]
    Degenerate(String),
    #[error("weierstrass reduction failed after {0} attempts")]
    ReductionFailed(usize),
}
