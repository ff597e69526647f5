//! Simultaneous twists of hyperelliptic curves with positive-rank certificates.
//!
//! Given `f`, odd exponents `m_i` and constants, the [`families`] module
//! builds one twisting parameter `D` together with rational points on the
//! quadratic twist `D y^2 = f(x)` and on the higher twists of
//! `y^2 = x^m + k`. Rational functions stay in factored form, identities are
//! checked by sampling, and the genus-one curves behind the constructions get
//! a real group law through [`quartic`].

pub mod algebra;
pub mod cli;
pub mod doc;
pub mod example;
pub mod families;
pub mod par;
pub mod quartic;
pub mod verify;

pub use algebra::{FactoredRF, MPoly, Rat, Var};
pub use families::{FamilyInputs, FamilyKind, TwistFamily};
pub use verify::VerificationReport;
