//! Exact arithmetic over Q: rationals, sparse polynomials in the fixed
//! variables `x, u, v1..v4, T`, factored rational functions and sampled
//! identity testing.

use std::collections::BTreeMap;

use thiserror::Error;

pub mod factored;
pub mod identity;
pub mod parse;
pub mod poly;
pub mod univariate;

pub use factored::{FactoredRF, EXPANSION_THRESHOLD};
pub use identity::{
    compare_at_rational_points, compare_sums, rf_equal, rf_equal_exact, rf_equal_with, Comparison,
    SampleOptions,
};
pub use parse::{parse_expr, parse_poly, PolyExpr};
pub use poly::{MPoly, Monomial, Poly, Var, NVARS};
pub use univariate::{is_squarefree, UPoly};

pub type Rat = num_rational::BigRational;

/// Values for (some of) the variables.
pub type Assignment = BTreeMap<Var, Rat>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("syntax error at offset {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable `{name}` at offset {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("negative exponent at offset {pos}")]
    NegativeExponent { pos: usize },
    #[error("polynomial is not univariate: {0}")]
    NotUnivariate(String),
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("division by zero: base `{base}` vanishes")]
    DivisionByZero { base: String },
    #[error("variable {0} is not assigned")]
    UnassignedVariable(Var),
    #[error("refusing to expand a power {exponent} > {threshold}")]
    ExpansionTooLarge { exponent: u64, threshold: u64 },
    #[error("degree bound overflows")]
    DegreeOverflow,
    #[error("more than {0} sampled assignments hit a vanishing base")]
    TooManyRejections(usize),
}

/// Parse a rational literal such as `-3`, `7/4`.
pub fn parse_rat(s: &str) -> Result<Rat, AlgebraError> {
    let t = s.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let mut p = parse::Parser::new(body)?;
    let r = p.rational()?;
    if !p.at_end() {
        return Err(p.error("trailing input after rational"));
    }
    Ok(if neg { -r } else { r })
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn fmt_rat(r: &Rat) -> String {
    poly::fmt_rat(r)
}
