//! The twist families: inputs, curve models and the constructed data.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, FactoredRF, MPoly, Rat, UPoly, Var};
use crate::quartic::genus_one::certify_quadratic_twist;
use crate::quartic::{CurveError, OrderCertificate};

mod construct;
pub mod sample;

pub use construct::{construct, construct_a, construct_a3, construct_b, construct_b3, construct_c};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    A,
    A3,
    B,
    B3,
    C,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 5] = [
        FamilyKind::A,
        FamilyKind::A3,
        FamilyKind::B,
        FamilyKind::B3,
        FamilyKind::C,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::A => "A",
            FamilyKind::A3 => "A3",
            FamilyKind::B => "B",
            FamilyKind::B3 => "B3",
            FamilyKind::C => "C",
        }
    }

    pub fn exponent_count(self) -> usize {
        match self {
            FamilyKind::A | FamilyKind::B => 3,
            FamilyKind::A3 | FamilyKind::B3 => 1,
            FamilyKind::C => 4,
        }
    }

    pub fn is_rank3(self) -> bool {
        matches!(self, FamilyKind::A3 | FamilyKind::B3)
    }

    pub fn uses_f(self) -> bool {
        self != FamilyKind::C
    }

    pub fn uses_base_point(self) -> bool {
        matches!(self, FamilyKind::B | FamilyKind::B3)
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| FamilyError::Invalid(format!("unknown family `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("{0}")]
    Invalid(String),
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("point {point} fails the equation of curve {curve}")]
    MembershipFailed { curve: usize, point: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, FamilyError> {
    Err(FamilyError::Invalid(msg.into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyInputs {
    pub kind: FamilyKind,
    /// Polynomial in `x`; absent for family C.
    pub f: Option<MPoly>,
    pub m: Vec<u32>,
    pub constants: Vec<Rat>,
    /// `(u, y_u)` on `y^2 = f(x)`, families B and B3.
    pub base_point: Option<(Rat, Rat)>,
}

impl FamilyInputs {
    pub fn new(kind: FamilyKind, f: Option<MPoly>, m: Vec<u32>, constants: Vec<Rat>) -> Self {
        FamilyInputs {
            kind,
            f,
            m,
            constants,
            base_point: None,
        }
    }

    pub fn with_base_point(mut self, u: Rat, y: Rat) -> Self {
        self.base_point = Some((u, y));
        self
    }

    /// Coefficients of `f`, constant term first.
    pub fn f_coeffs(&self) -> Option<Vec<Rat>> {
        let f = self.f.as_ref()?;
        UPoly::from_mpoly(f, Var::X)
            .ok()
            .map(|p| p.coeffs().to_vec())
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        let k = self.kind;
        if self.m.len() != k.exponent_count() {
            return invalid(format!(
                "family {k} takes {} exponents, got {}",
                k.exponent_count(),
                self.m.len()
            ));
        }
        if self.m.iter().any(|&m| m < 3 || m.is_even()) {
            return invalid("m_i must be odd and at least 3");
        }
        if self.constants.len() != k.exponent_count() {
            return invalid(format!(
                "family {k} takes {} constants, got {}",
                k.exponent_count(),
                self.constants.len()
            ));
        }
        if self.constants.iter().any(|c| c.is_zero()) {
            return invalid("constants must be nonzero");
        }
        if !k.uses_f() {
            if self.f.is_some() {
                return invalid("family C takes no f");
            }
            return Ok(());
        }
        let Some(f) = &self.f else {
            return invalid(format!("family {k} requires f"));
        };
        if !f.is_univariate_in(Var::X) {
            return invalid("f must be a polynomial in x");
        }
        let deg = f.degree_in(Var::X.index());
        if !crate::algebra::is_squarefree(f)? {
            return invalid("f is not square-free");
        }
        if k.uses_base_point() {
            if deg != 3 && deg != 4 {
                return invalid("deg f must be 3 or 4");
            }
            let Some((u, y)) = &self.base_point else {
                return invalid(format!("family {k} requires a base point"));
            };
            let coeffs = self.f_coeffs().expect("univariate");
            if y.is_zero() || UPoly::new(coeffs.clone()).eval(u) != y * y {
                return invalid("base point is not on y^2 = f(x) with y != 0");
            }
            match certify_quadratic_twist(&coeffs, &Rat::from_integer(1.into()), u, y)? {
                OrderCertificate::Torsion { order } => {
                    return invalid(format!("base point is torsion of order {order}"));
                }
                OrderCertificate::InfiniteOrder { .. } => {}
            }
        } else {
            if deg < 3 {
                return invalid("deg f must be at least 3");
            }
            if self.base_point.is_some() {
                return invalid(format!("family {k} takes no base point"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveShape {
    /// `D y^2 = f(x)`
    QuadraticTwist,
    /// `y^2 = D x^m + k`
    OddTwist,
    /// `y^2 = x^m + k D`
    EvenTwist,
}

impl CurveShape {
    pub fn name(self) -> &'static str {
        match self {
            CurveShape::QuadraticTwist => "quadratic_twist",
            CurveShape::OddTwist => "odd_twist",
            CurveShape::EvenTwist => "even_twist",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [
            CurveShape::QuadraticTwist,
            CurveShape::OddTwist,
            CurveShape::EvenTwist,
        ]
        .into_iter()
        .find(|c| c.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveModel {
    pub shape: CurveShape,
    /// Exponent of `x`; the degree of `f` for a quadratic twist.
    pub m: u32,
    /// `k`; unused for a quadratic twist.
    pub constant: Rat,
    /// Present only for a quadratic twist.
    pub f: Option<MPoly>,
}

impl CurveModel {
    pub fn quadratic(f: &MPoly) -> Self {
        CurveModel {
            shape: CurveShape::QuadraticTwist,
            m: f.degree_in(Var::X.index()),
            constant: Rat::from_integer(1.into()),
            f: Some(f.clone()),
        }
    }

    pub fn odd(m: u32, k: Rat) -> Self {
        CurveModel {
            shape: CurveShape::OddTwist,
            m,
            constant: k,
            f: None,
        }
    }

    pub fn even(m: u32, k: Rat) -> Self {
        CurveModel {
            shape: CurveShape::EvenTwist,
            m,
            constant: k,
            f: None,
        }
    }

    pub fn genus(&self) -> u32 {
        (self.m - 1) / 2
    }

    pub fn equation_string(&self) -> String {
        let k = crate::algebra::fmt_rat(&self.constant);
        match self.shape {
            CurveShape::QuadraticTwist => {
                let f = self.f.as_ref().map(|f| f.to_string()).unwrap_or_default();
                format!("D*y^2 = {f}")
            }
            CurveShape::OddTwist => format!("y^2 = D*x^{} + {k}", self.m),
            CurveShape::EvenTwist => format!("y^2 = x^{} + {k}*D", self.m),
        }
    }

    /// Both sides of the equation at `(x, y)` as sums of factored terms.
    pub fn sides(
        &self,
        d: &FactoredRF,
        x: &FactoredRF,
        y: &FactoredRF,
    ) -> Result<(Vec<FactoredRF>, Vec<FactoredRF>), AlgebraError> {
        let y2 = y.pow(2)?;
        let k = FactoredRF::constant(self.constant.clone());
        Ok(match self.shape {
            CurveShape::QuadraticTwist => {
                let f = self.f.as_ref().expect("quadratic twist carries f");
                (vec![d.mul(&y2)], poly_at(f, x)?)
            }
            CurveShape::OddTwist => (vec![y2], vec![d.mul(&x.pow(self.m as i64)?), k]),
            CurveShape::EvenTwist => (vec![y2], vec![x.pow(self.m as i64)?, k.mul(d)]),
        })
    }

    pub fn holds_at(&self, d: &Rat, x: &Rat, y: &Rat) -> bool {
        let xm = num_traits::pow(x.clone(), self.m as usize);
        match self.shape {
            CurveShape::QuadraticTwist => {
                let f = self.f.as_ref().expect("quadratic twist carries f");
                let c = UPoly::from_mpoly(f, Var::X).expect("univariate");
                d * y * y == c.eval(x)
            }
            CurveShape::OddTwist => y * y == d * xm + &self.constant,
            CurveShape::EvenTwist => y * y == xm + &self.constant * d,
        }
    }
}

/// `f(x)` as a list of terms.
pub fn poly_at(f: &MPoly, x: &FactoredRF) -> Result<Vec<FactoredRF>, AlgebraError> {
    f.terms()
        .map(|(mono, c)| {
            let e = mono.0[Var::X.index()] as i64;
            Ok(FactoredRF::constant(c.clone()).mul(&x.pow(e)?))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyPoint {
    pub curve: usize,
    pub x: FactoredRF,
    pub y: FactoredRF,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistFamily {
    pub inputs: FamilyInputs,
    pub big_m: u64,
    pub m_i: Vec<u64>,
    pub w: [FactoredRF; 3],
    pub t: FactoredRF,
    pub d: FactoredRF,
    pub curves: Vec<CurveModel>,
    pub points: Vec<FamilyPoint>,
}

impl TwistFamily {
    pub fn kind(&self) -> FamilyKind {
        self.inputs.kind
    }

    /// The free parameters of the family.
    pub fn params(&self) -> Vec<Var> {
        match self.kind() {
            FamilyKind::A | FamilyKind::A3 => vec![Var::U, Var::V1, Var::V2, Var::V3],
            FamilyKind::B | FamilyKind::B3 => vec![Var::V1, Var::V2, Var::V3],
            FamilyKind::C => vec![Var::U, Var::V1, Var::V2, Var::V3, Var::V4],
        }
    }

    pub fn half_m(&self) -> u64 {
        (self.big_m - 1) / 2
    }
}

pub fn lcm(ms: &[u32]) -> u64 {
    ms.iter().fold(1u64, |acc, &m| acc.lcm(&(m as u64)))
}
