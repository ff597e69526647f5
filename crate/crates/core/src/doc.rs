//! JSON documents for constructed families. Every number is written as a
//! string and rational functions travel in canonical factored form.

use serde::{Deserialize, Serialize};

use crate::algebra::{fmt_rat, parse_poly, parse_rat, FactoredRF, Rat};
use crate::families::{
    CurveModel, CurveShape, FamilyError, FamilyInputs, FamilyPoint, TwistFamily,
};
use crate::verify::VerificationReport;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputsDoc {
    pub f: Option<String>,
    pub m: Vec<String>,
    pub constants: Vec<String>,
    pub base_point: Option<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDoc {
    pub model_kind: String,
    pub m: String,
    pub constant: String,
    pub equation_string: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointDoc {
    pub curve_index: String,
    pub x: String,
    pub y: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDocument {
    pub schema_version: String,
    pub family: String,
    pub inputs: InputsDoc,
    #[serde(rename = "M")]
    pub big_m: String,
    #[serde(rename = "M_i")]
    pub m_i: Vec<String>,
    pub w: [String; 3],
    #[serde(rename = "T")]
    pub t: String,
    #[serde(rename = "D")]
    pub d: String,
    pub curves: Vec<CurveDoc>,
    pub points: Vec<PointDoc>,
    pub verification: Option<VerificationReport>,
}

#[derive(Debug, thiserror::Error)]
pub enum DocError {
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn malformed(what: impl std::fmt::Display) -> DocError {
    DocError::Malformed(what.to_string())
}

fn num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, DocError> {
    s.parse()
        .map_err(|_| malformed(format!("{what}: `{s}` is not an integer")))
}

fn rat(s: &str) -> Result<Rat, DocError> {
    parse_rat(s).map_err(|e| malformed(format!("`{s}`: {e}")))
}

fn rf(s: &str) -> Result<FactoredRF, DocError> {
    FactoredRF::parse(s).map_err(|e| malformed(format!("`{s}`: {e}")))
}

impl FamilyDocument {
    pub fn from_family(fam: &TwistFamily, verification: Option<VerificationReport>) -> Self {
        let i = &fam.inputs;
        FamilyDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            family: i.kind.to_string(),
            inputs: InputsDoc {
                f: i.f.as_ref().map(|f| f.to_string()),
                m: i.m.iter().map(|m| m.to_string()).collect(),
                constants: i.constants.iter().map(fmt_rat).collect(),
                base_point: i.base_point.as_ref().map(|(u, y)| [fmt_rat(u), fmt_rat(y)]),
            },
            big_m: fam.big_m.to_string(),
            m_i: fam.m_i.iter().map(|m| m.to_string()).collect(),
            w: fam.w.clone().map(|w| w.to_string()),
            t: fam.t.to_string(),
            d: fam.d.to_string(),
            curves: fam
                .curves
                .iter()
                .map(|c| CurveDoc {
                    model_kind: c.shape.name().to_string(),
                    m: c.m.to_string(),
                    constant: fmt_rat(&c.constant),
                    equation_string: c.equation_string(),
                })
                .collect(),
            points: fam
                .points
                .iter()
                .map(|p| PointDoc {
                    curve_index: p.curve.to_string(),
                    x: p.x.to_string(),
                    y: p.y.to_string(),
                })
                .collect(),
            verification,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, DocError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn inputs(&self) -> Result<FamilyInputs, DocError> {
        let kind = self.family.parse().map_err(|e: FamilyError| malformed(e))?;
        let f = match &self.inputs.f {
            Some(s) => Some(parse_poly(s).map_err(|e| malformed(format!("f: {e}")))?),
            None => None,
        };
        let m = self
            .inputs
            .m
            .iter()
            .map(|s| num(s, "m"))
            .collect::<Result<_, _>>()?;
        let constants = self
            .inputs
            .constants
            .iter()
            .map(|s| rat(s))
            .collect::<Result<_, _>>()?;
        let mut inputs = FamilyInputs::new(kind, f, m, constants);
        if let Some([u, y]) = &self.inputs.base_point {
            inputs = inputs.with_base_point(rat(u)?, rat(y)?);
        }
        Ok(inputs)
    }

    /// Rebuild the family exactly as stored, without recomputing anything.
    pub fn to_family(&self) -> Result<TwistFamily, DocError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(malformed(format!(
                "unsupported schema_version `{}`",
                self.schema_version
            )));
        }
        let inputs = self.inputs()?;
        let mut curves = Vec::with_capacity(self.curves.len());
        for c in &self.curves {
            let shape = CurveShape::from_name(&c.model_kind)
                .ok_or_else(|| malformed(format!("unknown model_kind `{}`", c.model_kind)))?;
            curves.push(match shape {
                CurveShape::QuadraticTwist => {
                    let f = inputs
                        .f
                        .as_ref()
                        .ok_or_else(|| malformed("quadratic twist without f"))?;
                    CurveModel::quadratic(f)
                }
                CurveShape::OddTwist => CurveModel::odd(num(&c.m, "curve m")?, rat(&c.constant)?),
                CurveShape::EvenTwist => CurveModel::even(num(&c.m, "curve m")?, rat(&c.constant)?),
            });
        }
        let mut points = Vec::with_capacity(self.points.len());
        for p in &self.points {
            let curve: usize = num(&p.curve_index, "curve_index")?;
            if curve >= curves.len() {
                return Err(malformed(format!("curve_index {curve} out of range")));
            }
            points.push(FamilyPoint {
                curve,
                x: rf(&p.x)?,
                y: rf(&p.y)?,
            });
        }
        Ok(TwistFamily {
            inputs,
            big_m: num(&self.big_m, "M")?,
            m_i: self
                .m_i
                .iter()
                .map(|s| num(s, "M_i"))
                .collect::<Result<_, _>>()?,
            w: [rf(&self.w[0])?, rf(&self.w[1])?, rf(&self.w[2])?],
            t: rf(&self.t)?,
            d: rf(&self.d)?,
            curves,
            points,
        })
    }
}
