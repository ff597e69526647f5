//! Checks run against a constructed family, collected into a report.
//!
//! Symbolic checks compare rational functions by sampling; specializations
//! evaluate everything exactly at one assignment and certify the genus-one
//! members through a Weierstrass model.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    compare_at_rational_points, compare_sums, fmt_rat, Assignment, Comparison, FactoredRF, Rat,
    SampleOptions, UPoly, Var,
};
use crate::families::{CurveShape, FamilyError, TwistFamily};
use crate::par;
use crate::quartic::genus_one::{
    certify_even_cubic_twist, certify_odd_cubic_twist, certify_quadratic_twist,
};
use crate::quartic::OrderCertificate;

pub mod strnum;

/// Fresh exact specializations used to back up each sampled membership check.
pub const EXACT_SPECIALIZATIONS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
    /// Variable values; set on every failure.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub witness: BTreeMap<String, String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Pass,
            detail: detail.into(),
            witness: BTreeMap::new(),
        }
    }

    pub fn skipped(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            status: Status::Skipped,
            ..Check::pass(name, detail)
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>, witness: &Assignment) -> Self {
        Check {
            status: Status::Fail,
            witness: witness_map(witness),
            ..Check::pass(name, detail)
        }
    }
}

fn witness_map(a: &Assignment) -> BTreeMap<String, String> {
    a.iter()
        .map(|(v, r)| (v.name().to_string(), fmt_rat(r)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    #[serde(with = "strnum")]
    pub seed: u64,
    #[serde(with = "strnum")]
    pub samples: usize,
    pub checks: Vec<Check>,
    pub overall: bool,
}

impl VerificationReport {
    pub fn new(seed: u64, samples: usize, checks: Vec<Check>) -> Self {
        let overall = checks.iter().all(|c| c.status != Status::Fail);
        VerificationReport {
            seed,
            samples,
            checks,
            overall,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn comparison_check(
    name: String,
    cmp: Result<Comparison, crate::algebra::AlgebraError>,
    detail: &str,
) -> Check {
    match cmp {
        Ok(Comparison::Equal) => Check::pass(name, ""),
        Ok(Comparison::Differ(a)) => Check::fail(name, detail, &a),
        Err(e) => Check::fail(name, e.to_string(), &Assignment::new()),
    }
}

/// Every point against its curve: sampled identity test, then exact
/// evaluation at fresh rational assignments.
pub fn verify_membership(fam: &TwistFamily, opts: &SampleOptions) -> Vec<Check> {
    let exact = SampleOptions {
        samples: EXACT_SPECIALIZATIONS,
        seed: opts.seed.wrapping_add(1),
        exec: opts.exec,
    };
    let idx: Vec<usize> = (0..fam.points.len()).collect();
    par::map(opts.exec, &idx, |&k| {
        let p = &fam.points[k];
        let name = format!("membership(P{k}, curve {})", p.curve);
        let (lhs, rhs) = match fam.curves[p.curve].sides(&fam.d, &p.x, &p.y) {
            Ok(s) => s,
            Err(e) => return Check::fail(name, e.to_string(), &Assignment::new()),
        };
        let sampled = comparison_check(
            name.clone(),
            compare_sums(&lhs, &rhs, opts),
            "equation fails",
        );
        if sampled.status == Status::Fail {
            return sampled;
        }
        let exact = comparison_check(
            name,
            compare_at_rational_points(&lhs, &rhs, &exact),
            "equation fails at a rational point",
        );
        if exact.status == Status::Pass {
            Check::pass(
                exact.name,
                format!("{} sampled, {EXACT_SPECIALIZATIONS} exact", opts.samples),
            )
        } else {
            exact
        }
    })
}

/// Each point has a non-constant coordinate and a nonzero y; D is non-constant.
pub fn verify_nonconstant(fam: &TwistFamily) -> Vec<Check> {
    let mut out = Vec::new();
    let none = Assignment::new();
    let d_name = "nonconstant(D)";
    out.push(if fam.d.is_constant() {
        Check::fail(d_name, "D is constant", &none)
    } else {
        Check::pass(d_name, format!("depends on {}", var_list(&fam.d)))
    });
    for (k, p) in fam.points.iter().enumerate() {
        let name = format!("nonconstant(P{k})");
        out.push(if p.y.is_zero() {
            Check::fail(name, "y is zero", &none)
        } else if p.x.is_constant() && p.y.is_constant() {
            Check::fail(name, "both coordinates are constant", &none)
        } else {
            let c = if p.x.is_constant() { &p.y } else { &p.x };
            Check::pass(name, format!("depends on {}", var_list(c)))
        });
    }
    out
}

fn var_list(r: &FactoredRF) -> String {
    r.vars()
        .iter()
        .map(|v| v.name())
        .collect::<Vec<_>>()
        .join(",")
}

/// The relations used by the rank-three argument: for each flip `vi -> -vi`,
/// T and D are fixed, `Pi` is fixed and `Pj` goes to `(xj, -yj)`.
pub fn verify_phi_relations(fam: &TwistFamily, opts: &SampleOptions) -> Vec<Check> {
    if !fam.kind().is_rank3() {
        return vec![Check::skipped(
            "phi relations",
            format!("family {} has no sign-flip relations", fam.kind()),
        )];
    }
    let mut jobs: Vec<(String, FactoredRF, FactoredRF)> = Vec::new();
    for i in 1..=3 {
        let flip = Var::v(i);
        jobs.push((
            format!("phi{i}(T) = T"),
            fam.t.signflip(flip),
            fam.t.clone(),
        ));
        jobs.push((
            format!("phi{i}(D) = D"),
            fam.d.signflip(flip),
            fam.d.clone(),
        ));
        for j in 1..=3 {
            let p = &fam.points[j];
            jobs.push((format!("phi{i}(P{j}).x"), p.x.signflip(flip), p.x.clone()));
            let (want, label) = if i == j {
                (p.y.clone(), "y")
            } else {
                (p.y.neg(), "-y")
            };
            jobs.push((
                format!("phi{i}(P{j}).y = {label}"),
                p.y.signflip(flip),
                want,
            ));
        }
    }
    par::map(opts.exec, &jobs, |(name, l, r)| {
        comparison_check(
            name.clone(),
            compare_sums(std::slice::from_ref(l), std::slice::from_ref(r), opts),
            "relation fails",
        )
    })
}

/// The full symbolic suite.
pub fn verify_family(fam: &TwistFamily, opts: &SampleOptions) -> VerificationReport {
    let mut checks = verify_membership(fam, opts);
    checks.extend(verify_nonconstant(fam));
    checks.extend(verify_phi_relations(fam, opts));
    VerificationReport::new(opts.seed, opts.samples, checks)
}

fn degenerate(what: &str) -> FamilyError {
    FamilyError::Degenerate(what.to_string())
}

/// Evaluate the family at `assignment`, check every membership exactly and
/// certify the genus-one members.
///
/// A torsion point at a specialization does not contradict anything about
/// the family, so it is reported as skipped ("inconclusive"). Members of
/// genus at least two carry no certificate beyond the symbolic criterion.
pub fn certify_specialization(
    fam: &TwistFamily,
    assignment: &Assignment,
    opts: &SampleOptions,
) -> Result<VerificationReport, FamilyError> {
    for v in fam.params() {
        if !assignment.contains_key(&v) {
            return Err(FamilyError::Invalid(format!("assignment is missing {v}")));
        }
    }
    let t = fam
        .t
        .eval(assignment)
        .map_err(|_| degenerate("T undefined"))?;
    if t == Rat::from_integer(0.into()) {
        return Err(degenerate("T vanishes"));
    }
    let d = fam
        .d
        .eval(assignment)
        .map_err(|_| degenerate("D undefined"))?;
    let mut pts = Vec::with_capacity(fam.points.len());
    for (k, p) in fam.points.iter().enumerate() {
        let x =
            p.x.eval(assignment)
                .map_err(|_| degenerate(&format!("P{k} undefined")))?;
        let y =
            p.y.eval(assignment)
                .map_err(|_| degenerate(&format!("P{k} undefined")))?;
        pts.push((x, y));
    }
    let symbolic = verify_nonconstant(fam);
    let idx: Vec<usize> = (0..fam.points.len()).collect();
    let checks: Vec<Vec<Check>> = par::map(opts.exec, &idx, |&k| {
        let p = &fam.points[k];
        let curve = &fam.curves[p.curve];
        let (x, y) = &pts[k];
        let mut out = Vec::new();
        let name = format!("membership(P{k}, curve {})", p.curve);
        if !curve.holds_at(&d, x, y) {
            out.push(Check::fail(
                name,
                format!("({}, {}) is off the curve", fmt_rat(x), fmt_rat(y)),
                assignment,
            ));
            return out;
        }
        out.push(Check::pass(
            name,
            format!("({}, {})", fmt_rat(x), fmt_rat(y)),
        ));
        let name = format!("order(P{k})");
        if curve.genus() != 1 {
            let crit = &symbolic[k + 1];
            out.push(match crit.status {
                Status::Pass => Check::pass(
                    name,
                    format!(
                        "criterion-only: genus {}, non-constant point",
                        curve.genus()
                    ),
                ),
                _ => Check::fail(name, format!("criterion-only: {}", crit.detail), assignment),
            });
            return out;
        }
        let cert = match curve.shape {
            CurveShape::QuadraticTwist => {
                let f = curve.f.as_ref().expect("quadratic twist carries f");
                let c = UPoly::from_mpoly(f, Var::X).expect("univariate");
                certify_quadratic_twist(c.coeffs(), &d, x, y)
            }
            CurveShape::OddTwist => certify_odd_cubic_twist(&d, &curve.constant, x, y),
            CurveShape::EvenTwist => certify_even_cubic_twist(&d, &curve.constant, x, y),
        };
        out.push(match cert {
            Ok(c @ OrderCertificate::InfiniteOrder { .. }) => Check::pass(name, c.to_string()),
            Ok(OrderCertificate::Torsion { order }) => Check::skipped(
                name,
                format!("inconclusive: torsion of order {order} at this specialization"),
            ),
            Err(e) => Check::fail(name, e.to_string(), assignment),
        });
        out
    });
    Ok(VerificationReport::new(
        opts.seed,
        opts.samples,
        checks.into_iter().flatten().collect(),
    ))
}
