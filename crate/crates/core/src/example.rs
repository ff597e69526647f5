//! The worked instance `f = x^5 + x + 1`, `m = (5, 9, 13)`, constants
//! `(1, 2, 3)`, checked against its closed forms.

use crate::algebra::{compare_sums, parse_poly, rat, FactoredRF, SampleOptions, Var};
use crate::families::{construct, FamilyError, FamilyInputs, FamilyKind, TwistFamily};
use crate::verify::{Check, VerificationReport};

pub const F: &str = "x^5+x+1";
pub const M: [u32; 3] = [5, 9, 13];
pub const CONSTANTS: [i64; 3] = [1, 2, 3];

/// The displayed `w1, w2, w3`, each a sum of three terms.
pub const W_TERMS: [[&str; 3]; 3] = [
    [
        "3/4 * (v3)^13 * (v2)^-9",
        "1/3 * (v2)^9 * (v3)^-13",
        "-3 * (v2)^9 * (v3)^13 * (v1)^-10",
    ],
    [
        "3 * (v3)^13 * (v1)^-5",
        "1/3 * (v1)^5 * (v3)^-13",
        "-3/4 * (v1)^5 * (v3)^13 * (v2)^-18",
    ],
    [
        "3 * (v2)^9 * (v1)^-5",
        "3/4 * (v1)^5 * (v2)^-9",
        "-1/3 * (v1)^5 * (v2)^9 * (v3)^-26",
    ],
];

pub fn inputs() -> FamilyInputs {
    FamilyInputs::new(
        FamilyKind::A,
        Some(parse_poly(F).expect("valid literal")),
        M.to_vec(),
        CONSTANTS.iter().map(|&c| rat(c)).collect(),
    )
}

pub fn build() -> Result<TwistFamily, FamilyError> {
    construct(&inputs())
}

pub fn displayed_w() -> [FactoredRF; 3] {
    W_TERMS.map(|terms| {
        terms
            .iter()
            .map(|t| FactoredRF::parse(t).expect("valid literal"))
            .reduce(|a, b| a.add(&b).expect("no poles in a sum of monomials"))
            .expect("three terms")
    })
}

fn expect_eq<T: PartialEq + std::fmt::Display>(name: &str, got: T, want: T) -> Check {
    if got == want {
        Check::pass(name, got.to_string())
    } else {
        Check::fail(
            name,
            format!("got {got}, expected {want}"),
            &Default::default(),
        )
    }
}

/// Compare the computed family with the displayed closed forms.
pub fn check(fam: &TwistFamily, opts: &SampleOptions) -> Result<VerificationReport, FamilyError> {
    let mut checks = vec![
        expect_eq("M", fam.big_m, 585),
        expect_eq("(M-1)/2", fam.half_m(), 292),
        expect_eq(
            "M_i",
            format!("{:?}", fam.m_i),
            format!("{:?}", [117u64, 65, 45]),
        ),
    ];
    let w = displayed_w();
    for (i, (got, want)) in fam.w.iter().zip(&w).enumerate() {
        let name = format!("w{} exact", i + 1);
        checks.push(if got == want {
            Check::pass(name, "identical factored form")
        } else {
            Check::fail(
                name,
                format!("got {got}, displayed {want}"),
                &Default::default(),
            )
        });
    }
    let fu = FactoredRF::from_poly(&parse_poly(F)?.x_to_u());
    let e1 = w[0].pow(2)?.sub(&FactoredRF::constant(rat(1)))?;
    let e3 = w[2].pow(2)?.sub(&FactoredRF::constant(rat(9)))?;
    let shown = fu
        .pow(585)?
        .mul(&e1)
        .mul(&FactoredRF::var_pow(Var::V1, 10))
        .mul(&FactoredRF::var_pow(Var::V3, -15210))
        .div(&e3.pow(585)?)?;
    checks.push(
        match compare_sums(
            std::slice::from_ref(&fam.d),
            std::slice::from_ref(&shown),
            opts,
        )? {
            crate::algebra::Comparison::Equal => {
                Check::pass("D matches display", format!("{} samples", opts.samples))
            }
            crate::algebra::Comparison::Differ(a) => {
                Check::fail("D matches display", "values differ", &a)
            }
        },
    );
    // Strip every displayed factor except the power of v3.
    let rest = fam
        .d
        .div(&fu.pow(585)?.mul(&e1).mul(&FactoredRF::var_pow(Var::V1, 10)))?
        .mul(&e3.pow(585)?);
    checks.push(expect_eq(
        "v3 exponent in D",
        rest.exponent_of_var(Var::V3),
        -15210,
    ));
    checks.push(expect_eq(
        "D residual is a v3 power",
        rest.vars().len() as i64,
        1,
    ));
    let y = fam.points[0].y.div(&e3.pow(292)?)?.mul(&fu.pow(292)?);
    checks.push(expect_eq(
        "v3 exponent in y(P)",
        y.exponent_of_var(Var::V3),
        7592,
    ));
    for (i, mi) in [117i64, 65, 45].into_iter().enumerate() {
        let x = FactoredRF::var_pow(Var::V3, 26 * mi)
            .mul(&e3.pow(mi)?)
            .mul(&FactoredRF::var_pow(Var::v(i + 1), -2))
            .div(&fu.pow(mi)?)?;
        let name = format!("x(P{}) matches display", i + 1);
        checks.push(if fam.points[i + 1].x == x {
            Check::pass(name, "identical factored form")
        } else {
            Check::fail(name, "factored forms differ", &Default::default())
        });
    }
    Ok(VerificationReport::new(opts.seed, opts.samples, checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_reproduces() {
        let fam = build().unwrap();
        let r = check(&fam, &SampleOptions::new(20, 42)).unwrap();
        assert!(r.overall, "{:#?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.checks.len(), 13);
    }
}
