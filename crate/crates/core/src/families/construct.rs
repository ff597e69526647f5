use crate::algebra::{compare_sums, Comparison, FactoredRF, MPoly, Rat, SampleOptions, Var};
use crate::quartic::{double_c_symbolic, double_h_symbolic};

use super::{lcm, CurveModel, FamilyError, FamilyInputs, FamilyKind, FamilyPoint, TwistFamily};

/// Samples used for the membership check run before a family is returned.
const BUILD_SAMPLES: usize = 3;

fn rf(c: &Rat) -> FactoredRF {
    FactoredRF::constant(c.clone())
}

fn v(i: usize) -> Var {
    Var::v(i + 1)
}

/// `w^2 - k`, refusing the zero function.
fn sq_minus(w: &FactoredRF, k: &Rat, what: &str) -> Result<FactoredRF, FamilyError> {
    let r = w.pow(2)?.sub(&rf(k))?;
    if r.is_zero() {
        return Err(FamilyError::Degenerate(format!(
            "{what} is identically zero"
        )));
    }
    Ok(r)
}

fn three<T: Clone>(xs: &[T]) -> [T; 3] {
    [xs[0].clone(), xs[1].clone(), xs[2].clone()]
}

fn finish(fam: TwistFamily) -> Result<TwistFamily, FamilyError> {
    check_membership(&fam, &SampleOptions::new(BUILD_SAMPLES, 0))?;
    Ok(fam)
}

/// Sampled membership of every point; the first failure is returned.
pub(crate) fn check_membership(fam: &TwistFamily, opts: &SampleOptions) -> Result<(), FamilyError> {
    for (k, p) in fam.points.iter().enumerate() {
        let (lhs, rhs) = fam.curves[p.curve].sides(&fam.d, &p.x, &p.y)?;
        if let Comparison::Differ(_) = compare_sums(&lhs, &rhs, opts)? {
            return Err(FamilyError::MembershipFailed {
                curve: p.curve,
                point: k,
            });
        }
    }
    Ok(())
}

pub fn construct(inputs: &FamilyInputs) -> Result<TwistFamily, FamilyError> {
    match inputs.kind {
        FamilyKind::A => construct_a(inputs),
        FamilyKind::A3 => construct_a3(inputs),
        FamilyKind::B => construct_b(inputs),
        FamilyKind::B3 => construct_b3(inputs),
        FamilyKind::C => construct_c(inputs),
    }
}

fn expect_kind(inputs: &FamilyInputs, kind: FamilyKind) -> Result<(), FamilyError> {
    if inputs.kind != kind {
        return Err(FamilyError::Invalid(format!(
            "expected family {kind}, got {}",
            inputs.kind
        )));
    }
    inputs.validate()
}

/// `T = f(u) / (v3^(2 m3) (w3^2 - c^2))` and `D = (w1^2 - a^2) v1^(2 m1) T^M`.
fn a_core(
    f: &MPoly,
    abc: &[Rat; 3],
    m: [u32; 3],
    big_m: u64,
) -> Result<([FactoredRF; 3], FactoredRF, FactoredRF), FamilyError> {
    let w = double_c_symbolic(abc, m)?;
    let fu = FactoredRF::from_poly(&f.x_to_u());
    let e3 = sq_minus(&w[2], &(&abc[2] * &abc[2]), "w3^2 - c^2")?;
    let t = fu
        .mul(&FactoredRF::var_pow(v(2), -2 * m[2] as i64))
        .div(&e3)?;
    let e1 = sq_minus(&w[0], &(&abc[0] * &abc[0]), "w1^2 - a^2")?;
    let d = e1
        .mul(&FactoredRF::var_pow(v(0), 2 * m[0] as i64))
        .mul(&t.pow(big_m as i64)?);
    Ok((w, t, d))
}

fn quadratic_point(t: &FactoredRF, big_m: u64) -> Result<FamilyPoint, FamilyError> {
    Ok(FamilyPoint {
        curve: 0,
        x: FactoredRF::var(Var::U),
        y: t.pow(-(((big_m - 1) / 2) as i64))?,
    })
}

/// `(1 / (vi^2 T^Mi), wi)`.
fn odd_point(
    curve: usize,
    i: usize,
    t: &FactoredRF,
    mi: u64,
    w: &FactoredRF,
) -> Result<FamilyPoint, FamilyError> {
    let x = FactoredRF::var_pow(v(i), 2)
        .mul(&t.pow(mi as i64)?)
        .recip()?;
    Ok(FamilyPoint {
        curve,
        x,
        y: w.clone(),
    })
}

pub fn construct_a(inputs: &FamilyInputs) -> Result<TwistFamily, FamilyError> {
    expect_kind(inputs, FamilyKind::A)?;
    let f = inputs.f.as_ref().expect("validated");
    let m = three(&inputs.m);
    let abc = three(&inputs.constants);
    let big_m = lcm(&m);
    let m_i: Vec<u64> = m.iter().map(|&k| big_m / k as u64).collect();
    let (w, t, d) = a_core(f, &abc, m, big_m)?;
    let mut curves = vec![CurveModel::quadratic(f)];
    let mut points = vec![quadratic_point(&t, big_m)?];
    for i in 0..3 {
        curves.push(CurveModel::odd(m[i], &abc[i] * &abc[i]));
        points.push(odd_point(i + 1, i, &t, m_i[i], &w[i])?);
    }
    finish(TwistFamily {
        inputs: inputs.clone(),
        big_m,
        m_i,
        w,
        t,
        d,
        curves,
        points,
    })
}

pub fn construct_a3(inputs: &FamilyInputs) -> Result<TwistFamily, FamilyError> {
    expect_kind(inputs, FamilyKind::A3)?;
    let f = inputs.f.as_ref().expect("validated");
    let m = inputs.m[0];
    let a = inputs.constants[0].clone();
    let big_m = m as u64;
    let (w, t, d) = a_core(f, &[a.clone(), a.clone(), a.clone()], [m; 3], big_m)?;
    let curves = vec![CurveModel::quadratic(f), CurveModel::odd(m, &a * &a)];
    let mut points = vec![quadratic_point(&t, big_m)?];
    for (i, wi) in w.iter().enumerate() {
        points.push(odd_point(1, i, &t, 1, wi)?);
    }
    finish(TwistFamily {
        inputs: inputs.clone(),
        big_m,
        m_i: vec![1; 3],
        w,
        t,
        d,
        curves,
        points,
    })
}

/// `T = (w1^2 - a^2 f(u)) / v1^(2 m1)` and `D = f(u) T^(M-1)`.
fn b_core(
    inputs: &FamilyInputs,
    abc: &[Rat; 3],
    m: [u32; 3],
    big_m: u64,
) -> Result<([FactoredRF; 3], FactoredRF, FactoredRF), FamilyError> {
    let (_, y_u) = inputs.base_point.as_ref().expect("validated");
    let fu = y_u * y_u;
    let w = double_h_symbolic(abc, m, y_u)?;
    let ts = (0..3)
        .map(|i| {
            let e = sq_minus(&w[i], &(&abc[i] * &abc[i] * &fu), "wi^2 - ai^2 f(u)")?;
            Ok(e.mul(&FactoredRF::var_pow(v(i), -2 * m[i] as i64)))
        })
        .collect::<Result<Vec<_>, FamilyError>>()?;
    let opts = SampleOptions::new(BUILD_SAMPLES, 0);
    for other in &ts[1..] {
        if !compare_sums(
            std::slice::from_ref(&ts[0]),
            std::slice::from_ref(other),
            &opts,
        )?
        .is_equal()
        {
            return Err(FamilyError::Degenerate(
                "the three expressions for T disagree".into(),
            ));
        }
    }
    let t = ts[0].clone();
    let d = t.pow(big_m as i64 - 1)?.scale_by(&fu);
    Ok((w, t, d))
}

fn b_quadratic_point(
    inputs: &FamilyInputs,
    t: &FactoredRF,
    big_m: u64,
) -> Result<FamilyPoint, FamilyError> {
    let (u, _) = inputs.base_point.as_ref().expect("validated");
    Ok(FamilyPoint {
        curve: 0,
        x: rf(u),
        y: t.pow(-(((big_m - 1) / 2) as i64))?,
    })
}

/// `(vi^2 T^Mi, wi T^((M-1)/2))`.
fn even_point(
    curve: usize,
    i: usize,
    t: &FactoredRF,
    mi: u64,
    big_m: u64,
    y: &FactoredRF,
) -> Result<FamilyPoint, FamilyError> {
    Ok(FamilyPoint {
        curve,
        x: FactoredRF::var_pow(v(i), 2).mul(&t.pow(mi as i64)?),
        y: y.mul(&t.pow(((big_m - 1) / 2) as i64)?),
    })
}

pub fn construct_b(inputs: &FamilyInputs) -> Result<TwistFamily, FamilyError> {
    expect_kind(inputs, FamilyKind::B)?;
    let f = inputs.f.as_ref().expect("validated");
    let m = three(&inputs.m);
    let abc = three(&inputs.constants);
    let big_m = lcm(&m);
    let m_i: Vec<u64> = m.iter().map(|&k| big_m / k as u64).collect();
    let (w, t, d) = b_core(inputs, &abc, m, big_m)?;
    let mut curves = vec![CurveModel::quadratic(f)];
    let mut points = vec![b_quadratic_point(inputs, &t, big_m)?];
    for i in 0..3 {
        curves.push(CurveModel::even(m[i], &abc[i] * &abc[i]));
        points.push(even_point(i + 1, i, &t, m_i[i], big_m, &w[i])?);
    }
    finish(TwistFamily {
        inputs: inputs.clone(),
        big_m,
        m_i,
        w,
        t,
        d,
        curves,
        points,
    })
}

pub fn construct_b3(inputs: &FamilyInputs) -> Result<TwistFamily, FamilyError> {
    expect_kind(inputs, FamilyKind::B3)?;
    let f = inputs.f.as_ref().expect("validated");
    let m = inputs.m[0];
    let a = inputs.constants[0].clone();
    let big_m = m as u64;
    let (w, t, d) = b_core(inputs, &[a.clone(), a.clone(), a.clone()], [m; 3], big_m)?;
    let curves = vec![CurveModel::quadratic(f), CurveModel::even(m, &a * &a)];
    let mut points = vec![b_quadratic_point(inputs, &t, big_m)?];
    for (i, wi) in w.iter().enumerate() {
        points.push(even_point(1, i, &t, 1, big_m, wi)?);
    }
    finish(TwistFamily {
        inputs: inputs.clone(),
        big_m,
        m_i: vec![1; 3],
        w,
        t,
        d,
        curves,
        points,
    })
}

pub fn construct_c(inputs: &FamilyInputs) -> Result<TwistFamily, FamilyError> {
    expect_kind(inputs, FamilyKind::C)?;
    let m = three(&inputs.m);
    let m4 = inputs.m[3];
    let abc = three(&inputs.constants);
    let dc = inputs.constants[3].clone();
    let big_m = lcm(&inputs.m);
    let m_i: Vec<u64> = inputs.m.iter().map(|&k| big_m / k as u64).collect();
    let w = double_c_symbolic(&abc, m)?;
    let e3 = w[2].pow(2)?.sub(&rf(&(&abc[2] * &abc[2])))?;
    let den = FactoredRF::var_pow(Var::V4, 2 * m4 as i64).add(
        &e3.scale_by(&dc)
            .mul(&FactoredRF::var_pow(Var::V3, 2 * m[2] as i64)),
    )?;
    if den.is_zero() {
        return Err(FamilyError::Degenerate(
            "denominator of T is identically zero".into(),
        ));
    }
    let t = FactoredRF::var_pow(Var::U, 2).div(&den)?;
    let e1 = sq_minus(&w[0], &(&abc[0] * &abc[0]), "w1^2 - a^2")?;
    let d = e1
        .mul(&FactoredRF::var_pow(Var::V1, 2 * m[0] as i64))
        .mul(&t.pow(big_m as i64)?);
    let mut curves = Vec::new();
    let mut points = Vec::new();
    for i in 0..3 {
        curves.push(CurveModel::odd(m[i], &abc[i] * &abc[i]));
        points.push(odd_point(i, i, &t, m_i[i], &w[i])?);
    }
    curves.push(CurveModel::even(m4, dc));
    points.push(even_point(
        3,
        3,
        &t,
        m_i[3],
        big_m,
        &FactoredRF::var(Var::U),
    )?);
    finish(TwistFamily {
        inputs: inputs.clone(),
        big_m,
        m_i,
        w,
        t,
        d,
        curves,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, rat, ratio, rf_equal, Assignment};

    fn inputs(kind: FamilyKind, f: Option<&str>, m: &[u32], c: &[i64]) -> FamilyInputs {
        FamilyInputs::new(
            kind,
            f.map(|s| parse_poly(s).unwrap()),
            m.to_vec(),
            c.iter().map(|&k| rat(k)).collect(),
        )
    }

    fn ones(u: Option<Rat>, n: usize) -> Assignment {
        let mut a: Assignment = (1..=n).map(|i| (Var::v(i), rat(1))).collect();
        if let Some(u) = u {
            a.insert(Var::U, u);
        }
        a
    }

    fn poly(s: &str) -> FactoredRF {
        FactoredRF::from_poly(&parse_poly(s).unwrap())
    }

    #[test]
    fn family_a_cubic_hand_values() {
        let fam = construct(&inputs(
            FamilyKind::A,
            Some("x^3+1"),
            &[3, 3, 3],
            &[1, 1, 1],
        ))
        .unwrap();
        let vs = ones(None, 3);
        let t = fam.t.specialize(&vs).unwrap();
        assert_eq!(t, poly("u^3+1").scale_by(&ratio(-4, 3)));
        let d = fam.d.specialize(&vs).unwrap();
        assert_eq!(d, poly("u^3+1").pow(3).unwrap().scale_by(&ratio(16, 9)));
        let all = ones(Some(rat(1)), 3);
        let p = &fam.points[0];
        assert_eq!(p.x.eval(&all).unwrap(), rat(1));
        assert_eq!(p.y.eval(&all).unwrap(), ratio(-3, 8));
        let dv = fam.d.eval(&all).unwrap();
        assert_eq!(&dv * ratio(9, 64), rat(2));
        let p1 = &fam.points[1];
        assert_eq!(p1.y.eval(&all).unwrap(), ratio(1, 2));
        assert_eq!(p1.x.eval(&all).unwrap(), fam.t.eval(&all).unwrap().recip());
        assert!(fam.curves[1].holds_at(&dv, &p1.x.eval(&all).unwrap(), &ratio(1, 2)));
    }

    #[test]
    fn worked_example_shape() {
        let fam = construct(&inputs(
            FamilyKind::A,
            Some("x^5+x+1"),
            &[5, 9, 13],
            &[1, 2, 3],
        ))
        .unwrap();
        assert_eq!(fam.big_m, 585);
        assert_eq!(fam.m_i, vec![117, 65, 45]);
        assert_eq!(fam.half_m(), 292);
        let fu = poly("u^5+u+1");
        let e1 = fam.w[0]
            .pow(2)
            .unwrap()
            .sub(&FactoredRF::constant(rat(1)))
            .unwrap();
        let e3 = fam.w[2]
            .pow(2)
            .unwrap()
            .sub(&FactoredRF::constant(rat(9)))
            .unwrap();
        let rest = fam
            .d
            .div(
                &fu.pow(585)
                    .unwrap()
                    .mul(&e1)
                    .mul(&FactoredRF::var_pow(Var::V1, 10)),
            )
            .unwrap()
            .mul(&e3.pow(585).unwrap());
        assert_eq!(rest, FactoredRF::var_pow(Var::V3, -15210));
        let y = fam.points[0]
            .y
            .div(&e3.pow(292).unwrap())
            .unwrap()
            .mul(&fu.pow(292).unwrap());
        assert_eq!(y, FactoredRF::var_pow(Var::V3, 7592));
    }

    #[test]
    fn family_a3_symmetric_points() {
        let fam = construct(&inputs(FamilyKind::A3, Some("x^3+1"), &[3], &[1])).unwrap();
        assert_eq!(fam.curves.len(), 2);
        assert_eq!(fam.points.len(), 4);
        let all = ones(Some(rat(2)), 3);
        let x0 = fam.points[1].x.eval(&all).unwrap();
        let dv = fam.d.eval(&all).unwrap();
        for p in &fam.points[1..] {
            assert_eq!(p.curve, 1);
            assert_eq!(p.x.eval(&all).unwrap(), x0);
            assert_eq!(p.y.eval(&all).unwrap(), ratio(1, 2));
            assert!(fam.curves[1].holds_at(&dv, &x0, &ratio(1, 2)));
        }
        for i in 1..=3 {
            assert_eq!(fam.d.signflip(Var::v(i)), fam.d);
        }
        // flipping v1 fixes x2 and negates y2
        let p2 = &fam.points[2];
        assert!(rf_equal(&p2.x.signflip(Var::V1), &p2.x, 5, 0).unwrap());
        assert!(rf_equal(&p2.y.signflip(Var::V1), &p2.y.neg(), 5, 0).unwrap());
    }

    #[test]
    fn family_b_hand_values() {
        let fam = construct(
            &inputs(FamilyKind::B, Some("x^3-2"), &[3, 3, 3], &[1, 1, 1])
                .with_base_point(rat(3), rat(5)),
        )
        .unwrap();
        assert_eq!(fam.params(), vec![Var::V1, Var::V2, Var::V3]);
        let vs = ones(None, 3);
        for w in &fam.w {
            assert_eq!(w.eval(&vs).unwrap(), ratio(5, 2));
        }
        let t = fam.t.eval(&vs).unwrap();
        let d = fam.d.eval(&vs).unwrap();
        assert_eq!(t, ratio(-75, 4));
        assert_eq!(d, ratio(140625, 16));
        let p = &fam.points[1];
        assert_eq!(p.x.eval(&vs).unwrap(), ratio(-75, 4));
        assert_eq!(p.y.eval(&vs).unwrap(), ratio(-375, 8));
        assert_eq!(&d / (&t * &t), rat(25));
        assert_eq!(fam.points[0].x.eval(&vs).unwrap(), rat(3));
        assert_eq!(fam.points[0].y.eval(&vs).unwrap(), t.recip());
    }

    #[test]
    fn family_b3_invariance() {
        let fam = construct(
            &inputs(FamilyKind::B3, Some("x^3-2"), &[3], &[1]).with_base_point(rat(3), rat(5)),
        )
        .unwrap();
        for i in 1..=3 {
            assert_eq!(fam.t.signflip(Var::v(i)), fam.t);
            assert_eq!(fam.d.signflip(Var::v(i)), fam.d);
        }
        let vs = ones(None, 3);
        let dv = fam.d.eval(&vs).unwrap();
        for p in &fam.points[1..] {
            assert_eq!(p.x.eval(&vs).unwrap(), ratio(-75, 4));
            assert!(fam.curves[1].holds_at(&dv, &p.x.eval(&vs).unwrap(), &p.y.eval(&vs).unwrap()));
        }
    }

    #[test]
    fn family_c_hand_values() {
        let fam = construct(&inputs(FamilyKind::C, None, &[3, 3, 3, 3], &[1, 1, 1, 1])).unwrap();
        let vs = ones(None, 4);
        assert_eq!(
            fam.t.specialize(&vs).unwrap(),
            FactoredRF::var_pow(Var::U, 2).scale_by(&rat(4))
        );
        assert_eq!(
            fam.d.specialize(&vs).unwrap(),
            FactoredRF::var_pow(Var::U, 6).scale_by(&rat(-48))
        );
        let p4 = &fam.points[3];
        assert_eq!(
            p4.x.specialize(&vs).unwrap(),
            FactoredRF::var_pow(Var::U, 2).scale_by(&rat(4))
        );
        assert_eq!(
            p4.y.specialize(&vs).unwrap(),
            FactoredRF::var_pow(Var::U, 3).scale_by(&rat(4))
        );
        let p1 = &fam.points[0];
        assert_eq!(
            p1.x.specialize(&vs).unwrap(),
            FactoredRF::var_pow(Var::U, -2).scale_by(&ratio(1, 4))
        );
        assert_eq!(
            p1.y.specialize(&vs).unwrap(),
            FactoredRF::constant(ratio(1, 2))
        );
        let c = construct(&inputs(FamilyKind::C, None, &[3, 5, 9, 15], &[1, -2, 3, 5])).unwrap();
        assert_eq!(c.big_m, 45);
        assert_eq!(c.m_i, vec![15, 9, 5, 3]);
    }

    #[test]
    fn kind_mismatch() {
        let i = inputs(FamilyKind::C, None, &[3, 3, 3, 3], &[1, 1, 1, 1]);
        assert!(matches!(construct_a(&i), Err(FamilyError::Invalid(_))));
    }
}
