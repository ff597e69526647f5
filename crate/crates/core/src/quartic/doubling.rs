//! Explicit doubling on the diagonal curves, over Q and symbolically in
//! `v1, v2, v3`.
//!
//! On `x^2 - T1^2 = y^2 - T2^2 = z^2 - T3^2` with origin `[1:1:1:0]`,
//! `2 [T1:T2:T3:1] = [X1:X2:X3:1]` where
//! `Xi = (Ti^2 Tj^2 + Ti^2 Tk^2 - Tj^2 Tk^2) / (2 T1 T2 T3)`.

use num_traits::Zero;

use super::{CurveError, ProjPoint};
use crate::algebra::poly::Monomial;
use crate::algebra::{FactoredRF, MPoly, Rat, Var, NVARS};

fn others(i: usize) -> (usize, usize) {
    match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

fn nonzero(xs: &[&Rat]) -> Result<(), CurveError> {
    if xs.iter().any(|x| x.is_zero()) {
        Err(CurveError::ZeroInput)
    } else {
        Ok(())
    }
}

fn rpow(r: &Rat, e: u32) -> Rat {
    num_traits::pow(r.clone(), e as usize)
}

pub fn double_normal_form(t: &[Rat; 3]) -> Result<[Rat; 3], CurveError> {
    nonzero(&[&t[0], &t[1], &t[2]])?;
    let sq: [Rat; 3] = std::array::from_fn(|i| &t[i] * &t[i]);
    let den = &t[0] * &t[1] * &t[2] * Rat::from_integer(2.into());
    Ok(std::array::from_fn(|i| {
        let (j, k) = others(i);
        (&sq[i] * &sq[j] + &sq[i] * &sq[k] - &sq[j] * &sq[k]) / &den
    }))
}

/// `2 [a:b:c:1]` on `v1^(2m1) (p^2 - a^2) = v2^(2m2) (q^2 - b^2) = v3^(2m3) (r^2 - c^2)`.
pub fn double_c_explicit(
    abc: &[Rat; 3],
    m: [u32; 3],
    v: &[Rat; 3],
) -> Result<[Rat; 3], CurveError> {
    nonzero(&[&abc[0], &abc[1], &abc[2], &v[0], &v[1], &v[2]])?;
    let vm: [Rat; 3] = std::array::from_fn(|i| rpow(&v[i], m[i]));
    let t: [Rat; 3] = std::array::from_fn(|i| &abc[i] * &vm[i]);
    let x = double_normal_form(&t)?;
    Ok(std::array::from_fn(|i| &x[i] / &vm[i]))
}

/// `2 [a y:b y:c y:1]` on `L1 (p^2 - a^2 y^2) = L2 (q^2 - b^2 y^2) = L3 (r^2 - c^2 y^2)`
/// with `Li = prod_{j != i} vj^(2 mj)`.
pub fn double_h_explicit(
    abc: &[Rat; 3],
    m: [u32; 3],
    y_u: &Rat,
    v: &[Rat; 3],
) -> Result<[Rat; 3], CurveError> {
    nonzero(&[&abc[0], &abc[1], &abc[2], y_u, &v[0], &v[1], &v[2]])?;
    let vm: [Rat; 3] = std::array::from_fn(|i| rpow(&v[i], m[i]));
    let scale: [Rat; 3] = std::array::from_fn(|i| {
        let (j, k) = others(i);
        &vm[j] * &vm[k]
    });
    let t: [Rat; 3] = std::array::from_fn(|i| &abc[i] * &scale[i] * y_u);
    let x = double_normal_form(&t)?;
    Ok(std::array::from_fn(|i| &x[i] / &scale[i]))
}

/// The identity `[1/v1^m1 : 1/v2^m2 : 1/v3^m3 : 0]` matching `[1:1:1:0]` on the
/// normal form. For negative `vi` this is not the all-positive two-torsion point.
pub fn identity_c(m: [u32; 3], v: &[Rat; 3]) -> Result<ProjPoint, CurveError> {
    nonzero(&[&v[0], &v[1], &v[2]])?;
    let c: [Rat; 3] = std::array::from_fn(|i| rpow(&v[i], m[i]).recip());
    ProjPoint::new([c[0].clone(), c[1].clone(), c[2].clone(), Rat::zero()])
}

/// The identity `[v1^m1 : v2^m2 : v3^m3 : 0]` of the curve doubled by
/// `double_h_explicit`.
pub fn identity_h(m: [u32; 3], v: &[Rat; 3]) -> Result<ProjPoint, CurveError> {
    nonzero(&[&v[0], &v[1], &v[2]])?;
    let c: [Rat; 3] = std::array::from_fn(|i| rpow(&v[i], m[i]));
    ProjPoint::new([c[0].clone(), c[1].clone(), c[2].clone(), Rat::zero()])
}

fn vmono(exps: [(usize, u32); 2], c: Rat) -> MPoly {
    let mut e = [0u32; NVARS];
    for (i, k) in exps {
        e[Var::v(i + 1).index()] += k;
    }
    MPoly::term(Monomial(e), c)
}

fn half_inv_abc(abc: &[Rat; 3]) -> Rat {
    (&abc[0] * &abc[1] * &abc[2] * Rat::from_integer(2.into())).recip()
}

/// `double_c_explicit` with `v1, v2, v3` left symbolic.
pub fn double_c_symbolic(abc: &[Rat; 3], m: [u32; 3]) -> Result<[FactoredRF; 3], CurveError> {
    nonzero(&[&abc[0], &abc[1], &abc[2]])?;
    let a2: [Rat; 3] = std::array::from_fn(|i| &abc[i] * &abc[i]);
    Ok(std::array::from_fn(|i| {
        let (j, k) = others(i);
        let num = &(&vmono([(i, 2 * m[i]), (j, 2 * m[j])], &a2[i] * &a2[j])
            + &vmono([(i, 2 * m[i]), (k, 2 * m[k])], &a2[i] * &a2[k]))
            - &vmono([(j, 2 * m[j]), (k, 2 * m[k])], &a2[j] * &a2[k]);
        FactoredRF::from_poly(&num)
            .mul(&FactoredRF::var_pow(Var::v(i + 1), -2 * m[i] as i64))
            .mul(&FactoredRF::var_pow(Var::v(j + 1), -(m[j] as i64)))
            .mul(&FactoredRF::var_pow(Var::v(k + 1), -(m[k] as i64)))
            .scale_by(&half_inv_abc(abc))
    }))
}

/// `double_h_explicit` with `v1, v2, v3` left symbolic.
pub fn double_h_symbolic(
    abc: &[Rat; 3],
    m: [u32; 3],
    y_u: &Rat,
) -> Result<[FactoredRF; 3], CurveError> {
    nonzero(&[&abc[0], &abc[1], &abc[2], y_u])?;
    let a2: [Rat; 3] = std::array::from_fn(|i| &abc[i] * &abc[i]);
    Ok(std::array::from_fn(|i| {
        let (j, k) = others(i);
        let num = &(&vmono([(k, 2 * m[k]), (k, 0)], &a2[i] * &a2[j])
            + &vmono([(j, 2 * m[j]), (j, 0)], &a2[i] * &a2[k]))
            - &vmono([(i, 2 * m[i]), (i, 0)], &a2[j] * &a2[k]);
        FactoredRF::from_poly(&num)
            .mul(&FactoredRF::var_pow(Var::v(j + 1), -(m[j] as i64)))
            .mul(&FactoredRF::var_pow(Var::v(k + 1), -(m[k] as i64)))
            .scale_by(&(half_inv_abc(abc) * y_u))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio, rf_equal, Assignment};
    use crate::quartic::{QICurve, QiGroup};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn abc(a: i64, b: i64, c: i64) -> [Rat; 3] {
        [rat(a), rat(b), rat(c)]
    }

    #[test]
    fn unit_example() {
        let w = double_c_explicit(&abc(1, 1, 1), [3, 3, 3], &abc(1, 1, 1)).unwrap();
        assert_eq!(w, [ratio(1, 2), ratio(1, 2), ratio(1, 2)]);
        for x in &w {
            assert_eq!(x * x - rat(1), ratio(-3, 4));
        }
        let h = double_h_explicit(&abc(1, 1, 1), [3, 3, 3], &rat(5), &abc(1, 1, 1)).unwrap();
        assert_eq!(h, [ratio(5, 2), ratio(5, 2), ratio(5, 2)]);
    }

    #[test]
    fn zero_input_rejected() {
        assert_eq!(
            double_c_explicit(&abc(0, 1, 1), [3, 3, 3], &abc(1, 1, 1)),
            Err(CurveError::ZeroInput)
        );
        assert_eq!(
            double_h_explicit(&abc(1, 1, 1), [3, 3, 3], &rat(0), &abc(1, 1, 1)),
            Err(CurveError::ZeroInput)
        );
        assert!(double_c_symbolic(&abc(1, 0, 1), [3, 3, 3]).is_err());
    }

    #[test]
    fn worked_example_coordinates() {
        let w = double_c_symbolic(&abc(1, 2, 3), [5, 9, 13]).unwrap();
        let rf = |s: &str| FactoredRF::parse(s).unwrap();
        let sum = |xs: &[&str]| {
            xs.iter()
                .map(|s| rf(s))
                .reduce(|a, b| a.add(&b).unwrap())
                .unwrap()
        };
        let w1 = sum(&[
            "3/4 * (v3)^13 * (v2)^-9",
            "1/3 * (v2)^9 * (v3)^-13",
            "-3 * (v2)^9 * (v3)^13 * (v1)^-10",
        ]);
        let w2 = sum(&[
            "3 * (v3)^13 * (v1)^-5",
            "1/3 * (v1)^5 * (v3)^-13",
            "-3/4 * (v1)^5 * (v3)^13 * (v2)^-18",
        ]);
        let w3 = sum(&[
            "3 * (v2)^9 * (v1)^-5",
            "3/4 * (v1)^5 * (v2)^-9",
            "-1/3 * (v1)^5 * (v2)^9 * (v3)^-26",
        ]);
        for (got, want) in w.iter().zip([w1, w2, w3]) {
            assert!(rf_equal(got, &want, 5, 0).unwrap());
        }
    }

    fn random_v(rng: &mut ChaCha8Rng) -> [Rat; 3] {
        std::array::from_fn(|_| loop {
            let n: i64 = rng.random_range(-4..=4);
            let d: i64 = rng.random_range(1..=3);
            if n != 0 {
                break ratio(n, d);
            }
        })
    }

    fn assignment(v: &[Rat; 3]) -> Assignment {
        (0..3).map(|i| (Var::v(i + 1), v[i].clone())).collect()
    }

    #[test]
    fn symbolic_matches_explicit() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (k, m) = (abc(1, 2, 3), [3, 5, 7]);
        let wc = double_c_symbolic(&k, m).unwrap();
        let wh = double_h_symbolic(&k, m, &ratio(5, 3)).unwrap();
        for _ in 0..10 {
            let v = random_v(&mut rng);
            let at = assignment(&v);
            let ec = double_c_explicit(&k, m, &v).unwrap();
            let eh = double_h_explicit(&k, m, &ratio(5, 3), &v).unwrap();
            for i in 0..3 {
                assert_eq!(wc[i].eval(&at).unwrap(), ec[i]);
                assert_eq!(wh[i].eval(&at).unwrap(), eh[i]);
            }
        }
    }

    fn check_against_group(curve: QICurve, origin: ProjPoint, p: [Rat; 3], w: [Rat; 3]) -> bool {
        let doubled = ProjPoint::new([w[0].clone(), w[1].clone(), w[2].clone(), rat(1)]).unwrap();
        assert!(curve.contains(&doubled));
        if !curve.is_nonsingular() {
            return false;
        }
        assert!(curve.two_torsion().unwrap().contains(&origin));
        let g = QiGroup::new(curve.quadrics(), &origin).unwrap();
        let p = ProjPoint::new([p[0].clone(), p[1].clone(), p[2].clone(), rat(1)]).unwrap();
        assert_eq!(g.add(&p, &p).unwrap(), doubled);
        true
    }

    #[test]
    fn doubling_matches_group_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (k, m) = (abc(1, 2, 3), [3, 3, 5]);
        let k2: [Rat; 3] = std::array::from_fn(|i| &k[i] * &k[i]);
        let mut checked = 0;
        for _ in 0..20 {
            let v = random_v(&mut rng);
            let lam: [Rat; 3] = std::array::from_fn(|i| rpow(&v[i], 2 * m[i]));
            let ck: [Rat; 3] = std::array::from_fn(|i| &lam[i] * &k2[i]);
            let c = QICurve::new(lam.clone(), ck).unwrap();
            let w = double_c_explicit(&k, m, &v).unwrap();
            checked += check_against_group(c, identity_c(m, &v).unwrap(), k.clone(), w) as usize;

            let y = ratio(rng.random_range(1..=7), rng.random_range(1..=3));
            let hl: [Rat; 3] = std::array::from_fn(|i| {
                let (j, l) = others(i);
                &lam[j] * &lam[l]
            });
            let hk: [Rat; 3] = std::array::from_fn(|i| &hl[i] * &k2[i] * &y * &y);
            let h = QICurve::new(hl, hk).unwrap();
            let w = double_h_explicit(&k, m, &y, &v).unwrap();
            let p: [Rat; 3] = std::array::from_fn(|i| &k[i] * &y);
            checked += check_against_group(h, identity_h(m, &v).unwrap(), p, w) as usize;
        }
        assert!(checked >= 30, "only {checked} nonsingular specializations");
    }
}
