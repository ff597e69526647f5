//! Order certificates for rational points on the genus-one curves that occur
//! as twists: `D y^2 = f(x)` with `deg f` 3 or 4, `y^2 = D x^3 + k` and
//! `y^2 = x^3 + k D`.

use num_traits::Zero;

use super::curve::{ProjPoint, QuadricPair};
use super::group::QiGroup;
use super::weierstrass::{OrderCertificate, WPoint, WeierstrassModel};
use super::CurveError;
use crate::algebra::poly::Monomial;
use crate::algebra::{Poly, Rat};

fn on_curve(ok: bool, x: &Rat, y: &Rat) -> Result<(), CurveError> {
    if ok {
        Ok(())
    } else {
        Err(CurveError::NotOnCurve(format!("({x}, {y})")))
    }
}

/// Certificate for `(x, y)` on `D y^2 = f(x)`; `coeffs` are the coefficients
/// of `f`, constant term first.
///
/// For a cubic the class of `P - O` is certified via a Weierstrass model. For
/// a quartic the class `2P - (oo+ + oo-)` is certified: with `P` as origin it
/// is the point `(x, -y)`.
pub fn certify_quadratic_twist(
    coeffs: &[Rat],
    d: &Rat,
    x: &Rat,
    y: &Rat,
) -> Result<OrderCertificate, CurveError> {
    if d.is_zero() {
        return Err(CurveError::ZeroInput);
    }
    let fx = coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c);
    on_curve(d * y * y == fx, x, y)?;
    match coeffs.len() {
        4 => {
            let [c0, c1, c2, c3] = [&coeffs[0], &coeffs[1], &coeffs[2], &coeffs[3]];
            let e = WeierstrassModel::new([
                Rat::zero(),
                c2 * d,
                Rat::zero(),
                c1 * c3 * d * d,
                c0 * c3 * c3 * d * d * d,
            ])?;
            let p = WPoint::affine(c3 * d * x, c3 * d * d * y);
            debug_assert!(e.contains(&p));
            Ok(e.certify(&p))
        }
        5 => {
            let g = QiGroup::new(quartic_pair(coeffs, d), &lift(x, y)?)?;
            g.certify(&lift(x, &-y)?)
        }
        _ => Err(CurveError::Degenerate(
            "quadratic twist of genus other than one".into(),
        )),
    }
}

/// `[X:Z:Y:W] = [x : x^2 : y : 1]` on `X^2 = Z W`, `D Y^2 = f4 Z^2 + f3 X Z + f2 Z W + f1 X W + f0 W^2`.
fn quartic_pair(c: &[Rat], d: &Rat) -> QuadricPair {
    let t = |e: [u32; 4], k: Rat| Poly::<4>::term(Monomial(e), k);
    let one = Rat::from_integer(1.into());
    let q1 = &t([2, 0, 0, 0], one.clone()) - &t([0, 1, 0, 1], one);
    let rhs = [
        t([0, 2, 0, 0], c[4].clone()),
        t([1, 1, 0, 0], c[3].clone()),
        t([0, 1, 0, 1], c[2].clone()),
        t([1, 0, 0, 1], c[1].clone()),
        t([0, 0, 0, 2], c[0].clone()),
    ]
    .iter()
    .fold(Poly::zero(), |acc, p| &acc + p);
    let q2 = &t([0, 0, 2, 0], d.clone()) - &rhs;
    QuadricPair::new(q1, q2)
}

fn lift(x: &Rat, y: &Rat) -> Result<ProjPoint, CurveError> {
    ProjPoint::new([x.clone(), x * x, y.clone(), Rat::from_integer(1.into())])
}

/// Certificate for `(x, y)` on `y^2 = D x^3 + k`, via `(X, Y) = (D x, D y)`
/// on `Y^2 = X^3 + D^2 k`.
pub fn certify_odd_cubic_twist(
    d: &Rat,
    k: &Rat,
    x: &Rat,
    y: &Rat,
) -> Result<OrderCertificate, CurveError> {
    on_curve(y * y == d * x * x * x + k, x, y)?;
    if d.is_zero() {
        return Err(CurveError::ZeroInput);
    }
    let e = WeierstrassModel::short(Rat::zero(), d * d * k)?;
    Ok(e.certify(&WPoint::affine(d * x, d * y)))
}

/// Certificate for `(x, y)` on `y^2 = x^3 + k D`.
pub fn certify_even_cubic_twist(
    d: &Rat,
    k: &Rat,
    x: &Rat,
    y: &Rat,
) -> Result<OrderCertificate, CurveError> {
    on_curve(y * y == x * x * x + k * d, x, y)?;
    let e = WeierstrassModel::short(Rat::zero(), k * d)?;
    Ok(e.certify(&WPoint::affine(x.clone(), y.clone())))
}
