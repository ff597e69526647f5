//! Reduction of a pointed quadric intersection to Weierstrass form.
//!
//! The curve is projected from the origin onto a plane cubic whose rational
//! point `t` is the image of the origin (the tangent direction there). If `t`
//! is a flex the cubic is moved to flex normal form directly. Otherwise the
//! tangent at `t` meets the cubic again at `P2` and the tangent at `P2` meets
//! it again at `P3`; in the frame `t, P2, P3` the quadratic transformation
//! `(a, b, c) = (U^2, V W, U W)` turns the cubic into flex normal form with
//! `t` at the flex. When `P2` is itself a flex that flex is used instead and the
//! model is translated so that the origin still goes to infinity.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::curve::{ProjPoint, QuadricPair};
use super::linalg::{cross, from_columns, inverse, is_zero_vec, mat_vec, proportional, Mat};
use super::weierstrass::{WPoint, WeierstrassModel};
use super::CurveError;
use crate::algebra::poly::Monomial;
use crate::algebra::{Poly, Rat};

pub const MAX_ATTEMPTS: usize = 10;

#[derive(Clone, Debug)]
enum Chart {
    Flex {
        m: Mat<3>,
        m_inv: Mat<3>,
    },
    Quadratic {
        m: Mat<3>,
        m_inv: Mat<3>,
        p2_image: [Rat; 3],
    },
}

impl Chart {
    fn to_uvw(&self, s: &[Rat; 3]) -> [Rat; 3] {
        match self {
            Chart::Flex { m_inv, .. } => mat_vec(m_inv, s),
            Chart::Quadratic {
                m_inv, p2_image, ..
            } => {
                let [a, b, c] = mat_vec(m_inv, s);
                match (a.is_zero(), b.is_zero(), c.is_zero()) {
                    (_, true, true) => [Rat::zero(), Rat::from_integer(1.into()), Rat::zero()],
                    (true, _, true) => p2_image.clone(),
                    _ => [&a * &c, &a * &b, &c * &c],
                }
            }
        }
    }

    fn uvw_to_plane(&self, z: &[Rat; 3]) -> [Rat; 3] {
        match self {
            Chart::Flex { m, .. } => mat_vec(m, z),
            Chart::Quadratic { m, .. } => {
                let [u, v, w] = z;
                let one = Rat::from_integer(1.into());
                let abc = match (u.is_zero(), v.is_zero(), w.is_zero()) {
                    (true, _, true) => [one, Rat::zero(), Rat::zero()],
                    (true, true, _) => [Rat::zero(), Rat::zero(), one],
                    _ => [u * u, v * w, u * w],
                };
                mat_vec(m, &abc)
            }
        }
    }
}

/// Mutually inverse maps between a pointed quadric intersection and its
/// Weierstrass model. The only exceptional point is the origin, which is
/// handled explicitly.
#[derive(Clone, Debug)]
pub struct BirationalMaps {
    origin: ProjPoint,
    frame: Mat<4>,
    frame_inv: Mat<4>,
    lin: [Poly<3>; 2],
    quad: [Poly<3>; 2],
    tangent: [Rat; 3],
    chart: Chart,
    /// `delta / alpha` from the flex normal form.
    k: Rat,
    /// Image of the origin under the chart, subtracted after mapping.
    shift: WPoint,
    attempts: usize,
}

impl BirationalMaps {
    pub fn origin(&self) -> &ProjPoint {
        &self.origin
    }

    /// Number of coordinate frames tried before one worked.
    pub fn attempts(&self) -> usize {
        self.attempts
    }

    fn chart_point(&self, uvw: &[Rat; 3]) -> WPoint {
        let [u, v, w] = uvw;
        if w.is_zero() {
            return WPoint::Infinity;
        }
        WPoint::Affine(-(&self.k * u) / w, &self.k * v / w)
    }

    fn chart_coords(&self, p: &WPoint) -> [Rat; 3] {
        match p {
            WPoint::Infinity => [Rat::zero(), Rat::from_integer(1.into()), Rat::zero()],
            WPoint::Affine(x, y) => [-(x / &self.k), y / &self.k, Rat::from_integer(1.into())],
        }
    }

    /// Caller guarantees `p` is on the curve.
    pub fn forward(&self, model: &WeierstrassModel, p: &ProjPoint) -> WPoint {
        if *p == self.origin {
            return WPoint::Infinity;
        }
        let y = mat_vec(&self.frame_inv, p.coords());
        let s = [y[0].clone(), y[1].clone(), y[2].clone()];
        let q = self.chart_point(&self.chart.to_uvw(&s));
        model.add(&q, &model.neg(&self.shift))
    }

    pub fn backward(&self, model: &WeierstrassModel, q: &WPoint) -> Result<ProjPoint, CurveError> {
        if q.is_infinity() {
            return Ok(self.origin.clone());
        }
        let q = model.add(q, &self.shift);
        let s = self.chart.uvw_to_plane(&self.chart_coords(&q));
        if proportional(&s, &self.tangent) {
            return Ok(self.origin.clone());
        }
        let w = (0..2)
            .find_map(|k| {
                let l = self.lin[k].eval(&s);
                (!l.is_zero()).then(|| -self.quad[k].eval(&s) / l)
            })
            .ok_or_else(|| CurveError::Degenerate("cannot lift plane point".into()))?;
        let [a, b, c] = s;
        ProjPoint::new(mat_vec(&self.frame, &[a, b, c, w]))
    }
}

fn drop_last(p: &Poly<4>) -> Poly<3> {
    Poly::from_terms(
        p.terms()
            .map(|(m, c)| (Monomial([m.0[0], m.0[1], m.0[2]]), c.clone())),
    )
}

fn linear_coeffs(p: &Poly<3>) -> [Rat; 3] {
    std::array::from_fn(|i| p.coeff(&Monomial::var(i)))
}

fn gradient(f: &Poly<3>, p: &[Rat; 3]) -> [Rat; 3] {
    std::array::from_fn(|i| f.derivative(i).eval(p))
}

fn scale(c: &Rat, v: &[Rat; 3]) -> [Rat; 3] {
    std::array::from_fn(|i| c * &v[i])
}

fn sub(a: &[Rat; 3], b: &[Rat; 3]) -> [Rat; 3] {
    std::array::from_fn(|i| &a[i] - &b[i])
}

/// For `p` on `f` and `d` on the tangent at `p`,
/// `f(p + s d) = c2 s^2 + c3 s^3`; returns `(c2, c3)`.
fn tangent_coeffs(f: &Poly<3>, p: &[Rat; 3], d: &[Rat; 3]) -> (Rat, Rat) {
    let at = |s: i64| {
        let pt: [Rat; 3] = std::array::from_fn(|i| &p[i] + &d[i] * Rat::from_integer(s.into()));
        f.eval(&pt)
    };
    let (plus, minus) = (at(1), at(-1));
    let two = Rat::from_integer(2.into());
    ((&plus + &minus) / &two, (plus - minus) / two)
}

/// `(alpha, beta, gamma, delta, epsilon, zeta, eta)` of
/// `a V^2 W + b U V W + g V W^2 + d U^3 + e U^2 W + z U W^2 + h W^3`.
type FlexCoeffs = [Rat; 7];

fn coeff3(g: &Poly<3>, e: [u32; 3]) -> Rat {
    g.coeff(&Monomial(e))
}

fn degenerate(msg: &str) -> CurveError {
    CurveError::Degenerate(msg.to_string())
}

fn flex_chart(
    f: &Poly<3>,
    flex: &[Rat; 3],
    g: &[Rat; 3],
) -> Result<(Chart, FlexCoeffs), CurveError> {
    let d = cross(g, flex);
    let i = g
        .iter()
        .position(|x| !x.is_zero())
        .ok_or_else(|| degenerate("singular flex"))?;
    let mut e = [Rat::zero(), Rat::zero(), Rat::zero()];
    e[i] = Rat::from_integer(1.into());
    let m = from_columns(&[d, flex.clone(), e]);
    let m_inv = inverse(&m).ok_or_else(|| degenerate("flex frame"))?;
    let gg = f.subst_linear(&m);
    if [[0, 3, 0], [1, 2, 0], [2, 1, 0]]
        .iter()
        .any(|&e| !coeff3(&gg, e).is_zero())
    {
        return Err(degenerate("flex normal form"));
    }
    let c = [
        [0, 2, 1],
        [1, 1, 1],
        [0, 1, 2],
        [3, 0, 0],
        [2, 0, 1],
        [1, 0, 2],
        [0, 0, 3],
    ]
    .map(|e| coeff3(&gg, e));
    Ok((Chart::Flex { m, m_inv }, c))
}

fn quadratic_chart(
    f: &Poly<3>,
    t: &[Rat; 3],
    p2: &[Rat; 3],
    p3: &[Rat; 3],
) -> Result<(Chart, FlexCoeffs), CurveError> {
    let m = from_columns(&[t.clone(), p2.clone(), p3.clone()]);
    let m_inv = inverse(&m).ok_or_else(|| degenerate("tangent chain closes up"))?;
    let g = f.subst_linear(&m);
    let vanish = [[3, 0, 0], [0, 3, 0], [0, 0, 3], [2, 1, 0], [0, 2, 1]];
    if vanish.iter().any(|&e| !coeff3(&g, e).is_zero()) {
        return Err(degenerate("quadratic normal form"));
    }
    let [a, b, c, d, e] =
        [[2, 0, 1], [1, 2, 0], [1, 1, 1], [1, 0, 2], [0, 1, 2]].map(|e| coeff3(&g, e));
    if b.is_zero() {
        return Err(degenerate("quadratic normal form"));
    }
    let p2_image = [Rat::zero(), -(&e / &b), Rat::from_integer(1.into())];
    let coeffs = [b, c, e, a, d, Rat::zero(), Rat::zero()];
    Ok((Chart::Quadratic { m, m_inv, p2_image }, coeffs))
}

fn frame(origin: &ProjPoint, attempt: usize) -> Mat<4> {
    let o = origin.coords();
    if attempt == 0 {
        let k = o.iter().position(|x| !x.is_zero()).expect("nonzero point");
        let mut cols: Vec<[Rat; 4]> = (0..4)
            .filter(|&j| j != k)
            .map(|j| std::array::from_fn(|i| Rat::from_integer(((i == j) as i64).into())))
            .collect();
        cols.push(o.clone());
        return from_columns(&[
            cols[0].clone(),
            cols[1].clone(),
            cols[2].clone(),
            cols[3].clone(),
        ]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(attempt as u64);
    loop {
        let mut col = || -> [Rat; 4] {
            std::array::from_fn(|_| Rat::from_integer(rng.random_range(-3i64..=3).into()))
        };
        let m = from_columns(&[col(), col(), col(), o.clone()]);
        if inverse(&m).is_some() {
            return m;
        }
    }
}

fn attempt_reduce(
    pair: &QuadricPair,
    origin: &ProjPoint,
    attempt: usize,
) -> Result<(WeierstrassModel, BirationalMaps), CurveError> {
    let fr = frame(origin, attempt);
    let frame_inv = inverse(&fr).ok_or_else(|| degenerate("frame"))?;
    let moved = pair.q.clone().map(|q| q.subst_linear(&fr));
    if moved.iter().any(|q| !q.coefficient_in(3, 2).is_zero()) {
        return Err(CurveError::NotOnCurve(origin.to_string()));
    }
    let lin = moved.clone().map(|q| drop_last(&q.coefficient_in(3, 1)));
    let quad = moved.map(|q| drop_last(&q.coefficient_in(3, 0)));
    let t = cross(&linear_coeffs(&lin[0]), &linear_coeffs(&lin[1]));
    if is_zero_vec(&t) {
        return Err(degenerate("origin is a singular point"));
    }
    let f = &(&lin[0] * &quad[1]) - &(&lin[1] * &quad[0]);
    if f.is_zero() || f.total_degree() != 3 {
        return Err(degenerate("projection drops degree"));
    }
    let g = gradient(&f, &t);
    if is_zero_vec(&g) {
        return Err(degenerate("image of the origin is singular"));
    }
    let d = cross(&g, &t);
    let (c2, c3) = tangent_coeffs(&f, &t, &d);
    let (chart, coeffs, base) = if c2.is_zero() {
        let (chart, coeffs) = flex_chart(&f, &t, &g)?;
        (chart, coeffs, None)
    } else {
        let p2 = sub(&scale(&c3, &t), &scale(&c2, &d));
        let g2 = gradient(&f, &p2);
        if is_zero_vec(&g2) {
            return Err(degenerate("tangent meets a singular point"));
        }
        let d2 = cross(&g2, &p2);
        let (e2, e3) = tangent_coeffs(&f, &p2, &d2);
        if e2.is_zero() {
            let (chart, coeffs) = flex_chart(&f, &p2, &g2)?;
            (chart, coeffs, Some(t.clone()))
        } else {
            let p3 = sub(&scale(&e3, &p2), &scale(&e2, &d2));
            let (chart, coeffs) = quadratic_chart(&f, &t, &p2, &p3)?;
            (chart, coeffs, None)
        }
    };
    let [alpha, beta, gamma, delta, eps, zeta, eta] = coeffs;
    if alpha.is_zero() || delta.is_zero() {
        return Err(degenerate("flex normal form is reducible"));
    }
    let a2 = &alpha * &alpha;
    let model = WeierstrassModel::new([
        -(&beta / &alpha),
        -(&eps / &alpha),
        &gamma * &delta / &a2,
        &zeta * &delta / &a2,
        -(&eta * &delta * &delta / (&a2 * &alpha)),
    ])
    .map_err(|_| degenerate("singular plane model"))?;
    let mut maps = BirationalMaps {
        origin: origin.clone(),
        frame: fr,
        frame_inv,
        lin,
        quad,
        tangent: t,
        chart,
        k: &delta / &alpha,
        shift: WPoint::Infinity,
        attempts: attempt + 1,
    };
    if let Some(t) = base {
        let uvw = maps.chart.to_uvw(&t);
        maps.shift = maps.chart_point(&uvw);
    }
    Ok((model, maps))
}

/// Weierstrass model of a nonsingular quadric intersection with `origin`
/// sent to the point at infinity.
pub fn reduce(
    pair: &QuadricPair,
    origin: &ProjPoint,
) -> Result<(WeierstrassModel, BirationalMaps), CurveError> {
    if !pair.contains(origin) {
        return Err(CurveError::NotOnCurve(origin.to_string()));
    }
    if !pair.is_nonsingular() {
        return Err(CurveError::Singular);
    }
    for attempt in 0..MAX_ATTEMPTS {
        match attempt_reduce(pair, origin, attempt) {
            Ok(r) => return Ok(r),
            Err(CurveError::Degenerate(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(CurveError::ReductionFailed(MAX_ATTEMPTS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::quartic::QICurve;

    fn pt(c: [i64; 4]) -> ProjPoint {
        ProjPoint::from_ints(c).unwrap()
    }

    #[test]
    fn c123_flex_origin() {
        let c = QICurve::normal_form(&[rat(1), rat(2), rat(3)]);
        let pair = c.quadrics();
        let o = pt([1, 1, 1, 0]);
        let (e, maps) = reduce(&pair, &o).unwrap();
        assert!(matches!(maps.chart, Chart::Flex { .. }));
        let p = pt([1, 2, 3, 1]);
        let fp = maps.forward(&e, &p);
        assert!(e.contains(&fp));
        assert_eq!(maps.backward(&e, &fp).unwrap(), p);
        assert!(maps.forward(&e, &o).is_infinity());
        for t in c.two_torsion().unwrap() {
            let ft = maps.forward(&e, &t);
            assert!(e.double(&ft).is_infinity());
            assert_eq!(maps.backward(&e, &ft).unwrap(), t);
        }
        assert!(e.certify(&fp).is_infinite());
    }

    #[test]
    fn non_flex_origin_uses_tangent_chain() {
        let c = QICurve::normal_form(&[rat(1), rat(2), rat(3)]);
        let pair = c.quadrics();
        let o = pt([1, 2, 3, 1]);
        let (e, maps) = reduce(&pair, &o).unwrap();
        assert!(maps.forward(&e, &o).is_infinity());
        for p in [
            pt([1, 1, 1, 0]),
            pt([1, -2, 3, 1]),
            pt([-1, 2, -3, 1]),
            pt([1, -1, -1, 0]),
        ] {
            let fp = maps.forward(&e, &p);
            assert!(e.contains(&fp), "{p}");
            assert_eq!(maps.backward(&e, &fp).unwrap(), p);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let c = QICurve::normal_form(&[rat(1), rat(2), rat(3)]);
        assert!(matches!(
            reduce(&c.quadrics(), &pt([1, 1, 1, 1])),
            Err(CurveError::NotOnCurve(_))
        ));
        let s = QICurve::normal_form(&[rat(1), rat(1), rat(3)]);
        assert_eq!(
            reduce(&s.quadrics(), &pt([1, 1, 1, 0])).unwrap_err(),
            CurveError::Singular
        );
    }

    #[test]
    fn random_frames_agree() {
        let c = QICurve::normal_form(&[rat(1), rat(2), rat(3)]);
        let pair = c.quadrics();
        let o = pt([1, 1, 1, 0]);
        let p = pt([1, 2, 3, 1]);
        for attempt in 1..4 {
            let (e, maps) = attempt_reduce(&pair, &o, attempt).unwrap();
            let fp = maps.forward(&e, &p);
            assert!(e.contains(&fp));
            assert_eq!(maps.backward(&e, &fp).unwrap(), p);
            assert_eq!(
                e.small_order(&maps.forward(&e, &pt([1, -1, -1, 0]))),
                Some(2)
            );
        }
    }

    #[test]
    fn many_origins_round_trip() {
        let c = QICurve::normal_form(&[rat(1), rat(2), rat(3)]);
        let pair = c.quadrics();
        let g = crate::quartic::QiGroup::from_curve(&c).unwrap();
        let base = pt([1, 2, 3, 1]);
        let pts: Vec<ProjPoint> = (-3..=3).map(|n| g.mul(&base, n).unwrap()).collect();
        let (mut flex, mut quad) = (0, 0);
        for (i, o) in pts.iter().enumerate() {
            let (e, maps) = reduce(&pair, o).unwrap();
            match (&maps.chart, ()) {
                (Chart::Flex { .. }, _) => flex += 1,
                (Chart::Quadratic { .. }, _) => quad += 1,
            }
            assert!(maps.forward(&e, o).is_infinity());
            for p in pts.iter().chain(c.two_torsion().unwrap().iter()) {
                let fp = maps.forward(&e, p);
                assert!(e.contains(&fp));
                assert_eq!(&maps.backward(&e, &fp).unwrap(), p, "origin #{i}");
            }
        }
        assert!(flex > 0 && quad > 0);
    }
}
