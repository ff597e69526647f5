//! Quadric pairs, diagonal curves and projective points.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::CurveError;
use crate::algebra::poly::Monomial;
use crate::algebra::{fmt_rat, Poly, Rat, UPoly};

/// A point of P^3, normalized so that either `w = 1`, or `w = 0` and the
/// coordinates are coprime integers with the first nonzero one positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint([Rat; 4]);

impl ProjPoint {
    pub fn new(coords: [Rat; 4]) -> Result<Self, CurveError> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(CurveError::ZeroPoint);
        }
        let mut c = coords;
        if !c[3].is_zero() {
            let inv = c[3].recip();
            for x in c.iter_mut() {
                *x *= &inv;
            }
            return Ok(ProjPoint(c));
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for x in &c {
            den = den.lcm(x.denom());
            num = num.gcd(x.numer());
        }
        let first_neg = c
            .iter()
            .find(|x| !x.is_zero())
            .is_some_and(|x| x.is_negative());
        let mut f = Rat::new(den, num);
        if first_neg {
            f = -f;
        }
        for x in c.iter_mut() {
            *x *= &f;
        }
        Ok(ProjPoint(c))
    }

    pub fn from_ints(c: [i64; 4]) -> Result<Self, CurveError> {
        Self::new(c.map(|x| Rat::from_integer(x.into())))
    }

    pub fn coords(&self) -> &[Rat; 4] {
        &self.0
    }

    /// The point with the last coordinate negated.
    pub fn flip_w(&self) -> Self {
        let [p, q, r, w] = self.0.clone();
        ProjPoint::new([p, q, r, -w]).expect("nonzero")
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(fmt_rat).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

/// Two homogeneous quadrics in the coordinates `(z0, z1, z2, z3)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricPair {
    pub q: [Poly<4>; 2],
}

impl QuadricPair {
    pub fn new(q1: Poly<4>, q2: Poly<4>) -> Self {
        QuadricPair { q: [q1, q2] }
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.q.iter().all(|q| q.eval(p.coords()).is_zero())
    }

    fn gram(q: &Poly<4>) -> [[Rat; 4]; 4] {
        let half = Rat::new(1.into(), 2.into());
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let mut e = [0u32; 4];
                e[i] += 1;
                e[j] += 1;
                let c = q.coeff(&Monomial(e));
                if i == j {
                    c
                } else {
                    c * &half
                }
            })
        })
    }

    /// `det(mu * Q1 + Q2)` as a polynomial in `mu`.
    pub fn pencil_determinant(&self) -> UPoly {
        let (a, b) = (Self::gram(&self.q[0]), Self::gram(&self.q[1]));
        let entry = |i: usize, j: usize| UPoly::linear(b[i][j].clone(), a[i][j].clone());
        let mut det = UPoly::zero();
        for (perm, sign) in permutations4() {
            let mut t = UPoly::constant(Rat::from_integer(sign.into()));
            for (i, &j) in perm.iter().enumerate() {
                t = t.mul(&entry(i, j));
            }
            det = det.add(&t);
        }
        det
    }

    /// The binary quartic `det(mu*Q1 + nu*Q2)` has four distinct roots.
    pub fn is_nonsingular(&self) -> bool {
        let det = self.pencil_determinant();
        match det.degree() {
            Some(d) if d >= 3 => det.is_squarefree(),
            _ => false,
        }
    }
}

fn permutations4() -> Vec<([usize; 4], i64)> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j]));
                    if distinct {
                        let inv = (0..4)
                            .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                            .filter(|&(i, j)| p[i] > p[j])
                            .count();
                        out.push((p, if inv % 2 == 0 { 1 } else { -1 }));
                    }
                }
            }
        }
    }
    out
}

/// `{ [p:q:r:w] : l1 p^2 - k1 w^2 = l2 q^2 - k2 w^2 = l3 r^2 - k3 w^2 }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QICurve {
    lambda: [Rat; 3],
    kappa: [Rat; 3],
}

impl QICurve {
    pub fn new(lambda: [Rat; 3], kappa: [Rat; 3]) -> Result<Self, CurveError> {
        if lambda.iter().any(|l| l.is_zero()) {
            return Err(CurveError::ZeroLambda);
        }
        Ok(QICurve { lambda, kappa })
    }

    /// `x^2 - T1^2 = y^2 - T2^2 = z^2 - T3^2`.
    pub fn normal_form(t: &[Rat; 3]) -> Self {
        QICurve {
            lambda: std::array::from_fn(|_| Rat::one()),
            kappa: std::array::from_fn(|i| &t[i] * &t[i]),
        }
    }

    pub fn lambda(&self) -> &[Rat; 3] {
        &self.lambda
    }

    pub fn kappa(&self) -> &[Rat; 3] {
        &self.kappa
    }

    fn side(&self, i: usize, c: &[Rat; 4]) -> Rat {
        &self.lambda[i] * &c[i] * &c[i] - &self.kappa[i] * &c[3] * &c[3]
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        let c = p.coords();
        let s0 = self.side(0, c);
        s0 == self.side(1, c) && s0 == self.side(2, c)
    }

    pub fn quadrics(&self) -> QuadricPair {
        let sq = |i: usize, c: Rat| {
            let mut e = [0; 4];
            e[i] = 2;
            Poly::<4>::term(Monomial(e), c)
        };
        let q1 = &(&sq(0, self.lambda[0].clone()) - &sq(1, self.lambda[1].clone()))
            - &sq(3, &self.kappa[0] - &self.kappa[1]);
        let q2 = &(&sq(1, self.lambda[1].clone()) - &sq(2, self.lambda[2].clone()))
            - &sq(3, &self.kappa[1] - &self.kappa[2]);
        QuadricPair::new(q1, q2)
    }

    pub fn is_nonsingular(&self) -> bool {
        self.quadrics().is_nonsingular()
    }

    /// The four points with `w = 0`, sign patterns (+,+,+), (+,-,-), (-,+,-),
    /// (-,-,+) in this order. The first is the identity used throughout.
    pub fn two_torsion(&self) -> Result<[ProjPoint; 4], CurveError> {
        let l = &self.lambda;
        let roots = [
            rat_sqrt(&(&l[1] * &l[2])),
            rat_sqrt(&(&l[0] * &l[2])),
            rat_sqrt(&(&l[0] * &l[1])),
        ];
        let [Some(s0), Some(s1), Some(s2)] = roots else {
            return Err(CurveError::TwoTorsionNotRational);
        };
        let signs = [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]];
        let pts = signs.map(|s| {
            let sgn = |k: i64, r: &Rat| if k > 0 { r.clone() } else { -r };
            ProjPoint::new([sgn(s[0], &s0), sgn(s[1], &s1), sgn(s[2], &s2), Rat::zero()])
                .expect("nonzero")
        });
        Ok(pts)
    }

    /// The all-plus two-torsion point.
    pub fn origin(&self) -> Result<ProjPoint, CurveError> {
        Ok(self.two_torsion()?[0].clone())
    }
}

/// Square root in Q, if there is one.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rat::new(sn, sd))
}
