//! Long Weierstrass models over Q and their group law.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::CurveError;
use crate::algebra::{fmt_rat, Rat};

/// Largest order of a rational torsion point on an elliptic curve over Q.
pub const MAX_TORSION_ORDER: u32 = 12;

/// `y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassModel {
    pub a1: Rat,
    pub a2: Rat,
    pub a3: Rat,
    pub a4: Rat,
    pub a6: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WPoint {
    Infinity,
    Affine(Rat, Rat),
}

impl WPoint {
    pub fn affine(x: Rat, y: Rat) -> Self {
        WPoint::Affine(x, y)
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, WPoint::Infinity)
    }
}

impl fmt::Display for WPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WPoint::Infinity => f.write_str("O"),
            WPoint::Affine(x, y) => write!(f, "({}, {})", fmt_rat(x), fmt_rat(y)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrderCertificate {
    /// `n P != O` was checked for every listed `n`.
    InfiniteOrder {
        verified: Vec<u32>,
    },
    Torsion {
        order: u32,
    },
}

impl OrderCertificate {
    pub fn is_infinite(&self) -> bool {
        matches!(self, OrderCertificate::InfiniteOrder { .. })
    }
}

impl fmt::Display for OrderCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderCertificate::InfiniteOrder { .. } => f.write_str("infinite order"),
            OrderCertificate::Torsion { order } => write!(f, "torsion of order {order}"),
        }
    }
}

impl WeierstrassModel {
    pub fn new(a: [Rat; 5]) -> Result<Self, CurveError> {
        let [a1, a2, a3, a4, a6] = a;
        let e = WeierstrassModel { a1, a2, a3, a4, a6 };
        if e.discriminant().is_zero() {
            return Err(CurveError::Singular);
        }
        Ok(e)
    }

    /// `y^2 = x^3 + a x + b`.
    pub fn short(a: Rat, b: Rat) -> Result<Self, CurveError> {
        Self::new([Rat::zero(), Rat::zero(), Rat::zero(), a, b])
    }

    pub fn coefficients(&self) -> [&Rat; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    pub fn discriminant(&self) -> Rat {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let b2 = a1 * a1 + a2 * Rat::from_integer(4.into());
        let b4 = a4 * Rat::from_integer(2.into()) + a1 * a3;
        let b6 = a3 * a3 + a6 * Rat::from_integer(4.into());
        let b8 = a1 * a1 * a6 + a2 * a6 * Rat::from_integer(4.into()) - a1 * a3 * a4 + a2 * a3 * a3
            - a4 * a4;
        let k = |n: i64| Rat::from_integer(n.into());
        -(&b2 * &b2 * &b8) - k(8) * &b4 * &b4 * &b4 - k(27) * &b6 * &b6 + k(9) * &b2 * &b4 * &b6
    }

    pub fn contains(&self, p: &WPoint) -> bool {
        match p {
            WPoint::Infinity => true,
            WPoint::Affine(x, y) => {
                let lhs = y * y + &self.a1 * x * y + &self.a3 * y;
                let rhs = x * x * x + &self.a2 * x * x + &self.a4 * x + &self.a6;
                lhs == rhs
            }
        }
    }

    pub fn neg(&self, p: &WPoint) -> WPoint {
        match p {
            WPoint::Infinity => WPoint::Infinity,
            WPoint::Affine(x, y) => WPoint::Affine(x.clone(), -y - &self.a1 * x - &self.a3),
        }
    }

    pub fn add(&self, p: &WPoint, q: &WPoint) -> WPoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (WPoint::Infinity, _) => return q.clone(),
            (_, WPoint::Infinity) => return p.clone(),
            (WPoint::Affine(x1, y1), WPoint::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let (lambda, nu) = if x1 == x2 {
            let den = y1 + y2 + &self.a1 * x2 + &self.a3;
            if den.is_zero() {
                return WPoint::Infinity;
            }
            let k = |n: i64| Rat::from_integer(n.into());
            let den = y1 * k(2) + &self.a1 * x1 + &self.a3;
            let l = (x1 * x1 * k(3) + &self.a2 * x1 * k(2) + &self.a4 - &self.a1 * y1) / &den;
            let n = (-(x1 * x1 * x1) + &self.a4 * x1 + &self.a6 * k(2) - &self.a3 * y1) / &den;
            (l, n)
        } else {
            let dx = x2 - x1;
            ((y2 - y1) / &dx, (y1 * x2 - y2 * x1) / &dx)
        };
        let x3 = &lambda * &lambda + &self.a1 * &lambda - &self.a2 - x1 - x2;
        let y3 = -(&lambda + &self.a1) * &x3 - nu - &self.a3;
        WPoint::Affine(x3, y3)
    }

    pub fn double(&self, p: &WPoint) -> WPoint {
        self.add(p, p)
    }

    pub fn mul(&self, p: &WPoint, n: i64) -> WPoint {
        let mut base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = WPoint::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.double(&base);
            }
        }
        acc
    }

    /// Smallest `n <= MAX_TORSION_ORDER` with `n P = O`, if any.
    pub fn small_order(&self, p: &WPoint) -> Option<u32> {
        let mut acc = WPoint::Infinity;
        for n in 1..=MAX_TORSION_ORDER {
            acc = self.add(&acc, p);
            if acc.is_infinity() {
                return Some(n);
            }
        }
        None
    }

    /// Infinite order iff no multiple up to the torsion bound vanishes.
    pub fn certify(&self, p: &WPoint) -> OrderCertificate {
        match self.small_order(p) {
            Some(order) => OrderCertificate::Torsion { order },
            None => OrderCertificate::InfiniteOrder {
                verified: (2..=MAX_TORSION_ORDER).collect(),
            },
        }
    }
}

impl fmt::Display for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coefficients().iter().map(|r| fmt_rat(r)).collect();
        write!(f, "[{}]", c.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use proptest::prelude::*;

    fn e1() -> WeierstrassModel {
        WeierstrassModel::short(rat(0), rat(1)).unwrap()
    }

    #[test]
    fn order_six_point() {
        let e = e1();
        let p = WPoint::affine(rat(2), rat(3));
        assert!(e.contains(&p));
        assert_eq!(e.certify(&p), OrderCertificate::Torsion { order: 6 });
        assert!(e.mul(&p, 6).is_infinity());
        assert_eq!(e.mul(&p, 3), WPoint::affine(rat(-1), rat(0)));
    }

    #[test]
    fn singular_model_rejected() {
        assert_eq!(
            WeierstrassModel::short(rat(0), rat(0)),
            Err(CurveError::Singular)
        );
        assert_eq!(
            WeierstrassModel::short(rat(-3), rat(2)),
            Err(CurveError::Singular)
        );
    }

    #[test]
    fn rank_one_point() {
        // y^2 = x^3 - 2 has (3, 5) of infinite order
        let e = WeierstrassModel::short(rat(0), rat(-2)).unwrap();
        let p = WPoint::affine(rat(3), rat(5));
        assert!(e.certify(&p).is_infinite());
    }

    proptest! {
        #[test]
        fn group_laws_on_multiples(a in -6i64..6, b in -6i64..6, c in -6i64..6) {
            let e = WeierstrassModel::short(rat(0), rat(-2)).unwrap();
            let g = WPoint::affine(rat(3), rat(5));
            let (p, q, r) = (e.mul(&g, a), e.mul(&g, b), e.mul(&g, c));
            prop_assert!(e.contains(&p));
            prop_assert_eq!(e.add(&p, &q), e.add(&q, &p));
            prop_assert_eq!(e.add(&e.add(&p, &q), &r), e.add(&p, &e.add(&q, &r)));
            prop_assert_eq!(e.add(&p, &q), e.mul(&g, a + b));
            prop_assert!(e.add(&p, &e.neg(&p)).is_infinity());
        }

        #[test]
        fn long_form_laws(n in 1i64..8) {
            // 11a3: y^2 + y = x^3 - x^2, (0,0) of order 5
            let e = WeierstrassModel::new([rat(0), rat(-1), rat(1), rat(0), rat(0)]).unwrap();
            let p = WPoint::affine(rat(0), rat(0));
            prop_assert!(e.contains(&e.mul(&p, n)));
            prop_assert_eq!(e.small_order(&p), Some(5));
        }
    }
}
