//! Dense univariate polynomials over Q: Euclid's gcd and square-freeness.

use num_traits::Zero;

use super::poly::{MPoly, Monomial, Var};
use super::{AlgebraError, Rat};

/// Coefficients from the constant term upwards; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UPoly(Vec<Rat>);

impl UPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// `a*t + b`.
    pub fn linear(a: Rat, b: Rat) -> Self {
        Self::new(vec![b, a])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&Rat> {
        self.0.last()
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        self.0.iter().rev().fold(Rat::zero(), |acc, c| acc * t + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Self::new(
            (0..n)
                .map(|i| {
                    let a = self.0.get(i).cloned().unwrap_or_else(Rat::zero);
                    let b = other.0.get(i).cloned().unwrap_or_else(Rat::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rat::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(i.into()))
                .collect(),
        )
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.lc().unwrap().clone();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quo = vec![Rat::zero(); rem.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quo[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quo), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.recip();
                Self::new(self.0.iter().map(|c| c * &inv).collect())
            }
        }
    }

    /// Monic gcd by Euclid's algorithm; the gcd of two zeros is zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Read a polynomial in the single variable `v`.
    pub fn from_mpoly(p: &MPoly, v: Var) -> Result<Self, AlgebraError> {
        if !p.is_univariate_in(v) {
            return Err(AlgebraError::NotUnivariate(p.to_string()));
        }
        let deg = p.degree_in(v.index()) as usize;
        let mut coeffs = vec![Rat::zero(); deg + 1];
        for (m, c) in p.terms() {
            coeffs[m.0[v.index()] as usize] = c.clone();
        }
        Ok(Self::new(coeffs))
    }

    pub fn to_mpoly(&self, v: Var) -> MPoly {
        MPoly::from_terms(self.0.iter().enumerate().map(|(i, c)| {
            let mut m = Monomial::one();
            m.0[v.index()] = i as u32;
            (m, c.clone())
        }))
    }

    pub fn is_squarefree(&self) -> bool {
        let g = self.gcd(&self.derivative());
        g.degree() == Some(0)
    }
}

/// Square-freeness of a non-constant polynomial in `x`, decided by whether
/// gcd(f, f') is constant.
pub fn is_squarefree(f: &MPoly) -> Result<bool, AlgebraError> {
    let u = UPoly::from_mpoly(f, Var::X)?;
    match u.degree() {
        None | Some(0) => Err(AlgebraError::ConstantPolynomial),
        Some(_) => Ok(u.is_squarefree()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use proptest::prelude::*;

    fn up(s: &str) -> UPoly {
        UPoly::from_mpoly(&parse_poly(s).unwrap(), Var::X).unwrap()
    }

    #[test]
    fn squarefree_examples() {
        assert!(is_squarefree(&parse_poly("x^5+x+1").unwrap()).unwrap());
        assert!(!is_squarefree(&parse_poly("x^3-x^2").unwrap()).unwrap());
        assert!(is_squarefree(&parse_poly("x^3+1").unwrap()).unwrap());
    }

    #[test]
    fn gcd_of_cubic_with_repeated_root_is_x() {
        let f = up("x^3-x^2");
        assert_eq!(f.gcd(&f.derivative()), up("x"));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            is_squarefree(&parse_poly("x*u+1").unwrap()),
            Err(AlgebraError::NotUnivariate(_))
        ));
        assert!(matches!(
            is_squarefree(&parse_poly("7").unwrap()),
            Err(AlgebraError::ConstantPolynomial)
        ));
    }

    fn arb_upoly() -> impl Strategy<Value = UPoly> {
        prop::collection::vec(-6i64..=6, 1..6)
            .prop_map(|v| UPoly::new(v.into_iter().map(|c| Rat::from_integer(c.into())).collect()))
    }

    proptest! {
        #[test]
        fn gcd_divides_both(a in arb_upoly(), b in arb_upoly()) {
            let g = a.gcd(&b);
            prop_assume!(!g.is_zero());
            prop_assert!(a.div_rem(&g).1.is_zero());
            prop_assert!(b.div_rem(&g).1.is_zero());
        }

        #[test]
        fn division_identity(a in arb_upoly(), b in arb_upoly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b);
            prop_assert_eq!(q.mul(&b).add(&r), a);
            prop_assert!(r.degree() < b.degree());
        }
    }
}
