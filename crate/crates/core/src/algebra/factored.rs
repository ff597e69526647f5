//! Rational functions kept as `scale * prod base_i^e_i`.
//!
//! Bases are primitive integer polynomials with positive leading coefficient;
//! monomial content is split off into single-variable bases, so `v3^15210`
//! is stored as the pair `(v3, 15210)` and never expanded.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::parse::{Parser, Tok};
use super::poly::{MPoly, Monomial, Var, NVARS};
use super::{AlgebraError, Assignment, Rat};

/// Multi-term bases are never expanded past this exponent.
pub const EXPANSION_THRESHOLD: u64 = 32;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FactoredRF {
    scale: Rat,
    factors: Vec<(MPoly, i64)>,
}

fn rat_pow(r: &Rat, e: i64) -> Rat {
    let p = num_traits::pow::Pow::pow(r, e.unsigned_abs() as u32);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

fn add_exp(map: &mut BTreeMap<MPoly, i64>, base: MPoly, e: i64) -> Result<(), AlgebraError> {
    let slot = map.entry(base).or_insert(0);
    *slot = slot.checked_add(e).ok_or(AlgebraError::DegreeOverflow)?;
    Ok(())
}

impl FactoredRF {
    pub fn zero() -> Self {
        FactoredRF {
            scale: Rat::zero(),
            factors: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        FactoredRF {
            scale: c,
            factors: Vec::new(),
        }
    }

    pub fn from_poly(p: &MPoly) -> Self {
        Self::new(Rat::one(), [(p.clone(), 1)]).expect("positive exponent cannot divide by zero")
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: i64) -> Self {
        if e == 0 {
            return Self::one();
        }
        FactoredRF {
            scale: Rat::one(),
            factors: vec![(MPoly::variable(v), e)],
        }
    }

    /// Normalize an arbitrary product into canonical form.
    pub fn new(
        scale: Rat,
        factors: impl IntoIterator<Item = (MPoly, i64)>,
    ) -> Result<Self, AlgebraError> {
        let mut scale = scale;
        let mut map: BTreeMap<MPoly, i64> = BTreeMap::new();
        let mut vanishes = scale.is_zero();
        for (p, e) in factors {
            if e == 0 {
                continue;
            }
            if p.is_zero() {
                if e < 0 {
                    return Err(AlgebraError::DivisionByZero { base: "0".into() });
                }
                vanishes = true;
                continue;
            }
            let (c, prim) = p.primitive();
            scale *= rat_pow(&c, e);
            let mono = prim.monomial_content();
            for (i, &k) in mono.0.iter().enumerate() {
                if k > 0 {
                    let ek = e
                        .checked_mul(k as i64)
                        .ok_or(AlgebraError::DegreeOverflow)?;
                    add_exp(&mut map, MPoly::variable(Var::ALL[i]), ek)?;
                }
            }
            let rest = prim.div_monomial(&mono).expect("monomial content divides");
            if !rest.is_constant() {
                add_exp(&mut map, rest, e)?;
            }
        }
        if vanishes {
            return Ok(Self::zero());
        }
        Ok(FactoredRF {
            scale,
            factors: map.into_iter().filter(|(_, e)| *e != 0).collect(),
        })
    }

    pub fn scale(&self) -> &Rat {
        &self.scale
    }

    pub fn factors(&self) -> &[(MPoly, i64)] {
        &self.factors
    }

    pub fn is_zero(&self) -> bool {
        self.scale.is_zero()
    }

    /// True iff no base remains after normalization.
    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent_of(&self, base: &MPoly) -> i64 {
        self.factors
            .iter()
            .find(|(b, _)| b == base)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn exponent_of_var(&self, v: Var) -> i64 {
        self.exponent_of(&MPoly::variable(v))
    }

    pub fn vars(&self) -> Vec<Var> {
        let mask = self.factors.iter().fold(0, |m, (b, _)| m | b.support());
        Var::ALL
            .iter()
            .copied()
            .filter(|v| mask & (1 << v.index()) != 0)
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut map: BTreeMap<MPoly, i64> = self.factors.iter().cloned().collect();
        for (b, e) in &other.factors {
            add_exp(&mut map, b.clone(), *e).expect("exponent overflow");
        }
        FactoredRF {
            scale: &self.scale * &other.scale,
            factors: map.into_iter().filter(|(_, e)| *e != 0).collect(),
        }
    }

    pub fn scale_by(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FactoredRF {
            scale: &self.scale * c,
            factors: self.factors.clone(),
        }
    }

    pub fn pow(&self, e: i64) -> Result<Self, AlgebraError> {
        if e == 0 {
            return Ok(Self::one());
        }
        if self.is_zero() {
            return if e > 0 {
                Ok(Self::zero())
            } else {
                Err(AlgebraError::DivisionByZero { base: "0".into() })
            };
        }
        let factors = self
            .factors
            .iter()
            .map(|(b, k)| {
                k.checked_mul(e)
                    .map(|ke| (b.clone(), ke))
                    .ok_or(AlgebraError::DegreeOverflow)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FactoredRF {
            scale: rat_pow(&self.scale, e),
            factors,
        })
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        self.pow(-1)
    }

    pub fn div(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn neg(&self) -> Self {
        self.scale_by(&-Rat::one())
    }

    /// Expand a product with non-negative exponents into a polynomial.
    fn expand_nonneg(&self) -> Result<MPoly, AlgebraError> {
        let mut acc = MPoly::constant(self.scale.clone());
        let mut mono = Monomial::<NVARS>::one();
        for (b, e) in &self.factors {
            debug_assert!(*e >= 0);
            if b.num_terms() == 1 && b.total_degree() == 1 {
                let i = b.support().trailing_zeros() as usize;
                mono.0[i] = mono.0[i]
                    .checked_add(u32::try_from(*e).map_err(|_| AlgebraError::DegreeOverflow)?)
                    .ok_or(AlgebraError::DegreeOverflow)?;
                continue;
            }
            if *e as u64 > EXPANSION_THRESHOLD {
                return Err(AlgebraError::ExpansionTooLarge {
                    exponent: *e as u64,
                    threshold: EXPANSION_THRESHOLD,
                });
            }
            acc = &acc * &b.pow(*e as u32);
        }
        Ok(&acc * &MPoly::term(mono, Rat::one()))
    }

    /// Sum of two rational functions. Bases shared by both summands are
    /// pulled out with their smaller exponent; only the residual cofactors are
    /// expanded.
    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let mut common: BTreeMap<MPoly, i64> = BTreeMap::new();
        for (b, _) in self.factors.iter().chain(other.factors.iter()) {
            let e = self.exponent_of(b).min(other.exponent_of(b));
            common.insert(b.clone(), e);
        }
        let residual = |r: &FactoredRF| -> Result<MPoly, AlgebraError> {
            let factors = common
                .iter()
                .map(|(b, e)| (b.clone(), r.exponent_of(b) - e))
                .filter(|(_, e)| *e != 0)
                .collect();
            FactoredRF {
                scale: r.scale.clone(),
                factors,
            }
            .expand_nonneg()
        };
        let sum = &residual(self)? + &residual(other)?;
        Self::new(
            Rat::one(),
            common.into_iter().chain(std::iter::once((sum, 1))),
        )
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.neg())
    }

    /// `v_i -> -v_i` followed by renormalization.
    pub fn signflip(&self, v: Var) -> Self {
        let factors = self
            .factors
            .iter()
            .map(|(b, e)| (b.negate_var(v.index()), *e))
            .collect::<Vec<_>>();
        Self::new(self.scale.clone(), factors).expect("sign change cannot create a pole")
    }

    /// Substitute constants for some of the variables.
    pub fn specialize(&self, values: &Assignment) -> Result<Self, AlgebraError> {
        let mut factors = Vec::with_capacity(self.factors.len());
        for (b, e) in &self.factors {
            let mut p = b.clone();
            for (v, val) in values {
                p = p.subst_value(v.index(), val);
            }
            if *e < 0 && p.is_zero() {
                return Err(AlgebraError::DivisionByZero {
                    base: b.to_string(),
                });
            }
            factors.push((p, *e));
        }
        Self::new(self.scale.clone(), factors)
    }

    /// Exact value at a full assignment, by powering the base values.
    pub fn eval(&self, values: &Assignment) -> Result<Rat, AlgebraError> {
        let point = full_point(&self.vars(), values)?;
        let (num, den) = self.eval_fraction(&point)?;
        Ok(Rat::new(num, den))
    }

    /// Unreduced `(numerator, denominator)` at a point; the denominator is
    /// nonzero.
    pub(crate) fn eval_fraction(
        &self,
        point: &[Rat; NVARS],
    ) -> Result<(BigInt, BigInt), AlgebraError> {
        let mut values = Vec::with_capacity(self.factors.len());
        for (b, e) in &self.factors {
            let val = b.eval(point);
            if val.is_zero() && *e < 0 {
                return Err(AlgebraError::DivisionByZero {
                    base: b.to_string(),
                });
            }
            values.push((val, *e));
        }
        if self.is_zero() || values.iter().any(|(v, _)| v.is_zero()) {
            return Ok((BigInt::zero(), BigInt::one()));
        }
        let mut num = vec![self.scale.numer().clone()];
        let mut den = vec![self.scale.denom().clone()];
        for (v, e) in values {
            let k = u32::try_from(e.unsigned_abs()).map_err(|_| AlgebraError::DegreeOverflow)?;
            let (p, q) = (v.numer().pow(k), v.denom().pow(k));
            if e > 0 {
                num.push(p);
                den.push(q);
            } else {
                num.push(q);
                den.push(p);
            }
        }
        Ok((product(num), product(den)))
    }

    /// Total degrees of the numerator and denominator products.
    pub fn degree_bounds(&self) -> Result<(u64, u64), AlgebraError> {
        let mut num: u64 = 0;
        let mut den: u64 = 0;
        for (b, e) in &self.factors {
            let d = b
                .total_degree()
                .checked_mul(e.unsigned_abs())
                .ok_or(AlgebraError::DegreeOverflow)?;
            let slot = if *e > 0 { &mut num } else { &mut den };
            *slot = slot.checked_add(d).ok_or(AlgebraError::DegreeOverflow)?;
        }
        Ok((num, den))
    }

    /// Parse the serialized form `c * (p1)^e1 * (p2)^e2 ...`.
    pub fn parse(text: &str) -> Result<Self, AlgebraError> {
        let mut p = Parser::new(text)?;
        let neg = if p.peek() == Some(&Tok::Minus) {
            p.bump();
            true
        } else {
            false
        };
        let mut scale = p.rational()?;
        if neg {
            scale = -scale;
        }
        let mut factors = Vec::new();
        while !p.at_end() {
            p.expect(Tok::Star, "'*'")?;
            p.expect(Tok::LParen, "'('")?;
            let base = p.expr()?.expand();
            p.expect(Tok::RParen, "')'")?;
            p.expect(Tok::Caret, "'^'")?;
            let sign = if p.peek() == Some(&Tok::Minus) {
                p.bump();
                -1
            } else {
                1
            };
            let e = p.nat()? as i64;
            factors.push((base, sign * e));
        }
        Self::new(scale, factors)
    }
}

/// Balanced product keeps operands of similar size for the big multiplications.
pub(crate) fn product(mut xs: Vec<BigInt>) -> BigInt {
    if xs.is_empty() {
        return BigInt::one();
    }
    while xs.len() > 1 {
        let mut next = Vec::with_capacity(xs.len().div_ceil(2));
        let mut it = xs.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a * b),
                None => next.push(a),
            }
        }
        xs = next;
    }
    xs.pop().unwrap()
}

pub(crate) fn full_point(vars: &[Var], values: &Assignment) -> Result<[Rat; NVARS], AlgebraError> {
    let mut point: [Rat; NVARS] = Default::default();
    for v in vars {
        match values.get(v) {
            Some(val) => point[v.index()] = val.clone(),
            None => return Err(AlgebraError::UnassignedVariable(*v)),
        }
    }
    Ok(point)
}

impl fmt::Display for FactoredRF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.scale;
        if s.is_negative() {
            f.write_str("-")?;
        }
        f.write_str(&super::poly::fmt_rat(&s.abs()))?;
        for (b, e) in &self.factors {
            write!(f, " * ({b})^{e}")?;
        }
        Ok(())
    }
}
