//! Sparse polynomials over Q with a const-generic number of variables.
//!
//! `MPoly` (seven variables: x, u, v1..v4, T) carries all function-field data;
//! `Poly<3>` and `Poly<4>` are used for plane cubics and space quadrics.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rat;

/// Exponent vector ordered graded-lexicographically, with the highest-index
/// variable most significant inside a degree.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial<const N: usize>(pub [u32; N]);

impl<const N: usize> Monomial<N> {
    pub fn one() -> Self {
        Monomial([0; N])
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; N];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Self) -> Self {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += *b;
        }
        Monomial(e)
    }

    /// Componentwise minimum.
    fn gcd(&self, other: &Self) -> Self {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = (*a).min(*b);
        }
        Monomial(e)
    }

    fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Self) -> Self {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a -= *b;
        }
        Monomial(e)
    }
}

impl<const N: usize> Ord for Monomial<N> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl<const N: usize> PartialOrd for Monomial<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<const N: usize> {
    terms: BTreeMap<Monomial<N>, Rat>,
}

impl<const N: usize> Default for Poly<N> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<const N: usize> Poly<N> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(i: usize) -> Self {
        Self::term(Monomial::var(i), Rat::one())
    }

    pub fn term(m: Monomial<N>, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial<N>, Rat)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial<N>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial<N>, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial<N>) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The value of a constant polynomial; `None` if any variable occurs.
    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(self.coeff(&Monomial::one()))
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<(&Monomial<N>, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    /// Bitmask of variables that occur.
    pub fn support(&self) -> u32 {
        let mut mask = 0;
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    mask |= 1 << i;
                }
            }
        }
        mask
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, point: &[Rat; N]) -> Rat {
        let mut powers: Vec<BTreeMap<u32, Rat>> = vec![BTreeMap::new(); N];
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers[i]
                    .entry(e)
                    .or_insert_with(|| num_traits::pow::Pow::pow(&point[i], e));
                t *= &*p;
            }
            acc += t;
        }
        acc
    }

    /// Evaluation at an integer point; coefficients must be integers.
    pub fn eval_integer(&self, point: &[BigInt; N]) -> BigInt {
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            debug_assert!(c.is_integer());
            let mut t = c.numer().clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= point[i].pow(e);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute the constant `value` for variable `i`.
    pub fn subst_value(&self, i: usize, value: &Rat) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut m2 = *m;
            let e = m2.0[i];
            m2.0[i] = 0;
            let c2 = if e == 0 {
                c.clone()
            } else {
                c * num_traits::pow::Pow::pow(value, e)
            };
            out.add_term(m2, c2);
        }
        out
    }

    /// Replace variable `i` by `-x_i`.
    pub fn negate_var(&self, i: usize) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, if m.0[i] % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// Linear change of variables: `x_i -> sum_j m[i][j] * y_j`.
    pub fn subst_linear(&self, m: &[[Rat; N]; N]) -> Self {
        let images: Vec<Poly<N>> = (0..N)
            .map(|i| Poly::from_terms((0..N).map(|j| (Monomial::var(j), m[i][j].clone()))))
            .collect();
        self.compose(&images)
    }

    /// Substitute polynomial images for every variable.
    pub fn compose(&self, images: &[Poly<N>]) -> Self {
        assert_eq!(images.len(), N);
        let mut cache: Vec<BTreeMap<u32, Poly<N>>> = vec![BTreeMap::new(); N];
        let mut out = Self::zero();
        for (mono, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for (i, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = cache[i].entry(e).or_insert_with(|| images[i].pow(e));
                t = &t * &*p;
            }
            out = &out + &t;
        }
        out
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = *m;
            m2.0[i] -= 1;
            out.add_term(m2, c * Rat::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Terms whose exponent in variable `i` equals `e`, with that variable removed.
    pub fn coefficient_in(&self, i: usize, e: u32) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0[i] == e)
                .map(|(m, c)| {
                    let mut m2 = *m;
                    m2.0[i] = 0;
                    (m2, c.clone())
                })
                .collect(),
        }
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial<N> {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(*first, |g, m| g.gcd(m)),
        }
    }

    /// Exact division by a monomial; `None` if it does not divide every term.
    pub fn div_monomial(&self, d: &Monomial<N>) -> Option<Self> {
        if !self.terms.keys().all(|m| d.divides(m)) {
            return None;
        }
        Some(Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.div(d), c.clone()))
                .collect(),
        })
    }

    /// Rational content, signed so that the primitive part has a positive
    /// leading coefficient. Zero for the zero polynomial.
    pub fn content(&self) -> Rat {
        let Some((_, lc)) = self.leading() else {
            return Rat::zero();
        };
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        let g = Rat::new(num, den);
        if lc.is_negative() {
            -g
        } else {
            g
        }
    }

    /// `(content, primitive part)` with an integer, content-one primitive part
    /// whose leading coefficient is positive.
    pub fn primitive(&self) -> (Rat, Self) {
        let c = self.content();
        if c.is_zero() {
            return (c, Self::zero());
        }
        let inv = c.recip();
        (c, self.scale(&inv))
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn map_vars(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let mut e = [0; N];
            for (i, &k) in m.0.iter().enumerate() {
                e[f(i)] += k;
            }
            (Monomial(e), c.clone())
        }))
    }
}

impl<const N: usize> Ord for Poly<N> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.terms.len().cmp(&other.terms.len()))
            .then_with(|| self.terms.iter().rev().cmp(other.terms.iter().rev()))
    }
}

impl<const N: usize> PartialOrd for Poly<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<const N: usize> Add for &Poly<N> {
    type Output = Poly<N>;
    fn add(self, rhs: &Poly<N>) -> Poly<N> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<const N: usize> Sub for &Poly<N> {
    type Output = Poly<N>;
    fn sub(self, rhs: &Poly<N>) -> Poly<N> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<const N: usize> Mul for &Poly<N> {
    type Output = Poly<N>;
    fn mul(self, rhs: &Poly<N>) -> Poly<N> {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl<const N: usize> Neg for &Poly<N> {
    type Output = Poly<N>;
    fn neg(self) -> Poly<N> {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl<const N: usize> $tr for Poly<N> {
            type Output = Poly<N>;
            fn $f(self, rhs: Poly<N>) -> Poly<N> {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// The fixed variable set of the function-field polynomials.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    X = 0,
    U = 1,
    V1 = 2,
    V2 = 3,
    V3 = 4,
    V4 = 5,
    T = 6,
}

pub const NVARS: usize = 7;

impl Var {
    pub const ALL: [Var; NVARS] = [Var::X, Var::U, Var::V1, Var::V2, Var::V3, Var::V4, Var::T];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::U => "u",
            Var::V1 => "v1",
            Var::V2 => "v2",
            Var::V3 => "v3",
            Var::V4 => "v4",
            Var::T => "T",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.iter().copied().find(|v| v.name() == s)
    }

    /// `v1`..`v4` by 1-based index.
    pub fn v(i: usize) -> Var {
        match i {
            1 => Var::V1,
            2 => Var::V2,
            3 => Var::V3,
            4 => Var::V4,
            _ => panic!("no parameter v{i}"),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub type MPoly = Poly<NVARS>;

impl MPoly {
    pub fn variable(v: Var) -> Self {
        Self::var(v.index())
    }

    /// `c * v^e`.
    pub fn monomial_in(v: Var, e: u32, c: Rat) -> Self {
        let mut m = Monomial::one();
        m.0[v.index()] = e;
        Self::term(m, c)
    }

    /// Rename `x` to `u`, producing f(u) from f(x).
    pub fn x_to_u(&self) -> Self {
        self.map_vars(|i| {
            if i == Var::X.index() {
                Var::U.index()
            } else {
                i
            }
        })
    }

    pub fn vars(&self) -> Vec<Var> {
        let mask = self.support();
        Var::ALL
            .iter()
            .copied()
            .filter(|v| mask & (1 << v.index()) != 0)
            .collect()
    }

    pub fn is_univariate_in(&self, v: Var) -> bool {
        self.support() & !(1 << v.index()) == 0
    }
}

pub(crate) fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn write_poly<const N: usize>(
    p: &Poly<N>,
    f: &mut fmt::Formatter<'_>,
    name: impl Fn(usize) -> String,
) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (k, (m, c)) in p.terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if k == 0 {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { "-" } else { "+" })?;
        }
        let mut parts = Vec::new();
        if m.is_one() || !abs.is_one() {
            parts.push(fmt_rat(&abs));
        }
        for (i, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(name(i)),
                _ => parts.push(format!("{}^{}", name(i), e)),
            }
        }
        f.write_str(&parts.join("*"))?;
    }
    Ok(())
}

impl<const N: usize> fmt::Display for Poly<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if N == NVARS {
            write_poly(self, f, |i| Var::ALL[i].name().to_string())
        } else {
            write_poly(self, f, |i| format!("z{i}"))
        }
    }
}
