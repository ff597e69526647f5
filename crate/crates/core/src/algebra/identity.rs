//! Probabilistic identity testing for factored rational functions.
//!
//! Both sides are evaluated exactly at random integer points drawn from a
//! window at least four times the degree bound of the cross-multiplied
//! difference, so a false "equal" survives one sample with probability at
//! most 1/4. Points where any base vanishes are rejected and redrawn.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::factored::{product, FactoredRF};
use super::poly::{MPoly, Var, NVARS};
use super::{AlgebraError, Assignment, Rat};
use crate::par::{self, Exec};

pub const DEFAULT_SAMPLES: usize = 5;
pub const MAX_REJECTIONS: usize = 1000;
const MIN_WINDOW: u64 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleOptions {
    pub samples: usize,
    pub seed: u64,
    pub exec: Exec,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions {
            samples: DEFAULT_SAMPLES,
            seed: 0,
            exec: Exec::default(),
        }
    }
}

impl SampleOptions {
    pub fn new(samples: usize, seed: u64) -> Self {
        SampleOptions {
            samples,
            seed,
            ..Default::default()
        }
    }
}

/// Terms of both sides over a shared, deduplicated list of bases.
struct Prepared {
    bases: Vec<MPoly>,
    lhs: Vec<Term>,
    rhs: Vec<Term>,
    vars: Vec<Var>,
}

struct Term {
    scale: Rat,
    exps: Vec<(usize, i64)>,
}

impl Prepared {
    fn new(lhs: &[FactoredRF], rhs: &[FactoredRF]) -> Self {
        let mut index: BTreeMap<MPoly, usize> = BTreeMap::new();
        let mut bases = Vec::new();
        let mut term = |f: &FactoredRF| Term {
            scale: f.scale().clone(),
            exps: f
                .factors()
                .iter()
                .map(|(b, e)| {
                    let i = *index.entry(b.clone()).or_insert_with(|| {
                        bases.push(b.clone());
                        bases.len() - 1
                    });
                    (i, *e)
                })
                .collect(),
        };
        let lhs: Vec<Term> = lhs.iter().filter(|f| !f.is_zero()).map(&mut term).collect();
        let rhs: Vec<Term> = rhs.iter().filter(|f| !f.is_zero()).map(&mut term).collect();
        let mask = bases.iter().fold(0, |m, b| m | b.support());
        let vars = Var::ALL
            .iter()
            .copied()
            .filter(|v| mask & (1 << v.index()) != 0)
            .collect();
        Prepared {
            bases,
            lhs,
            rhs,
            vars,
        }
    }

    fn term_degrees(&self, t: &Term) -> Result<(u64, u64), AlgebraError> {
        let mut num = 0u64;
        let mut den = 0u64;
        for (i, e) in &t.exps {
            let d = self.bases[*i]
                .total_degree()
                .checked_mul(e.unsigned_abs())
                .ok_or(AlgebraError::DegreeOverflow)?;
            let slot = if *e > 0 { &mut num } else { &mut den };
            *slot = slot.checked_add(d).ok_or(AlgebraError::DegreeOverflow)?;
        }
        Ok((num, den))
    }

    /// Net exponents of lhs / rhs when both sides are single products.
    fn quotient(&self) -> Option<(Rat, BTreeMap<usize, i64>)> {
        if self.lhs.len() != 1 || self.rhs.len() != 1 {
            return None;
        }
        let (l, r) = (&self.lhs[0], &self.rhs[0]);
        let mut net = BTreeMap::new();
        for (i, e) in &l.exps {
            *net.entry(*i).or_insert(0) += e;
        }
        for (i, e) in &r.exps {
            *net.entry(*i).or_insert(0) -= e;
        }
        net.retain(|_, e| *e != 0);
        Some((&l.scale / &r.scale, net))
    }

    /// Degree bound of the numerator of `lhs - rhs` over a common denominator.
    fn degree_bound(&self) -> Result<u64, AlgebraError> {
        if let Some((_, net)) = self.quotient() {
            let mut num = 0u64;
            let mut den = 0u64;
            for (i, e) in net {
                let d = self.bases[i]
                    .total_degree()
                    .checked_mul(e.unsigned_abs())
                    .ok_or(AlgebraError::DegreeOverflow)?;
                let slot = if e > 0 { &mut num } else { &mut den };
                *slot = slot.checked_add(d).ok_or(AlgebraError::DegreeOverflow)?;
            }
            return Ok(num.max(den));
        }
        let degs = self
            .lhs
            .iter()
            .chain(self.rhs.iter())
            .map(|t| self.term_degrees(t))
            .collect::<Result<Vec<_>, _>>()?;
        let den_total = degs
            .iter()
            .try_fold(0u64, |acc, (_, d)| acc.checked_add(*d))
            .ok_or(AlgebraError::DegreeOverflow)?;
        let num_max = degs.iter().map(|(n, _)| *n).max().unwrap_or(0);
        num_max
            .checked_add(den_total)
            .ok_or(AlgebraError::DegreeOverflow)
    }

    /// Base values at a point, or `None` if some base vanishes there.
    fn base_values(&self, point: &[Rat; NVARS]) -> Option<Vec<Rat>> {
        let vals: Vec<Rat> = self.bases.iter().map(|b| b.eval(point)).collect();
        if vals.iter().any(|v| v.is_zero()) {
            None
        } else {
            Some(vals)
        }
    }

    fn equal_at(&self, vals: &[Rat]) -> Result<bool, AlgebraError> {
        if let Some((scale, net)) = self.quotient() {
            // Group equal base values first; identical factorizations on both
            // sides then cost nothing regardless of exponent size.
            let mut grouped: BTreeMap<&Rat, i64> = BTreeMap::new();
            for (i, e) in &net {
                *grouped.entry(&vals[*i]).or_insert(0) += e;
            }
            let mut num = vec![scale.numer().clone()];
            let mut den = vec![scale.denom().clone()];
            for (v, e) in grouped {
                push_power(&mut num, &mut den, v, e)?;
            }
            return Ok(product(num) == product(den));
        }
        let (ln, ld) = self.sum_at(&self.lhs, vals)?;
        let (rn, rd) = self.sum_at(&self.rhs, vals)?;
        Ok(ln * rd == rn * ld)
    }

    fn sum_at(&self, terms: &[Term], vals: &[Rat]) -> Result<(BigInt, BigInt), AlgebraError> {
        let mut acc = (BigInt::zero(), BigInt::one());
        for t in terms {
            let mut num = vec![t.scale.numer().clone()];
            let mut den = vec![t.scale.denom().clone()];
            for (i, e) in &t.exps {
                push_power(&mut num, &mut den, &vals[*i], *e)?;
            }
            let (n, d) = (product(num), product(den));
            acc = (acc.0 * &d + n * &acc.1, acc.1 * d);
        }
        Ok(acc)
    }
}

fn push_power(
    num: &mut Vec<BigInt>,
    den: &mut Vec<BigInt>,
    v: &Rat,
    e: i64,
) -> Result<(), AlgebraError> {
    if e == 0 {
        return Ok(());
    }
    let k = u32::try_from(e.unsigned_abs()).map_err(|_| AlgebraError::DegreeOverflow)?;
    let (p, q) = (v.numer().pow(k), v.denom().pow(k));
    if e > 0 {
        num.push(p);
        den.push(q);
    } else {
        num.push(q);
        den.push(p);
    }
    Ok(())
}

/// Outcome of a sampled comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    /// First sampled assignment (by sample index) where the sides differ.
    Differ(Assignment),
}

impl Comparison {
    pub fn is_equal(&self) -> bool {
        matches!(self, Comparison::Equal)
    }
}

fn to_assignment(vars: &[Var], point: &[Rat; NVARS]) -> Assignment {
    vars.iter()
        .map(|v| (*v, point[v.index()].clone()))
        .collect()
}

fn run_samples<G>(
    prep: &Prepared,
    samples: usize,
    seed: u64,
    exec: Exec,
    draw: G,
) -> Result<Comparison, AlgebraError>
where
    G: Fn(&mut ChaCha8Rng) -> [Rat; NVARS] + Sync + Send,
{
    let outcomes = par::map_range(
        exec,
        samples,
        |j| -> Result<(usize, Option<Assignment>), AlgebraError> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(j as u64);
            for rejected in 0..=MAX_REJECTIONS {
                let point = draw(&mut rng);
                if let Some(vals) = prep.base_values(&point) {
                    let ok = prep.equal_at(&vals)?;
                    return Ok((rejected, (!ok).then(|| to_assignment(&prep.vars, &point))));
                }
            }
            Err(AlgebraError::TooManyRejections(MAX_REJECTIONS))
        },
    );
    let mut rejections = 0;
    for o in outcomes {
        let (r, differ) = o?;
        rejections += r;
        if rejections > MAX_REJECTIONS {
            return Err(AlgebraError::TooManyRejections(MAX_REJECTIONS));
        }
        if let Some(a) = differ {
            return Ok(Comparison::Differ(a));
        }
    }
    Ok(Comparison::Equal)
}

/// Compare `sum(lhs)` with `sum(rhs)` at random integer points.
pub fn compare_sums(
    lhs: &[FactoredRF],
    rhs: &[FactoredRF],
    opts: &SampleOptions,
) -> Result<Comparison, AlgebraError> {
    let prep = Prepared::new(lhs, rhs);
    let bound = prep.degree_bound()?;
    let width = bound
        .checked_mul(4)
        .ok_or(AlgebraError::DegreeOverflow)?
        .max(MIN_WINDOW);
    let half = (width / 2) as i64;
    run_samples(&prep, opts.samples, opts.seed, opts.exec, move |rng| {
        std::array::from_fn(|_| Rat::from_integer(BigInt::from(rng.random_range(-half..=half))))
    })
}

/// Compare `sum(lhs)` with `sum(rhs)` at random small rational points
/// (numerators in [-50, 50], denominators in [1, 9]).
pub fn compare_at_rational_points(
    lhs: &[FactoredRF],
    rhs: &[FactoredRF],
    opts: &SampleOptions,
) -> Result<Comparison, AlgebraError> {
    let prep = Prepared::new(lhs, rhs);
    run_samples(&prep, opts.samples, opts.seed, opts.exec, |rng| {
        std::array::from_fn(|_| {
            Rat::new(
                BigInt::from(rng.random_range(-50i64..=50)),
                BigInt::from(rng.random_range(1i64..=9)),
            )
        })
    })
}

/// Sampled equality of two factored rational functions; deterministic in
/// `seed` and symmetric in its arguments.
pub fn rf_equal(
    lhs: &FactoredRF,
    rhs: &FactoredRF,
    samples: usize,
    seed: u64,
) -> Result<bool, AlgebraError> {
    rf_equal_with(lhs, rhs, &SampleOptions::new(samples, seed))
}

pub fn rf_equal_with(
    lhs: &FactoredRF,
    rhs: &FactoredRF,
    opts: &SampleOptions,
) -> Result<bool, AlgebraError> {
    if lhs == rhs {
        return Ok(true);
    }
    if lhs.is_zero() || rhs.is_zero() {
        return Ok(false);
    }
    compare_sums(std::slice::from_ref(lhs), std::slice::from_ref(rhs), opts).map(|c| c.is_equal())
}

/// Exact comparison by expansion; only available when every multi-term base
/// exponent is within the expansion threshold.
pub fn rf_equal_exact(lhs: &FactoredRF, rhs: &FactoredRF) -> Result<bool, AlgebraError> {
    let q = lhs.div(rhs);
    match q {
        Err(_) => Ok(lhs.is_zero() && rhs.is_zero()),
        Ok(q) => {
            let num = FactoredRF::new(
                q.scale().clone(),
                q.factors().iter().filter(|(_, e)| *e > 0).cloned(),
            )?;
            let den = FactoredRF::new(
                Rat::one(),
                q.factors()
                    .iter()
                    .filter(|(_, e)| *e < 0)
                    .map(|(b, e)| (b.clone(), -e)),
            )?;
            let diff = num.sub(&den)?;
            Ok(diff.is_zero())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use proptest::prelude::*;

    fn rf(s: &str) -> FactoredRF {
        FactoredRF::parse(s).unwrap()
    }

    #[test]
    fn identities() {
        let a = FactoredRF::from_poly(&parse_poly("x^2-1").unwrap());
        let b = rf("1 * (x-1)^1").mul(&rf("1 * (x+1)^1"));
        assert!(rf_equal(&a, &b, 5, 0).unwrap());
        let c = FactoredRF::from_poly(&parse_poly("x^2+1").unwrap());
        assert!(!rf_equal(&a, &c, 5, 0).unwrap());
        assert!(rf_equal_exact(&a, &b).unwrap());
        assert!(!rf_equal_exact(&a, &c).unwrap());
    }

    #[test]
    fn non_factor_level_identity_is_detected() {
        // (x^2 + 2x + 1) / (x + 1)^2 == 1, invisible to base-level normalization.
        let lhs = rf("1 * (x^2+2*x+1)^1 * (x+1)^-2");
        assert!(!lhs.is_constant());
        assert!(rf_equal(&lhs, &FactoredRF::one(), 5, 3).unwrap());
        assert!(!rf_equal(
            &lhs,
            &FactoredRF::constant(Rat::from_integer(2.into())),
            5,
            3
        )
        .unwrap());
    }

    #[test]
    fn sums_with_counterexample() {
        let lhs = [rf("1 * (x)^2")];
        let rhs = [rf("1 * (x)^1"), rf("1")];
        match compare_sums(&lhs, &rhs, &SampleOptions::new(5, 1)).unwrap() {
            Comparison::Differ(a) => {
                let x = &a[&Var::X];
                assert_ne!(x * x, x + Rat::one());
            }
            Comparison::Equal => panic!("x^2 != x + 1"),
        }
        let ok = compare_sums(
            &[rf("1 * (x+1)^2")],
            &[rf("1 * (x)^2"), rf("2 * (x)^1"), rf("1")],
            &SampleOptions::new(5, 1),
        )
        .unwrap();
        assert!(ok.is_equal());
    }

    #[test]
    fn large_exponents_compare_cheaply() {
        let a = rf("2 * (u^5+u+1)^585 * (v3)^-15210 * (v1^2+v3)^-585");
        let b = a.mul(&rf("1 * (v1^2+v3)^1")).mul(&rf("1 * (v1^2+v3)^-1"));
        assert!(rf_equal(&a, &b, 20, 42).unwrap());
        let c = a.mul(&rf("1 * (u)^1"));
        assert!(!rf_equal(&a, &c, 5, 42).unwrap());
    }

    fn arb_rf() -> impl Strategy<Value = FactoredRF> {
        (1i64..5, prop::collection::vec((0usize..4, -2i64..=2), 0..4)).prop_map(|(s, fs)| {
            let pool = ["x+1", "x^2+u", "v1-2*x", "u*v2+3"];
            FactoredRF::new(
                Rat::from_integer(s.into()),
                fs.into_iter()
                    .map(|(i, e)| (parse_poly(pool[i]).unwrap(), e)),
            )
            .unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn deterministic_and_symmetric(a in arb_rf(), b in arb_rf(), seed in 0u64..1000) {
            let ab = rf_equal(&a, &b, 5, seed).unwrap();
            prop_assert_eq!(ab, rf_equal(&a, &b, 5, seed).unwrap());
            prop_assert_eq!(ab, rf_equal(&b, &a, 5, seed).unwrap());
            prop_assert_eq!(ab, a == b);
        }
    }
}
