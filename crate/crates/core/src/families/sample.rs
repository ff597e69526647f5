//! Random valid inputs, for property tests and benchmarks.

use rand::Rng;

use super::{FamilyInputs, FamilyKind};
use crate::algebra::{rat, MPoly, Rat, UPoly, Var};
use crate::quartic::genus_one::certify_quadratic_twist;

pub const EXPONENTS: [u32; 4] = [3, 5, 7, 9];

fn nonzero<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    loop {
        let k = rng.random_range(-bound..=bound);
        if k != 0 {
            return k;
        }
    }
}

fn random_f<R: Rng>(rng: &mut R, deg: usize) -> Vec<Rat> {
    let mut c: Vec<Rat> = (0..deg).map(|_| rat(rng.random_range(-5..=5))).collect();
    c.push(rat(nonzero(rng, 5)));
    c
}

fn squarefree(c: &[Rat]) -> bool {
    UPoly::new(c.to_vec()).is_squarefree()
}

/// `f` with `f(u) = y^2`, `(u, y)` of infinite order on `y^2 = f(x)`.
fn random_f_with_point<R: Rng>(rng: &mut R) -> (Vec<Rat>, Rat, Rat) {
    loop {
        let deg = rng.random_range(3..=4);
        let mut c = random_f(rng, deg);
        let u = rat(rng.random_range(-3..=3));
        let y = rat(nonzero(rng, 6));
        c[0] = rat(0);
        let rest = UPoly::new(c.clone()).eval(&u);
        c[0] = &y * &y - rest;
        if !squarefree(&c) {
            continue;
        }
        if let Ok(cert) = certify_quadratic_twist(&c, &rat(1), &u, &y) {
            if cert.is_infinite() {
                return (c, u, y);
            }
        }
    }
}

/// Random valid inputs: exponents from [`EXPONENTS`], constants in
/// `[-10, 10] \ {0}`, `f` square-free of degree 3 to 5 (3 or 4 with a
/// base point of infinite order for B and B3).
pub fn random_inputs<R: Rng>(kind: FamilyKind, rng: &mut R) -> FamilyInputs {
    let n = kind.exponent_count();
    let m = (0..n)
        .map(|_| EXPONENTS[rng.random_range(0..EXPONENTS.len())])
        .collect();
    let constants = (0..n).map(|_| rat(nonzero(rng, 10))).collect();
    let to_poly = |c: &[Rat]| UPoly::new(c.to_vec()).to_mpoly(Var::X);
    match kind {
        FamilyKind::C => FamilyInputs::new(kind, None, m, constants),
        FamilyKind::B | FamilyKind::B3 => {
            let (c, u, y) = random_f_with_point(rng);
            FamilyInputs::new(kind, Some(to_poly(&c)), m, constants).with_base_point(u, y)
        }
        FamilyKind::A | FamilyKind::A3 => {
            let f: MPoly = loop {
                let deg = rng.random_range(3..=5);
                let c = random_f(rng, deg);
                if squarefree(&c) {
                    break to_poly(&c);
                }
            };
            FamilyInputs::new(kind, Some(f), m, constants)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_inputs_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for kind in FamilyKind::ALL {
            for _ in 0..10 {
                let i = random_inputs(kind, &mut rng);
                i.validate().unwrap_or_else(|e| panic!("{kind}: {e}"));
            }
        }
    }
}
