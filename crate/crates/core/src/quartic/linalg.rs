//! Small dense matrices over Q.

use num_traits::{One, Zero};

use crate::algebra::Rat;

pub type Mat<const N: usize> = [[Rat; N]; N];

pub fn identity<const N: usize>() -> Mat<N> {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { Rat::one() } else { Rat::zero() }))
}

/// Matrix whose columns are the given vectors.
pub fn from_columns<const N: usize>(cols: &[[Rat; N]; N]) -> Mat<N> {
    std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i].clone()))
}

pub fn mat_vec<const N: usize>(m: &Mat<N>, v: &[Rat; N]) -> [Rat; N] {
    std::array::from_fn(|i| {
        m[i].iter()
            .zip(v.iter())
            .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    })
}

/// Inverse by Gauss-Jordan elimination; `None` if singular.
pub fn inverse<const N: usize>(m: &Mat<N>) -> Option<Mat<N>> {
    let mut a = m.clone();
    let mut inv = identity::<N>();
    for col in 0..N {
        let pivot = (col..N).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].recip();
        for j in 0..N {
            a[col][j] *= &p;
            inv[col][j] *= &p;
        }
        for r in 0..N {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..N {
                    let (x, y) = (&a[col][j] * &f, &inv[col][j] * &f);
                    a[r][j] -= x;
                    inv[r][j] -= y;
                }
            }
        }
    }
    Some(inv)
}

pub fn cross(a: &[Rat; 3], b: &[Rat; 3]) -> [Rat; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub fn dot<const N: usize>(a: &[Rat; N], b: &[Rat; N]) -> Rat {
    a.iter()
        .zip(b.iter())
        .fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vec<const N: usize>(v: &[Rat; N]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Projective equality: `a` and `b` are nonzero multiples of each other.
pub fn proportional<const N: usize>(a: &[Rat; N], b: &[Rat; N]) -> bool {
    for i in 0..N {
        for j in (i + 1)..N {
            if &a[i] * &b[j] != &a[j] * &b[i] {
                return false;
            }
        }
    }
    !is_zero_vec(a) && !is_zero_vec(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn inverse_round_trip() {
        let m: Mat<3> = [
            [rat(2), rat(1), rat(0)],
            [rat(0), rat(1), rat(3)],
            [rat(1), rat(0), rat(1)],
        ];
        let inv = inverse(&m).unwrap();
        let v = [rat(1), rat(-2), rat(5)];
        assert_eq!(mat_vec(&inv, &mat_vec(&m, &v)), v);
        let sing: Mat<2> = [[rat(1), rat(2)], [rat(2), rat(4)]];
        assert!(inverse(&sing).is_none());
    }
}
