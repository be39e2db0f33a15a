//! Exact matrix rank over the rationals or a prime field.
//!
//! Rational ranks use fraction-free elimination over the integers: each
//! elimination step cross-multiplies by the pivot and divides the row by its
//! content, so entries of boundary matrices stay tiny. The machine-integer
//! pass aborts on overflow and the computation is redone with big integers.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, Signed};

use crate::context::FieldSpec;

/// Rank of a dense integer matrix given as rows, over `field`.
pub fn rank(rows: &[Vec<i64>], field: FieldSpec) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    match field {
        FieldSpec::Rationals => {
            let small: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect();
            match rank_fraction_free(small) {
                Some(r) => r,
                None => {
                    let big: Vec<Vec<BigInt>> =
                        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
                    rank_fraction_free(big).expect("big integers do not overflow")
                }
            }
        }
        FieldSpec::PrimeField(p) => rank_mod_p(rows, p),
    }
}

fn rank_fraction_free<T>(mut m: Vec<Vec<T>>) -> Option<usize>
where
    T: Clone + Integer + Signed + CheckedMul + CheckedSub,
{
    let nrows = m.len();
    let ncols = m[0].len();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let pivot = (row..nrows)
            .filter(|&r| !m[r][col].is_zero())
            .min_by(|&a, &b| m[a][col].abs().cmp(&m[b][col].abs()));
        let Some(pivot) = pivot else { continue };
        m.swap(row, pivot);
        let (head, tail) = m.split_at_mut(row + 1);
        let prow = &head[row];
        let p = prow[col].clone();
        for r in tail.iter_mut() {
            if r[col].is_zero() {
                continue;
            }
            let g = p.gcd(&r[col]);
            let mul_r = p.clone() / g.clone();
            let mul_p = r[col].clone() / g;
            let mut content = T::zero();
            for (x, y) in r.iter_mut().zip(prow.iter()).skip(col) {
                let lhs = x.checked_mul(&mul_r)?;
                let rhs = y.checked_mul(&mul_p)?;
                *x = lhs.checked_sub(&rhs)?;
                content = content.gcd(x);
            }
            if !content.is_zero() && !content.is_one() {
                for x in r.iter_mut().skip(col) {
                    *x = x.clone() / content.clone();
                }
            }
        }
        row += 1;
    }
    Some(row)
}

fn rank_mod_p(rows: &[Vec<i64>], p: u64) -> usize {
    let reduce = |x: i64| -> u64 { (i128::from(x).rem_euclid(i128::from(p))) as u64 };
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| reduce(x)).collect()).collect();
    let nrows = m.len();
    let ncols = m[0].len();
    let mulmod = |a: u64, b: u64| -> u64 { ((u128::from(a) * u128::from(b)) % u128::from(p)) as u64 };
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(pivot) = (row..nrows).find(|&r| m[r][col] != 0) else { continue };
        m.swap(row, pivot);
        let inv = pow_mod(m[row][col], p - 2, p);
        let (head, tail) = m.split_at_mut(row + 1);
        let prow = &head[row];
        for r in tail.iter_mut() {
            if r[col] == 0 {
                continue;
            }
            let factor = mulmod(r[col], inv);
            for (x, &y) in r.iter_mut().zip(prow.iter()).skip(col) {
                *x = (*x + p - mulmod(factor, y)) % p;
            }
        }
        row += 1;
    }
    row
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((u128::from(acc) * u128::from(base)) % u128::from(p)) as u64;
        }
        base = ((u128::from(base) * u128::from(base)) % u128::from(p)) as u64;
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn small_ranks() {
        let q = FieldSpec::Rationals;
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]], q), 1);
        assert_eq!(rank(&[vec![1, 0], vec![0, 1]], q), 2);
        assert_eq!(rank(&[vec![0, 0], vec![0, 0]], q), 0);
        assert_eq!(rank(&[], q), 0);
        assert_eq!(rank(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]], q), 3);
    }

    #[test]
    fn characteristic_matters() {
        // determinant 2: full rank over Q, rank 2 over F_2
        let m = [vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]];
        assert_eq!(rank(&m, FieldSpec::PrimeField(2)), 2);
        assert_eq!(rank(&m, FieldSpec::PrimeField(3)), 3);
    }

    #[test]
    fn vandermonde_is_full_rank() {
        let n = 12;
        let m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| ((i + 2) as i64).pow(j as u32)).collect()).collect();
        assert_eq!(rank(&m, FieldSpec::Rationals), n);
        let big = [vec![i64::MAX, i64::MAX - 1], vec![i64::MAX - 1, i64::MAX - 2]];
        assert_eq!(rank(&big, FieldSpec::Rationals), 2);
        let big: Vec<Vec<BigInt>> = big.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        assert_eq!(rank_fraction_free(big), Some(2));
    }
}
