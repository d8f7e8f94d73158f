//! Exact permanents by Ryser's inclusion-exclusion formula.

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// Largest matrix order accepted by [`permanent`].
pub const MAX_PERMANENT_ORDER: usize = 30;

/// Permanent of a square non-negative integer matrix given by rows.
///
/// Runs the Gray-code form of Ryser's formula. Native 128-bit arithmetic
/// is used when the sum of absolute terms provably fits, big integers
/// otherwise.
pub fn permanent(m: &[Vec<u32>]) -> Result<BigInt> {
    let n = m.len();
    if let Some(row) = m.iter().find(|r| r.len() != n) {
        return Err(Error::SizeMismatch {
            left: row.len(),
            right: n,
        });
    }
    if n == 0 {
        return Ok(BigInt::from(1));
    }
    if n > MAX_PERMANENT_ORDER {
        return Err(Error::PermanentTooLarge(n));
    }
    // every Ryser term is bounded by the product of row sums
    let mut magnitude = 1f64;
    for row in m {
        magnitude *= row.iter().map(|&x| x as f64).sum::<f64>().max(1.0);
    }
    if magnitude * 2f64.powi(n as i32) < 1e37 {
        Ok(BigInt::from(ryser_i128(m)))
    } else {
        Ok(ryser_big(m))
    }
}

/// Permanent as `u128`, for callers that know the value is small.
pub fn permanent_u128(m: &[Vec<u32>]) -> Result<u128> {
    let p = permanent(m)?;
    u128::try_from(p).map_err(|_| Error::PermanentTooLarge(m.len()))
}

fn ryser_i128(m: &[Vec<u32>]) -> i128 {
    let n = m.len();
    let mut row_sums = vec![0i128; n];
    let mut total = 0i128;
    let mut gray = 0u64;
    for k in 1u64..(1 << n) {
        let bit = k.trailing_zeros() as usize;
        gray ^= 1 << bit;
        let adding = gray >> bit & 1 == 1;
        for (s, row) in row_sums.iter_mut().zip(m) {
            if adding {
                *s += row[bit] as i128;
            } else {
                *s -= row[bit] as i128;
            }
        }
        let prod: i128 = row_sums.iter().product();
        if (n - gray.count_ones() as usize) % 2 == 0 {
            total += prod;
        } else {
            total -= prod;
        }
    }
    total
}

fn ryser_big(m: &[Vec<u32>]) -> BigInt {
    let n = m.len();
    let mut row_sums = vec![0i64; n];
    let mut total = BigInt::from(0);
    let mut gray = 0u64;
    for k in 1u64..(1 << n) {
        let bit = k.trailing_zeros() as usize;
        gray ^= 1 << bit;
        let adding = gray >> bit & 1 == 1;
        for (s, row) in row_sums.iter_mut().zip(m) {
            if adding {
                *s += row[bit] as i64;
            } else {
                *s -= row[bit] as i64;
            }
        }
        let mut prod = BigInt::from(1);
        for &s in &row_sums {
            prod *= s;
        }
        if (n - gray.count_ones() as usize) % 2 == 0 {
            total += prod;
        } else {
            total -= prod;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(m: &[Vec<u32>]) -> u128 {
        fn rec(m: &[Vec<u32>], row: usize, used: &mut Vec<bool>) -> u128 {
            if row == m.len() {
                return 1;
            }
            let mut s = 0;
            for c in 0..m.len() {
                if !used[c] && m[row][c] != 0 {
                    used[c] = true;
                    s += m[row][c] as u128 * rec(m, row + 1, used);
                    used[c] = false;
                }
            }
            s
        }
        rec(m, 0, &mut vec![false; m.len()])
    }

    #[test]
    fn all_ones() {
        assert_eq!(permanent_u128(&[vec![1, 1], vec![1, 1]]).unwrap(), 2);
        assert_eq!(permanent_u128(&vec![vec![1; 3]; 3]).unwrap(), 6);
        assert_eq!(permanent_u128(&vec![vec![1; 10]; 10]).unwrap(), 3_628_800);
    }

    #[test]
    fn matches_naive_on_small_matrices() {
        let mut state = 12345u64;
        for n in 1..=7 {
            for _ in 0..20 {
                let m: Vec<Vec<u32>> = (0..n)
                    .map(|_| {
                        (0..n)
                            .map(|_| {
                                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                                ((state >> 33) % 3) as u32
                            })
                            .collect()
                    })
                    .collect();
                assert_eq!(permanent_u128(&m).unwrap(), naive(&m));
            }
        }
    }

    #[test]
    fn big_path_agrees() {
        let m = vec![vec![7u32; 6]; 6];
        assert_eq!(ryser_big(&m), BigInt::from(ryser_i128(&m)));
        assert_eq!(permanent_u128(&m).unwrap(), 720 * 7u128.pow(6));
    }

    #[test]
    fn rejects_non_square() {
        assert!(permanent(&[vec![1, 1]]).is_err());
        assert!(matches!(
            permanent(&vec![vec![1; 31]; 31]),
            Err(Error::PermanentTooLarge(31))
        ));
    }
}
