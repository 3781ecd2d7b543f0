//! A dense, nested-loop expansion of `F_{k,1}` straight from its product
//! definition. Shares no code with the series engine so it can serve as an
//! independent oracle.

use num_bigint::BigInt;
use num_traits::Zero;

/// Multiplies a dense power series (exponents `0..len`) by `1 - q^e`.
fn times_one_minus(v: &[BigInt], e: usize) -> Vec<BigInt> {
    (0..v.len())
        .map(|i| {
            if i >= e {
                &v[i] - &v[i - e]
            } else {
                v[i].clone()
            }
        })
        .collect()
}

/// Multiplies by the geometric series `sum_j q^{e j}`, i.e. divides by `1 - q^e`.
fn times_geometric(v: &[BigInt], e: usize) -> Vec<BigInt> {
    (0..v.len())
        .map(|i| {
            let mut acc = BigInt::zero();
            let mut j = 0;
            while j * e <= i {
                acc += &v[i - j * e];
                j += 1;
            }
            acc
        })
        .collect()
}

/// Coefficients `0..=order` of
/// `sum_n (q^{2n+2}, q^{2n+2k}; q^2)_inf / (q^{2n+1}; q^2)_inf^2 q^{2n}`.
pub fn f_k1_product(k: usize, order: usize) -> Vec<BigInt> {
    assert!(k >= 1);
    let len = order + 1;
    let mut total = vec![BigInt::zero(); len];
    let mut n = 0;
    while 2 * n <= order {
        let mut t = vec![BigInt::zero(); len];
        t[2 * n] = BigInt::from(1);
        for start in [2 * n + 2, 2 * n + 2 * k] {
            let mut e = start;
            while e <= order {
                t = times_one_minus(&t, e);
                e += 2;
            }
        }
        let mut e = 2 * n + 1;
        while e <= order {
            t = times_geometric(&t, e);
            t = times_geometric(&t, e);
            e += 2;
        }
        for (acc, x) in total.iter_mut().zip(&t) {
            *acc += x;
        }
        n += 1;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k1_matches_lambert_count() {
        // k = 1: sum_n q^n / (1 - q^{2n+1}); coefficient of q^N counts pairs (n, j)
        // with n + (2n+1) j = N.
        let got = f_k1_product(1, 30);
        for (big_n, c) in got.iter().enumerate() {
            let count = (0..=big_n)
                .filter(|n| (big_n - n) % (2 * n + 1) == 0)
                .count();
            assert_eq!(*c, BigInt::from(count), "N={big_n}");
        }
    }
}
