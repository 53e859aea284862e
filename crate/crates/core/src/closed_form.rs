//! Binomial coefficients and the closed forms for line counts with at most
//! two constraints of codimension above 2.

use crate::query::QueryError;
use crate::scalar::Count;

/// `C(a, b)`, zero when `b < 0`, `b > a` or `a < 0`.
///
/// Built from one row of Pascal's triangle, so only additions are needed.
pub fn binomial<T: Count>(a: i64, b: i64) -> T {
    if a < 0 || b < 0 || b > a {
        return T::zero();
    }
    let k = b.min(a - b) as usize;
    let mut row = vec![T::zero(); k + 1];
    row[0] = T::one();
    for _ in 0..a {
        for col in (1..=k).rev() {
            row[col] = row[col].clone() + row[col - 1].clone();
        }
    }
    row.swap_remove(k)
}

/// The `m`-th Catalan number `C(2m, m) / (m + 1)`.
pub fn catalan<T: Count>(m: u32) -> T {
    let m = i64::from(m);
    binomial::<T>(2 * m, m) / T::from_count((m + 1) as u64)
}

fn check_range(what: &'static str, n: i64, values: &[i64]) -> Result<(), QueryError> {
    if n < 2 || values.iter().any(|&v| v < 2 || v > n) {
        let detail = format!("n={n}, values={values:?} (need n >= 2 and 2 <= value <= n)");
        return Err(QueryError::OutOfRange { what, detail });
    }
    Ok(())
}

/// Lines meeting one codim-`l` space and `2n − 1 − l` codim-2 spaces:
/// `C(2n−l−1, n−1) − C(2n−l−1, n)`.
pub fn closed_form_cnl<T: Count>(n: i64, l: i64) -> Result<T, QueryError> {
    check_range("closed form C(n,l)", n, &[l])?;
    let top = 2 * n - l - 1;
    Ok(binomial::<T>(top, n - 1) - binomial::<T>(top, n))
}

/// Lines meeting a codim-`k` space, a codim-`l` space and `2n − k − l`
/// codim-2 spaces: `C(2n−l−k, n−k) − C(2n−l−k, n)`.
pub fn closed_form_kl<T: Count>(n: i64, k: i64, l: i64) -> Result<T, QueryError> {
    check_range("closed form N(k,l,2,...,2)", n, &[k, l])?;
    let top = 2 * n - l - k;
    Ok(binomial::<T>(top, n - k) - binomial::<T>(top, n))
}

/// The codim list `[k, l, 2, …, 2]` whose count [`closed_form_kl`] gives.
pub fn kl_codims(n: u32, k: u32, l: u32) -> Vec<u32> {
    let fillers = (2 * n).saturating_sub(k + l) as usize;
    let mut codims = vec![k, l];
    codims.extend(std::iter::repeat_n(2, fillers));
    codims
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    /// Factorial quotient, independent of the Pascal row.
    fn binomial_by_factorials(a: u64, b: u64) -> u128 {
        if b > a {
            return 0;
        }
        let mut acc: u128 = 1;
        for i in 0..b {
            acc = acc * u128::from(a - i) / u128::from(i + 1);
        }
        acc
    }

    #[test]
    fn small_binomials() {
        assert_eq!(binomial::<u64>(7, 4), 35);
        assert_eq!(binomial::<u64>(3, 5), 0);
        assert_eq!(binomial::<u64>(0, 0), 1);
        assert_eq!(binomial::<u64>(-1, 0), 0);
        assert_eq!(binomial::<u64>(4, -1), 0);
    }

    #[test]
    fn binomial_matches_factorial_quotient() {
        for a in 0..60u64 {
            for b in 0..=a {
                assert_eq!(
                    binomial::<u128>(a as i64, b as i64),
                    binomial_by_factorials(a, b)
                );
            }
        }
    }

    #[test]
    fn big_binomial() {
        let b: BigUint = binomial(100, 49);
        assert_eq!(b.to_string(), "98913082887808032681188722800");
    }

    #[test]
    fn catalan_values() {
        let expected = [1u64, 2, 5, 14, 42, 132, 429, 1430];
        for (m, want) in (1..).zip(expected) {
            assert_eq!(catalan::<u64>(m), want);
        }
    }

    #[test]
    fn cnl_values() {
        assert_eq!(closed_form_cnl::<u64>(3, 2).unwrap(), 2);
        // C(5,3) − C(5,4) = 10 − 5
        assert_eq!(closed_form_cnl::<u64>(4, 2).unwrap(), 5);
        for n in 2..=10 {
            assert_eq!(closed_form_cnl::<u64>(n, n).unwrap(), 1);
        }
        assert!(closed_form_cnl::<u64>(3, 4).is_err());
        assert!(closed_form_cnl::<u64>(1, 1).is_err());
    }

    #[test]
    fn kl_values() {
        // C(2,1) − C(2,4)
        assert_eq!(closed_form_kl::<u64>(4, 3, 3).unwrap(), 2);
        assert_eq!(closed_form_kl::<u64>(3, 2, 2).unwrap(), 2);
        for n in 2..=10 {
            assert_eq!(closed_form_kl::<u64>(n, n, n).unwrap(), 1);
        }
        assert!(closed_form_kl::<u64>(4, 5, 2).is_err());
    }

    #[test]
    fn kl_filler_count() {
        assert_eq!(kl_codims(4, 3, 3), vec![3, 3, 2, 2]);
        assert_eq!(kl_codims(3, 3, 3), vec![3, 3]);
    }
}
