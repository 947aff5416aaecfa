//! Exact binomial coefficients from a precomputed Pascal triangle.

use std::sync::LazyLock;

use crate::error::{Error, Result};

/// Largest row kept in the table. Row 127 is the last one whose entries all fit in `u128`.
pub const MAX_ROW: u32 = 127;

static PASCAL: LazyLock<Vec<Vec<u128>>> = LazyLock::new(|| {
    let mut rows: Vec<Vec<u128>> = Vec::with_capacity(MAX_ROW as usize + 1);
    rows.push(vec![1]);
    for n in 1..=MAX_ROW as usize {
        let prev = &rows[n - 1];
        let mut row = vec![1u128; n + 1];
        for k in 1..n {
            row[k] = prev[k - 1] + prev[k];
        }
        rows.push(row);
    }
    rows
});

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> Result<u128> {
    if n > MAX_ROW {
        return Err(Error::Overflow(format!("C({n}, {k}) needs rows beyond {MAX_ROW}")));
    }
    if k > n {
        return Ok(0);
    }
    Ok(PASCAL[n as usize][k as usize])
}

/// `C(n, k)` for the small arguments used by subset ranking (`n <= 63`).
#[inline]
pub(crate) fn small_binomial(n: u32, k: u32) -> u64 {
    debug_assert!(n <= 63);
    if k > n {
        0
    } else {
        PASCAL[n as usize][k as usize] as u64
    }
}

/// `sum_{i=0}^{upto} C(n, i)`; an empty sum when `upto < 0`.
pub fn binomial_prefix_sum(n: u32, upto: i64) -> Result<u128> {
    if upto < 0 {
        return Ok(0);
    }
    let top = (upto as u64).min(n as u64) as u32;
    let mut acc: u128 = 0;
    for i in 0..=top {
        acc = acc
            .checked_add(binomial(n, i)?)
            .ok_or_else(|| Error::Overflow(format!("prefix sum of row {n}")))?;
    }
    Ok(acc)
}

/// `2^e` as `u128`, erroring past 127.
pub fn pow2(e: u32) -> Result<u128> {
    1u128
        .checked_shl(e)
        .filter(|_| e < 128)
        .ok_or_else(|| Error::Overflow(format!("2^{e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binomial(0, 0).unwrap(), 1);
        assert_eq!(binomial(4, 2).unwrap(), 6);
        assert_eq!(binomial(7, 3).unwrap(), 35);
        assert_eq!(binomial(3, 5).unwrap(), 0);
        assert_eq!(binomial(64, 32).unwrap(), 1_832_624_140_942_590_534);
    }

    #[test]
    fn rows_sum_to_powers_of_two() {
        for n in 0..=MAX_ROW {
            let s = binomial_prefix_sum(n, n as i64).unwrap();
            assert_eq!(s, pow2(n).unwrap(), "row {n}");
        }
    }

    #[test]
    fn beyond_table_is_an_error() {
        assert!(matches!(binomial(128, 1), Err(Error::Overflow(_))));
        assert!(pow2(128).is_err());
    }

    #[test]
    fn negative_prefix_is_empty() {
        assert_eq!(binomial_prefix_sum(5, -1).unwrap(), 0);
    }
}
