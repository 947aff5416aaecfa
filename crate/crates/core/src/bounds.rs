//! Exact evaluation of the clique number and the b-chromatic bounds for
//! `Q_n^p` and `H_{n,q}^p`.
//!
//! All arithmetic is done in checked `u128`. A bound that is not claimed for
//! the given parameters is a [`Claim::Absent`] carrying the reason, never a
//! zero and never an error.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::binom::{binomial, binomial_prefix_sum, pow2};
use crate::error::{Error, Result};

/// A bound value, or the reason it is not claimed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    Value(u128),
    Absent(&'static str),
}

impl Claim {
    pub fn value(&self) -> Option<u128> {
        match self {
            Claim::Value(v) => Some(*v),
            Claim::Absent(_) => None,
        }
    }

    pub fn reason(&self) -> Option<&'static str> {
        match self {
            Claim::Value(_) => None,
            Claim::Absent(r) => Some(r),
        }
    }

    pub fn is_applicable(&self) -> bool {
        matches!(self, Claim::Value(_))
    }
}

fn checked_add(a: u128, b: u128) -> Result<u128> {
    a.checked_add(b)
        .ok_or_else(|| Error::Overflow(format!("{a} + {b}")))
}

/// `ω(Q_n^p)` without range checks; valid for `n >= 1`, `1 <= p <= n-1`.
fn clique_formula(n: u32, p: u32) -> Result<u128> {
    if p.is_multiple_of(2) {
        binomial_prefix_sum(n, (p / 2) as i64)
    } else {
        Ok(2 * binomial_prefix_sum(n - 1, ((p - 1) / 2) as i64)?)
    }
}

/// Clique number of `Q_n^p` for `n >= 3`, `1 <= p <= n-1`.
pub fn clique_number(n: u32, p: u32) -> Result<u128> {
    if n < 3 || p < 1 || p > n - 1 {
        return Err(Error::OutOfRange {
            n,
            p,
            reason: "clique formula needs n >= 3 and 1 <= p <= n-1",
        });
    }
    clique_formula(n, p)
}

/// `2^{n-1} + floor(ω/2)` for `floor(n/2) < p < n-1`.
pub fn upper_old(n: u32, p: u32) -> Claim {
    if !(n >= 3 && n / 2 < p && p + 1 < n) {
        return Claim::Absent("claimed only for floor(n/2) < p < n-1");
    }
    match (pow2(n - 1), clique_number(n, p)) {
        (Ok(half), Ok(omega)) => {
            checked_add(half, omega / 2).map_or(Claim::Absent("overflow"), Claim::Value)
        }
        _ => Claim::Absent("overflow"),
    }
}

/// The `r, s` (odd `n`) or `r', s'` (even `n`) parameters of the new bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "parity", rename_all = "snake_case")]
pub enum ClosedFormParams {
    Odd { n: u32, p: u32, r: u128, s: u128 },
    Even {
        n: u32,
        p: u32,
        r_prime: u128,
        s_prime: u128,
    },
}

impl ClosedFormParams {
    pub fn n(&self) -> u32 {
        match *self {
            Self::Odd { n, .. } | Self::Even { n, .. } => n,
        }
    }

    pub fn p(&self) -> u32 {
        match *self {
            Self::Odd { p, .. } | Self::Even { p, .. } => p,
        }
    }

    /// `r` or `r'`.
    pub fn r(&self) -> u128 {
        match *self {
            Self::Odd { r, .. } => r,
            Self::Even { r_prime, .. } => r_prime,
        }
    }

    /// `s` or `s'`.
    pub fn s(&self) -> u128 {
        match *self {
            Self::Odd { s, .. } => s,
            Self::Even { s_prime, .. } => s_prime,
        }
    }
}

/// Odd `n >= 5` with `(n+1)/2 <= p <= n-2`, or even `n >= 6` with `n/2+1 <= p <= n-2`.
pub fn in_new_bound_range(n: u32, p: u32) -> bool {
    if n % 2 == 1 {
        n >= 5 && n.div_ceil(2) <= p && p + 2 <= n
    } else {
        n >= 6 && n / 2 < p && p + 2 <= n
    }
}

const NEW_RANGE: &str =
    "claimed only for odd n >= 5 with (n+1)/2 <= p <= n-2, or even n >= 6 with n/2+1 <= p <= n-2";

pub fn rs_params(n: u32, p: u32) -> Result<ClosedFormParams> {
    if !in_new_bound_range(n, p) {
        return Err(Error::OutOfRange {
            n,
            p,
            reason: NEW_RANGE,
        });
    }
    if n % 2 == 1 {
        let t = p - (n - 1) / 2;
        Ok(ClosedFormParams::Odd {
            n,
            p,
            r: binomial_prefix_sum(n, t as i64)?,
            s: binomial(p, t)?,
        })
    } else {
        let t = p - n / 2;
        Ok(ClosedFormParams::Even {
            n,
            p,
            r_prime: checked_add(binomial_prefix_sum(n, t as i64)?, binomial(n - 1, t)?)?,
            s_prime: binomial(p - 1, t)?,
        })
    }
}

/// `2^{n-1} + ceil(r/2) - 1` over the new-bound range.
pub fn upper_rough(n: u32, p: u32) -> Claim {
    let Ok(params) = rs_params(n, p) else {
        return Claim::Absent(NEW_RANGE);
    };
    let value = pow2(n - 1).and_then(|half| checked_add(half, params.r().div_ceil(2)));
    // r >= 1 + n, so the -1 cannot underflow.
    value.map_or(Claim::Absent("overflow"), |v| Claim::Value(v - 1))
}

/// `2^{n-1} + floor((r-s)/2)` over the new-bound range.
pub fn upper_new(n: u32, p: u32) -> Claim {
    let Ok(params) = rs_params(n, p) else {
        return Claim::Absent(NEW_RANGE);
    };
    let Some(diff) = params.r().checked_sub(params.s()) else {
        return Claim::Absent("r < s");
    };
    pow2(n - 1)
        .and_then(|half| checked_add(half, diff / 2))
        .map_or(Claim::Absent("overflow"), Claim::Value)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct R3sViolation {
    pub n: u32,
    pub q: u32,
    pub r: u128,
    pub three_s: u128,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct R3sReport {
    pub n_max: u32,
    pub pairs_checked: u64,
    pub violations: Vec<R3sViolation>,
}

/// `r = sum_{i<=q} C(n,i)` and `s = C(q + floor(n/2), q)`.
pub fn r3s_pair(n: u32, q: u32) -> Result<(u128, u128)> {
    let r = binomial_prefix_sum(n, q as i64)?;
    let s = binomial(q + n / 2, q)?;
    Ok((r, s))
}

/// Checks `r >= 3s` for `9 <= n <= n_max` and `3 <= q <= ceil(n/2) - 2`.
pub fn verify_r_ge_3s(n_max: u32) -> Result<R3sReport> {
    let mut report = R3sReport {
        n_max,
        ..Default::default()
    };
    for n in 9..=n_max {
        let q_max = n.div_ceil(2) - 2;
        for q in 3..=q_max {
            let (r, s) = r3s_pair(n, q)?;
            let three_s = s
                .checked_mul(3)
                .ok_or_else(|| Error::Overflow(format!("3 * C({}, {q})", q + n / 2)))?;
            report.pairs_checked += 1;
            if r < three_s {
                report.violations.push(R3sViolation { n, q, r, three_s });
            }
        }
    }
    Ok(report)
}

/// True iff `(n, q, p)` is covered by the coset b-coloring lower bound.
pub fn hamming_gate(n: u32, q: u32, p: u32) -> bool {
    let theorem = q >= 2
        && n >= 1
        && q < n
        && (n as u64 * (q as u64 - 1) / q as u64) <= p as u64
        && p < n;
    let corollary = q >= 2 && n >= 2 && p == n - 1;
    (theorem || corollary) && p >= 1
}

/// `q^{n-1}` when the coset construction applies.
pub fn hamming_lower(n: u32, q: u32, p: u32) -> Result<Claim> {
    if !hamming_gate(n, q, p) {
        return Ok(Claim::Absent(
            "claimed only for 2 <= q <= n-1 with floor(n(q-1)/q) <= p <= n-1, or q >= 2 with p = n-1",
        ));
    }
    (q as u128)
        .checked_pow(n - 1)
        .filter(|&v| v <= u64::MAX as u128)
        .map(Claim::Value)
        .ok_or_else(|| Error::Overflow(format!("{q}^{} exceeds 64 bits", n - 1)))
}

/// Per-`(n, p)` bound table row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub n: u32,
    pub p: u32,
    pub clique: u128,
    pub lower: Claim,
    pub upper_old: Claim,
    pub upper_rough: Claim,
    pub upper_new: Claim,
    /// `b = 2^n` when `p >= n` and the graph is complete.
    pub exact: Option<u128>,
    /// `(q, q^{n-1})` when a Hamming alphabet was requested.
    pub hamming_lower: Option<(u32, Claim)>,
}

impl BoundReport {
    /// The tightest applicable upper bound.
    pub fn best_upper(&self) -> Option<u128> {
        [self.upper_new, self.upper_rough, self.upper_old]
            .iter()
            .filter_map(Claim::value)
            .chain(self.exact)
            .min()
    }

    pub fn with_hamming(mut self, q: u32) -> Result<Self> {
        self.hamming_lower = Some((q, hamming_lower(self.n, q, self.p)?));
        Ok(self)
    }
}

const COMPLETE: &str = "Q_n^p is complete for p >= n";

/// Aggregates every bound for `Q_n^p`, `n >= 2`, `1 <= p <= n`.
pub fn bound_report(n: u32, p: u32) -> Result<BoundReport> {
    if n < 2 || p < 1 || p > n {
        return Err(Error::OutOfRange {
            n,
            p,
            reason: "bound table rows need n >= 2 and 1 <= p <= n",
        });
    }
    if p >= n {
        let all = pow2(n)?;
        return Ok(BoundReport {
            n,
            p,
            clique: all,
            lower: Claim::Absent(COMPLETE),
            upper_old: Claim::Absent(COMPLETE),
            upper_rough: Claim::Absent(COMPLETE),
            upper_new: Claim::Absent(COMPLETE),
            exact: Some(all),
            hamming_lower: None,
        });
    }
    // The Hamming lower bound at q = 2 covers floor(n/2) <= p <= n-1.
    let lower = hamming_lower(n, 2, p)?;
    let lower = if lower.is_applicable() {
        lower
    } else {
        Claim::Absent("2^{n-1} claimed only for floor(n/2) <= p <= n-1")
    };
    Ok(BoundReport {
        n,
        p,
        clique: clique_formula(n, p)?,
        lower,
        upper_old: upper_old(n, p),
        upper_rough: upper_rough(n, p),
        upper_new: upper_new(n, p),
        exact: None,
        hamming_lower: None,
    })
}

fn opt(c: &Claim) -> Option<String> {
    c.value().map(|v| v.to_string())
}

/// Column order of the CSV bound table.
pub const CSV_HEADER: &str = "n,p,clique,lower,upper_old,upper_rough,upper_new";

impl BoundReport {
    /// One CSV row; absent values are empty fields.
    pub fn csv_row(&self) -> String {
        let mut fields = vec![self.n.to_string(), self.p.to_string(), self.clique.to_string()];
        fields.extend(
            [&self.lower, &self.upper_old, &self.upper_rough, &self.upper_new]
                .map(|c| opt(c).unwrap_or_default()),
        );
        fields.join(",")
    }
}

// u128 values are emitted as JSON integers; serde_json handles them natively.
impl Serialize for BoundReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("BoundReport", 14)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("clique", &self.clique)?;
        for (name, claim) in [
            ("lower", &self.lower),
            ("upper_old", &self.upper_old),
            ("upper_rough", &self.upper_rough),
            ("upper_new", &self.upper_new),
        ] {
            st.serialize_field(name, &claim.value())?;
            let reason_key: &'static str = match name {
                "lower" => "lower_reason",
                "upper_old" => "upper_old_reason",
                "upper_rough" => "upper_rough_reason",
                _ => "upper_new_reason",
            };
            st.serialize_field(reason_key, &claim.reason())?;
        }
        st.serialize_field("exact", &self.exact)?;
        match &self.hamming_lower {
            Some((q, claim)) => {
                st.serialize_field("q", q)?;
                st.serialize_field("hamming_lower", &claim.value())?;
                st.serialize_field("hamming_lower_reason", &claim.reason())?;
            }
            None => {
                st.skip_field("q")?;
                st.skip_field("hamming_lower")?;
                st.skip_field("hamming_lower_reason")?;
            }
        }
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clique_examples() {
        assert_eq!(clique_number(4, 2).unwrap(), 5);
        assert_eq!(clique_number(5, 3).unwrap(), 10);
        assert_eq!(clique_number(4, 1).unwrap(), 2);
        assert_eq!(clique_number(7, 5).unwrap(), 44);
        assert!(clique_number(2, 1).is_err());
        assert!(clique_number(4, 4).is_err());
        assert!(clique_number(4, 0).is_err());
    }

    #[test]
    fn old_bound_examples() {
        assert_eq!(upper_old(7, 5), Claim::Value(86));
        assert!(!upper_old(6, 2).is_applicable());
        assert!(!upper_old(5, 4).is_applicable());
    }

    #[test]
    fn rs_examples() {
        let p = rs_params(7, 5).unwrap();
        assert_eq!((p.r(), p.s()), (29, 10));
        let p = rs_params(5, 3).unwrap();
        assert_eq!((p.r(), p.s()), (6, 3));
        let p = rs_params(6, 4).unwrap();
        assert!(matches!(p, ClosedFormParams::Even { r_prime: 12, s_prime: 3, .. }));
        assert!(rs_params(6, 3).is_err());
        assert!(rs_params(4, 3).is_err());
        assert!(rs_params(5, 4).is_err());
    }

    #[test]
    fn rough_and_new_examples() {
        assert_eq!(upper_rough(7, 5), Claim::Value(78));
        assert_eq!(upper_rough(5, 3), Claim::Value(18));
        assert!(!upper_rough(6, 3).is_applicable());
        assert_eq!(upper_new(7, 5), Claim::Value(73));
        assert_eq!(upper_new(5, 3), Claim::Value(17));
        assert_eq!(upper_new(6, 4), Claim::Value(36));
    }

    #[test]
    fn r3s_examples() {
        assert_eq!(r3s_pair(9, 3).unwrap(), (130, 35));
        assert_eq!(r3s_pair(10, 3).unwrap(), (176, 56));
        let report = verify_r_ge_3s(64).unwrap();
        assert!(report.violations.is_empty());
        assert!(verify_r_ge_3s(8).unwrap().pairs_checked == 0);
    }

    #[test]
    fn hamming_examples() {
        assert_eq!(hamming_lower(3, 2, 2).unwrap(), Claim::Value(4));
        assert_eq!(hamming_lower(4, 3, 3).unwrap(), Claim::Value(27));
        assert_eq!(hamming_lower(3, 5, 2).unwrap(), Claim::Value(25));
        // floor(8/3) = 2 > 1
        assert!(!hamming_lower(4, 3, 1).unwrap().is_applicable());
        assert!(matches!(hamming_lower(42, 3, 41), Err(Error::Overflow(_))));
    }

    #[test]
    fn report_examples() {
        let r = bound_report(7, 5).unwrap();
        assert_eq!(r.clique, 44);
        assert_eq!(r.lower, Claim::Value(64));
        assert_eq!(r.upper_old, Claim::Value(86));
        assert_eq!(r.upper_rough, Claim::Value(78));
        assert_eq!(r.upper_new, Claim::Value(73));

        let r = bound_report(5, 3).unwrap();
        assert_eq!(
            (r.lower.value(), r.upper_old.value(), r.upper_rough.value(), r.upper_new.value()),
            (Some(16), Some(21), Some(18), Some(17))
        );

        let r = bound_report(4, 4).unwrap();
        assert_eq!(r.exact, Some(16));
        assert_eq!(r.clique, 16);
        assert!(!r.upper_old.is_applicable());
        assert_eq!(r.best_upper(), Some(16));
        assert_eq!(r.csv_row(), "4,4,16,,,,");
    }

    #[test]
    fn csv_and_json_rows() {
        let r = bound_report(7, 5).unwrap();
        assert_eq!(r.csv_row(), "7,5,44,64,86,78,73");
        let r = bound_report(6, 2).unwrap();
        assert_eq!(r.csv_row(), "6,2,7,,,,");
        let json = serde_json::to_value(bound_report(6, 2).unwrap()).unwrap();
        assert!(json["upper_old"].is_null());
        assert!(json["upper_old_reason"].is_string());
        assert!(json.get("q").is_none());
        let json = serde_json::to_value(bound_report(4, 3).unwrap().with_hamming(3).unwrap()).unwrap();
        assert_eq!(json["hamming_lower"], 27);
    }
}
