//! Closed and open common p-neighborhoods in the subset lattice.
//!
//! `C^p[A]` is the set of `y` with `|x △ y| <= p` for every `x ∈ A`, and
//! `C^p(A) = C^p[A] \ A`. The direct routines here enumerate all candidates in
//! simplicial order with an early exit on the first violating member; the
//! sweeps use the rank-indexed ball tables from [`crate::cube`].

use serde::Serialize;

use crate::bounds::{in_new_bound_range, rs_params, ClosedFormParams};
use crate::compression::sections;
use crate::cube::{BallTable, Cube, RankSet, MAX_DENSE};
use crate::error::{Error, Result};
use crate::subset::{Family, GroundSet, SimplicialIter};
use crate::sweep::{self, Mode, Tally, Verdict, Violation};

fn check_enumerable(ground: &GroundSet) -> Result<()> {
    if ground.size() > MAX_DENSE {
        return Err(Error::Infeasible(format!(
            "enumerating 2^{} candidates",
            ground.size()
        )));
    }
    Ok(())
}

/// `C^p[A]`. For an empty `A` this is the whole power set.
///
/// `p = 0` is accepted and yields `A` when `|A| = 1` and nothing otherwise
/// (for non-empty `A`).
pub fn common_closed(a: &Family, p: u32) -> Result<Family> {
    let ground = a.ground();
    check_enumerable(ground)?;
    let members = a.members();
    let closed = SimplicialIter::new(ground.size())
        .filter(|&y| members.iter().all(|&x| (x ^ y).count_ones() <= p))
        .collect();
    Ok(Family::from_sorted_unchecked(ground, closed))
}

/// `C^p(A) = C^p[A] \ A`.
pub fn common_open(a: &Family, p: u32) -> Result<Family> {
    common_closed(a, p)?.difference(a)
}

/// Both neighborhoods of a family at radius `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonNeighborhood {
    pub p: u32,
    pub closed: Family,
    pub open: Family,
}

impl CommonNeighborhood {
    pub fn compute(a: &Family, p: u32) -> Result<Self> {
        let closed = common_closed(a, p)?;
        let open = closed.difference(a)?;
        Ok(Self { p, closed, open })
    }
}

/// True iff `f = I_{|f|}`.
pub fn is_initial_segment(f: &Family) -> bool {
    f.is_initial_segment()
}

/// `|C^p(I_{r-s})| = 2^{n-1} - (r - 2s)` (or the primed version for even `n`).
pub fn closed_form_open_count(params: &ClosedFormParams) -> u128 {
    let half = 1u128 << (params.n() - 1);
    // r - 2s can be negative; the total is a count and never is.
    (half as i128 - params.r() as i128 + 2 * params.s() as i128) as u128
}

/// Rebuilds `C^p[A]` from the `label`-sections:
/// `(C^{p-1}[A+] ∩ C^p[A-]) ∪ ((C^p[A+] ∩ C^{p-1}[A-]) + {label})`.
pub fn common_closed_via_sections(a: &Family, p: u32, label: u32) -> Result<Family> {
    if p == 0 {
        return Err(Error::Precondition("section identity needs p >= 1".into()));
    }
    let pair = sections(a, label)?;
    let low = common_closed(&pair.plus, p - 1)?.intersection(&common_closed(&pair.minus, p)?)?;
    let high = common_closed(&pair.plus, p)?.intersection(&common_closed(&pair.minus, p - 1)?)?;
    low.lift(a.ground(), label, false)?
        .union(&high.lift(a.ground(), label, true)?)
}

/// Machine-readable outcome of a neighborhood sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub theorem: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    pub mode: &'static str,
    pub families_checked: u64,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
    pub max_slack: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl VerificationReport {
    pub fn from_tally(theorem: &str, n: usize, p: Option<u32>, mode: Mode, tally: Tally) -> Self {
        Self {
            schema: crate::SCHEMA_VERSION,
            theorem: theorem.to_string(),
            n,
            p,
            mode: mode.label(),
            families_checked: tally.families_checked,
            violation_count: tally.violation_count,
            violations: tally.violations,
            max_slack: tally.max_slack,
            seed: mode.seed(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

fn check_radius(n: usize, p: u32) -> Result<()> {
    if p == 0 {
        return Err(Error::Precondition("radius p must be at least 1".into()));
    }
    if n > 12 {
        return Err(Error::Infeasible(format!("family sweeps support n <= 12, got {n}")));
    }
    Ok(())
}

/// Checks `|C^p[A]| <= |C^p[I_{|A|}]|`.
pub fn verify_close_inequality(n: usize, p: u32, mode: Mode) -> Result<VerificationReport> {
    check_radius(n, p)?;
    mode.check_feasible(n)?;
    let cube = Cube::new(n)?;
    let balls = BallTable::new(&cube, p);
    let segment = balls.initial_segment_closed_counts();
    let tally = sweep::run(
        &cube,
        mode,
        |rng| sweep::random_family(rng, n),
        |ranks| {
            let lhs = balls.closed_count(ranks.iter().copied()) as i64;
            let rhs = segment[ranks.len()] as i64;
            if lhs <= rhs {
                Verdict::Pass { slack: rhs - lhs }
            } else {
                Verdict::Fail {
                    lhs,
                    rhs,
                    context: format!("|C^{p}[A]| > |C^{p}[I_{}]|", ranks.len()),
                }
            }
        },
    )?;
    Ok(VerificationReport::from_tally("close", n, Some(p), mode, tally))
}

fn pairwise_within(cube: &Cube, ranks: &[u32], p: u32) -> bool {
    ranks.iter().enumerate().all(|(i, &a)| {
        ranks[i + 1..]
            .iter()
            .all(|&b| (cube.mask(a) ^ cube.mask(b)).count_ones() <= p)
    })
}

/// Checks `|C^p(A)| <= |C^p(I_{|A|})|` over families whose pairwise symmetric
/// differences are all at most `p`. Exhaustive mode skips other families;
/// sample mode draws qualifying families directly.
pub fn verify_open_inequality(n: usize, p: u32, mode: Mode) -> Result<VerificationReport> {
    check_radius(n, p)?;
    mode.check_feasible(n)?;
    let cube = Cube::new(n)?;
    let balls = BallTable::new(&cube, p);
    let segment = balls.initial_segment_open_counts();
    let tally = sweep::run(
        &cube,
        mode,
        |rng| sweep::random_pairwise_close_family(rng, n, &balls),
        |ranks| {
            if !pairwise_within(&cube, ranks, p) {
                return Verdict::Skip;
            }
            let mut open = balls.closed(ranks.iter().copied());
            for &r in ranks {
                open.remove(r);
            }
            let lhs = open.count() as i64;
            let rhs = segment[ranks.len()] as i64;
            if lhs <= rhs {
                Verdict::Pass { slack: rhs - lhs }
            } else {
                Verdict::Fail {
                    lhs,
                    rhs,
                    context: format!("|C^{p}(A)| > |C^{p}(I_{})|", ranks.len()),
                }
            }
        },
    )?;
    Ok(VerificationReport::from_tally("open", n, Some(p), mode, tally))
}

/// A family violating the open-neighborhood inequality once the pairwise
/// hypothesis is dropped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OpenCounterexample {
    pub n: usize,
    pub p: u32,
    pub family: String,
    pub open: usize,
    pub open_initial: usize,
}

/// Searches every family of `2^[n]` (`n <= 4`) in index order for
/// `|C^p(A)| > |C^p(I_{|A|})|`; returns the first hit.
pub fn find_open_counterexample(n: usize, p: u32) -> Result<Option<OpenCounterexample>> {
    check_radius(n, p)?;
    Mode::Exhaustive.check_feasible(n)?;
    let cube = Cube::new(n)?;
    let balls = BallTable::new(&cube, p);
    let segment = balls.initial_segment_open_counts();
    let total = 1u64 << (1u64 << n);
    for index in 0..total {
        let ranks: Vec<u32> = (0..1u32 << n).filter(|r| index >> r & 1 == 1).collect();
        let mut open = balls.closed(ranks.iter().copied());
        for &r in &ranks {
            open.remove(r);
        }
        if open.count() > segment[ranks.len()] {
            return Ok(Some(OpenCounterexample {
                n,
                p,
                family: sweep::family_notation(&cube, &ranks),
                open: open.count(),
                open_initial: segment[ranks.len()],
            }));
        }
    }
    Ok(None)
}

/// Outcome of checking that `C^p[I_a]` is an initial segment for all `a` and `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InitialSegmentReport {
    pub schema: u32,
    pub n: usize,
    pub checked: u64,
    /// `(a, p)` pairs whose neighborhood is not an initial segment.
    pub violations: Vec<(u64, u32)>,
}

/// For every `a` in `[0, 2^n]` and `p` in `[1, n]`, checks that `C^p[I_a]` is an
/// initial segment.
pub fn verify_initial_segment_neighborhoods(n: usize) -> Result<InitialSegmentReport> {
    let cube = Cube::new(n)?;
    let len = cube.len();
    let mut report = InitialSegmentReport {
        schema: crate::SCHEMA_VERSION,
        n,
        checked: 0,
        violations: Vec::new(),
    };
    for p in 1..=n as u32 {
        let balls = BallTable::new(&cube, p);
        let mut closed = RankSet::full(len);
        for a in 0..=len {
            if a > 0 {
                closed.and_assign(balls.ball(a as u32 - 1));
            }
            report.checked += 1;
            if !closed.is_prefix() {
                report.violations.push((a as u64, p));
            }
        }
    }
    Ok(report)
}

/// One `(n, p)` row of the closed-form check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormRow {
    pub n: u32,
    pub p: u32,
    pub params: ClosedFormParams,
    /// `|C^p(I_{r-s})|` by brute force.
    pub open_at_r_minus_s: u64,
    /// `2^{n-1} - (r - 2s)`.
    pub formula: u128,
    /// `|C^p(I_{r-s+1})|` by brute force.
    pub open_at_r_minus_s_plus_1: u64,
    /// `2^{n-1} - (r - 2s + 1)`, which the previous value must stay strictly below.
    pub strict_bound: i128,
    /// `C^p[I_r] = I_{2^{n-1}}`.
    pub closed_at_r_is_half: bool,
    pub ok: bool,
}

/// Brute-force check of the closed-form open count, the strict inequality at
/// `r - s + 1`, and `C^p[I_r] = I_{2^{n-1}}` for every `p` in range at this `n`.
pub fn verify_closed_form(n: u32) -> Result<Vec<ClosedFormRow>> {
    let cube = Cube::new(n as usize)?;
    let len = cube.len();
    let mut rows = Vec::new();
    for p in 1..n {
        if !in_new_bound_range(n, p) {
            continue;
        }
        let params = rs_params(n, p)?;
        let balls = BallTable::new(&cube, p);
        let open_counts = balls.initial_segment_open_counts();
        let closed_counts = balls.initial_segment_closed_counts();
        let (r, s) = (params.r() as usize, params.s() as usize);
        let at = open_counts[r - s] as u64;
        let next = open_counts[r - s + 1] as u64;
        let formula = closed_form_open_count(&params);
        let strict_bound = formula as i128 - 1;
        let half = len / 2;
        // C^p[I_r] is an initial segment, so matching the count suffices.
        let closed_at_r_is_half = closed_counts[r] == half && balls.closed(0..r as u32).is_prefix();
        let ok = at as u128 == formula && (next as i128) < strict_bound && closed_at_r_is_half;
        rows.push(ClosedFormRow {
            n,
            p,
            params,
            open_at_r_minus_s: at,
            formula,
            open_at_r_minus_s_plus_1: next,
            strict_bound,
            closed_at_r_is_half,
            ok,
        });
    }
    Ok(rows)
}
