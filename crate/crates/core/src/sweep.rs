//! Shared driver for exhaustive and seeded-sample sweeps over families.
//!
//! Exhaustive sweeps enumerate all `2^(2^n)` families of `2^[n]` (so `n <= 4`).
//! Sampled sweeps split the work into fixed chunks, each drawn from its own
//! ChaCha stream derived from the seed, so results do not depend on the number
//! of worker threads.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cube::{BallTable, Cube, RankSet};
use crate::error::{Error, Result};
use crate::subset::{write_bits, GroundSet};

/// Largest `n` for which every family of `2^[n]` is enumerated.
pub const MAX_EXHAUSTIVE_N: usize = 4;

const SAMPLE_CHUNK: u64 = 1024;
const EXHAUSTIVE_CHUNK: u64 = 4096;
/// Violations kept verbatim in a report; the total is always counted.
pub const MAX_REPORTED_VIOLATIONS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sample { count: u64, seed: u64 },
}

impl Mode {
    pub fn label(&self) -> &'static str {
        match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Sample { .. } => "sample",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Mode::Exhaustive => None,
            Mode::Sample { seed, .. } => Some(*seed),
        }
    }

    /// Rejects exhaustive requests that cannot finish.
    pub fn check_feasible(&self, n: usize) -> Result<()> {
        if matches!(self, Mode::Exhaustive) && n > MAX_EXHAUSTIVE_N {
            return Err(Error::Infeasible(format!(
                "exhaustive family sweep at n={n} would visit 2^{} families; use sampling",
                1u64 << n
            )));
        }
        Ok(())
    }
}

/// Result of checking one family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The family does not satisfy the statement's hypothesis.
    Skip,
    /// The inequality held with `rhs - lhs = slack`.
    Pass { slack: i64 },
    Fail {
        lhs: i64,
        rhs: i64,
        context: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Position of the family in the sweep (exhaustive index or sample number).
    pub index: u64,
    /// The violating family in subset notation.
    pub family: String,
    pub lhs: i64,
    pub rhs: i64,
    pub context: String,
}

/// Aggregate of a sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub families_checked: u64,
    pub skipped: u64,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
    pub max_slack: Option<i64>,
}

impl Tally {
    fn record(&mut self, index: u64, ranks: &[u32], cube: &Cube, verdict: Verdict) {
        match verdict {
            Verdict::Skip => self.skipped += 1,
            Verdict::Pass { slack } => {
                self.families_checked += 1;
                self.max_slack = Some(self.max_slack.map_or(slack, |m| m.max(slack)));
            }
            Verdict::Fail { lhs, rhs, context } => {
                self.families_checked += 1;
                self.violation_count += 1;
                let slack = rhs - lhs;
                self.max_slack = Some(self.max_slack.map_or(slack, |m| m.max(slack)));
                if self.violations.len() < MAX_REPORTED_VIOLATIONS {
                    self.violations.push(Violation {
                        index,
                        family: family_notation(cube, ranks),
                        lhs,
                        rhs,
                        context,
                    });
                }
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.families_checked += other.families_checked;
        self.skipped += other.skipped;
        self.violation_count += other.violation_count;
        self.violations.extend(other.violations);
        self.violations.sort_by_key(|v| v.index);
        self.violations.truncate(MAX_REPORTED_VIOLATIONS);
        self.max_slack = match (self.max_slack, other.max_slack) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Renders rank-indexed members as `{{},{1},...}` over `[n]`.
pub fn family_notation(cube: &Cube, ranks: &[u32]) -> String {
    let ground = GroundSet::standard(cube.n()).expect("dense dimension fits a ground set");
    let mut out = String::from("{");
    for (i, &r) in ranks.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write_bits(&mut out, &ground, cube.mask(r));
    }
    out.push('}');
    out
}

/// RNG for sample chunk `chunk` of a sweep seeded with `seed`.
pub fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

/// A uniformly random family: size uniform in `[1, 2^(n-1)]`, then that many
/// distinct subsets chosen uniformly. Returned as sorted ranks.
pub fn random_family(rng: &mut impl Rng, n: usize) -> Vec<u32> {
    let total = 1usize << n;
    let half = (total / 2).max(1);
    let m = rng.random_range(1..=half);
    let mut ranks: Vec<u32> = index::sample(rng, total, m).into_iter().map(|r| r as u32).collect();
    ranks.sort_unstable();
    ranks
}

/// A random family with all pairwise symmetric differences at most `balls.p()`:
/// target size uniform in `[1, 2^(n-1)]`, grown one uniform admissible vertex at
/// a time until the target is reached or no admissible vertex remains.
pub fn random_pairwise_close_family(rng: &mut impl Rng, n: usize, balls: &BallTable) -> Vec<u32> {
    let total = 1usize << n;
    let half = (total / 2).max(1);
    let target = rng.random_range(1..=half);
    let first = rng.random_range(0..total) as u32;
    let mut ranks = vec![first];
    let mut candidates = RankSet::full(total);
    candidates.and_assign(balls.ball(first));
    candidates.remove(first);
    while ranks.len() < target {
        let available = candidates.count();
        if available == 0 {
            break;
        }
        let pick = candidates
            .nth(rng.random_range(0..available))
            .expect("index below count");
        ranks.push(pick);
        candidates.and_assign(balls.ball(pick));
        candidates.remove(pick);
    }
    ranks.sort_unstable();
    ranks
}

/// Runs `check` over the families selected by `mode`.
///
/// In sample mode `generate` draws each family; in exhaustive mode every
/// subset of `2^[n]` is visited in index order (bit `r` of the index selects
/// the subset of rank `r`).
pub fn run<G, C>(cube: &Cube, mode: Mode, generate: G, check: C) -> Result<Tally>
where
    G: Fn(&mut ChaCha8Rng) -> Vec<u32> + Sync,
    C: Fn(&[u32]) -> Verdict + Sync,
{
    let n = cube.n();
    mode.check_feasible(n)?;
    let tally = match mode {
        Mode::Exhaustive => {
            let total: u64 = 1u64 << (1u64 << n);
            let chunks = total.div_ceil(EXHAUSTIVE_CHUNK);
            (0..chunks)
                .into_par_iter()
                .map(|chunk| {
                    let mut tally = Tally::default();
                    let mut ranks = Vec::with_capacity(1 << n);
                    let end = ((chunk + 1) * EXHAUSTIVE_CHUNK).min(total);
                    for index in chunk * EXHAUSTIVE_CHUNK..end {
                        ranks.clear();
                        let mut rest = index;
                        while rest != 0 {
                            ranks.push(rest.trailing_zeros());
                            rest &= rest - 1;
                        }
                        tally.record(index, &ranks, cube, check(&ranks));
                    }
                    tally
                })
                .reduce(Tally::default, Tally::merge)
        }
        Mode::Sample { count, seed } => {
            let chunks = count.div_ceil(SAMPLE_CHUNK);
            (0..chunks)
                .into_par_iter()
                .map(|chunk| {
                    let mut tally = Tally::default();
                    let mut rng = chunk_rng(seed, chunk);
                    let end = ((chunk + 1) * SAMPLE_CHUNK).min(count);
                    for index in chunk * SAMPLE_CHUNK..end {
                        let ranks = generate(&mut rng);
                        tally.record(index, &ranks, cube, check(&ranks));
                    }
                    tally
                })
                .reduce(Tally::default, Tally::merge)
        }
    };
    Ok(tally)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_visits_every_family() {
        let cube = Cube::new(2).unwrap();
        let tally = run(&cube, Mode::Exhaustive, |_| Vec::new(), |ranks| Verdict::Pass {
            slack: ranks.len() as i64,
        })
        .unwrap();
        assert_eq!(tally.families_checked, 16);
        assert_eq!(tally.max_slack, Some(4));
    }

    #[test]
    fn exhaustive_rejects_large_n() {
        let cube = Cube::new(5).unwrap();
        let err = run(&cube, Mode::Exhaustive, |_| Vec::new(), |_| Verdict::Skip).unwrap_err();
        assert!(matches!(err, Error::Infeasible(_)));
    }

    #[test]
    fn samples_are_reproducible() {
        let draw = |seed| {
            let mut rng = chunk_rng(seed, 3);
            (0..20).map(|_| random_family(&mut rng, 6)).collect::<Vec<_>>()
        };
        assert_eq!(draw(7), draw(7));
        assert_ne!(draw(7), draw(8));
    }

    #[test]
    fn random_family_sizes_in_range() {
        let mut rng = chunk_rng(1, 0);
        for _ in 0..200 {
            let f = random_family(&mut rng, 5);
            assert!((1..=16).contains(&f.len()));
            assert!(f.windows(2).all(|w| w[0] < w[1]));
            assert!(f.iter().all(|&r| r < 32));
        }
    }

    #[test]
    fn pairwise_close_families_satisfy_hypothesis() {
        let cube = Cube::new(6).unwrap();
        let balls = BallTable::new(&cube, 2);
        let mut rng = chunk_rng(9, 0);
        for _ in 0..200 {
            let f = random_pairwise_close_family(&mut rng, 6, &balls);
            for &a in &f {
                for &b in &f {
                    assert!((cube.mask(a) ^ cube.mask(b)).count_ones() <= 2);
                }
            }
        }
    }

    #[test]
    fn failures_are_reported_with_witness() {
        let cube = Cube::new(2).unwrap();
        let tally = run(&cube, Mode::Exhaustive, |_| Vec::new(), |ranks| {
            if ranks == [0, 3] {
                Verdict::Fail {
                    lhs: 2,
                    rhs: 1,
                    context: "test".into(),
                }
            } else {
                Verdict::Skip
            }
        })
        .unwrap();
        assert_eq!(tally.violation_count, 1);
        assert_eq!(tally.violations[0].family, "{{},{1,2}}");
        assert_eq!(tally.violations[0].index, 0b1001);
    }
}
