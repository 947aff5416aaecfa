//! i-sections, the i-compression operator and fully-compressed fixpoints.

use serde::Serialize;

use crate::binom::binomial_prefix_sum;
use crate::cube::{BallTable, Cube};
use crate::error::{Error, Result};
use crate::subset::{family_cmp, initial_segment, remove_bit, Family, GroundSet, SubsetMask};
use crate::sweep::{self, Mode, Tally, Verdict};

/// The two i-sections of a family, both over `ground \ {label}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionPair {
    pub label: u32,
    /// Members avoiding `label`.
    pub minus: Family,
    /// Members containing `label`, with `label` removed.
    pub plus: Family,
}

impl SectionPair {
    /// `minus ∪ (plus + {label})` over `parent`.
    pub fn reassemble(&self, parent: &GroundSet) -> Result<Family> {
        let low = self.minus.lift(parent, self.label, false)?;
        let high = self.plus.lift(parent, self.label, true)?;
        low.union(&high)
    }
}

pub fn sections(a: &Family, label: u32) -> Result<SectionPair> {
    let ground = a.ground();
    let pos = ground
        .position(label)
        .ok_or(Error::LabelNotInGround(label))?;
    let sub = ground.without(label)?;
    let (mut minus, mut plus) = (Vec::new(), Vec::new());
    for &bits in a.members() {
        if bits >> pos & 1 == 1 {
            plus.push(remove_bit(bits, pos));
        } else {
            minus.push(remove_bit(bits, pos));
        }
    }
    // Deleting a bit shared by every member of a list keeps it sorted.
    Ok(SectionPair {
        label,
        minus: Family::from_sorted_unchecked(&sub, minus),
        plus: Family::from_sorted_unchecked(&sub, plus),
    })
}

/// `S_i(A) = I_{|A_{i-}|} ∪ (I_{|A_{i+}|} + {i})`, initial segments taken in `2^{ground \ {i}}`.
pub fn compress(a: &Family, label: u32) -> Result<Family> {
    let pair = sections(a, label)?;
    let sub = pair.minus.ground().clone();
    SectionPair {
        label,
        minus: initial_segment(pair.minus.len() as u64, &sub)?,
        plus: initial_segment(pair.plus.len() as u64, &sub)?,
    }
    .reassemble(a.ground())
}

pub fn is_compressed(a: &Family, label: u32) -> Result<bool> {
    Ok(compress(a, label)? == *a)
}

/// Applies changing compressions, scanning labels cyclically in ground order,
/// until a full pass changes nothing. Returns the fixpoint and the number of
/// compressions applied.
pub fn compress_fully(a: &Family) -> (Family, usize) {
    let labels = a.ground().labels().to_vec();
    let mut current = a.clone();
    let mut steps = 0usize;
    if labels.is_empty() {
        return (current, 0);
    }
    let mut clean = 0usize;
    let mut idx = 0usize;
    while clean < labels.len() {
        let label = labels[idx];
        let next = compress(&current, label).expect("label is drawn from the ground set");
        if next == current {
            clean += 1;
        } else {
            debug_assert_eq!(
                family_cmp(&next, &current).ok(),
                Some(std::cmp::Ordering::Less)
            );
            current = next;
            steps += 1;
            clean = 1;
        }
        idx = (idx + 1) % labels.len();
    }
    (current, steps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FixpointKind {
    InitialSegment,
    ExceptionalOdd,
    ExceptionalEven,
    NotFixpoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixpointClass {
    pub kind: FixpointKind,
    /// The set removed from `I_ℓ` (or `I_ℓ'`) for the exceptional forms.
    pub witness: Option<SubsetMask>,
}

/// The fully-compressed family of size `2^{n-1}` that is not an initial segment:
/// `I_ℓ` with one set removed. Positions stand in for labels on relabeled grounds.
#[derive(Clone, Debug)]
pub struct ExceptionalForm {
    pub kind: FixpointKind,
    /// `ℓ` (odd `n`) or `ℓ'` (even `n`).
    pub ell: u64,
    pub removed: SubsetMask,
    pub family: Family,
}

/// Builds the exceptional form for `ground`; `None` for the empty ground set.
pub fn exceptional_form(ground: &GroundSet) -> Result<Option<ExceptionalForm>> {
    let n = ground.size();
    if n == 0 {
        return Ok(None);
    }
    let labels = ground.labels();
    // 1-based positions of the removed set.
    let (kind, ell, positions): (_, u128, Vec<usize>) = if n % 2 == 1 {
        let ell = binomial_prefix_sum(n as u32, (n as i64 - 1) / 2)? + 1;
        (FixpointKind::ExceptionalOdd, ell, ((n + 3) / 2..=n).collect())
    } else {
        let ell = binomial_prefix_sum(n as u32, n as i64 / 2 - 1)?
            + crate::binom::binomial(n as u32 - 1, n as u32 / 2 - 1)?
            + 1;
        let mut pos = vec![1];
        pos.extend(n / 2 + 2..=n);
        (FixpointKind::ExceptionalEven, ell, pos)
    };
    let removed_labels: Vec<u32> = positions.iter().map(|&j| labels[j - 1]).collect();
    let removed = SubsetMask::from_labels(ground, &removed_labels)?;
    let ell = ell as u64;
    let segment = initial_segment(ell, ground)?;
    let family = segment.difference(&Family::from_bits(ground, vec![removed.bits()])?)?;
    Ok(Some(ExceptionalForm {
        kind,
        ell,
        removed,
        family,
    }))
}

/// Classifies a family against the fully-compressed forms.
///
/// A family that is compressed in every coordinate but matches neither an
/// initial segment nor the exceptional form is reported as
/// [`Error::Integrity`].
pub fn classify_fixpoint(a: &Family) -> Result<FixpointClass> {
    for &label in a.ground().labels() {
        if !is_compressed(a, label)? {
            return Ok(FixpointClass {
                kind: FixpointKind::NotFixpoint,
                witness: None,
            });
        }
    }
    if a.is_initial_segment() {
        return Ok(FixpointClass {
            kind: FixpointKind::InitialSegment,
            witness: None,
        });
    }
    let n = a.ground().size();
    if n > 0 && a.len() as u64 == 1u64 << (n - 1) {
        if let Some(form) = exceptional_form(a.ground())? {
            if form.family == *a {
                return Ok(FixpointClass {
                    kind: form.kind,
                    witness: Some(form.removed),
                });
            }
        }
    }
    Err(Error::Integrity(format!(
        "family {a} is compressed in every coordinate but is neither an initial segment nor the exceptional form"
    )))
}

/// Counts of fixpoint classes reached from every family of `2^[n]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FixpointSweep {
    pub n: usize,
    pub families: u64,
    pub initial_segment: u64,
    pub exceptional_odd: u64,
    pub exceptional_even: u64,
    pub max_steps: usize,
    /// Families whose fixpoint failed classification, in notation.
    pub failures: Vec<String>,
}

/// Runs `compress_fully` then `classify_fixpoint` on every family of `2^[n]`.
pub fn sweep_fixpoints(n: usize) -> Result<FixpointSweep> {
    use rayon::prelude::*;
    Mode::Exhaustive.check_feasible(n)?;
    let ground = GroundSet::standard(n)?;
    let cube = Cube::new(n)?;
    let total = 1u64 << (1u64 << n);
    let merged = (0..total)
        .into_par_iter()
        .fold(FixpointSweep::default, |mut acc, index| {
            let members: Vec<u64> = (0..1u32 << n)
                .filter(|r| index >> r & 1 == 1)
                .map(|r| cube.mask(r))
                .collect();
            let family = Family::from_sorted_unchecked(&ground, members);
            let (fixed, steps) = compress_fully(&family);
            acc.families += 1;
            acc.max_steps = acc.max_steps.max(steps);
            match classify_fixpoint(&fixed).map(|c| c.kind) {
                Ok(FixpointKind::InitialSegment) => acc.initial_segment += 1,
                Ok(FixpointKind::ExceptionalOdd) => acc.exceptional_odd += 1,
                Ok(FixpointKind::ExceptionalEven) => acc.exceptional_even += 1,
                Ok(FixpointKind::NotFixpoint) | Err(_) => acc.failures.push(family.to_string()),
            }
            acc
        })
        .reduce(FixpointSweep::default, |mut a, b| {
            a.families += b.families;
            a.initial_segment += b.initial_segment;
            a.exceptional_odd += b.exceptional_odd;
            a.exceptional_even += b.exceptional_even;
            a.max_steps = a.max_steps.max(b.max_steps);
            a.failures.extend(b.failures);
            a
        });
    let mut sweep = merged;
    sweep.n = n;
    sweep.failures.sort();
    Ok(sweep)
}

/// Checks `|C^p[A]| <= |C^p[S_i(A)]|` for every label `i` and every `1 <= p <= n-1`.
pub fn verify_compression_inequality(n: usize, mode: Mode) -> Result<Tally> {
    mode.check_feasible(n)?;
    let ground = GroundSet::standard(n)?;
    let cube = Cube::new(n)?;
    let tables: Vec<BallTable> = (1..n as u32).map(|p| BallTable::new(&cube, p)).collect();
    sweep::run(
        &cube,
        mode,
        |rng| sweep::random_family(rng, n),
        |ranks| {
            let members = ranks.iter().map(|&r| cube.mask(r)).collect();
            let family = Family::from_sorted_unchecked(&ground, members);
            let mut min_slack: Option<i64> = None;
            for &label in ground.labels() {
                let compressed = compress(&family, label).expect("label in ground");
                let compressed_ranks: Vec<u32> =
                    compressed.members().iter().map(|&b| cube.rank(b)).collect();
                for table in &tables {
                    let before = table.closed_count(ranks.iter().copied()) as i64;
                    let after = table.closed_count(compressed_ranks.iter().copied()) as i64;
                    if before > after {
                        return Verdict::Fail {
                            lhs: before,
                            rhs: after,
                            context: format!("i={label}, p={}", table.p()),
                        };
                    }
                    let slack = after - before;
                    min_slack = Some(min_slack.map_or(slack, |m| m.min(slack)));
                }
            }
            Verdict::Pass {
                slack: min_slack.unwrap_or(0),
            }
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cmp::Ordering;

    fn g(n: usize) -> GroundSet {
        GroundSet::standard(n).unwrap()
    }

    fn fam(text: &str, n: usize) -> Family {
        Family::parse(text, &g(n)).unwrap()
    }

    #[test]
    fn section_examples() {
        let a = fam("{{},{1},{1,2}}", 2);
        let pair = sections(&a, 1).unwrap();
        assert_eq!(pair.minus.to_string(), "{{}}");
        assert_eq!(pair.plus.to_string(), "{{},{2}}");
        assert_eq!(pair.minus.ground().labels(), &[2]);
        assert_eq!(pair.reassemble(a.ground()).unwrap(), a);

        let empty = Family::empty(&g(3));
        let pair = sections(&empty, 2).unwrap();
        assert!(pair.minus.is_empty() && pair.plus.is_empty());

        let full = initial_segment(16, &g(4)).unwrap();
        for i in 1..=4 {
            let pair = sections(&full, i).unwrap();
            let sub_full = initial_segment(8, &g(4).without(i).unwrap()).unwrap();
            assert_eq!(pair.minus, sub_full);
            assert_eq!(pair.plus, sub_full);
        }
    }

    #[test]
    fn sections_reject_foreign_label() {
        assert_eq!(
            sections(&fam("{{}}", 2), 3).unwrap_err(),
            Error::LabelNotInGround(3)
        );
    }

    #[test]
    fn compress_examples() {
        let a = fam("{{2},{1,2}}", 2);
        assert_eq!(compress(&a, 1).unwrap().to_string(), "{{},{1}}");
        assert!(!is_compressed(&a, 1).unwrap());

        // A_{3-} is empty and A_{3+} = {∅}, so S_3(A) = I_1 + {3} = A.
        let b = fam("{{3}}", 3);
        assert_eq!(compress(&b, 3).unwrap(), b);

        for m in 0..=16 {
            let seg = initial_segment(m, &g(4)).unwrap();
            for i in 1..=4 {
                assert_eq!(compress(&seg, i).unwrap(), seg);
            }
        }
        assert!(is_compressed(&fam("{{}}", 3), 2).unwrap());
    }

    #[test]
    fn compress_fully_examples() {
        let seg = initial_segment(5, &g(4)).unwrap();
        assert_eq!(compress_fully(&seg), (seg.clone(), 0));

        let (fixed, steps) = compress_fully(&fam("{{2},{1,2}}", 2));
        assert_eq!(fixed.to_string(), "{{},{1}}");
        assert_eq!(steps, 1);
    }

    #[test]
    fn classify_examples() {
        let c = classify_fixpoint(&initial_segment(5, &g(4)).unwrap()).unwrap();
        assert_eq!(c.kind, FixpointKind::InitialSegment);

        let odd = fam("{{},{1},{2},{1,2}}", 3);
        let c = classify_fixpoint(&odd).unwrap();
        assert_eq!(c.kind, FixpointKind::ExceptionalOdd);
        assert_eq!(c.witness.unwrap().to_string(), "{3}");
        let form = exceptional_form(&g(3)).unwrap().unwrap();
        assert_eq!(form.ell, 5);
        assert_eq!(form.family, odd);

        let c = classify_fixpoint(&fam("{{2},{1,2}}", 2)).unwrap();
        assert_eq!(c.kind, FixpointKind::NotFixpoint);
    }

    #[test]
    fn even_exceptional_form_n4() {
        let form = exceptional_form(&g(4)).unwrap().unwrap();
        assert_eq!(form.kind, FixpointKind::ExceptionalEven);
        // 1 + 4 + C(3,1) + 1
        assert_eq!(form.ell, 9);
        assert_eq!(form.removed.to_string(), "{1,4}");
        assert_eq!(form.family.len(), 8);
        for i in 1..=4 {
            assert!(is_compressed(&form.family, i).unwrap());
        }
        assert!(!form.family.is_initial_segment());
    }

    #[test]
    fn exceptional_form_on_relabeled_ground() {
        let ground = GroundSet::new(vec![2, 5, 9]).unwrap();
        let form = exceptional_form(&ground).unwrap().unwrap();
        assert_eq!(form.removed.to_string(), "{9}");
        assert_eq!(
            classify_fixpoint(&form.family).unwrap().kind,
            FixpointKind::ExceptionalOdd
        );
    }

    #[test]
    fn compression_moves_down_the_family_order() {
        let ground = g(3);
        for index in 0u32..256 {
            let members = (0..8u64).filter(|b| index >> b & 1 == 1).collect();
            let a = Family::from_bits(&ground, members).unwrap();
            for i in 1..=3 {
                let s = compress(&a, i).unwrap();
                assert_eq!(s.len(), a.len());
                assert_ne!(family_cmp(&s, &a).unwrap(), Ordering::Greater);
                assert_eq!(compress(&s, i).unwrap(), s);
            }
        }
    }
}
