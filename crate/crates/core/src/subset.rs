//! Ground sets, subsets as bitmasks, and the simplicial order.
//!
//! A subset of a ground set is stored as one machine word: bit `j` is set iff
//! the `j`-th smallest ground label belongs to the subset. Ground sets may be
//! relabeled (for example `[n] \ {i}`), so "the smallest element" of a
//! symmetric difference always refers to the smallest original label, which is
//! the lowest set bit of the XOR.
//!
//! Two subsets compare as `x < y` when `|x| < |y|`, or when the sizes agree and
//! the smallest label of `x △ y` lies in `x`. Within a level this is ascending
//! lexicographic order on the sorted element lists.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::binom::small_binomial;
use crate::error::{Error, Result};
use crate::notation;

/// Capacity of a single-word ground set.
pub const MAX_GROUND: usize = 62;

/// An ordered list of distinct positive labels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    labels: Arc<[u32]>,
}

impl GroundSet {
    pub fn new(labels: Vec<u32>) -> Result<Self> {
        if labels.len() > MAX_GROUND {
            return Err(Error::GroundTooLarge(labels.len()));
        }
        if labels.first() == Some(&0) || labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGroundSet(format!("{labels:?}")));
        }
        Ok(Self {
            labels: labels.into(),
        })
    }

    /// The standard ground set `[n] = {1, ..., n}`.
    pub fn standard(n: usize) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::GroundTooLarge(n));
        }
        Self::new((1..=n as u32).collect())
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Bit position of `label`, if present.
    pub fn position(&self, label: u32) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    pub fn contains(&self, label: u32) -> bool {
        self.position(label).is_some()
    }

    /// The ground set with `label` removed, keeping the original labels.
    pub fn without(&self, label: u32) -> Result<Self> {
        let pos = self.position(label).ok_or(Error::LabelNotInGround(label))?;
        let mut labels = self.labels.to_vec();
        labels.remove(pos);
        Ok(Self {
            labels: labels.into(),
        })
    }

    /// Mask with every ground bit set.
    pub fn full_bits(&self) -> u64 {
        low_bits(self.size())
    }

    /// `2^size`, the number of subsets.
    pub fn power_set_len(&self) -> u64 {
        1u64 << self.size()
    }

    fn check_bits(&self, bits: u64) -> Result<()> {
        if bits & !self.full_bits() != 0 {
            return Err(Error::SubsetOutOfGround {
                bits,
                size: self.size(),
            });
        }
        Ok(())
    }

    fn same_as(&self, other: &GroundSet) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroundSet{:?}", &*self.labels)
    }
}

#[inline]
pub(crate) fn low_bits(size: usize) -> u64 {
    if size >= 64 {
        u64::MAX
    } else {
        (1u64 << size) - 1
    }
}

/// Drops bit `pos`, shifting the higher bits down by one.
#[inline]
pub fn remove_bit(bits: u64, pos: usize) -> u64 {
    let low = bits & low_bits(pos);
    let high = (bits >> 1) & !low_bits(pos);
    low | high
}

/// Opens a gap at bit `pos` and fills it with `value`.
#[inline]
pub fn insert_bit(bits: u64, pos: usize, value: bool) -> u64 {
    let low = bits & low_bits(pos);
    let high = (bits & !low_bits(pos)) << 1;
    low | high | ((value as u64) << pos)
}

/// Simplicial comparison of two positional masks over the same ground set.
#[inline]
pub fn simplicial_cmp_bits(x: u64, y: u64) -> Ordering {
    match x.count_ones().cmp(&y.count_ones()) {
        Ordering::Equal if x == y => Ordering::Equal,
        Ordering::Equal => {
            let lowest = (x ^ y) & (x ^ y).wrapping_neg();
            if x & lowest != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
        other => other,
    }
}

/// Number of subsets of a `size`-element ground set with fewer than `k` elements.
fn levels_below(size: usize, k: u32) -> u64 {
    (0..k).map(|i| small_binomial(size as u32, i)).sum()
}

/// Simplicial rank of a positional mask on a ground set of `size` elements.
pub fn rank_bits(size: usize, bits: u64) -> u64 {
    let k = bits.count_ones();
    let mut rank = levels_below(size, k);
    let mut next = 0usize;
    let mut i = 0u32;
    let mut rest = bits;
    while rest != 0 {
        let c = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        i += 1;
        for v in next..c {
            rank += small_binomial((size - 1 - v) as u32, k - i);
        }
        next = c + 1;
    }
    rank
}

/// Inverse of [`rank_bits`]; `rank` must be below `2^size`.
pub fn unrank_bits(size: usize, mut rank: u64) -> Result<u64> {
    if size > MAX_GROUND || rank >= 1u64 << size {
        return Err(Error::RankOutOfRange { rank, size });
    }
    let mut k = 0u32;
    loop {
        let level = small_binomial(size as u32, k);
        if rank < level {
            break;
        }
        rank -= level;
        k += 1;
    }
    let mut bits = 0u64;
    let mut v = 0usize;
    for i in 1..=k {
        loop {
            let count = small_binomial((size - 1 - v) as u32, k - i);
            if rank < count {
                bits |= 1 << v;
                v += 1;
                break;
            }
            rank -= count;
            v += 1;
        }
    }
    Ok(bits)
}

/// Iterates subsets of a `size`-element ground set in simplicial order.
#[derive(Clone, Debug)]
pub struct SimplicialIter {
    size: usize,
    level: usize,
    positions: Vec<usize>,
    done: bool,
}

impl SimplicialIter {
    pub fn new(size: usize) -> Self {
        Self {
            size,
            level: 0,
            positions: Vec::new(),
            done: false,
        }
    }

    /// Restrict to a single level.
    pub fn level(size: usize, k: usize) -> std::iter::Take<Self> {
        let mut it = Self::new(size);
        if k > size {
            it.done = true;
        } else {
            it.level = k;
            it.positions = (0..k).collect();
        }
        let count = if k > size {
            0
        } else {
            small_binomial(size as u32, k as u32) as usize
        };
        it.take(count)
    }

    fn advance(&mut self) {
        let k = self.level;
        let n = self.size;
        // Rightmost position that can still move right.
        let movable = (0..k).rev().find(|&i| self.positions[i] < n - k + i);
        match movable {
            Some(i) => {
                self.positions[i] += 1;
                for j in i + 1..k {
                    self.positions[j] = self.positions[j - 1] + 1;
                }
            }
            None if k < n => {
                self.level += 1;
                self.positions = (0..self.level).collect();
            }
            None => self.done = true,
        }
    }
}

impl Iterator for SimplicialIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.done {
            return None;
        }
        let bits = self.positions.iter().fold(0u64, |acc, &p| acc | (1 << p));
        self.advance();
        Some(bits)
    }
}

/// The full power set of a `size`-element ground set in simplicial order.
pub fn simplicial_order(size: usize) -> Vec<u64> {
    SimplicialIter::new(size).collect()
}

/// 0-indexed position in the simplicial order of a power set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplicialRank(pub u64);

/// A subset of a ground set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubsetMask {
    bits: u64,
    ground: GroundSet,
}

impl SubsetMask {
    pub fn from_bits(ground: &GroundSet, bits: u64) -> Result<Self> {
        ground.check_bits(bits)?;
        Ok(Self {
            bits,
            ground: ground.clone(),
        })
    }

    pub fn from_labels(ground: &GroundSet, labels: &[u32]) -> Result<Self> {
        let mut bits = 0u64;
        for &label in labels {
            let pos = ground.position(label).ok_or(Error::LabelNotInGround(label))?;
            bits |= 1 << pos;
        }
        Ok(Self {
            bits,
            ground: ground.clone(),
        })
    }

    /// Parses `"{1,3,4}"` against `ground`.
    pub fn parse(text: &str, ground: &GroundSet) -> Result<Self> {
        Self::from_labels(ground, &notation::parse_label_set(text)?)
    }

    pub fn empty(ground: &GroundSet) -> Self {
        Self {
            bits: 0,
            ground: ground.clone(),
        }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// `|x|`.
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, label: u32) -> bool {
        self.ground
            .position(label)
            .is_some_and(|pos| self.bits >> pos & 1 == 1)
    }

    pub fn labels(&self) -> Vec<u32> {
        labels_of(&self.ground, self.bits)
    }

    pub fn symmetric_difference(&self, other: &SubsetMask) -> Result<SubsetMask> {
        if !self.ground.same_as(&other.ground) {
            return Err(Error::GroundMismatch);
        }
        Ok(SubsetMask {
            bits: self.bits ^ other.bits,
            ground: self.ground.clone(),
        })
    }

    pub fn rank(&self) -> SimplicialRank {
        rank(self)
    }
}

pub(crate) fn labels_of(ground: &GroundSet, bits: u64) -> Vec<u32> {
    let mut out = Vec::with_capacity(bits.count_ones() as usize);
    let mut rest = bits;
    while rest != 0 {
        out.push(ground.labels()[rest.trailing_zeros() as usize]);
        rest &= rest - 1;
    }
    out
}

pub(crate) fn write_bits(f: &mut impl fmt::Write, ground: &GroundSet, bits: u64) -> fmt::Result {
    f.write_char('{')?;
    for (i, label) in labels_of(ground, bits).into_iter().enumerate() {
        if i > 0 {
            f.write_char(',')?;
        }
        write!(f, "{label}")?;
    }
    f.write_char('}')
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bits(f, &self.ground, self.bits)
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Simplicial comparison; errors when the ground sets differ.
pub fn simplicial_cmp(x: &SubsetMask, y: &SubsetMask) -> Result<Ordering> {
    if !x.ground.same_as(&y.ground) {
        return Err(Error::GroundMismatch);
    }
    Ok(simplicial_cmp_bits(x.bits, y.bits))
}

pub fn rank(x: &SubsetMask) -> SimplicialRank {
    SimplicialRank(rank_bits(x.ground.size(), x.bits))
}

pub fn unrank(r: SimplicialRank, ground: &GroundSet) -> Result<SubsetMask> {
    let bits = unrank_bits(ground.size(), r.0)?;
    Ok(SubsetMask {
        bits,
        ground: ground.clone(),
    })
}

/// A set of distinct subsets on one ground set, kept in simplicial order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Family {
    ground: GroundSet,
    members: Vec<u64>,
}

impl Family {
    pub fn empty(ground: &GroundSet) -> Self {
        Self {
            ground: ground.clone(),
            members: Vec::new(),
        }
    }

    /// Builds a family from positional masks in any order; duplicates are rejected.
    pub fn from_bits(ground: &GroundSet, mut members: Vec<u64>) -> Result<Self> {
        for &bits in &members {
            ground.check_bits(bits)?;
        }
        members.sort_unstable_by(|a, b| simplicial_cmp_bits(*a, *b));
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            let mut text = String::new();
            let _ = write_bits(&mut text, ground, w[0]);
            return Err(Error::DuplicateMember(text));
        }
        Ok(Self {
            ground: ground.clone(),
            members,
        })
    }

    pub fn from_subsets<'a>(
        ground: &GroundSet,
        subsets: impl IntoIterator<Item = &'a SubsetMask>,
    ) -> Result<Self> {
        let mut bits = Vec::new();
        for s in subsets {
            if !s.ground.same_as(ground) {
                return Err(Error::GroundMismatch);
            }
            bits.push(s.bits);
        }
        Self::from_bits(ground, bits)
    }

    /// Members given as label lists.
    pub fn from_label_sets(ground: &GroundSet, sets: &[Vec<u32>]) -> Result<Self> {
        let bits = sets
            .iter()
            .map(|labels| SubsetMask::from_labels(ground, labels).map(|s| s.bits))
            .collect::<Result<Vec<_>>>()?;
        Self::from_bits(ground, bits)
    }

    /// Parses `"{{},{1},{1,2}}"` against `ground`.
    pub fn parse(text: &str, ground: &GroundSet) -> Result<Self> {
        Self::from_label_sets(ground, &notation::parse_family(text)?)
    }

    /// Caller guarantees `members` is strictly increasing in simplicial order.
    pub(crate) fn from_sorted_unchecked(ground: &GroundSet, members: Vec<u64>) -> Self {
        debug_assert!(members
            .windows(2)
            .all(|w| simplicial_cmp_bits(w[0], w[1]) == Ordering::Less));
        Self {
            ground: ground.clone(),
            members,
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Positional masks in simplicial order.
    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.members.iter().map(|&bits| SubsetMask {
            bits,
            ground: self.ground.clone(),
        })
    }

    pub fn contains_bits(&self, bits: u64) -> bool {
        self.members
            .binary_search_by(|m| simplicial_cmp_bits(*m, bits))
            .is_ok()
    }

    pub fn contains(&self, x: &SubsetMask) -> bool {
        x.ground.same_as(&self.ground) && self.contains_bits(x.bits)
    }

    /// True iff the family is `I_{|F|}`.
    pub fn is_initial_segment(&self) -> bool {
        let size = self.ground.size();
        self.members
            .iter()
            .enumerate()
            .all(|(i, &bits)| rank_bits(size, bits) == i as u64)
    }

    fn check_ground(&self, other: &Family) -> Result<()> {
        if self.ground.same_as(&other.ground) {
            Ok(())
        } else {
            Err(Error::GroundMismatch)
        }
    }

    fn merge(&self, other: &Family, keep: impl Fn(bool, bool) -> bool) -> Result<Family> {
        self.check_ground(other)?;
        let (a, b) = (&self.members, &other.members);
        let mut out = Vec::with_capacity(a.len().max(b.len()));
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => simplicial_cmp_bits(*x, *y),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    if keep(true, false) {
                        out.push(a[i]);
                    }
                    i += 1;
                }
                Ordering::Greater => {
                    if keep(false, true) {
                        out.push(b[j]);
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    if keep(true, true) {
                        out.push(a[i]);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(Family::from_sorted_unchecked(&self.ground, out))
    }

    pub fn union(&self, other: &Family) -> Result<Family> {
        self.merge(other, |_, _| true)
    }

    pub fn intersection(&self, other: &Family) -> Result<Family> {
        self.merge(other, |x, y| x && y)
    }

    pub fn difference(&self, other: &Family) -> Result<Family> {
        self.merge(other, |x, y| x && !y)
    }

    pub fn symmetric_difference(&self, other: &Family) -> Result<Family> {
        self.merge(other, |x, y| x != y)
    }

    pub fn is_subfamily_of(&self, other: &Family) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }

    /// Re-embeds a family over `parent \ {label}` into `parent`, adding `label`
    /// to every member when `with_label` is set (the `A + {i}` operation).
    pub fn lift(&self, parent: &GroundSet, label: u32, with_label: bool) -> Result<Family> {
        let pos = parent
            .position(label)
            .ok_or(Error::LabelNotInGround(label))?;
        if !parent.without(label)?.same_as(&self.ground) {
            return Err(Error::GroundMismatch);
        }
        // Inserting a common bit value preserves the simplicial order.
        let members = self
            .members
            .iter()
            .map(|&bits| insert_bit(bits, pos, with_label))
            .collect();
        Ok(Family::from_sorted_unchecked(parent, members))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, &bits) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write_bits(f, &self.ground, bits)?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `I_m`: the first `m` subsets of `ground` in simplicial order.
pub fn initial_segment(m: u64, ground: &GroundSet) -> Result<Family> {
    if m > ground.power_set_len() {
        return Err(Error::SegmentOutOfRange {
            m,
            size: ground.size(),
        });
    }
    let members = SimplicialIter::new(ground.size()).take(m as usize).collect();
    Ok(Family::from_sorted_unchecked(ground, members))
}

/// `V_i`: all subsets of size exactly `i`. Empty when `i` exceeds the ground size.
pub fn level_set(i: usize, ground: &GroundSet) -> Family {
    let members = SimplicialIter::level(ground.size(), i).collect();
    Family::from_sorted_unchecked(ground, members)
}

/// Order on families: smaller families first, ties broken by which family owns
/// the simplicially first member of `A △ B`.
pub fn family_cmp(a: &Family, b: &Family) -> Result<Ordering> {
    a.check_ground(b)?;
    match a.len().cmp(&b.len()) {
        Ordering::Equal => {}
        other => return Ok(other),
    }
    // With equal sizes the first differing position holds the minimum of A △ B.
    for (x, y) in a.members.iter().zip(&b.members) {
        match simplicial_cmp_bits(*x, *y) {
            Ordering::Equal => continue,
            other => return Ok(other),
        }
    }
    Ok(Ordering::Equal)
}
