//! Dense, rank-indexed machinery for sweeps over `2^[n]` at desk scale.
//!
//! Families are bitsets over simplicial ranks, and the Hamming ball of radius
//! `p` around each vertex is precomputed so that `C^p[A]` is the AND of
//! `|A|` rows.

use crate::error::{Error, Result};
use crate::subset::{low_bits, simplicial_order};

/// Largest dimension the dense tables accept.
pub const MAX_DENSE: usize = 20;

/// Simplicial rank tables for `2^[n]`.
#[derive(Clone, Debug)]
pub struct Cube {
    n: usize,
    order: Vec<u64>,
    rank: Vec<u32>,
}

impl Cube {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_DENSE {
            return Err(Error::Infeasible(format!(
                "dense tables need n <= {MAX_DENSE}, got {n}"
            )));
        }
        let order = simplicial_order(n);
        let mut rank = vec![0u32; order.len()];
        for (r, &bits) in order.iter().enumerate() {
            rank[bits as usize] = r as u32;
        }
        Ok(Self { n, order, rank })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `2^n`.
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn mask(&self, rank: u32) -> u64 {
        self.order[rank as usize]
    }

    #[inline]
    pub fn rank(&self, mask: u64) -> u32 {
        self.rank[mask as usize]
    }

    pub fn order(&self) -> &[u64] {
        &self.order
    }
}

/// A bitset over `0..len`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RankSet {
    words: Vec<u64>,
    len: usize,
}

impl RankSet {
    pub fn empty(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn full(len: usize) -> Self {
        Self::prefix(len, len)
    }

    /// `{0, ..., m-1}`.
    pub fn prefix(len: usize, m: usize) -> Self {
        let mut s = Self::empty(len);
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * 64;
            if m >= lo + 64 {
                *w = u64::MAX;
            } else if m > lo {
                *w = low_bits(m - lo);
            }
        }
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn insert(&mut self, r: u32) {
        self.words[r as usize / 64] |= 1 << (r % 64);
    }

    #[inline]
    pub fn remove(&mut self, r: u32) {
        self.words[r as usize / 64] &= !(1 << (r % 64));
    }

    #[inline]
    pub fn contains(&self, r: u32) -> bool {
        self.words[r as usize / 64] >> (r % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn and_assign(&mut self, other: &[u64]) {
        for (w, o) in self.words.iter_mut().zip(other) {
            *w &= o;
        }
    }

    #[inline]
    pub fn and_not_assign(&mut self, other: &[u64]) {
        for (w, o) in self.words.iter_mut().zip(other) {
            *w &= !o;
        }
    }

    pub fn is_subset_of(&self, other: &RankSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// True iff the set is `{0, ..., c-1}` for its own count `c`.
    pub fn is_prefix(&self) -> bool {
        *self == Self::prefix(self.len, self.count())
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros();
                rest &= rest - 1;
                Some(i as u32 * 64 + b)
            })
        })
    }

    /// The `k`-th smallest element (0-indexed).
    pub fn nth(&self, mut k: usize) -> Option<u32> {
        for (i, &w) in self.words.iter().enumerate() {
            let c = w.count_ones() as usize;
            if k < c {
                let mut rest = w;
                for _ in 0..k {
                    rest &= rest - 1;
                }
                return Some(i as u32 * 64 + rest.trailing_zeros());
            }
            k -= c;
        }
        None
    }
}

/// Rank-indexed radius-`p` balls around every vertex of `Q_n`.
#[derive(Clone, Debug)]
pub struct BallTable {
    len: usize,
    p: u32,
    stride: usize,
    data: Vec<u64>,
}

impl BallTable {
    pub fn new(cube: &Cube, p: u32) -> Self {
        let len = cube.len();
        let stride = len.div_ceil(64);
        let mut data = vec![0u64; len * stride];
        for (c, &x) in cube.order().iter().enumerate() {
            let row = &mut data[c * stride..(c + 1) * stride];
            for (r, &y) in cube.order().iter().enumerate() {
                if (x ^ y).count_ones() <= p {
                    row[r / 64] |= 1 << (r % 64);
                }
            }
        }
        Self {
            len,
            p,
            stride,
            data,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn ball(&self, rank: u32) -> &[u64] {
        let start = rank as usize * self.stride;
        &self.data[start..start + self.stride]
    }

    /// `C^p[A]` for a family given by ranks.
    pub fn closed(&self, ranks: impl IntoIterator<Item = u32>) -> RankSet {
        let mut acc = RankSet::full(self.len);
        for r in ranks {
            acc.and_assign(self.ball(r));
        }
        acc
    }

    /// `|C^p[A]|` with an early exit once the intersection is empty.
    pub fn closed_count(&self, ranks: impl IntoIterator<Item = u32>) -> usize {
        let mut acc = RankSet::full(self.len);
        for (i, r) in ranks.into_iter().enumerate() {
            acc.and_assign(self.ball(r));
            if i % 8 == 7 && acc.is_empty() {
                return 0;
            }
        }
        acc.count()
    }

    /// `|C^p[I_m]|` for every `m` in `0..=2^n`, computed incrementally.
    pub fn initial_segment_closed_counts(&self) -> Vec<usize> {
        let mut acc = RankSet::full(self.len);
        let mut out = Vec::with_capacity(self.len + 1);
        out.push(acc.count());
        for r in 0..self.len as u32 {
            acc.and_assign(self.ball(r));
            out.push(acc.count());
        }
        out
    }

    /// `|C^p(I_m)| = |C^p[I_m] \ I_m|` for every `m` in `0..=2^n`.
    pub fn initial_segment_open_counts(&self) -> Vec<usize> {
        let mut acc = RankSet::full(self.len);
        let mut out = Vec::with_capacity(self.len + 1);
        out.push(acc.count());
        for m in 1..=self.len {
            acc.and_assign(self.ball(m as u32 - 1));
            let mut open = acc.clone();
            open.and_not_assign(RankSet::prefix(self.len, m).words());
            out.push(open.count());
        }
        out
    }
}
