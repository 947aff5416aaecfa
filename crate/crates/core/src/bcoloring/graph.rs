//! Implicit powers of hypercubes and Hamming graphs.
//!
//! Hypercube vertices are indexed by simplicial rank; Hamming vertices by the
//! lexicographic index of their coordinate tuple, first coordinate most
//! significant. The subset `x` corresponds to the binary tuple whose `i`-th
//! coordinate is `1` iff `i + 1 ∈ x`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::subset::{rank_bits, unrank_bits, SimplicialIter, MAX_GROUND};

/// A tuple in `Z_q^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HammingVertex {
    coords: Vec<u32>,
    q: u32,
}

impl HammingVertex {
    pub fn new(coords: Vec<u32>, q: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidGraph(format!("alphabet size q={q} must be at least 2")));
        }
        if let Some(&c) = coords.iter().find(|&&c| c >= q) {
            return Err(Error::InvalidGraph(format!("coordinate {c} is not a residue mod {q}")));
        }
        Ok(Self { coords, q })
    }

    /// Decodes a lexicographic index.
    pub fn from_index(index: u64, n: usize, q: u32) -> Self {
        let mut coords = vec![0u32; n];
        let mut rest = index;
        for c in coords.iter_mut().rev() {
            *c = (rest % q as u64) as u32;
            rest /= q as u64;
        }
        Self { coords, q }
    }

    pub fn index(&self) -> u64 {
        self.coords
            .iter()
            .fold(0u64, |acc, &c| acc * self.q as u64 + c as u64)
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    /// Number of coordinates where the tuples differ.
    pub fn distance(&self, other: &HammingVertex) -> u32 {
        self.coords
            .iter()
            .zip(&other.coords)
            .filter(|(a, b)| a != b)
            .count() as u32
    }
}

impl fmt::Display for HammingVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphKind {
    Hypercube { n: u32 },
    Hamming { n: u32, q: u32 },
}

/// `G^p` for `G = Q_n` or `G = H_{n,q}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PowerGraph {
    kind: GraphKind,
    p: u32,
    vertex_count: u64,
}

impl PowerGraph {
    pub fn hypercube(n: u32, p: u32) -> Result<Self> {
        if n == 0 || n as usize > MAX_GROUND {
            return Err(Error::InvalidGraph(format!(
                "hypercube dimension must be in [1, {MAX_GROUND}], got {n}"
            )));
        }
        Ok(Self {
            kind: GraphKind::Hypercube { n },
            p,
            vertex_count: 1u64 << n,
        })
    }

    pub fn hamming(n: u32, q: u32, p: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("Hamming dimension must be at least 1".into()));
        }
        if q < 2 {
            return Err(Error::InvalidGraph(format!("alphabet size q={q} must be at least 2")));
        }
        let vertex_count = (q as u64)
            .checked_pow(n)
            .filter(|&v| v <= 1u64 << MAX_GROUND)
            .ok_or_else(|| Error::Overflow(format!("{q}^{n} vertices")))?;
        Ok(Self {
            kind: GraphKind::Hamming { n, q },
            p,
            vertex_count,
        })
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        match self.kind {
            GraphKind::Hypercube { n } | GraphKind::Hamming { n, .. } => n,
        }
    }

    /// Alphabet size; `2` for hypercubes.
    pub fn q(&self) -> u32 {
        match self.kind {
            GraphKind::Hypercube { .. } => 2,
            GraphKind::Hamming { q, .. } => q,
        }
    }

    pub fn vertex_count(&self) -> u64 {
        self.vertex_count
    }

    fn check(&self, v: u64) -> Result<()> {
        if v >= self.vertex_count {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                count: self.vertex_count,
            });
        }
        Ok(())
    }

    /// Positional mask of a hypercube vertex; `None` for Hamming graphs.
    pub fn subset_bits(&self, v: u64) -> Result<Option<u64>> {
        self.check(v)?;
        match self.kind {
            GraphKind::Hypercube { n } => Ok(Some(unrank_bits(n as usize, v)?)),
            GraphKind::Hamming { .. } => Ok(None),
        }
    }

    /// The vertex as a tuple in `Z_q^n` (binary for hypercubes).
    pub fn tuple(&self, v: u64) -> Result<HammingVertex> {
        self.check(v)?;
        let n = self.n() as usize;
        Ok(match self.kind {
            GraphKind::Hypercube { .. } => {
                let bits = unrank_bits(n, v)?;
                HammingVertex {
                    coords: (0..n).map(|i| (bits >> i & 1) as u32).collect(),
                    q: 2,
                }
            }
            GraphKind::Hamming { q, .. } => HammingVertex::from_index(v, n, q),
        })
    }

    /// Base-graph distance.
    pub fn distance(&self, u: u64, v: u64) -> Result<u32> {
        self.check(u)?;
        self.check(v)?;
        Ok(match self.kind {
            GraphKind::Hypercube { n } => {
                let n = n as usize;
                (unrank_bits(n, u)? ^ unrank_bits(n, v)?).count_ones()
            }
            GraphKind::Hamming { n, q } => HammingVertex::from_index(u, n as usize, q)
                .distance(&HammingVertex::from_index(v, n as usize, q)),
        })
    }

    /// True iff the base-graph distance lies in `[1, p]`.
    pub fn adjacent(&self, u: u64, v: u64) -> Result<bool> {
        let d = self.distance(u, v)?;
        Ok(d >= 1 && d <= self.p)
    }

    /// Calls `f` on every neighbor of `v`, enumerating the radius-`p` ball directly.
    pub fn for_each_neighbor(&self, v: u64, mut f: impl FnMut(u64)) -> Result<()> {
        self.check(v)?;
        let n = self.n() as usize;
        let radius = (self.p as usize).min(n);
        match self.kind {
            GraphKind::Hypercube { .. } => {
                let x = unrank_bits(n, v)?;
                for flip in SimplicialIter::new(n).skip(1) {
                    if flip.count_ones() as usize > radius {
                        break;
                    }
                    f(rank_bits(n, x ^ flip));
                }
            }
            GraphKind::Hamming { q, .. } => {
                let x = HammingVertex::from_index(v, n, q);
                let weights: Vec<u64> = (0..n).map(|i| (q as u64).pow((n - 1 - i) as u32)).collect();
                let mut offsets = Vec::with_capacity(radius);
                for support in SimplicialIter::new(n).skip(1) {
                    if support.count_ones() as usize > radius {
                        break;
                    }
                    let positions: Vec<usize> = (0..n).filter(|i| support >> i & 1 == 1).collect();
                    // odometer over nonzero shifts at each chosen coordinate
                    offsets.clear();
                    offsets.resize(positions.len(), 1u32);
                    loop {
                        let mut index = v;
                        for (&pos, &shift) in positions.iter().zip(&offsets) {
                            let old = x.coords[pos];
                            let new = (old + shift) % q;
                            index = index - old as u64 * weights[pos] + new as u64 * weights[pos];
                        }
                        f(index);
                        let mut j = 0;
                        while j < offsets.len() && offsets[j] == q - 1 {
                            offsets[j] = 1;
                            j += 1;
                        }
                        if j == offsets.len() {
                            break;
                        }
                        offsets[j] += 1;
                    }
                }
            }
        }
        Ok(())
    }

    pub fn neighbors(&self, v: u64) -> Result<Vec<u64>> {
        let mut out = Vec::new();
        self.for_each_neighbor(v, |u| out.push(u))?;
        out.sort_unstable();
        Ok(out)
    }

    /// Common degree of every vertex (the graphs are vertex-transitive).
    pub fn degree(&self) -> u64 {
        let n = self.n();
        let q = self.q() as u128;
        let mut total = 0u128;
        for d in 1..=self.p.min(n) {
            let ways = crate::binom::binomial(n, d).unwrap_or(0);
            total += ways * (q - 1).pow(d);
        }
        total as u64
    }
}

impl fmt::Display for PowerGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GraphKind::Hypercube { n } => write!(f, "Q_{n}^{}", self.p),
            GraphKind::Hamming { n, q } => write!(f, "H_{{{n},{q}}}^{}", self.p),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacency_examples() {
        let g = PowerGraph::hypercube(3, 2).unwrap();
        let one = rank_bits(3, 0b001);
        let two_three = rank_bits(3, 0b110);
        let one_two = rank_bits(3, 0b011);
        assert!(!g.adjacent(one, two_three).unwrap());
        assert!(g.adjacent(0, one_two).unwrap());
        assert!(!g.adjacent(0, 0).unwrap());

        let h = PowerGraph::hamming(3, 3, 1).unwrap();
        let u = HammingVertex::new(vec![0, 1, 2], 3).unwrap().index();
        let v = HammingVertex::new(vec![0, 1, 0], 3).unwrap().index();
        assert!(h.adjacent(u, v).unwrap());
        assert!(matches!(h.adjacent(27, 0), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn hamming_index_round_trip() {
        for idx in 0..81 {
            let v = HammingVertex::from_index(idx, 4, 3);
            assert_eq!(v.index(), idx);
        }
        assert_eq!(HammingVertex::from_index(5, 3, 2).coords(), &[1, 0, 1]);
        assert!(HammingVertex::new(vec![0, 3], 3).is_err());
    }

    #[test]
    fn neighbor_enumeration_matches_distance() {
        let graphs = [
            PowerGraph::hypercube(5, 2).unwrap(),
            PowerGraph::hypercube(4, 4).unwrap(),
            PowerGraph::hamming(3, 3, 2).unwrap(),
            PowerGraph::hamming(2, 4, 1).unwrap(),
        ];
        for g in graphs {
            for v in 0..g.vertex_count() {
                let listed = g.neighbors(v).unwrap();
                let direct: Vec<u64> = (0..g.vertex_count())
                    .filter(|&u| g.adjacent(u, v).unwrap())
                    .collect();
                assert_eq!(listed, direct, "{g} at {v}");
                assert_eq!(listed.len() as u64, g.degree());
            }
        }
    }

    #[test]
    fn hypercube_agrees_with_binary_hamming() {
        let q = PowerGraph::hypercube(4, 2).unwrap();
        let h = PowerGraph::hamming(4, 2, 2).unwrap();
        for u in 0..16 {
            for v in 0..16 {
                let hu = q.tuple(u).unwrap().index();
                let hv = q.tuple(v).unwrap().index();
                assert_eq!(q.adjacent(u, v).unwrap(), h.adjacent(hu, hv).unwrap());
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(PowerGraph::hypercube(0, 1).is_err());
        assert!(PowerGraph::hamming(3, 1, 1).is_err());
        assert!(matches!(PowerGraph::hamming(40, 3, 1), Err(Error::Overflow(_))));
    }
}
