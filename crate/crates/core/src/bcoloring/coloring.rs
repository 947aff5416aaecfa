use serde::Serialize;

use super::graph::PowerGraph;
use crate::error::{Error, Result};

/// A surjective assignment of colors `0..k` to vertices `0..len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    assignment: Vec<u32>,
    k: u32,
    classes: Vec<Vec<u64>>,
}

impl Coloring {
    /// Every color below `k` must be used.
    pub fn new(assignment: Vec<u32>, k: u32) -> Result<Self> {
        let mut classes = vec![Vec::new(); k as usize];
        for (v, &c) in assignment.iter().enumerate() {
            if c >= k {
                return Err(Error::ColorOutOfRange { color: c, k });
            }
            classes[c as usize].push(v as u64);
        }
        if let Some(c) = classes.iter().position(Vec::is_empty) {
            return Err(Error::EmptyColorClass(c as u32));
        }
        Ok(Self {
            assignment,
            k,
            classes,
        })
    }

    /// Infers `k` as one more than the largest color.
    pub fn from_assignment(assignment: Vec<u32>) -> Result<Self> {
        let k = assignment.iter().max().map_or(0, |&c| c + 1);
        Self::new(assignment, k)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn color(&self, v: u64) -> u32 {
        self.assignment[v as usize]
    }

    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }

    pub fn class(&self, c: u32) -> &[u64] {
        &self.classes[c as usize]
    }

    pub fn classes(&self) -> &[Vec<u64>] {
        &self.classes
    }

    pub fn into_assignment(self) -> Vec<u32> {
        self.assignment
    }
}

/// Outcome of checking a coloring against the b-coloring definition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BColorCertificate {
    pub schema: u32,
    pub k: u32,
    /// Some vertex of class `t` seeing every other color, when one exists.
    pub dominating: Vec<Option<u64>>,
    pub valid_proper: bool,
    pub valid_b: bool,
    pub singleton_classes: Vec<u32>,
    /// A monochromatic edge, when the coloring is not proper.
    pub conflict: Option<(u64, u64)>,
}

/// Neighbor-color profile of every vertex, shared by the validator and
/// the every-vertex check.
struct Profile {
    /// Distinct colors other than its own among each vertex's neighbors.
    seen_other: Vec<u32>,
    conflict: Option<(u64, u64)>,
}

fn profile(g: &PowerGraph, c: &Coloring) -> Result<Profile> {
    if c.len() as u64 != g.vertex_count() {
        return Err(Error::ColoringSizeMismatch {
            got: c.len(),
            expected: g.vertex_count(),
        });
    }
    let mut stamp = vec![u64::MAX; c.k() as usize];
    let mut seen_other = vec![0u32; c.len()];
    let mut conflict = None;
    for v in 0..g.vertex_count() {
        let own = c.color(v);
        let mut distinct = 0u32;
        g.for_each_neighbor(v, |u| {
            let cu = c.color(u);
            if cu == own {
                if conflict.is_none() {
                    conflict = Some((v.min(u), v.max(u)));
                }
            } else if stamp[cu as usize] != v {
                stamp[cu as usize] = v;
                distinct += 1;
            }
        })?;
        seen_other[v as usize] = distinct;
    }
    Ok(Profile {
        seen_other,
        conflict,
    })
}

pub fn validate_coloring(g: &PowerGraph, c: &Coloring) -> Result<BColorCertificate> {
    let prof = profile(g, c)?;
    let need = c.k().saturating_sub(1);
    let dominating: Vec<Option<u64>> = c
        .classes()
        .iter()
        .map(|class| class.iter().copied().find(|&v| prof.seen_other[v as usize] == need))
        .collect();
    let valid_proper = prof.conflict.is_none();
    let valid_b = valid_proper && dominating.iter().all(Option::is_some);
    let singleton_classes = (0..c.k()).filter(|&t| c.class(t).len() == 1).collect();
    Ok(BColorCertificate {
        schema: crate::SCHEMA_VERSION,
        k: c.k(),
        dominating,
        valid_proper,
        valid_b,
        singleton_classes,
        conflict: prof.conflict,
    })
}

/// True iff the coloring is proper and every vertex is color-dominating.
pub fn every_vertex_dominates(g: &PowerGraph, c: &Coloring) -> Result<bool> {
    let prof = profile(g, c)?;
    let need = c.k().saturating_sub(1);
    Ok(prof.conflict.is_none() && prof.seen_other.iter().all(|&s| s == need))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::rank_bits;

    #[test]
    fn coloring_rejects_bad_input() {
        assert_eq!(
            Coloring::new(vec![0, 2], 2),
            Err(Error::ColorOutOfRange { color: 2, k: 2 })
        );
        assert_eq!(Coloring::new(vec![0, 0], 2), Err(Error::EmptyColorClass(1)));
        let g = PowerGraph::hypercube(2, 1).unwrap();
        let c = Coloring::from_assignment(vec![0, 1]).unwrap();
        assert!(matches!(
            validate_coloring(&g, &c),
            Err(Error::ColoringSizeMismatch { got: 2, expected: 4 })
        ));
    }

    #[test]
    fn four_cycle_parity() {
        let g = PowerGraph::hypercube(2, 1).unwrap();
        // ranks: {} {1} {2} {1,2}
        let c = Coloring::new(vec![0, 1, 1, 0], 2).unwrap();
        let cert = validate_coloring(&g, &c).unwrap();
        assert!(cert.valid_proper && cert.valid_b);
        assert!(cert.singleton_classes.is_empty());
    }

    #[test]
    fn antipodal_classes_on_q3() {
        let g = PowerGraph::hypercube(3, 1).unwrap();
        let mut assignment = vec![0u32; 8];
        let mut next = 0;
        for bits in 0u64..8 {
            if bits & 0b100 == 0 {
                assignment[rank_bits(3, bits) as usize] = next;
                assignment[rank_bits(3, bits ^ 0b111) as usize] = next;
                next += 1;
            }
        }
        let c = Coloring::new(assignment, 4).unwrap();
        let cert = validate_coloring(&g, &c).unwrap();
        assert!(cert.valid_b);
        assert!(every_vertex_dominates(&g, &c).unwrap());
    }

    #[test]
    fn monochromatic_edge_is_reported() {
        let g = PowerGraph::hypercube(2, 1).unwrap();
        let c = Coloring::new(vec![0, 0, 1, 1], 2).unwrap();
        let cert = validate_coloring(&g, &c).unwrap();
        assert!(!cert.valid_proper && !cert.valid_b);
        assert_eq!(cert.conflict, Some((0, 1)));
    }

    #[test]
    fn singletons_on_complete_graph() {
        let g = PowerGraph::hypercube(2, 2).unwrap();
        let c = Coloring::new(vec![3, 2, 1, 0], 4).unwrap();
        let cert = validate_coloring(&g, &c).unwrap();
        assert!(cert.valid_b);
        assert_eq!(cert.singleton_classes, vec![0, 1, 2, 3]);
    }
}
