//! Colorings by cosets of the diagonal subgroup `{(a, ..., a)}` of `Z_q^n`.
//!
//! The class of `x` is `x + S`; its color is the index of the representative
//! whose last coordinate is `0`, read as a tuple over the first `n - 1`
//! coordinates.

use serde::Serialize;

use super::coloring::{every_vertex_dominates, validate_coloring, BColorCertificate, Coloring};
use super::graph::{HammingVertex, PowerGraph};
use crate::bounds::hamming_gate;
use crate::error::{Error, Result};
use crate::subset::{rank_bits, unrank_bits, MAX_GROUND};

/// Largest vertex count a coset coloring is materialized for.
pub const MAX_COSET_VERTICES: u64 = 1 << 26;

fn check_size(n: u32, q: u32) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidGraph("dimension must be at least 1".into()));
    }
    if q < 2 {
        return Err(Error::InvalidGraph(format!("alphabet size q={q} must be at least 2")));
    }
    (q as u64)
        .checked_pow(n)
        .filter(|&v| v <= MAX_COSET_VERTICES)
        .ok_or_else(|| {
            Error::Overflow(format!(
                "{q}^{n} vertices exceeds the limit of {MAX_COSET_VERTICES}"
            ))
        })
}

/// Color of a tuple under the coset coloring.
pub fn coset_color(x: &HammingVertex) -> u32 {
    let q = x.q() as u64;
    let coords = x.coords();
    let n = coords.len();
    let last = coords[n - 1] as u64;
    coords[..n - 1]
        .iter()
        .fold(0u64, |acc, &c| acc * q + (c as u64 + q - last) % q) as u32
}

/// Coset coloring of `Z_q^n` in lexicographic vertex order, `q^{n-1}` colors.
pub fn coset_coloring(n: u32, q: u32) -> Result<Coloring> {
    let count = check_size(n, q)?;
    let assignment = (0..count)
        .map(|v| coset_color(&HammingVertex::from_index(v, n as usize, q)))
        .collect();
    Coloring::new(assignment, q.pow(n - 1))
}

/// The same classes on `Q_n` (`x` paired with its complement), vertices in
/// simplicial order. A color is the simplicial rank over `[n-1]` of the
/// representative avoiding `n`.
pub fn coset_coloring_hypercube(n: u32) -> Result<Coloring> {
    let count = check_size(n, 2)?;
    if n as usize > MAX_GROUND {
        return Err(Error::GroundTooLarge(n as usize));
    }
    let n = n as usize;
    let top = 1u64 << (n - 1);
    let full = (1u64 << n) - 1;
    let mut assignment = vec![0u32; count as usize];
    for (r, slot) in assignment.iter_mut().enumerate() {
        let x = unrank_bits(n, r as u64)?;
        let rep = if x & top != 0 { x ^ full } else { x };
        *slot = rank_bits(n - 1, rep) as u32;
    }
    Coloring::new(assignment, 1 << (n - 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetVerification {
    pub schema: u32,
    pub n: u32,
    pub q: u32,
    pub p: u32,
    pub vertex_count: u64,
    /// Whether `(n, q, p)` is in the range where the construction is claimed.
    pub gated: bool,
    pub every_vertex_dominates: bool,
    pub certificate: BColorCertificate,
}

/// Validates the coset coloring on `H_{n,q}^p`. Inside the claimed range a
/// failure is an [`Error::Integrity`].
pub fn verify_coset_bcoloring(n: u32, q: u32, p: u32) -> Result<CosetVerification> {
    if p + 1 > n {
        return Err(Error::Precondition(format!("need p <= n-1, got n={n}, p={p}")));
    }
    let g = PowerGraph::hamming(n, q, p)?;
    let coloring = coset_coloring(n, q)?;
    let certificate = validate_coloring(&g, &coloring)?;
    let gated = hamming_gate(n, q, p);
    let every = every_vertex_dominates(&g, &coloring)?;
    if gated && !(certificate.valid_b && every) {
        return Err(Error::Integrity(format!(
            "coset coloring of {g} is not a b-coloring in which every vertex dominates"
        )));
    }
    Ok(CosetVerification {
        schema: crate::SCHEMA_VERSION,
        n,
        q,
        p,
        vertex_count: g.vertex_count(),
        gated,
        every_vertex_dominates: every,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classes_as_tuples(n: u32, q: u32) -> Vec<Vec<Vec<u32>>> {
        let c = coset_coloring(n, q).unwrap();
        c.classes()
            .iter()
            .map(|class| {
                class
                    .iter()
                    .map(|&v| HammingVertex::from_index(v, n as usize, q).coords().to_vec())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn classes_for_n2_q3() {
        assert_eq!(
            classes_as_tuples(2, 3),
            vec![
                vec![vec![0, 0], vec![1, 1], vec![2, 2]],
                vec![vec![0, 2], vec![1, 0], vec![2, 1]],
                vec![vec![0, 1], vec![1, 2], vec![2, 0]],
            ]
        );
    }

    #[test]
    fn classes_for_n3_q2_are_antipodal() {
        for class in classes_as_tuples(3, 2) {
            assert_eq!(class.len(), 2);
            let sum: Vec<u32> = class[0].iter().zip(&class[1]).map(|(a, b)| a + b).collect();
            assert_eq!(sum, vec![1, 1, 1]);
        }
    }

    #[test]
    fn zero_class_is_the_diagonal() {
        for (n, q) in [(3, 3), (4, 2), (2, 5)] {
            let c = coset_coloring(n, q).unwrap();
            assert_eq!(c.k(), q.pow(n - 1));
            let diagonal: Vec<u64> = (0..q)
                .map(|a| HammingVertex::new(vec![a; n as usize], q).unwrap().index())
                .collect();
            assert_eq!(c.class(0), diagonal.as_slice());
            assert!(c.classes().iter().all(|cl| cl.len() == q as usize));
        }
    }

    #[test]
    fn hypercube_variant_matches_binary_hamming() {
        let g = PowerGraph::hypercube(4, 2).unwrap();
        let c = coset_coloring_hypercube(4).unwrap();
        assert_eq!(c.k(), 8);
        assert!(validate_coloring(&g, &c).unwrap().valid_b);
        let h = coset_coloring(4, 2).unwrap();
        for v in 0..16 {
            for u in 0..16 {
                let same = c.color(v) == c.color(u);
                let hv = g.tuple(v).unwrap().index();
                let hu = g.tuple(u).unwrap().index();
                assert_eq!(same, h.color(hv) == h.color(hu));
            }
        }
    }

    #[test]
    fn verification_examples() {
        let a = verify_coset_bcoloring(3, 2, 1).unwrap();
        assert!(a.gated && a.certificate.valid_b && a.every_vertex_dominates);
        let b = verify_coset_bcoloring(4, 3, 3).unwrap();
        assert_eq!((b.certificate.k, b.vertex_count), (27, 81));
        assert!(b.certificate.valid_b);
        let c = verify_coset_bcoloring(3, 5, 2).unwrap();
        assert!(c.gated && c.certificate.valid_b);
        assert!(verify_coset_bcoloring(3, 2, 3).is_err());
    }

    #[test]
    fn outside_the_gate_is_informational() {
        // floor(4*2/3) = 2 > 1
        let r = verify_coset_bcoloring(4, 3, 1).unwrap();
        assert!(!r.gated);
        assert!(r.certificate.valid_proper);
    }

    #[test]
    fn size_limits() {
        assert!(matches!(coset_coloring(30, 3), Err(Error::Overflow(_))));
        assert!(coset_coloring(2, 1).is_err());
    }
}
