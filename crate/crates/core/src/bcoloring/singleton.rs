//! Checks the singleton-class structure forced by a b-coloring of `Q_n^p`
//! with `2^{n-1} + ℓ` colors: at least `2ℓ` singleton classes, forming a clique
//! `A` with `|C^p(A)| >= 2^{n-1} - ℓ`.

use serde::Serialize;

use super::coloring::{validate_coloring, Coloring};
use super::graph::{GraphKind, PowerGraph};
use crate::cube::MAX_DENSE;
use crate::error::{Error, Result};
use crate::neighborhoods::common_open;
use crate::subset::{Family, GroundSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingletonReport {
    pub schema: u32,
    pub n: u32,
    pub p: u32,
    pub k: u32,
    pub ell: i64,
    pub required_singletons: u64,
    pub singleton_count: u64,
    /// The first `2ℓ` singleton vertices, in subset notation.
    pub clique: Vec<String>,
    pub is_clique: bool,
    pub open_count: u64,
    pub open_required: i64,
    /// Which requirement failed, if any.
    pub failure: Option<String>,
}

impl SingletonReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

pub fn singleton_certificate(g: &PowerGraph, c: &Coloring, ell: i64) -> Result<SingletonReport> {
    let GraphKind::Hypercube { n } = g.kind() else {
        return Err(Error::Precondition("singleton certificate needs a hypercube power".into()));
    };
    if n as usize > MAX_DENSE {
        return Err(Error::Infeasible(format!("singleton certificate needs n <= {MAX_DENSE}")));
    }
    let half = 1i64 << (n - 1);
    let mut report = SingletonReport {
        schema: crate::SCHEMA_VERSION,
        n,
        p: g.p(),
        k: c.k(),
        ell,
        required_singletons: 0,
        singleton_count: 0,
        clique: Vec::new(),
        is_clique: true,
        open_count: 0,
        open_required: half - ell,
        failure: None,
    };
    let cert = validate_coloring(g, c)?;
    report.singleton_count = cert.singleton_classes.len() as u64;
    if ell <= 0 {
        return Ok(report);
    }
    if !cert.valid_b {
        return Err(Error::Precondition("coloring is not a b-coloring".into()));
    }
    if c.k() as i64 != half + ell {
        return Err(Error::Precondition(format!(
            "coloring uses {} colors, expected 2^{} + {ell}",
            c.k(),
            n - 1
        )));
    }
    report.required_singletons = 2 * ell as u64;
    if report.singleton_count < report.required_singletons {
        report.failure = Some(format!(
            "only {} singleton classes, need {}",
            report.singleton_count, report.required_singletons
        ));
        return Ok(report);
    }
    let chosen: Vec<u64> = cert.singleton_classes[..report.required_singletons as usize]
        .iter()
        .map(|&t| c.class(t)[0])
        .collect();
    for (i, &u) in chosen.iter().enumerate() {
        for &v in &chosen[i + 1..] {
            if !g.adjacent(u, v)? {
                report.is_clique = false;
            }
        }
    }
    let ground = GroundSet::standard(n as usize)?;
    let bits = chosen
        .iter()
        .map(|&v| g.subset_bits(v).map(|b| b.expect("hypercube vertex")))
        .collect::<Result<Vec<_>>>()?;
    let a = Family::from_bits(&ground, bits)?;
    report.clique = a.iter().map(|x| x.to_string()).collect();
    report.open_count = common_open(&a, g.p())?.len() as u64;
    if !report.is_clique {
        report.failure = Some("singleton vertices do not form a clique".into());
    } else if (report.open_count as i64) < report.open_required {
        report.failure = Some(format!(
            "|C^p(A)| = {} is below {}",
            report.open_count, report.open_required
        ));
    }
    Ok(report)
}
