//! JSON exchange format for colorings:
//! `{"schema":1,"kind":"hypercube","n":3,"p":1,"k":4,"assignment":[...]}`.
//! Hamming documents also carry `q`. Vertices are listed in the graph's index
//! order (simplicial rank or lexicographic tuple index).

use serde::{Deserialize, Serialize};

use super::coloring::Coloring;
use super::graph::{GraphKind, PowerGraph};
use crate::error::{Error, Result};

/// Inputs longer than this are rejected before parsing.
pub const MAX_WITNESS_BYTES: usize = 64 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub schema: u32,
    pub kind: String,
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    pub p: u32,
    pub k: u32,
    pub assignment: Vec<u32>,
}

impl WitnessDoc {
    pub fn new(g: &PowerGraph, c: &Coloring) -> Self {
        let (kind, q) = match g.kind() {
            GraphKind::Hypercube { .. } => ("hypercube", None),
            GraphKind::Hamming { q, .. } => ("hamming", Some(q)),
        };
        Self {
            schema: crate::SCHEMA_VERSION,
            kind: kind.to_string(),
            n: g.n(),
            q,
            p: g.p(),
            k: c.k(),
            assignment: c.assignment().to_vec(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("witness serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        if text.len() > MAX_WITNESS_BYTES {
            return Err(Error::Parse(format!(
                "witness is {} bytes, limit is {MAX_WITNESS_BYTES}",
                text.len()
            )));
        }
        let doc: WitnessDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.schema != crate::SCHEMA_VERSION {
            return Err(Error::Parse(format!("unsupported schema {}", doc.schema)));
        }
        Ok(doc)
    }

    pub fn graph(&self) -> Result<PowerGraph> {
        match (self.kind.as_str(), self.q) {
            ("hypercube", None | Some(2)) => PowerGraph::hypercube(self.n, self.p),
            ("hypercube", Some(q)) => Err(Error::Parse(format!("hypercube witness with q={q}"))),
            ("hamming", Some(q)) => PowerGraph::hamming(self.n, q, self.p),
            ("hamming", None) => Err(Error::Parse("hamming witness needs q".into())),
            (other, _) => Err(Error::Parse(format!("unknown graph kind {other:?}"))),
        }
    }

    pub fn coloring(&self) -> Result<Coloring> {
        Coloring::new(self.assignment.clone(), self.k)
    }

    /// Parses and checks that the assignment covers the graph exactly.
    pub fn decode(text: &str) -> Result<(PowerGraph, Coloring)> {
        let doc = Self::from_json(text)?;
        let g = doc.graph()?;
        if doc.assignment.len() as u64 != g.vertex_count() {
            return Err(Error::ColoringSizeMismatch {
                got: doc.assignment.len(),
                expected: g.vertex_count(),
            });
        }
        let c = doc.coloring()?;
        Ok((g, c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bcoloring::coset_coloring;

    #[test]
    fn round_trip() {
        let g = PowerGraph::hamming(2, 3, 1).unwrap();
        let c = coset_coloring(2, 3).unwrap();
        let text = WitnessDoc::new(&g, &c).to_json();
        assert_eq!(
            text,
            r#"{"schema":1,"kind":"hamming","n":2,"q":3,"p":1,"k":3,"assignment":[0,2,1,1,0,2,2,1,0]}"#
        );
        let (g2, c2) = WitnessDoc::decode(&text).unwrap();
        assert_eq!((g2, c2), (g, c));
    }

    #[test]
    fn rejects_malformed() {
        let cases = [
            r#"{"schema":2,"kind":"hypercube","n":1,"p":1,"k":2,"assignment":[0,1]}"#,
            r#"{"schema":1,"kind":"torus","n":1,"p":1,"k":2,"assignment":[0,1]}"#,
            r#"{"schema":1,"kind":"hamming","n":1,"p":1,"k":2,"assignment":[0,1]}"#,
            r#"{"schema":1,"kind":"hypercube","n":2,"p":1,"k":2,"assignment":[0,1]}"#,
            r#"{"schema":1,"kind":"hypercube","n":1,"p":1,"k":3,"assignment":[0,1]}"#,
            r#"{"schema":1,"kind":"hypercube","n":1,"p":1,"k":2,"assignment":[0,1],"x":0}"#,
            "not json",
        ];
        for case in cases {
            assert!(WitnessDoc::decode(case).is_err(), "{case}");
        }
    }
}
