//! JSON formats for quiver inputs and command reports.

use anyhow::{bail, Context, Result};
use quiver_moduli::lattice::IVec;
use quiver_moduli::quiver::{Arrow, Quiver};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct QuiverFile {
    pub name: String,
    /// Ordered vertex identifiers; all vectors use this order.
    pub vertices: Vec<String>,
    /// [tail id, head id, label] triples.
    pub arrows: Vec<[String; 3]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub dim_vectors: BTreeMap<String, IVec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub weights: BTreeMap<String, IVec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl QuiverFile {
    pub fn to_quiver(&self) -> Result<Quiver> {
        let index = |id: &str| {
            self.vertices
                .iter()
                .position(|v| v == id)
                .with_context(|| format!("unknown vertex id {id:?} in {}", self.name))
        };
        let arrows = self
            .arrows
            .iter()
            .map(|[t, h, l]| {
                Ok(Arrow { tail: index(t)?, head: index(h)?, label: l.clone() })
            })
            .collect::<Result<Vec<_>>>()?;
        Quiver::new(self.vertices.clone(), arrows)
            .map_err(|e| anyhow::anyhow!("{}: {e}", self.name))
    }

    pub fn from_quiver(name: &str, q: &Quiver) -> Self {
        QuiverFile {
            name: name.to_string(),
            vertices: q.vertex_names.clone(),
            arrows: q
                .arrows
                .iter()
                .map(|a| {
                    [
                        q.vertex_names[a.tail].clone(),
                        q.vertex_names[a.head].clone(),
                        a.label.clone(),
                    ]
                })
                .collect(),
            dim_vectors: BTreeMap::new(),
            weights: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let data = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        let qf: QuiverFile =
            serde_json::from_str(&data).with_context(|| format!("parsing {}", path.display()))?;
        qf.to_quiver()?;
        Ok(qf)
    }

    /// Named vector or literal comma-separated integers.
    pub fn resolve_dimvec(&self, spec: &str) -> Result<IVec> {
        if let Some(v) = self.dim_vectors.get(spec) {
            return self.sized(v.clone(), spec);
        }
        self.sized(parse_ivec(spec)?, spec)
    }

    pub fn resolve_weight(&self, spec: &str) -> Result<IVec> {
        if let Some(v) = self.weights.get(spec) {
            return self.sized(v.clone(), spec);
        }
        self.sized(parse_ivec(spec)?, spec)
    }

    fn sized(&self, v: IVec, spec: &str) -> Result<IVec> {
        if v.len() != self.vertices.len() {
            bail!(
                "vector {spec:?} has {} entries, quiver {} has {} vertices",
                v.len(),
                self.name,
                self.vertices.len()
            );
        }
        Ok(v)
    }
}

pub fn parse_ivec(s: &str) -> Result<IVec> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().with_context(|| format!("bad integer {t:?}")))
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportFile {
    pub command: String,
    pub inputs: serde_json::Value,
    pub outputs: serde_json::Value,
    /// Provenance per output: sampled vs exact, bounds used.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Items where two readings of the source disagree; reported, never fatal.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub discrepancies: Vec<String>,
}

impl ReportFile {
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
