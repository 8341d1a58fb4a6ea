use std::path::Path;

use serde::{Deserialize, Serialize};

use super::GlueError;
use crate::graph::DecoratedGraph;
use crate::linalg::rank;
use crate::scalars::{Embedding, NovikovElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    Closed,
    Arc,
}

/// One passage through a vertex: entering along `in_he`, leaving along
/// `out_he`.  Arcs that start or stop at a univalent vertex leave the
/// missing side empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    pub vertex: String,
    #[serde(rename = "in")]
    pub in_he: Option<String>,
    #[serde(rename = "out")]
    pub out_he: Option<String>,
}

impl Step {
    pub fn new(vertex: &str, in_he: Option<&str>, out_he: Option<&str>) -> Self {
        Step {
            vertex: vertex.into(),
            in_he: in_he.map(Into::into),
            out_he: out_he.map(Into::into),
        }
    }

    pub fn through(vertex: &str, in_he: &str, out_he: &str) -> Self {
        Self::new(vertex, Some(in_he), Some(out_he))
    }
}

/// Square invertible scalar matrix; rank one systems are a single scalar.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalSystem(pub Vec<Vec<NovikovElement>>);

impl LocalSystem {
    pub fn trivial() -> Self {
        LocalSystem(vec![vec![NovikovElement::one()]])
    }

    pub fn scalar(c: NovikovElement) -> Self {
        LocalSystem(vec![vec![c]])
    }

    pub fn diagonal(entries: Vec<NovikovElement>) -> Self {
        let n = entries.len();
        LocalSystem(
            entries
                .into_iter()
                .enumerate()
                .map(|(i, c)| {
                    let mut row = vec![NovikovElement::zero(); n];
                    row[i] = c;
                    row
                })
                .collect(),
        )
    }

    pub fn identity(r: usize) -> Self {
        Self::diagonal(vec![NovikovElement::one(); r])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rank())
    }

    pub fn is_invertible(&self) -> bool {
        let r = self.rank();
        if r == 0 || self.0.iter().any(|row| row.len() != r) {
            return false;
        }
        let emb = Embedding::formal_for(self.0.iter().flatten());
        let rows: Vec<_> = self
            .0
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(j, c)| (j, emb.embed(c)))
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect();
        rank(&rows) == r
    }
}

/// An immersed walk on the graph with a local system and a parity shift.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveObject {
    pub kind: CurveKind,
    pub steps: Vec<Step>,
    pub local_system: LocalSystem,
    pub shift: u8,
}

impl CurveObject {
    pub fn closed(steps: Vec<Step>) -> Self {
        CurveObject {
            kind: CurveKind::Closed,
            steps,
            local_system: LocalSystem::trivial(),
            shift: 0,
        }
    }

    pub fn arc(steps: Vec<Step>) -> Self {
        CurveObject {
            kind: CurveKind::Arc,
            ..Self::closed(steps)
        }
    }

    pub fn with_local_system(mut self, ls: LocalSystem) -> Self {
        self.local_system = ls;
        self
    }

    pub fn shifted(mut self) -> Self {
        self.shift = (self.shift + 1) % 2;
        self
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Number of edge traversals, counting the entry and exit edges of arcs.
    pub fn traversal_count(&self) -> usize {
        match self.kind {
            CurveKind::Closed => self.steps.len(),
            CurveKind::Arc => {
                let mut n = self.steps.len().saturating_sub(1);
                if let Some(s) = self.steps.first() {
                    n += s.in_he.is_some() as usize;
                }
                if let Some(s) = self.steps.last() {
                    n += s.out_he.is_some() as usize;
                }
                n
            }
        }
    }

    /// Checks the walk against the graph.
    pub fn validate(&self, g: &DecoratedGraph) -> Result<(), GlueError> {
        let bad = |msg: String| Err(GlueError::InvalidCurve(msg));
        if !self.local_system.is_invertible() {
            return bad("local system is not an invertible square matrix".into());
        }
        if self.shift > 1 {
            return bad(format!("shift {} is not 0 or 1", self.shift));
        }
        let n = self.steps.len();
        for (k, s) in self.steps.iter().enumerate() {
            let Some(vert) = g.vertex(&s.vertex) else {
                return bad(format!("step {k}: unknown vertex {}", s.vertex));
            };
            for h in [&s.in_he, &s.out_he].into_iter().flatten() {
                if g.vertex_of(h) != Some(s.vertex.as_str()) {
                    return bad(format!("step {k}: half-edge {h} is not at {}", s.vertex));
                }
            }
            if s.in_he.is_some() && s.in_he == s.out_he {
                return bad(format!("step {k}: the walk backtracks along {:?}", s.in_he));
            }
            let first = k == 0 && self.kind == CurveKind::Arc;
            let last = k + 1 == n && self.kind == CurveKind::Arc;
            match (&s.in_he, &s.out_he) {
                (Some(_), Some(_)) => {
                    if vert.valency != 3 {
                        return bad(format!("step {k}: passes through univalent vertex {}", s.vertex));
                    }
                }
                (None, Some(_)) if first && vert.valency == 1 => {}
                (Some(_), None) if last && vert.valency == 1 => {}
                (None, None) if first && last && vert.valency == 1 => {}
                _ => return bad(format!("step {k}: missing half-edge")),
            }
        }
        for k in 0..n {
            let next = (k + 1) % n;
            if self.kind == CurveKind::Arc && next == 0 {
                break;
            }
            let out = self.steps[k].out_he.as_deref().unwrap_or_default();
            let inn = self.steps[next].in_he.as_deref().unwrap_or_default();
            if g.opposite(out) != Some(inn) {
                return bad(format!("steps {k} and {next} are not joined by an edge ({out} / {inn})"));
            }
        }
        if self.kind == CurveKind::Arc {
            let ends = [
                self.steps.first().and_then(|s| s.in_he.clone()),
                self.steps.last().and_then(|s| s.out_he.clone()),
            ];
            for h in ends.into_iter().flatten() {
                let e = g.edge(g.edge_of(&h).unwrap()).unwrap();
                if e.compact {
                    return bad(format!("arc ends on compact edge via {h}"));
                }
            }
        }
        Ok(())
    }
}

/// On-disk form of a curve.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveFile {
    pub kind: CurveKind,
    pub steps: Vec<Step>,
    #[serde(default = "NovikovElement::one")]
    pub local_system: NovikovElement,
    /// Rank-r systems as a matrix; overrides `local_system` when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local_system_matrix: Option<Vec<Vec<NovikovElement>>>,
    #[serde(default)]
    pub shift: u8,
}

impl From<&CurveObject> for CurveFile {
    fn from(c: &CurveObject) -> Self {
        let (scalar, matrix) = if c.local_system.rank() == 1 {
            (c.local_system.0[0][0].clone(), None)
        } else {
            (NovikovElement::one(), Some(c.local_system.0.clone()))
        };
        CurveFile {
            kind: c.kind,
            steps: c.steps.clone(),
            local_system: scalar,
            local_system_matrix: matrix,
            shift: c.shift,
        }
    }
}

impl From<CurveFile> for CurveObject {
    fn from(f: CurveFile) -> Self {
        CurveObject {
            kind: f.kind,
            steps: f.steps,
            local_system: match f.local_system_matrix {
                Some(m) => LocalSystem(m),
                None => LocalSystem::scalar(f.local_system),
            },
            shift: f.shift,
        }
    }
}

pub fn curve_from_json(text: &str) -> Result<CurveObject, GlueError> {
    let f: CurveFile = serde_json::from_str(text).map_err(|e| GlueError::InvalidCurve(e.to_string()))?;
    Ok(f.into())
}

pub fn curve_to_json(c: &CurveObject) -> String {
    serde_json::to_string_pretty(&CurveFile::from(c)).expect("curve serializes")
}

pub fn read_curve(path: &Path) -> Result<CurveObject, GlueError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| GlueError::InvalidCurve(format!("{}: {e}", path.display())))?;
    curve_from_json(&text)
}
