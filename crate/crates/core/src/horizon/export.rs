use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Edge, GraphError, LambdaGraphSystem, Labels};
use crate::dyck::BracketSymbol;
use crate::markov::{MarkovWord, TransitionMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

impl FromStr for ExportFormat {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            other => Err(GraphError::UnsupportedFormat(other.to_string())),
        }
    }
}

/// JSON mirror of a λ-graph system. Ranks are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub matrix: Vec<Vec<i64>>,
    pub labels: Labels,
    pub max_level: usize,
    pub levels: Vec<LevelDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelDocument {
    pub level: usize,
    /// Vertex words in rank order.
    pub vertices: Vec<String>,
    /// Edges to the next level.
    pub edges: Vec<EdgeDocument>,
    /// `iota[w - 1]` is the rank one level down of vertex `w`; empty at level 0.
    pub iota: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDocument {
    pub source: usize,
    pub label: String,
    pub target: usize,
}

impl GraphDocument {
    pub fn vertex_count(&self) -> usize {
        self.levels.iter().map(|l| l.vertices.len()).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.levels.iter().map(|l| l.edges.len()).sum()
    }

    pub fn parse(text: &str) -> Result<Self, GraphError> {
        serde_json::from_str(text).map_err(|e| GraphError::Document(e.to_string()))
    }

    /// Rebuilds the in-memory system, validating words and edge endpoints.
    pub fn into_system(self) -> Result<LambdaGraphSystem, GraphError> {
        let bad = |m: String| GraphError::Document(m);
        let matrix = TransitionMatrix::new(&self.matrix).map_err(|e| bad(e.to_string()))?;
        if self.levels.len() != self.max_level + 1 {
            return Err(bad("level count does not match max_level".into()));
        }
        let n = matrix.size();
        let mut tables = Vec::new();
        for (l, lvl) in self.levels.iter().enumerate() {
            let words = lvl
                .vertices
                .iter()
                .map(|w| {
                    if w.is_empty() {
                        Ok(MarkovWord::empty())
                    } else {
                        MarkovWord::parse(w, n)
                    }
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| bad(e.to_string()))?;
            if words.iter().any(|w| w.len() != l) || words.windows(2).any(|p| p[0] >= p[1]) {
                return Err(bad(format!("vertices at level {l} are not sorted words of length {l}")));
            }
            tables.push(crate::markov::table_from_words(l, words));
        }
        let mut edges = Vec::new();
        let mut iota = Vec::new();
        for l in 0..self.max_level {
            let (lo, hi) = (tables[l].len(), tables[l + 1].len());
            let es = self.levels[l]
                .edges
                .iter()
                .map(|e| {
                    let label: BracketSymbol = e.label.parse().map_err(|e: crate::dyck::DyckError| bad(e.to_string()))?;
                    if e.source == 0 || e.source > lo || e.target == 0 || e.target > hi || label.idx() >= n {
                        return Err(bad(format!("edge {e:?} out of range at level {l}")));
                    }
                    Ok(Edge {
                        source: e.source as u32 - 1,
                        label,
                        target: e.target as u32 - 1,
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            edges.push(es);
            let up = &self.levels[l + 1].iota;
            if up.len() != hi || up.iter().any(|&r| r == 0 || r > lo) {
                return Err(bad(format!("iota at level {} is malformed", l + 1)));
            }
            iota.push(up.iter().map(|&r| r as u32 - 1).collect());
        }
        Ok(LambdaGraphSystem::assemble(matrix, self.labels, tables, edges, iota))
    }
}

fn vertex_word(w: &MarkovWord) -> String {
    if w.is_empty() {
        String::new()
    } else {
        w.to_string()
    }
}

impl LambdaGraphSystem {
    pub fn to_document(&self) -> GraphDocument {
        let levels = (0..=self.max_level())
            .map(|l| LevelDocument {
                level: l,
                vertices: self.table(l).words().iter().map(vertex_word).collect(),
                edges: if l < self.max_level() {
                    self.edges(l)
                        .iter()
                        .map(|e| EdgeDocument {
                            source: e.source as usize + 1,
                            label: e.label.to_string(),
                            target: e.target as usize + 1,
                        })
                        .collect()
                } else {
                    Vec::new()
                },
                iota: if l == 0 {
                    Vec::new()
                } else {
                    self.iota_map(l - 1).iter().map(|&r| r as usize + 1).collect()
                },
            })
            .collect();
        GraphDocument {
            matrix: self.matrix().rows(),
            labels: self.labels(),
            max_level: self.max_level(),
            levels,
        }
    }

    pub fn export(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_document()).expect("serializable");
                s.push('\n');
                s
            }
            ExportFormat::Dot => self.to_dot(),
        }
    }

    fn vertex_name(&self, level: usize, rank0: usize) -> String {
        format!(
            "L{level}_{}_{}",
            rank0 + 1,
            vertex_word(&self.table(level).words()[rank0])
        )
    }

    fn to_dot(&self) -> String {
        let mut out = String::from("digraph lambda_graph_system {\n  rankdir=TB;\n");
        for l in 0..=self.max_level() {
            let _ = writeln!(out, "  subgraph level_{l} {{\n    rank=same;");
            for (r, w) in self.table(l).words().iter().enumerate() {
                let label = if w.is_empty() { "∅".to_string() } else { w.to_string() };
                let _ = writeln!(out, "    \"{}\" [label=\"{label}\"];", self.vertex_name(l, r));
            }
            out.push_str("  }\n");
        }
        for l in 0..self.max_level() {
            for e in self.edges(l) {
                let _ = writeln!(
                    out,
                    "  \"{}\" -> \"{}\" [label=\"{}\"];",
                    self.vertex_name(l, e.source as usize),
                    self.vertex_name(l + 1, e.target as usize),
                    e.label
                );
            }
            for (w, &v) in self.iota_map(l).iter().enumerate() {
                let _ = writeln!(
                    out,
                    "  \"{}\" -> \"{}\" [style=dashed, arrowhead=none];",
                    self.vertex_name(l + 1, w),
                    self.vertex_name(l, v as usize)
                );
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_counts() {
        let g = LambdaGraphSystem::build(&TransitionMatrix::fibonacci(), 1).unwrap();
        let dot = g.export(ExportFormat::Dot);
        assert_eq!(dot.lines().filter(|l| l.contains("[label=\"") && l.contains("->")).count(), 5);
        assert_eq!(dot.lines().filter(|l| l.contains("style=dashed")).count(), 2);
        assert!(dot.contains("\"L0_1_\" -> \"L1_2_2\" [label=\"b1\"];"));
        assert_eq!(dot, g.export(ExportFormat::Dot));
    }

    #[test]
    fn level_zero_export() {
        let g = LambdaGraphSystem::build(&TransitionMatrix::fibonacci(), 0).unwrap();
        let dot = g.export(ExportFormat::Dot);
        assert!(!dot.contains("->"));
        assert_eq!(dot.matches("[label=").count(), 1);
        let doc = g.to_document();
        assert_eq!((doc.vertex_count(), doc.edge_count()), (1, 0));
    }

    #[test]
    fn json_round_trip() {
        let g = LambdaGraphSystem::build(&TransitionMatrix::full(3).unwrap(), 3).unwrap();
        let text = g.export(ExportFormat::Json);
        let doc = GraphDocument::parse(&text).unwrap();
        assert_eq!(doc.vertex_count(), 1 + 3 + 9 + 27);
        assert_eq!(doc.edge_count(), g.edge_counts().iter().sum::<usize>());
        assert_eq!(doc.into_system().unwrap(), g);
    }

    #[test]
    fn unsupported_format() {
        assert_eq!(
            "svg".parse::<ExportFormat>(),
            Err(GraphError::UnsupportedFormat("svg".into()))
        );
        assert!(GraphDocument::parse("{").is_err());
    }
}
