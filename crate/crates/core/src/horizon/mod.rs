//! The Cantor horizon λ-graph system of a Markov-Dyck shift.
//!
//! Level `l` has one vertex per admissible Markov word of length `l`, ranked
//! lexicographically. Edges between levels `l` and `l+1`:
//!
//! * `α_j`: from `μ` to `jμ` whenever `jμ` is admissible;
//! * `β_j`: from `j·u` to every admissible `u·a·b`; at `l = 1` (where `u` is
//!   empty) the target must also satisfy `A(j, a) = 1`;
//! * at `l = 0`: `α_j` to `j`, and `β_j` to `i` whenever `A(j, i) = 1`.
//!
//! `ι` deletes the rightmost symbol.

mod export;
mod paths;
mod verify;

pub use export::{ExportFormat, GraphDocument};
pub use paths::{
    IrreducibilityEntry, IrreducibilityTable, LambdaConditionI, LabelPath, PairReach,
};
pub use verify::{AxiomCheck, AxiomReport, Identity};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dyck::{BracketKind, BracketSymbol};
use crate::intmat::IntMatrix;
use crate::markov::{extend_words, table_from_words, MarkovWord, TransitionMatrix, WordTable};

pub const DEFAULT_VERTEX_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("level {level} would bring the vertex total to {total}, above the cap of {cap}")]
    LevelTooLarge {
        level: usize,
        total: usize,
        cap: usize,
    },
    #[error("level {level} is outside the built range 0..={max}")]
    LevelOutOfRange { level: usize, max: usize },
    #[error("rank {rank} is outside 1..={count} at level {level}")]
    RankOutOfRange {
        level: usize,
        rank: usize,
        count: usize,
    },
    #[error("unsupported export format {0:?}")]
    UnsupportedFormat(String),
    #[error("malformed graph document: {0}")]
    Document(String),
}

/// Which labels a (sub)system keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Labels {
    All,
    /// `Σ⁻ = {α_j}`, the word subsystem.
    Minus,
    /// `Σ⁺ = {β_j}`, the Markov-shift subsystem.
    Plus,
}

impl Labels {
    pub fn admits(self, s: BracketSymbol) -> bool {
        match self {
            Labels::All => true,
            Labels::Minus => s.kind == BracketKind::Alpha,
            Labels::Plus => s.kind == BracketKind::Beta,
        }
    }
}

/// An edge between adjacent levels; ranks are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub source: u32,
    pub label: BracketSymbol,
    pub target: u32,
}

#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    pub max_total_vertices: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_total_vertices: DEFAULT_VERTEX_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaGraphSystem {
    matrix: TransitionMatrix,
    labels: Labels,
    tables: Vec<WordTable>,
    /// `edges[l]` is `E_{l,l+1}`, sorted by (source, label, target).
    edges: Vec<Vec<Edge>>,
    /// `out_start[l][v]..out_start[l][v+1]` indexes the edges leaving `v`.
    out_start: Vec<Vec<u32>>,
    /// Edge indices into `edges[l]` grouped by target at level `l+1`.
    incoming: Vec<Vec<Vec<u32>>>,
    /// `iota[l][w]` is the 0-based rank at level `l` of `ι(w)`, `w` at level `l+1`.
    iota: Vec<Vec<u32>>,
}

impl LambdaGraphSystem {
    pub fn build(a: &TransitionMatrix, max_level: usize) -> Result<Self, GraphError> {
        Self::build_with(a, max_level, BuildOptions::default())
    }

    pub fn build_with(
        a: &TransitionMatrix,
        max_level: usize,
        opts: BuildOptions,
    ) -> Result<Self, GraphError> {
        let mut tables = vec![table_from_words(0, vec![MarkovWord::empty()])];
        let mut total = 1usize;
        for level in 1..=max_level {
            let words = extend_words(a, tables[level - 1].words());
            total += words.len();
            if total > opts.max_total_vertices {
                return Err(GraphError::LevelTooLarge {
                    level,
                    total,
                    cap: opts.max_total_vertices,
                });
            }
            tables.push(table_from_words(level, words));
        }

        let mut edges = Vec::with_capacity(max_level);
        let mut iota = Vec::with_capacity(max_level);
        for l in 0..max_level {
            edges.push(level_edges(a, &tables[l], &tables[l + 1]));
            iota.push(level_iota(&tables[l], &tables[l + 1]));
        }
        Ok(Self::assemble(a.clone(), Labels::All, tables, edges, iota))
    }

    fn assemble(
        matrix: TransitionMatrix,
        labels: Labels,
        tables: Vec<WordTable>,
        mut edges: Vec<Vec<Edge>>,
        iota: Vec<Vec<u32>>,
    ) -> Self {
        let mut out_start = Vec::with_capacity(edges.len());
        let mut incoming = Vec::with_capacity(edges.len());
        for (l, es) in edges.iter_mut().enumerate() {
            es.sort_unstable();
            es.dedup();
            let mut starts = vec![0u32; tables[l].len() + 1];
            for e in es.iter() {
                starts[e.source as usize + 1] += 1;
            }
            for v in 0..tables[l].len() {
                starts[v + 1] += starts[v];
            }
            out_start.push(starts);
            let mut inc = vec![Vec::new(); tables[l + 1].len()];
            for (k, e) in es.iter().enumerate() {
                inc[e.target as usize].push(k as u32);
            }
            incoming.push(inc);
        }
        LambdaGraphSystem {
            matrix,
            labels,
            tables,
            edges,
            out_start,
            incoming,
            iota,
        }
    }

    pub fn matrix(&self) -> &TransitionMatrix {
        &self.matrix
    }

    pub fn labels(&self) -> Labels {
        self.labels
    }

    pub fn max_level(&self) -> usize {
        self.tables.len() - 1
    }

    pub fn table(&self, level: usize) -> &WordTable {
        &self.tables[level]
    }

    /// `m(l)` for `l = 0..=L`.
    pub fn vertex_counts(&self) -> Vec<usize> {
        self.tables.iter().map(WordTable::len).collect()
    }

    pub fn vertex_count(&self, level: usize) -> usize {
        self.tables[level].len()
    }

    /// `E_{l,l+1}`.
    pub fn edges(&self, level: usize) -> &[Edge] {
        &self.edges[level]
    }

    pub fn edge_counts(&self) -> Vec<usize> {
        self.edges.iter().map(Vec::len).collect()
    }

    /// Edges leaving the 0-based vertex `v` at `level`.
    pub fn out_edges(&self, level: usize, v: usize) -> &[Edge] {
        let s = &self.out_start[level];
        &self.edges[level][s[v] as usize..s[v + 1] as usize]
    }

    /// Edges entering the 0-based vertex `v` at `level + 1`.
    pub fn in_edges(&self, level: usize, v: usize) -> impl Iterator<Item = &Edge> + '_ {
        self.incoming[level][v]
            .iter()
            .map(move |&k| &self.edges[level][k as usize])
    }

    /// 0-based `ι` from level `level + 1` to `level`.
    pub fn iota_map(&self, level: usize) -> &[u32] {
        &self.iota[level]
    }

    /// `ι` on 1-based ranks: maps `rank` at `upper_level` to a rank at `upper_level - 1`.
    pub fn iota(&self, upper_level: usize, rank: usize) -> Result<usize, GraphError> {
        if upper_level == 0 || upper_level > self.max_level() {
            return Err(GraphError::LevelOutOfRange {
                level: upper_level,
                max: self.max_level(),
            });
        }
        self.check_rank(upper_level, rank)?;
        Ok(self.iota[upper_level - 1][rank - 1] as usize + 1)
    }

    pub(crate) fn check_level(&self, level: usize) -> Result<(), GraphError> {
        if level > self.max_level() {
            return Err(GraphError::LevelOutOfRange {
                level,
                max: self.max_level(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_rank(&self, level: usize, rank: usize) -> Result<(), GraphError> {
        self.check_level(level)?;
        let count = self.vertex_count(level);
        if rank == 0 || rank > count {
            return Err(GraphError::RankOutOfRange { level, rank, count });
        }
        Ok(())
    }

    /// Same vertices and `ι`, edges restricted to one sign of label.
    pub fn subsystem(&self, which: Labels) -> LambdaGraphSystem {
        let edges = self
            .edges
            .iter()
            .map(|es| es.iter().copied().filter(|e| which.admits(e.label)).collect())
            .collect();
        Self::assemble(
            self.matrix.clone(),
            which,
            self.tables.clone(),
            edges,
            self.iota.clone(),
        )
    }

    /// A copy with one edge of `E_{l,l+1}` removed. Used to exercise the verifiers.
    pub fn without_edge(&self, level: usize, edge: &Edge) -> LambdaGraphSystem {
        let mut edges = self.edges.clone();
        edges[level].retain(|e| e != edge);
        Self::assemble(
            self.matrix.clone(),
            self.labels,
            self.tables.clone(),
            edges,
            self.iota.clone(),
        )
    }

    /// Incidence matrices between levels `l` and `l + 1`.
    pub fn symbol_matrices(&self, level: usize) -> Result<SymbolMatrices, GraphError> {
        if level >= self.max_level() {
            return Err(GraphError::LevelOutOfRange {
                level,
                max: self.max_level().saturating_sub(1),
            });
        }
        let (rows, cols) = (self.vertex_count(level), self.vertex_count(level + 1));
        let symbols = BracketSymbol::alphabet(self.matrix.size());
        let mut per_symbol: Vec<IntMatrix> = vec![IntMatrix::zeros(rows, cols); symbols.len()];
        for e in &self.edges[level] {
            let k = symbols.binary_search(&e.label).expect("label in alphabet");
            per_symbol[k][(e.source as usize, e.target as usize)] = 1;
        }
        let mut iota = IntMatrix::zeros(rows, cols);
        for (w, &v) in self.iota[level].iter().enumerate() {
            iota[(v as usize, w)] = 1;
        }
        let mut total = IntMatrix::zeros(rows, cols);
        for m in &per_symbol {
            total = &total + m;
        }
        Ok(SymbolMatrices {
            level,
            symbols,
            per_symbol,
            iota,
            total,
        })
    }
}

/// `A_{l,l+1}(·,γ,·)` for every `γ`, `I_{l,l+1}`, and `M_{l,l+1} = Σ_γ A_{l,l+1}(·,γ,·)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolMatrices {
    pub level: usize,
    pub symbols: Vec<BracketSymbol>,
    pub per_symbol: Vec<IntMatrix>,
    pub iota: IntMatrix,
    pub total: IntMatrix,
}

impl SymbolMatrices {
    pub fn symbol(&self, s: BracketSymbol) -> &IntMatrix {
        let k = self.symbols.binary_search(&s).expect("label in alphabet");
        &self.per_symbol[k]
    }
}

fn level_edges(a: &TransitionMatrix, lower: &WordTable, upper: &WordTable) -> Vec<Edge> {
    let l = lower.level();
    let n = a.size();
    let mut edges = Vec::new();
    for (src, word) in lower.words().iter().enumerate() {
        let src = src as u32;
        // α_j: μ -> jμ
        for j in 0..n {
            let admissible = match word.first() {
                None => true,
                Some(h) => a.get(j, h),
            };
            if admissible {
                let target = upper
                    .index_of(&word.prepend(j))
                    .expect("admissible word is tabulated") as u32
                    - 1;
                edges.push(Edge {
                    source: src,
                    label: BracketSymbol::alpha(j),
                    target,
                });
            }
        }
        // β_j: j·u -> u·a·b
        if l == 0 {
            for j in 0..n {
                for i in a.successors(j) {
                    edges.push(Edge {
                        source: src,
                        label: BracketSymbol::beta(j),
                        target: i as u32,
                    });
                }
            }
        } else {
            let j = word.first().expect("nonempty at l >= 1");
            let u = &word.symbols()[1..];
            for t in upper_extensions(upper, u) {
                let head = upper.words()[t].first().expect("nonempty");
                if l == 1 && !a.get(j, head) {
                    continue;
                }
                edges.push(Edge {
                    source: src,
                    label: BracketSymbol::beta(j),
                    target: t as u32,
                });
            }
        }
    }
    edges.sort_unstable();
    edges
}

/// Ranks at the upper level (length `|u| + 2`) of the words starting with `u`.
fn upper_extensions(upper: &WordTable, u: &[u8]) -> std::ops::Range<usize> {
    debug_assert_eq!(upper.level(), u.len() + 2);
    upper.prefix_range(u)
}

fn level_iota(lower: &WordTable, upper: &WordTable) -> Vec<u32> {
    upper
        .words()
        .iter()
        .map(|w| lower.index_of(&w.drop_last()).expect("prefix is admissible") as u32 - 1)
        .collect()
}
