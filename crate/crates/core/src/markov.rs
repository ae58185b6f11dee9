//! Transition matrices and the words of the topological Markov shift they define.
//!
//! Symbols are stored 0-based internally. Everything that faces a user
//! (display, ranks, error payloads, JSON) is 1-based.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix must be at least 2x2, got {0}x{0}")]
    SizeTooSmall(usize),
    #[error("matrix is not square: expected {expected} entries in row {row}, found {found}")]
    NotSquare {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("declared size n = {declared} but {found} rows were given")]
    RowCountMismatch { declared: usize, found: usize },
    #[error("entry ({0}, {1}) is not 0 or 1")]
    NonBinaryEntry(usize, usize),
    #[error("row {0} is identically zero")]
    ZeroRow(usize),
    #[error("column {0} is identically zero")]
    ZeroColumn(usize),
    #[error("matrix is not irreducible")]
    NotIrreducible,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("word {0} is not admissible")]
    NotAdmissible(MarkovWord),
    #[error("word {word} has length {found}, expected {expected}")]
    WrongLength {
        word: MarkovWord,
        expected: usize,
        found: usize,
    },
    #[error("symbol {symbol} is outside the alphabet 1..={n}")]
    SymbolOutOfRange { symbol: usize, n: usize },
    #[error("rank {rank} is outside 1..={count}")]
    RankOutOfRange { rank: usize, count: usize },
}

/// A square 0/1 matrix with no zero rows or columns.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TransitionMatrix {
    n: usize,
    entries: Vec<bool>,
}

impl TransitionMatrix {
    /// Validates a raw integer array. Rows are checked for shape and entries
    /// first, then zero rows, then zero columns.
    pub fn new(rows: &[Vec<i64>]) -> Result<Self, MatrixError> {
        let n = rows.len();
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(MatrixError::NotSquare {
                    row: r + 1,
                    expected: n,
                    found: row.len(),
                });
            }
        }
        if n < 2 {
            return Err(MatrixError::SizeTooSmall(n));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                match x {
                    0 => entries.push(false),
                    1 => entries.push(true),
                    _ => return Err(MatrixError::NonBinaryEntry(i + 1, j + 1)),
                }
            }
        }
        let m = TransitionMatrix { n, entries };
        if let Some(i) = (0..n).find(|&i| (0..n).all(|j| !m.get(i, j))) {
            return Err(MatrixError::ZeroRow(i + 1));
        }
        if let Some(j) = (0..n).find(|&j| (0..n).all(|i| !m.get(i, j))) {
            return Err(MatrixError::ZeroColumn(j + 1));
        }
        Ok(m)
    }

    /// The Fibonacci matrix `[[1,1],[1,0]]`.
    pub fn fibonacci() -> Self {
        Self::new(&[vec![1, 1], vec![1, 0]]).expect("valid")
    }

    /// The all-ones `n x n` matrix, whose Markov-Dyck shift is the Dyck shift on `n` bracket pairs.
    pub fn full(n: usize) -> Result<Self, MatrixError> {
        Self::new(&vec![vec![1; n]; n])
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Entry at 0-based position.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.entries[i * self.n + j]
    }

    /// 0-based successors of `i` in increasing order.
    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.get(i, j))
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) as i64).collect())
            .collect()
    }

    pub fn is_permutation(&self) -> bool {
        (0..self.n).all(|i| self.successors(i).count() == 1)
            && (0..self.n).all(|j| (0..self.n).filter(|&i| self.get(i, j)).count() == 1)
    }

    pub fn is_admissible(&self, word: &MarkovWord) -> bool {
        word.0.iter().all(|&s| (s as usize) < self.n)
            && word.0.windows(2).all(|p| self.get(p[0] as usize, p[1] as usize))
    }

    pub fn from_json(text: &str) -> Result<Self, MatrixFileError> {
        let file: MatrixFile = serde_json::from_str(text)?;
        if file.rows.len() != file.n {
            return Err(MatrixError::RowCountMismatch {
                declared: file.n,
                found: file.rows.len(),
            }
            .into());
        }
        Ok(Self::new(&file.rows)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MatrixFile {
            n: self.n,
            rows: self.rows(),
        })
        .expect("matrix serializes")
    }
}

impl fmt::Debug for TransitionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TransitionMatrix{:?}", self.rows())
    }
}

/// On-disk matrix format: `{"n": 2, "rows": [[1,1],[1,0]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    pub n: usize,
    pub rows: Vec<Vec<i64>>,
}

#[derive(Debug, Error)]
pub enum MatrixFileError {
    #[error("malformed matrix file: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] MatrixError),
}

/// A finite word over the symbols of the Markov shift, 0-based internally.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MarkovWord(pub Vec<u8>);

impl MarkovWord {
    pub fn empty() -> Self {
        MarkovWord(Vec::new())
    }

    /// Builds a word from 1-based symbols.
    pub fn from_one_based(symbols: &[usize]) -> Self {
        MarkovWord(symbols.iter().map(|&s| (s - 1) as u8).collect())
    }

    /// Parses `"121"` or `"1.12.3"` (dot-separated when symbols exceed 9).
    pub fn parse(text: &str, n: usize) -> Result<Self, WordError> {
        let text = text.trim();
        let parts: Vec<usize> = if text.contains('.') {
            text.split('.')
                .map(|p| p.trim().parse::<usize>().unwrap_or(0))
                .collect()
        } else {
            text.chars()
                .map(|c| c.to_digit(10).map_or(0, |d| d as usize))
                .collect()
        };
        for &s in &parts {
            if s == 0 || s > n {
                return Err(WordError::SymbolOutOfRange { symbol: s, n });
            }
        }
        Ok(Self::from_one_based(&parts))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().map(|&s| s as usize)
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().map(|&s| s as usize)
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&s| s as usize + 1).collect()
    }

    /// The word with its rightmost symbol removed.
    pub fn drop_last(&self) -> MarkovWord {
        let mut v = self.0.clone();
        v.pop();
        MarkovWord(v)
    }

    pub fn prefix(&self, len: usize) -> MarkovWord {
        MarkovWord(self.0[..len].to_vec())
    }

    pub fn prepend(&self, symbol: usize) -> MarkovWord {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(symbol as u8);
        v.extend_from_slice(&self.0);
        MarkovWord(v)
    }

    pub fn reversed(&self) -> MarkovWord {
        MarkovWord(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for MarkovWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        let wide = self.0.iter().any(|&s| s >= 9);
        for (k, s) in self.0.iter().enumerate() {
            if wide && k > 0 {
                f.write_str(".")?;
            }
            write!(f, "{}", s + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for MarkovWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MarkovWord({self})")
    }
}

/// The admissible words of one length, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordTable {
    level: usize,
    words: Vec<MarkovWord>,
}

impl WordTable {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[MarkovWord] {
        &self.words
    }

    /// 1-based lexicographic rank.
    pub fn index_of(&self, word: &MarkovWord) -> Result<usize, WordError> {
        if word.len() != self.level {
            return Err(WordError::WrongLength {
                word: word.clone(),
                expected: self.level,
                found: word.len(),
            });
        }
        self.words
            .binary_search(word)
            .map(|k| k + 1)
            .map_err(|_| WordError::NotAdmissible(word.clone()))
    }

    /// Inverse of [`WordTable::index_of`].
    pub fn word_at(&self, rank: usize) -> Result<&MarkovWord, WordError> {
        if rank == 0 || rank > self.words.len() {
            return Err(WordError::RankOutOfRange {
                rank,
                count: self.words.len(),
            });
        }
        Ok(&self.words[rank - 1])
    }

    /// 0-based half-open range of the words that start with `prefix`.
    pub fn prefix_range(&self, prefix: &[u8]) -> std::ops::Range<usize> {
        let lo = self.words.partition_point(|w| w.0.as_slice() < prefix);
        let hi = lo + self.words[lo..].partition_point(|w| w.0.starts_with(prefix));
        lo..hi
    }
}

/// Admissible words of length `level`, lexicographic from the left.
pub fn enumerate_words(a: &TransitionMatrix, level: usize) -> WordTable {
    let mut words = vec![MarkovWord::empty()];
    for _ in 0..level {
        words = extend_words(a, &words);
    }
    WordTable { level, words }
}

/// All words of the next length, given a lexicographically sorted table.
/// Extending in symbol order keeps the output sorted.
pub(crate) fn extend_words(a: &TransitionMatrix, words: &[MarkovWord]) -> Vec<MarkovWord> {
    let mut next = Vec::new();
    for w in words {
        let succ: Vec<usize> = match w.last() {
            None => (0..a.size()).collect(),
            Some(last) => a.successors(last).collect(),
        };
        for s in succ {
            let mut v = w.0.clone();
            v.push(s as u8);
            next.push(MarkovWord(v));
        }
    }
    next
}

pub(crate) fn table_from_words(level: usize, words: Vec<MarkovWord>) -> WordTable {
    WordTable { level, words }
}

/// Outcome of the strong-connectivity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducibility {
    /// A connecting word (at least one transition) for every ordered pair `(i, j)`,
    /// indexed `[i][j]` 0-based; each word starts at `i` and ends at `j`.
    Irreducible(Vec<Vec<MarkovWord>>),
    /// The first ordered pair (1-based) with no connecting word.
    Disconnected(usize, usize),
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible(_))
    }
}

pub fn is_irreducible(a: &TransitionMatrix) -> Irreducibility {
    let n = a.size();
    let mut table = Vec::with_capacity(n);
    for i in 0..n {
        // BFS over words of length >= 2 starting at i.
        let mut parent: Vec<Option<usize>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for j in a.successors(i) {
            seen[j] = true;
            parent[j] = Some(i);
            queue.push_back(j);
        }
        while let Some(p) = queue.pop_front() {
            for q in a.successors(p) {
                if !seen[q] {
                    seen[q] = true;
                    parent[q] = Some(p);
                    queue.push_back(q);
                }
            }
        }
        if let Some(j) = (0..n).find(|&j| !seen[j]) {
            return Irreducibility::Disconnected(i + 1, j + 1);
        }
        let row = (0..n)
            .map(|j| {
                let mut path = vec![j as u8];
                let mut cur = j;
                loop {
                    let p = parent[cur].expect("reached");
                    path.push(p as u8);
                    if p == i && path.len() >= 2 {
                        break;
                    }
                    cur = p;
                }
                path.reverse();
                MarkovWord(path)
            })
            .collect();
        table.push(row);
    }
    Irreducibility::Irreducible(table)
}

/// Two distinct admissible words of equal length that start at the same
/// symbol and end at the same symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionIWitness {
    pub symbol: usize,
    pub first: MarkovWord,
    pub second: MarkovWord,
}

impl ConditionIWitness {
    pub fn is_valid(&self, a: &TransitionMatrix) -> bool {
        let (m, v) = (&self.first, &self.second);
        m != v
            && m.len() == v.len()
            && a.is_admissible(m)
            && a.is_admissible(v)
            && m.first() == Some(self.symbol - 1)
            && v.first() == Some(self.symbol - 1)
            && m.last() == v.last()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionIReport {
    /// Indexed by 0-based symbol; `None` where no witness exists.
    pub witnesses: Vec<Option<ConditionIWitness>>,
}

impl ConditionIReport {
    pub fn holds(&self) -> bool {
        self.witnesses.iter().all(Option::is_some)
    }
}

/// Decides, for each symbol `i`, whether two distinct equal-length admissible
/// words from `i` end at a common symbol.
///
/// Runs BFS over triples `(p, q, diverged)` starting at `(i, i, false)`; a
/// witness is a path to some `(x, x, true)`. The state space has `2 N^2`
/// elements, so the search is exact.
pub fn condition_i(a: &TransitionMatrix) -> ConditionIReport {
    let n = a.size();
    let witnesses = (0..n).map(|i| condition_i_from(a, i)).collect();
    ConditionIReport { witnesses }
}

fn condition_i_from(a: &TransitionMatrix, i: usize) -> Option<ConditionIWitness> {
    let n = a.size();
    let key = |p: usize, q: usize, d: bool| (p * n + q) * 2 + d as usize;
    let mut parent: Vec<Option<usize>> = vec![None; 2 * n * n];
    let start = key(i, i, false);
    let mut seen = vec![false; 2 * n * n];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        let d = s % 2 == 1;
        let p = (s / 2) / n;
        let q = (s / 2) % n;
        for p2 in a.successors(p) {
            for q2 in a.successors(q) {
                let d2 = d || p2 != q2;
                let t = key(p2, q2, d2);
                if seen[t] {
                    continue;
                }
                seen[t] = true;
                parent[t] = Some(s);
                if d2 && p2 == q2 {
                    return Some(unwind(i, t, &parent, n));
                }
                queue.push_back(t);
            }
        }
    }
    None
}

fn unwind(i: usize, end: usize, parent: &[Option<usize>], n: usize) -> ConditionIWitness {
    let mut first = Vec::new();
    let mut second = Vec::new();
    let mut cur = Some(end);
    while let Some(s) = cur {
        first.push(((s / 2) / n) as u8);
        second.push(((s / 2) % n) as u8);
        cur = parent[s];
    }
    first.reverse();
    second.reverse();
    let (first, second) = if first <= second {
        (first, second)
    } else {
        (second, first)
    };
    ConditionIWitness {
        symbol: i + 1,
        first: MarkovWord(first),
        second: MarkovWord(second),
    }
}

/// Logarithm of the Perron eigenvalue.
///
/// Power iteration runs on `A + I`, which is primitive whenever `A` is
/// irreducible, and stops once the Collatz-Wielandt bounds
/// `min (Bv)_i / v_i <= rho(B) <= max (Bv)_i / v_i` are within `1e-12`.
pub fn entropy(a: &TransitionMatrix) -> Result<f64, MatrixError> {
    if !is_irreducible(a).is_irreducible() {
        return Err(MatrixError::NotIrreducible);
    }
    let n = a.size();
    let mut v = vec![1.0f64; n];
    let mut estimate = 0.0;
    for _ in 0..100_000 {
        let w: Vec<f64> = (0..n)
            .map(|i| v[i] + a.successors(i).map(|j| v[j]).sum::<f64>())
            .collect();
        let ratios = w.iter().zip(&v).map(|(x, y)| x / y);
        let (lo, hi) = ratios.fold((f64::INFINITY, 0.0f64), |(lo, hi), r| {
            (lo.min(r), hi.max(r))
        });
        estimate = 0.5 * (lo + hi);
        let norm = w.iter().cloned().fold(0.0, f64::max);
        v = w.into_iter().map(|x| x / norm).collect();
        if hi - lo < 1e-12 {
            break;
        }
    }
    Ok((estimate - 1.0).ln())
}
