//! Bracket words of the Markov-Dyck shift and their recognizer.
//!
//! A word `γ_1 ⋯ γ_n` over `{α_i, β_i}` is read as an operator product acting
//! on one-sided Markov sequences from the right: `β_i` prepends `i`, `α_i`
//! deletes a leading `i`. The word is admissible when the product is not the
//! zero operator. [`reduce`] decides this with a stack and a constraint set;
//! [`oracle_admissible`] decides it by literal simulation on finite prefixes
//! and is kept independent of [`reduce`] for cross-checking.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::markov::{enumerate_words, MarkovWord, TransitionMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DyckError {
    #[error("bad token {0:?}: expected a<i> or b<i>")]
    BadToken(String),
    #[error("bracket index {index} exceeds alphabet size {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("predecessor length {k} exceeds target length {l}")]
    LengthExceedsTarget { k: usize, l: usize },
    #[error("word {0} is not admissible in the Markov shift")]
    NotAdmissible(MarkovWord),
    #[error("condition (I) does not hold for this matrix")]
    ConditionIRequired,
    #[error("requested {requested} words but only {available} exist at this length")]
    NotEnoughWords { requested: usize, available: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BracketKind {
    Alpha,
    Beta,
}

/// `α_i` or `β_i`, with a 0-based index. Ordered α before β, then by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BracketSymbol {
    pub kind: BracketKind,
    pub index: u8,
}

impl BracketSymbol {
    pub fn alpha(index: usize) -> Self {
        BracketSymbol {
            kind: BracketKind::Alpha,
            index: index as u8,
        }
    }

    pub fn beta(index: usize) -> Self {
        BracketSymbol {
            kind: BracketKind::Beta,
            index: index as u8,
        }
    }

    pub fn is_alpha(self) -> bool {
        self.kind == BracketKind::Alpha
    }

    pub fn idx(self) -> usize {
        self.index as usize
    }

    /// All `2N` symbols in order.
    pub fn alphabet(n: usize) -> Vec<BracketSymbol> {
        (0..n)
            .map(Self::alpha)
            .chain((0..n).map(Self::beta))
            .collect()
    }
}

impl fmt::Display for BracketSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = if self.is_alpha() { 'a' } else { 'b' };
        write!(f, "{c}{}", self.index + 1)
    }
}

impl FromStr for BracketSymbol {
    type Err = DyckError;

    fn from_str(tok: &str) -> Result<Self, Self::Err> {
        let bad = || DyckError::BadToken(tok.to_string());
        let mut chars = tok.chars();
        let kind = match chars.next() {
            Some('a') => BracketKind::Alpha,
            Some('b') => BracketKind::Beta,
            _ => return Err(bad()),
        };
        let rest = chars.as_str();
        if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let index: usize = rest.parse().map_err(|_| bad())?;
        if index == 0 || index > 255 {
            return Err(bad());
        }
        Ok(BracketSymbol {
            kind,
            index: (index - 1) as u8,
        })
    }
}

/// A finite bracket word, written `a1 b1 b2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DyckWord(pub Vec<BracketSymbol>);

impl DyckWord {
    pub fn empty() -> Self {
        DyckWord(Vec::new())
    }

    /// Parses whitespace-separated tokens and checks indices against `n`.
    pub fn parse(text: &str, n: usize) -> Result<Self, DyckError> {
        let word = text.parse::<DyckWord>()?;
        word.check_range(n)?;
        Ok(word)
    }

    pub fn check_range(&self, n: usize) -> Result<(), DyckError> {
        match self.0.iter().find(|s| s.idx() >= n) {
            Some(s) => Err(DyckError::IndexOutOfRange {
                index: s.idx() + 1,
                n,
            }),
            None => Ok(()),
        }
    }

    /// `β_{μ_1} ⋯ β_{μ_l}`.
    pub fn betas(word: &MarkovWord) -> Self {
        DyckWord(word.symbols().iter().map(|&s| BracketSymbol::beta(s as usize)).collect())
    }

    /// `α_{μ_1} ⋯ α_{μ_l}`.
    pub fn alphas(word: &MarkovWord) -> Self {
        DyckWord(word.symbols().iter().map(|&s| BracketSymbol::alpha(s as usize)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &DyckWord) -> DyckWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        DyckWord(v)
    }
}

impl FromStr for DyckWord {
    type Err = DyckError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        text.split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<_>, _>>()
            .map(DyckWord)
    }
}

impl fmt::Display for DyckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// State of the right-to-left reduction.
///
/// `stack` holds pushed symbols, top last. `constraint` is a bitmask of the
/// symbols still allowed at the head of the underlying Markov sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ReductionOutcome {
    Dead,
    Alive { stack: Vec<u8>, constraint: Constraint },
}

impl ReductionOutcome {
    pub fn is_alive(&self) -> bool {
        matches!(self, ReductionOutcome::Alive { .. })
    }
}

impl fmt::Display for ReductionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionOutcome::Dead => f.write_str("Dead"),
            ReductionOutcome::Alive { stack, constraint } => {
                // Printed top-first, i.e. in the order the symbols sit at the head.
                let stack = MarkovWord(stack.iter().rev().copied().collect());
                write!(f, "Alive(stack={stack}, constraint={constraint})")
            }
        }
    }
}

/// Nonempty subset of `{1..N}` as a bitmask (N <= 128).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Constraint(pub u128);

impl Constraint {
    pub fn all(n: usize) -> Self {
        assert!(n <= 128, "alphabets beyond 128 symbols are unsupported");
        if n == 128 {
            Constraint(u128::MAX)
        } else {
            Constraint((1u128 << n) - 1)
        }
    }

    pub fn row(a: &TransitionMatrix, i: usize) -> Self {
        Constraint(a.successors(i).fold(0, |m, j| m | (1u128 << j)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    /// 1-based members.
    pub fn members(self) -> Vec<usize> {
        (0..128).filter(|&i| self.contains(i)).map(|i| i + 1).collect()
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.members().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", m.join(","))
    }
}

/// Incremental reducer. Feed symbols right to left with [`Reducer::push_left`].
#[derive(Debug, Clone)]
pub(crate) struct Reducer<'a> {
    a: &'a TransitionMatrix,
    stack: Vec<u8>,
    constraint: Constraint,
}

impl<'a> Reducer<'a> {
    pub(crate) fn new(a: &'a TransitionMatrix) -> Self {
        Reducer {
            a,
            stack: Vec::new(),
            constraint: Constraint::all(a.size()),
        }
    }

    /// Applies one symbol on the left of everything seen so far. Returns
    /// `false` (leaving the reducer unusable) when the word dies.
    pub(crate) fn push_left(&mut self, sym: BracketSymbol) -> bool {
        let i = sym.idx();
        match (sym.kind, self.stack.last().copied()) {
            (BracketKind::Beta, Some(h)) => {
                if !self.a.get(i, h as usize) {
                    return false;
                }
                self.stack.push(i as u8);
            }
            (BracketKind::Beta, None) => {
                let c = Constraint(self.constraint.0 & Constraint::row(self.a, i).0);
                if c.0 == 0 {
                    return false;
                }
                self.constraint = c;
                self.stack.push(i as u8);
            }
            (BracketKind::Alpha, Some(h)) => {
                if h as usize != i {
                    return false;
                }
                self.stack.pop();
            }
            (BracketKind::Alpha, None) => {
                if !self.constraint.contains(i) {
                    return false;
                }
                self.constraint = Constraint::row(self.a, i);
            }
        }
        true
    }

    fn outcome(self) -> ReductionOutcome {
        ReductionOutcome::Alive {
            stack: self.stack,
            constraint: self.constraint,
        }
    }
}

/// Reduces a word right to left to its canonical partial-action state.
pub fn reduce(w: &DyckWord, a: &TransitionMatrix) -> Result<ReductionOutcome, DyckError> {
    w.check_range(a.size())?;
    let mut r = Reducer::new(a);
    for &s in w.0.iter().rev() {
        if !r.push_left(s) {
            return Ok(ReductionOutcome::Dead);
        }
    }
    Ok(r.outcome())
}

pub fn admissible(w: &DyckWord, a: &TransitionMatrix) -> Result<bool, DyckError> {
    Ok(reduce(w, a)?.is_alive())
}

/// Brute-force admissibility: tries every admissible Markov prefix of length
/// `|w|` and simulates the word on it as literal list edits.
pub fn oracle_admissible(w: &DyckWord, a: &TransitionMatrix) -> Result<bool, DyckError> {
    w.check_range(a.size())?;
    if w.is_empty() {
        return Ok(true);
    }
    let prefixes = enumerate_words(a, w.len());
    Ok(prefixes.words().iter().any(|mu| simulate(w, a, mu)))
}

fn simulate(w: &DyckWord, a: &TransitionMatrix, mu: &MarkovWord) -> bool {
    // Head of the sequence is the front of the list.
    let mut list: std::collections::VecDeque<u8> = mu.symbols().iter().copied().collect();
    for s in w.0.iter().rev() {
        let i = s.idx() as u8;
        let head = match list.front() {
            Some(&h) => h,
            None => return false,
        };
        if s.is_alpha() {
            if head != i {
                return false;
            }
            list.pop_front();
        } else {
            if !a.get(i as usize, head as usize) {
                return false;
            }
            list.push_front(i);
        }
    }
    true
}

/// Length-`k` words that may precede `β_{μ_1} ⋯ β_{μ_l}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredecessorSet {
    pub k: usize,
    pub target: MarkovWord,
    pub members: BTreeSet<DyckWord>,
}

impl PredecessorSet {
    /// Members as strings, in lexicographic order.
    pub fn to_strings(&self) -> Vec<String> {
        self.members.iter().map(|w| w.to_string()).collect()
    }
}

/// `{ γ ∈ Σ^k : γ · β_μ admissible }`.
///
/// Candidates are grown right to left on top of the reduction state of
/// `β_μ`, pruning as soon as a suffix dies. Suffixes of admissible words are
/// admissible, so the pruned search visits every member.
pub fn predecessor_set(
    k: usize,
    target: &MarkovWord,
    a: &TransitionMatrix,
) -> Result<PredecessorSet, DyckError> {
    if k > target.len() {
        return Err(DyckError::LengthExceedsTarget { k, l: target.len() });
    }
    if !a.is_admissible(target) {
        return Err(DyckError::NotAdmissible(target.clone()));
    }
    let mut base = Reducer::new(a);
    for &s in target.symbols().iter().rev() {
        let ok = base.push_left(BracketSymbol::beta(s as usize));
        debug_assert!(ok);
    }
    let alphabet = BracketSymbol::alphabet(a.size());
    let mut members = BTreeSet::new();
    let mut suffix = Vec::with_capacity(k);
    grow(&base, k, &alphabet, &mut suffix, &mut members);
    Ok(PredecessorSet {
        k,
        target: target.clone(),
        members,
    })
}

fn grow(
    state: &Reducer<'_>,
    remaining: usize,
    alphabet: &[BracketSymbol],
    suffix: &mut Vec<BracketSymbol>,
    out: &mut BTreeSet<DyckWord>,
) {
    if remaining == 0 {
        out.insert(DyckWord(suffix.iter().rev().copied().collect()));
        return;
    }
    for &s in alphabet {
        let mut next = state.clone();
        if next.push_left(s) {
            suffix.push(s);
            grow(&next, remaining - 1, alphabet, suffix, out);
            suffix.pop();
        }
    }
}

/// Finite evidence that the predecessor sets of `β`-words are pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonsoficEvidence {
    pub level: usize,
    pub words: Vec<MarkovWord>,
    /// `(i, j, γ)`: γ precedes `β(words[i])` but not `β(words[j])`, 0-based positions.
    pub separators: Vec<(usize, usize, DyckWord)>,
    /// Number of distinct `Γ^l` sets over all of `B_l`.
    pub distinct_sets: usize,
}

/// Picks the first `count` words of `B_l` and separates each ordered pair by
/// the reversed α-word of the first one.
pub fn nonsofic_witnesses(
    a: &TransitionMatrix,
    count: usize,
    level: usize,
) -> Result<NonsoficEvidence, DyckError> {
    if !crate::markov::condition_i(a).holds() {
        return Err(DyckError::ConditionIRequired);
    }
    let table = enumerate_words(a, level);
    if count > table.len() {
        return Err(DyckError::NotEnoughWords {
            requested: count,
            available: table.len(),
        });
    }
    let words: Vec<MarkovWord> = table.words()[..count].to_vec();
    let mut separators = Vec::new();
    for (i, wi) in words.iter().enumerate() {
        let sep = DyckWord::alphas(&wi.reversed());
        for (j, wj) in words.iter().enumerate() {
            if i != j {
                separators.push((i, j, sep.clone()));
                debug_assert!(admissible(&sep.concat(&DyckWord::betas(wi)), a).unwrap());
                debug_assert!(!admissible(&sep.concat(&DyckWord::betas(wj)), a).unwrap());
            }
        }
    }
    Ok(NonsoficEvidence {
        level,
        words,
        separators,
        distinct_sets: distinct_predecessor_sets(a, level),
    })
}

/// Number of distinct sets `Γ^l(β_μ)` as `μ` ranges over `B_l`.
pub fn distinct_predecessor_sets(a: &TransitionMatrix, level: usize) -> usize {
    let table = enumerate_words(a, level);
    table
        .words()
        .iter()
        .map(|w| predecessor_set(level, w, a).expect("admissible").members)
        .collect::<BTreeSet<_>>()
        .len()
}
