//! Path searches: predecessor sets, the presented language, and the bounded
//! λ-condition (I) and λ-irreducibility verifiers.

use std::collections::{BTreeMap, BTreeSet};

use super::{GraphError, LambdaGraphSystem};
use crate::dyck::{BracketSymbol, DyckWord};

/// Label sequence of a path, read from source to terminal.
pub type LabelPath = Vec<BracketSymbol>;

impl LambdaGraphSystem {
    /// Label sequences of all length-`k` paths ending at the vertex with
    /// 1-based `rank` at `level`.
    pub fn predecessor_set(
        &self,
        k: usize,
        level: usize,
        rank: usize,
    ) -> Result<BTreeSet<DyckWord>, GraphError> {
        self.check_rank(level, rank)?;
        if k > level {
            return Err(GraphError::LevelOutOfRange { level: k, max: level });
        }
        let mut out = BTreeSet::new();
        let mut labels = Vec::with_capacity(k);
        self.collect_backward(level, rank - 1, k, &mut labels, &mut out);
        Ok(out)
    }

    fn collect_backward(
        &self,
        level: usize,
        v: usize,
        remaining: usize,
        labels: &mut Vec<BracketSymbol>,
        out: &mut BTreeSet<DyckWord>,
    ) {
        if remaining == 0 {
            out.insert(DyckWord(labels.iter().rev().copied().collect()));
            return;
        }
        for e in self.in_edges(level - 1, v) {
            labels.push(e.label);
            self.collect_backward(level - 1, e.source as usize, remaining - 1, labels, out);
            labels.pop();
        }
    }

    /// Union of the predecessor sets of all level-`k` vertices: every label
    /// word of a path from level 0 to level `k`.
    pub fn path_language(&self, k: usize) -> Result<BTreeSet<DyckWord>, GraphError> {
        self.check_level(k)?;
        let mut out = BTreeSet::new();
        for r in 1..=self.vertex_count(k) {
            out.extend(self.predecessor_set(k, k, r)?);
        }
        Ok(out)
    }

    /// For every vertex at `level`, looks for two paths of equal length at
    /// most `bound` with distinct labels and a common terminal.
    ///
    /// Returns one entry per vertex (0-based rank order).
    pub fn verify_lambda_condition_i(
        &self,
        level: usize,
        bound: usize,
    ) -> Result<Vec<LambdaConditionI>, GraphError> {
        self.check_level(level + bound)?;
        Ok((0..self.vertex_count(level))
            .map(|v| self.condition_i_from(level, v, bound))
            .collect())
    }

    fn condition_i_from(&self, level: usize, v: usize, bound: usize) -> LambdaConditionI {
        // One label path per reachable terminal; a second, different path to
        // the same terminal is a witness.
        let mut frontier: BTreeMap<usize, LabelPath> = BTreeMap::from([(v, Vec::new())]);
        for step in 0..bound {
            let lv = level + step;
            let mut next: BTreeMap<usize, LabelPath> = BTreeMap::new();
            for (&u, path) in &frontier {
                for e in self.out_edges(lv, u) {
                    let mut p = path.clone();
                    p.push(e.label);
                    let t = e.target as usize;
                    match next.get(&t) {
                        Some(prev) if *prev != p => {
                            return LambdaConditionI::Witness {
                                terminal_level: lv + 1,
                                terminal_rank: t + 1,
                                first: prev.clone(),
                                second: p,
                            };
                        }
                        Some(_) => {}
                        None => {
                            next.insert(t, p);
                        }
                    }
                }
            }
            frontier = next;
        }
        LambdaConditionI::NotFoundWithinBound
    }

    /// For every ordered pair `(u, v)` at `level`, the least `L` in `1..=bound`
    /// such that each `w` at `level + L` with `ι^L(w) = u` is reachable from `v`.
    pub fn verify_lambda_irreducibility(
        &self,
        level: usize,
        bound: usize,
    ) -> Result<IrreducibilityTable, GraphError> {
        self.check_level(level + bound)?;
        let m = self.vertex_count(level);
        let mut entries = Vec::with_capacity(m * m);
        for v in 0..m {
            let reach = self.forward_reach(level, v, bound);
            for u in 0..m {
                entries.push(IrreducibilityEntry {
                    from: v + 1,
                    to: u + 1,
                    result: self.pair_reach(level, u, &reach),
                });
            }
        }
        Ok(IrreducibilityTable {
            level,
            bound,
            entries,
        })
    }

    /// `reach[d][w]` = incoming edge index on a path of length `d` from the
    /// source, or `None` if `w` at `level + d` is unreachable.
    fn forward_reach(&self, level: usize, v: usize, bound: usize) -> Vec<Vec<Option<u32>>> {
        let mut reach: Vec<Vec<Option<u32>>> = Vec::with_capacity(bound + 1);
        let mut start = vec![None; self.vertex_count(level)];
        start[v] = Some(u32::MAX);
        reach.push(start);
        for d in 0..bound {
            let lv = level + d;
            let mut next = vec![None; self.vertex_count(lv + 1)];
            for (u, seen) in reach[d].iter().enumerate() {
                if seen.is_none() {
                    continue;
                }
                let base = self.out_start[lv][u];
                for (k, e) in self.out_edges(lv, u).iter().enumerate() {
                    let slot = &mut next[e.target as usize];
                    if slot.is_none() {
                        *slot = Some(base + k as u32);
                    }
                }
            }
            reach.push(next);
        }
        reach
    }

    fn pair_reach(&self, level: usize, u: usize, reach: &[Vec<Option<u32>>]) -> PairReach {
        // Vertices above u: iterate the ι-preimage level by level.
        let mut above = vec![u];
        for d in 1..reach.len() {
            let lv = level + d;
            above = self.iota[lv - 1]
                .iter()
                .enumerate()
                .filter(|(_, &down)| above.binary_search(&(down as usize)).is_ok())
                .map(|(w, _)| w)
                .collect();
            if above.iter().all(|&w| reach[d][w].is_some()) {
                let witnesses = above
                    .iter()
                    .map(|&w| (w + 1, self.unwind(level, d, w, reach)))
                    .collect();
                return PairReach::Found {
                    length: d,
                    witnesses,
                };
            }
        }
        PairReach::NotFoundWithinBound
    }

    fn unwind(&self, level: usize, depth: usize, w: usize, reach: &[Vec<Option<u32>>]) -> LabelPath {
        let mut labels = Vec::with_capacity(depth);
        let mut cur = w;
        for d in (1..=depth).rev() {
            let e = &self.edges[level + d - 1][reach[d][cur].expect("reached") as usize];
            labels.push(e.label);
            cur = e.source as usize;
        }
        labels.reverse();
        labels
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LambdaConditionI {
    Witness {
        terminal_level: usize,
        terminal_rank: usize,
        first: LabelPath,
        second: LabelPath,
    },
    /// Inconclusive: nothing within the bound, which does not refute the property.
    NotFoundWithinBound,
}

impl LambdaConditionI {
    pub fn is_witness(&self) -> bool {
        matches!(self, LambdaConditionI::Witness { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairReach {
    /// `witnesses` lists `(1-based rank at level + length, path labels)`.
    Found {
        length: usize,
        witnesses: Vec<(usize, LabelPath)>,
    },
    NotFoundWithinBound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibilityEntry {
    /// Source vertex `v` (1-based).
    pub from: usize,
    /// Target vertex `u` whose ι-preimages must all be reached (1-based).
    pub to: usize,
    pub result: PairReach,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibilityTable {
    pub level: usize,
    pub bound: usize,
    pub entries: Vec<IrreducibilityEntry>,
}

impl IrreducibilityTable {
    pub fn all_found(&self) -> bool {
        self.entries
            .iter()
            .all(|e| matches!(e.result, PairReach::Found { .. }))
    }

    pub fn get(&self, from: usize, to: usize) -> Option<&PairReach> {
        self.entries
            .iter()
            .find(|e| e.from == from && e.to == to)
            .map(|e| &e.result)
    }
}

#[cfg(test)]
mod tests {
    use super::super::Labels;
    use super::*;
    use crate::markov::TransitionMatrix;

    fn strings(set: &BTreeSet<DyckWord>) -> Vec<String> {
        set.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn graph_predecessor_examples() {
        let g = LambdaGraphSystem::build(&TransitionMatrix::fibonacci(), 3).unwrap();
        assert_eq!(strings(&g.predecessor_set(1, 2, 1).unwrap()), ["a1", "b1", "b2"]);
        assert_eq!(strings(&g.predecessor_set(1, 2, 3).unwrap()), ["a2", "b1"]);
        assert_eq!(strings(&g.predecessor_set(0, 2, 3).unwrap()), [""]);
        assert!(g.predecessor_set(3, 2, 1).is_err());
        assert!(g.predecessor_set(1, 2, 4).is_err());
    }

    #[test]
    fn path_language_examples() {
        let g = LambdaGraphSystem::build(&TransitionMatrix::fibonacci(), 2).unwrap();
        assert_eq!(strings(&g.path_language(1).unwrap()), ["a1", "a2", "b1", "b2"]);
        let two = g.path_language(2).unwrap();
        assert!(two.contains(&"a2 a1".parse().unwrap()));
        assert!(!two.contains(&"a1 b2".parse().unwrap()));
        assert_eq!(strings(&g.path_language(0).unwrap()), [""]);
        assert_eq!(
            strings(&g.subsystem(Labels::Plus).path_language(2).unwrap()),
            ["b1 b1", "b1 b2", "b2 b1"]
        );
        assert_eq!(
            strings(&g.subsystem(Labels::Minus).path_language(2).unwrap()),
            ["a1 a1", "a1 a2", "a2 a1"]
        );
    }

    #[test]
    fn lambda_condition_i() {
        let f = LambdaGraphSystem::build(&TransitionMatrix::fibonacci(), 5).unwrap();
        let r = f.verify_lambda_condition_i(1, 4).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(LambdaConditionI::is_witness));

        let ones = LambdaGraphSystem::build(&TransitionMatrix::full(2).unwrap(), 5).unwrap();
        assert!(ones
            .verify_lambda_condition_i(1, 4)
            .unwrap()
            .iter()
            .all(LambdaConditionI::is_witness));

        let perm = TransitionMatrix::new(&[vec![0, 1], vec![1, 0]]).unwrap();
        let g = LambdaGraphSystem::build(&perm, 6).unwrap().subsystem(Labels::Plus);
        for l in 0..=2 {
            for bound in 1..=(6 - l) {
                assert!(g
                    .verify_lambda_condition_i(l, bound)
                    .unwrap()
                    .iter()
                    .all(|r| *r == LambdaConditionI::NotFoundWithinBound));
            }
        }
        assert!(f.verify_lambda_condition_i(2, 4).is_err());
    }

    #[test]
    fn lambda_irreducibility() {
        let f = LambdaGraphSystem::build(&TransitionMatrix::fibonacci(), 7).unwrap();
        assert!(f.verify_lambda_irreducibility(1, 6).unwrap().all_found());
        assert!(f
            .subsystem(Labels::Plus)
            .verify_lambda_irreducibility(1, 6)
            .unwrap()
            .all_found());

        let id = TransitionMatrix::new(&[vec![1, 0], vec![0, 1]]).unwrap();
        let g = LambdaGraphSystem::build(&id, 5).unwrap();
        let t = g.verify_lambda_irreducibility(1, 4).unwrap();
        assert_eq!(t.get(1, 2), Some(&PairReach::NotFoundWithinBound));
        assert_eq!(t.get(2, 1), Some(&PairReach::NotFoundWithinBound));
        assert!(matches!(t.get(1, 1), Some(PairReach::Found { .. })));
    }

    #[test]
    fn irreducibility_lengths_start_at_one() {
        let f = LambdaGraphSystem::build(&TransitionMatrix::fibonacci(), 4).unwrap();
        let t = f.verify_lambda_irreducibility(1, 3).unwrap();
        for e in &t.entries {
            if let PairReach::Found { length, witnesses } = &e.result {
                assert!(*length >= 1);
                for (_, path) in witnesses {
                    assert_eq!(path.len(), *length);
                }
            }
        }
    }
}
