//! The relation map rebuilt from cylinder functions on the one-sided shift.
//!
//! Integer-valued continuous functions on the one-sided Markov shift are
//! spanned by cylinder indicators `χ_μ`. At level `l` the operators
//! `σ(f)(x) = f(σx)` and `λ(f)(x) = Σ_j f(jx)` send `χ_μ` (`|μ| = l`) to
//! combinations of level-`l+1` indicators; `Emb` rewrites `χ_μ` itself at
//! level `l+1`. Then `id − (σ + λ)` at level `l` is `Σ + Λ − Emb` up to sign.

use serde::Serialize;

use super::{k0_level_group, relation_matrix, require, ExactMatrix, FgGroup, KTheoryError};
use crate::horizon::LambdaGraphSystem;
use crate::intmat::IntMatrix;
use crate::markov::MarkovWord;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CylinderOperators {
    pub level: usize,
    /// `σ`: `Sigma[ν][μ] = 1` iff `ν_2 ⋯ ν_{l+1} = μ`.
    pub sigma: IntMatrix,
    /// `λ`: `Lambda[ν][μ] = #{ j : jν admissible, (jν)_{1..l} = μ }`.
    pub lambda: IntMatrix,
    /// `Emb[ν][μ] = 1` iff `ν_1 ⋯ ν_l = μ`.
    pub emb: IntMatrix,
}

impl CylinderOperators {
    pub fn compute(g: &LambdaGraphSystem, level: usize) -> Result<Self, KTheoryError> {
        Self::compute_with(g, level, true)
    }

    /// Same, but `λ` skips the admissibility check on `jν`. Only useful to
    /// show that the check matters.
    #[doc(hidden)]
    pub fn compute_ignoring_admissibility(
        g: &LambdaGraphSystem,
        level: usize,
    ) -> Result<Self, KTheoryError> {
        Self::compute_with(g, level, false)
    }

    fn compute_with(g: &LambdaGraphSystem, level: usize, check: bool) -> Result<Self, KTheoryError> {
        require(g, level, level + 1)?;
        let a = g.matrix();
        let lower = g.table(level);
        let upper = g.table(level + 1);
        let rank = |w: &MarkovWord| lower.index_of(w).expect("admissible cylinder") - 1;
        let (rows, cols) = (upper.len(), lower.len());
        let mut sigma = IntMatrix::zeros(rows, cols);
        let mut lambda = IntMatrix::zeros(rows, cols);
        let mut emb = IntMatrix::zeros(rows, cols);
        for (r, nu) in upper.words().iter().enumerate() {
            let shifted = MarkovWord(nu.symbols()[1..].to_vec());
            sigma[(r, rank(&shifted))] += 1;
            emb[(r, rank(&nu.prefix(level)))] += 1;
            let head = nu.first().expect("level + 1 >= 1");
            for j in 0..a.size() {
                if check && !a.get(j, head) {
                    continue;
                }
                let jnu = nu.prepend(j).prefix(level);
                if let Ok(k) = lower.index_of(&jnu) {
                    lambda[(r, k - 1)] += 1;
                }
            }
        }
        Ok(CylinderOperators {
            level,
            sigma,
            lambda,
            emb,
        })
    }

    /// `Σ + Λ − Emb`.
    pub fn relation(&self) -> IntMatrix {
        &(&self.sigma + &self.lambda) - &self.emb
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Equivalence {
    pub level: usize,
    /// `Σ + Λ − Emb = M^t − I^t` entrywise.
    pub entrywise: bool,
    /// When entrywise equality fails: the two cokernels, and whether they agree.
    pub fallback: Option<CokernelComparison>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CokernelComparison {
    pub from_graph: FgGroup,
    pub from_cylinders: FgGroup,
    pub agree: bool,
}

pub fn formulation_equivalence(
    g: &LambdaGraphSystem,
    level: usize,
) -> Result<Equivalence, KTheoryError> {
    let ops = CylinderOperators::compute(g, level)?;
    compare(g, level, &ops)
}

pub(crate) fn compare(
    g: &LambdaGraphSystem,
    level: usize,
    ops: &CylinderOperators,
) -> Result<Equivalence, KTheoryError> {
    let graph_side = relation_matrix(g, level)?;
    let cyl_side = ops.relation();
    if graph_side == cyl_side {
        return Ok(Equivalence {
            level,
            entrywise: true,
            fallback: None,
        });
    }
    let from_graph = k0_level_group(g, level)?;
    let from_cylinders = FgGroup::cokernel(&ExactMatrix::from(&cyl_side));
    Ok(Equivalence {
        level,
        entrywise: false,
        fallback: Some(CokernelComparison {
            agree: from_graph == from_cylinders,
            from_graph,
            from_cylinders,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::markov::TransitionMatrix;

    #[test]
    fn fibonacci_operators() {
        let g = LambdaGraphSystem::build(&TransitionMatrix::fibonacci(), 3).unwrap();
        let c0 = CylinderOperators::compute(&g, 0).unwrap();
        assert_eq!(c0.sigma.to_rows(), [vec![1], vec![1]]);
        assert_eq!(c0.lambda.to_rows(), [vec![2], vec![1]]);
        // Column of word 2 at level 1: rows 11 and 12.
        let c1 = CylinderOperators::compute(&g, 1).unwrap();
        let col: Vec<i64> = (0..3).map(|r| c1.lambda[(r, 1)]).collect();
        assert_eq!(col, [1, 1, 0]);
        for l in 0..3 {
            let c = CylinderOperators::compute(&g, l).unwrap();
            let s = g.symbol_matrices(l).unwrap();
            assert_eq!(c.emb, s.iota.transpose());
            assert!(formulation_equivalence(&g, l).unwrap().entrywise);
        }
    }

    #[test]
    fn dropping_admissibility_breaks_level_one() {
        let g = LambdaGraphSystem::build(&TransitionMatrix::fibonacci(), 3).unwrap();
        let bad = CylinderOperators::compute_ignoring_admissibility(&g, 1).unwrap();
        let eq = compare(&g, 1, &bad).unwrap();
        assert!(!eq.entrywise);
        assert!(eq.fallback.is_some());
        // At level 2 and above jν is admissible whenever its truncation is tabulated.
        let bad2 = CylinderOperators::compute_ignoring_admissibility(&g, 2).unwrap();
        assert!(compare(&g, 2, &bad2).unwrap().entrywise);
    }
}
