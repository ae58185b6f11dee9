//! Finitely generated abelian groups presented by integer matrices.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Serialize, Serializer};

use super::exact::ExactMatrix;
use super::snf::{invariant_factors, kernel_basis};

/// `Z^free_rank ⊕ Z/t_1 ⊕ ⋯ ⊕ Z/t_k` with `1 < t_1 | t_2 | ⋯ | t_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FgGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl FgGroup {
    pub fn trivial() -> Self {
        FgGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FgGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z^n / (span of the columns of relations)`.
    pub fn cokernel(relations: &ExactMatrix) -> Self {
        let factors = invariant_factors(relations);
        FgGroup {
            free_rank: relations.rows() - factors.len(),
            torsion: factors.into_iter().filter(|d| !d.is_one()).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion
            .iter()
            .map(|t| u64::try_from(t).expect("torsion coefficient fits in u64"))
            .collect()
    }
}

impl fmt::Display for FgGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl Serialize for FgGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            rank: usize,
            torsion: Vec<u64>,
        }
        Repr {
            rank: self.free_rank,
            torsion: self.torsion_u64(),
        }
        .serialize(s)
    }
}

/// A kernel together with its basis (columns).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kernel {
    pub basis: ExactMatrix,
}

impl Kernel {
    pub fn of(m: &ExactMatrix) -> Self {
        Kernel {
            basis: kernel_basis(m),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn group(&self) -> FgGroup {
        FgGroup::free(self.rank())
    }
}

/// The subgroup of `Z^n / Im(relations)` generated by the classes of the
/// columns of `generators`, up to isomorphism.
///
/// With `K = {x : generators · x ∈ Im(relations)}` the subgroup is `Z^g / K`.
/// `K` is the projection to the first `g` coordinates of the kernel of
/// `[generators | relations]`.
pub fn image_in_cokernel(generators: &ExactMatrix, relations: &ExactMatrix) -> FgGroup {
    let g = generators.cols();
    if g == 0 {
        return FgGroup::trivial();
    }
    let stacked = generators.hstack(relations);
    let ker = kernel_basis(&stacked);
    let mut k = ExactMatrix::zeros(g, ker.cols());
    for i in 0..g {
        for j in 0..ker.cols() {
            k[(i, j)] = ker[(i, j)].clone();
        }
    }
    FgGroup::cokernel(&k)
}

/// Rank of the subgroup of `Z^n` spanned by the columns.
pub fn column_rank(m: &ExactMatrix) -> usize {
    invariant_factors(m).len()
}

/// Whether every column of `m` is zero modulo the span of `relations`,
/// i.e. `m` induces the zero map into the cokernel.
pub fn lies_in_span(m: &ExactMatrix, relations: &ExactMatrix) -> bool {
    m.cols() == 0 || image_in_cokernel(m, relations).is_trivial()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cokernels() {
        let g = FgGroup::cokernel(&ExactMatrix::from_rows(&[vec![2], vec![2]]));
        assert_eq!(g.free_rank, 1);
        assert_eq!(g.torsion_u64(), [2]);
        assert_eq!(g.to_string(), "Z + Z/2");
        let g = FgGroup::cokernel(&ExactMatrix::from_rows(&[vec![2], vec![1]]));
        assert_eq!(g, FgGroup::free(1));
        assert!(FgGroup::cokernel(&ExactMatrix::identity(3)).is_trivial());
        assert_eq!(FgGroup::trivial().to_string(), "0");
    }

    #[test]
    fn images() {
        // Z/4 generated by 1; the subgroup generated by 2 is Z/2.
        let rel = ExactMatrix::from_rows(&[vec![4]]);
        let sub = image_in_cokernel(&ExactMatrix::from_rows(&[vec![2]]), &rel);
        assert_eq!(sub.torsion_u64(), [2]);
        assert_eq!(sub.free_rank, 0);
        // In Z ⊕ Z/2 the element (1, 1) generates a copy of Z.
        let rel = ExactMatrix::from_rows(&[vec![0], vec![2]]);
        let sub = image_in_cokernel(&ExactMatrix::from_rows(&[vec![1], vec![1]]), &rel);
        assert_eq!(sub, FgGroup::free(1));
        // The whole group back.
        let sub = image_in_cokernel(&ExactMatrix::identity(2), &rel);
        assert_eq!(sub, FgGroup::cokernel(&rel));
        assert!(lies_in_span(&ExactMatrix::from_rows(&[vec![0], vec![4]]), &rel));
    }

    #[test]
    fn kernel_rank() {
        let k = Kernel::of(&ExactMatrix::from_rows(&[vec![1, -1, 0], vec![0, 1, -1]]));
        assert_eq!(k.rank(), 1);
        assert_eq!(k.group(), FgGroup::free(1));
    }
}
