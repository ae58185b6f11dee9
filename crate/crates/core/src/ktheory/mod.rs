//! K-groups of the Cantor horizon system, level by level.
//!
//! At level `l` the relation map is `R_l = M_{l,l+1}^t − I_{l,l+1}^t`, an
//! `m(l+1) x m(l)` integer matrix. The K_0 approximant is `coker R_l` and the
//! K_1 approximant is `ker R_l`. Connecting maps are induced by transposed
//! ι-incidence matrices.
//!
//! The same relation map is rebuilt independently from cylinder-set
//! operators on the one-sided Markov shift (see [`cylinder`]) and compared
//! entrywise.

pub mod cylinder;
pub mod exact;
pub mod group;
mod profile;
pub mod snf;

pub use cylinder::{formulation_equivalence, CylinderOperators, Equivalence};
pub use exact::ExactMatrix;
pub use group::{image_in_cokernel, FgGroup, Kernel};
pub use profile::{
    k0_profile, k0_profile_with, k1_profile, k1_profile_with, CylinderSection, EquivalenceSection,
    Formulation, KTheoryReport, LimitProfile, ReportMode, Window,
};
pub use snf::{smith_normal_form, SmithForm};

use thiserror::Error;

use crate::horizon::{GraphError, LambdaGraphSystem};
use crate::intmat::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KTheoryError {
    #[error("level {level} needs the system built to level {needed}, but it stops at {max}")]
    OutOfRange {
        level: usize,
        needed: usize,
        max: usize,
    },
    #[error("I^t M^t intertwining fails at level {0}; the graph is inconsistent")]
    IdentityViolation(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub(crate) fn require(g: &LambdaGraphSystem, level: usize, needed: usize) -> Result<(), KTheoryError> {
    if needed > g.max_level() {
        return Err(KTheoryError::OutOfRange {
            level,
            needed,
            max: g.max_level(),
        });
    }
    Ok(())
}

/// `M_{l,l+1}^t` and `I_{l,l+1}^t`.
pub fn transposed_matrices(
    g: &LambdaGraphSystem,
    level: usize,
) -> Result<(IntMatrix, IntMatrix), KTheoryError> {
    require(g, level, level + 1)?;
    let s = g.symbol_matrices(level)?;
    Ok((s.total.transpose(), s.iota.transpose()))
}

/// `M_{l,l+1}^t − I_{l,l+1}^t`.
pub fn relation_matrix(g: &LambdaGraphSystem, level: usize) -> Result<IntMatrix, KTheoryError> {
    let (mt, it) = transposed_matrices(g, level)?;
    Ok(&mt - &it)
}

/// `Z^{m(l+1)} / (M^t − I^t) Z^{m(l)}`.
pub fn k0_level_group(g: &LambdaGraphSystem, level: usize) -> Result<FgGroup, KTheoryError> {
    let r = relation_matrix(g, level)?;
    Ok(FgGroup::cokernel(&ExactMatrix::from(&r)))
}

/// `Ker (M^t − I^t)` in `Z^{m(l)}`, with a basis.
pub fn k1_level_group(g: &LambdaGraphSystem, level: usize) -> Result<Kernel, KTheoryError> {
    let r = relation_matrix(g, level)?;
    Ok(Kernel::of(&ExactMatrix::from(&r)))
}

/// The map between level groups induced by transposed ι-incidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectingMap {
    pub level: usize,
    /// `I_{l+1,l+2}^t`: `Z^{m(l+1)} -> Z^{m(l+2)}`, descending to cokernels.
    pub on_cokernels: IntMatrix,
    /// `I_{l,l+1}^t`: `Z^{m(l)} -> Z^{m(l+1)}`, restricting to kernels.
    pub on_kernels: IntMatrix,
}

/// Builds the connecting map from level `l` to `l + 1` after checking
/// `M_{l+1,l+2}^t I_{l,l+1}^t = I_{l+1,l+2}^t M_{l,l+1}^t`, which is what
/// makes both induced maps well defined.
pub fn connecting_map(g: &LambdaGraphSystem, level: usize) -> Result<ConnectingMap, KTheoryError> {
    require(g, level, level + 2)?;
    let (m0, i0) = transposed_matrices(g, level)?;
    let (m1, i1) = transposed_matrices(g, level + 1)?;
    if m1.mul(&i0) != i1.mul(&m0) {
        return Err(KTheoryError::IdentityViolation(level));
    }
    Ok(ConnectingMap {
        level,
        on_cokernels: i1,
        on_kernels: i0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::markov::TransitionMatrix;

    fn graph(a: TransitionMatrix, l: usize) -> LambdaGraphSystem {
        LambdaGraphSystem::build(&a, l).unwrap()
    }

    #[test]
    fn level_zero_groups() {
        let ones = graph(TransitionMatrix::full(2).unwrap(), 2);
        assert_eq!(relation_matrix(&ones, 0).unwrap().to_rows(), [vec![2], vec![2]]);
        let g = k0_level_group(&ones, 0).unwrap();
        assert_eq!((g.free_rank, g.torsion_u64()), (1, vec![2]));
        assert_eq!(k1_level_group(&ones, 0).unwrap().rank(), 0);

        let fib = graph(TransitionMatrix::fibonacci(), 2);
        assert_eq!(relation_matrix(&fib, 0).unwrap().to_rows(), [vec![2], vec![1]]);
        assert_eq!(k0_level_group(&fib, 0).unwrap(), FgGroup::free(1));
        assert_eq!(k1_level_group(&fib, 0).unwrap().rank(), 0);
    }

    #[test]
    fn zero_and_identity_fixtures() {
        assert_eq!(Kernel::of(&ExactMatrix::zeros(3, 4)).rank(), 4);
        assert!(FgGroup::cokernel(&ExactMatrix::identity(5)).is_trivial());
    }

    #[test]
    fn connecting_maps_are_well_defined() {
        let fib = graph(TransitionMatrix::fibonacci(), 5);
        for l in 0..=2 {
            let c = connecting_map(&fib, l).unwrap();
            // I^t maps the relation image at level l into the one at l + 1.
            let r0 = ExactMatrix::from(&relation_matrix(&fib, l).unwrap());
            let r1 = ExactMatrix::from(&relation_matrix(&fib, l + 1).unwrap());
            let pushed = ExactMatrix::from(&c.on_cokernels).mul(&r0);
            assert!(group::lies_in_span(&pushed, &r1));
            // and kernels into kernels.
            let k = k1_level_group(&fib, l).unwrap();
            let moved = ExactMatrix::from(&c.on_kernels).mul(&k.basis);
            assert!(r1.mul(&moved).is_zero());
        }
        assert!(matches!(
            connecting_map(&fib, 4),
            Err(KTheoryError::OutOfRange { .. })
        ));
    }

    #[test]
    fn trivial_source_gives_zero_map() {
        let image = image_in_cokernel(&ExactMatrix::zeros(2, 0), &ExactMatrix::identity(2));
        assert!(image.is_trivial());
        // Everything maps into the trivial group Z^2 / Z^2.
        let image = image_in_cokernel(&ExactMatrix::from_rows(&[vec![3], vec![1]]), &ExactMatrix::identity(2));
        assert!(image.is_trivial());
    }
}
