//! Finite-level approximations of the inductive limits.
//!
//! The limits have unbounded free rank, so they are never presented in
//! closed form. A profile records the level groups `G_l`, the image of each
//! `G_l` in every later `G_L`, and a stabilization verdict. With `T` the top
//! level, the profile is stabilized when
//!
//! - for every source `l <= T-2`, the images in `G_{T-1}` and in `G_T` agree, and
//! - the images of `G_{T-2}` in `G_{T-1}` and of `G_{T-1}` in `G_T` agree,
//!
//! where "agree" means equal torsion for K_0 and equal groups for K_1. The
//! reported stabilized image is that of `G_{T-1}` in `G_T`.

use serde::Serialize;

use super::cylinder::{formulation_equivalence, CylinderOperators, Equivalence};
use super::{connecting_map, group, relation_matrix, require, ExactMatrix, FgGroup, KTheoryError, Kernel};
use crate::horizon::LambdaGraphSystem;
use crate::intmat::IntMatrix;

/// Which construction supplies relation and connecting matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Formulation {
    /// `M^t − I^t` with transposed ι-incidence, read off the graph.
    Matrix,
    /// `Σ + Λ − Emb` with `Emb`, from cylinder functions.
    Cylinder,
}

struct LevelData {
    relations: Vec<ExactMatrix>,
    /// `up[l]`: `Z^{m(l)} -> Z^{m(l+1)}`.
    up: Vec<IntMatrix>,
}

fn level_data(
    g: &LambdaGraphSystem,
    top: usize,
    formulation: Formulation,
) -> Result<LevelData, KTheoryError> {
    require(g, top, top + 1)?;
    let mut relations = Vec::with_capacity(top + 1);
    let mut up = Vec::with_capacity(top + 1);
    for l in 0..=top {
        match formulation {
            Formulation::Matrix => {
                relations.push(ExactMatrix::from(&relation_matrix(g, l)?));
                let (_, it) = super::transposed_matrices(g, l)?;
                up.push(it);
            }
            Formulation::Cylinder => {
                let ops = CylinderOperators::compute(g, l)?;
                relations.push(ExactMatrix::from(&ops.relation()));
                up.push(ops.emb);
            }
        }
    }
    if formulation == Formulation::Matrix {
        // Fails loudly on an inconsistent graph before any limit is formed.
        for l in 0..top {
            connecting_map(g, l)?;
        }
    }
    Ok(LevelData { relations, up })
}

/// `up[to-1] ⋯ up[from]`: `Z^{m(from)} -> Z^{m(to)}`.
fn compose(up: &[IntMatrix], from: usize, to: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(up[from].cols());
    for step in &up[from..to] {
        m = step.mul(&m);
    }
    m
}

/// Image of the level-`source` group inside the level-`target` group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Window {
    pub source: usize,
    pub target: usize,
    pub image: FgGroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LimitProfile {
    pub formulation: Formulation,
    /// Highest level group computed.
    pub top: usize,
    pub per_level: Vec<FgGroup>,
    pub windows: Vec<Window>,
    /// Torsion of the last window.
    pub stabilized_torsion: Vec<u64>,
    /// The last window's image.
    pub stabilized_image: Option<FgGroup>,
    pub stabilized: bool,
    pub free_ranks: Vec<usize>,
}

impl LimitProfile {
    fn window(&self, source: usize, target: usize) -> Option<&Window> {
        self.windows
            .iter()
            .find(|w| w.source == source && w.target == target)
    }

    fn finish(
        formulation: Formulation,
        top: usize,
        per_level: Vec<FgGroup>,
        windows: Vec<Window>,
        same: impl Fn(&FgGroup, &FgGroup) -> bool,
    ) -> Self {
        let mut p = LimitProfile {
            formulation,
            top,
            free_ranks: per_level.iter().map(|g| g.free_rank).collect(),
            per_level,
            windows,
            stabilized_torsion: Vec::new(),
            stabilized_image: None,
            stabilized: false,
        };
        if top >= 1 {
            let last = p.window(top - 1, top).expect("window exists").image.clone();
            let image = |s: usize, t: usize| &p.window(s, t).expect("window exists").image;
            p.stabilized = top >= 2
                && same(image(top - 2, top - 1), &last)
                && (0..=top - 2).all(|l| same(image(l, top - 1), image(l, top)));
            p.stabilized_torsion = last.torsion_u64();
            p.stabilized_image = Some(last);
        }
        p
    }
}

pub fn k0_profile(g: &LambdaGraphSystem, top: usize) -> Result<LimitProfile, KTheoryError> {
    k0_profile_with(g, top, Formulation::Matrix)
}

/// K_0 approximants `coker R_l` for `l = 0..=top`, with every window image.
pub fn k0_profile_with(
    g: &LambdaGraphSystem,
    top: usize,
    formulation: Formulation,
) -> Result<LimitProfile, KTheoryError> {
    let data = level_data(g, top, formulation)?;
    let per_level: Vec<FgGroup> = data.relations.iter().map(FgGroup::cokernel).collect();
    let mut windows = Vec::new();
    for source in 0..top {
        for target in source + 1..=top {
            // The level-l group lives on Z^{m(l+1)}.
            let c = compose(&data.up, source + 1, target + 1);
            let image = group::image_in_cokernel(&ExactMatrix::from(&c), &data.relations[target]);
            windows.push(Window { source, target, image });
        }
    }
    Ok(LimitProfile::finish(formulation, top, per_level, windows, |a, b| {
        a.torsion == b.torsion
    }))
}

pub fn k1_profile(g: &LambdaGraphSystem, top: usize) -> Result<LimitProfile, KTheoryError> {
    k1_profile_with(g, top, Formulation::Matrix)
}

/// K_1 approximants `ker R_l`, with images under the restricted connecting maps.
pub fn k1_profile_with(
    g: &LambdaGraphSystem,
    top: usize,
    formulation: Formulation,
) -> Result<LimitProfile, KTheoryError> {
    let data = level_data(g, top, formulation)?;
    let kernels: Vec<Kernel> = data.relations.iter().map(Kernel::of).collect();
    let per_level = kernels.iter().map(Kernel::group).collect();
    let mut windows = Vec::new();
    for (source, kernel) in kernels.iter().enumerate().take(top) {
        for target in source + 1..=top {
            let c = ExactMatrix::from(&compose(&data.up, source, target));
            let moved = c.mul(&kernel.basis);
            debug_assert!(data.relations[target].mul(&moved).is_zero());
            let image = FgGroup::free(group::column_rank(&moved));
            windows.push(Window { source, target, image });
        }
    }
    Ok(LimitProfile::finish(formulation, top, per_level, windows, |a, b| a == b))
}

/// The JSON document emitted by the `ktheory` command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KTheoryReport {
    pub levels: Vec<usize>,
    pub vertex_counts: Vec<usize>,
    pub k0: LimitProfile,
    pub k1: LimitProfile,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cylinder: Option<CylinderSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivalence: Option<EquivalenceSection>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CylinderSection {
    pub k0: LimitProfile,
    pub k1: LimitProfile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EquivalenceSection {
    pub per_level: Vec<bool>,
    pub details: Vec<Equivalence>,
    /// Both formulations produce identical profiles.
    pub profiles_agree: bool,
}

/// Which formulations a report includes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportMode {
    Matrix,
    Cylinder,
    Both,
}

impl KTheoryReport {
    /// Profiles up to level `top`; the system must be built to `top + 1`.
    pub fn compute(g: &LambdaGraphSystem, top: usize, mode: ReportMode) -> Result<Self, KTheoryError> {
        let primary = match mode {
            ReportMode::Cylinder => Formulation::Cylinder,
            _ => Formulation::Matrix,
        };
        let k0 = k0_profile_with(g, top, primary)?;
        let k1 = k1_profile_with(g, top, primary)?;
        let (cylinder, equivalence) = if mode == ReportMode::Both {
            let ck0 = k0_profile_with(g, top, Formulation::Cylinder)?;
            let ck1 = k1_profile_with(g, top, Formulation::Cylinder)?;
            let details: Vec<Equivalence> = (0..=top)
                .map(|l| formulation_equivalence(g, l))
                .collect::<Result<_, _>>()?;
            let profiles_agree = same_groups(&k0, &ck0) && same_groups(&k1, &ck1);
            (
                Some(CylinderSection { k0: ck0, k1: ck1 }),
                Some(EquivalenceSection {
                    per_level: details.iter().map(|e| e.entrywise).collect(),
                    details,
                    profiles_agree,
                }),
            )
        } else {
            (None, None)
        };
        Ok(KTheoryReport {
            levels: (0..=top).collect(),
            vertex_counts: g.vertex_counts()[..=top + 1].to_vec(),
            k0,
            k1,
            cylinder,
            equivalence,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

fn same_groups(a: &LimitProfile, b: &LimitProfile) -> bool {
    a.per_level == b.per_level && a.windows == b.windows && a.stabilized == b.stabilized
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::markov::TransitionMatrix;

    fn graph(a: TransitionMatrix, l: usize) -> LambdaGraphSystem {
        LambdaGraphSystem::build(&a, l).unwrap()
    }

    #[test]
    fn dyck_two_profile() {
        let g = graph(TransitionMatrix::full(2).unwrap(), 5);
        let p = k0_profile(&g, 4).unwrap();
        assert!(p.stabilized);
        assert_eq!(p.stabilized_torsion, [2]);
        assert_eq!(p.free_ranks, [1, 2, 4, 8, 16]);
        let k = k1_profile(&g, 4).unwrap();
        assert!(k.stabilized);
        assert!(k.stabilized_image.unwrap().is_trivial());
    }

    #[test]
    fn short_profiles_are_inconclusive() {
        let g = graph(TransitionMatrix::full(2).unwrap(), 2);
        let p = k0_profile(&g, 1).unwrap();
        assert!(!p.stabilized);
        assert_eq!(p.windows.len(), 1);
        let p = k0_profile(&g, 0).unwrap();
        assert!(p.windows.is_empty());
        assert!(p.stabilized_image.is_none());
        assert!(matches!(k0_profile(&g, 2), Err(KTheoryError::OutOfRange { .. })));
    }

    #[test]
    fn cylinder_route_matches() {
        let g = graph(TransitionMatrix::fibonacci(), 5);
        let r = KTheoryReport::compute(&g, 4, ReportMode::Both).unwrap();
        let eq = r.equivalence.unwrap();
        assert!(eq.per_level.iter().all(|&b| b));
        assert!(eq.profiles_agree);
    }

    #[test]
    fn report_shape() {
        let g = graph(TransitionMatrix::full(2).unwrap(), 2);
        let r = KTheoryReport::compute(&g, 1, ReportMode::Matrix).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["k0"]["perLevel"][0]["rank"], 1);
        assert_eq!(v["k0"]["perLevel"][0]["torsion"], serde_json::json!([2]));
        assert!(v["k0"]["stabilizedTorsion"].is_array());
        assert!(v["k0"]["stabilized"].is_boolean());
        assert!(v["k1"].is_object());
        assert!(v.get("equivalence").is_none());
    }
}
