//! Bipolar fuzzy soft sets over a hypervector space.

mod checks;
mod ops;
mod set;

pub use checks::{
    check_bfs, is_bfs_hvs_combo, is_bfs_hvs_direct, is_bfs_hvs_iff1, is_bfs_hvs_levels,
    is_bfs_hvs_levels_with, is_bfs_hvs_scalarsum, BfsWitness, ContainmentLaw, Method, Pole,
    ThresholdRange, Verdict,
};
pub use ops::{
    bfs_contains, bfs_negate, bfs_scalar, bfs_sum, containment_witness, cut, level_soft_set,
    ContainmentWitness,
};
pub use set::{BipolarFuzzySet, BipolarFuzzySoftSet, LevelSoftSet};

#[cfg(test)]
pub(crate) mod fixtures {
    use std::sync::Arc;

    use super::*;
    use crate::hyper::HyperVectorSpace;
    use crate::parse_rational;

    pub fn grades(pos: &[&str], neg: &[&str]) -> BipolarFuzzySet {
        let parse = |xs: &[&str]| xs.iter().map(|x| parse_rational(x).unwrap()).collect();
        BipolarFuzzySet::new(parse(pos), parse(neg)).unwrap()
    }

    pub fn soft(
        space: &Arc<HyperVectorSpace>,
        rows: &[(&str, &[&str], &[&str])],
    ) -> BipolarFuzzySoftSet {
        BipolarFuzzySoftSet::new(
            space.clone(),
            rows.iter().map(|r| r.0.to_string()).collect(),
            rows.iter().map(|r| grades(r.1, r.2)).collect(),
        )
        .unwrap()
    }

    /// Two-level example on ℤ₄: grades constant on `{0,2}` and on `{1,3}`.
    pub fn g_two_level(space: &Arc<HyperVectorSpace>) -> BipolarFuzzySoftSet {
        soft(
            space,
            &[
                (
                    "c",
                    &["0.5", "0.3", "0.5", "0.3"],
                    &["-0.4", "-0.2", "-0.4", "-0.2"],
                ),
                (
                    "d",
                    &["0.7", "0.2", "0.7", "0.2"],
                    &["-0.6", "-0.3", "-0.6", "-0.3"],
                ),
                (
                    "e",
                    &["0.8", "0.4", "0.8", "0.4"],
                    &["-0.7", "-0.5", "-0.7", "-0.5"],
                ),
            ],
        )
    }

    /// Irregular example on ℤ₄ that is not a bfs-hvs.
    pub fn g_irregular(space: &Arc<HyperVectorSpace>) -> BipolarFuzzySoftSet {
        soft(
            space,
            &[
                (
                    "c",
                    &["0.4", "0.3", "0.2", "0.7"],
                    &["-0.1", "-0.3", "-0.6", "-0.6"],
                ),
                (
                    "d",
                    &["1", "0.5", "0.4", "0.1"],
                    &["-0.5", "-0.7", "-0.2", "-0.3"],
                ),
                (
                    "e",
                    &["0.4", "0", "0.2", "0.8"],
                    &["0", "-0.1", "-0.7", "-0.5"],
                ),
            ],
        )
    }
}
