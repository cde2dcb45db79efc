//! Probabilistic schemes: uniform `s`-column subsampling of deterministic
//! basis matrices, their exact distributions, and pixel-level encode/stack.

mod distribution;
mod encode;
pub mod enumerate;

pub use distribution::{
    average_contrast, average_relative_difference, corollary4_check, distribution_csv,
    gray_distribution_tables, lemma1_identity, lemma2_identity, subset_distribution,
    theorem2_averages, DistributionTable, Theorem2Averages,
};
pub use encode::{
    derive_seed, pixel_rng, prob_encode_color, prob_encode_gray, select_columns, stack, Planes,
    PixelGrid, ProbConfig, ShareSet, StackedData, StackedPlane,
};
