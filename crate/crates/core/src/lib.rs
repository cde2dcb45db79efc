//! Deterministic and probabilistic `(k, n)` visual secret sharing for binary,
//! gray-scale and color images.
//!
//! Deterministic schemes ([`binary`], [`gray`], [`color`]) are sets of basis
//! matrices; the probabilistic schemes in [`prob`] share each pixel with only
//! `s` randomly chosen columns of its basis matrix, down to `s = 1` (no
//! pixel expansion), while keeping the average contrast of the
//! deterministic scheme. [`analysis`] quantifies how large a uniform region
//! must be before its level can be recognized.

pub mod analysis;
pub mod binary;
pub mod color;
pub mod combinatorics;
mod error;
pub mod format;
pub mod gray;
pub mod image;
pub mod matrix;
pub mod prob;
pub mod report;

pub use binary::{build_2_of_n, build_n_of_n, validate_binary_scheme, BinaryReport, BinaryScheme};
pub use color::{
    build_color_2n, cvss_params, lemma3_bounds, validate_color_scheme, ColorReport, ColorScheme,
    CvssParams, Lemma3Bounds,
};
pub use combinatorics::Rational;
pub use error::{Result, VssError};
pub use gray::{build_gvss, gvss_params, validate_gvss, GrayReport, GrayScheme, GvssParams};
pub use matrix::{
    columns_equal_up_to_permutation, generalized_or, AnyMatrix, BitVector, BooleanMatrix,
    ColorMatrix, ColorSymbol, SymbolMatrix,
};
pub use report::KeyValueReport;
