//! Deterministic g-level gray-scale schemes built by concatenating binary
//! basis matrices: level `i` is `(g-1-i)` copies of `S0` followed by `i`
//! copies of `S1`. Level 0 is the lightest.

use rayon::prelude::*;

use crate::binary::{check_threshold, insecure_subsets, BinaryScheme};
use crate::combinatorics::{fraction, ratio, Combinations, Rational};
use crate::error::{invalid, Result, VssError};
use crate::matrix::{BooleanMatrix, SymbolMatrix};
use crate::report::{fmt_list, KeyValueReport, Violations};

/// Cap on the expanded pixel width `m* = m (g - 1)`.
pub const DEFAULT_MAX_EXPANSION: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayScheme {
    pub k: usize,
    pub n: usize,
    pub g: usize,
    pub m_star: usize,
    /// Basis matrix per gray level.
    pub levels: Vec<BooleanMatrix>,
    /// Black subpixels in a `k`-row OR of each level.
    pub a: Vec<usize>,
    /// White subpixels, `m* - a_i`.
    pub b: Vec<usize>,
    pub alpha_levels: Vec<Rational>,
    /// The binary scheme the levels were concatenated from, if any.
    pub base: Option<BinaryScheme>,
}

impl GrayScheme {
    /// Validates `levels` as a `k`-out-of-`n` gray scheme and records its parameters.
    pub fn from_levels(levels: Vec<BooleanMatrix>, k: usize) -> Result<Self> {
        let report = validate_gvss(&levels, k)?;
        if !report.is_valid() {
            return invalid(format!(
                "not a valid gray scheme: monotone={} secure={}",
                report.monotone, report.secure
            ));
        }
        if !report.uniform {
            return Err(VssError::Unsupported(
                "gray scheme whose k-row OR weights vary across row subsets".into(),
            ));
        }
        let a: Vec<usize> = report.weights.iter().map(|w| w.0).collect();
        Ok(Self {
            k,
            n: report.n,
            g: levels.len(),
            m_star: report.m_star,
            b: a.iter().map(|&x| report.m_star - x).collect(),
            a,
            alpha_levels: report.alpha_levels,
            levels,
            base: None,
        })
    }

    pub fn level(&self, i: usize) -> Result<&BooleanMatrix> {
        self.levels.get(i).ok_or(VssError::OutOfRange {
            value: i,
            bound: self.g,
        })
    }
}

pub fn build_gvss(base: &BinaryScheme, g: usize) -> Result<GrayScheme> {
    build_gvss_capped(base, g, DEFAULT_MAX_EXPANSION)
}

pub fn build_gvss_capped(base: &BinaryScheme, g: usize, max_expansion: usize) -> Result<GrayScheme> {
    if g < 2 {
        return invalid(format!("gray scheme needs g >= 2, got {g}"));
    }
    let m_star = base.m * (g - 1);
    if m_star > max_expansion {
        return invalid(format!(
            "pixel expansion {m_star} exceeds the cap {max_expansion}"
        ));
    }
    let levels = (0..g)
        .map(|i| {
            let mut acc = BooleanMatrix::empty(base.n);
            for _ in 0..g - 1 - i {
                acc = acc.concat(&base.s0)?;
            }
            for _ in 0..i {
                acc = acc.concat(&base.s1)?;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut scheme = GrayScheme::from_levels(levels, base.k)?;
    scheme.base = Some(base.clone());
    Ok(scheme)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GvssParams {
    pub m_star: usize,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    /// `(a_{i+1} - a_i) / m*` for `i = 0..g-2`.
    pub alpha_levels: Vec<Rational>,
}

pub fn gvss_params(scheme: &GrayScheme) -> GvssParams {
    GvssParams {
        m_star: scheme.m_star,
        a: scheme.a.clone(),
        b: scheme.b.clone(),
        alpha_levels: scheme
            .a
            .windows(2)
            .map(|w| ratio((w[1] - w[0]) as u64, scheme.m_star as u64))
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayReport {
    pub k: usize,
    pub n: usize,
    pub m_star: usize,
    /// `(min, max)` Hamming weight of a `k`-row OR, per level.
    pub weights: Vec<(usize, usize)>,
    /// Threshold `d_i = min H(V^{i+1})`, the smallest consistent choice.
    pub thresholds: Vec<usize>,
    /// `(min H(V^{i+1}) - max H(V^i)) / m*`; positive for every `i` iff monotone.
    pub alpha_levels: Vec<Rational>,
    pub monotone: bool,
    pub secure: bool,
    pub uniform: bool,
    pub violations: Violations,
}

impl KeyValueReport for GrayReport {
    fn entries(&self) -> Vec<(String, String)> {
        let mins: Vec<usize> = self.weights.iter().map(|w| w.0).collect();
        let alphas: Vec<String> = self.alpha_levels.iter().map(fraction).collect();
        let mut out = vec![
            ("type".into(), "gvss".into()),
            ("valid".into(), self.is_valid().to_string()),
            ("k".into(), self.k.to_string()),
            ("n".into(), self.n.to_string()),
            ("m_star".into(), self.m_star.to_string()),
            ("g".into(), self.weights.len().to_string()),
            ("weights".into(), fmt_list(&mins)),
            ("thresholds".into(), fmt_list(&self.thresholds)),
            ("alpha_levels".into(), alphas.join(",")),
            ("monotone".into(), self.monotone.to_string()),
            ("secure".into(), self.secure.to_string()),
            ("uniform".into(), self.uniform.to_string()),
        ];
        self.violations.append_entries(&mut out);
        out
    }

    fn is_valid(&self) -> bool {
        self.monotone && self.secure
    }
}

/// Checks both conditions of a gray scheme: strictly separated `k`-row OR
/// weights between consecutive levels, and column-permutation-equal
/// restrictions to fewer than `k` rows across all levels.
pub fn validate_gvss(levels: &[BooleanMatrix], k: usize) -> Result<GrayReport> {
    let Some(first) = levels.first() else {
        return invalid("gray scheme needs at least one level");
    };
    let (n, m_star) = (first.rows(), first.cols());
    if let Some((i, bad)) = levels
        .iter()
        .enumerate()
        .find(|(_, m)| m.rows() != n || m.cols() != m_star)
    {
        return Err(VssError::DimensionMismatch(format!(
            "level {i} is {}x{}, level 0 is {n}x{m_star}",
            bad.rows(),
            bad.cols()
        )));
    }
    check_threshold(k, n)?;

    let subsets: Vec<Vec<usize>> = Combinations::new(n, k).collect();
    let weights: Vec<(usize, usize)> = levels
        .iter()
        .map(|mat| {
            subsets
                .par_iter()
                .map(|rows| {
                    let w = mat.or_rows(rows).expect("valid subset").hamming_weight();
                    (w, w)
                })
                .reduce(|| (usize::MAX, 0), |a, b| (a.0.min(b.0), a.1.max(b.1)))
        })
        .collect();

    let mut violations = Violations::default();
    let mut monotone = true;
    let mut alpha_levels = Vec::with_capacity(levels.len().saturating_sub(1));
    for (i, w) in weights.windows(2).enumerate() {
        let (lower_max, upper_min) = (w[0].1, w[1].0);
        if upper_min <= lower_max {
            monotone = false;
            violations.push(format!(
                "contrast: level {} weight {upper_min} does not exceed level {i} weight {lower_max}",
                i + 1
            ));
        }
        alpha_levels.push(
            ratio(upper_min as u64, m_star as u64) - ratio(lower_max as u64, m_star as u64),
        );
    }

    let refs: Vec<&BooleanMatrix> = levels.iter().collect();
    let insecure = insecure_subsets(&refs, k);
    for rows in &insecure {
        violations.push(format!(
            "security: levels differ on rows {rows:?} beyond column permutation"
        ));
    }

    Ok(GrayReport {
        k,
        n,
        m_star,
        thresholds: weights.iter().skip(1).map(|w| w.0).collect(),
        uniform: weights.iter().all(|w| w.0 == w.1),
        weights,
        alpha_levels,
        monotone,
        secure: insecure.is_empty(),
        violations,
    })
}
