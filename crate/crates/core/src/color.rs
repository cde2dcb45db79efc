//! Deterministic c-color schemes over the generalized-OR algebra.
//!
//! One basis matrix per color. `h` is the minimum number of color-`i`
//! subpixels in a `k`-row OR of `C_i`; `l` the maximum number of any other
//! color in it.

use rayon::prelude::*;

use crate::binary::{check_threshold, insecure_subsets};
use crate::combinatorics::{fraction, ratio, Combinations, Rational};
use crate::error::{invalid, Result, VssError};
use crate::matrix::{symbol_count, ColorMatrix, ColorSymbol, SymbolMatrix};
use crate::report::{KeyValueReport, Violations};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorScheme {
    pub k: usize,
    pub n: usize,
    pub c: usize,
    pub m_prime: usize,
    /// Basis matrix per color.
    pub matrices: Vec<ColorMatrix>,
    pub h: usize,
    pub l: usize,
    pub alpha_prime: Rational,
}

impl ColorScheme {
    pub fn from_matrices(matrices: Vec<ColorMatrix>, k: usize) -> Result<Self> {
        let report = validate_color_scheme(&matrices, k)?;
        if !report.is_valid() {
            return invalid(format!(
                "not a valid color scheme: h={} l={} secure={}",
                report.h, report.l, report.secure
            ));
        }
        Ok(Self {
            k,
            n: report.n,
            c: matrices.len(),
            m_prime: report.m_prime,
            matrices,
            h: report.h,
            l: report.l,
            alpha_prime: report.alpha_prime,
        })
    }

    pub fn matrix(&self, color: usize) -> Result<&ColorMatrix> {
        self.matrices.get(color).ok_or(VssError::OutOfRange {
            value: color,
            bound: self.c,
        })
    }
}

/// `(2,n)` scheme for `c` colors with `m' = 1 + (c-1) n`.
///
/// `C_0` is an all-color-0 column followed by one `n x n` block per other
/// color `j`, with `j` on the diagonal and black elsewhere. `C_i` is `C_0`
/// with colors `0` and `i` exchanged, which for `c = 3, n = 3` reproduces the
/// classic `(2,3,7,3)` red/green/blue matrices.
pub fn build_color_2n(c: usize, n: usize) -> Result<ColorScheme> {
    if c < 2 {
        return invalid(format!("color scheme needs c >= 2, got {c}"));
    }
    if n < 2 {
        return invalid(format!("color scheme needs n >= 2, got {n}"));
    }
    if c > u16::MAX as usize {
        return invalid(format!("palette of {c} colors is too large"));
    }
    let m_prime = 1 + (c - 1) * n;
    let matrices = (0..c)
        .map(|i| {
            let swap = |j: usize| if j == i { 0 } else if j == 0 { i } else { j };
            let mut cells = vec![ColorSymbol::Black; n * m_prime];
            for r in 0..n {
                cells[r * m_prime] = ColorSymbol::Color(i as u16);
                for (block, j) in (1..c).enumerate() {
                    let col = 1 + block * n + r;
                    cells[r * m_prime + col] = ColorSymbol::Color(swap(j) as u16);
                }
            }
            ColorMatrix::new(n, m_prime, c, cells)
        })
        .collect::<Result<Vec<_>>>()?;
    ColorScheme::from_matrices(matrices, 2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorReport {
    pub k: usize,
    pub n: usize,
    pub c: usize,
    pub m_prime: usize,
    pub h: usize,
    pub l: usize,
    pub alpha_prime: Rational,
    pub secure: bool,
    /// Some `k`-row OR combined two distinct colors in one column.
    pub mixed_colors: bool,
    pub violations: Violations,
}

impl KeyValueReport for ColorReport {
    fn entries(&self) -> Vec<(String, String)> {
        let mut out = vec![
            ("type".into(), "cvss".into()),
            ("valid".into(), self.is_valid().to_string()),
            ("k".into(), self.k.to_string()),
            ("n".into(), self.n.to_string()),
            ("m_prime".into(), self.m_prime.to_string()),
            ("c".into(), self.c.to_string()),
            ("h".into(), self.h.to_string()),
            ("l".into(), self.l.to_string()),
            ("alpha_prime".into(), fraction(&self.alpha_prime)),
            ("secure".into(), self.secure.to_string()),
            ("mixed_colors".into(), self.mixed_colors.to_string()),
        ];
        self.violations.append_entries(&mut out);
        out
    }

    fn is_valid(&self) -> bool {
        self.h > self.l && self.secure
    }
}

pub fn validate_color_scheme(matrices: &[ColorMatrix], k: usize) -> Result<ColorReport> {
    let c = matrices.len();
    if c < 2 {
        return invalid(format!("color scheme needs at least 2 colors, got {c}"));
    }
    let first = &matrices[0];
    let (n, m_prime) = (first.rows(), first.cols());
    for (i, mat) in matrices.iter().enumerate() {
        if mat.rows() != n || mat.cols() != m_prime {
            return Err(VssError::DimensionMismatch(format!(
                "color {i} matrix is {}x{}, color 0 is {n}x{m_prime}",
                mat.rows(),
                mat.cols()
            )));
        }
        if mat.palette() != c {
            return Err(VssError::DimensionMismatch(format!(
                "color {i} matrix has palette {}, scheme has {c} colors",
                mat.palette()
            )));
        }
    }
    check_threshold(k, n)?;

    let subsets: Vec<Vec<usize>> = Combinations::new(n, k).collect();
    let mut violations = Violations::default();
    let mut h = usize::MAX;
    let mut l = 0;
    let mut mixed_colors = false;
    for (i, mat) in matrices.iter().enumerate() {
        // (min own-color count, per-other-color max count, mixed)
        let (own_min, others_max, mixed) = subsets
            .par_iter()
            .map(|rows| {
                let (v, mixed) = mat.or_rows_strict(rows).expect("valid subset");
                let own = symbol_count(&v, ColorSymbol::Color(i as u16));
                let other = (0..c)
                    .filter(|&j| j != i)
                    .map(|j| symbol_count(&v, ColorSymbol::Color(j as u16)))
                    .max()
                    .unwrap_or(0);
                (own, other, mixed)
            })
            .reduce(
                || (usize::MAX, 0, false),
                |a, b| (a.0.min(b.0), a.1.max(b.1), a.2 || b.2),
            );
        h = h.min(own_min);
        l = l.max(others_max);
        mixed_colors |= mixed;
        if own_min == 0 {
            violations.push(format!("contrast: color {i} can vanish from a {k}-share stack"));
        }
    }
    if h <= l {
        violations.push(format!("contrast: h = {h} is not greater than l = {l}"));
    }

    let refs: Vec<&ColorMatrix> = matrices.iter().collect();
    let insecure = insecure_subsets(&refs, k);
    for rows in &insecure {
        violations.push(format!(
            "security: color matrices differ on rows {rows:?} beyond column permutation"
        ));
    }

    Ok(ColorReport {
        k,
        n,
        c,
        m_prime,
        h,
        l,
        alpha_prime: ratio(h as u64, m_prime as u64) - ratio(l as u64, m_prime as u64),
        secure: insecure.is_empty(),
        mixed_colors,
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma3Bounds {
    /// Smallest possible pixel expansion of a c-color `(n,n)` scheme.
    pub m_min: u128,
    pub alpha_opt: Rational,
}

pub fn lemma3_bounds(c: usize, n: usize) -> Result<Lemma3Bounds> {
    if c < 2 || n < 2 {
        return invalid(format!("bounds need c, n >= 2, got c={c}, n={n}"));
    }
    if n > 100 {
        return invalid(format!("n = {n} is too large for the expansion bound"));
    }
    let c = c as u128;
    let full = c * (1u128 << (n - 1));
    let m_min = if n.is_multiple_of(2) { full - 1 } else { full - c + 1 };
    Ok(Lemma3Bounds {
        m_min,
        alpha_opt: Rational::new(1.into(), m_min.into()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CvssParams {
    /// Black subpixels in a reconstructed color-`i` pixel.
    pub a: Vec<usize>,
    /// Color-`i` subpixels in a reconstructed color-`i` pixel.
    pub b: Vec<usize>,
    /// Subpixels of any other color; zero whenever `l = 0`.
    pub e: usize,
    pub alpha_prime: Vec<Rational>,
}

/// Per-color counts of a scheme in the `l = 0` regime.
pub fn cvss_params(scheme: &ColorScheme) -> Result<CvssParams> {
    if scheme.l != 0 {
        return Err(VssError::Unsupported(format!(
            "color schemes with l = {} (only l = 0 is supported)",
            scheme.l
        )));
    }
    Ok(CvssParams {
        a: vec![scheme.m_prime - scheme.h; scheme.c],
        b: vec![scheme.h; scheme.c],
        e: 0,
        alpha_prime: vec![scheme.alpha_prime.clone(); scheme.c],
    })
}
