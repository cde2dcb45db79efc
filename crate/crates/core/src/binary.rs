//! Deterministic binary (k,n,m) schemes: a pair of basis matrices `S0`
//! (white secret pixel) and `S1` (black secret pixel).
//!
//! `h` and `l` count *white* (zero) subpixels in the OR of any `k` rows:
//! at least `h` for `S0`, at most `l` for `S1`.

use rayon::prelude::*;

use crate::combinatorics::{ratio, Combinations, Rational};
use crate::error::{invalid, Result, VssError};
use crate::matrix::{restricted_equal, BooleanMatrix, SymbolMatrix};
use crate::report::{KeyValueReport, Violations};

/// Upper bound on `n` for exhaustive subset checks and the `(n,n)` builder.
pub const DEFAULT_MAX_SHARES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryScheme {
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub s0: BooleanMatrix,
    pub s1: BooleanMatrix,
    pub h: usize,
    pub l: usize,
    pub alpha: Rational,
}

impl BinaryScheme {
    /// Wraps user-supplied basis matrices, rejecting them unless they form a valid scheme.
    pub fn from_matrices(s0: BooleanMatrix, s1: BooleanMatrix, k: usize) -> Result<Self> {
        let report = validate_binary_scheme(&s0, &s1, k)?;
        if !report.is_valid() {
            return invalid(format!(
                "not a valid ({k},{}) scheme: h={} l={} secure={}",
                s0.rows(),
                report.h,
                report.l,
                report.secure
            ));
        }
        Ok(Self {
            k,
            n: s0.rows(),
            m: s0.cols(),
            s0,
            s1,
            h: report.h,
            l: report.l,
            alpha: report.alpha,
        })
    }

    /// True when every `k`-subset yields the same zero counts.
    pub fn is_uniform(&self) -> bool {
        validate_binary_scheme(&self.s0, &self.s1, self.k)
            .map(|r| r.uniform)
            .unwrap_or(false)
    }
}

/// `(2,n)` scheme with `m = n`: `S0` has one all-black column, `S1` is the identity.
pub fn build_2_of_n(n: usize) -> Result<BinaryScheme> {
    if n < 2 {
        return invalid(format!("(2,n) scheme needs n >= 2, got {n}"));
    }
    let mut s0 = BooleanMatrix::zeros(n, n);
    let mut s1 = BooleanMatrix::zeros(n, n);
    for r in 0..n {
        s0.set(r, n - 1, true);
        s1.set(r, r, true);
    }
    BinaryScheme::from_matrices(s0, s1, 2)
}

/// `(n,n)` scheme with `m = 2^(n-1)`: columns of `S0` are the even subsets of
/// the shares, columns of `S1` the odd ones, both in binary-counting order.
pub fn build_n_of_n(n: usize) -> Result<BinaryScheme> {
    build_n_of_n_capped(n, DEFAULT_MAX_SHARES)
}

pub fn build_n_of_n_capped(n: usize, max_shares: usize) -> Result<BinaryScheme> {
    if n < 2 {
        return invalid(format!("(n,n) scheme needs n >= 2, got {n}"));
    }
    if n > max_shares {
        return invalid(format!("n = {n} exceeds the share cap {max_shares}"));
    }
    let m = 1usize << (n - 1);
    let mut s0 = BooleanMatrix::zeros(n, m);
    let mut s1 = BooleanMatrix::zeros(n, m);
    let (mut even, mut odd) = (0, 0);
    for mask in crate::combinatorics::subset_masks(n) {
        let (target, col) = if mask.count_ones() % 2 == 0 {
            even += 1;
            (&mut s0, even - 1)
        } else {
            odd += 1;
            (&mut s1, odd - 1)
        };
        for r in 0..n {
            target.set(r, col, mask & (1 << r) != 0);
        }
    }
    BinaryScheme::from_matrices(s0, s1, n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryReport {
    pub k: usize,
    pub n: usize,
    pub m: usize,
    /// Minimum zero count of a `k`-row OR of `S0`.
    pub h: usize,
    /// Maximum zero count of a `k`-row OR of `S1`.
    pub l: usize,
    /// `(h - l) / m`; nonpositive for an invalid scheme.
    pub alpha: Rational,
    pub secure: bool,
    /// Zero counts are constant across `k`-subsets for both matrices.
    pub uniform: bool,
    pub violations: Violations,
}

impl KeyValueReport for BinaryReport {
    fn entries(&self) -> Vec<(String, String)> {
        let mut out = vec![
            ("type".into(), "binary".into()),
            ("valid".into(), self.is_valid().to_string()),
            ("k".into(), self.k.to_string()),
            ("n".into(), self.n.to_string()),
            ("m".into(), self.m.to_string()),
            ("h".into(), self.h.to_string()),
            ("l".into(), self.l.to_string()),
            ("alpha".into(), crate::combinatorics::fraction(&self.alpha)),
            ("secure".into(), self.secure.to_string()),
            ("uniform".into(), self.uniform.to_string()),
        ];
        self.violations.append_entries(&mut out);
        out
    }

    fn is_valid(&self) -> bool {
        self.h > self.l && self.secure
    }
}

pub(crate) fn check_threshold(k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n {
        return invalid(format!("threshold k = {k} must satisfy 1 <= k <= n = {n}"));
    }
    if n > DEFAULT_MAX_SHARES {
        return invalid(format!(
            "n = {n} exceeds the share cap {DEFAULT_MAX_SHARES} for exhaustive checks"
        ));
    }
    Ok(())
}

/// Row subsets of size `k - 1` that fail column-permutation equality across
/// `matrices`. Restrictions to smaller subsets are projections of these, so
/// checking size `k - 1` covers every `j < k`.
pub(crate) fn insecure_subsets<M: SymbolMatrix + Sync>(matrices: &[&M], k: usize) -> Vec<Vec<usize>> {
    if k < 2 || matrices.len() < 2 {
        return Vec::new();
    }
    let n = matrices[0].rows();
    let subsets: Vec<Vec<usize>> = Combinations::new(n, k - 1).collect();
    subsets
        .into_par_iter()
        .filter(|rows| {
            matrices[1..]
                .iter()
                .any(|m| !restricted_equal(matrices[0], *m, rows))
        })
        .collect()
}

/// Exhaustively checks the contrast and security conditions of a binary scheme.
pub fn validate_binary_scheme(
    s0: &BooleanMatrix,
    s1: &BooleanMatrix,
    k: usize,
) -> Result<BinaryReport> {
    if s0.rows() != s1.rows() || s0.cols() != s1.cols() {
        return Err(VssError::DimensionMismatch(format!(
            "S0 is {}x{}, S1 is {}x{}",
            s0.rows(),
            s0.cols(),
            s1.rows(),
            s1.cols()
        )));
    }
    let (n, m) = (s0.rows(), s0.cols());
    check_threshold(k, n)?;

    let subsets: Vec<Vec<usize>> = Combinations::new(n, k).collect();
    let zeros = |mat: &BooleanMatrix| -> (usize, usize) {
        subsets
            .par_iter()
            .map(|rows| {
                let z = mat.or_rows(rows).expect("valid subset").zero_count();
                (z, z)
            })
            .reduce(|| (usize::MAX, 0), |a, b| (a.0.min(b.0), a.1.max(b.1)))
    };
    let (h, h_max) = zeros(s0);
    let (l_min, l) = zeros(s1);

    let mut violations = Violations::default();
    if h <= l {
        violations.push(format!("contrast: h = {h} is not greater than l = {l}"));
    }
    let insecure = insecure_subsets(&[s0, s1], k);
    for rows in &insecure {
        violations.push(format!(
            "security: restrictions to rows {rows:?} differ beyond column permutation"
        ));
    }

    Ok(BinaryReport {
        k,
        n,
        m,
        h,
        l,
        alpha: ratio(h as u64, m as u64) - ratio(l as u64, m as u64),
        secure: insecure.is_empty(),
        uniform: h == h_max && l == l_min,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_one() -> (BooleanMatrix, BooleanMatrix) {
        (
            BooleanMatrix::from_rows(&["001", "001", "001"]).unwrap(),
            BooleanMatrix::from_rows(&["100", "010", "001"]).unwrap(),
        )
    }

    #[test]
    fn two_of_three_matches_example_one() {
        let s = build_2_of_n(3).unwrap();
        let (s0, s1) = example_one();
        assert_eq!(s.s0, s0);
        assert_eq!(s.s1, s1);
        assert_eq!((s.h, s.l, s.m), (2, 1, 3));
        assert_eq!(s.alpha, ratio(1, 3));
    }

    #[test]
    fn two_of_n_small_cases() {
        let s = build_2_of_n(2).unwrap();
        assert_eq!(s.s0, BooleanMatrix::from_rows(&["01", "01"]).unwrap());
        assert_eq!(s.s1, BooleanMatrix::from_rows(&["10", "01"]).unwrap());
        assert_eq!(s.alpha, ratio(1, 2));
        assert_eq!(build_2_of_n(4).unwrap().alpha, ratio(1, 4));
        assert!(build_2_of_n(1).is_err());
    }

    #[test]
    fn n_of_n_parameters() {
        let s = build_n_of_n(2).unwrap();
        assert_eq!((s.m, s.alpha.clone()), (2, ratio(1, 2)));
        let s = build_n_of_n(3).unwrap();
        assert_eq!((s.m, s.h, s.l), (4, 1, 0));
        assert_eq!(s.alpha, ratio(1, 4));
        let s = build_n_of_n(4).unwrap();
        assert_eq!(s.m, 8);
        assert_eq!(s.s0.or_rows(&[0, 1, 2, 3]).unwrap().zero_count(), 1);
        assert!(build_n_of_n(1).is_err());
        assert!(build_n_of_n(21).is_err());
        assert!(build_n_of_n_capped(5, 4).is_err());
    }

    #[test]
    fn validator_on_example_one() {
        let (s0, s1) = example_one();
        let r = validate_binary_scheme(&s0, &s1, 2).unwrap();
        assert_eq!((r.h, r.l), (2, 1));
        assert_eq!(r.alpha, ratio(1, 3));
        assert!(r.secure && r.uniform && r.is_valid());
        let text = r.render();
        assert!(text.contains("valid=true\n"));
        assert!(text.contains("alpha=1/3\n"));
    }

    #[test]
    fn equal_matrices_have_no_contrast() {
        let (s0, _) = example_one();
        let r = validate_binary_scheme(&s0, &s0, 2).unwrap();
        assert_eq!(r.h, r.l);
        assert!(!r.is_valid());
        assert_eq!(r.alpha, ratio(0, 1));
    }

    #[test]
    fn broken_row_is_insecure() {
        let (s0, _) = example_one();
        let s1 = BooleanMatrix::from_rows(&["100", "010", "111"]).unwrap();
        let r = validate_binary_scheme(&s0, &s1, 2).unwrap();
        assert!(!r.secure);
        assert!(!r.is_valid());
        assert!(r.violations.messages.iter().any(|m| m.contains("[2]")));
    }

    #[test]
    fn validator_errors() {
        let (s0, s1) = example_one();
        assert!(validate_binary_scheme(&s0, &s1, 4).is_err());
        assert!(validate_binary_scheme(&s0, &s1, 0).is_err());
        let narrow = BooleanMatrix::from_rows(&["01", "01", "01"]).unwrap();
        assert!(matches!(
            validate_binary_scheme(&s0, &narrow, 2),
            Err(VssError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn builders_are_valid_and_uniform() {
        for n in 2..=7 {
            let s = build_2_of_n(n).unwrap();
            let r = validate_binary_scheme(&s.s0, &s.s1, 2).unwrap();
            assert!(r.is_valid() && r.uniform, "(2,{n})");
            assert_eq!((r.h, r.l), (n - 1, n - 2));
            assert_eq!(r.alpha, ratio(1, n as u64));

            let s = build_n_of_n(n).unwrap();
            let r = validate_binary_scheme(&s.s0, &s.s1, n).unwrap();
            assert!(r.is_valid() && r.uniform, "({n},{n})");
            assert_eq!(r.alpha, ratio(1, 1 << (n - 1)));
        }
    }
}
