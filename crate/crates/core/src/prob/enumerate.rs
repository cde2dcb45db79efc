//! Brute-force enumeration over every `s`-column selection of a basis
//! matrix. This is the direct route to the distributions that
//! [`subset_distribution`](super::subset_distribution) computes in closed
//! form, and the only route to the restricted-pattern distributions used for
//! the security check.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::combinatorics::{binomial_u128, Combinations, Rational};
use crate::error::{invalid, Result};
use crate::matrix::{check_rows, generalized_or, BooleanMatrix, ColorMatrix, ColorSymbol, SymbolMatrix};

/// Refuse enumerations larger than this many selections.
pub const MAX_SELECTIONS: u128 = 50_000_000;

fn check_selection<M: SymbolMatrix>(m: &M, s: usize) -> Result<()> {
    if s == 0 || s > m.cols() {
        return invalid(format!("s = {s} must satisfy 1 <= s <= {}", m.cols()));
    }
    let count = binomial_u128(m.cols() as u64, s as u64);
    if count > MAX_SELECTIONS {
        return invalid(format!("{count} selections exceed the enumeration cap"));
    }
    Ok(())
}

fn to_table(counts: Vec<u64>) -> Vec<Rational> {
    let total: u64 = counts.iter().sum();
    counts
        .into_iter()
        .map(|c| BigRational::new(BigInt::from(c), BigInt::from(total)))
        .collect()
}

/// Distribution of the black count in the OR of `rows` over all `s`-column
/// selections of `m`.
pub fn enumerate_weight_distribution(m: &BooleanMatrix, rows: &[usize], s: usize) -> Result<Vec<Rational>> {
    check_rows(rows, m.rows())?;
    check_selection(m, s)?;
    let stacked = m.or_rows(rows)?;
    let mut counts = vec![0u64; s + 1];
    for cols in Combinations::new(m.cols(), s) {
        let w = cols.iter().filter(|&&c| stacked.0[c]).count();
        counts[w] += 1;
    }
    Ok(to_table(counts))
}

/// Distribution of the number of `symbol` subpixels in the generalized OR of
/// `rows` over all `t`-column selections of `m`.
pub fn enumerate_color_distribution(
    m: &ColorMatrix,
    rows: &[usize],
    symbol: ColorSymbol,
    t: usize,
) -> Result<Vec<Rational>> {
    check_rows(rows, m.rows())?;
    check_selection(m, t)?;
    let stacked: Vec<ColorSymbol> = (0..m.cols())
        .map(|c| generalized_or(rows.iter().map(|&r| m.get(r, c))).expect("rows nonempty"))
        .collect();
    let mut counts = vec![0u64; t + 1];
    for cols in Combinations::new(m.cols(), t) {
        let z = cols.iter().filter(|&&c| stacked[c] == symbol).count();
        counts[z] += 1;
    }
    Ok(to_table(counts))
}

/// Pattern seen by holders of `rows`: the multiset of selected columns
/// restricted to those rows, as a sorted list.
pub type Pattern<S> = Vec<Vec<S>>;

/// Counts of each restricted pattern over all `s`-column selections. Column
/// order within a selection is uniformly random at encode time, so patterns
/// are compared as multisets.
pub fn selection_pattern_distribution<M: SymbolMatrix>(
    m: &M,
    rows: &[usize],
    s: usize,
) -> Result<BTreeMap<Pattern<M::Symbol>, u64>> {
    check_rows(rows, m.rows())?;
    check_selection(m, s)?;
    let columns: Vec<Vec<M::Symbol>> = (0..m.cols()).map(|c| m.column_on(c, rows)).collect();
    let mut dist = BTreeMap::new();
    for cols in Combinations::new(m.cols(), s) {
        let mut pattern: Pattern<M::Symbol> = cols.iter().map(|&c| columns[c].clone()).collect();
        pattern.sort_unstable();
        *dist.entry(pattern).or_insert(0) += 1;
    }
    Ok(dist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binary::build_2_of_n;
    use crate::combinatorics::ratio;
    use crate::gray::build_gvss;

    #[test]
    fn level_one_s5_by_enumeration() {
        let s = build_gvss(&build_2_of_n(3).unwrap(), 3).unwrap();
        let p = enumerate_weight_distribution(&s.levels[0], &[0, 1], 5).unwrap();
        assert_eq!(p[1], ratio(1, 3));
        assert_eq!(p[2], ratio(2, 3));
    }

    #[test]
    fn single_share_patterns_agree_across_levels() {
        let s = build_gvss(&build_2_of_n(3).unwrap(), 3).unwrap();
        for row in 0..3 {
            let d0 = selection_pattern_distribution(&s.levels[0], &[row], 3).unwrap();
            let d2 = selection_pattern_distribution(&s.levels[2], &[row], 3).unwrap();
            assert_eq!(d0, d2);
        }
        // two shares tell levels apart
        let d0 = selection_pattern_distribution(&s.levels[0], &[0, 1], 3).unwrap();
        let d2 = selection_pattern_distribution(&s.levels[2], &[0, 1], 3).unwrap();
        assert_ne!(d0, d2);
    }

    #[test]
    fn selection_bounds() {
        let s = build_2_of_n(3).unwrap();
        assert!(enumerate_weight_distribution(&s.s0, &[0, 1], 0).is_err());
        assert!(enumerate_weight_distribution(&s.s0, &[0, 1], 4).is_err());
        assert!(enumerate_weight_distribution(&s.s0, &[], 1).is_err());
    }
}
