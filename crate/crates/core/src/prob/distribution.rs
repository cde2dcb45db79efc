//! Exact distribution of the stacked weight of an `s`-column subsample.
//!
//! Drawing `s` of the `m*` columns of a basis matrix uniformly without
//! replacement, the number of black columns in the OR of any `k` rows is
//! hypergeometric: `p_j = C(a, j) C(b, s - j) / C(m*, s)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::color::{lemma3_bounds, ColorScheme};
use crate::combinatorics::{binomial, fraction, int, ratio, Rational};
use crate::error::{invalid, Result, VssError};
use crate::gray::GrayScheme;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionTable {
    /// Gray level or color this table describes.
    pub index: usize,
    pub s: usize,
    /// `probs[j]` for `j = 0..=s`.
    pub probs: Vec<Rational>,
    /// Expected count, `sum j p_j`.
    pub h_bar: Rational,
    /// Expected fraction, `h_bar / s`.
    pub beta_bar: Rational,
}

impl DistributionTable {
    pub fn from_probs(index: usize, probs: Vec<Rational>) -> Self {
        let s = probs.len() - 1;
        let h_bar = probs
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (j, p)| acc + int(j as u64) * p);
        let beta_bar = &h_bar / int(s as u64);
        Self {
            index,
            s,
            probs,
            h_bar,
            beta_bar,
        }
    }

    pub fn with_index(mut self, index: usize) -> Self {
        self.index = index;
        self
    }

    pub fn total(&self) -> Rational {
        self.probs.iter().fold(Rational::zero(), |acc, p| acc + p)
    }

    /// Variance of the count, `sum j^2 p_j - h_bar^2`.
    pub fn variance(&self) -> Rational {
        let second = self
            .probs
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (j, p)| acc + int((j * j) as u64) * p);
        second - &self.h_bar * &self.h_bar
    }

    /// Renders `level,s,p_0..p_s,h_bar,beta_bar` with every value as `num/den`.
    pub fn csv_row(&self) -> String {
        let mut cols = vec![self.index.to_string(), self.s.to_string()];
        cols.extend(self.probs.iter().map(fraction));
        cols.push(fraction(&self.h_bar));
        cols.push(fraction(&self.beta_bar));
        cols.join(",")
    }

    pub fn csv_header(s: usize) -> String {
        let mut cols = vec!["level".to_string(), "s".to_string()];
        cols.extend((0..=s).map(|j| format!("p_{j}")));
        cols.push("h_bar".into());
        cols.push("beta_bar".into());
        cols.join(",")
    }
}

/// Renders tables sharing one `s` as CSV with a header line.
pub fn distribution_csv(tables: &[DistributionTable]) -> Result<String> {
    let Some(first) = tables.first() else {
        return invalid("no distribution tables to export");
    };
    if tables.iter().any(|t| t.s != first.s) {
        return invalid("tables in one CSV must share the same s");
    }
    let mut out = DistributionTable::csv_header(first.s);
    out.push('\n');
    for t in tables {
        out.push_str(&t.csv_row());
        out.push('\n');
    }
    Ok(out)
}

fn big(v: num_bigint::BigUint) -> BigInt {
    BigInt::from(v)
}

/// Hypergeometric table for `a` black and `b` white columns, `s` drawn.
pub fn subset_distribution(a: usize, b: usize, s: usize) -> Result<DistributionTable> {
    let m = a + b;
    if s == 0 || s > m {
        return Err(VssError::InvalidParameter(format!(
            "s = {s} must satisfy 1 <= s <= {m}"
        )));
    }
    let total = big(binomial(m as u64, s as u64));
    let probs = (0..=s)
        .map(|j| {
            let ways = binomial(a as u64, j as u64) * binomial(b as u64, (s - j) as u64);
            BigRational::new(big(ways), total.clone())
        })
        .collect();
    Ok(DistributionTable::from_probs(0, probs))
}

/// Closed-form average contrast `a / m*`, independent of `s`.
pub fn average_contrast(a: usize, m_star: usize, s: usize) -> Result<Rational> {
    if m_star == 0 || a > m_star {
        return invalid(format!("need 0 <= a <= m* and m* >= 1, got a={a}, m*={m_star}"));
    }
    if s == 0 || s > m_star {
        return invalid(format!("s = {s} must satisfy 1 <= s <= {m_star}"));
    }
    Ok(ratio(a as u64, m_star as u64))
}

/// One table per gray level at pixel expansion `s`.
pub fn gray_distribution_tables(scheme: &GrayScheme, s: usize) -> Result<Vec<DistributionTable>> {
    (0..scheme.g)
        .map(|i| subset_distribution(scheme.a[i], scheme.b[i], s).map(|t| t.with_index(i)))
        .collect()
}

/// Differences of consecutive average gray levels, computed from the
/// distribution tables.
pub fn average_relative_difference(scheme: &GrayScheme, s: usize) -> Result<Vec<Rational>> {
    let tables = gray_distribution_tables(scheme, s)?;
    Ok(tables
        .windows(2)
        .map(|w| &w[1].beta_bar - &w[0].beta_bar)
        .collect())
}

/// Vandermonde's convolution `sum_i C(m1,i) C(m2,m3-i) = C(m1+m2,m3)`.
pub fn lemma1_identity(m1: u64, m2: u64, m3: u64) -> bool {
    let lhs = (0..=m3).fold(num_bigint::BigUint::zero(), |acc, i| {
        acc + binomial(m1, i) * binomial(m2, m3 - i)
    });
    lhs == binomial(m1 + m2, m3)
}

/// `sum_{i=0}^t i C(a,i) C(b,t-i) = a C(a-1+b, t-1)`, checked exactly.
pub fn lemma2_identity(a: u64, b: u64, t: u64) -> bool {
    let lhs = (0..=t).fold(num_bigint::BigUint::zero(), |acc, i| {
        acc + binomial(a, i) * binomial(b, t - i) * i
    });
    let rhs = if a == 0 || t == 0 {
        num_bigint::BigUint::zero()
    } else {
        binomial(a - 1 + b, t - 1) * a
    };
    lhs == rhs
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem2Averages {
    /// Expected fraction of color-`i` subpixels in a color-`i` pixel, per color.
    pub beta_ii: Vec<Rational>,
    /// Expected fraction of any other color in a color-`i` pixel, per color.
    pub beta_ji: Vec<Rational>,
    pub alpha_bar: Vec<Rational>,
    pub tables: Vec<DistributionTable>,
}

/// Average contrast of a color scheme subsampled to `t` columns.
pub fn theorem2_averages(scheme: &ColorScheme, t: usize) -> Result<Theorem2Averages> {
    if scheme.l != 0 {
        return Err(VssError::Unsupported(format!(
            "color schemes with l = {} (only l = 0 is supported)",
            scheme.l
        )));
    }
    let b = scheme.h;
    let tables = (0..scheme.c)
        .map(|i| subset_distribution(b, scheme.m_prime - b, t).map(|tb| tb.with_index(i)))
        .collect::<Result<Vec<_>>>()?;
    let beta_ii: Vec<Rational> = tables.iter().map(|tb| tb.beta_bar.clone()).collect();
    let beta_ji = vec![Rational::zero(); scheme.c];
    let alpha_bar = beta_ii.iter().zip(&beta_ji).map(|(x, y)| x - y).collect();
    Ok(Theorem2Averages {
        beta_ii,
        beta_ji,
        alpha_bar,
        tables,
    })
}

/// True iff every color's average relative difference reaches the optimal
/// `(n,n)` contrast bound for the scheme's `c` and `n`.
pub fn corollary4_check(scheme: &ColorScheme, t: usize) -> Result<bool> {
    let bound = lemma3_bounds(scheme.c, scheme.n)?;
    let avg = theorem2_averages(scheme, t)?;
    Ok(avg.alpha_bar.iter().all(|a| *a >= bound.alpha_opt))
}
