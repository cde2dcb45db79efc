//! Subset enumeration and exact binomial arithmetic.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Exact rational used for every probability and contrast value.
pub type Rational = BigRational;

pub fn ratio(num: u64, den: u64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: u64) -> Rational {
    BigRational::from_integer(BigInt::from(v))
}

/// Renders a rational as `num/den` in lowest terms, including integers (`1/1`).
pub fn fraction(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `num/den`, a plain integer, or a decimal such as `0.05` exactly.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{whole}{frac}").parse().ok()?;
    let den = num_traits::pow(BigInt::from(10u32), frac.len());
    let r = BigRational::new(digits, den);
    Some(if neg { -r } else { r })
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `C(n, k)` as an exact big integer; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, k)` as a machine integer, for enumeration sizing. Saturates at `u128::MAX`.
pub fn binomial_u128(n: u64, k: u64) -> u128 {
    binomial(n, k).to_u128().unwrap_or(u128::MAX)
}

/// Iterator over all `k`-subsets of `0..n` in lexicographic order.
#[derive(Clone, Debug)]
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (0..k).collect());
        Self { n, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let cur = self.current.as_mut().unwrap();
        // rightmost index that can still advance
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if cur[i] < self.n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// All subsets of `0..n` as bitmasks, in binary-counting order.
pub fn subset_masks(n: usize) -> impl Iterator<Item = u64> {
    0..(1u64 << n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_enumerate_in_order() {
        let all: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(Combinations::new(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(Combinations::new(2, 3).count(), 0);
        assert_eq!(Combinations::new(3, 3).count(), 1);
    }

    #[test]
    fn combination_counts_match_binomial() {
        for n in 0..12u64 {
            for k in 0..=n + 1 {
                assert_eq!(
                    Combinations::new(n as usize, k as usize).count() as u128,
                    binomial_u128(n, k),
                    "C({n},{k})"
                );
            }
        }
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(6, 2), BigUint::from(15u32));
        assert_eq!(binomial(64, 32).to_string(), "1832624140942590534");
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("0.05"), Some(ratio(1, 20)));
        assert_eq!(parse_rational("1/3"), Some(ratio(1, 3)));
        assert_eq!(parse_rational("2"), Some(int(2)));
        assert_eq!(parse_rational(".5"), Some(ratio(1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(fraction(&int(1)), "1/1");
        assert_eq!(fraction(&ratio(8, 15)), "8/15");
    }
}
