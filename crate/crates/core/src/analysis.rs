//! Region statistics for probabilistic schemes.
//!
//! A uniform region of `N` secret pixels reconstructs to a sum of `N`
//! independent hypergeometric counts. Its mean and variance give a
//! three-sigma separation criterion for how large a region has to be before
//! adjacent gray levels (or a color against black) can be told apart.

use std::collections::BTreeMap;
use std::fmt::Write;

use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::color::ColorScheme;
use crate::combinatorics::{fraction, int, ratio, to_f64, Rational};
use crate::error::{invalid, Result, VssError};
use crate::gray::GrayScheme;
use crate::prob::{derive_seed, prob_encode_color, prob_encode_gray, stack, PixelGrid, ProbConfig, StackedPlane};

/// Exact mean and variance of the summed count over a region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperStats {
    pub mu: Rational,
    pub sigma2: Rational,
}

fn hyper_stats(success: usize, total: usize, draws: usize, pixels: u64) -> Result<HyperStats> {
    if total == 0 || success > total {
        return invalid(format!("need 0 <= {success} <= {total} and a nonempty pool"));
    }
    if draws == 0 || draws > total {
        return invalid(format!("draws {draws} must satisfy 1 <= draws <= {total}"));
    }
    if pixels == 0 {
        return invalid("region must contain at least one pixel");
    }
    let (a, m, s, n) = (success as u64, total as u64, draws as u64, pixels);
    let mu = int(s * n) * ratio(a, m);
    let sigma2 = if s == m {
        Rational::zero()
    } else {
        int(n) * ratio(s * (m - s) * a * (m - a), (m - 1) * m * m)
    };
    Ok(HyperStats { mu, sigma2 })
}

/// Black-subpixel count over `n_pixels` pixels of a gray level with `a`
/// black columns out of `m_star`, subsampled to `s` columns.
pub fn hyper_stats_gray(a: usize, m_star: usize, s: usize, n_pixels: u64) -> Result<HyperStats> {
    hyper_stats(a, m_star, s, n_pixels)
}

/// Color-`i` subpixel count over `n_pixels` pixels when `b` of `m_prime`
/// stacked subpixels carry color `i`, subsampled to `t` columns.
pub fn hyper_stats_color(b: usize, m_prime: usize, t: usize, n_pixels: u64) -> Result<HyperStats> {
    hyper_stats(b, m_prime, t, n_pixels)
}

/// Smallest integer strictly above a bound of the form
/// `scale * (sqrt(x) + sqrt(y))^2` with rational `scale` and integer `x, y`,
/// decided exactly.
fn smallest_above_sqrt_bound(scale: &Rational, x: u64, y: u64) -> u64 {
    if scale.is_zero() || (x == 0 && y == 0) {
        return 0;
    }
    // N > scale (x + y + 2 sqrt(xy))  <=>  q > 0 and q^2 > 4xy, q = N/scale - x - y
    let holds = |n: u64| -> bool {
        let q = int(n) / scale - int(x) - int(y);
        q.is_positive() && &q * &q > int(4 * x * y)
    };
    let approx = to_f64(scale) * ((x as f64).sqrt() + (y as f64).sqrt()).powi(2);
    let mut n = (approx.floor() as u64).saturating_sub(2).max(1);
    while n > 1 && holds(n - 1) {
        n -= 1;
    }
    while !holds(n) {
        n += 1;
    }
    n
}

/// Smallest region size separating gray levels with black counts `a_i` and
/// `a_next` at margin `d`: the smallest integer `N` with
/// `N > 9 s(m*-s)/(m*-1) (sqrt(a'(m*-a')) + sqrt(a(m*-a)))^2 / (s|a'-a| - m* d)^2`.
///
/// Returns 0 for `s = m*`, where every pixel is reconstructed exactly.
pub fn recognition_area_gray(a_i: usize, a_next: usize, m_star: usize, s: usize, d: &Rational) -> Result<u64> {
    if m_star == 0 || a_i > m_star || a_next > m_star {
        return invalid(format!("level counts {a_i}, {a_next} exceed m* = {m_star}"));
    }
    if s == 0 || s > m_star {
        return invalid(format!("s = {s} must satisfy 1 <= s <= {m_star}"));
    }
    let gap = a_i.abs_diff(a_next) as u64;
    let (m, s64) = (m_star as u64, s as u64);
    let limit = ratio(s64 * gap, m);
    if !d.is_positive() || *d >= limit {
        return invalid(format!(
            "margin d = {} must satisfy 0 < d < {}",
            fraction(d),
            fraction(&limit)
        ));
    }
    if s == m_star {
        return Ok(0);
    }
    let denom = int(s64 * gap) - int(m) * d;
    let scale = int(9) * ratio(s64 * (m - s64), m - 1) / (&denom * &denom);
    let (an, ai) = (a_next as u64, a_i as u64);
    Ok(smallest_above_sqrt_bound(&scale, an * (m - an), ai * (m - ai)))
}

/// Right-hand side of the color recognition bound,
/// `9 t(m'-t) b(m'-b) / ((m'-1)(t b - m' d)^2)`.
pub fn recognition_bound_color(b: usize, m_prime: usize, t: usize, d: &Rational) -> Result<Rational> {
    if m_prime == 0 || b == 0 || b > m_prime {
        return invalid(format!("need 1 <= b = {b} <= m' = {m_prime}"));
    }
    if t == 0 || t > m_prime {
        return invalid(format!("t = {t} must satisfy 1 <= t <= {m_prime}"));
    }
    let (b, m, t) = (b as u64, m_prime as u64, t as u64);
    let limit = ratio(t * b, m);
    if !d.is_positive() || *d >= limit {
        return invalid(format!(
            "margin d = {} must satisfy 0 < d < {}",
            fraction(d),
            fraction(&limit)
        ));
    }
    if t == m {
        return Ok(Rational::zero());
    }
    let denom = int(t * b) - int(m) * d;
    Ok(int(9 * t * (m - t) * b * (m - b)) / (int(m - 1) * &denom * &denom))
}

/// The `b = 1` specialization, `9 t(m'-t) / (t - m' d)^2`.
pub fn recognition_bound_color_unit(m_prime: usize, t: usize, d: &Rational) -> Result<Rational> {
    if t == 0 || t > m_prime {
        return invalid(format!("t = {t} must satisfy 1 <= t <= {m_prime}"));
    }
    let (m, t) = (m_prime as u64, t as u64);
    let denom = int(t) - int(m) * d;
    if !d.is_positive() || !denom.is_positive() {
        return invalid(format!("margin d = {} is not admissible", fraction(d)));
    }
    Ok(int(9 * t * (m - t)) / (&denom * &denom))
}

/// Smallest region size at which color `i` stands out from black at margin `d`.
/// Returns 0 for `t = m'`.
pub fn recognition_area_color(b: usize, m_prime: usize, t: usize, d: &Rational) -> Result<u64> {
    let bound = recognition_bound_color(b, m_prime, t, d)?;
    if bound.is_zero() {
        return Ok(0);
    }
    let floor = bound.floor().to_integer();
    Ok(floor.to_u64().expect("bound fits in u64") + 1)
}

/// The two-level, single-subpixel bound in probability form,
/// `9 ((sqrt(p0(1-p0)) + sqrt(p1(1-p1))) / (|p0 - p1| - d))^2`.
pub fn binary_recognition_bound(p0: f64, p1: f64, d: f64) -> f64 {
    let spread = (p0 * (1.0 - p0)).sqrt() + (p1 * (1.0 - p1)).sqrt();
    9.0 * (spread / ((p0 - p1).abs() - d)).powi(2)
}

/// Sampled region counts together with the exact expectation.
#[derive(Clone, Debug, PartialEq)]
pub struct RegionSimulation {
    /// Summed count per trial.
    pub samples: Vec<u64>,
    pub exact: HyperStats,
}

impl RegionSimulation {
    pub fn mean(&self) -> f64 {
        self.samples.iter().map(|&x| x as f64).sum::<f64>() / self.samples.len() as f64
    }

    /// Unbiased sample variance; zero for a single trial.
    pub fn variance(&self) -> f64 {
        let n = self.samples.len();
        if n < 2 {
            return 0.0;
        }
        let mean = self.mean();
        self.samples
            .iter()
            .map(|&x| (x as f64 - mean).powi(2))
            .sum::<f64>()
            / (n - 1) as f64
    }

    pub fn histogram(&self) -> BTreeMap<u64, u64> {
        let mut h = BTreeMap::new();
        for &x in &self.samples {
            *h.entry(x).or_insert(0) += 1;
        }
        h
    }

    /// Fraction of samples within `mu +- k sigma` of the exact distribution.
    pub fn fraction_within(&self, k: f64) -> f64 {
        let mu = to_f64(&self.exact.mu);
        let width = k * to_f64(&self.exact.sigma2).sqrt();
        let inside = self
            .samples
            .iter()
            .filter(|&&x| (x as f64 - mu).abs() <= width + 1e-9)
            .count();
        inside as f64 / self.samples.len() as f64
    }

    pub fn histogram_csv(&self) -> String {
        let mut out = String::from("sn,count\n");
        for (sn, count) in self.histogram() {
            let _ = writeln!(out, "{sn},{count}");
        }
        out
    }

    /// `key=value` summary with exact and empirical moments.
    pub fn stats_sidecar(&self) -> String {
        format!(
            "trials={}\nmu={}\nsigma2={}\nmu_decimal={:.4}\nsigma2_decimal={:.4}\nempirical_mean={:.4}\nempirical_variance={:.4}\nwithin_3sigma={:.4}\n",
            self.samples.len(),
            fraction(&self.exact.mu),
            fraction(&self.exact.sigma2),
            to_f64(&self.exact.mu),
            to_f64(&self.exact.sigma2),
            self.mean(),
            self.variance(),
            self.fraction_within(3.0),
        )
    }
}

fn check_trials(n_pixels: u64, trials: usize) -> Result<()> {
    if n_pixels == 0 || trials == 0 {
        return invalid("simulation needs at least one pixel and one trial");
    }
    if n_pixels > u32::MAX as u64 {
        return invalid(format!("region of {n_pixels} pixels is too large"));
    }
    Ok(())
}

/// Encodes `trials` independent regions of `n_pixels` pixels at `level`,
/// stacks the first `k` shares, and records the black-subpixel count of each.
pub fn simulate_region(
    scheme: &GrayScheme,
    level: usize,
    cfg: ProbConfig,
    n_pixels: u64,
    trials: usize,
) -> Result<RegionSimulation> {
    check_trials(n_pixels, trials)?;
    scheme.level(level)?;
    let exact = hyper_stats_gray(scheme.a[level], scheme.m_star, cfg.s, n_pixels)?;
    let secret = PixelGrid::filled(n_pixels as usize, 1, level as u16)?;
    let holders: Vec<usize> = (0..scheme.k).collect();
    let samples = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let trial_cfg = ProbConfig::new(cfg.s, derive_seed(cfg.seed, trial as u64));
            let shares = prob_encode_gray(&secret, scheme, trial_cfg)?;
            stack(&shares, &holders)?.black_count(0, 0, secret.width, 1)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RegionSimulation { samples, exact })
}

/// Color counterpart of [`simulate_region`]: records color-`color`
/// subpixels in the stack of the first `k` shares (`cfg.s` is `t`).
pub fn simulate_color_region(
    scheme: &ColorScheme,
    color: usize,
    cfg: ProbConfig,
    n_pixels: u64,
    trials: usize,
) -> Result<RegionSimulation> {
    check_trials(n_pixels, trials)?;
    scheme.matrix(color)?;
    let exact = hyper_stats_color(scheme.h, scheme.m_prime, cfg.s, n_pixels)?;
    let secret = PixelGrid::filled(n_pixels as usize, 1, color as u16)?;
    let holders: Vec<usize> = (0..scheme.k).collect();
    let samples = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let trial_cfg = ProbConfig::new(cfg.s, derive_seed(cfg.seed, trial as u64));
            let shares = prob_encode_color(&secret, scheme, trial_cfg)?;
            let counts = stack(&shares, &holders)?.color_counts(0, 0, secret.width, 1)?;
            Ok(counts[color])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RegionSimulation { samples, exact })
}

/// Assigns a stacked region to the candidate level whose expected black
/// count is nearest to the observed one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayClassifier {
    pub m_star: usize,
    pub s: usize,
    pub a: Vec<usize>,
}

impl GrayClassifier {
    pub fn new(scheme: &GrayScheme, s: usize) -> Result<Self> {
        if s == 0 || s > scheme.m_star {
            return invalid(format!("s = {s} must satisfy 1 <= s <= {}", scheme.m_star));
        }
        Ok(Self {
            m_star: scheme.m_star,
            s,
            a: scheme.a.clone(),
        })
    }

    /// Expected black subpixels of a region of `pixels` pixels at `level`.
    pub fn expected_black(&self, level: usize, pixels: u64) -> Rational {
        int(self.s as u64 * pixels) * ratio(self.a[level] as u64, self.m_star as u64)
    }

    pub fn classify(&self, black: u64, pixels: u64, candidates: &[usize]) -> Result<usize> {
        if pixels == 0 {
            return invalid("empty region");
        }
        if candidates.is_empty() {
            return invalid("no candidate levels");
        }
        if let Some(&bad) = candidates.iter().find(|&&c| c >= self.a.len()) {
            return Err(VssError::OutOfRange {
                value: bad,
                bound: self.a.len(),
            });
        }
        let observed = int(black);
        let best = candidates
            .iter()
            .copied()
            .min_by(|&x, &y| {
                let dx = (&observed - self.expected_black(x, pixels)).abs();
                let dy = (&observed - self.expected_black(y, pixels)).abs();
                dx.cmp(&dy).then(x.cmp(&y))
            })
            .expect("candidates nonempty");
        Ok(best)
    }

    /// Classifies the pixel rectangle `[x0, x0+w) x [y0, y0+h)` of a binary stack.
    pub fn classify_region(
        &self,
        plane: &StackedPlane,
        (x0, y0, w, h): (usize, usize, usize, usize),
        candidates: &[usize],
    ) -> Result<usize> {
        if plane.s != self.s {
            return invalid(format!("stack has s = {}, classifier expects {}", plane.s, self.s));
        }
        let black = plane.black_count(x0, y0, w, h)?;
        self.classify(black, (w * h) as u64, candidates)
    }
}

/// The most frequent color of a color-stack region, provided its count
/// exceeds the margin `pixels * d`; `None` when no color clears it.
/// `counts` holds one entry per palette color followed by the black count.
pub fn classify_color_region(counts: &[u64], pixels: u64, d: &Rational) -> Option<usize> {
    let colors = counts.len().checked_sub(1)?;
    let (best, &count) = counts[..colors]
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.cmp(y.1).then(y.0.cmp(&x.0)))?;
    (int(count) > int(pixels) * d).then_some(best)
}

/// Fraction of `regions` simulated regions of `true_level` that the nearest-mean
/// classifier assigns to another level among `candidates`.
pub fn gray_misclassification_rate(
    scheme: &GrayScheme,
    true_level: usize,
    candidates: &[usize],
    cfg: ProbConfig,
    n_pixels: u64,
    regions: usize,
) -> Result<f64> {
    let sim = simulate_region(scheme, true_level, cfg, n_pixels, regions)?;
    let classifier = GrayClassifier::new(scheme, cfg.s)?;
    let mut wrong = 0usize;
    for &black in &sim.samples {
        if classifier.classify(black, n_pixels, candidates)? != true_level {
            wrong += 1;
        }
    }
    Ok(wrong as f64 / regions as f64)
}

/// Fraction of simulated color-`color` regions not recognized as that color at margin `d`.
pub fn color_recognition_failure_rate(
    scheme: &ColorScheme,
    color: usize,
    cfg: ProbConfig,
    n_pixels: u64,
    regions: usize,
    d: &Rational,
) -> Result<f64> {
    check_trials(n_pixels, regions)?;
    scheme.matrix(color)?;
    let secret = PixelGrid::filled(n_pixels as usize, 1, color as u16)?;
    let holders: Vec<usize> = (0..scheme.k).collect();
    let failures = (0..regions)
        .into_par_iter()
        .map(|trial| {
            let trial_cfg = ProbConfig::new(cfg.s, derive_seed(cfg.seed, trial as u64));
            let shares = prob_encode_color(&secret, scheme, trial_cfg)?;
            let counts = stack(&shares, &holders)?.color_counts(0, 0, secret.width, 1)?;
            Ok((classify_color_region(&counts, n_pixels, d) != Some(color)) as usize)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum::<usize>();
    Ok(failures as f64 / regions as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binary::build_2_of_n;
    use crate::color::build_color_2n;
    use crate::combinatorics::parse_rational;
    use crate::gray::build_gvss;
    use crate::prob::subset_distribution;

    fn d(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn gray_stats_values() {
        let st = hyper_stats_gray(2, 6, 1, 100).unwrap();
        assert_eq!(st.mu, ratio(100, 3));
        assert_eq!(st.sigma2, ratio(200, 9));
        let st = hyper_stats_gray(4, 6, 3, 100).unwrap();
        assert_eq!(st.mu, int(200));
        assert_eq!(st.sigma2, int(40));
        assert!(hyper_stats_gray(2, 6, 6, 100).unwrap().sigma2.is_zero());
        assert!(hyper_stats_gray(2, 6, 7, 100).is_err());
        assert!(hyper_stats_gray(2, 6, 1, 0).is_err());
    }

    #[test]
    fn color_stats_values() {
        let st = hyper_stats_color(1, 7, 1, 100).unwrap();
        assert!((to_f64(&st.mu) - 14.2857).abs() < 1e-3);
        assert!((to_f64(&st.sigma2) - 12.2449).abs() < 1e-3);
        let st = hyper_stats_color(1, 7, 7, 100).unwrap();
        assert_eq!((st.mu, st.sigma2), (int(100), Rational::zero()));
        let st = hyper_stats_color(1, 7, 4, 100).unwrap();
        assert!((to_f64(&st.mu) - 57.142857).abs() < 1e-4);
        assert!((to_f64(&st.sigma2) - 24.489796).abs() < 1e-4);
    }

    #[test]
    fn stats_agree_with_distribution_tables() {
        for (a, m) in [(2usize, 6usize), (3, 6), (4, 6), (1, 7), (5, 12)] {
            for s in 1..=m {
                let t = subset_distribution(a, m - a, s).unwrap();
                let st = hyper_stats_gray(a, m, s, 37).unwrap();
                assert_eq!(st.mu, &t.h_bar * int(37));
                assert_eq!(st.sigma2, t.variance() * int(37));
            }
        }
    }

    #[test]
    fn gray_recognition_area_example() {
        assert_eq!(recognition_area_gray(2, 3, 6, 1, &d("0.05")).unwrap(), 624);
        assert_eq!(recognition_area_gray(2, 3, 6, 6, &d("0.05")).unwrap(), 0);
        // order of the two levels does not matter
        assert_eq!(recognition_area_gray(3, 2, 6, 1, &d("0.05")).unwrap(), 624);
        assert!(recognition_area_gray(2, 3, 6, 1, &d("0")).is_err());
        assert!(recognition_area_gray(2, 3, 6, 1, &d("1/6")).is_err());
        assert!(recognition_area_gray(2, 3, 6, 0, &d("0.05")).is_err());
    }

    #[test]
    fn gray_recognition_area_is_tight() {
        // N_min must exceed the real-valued bound, N_min - 1 must not.
        for (a0, a1, m, s, dd) in [(2, 3, 6, 1, 0.05), (2, 3, 6, 3, 0.1), (1, 2, 3, 1, 0.1), (3, 4, 6, 2, 0.02)] {
            let n = recognition_area_gray(a0, a1, m, s, &d(&dd.to_string())).unwrap() as f64;
            let (mf, sf) = (m as f64, s as f64);
            let spread = ((a1 * (m - a1)) as f64).sqrt() + ((a0 * (m - a0)) as f64).sqrt();
            let bound = 9.0 * sf * (mf - sf) / (mf - 1.0) * (spread / (sf * (a1 - a0) as f64 - mf * dd)).powi(2);
            assert!(n > bound && n - 1.0 <= bound, "({a0},{a1},{m},{s},{dd}): {n} vs {bound}");
        }
    }

    #[test]
    fn binary_case_matches_probability_form() {
        for n in 2..6 {
            let base = build_2_of_n(n).unwrap();
            let m = base.m;
            let (a0, a1) = (m - base.h, m - base.l);
            let (p0, p1) = (a0 as f64 / m as f64, a1 as f64 / m as f64);
            let dd = 0.02;
            let got = recognition_area_gray(a0, a1, m, 1, &d("0.02")).unwrap();
            let bound = binary_recognition_bound(p0, p1, dd);
            assert_eq!(got, bound.floor() as u64 + 1, "n={n}");
            // complementary (white-count) probabilities give the same area
            assert!((binary_recognition_bound(1.0 - p0, 1.0 - p1, dd) - bound).abs() < 1e-9);
        }
    }

    #[test]
    fn gray_area_monotone_in_margin() {
        let mut last = 0;
        for k in 1..16 {
            let margin = ratio(k, 100);
            let n = recognition_area_gray(2, 3, 6, 1, &margin).unwrap();
            assert!(n >= last);
            last = n;
        }
        // more subpixels per pixel, smaller areas
        let areas: Vec<u64> = (1..=6)
            .map(|s| recognition_area_gray(2, 3, 6, s, &d("0.05")).unwrap())
            .collect();
        assert!(areas.windows(2).all(|w| w[1] <= w[0]), "{areas:?}");
        assert_eq!(*areas.last().unwrap(), 0);
    }

    #[test]
    fn color_recognition_area() {
        assert_eq!(recognition_area_color(1, 7, 1, &d("0.05")).unwrap(), 128);
        assert_eq!(recognition_area_color(1, 7, 7, &d("0.05")).unwrap(), 0);
        assert!(recognition_area_color(1, 7, 1, &d("1/7")).is_err());
        assert!(recognition_area_color(1, 7, 1, &d("-0.1")).is_err());
    }

    #[test]
    fn unit_bound_equals_general_bound() {
        for m in 2..12usize {
            for t in 1..m {
                let margin = ratio(1, 4 * m as u64);
                let general = recognition_bound_color(1, m, t, &margin).unwrap();
                let unit = recognition_bound_color_unit(m, t, &margin).unwrap();
                assert_eq!(general, unit, "m'={m} t={t}");
            }
            // t = 1: 9(m-1)/(1 - m d)^2
            let margin = ratio(1, 4 * m as u64);
            let single = int(9 * (m as u64 - 1)) / ((int(1) - int(m as u64) * &margin).pow(2));
            assert_eq!(recognition_bound_color_unit(m, 1, &margin).unwrap(), single);
        }
    }

    #[test]
    fn simulation_deterministic_at_full_expansion() {
        let scheme = build_gvss(&build_2_of_n(3).unwrap(), 3).unwrap();
        let sim = simulate_region(&scheme, 1, ProbConfig::new(6, 1), 50, 20).unwrap();
        assert!(sim.samples.iter().all(|&x| x == 150));
        assert_eq!(sim.variance(), 0.0);
    }

    #[test]
    fn simulation_is_reproducible() {
        let scheme = build_gvss(&build_2_of_n(3).unwrap(), 3).unwrap();
        let a = simulate_region(&scheme, 0, ProbConfig::new(1, 5), 100, 50).unwrap();
        let b = simulate_region(&scheme, 0, ProbConfig::new(1, 5), 100, 50).unwrap();
        assert_eq!(a, b);
        assert!(a.histogram_csv().starts_with("sn,count\n"));
        assert_eq!(a.histogram().values().sum::<u64>(), 50);
        assert!(a.stats_sidecar().contains("mu=100/3\n"));
    }

    #[test]
    fn classifier_picks_nearest_mean() {
        let scheme = build_gvss(&build_2_of_n(3).unwrap(), 3).unwrap();
        let c = GrayClassifier::new(&scheme, 1).unwrap();
        // means for 60 pixels: 20, 30, 40
        assert_eq!(c.classify(21, 60, &[0, 1, 2]).unwrap(), 0);
        assert_eq!(c.classify(26, 60, &[0, 1, 2]).unwrap(), 1);
        assert_eq!(c.classify(25, 60, &[0, 1, 2]).unwrap(), 0);
        assert_eq!(c.classify(60, 60, &[0, 1]).unwrap(), 1);
        assert!(c.classify(1, 0, &[0]).is_err());
        assert!(c.classify(1, 10, &[]).is_err());
        assert!(c.classify(1, 10, &[3]).is_err());
    }

    #[test]
    fn color_classifier() {
        let margin = d("0.05");
        assert_eq!(classify_color_region(&[10, 0, 0, 90], 100, &margin), Some(0));
        assert_eq!(classify_color_region(&[3, 0, 0, 97], 100, &margin), None);
        assert_eq!(classify_color_region(&[0, 0, 7, 93], 100, &margin), Some(2));
        assert_eq!(classify_color_region(&[], 100, &margin), None);
    }

    #[test]
    fn color_simulation_full_expansion() {
        let scheme = build_color_2n(3, 3).unwrap();
        let sim = simulate_color_region(&scheme, 2, ProbConfig::new(7, 3), 40, 10).unwrap();
        assert!(sim.samples.iter().all(|&x| x == 40));
        let rate = color_recognition_failure_rate(&scheme, 2, ProbConfig::new(7, 3), 40, 10, &d("0.05")).unwrap();
        assert_eq!(rate, 0.0);
    }
}
