//! Probabilistic encoding: every secret pixel of level (or color) `i` is
//! shared as `s` distinct columns of the basis matrix `i`, drawn uniformly
//! at random and placed in uniformly random order. Share `r` receives row
//! `r` of the selection.
//!
//! Randomness comes from a ChaCha8 stream per pixel, keyed by
//! `(seed, pixel index)`, so output does not depend on thread count or
//! traversal order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::color::ColorScheme;
use crate::error::{invalid, Result, VssError};
use crate::gray::GrayScheme;
use crate::matrix::{generalized_or, ColorSymbol, SymbolMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProbConfig {
    /// Subpixels per secret pixel, `1..=m*` (gray) or `1..=m'` (color).
    pub s: usize,
    pub seed: u64,
}

impl ProbConfig {
    pub fn new(s: usize, seed: u64) -> Self {
        Self { s, seed }
    }
}

/// A `width x height` grid of gray levels or palette indices, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PixelGrid {
    pub width: usize,
    pub height: usize,
    pub values: Vec<u16>,
}

impl PixelGrid {
    pub fn new(width: usize, height: usize, values: Vec<u16>) -> Result<Self> {
        if width == 0 || height == 0 {
            return invalid(format!("image must be at least 1x1, got {width}x{height}"));
        }
        if values.len() != width * height {
            return Err(VssError::DimensionMismatch(format!(
                "{} values for a {width}x{height} grid",
                values.len()
            )));
        }
        Ok(Self {
            width,
            height,
            values,
        })
    }

    pub fn filled(width: usize, height: usize, value: u16) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    pub fn get(&self, x: usize, y: usize) -> u16 {
        self.values[y * self.width + x]
    }
}

/// Share planes, one per participant. Plane `r` is `height` rows of
/// `width * s` subpixels; pixel `(x, y)` occupies columns `x*s .. x*s+s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Planes {
    Binary(Vec<Vec<u8>>),
    Color { palette: usize, planes: Vec<Vec<ColorSymbol>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShareSet {
    pub n: usize,
    pub k: usize,
    pub width: usize,
    pub height: usize,
    pub s: usize,
    pub seed: u64,
    pub planes: Planes,
}

impl ShareSet {
    /// Subpixel width of every share plane.
    pub fn plane_width(&self) -> usize {
        self.width * self.s
    }

    fn block_range(&self, x: usize, y: usize) -> std::ops::Range<usize> {
        let start = y * self.plane_width() + x * self.s;
        start..start + self.s
    }

    pub fn binary_block(&self, share: usize, x: usize, y: usize) -> Option<&[u8]> {
        match &self.planes {
            Planes::Binary(p) => p.get(share).map(|plane| &plane[self.block_range(x, y)]),
            Planes::Color { .. } => None,
        }
    }

    pub fn color_block(&self, share: usize, x: usize, y: usize) -> Option<&[ColorSymbol]> {
        match &self.planes {
            Planes::Color { planes, .. } => planes.get(share).map(|plane| &plane[self.block_range(x, y)]),
            Planes::Binary(_) => None,
        }
    }
}

/// Splitmix64 finalizer; derives independent seeds for sub-streams.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn pixel_rng(seed: u64, pixel: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(pixel);
    rng
}

/// `s` distinct indices from `0..m`, uniformly chosen and uniformly ordered
/// (partial Fisher-Yates).
pub fn select_columns<R: Rng + ?Sized>(rng: &mut R, m: usize, s: usize) -> Vec<usize> {
    debug_assert!(s <= m);
    let mut idx: Vec<usize> = (0..m).collect();
    for i in 0..s {
        let j = rng.random_range(i..m);
        idx.swap(i, j);
    }
    idx.truncate(s);
    idx
}

fn encode_planes<M: SymbolMatrix + Sync>(
    secret: &PixelGrid,
    matrices: &[M],
    cfg: ProbConfig,
) -> Result<Vec<Vec<M::Symbol>>> {
    let bound = matrices.len();
    if let Some(&bad) = secret.values.iter().find(|&&v| v as usize >= bound) {
        return Err(VssError::OutOfRange {
            value: bad as usize,
            bound,
        });
    }
    let (n, m) = (matrices[0].rows(), matrices[0].cols());
    let s = cfg.s;
    if s == 0 || s > m {
        return invalid(format!("pixel expansion s = {s} must satisfy 1 <= s <= {m}"));
    }
    // share-major n*s block per pixel
    let blocks: Vec<Vec<M::Symbol>> = secret
        .values
        .par_iter()
        .enumerate()
        .map(|(idx, &v)| {
            let mut rng = pixel_rng(cfg.seed, idx as u64);
            let cols = select_columns(&mut rng, m, s);
            let mat = &matrices[v as usize];
            (0..n)
                .flat_map(|r| cols.iter().map(move |&c| mat.get(r, c)))
                .collect()
        })
        .collect();

    let plane_width = secret.width * s;
    let mut planes = vec![Vec::with_capacity(plane_width * secret.height); n];
    for block in &blocks {
        for (r, plane) in planes.iter_mut().enumerate() {
            plane.extend_from_slice(&block[r * s..(r + 1) * s]);
        }
    }
    Ok(planes)
}

/// Encodes a map of gray levels with an `s`-column subsample of each level's basis matrix.
pub fn prob_encode_gray(secret: &PixelGrid, scheme: &GrayScheme, cfg: ProbConfig) -> Result<ShareSet> {
    let planes = encode_planes(secret, &scheme.levels, cfg)?;
    Ok(ShareSet {
        n: scheme.n,
        k: scheme.k,
        width: secret.width,
        height: secret.height,
        s: cfg.s,
        seed: cfg.seed,
        planes: Planes::Binary(planes),
    })
}

/// Encodes a map of palette indices with a `t`-column subsample (`cfg.s = t`).
pub fn prob_encode_color(secret: &PixelGrid, scheme: &ColorScheme, cfg: ProbConfig) -> Result<ShareSet> {
    let planes = encode_planes(secret, &scheme.matrices, cfg)?;
    Ok(ShareSet {
        n: scheme.n,
        k: scheme.k,
        width: secret.width,
        height: secret.height,
        s: cfg.s,
        seed: cfg.seed,
        planes: Planes::Color {
            palette: scheme.c,
            planes,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StackedData {
    Binary(Vec<u8>),
    Color { palette: usize, data: Vec<ColorSymbol> },
}

/// Result of overlaying shares, laid out like a share plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackedPlane {
    pub width: usize,
    pub height: usize,
    pub s: usize,
    pub data: StackedData,
}

impl StackedPlane {
    pub fn plane_width(&self) -> usize {
        self.width * self.s
    }

    fn region_indices(
        &self,
        x0: usize,
        y0: usize,
        w: usize,
        h: usize,
    ) -> impl Iterator<Item = usize> + '_ {
        let pw = self.plane_width();
        let s = self.s;
        (y0..y0 + h).flat_map(move |y| (x0 * s..(x0 + w) * s).map(move |c| y * pw + c))
    }

    /// Black subpixels in the pixel rectangle `[x0, x0+w) x [y0, y0+h)` of a binary stack.
    pub fn black_count(&self, x0: usize, y0: usize, w: usize, h: usize) -> Result<u64> {
        self.check_region(x0, y0, w, h)?;
        match &self.data {
            StackedData::Binary(d) => Ok(self
                .region_indices(x0, y0, w, h)
                .filter(|&i| d[i] == 1)
                .count() as u64),
            StackedData::Color { .. } => invalid("black_count needs a binary stack"),
        }
    }

    /// Per-color subpixel counts in a region of a color stack (index `c` is black).
    pub fn color_counts(&self, x0: usize, y0: usize, w: usize, h: usize) -> Result<Vec<u64>> {
        self.check_region(x0, y0, w, h)?;
        match &self.data {
            StackedData::Color { palette, data } => {
                let mut counts = vec![0u64; palette + 1];
                for i in self.region_indices(x0, y0, w, h) {
                    match data[i] {
                        ColorSymbol::Color(c) => counts[c as usize] += 1,
                        ColorSymbol::Black => counts[*palette] += 1,
                    }
                }
                Ok(counts)
            }
            StackedData::Binary(_) => invalid("color_counts needs a color stack"),
        }
    }

    fn check_region(&self, x0: usize, y0: usize, w: usize, h: usize) -> Result<()> {
        if w == 0 || h == 0 {
            return invalid("empty region");
        }
        if x0 + w > self.width || y0 + h > self.height {
            return invalid(format!(
                "region {w}x{h} at ({x0},{y0}) exceeds {}x{}",
                self.width, self.height
            ));
        }
        Ok(())
    }
}

/// Overlays the selected shares: OR for binary shares, generalized OR for color.
pub fn stack(shares: &ShareSet, subset: &[usize]) -> Result<StackedPlane> {
    if subset.is_empty() {
        return Err(VssError::EmptyRowSet);
    }
    if let Some(&bad) = subset.iter().find(|&&i| i >= shares.n) {
        return Err(VssError::OutOfRange {
            value: bad,
            bound: shares.n,
        });
    }
    let len = shares.plane_width() * shares.height;
    let data = match &shares.planes {
        Planes::Binary(planes) => StackedData::Binary(
            (0..len)
                .map(|i| subset.iter().any(|&r| planes[r][i] == 1) as u8)
                .collect(),
        ),
        Planes::Color { palette, planes } => StackedData::Color {
            palette: *palette,
            data: (0..len)
                .map(|i| generalized_or(subset.iter().map(|&r| planes[r][i])).expect("nonempty"))
                .collect(),
        },
    };
    Ok(StackedPlane {
        width: shares.width,
        height: shares.height,
        s: shares.s,
        data,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binary::build_2_of_n;
    use crate::color::build_color_2n;
    use crate::gray::build_gvss;
    use crate::matrix::{column_multiset, BooleanMatrix};

    fn gvss233() -> GrayScheme {
        build_gvss(&build_2_of_n(3).unwrap(), 3).unwrap()
    }

    #[test]
    fn select_columns_is_a_partial_permutation() {
        let mut rng = pixel_rng(7, 0);
        for s in 1..=6 {
            let mut c = select_columns(&mut rng, 6, s);
            assert_eq!(c.len(), s);
            c.sort_unstable();
            c.dedup();
            assert_eq!(c.len(), s);
            assert!(c.iter().all(|&x| x < 6));
        }
    }

    #[test]
    fn full_expansion_gives_column_permutations() {
        let scheme = gvss233();
        let secret = PixelGrid::new(3, 1, vec![0, 1, 2]).unwrap();
        let shares = prob_encode_gray(&secret, &scheme, ProbConfig::new(6, 11)).unwrap();
        for x in 0..3 {
            let rows: Vec<String> = (0..3)
                .map(|r| {
                    shares.binary_block(r, x, 0).unwrap().iter().map(|b| b.to_string()).collect()
                })
                .collect();
            let block = BooleanMatrix::from_rows(&rows).unwrap();
            let all = [0, 1, 2];
            assert_eq!(column_multiset(&block, &all), column_multiset(&scheme.levels[x], &all));
        }
    }

    #[test]
    fn encoding_is_reproducible() {
        let scheme = gvss233();
        let secret = PixelGrid::new(4, 3, (0..12).map(|v| (v % 3) as u16).collect()).unwrap();
        let a = prob_encode_gray(&secret, &scheme, ProbConfig::new(2, 99)).unwrap();
        let b = prob_encode_gray(&secret, &scheme, ProbConfig::new(2, 99)).unwrap();
        assert_eq!(a, b);
        let c = prob_encode_gray(&secret, &scheme, ProbConfig::new(2, 100)).unwrap();
        assert_ne!(a, c);
        let single = PixelGrid::filled(1, 1, 1).unwrap();
        assert_eq!(
            prob_encode_gray(&single, &scheme, ProbConfig::new(1, 5)).unwrap(),
            prob_encode_gray(&single, &scheme, ProbConfig::new(1, 5)).unwrap()
        );
    }

    #[test]
    fn encode_errors() {
        let scheme = gvss233();
        let bad = PixelGrid::filled(2, 2, 3).unwrap();
        assert!(matches!(
            prob_encode_gray(&bad, &scheme, ProbConfig::new(1, 0)),
            Err(VssError::OutOfRange { value: 3, bound: 3 })
        ));
        let ok = PixelGrid::filled(2, 2, 0).unwrap();
        assert!(prob_encode_gray(&ok, &scheme, ProbConfig::new(7, 0)).is_err());
        assert!(prob_encode_gray(&ok, &scheme, ProbConfig::new(0, 0)).is_err());
        assert!(PixelGrid::new(0, 1, vec![]).is_err());
        assert!(PixelGrid::new(2, 1, vec![0]).is_err());
    }

    #[test]
    fn stacking_full_expansion_level_two() {
        let scheme = gvss233();
        let secret = PixelGrid::filled(5, 1, 2).unwrap();
        let shares = prob_encode_gray(&secret, &scheme, ProbConfig::new(6, 3)).unwrap();
        for pair in [[0, 1], [0, 2], [1, 2]] {
            let st = stack(&shares, &pair).unwrap();
            for x in 0..5 {
                assert_eq!(st.black_count(x, 0, 1, 1).unwrap(), 4);
            }
        }
        let all = stack(&shares, &[0, 1, 2]).unwrap();
        assert_eq!(stack(&shares, &[0, 1, 2, 0, 1, 2]).unwrap(), all);
        assert!(stack(&shares, &[]).is_err());
        assert!(stack(&shares, &[3]).is_err());
    }

    #[test]
    fn stacking_color_full_expansion() {
        let scheme = build_color_2n(3, 3).unwrap();
        let secret = PixelGrid::filled(4, 2, 1).unwrap();
        let shares = prob_encode_color(&secret, &scheme, ProbConfig::new(7, 8)).unwrap();
        let st = stack(&shares, &[0, 2]).unwrap();
        for y in 0..2 {
            for x in 0..4 {
                assert_eq!(st.color_counts(x, y, 1, 1).unwrap(), vec![0, 1, 0, 6]);
            }
        }
        assert!(st.black_count(0, 0, 1, 1).is_err());
    }

    #[test]
    fn color_encoding_reproducible_and_checked() {
        let scheme = build_color_2n(3, 3).unwrap();
        let secret = PixelGrid::new(3, 1, vec![0, 1, 2]).unwrap();
        let a = prob_encode_color(&secret, &scheme, ProbConfig::new(1, 42)).unwrap();
        assert_eq!(a, prob_encode_color(&secret, &scheme, ProbConfig::new(1, 42)).unwrap());
        assert_eq!(a.plane_width(), 3);
        let bad = PixelGrid::filled(1, 1, 3).unwrap();
        assert!(prob_encode_color(&bad, &scheme, ProbConfig::new(1, 42)).is_err());
    }

    #[test]
    fn region_bounds() {
        let scheme = gvss233();
        let secret = PixelGrid::filled(2, 2, 0).unwrap();
        let shares = prob_encode_gray(&secret, &scheme, ProbConfig::new(1, 0)).unwrap();
        let st = stack(&shares, &[0, 1]).unwrap();
        assert!(st.black_count(0, 0, 3, 1).is_err());
        assert!(st.black_count(0, 0, 0, 1).is_err());
        assert!(st.black_count(0, 0, 2, 2).unwrap() <= 4);
    }

    #[test]
    fn derived_seeds_differ() {
        let seeds: std::collections::HashSet<u64> = (0..1000).map(|i| derive_seed(1, i)).collect();
        assert_eq!(seeds.len(), 1000);
    }
}
