//! Secret and share images on disk.
//!
//! Gray secrets are read from PGM and quantized to `g` levels; color secrets
//! are read from PPM and matched exactly against a palette. Shares are
//! written as PBM (gray schemes, 1 = black) or PPM (color schemes, black is
//! `(0,0,0)`), each with a `key=value` sidecar at `<image path>.meta`.
//! Pixel `(x, y)` of the secret occupies columns `x*s .. x*s+s` of row `y`
//! in every share.

pub mod netpbm;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{invalid, Result, VssError};
use crate::matrix::ColorSymbol;
use crate::prob::{stack, PixelGrid, Planes, ShareSet, StackedData, StackedPlane};

pub use netpbm::{decode, encode, read_netpbm, write_netpbm, Netpbm};

pub type Rgb = [u8; 3];

pub const BLACK: Rgb = [0, 0, 0];
pub const LAYOUT: &str = "horizontal";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SecretKind {
    Gray { levels: usize },
    Color { palette: Vec<Rgb> },
}

/// A secret as per-pixel level or palette indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecretImage {
    pub width: usize,
    pub height: usize,
    pub kind: SecretKind,
    pub pixels: Vec<u16>,
}

impl SecretImage {
    pub fn new(width: usize, height: usize, kind: SecretKind, pixels: Vec<u16>) -> Result<Self> {
        let bound = match &kind {
            SecretKind::Gray { levels } => *levels,
            SecretKind::Color { palette } => palette.len(),
        };
        if bound < 2 {
            return invalid("a secret needs at least two levels or colors");
        }
        if let Some(&v) = pixels.iter().find(|&&v| v as usize >= bound) {
            return Err(VssError::OutOfRange { value: v as usize, bound });
        }
        PixelGrid::new(width, height, pixels.clone())?;
        Ok(Self { width, height, kind, pixels })
    }

    pub fn grid(&self) -> PixelGrid {
        PixelGrid {
            width: self.width,
            height: self.height,
            values: self.pixels.clone(),
        }
    }

    /// Displayable form: gray levels spread over 8 or 16 bits so that
    /// [`load_gray`] reproduces them, colors from the palette.
    pub fn to_netpbm(&self) -> Netpbm {
        match &self.kind {
            SecretKind::Gray { levels } => {
                let maxval: u16 = if *levels <= 256 { 255 } else { 65535 };
                let span = maxval as u64 + 1;
                let g = *levels as u64;
                Netpbm::Graymap {
                    width: self.width,
                    height: self.height,
                    maxval,
                    data: self.pixels.iter().map(|&i| (i as u64 * span).div_ceil(g) as u16).collect(),
                }
            }
            SecretKind::Color { palette } => rgb_image(
                self.width,
                self.height,
                self.pixels.iter().map(|&i| palette[i as usize]),
            ),
        }
    }
}

fn rgb_image(width: usize, height: usize, pixels: impl Iterator<Item = Rgb>) -> Netpbm {
    Netpbm::Pixmap {
        width,
        height,
        maxval: 255,
        data: pixels.map(|p| p.map(u16::from)).collect(),
    }
}

/// `floor(v * g / (maxval + 1))`.
pub fn quantize(value: u16, maxval: u16, g: usize) -> u16 {
    (value as u64 * g as u64 / (maxval as u64 + 1)) as u16
}

pub fn gray_from_netpbm(img: &Netpbm, g: usize) -> Result<SecretImage> {
    if g < 2 || g > u16::MAX as usize {
        return invalid(format!("g = {g} must be at least 2"));
    }
    match img {
        Netpbm::Graymap { width, height, maxval, data } => SecretImage::new(
            *width,
            *height,
            SecretKind::Gray { levels: g },
            data.iter().map(|&v| quantize(v, *maxval, g)).collect(),
        ),
        other => Err(VssError::Image(format!(
            "gray secret must be PGM, got a {} image",
            other.magic()
        ))),
    }
}

pub fn load_gray(path: &Path, g: usize) -> Result<SecretImage> {
    gray_from_netpbm(&read_netpbm(path)?, g)
}

fn check_palette(palette: &[Rgb]) -> Result<()> {
    if palette.len() < 2 {
        return invalid("palette needs at least two colors");
    }
    if palette.contains(&BLACK) {
        return invalid("palette may not contain black (0,0,0)");
    }
    for (i, p) in palette.iter().enumerate() {
        if palette[..i].contains(p) {
            return invalid(format!("palette color {} repeats", fmt_rgb(p)));
        }
    }
    Ok(())
}

pub fn fmt_rgb(p: &Rgb) -> String {
    format!("{},{},{}", p[0], p[1], p[2])
}

/// Parses `r,g,b;r,g,b;...`.
pub fn parse_palette(text: &str) -> Result<Vec<Rgb>> {
    text.split(';')
        .map(|entry| {
            let parts: Vec<&str> = entry.trim().split(',').collect();
            let rgb: Option<Vec<u8>> = parts.iter().map(|p| p.trim().parse().ok()).collect();
            match rgb.as_deref() {
                Some(&[r, g, b]) => Ok([r, g, b]),
                _ => Err(VssError::InvalidParameter(format!("bad palette entry {entry:?}"))),
            }
        })
        .collect()
}

pub fn format_palette(palette: &[Rgb]) -> String {
    palette.iter().map(fmt_rgb).collect::<Vec<_>>().join(";")
}

const MAX_REPORTED_PIXELS: usize = 8;

pub fn color_from_netpbm(img: &Netpbm, palette: &[Rgb]) -> Result<SecretImage> {
    check_palette(palette)?;
    let Netpbm::Pixmap { width, height, maxval, data } = img else {
        return Err(VssError::Image(format!("color secret must be PPM, got a {} image", img.magic())));
    };
    if *maxval != 255 {
        return Err(VssError::Image(format!("color secret must have maxval 255, got {maxval}")));
    }
    let mut pixels = Vec::with_capacity(data.len());
    let mut misses = Vec::new();
    for (i, px) in data.iter().enumerate() {
        let rgb = px.map(|v| v as u8);
        match palette.iter().position(|p| *p == rgb) {
            Some(idx) => pixels.push(idx as u16),
            None => misses.push((i % width, i / width, rgb)),
        }
    }
    if !misses.is_empty() {
        let mut msg = format!("{} pixel(s) not in palette:", misses.len());
        for (x, y, rgb) in misses.iter().take(MAX_REPORTED_PIXELS) {
            let _ = write!(msg, " ({x},{y})=({})", fmt_rgb(rgb));
        }
        if misses.len() > MAX_REPORTED_PIXELS {
            msg.push_str(" ...");
        }
        return Err(VssError::NotInPalette(msg));
    }
    SecretImage::new(*width, *height, SecretKind::Color { palette: palette.to_vec() }, pixels)
}

pub fn load_color(path: &Path, palette: &[Rgb]) -> Result<SecretImage> {
    color_from_netpbm(&read_netpbm(path)?, palette)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShareMetadata {
    pub scheme_hash: String,
    pub share_index: usize,
    pub n: usize,
    pub k: usize,
    pub s: usize,
    pub seed: u64,
    /// Secret dimensions; the share is `width * s` by `height`.
    pub width: usize,
    pub height: usize,
    /// Empty for binary shares.
    pub palette: Vec<Rgb>,
}

impl ShareMetadata {
    pub fn is_color(&self) -> bool {
        !self.palette.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let kind = if self.is_color() { "color" } else { "binary" };
        let _ = writeln!(out, "scheme_hash={}", self.scheme_hash);
        let _ = writeln!(out, "kind={kind}");
        let _ = writeln!(out, "share_index={}", self.share_index);
        let _ = writeln!(out, "n={}", self.n);
        let _ = writeln!(out, "k={}", self.k);
        let _ = writeln!(out, "s={}", self.s);
        let _ = writeln!(out, "seed={}", self.seed);
        let _ = writeln!(out, "width={}", self.width);
        let _ = writeln!(out, "height={}", self.height);
        let _ = writeln!(out, "layout={LAYOUT}");
        if self.is_color() {
            let _ = writeln!(out, "palette={}", format_palette(&self.palette));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| VssError::Parse {
                line: i + 1,
                msg: format!("expected key=value, got {line:?}"),
            })?;
            map.insert(key.trim(), value.trim());
        }
        let get = |key: &str| {
            map.get(key)
                .copied()
                .ok_or_else(|| VssError::Metadata(format!("missing key {key}")))
        };
        let num = |key: &str| -> Result<u64> {
            get(key)?
                .parse()
                .map_err(|_| VssError::Metadata(format!("{key} is not a number")))
        };
        if get("layout")? != LAYOUT {
            return Err(VssError::Metadata(format!("unsupported layout {}", get("layout")?)));
        }
        let palette = match get("kind")? {
            "binary" => Vec::new(),
            "color" => {
                let p = parse_palette(get("palette")?)?;
                check_palette(&p)?;
                p
            }
            other => return Err(VssError::Metadata(format!("unknown share kind {other}"))),
        };
        let meta = Self {
            scheme_hash: get("scheme_hash")?.to_string(),
            share_index: num("share_index")? as usize,
            n: num("n")? as usize,
            k: num("k")? as usize,
            s: num("s")? as usize,
            seed: num("seed")?,
            width: num("width")? as usize,
            height: num("height")? as usize,
            palette,
        };
        if meta.share_index >= meta.n || meta.k == 0 || meta.k > meta.n || meta.s == 0 {
            return Err(VssError::Metadata("inconsistent n, k, s or share index".into()));
        }
        if meta.width == 0 || meta.height == 0 {
            return Err(VssError::Metadata("empty share".into()));
        }
        Ok(meta)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SharePixels {
    Binary(Vec<u8>),
    Color(Vec<ColorSymbol>),
}

/// One participant's share with its metadata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShareImage {
    pub meta: ShareMetadata,
    pub pixels: SharePixels,
}

impl ShareImage {
    /// Pixel dimensions of the share image.
    pub fn dimensions(&self) -> (usize, usize) {
        (self.meta.width * self.meta.s, self.meta.height)
    }

    pub fn to_netpbm(&self) -> Netpbm {
        let (width, height) = self.dimensions();
        match &self.pixels {
            SharePixels::Binary(bits) => Netpbm::Bitmap { width, height, bits: bits.clone() },
            SharePixels::Color(symbols) => rgb_image(width, height, symbols.iter().map(|s| symbol_rgb(*s, &self.meta.palette))),
        }
    }

    pub fn from_netpbm(meta: ShareMetadata, img: &Netpbm) -> Result<Self> {
        let (w, h) = (meta.width * meta.s, meta.height);
        if img.width() != w || img.height() != h {
            return Err(VssError::Metadata(format!(
                "image is {}x{}, metadata implies {w}x{h}",
                img.width(),
                img.height()
            )));
        }
        let pixels = match (img, meta.is_color()) {
            (Netpbm::Bitmap { bits, .. }, false) => SharePixels::Binary(bits.clone()),
            (Netpbm::Pixmap { maxval: 255, data, .. }, true) => SharePixels::Color(
                data.iter()
                    .enumerate()
                    .map(|(i, px)| {
                        let rgb = px.map(|v| v as u8);
                        rgb_symbol(&rgb, &meta.palette).ok_or_else(|| {
                            VssError::NotInPalette(format!(
                                "share pixel ({},{})=({}) is neither black nor a palette color",
                                i % w,
                                i / w,
                                fmt_rgb(&rgb)
                            ))
                        })
                    })
                    .collect::<Result<_>>()?,
            ),
            _ => {
                return Err(VssError::Metadata(format!(
                    "{} image does not match share kind",
                    img.magic()
                )))
            }
        };
        Ok(Self { meta, pixels })
    }
}

fn symbol_rgb(s: ColorSymbol, palette: &[Rgb]) -> Rgb {
    match s {
        ColorSymbol::Color(i) => palette[i as usize],
        ColorSymbol::Black => BLACK,
    }
}

fn rgb_symbol(rgb: &Rgb, palette: &[Rgb]) -> Option<ColorSymbol> {
    if *rgb == BLACK {
        return Some(ColorSymbol::Black);
    }
    palette.iter().position(|p| p == rgb).map(|i| ColorSymbol::Color(i as u16))
}

/// Splits an encoded share set into per-participant images. `palette` is
/// required for color shares and must match the scheme's color count.
pub fn share_images(set: &ShareSet, scheme_hash: &str, palette: &[Rgb]) -> Result<Vec<ShareImage>> {
    let meta = |share_index: usize, palette: Vec<Rgb>| ShareMetadata {
        scheme_hash: scheme_hash.to_string(),
        share_index,
        n: set.n,
        k: set.k,
        s: set.s,
        seed: set.seed,
        width: set.width,
        height: set.height,
        palette,
    };
    match &set.planes {
        Planes::Binary(planes) => Ok(planes
            .iter()
            .enumerate()
            .map(|(i, p)| ShareImage {
                meta: meta(i, Vec::new()),
                pixels: SharePixels::Binary(p.clone()),
            })
            .collect()),
        Planes::Color { palette: c, planes } => {
            check_palette(palette)?;
            if palette.len() != *c {
                return invalid(format!("scheme has {c} colors, palette has {}", palette.len()));
            }
            Ok(planes
                .iter()
                .enumerate()
                .map(|(i, p)| ShareImage {
                    meta: meta(i, palette.to_vec()),
                    pixels: SharePixels::Color(p.clone()),
                })
                .collect())
        }
    }
}

/// Overlays a collection of shares read back from disk. All shares must come
/// from the same encoding and carry distinct indices.
pub fn stack_share_images(shares: &[ShareImage]) -> Result<StackedPlane> {
    let first = shares.first().ok_or(VssError::EmptyRowSet)?;
    let mut seen = vec![false; first.meta.n];
    for sh in shares {
        let m = &sh.meta;
        let same = ShareMetadata { share_index: first.meta.share_index, ..m.clone() } == first.meta;
        if !same {
            return Err(VssError::Metadata(format!(
                "share {} does not belong to the same encoding as share {}",
                m.share_index, first.meta.share_index
            )));
        }
        if std::mem::replace(&mut seen[m.share_index], true) {
            return Err(VssError::Metadata(format!("share {} given twice", m.share_index)));
        }
    }
    let planes = match &first.pixels {
        SharePixels::Binary(_) => Planes::Binary(
            shares
                .iter()
                .map(|sh| match &sh.pixels {
                    SharePixels::Binary(b) => Ok(b.clone()),
                    SharePixels::Color(_) => Err(VssError::Metadata("mixed share kinds".into())),
                })
                .collect::<Result<_>>()?,
        ),
        SharePixels::Color(_) => Planes::Color {
            palette: first.meta.palette.len(),
            planes: shares
                .iter()
                .map(|sh| match &sh.pixels {
                    SharePixels::Color(c) => Ok(c.clone()),
                    SharePixels::Binary(_) => Err(VssError::Metadata("mixed share kinds".into())),
                })
                .collect::<Result<_>>()?,
        },
    };
    let set = ShareSet {
        n: shares.len(),
        k: first.meta.k,
        width: first.meta.width,
        height: first.meta.height,
        s: first.meta.s,
        seed: first.meta.seed,
        planes,
    };
    let all: Vec<usize> = (0..shares.len()).collect();
    stack(&set, &all)
}

/// Renders a stacked plane: PBM for binary stacks, PPM for color stacks.
pub fn stacked_to_netpbm(plane: &StackedPlane, palette: &[Rgb]) -> Result<Netpbm> {
    let (width, height) = (plane.plane_width(), plane.height);
    match &plane.data {
        StackedData::Binary(bits) => Ok(Netpbm::Bitmap { width, height, bits: bits.clone() }),
        StackedData::Color { palette: c, data } => {
            if palette.len() != *c {
                return invalid(format!("stack has {c} colors, palette has {}", palette.len()));
            }
            Ok(rgb_image(width, height, data.iter().map(|s| symbol_rgb(*s, palette))))
        }
    }
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut os = path.as_os_str().to_owned();
    os.push(".meta");
    PathBuf::from(os)
}

pub fn write_share(path: &Path, share: &ShareImage) -> Result<()> {
    write_netpbm(path, &share.to_netpbm())?;
    fs::write(sidecar_path(path), share.meta.render())?;
    Ok(())
}

pub fn read_share(path: &Path) -> Result<ShareImage> {
    let meta = ShareMetadata::parse(&fs::read_to_string(sidecar_path(path))?)?;
    ShareImage::from_netpbm(meta, &read_netpbm(path)?)
}

/// File name of share `index`: `share_<index>.pbm` or `.ppm`.
pub fn share_file_name(share: &ShareImage) -> String {
    let ext = if share.meta.is_color() { "ppm" } else { "pbm" };
    format!("share_{}.{ext}", share.meta.share_index)
}

/// Writes every share into `dir`, returning the image paths in index order.
pub fn write_share_set(dir: &Path, shares: &[ShareImage]) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    shares
        .iter()
        .map(|sh| {
            let path = dir.join(share_file_name(sh));
            write_share(&path, sh)?;
            Ok(path)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binary::build_2_of_n;
    use crate::color::build_color_2n;
    use crate::gray::build_gvss;
    use crate::prob::{prob_encode_color, prob_encode_gray, ProbConfig};

    const RGB3: [Rgb; 3] = [[255, 0, 0], [0, 255, 0], [0, 0, 255]];

    fn pgm(values: Vec<u16>, maxval: u16) -> Netpbm {
        Netpbm::Graymap { width: values.len(), height: 1, maxval, data: values }
    }

    #[test]
    fn quantization() {
        let img = gray_from_netpbm(&pgm(vec![0, 128, 255], 255), 3).unwrap();
        assert_eq!(img.pixels, vec![0, 1, 2]);
        let img = gray_from_netpbm(&pgm(vec![255; 4], 255), 3).unwrap();
        assert!(img.pixels.iter().all(|&p| p == 2));
        let img = gray_from_netpbm(&pgm(vec![0; 4], 255), 3).unwrap();
        assert!(img.pixels.iter().all(|&p| p == 0));
        assert!(gray_from_netpbm(&pgm(vec![0], 255), 1).is_err());
        assert!(gray_from_netpbm(&Netpbm::Bitmap { width: 1, height: 1, bits: vec![0] }, 2).is_err());
    }

    #[test]
    fn quantization_monotone_and_onto() {
        for g in [2usize, 3, 7, 16, 256] {
            for maxval in [1u16, 15, 255, 1000] {
                let levels: Vec<u16> = (0..=maxval).map(|v| quantize(v, maxval, g)).collect();
                assert!(levels.windows(2).all(|w| w[0] <= w[1]));
                if maxval as usize + 1 >= g {
                    assert_eq!(*levels.last().unwrap() as usize, g - 1);
                    assert!((0..g as u16).all(|l| levels.contains(&l)), "g={g} maxval={maxval}");
                }
            }
        }
    }

    #[test]
    fn gray_secret_renders_back_to_levels() {
        for g in [2usize, 3, 5, 256, 300] {
            let pixels: Vec<u16> = (0..g as u16).collect();
            let img = SecretImage::new(g, 1, SecretKind::Gray { levels: g }, pixels).unwrap();
            assert_eq!(gray_from_netpbm(&img.to_netpbm(), g).unwrap(), img);
        }
    }

    #[test]
    fn palette_matching() {
        let img = rgb_image(3, 1, RGB3.iter().copied());
        assert_eq!(color_from_netpbm(&img, &RGB3).unwrap().pixels, vec![0, 1, 2]);
        let bad = rgb_image(2, 1, [[255, 0, 0], [1, 0, 0]].into_iter());
        let e = color_from_netpbm(&bad, &RGB3).unwrap_err().to_string();
        assert!(e.contains("(1,0)=(1,0,0)"), "{e}");
        assert!(color_from_netpbm(&img, &[[255, 0, 0], BLACK]).is_err());
        assert!(color_from_netpbm(&img, &[[255, 0, 0], [255, 0, 0]]).is_err());
    }

    #[test]
    fn palette_text() {
        let p = parse_palette("255,0,0; 0,255,0;0,0,255").unwrap();
        assert_eq!(p, RGB3.to_vec());
        assert_eq!(parse_palette(&format_palette(&p)).unwrap(), p);
        assert!(parse_palette("1,2").is_err());
        assert!(parse_palette("1,2,300").is_err());
    }

    fn gray_shares(s: usize) -> (SecretImage, ShareSet) {
        let scheme = build_gvss(&build_2_of_n(3).unwrap(), 3).unwrap();
        let pixels = (0..35).map(|i| (i % 3) as u16).collect();
        let secret = SecretImage::new(7, 5, SecretKind::Gray { levels: 3 }, pixels).unwrap();
        let set = prob_encode_gray(&secret.grid(), &scheme, ProbConfig::new(s, 11)).unwrap();
        (secret, set)
    }

    #[test]
    fn gray_share_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        for s in [1, 3, 6] {
            let (secret, set) = gray_shares(s);
            let images = share_images(&set, "abc", &[]).unwrap();
            assert_eq!(images[0].dimensions(), (secret.width * s, secret.height));
            let paths = write_share_set(&dir.path().join(format!("s{s}")), &images).unwrap();
            let back: Vec<ShareImage> = paths.iter().map(|p| read_share(p).unwrap()).collect();
            assert_eq!(back, images);
            let from_disk = stack_share_images(&back[..2]).unwrap();
            assert_eq!(from_disk, stack(&set, &[0, 1]).unwrap());
        }
    }

    #[test]
    fn color_share_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let scheme = build_color_2n(3, 3).unwrap();
        let secret = SecretImage::new(4, 2, SecretKind::Color { palette: RGB3.to_vec() }, vec![0, 1, 2, 0, 2, 2, 1, 0]).unwrap();
        let set = prob_encode_color(&secret.grid(), &scheme, ProbConfig::new(2, 5)).unwrap();
        assert!(share_images(&set, "h", &RGB3[..2]).is_err());
        let images = share_images(&set, "h", &RGB3).unwrap();
        let paths = write_share_set(dir.path(), &images).unwrap();
        assert!(paths[0].to_string_lossy().ends_with("share_0.ppm"));
        let back: Vec<ShareImage> = paths.iter().map(|p| read_share(p).unwrap()).collect();
        assert_eq!(back, images);
        let stacked = stack_share_images(&[back[2].clone(), back[0].clone()]).unwrap();
        assert_eq!(stacked, stack(&set, &[0, 2]).unwrap());
        let rendered = stacked_to_netpbm(&stacked, &RGB3).unwrap();
        assert_eq!((rendered.width(), rendered.height()), (8, 2));
    }

    #[test]
    fn metadata_checks() {
        let (_, set) = gray_shares(1);
        let images = share_images(&set, "abc", &[]).unwrap();
        let text = images[1].meta.render();
        assert!(text.contains("layout=horizontal\n"));
        assert_eq!(ShareMetadata::parse(&text).unwrap(), images[1].meta);
        assert!(ShareMetadata::parse(&text.replace("horizontal", "vertical")).is_err());
        assert!(ShareMetadata::parse(&text.replace("share_index=1", "share_index=3")).is_err());
        assert!(ShareMetadata::parse("n=3").is_err());

        // mismatched encodings and duplicates are refused
        let mut other = images[0].clone();
        other.meta.seed += 1;
        assert!(stack_share_images(&[other, images[1].clone()]).is_err());
        assert!(stack_share_images(&[images[1].clone(), images[1].clone()]).is_err());
        assert!(stack_share_images(&[]).is_err());

        // image dimensions must agree with the sidecar
        let wrong = Netpbm::Bitmap { width: 1, height: 1, bits: vec![0] };
        assert!(ShareImage::from_netpbm(images[0].meta.clone(), &wrong).is_err());
    }
}
