//! Minimal netpbm codec. Reads P1 through P6, writes the raw forms P4, P5
//! and P6. Samples keep their declared `maxval`; nothing is rescaled.

use std::fs;
use std::path::Path;

use crate::error::{Result, VssError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Netpbm {
    /// One byte per pixel, 1 = black.
    Bitmap { width: usize, height: usize, bits: Vec<u8> },
    Graymap { width: usize, height: usize, maxval: u16, data: Vec<u16> },
    Pixmap { width: usize, height: usize, maxval: u16, data: Vec<[u16; 3]> },
}

impl Netpbm {
    pub fn width(&self) -> usize {
        match self {
            Netpbm::Bitmap { width, .. } | Netpbm::Graymap { width, .. } | Netpbm::Pixmap { width, .. } => *width,
        }
    }

    pub fn height(&self) -> usize {
        match self {
            Netpbm::Bitmap { height, .. } | Netpbm::Graymap { height, .. } | Netpbm::Pixmap { height, .. } => *height,
        }
    }

    pub fn magic(&self) -> &'static str {
        match self {
            Netpbm::Bitmap { .. } => "P4",
            Netpbm::Graymap { .. } => "P5",
            Netpbm::Pixmap { .. } => "P6",
        }
    }
}

fn err<T>(msg: impl Into<String>) -> Result<T> {
    Err(VssError::Image(msg.into()))
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_space(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while self.pos < self.bytes.len() && !matches!(self.bytes[self.pos], b'\n' | b'\r') {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u32> {
        self.skip_space();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return err(format!("expected {what} at byte {start}"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .map_or_else(|| err(format!("{what} out of range")), Ok)
    }

    /// A single plain-PBM bit; digits need not be separated.
    fn bit(&mut self) -> Result<u8> {
        self.skip_space();
        match self.bytes.get(self.pos) {
            Some(b'0') => {
                self.pos += 1;
                Ok(0)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(1)
            }
            Some(&b) => err(format!("bad PBM bit {:?}", b as char)),
            None => err("truncated PBM data"),
        }
    }

    /// The single whitespace byte ending a raw header.
    fn raster_start(&mut self) -> Result<&'a [u8]> {
        match self.bytes.get(self.pos) {
            Some(b) if b.is_ascii_whitespace() => Ok(&self.bytes[self.pos + 1..]),
            _ => err("missing whitespace before raster"),
        }
    }
}

fn dims(cur: &mut Cursor) -> Result<(usize, usize)> {
    let w = cur.number("width")? as usize;
    let h = cur.number("height")? as usize;
    if w == 0 || h == 0 {
        return err(format!("empty image {w}x{h}"));
    }
    Ok((w, h))
}

fn maxval(cur: &mut Cursor) -> Result<u16> {
    let v = cur.number("maxval")?;
    if v == 0 || v > 65535 {
        return err(format!("maxval {v} outside 1..=65535"));
    }
    Ok(v as u16)
}

fn check_sample(v: u32, max: u16) -> Result<u16> {
    if v > max as u32 {
        return err(format!("sample {v} exceeds maxval {max}"));
    }
    Ok(v as u16)
}

fn raw_samples(raster: &[u8], count: usize, max: u16) -> Result<Vec<u16>> {
    let wide = max > 255;
    let need = if wide { count * 2 } else { count };
    if raster.len() < need {
        return err(format!("raster has {} bytes, need {need}", raster.len()));
    }
    (0..count)
        .map(|i| {
            let v = if wide {
                u16::from_be_bytes([raster[2 * i], raster[2 * i + 1]]) as u32
            } else {
                raster[i] as u32
            };
            check_sample(v, max)
        })
        .collect()
}

fn triples(flat: Vec<u16>) -> Vec<[u16; 3]> {
    flat.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect()
}

pub fn decode(bytes: &[u8]) -> Result<Netpbm> {
    if bytes.len() < 2 || bytes[0] != b'P' {
        return err("not a netpbm file");
    }
    let kind = bytes[1];
    let mut cur = Cursor { bytes, pos: 2 };
    let (width, height) = dims(&mut cur)?;
    let count = width * height;
    match kind {
        b'1' => {
            let bits = (0..count).map(|_| cur.bit()).collect::<Result<_>>()?;
            Ok(Netpbm::Bitmap { width, height, bits })
        }
        b'4' => {
            let raster = cur.raster_start()?;
            let stride = width.div_ceil(8);
            if raster.len() < stride * height {
                return err("truncated PBM raster");
            }
            let bits = (0..height)
                .flat_map(|y| (0..width).map(move |x| (y, x)))
                .map(|(y, x)| (raster[y * stride + x / 8] >> (7 - x % 8)) & 1)
                .collect();
            Ok(Netpbm::Bitmap { width, height, bits })
        }
        b'2' | b'3' => {
            let max = maxval(&mut cur)?;
            let per = if kind == b'2' { 1 } else { 3 };
            let flat = (0..count * per)
                .map(|_| cur.number("sample").and_then(|v| check_sample(v, max)))
                .collect::<Result<Vec<_>>>()?;
            Ok(if kind == b'2' {
                Netpbm::Graymap { width, height, maxval: max, data: flat }
            } else {
                Netpbm::Pixmap { width, height, maxval: max, data: triples(flat) }
            })
        }
        b'5' | b'6' => {
            let max = maxval(&mut cur)?;
            let raster = cur.raster_start()?;
            let per = if kind == b'5' { 1 } else { 3 };
            let flat = raw_samples(raster, count * per, max)?;
            Ok(if kind == b'5' {
                Netpbm::Graymap { width, height, maxval: max, data: flat }
            } else {
                Netpbm::Pixmap { width, height, maxval: max, data: triples(flat) }
            })
        }
        other => err(format!("unsupported magic P{}", other as char)),
    }
}

fn push_samples(out: &mut Vec<u8>, samples: impl Iterator<Item = u16>, max: u16) {
    for v in samples {
        if max > 255 {
            out.extend_from_slice(&v.to_be_bytes());
        } else {
            out.push(v as u8);
        }
    }
}

/// Raw encoding: P4, P5 or P6.
pub fn encode(img: &Netpbm) -> Vec<u8> {
    let mut out = format!("{}\n{} {}\n", img.magic(), img.width(), img.height()).into_bytes();
    match img {
        Netpbm::Bitmap { width, bits, .. } => {
            for row in bits.chunks(*width) {
                for byte in row.chunks(8) {
                    let packed = byte
                        .iter()
                        .enumerate()
                        .fold(0u8, |acc, (i, &b)| acc | ((b & 1) << (7 - i)));
                    out.push(packed);
                }
            }
        }
        Netpbm::Graymap { maxval, data, .. } => {
            out.extend_from_slice(format!("{maxval}\n").as_bytes());
            push_samples(&mut out, data.iter().copied(), *maxval);
        }
        Netpbm::Pixmap { maxval, data, .. } => {
            out.extend_from_slice(format!("{maxval}\n").as_bytes());
            push_samples(&mut out, data.iter().flatten().copied(), *maxval);
        }
    }
    out
}

pub fn read_netpbm(path: &Path) -> Result<Netpbm> {
    decode(&fs::read(path)?)
}

pub fn write_netpbm(path: &Path, img: &Netpbm) -> Result<()> {
    fs::write(path, encode(img))?;
    Ok(())
}
