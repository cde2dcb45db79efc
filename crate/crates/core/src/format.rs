//! Scheme files: a header line followed by matrix blocks in the matrix text
//! format.
//!
//! ```text
//! VSS k n m          two blocks: S0, S1
//! GVSS k n m* g      g blocks: G^0 .. G^{g-1}
//! CVSS k n m' c      c blocks: C_0 .. C_{c-1}
//! ```

use std::fmt;
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::binary::{build_2_of_n, validate_binary_scheme, BinaryReport, BinaryScheme};
use crate::color::{build_color_2n, validate_color_scheme, ColorReport, ColorScheme};
use crate::error::{Result, VssError};
use crate::gray::{build_gvss, validate_gvss, GrayReport, GrayScheme};
use crate::matrix::{parse_count, read_matrix, AnyMatrix, BooleanMatrix, ColorMatrix, Lines, SymbolMatrix};
use crate::report::KeyValueReport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchemeFile {
    Binary { k: usize, s0: BooleanMatrix, s1: BooleanMatrix },
    Gray { k: usize, levels: Vec<BooleanMatrix> },
    Color { k: usize, matrices: Vec<ColorMatrix> },
}

/// Validation outcome for any scheme kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyReport {
    Binary(BinaryReport),
    Gray(GrayReport),
    Color(ColorReport),
}

impl KeyValueReport for AnyReport {
    fn entries(&self) -> Vec<(String, String)> {
        match self {
            AnyReport::Binary(r) => r.entries(),
            AnyReport::Gray(r) => r.entries(),
            AnyReport::Color(r) => r.entries(),
        }
    }

    fn is_valid(&self) -> bool {
        match self {
            AnyReport::Binary(r) => r.is_valid(),
            AnyReport::Gray(r) => r.is_valid(),
            AnyReport::Color(r) => r.is_valid(),
        }
    }
}

impl SchemeFile {
    pub fn k(&self) -> usize {
        match self {
            SchemeFile::Binary { k, .. } | SchemeFile::Gray { k, .. } | SchemeFile::Color { k, .. } => *k,
        }
    }

    pub fn validate(&self) -> Result<AnyReport> {
        Ok(match self {
            SchemeFile::Binary { k, s0, s1 } => AnyReport::Binary(validate_binary_scheme(s0, s1, *k)?),
            SchemeFile::Gray { k, levels } => AnyReport::Gray(validate_gvss(levels, *k)?),
            SchemeFile::Color { k, matrices } => AnyReport::Color(validate_color_scheme(matrices, *k)?),
        })
    }

    /// Lowercase hex SHA-256 of the canonical text form.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.to_string().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// The scheme as a gray scheme; a binary scheme is the two-level case.
    pub fn to_gray(&self) -> Result<GrayScheme> {
        match self {
            SchemeFile::Binary { k, s0, s1 } => {
                let base = BinaryScheme::from_matrices(s0.clone(), s1.clone(), *k)?;
                build_gvss(&base, 2)
            }
            SchemeFile::Gray { k, levels } => GrayScheme::from_levels(levels.clone(), *k),
            SchemeFile::Color { .. } => Err(VssError::Unsupported(
                "a color scheme cannot encode gray levels".into(),
            )),
        }
    }

    pub fn to_color(&self) -> Result<ColorScheme> {
        match self {
            SchemeFile::Color { k, matrices } => ColorScheme::from_matrices(matrices.clone(), *k),
            _ => Err(VssError::Unsupported("expected a color scheme".into())),
        }
    }
}

impl From<&BinaryScheme> for SchemeFile {
    fn from(s: &BinaryScheme) -> Self {
        SchemeFile::Binary {
            k: s.k,
            s0: s.s0.clone(),
            s1: s.s1.clone(),
        }
    }
}

impl From<&GrayScheme> for SchemeFile {
    fn from(s: &GrayScheme) -> Self {
        SchemeFile::Gray {
            k: s.k,
            levels: s.levels.clone(),
        }
    }
}

impl From<&ColorScheme> for SchemeFile {
    fn from(s: &ColorScheme) -> Self {
        SchemeFile::Color {
            k: s.k,
            matrices: s.matrices.clone(),
        }
    }
}

/// Named schemes: `vss233` (the (2,3) binary scheme with m = 3),
/// `gvss233` (its 3-level gray extension, m* = 6) and `cvss237`
/// (the 3-color (2,3) scheme with m' = 7).
pub fn builtin(name: &str) -> Option<SchemeFile> {
    match name {
        "vss233" => build_2_of_n(3).ok().map(|s| (&s).into()),
        "gvss233" => build_gvss(&build_2_of_n(3).ok()?, 3).ok().map(|s| (&s).into()),
        "cvss237" => build_color_2n(3, 3).ok().map(|s| (&s).into()),
        _ => None,
    }
}

pub const BUILTIN_NAMES: [&str; 3] = ["vss233", "gvss233", "cvss237"];

impl fmt::Display for SchemeFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeFile::Binary { k, s0, s1 } => {
                writeln!(f, "VSS {k} {} {}", s0.rows(), s0.cols())?;
                write!(f, "{s0}{s1}")
            }
            SchemeFile::Gray { k, levels } => {
                let first = &levels[0];
                writeln!(f, "GVSS {k} {} {} {}", first.rows(), first.cols(), levels.len())?;
                levels.iter().try_for_each(|m| write!(f, "{m}"))
            }
            SchemeFile::Color { k, matrices } => {
                let first = &matrices[0];
                writeln!(f, "CVSS {k} {} {} {}", first.rows(), first.cols(), matrices.len())?;
                matrices.iter().try_for_each(|m| write!(f, "{m}"))
            }
        }
    }
}

impl FromStr for SchemeFile {
    type Err = VssError;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = Lines::new(text);
        let (hline, header) = lines.expect_content("scheme header")?;
        let mut toks = header.split_whitespace();
        let kind = toks.next().unwrap_or_default();
        let k = parse_count(toks.next(), hline, "k")?;
        let n = parse_count(toks.next(), hline, "n")?;
        let m = parse_count(toks.next(), hline, "pixel expansion")?;
        let blocks = match kind {
            "VSS" => 2,
            "GVSS" | "CVSS" => parse_count(toks.next(), hline, "level/color count")?,
            other => {
                return Err(VssError::Parse {
                    line: hline,
                    msg: format!("unknown scheme kind {other:?}"),
                })
            }
        };
        if toks.next().is_some() {
            return Err(VssError::Parse {
                line: hline,
                msg: "trailing tokens in scheme header".into(),
            });
        }
        if blocks == 0 {
            return Err(VssError::Parse {
                line: hline,
                msg: "scheme needs at least one matrix".into(),
            });
        }
        let mismatch = |what: String| VssError::Parse { line: hline, msg: what };

        let mut bins = Vec::new();
        let mut colors = Vec::new();
        for i in 0..blocks {
            let mat = read_matrix(&mut lines)?;
            let (rows, cols) = match &mat {
                AnyMatrix::Bin(b) => (b.rows(), b.cols()),
                AnyMatrix::Color(c) => (c.rows(), c.cols()),
            };
            if rows != n || cols != m {
                return Err(mismatch(format!(
                    "block {i} is {rows}x{cols}, header declares {n}x{m}"
                )));
            }
            match (kind, mat) {
                ("CVSS", AnyMatrix::Color(c)) => {
                    if c.palette() != blocks {
                        return Err(mismatch(format!(
                            "block {i} has palette {}, header declares {blocks} colors",
                            c.palette()
                        )));
                    }
                    colors.push(c)
                }
                ("VSS" | "GVSS", AnyMatrix::Bin(b)) => bins.push(b),
                _ => return Err(mismatch(format!("block {i} has the wrong matrix kind"))),
            }
        }
        if let Some((line, _)) = lines.next_content() {
            return Err(VssError::Parse {
                line,
                msg: "trailing content after scheme".into(),
            });
        }
        Ok(match kind {
            "VSS" => {
                let s1 = bins.pop().expect("two blocks");
                let s0 = bins.pop().expect("two blocks");
                SchemeFile::Binary { k, s0, s1 }
            }
            "GVSS" => SchemeFile::Gray { k, levels: bins },
            _ => SchemeFile::Color { k, matrices: colors },
        })
    }
}
