//! Boolean and color basis matrices with the stacking algebra.
//!
//! Subpixel convention: `1` is black (stops light), `0` is white. For color
//! matrices every cell is either one of the `c` palette colors or [`ColorSymbol::Black`].

use std::fmt;

use crate::error::{Result, VssError};

/// A stacked subpixel vector. `true` is a black subpixel.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector(pub Vec<bool>);

impl BitVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of black (1) coordinates.
    pub fn hamming_weight(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    /// Number of white (0) coordinates.
    pub fn zero_count(&self) -> usize {
        self.len() - self.hamming_weight()
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for BitVector {
    type Err = VssError;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(VssError::Parse {
                    line: 1,
                    msg: format!("invalid bit {other:?}"),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitVector)
    }
}

/// Read access shared by boolean and color matrices, used by the
/// column-multiset comparisons and the selection enumerators.
pub trait SymbolMatrix {
    type Symbol: Copy + Ord + std::hash::Hash + fmt::Debug + Send + Sync;

    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    fn get(&self, row: usize, col: usize) -> Self::Symbol;

    /// Column `col` restricted to `rows`, in the given row order.
    fn column_on(&self, col: usize, rows: &[usize]) -> Vec<Self::Symbol> {
        rows.iter().map(|&r| self.get(r, col)).collect()
    }
}

pub(crate) fn check_rows(row_set: &[usize], rows: usize) -> Result<()> {
    if row_set.is_empty() {
        return Err(VssError::EmptyRowSet);
    }
    match row_set.iter().find(|&&r| r >= rows) {
        Some(&index) => Err(VssError::RowOutOfRange { index, rows }),
        None => Ok(()),
    }
}

/// Sorted multiset of the columns of `m` restricted to `rows`.
pub fn column_multiset<M: SymbolMatrix>(m: &M, rows: &[usize]) -> Vec<Vec<M::Symbol>> {
    let mut cols: Vec<_> = (0..m.cols()).map(|c| m.column_on(c, rows)).collect();
    cols.sort_unstable();
    cols
}

/// True iff `a` and `b` have the same multiset of column vectors.
pub fn columns_equal_up_to_permutation<M: SymbolMatrix>(a: &M, b: &M) -> Result<bool> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(VssError::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let all: Vec<usize> = (0..a.rows()).collect();
    Ok(column_multiset(a, &all) == column_multiset(b, &all))
}

/// Like [`columns_equal_up_to_permutation`], but on the restriction of both
/// matrices to `rows`. Callers guarantee equal shapes.
pub(crate) fn restricted_equal<M: SymbolMatrix>(a: &M, b: &M, rows: &[usize]) -> bool {
    a.cols() == b.cols() && column_multiset(a, rows) == column_multiset(b, rows)
}

/// An `n x m` 0/1 matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BooleanMatrix {
    rows: usize,
    cols: usize,
    cells: Vec<u8>,
}

impl BooleanMatrix {
    pub fn new(rows: usize, cols: usize, cells: Vec<u8>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(VssError::InvalidParameter(format!(
                "matrix must be at least 1x1, got {rows}x{cols}"
            )));
        }
        if cells.len() != rows * cols {
            return Err(VssError::DimensionMismatch(format!(
                "{} cells for a {rows}x{cols} matrix",
                cells.len()
            )));
        }
        if let Some(bad) = cells.iter().find(|&&v| v > 1) {
            return Err(VssError::InvalidParameter(format!("cell value {bad} is not 0/1")));
        }
        Ok(Self { rows, cols, cells })
    }

    /// Builds a matrix from row strings such as `"001"`.
    pub fn from_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.as_ref().len());
        let mut cells = Vec::with_capacity(n * m);
        for (i, row) in rows.iter().enumerate() {
            let bits: BitVector = row.as_ref().parse()?;
            if bits.len() != m {
                return Err(VssError::DimensionMismatch(format!(
                    "row {i} has {} columns, expected {m}",
                    bits.len()
                )));
            }
            cells.extend(bits.0.iter().map(|&b| b as u8));
        }
        Self::new(n, m, cells)
    }

    /// A zero-width matrix, the identity for [`concat`](Self::concat).
    pub fn empty(rows: usize) -> Self {
        Self {
            rows,
            cols: 0,
            cells: Vec::new(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            cells: vec![0; rows * cols],
        }
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.cells[row * self.cols + col] = value as u8;
    }

    pub fn row(&self, row: usize) -> &[u8] {
        &self.cells[row * self.cols..(row + 1) * self.cols]
    }

    pub fn ones(&self) -> usize {
        self.cells.iter().map(|&c| c as usize).sum()
    }

    /// OR of the selected rows.
    pub fn or_rows(&self, row_set: &[usize]) -> Result<BitVector> {
        check_rows(row_set, self.rows)?;
        Ok(BitVector(
            (0..self.cols)
                .map(|c| row_set.iter().any(|&r| self.get(r, c) == 1))
                .collect(),
        ))
    }

    /// Horizontal concatenation, `self`'s columns first.
    pub fn concat(&self, other: &BooleanMatrix) -> Result<BooleanMatrix> {
        if self.rows != other.rows {
            return Err(VssError::DimensionMismatch(format!(
                "cannot concatenate {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut cells = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            cells.extend_from_slice(self.row(r));
            cells.extend_from_slice(other.row(r));
        }
        Ok(BooleanMatrix {
            rows: self.rows,
            cols,
            cells,
        })
    }

    pub fn select_columns(&self, cols: &[usize]) -> BooleanMatrix {
        let mut cells = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            cells.extend(cols.iter().map(|&c| self.get(r, c)));
        }
        BooleanMatrix {
            rows: self.rows,
            cols: cols.len(),
            cells,
        }
    }
}

impl SymbolMatrix for BooleanMatrix {
    type Symbol = u8;

    fn rows(&self) -> usize {
        self.rows
    }

    fn cols(&self) -> usize {
        self.cols
    }

    fn get(&self, row: usize, col: usize) -> u8 {
        self.cells[row * self.cols + col]
    }
}

/// A subpixel of a color share: one of the palette colors, or black.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ColorSymbol {
    Color(u16),
    Black,
}

impl fmt::Display for ColorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColorSymbol::Color(i) => write!(f, "{i}"),
            ColorSymbol::Black => f.write_str("B"),
        }
    }
}

/// Result of a generalized OR that also records whether two distinct
/// non-black colors were combined (left undefined by the block-subpixel
/// variant of the algebra; such a mix never occurs in a valid scheme).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StrictOr {
    pub symbol: ColorSymbol,
    pub mixed_colors: bool,
}

/// Generalized OR: color `i` if every input is color `i`, black otherwise.
/// Returns `None` for an empty input.
pub fn generalized_or<I: IntoIterator<Item = ColorSymbol>>(symbols: I) -> Option<ColorSymbol> {
    generalized_or_strict(symbols).map(|r| r.symbol)
}

pub fn generalized_or_strict<I: IntoIterator<Item = ColorSymbol>>(symbols: I) -> Option<StrictOr> {
    let mut iter = symbols.into_iter();
    let first = iter.next()?;
    let mut seen_color = match first {
        ColorSymbol::Color(i) => Some(i),
        ColorSymbol::Black => None,
    };
    let mut black = first == ColorSymbol::Black;
    let mut mixed = false;
    for sym in iter {
        match sym {
            ColorSymbol::Black => black = true,
            ColorSymbol::Color(i) => match seen_color {
                Some(j) if j != i => mixed = true,
                Some(_) => {}
                None => seen_color = Some(i),
            },
        }
    }
    let symbol = match seen_color {
        Some(i) if !black && !mixed => ColorSymbol::Color(i),
        _ => ColorSymbol::Black,
    };
    Some(StrictOr {
        symbol,
        mixed_colors: mixed,
    })
}

/// Number of coordinates equal to `symbol`.
pub fn symbol_count(v: &[ColorSymbol], symbol: ColorSymbol) -> usize {
    v.iter().filter(|&&s| s == symbol).count()
}

/// An `n x m'` matrix over `{0..c-1} ∪ {BLACK}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColorMatrix {
    rows: usize,
    cols: usize,
    palette: usize,
    cells: Vec<ColorSymbol>,
}

impl ColorMatrix {
    pub fn new(rows: usize, cols: usize, palette: usize, cells: Vec<ColorSymbol>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(VssError::InvalidParameter(format!(
                "matrix must be at least 1x1, got {rows}x{cols}"
            )));
        }
        if cells.len() != rows * cols {
            return Err(VssError::DimensionMismatch(format!(
                "{} cells for a {rows}x{cols} matrix",
                cells.len()
            )));
        }
        for cell in &cells {
            if let ColorSymbol::Color(i) = *cell {
                if i as usize >= palette {
                    return Err(VssError::OutOfRange {
                        value: i as usize,
                        bound: palette,
                    });
                }
            }
        }
        Ok(Self {
            rows,
            cols,
            palette,
            cells,
        })
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    pub fn row(&self, row: usize) -> &[ColorSymbol] {
        &self.cells[row * self.cols..(row + 1) * self.cols]
    }

    pub fn set(&mut self, row: usize, col: usize, value: ColorSymbol) {
        self.cells[row * self.cols + col] = value;
    }

    /// Generalized OR of the selected rows.
    pub fn or_rows(&self, row_set: &[usize]) -> Result<Vec<ColorSymbol>> {
        check_rows(row_set, self.rows)?;
        Ok((0..self.cols)
            .map(|c| {
                generalized_or(row_set.iter().map(|&r| self.get(r, c)))
                    .expect("row set is nonempty")
            })
            .collect())
    }

    /// Like [`or_rows`](Self::or_rows), additionally reporting whether any
    /// column combined two distinct colors.
    pub fn or_rows_strict(&self, row_set: &[usize]) -> Result<(Vec<ColorSymbol>, bool)> {
        check_rows(row_set, self.rows)?;
        let mut mixed = false;
        let v = (0..self.cols)
            .map(|c| {
                let r = generalized_or_strict(row_set.iter().map(|&r| self.get(r, c)))
                    .expect("row set is nonempty");
                mixed |= r.mixed_colors;
                r.symbol
            })
            .collect();
        Ok((v, mixed))
    }

    pub fn select_columns(&self, cols: &[usize]) -> ColorMatrix {
        let mut cells = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            cells.extend(cols.iter().map(|&c| self.get(r, c)));
        }
        ColorMatrix {
            rows: self.rows,
            cols: cols.len(),
            palette: self.palette,
            cells,
        }
    }
}

impl SymbolMatrix for ColorMatrix {
    type Symbol = ColorSymbol;

    fn rows(&self) -> usize {
        self.rows
    }

    fn cols(&self) -> usize {
        self.cols
    }

    fn get(&self, row: usize, col: usize) -> ColorSymbol {
        self.cells[row * self.cols + col]
    }
}

/// Either kind of matrix, as read from the text format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyMatrix {
    Bin(BooleanMatrix),
    Color(ColorMatrix),
}

impl fmt::Display for BooleanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} bin", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Display for ColorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} color {}", self.rows, self.cols, self.palette)?;
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Display for AnyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyMatrix::Bin(m) => m.fmt(f),
            AnyMatrix::Color(m) => m.fmt(f),
        }
    }
}

/// Line cursor over a text document that skips blank lines and `#` comments
/// and keeps 1-based line numbers for error messages.
pub struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    pub fn new(text: &'a str) -> Self {
        Self {
            inner: text.lines().enumerate(),
        }
    }

    pub fn next_content(&mut self) -> Option<(usize, &'a str)> {
        for (i, line) in self.inner.by_ref() {
            let trimmed = line.trim();
            if !trimmed.is_empty() && !trimmed.starts_with('#') {
                return Some((i + 1, trimmed));
            }
        }
        None
    }

    pub fn expect_content(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.next_content().ok_or_else(|| VssError::Parse {
            line: 0,
            msg: format!("unexpected end of input, expected {what}"),
        })
    }
}

pub(crate) fn parse_count(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| VssError::Parse {
        line,
        msg: format!("missing {what}"),
    })?;
    tok.parse().map_err(|_| VssError::Parse {
        line,
        msg: format!("invalid {what} {tok:?}"),
    })
}

/// Reads one matrix block (header plus `n` rows) from `lines`.
pub fn read_matrix(lines: &mut Lines<'_>) -> Result<AnyMatrix> {
    let (hline, header) = lines.expect_content("matrix header")?;
    let mut toks = header.split_whitespace();
    let n = parse_count(toks.next(), hline, "row count")?;
    let m = parse_count(toks.next(), hline, "column count")?;
    let kind = toks.next();
    let palette = match kind {
        Some("bin") => None,
        Some("color") => Some(parse_count(toks.next(), hline, "palette size")?),
        other => {
            return Err(VssError::Parse {
                line: hline,
                msg: format!("unknown matrix kind {other:?}"),
            })
        }
    };
    if toks.next().is_some() {
        return Err(VssError::Parse {
            line: hline,
            msg: "trailing tokens in matrix header".into(),
        });
    }
    let mut bits = Vec::new();
    let mut syms = Vec::new();
    for _ in 0..n {
        let (line, text) = lines.expect_content("matrix row")?;
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks.len() != m {
            return Err(VssError::Parse {
                line,
                msg: format!("expected {m} tokens, found {}", toks.len()),
            });
        }
        for tok in toks {
            let bad = || VssError::Parse {
                line,
                msg: format!("invalid token {tok:?}"),
            };
            match palette {
                None => match tok {
                    "0" => bits.push(0),
                    "1" => bits.push(1),
                    _ => return Err(bad()),
                },
                Some(c) => {
                    if tok == "B" {
                        syms.push(ColorSymbol::Black);
                    } else {
                        let i: u16 = tok.parse().map_err(|_| bad())?;
                        if i as usize >= c {
                            return Err(bad());
                        }
                        syms.push(ColorSymbol::Color(i));
                    }
                }
            }
        }
    }
    let wrap = |e: VssError| VssError::Parse {
        line: hline,
        msg: e.to_string(),
    };
    Ok(match palette {
        None => AnyMatrix::Bin(BooleanMatrix::new(n, m, bits).map_err(wrap)?),
        Some(c) => AnyMatrix::Color(ColorMatrix::new(n, m, c, syms).map_err(wrap)?),
    })
}

impl std::str::FromStr for AnyMatrix {
    type Err = VssError;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = Lines::new(s);
        let m = read_matrix(&mut lines)?;
        if let Some((line, _)) = lines.next_content() {
            return Err(VssError::Parse {
                line,
                msg: "trailing content after matrix".into(),
            });
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use ColorSymbol::{Black, Color};

    fn s0() -> BooleanMatrix {
        BooleanMatrix::from_rows(&["001", "001", "001"]).unwrap()
    }

    fn s1() -> BooleanMatrix {
        BooleanMatrix::from_rows(&["100", "010", "001"]).unwrap()
    }

    #[test]
    fn or_rows_example_one() {
        let v = s1().or_rows(&[0, 1]).unwrap();
        assert_eq!(v.to_string(), "110");
        assert_eq!(v.hamming_weight(), 2);
        let w = s0().or_rows(&[0, 1]).unwrap();
        assert_eq!(w.hamming_weight(), 1);
        assert_eq!(w.zero_count(), 2);
    }

    #[test]
    fn or_rows_single_row_is_identity() {
        let m = s1();
        for r in 0..3 {
            let v = m.or_rows(&[r]).unwrap();
            let row: Vec<bool> = m.row(r).iter().map(|&b| b == 1).collect();
            assert_eq!(v.0, row);
        }
    }

    #[test]
    fn or_rows_gray_level_one() {
        let g1 = BooleanMatrix::from_rows(&["001100", "001010", "001001"]).unwrap();
        assert_eq!(g1.or_rows(&[0, 1]).unwrap().to_string(), "001110");
    }

    #[test]
    fn or_rows_errors() {
        assert!(matches!(s0().or_rows(&[]), Err(VssError::EmptyRowSet)));
        assert!(matches!(
            s0().or_rows(&[0, 3]),
            Err(VssError::RowOutOfRange { index: 3, rows: 3 })
        ));
    }

    #[test]
    fn weights() {
        let v: BitVector = "001001".parse().unwrap();
        assert_eq!(v.hamming_weight(), 2);
        let z: BitVector = "000000".parse().unwrap();
        assert_eq!(z.hamming_weight(), 0);
        assert_eq!(z.zero_count(), 6);
    }

    #[test]
    fn column_permutation_equality() {
        let a = BooleanMatrix::from_rows(&["01", "01"]).unwrap();
        let b = BooleanMatrix::from_rows(&["10", "10"]).unwrap();
        assert!(columns_equal_up_to_permutation(&a, &b).unwrap());

        let g0 = BooleanMatrix::from_rows(&["001001"]).unwrap();
        let g2 = BooleanMatrix::from_rows(&["100100"]).unwrap();
        assert!(columns_equal_up_to_permutation(&g0, &g2).unwrap());

        let c = BooleanMatrix::from_rows(&["00", "00"]).unwrap();
        let d = BooleanMatrix::from_rows(&["01", "00"]).unwrap();
        assert!(!columns_equal_up_to_permutation(&c, &d).unwrap());

        let e = BooleanMatrix::from_rows(&["001"]).unwrap();
        assert!(matches!(
            columns_equal_up_to_permutation(&a, &e),
            Err(VssError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn concat_builds_gray_levels() {
        let g1 = s0().concat(&s1()).unwrap();
        assert_eq!(
            g1,
            BooleanMatrix::from_rows(&["001100", "001010", "001001"]).unwrap()
        );
        let g0 = s0().concat(&s0()).unwrap();
        assert_eq!(
            g0,
            BooleanMatrix::from_rows(&["001001", "001001", "001001"]).unwrap()
        );
        assert_eq!(s1().concat(&BooleanMatrix::empty(3)).unwrap(), s1());
        let two = BooleanMatrix::from_rows(&["0", "1"]).unwrap();
        assert!(s0().concat(&two).is_err());
    }

    #[test]
    fn generalized_or_rules() {
        assert_eq!(generalized_or([Color(0), Color(0), Color(0)]), Some(Color(0)));
        assert_eq!(generalized_or([Color(0), Black]), Some(Black));
        assert_eq!(generalized_or([Color(0), Color(1)]), Some(Black));
        assert_eq!(generalized_or([]), None);

        let strict = generalized_or_strict([Color(0), Color(1)]).unwrap();
        assert!(strict.mixed_colors);
        assert_eq!(strict.symbol, Black);
        let strict = generalized_or_strict([Color(2), Black]).unwrap();
        assert!(!strict.mixed_colors);
    }

    #[test]
    fn text_format_round_trip() {
        let text = "3 3 bin\n0 0 1\n0 0 1\n0 0 1\n";
        let m: AnyMatrix = text.parse().unwrap();
        assert_eq!(m.to_string(), text);
        assert_eq!(m, AnyMatrix::Bin(s0()));

        let text = "2 3 color 2\n0 B 1\n0 1 B\n";
        let m: AnyMatrix = text.parse().unwrap();
        assert_eq!(m.to_string(), text);
    }

    #[test]
    fn text_format_rejects_garbage() {
        assert!("2 2 bin\n0 1\n".parse::<AnyMatrix>().is_err());
        assert!("1 2 bin\n0 2\n".parse::<AnyMatrix>().is_err());
        assert!("1 2 color 2\n0 2\n".parse::<AnyMatrix>().is_err());
        assert!("1 2 tri\n0 1\n".parse::<AnyMatrix>().is_err());
        assert!("1 1 bin\n0\n1 1 bin\n".parse::<AnyMatrix>().is_err());
    }

    fn bool_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BooleanMatrix> {
        (1..=max_rows, 1..=max_cols).prop_flat_map(|(n, m)| {
            proptest::collection::vec(0u8..2, n * m)
                .prop_map(move |cells| BooleanMatrix::new(n, m, cells).unwrap())
        })
    }

    fn symbol() -> impl Strategy<Value = ColorSymbol> {
        prop_oneof![(0u16..4).prop_map(Color), Just(Black)]
    }

    proptest! {
        #[test]
        fn weight_plus_zeros_is_length(bits in proptest::collection::vec(any::<bool>(), 0..64)) {
            let v = BitVector(bits);
            prop_assert_eq!(v.hamming_weight() + v.zero_count(), v.len());
        }

        #[test]
        fn or_rows_is_monotone(m in bool_matrix(6, 12), mask in 1u32..64, extra in 0usize..6) {
            let rows: Vec<usize> = (0..m.rows()).filter(|r| mask & (1 << r) != 0).collect();
            prop_assume!(!rows.is_empty());
            let mut bigger = rows.clone();
            bigger.push(extra % m.rows());
            let small = m.or_rows(&rows).unwrap().hamming_weight();
            let large = m.or_rows(&bigger).unwrap().hamming_weight();
            prop_assert!(large >= small);
        }

        #[test]
        fn permuted_columns_are_equivalent(m in bool_matrix(5, 10), seed in any::<u64>()) {
            let mut order: Vec<usize> = (0..m.cols()).collect();
            // cheap deterministic shuffle
            let mut x = seed | 1;
            for i in (1..order.len()).rev() {
                x ^= x << 13; x ^= x >> 7; x ^= x << 17;
                order.swap(i, (x % (i as u64 + 1)) as usize);
            }
            let p = m.select_columns(&order);
            prop_assert!(columns_equal_up_to_permutation(&m, &p).unwrap());
            prop_assert!(columns_equal_up_to_permutation(&p, &m).unwrap());
            prop_assert!(columns_equal_up_to_permutation(&m, &m).unwrap());
        }

        #[test]
        fn generalized_or_commutes_and_associates(syms in proptest::collection::vec(symbol(), 1..8), split in 0usize..8) {
            let whole = generalized_or(syms.iter().copied()).unwrap();
            let mut rev = syms.clone();
            rev.reverse();
            prop_assert_eq!(generalized_or(rev), Some(whole));
            let k = 1 + split % syms.len();
            if k < syms.len() {
                let left = generalized_or(syms[..k].iter().copied()).unwrap();
                let right = generalized_or(syms[k..].iter().copied()).unwrap();
                prop_assert_eq!(generalized_or([left, right]), Some(whole));
            }
            if syms.contains(&Black) {
                prop_assert_eq!(whole, Black);
            }
        }

        #[test]
        fn bin_text_round_trip(m in bool_matrix(6, 10)) {
            let text = m.to_string();
            prop_assert_eq!(text.parse::<AnyMatrix>().unwrap(), AnyMatrix::Bin(m));
        }
    }
}
