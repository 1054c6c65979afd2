//! Exponent matrices, mother matrices and their expansion into binary
//! parity-check matrices built from circulant permutation blocks.
//!
//! An entry `k >= 0` of an exponent matrix stands for the `L x L` circulant
//! permutation matrix `P^k` with ones at `(u, (u + k) mod L)`; the entry `-1`
//! stands for the `L x L` zero block.

use std::fmt;
use std::io::{self, Write};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// An `m x n` integer matrix with circulant size `L` and entries in
/// `{-1, 0, ..., L-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentMatrix {
    rows: usize,
    cols: usize,
    circulant_size: i64,
    entries: Vec<i64>,
}

impl ExponentMatrix {
    /// Builds a matrix from row-major entries, validating dimensions and the
    /// entry range.
    pub fn new(rows: usize, cols: usize, circulant_size: i64, entries: Vec<i64>) -> Result<Self> {
        if rows < 1 || cols < 1 || circulant_size < 1 {
            return Err(Error::BadDimensions {
                rows,
                cols,
                circulant_size,
            });
        }
        if entries.len() != rows * cols {
            return Err(Error::BadDimensions {
                rows,
                cols,
                circulant_size,
            });
        }
        for (idx, &value) in entries.iter().enumerate() {
            if value < -1 || value >= circulant_size {
                return Err(Error::EntryOutOfRange {
                    row: idx / cols,
                    col: idx % cols,
                    value,
                    circulant_size,
                });
            }
        }
        Ok(Self {
            rows,
            cols,
            circulant_size,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn circulant_size(&self) -> i64 {
        self.circulant_size
    }

    /// The shift value at block position `(row, col)`; `-1` marks a zero block.
    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.cols + col]
    }

    /// Row-major view of all entries.
    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// Parses the exponent-matrix text format.
    ///
    /// Line 1 holds `m n L`; the next `m` lines hold `n` space-separated
    /// integers in `[-1, L-1]`. `#` starts a comment that runs to the end of
    /// the line and blank lines are skipped. Errors carry the offending
    /// 1-based line number.
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize, i64)> = None;
        let mut entries: Vec<i64> = Vec::new();
        let mut data_rows = 0usize;
        let mut last_line = 0usize;

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut values: Vec<i64> = Vec::new();
            for token in line.split_whitespace() {
                let value: i64 = token.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    reason: format!("invalid integer `{token}`"),
                })?;
                values.push(value);
            }
            match header {
                None => {
                    if values.len() != 3 {
                        return Err(Error::Parse {
                            line: line_no,
                            reason: format!("header must be `m n L`, found {} values", values.len()),
                        });
                    }
                    let (m, n, l) = (values[0], values[1], values[2]);
                    if m < 1 || n < 1 || l < 1 {
                        return Err(Error::Parse {
                            line: line_no,
                            reason: "header values must all be at least 1".to_string(),
                        });
                    }
                    header = Some((m as usize, n as usize, l));
                    entries.reserve(m as usize * n as usize);
                }
                Some((m, n, l)) => {
                    if data_rows == m {
                        return Err(Error::Parse {
                            line: line_no,
                            reason: format!("expected {m} rows, found extra data"),
                        });
                    }
                    if values.len() != n {
                        return Err(Error::Parse {
                            line: line_no,
                            reason: format!("expected {n} entries in row, found {}", values.len()),
                        });
                    }
                    for &value in &values {
                        if value < -1 || value >= l {
                            return Err(Error::Parse {
                                line: line_no,
                                reason: format!(
                                    "entry {value} out of range [-1, {}] for circulant size {l}",
                                    l - 1
                                ),
                            });
                        }
                    }
                    entries.extend_from_slice(&values);
                    data_rows += 1;
                }
            }
        }

        match header {
            None => Err(Error::Parse {
                line: last_line.max(1),
                reason: "missing `m n L` header".to_string(),
            }),
            Some((m, _, _)) if data_rows < m => Err(Error::Parse {
                line: last_line,
                reason: format!("expected {m} rows, found {data_rows}"),
            }),
            Some((m, n, l)) => Self::new(m, n, l, entries),
        }
    }

    /// The binary mother matrix: 0 exactly where the entry is `-1`.
    pub fn mother(&self) -> MotherMatrix {
        MotherMatrix {
            rows: self.rows,
            cols: self.cols,
            bits: self.entries.iter().map(|&e| e != -1).collect(),
        }
    }

    /// Expands every block into its `L x L` circulant permutation (or zero)
    /// matrix, yielding the `mL x nL` binary parity-check matrix.
    pub fn expand(&self) -> BinaryParityMatrix {
        let l = self.circulant_size as usize;
        let mut rows: Vec<Vec<usize>> = vec![Vec::new(); self.rows * l];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.entry(i, j);
                if e < 0 {
                    continue;
                }
                let k = e as usize;
                for u in 0..l {
                    rows[i * l + u].push(j * l + (u + k) % l);
                }
            }
        }
        BinaryParityMatrix {
            row_count: self.rows * l,
            col_count: self.cols * l,
            rows,
        }
    }

    /// SHA-256 of the canonical text rendering, identifying the matrix in
    /// schedules and reports.
    pub fn sha256_hex(&self) -> String {
        let digest = Sha256::digest(self.to_string().as_bytes());
        let mut out = String::with_capacity(64);
        for byte in digest {
            out.push_str(&format!("{byte:02x}"));
        }
        out
    }
}

impl fmt::Display for ExponentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.rows, self.cols, self.circulant_size)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Binary `m x n` matrix marking nonzero blocks of an exponent matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MotherMatrix {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl MotherMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// True where the source exponent entry was not `-1`.
    pub fn bit(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.cols + col]
    }

    /// Number of ones, i.e. of nonzero blocks.
    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

/// Sparse binary parity-check matrix, stored as sorted column indices per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryParityMatrix {
    row_count: usize,
    col_count: usize,
    rows: Vec<Vec<usize>>,
}

impl BinaryParityMatrix {
    pub fn row_count(&self) -> usize {
        self.row_count
    }

    pub fn col_count(&self) -> usize {
        self.col_count
    }

    /// Sorted column indices of the ones in `row`.
    pub fn row(&self, row: usize) -> &[usize] {
        &self.rows[row]
    }

    /// All set positions in sorted `(row, col)` order.
    pub fn ones(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, cols)| cols.iter().map(move |&c| (r, c)))
    }

    pub fn total_ones(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    fn column_lists(&self) -> Vec<Vec<usize>> {
        let mut cols: Vec<Vec<usize>> = vec![Vec::new(); self.col_count];
        for (r, row) in self.rows.iter().enumerate() {
            for &c in row {
                cols[c].push(r);
            }
        }
        cols
    }

    /// Writes the matrix in alist format: `N M` header, max degrees, the two
    /// degree lists, then per-column and per-row 1-based index lists padded
    /// with zeros to the maximum degree.
    pub fn write_alist<W: Write>(&self, w: &mut W) -> io::Result<()> {
        let cols = self.column_lists();
        let max_col = cols.iter().map(Vec::len).max().unwrap_or(0);
        let max_row = self.rows.iter().map(Vec::len).max().unwrap_or(0);
        writeln!(w, "{} {}", self.col_count, self.row_count)?;
        writeln!(w, "{max_col} {max_row}")?;
        write_degrees(w, &cols)?;
        write_degrees(w, &self.rows)?;
        write_index_lists(w, &cols, max_col)?;
        write_index_lists(w, &self.rows, max_row)?;
        Ok(())
    }

    /// The alist rendering as a string.
    pub fn alist(&self) -> String {
        let mut buf = Vec::new();
        self.write_alist(&mut buf).expect("write to Vec cannot fail");
        String::from_utf8(buf).expect("alist output is ASCII")
    }
}

fn write_degrees<W: Write>(w: &mut W, lists: &[Vec<usize>]) -> io::Result<()> {
    for (i, list) in lists.iter().enumerate() {
        if i > 0 {
            write!(w, " ")?;
        }
        write!(w, "{}", list.len())?;
    }
    writeln!(w)
}

fn write_index_lists<W: Write>(w: &mut W, lists: &[Vec<usize>], width: usize) -> io::Result<()> {
    for list in lists {
        for (i, &idx) in list.iter().enumerate() {
            if i > 0 {
                write!(w, " ")?;
            }
            write!(w, "{}", idx + 1)?;
        }
        for i in list.len()..width {
            if i > 0 {
                write!(w, " ")?;
            }
            write!(w, "0")?;
        }
        writeln!(w)?;
    }
    Ok(())
}

/// Tests whether an exponent chain closes into cycles after expansion.
///
/// For a chain `a_1, ..., a_2l` the condition is
/// `sum_i (-1)^i a_i == 0 (mod L)`; odd positions (`a_1`, `a_3`, ...) carry
/// the negative sign. Only congruence to zero is tested, so the global sign
/// choice has no effect.
pub fn alternating_sum_is_cycle(exponents: &[i64], circulant_size: i64) -> Result<bool> {
    if exponents.len() < 4 || exponents.len() % 2 != 0 {
        return Err(Error::BadChainLength {
            len: exponents.len(),
        });
    }
    if circulant_size < 1 {
        return Err(Error::BadCirculantSize(circulant_size));
    }
    let mut sum: i128 = 0;
    for (t, &a) in exponents.iter().enumerate() {
        if t % 2 == 0 {
            sum -= a as i128;
        } else {
            sum += a as i128;
        }
    }
    Ok(sum.rem_euclid(circulant_size as i128) == 0)
}
