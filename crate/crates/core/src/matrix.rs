//! Base matrices and sparse binary parity-check matrices.

use std::fmt;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// A protograph base matrix: `n_c × n_v` edge multiplicities.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaseMatrix {
    n_c: usize,
    n_v: usize,
    mult: Vec<u32>,
}

impl BaseMatrix {
    pub fn new(n_c: usize, n_v: usize, mult: Vec<u32>) -> Result<Self> {
        if n_c * n_v != mult.len() {
            return Err(Error::InvalidBase(format!(
                "{} entries for a {n_c}x{n_v} grid",
                mult.len()
            )));
        }
        Ok(BaseMatrix { n_c, n_v, mult })
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let n_c = rows.len();
        let n_v = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_v) {
            return Err(Error::InvalidBase("ragged rows".into()));
        }
        Self::new(n_c, n_v, rows.concat())
    }

    pub fn ones(n_c: usize, n_v: usize) -> Self {
        BaseMatrix {
            n_c,
            n_v,
            mult: vec![1; n_c * n_v],
        }
    }

    pub fn zeros(n_c: usize, n_v: usize) -> Self {
        BaseMatrix {
            n_c,
            n_v,
            mult: vec![0; n_c * n_v],
        }
    }

    pub fn n_c(&self) -> usize {
        self.n_c
    }

    pub fn n_v(&self) -> usize {
        self.n_v
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.mult[i * self.n_v + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.mult[i * self.n_v + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.mult[i * self.n_v..(i + 1) * self.n_v]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.mult.chunks(self.n_v.max(1)).take(self.n_c)
    }

    pub fn is_single_edge(&self) -> bool {
        self.mult.iter().all(|&x| x <= 1)
    }

    pub fn is_all_ones(&self) -> bool {
        self.mult.iter().all(|&x| x == 1)
    }

    pub fn row_degree(&self, i: usize) -> u32 {
        self.row(i).iter().sum()
    }

    pub fn col_degree(&self, j: usize) -> u32 {
        (0..self.n_c).map(|i| self.get(i, j)).sum()
    }

    /// Rows or columns with no edges at all.
    pub fn empty_lines(&self) -> (Vec<usize>, Vec<usize>) {
        let rows = (0..self.n_c).filter(|&i| self.row_degree(i) == 0).collect();
        let cols = (0..self.n_v).filter(|&j| self.col_degree(j) == 0).collect();
        (rows, cols)
    }

    /// Submatrix on the given column indices, in that order.
    pub fn select_columns(&self, cols: &[usize]) -> BaseMatrix {
        let mut mult = Vec::with_capacity(self.n_c * cols.len());
        for i in 0..self.n_c {
            mult.extend(cols.iter().map(|&j| self.get(i, j)));
        }
        BaseMatrix {
            n_c: self.n_c,
            n_v: cols.len(),
            mult,
        }
    }

    /// Submatrix on the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> BaseMatrix {
        let mut mult = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            mult.extend(cols.iter().map(|&j| self.get(i, j)));
        }
        BaseMatrix {
            n_c: rows.len(),
            n_v: cols.len(),
            mult,
        }
    }

    pub fn entries(&self) -> &[u32] {
        &self.mult
    }

    /// Text form: `base n_c n_v` header followed by one line per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("base {} {}\n", self.n_c, self.n_v);
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(u32::to_string).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (ln, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing header"))?;
        let hdr: Vec<&str> = header.split_whitespace().collect();
        if hdr.len() != 3 || hdr[0] != "base" {
            return Err(Error::parse(ln, "expected `base n_c n_v`"));
        }
        let n_c = parse_num(hdr[1], ln)?;
        let n_v = parse_num(hdr[2], ln)?;
        let mut mult = Vec::with_capacity(n_c * n_v);
        for _ in 0..n_c {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| Error::parse(ln, "too few rows"))?;
            let row: Vec<u32> = line
                .split_whitespace()
                .map(|t| parse_num(t, ln).map(|x| x as u32))
                .collect::<Result<_>>()?;
            if row.len() != n_v {
                return Err(Error::parse(ln, format!("expected {n_v} entries")));
            }
            mult.extend(row);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::parse(ln, "trailing data"));
        }
        Self::new(n_c, n_v, mult)
    }
}

impl fmt::Debug for BaseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BaseMatrix[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{row:?}")?;
        }
        write!(f, "]")
    }
}

/// Non-empty, non-comment lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

pub(crate) fn parse_num(tok: &str, line: usize) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("bad integer `{tok}`")))
}

/// A sparse GF(2) matrix stored by rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ParityCheck {
    rows: usize,
    cols: usize,
    support: Vec<Vec<usize>>,
}

impl ParityCheck {
    /// Builds the matrix from per-row column lists. Each list is sorted; a
    /// repeated entry is an error.
    pub fn from_rows(cols: usize, mut support: Vec<Vec<usize>>) -> Result<Self> {
        for (i, row) in support.iter_mut().enumerate() {
            row.sort_unstable();
            if row.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidSpec(format!("duplicate entry in row {i}")));
            }
            if row.last().is_some_and(|&c| c >= cols) {
                return Err(Error::InvalidSpec(format!("column out of range in row {i}")));
            }
        }
        Ok(ParityCheck {
            rows: support.len(),
            cols,
            support,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ParityCheck {
            rows,
            cols,
            support: vec![Vec::new(); rows],
        }
    }

    pub fn from_dense(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidSpec("ragged rows".into()));
        }
        let support = rows
            .iter()
            .map(|r| (0..cols).filter(|&j| r[j] & 1 == 1).collect())
            .collect();
        Ok(ParityCheck {
            rows: rows.len(),
            cols,
            support,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.support[i]
    }

    pub fn row_supports(&self) -> &[Vec<usize>] {
        &self.support
    }

    pub fn nnz(&self) -> usize {
        self.support.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.support[i].binary_search(&j).is_ok()
    }

    pub fn col_supports(&self) -> Vec<Vec<usize>> {
        let mut cols = vec![Vec::new(); self.cols];
        for (i, row) in self.support.iter().enumerate() {
            for &j in row {
                cols[j].push(i);
            }
        }
        cols
    }

    pub fn row_weights(&self) -> Vec<usize> {
        self.support.iter().map(Vec::len).collect()
    }

    pub fn col_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.cols];
        for row in &self.support {
            for &j in row {
                w[j] += 1;
            }
        }
        w
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        self.support
            .iter()
            .map(|row| {
                let mut d = vec![0u8; self.cols];
                for &j in row {
                    d[j] = 1;
                }
                d
            })
            .collect()
    }

    /// `H · x^T` over GF(2) for a 0/1 vector `x`.
    pub fn syndrome(&self, x: &[u8]) -> Vec<u8> {
        self.support
            .iter()
            .map(|row| row.iter().fold(0u8, |acc, &j| acc ^ (x[j] & 1)))
            .collect()
    }

    pub fn is_codeword(&self, x: &[u8]) -> bool {
        x.len() == self.cols
            && self
                .support
                .iter()
                .all(|row| row.iter().fold(0u8, |acc, &j| acc ^ (x[j] & 1)) == 0)
    }

    /// Keeps the first `k` columns.
    pub fn truncate_columns(&self, k: usize) -> ParityCheck {
        ParityCheck {
            rows: self.rows,
            cols: k.min(self.cols),
            support: self
                .support
                .iter()
                .map(|row| row.iter().copied().filter(|&j| j < k).collect())
                .collect(),
        }
    }

    /// MacKay alist text: dimensions, maximum degrees, per-column and
    /// per-row degree lists, then the 1-based neighbour lists padded with
    /// zeros to the maximum degree.
    pub fn to_alist(&self) -> String {
        let cols = self.col_supports();
        let cw: Vec<usize> = cols.iter().map(Vec::len).collect();
        let rw = self.row_weights();
        let max_c = cw.iter().copied().max().unwrap_or(0);
        let max_r = rw.iter().copied().max().unwrap_or(0);
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.cols, self.rows);
        let _ = writeln!(s, "{max_c} {max_r}");
        let _ = writeln!(s, "{}", join(cw.iter().copied()));
        let _ = writeln!(s, "{}", join(rw.iter().copied()));
        for col in &cols {
            let _ = writeln!(s, "{}", join(padded(col, max_c)));
        }
        for row in &self.support {
            let _ = writeln!(s, "{}", join(padded(row, max_r)));
        }
        s
    }

    pub fn from_alist(text: &str) -> Result<Self> {
        let mut toks = text
            .lines()
            .enumerate()
            .flat_map(|(i, l)| l.split_whitespace().map(move |t| (i + 1, t)));
        let mut next = |what: &str| -> Result<usize> {
            let (ln, t) = toks
                .next()
                .ok_or_else(|| Error::parse(0, format!("unexpected end of input reading {what}")))?;
            parse_num(t, ln)
        };
        let n = next("column count")?;
        let m = next("row count")?;
        let max_c = next("max column degree")?;
        let max_r = next("max row degree")?;
        let cw: Vec<usize> = (0..n).map(|_| next("column degree")).collect::<Result<_>>()?;
        let rw: Vec<usize> = (0..m).map(|_| next("row degree")).collect::<Result<_>>()?;
        let mut col_lists = Vec::with_capacity(n);
        for &w in &cw {
            let entries: Vec<usize> = (0..max_c).map(|_| next("column entry")).collect::<Result<_>>()?;
            col_lists.push(nonzero_prefix(&entries, w, m)?);
        }
        let mut row_lists = Vec::with_capacity(m);
        for &w in &rw {
            let entries: Vec<usize> = (0..max_r).map(|_| next("row entry")).collect::<Result<_>>()?;
            row_lists.push(nonzero_prefix(&entries, w, n)?);
        }
        let h = ParityCheck::from_rows(n, row_lists)?;
        let mut from_cols = vec![Vec::new(); m];
        for (j, col) in col_lists.iter().enumerate() {
            for &i in col {
                from_cols[i].push(j);
            }
        }
        let check = ParityCheck::from_rows(n, from_cols)?;
        if check != h {
            return Err(Error::parse(0, "row and column lists disagree"));
        }
        Ok(h)
    }
}

impl fmt::Debug for ParityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParityCheck({}x{}, nnz={})", self.rows, self.cols, self.nnz())
    }
}

fn join(it: impl Iterator<Item = usize>) -> String {
    it.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn padded(list: &[usize], len: usize) -> impl Iterator<Item = usize> + '_ {
    list.iter()
        .map(|&x| x + 1)
        .chain(std::iter::repeat(0))
        .take(len)
}

fn nonzero_prefix(entries: &[usize], w: usize, bound: usize) -> Result<Vec<usize>> {
    if w > entries.len() {
        return Err(Error::parse(0, "degree exceeds maximum degree"));
    }
    let (head, tail) = entries.split_at(w);
    if head.iter().any(|&x| x == 0 || x > bound) || tail.iter().any(|&x| x != 0) {
        return Err(Error::parse(0, "malformed neighbour list"));
    }
    Ok(head.iter().map(|&x| x - 1).collect())
}
