//! One-step and two-step lifting of protographs.
//!
//! A [`QcLiftSpec`] is the complete recipe for a parity-check matrix
//! `H = B^{↑m↻r}`: every base cell `(i, j)` carries `B_{i,j}` circulant-block
//! permutations of size `m·r`. A [`PreLiftGrid`] is the first step alone,
//! the `m × m` permutations without circulant shifts.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::matrix::{content_lines, parse_num, BaseMatrix, ParityCheck};
use crate::perm::{CirculantBlockPerm, Perm};

/// Pre-lift permutations for every edge of a base matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PreLiftGrid {
    base: BaseMatrix,
    m: usize,
    pis: Vec<Vec<Perm>>,
}

impl PreLiftGrid {
    /// `pis` is indexed `i * n_v + j` and holds `B_{i,j}` permutations per cell.
    pub fn new(base: BaseMatrix, m: usize, pis: Vec<Vec<Perm>>) -> Result<Self> {
        if pis.len() != base.n_c() * base.n_v() {
            return Err(Error::SizeMismatch {
                left: pis.len(),
                right: base.n_c() * base.n_v(),
            });
        }
        for (idx, cell) in pis.iter().enumerate() {
            let want = base.get(idx / base.n_v(), idx % base.n_v()) as usize;
            if cell.len() != want {
                return Err(Error::InvalidSpec(format!(
                    "cell ({}, {}) has {} permutations, base multiplicity {want}",
                    idx / base.n_v() + 1,
                    idx % base.n_v() + 1,
                    cell.len()
                )));
            }
            if let Some(p) = cell.iter().find(|p| p.len() != m) {
                return Err(Error::SizeMismatch {
                    left: p.len(),
                    right: m,
                });
            }
        }
        Ok(PreLiftGrid { base, m, pis })
    }

    /// Single-edge grid from one permutation per cell; `None` marks a zero cell.
    pub fn from_cells(n_c: usize, n_v: usize, m: usize, cells: Vec<Option<Perm>>) -> Result<Self> {
        let mult = cells.iter().map(|c| c.is_some() as u32).collect();
        let base = BaseMatrix::new(n_c, n_v, mult)?;
        let pis = cells.into_iter().map(|c| c.into_iter().collect()).collect();
        Self::new(base, m, pis)
    }

    /// Every edge carries the identity.
    pub fn identity(base: &BaseMatrix, m: usize) -> Self {
        let pis = base
            .entries()
            .iter()
            .map(|&b| vec![Perm::identity(m); b as usize])
            .collect();
        PreLiftGrid {
            base: base.clone(),
            m,
            pis,
        }
    }

    pub fn base(&self) -> &BaseMatrix {
        &self.base
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn cell(&self, i: usize, j: usize) -> &[Perm] {
        &self.pis[i * self.base.n_v() + j]
    }

    pub fn cells(&self) -> &[Vec<Perm>] {
        &self.pis
    }

    /// The `(n_c·m) × (n_v·m)` base matrix `B^{↑m}`.
    pub fn matrix(&self) -> BaseMatrix {
        let (n_c, n_v, m) = (self.base.n_c(), self.base.n_v(), self.m);
        let mut out = BaseMatrix::zeros(n_c * m, n_v * m);
        for i in 0..n_c {
            for j in 0..n_v {
                for p in self.cell(i, j) {
                    for x in 0..m {
                        let (row, col) = (i * m + x, j * m + p.apply(x));
                        out.set(row, col, out.get(row, col) + 1);
                    }
                }
            }
        }
        out
    }

    /// Cells where two pre-lift permutations overlap. Allowed, since the
    /// circulant step can still separate them.
    pub fn overlapping_cells(&self) -> Vec<(usize, usize)> {
        let n_v = self.base.n_v();
        let mut out = Vec::new();
        for (idx, cell) in self.pis.iter().enumerate() {
            let clash = cell.iter().enumerate().any(|(a, p)| {
                cell[a + 1..]
                    .iter()
                    .any(|q| p.overlaps(q).unwrap_or(true))
            });
            if clash {
                out.push((idx / n_v, idx % n_v));
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("prelift {} {} {}\n", self.base.n_c(), self.base.n_v(), self.m);
        for i in 0..self.base.n_c() {
            for j in 0..self.base.n_v() {
                for p in self.cell(i, j) {
                    let _ = writeln!(s, "{} {} pi={}", i + 1, j + 1, one_based(p.images()));
                }
            }
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (ln, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing header"))?;
        let hdr: Vec<&str> = header.split_whitespace().collect();
        if hdr.len() != 4 || hdr[0] != "prelift" {
            return Err(Error::parse(ln, "expected `prelift n_c n_v m`"));
        }
        let n_c = parse_num(hdr[1], ln)?;
        let n_v = parse_num(hdr[2], ln)?;
        let m = parse_num(hdr[3], ln)?;
        let mut pis = vec![Vec::new(); n_c * n_v];
        for (ln, line) in lines {
            let term = parse_term_line(line, ln, n_c, n_v, m, None)?;
            pis[term.cell].push(term.pi);
        }
        let mult = pis.iter().map(|c| c.len() as u32).collect();
        Self::new(BaseMatrix::new(n_c, n_v, mult)?, m, pis)
    }
}

/// A full two-step lifting recipe.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QcLiftSpec {
    base: BaseMatrix,
    m: usize,
    r: usize,
    terms: Vec<Vec<CirculantBlockPerm>>,
}

impl QcLiftSpec {
    /// `terms` is indexed `i * n_v + j` and holds `B_{i,j}` block permutations.
    pub fn new(base: BaseMatrix, m: usize, r: usize, terms: Vec<Vec<CirculantBlockPerm>>) -> Result<Self> {
        if terms.len() != base.n_c() * base.n_v() {
            return Err(Error::SizeMismatch {
                left: terms.len(),
                right: base.n_c() * base.n_v(),
            });
        }
        for (idx, cell) in terms.iter().enumerate() {
            let want = base.get(idx / base.n_v(), idx % base.n_v()) as usize;
            if cell.len() != want {
                return Err(Error::InvalidSpec(format!(
                    "cell ({}, {}) has {} terms, base multiplicity {want}",
                    idx / base.n_v() + 1,
                    idx % base.n_v() + 1,
                    cell.len()
                )));
            }
            for t in cell {
                if t.m() != m || t.r() != r {
                    return Err(Error::InvalidSpec(format!(
                        "term of size ({}, {}) in a spec with m={m}, r={r}",
                        t.m(),
                        t.r()
                    )));
                }
            }
        }
        Ok(QcLiftSpec { base, m, r, terms })
    }

    pub fn base(&self) -> &BaseMatrix {
        &self.base
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Block size `m·r` of every cell.
    pub fn block(&self) -> usize {
        self.m * self.r
    }

    pub fn n(&self) -> usize {
        self.base.n_v() * self.block()
    }

    pub fn cell(&self, i: usize, j: usize) -> &[CirculantBlockPerm] {
        &self.terms[i * self.base.n_v() + j]
    }

    pub fn cells(&self) -> &[Vec<CirculantBlockPerm>] {
        &self.terms
    }

    /// The single term of a single-edge cell, `None` for a zero cell.
    pub fn single(&self, i: usize, j: usize) -> Option<&CirculantBlockPerm> {
        match self.cell(i, j) {
            [t] => Some(t),
            _ => None,
        }
    }

    /// The pre-lift permutations, discarding the shifts.
    pub fn grid(&self) -> PreLiftGrid {
        PreLiftGrid {
            base: self.base.clone(),
            m: self.m,
            pis: self
                .terms
                .iter()
                .map(|c| c.iter().map(|t| t.pi().clone()).collect())
                .collect(),
        }
    }

    /// Expands every cell into its `mr × mr` block.
    pub fn expand(&self) -> Result<ParityCheck> {
        let (n_c, n_v, b) = (self.base.n_c(), self.base.n_v(), self.block());
        for (idx, cell) in self.terms.iter().enumerate() {
            for (a, t) in cell.iter().enumerate() {
                for u in &cell[a + 1..] {
                    if t.overlaps(u)? {
                        return Err(Error::OverlappingTerms {
                            row: idx / n_v + 1,
                            col: idx % n_v + 1,
                        });
                    }
                }
            }
        }
        let mut rows = vec![Vec::new(); n_c * b];
        for i in 0..n_c {
            for j in 0..n_v {
                for t in self.cell(i, j) {
                    for x in 0..b {
                        rows[i * b + x].push(j * b + t.apply(x));
                    }
                }
            }
        }
        ParityCheck::from_rows(n_v * b, rows)
    }

    /// Keeps the first `k` block columns.
    pub fn truncate(&self, k: usize) -> Result<Self> {
        let n_v = self.base.n_v();
        if k == 0 || k > n_v {
            return Err(Error::InvalidSpec(format!(
                "cannot truncate {n_v} block columns to {k}"
            )));
        }
        self.select_columns(&(0..k).collect::<Vec<_>>())
    }

    /// Sub-spec on the listed block columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Result<Self> {
        if let Some(&j) = cols.iter().find(|&&j| j >= self.base.n_v()) {
            return Err(Error::InvalidSpec(format!("block column {} out of range", j + 1)));
        }
        let base = self.base.select_columns(cols);
        let terms = (0..self.base.n_c())
            .flat_map(|i| cols.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.cell(i, j).to_vec())
            .collect();
        Self::new(base, self.m, self.r, terms)
    }

    /// Zeroes every cell where `pattern` is 0.
    pub fn mask(&self, pattern: &BaseMatrix) -> Result<Self> {
        let base = mask_base(&self.base, pattern)?;
        let terms = self
            .terms
            .iter()
            .zip(pattern.entries())
            .map(|(c, &keep)| if keep == 0 { Vec::new() } else { c.clone() })
            .collect();
        Self::new(base, self.m, self.r, terms)
    }

    /// Equivalent spec with identity blocks in the first block row and
    /// first block column, obtained by left-multiplying each block row and
    /// right-multiplying each block column by a block permutation.
    ///
    /// Zero cells in the first row or column leave the corresponding
    /// multiplier at the identity.
    pub fn canonicalize(&self) -> Result<Self> {
        if !self.base.is_single_edge() {
            return Err(Error::Unsupported(
                "canonical form is defined for single-edge bases only".into(),
            ));
        }
        let (n_c, n_v) = (self.base.n_c(), self.base.n_v());
        let id = CirculantBlockPerm::identity(self.m, self.r);
        let anchor = self.single(0, 0).cloned();
        // right multipliers: C_j = H_{1,j}^T
        let col_ops: Vec<CirculantBlockPerm> = (0..n_v)
            .map(|j| self.single(0, j).map_or_else(|| id.clone(), |t| t.transpose()))
            .collect();
        // left multipliers: R_i = (H_{i,1} C_1)^T
        let row_ops: Vec<CirculantBlockPerm> = (0..n_c)
            .map(|i| match (i, self.single(i, 0), &anchor) {
                (0, _, _) => Ok(id.clone()),
                (_, Some(t), Some(_)) => Ok(t.compose(&col_ops[0])?.transpose()),
                (_, Some(t), None) => Ok(t.transpose()),
                _ => Ok(id.clone()),
            })
            .collect::<Result<_>>()?;
        let mut terms = Vec::with_capacity(n_c * n_v);
        for i in 0..n_c {
            for j in 0..n_v {
                terms.push(match self.single(i, j) {
                    Some(t) => vec![row_ops[i].compose(t)?.compose(&col_ops[j])?],
                    None => Vec::new(),
                });
            }
        }
        Self::new(self.base.clone(), self.m, self.r, terms)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "qc {} {} {} {}\n",
            self.base.n_c(),
            self.base.n_v(),
            self.m,
            self.r
        );
        for i in 0..self.base.n_c() {
            for j in 0..self.base.n_v() {
                for t in self.cell(i, j) {
                    let shifts: Vec<String> = t.shifts().iter().map(usize::to_string).collect();
                    let _ = writeln!(
                        s,
                        "{} {} pi={} s={}",
                        i + 1,
                        j + 1,
                        one_based(t.pi().images()),
                        shifts.join(" ")
                    );
                }
            }
        }
        s
    }

    /// Parses the line-oriented `qc n_c n_v m r` format. Cell indices and
    /// permutation images are 1-based; shifts lie in `[0, r)`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (ln, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing header"))?;
        let hdr: Vec<&str> = header.split_whitespace().collect();
        if hdr.len() != 5 || hdr[0] != "qc" {
            return Err(Error::parse(ln, "expected `qc n_c n_v m r`"));
        }
        let n_c = parse_num(hdr[1], ln)?;
        let n_v = parse_num(hdr[2], ln)?;
        let m = parse_num(hdr[3], ln)?;
        let r = parse_num(hdr[4], ln)?;
        if m == 0 || r == 0 {
            return Err(Error::parse(ln, "m and r must be positive"));
        }
        let mut terms = vec![Vec::new(); n_c * n_v];
        for (ln, line) in lines {
            let t = parse_term_line(line, ln, n_c, n_v, m, Some(r))?;
            let shifts = t.shifts.unwrap_or_default();
            let cb = CirculantBlockPerm::new(t.pi, shifts, r).map_err(|e| Error::parse(ln, e.to_string()))?;
            terms[t.cell].push(cb);
        }
        let mult = terms.iter().map(|c| c.len() as u32).collect();
        Self::new(BaseMatrix::new(n_c, n_v, mult)?, m, r, terms)
    }
}

struct TermLine {
    cell: usize,
    pi: Perm,
    shifts: Option<Vec<usize>>,
}

fn parse_term_line(
    line: &str,
    ln: usize,
    n_c: usize,
    n_v: usize,
    m: usize,
    r: Option<usize>,
) -> Result<TermLine> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len() < 3 {
        return Err(Error::parse(ln, "expected `i j pi=...`"));
    }
    let i = parse_num(toks[0], ln)?;
    let j = parse_num(toks[1], ln)?;
    if i == 0 || j == 0 || i > n_c || j > n_v {
        return Err(Error::parse(ln, format!("cell ({i}, {j}) outside the base grid")));
    }
    let mut pi = Vec::new();
    let mut shifts = Vec::new();
    let mut field = None;
    for tok in &toks[2..] {
        let value = if let Some(rest) = tok.strip_prefix("pi=") {
            field = Some(0);
            rest
        } else if let Some(rest) = tok.strip_prefix("s=") {
            field = Some(1);
            rest
        } else {
            tok
        };
        if value.is_empty() {
            continue;
        }
        let v = parse_num(value, ln)?;
        match field {
            Some(0) => pi.push(v),
            Some(1) => shifts.push(v),
            _ => return Err(Error::parse(ln, "values before `pi=`")),
        }
    }
    if pi.len() != m || pi.iter().any(|&x| x == 0) {
        return Err(Error::parse(ln, format!("pi needs {m} 1-based images")));
    }
    let pi = Perm::new(pi.iter().map(|x| x - 1).collect()).map_err(|e| Error::parse(ln, e.to_string()))?;
    let shifts = match r {
        Some(_) if shifts.len() != m => {
            return Err(Error::parse(ln, format!("s needs {m} shifts")));
        }
        Some(_) => Some(shifts),
        None if !shifts.is_empty() => return Err(Error::parse(ln, "unexpected shifts")),
        None => None,
    };
    Ok(TermLine {
        cell: (i - 1) * n_v + (j - 1),
        pi,
        shifts,
    })
}

fn one_based(images: &[usize]) -> String {
    images
        .iter()
        .map(|x| (x + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// One-step circulant lifting `B^{↻N}`. `shifts[i * n_v + j]` lists the
/// `B_{i,j}` distinct shifts of cell `(i, j)`.
pub fn one_step_circulant(base: &BaseMatrix, n: usize, shifts: &[Vec<usize>]) -> Result<QcLiftSpec> {
    let grid = PreLiftGrid::identity(base, 1);
    let table: Vec<Vec<Vec<usize>>> = shifts
        .iter()
        .map(|c| c.iter().map(|&s| vec![s]).collect())
        .collect();
    two_step(&grid, n, &table)
}

/// Circulant lifting of a single-edge base from a shift matrix; `None`
/// entries are zero cells.
pub fn from_shift_matrix(rows: &[Vec<Option<usize>>], n: usize) -> Result<QcLiftSpec> {
    let n_c = rows.len();
    let n_v = rows.first().map_or(0, Vec::len);
    let mult = rows.iter().flatten().map(|s| s.is_some() as u32).collect();
    let base = BaseMatrix::new(n_c, n_v, mult)?;
    let shifts: Vec<Vec<usize>> = rows.iter().flatten().map(|s| s.iter().copied().collect()).collect();
    one_step_circulant(&base, n, &shifts)
}

/// The pre-lifted base matrix `B^{↑m}` for per-cell permutations.
pub fn pre_lift(base: &BaseMatrix, pis: Vec<Vec<Perm>>) -> Result<BaseMatrix> {
    let m = pis.iter().flatten().next().map_or(1, Perm::len);
    Ok(PreLiftGrid::new(base.clone(), m, pis)?.matrix())
}

/// Second lifting step: every pre-lift permutation gets a length-`m` shift
/// vector. `shifts[i * n_v + j][t]` belongs to term `t` of cell `(i, j)`.
pub fn two_step(grid: &PreLiftGrid, r: usize, shifts: &[Vec<Vec<usize>>]) -> Result<QcLiftSpec> {
    let cells = grid.cells();
    if shifts.len() != cells.len() {
        return Err(Error::SizeMismatch {
            left: shifts.len(),
            right: cells.len(),
        });
    }
    let mut terms = Vec::with_capacity(cells.len());
    for (idx, (pis, sh)) in cells.iter().zip(shifts).enumerate() {
        if pis.len() != sh.len() {
            return Err(Error::InvalidSpec(format!(
                "cell ({}, {}) has {} terms but {} shift vectors",
                idx / grid.base().n_v() + 1,
                idx % grid.base().n_v() + 1,
                pis.len(),
                sh.len()
            )));
        }
        let cell = pis
            .iter()
            .zip(sh)
            .map(|(p, s)| CirculantBlockPerm::with_shifts_mod(p.clone(), s, r))
            .collect::<Result<Vec<_>>>()?;
        terms.push(cell);
    }
    QcLiftSpec::new(grid.base().clone(), grid.m(), r, terms)
}

/// Single-edge two-step lift with one shift vector per nonzero cell.
pub fn two_step_single(grid: &PreLiftGrid, r: usize, shifts: &[Option<Vec<usize>>]) -> Result<QcLiftSpec> {
    let table: Vec<Vec<Vec<usize>>> = shifts.iter().map(|s| s.iter().cloned().collect()).collect();
    two_step(grid, r, &table)
}

/// Keeps the cells where `pattern` is 1.
pub fn mask_base(base: &BaseMatrix, pattern: &BaseMatrix) -> Result<BaseMatrix> {
    if pattern.n_c() != base.n_c() || pattern.n_v() != base.n_v() {
        return Err(Error::SizeMismatch {
            left: pattern.n_c() * pattern.n_v(),
            right: base.n_c() * base.n_v(),
        });
    }
    let mut out = base.clone();
    for i in 0..base.n_c() {
        for j in 0..base.n_v() {
            match (pattern.get(i, j), base.get(i, j)) {
                (0, _) => out.set(i, j, 0),
                (1, 0) => return Err(Error::MaskOutsideSupport { row: i + 1, col: j + 1 }),
                (1, _) => {}
                _ => return Err(Error::InvalidBase("mask entries must be 0 or 1".into())),
            }
        }
    }
    Ok(out)
}

/// Masks a pre-lift grid.
pub fn mask_grid(grid: &PreLiftGrid, pattern: &BaseMatrix) -> Result<PreLiftGrid> {
    let base = mask_base(grid.base(), pattern)?;
    let pis = grid
        .cells()
        .iter()
        .zip(pattern.entries())
        .map(|(c, &keep)| if keep == 0 { Vec::new() } else { c.clone() })
        .collect();
    PreLiftGrid::new(base, grid.m(), pis)
}
