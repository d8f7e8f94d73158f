//! Fixed-column conditions for the canonical 3×4 grid
//!
//! ```text
//! I I I I
//! I P R T
//! I Q S U
//! ```
//!
//! Each condition is a word over `P..U` and their transposes. If none of
//! the words in a set evaluates to a matrix with a fixed column, the girth
//! of the lifted code is at least the target of that set.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lift::{PreLiftGrid, QcLiftSpec};
use crate::perm::{CirculantBlockPerm, Perm};

const G6: &str = "P Q R S T U PQ' PR' PT' QS' QU' RS' RT' SU' TU' PQ'SR' PQ'UT' RS'UT'";

const G8: &str = "P Q R S T U \
    PQ' PR' PS' PT' PU' QR' QS' QT' QU' RS' RT' RU' ST' SU' TU' \
    PSR' PUT' RUT' TSR' RQP' TQP' \
    RS'Q RS'U TU'Q TU'S PQ'S PQ'U \
    PQ'SR' PQ'ST' PQ'UR' PQ'UT' PS'UT' \
    RQ'UT' RS'QT' RS'UP' RS'UT'";

const MASKED: &str = "Q R S T QS' RS' RT' QR' QT' ST' RS'Q TSR' RS'QT'";

/// Leading entries of the masked set that already guarantee girth 6.
pub const MASKED_G6_PREFIX: usize = 7;

/// One of the six free positions of the canonical 3×4 grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    P,
    Q,
    R,
    S,
    T,
    U,
}

impl Symbol {
    pub const ALL: [Symbol; 6] = [Symbol::P, Symbol::Q, Symbol::R, Symbol::S, Symbol::T, Symbol::U];

    /// 0-based (row, column) position in the base grid.
    pub fn position(self) -> (usize, usize) {
        match self {
            Symbol::P => (1, 1),
            Symbol::Q => (2, 1),
            Symbol::R => (1, 2),
            Symbol::S => (2, 2),
            Symbol::T => (1, 3),
            Symbol::U => (2, 3),
        }
    }

    fn index(self) -> usize {
        self as usize
    }

    fn letter(self) -> char {
        ['P', 'Q', 'R', 'S', 'T', 'U'][self.index()]
    }

    fn from_letter(c: char) -> Result<Self> {
        Ok(match c {
            'P' => Symbol::P,
            'Q' => Symbol::Q,
            'R' => Symbol::R,
            'S' => Symbol::S,
            'T' => Symbol::T,
            'U' => Symbol::U,
            _ => return Err(Error::UnknownSymbol(c)),
        })
    }
}

/// A word such as `P Q' S R'`: a product of grid entries, some transposed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConditionExpr {
    word: Vec<(Symbol, bool)>,
}

impl ConditionExpr {
    pub fn new(word: Vec<(Symbol, bool)>) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::InvalidSpec("empty condition word".into()));
        }
        Ok(ConditionExpr { word })
    }

    pub fn word(&self) -> &[(Symbol, bool)] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Evaluates the word on a grid of group elements.
    pub fn evaluate<A: GridElement>(&self, grid: &[Option<A>; 6]) -> Result<A> {
        let mut acc: Option<A> = None;
        for &(sym, t) in &self.word {
            let x = grid[sym.index()]
                .as_ref()
                .ok_or(Error::MissingSymbol(sym.letter()))?;
            let x = if t { x.transposed() } else { x.clone() };
            acc = Some(match acc {
                None => x,
                Some(a) => a.times(&x)?,
            });
        }
        acc.ok_or_else(|| Error::InvalidSpec("empty condition word".into()))
    }
}

impl fmt::Display for ConditionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &(sym, t)) in self.word.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}", sym.letter(), if t { "'" } else { "" })?;
        }
        Ok(())
    }
}

impl FromStr for ConditionExpr {
    type Err = Error;

    /// Accepts `RS'Q` as well as `R S' Q`.
    fn from_str(s: &str) -> Result<Self> {
        let mut word: Vec<(Symbol, bool)> = Vec::new();
        for c in s.chars() {
            match c {
                '\'' => match word.last_mut() {
                    Some((_, t)) if !*t => *t = true,
                    _ => return Err(Error::UnknownSymbol('\'')),
                },
                c if c.is_whitespace() => {}
                c => word.push((Symbol::from_letter(c)?, false)),
            }
        }
        ConditionExpr::new(word)
    }
}

/// Elements the condition words can be evaluated on.
pub trait GridElement: Clone {
    fn times(&self, other: &Self) -> Result<Self>;
    fn transposed(&self) -> Self;
    fn fixed_column(&self) -> bool;
}

impl GridElement for Perm {
    fn times(&self, other: &Self) -> Result<Self> {
        self.compose(other)
    }
    fn transposed(&self) -> Self {
        self.transpose()
    }
    fn fixed_column(&self) -> bool {
        self.has_fixed_column()
    }
}

impl GridElement for CirculantBlockPerm {
    fn times(&self, other: &Self) -> Result<Self> {
        self.compose(other)
    }
    fn transposed(&self) -> Self {
        self.transpose()
    }
    fn fixed_column(&self) -> bool {
        self.has_fixed_column()
    }
}

/// Which published list to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionSet {
    Girth6,
    Girth8,
    /// The 3×4 grid with `P` and `U` masked out, target girth 8.
    Masked,
    /// First entries of the masked list, target girth 6.
    MaskedGirth6,
}

impl ConditionSet {
    pub fn for_target(target: usize, masked: bool) -> Result<Self> {
        match (target, masked) {
            (6, false) => Ok(ConditionSet::Girth6),
            (8, false) => Ok(ConditionSet::Girth8),
            (6, true) => Ok(ConditionSet::MaskedGirth6),
            (8, true) => Ok(ConditionSet::Masked),
            _ => Err(Error::Unsupported(format!(
                "no condition set for girth {target}"
            ))),
        }
    }

    pub fn target(self) -> usize {
        match self {
            ConditionSet::Girth6 | ConditionSet::MaskedGirth6 => 6,
            ConditionSet::Girth8 | ConditionSet::Masked => 8,
        }
    }

    pub fn exprs(self) -> Vec<ConditionExpr> {
        let parse = |s: &str| -> Vec<ConditionExpr> {
            s.split_whitespace()
                .map(|w| w.parse().expect("built-in condition word"))
                .collect()
        };
        match self {
            ConditionSet::Girth6 => parse(G6),
            ConditionSet::Girth8 => parse(G8),
            ConditionSet::Masked => parse(MASKED),
            ConditionSet::MaskedGirth6 => parse(MASKED).into_iter().take(MASKED_G6_PREFIX).collect(),
        }
    }
}

/// The published condition words for `target_girth` (6 or 8).
pub fn condition_set(target_girth: usize, masked: bool) -> Result<Vec<ConditionExpr>> {
    Ok(ConditionSet::for_target(target_girth, masked)?.exprs())
}

/// Entries `P..U` of a 3×4 single-edge grid, `None` for zero cells.
pub fn grid_entries<A: Clone>(n_c: usize, n_v: usize, cell: impl Fn(usize, usize) -> Option<A>) -> Result<[Option<A>; 6]> {
    if (n_c, n_v) != (3, 4) {
        return Err(Error::Unsupported(format!(
            "condition sets are defined for 3x4 grids, got {n_c}x{n_v}"
        )));
    }
    Ok(Symbol::ALL.map(|s| {
        let (i, j) = s.position();
        cell(i, j)
    }))
}

/// The six block permutations of a 3×4 spec, which must already have
/// identity blocks on its first row and column.
pub fn spec_entries(spec: &QcLiftSpec) -> Result<[Option<CirculantBlockPerm>; 6]> {
    let b = spec.base();
    if !b.is_single_edge() {
        return Err(Error::Unsupported("condition sets need a single-edge grid".into()));
    }
    let border_ok = (0..b.n_v()).all(|j| spec.single(0, j).is_none_or(|t| t.is_identity()))
        && (0..b.n_c()).all(|i| spec.single(i, 0).is_none_or(|t| t.is_identity()));
    if !border_ok {
        return Err(Error::InvalidSpec(
            "first block row and column must be identity; canonicalize first".into(),
        ));
    }
    grid_entries(b.n_c(), b.n_v(), |i, j| spec.single(i, j).cloned())
}

/// Pre-lift permutations `P..U` of a 3×4 grid.
pub fn grid_perms(grid: &PreLiftGrid) -> Result<[Option<Perm>; 6]> {
    let b = grid.base();
    if !b.is_single_edge() {
        return Err(Error::Unsupported("condition sets need a single-edge grid".into()));
    }
    grid_entries(b.n_c(), b.n_v(), |i, j| grid.cell(i, j).first().cloned())
}

/// Evaluates every word; `true` means the product has no fixed column.
pub fn check_conditions(
    grid: &[Option<CirculantBlockPerm>; 6],
    exprs: &[ConditionExpr],
) -> Result<Vec<(ConditionExpr, bool)>> {
    exprs
        .iter()
        .map(|e| Ok((e.clone(), !e.evaluate(grid)?.fixed_column())))
        .collect()
}

/// Drops every word whose pre-lift product has no fixed column: such a
/// word is satisfied for every choice of circulant shifts.
pub fn prune_conditions(pis: &[Option<Perm>; 6], exprs: &[ConditionExpr]) -> Result<Vec<ConditionExpr>> {
    let mut out = Vec::new();
    for e in exprs {
        if e.evaluate(pis)?.fixed_column() {
            out.push(e.clone());
        }
    }
    Ok(out)
}
