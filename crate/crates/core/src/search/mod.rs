//! Searching for good pre-liftings: the cover sieve, design-rule checks
//! and the second-step shift search.

mod canon;
mod rules;
mod shifts;

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;

pub use canon::{canonical_form, equivalent};
pub use rules::{check_design_rule, DesignRule, DesignRuleReport, SubmatrixRule};
pub use shifts::{shift_search, ShiftCandidate, ShiftSearchOptions, ShiftSearchReport};

use crate::distance::{qc_distance_bound, BoundReport};
use crate::error::{Error, Result};
use crate::girth::TannerGraph;
use crate::lift::PreLiftGrid;
use crate::matrix::BaseMatrix;
use crate::perm::Perm;

/// Largest number of covers [`enumerate_covers`] will produce.
pub const MAX_COVERS: u64 = 2_000_000;

/// All permutations of `0..m` in lexicographic order.
pub fn all_perms(m: usize) -> Vec<Perm> {
    let mut cur: Vec<usize> = (0..m).collect();
    let mut out = Vec::new();
    loop {
        out.push(Perm::new(cur.clone()).expect("permutation"));
        // next lexicographic permutation
        let Some(i) = (1..m).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..m).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

fn free_cells(base: &BaseMatrix) -> Vec<usize> {
    (0..base.n_c())
        .flat_map(|i| (0..base.n_v()).map(move |j| (i, j)))
        .filter(|&(i, j)| i > 0 && j > 0 && base.get(i, j) > 0)
        .map(|(i, j)| i * base.n_v() + j)
        .collect()
}

/// Every pre-lift of a single-edge base with identity permutations in
/// the first row and column, free cells varying in lexicographic order
/// (last cell fastest).
pub fn enumerate_covers(base: &BaseMatrix, m: usize) -> Result<Vec<PreLiftGrid>> {
    enumerate_covers_capped(base, m, MAX_COVERS)
}

pub fn enumerate_covers_capped(base: &BaseMatrix, m: usize, cap: u64) -> Result<Vec<PreLiftGrid>> {
    if !base.is_single_edge() {
        return Err(Error::Unsupported("cover enumeration needs a single-edge base".into()));
    }
    if m == 0 {
        return Err(Error::InvalidSpec("pre-lift factor must be positive".into()));
    }
    let free = free_cells(base);
    let fact: u64 = (1..=m as u64).try_fold(1u64, |a, x| a.checked_mul(x)).unwrap_or(u64::MAX);
    let total = (0..free.len()).try_fold(1u64, |a, _| a.checked_mul(fact));
    match total {
        Some(t) if t <= cap => {}
        _ => {
            return Err(Error::SearchSpaceTooLarge(format!(
                "{m}!^{} covers exceed the cap of {cap}",
                free.len()
            )))
        }
    }
    let perms = all_perms(m);
    let mut idx = vec![0usize; free.len()];
    let mut out = Vec::new();
    loop {
        let mut cells: Vec<Vec<Perm>> = base
            .entries()
            .iter()
            .map(|&b| vec![Perm::identity(m); b as usize])
            .collect();
        for (&c, &k) in free.iter().zip(&idx) {
            cells[c] = vec![perms[k].clone()];
        }
        out.push(PreLiftGrid::new(base.clone(), m, cells)?);
        // odometer
        let mut pos = idx.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < perms.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Groups grids whose pre-lifted matrices agree up to row and column
/// permutations. Classes are listed by first member; members keep input
/// order.
pub fn equivalence_classes(grids: &[PreLiftGrid]) -> Vec<Vec<usize>> {
    let forms: Vec<BaseMatrix> = grids.par_iter().map(|g| canonical_form(&g.matrix())).collect();
    let mut index: HashMap<&BaseMatrix, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, f) in forms.iter().enumerate() {
        let id = *index.entry(f).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[id].push(i);
    }
    classes
}

/// A connected piece of a pre-lifted graph: an `m'`-cover of the base.
#[derive(Clone, Debug)]
pub struct CoverComponent {
    pub degree: usize,
    pub checks: Vec<usize>,
    pub variables: Vec<usize>,
}

/// Connected components of the pre-lifted graph, smallest cover first.
pub fn cover_components(grid: &PreLiftGrid) -> Result<Vec<CoverComponent>> {
    let g = TannerGraph::from_base(&grid.matrix())?;
    let n_v = grid.base().n_v();
    let mut out: Vec<CoverComponent> = g
        .components()
        .into_iter()
        .map(|(checks, variables)| CoverComponent {
            degree: variables.len() / n_v,
            checks,
            variables,
        })
        .collect();
    out.sort_by_key(|c| (c.degree, c.variables.first().copied()));
    Ok(out)
}

/// Rejection reason such as `"1-cover + 2-cover"`, `None` when connected.
pub fn disjoint_reason(components: &[CoverComponent]) -> Option<String> {
    (components.len() > 1).then(|| {
        components
            .iter()
            .map(|c| format!("{}-cover", c.degree))
            .collect::<Vec<_>>()
            .join(" + ")
    })
}

/// Smallest permanent bound over the components of a grid; for a
/// disconnected grid this is the bound that actually applies.
pub fn component_bound(grid: &PreLiftGrid) -> Result<u128> {
    let mat = grid.matrix();
    let mut best: Option<u128> = None;
    for c in cover_components(grid)? {
        let sub = mat.select(&c.checks, &c.variables);
        let v = qc_distance_bound(&sub)?.value;
        best = Some(best.map_or(v, |b: u128| b.min(v)));
    }
    best.ok_or(Error::BoundUndefined)
}

/// Connectivity check for each grid: `None` for survivors, otherwise the
/// split into smaller covers.
pub fn disjoint_subcover_filter(grids: &[PreLiftGrid]) -> Result<Vec<Option<String>>> {
    grids
        .iter()
        .map(|g| Ok(disjoint_reason(&cover_components(g)?)))
        .collect()
}

/// How a class left (or stayed in) the sieve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SieveStatus {
    /// The pre-lifted graph splits into smaller covers.
    Disjoint(String),
    /// Bound no larger than one already reached with a smaller factor.
    Dominated { floor: u128 },
    Survivor,
}

/// One equivalence class of covers.
#[derive(Clone, Debug)]
pub struct SieveClass {
    pub id: usize,
    pub representative: PreLiftGrid,
    pub members: usize,
    pub bound: Option<BoundReport>,
    /// Smallest bound over connected components.
    pub component_bound: Option<u128>,
    pub status: SieveStatus,
}

/// Funnel of one sieve run.
#[derive(Clone, Debug)]
pub struct SieveReport {
    pub m: usize,
    pub covers: usize,
    pub classes: Vec<SieveClass>,
    /// Best surviving bound over all smaller pre-lift factors.
    pub floor: u128,
    /// Class indices of the survivors, best bound first.
    pub ranked: Vec<usize>,
}

impl SieveReport {
    pub fn connected(&self) -> usize {
        self.classes
            .iter()
            .filter(|c| !matches!(c.status, SieveStatus::Disjoint(_)))
            .count()
    }

    pub fn survivors(&self) -> impl Iterator<Item = &SieveClass> {
        self.ranked.iter().map(|&i| &self.classes[i])
    }

    /// Best surviving bound, or the floor when nothing survives.
    pub fn best(&self) -> u128 {
        self.survivors()
            .filter_map(|c| c.bound.as_ref().map(|b| b.value))
            .max()
            .unwrap_or(self.floor)
            .max(self.floor)
    }

    pub fn summary(&self) -> String {
        format!(
            "{} covers, {} classes, {} survivors",
            self.covers,
            self.classes.len(),
            self.ranked.len()
        )
    }

    pub const CSV_HEADER: &'static str = "class_id,members,representative,bound,component_bound,status,reason";

    pub fn to_csv(&self) -> String {
        let mut s = String::from(Self::CSV_HEADER);
        s.push('\n');
        for c in &self.classes {
            let (status, reason) = match &c.status {
                SieveStatus::Disjoint(r) => ("disjoint", r.clone()),
                SieveStatus::Dominated { floor } => ("dominated", format!("bound <= {floor}")),
                SieveStatus::Survivor => ("survivor", String::new()),
            };
            let opt = |v: Option<u128>| v.map_or(String::new(), |x| x.to_string());
            let _ = writeln!(
                s,
                "{},{},{},{},{},{status},{reason}",
                c.id,
                c.members,
                grid_label(&c.representative),
                opt(c.bound.as_ref().map(|b| b.value)),
                opt(c.component_bound),
            );
        }
        s
    }
}

/// Compact label of the non-border cells, e.g. `r2c2=1.2 r2c3=2.1`
/// (1-based positions and images).
pub fn grid_label(grid: &PreLiftGrid) -> String {
    let b = grid.base();
    let mut parts = Vec::new();
    for i in 0..b.n_c() {
        for j in 0..b.n_v() {
            if i == 0 || j == 0 {
                continue;
            }
            for p in grid.cell(i, j) {
                let img: Vec<String> = p.images().iter().map(|x| (x + 1).to_string()).collect();
                parts.push(format!("r{}c{}={}", i + 1, j + 1, img.join(".")));
            }
        }
    }
    parts.join(" ")
}

/// The full sieve for factor `m`: enumerate, merge equivalent covers,
/// drop disconnected ones, rank the rest by the permanent bound and drop
/// any whose bound is already reached with a smaller factor. Smaller
/// factors are sieved first to obtain that floor.
pub fn sieve(base: &BaseMatrix, m: usize) -> Result<SieveReport> {
    let mut floor = 0;
    for mm in 1..m {
        floor = floor.max(sieve_level(base, mm, floor)?.best());
    }
    sieve_level(base, m, floor)
}

/// One sieve level with an explicit floor.
pub fn sieve_level(base: &BaseMatrix, m: usize, floor: u128) -> Result<SieveReport> {
    let covers = enumerate_covers(base, m)?;
    let groups = equivalence_classes(&covers);
    let evaluated: Vec<Result<SieveClass>> = groups
        .par_iter()
        .enumerate()
        .map(|(id, members)| {
            let rep = covers[members[0]].clone();
            let comps = cover_components(&rep)?;
            let bound = qc_distance_bound(&rep.matrix()).ok();
            let reason = disjoint_reason(&comps);
            let component_bound = component_bound(&rep).ok();
            let value = bound.as_ref().map(|b| b.value);
            let status = match (reason, value) {
                (Some(r), _) => SieveStatus::Disjoint(r),
                (None, Some(v)) if v > floor => SieveStatus::Survivor,
                (None, _) => SieveStatus::Dominated { floor },
            };
            Ok(SieveClass {
                id,
                representative: rep,
                members: members.len(),
                bound,
                component_bound,
                status,
            })
        })
        .collect();
    let classes = evaluated.into_iter().collect::<Result<Vec<_>>>()?;
    let mut ranked: Vec<usize> = (0..classes.len())
        .filter(|&i| classes[i].status == SieveStatus::Survivor)
        .collect();
    ranked.sort_by(|&a, &b| {
        let va = classes[a].bound.as_ref().map(|x| x.value);
        let vb = classes[b].bound.as_ref().map(|x| x.value);
        vb.cmp(&va)
            .then_with(|| classes[a].representative.cmp(&classes[b].representative))
    });
    Ok(SieveReport {
        m,
        covers: covers.len(),
        classes,
        floor,
        ranked,
    })
}
