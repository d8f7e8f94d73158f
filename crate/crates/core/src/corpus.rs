//! Named codes and pre-lift grids from the literature on pre-lifted
//! QC-LDPC codes, with their published parameters.
//!
//! Grid positions in the 3×4 family follow the usual layout
//!
//! ```text
//! I I I I
//! I P R T
//! I Q S U
//! ```
//!
//! and twelve-shift tuples are ordered `p1 p2 q1 q2 r1 r2 s1 s2 t1 t2 u1 u2`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lift::{one_step_circulant, two_step, two_step_single, PreLiftGrid, QcLiftSpec};
use crate::matrix::{BaseMatrix, ParityCheck};
use crate::perm::Perm;

/// Distance as stated for a named code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KnownDistance {
    Exact(usize),
    Between(usize, usize),
}

/// Published parameters of a named code; `None` where nothing is stated.
#[derive(Clone, Copy, Debug)]
pub struct Entry {
    pub name: &'static str,
    pub summary: &'static str,
    pub n: usize,
    pub k: Option<usize>,
    pub girth: Option<usize>,
    pub distance: Option<KnownDistance>,
}

const TANNER_SHIFTS: [[usize; 4]; 3] = [[1, 2, 4, 8], [5, 10, 20, 9], [25, 19, 7, 14]];

/// Shift matrix of the (3,7) voltage-graph code at circulant size 111.
pub const BOCHAROVA_SHIFTS: [[usize; 7]; 3] = [
    [0, 19, 13, 20, 4, 15, 56],
    [18, 9, 0, 47, 0, 18, 8],
    [14, 0, 10, 13, 0, 0, 7],
];

pub const EX4_SHIFTS: [usize; 12] = [1, 5, 7, 3, 2, 10, 14, 6, 4, 20, 28, 9];
pub const EX5_SHIFTS: [usize; 12] = [1, 5, 7, 7, 10, 10, 11, 11, 13, 13, 2, 4];
pub const UNIFORM_SHIFTS: [usize; 12] = [1, 1, 7, 7, 10, 10, 11, 11, 13, 13, 2, 2];

use KnownDistance::{Between, Exact};

const ENTRIES: &[Entry] = &[
    Entry { name: "tanner31", summary: "(3,4) Tanner code, N=31", n: 124, k: Some(33), girth: Some(8), distance: Some(Exact(24)) },
    Entry { name: "tanner98", summary: "Tanner shifts at N=98", n: 392, k: None, girth: Some(8), distance: Some(Exact(24)) },
    Entry { name: "tanner124", summary: "Tanner shifts at N=124", n: 496, k: None, girth: None, distance: None },
    Entry { name: "heawood", summary: "(2,3) circulant code of the Heawood graph, N=7", n: 21, k: Some(8), girth: Some(12), distance: Some(Exact(6)) },
    Entry { name: "ex3-r9", summary: "2x3 base, m=2, r=9, shifts (1,2,0,6)", n: 54, k: Some(19), girth: Some(16), distance: Some(Exact(8)) },
    Entry { name: "ex3-r20", summary: "2x3 base, m=2, r=20, shifts (1,9,0,4)", n: 120, k: Some(41), girth: Some(20), distance: Some(Exact(10)) },
    Entry { name: "opt45", summary: "optimal (2,3) code as a pre-lift with m=3, r=5", n: 45, k: Some(16), girth: Some(16), distance: Some(Exact(8)) },
    Entry { name: "3cov-r46", summary: "2x3 base, m=3 connected cover, r=46", n: 414, k: None, girth: Some(24), distance: Some(Exact(12)) },
    Entry { name: "ex4-r31", summary: "3x4 2-cover, shifts (1,5,7,3,2,10,14,6,4,20,28,9), r=31", n: 248, k: None, girth: Some(6), distance: Some(Exact(36)) },
    Entry { name: "ex4-r41", summary: "3x4 2-cover, same shifts, r=41", n: 328, k: None, girth: Some(6), distance: Some(Between(38, 48)) },
    Entry { name: "ex5-r17", summary: "3x4 2-cover, shifts (1,5,7,7,10,10,11,11,13,13,2,4), r=17", n: 136, k: Some(36), girth: Some(8), distance: Some(Exact(26)) },
    Entry { name: "c1", summary: "3x4 2-cover, same shifts, r=49", n: 392, k: None, girth: Some(10), distance: Some(Between(32, 56)) },
    Entry { name: "uniform-r49", summary: "3x4 2-cover with uniform shifts, r=49", n: 392, k: Some(100), girth: Some(10), distance: Some(Exact(24)) },
    Entry { name: "multiedge-46", summary: "multi-edge 3x4 base, one-step N=46", n: 184, k: Some(47), girth: Some(8), distance: Some(Exact(32)) },
    Entry { name: "multiedge-prelift-46", summary: "multi-edge 3x4 base, m=2, r=46", n: 368, k: Some(93), girth: Some(8), distance: Some(Exact(56)) },
    Entry { name: "ex8-r14", summary: "3x4 base, m=4 noncommuting cover, uniform shifts, r=14", n: 224, k: Some(59), girth: Some(8), distance: Some(Exact(36)) },
    Entry { name: "c4", summary: "same grid and shifts, r=31", n: 496, k: Some(126), girth: Some(8), distance: Some(Between(28, 68)) },
];

/// Every fixed-name entry. The families `c6-3-K-N` and `c7-3-K-4-R`
/// are reached through [`lookup`] and [`build`].
pub fn entries() -> &'static [Entry] {
    ENTRIES
}

/// Family names accepted in addition to [`entries`].
pub const FAMILIES: &[(&str, &str)] = &[
    ("c6-3-K-N", "(3,K) truncation of the (3,7) voltage-graph code, N-circulants, K <= 7"),
    ("c7-3-K-4-R", "same shifts on the m=4 noncommuting pre-lift, r-circulants"),
];

enum Family {
    C6 { k: usize, n: usize },
    C7 { k: usize, r: usize },
}

fn parse_family(name: &str) -> Option<Family> {
    let parts: Vec<&str> = name.split('-').collect();
    let num = |s: &str| s.parse::<usize>().ok();
    // accept the compact "c6-34-111" spelling too
    let (head, rest): (&str, Vec<usize>) = match parts.as_slice() {
        [h, "3", rest @ ..] => (h, rest.iter().map(|s| num(s)).collect::<Option<_>>()?),
        [h, k3, rest @ ..] if k3.len() == 2 && k3.starts_with('3') => {
            let mut v = vec![num(&k3[1..])?];
            v.extend(rest.iter().map(|s| num(s)).collect::<Option<Vec<_>>>()?);
            (h, v)
        }
        _ => return None,
    };
    let k_ok = |k: usize| (1..=7).contains(&k);
    match (head, rest.as_slice()) {
        ("c6", &[k, n]) if k_ok(k) && n > 0 => Some(Family::C6 { k, n }),
        ("c7", &[k, 4, r]) if k_ok(k) && r > 0 => Some(Family::C7 { k, r }),
        _ => None,
    }
}

/// Published parameters, including family members.
pub fn lookup(name: &str) -> Option<Entry> {
    if let Some(e) = ENTRIES.iter().find(|e| e.name == name) {
        return Some(*e);
    }
    match parse_family(name)? {
        Family::C6 { k, n } => Some(Entry {
            name: "c6",
            summary: "(3,K) truncated voltage-graph code",
            n: k * n,
            k: None,
            girth: (k == 7 && n == 111).then_some(8),
            distance: (n == 111).then_some(Exact(24)),
        }),
        Family::C7 { k, r } => Some(Entry {
            name: "c7",
            summary: "(3,K) pre-lifted voltage-graph code, m=4",
            n: 4 * k * r,
            k: None,
            girth: (k == 4 && [28, 111, 222, 444].contains(&r)).then_some(if r == 28 { 6 } else { 10 }),
            distance: None,
        }),
    }
}

/// Materializes a named code.
pub fn build(name: &str) -> Result<QcLiftSpec> {
    match name {
        "tanner31" => tanner(31),
        "tanner98" => tanner(98),
        "tanner124" => tanner(124),
        "heawood" => heawood(),
        "ex3-r9" => ex3(9, [1, 2, 0, 6]),
        "ex3-r20" => ex3(20, [1, 9, 0, 4]),
        "opt45" => opt45(),
        "3cov-r46" => two_step_single(&three_cover2(), 46, &shift_rows_2x3(&[[1, 5, 25], [4, 7, 28]])),
        "ex4-r31" => cover342_spec(31, &EX4_SHIFTS),
        "ex4-r41" => cover342_spec(41, &EX4_SHIFTS),
        "ex5-r17" => cover342_spec(17, &EX5_SHIFTS),
        "c1" => cover342_spec(49, &EX5_SHIFTS),
        "uniform-r49" => cover342_spec(49, &UNIFORM_SHIFTS),
        "multiedge-46" => multiedge_one_step(46),
        "multiedge-prelift-46" => multiedge_prelift_spec(46),
        "ex8-r14" => dr2_spec(14),
        "c4" => dr2_spec(31),
        _ => match parse_family(name) {
            Some(Family::C6 { k, n }) => bocharova(n)?.truncate(k),
            Some(Family::C7 { k, r }) => bocharova_prelift(r)?.truncate(k),
            None => Err(Error::InvalidSpec(format!("unknown corpus code `{name}`"))),
        },
    }
}

fn perm(images: &[usize]) -> Perm {
    Perm::new(images.to_vec()).expect("corpus permutation")
}

fn swap() -> Perm {
    perm(&[1, 0])
}

/// Single-edge all-ones grid from per-cell images (row-major).
fn full_grid(n_c: usize, n_v: usize, m: usize, cells: &[Perm]) -> PreLiftGrid {
    PreLiftGrid::from_cells(n_c, n_v, m, cells.iter().cloned().map(Some).collect()).expect("corpus grid")
}

/// The (3,4) Tanner code `B^{↻N}` with shifts `(1,2,4,8),(5,10,20,9),(25,19,7,14)`.
pub fn tanner(n: usize) -> Result<QcLiftSpec> {
    let shifts: Vec<Vec<usize>> = TANNER_SHIFTS.iter().flatten().map(|&s| vec![s % n]).collect();
    one_step_circulant(&BaseMatrix::ones(3, 4), n, &shifts)
}

/// The `[21,8,6]` circulant code of the Heawood graph.
pub fn heawood() -> Result<QcLiftSpec> {
    let shifts: Vec<Vec<usize>> = [0, 0, 0, 0, 4, 6].iter().map(|&s| vec![s]).collect();
    one_step_circulant(&BaseMatrix::ones(2, 3), 7, &shifts)
}

/// 2×3 grid with identity first row and column and `[B22 | B23]` given.
pub fn grid_2x3(b22: Perm, b23: Perm) -> PreLiftGrid {
    let m = b22.len();
    let id = Perm::identity(m);
    full_grid(2, 3, m, &[id.clone(), id.clone(), id.clone(), id, b22, b23])
}

/// `B22 = I`, `B23 = swap`: the `m = 2` pre-lift with bound 10.
pub fn prelift23() -> PreLiftGrid {
    grid_2x3(Perm::identity(2), swap())
}

/// The four 2-covers of the 2×3 base, indexed 1..=4 by `[B22 | B23]`:
/// `[I|I]`, `[I|X]`, `[X|I]`, `[X|X]` with `X` the swap.
pub fn two_cover(which: usize) -> Result<PreLiftGrid> {
    let (a, b) = match which {
        1 => (Perm::identity(2), Perm::identity(2)),
        2 => (Perm::identity(2), swap()),
        3 => (swap(), Perm::identity(2)),
        4 => (swap(), swap()),
        _ => return Err(Error::InvalidSpec(format!("two-cover index {which} outside 1..=4"))),
    };
    Ok(grid_2x3(a, b))
}

/// A 3-cover that splits into a 1-cover and a 2-cover.
pub fn three_cover1() -> PreLiftGrid {
    grid_2x3(Perm::identity(3), perm(&[1, 0, 2]))
}

/// A connected 3-cover with bound 12.
pub fn three_cover2() -> PreLiftGrid {
    grid_2x3(Perm::identity(3), perm(&[1, 2, 0]))
}

/// Shift table for a 2×3 grid with a zero-shift first row and column;
/// `free[0]` and `free[1]` are the shift vectors of `B22` and `B23`.
fn shift_rows_2x3<const M: usize>(free: &[[usize; M]; 2]) -> Vec<Option<Vec<usize>>> {
    let z = Some(vec![0; M]);
    vec![z.clone(), z.clone(), z.clone(), z, Some(free[0].to_vec()), Some(free[1].to_vec())]
}

/// The `prelift23` lift with `(p1, p2, q1, q2)`.
pub fn ex3(r: usize, pq: [usize; 4]) -> Result<QcLiftSpec> {
    two_step_single(&prelift23(), r, &shift_rows_2x3(&[[pq[0], pq[1]], [pq[2], pq[3]]]))
}

/// The `[45,16,8]` code written as an `m = 3`, `r = 5` pre-lift.
pub fn opt45() -> Result<QcLiftSpec> {
    let grid = grid_2x3(perm(&[2, 0, 1]), perm(&[1, 0, 2]));
    two_step_single(&grid, 5, &shift_rows_2x3(&[[0, 0, 4], [1, 3, 1]]))
}

/// 3×4 grid with identity first row and column and `P..U` given.
pub fn grid_3x4(p: Perm, r: Perm, t: Perm, q: Perm, s: Perm, u: Perm) -> PreLiftGrid {
    let m = p.len();
    let id = Perm::identity(m);
    full_grid(
        3,
        4,
        m,
        &[id.clone(), id.clone(), id.clone(), id.clone(), id.clone(), p, r, t, id, q, s, u],
    )
}

/// The 2-cover of the 3×4 base with bound 116.
pub fn cover342() -> PreLiftGrid {
    let id = Perm::identity(2);
    grid_3x4(id.clone(), swap(), swap(), swap(), id.clone(), id)
}

/// Twelve shifts in `p1 p2 q1 q2 ... u2` order as a row-major shift table
/// for a 3×4 grid with zero-shift first row and column.
pub fn shift_table_3x4(m: usize, shifts: &[usize]) -> Result<Vec<Option<Vec<usize>>>> {
    if shifts.len() != 6 * m {
        return Err(Error::SizeMismatch {
            left: shifts.len(),
            right: 6 * m,
        });
    }
    let sym = |k: usize| Some(shifts[k * m..(k + 1) * m].to_vec());
    let z = Some(vec![0; m]);
    // symbols in p q r s t u order; grid is [P R T; Q S U]
    Ok(vec![
        z.clone(),
        z.clone(),
        z.clone(),
        z.clone(),
        z.clone(),
        sym(0),
        sym(2),
        sym(4),
        z,
        sym(1),
        sym(3),
        sym(5),
    ])
}

/// Lift of [`cover342`] with shifts in `p1 p2 q1 q2 ... u2` order.
pub fn cover342_spec(r: usize, shifts: &[usize]) -> Result<QcLiftSpec> {
    two_step_single(&cover342(), r, &shift_table_3x4(2, shifts)?)
}

/// Base with zeros at `(2,2)` and `(3,4)` (1-based).
pub fn masked_pattern() -> BaseMatrix {
    BaseMatrix::from_rows(&[vec![1, 1, 1, 1], vec![1, 0, 1, 1], vec![1, 1, 1, 0]]).expect("mask")
}

/// The 3×4 multi-edge base with row degrees 4.
pub fn multiedge_base() -> BaseMatrix {
    BaseMatrix::from_rows(&[vec![2, 0, 1, 1], vec![1, 1, 2, 0], vec![0, 2, 0, 2]]).expect("base")
}

const MULTIEDGE_SHIFTS: [&[usize]; 12] = [&[1, 2], &[], &[4], &[8], &[5], &[9], &[10, 20], &[], &[], &[25, 19], &[], &[7, 14]];

/// One-step circulant lift of the multi-edge base.
pub fn multiedge_one_step(n: usize) -> Result<QcLiftSpec> {
    let shifts: Vec<Vec<usize>> = MULTIEDGE_SHIFTS.iter().map(|c| c.iter().map(|&s| s % n).collect()).collect();
    one_step_circulant(&multiedge_base(), n, &shifts)
}

/// The `m = 2` pre-lift of the multi-edge base (bound 108).
pub fn multiedge_grid() -> PreLiftGrid {
    let id = Perm::identity(2);
    let pis = vec![
        vec![id.clone(), swap()],
        vec![],
        vec![id.clone()],
        vec![id.clone()],
        vec![id.clone()],
        vec![id.clone()],
        vec![id.clone(), swap()],
        vec![],
        vec![],
        vec![id.clone(), swap()],
        vec![],
        vec![id, swap()],
    ];
    PreLiftGrid::new(multiedge_base(), 2, pis).expect("multi-edge grid")
}

/// The `[368,93,56]` lift of [`multiedge_grid`] at `r = 46`; other `r`
/// reuse the same shifts reduced mod `r`.
pub fn multiedge_prelift_spec(r: usize) -> Result<QcLiftSpec> {
    let v = |a: usize, b: usize| vec![a, b];
    let shifts = vec![
        vec![v(1, 0), v(2, 2)],
        vec![],
        vec![v(4, 4)],
        vec![v(8, 8)],
        vec![v(5, 5)],
        vec![v(9, 9)],
        vec![v(10, 10), v(20, 20)],
        vec![],
        vec![],
        vec![v(25, 25), v(19, 19)],
        vec![],
        vec![v(7, 7), v(14, 14)],
    ];
    two_step(&multiedge_grid(), r, &shifts)
}

/// The `m = 4` noncommuting pre-lift of the 3×4 base.
pub fn dr2_grid() -> PreLiftGrid {
    grid_3x4(
        perm(&[1, 0, 3, 2]),
        perm(&[2, 3, 0, 1]),
        perm(&[1, 2, 3, 0]),
        perm(&[2, 3, 1, 0]),
        perm(&[1, 0, 3, 2]),
        perm(&[2, 3, 0, 1]),
    )
}

/// [`dr2_grid`] with uniform shifts `P:4 R:12 T:28 Q:24 S:10 U:13`.
pub fn dr2_spec(r: usize) -> Result<QcLiftSpec> {
    let per_symbol = [4, 24, 12, 10, 28, 13];
    let shifts: Vec<usize> = per_symbol.iter().flat_map(|&s| [s; 4]).collect();
    two_step_single(&dr2_grid(), r, &shift_table_3x4(4, &shifts)?)
}

/// The (3,7) voltage-graph code `B^{↻N}`.
pub fn bocharova(n: usize) -> Result<QcLiftSpec> {
    let shifts: Vec<Vec<usize>> = BOCHAROVA_SHIFTS.iter().flatten().map(|&s| vec![s % n]).collect();
    one_step_circulant(&BaseMatrix::ones(3, 7), n, &shifts)
}

/// The `m = 4` pre-lift of the 3×7 all-ones base.
pub fn bocharova_grid() -> PreLiftGrid {
    let id = [0, 1, 2, 3];
    let rows: [[[usize; 4]; 7]; 3] = [
        [id; 7],
        [id, [1, 0, 3, 2], [2, 3, 0, 1], [1, 2, 3, 0], [1, 3, 0, 2], [0, 2, 3, 1], [2, 3, 1, 0]],
        [id, [2, 3, 1, 0], [1, 0, 3, 2], [2, 3, 0, 1], [2, 0, 3, 1], [1, 2, 0, 3], [0, 2, 3, 1]],
    ];
    let cells: Vec<Perm> = rows.iter().flatten().map(|p| perm(p)).collect();
    full_grid(3, 7, 4, &cells)
}

/// `H_{i,j} = B_{i,j} ⊗ I_{S_{i,j}}^r` over [`bocharova_grid`].
pub fn bocharova_prelift(r: usize) -> Result<QcLiftSpec> {
    let shifts: Vec<Option<Vec<usize>>> = BOCHAROVA_SHIFTS.iter().flatten().map(|&s| Some(vec![s; 4])).collect();
    two_step_single(&bocharova_grid(), r, &shifts)
}

/// Pre-lift of the 3×4 base by 5-point circulants that leaves four
/// girth-8 conditions.
pub fn circulant_grid5() -> PreLiftGrid {
    let c = |a| Perm::circulant(5, a);
    grid_3x4(c(0), c(1), c(1), c(0), c(2), c(4))
}

/// Pre-lift of the 3×4 base by 9-point circulants with girth 8.
pub fn circulant_grid9() -> PreLiftGrid {
    let c = |a| Perm::circulant(9, a);
    grid_3x4(c(1), c(3), c(4), c(2), c(6), c(8))
}

/// Random `(wc, wr)`-regular parity-check matrix with `n` columns.
///
/// Sockets are matched by a seeded shuffle; repeated edges are then
/// removed by random socket swaps. No cycle conditioning is applied.
pub fn random_regular(n: usize, wc: usize, wr: usize, seed: u64) -> Result<ParityCheck> {
    if wc == 0 || wr == 0 || (n * wc) % wr != 0 {
        return Err(Error::InvalidSpec(format!("no ({wc},{wr})-regular matrix with {n} columns")));
    }
    let rows = n * wc / wr;
    if wr > n || wc > rows {
        return Err(Error::InvalidSpec(format!("degrees ({wc},{wr}) too large for {n} columns")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // socket s belongs to row s / wr; value is the column
    let mut sockets: Vec<usize> = (0..n).flat_map(|j| std::iter::repeat_n(j, wc)).collect();
    sockets.shuffle(&mut rng);
    let total = sockets.len();
    let duplicated = |sockets: &[usize], s: usize| {
        let row = s / wr;
        (row * wr..(row + 1) * wr).any(|t| t != s && sockets[t] == sockets[s])
    };
    for _ in 0..1000 * total {
        let bad: Vec<usize> = (0..total).filter(|&s| duplicated(&sockets, s)).collect();
        let Some(&s) = bad.first() else {
            let support = sockets.chunks(wr).map(<[usize]>::to_vec).collect();
            return ParityCheck::from_rows(n, support);
        };
        for _ in 0..total {
            let t = rand::Rng::random_range(&mut rng, 0..total);
            if t / wr == s / wr {
                continue;
            }
            sockets.swap(s, t);
            if !duplicated(&sockets, s) && !duplicated(&sockets, t) {
                break;
            }
            sockets.swap(s, t);
        }
    }
    Err(Error::SearchSpaceTooLarge("could not remove repeated edges".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_build_with_stated_length() {
        for e in entries() {
            let spec = build(e.name).unwrap();
            assert_eq!(spec.n(), e.n, "{}", e.name);
            assert_eq!(spec.expand().unwrap().cols(), e.n, "{}", e.name);
        }
    }

    #[test]
    fn families() {
        let c6 = build("c6-3-4-111").unwrap();
        assert_eq!(c6.n(), 444);
        assert_eq!(build("c6-34-111").unwrap(), c6);
        let c7 = build("c7-3-4-4-111").unwrap();
        assert_eq!(c7.expand().unwrap().rows(), 1332);
        assert_eq!(c7.expand().unwrap().cols(), 1776);
        assert_eq!(lookup("c7-3-4-4-111").unwrap().n, 1776);
        assert!(build("c6-3-9-111").is_err());
        assert!(build("nope").is_err());
    }

    #[test]
    fn random_regular_degrees() {
        let h = random_regular(96, 3, 4, 7).unwrap();
        assert_eq!(h.rows(), 72);
        assert!(h.row_weights().iter().all(|&w| w == 4));
        assert!(h.col_weights().iter().all(|&w| w == 3));
        assert_eq!(random_regular(96, 3, 4, 7).unwrap(), h);
    }
}
