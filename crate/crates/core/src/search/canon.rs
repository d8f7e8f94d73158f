//! Canonical labeling of small bipartite graphs given by their
//! biadjacency matrix, up to independent row and column permutations.

use std::collections::HashSet;

use crate::matrix::BaseMatrix;

/// Canonical representative of the row/column permutation class of `b`.
///
/// The representative is the row-major maximum over all row orders, with
/// columns sorted in decreasing lexicographic order for each row order.
/// Row `t` of that matrix depends only on the first `t + 1` chosen rows, so
/// the search extends partial orders level by level and keeps only those
/// that tie for the best row, merging partial orders that leave every
/// column with the same prefix.
pub fn canonical_form(b: &BaseMatrix) -> BaseMatrix {
    let (rows, cols) = (b.n_c(), b.n_v());
    if rows == 0 || cols == 0 {
        return b.clone();
    }
    // partial row orders: rows used so far and the column prefixes they give
    let mut states: Vec<State> = vec![State {
        used: vec![false; rows],
        prefix: vec![Vec::new(); cols],
    }];
    let mut out_rows: Vec<Vec<u32>> = Vec::with_capacity(rows);
    for _ in 0..rows {
        let mut best: Option<Vec<u32>> = None;
        let mut next: Vec<State> = Vec::new();
        let mut seen: HashSet<(Vec<bool>, Vec<Vec<u32>>)> = HashSet::new();
        for st in &states {
            for r in (0..rows).filter(|&r| !st.used[r]) {
                let mut prefix = st.prefix.clone();
                for (j, p) in prefix.iter_mut().enumerate() {
                    p.push(b.get(r, j));
                }
                let mut sorted = prefix.clone();
                sorted.sort_unstable_by(|a, c| c.cmp(a));
                let row: Vec<u32> = sorted.iter().map(|p| *p.last().unwrap()).collect();
                match best.as_ref().map(|bst| row.cmp(bst)) {
                    Some(std::cmp::Ordering::Less) => continue,
                    Some(std::cmp::Ordering::Greater) | None => {
                        best = Some(row);
                        next.clear();
                        seen.clear();
                    }
                    Some(std::cmp::Ordering::Equal) => {}
                }
                let mut used = st.used.clone();
                used[r] = true;
                let key = (used.clone(), canonical_columns(&prefix, b, &used));
                if seen.insert(key) {
                    next.push(State { used, prefix });
                }
            }
        }
        out_rows.push(best.expect("at least one row remains"));
        states = next;
    }
    BaseMatrix::from_rows(&out_rows).expect("canonical form has the input shape")
}

struct State {
    used: Vec<bool>,
    prefix: Vec<Vec<u32>>,
}

/// Sorted list of (prefix, remaining column contents) pairs; two states
/// with equal keys have identical futures.
fn canonical_columns(prefix: &[Vec<u32>], b: &BaseMatrix, used: &[bool]) -> Vec<Vec<u32>> {
    let mut cols: Vec<Vec<u32>> = prefix
        .iter()
        .enumerate()
        .map(|(j, p)| {
            let mut c = p.clone();
            c.extend((0..b.n_c()).filter(|&r| !used[r]).map(|r| b.get(r, j)));
            c
        })
        .collect();
    cols.sort_unstable();
    cols
}

/// True when `a` and `b` are equal up to row and column permutations.
pub fn equivalent(a: &BaseMatrix, b: &BaseMatrix) -> bool {
    a.n_c() == b.n_c() && a.n_v() == b.n_v() && canonical_form(a) == canonical_form(b)
}
