//! Permanent upper bound on the minimum distance of QC codes and the
//! factorial bound for commuting grids.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lift::QcLiftSpec;
use crate::matrix::BaseMatrix;

use super::permanent::permanent_u128;

/// Largest number of column subsets the bound will visit.
pub const MAX_BOUND_SUBSETS: u64 = 5_000_000;

/// The smallest nonzero permanent sum, and where it was attained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub value: u128,
    /// The `n_c + 1` columns (0-based) achieving the minimum.
    pub subset: Vec<usize>,
    /// `(i, perm(B_{S \ i}))` for every `i` in the subset.
    pub terms: Vec<(usize, u128)>,
    /// Number of subsets examined.
    pub subsets: u64,
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "bound: {}", self.value)?;
        let cols: Vec<String> = self.subset.iter().map(|c| (c + 1).to_string()).collect();
        writeln!(f, "subset: {}", cols.join(" "))?;
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|(c, p)| format!("{}:{}", c + 1, p))
            .collect();
        writeln!(f, "terms: {}", terms.join(" "))?;
        write!(f, "subsets: {}", self.subsets)
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// `min*` over all `(n_c + 1)`-column subsets `S` of
/// `Σ_{i ∈ S} perm(B_{S \ i})`, where `min*` ignores zero sums.
///
/// A pre-lifted matrix `B^{↑m}` is passed as an ordinary base matrix.
pub fn qc_distance_bound(base: &BaseMatrix) -> Result<BoundReport> {
    let (n_c, n_v) = (base.n_c(), base.n_v());
    if n_c == 0 {
        return Err(Error::EmptyMatrix);
    }
    if n_v < n_c + 1 {
        return Err(Error::InvalidBase(format!(
            "need at least {} columns, got {n_v}",
            n_c + 1
        )));
    }
    if n_v > 64 {
        return Err(Error::Unsupported("bound limited to 64 columns".into()));
    }
    let count = binomial(n_v as u64, n_c as u64 + 1);
    if count > MAX_BOUND_SUBSETS {
        return Err(Error::SearchSpaceTooLarge(format!(
            "{count} column subsets"
        )));
    }
    let mut cache: HashMap<u64, u128> = HashMap::new();
    let mut perm_of = |cols: &[usize]| -> Result<u128> {
        let key = cols.iter().fold(0u64, |k, &c| k | 1 << c);
        if let Some(&v) = cache.get(&key) {
            return Ok(v);
        }
        let sub: Vec<Vec<u32>> = (0..n_c)
            .map(|i| cols.iter().map(|&j| base.get(i, j)).collect())
            .collect();
        let v = permanent_u128(&sub)?;
        cache.insert(key, v);
        Ok(v)
    };
    let mut best: Option<BoundReport> = None;
    let mut subsets = 0;
    let mut subset: Vec<usize> = (0..=n_c).collect();
    loop {
        subsets += 1;
        let mut terms = Vec::with_capacity(n_c + 1);
        let mut rest = Vec::with_capacity(n_c);
        for (skip, &i) in subset.iter().enumerate() {
            rest.clear();
            rest.extend(subset.iter().enumerate().filter(|&(t, _)| t != skip).map(|(_, &c)| c));
            terms.push((i, perm_of(&rest)?));
        }
        let value: u128 = terms.iter().map(|t| t.1).sum();
        if value > 0 && best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(BoundReport {
                value,
                subset: subset.clone(),
                terms,
                subsets: 0,
            });
        }
        if !next_combination(&mut subset, n_v) {
            break;
        }
    }
    let mut report = best.ok_or(Error::BoundUndefined)?;
    report.subsets = subsets;
    Ok(report)
}

/// Advances a sorted index set to the next one in lexicographic order.
pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for t in i + 1..k {
                c[t] = c[t - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// `(n_c + 1)!` when every pre-lift permutation commutes with every other
/// and every term has a uniform shift vector, so that all block
/// permutations commute. `None` when that structure is absent.
pub fn commuting_grid_bound(spec: &QcLiftSpec) -> Option<u128> {
    if !spec.base().is_single_edge() {
        return None;
    }
    let terms: Vec<_> = spec.cells().iter().flatten().collect();
    if !terms.iter().all(|t| t.has_uniform_shifts()) {
        return None;
    }
    for (a, x) in terms.iter().enumerate() {
        for y in &terms[a + 1..] {
            if !x.pi().commutes_with(y.pi()).unwrap_or(false) {
                return None;
            }
        }
    }
    Some((1..=spec.base().n_c() as u128 + 1).product())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_ones_bound_is_factorial() {
        for n_c in 1..=4 {
            let r = qc_distance_bound(&BaseMatrix::ones(n_c, n_c + 1)).unwrap();
            assert_eq!(r.value, (1..=n_c as u128 + 1).product::<u128>());
            let sum: u128 = r.terms.iter().map(|t| t.1).sum();
            assert_eq!(sum, r.value);
        }
    }

    #[test]
    fn undefined_bound() {
        let b = BaseMatrix::from_rows(&[vec![1, 0, 0], vec![1, 0, 0]]).unwrap();
        assert_eq!(qc_distance_bound(&b), Err(Error::BoundUndefined));
        assert!(qc_distance_bound(&BaseMatrix::ones(2, 2)).is_err());
    }

    #[test]
    fn combinations_enumerate() {
        let mut c = vec![0, 1];
        let mut n = 1;
        while next_combination(&mut c, 4) {
            n += 1;
        }
        assert_eq!(n, 6);
        assert_eq!(binomial(12, 9), 220);
    }
}
