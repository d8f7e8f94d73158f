//! Weight-6 near-codewords of the 2×3 grid `[I I I; I P Q]`.

use crate::error::{Error, Result};
use crate::matrix::ParityCheck;
use crate::perm::CirculantBlockPerm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearCodeword {
    /// `[(P+Q)x; (I+Q)x; (I+P)x]` as a 0/1 vector of length `3·m·r`.
    pub vector: Vec<u8>,
    pub weight: usize,
    /// Weight of the syndrome `(PQ + QP)x`.
    pub f: usize,
}

/// Builds the candidate from the unit vector `x = e_{x_index}`.
///
/// The result has weight 6 unless `I`, `P`, `Q` share a column at
/// `x_index`; `f` is 0 exactly when `PQ` and `QP` agree on that column.
pub fn near_codeword_probe(p: &CirculantBlockPerm, q: &CirculantBlockPerm, x_index: usize) -> Result<NearCodeword> {
    if p.m() != q.m() || p.r() != q.r() {
        return Err(Error::SizeMismatch {
            left: p.size(),
            right: q.size(),
        });
    }
    let n = p.size();
    if x_index >= n {
        return Err(Error::InvalidSpec(format!("x index {x_index} outside [0, {n})")));
    }
    // for a permutation matrix M, M e_x = e_{row of the one in column x}
    let px = p.preimage(x_index);
    let qx = q.preimage(x_index);
    let mut vector = vec![0u8; 3 * n];
    vector[px] ^= 1;
    vector[qx] ^= 1;
    vector[n + x_index] ^= 1;
    vector[n + qx] ^= 1;
    vector[2 * n + x_index] ^= 1;
    vector[2 * n + px] ^= 1;
    let pq = p.compose(q)?;
    let qp = q.compose(p)?;
    let mut syndrome = vec![0u8; n];
    syndrome[pq.preimage(x_index)] ^= 1;
    syndrome[qp.preimage(x_index)] ^= 1;
    Ok(NearCodeword {
        weight: vector.iter().filter(|&&b| b == 1).count(),
        f: syndrome.iter().filter(|&&b| b == 1).count(),
        vector,
    })
}

/// Parity-check matrix `[I I I; I P Q]` of the grid the probe lives in.
pub fn probe_matrix(p: &CirculantBlockPerm, q: &CirculantBlockPerm) -> Result<ParityCheck> {
    let n = p.size();
    if q.size() != n {
        return Err(Error::SizeMismatch {
            left: n,
            right: q.size(),
        });
    }
    let mut rows = Vec::with_capacity(2 * n);
    for x in 0..n {
        rows.push(vec![x, n + x, 2 * n + x]);
    }
    for x in 0..n {
        rows.push(vec![x, n + p.apply(x), 2 * n + q.apply(x)]);
    }
    ParityCheck::from_rows(3 * n, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    fn cb(pi: &[usize], s: &[usize], r: usize) -> CirculantBlockPerm {
        CirculantBlockPerm::new(Perm::new(pi.to_vec()).unwrap(), s.to_vec(), r).unwrap()
    }

    #[test]
    fn commuting_pair_gives_codeword() {
        let p = cb(&[0, 1], &[1, 1], 7);
        let q = cb(&[1, 0], &[3, 3], 7);
        let h = probe_matrix(&p, &q).unwrap();
        for x in 0..p.size() {
            let c = near_codeword_probe(&p, &q, x).unwrap();
            assert_eq!((c.weight, c.f), (6, 0));
            assert!(h.is_codeword(&c.vector));
        }
    }

    #[test]
    fn strongly_noncommutative_pair_never_closes() {
        let p = cb(&[0, 1], &[1, 9], 20);
        let q = cb(&[1, 0], &[0, 4], 20);
        let h = probe_matrix(&p, &q).unwrap();
        for x in 0..p.size() {
            let c = near_codeword_probe(&p, &q, x).unwrap();
            assert_eq!(c.f, 2);
            assert_eq!(h.syndrome(&c.vector).iter().filter(|&&b| b == 1).count(), 2);
        }
    }

    #[test]
    fn equal_pair() {
        let p = cb(&[1, 0], &[2, 5], 9);
        let c = near_codeword_probe(&p, &p, 3).unwrap();
        assert_eq!(c.f, 0);
        assert!(c.weight < 6);
    }
}
