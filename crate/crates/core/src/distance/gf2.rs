//! Dense GF(2) linear algebra on packed rows.

use std::fmt;

use crate::matrix::ParityCheck;

/// Dense binary matrix; each row is a run of 64-bit words.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix({}x{})", self.rows, self.cols)
    }
}

#[inline]
pub fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

#[inline]
pub fn get_bit(row: &[u64], j: usize) -> bool {
    row[j / 64] >> (j % 64) & 1 == 1
}

#[inline]
pub fn set_bit(row: &mut [u64], j: usize) {
    row[j / 64] |= 1 << (j % 64);
}

#[inline]
pub fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

#[inline]
pub fn weight(row: &[u64]) -> usize {
    row.iter().map(|w| w.count_ones() as usize).sum()
}

/// Unpacks a row into a 0/1 vector of length `n`.
pub fn unpack(row: &[u64], n: usize) -> Vec<u8> {
    (0..n).map(|j| get_bit(row, j) as u8).collect()
}

pub fn pack(bits: &[u8]) -> Vec<u64> {
    let mut row = vec![0; words_for(bits.len())];
    for (j, &b) in bits.iter().enumerate() {
        if b & 1 == 1 {
            set_bit(&mut row, j);
        }
    }
    row
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = words_for(cols);
        BitMatrix {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn from_parity_check(h: &ParityCheck) -> Self {
        let mut m = Self::zeros(h.rows(), h.cols());
        for i in 0..h.rows() {
            for &j in h.row(i) {
                m.set(i, j);
            }
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let w = m.words;
            m.row_mut(i).copy_from_slice(&r[..w]);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.words..(i + 1) * self.words]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        get_bit(self.row(i), j)
    }

    pub fn set(&mut self, i: usize, j: usize) {
        let w = self.words;
        set_bit(&mut self.data[i * w..(i + 1) * w], j);
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.words;
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * w);
        head[lo * w..(lo + 1) * w].swap_with_slice(&mut tail[..w]);
    }

    /// `row[dst] ^= row[src]`.
    pub fn xor_rows(&mut self, dst: usize, src: usize) {
        let w = self.words;
        if dst == src {
            self.data[dst * w..(dst + 1) * w].fill(0);
            return;
        }
        let (d, s) = if dst < src {
            let (head, tail) = self.data.split_at_mut(src * w);
            (&mut head[dst * w..(dst + 1) * w], &tail[..w])
        } else {
            let (head, tail) = self.data.split_at_mut(dst * w);
            (&mut tail[..w], &head[src * w..(src + 1) * w])
        };
        xor_into(d, s);
    }

    /// Gauss-Jordan elimination visiting columns in `order`. Returns the
    /// pivot columns; row `t` of the result has its pivot at `pivots[t]`
    /// and every other row is zero there.
    pub fn reduce_in_order(&mut self, order: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for j in order {
            if next == self.rows {
                break;
            }
            let Some(p) = (next..self.rows).find(|&i| self.get(i, j)) else {
                continue;
            };
            self.swap_rows(p, next);
            for i in 0..self.rows {
                if i != next && self.get(i, j) {
                    self.xor_rows(i, next);
                }
            }
            pivots.push(j);
            next += 1;
        }
        pivots
    }

    pub fn reduce(&mut self) -> Vec<usize> {
        let cols = self.cols;
        self.reduce_in_order(0..cols)
    }

    pub fn rank(&self) -> usize {
        self.clone().reduce().len()
    }

    /// Basis of `{x : M x^T = 0}`, one row per basis vector.
    pub fn nullspace(&self) -> BitMatrix {
        let mut m = self.clone();
        let pivots = m.reduce();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&j| !is_pivot[j]).collect();
        let mut basis = BitMatrix::zeros(free.len(), self.cols);
        for (t, &f) in free.iter().enumerate() {
            basis.set(t, f);
            for (row, &p) in pivots.iter().enumerate() {
                if m.get(row, f) {
                    basis.set(t, p);
                }
            }
        }
        basis
    }

    /// Product with a packed column vector.
    pub fn mul_vec(&self, x: &[u64]) -> Vec<u8> {
        (0..self.rows)
            .map(|i| {
                let ones: u32 = self.row(i).iter().zip(x).map(|(a, b)| (a & b).count_ones()).sum();
                (ones & 1) as u8
            })
            .collect()
    }
}

/// GF(2) rank of a parity-check matrix.
pub fn gf2_rank(h: &ParityCheck) -> usize {
    BitMatrix::from_parity_check(h).rank()
}

/// Generator rows spanning the null space of `h`.
pub fn gf2_nullspace_basis(h: &ParityCheck) -> BitMatrix {
    BitMatrix::from_parity_check(h).nullspace()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_full_rank() {
        let rows: Vec<Vec<u8>> = (0..70)
            .map(|i| (0..70).map(|j| (i == j) as u8).collect())
            .collect();
        let h = ParityCheck::from_dense(&rows).unwrap();
        assert_eq!(gf2_rank(&h), 70);
        assert_eq!(gf2_nullspace_basis(&h).rows(), 0);
    }

    #[test]
    fn nullspace_is_orthogonal() {
        let h = ParityCheck::from_dense(&[
            vec![1, 1, 0, 1, 0, 0],
            vec![0, 1, 1, 0, 1, 0],
            vec![1, 0, 1, 0, 0, 1],
            vec![1, 0, 1, 1, 1, 0],
        ])
        .unwrap();
        let r = gf2_rank(&h);
        let g = gf2_nullspace_basis(&h);
        assert_eq!(r + g.rows(), 6);
        let hm = BitMatrix::from_parity_check(&h);
        for t in 0..g.rows() {
            assert!(hm.mul_vec(g.row(t)).iter().all(|&b| b == 0));
        }
        assert_eq!(g.rank(), g.rows());
    }

    #[test]
    fn zero_column_gives_unit_codeword() {
        let g = gf2_nullspace_basis(&ParityCheck::zeros(1, 1));
        assert_eq!(g.rows(), 1);
        assert!(g.get(0, 0));
    }

    #[test]
    fn row_ops() {
        let mut m = BitMatrix::zeros(3, 130);
        m.set(0, 129);
        m.set(2, 3);
        m.swap_rows(0, 2);
        assert!(m.get(0, 3) && m.get(2, 129));
        m.xor_rows(1, 2);
        assert!(m.get(1, 129));
        assert_eq!(pack(&unpack(m.row(1), 130)), m.row(1).to_vec());
    }
}
