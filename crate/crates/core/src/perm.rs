//! Permutations, circulant permutations and circulant-block permutations.
//!
//! A permutation `σ` on `[n]` is identified with the `n × n` matrix that has
//! a one at `(i, σ(i))` for every row `i`. Under that convention the matrix
//! product `P · Q` corresponds to the permutation `i ↦ τ(σ(i))` where `σ`
//! belongs to `P` and `τ` to `Q`, i.e. `σ_PQ = σ_Q ∘ σ_P`. Every product in
//! this crate is a matrix product in that sense.
//!
//! The circulant `I_a^r` maps row `i` to column `(i + a) mod r`.
//!
//! A circulant-block permutation of size `m·r` is stored in factored form
//! `diag(I_{s_0}, …, I_{s_{m-1}}) · (π ⊗ I_0^r)`: block row `i` holds the
//! circulant `I_{s_i}^r` in block column `π(i)`. The expanded `mr × mr`
//! permutation is only materialised on request.

use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `[n]`, stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    image: Vec<usize>,
}

impl Perm {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &x in &image {
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation(format!("{image:?}")));
            }
            seen[x] = true;
        }
        Ok(Perm { image })
    }

    pub fn identity(n: usize) -> Self {
        Perm {
            image: (0..n).collect(),
        }
    }

    /// The `n`-point circulant `I_a^n`.
    pub fn circulant(n: usize, a: usize) -> Self {
        Perm {
            image: (0..n).map(|i| (i + a) % n.max(1)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        check_size(self.len(), other.len())?;
        Ok(Perm {
            image: self.image.iter().map(|&x| other.image[x]).collect(),
        })
    }

    /// Transpose of the permutation matrix, which is the inverse permutation.
    pub fn transpose(&self) -> Perm {
        let mut image = vec![0; self.len()];
        for (i, &x) in self.image.iter().enumerate() {
            image[x] = i;
        }
        Perm { image }
    }

    pub fn has_fixed_column(&self) -> bool {
        self.image.iter().enumerate().any(|(i, &x)| i == x)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        self.image
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i == x)
            .map(|(i, _)| i)
            .collect()
    }

    /// Columns in which the two permutation matrices agree.
    pub fn overlap_columns(&self, other: &Perm) -> Result<Vec<usize>> {
        check_size(self.len(), other.len())?;
        let a = self.transpose();
        let b = other.transpose();
        Ok((0..self.len()).filter(|&j| a.image[j] == b.image[j]).collect())
    }

    pub fn overlaps(&self, other: &Perm) -> Result<bool> {
        check_size(self.len(), other.len())?;
        Ok(self.image.iter().zip(&other.image).any(|(x, y)| x == y))
    }

    pub fn commutes_with(&self, other: &Perm) -> Result<bool> {
        Ok(self.compose(other)? == other.compose(self)?)
    }

    /// `PQ` and `QP` have no column in common.
    pub fn strongly_noncommutative(&self, other: &Perm) -> Result<bool> {
        let pq = self.compose(other)?;
        let qp = other.compose(self)?;
        Ok(!pq.overlaps(&qp)?)
    }

    /// Cyclic shift amount if this permutation is a circulant.
    pub fn as_circulant(&self) -> Option<usize> {
        let n = self.len();
        if n == 0 {
            return None;
        }
        let a = self.image[0];
        (0..n).all(|i| self.image[i] == (i + a) % n).then_some(a)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.image)
    }
}

fn check_size(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::SizeMismatch { left: a, right: b });
    }
    Ok(())
}

/// The circulant permutation `I_a^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CirculantPerm {
    r: usize,
    shift: usize,
}

impl CirculantPerm {
    pub fn new(r: usize, shift: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidSpec("circulant size must be positive".into()));
        }
        if shift >= r {
            return Err(Error::ShiftOutOfRange { shift, r });
        }
        Ok(CirculantPerm { r, shift })
    }

    pub fn size(&self) -> usize {
        self.r
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn to_perm(&self) -> Perm {
        Perm::circulant(self.r, self.shift)
    }

    pub fn compose(&self, other: &CirculantPerm) -> Result<CirculantPerm> {
        check_size(self.r, other.r)?;
        Ok(CirculantPerm {
            r: self.r,
            shift: (self.shift + other.shift) % self.r,
        })
    }

    pub fn transpose(&self) -> CirculantPerm {
        CirculantPerm {
            r: self.r,
            shift: (self.r - self.shift) % self.r,
        }
    }

    pub fn has_fixed_column(&self) -> bool {
        self.shift == 0
    }
}

/// An `mr × mr` circulant-block permutation in factored form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CirculantBlockPerm {
    pi: Perm,
    shifts: Vec<usize>,
    r: usize,
}

impl CirculantBlockPerm {
    pub fn new(pi: Perm, shifts: Vec<usize>, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidSpec("circulant size must be positive".into()));
        }
        check_size(pi.len(), shifts.len())?;
        if let Some(&s) = shifts.iter().find(|&&s| s >= r) {
            return Err(Error::ShiftOutOfRange { shift: s, r });
        }
        Ok(CirculantBlockPerm { pi, shifts, r })
    }

    /// Builds the block permutation, reducing shifts modulo `r`.
    pub fn with_shifts_mod(pi: Perm, shifts: &[usize], r: usize) -> Result<Self> {
        let shifts = shifts.iter().map(|&s| s % r.max(1)).collect();
        Self::new(pi, shifts, r)
    }

    /// `π ⊗ I_s^r`: every block carries the same shift.
    pub fn uniform(pi: Perm, shift: usize, r: usize) -> Result<Self> {
        let m = pi.len();
        Self::new(pi, vec![shift; m], r)
    }

    pub fn identity(m: usize, r: usize) -> Self {
        CirculantBlockPerm {
            pi: Perm::identity(m),
            shifts: vec![0; m],
            r,
        }
    }

    pub fn m(&self) -> usize {
        self.pi.len()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn size(&self) -> usize {
        self.m() * self.r
    }

    pub fn pi(&self) -> &Perm {
        &self.pi
    }

    pub fn shifts(&self) -> &[usize] {
        &self.shifts
    }

    pub fn has_uniform_shifts(&self) -> bool {
        self.shifts.windows(2).all(|w| w[0] == w[1])
    }

    pub fn is_identity(&self) -> bool {
        self.pi.is_identity() && self.shifts.iter().all(|&s| s == 0)
    }

    /// Image of a single index of the expanded permutation.
    #[inline]
    pub fn apply(&self, idx: usize) -> usize {
        let block = idx / self.r;
        let local = idx % self.r;
        self.pi.apply(block) * self.r + (local + self.shifts[block]) % self.r
    }

    /// The expanded `mr × mr` permutation.
    pub fn expand(&self) -> Perm {
        Perm {
            image: (0..self.size()).map(|i| self.apply(i)).collect(),
        }
    }

    /// Row index of the single one in expanded column `col`.
    pub fn preimage(&self, col: usize) -> usize {
        let block = col / self.r;
        let local = col % self.r;
        let src = self.pi.transpose().apply(block);
        src * self.r + (local + self.r - self.shifts[src]) % self.r
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        check_size(self.m(), other.m())?;
        check_size(self.r, other.r)
    }

    /// Closed-form matrix product: block row `i` of the result carries
    /// `I_{a_i + b_{π_a(i)}}` in block column `π_b(π_a(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let pi = self.pi.compose(&other.pi)?;
        let shifts = (0..self.m())
            .map(|i| (self.shifts[i] + other.shifts[self.pi.apply(i)]) % self.r)
            .collect();
        Ok(CirculantBlockPerm {
            pi,
            shifts,
            r: self.r,
        })
    }

    pub fn transpose(&self) -> Self {
        let pi_t = self.pi.transpose();
        let shifts = (0..self.m())
            .map(|j| (self.r - self.shifts[pi_t.apply(j)]) % self.r)
            .collect();
        CirculantBlockPerm {
            pi: pi_t,
            shifts,
            r: self.r,
        }
    }

    /// A fixed column needs a fixed block with a zero shift.
    pub fn has_fixed_column(&self) -> bool {
        (0..self.m()).any(|i| self.pi.apply(i) == i && self.shifts[i] == 0)
    }

    /// Whether the expansions share a column (equivalently a row).
    pub fn overlaps(&self, other: &Self) -> Result<bool> {
        self.check_dims(other)?;
        Ok((0..self.m())
            .any(|i| self.pi.apply(i) == other.pi.apply(i) && self.shifts[i] == other.shifts[i]))
    }

    pub fn commutes(&self, other: &Self) -> Result<bool> {
        Ok(self.compose(other)? == other.compose(self)?)
    }

    pub fn strongly_noncommutative(&self, other: &Self) -> Result<bool> {
        let ab = self.compose(other)?;
        let ba = other.compose(self)?;
        Ok(!ab.overlaps(&ba)?)
    }
}

impl fmt::Debug for CirculantBlockPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CB(r={}, pi={:?}, s={:?})",
            self.r,
            self.pi.images(),
            self.shifts
        )
    }
}

/// Matrix product of a sequence of block permutations (left to right).
pub fn product<'a, I>(factors: I) -> Result<Option<CirculantBlockPerm>>
where
    I: IntoIterator<Item = &'a CirculantBlockPerm>,
{
    let mut acc: Option<CirculantBlockPerm> = None;
    for f in factors {
        acc = Some(match acc {
            None => f.clone(),
            Some(a) => a.compose(f)?,
        });
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Perm {
        Perm::new(v.to_vec()).unwrap()
    }

    fn cb(pi: &[usize], s: &[usize], r: usize) -> CirculantBlockPerm {
        CirculantBlockPerm::new(p(pi), s.to_vec(), r).unwrap()
    }

    #[test]
    fn product_convention() {
        // I_1^3 · I_1^3 = I_2^3 and P[i, σ(i)] = 1.
        let a = Perm::circulant(3, 1);
        assert_eq!(a.compose(&a).unwrap(), Perm::circulant(3, 2));
        // σ_PQ = σ_Q ∘ σ_P
        let s = p(&[1, 0, 2]);
        let t = p(&[0, 2, 1]);
        let st = s.compose(&t).unwrap();
        for i in 0..3 {
            assert_eq!(st.apply(i), t.apply(s.apply(i)));
        }
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Perm::new(vec![0, 0, 1]).is_err());
        assert!(Perm::new(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn compose_size_mismatch() {
        assert!(matches!(
            Perm::identity(3).compose(&Perm::identity(4)),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn transpose_of_circulant() {
        assert_eq!(Perm::circulant(7, 3).transpose(), Perm::circulant(7, 4));
        assert_eq!(Perm::identity(5).transpose(), Perm::identity(5));
    }

    #[test]
    fn fixed_columns() {
        assert!(Perm::circulant(5, 0).has_fixed_column());
        assert!(!p(&[1, 0, 3, 2]).has_fixed_column());
        assert!(!Perm::circulant(5, 2).has_fixed_column());
    }

    #[test]
    fn overlaps_of_circulants() {
        let a = Perm::circulant(4, 1);
        assert!(a.overlap_columns(&Perm::circulant(4, 3)).unwrap().is_empty());
        assert!(Perm::circulant(4, 0)
            .overlap_columns(&Perm::circulant(4, 2))
            .unwrap()
            .is_empty());
        assert_eq!(a.overlap_columns(&a).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn cb_compose_example() {
        let a = cb(&[1, 0], &[1, 9], 20);
        let b = cb(&[1, 0], &[0, 4], 20);
        let ab = a.compose(&b).unwrap();
        assert_eq!(ab, cb(&[0, 1], &[5, 9], 20));
        assert_eq!(ab.expand(), a.expand().compose(&b.expand()).unwrap());
    }

    #[test]
    fn cb_degenerate_block_count_is_circulant_algebra() {
        let a = cb(&[0], &[3], 11);
        let b = cb(&[0], &[10], 11);
        assert_eq!(a.compose(&b).unwrap().shifts(), &[2]);
        assert!(a.commutes(&b).unwrap());
    }

    #[test]
    fn cb_transpose_example() {
        let a = cb(&[1, 0], &[3, 5], 7);
        let t = a.transpose();
        assert_eq!(t, cb(&[1, 0], &[2, 4], 7));
        assert_eq!(t.expand(), a.expand().transpose());
        assert!(a.compose(&t).unwrap().is_identity());
        assert_eq!(t.transpose(), a);
    }

    #[test]
    fn preimage_inverts_apply() {
        let a = cb(&[2, 0, 1], &[3, 5, 1], 7);
        for i in 0..a.size() {
            assert_eq!(a.preimage(a.apply(i)), i);
        }
    }

    #[test]
    fn example3_pair_is_strongly_noncommutative() {
        let p_ = cb(&[0, 1], &[1, 9], 20);
        let q = cb(&[1, 0], &[0, 4], 20);
        assert!(p_.strongly_noncommutative(&q).unwrap());
        let pq = p_.expand().compose(&q.expand()).unwrap();
        let qp = q.expand().compose(&p_.expand()).unwrap();
        assert!(pq.overlap_columns(&qp).unwrap().is_empty());
    }

    #[test]
    fn circulant_perm_algebra() {
        let a = CirculantPerm::new(9, 4).unwrap();
        let b = CirculantPerm::new(9, 7).unwrap();
        assert_eq!(a.compose(&b).unwrap().shift(), 2);
        assert_eq!(a.transpose().shift(), 5);
        assert!(CirculantPerm::new(9, 9).is_err());
        assert_eq!(a.to_perm(), Perm::circulant(9, 4));
    }

    #[test]
    fn as_circulant_detects_shift() {
        assert_eq!(Perm::circulant(6, 4).as_circulant(), Some(4));
        assert_eq!(p(&[1, 0, 3, 2]).as_circulant(), None);
    }
}
