//! Bit-packed linear algebra over gf(2).
//!
//! Rows are packed into `u64` words, least significant bit first. This is
//! the workhorse behind the big exhaustive span enumerations; the generic
//! path in [`crate::linalg`] must produce identical reduced forms, and a
//! randomized agreement test enforces that.

pub fn words_for(cols: usize) -> usize {
    cols.div_ceil(64)
}

#[inline]
pub fn bit_get(row: &[u64], col: usize) -> bool {
    row[col / 64] >> (col % 64) & 1 == 1
}

#[inline]
pub fn bit_set(row: &mut [u64], col: usize, bit: bool) {
    let mask = 1u64 << (col % 64);
    if bit {
        row[col / 64] |= mask;
    } else {
        row[col / 64] &= !mask;
    }
}

#[inline]
pub fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

/// Column of the first set bit, if any.
pub fn leading_bit(row: &[u64]) -> Option<usize> {
    for (w, word) in row.iter().enumerate() {
        if *word != 0 {
            return Some(w * 64 + word.trailing_zeros() as usize);
        }
    }
    None
}

pub fn is_zero_row(row: &[u64]) -> bool {
    row.iter().all(|w| *w == 0)
}

/// Dense gf(2) matrix with bit-packed rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
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

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u64>>, cols: usize) -> Self {
        let words = words_for(cols);
        let mut data = Vec::with_capacity(rows.len() * words);
        let n = rows.len();
        for r in rows {
            debug_assert_eq!(r.len(), words);
            data.extend_from_slice(&r);
        }
        BitMatrix { rows: n, cols, words, data }
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
    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.words..(r + 1) * self.words]
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        bit_get(self.row(r), c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        bit_set(self.row_mut(r), c, bit);
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.words {
            self.data.swap(a * self.words + w, b * self.words + w);
        }
    }

    fn xor_row(&mut self, dst: usize, src: usize) {
        let (lo, hi) = if dst < src {
            let (l, h) = self.data.split_at_mut(src * self.words);
            (&mut l[dst * self.words..(dst + 1) * self.words], &h[..self.words])
        } else {
            let (l, h) = self.data.split_at_mut(dst * self.words);
            (&mut h[..self.words], &l[src * self.words..(src + 1) * self.words] as &[u64])
        };
        for (d, s) in lo.iter_mut().zip(hi) {
            *d ^= s;
        }
    }

    /// Gauss-Jordan in place; zero rows are dropped. Returns pivot columns
    /// in ascending order, leaving the canonical reduced row echelon form.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut rank = 0usize;
        for col in 0..self.cols {
            let Some(pr) = (rank..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.swap_rows(pr, rank);
            for r in 0..self.rows {
                if r != rank && self.get(r, col) {
                    self.xor_row(r, rank);
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        self.data.truncate(rank * self.words);
        self.rows = rank;
        pivots
    }

    /// Basis of the null space `{v : M v = 0}`, rows in canonical RREF.
    pub fn kernel(&self) -> BitMatrix {
        let mut reduced = self.clone();
        let pivots = reduced.rref_in_place();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let words = words_for(self.cols);
        let mut basis = Vec::new();
        for (f, _) in is_pivot.iter().enumerate().filter(|(_, &piv)| !piv) {
            let mut v = vec![0u64; words];
            bit_set(&mut v, f, true);
            for (r, &p) in pivots.iter().enumerate() {
                if reduced.get(r, f) {
                    bit_set(&mut v, p, true);
                }
            }
            basis.push(v);
        }
        let mut m = BitMatrix::from_rows(basis, self.cols);
        m.rref_in_place();
        m
    }

    /// Stacks `self` on top of `other`; column counts must match.
    pub fn stack(&self, other: &BitMatrix) -> BitMatrix {
        debug_assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        BitMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            words: self.words,
            data,
        }
    }

    /// Matrix-vector product over gf(2).
    pub fn mat_vec(&self, v: &[u64]) -> Vec<u64> {
        debug_assert_eq!(v.len(), self.words);
        let out_words = words_for(self.rows);
        let mut out = vec![0u64; out_words];
        for r in 0..self.rows {
            let mut acc = 0u64;
            for (a, b) in self.row(r).iter().zip(v) {
                acc ^= a & b;
            }
            bit_set(&mut out, r, acc.count_ones() % 2 == 1);
        }
        out
    }

    /// `self * other` over gf(2).
    pub fn matmul(&self, other: &BitMatrix) -> BitMatrix {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    let (dst, src) = (r * out.words, c * other.words);
                    for w in 0..other.words {
                        out.data[dst + w] ^= other.data[src + w];
                    }
                }
            }
        }
        out
    }

    pub fn xor_assign(&mut self, other: &BitMatrix) {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (d, s) in self.data.iter_mut().zip(&other.data) {
            *d ^= s;
        }
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[u64]> {
        (0..self.rows).map(|r| self.row(r))
    }
}

/// Incremental row-span accumulator kept in reduced row echelon form.
/// Inserting every row of a matrix yields exactly its RREF, so merged
/// accumulators are order independent.
#[derive(Clone, Debug)]
pub struct BitAccum {
    cols: usize,
    words: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl BitAccum {
    pub fn new(cols: usize) -> Self {
        BitAccum {
            cols,
            words: words_for(cols),
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn reduce(&self, v: &mut [u64]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if bit_get(v, p) {
                xor_into(v, row);
            }
        }
    }

    /// Adds `v` to the span. Returns true when the dimension grew.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        debug_assert_eq!(v.len(), self.words);
        let mut v = v.to_vec();
        self.reduce(&mut v);
        let Some(lead) = leading_bit(&v) else {
            return false;
        };
        for row in self.rows.iter_mut() {
            if bit_get(row, lead) {
                xor_into(row, &v);
            }
        }
        let pos = self.pivots.partition_point(|&p| p < lead);
        self.rows.insert(pos, v);
        self.pivots.insert(pos, lead);
        true
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        is_zero_row(&v)
    }

    pub fn merge(self, other: BitAccum) -> BitAccum {
        debug_assert_eq!(self.cols, other.cols);
        let (mut base, donor) = if self.dim() >= other.dim() {
            (self, other)
        } else {
            (other, self)
        };
        for row in &donor.rows {
            base.insert(row);
        }
        base
    }

    pub fn into_matrix(self) -> BitMatrix {
        BitMatrix::from_rows(self.rows, self.cols)
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
}
