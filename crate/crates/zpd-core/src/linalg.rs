//! Dense exact matrices and canonical subspaces over a [`Scalar`] field.
//!
//! A [`Subspace`] always stores the reduced row echelon basis with
//! strictly increasing pivot columns, so two subspaces are equal exactly
//! when their representations are equal. Reduction, kernels and solving
//! route through the bit-packed gf(2) path of [`crate::f2`] whenever all
//! entries live in gf(2); the two paths are interchangeable and a
//! randomized test pins them together.

use crate::f2::BitMatrix;
use crate::field::{FieldDescriptor, Scalar};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

pub fn vec_is_zero<S: Scalar>(v: &[S]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn vec_add<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn vec_sub<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn vec_scale<S: Scalar>(c: &S, v: &[S]) -> Vec<S> {
    v.iter().map(|x| c.clone() * x.clone()).collect()
}

pub fn vec_dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        acc = acc + x.clone() * y.clone();
    }
    acc
}

/// `dst -= c * src`, the elimination kernel of every reduction here.
fn sub_scaled_assign<S: Scalar>(dst: &mut [S], c: &S, src: &[S]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d = d.clone() - c.clone() * s.clone();
    }
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let n = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            debug_assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn col(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn set_col(&mut self, c: usize, v: &[S]) {
        debug_assert_eq!(v.len(), self.rows);
        for (r, x) in v.iter().enumerate() {
            self[(r, c)] = x.clone();
        }
    }

    pub fn transpose(&self) -> Matrix<S> {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn stack_vertical(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, other.cols, "column counts differ");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn add(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn mat_vec(&self, v: &[S]) -> Vec<S> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|r| vec_dot(self.row(r), v)).collect()
    }

    pub fn matmul(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out: Matrix<S> = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)].clone();
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    out[(r, c)] = out[(r, c)].clone() + a.clone() * other[(k, c)].clone();
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        vec_is_zero(&self.data)
    }

    /// Bit-packed view when every entry is a gf(2) value and at least one
    /// is explicitly bound to modulus 2.
    fn to_bits(&self) -> Option<BitMatrix> {
        if self.data.is_empty() {
            return None;
        }
        let mut any_bound = false;
        let mut bm = BitMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let e = &self[(r, c)];
                bm.set(r, c, e.as_gf2_bit()?);
                if e.field() == Some(FieldDescriptor::Prime(2)) {
                    any_bound = true;
                }
            }
        }
        any_bound.then_some(bm)
    }

    /// Canonical row space.
    pub fn rref(&self) -> Subspace<S> {
        if let Some(mut bm) = self.to_bits() {
            let pivots = bm.rref_in_place();
            return Subspace::from_bits(bm, pivots);
        }
        self.rref_generic()
    }

    /// Reference (field-generic) reduction; behaviorally identical to
    /// [`Matrix::rref`].
    pub fn rref_generic(&self) -> Subspace<S> {
        let mut rows = self.row_vecs();
        let pivots = reduce_rows(&mut rows);
        rows.truncate(pivots.len());
        Subspace {
            ambient: self.cols,
            basis: Matrix::from_rows(rows).pad_cols(self.cols),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().dim()
    }

    /// Canonical basis of `{v : M v = 0}`.
    pub fn kernel(&self) -> Subspace<S> {
        if let Some(bm) = self.to_bits() {
            let mut k = bm.kernel();
            let pivots = k.rref_in_place();
            return Subspace::from_bits(k, pivots);
        }
        self.kernel_generic()
    }

    /// Reference (field-generic) kernel; behaviorally identical to
    /// [`Matrix::kernel`].
    pub fn kernel_generic(&self) -> Subspace<S> {
        let mut rows = self.row_vecs();
        let pivots = reduce_rows(&mut rows);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f] {
                continue;
            }
            let mut v = vec![S::zero(); self.cols];
            v[f] = S::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -rows[r][f].clone();
            }
            basis.push(v);
        }
        Matrix::from_rows(basis).pad_cols(self.cols).rref_generic()
    }

    /// Keeps an empty row list attached to the right ambient width.
    pub(crate) fn pad_cols(self, cols: usize) -> Matrix<S> {
        if self.rows == 0 {
            Matrix { rows: 0, cols, data: Vec::new() }
        } else {
            self
        }
    }

    /// Particular solution of `M x = rhs` with free variables set to
    /// zero, or `None` when `rhs` is outside the column space. The
    /// returned vector is re-verified by substitution.
    pub fn solve(&self, rhs: &[S]) -> Option<Vec<S>> {
        assert_eq!(rhs.len(), self.rows, "rhs length differs from row count");
        let augmented = Matrix::from_fn(self.rows, self.cols + 1, |r, c| {
            if c == self.cols {
                rhs[r].clone()
            } else {
                self[(r, c)].clone()
            }
        });
        let (reduced, pivots) = if let Some(mut bm) = augmented.to_bits() {
            let pivots = bm.rref_in_place();
            let m = Matrix::from_fn(bm.rows(), self.cols + 1, |r, c| {
                S::from_integer(&FieldDescriptor::Prime(2), bm.get(r, c) as i64)
            });
            (m.row_vecs(), pivots)
        } else {
            let mut rows = augmented.row_vecs();
            let pivots = reduce_rows(&mut rows);
            rows.truncate(pivots.len());
            (rows, pivots)
        };
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![S::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = reduced[r][self.cols].clone();
        }
        assert_eq!(self.mat_vec(&x), rhs, "solution failed substitution");
        Some(x)
    }
}

impl<S> std::ops::Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (r, c): (usize, usize)) -> &S {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut S {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

/// Gauss-Jordan on a row list. Returns ascending pivot columns; the rows
/// end up in canonical reduced form followed by zero rows.
fn reduce_rows<S: Scalar>(rows: &mut [Vec<S>]) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pr) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pr, rank);
        let inv = rows[rank][col]
            .try_inverse()
            .expect("nonzero scalar must be invertible");
        let normalized = vec_scale(&inv, &rows[rank]);
        rows[rank] = normalized;
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let c = rows[r][col].clone();
                let (src, dst) = if r < rank {
                    let (lo, hi) = rows.split_at_mut(rank);
                    (&hi[0], &mut lo[r])
                } else {
                    let (lo, hi) = rows.split_at_mut(r);
                    (&lo[rank], &mut hi[0])
                };
                sub_scaled_assign(dst, &c, src);
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    pivots
}

/// Linear subspace of `F^ambient` held as a canonical RREF basis.
/// Equality of subspaces is representation equality.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<S> {
    ambient: usize,
    basis: Matrix<S>,
    pivots: Vec<usize>,
}

impl<S: Scalar> Subspace<S> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix { rows: 0, cols: ambient, data: Vec::new() },
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the given vectors.
    pub fn from_rows(ambient: usize, rows: Vec<Vec<S>>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), ambient, "vector length differs from ambient");
        }
        Matrix::from_rows(rows).pad_cols(ambient).rref()
    }

    pub(crate) fn from_bits(bm: BitMatrix, pivots: Vec<usize>) -> Self {
        let gf2 = FieldDescriptor::Prime(2);
        let basis = Matrix::from_fn(bm.rows(), bm.cols(), |r, c| {
            S::from_integer(&gf2, bm.get(r, c) as i64)
        });
        Subspace {
            ambient: bm.cols(),
            basis: basis.pad_cols(bm.cols()),
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn basis(&self) -> &Matrix<S> {
        &self.basis
    }

    pub fn basis_row(&self, i: usize) -> &[S] {
        self.basis.row(i)
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residue of `v` after reduction against the basis; zero iff the
    /// subspace contains `v`.
    pub fn reduce(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.ambient, "vector length differs from ambient");
        let mut v = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            if !v[p].is_zero() {
                let c = v[p].clone();
                sub_scaled_assign(&mut v, &c, self.basis.row(r));
            }
        }
        v
    }

    pub fn contains(&self, v: &[S]) -> bool {
        vec_is_zero(&self.reduce(v))
    }

    /// Containment `self <= other`.
    pub fn leq(&self, other: &Subspace<S>) -> bool {
        assert_eq!(self.ambient, other.ambient, "ambient dimensions differ");
        (0..self.dim()).all(|i| other.contains(self.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace<S>) -> Subspace<S> {
        assert_eq!(self.ambient, other.ambient, "ambient dimensions differ");
        if self.dim() == 0 {
            return other.clone();
        }
        if other.dim() == 0 {
            return self.clone();
        }
        self.basis.stack_vertical(&other.basis).rref()
    }

    /// Annihilator `{f : f(s) = 0 for all s in self}` in coordinates.
    pub fn annihilator(&self) -> Subspace<S> {
        if self.dim() == 0 {
            return Subspace::full(self.ambient);
        }
        self.basis.kernel()
    }

    /// Intersection via the kernel of the stacked constraint systems of
    /// both annihilators.
    pub fn intersect(&self, other: &Subspace<S>) -> Subspace<S> {
        assert_eq!(self.ambient, other.ambient, "ambient dimensions differ");
        let ca = self.annihilator();
        let cb = other.annihilator();
        if ca.dim() == 0 {
            return other.clone();
        }
        if cb.dim() == 0 {
            return self.clone();
        }
        ca.basis.stack_vertical(&cb.basis).kernel()
    }
}

/// Incremental row-span accumulator kept in reduced row echelon form;
/// the field-generic counterpart of [`crate::f2::BitAccum`]. Feeding it
/// the rows of a matrix in any order yields that matrix's canonical row
/// space.
#[derive(Clone, Debug)]
pub struct RowAccum<S> {
    ambient: usize,
    rows: Vec<Vec<S>>,
    pivots: Vec<usize>,
}

impl<S: Scalar> RowAccum<S> {
    pub fn new(ambient: usize) -> Self {
        RowAccum { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce_in_place(&self, v: &mut [S]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                sub_scaled_assign(v, &c, row);
            }
        }
    }

    /// Adds `v` to the span. Returns true when the dimension grew.
    pub fn insert(&mut self, mut v: Vec<S>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length differs from ambient");
        self.reduce_in_place(&mut v);
        let Some(lead) = v.iter().position(|e| !e.is_zero()) else {
            return false;
        };
        let inv = v[lead]
            .try_inverse()
            .expect("accumulator entries must be invertible field scalars");
        v = vec_scale(&inv, &v);
        for row in self.rows.iter_mut() {
            if !row[lead].is_zero() {
                let c = row[lead].clone();
                sub_scaled_assign(row, &c, &v);
            }
        }
        let pos = self.pivots.partition_point(|&p| p < lead);
        self.rows.insert(pos, v);
        self.pivots.insert(pos, lead);
        true
    }

    pub fn contains(&self, v: &[S]) -> bool {
        let mut v = v.to_vec();
        self.reduce_in_place(&mut v);
        vec_is_zero(&v)
    }

    pub fn into_subspace(self) -> Subspace<S> {
        Subspace {
            ambient: self.ambient,
            basis: Matrix::from_rows(self.rows).pad_cols(self.ambient),
            pivots: self.pivots,
        }
    }
}
