//! Finite-dimensional unital algebras presented by structure constants.
//!
//! An algebra of dimension `n` is an `n x n` grid of coordinate vectors,
//! `table[i][j]` holding the coordinates of `e_i * e_j`, together with
//! the coordinates of the unit. Builders for the stock families (full
//! matrix algebras, upper triangular matrices, truncated polynomial
//! rings, direct products, matrix algebras over a coefficient algebra,
//! and tensor products with a truncation) produce tables that validate
//! by construction.

use crate::error::{Error, Result, ValidationError};
use crate::field::{FieldDescriptor, Scalar};
use crate::linalg::{vec_add, vec_is_zero, vec_scale, Matrix, Subspace};

#[derive(Clone, Debug)]
pub struct StructureAlgebra<S> {
    field: FieldDescriptor,
    dim: usize,
    table: Vec<Vec<Vec<S>>>,
    unit: Vec<S>,
    label: String,
}

impl<S: Scalar> PartialEq for StructureAlgebra<S> {
    /// Mathematical identity: same field, dimension, table and unit.
    /// The display label does not participate.
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.table == other.table
            && self.unit == other.unit
    }
}

impl<S: Scalar> StructureAlgebra<S> {
    /// Wraps a raw table after shape checks. Axioms are checked by
    /// [`StructureAlgebra::validate`], not here.
    pub fn from_table(
        field: FieldDescriptor,
        table: Vec<Vec<Vec<S>>>,
        unit: Vec<S>,
        label: impl Into<String>,
    ) -> Result<Self> {
        field.validate()?;
        let dim = table.len();
        if dim == 0 {
            return Err(Error::InvalidBuilder {
                reason: "algebra dimension must be at least 1".into(),
            });
        }
        if unit.len() != dim {
            return Err(ValidationError::UnitShape { expected: dim, got: unit.len() }.into());
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != dim {
                return Err(ValidationError::Shape {
                    i,
                    j: row.len(),
                    expected: dim,
                    got: row.len(),
                }
                .into());
            }
            for (j, entry) in row.iter().enumerate() {
                if entry.len() != dim {
                    return Err(ValidationError::Shape {
                        i,
                        j,
                        expected: dim,
                        got: entry.len(),
                    }
                    .into());
                }
            }
        }
        Ok(StructureAlgebra {
            field,
            dim,
            table,
            unit,
            label: label.into(),
        })
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn table(&self) -> &Vec<Vec<Vec<S>>> {
        &self.table
    }

    pub fn product_of_basis(&self, i: usize, j: usize) -> &[S] {
        &self.table[i][j]
    }

    pub fn unit(&self) -> &[S] {
        &self.unit
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn scalar(&self, n: i64) -> S {
        S::from_integer(&self.field, n)
    }

    pub fn zero_element(&self) -> Vec<S> {
        vec![self.scalar(0); self.dim]
    }

    pub fn basis_element(&self, i: usize) -> Vec<S> {
        let mut v = self.zero_element();
        v[i] = self.scalar(1);
        v
    }

    /// Checks the unit laws and all `dim^3` associativity triples.
    /// The first violation in scan order is reported.
    pub fn validate(&self) -> std::result::Result<(), ValidationError> {
        for j in 0..self.dim {
            let e = self.basis_element(j);
            if self.multiply(&self.unit, &e) != e {
                return Err(ValidationError::LeftUnit { index: j });
            }
            if self.multiply(&e, &self.unit) != e {
                return Err(ValidationError::RightUnit { index: j });
            }
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let left = self.multiply(&self.table[i][j], &self.basis_element(k));
                    let right = self.multiply(&self.basis_element(i), &self.table[j][k]);
                    if left != right {
                        return Err(ValidationError::Associativity { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    /// Product of two coordinate vectors.
    pub fn multiply(&self, x: &[S], y: &[S]) -> Vec<S> {
        debug_assert_eq!(x.len(), self.dim);
        debug_assert_eq!(y.len(), self.dim);
        let mut acc = self.zero_element();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi.clone() * yj.clone();
                acc = vec_add(&acc, &vec_scale(&c, &self.table[i][j]));
            }
        }
        acc
    }

    pub fn commutator(&self, x: &[S], y: &[S]) -> Vec<S> {
        crate::linalg::vec_sub(&self.multiply(x, y), &self.multiply(y, x))
    }

    /// Matrix of left multiplication by `x`: column `j` holds `x * e_j`.
    pub fn left_mult(&self, x: &[S]) -> Matrix<S> {
        let mut m: Matrix<S> = Matrix::zeros(self.dim, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let t = &self.table[i][j][k];
                    if !t.is_zero() {
                        m[(k, j)] = m[(k, j)].clone() + xi.clone() * t.clone();
                    }
                }
            }
        }
        m
    }

    /// Matrix of right multiplication by `y`: column `i` holds `e_i * y`.
    pub fn right_mult(&self, y: &[S]) -> Matrix<S> {
        let mut m: Matrix<S> = Matrix::zeros(self.dim, self.dim);
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            for i in 0..self.dim {
                for k in 0..self.dim {
                    let t = &self.table[i][j][k];
                    if !t.is_zero() {
                        m[(k, i)] = m[(k, i)].clone() + yj.clone() * t.clone();
                    }
                }
            }
        }
        m
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (i..self.dim).all(|j| self.table[i][j] == self.table[j][i]))
    }

    /// Two-sided zero slice `Z(x) = {y : xy = yx = 0}`.
    pub fn zero_pair_slice(&self, x: &[S]) -> Subspace<S> {
        self.left_mult(x).stack_vertical(&self.right_mult(x)).kernel()
    }

    /// `{y : xy = 0}`.
    pub fn left_kernel_slice(&self, x: &[S]) -> Subspace<S> {
        self.left_mult(x).kernel()
    }

    /// `{y : xy = yx}`.
    pub fn centralizer_slice(&self, x: &[S]) -> Subspace<S> {
        self.left_mult(x).sub(&self.right_mult(x)).kernel()
    }

    /// Elements commuting with everything, as the kernel of the stacked
    /// operators `L_{e_m} - R_{e_m}`.
    pub fn center(&self) -> Subspace<S> {
        let n = self.dim;
        let m = Matrix::from_fn(n * n, n, |row, col| {
            let (m_idx, k) = (row / n, row % n);
            self.table[m_idx][col][k].clone() - self.table[col][m_idx][k].clone()
        });
        m.kernel()
    }

    /// Span of all commutators of basis elements.
    pub fn commutator_subspace(&self) -> Subspace<S> {
        let mut rows = Vec::new();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let c = crate::linalg::vec_sub(&self.table[i][j], &self.table[j][i]);
                if !vec_is_zero(&c) {
                    rows.push(c);
                }
            }
        }
        Subspace::from_rows(self.dim, rows)
    }

    // ----- builders -----

    /// Full matrix algebra `M_k`, basis of matrix units in row-major
    /// order.
    pub fn matrix_algebra(k: usize, field: &FieldDescriptor) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidBuilder { reason: "mat(k) needs k >= 1".into() });
        }
        let n = k * k;
        let zero = S::from_integer(field, 0);
        let one = S::from_integer(field, 1);
        let idx = |r: usize, s: usize| r * k + s;
        let mut table = vec![vec![vec![zero.clone(); n]; n]; n];
        for r in 0..k {
            for s in 0..k {
                for t in 0..k {
                    for u in 0..k {
                        if s == t {
                            table[idx(r, s)][idx(t, u)][idx(r, u)] = one.clone();
                        }
                    }
                }
            }
        }
        let mut unit = vec![zero; n];
        for r in 0..k {
            unit[idx(r, r)] = one.clone();
        }
        StructureAlgebra::from_table(*field, table, unit, format!("mat({k})"))
    }

    /// Upper triangular matrices `T_k`; basis `E_rs` with `r <= s` in
    /// row-major order.
    pub fn upper_triangular(k: usize, field: &FieldDescriptor) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidBuilder { reason: "tri(k) needs k >= 1".into() });
        }
        let mut pairs = Vec::new();
        for r in 0..k {
            for s in r..k {
                pairs.push((r, s));
            }
        }
        let n = pairs.len();
        let zero = S::from_integer(field, 0);
        let one = S::from_integer(field, 1);
        let pos = |r: usize, s: usize| pairs.iter().position(|&p| p == (r, s)).unwrap();
        let mut table = vec![vec![vec![zero.clone(); n]; n]; n];
        for (a, &(r, s)) in pairs.iter().enumerate() {
            for (b, &(t, u)) in pairs.iter().enumerate() {
                if s == t {
                    table[a][b][pos(r, u)] = one.clone();
                }
            }
        }
        let mut unit = vec![zero; n];
        for r in 0..k {
            unit[pos(r, r)] = one.clone();
        }
        StructureAlgebra::from_table(*field, table, unit, format!("tri({k})"))
    }

    /// Truncated polynomial ring `F[X]/(X^k)`, basis `1, u, ..., u^(k-1)`.
    pub fn truncated_polynomial(k: usize, field: &FieldDescriptor) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidBuilder { reason: "trunc(k) needs k >= 2".into() });
        }
        let zero = S::from_integer(field, 0);
        let one = S::from_integer(field, 1);
        let mut table = vec![vec![vec![zero.clone(); k]; k]; k];
        for a in 0..k {
            for b in 0..k {
                if a + b < k {
                    table[a][b][a + b] = one.clone();
                }
            }
        }
        let mut unit = vec![zero; k];
        unit[0] = one;
        StructureAlgebra::from_table(*field, table, unit, format!("trunc({k})"))
    }

    /// Direct product with componentwise operations; basis of `a`
    /// followed by basis of `b`.
    pub fn direct_product(a: &Self, b: &Self) -> Result<Self> {
        if a.field != b.field {
            return Err(Error::InvalidBuilder {
                reason: format!("factors live over different fields {} and {}", a.field, b.field),
            });
        }
        let (na, nb) = (a.dim, b.dim);
        let n = na + nb;
        let zero = S::from_integer(&a.field, 0);
        let mut table = vec![vec![vec![zero.clone(); n]; n]; n];
        #[allow(clippy::needless_range_loop)]
        for i in 0..na {
            for j in 0..na {
                for k in 0..na {
                    table[i][j][k] = a.table[i][j][k].clone();
                }
            }
        }
        for i in 0..nb {
            for j in 0..nb {
                for k in 0..nb {
                    table[na + i][na + j][na + k] = b.table[i][j][k].clone();
                }
            }
        }
        let mut unit = vec![zero; n];
        unit[..na].clone_from_slice(&a.unit);
        unit[na..].clone_from_slice(&b.unit);
        let label = format!("prod({},{})", a.label, b.label);
        StructureAlgebra::from_table(a.field, table, unit, label)
    }

    /// `A_0 tensor F[X]/(X^k)`; basis `e_i u^t` ordered with the `A_0`
    /// index major, so `(i, t)` sits at `i*k + t`.
    pub fn tensor_trunc(a0: &Self, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidBuilder {
                reason: "tensor_trunc(a0, k) needs k >= 2".into(),
            });
        }
        let n0 = a0.dim;
        let n = n0 * k;
        let zero = S::from_integer(&a0.field, 0);
        let idx = |i: usize, t: usize| i * k + t;
        let mut table = vec![vec![vec![zero.clone(); n]; n]; n];
        for i in 0..n0 {
            for s in 0..k {
                for j in 0..n0 {
                    for t in 0..k {
                        if s + t >= k {
                            continue;
                        }
                        for l in 0..n0 {
                            let c = &a0.table[i][j][l];
                            if !c.is_zero() {
                                table[idx(i, s)][idx(j, t)][idx(l, s + t)] = c.clone();
                            }
                        }
                    }
                }
            }
        }
        let mut unit = vec![zero; n];
        for i in 0..n0 {
            unit[idx(i, 0)] = a0.unit[i].clone();
        }
        let label = format!("tensor_trunc({},{k})", a0.label);
        StructureAlgebra::from_table(a0.field, table, unit, label)
    }

    /// Matrix algebra `M_k(C)` over a coefficient algebra; basis
    /// `E_rs c_m` with the matrix position major, so `((r,s), m)` sits at
    /// `(r*k + s) * dim(C) + m`.
    pub fn matrix_over(k: usize, c: &Self) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidBuilder { reason: "mat_over(k, c) needs k >= 1".into() });
        }
        let nc = c.dim;
        let n = k * k * nc;
        let zero = S::from_integer(&c.field, 0);
        let idx = |r: usize, s: usize, m: usize| (r * k + s) * nc + m;
        let mut table = vec![vec![vec![zero.clone(); n]; n]; n];
        for r in 0..k {
            for s in 0..k {
                for u in 0..k {
                    for m in 0..nc {
                        for l in 0..nc {
                            for w in 0..nc {
                                let cw = &c.table[m][l][w];
                                if !cw.is_zero() {
                                    table[idx(r, s, m)][idx(s, u, l)][idx(r, u, w)] = cw.clone();
                                }
                            }
                        }
                    }
                }
            }
        }
        let mut unit = vec![zero; n];
        for r in 0..k {
            for m in 0..nc {
                unit[idx(r, r, m)] = c.unit[m].clone();
            }
        }
        let label = format!("mat_over({k},{})", c.label);
        StructureAlgebra::from_table(c.field, table, unit, label)
    }
}
