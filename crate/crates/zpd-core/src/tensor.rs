//! The tensor square of an algebra and the multiplication operators on
//! it.
//!
//! `A tensor A` is identified with coordinate vectors of length `n^2`
//! through the basis `e_i tensor e_j` at position `i*n + j`. Three
//! operators act on this space:
//!
//! * `mu1` sends `x tensor y` to `xy` (an `n x n^2` matrix),
//! * `mu2` sends `x tensor y` to `yx`,
//! * `mu` stacks the two (a `2n x n^2` matrix), so its kernel is the
//!   space of tensors killed by multiplication in both orders,
//! * `kappa = mu1 - mu2` sends `x tensor y` to the commutator `[x, y]`.

use crate::algebra::StructureAlgebra;
use crate::field::Scalar;
use crate::linalg::{Matrix, Subspace};

/// Position of `e_i tensor e_j` in the flattened tensor square.
pub fn tensor_index(n: usize, i: usize, j: usize) -> usize {
    i * n + j
}

/// Coordinates of `x tensor y`.
pub fn simple_tensor<S: Scalar>(x: &[S], y: &[S]) -> Vec<S> {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for xi in x {
        for yj in y {
            out.push(xi.clone() * yj.clone());
        }
    }
    out
}

/// The flip `x tensor y -> y tensor x` on flattened coordinates.
pub fn swap_flat<S: Scalar>(v: &[S], n: usize) -> Vec<S> {
    assert_eq!(v.len(), n * n);
    let mut out = v.to_vec();
    for i in 0..n {
        for j in 0..n {
            out[tensor_index(n, i, j)] = v[tensor_index(n, j, i)].clone();
        }
    }
    out
}

/// Image of a subspace of the tensor square under the flip.
pub fn swap_subspace<S: Scalar>(s: &Subspace<S>, n: usize) -> Subspace<S> {
    assert_eq!(s.ambient(), n * n);
    let rows = (0..s.dim()).map(|r| swap_flat(s.basis_row(r), n)).collect();
    Subspace::from_rows(n * n, rows)
}

/// Matrix of `x tensor y -> xy`: column `i*n + j` holds `e_i e_j`.
pub fn mu1<S: Scalar>(a: &StructureAlgebra<S>) -> Matrix<S> {
    let n = a.dim();
    Matrix::from_fn(n, n * n, |k, col| {
        let (i, j) = (col / n, col % n);
        a.product_of_basis(i, j)[k].clone()
    })
}

/// Matrix of `x tensor y -> yx`: column `i*n + j` holds `e_j e_i`.
pub fn mu2<S: Scalar>(a: &StructureAlgebra<S>) -> Matrix<S> {
    let n = a.dim();
    Matrix::from_fn(n, n * n, |k, col| {
        let (i, j) = (col / n, col % n);
        a.product_of_basis(j, i)[k].clone()
    })
}

/// `mu1` stacked on `mu2`; a tensor is in the kernel exactly when both
/// product orders vanish on it.
pub fn mu<S: Scalar>(a: &StructureAlgebra<S>) -> Matrix<S> {
    mu1(a).stack_vertical(&mu2(a))
}

/// `mu1 - mu2`, the commutator operator on the tensor square.
pub fn kappa<S: Scalar>(a: &StructureAlgebra<S>) -> Matrix<S> {
    mu1(a).sub(&mu2(a))
}

/// A bilinear functional on `A x A`, stored as its coefficient matrix
/// with `phi(e_i, e_j)` at `(i, j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearForm<S> {
    coeffs: Matrix<S>,
}

impl<S: Scalar> BilinearForm<S> {
    pub fn new(coeffs: Matrix<S>) -> Self {
        assert_eq!(coeffs.rows(), coeffs.cols());
        BilinearForm { coeffs }
    }

    /// Rebuilds a form from flattened coordinates (the functional on the
    /// tensor square it induces).
    pub fn from_flat(n: usize, flat: &[S]) -> Self {
        assert_eq!(flat.len(), n * n);
        BilinearForm {
            coeffs: Matrix::from_fn(n, n, |i, j| flat[tensor_index(n, i, j)].clone()),
        }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.rows()
    }

    pub fn coeffs(&self) -> &Matrix<S> {
        &self.coeffs
    }

    pub fn entry(&self, i: usize, j: usize) -> &S {
        &self.coeffs[(i, j)]
    }

    /// `phi(x, y)`.
    pub fn apply(&self, x: &[S], y: &[S]) -> S {
        let n = self.dim();
        debug_assert!(x.len() == n && y.len() == n);
        let mut acc = S::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                acc = acc + xi.clone() * yj.clone() * self.coeffs[(i, j)].clone();
            }
        }
        acc
    }

    /// Value of the induced functional on a flattened tensor.
    pub fn apply_tensor(&self, t: &[S]) -> S {
        let n = self.dim();
        assert_eq!(t.len(), n * n);
        let mut acc = S::zero();
        for i in 0..n {
            for j in 0..n {
                let c = &t[tensor_index(n, i, j)];
                if !c.is_zero() {
                    acc = acc + c.clone() * self.coeffs[(i, j)].clone();
                }
            }
        }
        acc
    }

    /// Coordinates of the induced functional on the tensor square.
    pub fn flatten(&self) -> Vec<S> {
        let n = self.dim();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                out.push(self.coeffs[(i, j)].clone());
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i + 1..n).all(|j| self.coeffs[(i, j)] == self.coeffs[(j, i)]))
    }
}
