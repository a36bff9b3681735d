//! Derivation spaces into the algebra and into its dual bimodule, and
//! the derivation-based necessary/sufficient conditions for the
//! two-sided property.
//!
//! A derivation is a linear map with `d(xy) = d(x)y + x d(y)`; it is
//! inner when it is `x -> xm - mx` for some `m`. Both conditions are
//! linear in the matrix entries, so the spaces come out of one kernel
//! computation over the flattened maps (row-major, entry `(k, l)` at
//! position `k*n + l`).
//!
//! The dual bimodule is the dual space with actions
//! `(x.f)(y) = f(yx)` and `(f.x)(y) = f(xy)`; derivations into it obey
//! the matching Leibniz rule, and "all of them are inner" is a
//! sufficient condition for the two-sided property. Two necessary
//! conditions run in the other direction: derivation images must land
//! in the square-zero span, and derivations into a subspace module must
//! land in its sandwich span.

use crate::algebra::StructureAlgebra;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{vec_add, vec_is_zero, Matrix, Subspace};
use crate::spans::{square_zero_span, theta_span, SpanResult, SpanStrategy};

/// A verified derivation of the algebra; column `j` holds the
/// coordinates of the image of `e_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation<S> {
    matrix: Matrix<S>,
}

impl<S: Scalar> Derivation<S> {
    /// Wraps a matrix after checking the Leibniz rule on every basis
    /// pair. The unit is necessarily killed; that consequence is
    /// asserted rather than trusted.
    pub fn new(a: &StructureAlgebra<S>, matrix: Matrix<S>) -> Result<Self> {
        let n = a.dim();
        assert!(matrix.rows() == n && matrix.cols() == n, "derivation matrix must be n x n");
        for i in 0..n {
            for j in 0..n {
                let lhs = matrix.mat_vec(a.product_of_basis(i, j));
                let rhs = vec_add(
                    &a.multiply(&matrix.col(i), &a.basis_element(j)),
                    &a.multiply(&a.basis_element(i), &matrix.col(j)),
                );
                if lhs != rhs {
                    return Err(Error::NotADerivation { i, j });
                }
            }
        }
        assert!(
            vec_is_zero(&matrix.mat_vec(a.unit())),
            "a derivation kills the unit; the Leibniz rule forces it"
        );
        Ok(Derivation { matrix })
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn apply(&self, x: &[S]) -> Vec<S> {
        self.matrix.mat_vec(x)
    }

    pub fn flatten(&self) -> Vec<S> {
        flatten_matrix(&self.matrix)
    }
}

/// A verified derivation into the dual bimodule; column `j` holds the
/// dual-basis coefficients of the image of `e_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualDerivation<S> {
    matrix: Matrix<S>,
}

impl<S: Scalar> DualDerivation<S> {
    pub fn new(a: &StructureAlgebra<S>, matrix: Matrix<S>) -> Result<Self> {
        let n = a.dim();
        assert!(matrix.rows() == n && matrix.cols() == n, "derivation matrix must be n x n");
        for i in 0..n {
            for j in 0..n {
                let lhs = matrix.mat_vec(a.product_of_basis(i, j));
                let rhs = vec_add(
                    &a.left_mult(&a.basis_element(j)).transpose().mat_vec(&matrix.col(i)),
                    &a.right_mult(&a.basis_element(i)).transpose().mat_vec(&matrix.col(j)),
                );
                if lhs != rhs {
                    return Err(Error::NotADerivation { i, j });
                }
            }
        }
        Ok(DualDerivation { matrix })
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn flatten(&self) -> Vec<S> {
        flatten_matrix(&self.matrix)
    }
}

pub fn flatten_matrix<S: Scalar>(m: &Matrix<S>) -> Vec<S> {
    m.row_vecs().into_iter().flatten().collect()
}

pub fn unflatten_matrix<S: Scalar>(n: usize, flat: &[S]) -> Matrix<S> {
    assert_eq!(flat.len(), n * n);
    Matrix::from_fn(n, n, |k, l| flat[k * n + l].clone())
}

/// Coefficient matrix of the Leibniz rule `d(e_i e_j) = d(e_i) e_j +
/// e_i d(e_j)` over all basis pairs: one equation per (pair, output
/// coordinate), unknowns the flattened map.
fn leibniz_system<S: Scalar>(a: &StructureAlgebra<S>) -> Matrix<S> {
    let n = a.dim();
    let table = a.table();
    Matrix::from_fn(n * n * n, n * n, |row, colidx| {
        let (i, j, k) = (row / (n * n), (row / n) % n, row % n);
        let (m, l) = (colidx / n, colidx % n);
        let mut v = S::zero();
        if m == k {
            v = v + table[i][j][l].clone();
        }
        if l == i {
            v = v - table[m][j][k].clone();
        }
        if l == j {
            v = v - table[i][m][k].clone();
        }
        v
    })
}

/// As above for maps into the dual bimodule: `d(e_i e_j) =
/// d(e_i).e_j + e_i.d(e_j)` with the transposed actions.
fn dual_leibniz_system<S: Scalar>(a: &StructureAlgebra<S>) -> Matrix<S> {
    let n = a.dim();
    let table = a.table();
    Matrix::from_fn(n * n * n, n * n, |row, colidx| {
        let (i, j, k) = (row / (n * n), (row / n) % n, row % n);
        let (m, l) = (colidx / n, colidx % n);
        let mut v = S::zero();
        if m == k {
            v = v + table[i][j][l].clone();
        }
        if l == i {
            v = v - table[j][k][m].clone();
        }
        if l == j {
            v = v - table[k][i][m].clone();
        }
        v
    })
}

/// All derivations of the algebra, as flattened matrices.
pub fn derivation_space<S: Scalar>(a: &StructureAlgebra<S>) -> Subspace<S> {
    leibniz_system(a).kernel()
}

/// Flattened matrices of the maps `x -> x e_m - e_m x`.
pub fn inner_derivation_space<S: Scalar>(a: &StructureAlgebra<S>) -> Subspace<S> {
    let n = a.dim();
    let rows = (0..n)
        .map(|m| {
            let e = a.basis_element(m);
            flatten_matrix(&a.right_mult(&e).sub(&a.left_mult(&e)))
        })
        .collect();
    Subspace::from_rows(n * n, rows)
}

/// Dimension of derivations modulo inner derivations.
pub fn h1_dimension<S: Scalar>(a: &StructureAlgebra<S>) -> usize {
    let der = derivation_space(a);
    let inn = inner_derivation_space(a);
    assert!(inn.leq(&der), "inner derivations satisfy the Leibniz system");
    der.dim() - inn.dim()
}

/// All derivations into the dual bimodule, as flattened matrices.
pub fn dual_derivation_space<S: Scalar>(a: &StructureAlgebra<S>) -> Subspace<S> {
    dual_leibniz_system(a).kernel()
}

/// Flattened matrices of the maps `x -> x.tau - tau.x` over dual basis
/// functionals `tau`.
pub fn dual_inner_space<S: Scalar>(a: &StructureAlgebra<S>) -> Subspace<S> {
    let n = a.dim();
    let table = a.table();
    let rows = (0..n)
        .map(|t| {
            let m = Matrix::from_fn(n, n, |k, j| table[k][j][t].clone() - table[j][k][t].clone());
            flatten_matrix(&m)
        })
        .collect();
    Subspace::from_rows(n * n, rows)
}

/// Are the two dual spaces equal? When they are, every functional
/// vanishing on two-sided zero pairs factors through the products, so
/// this is a sufficient condition for the two-sided property.
pub fn all_dual_derivations_inner<S: Scalar>(a: &StructureAlgebra<S>) -> bool {
    let der = dual_derivation_space(a);
    let inn = dual_inner_space(a);
    assert!(inn.leq(&der), "inner dual derivations satisfy the dual Leibniz system");
    der == inn
}

/// A derivation together with the basis image escaping the target
/// span.
#[derive(Clone, Debug)]
pub struct DerivationEscape<S> {
    pub derivation: Derivation<S>,
    pub basis_index: usize,
    pub value: Vec<S>,
}

#[derive(Clone, Debug)]
pub struct SquareZeroImageCheck<S> {
    pub square_zero: SpanResult<S>,
    pub holds: bool,
    pub escape: Option<DerivationEscape<S>>,
}

/// Necessary condition for the two-sided property: the image of every
/// derivation lies in the span of square-zero elements. Needs the exact
/// span, so the strategy must be exhaustive. A violation comes back as
/// the offending derivation and basis image.
pub fn derivation_square_zero_check<S: Scalar>(
    a: &StructureAlgebra<S>,
    strategy: &SpanStrategy,
) -> Result<SquareZeroImageCheck<S>> {
    let nspan = square_zero_span(a, strategy)?;
    let der = derivation_space(a);
    let n = a.dim();
    let mut escape = None;
    'rows: for r in 0..der.dim() {
        let matrix = unflatten_matrix(n, der.basis_row(r));
        for j in 0..n {
            let value = matrix.col(j);
            if !nspan.span.contains(&value) {
                let derivation = Derivation::new(a, matrix)?;
                escape = Some(DerivationEscape { derivation, basis_index: j, value });
                break 'rows;
            }
        }
    }
    Ok(SquareZeroImageCheck { square_zero: nspan, holds: escape.is_none(), escape })
}

pub fn derivation_images_in_square_zero<S: Scalar>(
    a: &StructureAlgebra<S>,
    strategy: &SpanStrategy,
) -> Result<bool> {
    Ok(derivation_square_zero_check(a, strategy)?.holds)
}

#[derive(Clone, Debug)]
pub struct ModuleDerivationCheck<S> {
    /// Dimension of the space of derivations mapping into the module.
    pub derivation_dim: usize,
    pub theta: SpanResult<S>,
    pub holds: bool,
    pub escape: Option<DerivationEscape<S>>,
}

/// Checks whether every derivation of the algebra taking values in the
/// given module subspace maps the whole algebra into the module's
/// sandwich span (products `x m` with `x m x = 0`). The module must be
/// closed under multiplication on both sides.
pub fn module_derivation_images_in_theta<S: Scalar>(
    a: &StructureAlgebra<S>,
    module: &Subspace<S>,
    strategy: &SpanStrategy,
) -> Result<ModuleDerivationCheck<S>> {
    let n = a.dim();
    if module.ambient() != n {
        return Err(Error::AmbientMismatch { left: module.ambient(), right: n });
    }
    for idx in 0..module.dim() {
        let m = module.basis_row(idx);
        for by in 0..n {
            let e = a.basis_element(by);
            if !module.contains(&a.multiply(&e, m)) {
                return Err(Error::ModuleNotClosed { index: idx, by, side: "left" });
            }
            if !module.contains(&a.multiply(m, &e)) {
                return Err(Error::ModuleNotClosed { index: idx, by, side: "right" });
            }
        }
    }

    // Derivations with every column in the module: the Leibniz system
    // plus one annihilation row per (module constraint, column).
    let ann = module.annihilator();
    let constraints = Matrix::from_fn(ann.dim() * n, n * n, |row, colidx| {
        let (c, j) = (row / n, row % n);
        if colidx % n == j {
            ann.basis_row(c)[colidx / n].clone()
        } else {
            S::zero()
        }
    });
    let der = leibniz_system(a).stack_vertical(&constraints).kernel();

    let theta = theta_span(a, module, strategy)?;
    let mut escape = None;
    'rows: for r in 0..der.dim() {
        let matrix = unflatten_matrix(n, der.basis_row(r));
        for j in 0..n {
            let value = matrix.col(j);
            if !theta.span.contains(&value) {
                let derivation = Derivation::new(a, matrix)?;
                escape = Some(DerivationEscape { derivation, basis_index: j, value });
                break 'rows;
            }
        }
    }
    Ok(ModuleDerivationCheck {
        derivation_dim: der.dim(),
        holds: escape.is_none(),
        theta,
        escape,
    })
}

/// The grading derivation of an algebra assembled from a coefficient
/// algebra and a truncated polynomial part: basis index `i*k + t`
/// carries degree `t`, and the map scales the degree-`t` component by
/// `t`. Fails if the dimensions do not factor or the table is not
/// graded accordingly.
pub fn euler_derivation<S: Scalar>(
    a: &StructureAlgebra<S>,
    a0_dim: usize,
    k: usize,
) -> Result<Derivation<S>> {
    let n = a.dim();
    if k == 0 || a0_dim == 0 || a0_dim * k != n {
        return Err(Error::EulerShape { dim: n, a0_dim, k });
    }
    let matrix = Matrix::from_fn(n, n, |r, c| {
        if r == c {
            a.scalar((c % k) as i64)
        } else {
            a.scalar(0)
        }
    });
    Derivation::new(a, matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldDescriptor, Fp};
    use crate::spans::zero_pair_span;
    use crate::tensor::simple_tensor;

    const GF2: FieldDescriptor = FieldDescriptor::Prime(2);
    const GF3: FieldDescriptor = FieldDescriptor::Prime(3);

    fn coords(field: &FieldDescriptor, v: &[i64]) -> Vec<Fp> {
        v.iter().map(|&x| Fp::from_integer(field, x)).collect()
    }

    #[test]
    fn triangular_and_matrix_derivation_dimensions() {
        let tri = StructureAlgebra::<Fp>::upper_triangular(2, &GF2).unwrap();
        assert_eq!(derivation_space(&tri).dim(), 2);
        assert_eq!(inner_derivation_space(&tri).dim(), 2);
        assert_eq!(h1_dimension(&tri), 0);

        let m = StructureAlgebra::<Fp>::matrix_algebra(2, &GF3).unwrap();
        assert_eq!(inner_derivation_space(&m).dim(), 4 - m.center().dim());
        assert_eq!(h1_dimension(&m), 0);
    }

    #[test]
    fn truncated_polynomial_derivations_depend_on_characteristic() {
        // In characteristic 2 the coefficient-of-u map is an extra
        // derivation; elsewhere only multiples of the grading map
        // survive.
        let a2 = StructureAlgebra::<Fp>::truncated_polynomial(2, &GF2).unwrap();
        assert_eq!(derivation_space(&a2).dim(), 2);
        assert_eq!(h1_dimension(&a2), 2);

        let a3 = StructureAlgebra::<Fp>::truncated_polynomial(2, &GF3).unwrap();
        assert_eq!(derivation_space(&a3).dim(), 1);
        assert_eq!(h1_dimension(&a3), 1);
    }

    #[test]
    fn derivation_constructor_verifies_leibniz() {
        let a = StructureAlgebra::<Fp>::matrix_algebra(2, &GF2).unwrap();
        assert_eq!(
            Derivation::new(&a, Matrix::identity(4)),
            Err(Error::NotADerivation { i: 0, j: 0 })
        );
        // ad(E01) is a derivation.
        let e = a.basis_element(1);
        let ad = a.right_mult(&e).sub(&a.left_mult(&e));
        let d = Derivation::new(&a, ad).unwrap();
        assert!(vec_is_zero(&d.apply(a.unit())));
    }

    #[test]
    fn dual_derivations_and_innerness() {
        let tri = StructureAlgebra::<Fp>::upper_triangular(2, &GF2).unwrap();
        assert!(all_dual_derivations_inner(&tri));
        let m = StructureAlgebra::<Fp>::matrix_algebra(2, &GF2).unwrap();
        assert!(all_dual_derivations_inner(&m));
        let tr = StructureAlgebra::<Fp>::truncated_polynomial(2, &GF2).unwrap();
        assert!(!all_dual_derivations_inner(&tr));

        // Dual inner generators satisfy the dual Leibniz rule.
        let inn = dual_inner_space(&m);
        for r in 0..inn.dim() {
            let matrix = unflatten_matrix(4, inn.basis_row(r));
            assert!(DualDerivation::new(&m, matrix).is_ok());
        }
    }

    #[test]
    fn square_zero_image_criterion() {
        let st = SpanStrategy::exhaustive();
        let m = StructureAlgebra::<Fp>::matrix_algebra(2, &GF2).unwrap();
        assert_eq!(derivation_images_in_square_zero(&m, &st), Ok(true));

        let tr2 = StructureAlgebra::<Fp>::truncated_polynomial(2, &GF2).unwrap();
        assert_eq!(derivation_images_in_square_zero(&tr2, &st), Ok(false));

        let tr3 = StructureAlgebra::<Fp>::truncated_polynomial(2, &GF3).unwrap();
        assert_eq!(derivation_images_in_square_zero(&tr3, &st), Ok(true));

        // A one-dimensional algebra has no derivations at all.
        let f = StructureAlgebra::<Fp>::matrix_algebra(1, &GF3).unwrap();
        assert_eq!(derivation_space(&f).dim(), 0);
        assert_eq!(derivation_images_in_square_zero(&f, &st), Ok(true));
    }

    #[test]
    fn euler_derivation_grades_the_truncated_extension() {
        let m2 = StructureAlgebra::<Fp>::matrix_algebra(2, &GF2).unwrap();
        let a = StructureAlgebra::tensor_trunc(&m2, 2).unwrap();
        let d = euler_derivation(&a, 4, 2).unwrap();
        for i in 0..4 {
            assert!(vec_is_zero(&d.apply(&a.basis_element(2 * i))));
            assert_eq!(d.apply(&a.basis_element(2 * i + 1)), a.basis_element(2 * i + 1));
        }
        // Not inner: its flattening escapes the inner span.
        assert!(!inner_derivation_space(&a).contains(&d.flatten()));
        assert!(h1_dimension(&a) >= 1);

        assert_eq!(
            euler_derivation(&a, 3, 2),
            Err(Error::EulerShape { dim: 8, a0_dim: 3, k: 2 })
        );
        // mat(2) carries no grading by the second index.
        assert!(matches!(
            euler_derivation(&m2, 2, 2),
            Err(Error::NotADerivation { .. })
        ));
    }

    #[test]
    fn module_derivation_escape_on_the_graded_algebra() {
        let m2 = StructureAlgebra::<Fp>::matrix_algebra(2, &GF2).unwrap();
        let a = StructureAlgebra::tensor_trunc(&m2, 2).unwrap();
        let module = Subspace::from_rows(
            8,
            (0..4).map(|i| coords(&GF2, &{
                let mut v = [0i64; 8];
                v[2 * i + 1] = 1;
                v
            })).collect(),
        );
        let st = SpanStrategy::exhaustive();
        let check = module_derivation_images_in_theta(&a, &module, &st).unwrap();
        assert!(!check.holds);
        assert_eq!(check.theta.span.dim(), 3);
        let esc = check.escape.expect("an escape was reported");
        assert!(!check.theta.span.contains(&esc.value));
        assert!(module.contains(&esc.value));

        // On the full matrix algebra with the whole space as module the
        // containment holds.
        let full = Subspace::<Fp>::full(4);
        let ok = module_derivation_images_in_theta(&m2, &full, &st).unwrap();
        assert!(ok.holds);
        assert!(ok.escape.is_none());

        // A non-module is rejected with the violating action.
        let not_closed = Subspace::from_rows(4, vec![coords(&GF2, &[1, 0, 0, 0])]);
        assert!(matches!(
            module_derivation_images_in_theta(&m2, &not_closed, &st),
            Err(Error::ModuleNotClosed { .. })
        ));
    }

    #[test]
    fn inner_derivations_decompose_over_zero_pairs() {
        // For algebras where the two-sided containment holds, each
        // tensor 1 tensor w - w tensor 1 lies in the zero-pair span.
        let st = SpanStrategy::exhaustive();
        let a = StructureAlgebra::<Fp>::matrix_algebra(2, &GF2).unwrap();
        let span = zero_pair_span(&a, &st).unwrap().span;
        for w in 0..4 {
            let wv = a.basis_element(w);
            let t = crate::linalg::vec_sub(
                &simple_tensor(a.unit(), &wv),
                &simple_tensor(&wv, a.unit()),
            );
            assert!(span.contains(&t));
        }
    }
}
