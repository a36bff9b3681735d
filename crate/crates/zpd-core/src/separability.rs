//! Separability idempotents and the constructive factorization they
//! induce.
//!
//! An element `e = sum p_i tensor q_i` with `sum p_i q_i = 1` and
//! `x.e = e.x` for all `x` (acting on the left leg and the right leg
//! respectively) certifies that the algebra is separable. Both
//! conditions are linear in the coefficients of `e`, so existence is
//! one solve. Given such an element, any bilinear functional that kills
//! the two-sided zero pairs factors as `tau1(xy) + tau2(yx)` with
//! explicitly computable functionals: that factorization is what
//! [`reconstruct_decomposition`] produces and re-verifies.

use crate::algebra::StructureAlgebra;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::Matrix;
use crate::properties::Decomposition;
use crate::tensor::{mu1, BilinearForm};

/// A verified separability element, stored through its tensor
/// coordinates (`n * n` entries, left leg major).
#[derive(Clone, Debug, PartialEq)]
pub struct SeparabilityElement<S> {
    tensor: Vec<S>,
}

impl<S: Scalar> SeparabilityElement<S> {
    /// Accepts the coordinates only if both defining conditions hold:
    /// the legs multiply to the unit, and left action on the first leg
    /// agrees with right action on the second.
    pub fn new(a: &StructureAlgebra<S>, tensor: Vec<S>) -> Option<Self> {
        let n = a.dim();
        if tensor.len() != n * n {
            return None;
        }
        if mu1(a).mat_vec(&tensor) != a.unit() {
            return None;
        }
        let t = Matrix::from_fn(n, n, |i, j| tensor[i * n + j].clone());
        for m in 0..n {
            let e = a.basis_element(m);
            let left = a.left_mult(&e).matmul(&t);
            let right = t.matmul(&a.right_mult(&e).transpose());
            if left != right {
                return None;
            }
        }
        Some(SeparabilityElement { tensor })
    }

    pub fn tensor(&self) -> &[S] {
        &self.tensor
    }
}

/// Solves for a separability element: `n` equations pin the product of
/// the legs to the unit, `n^3` more make the element central for the
/// two-sided action. Any solution works; the result is re-verified.
pub fn separability_idempotent<S: Scalar>(
    a: &StructureAlgebra<S>,
) -> Option<SeparabilityElement<S>> {
    let n = a.dim();
    let table = a.table();
    let sys = Matrix::from_fn(n + n * n * n, n * n, |row, c| {
        if row < n {
            table[c / n][c % n][row].clone()
        } else {
            let r = row - n;
            let (m, k, j) = (r / (n * n), (r / n) % n, r % n);
            let mut v = S::zero();
            if c % n == j {
                v = v + table[m][c / n][k].clone();
            }
            if c / n == k {
                v = v - table[c % n][m][j].clone();
            }
            v
        }
    });
    let mut rhs = vec![S::zero(); n + n * n * n];
    rhs[..n].clone_from_slice(a.unit());
    let sol = sys.solve(&rhs)?;
    let e = SeparabilityElement::new(a, sol);
    assert!(e.is_some(), "solver output must satisfy the defining conditions");
    e
}

pub fn is_separable<S: Scalar>(a: &StructureAlgebra<S>) -> bool {
    separability_idempotent(a).is_some()
}

/// Factors `phi` as `tau1(xy) + tau2(yx)` using a separability element
/// `e = sum p_i tensor q_i`: `tau1(w) = sum phi(p_i, q_i w)` and
/// `tau2(w) = phi(1, w) - tau1(w)`. The factorization identity is
/// re-verified on every basis pair; it fails only when `phi` does not
/// vanish on the two-sided zero pairs.
pub fn reconstruct_decomposition<S: Scalar>(
    a: &StructureAlgebra<S>,
    phi: &BilinearForm<S>,
    e: &SeparabilityElement<S>,
) -> Result<Decomposition<S>> {
    let n = a.dim();
    assert_eq!(phi.dim(), n);
    assert_eq!(e.tensor().len(), n * n);
    let mut tau1 = Vec::with_capacity(n);
    for b in 0..n {
        let mut v = S::zero();
        for i in 0..n {
            for j in 0..n {
                let t_ij = &e.tensor()[i * n + j];
                if t_ij.is_zero() {
                    continue;
                }
                let val = phi.apply(&a.basis_element(i), a.product_of_basis(j, b));
                v = v + t_ij.clone() * val;
            }
        }
        tau1.push(v);
    }
    let tau2 = (0..n)
        .map(|b| phi.apply(a.unit(), &a.basis_element(b)) - tau1[b].clone())
        .collect();
    let dec = Decomposition { tau1, tau2 };
    for i in 0..n {
        for j in 0..n {
            let got = dec.apply(a, &a.basis_element(i), &a.basis_element(j));
            if &got != phi.entry(i, j) {
                return Err(Error::ReconstructionFailed { i, j });
            }
        }
    }
    Ok(dec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldDescriptor, Fp};
    use crate::properties::decompose_functional;
    use crate::spans::{zero_pair_span, SpanStrategy};
    use num_traits::Zero;

    const GF2: FieldDescriptor = FieldDescriptor::Prime(2);
    const GF3: FieldDescriptor = FieldDescriptor::Prime(3);

    #[test]
    fn matrix_algebras_are_separable() {
        for p in [GF2, GF3] {
            for k in 1..=3 {
                let a = StructureAlgebra::<Fp>::matrix_algebra(k, &p).unwrap();
                assert!(is_separable(&a), "mat({k}) over {p}");
            }
        }
    }

    #[test]
    fn standard_matrix_idempotent_validates() {
        // E(0,0) tensor E(0,0) + E(1,0) tensor E(0,1) in mat(2).
        let a = StructureAlgebra::<Fp>::matrix_algebra(2, &GF2).unwrap();
        let mut t = vec![Fp::from_integer(&GF2, 0); 16];
        t[0] = Fp::from_integer(&GF2, 1); // index (0, 0)
        t[2 * 4 + 1] = Fp::from_integer(&GF2, 1); // index (2, 1)
        assert!(SeparabilityElement::new(&a, t.clone()).is_some());
        // Dropping a term breaks the unit condition.
        t[0] = Fp::from_integer(&GF2, 0);
        assert!(SeparabilityElement::new(&a, t).is_none());
    }

    #[test]
    fn split_product_idempotent() {
        let f = StructureAlgebra::<Fp>::matrix_algebra(1, &GF2).unwrap();
        let a = StructureAlgebra::direct_product(&f, &f).unwrap();
        let mut t = vec![Fp::from_integer(&GF2, 0); 4];
        t[0] = Fp::from_integer(&GF2, 1); // (1,0) tensor (1,0)
        t[3] = Fp::from_integer(&GF2, 1); // (0,1) tensor (0,1)
        assert!(SeparabilityElement::new(&a, t).is_some());
        assert!(is_separable(&a));
    }

    #[test]
    fn non_semisimple_algebras_are_not_separable() {
        let tr = StructureAlgebra::<Fp>::truncated_polynomial(2, &GF2).unwrap();
        assert!(separability_idempotent(&tr).is_none());
        let tri = StructureAlgebra::<Fp>::upper_triangular(2, &GF3).unwrap();
        assert!(!is_separable(&tri));
    }

    #[test]
    fn separability_respects_direct_products() {
        let m2 = StructureAlgebra::<Fp>::matrix_algebra(2, &GF3).unwrap();
        let m1 = StructureAlgebra::<Fp>::matrix_algebra(1, &GF3).unwrap();
        let tr = StructureAlgebra::<Fp>::truncated_polynomial(2, &GF3).unwrap();
        assert!(is_separable(&StructureAlgebra::direct_product(&m2, &m1).unwrap()));
        assert!(!is_separable(&StructureAlgebra::direct_product(&m2, &tr).unwrap()));
    }

    #[test]
    fn trace_form_reconstruction() {
        let a = StructureAlgebra::<Fp>::matrix_algebra(2, &GF3).unwrap();
        let e = separability_idempotent(&a).unwrap();
        // trace(xy) as a bilinear form: entry (i, j) = trace of e_i e_j.
        let phi = BilinearForm::new(Matrix::from_fn(4, 4, |i, j| {
            let p = a.product_of_basis(i, j);
            p[0] + p[3]
        }));
        let dec = reconstruct_decomposition(&a, &phi, &e).unwrap();
        let direct = decompose_functional(&a, &phi).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let x = a.basis_element(i);
                let y = a.basis_element(j);
                assert_eq!(dec.apply(&a, &x, &y), direct.apply(&a, &x, &y));
            }
        }

        let zero = BilinearForm::new(Matrix::zeros(4, 4));
        let dec0 = reconstruct_decomposition(&a, &zero, &e).unwrap();
        assert!(dec0.tau1.iter().all(|v| v.is_zero()));
        assert!(dec0.tau2.iter().all(|v| v.is_zero()));
    }

    #[test]
    fn reconstruction_covers_the_annihilator_basis() {
        let a = StructureAlgebra::<Fp>::matrix_algebra(2, &GF2).unwrap();
        let e = separability_idempotent(&a).unwrap();
        let span = zero_pair_span(&a, &SpanStrategy::exhaustive()).unwrap().span;
        let ann = span.annihilator();
        assert!(ann.dim() > 0);
        for r in 0..ann.dim() {
            let phi = BilinearForm::from_flat(4, ann.basis_row(r));
            assert!(reconstruct_decomposition(&a, &phi, &e).is_ok());
        }
    }

    #[test]
    fn reconstruction_rejects_non_vanishing_functionals() {
        let a = StructureAlgebra::<Fp>::matrix_algebra(2, &GF2).unwrap();
        let e = separability_idempotent(&a).unwrap();
        // Indicator of (E(0,0), E(1,1)): a two-sided zero pair it does
        // not kill.
        let mut c = Matrix::zeros(4, 4);
        c[(0, 3)] = Fp::from_integer(&GF2, 1);
        let phi = BilinearForm::new(c);
        assert!(matches!(
            reconstruct_decomposition(&a, &phi, &e),
            Err(Error::ReconstructionFailed { .. })
        ));
    }
}
