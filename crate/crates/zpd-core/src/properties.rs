//! Deciders for the determinedness properties, with machine-checkable
//! certificates.
//!
//! A bilinear functional `phi` factors through multiplication exactly
//! when it kills the kernel of the corresponding operator on the tensor
//! square, so each property reduces to a containment of that kernel in
//! the span of the structured pairs:
//!
//! * zero-product determined: `ker(mu1)` inside the one-sided span,
//! * zero-Lie-product determined: `ker(kappa)` inside the commuting
//!   span,
//! * two-sided zero-product determined: `ker(mu)` inside the zero-pair
//!   span.
//!
//! A failed containment over a prime field yields a witness pair: a
//! tensor `t` in the kernel outside the span, and a functional that
//! vanishes on the whole span yet takes value 1 on `t`. Both halves are
//! re-verified before the outcome is returned. Sampled (monte-carlo)
//! spans under-approximate, so a missed containment downgrades to
//! "inconclusive" instead of "fails"; a positive containment is sound
//! in either mode.

use crate::algebra::StructureAlgebra;
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::linalg::{vec_add, vec_dot, vec_is_zero, Matrix, Subspace};
use crate::spans::{
    commuting_span, one_sided_span, point_to_coords, zero_pair_span, ProjectivePoints, SpanMode,
    SpanResult, SpanStrategy,
};
use crate::tensor::{kappa, mu, mu1, mu2, simple_tensor, BilinearForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    ZeroProductDetermined,
    ZeroLieProductDetermined,
    TwoSidedZeroProductDetermined,
}

impl Property {
    pub fn name(&self) -> &'static str {
        match self {
            Property::ZeroProductDetermined => "zpd",
            Property::ZeroLieProductDetermined => "zlpd",
            Property::TwoSidedZeroProductDetermined => "2zpd",
        }
    }
}

/// A counterexample to a containment: a tensor in the operator kernel
/// outside the span, plus a functional separating it from the span.
/// The functional vanishes on every structured pair yet cannot factor
/// through the operator, because it takes value 1 on `tensor` while the
/// operator kills it.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness<S> {
    pub tensor: Vec<S>,
    pub functional: BilinearForm<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Certificate<S> {
    /// Every kernel basis vector lies in the span of structured pairs.
    KernelInsideSpan { kernel_dim: usize, span_dim: usize },
    /// Dual route: every functional vanishing on the span is a row-space
    /// combination of the operator, i.e. factors through it.
    AnnihilatorInsideRowSpace { annihilator_dim: usize, operator_rank: usize },
    /// Verified counterexample.
    Escape(Witness<S>),
    /// The sampled span missed the kernel; nothing is certified.
    SampledGap { kernel_dim: usize, span_dim: usize },
}

#[derive(Clone, Debug)]
pub struct PropertyOutcome<S> {
    pub property: Property,
    pub dual_route: bool,
    pub verdict: Verdict,
    pub exact: bool,
    pub points: u64,
    pub certificate: Certificate<S>,
}

/// Is every bilinear functional vanishing on `xy = 0` pairs of the form
/// `tau(xy)`?
pub fn is_zpd<S: Scalar>(
    a: &StructureAlgebra<S>,
    strategy: &SpanStrategy,
) -> Result<PropertyOutcome<S>> {
    let span = one_sided_span(a, strategy)?;
    Ok(primal_outcome(a, Property::ZeroProductDetermined, &mu1(a), span))
}

/// Is every bilinear functional vanishing on commuting pairs of the
/// form `tau(xy - yx)`?
pub fn is_zlpd<S: Scalar>(
    a: &StructureAlgebra<S>,
    strategy: &SpanStrategy,
) -> Result<PropertyOutcome<S>> {
    let span = commuting_span(a, strategy)?;
    Ok(primal_outcome(a, Property::ZeroLieProductDetermined, &kappa(a), span))
}

/// Is every bilinear functional vanishing on `xy = yx = 0` pairs of the
/// form `tau1(xy) + tau2(yx)`?
pub fn is_2zpd<S: Scalar>(
    a: &StructureAlgebra<S>,
    strategy: &SpanStrategy,
) -> Result<PropertyOutcome<S>> {
    let span = zero_pair_span(a, strategy)?;
    Ok(primal_outcome(a, Property::TwoSidedZeroProductDetermined, &mu(a), span))
}

/// The two-sided decider run through the dual containment: functionals
/// vanishing on the zero-pair span against the row space of the stacked
/// operator. Agrees with [`is_2zpd`] on exact runs.
pub fn is_2zpd_dual<S: Scalar>(
    a: &StructureAlgebra<S>,
    strategy: &SpanStrategy,
) -> Result<PropertyOutcome<S>> {
    let span = zero_pair_span(a, strategy)?;
    let op = mu(a);
    let ann = span.span.annihilator();
    let rows = op.rref();
    let (verdict, certificate) = if ann.leq(&rows) {
        (
            Verdict::Holds,
            Certificate::AnnihilatorInsideRowSpace {
                annihilator_dim: ann.dim(),
                operator_rank: rows.dim(),
            },
        )
    } else if span.exact {
        let flat = (0..ann.dim())
            .map(|i| ann.basis_row(i))
            .find(|r| !rows.contains(r))
            .expect("containment failed, so some annihilator row escapes")
            .to_vec();
        let w = witness_from_functional(a, &op, &span.span, flat);
        (Verdict::Fails, Certificate::Escape(w))
    } else {
        (
            Verdict::Inconclusive,
            Certificate::SampledGap { kernel_dim: op.kernel().dim(), span_dim: span.span.dim() },
        )
    };
    Ok(PropertyOutcome {
        property: Property::TwoSidedZeroProductDetermined,
        dual_route: true,
        verdict,
        exact: span.exact,
        points: span.points,
        certificate,
    })
}

fn primal_outcome<S: Scalar>(
    a: &StructureAlgebra<S>,
    property: Property,
    op: &Matrix<S>,
    span: SpanResult<S>,
) -> PropertyOutcome<S> {
    let kernel = op.kernel();
    let (verdict, certificate) = if kernel.leq(&span.span) {
        (
            Verdict::Holds,
            Certificate::KernelInsideSpan { kernel_dim: kernel.dim(), span_dim: span.span.dim() },
        )
    } else if span.exact {
        let t = (0..kernel.dim())
            .map(|i| kernel.basis_row(i))
            .find(|r| !span.span.contains(r))
            .expect("containment failed, so some kernel row escapes")
            .to_vec();
        let w = witness_from_tensor(a, op, &span.span, t);
        (Verdict::Fails, Certificate::Escape(w))
    } else {
        (
            Verdict::Inconclusive,
            Certificate::SampledGap { kernel_dim: kernel.dim(), span_dim: span.span.dim() },
        )
    };
    PropertyOutcome {
        property,
        dual_route: false,
        verdict,
        exact: span.exact,
        points: span.points,
        certificate,
    }
}

/// Builds and verifies the witness from a kernel tensor outside the
/// span: the functional is the canonical solution of "vanish on the
/// span basis, take value 1 on the tensor".
fn witness_from_tensor<S: Scalar>(
    a: &StructureAlgebra<S>,
    op: &Matrix<S>,
    span: &Subspace<S>,
    t: Vec<S>,
) -> Witness<S> {
    let mut rows = span.basis().row_vecs();
    rows.push(t.clone());
    let count = rows.len();
    let sys = Matrix::from_rows(rows).pad_cols(span.ambient());
    let mut rhs = vec![a.scalar(0); count];
    rhs[count - 1] = a.scalar(1);
    let flat = sys.solve(&rhs).expect("separating functional exists since the tensor escapes");
    let functional = BilinearForm::from_flat(a.dim(), &flat);
    verify_witness(op, span, &t, &functional);
    Witness { tensor: t, functional }
}

/// Builds and verifies the witness from a span-annihilating functional
/// outside the operator row space: the tensor is the canonical solution
/// of "killed by the operator, evaluated to 1 by the functional".
fn witness_from_functional<S: Scalar>(
    a: &StructureAlgebra<S>,
    op: &Matrix<S>,
    span: &Subspace<S>,
    flat: Vec<S>,
) -> Witness<S> {
    let sys = op.stack_vertical(&Matrix::from_rows(vec![flat.clone()]));
    let mut rhs = vec![a.scalar(0); sys.rows()];
    let last = rhs.len() - 1;
    rhs[last] = a.scalar(1);
    let t = sys.solve(&rhs).expect("separating tensor exists since the functional escapes");
    let functional = BilinearForm::from_flat(a.dim(), &flat);
    verify_witness(op, span, &t, &functional);
    Witness { tensor: t, functional }
}

fn verify_witness<S: Scalar>(
    op: &Matrix<S>,
    span: &Subspace<S>,
    t: &[S],
    functional: &BilinearForm<S>,
) {
    assert!(vec_is_zero(&op.mat_vec(t)), "witness tensor must lie in the operator kernel");
    assert!(functional.apply_tensor(t).is_one(), "witness functional must separate the tensor");
    for i in 0..span.dim() {
        assert!(
            functional.apply_tensor(span.basis_row(i)).is_zero(),
            "witness functional must vanish on the span"
        );
    }
}

/// Outcome of the commuting-pair tensor containment: for every
/// commuting pair `(z, w)`, is `z tensor w - zw tensor 1` inside the
/// zero-pair span? Equivalent to the two-sided property.
#[derive(Clone, Debug)]
pub struct CommutingTensorOutcome<S> {
    pub holds: bool,
    /// A commuting pair whose tensor escapes the span, when one exists.
    pub violation: Option<(Vec<S>, Vec<S>)>,
    pub points: u64,
}

/// Checks the commuting-pair containment by exhaustive projective
/// enumeration of `z`; the slice over `w` is linear, so its basis
/// suffices, and both sides are stable under scaling `z`.
pub fn check_teq_iii<S: Scalar>(
    a: &StructureAlgebra<S>,
    strategy: &SpanStrategy,
) -> Result<CommutingTensorOutcome<S>> {
    if strategy.mode == SpanMode::MonteCarlo {
        return Err(Error::ModeUnsupported { op: "check_teq_iii" });
    }
    let span = zero_pair_span(a, strategy)?.span;
    let p = match a.field() {
        FieldDescriptor::Prime(p) => *p,
        FieldDescriptor::Rational => {
            return Err(Error::ExhaustiveUnsupported { field: FieldDescriptor::Rational })
        }
    };
    let n = a.dim();
    let mut points = 0u64;
    for digits in ProjectivePoints::new(p, n) {
        let z = point_to_coords(a, &digits);
        points += 1;
        let slice = a.centralizer_slice(&z);
        for i in 0..slice.dim() {
            let w = slice.basis_row(i);
            let zw = a.multiply(&z, w);
            let t = crate::linalg::vec_sub(&simple_tensor(&z, w), &simple_tensor(&zw, a.unit()));
            if !span.contains(&t) {
                return Ok(CommutingTensorOutcome {
                    holds: false,
                    violation: Some((z, w.to_vec())),
                    points,
                });
            }
        }
    }
    Ok(CommutingTensorOutcome { holds: true, violation: None, points })
}

/// A factorization `phi(x, y) = tau1(xy) + tau2(yx)`, with each linear
/// functional stored through its values on the basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition<S> {
    pub tau1: Vec<S>,
    pub tau2: Vec<S>,
}

impl<S: Scalar> Decomposition<S> {
    /// Value of `tau1(xy) + tau2(yx)` on a coordinate pair.
    pub fn apply(&self, a: &StructureAlgebra<S>, x: &[S], y: &[S]) -> S {
        let xy = a.multiply(x, y);
        let yx = a.multiply(y, x);
        vec_dot(&self.tau1, &xy) + vec_dot(&self.tau2, &yx)
    }
}

/// Factors `phi` through the two product orders when possible. The
/// system is `mu1^T tau1 + mu2^T tau2 = flatten(phi)`, solvable exactly
/// when the flattened functional lies in the row space of the stacked
/// operator.
pub fn decompose_functional<S: Scalar>(
    a: &StructureAlgebra<S>,
    phi: &BilinearForm<S>,
) -> Option<Decomposition<S>> {
    let n = a.dim();
    assert_eq!(phi.dim(), n);
    let m1t = mu1(a).transpose();
    let m2t = mu2(a).transpose();
    let sys = Matrix::from_fn(n * n, 2 * n, |r, c| {
        if c < n {
            m1t[(r, c)].clone()
        } else {
            m2t[(r, c - n)].clone()
        }
    });
    let sol = sys.solve(&phi.flatten())?;
    let dec = Decomposition { tau1: sol[..n].to_vec(), tau2: sol[n..].to_vec() };
    for i in 0..n {
        for j in 0..n {
            let got = dec.apply(a, &a.basis_element(i), &a.basis_element(j));
            assert_eq!(&got, phi.entry(i, j), "decomposition must reproduce the functional");
        }
    }
    Some(dec)
}

/// Checks `phi(xy, zw) + phi(wx, yz) = phi(x, yzw) + phi(wxy, z)` over
/// all basis quadruples. Every functional vanishing on two-sided zero
/// pairs satisfies it.
pub fn check_xyzw_identity<S: Scalar>(a: &StructureAlgebra<S>, phi: &BilinearForm<S>) -> bool {
    let n = a.dim();
    assert_eq!(phi.dim(), n);
    // (e_i e_j) e_k, memoized flat on (i, j, k).
    let mut triple: Vec<Vec<S>> = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let ij = a.product_of_basis(i, j);
            for k in 0..n {
                triple.push(a.multiply(ij, &a.basis_element(k)));
            }
        }
    }
    let triple_at = |i: usize, j: usize, k: usize| -> &Vec<S> { &triple[(i * n + j) * n + k] };
    // phi(e_i e_j, v) as a row functional.
    let phi_left: Vec<Vec<Vec<S>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let p = a.product_of_basis(i, j);
                    (0..n)
                        .map(|m| {
                            let mut acc = S::zero();
                            for (t, pt) in p.iter().enumerate() {
                                if !pt.is_zero() {
                                    acc = acc + pt.clone() * phi.entry(t, m).clone();
                                }
                            }
                            acc
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let row = |i: usize| phi.coeffs().row(i);
    let col = |k: usize| phi.coeffs().col(k);
    #[allow(clippy::needless_range_loop)]
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let lhs = vec_dot(&phi_left[i][j], a.product_of_basis(k, l))
                        + vec_dot(&phi_left[l][i], a.product_of_basis(j, k));
                    let rhs = vec_dot(row(i), triple_at(j, k, l))
                        + vec_dot(triple_at(l, i, j), &col(k));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Checks `phi(x, y) = (1/2) phi(xy + yx, 1)` over all basis pairs.
/// Meaningless in characteristic 2, where halving is unavailable.
pub fn check_symmetric_half<S: Scalar>(
    a: &StructureAlgebra<S>,
    phi: &BilinearForm<S>,
) -> Result<bool> {
    if a.field().characteristic() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    let half = a.scalar(2).try_inverse().expect("2 is invertible away from characteristic 2");
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            let sym = vec_add(a.product_of_basis(i, j), a.product_of_basis(j, i));
            let rhs = half.clone() * phi.apply(&sym, a.unit());
            if phi.entry(i, j) != &rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
