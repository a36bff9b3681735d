//! Spans of structured element pairs inside the tensor square.
//!
//! The deciders compare kernels of the multiplication operators against
//! spans of tensors built from special pairs: two-sided zero products
//! `xy = yx = 0`, one-sided zero products `xy = 0`, and commuting pairs
//! `xy = yx`. Each span is a union over `x` of `x tensor V(x)` for a
//! slice `V(x)` cut out by linear conditions, so the engine enumerates
//! `x`, solves for the slice, and feeds the resulting tensors into an
//! incremental accumulator.
//!
//! Two further spans live in the algebra itself: the span of square-zero
//! elements, and the span of products `x m` over pairs with `x m x = 0`
//! for `m` in a designated subspace.
//!
//! Over a prime field the enumeration is exhaustive on projective
//! points (every slice is scalar stable), guarded by a point cap. Over
//! the rationals only seeded random sampling is available; it reports an
//! under-approximation that stops growing, never a certified span.

use crate::algebra::StructureAlgebra;
use crate::error::{Error, Result};
use crate::f2::{self, BitAccum, BitMatrix};
use crate::field::{FieldDescriptor, Scalar};
use crate::linalg::{vec_is_zero, RowAccum, Subspace};
use crate::tensor::{self, simple_tensor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpanMode {
    Exhaustive,
    MonteCarlo,
}

/// How a span is computed: the mode plus its guard rails. The cap
/// bounds `p^dim` for exhaustive runs; the window, coordinate range and
/// seed steer monte-carlo sampling.
#[derive(Clone, Copy, Debug)]
pub struct SpanStrategy {
    pub mode: SpanMode,
    pub enumeration_cap: u64,
    pub sample_window: u32,
    pub sample_range: i64,
    pub seed: u64,
}

impl SpanStrategy {
    pub fn exhaustive() -> Self {
        SpanStrategy {
            mode: SpanMode::Exhaustive,
            enumeration_cap: 1 << 20,
            sample_window: 20,
            sample_range: 3,
            seed: 0,
        }
    }

    pub fn monte_carlo(seed: u64) -> Self {
        SpanStrategy {
            mode: SpanMode::MonteCarlo,
            seed,
            ..SpanStrategy::exhaustive()
        }
    }
}

impl Default for SpanStrategy {
    fn default() -> Self {
        SpanStrategy::exhaustive()
    }
}

/// A computed span. `exact` is true only for completed exhaustive
/// enumerations; a monte-carlo span is a lower bound that stopped
/// growing. `points` counts the enumerated (or sampled) elements.
#[derive(Clone, Debug)]
pub struct SpanResult<S> {
    pub span: Subspace<S>,
    pub exact: bool,
    pub points: u64,
}

enum SliceOp<'m, S> {
    ZeroPair,
    OneSided,
    Commuting,
    SquareZero,
    Theta(&'m Subspace<S>),
}

impl<S: Scalar> SliceOp<'_, S> {
    fn ambient(&self, n: usize) -> usize {
        match self {
            SliceOp::ZeroPair | SliceOp::OneSided | SliceOp::Commuting => n * n,
            SliceOp::SquareZero | SliceOp::Theta(_) => n,
        }
    }
}

/// Span of `x tensor y` over all pairs with `xy = yx = 0`.
pub fn zero_pair_span<S: Scalar>(
    a: &StructureAlgebra<S>,
    strategy: &SpanStrategy,
) -> Result<SpanResult<S>> {
    let r = run(a, &SliceOp::ZeroPair, strategy)?;
    debug_assert!(r.span.leq(&tensor::mu(a).kernel()));
    Ok(r)
}

/// Span of `x tensor y` over all pairs with `xy = 0`.
pub fn one_sided_span<S: Scalar>(
    a: &StructureAlgebra<S>,
    strategy: &SpanStrategy,
) -> Result<SpanResult<S>> {
    let r = run(a, &SliceOp::OneSided, strategy)?;
    debug_assert!(r.span.leq(&tensor::mu1(a).kernel()));
    Ok(r)
}

/// Span of `x tensor y` over all pairs with `xy = yx`.
pub fn commuting_span<S: Scalar>(
    a: &StructureAlgebra<S>,
    strategy: &SpanStrategy,
) -> Result<SpanResult<S>> {
    let r = run(a, &SliceOp::Commuting, strategy)?;
    debug_assert!(r.span.leq(&tensor::kappa(a).kernel()));
    Ok(r)
}

/// Span of the square-zero elements. Exhaustive only: membership of a
/// single sampled point never certifies anything here.
pub fn square_zero_span<S: Scalar>(
    a: &StructureAlgebra<S>,
    strategy: &SpanStrategy,
) -> Result<SpanResult<S>> {
    run(a, &SliceOp::SquareZero, strategy)
}

/// Span of the products `x m` over pairs `x` in the algebra, `m` in the
/// given subspace, with `x m x = 0`.
pub fn theta_span<S: Scalar>(
    a: &StructureAlgebra<S>,
    module: &Subspace<S>,
    strategy: &SpanStrategy,
) -> Result<SpanResult<S>> {
    if module.ambient() != a.dim() {
        return Err(Error::AmbientMismatch { left: module.ambient(), right: a.dim() });
    }
    run(a, &SliceOp::Theta(module), strategy)
}

fn run<S: Scalar>(
    a: &StructureAlgebra<S>,
    op: &SliceOp<S>,
    strategy: &SpanStrategy,
) -> Result<SpanResult<S>> {
    match strategy.mode {
        SpanMode::Exhaustive => exhaustive(a, op, strategy),
        SpanMode::MonteCarlo => monte_carlo(a, op, strategy),
    }
}

fn exhaustive<S: Scalar>(
    a: &StructureAlgebra<S>,
    op: &SliceOp<S>,
    strategy: &SpanStrategy,
) -> Result<SpanResult<S>> {
    let field = *a.field();
    let p = match field {
        FieldDescriptor::Prime(p) => p,
        FieldDescriptor::Rational => return Err(Error::ExhaustiveUnsupported { field }),
    };
    let required = (p as u128).checked_pow(a.dim() as u32).unwrap_or(u128::MAX);
    if required > strategy.enumeration_cap as u128 {
        return Err(Error::CapExceeded {
            required: required.min(u64::MAX as u128) as u64,
            cap: strategy.enumeration_cap,
        });
    }
    if p == 2 {
        if let Some(ctx) = PackedCtx::build(a, op) {
            return Ok(exhaustive_packed(op, &ctx));
        }
    }
    Ok(exhaustive_generic(a, op, p))
}

/// Walks the projective points of `F_p^n` as residue vectors: the first
/// nonzero coordinate is pinned to 1, later coordinates run through all
/// residues. Every slice in this module is stable under scaling, so one
/// representative per line suffices.
pub(crate) struct ProjectivePoints {
    p: u64,
    n: usize,
    lead: usize,
    digits: Vec<u64>,
}

impl ProjectivePoints {
    pub(crate) fn new(p: u64, n: usize) -> Self {
        ProjectivePoints { p, n, lead: 0, digits: vec![0; n.saturating_sub(1)] }
    }
}

impl Iterator for ProjectivePoints {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.lead >= self.n {
            return None;
        }
        let tail = self.n - self.lead - 1;
        let mut x = vec![0u64; self.n];
        x[self.lead] = 1;
        x[self.lead + 1..].copy_from_slice(&self.digits[..tail]);
        let mut wrapped = true;
        for d in self.digits[..tail].iter_mut() {
            *d += 1;
            if *d == self.p {
                *d = 0;
            } else {
                wrapped = false;
                break;
            }
        }
        if wrapped {
            self.lead += 1;
        }
        Some(x)
    }
}

pub(crate) fn point_to_coords<S: Scalar>(a: &StructureAlgebra<S>, digits: &[u64]) -> Vec<S> {
    digits.iter().map(|&d| a.scalar(d as i64)).collect()
}

fn exhaustive_generic<S: Scalar>(
    a: &StructureAlgebra<S>,
    op: &SliceOp<S>,
    p: u64,
) -> SpanResult<S> {
    let n = a.dim();
    let ambient = op.ambient(n);
    let mut acc = RowAccum::new(ambient);
    let mut points = 0u64;
    for digits in ProjectivePoints::new(p, n) {
        let x = point_to_coords(a, &digits);
        points += 1;
        accumulate_generic(a, op, &x, &mut acc);
        if acc.dim() == ambient {
            break;
        }
    }
    SpanResult { span: acc.into_subspace(), exact: true, points }
}

fn accumulate_generic<S: Scalar>(
    a: &StructureAlgebra<S>,
    op: &SliceOp<S>,
    x: &[S],
    acc: &mut RowAccum<S>,
) {
    match op {
        SliceOp::ZeroPair => {
            let slice = a.left_mult(x).stack_vertical(&a.right_mult(x)).kernel();
            for i in 0..slice.dim() {
                acc.insert(simple_tensor(x, slice.basis_row(i)));
            }
        }
        SliceOp::OneSided => {
            let slice = a.left_mult(x).kernel();
            for i in 0..slice.dim() {
                acc.insert(simple_tensor(x, slice.basis_row(i)));
            }
        }
        SliceOp::Commuting => {
            let slice = a.left_mult(x).sub(&a.right_mult(x)).kernel();
            for i in 0..slice.dim() {
                acc.insert(simple_tensor(x, slice.basis_row(i)));
            }
        }
        SliceOp::SquareZero => {
            if vec_is_zero(&a.multiply(x, x)) {
                acc.insert(x.to_vec());
            }
        }
        SliceOp::Theta(module) => {
            // m in the module with x m x = 0, in module coordinates.
            let sandwich = a.left_mult(x).matmul(&a.right_mult(x));
            let basis_t = module.basis().transpose();
            let slice = sandwich.matmul(&basis_t).kernel();
            for i in 0..slice.dim() {
                let m = basis_t.mat_vec(slice.basis_row(i));
                acc.insert(a.multiply(x, &m));
            }
        }
    }
}

fn monte_carlo<S: Scalar>(
    a: &StructureAlgebra<S>,
    op: &SliceOp<S>,
    strategy: &SpanStrategy,
) -> Result<SpanResult<S>> {
    if matches!(op, SliceOp::SquareZero) {
        return Err(Error::ModeUnsupported { op: "square_zero_span" });
    }
    let n = a.dim();
    let ambient = op.ambient(n);
    let field = *a.field();
    let mut rng = ChaCha8Rng::seed_from_u64(strategy.seed);
    let round = (n * n).max(16);
    let mut acc = RowAccum::new(ambient);
    let mut points = 0u64;
    let mut quiet_rounds = 0u32;
    while quiet_rounds < strategy.sample_window && acc.dim() < ambient {
        let before = acc.dim();
        for _ in 0..round {
            let x: Vec<S> = (0..n)
                .map(|_| sample_scalar(&mut rng, &field, strategy.sample_range))
                .collect();
            points += 1;
            if vec_is_zero(&x) {
                continue;
            }
            accumulate_generic(a, op, &x, &mut acc);
        }
        if acc.dim() == before {
            quiet_rounds += 1;
        } else {
            quiet_rounds = 0;
        }
    }
    Ok(SpanResult { span: acc.into_subspace(), exact: false, points })
}

fn sample_scalar<S: Scalar>(
    rng: &mut ChaCha8Rng,
    field: &FieldDescriptor,
    range: i64,
) -> S {
    match field {
        FieldDescriptor::Prime(p) => S::from_integer(field, rng.gen_range(0..*p) as i64),
        FieldDescriptor::Rational => S::from_integer(field, rng.gen_range(-range..=range)),
    }
}

/// Bit-packed tables for the gf(2) fast path.
struct PackedCtx {
    n: usize,
    left: Vec<BitMatrix>,
    right: Vec<BitMatrix>,
    module: Option<BitMatrix>,
}

impl PackedCtx {
    fn build<S: Scalar>(a: &StructureAlgebra<S>, op: &SliceOp<S>) -> Option<PackedCtx> {
        let n = a.dim();
        if n > 63 {
            return None;
        }
        let mut left = Vec::with_capacity(n);
        let mut right = Vec::with_capacity(n);
        for i in 0..n {
            let mut l = BitMatrix::zeros(n, n);
            let mut r = BitMatrix::zeros(n, n);
            for j in 0..n {
                for k in 0..n {
                    l.set(k, j, a.product_of_basis(i, j)[k].as_gf2_bit()?);
                    r.set(k, j, a.product_of_basis(j, i)[k].as_gf2_bit()?);
                }
            }
            left.push(l);
            right.push(r);
        }
        let module = match op {
            SliceOp::Theta(m) => {
                let mut bm = BitMatrix::zeros(m.dim(), n);
                for r in 0..m.dim() {
                    for c in 0..n {
                        bm.set(r, c, m.basis_row(r)[c].as_gf2_bit()?);
                    }
                }
                Some(bm)
            }
            _ => None,
        };
        Some(PackedCtx { n, left, right, module })
    }

    fn operator(&self, tables: &[BitMatrix], mask: u64) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.n, self.n);
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            out.xor_assign(&tables[i]);
        }
        out
    }
}

/// Nonzero vectors of `gf(2)^n` are exactly its projective points, so
/// the packed engine walks bit masks `1..2^n`, splitting the range into
/// chunks that accumulate independently and merge. The final reduced
/// form does not depend on the split.
fn exhaustive_packed<S: Scalar>(op: &SliceOp<S>, ctx: &PackedCtx) -> SpanResult<S> {
    let n = ctx.n;
    let ambient = op.ambient(n);
    let total = (1u64 << n) - 1;
    let acc = run_in_pool(|| {
        let chunk_count = (rayon::current_num_threads() as u64 * 8).max(1);
        let chunk = (total / chunk_count).max(1024);
        let ranges: Vec<(u64, u64)> = (0..)
            .map(|c| (1 + c * chunk, (1 + (c + 1) * chunk).min(total + 1)))
            .take_while(|(lo, _)| *lo <= total)
            .collect();
        ranges
            .into_par_iter()
            .map(|(lo, hi)| {
                let mut acc = BitAccum::new(ambient);
                for mask in lo..hi {
                    accumulate_packed(op, ctx, mask, &mut acc);
                }
                acc
            })
            .reduce(|| BitAccum::new(ambient), BitAccum::merge)
    });
    let pivots = acc.pivots().to_vec();
    let span = Subspace::from_bits(acc.into_matrix(), pivots);
    SpanResult { span, exact: true, points: total }
}

fn accumulate_packed<S: Scalar>(op: &SliceOp<S>, ctx: &PackedCtx, mask: u64, acc: &mut BitAccum) {
    let n = ctx.n;
    match op {
        SliceOp::ZeroPair => {
            let l = ctx.operator(&ctx.left, mask);
            let r = ctx.operator(&ctx.right, mask);
            let ker = l.stack(&r).kernel();
            for v in ker.iter_rows() {
                insert_tensor_bits(acc, mask, v, n);
            }
        }
        SliceOp::OneSided => {
            let ker = ctx.operator(&ctx.left, mask).kernel();
            for v in ker.iter_rows() {
                insert_tensor_bits(acc, mask, v, n);
            }
        }
        SliceOp::Commuting => {
            let mut d = ctx.operator(&ctx.left, mask);
            d.xor_assign(&ctx.operator(&ctx.right, mask));
            let ker = d.kernel();
            for v in ker.iter_rows() {
                insert_tensor_bits(acc, mask, v, n);
            }
        }
        SliceOp::SquareZero => {
            let l = ctx.operator(&ctx.left, mask);
            let x = vec![mask];
            if f2::is_zero_row(&l.mat_vec(&x)) {
                acc.insert(&x);
            }
        }
        SliceOp::Theta(_) => {
            let module = ctx.module.as_ref().expect("theta context carries the module");
            let d = module.rows();
            let l = ctx.operator(&ctx.left, mask);
            let sandwich = l.matmul(&ctx.operator(&ctx.right, mask));
            // Columns of the slice system are sandwich * (module basis row).
            let mut sys = BitMatrix::zeros(n, d);
            for c in 0..d {
                let col = sandwich.mat_vec(module.row(c));
                for r in 0..n {
                    sys.set(r, c, f2::bit_get(&col, r));
                }
            }
            for coeffs in sys.kernel().iter_rows() {
                let mut m = vec![0u64; module.words()];
                for c in 0..d {
                    if f2::bit_get(coeffs, c) {
                        f2::xor_into(&mut m, module.row(c));
                    }
                }
                acc.insert(&l.mat_vec(&m));
            }
        }
    }
}

/// Writes `x tensor v` (both packed in single words) into the
/// accumulator, with `e_i tensor e_j` at bit `i*n + j`.
fn insert_tensor_bits(acc: &mut BitAccum, mask: u64, v: &[u64], n: usize) {
    let mut out = vec![0u64; f2::words_for(n * n)];
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        for j in 0..n {
            if f2::bit_get(v, j) {
                f2::bit_set(&mut out, i * n + j, true);
            }
        }
    }
    acc.insert(&out);
}

fn run_in_pool<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    match std::env::var("ZPD_WORKERS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        Some(k) if k >= 1 => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .expect("worker pool construction")
            .install(f),
        _ => f(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::linalg::Matrix;

    const GF2: FieldDescriptor = FieldDescriptor::Prime(2);
    const GF3: FieldDescriptor = FieldDescriptor::Prime(3);

    fn coords(field: &FieldDescriptor, v: &[i64]) -> Vec<Fp> {
        v.iter().map(|&x| Fp::from_integer(field, x)).collect()
    }

    #[test]
    fn row_accum_matches_batch_rref() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for _ in 0..100 {
            let rows = rng.gen_range(1..6);
            let cols = rng.gen_range(1..6);
            let m = Matrix::from_fn(rows, cols, |_, _| {
                Fp::from_integer(&GF3, rng.gen_range(0..3))
            });
            let mut acc = RowAccum::new(cols);
            for r in 0..rows {
                acc.insert(m.row(r).to_vec());
            }
            assert_eq!(acc.into_subspace(), m.rref());
        }
    }

    #[test]
    fn dual_numbers_spans() {
        let a = StructureAlgebra::<Fp>::truncated_polynomial(2, &GF2).unwrap();
        let st = SpanStrategy::exhaustive();
        let zp = zero_pair_span(&a, &st).unwrap();
        assert!(zp.exact);
        assert_eq!(zp.points, 3);
        assert_eq!(zp.span.dim(), 1);
        // u tensor u sits at index 1*2 + 1.
        assert!(zp.span.contains(&coords(&GF2, &[0, 0, 0, 1])));

        assert_eq!(one_sided_span(&a, &st).unwrap().span.dim(), 1);
        // Commutative, so commuting pairs span everything.
        assert_eq!(commuting_span(&a, &st).unwrap().span.dim(), 4);

        let sq = square_zero_span(&a, &st).unwrap();
        assert_eq!(sq.span.dim(), 1);
        assert!(sq.span.contains(&coords(&GF2, &[0, 1])));
    }

    #[test]
    fn matrix_algebra_spans_match_kernels() {
        let a = StructureAlgebra::<Fp>::matrix_algebra(2, &GF2).unwrap();
        let st = SpanStrategy::exhaustive();
        assert_eq!(zero_pair_span(&a, &st).unwrap().span, tensor::mu(&a).kernel());
        assert_eq!(one_sided_span(&a, &st).unwrap().span, tensor::mu1(&a).kernel());
        assert_eq!(commuting_span(&a, &st).unwrap().span, tensor::kappa(&a).kernel());
        let sq = square_zero_span(&a, &st).unwrap().span;
        assert_eq!(sq, a.commutator_subspace());

        let b = StructureAlgebra::<Fp>::matrix_algebra(2, &GF3).unwrap();
        assert_eq!(zero_pair_span(&b, &st).unwrap().span, tensor::mu(&b).kernel());
        assert_eq!(square_zero_span(&b, &st).unwrap().span.dim(), 3);
    }

    #[test]
    fn packed_engine_agrees_with_generic() {
        let m1 = StructureAlgebra::<Fp>::matrix_algebra(1, &GF2).unwrap();
        let algebras = vec![
            StructureAlgebra::<Fp>::matrix_algebra(2, &GF2).unwrap(),
            StructureAlgebra::<Fp>::truncated_polynomial(3, &GF2).unwrap(),
            StructureAlgebra::<Fp>::upper_triangular(2, &GF2).unwrap(),
            StructureAlgebra::direct_product(&m1, &m1).unwrap(),
        ];
        let st = SpanStrategy::exhaustive();
        for a in &algebras {
            for op in [SliceOp::ZeroPair, SliceOp::OneSided, SliceOp::Commuting, SliceOp::SquareZero] {
                let packed = exhaustive(a, &op, &st).unwrap();
                let generic = exhaustive_generic(a, &op, 2);
                assert_eq!(packed.span, generic.span, "{} mismatch", a.label());
            }
        }
    }

    #[test]
    fn theta_span_of_the_radical_module() {
        // M_2 over the dual numbers; the module is A * u, spanned by the
        // basis vectors with a u component.
        let t2 = StructureAlgebra::<Fp>::truncated_polynomial(2, &GF2).unwrap();
        let a = StructureAlgebra::matrix_over(2, &t2).unwrap();
        let module = Subspace::from_rows(
            8,
            vec![
                coords(&GF2, &[0, 1, 0, 0, 0, 0, 0, 0]),
                coords(&GF2, &[0, 0, 0, 1, 0, 0, 0, 0]),
                coords(&GF2, &[0, 0, 0, 0, 0, 1, 0, 0]),
                coords(&GF2, &[0, 0, 0, 0, 0, 0, 0, 1]),
            ],
        );
        let st = SpanStrategy::exhaustive();
        let theta = theta_span(&a, &module, &st).unwrap();
        assert_eq!(theta.points, 255);
        assert_eq!(theta.span.dim(), 3);
        // E01 u, E10 u and (E00 + E11) u are hit, E00 u is not.
        assert!(theta.span.contains(&coords(&GF2, &[0, 0, 0, 1, 0, 0, 0, 0])));
        assert!(theta.span.contains(&coords(&GF2, &[0, 0, 0, 0, 0, 1, 0, 0])));
        assert!(theta.span.contains(&coords(&GF2, &[0, 1, 0, 0, 0, 0, 0, 1])));
        assert!(!theta.span.contains(&coords(&GF2, &[0, 1, 0, 0, 0, 0, 0, 0])));

        // The packed and generic routes agree here too.
        let generic = exhaustive_generic(&a, &SliceOp::Theta(&module), 2);
        assert_eq!(theta.span, generic.span);
    }

    #[test]
    fn monte_carlo_reaches_the_exhaustive_span() {
        let a = StructureAlgebra::<Fp>::matrix_algebra(2, &GF3).unwrap();
        let exhaustive_run = zero_pair_span(&a, &SpanStrategy::exhaustive()).unwrap();
        let mc = zero_pair_span(&a, &SpanStrategy::monte_carlo(0)).unwrap();
        assert!(!mc.exact);
        assert!(mc.span.leq(&exhaustive_run.span));
        assert_eq!(mc.span, exhaustive_run.span);
    }

    #[test]
    fn monte_carlo_over_the_rationals() {
        use crate::Rat;
        let a = StructureAlgebra::<Rat>::matrix_algebra(2, &FieldDescriptor::Rational).unwrap();
        let mc = zero_pair_span(&a, &SpanStrategy::monte_carlo(0)).unwrap();
        assert!(!mc.exact);
        assert_eq!(mc.span.dim(), 9);
        assert_eq!(mc.span, tensor::mu(&a).kernel());
    }

    #[test]
    fn strategy_errors() {
        use crate::Rat;
        let a = StructureAlgebra::<Rat>::matrix_algebra(2, &FieldDescriptor::Rational).unwrap();
        assert!(matches!(
            zero_pair_span(&a, &SpanStrategy::exhaustive()),
            Err(Error::ExhaustiveUnsupported { .. })
        ));

        let b = StructureAlgebra::<Fp>::matrix_algebra(2, &GF2).unwrap();
        assert!(matches!(
            square_zero_span(&b, &SpanStrategy::monte_carlo(1)),
            Err(Error::ModeUnsupported { .. })
        ));

        let big = FieldDescriptor::Prime(1048573);
        let c = StructureAlgebra::<Fp>::truncated_polynomial(2, &big).unwrap();
        match zero_pair_span(&c, &SpanStrategy::exhaustive()) {
            Err(Error::CapExceeded { required, cap }) => {
                assert_eq!(required, 1048573u64 * 1048573);
                assert_eq!(cap, 1 << 20);
            }
            other => panic!("expected a cap error, got {other:?}"),
        }

        let wrong_ambient = Subspace::<Fp>::zero(3);
        assert!(matches!(
            theta_span(&b, &wrong_ambient, &SpanStrategy::exhaustive()),
            Err(Error::AmbientMismatch { .. })
        ));
    }
}
