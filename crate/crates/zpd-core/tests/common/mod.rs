#![allow(dead_code)]

use zpd_core::algebra::StructureAlgebra;
use zpd_core::{FieldDescriptor, Fp, Scalar};

pub const GF2: FieldDescriptor = FieldDescriptor::Prime(2);
pub const GF3: FieldDescriptor = FieldDescriptor::Prime(3);

pub fn fp(field: &FieldDescriptor, v: i64) -> Fp {
    Fp::from_integer(field, v)
}

pub fn coords(field: &FieldDescriptor, v: &[i64]) -> Vec<Fp> {
    v.iter().map(|&x| fp(field, x)).collect()
}

pub fn mat(k: usize, field: &FieldDescriptor) -> StructureAlgebra<Fp> {
    StructureAlgebra::matrix_algebra(k, field).unwrap()
}

pub fn tri(k: usize, field: &FieldDescriptor) -> StructureAlgebra<Fp> {
    StructureAlgebra::upper_triangular(k, field).unwrap()
}

pub fn trunc(k: usize, field: &FieldDescriptor) -> StructureAlgebra<Fp> {
    StructureAlgebra::truncated_polynomial(k, field).unwrap()
}

/// The split algebra F x F x F over gf(2), product of three copies of
/// the base field. Generated by idempotents.
pub fn boolean_cube() -> StructureAlgebra<Fp> {
    let f = mat(1, &GF2);
    StructureAlgebra::direct_product(&StructureAlgebra::direct_product(&f, &f).unwrap(), &f)
        .unwrap()
}

/// The field with four elements as a 2-dimensional algebra over gf(2):
/// basis {1, w} with w^2 = w + 1. A division algebra, so the only zero
/// pair is trivial.
pub fn gf4_over_gf2() -> StructureAlgebra<Fp> {
    let t = |v: &[i64]| coords(&GF2, v);
    StructureAlgebra::from_table(
        GF2,
        vec![
            vec![t(&[1, 0]), t(&[0, 1])],
            vec![t(&[0, 1]), t(&[1, 1])],
        ],
        t(&[1, 0]),
        "gf4",
    )
    .unwrap()
}

/// The 2x2 matrices over the dual numbers, dimension 8. Not two-sided
/// determined although both one-sided properties hold.
pub fn flagship() -> StructureAlgebra<Fp> {
    StructureAlgebra::matrix_over(2, &trunc(2, &GF2)).unwrap()
}

/// Dimension-16 companion of the flagship: 2x2 matrices over a length-4
/// truncation, exercising the full 2^16-point enumeration.
pub fn flagship_16() -> StructureAlgebra<Fp> {
    StructureAlgebra::matrix_over(2, &trunc(4, &GF2)).unwrap()
}

/// Algebras small enough for exhaustive span enumeration, covering the
/// separable, triangular, local, split, division and graded cases.
pub fn exhaustive_suite() -> Vec<StructureAlgebra<Fp>> {
    vec![
        mat(1, &GF2),
        mat(2, &GF2),
        mat(3, &GF2),
        mat(1, &GF3),
        mat(2, &GF3),
        tri(2, &GF2),
        tri(3, &GF2),
        tri(2, &GF3),
        trunc(2, &GF2),
        trunc(3, &GF2),
        trunc(2, &GF3),
        boolean_cube(),
        gf4_over_gf2(),
        StructureAlgebra::direct_product(&mat(2, &GF2), &trunc(2, &GF2)).unwrap(),
        flagship(),
    ]
}
