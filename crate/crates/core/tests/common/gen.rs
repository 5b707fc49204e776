//! Proptest strategies for polynomials, derivations and matrices.

use fibrewise::derivations::{DerivationComplex, FullComplex};
use fibrewise::{Algebra, Derivation, Polynomial, Rational, RelativeModel};
use proptest::prelude::*;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

/// A random homogeneous element of degree `degree`.
pub fn homogeneous(algebra: &Algebra, degree: u32) -> impl Strategy<Value = Polynomial> {
    let basis = algebra.monomial_basis(degree);
    proptest::collection::vec(small_rational(), basis.len()).prop_map(move |coeffs| {
        let mut p = Polynomial::zero();
        for (m, c) in basis.iter().zip(coeffs) {
            p.add_term(m.clone(), c);
        }
        p
    })
}

/// `(degree, element)` with degree in `0..=max_degree`.
pub fn element(algebra: Algebra, max_degree: u32) -> impl Strategy<Value = (u32, Polynomial)> {
    (0..=max_degree).prop_flat_map(move |d| (Just(d), homogeneous(&algebra, d)))
}

/// A random derivation of degree `n` in the full complex.
pub fn derivation_of_degree(model: &RelativeModel, n: i32) -> impl Strategy<Value = Derivation> {
    let space = FullComplex::new(model).space(n);
    proptest::collection::vec(small_rational(), space.dim())
        .prop_map(move |coeffs| space.combination(&coeffs))
}

/// A random derivation with degree in `lo..=hi`.
pub fn derivation(model: RelativeModel, lo: i32, hi: i32) -> impl Strategy<Value = Derivation> {
    (lo..=hi).prop_flat_map(move |n| derivation_of_degree(&model, n))
}

/// A dense matrix as rows.
pub fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        proptest::collection::vec(
            proptest::collection::vec(
                prop_oneof![3 => Just(Rational::from_integer(0.into())), 2 => small_rational()],
                c,
            ),
            r,
        )
    })
}
