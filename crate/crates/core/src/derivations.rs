//! Derivations vanishing on the base, `Der_{∧V}(∧V⊗∧W)`, and φ-derivations
//! along a DG morphism.
//!
//! A derivation of degree `n` lowers degrees by `n` and is stored by its
//! values on the fibre generators. Both plain and φ-derivations follow the
//! Leibniz rule `θ(ab) = θ(a)φ(b) + (−1)^{n|a|} φ(a)θ(b)` (φ the identity in
//! the plain case). The differential is `𝒟θ = D∘θ − (−1)^n θ∘D` and the
//! bracket is the graded commutator.

use std::collections::HashMap;

use num_traits::Zero;

use crate::algebra::{Algebra, Generator, Monomial, Polynomial, Rational};
use crate::error::{Error, Result};
use crate::leibniz::DerivationAction;
use crate::linalg::Vector;
use crate::sullivan::{DGMorphism, RelativeModel};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Derivation {
    degree: i32,
    values: Vec<Polynomial>,
}

impl Derivation {
    /// Unchecked constructor: `values[k]` is the value on the `k`-th fibre
    /// generator.
    pub fn new(degree: i32, values: Vec<Polynomial>) -> Self {
        Derivation { degree, values }
    }

    pub fn zero(degree: i32, fibre_len: usize) -> Self {
        Derivation {
            degree,
            values: vec![Polynomial::zero(); fibre_len],
        }
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn is_odd(&self) -> bool {
        self.degree.rem_euclid(2) == 1
    }

    pub fn values(&self) -> &[Polynomial] {
        &self.values
    }

    pub fn value(&self, pos: usize) -> &Polynomial {
        &self.values[pos]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Polynomial::is_zero)
    }

    pub fn scaled(&self, c: &Rational) -> Derivation {
        Derivation {
            degree: self.degree,
            values: self.values.iter().map(|p| p.scaled(c)).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &Derivation, c: &Rational) {
        debug_assert_eq!(self.values.len(), other.values.len());
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            a.add_scaled(b, c);
        }
    }

    /// Values on every generator of the source total algebra, zero on the base.
    fn full_values(&self, base_len: usize) -> Vec<Polynomial> {
        let mut full = vec![Polynomial::zero(); base_len];
        full.extend(self.values.iter().cloned());
        full
    }

    /// Checks that each value has degree `|w| − n` in `values_in`.
    pub fn check_degrees(&self, fibre: &[Generator], values_in: &Algebra) -> Result<()> {
        if self.values.len() != fibre.len() {
            return Err(Error::Shape(format!(
                "derivation has {} values for {} fibre generators",
                self.values.len(),
                fibre.len()
            )));
        }
        for (w, value) in fibre.iter().zip(&self.values) {
            values_in.check(value)?;
            let want = w.degree as i64 - self.degree as i64;
            if value
                .terms()
                .any(|(m, _)| values_in.monomial_degree(m) as i64 != want)
            {
                return Err(Error::Shape(format!(
                    "value on {} must have degree {want}",
                    w.name
                )));
            }
        }
        Ok(())
    }
}

impl std::ops::Add<&Derivation> for &Derivation {
    type Output = Derivation;
    fn add(self, rhs: &Derivation) -> Derivation {
        let mut out = self.clone();
        out.add_scaled(rhs, &num_traits::One::one());
        out
    }
}

impl std::ops::Sub<&Derivation> for &Derivation {
    type Output = Derivation;
    fn sub(self, rhs: &Derivation) -> Derivation {
        let mut out = self.clone();
        out.add_scaled(rhs, &-<Rational as num_traits::One>::one());
        out
    }
}

impl std::ops::Neg for &Derivation {
    type Output = Derivation;
    fn neg(self) -> Derivation {
        Derivation {
            degree: self.degree,
            values: self.values.iter().map(|p| -p).collect(),
        }
    }
}

fn sign(negative: bool) -> Rational {
    if negative {
        -<Rational as num_traits::One>::one()
    } else {
        num_traits::One::one()
    }
}

/// Applies `θ ∈ Der_{∧V}` to an element of the total algebra.
pub fn apply(model: &RelativeModel, theta: &Derivation, p: &Polynomial) -> Polynomial {
    let full = theta.full_values(model.base_len());
    DerivationAction::new(model.total(), &full, theta.is_odd()).apply(p)
}

/// Checked form of [`apply`].
pub fn try_apply(model: &RelativeModel, theta: &Derivation, p: &Polynomial) -> Result<Polynomial> {
    model.total().check(p)?;
    theta.check_degrees(fibre_generators(model), model.total())?;
    Ok(apply(model, theta, p))
}

pub fn fibre_generators(model: &RelativeModel) -> &[Generator] {
    &model.total().generators()[model.base_len()..]
}

/// `𝒟θ = [D, θ]`, of degree `n − 1`.
pub fn differential(model: &RelativeModel, theta: &Derivation) -> Derivation {
    let full = theta.full_values(model.base_len());
    let mut action = DerivationAction::new(model.total(), &full, theta.is_odd());
    let flip = sign(!theta.is_odd());
    let values = (0..model.fibre_len())
        .map(|pos| {
            let mut out = model.d(theta.value(pos));
            let inner = action.apply(model.differential_of(model.fibre_index(pos)));
            // −(−1)^n
            out.add_scaled(&inner, &flip);
            out
        })
        .collect();
    Derivation::new(theta.degree - 1, values)
}

/// Graded commutator `[a, b] = a∘b − (−1)^{|a||b|} b∘a`.
pub fn bracket(model: &RelativeModel, a: &Derivation, b: &Derivation) -> Derivation {
    let fa = a.full_values(model.base_len());
    let fb = b.full_values(model.base_len());
    let mut act_a = DerivationAction::new(model.total(), &fa, a.is_odd());
    let mut act_b = DerivationAction::new(model.total(), &fb, b.is_odd());
    let coeff = sign(!(a.is_odd() && b.is_odd()));
    let values = (0..model.fibre_len())
        .map(|pos| {
            let mut out = act_a.apply(b.value(pos));
            let back = act_b.apply(a.value(pos));
            out.add_scaled(&back, &coeff);
            out
        })
        .collect();
    Derivation::new(a.degree + b.degree, values)
}

/// Applies a φ-derivation along `morphism` to an element of the source.
pub fn apply_along(morphism: &DGMorphism, theta: &Derivation, p: &Polynomial) -> Polynomial {
    let source = morphism.source();
    let full = theta.full_values(source.base_len());
    DerivationAction::along(
        source.total(),
        morphism.target().total(),
        &full,
        theta.is_odd(),
        morphism.values(),
    )
    .apply(p)
}

/// `𝒟θ = D'∘θ − (−1)^n θ∘D` for a φ-derivation.
pub fn differential_along(morphism: &DGMorphism, theta: &Derivation) -> Derivation {
    let source = morphism.source();
    let target = morphism.target();
    let full = theta.full_values(source.base_len());
    let mut action = DerivationAction::along(
        source.total(),
        target.total(),
        &full,
        theta.is_odd(),
        morphism.values(),
    );
    let flip = sign(!theta.is_odd());
    let values = (0..source.fibre_len())
        .map(|pos| {
            let mut out = target.d(theta.value(pos));
            let inner = action.apply(source.differential_of(source.fibre_index(pos)));
            out.add_scaled(&inner, &flip);
            out
        })
        .collect();
    Derivation::new(theta.degree - 1, values)
}

/// A finite basis of one degree of a derivation complex: elementary
/// derivations `w ↦ m`, ordered by fibre generator then monomial basis order.
#[derive(Clone, Debug)]
pub struct DerivationSpace {
    degree: i32,
    fibre_len: usize,
    basis: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
}

impl DerivationSpace {
    pub fn new(
        degree: i32,
        fibre: &[Generator],
        values_in: &Algebra,
        mut admits: impl FnMut(usize, &Monomial) -> bool,
    ) -> Self {
        let mut basis = Vec::new();
        for (pos, w) in fibre.iter().enumerate() {
            let value_degree = w.degree as i64 - degree as i64;
            if value_degree < 0 {
                continue;
            }
            for m in values_in.monomial_basis(value_degree as u32) {
                if admits(pos, &m) {
                    basis.push((pos, m));
                }
            }
        }
        let index = basis
            .iter()
            .enumerate()
            .map(|(i, key)| (key.clone(), i))
            .collect();
        DerivationSpace {
            degree,
            fibre_len: fibre.len(),
            basis,
            index,
        }
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[(usize, Monomial)] {
        &self.basis
    }

    pub fn element(&self, i: usize) -> Derivation {
        let (pos, m) = &self.basis[i];
        let mut d = Derivation::zero(self.degree, self.fibre_len);
        d.values[*pos] = Polynomial::monomial(m.clone(), num_traits::One::one());
        d
    }

    pub fn combination(&self, coefficients: &[Rational]) -> Derivation {
        assert_eq!(coefficients.len(), self.dim());
        let mut d = Derivation::zero(self.degree, self.fibre_len);
        for ((pos, m), c) in self.basis.iter().zip(coefficients) {
            d.values[*pos].add_term(m.clone(), c.clone());
        }
        d
    }

    /// Coordinates of `theta`, or `None` if it has a term outside this space.
    pub fn coordinates(&self, theta: &Derivation) -> Option<Vector> {
        if theta.degree != self.degree && !theta.is_zero() {
            return None;
        }
        let mut v = vec![Rational::zero(); self.dim()];
        for (pos, value) in theta.values.iter().enumerate() {
            for (m, c) in value.terms() {
                let &i = self.index.get(&(pos, m.clone()))?;
                v[i] = c.clone();
            }
        }
        Some(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComplexKind {
    /// `Der_{∧V}(∧V⊗∧W)`: a DG Lie algebra.
    Full,
    /// Subcomplex with values in `∧⁺V⊗∧W`.
    FibreIdentity,
    /// φ-derivations along a morphism: a chain complex only.
    Mapping,
}

impl ComplexKind {
    pub fn name(self) -> &'static str {
        match self {
            ComplexKind::Full => "derivations",
            ComplexKind::FibreIdentity => "fibre-identity derivations",
            ComplexKind::Mapping => "mapping-space derivations",
        }
    }
}

/// A chain complex of derivations with finite bases in each degree.
pub trait DerivationComplex: Sync {
    fn kind(&self) -> ComplexKind;

    /// Fibre generators of the source (where derivations are evaluated).
    fn fibre(&self) -> &[Generator];

    /// Algebra in which values live.
    fn values_in(&self) -> &Algebra;

    fn space(&self, degree: i32) -> DerivationSpace;

    fn differential(&self, theta: &Derivation) -> Derivation;

    fn bracket(&self, a: &Derivation, b: &Derivation) -> Result<Derivation>;

    /// Largest `n` with possibly nonzero `Der^n`.
    fn top_degree(&self) -> i32 {
        self.fibre().iter().map(|g| g.degree as i32).max().unwrap_or(0)
    }
}

pub struct FullComplex<'a> {
    model: &'a RelativeModel,
}

impl<'a> FullComplex<'a> {
    pub fn new(model: &'a RelativeModel) -> Self {
        FullComplex { model }
    }

    pub fn model(&self) -> &RelativeModel {
        self.model
    }
}

impl DerivationComplex for FullComplex<'_> {
    fn kind(&self) -> ComplexKind {
        ComplexKind::Full
    }

    fn fibre(&self) -> &[Generator] {
        fibre_generators(self.model)
    }

    fn values_in(&self) -> &Algebra {
        self.model.total()
    }

    fn space(&self, degree: i32) -> DerivationSpace {
        DerivationSpace::new(degree, self.fibre(), self.values_in(), |_, _| true)
    }

    fn differential(&self, theta: &Derivation) -> Derivation {
        differential(self.model, theta)
    }

    fn bracket(&self, a: &Derivation, b: &Derivation) -> Result<Derivation> {
        Ok(bracket(self.model, a, b))
    }
}

/// Derivations with `θ(W) ⊂ ∧⁺V⊗∧W`: constants and pure-fibre values excluded.
pub struct FibreIdentityComplex<'a> {
    model: &'a RelativeModel,
}

impl<'a> FibreIdentityComplex<'a> {
    pub fn new(model: &'a RelativeModel) -> Self {
        FibreIdentityComplex { model }
    }
}

impl DerivationComplex for FibreIdentityComplex<'_> {
    fn kind(&self) -> ComplexKind {
        ComplexKind::FibreIdentity
    }

    fn fibre(&self) -> &[Generator] {
        fibre_generators(self.model)
    }

    fn values_in(&self) -> &Algebra {
        self.model.total()
    }

    fn space(&self, degree: i32) -> DerivationSpace {
        let base_len = self.model.base_len();
        DerivationSpace::new(degree, self.fibre(), self.values_in(), |_, m| {
            m.involves_any(|i| i < base_len)
        })
    }

    fn differential(&self, theta: &Derivation) -> Derivation {
        differential(self.model, theta)
    }

    fn bracket(&self, a: &Derivation, b: &Derivation) -> Result<Derivation> {
        Ok(bracket(self.model, a, b))
    }
}

/// φ-derivations `Der_{∧V}(∧V⊗∧W, ∧V'⊗∧W'; A_f)`.
pub struct MappingComplex<'a> {
    morphism: &'a DGMorphism,
}

impl<'a> MappingComplex<'a> {
    pub fn new(morphism: &'a DGMorphism) -> Self {
        MappingComplex { morphism }
    }
}

impl DerivationComplex for MappingComplex<'_> {
    fn kind(&self) -> ComplexKind {
        ComplexKind::Mapping
    }

    fn fibre(&self) -> &[Generator] {
        fibre_generators(self.morphism.source())
    }

    fn values_in(&self) -> &Algebra {
        self.morphism.target().total()
    }

    fn space(&self, degree: i32) -> DerivationSpace {
        DerivationSpace::new(degree, self.fibre(), self.values_in(), |_, _| true)
    }

    fn differential(&self, theta: &Derivation) -> Derivation {
        differential_along(self.morphism, theta)
    }

    fn bracket(&self, _: &Derivation, _: &Derivation) -> Result<Derivation> {
        Err(Error::Unsupported(
            "φ-derivations along a morphism carry no Lie bracket".into(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational;
    use std::sync::Arc;

    fn s2_over_point() -> RelativeModel {
        RelativeModel::parse::<&str>(&[], &[("x", 2), ("y", 3)], [("y", "x^2")]).unwrap()
    }

    fn path_s2() -> RelativeModel {
        RelativeModel::parse(
            &[("x", 2), ("y", 3)],
            &[("xbar", 1), ("ybar", 2)],
            [("y", "x^2"), ("xbar", "x"), ("ybar", "y - xbar*x")],
        )
        .unwrap()
    }

    fn hopf() -> RelativeModel {
        RelativeModel::parse(
            &[("v4", 4), ("v7", 7)],
            &[("w3", 3), ("w3p", 3)],
            [("v7", "v4^2"), ("w3p", "v4")],
        )
        .unwrap()
    }

    fn der(model: &RelativeModel, degree: i32, values: &[&str]) -> Derivation {
        let values = values.iter().map(|s| model.total().parse(s).unwrap()).collect();
        let d = Derivation::new(degree, values);
        d.check_degrees(fibre_generators(model), model.total()).unwrap();
        d
    }

    #[test]
    fn single_leibniz_step() {
        let m = RelativeModel::parse::<&str>(&[], &[("x", 2), ("y", 3)], []).unwrap();
        let theta = der(&m, 1, &["0", "x"]);
        let xy = m.total().parse("x*y").unwrap();
        // θ(xy) = θ(x)y + x θ(y) = x^2 under the adopted sign.
        assert_eq!(apply(&m, &theta, &xy), m.total().parse("x^2").unwrap());
        assert!(apply(&m, &theta, &Polynomial::one()).is_zero());
    }

    #[test]
    fn vanishes_on_base() {
        let m = hopf();
        let theta = der(&m, 3, &["1", "1"]);
        for v in ["v4", "v7", "v4^2"] {
            assert!(apply(&m, &theta, &m.total().parse(v).unwrap()).is_zero());
        }
    }

    #[test]
    fn differential_of_constant_on_x() {
        // Over a point with x, y treated as fibre: θ(x) = 1 of degree 2.
        let m = s2_over_point();
        let theta = der(&m, 2, &["1", "0"]);
        let d = differential(&m, &theta);
        assert_eq!(d.degree(), 1);
        assert!(d.value(0).is_zero());
        // D(0) − θ(x^2) = −2x
        assert_eq!(d.value(1), &m.total().parse("-2*x").unwrap());
    }

    #[test]
    fn hopf_cycle() {
        let m = hopf();
        let theta = der(&m, 0, &["0", "w3"]);
        assert!(differential(&m, &theta).is_zero());
        assert!(differential(&m, &Derivation::zero(2, 2)).is_zero());
    }

    #[test]
    fn path_space_bracket() {
        let m = path_s2();
        let t1 = der(&m, 1, &["1", "0"]);
        let t2 = der(&m, 1, &["0", "xbar"]);
        let b = bracket(&m, &t1, &t2);
        assert_eq!(b.degree(), 2);
        assert!(b.value(0).is_zero());
        assert_eq!(b.value(1), &Polynomial::one());
    }

    #[test]
    fn even_self_bracket_vanishes() {
        let m = path_s2();
        let t = der(&m, 2, &["0", "1"]);
        assert!(bracket(&m, &t, &t).is_zero());
    }

    #[test]
    fn disjoint_elementary_brackets_vanish() {
        let m = hopf();
        let a = der(&m, 0, &["0", "w3"]);
        let b = der(&m, -1, &["0", "v4"]);
        // a(v4) = 0 and b(w3) = 0.
        assert!(bracket(&m, &a, &b).is_zero());
    }

    #[test]
    fn space_dimensions() {
        let m = hopf();
        let c = FullComplex::new(&m);
        assert_eq!(c.space(3).dim(), 2);
        assert_eq!(c.space(4).dim(), 0);
        let product = RelativeModel::parse(&[("x2", 2), ("y3", 3)], &[("w3", 3)], [("y3", "x2^2")]).unwrap();
        let c = FullComplex::new(&product);
        assert_eq!(c.space(1).dim(), 1);
        let autf = FibreIdentityComplex::new(&product);
        assert_eq!(autf.space(3).dim(), 0);
    }

    #[test]
    fn coordinates_round_trip() {
        let m = path_s2();
        let c = FullComplex::new(&m);
        let space = c.space(1);
        let theta = der(&m, 1, &["3", "-1/2*xbar"]);
        let coords = space.coordinates(&theta).unwrap();
        assert_eq!(space.combination(&coords), theta);
        assert!(coords.contains(&rational(3)));
    }

    #[test]
    fn identity_morphism_matches_plain_differential() {
        let m = Arc::new(path_s2());
        let id = DGMorphism::identity(m.clone());
        let theta = der(&m, 1, &["1", "xbar"]);
        assert_eq!(differential_along(&id, &theta), differential(&m, &theta));
        let mapping = MappingComplex::new(&id);
        assert!(matches!(mapping.bracket(&theta, &theta), Err(Error::Unsupported(_))));
    }
}
