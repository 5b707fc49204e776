//! The group `H₀(Der_♯) = coker(𝒟 : Der¹ → Der⁰_♯)` of degree-0 ♯-derivation
//! classes, with the product `log(e^θ ∘ e^φ)` and the exp/log correspondence
//! with automorphisms that fix `∧V`.
//!
//! Products are evaluated exactly: exponentiate representatives, compose the
//! automorphisms, take the logarithm, reduce modulo boundaries.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{Monomial, Polynomial, Rational};
use crate::derivations::{
    self, Derivation, DerivationComplex, DerivationSpace, FullComplex,
};
use crate::error::{Error, Result};
use crate::homology::differential_matrix_at;
use crate::leibniz::{DerivationAction, MorphismAction};
use crate::linalg::{is_zero_vector, Matrix, Quotient, Solver, Vector};
use crate::sullivan::{DGMorphism, RelativeModel, Usage, WSplit};

/// A class in `H₀(Der_♯)`: canonical coordinates plus the representative
/// `Σ cᵢ θᵢ` over the fixed basis representatives.
#[derive(Clone, Debug)]
pub struct ESharpElement {
    coordinates: Vector,
    representative: Derivation,
}

impl ESharpElement {
    pub fn coordinates(&self) -> &[Rational] {
        &self.coordinates
    }

    pub fn representative(&self) -> &Derivation {
        &self.representative
    }

    pub fn is_identity(&self) -> bool {
        is_zero_vector(&self.coordinates)
    }
}

impl PartialEq for ESharpElement {
    fn eq(&self, other: &Self) -> bool {
        self.coordinates == other.coordinates
    }
}

impl Eq for ESharpElement {}

/// An automorphism of the total algebra fixing `∧V`, given by its values on
/// the fibre generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharpAutomorphism {
    values: Vec<Polynomial>,
}

impl SharpAutomorphism {
    pub fn new(values: Vec<Polynomial>) -> Self {
        SharpAutomorphism { values }
    }

    pub fn identity(model: &RelativeModel) -> Self {
        SharpAutomorphism {
            values: (0..model.fibre_len())
                .map(|p| Polynomial::generator(model.fibre_index(p)))
                .collect(),
        }
    }

    pub fn values(&self) -> &[Polynomial] {
        &self.values
    }

    fn full_values(&self, model: &RelativeModel) -> Vec<Polynomial> {
        (0..model.base_len())
            .map(Polynomial::generator)
            .chain(self.values.iter().cloned())
            .collect()
    }

    pub fn apply(&self, model: &RelativeModel, p: &Polynomial) -> Polynomial {
        let full = self.full_values(model);
        MorphismAction::new(model.total(), &full).apply(p)
    }

    pub fn to_morphism(&self, model: Arc<RelativeModel>) -> Result<DGMorphism> {
        let full = self.full_values(&model);
        DGMorphism::new(model.clone(), model, full)
    }
}

/// `H₀(Der_♯)` of a model, with a fixed basis of class representatives.
#[derive(Clone, Debug)]
pub struct H0Sharp {
    model: Arc<RelativeModel>,
    split: WSplit,
    space: DerivationSpace,
    /// Basis of `Der⁰_♯` in `Der⁰` coordinates.
    sharp_basis: Vec<Vector>,
    quotient: Quotient,
    representatives: Vec<Derivation>,
}

/// Computes `H₀(Der_♯)` for a valid relatively minimal model.
pub fn h0_sharp(model: &RelativeModel) -> Result<H0Sharp> {
    model.require(Usage::Endomorphism)?;
    let model = Arc::new(model.clone());
    let split = model.linear_part_split();
    let complex = FullComplex::new(&model);
    let space = complex.space(0);

    let cycle = differential_matrix_at(&complex, 0)?;
    let mut rows: Vec<Vector> = (0..cycle.rows()).map(|i| cycle.row(i).to_vec()).collect();
    rows.extend(linear_constraints(&model, &split, &space));
    let sharp_basis = Matrix::from_rows(space.dim(), &rows).kernel();

    let incoming = differential_matrix_at(&complex, 1)?;
    let boundaries: Vec<Vector> = (0..incoming.cols()).map(|j| incoming.column(j)).collect();
    let membership = Solver::new(space.dim(), &sharp_basis);
    if boundaries.iter().any(|b| membership.solve(b).is_none()) {
        return Err(Error::Unsupported(
            "a boundary of Der¹ violates the ♯-conditions; the quotient is undefined".into(),
        ));
    }
    let quotient = Quotient::new(space.dim(), &sharp_basis, &boundaries);
    let representatives = quotient
        .representatives()
        .iter()
        .map(|v| space.combination(v))
        .collect();
    Ok(H0Sharp {
        model,
        split,
        space,
        sharp_basis,
        quotient,
        representatives,
    })
}

/// `D₀` applied to a vector over `W`, as a vector over `V`.
fn d0(model: &RelativeModel, w: &[Rational]) -> Vector {
    let mut out = vec![Rational::zero(); model.base_len()];
    for (q, c) in w.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let dw = model.differential_of(model.fibre_index(q));
        for (v, slot) in out.iter_mut().enumerate() {
            *slot += c * dw.coefficient(&Monomial::generator(v));
        }
    }
    out
}

/// Rows over `Der⁰` coordinates expressing: no `W`-linear part on `W₀`, and
/// the `W`-linear part of every value lies in `W₀ = ker D₀`.
fn linear_constraints(model: &RelativeModel, split: &WSplit, space: &DerivationSpace) -> Vec<Vector> {
    let linear_target = |m: &Monomial| -> Option<usize> {
        m.as_generator().filter(|&g| !model.is_base(g)).map(|g| g - model.base_len())
    };
    let mut rows = Vec::new();
    for u in &split.w0 {
        for q in 0..model.fibre_len() {
            rows.push(
                space
                    .basis()
                    .iter()
                    .map(|(pos, m)| match linear_target(m) {
                        Some(t) if t == q => u[*pos].clone(),
                        _ => Rational::zero(),
                    })
                    .collect(),
            );
        }
    }
    for pos in 0..model.fibre_len() {
        for v in 0..model.base_len() {
            rows.push(
                space
                    .basis()
                    .iter()
                    .map(|(p, m)| match linear_target(m) {
                        Some(t) if *p == pos => model
                            .differential_of(model.fibre_index(t))
                            .coefficient(&Monomial::generator(v)),
                        _ => Rational::zero(),
                    })
                    .collect(),
            );
        }
    }
    rows
}

/// Describes the first violated linear-part containment for values of
/// `θ` (or of `φ − 1`), if any.
fn linear_violation(model: &RelativeModel, split: &WSplit, values: &[Polynomial]) -> Option<String> {
    let linear: Vec<Vector> = values
        .iter()
        .map(|p| {
            (0..model.fibre_len())
                .map(|q| p.coefficient(&Monomial::generator(model.fibre_index(q))))
                .collect()
        })
        .collect();
    for u in &split.w0 {
        let mut sum = vec![Rational::zero(); model.fibre_len()];
        for (pos, c) in u.iter().enumerate() {
            for (s, x) in sum.iter_mut().zip(&linear[pos]) {
                *s += c * x;
            }
        }
        if !is_zero_vector(&sum) {
            return Some("the image of W₀ has a nonzero W-linear part".into());
        }
    }
    for (pos, lin) in linear.iter().enumerate() {
        if !is_zero_vector(&d0(model, lin)) {
            let name = &model.total().generator(model.fibre_index(pos)).name;
            return Some(format!("the W-linear part of the image of {name} is not in W₀"));
        }
    }
    None
}

/// `dim (∧V⊗∧W)^{deg} + 1`: a degree-0 map that is nilpotent on this
/// component vanishes after this many steps.
fn nilpotence_cap(model: &RelativeModel, degree: u32) -> usize {
    model.total().dimension(degree) + 1
}

impl H0Sharp {
    pub fn model(&self) -> &Arc<RelativeModel> {
        &self.model
    }

    pub fn split(&self) -> &WSplit {
        &self.split
    }

    pub fn dimension(&self) -> usize {
        self.representatives.len()
    }

    /// `dim Der⁰_♯` (cycles satisfying the linear-part conditions).
    pub fn sharp_dimension(&self) -> usize {
        self.sharp_basis.len()
    }

    pub fn representatives(&self) -> &[Derivation] {
        &self.representatives
    }

    /// A basis of `Der⁰_♯`.
    pub fn sharp_derivations(&self) -> Vec<Derivation> {
        self.sharp_basis.iter().map(|v| self.space.combination(v)).collect()
    }

    pub fn identity(&self) -> ESharpElement {
        self.element(&vec![Rational::zero(); self.dimension()])
            .expect("zero vector has the right length")
    }

    pub fn basis(&self) -> Vec<ESharpElement> {
        (0..self.dimension())
            .map(|i| {
                let mut v = vec![Rational::zero(); self.dimension()];
                v[i] = Rational::one();
                self.element(&v).expect("unit vector")
            })
            .collect()
    }

    pub fn element(&self, coordinates: &[Rational]) -> Result<ESharpElement> {
        if coordinates.len() != self.dimension() {
            return Err(Error::Shape(format!(
                "{} coordinates for a group of dimension {}",
                coordinates.len(),
                self.dimension()
            )));
        }
        let mut representative = Derivation::zero(0, self.model.fibre_len());
        for (c, rep) in coordinates.iter().zip(&self.representatives) {
            representative.add_scaled(rep, c);
        }
        Ok(ESharpElement {
            coordinates: coordinates.to_vec(),
            representative,
        })
    }

    /// Errors unless `θ` is a degree-0 ♯-derivation.
    pub fn check_sharp(&self, theta: &Derivation) -> Result<()> {
        if theta.degree() != 0 || theta.values().len() != self.model.fibre_len() {
            return Err(Error::Precondition("not a degree-0 derivation of this model".into()));
        }
        theta.check_degrees(derivations::fibre_generators(&self.model), self.model.total())?;
        if !derivations::differential(&self.model, theta).is_zero() {
            return Err(Error::Precondition("derivation is not a cycle".into()));
        }
        match linear_violation(&self.model, &self.split, theta.values()) {
            Some(why) => Err(Error::Precondition(why)),
            None => Ok(()),
        }
    }

    pub fn is_sharp(&self, theta: &Derivation) -> bool {
        self.check_sharp(theta).is_ok()
    }

    /// The class of a ♯-derivation.
    pub fn class_of(&self, theta: &Derivation) -> Result<ESharpElement> {
        self.check_sharp(theta)?;
        let v = self
            .space
            .coordinates(theta)
            .ok_or_else(|| Error::Internal("♯-derivation outside Der⁰".into()))?;
        let c = self
            .quotient
            .coordinates(&v)
            .ok_or_else(|| Error::Internal("♯-derivation outside Der⁰_♯".into()))?;
        self.element(&c)
    }

    /// `e^θ = Σ θ^k/k!` on the fibre generators.
    pub fn exp_automorphism(&self, theta: &Derivation) -> Result<SharpAutomorphism> {
        self.check_sharp(theta)?;
        self.exp_unchecked(theta)
    }

    fn exp_unchecked(&self, theta: &Derivation) -> Result<SharpAutomorphism> {
        let model = &self.model;
        let full: Vec<Polynomial> = (0..model.base_len())
            .map(|_| Polynomial::zero())
            .chain(theta.values().iter().cloned())
            .collect();
        let mut action = DerivationAction::new(model.total(), &full, false);
        let mut values = Vec::with_capacity(model.fibre_len());
        for pos in 0..model.fibre_len() {
            let g = model.fibre_index(pos);
            let cap = nilpotence_cap(model, model.total().generator(g).degree);
            let mut term = Polynomial::generator(g);
            let mut sum = term.clone();
            let mut k = 1;
            loop {
                term = action.apply(&term).scaled(&Rational::new(1.into(), k.into()));
                if term.is_zero() {
                    break;
                }
                if k > cap {
                    return Err(Error::Internal(format!(
                        "θ is not nilpotent on {} within {cap} steps",
                        model.total().generator(g).name
                    )));
                }
                sum += &term;
                k += 1;
            }
            values.push(sum);
        }
        Ok(SharpAutomorphism { values })
    }

    /// `log φ = Σ (−1)^{k+1} (φ−1)^k / k` on the fibre generators.
    pub fn log_automorphism(&self, phi: &SharpAutomorphism) -> Result<Derivation> {
        let model = &self.model;
        if phi.values.len() != model.fibre_len() {
            return Err(Error::Shape(format!(
                "{} automorphism values for {} fibre generators",
                phi.values.len(),
                model.fibre_len()
            )));
        }
        let mut shifted = Vec::with_capacity(model.fibre_len());
        for (pos, value) in phi.values.iter().enumerate() {
            model.total().check(value)?;
            let g = model.fibre_index(pos);
            let degree = model.total().generator(g).degree;
            if model.total().homogeneous_degree(value) != Some(degree) && !value.is_zero() {
                return Err(Error::Precondition(format!(
                    "image of {} is not homogeneous of degree {degree}",
                    model.total().generator(g).name
                )));
            }
            shifted.push(value - &Polynomial::generator(g));
        }
        if let Some(why) = linear_violation(model, &self.split, &shifted) {
            return Err(Error::Precondition(why));
        }
        let full = phi.full_values(model);
        let mut action = MorphismAction::new(model.total(), &full);
        for pos in 0..model.fibre_len() {
            let g = model.fibre_index(pos);
            let lhs = action.apply(model.differential_of(g));
            if lhs != model.d(&phi.values[pos]) {
                return Err(Error::Precondition(format!(
                    "automorphism does not commute with D on {}",
                    model.total().generator(g).name
                )));
            }
        }
        let theta = self.log_unchecked(phi, Error::Precondition)?;
        self.check_sharp(&theta)?;
        Ok(theta)
    }

    fn log_unchecked(&self, phi: &SharpAutomorphism, fail: fn(String) -> Error) -> Result<Derivation> {
        let model = &self.model;
        let full = phi.full_values(model);
        let mut action = MorphismAction::new(model.total(), &full);
        let mut values = Vec::with_capacity(model.fibre_len());
        for pos in 0..model.fibre_len() {
            let g = model.fibre_index(pos);
            let cap = nilpotence_cap(model, model.total().generator(g).degree);
            let mut power = Polynomial::generator(g);
            let mut sum = Polynomial::zero();
            let mut k: i64 = 1;
            loop {
                power = &action.apply(&power) - &power;
                if power.is_zero() {
                    break;
                }
                if k as usize > cap {
                    return Err(fail(format!(
                        "φ − 1 is not nilpotent on {} within {cap} steps",
                        model.total().generator(g).name
                    )));
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                sum.add_scaled(&power, &Rational::new(sign.into(), k.into()));
                k += 1;
            }
            values.push(sum);
        }
        Ok(Derivation::new(0, values))
    }

    /// `e^θ ∘ e^φ`.
    fn compose(&self, a: &SharpAutomorphism, b: &SharpAutomorphism) -> SharpAutomorphism {
        let full = a.full_values(&self.model);
        let mut action = MorphismAction::new(self.model.total(), &full);
        SharpAutomorphism {
            values: b.values.iter().map(|p| action.apply(p)).collect(),
        }
    }

    /// `log(e^θ ∘ e^φ)` on representatives, before reduction.
    pub fn bch_representative(&self, theta: &Derivation, phi: &Derivation) -> Result<Derivation> {
        let a = self.exp_unchecked(theta)?;
        let b = self.exp_unchecked(phi)?;
        self.log_unchecked(&self.compose(&a, &b), Error::Internal)
    }

    pub fn bch_product(&self, a: &ESharpElement, b: &ESharpElement) -> Result<ESharpElement> {
        let product = self.bch_representative(&a.representative, &b.representative)?;
        self.reduce(&product)
    }

    fn reduce(&self, theta: &Derivation) -> Result<ESharpElement> {
        let v = self
            .space
            .coordinates(theta)
            .ok_or_else(|| Error::Internal("product leaves Der⁰".into()))?;
        let c = self
            .quotient
            .coordinates(&v)
            .ok_or_else(|| Error::Internal("product leaves Der⁰_♯".into()))?;
        self.element(&c)
    }

    pub fn inverse(&self, a: &ESharpElement) -> ESharpElement {
        let neg: Vector = a.coordinates.iter().map(|c| -c).collect();
        self.element(&neg).expect("same dimension")
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, a: &ESharpElement, b: &ESharpElement) -> Result<ESharpElement> {
        let ab = self.bch_product(a, b)?;
        let ab_ai = self.bch_product(&ab, &self.inverse(a))?;
        self.bch_product(&ab_ai, &self.inverse(b))
    }

    /// Multiplication table, lower central series and flags.
    pub fn group_profile(&self) -> Result<GroupProfile> {
        let basis = self.basis();
        let table: Vec<Vec<Vector>> = std::thread::scope(|scope| {
            let handles: Vec<_> = basis
                .iter()
                .map(|a| {
                    let basis = &basis;
                    scope.spawn(move || {
                        basis
                            .iter()
                            .map(|b| self.bch_product(a, b).map(|p| p.coordinates))
                            .collect::<Result<Vec<_>>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("table worker panicked"))
                .collect::<Result<Vec<_>>>()
        })?;
        let series = self.lower_central_series()?;
        Ok(GroupProfile {
            dimension: self.dimension(),
            basis: self.representatives.clone(),
            table,
            infinite_order: self.dimension() >= 1,
            abelian: series.get(1).is_none_or(|&d| d == 0),
            nilpotency_class_lower_bound: series.iter().filter(|&&d| d > 0).count(),
            lower_central_series: series,
        })
    }

    /// Dimensions of `Γ₁ ⊇ Γ₂ ⊇ …` (logarithms of iterated group commutators),
    /// ending with the first zero term or the first repeated dimension.
    pub fn lower_central_series(&self) -> Result<Vec<usize>> {
        let dim = self.dimension();
        let generators = self.basis();
        let mut current: Vec<Vector> = generators.iter().map(|g| g.coordinates.clone()).collect();
        let mut dims = vec![dim];
        while !current.is_empty() {
            let mut span: Vec<Vector> = Vec::new();
            let mut frontier = current.clone();
            // Closing under commutators with all of G makes the span normal.
            while !frontier.is_empty() {
                let mut fresh = Vec::new();
                for h in &frontier {
                    let h = self.element(h)?;
                    for g in &generators {
                        let c = self.commutator(g, &h)?;
                        if !c.is_identity() {
                            fresh.push(c.coordinates);
                        }
                    }
                }
                let before = span.len();
                let mut all = span.clone();
                all.extend(fresh);
                span = Matrix::from_columns(dim, &all).column_basis();
                frontier = if span.len() > before { span.clone() } else { Vec::new() };
            }
            if span.len() == current.len() {
                break;
            }
            dims.push(span.len());
            current = span;
        }
        Ok(dims)
    }
}

/// Summary of the group `H₀(Der_♯)`.
#[derive(Clone, Debug)]
pub struct GroupProfile {
    pub dimension: usize,
    pub basis: Vec<Derivation>,
    /// `table[i][j]` = coordinates of `eᵢ · eⱼ`.
    pub table: Vec<Vec<Vector>>,
    pub infinite_order: bool,
    pub abelian: bool,
    /// Number of nonzero terms of the lower central series.
    pub nilpotency_class_lower_bound: usize,
    pub lower_central_series: Vec<usize>,
}

pub fn group_profile(model: &RelativeModel) -> Result<GroupProfile> {
    h0_sharp(model)?.group_profile()
}

/// `θ + φ + ½[θ,φ] + (1/12)[θ,[θ,φ]] − (1/12)[φ,[θ,φ]]`.
pub fn bch_third_order(model: &RelativeModel, theta: &Derivation, phi: &Derivation) -> Derivation {
    let tp = derivations::bracket(model, theta, phi);
    let ttp = derivations::bracket(model, theta, &tp);
    let ptp = derivations::bracket(model, phi, &tp);
    let mut out = theta + phi;
    out.add_scaled(&tp, &Rational::new(1.into(), 2.into()));
    out.add_scaled(&ttp, &Rational::new(1.into(), 12.into()));
    out.add_scaled(&ptp, &Rational::new((-1).into(), 12.into()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational;

    fn hopf() -> RelativeModel {
        RelativeModel::parse(
            &[("v4", 4), ("v7", 7)],
            &[("w3", 3), ("w3p", 3)],
            [("v7", "v4^2"), ("w3p", "v4")],
        )
        .unwrap()
    }

    fn theta0(model: &RelativeModel) -> Derivation {
        let w3 = model.total().parse("w3").unwrap();
        Derivation::new(0, vec![Polynomial::zero(), w3])
    }

    #[test]
    fn hopf_class_is_nonzero() {
        let m = hopf();
        let h = h0_sharp(&m).unwrap();
        assert_eq!(h.dimension(), 1);
        let a = h.class_of(&theta0(&m)).unwrap();
        assert!(!a.is_identity());
    }

    #[test]
    fn hopf_exp_and_log() {
        let m = hopf();
        let h = h0_sharp(&m).unwrap();
        let phi = h.exp_automorphism(&theta0(&m)).unwrap();
        assert_eq!(m.total().format(&phi.values()[1]), "w3 + w3p");
        assert_eq!(m.total().format(&phi.values()[0]), "w3");
        assert_eq!(h.log_automorphism(&phi).unwrap(), theta0(&m));
        let id = SharpAutomorphism::identity(&m);
        assert!(h.log_automorphism(&id).unwrap().is_zero());
    }

    #[test]
    fn hopf_square() {
        let m = hopf();
        let h = h0_sharp(&m).unwrap();
        let a = h.class_of(&theta0(&m)).unwrap();
        let aa = h.bch_product(&a, &a).unwrap();
        assert_eq!(aa, h.class_of(&theta0(&m).scaled(&rational(2))).unwrap());
        assert_eq!(h.bch_product(&a, &h.identity()).unwrap(), a);
    }

    #[test]
    fn profile_flags() {
        let p = group_profile(&hopf()).unwrap();
        assert!(p.infinite_order);
        assert!(p.abelian);
        assert_eq!(p.nilpotency_class_lower_bound, 1);
        let trivial = RelativeModel::parse(&[("x", 2), ("y", 3)], &[("w", 3)], [("y", "x^2")]).unwrap();
        let p = group_profile(&trivial).unwrap();
        assert_eq!(p.dimension, 0);
        assert_eq!(p.nilpotency_class_lower_bound, 0);
        assert!(!p.infinite_order);
    }

    #[test]
    fn log_rejects_bad_linear_part() {
        let m = hopf();
        let h = h0_sharp(&m).unwrap();
        // w3 ↦ w3 + w3p sends the W₁ direction into W₀'s complement.
        let bad = SharpAutomorphism::new(vec![
            m.total().parse("w3 + w3p").unwrap(),
            m.total().parse("w3p").unwrap(),
        ]);
        assert!(matches!(h.log_automorphism(&bad), Err(Error::Precondition(_))));
    }

    #[test]
    fn exp_rejects_non_cycle() {
        let m = RelativeModel::parse(
            &[("x", 2), ("y", 3)],
            &[("w", 2), ("u", 3)],
            [("y", "x^2"), ("u", "w^2")],
        )
        .unwrap();
        let h = h0_sharp(&m).unwrap();
        let theta = Derivation::new(0, vec![m.total().parse("x").unwrap(), Polynomial::zero()]);
        assert!(matches!(h.exp_automorphism(&theta), Err(Error::Precondition(_))));
    }
}
