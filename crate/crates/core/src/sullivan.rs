//! Sullivan algebras, relative models `(∧V,d) → (∧V⊗∧W,D)`, and DG
//! morphisms between relative models.
//!
//! A [`RelativeModel`] stores one total algebra whose generators are the base
//! generators `V` followed by the fibre generators `W`, so base polynomials are
//! literally total polynomials and `D|V = d` holds by construction.

use std::fmt;
use std::sync::Arc;


use crate::algebra::{Algebra, Polynomial};
use crate::error::{Error, Result};
use crate::leibniz::{DerivationAction, MorphismAction};
use crate::linalg::{Matrix, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Warn,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Warn => "WARN",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    fn push(&mut self, name: &'static str, failures: Vec<String>, severity: Status) {
        let status = if failures.is_empty() { Status::Pass } else { severity };
        let detail = (!failures.is_empty()).then(|| failures.join("; "));
        self.checks.push(Check {
            name,
            status,
            detail,
        });
    }

    /// No check failed outright (warnings allowed).
    pub fn is_ok(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn has_warnings(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Warn)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn into_result(self) -> Result<Self> {
        if self.is_ok() {
            Ok(self)
        } else {
            Err(Error::Validation(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{:<20} {}", c.name, c.status)?;
            if let Some(d) = &c.detail {
                write!(f, "  ({d})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// How a model is going to be used; decides whether minimality failures are
/// errors or warnings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Usage {
    /// Derivation Lie algebra and ♯-group computations: relative minimality required.
    Endomorphism,
    /// Source or target of a fibrewise map: minimality only warned about.
    MappingSpace,
}

/// A free graded-commutative algebra with a differential of degree +1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SullivanAlgebra {
    algebra: Algebra,
    differential: Vec<Polynomial>,
}

impl SullivanAlgebra {
    pub fn new(algebra: Algebra, differential: Vec<Polynomial>) -> Result<Self> {
        if differential.len() != algebra.len() {
            return Err(Error::Shape(format!(
                "{} differential values for {} generators",
                differential.len(),
                algebra.len()
            )));
        }
        for p in &differential {
            algebra.check(p)?;
        }
        Ok(SullivanAlgebra {
            algebra,
            differential,
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn differential(&self) -> &[Polynomial] {
        &self.differential
    }

    pub fn d(&self, p: &Polynomial) -> Polynomial {
        DerivationAction::new(&self.algebra, &self.differential, true).apply(p)
    }

    /// Cohomology dimensions in degrees `0..=max_degree`.
    pub fn cohomology(&self, max_degree: u32) -> Vec<usize> {
        cohomology_dims(&self.algebra, &self.differential, max_degree)
    }

    /// Minimal: no differential has a linear part.
    pub fn is_minimal(&self) -> bool {
        self.differential.iter().all(|p| p.linear_terms().next().is_none())
    }
}

/// Degreewise cochain cohomology of a free graded-commutative DG algebra.
pub fn cohomology_dims(algebra: &Algebra, differential: &[Polynomial], max_degree: u32) -> Vec<usize> {
    let mut action = DerivationAction::new(algebra, differential, true);
    let matrix = |action: &mut DerivationAction<'_>, k: u32| -> (usize, Matrix) {
        let source = algebra.monomial_basis(k);
        let target = algebra.monomial_basis(k + 1);
        let columns: Vec<Vector> = source
            .iter()
            .map(|m| {
                let image = action.apply_monomial(m);
                target.iter().map(|t| image.coefficient(t)).collect()
            })
            .collect();
        (source.len(), Matrix::from_columns(target.len(), &columns))
    };
    let mut ranks = Vec::new();
    let mut dims = Vec::new();
    for k in 0..=max_degree {
        let (dim, m) = matrix(&mut action, k);
        dims.push(dim);
        ranks.push(m.rank());
    }
    (0..=max_degree as usize)
        .map(|k| {
            let incoming = if k == 0 { 0 } else { ranks[k - 1] };
            dims[k] - ranks[k] - incoming
        })
        .collect()
}

/// A relative Sullivan model `(∧V,d) → (∧V⊗∧W,D)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeModel {
    total: Algebra,
    base_len: usize,
    differential: Vec<Polynomial>,
}

impl RelativeModel {
    /// Assembles a model from its total algebra (base generators first) and
    /// the differential on every generator. Only shape is checked here; see
    /// [`RelativeModel::validate`].
    pub fn new(total: Algebra, base_len: usize, differential: Vec<Polynomial>) -> Result<Self> {
        if base_len > total.len() {
            return Err(Error::Shape("base is larger than the total algebra".into()));
        }
        if differential.len() != total.len() {
            return Err(Error::Shape(format!(
                "{} differential values for {} generators",
                differential.len(),
                total.len()
            )));
        }
        for p in &differential {
            total.check(p)?;
        }
        Ok(RelativeModel {
            total,
            base_len,
            differential,
        })
    }

    /// Builds a model from generator lists and textual differentials.
    /// Generators absent from `differential` have zero differential.
    pub fn parse<'s, N: AsRef<str>>(
        base: &[(N, u32)],
        fibre: &[(N, u32)],
        differential: impl IntoIterator<Item = (&'s str, &'s str)>,
    ) -> Result<Self> {
        let total = Algebra::new(
            base.iter()
                .chain(fibre)
                .map(|(n, d)| (n.as_ref().to_string(), *d)),
        )?;
        let mut values = vec![Polynomial::zero(); total.len()];
        for (name, text) in differential {
            let g = total
                .index_of(name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            values[g] = total.parse(text)?;
        }
        RelativeModel::new(total, base.len(), values)
    }

    pub fn total(&self) -> &Algebra {
        &self.total
    }

    pub fn base_len(&self) -> usize {
        self.base_len
    }

    pub fn fibre_len(&self) -> usize {
        self.total.len() - self.base_len
    }

    /// Total-algebra index of the `pos`-th fibre generator.
    pub fn fibre_index(&self, pos: usize) -> usize {
        self.base_len + pos
    }

    pub fn is_base(&self, index: usize) -> bool {
        index < self.base_len
    }

    pub fn fibre_degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.total.generators()[self.base_len..].iter().map(|g| g.degree)
    }

    pub fn max_fibre_degree(&self) -> u32 {
        self.fibre_degrees().max().unwrap_or(0)
    }

    pub fn differential(&self) -> &[Polynomial] {
        &self.differential
    }

    pub fn differential_of(&self, index: usize) -> &Polynomial {
        &self.differential[index]
    }

    pub fn d(&self, p: &Polynomial) -> Polynomial {
        DerivationAction::new(&self.total, &self.differential, true).apply(p)
    }

    pub fn base(&self) -> SullivanAlgebra {
        let algebra = Algebra::new(
            self.total.generators()[..self.base_len]
                .iter()
                .map(|g| (g.name.clone(), g.degree)),
        )
        .expect("prefix of a valid generator list");
        SullivanAlgebra {
            algebra,
            differential: self.differential[..self.base_len].to_vec(),
        }
    }

    /// The fibre algebra `(∧W, D̄)`: `D` with every term involving `V` dropped.
    pub fn fibre(&self) -> SullivanAlgebra {
        let algebra = Algebra::new(
            self.total.generators()[self.base_len..]
                .iter()
                .map(|g| (g.name.clone(), g.degree)),
        )
        .expect("suffix of a valid generator list");
        let shift = self.base_len;
        let differential = self.differential[self.base_len..]
            .iter()
            .map(|p| {
                let mut out = Polynomial::zero();
                for (m, c) in p.terms() {
                    if !m.involves_any(|i| i < shift) {
                        let pairs = m.exponents().iter().map(|&(i, e)| (i - shift, e)).collect();
                        out.add_term(crate::algebra::Monomial::from_sorted(pairs), c.clone());
                    }
                }
                out
            })
            .collect();
        SullivanAlgebra {
            algebra,
            differential,
        }
    }

    /// Whether the fibre generators form a minimal model of the fibre, i.e.
    /// `D̄` has no linear part.
    pub fn fibre_is_minimal(&self) -> bool {
        self.fibre().is_minimal()
    }

    pub fn total_cohomology(&self, max_degree: u32) -> Vec<usize> {
        cohomology_dims(&self.total, &self.differential, max_degree)
    }

    /// Structural and minimality checks, with minimality failures treated as
    /// errors.
    pub fn validate(&self) -> ValidationReport {
        self.validate_for(Usage::Endomorphism)
    }

    pub fn validate_for(&self, usage: Usage) -> ValidationReport {
        let alg = &self.total;
        let name = |i: usize| alg.generator(i).name.as_str();
        let mut report = ValidationReport::default();

        let mut degree = Vec::new();
        let mut closure = Vec::new();
        let mut square = Vec::new();
        let mut triangular = Vec::new();
        let mut relative_min = Vec::new();
        let mut base_min = Vec::new();
        for (g, dg) in self.differential.iter().enumerate() {
            let want = alg.generator(g).degree + 1;
            for (m, _) in dg.terms() {
                let got = alg.monomial_degree(m);
                if got != want {
                    degree.push(format!("D({}) has a term of degree {got}, expected {want}", name(g)));
                    break;
                }
            }
            if self.is_base(g) && dg.max_index().is_some_and(|i| !self.is_base(i)) {
                closure.push(format!("d({}) leaves the base algebra", name(g)));
            }
            if dg.max_index().is_some_and(|i| i >= g) {
                triangular.push(format!("D({}) involves a generator not declared before it", name(g)));
            }
            for (i, _) in dg.linear_terms() {
                if self.is_base(g) {
                    base_min.push(format!("d({}) has linear part in {}", name(g), name(i)));
                } else if !self.is_base(i) {
                    relative_min.push(format!("D({}) has linear part in fibre generator {}", name(g), name(i)));
                }
            }
        }
        let mut action = DerivationAction::new(alg, &self.differential, true);
        for (g, dg) in self.differential.iter().enumerate() {
            if !action.apply(dg).is_zero() {
                square.push(format!("D(D({})) != 0", name(g)));
            }
        }
        let minimality = match usage {
            Usage::Endomorphism => Status::Fail,
            Usage::MappingSpace => Status::Warn,
        };
        report.push("degree", degree, Status::Fail);
        report.push("base_closure", closure, Status::Fail);
        report.push("d_squared", square, Status::Fail);
        report.push("triangular", triangular, Status::Fail);
        report.push("relative_minimality", relative_min, minimality);
        report.push("base_minimality", base_min, minimality);
        report
    }

    /// Errors with the validation report unless the model is fit for `usage`.
    pub fn require(&self, usage: Usage) -> Result<()> {
        self.validate_for(usage).into_result().map(|_| ())
    }

    /// Splits `W = W₀ ⊕ W₁` along the linear part `D₀ : W → V`.
    pub fn linear_part_split(&self) -> WSplit {
        let n_w = self.fibre_len();
        let mut degrees: Vec<u32> = self.fibre_degrees().collect();
        degrees.sort_unstable();
        degrees.dedup();
        let mut blocks = Vec::new();
        let mut w0 = Vec::new();
        let mut w1 = Vec::new();
        for d in degrees {
            let w: Vec<usize> = (0..n_w)
                .filter(|&p| self.total.generator(self.fibre_index(p)).degree == d)
                .collect();
            let v: Vec<usize> = (0..self.base_len)
                .filter(|&i| self.total.generator(i).degree == d + 1)
                .collect();
            let columns: Vec<Vector> = w
                .iter()
                .map(|&p| {
                    let dw = &self.differential[self.fibre_index(p)];
                    v.iter()
                        .map(|&i| dw.coefficient(&crate::algebra::Monomial::generator(i)))
                        .collect()
                })
                .collect();
            let matrix = Matrix::from_columns(v.len(), &columns);
            let echelon = matrix.echelon();
            for &pivot in &echelon.pivots {
                w1.push(w[pivot]);
            }
            for k in matrix.kernel() {
                let mut full = vec![num_traits::Zero::zero(); n_w];
                for (local, x) in k.into_iter().enumerate() {
                    full[w[local]] = x;
                }
                w0.push(full);
            }
            blocks.push(LinearPartBlock {
                degree: d,
                fibre: w,
                base: v,
                matrix,
            });
        }
        w1.sort_unstable();
        WSplit { blocks, w0, w1 }
    }
}

/// `D₀` restricted to fibre degree `degree`: rows are base generators of
/// degree `degree + 1`, columns fibre generators of degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearPartBlock {
    pub degree: u32,
    /// Fibre positions (index into `W`).
    pub fibre: Vec<usize>,
    /// Base generator indices.
    pub base: Vec<usize>,
    pub matrix: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WSplit {
    pub blocks: Vec<LinearPartBlock>,
    /// Basis of `W₀ = ker D₀`, as coefficient vectors over `W`.
    pub w0: Vec<Vector>,
    /// Fibre positions spanning the complement `W₁`.
    pub w1: Vec<usize>,
}

impl WSplit {
    pub fn rank(&self) -> usize {
        self.w1.len()
    }
}

/// A DG morphism `A_f : ∧V⊗∧W → ∧V'⊗∧W'` given on generators.
#[derive(Clone, Debug)]
pub struct DGMorphism {
    source: Arc<RelativeModel>,
    target: Arc<RelativeModel>,
    values: Vec<Polynomial>,
}

impl DGMorphism {
    pub fn new(
        source: Arc<RelativeModel>,
        target: Arc<RelativeModel>,
        values: Vec<Polynomial>,
    ) -> Result<Self> {
        if values.len() != source.total().len() {
            return Err(Error::Shape(format!(
                "{} morphism values for {} source generators",
                values.len(),
                source.total().len()
            )));
        }
        for p in &values {
            target.total().check(p)?;
        }
        Ok(DGMorphism {
            source,
            target,
            values,
        })
    }

    pub fn identity(model: Arc<RelativeModel>) -> Self {
        let values = (0..model.total().len()).map(Polynomial::generator).collect();
        DGMorphism {
            source: model.clone(),
            target: model,
            values,
        }
    }

    pub fn source(&self) -> &Arc<RelativeModel> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RelativeModel> {
        &self.target
    }

    pub fn values(&self) -> &[Polynomial] {
        &self.values
    }

    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        MorphismAction::new(self.target.total(), &self.values).apply(p)
    }

    pub fn is_endomorphism(&self) -> bool {
        Arc::ptr_eq(&self.source, &self.target) || self.source == self.target
    }

    pub fn validate(&self) -> ValidationReport {
        let src = self.source.total();
        let tgt = &self.target;
        let mut report = ValidationReport::default();
        let mut degree = Vec::new();
        let mut chain = Vec::new();
        let mut base = Vec::new();
        let mut action = MorphismAction::new(tgt.total(), &self.values);
        for (g, value) in self.values.iter().enumerate() {
            let gen = src.generator(g);
            if value.terms().any(|(m, _)| tgt.total().monomial_degree(m) != gen.degree) {
                degree.push(format!("{} is not sent to degree {}", gen.name, gen.degree));
            }
            let lhs = action.apply(self.source.differential_of(g));
            let rhs = tgt.d(value);
            if lhs != rhs {
                chain.push(format!(
                    "A(D {}) = {} but D'(A {}) = {}",
                    gen.name,
                    tgt.total().format(&lhs),
                    gen.name,
                    tgt.total().format(&rhs)
                ));
            }
            if self.source.is_base(g) && value.max_index().is_some_and(|i| !tgt.is_base(i)) {
                base.push(format!("base generator {} leaves the target base", gen.name));
            }
        }
        report.push("degree", degree, Status::Fail);
        report.push("chain_map", chain, Status::Fail);
        report.push("base_compatible", base, Status::Fail);
        report
    }
}
