//! Exact homology of derivation complexes over a degree window.
//!
//! For each degree `n` the engine assembles the matrices of
//! `𝒟 : Der^{n+1} → Der^n → Der^{n−1}` in elementary bases, takes the kernel
//! in reduced row-echelon form as the cycle basis, and picks representatives
//! greedily against the boundary space. The same quotient data re-expresses
//! brackets of representatives in the homology basis.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::Rational;
use crate::derivations::{
    ComplexKind, Derivation, DerivationComplex, DerivationSpace, FibreIdentityComplex,
    FullComplex, MappingComplex,
};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Quotient, Vector};
use crate::sullivan::{DGMorphism, RelativeModel, Usage};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeWindow {
    lo: i32,
    hi: i32,
}

impl DegreeWindow {
    pub fn new(lo: i32, hi: i32) -> Result<Self> {
        if lo < 1 {
            return Err(Error::Precondition(format!(
                "window must start at degree 1 or above, got {lo}"
            )));
        }
        if hi < lo {
            return Err(Error::Precondition(format!("empty window {lo}:{hi}")));
        }
        Ok(DegreeWindow { lo, hi })
    }

    /// `[1, 2·(largest generator degree)]`.
    pub fn default_for(model: &RelativeModel) -> Self {
        let hi = (2 * model.total().max_degree() as i32).max(1);
        DegreeWindow { lo: 1, hi }
    }

    /// Parses `LO:HI`.
    pub fn parse(text: &str) -> Result<Self> {
        let (lo, hi) = text
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("window `{text}` is not of the form LO:HI")))?;
        let num = |s: &str| {
            s.trim()
                .parse::<i32>()
                .map_err(|_| Error::Parse(format!("bad window bound `{s}`")))
        };
        DegreeWindow::new(num(lo)?, num(hi)?)
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.hi
    }

    pub fn contains(&self, n: i32) -> bool {
        (self.lo..=self.hi).contains(&n)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> {
        self.lo..=self.hi
    }
}

impl fmt::Display for DegreeWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

#[derive(Clone, Debug)]
pub struct DegreeHomology {
    pub degree: i32,
    /// `dim Der^n`
    pub chain_dim: usize,
    pub cycles_dim: usize,
    /// `rank(𝒟 : Der^{n+1} → Der^n)`
    pub boundaries_dim: usize,
    pub representatives: Vec<Derivation>,
    space: DerivationSpace,
    quotient: Quotient,
}

impl DegreeHomology {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Homology-basis coordinates of a cycle, `None` if it is not a cycle of
    /// this degree.
    pub fn class_of(&self, theta: &Derivation) -> Option<Vector> {
        let v = self.space.coordinates(theta)?;
        self.quotient.coordinates(&v)
    }
}

/// `[α_i, α_j] = Σ c·α_k` over the global homology basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketConstant {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coefficient: Rational,
}

#[derive(Clone, Debug)]
pub struct HomologyReport {
    pub kind: ComplexKind,
    pub window: DegreeWindow,
    pub degrees: Vec<DegreeHomology>,
    /// `Der^n = 0` for every `n > window.hi`, so nothing exists above the window.
    pub complete: bool,
    pub brackets: Option<Vec<BracketConstant>>,
}

impl HomologyReport {
    pub fn degree(&self, n: i32) -> Option<&DegreeHomology> {
        self.degrees.iter().find(|d| d.degree == n)
    }

    pub fn dim(&self, n: i32) -> usize {
        self.degree(n).map_or(0, DegreeHomology::dim)
    }

    /// Nonzero dimensions as `(degree, dim)` pairs.
    pub fn nonzero_dims(&self) -> Vec<(i32, usize)> {
        self.degrees
            .iter()
            .filter(|d| d.dim() > 0)
            .map(|d| (d.degree, d.dim()))
            .collect()
    }

    pub fn total_dim(&self) -> usize {
        self.degrees.iter().map(DegreeHomology::dim).sum()
    }

    /// Global basis: `(degree, index within degree)` in ascending degree.
    pub fn basis(&self) -> Vec<(i32, usize)> {
        self.degrees
            .iter()
            .flat_map(|d| (0..d.dim()).map(move |k| (d.degree, k)))
            .collect()
    }

    pub fn representative(&self, global: usize) -> &Derivation {
        let (n, k) = self.basis()[global];
        &self.degree(n).expect("basis degree").representatives[k]
    }

    fn offset(&self, n: i32) -> usize {
        self.degrees
            .iter()
            .take_while(|d| d.degree < n)
            .map(DegreeHomology::dim)
            .sum()
    }

    /// Global coordinates of a cycle of degree `n`.
    pub fn class_of(&self, theta: &Derivation) -> Option<Vector> {
        let local = self.degree(theta.degree())?.class_of(theta)?;
        let mut global = vec![Rational::zero(); self.total_dim()];
        let offset = self.offset(theta.degree());
        for (k, c) in local.into_iter().enumerate() {
            global[offset + k] = c;
        }
        Some(global)
    }
}

fn differential_matrix<C: DerivationComplex + ?Sized>(
    complex: &C,
    source: &DerivationSpace,
    target: &DerivationSpace,
) -> Result<Matrix> {
    let columns: Vec<Vector> = (0..source.dim())
        .map(|j| {
            let image = complex.differential(&source.element(j));
            target.coordinates(&image).ok_or_else(|| {
                Error::Internal(format!(
                    "differential of a degree-{} basis element leaves the complex",
                    source.degree()
                ))
            })
        })
        .collect::<Result<_>>()?;
    Ok(Matrix::from_columns(target.dim(), &columns))
}

/// Matrix of `𝒟 : Der^n → Der^{n−1}` in the elementary bases.
pub fn differential_matrix_at<C: DerivationComplex + ?Sized>(complex: &C, n: i32) -> Result<Matrix> {
    differential_matrix(complex, &complex.space(n), &complex.space(n - 1))
}

/// Homology of `complex` in every degree of `window`, without brackets.
pub fn homology<C: DerivationComplex + ?Sized>(complex: &C, window: DegreeWindow) -> Result<HomologyReport> {
    let spaces: Vec<DerivationSpace> = (window.lo - 1..=window.hi + 1)
        .map(|n| complex.space(n))
        .collect();
    let space = |n: i32| &spaces[(n - window.lo + 1) as usize];
    // matrices[k] is 𝒟 : Der^{lo+k} → Der^{lo+k−1}, k = 0..=hi−lo+1
    let matrices: Vec<Matrix> = std::thread::scope(|scope| {
        let handles: Vec<_> = (window.lo..=window.hi + 1)
            .map(|n| scope.spawn(move || differential_matrix(complex, space(n), space(n - 1))))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("differential worker panicked"))
            .collect::<Result<Vec<_>>>()
    })?;

    let mut degrees = Vec::new();
    for n in window.degrees() {
        let k = (n - window.lo) as usize;
        let here = space(n).clone();
        let outgoing = &matrices[k];
        let incoming = &matrices[k + 1];
        let cycles = outgoing.kernel();
        let boundaries: Vec<Vector> = (0..incoming.cols()).map(|j| incoming.column(j)).collect();
        let quotient = Quotient::new(here.dim(), &cycles, &boundaries);
        let boundaries_dim = cycles.len() - quotient.dimension();
        let representatives = quotient
            .representatives()
            .iter()
            .map(|v| here.combination(v))
            .collect();
        degrees.push(DegreeHomology {
            degree: n,
            chain_dim: here.dim(),
            cycles_dim: cycles.len(),
            boundaries_dim,
            representatives,
            space: here,
            quotient,
        });
    }
    Ok(HomologyReport {
        kind: complex.kind(),
        window,
        degrees,
        complete: window.hi >= complex.top_degree(),
        brackets: None,
    })
}

/// Structure constants of the bracket induced on homology, for every pair of
/// basis classes whose bracket degree lies in the window.
pub fn induced_bracket<C: DerivationComplex + ?Sized>(
    complex: &C,
    report: &HomologyReport,
) -> Result<Vec<BracketConstant>> {
    if report.kind == ComplexKind::Mapping {
        return Err(Error::Unsupported(
            "mapping-space homology carries no induced bracket".into(),
        ));
    }
    let basis = report.basis();
    let mut out = Vec::new();
    for (i, &(ni, _)) in basis.iter().enumerate() {
        for (j, &(nj, _)) in basis.iter().enumerate() {
            if !report.window.contains(ni + nj) {
                continue;
            }
            let b = complex.bracket(report.representative(i), report.representative(j))?;
            if b.is_zero() {
                continue;
            }
            let coords = report.class_of(&b).ok_or_else(|| {
                Error::Internal("bracket of homology representatives is not a cycle".into())
            })?;
            for (k, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    out.push(BracketConstant {
                        i,
                        j,
                        k,
                        coefficient: c,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Homology of `Der_{∧V}(∧V⊗∧W)` with its induced bracket.
pub fn derivation_homology(model: &RelativeModel, window: DegreeWindow) -> Result<HomologyReport> {
    model.require(Usage::Endomorphism)?;
    let complex = FullComplex::new(model);
    let mut report = homology(&complex, window)?;
    report.brackets = Some(induced_bracket(&complex, &report)?);
    Ok(report)
}

/// Homology of the subcomplex of derivations with values in `∧⁺V⊗∧W`, with
/// its induced bracket.
pub fn fibre_identity_homology(model: &RelativeModel, window: DegreeWindow) -> Result<HomologyReport> {
    model.require(Usage::Endomorphism)?;
    let complex = FibreIdentityComplex::new(model);
    let mut report = homology(&complex, window)?;
    report.brackets = Some(induced_bracket(&complex, &report)?);
    Ok(report)
}

/// Homology of the φ-derivation complex of a fibrewise map.
pub fn mapping_homology(morphism: &DGMorphism, window: DegreeWindow) -> Result<HomologyReport> {
    require_morphism(morphism)?;
    homology(&MappingComplex::new(morphism), window)
}

fn require_morphism(morphism: &DGMorphism) -> Result<()> {
    morphism.source().require(Usage::MappingSpace)?;
    morphism.target().require(Usage::MappingSpace)?;
    morphism.validate().into_result().map(|_| ())
}

/// Rank of `π₁` of the mapping space: `dim H₁` of the (φ-)derivation complex.
pub fn pi1_rank(model: &RelativeModel, morphism: Option<&DGMorphism>) -> Result<usize> {
    let window = DegreeWindow::new(1, 1)?;
    let report = match morphism {
        Some(f) => mapping_homology(f, window)?,
        None => {
            let f = DGMorphism::identity(Arc::new(model.clone()));
            mapping_homology(&f, window)?
        }
    };
    Ok(report.dim(1))
}
