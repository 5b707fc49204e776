//! Quantities assembled from derivation homology: the Samelson Lie algebra
//! with its nilpotency within a window, the fibre-degree bound on homotopical
//! nilpotency, and predicted dimensions for odd-sphere fibres and path spaces.

use num_traits::Zero;

use crate::algebra::Rational;
use crate::error::Result;
use crate::homology::{derivation_homology, DegreeWindow, HomologyReport};
use crate::linalg::{Matrix, Vector};
use crate::sullivan::RelativeModel;

#[derive(Clone, Debug)]
pub struct SamelsonReport {
    pub homology: HomologyReport,
    /// Length of the lower central series within the window.
    pub nilpotency_lower_bound: usize,
    /// The window reaches every nonzero derivation degree, so the bound is
    /// the nilpotency of the whole Lie algebra.
    pub exact: bool,
    pub rationally_homotopy_abelian_within_window: bool,
}

/// Derivation homology, induced bracket and nilpotency analysis.
pub fn samelson_lie_algebra(model: &RelativeModel, window: DegreeWindow) -> Result<SamelsonReport> {
    let homology = derivation_homology(model, window)?;
    let nilpotency_lower_bound = nilpotency_within_window(&homology);
    let abelian = homology
        .brackets
        .as_ref()
        .is_none_or(|b| b.iter().all(|c| c.coefficient.is_zero()));
    Ok(SamelsonReport {
        exact: homology.complete,
        rationally_homotopy_abelian_within_window: abelian,
        nilpotency_lower_bound,
        homology,
    })
}

/// Bracket of two homology vectors through the structure constants.
fn bracket_vectors(report: &HomologyReport, x: &[Rational], y: &[Rational]) -> Vector {
    let mut out = vec![Rational::zero(); report.total_dim()];
    for c in report.brackets.iter().flatten() {
        if x[c.i].is_zero() || y[c.j].is_zero() {
            continue;
        }
        out[c.k] += &x[c.i] * &y[c.j] * &c.coefficient;
    }
    out
}

/// Number of nonzero terms of the lower central series `γ₁ = H`,
/// `γ_{k+1} = [H, γ_k]`, using only brackets that land inside the window.
pub fn nilpotency_within_window(report: &HomologyReport) -> usize {
    let dim = report.total_dim();
    if dim == 0 {
        return 0;
    }
    let unit = |i: usize| {
        let mut v = vec![Rational::zero(); dim];
        v[i] = num_traits::One::one();
        v
    };
    let mut current: Vec<Vector> = (0..dim).map(unit).collect();
    let mut length = 1;
    loop {
        let products: Vec<Vector> = (0..dim)
            .flat_map(|i| {
                let e = unit(i);
                current
                    .iter()
                    .map(|g| bracket_vectors(report, &e, g))
                    .collect::<Vec<_>>()
            })
            .collect();
        let next = Matrix::from_columns(dim, &products).column_basis();
        if next.is_empty() || next.len() == current.len() {
            return length;
        }
        length += 1;
        current = next;
    }
}

/// `card{n | Wⁿ ≠ 0}`, which bounds homotopical nilpotency when `W` is the
/// minimal model of the fibre.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HnilBound {
    pub bound: usize,
    /// `false` when `∧W` with the base set to zero is not minimal, in which
    /// case `W` overcounts the fibre's rational homotopy.
    pub fibre_minimal: bool,
}

pub fn hnil_fibre_bound(model: &RelativeModel) -> HnilBound {
    let mut degrees: Vec<u32> = model.fibre_degrees().collect();
    degrees.sort_unstable();
    degrees.dedup();
    HnilBound {
        bound: degrees.len(),
        fibre_minimal: model.fibre_is_minimal(),
    }
}

/// Observed and predicted homology dimension in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionCheck {
    pub degree: i32,
    pub expected: usize,
    pub actual: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictionReport {
    pub checks: Vec<DimensionCheck>,
    pub brackets_vanish: bool,
}

impl PredictionReport {
    pub fn dims_match(&self) -> bool {
        self.checks.iter().all(|c| c.expected == c.actual)
    }
}

fn predicted(report: &HomologyReport, expected: impl Fn(i32) -> usize) -> PredictionReport {
    PredictionReport {
        checks: report
            .degrees
            .iter()
            .map(|d| DimensionCheck {
                degree: d.degree,
                expected: expected(d.degree),
                actual: d.dim(),
            })
            .collect(),
        brackets_vanish: report
            .brackets
            .as_ref()
            .is_none_or(|b| b.iter().all(|c| c.coefficient.is_zero())),
    }
}

/// For a fibre `S^{2n+1}`: `dim H_q = dim H^{2n+1−q}(B)`, with the base
/// cohomology computed from the base model.
pub fn odd_sphere_prediction(model: &RelativeModel, sphere_dim: u32, report: &HomologyReport) -> PredictionReport {
    let cohomology = model.base().cohomology(sphere_dim);
    predicted(report, |q| {
        let k = sphere_dim as i32 - q;
        if k < 0 {
            0
        } else {
            cohomology[k as usize]
        }
    })
}

/// For a path-space fibration over `B`: `dim H_q = dim π_{q+1}(B)⊗Q`, read off
/// the base minimal model's generators.
pub fn path_space_prediction(model: &RelativeModel, report: &HomologyReport) -> PredictionReport {
    let base = model.base();
    predicted(report, |q| {
        base.algebra()
            .generators()
            .iter()
            .filter(|g| g.degree as i32 == q + 1)
            .count()
    })
}
