mod common;

use std::sync::Arc;

use fibrewise::derivations::{apply, DerivationComplex, FullComplex};
use fibrewise::homology::{
    derivation_homology, differential_matrix_at, fibre_identity_homology, mapping_homology, pi1_rank,
};
use fibrewise::{DGMorphism, DegreeWindow, Polynomial, Rational, RelativeModel};
use num_traits::Zero;

fn model(name: &str) -> RelativeModel {
    common::hand_models()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, m)| m)
        .unwrap()
}

fn default_dims(m: &RelativeModel) -> Vec<usize> {
    derivation_homology(m, DegreeWindow::default_for(m))
        .unwrap()
        .degrees
        .iter()
        .map(|d| d.dim())
        .collect()
}

#[test]
fn differential_matrix_by_brute_force() {
    for (name, m) in common::hand_models() {
        let c = FullComplex::new(&m);
        for n in -1..=m.max_fibre_degree() as i32 + 1 {
            let matrix = differential_matrix_at(&c, n).unwrap();
            let source = c.space(n);
            let target = c.space(n - 1);
            let sign = if n.rem_euclid(2) == 1 { 1 } else { -1 };
            for j in 0..source.dim() {
                let theta = source.element(j);
                // D∘θ − (−1)^n θ∘D evaluated on each fibre generator.
                let values: Vec<Polynomial> = (0..m.fibre_len())
                    .map(|pos| {
                        let w = Polynomial::generator(m.fibre_index(pos));
                        let mut v = m.d(&apply(&m, &theta, &w));
                        v.add_scaled(&apply(&m, &theta, &m.d(&w)), &Rational::from_integer(sign.into()));
                        v
                    })
                    .collect();
                let image = fibrewise::Derivation::new(n - 1, values);
                assert_eq!(target.coordinates(&image).unwrap(), matrix.column(j), "{name} n={n} j={j}");
            }
        }
    }
}

#[test]
fn fibre_identity_is_a_subcomplex_with_smaller_homology_here() {
    for (name, m) in common::hand_models() {
        let w = DegreeWindow::default_for(&m);
        let full = derivation_homology(&m, w).unwrap();
        let sub = fibre_identity_homology(&m, w).unwrap();
        for (a, b) in full.degrees.iter().zip(&sub.degrees) {
            assert!(b.chain_dim <= a.chain_dim, "{name}");
        }
    }
}

#[test]
fn generator_order_does_not_matter() {
    let swapped = [
        (
            "hopf",
            RelativeModel::parse(
                &[("v4", 4), ("v7", 7)],
                &[("w3p", 3), ("w3", 3)],
                [("v7", "v4^2"), ("w3p", "v4")],
            )
            .unwrap(),
        ),
        (
            "heisenberg",
            RelativeModel::parse::<&str>(&[], &[("z", 6), ("x", 2), ("y", 4)], []).unwrap(),
        ),
        (
            "boundary_rich",
            RelativeModel::parse(&[("x", 2)], &[("z", 6), ("y", 4), ("a", 3)], [("a", "x^2")]).unwrap(),
        ),
    ];
    for (name, m) in swapped {
        let original = model(name);
        assert_eq!(default_dims(&m), default_dims(&original), "{name}");
        assert_eq!(
            fibrewise::esharp::h0_sharp(&m).unwrap().dimension(),
            fibrewise::esharp::h0_sharp(&original).unwrap().dimension(),
            "{name}"
        );
    }
}

#[test]
fn narrower_windows_agree() {
    for (name, m) in common::hand_models() {
        let wide = derivation_homology(&m, DegreeWindow::default_for(&m)).unwrap();
        let narrow = derivation_homology(&m, DegreeWindow::new(2, 4).unwrap()).unwrap();
        for d in &narrow.degrees {
            assert_eq!(d.dim(), wide.dim(d.degree), "{name}");
        }
    }
}

#[test]
fn identity_morphism_recovers_the_full_complex() {
    for (name, m) in common::hand_models() {
        let w = DegreeWindow::default_for(&m);
        let f = DGMorphism::identity(Arc::new(m.clone()));
        let mapping = mapping_homology(&f, w).unwrap();
        assert!(mapping.brackets.is_none());
        let dims: Vec<usize> = mapping.degrees.iter().map(|d| d.dim()).collect();
        assert_eq!(dims, default_dims(&m), "{name}");
    }
}

#[test]
fn pi1_ranks() {
    assert_eq!(pi1_rank(&model("hopf"), None).unwrap(), 0);
    assert_eq!(pi1_rank(&model("s3_over_s2"), None).unwrap(), 1);
    assert_eq!(pi1_rank(&model("path_s2"), None).unwrap(), 1);
}

#[test]
fn mapping_homology_along_a_nontrivial_map() {
    // Heisenberg fibre with D = 0: every φ is a chain map; 𝒟 vanishes, so
    // homology is the whole φ-derivation space.
    let m = Arc::new(model("heisenberg"));
    let v = |s: &str| m.total().parse(s).unwrap();
    let f = DGMorphism::new(m.clone(), m.clone(), vec![v("2*x"), v("y + x^2"), v("z")]).unwrap();
    let r = mapping_homology(&f, DegreeWindow::new(1, 6).unwrap()).unwrap();
    let c = FullComplex::new(&m);
    for d in &r.degrees {
        assert_eq!(d.dim(), c.space(d.degree).dim());
    }
}

#[test]
fn path_space_bracket_is_nonzero() {
    let m = model("path_s2");
    let r = derivation_homology(&m, DegreeWindow::default_for(&m)).unwrap();
    let b = r.brackets.unwrap();
    assert!(b.iter().any(|c| c.i == 0 && c.j == 0 && c.k == 1 && !c.coefficient.is_zero()));
}

#[test]
fn odd_sphere_product_is_abelian() {
    let m = model("s3_over_s2");
    let r = derivation_homology(&m, DegreeWindow::new(1, 3).unwrap()).unwrap();
    assert_eq!(r.nonzero_dims(), vec![(1, 1), (3, 1)]);
    assert!(r.brackets.unwrap().is_empty());
}
