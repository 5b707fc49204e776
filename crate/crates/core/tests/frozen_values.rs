//! Homology dimensions frozen from the brute-force oracle, checked against
//! both the oracle and the engine.

mod common;

use common::oracle::Oracle;
use fibrewise::derivations::{DerivationComplex, FullComplex};
use fibrewise::esharp::h0_sharp;
use fibrewise::homology::{derivation_homology, fibre_identity_homology};
use fibrewise::{DegreeWindow, RelativeModel};

struct Frozen {
    name: &'static str,
    /// `H_n` for `n = 1..=hi`.
    full: &'static [usize],
    autf: &'static [usize],
    /// `dim Der^n` for `n = -1..`.
    der: &'static [usize],
    h0_sharp: usize,
}

const FROZEN: &[Frozen] = &[
    Frozen { name: "s2_over_point", full: &[0, 0, 1, 0, 0, 0], autf: &[0, 0, 0, 0, 0, 0], der: &[2, 2, 1, 1, 1, 0, 0, 0], h0_sharp: 0 },
    Frozen { name: "s3_over_point", full: &[0, 0, 1, 0, 0, 0], autf: &[0, 0, 0, 0, 0, 0], der: &[0, 1, 0, 0, 1, 0, 0, 0], h0_sharp: 0 },
    Frozen { name: "s3_over_s2", full: &[1, 0, 1, 0, 0, 0], autf: &[1, 0, 0, 0, 0, 0], der: &[1, 2, 1, 0, 1, 0, 0, 0], h0_sharp: 0 },
    Frozen {
        name: "hopf",
        full: &[0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        autf: &[0; 14],
        der: &[2, 4, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        h0_sharp: 1,
    },
    Frozen { name: "path_s2", full: &[1, 1, 0, 0, 0, 0], autf: &[0; 6], der: &[5, 3, 2, 1, 0, 0, 0, 0], h0_sharp: 0 },
    Frozen { name: "path_s3", full: &[0, 1, 0, 0, 0, 0], autf: &[0; 6], der: &[1, 1, 0, 1, 0, 0, 0, 0], h0_sharp: 0 },
    Frozen { name: "s2_over_s2", full: &[1, 0, 1, 0, 0, 0], autf: &[1, 0, 0, 0, 0, 0], der: &[5, 4, 2, 1, 1, 0, 0, 0], h0_sharp: 0 },
    Frozen { name: "s3_over_s3", full: &[0, 0, 1, 0, 0, 0], autf: &[0; 6], der: &[0, 2, 0, 0, 1, 0, 0, 0], h0_sharp: 1 },
    Frozen {
        name: "s5_over_cp2",
        full: &[1, 0, 1, 0, 1, 0, 0, 0, 0, 0],
        autf: &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0],
        der: &[1, 2, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0],
        h0_sharp: 0,
    },
    Frozen {
        name: "heisenberg",
        full: &[0, 4, 0, 2, 0, 1, 0, 0, 0, 0, 0, 0],
        autf: &[0; 12],
        der: &[0, 6, 0, 4, 0, 2, 0, 1, 0, 0, 0, 0, 0, 0],
        h0_sharp: 3,
    },
    Frozen {
        name: "boundary_rich",
        full: &[1, 2, 1, 2, 0, 1, 0, 0, 0, 0, 0, 0],
        autf: &[1, 2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
        der: &[5, 6, 3, 3, 2, 2, 0, 1, 0, 0, 0, 0, 0, 0],
        h0_sharp: 1,
    },
];

fn models() -> Vec<(&'static Frozen, RelativeModel)> {
    let hand = common::hand_models();
    assert_eq!(hand.len(), FROZEN.len());
    FROZEN
        .iter()
        .map(|f| {
            let (_, m) = hand.iter().find(|(n, _)| *n == f.name).expect("frozen model exists");
            (f, m.clone())
        })
        .collect()
}

fn window(f: &Frozen) -> DegreeWindow {
    DegreeWindow::new(1, f.full.len() as i32).unwrap()
}

#[test]
fn oracle_reproduces_frozen_values() {
    for (f, m) in models() {
        let o = Oracle::new(&m);
        let hi = f.full.len() as i64;
        assert_eq!((1..=hi).map(|n| o.homology(n)).collect::<Vec<_>>(), f.full, "{}", f.name);
        assert_eq!((1..=hi).map(|n| o.fibre_identity_homology(n)).collect::<Vec<_>>(), f.autf, "{}", f.name);
        assert_eq!((-1..=hi).map(|n| o.der_dim(n)).collect::<Vec<_>>(), f.der, "{}", f.name);
        assert_eq!(o.h0_sharp(), f.h0_sharp, "{}", f.name);
    }
}

#[test]
fn engine_homology_matches() {
    for (f, m) in models() {
        let r = derivation_homology(&m, window(f)).unwrap();
        let dims: Vec<usize> = r.degrees.iter().map(|d| d.dim()).collect();
        assert_eq!(dims, f.full, "{}", f.name);
        assert!(r.complete, "{}", f.name);
    }
}

#[test]
fn engine_fibre_identity_homology_matches() {
    for (f, m) in models() {
        let r = fibre_identity_homology(&m, window(f)).unwrap();
        let dims: Vec<usize> = r.degrees.iter().map(|d| d.dim()).collect();
        assert_eq!(dims, f.autf, "{}", f.name);
    }
}

#[test]
fn engine_derivation_dimensions_match() {
    for (f, m) in models() {
        let c = FullComplex::new(&m);
        let dims: Vec<usize> = (-1..f.der.len() as i32 - 1).map(|n| c.space(n).dim()).collect();
        assert_eq!(dims, f.der, "{}", f.name);
    }
}

#[test]
fn engine_h0_sharp_matches() {
    for (f, m) in models() {
        assert_eq!(h0_sharp(&m).unwrap().dimension(), f.h0_sharp, "{}", f.name);
    }
}

#[test]
#[ignore]
fn print_oracle_values() {
    for (name, model) in common::hand_models() {
        let o = Oracle::new(&model);
        let hi = 2 * model.total().max_degree() as i64;
        let full: Vec<_> = (1..=hi).map(|n| o.homology(n)).collect();
        let autf: Vec<_> = (1..=hi).map(|n| o.fibre_identity_homology(n)).collect();
        let der: Vec<_> = (-1..=hi).map(|n| o.der_dim(n)).collect();
        println!("{name}: window 1..={hi}\n  H = {full:?}\n  autF = {autf:?}\n  Der(-1..) = {der:?}\n  H0sharp = {}", o.h0_sharp());
    }
}
