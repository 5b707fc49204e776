#![allow(dead_code)]

pub mod gen;
pub mod oracle;

use fibrewise::RelativeModel;

/// Models written out by hand, independent of the catalog builders.
pub fn hand_models() -> Vec<(&'static str, RelativeModel)> {
    let m = |base: &[(&str, u32)], fibre: &[(&str, u32)], d: &[(&str, &str)]| {
        RelativeModel::parse(base, fibre, d.iter().copied()).unwrap()
    };
    vec![
        ("s2_over_point", m(&[], &[("x", 2), ("y", 3)], &[("y", "x^2")])),
        ("s3_over_point", m(&[], &[("e", 3)], &[])),
        ("s3_over_s2", m(&[("x", 2), ("y", 3)], &[("w", 3)], &[("y", "x^2")])),
        (
            "hopf",
            m(
                &[("v4", 4), ("v7", 7)],
                &[("w3", 3), ("w3p", 3)],
                &[("v7", "v4^2"), ("w3p", "v4")],
            ),
        ),
        (
            "path_s2",
            m(
                &[("x", 2), ("y", 3)],
                &[("xbar", 1), ("ybar", 2)],
                &[("y", "x^2"), ("xbar", "x"), ("ybar", "y - xbar*x")],
            ),
        ),
        ("path_s3", m(&[("v", 3)], &[("vbar", 2)], &[("vbar", "v")])),
        (
            "s2_over_s2",
            m(
                &[("x", 2), ("y", 3)],
                &[("xp", 2), ("yp", 3)],
                &[("y", "x^2"), ("yp", "xp^2")],
            ),
        ),
        ("s3_over_s3", m(&[("a", 3)], &[("b", 3)], &[])),
        (
            "s5_over_cp2",
            m(&[("x", 2), ("y", 5)], &[("w", 5)], &[("y", "x^3")]),
        ),
        (
            "heisenberg",
            m(&[], &[("x", 2), ("y", 4), ("z", 6)], &[]),
        ),
        (
            "boundary_rich",
            m(&[("x", 2)], &[("a", 3), ("y", 4), ("z", 6)], &[("a", "x^2")]),
        ),
    ]
}
