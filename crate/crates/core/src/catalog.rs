//! Built-in relative models: the S⁷×S³ → S⁴ example, path-space fibrations,
//! spheres and projective spaces over a point, and trivial products.
//!
//! Keys: `hopf_s7s3_s4`, `pathspace_s2`, `pathspace_odd_sphere:N`,
//! `sphere:N`, `cpn:N`, `product:B/F` with `B`, `F` among `point`,
//! `sphereN`, `cpnN`.

use crate::error::{Error, Result};
use crate::sullivan::{RelativeModel, Usage};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CatalogFlags {
    /// The fibre is `S^n` for this odd `n`.
    pub odd_sphere_fibre: Option<u32>,
    /// Set by construction; the artifact checks the consequences, not the
    /// hypothesis.
    pub injective_i_sharp: bool,
    pub fibre_minimal_w: bool,
    pub path_space: bool,
}

/// Golden homology dimensions with their source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    pub window: (i32, i32),
    /// Nonzero `(degree, dim)` pairs; all other degrees in the window vanish.
    pub dims: Vec<(i32, usize)>,
    pub provenance: &'static str,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub key: String,
    pub model: RelativeModel,
    pub flags: CatalogFlags,
    pub expected: Option<Expected>,
}

/// Keys built by [`list`].
const DEFAULT_KEYS: &[&str] = &[
    "hopf_s7s3_s4",
    "pathspace_s2",
    "pathspace_odd_sphere:3",
    "pathspace_odd_sphere:5",
    "sphere:2",
    "sphere:3",
    "sphere:4",
    "cpn:2",
    "product:sphere2/sphere3",
    "product:sphere2/sphere2",
    "product:sphere3/sphere3",
    "product:sphere4/sphere3",
    "product:cpn2/sphere5",
    "product:sphere2/point",
];

pub fn keys() -> &'static [&'static str] {
    DEFAULT_KEYS
}

/// Every default entry.
pub fn list() -> Vec<CatalogEntry> {
    DEFAULT_KEYS
        .iter()
        .map(|k| build(k).expect("default catalog entries build"))
        .collect()
}

type Gens = Vec<(String, u32)>;
type Diff = Vec<(String, String)>;

/// A space given by its minimal model.
struct Piece {
    gens: Gens,
    diff: Diff,
    odd_sphere: Option<u32>,
}

fn parse_param(text: &str, what: &str) -> Result<u32> {
    text.parse::<u32>()
        .map_err(|_| Error::Precondition(format!("{what} expects a positive integer, got `{text}`")))
}

fn sphere_piece(n: u32) -> Result<Piece> {
    if n < 2 {
        return Err(Error::Precondition(format!("sphere dimension must be at least 2, got {n}")));
    }
    Ok(if n % 2 == 1 {
        Piece {
            gens: vec![(format!("e{n}"), n)],
            diff: vec![],
            odd_sphere: Some(n),
        }
    } else {
        let (x, y) = (format!("x{n}"), format!("y{}", 2 * n - 1));
        Piece {
            gens: vec![(x.clone(), n), (y.clone(), 2 * n - 1)],
            diff: vec![(y, format!("{x}^2"))],
            odd_sphere: None,
        }
    })
}

fn cpn_piece(n: u32) -> Result<Piece> {
    if n < 1 {
        return Err(Error::Precondition("cpn expects n ≥ 1".into()));
    }
    let y = format!("y{}", 2 * n + 1);
    Ok(Piece {
        gens: vec![("x2".into(), 2), (y.clone(), 2 * n + 1)],
        diff: vec![(y, format!("x2^{}", n + 1))],
        odd_sphere: None,
    })
}

/// `point`, `sphereN` / `sphere:N`, `cpnN` / `cpn:N`.
fn piece(spec: &str) -> Result<Piece> {
    if spec == "point" {
        return Ok(Piece {
            gens: vec![],
            diff: vec![],
            odd_sphere: None,
        });
    }
    let spec = spec.replace(':', "");
    if let Some(n) = spec.strip_prefix("sphere") {
        return sphere_piece(parse_param(n, "sphere")?);
    }
    if let Some(n) = spec.strip_prefix("cpn") {
        return cpn_piece(parse_param(n, "cpn")?);
    }
    Err(Error::UnknownCatalogKey(spec))
}

fn assemble(base: &Piece, fibre: &Piece) -> Result<RelativeModel> {
    let base_names: Vec<&str> = base.gens.iter().map(|(n, _)| n.as_str()).collect();
    let clash = fibre.gens.iter().any(|(n, _)| base_names.contains(&n.as_str()));
    let rename = |name: &str| {
        if clash {
            format!("{name}p")
        } else {
            name.to_string()
        }
    };
    let fibre_gens: Gens = fibre.gens.iter().map(|(n, d)| (rename(n), *d)).collect();
    let mut diff: Diff = base.diff.clone();
    for (g, value) in &fibre.diff {
        let mut value = value.clone();
        if clash {
            for (n, _) in &fibre.gens {
                value = value.replace(n.as_str(), &rename(n));
            }
        }
        diff.push((rename(g), value));
    }
    RelativeModel::parse(
        &base.gens,
        &fibre_gens,
        diff.iter().map(|(g, v)| (g.as_str(), v.as_str())),
    )
}

fn fixed(base: &[(&str, u32)], fibre: &[(&str, u32)], diff: &[(&str, &str)]) -> RelativeModel {
    RelativeModel::parse(base, fibre, diff.iter().copied()).expect("hardcoded model parses")
}

/// Builds the entry for `key`.
pub fn build(key: &str) -> Result<CatalogEntry> {
    let key = key.trim();
    let (name, param) = match key.split_once(':') {
        Some((n, p)) => (n, Some(p)),
        None => (key, None),
    };
    let mut flags = CatalogFlags::default();
    let model = match (name, param) {
        ("hopf_s7s3_s4", None) => fixed(
            &[("v4", 4), ("v7", 7)],
            &[("w3", 3), ("w3p", 3)],
            &[("v7", "v4^2"), ("w3p", "v4")],
        ),
        ("pathspace_s2", None) => {
            flags.path_space = true;
            fixed(
                &[("x", 2), ("y", 3)],
                &[("xbar", 1), ("ybar", 2)],
                &[("y", "x^2"), ("xbar", "x"), ("ybar", "y - xbar*x")],
            )
        }
        ("pathspace_odd_sphere", Some(p)) => {
            let n = parse_param(p, "pathspace_odd_sphere")?;
            if n < 3 || n % 2 == 0 {
                return Err(Error::Precondition(format!(
                    "pathspace_odd_sphere expects an odd dimension ≥ 3, got {n}"
                )));
            }
            flags.path_space = true;
            fixed(&[("v", n)], &[("vbar", n - 1)], &[("vbar", "v")])
        }
        ("sphere", Some(_)) | ("cpn", Some(_)) => {
            let fibre = piece(key)?;
            flags.odd_sphere_fibre = fibre.odd_sphere;
            flags.injective_i_sharp = fibre.diff.is_empty();
            assemble(&piece("point")?, &fibre)?
        }
        ("product", Some(p)) => {
            let (b, f) = p.split_once('/').ok_or_else(|| {
                Error::Precondition(format!("product expects BASE/FIBRE, got `{p}`"))
            })?;
            let (base, fibre) = (piece(b)?, piece(f)?);
            flags.odd_sphere_fibre = fibre.odd_sphere;
            flags.injective_i_sharp = fibre.diff.is_empty();
            assemble(&base, &fibre)?
        }
        _ => return Err(Error::UnknownCatalogKey(key.to_string())),
    };
    model.require(Usage::Endomorphism).map_err(|e| match e {
        Error::Validation(r) => Error::Internal(format!("catalog entry `{key}` is invalid:\n{r}")),
        other => other,
    })?;
    flags.fibre_minimal_w = model.fibre_is_minimal();
    Ok(CatalogEntry {
        key: key.to_string(),
        expected: expected(key),
        model,
        flags,
    })
}

/// Golden dimensions certified by the brute-force oracle over the default
/// window.
fn expected(key: &str) -> Option<Expected> {
    let (window, dims): ((i32, i32), &[(i32, usize)]) = match key {
        "hopf_s7s3_s4" => ((1, 14), &[(3, 2)]),
        "pathspace_s2" => ((1, 6), &[(1, 1), (2, 1)]),
        "pathspace_odd_sphere:3" => ((1, 6), &[(2, 1)]),
        "sphere:2" => ((1, 6), &[(3, 1)]),
        "sphere:3" => ((1, 6), &[(3, 1)]),
        "product:sphere2/sphere3" => ((1, 6), &[(1, 1), (3, 1)]),
        "product:sphere2/sphere2" => ((1, 6), &[(1, 1), (3, 1)]),
        "product:sphere3/sphere3" => ((1, 6), &[(3, 1)]),
        "product:cpn2/sphere5" => ((1, 10), &[(1, 1), (3, 1), (5, 1)]),
        _ => return None,
    };
    Some(Expected {
        window,
        dims: dims.to_vec(),
        provenance: "oracle",
    })
}

/// `H^k` of the total algebra is `Q` in degree 0 and zero in `1..=max_degree`.
pub fn is_acyclic(model: &RelativeModel, max_degree: u32) -> bool {
    model
        .total_cohomology(max_degree)
        .iter()
        .enumerate()
        .all(|(k, &d)| d == usize::from(k == 0))
}
