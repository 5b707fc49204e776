//! Model, morphism and derivation files.
//!
//! Model file:
//! `{"base_generators": [{"name": "v4", "degree": 4}, ...],
//!   "fibre_generators": [...], "differential": {"v7": "v4^2"}}`,
//! omitted differentials are zero.
//!
//! Morphism file: `{"source": PATH, "target": PATH, "values": {"w3": "w3"}}`.
//! Paths are relative to the morphism file; `catalog:KEY` names a catalog
//! entry. Omitted values default to the identity when source and target
//! coincide.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::algebra::{Algebra, Generator, Polynomial};
use crate::catalog;
use crate::derivations::Derivation;
use crate::error::{Error, Result};
use crate::sullivan::{DGMorphism, RelativeModel};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorSpec {
    name: String,
    degree: u32,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    base_generators: Vec<GeneratorSpec>,
    fibre_generators: Vec<GeneratorSpec>,
    #[serde(default)]
    differential: Map<String, Value>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismFile {
    source: String,
    target: String,
    #[serde(default)]
    values: Map<String, Value>,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

fn string_entries(map: &Map<String, Value>, what: &str) -> Result<Vec<(String, String)>> {
    map.iter()
        .map(|(k, v)| match v {
            Value::String(s) => Ok((k.clone(), s.clone())),
            other => Err(Error::Parse(format!("{what} of `{k}` must be a string, got {other}"))),
        })
        .collect()
}

pub fn parse_model(text: &str) -> Result<RelativeModel> {
    let file: ModelFile = serde_json::from_str(text).map_err(json_error)?;
    let pairs = |g: &[GeneratorSpec]| g.iter().map(|s| (s.name.clone(), s.degree)).collect::<Vec<_>>();
    let differential = string_entries(&file.differential, "differential")?;
    RelativeModel::parse(
        &pairs(&file.base_generators),
        &pairs(&file.fibre_generators),
        differential.iter().map(|(g, v)| (g.as_str(), v.as_str())),
    )
}

pub fn read_model(path: &Path) -> Result<RelativeModel> {
    parse_model(&read(path)?)
}

/// The model file form, generators and differentials in generator order.
pub fn model_to_json(model: &RelativeModel) -> Value {
    let total = model.total();
    let spec = |g: &Generator| GeneratorSpec {
        name: g.name.clone(),
        degree: g.degree,
    };
    let generators = total.generators();
    let mut differential = Map::new();
    for (g, p) in generators.iter().zip(model.differential()) {
        if !p.is_zero() {
            differential.insert(g.name.clone(), Value::String(total.format(p)));
        }
    }
    let file = ModelFile {
        base_generators: generators[..model.base_len()].iter().map(spec).collect(),
        fibre_generators: generators[model.base_len()..].iter().map(spec).collect(),
        differential,
    };
    serde_json::to_value(file).expect("model file serializes")
}

pub fn model_to_string(model: &RelativeModel) -> String {
    let mut s = serde_json::to_string_pretty(&model_to_json(model)).expect("json value serializes");
    s.push('\n');
    s
}

/// Resolves a model reference from a morphism file.
fn load_model_ref(reference: &str, dir: &Path) -> Result<RelativeModel> {
    match reference.strip_prefix("catalog:") {
        Some(key) => Ok(catalog::build(key)?.model),
        None => {
            let path: PathBuf = dir.join(reference);
            read_model(&path)
        }
    }
}

/// Parses a morphism file whose relative paths resolve against `dir`.
pub fn parse_morphism(text: &str, dir: &Path) -> Result<DGMorphism> {
    let file: MorphismFile = serde_json::from_str(text).map_err(json_error)?;
    let source = Arc::new(load_model_ref(&file.source, dir)?);
    let target = if file.target == file.source {
        source.clone()
    } else {
        Arc::new(load_model_ref(&file.target, dir)?)
    };
    morphism_from_values(source, target, &string_entries(&file.values, "value")?)
}

/// Builds a morphism from named values; omitted generators go to themselves
/// when source and target are the same model.
pub fn morphism_from_values(
    source: Arc<RelativeModel>,
    target: Arc<RelativeModel>,
    values: &[(String, String)],
) -> Result<DGMorphism> {
    let same = source == target;
    let src = source.total();
    let mut out: Vec<Option<Polynomial>> = vec![None; src.len()];
    for (name, text) in values {
        let g = src
            .index_of(name)
            .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
        out[g] = Some(target.total().parse(text)?);
    }
    let values = out
        .into_iter()
        .enumerate()
        .map(|(g, v)| match v {
            Some(p) => Ok(p),
            None if same => Ok(Polynomial::generator(g)),
            None => Err(Error::Parse(format!(
                "morphism value for `{}` is required when source and target differ",
                src.generator(g).name
            ))),
        })
        .collect::<Result<Vec<_>>>()?;
    DGMorphism::new(source, target, values)
}

pub fn read_morphism(path: &Path) -> Result<DGMorphism> {
    let dir = path.parent().unwrap_or(Path::new("."));
    parse_morphism(&read(path)?, dir)
}

/// `{"degree": n, "values": {"w": "..."}}`, zero values omitted.
pub fn derivation_to_json(fibre: &[Generator], values_in: &Algebra, theta: &Derivation) -> Value {
    let mut values = Map::new();
    for (g, p) in fibre.iter().zip(theta.values()) {
        if !p.is_zero() {
            values.insert(g.name.clone(), Value::String(values_in.format(p)));
        }
    }
    let mut out = Map::new();
    out.insert("degree".into(), Value::from(theta.degree()));
    out.insert("values".into(), Value::Object(values));
    Value::Object(out)
}

/// Inverse of [`derivation_to_json`]; omitted values are zero.
pub fn derivation_from_json(fibre: &[Generator], values_in: &Algebra, value: &Value) -> Result<Derivation> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Form {
        degree: i32,
        #[serde(default)]
        values: Map<String, Value>,
    }
    let form = Form::deserialize(value).map_err(json_error)?;
    let mut values = vec![Polynomial::zero(); fibre.len()];
    for (name, text) in string_entries(&form.values, "value")? {
        let pos = fibre
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
        values[pos] = values_in.parse(&text)?;
    }
    let theta = Derivation::new(form.degree, values);
    theta.check_degrees(fibre, values_in)?;
    Ok(theta)
}
