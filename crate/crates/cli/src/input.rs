//! Lattice and experiment files.
//!
//! A lattice is given either as a directive (`boolean:3`, `mo:2`) or as a
//! TOML file in one of three shapes:
//!
//! ```toml
//! # explicit tables
//! name = "MO2"
//! elements = ["0", "a", "a'", "b", "b'", "1"]
//! leq = [["0", "a"], ["a", "1"]]        # covering pairs suffice
//! ortho = [["0", "1"], ["a", "a'"]]     # each pair also sets the reverse
//!
//! # a directive
//! generator = "mo:3"
//!
//! # projections on Q^n, closed under meet, join and complement
//! [projections]
//! dim = 2
//! generators = [{ span = [["1", "0"]] }, { matrix = ["1/2", "1/2", "1/2", "1/2"] }]
//! ```
//!
//! Any shape may set `include_trivial = false` to drop the context `{0, 1}`.
//! Numbers are strings so that fractions stay exact.

use std::fs;
use std::path::Path;

use serde::Deserialize;

use qst_core::generated::{generate_oml, GeneratedOml};
use qst_core::linalg::{parse_rational, Projection, Rational, RationalMatrix, Subspace};
use qst_core::spectral::{eigendecompose, SpectralDecomposition};
use qst_core::{
    build_oml_with_caps, make_boolean_with_caps, make_mo_with_caps, Caps, LatticeSpec,
    OrthomodularLattice,
};

use crate::error::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeFile {
    pub name: Option<String>,
    pub elements: Option<Vec<String>>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
    pub ortho: Option<Vec<(String, String)>>,
    pub generator: Option<String>,
    pub projections: Option<ProjectionSource>,
    #[serde(default = "yes")]
    pub include_trivial: bool,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectionSource {
    pub dim: usize,
    pub generators: Vec<ProjectionInput>,
}

/// One projection: the span of some vectors, or an explicit matrix.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectionInput {
    pub span: Option<Vec<Vec<String>>>,
    pub matrix: Option<Vec<String>>,
}

/// A lattice ready for the presheaf machinery.
#[derive(Debug, Clone)]
pub struct LoadedLattice {
    pub name: String,
    /// The directive or path it came from.
    pub source: String,
    pub oml: OrthomodularLattice,
    pub generated: Option<GeneratedOml>,
    pub include_trivial: bool,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn parse_toml<T: serde::de::DeserializeOwned>(path: &str, text: &str) -> Result<T, CliError> {
    toml::from_str(text).map_err(|e| CliError::Io {
        path: path.into(),
        message: e.to_string(),
    })
}

/// Parses `boolean:n` or `mo:n`.
pub fn parse_directive(text: &str, caps: &Caps) -> Result<Option<OrthomodularLattice>, CliError> {
    let Some((kind, n)) = text.split_once(':') else {
        return Ok(None);
    };
    let n: usize = n
        .trim()
        .parse()
        .map_err(|_| CliError::input(format!("`{text}`: expected a count after `:`")))?;
    Ok(Some(match kind.trim() {
        "boolean" => make_boolean_with_caps(n, caps)?,
        "mo" => make_mo_with_caps(n, caps)?,
        other => {
            return Err(CliError::input(format!(
                "unknown generator `{other}`; expected `boolean:n` or `mo:n`"
            )))
        }
    }))
}

fn is_directive(text: &str) -> bool {
    text.starts_with("boolean:") || text.starts_with("mo:")
}

/// Loads a lattice from a directive or a TOML file.
pub fn load_lattice(source: &str, caps: &Caps) -> Result<LoadedLattice, CliError> {
    if is_directive(source) {
        let oml = parse_directive(source, caps)?.expect("directive");
        return Ok(LoadedLattice {
            name: source.into(),
            source: source.into(),
            oml,
            generated: None,
            include_trivial: true,
        });
    }
    let text = read(Path::new(source))?;
    let file: LatticeFile = parse_toml(source, &text)?;
    lattice_from_file(file, source, caps)
}

pub fn lattice_from_file(
    file: LatticeFile,
    source: &str,
    caps: &Caps,
) -> Result<LoadedLattice, CliError> {
    let name = file.name.clone().unwrap_or_else(|| source.into());
    let shapes = [
        file.elements.is_some(),
        file.generator.is_some(),
        file.projections.is_some(),
    ];
    if shapes.iter().filter(|&&b| b).count() != 1 {
        return Err(CliError::input(format!(
            "{source}: give exactly one of `elements`, `generator` or `[projections]`"
        )));
    }
    let (oml, generated) = if let Some(elements) = file.elements {
        let spec = LatticeSpec {
            elements,
            leq: file.leq,
            ortho: file.ortho,
        };
        (build_oml_with_caps(&spec, caps)?, None)
    } else if let Some(g) = file.generator {
        let oml = parse_directive(&g, caps)?
            .ok_or_else(|| CliError::input(format!("{source}: bad generator `{g}`")))?;
        (oml, None)
    } else {
        let src = file.projections.expect("checked above");
        let gens = src
            .generators
            .iter()
            .map(|g| projection_input(src.dim, g))
            .collect::<Result<Vec<_>, _>>()?;
        let generated = generate_oml(src.dim, &gens, caps)?;
        (generated.oml().clone(), Some(generated))
    };
    Ok(LoadedLattice {
        name,
        source: source.into(),
        oml,
        generated,
        include_trivial: file.include_trivial,
    })
}

pub fn rationals(items: &[String]) -> Result<Vec<Rational>, CliError> {
    items
        .iter()
        .map(|s| parse_rational(s).map_err(CliError::from))
        .collect()
}

/// Row-major `dim × dim` matrix from fraction strings.
pub fn square_matrix(dim: usize, entries: &[String]) -> Result<RationalMatrix, CliError> {
    if entries.len() != dim * dim {
        return Err(CliError::input(format!(
            "matrix of dimension {dim} needs {} entries, got {}",
            dim * dim,
            entries.len()
        )));
    }
    Ok(RationalMatrix::new(dim, dim, rationals(entries)?)?)
}

pub fn projection_input(dim: usize, p: &ProjectionInput) -> Result<Projection, CliError> {
    match (&p.span, &p.matrix) {
        (Some(vectors), None) => {
            let vs = vectors
                .iter()
                .map(|v| rationals(v))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Projection::onto(Subspace::span(dim, &vs)?))
        }
        (None, Some(entries)) => Ok(Projection::from_matrix(&square_matrix(dim, entries)?)?),
        _ => Err(CliError::input(
            "a projection needs exactly one of `span` or `matrix`",
        )),
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentFile {
    pub name: Option<String>,
    pub grid: Vec<String>,
    #[serde(default = "star")]
    pub profile: String,
    pub checks: Option<Vec<String>>,
    #[serde(default = "yes")]
    pub include_trivial: bool,
    pub matrices: Vec<MatrixInput>,
    pub context: Option<ContextInput>,
}

fn star() -> String {
    "star".into()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixInput {
    pub name: String,
    pub dim: usize,
    pub entries: Option<Vec<String>>,
    pub eigenpairs: Option<Vec<EigenpairInput>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EigenpairInput {
    pub value: String,
    pub projection: ProjectionInput,
}

/// Extra projections added to the context beyond the eigenprojections.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextInput {
    #[serde(default)]
    pub generators: Vec<ProjectionInput>,
}

pub const ALL_CHECKS: [&str; 4] = ["dedekind", "family", "round-trip", "injectivity"];

/// An experiment with every matrix decomposed.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub name: String,
    pub grid: Vec<Rational>,
    pub profile: String,
    pub checks: Vec<String>,
    pub include_trivial: bool,
    pub dim: usize,
    pub matrices: Vec<(String, SpectralDecomposition)>,
    pub extra_generators: Vec<Projection>,
}

pub fn load_experiment(path: &str) -> Result<Experiment, CliError> {
    let text = read(Path::new(path))?;
    let file: ExperimentFile = parse_toml(path, &text)?;
    experiment_from_file(file, path)
}

pub fn experiment_from_file(file: ExperimentFile, source: &str) -> Result<Experiment, CliError> {
    if file.matrices.is_empty() {
        return Err(CliError::input(format!("{source}: no matrices")));
    }
    let dim = file.matrices[0].dim;
    let mut matrices = Vec::new();
    for m in &file.matrices {
        if m.dim != dim {
            return Err(CliError::input(format!(
                "{source}: matrix `{}` has dimension {}, expected {dim}",
                m.name, m.dim
            )));
        }
        let d = match (&m.entries, &m.eigenpairs) {
            (Some(entries), None) => eigendecompose(&square_matrix(dim, entries)?)?,
            (None, Some(pairs)) => {
                let pairs = pairs
                    .iter()
                    .map(|p| {
                        Ok((
                            parse_rational(&p.value)?,
                            projection_input(dim, &p.projection)?,
                        ))
                    })
                    .collect::<Result<Vec<_>, CliError>>()?;
                SpectralDecomposition::from_pairs(dim, pairs)?
            }
            _ => {
                return Err(CliError::input(format!(
                    "{source}: matrix `{}` needs exactly one of `entries` or `eigenpairs`",
                    m.name
                )))
            }
        };
        matrices.push((m.name.clone(), d));
    }
    let checks = match file.checks {
        Some(c) => {
            if let Some(bad) = c.iter().find(|c| !ALL_CHECKS.contains(&c.as_str())) {
                return Err(CliError::input(format!(
                    "{source}: unknown check `{bad}`; expected one of {}",
                    ALL_CHECKS.join(", ")
                )));
            }
            c
        }
        None => ALL_CHECKS.iter().map(|s| s.to_string()).collect(),
    };
    let extra_generators = file
        .context
        .unwrap_or_default()
        .generators
        .iter()
        .map(|g| projection_input(dim, g))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Experiment {
        name: file.name.unwrap_or_else(|| source.into()),
        grid: rationals(&file.grid)?,
        profile: file.profile,
        checks,
        include_trivial: file.include_trivial,
        dim,
        matrices,
        extra_generators,
    })
}
