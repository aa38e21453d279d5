//! JSON interchange files for measures and functions.

use std::fs;
use std::io::ErrorKind;
use std::path::Path;

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use framelab_core::measure::{Atom, CircleMeasure, DensityPiece, FunctionSpec, Term};
use framelab_core::realline::{AtomValues, RealAtom, RealAtomicMeasure};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomEntry {
    pub x: f64,
    pub w: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceEntry {
    pub a: f64,
    pub b: f64,
    pub h: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureFile {
    #[serde(default)]
    pub atoms: Vec<AtomEntry>,
    #[serde(default)]
    pub pieces: Vec<PieceEntry>,
    #[serde(default)]
    pub cantor: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermEntry {
    pub m: i64,
    #[serde(default)]
    pub u: Option<f64>,
    #[serde(default)]
    pub v: Option<f64>,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointValue {
    pub x: f64,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionFile {
    #[serde(default)]
    pub terms: Vec<TermEntry>,
    #[serde(default, rename = "atomValues")]
    pub atom_values: Vec<PointValue>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealAtomEntry {
    pub y: f64,
    pub w: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealMeasureFile {
    pub atoms: Vec<RealAtomEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealValue {
    pub y: f64,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValuesFile {
    pub values: Vec<RealValue>,
}

impl MeasureFile {
    pub fn to_measure(&self) -> framelab_core::Result<CircleMeasure> {
        CircleMeasure::new(
            self.atoms.iter().map(|a| Atom { location: a.x, weight: a.w }).collect(),
            self.pieces.iter().map(|p| DensityPiece { start: p.a, end: p.b, height: p.h }).collect(),
            self.cantor,
        )
    }

    pub fn from_measure(measure: &CircleMeasure) -> Self {
        Self {
            atoms: measure.atoms().iter().map(|a| AtomEntry { x: a.location, w: a.weight }).collect(),
            pieces: measure.pieces().iter().map(|p| PieceEntry { a: p.start, b: p.end, h: p.height }).collect(),
            cantor: measure.cantor_weight(),
        }
    }
}

impl FunctionFile {
    pub fn to_function(&self) -> framelab_core::Result<FunctionSpec> {
        FunctionSpec::new(
            self.terms
                .iter()
                .map(|t| Term {
                    frequency: t.m,
                    start: t.u.unwrap_or(0.0),
                    end: t.v.unwrap_or(1.0),
                    coefficient: Complex64::new(t.re, t.im),
                })
                .collect(),
            self.atom_values.iter().map(|p| (p.x, Complex64::new(p.re, p.im))).collect(),
        )
    }

    pub fn from_function(f: &FunctionSpec) -> Self {
        Self {
            terms: f
                .terms()
                .iter()
                .map(|t| TermEntry {
                    m: t.frequency,
                    u: Some(t.start),
                    v: Some(t.end),
                    re: t.coefficient.re,
                    im: t.coefficient.im,
                })
                .collect(),
            atom_values: f.atom_values().iter().map(|&(x, v)| PointValue { x, re: v.re, im: v.im }).collect(),
        }
    }
}

impl RealMeasureFile {
    pub fn to_measure(&self) -> framelab_core::Result<RealAtomicMeasure> {
        RealAtomicMeasure::new(self.atoms.iter().map(|a| RealAtom { position: a.y, weight: a.w }).collect())
    }
}

impl ValuesFile {
    pub fn to_values(&self) -> AtomValues {
        AtomValues::new(self.values.iter().map(|v| (v.y, Complex64::new(v.re, v.im))).collect())
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| match e.kind() {
        ErrorKind::NotFound => CliError::FileNotFound(path.to_path_buf()),
        _ => CliError::io(format!("reading {}", path.display()), e),
    })
}

/// Parses a JSON file; serde's message carries the line, column and field.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::SpecParse { path: path.to_path_buf(), message: e.to_string() })
}

fn invalid(path: &Path, e: framelab_core::Error) -> CliError {
    CliError::SpecParse { path: path.to_path_buf(), message: e.to_string() }
}

pub fn load_measure(path: &Path) -> Result<CircleMeasure, CliError> {
    read_json::<MeasureFile>(path)?.to_measure().map_err(|e| invalid(path, e))
}

pub fn load_function(path: &Path) -> Result<FunctionSpec, CliError> {
    read_json::<FunctionFile>(path)?.to_function().map_err(|e| invalid(path, e))
}

pub fn load_real_measure(path: &Path) -> Result<RealAtomicMeasure, CliError> {
    read_json::<RealMeasureFile>(path)?.to_measure().map_err(|e| invalid(path, e))
}

pub fn load_values(path: &Path) -> Result<AtomValues, CliError> {
    Ok(read_json::<ValuesFile>(path)?.to_values())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn measure_example_parses() {
        let text = r#"{"atoms":[{"x":0.25,"w":0.5}],"pieces":[{"a":0.5,"b":1.0,"h":1.0}],"cantor":0.0}"#;
        let file: MeasureFile = serde_json::from_str(text).unwrap();
        let m = file.to_measure().unwrap();
        assert_eq!(m.total_mass(), 1.0);
        assert_eq!(MeasureFile::from_measure(&m), file);
    }

    #[test]
    fn function_example_parses() {
        let text =
            r#"{"terms":[{"m":1,"u":0.5,"v":1.0,"re":1.0,"im":0.0}],"atomValues":[{"x":0.25,"re":0.0,"im":0.0}]}"#;
        let f = serde_json::from_str::<FunctionFile>(text).unwrap().to_function().unwrap();
        assert_eq!(f.terms().len(), 1);
        assert_eq!(f.atom_values(), &[(0.25, Complex64::new(0.0, 0.0))]);
        let back = FunctionFile::from_function(&f).to_function().unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn unknown_fields_are_reported_with_position() {
        let err = serde_json::from_str::<MeasureFile>("{\n\"atoms\": [{\"x\": 0.1, \"weight\": 1}]}").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("weight") && msg.contains("line 2"), "{msg}");
    }

    #[test]
    fn real_measure_example_parses() {
        let text = r#"{"atoms":[{"y":0.25,"w":0.5},{"y":1.25,"w":0.5}]}"#;
        let m = serde_json::from_str::<RealMeasureFile>(text).unwrap().to_measure().unwrap();
        assert_eq!(m.atoms().len(), 2);
    }
}
