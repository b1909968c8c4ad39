//! JSON effect files: `{"dim": d, "effects": [{"name", "re", "im"}, ...]}`.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use coexist::{Complex64, Effect, HermitianMatrix};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Largest anti-Hermitian residual accepted before an input is rejected.
const HERMITIAN_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EffectFile {
    pub dim: usize,
    pub effects: Vec<EffectEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EffectEntry {
    pub name: String,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl EffectEntry {
    pub fn from_effect(name: &str, effect: &Effect) -> Self {
        let m = effect.matrix();
        let dim = m.dim();
        let part = |f: fn(Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..dim).map(|i| (0..dim).map(|j| f(m.get(i, j))).collect()).collect()
        };
        Self {
            name: name.to_owned(),
            re: part(|z| z.re),
            im: part(|z| z.im),
        }
    }

    fn to_effect(&self, dim: usize) -> Result<Effect, CliError> {
        let invalid = |reason: String| CliError::InvalidEffect {
            name: self.name.clone(),
            reason,
        };
        for (part, rows) in [("re", &self.re), ("im", &self.im)] {
            if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                return Err(invalid(format!("\"{part}\" must be a {dim}x{dim} array")));
            }
        }
        let entries: Vec<Complex64> = (0..dim)
            .flat_map(|i| (0..dim).map(move |j| (i, j)))
            .map(|(i, j)| Complex64::new(self.re[i][j], self.im[i][j]))
            .collect();
        let skew = (0..dim)
            .flat_map(|i| (0..dim).map(move |j| (i, j)))
            .map(|(i, j)| (entries[i * dim + j] - entries[j * dim + i].conj()).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let matrix = HermitianMatrix::new(dim, entries).map_err(|e| invalid(e.to_string()))?;
        if skew > 2.0 * HERMITIAN_SLACK * matrix.tolerance_scale() {
            return Err(invalid(format!("matrix is not Hermitian (‖A − A*‖ = {skew:e})")));
        }
        Effect::new(matrix).map_err(|e| invalid(e.to_string()))
    }
}

impl EffectFile {
    pub fn new(effects: &[(&str, &Effect)]) -> Self {
        Self {
            dim: effects.first().map_or(0, |(_, e)| e.dim()),
            effects: effects.iter().map(|(n, e)| EffectEntry::from_effect(n, e)).collect(),
        }
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text, path)
    }

    pub fn parse(text: &str, path: &Path) -> Result<Self, CliError> {
        let file: EffectFile = serde_json::from_str(text).map_err(|source| CliError::Json {
            path: path.to_path_buf(),
            source,
        })?;
        file.validate()?;
        Ok(file)
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.dim == 0 {
            return Err(CliError::Usage("effect file dimension must be positive".into()));
        }
        let mut seen = HashSet::new();
        for entry in &self.effects {
            if !seen.insert(entry.name.as_str()) {
                return Err(CliError::DuplicateName(entry.name.clone()));
            }
            entry.to_effect(self.dim)?;
        }
        Ok(())
    }

    pub fn effect(&self, name: &str) -> Result<Effect, CliError> {
        self.effects
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| CliError::UnknownName(name.to_owned()))?
            .to_effect(self.dim)
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(self).expect("effect files serialize");
        fs::write(path, text + "\n").map_err(|source| CliError::Io {
            path: PathBuf::from(path),
            source,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<EffectFile, CliError> {
        EffectFile::parse(text, Path::new("inline.json"))
    }

    #[test]
    fn rejects_duplicate_names() {
        let text = r#"{"dim": 1, "effects": [
            {"name": "A", "re": [[0.5]], "im": [[0]]},
            {"name": "A", "re": [[0.2]], "im": [[0]]}]}"#;
        assert!(matches!(parse(text), Err(CliError::DuplicateName(n)) if n == "A"));
    }

    #[test]
    fn names_offending_effect() {
        let text = r#"{"dim": 2, "effects": [
            {"name": "ok", "re": [[0.5, 0], [0, 0.5]], "im": [[0, 0], [0, 0]]},
            {"name": "big", "re": [[1.5, 0], [0, 0]], "im": [[0, 0], [0, 0]]}]}"#;
        let err = parse(text).unwrap_err();
        assert!(matches!(&err, CliError::InvalidEffect { name, .. } if name == "big"));
        assert!(err.to_string().contains("1.5"));
    }

    #[test]
    fn rejects_bad_shape_and_non_hermitian() {
        let shape = r#"{"dim": 2, "effects": [{"name": "s", "re": [[0.5, 0]], "im": [[0, 0]]}]}"#;
        assert!(matches!(parse(shape), Err(CliError::InvalidEffect { .. })));
        let skew = r#"{"dim": 2, "effects": [{"name": "h", "re": [[0.5, 0.1], [0, 0.5]], "im": [[0, 0], [0, 0]]}]}"#;
        let err = parse(skew).unwrap_err();
        assert!(err.to_string().contains("not Hermitian"));
    }

    #[test]
    fn round_trips_bit_identically() {
        let e = coexist::exemplars::qubit_effect(0.9, [0.1 / 3.0, -0.2, 0.7 / 9.0]).unwrap();
        let file = EffectFile::new(&[("E", &e)]);
        let text = serde_json::to_string(&file).unwrap();
        let back = parse(&text).unwrap().effect("E").unwrap();
        assert_eq!(back.matrix().entries(), e.matrix().entries());
    }
}
