//! Input loading: labeled indicator CSVs and explicit filtration files.

use std::path::Path;

use concept_homology::{
    build_complex, ingest_csv, ComplexError, FilteredComplex, IndicatorTable, MissingPolicy,
    PipelineError, Simplex,
};

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("line {line}: cannot read '{text}' as 'v0 v1 ..., appearance'")]
    FiltrationLine { line: usize, text: String },
}

/// What a file turned out to contain.
#[derive(Debug, Clone)]
pub enum InputData {
    Table(IndicatorTable),
    Filtration(FilteredComplex),
}

/// A file is a filtration when its first non-empty line is integer vertex
/// ids followed by a comma. An indicator CSV starts with a header whose
/// first field is a column name, so the two cannot collide.
fn looks_like_filtration(text: &str) -> bool {
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        return match line.split_once(',') {
            Some((ids, _)) => {
                let ids = ids.trim();
                !ids.is_empty() && ids.split_whitespace().all(|w| w.parse::<usize>().is_ok())
            }
            None => false,
        };
    }
    false
}

/// Parses `v0 v1 ..., appearance` lines. Blank lines are skipped. Faces do
/// not need to be listed: the complex builder closes and repairs them.
pub fn parse_filtration(text: &str) -> Result<Vec<Simplex>, InputError> {
    let bad = |line: usize, text: &str| InputError::FiltrationLine {
        line,
        text: text.to_string(),
    };
    let mut simplices = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let (ids, value) = line.split_once(',').ok_or_else(|| bad(idx + 1, line))?;
        let vertices = ids
            .split_whitespace()
            .map(|w| w.parse::<usize>().map_err(|_| bad(idx + 1, line)))
            .collect::<Result<Vec<_>, _>>()?;
        if vertices.is_empty() {
            return Err(bad(idx + 1, line));
        }
        let appearance: f64 = value.trim().parse().map_err(|_| bad(idx + 1, line))?;
        if !appearance.is_finite() {
            return Err(bad(idx + 1, line));
        }
        simplices.push(Simplex::new(vertices, appearance));
    }
    Ok(simplices)
}

/// Reads a file as a table or a filtration, deciding by content.
pub fn read_input(path: &Path, missing: MissingPolicy) -> Result<InputData, InputError> {
    let text = std::fs::read_to_string(path)?;
    if looks_like_filtration(&text) {
        Ok(InputData::Filtration(build_complex(parse_filtration(&text)?)?))
    } else {
        Ok(InputData::Table(ingest_csv(path, missing)?))
    }
}
