//! JSON complex files.
//!
//! ```json
//! {"cells":[{"id":0,"dim":0,"label":"a","value":0.0}, ...],
//!  "incidence":[[facet_id, cofacet_id], ...]}
//! ```
//!
//! `label` is optional. `value` is optional as a whole: either every cell
//! carries one or none does, in which case a separate filter file
//! `{"values":[...]}` (indexed by id) may be supplied. Loading enforces every
//! complex and filter invariant and reports the first violation by label.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::complex::{Filter, LefschetzComplex};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CellRecord {
    id: usize,
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    value: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexFile {
    cells: Vec<CellRecord>,
    incidence: Vec<[usize; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FilterFile {
    values: Vec<f64>,
}

/// A parsed complex with its filter, when the file carried values.
#[derive(Debug, Clone, PartialEq)]
pub struct Loaded {
    pub complex: LefschetzComplex,
    pub filter: Option<Filter>,
}

fn json_error(what: &str, e: serde_json::Error) -> Error {
    Error::Format(format!("{what}: {e}"))
}

fn make_filter(complex: &LefschetzComplex, values: Vec<f64>, perturb: bool) -> Result<Filter> {
    if perturb {
        Filter::perturbed(complex, values)
    } else {
        Filter::new(complex, values)
    }
}

pub fn parse_complex(text: &str, perturb: bool) -> Result<Loaded> {
    let file: ComplexFile = serde_json::from_str(text).map_err(|e| json_error("complex file", e))?;
    let n = file.cells.len();
    let mut slots: Vec<Option<CellRecord>> = (0..n).map(|_| None).collect();
    for (k, cell) in file.cells.into_iter().enumerate() {
        if cell.id >= n {
            return Err(Error::Format(format!(
                "cells[{k}]: id {} is not in 0..{n}; ids must be contiguous from 0",
                cell.id
            )));
        }
        let id = cell.id;
        if slots[id].replace(cell).is_some() {
            return Err(Error::Format(format!("cells[{k}]: duplicate id {id}")));
        }
    }
    let cells: Vec<CellRecord> = slots.into_iter().map(|c| c.expect("ids form a permutation")).collect();
    let with_value = cells.iter().filter(|c| c.value.is_some()).count();
    if with_value != 0 && with_value != n {
        let missing = cells.iter().find(|c| c.value.is_none()).expect("some cell lacks a value");
        return Err(Error::Format(format!(
            "cell id {} has no value; values must be given for all cells or none",
            missing.id
        )));
    }
    let values: Option<Vec<f64>> = (with_value == n && n > 0).then(|| cells.iter().map(|c| c.value.unwrap()).collect());

    let complex = LefschetzComplex::new(
        cells.into_iter().map(|c| (c.dim, c.label)).collect(),
        file.incidence.iter().map(|&[x, y]| (x, y)),
    )?;
    if let Some(v) = complex.validate().first() {
        return Err(Error::InvalidComplex(v.describe(&complex)));
    }
    let filter = match values {
        Some(values) => Some(make_filter(&complex, values, perturb)?),
        None if n == 0 => Some(Filter::new(&complex, Vec::new())?),
        None => None,
    };
    Ok(Loaded { complex, filter })
}

pub fn parse_filter(text: &str, complex: &LefschetzComplex, perturb: bool) -> Result<Filter> {
    let file: FilterFile = serde_json::from_str(text).map_err(|e| json_error("filter file", e))?;
    make_filter(complex, file.values, perturb)
}

/// Reads a complex file and, if given, a filter file that overrides any
/// values in the complex file.
pub fn load(complex_path: &Path, filter_path: Option<&Path>, perturb: bool) -> Result<Loaded> {
    let text = std::fs::read_to_string(complex_path)?;
    let mut loaded = parse_complex(&text, perturb)?;
    if let Some(path) = filter_path {
        let text = std::fs::read_to_string(path)?;
        loaded.filter = Some(parse_filter(&text, &loaded.complex, perturb)?);
    }
    Ok(loaded)
}

/// Serializes a complex, with values when a filter is given. Floats use the
/// shortest decimal that reads back to the same double.
pub fn to_json(complex: &LefschetzComplex, filter: Option<&Filter>) -> String {
    let file = ComplexFile {
        cells: complex
            .cells()
            .iter()
            .map(|c| CellRecord {
                id: c.id,
                dim: c.dim,
                label: c.label.clone(),
                value: filter.map(|f| f.value(c.id)),
            })
            .collect(),
        incidence: complex.incidences().map(|(x, y)| [x, y]).collect(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("complex serializes");
    text.push('\n');
    text
}

pub fn filter_to_json(filter: &Filter) -> String {
    let mut text = serde_json::to_string(&FilterFile { values: filter.values().to_vec() }).expect("filter serializes");
    text.push('\n');
    text
}
