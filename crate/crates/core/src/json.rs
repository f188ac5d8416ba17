//! Small helpers for the JSON schemas shared by the library and the CLI.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact::{LinearMap, Scalar, Subspace};

pub fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field \"{key}\"")))
}

pub fn usize_field(v: &Value, key: &str) -> Result<usize> {
    field(v, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::Parse(format!("field \"{key}\" must be a non-negative integer")))
}

pub fn opt_usize_field(v: &Value, key: &str, default: usize) -> Result<usize> {
    match v.get(key) {
        None => Ok(default),
        Some(_) => usize_field(v, key),
    }
}

pub fn scalar_vec(v: &Value) -> Result<Vec<Scalar>> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))
}

/// A list of vectors, each of length `len`.
pub fn scalar_rows(v: &Value, len: usize) -> Result<Vec<Vec<Scalar>>> {
    let rows: Vec<Vec<Scalar>> = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    if let Some(r) = rows.iter().find(|r| r.len() != len) {
        return Err(Error::Parse(format!("vector of length {} where {len} expected", r.len())));
    }
    Ok(rows)
}

pub fn opt_scalar_rows(v: &Value, key: &str, len: usize) -> Result<Vec<Vec<Scalar>>> {
    match v.get(key) {
        None | Some(Value::Null) => Ok(vec![]),
        Some(x) => scalar_rows(x, len),
    }
}

pub fn rows_json(rows: &[Vec<Scalar>]) -> Value {
    serde_json::to_value(rows).expect("scalars serialize")
}

pub fn vec_json(v: &[Scalar]) -> Value {
    serde_json::to_value(v).expect("scalars serialize")
}

pub fn subspace_json(s: &Subspace) -> Value {
    rows_json(&s.vectors())
}

pub fn subspace_field(v: &Value, key: &str, ambient: usize) -> Result<Subspace> {
    Subspace::span(ambient, &opt_scalar_rows(v, key, ambient)?)
}

/// Maps travel as the list of images of the domain basis vectors.
pub fn map_json(f: &LinearMap) -> Value {
    rows_json(&f.images())
}

pub fn map_field(v: &Value, key: &str, dom: usize, cod: usize) -> Result<LinearMap> {
    match v.get(key) {
        None | Some(Value::Null) if dom == 0 || cod == 0 => Ok(LinearMap::zero(dom, cod)),
        None | Some(Value::Null) => Err(Error::Parse(format!("missing map \"{key}\""))),
        Some(x) => {
            let imgs = scalar_rows(x, cod)?;
            if imgs.len() != dom {
                return Err(Error::Parse(format!("map \"{key}\" needs {dom} images, got {}", imgs.len())));
            }
            LinearMap::from_images(dom, cod, &imgs)
        }
    }
}
