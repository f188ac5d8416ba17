use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl ZMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ZMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ZMatrix::zeros(n, n);
        for k in 0..n {
            m.data[k * n + k] = BigInt::from(1);
        }
        m
    }

    pub fn diag(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = ZMatrix::zeros(n, n);
        for (k, d) in entries.iter().enumerate() {
            m.data[k * n + k] = d.clone();
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<BigInt>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::dim(format!("integer row of length {} where {cols} expected", r.len())));
            }
            data.extend(r.iter().cloned());
        }
        Ok(ZMatrix { rows: rows.len(), cols, data })
    }

    pub fn from_i64(cols: usize, rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        ZMatrix::from_rows(cols, &rows).expect("consistent row lengths")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: BigInt) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> ZMatrix {
        let mut out = ZMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &ZMatrix) -> Result<ZMatrix> {
        if self.cols != other.rows {
            return Err(Error::dim(format!(
                "cannot multiply {}x{} by {}x{} integer matrices",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ZMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    out.data[r * other.cols + c] += a * other.get(k, c);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.rows {
            return Err(Error::dim("row vector length differs from row count"));
        }
        let mut out = vec![BigInt::zero(); self.cols];
        for (r, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o += a * self.get(r, c);
            }
        }
        Ok(out)
    }

    pub fn vstack(&self, other: &ZMatrix) -> Result<ZMatrix> {
        if self.cols != other.cols {
            return Err(Error::dim("vstack of integer matrices with different widths"));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(ZMatrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn hstack(&self, other: &ZMatrix) -> Result<ZMatrix> {
        if self.rows != other.rows {
            return Err(Error::dim("hstack of integer matrices with different heights"));
        }
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(ZMatrix { rows: self.rows, cols: self.cols + other.cols, data })
    }

    pub fn block_diag(&self, other: &ZMatrix) -> ZMatrix {
        let mut out = ZMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> ZMatrix {
        let rows: Vec<Vec<BigInt>> = idx.iter().map(|&r| self.row(r).to_vec()).collect();
        ZMatrix::from_rows(self.cols, &rows).expect("same width")
    }

    pub fn select_cols(&self, idx: &[usize]) -> ZMatrix {
        let rows: Vec<Vec<BigInt>> =
            (0..self.rows).map(|r| idx.iter().map(|&c| self.get(r, c).clone()).collect()).collect();
        ZMatrix::from_rows(idx.len(), &rows).expect("same width")
    }

    pub fn scale(&self, k: &BigInt) -> ZMatrix {
        ZMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn to_exact(&self) -> Matrix {
        let data = self.data.iter().map(|x| Scalar::from_bigint(x.clone())).collect();
        Matrix::new(self.rows, self.cols, data).expect("shape preserved")
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// row `dst` += k * row `src`
    pub(crate) fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for c in 0..self.cols {
            if self.get(src, c).is_zero() {
                continue;
            }
            let x = k * self.get(src, c);
            self.data[dst * self.cols + c] += x;
        }
    }

    /// col `dst` += k * col `src`
    pub(crate) fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for r in 0..self.rows {
            if self.get(r, src).is_zero() {
                continue;
            }
            let x = k * self.get(r, src);
            self.data[r * self.cols + dst] += x;
        }
    }

    pub(crate) fn negate_row(&mut self, r: usize) {
        for x in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *x = -std::mem::take(x);
        }
    }
}

impl fmt::Debug for ZMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            self.row_vecs().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        write!(f, "ZMatrix{}x{}{:?}", self.rows, self.cols, rows)
    }
}

/// Integers travel as JSON numbers when they fit in `i64`, as decimal strings otherwise.
pub(crate) fn int_to_json(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(x.to_string()),
    }
}

pub(crate) fn int_from_json(v: &serde_json::Value) -> std::result::Result<BigInt, String> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| format!("non-integer number {n}")),
        serde_json::Value::String(s) => s.trim().parse().map_err(|_| format!("bad integer '{s}'")),
        other => Err(format!("expected integer, got {other}")),
    }
}

pub(crate) fn int_rows_to_json(rows: &[Vec<BigInt>]) -> serde_json::Value {
    serde_json::Value::Array(
        rows.iter().map(|r| serde_json::Value::Array(r.iter().map(int_to_json).collect())).collect(),
    )
}

pub(crate) fn int_rows_from_json(v: &serde_json::Value) -> std::result::Result<Vec<Vec<BigInt>>, String> {
    let rows = v.as_array().ok_or("expected an array of integer rows")?;
    rows.iter()
        .map(|r| r.as_array().ok_or_else(|| "expected an integer row".to_string())?.iter().map(int_from_json).collect())
        .collect()
}

impl Serialize for ZMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        int_rows_to_json(&self.row_vecs()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ZMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let rows = int_rows_from_json(&v).map_err(serde::de::Error::custom)?;
        let cols = rows.first().map_or(0, Vec::len);
        ZMatrix::from_rows(cols, &rows).map_err(serde::de::Error::custom)
    }
}
