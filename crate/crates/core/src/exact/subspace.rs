use serde::{Deserialize, Serialize};

use super::{Matrix, Scalar};
use crate::error::{Error, Result};

/// A subspace of `Q(i)^ambient`, stored by its reduced row echelon basis so that
/// equality of subspaces is equality of values.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(0, ambient), pivots: vec![] }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient), pivots: (0..ambient).collect() }
    }

    /// Row span of `m` (rows need not be independent).
    pub fn from_rows(m: &Matrix) -> Self {
        let (basis, pivots) = m.rref();
        Subspace { ambient: m.cols(), basis, pivots }
    }

    pub fn span(ambient: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        Ok(Subspace::from_rows(&Matrix::from_rows(ambient, vectors)?))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Canonical basis, one row per vector.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vecs()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Coordinates of `v` in the canonical basis, `None` if `v` is not in the subspace.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if v.len() != self.ambient {
            return None;
        }
        let c: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = self.basis.transpose().mul_vec(&c).ok()?;
        (back == v).then_some(c)
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && other.basis.row_vecs().iter().all(|v| self.contains_vector(v))
    }

    fn check_same(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::dim(format!("subspaces of Q(i)^{} and Q(i)^{}", self.ambient, other.ambient)));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        Ok(Subspace::from_rows(&self.basis.vstack(&other.basis)?))
    }

    /// `{f in dual : f(self) = 0}`, in dual coordinates.
    pub fn annihilator(&self) -> Subspace {
        Subspace::from_rows(&self.basis.nullspace())
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    pub fn conjugate(&self) -> Subspace {
        Subspace::from_rows(&self.basis.conjugate())
    }

    /// Complexification test: a subspace is defined over Q iff it equals its conjugate.
    pub fn is_real(&self) -> bool {
        self.basis.row_vecs().iter().flatten().all(Scalar::is_real)
    }

    /// `self x other` inside the direct sum of ambients.
    pub fn direct_sum(&self, other: &Subspace) -> Subspace {
        Subspace::from_rows(&self.basis.block_diag(&other.basis))
    }
}

#[derive(Serialize, Deserialize)]
struct SubspaceRepr {
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
}

impl Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SubspaceRepr { ambient: self.ambient, basis: self.vectors() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = SubspaceRepr::deserialize(d)?;
        Subspace::span(r.ambient, &r.basis).map_err(serde::de::Error::custom)
    }
}

/// Named chain of nested subspaces of a common space.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FilteredSpace {
    pub dim: usize,
    pub steps: Vec<(String, Subspace)>,
}

impl FilteredSpace {
    pub fn new(dim: usize, steps: Vec<(String, Subspace)>) -> Result<Self> {
        for (label, s) in &steps {
            if s.ambient() != dim {
                return Err(Error::dim(format!("step {label} lives in dimension {}", s.ambient())));
            }
        }
        for w in steps.windows(2) {
            if !w[1].1.contains(&w[0].1) {
                return Err(Error::invalid("filtration", vec![format!("{} not contained in {}", w[0].0, w[1].0)]));
            }
        }
        Ok(FilteredSpace { dim, steps })
    }

    pub fn step_dims(&self) -> Vec<usize> {
        self.steps.iter().map(|(_, s)| s.dim()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dim": self.dim,
            "steps": self
                .steps
                .iter()
                .map(|(k, s)| serde_json::json!({"name": k, "dim": s.dim(), "basis": crate::json::subspace_json(s)}))
                .collect::<Vec<_>>(),
        })
    }
}
