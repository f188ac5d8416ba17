use num_bigint::BigInt;
use serde_json::{json, Value};

use super::MotiveDatum;
use crate::error::{Error, Result};
use crate::exact::{LinearMap, Scalar};
use crate::groups::{lattice_membership, GroupHom, ZMatrix};
use crate::json;

/// An effective morphism `(f_ét, f⁰, f_G)`; `f_G` acts on Lie algebras.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MotiveMorphism {
    pub source: MotiveDatum,
    pub target: MotiveDatum,
    pub f_et: GroupHom,
    pub f0: LinearMap,
    pub f_g: LinearMap,
}

impl MotiveMorphism {
    pub fn new(
        source: MotiveDatum,
        target: MotiveDatum,
        f_et: GroupHom,
        f0: LinearMap,
        f_g: LinearMap,
    ) -> Result<Self> {
        let f = MotiveMorphism { source, target, f_et, f0, f_g };
        let bad = f.failures();
        if !bad.is_empty() {
            return Err(Error::invalid("motive morphism", bad));
        }
        Ok(f)
    }

    pub fn identity(m: &MotiveDatum) -> Self {
        MotiveMorphism {
            source: m.clone(),
            target: m.clone(),
            f_et: GroupHom::identity(&m.formal.etale),
            f0: LinearMap::identity(m.formal.f0dim),
            f_g: LinearMap::identity(m.lie_dim()),
        }
    }

    pub fn zero(a: &MotiveDatum, b: &MotiveDatum) -> Self {
        MotiveMorphism {
            source: a.clone(),
            target: b.clone(),
            f_et: GroupHom::zero(&a.formal.etale, &b.formal.etale),
            f0: LinearMap::zero(a.formal.f0dim, b.formal.f0dim),
            f_g: LinearMap::zero(a.lie_dim(), b.lie_dim()),
        }
    }

    pub fn failures(&self) -> Vec<String> {
        let (s, t) = (&self.source, &self.target);
        let mut bad = Vec::new();
        if self.f_et.source() != &s.formal.etale || self.f_et.target() != &t.formal.etale {
            bad.push("f_ét does not go between the etale groups".to_string());
        }
        if (self.f0.dom(), self.f0.cod()) != (s.formal.f0dim, t.formal.f0dim)
            || (self.f_g.dom(), self.f_g.cod()) != (s.lie_dim(), t.lie_dim())
        {
            bad.push("linear parts have the wrong shape".to_string());
        }
        if !bad.is_empty() {
            return bad;
        }
        let d = t.lie_dim();
        let fg = |v: &[Scalar]| self.f_g.apply(v).expect("shapes checked");
        if s.group.lattice.iter().any(|l| t.group.lattice_coords(&fg(l)).ok().flatten().is_none()) {
            bad.push("f_G does not map the lattice into the lattice".to_string());
        }
        if s.group.torus.iter().any(|l| lattice_membership(d, &t.group.torus, &fg(l)).ok().flatten().is_none()) {
            bad.push("f_G does not map the torus lattice into the torus lattice".to_string());
        }
        if !t.group.additive.contains(&self.f_g.image_of(&s.group.additive).expect("shapes checked")) {
            bad.push("f_G does not map V(G) into V(G')".to_string());
        }
        for j in 0..s.etale_generators() {
            if self.lift_correction(j).ok().flatten().is_none() {
                bad.push(format!("u_ét square fails on generator {j}"));
            }
        }
        let l = self.f_g.compose(&s.ua).expect("shapes checked");
        let r = t.ua.compose(&self.f0).expect("shapes checked");
        if l != r {
            bad.push("u_a square fails".to_string());
        }
        bad
    }

    pub fn is_valid(&self) -> bool {
        self.failures().is_empty()
    }

    /// Lattice coordinates of `f_G(lift_j) - lift'(f_ét(x_j))`.
    pub fn lift_correction(&self, j: usize) -> Result<Option<Vec<BigInt>>> {
        let img = self.f_g.apply(&self.source.lifts[j])?;
        let other = self.target.lift_of(self.f_et.matrix().row(j))?;
        let diff: Vec<Scalar> = img.iter().zip(&other).map(|(a, b)| a.clone() - b.clone()).collect();
        self.target.group.lattice_coords(&diff)
    }

    /// Rows: lattice coordinates of `f_G(λ_i)`.
    pub fn lattice_matrix(&self) -> Result<ZMatrix> {
        let (ls, lt) = (self.source.group.lattice.len(), self.target.group.lattice.len());
        let mut rows = Vec::with_capacity(ls);
        for l in &self.source.group.lattice {
            rows.push(self.target.group.lattice_coords(&self.f_g.apply(l)?)?.ok_or(Error::NotContained)?);
        }
        if ls == 0 {
            return Ok(ZMatrix::zeros(0, lt));
        }
        ZMatrix::from_rows(lt, &rows)
    }

    pub fn compose(&self, inner: &MotiveMorphism) -> Result<MotiveMorphism> {
        if inner.target != self.source {
            return Err(Error::dim("morphisms are not composable"));
        }
        MotiveMorphism::new(
            inner.source.clone(),
            self.target.clone(),
            self.f_et.compose(&inner.f_et)?,
            self.f0.compose(&inner.f0)?,
            self.f_g.compose(&inner.f_g)?,
        )
    }

    pub fn direct_sum(&self, other: &MotiveMorphism) -> MotiveMorphism {
        MotiveMorphism {
            source: self.source.direct_sum(&other.source),
            target: self.target.direct_sum(&other.target),
            f_et: self.f_et.direct_sum(&other.f_et),
            f0: self.f0.direct_sum(&other.f0),
            f_g: self.f_g.direct_sum(&other.f_g),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "fEt": self.f_et.matrix(),
            "f0": json::map_json(&self.f0),
            "fG": json::map_json(&self.f_g),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let source = MotiveDatum::from_json(json::field(v, "source")?)?;
        let target = MotiveDatum::from_json(json::field(v, "target")?)?;
        let m: ZMatrix = match v.get("fEt") {
            None | Some(Value::Null) => ZMatrix::zeros(0, 0),
            Some(x) => serde_json::from_value(x.clone()).map_err(|e| Error::Parse(e.to_string()))?,
        };
        let f_et = GroupHom::new(source.formal.etale.clone(), target.formal.etale.clone(), m)?;
        let f0 = json::map_field(v, "f0", source.formal.f0dim, target.formal.f0dim)?;
        let f_g = json::map_field(v, "fG", source.lie_dim(), target.lie_dim())?;
        MotiveMorphism::new(source, target, f_et, f0, f_g)
    }
}
