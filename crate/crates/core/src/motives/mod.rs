//! Linearized 1-motives `[u : F -> G]` over `Q(i)`.
//!
//! `G` is uniformized as `Lie G / Λ` with the torus lattice `Λ_T ⊆ Λ` and the
//! vector part `V(G) ⊆ Lie G`. `F = F⁰ × F_ét` is stored as `Lie F⁰` and an
//! abelian group; `u_ét` is given by lifts of the generators of `F_ét` to
//! `Lie G`, and `u_a : Lie F⁰ -> Lie G` is linear.

mod exactness;
pub mod fixtures;
mod morphism;
mod ops;
pub mod random;
mod realization;

pub use exactness::{check_strongly_exact, is_quasi_iso, LatticeLevel, StrongExactReport};
pub use morphism::MotiveMorphism;
pub use ops::{
    direct_sum_triple, fbasicext, fspecext, hom_to_ga, m_etale, m_times, torsion_parts, universal_extension, v_map,
    vbasicext, vec_m, TorsionParts, UniversalExtension,
};
pub use realization::{
    canonical_to_realized, fhs_to_realized, motive_from_fhs, motive_morphism_from_fhs, natural_extension,
    realized_to_fhs, sharp_extension, sharp_extension_morphism, t_oint, t_oint_morphism, t_sharp, SharpExtension,
    TSharp,
};

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{quotient, LinearMap, Scalar, Subspace};
use crate::groups::{is_q_independent, is_saturated_in, lattice_membership, rational_rank, FgAbGroup};
use crate::json;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupDatum {
    pub lie_dim: usize,
    /// `Λ = H_1(G, Z)`, one vector of `Lie G` per generator.
    pub lattice: Vec<Vec<Scalar>>,
    /// `Λ_T`, a saturated sublattice of `Λ`, as vectors of `Lie G`.
    pub torus: Vec<Vec<Scalar>>,
    /// `V(G)`
    pub additive: Subspace,
}

impl GroupDatum {
    pub fn zero() -> Self {
        GroupDatum { lie_dim: 0, lattice: vec![], torus: vec![], additive: Subspace::zero(0) }
    }

    /// `Λ` as a map `Q(i)^rank -> Lie G`.
    pub fn lattice_map(&self) -> LinearMap {
        LinearMap::from_images(self.lattice.len(), self.lie_dim, &self.lattice).expect("validated shapes")
    }

    /// Integer coordinates of `v` in `Λ`.
    pub fn lattice_coords(&self, v: &[Scalar]) -> Result<Option<Vec<BigInt>>> {
        lattice_membership(self.lie_dim, &self.lattice, v)
    }

    /// `Lie T`
    pub fn torus_span(&self) -> Subspace {
        Subspace::span(self.lie_dim, &self.torus).expect("validated shapes")
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormalDatum {
    pub etale: FgAbGroup,
    pub f0dim: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MotiveDatum {
    pub formal: FormalDatum,
    pub group: GroupDatum,
    /// One lift to `Lie G` per generator of `F_ét`.
    pub lifts: Vec<Vec<Scalar>>,
    /// `u_a : Lie F⁰ -> Lie G`
    pub ua: LinearMap,
}

/// `g, t, n`, the free rank `r` of `F_ét`, its torsion orders and `f⁰`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Ranks {
    pub g: usize,
    pub t: usize,
    pub n: usize,
    pub r: usize,
    pub f0: usize,
    pub torsion: Vec<BigInt>,
}

impl Ranks {
    /// `dim T♯ = 2g + t + r + n + f⁰`
    pub fn sharp_dim(&self) -> usize {
        2 * self.g + self.t + self.r + self.n + self.f0
    }

    /// `dim Ext(M_×, G_a)^∨ = g + r + f⁰`
    pub fn ext_times_dim(&self) -> usize {
        self.g + self.r + self.f0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "g": self.g, "t": self.t, "n": self.n, "r": self.r, "f0": self.f0,
            "torsion": self.torsion.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MotiveReport {
    pub failures: Vec<String>,
    pub ranks: Option<Ranks>,
}

impl MotiveReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "valid": self.is_valid(),
            "failures": self.failures,
            "ranks": self.ranks.as_ref().map(Ranks::to_json),
        })
    }
}

impl MotiveDatum {
    /// Builds without validating; see [`MotiveDatum::checked`].
    pub fn new(formal: FormalDatum, group: GroupDatum, lifts: Vec<Vec<Scalar>>, ua: LinearMap) -> Self {
        MotiveDatum { formal, group, lifts, ua }
    }

    pub fn checked(self) -> Result<Self> {
        let rep = self.validate();
        if !rep.is_valid() {
            return Err(Error::invalid("motive", rep.failures));
        }
        Ok(self)
    }

    pub fn zero() -> Self {
        MotiveDatum {
            formal: FormalDatum { etale: FgAbGroup::trivial(), f0dim: 0 },
            group: GroupDatum::zero(),
            lifts: vec![],
            ua: LinearMap::zero(0, 0),
        }
    }

    pub fn lie_dim(&self) -> usize {
        self.group.lie_dim
    }

    pub fn etale_generators(&self) -> usize {
        self.formal.etale.generators()
    }

    /// `u_ét` on generators, as a map `Q(i)^generators -> Lie G`.
    pub fn lifts_map(&self) -> LinearMap {
        LinearMap::from_images(self.lifts.len(), self.lie_dim(), &self.lifts).expect("validated shapes")
    }

    /// Lift of the element with generator coordinates `x`.
    pub fn lift_of(&self, x: &[BigInt]) -> Result<Vec<Scalar>> {
        let xs: Vec<Scalar> = x.iter().cloned().map(Scalar::from_bigint).collect();
        self.lifts_map().apply(&xs)
    }

    /// `u_a(Lie F⁰) ⊆ V(G)`
    pub fn is_special(&self) -> bool {
        self.group.additive.contains(&self.ua.image())
    }

    /// Ranks read off the data; meaningful only for valid motives.
    pub fn ranks(&self) -> Ranks {
        let t = self.group.torus.len();
        let n = self.group.additive.dim();
        let g = self.lie_dim().saturating_sub(n + t);
        let iso = self.formal.etale.iso_type();
        Ranks { g, t, n, r: iso.rank, f0: self.formal.f0dim, torsion: iso.torsion }
    }

    pub fn validate(&self) -> MotiveReport {
        let mut bad = Vec::new();
        let d = self.lie_dim();
        let grp = &self.group;
        let shape_ok = grp.lattice.iter().chain(&grp.torus).chain(&self.lifts).all(|v| v.len() == d)
            && grp.additive.ambient() == d
            && self.lifts.len() == self.etale_generators()
            && self.ua.dom() == self.formal.f0dim
            && self.ua.cod() == d;
        if !shape_ok {
            bad.push("shapes do not match Lie G, F_ét or Lie F0".to_string());
            return MotiveReport { failures: bad, ranks: None };
        }
        let ranks = self.ranks();
        if !is_q_independent(d, &grp.lattice).unwrap_or(false) {
            bad.push("lattice generators are Q-dependent".to_string());
            return MotiveReport { failures: bad, ranks: Some(ranks) };
        }
        let q = quotient(d, &grp.additive).expect("same ambient");
        let img = |vs: &[Vec<Scalar>], p: &LinearMap| -> Vec<Vec<Scalar>> {
            vs.iter().map(|v| p.apply(v).expect("shapes checked")).collect()
        };
        let lat_mod_v = img(&grp.lattice, &q.projection);
        if !is_q_independent(q.dim, &lat_mod_v).unwrap_or(false) {
            bad.push("lattice is not discrete modulo V(G)".to_string());
        }
        let span = Subspace::span(d, &grp.lattice).expect("shapes checked");
        if !span.sum(&grp.additive).expect("same ambient").is_full() {
            bad.push("span of the lattice and V(G) is not Lie G".to_string());
        }
        if d < ranks.n + ranks.t {
            bad.push(format!("dim Lie G = {d} < n + t = {}", ranks.n + ranks.t));
        } else if grp.lattice.len() != 2 * ranks.g + ranks.t {
            bad.push(format!("rank of the lattice is {} but 2g + t = {}", grp.lattice.len(), 2 * ranks.g + ranks.t));
        }
        match is_saturated_in(d, &grp.lattice, &grp.torus) {
            Ok(true) => {}
            _ => bad.push("torus lattice is not a saturated sublattice".to_string()),
        }
        let torus_mod_v = Subspace::span(q.dim, &img(&grp.torus, &q.projection)).expect("shapes checked");
        if torus_mod_v.dim() != ranks.t {
            bad.push("torus lattice does not span a torus of dimension t".to_string());
        } else if bad.is_empty() {
            // abelian quotient: Λ/Λ_T is a lattice of rank 2g in a space of dimension g
            let lin = grp.torus_span().sum(&grp.additive).expect("same ambient");
            let qa = quotient(d, &lin).expect("same ambient");
            let rank = rational_rank(qa.dim, &img(&grp.lattice, &qa.projection)).expect("shapes checked");
            if qa.dim != ranks.g || rank != 2 * ranks.g {
                bad.push(format!("abelian quotient has dimension {} and lattice rank {rank}", qa.dim));
            }
        }
        if bad.is_empty() {
            for (k, rel) in self.formal.etale.relations().row_vecs().iter().enumerate() {
                let v = self.lift_of(rel).expect("shapes checked");
                if grp.lattice_coords(&v).ok().flatten().is_none() {
                    bad.push(format!("relation {k} of F_ét does not lift into the lattice"));
                }
            }
        }
        MotiveReport { failures: bad, ranks: Some(ranks) }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    pub fn direct_sum(&self, other: &MotiveDatum) -> MotiveDatum {
        let (d1, d2) = (self.lie_dim(), other.lie_dim());
        let pad = |v: &[Scalar], left: bool| -> Vec<Scalar> {
            let mut out = vec![Scalar::zero(); d1 + d2];
            let off = if left { 0 } else { d1 };
            for (k, x) in v.iter().enumerate() {
                out[off + k] = x.clone();
            }
            out
        };
        let cat = |a: &[Vec<Scalar>], b: &[Vec<Scalar>]| -> Vec<Vec<Scalar>> {
            a.iter().map(|v| pad(v, true)).chain(b.iter().map(|v| pad(v, false))).collect()
        };
        MotiveDatum {
            formal: FormalDatum {
                etale: self.formal.etale.direct_sum(&other.formal.etale),
                f0dim: self.formal.f0dim + other.formal.f0dim,
            },
            group: GroupDatum {
                lie_dim: d1 + d2,
                lattice: cat(&self.group.lattice, &other.group.lattice),
                torus: cat(&self.group.torus, &other.group.torus),
                additive: self.group.additive.direct_sum(&other.group.additive),
            },
            lifts: cat(&self.lifts, &other.lifts),
            ua: self.ua.direct_sum(&other.ua),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "formal": {"etale": self.formal.etale.to_json(), "f0dim": self.formal.f0dim},
            "group": {
                "lieDim": self.lie_dim(),
                "lattice": json::rows_json(&self.group.lattice),
                "torusSub": json::rows_json(&self.group.torus),
                "addSub": json::subspace_json(&self.group.additive),
            },
            "uEtLifts": json::rows_json(&self.lifts),
            "uA": json::map_json(&self.ua),
        })
    }

    /// Parses and validates.
    pub fn from_json(v: &Value) -> Result<Self> {
        let formal = json::field(v, "formal")?;
        let etale = match formal.get("etale") {
            None | Some(Value::Null) => FgAbGroup::trivial(),
            Some(e) => FgAbGroup::from_json(e)?,
        };
        let f0dim = json::opt_usize_field(formal, "f0dim", 0)?;
        let group = json::field(v, "group")?;
        let d = json::usize_field(group, "lieDim")?;
        let lattice = json::opt_scalar_rows(group, "lattice", d)?;
        let torus = json::opt_scalar_rows(group, "torusSub", d)?;
        let additive = json::subspace_field(group, "addSub", d)?;
        let lifts = match v.get("uEtLifts") {
            None | Some(Value::Null) if etale.generators() == 0 => vec![],
            _ => json::opt_scalar_rows(v, "uEtLifts", d)?,
        };
        let ua = json::map_field(v, "uA", f0dim, d)?;
        MotiveDatum::new(FormalDatum { etale, f0dim }, GroupDatum { lie_dim: d, lattice, torus, additive }, lifts, ua)
            .checked()
    }
}
