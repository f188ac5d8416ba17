//! `H¹_♯-dR` of proper and smooth varieties from their linear cohomological
//! shadows, and the comparison-map criteria.
//!
//! Nothing geometric is computed here: callers supply `H¹(X, Z)` as a level-one
//! mixed Hodge structure together with the relevant coherent dimensions and maps.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{fiber_product, FilteredSpace, LinearMap, Subspace};
use crate::formal_hodge::{Ehs1, Fhs1};
use crate::groups::FgAbGroup;
use crate::hodge::{rational_quotient, Mhs1};
use crate::json;
use crate::sharp::{sharp_envelope, sharp_special, SharpEnvelope};

/// Proper `X` with a hypercovering `X•`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProperCohData {
    /// `H¹(X, Z)` with `W` and `F`; `H¹(X, C)` is its complexification.
    pub het: Mhs1,
    /// `dim H¹(X, O_X)`
    pub h1o: usize,
    /// `dim H¹(X•, O_{X•})`
    pub h1o_bullet: usize,
    /// `π₀ : H¹(X, O_X) -> H¹(X•, O_{X•})`
    pub pi0: LinearMap,
    /// `c : H¹(X, C) -> H¹(X•, O_{X•})`, with kernel the `F`-part.
    pub c: LinearMap,
    /// `H¹(X, C) -> H¹(X, O_X)` lifting `c`; a section of `π₀` is used when absent.
    pub iota: Option<LinearMap>,
}

impl ProperCohData {
    pub fn validate(&self) -> Vec<String> {
        let r = self.het.rank();
        let mut bad = Vec::new();
        if (self.pi0.dom(), self.pi0.cod()) != (self.h1o, self.h1o_bullet)
            || (self.c.dom(), self.c.cod()) != (r, self.h1o_bullet)
        {
            return vec!["shapes of pi0 and c do not match the dimensions".into()];
        }
        if let Some(i) = &self.iota {
            if (i.dom(), i.cod()) != (r, self.h1o) {
                return vec!["iota must map H1(X,C) to H1(X,O)".into()];
            }
            if self.pi0.compose(i).map(|m| m != self.c).unwrap_or(true) {
                bad.push("pi0 ∘ iota differs from c".into());
            }
        }
        if !self.pi0.is_surjective() {
            bad.push("pi0 is not surjective".into());
        }
        if !self.c.is_surjective() {
            bad.push("c is not surjective".into());
        }
        if self.c.kernel() != self.het.f0 {
            bad.push("kernel of c is not F".into());
        }
        bad.extend(self.het.validate().failures.into_iter().map(|f| format!("H1: {f}")));
        bad
    }

    /// `V(Pic) = ker π₀`
    pub fn v_pic(&self) -> Subspace {
        self.pi0.kernel()
    }

    fn iota_or_section(&self) -> Result<LinearMap> {
        match &self.iota {
            Some(i) => Ok(i.clone()),
            None => self.pi0.right_inverse()?.compose(&self.c),
        }
    }

    /// `(H, V)` with `V = H¹(X, O_X)`, `V⁰ = V(Pic)`, `H⁰ = 0`.
    pub fn fhs(&self) -> Result<Fhs1> {
        let vc = self.iota_or_section()?;
        let vz = vc.compose(&rational_quotient(&self.het.lattice).projection)?.images();
        Fhs1::with_induced_sigma(0, self.het.clone(), self.h1o, self.v_pic(), LinearMap::zero(0, self.h1o), vz)?
            .checked()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "het": self.het.to_json(),
            "h1O": self.h1o,
            "h1Obullet": self.h1o_bullet,
            "pi0": json::map_json(&self.pi0),
            "c": json::map_json(&self.c),
            "iota": self.iota.as_ref().map(json::map_json),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let het = Mhs1::from_json(json::field(v, "het")?)?;
        let h1o = json::usize_field(v, "h1O")?;
        let h1o_bullet = json::usize_field(v, "h1Obullet")?;
        let r = het.rank();
        let iota = match v.get("iota") {
            None | Some(Value::Null) => None,
            Some(_) => Some(json::map_field(v, "iota", r, h1o)?),
        };
        Ok(ProperCohData {
            pi0: json::map_field(v, "pi0", h1o, h1o_bullet)?,
            c: json::map_field(v, "c", r, h1o_bullet)?,
            het,
            h1o,
            h1o_bullet,
            iota,
        })
    }
}

/// Smooth `X` with a good compactification `X̄` and boundary `Y`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SmoothCohData {
    /// `Div⁰_Y(X̄)`
    pub divisor_lattice: FgAbGroup,
    /// `H¹(X, Z)` with its mixed Hodge structure (log de Rham side).
    pub het: Mhs1,
    /// `dim H¹(X̄, O_X̄)`
    pub h1o_bar: usize,
    /// `dim H¹(X, O_X)`
    pub h1o_x: usize,
    /// `H¹(X̄, O_X̄) -> H¹(X, O_X)`; its kernel is `V(Alb)`.
    pub restriction: LinearMap,
    /// `H¹(X, C) -> H¹(X̄, O_X̄)` with kernel the `F`-part.
    pub c: LinearMap,
}

impl SmoothCohData {
    pub fn validate(&self) -> Vec<String> {
        let r = self.het.rank();
        if (self.restriction.dom(), self.restriction.cod()) != (self.h1o_bar, self.h1o_x)
            || (self.c.dom(), self.c.cod()) != (r, self.h1o_bar)
        {
            return vec!["shapes of restriction and c do not match the dimensions".into()];
        }
        let mut bad = Vec::new();
        if r != self.divisor_lattice.rank() + 2 * self.h1o_bar {
            bad.push(format!(
                "rank H1(X,Z) = {r} but rank Div0 + 2 dim H1(Xbar,O) = {}",
                self.divisor_lattice.rank() + 2 * self.h1o_bar
            ));
        }
        if !self.c.is_surjective() || self.c.kernel() != self.het.f0 {
            bad.push("c is not a surjection with kernel F".into());
        }
        bad.extend(self.het.validate().failures.into_iter().map(|f| format!("H1: {f}")));
        bad
    }

    /// `V(Alb) = ker(restriction)`
    pub fn v_alb(&self) -> Subspace {
        self.restriction.kernel()
    }

    /// `(H, V)` with `V = H¹(X̄, O)`, `V⁰ = 0` and `H⁰ = V(Alb) ⊆ V`.
    pub fn fhs(&self) -> Result<Fhs1> {
        let va = self.v_alb();
        let vz = self.c.compose(&rational_quotient(&self.het.lattice).projection)?.images();
        Fhs1::with_induced_sigma(
            va.dim(),
            self.het.clone(),
            self.h1o_bar,
            Subspace::zero(self.h1o_bar),
            LinearMap::inclusion(&va),
            vz,
        )?
        .checked()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "divisorLattice": self.divisor_lattice.to_json(),
            "het": self.het.to_json(),
            "h1Obar": self.h1o_bar,
            "h1OX": self.h1o_x,
            "restriction": json::map_json(&self.restriction),
            "c": json::map_json(&self.c),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let het = Mhs1::from_json(json::field(v, "het")?)?;
        let h1o_bar = json::usize_field(v, "h1Obar")?;
        let h1o_x = json::usize_field(v, "h1OX")?;
        let r = het.rank();
        Ok(SmoothCohData {
            divisor_lattice: match v.get("divisorLattice") {
                None | Some(Value::Null) => FgAbGroup::trivial(),
                Some(g) => FgAbGroup::from_json(g)?,
            },
            restriction: json::map_field(v, "restriction", h1o_bar, h1o_x)?,
            c: json::map_field(v, "c", r, h1o_bar)?,
            het,
            h1o_bar,
            h1o_x,
        })
    }
}

/// `H¹_♯-dR(X)` with its structures.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SharpCohomology {
    /// The space with the steps `V ⊆ H¹_♯-dR`.
    pub space: FilteredSpace,
    pub fhs: Fhs1,
    pub envelope: SharpEnvelope,
    /// The enriched structure, when the formal structure is special.
    pub enriched: Option<Ehs1>,
    /// `H¹(X, C) ⊕ V -> H¹_♯-dR(X)`
    pub witness: LinearMap,
    pub witness_is_iso: bool,
}

impl SharpCohomology {
    pub fn dim(&self) -> usize {
        self.space.dim
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim(),
            "steps": self.space.steps.iter().map(|(k, s)| json!({"name": k, "dim": s.dim()})).collect::<Vec<_>>(),
            "HZrank": self.fhs.rank(),
            "fhs": self.fhs.to_json(),
            "enriched": self.enriched.as_ref().map(Ehs1::to_json),
            "directSumWitness": {"map": json::map_json(&self.witness), "isomorphism": self.witness_is_iso},
        })
    }
}

fn special_part(x: &Fhs1) -> Result<Option<Ehs1>> {
    match sharp_special(x) {
        Ok((e, _)) => Ok(Some(e)),
        Err(Error::NotSpecial) => Ok(None),
        Err(e) => Err(e),
    }
}

/// `H¹_♯-dR(X) = H¹(X, C) ×_{H¹(X•, O)} H¹(X, O_X)` for proper `X`.
pub fn h1_sharp_proper(d: &ProperCohData) -> Result<SharpCohomology> {
    let bad = d.validate();
    if !bad.is_empty() {
        return Err(Error::invalid("proper cohomology data", bad));
    }
    let fp = fiber_product(&d.c, &d.pi0)?;
    let r = d.het.rank();
    let dim = fp.dim();
    let vpic = d.v_pic();
    let coords = |v: Vec<crate::exact::Scalar>| fp.sub.coords(&v).ok_or(Error::NotContained);

    let mut vpic_imgs = Vec::new();
    for w in vpic.vectors() {
        let mut v = vec![crate::exact::Scalar::zero(); r];
        v.extend(w);
        vpic_imgs.push(coords(v)?);
    }
    let space = FilteredSpace::new(
        dim,
        vec![("V(Pic)".into(), Subspace::span(dim, &vpic_imgs)?), ("H1#dR".into(), Subspace::full(dim))],
    )?;

    // (h, w) ↦ (h, s(c h) + w)
    let s = d.pi0.right_inverse()?;
    let mut imgs = Vec::new();
    for k in 0..r {
        let mut h = vec![crate::exact::Scalar::zero(); r];
        h[k] = crate::exact::Scalar::one();
        let lift = s.apply(&d.c.apply(&h)?)?;
        h.extend(lift);
        imgs.push(coords(h)?);
    }
    imgs.extend(vpic_imgs);
    let witness = LinearMap::from_images(r + vpic.dim(), dim, &imgs)?;

    let fhs = d.fhs()?;
    let envelope = sharp_envelope(&fhs)?;
    if envelope.ambient.dim() != dim {
        return Err(Error::dim("sharp envelope and fiber product disagree"));
    }
    Ok(SharpCohomology {
        enriched: special_part(&fhs)?,
        witness_is_iso: witness.is_iso(),
        space,
        fhs,
        envelope,
        witness,
    })
}

/// `H¹_♯-dR(X) ≅ H¹(X, C) ⊕ V(Alb)` for smooth `X`, realized as the sharp
/// envelope of `(H¹(X), H¹(X̄, O))` with `H⁰ = V(Alb)`.
pub fn h1_sharp_smooth(d: &SmoothCohData) -> Result<SharpCohomology> {
    let bad = d.validate();
    if !bad.is_empty() {
        return Err(Error::invalid("smooth cohomology data", bad));
    }
    let fhs = d.fhs()?;
    let envelope = sharp_envelope(&fhs)?;
    let dim = envelope.ambient.dim();
    let r = fhs.rank();
    let h0 = fhs.h0dim;
    // V^♯ -> H_C ⊕ Lie H⁰ is injective because V⁰ = 0
    let drop_v =
        LinearMap::coordinate_projection(fhs.vdim + r + h0, fhs.vdim, r + h0).compose(&envelope.embedding())?;
    let witness = drop_v.inverse().ok_or_else(|| Error::NotInjective("V# -> H_C ⊕ V(Alb)".into()))?;
    let valb = envelope.split0.image();
    let space = FilteredSpace::new(dim, vec![("V(Alb)".into(), valb), ("H1#dR".into(), Subspace::full(dim))])?;
    Ok(SharpCohomology {
        enriched: special_part(&fhs)?,
        witness_is_iso: witness.is_iso(),
        space,
        fhs,
        envelope,
        witness,
    })
}

/// The maps entering the comparison-map criteria.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComparisonInput {
    /// `H¹(X, O) -> H¹(X, †Ω^{≥1})`
    pub boundary: LinearMap,
    /// `H⁰(X, †Ω^{≥1}) -> H⁰(X•, Ω¹)`
    pub global_forms: LinearMap,
}

impl ComparisonInput {
    pub fn from_json(v: &Value, d: &ProperCohData) -> Result<Self> {
        let bcod = json::usize_field(v, "boundaryCod")?;
        let gdom = json::usize_field(v, "globalFormsDom")?;
        Ok(ComparisonInput {
            boundary: json::map_field(v, "boundary", d.h1o, bcod)?,
            global_forms: json::map_field(v, "globalForms", gdom, d.het.f0.dim())?,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "boundaryCod": self.boundary.cod(),
            "globalFormsDom": self.global_forms.dom(),
            "boundary": json::map_json(&self.boundary),
            "globalForms": json::map_json(&self.global_forms),
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ComparisonFlags {
    pub surjective: bool,
    pub injective: bool,
}

impl ComparisonFlags {
    pub fn isomorphism(&self) -> bool {
        self.surjective && self.injective
    }

    pub fn to_json(&self) -> Value {
        json!({"surjective": self.surjective, "injective": self.injective, "isomorphism": self.isomorphism()})
    }
}

/// Surjective iff the boundary map vanishes and global forms surject;
/// injective iff global forms inject. `H⁰(X•, Ω¹)` has the dimension of `F`.
pub fn comparison_criteria(d: &ProperCohData, c: &ComparisonInput) -> Result<ComparisonFlags> {
    if c.boundary.dom() != d.h1o || c.global_forms.cod() != d.het.f0.dim() {
        return Err(Error::dim("comparison maps do not match the cohomology data"));
    }
    Ok(ComparisonFlags {
        surjective: c.boundary.matrix().is_zero() && c.global_forms.is_surjective(),
        injective: c.global_forms.is_injective(),
    })
}

/// Named inputs: singular cubics and genus-one curves.
pub mod fixtures {
    use super::{ProperCohData, SmoothCohData};
    use crate::exact::{LinearMap, Matrix, Scalar};
    use crate::groups::FgAbGroup;
    use crate::hodge::Mhs1;

    /// `y² = x³`: normalization `P¹`, so `H¹(X•, O) = 0` and `H¹(X, Z) = 0`;
    /// `H¹(X, O_X)` is one-dimensional and all of it is `V(Pic)`.
    pub fn cuspidal_cubic() -> ProperCohData {
        ProperCohData {
            het: Mhs1::zero(),
            h1o: 1,
            h1o_bullet: 0,
            pi0: LinearMap::zero(1, 0),
            c: LinearMap::zero(0, 0),
            iota: None,
        }
    }

    /// `y² = x²(x + 1)`: `Pic⁰ = G_m`, `H¹(X, Z)` of rank one and weight `-2`,
    /// `π₀` and `c` isomorphisms.
    pub fn nodal_cubic() -> ProperCohData {
        ProperCohData {
            het: Mhs1::tate1(1),
            h1o: 1,
            h1o_bullet: 1,
            pi0: LinearMap::identity(1),
            c: LinearMap::identity(1),
            iota: None,
        }
    }

    fn elliptic_c() -> LinearMap {
        LinearMap::new(2, 1, Matrix::from_rows(2, &[vec![Scalar::one(), Scalar::i()]]).expect("1x2")).expect("shape")
    }

    /// `C/(Z + Z i)` as a smooth proper curve.
    pub fn genus_one() -> ProperCohData {
        ProperCohData {
            het: Mhs1::elliptic(),
            h1o: 1,
            h1o_bullet: 1,
            pi0: LinearMap::identity(1),
            c: elliptic_c(),
            iota: None,
        }
    }

    /// The elliptic curve minus its origin: `Y` is one point, so `Div⁰_Y = 0`
    /// and `V(Alb) = 0`.
    pub fn punctured_elliptic() -> SmoothCohData {
        SmoothCohData {
            divisor_lattice: FgAbGroup::trivial(),
            het: Mhs1::elliptic(),
            h1o_bar: 1,
            h1o_x: 1,
            restriction: LinearMap::identity(1),
            c: elliptic_c(),
        }
    }

    /// The elliptic curve with `H¹(X̄, O) -> H¹(X, O)` zero, so `V(Alb)` is one-dimensional.
    pub fn elliptic_with_vector_albanese() -> SmoothCohData {
        SmoothCohData { h1o_x: 0, restriction: LinearMap::zero(1, 0), ..punctured_elliptic() }
    }

    pub fn proper_all() -> Vec<(&'static str, ProperCohData)> {
        vec![("cuspidal_cubic", cuspidal_cubic()), ("nodal_cubic", nodal_cubic()), ("genus_one", genus_one())]
    }

    pub fn smooth_all() -> Vec<(&'static str, SmoothCohData)> {
        vec![
            ("punctured_elliptic", punctured_elliptic()),
            ("elliptic_vector_albanese", elliptic_with_vector_albanese()),
        ]
    }
}
