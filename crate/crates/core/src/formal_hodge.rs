//! Formal Hodge structures of level at most one and their enriched variant.
//!
//! An [`Fhs1`] is `(H⁰, H_ét, V, V⁰, v⁰, v_Z, σ)`: `H⁰` is recorded by the
//! dimension of its Lie algebra, `H_ét` by a mixed Hodge structure on a
//! finitely generated lattice, `v_Z` by the images in `V` of the lattice
//! generators, and `σ : H_C/F⁰ -> V/V⁰` in the pivot-complement coordinates of
//! both quotients.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{factor_through, induced_map, quotient, LinearMap, Quotient, Scalar, Subspace};
use crate::groups::{image_equals_kernel, GroupHom};
use crate::hodge::{induced_rational_map, rational_quotient, Mhs1};
use crate::json;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fhs1 {
    pub h0dim: usize,
    pub het: Mhs1,
    pub vdim: usize,
    pub v0: Subspace,
    /// `v⁰ : Lie H⁰ -> V`
    pub v0map: LinearMap,
    /// `v_Z` on the lattice generators.
    pub vz: Vec<Vec<Scalar>>,
    pub sigma: LinearMap,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Classification {
    pub etale: bool,
    pub special: bool,
    pub connected: bool,
}

impl Classification {
    pub fn to_json(&self) -> Value {
        json!({"etale": self.etale, "special": self.special, "connected": self.connected})
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FhsReport {
    pub failures: Vec<String>,
    pub h0dim: usize,
    pub rank: usize,
    pub vdim: usize,
    pub v0dim: usize,
    pub v1dim: Option<usize>,
}

impl FhsReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "valid": self.is_valid(),
            "failures": self.failures,
            "dims": {"H0": self.h0dim, "HZrank": self.rank, "V": self.vdim, "V0": self.v0dim, "V1": self.v1dim},
        })
    }
}

impl Fhs1 {
    /// Assembles a structure, checking only that all shapes agree.
    pub fn new(
        h0dim: usize,
        het: Mhs1,
        vdim: usize,
        v0: Subspace,
        v0map: LinearMap,
        vz: Vec<Vec<Scalar>>,
        sigma: LinearMap,
    ) -> Result<Self> {
        let r = het.rank();
        if v0.ambient() != vdim {
            return Err(Error::dim("V0 is not a subspace of V"));
        }
        if v0map.dom() != h0dim || v0map.cod() != vdim {
            return Err(Error::dim(format!("v0 must map {h0dim} -> {vdim}")));
        }
        if vz.len() != het.lattice.generators() || vz.iter().any(|v| v.len() != vdim) {
            return Err(Error::dim("v_Z needs one image in V per lattice generator"));
        }
        let (sd, sc) = (r - het.f0.dim(), vdim - v0.dim());
        if sigma.dom() != sd || sigma.cod() != sc {
            return Err(Error::dim(format!("sigma must map {sd} -> {sc}")));
        }
        Ok(Fhs1 { h0dim, het, vdim, v0, v0map, vz, sigma })
    }

    /// Like [`Fhs1::new`], with `σ` the unique map making the square commute.
    pub fn with_induced_sigma(
        h0dim: usize,
        het: Mhs1,
        vdim: usize,
        v0: Subspace,
        v0map: LinearMap,
        vz: Vec<Vec<Scalar>>,
    ) -> Result<Self> {
        let placeholder = LinearMap::zero(het.rank() - het.f0.dim(), vdim - v0.dim());
        let mut x = Fhs1::new(h0dim, het, vdim, v0, v0map, vz, placeholder)?;
        let prv = x.v_quotient().projection.compose(&x.v_c())?;
        x.sigma = factor_through(&prv, &x.c_quotient())
            .map_err(|_| Error::invalid("FHS1", vec!["v_C(F0) is not contained in V0".into()]))?;
        Ok(x)
    }

    pub fn zero() -> Self {
        Fhs1 {
            h0dim: 0,
            het: Mhs1::zero(),
            vdim: 0,
            v0: Subspace::zero(0),
            v0map: LinearMap::zero(0, 0),
            vz: vec![],
            sigma: LinearMap::zero(0, 0),
        }
    }

    /// The elliptic curve `C/(Z + Z i)`: `V = Q(i)`, `v_Z : e1 ↦ 1, e2 ↦ i`.
    pub fn elliptic() -> Self {
        Fhs1::with_induced_sigma(
            0,
            Mhs1::elliptic(),
            1,
            Subspace::zero(1),
            LinearMap::zero(0, 1),
            vec![vec![Scalar::one()], vec![Scalar::i()]],
        )
        .expect("elliptic data is consistent")
    }

    pub fn rank(&self) -> usize {
        self.het.rank()
    }

    /// `v_Z` as a linear map out of `Q(i)^generators`.
    pub fn vz_map(&self) -> LinearMap {
        LinearMap::from_images(self.vz.len(), self.vdim, &self.vz).expect("shapes checked")
    }

    /// `v_Z` of a lattice element in generator coordinates.
    pub fn vz_of(&self, x: &[BigInt]) -> Result<Vec<Scalar>> {
        let xs: Vec<Scalar> = x.iter().cloned().map(Scalar::from_bigint).collect();
        self.vz_map().apply(&xs)
    }

    /// `v_C : H_C -> V`.
    pub fn v_c(&self) -> LinearMap {
        let q = rational_quotient(&self.het.lattice);
        self.vz_map().compose(&q.section).expect("shapes checked")
    }

    /// `c : H_C -> H_C/F⁰`.
    pub fn c_quotient(&self) -> Quotient {
        quotient(self.rank(), &self.het.f0).expect("F0 lives in H_C")
    }

    /// `pr : V -> V/V⁰`.
    pub fn v_quotient(&self) -> Quotient {
        quotient(self.vdim, &self.v0).expect("V0 lives in V")
    }

    pub fn validate(&self) -> FhsReport {
        let mut failures: Vec<String> = self.het.validate().failures.into_iter().map(|f| format!("Het: {f}")).collect();
        let vz = self.vz_map();
        for (k, rel) in self.het.lattice.relations().row_vecs().iter().enumerate() {
            match self.vz_of(rel) {
                Ok(v) if v.iter().all(Scalar::is_zero) => {}
                _ => failures.push(format!("v_Z does not kill relation {k}")),
            }
        }
        if !self.sigma.is_iso() {
            failures.push("sigma not iso".into());
        }
        let gen = rational_quotient(&self.het.lattice).projection;
        let lhs = self.v_quotient().projection.compose(&vz).expect("shapes checked");
        let rhs =
            self.sigma.compose(&self.c_quotient().projection).and_then(|m| m.compose(&gen)).expect("shapes checked");
        for (k, (a, b)) in lhs.images().iter().zip(rhs.images()).enumerate() {
            if *a != b {
                failures.push(format!("square fails on generator {k}"));
            }
        }
        let v1 = self.v1().ok();
        match &v1 {
            Some(v1) if v1.contains(&self.v0) => {}
            _ => failures.push("V1 nesting broken".into()),
        }
        FhsReport {
            failures,
            h0dim: self.h0dim,
            rank: self.rank(),
            vdim: self.vdim,
            v0dim: self.v0.dim(),
            v1dim: v1.map(|s| s.dim()),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// Validates, returning the structure or its itemized failures.
    pub fn checked(self) -> Result<Self> {
        let rep = self.validate();
        if rep.is_valid() {
            Ok(self)
        } else {
            Err(Error::invalid("FHS1", rep.failures))
        }
    }

    /// `V¹`: the preimage in `V` of `σ(W₋₂ ⊗ C)`.
    pub fn v1(&self) -> Result<Subspace> {
        let cq = self.c_quotient();
        let w2 = cq.projection.image_of(&self.het.wm2)?;
        let target = self.sigma.image_of(&w2)?;
        self.v_quotient().projection.preimage(&target)
    }

    pub fn classify(&self) -> Classification {
        let image = self.v0map.image();
        Classification {
            etale: self.h0dim == 0 && self.v0.is_zero(),
            special: self.v0.contains(&image),
            connected: self.het.lattice.is_trivial(),
        }
    }

    /// `(H × V̂, V)`, or `(H × V̂⁰, V)` when `restrict_to_v0` is set.
    pub fn arrow(&self, restrict_to_v0: bool) -> Result<Fhs1> {
        let extra = if restrict_to_v0 { LinearMap::inclusion(&self.v0) } else { LinearMap::identity(self.vdim) };
        let mut x = self.clone();
        x.h0dim += extra.dom();
        x.v0map = self.v0map.copair(&extra)?;
        Ok(x)
    }

    /// Componentwise direct sum.
    pub fn direct_sum(&self, other: &Fhs1) -> Fhs1 {
        let pad = |v: &Vec<Scalar>, before: usize, after: usize| -> Vec<Scalar> {
            let mut out = vec![Scalar::zero(); before];
            out.extend(v.iter().cloned());
            out.extend(std::iter::repeat_n(Scalar::zero(), after));
            out
        };
        let mut vz: Vec<Vec<Scalar>> = self.vz.iter().map(|v| pad(v, 0, other.vdim)).collect();
        vz.extend(other.vz.iter().map(|v| pad(v, self.vdim, 0)));
        Fhs1 {
            h0dim: self.h0dim + other.h0dim,
            het: self.het.direct_sum(&other.het),
            vdim: self.vdim + other.vdim,
            v0: self.v0.direct_sum(&other.v0),
            v0map: self.v0map.direct_sum(&other.v0map),
            vz,
            sigma: self.sigma.direct_sum(&other.sigma),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "h0dim": self.h0dim,
            "het": self.het.to_json(),
            "vdim": self.vdim,
            "v0basis": json::subspace_json(&self.v0),
            "v0map": json::map_json(&self.v0map),
            "vZimages": json::rows_json(&self.vz),
            "sigma": json::map_json(&self.sigma),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let h0dim = json::usize_field(v, "h0dim")?;
        let het = Mhs1::from_json(json::field(v, "het")?)?;
        let vdim = json::usize_field(v, "vdim")?;
        let v0 = json::subspace_field(v, "v0basis", vdim)?;
        let v0map = json::map_field(v, "v0map", h0dim, vdim)?;
        let vz = json::opt_scalar_rows(v, "vZimages", vdim)?;
        let (sd, sc) = (het.rank() - het.f0.dim(), vdim - v0.dim());
        match v.get("sigma") {
            None | Some(Value::Null) => Fhs1::with_induced_sigma(h0dim, het, vdim, v0, v0map, vz),
            Some(_) => {
                let sigma = json::map_field(v, "sigma", sd, sc)?;
                Fhs1::new(h0dim, het, vdim, v0, v0map, vz, sigma)
            }
        }
    }
}

/// Enriched structure `(H_ét, u : U -> V)` with `ρ : H_C -> U`, a retraction
/// `π : U -> H_C` and `π₀ : V -> H_C/F⁰`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ehs1 {
    pub het: Mhs1,
    pub udim: usize,
    pub vdim: usize,
    pub u: LinearMap,
    pub rho: LinearMap,
    pub pi: LinearMap,
    pub pi0: LinearMap,
}

impl Ehs1 {
    pub fn new(het: Mhs1, u: LinearMap, rho: LinearMap, pi: LinearMap, pi0: LinearMap) -> Result<Self> {
        let r = het.rank();
        let (udim, vdim) = (u.dom(), u.cod());
        let qdim = r - het.f0.dim();
        if rho.dom() != r || rho.cod() != udim || pi.dom() != udim || pi.cod() != r {
            return Err(Error::dim("rho and pi must connect H_C and U"));
        }
        if pi0.dom() != vdim || pi0.cod() != qdim {
            return Err(Error::dim(format!("pi0 must map {vdim} -> {qdim}")));
        }
        Ok(Ehs1 { het, udim, vdim, u, rho, pi, pi0 })
    }

    pub fn validate(&self) -> Vec<String> {
        let mut failures: Vec<String> = self.het.validate().failures.into_iter().map(|f| format!("Het: {f}")).collect();
        if self.pi.compose(&self.rho).expect("shapes") != LinearMap::identity(self.het.rank()) {
            failures.push("pi ∘ rho is not the identity".into());
        }
        let c = quotient(self.het.rank(), &self.het.f0).expect("F0 in H_C").projection;
        if self.pi0.compose(&self.u).expect("shapes") != c.compose(&self.pi).expect("shapes") {
            failures.push("pi0 ∘ u differs from c ∘ pi".into());
        }
        failures
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// The isomorphism `U -> H_C ⊕ ker π`, `x ↦ (π x, x - ρ π x)`, onto the
    /// `U` produced by `fhs_to_ehs(ehs_to_fhs(self))`.
    pub fn canonical_u_iso(&self) -> Result<LinearMap> {
        let k = self.pi.kernel();
        let idm = LinearMap::identity(self.udim);
        let rest = idm.sub(&self.rho.compose(&self.pi)?)?.corestrict(&k)?;
        self.pi.pair(&rest)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "het": self.het.to_json(),
            "udim": self.udim,
            "vdim": self.vdim,
            "u": json::map_json(&self.u),
            "rho": json::map_json(&self.rho),
            "pi": json::map_json(&self.pi),
            "pi0": json::map_json(&self.pi0),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let het = Mhs1::from_json(json::field(v, "het")?)?;
        let (udim, vdim) = (json::usize_field(v, "udim")?, json::usize_field(v, "vdim")?);
        let r = het.rank();
        let qdim = r - het.f0.dim();
        Ehs1::new(
            het,
            json::map_field(v, "u", udim, vdim)?,
            json::map_field(v, "rho", r, udim)?,
            json::map_field(v, "pi", udim, r)?,
            json::map_field(v, "pi0", vdim, qdim)?,
        )
    }
}

/// Whether `phi : U -> U'` identifies two enriched structures on the same
/// `H_ét` and `V`.
pub fn ehs_isomorphic_via(a: &Ehs1, b: &Ehs1, phi: &LinearMap) -> bool {
    let ok = || -> Result<bool> {
        Ok(a.het == b.het
            && a.vdim == b.vdim
            && phi.dom() == a.udim
            && phi.cod() == b.udim
            && phi.is_iso()
            && b.u.compose(phi)? == a.u
            && phi.compose(&a.rho)? == b.rho
            && b.pi.compose(phi)? == a.pi
            && a.pi0 == b.pi0)
    };
    ok().unwrap_or(false)
}

/// `(H_Z × ker(π)^, V)`: always special.
pub fn ehs_to_fhs(e: &Ehs1) -> Result<Fhs1> {
    let k = e.pi.kernel();
    let v0map = e.u.compose(&LinearMap::inclusion(&k))?;
    let gen = rational_quotient(&e.het.lattice).projection;
    let vz = e.u.compose(&e.rho)?.compose(&gen)?.images();
    let x = Fhs1::with_induced_sigma(k.dim(), e.het.clone(), e.vdim, e.pi0.kernel(), v0map, vz)?;
    if !x.sigma.is_iso() {
        return Err(Error::invalid("EHS1", vec!["induced sigma not iso".into()]));
    }
    Ok(x)
}

/// `U := H_C ⊕ Lie H⁰` with `u = (v_C, v⁰)`, `π₀ = σ⁻¹ ∘ pr`.
pub fn fhs_to_ehs(x: &Fhs1) -> Result<Ehs1> {
    if !x.classify().special {
        return Err(Error::NotSpecial);
    }
    let r = x.rank();
    let udim = r + x.h0dim;
    let u = x.v_c().copair(&x.v0map)?;
    let sinv = x.sigma.inverse().ok_or_else(|| Error::invalid("FHS1", vec!["sigma not iso".into()]))?;
    let pi0 = sinv.compose(&x.v_quotient().projection)?;
    Ehs1::new(
        x.het.clone(),
        u,
        LinearMap::coordinate_inclusion(r, udim, 0),
        LinearMap::coordinate_projection(udim, 0, r),
        pi0,
    )
}

/// `(h⁰, h_Z, g) : X -> Y`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FhsMorphism {
    pub source: Fhs1,
    pub target: Fhs1,
    pub h0: LinearMap,
    pub hz: GroupHom,
    pub g: LinearMap,
}

impl FhsMorphism {
    /// Assembles and validates a morphism.
    pub fn new(source: Fhs1, target: Fhs1, h0: LinearMap, hz: GroupHom, g: LinearMap) -> Result<Self> {
        let f = FhsMorphism { source, target, h0, hz, g };
        let bad = f.failures();
        if bad.is_empty() {
            Ok(f)
        } else {
            Err(Error::invalid("FHS morphism", bad))
        }
    }

    pub fn identity(x: &Fhs1) -> Self {
        FhsMorphism {
            source: x.clone(),
            target: x.clone(),
            h0: LinearMap::identity(x.h0dim),
            hz: GroupHom::identity(&x.het.lattice),
            g: LinearMap::identity(x.vdim),
        }
    }

    pub fn zero(x: &Fhs1, y: &Fhs1) -> Self {
        FhsMorphism {
            source: x.clone(),
            target: y.clone(),
            h0: LinearMap::zero(x.h0dim, y.h0dim),
            hz: GroupHom::zero(&x.het.lattice, &y.het.lattice),
            g: LinearMap::zero(x.vdim, y.vdim),
        }
    }

    /// `H_C -> H'_C`.
    pub fn h_c(&self) -> LinearMap {
        induced_rational_map(&self.hz)
    }

    pub fn failures(&self) -> Vec<String> {
        let (x, y) = (&self.source, &self.target);
        let mut bad = Vec::new();
        if self.h0.dom() != x.h0dim || self.h0.cod() != y.h0dim || self.g.dom() != x.vdim || self.g.cod() != y.vdim {
            return vec!["shape mismatch".into()];
        }
        if self.hz.source() != &x.het.lattice || self.hz.target() != &y.het.lattice {
            return vec!["lattice homomorphism between the wrong groups".into()];
        }
        let check = || -> Result<Vec<String>> {
            let mut bad = Vec::new();
            if !y.v0.contains(&self.g.image_of(&x.v0)?) {
                bad.push("g(V0) not in V0'".into());
            }
            if self.g.compose(&x.v0map)? != y.v0map.compose(&self.h0)? {
                bad.push("g ∘ v0 differs from v0' ∘ h0".into());
            }
            let lhs = self.g.compose(&x.vz_map())?;
            let rhs = y.vz_map().compose(&self.hz.generator_map())?;
            if lhs != rhs {
                bad.push("g ∘ v_Z differs from v_Z' ∘ h_Z".into());
            }
            let hc = self.h_c();
            for (name, s, t) in
                [("W-2", &x.het.wm2, &y.het.wm2), ("W-1", &x.het.wm1, &y.het.wm1), ("F0", &x.het.f0, &y.het.f0)]
            {
                if !t.contains(&hc.image_of(s)?) {
                    bad.push(format!("{name} not preserved"));
                }
            }
            if bad.is_empty() {
                let hbar = induced_map(&hc, &x.c_quotient(), &y.c_quotient())?;
                let gbar = induced_map(&self.g, &x.v_quotient(), &y.v_quotient())?;
                if gbar.compose(&x.sigma)? != y.sigma.compose(&hbar)? {
                    bad.push("sigma square fails".into());
                }
            }
            Ok(bad)
        };
        match check() {
            Ok(b) => bad.extend(b),
            Err(e) => bad.push(e.to_string()),
        }
        bad
    }

    pub fn is_valid(&self) -> bool {
        self.failures().is_empty()
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &FhsMorphism) -> Result<FhsMorphism> {
        Ok(FhsMorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            h0: self.h0.compose(&inner.h0)?,
            hz: self.hz.compose(&inner.hz)?,
            g: self.g.compose(&inner.g)?,
        })
    }

    pub fn direct_sum(&self, other: &FhsMorphism) -> FhsMorphism {
        FhsMorphism {
            source: self.source.direct_sum(&other.source),
            target: self.target.direct_sum(&other.target),
            h0: self.h0.direct_sum(&other.h0),
            hz: self.hz.direct_sum(&other.hz),
            g: self.g.direct_sum(&other.g),
        }
    }

    /// A valid morphism that is bijective on every component and onto every
    /// filtration step.
    pub fn is_isomorphism(&self) -> bool {
        if !self.is_valid() || !self.h0.is_iso() || !self.g.is_iso() {
            return false;
        }
        if !self.hz.is_injective() || !self.hz.is_surjective() {
            return false;
        }
        let (x, y) = (&self.source, &self.target);
        let hc = self.h_c();
        let onto = |s: &Subspace, t: &Subspace, f: &LinearMap| f.image_of(s).map(|i| &i == t).unwrap_or(false);
        onto(&x.v0, &y.v0, &self.g)
            && onto(&x.het.wm2, &y.het.wm2, &hc)
            && onto(&x.het.wm1, &y.het.wm1, &hc)
            && onto(&x.het.f0, &y.het.f0, &hc)
    }
}

/// Kernel and cokernel of a morphism, with their structure maps and validity reports.
#[derive(Clone, Debug)]
pub struct FhsKernelCokernel {
    pub kernel: Fhs1,
    pub inclusion: FhsMorphism,
    pub kernel_report: FhsReport,
    pub cokernel: Fhs1,
    pub projection: FhsMorphism,
    pub cokernel_report: FhsReport,
}

/// Componentwise kernel and cokernel with induced `V⁰`, `W`, `F` and `σ`.
/// The results are validated, not assumed, to be formal Hodge structures.
pub fn fhs_kernel_cokernel(f: &FhsMorphism) -> Result<FhsKernelCokernel> {
    let (x, y) = (&f.source, &f.target);

    // kernel
    let k0 = f.h0.kernel();
    let i0 = LinearMap::inclusion(&k0);
    let (kz, iz) = f.hz.kernel();
    let iq = induced_rational_map(&iz);
    let kv = f.g.kernel();
    let iv = LinearMap::inclusion(&kv);
    let khet = Mhs1::new(kz, iq.preimage(&x.het.wm2)?, iq.preimage(&x.het.wm1)?, iq.preimage(&x.het.f0)?)?;
    let kv0 = iv.preimage(&x.v0)?;
    let kv0map = x.v0map.compose(&i0)?.corestrict(&kv)?;
    let kvz: Vec<Vec<Scalar>> = iz
        .matrix()
        .row_vecs()
        .iter()
        .map(|row| kv.coords(&x.vz_of(row)?).ok_or(Error::NotContained))
        .collect::<Result<_>>()?;
    let kernel = Fhs1::with_induced_sigma(k0.dim(), khet, kv.dim(), kv0, kv0map, kvz)?;
    let inclusion = FhsMorphism { source: kernel.clone(), target: x.clone(), h0: i0, hz: iz, g: iv };

    // cokernel
    let c0 = quotient(y.h0dim, &f.h0.image())?;
    let (cz, pz) = f.hz.cokernel();
    let pq = induced_rational_map(&pz);
    let cv = quotient(y.vdim, &f.g.image())?;
    let chet = Mhs1::new(cz, pq.image_of(&y.het.wm2)?, pq.image_of(&y.het.wm1)?, pq.image_of(&y.het.f0)?)?;
    let cv0 = cv.projection.image_of(&y.v0)?;
    let cv0map = cv.projection.compose(&y.v0map)?.compose(&c0.section)?;
    let cvz: Vec<Vec<Scalar>> = cv.projection.compose(&y.vz_map())?.images();
    let cokernel = Fhs1::with_induced_sigma(c0.dim, chet, cv.dim, cv0, cv0map, cvz)?;
    let projection =
        FhsMorphism { source: y.clone(), target: cokernel.clone(), h0: c0.projection, hz: pz, g: cv.projection };

    Ok(FhsKernelCokernel {
        kernel_report: kernel.validate(),
        cokernel_report: cokernel.validate(),
        kernel,
        inclusion,
        cokernel,
        projection,
    })
}

/// Exactness data at one position of a sequence `0 -> X_0 -> ... -> X_k -> 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JointReport {
    /// Index of the object at which exactness is tested.
    pub position: usize,
    pub h0: bool,
    pub hz: bool,
    pub hq: bool,
    pub v: bool,
    pub v0: bool,
}

impl JointReport {
    pub fn exact(&self) -> bool {
        self.h0 && self.hz && self.v
    }
}

/// Strictness of one morphism with respect to `W` and `F` (reported, not required).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StrictnessReport {
    pub w: bool,
    pub f: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactReport {
    pub joints: Vec<JointReport>,
    pub strictness: Vec<StrictnessReport>,
}

impl ExactReport {
    pub fn exact(&self) -> bool {
        self.joints.iter().all(JointReport::exact)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for j in &self.joints {
            for (name, ok) in [("H0", j.h0), ("H_Z", j.hz), ("V", j.v)] {
                if !ok {
                    out.push(format!("not exact on {name} at position {}", j.position));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "exact": self.exact(),
            "failures": self.failures(),
            "joints": self.joints.iter().map(|j| json!({
                "position": j.position, "H0": j.h0, "HZ": j.hz, "HQ": j.hq, "V": j.v, "V0": j.v0,
            })).collect::<Vec<_>>(),
            "strictness": self.strictness.iter().map(|s| json!({"W": s.w, "F": s.f})).collect::<Vec<_>>(),
        })
    }
}

/// `im f = ker g` in `Q(i)^mid`; a missing map stands for the zero map to or from `0`.
pub fn linear_exact(f: Option<&LinearMap>, g: Option<&LinearMap>, mid: usize) -> bool {
    let im = f.map_or_else(|| Subspace::zero(mid), LinearMap::image);
    let ker = g.map_or_else(|| Subspace::full(mid), LinearMap::kernel);
    im == ker
}

/// Exactness of `0 -> X_0 -> X_1 -> ... -> X_k -> 0` on `H⁰`, `H_Z`, `H_Q`
/// and `V` (and on `V⁰`, reported only).
pub fn check_exact(seq: &[FhsMorphism]) -> Result<ExactReport> {
    for w in seq.windows(2) {
        if w[0].target != w[1].source {
            return Err(Error::dim("sequence is not composable"));
        }
    }
    let mut joints = Vec::new();
    for pos in 0..=seq.len() {
        let f = pos.checked_sub(1).map(|i| &seq[i]);
        let g = seq.get(pos);
        let obj = g.map(|g| &g.source).or_else(|| f.map(|f| &f.target));
        let Some(obj) = obj else { continue };
        let h0 = linear_exact(f.map(|f| &f.h0), g.map(|g| &g.h0), obj.h0dim);
        let hz = match (f, g) {
            (Some(f), Some(g)) => image_equals_kernel(&f.hz, &g.hz),
            (None, Some(g)) => g.hz.is_injective(),
            (Some(f), None) => f.hz.is_surjective(),
            (None, None) => obj.het.lattice.is_trivial(),
        };
        let (fq, gq) = (f.map(FhsMorphism::h_c), g.map(FhsMorphism::h_c));
        let hq = linear_exact(fq.as_ref(), gq.as_ref(), obj.rank());
        let v = linear_exact(f.map(|f| &f.g), g.map(|g| &g.g), obj.vdim);
        let v0 = {
            let im = match f {
                Some(f) => f.g.image_of(&f.source.v0)?,
                None => Subspace::zero(obj.vdim),
            };
            let ker = match g {
                Some(g) => g.g.kernel().intersect(&obj.v0)?,
                None => obj.v0.clone(),
            };
            im == ker
        };
        joints.push(JointReport { position: pos, h0, hz, hq, v, v0 });
    }
    let mut strictness = Vec::new();
    for f in seq {
        let hc = f.h_c();
        let im = hc.image();
        let strict = |s: &Subspace, t: &Subspace| -> Result<bool> { Ok(hc.image_of(s)? == t.intersect(&im)?) };
        let (x, y) = (&f.source.het, &f.target.het);
        strictness
            .push(StrictnessReport { w: strict(&x.wm2, &y.wm2)? && strict(&x.wm1, &y.wm1)?, f: strict(&x.f0, &y.f0)? });
    }
    Ok(ExactReport { joints, strictness })
}
