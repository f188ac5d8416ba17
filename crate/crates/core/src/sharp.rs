//! The sharp envelope `(H, V) ↦ (H, V^♯)` of a formal Hodge structure.
//!
//! `(V/V⁰)^♯ = H_C ⊕ Lie H⁰` and `V^♯ = V ×_{V/V⁰} (V/V⁰)^♯`, materialized as a
//! subspace of `V ⊕ H_C ⊕ Lie H⁰` (in that order) and used in the canonical
//! coordinates of that subspace.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{fiber_product, LinearMap, Scalar, Subspace};
use crate::formal_hodge::{Ehs1, Fhs1, FhsMorphism};
use crate::hodge::rational_quotient;
use crate::json;

/// The middle row and column of the quotient-level diagram.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SharpQuotientData {
    /// `dim H_C + dim Lie H⁰`
    pub dim: usize,
    /// `(v̄_C, v̄⁰) : H_C ⊕ Lie H⁰ -> V/V⁰`
    pub vbar: LinearMap,
    /// `(V/V⁰)^{♯0}`, the kernel of `vbar`.
    pub sharp0: Subspace,
    /// `v̄^{♯0} = 0 ⊕ id : Lie H⁰ -> H_C ⊕ Lie H⁰`
    pub split0: LinearMap,
}

pub fn sharp_quotient(x: &Fhs1) -> Result<SharpQuotientData> {
    let r = x.rank();
    let dim = r + x.h0dim;
    let cq = x.c_quotient();
    let pr = x.v_quotient().projection;
    let vbar_c = x.sigma.compose(&cq.projection)?;
    let vbar0 = pr.compose(&x.v0map)?;
    let vbar = vbar_c.copair(&vbar0)?;
    let sharp0 = vbar.kernel();
    let split0 = LinearMap::coordinate_inclusion(x.h0dim, dim, r);

    let mut bad = Vec::new();
    if vbar_c.kernel() != x.het.f0 || !vbar_c.is_surjective() {
        bad.push("top row 0 -> F0 -> H_C -> V/V0 -> 0 not exact".to_string());
    }
    if !vbar.is_surjective() {
        bad.push("middle row not surjective".to_string());
    }
    if vbar.compose(&split0)? != vbar0 {
        bad.push("splitting does not lift v0".to_string());
    }
    if !bad.is_empty() {
        return Err(Error::invalid("sharp quotient", bad));
    }
    Ok(SharpQuotientData { dim, vbar, sharp0, split0 })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SharpEnvelope {
    pub base: Fhs1,
    pub result: Fhs1,
    /// `V^♯` inside `V ⊕ H_C ⊕ Lie H⁰`.
    pub ambient: Subspace,
    /// `H_C ×_{V/V⁰} V` inside `H_C ⊕ V`.
    pub alpha_domain: Subspace,
    /// `α : H_C ×_{V/V⁰} V -> V^♯`
    pub alpha: LinearMap,
    /// `u : V^♯ -> V`
    pub proj_u: LinearMap,
    /// `v^{♯0} : Lie H⁰ -> V^♯`
    pub split0: LinearMap,
    /// `π : V^♯ -> H_C`
    pub pi: LinearMap,
}

impl SharpEnvelope {
    /// `V^♯ -> V ⊕ H_C ⊕ Lie H⁰`
    pub fn embedding(&self) -> LinearMap {
        LinearMap::inclusion(&self.ambient)
    }

    /// `v_C^♯ : H_C -> V^♯`, `h ↦ (v_C h, h, 0)`.
    pub fn v_c_sharp(&self) -> LinearMap {
        self.result.v_c()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "base": self.base.to_json(),
            "sharp": self.result.to_json(),
            "dims": {
                "Vsharp": self.result.vdim,
                "V0": self.base.v0.dim(),
                "HC": self.base.rank(),
                "H0": self.base.h0dim,
            },
            "embedding": json::map_json(&self.embedding()),
            "witnesses": {
                "alphaDomain": json::subspace_json(&self.alpha_domain),
                "alpha": json::map_json(&self.alpha),
                "pi": json::map_json(&self.pi),
            },
        })
    }
}

/// `(H, V)^♯`; the result is validated before it is returned.
pub fn sharp_envelope(x: &Fhs1) -> Result<SharpEnvelope> {
    let (r, h0, vdim) = (x.rank(), x.h0dim, x.vdim);
    let sq = sharp_quotient(x)?;
    let pr = x.v_quotient().projection;
    let fp = fiber_product(&pr, &sq.vbar)?;
    let ambient = fp.sub.clone();
    let total = vdim + r + h0;
    let d = ambient.dim();
    if d != x.v0.dim() + r + h0 {
        return Err(Error::dim(format!("V^♯ has dimension {d}, expected {}", x.v0.dim() + r + h0)));
    }
    let coords = |v: Vec<Scalar>| ambient.coords(&v).ok_or(Error::NotContained);
    let gen = rational_quotient(&x.het.lattice).projection;
    let zeros = |n: usize| vec![Scalar::zero(); n];

    let mut vz_sharp = Vec::with_capacity(x.vz.len());
    for (j, vz) in x.vz.iter().enumerate() {
        let mut v = vz.clone();
        v.extend(gen.matrix().col(j));
        v.extend(zeros(h0));
        vz_sharp.push(coords(v)?);
    }
    let mut split_images = Vec::with_capacity(h0);
    for (l, img) in x.v0map.images().into_iter().enumerate() {
        let mut v = img;
        v.extend(zeros(r));
        let mut e = zeros(h0);
        e[l] = Scalar::one();
        v.extend(e);
        split_images.push(coords(v)?);
    }
    let split0 = LinearMap::from_images(h0, d, &split_images)?;
    let inc = LinearMap::inclusion(&ambient);
    let proj_u = LinearMap::coordinate_projection(total, 0, vdim).compose(&inc)?;
    let pi = LinearMap::coordinate_projection(total, vdim, r).compose(&inc)?;
    let v0_sharp = pr.compose(&proj_u)?.kernel();
    let result = Fhs1::with_induced_sigma(h0, x.het.clone(), d, v0_sharp, split0.clone(), vz_sharp)?.checked()?;

    // α : H_C ×_{V/V⁰} V -> V^♯, (h, v) ↦ (v, h, 0)
    let vbar_c = x.sigma.compose(&x.c_quotient().projection)?;
    let afp = fiber_product(&vbar_c, &pr)?;
    let mut alpha_images = Vec::with_capacity(afp.dim());
    for (h, v) in afp.proj_a.images().into_iter().zip(afp.proj_b.images()) {
        let mut w = v;
        w.extend(h);
        w.extend(zeros(h0));
        alpha_images.push(coords(w)?);
    }
    let alpha = LinearMap::from_images(afp.dim(), d, &alpha_images)?;

    Ok(SharpEnvelope { base: x.clone(), result, ambient, alpha_domain: afp.sub, alpha, proj_u, split0, pi })
}

/// `f^♯ : X^♯ -> Y^♯`, the restriction of `g ⊕ h_C ⊕ h⁰`.
pub fn sharp_morphism(f: &FhsMorphism, ex: &SharpEnvelope, ey: &SharpEnvelope) -> Result<FhsMorphism> {
    if ex.base != f.source || ey.base != f.target {
        return Err(Error::dim("envelopes do not match the morphism"));
    }
    let big = f.g.direct_sum(&f.h_c()).direct_sum(&f.h0);
    let g = big.compose(&ex.embedding())?.corestrict(&ey.ambient)?;
    FhsMorphism::new(ex.result.clone(), ey.result.clone(), f.h0.clone(), f.hz.clone(), g)
}

/// The three equivalent splitting conditions, each computed on its own.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SplitConditions {
    pub special: bool,
    pub quotient_envelope_special: bool,
    pub splitting_lands_in_sharp0: bool,
}

/// `(H, V/V⁰)` with `V⁰ = 0`.
fn reduced_structure(x: &Fhs1) -> Result<Fhs1> {
    let pr = x.v_quotient().projection;
    let vdim = pr.cod();
    let vz = pr.compose(&x.vz_map())?.images();
    let mut y =
        Fhs1::new(x.h0dim, x.het.clone(), vdim, Subspace::zero(vdim), pr.compose(&x.v0map)?, vz, x.sigma.clone())?;
    y.sigma = x.sigma.clone();
    Ok(y)
}

pub fn split_conditions(x: &Fhs1) -> Result<SplitConditions> {
    let special = x.classify().special;
    let quotient_envelope_special = sharp_envelope(&reduced_structure(x)?)?.result.classify().special;
    let sq = sharp_quotient(x)?;
    let splitting_lands_in_sharp0 = sq.sharp0.contains(&sq.split0.image());
    Ok(SplitConditions { special, quotient_envelope_special, splitting_lands_in_sharp0 })
}

/// Whether `x` is special, with the three equivalent conditions cross-checked.
pub fn split_check(x: &Fhs1) -> Result<bool> {
    let c = split_conditions(x)?;
    if c.special != c.quotient_envelope_special || c.special != c.splitting_lands_in_sharp0 {
        return Err(Error::invalid("splitting conditions disagree", vec![format!("{c:?}")]));
    }
    Ok(c.special)
}

/// `(H_ét, V^♯ -> V)` with `ρ = v_C^♯`, `π` the `H_C` coordinate and `π₀ = σ⁻¹ ∘ pr`.
pub fn sharp_special(x: &Fhs1) -> Result<(Ehs1, SharpEnvelope)> {
    if !x.classify().special {
        return Err(Error::NotSpecial);
    }
    let env = sharp_envelope(x)?;
    let sinv = x.sigma.inverse().ok_or_else(|| Error::invalid("FHS1", vec!["sigma not iso".into()]))?;
    let pi0 = sinv.compose(&x.v_quotient().projection)?;
    let e = Ehs1::new(x.het.clone(), env.proj_u.clone(), env.v_c_sharp(), env.pi.clone(), pi0)?;
    let bad = e.validate();
    if !bad.is_empty() {
        return Err(Error::invalid("sharp enriched structure", bad));
    }
    Ok((e, env))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hodge::Mhs1;

    fn connected_ga() -> Fhs1 {
        Fhs1::with_induced_sigma(1, Mhs1::zero(), 1, Subspace::full(1), LinearMap::identity(1), vec![]).unwrap()
    }

    fn kummer() -> Fhs1 {
        let w = Subspace::span(2, &[vec![Scalar::zero(), Scalar::one()]]).unwrap();
        let het = Mhs1::checked(
            crate::groups::FgAbGroup::free(2),
            w.clone(),
            w,
            Subspace::span(2, &[vec![Scalar::one(), -Scalar::frac(1, 2)]]).unwrap(),
        )
        .unwrap();
        Fhs1::with_induced_sigma(
            0,
            het,
            1,
            Subspace::zero(1),
            LinearMap::zero(0, 1),
            vec![vec![Scalar::frac(1, 2)], vec![Scalar::one()]],
        )
        .unwrap()
    }

    #[test]
    fn quotient_examples() {
        let e = Fhs1::elliptic();
        let sq = sharp_quotient(&e).unwrap();
        assert_eq!(sq.dim, 2);
        assert_eq!(sq.sharp0, e.het.f0);

        let sq = sharp_quotient(&connected_ga()).unwrap();
        assert_eq!(sq.vbar.cod(), 0);
        assert_eq!(sq.dim, 1);
        assert_eq!(sq.sharp0.dim(), 1);

        let sq = sharp_quotient(&Fhs1::zero()).unwrap();
        assert_eq!(sq.dim, 0);
    }

    #[test]
    fn envelope_examples() {
        let env = sharp_envelope(&Fhs1::elliptic()).unwrap();
        assert_eq!(env.result.vdim, 2);
        assert_eq!(env.pi.rank(), 2);
        // V^{♯0} corresponds to F⁰ under π
        assert_eq!(env.pi.image_of(&env.result.v0).unwrap(), Fhs1::elliptic().het.f0);

        let env = sharp_envelope(&connected_ga()).unwrap();
        assert_eq!(env.result.vdim, 2);
        // the diagonal embedding l ↦ (l, l)
        let diag = env.embedding().compose(&env.split0).unwrap();
        assert_eq!(diag.images(), vec![vec![Scalar::one(), Scalar::one()]]);

        let ga =
            Fhs1::with_induced_sigma(0, Mhs1::zero(), 1, Subspace::full(1), LinearMap::zero(0, 1), vec![]).unwrap();
        let env = sharp_envelope(&ga).unwrap();
        assert_eq!(env.result.vdim, 1);
        assert!(env.proj_u.is_iso());
    }

    #[test]
    fn split_examples() {
        assert!(split_check(&connected_ga()).unwrap());
        // H⁰ = V = Q(i), V⁰ = 0, v⁰ = id, with H elliptic so that σ exists
        let ns = Fhs1::with_induced_sigma(
            1,
            Mhs1::elliptic(),
            1,
            Subspace::zero(1),
            LinearMap::identity(1),
            vec![vec![Scalar::one()], vec![Scalar::i()]],
        )
        .unwrap();
        assert!(ns.is_valid());
        assert!(!split_check(&ns).unwrap());
        let c = split_conditions(&ns).unwrap();
        assert!(!c.quotient_envelope_special && !c.splitting_lands_in_sharp0);
        let no_sigma = Fhs1::with_induced_sigma(1, Mhs1::zero(), 1, Subspace::zero(1), LinearMap::identity(1), vec![]);
        assert!(!no_sigma.map(|x| x.is_valid()).unwrap_or(false));
        assert!(split_check(&Fhs1::elliptic()).unwrap());
        assert!(split_check(&kummer()).unwrap());
    }

    #[test]
    fn sharp_special_examples() {
        let (e, _) = sharp_special(&Fhs1::elliptic()).unwrap();
        assert_eq!(e.udim, 2);
        assert!(e.pi.is_iso());

        // V^♯ = V ×_0 Lie H⁰, so U has dimension dim V⁰ + dim H⁰ = 2
        let (e, _) = sharp_special(&connected_ga()).unwrap();
        assert_eq!(e.udim, 2);
        assert_eq!(e.pi, LinearMap::zero(2, 0));

        let (e, env) = sharp_special(&kummer()).unwrap();
        assert_eq!(e.udim, 2);
        assert_eq!(e.pi.compose(&e.rho).unwrap(), LinearMap::identity(2));
        assert_eq!(env.result.rank(), 2);

        let ns = Fhs1::with_induced_sigma(
            1,
            Mhs1::elliptic(),
            1,
            Subspace::zero(1),
            LinearMap::identity(1),
            vec![vec![Scalar::one()], vec![Scalar::i()]],
        )
        .unwrap();
        assert_eq!(sharp_special(&ns).map(|_| ()), Err(Error::NotSpecial));
    }

    #[test]
    fn envelope_of_identity_is_identity() {
        let e = Fhs1::elliptic();
        let env = sharp_envelope(&e).unwrap();
        let id = FhsMorphism::identity(&e);
        assert_eq!(sharp_morphism(&id, &env, &env).unwrap(), FhsMorphism::identity(&env.result));
    }

    #[test]
    fn etale_envelope_is_not_idempotent() {
        // V^{♯0} = F⁰ ≠ 0 after one step, so a second step grows the space
        let once = sharp_envelope(&Fhs1::elliptic()).unwrap().result;
        let twice = sharp_envelope(&once).unwrap().result;
        assert_eq!((once.vdim, twice.vdim), (2, 3));
    }
}
