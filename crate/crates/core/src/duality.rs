//! Cartier duality of 1-motives with torsion-free `F_ét`, computed on formal
//! Hodge structures, and the pairing `T♯(M) × T♯(M*) -> Q(i)`.
//!
//! For `X = (H, V)` with free `H_Z` the dual is
//! `X' = (H^∨, (Ext(X_×, G_a)^∨)^∨)`: `H'_Z` is the dual lattice, `V'` is dual
//! to `♯0 = ker(v̄_C, v̄⁰) ⊆ H_C ⊕ Lie H⁰`, `Lie H'⁰ = (V⁰)^∨` and
//! `V'⁰ = (Lie H⁰)^∨`. Coordinates of `V'` are dual to the reduced echelon
//! basis of `♯0` taken in lattice coordinates.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{LinearMap, Matrix, Scalar, Subspace};
use crate::formal_hodge::{Fhs1, FhsMorphism};
use crate::groups::{FgAbGroup, GroupHom, ZMatrix};
use crate::hodge::{lattice_basis, rational_quotient, Mhs1};
use crate::json;
use crate::motives::{
    fhs_to_realized, motive_from_fhs, motive_morphism_from_fhs, realized_to_fhs, t_oint, t_oint_morphism, MotiveDatum,
    MotiveMorphism,
};
use crate::sharp::{sharp_envelope, sharp_quotient, SharpEnvelope};

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(Scalar::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

fn sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

fn integer_matrix(m: &LinearMap) -> Result<ZMatrix> {
    let (rows, cols) = (m.cod(), m.dom());
    if rows == 0 {
        return Ok(ZMatrix::zeros(0, cols));
    }
    let data = (0..rows)
        .map(|r| {
            m.matrix()
                .row(r)
                .iter()
                .map(|x| x.as_integer().ok_or_else(|| Error::invalid("lattice map", vec!["non-integral entry".into()])))
                .collect::<Result<Vec<BigInt>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    ZMatrix::from_rows(cols, &data)
}

/// The dual of a formal Hodge structure with its bookkeeping.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FhsDual {
    pub base: Fhs1,
    /// `base` rewritten on a Z-basis of its lattice.
    pub lattice_form: Fhs1,
    /// `H_Q` coordinates to lattice coordinates, and back.
    pub to_lattice: LinearMap,
    pub from_lattice: LinearMap,
    /// `♯0` in lattice coordinates.
    pub sharp0: Subspace,
    /// `♯0 -> V⁰`, `(h, l) ↦ v_C h + v⁰ l`, in the coordinates of `V⁰`.
    pub vmap: LinearMap,
    /// `(Lie H⁰)^∨ -> V'`, dual to `♯0 -> Lie H⁰`.
    pub lie_dual: LinearMap,
    pub dual: Fhs1,
}

impl FhsDual {
    /// `⟨v, (φ, ψ)⟩ = φ(k) - ψ(v - v_C k)` for `v ∈ V` and `(φ, ψ)` in the
    /// `♯0` of the dual, where `k ∈ H_C` (lattice coordinates) satisfies
    /// `pr v = pr v_C k`. Well defined on `♯0` of the dual.
    pub fn canonical_pairing(&self, v: &[Scalar], phi: &[Scalar], psi: &[Scalar]) -> Result<Scalar> {
        let x = &self.lattice_form;
        let pr = x.v_quotient().projection;
        let k = pr.compose(&x.v_c())?.right_inverse()?.apply(&pr.apply(v)?)?;
        let rest = sub(v, &x.v_c().apply(&k)?);
        let x0 = x.v0.coords(&rest).ok_or(Error::NotContained)?;
        Ok(dot(phi, &k) - dot(psi, &x0))
    }
}

pub fn fhs_dual(x: &Fhs1) -> Result<FhsDual> {
    if !x.het.lattice.is_torsion_free() {
        return Err(Error::TorsionPresent);
    }
    let rep = x.validate();
    if !rep.is_valid() {
        return Err(Error::invalid("FHS1", rep.failures));
    }
    let r = x.rank();
    let (to_lattice, from_lattice) = if r == 0 {
        (LinearMap::identity(0), LinearMap::identity(0))
    } else {
        let b = lattice_basis(&x.het.lattice);
        let binv = b.inverse().ok_or(Error::DependentGenerators)?;
        (LinearMap::new(r, r, binv.transpose())?, LinearMap::new(r, r, b.transpose())?)
    };
    let het = Mhs1::new(
        FgAbGroup::free(r),
        to_lattice.image_of(&x.het.wm2)?,
        to_lattice.image_of(&x.het.wm1)?,
        to_lattice.image_of(&x.het.f0)?,
    )?;
    let vc = x.v_c().compose(&from_lattice)?;
    let lattice_form =
        Fhs1::with_induced_sigma(x.h0dim, het.clone(), x.vdim, x.v0.clone(), x.v0map.clone(), vc.images())?
            .checked()?;

    let sharp0 = sharp_quotient(&lattice_form)?.sharp0;
    let s = sharp0.vectors();
    let (sd, n, h0) = (s.len(), x.v0.dim(), x.h0dim);
    let mut vimgs = Vec::with_capacity(sd);
    for sk in &s {
        let v: Vec<Scalar> =
            vc.apply(&sk[..r])?.into_iter().zip(x.v0map.apply(&sk[r..])?).map(|(a, b)| a + b).collect();
        vimgs.push(x.v0.coords(&v).ok_or(Error::NotContained)?);
    }
    let vmap = LinearMap::from_images(sd, n, &vimgs)?;
    let column = |i: usize| -> Vec<Scalar> { s.iter().map(|sk| sk[i].clone()).collect() };
    let vz: Vec<Vec<Scalar>> = (0..r).map(column).collect();
    let w: Vec<Vec<Scalar>> = (r..r + h0).map(column).collect();
    let lie_dual = LinearMap::from_images(h0, sd, &w)?;
    let dual_het = Mhs1::new(FgAbGroup::free(r), het.wm1.annihilator(), het.wm2.annihilator(), het.f0.annihilator())?;
    let dual = Fhs1::with_induced_sigma(n, dual_het, sd, lie_dual.image(), vmap.dual(), vz)?.checked()?;
    Ok(FhsDual { base: x.clone(), lattice_form, to_lattice, from_lattice, sharp0, vmap, lie_dual, dual })
}

/// `f^∨ : Y' -> X'` for `f : X -> Y`, given both duals.
pub fn fhs_dual_morphism(f: &FhsMorphism, dx: &FhsDual, dy: &FhsDual) -> Result<FhsMorphism> {
    if dx.base != f.source || dy.base != f.target {
        return Err(Error::dim("duals do not belong to the ends of the morphism"));
    }
    let hl = dy.to_lattice.compose(&f.h_c())?.compose(&dx.from_lattice)?;
    let hz = GroupHom::new(dy.dual.het.lattice.clone(), dx.dual.het.lattice.clone(), integer_matrix(&hl)?)?;
    let gv = f.g.restrict(&f.source.v0)?.corestrict(&f.target.v0)?;
    let t = hl.direct_sum(&f.h0).restrict(&dx.sharp0)?.corestrict(&dy.sharp0)?;
    FhsMorphism::new(dy.dual.clone(), dx.dual.clone(), gv.dual(), hz, t.dual())
}

/// `M*`, defined when `F_ét` is torsion-free.
pub fn cartier_dual(m: &MotiveDatum) -> Result<MotiveDatum> {
    if !m.formal.etale.is_torsion_free() {
        return Err(Error::TorsionPresent);
    }
    motive_from_fhs(&fhs_dual(&t_oint(m)?)?.dual)
}

/// `f* : N* -> M*` for `f : M -> N`.
pub fn cartier_dual_morphism(f: &MotiveMorphism) -> Result<MotiveMorphism> {
    if !f.source.formal.etale.is_torsion_free() || !f.target.formal.etale.is_torsion_free() {
        return Err(Error::TorsionPresent);
    }
    let phi = t_oint_morphism(f)?;
    let (dx, dy) = (fhs_dual(&phi.source)?, fhs_dual(&phi.target)?);
    motive_morphism_from_fhs(&fhs_dual_morphism(&phi, &dx, &dy)?)
}

/// The dual sequence `0 -> M_k* -> ... -> M_0* -> 0`.
pub fn dual_sequence(seq: &[MotiveMorphism]) -> Result<Vec<MotiveMorphism>> {
    seq.iter().rev().map(cartier_dual_morphism).collect()
}

/// The pairing `Lie F⁰ × (Lie F⁰)^∨ -> Q(i)` in dual bases.
pub fn lie_formal_dual(f0dim: usize) -> Matrix {
    Matrix::identity(f0dim)
}

/// The canonical map `X -> X''`.
pub fn double_dual_iso(x: &Fhs1) -> Result<FhsMorphism> {
    let d1 = fhs_dual(x)?;
    let d2 = fhs_dual(&d1.dual)?;
    let xx = d2.dual.clone();
    let to_dd =
        d2.from_lattice.dual().compose(&d1.to_lattice)?.compose(&rational_quotient(&x.het.lattice).projection)?;
    let hz = GroupHom::new(x.het.lattice.clone(), xx.het.lattice.clone(), integer_matrix(&to_dd)?.transpose())?;

    let r = x.rank();
    let sharp0 = d2.sharp0.vectors();
    let mut g = Matrix::zeros(sharp0.len(), x.vdim);
    for (m, s) in sharp0.iter().enumerate() {
        let phi = d2.from_lattice.apply(&s[..r])?;
        for a in 0..x.vdim {
            let mut e = vec![Scalar::zero(); x.vdim];
            e[a] = Scalar::one();
            g.set(m, a, d1.canonical_pairing(&e, &phi, &s[r..])?);
        }
    }
    let g = LinearMap::new(x.vdim, sharp0.len(), g)?;

    let u = d1.dual.v0.vectors();
    let mut psis = Vec::with_capacity(u.len());
    for up in &u {
        // `l ↦ -ψ_p(l)`: the sign makes `g ∘ v⁰ = v⁰'' ∘ h⁰`
        let psi = d1.lie_dual.matrix().solve(up)?.ok_or(Error::NotContained)?;
        psis.push(psi.into_iter().map(|x| -x).collect());
    }
    let h0 = if u.is_empty() {
        LinearMap::zero(x.h0dim, 0)
    } else {
        LinearMap::new(x.h0dim, u.len(), Matrix::from_rows(x.h0dim, &psis)?)?
    };
    FhsMorphism::new(x.clone(), xx, h0, hz, g)
}

/// `T∮(M) ≅ T∮(M**)` through the canonical double-dual map.
pub fn double_dual_motive_iso(m: &MotiveDatum) -> Result<FhsMorphism> {
    let x = t_oint(m)?;
    let d = double_dual_iso(&x)?;
    let x1 = fhs_dual(&x)?.dual;
    let back = realized_to_fhs(&x1)?;
    let dual_back = fhs_dual_morphism(&back, &fhs_dual(&back.source)?, &fhs_dual(&x1)?)?;
    let forward = fhs_to_realized(&dual_back.target)?;
    forward.compose(&dual_back)?.compose(&d)
}

/// `Φ` with its block maps; `T♯(M*)` is taken on the dual structure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DualityWitness {
    pub motive: MotiveDatum,
    pub dual: MotiveDatum,
    pub sharp: SharpEnvelope,
    pub dual_sharp: SharpEnvelope,
    /// Rows: basis of `T♯(M)`; columns: basis of `T♯(M*)`.
    pub phi: Matrix,
    /// `ι : ω_{G'} = Ext(M_×, G_a)^∨ -> T♯(M)`
    pub iota: LinearMap,
    /// `g : T♯(M) -> Lie G`
    pub g: LinearMap,
    pub iota_dual: LinearMap,
    pub g_dual: LinearMap,
    pub full_rank: bool,
    pub block_b: bool,
    pub block_c: bool,
    pub block_d: bool,
}

impl DualityWitness {
    pub fn holds(&self) -> bool {
        self.full_rank && self.block_b && self.block_c && self.block_d
    }

    /// The alternating form `[[0, Φ], [-Φᵀ, 0]]` on `T♯(M) ⊕ T♯(M*)`.
    pub fn form(&self) -> Matrix {
        let (a, b) = (self.phi.rows(), self.phi.cols());
        let top = Matrix::zeros(a, a).hstack(&self.phi).expect("rows agree");
        let bottom =
            self.phi.transpose().scale(&Scalar::from_int(-1)).hstack(&Matrix::zeros(b, b)).expect("rows agree");
        top.vstack(&bottom).expect("columns agree")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "m": self.motive.to_json(),
            "mDual": self.dual.to_json(),
            "phi": json::rows_json(&self.phi.row_vecs()),
            "blockMaps": {
                "iota": json::map_json(&self.iota),
                "g": json::map_json(&self.g),
                "iotaDual": json::map_json(&self.iota_dual),
                "gDual": json::map_json(&self.g_dual),
            },
            "perfect": self.holds(),
            "checks": {"fullRank": self.full_rank, "b": self.block_b, "c": self.block_c, "d": self.block_d},
            "dims": {"sharp": self.phi.rows(), "sharpDual": self.phi.cols()},
        })
    }
}

/// `Φ(x, y) = h'(h) + y₀(l) - l'(x₀)` where `x = (v, h, l)`, `x₀ = v - v_C h - v⁰ l`
/// and likewise for `y`; `y₀ ∈ V'⁰ = (Lie H⁰)^∨`.
pub fn sharp_pairing(m: &MotiveDatum) -> Result<DualityWitness> {
    if !m.formal.etale.is_torsion_free() {
        return Err(Error::TorsionPresent);
    }
    let x = t_oint(m)?;
    let d = fhs_dual(&x)?;
    let y = &d.dual;
    let (e, ed) = (sharp_envelope(&x)?, sharp_envelope(y)?);
    let r = x.rank();
    let (vd, vdd) = (x.vdim, y.vdim);

    let mut xs = Vec::new();
    for b in e.ambient.vectors() {
        let (v, h, l) = (&b[..vd], &b[vd..vd + r], &b[vd + r..]);
        let rest = sub(&sub(v, &x.v_c().apply(h)?), &x.v0map.apply(l)?);
        xs.push((x.v0.coords(&rest).ok_or(Error::NotContained)?, d.to_lattice.apply(h)?, l.to_vec()));
    }
    let mut ys = Vec::new();
    for b in ed.ambient.vectors() {
        let (v, h, l) = (&b[..vdd], &b[vdd..vdd + r], &b[vdd + r..]);
        let rest = sub(&sub(v, &y.v_c().apply(h)?), &y.v0map.apply(l)?);
        let psi = d.lie_dual.matrix().solve(&rest)?.ok_or(Error::NotContained)?;
        ys.push((psi, h.to_vec(), l.to_vec()));
    }
    let mut phi = Matrix::zeros(xs.len(), ys.len());
    for (a, (x0, c, l)) in xs.iter().enumerate() {
        for (b, (psi, hd, ld)) in ys.iter().enumerate() {
            phi.set(a, b, dot(hd, c) + dot(psi, l) - dot(ld, x0));
        }
    }

    let embed = |env: &SharpEnvelope, parts: Vec<Scalar>| env.ambient.coords(&parts).ok_or(Error::NotContained);
    let mut iota_imgs = Vec::new();
    for s in d.sharp0.vectors() {
        let mut parts = vec![Scalar::zero(); vd];
        parts.extend(d.from_lattice.apply(&s[..r])?);
        parts.extend_from_slice(&s[r..]);
        iota_imgs.push(embed(&e, parts)?);
    }
    let iota = LinearMap::from_images(iota_imgs.len(), e.ambient.dim(), &iota_imgs)?;
    let dual_sharp0 = sharp_quotient(y)?.sharp0.vectors();
    let mut iota_d_imgs = Vec::new();
    for s in &dual_sharp0 {
        let mut parts = vec![Scalar::zero(); vdd];
        parts.extend_from_slice(s);
        iota_d_imgs.push(embed(&ed, parts)?);
    }
    let iota_dual = LinearMap::from_images(iota_d_imgs.len(), ed.ambient.dim(), &iota_d_imgs)?;
    let (g, g_dual) = (e.proj_u.clone(), ed.proj_u.clone());

    let mut canon = Matrix::zeros(vd, dual_sharp0.len());
    for a in 0..vd {
        let mut ea = vec![Scalar::zero(); vd];
        ea[a] = Scalar::one();
        for (k, s) in dual_sharp0.iter().enumerate() {
            canon.set(a, k, d.canonical_pairing(&ea, &s[..r], &s[r..])?);
        }
    }
    let it = iota.matrix().transpose();
    let block_b = it.mul(&phi)? == *g_dual.matrix();
    let block_c = phi.mul(iota_dual.matrix())? == g.matrix().transpose().mul(&canon)?;
    let block_d = it.mul(&phi)?.mul(iota_dual.matrix())?.is_zero();
    let full_rank = phi.rows() == phi.cols() && phi.rank() == phi.rows() && phi.rows() == m.ranks().sharp_dim();
    Ok(DualityWitness {
        motive: m.clone(),
        dual: motive_from_fhs(y)?,
        sharp: e,
        dual_sharp: ed,
        phi,
        iota,
        g,
        iota_dual,
        g_dual,
        full_rank,
        block_b,
        block_c,
        block_d,
    })
}
