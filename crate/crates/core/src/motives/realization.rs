//! `T∮`, its quasi-inverse, the universal extension of `M_×` and `M^♯`.
//!
//! `T∮(M)_Z` is presented on the generators of `F_ét` followed by a basis of
//! `Λ`; each relation `ρ` of `F_ét` becomes `(ρ, -c)` where `c` are the
//! lattice coordinates of `Σ ρ_j lift_j`.

use num_bigint::BigInt;

use super::{m_times, FormalDatum, GroupDatum, MotiveDatum, MotiveMorphism};
use crate::error::{Error, Result};
use crate::exact::{fiber_product, FilteredSpace, LinearMap, Matrix, Scalar, Subspace};
use crate::formal_hodge::{Fhs1, FhsMorphism};
use crate::groups::{clear_denominators, is_q_independent, left_kernel, torsion_free, FgAbGroup, GroupHom, ZMatrix};
use crate::hodge::{rational_quotient, Mhs1};
use crate::sharp::{sharp_envelope, SharpEnvelope};

fn ints(v: &[BigInt]) -> Vec<Scalar> {
    v.iter().cloned().map(Scalar::from_bigint).collect()
}

fn concat(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().chain(b).cloned().collect()
}

/// Integer vectors `y` with `m y = 0`, for a matrix with rational real entries.
fn integer_kernel(m: &Matrix) -> ZMatrix {
    let n = m.cols();
    if m.rows() == 0 || m.is_zero() {
        return ZMatrix::identity(n);
    }
    let cols: Vec<Vec<_>> = (0..n).map(|c| m.col(c).into_iter().map(|x| x.re).collect()).collect();
    let (b, _) = clear_denominators(&cols);
    left_kernel(&b)
}

/// Relations of `T∮(M)_Z`, one row per relation of `F_ét`.
fn hz_relations(m: &MotiveDatum) -> Result<ZMatrix> {
    let (k, l) = (m.etale_generators(), m.group.lattice.len());
    let mut rows = Vec::new();
    for rho in m.formal.etale.relations().row_vecs() {
        let c = m.group.lattice_coords(&m.lift_of(&rho)?)?.ok_or(Error::NotContained)?;
        let neg: Vec<BigInt> = c.into_iter().map(|x| -x).collect();
        rows.push(concat(&rho, &neg));
    }
    if rows.is_empty() {
        return Ok(ZMatrix::zeros(0, k + l));
    }
    ZMatrix::from_rows(k + l, &rows)
}

/// Lattice coordinates of the torus generators.
fn torus_coords(m: &MotiveDatum) -> Result<Vec<Vec<BigInt>>> {
    m.group.torus.iter().map(|t| m.group.lattice_coords(t)?.ok_or(Error::NotContained)).collect()
}

/// `T∮(M) = (T∮(F), Lie G)`, validated.
pub fn t_oint(m: &MotiveDatum) -> Result<Fhs1> {
    let (k, l) = (m.etale_generators(), m.group.lattice.len());
    let lattice = FgAbGroup::new(k + l, hz_relations(m)?)?;
    let p = rational_quotient(&lattice).projection;
    let r = p.cod();
    let zero_k = vec![BigInt::from(0); k];
    let image = |x: Vec<BigInt>| p.apply(&ints(&x)).expect("width k + l");
    let w1: Vec<Vec<Scalar>> = (0..l)
        .map(|i| {
            let mut e = vec![BigInt::from(0); k + l];
            e[k + i] = 1.into();
            image(e)
        })
        .collect();
    let w2: Vec<Vec<Scalar>> = torus_coords(m)?.into_iter().map(|c| image(concat(&zero_k, &c))).collect();
    let vz: Vec<Vec<Scalar>> = m.lifts.iter().chain(&m.group.lattice).cloned().collect();
    let q = crate::exact::quotient(m.lie_dim(), &m.group.additive)?;
    let vc = LinearMap::from_images(k + l, m.lie_dim(), &vz)?.compose(&rational_quotient(&lattice).section)?;
    let f0 = q.projection.compose(&vc)?.kernel();
    let het = Mhs1::new(lattice, Subspace::span(r, &w2)?, Subspace::span(r, &w1)?, f0)?;
    Fhs1::with_induced_sigma(m.formal.f0dim, het, m.lie_dim(), m.group.additive.clone(), m.ua.clone(), vz)?.checked()
}

/// `T∮(f)`; `h_Z` sends `x_j` to `(f_ét(x_j), c_j)` and `λ_i` to `(0, f_G(λ_i))`.
pub fn t_oint_morphism(f: &MotiveMorphism) -> Result<FhsMorphism> {
    let (xs, xt) = (t_oint(&f.source)?, t_oint(&f.target)?);
    t_oint_morphism_between(f, xs, xt)
}

pub(crate) fn t_oint_morphism_between(f: &MotiveMorphism, xs: Fhs1, xt: Fhs1) -> Result<FhsMorphism> {
    let (ks, ls) = (f.source.etale_generators(), f.source.group.lattice.len());
    let (kt, lt) = (f.target.etale_generators(), f.target.group.lattice.len());
    let mut rows = Vec::with_capacity(ks + ls);
    for j in 0..ks {
        let c = f.lift_correction(j)?.ok_or(Error::NotContained)?;
        rows.push(concat(f.f_et.matrix().row(j), &c));
    }
    let lm = f.lattice_matrix()?;
    for i in 0..ls {
        rows.push(concat(&vec![BigInt::from(0); kt], lm.row(i)));
    }
    let mat = if rows.is_empty() { ZMatrix::zeros(0, kt + lt) } else { ZMatrix::from_rows(kt + lt, &rows)? };
    let hz = GroupHom::new(xs.het.lattice.clone(), xt.het.lattice.clone(), mat)?;
    FhsMorphism::new(xs, xt, f.f0.clone(), hz, f.f_g.clone())
}

/// Quasi-inverse of [`t_oint`].
///
/// `F_ét` is `H_Z / L` where `L` is a complement of the torsion in
/// `H_Z ∩ W_{-1}`, the lattice is `v_Z(L)` and lifts are `v_Z` of the generators.
/// This recovers a motive up to quasi-isomorphism; torsion of `F_ét` that maps
/// to zero in `G` survives, torsion with nonzero image is absorbed into the lattice.
pub fn motive_from_fhs(x: &Fhs1) -> Result<MotiveDatum> {
    Ok(motive_from_fhs_parts(x)?.0)
}

/// The motive and the rows (in generator coordinates of `H_Z`) of the lattice basis `L`.
fn motive_from_fhs_parts(x: &Fhs1) -> Result<(MotiveDatum, ZMatrix)> {
    let rep = x.validate();
    if !rep.is_valid() {
        return Err(Error::invalid("FHS1", rep.failures));
    }
    let lattice = &x.het.lattice;
    let n = lattice.generators();
    let p = rational_quotient(lattice).projection;
    let pm = if n == 0 { Matrix::zeros(p.cod(), 0) } else { p.matrix().clone() };
    let eqs = |w: &Subspace| -> Result<Matrix> {
        let a = w.annihilator();
        if a.dim() == 0 {
            return Ok(Matrix::zeros(0, n));
        }
        a.basis().mul(&pm)
    };
    let kgens = integer_kernel(&eqs(&x.het.wm1)?);
    let (ksub, inc) = lattice.subgroup(&kgens)?;
    let tf = torsion_free(&ksub);
    let lrows = if tf.free.generators() == 0 { ZMatrix::zeros(0, n) } else { tf.section.matrix().mul(inc.matrix())? };
    let vz = x.vz_map();
    let lvecs: Vec<Vec<Scalar>> = lrows.row_vecs().iter().map(|r| vz.apply(&ints(r))).collect::<Result<_>>()?;
    if !is_q_independent(x.vdim, &lvecs)? {
        return Err(Error::NotInjective("v_Z on W-1 modulo torsion".into()));
    }

    // elements of L whose class lies in W_{-2}
    let ltr = if lrows.rows() == 0 { Matrix::zeros(n, 0) } else { lrows.to_exact().transpose() };
    let torus_coeffs = integer_kernel(&eqs(&x.het.wm2)?.mul(&ltr)?);
    let mut torus = Vec::new();
    for a in torus_coeffs.row_vecs() {
        let mut v = vec![Scalar::zero(); x.vdim];
        for (ai, li) in a.iter().zip(&lvecs) {
            for (vk, lk) in v.iter_mut().zip(li) {
                *vk += &(Scalar::from_bigint(ai.clone()) * lk.clone());
            }
        }
        torus.push(v);
    }
    if lrows.rows() == 0 {
        torus.clear();
    }

    let rels = lattice.relations().vstack(&lrows)?;
    let etale = FgAbGroup::new(n, rels)?;
    let m = MotiveDatum::new(
        FormalDatum { etale, f0dim: x.h0dim },
        GroupDatum { lie_dim: x.vdim, lattice: lvecs, torus, additive: x.v0.clone() },
        x.vz.clone(),
        x.v0map.clone(),
    )
    .checked()?;
    Ok((m, lrows))
}

/// `x -> T∮(motive_from_fhs(x))`: identity on `H⁰` and `V`, `e_j ↦ (e_j, 0)` on `H_Z`.
pub fn fhs_to_realized(x: &Fhs1) -> Result<FhsMorphism> {
    let y = t_oint(&motive_from_fhs(x)?)?;
    let n = x.het.lattice.generators();
    let total = y.het.lattice.generators();
    let rows: Vec<Vec<BigInt>> = (0..n).map(|j| (0..total).map(|c| BigInt::from(u8::from(c == j))).collect()).collect();
    let mat = if n == 0 { ZMatrix::zeros(0, total) } else { ZMatrix::from_rows(total, &rows)? };
    let hz = GroupHom::new(x.het.lattice.clone(), y.het.lattice.clone(), mat)?;
    FhsMorphism::new(x.clone(), y, LinearMap::identity(x.h0dim), hz, LinearMap::identity(x.vdim))
}

/// `T∮(motive_from_fhs(x)) -> x`: `e_j ↦ e_j` and the `i`-th lattice generator to the `i`-th row of `L`.
pub fn realized_to_fhs(x: &Fhs1) -> Result<FhsMorphism> {
    let (m, lrows) = motive_from_fhs_parts(x)?;
    let y = t_oint(&m)?;
    let n = x.het.lattice.generators();
    let mut rows: Vec<Vec<BigInt>> = (0..n).map(|j| (0..n).map(|c| BigInt::from(u8::from(c == j))).collect()).collect();
    rows.extend(lrows.row_vecs());
    let mat = if rows.is_empty() { ZMatrix::zeros(0, n) } else { ZMatrix::from_rows(n, &rows)? };
    let hz = GroupHom::new(y.het.lattice.clone(), x.het.lattice.clone(), mat)?;
    FhsMorphism::new(y, x.clone(), LinearMap::identity(x.h0dim), hz, LinearMap::identity(x.vdim))
}

/// `motive_from_fhs(f)`: the generators of `F_ét` are those of `H_Z`, so `f_ét = h_Z`.
pub fn motive_morphism_from_fhs(f: &FhsMorphism) -> Result<MotiveMorphism> {
    let s = motive_from_fhs(&f.source)?;
    let t = motive_from_fhs(&f.target)?;
    let f_et = GroupHom::new(s.formal.etale.clone(), t.formal.etale.clone(), f.hz.matrix().clone())?;
    MotiveMorphism::new(s, t, f_et, f.h0.clone(), f.g.clone())
}

/// `M -> motive_from_fhs(T∮(M))`, identity on `Lie G` and `Lie F⁰`; it is a
/// quasi-isomorphism.
pub fn canonical_to_realized(m: &MotiveDatum) -> Result<MotiveMorphism> {
    let target = motive_from_fhs(&t_oint(m)?)?;
    let (k, n) = (m.etale_generators(), target.etale_generators());
    let rows: Vec<Vec<BigInt>> = (0..k).map(|j| (0..n).map(|c| BigInt::from(u8::from(c == j))).collect()).collect();
    let mat = if k == 0 { ZMatrix::zeros(0, n) } else { ZMatrix::from_rows(n, &rows)? };
    let f_et = GroupHom::new(m.formal.etale.clone(), target.formal.etale.clone(), mat)?;
    MotiveMorphism::new(m.clone(), target, f_et, LinearMap::identity(m.formal.f0dim), LinearMap::identity(m.lie_dim()))
}

/// `M^♮` for `M` with `V(G) = 0`, with its structure map `M^♮ -> M`.
///
/// `Lie G^♮ = H_C ⊕ Lie F⁰`, lattice and lifts are the classes `(c(·), 0)`,
/// `u_a^♮ = (0, id)` and `V(G^♮) = ker(v_C, u_a)`.
pub fn natural_extension(x: &MotiveDatum) -> Result<(MotiveDatum, MotiveMorphism)> {
    if !x.group.additive.is_zero() {
        return Err(Error::invalid("natural extension", vec!["V(G) is not zero".into()]));
    }
    let h = t_oint(x)?;
    let (k, r, f0) = (x.etale_generators(), h.rank(), x.formal.f0dim);
    let p = h.het.generator_map();
    let pad =
        |v: Vec<Scalar>| -> Vec<Scalar> { v.into_iter().chain(std::iter::repeat_n(Scalar::zero(), f0)).collect() };
    let class = |e: usize| -> Vec<Scalar> { pad(p.matrix().col(e)) };
    let lattice: Vec<Vec<Scalar>> = (0..x.group.lattice.len()).map(|i| class(k + i)).collect();
    let lifts: Vec<Vec<Scalar>> = (0..k).map(class).collect();
    let mut torus = Vec::new();
    for c in torus_coords(x)? {
        let mut e = vec![BigInt::from(0); k];
        e.extend(c);
        torus.push(pad(p.apply(&ints(&e))?));
    }
    let structure = h.v_c().copair(&x.ua)?;
    let nat = MotiveDatum::new(
        x.formal.clone(),
        GroupDatum { lie_dim: r + f0, lattice, torus, additive: structure.kernel() },
        lifts,
        LinearMap::coordinate_inclusion(f0, r + f0, r),
    )
    .checked()?;
    let map = MotiveMorphism::new(
        nat.clone(),
        x.clone(),
        GroupHom::identity(&x.formal.etale),
        LinearMap::identity(f0),
        structure,
    )?;
    Ok((nat, map))
}

/// `M^♯`, the pullback of `M_×^♮` along `M -> M_×`, together with the sharp
/// envelope of `T∮(M)` for comparison.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SharpExtension {
    pub motive: MotiveDatum,
    /// `M^♯ -> M`
    pub projection: MotiveMorphism,
    /// `Lie G^♯` inside `Lie G ⊕ H_C ⊕ Lie F⁰`.
    pub ambient: Subspace,
    /// `Ext(M_×, G_a)^∨ = V(G_×^♮)` inside `H_C ⊕ Lie F⁰`.
    pub ext_dual: Subspace,
    /// `Ext(M_×, G_a)^∨ -> Lie G^♯`
    pub ext_inclusion: LinearMap,
    /// `Lie G^♯ -> Lie G_×^♮`
    pub to_natural: LinearMap,
    pub natural: MotiveMorphism,
    pub envelope: SharpEnvelope,
}

impl SharpExtension {
    /// `T∮(M^♯)` equals the sharp envelope of `T∮(M)` on the nose.
    pub fn matches_envelope(&self) -> Result<bool> {
        Ok(t_oint(&self.motive)? == self.envelope.result)
    }

    /// The pullback square `G^♯ -> G_×^♮ -> G_×` = `G^♯ -> G -> G_×` on Lie algebras.
    pub fn square_commutes(&self, times: &MotiveMorphism) -> Result<bool> {
        let a = times.f_g.compose(&self.projection.f_g)?;
        let b = self.natural.f_g.compose(&self.to_natural)?;
        Ok(a == b)
    }

    /// `0 -> Ext(M_×, G_a)^∨ -> Lie G^♯ -> Lie G -> 0` is exact.
    pub fn extension_exact(&self) -> bool {
        let i = &self.ext_inclusion;
        let p = &self.projection.f_g;
        i.is_injective() && p.is_surjective() && p.kernel() == i.image()
    }
}

impl SharpExtension {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "motive": self.motive.to_json(),
            "projection": self.projection.to_json(),
            "extDual": crate::json::subspace_json(&self.ext_dual),
            "envelope": self.envelope.to_json(),
        })
    }
}

pub fn sharp_extension(m: &MotiveDatum) -> Result<SharpExtension> {
    let (mx, times) = m_times(m)?;
    let (nat, natural) = natural_extension(&mx)?;
    let fp = fiber_product(&times.f_g, &natural.f_g)?;
    let ambient = fp.sub.clone();
    let coords = |a: &[Scalar], b: &[Scalar]| -> Result<Vec<Scalar>> {
        let v: Vec<Scalar> = a.iter().chain(b).cloned().collect();
        ambient.coords(&v).ok_or(Error::NotContained)
    };
    let pair = |a: &[Vec<Scalar>], b: &[Vec<Scalar>]| -> Result<Vec<Vec<Scalar>>> {
        a.iter().zip(b).map(|(x, y)| coords(x, y)).collect()
    };
    let (d, dn) = (m.lie_dim(), nat.lie_dim());
    let lattice = pair(&m.group.lattice, &nat.group.lattice)?;
    let torus = pair(&m.group.torus, &nat.group.torus)?;
    let lifts = pair(&m.lifts, &nat.lifts)?;
    let ua_imgs = pair(&m.ua.images(), &nat.ua.images())?;
    let zd = vec![Scalar::zero(); d];
    let zn = vec![Scalar::zero(); dn];
    let mut add = Vec::new();
    for v in m.group.additive.vectors() {
        add.push(coords(&v, &zn)?);
    }
    let mut ext_imgs = Vec::new();
    for w in nat.group.additive.vectors() {
        let c = coords(&zd, &w)?;
        add.push(c.clone());
        ext_imgs.push(c);
    }
    let dim = ambient.dim();
    let motive = MotiveDatum::new(
        m.formal.clone(),
        GroupDatum { lie_dim: dim, lattice, torus, additive: Subspace::span(dim, &add)? },
        lifts,
        LinearMap::from_images(m.formal.f0dim, dim, &ua_imgs)?,
    )
    .checked()?;
    let projection = MotiveMorphism::new(
        motive.clone(),
        m.clone(),
        GroupHom::identity(&m.formal.etale),
        LinearMap::identity(m.formal.f0dim),
        fp.proj_a.clone(),
    )?;
    let ext_dual = nat.group.additive.clone();
    let basis_map = LinearMap::from_images(ext_dual.dim(), dim, &ext_imgs)?;
    let envelope = sharp_envelope(&t_oint(m)?)?;
    Ok(SharpExtension {
        motive,
        projection,
        ambient,
        ext_dual,
        ext_inclusion: basis_map,
        to_natural: fp.proj_b,
        natural,
        envelope,
    })
}

/// `f^♯ : M^♯ -> N^♯`, the restriction of `f_G ⊕ T∮(f)_C ⊕ f⁰`.
pub fn sharp_extension_morphism(
    f: &MotiveMorphism,
    ex: &SharpExtension,
    ey: &SharpExtension,
) -> Result<MotiveMorphism> {
    let hc = t_oint_morphism(f)?.h_c();
    let big = f.f_g.direct_sum(&hc).direct_sum(&f.f0);
    let g = big.compose(&LinearMap::inclusion(&ex.ambient))?.corestrict(&ey.ambient)?;
    MotiveMorphism::new(ex.motive.clone(), ey.motive.clone(), f.f_et.clone(), f.f0.clone(), g)
}

/// `T♯(M) = Lie G^♯` with `V(G) ⊆ V(G) + Ext(M_×,G_a)^∨ ⊆ Lie G^♯`, and the
/// subspace `Ext(M_ét,G_a)^∨ ⊆ Ext(M_×,G_a)^∨` recorded separately.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TSharp {
    pub space: FilteredSpace,
    pub ext_times: Subspace,
    pub ext_etale: Subspace,
}

impl TSharp {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "space": self.space.to_json(),
            "extTimes": crate::json::subspace_json(&self.ext_times),
            "extEtale": crate::json::subspace_json(&self.ext_etale),
        })
    }
}

pub fn t_sharp(m: &MotiveDatum) -> Result<TSharp> {
    let s = sharp_extension(m)?;
    t_sharp_of(m, &s)
}

pub(crate) fn t_sharp_of(m: &MotiveDatum, s: &SharpExtension) -> Result<TSharp> {
    let dim = s.ambient.dim();
    let r = s.ext_dual.ambient() - m.formal.f0dim;
    let zn = vec![Scalar::zero(); s.ext_dual.ambient()];
    let mut vg = Vec::new();
    for v in m.group.additive.vectors() {
        let w: Vec<Scalar> = v.into_iter().chain(zn.iter().cloned()).collect();
        vg.push(s.ambient.coords(&w).ok_or(Error::NotContained)?);
    }
    let vg = Subspace::span(dim, &vg)?;
    let ext_times = s.ext_inclusion.image();
    let h_only =
        Subspace::span(s.ext_dual.ambient(), &LinearMap::coordinate_inclusion(r, r + m.formal.f0dim, 0).images())?;
    let et = s.ext_dual.intersect(&h_only)?;
    let et_coords: Vec<Vec<Scalar>> =
        et.vectors().iter().map(|w| s.ext_dual.coords(w).ok_or(Error::NotContained)).collect::<Result<_>>()?;
    let ext_etale = s.ext_inclusion.image_of(&Subspace::span(s.ext_dual.dim(), &et_coords)?)?;
    let space = FilteredSpace::new(
        dim,
        vec![
            ("V(G)".into(), vg.clone()),
            ("V(G)+Ext(M_x,Ga)^v".into(), vg.sum(&ext_times)?),
            ("Lie G#".into(), Subspace::full(dim)),
        ],
    )?;
    Ok(TSharp { space, ext_times, ext_etale })
}
