//! Torsion parts, `M_×`, `M_ét`, `→M`, `Hom(M, G_a)`, `v_M` and `M^♮`.

use num_bigint::BigInt;

use super::realization::natural_extension;
use super::{t_oint, FormalDatum, GroupDatum, MotiveDatum, MotiveMorphism};
use crate::error::{Error, Result};
use crate::exact::{factor_through, quotient, LinearMap, Scalar, Subspace};
use crate::groups::{
    clear_denominators, left_kernel, rational_coords, saturation, torsion_free, zspan_basis, FgAbGroup, GroupHom,
    ZMatrix,
};
use crate::sharp::sharp_quotient;

fn apply_all(f: &LinearMap, vs: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    vs.iter().map(|v| f.apply(v)).collect()
}

/// `M_× = M / V(G)[0]` with the projection `M -> M_×`.
pub fn m_times(m: &MotiveDatum) -> Result<(MotiveDatum, MotiveMorphism)> {
    let q = quotient(m.lie_dim(), &m.group.additive)?;
    let p = &q.projection;
    let mx = MotiveDatum::new(
        m.formal.clone(),
        GroupDatum {
            lie_dim: q.dim,
            lattice: apply_all(p, &m.group.lattice)?,
            torus: apply_all(p, &m.group.torus)?,
            additive: Subspace::zero(q.dim),
        },
        apply_all(p, &m.lifts)?,
        p.compose(&m.ua)?,
    )
    .checked()?;
    let proj = MotiveMorphism::new(
        m.clone(),
        mx.clone(),
        GroupHom::identity(&m.formal.etale),
        LinearMap::identity(m.formal.f0dim),
        p.clone(),
    )?;
    Ok((mx, proj))
}

/// `M_ét = [u_ét : F_ét -> G_×]`.
pub fn m_etale(m: &MotiveDatum) -> Result<MotiveDatum> {
    let (mx, _) = m_times(m)?;
    let d = mx.lie_dim();
    Ok(MotiveDatum {
        formal: FormalDatum { etale: mx.formal.etale.clone(), f0dim: 0 },
        ua: LinearMap::zero(0, d),
        ..mx
    })
}

/// `→M = [F × Ĝ -> G]`: `Lie F⁰` grows by `Lie G`, mapped by the identity.
pub fn vec_m(m: &MotiveDatum) -> Result<MotiveDatum> {
    let d = m.lie_dim();
    Ok(MotiveDatum {
        formal: FormalDatum { etale: m.formal.etale.clone(), f0dim: m.formal.f0dim + d },
        ua: m.ua.copair(&LinearMap::identity(d))?,
        ..m.clone()
    })
}

/// `Hom(M, G_a)` as functionals on `Lie G` killing `Λ`, the lifts and `u_a(Lie F⁰)`.
pub fn hom_to_ga(m: &MotiveDatum) -> Subspace {
    let d = m.lie_dim();
    let mut gens: Vec<Vec<Scalar>> = m.group.lattice.iter().chain(&m.lifts).cloned().collect();
    gens.extend(m.ua.images());
    Subspace::span(d, &gens).expect("validated shapes").annihilator()
}

/// `v_M : Ext(M_×, G_a)^∨ -> V(G)`, on `(V/V⁰)^{♯0} ⊆ H_C ⊕ Lie F⁰` in its
/// basis, landing in the basis of `V(G)`.
pub fn v_map(m: &MotiveDatum) -> Result<LinearMap> {
    let x = t_oint(m)?;
    let sq = sharp_quotient(&x)?;
    let total = x.v_c().copair(&x.v0map)?;
    let mut imgs = Vec::new();
    for s in sq.sharp0.vectors() {
        let v = total.apply(&s)?;
        imgs.push(x.v0.coords(&v).ok_or(Error::NotContained)?);
    }
    LinearMap::from_images(sq.sharp0.dim(), x.v0.dim(), &imgs)
}

/// `M^♮ = M_×^♮` with its map to `M`, for `M` with `Hom(M, G_a) = 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniversalExtension {
    pub motive: MotiveDatum,
    /// `M^♮ -> M`, surjective on Lie algebras with kernel `Ext(M, G_a)^∨`.
    pub to_motive: MotiveMorphism,
    /// `dim Ext(M, G_a)^∨`
    pub ext_dim: usize,
    /// `0 -> Ext(M,G_a)^∨ -> Ext(M_×,G_a)^∨ -> V(G) -> 0` holds in dimensions
    /// and `v_M` is onto.
    pub kernel_sequence_ok: bool,
    /// `(M^♮)_× -> M_×` is an isomorphism and `Hom(M^♮, G_a) = 0`, so `M^♮♮ = M^♮`.
    pub idempotent: bool,
}

impl UniversalExtension {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "motive": self.motive.to_json(),
            "toMotive": self.to_motive.to_json(),
            "extDim": self.ext_dim,
            "kernelSequenceOk": self.kernel_sequence_ok,
            "idempotent": self.idempotent,
        })
    }
}

pub fn universal_extension(m: &MotiveDatum) -> Result<UniversalExtension> {
    let hom = hom_to_ga(m);
    if !hom.is_zero() {
        return Err(Error::NoUniversalExtension { witness: hom.vectors().remove(0) });
    }
    let (mx, _) = m_times(m)?;
    let (nat, structure) = natural_extension(&mx)?;
    let x = t_oint(m)?;
    let lie = x.v_c().copair(&m.ua)?;
    let to_motive = MotiveMorphism::new(
        nat.clone(),
        m.clone(),
        GroupHom::identity(&m.formal.etale),
        LinearMap::identity(m.formal.f0dim),
        lie.clone(),
    )?;
    let ext_dim = lie.kernel().dim();
    let ranks = m.ranks();
    let vm = v_map(m)?;
    let kernel_sequence_ok = vm.is_surjective()
        && vm.dom() == ranks.ext_times_dim()
        && vm.kernel().dim() == ext_dim
        && ext_dim + ranks.n == ranks.ext_times_dim();

    let qn = quotient(nat.lie_dim(), &nat.group.additive)?;
    let induced = factor_through(&structure.f_g, &qn)?;
    let (nx, _) = m_times(&nat)?;
    let back = MotiveMorphism::new(
        nx.clone(),
        mx.clone(),
        GroupHom::identity(&m.formal.etale),
        LinearMap::identity(m.formal.f0dim),
        induced,
    );
    let idempotent = match back {
        Ok(b) => {
            super::is_quasi_iso(&b)? && b.lattice_matrix().map(|l| crate::groups::is_unimodular(&l)).unwrap_or(false)
        }
        Err(_) => false,
    } && hom_to_ga(&nat).is_zero();
    Ok(UniversalExtension { motive: nat, to_motive, ext_dim, kernel_sequence_ok, idempotent })
}

/// `M_tor → M → M_tf` and `M_tf → M_fr`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorsionParts {
    pub tor: MotiveDatum,
    pub tf: MotiveDatum,
    pub fr: MotiveDatum,
    pub inclusion: MotiveMorphism,
    pub to_tf: MotiveMorphism,
    pub tf_to_fr: MotiveMorphism,
}

/// Rows (in generator coordinates of `F_ét`) generating `F_tor ∩ ker u`.
fn torsion_kernel(m: &MotiveDatum, tors: &ZMatrix) -> Result<ZMatrix> {
    let k = m.etale_generators();
    let s = tors.rows();
    let l = m.group.lattice.len();
    if s == 0 {
        return Ok(ZMatrix::zeros(0, k));
    }
    let mut qs = Vec::with_capacity(s);
    for row in tors.row_vecs() {
        let v = m.lift_of(&row)?;
        let q = if l == 0 {
            if v.iter().any(|x| !x.is_zero()) {
                return Err(Error::NotContained);
            }
            vec![]
        } else {
            rational_coords(m.lie_dim(), &m.group.lattice, &v)?.ok_or(Error::NotContained)?
        };
        qs.push(q);
    }
    if l == 0 {
        return Ok(tors.clone());
    }
    // a ↦ Σ a_k q_k mod Z^l: kernel of [D q ; D I] modulo D
    let (qi, den) = clear_denominators(&qs);
    let stacked = qi.vstack(&ZMatrix::identity(l).scale(&den))?;
    let kern = left_kernel(&stacked).select_cols(&(0..s).collect::<Vec<_>>());
    if kern.rows() == 0 {
        return Ok(ZMatrix::zeros(0, k));
    }
    kern.mul(tors)
}

pub fn torsion_parts(m: &MotiveDatum) -> Result<TorsionParts> {
    let f = &m.formal.etale;
    let k = f.generators();
    let d = m.lie_dim();
    let tfree = torsion_free(f);
    let tors = tfree.inclusion.matrix().clone();
    let nonzero: Vec<Vec<BigInt>> =
        torsion_kernel(m, &tors)?.row_vecs().into_iter().filter(|r| !f.is_zero_element(r)).collect();
    let kgens = if nonzero.is_empty() { ZMatrix::zeros(0, k) } else { ZMatrix::from_rows(k, &nonzero)? };

    let (kgroup, kinc) = f.subgroup(&kgens)?;
    let tor = MotiveDatum::new(
        FormalDatum { etale: kgroup.clone(), f0dim: 0 },
        GroupDatum::zero(),
        vec![vec![]; kgroup.generators()],
        LinearMap::zero(0, 0),
    )
    .checked()?;
    let inclusion =
        MotiveMorphism::new(tor.clone(), m.clone(), kinc, LinearMap::zero(0, m.formal.f0dim), LinearMap::zero(0, d))?;

    let tf_group = FgAbGroup::new(k, f.relations().vstack(&kgens)?)?;
    let tf = MotiveDatum { formal: FormalDatum { etale: tf_group.clone(), f0dim: m.formal.f0dim }, ..m.clone() }
        .checked()?;
    let to_tf = MotiveMorphism::new(
        m.clone(),
        tf.clone(),
        GroupHom::new(f.clone(), tf_group.clone(), ZMatrix::identity(k))?,
        LinearMap::identity(m.formal.f0dim),
        LinearMap::identity(d),
    )?;

    let mut gens = m.group.lattice.clone();
    for row in tors.row_vecs() {
        gens.push(m.lift_of(&row)?);
    }
    let lattice = zspan_basis(d, &gens)?;
    let torus = saturation(d, &lattice, &m.group.torus)?;
    let lifts: Vec<Vec<Scalar>> =
        tfree.section.matrix().row_vecs().iter().map(|r| m.lift_of(r)).collect::<Result<_>>()?;
    let fr = MotiveDatum::new(
        FormalDatum { etale: tfree.free.clone(), f0dim: m.formal.f0dim },
        GroupDatum { lie_dim: d, lattice, torus, additive: m.group.additive.clone() },
        lifts,
        m.ua.clone(),
    )
    .checked()?;
    let tf_to_fr = MotiveMorphism::new(
        tf.clone(),
        fr.clone(),
        GroupHom::new(tf_group, tfree.free.clone(), tfree.projection.matrix().clone())?,
        LinearMap::identity(m.formal.f0dim),
        LinearMap::identity(d),
    )?;
    Ok(TorsionParts { tor, tf, fr, inclusion, to_tf, tf_to_fr })
}

/// `[0 -> V]` with `V = Q(i)^n`.
fn vector_group(n: usize) -> MotiveDatum {
    MotiveDatum::new(
        FormalDatum { etale: FgAbGroup::trivial(), f0dim: 0 },
        GroupDatum { lie_dim: n, lattice: vec![], torus: vec![], additive: Subspace::full(n) },
        vec![],
        LinearMap::zero(0, n),
    )
}

/// `0 -> V(G)[0] -> M -> M_× -> 0`
pub fn vbasicext(m: &MotiveDatum) -> Result<[MotiveMorphism; 2]> {
    let v = &m.group.additive;
    let vg = vector_group(v.dim());
    let inc = MotiveMorphism::new(
        vg.clone(),
        m.clone(),
        GroupHom::zero(&vg.formal.etale, &m.formal.etale),
        LinearMap::zero(0, m.formal.f0dim),
        LinearMap::from_images(v.dim(), m.lie_dim(), &v.vectors())?,
    )?;
    let (_, proj) = m_times(m)?;
    Ok([inc, proj])
}

/// `0 -> M_ét -> M_× -> F⁰[1] -> 0`
pub fn fbasicext(m: &MotiveDatum) -> Result<[MotiveMorphism; 2]> {
    let (mx, _) = m_times(m)?;
    let me = m_etale(m)?;
    let f0 = m.formal.f0dim;
    let inc = MotiveMorphism::new(
        me.clone(),
        mx.clone(),
        GroupHom::identity(&m.formal.etale),
        LinearMap::zero(0, f0),
        LinearMap::identity(mx.lie_dim()),
    )?;
    let f0_shift = MotiveDatum::new(
        FormalDatum { etale: FgAbGroup::trivial(), f0dim: f0 },
        GroupDatum::zero(),
        vec![],
        LinearMap::zero(f0, 0),
    );
    let proj = MotiveMorphism::new(
        mx.clone(),
        f0_shift.clone(),
        GroupHom::zero(&mx.formal.etale, &f0_shift.formal.etale),
        LinearMap::identity(f0),
        LinearMap::zero(mx.lie_dim(), 0),
    )?;
    Ok([inc, proj])
}

/// `0 -> [F⁰ -> V(G)] -> M -> M_ét -> 0` for special `M`.
pub fn fspecext(m: &MotiveDatum) -> Result<[MotiveMorphism; 2]> {
    if !m.is_special() {
        return Err(Error::NotSpecial);
    }
    let v = &m.group.additive;
    let n = v.dim();
    let f0 = m.formal.f0dim;
    let ua_imgs: Vec<Vec<Scalar>> =
        m.ua.images().iter().map(|w| v.coords(w).ok_or(Error::NotContained)).collect::<Result<_>>()?;
    let m0 = MotiveDatum {
        formal: FormalDatum { etale: FgAbGroup::trivial(), f0dim: f0 },
        ua: LinearMap::from_images(f0, n, &ua_imgs)?,
        ..vector_group(n)
    };
    let inc = MotiveMorphism::new(
        m0.clone(),
        m.clone(),
        GroupHom::zero(&m0.formal.etale, &m.formal.etale),
        LinearMap::identity(f0),
        LinearMap::from_images(n, m.lie_dim(), &v.vectors())?,
    )?;
    let me = m_etale(m)?;
    let q = quotient(m.lie_dim(), v)?;
    let proj =
        MotiveMorphism::new(m.clone(), me, GroupHom::identity(&m.formal.etale), LinearMap::zero(f0, 0), q.projection)?;
    Ok([inc, proj])
}

/// `0 -> A -> A ⊕ B -> B -> 0`
pub fn direct_sum_triple(a: &MotiveDatum, b: &MotiveDatum) -> Result<[MotiveMorphism; 2]> {
    let s = a.direct_sum(b);
    let (ka, kb) = (a.etale_generators(), b.etale_generators());
    let unit = |n: usize, total: usize, off: usize| -> ZMatrix {
        let rows: Vec<Vec<BigInt>> =
            (0..n).map(|i| (0..total).map(|c| BigInt::from(u8::from(c == off + i))).collect()).collect();
        if n == 0 {
            ZMatrix::zeros(0, total)
        } else {
            ZMatrix::from_rows(total, &rows).expect("rectangular")
        }
    };
    let proj_rows = |n: usize, total: usize, off: usize| -> ZMatrix {
        let rows: Vec<Vec<BigInt>> =
            (0..total).map(|i| (0..n).map(|c| BigInt::from(u8::from(i == off + c))).collect()).collect();
        if total == 0 {
            ZMatrix::zeros(0, n)
        } else {
            ZMatrix::from_rows(n, &rows).expect("rectangular")
        }
    };
    let inc = MotiveMorphism::new(
        a.clone(),
        s.clone(),
        GroupHom::new(a.formal.etale.clone(), s.formal.etale.clone(), unit(ka, ka + kb, 0))?,
        LinearMap::coordinate_inclusion(a.formal.f0dim, s.formal.f0dim, 0),
        LinearMap::coordinate_inclusion(a.lie_dim(), s.lie_dim(), 0),
    )?;
    let proj = MotiveMorphism::new(
        s.clone(),
        b.clone(),
        GroupHom::new(s.formal.etale.clone(), b.formal.etale.clone(), proj_rows(kb, ka + kb, ka))?,
        LinearMap::coordinate_projection(s.formal.f0dim, a.formal.f0dim, b.formal.f0dim),
        LinearMap::coordinate_projection(s.lie_dim(), a.lie_dim(), b.lie_dim()),
    )?;
    Ok([inc, proj])
}
