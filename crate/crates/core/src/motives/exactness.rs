//! Strong exactness of sequences of motives and quasi-isomorphisms.

use serde_json::{json, Value};

use super::realization::t_oint_morphism;
use super::{MotiveDatum, MotiveMorphism};
use crate::error::{Error, Result};
use crate::exact::{induced_map, quotient, LinearMap, Scalar, Subspace};
use crate::formal_hodge::linear_exact;
use crate::groups::{exactness, lattice_membership, zspan_basis, FgAbGroup, GroupHom, ZMatrix};

/// A vector space with a lattice in it (free, given by a basis).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatticeLevel {
    pub dim: usize,
    pub lattice: Vec<Vec<Scalar>>,
}

impl LatticeLevel {
    /// `L = T × V(G)`: `Lie L = Lie T + V(G)` with lattice `Λ_T`, in the
    /// coordinates of `Lie L`, together with `Lie L ⊆ Lie G`.
    pub fn linear_part(m: &MotiveDatum) -> Result<(LatticeLevel, Subspace)> {
        let s = m.group.torus_span().sum(&m.group.additive)?;
        let lattice =
            m.group.torus.iter().map(|t| s.coords(t).ok_or(Error::NotContained)).collect::<Result<Vec<_>>>()?;
        Ok((LatticeLevel { dim: s.dim(), lattice }, s))
    }

    /// `A = G / L` with lattice `Λ / Λ_T`.
    pub fn abelian_part(m: &MotiveDatum) -> Result<(LatticeLevel, crate::exact::Quotient)> {
        let (_, s) = Self::linear_part(m)?;
        let q = quotient(m.lie_dim(), &s)?;
        let imgs: Vec<Vec<Scalar>> = m.group.lattice.iter().map(|l| q.projection.apply(l)).collect::<Result<_>>()?;
        Ok((LatticeLevel { dim: q.dim, lattice: zspan_basis(q.dim, &imgs)? }, q))
    }

    pub fn of_group(m: &MotiveDatum) -> LatticeLevel {
        LatticeLevel { dim: m.lie_dim(), lattice: m.group.lattice.clone() }
    }

    fn group(&self) -> FgAbGroup {
        FgAbGroup::free(self.lattice.len())
    }
}

/// The map of lattices induced by `f`, if `f` maps one into the other.
fn lattice_hom(f: &LinearMap, a: &LatticeLevel, b: &LatticeLevel) -> Result<Option<GroupHom>> {
    let mut rows = Vec::with_capacity(a.lattice.len());
    for v in &a.lattice {
        match lattice_membership(b.dim, &b.lattice, &f.apply(v)?)? {
            Some(c) => rows.push(c),
            None => return Ok(None),
        }
    }
    let m =
        if rows.is_empty() { ZMatrix::zeros(0, b.lattice.len()) } else { ZMatrix::from_rows(b.lattice.len(), &rows)? };
    Ok(Some(GroupHom::new(a.group(), b.group(), m)?))
}

/// Exactness of `0 -> X_0 -> ... -> X_k -> 0` for linear maps and for the
/// lattices they carry; returns `(linear, lattice)`.
pub fn level_exact(levels: &[LatticeLevel], maps: &[LinearMap]) -> Result<(bool, bool)> {
    if levels.len() != maps.len() + 1 {
        return Err(Error::dim("levels and maps do not alternate"));
    }
    let mut lin = true;
    for (i, lv) in levels.iter().enumerate() {
        let f = if i == 0 { None } else { Some(&maps[i - 1]) };
        lin &= linear_exact(f, maps.get(i), lv.dim);
    }
    let mut homs = Vec::with_capacity(maps.len() + 2);
    let first = &levels[0];
    homs.push(GroupHom::zero(&FgAbGroup::trivial(), &first.group()));
    for (i, f) in maps.iter().enumerate() {
        match lattice_hom(f, &levels[i], &levels[i + 1])? {
            Some(h) => homs.push(h),
            None => return Ok((lin, false)),
        }
    }
    let last = levels.last().expect("nonempty");
    homs.push(GroupHom::zero(&last.group(), &FgAbGroup::trivial()));
    Ok((lin, exactness(&homs)?.into_iter().all(|b| b)))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StrongExactReport {
    pub formal_etale: bool,
    pub formal_lie: bool,
    pub group_lie: bool,
    pub group_lattice: bool,
    /// The sequence of linear parts `L = T × V(G)`.
    pub eta_l: bool,
    /// The sequence of abelian quotients `A = G / L`.
    pub eta_a: bool,
    /// Strong exactness of the Cartier dual sequence, when every term has a
    /// torsion-free `F_ét`.
    pub dual: Option<bool>,
}

impl StrongExactReport {
    pub fn formal_exact(&self) -> bool {
        self.formal_etale && self.formal_lie
    }

    pub fn group_exact(&self) -> bool {
        self.group_lie && self.group_lattice
    }

    pub fn strongly_exact(&self) -> bool {
        self.formal_exact() && self.group_exact()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "stronglyExact": self.strongly_exact(),
            "formal": {"etale": self.formal_etale, "lie": self.formal_lie},
            "group": {"lie": self.group_lie, "lattice": self.group_lattice},
            "etaL": self.eta_l,
            "etaA": self.eta_a,
            "dualStronglyExact": self.dual,
        })
    }
}

fn check_composable(seq: &[MotiveMorphism]) -> Result<()> {
    if seq.is_empty() {
        return Err(Error::dim("empty sequence"));
    }
    for w in seq.windows(2) {
        if w[0].target != w[1].source {
            return Err(Error::dim("sequence is not composable"));
        }
    }
    Ok(())
}

/// Strong exactness of `0 -> M_0 -> ... -> M_k -> 0` without the dual flag.
pub(crate) fn strong_exactness_parts(seq: &[MotiveMorphism]) -> Result<StrongExactReport> {
    check_composable(seq)?;
    let objs: Vec<&MotiveDatum> = std::iter::once(&seq[0].source).chain(seq.iter().map(|f| &f.target)).collect();

    let mut ghoms = vec![GroupHom::zero(&FgAbGroup::trivial(), &objs[0].formal.etale)];
    ghoms.extend(seq.iter().map(|f| f.f_et.clone()));
    ghoms.push(GroupHom::zero(&objs[objs.len() - 1].formal.etale, &FgAbGroup::trivial()));
    let formal_etale = exactness(&ghoms)?.into_iter().all(|b| b);

    let f0s: Vec<LinearMap> = seq.iter().map(|f| f.f0.clone()).collect();
    let formal_lie = (0..objs.len()).all(|i| {
        let f = if i == 0 { None } else { Some(&f0s[i - 1]) };
        linear_exact(f, f0s.get(i), objs[i].formal.f0dim)
    });

    let levels: Vec<LatticeLevel> = objs.iter().map(|m| LatticeLevel::of_group(m)).collect();
    let fgs: Vec<LinearMap> = seq.iter().map(|f| f.f_g.clone()).collect();
    let (group_lie, group_lattice) = level_exact(&levels, &fgs)?;

    let mut lin = Vec::new();
    for m in &objs {
        lin.push(LatticeLevel::linear_part(m)?);
    }
    let mut lmaps = Vec::new();
    for (i, f) in seq.iter().enumerate() {
        let inc = LinearMap::inclusion(&lin[i].1);
        lmaps.push(f.f_g.compose(&inc)?.corestrict(&lin[i + 1].1)?);
    }
    let (a, b) = level_exact(&lin.iter().map(|x| x.0.clone()).collect::<Vec<_>>(), &lmaps)?;
    let eta_l = a && b;

    let mut ab = Vec::new();
    for m in &objs {
        ab.push(LatticeLevel::abelian_part(m)?);
    }
    let mut amaps = Vec::new();
    for (i, f) in seq.iter().enumerate() {
        amaps.push(induced_map(&f.f_g, &ab[i].1, &ab[i + 1].1)?);
    }
    let (a, b) = level_exact(&ab.iter().map(|x| x.0.clone()).collect::<Vec<_>>(), &amaps)?;
    let eta_a = a && b;

    Ok(StrongExactReport { formal_etale, formal_lie, group_lie, group_lattice, eta_l, eta_a, dual: None })
}

/// Strong exactness, the `η_L`/`η_A` predicates and, for torsion-free terms,
/// strong exactness of the Cartier dual sequence.
pub fn check_strongly_exact(seq: &[MotiveMorphism]) -> Result<StrongExactReport> {
    let mut rep = strong_exactness_parts(seq)?;
    let free =
        std::iter::once(&seq[0].source).chain(seq.iter().map(|f| &f.target)).all(|m| m.formal.etale.is_torsion_free());
    if free {
        let duals = crate::duality::dual_sequence(seq)?;
        rep.dual = Some(strong_exactness_parts(&duals)?.strongly_exact());
    }
    Ok(rep)
}

/// `f_G` an isogeny, `f⁰` an isomorphism and `F_1 ≅ G_1 ×_{G_2} F_2`.
///
/// With `f_G` bijective on Lie algebras and on vector parts, the pullback
/// condition is equivalent to `T∮(f)_Z` being an isomorphism.
pub fn is_quasi_iso(f: &MotiveMorphism) -> Result<bool> {
    if !f.f0.is_iso() || !f.f_g.is_iso() {
        return Ok(false);
    }
    let (s, t) = (&f.source.group, &f.target.group);
    if f.f_g.image_of(&s.additive)? != t.additive || f.f_g.image_of(&s.torus_span())? != t.torus_span() {
        return Ok(false);
    }
    let hz = t_oint_morphism(f)?.hz;
    Ok(hz.is_injective() && hz.is_surjective())
}
