use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::snf::smith_normal_form;
use super::zmatrix::{int_rows_from_json, int_rows_to_json, int_to_json};
use super::ZMatrix;
use crate::error::{Error, Result};
use crate::exact::LinearMap;

/// `Z^n / (row span of relations)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FgAbGroup {
    generators: usize,
    relations: ZMatrix,
}

/// Isomorphism type: torsion invariant factors `> 1` (each dividing the next) and free rank.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IsoType {
    pub torsion: Vec<BigInt>,
    pub rank: usize,
}

impl IsoType {
    pub fn order_of_torsion(&self) -> BigInt {
        self.torsion.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.rank == 0
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "torsion": self.torsion.iter().map(int_to_json).collect::<Vec<_>>(),
            "rank": self.rank,
        })
    }
}

impl FgAbGroup {
    pub fn new(generators: usize, relations: ZMatrix) -> Result<Self> {
        if relations.cols() != generators && relations.rows() > 0 {
            return Err(Error::dim(format!("relations of width {} for {generators} generators", relations.cols())));
        }
        let relations = if relations.rows() == 0 { ZMatrix::zeros(0, generators) } else { relations };
        Ok(FgAbGroup { generators, relations })
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup { generators: rank, relations: ZMatrix::zeros(0, rank) }
    }

    pub fn trivial() -> Self {
        FgAbGroup::free(0)
    }

    /// `Z/d_1 ⊕ ... ⊕ Z/d_k` (a zero entry gives a copy of Z).
    pub fn cyclic_sum(orders: &[BigInt]) -> Self {
        let n = orders.len();
        FgAbGroup { generators: n, relations: ZMatrix::diag(orders) }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &ZMatrix {
        &self.relations
    }

    pub fn iso_type(&self) -> IsoType {
        let snf = smith_normal_form(&self.relations);
        let diag = snf.diagonal();
        let nonzero: Vec<BigInt> = diag.into_iter().filter(|d| !d.is_zero()).collect();
        let rank = self.generators - nonzero.len();
        IsoType { torsion: nonzero.into_iter().filter(|d| !d.is_one()).collect(), rank }
    }

    pub fn rank(&self) -> usize {
        self.iso_type().rank
    }

    pub fn is_torsion_free(&self) -> bool {
        self.iso_type().torsion.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.iso_type().is_trivial()
    }

    pub fn is_isomorphic(&self, other: &FgAbGroup) -> bool {
        self.iso_type() == other.iso_type()
    }

    /// Whether the element with generator coordinates `x` is zero.
    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        in_row_span(&self.relations, x)
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        FgAbGroup {
            generators: self.generators + other.generators,
            relations: self.relations.block_diag(&other.relations),
        }
    }

    /// Subgroup generated by the rows of `gens` (elements in generator coordinates),
    /// presented on those generators, with its inclusion.
    pub fn subgroup(&self, gens: &ZMatrix) -> Result<(FgAbGroup, GroupHom)> {
        if gens.cols() != self.generators && gens.rows() > 0 {
            return Err(Error::dim("subgroup generators of the wrong width"));
        }
        let m = gens.rows();
        let gens = if m == 0 { ZMatrix::zeros(0, self.generators) } else { gens.clone() };
        let stacked = gens.vstack(&self.relations.scale(&-BigInt::one()))?;
        let rels = left_kernel(&stacked).select_cols(&(0..m).collect::<Vec<_>>());
        let sub = FgAbGroup::new(m, rels)?;
        let inc = GroupHom::new(sub.clone(), self.clone(), gens)?;
        Ok((sub, inc))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "generators": self.generators,
            "relations": int_rows_to_json(&self.relations.row_vecs()),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let n = v
            .get("generators")
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| Error::Parse("group needs integer \"generators\"".into()))? as usize;
        let rows = match v.get("relations") {
            Some(r) => int_rows_from_json(r).map_err(Error::Parse)?,
            None => vec![],
        };
        FgAbGroup::new(n, ZMatrix::from_rows(n, &rows)?)
    }
}

impl Serialize for FgAbGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FgAbGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        FgAbGroup::from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// Whether the row vector `x` lies in the integer row span of `b`.
pub fn in_row_span(b: &ZMatrix, x: &[BigInt]) -> bool {
    if b.rows() == 0 {
        return x.iter().all(Zero::is_zero);
    }
    if x.len() != b.cols() {
        return false;
    }
    let snf = smith_normal_form(b);
    let y = snf.v.left_mul_vec(x).expect("width checked");
    let diag = snf.diagonal();
    y.iter().enumerate().all(|(k, yk)| match diag.get(k) {
        Some(d) if !d.is_zero() => yk.is_multiple_of(d),
        _ => yk.is_zero(),
    })
}

/// Integer solution `c` of `c * b = x`, if one exists.
pub fn solve_row_span(b: &ZMatrix, x: &[BigInt]) -> Option<Vec<BigInt>> {
    if x.len() != b.cols() {
        return None;
    }
    let snf = smith_normal_form(b);
    let y = snf.v.left_mul_vec(x).ok()?;
    let diag = snf.diagonal();
    // c = z U with z D = y
    let mut z = vec![BigInt::zero(); b.rows()];
    for (k, yk) in y.iter().enumerate() {
        match diag.get(k) {
            Some(d) if !d.is_zero() => {
                let (q, r) = yk.div_rem(d);
                if !r.is_zero() {
                    return None;
                }
                z[k] = q;
            }
            _ => {
                if !yk.is_zero() {
                    return None;
                }
            }
        }
    }
    snf.u.left_mul_vec(&z).ok()
}

/// Basis (rows) of the integer left kernel `{w : w * b = 0}`.
pub fn left_kernel(b: &ZMatrix) -> ZMatrix {
    let snf = smith_normal_form(b);
    let r = snf.rank();
    let idx: Vec<usize> = (r..b.rows()).collect();
    let k = snf.u.select_rows(&idx);
    if k.rows() == 0 {
        ZMatrix::zeros(0, b.rows())
    } else {
        k
    }
}

/// Homomorphism given by the images of the source generators (one row each,
/// in target generator coordinates). Validity is checked at construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupHom {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: ZMatrix,
}

impl GroupHom {
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: ZMatrix) -> Result<Self> {
        let matrix = if matrix.rows() == 0 || matrix.cols() == 0 {
            if matrix.rows() != 0 && matrix.rows() != source.generators {
                return Err(Error::dim("hom matrix height differs from source generators"));
            }
            ZMatrix::zeros(source.generators, target.generators)
        } else {
            matrix
        };
        if matrix.rows() != source.generators || matrix.cols() != target.generators {
            return Err(Error::dim(format!(
                "{}x{} hom matrix for {} -> {} generators",
                matrix.rows(),
                matrix.cols(),
                source.generators,
                target.generators
            )));
        }
        for (k, rel) in source.relations.row_vecs().iter().enumerate() {
            let img = matrix.left_mul_vec(rel)?;
            if !target.is_zero_element(&img) {
                return Err(Error::invalid("group hom", vec![format!("source relation {k} not respected")]));
            }
        }
        Ok(GroupHom { source, target, matrix })
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        GroupHom { source: g.clone(), target: g.clone(), matrix: ZMatrix::identity(g.generators) }
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            matrix: ZMatrix::zeros(source.generators, target.generators),
        }
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &ZMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        self.matrix.left_mul_vec(x)
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &GroupHom) -> Result<GroupHom> {
        if inner.target.generators != self.source.generators {
            return Err(Error::dim("composing homs through different groups"));
        }
        Ok(GroupHom {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: inner.matrix.mul(&self.matrix)?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.row_vecs().iter().all(|r| self.target.is_zero_element(r))
    }

    /// Equality as maps (images agree modulo target relations).
    pub fn equals(&self, other: &GroupHom) -> bool {
        self.source.generators == other.source.generators
            && self.target.generators == other.target.generators
            && self.matrix.row_vecs().iter().zip(other.matrix.row_vecs()).all(|(a, b)| {
                let d: Vec<BigInt> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
                self.target.is_zero_element(&d)
            })
    }

    pub fn direct_sum(&self, other: &GroupHom) -> GroupHom {
        GroupHom {
            source: self.source.direct_sum(&other.source),
            target: self.target.direct_sum(&other.target),
            matrix: self.matrix.block_diag(&other.matrix),
        }
    }

    /// The homomorphism on free generator coordinates, as a map `Q(i)^m -> Q(i)^n`.
    pub fn generator_map(&self) -> LinearMap {
        let (m, n) = (self.source.generators, self.target.generators);
        if m == 0 || n == 0 {
            return LinearMap::zero(m, n);
        }
        LinearMap::new(m, n, self.matrix.to_exact().transpose()).expect("shapes agree")
    }

    /// Elements of the source, as generator-coordinate rows, generating the kernel.
    pub fn kernel_generators(&self) -> ZMatrix {
        let ns = self.source.generators;
        let stacked = self.matrix.vstack(&self.target.relations.scale(&-BigInt::one())).expect("widths agree");
        let k = left_kernel(&stacked);
        if k.rows() == 0 {
            return ZMatrix::zeros(0, ns);
        }
        k.select_cols(&(0..ns).collect::<Vec<_>>())
    }

    pub fn kernel(&self) -> (FgAbGroup, GroupHom) {
        self.source.subgroup(&self.kernel_generators()).expect("kernel generators live in the source")
    }

    pub fn image(&self) -> (FgAbGroup, GroupHom) {
        self.target.subgroup(&self.matrix).expect("images live in the target")
    }

    pub fn cokernel(&self) -> (FgAbGroup, GroupHom) {
        let rels = self.target.relations.vstack(&self.matrix).expect("widths agree");
        let c = FgAbGroup { generators: self.target.generators, relations: rels };
        let proj = GroupHom {
            source: self.target.clone(),
            target: c.clone(),
            matrix: ZMatrix::identity(self.target.generators),
        };
        (c, proj)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().0.is_trivial()
    }
}

/// Output of [`hom_kernel_cokernel`].
#[derive(Clone, Debug)]
pub struct KernelCokernel {
    pub kernel: FgAbGroup,
    pub inclusion: GroupHom,
    pub cokernel: FgAbGroup,
    pub projection: GroupHom,
}

pub fn hom_kernel_cokernel(f: &GroupHom) -> KernelCokernel {
    let (kernel, inclusion) = f.kernel();
    let (cokernel, projection) = f.cokernel();
    KernelCokernel { kernel, inclusion, cokernel, projection }
}

/// Torsion subgroup and free quotient with their structure maps.
#[derive(Clone, Debug)]
pub struct TorsionFree {
    pub torsion: FgAbGroup,
    pub inclusion: GroupHom,
    pub free: FgAbGroup,
    pub projection: GroupHom,
    /// A splitting of `projection`.
    pub section: GroupHom,
}

pub fn torsion_free(g: &FgAbGroup) -> TorsionFree {
    let snf = smith_normal_form(&g.relations);
    let diag = snf.diagonal();
    let n = g.generators;
    let d_at = |k: usize| diag.get(k).cloned().unwrap_or_else(BigInt::zero);
    // in coordinates y = x V, the group is ⊕ Z/d_k
    let tors_idx: Vec<usize> = (0..n).filter(|&k| d_at(k) > BigInt::one()).collect();
    let free_idx: Vec<usize> = (0..n).filter(|&k| d_at(k).is_zero()).collect();
    let orders: Vec<BigInt> = tors_idx.iter().map(|&k| d_at(k)).collect();
    let torsion = FgAbGroup::cyclic_sum(&orders);
    let inclusion = GroupHom {
        source: torsion.clone(),
        target: g.clone(),
        matrix: if tors_idx.is_empty() { ZMatrix::zeros(0, n) } else { snf.v_inv.select_rows(&tors_idx) },
    };
    let free = FgAbGroup::free(free_idx.len());
    let projection = GroupHom {
        source: g.clone(),
        target: free.clone(),
        matrix: if free_idx.is_empty() { ZMatrix::zeros(n, 0) } else { snf.v.select_cols(&free_idx) },
    };
    let section = GroupHom {
        source: free.clone(),
        target: g.clone(),
        matrix: if free_idx.is_empty() { ZMatrix::zeros(0, n) } else { snf.v_inv.select_rows(&free_idx) },
    };
    TorsionFree { torsion, inclusion, free, projection, section }
}

/// Exactness of `A_0 -> A_1 -> ... -> A_k` at each interior group:
/// entry `j` reports exactness at the target of `homs[j]`.
pub fn exactness(homs: &[GroupHom]) -> Result<Vec<bool>> {
    let mut out = Vec::new();
    for w in homs.windows(2) {
        let (f, g) = (&w[0], &w[1]);
        if f.target.generators != g.source.generators {
            return Err(Error::dim("chain of homs is not composable"));
        }
        out.push(image_equals_kernel(f, g));
    }
    Ok(out)
}

/// `im f = ker g` inside the common middle group.
pub fn image_equals_kernel(f: &GroupHom, g: &GroupHom) -> bool {
    let mid = &f.target;
    let ker = g.kernel_generators();
    let im_plus_rel = f.matrix.vstack(&mid.relations).expect("same width");
    let ker_plus_rel = ker.vstack(&mid.relations).expect("same width");
    let im_in_ker = f.matrix.row_vecs().iter().all(|x| in_row_span(&ker_plus_rel, x));
    let ker_in_im = ker.row_vecs().iter().all(|x| in_row_span(&im_plus_rel, x));
    im_in_ker && ker_in_im
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn torsion_free_examples() {
        let tf = torsion_free(&FgAbGroup::free(2));
        assert!(tf.torsion.is_trivial());
        assert_eq!(tf.free.rank(), 2);

        let z4 = FgAbGroup::cyclic_sum(&[b(4)]);
        let tf = torsion_free(&z4);
        assert_eq!(tf.torsion.iso_type(), IsoType { torsion: vec![b(4)], rank: 0 });
        assert!(tf.free.is_trivial());

        // <x, y | 2x = 2y>: relation row (2, -2)
        let g = FgAbGroup::new(2, ZMatrix::from_i64(2, &[&[2, -2]])).unwrap();
        let tf = torsion_free(&g);
        assert_eq!(tf.torsion.iso_type(), IsoType { torsion: vec![b(2)], rank: 0 });
        assert_eq!(tf.free.rank(), 1);
        // torsion -> G -> free is exact in the middle
        assert!(image_equals_kernel(&tf.inclusion, &tf.projection));
        assert!(tf.inclusion.is_injective());
        assert!(tf.projection.is_surjective());
        assert!(tf.projection.compose(&tf.section).unwrap().equals(&GroupHom::identity(&tf.free)));
    }

    #[test]
    fn kernel_cokernel_examples() {
        let z = FgAbGroup::free(1);
        let two = GroupHom::new(z.clone(), z.clone(), ZMatrix::from_i64(1, &[&[2]])).unwrap();
        let kc = hom_kernel_cokernel(&two);
        assert!(kc.kernel.is_trivial());
        assert_eq!(kc.cokernel.iso_type(), IsoType { torsion: vec![b(2)], rank: 0 });

        let kc = hom_kernel_cokernel(&GroupHom::identity(&z));
        assert!(kc.kernel.is_trivial() && kc.cokernel.is_trivial());

        let z3 = FgAbGroup::cyclic_sum(&[b(3)]);
        let kc = hom_kernel_cokernel(&GroupHom::zero(&z, &z3));
        assert_eq!(kc.kernel.iso_type(), IsoType { torsion: vec![], rank: 1 });
        assert_eq!(kc.cokernel.iso_type(), IsoType { torsion: vec![b(3)], rank: 0 });
    }

    #[test]
    fn hom_must_respect_relations() {
        let z2 = FgAbGroup::cyclic_sum(&[b(2)]);
        let z = FgAbGroup::free(1);
        assert!(GroupHom::new(z2.clone(), z.clone(), ZMatrix::from_i64(1, &[&[1]])).is_err());
        let z4 = FgAbGroup::cyclic_sum(&[b(4)]);
        assert!(GroupHom::new(z2, z4, ZMatrix::from_i64(1, &[&[2]])).is_ok());
    }

    #[test]
    fn five_term_sequence_is_exact() {
        let s = FgAbGroup::free(2);
        let t = FgAbGroup::new(2, ZMatrix::from_i64(2, &[&[0, 6]])).unwrap();
        let f = GroupHom::new(s, t, ZMatrix::from_i64(2, &[&[2, 0], &[1, 3]])).unwrap();
        let kc = hom_kernel_cokernel(&f);
        let flags = exactness(&[kc.inclusion.clone(), f.clone(), kc.projection.clone()]).unwrap();
        assert_eq!(flags, vec![true, true]);
        assert!(kc.inclusion.is_injective() && kc.projection.is_surjective());
        assert_eq!(kc.kernel.iso_type(), IsoType { torsion: vec![], rank: 1 });
    }

    #[test]
    fn solve_in_row_span() {
        let bm = ZMatrix::from_i64(2, &[&[2, 0], &[0, 3]]);
        let c = solve_row_span(&bm, &[b(4), b(-3)]).unwrap();
        assert_eq!(bm.left_mul_vec(&c).unwrap(), vec![b(4), b(-3)]);
        assert!(solve_row_span(&bm, &[b(1), b(0)]).is_none());
    }

    #[test]
    fn json_roundtrip() {
        let g = FgAbGroup::new(2, ZMatrix::from_i64(2, &[&[2, -2]])).unwrap();
        let v = g.to_json();
        assert_eq!(v.to_string(), r#"{"generators":2,"relations":[[2,-2]]}"#);
        assert_eq!(FgAbGroup::from_json(&v).unwrap(), g);
    }
}
