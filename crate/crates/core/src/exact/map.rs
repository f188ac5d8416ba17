use super::{Matrix, Scalar, Subspace};
use crate::error::{Error, Result};

/// Linear map `Q(i)^dom -> Q(i)^cod`; `matrix` is `cod x dom` acting on columns.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearMap {
    dom: usize,
    cod: usize,
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(dom: usize, cod: usize, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != cod || matrix.cols() != dom {
            return Err(Error::dim(format!("{}x{} matrix for a map {dom} -> {cod}", matrix.rows(), matrix.cols())));
        }
        Ok(LinearMap { dom, cod, matrix })
    }

    pub fn zero(dom: usize, cod: usize) -> Self {
        LinearMap { dom, cod, matrix: Matrix::zeros(cod, dom) }
    }

    pub fn identity(n: usize) -> Self {
        LinearMap { dom: n, cod: n, matrix: Matrix::identity(n) }
    }

    /// Map sending the k-th basis vector to `images[k]`.
    pub fn from_images(dom: usize, cod: usize, images: &[Vec<Scalar>]) -> Result<Self> {
        if images.len() != dom {
            return Err(Error::dim(format!("{} images for a domain of dimension {dom}", images.len())));
        }
        let m = Matrix::from_rows(cod, images)?.transpose();
        Ok(LinearMap { dom, cod, matrix: if dom == 0 { Matrix::zeros(cod, 0) } else { m } })
    }

    /// Inclusion of a subspace, from its canonical-basis coordinates.
    pub fn inclusion(sub: &Subspace) -> Self {
        LinearMap { dom: sub.dim(), cod: sub.ambient(), matrix: sub.basis().transpose() }
    }

    /// Projection of `Q(i)^(a+b)` onto the block of `len` coordinates starting at `start`.
    pub fn coordinate_projection(total: usize, start: usize, len: usize) -> Self {
        let mut m = Matrix::zeros(len, total);
        for k in 0..len {
            m.set(k, start + k, Scalar::one());
        }
        LinearMap { dom: total, cod: len, matrix: m }
    }

    /// Inclusion of `Q(i)^len` as the block starting at `start` in `Q(i)^total`.
    pub fn coordinate_inclusion(len: usize, total: usize, start: usize) -> Self {
        Self::coordinate_projection(total, start, len).dual()
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Images of the standard basis vectors.
    pub fn images(&self) -> Vec<Vec<Scalar>> {
        (0..self.dom).map(|c| self.matrix.col(c)).collect()
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.matrix.mul_vec(v)
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &LinearMap) -> Result<LinearMap> {
        if inner.cod != self.dom {
            return Err(Error::dim(format!("compose {}->{} after {}->{}", self.dom, self.cod, inner.dom, inner.cod)));
        }
        Ok(LinearMap { dom: inner.dom, cod: self.cod, matrix: self.matrix.mul(&inner.matrix)? })
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap> {
        Ok(LinearMap { dom: self.dom, cod: self.cod, matrix: self.matrix.add(&other.matrix)? })
    }

    pub fn sub(&self, other: &LinearMap) -> Result<LinearMap> {
        Ok(LinearMap { dom: self.dom, cod: self.cod, matrix: self.matrix.sub(&other.matrix)? })
    }

    pub fn scale(&self, s: &Scalar) -> LinearMap {
        LinearMap { dom: self.dom, cod: self.cod, matrix: self.matrix.scale(s) }
    }

    /// `(self, other): A -> C ⊕ D` for maps out of a common domain.
    pub fn pair(&self, other: &LinearMap) -> Result<LinearMap> {
        if self.dom != other.dom {
            return Err(Error::dim("pairing maps with different domains"));
        }
        Ok(LinearMap { dom: self.dom, cod: self.cod + other.cod, matrix: self.matrix.vstack(&other.matrix)? })
    }

    /// `[self other]: A ⊕ B -> C` for maps into a common codomain.
    pub fn copair(&self, other: &LinearMap) -> Result<LinearMap> {
        if self.cod != other.cod {
            return Err(Error::dim("copairing maps with different codomains"));
        }
        Ok(LinearMap { dom: self.dom + other.dom, cod: self.cod, matrix: self.matrix.hstack(&other.matrix)? })
    }

    pub fn direct_sum(&self, other: &LinearMap) -> LinearMap {
        LinearMap {
            dom: self.dom + other.dom,
            cod: self.cod + other.cod,
            matrix: self.matrix.block_diag(&other.matrix),
        }
    }

    pub fn kernel(&self) -> Subspace {
        Subspace::from_rows(&self.matrix.nullspace())
    }

    pub fn image(&self) -> Subspace {
        Subspace::from_rows(&self.matrix.transpose())
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.dom
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.cod
    }

    pub fn is_iso(&self) -> bool {
        self.dom == self.cod && self.is_injective()
    }

    pub fn inverse(&self) -> Option<LinearMap> {
        if self.dom != self.cod {
            return None;
        }
        Some(LinearMap { dom: self.dom, cod: self.cod, matrix: self.matrix.inverse()? })
    }

    /// Transpose, as the map of dual spaces in dual bases.
    pub fn dual(&self) -> LinearMap {
        LinearMap { dom: self.cod, cod: self.dom, matrix: self.matrix.transpose() }
    }

    pub fn conjugate(&self) -> LinearMap {
        LinearMap { dom: self.dom, cod: self.cod, matrix: self.matrix.conjugate() }
    }

    pub fn image_of(&self, sub: &Subspace) -> Result<Subspace> {
        if sub.ambient() != self.dom {
            return Err(Error::dim("image of a subspace outside the domain"));
        }
        self.compose(&LinearMap::inclusion(sub)).map(|m| m.image())
    }

    pub fn preimage(&self, sub: &Subspace) -> Result<Subspace> {
        if sub.ambient() != self.cod {
            return Err(Error::dim("preimage of a subspace outside the codomain"));
        }
        let q = quotient(self.cod, sub)?;
        Ok(q.projection.compose(self)?.kernel())
    }

    /// Restriction to `sub`, in the canonical coordinates of `sub`.
    pub fn restrict(&self, sub: &Subspace) -> Result<LinearMap> {
        self.compose(&LinearMap::inclusion(sub))
    }

    /// A section `s` with `self ∘ s = id`, for a surjective map.
    pub fn right_inverse(&self) -> Result<LinearMap> {
        let mut images = Vec::with_capacity(self.cod);
        for k in 0..self.cod {
            let mut e = vec![Scalar::zero(); self.cod];
            e[k] = Scalar::one();
            images.push(self.matrix.solve(&e)?.ok_or_else(|| Error::NotSurjective("no right inverse".into()))?);
        }
        LinearMap::from_images(self.cod, self.dom, &images)
    }

    /// Corestriction into `sub`, in its canonical coordinates; fails if the image leaves `sub`.
    pub fn corestrict(&self, sub: &Subspace) -> Result<LinearMap> {
        let mut images = Vec::with_capacity(self.dom);
        for v in self.images() {
            images.push(sub.coords(&v).ok_or(Error::NotContained)?);
        }
        LinearMap::from_images(self.dom, sub.dim(), &images)
    }
}

/// `ambient / sub` with the complement spanned by the non-pivot coordinates of `sub`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Quotient {
    pub dim: usize,
    pub sub: Subspace,
    pub projection: LinearMap,
    /// Splitting `Q(i)^dim -> ambient` onto the pivot-column complement.
    pub section: LinearMap,
    pub complement: Vec<usize>,
}

pub fn quotient(ambient: usize, sub: &Subspace) -> Result<Quotient> {
    if sub.ambient() != ambient {
        return Err(Error::NotContained);
    }
    let pivots = sub.pivots();
    let complement: Vec<usize> = (0..ambient).filter(|c| !pivots.contains(c)).collect();
    let dim = complement.len();
    let mut proj = Matrix::zeros(dim, ambient);
    let mut sect = Matrix::zeros(ambient, dim);
    for (j, &c) in complement.iter().enumerate() {
        proj.set(j, c, Scalar::one());
        sect.set(c, j, Scalar::one());
    }
    for (k, &p) in pivots.iter().enumerate() {
        for (j, &c) in complement.iter().enumerate() {
            proj.set(j, p, -sub.basis().get(k, c));
        }
    }
    Ok(Quotient {
        dim,
        sub: sub.clone(),
        projection: LinearMap::new(ambient, dim, proj)?,
        section: LinearMap::new(dim, ambient, sect)?,
        complement,
    })
}

/// The map `A/SA -> B/SB` induced by `f`, provided `f(SA) ⊆ SB`.
pub fn induced_map(f: &LinearMap, qa: &Quotient, qb: &Quotient) -> Result<LinearMap> {
    if !qb.sub.contains(&f.image_of(&qa.sub)?) {
        return Err(Error::NotContained);
    }
    qb.projection.compose(f)?.compose(&qa.section)
}

/// The map `A/S -> B` through which `f` factors, provided `f(S) = 0`.
pub fn factor_through(f: &LinearMap, q: &Quotient) -> Result<LinearMap> {
    if !f.image_of(&q.sub)?.is_zero() {
        return Err(Error::NotContained);
    }
    f.compose(&q.section)
}

/// `A ×_C B` inside `A ⊕ B`, with projections out of its canonical coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiberProduct {
    pub sub: Subspace,
    pub proj_a: LinearMap,
    pub proj_b: LinearMap,
}

impl FiberProduct {
    pub fn dim(&self) -> usize {
        self.sub.dim()
    }
}

pub fn fiber_product(f: &LinearMap, g: &LinearMap) -> Result<FiberProduct> {
    if f.cod() != g.cod() {
        return Err(Error::dim(format!("fiber product over codomains {} and {}", f.cod(), g.cod())));
    }
    let diff = f.copair(&g.scale(&-Scalar::one()))?;
    let sub = diff.kernel();
    let (a, b) = (f.dom(), g.dom());
    let inc = LinearMap::inclusion(&sub);
    Ok(FiberProduct {
        proj_a: LinearMap::coordinate_projection(a + b, 0, a).compose(&inc)?,
        proj_b: LinearMap::coordinate_projection(a + b, a, b).compose(&inc)?,
        sub,
    })
}

/// Pushout `B ⊔_A C = (B ⊕ C) / {(f a, -g a)}` with its structure maps.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Pushout {
    pub quotient: Quotient,
    pub inj_b: LinearMap,
    pub inj_c: LinearMap,
}

pub fn pushout(f: &LinearMap, g: &LinearMap) -> Result<Pushout> {
    if f.dom() != g.dom() {
        return Err(Error::dim("pushout of maps with different domains"));
    }
    let rel = f.pair(&g.scale(&-Scalar::one()))?.image();
    let total = f.cod() + g.cod();
    let q = quotient(total, &rel)?;
    Ok(Pushout {
        inj_b: q.projection.compose(&LinearMap::coordinate_inclusion(f.cod(), total, 0))?,
        inj_c: q.projection.compose(&LinearMap::coordinate_inclusion(g.cod(), total, f.cod()))?,
        quotient: q,
    })
}
