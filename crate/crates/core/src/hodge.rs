//! Mixed Hodge structures of level at most one.
//!
//! `H_Q` is `Q^generators / span(relations)` with the pivot-column complement
//! as coordinates (see [`rational_quotient`]). `W_{-2} ⊆ W_{-1}` are rational
//! subspaces of it and `F^0` is a subspace of `H_C = H_Q ⊗ Q(i)`. Torsion in
//! the lattice carries no filtration data. Polarizability is assumed, never
//! checked.
//!
//! `Z(1)` is identified with `Z` throughout, so duality only moves filtrations.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{quotient, LinearMap, Matrix, Quotient, Scalar, Subspace};
use crate::groups::{smith_normal_form, FgAbGroup, GroupHom, ZMatrix};
use crate::json;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mhs1 {
    pub lattice: FgAbGroup,
    pub wm2: Subspace,
    pub wm1: Subspace,
    pub f0: Subspace,
}

/// `h^{p,q}` for the four admissible types.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct HodgeNumbers {
    pub h00: usize,
    pub hm10: usize,
    pub h0m1: usize,
    pub hm1m1: usize,
}

impl HodgeNumbers {
    pub fn total(&self) -> usize {
        self.h00 + self.hm10 + self.h0m1 + self.hm1m1
    }

    pub fn to_json(&self) -> Value {
        json!({"0,0": self.h00, "-1,0": self.hm10, "0,-1": self.h0m1, "-1,-1": self.hm1m1})
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MhsReport {
    pub failures: Vec<String>,
    pub hodge: HodgeNumbers,
}

impl MhsReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "valid": self.is_valid(),
            "failures": self.failures,
            "hodgeNumbers": self.hodge.to_json(),
            "polarizable": "assumed",
        })
    }
}

impl Mhs1 {
    /// Checks dimensions only; use [`Mhs1::validate`] for the Hodge axioms.
    pub fn new(lattice: FgAbGroup, wm2: Subspace, wm1: Subspace, f0: Subspace) -> Result<Self> {
        let r = lattice.rank();
        for (name, s) in [("Wm2", &wm2), ("Wm1", &wm1), ("F0", &f0)] {
            if s.ambient() != r {
                return Err(Error::dim(format!("{name} lives in dimension {} but H_Q has dimension {r}", s.ambient())));
            }
        }
        Ok(Mhs1 { lattice, wm2, wm1, f0 })
    }

    /// Builds and validates.
    pub fn checked(lattice: FgAbGroup, wm2: Subspace, wm1: Subspace, f0: Subspace) -> Result<Self> {
        let h = Mhs1::new(lattice, wm2, wm1, f0)?;
        let rep = h.validate();
        if !rep.is_valid() {
            return Err(Error::invalid("MHS1", rep.failures));
        }
        Ok(h)
    }

    pub fn zero() -> Self {
        Mhs1 { lattice: FgAbGroup::trivial(), wm2: Subspace::zero(0), wm1: Subspace::zero(0), f0: Subspace::zero(0) }
    }

    /// `Z(0)`: weight zero, `F^0 = H_C`.
    pub fn tate0(rank: usize) -> Self {
        Mhs1 {
            lattice: FgAbGroup::free(rank),
            wm2: Subspace::zero(rank),
            wm1: Subspace::zero(rank),
            f0: Subspace::full(rank),
        }
    }

    /// `Z(1)` (with `Z(1) = Z`): pure of weight -2, `F^0 = 0`.
    pub fn tate1(rank: usize) -> Self {
        Mhs1 {
            lattice: FgAbGroup::free(rank),
            wm2: Subspace::full(rank),
            wm1: Subspace::full(rank),
            f0: Subspace::zero(rank),
        }
    }

    /// `H^1` of the elliptic curve `C / (Z + Z i)`: `F^0 = span{(-i, 1)}`.
    pub fn elliptic() -> Self {
        Mhs1 {
            lattice: FgAbGroup::free(2),
            wm2: Subspace::zero(2),
            wm1: Subspace::full(2),
            f0: Subspace::span(2, &[vec![-Scalar::i(), Scalar::one()]]).expect("length 2"),
        }
    }

    pub fn rank(&self) -> usize {
        self.wm1.ambient()
    }

    pub fn validate(&self) -> MhsReport {
        let mut failures = Vec::new();
        let r = self.rank();
        if !self.wm1.contains(&self.wm2) {
            failures.push("W-2 not contained in W-1".to_string());
        }
        if !self.wm1.is_real() || !self.wm2.is_real() {
            failures.push("weight filtration not defined over Q".to_string());
        }
        let hodge = HodgeNumbers {
            h00: r - self.wm1.dim(),
            hm10: (self.wm1.dim() - self.wm2.dim().min(self.wm1.dim())) / 2,
            h0m1: (self.wm1.dim() - self.wm2.dim().min(self.wm1.dim())) / 2,
            hm1m1: self.wm2.dim(),
        };
        if !failures.is_empty() {
            return MhsReport { failures, hodge };
        }
        // gr_0 of type (0,0): F^0 surjects onto H / W-1
        let f_plus_w1 = self.f0.sum(&self.wm1).expect("same ambient");
        if !f_plus_w1.is_full() {
            failures.push(format!(
                "gr0: image of F0 has dimension {} < {}",
                f_plus_w1.dim() - self.wm1.dim(),
                r - self.wm1.dim()
            ));
        }
        // gr_-1: F ⊕ conj(F) = gr_-1
        let gr1 = self.wm1.dim() - self.wm2.dim();
        let a = self.f0.intersect(&self.wm1).expect("same ambient").sum(&self.wm2).expect("same ambient");
        let abar = a.conjugate();
        let sum = a.sum(&abar).expect("same ambient");
        let meet = a.intersect(&abar).expect("same ambient");
        if gr1 % 2 == 1 {
            failures.push(format!("gr-1: odd dimension {gr1}"));
        }
        if sum != self.wm1 || meet != self.wm2 {
            failures.push(format!(
                "gr-1: F0 and its conjugate span {} and meet in {} of {} dimensions",
                sum.dim() - self.wm2.dim(),
                meet.dim() - self.wm2.dim(),
                gr1
            ));
        }
        // gr_-2 of type (-1,-1)
        let low = self.f0.intersect(&self.wm2).expect("same ambient");
        if !low.is_zero() {
            failures.push(format!("gr-2: F0 meets W-2 in dimension {}", low.dim()));
        }
        MhsReport { failures, hodge }
    }

    /// Coordinates in `H_Q` of a lattice element given in generator coordinates.
    pub fn rational_image(&self, x: &[BigInt]) -> Result<Vec<Scalar>> {
        let v: Vec<Scalar> = x.iter().cloned().map(Scalar::from_bigint).collect();
        self.generator_map().apply(&v)
    }

    /// The map `Q(i)^generators -> H_C` sending each generator to its class.
    pub fn generator_map(&self) -> LinearMap {
        rational_quotient(&self.lattice).projection
    }

    /// Direct sum; `H_Q` coordinates concatenate because the reduced echelon
    /// form of a block-diagonal relation matrix is block diagonal.
    pub fn direct_sum(&self, other: &Mhs1) -> Mhs1 {
        Mhs1 {
            lattice: self.lattice.direct_sum(&other.lattice),
            wm2: self.wm2.direct_sum(&other.wm2),
            wm1: self.wm1.direct_sum(&other.wm1),
            f0: self.f0.direct_sum(&other.f0),
        }
    }

    /// Isomorphic structure on `Z^rank` whose standard basis is a Z-basis of
    /// the image of the lattice in `H_Q`. Requires a torsion-free lattice.
    pub fn in_lattice_basis(&self) -> Result<Mhs1> {
        if !self.lattice.is_torsion_free() {
            return Err(Error::TorsionPresent);
        }
        let b = lattice_basis(&self.lattice);
        // new coordinates c of x satisfy x = c B, i.e. c = x B^{-1}
        let binv = b.inverse().expect("a basis");
        let change = LinearMap::new(self.rank(), self.rank(), binv.transpose()).expect("square");
        Ok(Mhs1 {
            lattice: FgAbGroup::free(self.rank()),
            wm2: change.image_of(&self.wm2)?,
            wm1: change.image_of(&self.wm1)?,
            f0: change.image_of(&self.f0)?,
        })
    }

    /// `Hom(H, Z(1))` with `Z(1) = Z`: dual lattice, `W'_{-2} = ann W_{-1}`,
    /// `W'_{-1} = ann W_{-2}`, `F'^0 = ann F^0`.
    ///
    /// The result is expressed in the basis dual to a Z-basis of the lattice.
    pub fn dual_twist(&self) -> Result<Mhs1> {
        let h = self.in_lattice_basis()?;
        Ok(Mhs1 {
            lattice: FgAbGroup::free(h.rank()),
            wm2: h.wm1.annihilator(),
            wm1: h.wm2.annihilator(),
            f0: h.f0.annihilator(),
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lattice": self.lattice.to_json(),
            "Wm2": json::subspace_json(&self.wm2),
            "Wm1": json::subspace_json(&self.wm1),
            "F0": json::subspace_json(&self.f0),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let lattice = FgAbGroup::from_json(json::field(v, "lattice")?)?;
        let r = lattice.rank();
        Mhs1::new(
            lattice,
            json::subspace_field(v, "Wm2", r)?,
            json::subspace_field(v, "Wm1", r)?,
            json::subspace_field(v, "F0", r)?,
        )
    }
}

/// A morphism of MHS1 given by its lattice homomorphism.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MhsMorphism {
    pub source: Mhs1,
    pub target: Mhs1,
    pub lattice_hom: GroupHom,
}

impl MhsMorphism {
    pub fn new(source: Mhs1, target: Mhs1, lattice_hom: GroupHom) -> Result<Self> {
        let m = MhsMorphism { source, target, lattice_hom };
        let q = m.rational_map();
        let mut bad = Vec::new();
        for (name, s, t) in [
            ("W-2", &m.source.wm2, &m.target.wm2),
            ("W-1", &m.source.wm1, &m.target.wm1),
            ("F0", &m.source.f0, &m.target.f0),
        ] {
            if !t.contains(&q.image_of(s)?) {
                bad.push(format!("{name} not preserved"));
            }
        }
        if !bad.is_empty() {
            return Err(Error::invalid("MHS morphism", bad));
        }
        Ok(m)
    }

    /// Induced map `H_Q -> H'_Q` (and its complexification) in free coordinates.
    pub fn rational_map(&self) -> LinearMap {
        induced_rational_map(&self.lattice_hom)
    }
}

/// `Q(i)^n / span(relations)` for a lattice on `n` generators.
pub fn rational_quotient(lattice: &FgAbGroup) -> Quotient {
    let rel = Subspace::from_rows(&lattice.relations().to_exact());
    let rel = if lattice.relations().rows() == 0 { Subspace::zero(lattice.generators()) } else { rel };
    quotient(lattice.generators(), &rel).expect("same ambient")
}

/// Rows: a Z-basis of the image of the lattice in `H_Q`.
pub fn lattice_basis(lattice: &FgAbGroup) -> Matrix {
    let q = rational_quotient(lattice);
    let r = q.dim;
    let images = q.projection.images();
    if r == 0 {
        return Matrix::zeros(0, 0);
    }
    let mut den = BigInt::from(1);
    for x in images.iter().flatten() {
        den = num_integer::Integer::lcm(&den, x.re.denom());
    }
    let rows: Vec<Vec<BigInt>> = images
        .iter()
        .map(|v| {
            v.iter().map(|x| (&x.re * num_rational::BigRational::from_integer(den.clone())).to_integer()).collect()
        })
        .collect();
    let a = ZMatrix::from_rows(r, &rows).expect("width r");
    let snf = smith_normal_form(&a);
    let diag = snf.diagonal();
    let basis: Vec<Vec<Scalar>> = (0..r)
        .map(|k| {
            snf.v_inv
                .row(k)
                .iter()
                .map(|x| {
                    Scalar::from_bigint(x * &diag[k])
                        * Scalar::real(num_rational::BigRational::new(1.into(), den.clone()))
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(r, &basis).expect("width r")
}

/// `f ⊗ Q(i)` in the `H_Q` coordinates of source and target.
pub fn induced_rational_map(f: &GroupHom) -> LinearMap {
    let qs = rational_quotient(f.source());
    let qt = rational_quotient(f.target());
    let (ns, nt) = (f.source().generators(), f.target().generators());
    let m = if ns == 0 || nt == 0 {
        LinearMap::zero(ns, nt)
    } else {
        LinearMap::new(ns, nt, f.matrix().to_exact().transpose()).expect("shapes agree")
    };
    qt.projection.compose(&m).and_then(|x| x.compose(&qs.section)).expect("composable")
}
