//! Lattices in `Q(i)^n`.
//!
//! `Q(i)^n` is viewed as `Q^(2n)` (real parts then imaginary parts). For
//! rational data, Q-linear independence there is the same as R-linear
//! independence, which makes "is a lattice" decidable.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar, Subspace};
use crate::groups::{smith_normal_form, ZMatrix};

/// Real coordinates `(re_1..re_n, im_1..im_n)` of a vector.
pub fn realify(v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|x| Scalar::real(x.re.clone())).chain(v.iter().map(|x| Scalar::real(x.im.clone()))).collect()
}

/// `2n x m` rational matrix whose columns are the realified generators.
fn real_matrix(ambient: usize, gens: &[Vec<Scalar>]) -> Result<Matrix> {
    let cols: Vec<Vec<Scalar>> = gens.iter().map(|g| realify(g)).collect();
    if gens.iter().any(|g| g.len() != ambient) {
        return Err(Error::dim("lattice generator of the wrong length"));
    }
    if gens.is_empty() {
        return Ok(Matrix::zeros(2 * ambient, 0));
    }
    Ok(Matrix::from_rows(2 * ambient, &cols)?.transpose())
}

/// Rank of the Q-span of `gens` inside `Q^(2n)`.
pub fn rational_rank(ambient: usize, gens: &[Vec<Scalar>]) -> Result<usize> {
    Ok(real_matrix(ambient, gens)?.rank())
}

pub fn is_q_independent(ambient: usize, gens: &[Vec<Scalar>]) -> Result<bool> {
    Ok(rational_rank(ambient, gens)? == gens.len())
}

/// Integer coordinates of `v` in the Z-span of `gens`, or `None` when `v` is not in it.
pub fn lattice_membership(ambient: usize, gens: &[Vec<Scalar>], v: &[Scalar]) -> Result<Option<Vec<BigInt>>> {
    let m = real_matrix(ambient, gens)?;
    if m.rank() != gens.len() {
        return Err(Error::DependentGenerators);
    }
    if v.len() != ambient {
        return Err(Error::dim("vector of the wrong length"));
    }
    let Some(x) = m.solve(&realify(v))? else {
        return Ok(None);
    };
    Ok(x.iter().map(Scalar::as_integer).collect())
}

/// Rational coordinates of `v` in the Q-span of independent `gens`.
pub fn rational_coords(ambient: usize, gens: &[Vec<Scalar>], v: &[Scalar]) -> Result<Option<Vec<BigRational>>> {
    let m = real_matrix(ambient, gens)?;
    if m.rank() != gens.len() {
        return Err(Error::DependentGenerators);
    }
    Ok(m.solve(&realify(v))?.map(|x| x.into_iter().map(|s| s.re).collect()))
}

/// C-span (here Q(i)-span) of the generators.
pub fn complex_span(ambient: usize, gens: &[Vec<Scalar>]) -> Result<Subspace> {
    Subspace::span(ambient, gens)
}

/// Inverse of [`realify`].
pub fn unrealify(v: &[Scalar]) -> Vec<Scalar> {
    let n = v.len() / 2;
    (0..n).map(|k| Scalar::new(v[k].re.clone(), v[n + k].re.clone())).collect()
}

/// Integer matrix `D * rows` for the least common denominator `D`.
pub(crate) fn clear_denominators(rows: &[Vec<BigRational>]) -> (ZMatrix, BigInt) {
    let cols = rows.first().map_or(0, Vec::len);
    let mut den = BigInt::from(1);
    for x in rows.iter().flatten() {
        den = num_integer::Integer::lcm(&den, x.denom());
    }
    let d = BigRational::from_integer(den.clone());
    let ints: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|x| (x * &d).to_integer()).collect()).collect();
    (ZMatrix::from_rows(cols, &ints).expect("rectangular"), den)
}

/// Rows of `v_inv` scaled by the invariant factors: a basis of the row span of `a`.
fn row_span_basis(a: &ZMatrix, saturate: bool) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    let diag = snf.diagonal();
    (0..snf.rank())
        .map(|k| {
            let scale = if saturate { BigInt::from(1) } else { diag[k].clone() };
            snf.v_inv.row(k).iter().map(|x| x * &scale).collect()
        })
        .collect()
}

/// A Z-basis of the subgroup of `Q(i)^n` generated by `gens`.
pub fn zspan_basis(ambient: usize, gens: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    if gens.iter().any(|g| g.len() != ambient) {
        return Err(Error::dim("lattice generator of the wrong length"));
    }
    if gens.is_empty() || ambient == 0 {
        return Ok(vec![]);
    }
    let real: Vec<Vec<BigRational>> = gens.iter().map(|g| realify(g).into_iter().map(|x| x.re).collect()).collect();
    let (a, den) = clear_denominators(&real);
    let inv = Scalar::real(BigRational::new(1.into(), den));
    Ok(row_span_basis(&a, false)
        .into_iter()
        .map(|r| unrealify(&r.into_iter().map(|x| Scalar::from_bigint(x) * inv.clone()).collect::<Vec<_>>()))
        .collect())
}

/// A basis of `Q·sub ∩ Z·basis`. `basis` must be Q-independent and contain `sub`
/// in its Q-span.
pub fn saturation(ambient: usize, basis: &[Vec<Scalar>], sub: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    let mut coords = Vec::with_capacity(sub.len());
    for v in sub {
        coords.push(rational_coords(ambient, basis, v)?.ok_or(Error::NotContained)?);
    }
    if coords.is_empty() || basis.is_empty() {
        return Ok(vec![]);
    }
    let (a, _) = clear_denominators(&coords);
    Ok(row_span_basis(&a, true)
        .into_iter()
        .map(|c| {
            let mut v = vec![Scalar::zero(); ambient];
            for (ck, b) in c.iter().zip(basis) {
                let ck = Scalar::from_bigint(ck.clone());
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi += &(ck.clone() * bi.clone());
                }
            }
            v
        })
        .collect())
}

/// Whether `sub` is a Z-basis of a saturated sublattice of the lattice spanned by `basis`.
pub fn is_saturated_in(ambient: usize, basis: &[Vec<Scalar>], sub: &[Vec<Scalar>]) -> Result<bool> {
    if !is_q_independent(ambient, sub)? {
        return Ok(false);
    }
    for v in sub {
        if lattice_membership(ambient, basis, v)?.is_none() {
            return Ok(false);
        }
    }
    for v in saturation(ambient, basis, sub)? {
        if lattice_membership(ambient, sub, &v)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}
