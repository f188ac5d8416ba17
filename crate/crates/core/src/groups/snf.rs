//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ZMatrix;

/// Result of [`smith_normal_form`]: `u * a * v == d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub u: ZMatrix,
    pub d: ZMatrix,
    pub v: ZMatrix,
    /// Inverse of `v`, tracked alongside it.
    pub v_inv: ZMatrix,
}

impl Snf {
    /// Diagonal entries `d_1 | d_2 | ...`, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|k| self.d.get(k, k).clone()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "diagonal": self.diagonal().iter().map(super::zmatrix::int_to_json).collect::<Vec<_>>(),
            "rank": self.rank(),
            "d": self.d,
            "u": self.u,
            "v": self.v,
        })
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// How the next pivot is picked among the remaining entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotRule {
    /// Smallest nonzero absolute value, ties broken by row-major position.
    SmallestAbs,
    /// Smallest nonzero absolute value, ties broken by the last row-major position.
    SmallestAbsReversed,
}

#[must_use]
pub fn smith_normal_form(a: &ZMatrix) -> Snf {
    smith_normal_form_with(a, PivotRule::SmallestAbs)
}

#[must_use]
pub fn smith_normal_form_with(a: &ZMatrix, rule: PivotRule) -> Snf {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = ZMatrix::identity(m);
    let mut v = ZMatrix::identity(n);
    let mut v_inv = ZMatrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            let Some((pr, pc)) = find_pivot(&d, t, rule) else {
                return finish(u, d, v, v_inv);
            };
            d.swap_rows(t, pr);
            u.swap_rows(t, pr);
            d.swap_cols(t, pc);
            v.swap_cols(t, pc);
            v_inv.swap_rows(t, pc);

            let p = d.get(t, t).clone();
            let mut clean = true;
            for r in t + 1..m {
                let q = d.get(r, t).div_floor(&p);
                if !q.is_zero() {
                    d.add_row(r, t, &-&q);
                    u.add_row(r, t, &-&q);
                }
                clean &= d.get(r, t).is_zero();
            }
            for c in t + 1..n {
                let q = d.get(t, c).div_floor(&p);
                if !q.is_zero() {
                    d.add_col(c, t, &-&q);
                    v.add_col(c, t, &-&q);
                    v_inv.add_row(t, c, &q);
                }
                clean &= d.get(t, c).is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the whole remaining block
            let bad = (t + 1..m).find(|&r| (t + 1..n).any(|c| !d.get(r, c).is_multiple_of(&p)));
            match bad {
                Some(r) => {
                    let one = BigInt::one();
                    d.add_row(t, r, &one);
                    u.add_row(t, r, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(u, d, v, v_inv)
}

fn finish(u: ZMatrix, d: ZMatrix, v: ZMatrix, v_inv: ZMatrix) -> Snf {
    Snf { u, d, v, v_inv }
}

fn find_pivot(d: &ZMatrix, t: usize, rule: PivotRule) -> Option<(usize, usize)> {
    let (m, n) = (d.rows(), d.cols());
    match rule {
        PivotRule::SmallestAbs => {
            let mut best: Option<(usize, usize)> = None;
            for r in t..m {
                for c in t..n {
                    let x = d.get(r, c);
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(br, bc)| x.magnitude() < d.get(br, bc).magnitude()) {
                        best = Some((r, c));
                    }
                }
            }
            best
        }
        PivotRule::SmallestAbsReversed => {
            let mut best: Option<(usize, usize)> = None;
            for r in t..m {
                for c in t..n {
                    let x = d.get(r, c);
                    if !x.is_zero() && best.is_none_or(|(br, bc)| x.magnitude() <= d.get(br, bc).magnitude()) {
                        best = Some((r, c));
                    }
                }
            }
            best
        }
    }
}

/// Determinant by fraction-free Bareiss elimination.
pub fn determinant(a: &ZMatrix) -> BigInt {
    assert_eq!(a.rows(), a.cols(), "determinant of a non-square matrix");
    let n = a.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m.get(k, k).is_zero() {
            match (k + 1..n).find(|&r| !m.get(r, k).is_zero()) {
                Some(r) => {
                    m.swap_rows(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                m.set(i, j, x);
            }
        }
        prev = m.get(k, k).clone();
    }
    sign * m.get(n - 1, n - 1)
}

pub fn is_unimodular(a: &ZMatrix) -> bool {
    a.rows() == a.cols() && determinant(a).abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[&[i64]]) -> ZMatrix {
        ZMatrix::from_i64(rows.first().map_or(0, |r| r.len()), rows)
    }

    fn check(a: &ZMatrix, s: &Snf) {
        assert_eq!(&s.u.mul(a).unwrap().mul(&s.v).unwrap(), &s.d);
        assert!(is_unimodular(&s.u) && is_unimodular(&s.v));
        assert_eq!(s.v.mul(&s.v_inv).unwrap(), ZMatrix::identity(a.cols()));
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[0].is_zero() && w[1].is_zero() || w[1].is_multiple_of(&w[0]));
        }
    }

    #[test]
    fn zero_and_identity() {
        let a = ZMatrix::zeros(2, 3);
        let s = smith_normal_form(&a);
        assert_eq!(s.d, a);
        assert_eq!(s.u, ZMatrix::identity(2));
        assert_eq!(s.v, ZMatrix::identity(3));
        let s = smith_normal_form(&ZMatrix::identity(3));
        assert_eq!(s.d, ZMatrix::identity(3));
    }

    #[test]
    fn diag_two_three() {
        // gcd of entries is 1 and the 2x2 minor is 6
        let a = z(&[&[2, 0], &[0, 3]]);
        let s = smith_normal_form(&a);
        check(&a, &s);
        assert_eq!(s.d, z(&[&[1, 0], &[0, 6]]));
    }

    #[test]
    fn rectangular_and_negative() {
        let a = z(&[&[2, -2]]);
        let s = smith_normal_form(&a);
        check(&a, &s);
        assert_eq!(s.diagonal(), vec![BigInt::from(2)]);
        let a = z(&[&[4, 6, -8], &[6, 9, 12], &[-2, 3, 0]]);
        for rule in [PivotRule::SmallestAbs, PivotRule::SmallestAbsReversed] {
            let s = smith_normal_form_with(&a, rule);
            check(&a, &s);
        }
    }

    #[test]
    fn bareiss_determinant() {
        assert_eq!(determinant(&z(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(&z(&[&[2, 1, 3], &[0, 4, 1], &[5, 2, 0]])), BigInt::from(-59));
    }
}
