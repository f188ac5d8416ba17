//! Seeded random motives.
//!
//! `Lie G` is built in adapted coordinates `A ⊕ T ⊕ V` and then moved by a
//! random invertible change of coordinates. The abelian lattice is
//! `[I τ]` with `Im τ` invertible, lifted to `Lie G` with random torus and
//! vector components (the extension data).

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{FormalDatum, GroupDatum, MotiveDatum};
use crate::exact::{LinearMap, Matrix, Scalar, Subspace};
use crate::groups::FgAbGroup;

/// Bounds for [`random_motive`].
#[derive(Clone, Debug)]
pub struct RandomParams {
    pub max_g: usize,
    pub max_t: usize,
    pub max_n: usize,
    pub max_r: usize,
    pub max_f0: usize,
    /// Largest torsion order; `0` or `1` disables torsion.
    pub max_torsion: u32,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams { max_g: 2, max_t: 2, max_n: 2, max_r: 2, max_f0: 2, max_torsion: 6 }
    }
}

impl RandomParams {
    pub fn free() -> Self {
        RandomParams { max_torsion: 0, ..Self::default() }
    }
}

fn small<R: Rng>(rng: &mut R, bound: i64) -> Scalar {
    Scalar::gauss(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))
}

fn small_frac<R: Rng>(rng: &mut R) -> Scalar {
    let d = rng.gen_range(1..=3);
    small(rng, 3) * Scalar::frac(1, d)
}

fn random_vec<R: Rng>(rng: &mut R, d: usize) -> Vec<Scalar> {
    (0..d).map(|_| small_frac(rng)).collect()
}

/// A random invertible matrix with small Gaussian integer entries.
fn random_invertible<R: Rng>(rng: &mut R, d: usize) -> Matrix {
    loop {
        let rows: Vec<Vec<Scalar>> = (0..d).map(|_| (0..d).map(|_| small(rng, 1)).collect()).collect();
        let m = Matrix::from_rows(d, &rows).expect("square");
        if m.rank() == d {
            return m;
        }
    }
}

/// `τ` with `Im τ` invertible.
fn random_tau<R: Rng>(rng: &mut R, g: usize) -> Matrix {
    loop {
        let rows: Vec<Vec<Scalar>> = (0..g).map(|_| (0..g).map(|_| small_frac(rng)).collect()).collect();
        let tau = Matrix::from_rows(g, &rows).expect("square");
        let im: Vec<Vec<Scalar>> =
            rows.iter().map(|r| r.iter().map(|x| Scalar::real(x.im.clone())).collect()).collect();
        if Matrix::from_rows(g, &im).expect("square").rank() == g {
            return tau;
        }
    }
}

pub fn random_motive<R: Rng>(rng: &mut R, p: &RandomParams) -> MotiveDatum {
    let g = rng.gen_range(0..=p.max_g);
    let t = rng.gen_range(0..=p.max_t);
    let n = rng.gen_range(0..=p.max_n);
    let r = rng.gen_range(0..=p.max_r);
    let f0 = rng.gen_range(0..=p.max_f0);
    let d = g + t + n;

    // adapted coordinates: abelian [0, g), torus [g, g + t), vector [g + t, d)
    let mut lattice = Vec::with_capacity(2 * g + t);
    let tau = random_tau(rng, g);
    for k in 0..2 * g {
        let mut v = vec![Scalar::zero(); d];
        for (j, x) in v.iter_mut().enumerate().take(g) {
            *x = if k < g { Scalar::from_int(i64::from(j == k)) } else { tau.get(j, k - g).clone() };
        }
        for x in v.iter_mut().skip(g) {
            if rng.gen_bool(0.5) {
                *x = small_frac(rng);
            }
        }
        lattice.push(v);
    }
    let mut torus = Vec::with_capacity(t);
    for j in 0..t {
        let mut v = vec![Scalar::zero(); d];
        v[g + j] = Scalar::one();
        torus.push(v.clone());
        lattice.push(v);
    }
    let additive_vecs: Vec<Vec<Scalar>> = (0..n)
        .map(|j| {
            let mut v = vec![Scalar::zero(); d];
            v[g + t + j] = Scalar::one();
            v
        })
        .collect();

    let mut orders = Vec::new();
    if p.max_torsion >= 2 && rng.gen_bool(0.4) {
        orders.push(rng.gen_range(2..=p.max_torsion));
    }
    let mut lifts: Vec<Vec<Scalar>> = (0..r).map(|_| random_vec(rng, d)).collect();
    for &k in &orders {
        let mut v = vec![Scalar::zero(); d];
        if rng.gen_bool(0.75) && !lattice.is_empty() {
            let inv = Scalar::frac(1, i64::from(k));
            for l in &lattice {
                let c = Scalar::from_int(rng.gen_range(-2..=2)) * inv.clone();
                for (a, b) in v.iter_mut().zip(l) {
                    *a += &(c.clone() * b.clone());
                }
            }
        }
        lifts.push(v);
    }
    let mut rel_rows = Vec::new();
    for (j, &k) in orders.iter().enumerate() {
        let mut row = vec![BigInt::from(0); r + orders.len()];
        row[r + j] = BigInt::from(k);
        rel_rows.push(row);
    }
    let rels = if rel_rows.is_empty() {
        crate::groups::ZMatrix::zeros(0, r + orders.len())
    } else {
        crate::groups::ZMatrix::from_rows(r + orders.len(), &rel_rows).expect("widths agree")
    };
    let etale = FgAbGroup::new(r + orders.len(), rels).expect("relations fit");

    let ua_images: Vec<Vec<Scalar>> = if rng.gen_bool(0.5) {
        // special: u_a lands in V(G)
        (0..f0)
            .map(|_| {
                let mut v = vec![Scalar::zero(); d];
                for x in v.iter_mut().skip(g + t) {
                    *x = small_frac(rng);
                }
                v
            })
            .collect()
    } else {
        (0..f0).map(|_| random_vec(rng, d)).collect()
    };

    let change = LinearMap::new(d, d, random_invertible(rng, d)).expect("square");
    let mv = |vs: &[Vec<Scalar>]| -> Vec<Vec<Scalar>> { vs.iter().map(|v| change.apply(v).expect("dim d")).collect() };
    let additive = Subspace::span(d, &mv(&additive_vecs)).expect("dim d");
    let ua = LinearMap::from_images(f0, d, &mv(&ua_images)).expect("dim d");
    MotiveDatum::new(
        FormalDatum { etale, f0dim: f0 },
        GroupDatum { lie_dim: d, lattice: mv(&lattice), torus: mv(&torus), additive },
        mv(&lifts),
        ua,
    )
    .checked()
    .expect("random motives are valid by construction")
}

/// `count` motives from a ChaCha8 stream seeded with `seed`.
pub fn motive_suite(seed: u64, count: usize, p: &RandomParams) -> Vec<MotiveDatum> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_motive(&mut rng, p)).collect()
}
