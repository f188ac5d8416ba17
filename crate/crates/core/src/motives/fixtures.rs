//! Small named motives used in tests, the CLI and the acceptance suite.

use num_bigint::BigInt;

use super::{FormalDatum, GroupDatum, MotiveDatum, MotiveMorphism};
use crate::exact::{LinearMap, Matrix, Scalar, Subspace};
use crate::groups::{FgAbGroup, GroupHom};

fn s(a: i64) -> Scalar {
    Scalar::from_int(a)
}

fn build(etale: FgAbGroup, f0dim: usize, group: GroupDatum, lifts: Vec<Vec<Scalar>>, ua: LinearMap) -> MotiveDatum {
    MotiveDatum::new(FormalDatum { etale, f0dim }, group, lifts, ua).checked().expect("fixture is valid")
}

fn group(lie_dim: usize, lattice: Vec<Vec<Scalar>>, torus: Vec<Vec<Scalar>>, additive: Subspace) -> GroupDatum {
    GroupDatum { lie_dim, lattice, torus, additive }
}

fn elliptic_group() -> GroupDatum {
    group(1, vec![vec![s(1)], vec![Scalar::i()]], vec![], Subspace::zero(1))
}

fn gm_group() -> GroupDatum {
    group(1, vec![vec![s(1)]], vec![vec![s(1)]], Subspace::zero(1))
}

/// `[0 -> E]`, `E = C/(Z + Z i)`.
pub fn elliptic() -> MotiveDatum {
    build(FgAbGroup::trivial(), 0, elliptic_group(), vec![], LinearMap::zero(0, 1))
}

/// `[Z -> G_m]`, `1 ↦ exp(λ)`.
pub fn kummer(lambda: Scalar) -> MotiveDatum {
    build(FgAbGroup::free(1), 0, gm_group(), vec![vec![lambda]], LinearMap::zero(0, 1))
}

/// `[0 -> G_m]`
pub fn gm() -> MotiveDatum {
    build(FgAbGroup::trivial(), 0, gm_group(), vec![], LinearMap::zero(0, 1))
}

/// `[0 -> G_a]`
pub fn ga() -> MotiveDatum {
    build(FgAbGroup::trivial(), 0, group(1, vec![], vec![], Subspace::full(1)), vec![], LinearMap::zero(0, 1))
}

/// `Ĝ_a[1] = [Ĝ_a -> 0]`
pub fn ga_hat_shift() -> MotiveDatum {
    build(FgAbGroup::trivial(), 1, GroupDatum::zero(), vec![], LinearMap::zero(1, 0))
}

/// `[Ĝ_a -> G_a]` with `u_a = id`.
pub fn gamma() -> MotiveDatum {
    build(FgAbGroup::trivial(), 1, group(1, vec![], vec![], Subspace::full(1)), vec![], LinearMap::identity(1))
}

/// `[Z/2 -> E]` with the given lift of the generator (`2·lift` must lie in `Z + Z i`).
pub fn elliptic_two_torsion(lift: Scalar) -> MotiveDatum {
    let etale = FgAbGroup::cyclic_sum(&[BigInt::from(2)]);
    build(etale, 0, elliptic_group(), vec![vec![lift]], LinearMap::zero(0, 1))
}

/// `[Z/2 -> E]` hitting the 2-torsion point `(1 + i)/2`.
pub fn elliptic_half_period() -> MotiveDatum {
    elliptic_two_torsion(Scalar::gauss(1, 1) * Scalar::frac(1, 2))
}

/// `[Z ⊕ Ĝ_a -> E]`, `1 ↦ 1/3`, `u_a` the identity of `Lie E`.
pub fn elliptic_mixed() -> MotiveDatum {
    build(FgAbGroup::free(1), 1, elliptic_group(), vec![vec![Scalar::frac(1, 3)]], LinearMap::identity(1))
}

/// `0 -> [0 -> B'] -> [0 -> G'] -> [0 -> G_m] -> 0` where `G'` is the
/// extension of `E' = C/(Z + Z i)` by `G_m` given by the 2-torsion point
/// `i/2`, `g(z, w) = 2z` and `B' = C/(Z + 2i Z)` is the kernel of `g`.
pub fn seq_counter() -> [MotiveMorphism; 2] {
    let half = Scalar::frac(1, 2);
    let b = build(
        FgAbGroup::trivial(),
        0,
        group(1, vec![vec![s(1)], vec![Scalar::gauss(0, 2)]], vec![], Subspace::zero(1)),
        vec![],
        LinearMap::zero(0, 1),
    );
    let g = build(
        FgAbGroup::trivial(),
        0,
        group(
            2,
            vec![vec![s(1), s(0)], vec![s(0), s(1)], vec![half, Scalar::i()]],
            vec![vec![s(1), s(0)]],
            Subspace::zero(2),
        ),
        vec![],
        LinearMap::zero(0, 2),
    );
    let t = gm();
    let triv = GroupHom::zero(&FgAbGroup::trivial(), &FgAbGroup::trivial());
    let inc = LinearMap::new(1, 2, Matrix::from_i64(&[&[0], &[1]])).expect("2x1");
    let proj = LinearMap::new(2, 1, Matrix::from_i64(&[&[2, 0]])).expect("1x2");
    let f = MotiveMorphism::new(b, g.clone(), triv.clone(), LinearMap::zero(0, 0), inc).expect("valid");
    let h = MotiveMorphism::new(g, t, triv, LinearMap::zero(0, 0), proj).expect("valid");
    [f, h]
}

/// All named fixtures with their names.
pub fn all() -> Vec<(&'static str, MotiveDatum)> {
    let [f, h] = seq_counter();
    vec![
        ("elliptic", elliptic()),
        ("kummer", kummer(Scalar::gauss(1, 2) * Scalar::frac(1, 3))),
        ("gm", gm()),
        ("ga", ga()),
        ("ga_hat_shift", ga_hat_shift()),
        ("gamma", gamma()),
        ("elliptic_half_period", elliptic_half_period()),
        ("elliptic_torsion_zero", elliptic_two_torsion(Scalar::zero())),
        ("elliptic_mixed", elliptic_mixed()),
        ("counter_b", f.source),
        ("counter_g", h.source),
    ]
}

/// Looks a fixture up by name.
pub fn by_name(name: &str) -> Option<MotiveDatum> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, m)| m)
}
