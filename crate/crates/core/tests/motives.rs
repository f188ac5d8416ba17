use onemotive::duality::{cartier_dual, double_dual_motive_iso, sharp_pairing};
use onemotive::motives::fixtures::{
    self, elliptic, elliptic_half_period, elliptic_two_torsion, ga, ga_hat_shift, gamma, gm, kummer,
};
use onemotive::motives::random::{motive_suite, RandomParams};
use onemotive::motives::*;
use onemotive::{Error, FgAbGroup, LinearMap, Scalar, Subspace};

fn lam() -> Scalar {
    Scalar::gauss(1, 2) * Scalar::frac(1, 3)
}

#[test]
fn validate_examples() {
    let r = elliptic().ranks();
    assert_eq!((r.g, r.t, r.n), (1, 0, 0));
    let k = kummer(lam()).ranks();
    assert_eq!((k.t, k.r), (1, 1));
    let bad = MotiveDatum::new(
        FormalDatum { etale: FgAbGroup::trivial(), f0dim: 0 },
        GroupDatum {
            lie_dim: 1,
            lattice: vec![vec![Scalar::from_int(1)], vec![Scalar::from_int(2)]],
            torus: vec![],
            additive: Subspace::zero(1),
        },
        vec![],
        LinearMap::zero(0, 1),
    );
    assert!(!bad.is_valid());
}

#[test]
fn torsion_parts_examples() {
    let tp = torsion_parts(&elliptic()).unwrap();
    assert!(tp.tor.formal.etale.is_trivial());
    assert_eq!(tp.tf, elliptic());

    let m = elliptic_half_period();
    let tp = torsion_parts(&m).unwrap();
    assert!(tp.tor.formal.etale.is_trivial());
    assert_eq!(tp.tf, m);
    assert_eq!(tp.fr.group.lattice.len(), 2);
    let half = vec![Scalar::gauss(1, 1) * Scalar::frac(1, 2)];
    assert!(tp.fr.group.lattice_coords(&half).unwrap().is_some());
    assert!(is_quasi_iso(&tp.tf_to_fr).unwrap());

    let m = elliptic_two_torsion(Scalar::zero());
    let tp = torsion_parts(&m).unwrap();
    assert_eq!(tp.tor.formal.etale.iso_type().torsion, vec![2.into()]);
    assert_eq!(tp.tf.group, elliptic().group);
    assert!(tp.tf.formal.etale.is_trivial());
    let rep = check_strongly_exact(&[tp.inclusion.clone(), tp.to_tf.clone()]).unwrap();
    assert!(rep.strongly_exact());
}

#[test]
fn m_times_m_etale_vec_m() {
    assert_eq!(m_times(&elliptic()).unwrap().0, elliptic());
    let (g, _) = m_times(&gamma()).unwrap();
    assert_eq!(g, ga_hat_shift());
    assert_eq!(m_times(&ga()).unwrap().0, MotiveDatum::zero());
    assert_eq!(m_etale(&gamma()).unwrap(), MotiveDatum::zero());
    let em = m_etale(&fixtures::elliptic_mixed()).unwrap();
    assert_eq!(em.formal.f0dim, 0);
    assert_eq!(em.etale_generators(), 1);
    let v = vec_m(&elliptic()).unwrap();
    assert_eq!((v.formal.f0dim, v.ua.clone()), (1, LinearMap::identity(1)));
    assert_eq!(vec_m(&ga_hat_shift()).unwrap(), ga_hat_shift());
    assert_eq!(vec_m(&kummer(lam())).unwrap().formal.f0dim, 1);
}

#[test]
fn hom_to_ga_and_v_map() {
    assert_eq!(hom_to_ga(&ga()).dim(), 1);
    assert_eq!(hom_to_ga(&gm()).dim(), 0);
    assert_eq!(hom_to_ga(&gamma()).dim(), 0);
    assert!(v_map(&gamma()).unwrap().is_iso());
    let v = v_map(&ga()).unwrap();
    assert_eq!((v.dom(), v.cod(), v.is_surjective()), (0, 1, false));
    assert!(v_map(&elliptic()).unwrap().is_surjective());
}

#[test]
fn universal_extension_examples() {
    let u = universal_extension(&gm()).unwrap();
    assert!(is_quasi_iso(&u.to_motive).unwrap());
    assert_eq!(u.motive.ranks().sharp_dim(), 1);
    let u = universal_extension(&ga_hat_shift()).unwrap();
    let r = u.motive.ranks();
    assert_eq!((u.motive.lie_dim(), r.n, r.f0), (1, 1, 1));
    assert!(u.motive.ua.is_iso());
    assert!(u.idempotent && u.kernel_sequence_ok);
    match universal_extension(&ga()) {
        Err(Error::NoUniversalExtension { witness }) => assert_eq!(witness.len(), 1),
        other => panic!("expected failure, got {other:?}"),
    }
    let u = universal_extension(&elliptic()).unwrap();
    assert_eq!(u.motive.lie_dim(), 2);
    assert!(u.idempotent);
}

#[test]
fn sharp_extension_examples() {
    let s = sharp_extension(&gamma()).unwrap();
    assert_eq!(s.motive.lie_dim(), 2);
    assert_eq!(s.motive.group.additive.dim(), 2);
    let u = s.motive.ua.apply(&[Scalar::one()]).unwrap();
    assert!(u.iter().all(|x| !x.is_zero()));
    assert!(s.matches_envelope().unwrap());
    assert_eq!(sharp_extension(&elliptic()).unwrap().motive.lie_dim(), 2);
    assert_eq!(sharp_extension(&ga()).unwrap().motive.lie_dim(), 1);
    for (name, m) in fixtures::all() {
        let s = sharp_extension(&m).unwrap();
        let (_, times) = m_times(&m).unwrap();
        assert!(s.matches_envelope().unwrap(), "{name}");
        assert!(s.square_commutes(&times).unwrap(), "{name}");
        assert!(s.extension_exact(), "{name}");
        assert_eq!(s.ext_dual.dim(), m.ranks().ext_times_dim(), "{name}");
    }
}

#[test]
fn t_oint_examples() {
    let x = t_oint(&elliptic()).unwrap();
    assert_eq!(x.rank(), 2);
    assert_eq!(x.het.f0, Subspace::span(2, &[vec![Scalar::gauss(0, -1), Scalar::one()]]).unwrap());
    let x = t_oint(&gamma()).unwrap();
    assert_eq!((x.h0dim, x.rank(), x.vdim, x.v0.dim()), (1, 0, 1, 1));
    assert_eq!(x.v0map, LinearMap::identity(1));
    let x = t_oint(&kummer(lam())).unwrap();
    assert_eq!(x.rank(), 2);
    assert_eq!(x.vz, vec![vec![lam()], vec![Scalar::one()]]);
    assert_eq!(x.het.wm2, x.het.wm1);
    assert_eq!(x.het.wm1, Subspace::span(2, &[vec![Scalar::zero(), Scalar::one()]]).unwrap());
}

#[test]
fn motive_from_fhs_roundtrips() {
    for (name, m) in fixtures::all() {
        let x = t_oint(&m).unwrap();
        let back = motive_from_fhs(&x).unwrap();
        assert!(realized_to_fhs(&x).unwrap().is_isomorphism(), "{name}");
        assert!(fhs_to_realized(&x).unwrap().is_isomorphism(), "{name}");
        assert!(is_quasi_iso(&canonical_to_realized(&m).unwrap()).unwrap(), "{name}");
        let (a, b) = (back.ranks(), m.ranks());
        assert_eq!((a.g, a.t, a.n, a.r, a.f0), (b.g, b.t, b.n, b.r, b.f0), "{name}");
    }
    let x = onemotive::formal_hodge::Fhs1::elliptic();
    assert_eq!(motive_from_fhs(&x).unwrap().ranks(), elliptic().ranks());
}

#[test]
fn t_sharp_dims() {
    assert_eq!(t_sharp(&elliptic()).unwrap().space.dim, 2);
    assert_eq!(t_sharp(&gamma()).unwrap().space.dim, 2);
    assert_eq!(t_sharp(&kummer(lam())).unwrap().space.dim, 2);
}

#[test]
fn basic_sequences_are_strongly_exact() {
    for (name, m) in fixtures::all() {
        let mut seqs = vec![vbasicext(&m).unwrap(), fbasicext(&m).unwrap()];
        if m.is_special() {
            seqs.push(fspecext(&m).unwrap());
        } else {
            assert!(matches!(fspecext(&m), Err(Error::NotSpecial)));
        }
        for seq in seqs {
            let rep = check_strongly_exact(&seq).unwrap();
            assert!(rep.strongly_exact(), "{name}: {rep:?}");
        }
    }
}

#[test]
fn counterexample_flags() {
    let rep = check_strongly_exact(&fixtures::seq_counter()).unwrap();
    assert!(rep.strongly_exact());
    assert!(!rep.eta_a);
    assert!(!rep.eta_l);
    assert_eq!(rep.dual, Some(false));
}

#[test]
fn quasi_iso_examples() {
    assert!(is_quasi_iso(&MotiveMorphism::identity(&elliptic())).unwrap());
    let (_, p) = m_times(&ga()).unwrap();
    assert!(!is_quasi_iso(&p).unwrap());
}

#[test]
fn special_matches_classification() {
    for (name, m) in fixtures::all() {
        assert_eq!(m.is_special(), t_oint(&m).unwrap().classify().special, "{name}");
    }
}

#[test]
fn cartier_dual_examples() {
    let d = cartier_dual(&ga()).unwrap();
    assert_eq!((d.lie_dim(), d.formal.f0dim), (0, 1));
    let d = cartier_dual(&elliptic()).unwrap();
    assert_eq!(d.ranks(), elliptic().ranks());
    let d = cartier_dual(&kummer(lam())).unwrap();
    assert_eq!((d.ranks().t, d.ranks().r), (1, 1));
    let d = cartier_dual(&gm()).unwrap();
    assert_eq!((d.ranks().t, d.ranks().r), (0, 1));
    assert!(matches!(cartier_dual(&elliptic_half_period()), Err(Error::TorsionPresent)));
}

#[test]
fn pairing_on_ga_pair() {
    let w = sharp_pairing(&ga_hat_shift()).unwrap();
    assert_eq!(w.phi, onemotive::Matrix::identity(1));
    assert!(w.holds());
    let w = sharp_pairing(&ga()).unwrap();
    assert_eq!(w.phi, onemotive::Matrix::identity(1).scale(&Scalar::from_int(-1)));
    assert!(w.holds());
}

#[test]
fn pairing_and_double_dual_on_fixtures() {
    for (name, m) in fixtures::all() {
        if !m.formal.etale.is_torsion_free() {
            continue;
        }
        let w = sharp_pairing(&m).unwrap();
        assert!(w.holds(), "{name}: {:?}", (w.full_rank, w.block_b, w.block_c, w.block_d));
        assert!(double_dual_motive_iso(&m).unwrap().is_isomorphism(), "{name}");
    }
}

#[test]
fn random_suite_is_valid_and_compares() {
    for (k, m) in motive_suite(7, 40, &RandomParams::default()).iter().enumerate() {
        let s = sharp_extension(m).unwrap();
        assert!(s.matches_envelope().unwrap(), "motive {k}");
        assert_eq!(s.ambient.dim(), m.ranks().sharp_dim(), "motive {k}");
        let h = hom_to_ga(m).is_zero();
        assert_eq!(h, v_map(m).unwrap().is_surjective(), "motive {k}");
        assert_eq!(h, universal_extension(m).is_ok(), "motive {k}");
    }
}

#[test]
fn random_free_pairing() {
    for (k, m) in motive_suite(11, 25, &RandomParams::free()).iter().enumerate() {
        let w = sharp_pairing(m).unwrap();
        assert!(w.holds(), "motive {k}: {:?}", (w.full_rank, w.block_b, w.block_c, w.block_d));
        assert!(double_dual_motive_iso(m).unwrap().is_isomorphism(), "motive {k}");
    }
}
