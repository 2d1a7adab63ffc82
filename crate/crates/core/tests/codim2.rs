use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use zmc_core::catalog::{self, DilationSpec, FamilyParam};
use zmc_core::codim2::{from_jet, immerse_f, immerse_g, immerse_h, Codim2Class, Immersion, DEFAULT_CLASS_TOL};
use zmc_core::decomp::psi_summand;
use zmc_core::residual::{causal_quantity, residual_bie, residual_mse, residual_zmc, GraphKind};
use zmc_core::sample::{rng, sample_box, SampleBox};
use zmc_core::{Error, HeightField, Jet2};

const TOL: f64 = DEFAULT_CLASS_TOL;

fn config(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(0xc0d12), failure_persistence: None, ..Config::default() }
}

fn jet() -> impl Strategy<Value = Jet2<f64>> {
    (prop::array::uniform2(-3.0f64..3.0), prop::array::uniform3(-5.0f64..5.0))
        .prop_map(|(d1, d2)| Jet2::new(0.0, d1, d2))
}

fn points(hf: &HeightField, b: SampleBox, n: usize, seed: u64, extra: impl Fn(&Jet2<f64>) -> bool) -> Vec<[f64; 2]> {
    sample_box(&mut rng(seed), &b, n, |u, v| {
        hf.contains_with_margin(u, v, 0.05) && hf.eval(u, v).is_ok_and(|j| extra(&j))
    })
    .unwrap()
}

proptest! {
    #![proptest_config(config(500))]

    #[test]
    fn structural_sign_laws(j in jet()) {
        let f = from_jet(Immersion::F, &j, [0.0, 0.0]).unwrap();
        prop_assert_eq!(f.k2, -f.k1);
        prop_assert!(f.classify(TOL).is_weakly_untrapped());
        match from_jet(Immersion::G, &j, [0.0, 0.0]) {
            Ok(g) => {
                prop_assert_eq!(g.k2, g.k1);
                prop_assert!(g.classify(TOL).is_star());
            }
            Err(e) => prop_assert!(matches!(e, Error::NotSpacelike(..))),
        }
        match from_jet(Immersion::H, &j, [0.0, 0.0]) {
            Ok(h) => {
                prop_assert_eq!(h.k2, -h.k1);
                prop_assert!(h.classify(TOL).is_weakly_untrapped());
            }
            Err(e) => prop_assert!(matches!(e, Error::NotSpacelike(..))),
        }
    }

    #[test]
    fn normals_are_lightlike(j in jet()) {
        for im in [Immersion::F, Immersion::G, Immersion::H] {
            if let Ok(d) = from_jet(im, &j, [0.0, 0.0]) {
                prop_assert!(d.lightlike_residual() <= 1e-12, "{im:?} {d:?}");
                prop_assert!(d.metric_positive_definite());
                let fp = d.future_pointing();
                match im {
                    Immersion::H => prop_assert!(fp[0] != fp[1]),
                    _ => prop_assert_eq!(fp, [true, true]),
                }
            }
        }
    }

    #[test]
    fn class_survives_positive_rescaling(j in jet()) {
        for im in [Immersion::F, Immersion::G, Immersion::H] {
            if let Ok(d) = from_jet(im, &j, [0.0, 0.0]) {
                // keep clear of the tolerance band so 1/λ cannot cross it
                prop_assume!(d.k1.abs() > 1e-6);
                let class = d.classify(TOL);
                for l in [0.5, 2.0, 10.0] {
                    prop_assert_eq!(d.rescaled(l, l).classify(TOL), class);
                }
            }
        }
    }

    #[test]
    fn f_curvature_is_the_minimal_operator(j in jet()) {
        let f = from_jet(Immersion::F, &j, [0.0, 0.0]).unwrap();
        prop_assert!((f.k1 - residual_mse(&j)).abs() <= 1e-13 * (1.0 + f.k1.abs()));
    }
}

#[test]
fn solutions_are_maximal() {
    let scherk = catalog::scherk();
    for [x, y] in points(&scherk, SampleBox::new([-1.4, 1.4], [-1.4, 1.4]), 50, 1, |_| true) {
        let d = immerse_f(&scherk, x, y).unwrap();
        assert!(d.k1.abs() <= 1e-9);
        assert_eq!(d.classify(TOL), Codim2Class::Maximal);
    }
    let p = FamilyParam::new(0.7).unwrap();
    let psi = catalog::psi(p);
    // ψ is timelike around the origin; its spacelike locus lies further out
    let spacelike = |j: &Jet2<f64>| causal_quantity(j, GraphKind::Xy) < -0.01;
    for [x, y] in points(&psi, SampleBox::new([-4.0, 4.0], [-4.0, 4.0]), 50, 2, spacelike) {
        let d = immerse_g(&psi, x, y).unwrap();
        assert!((d.k1 - residual_zmc(&psi.eval(x, y).unwrap())).abs() <= 1e-13);
        assert_eq!(d.classify(TOL), Codim2Class::Maximal, "ψ at ({x}, {y})");
    }
}

#[test]
fn chi_is_maximal_through_h_on_its_spacelike_locus() {
    let p = FamilyParam::new(0.8).unwrap();
    let chi = catalog::chi(p);
    let h = chi.swapped();
    let b = SampleBox::new([-3.0, 3.0], [-3.0, 3.0]);
    let spacelike = |j: &Jet2<f64>| causal_quantity(j, GraphKind::Yz) < -1e-3;
    let pts = points(&chi, b, 100, 3, spacelike);
    for [y, z] in pts {
        let j = chi.eval(y, z).unwrap();
        let d = immerse_h(&h, z, y).unwrap();
        let scale = 1.0 + j.fx().powi(2) + j.fy().powi(2);
        assert!(residual_bie(&j).abs() <= 1e-9 * scale);
        assert!(d.k1.abs() <= 1e-9 * scale, "({y}, {z}) k1 {}", d.k1);
    }
}

#[test]
fn dilated_helicoid_is_strictly_weakly_untrapped() {
    let d = DilationSpec::real(1.3, 0.7, 0.1, 1.2, -0.2);
    let f = catalog::dilate(&catalog::helicoid(), &d).unwrap();
    for [x, y] in points(&f, SampleBox::new([-2.0, 2.0], [-2.0, 2.0]), 100, 4, |_| true) {
        let data = immerse_f(&f, x, y).unwrap();
        assert!(data.k1 * data.k2 < 0.0);
        assert_eq!(data.classify(TOL), Codim2Class::WeaklyUntrapped, "({x}, {y})");
    }
}

#[test]
fn dilated_psi_summand_is_a_star_surface() {
    let p = FamilyParam::new(0.7).unwrap();
    let g = psi_summand(&p, 1).unwrap();
    let spacelike = |j: &Jet2<f64>| causal_quantity(j, GraphKind::Xy) < -0.01;
    let pts = points(&g, SampleBox::new([-6.0, 6.0], [-6.0, 6.0]), 100, 5, spacelike);
    for [x, y] in pts {
        let data = immerse_g(&g, x, y).unwrap();
        assert!(data.k1 * data.k2 > 0.0);
        assert_eq!(data.classify(TOL), Codim2Class::StarSurface, "({x}, {y})");
    }
}

#[test]
fn dilated_hyperbolic_helicoid_is_strictly_weakly_untrapped() {
    let d = DilationSpec::real(1.0, 1.0, 0.0, 0.6, 0.0);
    let h = catalog::dilate(&catalog::hyperbolic_helicoid(), &d).unwrap().swapped();
    let in_domain = |j: &Jet2<f64>| j.fx().powi(2) > 1.0 + j.fy().powi(2) + 0.01;
    let pts = points(&h, SampleBox::new([-3.0, 3.0], [-3.0, 3.0]), 100, 6, in_domain);
    for [u, v] in pts {
        let data = immerse_h(&h, u, v).unwrap();
        assert!(data.k1 * data.k2 < 0.0);
        assert_eq!(data.classify(TOL), Codim2Class::WeaklyUntrapped, "({u}, {v})");
    }
}

#[test]
fn immersions_reject_timelike_points() {
    let steep = catalog::dilate(&catalog::scherk_maximal(), &DilationSpec::real(3.0, 1.0, 0.0, 1.0, 0.0)).unwrap();
    assert!(matches!(immerse_g(&steep, 2.0, 0.0), Err(Error::NotSpacelike(..))));
    assert!(matches!(immerse_h(&catalog::constant(1.0), 0.3, 0.2), Err(Error::NotSpacelike(..))));
}
