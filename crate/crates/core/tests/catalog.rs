use num_complex::Complex64;
use zmc_core::catalog::{self, DilationSpec, FamilyParam, LimitFamily, Parity};
use zmc_core::decomp::{chi_summand, psi_summand};
use zmc_core::residual::residual_for;
use zmc_core::sample::{rng, sample_box, SampleBox};
use zmc_core::{ExpectedPde, HeightField};

const THETAS: [f64; 3] = [0.3, 0.7, 1.2];
const BOX: SampleBox = SampleBox::new([-2.0, 2.0], [-2.0, 2.0]);
/// Sampled points keep this distance from poles and domain edges.
const SAMPLE_MARGIN: f64 = 0.05;

fn fields(theta: f64) -> Vec<HeightField> {
    let p = FamilyParam::new(theta).unwrap();
    vec![
        catalog::scherk(),
        catalog::scherk_maximal(),
        catalog::bi_soliton(),
        catalog::helicoid(),
        catalog::hyperbolic_helicoid(),
        catalog::phi(p),
        catalog::psi(p),
        catalog::chi(p),
        catalog::phi_limit(),
        catalog::psi_limit(),
    ]
}

fn points(hf: &HeightField, n: usize, seed: u64) -> Vec<[f64; 2]> {
    sample_box(&mut rng(seed), &BOX, n, |x, y| hf.contains_with_margin(x, y, SAMPLE_MARGIN)).unwrap()
}

#[test]
fn every_entry_solves_its_equation() {
    for (t, theta) in THETAS.into_iter().enumerate() {
        for hf in fields(theta) {
            let pde = hf.expected_pde();
            let mut worst = 0.0f64;
            for [x, y] in points(&hf, 200, 100 + t as u64) {
                let j = hf.eval(x, y).unwrap();
                worst = worst.max(residual_for(pde, &j).unwrap().abs());
            }
            assert!(worst <= 1e-9, "{} (θ={theta}) {pde} residual {worst:e}", hf.id());
        }
    }
}

#[test]
fn helicoid_is_also_maximal() {
    let hf = catalog::helicoid();
    for [x, y] in points(&hf, 200, 7) {
        let j = hf.eval(x, y).unwrap();
        assert!(residual_for(ExpectedPde::Zmc, &j).unwrap().abs() <= 1e-9);
    }
}

#[test]
fn parity_metadata_holds() {
    for hf in fields(0.7) {
        let [px, py] = hf.parity();
        let sign = |p: Parity| match p {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
            Parity::Neither => unreachable!(),
        };
        for [x, y] in points(&hf, 100, 21) {
            let v = hf.value(x, y).unwrap();
            let rx = hf.value(-x, y).unwrap() - sign(px) * v;
            let ry = hf.value(x, -y).unwrap() - sign(py) * v;
            assert!(rx.abs() <= 1e-12 && ry.abs() <= 1e-12, "{} at ({x}, {y})", hf.id());
        }
    }
}

#[test]
fn small_angle_limits_are_approached() {
    let cases = [(LimitFamily::Phi, 0.8, 1.1), (LimitFamily::Psi, 0.8, 1.1), (LimitFamily::Chi, 1.5, 0.6)];
    for (fam, a, b) in cases {
        let c = catalog::limit_comparison(fam, 1e-3, a, b).unwrap();
        assert!(c.gap <= 1e-5, "{fam:?} gap {}", c.gap);
        let order = catalog::limit_order(fam, 1e-2, a, b).unwrap();
        // halving θ divides the gap by 2 (linear) to 4 (quadratic)
        assert!((0.9..=2.1).contains(&order), "{fam:?} order {order}");
    }
}

#[test]
fn phi_limit_sign_convention() {
    let c = catalog::limit_comparison(LimitFamily::Phi, 1e-3, -0.4, 0.9).unwrap();
    assert_eq!(c.epsilon_sign, Some(-1));
    let eps = -1.0;
    let alt = -eps * std::f64::consts::FRAC_PI_2 + (0.9f64 / -0.4).atan();
    assert!((alt - c.limit_value).abs() <= 1e-15);
}

#[test]
fn generic_real_dilation_leaves_the_equation() {
    let d = DilationSpec::real(1.0, 1.0, 0.0, 2.0, 0.0);
    let hf = catalog::dilate(&catalog::scherk(), &d).unwrap();
    let b = SampleBox::new([-1.0, 1.0], [-0.7, 0.7]);
    let worst = b
        .grid(20)
        .into_iter()
        .filter(|&[x, y]| hf.contains(x, y))
        .map(|[x, y]| residual_for(ExpectedPde::Mse, &hf.eval(x, y).unwrap()).unwrap().abs())
        .fold(0.0, f64::max);
    assert!(worst > 1e-3, "{worst}");
}

#[test]
fn degenerate_dilation_is_rejected() {
    let d = DilationSpec::real(1.0, 0.0, 0.0, 1.0, 0.0);
    assert!(catalog::dilate(&catalog::helicoid(), &d).is_err());
    let hf = catalog::dilate(&catalog::helicoid(), &DilationSpec::identity()).unwrap();
    assert_eq!(hf.value(0.7, 0.2).unwrap(), catalog::helicoid().value(0.7, 0.2).unwrap());
}

#[test]
fn decomposition_summands_are_substituted_helicoids() {
    for theta in THETAS {
        let p = FamilyParam::new(theta).unwrap();
        let cos = p.half_cos();
        for n in [-2i64, 0, 3] {
            let nf = n as f64;
            let s = psi_summand(&p, n).unwrap();
            for [x, y] in points(&s, 10, 31) {
                let direct = (y / (x * cos - nf * p.s_real)).atan();
                assert!((s.value(x, y).unwrap() - direct).abs() <= 1e-14);
            }
            // num-complex's own atanh is the independent oracle here
            let c = chi_summand(&p, n).unwrap();
            let shift = Complex64::new(0.0, nf * p.s_imag);
            for [y, z] in points(&catalog::hyperbolic_helicoid(), 10, 32) {
                let (yc, zc) = (Complex64::from(y), Complex64::from(z));
                let direct = (zc * cos / (yc - shift)).atanh();
                let got = c.eval_complex(yc, zc).unwrap().v;
                assert!((got - direct).norm() <= 1e-14 * direct.norm().max(1.0), "n={n}: {got} vs {direct}");
            }
        }
    }
}

#[test]
fn reference_values() {
    // mpmath, 30 digits
    let s = catalog::scherk().value(1.0, 0.5).unwrap();
    assert!((s - -0.485_042_229_942_291_5).abs() <= 1e-15);
    let h = catalog::helicoid().value(2.0, 1.0).unwrap();
    assert!((h - 0.463_647_609_000_806_1).abs() <= 1e-15);
}

#[test]
fn lookup_by_id() {
    for id in catalog::CATALOG_IDS {
        let hf = catalog::by_id(id, Some(0.7)).unwrap();
        assert!(!hf.id().is_empty());
    }
    assert!(catalog::by_id("nope", None).is_err());
    assert!(catalog::by_id("phi", None).is_err());
}
