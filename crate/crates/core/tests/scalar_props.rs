use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use zmc_core::scalar::{complex_atan, complex_atanh, Elementary, Jet2};

fn config() -> Config {
    Config { cases: 100, rng_seed: RngSeed::Fixed(0x2c0de), failure_persistence: None, ..Config::default() }
}

/// A real interval inside the domain of each function, away from poles.
fn domain(f: Elementary) -> (f64, f64) {
    use Elementary::*;
    match f {
        Sin | Cos | Sinh | Cosh | Tanh | Atan => (-5.0, 5.0),
        Exp => (-5.0, 3.0),
        Tan | Sec => (-1.4, 1.4),
        Cot | Csc => (0.2, 2.9),
        Log => (0.05, 10.0),
        Atanh => (-0.9, 0.9),
        Recip => (0.1, 5.0),
    }
}

fn value(f: Elementary, x: f64) -> f64 {
    Jet2::constant(x).apply(f).unwrap().v
}

fn close(jet: f64, fd: f64) -> bool {
    (jet - fd).abs() <= 1e-6 * fd.abs().max(1.0)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn jet_derivatives_match_central_differences(idx in 0usize..14, t in 0.0f64..1.0) {
        let f = Elementary::ALL[idx];
        let (lo, hi) = domain(f);
        let x = lo + t * (hi - lo);
        let h = f64::EPSILON.cbrt() * x.abs().max(1.0);
        let j = Jet2::seed_x(x).apply(f).unwrap();
        let d1 = (value(f, x + h) - value(f, x - h)) / (2.0 * h);
        prop_assert!(close(j.fx(), d1), "{f:?} at {x}: jet {} fd {}", j.fx(), d1);
        // Second derivative from differences of independently checked first derivatives.
        let slope = |s: f64| Jet2::seed_x(s).apply(f).unwrap().fx();
        let d2 = (slope(x + h) - slope(x - h)) / (2.0 * h);
        prop_assert!(close(j.fxx(), d2), "{f:?} at {x}: jet {} fd {}", j.fxx(), d2);
    }

    #[test]
    fn atan_atanh_rotation_identities(re in -3.0f64..3.0, im in -3.0f64..3.0) {
        // stay 0.1 away from the cuts of both functions
        prop_assume!(!(im.abs() < 0.1 && re.abs() > 0.9));
        prop_assume!(!(re.abs() < 0.1 && im.abs() > 0.9));
        let z = Complex64::new(re, im);
        let i = Complex64::i();
        let lhs = complex_atan(i * z).unwrap();
        let rhs = i * complex_atanh(z).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12, "atan(iz) at {z}");
        let lhs = complex_atanh(i * z).unwrap();
        let rhs = i * complex_atan(z).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12, "atanh(iz) at {z}");
    }

    #[test]
    fn atanh_reflection_is_exact(re in -3.0f64..3.0, im in 0.01f64..3.0) {
        let z = Complex64::new(re, im);
        prop_assert_eq!(complex_atanh(z.conj()).unwrap(), complex_atanh(z).unwrap().conj());
    }

    #[test]
    fn composition_orders_agree(x in -1.5f64..1.5, y in -1.5f64..1.5) {
        let (jx, jy) = (Jet2::seed_x(x), Jet2::seed_y(y));
        let quotient = jx.apply(Elementary::Cos).unwrap()
            .checked_div(jy.apply(Elementary::Cos).unwrap()).unwrap()
            .apply(Elementary::Log).unwrap();
        let difference = jx.apply(Elementary::Cos).unwrap().apply(Elementary::Log).unwrap()
            - jy.apply(Elementary::Cos).unwrap().apply(Elementary::Log).unwrap();
        prop_assert!(quotient.max_diff(&difference) <= 1e-12 * quotient.d2[0].abs().max(quotient.d2[2].abs()).max(1.0));
    }
}

#[test]
fn spot_values() {
    let i = Complex64::i();
    assert_eq!(complex_atan(Complex64::new(0.0, 0.0)).unwrap(), Complex64::new(0.0, 0.0));
    assert!((complex_atan(Complex64::new(1.0, 0.0)).unwrap().re - std::f64::consts::FRAC_PI_4).abs() < 1e-16);
    let half = complex_atan(i * 0.5).unwrap();
    assert!((half - i * 0.5f64.atanh()).norm() < 1e-16);
    assert!((complex_atanh(i).unwrap() - i * std::f64::consts::FRAC_PI_4).norm() < 1e-16);
    let a = complex_atanh(Complex64::new(0.3, -0.2)).unwrap();
    let b = complex_atanh(Complex64::new(0.3, 0.2)).unwrap();
    assert_eq!(a, b.conj());
}

#[test]
fn atanh_keeps_full_precision_next_to_minus_one() {
    for z in [Complex64::new(-0.999_957_740_910_214, 0.0), Complex64::new(-0.99999, 1e-7), Complex64::new(-1.5, 0.3)] {
        assert_eq!(complex_atanh(z).unwrap(), -complex_atanh(-z).unwrap());
    }
    // f64::atanh cancels on this side too, so the oracle is taken at +x
    let x = 0.999_957_740_910_214f64;
    assert_eq!(complex_atanh(Complex64::new(-x, 0.0)).unwrap().re, -x.atanh());
    assert_eq!(Jet2::constant(-x).apply(Elementary::Atanh).unwrap().v, -x.atanh());
}

#[test]
fn atan_seed_at_point_seven() {
    let x = 0.7;
    let h = 1e-5;
    let j = Jet2::seed_x(x).apply(Elementary::Atan).unwrap();
    let fd1 = ((x + h).atan() - (x - h).atan()) / (2.0 * h);
    let fd2 = ((x + h).atan() - 2.0 * x.atan() + (x - h).atan()) / (h * h);
    assert!((j.fx() - fd1).abs() <= 1e-8 * fd1.abs());
    // second difference carries roundoff of order ε/h², so compare at 1e-5
    assert!((j.fxx() - fd2).abs() <= 1e-5 * fd2.abs());
    assert_eq!(j.fx(), 1.0 / (1.0 + x * x));
}
