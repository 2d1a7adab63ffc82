use std::f64::consts::FRAC_PI_2;

use rand::Rng;
use zmc_core::catalog::{self, FamilyParam};
use zmc_core::decomp::{
    adjudicate, chi_infinite_log_rhs, chi_infinite_rhs, finite_decomp_check, psi_infinite_rhs, psi_positive,
    FiniteDecomposition, Part, Variant,
};
use zmc_core::sample::{rng, sample_box, SampleBox};
use zmc_core::Error;

const PARTS_1_TO_3_BOX: SampleBox = SampleBox::new([0.05, 1.0], [0.1, 1.5]);
const PART_4_BOX: SampleBox = SampleBox::new([1.0, 3.0], [-0.8, 0.8]);

/// `(x, y, θ)` where the positivity constraint holds, away from the poles of
/// `tan` and of the summands.
fn psi_points(n: usize, seed: u64) -> Vec<(f64, f64, FamilyParam)> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let p = FamilyParam::new(r.gen_range(0.2..1.4)).unwrap();
        let (x, y) = (r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0));
        let pole_free = catalog::psi(p).contains_with_margin(x, y, 0.05)
            && ((x * p.half_cos() / p.s_real).fract().abs() - 0.5).abs() < 0.45;
        if pole_free && psi_positive(x, y, &p) {
            out.push((x, y, p));
        }
    }
    out
}

#[test]
fn psi_series_within_tail_bound() {
    for (x, y, p) in psi_points(100, 41) {
        let s = psi_infinite_rhs(x, y, &p, 10_000).unwrap();
        let lhs = catalog::psi_family(x, y, p).unwrap().v;
        let gap = (s.value - lhs).abs();
        assert!(gap <= s.tail_bound, "({x}, {y}, θ={}) gap {gap} bound {}", p.theta, s.tail_bound);
        assert!(s.tail_bound <= 5e-2);
    }
}

#[test]
fn psi_series_at_a_million_pairs() {
    for (x, y, p) in psi_points(3, 42) {
        let s = psi_infinite_rhs(x, y, &p, 1_000_000).unwrap();
        let gap = (s.value - catalog::psi_family(x, y, p).unwrap().v).abs();
        assert!(gap <= 1e-3 && gap <= s.tail_bound, "gap {gap}");
    }
}

#[test]
fn psi_series_reference_point() {
    let p = FamilyParam::new(0.9).unwrap();
    let s = psi_infinite_rhs(0.4, 0.7, &p, 10_000).unwrap();
    let gap = (s.value - catalog::psi_family(0.4, 0.7, p).unwrap().v).abs();
    assert!(gap <= s.tail_bound);
}

#[test]
fn psi_series_near_the_x_axis() {
    let p = FamilyParam::new(0.9).unwrap();
    let s = psi_infinite_rhs(0.4, 1e-12, &p, 100).unwrap();
    assert!((s.value - p.sec_half * FRAC_PI_2).abs() <= 1e-10);
    assert!(matches!(psi_infinite_rhs(-0.4, 0.7, &p, 10), Err(Error::DomainConstraint(_))));
}

#[test]
fn chi_series_is_real_at_every_truncation() {
    let p = FamilyParam::new(0.8).unwrap();
    for n in [0, 1, 10, 100, 10_000] {
        let s = chi_infinite_rhs(2.0, 0.5, &p, n).unwrap();
        assert!(s.im_residual <= 1e-12, "N={n} im {}", s.im_residual);
    }
    let s = chi_infinite_rhs(2.0, 0.5, &p, 10_000).unwrap();
    let gap = (s.eval.value.re - catalog::chi_family(2.0, 0.5, p).unwrap().v).abs();
    assert!(gap <= s.eval.tail_bound, "gap {gap} bound {}", s.eval.tail_bound);
    let log = chi_infinite_log_rhs(2.0, 0.5, &p, 10_000).unwrap();
    assert!((log.value - catalog::chi_family(2.0, 0.5, p).unwrap().v).abs() <= log.tail_bound);
    assert_eq!(chi_infinite_rhs(2.0, 0.0, &p, 50).unwrap().eval.value.norm(), 0.0);
    assert_eq!(chi_infinite_log_rhs(2.0, 0.0, &p, 50).unwrap().value, 0.0);
}

#[test]
fn chi_log_form_matches_real_part() {
    let mut r = rng(43);
    let chi_box = SampleBox::new([-3.0, 3.0], [-3.0, 3.0]);
    for _ in 0..5 {
        let p = FamilyParam::new(r.gen_range(0.2..1.4)).unwrap();
        let chi = catalog::chi(p);
        for [y, z] in sample_box(&mut r, &chi_box, 10, |y, z| chi.contains_with_margin(y, z, 0.05)).unwrap() {
            let re = chi_infinite_rhs(y, z, &p, 100).unwrap().eval.value.re;
            let log = chi_infinite_log_rhs(y, z, &p, 100).unwrap().value;
            assert!((re - log).abs() <= 1e-13 * re.abs().max(1.0), "({y}, {z}) {re} vs {log}");
        }
    }
}

#[test]
fn part_one_is_closed_only_by_the_rederived_form() {
    let adj = adjudicate(Part::P1, 0.3, 2, &[[0.3, 0.5]]).unwrap();
    assert_eq!(adj.closing, vec![Variant::Rederived], "{adj:#?}");
}

#[test]
fn every_part_closes_on_its_box() {
    for part in [Part::P1, Part::P2, Part::P3, Part::P4] {
        let (beta, b) = match part {
            Part::P4 => (0.5, PART_4_BOX),
            _ => (0.3, PARTS_1_TO_3_BOX),
        };
        for n in [1, 2, 3, 5] {
            let d = FiniteDecomposition::new(part, Variant::Rederived, beta, n).unwrap();
            let pts = sample_box(&mut rng(44), &b, 20, |u, v| d.constraint_holds(u, v)).unwrap();
            let adj = adjudicate(part, beta, n, &pts).unwrap();
            assert!(adj.closing.contains(&Variant::Rederived), "part {} n={n}: {adj:#?}", part.number());
        }
    }
}

#[test]
fn single_term_regrouping_is_the_identity() {
    let cases = [
        (Part::P1, 0.3, [0.3, 0.5]),
        (Part::P2, 0.3, [0.3, 0.5]),
        (Part::P3, 0.3, [0.3, 0.5]),
        (Part::P4, 0.5, [2.0, 0.4]),
    ];
    for (part, beta, [u, v]) in cases {
        let rep = finite_decomp_check(part, Variant::Rederived, u, v, beta, 1).unwrap();
        assert!(rep.gap <= 1e-10 && rep.pass, "{rep:#?}");
    }
}

#[test]
fn part_four_reference_point() {
    let rep = finite_decomp_check(Part::P4, Variant::Statement, 2.0, 0.4, 0.5, 3).unwrap();
    assert!(rep.im_residual <= 1e-10 && rep.gap <= 1e-9, "{rep:#?}");
    assert_eq!(rep.branch_q, 0);
    let p = FamilyParam::new(1.0).unwrap();
    assert!((rep.lhs - catalog::chi_family(2.0, 0.4, p).unwrap().v).abs() <= 1e-15);
}

#[test]
fn constraint_violations_are_reported() {
    assert!(matches!(
        finite_decomp_check(Part::P1, Variant::Rederived, -0.3, 0.5, 0.3, 2),
        Err(Error::DomainConstraint(_))
    ));
    // 4β must stay inside the family range for parts 2 and 3
    assert!(matches!(FiniteDecomposition::new(Part::P2, Variant::Statement, 0.5, 2), Err(Error::DomainConstraint(_))));
}
