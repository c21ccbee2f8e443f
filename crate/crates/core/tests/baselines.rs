use mdi::baselines::{mc_integrate, reference_integral, reference_integral_by, stp_integrate, BaselineError, McConfig, ReferenceMethod};
use mdi::bench::{expand_family, TestFamily};
use mdi::{parse, Domain, RuleKind};

#[test]
fn stp_is_exact_for_separable_cubics() {
    let g = parse("(x1^3 - 2*x1 + 1)*(x2^2 + x2)*(3*x3^3)").unwrap();
    let domain = Domain::new(vec![(0.0, 2.0), (-1.0, 1.0), (1.0, 3.0)]).unwrap();
    // Axis integrals: 2, 2/3, 60.
    let want = 2.0 * (2.0 / 3.0) * 60.0;
    for kind in [RuleKind::Simpson, RuleKind::Gauss2] {
        let got = stp_integrate(&g, &domain, kind.nearest_valid(5), kind).unwrap();
        assert!((got - want).abs() < 1e-12 * want, "{kind}: {got}");
    }
}

#[test]
fn stp_cap_is_reported() {
    let g = parse("x1").unwrap();
    let err = stp_integrate(&g, &Domain::unit(9), 11, RuleKind::Simpson).unwrap_err();
    assert!(matches!(err, BaselineError::CapExceeded { .. }));
}

#[test]
fn monte_carlo_is_unbiased_across_seeds() {
    let family = TestFamily::Gauss;
    let (g, domain) = expand_family(&family, 5).unwrap();
    let reference = reference_integral(&family, 5, &domain).unwrap().value;
    let runs: Vec<_> = (0..32).map(|seed| mc_integrate(&g, &domain, &McConfig { samples: 20_000, seed }).unwrap()).collect();
    let mean = runs.iter().map(|r| r.estimate).sum::<f64>() / 32.0;
    let stderr = runs.iter().map(|r| r.stderr).sum::<f64>() / 32.0 / 32f64.sqrt();
    assert!((mean - reference).abs() < 4.0 * stderr, "{mean} vs {reference} (se {stderr})");
    let covered = runs.iter().filter(|r| (r.estimate - reference).abs() < 2.0 * r.stderr).count();
    assert!(covered >= 24, "only {covered} of 32 within 2 stderr");
}

#[test]
fn monte_carlo_independent_of_block_boundaries() {
    let g = parse("x1 + x2").unwrap();
    let a = mc_integrate(&g, &Domain::unit(2), &McConfig { samples: 200_000, seed: 9 }).unwrap();
    let b = mc_integrate(&g, &Domain::unit(2), &McConfig { samples: 200_000, seed: 9 }).unwrap();
    assert_eq!(a.estimate.to_bits(), b.estimate.to_bits());
    assert!((a.estimate - 1.0).abs() < 5.0 * a.stderr);
}

#[test]
fn references_agree_between_methods() {
    for family in [TestFamily::AltExp, TestFamily::ProdRational, TestFamily::Gauss, TestFamily::CosSum, TestFamily::AltExpSq] {
        for d in [1, 3, 8] {
            let domain = family.default_domain(d);
            let a = reference_integral(&family, d, &domain).unwrap();
            let b = reference_integral_by(&family, d, &domain, ReferenceMethod::HighRes1d).unwrap();
            assert!((a.value - b.value).abs() <= 1e-11 * a.value.abs().max(1e-300), "{family} d={d}: {} vs {}", a.value, b.value);
        }
    }
}

#[test]
fn closed_form_values() {
    // (e - 1)(1 - 1/e)(e - 1) for exp(x1 - x2 + x3).
    let e = std::f64::consts::E;
    let want = (e - 1.0) * (1.0 - 1.0 / e) * (e - 1.0);
    let got = reference_integral(&TestFamily::AltExp, 3, &Domain::unit(3)).unwrap().value;
    assert!((got - want).abs() < 1e-14 * want);
    // (atan(0.4/0.9) + atan(0.6/0.9)) / 0.9 per axis.
    let axis = ((0.4f64 / 0.9).atan() + (0.6f64 / 0.9).atan()) / 0.9;
    let got = reference_integral(&TestFamily::ProdRational, 2, &Domain::unit(2)).unwrap().value;
    assert!((got - axis * axis).abs() < 1e-14 * got);
}
