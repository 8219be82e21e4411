//! Worked examples through the public API.

use std::f64::consts::{E, LN_2};
use std::sync::Arc;

use approx::assert_relative_eq;
use meanscale_core::{
    conjugate_value, dual_arc_generator, dual_mean_check, frechet_mean_numeric, limit_probe,
    make_custom_generator, make_exponential_generator, make_power_generator,
    make_radical_generator, parse, primal_arc_generator, qam_eval, riemannian_centroid,
    riemannian_distance, solve_parameter, ConvexPotential, Error, GeneratorDistance, Interval,
    RiemannianLine, ScaleFamily,
};

#[test]
fn built_in_means() {
    assert_eq!(qam_eval(&make_power_generator(1.0), 1.0, 3.0).unwrap(), 2.0);
    assert_relative_eq!(
        qam_eval(&make_power_generator(0.0), 1.0, 4.0).unwrap(),
        2.0,
        max_relative = 1e-15
    );
    assert_relative_eq!(
        qam_eval(&make_power_generator(-1.0), 2.0, 6.0).unwrap(),
        3.0,
        max_relative = 1e-15
    );
    assert_relative_eq!(
        qam_eval(&make_power_generator(2.0), 1.0, 7.0).unwrap(),
        5.0,
        max_relative = 1e-15
    );
    assert_eq!(
        qam_eval(&make_exponential_generator(0.0), -1.0, 5.0).unwrap(),
        2.0
    );
    assert_relative_eq!(
        qam_eval(&make_exponential_generator(2.0), 0.0, 1.0).unwrap(),
        0.5 * ((1.0 + E * E) / 2.0).ln(),
        max_relative = 1e-14
    );
    let harmonic = make_radical_generator(1.0).unwrap();
    assert_relative_eq!(
        qam_eval(&harmonic, 2.0, 6.0).unwrap(),
        3.0,
        max_relative = 1e-15
    );
    assert_eq!(qam_eval(&harmonic, 5.0, 5.0).unwrap(), 5.0);
    assert_eq!(
        qam_eval(&make_radical_generator(10.0).unwrap(), 1.0, 1.0).unwrap(),
        1.0
    );
}

#[test]
fn custom_means() {
    let cube = make_custom_generator(parse("u^3").unwrap(), Interval::new(-10.0, 10.0)).unwrap();
    assert_relative_eq!(
        qam_eval(&cube, 1.0, 2.0).unwrap(),
        4.5f64.cbrt(),
        max_relative = 1e-12
    );
    let log = make_custom_generator(parse("log(u)").unwrap(), Interval::POSITIVE).unwrap();
    assert_relative_eq!(qam_eval(&log, 1.0, 4.0).unwrap(), 2.0, max_relative = 1e-12);
    let bad = make_custom_generator(parse("u*u - u").unwrap(), Interval::new(0.0, 10.0));
    assert!(matches!(bad, Err(Error::NotMonotone { .. })));
}

#[test]
fn numeric_frechet_mean() {
    let d = GeneratorDistance::new(make_exponential_generator(2.0));
    let m = frechet_mean_numeric(&d, 0.0, 1.0).unwrap();
    assert!((m - 0.5 * ((1.0 + E * E) / 2.0).ln()).abs() < 1e-6);
}

#[test]
fn solver_examples() {
    let power = ScaleFamily::power();
    assert!(
        solve_parameter(&power, 1.0, 4.0, 2.0, 1e-12)
            .unwrap()
            .alpha
            .abs()
            < 1e-9
    );
    assert!((solve_parameter(&power, 1.0, 3.0, 2.0, 1e-12).unwrap().alpha - 1.0).abs() < 1e-9);
    let exp = ScaleFamily::exponential();
    assert!(
        solve_parameter(&exp, 0.0, 2.0, 1.0, 1e-12)
            .unwrap()
            .alpha
            .abs()
            < 1e-9
    );
    let c = qam_eval(&make_exponential_generator(2.5), -1.0, 3.0).unwrap();
    assert!((solve_parameter(&exp, -1.0, 3.0, c, 1e-12).unwrap().alpha - 2.5).abs() < 1e-9);
    assert!(matches!(
        solve_parameter(&power, 1.0, 4.0, 3.9999999, 1e-12),
        Err(Error::BracketExhausted { .. })
    ));
}

#[test]
fn limit_probes() {
    let (lo, hi) = limit_probe(&ScaleFamily::exponential(), 0.0, 1.0, 1e6).unwrap();
    assert_relative_eq!(1.0 - hi, LN_2 / 1e6, max_relative = 1e-9);
    assert_relative_eq!(lo, LN_2 / 1e6, max_relative = 1e-9);
    // decreasing scale: the large positive coordinate goes to the minimum
    let (lo, hi) = limit_probe(&ScaleFamily::radical(), 1.0, 9.0, 500.0).unwrap();
    assert!(lo > 8.8 && hi < 1.01);
}

#[test]
fn conjugates() {
    let exp = ConvexPotential::exponential();
    assert_relative_eq!(
        conjugate_value(&exp, 1.0).unwrap(),
        -1.0,
        max_relative = 1e-10
    );
    assert!(conjugate_value(&exp, E).unwrap().abs() < 1e-10);
    let quad = ConvexPotential::quadratic();
    assert_relative_eq!(
        conjugate_value(&quad, 3.0).unwrap(),
        4.5,
        max_relative = 1e-10
    );
}

#[test]
fn arc_generators() {
    let quad = ConvexPotential::quadratic();
    let h = primal_arc_generator(&quad);
    let hd = dual_arc_generator(&quad).unwrap();
    for x in [-3.0, -0.5, 0.7, 4.0] {
        assert!((h.forward(x).unwrap() - h.forward(0.0).unwrap() - x).abs() < 1e-10);
        assert!((hd.forward(x).unwrap() - hd.forward(0.0).unwrap() - x).abs() < 1e-10);
    }
    let hd = dual_arc_generator(&ConvexPotential::exponential()).unwrap();
    for i in 0..=20 {
        let eta = (-2.0 + 0.2 * i as f64).exp();
        let want = 2.0 * eta.sqrt() - 2.0;
        assert!((hd.forward(eta).unwrap() - hd.forward(1.0).unwrap() - want).abs() < 1e-8);
    }
}

#[test]
fn dual_means() {
    let c = dual_mean_check(&ConvexPotential::exponential(), 0.0, 2.0).unwrap();
    assert_relative_eq!(
        c.theta_mean,
        2.0 * ((1.0 + E) / 2.0).ln(),
        max_relative = 1e-10
    );
    assert_relative_eq!(c.eta_mean, ((1.0 + E) / 2.0).powi(2), max_relative = 1e-10);
    assert!(c.consistent(1e-8));
    let c = dual_mean_check(&ConvexPotential::quadratic(), 1.0, 5.0).unwrap();
    assert_relative_eq!(c.theta_mean, 3.0, max_relative = 1e-12);
    assert_relative_eq!(c.eta_mean, 3.0, max_relative = 1e-12);
}

#[test]
fn riemannian_lines() {
    let flat = RiemannianLine::euclidean();
    assert_relative_eq!(
        riemannian_centroid(&flat, 1.0, 5.0).unwrap(),
        3.0,
        max_relative = 1e-12
    );
    assert_relative_eq!(
        riemannian_distance(&flat, 1.0, 5.0).unwrap(),
        4.0,
        max_relative = 1e-12
    );
    let g: Arc<dyn Fn(f64) -> meanscale_core::Result<f64> + Send + Sync> =
        Arc::new(|t: f64| Ok(t.exp()));
    let line = RiemannianLine::new(g, 0.0, Interval::REAL).unwrap();
    let m = riemannian_centroid(&line, 0.0, 2.0).unwrap();
    assert_relative_eq!(m, 2.0 * ((1.0 + E) / 2.0).ln(), max_relative = 1e-10);
    assert_eq!(riemannian_centroid(&line, 0.3, 0.3).unwrap(), 0.3);
}
