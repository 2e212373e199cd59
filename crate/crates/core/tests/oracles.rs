//! Frozen reference values and cross-checks against independent constructions.

use std::f64::consts::PI;

use trigspline::{
    fit, max_deviation, periodic_cubic, periodic_linear, periodic_quadratic_midpoint, FactorKind,
    GridSpec, Indicator, SmoothnessOrder, TrigSpline, Truncation, EXAMPLE_VALUES,
};

fn build(kind: FactorKind, r: u32, indicator: Indicator, truncation: Truncation) -> TrigSpline {
    let grid = GridSpec::new(9, indicator).unwrap();
    TrigSpline::build(
        &EXAMPLE_VALUES,
        grid,
        kind,
        SmoothnessOrder::new(r).unwrap(),
        truncation,
    )
    .unwrap()
}

const POINTS: [f64; 6] = [0.0, 0.5, 1.0, 2.5, 4.0, 6.0];

// Brute-force sums at M = 200 from a separate script, not from this crate.
#[rustfmt::skip]
const GOLDEN: [(FactorKind, u32, Indicator, [f64; 6]); 5] = [
    (FactorKind::V3, 3, Indicator::Aligned, [1.9999999999999978, 0.8916694010588132, 1.9476155760851288, 3.449315405608874, 2.5712123194255554, 2.8053536581290452]),
    (FactorKind::V1, 2, Indicator::HalfStep, [6.249999925818404, -0.7580371500078613, 0.122080322422768, 2.608537150816215, 0.7516682470292047, 4.187560122869831]),
    (FactorKind::V2, 2, Indicator::Aligned, [1.9999999999999978, 1.0266827147325694, 1.8694691346556829, 3.366705467023438, 2.5532613339738117, 2.6415064507510277]),
    (FactorKind::V1, 4, Indicator::Aligned, [1.9999999999999978, 0.7863751254415604, 2.0382047680661866, 3.5086810662462167, 2.5724316696127993, 2.9358357276252325]),
    (FactorKind::V3, 1, Indicator::HalfStep, [9.992316010986242, -1.4591016098151142, 0.053552471466127294, 2.6478938876254317, 0.5408469775649132, 4.321122148241477]),
];

#[test]
fn frozen_values() {
    for (kind, r, indicator, expected) in GOLDEN {
        let s = build(kind, r, indicator, Truncation::Blocks(200));
        for (got, want) in s.eval_many(&POINTS).iter().zip(expected) {
            assert!(
                (got - want).abs() < 1e-10,
                "{kind} r={r} I={indicator}: {got} vs {want}"
            );
        }
    }
}

#[test]
fn frozen_coefficients() {
    let grid = GridSpec::new(9, Indicator::Aligned).unwrap();
    let c = fit(&EXAMPLE_VALUES, &grid).unwrap();
    assert!((c.a(0) - 40.0 / 9.0).abs() < 1e-14);
    // a_k + i b_k from the closed-form DFT of the example data
    let mut re = 0.0;
    let mut im = 0.0;
    for (i, v) in EXAMPLE_VALUES.iter().enumerate() {
        let x = 2.0 * PI * 3.0 * i as f64 / 9.0;
        re += v * x.cos();
        im += v * x.sin();
    }
    assert!((c.a(3) - 2.0 * re / 9.0).abs() < 1e-14);
    assert!((c.b(3) - 2.0 * im / 9.0).abs() < 1e-14);
}

#[test]
fn first_order_is_piecewise_linear() {
    let grid = GridSpec::new(9, Indicator::Aligned).unwrap();
    let linear = periodic_linear(&EXAMPLE_VALUES, &grid).unwrap();
    let s = build(
        FactorKind::V1,
        1,
        Indicator::Aligned,
        Truncation::Blocks(100_000),
    );
    // tail of the r = 1 series decays like 1/(MN)
    assert!(max_deviation(&s, &linear, 512).unwrap() < 5e-6);
}

#[test]
fn third_order_matches_cubic_with_derivatives() {
    let grid = GridSpec::new(9, Indicator::Aligned).unwrap();
    let cubic = periodic_cubic(&EXAMPLE_VALUES, &grid).unwrap();
    let s = build(
        FactorKind::V3,
        3,
        Indicator::Aligned,
        Truncation::Blocks(200),
    );
    assert!(max_deviation(&s, &cubic, 1024).unwrap() <= 1e-7);
    for t in [0.3, 1.0, 2.2, 5.9] {
        let d1 = s.eval_derivative(t, 1).unwrap();
        assert!(
            (d1 - cubic.eval_derivative(t, 1).unwrap()).abs() < 1e-5,
            "t={t}"
        );
        let d2 = s.eval_derivative(t, 2).unwrap();
        assert!(
            (d2 - cubic.eval_derivative(t, 2).unwrap()).abs() < 1e-3,
            "t={t}"
        );
    }
}

// V1 at r = 2 reproduces a quadratic whose knots sit half a step from the
// interpolation nodes. On the aligned grid that is the midpoint quadratic of the
// half-step grid, shifted by half a step.
#[test]
fn second_order_v1_is_half_step_shifted_quadratic() {
    let half = GridSpec::new(9, Indicator::HalfStep).unwrap();
    let quadratic = periodic_quadratic_midpoint(&EXAMPLE_VALUES, &half).unwrap();
    let s = build(
        FactorKind::V1,
        2,
        Indicator::Aligned,
        Truncation::Blocks(10_000),
    );
    let shift = PI / 9.0;
    let shifted = |t: f64| quadratic.eval(t + shift);
    assert!(max_deviation(&s, &shifted, 1024).unwrap() < 1e-6);
}

// Sampling a smooth periodic function ever more densely, the order-3 spline
// approaches it; asserted as a trend at N = 9, 17, 33.
#[test]
fn denser_grids_approach_smooth_function() {
    let f = |t: f64| (t.sin()).exp() + 0.5 * (3.0 * t).cos();
    for indicator in [Indicator::Aligned, Indicator::HalfStep] {
        let mut errors = Vec::new();
        for nodes in [9, 17, 33] {
            let grid = GridSpec::new(nodes, indicator).unwrap();
            let values: Vec<f64> = grid.nodes().into_iter().map(f).collect();
            let s = TrigSpline::build(
                &values,
                grid,
                FactorKind::V3,
                SmoothnessOrder::new(3).unwrap(),
                Truncation::Auto,
            )
            .unwrap();
            errors.push(max_deviation(&s, &f, 1000).unwrap());
        }
        assert!(
            errors.windows(2).all(|w| w[1] < w[0]),
            "I={indicator}: {errors:?}"
        );
    }
}
