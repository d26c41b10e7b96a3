use holophase::circle_retrieval::{deflate_circle_zeros, verify_equivalence};
use holophase::disc::{FiniteBlaschkeProduct, FunctionSpec, TrigPolyLogModulus, WeightedPoint};
use holophase::generators::{make_gauge_variant, random_factored_spec, random_power_series_spec, random_rational_spec, GeneratorConfig};
use holophase::mero::{conclude_gauge, divisor_arithmetic, modulus_match_on_circles, DivisorOp, RationalFunctionSpec};
use holophase::sampling::{sample_circle, sample_circle_touching, sample_segment, ModulusTrace, SegmentPair};
use holophase::segment_retrieval::{reconstruct_from_segments, solve_coefficient};
use holophase::Complex64;
use proptest::prelude::*;
use std::f64::consts::{PI, TAU};

fn any_spec(seed: u64, family: u8) -> FunctionSpec {
    let cfg = GeneratorConfig::default().with_seed(seed);
    match family % 4 {
        0 => random_power_series_spec(&cfg, (seed % 3) as u32).unwrap(),
        1 => random_factored_spec(&cfg, false, false).unwrap(),
        2 => random_factored_spec(&cfg, true, true).unwrap(),
        _ => random_rational_spec(&cfg).unwrap(),
    }
}

fn rational(seed: u64, rho: f64) -> RationalFunctionSpec {
    let cfg = GeneratorConfig { test_radii: vec![rho], ..GeneratorConfig::default() }.with_seed(seed);
    RationalFunctionSpec::try_from(&random_rational_spec(&cfg).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn spec_json_round_trips(seed in any::<u64>(), family in 0u8..4) {
        let f = any_spec(seed, family);
        prop_assert_eq!(FunctionSpec::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn trace_csv_round_trips(seed in any::<u64>(), rho in 0.2f64..1.0) {
        let f = any_spec(seed, 1);
        let t = sample_circle(&f, rho, 64).unwrap();
        prop_assert_eq!(ModulusTrace::from_csv(&t.to_csv()).unwrap(), t);
    }

    #[test]
    fn gauge_leaves_traces_unchanged(seed in any::<u64>(), family in 0u8..4, lambda in 0.0..TAU) {
        let f = any_spec(seed, family);
        let g = make_gauge_variant(&f, lambda);
        let (a, b) = (sample_circle(&f, 0.6, 128).unwrap(), sample_circle(&g, 0.6, 128).unwrap());
        for (x, y) in a.values().iter().zip(b.values()) {
            prop_assert!((x - y).abs() <= 1e-13 * x.abs().max(1e-300));
        }
    }

    #[test]
    fn gauge_variants_verify_with_their_phase(seed in any::<u64>(), family in 0u8..4, lambda in 0.0..TAU) {
        let f = any_spec(seed, family);
        let v = verify_equivalence(&f, &make_gauge_variant(&f, lambda), 0.6, 1e-8).unwrap();
        prop_assert!(v.equivalent);
        prop_assert!((v.gauge.unwrap() - Complex64::cis(lambda)).norm() < 1e-9);
    }

    #[test]
    fn segment_reconstruction_ignores_the_gauge(seed in any::<u64>(), lambda in 0.0..TAU, alpha in 0.3f64..2.8) {
        prop_assume!((1..=12).all(|n| (n as f64 * alpha).sin().abs() > 1e-3));
        let f = random_power_series_spec(&GeneratorConfig { max_series_degree: 6, ..GeneratorConfig::default() }.with_seed(seed), 1).unwrap();
        let pair = SegmentPair::canonical(alpha).unwrap();
        let (fi, fa) = sample_segment(&f, &pair, 201).unwrap();
        let (gi, ga) = sample_segment(&make_gauge_variant(&f, lambda), &pair, 201).unwrap();
        let rf = reconstruct_from_segments(&fi, &fa, alpha, 12).unwrap().0;
        let rg = reconstruct_from_segments(&gi, &ga, alpha, 12).unwrap().0;
        prop_assert!(holophase::generators::gauge_aligned_sup_error(&rf, &rg, 0.5, 64).unwrap() < 1e-9);
    }

    #[test]
    fn coefficient_solve_inverts_the_projection(re in -2.0f64..2.0, im in -2.0f64..2.0, n in 1usize..40, alpha in 0.01f64..3.13) {
        let s = (n as f64 * alpha).sin().abs();
        prop_assume!(s > 1e-3);
        let c = Complex64::new(re, im);
        let (got, kappa) = solve_coefficient(n, c.re, (c * Complex64::cis(n as f64 * alpha)).re, alpha).unwrap();
        prop_assert!((got - c).norm() <= 1e-13 / s * (1.0 + c.norm()));
        prop_assert!((kappa * s - 1.0).abs() < 1e-14);
    }

    #[test]
    fn divisor_of_a_product_is_the_sum(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (f, g) = (rational(s1, 0.6), rational(s2, 0.6));
        let sum = divisor_arithmetic(&f.divisor(), &g.divisor(), DivisorOp::Product);
        prop_assert_eq!(f.times(&g).divisor(), sum);
        let back = divisor_arithmetic(&f.times(&g).divisor(), &g.divisor(), DivisorOp::Quotient);
        prop_assert_eq!(back, f.divisor());
    }

    #[test]
    fn unimodular_multiples_conclude_to_their_constant(seed in any::<u64>(), phase in 0.0..TAU, rho in 0.2f64..0.9) {
        let f = rational(seed, rho);
        let c = Complex64::cis(phase);
        let gc = conclude_gauge(&f, &f.scaled(c), rho).unwrap();
        prop_assert_eq!(gc.m, 0);
        prop_assert!((gc.c - c).norm() < 1e-10);
    }

    #[test]
    fn outer_radius_is_reduced_to_the_unit_circle(seed in any::<u64>(), rho in 1.2f64..3.0, m in -1i32..=1) {
        // a pair built for the inner radius 1/ρ, seen from the outer radius ρ
        let f = rational(seed, 1.0 / rho);
        prop_assume!(f.divisor().points().all(|p| (p.norm() - rho).abs() > 0.05));
        let g = f.times_power_of_z(m).scaled(Complex64::from_polar(rho.powi(-m), 0.4));
        let mm = modulus_match_on_circles(&f, &g, rho, 128, 1e-10).unwrap();
        prop_assert!((mm.rho - 1.0 / rho).abs() < 1e-15);
        // oracle: compare |G|/|F| directly on both original circles
        let direct = |r: f64| {
            (0..128)
                .map(|j| {
                    let z = Complex64::from_polar(r, TAU * j as f64 / 128.0);
                    (g.log_modulus(z).unwrap() - f.log_modulus(z).unwrap()).exp_m1().abs()
                })
                .fold(0.0, f64::max)
        };
        prop_assert!((mm.deviation_unit - direct(rho)).abs() < 1e-12 * (1.0 + direct(rho)));
        prop_assert!((mm.deviation_inner - direct(1.0)).abs() < 1e-12 * (1.0 + direct(1.0)));
        prop_assert!(mm.deviation_unit < 1e-10);
        // same verdict when the caller substitutes first
        let pre = modulus_match_on_circles(&f.dilate(rho).unwrap(), &g.dilate(rho).unwrap(), 1.0 / rho, 128, 1e-10).unwrap();
        prop_assert_eq!(pre.matched, mm.matched);
        prop_assert!((pre.deviation_inner - mm.deviation_inner).abs() < 1e-12 * (1.0 + mm.deviation_inner));
    }

    #[test]
    fn deflation_recovers_the_order_of_a_zero_on_the_circle(mult in 1u32..=3, node in 0usize..256, mean in -1.0f64..1.0) {
        let rho = 0.6;
        let a = Complex64::from_polar(rho, TAU * node as f64 / 256.0);
        let b = FiniteBlaschkeProduct::new(0, vec![WeightedPoint::new(a, mult)], 0.0).unwrap();
        let f = FunctionSpec::blaschke_outer(b, TrigPolyLogModulus::new(mean, vec![0.3], vec![-0.2]).unwrap());
        let t = sample_circle_touching(&f, rho, 256).unwrap();
        let (_, zeros) = deflate_circle_zeros(&t, None).unwrap();
        prop_assert_eq!(zeros.len(), 1);
        prop_assert_eq!(zeros[0].mult, mult);
        prop_assert!((zeros[0].point - a).norm() < 1e-12);
        let (_, hinted) = deflate_circle_zeros(&t, Some(&[WeightedPoint::new(a, mult)])).unwrap();
        prop_assert_eq!(hinted, zeros);
    }
}

#[test]
fn rational_angle_always_flags_the_multiples_of_q() {
    let f = random_power_series_spec(&GeneratorConfig::default().with_seed(3), 0).unwrap();
    for q in [2u32, 3, 4, 5, 7] {
        let alpha = PI / q as f64;
        let (i, a) = sample_segment(&f, &SegmentPair::canonical(alpha).unwrap(), 401).unwrap();
        match reconstruct_from_segments(&i, &a, alpha, 16) {
            Err(holophase::Error::IllConditioned { indices, .. }) => {
                let want: Vec<usize> = (1..=16).filter(|n| n % q as usize == 0).collect();
                assert_eq!(indices, want, "q = {q}");
            }
            other => panic!("q = {q}: expected ill-conditioning, got {other:?}"),
        }
    }
}
