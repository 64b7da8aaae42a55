use gammahodge::formats::*;
use num_bigint::BigUint;
use proptest::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;

fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(v: &T) -> Result<(), TestCaseError> {
    let s = serde_json::to_string(v).unwrap();
    let back: T = serde_json::from_str(&s).unwrap();
    prop_assert_eq!(&back, v);
    Ok(())
}

fn arb_decimal() -> impl Strategy<Value = DecimalInt> {
    prop::collection::vec(any::<u32>(), 0..5).prop_map(|digits| DecimalInt(BigUint::new(digits)))
}

fn arb_field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Named(FieldName::Indicator)),
        (any::<f64>(), prop::option::of(0.01f64..10.0)).prop_map(|(amplitude, width)| FieldSpec::Full {
            profile: FieldName::Gaussian,
            amplitude,
            width,
        }),
    ]
    .prop_filter("finite", |f| !matches!(f, FieldSpec::Full { amplitude, .. } if !amplitude.is_finite()))
}

fn arb_poly() -> impl Strategy<Value = PolySpec> {
    prop_oneof![
        Just(PolySpec::Named(PolyName::Const)),
        Just(PolySpec::Named(PolyName::Square)),
        prop::array::uniform3(-1e6f64..1e6).prop_map(PolySpec::Coefficients),
    ]
}

fn arb_window() -> impl Strategy<Value = WindowSpec> {
    prop::collection::vec(1e-3f64..5.0, 1..=3).prop_map(|lengths| WindowSpec { dim: lengths.len(), lengths })
}

fn arb_poisson() -> impl Strategy<Value = PoissonSpec> {
    let opt = || prop::option::of(any::<u64>());
    prop_oneof![
        (arb_window(), arb_field(), opt(), opt())
            .prop_map(|(window, f, samples, seed)| PoissonSpec::Laplace { window, f, samples, seed }),
        (arb_window(), any::<u64>(), opt(), opt(), 1usize..200).prop_map(|(window, count, samples, seed, series_terms)| {
            PoissonSpec::Local { window, functional: LocalSpec::Count { count }, samples, seed, series_terms }
        }),
        (arb_window(), arb_poly(), arb_field(), opt(), opt()).prop_map(|(window, poly, phi, samples, seed)| {
            PoissonSpec::Local { window, functional: LocalSpec::Poly { poly, phi }, samples, seed, series_terms: 64 }
        }),
        (1u8..=3, arb_window(), arb_field(), arb_poly(), arb_field(), opt(), opt()).prop_map(
            |(m, window, g, h, phi, samples, seed)| PoissonSpec::Mecke { m, window, f: MeckeSpec { g, h, phi }, samples, seed }
        ),
    ]
}

proptest! {
    #[test]
    fn betti_input_round_trips(d in 1usize..6, beta in prop::collection::vec(any::<u64>(), 6)) {
        round_trip(&BettiInput { d, beta: beta[..=d].to_vec() })?;
    }

    #[test]
    fn betti_report_round_trips(
        beta in prop::collection::vec(0u64..100, 2..5),
        b in prop::collection::vec(arb_decimal(), 0..8),
        k0 in arb_decimal(),
        with_vanishing in any::<bool>(),
        warnings in prop::collection::vec("[a-z ]{0,12}", 0..3),
    ) {
        let report = BettiReport {
            input: BettiInput { d: beta.len() - 1, beta: beta.clone() },
            n_max: b.len().saturating_sub(1),
            b,
            vanishing: with_vanishing.then(|| VanishingBlock { k0, b_k0: DecimalInt(1u32.into()) }),
            warnings,
            pipeline: Some(PipelineMeta { base_betti: beta, beta0_override: None, factor_betti: None }),
        };
        round_trip(&report)?;
    }

    #[test]
    fn complex_round_trips(maximal in prop::collection::vec(prop::collection::vec(any::<i64>(), 0..4), 0..6)) {
        round_trip(&ComplexInput { maximal })?;
    }

    #[test]
    fn poisson_spec_round_trips(spec in arb_poisson()) {
        round_trip(&spec)?;
    }

    #[test]
    fn mc_report_floats_round_trip_bitwise(
        xs in prop::array::uniform6(any::<f64>().prop_filter("finite", |x| x.is_finite())),
        samples in any::<u64>(),
        seed in any::<u64>(),
        m in prop::option::of(1u8..=3),
    ) {
        let r = McReportJson {
            check: "mecke".into(),
            m,
            estimate: xs[0],
            reference: xs[1],
            abs_error: xs[2],
            rel_error: xs[3],
            std_error: xs[4],
            samples,
            seed,
            covered_3sigma: xs[0] <= xs[1],
            rhs_estimate: Some(xs[5]),
            rhs_std_error: None,
            tail_bound: m.map(|_| xs[2]),
            rng: "ChaCha8".into(),
        };
        let back: McReportJson = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        prop_assert_eq!(back.estimate.to_bits(), r.estimate.to_bits());
        prop_assert_eq!(back.std_error.to_bits(), r.std_error.to_bits());
        prop_assert_eq!(back, r);
    }

    #[test]
    fn grid_round_trips(a in 0usize..5, b in 0u32..5, c in 0usize..5, d in 0usize..5, e in 0u64..9) {
        round_trip(&GridSpec { max_components: a, max_degree: b, max_dim: c, max_m: d, max_n: e, ..GridSpec::default() })?;
    }
}

#[test]
fn grid_defaults_fill_missing_fields() {
    let g: GridSpec = serde_json::from_str(r#"{"max_m": 2}"#).unwrap();
    assert_eq!(g, GridSpec { max_m: 2, ..GridSpec::default() });
    assert!(serde_json::from_str::<GridSpec>(r#"{"max_q": 2}"#).is_err());
}
