use gammahodge_core::poisson::*;

fn window(lengths: &[f64]) -> Window {
    Window::new(lengths.to_vec()).unwrap()
}

const IND: ScalarField = ScalarField::indicator(1.0);

#[test]
fn reports_are_bitwise_reproducible() {
    let w = window(&[1.0, 2.0]);
    let a = check_laplace(&ScalarField::indicator(0.3), &w, 10_000, 42).unwrap();
    let b = check_laplace(&ScalarField::indicator(0.3), &w, 10_000, 42).unwrap();
    assert_eq!(a.estimate.to_bits(), b.estimate.to_bits());
    assert_eq!(a.std_error.to_bits(), b.std_error.to_bits());
    let c = check_laplace(&ScalarField::indicator(0.3), &w, 10_000, 43).unwrap();
    assert_ne!(a.estimate.to_bits(), c.estimate.to_bits());
}

#[test]
fn sample_index_fixes_the_configuration() {
    let w = window(&[2.0, 2.0]);
    // out-of-order access gives the same configurations
    let forward: Vec<_> = (0..50).map(|i| sample_configuration(&w, 7, i)).collect();
    for i in (0..50).rev() {
        assert_eq!(sample_configuration(&w, 7, i), forward[i as usize]);
    }
}

#[test]
fn gaussian_bump_laplace_within_three_sigma() {
    let w = window(&[2.0, 1.5]);
    let r = check_laplace(&ScalarField::gaussian(0.5, 0.4), &w, 20_000, 3).unwrap();
    assert!(r.covers(3.0), "{r:?}");
}

#[test]
fn local_expansion_examples() {
    let w = window(&[2.0]);
    let r = check_local_expansion(&LocalFunctional::CountEquals(2), &w, 20_000, 4, 64).unwrap();
    assert!((r.reference - (-2.0f64).exp() * 2.0).abs() < 1e-14);
    assert!(r.covers(3.0), "{r:?}");
    assert!(r.tail_bound.unwrap() < 1e-12 * r.reference);

    let one = LocalFunctional::Polynomial { poly: Quadratic::CONST, phi: IND };
    let r = check_local_expansion(&one, &w, 10_000, 4, 64).unwrap();
    assert_eq!(r.estimate, 1.0);
    assert!((r.reference - 1.0).abs() < 1e-13);
}

#[test]
fn mecke_second_order_matches_factorial_moment() {
    let w = window(&[1.0, 2.0]);
    let f = MeckeFunction { g: IND, h: Quadratic::CONST, phi: IND };
    let r = check_mecke(2, &f, &w, 20_000, 8).unwrap();
    assert!((r.reference - 2.0).abs() < 1e-12);
    assert!(r.covers(3.0), "{r:?}");
    assert_eq!(r.rhs_std_error, Some(0.0));
}

#[test]
fn mecke_third_order_with_gaussian_weights() {
    let w = window(&[1.5, 1.5]);
    let f = MeckeFunction {
        g: ScalarField::gaussian(1.0, 0.6),
        h: Quadratic([1.0, 0.5, 0.1]),
        phi: ScalarField::gaussian(0.8, 0.5),
    };
    let r = check_mecke(3, &f, &w, 20_000, 9).unwrap();
    assert!(r.covers(3.5), "{r:?}");
    assert!(r.pooled_z().unwrap() < 3.5, "{r:?}");
}

#[test]
fn first_order_mecke_agrees_with_campbell() {
    let w = window(&[2.0]);
    let g = ScalarField::gaussian(1.0, 0.5);
    let mecke = check_mecke(1, &MeckeFunction { g, h: Quadratic::CONST, phi: IND }, &w, 20_000, 10).unwrap();
    let campbell =
        check_local_expansion(&LocalFunctional::Polynomial { poly: Quadratic::LINEAR, phi: g }, &w, 20_000, 11, 64)
            .unwrap();
    assert!((mecke.reference - campbell.reference).abs() < 1e-12);
    let pooled = (mecke.std_error.powi(2) + campbell.std_error.powi(2)).sqrt();
    assert!((mecke.estimate - campbell.estimate).abs() <= 3.0 * pooled);
}

#[test]
fn invalid_inputs_are_rejected() {
    let w = window(&[1.0]);
    assert!(check_laplace(&ScalarField::gaussian(1.0, 0.0), &w, 10_000, 0).is_err());
    assert!(check_laplace(&ScalarField::indicator(f64::INFINITY), &w, 10_000, 0).is_err());
    assert!(check_local_expansion(&LocalFunctional::CountEquals(1), &w, 9_999, 0, 64).is_err());
}
