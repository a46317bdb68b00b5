//! Property tests over randomized elements of all algebra kinds.

use proptest::prelude::*;

use symcone::algebra::{jordan_product, quadratic_rep, AlgebraDescriptor, Element};
use symcone::diagnostics::gauge_bisection;
use symcone::geometry::geometric_mean;
use symcone::json::{element_from_value, element_to_value};
use symcone::metrics::{
    gauge, hilbert_distance_elements, normalize_ray, thompson_distance,
};
use symcone::spectral::{self, spectral_decomposition};

fn algebras() -> Vec<AlgebraDescriptor> {
    use AlgebraDescriptor::*;
    vec![
        Vector(3),
        Sym(2),
        Sym(3),
        Spin(3),
        DirectSum(vec![Sym(2), Spin(2)]),
    ]
}

fn element_of(alg: AlgebraDescriptor) -> impl Strategy<Value = Element<f64>> {
    let dim = alg.storage_dim();
    proptest::collection::vec(-1.2f64..1.2, dim)
        .prop_map(move |c| Element::new(alg.clone(), c).expect("finite coords"))
}

fn any_element() -> impl Strategy<Value = Element<f64>> {
    proptest::sample::select(algebras()).prop_flat_map(element_of)
}

fn interior_pair() -> impl Strategy<Value = (Element<f64>, Element<f64>)> {
    proptest::sample::select(algebras()).prop_flat_map(|alg| {
        (element_of(alg.clone()), element_of(alg))
            .prop_map(|(x, y)| (spectral::exp(&x.scale(0.7)), spectral::exp(&y.scale(0.7))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn spectral_frame_reconstructs(a in any_element()) {
        let frame = spectral_decomposition(&a).unwrap();
        let scale = a.max_abs_coord().max(1.0);
        prop_assert!(frame.reconstruct().sub(&a).max_abs_coord() <= 1e-8 * scale);
        let mut sum = Element::zero(a.algebra());
        for q in frame.idempotents() {
            prop_assert!(jordan_product(q, q).unwrap().sub(q).max_abs_coord() <= 1e-8);
            sum = sum.add(q);
        }
        prop_assert!(sum.sub(&Element::unit(a.algebra())).max_abs_coord() <= 1e-8);
    }

    #[test]
    fn log_inverts_exp(a in any_element()) {
        let back = spectral::log(&spectral::exp(&a)).unwrap();
        prop_assert!(back.sub(&a).max_abs_coord() <= 1e-9 * a.max_abs_coord().max(1.0));
    }

    #[test]
    fn thompson_metric_axioms((a, b) in interior_pair()) {
        let dab = thompson_distance(&a, &b).unwrap();
        let dba = thompson_distance(&b, &a).unwrap();
        prop_assert!((dab - dba).abs() <= 1e-9);
        prop_assert!(thompson_distance(&a, &a).unwrap() <= 1e-9);
        prop_assert!(dab >= 0.0);
    }

    #[test]
    fn hilbert_is_projective(((a, b), lambda) in (interior_pair(), 0.1f64..6.0)) {
        let d = hilbert_distance_elements(&a, &b).unwrap();
        let d_scaled = hilbert_distance_elements(&a.scale(lambda), &b).unwrap();
        prop_assert!((d - d_scaled).abs() <= 1e-9);
        let ra = normalize_ray(&a).unwrap();
        let ra2 = normalize_ray(&a.scale(lambda)).unwrap();
        prop_assert!(ra.approx_eq(&ra2, 1e-9));
    }

    #[test]
    fn mean_solves_symmetry_equation((a, b) in interior_pair()) {
        let m = geometric_mean(&a, &b).unwrap();
        let back = quadratic_rep(&m, &spectral::inv(&a).unwrap()).unwrap();
        let scale = b.max_abs_coord().max(1.0);
        prop_assert!(back.sub(&b).max_abs_coord() <= 1e-8 * scale);
        let swapped = geometric_mean(&b, &a).unwrap();
        prop_assert!(m.sub(&swapped).max_abs_coord() <= 1e-8 * m.max_abs_coord().max(1.0));
    }

    #[test]
    fn json_roundtrip_is_bit_exact(a in any_element()) {
        let text = serde_json::to_string(&element_to_value(&a)).unwrap();
        let back: Element<f64> = element_from_value(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(a.coords(), back.coords());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gauge_agrees_with_bisection_oracle((a, b) in interior_pair()) {
        let spectral_gauge = gauge(&a, &b).unwrap();
        let oracle = gauge_bisection(&a, &b, 60).unwrap();
        prop_assert!((spectral_gauge - oracle).abs() <= 1e-8 * spectral_gauge.max(1.0));
    }
}
