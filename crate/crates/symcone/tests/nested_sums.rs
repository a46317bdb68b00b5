//! Nested direct sums flow through every layer: spectra, metrics, JSON,
//! isometry construction and factorization.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use symcone::algebra::{AlgebraDescriptor, Element};
use symcone::json::{element_from_value, element_to_value};
use symcone::metrics::{thompson_distance, MetricKind};
use symcone::morphisms::{build_isometry, factor_thompson_isometry, FactorConfig};
use symcone::sampling;
use symcone::spectral::spectral_decomposition;

fn nested() -> AlgebraDescriptor {
    use AlgebraDescriptor::*;
    DirectSum(vec![Sym(2), DirectSum(vec![Vector(2), Spin(2)])])
}

#[test]
fn spectra_and_metrics_on_nested_sums() {
    let alg = nested();
    assert_eq!(alg.rank(), 2 + 2 + 2);
    let mut rng = ChaCha12Rng::seed_from_u64(71);
    for _ in 0..10 {
        let a = sampling::random_element::<f64, _>(&alg, &mut rng, 1.0);
        let frame = spectral_decomposition(&a).unwrap();
        assert!(frame.reconstruct().sub(&a).max_abs_coord() < 1e-10);

        let x = sampling::random_interior::<f64, _>(&alg, &mut rng, 0.8);
        let y = sampling::random_interior::<f64, _>(&alg, &mut rng, 0.8);
        let whole = thompson_distance(&x, &y).unwrap();
        let parts = (0..2)
            .map(|i| thompson_distance(&x.part(i), &y.part(i)).unwrap())
            .fold(0.0f64, f64::max);
        assert!((whole - parts).abs() < 1e-11);
    }
}

#[test]
fn json_roundtrip_on_nested_sums() {
    let alg = nested();
    let mut rng = ChaCha12Rng::seed_from_u64(72);
    let a = sampling::random_element::<f64, _>(&alg, &mut rng, 2.0);
    let text = serde_json::to_string(&element_to_value(&a)).unwrap();
    let back: Element<f64> = element_from_value(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(a.coords(), back.coords());
    assert_eq!(a.algebra(), back.algebra());
}

#[test]
fn thompson_factorization_on_nested_sums() {
    let alg = nested();
    let mut rng = ChaCha12Rng::seed_from_u64(73);
    let cfg = FactorConfig::default();
    for _ in 0..3 {
        let desc = sampling::random_descriptor::<f64, _>(&alg, MetricKind::Thompson, &mut rng);
        let built = build_isometry(&desc).unwrap();
        let rec = factor_thompson_isometry(&alg, |a| built.apply_point(a), &cfg).unwrap();
        assert!(rec.b.approx_eq(&desc.b, 1e-7));
        assert!(rec
            .p
            .as_ref()
            .unwrap()
            .approx_eq(desc.p.as_ref().unwrap(), 1e-7));
        let rebuilt = build_isometry(&rec).unwrap();
        for _ in 0..5 {
            let a = sampling::random_interior::<f64, _>(&alg, &mut rng, 0.8);
            let want = built.apply_point(&a).unwrap();
            let got = rebuilt.apply_point(&a).unwrap();
            assert!(got.sub(&want).max_abs_coord() < 1e-6 * want.max_abs_coord().max(1.0));
        }
    }
}
