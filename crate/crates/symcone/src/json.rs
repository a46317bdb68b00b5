//! Shared JSON encodings for elements, isometry descriptors, chains, and
//! verification reports.
//!
//! Elements: `{"algebra":{"kind":"sym","n":3},"data":[[..],[..],[..]]}`;
//! `{"kind":"vector","n":k}` carries a flat array, `{"kind":"spin","dim":d}`
//! carries `{"h":[..],"t":s}`, and `{"kind":"sum","parts":[..]}` carries a
//! list of component data blocks.

use serde_json::{json, Map, Value};

use crate::algebra::{AlgebraDescriptor, Element};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::morphisms::{IsometryDescriptor, JordanIsoRep};
use crate::projections::{OrthoReport, ProjectionChain};
use crate::scalar::Real;
use crate::MetricKind;

fn err(msg: impl Into<String>) -> Error {
    Error::Encoding(msg.into())
}

fn as_f64(v: &Value, what: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| err(format!("{what}: expected a number")))
}

fn num<T: Real>(x: T) -> Value {
    json!(x.to_f64().expect("finite scalar"))
}

pub fn descriptor_to_value(alg: &AlgebraDescriptor) -> Value {
    match alg {
        AlgebraDescriptor::Vector(n) => json!({"kind": "vector", "n": n}),
        AlgebraDescriptor::Sym(n) => json!({"kind": "sym", "n": n}),
        AlgebraDescriptor::Spin(d) => json!({"kind": "spin", "dim": d}),
        AlgebraDescriptor::DirectSum(parts) => {
            json!({"kind": "sum", "parts": parts.iter().map(descriptor_to_value).collect::<Vec<_>>()})
        }
    }
}

pub fn descriptor_from_value(v: &Value) -> Result<AlgebraDescriptor> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| err("algebra: missing kind"))?;
    let dim_field = |name: &str| -> Result<usize> {
        v.get(name)
            .and_then(Value::as_u64)
            .map(|x| x as usize)
            .ok_or_else(|| err(format!("algebra: missing {name}")))
    };
    let alg = match kind {
        "vector" => AlgebraDescriptor::Vector(dim_field("n")?),
        "sym" => AlgebraDescriptor::Sym(dim_field("n")?),
        "spin" => AlgebraDescriptor::Spin(dim_field("dim")?),
        "sum" => {
            let parts = v
                .get("parts")
                .and_then(Value::as_array)
                .ok_or_else(|| err("algebra: sum needs parts"))?;
            AlgebraDescriptor::DirectSum(
                parts.iter().map(descriptor_from_value).collect::<Result<_>>()?,
            )
        }
        other => return Err(err(format!("algebra: unknown kind {other}"))),
    };
    alg.validate()?;
    Ok(alg)
}

fn data_to_value<T: Real>(alg: &AlgebraDescriptor, coords: &[T], off: usize) -> Value {
    match alg {
        AlgebraDescriptor::Vector(n) => {
            Value::Array((0..*n).map(|i| num(coords[off + i])).collect())
        }
        AlgebraDescriptor::Sym(n) => Value::Array(
            (0..*n)
                .map(|i| {
                    Value::Array((0..*n).map(|j| num(coords[off + i * n + j])).collect())
                })
                .collect(),
        ),
        AlgebraDescriptor::Spin(d) => {
            json!({
                "h": (0..*d).map(|i| num(coords[off + i])).collect::<Vec<_>>(),
                "t": num(coords[off + d]),
            })
        }
        AlgebraDescriptor::DirectSum(parts) => {
            let mut out = Vec::with_capacity(parts.len());
            let mut o = off;
            for p in parts {
                out.push(data_to_value(p, coords, o));
                o += p.storage_dim();
            }
            Value::Array(out)
        }
    }
}

fn data_from_value<T: Real>(
    alg: &AlgebraDescriptor,
    v: &Value,
    coords: &mut Vec<T>,
) -> Result<()> {
    match alg {
        AlgebraDescriptor::Vector(n) => {
            let arr = v.as_array().ok_or_else(|| err("vector data: expected array"))?;
            if arr.len() != *n {
                return Err(err(format!("vector data: expected {n} entries")));
            }
            for x in arr {
                coords.push(T::of(as_f64(x, "vector entry")?));
            }
        }
        AlgebraDescriptor::Sym(n) => {
            let rows = v.as_array().ok_or_else(|| err("sym data: expected rows"))?;
            if rows.len() != *n {
                return Err(err(format!("sym data: expected {n} rows")));
            }
            for row in rows {
                let row = row.as_array().ok_or_else(|| err("sym data: expected row array"))?;
                if row.len() != *n {
                    return Err(err(format!("sym data: expected {n} columns")));
                }
                for x in row {
                    coords.push(T::of(as_f64(x, "sym entry")?));
                }
            }
        }
        AlgebraDescriptor::Spin(d) => {
            let h = v
                .get("h")
                .and_then(Value::as_array)
                .ok_or_else(|| err("spin data: needs h"))?;
            if h.len() != *d {
                return Err(err(format!("spin data: h needs {d} entries")));
            }
            for x in h {
                coords.push(T::of(as_f64(x, "spin h entry")?));
            }
            coords.push(T::of(as_f64(
                v.get("t").ok_or_else(|| err("spin data: needs t"))?,
                "spin t",
            )?));
        }
        AlgebraDescriptor::DirectSum(parts) => {
            let arr = v
                .as_array()
                .ok_or_else(|| err("sum data: expected component list"))?;
            if arr.len() != parts.len() {
                return Err(err("sum data: component count mismatch"));
            }
            for (p, x) in parts.iter().zip(arr) {
                data_from_value(p, x, coords)?;
            }
        }
    }
    Ok(())
}

pub fn element_to_value<T: Real>(a: &Element<T>) -> Value {
    json!({
        "algebra": descriptor_to_value(a.algebra()),
        "data": data_to_value(a.algebra(), a.coords(), 0),
    })
}

pub fn element_from_value<T: Real>(v: &Value) -> Result<Element<T>> {
    let alg = descriptor_from_value(
        v.get("algebra").ok_or_else(|| err("element: missing algebra"))?,
    )?;
    let mut coords = Vec::with_capacity(alg.storage_dim());
    data_from_value(
        &alg,
        v.get("data").ok_or_else(|| err("element: missing data"))?,
        &mut coords,
    )?;
    Element::new(alg, coords)
}

fn matrix_to_value<T: Real>(m: &Matrix<T>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|&x| num(x)).collect()))
            .collect(),
    )
}

fn matrix_from_value<T: Real>(v: &Value, what: &str) -> Result<Matrix<T>> {
    let rows = v.as_array().ok_or_else(|| err(format!("{what}: expected rows")))?;
    let mut data = Vec::new();
    for row in rows {
        let row = row
            .as_array()
            .ok_or_else(|| err(format!("{what}: expected row array")))?;
        data.push(
            row.iter()
                .map(|x| as_f64(x, what).map(T::of))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Matrix::from_rows(data)
}

pub fn iso_to_value<T: Real>(rep: &JordanIsoRep<T>) -> Value {
    match rep {
        JordanIsoRep::Identity => json!({"kind": "identity"}),
        JordanIsoRep::OrthogonalConjugation(u) => {
            json!({"kind": "orthogonal_conjugation", "u": matrix_to_value(u)})
        }
        JordanIsoRep::SpinOrthogonal(u) => {
            json!({"kind": "spin_orthogonal", "u": matrix_to_value(u)})
        }
        JordanIsoRep::Permutation(perm) => json!({"kind": "permutation", "perm": perm}),
        JordanIsoRep::SumIso { perm, parts } => json!({
            "kind": "sum_iso",
            "perm": perm,
            "parts": parts.iter().map(iso_to_value).collect::<Vec<_>>(),
        }),
    }
}

pub fn iso_from_value<T: Real>(v: &Value) -> Result<JordanIsoRep<T>> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| err("iso: missing kind"))?;
    let perm_field = || -> Result<Vec<usize>> {
        v.get("perm")
            .and_then(Value::as_array)
            .ok_or_else(|| err("iso: missing perm"))?
            .iter()
            .map(|x| {
                x.as_u64()
                    .map(|i| i as usize)
                    .ok_or_else(|| err("iso: perm entries must be indices"))
            })
            .collect()
    };
    match kind {
        "identity" => Ok(JordanIsoRep::Identity),
        "orthogonal_conjugation" => Ok(JordanIsoRep::OrthogonalConjugation(matrix_from_value(
            v.get("u").ok_or_else(|| err("iso: missing u"))?,
            "iso u",
        )?)),
        "spin_orthogonal" => Ok(JordanIsoRep::SpinOrthogonal(matrix_from_value(
            v.get("u").ok_or_else(|| err("iso: missing u"))?,
            "iso u",
        )?)),
        "permutation" => Ok(JordanIsoRep::Permutation(perm_field()?)),
        "sum_iso" => {
            let parts = v
                .get("parts")
                .and_then(Value::as_array)
                .ok_or_else(|| err("iso: sum_iso needs parts"))?
                .iter()
                .map(iso_from_value)
                .collect::<Result<_>>()?;
            Ok(JordanIsoRep::SumIso {
                perm: perm_field()?,
                parts,
            })
        }
        other => Err(err(format!("iso: unknown kind {other}"))),
    }
}

pub fn isometry_to_value<T: Real>(d: &IsometryDescriptor<T>) -> Value {
    json!({
        "metric": match d.metric { MetricKind::Thompson => "T", MetricKind::Hilbert => "H" },
        "b": element_to_value(&d.b),
        "p": d.p.as_ref().map(element_to_value).unwrap_or(Value::Null),
        "epsilon": d.epsilon.map(|e| json!(e)).unwrap_or(Value::Null),
        "iso": iso_to_value(&d.iso),
    })
}

pub fn isometry_from_value<T: Real>(v: &Value) -> Result<IsometryDescriptor<T>> {
    let metric = match v.get("metric").and_then(Value::as_str) {
        Some("T") | Some("thompson") => MetricKind::Thompson,
        Some("H") | Some("hilbert") => MetricKind::Hilbert,
        _ => return Err(err("isometry: metric must be \"T\" or \"H\"")),
    };
    let b = element_from_value(v.get("b").ok_or_else(|| err("isometry: missing b"))?)?;
    let p = match v.get("p") {
        None | Some(Value::Null) => None,
        Some(pv) => Some(element_from_value(pv)?),
    };
    let epsilon = match v.get("epsilon") {
        None | Some(Value::Null) => None,
        Some(ev) => {
            let e = ev
                .as_i64()
                .ok_or_else(|| err("isometry: epsilon must be 1 or -1"))?;
            if e != 1 && e != -1 {
                return Err(err("isometry: epsilon must be 1 or -1"));
            }
            Some(e as i8)
        }
    };
    let iso = iso_from_value(v.get("iso").ok_or_else(|| err("isometry: missing iso"))?)?;
    Ok(IsometryDescriptor {
        metric,
        b,
        p,
        epsilon,
        iso,
    })
}

pub fn chain_to_value<T: Real>(chain: &ProjectionChain<T>) -> Value {
    json!({
        "chain": chain.entries().iter().map(element_to_value).collect::<Vec<_>>(),
    })
}

pub fn ortho_report_to_value(report: &OrthoReport) -> Value {
    json!({
        "pass": report.pass(),
        "pairs": report
            .pairs
            .iter()
            .map(|p| {
                json!({
                    "orthogonality_forward": p.orthogonality_forward,
                    "orthogonality_backward": p.orthogonality_backward,
                    "complement_preserved": p.complement_preserved,
                    "commutation_preserved": p.commutation_preserved,
                })
            })
            .collect::<Vec<_>>(),
    })
}

/// Wraps a library error as the JSON payload emitted on standard error by
/// the CLI.
pub fn error_to_value(e: &Error) -> Value {
    let mut m = Map::new();
    m.insert("error".into(), Value::String(e.to_string()));
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;
    use AlgebraDescriptor::*;

    #[test]
    fn element_json_roundtrip_is_bit_exact() {
        let mut rng = ChaCha12Rng::seed_from_u64(61);
        for alg in [
            Vector(3),
            Sym(3),
            Spin(4),
            DirectSum(vec![Sym(2), Spin(2), Vector(2)]),
        ] {
            for _ in 0..10 {
                let a = sampling::random_element::<f64, _>(&alg, &mut rng, 3.0);
                let text = serde_json::to_string(&element_to_value(&a)).unwrap();
                let back: Element<f64> =
                    element_from_value(&serde_json::from_str(&text).unwrap()).unwrap();
                assert_eq!(a.coords(), back.coords());
                assert_eq!(a.algebra(), back.algebra());
            }
        }
    }

    #[test]
    fn element_json_shape_is_stable() {
        let a = Element::new(Sym(2), vec![1.0, 0.0, 0.0, 2.0]).unwrap();
        let v = element_to_value(&a);
        assert_eq!(v["algebra"]["kind"], "sym");
        assert_eq!(v["algebra"]["n"], 2);
        assert_eq!(v["data"][1][1], 2.0);

        let s = Element::new(Spin(2), vec![0.5, -0.5, 1.0]).unwrap();
        let v = element_to_value(&s);
        assert_eq!(v["algebra"]["dim"], 2);
        assert_eq!(v["data"]["h"][0], 0.5);
        assert_eq!(v["data"]["t"], 1.0);
    }

    #[test]
    fn descriptor_json_roundtrip() {
        let mut rng = ChaCha12Rng::seed_from_u64(62);
        let alg = DirectSum(vec![Sym(3), Sym(3)]);
        for metric in [MetricKind::Thompson, MetricKind::Hilbert] {
            let d = sampling::random_descriptor::<f64, _>(&alg, metric, &mut rng);
            let v = isometry_to_value(&d);
            let back: IsometryDescriptor<f64> = isometry_from_value(&v).unwrap();
            assert_eq!(back.metric, d.metric);
            assert_eq!(back.epsilon, d.epsilon);
            assert!(back.b.approx_eq(&d.b, 0.0));
            match (&back.p, &d.p) {
                (Some(x), Some(y)) => assert!(x.approx_eq(y, 0.0)),
                (None, None) => {}
                _ => panic!("p mismatch"),
            }
            let m1 = back.iso.matrix(&alg).unwrap();
            let m2 = d.iso.matrix(&alg).unwrap();
            assert!(m1.sub(&m2).max_abs() == 0.0);
        }
    }

    #[test]
    fn rejects_malformed_input() {
        let bad = serde_json::json!({"algebra": {"kind": "sym"}, "data": []});
        assert!(element_from_value::<f64>(&bad).is_err());
        let bad = serde_json::json!({"algebra": {"kind": "sym", "n": 2}, "data": [[1.0, 0.0]]});
        assert!(element_from_value::<f64>(&bad).is_err());
        let bad = serde_json::json!({"algebra": {"kind": "nope", "n": 2}, "data": []});
        assert!(element_from_value::<f64>(&bad).is_err());
    }
}
