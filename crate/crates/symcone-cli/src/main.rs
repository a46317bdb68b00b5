//! `symcone`: distances, means, geodesics, uniqueness classification,
//! projection-lattice utilities, and isometry factorization on symmetric
//! cones, with JSON input and output.
//!
//! Exit codes: 0 success, 1 invalid input, 2 numerical failure. Errors are
//! reported as JSON on standard error. All floating-point output carries 17
//! significant digits, enough to reparse bit-exactly.

mod output;

use std::io::Read as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde_json::{json, Value};

use symcone::algebra::quadratic_rep;
use symcone::diagnostics;
use symcone::error::Error;
use symcone::geometry;
use symcone::json as sjson;
use symcone::metrics::{self, MetricKind, Ray};
use symcone::morphisms::{
    build_isometry, factor_hilbert_isometry, factor_thompson_isometry,
    linearize_hilbert_isometry, linearize_thompson_isometry, BuiltIsometry, FactorConfig,
};
use symcone::projections::{
    induced_projection_map, orthogonality_chain, simplex_membership, verify_orthoisomorphism,
    OrthogonalSimplex, SimplexPosition,
};
use symcone::sampling;
use symcone::spectral;
use symcone::{Element64, Ray64};

#[derive(Parser)]
#[command(name = "symcone", version, about = "Hilbert and Thompson metric geometry on symmetric cones")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Write output to this file instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MetricArg {
    #[value(alias = "t")]
    Thompson,
    #[value(alias = "h")]
    Hilbert,
}

impl From<MetricArg> for MetricKind {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Thompson => MetricKind::Thompson,
            MetricArg::Hilbert => MetricKind::Hilbert,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Thompson or Hilbert distance between two interior elements
    Dist {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value = "thompson")]
        metric: MetricArg,
    },
    /// The gauge M(a/b)
    Gauge { a: String, b: String },
    /// Geometric mean a # b
    Mean { a: String, b: String },
    /// Sample the geodesic from a to b (JSON lines; one row per point)
    Geodesic {
        a: String,
        b: String,
        /// Number of segments; emits n+1 rows at t = 0, 1/n, ..., 1
        #[arg(long, default_value_t = 10)]
        n: u32,
        /// Evaluate at a single parameter instead of sampling
        #[arg(long)]
        t: Option<f64>,
    },
    /// Geodesic uniqueness classification
    Classify {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value = "thompson")]
        metric: MetricArg,
    },
    /// Alternative Thompson midpoint witness for a non-unique pair
    Witness { a: String, b: String },
    /// Rescaled-distance table d_n for n = 1, 2, 4, ..., 2^k (JSON lines)
    Convergence {
        a: String,
        b: String,
        /// Largest exponent k
        #[arg(long, default_value_t = 12)]
        n: u32,
        #[arg(long, value_enum, default_value = "thompson")]
        metric: MetricArg,
    },
    /// Linearize a descriptor-built isometry (normalized to fix the unit)
    Linearize {
        /// Isometry descriptor file or inline JSON
        #[arg(long)]
        map: String,
    },
    /// Factor a descriptor-built isometry back into canonical parameters
    Factorize {
        #[arg(long)]
        map: String,
        /// Must agree with the descriptor metric when given
        #[arg(long, value_enum)]
        metric: Option<MetricArg>,
    },
    /// Induced projection map of a Hilbert isometry on sampled projections
    Theta {
        #[arg(long)]
        map: String,
        /// Projections to map (defaults to seeded samples)
        projections: Vec<String>,
        /// Number of sampled projections when none are given
        #[arg(long, default_value_t = 6)]
        n: u32,
        #[arg(long, default_value_t = 2026)]
        seed: u64,
    },
    /// Orthogonality chain between two projections
    Chain { p: String, q: String },
    /// Locate a point relative to an orthogonal simplex
    Simplex {
        p1: String,
        p2: String,
        p3: String,
        a: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Run the property suites (JSON lines; one row per check)
    Verify {
        #[arg(long, default_value_t = 2026)]
        seed: u64,
        /// Run only checks whose name contains this substring
        #[arg(long)]
        check: Option<String>,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResidualExceeded { .. }
        | Error::NotAnIsometry(_)
        | Error::EigenFailure(_)
        | Error::UnrepresentableIso(_)
        | Error::NotOrthoisomorphism(_)
        | Error::ChainNotFound { .. } => 2,
        _ => 1,
    }
}

fn read_source(source: &str) -> Result<Value, Error> {
    let text = if source == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Encoding(format!("stdin: {e}")))?;
        buf
    } else if std::path::Path::new(source).is_file() {
        std::fs::read_to_string(source).map_err(|e| Error::Encoding(format!("{source}: {e}")))?
    } else {
        source.to_string()
    };
    serde_json::from_str(&text).map_err(|e| Error::Encoding(format!("invalid JSON: {e}")))
}

fn read_element(source: &str) -> Result<Element64, Error> {
    sjson::element_from_value(&read_source(source)?)
}

fn read_descriptor(source: &str) -> Result<symcone::IsometryDescriptor64, Error> {
    sjson::isometry_from_value(&read_source(source)?)
}

struct Sink {
    target: Option<PathBuf>,
    lines: Vec<String>,
}

impl Sink {
    fn new(target: Option<PathBuf>) -> Self {
        Sink {
            target,
            lines: Vec::new(),
        }
    }

    fn emit(&mut self, v: &Value) -> Result<(), Error> {
        self.lines.push(output::to_sci_string(v)?);
        Ok(())
    }

    fn finish(self) -> Result<(), Error> {
        let text = self.lines.join("\n") + "\n";
        match &self.target {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| Error::Encoding(format!("{}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn normalized_point_map(
    built: &BuiltIsometry<f64>,
) -> Result<impl Fn(&Element64) -> Result<Element64, Error> + '_, Error> {
    let e = Element64::unit(built.descriptor().b.algebra());
    let fe = built.apply_point(&e)?;
    let scale = spectral::inv(&spectral::sqrt(&fe)?)?;
    Ok(move |a: &Element64| quadratic_rep(&scale, &built.apply_point(a)?))
}

fn normalized_ray_map(
    built: &BuiltIsometry<f64>,
) -> Result<impl Fn(&Ray64) -> Result<Ray64, Error> + '_, Error> {
    let alg = built.descriptor().b.algebra().clone();
    let fe = built.apply_ray(&Ray::new(&Element64::unit(&alg))?)?;
    let scale = spectral::inv(&spectral::sqrt(fe.representative())?)?;
    Ok(move |a: &Ray64| Ray::new(&quadratic_rep(&scale, built.apply_ray(a)?.representative())?))
}

fn run(cli: Cli) -> Result<(), (Error, i32)> {
    let mut sink = Sink::new(cli.output.clone());
    let fail = |e: Error| {
        let code = exit_code(&e);
        (e, code)
    };

    match cli.cmd {
        Cmd::Dist { a, b, metric } => {
            let a = read_element(&a).map_err(fail)?;
            let b = read_element(&b).map_err(fail)?;
            let (name, d) = match metric.into() {
                MetricKind::Thompson => (
                    "thompson",
                    metrics::thompson_distance(&a, &b).map_err(fail)?,
                ),
                MetricKind::Hilbert => (
                    "hilbert",
                    metrics::hilbert_distance_elements(&a, &b).map_err(fail)?,
                ),
            };
            sink.emit(&json!({"metric": name, "distance": d})).map_err(fail)?;
        }
        Cmd::Gauge { a, b } => {
            let a = read_element(&a).map_err(fail)?;
            let b = read_element(&b).map_err(fail)?;
            let g = metrics::gauge(&a, &b).map_err(fail)?;
            sink.emit(&json!({"gauge": g})).map_err(fail)?;
        }
        Cmd::Mean { a, b } => {
            let a = read_element(&a).map_err(fail)?;
            let b = read_element(&b).map_err(fail)?;
            let m = geometry::geometric_mean(&a, &b).map_err(fail)?;
            sink.emit(&sjson::element_to_value(&m)).map_err(fail)?;
        }
        Cmd::Geodesic { a, b, n, t } => {
            let a = read_element(&a).map_err(fail)?;
            let b = read_element(&b).map_err(fail)?;
            let params: Vec<f64> = match t {
                Some(t) => vec![t],
                None => {
                    if n == 0 {
                        return Err(fail(Error::InvalidArgument(
                            "geodesic sampling needs n >= 1".into(),
                        )));
                    }
                    (0..=n).map(|i| i as f64 / n as f64).collect()
                }
            };
            for t in params {
                let point = geometry::geodesic_point(&a, &b, t).map_err(fail)?;
                let d = metrics::thompson_distance(&a, &point).map_err(fail)?;
                sink.emit(&json!({
                    "t": t,
                    "point": sjson::element_to_value(&point),
                    "dist_from_a": d,
                }))
                .map_err(fail)?;
            }
        }
        Cmd::Classify { a, b, metric } => {
            let a = read_element(&a).map_err(fail)?;
            let b = read_element(&b).map_err(fail)?;
            let cls = geometry::classify_geodesic(&a, &b, metric.into()).map_err(fail)?;
            sink.emit(&json!({
                "unique": cls.unique,
                "spectrum": cls.spectrum_points,
                "witness": cls
                    .witness
                    .as_ref()
                    .map(sjson::element_to_value)
                    .unwrap_or(Value::Null),
            }))
            .map_err(fail)?;
        }
        Cmd::Witness { a, b } => {
            let a = read_element(&a).map_err(fail)?;
            let b = read_element(&b).map_err(fail)?;
            let w = geometry::nonunique_midpoint_witness(&a, &b).map_err(fail)?;
            sink.emit(&sjson::element_to_value(&w)).map_err(fail)?;
        }
        Cmd::Convergence { a, b, n, metric } => {
            let a = read_element(&a).map_err(fail)?;
            let b = read_element(&b).map_err(fail)?;
            let kind: MetricKind = metric.into();
            let limit = match kind {
                MetricKind::Thompson => {
                    spectral::norm(&a.sub(&b), spectral::NormKind::OrderUnit)
                }
                MetricKind::Hilbert => {
                    metrics::QuotientClass::new(&a.sub(&b)).variation_norm()
                }
            };
            for k in 0..=n {
                let steps = 1u32 << k.min(31);
                let d = metrics::scaled_distance(&a, &b, steps, kind).map_err(fail)?;
                sink.emit(&json!({
                    "n": steps,
                    "d_n": d,
                    "limit": limit,
                    "error": (d - limit).abs(),
                }))
                .map_err(fail)?;
            }
        }
        Cmd::Linearize { map } => {
            let desc = read_descriptor(&map).map_err(fail)?;
            let built = build_isometry(&desc).map_err(fail)?;
            let alg = desc.b.algebra().clone();
            let cfg = FactorConfig::default();
            let lin = match desc.metric {
                MetricKind::Thompson => {
                    let g = normalized_point_map(&built).map_err(fail)?;
                    linearize_thompson_isometry(&alg, g, &cfg).map_err(fail)?
                }
                MetricKind::Hilbert => {
                    let g = normalized_ray_map(&built).map_err(fail)?;
                    linearize_hilbert_isometry(&alg, g, &cfg).map_err(fail)?
                }
            };
            let rows: Vec<Vec<f64>> = lin.matrix.to_rows();
            sink.emit(&json!({
                "metric": match lin.metric { MetricKind::Thompson => "T", MetricKind::Hilbert => "H" },
                "matrix": rows,
                "residual": lin.residual,
            }))
            .map_err(fail)?;
        }
        Cmd::Factorize { map, metric } => {
            let desc = read_descriptor(&map).map_err(fail)?;
            if let Some(m) = metric {
                if MetricKind::from(m) != desc.metric {
                    return Err(fail(Error::InvalidArgument(
                        "--metric disagrees with the descriptor file".into(),
                    )));
                }
            }
            let built = build_isometry(&desc).map_err(fail)?;
            let alg = desc.b.algebra().clone();
            let cfg = FactorConfig::default();
            let recovered = match desc.metric {
                MetricKind::Thompson => {
                    factor_thompson_isometry(&alg, |a| built.apply_point(a), &cfg).map_err(fail)?
                }
                MetricKind::Hilbert => {
                    factor_hilbert_isometry(&alg, |a| built.apply_ray(a), &cfg).map_err(fail)?
                }
            };
            sink.emit(&sjson::isometry_to_value(&recovered)).map_err(fail)?;
        }
        Cmd::Theta {
            map,
            projections,
            n,
            seed,
        } => {
            let desc = read_descriptor(&map).map_err(fail)?;
            if desc.metric != MetricKind::Hilbert {
                return Err(fail(Error::InvalidArgument(
                    "theta needs a Hilbert descriptor".into(),
                )));
            }
            let built = build_isometry(&desc).map_err(fail)?;
            let alg = desc.b.algebra().clone();
            let g = normalized_ray_map(&built).map_err(fail)?;
            let mut theta = induced_projection_map(&alg, g).map_err(fail)?;
            let samples: Vec<Element64> = if projections.is_empty() {
                let mut rng = ChaCha12Rng::seed_from_u64(seed);
                (0..n.max(2))
                    .map(|_| sampling::random_nontrivial_projection(&alg, &mut rng))
                    .collect()
            } else {
                projections
                    .iter()
                    .map(|s| read_element(s))
                    .collect::<Result<_, _>>()
                    .map_err(fail)?
            };
            let mut mapped = Vec::new();
            for p in &samples {
                let q = theta.get(p).map_err(fail)?;
                mapped.push(json!({
                    "p": sjson::element_to_value(p),
                    "theta_p": sjson::element_to_value(&q),
                }));
            }
            let pairs: Vec<(Element64, Element64)> = samples
                .iter()
                .zip(samples.iter().cycle().skip(1))
                .map(|(x, y)| (x.clone(), y.clone()))
                .collect();
            let report = verify_orthoisomorphism(&mut theta, &pairs).map_err(fail)?;
            sink.emit(&json!({
                "pairs": mapped,
                "report": sjson::ortho_report_to_value(&report),
            }))
            .map_err(fail)?;
        }
        Cmd::Chain { p, q } => {
            let p = read_element(&p).map_err(fail)?;
            let q = read_element(&q).map_err(fail)?;
            let chain = orthogonality_chain(&p, &q).map_err(fail)?;
            sink.emit(&sjson::chain_to_value(&chain)).map_err(fail)?;
        }
        Cmd::Simplex { p1, p2, p3, a, tol } => {
            let p1 = read_element(&p1).map_err(fail)?;
            let p2 = read_element(&p2).map_err(fail)?;
            let p3 = read_element(&p3).map_err(fail)?;
            let a = read_element(&a).map_err(fail)?;
            let s = OrthogonalSimplex::new(p1, p2, p3).map_err(fail)?;
            let m = simplex_membership(&s, &a, tol).map_err(fail)?;
            sink.emit(&json!({
                "position": match m.position {
                    SimplexPosition::Interior => "interior",
                    SimplexPosition::BoundaryFace => "boundary-face",
                    SimplexPosition::Outside => "outside",
                },
                "barycentric": m.barycentric,
            }))
            .map_err(fail)?;
        }
        Cmd::Verify { seed, check } => {
            let mut all_pass = true;
            for outcome in diagnostics::run_all_checks(seed) {
                if let Some(filter) = &check {
                    if !outcome.name.contains(filter.as_str()) {
                        continue;
                    }
                }
                all_pass &= outcome.pass;
                sink.emit(&json!({
                    "check": outcome.name,
                    "pass": outcome.pass,
                    "max_err": outcome.max_err,
                    "cases": outcome.cases,
                    "detail": outcome.detail,
                }))
                .map_err(fail)?;
            }
            sink.finish().map_err(fail)?;
            if !all_pass {
                return Err((
                    Error::ResidualExceeded {
                        stage: "verification suite",
                        residual: f64::NAN,
                        threshold: f64::NAN,
                    },
                    2,
                ));
            }
            return Ok(());
        }
    }
    sink.finish().map_err(fail)
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err((e, code)) => {
            let payload = sjson::error_to_value(&e);
            eprintln!(
                "{}",
                output::to_sci_string(&payload).unwrap_or_else(|_| e.to_string())
            );
            std::process::exit(code);
        }
    }
}
