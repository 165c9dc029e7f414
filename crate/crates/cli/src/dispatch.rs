//! Request routing: one JSON request in, one JSON response out.
//!
//! Responses are deterministic: map keys come out sorted (serde_json's
//! default), numeric roots are sorted and printed with fixed
//! 15-significant-digit formatting, and timings are only attached when
//! explicitly requested.

use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use wittkit::almkvist::{EndoClass, SigmaSpec};
use wittkit::error::Error as CoreError;
use wittkit::linsys::{self, LinSys, TransferFunction};
use wittkit::matrix::Matrix;
use wittkit::poly::{self, Poly};
use wittkit::ratfunc::RatFunc;
use wittkit::recseq::RecSeq;
use wittkit::scalar::{Ring, Scalar};
use wittkit::series::TruncSeries;
use wittkit::torified::{self, GrothClass, Measure};
use wittkit::witt::{ghost_inverse, GhostVector, WittElement};
use wittkit::zetapoly::{self, ZetaPolyInput, ZetaPolyResult};

use crate::expr::parse_ratfunc;

/// Session-level defaults, overridable per request.
#[derive(Debug, Clone, Copy)]
pub struct Defaults {
    pub order: usize,
    pub ring: Ring,
    pub tol: f64,
    pub timings: bool,
}

impl Default for Defaults {
    fn default() -> Defaults {
        Defaults { order: wittkit::DEFAULT_ORDER, ring: Ring::Z, tol: 1e-9, timings: false }
    }
}

#[derive(Debug, Deserialize)]
pub struct Request {
    pub command: String,
    #[serde(default)]
    pub args: Value,
    #[serde(default)]
    pub order: Option<usize>,
    #[serde(default)]
    pub ring: Option<Ring>,
    #[serde(default)]
    pub tol: Option<f64>,
}

pub struct CliError {
    pub code: &'static str,
    pub message: String,
}

impl CliError {
    fn parse(message: impl Into<String>) -> CliError {
        CliError { code: "E_PARSE", message: message.into() }
    }

    fn domain(message: impl Into<String>) -> CliError {
        CliError { code: "E_DOMAIN", message: message.into() }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> CliError {
        let code = match e {
            CoreError::RootFindingFailed(_) => "E_NUMERIC",
            _ => "E_DOMAIN",
        };
        CliError { code, message: e.to_string() }
    }
}

type CmdResult = Result<Value, CliError>;

/// Run one request line; the returned flag is the `ok` field.
pub fn run_line(line: &str, defaults: &Defaults) -> (String, bool) {
    let started = std::time::Instant::now();
    let (value, ok) = match serde_json::from_str::<Request>(line) {
        Ok(req) => {
            let order = req.order.unwrap_or(defaults.order);
            let ring = req.ring.unwrap_or(defaults.ring);
            let tol = req.tol.unwrap_or(defaults.tol);
            match dispatch(&req.command, &req.args, order, ring, tol) {
                Ok(result) => (respond_ok(result, order, defaults, started), true),
                Err(err) => (respond_err(err, order, defaults, started), false),
            }
        }
        Err(e) => (
            respond_err(
                CliError::parse(format!("bad request: {}", e)),
                defaults.order,
                defaults,
                started,
            ),
            false,
        ),
    };
    (serde_json::to_string(&value).expect("responses are plain JSON"), ok)
}

fn meta(order: usize, defaults: &Defaults, started: std::time::Instant) -> Value {
    let mut m = Map::new();
    m.insert("order".into(), json!(order));
    if defaults.timings {
        m.insert("elapsed_ms".into(), json!(started.elapsed().as_millis() as u64));
    }
    Value::Object(m)
}

fn respond_ok(result: Value, order: usize, defaults: &Defaults, started: std::time::Instant) -> Value {
    json!({ "ok": true, "result": result, "meta": meta(order, defaults, started) })
}

fn respond_err(err: CliError, order: usize, defaults: &Defaults, started: std::time::Instant) -> Value {
    json!({
        "ok": false,
        "error": { "code": err.code, "message": err.message },
        "meta": meta(order, defaults, started),
    })
}

fn arg<'a>(args: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    args.get(key)
        .ok_or_else(|| CliError::parse(format!("missing argument {:?}", key)))
}

fn from_value<T: serde::de::DeserializeOwned>(v: &Value, what: &str) -> Result<T, CliError> {
    serde_json::from_value(v.clone())
        .map_err(|e| CliError::parse(format!("bad {}: {}", what, e)))
}

fn usize_arg(args: &Value, key: &str) -> Result<usize, CliError> {
    from_value(arg(args, key)?, key)
}

fn bigint_arg(args: &Value, key: &str) -> Result<BigInt, CliError> {
    let s: Scalar = from_value(arg(args, key)?, key)?;
    s.to_bigint()
        .ok_or_else(|| CliError::parse(format!("{} must be an integer", key)))
}

/// A series-valued argument: either an expression literal ("1/(1-2t)") or a
/// series object. Literals are expanded at the request order and coerced to
/// the request ring.
fn series_arg(args: &Value, key: &str, order: usize, ring: Ring) -> Result<TruncSeries, CliError> {
    let v = arg(args, key)?;
    match v {
        Value::String(text) => {
            let rf = parse_ratfunc(text).map_err(CliError::parse)?;
            let series = rf.expand(order).map_err(CliError::from)?;
            series.to_ring(ring).or_else(|_| series.to_ring(Ring::Q)).map_err(CliError::from)
        }
        _ => from_value(v, key),
    }
}

fn witt_arg(args: &Value, key: &str, order: usize, ring: Ring) -> Result<WittElement, CliError> {
    let series = series_arg(args, key, order, ring)?;
    WittElement::new(series).map_err(CliError::from)
}

fn matrix_arg(args: &Value, key: &str, ring: Ring) -> Result<Matrix, CliError> {
    let m: Matrix = from_value(arg(args, key)?, key)?;
    m.to_ring(m.ring().join(ring)).map_err(CliError::from)
}

fn endo_arg(args: &Value, key: &str) -> Result<EndoClass, CliError> {
    let v = arg(args, key)?;
    if v.is_array() {
        let m: Matrix = from_value(v, key)?;
        EndoClass::new(m).map_err(CliError::from)
    } else {
        from_value(v, key)
    }
}

fn recseq_arg(args: &Value, key: &str) -> Result<RecSeq, CliError> {
    from_value(arg(args, key)?, key)
}

/// A system argument: either under `key`, or spread as M/v/c at the top
/// level of `args` (the documented request shape for single-system calls).
fn linsys_arg(args: &Value, key: &str) -> Result<LinSys, CliError> {
    if let Some(v) = args.get(key) {
        return from_value(v, key);
    }
    if args.get("M").is_some() {
        return from_value(args, "system");
    }
    Err(CliError::parse(format!("missing argument {:?} (or inline M/v/c)", key)))
}

fn groth_arg(args: &Value, key: &str) -> Result<GrothClass, CliError> {
    let v = arg(args, key)?;
    if v.is_array() {
        let coeffs: Vec<Scalar> = from_value(v, key)?;
        let ints = coeffs
            .iter()
            .map(|s| s.to_bigint().ok_or_else(|| CliError::parse("class coefficients must be integers")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GrothClass::new(ints))
    } else {
        from_value(v, key)
    }
}

fn measure_arg(args: &Value) -> Result<Measure, CliError> {
    if let Some(v) = args.get("measure") {
        return from_value(v, "measure");
    }
    let m = bigint_arg(args, "m")?;
    let delta = bigint_arg(args, "delta")?;
    Ok(Measure { value: m, delta })
}

fn poly_arg(args: &Value, key: &str) -> Result<Poly, CliError> {
    let v = arg(args, key)?;
    match v {
        Value::String(text) => {
            let rf = parse_ratfunc(text).map_err(CliError::parse)?;
            if !rf.den().is_one() {
                return Err(CliError::parse(format!("{} must be a polynomial", key)));
            }
            Ok(rf.num().clone())
        }
        _ => from_value(v, key),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> CmdResult {
    serde_json::to_value(value).map_err(|e| CliError::domain(e.to_string()))
}

/// Fixed 15-significant-digit scientific formatting; −0 normalizes to 0.
pub fn fmt15(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{:.14e}", x)
}

fn roots_json(roots: &[zetapoly::ComplexApprox]) -> Value {
    Value::Array(
        roots
            .iter()
            .map(|r| {
                json!({
                    "re": fmt15(r.re),
                    "im": fmt15(r.im),
                    "residual": fmt15(r.residual),
                })
            })
            .collect(),
    )
}

fn zeta_result_json(result: &ZetaPolyResult) -> CmdResult {
    Ok(json!({
        "H": serde_json::to_value(&result.h).map_err(|e| CliError::domain(e.to_string()))?,
        "Z": serde_json::to_value(&result.z).map_err(|e| CliError::domain(e.to_string()))?,
        "functional_ok": result.functional_ok,
        "roots": roots_json(&result.roots),
        "max_critical_deviation": fmt15(result.max_critical_deviation),
    }))
}

fn recseq_json(s: &RecSeq, order: usize) -> CmdResult {
    Ok(json!({
        "recseq": serde_json::to_value(s).map_err(|e| CliError::domain(e.to_string()))?,
        "prefix": serde_json::to_value(s.prefix(order)).map_err(|e| CliError::domain(e.to_string()))?,
    }))
}

pub fn dispatch(command: &str, args: &Value, order: usize, ring: Ring, tol: f64) -> CmdResult {
    match command {
        // ---- exact series layer -------------------------------------------------
        "series.mul" => {
            let a = series_arg(args, "a", order, ring)?;
            let b = series_arg(args, "b", order, ring)?;
            to_json(&a.mul(&b).map_err(CliError::from)?)
        }
        "series.inv" => {
            let a = series_arg(args, "a", order, ring)?;
            to_json(&a.inv().map_err(CliError::from)?)
        }
        "ratfunc.expand" => {
            let v = arg(args, "rf")?;
            let rf: RatFunc = match v {
                Value::String(text) => parse_ratfunc(text).map_err(CliError::parse)?,
                _ => from_value(v, "rf")?,
            };
            to_json(&rf.expand(order).map_err(CliError::from)?)
        }
        "matrix.charpoly" => {
            let m = matrix_arg(args, "M", ring)?;
            to_json(&m.charpoly().map_err(CliError::from)?)
        }
        "matrix.kron" => {
            let a = matrix_arg(args, "A", ring)?;
            let b = matrix_arg(args, "B", ring)?;
            to_json(&a.kron(&b))
        }
        "matrix.direct_sum" => {
            let a = matrix_arg(args, "A", ring)?;
            let b = matrix_arg(args, "B", ring)?;
            to_json(&a.direct_sum(&b))
        }
        "matrix.invariant_factors" => {
            let m = matrix_arg(args, "M", Ring::Z)?;
            let factors = m.invariant_factors().map_err(CliError::from)?;
            to_json(&factors.iter().map(BigInt::to_string).collect::<Vec<_>>())
        }
        "matrix.rank" => {
            let m = matrix_arg(args, "M", ring)?;
            to_json(&m.rank())
        }
        "poly.interpolate" => {
            let points: Vec<(Scalar, Scalar)> = from_value(arg(args, "points")?, "points")?;
            to_json(&poly::interpolate(&points).map_err(CliError::from)?)
        }

        // ---- Witt ring ----------------------------------------------------------
        "witt.add" => {
            let p = witt_arg(args, "P", order, ring)?;
            let q = witt_arg(args, "Q", order, ring)?;
            to_json(&p.add(&q).map_err(CliError::from)?)
        }
        "witt.mul" => {
            let p = witt_arg(args, "P", order, ring)?;
            let q = witt_arg(args, "Q", order, ring)?;
            to_json(&p.mul(&q).map_err(CliError::from)?)
        }
        "witt.neg" => {
            let p = witt_arg(args, "P", order, ring)?;
            to_json(&p.neg())
        }
        "witt.ghost" => {
            let p = witt_arg(args, "P", order, ring)?;
            to_json(&p.ghost())
        }
        "witt.ghost_inverse" => {
            let g: GhostVector = from_value(arg(args, "g")?, "g")?;
            to_json(&ghost_inverse(&g))
        }
        "witt.frobenius_ghost" => {
            let p = witt_arg(args, "P", order, ring)?;
            let n = usize_arg(args, "n")?;
            let len = match args.get("len") {
                Some(v) => from_value(v, "len")?,
                None => p.order() / n.max(1),
            };
            to_json(&p.frobenius_ghost(n, len).map_err(CliError::from)?)
        }
        "witt.is_rational" => {
            let p = witt_arg(args, "P", order, ring)?;
            to_json(&p.is_rational_up_to().map_err(CliError::from)?)
        }

        // ---- endomorphism classes ----------------------------------------------
        "almkvist.add" => {
            let a = endo_arg(args, "A")?;
            let b = endo_arg(args, "B")?;
            to_json(&a.add(&b).map_err(CliError::from)?)
        }
        "almkvist.mul" => {
            let a = endo_arg(args, "A")?;
            let b = endo_arg(args, "B")?;
            to_json(&a.mul(&b).map_err(CliError::from)?)
        }
        "almkvist.lmap" => {
            let a = endo_arg(args, "A")?;
            Ok(json!({
                "series": to_json(&a.l_map(order))?,
                "ratfunc": to_json(&a.l_ratfunc())?,
            }))
        }
        "almkvist.frobenius" => {
            let a = endo_arg(args, "A")?;
            let n: u64 = from_value(arg(args, "n")?, "n")?;
            if n == 0 {
                return Err(CliError::domain("Frobenius index must be >= 1"));
            }
            to_json(&a.frobenius(n))
        }
        "almkvist.verschiebung" => {
            let a = endo_arg(args, "A")?;
            let n: u64 = from_value(arg(args, "n")?, "n")?;
            if n == 0 {
                return Err(CliError::domain("Verschiebung index must be >= 1"));
            }
            to_json(&a.verschiebung(n))
        }
        "almkvist.ghost_trace" => {
            let a = endo_arg(args, "A")?;
            recseq_json(&a.ghost_trace(), order)
        }
        "almkvist.is_quasi_unipotent" => {
            let a = endo_arg(args, "A")?;
            to_json(&a.is_quasi_unipotent().map_err(CliError::from)?)
        }
        "almkvist.in_sigma" => {
            let a = endo_arg(args, "A")?;
            to_json(&a.in_sigma_subring(&SigmaSpec::default()))
        }

        // ---- recursive sequences -------------------------------------------------
        "recseq.term" => {
            let s = recseq_arg(args, "s")?;
            let n = usize_arg(args, "n")?;
            to_json(&s.term(n))
        }
        "recseq.prefix" => {
            let s = recseq_arg(args, "s")?;
            let len = match args.get("len") {
                Some(v) => from_value(v, "len")?,
                None => order,
            };
            to_json(&s.prefix(len))
        }
        "recseq.had_prod" => {
            let s = recseq_arg(args, "s")?;
            let t = recseq_arg(args, "t")?;
            to_json(&s.had_prod(&t).map_err(CliError::from)?)
        }
        "recseq.add" => {
            let s = recseq_arg(args, "s")?;
            let t = recseq_arg(args, "t")?;
            to_json(&s.seq_add(&t))
        }
        "recseq.shift" => {
            let s = recseq_arg(args, "s")?;
            to_json(&s.shift())
        }
        "recseq.hankel" => {
            let s = recseq_arg(args, "s")?;
            let k = usize_arg(args, "k")?;
            if k == 0 {
                return Err(CliError::domain("Hankel size must be >= 1"));
            }
            to_json(&s.hankel(k))
        }
        "recseq.rank" => {
            let s = recseq_arg(args, "s")?;
            to_json(&s.max_hankel_rank())
        }
        "recseq.minimize" => {
            let s = recseq_arg(args, "s")?;
            to_json(&s.minimize())
        }
        "recseq.counit" => {
            let s = recseq_arg(args, "s")?;
            to_json(&s.counit())
        }
        "recseq.comult" => {
            let s = recseq_arg(args, "s")?;
            to_json(&s.comult().map_err(CliError::from)?)
        }
        "recseq.is_primitive" => {
            let s = recseq_arg(args, "s")?;
            to_json(&s.is_primitive())
        }
        "recseq.is_grouplike" => {
            let s = recseq_arg(args, "s")?;
            to_json(&s.is_grouplike())
        }

        // ---- linear systems -------------------------------------------------------
        "linsys.bat" => {
            let s = linsys_arg(args, "S")?;
            recseq_json(&s.bat(), order)
        }
        "linsys.direct_sum" => {
            let a = linsys_arg(args, "S1")?;
            let b: LinSys = from_value(arg(args, "S2")?, "S2")?;
            to_json(&a.direct_sum(&b).map_err(CliError::from)?)
        }
        "linsys.tensor" => {
            let a = linsys_arg(args, "S1")?;
            let b: LinSys = from_value(arg(args, "S2")?, "S2")?;
            to_json(&a.tensor(&b).map_err(CliError::from)?)
        }
        "linsys.dual" => {
            let s = linsys_arg(args, "S")?;
            to_json(&s.dual())
        }
        "linsys.reachable" => {
            let s = linsys_arg(args, "S")?;
            to_json(&s.is_completely_reachable())
        }
        "linsys.observable" => {
            let s = linsys_arg(args, "S")?;
            to_json(&s.is_completely_observable())
        }
        "linsys.canonical" => {
            let s = linsys_arg(args, "S")?;
            to_json(&s.is_canonical())
        }
        "linsys.split" => {
            let s = linsys_arg(args, "S")?;
            to_json(&s.is_split())
        }
        "linsys.realize" => {
            let s = recseq_arg(args, "s")?;
            to_json(&linsys::realize(&s).map_err(CliError::from)?)
        }
        "linsys.minimal_realize" => {
            let s = recseq_arg(args, "s")?;
            to_json(&linsys::minimal_realize(&s).map_err(CliError::from)?)
        }
        "linsys.transfer" => {
            let s = linsys_arg(args, "S")?;
            to_json(&s.transfer())
        }
        "linsys.realize_transfer" => {
            let t: TransferFunction = from_value(arg(args, "T")?, "T")?;
            to_json(&linsys::realize_transfer(&t))
        }
        "linsys.poles_zeros_in_sigma" => {
            let s = linsys_arg(args, "S")?;
            to_json(&s.poles_zeros_in_sigma(&SigmaSpec::default()))
        }

        // ---- torified classes -------------------------------------------------------
        "torified.count_points" => {
            let x = groth_arg(args, "X")?;
            let m = bigint_arg(args, "m")?;
            to_json(&x.count_points(&m).to_string())
        }
        "torified.adams" => {
            let x = groth_arg(args, "X")?;
            let k: u32 = from_value(arg(args, "k")?, "k")?;
            if k == 0 {
                return Err(CliError::domain("Adams index must be >= 1"));
            }
            to_json(&x.adams(k))
        }
        "torified.sigma_eval" => {
            let x = groth_arg(args, "X")?;
            let m = bigint_arg(args, "m")?;
            to_json(&torified::sigma_eval(&x, &m, order))
        }
        "torified.zeta_mu" => {
            let x = groth_arg(args, "X")?;
            let measure = measure_arg(args)?;
            to_json(&torified::zeta_mu(&x, &measure, order))
        }
        "torified.r_mu" => {
            let x = groth_arg(args, "X")?;
            let measure = measure_arg(args)?;
            to_json(&torified::r_mu(&x, &measure))
        }
        "torified.biring_measure" => {
            let x = groth_arg(args, "X")?;
            let measure = measure_arg(args)?;
            recseq_json(&torified::biring_measure(&x, &measure), order)
        }
        "torified.polylog" => {
            let k: u32 = from_value(arg(args, "k")?, "k")?;
            to_json(&torified::polylog(k, order))
        }
        "torified.f1zeta" => {
            let x = groth_arg(args, "X")?;
            let m = bigint_arg(args, "m")?;
            if m < BigInt::from(1) {
                return Err(CliError::domain("m must be >= 1"));
            }
            to_json(&torified::f1_zeta(&x, &m, order))
        }
        "torified.membership" => {
            let p = witt_arg(args, "P", order, ring)?;
            let s = recseq_arg(args, "s")?;
            to_json(&torified::m_membership(&p, &s, order))
        }
        "torified.nonrationality" => {
            let m = bigint_arg(args, "m")?;
            to_json(&torified::f1_nonrationality_report(&m, order).map_err(CliError::from)?)
        }

        // ---- zeta polynomials ---------------------------------------------------
        "zetapoly.hilbert" => {
            let u = poly_arg(args, "U")?;
            let input = ZetaPolyInput::new(u).map_err(CliError::from)?;
            to_json(&zetapoly::hilbert_poly(&input).map_err(CliError::from)?)
        }
        "zetapoly.run" => {
            let u = poly_arg(args, "U")?;
            let input = ZetaPolyInput::new(u).map_err(CliError::from)?;
            let result = zetapoly::zeta_poly(&input, tol).map_err(CliError::from)?;
            zeta_result_json(&result)
        }
        "zetapoly.functional" => {
            let z = poly_arg(args, "Z")?;
            let e = usize_arg(args, "e")?;
            to_json(&zetapoly::check_functional_equation(&z, e))
        }
        "zetapoly.unit_circle" => {
            let u = poly_arg(args, "U")?;
            to_json(&zetapoly::check_unit_circle(&u, tol).map_err(CliError::from)?)
        }
        "zetapoly.roots" => {
            let p = poly_arg(args, "p")?;
            let roots = zetapoly::find_roots(&p, tol).map_err(CliError::from)?;
            Ok(roots_json(&roots))
        }

        other => Err(CliError {
            code: "E_UNKNOWN_COMMAND",
            message: format!("unknown command {:?}", other),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(line: &str) -> (Value, bool) {
        let (text, ok) = run_line(line, &Defaults::default());
        (serde_json::from_str(&text).unwrap(), ok)
    }

    #[test]
    fn witt_mul_teichmuller() {
        let (resp, ok) =
            run(r#"{"command":"witt.mul","args":{"P":"1/(1-2t)","Q":"1/(1-3t)"},"order":8}"#);
        assert!(ok);
        let expected: Value = serde_json::to_value(
            RatFunc::new(Poly::from_ints(&[1]), Poly::from_ints(&[1, -6]))
                .unwrap()
                .expand(8)
                .unwrap(),
        )
        .unwrap();
        assert_eq!(resp["result"], expected);
        assert_eq!(resp["meta"]["order"], json!(8));
    }

    #[test]
    fn linsys_transfer_inline_args() {
        let (resp, ok) =
            run(r#"{"command":"linsys.transfer","args":{"M":[[0,-1],[1,2]],"v":[1,0],"c":[1,2]}}"#);
        assert!(ok);
        assert_eq!(resp["result"]["num"], json!(["0", "1"]));
        assert_eq!(resp["result"]["den"], json!(["1", "-2", "1"]));
    }

    #[test]
    fn zetapoly_run_linear() {
        let (resp, ok) = run(r#"{"command":"zetapoly.run","args":{"U":[1,1]}}"#);
        assert!(ok);
        assert_eq!(resp["result"]["Z"], json!(["1", "-2"]));
        assert_eq!(resp["result"]["functional_ok"], json!(true));
        assert_eq!(resp["result"]["roots"][0]["re"], json!("5.00000000000000e-1"));
        assert_eq!(resp["result"]["max_critical_deviation"], json!("0.00000000000000e0"));
    }

    #[test]
    fn unknown_command_is_machine_readable() {
        let (resp, ok) = run(r#"{"command":"witt.frobnicate","args":{}}"#);
        assert!(!ok);
        assert_eq!(resp["error"]["code"], json!("E_UNKNOWN_COMMAND"));
        assert!(resp.get("result").is_none());
    }

    #[test]
    fn parse_errors_do_not_panic() {
        let (resp, ok) = run("{not json");
        assert!(!ok);
        assert_eq!(resp["error"]["code"], json!("E_PARSE"));
    }

    #[test]
    fn domain_errors_surface() {
        let (resp, ok) = run(r#"{"command":"series.inv","args":{"a":{"coeffs":["2","1"]}}}"#);
        assert!(!ok);
        assert_eq!(resp["error"]["code"], json!("E_DOMAIN"));
    }

    #[test]
    fn determinism_byte_for_byte() {
        let line = r#"{"command":"zetapoly.run","args":{"U":[1,0,1]},"order":16}"#;
        let (first, _) = run_line(line, &Defaults::default());
        let (second, _) = run_line(line, &Defaults::default());
        assert_eq!(first, second);
    }

    #[test]
    fn ring_override() {
        let (resp, ok) = run(r#"{"command":"witt.ghost","args":{"P":"1/(1-2t)"},"order":4,"ring":"Q"}"#);
        assert!(ok);
        assert_eq!(resp["result"], json!(["2", "4", "8", "16"]));
    }
}
