//! JSON forms of the domain types.
//!
//! Integers serialize as decimal strings (64-bit JSON numbers would
//! overflow long before order-32 coefficients do) and rationals as "p/q".
//! Containers carry an explicit "ring" tag where the ℤ/ℚ distinction is
//! semantic. Deserialization accepts plain JSON integers as well as
//! strings.

use std::fmt;

use num_bigint::BigInt;
use serde::de::{self, Deserializer, Visitor};
use serde::ser::{SerializeMap, SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::almkvist::{EndoClass, VirtualEndo};
use crate::linsys::{LinSys, TransferFunction};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::recseq::{RecSeq, TensorDecomp};
use crate::scalar::{Ring, Scalar};
use crate::series::TruncSeries;
use crate::torified::{GrothClass, Measure};
use crate::witt::{GhostVector, RationalityReport, WittElement};
use crate::zetapoly::{ComplexApprox, ZetaPolyResult};

pub(crate) fn joined_ring(scalars: &[Scalar]) -> Ring {
    scalars.iter().fold(Ring::Z, |r, s| r.join(s.ring()))
}

impl Serialize for Ring {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Ring {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Ring, D::Error> {
        let s = String::deserialize(deserializer)?;
        match s.as_str() {
            "Z" | "z" => Ok(Ring::Z),
            "Q" | "q" => Ok(Ring::Q),
            other => Err(de::Error::custom(format!("unknown ring {:?}", other))),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

struct ScalarVisitor;

impl Visitor<'_> for ScalarVisitor {
    type Value = Scalar;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer, or a string \"p\" or \"p/q\"")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Scalar, E> {
        Ok(Scalar::from_int(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Scalar, E> {
        Ok(Scalar::from_int(BigInt::from(v)))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Scalar, E> {
        parse_scalar(v).map_err(de::Error::custom)
    }
}

pub fn parse_scalar(text: &str) -> Result<Scalar, String> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|e| format!("bad numerator: {}", e))?;
        let den: BigInt = den.trim().parse().map_err(|e| format!("bad denominator: {}", e))?;
        if den == BigInt::from(0) {
            return Err("zero denominator".into());
        }
        Ok(Scalar::from_ratio(num, den))
    } else {
        let n: BigInt = text.parse().map_err(|e| format!("bad integer: {}", e))?;
        Ok(Scalar::from_int(n))
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Scalar, D::Error> {
        deserializer.deserialize_any(ScalarVisitor)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs().len()))?;
        for c in self.coeffs() {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Poly, D::Error> {
        let coeffs = Vec::<Scalar>::deserialize(deserializer)?;
        let ring = joined_ring(&coeffs);
        Ok(Poly::new(coeffs, ring))
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    order: usize,
    ring: Ring,
    coeffs: Vec<Scalar>,
}

impl Serialize for TruncSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SeriesRepr { order: self.order(), ring: self.ring(), coeffs: self.coeffs().to_vec() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TruncSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<TruncSeries, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            order: Option<usize>,
            ring: Option<Ring>,
            coeffs: Vec<Scalar>,
        }
        let repr = Repr::deserialize(deserializer)?;
        if repr.coeffs.is_empty() {
            return Err(de::Error::custom("a series needs at least its constant term"));
        }
        if let Some(order) = repr.order {
            if order + 1 != repr.coeffs.len() {
                return Err(de::Error::custom(format!(
                    "order {} does not match {} coefficients",
                    order,
                    repr.coeffs.len()
                )));
            }
        }
        let ring = repr.ring.unwrap_or_else(|| joined_ring(&repr.coeffs));
        let coeffs = repr
            .coeffs
            .into_iter()
            .map(|c| c.to_ring(ring))
            .collect::<crate::error::Result<Vec<_>>>()
            .map_err(de::Error::custom)?;
        Ok(TruncSeries::new(coeffs, ring))
    }
}

#[derive(Serialize, Deserialize)]
struct RatFuncRepr {
    num: Poly,
    den: Poly,
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RatFuncRepr { num: self.num().clone(), den: self.den().clone() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<RatFunc, D::Error> {
        let repr = RatFuncRepr::deserialize(deserializer)?;
        RatFunc::new(repr.num, repr.den).map_err(de::Error::custom)
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows()))?;
        for i in 0..self.rows() {
            seq.serialize_element(self.row(i))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Matrix, D::Error> {
        let rows = Vec::<Vec<Scalar>>::deserialize(deserializer)?;
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(de::Error::custom("ragged matrix rows"));
        }
        let ring = rows.iter().fold(Ring::Z, |r, row| r.join(joined_ring(row)));
        Ok(Matrix::from_rows(rows, ring))
    }
}

impl Serialize for WittElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.series().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WittElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<WittElement, D::Error> {
        let series = TruncSeries::deserialize(deserializer)?;
        WittElement::new(series).map_err(de::Error::custom)
    }
}

impl Serialize for GhostVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.components().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GhostVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<GhostVector, D::Error> {
        Ok(GhostVector::new(Vec::<Scalar>::deserialize(deserializer)?))
    }
}

#[derive(Serialize, Deserialize)]
struct RationalityReportRepr {
    order: usize,
    ranks: Vec<usize>,
    stabilized: bool,
    witness: Option<RatFunc>,
}

impl Serialize for RationalityReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RationalityReportRepr {
            order: self.order,
            ranks: self.ranks.clone(),
            stabilized: self.stabilized,
            witness: self.witness.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalityReport {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<RationalityReport, D::Error> {
        let repr = RationalityReportRepr::deserialize(deserializer)?;
        Ok(RationalityReport {
            order: repr.order,
            ranks: repr.ranks,
            stabilized: repr.stabilized,
            witness: repr.witness,
        })
    }
}

impl Serialize for EndoClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(1))?;
        map.serialize_entry("matrix", self.matrix())?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for EndoClass {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<EndoClass, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            matrix: Matrix,
        }
        let repr = Repr::deserialize(deserializer)?;
        EndoClass::new(repr.matrix).map_err(de::Error::custom)
    }
}

impl Serialize for VirtualEndo {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.canonical().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for VirtualEndo {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<VirtualEndo, D::Error> {
        let rf = RatFunc::deserialize(deserializer)?;
        VirtualEndo::from_ratfunc(&rf).map_err(de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct RecSeqRepr {
    recurrence: Vec<Scalar>,
    initial: Vec<Scalar>,
    ring: Ring,
}

impl Serialize for RecSeq {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RecSeqRepr {
            recurrence: self.recurrence().to_vec(),
            initial: self.initial().to_vec(),
            ring: self.ring(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RecSeq {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<RecSeq, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            recurrence: Vec<Scalar>,
            initial: Vec<Scalar>,
            ring: Option<Ring>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let ring = repr.ring.unwrap_or_else(|| {
            joined_ring(&repr.recurrence).join(joined_ring(&repr.initial))
        });
        RecSeq::new(repr.recurrence, repr.initial, ring).map_err(de::Error::custom)
    }
}

#[derive(Serialize)]
struct TensorDecompRepr<'a> {
    k: usize,
    coeffs: &'a Matrix,
    field_level: bool,
}

impl Serialize for TensorDecomp {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TensorDecompRepr { k: self.k(), coeffs: self.coeffs(), field_level: self.is_field_level() }
            .serialize(serializer)
    }
}

#[derive(Serialize, Deserialize)]
struct LinSysRepr {
    #[serde(rename = "M")]
    m: Matrix,
    v: Vec<Scalar>,
    c: Vec<Scalar>,
    ring: Ring,
}

impl Serialize for LinSys {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        LinSysRepr {
            m: self.state().clone(),
            v: self.input().to_vec(),
            c: self.output().to_vec(),
            ring: self.ring(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LinSys {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<LinSys, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            #[serde(rename = "M")]
            m: Matrix,
            v: Vec<Scalar>,
            c: Vec<Scalar>,
            ring: Option<Ring>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let ring = repr.ring.unwrap_or_else(|| {
            repr.m.ring().join(joined_ring(&repr.v)).join(joined_ring(&repr.c))
        });
        let state = repr.m.to_ring(ring).map_err(de::Error::custom)?;
        LinSys::new(state, repr.v, repr.c).map_err(de::Error::custom)
    }
}

impl Serialize for TransferFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RatFuncRepr { num: self.num().clone(), den: self.den().clone() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TransferFunction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<TransferFunction, D::Error> {
        let repr = RatFuncRepr::deserialize(deserializer)?;
        TransferFunction::new(repr.num, repr.den).map_err(de::Error::custom)
    }
}

impl Serialize for GrothClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("basis", "T")?;
        let coeffs: Vec<String> = self.t_coeffs().iter().map(BigInt::to_string).collect();
        map.serialize_entry("coeffs", &coeffs)?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for GrothClass {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<GrothClass, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            basis: Option<String>,
            coeffs: Vec<Scalar>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let ints = repr
            .coeffs
            .iter()
            .map(|s| s.to_bigint().ok_or("class coefficients must be integers"))
            .collect::<Result<Vec<_>, _>>()
            .map_err(de::Error::custom)?;
        match repr.basis.as_deref() {
            None | Some("T") | Some("t") => Ok(GrothClass::new(ints)),
            Some("L") | Some("l") => Ok(GrothClass::from_l_coeffs(&ints)),
            Some(other) => Err(de::Error::custom(format!("unknown basis {:?}", other))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MeasureRepr {
    m: Scalar,
    delta: Scalar,
}

impl Serialize for Measure {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MeasureRepr {
            m: Scalar::from_int(self.value.clone()),
            delta: Scalar::from_int(self.delta.clone()),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Measure {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Measure, D::Error> {
        let repr = MeasureRepr::deserialize(deserializer)?;
        let value = repr.m.to_bigint().ok_or_else(|| de::Error::custom("m must be an integer"))?;
        let delta =
            repr.delta.to_bigint().ok_or_else(|| de::Error::custom("delta must be an integer"))?;
        Ok(Measure { value, delta })
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexApproxRepr {
    re: f64,
    im: f64,
    residual: f64,
}

impl Serialize for ComplexApprox {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ComplexApproxRepr { re: self.re, im: self.im, residual: self.residual }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexApprox {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<ComplexApprox, D::Error> {
        let repr = ComplexApproxRepr::deserialize(deserializer)?;
        Ok(ComplexApprox { re: repr.re, im: repr.im, residual: repr.residual })
    }
}

#[derive(Serialize)]
struct ZetaPolyResultRepr<'a> {
    #[serde(rename = "H")]
    h: &'a Poly,
    #[serde(rename = "Z")]
    z: &'a Poly,
    functional_ok: bool,
    roots: &'a [ComplexApprox],
    max_critical_deviation: f64,
}

impl Serialize for ZetaPolyResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ZetaPolyResultRepr {
            h: &self.h,
            z: &self.z,
            functional_ok: self.functional_ok,
            roots: &self.roots,
            max_critical_deviation: self.max_critical_deviation,
        }
        .serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_round_trip() {
        for text in ["0", "42", "-17", "3/4", "-22/7"] {
            let s: Scalar = serde_json::from_str(&format!("\"{}\"", text)).unwrap();
            assert_eq!(serde_json::to_string(&s).unwrap(), format!("\"{}\"", text));
        }
        let from_int: Scalar = serde_json::from_str("5").unwrap();
        assert_eq!(from_int, Scalar::from_int(5));
    }

    #[test]
    fn series_round_trip() {
        let s = TruncSeries::from_ints(&[1, -2, 3]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"order":2,"ring":"Z","coeffs":["1","-2","3"]}"#);
        let back: TruncSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.ring(), Ring::Z);
    }

    #[test]
    fn series_order_mismatch_rejected() {
        let bad = r#"{"order":3,"coeffs":["1","2"]}"#;
        assert!(serde_json::from_str::<TruncSeries>(bad).is_err());
    }

    #[test]
    fn witt_element_validates_constant_term() {
        let bad = r#"{"order":1,"coeffs":["2","1"]}"#;
        assert!(serde_json::from_str::<WittElement>(bad).is_err());
        let good = r#"{"order":1,"coeffs":["1","5"]}"#;
        let w: WittElement = serde_json::from_str(good).unwrap();
        assert_eq!(w.coeff(1), &Scalar::from_int(5));
    }

    #[test]
    fn matrix_and_linsys_round_trip() {
        let sys = LinSys::from_ints(&[&[0, -1], &[1, 2]], &[1, 0], &[1, 2]);
        let json = serde_json::to_string(&sys).unwrap();
        let back: LinSys = serde_json::from_str(&json).unwrap();
        assert_eq!(back, sys);
        // Ring override promotes.
        let q = r#"{"M":[[1]],"v":["1/2"],"c":[1],"ring":"Q"}"#;
        let sys: LinSys = serde_json::from_str(q).unwrap();
        assert_eq!(sys.ring(), Ring::Q);
    }

    #[test]
    fn recseq_round_trip() {
        let s = RecSeq::from_ints(&[2, -1], &[1, 2]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"recurrence":["2","-1"],"initial":["1","2"],"ring":"Z"}"#);
        let back: RecSeq = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn groth_class_bases() {
        let x = GrothClass::from_ints(&[2, 1]);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"basis":"T","coeffs":["2","1"]}"#);
        let back: GrothClass = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
        // L-basis input: L = T + 1.
        let l: GrothClass = serde_json::from_str(r#"{"basis":"L","coeffs":["0","1"]}"#).unwrap();
        assert_eq!(l, GrothClass::lefschetz());
    }

    #[test]
    fn virtual_endo_round_trip() {
        let v = VirtualEndo::new(
            EndoClass::scalar(&Scalar::from_int(2)),
            EndoClass::scalar(&Scalar::from_int(3)),
        );
        let json = serde_json::to_string(&v).unwrap();
        let back: VirtualEndo = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn ratfunc_round_trip() {
        let rf = RatFunc::new(Poly::from_ints(&[1, -1]), Poly::from_ints(&[1, -3])).unwrap();
        let json = serde_json::to_string(&rf).unwrap();
        let back: RatFunc = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rf);
    }
}
