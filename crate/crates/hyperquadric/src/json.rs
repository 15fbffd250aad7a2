//! Canonical JSON encodings.
//!
//! An exact scalar is `[re_num, re_den, im_num, im_den]` in lowest terms; each
//! integer is a JSON number when it fits in 64 bits and a decimal string
//! otherwise. Parsing accepts either form.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{AElem, Delta, ExactElem, NumElem};
use crate::hermitian::HMat;
use crate::matrix::Mat3;
use crate::scalar::{Cyclotomic, Gaussian};
use crate::series::{HoloJet, Mono, Poly, SurfaceSeries};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("malformed input: {0}")]
pub struct JsonError(pub String);

fn bad(msg: impl Into<String>) -> JsonError {
    JsonError(msg.into())
}

pub fn int_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(x) => json!(x),
        None => json!(n.to_string()),
    }
}

pub fn int_from_json(v: &Value) -> Result<BigInt, JsonError> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| bad(format!("not an integer: {n}"))),
        Value::String(s) => s.parse().map_err(|_| bad(format!("not an integer: {s:?}"))),
        _ => Err(bad(format!("expected an integer, got {v}"))),
    }
}

pub fn gaussian_to_json(g: &Gaussian) -> Value {
    let (a, b, c, d) = g.parts();
    json!([int_to_json(&a), int_to_json(&b), int_to_json(&c), int_to_json(&d)])
}

pub fn gaussian_from_json(v: &Value) -> Result<Gaussian, JsonError> {
    let arr = v.as_array().filter(|a| a.len() == 4).ok_or_else(|| bad(format!("expected [rn, rd, in, id], got {v}")))?;
    let p: Vec<BigInt> = arr.iter().map(int_from_json).collect::<Result<_, _>>()?;
    Gaussian::from_big_parts(p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone())
        .ok_or_else(|| bad("zero denominator"))
}

pub fn delta_from_json(v: &Value) -> Result<Delta, JsonError> {
    v.as_i64().and_then(Delta::from_sign).ok_or_else(|| bad(format!("delta must be 1 or -1, got {v}")))
}

fn field<'a>(v: &'a Value, k: &str) -> Result<&'a Value, JsonError> {
    v.get(k).ok_or_else(|| bad(format!("missing field {k:?}")))
}

pub fn aelem_to_json(x: &ExactElem) -> Value {
    json!({"delta": x.delta.sign(), "a": gaussian_to_json(&x.a), "b": gaussian_to_json(&x.b)})
}

/// Reads `{"delta", "a", "b"}`; `delta` may be omitted when supplied by context.
pub fn aelem_from_json(v: &Value, delta: Option<Delta>) -> Result<ExactElem, JsonError> {
    let d = match v.get("delta") {
        Some(d) => {
            let d = delta_from_json(d)?;
            if delta.is_some_and(|e| e != d) {
                return Err(bad("delta mismatch"));
            }
            d
        }
        None => delta.ok_or_else(|| bad("missing field \"delta\""))?,
    };
    Ok(AElem::new(d, gaussian_from_json(field(v, "a")?)?, gaussian_from_json(field(v, "b")?)?))
}

pub fn mat3_to_json(m: &Mat3<Gaussian>) -> Value {
    let rows: Vec<Value> = m
        .m
        .iter()
        .map(|r| Value::Array(r.iter().map(|x| json!({"a": gaussian_to_json(&x.a), "b": gaussian_to_json(&x.b)})).collect()))
        .collect();
    json!({"delta": m.delta.sign(), "rows": rows})
}

pub fn mat3_from_json(v: &Value) -> Result<Mat3<Gaussian>, JsonError> {
    let d = delta_from_json(field(v, "delta")?)?;
    let rows = field(v, "rows")?.as_array().filter(|r| r.len() == 3).ok_or_else(|| bad("rows must be a 3×3 array"))?;
    let mut m = Mat3::zero(d);
    for (i, r) in rows.iter().enumerate() {
        let r = r.as_array().filter(|r| r.len() == 3).ok_or_else(|| bad("rows must be a 3×3 array"))?;
        for (j, x) in r.iter().enumerate() {
            m.set(i, j, aelem_from_json(x, Some(d))?);
        }
    }
    Ok(m)
}

fn pair(m: Mono, a: usize, b: usize) -> Value {
    json!([m.get(a), m.get(b)])
}

fn exps(v: &Value, k: &str) -> Result<[u8; 2], JsonError> {
    let a = field(v, k)?.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad(format!("{k} must have two exponents")))?;
    let e = |x: &Value| x.as_u64().filter(|&n| n < 64).map(|n| n as u8).ok_or_else(|| bad(format!("bad exponent {x}")));
    Ok([e(&a[0])?, e(&a[1])?])
}

/// `{"delta", "bound", "terms": [{"z", "zb", "u", "c": [c₁, c₂]}]}`, terms in
/// lexicographic monomial order.
pub fn series_to_json(s: &SurfaceSeries) -> Value {
    let mut monos: Vec<Mono> = s.v.iter().flat_map(|p| p.terms().map(|(m, _)| m)).collect();
    monos.sort();
    monos.dedup();
    let terms: Vec<Value> = monos
        .into_iter()
        .map(|m| {
            json!({
                "z": pair(m, 0, 1), "zb": pair(m, 2, 3), "u": pair(m, 4, 5),
                "c": [gaussian_to_json(&s.v[0].coeff(m)), gaussian_to_json(&s.v[1].coeff(m))],
            })
        })
        .collect();
    json!({"delta": s.delta.sign(), "bound": s.bound, "terms": terms})
}

pub fn series_from_json(v: &Value) -> Result<SurfaceSeries, JsonError> {
    let d = delta_from_json(field(v, "delta")?)?;
    let bound = field(v, "bound")?.as_u64().filter(|&b| b <= 64).ok_or_else(|| bad("bound must be a small integer"))? as u32;
    let mut comps = [Poly::zero(), Poly::zero()];
    for t in field(v, "terms")?.as_array().ok_or_else(|| bad("terms must be an array"))? {
        let (z, zb, u) = (exps(t, "z")?, exps(t, "zb")?, exps(t, "u")?);
        let m = Mono::new([z[0], z[1], zb[0], zb[1], u[0], u[1]]);
        let c = field(t, "c")?.as_array().filter(|c| c.len() == 2).ok_or_else(|| bad("c must hold two scalars"))?;
        for k in 0..2 {
            comps[k].add_term(m, gaussian_from_json(&c[k])?);
        }
    }
    SurfaceSeries::new(d, bound, comps).map_err(|e| bad(e.to_string()))
}

const JET_NAMES: [&str; 4] = ["z1", "z2", "w1", "w2"];

/// `{"delta", "bound", "z1": [{"z", "w", "c"}], "z2", "w1", "w2"}`.
pub fn jet_to_json(j: &HoloJet) -> Value {
    let mut out = json!({"delta": j.delta.sign(), "bound": j.bound});
    for (k, name) in JET_NAMES.iter().enumerate() {
        let terms: Vec<Value> =
            j.comps[k].terms().map(|(m, c)| json!({"z": pair(m, 0, 1), "w": pair(m, 4, 5), "c": gaussian_to_json(c)})).collect();
        out[*name] = Value::Array(terms);
    }
    out
}

pub fn jet_from_json(v: &Value) -> Result<HoloJet, JsonError> {
    let d = delta_from_json(field(v, "delta")?)?;
    let bound = field(v, "bound")?.as_u64().filter(|&b| b <= 64).ok_or_else(|| bad("bound must be a small integer"))? as u32;
    let mut comps: [Poly<Gaussian>; 4] = Default::default();
    for (k, name) in JET_NAMES.iter().enumerate() {
        for t in field(v, name)?.as_array().ok_or_else(|| bad(format!("{name} must be an array")))? {
            let (z, w) = (exps(t, "z")?, exps(t, "w")?);
            comps[k].add_term(Mono::new([z[0], z[1], 0, 0, w[0], w[1]]), gaussian_from_json(field(t, "c")?)?);
        }
    }
    HoloJet::new(d, bound, comps).map_err(|e| bad(e.to_string()))
}

/// An exact rational: a bare integer when the denominator is 1, else `[num, den]`.
pub fn rational_to_json(q: &BigRational) -> Value {
    if q.is_integer() {
        int_to_json(q.numer())
    } else {
        json!([int_to_json(q.numer()), int_to_json(q.denom())])
    }
}

pub fn rational_from_json(v: &Value) -> Result<BigRational, JsonError> {
    match v.as_array() {
        Some(a) if a.len() == 2 => {
            let d = int_from_json(&a[1])?;
            if d.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(BigRational::new(int_from_json(&a[0])?, d))
        }
        Some(_) => Err(bad(format!("expected [num, den], got {v}"))),
        None => Ok(BigRational::from_integer(int_from_json(v)?)),
    }
}

pub fn hmat_to_json(h: &HMat<Gaussian>) -> Value {
    json!(h.iter().map(|r| r.iter().map(gaussian_to_json).collect::<Vec<_>>()).collect::<Vec<_>>())
}

pub fn hmat_from_json(v: &Value) -> Result<HMat<Gaussian>, JsonError> {
    let rows = v.as_array().filter(|r| r.len() == 2).ok_or_else(|| bad("expected a 2×2 matrix"))?;
    let mut out: HMat<Gaussian> = Default::default();
    for (i, r) in rows.iter().enumerate() {
        let r = r.as_array().filter(|r| r.len() == 2).ok_or_else(|| bad("expected a 2×2 matrix"))?;
        for (j, x) in r.iter().enumerate() {
            out[i][j] = gaussian_from_json(x)?;
        }
    }
    Ok(out)
}

/// `{"h1", "h2"}`; Hermitian symmetry is checked by the caller.
pub fn hermitian_pair_from_json(v: &Value) -> Result<[HMat<Gaussian>; 2], JsonError> {
    Ok([hmat_from_json(field(v, "h1")?)?, hmat_from_json(field(v, "h2")?)?])
}

pub fn complex_to_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn complex_from_json(v: &Value) -> Result<Complex64, JsonError> {
    let a = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad(format!("expected [re, im], got {v}")))?;
    let f = |x: &Value| x.as_f64().ok_or_else(|| bad(format!("not a number: {x}")));
    Ok(Complex64::new(f(&a[0])?, f(&a[1])?))
}

pub fn num_to_json(x: &NumElem) -> Value {
    json!({"delta": x.delta.sign(), "a": complex_to_json(x.a), "b": complex_to_json(x.b)})
}

/// Accepts either the numeric form `[re, im]` or the exact form for each part.
pub fn num_from_json(v: &Value, delta: Option<Delta>) -> Result<NumElem, JsonError> {
    let exact = field(v, "a")?.as_array().is_some_and(|a| a.len() == 4);
    if exact {
        return Ok(aelem_from_json(v, delta)?.to_c64());
    }
    let d = match (v.get("delta"), delta) {
        (Some(d), e) => {
            let d = delta_from_json(d)?;
            if e.is_some_and(|e| e != d) {
                return Err(bad("delta mismatch"));
            }
            d
        }
        (None, Some(d)) => d,
        (None, None) => return Err(bad("missing field \"delta\"")),
    };
    Ok(AElem::new(d, complex_from_json(field(v, "a")?)?, complex_from_json(field(v, "b")?)?))
}

/// `a + b√3` as `{"rational": a, "sqrt3": b}`.
pub fn cyclotomic_to_json(x: &Cyclotomic) -> Value {
    json!({"rational": gaussian_to_json(&x.a), "sqrt3": gaussian_to_json(&x.b)})
}

pub fn cyclotomic_from_json(v: &Value) -> Result<Cyclotomic, JsonError> {
    Ok(Cyclotomic::new(gaussian_from_json(field(v, "rational")?)?, gaussian_from_json(field(v, "sqrt3")?)?))
}

pub fn cyclotomic_elem_to_json(x: &AElem<Cyclotomic>) -> Value {
    json!({"delta": x.delta.sign(), "a": cyclotomic_to_json(&x.a), "b": cyclotomic_to_json(&x.b)})
}

pub fn cyclotomic_elem_from_json(v: &Value) -> Result<AElem<Cyclotomic>, JsonError> {
    let d = delta_from_json(field(v, "delta")?)?;
    Ok(AElem::new(d, cyclotomic_from_json(field(v, "a")?)?, cyclotomic_from_json(field(v, "b")?)?))
}

pub fn mono_to_json(m: Mono) -> Value {
    json!({"z": pair(m, 0, 1), "zb": pair(m, 2, 3), "u": pair(m, 4, 5)})
}

pub fn mono_from_json(v: &Value) -> Result<Mono, JsonError> {
    let (z, zb, u) = (exps(v, "z")?, exps(v, "zb")?, exps(v, "u")?);
    Ok(Mono::new([z[0], z[1], zb[0], zb[1], u[0], u[1]]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Pow;

    #[test]
    fn big_integers_become_strings() {
        let big = BigInt::from(10).pow(30u32);
        let g = Gaussian::from_big_parts(big.clone(), 1.into(), (-3).into(), 7.into()).unwrap();
        let v = gaussian_to_json(&g);
        assert!(v[0].is_string());
        assert_eq!(gaussian_from_json(&v).unwrap(), g);
        assert_eq!(gaussian_to_json(&Gaussian::new(1, -2, 4)), json!([1, 4, -1, 2]));
    }

    #[test]
    fn series_and_jets_round_trip() {
        for d in Delta::BOTH {
            let s = SurfaceSeries::matrix_surface(d, 6, &[((2, 1, 1), AElem::from_ints(d, (1, 2), (0, -1)))]);
            assert_eq!(series_from_json(&series_to_json(&s)).unwrap(), s);
            let j = HoloJet::isotropy(&AElem::from_ints(d, (1, 1), (0, 1)), &AElem::from_ints(d, (0, 1), (1, 0)), &AElem::zero(d), 5);
            assert_eq!(jet_from_json(&jet_to_json(&j)).unwrap(), j);
        }
    }

    #[test]
    fn small_encodings_round_trip() {
        let q = BigRational::new(3.into(), (-6).into());
        assert_eq!(rational_to_json(&q), json!([-1, 2]));
        assert_eq!(rational_from_json(&rational_to_json(&q)).unwrap(), q);
        assert_eq!(rational_to_json(&BigRational::zero()), json!(0));
        let x = AElem::new(Delta::Minus, Complex64::new(0.25, -1.5), Complex64::new(3.0, 0.0));
        assert_eq!(num_from_json(&num_to_json(&x), None).unwrap(), x);
        let c = AElem::new(Delta::Plus, Cyclotomic::omega(), Cyclotomic::sqrt3());
        assert_eq!(cyclotomic_elem_from_json(&cyclotomic_elem_to_json(&c)).unwrap(), c);
        let h: HMat<Gaussian> = [[Gaussian::new(1, 0, 1), Gaussian::new(0, 1, 2)], [Gaussian::new(0, -1, 2), Gaussian::new(-2, 0, 1)]];
        assert_eq!(hmat_from_json(&hmat_to_json(&h)).unwrap(), h);
        let m = Mono::new([1, 0, 2, 0, 1, 0]);
        assert_eq!(mono_from_json(&mono_to_json(m)).unwrap(), m);
    }

    #[test]
    fn rejects_non_real_series() {
        let v = json!({"delta": 1, "bound": 4, "terms": [{"z": [1, 0], "zb": [0, 0], "u": [0, 0], "c": [[1, 1, 0, 1], [0, 1, 0, 1]]}]});
        assert!(series_from_json(&v).is_err());
    }
}
