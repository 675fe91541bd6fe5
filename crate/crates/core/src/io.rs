//! Canonical JSON for domain values.
//!
//! Keys are emitted in a fixed order and scalars as strings, so the same value
//! always serializes to the same bytes. Readers also accept bare JSON integers
//! where a scalar is expected.

use std::fmt::Display;
use std::str::FromStr;

use serde_json::{json, Map as JsonMap, Value};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::orbit::{LegPoint, OrbitSpec};
use crate::quiver::{Arrow, DoubleQuiver, QuiverMult, Vertex};
use crate::regularize::{LegDescriptor, Report};
use crate::repn::{arrow_shapes, Representation};
use crate::rmatrix::{ModShape, RMap};
use crate::scalars::{Field, TruncScalar};
use crate::weyl::{CoxeterReport, ParamVector};

/// Scalars with a text form.
pub trait Scalar: Field + Display + FromStr {}

impl<T: Field + Display + FromStr> Scalar for T {}

fn err(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

pub fn to_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| err(e.to_string()))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| err(format!("missing key `{key}`")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| err(format!("`{what}` must be a non-negative integer")))
}

fn as_i64(v: &Value, what: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| err(format!("`{what}` must be an integer")))
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a JsonMap<String, Value>> {
    v.as_object().ok_or_else(|| err(format!("`{what}` must be an object")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(format!("`{what}` must be an array")))
}

pub fn scalar_to_json<F: Scalar>(x: &F) -> Value {
    Value::String(x.to_string())
}

pub fn scalar_from_json<F: Scalar>(v: &Value) -> Result<F> {
    match v {
        Value::String(s) => s.trim().parse().map_err(|_| Error::BadScalar(s.clone())),
        Value::Number(n) => n.to_string().parse().map_err(|_| Error::BadScalar(n.to_string())),
        other => Err(Error::BadScalar(other.to_string())),
    }
}

pub fn matrix_to_json<F: Scalar>(m: &Matrix<F>) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(scalar_to_json).collect())).collect())
}

/// Reads a matrix; `cols` fixes the width when there are no rows.
pub fn matrix_from_json<F: Scalar>(v: &Value, cols: usize) -> Result<Matrix<F>> {
    let rows = as_array(v, "matrix")?
        .iter()
        .map(|r| as_array(r, "matrix row")?.iter().map(scalar_from_json).collect::<Result<Vec<F>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows, cols).ok_or_else(|| err("matrix rows have unequal lengths"))
}

pub fn int_matrix_to_json(m: &Matrix<i64>) -> Value {
    Value::Array(m.to_rows().iter().map(|r| json!(r)).collect())
}

pub fn trunc_to_json<F: Scalar>(t: &TruncScalar<F>) -> Value {
    Value::Array(t.coeffs().iter().map(scalar_to_json).collect())
}

pub fn trunc_from_json<F: Scalar>(v: &Value) -> Result<TruncScalar<F>> {
    let coeffs = as_array(v, "coefficients")?.iter().map(scalar_from_json).collect::<Result<Vec<F>>>()?;
    TruncScalar::new(coeffs)
}

fn shape_to_json(s: ModShape) -> Value {
    json!({ "rank": s.rank, "order": s.order })
}

fn shape_from_json(v: &Value) -> Result<ModShape> {
    let order = as_usize(field(v, "order")?, "order")?;
    if order == 0 {
        return Err(err("`order` must be positive"));
    }
    Ok(ModShape::new(as_usize(field(v, "rank")?, "rank")?, order))
}

pub fn rmap_to_json<F: Scalar>(m: &RMap<F>) -> Value {
    json!({
        "src": shape_to_json(m.src()),
        "dst": shape_to_json(m.dst()),
        "base": m.base(),
        "flat": matrix_to_json(m.flat()),
    })
}

pub fn rmap_from_json<F: Scalar>(v: &Value) -> Result<RMap<F>> {
    let src = shape_from_json(field(v, "src")?)?;
    let dst = shape_from_json(field(v, "dst")?)?;
    let base = as_usize(field(v, "base")?, "base")?;
    let flat = matrix_from_json(field(v, "flat")?, src.dim())?;
    RMap::new(src, dst, base, flat)
}

/// `{ vertex: [coeffs] }` in vertex order.
pub fn params_to_json<F: Scalar>(q: &QuiverMult, lambda: &[TruncScalar<F>]) -> Value {
    let mut obj = JsonMap::new();
    for (i, l) in lambda.iter().enumerate() {
        obj.insert(q.name(i).to_string(), trunc_to_json(l));
    }
    Value::Object(obj)
}

/// Reads parameters; vertices that are absent default to zero.
pub fn params_from_json<F: Scalar>(q: &QuiverMult, v: &Value) -> Result<ParamVector<F>> {
    let obj = as_object(v, "parameters")?;
    for k in obj.keys() {
        q.vertex_index(k)?;
    }
    let out = (0..q.vertex_count())
        .map(|i| match obj.get(q.name(i)) {
            Some(c) => trunc_from_json(c),
            None => Ok(TruncScalar::zero(q.mult(i))),
        })
        .collect::<Result<Vec<_>>>()?;
    crate::weyl::check_params(q, &out)?;
    Ok(out)
}

pub fn dims_to_json(q: &QuiverMult, v: &[i64]) -> Value {
    let mut obj = JsonMap::new();
    for (i, x) in v.iter().enumerate() {
        obj.insert(q.name(i).to_string(), json!(x));
    }
    Value::Object(obj)
}

pub fn dims_from_json(q: &QuiverMult, v: &Value) -> Result<Vec<i64>> {
    let obj = as_object(v, "v")?;
    for k in obj.keys() {
        q.vertex_index(k)?;
    }
    (0..q.vertex_count())
        .map(|i| obj.get(q.name(i)).map_or(Ok(0), |x| as_i64(x, q.name(i))))
        .collect()
}

pub fn rep_to_json<F: Scalar>(q: &QuiverMult, rep: &Representation<F>) -> Value {
    let mut maps = JsonMap::new();
    for (h, m) in q.double().halves.iter().zip(rep.maps()) {
        maps.insert(h.name.clone(), rmap_to_json(m));
    }
    json!({ "v": dims_to_json(q, &rep.dims_i64()), "maps": Value::Object(maps) })
}

/// Reads a representation; missing arrows are zero maps.
pub fn rep_from_json<F: Scalar>(q: &QuiverMult, v: &Value) -> Result<Representation<F>> {
    let dims = crate::repn::dims_from_i64(&dims_from_json(q, field(v, "v")?)?)?;
    let maps_obj = match v.get("maps") {
        Some(m) => as_object(m, "maps")?.clone(),
        None => JsonMap::new(),
    };
    let dq = q.double();
    for k in maps_obj.keys() {
        dq.index(k)?;
    }
    let maps = dq
        .halves
        .iter()
        .zip(arrow_shapes(q, &dims))
        .map(|(h, (s, t, c))| match maps_obj.get(&h.name) {
            Some(m) => rmap_from_json(m),
            None => RMap::zero(s, t, c),
        })
        .collect::<Result<Vec<_>>>()?;
    Representation::new(q, dims, maps)
}

pub fn orbit_spec_to_json<F: Scalar>(s: &OrbitSpec<F>) -> Value {
    let blocks: Vec<Value> = s.blocks().iter().map(|(w, t)| json!({ "dim": w, "theta": trunc_to_json(t) })).collect();
    json!({ "d": s.order(), "blocks": blocks })
}

pub fn orbit_spec_from_json<F: Scalar>(v: &Value) -> Result<OrbitSpec<F>> {
    let d = as_usize(field(v, "d")?, "d")?;
    let blocks = as_array(field(v, "blocks")?, "blocks")?
        .iter()
        .map(|b| Ok((as_usize(field(b, "dim")?, "dim")?, trunc_from_json(field(b, "theta")?)?)))
        .collect::<Result<Vec<_>>>()?;
    OrbitSpec::new(d, blocks)
}

pub fn leg_point_to_json<F: Scalar>(b: &LegPoint<F>) -> Value {
    json!({
        "down": b.down.iter().map(rmap_to_json).collect::<Vec<_>>(),
        "up": b.up.iter().map(rmap_to_json).collect::<Vec<_>>(),
        "a": rmap_to_json(&b.a),
        "b": rmap_to_json(&b.b),
    })
}

pub fn leg_point_from_json<F: Scalar>(v: &Value) -> Result<LegPoint<F>> {
    let list = |key: &str| -> Result<Vec<RMap<F>>> { as_array(field(v, key)?, key)?.iter().map(rmap_from_json).collect() };
    LegPoint::from_maps(list("down")?, list("up")?)
}

pub fn quiver_to_json(q: &QuiverMult) -> Value {
    let vertices: Vec<Value> = q.vertices().iter().map(|v| json!({ "name": v.name, "mult": v.mult })).collect();
    let arrows: Vec<Value> =
        q.arrows().iter().map(|a| json!({ "name": a.name, "src": q.name(a.src), "dst": q.name(a.dst) })).collect();
    json!({ "vertices": vertices, "arrows": arrows })
}

pub fn quiver_from_json(v: &Value) -> Result<QuiverMult> {
    let vertices = as_array(field(v, "vertices")?, "vertices")?
        .iter()
        .map(|x| {
            let name = field(x, "name")?.as_str().ok_or_else(|| err("vertex name must be a string"))?;
            Ok(Vertex { name: name.to_string(), mult: as_usize(field(x, "mult")?, "mult")? })
        })
        .collect::<Result<Vec<_>>>()?;
    let index = |name: &Value| -> Result<usize> {
        let s = name.as_str().ok_or_else(|| err("arrow endpoint must be a string"))?;
        vertices.iter().position(|v| v.name == s).ok_or_else(|| Error::UnknownVertex(s.to_string()))
    };
    let arrows = as_array(field(v, "arrows")?, "arrows")?
        .iter()
        .map(|x| {
            let name = field(x, "name")?.as_str().ok_or_else(|| err("arrow name must be a string"))?;
            Ok(Arrow { name: name.to_string(), src: index(field(x, "src")?)?, dst: index(field(x, "dst")?)? })
        })
        .collect::<Result<Vec<_>>>()?;
    QuiverMult::new(vertices, arrows)
}

/// Cartan data with vertex names, as integer and rational matrices.
pub fn cartan_to_json(q: &QuiverMult) -> Value {
    let c = q.cartan();
    let aprime: Vec<Vec<String>> = c.aprime.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    let names: Vec<&str> = (0..q.vertex_count()).map(|i| q.name(i)).collect();
    json!({
        "vertices": names,
        "A": int_matrix_to_json(&c.a),
        "Aprime": aprime,
        "D": c.d,
        "C": int_matrix_to_json(&c.c),
        "symmetrizable": c.is_symmetrizable(),
    })
}

pub fn double_to_json(q: &QuiverMult) -> Value {
    let dq = q.double();
    let halves: Vec<Value> = dq
        .halves
        .iter()
        .enumerate()
        .map(|(k, h)| {
            json!({
                "name": h.name,
                "src": q.name(h.src),
                "dst": q.name(h.dst),
                "sgn": h.sgn,
                "d": h.d,
                "f": h.f,
                "bar": dq.halves[DoubleQuiver::bar(k)].name,
            })
        })
        .collect();
    Value::Array(halves)
}

pub fn leg_to_json(q: &QuiverMult, leg: &LegDescriptor) -> Value {
    json!({ "vertices": leg.names(q), "d": leg.d })
}

pub fn report_to_json(r: &Report) -> Value {
    let checks: Vec<Value> = r.checks.iter().map(|c| json!({ "relation": c.relation, "passed": c.passed })).collect();
    json!({ "passed": r.passed(), "checks": checks })
}

pub fn coxeter_report_to_json(r: &CoxeterReport) -> Value {
    let checks: Vec<Value> = r.checks.iter().map(|c| json!({ "relation": c.relation, "passed": c.passed })).collect();
    json!({ "passed": r.passed(), "checks": checks, "skipped": r.skipped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse_quiver;
    use crate::repn::random_rep;
    use crate::rng;
    use crate::scalars::GaussQ;

    type T = TruncScalar<GaussQ>;

    fn example() -> QuiverMult {
        parse_quiver("quiver { vertex i mult 1 vertex j mult 2 vertex k mult 1 arrow a : j -> i arrow b : i -> k }").unwrap()
    }

    #[test]
    fn rmap_roundtrip_and_bytes() {
        let mut r = rng::rng(1);
        let m: RMap<GaussQ> = rng::random_map(&mut r, ModShape::new(2, 2), ModShape::new(1, 4), 2);
        let j = rmap_to_json(&m);
        assert_eq!(to_string(&j), to_string(&rmap_to_json(&m)));
        assert_eq!(rmap_from_json::<GaussQ>(&j).unwrap(), m);
        let keys: Vec<&String> = j.as_object().unwrap().keys().collect();
        assert_eq!(keys, vec!["src", "dst", "base", "flat"]);
        assert!(j["flat"][0][0].is_string());
    }

    #[test]
    fn rep_roundtrip() {
        let q = example();
        let rep = random_rep::<GaussQ>(&q, &[1, 2, 1], 3).unwrap();
        let j = rep_to_json(&q, &rep);
        assert_eq!(rep_from_json::<GaussQ>(&q, &j).unwrap(), rep);
        assert!(j["maps"].get("a~").is_some());
        let text = to_string(&j);
        assert_eq!(rep_from_json::<GaussQ>(&q, &parse_json(&text).unwrap()).unwrap(), rep);
    }

    #[test]
    fn params_and_spec() {
        let q = example();
        let lam = vec![T::from_ints(&[1]), T::new(vec![GaussQ::ratio(1, 2), GaussQ::from_ints(0, 1)]).unwrap(), T::from_ints(&[-3])];
        let j = params_to_json(&q, &lam);
        assert_eq!(params_from_json::<GaussQ>(&q, &j).unwrap(), lam);
        let loose = parse_json(r#"{ "j": [1, "2"] }"#).unwrap();
        let p = params_from_json::<GaussQ>(&q, &loose).unwrap();
        assert_eq!(p[1], T::from_ints(&[1, 2]));
        assert!(p[0].is_zero());
        assert!(params_from_json::<GaussQ>(&q, &parse_json(r#"{ "j": [1] }"#).unwrap()).is_err());
        assert!(params_from_json::<GaussQ>(&q, &parse_json(r#"{ "zz": [1] }"#).unwrap()).is_err());

        let spec = OrbitSpec::new(2, vec![(1, T::from_ints(&[0, 1])), (2, T::from_ints(&[1, 0]))]).unwrap();
        assert_eq!(orbit_spec_from_json::<GaussQ>(&orbit_spec_to_json(&spec)).unwrap(), spec);
    }

    #[test]
    fn quiver_roundtrip() {
        let q = example();
        assert_eq!(quiver_from_json(&quiver_to_json(&q)).unwrap(), q);
        assert_eq!(parse_quiver(&q.to_dsl()).unwrap(), q);
    }

    #[test]
    fn leg_point_roundtrip() {
        let spec = OrbitSpec::new(2, vec![(1, T::from_ints(&[0, 1])), (2, T::from_ints(&[1, 0]))]).unwrap();
        let b = crate::orbit::canonical_leg_point(&spec).unwrap();
        assert_eq!(leg_point_from_json::<GaussQ>(&leg_point_to_json(&b)).unwrap(), b);
    }
}
