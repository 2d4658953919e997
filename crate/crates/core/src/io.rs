//! JSON encodings of points, measures, skeletons, regions, families and
//! energy reports. Every number is an exact rational string.

use serde_json::{json, Map, Value};

use crate::berk::BerkPoint;
use crate::dynamics::{MarkedPoint, PolyFamily, RationalFamilyLift};
use crate::error::{Error, Result};
use crate::measure::Measure;
use crate::poly::{Poly, Var};
use crate::potential::{CompactRegion, EnergyReport};
use crate::skeleton::Skeleton;
use crate::valfield::{format_rational, parse_ext, parse_rational, ExtRat, FieldCtx};

fn schema(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| schema(format!("missing field {key:?}")))
}

fn string<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| schema(format!("{what} must be a string")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| schema(format!("{what} must be an array")))
}

/// Accepts a JSON string or number.
fn rational_value(v: &Value, what: &str) -> Result<num_rational::BigRational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        _ => Err(schema(format!("{what} must be a rational string"))),
    }
}

fn ext_value(v: &Value, what: &str) -> Result<ExtRat> {
    match v {
        Value::String(s) => parse_ext(s),
        Value::Number(n) => parse_ext(&n.to_string()),
        _ => Err(schema(format!(
            "{what} must be a rational string or \"-inf\""
        ))),
    }
}

/// The `prime` field of an object, falling back to `default`.
pub fn prime_of(v: &Value, default: Option<u64>) -> Result<FieldCtx> {
    let p = match v.get("prime") {
        Some(p) => p
            .as_u64()
            .ok_or_else(|| schema("prime must be a positive integer"))?,
        None => default.ok_or_else(|| schema("no prime given"))?,
    };
    FieldCtx::new(p)
}

/// `"infinity"`, `{"center": c, "logradius": r}`, or a bare rational for a
/// classical point.
pub fn point_to_json(x: &BerkPoint) -> Value {
    match x {
        BerkPoint::Infinity => Value::String("infinity".into()),
        BerkPoint::Finite(d) => json!({
            "center": format_rational(d.center()),
            "logradius": d.radius().to_string(),
        }),
    }
}

pub fn point_from_json(ctx: FieldCtx, v: &Value) -> Result<BerkPoint> {
    match v {
        Value::String(s) if s == "infinity" || s == "inf" || s == "∞" => Ok(BerkPoint::Infinity),
        Value::String(_) | Value::Number(_) => {
            Ok(BerkPoint::classical(ctx, rational_value(v, "point")?))
        }
        Value::Object(_) => {
            let center = rational_value(field(v, "center")?, "center")?;
            let radius = match v.get("logradius") {
                Some(r) => ext_value(r, "logradius")?,
                None => ExtRat::NegInf,
            };
            Ok(BerkPoint::disc(ctx, center, radius))
        }
        _ => Err(schema(
            "a point is \"infinity\", a rational, or {center, logradius}",
        )),
    }
}

pub fn points_from_json(ctx: FieldCtx, v: &Value) -> Result<Vec<BerkPoint>> {
    array(v, "points")?
        .iter()
        .map(|p| point_from_json(ctx, p))
        .collect()
}

/// `[{"point": ..., "mass": "a/b"}, ...]` in canonical point order.
pub fn measure_to_json(m: &Measure) -> Value {
    Value::Array(
        m.atoms()
            .map(|(x, w)| json!({"point": point_to_json(x), "mass": format_rational(w)}))
            .collect(),
    )
}

pub fn measure_from_json(ctx: FieldCtx, v: &Value) -> Result<Measure> {
    let mut m = Measure::new();
    for atom in array(v, "measure")? {
        let x = point_from_json(ctx, field(atom, "point")?)?;
        let w = rational_value(field(atom, "mass")?, "mass")?;
        m.add_atom(x, w);
    }
    Ok(m)
}

/// `{"points": [...]}` spanning the hull, or `{"vertices": [...]}` as emitted
/// by [`skeleton_to_json`].
pub fn skeleton_from_json(ctx: FieldCtx, v: &Value) -> Result<Skeleton> {
    let pts = match (v.get("points"), v.get("vertices")) {
        (Some(p), _) | (None, Some(p)) => points_from_json(ctx, p)?,
        (None, None) => return Err(schema("a skeleton needs \"points\" or \"vertices\"")),
    };
    Skeleton::build_hull(&pts)
}

pub fn skeleton_to_json(s: &Skeleton) -> Value {
    let edges: Vec<Value> = s
        .edges()
        .map(|e| {
            json!({
                "child": point_to_json(s.vertex(e.child)),
                "parent": point_to_json(s.vertex(e.parent)),
                "length": s.edge_length(e.child).to_string(),
            })
        })
        .collect();
    json!({
        "vertices": s.vertices().iter().map(point_to_json).collect::<Vec<_>>(),
        "edges": edges,
    })
}

/// `{"discs": [{"center", "logradius"}, ...], "points": [...]}`.
pub fn region_from_json(ctx: FieldCtx, v: &Value) -> Result<CompactRegion> {
    let mut pts = vec![];
    if let Some(d) = v.get("discs") {
        for disc in array(d, "discs")? {
            let center = rational_value(field(disc, "center")?, "center")?;
            let radius = rational_value(field(disc, "logradius")?, "logradius")?;
            pts.push(BerkPoint::disc_rat(ctx, center, radius));
        }
    }
    if let Some(p) = v.get("points") {
        for x in array(p, "points")? {
            let x = point_from_json(ctx, x)?;
            if !x.is_classical() {
                return Err(schema("region points must be classical; use discs"));
            }
            pts.push(x);
        }
    }
    CompactRegion::from_points(ctx, pts)
}

pub fn region_to_json(r: &CompactRegion) -> Value {
    let mut discs = vec![];
    let mut points = vec![];
    for x in r.pieces() {
        if x.is_classical() {
            points.push(Value::String(format_rational(x.center().expect("finite"))));
        } else {
            discs.push(point_to_json(x));
        }
    }
    json!({"prime": r.ctx().p(), "discs": discs, "points": points})
}

fn poly_t(ctx: FieldCtx, v: &Value, what: &str) -> Result<Poly> {
    Poly::parse(ctx, Var::T, string(v, what)?)
}

fn poly_list(ctx: FieldCtx, v: &Value, what: &str) -> Result<Vec<Poly>> {
    array(v, what)?
        .iter()
        .map(|c| poly_t(ctx, c, what))
        .collect()
}

/// `{"prime": p, "degree": d, "coeffs_t": ["a_0(t)", ..., "a_d(t)"],
/// "marked": "c(t)"}`; `marked` defaults to `0`.
pub fn family_from_json(
    v: &Value,
    default_prime: Option<u64>,
) -> Result<(PolyFamily, MarkedPoint)> {
    let ctx = prime_of(v, default_prime)?;
    let coeffs = poly_list(ctx, field(v, "coeffs_t")?, "coeffs_t")?;
    if let Some(d) = v.get("degree") {
        let d = d
            .as_u64()
            .ok_or_else(|| schema("degree must be a positive integer"))?;
        if d as usize + 1 != coeffs.len() {
            return Err(Error::InvalidFamily(format!(
                "degree {d} needs {} coefficients, got {}",
                d + 1,
                coeffs.len()
            )));
        }
    }
    let fam = PolyFamily::new(ctx, coeffs)?;
    let marked = match v.get("marked") {
        Some(c) => MarkedPoint(poly_t(ctx, c, "marked")?),
        None => MarkedPoint::zero(ctx),
    };
    Ok((fam, marked))
}

pub fn family_to_json(fam: &PolyFamily, c: &MarkedPoint) -> Value {
    json!({
        "prime": fam.ctx().p(),
        "degree": fam.degree(),
        "coeffs_t": fam.coeffs().iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        "marked": c.0.to_string(),
    })
}

/// `{"prime": p, "degree": d, "p_coeffs_t": [...], "q_coeffs_t": [...],
/// "marked": ["X_0(t)", "Y_0(t)"]}` where entry `j` multiplies
/// `X^{d-j} Y^j`.
pub fn lift_from_json(v: &Value, default_prime: Option<u64>) -> Result<RationalFamilyLift> {
    let ctx = prime_of(v, default_prime)?;
    let p = poly_list(ctx, field(v, "p_coeffs_t")?, "p_coeffs_t")?;
    let q = poly_list(ctx, field(v, "q_coeffs_t")?, "q_coeffs_t")?;
    if let Some(d) = v.get("degree").and_then(Value::as_u64) {
        if d as usize + 1 != p.len() {
            return Err(Error::InvalidFamily(format!(
                "degree {d} needs {} coefficients",
                d + 1
            )));
        }
    }
    let marked = array(field(v, "marked")?, "marked")?;
    if marked.len() != 2 {
        return Err(schema("marked must be a pair [X_0(t), Y_0(t)]"));
    }
    let marked = (
        poly_t(ctx, &marked[0], "marked")?,
        poly_t(ctx, &marked[1], "marked")?,
    );
    RationalFamilyLift::new(ctx, p, q, marked)
}

pub fn report_to_json(r: &EnergyReport) -> Value {
    json!({
        "robin": r.robin.to_string(),
        "capacity_log": r.capacity_log.to_string(),
        "measure": measure_to_json(&r.minimizer),
        "candidates": r.candidates.iter().map(point_to_json).collect::<Vec<_>>(),
        "base": point_to_json(&r.base),
    })
}

/// Reads back the fields of [`report_to_json`]; candidates default to the
/// support of the measure.
pub fn report_from_json(ctx: FieldCtx, v: &Value) -> Result<EnergyReport> {
    let minimizer = measure_from_json(ctx, field(v, "measure")?)?;
    let candidates = match v.get("candidates") {
        Some(c) => points_from_json(ctx, c)?,
        None => minimizer.support(),
    };
    let base = match v.get("base") {
        Some(b) => point_from_json(ctx, b)?,
        None => BerkPoint::Infinity,
    };
    Ok(EnergyReport {
        robin: ext_value(field(v, "robin")?, "robin")?,
        capacity_log: ext_value(field(v, "capacity_log")?, "capacity_log")?,
        minimizer,
        candidates,
        base,
    })
}

/// Inserts `key: value` into an object.
pub fn with_field(mut v: Value, key: &str, value: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert(key.to_string(), value);
    } else {
        let mut m = Map::new();
        m.insert(key.to_string(), value);
        return Value::Object(m);
    }
    v
}
