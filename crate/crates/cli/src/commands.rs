use std::io::Read;

use berkdyn::dot::export_dot;
use berkdyn::dynamics::{
    activity_measure_approx, boundedness_profile, escape_log_radius, green_function,
    green_function_rational, green_tail_bound, green_value, green_value_rational, iterate_marked,
    mandelbrot_test, pullback_dirac, EscapeResult, MarkedPoint, PolyFamily,
};
use berkdyn::io::{
    family_from_json, family_to_json, lift_from_json, measure_to_json, point_from_json,
    point_to_json, prime_of, region_from_json, report_to_json, skeleton_from_json,
    skeleton_to_json,
};
use berkdyn::potential::{emp_check, equilibrium, CompactRegion};
use berkdyn::valfield::{format_rational, parse_ext, rat};
use berkdyn::{BerkPoint, Error, FieldCtx, Measure, PLFunc, Poly, Skeleton, Var};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::{Cli, Command, Example, Format, Inline};

const DEFAULT_LEVEL: usize = 4;
const DEFAULT_ESCAPE_BUDGET: usize = 64;
const DEFAULT_TRIALS: usize = 100;

/// Keys whose exact values get a decimal companion under `--approx`.
const APPROX_KEYS: &[&str] = &[
    "mass",
    "value",
    "robin",
    "capacity_log",
    "tail_bound",
    "total_mass",
    "escape_log_radius",
];

pub enum Failure {
    Lib(Error),
    Input { code: &'static str, detail: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn input(code: &'static str, detail: impl Into<String>) -> Self {
        Failure::Input {
            code,
            detail: detail.into(),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(e) if e.is_degeneracy() => 3,
            _ => 2,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Failure::Lib(e) => json!({"error": e.code(), "detail": e.to_string()}),
            Failure::Input { code, detail } => json!({"error": code, "detail": detail}),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

enum Output {
    Json(Value),
    Dot(String),
}

/// Runs one command, returning the exit code and the text for standard output.
pub fn run(cli: &Cli) -> (u8, String) {
    match dispatch(cli) {
        Ok(Output::Json(v)) => {
            let v = if cli.approx { with_approx(v) } else { v };
            (0, pretty(&v))
        }
        Ok(Output::Dot(s)) => (0, s),
        Err(f) => (f.exit_code(), format!("{}\n", f.to_json())),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn dispatch(cli: &Cli) -> Outcome<Output> {
    match &cli.command {
        Command::Green(i) => green(cli, &read_input(cli, i)?),
        Command::Activity(i) => activity(cli, &read_input(cli, i)?),
        Command::Pullback(i) => pullback(cli, &read_input(cli, i)?),
        Command::Mandelbrot(i) => mandelbrot(cli, &read_input(cli, i)?),
        Command::Equilibrium(i) => equilibrium_cmd(cli, &read_input(cli, i)?),
        Command::Capacity(i) => capacity(cli, &read_input(cli, i)?),
        Command::Hull(i) => hull(cli, &read_input(cli, i)?),
        Command::Example(Example::Quadratic) => quadratic_example(cli),
    }
}

fn read_input(cli: &Cli, inline: &Inline) -> Outcome<Value> {
    let text = match (&cli.input, &inline.json) {
        (Some(path), _) if path == "-" => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::input("io", e.to_string()))?;
            s
        }
        (Some(path), _) => std::fs::read_to_string(path)
            .map_err(|e| Failure::input("io", format!("{path}: {e}")))?,
        (None, Some(s)) => s.clone(),
        (None, None) => {
            return Err(Failure::input(
                "missing_input",
                "pass --input FILE|- or inline JSON",
            ))
        }
    };
    serde_json::from_str(&text).map_err(|e| Failure::input("invalid_json", e.to_string()))
}

fn level(cli: &Cli, input: &Value, default: usize) -> Outcome<usize> {
    if let Some(n) = cli.n {
        return Ok(n);
    }
    match input.get("n") {
        None => Ok(default),
        Some(v) => v
            .as_u64()
            .map(|n| n as usize)
            .ok_or_else(|| Failure::input("parse", "n must be a non-negative integer")),
    }
}

fn default_skeleton(ctx: FieldCtx) -> Skeleton {
    Skeleton::build_hull(&[BerkPoint::classical(ctx, rat(0, 1)), BerkPoint::Infinity])
        .expect("nonempty point set")
}

/// `--skeleton FILE`, else the input's `"skeleton"` field, else hull{0, ∞}.
fn skeleton_for(cli: &Cli, ctx: FieldCtx, input: &Value) -> Outcome<Skeleton> {
    if let Some(path) = &cli.skeleton {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::input("io", format!("{}: {e}", path.display())))?;
        let v: Value = serde_json::from_str(&text)
            .map_err(|e| Failure::input("invalid_json", e.to_string()))?;
        return Ok(skeleton_from_json(ctx, &v)?);
    }
    match input.get("skeleton") {
        Some(v) => Ok(skeleton_from_json(ctx, v)?),
        None => Ok(default_skeleton(ctx)),
    }
}

/// Tail bound over the finite vertices, or `None` when there are none.
fn finite_tail_bound(fam: &PolyFamily, skel: &Skeleton) -> Outcome<Option<String>> {
    let finite: Vec<BerkPoint> = skel
        .vertices()
        .iter()
        .filter(|x| !x.is_infinity())
        .cloned()
        .collect();
    if finite.is_empty() {
        return Ok(None);
    }
    let bound = green_tail_bound(fam, &Skeleton::build_hull(&finite)?)?;
    Ok(Some(format_rational(&bound)))
}

fn vertex_values(f: &PLFunc) -> Value {
    let s = f.skeleton();
    Value::Array(
        s.vertices()
            .iter()
            .enumerate()
            .map(|(i, x)| json!({"point": point_to_json(x), "value": f.value_at_vertex(i).to_string()}))
            .collect(),
    )
}

fn labels(points: &[BerkPoint]) -> Value {
    Value::Array(
        points
            .iter()
            .map(|x| Value::String(x.to_string()))
            .collect(),
    )
}

fn point_list(points: &[BerkPoint]) -> Value {
    Value::Array(points.iter().map(point_to_json).collect())
}

fn require_json(cli: &Cli, command: &str) -> Outcome<()> {
    if cli.format == Format::Dot {
        return Err(Failure::input(
            "unsupported_format",
            format!("{command} has no DOT rendering"),
        ));
    }
    Ok(())
}

fn green(cli: &Cli, input: &Value) -> Outcome<Output> {
    require_json(cli, "green")?;
    let n = level(cli, input, DEFAULT_LEVEL)?;
    if input.get("p_coeffs_t").is_some() {
        let lift = lift_from_json(input, cli.prime)?;
        let ctx = lift.ctx();
        let mut out = green_common(
            cli,
            ctx,
            input,
            n,
            |t| green_value_rational(&lift, n, t),
            |s| green_function_rational(&lift, n, s),
        )?;
        out["warning"] = lift.warning().map_or(Value::Null, Value::String);
        return Ok(Output::Json(out));
    }
    let (fam, c) = family_from_json(input, cli.prime)?;
    let out = green_common(
        cli,
        fam.ctx(),
        input,
        n,
        |t| green_value(&fam, &c, n, t),
        |s| green_function(&fam, &c, n, s),
    )?;
    Ok(Output::Json(out))
}

fn green_common(
    cli: &Cli,
    ctx: FieldCtx,
    input: &Value,
    n: usize,
    at: impl Fn(&BerkPoint) -> berkdyn::Result<num_rational::BigRational>,
    on: impl Fn(&Skeleton) -> berkdyn::Result<PLFunc>,
) -> Outcome<Value> {
    if let Some(t) = input.get("t") {
        let t = point_from_json(ctx, t)?;
        let value = at(&t)?;
        return Ok(json!({"n": n, "t": point_to_json(&t), "value": format_rational(&value)}));
    }
    let skel = skeleton_for(cli, ctx, input)?;
    let f = on(&skel)?;
    Ok(json!({
        "n": n,
        "skeleton": skeleton_to_json(f.skeleton()),
        "values": vertex_values(&f),
        "laplacian": measure_to_json(&f.laplacian()),
    }))
}

fn activity(cli: &Cli, input: &Value) -> Outcome<Output> {
    let n = level(cli, input, DEFAULT_LEVEL)?;
    let (fam, c) = family_from_json(input, cli.prime)?;
    let skel = skeleton_for(cli, fam.ctx(), input)?;
    let mu = activity_measure_approx(&fam, &c, n, &skel)?;
    if cli.format == Format::Dot {
        return Ok(Output::Dot(export_dot(&skel, &[("μ", &mu)])));
    }
    Ok(Output::Json(json!({
        "n": n,
        "measure": measure_to_json(&mu),
        "total_mass": format_rational(&mu.total_mass()),
        "support": labels(&mu.support()),
        "tail_bound": finite_tail_bound(&fam, &skel)?,
    })))
}

fn parse_map(ctx: FieldCtx, s: &str) -> berkdyn::Result<Poly> {
    Poly::parse(ctx, Var::T, s).or_else(|_| Poly::parse(ctx, Var::Z, s))
}

fn pullback(cli: &Cli, input: &Value) -> Outcome<Output> {
    let ctx = prime_of(input, cli.prime)?;
    let g = input
        .get("g")
        .and_then(Value::as_str)
        .ok_or_else(|| Failure::input("parse", "missing polynomial field \"g\""))?;
    let g = parse_map(ctx, g)?;
    let target = match input.get("target") {
        Some(v) => point_from_json(ctx, v)?,
        None => BerkPoint::gauss(ctx),
    };
    let skel = skeleton_for(cli, ctx, input)?;
    let m = pullback_dirac(&g, &target, &skel)?;
    if cli.format == Format::Dot {
        return Ok(Output::Dot(export_dot(&skel, &[("pullback", &m)])));
    }
    Ok(Output::Json(json!({
        "target": point_to_json(&target),
        "measure": measure_to_json(&m),
        "total_mass": format_rational(&m.total_mass()),
        "support": labels(&m.support()),
    })))
}

fn mandelbrot(cli: &Cli, input: &Value) -> Outcome<Output> {
    require_json(cli, "mandelbrot")?;
    let (fam, c) = family_from_json(input, cli.prime)?;
    let ctx = fam.ctx();
    if let Some(t) = input.get("t") {
        let t = point_from_json(ctx, t)?;
        let budget = level(cli, input, DEFAULT_ESCAPE_BUDGET)?;
        let result = match mandelbrot_test(&fam, &c, &t, budget)? {
            EscapeResult::EscapedAt(k) => json!({"escaped_at": k}),
            EscapeResult::GoodReductionBounded => json!("good_reduction_bounded"),
            EscapeResult::BoundedSoFar(k) => json!({"bounded_so_far": k}),
        };
        let radius = escape_log_radius(&fam, t.center().ok_or(Error::NotTypeOne)?);
        return Ok(Output::Json(json!({
            "t": point_to_json(&t),
            "result": result,
            "escape_log_radius": format_rational(&radius),
        })));
    }
    let n = level(cli, input, DEFAULT_LEVEL)?;
    let skel = skeleton_for(cli, ctx, input)?;
    let prof = boundedness_profile(&fam, &c, &skel, n)?;
    Ok(Output::Json(json!({
        "n": n,
        "values": vertex_values(&prof.green),
        "zero_vertices": point_list(&prof.zero_vertices),
        "escape_vertices": point_list(&prof.escape_vertices),
        "boundary": labels(&prof.boundary),
        "boundary_points": point_list(&prof.boundary),
        "tail_bound": prof.tail_bound_on_zero.as_ref().map(format_rational),
        "exact": prof.exact,
    })))
}

fn region_and_base(cli: &Cli, input: &Value) -> Outcome<(CompactRegion, BerkPoint)> {
    let ctx = prime_of(input, cli.prime)?;
    let region = region_from_json(ctx, input)?;
    let base = match input.get("base") {
        Some(b) => point_from_json(ctx, b)?,
        None => BerkPoint::Infinity,
    };
    Ok((region, base))
}

fn equilibrium_cmd(cli: &Cli, input: &Value) -> Outcome<Output> {
    let (region, base) = region_and_base(cli, input)?;
    let report = equilibrium(&region, &base)?;
    if cli.format == Format::Dot {
        let mut pts = report.candidates.clone();
        pts.push(base);
        let skel = Skeleton::build_hull(&pts)?;
        return Ok(Output::Dot(export_dot(&skel, &[("μ", &report.minimizer)])));
    }
    let trials = match input.get("trials") {
        None => DEFAULT_TRIALS,
        Some(v) => v
            .as_u64()
            .ok_or_else(|| Failure::input("parse", "trials must be a non-negative integer"))?
            as usize,
    };
    let seed = input.get("seed").and_then(Value::as_u64).unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let emp = emp_check(
        &report.minimizer,
        &report.candidates,
        &base,
        trials,
        &mut rng,
    )?;
    let mut out = report_to_json(&report);
    out["emp_check"] = json!({"trials": trials, "seed": seed, "holds": emp});
    Ok(Output::Json(out))
}

fn capacity(cli: &Cli, input: &Value) -> Outcome<Output> {
    require_json(cli, "capacity")?;
    let (region, base) = region_and_base(cli, input)?;
    let report = equilibrium(&region, &base)?;
    Ok(Output::Json(json!({
        "capacity_log": report.capacity_log.to_string(),
        "robin": report.robin.to_string(),
        "base": point_to_json(&base),
    })))
}

fn hull(cli: &Cli, input: &Value) -> Outcome<Output> {
    let ctx = prime_of(input, cli.prime)?;
    let skel = skeleton_from_json(ctx, input)?;
    match cli.format {
        Format::Dot => Ok(Output::Dot(export_dot(&skel, &[]))),
        Format::Json => Ok(Output::Json(skeleton_to_json(&skel))),
    }
}

/// The full worked example: `z^2 + t`, marked point `0`, on hull{0, ∞},
/// compared with the equilibrium measure of the closed unit disc.
fn quadratic_example(cli: &Cli) -> Outcome<Output> {
    let ctx = FieldCtx::new(cli.prime.unwrap_or(3))?;
    let n_max = cli.n.unwrap_or(DEFAULT_LEVEL);
    if n_max == 0 {
        return Err(Failure::input("parse", "--n must be at least 1"));
    }
    let fam = PolyFamily::quadratic(ctx);
    let c = MarkedPoint::zero(ctx);
    let skel = default_skeleton(ctx);
    let disc = CompactRegion::new(ctx, &[(rat(0, 1), rat(0, 1))], &[])?;
    let eq = equilibrium(&disc, &BerkPoint::Infinity)?;
    let escaping = BerkPoint::classical(ctx, rat(1, ctx.p() as i64));

    let mut table = vec![];
    let mut last: Option<Measure> = None;
    for n in 1..=n_max {
        let mu = activity_measure_approx(&fam, &c, n, &skel)?;
        let cn = iterate_marked(&fam, &c, n)?;
        let normalized = mu.normalized().ok_or(Error::ZeroCapacity)?;
        table.push(json!({
            "n": n,
            "degree_c_n": cn.degree(),
            "mass": format_rational(&mu.total_mass()),
            "support": labels(&mu.support()),
            "green_at_escaping_t": format_rational(&green_value(&fam, &c, n, &escaping)?),
            "matches_equilibrium": normalized == eq.minimizer,
        }));
        last = Some(mu);
    }
    let mu = last.expect("n_max >= 1");
    if cli.format == Format::Dot {
        return Ok(Output::Dot(export_dot(&skel, &[("μ", &mu)])));
    }
    let prof = boundedness_profile(&fam, &c, &skel, n_max)?;
    let normalized = mu.normalized().ok_or(Error::ZeroCapacity)?;
    let support_is_boundary = prof.boundary == mu.support();
    Ok(Output::Json(json!({
        "family": family_to_json(&fam, &c),
        "n": n_max,
        "escaping_t": point_to_json(&escaping),
        "table": table,
        "measure": measure_to_json(&mu),
        "normalized_measure": measure_to_json(&normalized),
        "equilibrium": report_to_json(&eq),
        "matches_equilibrium": normalized == eq.minimizer,
        "boundary": labels(&prof.boundary),
        "boundary_points": point_list(&prof.boundary),
        "support_is_boundary": support_is_boundary,
        "note": "the pullback of the Gauss point along c_n has mass deg(c_n) = 2^(n-1), so the level-n activity measure has mass 1/2; it is normalized before comparison",
    })))
}

/// Adds `<key>_approx` decimals next to exact rational strings.
fn with_approx(v: Value) -> Value {
    match v {
        Value::Array(items) => Value::Array(items.into_iter().map(with_approx).collect()),
        Value::Object(map) => {
            let mut out = serde_json::Map::new();
            for (k, v) in map {
                if APPROX_KEYS.contains(&k.as_str()) {
                    if let Some(x) = v.as_str().and_then(decimal) {
                        out.insert(format!("{k}_approx"), x);
                    }
                }
                out.insert(k, with_approx(v));
            }
            Value::Object(out)
        }
        other => other,
    }
}

fn decimal(s: &str) -> Option<Value> {
    let x = parse_ext(s).ok()?;
    let f = x.finite()?;
    serde_json::Number::from_f64(berkdyn::valfield::rational_to_f64(f)).map(Value::Number)
}
