//! JSON encodings. Rationals are `"p/q"` strings (`"p"` when `q = 1`);
//! integer JSON numbers are accepted on input, decimals are not.

use coneval_core::arrangement::CellDecomposition;
use coneval_core::gamma::Mutation;
use coneval_core::verify::{Check, CheckReport, Failure, Instance, Outcome};
use coneval_core::{AffineCondition, Cone, FaceId, FormalSum, GeneralizedPolyhedron, QVector, Rational, Relation};
use serde_json::{json, Map, Value};

use crate::CliError;

type Res<T> = Result<T, CliError>;

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn vector(v: &QVector) -> Value {
    Value::Array(v.coords().iter().map(rational).collect())
}

fn vectors<'a>(vs: impl IntoIterator<Item = &'a QVector>) -> Value {
    Value::Array(vs.into_iter().map(vector).collect())
}

pub fn parse_rational(v: &Value) -> Res<Rational> {
    match v {
        Value::String(s) => s.parse().map_err(|e| bad(format!("{e}"))),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rational::integer(i)),
            None if n.is_u64() => n.to_string().parse().map_err(|e| bad(format!("{e}"))),
            None => Err(bad(format!("{n} is not exact; write rationals as \"p/q\" strings"))),
        },
        other => Err(bad(format!("expected a rational, found {other}"))),
    }
}

pub fn parse_vector(v: &Value) -> Res<QVector> {
    let items = v.as_array().ok_or_else(|| bad(format!("expected an array of rationals, found {v}")))?;
    Ok(QVector::new(items.iter().map(parse_rational).collect::<Res<_>>()?))
}

fn parse_vectors(v: &Value, what: &str) -> Res<Vec<QVector>> {
    let items = v.as_array().ok_or_else(|| bad(format!("{what}: expected an array of vectors")))?;
    items.iter().map(parse_vector).collect()
}

/// A point given on the command line: `1,1/2`, or a JSON array.
pub fn parse_point(s: &str) -> Res<QVector> {
    let s = s.trim();
    if s.starts_with('[') {
        let v: Value = serde_json::from_str(s).map_err(|e| bad(format!("point {s:?}: {e}")))?;
        return parse_vector(&v);
    }
    if s.is_empty() {
        return Ok(QVector::new(Vec::new()));
    }
    let coords = s.split(',').map(|c| c.parse::<Rational>().map_err(|e| bad(format!("point {s:?}: {e}"))));
    Ok(QVector::new(coords.collect::<Res<_>>()?))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Res<&'a Value> {
    obj.get(key).ok_or_else(|| bad(format!("missing key {key:?}")))
}

fn object<'a>(v: &'a Value, what: &str) -> Res<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| bad(format!("{what}: expected a JSON object")))
}

fn check_dims(dim: usize, vs: &[QVector], what: &str) -> Res<()> {
    match vs.iter().find(|v| v.dim() != dim) {
        Some(v) => Err(bad(format!("{what}: vector of length {} in dimension {dim}", v.dim()))),
        None => Ok(()),
    }
}

pub fn cone(c: &Cone) -> Value {
    let hrep: Vec<QVector> = c.hrep().into_iter().map(|h| h.normal().clone()).collect();
    json!({
        "dim": c.dim(),
        "hrep": vectors(&hrep),
        "vrep": { "rays": vectors(c.rays()), "lineality": vectors(c.lineality().rows()) },
    })
}

pub fn parse_cone(v: &Value) -> Res<Cone> {
    let obj = object(v, "cone")?;
    let hrep = obj.get("hrep").map(|h| parse_vectors(h, "hrep")).transpose()?;
    let vrep = obj
        .get("vrep")
        .map(|v| -> Res<(Vec<QVector>, Vec<QVector>)> {
            let o = object(v, "vrep")?;
            let get = |k: &str| o.get(k).map(|x| parse_vectors(x, k)).transpose().map(Option::unwrap_or_default);
            Ok((get("rays")?, get("lineality")?))
        })
        .transpose()?;
    let inferred = hrep.iter().flatten().chain(vrep.iter().flat_map(|(r, l)| r.iter().chain(l))).next().map(QVector::dim);
    let dim = match obj.get("dim") {
        Some(d) => d.as_u64().ok_or_else(|| bad("dim must be a nonnegative integer"))? as usize,
        None => inferred.ok_or_else(|| bad("cannot infer the dimension; add \"dim\""))?,
    };
    if dim == 0 {
        return Err(bad("dim must be positive"));
    }
    let from_h = match &hrep {
        Some(h) => {
            check_dims(dim, h, "hrep")?;
            Some(Cone::from_hrep(dim, h)?)
        }
        None => None,
    };
    let from_v = match &vrep {
        Some((r, l)) => {
            check_dims(dim, r, "rays")?;
            check_dims(dim, l, "lineality")?;
            Some(Cone::from_vrep(dim, r, l)?)
        }
        None => None,
    };
    match (from_h, from_v) {
        (Some(a), Some(b)) if a != b => Err(bad("hrep and vrep describe different cones")),
        (Some(a), _) | (None, Some(a)) => Ok(a),
        (None, None) => Err(bad("a cone needs \"hrep\" or \"vrep\"")),
    }
}

pub fn condition(c: &AffineCondition) -> Value {
    json!({ "normal": vector(c.normal()), "offset": rational(c.offset()), "rel": c.relation().symbol() })
}

pub fn parse_condition(v: &Value) -> Res<AffineCondition> {
    let o = object(v, "condition")?;
    let normal = parse_vector(field(o, "normal")?)?;
    let offset = o.get("offset").map(parse_rational).transpose()?.unwrap_or_else(Rational::zero);
    let rel = match o.get("rel") {
        None => Relation::Ge,
        Some(r) => r.as_str().and_then(Relation::from_symbol).ok_or_else(|| bad(format!("unknown relation {r}")))?,
    };
    Ok(AffineCondition::new(normal, offset, rel))
}

fn conditions(p: &GeneralizedPolyhedron) -> Value {
    Value::Array(p.conditions().iter().map(condition).collect())
}

pub fn formal_sum(s: &FormalSum) -> Value {
    let terms: Vec<Value> =
        s.terms().iter().map(|(c, p)| json!({ "coeff": rational(c), "conditions": conditions(p) })).collect();
    json!({ "dim": s.dim(), "terms": terms })
}

pub fn parse_formal_sum(v: &Value) -> Res<FormalSum> {
    let o = object(v, "formal sum")?;
    let dim = field(o, "dim")?.as_u64().ok_or_else(|| bad("dim must be a nonnegative integer"))? as usize;
    let terms = field(o, "terms")?.as_array().ok_or_else(|| bad("terms: expected an array"))?;
    let terms = terms
        .iter()
        .map(|t| {
            let t = object(t, "term")?;
            let coeff = t.get("coeff").map(parse_rational).transpose()?.unwrap_or_else(Rational::one);
            let conds = field(t, "conditions")?.as_array().ok_or_else(|| bad("conditions: expected an array"))?;
            let conds = conds.iter().map(parse_condition).collect::<Res<Vec<_>>>()?;
            Ok((coeff, GeneralizedPolyhedron::new(dim, conds)?))
        })
        .collect::<Res<Vec<_>>>()?;
    Ok(FormalSum::from_terms(dim, terms)?)
}

pub fn cells(d: &CellDecomposition) -> Value {
    let cells: Vec<Value> = d
        .cells
        .iter()
        .map(|c| json!({ "conditions": conditions(&c.conditions), "witness": vector(&c.witness), "value": rational(&c.value) }))
        .collect();
    json!({
        "dim": d.dim,
        "hyperplanes": Value::Array(d.hyperplanes.iter().map(condition).collect()),
        "cells": cells,
    })
}

pub fn faces(c: &Cone) -> Value {
    let lattice = c.face_lattice();
    let faces: Vec<Value> = lattice
        .ids()
        .map(|id| {
            let f = lattice.face(id);
            json!({
                "index": id.0,
                "dim": f.dim(),
                "active": f.active().iter().collect::<Vec<_>>(),
                "rays": f.rays().iter().collect::<Vec<_>>(),
                "subfaces": lattice.within(id).map(|g| g.0).collect::<Vec<_>>(),
            })
        })
        .collect();
    let facets: Vec<QVector> = c.facets().iter().map(|h| h.normal().clone()).collect();
    json!({
        "dim": c.dim(),
        "facets": vectors(&facets),
        "equalities": vectors(c.equalities().rows()),
        "rays": vectors(c.rays()),
        "lineality": vectors(c.lineality().rows()),
        "faces": faces,
    })
}

pub fn mutation_name(m: Mutation) -> &'static str {
    match m {
        Mutation::None => "none",
        Mutation::RelativeSign => "relative-sign",
        Mutation::NegatedSign => "negated-sign",
        Mutation::DropCutTerm => "drop-cut-term",
    }
}

pub fn parse_mutation(s: &str) -> Res<Mutation> {
    [Mutation::None, Mutation::RelativeSign, Mutation::NegatedSign, Mutation::DropCutTerm]
        .into_iter()
        .find(|m| mutation_name(*m) == s)
        .ok_or_else(|| CliError::Usage(format!("unknown mutation {s:?}")))
}

pub fn instance(i: &Instance) -> Value {
    json!({
        "check": i.check.name(),
        "cone": cone(&i.cone),
        "inputs": vectors(&i.vectors),
        "face": i.face.map(|f| f.0),
    })
}

pub fn parse_instance(v: &Value) -> Res<Instance> {
    let o = object(v, "instance")?;
    let name = field(o, "check")?.as_str().ok_or_else(|| bad("check: expected a string"))?;
    let check = Check::from_name(name).ok_or_else(|| bad(format!("unknown check {name:?}")))?;
    let cone = parse_cone(field(o, "cone")?)?;
    let vectors = parse_vectors(field(o, "inputs")?, "inputs")?;
    check_dims(cone.dim(), &vectors, "inputs")?;
    let face = match o.get("face") {
        None | Some(Value::Null) => None,
        Some(f) => {
            let i = f.as_u64().ok_or_else(|| bad("face must be an index"))? as usize;
            if i >= cone.face_lattice().len() {
                return Err(bad(format!("face index {i} out of range")));
            }
            Some(FaceId(i))
        }
    };
    Ok(Instance { check, cone, vectors, face })
}

pub fn outcome(o: &Outcome) -> Value {
    json!({ "expected": rational(&o.expected), "actual": rational(&o.actual) })
}

fn failure(f: &Failure) -> Value {
    let mut v = instance(&f.instance);
    let m = v.as_object_mut().expect("object");
    m.insert("trial".into(), json!(f.trial));
    m.insert("seed".into(), json!(f.seed.to_string()));
    m.insert("expected".into(), rational(&f.outcome.expected));
    m.insert("actual".into(), rational(&f.outcome.actual));
    if let Some((small, o)) = &f.minimized {
        let mut s = instance(small);
        s.as_object_mut().expect("object").extend([("expected".into(), rational(&o.expected)), ("actual".into(), rational(&o.actual))]);
        m.insert("minimized".into(), s);
    }
    v
}

pub fn report(r: &CheckReport) -> Value {
    json!({
        "suite": r.suite,
        "trials": r.trials,
        "checks": r.checks,
        "by_check": r.by_check,
        "skipped": r.skipped,
        "boundary_cases": r.boundary_cases,
        "passed": r.passed(),
        "failures": r.failures.iter().map(failure).collect::<Vec<_>>(),
    })
}

/// All failure instances of a report file: the `failures` of a single
/// report, or of every report in `suites`.
pub fn report_instances(v: &Value) -> Res<Vec<Instance>> {
    let o = object(v, "report")?;
    let reports: Vec<&Value> = match o.get("suites") {
        Some(Value::Array(rs)) => rs.iter().collect(),
        Some(_) => return Err(bad("suites: expected an array")),
        None => vec![v],
    };
    let mut out = Vec::new();
    for r in reports {
        let fs = field(object(r, "report")?, "failures")?.as_array().ok_or_else(|| bad("failures: expected an array"))?;
        for f in fs {
            out.push(parse_instance(f)?);
        }
    }
    Ok(out)
}

/// Indented JSON with arrays of scalars kept on one line.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

fn scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if items.iter().all(scalar) => {
            out.push('[');
            out.push_str(&items.iter().map(Value::to_string).collect::<Vec<_>>().join(", "));
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_value(out, item, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(out, item, depth + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn rationals() {
        assert_eq!(rational(&q(-3, 6)), json!("-1/2"));
        assert_eq!(rational(&q(4, 2)), json!("2"));
        assert_eq!(parse_rational(&json!("6/4")).unwrap(), q(3, 2));
        assert_eq!(parse_rational(&json!(-7)).unwrap(), q(-7, 1));
        assert_eq!(parse_rational(&json!(18446744073709551615u64)).unwrap().to_string(), "18446744073709551615");
        assert!(parse_rational(&json!(0.5)).is_err());
        assert!(parse_rational(&json!("1/0")).is_err());
        assert!(parse_rational(&json!([1])).is_err());
    }

    #[test]
    fn points() {
        assert_eq!(parse_point("1, 1/2").unwrap(), QVector::new(vec![q(1, 1), q(1, 2)]));
        assert_eq!(parse_point("[\"-2/3\", 4]").unwrap(), QVector::new(vec![q(-2, 3), q(4, 1)]));
        assert!(parse_point("1,x").is_err());
    }

    #[test]
    fn cones_round_trip() {
        let c = Cone::from_vrep(3, &[QVector::from_ints(&[1, 0, 0]), QVector::from_ints(&[1, 2, 0])], &[QVector::from_ints(&[0, 0, 1])])
            .unwrap();
        let v = cone(&c);
        assert_eq!(parse_cone(&v).unwrap(), c);
        let only_h = json!({ "hrep": v["hrep"] });
        assert_eq!(parse_cone(&only_h).unwrap(), c);
        let only_v = json!({ "dim": 3, "vrep": v["vrep"] });
        assert_eq!(parse_cone(&only_v).unwrap(), c);
    }

    #[test]
    fn conflicting_and_malformed_cones() {
        let both = json!({ "dim": 2, "hrep": [[1, 0], [0, 1]], "vrep": { "rays": [[1, 0]] } });
        assert!(parse_cone(&both).is_err());
        let agree = json!({ "dim": 2, "hrep": [[1, 0], [0, 1]], "vrep": { "rays": [[1, 0], [0, "2"]] } });
        assert!(parse_cone(&agree).is_ok());
        assert!(parse_cone(&json!({ "dim": 2 })).is_err());
        assert!(parse_cone(&json!({ "dim": 2, "hrep": [[1, 0, 0]] })).is_err());
        assert!(parse_cone(&json!({ "hrep": [] })).is_err());
        assert_eq!(parse_cone(&json!({ "dim": 2, "hrep": [] })).unwrap(), Cone::whole_space(2));
        assert_eq!(parse_cone(&json!({ "dim": 2, "vrep": {} })).unwrap(), Cone::zero(2));
    }

    #[test]
    fn formal_sums_round_trip() {
        let c = Cone::from_hrep(2, &[QVector::from_ints(&[1, 0]), QVector::from_ints(&[1, 1])]).unwrap();
        let s = coneval_core::indicator::relint_indicator(&c).scale(&q(-2, 3));
        let back = parse_formal_sum(&formal_sum(&s)).unwrap();
        assert_eq!(back, s);
        let cond = json!({ "normal": [1, 0] });
        assert_eq!(parse_condition(&cond).unwrap(), AffineCondition::halfspace(QVector::from_ints(&[1, 0])));
        assert!(parse_condition(&json!({ "normal": [1], "rel": "<" })).is_err());
    }

    #[test]
    fn instances_round_trip() {
        let c = Cone::from_vrep(2, &[QVector::from_ints(&[1, 0]), QVector::from_ints(&[1, 1])], &[]).unwrap();
        let i = Instance { check: Check::Bgs(2), cone: c, vectors: vec![QVector::from_ints(&[1, -1])], face: Some(FaceId(1)) };
        assert_eq!(parse_instance(&instance(&i)).unwrap(), i);
        let mut v = instance(&i);
        v["face"] = json!(99);
        assert!(parse_instance(&v).is_err());
    }

    #[test]
    fn text_is_valid_json() {
        let v = json!({ "a": [["1/2", "3"], []], "b": { "c": [1, 2] }, "d": {}, "e": null });
        let t = to_text(&v);
        assert!(t.contains("[\"1/2\", \"3\"]"));
        assert_eq!(serde_json::from_str::<Value>(&t).unwrap(), v);
    }

    #[test]
    fn mutations() {
        for m in [Mutation::None, Mutation::RelativeSign, Mutation::NegatedSign, Mutation::DropCutTerm] {
            assert_eq!(parse_mutation(mutation_name(m)).unwrap(), m);
        }
        assert!(parse_mutation("other").is_err());
    }
}
