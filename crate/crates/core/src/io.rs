//! JSON and CSV file formats.
//!
//! A model file looks like
//! `{"signature": {"X": ["0","1"]}, "functions": {"Y": {"args": ["X"], "table": {"0": "1"}}}, "rows": [{"assignment": {"X": "0"}, "count": 2}]}`.
//! Value tokens may be written as JSON strings or numbers.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::model::{Assignment, CausalFunction, CausalMultiteam, FunctionComponent, Multiteam, Signature};
use crate::rational::{format_compact, parse_rational, Rational};
use crate::rescaling::FiniteClass;
use crate::sem::Sem;

fn fmt_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

fn token(v: &Value, what: &str) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        Value::Bool(b) => Ok(b.to_string()),
        _ => Err(fmt_err(format!("{what}: expected a value token, found {v}"))),
    }
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| fmt_err(format!("{what}: expected an object")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| fmt_err(format!("{what}: expected an array")))
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| fmt_err(format!("JSON: {e}")))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| fmt_err(format!("{}: {e}", path.display())))
}

pub fn signature_from_json(v: &Value) -> Result<Signature> {
    let obj = object(v, "signature")?;
    let vars = obj
        .iter()
        .map(|(name, range)| {
            let values = array(range, &format!("range of `{name}`"))?
                .iter()
                .map(|t| token(t, name))
                .collect::<Result<Vec<_>>>()?;
            Ok((name.clone(), values))
        })
        .collect::<Result<Vec<_>>>()?;
    Signature::new(vars)
}

pub fn signature_to_json(sig: &Signature) -> Value {
    let mut obj = Map::new();
    for (v, name) in sig.vars().iter().enumerate() {
        obj.insert(name.clone(), Value::from(sig.range(v).to_vec()));
    }
    Value::Object(obj)
}

pub fn functions_from_json(sig: &Signature, v: Option<&Value>) -> Result<FunctionComponent> {
    let Some(v) = v else { return Ok(FunctionComponent::new()) };
    let mut fc = FunctionComponent::new();
    for (target, spec) in object(v, "functions")? {
        let spec = object(spec, &format!("function for `{target}`"))?;
        let args = match spec.get("args") {
            Some(a) => array(a, "args")?.iter().map(|t| token(t, "args")).collect::<Result<Vec<_>>>()?,
            None => Vec::new(),
        };
        let table = object(spec.get("table").ok_or_else(|| fmt_err(format!("function for `{target}` has no table")))?, "table")?;
        let mut entries: Vec<(Vec<String>, String)> = Vec::with_capacity(table.len());
        for (key, out) in table {
            let key: Vec<String> = if args.is_empty() && key.is_empty() {
                Vec::new()
            } else {
                key.split(',').map(|s| s.trim().to_string()).collect()
            };
            entries.push((key, token(out, target)?));
        }
        let arg_refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let f = CausalFunction::from_tokens(
            sig,
            target,
            &arg_refs,
            entries.iter().map(|(k, o)| (k.iter().map(String::as_str).collect(), o.as_str())),
        )?;
        fc.insert(f)?;
    }
    Ok(fc)
}

pub fn functions_to_json(sig: &Signature, fc: &FunctionComponent) -> Value {
    let mut obj = Map::new();
    let mut fs: Vec<&CausalFunction> = fc.functions().collect();
    fs.sort_by_key(|f| f.target());
    for f in fs {
        let mut table = Map::new();
        for (tuple, &out) in sig.tuples(f.args()).zip(f.table()) {
            let key: Vec<&str> = tuple.iter().zip(f.args()).map(|(&x, &a)| sig.value(a, x)).collect();
            table.insert(key.join(","), Value::from(sig.value(f.target(), out)));
        }
        let args: Vec<&str> = f.args().iter().map(|&a| sig.name(a)).collect();
        obj.insert(sig.name(f.target()).to_string(), json!({ "args": args, "table": table }));
    }
    Value::Object(obj)
}

fn assignment_from_json(sig: &Signature, v: &Value) -> Result<Assignment> {
    let obj = object(v, "assignment")?;
    let pairs = obj.iter().map(|(k, t)| Ok((k.as_str(), token(t, k)?))).collect::<Result<Vec<_>>>()?;
    Assignment::from_tokens(sig, pairs.iter().map(|(k, t)| (*k, t.as_str()))).map_err(|e| match e {
        Error::PartialAssignment { variable, .. } => Error::PartialAssignment { assignment: v.to_string(), variable },
        e => e,
    })
}

fn assignment_to_json(sig: &Signature, a: &Assignment) -> Value {
    let mut obj = Map::new();
    for (v, &x) in a.values().iter().enumerate() {
        obj.insert(sig.name(v).to_string(), Value::from(sig.value(v, x)));
    }
    Value::Object(obj)
}

pub fn model_from_json(v: &Value) -> Result<CausalMultiteam> {
    let obj = object(v, "model")?;
    let sig = signature_from_json(obj.get("signature").ok_or_else(|| fmt_err("model has no signature"))?)?;
    let laws = functions_from_json(&sig, obj.get("functions"))?;
    let mut team = Multiteam::new();
    if let Some(rows) = obj.get("rows") {
        for row in array(rows, "rows")? {
            let row = object(row, "row")?;
            let a = assignment_from_json(&sig, row.get("assignment").ok_or_else(|| fmt_err("row has no assignment"))?)?;
            let count = match row.get("count") {
                None => 1,
                Some(c) => c.as_u64().ok_or_else(|| fmt_err(format!("count must be a nonnegative integer, found {c}")))?,
            };
            team.insert(a, count);
        }
    }
    CausalMultiteam::new(Arc::new(sig), team, laws)
}

pub fn model_to_json(m: &CausalMultiteam) -> Value {
    let sig = m.signature();
    let rows: Vec<Value> = m
        .team()
        .iter()
        .map(|(a, &c)| json!({ "assignment": assignment_to_json(sig, a), "count": c }))
        .collect();
    json!({
        "signature": signature_to_json(sig),
        "functions": functions_to_json(sig, m.laws()),
        "rows": rows,
    })
}

pub fn read_model(path: &Path) -> Result<CausalMultiteam> {
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
        let sidecar = path.with_extension("json");
        let side = if sidecar.exists() { Some(parse_json(&read(&sidecar)?)?) } else { None };
        return model_from_csv(&read(path)?, side.as_ref());
    }
    model_from_json(&parse_json(&read(path)?)?)
}

/// One row per data line, duplicates aggregated. The sidecar may carry a
/// `signature` and `functions`; without a signature, each range is the
/// column's values in order of first appearance.
pub fn model_from_csv(text: &str, sidecar: Option<&Value>) -> Result<CausalMultiteam> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let header: Vec<String> =
        reader.headers().map_err(|e| fmt_err(format!("CSV: {e}")))?.iter().map(str::to_string).collect();
    let mut records: Vec<Vec<String>> = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| fmt_err(format!("CSV: {e}")))?;
        records.push(rec.iter().map(str::to_string).collect());
    }
    let side = sidecar.map(|s| object(s, "sidecar")).transpose()?;
    let sig = match side.and_then(|s| s.get("signature")) {
        Some(s) => signature_from_json(s)?,
        None => {
            let mut ranges: Vec<Vec<String>> = vec![Vec::new(); header.len()];
            for r in &records {
                for (range, value) in ranges.iter_mut().zip(r) {
                    if !range.contains(value) {
                        range.push(value.clone());
                    }
                }
            }
            Signature::new(header.iter().cloned().zip(ranges))?
        }
    };
    let laws = functions_from_json(&sig, side.and_then(|s| s.get("functions")))?;
    let mut team = Multiteam::new();
    for r in &records {
        let a = Assignment::from_tokens(&sig, header.iter().map(String::as_str).zip(r.iter().map(String::as_str)))?;
        team.insert(a, 1);
    }
    CausalMultiteam::new(Arc::new(sig), team, laws)
}

fn rational_from_json(v: &Value) -> Result<Rational> {
    let text = token(v, "p")?;
    parse_rational(&text).ok_or_else(|| fmt_err(format!("`{text}` is not a rational number")))
}

pub fn sem_from_json(v: &Value) -> Result<Sem> {
    let obj = object(v, "sem")?;
    let sig = signature_from_json(obj.get("signature").ok_or_else(|| fmt_err("SEM has no signature"))?)?;
    let laws = functions_from_json(&sig, obj.get("functions"))?;
    let exo = laws.exogenous(&sig);
    let mut dist: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
    for entry in array(obj.get("exo_dist").ok_or_else(|| fmt_err("SEM has no exo_dist"))?, "exo_dist")? {
        let entry = object(entry, "exo_dist entry")?;
        let u = object(entry.get("u").ok_or_else(|| fmt_err("exo_dist entry has no `u`"))?, "u")?;
        let mut tuple = vec![None; exo.len()];
        for (name, t) in u {
            let (var, val) = sig.pair(name, &token(t, name)?)?;
            let slot = exo.iter().position(|&e| e == var).ok_or_else(|| fmt_err(format!("`{name}` is not exogenous")))?;
            tuple[slot] = Some(val);
        }
        let tuple = tuple
            .into_iter()
            .enumerate()
            .map(|(i, x)| x.ok_or_else(|| fmt_err(format!("`u` is missing `{}`", sig.name(exo[i])))))
            .collect::<Result<Vec<_>>>()?;
        let p = rational_from_json(entry.get("p").ok_or_else(|| fmt_err("exo_dist entry has no `p`"))?)?;
        *dist.entry(tuple).or_default() += p;
    }
    Sem::new(Arc::new(sig), laws, dist)
}

pub fn sem_to_json(sem: &Sem) -> Value {
    let sig = sem.signature();
    let dist: Vec<Value> = sem
        .exo_dist()
        .iter()
        .map(|(u, p)| {
            let mut obj = Map::new();
            for (&v, &x) in sem.exogenous().iter().zip(u) {
                obj.insert(sig.name(v).to_string(), Value::from(sig.value(v, x)));
            }
            json!({ "u": obj, "p": format_compact(p) })
        })
        .collect();
    json!({
        "signature": signature_to_json(sig),
        "functions": functions_to_json(sig, sem.laws()),
        "exo_dist": dist,
    })
}

pub fn read_sem(path: &Path) -> Result<Sem> {
    sem_from_json(&parse_json(&read(path)?)?)
}

/// A list of model paths (relative to `base`) or inline models, or an
/// object `{"signature": ..., "members": [...]}` which also allows an empty
/// class.
pub fn class_from_json(v: &Value, base: &Path) -> Result<FiniteClass> {
    let (sig, items) = match v {
        Value::Array(items) => (None, items),
        Value::Object(obj) => {
            let sig = obj.get("signature").map(signature_from_json).transpose()?;
            (sig, array(obj.get("members").ok_or_else(|| fmt_err("class has no members"))?, "members")?)
        }
        _ => return Err(fmt_err("class: expected a list or an object")),
    };
    let members = items
        .iter()
        .map(|item| match item {
            Value::String(p) => read_model(&base.join(p)),
            other => model_from_json(other),
        })
        .collect::<Result<Vec<_>>>()?;
    let sig = match (sig, members.first()) {
        (Some(s), _) => Arc::new(s),
        (None, Some(m)) => Arc::clone(m.signature_arc()),
        (None, None) => return Err(Error::EmptyClass),
    };
    FiniteClass::new(sig, members)
}

pub fn read_class(path: &Path) -> Result<FiniteClass> {
    let base = path.parent().unwrap_or(Path::new("."));
    class_from_json(&parse_json(&read(path)?)?, base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{coin, inc};
    use crate::rational::ratio;

    #[test]
    fn model_round_trip() {
        for m in [inc(), coin()] {
            let v = model_to_json(&m);
            assert_eq!(model_from_json(&v).unwrap(), m);
        }
        let v = model_to_json(&inc());
        assert_eq!(v["functions"]["Y"]["table"]["2"], "3");
        assert_eq!(v["signature"]["X"][0], "0");
    }

    #[test]
    fn numbers_as_tokens() {
        let v = parse_json(
            r#"{"signature": {"X": [0, 1, 2], "Y": [1, 2, 3]},
                "functions": {"Y": {"args": ["X"], "table": {"0": 1, "1": 2, "2": 3}}},
                "rows": [{"assignment": {"X": 0, "Y": 1}, "count": 1},
                         {"assignment": {"X": 1, "Y": 2}, "count": 2},
                         {"assignment": {"X": 2, "Y": 3}, "count": 3}]}"#,
        )
        .unwrap();
        assert_eq!(model_from_json(&v).unwrap(), inc());
    }

    #[test]
    fn validation_errors_pass_through() {
        let mut v = model_to_json(&inc());
        v["rows"].as_array_mut().unwrap().push(json!({"assignment": {"X": "0", "Y": "2"}, "count": 1}));
        assert!(matches!(model_from_json(&v), Err(Error::CompatibilityViolation { .. })));
        let v = parse_json(r#"{"signature": {"X": ["0"]}, "rows": [{"assignment": {}}]}"#).unwrap();
        assert!(matches!(model_from_json(&v), Err(Error::PartialAssignment { .. })));
        assert!(parse_json("{").unwrap_err().is_syntax());
    }

    #[test]
    fn csv_with_and_without_sidecar() {
        let text = "X,Y\n0,1\n1,2\n1,2\n";
        let m = model_from_csv(text, None).unwrap();
        assert_eq!(m.len(), 3);
        assert_eq!(m.signature().range(1), ["1", "2"]);
        let side = json!({"signature": {"X": ["0", "1", "2"], "Y": ["1", "2", "3"]},
                          "functions": {"Y": {"args": ["X"], "table": {"0": "1", "1": "2", "2": "3"}}}});
        let m = model_from_csv(text, Some(&side)).unwrap();
        assert_eq!(m.laws().len(), 1);
        assert!(matches!(model_from_csv("X,Y\n0,2\n", Some(&side)), Err(Error::CompatibilityViolation { .. })));
    }

    #[test]
    fn sem_round_trip() {
        let v = parse_json(
            r#"{"signature": {"X": ["0","1","2"], "Y": ["1","2","3"]},
                "functions": {"Y": {"args": ["X"], "table": {"0": "1", "1": "2", "2": "3"}}},
                "exo_dist": [{"u": {"X": "0"}, "p": "1/6"}, {"u": {"X": "1"}, "p": "1/3"}, {"u": {"X": "2"}, "p": 0.5}]}"#,
        )
        .unwrap();
        let s = sem_from_json(&v).unwrap();
        assert_eq!(s.exo_dist()[&vec![2]], ratio(1, 2));
        assert_eq!(sem_from_json(&sem_to_json(&s)).unwrap(), s);
        assert_eq!(crate::sem::sem_to_multiteam(&s).unwrap(), inc());
    }

    #[test]
    fn classes() {
        let v = json!([model_to_json(&coin()), model_to_json(&coin())]);
        let k = class_from_json(&v, Path::new(".")).unwrap();
        assert_eq!(k.members().len(), 1);
        assert_eq!(class_from_json(&json!([]), Path::new(".")), Err(Error::EmptyClass));
        let v = json!({"signature": signature_to_json(coin().signature()), "members": []});
        assert!(class_from_json(&v, Path::new(".")).unwrap().members().is_empty());
        let v = json!([model_to_json(&coin()), model_to_json(&inc())]);
        assert_eq!(class_from_json(&v, Path::new(".")), Err(Error::SignatureMismatch));
    }
}
