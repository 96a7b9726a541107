//! Deterministic JSON output: keys sorted, every integer written as a decimal
//! string, and a `"schema": 1` marker at the top level.

use std::fs;
use std::path::PathBuf;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::schur::{CharacterTable, SchurAlgebra};
use crate::superalg::{Comb, SuperAlgebra};
use crate::tilting_core::TiltingBimodule;

pub const SCHEMA: u64 = 1;

/// Serde helpers for fields holding big integers.
pub mod bigint_string {
    use num_bigint::BigInt;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }
}

pub mod comb_strings {
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    use crate::superalg::Comb;

    pub fn serialize<S: Serializer>(c: &Comb, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(c.len()))?;
        for (k, v) in c {
            seq.serialize_element(&(k.to_string(), v.to_string()))?;
        }
        seq.end()
    }
}

pub mod opt_comb_strings {
    use serde::Serializer;

    use crate::superalg::Comb;

    pub fn serialize<S: Serializer>(c: &Option<Comb>, s: S) -> Result<S::Ok, S::Error> {
        match c {
            Some(c) => super::comb_strings::serialize(c, s),
            None => s.serialize_none(),
        }
    }
}

/// Replace every JSON number by its decimal string.
pub fn stringify_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(a) => Value::Array(a.into_iter().map(stringify_numbers).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, stringify_numbers(v))).collect()),
        other => other,
    }
}

/// `{"schema": 1, "kind": kind, "data": value}` with numbers stringified.
pub fn document<T: Serialize>(kind: &str, value: &T) -> Result<Value> {
    let data = stringify_numbers(serde_json::to_value(value)?);
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("kind".into(), json!(kind));
    m.insert("data".into(), data);
    Ok(Value::Object(m))
}

/// Pretty form with a trailing newline.
pub fn render(v: &Value) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn comb_value(c: &Comb) -> Value {
    Value::Array(c.iter().map(|(k, v)| json!([k.to_string(), v.to_string()])).collect())
}

/// Basis and sparse structure constants of a superalgebra.
pub fn algebra_value(a: &SuperAlgebra) -> Value {
    let basis: Vec<Value> = a
        .basis
        .iter()
        .map(|b| {
            json!({
                "name": b.name,
                "parity": b.parity.to_string(),
                "class": format!("{:?}", b.class),
                "left_vertex": b.left_vertex.map(|v| v.to_string()),
                "right_vertex": b.right_vertex.map(|v| v.to_string()),
            })
        })
        .collect();
    let n = a.dim();
    let mut products = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let c = &a.table[i * n + j];
            if !c.is_empty() {
                products.push(json!([i.to_string(), j.to_string(), comb_value(c)]));
            }
        }
    }
    json!({
        "name": a.name,
        "dim": n.to_string(),
        "basis": basis,
        "products": products,
        "unit": comb_value(&a.unit),
    })
}

/// The η basis of T^A(n,d): names, parities, triples and weights.
pub fn eta_basis_value(s: &SchurAlgebra) -> Value {
    let items: Vec<Value> = (0..s.dim())
        .map(|i| {
            let w = s.basis_weights(i);
            json!({
                "index": i.to_string(),
                "name": s.dp.name(i),
                "parity": s.parity(i).to_string(),
                "triples": s.triples(i).iter().map(|(b, r, c)| json!([s.base.basis[*b].name, (r + 1).to_string(), (c + 1).to_string()])).collect::<Vec<_>>(),
                "left_weight": w.as_ref().map(|(l, _)| l.to_string()),
                "right_weight": w.as_ref().map(|(_, r)| r.to_string()),
            })
        })
        .collect();
    json!({
        "algebra": s.base.name,
        "n": s.n.to_string(),
        "d": s.d.to_string(),
        "dim": s.dim().to_string(),
        "basis": items,
    })
}

pub fn character_value(ch: &CharacterTable) -> Value {
    let m: Map<String, Value> = ch.0.iter().map(|(w, k)| (w.to_string(), Value::String(k.to_string()))).collect();
    Value::Object(m)
}

/// 𝖳 with both action tables and the summand markers.
pub fn tilting_value(t: &TiltingBimodule) -> Value {
    let n = t.dim();
    let table = |m: &crate::superalg::CalModule| -> Vec<Value> {
        let mut out = Vec::new();
        for a in 0..m.algebra_dim {
            for v in 0..n {
                let c = &m.table[a * n + v];
                if !c.is_empty() {
                    out.push(json!([a.to_string(), v.to_string(), comb_value(c)]));
                }
            }
        }
        out
    };
    let basis: Vec<Value> = t
        .tb
        .basis
        .iter()
        .enumerate()
        .map(|(k, b)| {
            json!({
                "name": b.name,
                "parity": b.parity.to_string(),
                "left_summand": t.tb.left_summand[k].to_string(),
                "right_summand": t.right_summand[k].to_string(),
            })
        })
        .collect();
    json!({
        "l": t.l.to_string(),
        "basis": basis,
        "left_action": table(&t.module.left),
        "right_action": table(&t.module.right),
        "zprime": algebra_value(&t.zprime),
    })
}

/// Content-addressed memo of JSON values under `ZZSCHUR_CACHE_DIR`; a no-op
/// when the variable is unset.
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn from_env() -> Self {
        Cache { dir: std::env::var_os("ZZSCHUR_CACHE_DIR").map(PathBuf::from) }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: Some(dir.into()) }
    }

    pub fn key(descriptor: &str) -> String {
        hex::encode(Sha256::digest(descriptor.as_bytes()))
    }

    pub fn get_or_compute(&self, descriptor: &str, compute: impl FnOnce() -> Result<Value>) -> Result<Value> {
        let Some(dir) = &self.dir else { return compute() };
        let path = dir.join(format!("{}.json", Self::key(descriptor)));
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(v) = serde_json::from_str::<Value>(&text) {
                if v.get("descriptor").and_then(Value::as_str) == Some(descriptor) {
                    if let Some(p) = v.get("payload") {
                        return Ok(p.clone());
                    }
                }
            }
        }
        let payload = compute()?;
        fs::create_dir_all(dir)?;
        let wrapped = json!({ "descriptor": descriptor, "payload": payload });
        fs::write(&path, render(&wrapped)?)?;
        Ok(payload)
    }
}

/// Every nonzero product η^a η^b of T^A(n,d) as `[a, b, comb]`.
pub fn product_table_value(s: &SchurAlgebra) -> Result<Value> {
    let mut out = Vec::new();
    for a in 0..s.dim() {
        for b in 0..s.dim() {
            let c = s.mult(a, b)?;
            if !c.is_empty() {
                out.push(json!([a.to_string(), b.to_string(), comb_value(&c)]));
            }
        }
    }
    Ok(Value::Array(out))
}

/// Product table, memoized when a cache directory is configured.
pub fn cached_product_table(s: &SchurAlgebra, cache: &Cache) -> Result<Value> {
    let descriptor = format!("products/{}/n={}/d={}", s.base.name, s.n, s.d);
    cache.get_or_compute(&descriptor, || product_table_value(s))
}

/// Parse a product table written by [`product_table_value`].
pub fn parse_product_table(v: &Value) -> Option<Vec<(usize, usize, Comb)>> {
    let mut out = Vec::new();
    for row in v.as_array()? {
        let row = row.as_array()?;
        let a = row.first()?.as_str()?.parse().ok()?;
        let b = row.get(1)?.as_str()?.parse().ok()?;
        let mut c = Vec::new();
        for term in row.get(2)?.as_array()? {
            let term = term.as_array()?;
            let k = term.first()?.as_str()?.parse().ok()?;
            let x: BigInt = term.get(1)?.as_str()?.parse().ok()?;
            c.push((k, x));
        }
        out.push((a, b, c));
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_become_strings() {
        let v = stringify_numbers(json!({"b": [1, 2], "a": {"x": 3}}));
        assert_eq!(v, json!({"a": {"x": "3"}, "b": ["1", "2"]}));
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"a":{"x":"3"},"b":["1","2"]}"#);
    }

    #[test]
    fn document_keeps_schema_number() {
        let d = document("t", &vec![5u32]).unwrap();
        assert_eq!(d["schema"], json!(1));
        assert_eq!(d["data"], json!(["5"]));
    }
}
