//! Serialization helpers and file formats: rationals as "p/q" strings, the
//! JSON-Lines facet stream, enumeration checkpoints, lift files, position
//! files and matrix CSV export. Versioned formats carry a "format": 1 field.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::str::FromStr;

use crate::linalg::Rat;
use crate::ngon::{Edge, KTriangulation};
use crate::polytope::LiftingVector;
use crate::rigidity::RigidityMatrix;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, thiserror::Error)]
pub enum FormatError {
    #[error("bad rational: {0}")]
    BadRational(String),
    #[error("bad JSON: {0}")]
    BadJson(String),
    #[error("unsupported format version {0}")]
    BadVersion(u64),
    #[error("missing field `{0}`")]
    MissingField(&'static str),
}

/// Renders a rational as "p" or "p/q".
pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses "p" or "p/q". Floating-point notation is rejected.
pub fn rat_from_string(s: &str) -> Result<Rat, FormatError> {
    let s = s.trim();
    if s.contains(['.', 'e', 'E']) {
        return Err(FormatError::BadRational(format!(
            "`{s}` is not an exact rational; floats are rejected"
        )));
    }
    match s.split_once('/') {
        None => BigInt::from_str(s)
            .map(Rat::from_integer)
            .map_err(|e| FormatError::BadRational(format!("bad integer `{s}`: {e}"))),
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim())
                .map_err(|e| FormatError::BadRational(format!("bad numerator `{p}`: {e}")))?;
            let q = BigInt::from_str(q.trim())
                .map_err(|e| FormatError::BadRational(format!("bad denominator `{q}`: {e}")))?;
            if q.is_zero() {
                return Err(FormatError::BadRational(format!("zero denominator in `{s}`")));
            }
            Ok(Rat::new(p, q))
        }
    }
}

fn edge_list_json(edges: &[Edge]) -> Value {
    Value::Array(edges.iter().map(|e| json!([e.i, e.j])).collect())
}

fn edge_list_from_json(v: &Value) -> Result<Vec<Edge>, FormatError> {
    let arr = v.as_array().ok_or(FormatError::MissingField("edge list"))?;
    arr.iter()
        .map(|pair| {
            let p = pair
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| FormatError::BadJson(format!("edge must be a pair, got {pair}")))?;
            let i = p[0].as_u64().ok_or(FormatError::MissingField("edge endpoint"))?;
            let j = p[1].as_u64().ok_or(FormatError::MissingField("edge endpoint"))?;
            Ok(Edge::new(i as u16, j as u16))
        })
        .collect()
}

/// One line of the JSON-Lines facet stream.
pub fn facet_line(t: &KTriangulation) -> String {
    json!({"n": t.n, "k": t.k, "relevant": edge_list_json(&t.relevant)}).to_string()
}

pub fn facet_from_line(line: &str) -> Result<KTriangulation, FormatError> {
    let v: Value = serde_json::from_str(line).map_err(|e| FormatError::BadJson(e.to_string()))?;
    let n = v["n"].as_u64().ok_or(FormatError::MissingField("n"))? as usize;
    let k = v["k"].as_u64().ok_or(FormatError::MissingField("k"))? as usize;
    let relevant = edge_list_from_json(&v["relevant"])?;
    KTriangulation::new(n, k, relevant).map_err(|e| FormatError::BadJson(e.to_string()))
}

/// Enumeration checkpoint: the last facet emitted, in lexicographic order.
pub fn checkpoint_json(n: usize, k: usize, last: &[Edge]) -> String {
    json!({
        "format": FORMAT_VERSION,
        "n": n,
        "k": k,
        "last": edge_list_json(last),
    })
    .to_string()
}

pub fn checkpoint_from_json(s: &str) -> Result<(usize, usize, Vec<Edge>), FormatError> {
    let v: Value = serde_json::from_str(s).map_err(|e| FormatError::BadJson(e.to_string()))?;
    check_version(&v)?;
    let n = v["n"].as_u64().ok_or(FormatError::MissingField("n"))? as usize;
    let k = v["k"].as_u64().ok_or(FormatError::MissingField("k"))? as usize;
    let last = edge_list_from_json(&v["last"])?;
    Ok((n, k, last))
}

fn check_version(v: &Value) -> Result<(), FormatError> {
    match v.get("format") {
        None => Ok(()), // unversioned inputs are accepted
        Some(f) => {
            let f = f.as_u64().ok_or(FormatError::MissingField("format"))?;
            if f == FORMAT_VERSION as u64 {
                Ok(())
            } else {
                Err(FormatError::BadVersion(f))
            }
        }
    }
}

/// Lift file: {"format": 1, "f": {"i,j": "p/q", ...}}. A bare map of
/// "i,j" keys is accepted as well.
pub fn lift_json(lift: &LiftingVector) -> String {
    let map: serde_json::Map<String, Value> = lift
        .f
        .iter()
        .map(|(e, v)| (format!("{},{}", e.i, e.j), Value::String(rat_to_string(v))))
        .collect();
    json!({"format": FORMAT_VERSION, "f": map}).to_string()
}

pub fn lift_from_json(s: &str) -> Result<LiftingVector, FormatError> {
    let v: Value = serde_json::from_str(s).map_err(|e| FormatError::BadJson(e.to_string()))?;
    check_version(&v)?;
    let map = match v.get("f") {
        Some(f) => f.as_object().ok_or(FormatError::MissingField("f"))?,
        None => v.as_object().ok_or(FormatError::MissingField("lift map"))?,
    };
    let mut f = std::collections::BTreeMap::new();
    for (key, val) in map {
        if key == "format" {
            continue;
        }
        let (i, j) = key
            .split_once(',')
            .ok_or_else(|| FormatError::BadJson(format!("bad edge key `{key}`")))?;
        let i: u16 =
            i.trim().parse().map_err(|_| FormatError::BadJson(format!("bad edge key `{key}`")))?;
        let j: u16 =
            j.trim().parse().map_err(|_| FormatError::BadJson(format!("bad edge key `{key}`")))?;
        let r = match val {
            Value::String(s) => rat_from_string(s)?,
            Value::Number(n) if n.is_i64() => Rat::from_integer(BigInt::from(n.as_i64().unwrap())),
            other => return Err(FormatError::BadJson(format!("bad height `{other}`"))),
        };
        f.insert(Edge::new(i, j), r);
    }
    Ok(LiftingVector { f })
}

/// Positions file: a JSON array of "p/q" strings.
pub fn positions_json(t: &[Rat]) -> String {
    Value::Array(t.iter().map(|x| Value::String(rat_to_string(x))).collect()).to_string()
}

pub fn positions_from_json(s: &str) -> Result<Vec<Rat>, FormatError> {
    let v: Value = serde_json::from_str(s).map_err(|e| FormatError::BadJson(e.to_string()))?;
    let arr = v.as_array().ok_or(FormatError::MissingField("positions array"))?;
    arr.iter()
        .map(|x| match x {
            Value::String(s) => rat_from_string(s),
            Value::Number(n) if n.is_i64() => {
                Ok(Rat::from_integer(BigInt::from(n.as_i64().unwrap())))
            }
            other => Err(FormatError::BadJson(format!("bad position `{other}`"))),
        })
        .collect()
}

/// Matrix export: one CSV line per edge with the two d-entry blocks, plus a
/// JSON descriptor carrying kind, d, n and the position echo.
pub fn matrix_csv(m: &RigidityMatrix) -> String {
    let mut out = String::new();
    out.push_str("i,j");
    for b in ["i", "j"] {
        for c in 0..m.d {
            out.push_str(&format!(",block_{b}_{c}"));
        }
    }
    out.push('\n');
    for e in m.edges() {
        let (bi, bj) = m.blocks(e).expect("edge of K_n");
        out.push_str(&format!("{},{}", e.i, e.j));
        for v in bi.iter().chain(bj) {
            out.push(',');
            out.push_str(&rat_to_string(v));
        }
        out.push('\n');
    }
    out
}

pub fn matrix_descriptor(m: &RigidityMatrix, positions: &[String]) -> String {
    json!({
        "format": FORMAT_VERSION,
        "kind": format!("{:?}", m.kind),
        "d": m.d,
        "n": m.n,
        "positions": positions,
    })
    .to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip_and_float_rejection() {
        for s in ["3", "-7", "22/7", "-1/3"] {
            let r = rat_from_string(s).unwrap();
            assert_eq!(rat_to_string(&r), s);
        }
        assert!(rat_from_string("1.5").is_err());
        assert!(rat_from_string("1e3").is_err());
        assert!(rat_from_string("1/0").is_err());
    }

    #[test]
    fn facet_line_round_trip() {
        let t = KTriangulation::greedy(8, 2).unwrap();
        let line = facet_line(&t);
        assert!(line.contains("\"n\":8"));
        let back = facet_from_line(&line).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn checkpoint_round_trip() {
        let last = vec![Edge::new(1, 4), Edge::new(2, 6)];
        let s = checkpoint_json(8, 2, &last);
        let (n, k, back) = checkpoint_from_json(&s).unwrap();
        assert_eq!((n, k), (8, 2));
        assert_eq!(back, last);
    }

    #[test]
    fn lift_round_trip_and_bare_map() {
        let lift = LiftingVector::from_integer_entries(&[((3, 6), 3), ((4, 7), 3)]);
        let s = lift_json(&lift);
        assert_eq!(lift_from_json(&s).unwrap(), lift);
        let bare = r#"{"3,6": "3", "4,7": 3}"#;
        assert_eq!(lift_from_json(bare).unwrap(), lift);
    }

    #[test]
    fn positions_round_trip() {
        let t = vec![
            rat_from_string("-2").unwrap(),
            rat_from_string("1/3").unwrap(),
            rat_from_string("20").unwrap(),
        ];
        let s = positions_json(&t);
        assert_eq!(positions_from_json(&s).unwrap(), t);
    }

    #[test]
    fn matrix_export_has_header_and_rows() {
        let t = crate::rigidity::ParameterConfig::standard(4);
        let m = crate::rigidity::build_polynomial(&t, 2).unwrap();
        let csv = matrix_csv(&m);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 1 + 6);
        assert!(lines[0].starts_with("i,j,block_i_0"));
        let desc = matrix_descriptor(&m, &["1".into(), "2".into(), "3".into(), "4".into()]);
        assert!(desc.contains("\"format\":1"));
    }
}
