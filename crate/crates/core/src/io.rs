//! JSON and CSV forms of the library's values. Rationals are always `"p/q"` strings and
//! maps are written in deg-lex order, so equal values serialize to identical bytes.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::fock::FockData;
use crate::linalg::RatMatrix;
use crate::mops::{MonicFamily, RecursionCoefficients, Witness};
use crate::ncpoly::{enumerate_words, NcPolynomial, Word};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::state::MomentTable;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

/// Accepts `"p/q"`, `"p"` or a JSON integer.
pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(parse_err),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap_or_default().into())),
        other => Err(parse_err(format!("expected a rational string, got {other}"))),
    }
}

fn field<'a>(obj: &'a Value, name: &str) -> Result<&'a Value> {
    obj.get(name).ok_or_else(|| parse_err(format!("missing field {name:?}")))
}

fn usize_field(obj: &Value, name: &str) -> Result<usize> {
    field(obj, name)?
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| parse_err(format!("field {name:?} must be a non-negative integer")))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| parse_err(format!("{what} must be a JSON object")))
}

pub fn word_to_json(w: &Word) -> Value {
    Value::String(w.to_key())
}

pub fn poly_to_json(p: &NcPolynomial) -> Value {
    let map: Map<String, Value> = p.terms().map(|(w, c)| (w.to_key(), rational_to_json(c))).collect();
    Value::Object(map)
}

pub fn poly_from_json(d: usize, v: &Value) -> Result<NcPolynomial> {
    let terms = object(v, "polynomial")?
        .iter()
        .map(|(k, c)| Ok((Word::parse_key(d, k)?, rational_from_json(c)?)))
        .collect::<Result<Vec<_>>>()?;
    NcPolynomial::from_terms(d, terms)
}

pub fn table_to_json(t: &MomentTable) -> Value {
    let moments: Map<String, Value> = t.iter().map(|(w, m)| (w.to_key(), rational_to_json(m))).collect();
    json!({ "d": crate::state::State::d(t), "max_degree": t.max_degree(), "moments": moments })
}

pub fn table_from_json(v: &Value) -> Result<MomentTable> {
    let d = usize_field(v, "d")?;
    let max_degree = usize_field(v, "max_degree")?;
    let moments = object(field(v, "moments")?, "moments")?
        .iter()
        .map(|(k, c)| Ok((Word::parse_key(d, k)?, rational_from_json(c)?)))
        .collect::<Result<Vec<_>>>()?;
    MomentTable::new(d, max_degree, moments)
}

pub fn table_from_str(s: &str) -> Result<MomentTable> {
    let v: Value = serde_json::from_str(s).map_err(|e| parse_err(e.to_string()))?;
    table_from_json(&v)
}

/// `{word: polynomial}`.
pub fn family_to_json(fam: &MonicFamily) -> Value {
    Value::Object(fam.iter().map(|(u, p, _)| (u.to_key(), poly_to_json(p))).collect())
}

/// `{word: ‖P_u‖²}`.
pub fn norms_to_json(fam: &MonicFamily) -> Value {
    Value::Object(fam.iter().map(|(u, _, n)| (u.to_key(), rational_to_json(n))).collect())
}

/// `{"C": {word: c}, "B": {"i|w|u": b}}`, zero `B` entries included.
pub fn recursion_to_json(r: &RecursionCoefficients) -> Value {
    let c: Map<String, Value> = r.c_entries().map(|(u, v)| (u.to_key(), rational_to_json(v))).collect();
    let b: Map<String, Value> = r
        .b_entries()
        .map(|((i, w, u), v)| (format!("{i}|{}|{}", w.to_key(), u.to_key()), rational_to_json(v)))
        .collect();
    json!({ "C": c, "B": b })
}

pub fn witness_to_json(w: &Witness) -> Value {
    json!({ "u": word_to_json(&w.u), "w": word_to_json(&w.w), "value": rational_to_json(&w.value) })
}

pub fn matrix_to_json(m: &RatMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array(m.row(r).iter().map(rational_to_json).collect()))
            .collect(),
    )
}

pub fn matrix_from_json(v: &Value) -> Result<RatMatrix> {
    let rows = v.as_array().ok_or_else(|| parse_err("matrix must be an array of rows"))?;
    let rows = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| parse_err("matrix row must be an array"))?
                .iter()
                .map(rational_from_json)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let width = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != width) {
        return Err(parse_err("ragged matrix"));
    }
    Ok(if rows.is_empty() {
        RatMatrix::zeros(0, 0)
    } else {
        RatMatrix::from_rows(rows)
    })
}

/// One row per line, entries as `p/q` separated by commas.
pub fn matrix_to_csv(m: &RatMatrix) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(format_rational).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn fock_to_json(data: &FockData) -> Value {
    let d = data.d();
    let c: Map<String, Value> = enumerate_words(d, data.depth())
        .into_iter()
        .skip(1)
        .map(|u| (u.to_key(), rational_to_json(data.c_value(&u))))
        .collect();
    let t: Map<String, Value> = (1..=d)
        .map(|i| {
            let levels: Map<String, Value> =
                (0..=data.depth()).map(|k| (k.to_string(), matrix_to_json(data.t_matrix(i, k)))).collect();
            (i.to_string(), Value::Object(levels))
        })
        .collect();
    json!({ "d": d, "depth": data.depth(), "C": c, "T": t })
}

pub fn fock_from_json(v: &Value) -> Result<FockData> {
    let d = usize_field(v, "d")?;
    let depth = usize_field(v, "depth")?;
    let c = object(field(v, "C")?, "C")?
        .iter()
        .map(|(k, x)| Ok((Word::parse_key(d, k)?, rational_from_json(x)?)))
        .collect::<Result<Vec<_>>>()?;
    let tobj = object(field(v, "T")?, "T")?;
    let mut t = Vec::with_capacity(d);
    for i in 1..=d {
        let levels = object(
            tobj.get(&i.to_string()).ok_or_else(|| parse_err(format!("missing T for letter {i}")))?,
            "T entry",
        )?;
        let mut by_level: BTreeMap<usize, RatMatrix> = BTreeMap::new();
        for (k, m) in levels {
            let k: usize = k.parse().map_err(|_| parse_err(format!("invalid level {k:?}")))?;
            by_level.insert(k, matrix_from_json(m)?);
        }
        if by_level.keys().copied().ne(0..by_level.len()) {
            return Err(parse_err(format!("T_{i} levels must be 0, 1, 2, ...")));
        }
        t.push(by_level.into_values().collect());
    }
    if tobj.len() != d {
        return Err(parse_err(format!("T must have exactly {d} letters")));
    }
    FockData::new(d, depth, c, t)
}

pub fn fock_from_str(s: &str) -> Result<FockData> {
    let v: Value = serde_json::from_str(s).map_err(|e| parse_err(e.to_string()))?;
    fock_from_json(&v)
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values are always serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn table_roundtrip() {
        let t = MomentTable::from_fn(2, 2, |w| rat(w.len() as i64, 3) + int(1)).unwrap();
        let text = to_pretty(&table_to_json(&t));
        let back = table_from_str(&text).unwrap();
        assert_eq!(to_pretty(&table_to_json(&back)), text);
        assert!(text.contains("\"\": \"1/1\""));
        assert!(text.contains("\"12\": \"5/3\""));
    }

    #[test]
    fn table_reverse_fill_and_missing() {
        let text = r#"{"d": 2, "max_degree": 2, "moments": {"": "1", "1": "0", "2": "0",
            "11": "1", "12": "1/2", "22": "1"}}"#;
        let t = table_from_str(text).unwrap();
        assert_eq!(crate::state::State::moment(&t, &Word::new(2, vec![2, 1]).unwrap()).unwrap(), rat(1, 2));
        let missing = r#"{"d": 1, "max_degree": 2, "moments": {"": "1", "1": "0"}}"#;
        assert!(matches!(table_from_str(missing), Err(Error::InvalidTable(_))));
    }

    #[test]
    fn poly_json() {
        let p = NcPolynomial::from_terms(2, [(Word::new(2, vec![1, 2]).unwrap(), rat(-1, 2)), (Word::empty(2), int(3))])
            .unwrap();
        let v = poly_to_json(&p);
        assert_eq!(v.to_string(), r#"{"":"3/1","12":"-1/2"}"#);
        assert_eq!(poly_from_json(2, &v).unwrap(), p);
    }

    #[test]
    fn fock_roundtrip() {
        let data = FockData::from_jacobi(&[int(1), rat(1, 2)], &[int(2)]).unwrap();
        let v = fock_to_json(&data);
        assert_eq!(v.to_string(), r#"{"d":1,"depth":1,"C":{"1":"2/1"},"T":{"1":{"0":[["1/1"]],"1":[["1/2"]]}}}"#);
        assert_eq!(fock_from_json(&v).unwrap(), data);
        let free = FockData::free(2, 2);
        assert_eq!(fock_from_json(&fock_to_json(&free)).unwrap(), free);
    }

    #[test]
    fn csv() {
        let m = RatMatrix::from_rows(vec![vec![int(1), rat(1, 2)], vec![int(0), int(-3)]]);
        assert_eq!(matrix_to_csv(&m), "1/1,1/2\n0/1,-3/1\n");
    }
}
