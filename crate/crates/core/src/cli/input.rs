//! JSON spec format.
//!
//! ```json
//! {"type":"general","n":9,"k":3,"L":[..],"l":[..],"d":[..],"r":[..],"R":[..]}
//! {"type":"toeplitz","n":9,"k":3,"L":1,"l":1,"d":2,"r":1,"R":1}
//! {"type":"imperfect","n":9,"k":3,"L":1,"l":1,"d":2,"r":1,"R":1,"alpha":"1/2","beta":"0"}
//! ```
//!
//! Scalars are JSON numbers or strings such as `"3/4"`; both are read exactly.

use serde_json::{json, Map, Value};

use crate::model::{BandParams, ImperfectSpec, PentaSpec, StructuredSpec, ToeplitzSpec};
use crate::scalar::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid input: {0}")]
pub struct InputError(pub String);

fn err<T>(msg: impl Into<String>) -> Result<T, InputError> {
    Err(InputError(msg.into()))
}

fn scalar(v: &Value, field: &str) -> Result<Rational, InputError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return err(format!("field {field:?}: expected a number or a \"p/q\" string")),
    };
    parse_rational(&text).ok_or_else(|| InputError(format!("field {field:?}: cannot parse {text:?}")))
}

fn field<'a>(obj: &'a Map<String, Value>, name: &str) -> Result<&'a Value, InputError> {
    obj.get(name).ok_or_else(|| InputError(format!("missing field {name:?}")))
}

fn index(obj: &Map<String, Value>, name: &str) -> Result<usize, InputError> {
    field(obj, name)?
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| InputError(format!("field {name:?}: expected a non-negative integer")))
}

fn vector(obj: &Map<String, Value>, name: &str) -> Result<Vec<Rational>, InputError> {
    match field(obj, name)? {
        Value::Array(items) => items.iter().map(|v| scalar(v, name)).collect(),
        _ => err(format!("field {name:?}: expected an array")),
    }
}

fn params(obj: &Map<String, Value>) -> Result<BandParams<Rational>, InputError> {
    Ok(BandParams::new(
        scalar(field(obj, "L")?, "L")?,
        scalar(field(obj, "l")?, "l")?,
        scalar(field(obj, "d")?, "d")?,
        scalar(field(obj, "r")?, "r")?,
        scalar(field(obj, "R")?, "R")?,
    ))
}

/// Parses and validates a spec document.
pub fn parse_spec(text: &str) -> Result<StructuredSpec<Rational>, InputError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| InputError(format!("malformed JSON: {e}")))?;
    spec_from_value(&doc)
}

pub fn spec_from_value(doc: &Value) -> Result<StructuredSpec<Rational>, InputError> {
    let obj = doc.as_object().ok_or_else(|| InputError("top level must be an object".into()))?;
    let kind = field(obj, "type")?.as_str().ok_or_else(|| InputError("field \"type\" must be a string".into()))?;
    let n = index(obj, "n")?;
    let k = index(obj, "k")?;
    let shape_err = |e: crate::DetError| InputError(e.to_string());
    match kind {
        "general" => Ok(StructuredSpec::General(
            PentaSpec::new(
                n,
                k,
                vector(obj, "L")?,
                vector(obj, "l")?,
                vector(obj, "d")?,
                vector(obj, "r")?,
                vector(obj, "R")?,
            )
            .map_err(shape_err)?,
        )),
        "toeplitz" => Ok(StructuredSpec::Toeplitz(ToeplitzSpec::new(n, k, params(obj)?).map_err(shape_err)?)),
        "imperfect" => {
            let base = ToeplitzSpec::new(n, k, params(obj)?).map_err(shape_err)?;
            let alpha = scalar(field(obj, "alpha")?, "alpha")?;
            let beta = scalar(field(obj, "beta")?, "beta")?;
            Ok(StructuredSpec::Imperfect(ImperfectSpec::new(base, alpha, beta).map_err(shape_err)?))
        }
        other => err(format!("unknown spec type {other:?}")),
    }
}

/// Inverse of [`spec_from_value`]; scalars are written as canonical strings.
pub fn spec_to_value(spec: &StructuredSpec<Rational>) -> Value {
    let s = |v: &Rational| Value::String(format_rational(v));
    let vs = |v: &[Rational]| Value::Array(v.iter().map(s).collect());
    match spec {
        StructuredSpec::General(g) => json!({
            "type": "general", "n": g.n, "k": g.k,
            "L": vs(&g.far_lower), "l": vs(&g.near_lower), "d": vs(&g.diag),
            "r": vs(&g.near_upper), "R": vs(&g.far_upper),
        }),
        StructuredSpec::Toeplitz(t) => json!({
            "type": "toeplitz", "n": t.n, "k": t.k,
            "L": s(&t.params.far_lower), "l": s(&t.params.near_lower), "d": s(&t.params.diag),
            "r": s(&t.params.near_upper), "R": s(&t.params.far_upper),
        }),
        StructuredSpec::Imperfect(i) => {
            let p = &i.base.params;
            json!({
                "type": "imperfect", "n": i.base.n, "k": i.base.k,
                "L": s(&p.far_lower), "l": s(&p.near_lower), "d": s(&p.diag),
                "r": s(&p.near_upper), "R": s(&p.far_upper),
                "alpha": s(&i.alpha), "beta": s(&i.beta),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn parses_all_kinds() {
        let g = parse_spec(
            r#"{"type":"general","n":4,"k":2,"L":[1],"l":[1,"1/2",3],"d":[2,2,2,2,2.5],"r":[1,1,1],"R":[-1]}"#,
        )
        .unwrap();
        match &g {
            StructuredSpec::General(g) => {
                assert_eq!(g.near_lower[1], rat(1, 2));
                assert_eq!(g.diag[4], rat(5, 2));
                assert_eq!(g.far_upper[0], int(-1));
            }
            _ => panic!("wrong kind"),
        }
        assert_eq!(spec_from_value(&spec_to_value(&g)).unwrap(), g);

        let t = parse_spec(r#"{"type":"toeplitz","n":9,"k":3,"L":1,"l":1,"d":2,"r":1,"R":1}"#).unwrap();
        assert!(matches!(t, StructuredSpec::Toeplitz(_)));
        let i =
            parse_spec(r#"{"type":"imperfect","n":9,"k":3,"L":1,"l":1,"d":2,"r":1,"R":1,"alpha":"1/2","beta":"0"}"#)
                .unwrap();
        match &i {
            StructuredSpec::Imperfect(s) => assert_eq!(s.alpha, rat(1, 2)),
            _ => panic!("wrong kind"),
        }
        assert_eq!(spec_from_value(&spec_to_value(&i)).unwrap(), i);
    }

    #[test]
    fn schema_errors() {
        for bad in [
            "not json",
            "[]",
            r#"{"type":"banana","n":4,"k":2}"#,
            r#"{"type":"toeplitz","n":4,"k":2,"L":1,"l":1,"d":"x","r":1,"R":1}"#,
            r#"{"type":"toeplitz","n":4,"k":3,"L":1,"l":1,"d":1,"r":1,"R":1}"#,
            r#"{"type":"general","n":4,"k":2,"L":[1],"l":[1,1],"d":[2,2,2,2,2],"r":[1,1,1],"R":[1]}"#,
            r#"{"type":"imperfect","n":4,"k":2,"L":1,"l":1,"d":1,"r":1,"R":1,"alpha":1}"#,
            r#"{"type":"toeplitz","n":-4,"k":2,"L":1,"l":1,"d":1,"r":1,"R":1}"#,
        ] {
            assert!(parse_spec(bad).is_err(), "{bad}");
        }
    }
}
