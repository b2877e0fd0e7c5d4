//! Curve description files.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

use semicurve_core::curve::{CurveSpec, Generator, Series};
use semicurve_core::field::{parse_rational, FieldSpec};

use crate::CliError;

fn bad(pointer: &str, message: impl Into<String>) -> CliError {
    CliError::Input {
        pointer: pointer.to_string(),
        message: message.into(),
    }
}

fn field<'a>(obj: &'a Value, parent: &str, key: &str) -> Result<&'a Value, CliError> {
    obj.get(key)
        .ok_or_else(|| bad(parent, format!("missing key \"{key}\"")))
}

fn as_array<'a>(v: &'a Value, pointer: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array()
        .ok_or_else(|| bad(pointer, "expected an array"))
}

fn as_int(v: &Value, pointer: &str) -> Result<i64, CliError> {
    v.as_i64()
        .ok_or_else(|| bad(pointer, "expected an integer"))
}

fn int_list(v: &Value, pointer: &str) -> Result<Vec<i64>, CliError> {
    as_array(v, pointer)?
        .iter()
        .enumerate()
        .map(|(k, x)| as_int(x, &format!("{pointer}/{k}")))
        .collect()
}

fn coefficient(v: &Value, pointer: &str) -> Result<BigRational, CliError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|n| BigRational::from_integer(BigInt::from(n)))
            .ok_or_else(|| bad(pointer, "coefficient must be an integer")),
        Value::String(s) => {
            parse_rational(s).ok_or_else(|| bad(pointer, format!("cannot parse \"{s}\"")))
        }
        Value::Array(parts) if parts.len() == 2 => {
            let num = as_int(&parts[0], &format!("{pointer}/0"))?;
            let den = as_int(&parts[1], &format!("{pointer}/1"))?;
            if den == 0 {
                return Err(bad(&format!("{pointer}/1"), "zero denominator"));
            }
            Ok(BigRational::new(num.into(), den.into()))
        }
        _ => Err(bad(
            pointer,
            "coefficient must be an integer, \"p/q\" or [p, q]",
        )),
    }
}

fn series(v: &Value, pointer: &str) -> Result<Series, CliError> {
    let mut out = Vec::new();
    for (k, term) in as_array(v, pointer)?.iter().enumerate() {
        let tp = format!("{pointer}/{k}");
        let pair = as_array(term, &tp)?;
        if pair.len() != 2 {
            return Err(bad(&tp, "term must be [coefficient, exponent]"));
        }
        let c = coefficient(&pair[0], &format!("{tp}/0"))?;
        let e = pair[1]
            .as_u64()
            .and_then(|e| u32::try_from(e).ok())
            .ok_or_else(|| {
                bad(
                    &format!("{tp}/1"),
                    "exponent must be a non-negative integer",
                )
            })?;
        out.push((c, e));
    }
    Ok(out)
}

fn field_spec(doc: &Value) -> Result<FieldSpec, CliError> {
    let Some(f) = doc.get("field") else {
        return Ok(FieldSpec::default());
    };
    let kind = field(f, "/field", "type")?
        .as_str()
        .ok_or_else(|| bad("/field/type", "expected a string"))?;
    match kind {
        "rational" => Ok(FieldSpec::Rational),
        "prime" => {
            let p = field(f, "/field", "p")?
                .as_u64()
                .ok_or_else(|| bad("/field/p", "expected a positive integer"))?;
            Ok(FieldSpec::Prime(p))
        }
        other => Err(bad(
            "/field/type",
            format!("unknown field type \"{other}\""),
        )),
    }
}

/// Parses and validates a curve description.
pub fn parse_spec(text: &str) -> Result<CurveSpec, CliError> {
    let doc: Value =
        serde_json::from_str(text).map_err(|e| bad("", format!("invalid JSON: {e}")))?;
    if !doc.is_object() {
        return Err(bad("", "expected an object"));
    }
    let mode = field(&doc, "", "mode")?
        .as_str()
        .ok_or_else(|| bad("/mode", "expected a string"))?;
    let spec = match mode {
        "parametrization" => {
            let fs = field_spec(&doc)?;
            let branches = as_array(field(&doc, "", "branches")?, "/branches")?;
            if branches.is_empty() {
                return Err(bad("/branches", "at least one branch is required"));
            }
            let mut gens: BTreeMap<String, Vec<Series>> = BTreeMap::new();
            for (k, b) in branches.iter().enumerate() {
                let bp = format!("/branches/{k}");
                let obj = b
                    .as_object()
                    .ok_or_else(|| bad(&bp, "branch must map generator names to series"))?;
                for name in obj.keys() {
                    gens.entry(name.clone())
                        .or_insert_with(|| vec![Vec::new(); branches.len()]);
                }
            }
            for (k, b) in branches.iter().enumerate() {
                for (name, s) in b.as_object().expect("checked") {
                    let pointer = format!(
                        "/branches/{k}/{}",
                        name.replace('~', "~0").replace('/', "~1")
                    );
                    gens.get_mut(name).expect("collected")[k] = series(s, &pointer)?;
                }
            }
            if gens.is_empty() {
                return Err(bad("/branches", "no generators given"));
            }
            let generators = gens
                .into_iter()
                .map(|(n, b)| Generator::new(&n, b))
                .collect();
            let spec = CurveSpec::parametrization(fs, generators);
            fs.check(spec.branches())
                .map_err(|e| bad("/field/p", e.to_string()))?;
            spec
        }
        "explicit-semigroup" => {
            let sg = field(&doc, "", "semigroup")?;
            let r = field(sg, "/semigroup", "r")?
                .as_u64()
                .ok_or_else(|| bad("/semigroup/r", "expected a positive integer"))?
                as usize;
            let conductor = int_list(
                field(sg, "/semigroup", "conductor")?,
                "/semigroup/conductor",
            )?;
            if conductor.len() != r {
                return Err(bad("/semigroup/conductor", format!("expected {r} entries")));
            }
            let mut points = Vec::new();
            for (k, p) in as_array(field(sg, "/semigroup", "points")?, "/semigroup/points")?
                .iter()
                .enumerate()
            {
                let pointer = format!("/semigroup/points/{k}");
                let p = int_list(p, &pointer)?;
                if p.len() != r {
                    return Err(bad(&pointer, format!("expected {r} entries")));
                }
                points.push(p);
            }
            CurveSpec::ExplicitSemigroup {
                r,
                conductor,
                points,
            }
        }
        other => return Err(bad("/mode", format!("unknown mode \"{other}\""))),
    };
    spec.check().map_err(CliError::Core)?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_cusp() {
        let spec = parse_spec(r#"{"mode":"parametrization","field":{"type":"rational"},"branches":[{"x":[[1,2]],"y":[[1,3]]}]}"#)
            .unwrap();
        assert_eq!(spec.branches(), 1);
        let CurveSpec::Parametrization { field, generators } = spec else {
            panic!()
        };
        assert_eq!(field, FieldSpec::Rational);
        assert_eq!(generators.len(), 2);
    }

    #[test]
    fn parses_explicit_node() {
        let spec = parse_spec(
            r#"{"mode":"explicit-semigroup","semigroup":{"r":2,"conductor":[1,1],"points":[[0,0],[1,1]]}}"#,
        )
        .unwrap();
        assert_eq!(spec.branches(), 2);
    }

    #[test]
    fn rational_coefficients_and_missing_generators() {
        let spec = parse_spec(
            r#"{"mode":"parametrization","branches":[{"x":[[[1,2],1]]},{"y":[["-3/4",1]]}]}"#,
        )
        .unwrap();
        let CurveSpec::Parametrization { field, generators } = spec else {
            panic!()
        };
        assert_eq!(field, FieldSpec::default());
        assert!(generators[0].branches[1].is_empty());
        assert!(generators[1].branches[0].is_empty());
    }

    #[test]
    fn small_prime_rejected() {
        let text = r#"{"mode":"parametrization","field":{"type":"prime","p":2},
            "branches":[{"x":[[1,1]]},{"y":[[1,1]]},{"x":[[1,1]],"y":[[1,1]]}]}"#;
        match parse_spec(text) {
            Err(CliError::Input { pointer, message }) => {
                assert_eq!(pointer, "/field/p");
                assert!(message.contains("must exceed"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn pointers_locate_errors() {
        let cases = [
            (
                r#"{"mode":"parametrization","branches":[{"x":[[1,"a"]]}]}"#,
                "/branches/0/x/0/1",
            ),
            (
                r#"{"mode":"explicit-semigroup","semigroup":{"r":2,"conductor":[1],"points":[]}}"#,
                "/semigroup/conductor",
            ),
            (
                r#"{"mode":"explicit-semigroup","semigroup":{"r":2,"conductor":[1,1],"points":[[0]]}}"#,
                "/semigroup/points/0",
            ),
            (r#"{"mode":"curve"}"#, "/mode"),
            (r#"{"branches":[]}"#, ""),
            (
                r#"{"mode":"parametrization","field":{"type":"real"},"branches":[{"x":[[1,1]]}]}"#,
                "/field/type",
            ),
        ];
        for (text, want) in cases {
            match parse_spec(text) {
                Err(CliError::Input { pointer, .. }) => assert_eq!(pointer, want, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }
}
