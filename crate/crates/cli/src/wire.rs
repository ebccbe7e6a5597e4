//! JSON wire formats.
//!
//! Rationals travel as strings `"p/q"` (`"p"` when the denominator is one);
//! floats as JSON numbers. Inputs are lenient: rationals also accept JSON
//! integers and decimal strings, floats also accept numeric strings and
//! `"p/q"`.

use serde::Deserialize;
use serde_json::{json, Value};
use vanderkit_core::{parse_rational, DenseMatrix, Node, Rational, Scalar, Spectrum};

/// Scalars that can cross the JSON boundary.
pub trait WireScalar: Scalar {
    const MODE: ScalarMode;

    fn from_json(v: &Value) -> Result<Self, String>;
    fn to_json(&self) -> Value;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ScalarMode {
    Rational,
    Float,
}

impl ScalarMode {
    pub fn name(self) -> &'static str {
        match self {
            ScalarMode::Rational => "rational",
            ScalarMode::Float => "float",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text.trim().to_ascii_lowercase().as_str() {
            "rational" => Some(ScalarMode::Rational),
            "float" => Some(ScalarMode::Float),
            _ => None,
        }
    }
}

impl WireScalar for Rational {
    const MODE: ScalarMode = ScalarMode::Rational;

    fn from_json(v: &Value) -> Result<Self, String> {
        let text = match v {
            Value::String(s) => s.clone(),
            Value::Number(n) => n.to_string(),
            other => return Err(format!("expected a rational, found {other}")),
        };
        parse_rational(&text).ok_or_else(|| format!("cannot parse {text:?} as a rational"))
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl WireScalar for f64 {
    const MODE: ScalarMode = ScalarMode::Float;

    fn from_json(v: &Value) -> Result<Self, String> {
        match v {
            Value::Number(n) => n.as_f64().ok_or_else(|| format!("{n} is not representable")),
            Value::String(s) => s
                .trim()
                .parse::<f64>()
                .ok()
                .or_else(|| parse_rational(s).map(|q| q.to_f64()))
                .ok_or_else(|| format!("cannot parse {s:?} as a float")),
            other => Err(format!("expected a number, found {other}")),
        }
    }

    fn to_json(&self) -> Value {
        json!(self)
    }
}

/// A node as written in a job file: either `{"value": .., "multiplicity": m}` or a bare value.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum NodeSpec {
    Full {
        value: Value,
        #[serde(default = "one")]
        multiplicity: usize,
    },
    Bare(Value),
}

fn one() -> usize {
    1
}

impl NodeSpec {
    fn parts(&self) -> (&Value, usize) {
        match self {
            NodeSpec::Full {
                value,
                multiplicity,
            } => (value, *multiplicity),
            NodeSpec::Bare(v) => (v, 1),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum MatrixSpec {
    Flat { rows: usize, entries: Vec<Value> },
    Nested(Vec<Vec<Value>>),
}

/// Input nodes parsed but not yet validated (validation errors are library errors, exit 1).
pub fn parse_nodes<S: WireScalar>(nodes: &[NodeSpec]) -> Result<Vec<Node<S>>, String> {
    nodes
        .iter()
        .enumerate()
        .map(|(k, n)| {
            let (value, multiplicity) = n.parts();
            S::from_json(value)
                .map(|v| Node::new(v, multiplicity))
                .map_err(|e| format!("node {k}: {e}"))
        })
        .collect()
}

pub fn parse_matrix<S: WireScalar>(m: &MatrixSpec) -> Result<DenseMatrix<S>, String> {
    let (rows, values): (usize, Vec<&Value>) = match m {
        MatrixSpec::Flat { rows, entries } => (*rows, entries.iter().collect()),
        MatrixSpec::Nested(rows) => {
            let width = rows.first().map_or(0, Vec::len);
            if rows.iter().any(|r| r.len() != width) {
                return Err("matrix rows have different lengths".into());
            }
            (rows.len(), rows.iter().flatten().collect())
        }
    };
    if rows == 0 || values.len() % rows != 0 {
        return Err(format!(
            "{} entries do not fill {rows} rows",
            values.len()
        ));
    }
    let cols = values.len() / rows;
    let entries = values
        .into_iter()
        .map(S::from_json)
        .collect::<Result<Vec<_>, _>>()?;
    DenseMatrix::new(rows, cols, entries).map_err(|e| e.to_string())
}

pub fn matrix_json<S: WireScalar>(m: &DenseMatrix<S>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(WireScalar::to_json).collect()))
            .collect(),
    )
}

pub fn spectrum_json<S: WireScalar>(s: &Spectrum<S>) -> Value {
    Value::Array(
        s.nodes()
            .iter()
            .map(|n| json!({"value": n.value.to_json(), "multiplicity": n.multiplicity}))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_wire_forms() {
        let half = Rational::from_json(&json!("1/2")).unwrap();
        assert_eq!(half.to_json(), json!("1/2"));
        assert_eq!(Rational::from_json(&json!(3)).unwrap().to_json(), json!("3"));
        assert_eq!(Rational::from_json(&json!("-0.75")).unwrap().to_json(), json!("-3/4"));
        assert!(Rational::from_json(&json!(true)).is_err());
        assert!(Rational::from_json(&json!("1/0")).is_err());
    }

    #[test]
    fn float_wire_forms() {
        assert_eq!(f64::from_json(&json!(0.1)).unwrap(), 0.1);
        assert_eq!(f64::from_json(&json!("2.5")).unwrap(), 2.5);
        assert_eq!(f64::from_json(&json!("1/4")).unwrap(), 0.25);
        assert_eq!(serde_json::to_string(&0.1f64.to_json()).unwrap(), "0.1");
    }

    #[test]
    fn node_forms_and_default_multiplicity() {
        let nodes: Vec<NodeSpec> =
            serde_json::from_value(json!([{"value": "1", "multiplicity": 2}, {"value": "2"}, 3]))
                .unwrap();
        let parsed = parse_nodes::<Rational>(&nodes).unwrap();
        let mults: Vec<_> = parsed.iter().map(|n| n.multiplicity).collect();
        assert_eq!(mults, vec![2, 1, 1]);
    }

    #[test]
    fn matrix_forms() {
        let flat: MatrixSpec =
            serde_json::from_value(json!({"rows": 2, "entries": [1, 2, 3, 4]})).unwrap();
        let nested: MatrixSpec = serde_json::from_value(json!([[1, 2], [3, 4]])).unwrap();
        let a = parse_matrix::<f64>(&flat).unwrap();
        assert_eq!(a, parse_matrix::<f64>(&nested).unwrap());
        let bad: MatrixSpec = serde_json::from_value(json!({"rows": 3, "entries": [1, 2]})).unwrap();
        assert!(parse_matrix::<f64>(&bad).is_err());
    }
}
