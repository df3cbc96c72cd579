//! JSON serialization for sums and polynomials.
//!
//! Coefficients are rendered as exact `"p/q"` strings and exponents as
//! decimal strings, so values of any size round-trip losslessly. Term order
//! follows the canonical rendering order, and object keys are emitted
//! sorted, so equal values serialize to identical bytes.

use std::str::FromStr;

use hwhopf_core::algebra::DiagramSum;
use hwhopf_core::diagram::{Diagram, Edge, EdgeEnd};
use hwhopf_core::envelope::{HwMonomial, HwPolynomial, PbwMonomial, PbwPolynomial};
use hwhopf_core::hopf::TensorSum;
use hwhopf_core::{BigUint, Rational};
use serde_json::{json, Map, Value};

use super::ParseError;

fn schema_error(message: impl Into<String>) -> ParseError {
    ParseError::new(1, 1, message)
}

fn diagram_to_value(diagram: &Diagram) -> Value {
    let canonical = diagram.canonical_form();
    let edges: Vec<Value> = canonical
        .edges()
        .iter()
        .map(|edge| {
            let end = |e: EdgeEnd, free: &str| match e {
                EdgeEnd::Vertex(v) => json!(v),
                EdgeEnd::Free => json!(free),
            };
            json!([end(edge.tail, "in"), end(edge.head, "out")])
        })
        .collect();
    json!({ "vertices": canonical.vertex_count(), "edges": edges })
}

fn diagram_from_value(value: &Value) -> Result<Diagram, ParseError> {
    let object = value.as_object().ok_or_else(|| schema_error("diagram must be an object"))?;
    let vertices = object
        .get("vertices")
        .and_then(Value::as_u64)
        .ok_or_else(|| schema_error("diagram needs a numeric `vertices` field"))?
        as usize;
    let edges_value = object
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| schema_error("diagram needs an `edges` array"))?;
    let mut edges = Vec::with_capacity(edges_value.len());
    for entry in edges_value {
        let pair = entry.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
            schema_error("each edge must be a two-element array")
        })?;
        let end = |v: &Value, free: &str| -> Result<EdgeEnd, ParseError> {
            if let Some(index) = v.as_u64() {
                Ok(EdgeEnd::Vertex(index as usize))
            } else if v.as_str() == Some(free) {
                Ok(EdgeEnd::Free)
            } else {
                Err(schema_error(format!("edge end must be an index or \"{free}\"")))
            }
        };
        edges.push(Edge { tail: end(&pair[0], "in")?, head: end(&pair[1], "out")? });
    }
    Diagram::new(vertices, edges).map_err(|err| schema_error(err.to_string()))
}

fn rational_to_value(value: &Rational) -> Value {
    json!(value.to_string())
}

fn rational_from_value(value: &Value) -> Result<Rational, ParseError> {
    let text = value.as_str().ok_or_else(|| schema_error("coefficient must be a string"))?;
    Rational::from_str(text).map_err(|_| schema_error(format!("bad rational `{text}`")))
}

/// `{ "terms": [ { "coeff": "p/q", "diagram": { ... } } ] }`
pub fn diagram_sum_to_json(sum: &DiagramSum) -> String {
    let terms: Vec<Value> = sum
        .iter()
        .map(|(_, diagram, coefficient)| {
            json!({ "coeff": rational_to_value(coefficient), "diagram": diagram_to_value(diagram) })
        })
        .collect();
    json!({ "terms": terms }).to_string()
}

pub fn diagram_sum_from_json(text: &str) -> Result<DiagramSum, ParseError> {
    let terms = parse_terms(text)?;
    let mut sum = DiagramSum::zero();
    for term in terms {
        let coefficient = rational_from_value(field(&term, "coeff")?)?;
        let diagram = diagram_from_value(field(&term, "diagram")?)?;
        sum.add_term(coefficient, &diagram);
    }
    Ok(sum)
}

/// `{ "terms": [ { "coeff": "p/q", "left": { ... }, "right": { ... } } ] }`
pub fn tensor_sum_to_json(sum: &TensorSum) -> String {
    let terms: Vec<Value> = sum
        .iter()
        .map(|(_, _, left, right, coefficient)| {
            json!({
                "coeff": rational_to_value(coefficient),
                "left": diagram_to_value(left),
                "right": diagram_to_value(right),
            })
        })
        .collect();
    json!({ "terms": terms }).to_string()
}

pub fn tensor_sum_from_json(text: &str) -> Result<TensorSum, ParseError> {
    let terms = parse_terms(text)?;
    let mut sum = TensorSum::zero();
    for term in terms {
        let coefficient = rational_from_value(field(&term, "coeff")?)?;
        let left = diagram_from_value(field(&term, "left")?)?;
        let right = diagram_from_value(field(&term, "right")?)?;
        sum.add_term(coefficient, &left, &right);
    }
    Ok(sum)
}

fn natural_to_value(value: &BigUint) -> Value {
    json!(value.to_string())
}

fn natural_from_value(value: &Value) -> Result<BigUint, ParseError> {
    let text = value.as_str().ok_or_else(|| schema_error("exponent must be a string"))?;
    BigUint::from_str(text).map_err(|_| schema_error(format!("bad natural `{text}`")))
}

/// `{ "terms": [ { "coeff": "p/q", "monomial": { "ad": "k", "a": "l", "e": "m" } } ] }`
/// in rendering order (descending exponent triples).
pub fn pbw_polynomial_to_json(poly: &PbwPolynomial) -> String {
    let terms: Vec<Value> = poly
        .iter()
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .map(|(monomial, coefficient)| {
            json!({
                "coeff": rational_to_value(coefficient),
                "monomial": {
                    "ad": natural_to_value(&monomial.creation),
                    "a": natural_to_value(&monomial.annihilation),
                    "e": natural_to_value(&monomial.central),
                },
            })
        })
        .collect();
    json!({ "terms": terms }).to_string()
}

pub fn pbw_polynomial_from_json(text: &str) -> Result<PbwPolynomial, ParseError> {
    let terms = parse_terms(text)?;
    let mut poly = PbwPolynomial::zero();
    for term in terms {
        let coefficient = rational_from_value(field(&term, "coeff")?)?;
        let monomial = field(&term, "monomial")?
            .as_object()
            .ok_or_else(|| schema_error("monomial must be an object"))?;
        let exponent = |key: &str| -> Result<BigUint, ParseError> {
            monomial.get(key).map(natural_from_value).unwrap_or_else(|| Ok(BigUint::from(0u32)))
        };
        poly.add_term(
            coefficient,
            PbwMonomial::new(exponent("ad")?, exponent("a")?, exponent("e")?),
        );
    }
    Ok(poly)
}

/// Like the PBW schema without the `e` exponent.
pub fn hw_polynomial_to_json(poly: &HwPolynomial) -> String {
    let terms: Vec<Value> = poly
        .iter()
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .map(|(monomial, coefficient)| {
            json!({
                "coeff": rational_to_value(coefficient),
                "monomial": {
                    "ad": natural_to_value(&monomial.creation),
                    "a": natural_to_value(&monomial.annihilation),
                },
            })
        })
        .collect();
    json!({ "terms": terms }).to_string()
}

pub fn hw_polynomial_from_json(text: &str) -> Result<HwPolynomial, ParseError> {
    let terms = parse_terms(text)?;
    let mut poly = HwPolynomial::zero();
    for term in terms {
        let coefficient = rational_from_value(field(&term, "coeff")?)?;
        let monomial = field(&term, "monomial")?
            .as_object()
            .ok_or_else(|| schema_error("monomial must be an object"))?;
        let exponent = |key: &str| -> Result<BigUint, ParseError> {
            monomial.get(key).map(natural_from_value).unwrap_or_else(|| Ok(BigUint::from(0u32)))
        };
        poly.add_term(coefficient, HwMonomial::new(exponent("ad")?, exponent("a")?));
    }
    Ok(poly)
}

fn parse_terms(text: &str) -> Result<Vec<Map<String, Value>>, ParseError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|err| ParseError::new(err.line().max(1), err.column().max(1), err.to_string()))?;
    let terms = value
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| schema_error("expected an object with a `terms` array"))?;
    terms
        .iter()
        .map(|t| t.as_object().cloned().ok_or_else(|| schema_error("terms must be objects")))
        .collect()
}

fn field<'a>(term: &'a Map<String, Value>, name: &str) -> Result<&'a Value, ParseError> {
    term.get(name).ok_or_else(|| schema_error(format!("term is missing `{name}`")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use hwhopf_core::envelope::Word;
    use hwhopf_core::hopf::coproduct;
    use hwhopf_core::limits::Limits;
    use hwhopf_core::{int, nat};

    #[test]
    fn unit_sum_serializes_compactly() {
        let text = diagram_sum_to_json(&DiagramSum::unit());
        assert_eq!(text, r#"{"terms":[{"coeff":"1","diagram":{"edges":[],"vertices":0}}]}"#);
        assert_eq!(diagram_sum_from_json(&text).unwrap(), DiagramSum::unit());
    }

    #[test]
    fn diagram_sum_round_trips() {
        let d = DiagramSum::from_diagram(&Diagram::single_vertex_pass());
        let product = d.product(&d, &Limits::default()).unwrap();
        let text = diagram_sum_to_json(&product);
        assert_eq!(diagram_sum_from_json(&text).unwrap(), product);
        // Byte-determinism for equal values built differently.
        let again = d.product(&d, &Limits::default()).unwrap();
        assert_eq!(diagram_sum_to_json(&again), text);
    }

    #[test]
    fn tensor_sum_round_trips() {
        let d = DiagramSum::from_diagram(&Diagram::single_vertex_pass());
        let delta = coproduct(&d, &Limits::default()).unwrap();
        let text = tensor_sum_to_json(&delta);
        assert_eq!(tensor_sum_from_json(&text).unwrap(), delta);
    }

    #[test]
    fn pbw_round_trips_with_big_exponents() {
        let mut poly = Word::from_generators([
            hwhopf_core::envelope::Generator::Annihilation,
            hwhopf_core::envelope::Generator::Creation,
        ])
        .normal_order();
        poly.add_term(int(7), PbwMonomial::new("9".repeat(40).parse().unwrap(), nat(0), nat(1)));
        let text = pbw_polynomial_to_json(&poly);
        assert_eq!(pbw_polynomial_from_json(&text).unwrap(), poly);
        let projected = poly.project();
        let text = hw_polynomial_to_json(&projected);
        assert_eq!(hw_polynomial_from_json(&text).unwrap(), projected);
    }

    #[test]
    fn schema_errors_are_reported() {
        assert!(diagram_sum_from_json("{}").is_err());
        assert!(diagram_sum_from_json("not json").is_err());
        assert!(
            diagram_sum_from_json(r#"{"terms":[{"coeff":"1","diagram":{"vertices":1,"edges":[]}}]}"#)
                .is_err(),
            "isolated vertex must be rejected on the way in"
        );
    }
}
