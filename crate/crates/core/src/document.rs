//! Tables and polynomial families as exportable documents.
//!
//! JSON is canonical: object keys sorted, every rational a `"num/den"`
//! string, λ-polynomials as coefficient arrays ascending in λ, x-polynomials
//! as arrays of those ascending in x. CSV carries the same entries with
//! polynomial values flattened to their display text.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::families::{self, FamilyKind};
use crate::poly::{LambdaPoly, XPoly};
use crate::rational::{parse_rational, render_rational, Rational};
use crate::triangles::{self, TriangleKind};

/// Largest order a document may be generated at.
pub const MAX_ORDER: usize = 24;

pub const GENERATOR: &str = "degen";

/// How entry values are encoded; stored in the metadata so a document can be
/// read back without guessing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Encoding {
    Rational,
    LambdaPoly,
    /// x-polynomial with rational coefficients.
    RationalXPoly,
    XPoly,
}

impl Encoding {
    fn name(self) -> &'static str {
        match self {
            Encoding::Rational => "rational",
            Encoding::LambdaPoly => "lambda-poly",
            Encoding::RationalXPoly => "rational-x-poly",
            Encoding::XPoly => "x-poly",
        }
    }

    fn from_name(name: &str) -> Result<Self> {
        [
            Encoding::Rational,
            Encoding::LambdaPoly,
            Encoding::RationalXPoly,
            Encoding::XPoly,
        ]
        .into_iter()
        .find(|e| e.name() == name)
        .ok_or_else(|| Error::Unknown {
            what: "value encoding",
            name: name.to_string(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    Rational(Rational),
    LambdaPoly(LambdaPoly),
    RationalXPoly(Vec<Rational>),
    XPoly(XPoly),
}

impl Cell {
    fn encoding(&self) -> Encoding {
        match self {
            Cell::Rational(_) => Encoding::Rational,
            Cell::LambdaPoly(_) => Encoding::LambdaPoly,
            Cell::RationalXPoly(_) => Encoding::RationalXPoly,
            Cell::XPoly(_) => Encoding::XPoly,
        }
    }

    fn rational_xpoly(p: &XPoly) -> Cell {
        Cell::RationalXPoly(
            p.coeffs()
                .iter()
                .map(|c| c.as_rational().expect("λ already specialized"))
                .collect(),
        )
    }

    pub fn to_json(&self) -> Value {
        match self {
            Cell::Rational(r) => Value::String(render_rational(r)),
            Cell::LambdaPoly(p) => lambda_json(p),
            Cell::RationalXPoly(cs) => Value::Array(cs.iter().map(|c| Value::String(render_rational(c))).collect()),
            Cell::XPoly(p) => Value::Array(p.coeffs().iter().map(lambda_json).collect()),
        }
    }

    fn from_json(v: &Value, encoding: Encoding) -> Result<Cell> {
        Ok(match encoding {
            Encoding::Rational => Cell::Rational(rational_json(v)?),
            Encoding::LambdaPoly => Cell::LambdaPoly(LambdaPoly::new(rational_list(v)?)),
            Encoding::RationalXPoly => Cell::RationalXPoly(rational_list(v)?),
            Encoding::XPoly => Cell::XPoly(XPoly::new(
                array(v)?
                    .iter()
                    .map(|c| Ok(LambdaPoly::new(rational_list(c)?)))
                    .collect::<Result<_>>()?,
            )),
        })
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Rational(r) => f.write_str(&render_rational(r)),
            Cell::LambdaPoly(p) => write!(f, "{p}"),
            Cell::RationalXPoly(cs) => {
                write!(f, "{}", XPoly::new(cs.iter().cloned().map(LambdaPoly::constant).collect()))
            }
            Cell::XPoly(p) => write!(f, "{p}"),
        }
    }
}

fn lambda_json(p: &LambdaPoly) -> Value {
    Value::Array(p.coeffs().iter().map(|c| Value::String(render_rational(c))).collect())
}

fn malformed(what: &str) -> Error {
    Error::Parse(format!("malformed document: {what}"))
}

fn array(v: &Value) -> Result<&Vec<Value>> {
    v.as_array().ok_or_else(|| malformed("expected an array"))
}

fn rational_json(v: &Value) -> Result<Rational> {
    parse_rational(v.as_str().ok_or_else(|| malformed("expected a rational string"))?)
}

fn rational_list(v: &Value) -> Result<Vec<Rational>> {
    array(v)?.iter().map(rational_json).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub n: usize,
    /// Column index for triangles; absent for sequences and families.
    pub k: Option<usize>,
    pub value: Cell,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutputDocument {
    pub kind: String,
    pub order: usize,
    pub entries: Vec<Entry>,
    /// Generation parameters, already rendered (λ and x as rationals).
    pub parameters: BTreeMap<String, String>,
    pub version: String,
}

impl OutputDocument {
    fn new(kind: &str, order: usize, entries: Vec<Entry>, parameters: BTreeMap<String, String>) -> Self {
        OutputDocument {
            kind: kind.to_string(),
            order,
            entries,
            parameters,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    fn encoding(&self) -> Encoding {
        self.entries
            .first()
            .map_or(Encoding::Rational, |e| e.value.encoding())
    }

    pub fn to_json(&self) -> Value {
        let entries = self
            .entries
            .iter()
            .map(|e| {
                let mut m = Map::new();
                m.insert("n".into(), json!(e.n));
                if let Some(k) = e.k {
                    m.insert("k".into(), json!(k));
                }
                m.insert("value".into(), e.value.to_json());
                Value::Object(m)
            })
            .collect::<Vec<_>>();
        json!({
            "kind": self.kind,
            "order": self.order,
            "entries": entries,
            "metadata": {
                "generator": GENERATOR,
                "version": self.version,
                "encoding": self.encoding().name(),
                "parameters": self.parameters,
            },
        })
    }

    /// Pretty-printed canonical JSON with a trailing newline.
    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let field = |name: &str| v.get(name).ok_or_else(|| malformed(name));
        let meta = field("metadata")?;
        let meta_str = |name: &str| {
            meta.get(name)
                .and_then(Value::as_str)
                .ok_or_else(|| malformed(name))
        };
        let encoding = Encoding::from_name(meta_str("encoding")?)?;
        let index = |e: &Value, name: &str| -> Result<Option<usize>> {
            match e.get(name) {
                None => Ok(None),
                Some(i) => i
                    .as_u64()
                    .map(|i| Some(i as usize))
                    .ok_or_else(|| malformed(name)),
            }
        };
        let entries = array(field("entries")?)?
            .iter()
            .map(|e| {
                Ok(Entry {
                    n: index(e, "n")?.ok_or_else(|| malformed("n"))?,
                    k: index(e, "k")?,
                    value: Cell::from_json(e.get("value").ok_or_else(|| malformed("value"))?, encoding)?,
                })
            })
            .collect::<Result<_>>()?;
        let parameters = meta
            .get("parameters")
            .and_then(Value::as_object)
            .ok_or_else(|| malformed("parameters"))?
            .iter()
            .map(|(k, v)| Ok((k.clone(), v.as_str().ok_or_else(|| malformed(k))?.to_string())))
            .collect::<Result<_>>()?;
        Ok(OutputDocument {
            kind: field("kind")?.as_str().ok_or_else(|| malformed("kind"))?.to_string(),
            order: field("order")?.as_u64().ok_or_else(|| malformed("order"))? as usize,
            entries,
            parameters,
            version: meta_str("version")?.to_string(),
        })
    }

    /// CSV with a header row; polynomial values are quoted display text.
    pub fn render_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .quote_style(csv::QuoteStyle::NonNumeric)
            .from_writer(Vec::new());
        let triangular = self.entries.iter().any(|e| e.k.is_some());
        let header: &[&str] = if triangular { &["n", "k", "value"] } else { &["n", "value"] };
        w.write_record(header).expect("in-memory write");
        for e in &self.entries {
            let mut row = vec![e.n.to_string()];
            if triangular {
                row.push(e.k.map_or_else(String::new, |k| k.to_string()));
            }
            row.push(e.value.to_string());
            w.write_record(&row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 text")
    }
}

fn check_order(order: usize) -> Result<()> {
    if order > MAX_ORDER {
        return Err(Error::Precondition(format!(
            "order {order} exceeds the limit of {MAX_ORDER}"
        )));
    }
    Ok(())
}

fn base_parameters(order: usize, lambda: Option<&Rational>) -> BTreeMap<String, String> {
    let mut p = BTreeMap::new();
    p.insert("order".to_string(), order.to_string());
    if let Some(l) = lambda {
        p.insert("lambda".to_string(), render_rational(l));
    }
    p
}

/// Scalars once λ is fixed or the kind never involves λ; otherwise
/// coefficient arrays, even for entries that happen to be constant.
fn number_cell(v: &LambdaPoly, lambda: Option<&Rational>, classical: bool) -> Cell {
    match (lambda, classical) {
        (Some(l), _) => Cell::Rational(v.specialize(l)),
        (None, true) => Cell::Rational(v.as_rational().expect("classical entries are λ-free")),
        (None, false) => Cell::LambdaPoly(v.clone()),
    }
}

/// Names accepted by [`table_document`]: every triangle kind, plus the
/// Korobov and degenerate Bernoulli number sequences.
pub fn table_kinds() -> Vec<&'static str> {
    TriangleKind::ALL
        .iter()
        .map(|k| k.name())
        .chain(["korobov", "degbernoulli"])
        .collect()
}

/// A number triangle, or a Korobov / degenerate Bernoulli sequence of order
/// `r`. Entries of λ-free kinds are always scalars.
pub fn table_document(
    kind: &str,
    order: usize,
    lambda: Option<&Rational>,
    r: Option<usize>,
) -> Result<OutputDocument> {
    check_order(order)?;
    let mut params = base_parameters(order, lambda);
    params.insert("kind".to_string(), kind.to_string());
    if kind == "korobov" || kind == "degbernoulli" {
        let r = r.unwrap_or(1);
        params.insert("r".to_string(), r.to_string());
        let seq = if kind == "korobov" {
            triangles::korobov(order, r)?
        } else {
            triangles::deg_bernoulli(order, r)?
        };
        let entries = seq
            .values
            .iter()
            .enumerate()
            .map(|(n, v)| Entry { n, k: None, value: number_cell(v, lambda, false) })
            .collect();
        return Ok(OutputDocument::new(kind, order, entries, params));
    }
    if r.is_some() {
        return Err(Error::Precondition(format!("kind {kind} takes no r parameter")));
    }
    let tri_kind = TriangleKind::from_name(kind)?;
    let tri = triangles::triangle(tri_kind, order)?;
    let mut entries = Vec::new();
    for (n, row) in tri.rows().iter().enumerate() {
        for (k, v) in row.iter().enumerate() {
            entries.push(Entry { n, k: Some(k), value: number_cell(v, lambda, tri_kind.is_classical()) });
        }
    }
    Ok(OutputDocument::new(kind, order, entries, params))
}

/// P_0..P_order of a polynomial family, optionally specialized in λ, x or
/// both.
pub fn family_document(
    family: &str,
    order: usize,
    lambda: Option<&Rational>,
    x: Option<&Rational>,
) -> Result<OutputDocument> {
    check_order(order)?;
    let fam = families::family(FamilyKind::from_name(family)?, order)?;
    let mut params = base_parameters(order, lambda);
    params.insert("family".to_string(), family.to_string());
    if let Some(x) = x {
        params.insert("x".to_string(), render_rational(x));
    }
    let entries = fam
        .polys()
        .iter()
        .enumerate()
        .map(|(n, p)| {
            let value = match (lambda, x) {
                (Some(l), Some(x)) => Cell::Rational(p.evaluate(l, x)),
                (None, Some(x)) => Cell::LambdaPoly(p.at_x(x)),
                (Some(l), None) => Cell::rational_xpoly(&p.specialize_lambda(l)),
                (None, None) => Cell::XPoly(p.clone()),
            };
            Entry { n, k: None, value }
        })
        .collect();
    Ok(OutputDocument::new(family, order, entries, params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn entry(doc: &OutputDocument, n: usize, k: Option<usize>) -> &Cell {
        &doc.entries.iter().find(|e| e.n == n && e.k == k).unwrap().value
    }

    #[test]
    fn symbolic_s2deg_entry() {
        let doc = table_document("s2deg", 2, None, None).unwrap();
        assert_eq!(entry(&doc, 2, Some(1)).to_json(), json!(["1", "-1"]));
        assert_eq!(entry(&doc, 2, Some(1)).to_string(), "1 - λ");
        assert_eq!(doc.entries.len(), 6);
        assert_eq!(entry(&doc, 2, Some(2)).to_json(), json!(["1"]));
        assert_eq!(entry(&doc, 2, Some(0)).to_json(), json!([]));
    }

    #[test]
    fn classical_kinds_are_scalar() {
        let doc = table_document("t", 3, None, None).unwrap();
        assert_eq!(entry(&doc, 3, Some(1)).to_json(), json!("5"));
        let doc = table_document("s2deg", 3, Some(&rat(0)), None).unwrap();
        assert_eq!(entry(&doc, 3, Some(2)).to_json(), json!("3"));
    }

    #[test]
    fn family_specializations() {
        let g = family_document("gaenari", 2, None, Some(&rat(1))).unwrap();
        assert_eq!(entry(&g, 2, None).to_json(), json!(["-1", "1"]));
        let b = family_document("degbell", 2, Some(&rat(0)), Some(&rat(1))).unwrap();
        assert_eq!(entry(&b, 2, None).to_json(), json!("2"));
        let j = family_document("jindalrae", 0, None, None).unwrap();
        assert_eq!(entry(&j, 0, None).to_string(), "1");
        let b = family_document("degbell", 2, Some(&ratio(1, 2)), None).unwrap();
        assert_eq!(entry(&b, 2, None).to_json(), json!(["0", "0", "1"]));
    }

    #[test]
    fn json_keys_sorted_and_round_trip() {
        let doc = family_document("jindalrae", 3, None, None).unwrap();
        let text = doc.render_json();
        let kind_at = text.find("\"entries\"").unwrap();
        assert!(kind_at < text.find("\"kind\"").unwrap());
        let back = OutputDocument::from_json(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.render_json(), text);
    }

    #[test]
    fn csv_quotes_polynomials() {
        let doc = table_document("s2deg", 2, None, None).unwrap();
        let csv = doc.render_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "\"n\",\"k\",\"value\"");
        assert!(lines.contains(&"2,1,\"1 - λ\""));
        assert!(lines.contains(&"2,2,1"));
        let doc = family_document("newtypebell", 2, Some(&crate::rational::ratio(1, 2)), None).unwrap();
        assert!(doc.render_csv().lines().any(|l| l == "2,\"x^2 + (1/2)x\""));
    }

    #[test]
    fn sequences_take_r() {
        let doc = table_document("korobov", 3, None, Some(2)).unwrap();
        assert_eq!(doc.parameters["r"], "2");
        assert_eq!(entry(&doc, 0, None).to_json(), json!(["1"]));
        assert!(table_document("s2", 3, None, Some(2)).is_err());
    }

    #[test]
    fn guard_rails() {
        assert!(table_document("s2deg", MAX_ORDER + 1, None, None).is_err());
        assert!(table_document("s3", 3, None, None).is_err());
        assert!(family_document("hermite", 3, None, None).is_err());
    }
}
