//! Line-delimited structured records.
//!
//! A record is a `[kind]` header line followed by `key=value` lines; keys may
//! repeat. Numbers are exact fraction strings such as `-3/4`, points print as
//! `(a,b)` and polynomials in canonical text form, so every value parses back
//! with [`crate::parse`].
//!
//! ```text
//! [certificate]
//! c=(1/2,1/2)
//! delta=1/2
//! ```

use std::fmt;

use thiserror::Error;

use crate::cases::{CaseVerdict, CounterexampleReport};
use crate::density::{DkReport, HomogeneousDensity, RaySearchReport};
use crate::diff::VanishingProfile;
use crate::parse::{parse_point, parse_rational, ParseError};
use crate::polytope::{OrthantMeet, Point, SeparationCertificate};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecordError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("record [{kind}] has no field {key}")]
    MissingField { kind: String, key: String },
    #[error("expected a [{expected}] record, found [{found}]")]
    WrongKind { expected: String, found: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub kind: String,
    pub fields: Vec<(String, String)>,
}

impl Record {
    pub fn new(kind: impl Into<String>) -> Self {
        Record {
            kind: kind.into(),
            fields: Vec::new(),
        }
    }

    pub fn field(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.push(key, value);
        self
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        let value = value.to_string().replace('\n', " ");
        self.fields.push((key.into(), value));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn get_all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.fields.iter().filter(move |(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn require(&self, key: &str) -> Result<&str, RecordError> {
        self.get(key).ok_or_else(|| RecordError::MissingField {
            kind: self.kind.clone(),
            key: key.to_string(),
        })
    }

    fn expect_kind(&self, kind: &str) -> Result<(), RecordError> {
        if self.kind != kind {
            return Err(RecordError::WrongKind {
                expected: kind.into(),
                found: self.kind.clone(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}]", self.kind)?;
        for (k, v) in &self.fields {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

pub fn render(records: &[Record]) -> String {
    records.iter().map(Record::to_string).collect()
}

/// Parses records back from text. Blank lines are ignored.
pub fn parse_records(text: &str) -> Result<Vec<Record>, RecordError> {
    let mut out: Vec<Record> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        if let Some(kind) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            out.push(Record::new(kind));
            continue;
        }
        let malformed = |message: &str| RecordError::Malformed {
            line: i + 1,
            message: message.into(),
        };
        let (k, v) = line.split_once('=').ok_or_else(|| malformed("expected key=value"))?;
        out.last_mut()
            .ok_or_else(|| malformed("field before any [kind] header"))?
            .fields
            .push((k.to_string(), v.to_string()));
    }
    Ok(out)
}

/// Conversion into structured records. Polynomials print with `vars`.
pub trait ToRecords {
    fn to_records(&self, vars: &[String]) -> Vec<Record>;
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

impl ToRecords for SeparationCertificate {
    fn to_records(&self, _vars: &[String]) -> Vec<Record> {
        vec![Record::new("certificate").field("c", &self.c).field("delta", &self.delta)]
    }
}

impl SeparationCertificate {
    pub fn from_record(r: &Record) -> Result<Self, RecordError> {
        r.expect_kind("certificate")?;
        let c = r.require("c")?;
        let arity = c.matches(',').count() + 1;
        Ok(SeparationCertificate {
            c: Point(parse_point(c, arity)?),
            delta: parse_rational(r.require("delta")?)?,
        })
    }
}

impl ToRecords for OrthantMeet {
    fn to_records(&self, vars: &[String]) -> Vec<Record> {
        match self {
            OrthantMeet::Certificate(c) => c.to_records(vars),
            OrthantMeet::Witness { point, coefficients } => vec![Record::new("witness")
                .field("point", point)
                .field("coefficients", join(coefficients))],
        }
    }
}

impl OrthantMeet {
    pub fn from_record(r: &Record) -> Result<Self, RecordError> {
        if r.kind == "certificate" {
            return Ok(OrthantMeet::Certificate(SeparationCertificate::from_record(r)?));
        }
        r.expect_kind("witness")?;
        let point = r.require("point")?;
        let arity = point.matches(',').count() + 1;
        let coefficients = r
            .require("coefficients")?
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<Rational>, _>>()?;
        Ok(OrthantMeet::Witness {
            point: Point(parse_point(point, arity)?),
            coefficients,
        })
    }
}

impl ToRecords for VanishingProfile {
    fn to_records(&self, vars: &[String]) -> Vec<Record> {
        let mut head = Record::new("profile").field("horizon", self.horizon);
        match self.first_plain_failure() {
            Some(row) => {
                head.push("plain", format!("fails at m={}", row.m));
                head.push("plain-residual", row.plain.to_text(vars));
            }
            None => head.push("plain", format!("vanishes for all m <= {}", self.horizon)),
        }
        match self.with_g_vanishes_from() {
            Some(m) => head.push("with-g", format!("vanishes for {m} <= m <= {}", self.horizon)),
            None => head.push("with-g", format!("does not vanish at m={}", self.horizon)),
        }
        let mut out = vec![head];
        for row in &self.rows {
            out.push(
                Record::new("row")
                    .field("m", row.m)
                    .field("plain", row.plain.to_text(vars))
                    .field("with-g", row.with_g.to_text(vars)),
            );
        }
        out
    }
}

impl ToRecords for RaySearchReport {
    fn to_records(&self, _vars: &[String]) -> Vec<Record> {
        let mut r = Record::new("ray-search")
            .field("u", &self.u)
            .field("horizon", self.horizon)
            .field("verdict", self.verdict().as_str());
        if let Some(m) = self.first_hit() {
            r.push("first-hit", m);
        }
        for hit in &self.hits {
            r.push("hit", format!("{} {}", hit.m, hit.lambda));
        }
        vec![r]
    }
}

impl ToRecords for HomogeneousDensity {
    fn to_records(&self, _vars: &[String]) -> Vec<Record> {
        let mut r = Record::new("homogeneous-density")
            .field("degree", self.degree)
            .field("hits", join(&self.hits));
        for a in &self.anomalies {
            r.push("anomaly", format!("{} {}", a.m, a.lambda));
        }
        vec![r]
    }
}

impl ToRecords for DkReport {
    fn to_records(&self, _vars: &[String]) -> Vec<Record> {
        let mut r = Record::new("dk")
            .field("horizon", self.horizon)
            .field("verdict", self.verdict().as_str())
            .field("origin-in-polytope", self.origin_in_polytope.is_some());
        if let Some(c) = &self.origin_in_polytope {
            r.push("coefficients", join(c));
        }
        if let Some((m, v)) = self.first_nonzero() {
            r.push("first-nonzero", format!("m={m} value={v}"));
        }
        r.push("constant-terms", join(&self.constant_terms));
        vec![r]
    }
}

impl ToRecords for CaseVerdict {
    fn to_records(&self, vars: &[String]) -> Vec<Record> {
        let mut r = Record::new("case")
            .field("name", &self.case_name)
            .field("status", self.status)
            .field("horizon", self.horizon);
        for (name, ok) in &self.hypothesis_checks {
            r.push("check", format!("{name}: {ok}"));
        }
        match &self.bound {
            Some(b) => r.push("bound", b),
            None => r.push("bound", "none"),
        }
        match self.verified_range() {
            Some((a, b)) => r.push("verified", format!("{a}..{b}")),
            None => r.push("verified", "none"),
        }
        for n in &self.notes {
            r.push("note", n);
        }
        for a in &self.anomalies {
            r.push("anomaly", a);
        }
        let mut out = vec![r];
        for res in &self.residuals {
            out.push(
                Record::new("residual")
                    .field("m", res.m)
                    .field("label", &res.label)
                    .field("value", res.value.to_text(vars)),
            );
        }
        out
    }
}

impl ToRecords for CounterexampleReport {
    fn to_records(&self, vars: &[String]) -> Vec<Record> {
        let mut out = vec![Record::new("counterexample")
            .field("name", &self.name)
            .field("horizon", self.horizon)
            .field("precision", self.precision)
            .field("holds", self.holds())];
        for row in &self.rows {
            let mut r = Record::new("row").field("m", row.m).field("precision", row.precision);
            for (name, ok) in &row.checks {
                r.push("check", format!("{name}: {ok}"));
            }
            for (name, value) in &row.values {
                r.push(name.as_str(), value.to_text(vars));
            }
            out.push(r);
        }
        out
    }
}
