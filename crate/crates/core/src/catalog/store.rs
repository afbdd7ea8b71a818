//! Line-oriented catalog files.
//!
//! Line 1 is a header `{format_version, n, predicates}`, then one JSON record
//! per homeomorphism class in canonical-code order, then a footer
//! `{record_count, checksum}` where the checksum is SHA-256 over every
//! preceding line including its newline. A file without a footer is an
//! unfinished build.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::canon::{canonize, CanonicalCode};
use super::enumerate::topology_classes;
use crate::dimension::{cov_dim, ind_boundary, ind_partition, large_ind, DimValue};
use crate::error::{Error, Result};
use crate::space::SeparationProfile;
use crate::structural::{sn, ClassPredicate, SnValue};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogHeader {
    pub format_version: u32,
    pub n: usize,
    pub predicates: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogFooter {
    pub record_count: usize,
    pub checksum: String,
}

/// Analysis of one homeomorphism class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub code: CanonicalCode,
    pub labeled_count: usize,
    pub profile: SeparationProfile,
    pub ind_b: DimValue,
    pub ind_p: DimValue,
    #[serde(rename = "Ind")]
    pub large_ind: DimValue,
    pub dim: DimValue,
    pub isolated: usize,
    pub density: usize,
    pub sn_results: BTreeMap<String, SnValue>,
}

impl CatalogRecord {
    /// Recomputes the record from its code and compares.
    pub fn reverify(&self, predicates: &[ClassPredicate]) -> Result<bool> {
        Ok(analyze_class(&self.code, predicates)? == *self)
    }
}

/// Computes every record field from the canonical code alone.
pub fn analyze_class(code: &CanonicalCode, predicates: &[ClassPredicate]) -> Result<CatalogRecord> {
    let space = code.decode()?;
    let canon = canonize(&space)?;
    let factorial: usize = (1..=space.n()).product();
    let mut sn_results = BTreeMap::new();
    for p in predicates {
        sn_results.insert(p.name().to_string(), sn(&space, p, None)?);
    }
    Ok(CatalogRecord {
        code: code.clone(),
        labeled_count: factorial / canon.automorphisms,
        profile: space.separation_profile(),
        ind_b: ind_boundary(&space),
        ind_p: ind_partition(&space),
        large_ind: large_ind(&space),
        dim: cov_dim(&space),
        isolated: space.isolated_points().len(),
        density: space.density(),
        sn_results,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogSummary {
    pub n: usize,
    pub classes: usize,
    pub labeled_total: usize,
    #[serde(skip)]
    pub elapsed: Duration,
    /// field -> value -> number of classes
    pub histograms: BTreeMap<String, BTreeMap<String, usize>>,
}

fn line_of<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string(value)?)
}

/// Enumerates the classes on `n` points, analyzes each, and writes the catalog.
pub fn catalog_build(
    n: usize,
    predicates: &[ClassPredicate],
    out: &Path,
    max_points: usize,
) -> Result<CatalogSummary> {
    let start = Instant::now();
    let classes = topology_classes(n, max_points)?;
    let records: Vec<CatalogRecord> = classes
        .par_iter()
        .map(|c| analyze_class(&c.code, predicates))
        .collect::<Result<_>>()?;
    for (c, r) in classes.iter().zip(&records) {
        assert_eq!(
            c.multiplicity, r.labeled_count,
            "orbit count disagrees with enumeration for {}",
            c.code
        );
    }

    let header = CatalogHeader {
        format_version: FORMAT_VERSION,
        n,
        predicates: predicates.iter().map(|p| p.name().to_string()).collect(),
    };
    let mut hasher = Sha256::new();
    let mut w = BufWriter::new(File::create(out)?);
    let mut emit = |line: String, hasher: &mut Sha256| -> Result<()> {
        hasher.update(line.as_bytes());
        hasher.update(b"\n");
        writeln!(w, "{line}")?;
        Ok(())
    };
    emit(line_of(&header)?, &mut hasher)?;
    for r in &records {
        emit(line_of(r)?, &mut hasher)?;
    }
    let footer = CatalogFooter {
        record_count: records.len(),
        checksum: hex::encode(hasher.finalize()),
    };
    writeln!(w, "{}", line_of(&footer)?)?;
    w.flush()?;

    let mut histograms: BTreeMap<String, BTreeMap<String, usize>> = BTreeMap::new();
    for r in &records {
        for (field, v) in [("ind_b", r.ind_b), ("ind_p", r.ind_p), ("Ind", r.large_ind), ("dim", r.dim)] {
            *histograms
                .entry(field.to_string())
                .or_default()
                .entry(v.to_string())
                .or_default() += 1;
        }
    }
    Ok(CatalogSummary {
        n,
        classes: records.len(),
        labeled_total: records.iter().map(|r| r.labeled_count).sum(),
        elapsed: start.elapsed(),
        histograms,
    })
}

/// Reads and checks a complete catalog file.
pub fn read_catalog(path: &Path) -> Result<(CatalogHeader, Vec<CatalogRecord>)> {
    let reader = BufReader::new(File::open(path)?);
    let lines: Vec<String> = reader.lines().collect::<std::io::Result<_>>()?;
    if lines.len() < 2 {
        return Err(Error::Parse("catalog is incomplete: no footer".into()));
    }
    let footer: CatalogFooter = serde_json::from_str(lines.last().unwrap())
        .map_err(|_| Error::Parse("catalog is incomplete: no footer".into()))?;
    let body = &lines[..lines.len() - 1];
    let mut hasher = Sha256::new();
    for l in body {
        hasher.update(l.as_bytes());
        hasher.update(b"\n");
    }
    if hex::encode(hasher.finalize()) != footer.checksum {
        return Err(Error::Parse("catalog checksum mismatch".into()));
    }
    let header: CatalogHeader = serde_json::from_str(&body[0])?;
    if header.format_version != FORMAT_VERSION {
        return Err(Error::Parse(format!(
            "unsupported catalog format version {}",
            header.format_version
        )));
    }
    let records: Vec<CatalogRecord> = body[1..]
        .iter()
        .map(|l| serde_json::from_str(l).map_err(Error::from))
        .collect::<Result<_>>()?;
    if records.len() != footer.record_count {
        return Err(Error::Parse(format!(
            "footer announces {} records, found {}",
            footer.record_count,
            records.len()
        )));
    }
    Ok((header, records))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Op {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

/// A field value as seen by filters. `None` is ∞, above every number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Value {
    Num(Option<i64>),
    Bool(bool),
}

#[derive(Clone, Debug)]
struct Clause {
    field: String,
    op: Op,
    value: Value,
}

/// Conjunction of `field op value` clauses.
#[derive(Clone, Debug, Default)]
pub struct Filter {
    clauses: Vec<Clause>,
}

const NUMERIC_FIELDS: [&str; 8] = [
    "ind_b", "ind_p", "Ind", "dim", "isolated", "density", "labeled_count", "n",
];

fn canonical_field(name: &str) -> Option<String> {
    let name = if name == "ind" { "ind_b" } else { name };
    if NUMERIC_FIELDS.contains(&name) || name.starts_with("sn.") {
        return Some(name.to_string());
    }
    let flags = SeparationProfile {
        t0: false,
        t1: false,
        t2: false,
        regular: false,
        normal: false,
        hereditarily_normal: false,
        collectionwise_normal: false,
        hereditarily_collectionwise_normal: false,
    };
    flags
        .flags()
        .iter()
        .find(|(f, _)| *f == name)
        .map(|(f, _)| f.to_string())
}

fn parse_value(text: &str) -> Result<Value> {
    let t = text.trim();
    match t {
        "true" => Ok(Value::Bool(true)),
        "false" => Ok(Value::Bool(false)),
        "inf" | "∞" => Ok(Value::Num(None)),
        _ => t
            .parse::<i64>()
            .map(|v| Value::Num(Some(v)))
            .map_err(|_| Error::Parse(format!("bad value `{t}`"))),
    }
}

/// Parses `a=1 ∧ b>=2`; clauses may also be joined with `&&`, `,` or ` and `.
/// An empty expression matches everything.
pub fn parse_filter(expr: &str) -> Result<Filter> {
    let normalized = expr
        .replace('∧', "&&")
        .replace(" and ", "&&")
        .replace(',', "&&")
        .replace('≥', ">=")
        .replace('≤', "<=")
        .replace('≠', "!=")
        .replace("==", "=");
    let mut clauses = Vec::new();
    for part in normalized.split("&&").map(str::trim).filter(|p| !p.is_empty()) {
        let split = [(">=", Op::Ge), ("<=", Op::Le), ("!=", Op::Ne), ("=", Op::Eq), ("<", Op::Lt), (">", Op::Gt)]
            .iter()
            .find_map(|&(sym, op)| part.split_once(sym).map(|(f, v)| (f.trim(), op, v)));
        let Some((field, op, value)) = split else {
            // a bare flag name means `flag = true`
            let field = canonical_field(part).ok_or_else(|| Error::UnknownField(part.to_string()))?;
            if NUMERIC_FIELDS.contains(&field.as_str()) || field.starts_with("sn.") {
                return Err(Error::Parse(format!("clause `{part}` has no comparison")));
            }
            clauses.push(Clause { field, op: Op::Eq, value: Value::Bool(true) });
            continue;
        };
        let field = canonical_field(field).ok_or_else(|| Error::UnknownField(field.to_string()))?;
        let value = parse_value(value)?;
        if matches!(value, Value::Bool(_)) && !matches!(op, Op::Eq | Op::Ne) {
            return Err(Error::Parse(format!("clause `{part}` orders booleans")));
        }
        clauses.push(Clause { field, op, value });
    }
    Ok(Filter { clauses })
}

fn dim_value(v: DimValue) -> Value {
    Value::Num(v.as_i64())
}

fn field_value(r: &CatalogRecord, field: &str) -> Result<Value> {
    Ok(match field {
        "ind_b" => dim_value(r.ind_b),
        "ind_p" => dim_value(r.ind_p),
        "Ind" => dim_value(r.large_ind),
        "dim" => dim_value(r.dim),
        "isolated" => Value::Num(Some(r.isolated as i64)),
        "density" => Value::Num(Some(r.density as i64)),
        "labeled_count" => Value::Num(Some(r.labeled_count as i64)),
        "n" => Value::Num(Some(r.code.n() as i64)),
        f if f.starts_with("sn.") => {
            let v = r
                .sn_results
                .get(&f[3..])
                .ok_or_else(|| Error::UnknownField(f.to_string()))?;
            Value::Num(v.finite().map(|k| k as i64))
        }
        f => {
            let (_, b) = r
                .profile
                .flags()
                .into_iter()
                .find(|(name, _)| *name == f)
                .ok_or_else(|| Error::UnknownField(f.to_string()))?;
            Value::Bool(b)
        }
    })
}

fn compare(lhs: Value, op: Op, rhs: Value) -> Result<bool> {
    use std::cmp::Ordering;
    let ord = match (lhs, rhs) {
        (Value::Bool(a), Value::Bool(b)) => a.cmp(&b),
        (Value::Num(a), Value::Num(b)) => match (a, b) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Greater,
            (Some(_), None) => Ordering::Less,
            (Some(a), Some(b)) => a.cmp(&b),
        },
        _ => return Err(Error::Parse("comparison between a flag and a number".into())),
    };
    Ok(match op {
        Op::Eq => ord == Ordering::Equal,
        Op::Ne => ord != Ordering::Equal,
        Op::Lt => ord == Ordering::Less,
        Op::Le => ord != Ordering::Greater,
        Op::Gt => ord == Ordering::Greater,
        Op::Ge => ord != Ordering::Less,
    })
}

impl Filter {
    pub fn matches(&self, r: &CatalogRecord) -> Result<bool> {
        for c in &self.clauses {
            if !compare(field_value(r, &c.field)?, c.op, c.value)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Records of a catalog file matching a filter expression.
pub fn catalog_query(path: &Path, expr: &str) -> Result<Vec<CatalogRecord>> {
    let filter = parse_filter(expr)?;
    let (header, records) = read_catalog(path)?;
    for c in &filter.clauses {
        if let Some(p) = c.field.strip_prefix("sn.") {
            if !header.predicates.iter().any(|h| h == p) {
                return Err(Error::UnknownField(c.field.clone()));
            }
        }
    }
    let mut out = Vec::new();
    for r in records {
        if filter.matches(&r)? {
            out.push(r);
        }
    }
    Ok(out)
}
