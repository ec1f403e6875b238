//! JSON file formats and report rendering.

use std::collections::BTreeSet;
use std::path::Path;

use galekit::complex::SimplicialComplex;
use galekit::fan::{FanData, SetFamily};
use galekit::gale::{PointConfiguration, VectorConfiguration};
use galekit::lvmb::LvmbDatum;
use galekit::polyhedron::Polyhedron;
use galekit::{fmt_rat, parse_rat, Error, IndexSet, Rat, ZMat};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

/// A failure reported as {"error": code, "detail": …} with exit code 2.
#[derive(Debug)]
pub struct CliError {
    pub code: String,
    pub detail: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError { code: e.code().into(), detail: e.to_string() }
    }
}

impl CliError {
    pub fn parse(detail: impl Into<String>) -> Self {
        CliError { code: "PARSE".into(), detail: detail.into() }
    }

    /// A certificate failed re-verification.
    pub fn certificate(detail: impl Into<String>) -> Self {
        CliError { code: "CERTIFICATE".into(), detail: detail.into() }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn read_json(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError { code: "IO".into(), detail: format!("{}: {e}", path.display()) })?;
    serde_json::from_str(&text).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

fn field<'a>(v: &'a Value, key: &str) -> CliResult<&'a Value> {
    v.get(key).ok_or_else(|| CliError::parse(format!("missing field \"{key}\"")))
}

fn as_usize(v: &Value, what: &str) -> CliResult<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| CliError::parse(format!("{what} must be a nonnegative integer")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> CliResult<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| CliError::parse(format!("{what} must be an array")))
}

/// A rational from "p/q" text or a JSON integer; decimals are rejected.
pub fn rat_value(v: &Value) -> CliResult<Rat> {
    match v {
        Value::String(s) => Ok(parse_rat(s)?),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rat::from_integer(i.into())),
            None => Err(CliError::parse(format!("{n} is not an exact rational; write it as \"p/q\""))),
        },
        other => Err(CliError::parse(format!("{other} is not a rational"))),
    }
}

fn rat_vector(v: &Value, what: &str) -> CliResult<Vec<Rat>> {
    as_array(v, what)?.iter().map(rat_value).collect()
}

fn rat_vectors(v: &Value, what: &str) -> CliResult<Vec<Vec<Rat>>> {
    as_array(v, what)?.iter().map(|c| rat_vector(c, what)).collect()
}

pub struct ConfigFile {
    pub config: VectorConfiguration,
    pub lattice: bool,
}

pub fn config_from_value(v: &Value) -> CliResult<ConfigFile> {
    let dim = as_usize(field(v, "dim")?, "dim")?;
    let columns = rat_vectors(field(v, "columns")?, "columns")?;
    let name = v.get("name").and_then(Value::as_str).unwrap_or("").to_string();
    let lattice = v.get("lattice").and_then(Value::as_bool).unwrap_or(false);
    let config = VectorConfiguration::new(dim, columns)?.with_label(name);
    Ok(ConfigFile { config, lattice })
}

pub fn read_config(path: &Path) -> CliResult<ConfigFile> {
    config_from_value(&read_json(path)?)
}

fn index_set(v: &Value, m: usize) -> CliResult<IndexSet> {
    let idx: Vec<usize> = as_array(v, "index set")?.iter().map(|x| as_usize(x, "index")).collect::<CliResult<_>>()?;
    Ok(IndexSet::from_one_based(&idx, m)?)
}

fn index_sets(v: &Value, m: usize) -> CliResult<Vec<IndexSet>> {
    as_array(v, "sets")?.iter().map(|s| index_set(s, m)).collect()
}

pub fn read_complex(path: &Path) -> CliResult<SimplicialComplex> {
    let v = read_json(path)?;
    let m = as_usize(field(&v, "m")?, "m")?;
    Ok(SimplicialComplex::from_facets(m, &index_sets(field(&v, "facets")?, m)?)?)
}

/// A literal family under "sets", or the face closure of "maximal" (or "facets").
pub fn read_family(path: &Path, a: &VectorConfiguration) -> CliResult<SetFamily> {
    let v = read_json(path)?;
    let m = as_usize(field(&v, "m")?, "m")?;
    if let Some(sets) = v.get("sets") {
        return Ok(SetFamily::new(m, &index_sets(sets, m)?)?);
    }
    let maximal = v.get("maximal").or_else(|| v.get("facets")).ok_or_else(|| CliError::parse("expected \"sets\", \"maximal\" or \"facets\""))?;
    if m != a.len() {
        return Err(Error::Shape(format!("family on {m} elements, configuration of {}", a.len())).into());
    }
    Ok(SetFamily::face_closure(&index_sets(maximal, m)?, a)?)
}

pub fn read_polyhedron(path: &Path) -> CliResult<Polyhedron> {
    let v = read_json(path)?;
    let cfg = config_from_value(&v)?;
    let b = rat_vector(field(&v, "b")?, "b")?;
    Ok(Polyhedron::new(cfg.config, b)?)
}

pub fn read_points(path: &Path) -> CliResult<PointConfiguration> {
    let v = read_json(path)?;
    let dim = as_usize(field(&v, "dim")?, "dim")?;
    Ok(PointConfiguration::new(dim, rat_vectors(field(&v, "points")?, "points")?)?)
}

pub fn read_datum(path: &Path) -> CliResult<LvmbDatum> {
    let v = read_json(path)?;
    let m = as_usize(field(&v, "m")?, "m")?;
    let k = as_usize(field(&v, "k")?, "k")?;
    if k == 0 {
        return Err(CliError::parse("k must be positive"));
    }
    let points = rat_vectors(field(&v, "points")?, "points")?;
    if points.len() != m {
        return Err(Error::Shape(format!("{} points for m = {m}", points.len())).into());
    }
    let e: BTreeSet<IndexSet> = index_sets(field(&v, "E")?, m)?.into_iter().collect();
    Ok(LvmbDatum::new(e, PointConfiguration::new(k - 1, points)?)?)
}

/// An integer matrix as {"rows": …} or a bare array of rows.
pub fn read_zmat(path: &Path) -> CliResult<ZMat> {
    let v = read_json(path)?;
    let rows_v = v.get("rows").unwrap_or(&v);
    let rows: Vec<Vec<BigInt>> = as_array(rows_v, "rows")?
        .iter()
        .map(|r| {
            as_array(r, "row")?
                .iter()
                .map(|x| {
                    let q = rat_value(x)?;
                    if q.is_integer() {
                        Ok(q.to_integer())
                    } else {
                        Err(Error::NotIntegral(fmt_rat(&q)).into())
                    }
                })
                .collect()
        })
        .collect::<CliResult<_>>()?;
    if let Some(r) = rows.iter().find(|r| r.len() != rows[0].len()) {
        return Err(Error::Shape(format!("ragged row of length {}", r.len())).into());
    }
    Ok(ZMat::from_rows(&rows))
}

/// Comma-separated rationals.
pub fn parse_rat_list(s: &str) -> CliResult<Vec<Rat>> {
    s.split(',').map(|t| Ok(parse_rat(t.trim())?)).collect()
}

pub fn parse_int_list(s: &str) -> CliResult<Vec<BigInt>> {
    s.split(',').map(|t| t.trim().parse::<BigInt>().map_err(|e| CliError::parse(format!("{t}: {e}")))).collect()
}

pub fn parse_index_list(s: &str, m: usize) -> CliResult<IndexSet> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(IndexSet::EMPTY);
    }
    let idx: Vec<usize> = s.split(',').map(|t| t.trim().parse::<usize>().map_err(|e| CliError::parse(format!("{t}: {e}")))).collect::<CliResult<_>>()?;
    Ok(IndexSet::from_one_based(&idx, m)?)
}

pub fn parse_float_list(s: &str) -> CliResult<Vec<f64>> {
    s.split(',').map(|t| t.trim().parse::<f64>().map_err(|e| CliError::parse(format!("{t}: {e}")))).collect()
}

/// Complex coordinates written "re:im"; a bare number is real.
pub fn parse_complex_list(s: &str) -> CliResult<Vec<num_complex::Complex64>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            let (re, im) = t.split_once(':').unwrap_or((t, "0"));
            let p = |x: &str| x.trim().parse::<f64>().map_err(|e| CliError::parse(format!("{t}: {e}")));
            Ok(num_complex::Complex64::new(p(re)?, p(im)?))
        })
        .collect()
}

pub fn rat_json(r: &Rat) -> Value {
    Value::String(fmt_rat(r))
}

pub fn vec_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_json).collect())
}

pub fn vecs_json(v: &[Vec<Rat>]) -> Value {
    Value::Array(v.iter().map(|x| vec_json(x)).collect())
}

pub fn zmat_json(m: &ZMat) -> Value {
    Value::Array((0..m.nrows()).map(|r| Value::Array(m.row(r).iter().map(|x| Value::String(x.to_string())).collect())).collect())
}

pub fn set_json(s: IndexSet) -> Value {
    json!(s.to_one_based())
}

pub fn sets_json(sets: &[IndexSet]) -> Value {
    Value::Array(sets.iter().map(|s| set_json(*s)).collect())
}

pub fn config_json(cfg: &VectorConfiguration) -> Value {
    let mut o = Map::new();
    o.insert("name".into(), json!(cfg.label()));
    o.insert("dim".into(), json!(cfg.dim()));
    o.insert("columns".into(), vecs_json(cfg.columns()));
    Value::Object(o)
}

pub fn complex_json(k: &SimplicialComplex) -> Value {
    json!({
        "m": k.m(),
        "facets": sets_json(k.facets()),
        "ghost_vertices": set_json(k.ghost_vertices()),
        "f_vector": k.f_vector(),
    })
}

/// A float with 17 significant digits, as a JSON number.
pub fn float_json(x: f64) -> Value {
    let s = format!("{x:.16e}");
    serde_json::from_str(&s).unwrap_or(Value::Null)
}

pub fn fan_data(a: &VectorConfiguration, complex: Option<&Path>, general: Option<&Path>) -> CliResult<FanData> {
    match (complex, general) {
        (Some(k), None) => Ok(FanData::simplicial(read_complex(k)?, a.clone())?),
        (None, Some(c)) => Ok(FanData::general(read_family(c, a)?, a.clone())?),
        _ => Err(CliError::parse("give exactly one of --complex and --general")),
    }
}
