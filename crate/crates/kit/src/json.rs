//! JSON renderings of core types, schema `archtrop-kit/1`.
//!
//! Exact quantities are kept exact: rationals as `"p/q"` strings and
//! log-linear forms in their symbolic syntax, each paired with a double and,
//! for forms, a decimal enclosure at the requested precision.

use anyhow::{bail, Context, Result};
use archtrop_core::hardness::MixedVertexInstance;
use archtrop_core::polyhedra::Point;
use archtrop_core::tropical::{CellAtPoint, CellKind, ConstraintOrigin};
use archtrop_core::{HPolyhedron, HalfSpace, LogLinearForm, Rational};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "archtrop-kit/1";

/// `{"schema", "command", ...fields}` with the fields of `body` appended.
pub fn envelope(command: &str, body: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), SCHEMA.into());
    m.insert("command".into(), command.into());
    if let Value::Object(b) = body {
        m.extend(b);
    }
    Value::Object(m)
}

pub fn rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `r` in decimal with `digits` fractional digits, rounded down or up.
fn decimal(r: &Rational, digits: u32, up: bool) -> String {
    let scale = Rational::from_integer(10.into()).pow(digits as i32);
    let scaled = r * &scale;
    let k = if up { scaled.ceil() } else { scaled.floor() }.to_integer();
    let negative = k < 0.into();
    let mag = if negative { -k } else { k }.to_string();
    let mag = format!("{mag:0>width$}", width = digits as usize + 1);
    let (int, frac) = mag.split_at(mag.len() - digits as usize);
    format!("{}{int}.{frac}", if negative { "-" } else { "" })
}

/// A log-linear form with its double value and a decimal enclosure from a
/// `bits`-bit interval.
pub fn form(f: &LogLinearForm, bits: u32) -> Value {
    let iv = f.approx(bits);
    // 2^-bits is below 10^-digits once digits ≥ bits·log10(2)
    let digits = (bits as f64 * std::f64::consts::LOG10_2).ceil() as u32;
    json!({
        "symbolic": f.to_string(),
        "value": f.to_f64(),
        "enclosure": [decimal(&iv.lower(), digits, false), decimal(&iv.upper(), digits, true)],
    })
}

pub fn point(p: &[LogLinearForm], bits: u32) -> Value {
    Value::Array(p.iter().map(|c| form(c, bits)).collect())
}

pub fn point_f64(p: &[LogLinearForm]) -> Vec<f64> {
    p.iter().map(LogLinearForm::to_f64).collect()
}

pub fn halfspace(h: &HalfSpace, bits: u32) -> Value {
    json!({
        "normal": h.normal.iter().map(rational).collect::<Vec<_>>(),
        "rhs": form(&h.rhs, bits),
        "text": h.to_string(),
    })
}

pub fn polyhedron(p: &HPolyhedron, bits: u32) -> Value {
    Value::Array(p.constraints().iter().map(|h| halfspace(h, bits)).collect())
}

/// 1-based positions, as printed to users.
pub fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

pub fn origin(o: &ConstraintOrigin) -> Value {
    json!({ "poly": o.poly + 1, "dominant": o.dominant + 1, "other": o.other + 1 })
}

pub fn cell(c: &CellAtPoint, bits: u32) -> Value {
    let constraints: Vec<Value> = c
        .closure
        .constraints()
        .iter()
        .zip(&c.origins)
        .enumerate()
        .map(|(i, (h, o))| {
            let mut v = halfspace(h, bits);
            v["origin"] = origin(o);
            v["facet"] = c.facets.contains(&i).into();
            v
        })
        .collect();
    json!({
        "kind": match c.kind { CellKind::Complement => "complement", CellKind::ArchTrop => "archtrop" },
        "point": point(&c.point, bits),
        "active_terms": c.active.iter().map(|a| one_based(a)).collect::<Vec<_>>(),
        "raw_constraints": c.raw_constraints,
        "facet_count": c.facet_count(),
        "constraints": constraints,
    })
}

pub fn complex(z: &Complex64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfSpaceJson {
    pub normal: Vec<String>,
    pub rhs: String,
}

/// Exact serialization of a mixed-vertex instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceJson {
    pub schema: String,
    pub kind: String,
    pub n: usize,
    pub polyhedra: Vec<Vec<HalfSpaceJson>>,
}

pub const INSTANCE_KIND: &str = "mixed-vertex-instance";

pub fn instance_to_json(inst: &MixedVertexInstance) -> InstanceJson {
    InstanceJson {
        schema: SCHEMA.into(),
        kind: INSTANCE_KIND.into(),
        n: inst.n,
        polyhedra: inst
            .polyhedra
            .iter()
            .map(|p| {
                p.constraints()
                    .iter()
                    .map(|h| HalfSpaceJson { normal: h.normal.iter().map(rational).collect(), rhs: h.rhs.to_string() })
                    .collect()
            })
            .collect(),
    }
}

pub fn instance_from_json(j: &InstanceJson) -> Result<MixedVertexInstance> {
    if j.schema != SCHEMA || j.kind != INSTANCE_KIND {
        bail!("expected schema {SCHEMA:?} and kind {INSTANCE_KIND:?}, got {:?} and {:?}", j.schema, j.kind);
    }
    let mut polys = Vec::with_capacity(j.polyhedra.len());
    for (i, rows) in j.polyhedra.iter().enumerate() {
        let mut hs = Vec::with_capacity(rows.len());
        for r in rows {
            let normal = r
                .normal
                .iter()
                .map(|s| archtrop_core::exact::parse_rational(s).with_context(|| format!("bad normal entry {s:?}")))
                .collect::<Result<Vec<_>>>()?;
            let rhs: LogLinearForm = r.rhs.parse().with_context(|| format!("bad right-hand side {:?}", r.rhs))?;
            hs.push(HalfSpace::new(normal, rhs)?);
        }
        polys.push(HPolyhedron::new(j.n, hs).with_context(|| format!("polyhedron {}", i + 1))?);
    }
    Ok(MixedVertexInstance::new(j.n, polys)?)
}

/// Point coordinates as symbolic strings, for certificates.
pub fn point_symbolic(p: &Point) -> Vec<String> {
    p.iter().map(LogLinearForm::to_string).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use archtrop_core::hardness::{log_partition_to_instance, partition_to_instance};

    #[test]
    fn decimal_enclosures() {
        let r = Rational::new((-7).into(), 3.into());
        assert_eq!(decimal(&r, 3, false), "-2.334");
        assert_eq!(decimal(&r, 3, true), "-2.333");
        assert_eq!(decimal(&Rational::new(1.into(), 8.into()), 2, true), "0.13");
        let v = form(&"ln(3)".parse().unwrap(), 64);
        let e = v["enclosure"].as_array().unwrap();
        let lo: f64 = e[0].as_str().unwrap().parse().unwrap();
        let hi: f64 = e[1].as_str().unwrap().parse().unwrap();
        assert!(lo <= 3f64.ln() && 3f64.ln() <= hi && hi - lo < 1e-15);
        assert_eq!(v["symbolic"], "ln(3)");
    }

    #[test]
    fn instance_round_trip() {
        for inst in [partition_to_instance(&[1, 2, 3]).unwrap(), log_partition_to_instance(&[2, 3, 6]).unwrap()] {
            let j = instance_to_json(&inst);
            let text = serde_json::to_string(&j).unwrap();
            let back: InstanceJson = serde_json::from_str(&text).unwrap();
            assert_eq!(instance_from_json(&back).unwrap(), inst);
        }
    }
}
