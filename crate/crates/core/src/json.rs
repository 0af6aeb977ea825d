//! JSON reading and writing. Objects are emitted with sorted keys, so equal
//! values always serialize to the same bytes.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;
use serde_json::{json, Number, Value};

use crate::error::{Error, Result};
use crate::gradings::{Grading, NiceCertificate};
use crate::grassmannian::{ChiTable, CountPolynomial, Niceness};
use crate::hall::{HallElement, TensorElement};
use crate::named;
use crate::quiver::{Quiver, QuiverMap, Winding};
use crate::rep::F1Rep;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverDoc {
    vertices: Vec<String>,
    arrows: Vec<ArrowDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowDoc {
    id: String,
    src: String,
    tgt: String,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum QuiverRef {
    Name(String),
    Inline(QuiverDoc),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WindingDoc {
    gamma: QuiverDoc,
    base: QuiverRef,
    vmap: BTreeMap<String, String>,
    amap: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RepDoc {
    quiver: QuiverRef,
    basis: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    maps: BTreeMap<String, Vec<(String, String)>>,
}

fn malformed(e: serde_json::Error) -> Error {
    Error::MalformedInput(e.to_string())
}

impl QuiverDoc {
    fn build(self) -> Result<Quiver> {
        Quiver::new(
            self.vertices,
            self.arrows.into_iter().map(|a| (a.id, a.src, a.tgt)),
        )
    }
}

impl QuiverRef {
    fn build(self) -> Result<Quiver> {
        match self {
            QuiverRef::Name(n) => named::by_name(&n),
            QuiverRef::Inline(d) => d.build(),
        }
    }
}

pub fn parse_quiver(text: &str) -> Result<Quiver> {
    serde_json::from_str::<QuiverDoc>(text).map_err(malformed)?.build()
}

/// Accepts either a quiver object or the name of a standard quiver.
pub fn parse_quiver_ref(text: &str) -> Result<Quiver> {
    serde_json::from_str::<QuiverRef>(text).map_err(malformed)?.build()
}

pub fn parse_winding(text: &str) -> Result<Winding> {
    let doc: WindingDoc = serde_json::from_str(text).map_err(malformed)?;
    let gamma = doc.gamma.build()?;
    let base = Arc::new(doc.base.build()?);
    let vmap = gamma
        .vertices()
        .iter()
        .map(|v| {
            let img = doc
                .vmap
                .get(v)
                .ok_or_else(|| Error::MalformedInput(format!("vmap misses `{v}`")))?;
            base.vertex_index(img)
                .ok_or_else(|| Error::MalformedInput(format!("unknown base vertex `{img}`")))
        })
        .collect::<Result<Vec<usize>>>()?;
    let amap = gamma
        .arrows()
        .iter()
        .map(|a| {
            let img = doc
                .amap
                .get(&a.id)
                .ok_or_else(|| Error::MalformedInput(format!("amap misses `{}`", a.id)))?;
            base.arrow_index(img)
                .ok_or_else(|| Error::MalformedInput(format!("unknown base arrow `{img}`")))
        })
        .collect::<Result<Vec<usize>>>()?;
    Winding::new(QuiverMap::new(gamma, base, vmap, amap)?)
}

pub fn parse_rep(text: &str) -> Result<F1Rep> {
    let doc: RepDoc = serde_json::from_str(text).map_err(malformed)?;
    let base = Arc::new(doc.quiver.build()?);
    F1Rep::new(base, &doc.basis, &doc.maps)
}

pub fn quiver_value(q: &Quiver) -> Value {
    let arrows: Vec<Value> = q
        .arrows()
        .iter()
        .map(|a| json!({"id": a.id, "src": q.vertex(a.src), "tgt": q.vertex(a.tgt)}))
        .collect();
    json!({"vertices": q.vertices(), "arrows": arrows})
}

pub fn winding_value(c: &Winding) -> Value {
    let g = c.gamma();
    let b = c.base();
    let vmap: BTreeMap<&str, &str> = (0..g.n_vertices())
        .map(|v| (g.vertex(v), b.vertex(c.vmap()[v])))
        .collect();
    let amap: BTreeMap<&str, &str> = (0..g.n_arrows())
        .map(|a| (g.arrow(a).id.as_str(), b.arrow(c.amap()[a]).id.as_str()))
        .collect();
    json!({
        "gamma": quiver_value(g),
        "base": quiver_value(b),
        "vmap": vmap,
        "amap": amap,
    })
}

pub fn rep_value(m: &F1Rep) -> Value {
    let q = m.base();
    let basis: BTreeMap<&str, Vec<&str>> = (0..q.n_vertices())
        .map(|v| (q.vertex(v), m.basis(v)))
        .collect();
    let maps: BTreeMap<&str, Vec<(&str, &str)>> = (0..q.n_arrows())
        .map(|a| {
            let pairs = m
                .map(a)
                .iter()
                .map(|(&x, &y)| (m.elements()[x].as_str(), m.elements()[y].as_str()))
                .collect();
            (q.arrow(a).id.as_str(), pairs)
        })
        .collect();
    json!({"quiver": quiver_value(q), "basis": basis, "maps": maps})
}

pub fn bigint_value(x: &BigInt) -> Value {
    Value::Number(
        x.to_string()
            .parse::<Number>()
            .expect("integers are valid JSON numbers"),
    )
}

/// `"p/q"` with `q ≥ 1`, also for integers.
pub fn rational_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// A grading as `{element: value}`.
pub fn grading_value(m: &F1Rep, g: &Grading) -> Value {
    let map: serde_json::Map<String, Value> = m
        .elements()
        .iter()
        .zip(&g.0)
        .map(|(e, v)| (e.clone(), bigint_value(v)))
        .collect();
    Value::Object(map)
}

pub fn certificate_value(m: &F1Rep, cert: &NiceCertificate) -> Value {
    match cert {
        NiceCertificate::Finite { length, gradings } => json!({
            "kind": "finite",
            "length": length,
            "gradings": gradings.iter().map(|g| grading_value(m, g)).collect::<Vec<_>>(),
        }),
        NiceCertificate::Infinite {
            stabilization_level,
            pairs,
        } => json!({
            "kind": "infinite",
            "stabilization_level": stabilization_level,
            "pairs": pairs
                .iter()
                .map(|&(u, v)| [m.elements()[u].as_str(), m.elements()[v].as_str()])
                .collect::<Vec<_>>(),
        }),
        NiceCertificate::SufficientCondition { proposition } => json!({
            "kind": "sufficient_condition",
            "proposition": proposition,
        }),
    }
}

pub fn niceness_value(n: &Niceness) -> Value {
    match n {
        Niceness::Certified(len) => json!({"certified": len}),
        Niceness::Assumed => json!("assumed"),
    }
}

pub fn chi_table_value(t: &ChiTable) -> Value {
    Value::Array(
        t.entries
            .iter()
            .map(|(d, chi)| json!({"dim": d, "chi": chi}))
            .collect(),
    )
}

pub fn count_polynomial_value(p: &CountPolynomial) -> Value {
    json!({
        "coefficients": p.coefficients.iter().map(bigint_value).collect::<Vec<_>>(),
        "primes": p.primes,
        "verification_prime": p.verification_prime,
        "verification_count": p.verification_count,
        "value_at_one": bigint_value(&p.value_at_one()),
    })
}

pub fn hall_element_value(a: &HallElement) -> Value {
    Value::Array(
        a.terms()
            .map(|(c, x)| json!({"class": c.key, "dim": c.dim, "coeff": rational_string(x)}))
            .collect(),
    )
}

pub fn tensor_value(t: &TensorElement) -> Value {
    Value::Array(
        t.terms()
            .map(|((a, b), x)| {
                json!({
                    "left": {"class": a.key, "dim": a.dim},
                    "right": {"class": b.key, "dim": b.dim},
                    "coeff": rational_string(x),
                })
            })
            .collect(),
    )
}

/// Pretty-printed JSON followed by a newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}
