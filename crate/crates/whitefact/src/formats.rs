//! JSON and DOT encodings of systems, words, labels, automorphisms,
//! factorizations, move traces and balls.
//!
//! Factor indices are 1-based on the wire and 0-based in the engine.
//! Payloads are JSON integers; integers of the infinite cyclic factor that do
//! not fit in 64 bits are written as decimal strings.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use whitefact_core::{
    ALabel, AlphaLabel, Ball, CayleyTable, Error, FactorAutoPart, FactorElement, FactorGroup, FactorMap,
    FactorSystem, Factorization, MoveRecord, Payload, PureSymmetricAuto, SnBall, TreeVertex, WhiteheadAuto, Word,
};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed input: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed input: {0}")]
    Shape(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Domain(#[from] Error),
}

impl FormatError {
    /// Whether the input could not be read as the expected shape at all, as
    /// opposed to being well formed but mathematically invalid.
    pub fn is_parse(&self) -> bool {
        !matches!(self, FormatError::Domain(_))
    }
}

fn shape(msg: impl Into<String>) -> FormatError {
    FormatError::Shape(msg.into())
}

pub type Result<T, E = FormatError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FactorJson {
    Cyclic {
        order: u64,
    },
    Table {
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        elements: Vec<String>,
        table: Vec<Vec<u32>>,
        identity: u32,
    },
    #[serde(alias = "infinite_cyclic")]
    Int,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemJson {
    pub factors: Vec<FactorJson>,
}

/// `[factor, payload]`.
pub type ElementJson = (usize, Value);
pub type WordJson = Vec<ElementJson>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaJson {
    pub alpha: Vec<WordJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AInner {
    pub apex: usize,
    pub tuple: Vec<WordJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AJson {
    #[serde(rename = "A")]
    pub a: AInner,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PhiJson {
    Mult { value: u64 },
    Perm { map: Vec<u32> },
    Sign { value: i64 },
    Identity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<PhiJson>,
    #[serde(default)]
    pub g: WordJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AutoJson {
    pub parts: Vec<PartJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WhiteheadJson {
    pub targets: Vec<usize>,
    pub x: ElementJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorizationJson {
    pub whitehead: Vec<WhiteheadJson>,
    pub factor: Vec<PhiJson>,
    pub inner: WordJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MoveJson {
    pub i: usize,
    pub j: usize,
    pub a: ElementJson,
    pub vol_before: usize,
    pub vol_after: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeVertexJson {
    pub vertex: String,
    pub depth: usize,
    pub neighbours: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeBallJson {
    pub center: String,
    pub radius: usize,
    pub vertices: Vec<TreeVertexJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnBallJson {
    pub bound: usize,
    pub alpha: Vec<AlphaJson>,
    #[serde(rename = "A")]
    pub a: Vec<AJson>,
    /// `[alpha index, A index]`, 0-based into the two lists.
    pub edges: Vec<(usize, usize)>,
}

// ---- systems ----

pub fn system_from_json(j: &SystemJson) -> Result<FactorSystem> {
    let factors = j
        .factors
        .iter()
        .map(|f| match f {
            FactorJson::Cyclic { order } => FactorGroup::cyclic(*order),
            FactorJson::Table { elements, table, identity } => {
                FactorGroup::Table(CayleyTable::new(elements.clone(), table.clone(), *identity))
            }
            FactorJson::Int => FactorGroup::InfiniteCyclic,
        })
        .collect();
    Ok(FactorSystem::new(factors)?)
}

pub fn system_to_json(sys: &FactorSystem) -> SystemJson {
    let factors = sys
        .factors()
        .iter()
        .map(|g| match g {
            FactorGroup::Cyclic { order } => FactorJson::Cyclic { order: *order },
            FactorGroup::Table(t) => FactorJson::Table {
                elements: t.names().to_vec(),
                table: t.rows().to_vec(),
                identity: t.identity(),
            },
            FactorGroup::InfiniteCyclic => FactorJson::Int,
        })
        .collect();
    SystemJson { factors }
}

pub fn parse_system(text: &str) -> Result<FactorSystem> {
    system_from_json(&serde_json::from_str(text)?)
}

/// `Z/2 * Z/2 * Z/2`, the default when no system file is given.
pub fn default_system() -> FactorSystem {
    FactorSystem::cyclic(&[2, 2, 2]).expect("valid system")
}

// ---- elements and words ----

fn factor_index(sys: &FactorSystem, f: usize) -> Result<usize> {
    if f == 0 {
        return Err(shape("factor indices are 1-based"));
    }
    if f > sys.rank() {
        return Err(Error::FactorOutOfRange { index: f - 1, len: sys.rank() }.into());
    }
    Ok(f - 1)
}

fn payload_from_json(sys: &FactorSystem, k: usize, v: &Value) -> Result<Payload> {
    let bad = || FormatError::Domain(Error::InvalidPayload { factor: k });
    match sys.factor(k) {
        FactorGroup::Cyclic { .. } | FactorGroup::Table(_) => {
            let Value::Number(n) = v else {
                return Err(shape(format!("payload {v} is not an integer")));
            };
            if n.is_f64() {
                return Err(shape(format!("payload {v} is not an integer")));
            }
            let x = n.as_u64().ok_or_else(bad)?;
            Ok(match sys.factor(k) {
                FactorGroup::Cyclic { .. } => Payload::Residue(x),
                _ => Payload::Index(u32::try_from(x).map_err(|_| bad())?),
            })
        }
        FactorGroup::InfiniteCyclic => match v {
            Value::Number(n) if n.is_i64() => Ok(Payload::Int(BigInt::from(n.as_i64().expect("i64")))),
            Value::Number(n) if n.is_u64() => Ok(Payload::Int(BigInt::from(n.as_u64().expect("u64")))),
            Value::String(s) => {
                s.parse::<BigInt>().map(Payload::Int).map_err(|_| shape(format!("payload {s:?} is not an integer")))
            }
            _ => Err(shape(format!("payload {v} is not an integer"))),
        },
    }
}

fn payload_to_json(p: &Payload) -> Value {
    match p {
        Payload::Residue(r) => Value::from(*r),
        Payload::Index(i) => Value::from(*i),
        Payload::Int(n) => match n.to_i64() {
            Some(x) => Value::from(x),
            None => Value::String(n.to_string()),
        },
    }
}

pub fn element_from_json(sys: &FactorSystem, e: &ElementJson) -> Result<FactorElement> {
    let k = factor_index(sys, e.0)?;
    Ok(sys.element(k, payload_from_json(sys, k, &e.1)?)?)
}

pub fn element_to_json(e: &FactorElement) -> ElementJson {
    (e.factor() + 1, payload_to_json(e.payload()))
}

/// Reads a word and reduces it to normal form.
pub fn word_from_json(sys: &FactorSystem, w: &WordJson) -> Result<Word> {
    let letters = w.iter().map(|e| element_from_json(sys, e)).collect::<Result<Vec<_>>>()?;
    Ok(sys.reduce(letters.iter())?)
}

pub fn word_to_json(w: &Word) -> WordJson {
    w.syllables().iter().map(element_to_json).collect()
}

pub fn parse_word(sys: &FactorSystem, text: &str) -> Result<Word> {
    word_from_json(sys, &serde_json::from_str(text)?)
}

fn compact<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

pub fn word_string(w: &Word) -> String {
    compact(&word_to_json(w))
}

// ---- tree vertices ----

/// `"U:<word>"` or `"C<i>:<word>"`.
pub fn vertex_name(v: &TreeVertex) -> String {
    match v {
        TreeVertex::U(w) => format!("U:{}", word_string(w)),
        TreeVertex::C { factor, rep } => format!("C{}:{}", factor + 1, word_string(rep)),
    }
}

pub fn parse_vertex(sys: &FactorSystem, text: &str) -> Result<TreeVertex> {
    let (head, word) = text
        .split_once(':')
        .ok_or_else(|| shape(format!("vertex {text:?} is not of the form U:<word> or C<i>:<word>")))?;
    let rep = parse_word(sys, word)?;
    match head.trim() {
        "U" => Ok(sys.u_vertex(rep)),
        h => {
            let i: usize = h
                .strip_prefix('C')
                .and_then(|i| i.parse().ok())
                .ok_or_else(|| shape(format!("unknown vertex kind {h:?}")))?;
            Ok(sys.c_vertex(factor_index(sys, i)?, &rep))
        }
    }
}

// ---- labels ----

fn words_from_json(sys: &FactorSystem, ws: &[WordJson]) -> Result<Vec<Word>> {
    ws.iter().map(|w| word_from_json(sys, w)).collect()
}

pub fn alpha_from_json(sys: &FactorSystem, j: &AlphaJson) -> Result<AlphaLabel> {
    Ok(sys.alpha_label(words_from_json(sys, &j.alpha)?)?)
}

pub fn alpha_to_json(l: &AlphaLabel) -> AlphaJson {
    AlphaJson { alpha: l.slots().iter().map(word_to_json).collect() }
}

pub fn a_from_json(sys: &FactorSystem, j: &AJson) -> Result<ALabel> {
    let apex = factor_index(sys, j.a.apex)?;
    Ok(sys.a_label(apex, words_from_json(sys, &j.a.tuple)?)?)
}

pub fn a_to_json(m: &ALabel) -> AJson {
    AJson { a: AInner { apex: m.apex() + 1, tuple: m.slots().iter().map(word_to_json).collect() } }
}

pub fn parse_alpha(sys: &FactorSystem, text: &str) -> Result<AlphaLabel> {
    alpha_from_json(sys, &serde_json::from_str(text)?)
}

// ---- automorphisms ----

fn phi_from_json(sys: &FactorSystem, k: usize, phi: Option<&PhiJson>) -> Result<FactorAutoPart> {
    let map = match phi {
        None | Some(PhiJson::Identity) => return Ok(sys.identity_auto(k)),
        Some(PhiJson::Mult { value }) => FactorMap::Mult(*value),
        Some(PhiJson::Perm { map }) => FactorMap::Perm(map.clone()),
        Some(PhiJson::Sign { value: 1 }) => FactorMap::Sign(false),
        Some(PhiJson::Sign { value: -1 }) => FactorMap::Sign(true),
        Some(PhiJson::Sign { .. }) => {
            return Err(Error::InvalidFactorAuto { factor: k, reason: "sign must be 1 or -1" }.into())
        }
    };
    let part = FactorAutoPart { factor: k, map };
    sys.validate_auto(&part)?;
    Ok(part)
}

fn phi_to_json(p: &FactorAutoPart) -> PhiJson {
    match &p.map {
        FactorMap::Mult(k) => PhiJson::Mult { value: *k },
        FactorMap::Perm(m) => PhiJson::Perm { map: m.clone() },
        FactorMap::Sign(neg) => PhiJson::Sign { value: if *neg { -1 } else { 1 } },
    }
}

fn factor_auto_from_json(sys: &FactorSystem, phis: &[Option<&PhiJson>]) -> Result<Vec<FactorAutoPart>> {
    if phis.len() != sys.rank() {
        return Err(Error::Arity { expected: sys.rank(), got: phis.len() }.into());
    }
    phis.iter().enumerate().map(|(k, p)| phi_from_json(sys, k, *p)).collect()
}

pub fn auto_from_json(sys: &FactorSystem, j: &AutoJson) -> Result<PureSymmetricAuto> {
    let phis: Vec<_> = j.parts.iter().map(|p| p.phi.as_ref()).collect();
    let phi = factor_auto_from_json(sys, &phis)?;
    let conj = j.parts.iter().map(|p| word_from_json(sys, &p.g)).collect::<Result<Vec<_>>>()?;
    Ok(sys.auto(phi, conj)?)
}

pub fn auto_to_json(psi: &PureSymmetricAuto) -> AutoJson {
    let parts = psi
        .phi()
        .iter()
        .zip(psi.conj())
        .map(|(p, c)| PartJson { phi: Some(phi_to_json(p)), g: word_to_json(c) })
        .collect();
    AutoJson { parts }
}

pub fn parse_auto(sys: &FactorSystem, text: &str) -> Result<PureSymmetricAuto> {
    auto_from_json(sys, &serde_json::from_str(text)?)
}

pub fn whitehead_from_json(sys: &FactorSystem, w: &WhiteheadJson) -> Result<WhiteheadAuto> {
    let targets = w.targets.iter().map(|&t| factor_index(sys, t)).collect::<Result<Vec<_>>>()?;
    Ok(sys.whitehead(&targets, element_from_json(sys, &w.x)?)?)
}

pub fn whitehead_to_json(w: &WhiteheadAuto) -> WhiteheadJson {
    WhiteheadJson { targets: w.targets().iter().map(|t| t + 1).collect(), x: element_to_json(w.x()) }
}

pub fn factorization_from_json(sys: &FactorSystem, j: &FactorizationJson) -> Result<Factorization> {
    let whitehead = j.whitehead.iter().map(|w| whitehead_from_json(sys, w)).collect::<Result<Vec<_>>>()?;
    let phis: Vec<_> = j.factor.iter().map(Some).collect();
    let factor = factor_auto_from_json(sys, &phis)?;
    Ok(Factorization { whitehead, factor, inner: word_from_json(sys, &j.inner)? })
}

pub fn factorization_to_json(f: &Factorization) -> FactorizationJson {
    FactorizationJson {
        whitehead: f.whitehead.iter().map(whitehead_to_json).collect(),
        factor: f.factor.iter().map(phi_to_json).collect(),
        inner: word_to_json(&f.inner),
    }
}

pub fn parse_factorization(sys: &FactorSystem, text: &str) -> Result<Factorization> {
    factorization_from_json(sys, &serde_json::from_str(text)?)
}

pub fn moves_to_json(moves: &[MoveRecord]) -> Vec<MoveJson> {
    moves
        .iter()
        .map(|m| MoveJson {
            i: m.i + 1,
            j: m.j + 1,
            a: element_to_json(&m.a),
            vol_before: m.vol_before,
            vol_after: m.vol_after,
        })
        .collect()
}

// ---- balls ----

pub fn tree_ball_to_json(b: &Ball) -> TreeBallJson {
    let names: Vec<String> = b.vertices.iter().map(vertex_name).collect();
    let vertices = names
        .iter()
        .enumerate()
        .map(|(i, name)| TreeVertexJson {
            vertex: name.clone(),
            depth: b.depth[i],
            neighbours: b.adjacency[i].iter().map(|&j| names[j].clone()).collect(),
        })
        .collect();
    TreeBallJson { center: vertex_name(&b.center), radius: b.radius, vertices }
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn tree_ball_to_dot(b: &Ball) -> String {
    let mut out = String::from("graph tree {\n");
    for (i, v) in b.vertices.iter().enumerate() {
        let shape = if v.is_u() { "point" } else { "circle" };
        let _ = writeln!(out, "  v{i} [label={}, shape={shape}];", dot_quote(&vertex_name(v)));
    }
    for (i, ns) in b.adjacency.iter().enumerate() {
        for &j in ns.iter().filter(|&&j| j > i) {
            let _ = writeln!(out, "  v{i} -- v{j};");
        }
    }
    out.push_str("}\n");
    out
}

pub fn sn_ball_to_json(b: &SnBall) -> SnBallJson {
    SnBallJson {
        bound: b.bound,
        alpha: b.alpha.iter().map(alpha_to_json).collect(),
        a: b.a.iter().map(a_to_json).collect(),
        edges: b.edges.clone(),
    }
}

/// α-classes as round nodes, A-classes as boxes.
pub fn sn_ball_to_dot(b: &SnBall) -> String {
    let mut out = String::from("graph ball {\n");
    for (i, l) in b.alpha.iter().enumerate() {
        let _ = writeln!(out, "  a{i} [label={}, shape=ellipse];", dot_quote(&compact(&alpha_to_json(l))));
    }
    for (i, m) in b.a.iter().enumerate() {
        let _ = writeln!(out, "  A{i} [label={}, shape=box];", dot_quote(&compact(&a_to_json(m))));
    }
    for (li, ai) in &b.edges {
        let _ = writeln!(out, "  a{li} -- A{ai};");
    }
    out.push_str("}\n");
    out
}
