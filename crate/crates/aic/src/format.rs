//! Text formats: coloring and lattice-coloring JSON documents, tree dumps in
//! JSON and DOT, and the compact `g,r;m:t,...` multicurve notation.
//!
//! Every emitter sorts its keys and terminates its output with a newline, so
//! equal values always produce byte-identical text.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use aic_core::coloring::Color;
use aic_core::dehn_thurston::SectorKey;
use aic_core::tree::{self, TreeLetter};
use aic_core::{
    DTMulticurve, LatticeColoring, StructuredColoring, SurfaceSpec, TorusCurve, TreeVertex, TreeWord,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error(transparent)]
    Core(#[from] aic_core::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = FormatError> = std::result::Result<T, E>;

/// On-disk shape of a [`StructuredColoring`].
///
/// `exceptions` may be partial: a missing shallow vertex takes the color of
/// its leftmost level-`k` descendant, as in [`StructuredColoring::construct`].
/// The emitter always writes the full table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoringDoc {
    pub anchors: BTreeMap<String, String>,
    #[serde(default)]
    pub exceptions: BTreeMap<String, String>,
    pub level: u32,
    #[serde(default)]
    pub overrides: BTreeMap<String, String>,
}

fn curve_map(raw: &BTreeMap<String, String>) -> Result<BTreeMap<TorusCurve, Color>> {
    let mut out = BTreeMap::new();
    for (key, color) in raw {
        let x: TorusCurve = key.parse()?;
        if out.insert(x, Color::new(color.as_str())?).is_some() {
            return Err(aic_core::Error::DuplicateKey(key.clone()).into());
        }
    }
    Ok(out)
}

/// Shallow vertices of a level-`k` coloring: `(1, 0)` and every vertex of
/// level below `k`.
fn shallow_vertices(level: u32) -> Result<Vec<TreeVertex>> {
    if level == 0 {
        return Ok(vec![TreeVertex::base()]);
    }
    Ok(tree::vertices_to_depth(level - 1)?)
}

fn leftmost_descendant(v: &TreeVertex, level: u32) -> TreeWord {
    let mut word = v.word().cloned().unwrap_or_default();
    while word.len() < level as usize {
        word.push(TreeLetter::Left);
    }
    word
}

impl ColoringDoc {
    pub fn from_coloring(c: &StructuredColoring) -> Self {
        let name = |c: &Color| c.as_str().to_string();
        ColoringDoc {
            anchors: c.anchors().map(|(w, col)| (w.to_string(), name(col))).collect(),
            exceptions: c.exceptions().map(|(v, col)| (v.label().to_string(), name(col))).collect(),
            level: c.level(),
            overrides: c.overrides().iter().map(|(x, col)| (x.to_string(), name(col))).collect(),
        }
    }

    pub fn to_coloring(&self) -> Result<StructuredColoring> {
        if self.level > aic_core::coloring::MAX_LEVEL {
            return Err(aic_core::Error::LevelTooLarge(u64::from(self.level)).into());
        }
        let mut anchors = BTreeMap::new();
        for (key, color) in &self.anchors {
            let word: TreeWord = key.parse()?;
            if word.len() != self.level as usize {
                return Err(aic_core::Error::BadAnchorWord(key.clone()).into());
            }
            anchors.insert(word, Color::new(color.as_str())?);
        }
        let mut exceptions = curve_map(&self.exceptions)?;
        for v in shallow_vertices(self.level)? {
            if exceptions.contains_key(&v.label()) {
                continue;
            }
            let word = leftmost_descendant(&v, self.level);
            let color = anchors
                .get(&word)
                .cloned()
                .ok_or_else(|| aic_core::Error::MissingAnchor(word.to_string()))?;
            exceptions.insert(v.label(), color);
        }
        let overrides = curve_map(&self.overrides)?;
        Ok(StructuredColoring::from_parts(self.level, anchors, exceptions, overrides)?)
    }
}

pub fn parse_coloring(text: &str) -> Result<StructuredColoring> {
    let doc: ColoringDoc = serde_json::from_str(text)?;
    doc.to_coloring()
}

pub fn emit_coloring(c: &StructuredColoring) -> String {
    to_line(&ColoringDoc::from_coloring(c))
}

/// Compact JSON followed by a newline.
pub fn to_line<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("in-memory documents always serialize");
    s.push('\n');
    s
}

/// Parses a JSON object of curve keys, as used by `mkcolor --exceptions`.
pub fn parse_curve_colors(text: &str) -> Result<BTreeMap<TorusCurve, Color>> {
    let raw: BTreeMap<String, String> = serde_json::from_str(text)?;
    curve_map(&raw)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDoc {
    pub d: usize,
    #[serde(default)]
    pub exceptions: BTreeMap<String, String>,
    pub sectors: BTreeMap<String, String>,
}

pub fn parse_point(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .map_err(|_| FormatError::Invalid(format!("bad lattice point {s:?}")))
        })
        .collect()
}

fn point_key(z: &[i64]) -> String {
    z.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

impl LatticeDoc {
    pub fn from_lattice(c: &LatticeColoring) -> Self {
        LatticeDoc {
            d: c.dimension(),
            exceptions: c
                .exceptions()
                .iter()
                .map(|(z, col)| (point_key(z), col.as_str().to_string()))
                .collect(),
            sectors: c.sectors().map(|(k, col)| (k.to_string(), col.as_str().to_string())).collect(),
        }
    }

    pub fn to_lattice(&self) -> Result<LatticeColoring> {
        let mut sectors = BTreeMap::new();
        for (key, color) in &self.sectors {
            let key: SectorKey = key.parse()?;
            sectors.insert(key, Color::new(color.as_str())?);
        }
        let mut exceptions = BTreeMap::new();
        for (key, color) in &self.exceptions {
            let z = parse_point(key)?;
            if exceptions.insert(z, Color::new(color.as_str())?).is_some() {
                return Err(aic_core::Error::DuplicateKey(key.clone()).into());
            }
        }
        Ok(LatticeColoring::new(self.d, sectors, exceptions)?)
    }
}

pub fn parse_lattice(text: &str) -> Result<LatticeColoring> {
    let doc: LatticeDoc = serde_json::from_str(text)?;
    doc.to_lattice()
}

pub fn emit_lattice(c: &LatticeColoring) -> String {
    to_line(&LatticeDoc::from_lattice(c))
}

/// Parses `g,r;m1:t1,m2:t2,...`.
///
/// Missing trailing pairs are `0:0`, so `2,0;3:5` is the genus-2 multicurve
/// with `m = [3,0,0]`, `t = [5,0,0]`.
pub fn parse_dt(s: &str) -> Result<DTMulticurve> {
    let bad = || FormatError::Invalid(format!("bad multicurve {s:?}, expected g,r;m1:t1,..."));
    let (surface, coords) = s.trim().split_once(';').ok_or_else(bad)?;
    let (g, r) = surface.split_once(',').ok_or_else(bad)?;
    let g: u32 = g.trim().parse().map_err(|_| bad())?;
    let r: u32 = r.trim().parse().map_err(|_| bad())?;
    let surface = SurfaceSpec::new(g, r)?;
    let n = surface.curve_count();
    let mut m = Vec::new();
    let mut t = Vec::new();
    if !coords.trim().is_empty() {
        for pair in coords.split(',') {
            let (mk, tk) = pair.split_once(':').ok_or_else(bad)?;
            m.push(mk.trim().parse::<i64>().map_err(|_| bad())?);
            t.push(tk.trim().parse::<i64>().map_err(|_| bad())?);
        }
    }
    if m.len() > n {
        return Err(aic_core::Error::LengthMismatch { expected: n, actual: m.len() }.into());
    }
    m.resize(n, 0);
    t.resize(n, 0);
    Ok(DTMulticurve::new(surface, m, t)?)
}

/// Inverse of [`parse_dt`]; trailing `0:0` pairs are dropped.
pub fn emit_dt(d: &DTMulticurve) -> String {
    let s = d.surface();
    let pairs: Vec<(i64, i64)> =
        d.intersections().iter().copied().zip(d.twists().iter().copied()).collect();
    let keep = pairs.iter().rposition(|&p| p != (0, 0)).map_or(0, |i| i + 1);
    let body: Vec<String> = pairs[..keep].iter().map(|(m, t)| format!("{m}:{t}")).collect();
    format!("{},{};{}", s.genus(), s.boundary(), body.join(","))
}

fn vertex_json(v: &TreeVertex) -> Value {
    json!({
        "label": v.label().to_string(),
        "level": v.level(),
        "word": v.word().map(|w| w.to_string()),
    })
}

/// Edges as `(parent, child, letter)`; the edge from `(1, 0)` to the root has
/// no letter.
fn tree_edges(vertices: &[TreeVertex]) -> Vec<(TorusCurve, TorusCurve, Option<char>)> {
    vertices
        .iter()
        .filter_map(|v| {
            let parent = v.parent()?;
            let letter = v.word().and_then(|w| w.letters().last()).map(|l| match l {
                TreeLetter::Left => '1',
                TreeLetter::Right => '2',
            });
            Some((parent.label(), v.label(), letter))
        })
        .collect()
}

pub fn tree_json(vertices: &[TreeVertex]) -> String {
    let edges: Vec<Value> = tree_edges(vertices)
        .into_iter()
        .map(|(a, b, _)| json!([a.to_string(), b.to_string()]))
        .collect();
    let vertices: Vec<Value> = vertices.iter().map(vertex_json).collect();
    to_line(&json!({ "edges": edges, "vertices": vertices }))
}

pub fn tree_dot(vertices: &[TreeVertex]) -> String {
    let mut out = String::from("digraph tree {\n");
    for v in vertices {
        let _ = writeln!(out, "  \"{}\";", v.label());
    }
    for (a, b, letter) in tree_edges(vertices) {
        match letter {
            Some(l) => {
                let _ = writeln!(out, "  \"{a}\" -> \"{b}\" [label=\"{l}\"];");
            }
            None => {
                let _ = writeln!(out, "  \"{a}\" -> \"{b}\";");
            }
        }
    }
    out.push_str("}\n");
    out
}
