//! JSON documents, DOT graphs and term output.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use omega_core::dendro::{Ambient, AmbientKind, SubPresheaf};
use omega_core::homotopy::{AsphericityVerdict, CollapseCertificate, FacePoset, HomologyReport, NonAsphericity};
use omega_core::omega::Morphism;
use omega_core::tensor::ShuffleTree;
use omega_core::tree::{Tree, VertexSpec};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub edges: Vec<String>,
    pub root: String,
    pub vertices: Vec<VertexJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub name: String,
    pub out: String,
    #[serde(rename = "in")]
    pub inputs: Vec<String>,
}

impl TreeJson {
    pub fn of(t: &Tree) -> TreeJson {
        TreeJson {
            edges: t.edge_names().to_vec(),
            root: t.edge_name(t.root()).to_string(),
            vertices: t
                .vertices()
                .iter()
                .map(|v| VertexJson {
                    name: v.name().to_string(),
                    out: t.edge_name(v.output()).to_string(),
                    inputs: v.inputs().iter().map(|&i| t.edge_name(i).to_string()).collect(),
                })
                .collect(),
        }
    }

    pub fn to_tree(&self) -> Result<Tree> {
        let vertices = self.vertices.iter().map(|v| VertexSpec::new(v.name.clone(), v.out.clone(), v.inputs.clone()));
        Ok(Tree::new(self.edges.clone(), &self.root, vertices)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperationJson {
    pub out: String,
    #[serde(rename = "in")]
    pub inputs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub source: TreeJson,
    pub target: TreeJson,
    pub edge_map: BTreeMap<String, String>,
    #[serde(default)]
    pub vertex_map: BTreeMap<String, OperationJson>,
}

impl MorphismJson {
    pub fn of(f: &Morphism) -> MorphismJson {
        let (s, t) = (f.source(), f.target());
        let edge_map =
            (0..s.edge_count()).map(|e| (s.edge_name(e).to_string(), t.edge_name(f.apply(e)).to_string())).collect();
        let vertex_map = (0..s.vertex_count())
            .map(|v| {
                let op = f.vertex_image(v);
                let out = t.edge_name(op.output).to_string();
                let inputs = op.inputs.iter().map(|&i| t.edge_name(i).to_string()).collect();
                (s.vertex(v).name().to_string(), OperationJson { out, inputs })
            })
            .collect();
        MorphismJson { source: TreeJson::of(s), target: TreeJson::of(t), edge_map, vertex_map }
    }

    /// Rebuilds the morphism from its edge map. A vertex map, when given,
    /// must agree with the operations the edge map forces.
    pub fn to_morphism(&self) -> Result<Morphism> {
        let s = Arc::new(self.source.to_tree()?);
        let t = Arc::new(self.target.to_tree()?);
        let map = s
            .edge_names()
            .iter()
            .map(|n| {
                let image = self.edge_map.get(n).ok_or_else(|| Error::Input(format!("edge `{n}` is not mapped")))?;
                t.edge_id(image).ok_or_else(|| Error::Input(format!("`{image}` is not an edge of the target")))
            })
            .collect::<Result<Vec<_>>>()?;
        let f = Morphism::new(s, t, map)?;
        let forced = MorphismJson::of(&f).vertex_map;
        for (v, op) in &self.vertex_map {
            let mut want = op.inputs.clone();
            want.sort();
            let ok = forced.get(v).is_some_and(|g| {
                let mut got = g.inputs.clone();
                got.sort();
                g.out == op.out && got == want
            });
            if !ok {
                return Err(Error::Input(format!("vertex `{v}` is not sent to the operation its edges force")));
            }
        }
        Ok(f)
    }
}

pub fn ambient_json(a: &Ambient) -> Value {
    match a.kind() {
        AmbientKind::Representable(t) => json!({ "kind": "representable", "tree": TreeJson::of(t) }),
        AmbientKind::Tensor(t) => {
            json!({ "kind": "tensor", "left": TreeJson::of(t.left()), "right": TreeJson::of(t.right()) })
        }
    }
}

/// The maximal nondegenerate elements, each with its shape and the point
/// of the ambient on every edge.
pub fn subpresheaf_json(x: &SubPresheaf) -> Value {
    let elements: Vec<Value> = x
        .generator_elements()
        .iter()
        .map(|e| {
            let data: BTreeMap<&str, String> = e
                .shape
                .edge_names()
                .iter()
                .zip(&e.labels)
                .map(|(n, &p)| (n.as_str(), x.ambient().point_name(p)))
                .collect();
            json!({ "shape": TreeJson::of(&e.shape), "data": data })
        })
        .collect();
    json!({ "ambient": ambient_json(x.ambient()), "elements": elements })
}

pub fn homology_json(h: &HomologyReport) -> Value {
    json!({
        "chain_ranks": h.ranks,
        "reduced_betti": h.reduced_betti(),
        "torsion": h.torsion,
        "complete": h.complete,
        "euler_characteristic": h.chain_euler(),
    })
}

pub const MODEL: &str = "nondegenerate-face-poset";

/// `{verdict, evidence, model}`. Collapse sequences are only listed when
/// `certificate` is set.
pub fn verdict_json(v: &AsphericityVerdict, certificate: bool) -> Value {
    let evidence = match v {
        AsphericityVerdict::CollapsedToPoint { certificate: c, homology } => {
            let mut ev = match c {
                CollapseCertificate::Cone { apex } => json!({ "cone_apex": apex }),
                CollapseCertificate::Sequence(seq) if certificate => {
                    json!({ "collapses": seq.len(), "sequence": seq })
                }
                CollapseCertificate::Sequence(seq) => json!({ "collapses": seq.len() }),
            };
            if let Some(h) = homology {
                ev["homology"] = homology_json(h);
            }
            ev
        }
        AsphericityVerdict::HomologyTrivial(h) => {
            json!({ "homology": homology_json(h), "note": "no collapse found; trivial homology is necessary only" })
        }
        AsphericityVerdict::NotAspherical(NonAsphericity::Disconnected { components }) => {
            json!({ "components": components })
        }
        AsphericityVerdict::NotAspherical(NonAsphericity::Homology(h)) => json!({ "homology": homology_json(h) }),
    };
    json!({ "verdict": v.label(), "evidence": evidence, "model": MODEL })
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Vertices as nodes and edges as graph edges; the root and the leaves end
/// in small point nodes.
pub fn tree_dot(t: &Tree) -> String {
    let mut out = String::from("digraph tree {\n  rankdir=BT;\n");
    write_tree_body(&mut out, t, "");
    out.push_str("}\n");
    out
}

fn write_tree_body(out: &mut String, t: &Tree, prefix: &str) {
    let node = |e: usize, top: bool| -> String {
        let v = if top { t.above(e) } else { t.below(e) };
        match v {
            Some(v) => quote(&format!("{prefix}v:{}", t.vertex(v).name())),
            None => quote(&format!("{prefix}{}:{}", if top { "top" } else { "bottom" }, t.edge_name(e))),
        }
    };
    for v in t.vertices() {
        let id = quote(&format!("{prefix}v:{}", v.name()));
        let _ = writeln!(out, "  {id} [label={}];", quote(v.name()));
    }
    for e in 0..t.edge_count() {
        for (top, end) in [(false, t.below(e)), (true, t.above(e))] {
            if end.is_none() {
                let _ = writeln!(out, "  {} [shape=point];", node(e, top));
            }
        }
        let _ = writeln!(out, "  {} -> {} [label={}];", node(e, true), node(e, false), quote(t.edge_name(e)));
    }
}

/// The Hasse diagram, smaller elements below.
pub fn poset_dot(p: &FacePoset) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
    for i in 0..p.len() {
        let _ = writeln!(out, "  n{i} [label={}];", quote(p.name(i)));
    }
    for (a, b) in p.covers() {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}

/// One cluster per shuffle, edges labelled by their pairs.
pub fn shuffles_dot(s: &Tree, t: &Tree, shuffles: &[ShuffleTree]) -> String {
    let mut out = String::from("digraph shuffles {\n  rankdir=BT;\n");
    for (i, sh) in shuffles.iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{i} {{\n  label={};", quote(&format!("shuffle {i}")));
        write_tree_body(&mut out, sh.tree(), &format!("{i}/"));
        out.push_str("  }\n");
    }
    let _ = writeln!(out, "  label={};", quote(&format!("{s} ⊗ {t}")));
    out.push_str("}\n");
    out
}

pub fn shuffle_json(sh: &ShuffleTree) -> Value {
    json!({ "tree": TreeJson::of(sh.tree()), "term": sh.tree().to_string() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Term,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Dot => "dot",
            Format::Term => "term",
        }
    }
}

pub fn emit_tree(t: &Tree, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(&TreeJson::of(t)).expect("trees serialise") + "\n",
        Format::Dot => tree_dot(t),
        Format::Term => format!("{t}\n"),
    }
}
