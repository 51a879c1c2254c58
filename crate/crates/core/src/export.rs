//! JSON documents and DOT drawings.
//!
//! Every JSON document carries `"schema": 1`, a `kind`, and the presentation
//! it was computed from (in the text format), so a document can be checked
//! on its own.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::ends::{End, PeriodicRay};
use crate::epvs::Epvs;
use crate::error::{Error, Result};
use crate::finite::FiniteGraph;
use crate::presentation::{EpgPresentation, VertexId};
use crate::starcomb::TreePrefix;
use crate::text::{emit_presentation, parse_presentation};
use crate::treedecomp::TreeDecompositionPrefix;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Document<T> {
    pub schema: u32,
    pub kind: String,
    pub presentation: String,
    pub data: T,
}

pub fn document<'a, T: Serialize>(kind: &str, pres: &EpgPresentation, data: &'a T) -> Document<&'a T> {
    Document {
        schema: SCHEMA,
        kind: kind.to_string(),
        presentation: emit_presentation(pres),
        data,
    }
}

pub fn to_json<T: Serialize>(kind: &str, pres: &EpgPresentation, data: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(&document(kind, pres, data))?)
}

/// Parses a document, checks its schema and kind, and rebuilds its presentation.
pub fn read_document<T: for<'de> Deserialize<'de>>(text: &str, kind: &str) -> Result<(EpgPresentation, T)> {
    let doc: Document<serde_json::Value> = serde_json::from_str(text)?;
    if doc.schema != SCHEMA {
        return Err(Error::Malformed(format!("schema {} (expected {SCHEMA})", doc.schema)));
    }
    if doc.kind != kind {
        return Err(Error::Malformed(format!("document holds {}, expected {kind}", doc.kind)));
    }
    let pres = parse_presentation(&doc.presentation)?;
    Ok((pres, serde_json::from_value(doc.data)?))
}

/// An end as shown to users: dominators as vertices.
#[derive(Clone, Debug, Serialize)]
pub struct EndView {
    pub id: usize,
    pub tail: usize,
    pub strands: Vec<usize>,
    pub topological: bool,
    pub dominators: Vec<VertexId>,
    pub lane: Epvs,
    pub representative: PeriodicRay,
}

impl From<&End> for EndView {
    fn from(e: &End) -> Self {
        EndView {
            id: e.id,
            tail: e.tail,
            strands: e.strands.clone(),
            topological: e.is_topological(),
            dominators: e.dominators.iter().map(|&d| VertexId::Core(d)).collect(),
            lane: e.lane.clone(),
            representative: e.representative.clone(),
        }
    }
}

fn size(s: &Epvs) -> String {
    s.len().map_or_else(|| "inf".to_string(), |n| n.to_string())
}

/// `unfold(depth)` as an undirected DOT graph.
pub fn unfolding_dot(pres: &EpgPresentation, depth: usize) -> String {
    let g = FiniteGraph::unfolding(pres, depth, None);
    let mut out = format!("graph \"{}\" {{\n", pres.name);
    for v in &g.vertices {
        let _ = writeln!(out, "  \"{v}\";");
    }
    for (a, b) in g.edges() {
        let _ = writeln!(out, "  \"{a}\" -- \"{b}\";");
    }
    out.push_str("}\n");
    out
}

/// A rooted tree of graph vertices, edges pointing away from the root.
pub fn tree_dot(name: &str, tree: &TreePrefix) -> String {
    let mut out = format!("digraph \"{name}\" {{\n");
    if let Some(r) = tree.root {
        let _ = writeln!(out, "  \"{r}\" [shape=doublecircle];");
    }
    for v in tree.vertices().filter(|v| Some(*v) != tree.root) {
        let _ = writeln!(out, "  \"{v}\";");
    }
    for (p, v) in tree.edges() {
        let _ = writeln!(out, "  \"{p}\" -> \"{v}\";");
    }
    out.push_str("}\n");
    out
}

/// The decomposition tree with part and separator sizes.
pub fn td_dot(td: &TreeDecompositionPrefix) -> String {
    let mut out = format!("digraph \"{}\" {{\n", td.name);
    for n in &td.nodes {
        let layer = n.layer.map_or_else(|| "root".to_string(), |m| format!("layer {m}"));
        let _ = writeln!(out, "  n{} [label=\"{}: {layer}\\npart {}\"];", n.id, n.id, size(&n.part));
    }
    for n in &td.nodes {
        if let Some(p) = n.parent {
            let sep = n.separator.as_ref().map_or_else(|| "?".to_string(), size);
            let _ = writeln!(out, "  n{p} -> n{} [label=\"{sep}\"];", n.id);
        }
    }
    out.push_str("}\n");
    out
}
