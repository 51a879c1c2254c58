//! The rooted tree-decomposition built from an exhaustion.
//!
//! Nodes are the root and the components of the `G − Hₘ`; a component of
//! `G − Hₘ₊₁` hangs below the component of `G − Hₘ` containing it. The root's
//! part is `H₀` and the part of a component `C` of `G − Hₘ` is
//! `N(C) ∪ (C ∩ Hₘ₊₁)`, so the separator of the edge above `C` is `N(C)`.
//! Every topological end corresponds to the branch of components it lives
//! in; a dominated end is eventually swallowed by a part and orients the
//! tree towards that node.

use serde::{Deserialize, Serialize};

use crate::ends::End;
use crate::epvs::Epvs;
use crate::error::{Error, Result};
use crate::exhaustion::{exhaustion, Exhaustion};
use crate::presentation::EpgPresentation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TdNode {
    pub id: usize,
    /// `m` for a component of `G − Hₘ`; `None` for the root.
    pub layer: Option<usize>,
    pub component: Option<Epvs>,
    pub parent: Option<usize>,
    pub part: Epvs,
    /// Intersection of this part with the parent's part.
    pub separator: Option<Epvs>,
}

/// A topological end and the branch of the tree it corresponds to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisplayEntry {
    pub end: usize,
    pub tail: usize,
    pub strands: Vec<usize>,
    /// Node ids of the components `C₀ ⊋ C₁ ⊋ ⋯` the end lives in, one per layer.
    pub chain: Vec<usize>,
}

/// The node a dominated end orients the tree towards (`None` if not reached within the prefix).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orientation {
    pub end: usize,
    pub node: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecompositionPrefix {
    pub name: String,
    pub depth: usize,
    /// Members of component families are listed up to this copy index.
    pub horizon: usize,
    pub nodes: Vec<TdNode>,
    pub display_table: Vec<DisplayEntry>,
    pub dominated: Vec<Orientation>,
    /// Components one layer below the prefix: the parts of the tree not yet listed.
    pub frontier: Vec<Epvs>,
}

impl TreeDecompositionPrefix {
    pub fn children(&self, id: usize) -> impl Iterator<Item = &TdNode> {
        self.nodes.iter().filter(move |n| n.parent == Some(id))
    }

    /// Node ids from `id` up to the root.
    pub fn ancestors(&self, id: usize) -> Vec<usize> {
        let mut out = vec![id];
        let mut cur = id;
        while let Some(p) = self.nodes.get(cur).and_then(|n| n.parent) {
            if out.len() > self.nodes.len() {
                break;
            }
            out.push(p);
            cur = p;
        }
        out
    }

    /// Number of leaves of the prefix.
    pub fn leaf_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| self.children(n.id).next().is_none())
            .count()
    }
}

fn chain_for(ex: &Exhaustion, end: &End, node_of: &[Vec<Option<usize>>], depth: usize) -> Option<Vec<usize>> {
    (0..=depth)
        .map(|m| {
            let layer = ex.layers.get(m)?;
            let (_, c) = layer.end_homes.iter().find(|(e, _)| *e == end.id)?;
            node_of[m][*c]
        })
        .collect()
}

pub fn build_tree_decomposition(pres: &EpgPresentation, depth: usize, horizon: usize) -> Result<TreeDecompositionPrefix> {
    if depth == 0 {
        return Err(Error::Malformed("depth must be at least 1".into()));
    }
    let ex = exhaustion(pres, depth + 1)?;
    let mut nodes = vec![TdNode {
        id: 0,
        layer: None,
        component: None,
        parent: None,
        part: ex.set(0).clone(),
        separator: None,
    }];
    // node_of[m][c]: node of the (single) component c of layer m
    let mut node_of: Vec<Vec<Option<usize>>> = Vec::new();
    for m in 0..=depth {
        let Some(layer) = ex.layers.get(m) else {
            node_of.push(Vec::new());
            continue;
        };
        let next = ex.set(m + 1);
        let mut ids = Vec::new();
        for rec in &layer.components {
            ids.push(if rec.shift.is_none() { Some(nodes.len()) } else { None });
            for member in rec.members_up_to(horizon) {
                let c = member.component;
                let parent = if m == 0 {
                    Some(0)
                } else {
                    nodes
                        .iter()
                        .find(|n| n.layer == Some(m - 1) && n.component.as_ref().is_some_and(|p| c.is_subset(p)))
                        .map(|n| n.id)
                };
                let parent = parent.ok_or_else(|| Error::Postcondition(format!("no parent for {c}")))?;
                let part = member.adhesion.union(&c.intersect(next));
                let separator = part.intersect(&nodes[parent].part);
                nodes.push(TdNode {
                    id: nodes.len(),
                    layer: Some(m),
                    component: Some(c),
                    parent: Some(parent),
                    part,
                    separator: Some(separator),
                });
            }
        }
        node_of.push(ids);
    }
    let mut display_table = Vec::new();
    let mut dominated = Vec::new();
    for end in &ex.ends {
        if end.is_topological() {
            let chain = chain_for(&ex, end, &node_of, depth)
                .ok_or_else(|| Error::Postcondition(format!("end {} has no branch", end.id)))?;
            display_table.push(DisplayEntry {
                end: end.id,
                tail: end.tail,
                strands: end.strands.clone(),
                chain,
            });
        } else {
            let node = nodes
                .iter()
                .filter(|n| {
                    n.component
                        .as_ref()
                        .is_some_and(|c| !c.intersect(&end.lane).is_finite())
                })
                .max_by_key(|n| n.layer)
                .filter(|n| !n.part.intersect(&end.lane).is_finite())
                .map(|n| n.id);
            dominated.push(Orientation { end: end.id, node });
        }
    }
    let frontier = ex
        .layers
        .get(depth + 1)
        .map(|l| {
            l.components
                .iter()
                .flat_map(|r| r.members_up_to(horizon))
                .map(|r| r.component)
                .collect()
        })
        .unwrap_or_default();
    Ok(TreeDecompositionPrefix {
        name: pres.name.clone(),
        depth,
        horizon,
        nodes,
        display_table,
        dominated,
        frontier,
    })
}
