//! A spanning tree that is end-faithful for the topological ends.
//!
//! `T₀` is the single vertex of `H₀`. For every component `C` of `G − Hₘ`,
//! a breadth-first tree of `G[C ∩ Hₘ₊₁]` is hung from `Tₘ` by the least edge
//! `e_C` between them; `Tₘ₊₁` is `Tₘ` with all these subtrees. The rooted ray
//! of a topological end runs through the edges `e_{Cₘ}` of the components
//! the end lives in, and it is the only one: a tree path into `Cₘ` must use
//! `e_{Cₘ}`.
//!
//! The tree is materialized up to a horizon: every vertex of `Hₙ` up to that
//! copy index is included, together with its path to the root.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::epvs::Epvs;
use crate::error::{Error, Result};
use crate::exhaustion::exhaustion;
use crate::finite::FiniteGraph;
use crate::presentation::{EpgPresentation, VertexId};
use crate::starcomb::TreePrefix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attachment {
    pub layer: usize,
    pub component: Epvs,
    /// `e_C = (x, y)` with `x ∈ Hₘ` and `y ∈ C`.
    pub edge: (VertexId, VertexId),
}

/// The rooted tree ray of a topological end, as far as the prefix reaches.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayCertificate {
    pub end: usize,
    /// The components `C₀ ⊋ C₁ ⊋ ⋯` the end lives in.
    pub chain: Vec<Epvs>,
    /// `e_{Cₘ}` for each chain component.
    pub edges: Vec<(VertexId, VertexId)>,
    /// Tree path from the root through every `e_{Cₘ}`.
    pub path: Vec<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanningTreePrefix {
    pub name: String,
    pub depth: usize,
    pub horizon: usize,
    /// `H₀ … Hₙ`.
    pub layers: Vec<Epvs>,
    pub tree: TreePrefix,
    pub attachments: Vec<Attachment>,
    pub ray_certificates: Vec<RayCertificate>,
}

/// Least edge `(x, y)` with `x ∈ w` and `y ∈ s`.
fn least_edge(pres: &EpgPresentation, w: &Epvs, s: &Epvs) -> Option<(VertexId, VertexId)> {
    let xs = w.finite_vertices()?;
    xs.into_iter().find_map(|x| {
        let nb = pres.neighbors(x).ok()?;
        nb.intersect(s).min_vertex().map(|y| (x, y))
    })
}

pub fn build_spanning_tree(pres: &EpgPresentation, depth: usize, horizon: usize) -> Result<SpanningTreePrefix> {
    let ex = exhaustion(pres, depth)?;
    let layers: Vec<Epvs> = (0..=depth).map(|m| ex.set(m).clone()).collect();
    let required = layers[depth].max_threshold();
    if horizon < required {
        return Err(Error::HorizonTooSmall {
            given: horizon,
            required,
        });
    }
    let root = ex.set(0).min_vertex().expect("H0 is a singleton");
    let mut tree = TreePrefix {
        root: Some(root),
        parent: BTreeMap::from([(root, None)]),
    };
    let mut attachments = Vec::new();
    // attachment index per (layer, single-component index), for the ray certificates
    let mut single_attachment: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for m in 0..depth {
        let Some(layer) = ex.layers.get(m) else {
            break;
        };
        let next = ex.set(m + 1);
        for (ci, rec) in layer.components.iter().enumerate() {
            for member in rec.members_up_to(horizon) {
                let s = member.component.intersect(next);
                let (x, y) = least_edge(pres, &member.adhesion, &s)
                    .ok_or_else(|| Error::Postcondition(format!("no edge into {}", member.component)))?;
                if rec.shift.is_none() {
                    single_attachment.insert((m, ci), attachments.len());
                }
                attachments.push(Attachment {
                    layer: m,
                    component: member.component.clone(),
                    edge: (x, y),
                });
                let reach = 2 * horizon + 4 + s.max_threshold() + 2 * s.period();
                let g = FiniteGraph::unfolding(pres, reach, Some(&s));
                let bfs = g.bfs_tree(y);
                tree.parent.insert(y, Some(x));
                for v in s.vertices_up_to(horizon) {
                    let mut cur = v;
                    while !tree.parent.contains_key(&cur) {
                        let p = bfs.get(&cur).copied().flatten().ok_or(Error::HorizonTooSmall {
                            given: horizon,
                            required: reach + 1,
                        })?;
                        tree.parent.insert(cur, Some(p));
                        cur = p;
                    }
                }
            }
        }
    }
    let mut ray_certificates = Vec::new();
    for end in ex.ends.iter().filter(|e| e.is_topological()) {
        let mut chain = Vec::new();
        let mut edges = Vec::new();
        for m in 0..depth {
            let Some(layer) = ex.layers.get(m) else {
                break;
            };
            let Some(&(_, ci)) = layer.end_homes.iter().find(|(e, _)| *e == end.id) else {
                break;
            };
            let a = &attachments[single_attachment[&(m, ci)]];
            chain.push(a.component.clone());
            edges.push(a.edge);
        }
        let path = match edges.last() {
            Some(&(_, y)) => {
                let mut p = tree.root_path(y).ok_or_else(|| Error::Postcondition("tree has a cycle".into()))?;
                p.reverse();
                p
            }
            None => vec![root],
        };
        ray_certificates.push(RayCertificate {
            end: end.id,
            chain,
            edges,
            path,
        });
    }
    Ok(SpanningTreePrefix {
        name: pres.name.clone(),
        depth,
        horizon,
        layers,
        tree,
        attachments,
        ray_certificates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn ray_tree_is_the_ray() {
        let p = zoo::ray();
        let st = build_spanning_tree(&p, 6, 20).unwrap();
        assert_eq!(st.ray_certificates.len(), 1);
        let r = &st.ray_certificates[0];
        assert_eq!(r.path[0], VertexId::Core(0));
        assert_eq!(r.path.len(), 7);
        assert_eq!(st.tree.edges().len(), st.tree.parent.len() - 1);
        for (a, b) in st.tree.edges() {
            assert!(p.has_edge(a, b));
        }
    }

    #[test]
    fn fan_tree_has_no_certificates() {
        let p = zoo::fan();
        let st = build_spanning_tree(&p, 3, 20).unwrap();
        assert!(st.ray_certificates.is_empty());
        assert_eq!(st.attachments.len(), 1);
        assert_eq!(st.attachments[0].edge, (VertexId::Core(0), VertexId::tail(0, 0, 0)));
        assert_eq!(st.tree.parent.len(), 22);
    }

    #[test]
    fn comb_certificate_runs_along_the_spine() {
        let p = zoo::comb();
        let st = build_spanning_tree(&p, 6, 20).unwrap();
        let r = &st.ray_certificates[0];
        assert!(r.path[1..].iter().all(|v| matches!(v, VertexId::Tail { strand: 0, .. })));
    }

    #[test]
    fn small_horizon_rejected() {
        let p = zoo::ray();
        assert!(matches!(
            build_spanning_tree(&p, 8, 3),
            Err(Error::HorizonTooSmall { given: 3, .. })
        ));
    }
}
