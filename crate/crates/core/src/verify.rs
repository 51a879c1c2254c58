//! Checkers for the builders' outputs.
//!
//! Every checker reads only the presentation and the certificate, and
//! recomputes what it needs (ends, components, neighbourhoods) on its own.
//! Failures carry a witness: the vertex, edge, nodes or end at fault.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::ends::{component_of_within, enumerate_ends, End};
use crate::envelope::{components_of_complement, is_connected};
use crate::epvs::Epvs;
use crate::error::{Error, Result};
use crate::finite::FiniteGraph;
use crate::presentation::{EpgPresentation, VertexId};
use crate::spanning_tree::SpanningTreePrefix;
use crate::starcomb::is_component;
use crate::treedecomp::TreeDecompositionPrefix;
use crate::upis::Upis;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Vertex { vertex: VertexId },
    Edge { a: VertexId, b: VertexId },
    /// Nodes `t1, t3` contain `vertex` but `t2` on the path between them does not.
    Triple { t1: usize, t2: usize, t3: usize, vertex: VertexId },
    Nodes { nodes: Vec<usize> },
    End { end: usize },
    Message { text: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Records a check; `witness` is `None` exactly when it passed.
    fn record(&mut self, name: &str, witness: Option<Witness>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed: witness.is_none(),
            witness,
        });
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            let verdict = if c.passed { "pass" } else { "FAIL" };
            write!(f, "{verdict} {}", c.name)?;
            if let Some(w) = &c.witness {
                write!(f, "  {}", serde_json::to_string(w).unwrap_or_default())?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn msg(text: impl Into<String>) -> Witness {
    Witness::Message { text: text.into() }
}

fn nodes(ids: &[usize]) -> Witness {
    Witness::Nodes { nodes: ids.to_vec() }
}

// ---------------------------------------------------------------- decompositions

/// Parent links must form a tree rooted at node 0 with ids equal to positions.
fn tree_structure(td: &TreeDecompositionPrefix) -> Option<Witness> {
    if td.nodes.is_empty() {
        return Some(msg("no nodes"));
    }
    for (i, n) in td.nodes.iter().enumerate() {
        if n.id != i {
            return Some(nodes(&[i]));
        }
        match n.parent {
            None if i != 0 => return Some(nodes(&[i])),
            Some(_) if i == 0 => return Some(nodes(&[0])),
            Some(p) if p >= td.nodes.len() => return Some(nodes(&[i, p])),
            _ => {}
        }
    }
    for i in 0..td.nodes.len() {
        let up = td.ancestors(i);
        if *up.last().unwrap() != 0 || up.len() > td.nodes.len() {
            return Some(nodes(&up));
        }
    }
    None
}

/// Nodes on the tree path from `a` to `b`.
fn tree_path(td: &TreeDecompositionPrefix, a: usize, b: usize) -> Vec<usize> {
    let up_a = td.ancestors(a);
    let up_b = td.ancestors(b);
    let on_b: BTreeSet<usize> = up_b.iter().copied().collect();
    let meet = up_a.iter().copied().find(|x| on_b.contains(x)).unwrap_or(0);
    let mut path: Vec<usize> = up_a.into_iter().take_while(|&x| x != meet).collect();
    path.push(meet);
    let tail: Vec<usize> = up_b.into_iter().take_while(|&x| x != meet).collect();
    path.extend(tail.into_iter().rev());
    path
}

/// Copy index up to which the parts of `td` are pinned down. Parts that are
/// translates of another part on the same layer (members of a family) add nothing.
fn td_reach(td: &TreeDecompositionPrefix) -> usize {
    let least_copy = |p: &Epvs| p.strands().values().filter_map(|u| u.least()).min();
    let is_member = |n: &crate::treedecomp::TdNode| {
        td.nodes.iter().any(|q| {
            q.layer == n.layer
                && match (least_copy(&n.part), least_copy(&q.part)) {
                    (Some(a), Some(b)) if a > b => q.part.translate(a - b) == n.part,
                    _ => false,
                }
        })
    };
    td.nodes
        .iter()
        .filter(|n| !is_member(n))
        .map(|n| n.part.max_threshold())
        .max()
        .unwrap_or(0)
}

/// The tree-decomposition axioms on `unfold(r)`, plus finite and consistent
/// separators and connected parts.
pub fn check_td_axioms(pres: &EpgPresentation, td: &TreeDecompositionPrefix, r: usize) -> Result<Report> {
    let required = td_reach(td);
    if r < required {
        return Err(Error::HorizonTooSmall { given: r, required });
    }
    if r > td.horizon {
        return Err(Error::Malformed(format!(
            "decomposition lists family members only up to copy {}, asked for {r}",
            td.horizon
        )));
    }
    let mut rep = Report::default();
    let structure = tree_structure(td);
    let broken = structure.is_some();
    rep.record("tree", structure);
    if broken {
        return Ok(rep);
    }

    let g = FiniteGraph::unfolding(pres, r, None);
    let in_frontier = |v: VertexId| td.frontier.iter().any(|c| c.contains(v));
    let holders = |v: VertexId| -> Vec<usize> { td.nodes.iter().filter(|n| n.part.contains(v)).map(|n| n.id).collect() };

    let t1 = g
        .vertices
        .iter()
        .copied()
        .find(|&v| !in_frontier(v) && holders(v).is_empty())
        .map(|vertex| Witness::Vertex { vertex });
    rep.record("t1_vertices_covered", t1);

    let t2 = g
        .edges()
        .into_iter()
        .find(|&(a, b)| {
            !in_frontier(a) && !in_frontier(b) && !td.nodes.iter().any(|n| n.part.contains(a) && n.part.contains(b))
        })
        .map(|(a, b)| Witness::Edge { a, b });
    rep.record("t2_edges_covered", t2);

    let mut t3 = None;
    for &v in &g.vertices {
        let hold = holders(v);
        let set: BTreeSet<usize> = hold.iter().copied().collect();
        let tops: Vec<usize> = hold
            .iter()
            .copied()
            .filter(|&t| td.nodes[t].parent.is_none_or(|p| !set.contains(&p)))
            .collect();
        if tops.len() > 1 {
            let path = tree_path(td, tops[0], tops[1]);
            let t2 = path.iter().copied().find(|x| !set.contains(x)).unwrap_or(tops[0]);
            t3 = Some(Witness::Triple {
                t1: tops[0],
                t2,
                t3: tops[1],
                vertex: v,
            });
            break;
        }
    }
    rep.record("t3_subtrees_connected", t3);

    let mut finite = None;
    let mut consistent = None;
    for n in &td.nodes[1..] {
        let parent = &td.nodes[n.parent.unwrap()];
        let expected = n.part.intersect(&parent.part);
        if !expected.is_finite() && finite.is_none() {
            finite = Some(nodes(&[n.id, parent.id]));
        }
        if n.separator.as_ref() != Some(&expected) && consistent.is_none() {
            consistent = Some(nodes(&[n.id, parent.id]));
        }
    }
    rep.record("separators_finite", finite);
    rep.record("separators_match_parts", consistent);

    let symbolic = td
        .nodes
        .iter()
        .find(|n| !is_connected(pres, &n.part))
        .map(|n| nodes(&[n.id]));
    rep.record("parts_connected", symbolic);

    let mut unfolded = None;
    for n in &td.nodes {
        if let Some(v) = disconnected_in_unfolding(pres, &n.part, r) {
            unfolded = Some(Witness::Vertex { vertex: v });
            break;
        }
    }
    rep.record("parts_connected_in_unfolding", unfolded);
    Ok(rep)
}

/// A vertex of `set` up to copy `r` not joined to the least vertex of `set`
/// inside a generous truncation of `G[set]`.
fn disconnected_in_unfolding(pres: &EpgPresentation, set: &Epvs, r: usize) -> Option<VertexId> {
    let root = set.min_vertex()?;
    let reach = 2 * r + 4 + set.max_threshold() + 2 * set.period();
    let g = FiniteGraph::unfolding(pres, reach, Some(set));
    let reached = g.bfs_tree(root);
    set.vertices_up_to(r).into_iter().find(|v| !reached.contains_key(v))
}

/// Separators of comparable tree edges are disjoint.
pub fn check_upwards_disjoint(td: &TreeDecompositionPrefix) -> Report {
    let mut rep = Report::default();
    let mut witness = None;
    'outer: for n in td.nodes.iter().skip(1) {
        let Some(sep) = &n.separator else { continue };
        for a in td.ancestors(n.id).into_iter().skip(1) {
            let Some(above) = td.nodes.get(a).and_then(|m| m.separator.as_ref()) else {
                continue;
            };
            if let Some(v) = sep.intersect(above).min_vertex() {
                witness = Some(Witness::Triple {
                    t1: n.id,
                    t2: a,
                    t3: a,
                    vertex: v,
                });
                break 'outer;
            }
        }
    }
    rep.record("upwards_disjoint", witness);
    rep
}

/// The display table pairs the topological ends bijectively with branches of
/// the tree, and every dominated end orients the tree towards its node.
pub fn check_display(pres: &EpgPresentation, td: &TreeDecompositionPrefix) -> Report {
    let mut rep = Report::default();
    let ends = match enumerate_ends(pres) {
        Ok(e) => e,
        Err(e) => {
            rep.record("ends", Some(msg(e.to_string())));
            return rep;
        }
    };
    if let Some(w) = tree_structure(td) {
        rep.record("tree", Some(w));
        return rep;
    }
    let by_id: BTreeMap<usize, &End> = ends.iter().map(|e| (e.id, e)).collect();

    let listed: Vec<usize> = td.display_table.iter().map(|d| d.end).collect();
    let bad = listed
        .iter()
        .find(|id| by_id.get(id).is_none_or(|e| !e.is_topological()))
        .map(|&end| Witness::End { end });
    rep.record("entries_are_topological_ends", bad);

    let mut seen = BTreeSet::new();
    let dup = listed.iter().find(|id| !seen.insert(**id)).map(|&end| Witness::End { end });
    rep.record("injective", dup);

    let missing = ends
        .iter()
        .find(|e| e.is_topological() && !listed.contains(&e.id))
        .map(|e| Witness::End { end: e.id });
    rep.record("surjective", missing);

    let mut labels = None;
    let mut branch = None;
    let mut lives = None;
    for d in &td.display_table {
        let Some(e) = by_id.get(&d.end) else { continue };
        if (d.tail, &d.strands) != (e.tail, &e.strands) && labels.is_none() {
            labels = Some(Witness::End { end: d.end });
        }
        if branch.is_none() {
            branch = bad_branch(td, &d.chain).map(|ids| nodes(&ids));
        }
        if lives.is_none() {
            lives = d
                .chain
                .iter()
                .copied()
                .find(|&t| {
                    td.nodes
                        .get(t)
                        .and_then(|n| n.component.as_ref())
                        .is_none_or(|c| c.intersect(&e.lane).is_finite())
                })
                .map(|t| nodes(&[t]));
        }
    }
    rep.record("entry_labels", labels);
    rep.record("chains_are_branches", branch);
    rep.record("ends_live_in_chains", lives);

    let mut distinct = None;
    for (i, a) in td.display_table.iter().enumerate() {
        for b in &td.display_table[i + 1..] {
            if a.chain == b.chain && distinct.is_none() {
                distinct = Some(Witness::End { end: b.end });
            }
        }
    }
    rep.record("chains_distinct", distinct);

    let dominated: Vec<&End> = ends.iter().filter(|e| !e.is_topological()).collect();
    let listed: Vec<usize> = td.dominated.iter().map(|o| o.end).collect();
    let mismatch = dominated
        .iter()
        .find(|e| listed.iter().filter(|&&id| id == e.id).count() != 1)
        .map(|e| e.id)
        .or_else(|| listed.iter().copied().find(|id| !dominated.iter().any(|e| e.id == *id)))
        .map(|end| Witness::End { end });
    rep.record("dominated_ends_listed", mismatch);

    let mut orient = None;
    for o in &td.dominated {
        let Some(e) = by_id.get(&o.end) else { continue };
        let expected = orientation_node(td, e);
        if o.node != Some(expected) || td.nodes[expected].part.intersect(&e.lane).is_finite() {
            orient = Some(Witness::End { end: o.end });
            break;
        }
    }
    rep.record("dominated_ends_orient_to_nodes", orient);
    rep
}

/// `None` when `chain` runs from a child of the root down parent links one layer at a time.
fn bad_branch(td: &TreeDecompositionPrefix, chain: &[usize]) -> Option<Vec<usize>> {
    let mut above = 0;
    for (m, &t) in chain.iter().enumerate() {
        let Some(n) = td.nodes.get(t) else {
            return Some(vec![t]);
        };
        if n.parent != Some(above) || n.layer != Some(m) || n.component.is_none() {
            return Some(vec![above, t]);
        }
        above = t;
    }
    None
}

/// Walks down from the root, always into the child whose component has the end in its closure.
fn orientation_node(td: &TreeDecompositionPrefix, e: &End) -> usize {
    let mut at = 0;
    loop {
        let next = td.children(at).find(|c| {
            c.component
                .as_ref()
                .is_some_and(|comp| !comp.intersect(&e.lane).is_finite())
        });
        match next {
            Some(c) => at = c.id,
            None => return at,
        }
    }
}

// ---------------------------------------------------------------- nested chains

/// Disjoint finite `X_m` with components `C_m` of `G − X_m` such that
/// `C_m ⊇ C_{m+1} ∪ X_{m+1}` determine a unique end, and it is undominated.
pub fn check_nested_chain(pres: &EpgPresentation, chain: &[(Epvs, Epvs)]) -> Result<Report> {
    for (m, (x, c)) in chain.iter().enumerate() {
        pres.check_set(x)?;
        pres.check_set(c)?;
        if !x.is_finite() {
            return Err(Error::Malformed(format!("X_{m} is infinite")));
        }
        if !is_component(pres, x, c) {
            return Err(Error::Malformed(format!("C_{m} is not a component of G − X_{m}")));
        }
    }
    let mut rep = Report::default();
    let mut disjoint = None;
    for (i, (a, _)) in chain.iter().enumerate() {
        for (j, (b, _)) in chain.iter().enumerate().skip(i + 1) {
            if let Some(v) = a.intersect(b).min_vertex() {
                disjoint.get_or_insert(Witness::Triple {
                    t1: i,
                    t2: j,
                    t3: j,
                    vertex: v,
                });
            }
        }
    }
    rep.record("disjoint", disjoint);

    let nested = chain.windows(2).enumerate().find_map(|(m, w)| {
        let (_, c) = &w[0];
        let (x1, c1) = &w[1];
        x1.union(c1).difference(c).min_vertex().map(|v| (m, v))
    });
    rep.record(
        "nested",
        nested.map(|(m, v)| Witness::Triple {
            t1: m,
            t2: m + 1,
            t3: m + 1,
            vertex: v,
        }),
    );
    if chain.is_empty() {
        return Ok(rep);
    }

    let ends = enumerate_ends(pres)?;
    let living: Vec<&End> = ends
        .iter()
        .filter(|e| chain.iter().all(|(_, c)| !c.intersect(&e.lane).is_finite()))
        .collect();
    let unique = match living.as_slice() {
        [_] => None,
        [] => Some(msg("no end lives in every C_m")),
        many => Some(nodes(&many.iter().map(|e| e.id).collect::<Vec<_>>())),
    };
    rep.record("unique_end", unique);
    let dominated = living
        .iter()
        .find(|e| !e.dominators.is_empty())
        .map(|e| Witness::Vertex {
            vertex: VertexId::Core(e.dominators[0]),
        });
    rep.record("undominated", dominated);
    Ok(rep)
}

/// A chain for `end` cut out by copy layers: `C_m` is the component of the end
/// beyond copy `k_m` and `X_m = N(C_m)`. Vertices already used by an earlier
/// `X` are left out of later ones, so a dominating hub only appears in `X_0`.
pub fn canonical_chain(pres: &EpgPresentation, end: &End, len: usize) -> Result<Vec<(Epvs, Epvs)>> {
    let all = pres.all_vertices();
    let k0 = end.lane.max_threshold() + end.lane.period() + 2;
    let gap = 2 * end.lane.period().max(1) + 1;
    let mut used = Epvs::empty();
    let mut out = Vec::with_capacity(len);
    for m in 0..len {
        let k = k0 + m * gap;
        let mut below = Epvs::empty();
        for c in 0..pres.core_count {
            below.insert_core(c);
        }
        for (t, spec) in pres.tails.iter().enumerate() {
            for s in 0..spec.period {
                below.add_strand(t, s, &Upis::below(k));
            }
        }
        let beyond = component_of_within(pres, &all, &below, end)?;
        let x = pres.neighborhood(&beyond).difference(&used);
        let c = component_of_within(pres, &all, &x, end)?;
        used = used.union(&x);
        out.push((x, c));
    }
    Ok(out)
}

// ---------------------------------------------------------------- spanning trees

/// The spanning tree is a tree of `G` spanning the last layer up to the
/// horizon, hangs every component of every `G − Hₘ` by a single edge, and has
/// exactly one rooted ray into each topological end.
pub fn check_end_faithful(pres: &EpgPresentation, st: &SpanningTreePrefix) -> Report {
    let mut rep = Report::default();
    let tree = &st.tree;

    let root = tree.root.filter(|r| tree.parent.get(r) == Some(&None));
    rep.record("rooted", if root.is_some() { None } else { Some(msg("no root")) });
    let acyclic = tree
        .vertices()
        .find(|&v| tree.root_path(v).is_none_or(|p| Some(*p.last().unwrap()) != root))
        .map(|vertex| Witness::Vertex { vertex });
    let broken = acyclic.is_some() || root.is_none();
    rep.record("acyclic_and_connected", acyclic);
    let bad_edge = tree
        .edges()
        .into_iter()
        .find(|&(a, b)| !pres.has_edge(a, b))
        .map(|(a, b)| Witness::Edge { a, b });
    rep.record("edges_in_graph", bad_edge);
    if broken {
        return rep;
    }
    let root = root.unwrap();
    let in_tree = |v: VertexId| tree.parent.contains_key(&v);
    let tree_edge = |a: VertexId, b: VertexId| tree.parent.get(&b) == Some(&Some(a)) || tree.parent.get(&a) == Some(&Some(b));

    let layers = &st.layers;
    let mut grows = None;
    if layers.first().map(|h| h.len()) != Some(Some(1)) || layers.first().and_then(|h| h.min_vertex()) != Some(root) {
        grows = Some(Witness::Vertex { vertex: root });
    }
    for m in 1..layers.len() {
        if grows.is_none() && !layers[m - 1].is_subset(&layers[m]) {
            grows = Some(msg(format!("H_{} ⊄ H_{m}", m - 1)));
        }
    }
    rep.record("layers_nested", grows);
    let span = layers
        .last()
        .map(|h| h.vertices_up_to(st.horizon))
        .unwrap_or_default()
        .into_iter()
        .find(|&v| !in_tree(v))
        .map(|vertex| Witness::Vertex { vertex });
    rep.record("spans_last_layer", span);

    // every component of G − Hₘ (up to the horizon) is entered by exactly one tree edge, its e_C
    let mut single_entry = None;
    let mut listed = None;
    let mut components: Vec<Vec<Epvs>> = Vec::new();
    for m in 0..layers.len().saturating_sub(1) {
        let comps: Vec<Epvs> = components_of_complement(pres, &layers[m])
            .iter()
            .flat_map(|p| p.members_up_to(st.horizon))
            .collect();
        for c in &comps {
            let att = st.attachments.iter().find(|a| a.layer == m && &a.component == c);
            let Some(att) = att else {
                listed.get_or_insert(msg(format!("no attachment for {c} at layer {m}")));
                continue;
            };
            let (x, y) = att.edge;
            if !(layers[m].contains(x) && c.contains(y) && tree_edge(x, y)) {
                listed.get_or_insert(Witness::Edge { a: x, b: y });
            }
            let entering: Vec<(VertexId, VertexId)> = tree
                .edges()
                .into_iter()
                .filter(|&(p, v)| c.contains(p) != c.contains(v))
                .collect();
            if entering.len() != 1 || !tree_edge(x, y) {
                let (a, b) = entering.iter().copied().find(|&e| e != (x, y)).unwrap_or((x, y));
                single_entry.get_or_insert(Witness::Edge { a, b });
            }
        }
        components.push(comps);
    }
    let extra = st
        .attachments
        .iter()
        .find(|a| !components.get(a.layer).is_some_and(|cs| cs.contains(&a.component)))
        .map(|a| Witness::Edge {
            a: a.edge.0,
            b: a.edge.1,
        });
    rep.record("attachments_listed", listed.or(extra));
    rep.record("single_entry_edge", single_entry);

    let ends = match enumerate_ends(pres) {
        Ok(e) => e,
        Err(e) => {
            rep.record("ends", Some(msg(e.to_string())));
            return rep;
        }
    };
    let tops: Vec<&End> = ends.iter().filter(|e| e.is_topological()).collect();
    let mut seen = BTreeSet::new();
    let cert_ends = st
        .ray_certificates
        .iter()
        .find(|r| !seen.insert(r.end) || !tops.iter().any(|e| e.id == r.end))
        .map(|r| r.end)
        .or_else(|| tops.iter().find(|e| !seen.contains(&e.id)).map(|e| e.id))
        .map(|end| Witness::End { end });
    rep.record("one_certificate_per_topological_end", cert_ends);

    let all = pres.all_vertices();
    let mut exists = None;
    let mut unique = None;
    for cert in &st.ray_certificates {
        let Some(e) = tops.iter().find(|e| e.id == cert.end) else { continue };
        let fail = Some(Witness::End { end: e.id });
        // the chain must be the components the end lives in
        let mut chain = Vec::new();
        for h in layers.iter().take(layers.len().saturating_sub(1)) {
            match component_of_within(pres, &all, h, e) {
                Ok(c) => chain.push(c),
                Err(_) => break,
            }
        }
        if cert.chain != chain || cert.edges.len() != chain.len() {
            exists = exists.or(fail.clone());
            continue;
        }
        // the path is a rooted tree path through every e_{Cₘ}, staying in Cₘ after it
        let p = &cert.path;
        let rooted = p.first() == Some(&root) && p.windows(2).all(|w| tree.parent.get(&w[1]) == Some(&Some(w[0])));
        let mut ok = rooted;
        let mut from = 0;
        for (c, &(x, y)) in chain.iter().zip(&cert.edges) {
            match p.windows(2).skip(from).position(|w| (w[0], w[1]) == (x, y)) {
                Some(i) => {
                    from += i + 1;
                    ok &= p[from..].iter().all(|v| c.contains(*v));
                }
                None => ok = false,
            }
        }
        if !ok {
            exists = exists.or(fail.clone());
            continue;
        }
        // any rooted path into Cₘ passes through e_{Cₘ}
        for (c, &(x, y)) in chain.iter().zip(&cert.edges) {
            let stray = tree.vertices().filter(|&v| c.contains(v)).find(|&v| {
                let path = tree.root_path(v).unwrap_or_default();
                !path.windows(2).any(|w| (w[1], w[0]) == (x, y))
            });
            if let Some(v) = stray {
                unique.get_or_insert(Witness::Vertex { vertex: v });
            }
        }
    }
    rep.record("ray_exists", exists);
    rep.record("ray_unique", unique);
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spanning_tree::build_spanning_tree;
    use crate::treedecomp::build_tree_decomposition;
    use crate::zoo;

    #[test]
    fn zoo_decompositions_pass() {
        for p in zoo::all() {
            let td = build_tree_decomposition(&p, 6, 40).unwrap();
            let rep = check_td_axioms(&p, &td, 40).unwrap();
            assert!(rep.passed(), "{}:\n{rep}", p.name);
            assert!(check_upwards_disjoint(&td).passed(), "{}", p.name);
            let rep = check_display(&p, &td);
            assert!(rep.passed(), "{}:\n{rep}", p.name);
        }
    }

    #[test]
    fn zoo_spanning_trees_pass() {
        for p in zoo::all() {
            let st = build_spanning_tree(&p, 6, 40).unwrap();
            let rep = check_end_faithful(&p, &st);
            assert!(rep.passed(), "{}:\n{rep}", p.name);
        }
    }

    #[test]
    fn horizon_bounds() {
        let p = zoo::ray();
        let td = build_tree_decomposition(&p, 8, 30).unwrap();
        assert!(matches!(check_td_axioms(&p, &td, 3), Err(Error::HorizonTooSmall { given: 3, .. })));
        assert!(matches!(check_td_axioms(&p, &td, 31), Err(Error::Malformed(_))));
    }

    #[test]
    fn deleted_part_vertex_breaks_t1() {
        let p = zoo::ray();
        let mut td = build_tree_decomposition(&p, 8, 40).unwrap();
        let v = VertexId::tail(0, 3, 0);
        for n in &mut td.nodes {
            n.part = n.part.difference(&Epvs::vertex(v));
        }
        let rep = check_td_axioms(&p, &td, 40).unwrap();
        assert_eq!(rep.get("t1_vertices_covered").unwrap().witness, Some(Witness::Vertex { vertex: v }));
    }

    #[test]
    fn ray_chain_is_undominated() {
        let p = zoo::ray();
        let e = &enumerate_ends(&p).unwrap()[0];
        let chain = canonical_chain(&p, e, 5).unwrap();
        let rep = check_nested_chain(&p, &chain).unwrap();
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn fan_chain_is_flagged() {
        let p = zoo::fan();
        let e = &enumerate_ends(&p).unwrap()[0];
        let chain = canonical_chain(&p, e, 4).unwrap();
        assert!(chain[0].0.contains(VertexId::Core(0)));
        assert!(chain[1].1.contains(VertexId::Core(0)));
        let rep = check_nested_chain(&p, &chain).unwrap();
        assert!(!rep.get("nested").unwrap().passed);
        assert!(!rep.get("undominated").unwrap().passed);
    }

    #[test]
    fn empty_chain_passes() {
        assert!(check_nested_chain(&zoo::ray(), &[]).unwrap().passed());
    }

    #[test]
    fn malformed_chain_rejected() {
        let p = zoo::ray();
        let x = Epvs::vertex(VertexId::tail(0, 2, 0));
        let not_a_component = Epvs::vertex(VertexId::tail(0, 5, 0));
        assert!(matches!(check_nested_chain(&p, &[(x, not_a_component)]), Err(Error::Malformed(_))));
        let inf = Epvs::strand_set(0, 0, Upis::all());
        assert!(matches!(
            check_nested_chain(&p, &[(inf.clone(), inf)]),
            Err(Error::Malformed(_))
        ));
    }
}
