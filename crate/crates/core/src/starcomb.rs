//! Stars and combs attached to infinite vertex sets, and cofinal trees.
//!
//! Certificates are lazy: a finite list of paths plus a translation that
//! produces the rest. `check` materializes the first `n` paths and verifies
//! the certificate from scratch.
//!
//! For an infinite `U` exactly one of three things happens, tried in this
//! order: a hub has infinitely many neighbours in `U` (a star of single
//! edges); some end's lane meets `U` infinitely often (a comb along the
//! end's representative ray); or `U` meets infinitely many of the finite
//! pieces hanging off a hub (a subdivided star).

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::ends::{ends_within, PeriodicRay};
use crate::envelope::envelope;
use crate::epvs::Epvs;
use crate::error::{Error, Result};
use crate::finite::FiniteGraph;
use crate::periodic::{Complement, Piece};
use crate::presentation::{EpgPresentation, VertexId};
use crate::upis::{lcm, Upis};

/// Paths `prefix[0], prefix[1], …`, then `base` translated by `0, shift, 2·shift, …`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathFamily {
    pub prefix: Vec<Vec<VertexId>>,
    pub base: Vec<Vec<VertexId>>,
    pub shift: usize,
}

impl PathFamily {
    pub fn path(&self, j: usize) -> Vec<VertexId> {
        if j < self.prefix.len() {
            return self.prefix[j].clone();
        }
        let m = j - self.prefix.len();
        let d = (m / self.base.len()) * self.shift;
        self.base[m % self.base.len()].iter().map(|v| v.shifted(d)).collect()
    }

    pub fn take(&self, n: usize) -> Vec<Vec<VertexId>> {
        (0..n).map(|j| self.path(j)).collect()
    }

    /// Last vertices of all paths (tail vertices only).
    fn endpoints(&self) -> Epvs {
        let mut out = Epvs::empty();
        for p in &self.prefix {
            out.insert(*p.last().expect("paths are nonempty"));
        }
        for p in &self.base {
            if let Some(&VertexId::Tail { tail, copy, strand }) = p.last() {
                out.add_strand(tail, strand, &Upis::progression(copy, self.shift));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Certificate {
    /// Paths from `center` to distinct leaves, disjoint apart from `center`.
    Star { center: VertexId, leaves: Epvs, paths: PathFamily },
    /// Disjoint paths, each meeting `spine` exactly in its first vertex.
    Comb { spine: PeriodicRay, teeth: Epvs, paths: PathFamily },
}

impl Certificate {
    pub fn paths(&self) -> &PathFamily {
        match self {
            Certificate::Star { paths, .. } | Certificate::Comb { paths, .. } => paths,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Star { .. } => "star",
            Certificate::Comb { .. } => "comb",
        }
    }
}

fn tail_copies(path: &[VertexId]) -> impl Iterator<Item = usize> + '_ {
    path.iter().filter_map(VertexId::copy)
}

/// Translates `path` by multiples of `q` far enough apart to keep translates disjoint.
fn translated_family(path: Vec<VertexId>, q: usize) -> PathFamily {
    let lo = tail_copies(&path).min().unwrap_or(0);
    let hi = tail_copies(&path).max().unwrap_or(0);
    let shift = q * ((hi - lo) / q + 1);
    PathFamily {
        prefix: Vec::new(),
        base: vec![path],
        shift,
    }
}

/// Where a certificate has to live and what it has to reach.
struct Search<'a> {
    pres: &'a EpgPresentation,
    ambient: &'a Epvs,
    target: &'a Epvs,
    /// External variant: every path is extended by one edge into this set.
    attach: Option<&'a Epvs>,
    /// Common period of the sets involved.
    q: usize,
    /// Copy index beyond which all sets involved are periodic.
    threshold: usize,
}

impl<'a> Search<'a> {
    fn new(pres: &'a EpgPresentation, ambient: &'a Epvs, target: &'a Epvs, attach: Option<&'a Epvs>) -> Self {
        let sets = [Some(ambient), Some(target), attach];
        let sets = sets.iter().flatten();
        let q = sets.clone().map(|s| s.period()).fold(1, lcm);
        let threshold = sets.map(|s| s.max_threshold()).max().unwrap_or(0);
        Search {
            pres,
            ambient,
            target,
            attach,
            q,
            threshold,
        }
    }

    /// Least tail neighbour of `u` in the attachment set, beyond the
    /// threshold so that its translates stay in the set.
    fn attachment(&self, u: VertexId) -> Option<VertexId> {
        let w = self.attach?;
        self.pres
            .local_neighbors(u)
            .into_iter()
            .find(|v| v.copy().is_some_and(|k| k >= self.threshold) && w.contains(*v))
    }

    fn usable(&self, u: VertexId) -> bool {
        self.target.contains(u) && (self.attach.is_none() || self.attachment(u).is_some())
    }

    fn extend(&self, mut path: Vec<VertexId>) -> Vec<VertexId> {
        if let Some(w) = path.last().and_then(|&u| self.attachment(u)) {
            path.push(w);
        }
        path
    }

    fn hubs(&self) -> Vec<usize> {
        self.pres
            .hubs()
            .into_iter()
            .filter(|&h| self.ambient.contains(VertexId::Core(h)))
            .collect()
    }

    /// A hub adjacent to infinitely many vertices of `leaves`: a star of single edges.
    fn direct_star(&self, leaves: &Epvs, extend: bool) -> Option<Certificate> {
        for h in self.hubs() {
            let nb = self.pres.neighbors(VertexId::Core(h)).ok()?;
            let mut hit = nb.intersect(leaves);
            for c in hit.cores().clone() {
                hit = hit.difference(&Epvs::vertex(VertexId::Core(c)));
            }
            if hit.is_finite() {
                continue;
            }
            let center = VertexId::Core(h);
            let t = hit.max_threshold().max(self.threshold);
            let p = lcm(hit.period(), self.q);
            let make = |v: VertexId| {
                let path = vec![center, v];
                if extend {
                    self.extend(path)
                } else {
                    path
                }
            };
            let keep = |v: &VertexId| !extend || self.attachment(*v).is_some();
            let below: Vec<VertexId> = if t == 0 {
                Vec::new()
            } else {
                hit.vertices_up_to(t - 1).into_iter().filter(|v| v.copy().is_some()).filter(keep).collect()
            };
            let window: Vec<VertexId> = hit
                .vertices_up_to(t + p - 1)
                .into_iter()
                .filter(|v| v.copy().is_some_and(|k| k >= t))
                .filter(keep)
                .collect();
            if window.is_empty() {
                continue;
            }
            let mut paths = PathFamily {
                prefix: below.into_iter().map(make).collect(),
                base: window.into_iter().map(make).collect(),
                shift: p,
            };
            if extend {
                // attachments of different leaves may coincide; spread the leaves out
                let one = paths.base[0].clone();
                paths = translated_family(one, p);
            }
            let leaves = paths.endpoints();
            return Some(Certificate::Star {
                center,
                leaves,
                paths,
            });
        }
        None
    }

    fn comb(&self) -> Option<Certificate> {
        let ends = ends_within(self.pres, self.ambient);
        let end = ends.iter().find(|e| !e.lane.intersect(self.target).is_finite())?;
        let ray = end.representative.clone();
        let lane_u = end.lane.intersect(self.target);
        let q = lcm(lcm(self.q, ray.shift), lcm(lane_u.period(), end.lane.period()));
        let first_rep = ray.prefix.len() + ray.segment.len();
        let ray_hi = ray.take(first_rep).iter().filter_map(VertexId::copy).max().unwrap_or(0);
        let c0 = 1 + ray_hi
            .max(self.threshold)
            .max(lane_u.max_threshold())
            .max(end.lane.max_threshold());
        let mut region = Epvs::empty();
        for i in 0..self.pres.period(end.tail) {
            region.add_strand(end.tail, i, &Upis::at_least(c0));
        }
        let region = region.intersect(self.ambient);
        let mut depth = c0 + 4 * q;
        loop {
            let g = FiniteGraph::unfolding(self.pres, depth, Some(&region));
            let mut sources = Vec::new();
            let mut n = 0;
            loop {
                let v = ray.vertex(n);
                if n >= first_rep && v.copy().is_some_and(|k| k > depth + ray_hi + ray.shift) {
                    break;
                }
                if g.index.contains_key(&v) {
                    sources.push(v);
                }
                n += 1;
            }
            let found = g.shortest_path(&sources, |v| {
                v.copy().is_some_and(|k| k >= c0 + q) && lane_u.contains(v) && self.usable(v)
            });
            if let Some(path) = found {
                let paths = translated_family(self.extend(path), q);
                return Some(Certificate::Comb {
                    spine: ray,
                    teeth: paths.endpoints(),
                    paths,
                });
            }
            depth *= 2;
            if depth > 1 << 14 {
                return None;
            }
        }
    }

    fn subdivided_star(&self) -> Option<Certificate> {
        let hubs = self.hubs();
        let hub_set = Epvs::from_vertices(hubs.iter().map(|&h| VertexId::Core(h)));
        let removed = self.ambient.complement(self.pres).union(&hub_set);
        let structure = Complement::compute(self.pres, &removed);
        for piece in structure.pieces() {
            let Piece::Family { shift, .. } = piece else {
                continue;
            };
            if piece.union_set().intersect(self.target).is_finite() {
                continue;
            }
            for j in 0..256 {
                let member = piece.member(j);
                let verts = member.finite_vertices().expect("family members are finite");
                if verts.iter().filter_map(VertexId::copy).min().unwrap_or(0) < self.threshold + 1 {
                    continue;
                }
                if !verts.iter().any(|&v| self.usable(v)) {
                    continue;
                }
                let entry = verts.iter().find_map(|&x| {
                    let VertexId::Tail { tail, copy, strand } = x else {
                        return None;
                    };
                    self.pres.tails[tail]
                        .hubs
                        .iter()
                        .filter(|r| r.strand == strand && r.copies().contains(copy) && hubs.contains(&r.hub))
                        .min()
                        .map(|r| (x, *r))
                });
                let Some((x, rule)) = entry else {
                    continue;
                };
                let depth = verts.iter().filter_map(VertexId::copy).max().unwrap_or(0);
                let g = FiniteGraph::unfolding(self.pres, depth, Some(&member));
                let path = g.shortest_path(&[x], |v| self.usable(v))?;
                let center = VertexId::Core(rule.hub);
                let mut full = vec![center];
                full.extend(path);
                let q = lcm(lcm(self.q, *shift), rule.stride);
                let paths = translated_family(self.extend(full), q);
                return Some(Certificate::Star {
                    center,
                    leaves: paths.endpoints(),
                    paths,
                });
            }
        }
        None
    }

    fn run(&self) -> Option<Certificate> {
        self.direct_star(self.target, self.attach.is_some())
            .or_else(|| self.comb())
            .or_else(|| self.subdivided_star())
    }
}

/// A star or a comb attached to the infinite set `u`.
pub fn star_or_comb(pres: &EpgPresentation, u: &Epvs) -> Result<Certificate> {
    pres.check_set(u)?;
    if u.is_finite() {
        return Err(Error::FiniteSet);
    }
    pres.ensure_connected()?;
    let all = pres.all_vertices();
    Search::new(pres, &all, u, None)
        .run()
        .ok_or_else(|| Error::Postcondition(format!("no star or comb found for {u}")))
}

/// Whether `c` is a component of `G − w`.
pub fn is_component(pres: &EpgPresentation, w: &Epvs, c: &Epvs) -> bool {
    let Some(v) = c.min_vertex() else {
        return false;
    };
    Complement::compute(pres, w).component_of(v).as_ref() == Some(c)
}

/// A star or comb whose interior lies in the component `c` of `G − w` and
/// whose attachment vertices (the last vertex of every path) lie in `N(c) ⊆ w`.
pub fn external_star_or_comb(pres: &EpgPresentation, w: &Epvs, c: &Epvs) -> Result<Certificate> {
    pres.check_set(w)?;
    pres.check_set(c)?;
    if !is_component(pres, w, c) {
        return Err(Error::NotAComponent(c.to_string()));
    }
    let nc = pres.neighborhood(c);
    if nc.is_finite() {
        return Err(Error::FiniteAttachment);
    }
    let direct = Search::new(pres, c, &nc, None);
    if let Some(cert) = direct.direct_star(&nc, false) {
        return Ok(cert);
    }
    let mut far_side = nc.clone();
    for core in nc.cores().clone() {
        far_side = far_side.difference(&Epvs::vertex(VertexId::Core(core)));
    }
    let u_c = pres.adjacent_to(&far_side).intersect(c);
    Search::new(pres, c, &u_c, Some(&nc))
        .run()
        .ok_or_else(|| Error::Postcondition(format!("no external star or comb in {c}")))
}

fn check_path(pres: &EpgPresentation, path: &[VertexId]) -> std::result::Result<(), String> {
    if path.is_empty() {
        return Err("empty path".into());
    }
    let distinct: BTreeSet<_> = path.iter().collect();
    if distinct.len() != path.len() {
        return Err(format!("path {path:?} repeats a vertex"));
    }
    for w in path.windows(2) {
        if !pres.has_edge(w[0], w[1]) {
            return Err(format!("{} and {} are not adjacent", w[0], w[1]));
        }
    }
    Ok(())
}

fn check_impl(
    pres: &EpgPresentation,
    cert: &Certificate,
    target: &Epvs,
    interior: Option<&Epvs>,
    n: usize,
) -> std::result::Result<(), String> {
    let paths = cert.paths().take(n);
    let mut seen: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut leaves = BTreeSet::new();
    for (j, path) in paths.iter().enumerate() {
        check_path(pres, path)?;
        let last = *path.last().unwrap();
        if !target.contains(last) {
            return Err(format!("path {j} ends at {last}, outside the attachment set"));
        }
        if !leaves.insert(last) {
            return Err(format!("path {j} ends at {last} again"));
        }
        if let Some(inside) = interior {
            if let Some(v) = path[..path.len() - 1].iter().find(|v| !inside.contains(**v)) {
                return Err(format!("path {j} leaves the interior at {v}"));
            }
            if inside.contains(last) {
                return Err(format!("path {j} ends inside the interior at {last}"));
            }
        }
        let skip = usize::from(matches!(cert, Certificate::Star { .. }));
        for &v in &path[skip..] {
            if let Some(k) = seen.insert(v, j) {
                return Err(format!("paths {k} and {j} share {v}"));
            }
        }
    }
    match cert {
        Certificate::Star { center, leaves: set, .. } => {
            if let Some((j, _)) = paths.iter().enumerate().find(|(_, p)| p[0] != *center || p.len() < 2) {
                return Err(format!("path {j} does not start at the centre {center}"));
            }
            if let Some(v) = leaves.iter().find(|v| !set.contains(**v)) {
                return Err(format!("leaf {v} missing from the leaf set"));
            }
            if !set.is_subset(target) {
                return Err("leaf set not contained in the attachment set".into());
            }
        }
        Certificate::Comb { spine, teeth, .. } => {
            let hi = paths.iter().flat_map(|p| tail_copies(p)).max().unwrap_or(0);
            let mut len = spine.prefix.len() + spine.segment.len();
            while spine.vertex(len).copy().is_none_or(|k| k <= hi + spine.shift) {
                len += spine.segment.len();
            }
            let body = spine.take(len + spine.segment.len());
            check_path(pres, &body).map_err(|e| format!("spine: {e}"))?;
            if let Some(inside) = interior {
                if let Some(v) = body.iter().find(|v| !inside.contains(**v)) {
                    return Err(format!("spine leaves the interior at {v}"));
                }
            }
            let on_spine: BTreeSet<VertexId> = body.iter().copied().collect();
            for (j, path) in paths.iter().enumerate() {
                if !on_spine.contains(&path[0]) {
                    return Err(format!("path {j} does not start on the spine"));
                }
                if let Some(v) = path[1..].iter().find(|v| on_spine.contains(v)) {
                    return Err(format!("path {j} meets the spine again at {v}"));
                }
            }
            if let Some(v) = leaves.iter().find(|v| !teeth.contains(**v)) {
                return Err(format!("tooth {v} missing from the teeth set"));
            }
            if !teeth.is_subset(target) {
                return Err("teeth not contained in the attachment set".into());
            }
        }
    }
    Ok(())
}

/// Verifies the first `n` paths of a certificate attached to `u`.
pub fn check(pres: &EpgPresentation, cert: &Certificate, u: &Epvs, n: usize) -> std::result::Result<(), String> {
    check_impl(pres, cert, u, None, n)
}

/// Verifies an external certificate: interiors inside `c`, attachments in `w`.
pub fn check_external(
    pres: &EpgPresentation,
    cert: &Certificate,
    w: &Epvs,
    c: &Epvs,
    n: usize,
) -> std::result::Result<(), String> {
    check_impl(pres, cert, w, Some(c), n)
}

/// A rooted tree containing `target` cofinally: the union of the root paths
/// to `target` in the breadth-first tree of `G[hull]`, where `hull` is a
/// connected envelope of `target`. Its vertex set lies between `target` and
/// `hull`, so its closure equals the closure of `target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CofinalTree {
    pub root: VertexId,
    pub target: Epvs,
    pub hull: Epvs,
}

/// A finite rooted tree given by parent links.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreePrefix {
    pub root: Option<VertexId>,
    pub parent: BTreeMap<VertexId, Option<VertexId>>,
}

impl TreePrefix {
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.parent.keys().copied()
    }

    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        self.parent
            .iter()
            .filter_map(|(&v, &p)| p.map(|p| (p, v)))
            .collect()
    }

    /// Path from `v` up to the root, or `None` on a cycle or a dangling link.
    pub fn root_path(&self, v: VertexId) -> Option<Vec<VertexId>> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(&p) = self.parent.get(&cur) {
            match p {
                None => return Some(path),
                Some(p) => {
                    if path.len() > self.parent.len() {
                        return None;
                    }
                    path.push(p);
                    cur = p;
                }
            }
        }
        None
    }

    pub fn children(&self) -> BTreeMap<VertexId, Vec<VertexId>> {
        let mut out: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for (p, v) in self.edges() {
            out.entry(p).or_default().push(v);
        }
        out
    }
}

impl CofinalTree {
    /// The part of the tree needed to reach the target vertices up to copy `depth`.
    pub fn materialize(&self, pres: &EpgPresentation, depth: usize) -> TreePrefix {
        let horizon = 2 * depth + 4 + self.hull.max_threshold() + 2 * self.hull.period();
        let g = FiniteGraph::unfolding(pres, horizon, Some(&self.hull));
        let bfs = g.bfs_tree(self.root);
        let mut tree = TreePrefix {
            root: Some(self.root),
            parent: BTreeMap::new(),
        };
        tree.parent.insert(self.root, None);
        for u in self.target.vertices_up_to(depth) {
            let mut cur = u;
            while !tree.parent.contains_key(&cur) {
                let Some(&p) = bfs.get(&cur) else {
                    break;
                };
                tree.parent.insert(cur, p);
                match p {
                    Some(p) => cur = p,
                    None => break,
                }
            }
        }
        tree
    }
}

pub fn cofinal_tree(pres: &EpgPresentation, u: &Epvs) -> Result<CofinalTree> {
    if u.is_empty() {
        return Err(Error::EmptySet);
    }
    let hull = envelope(pres, u)?;
    let root = u.min_vertex().expect("nonempty");
    Ok(CofinalTree {
        root,
        target: u.clone(),
        hull,
    })
}

/// Checks that `tree` is a tree in `G`, reaches every target vertex up to
/// copy `depth`, and has all its leaves in the target.
pub fn check_tree(pres: &EpgPresentation, tree: &TreePrefix, target: &Epvs, depth: usize) -> std::result::Result<(), String> {
    let root = tree.root.ok_or("tree has no root")?;
    if tree.parent.get(&root) != Some(&None) {
        return Err(format!("root {root} has a parent"));
    }
    for (p, v) in tree.edges() {
        if !pres.has_edge(p, v) {
            return Err(format!("tree edge {p}–{v} is not an edge of the graph"));
        }
    }
    for v in tree.vertices() {
        if tree.root_path(v).is_none() {
            return Err(format!("{v} does not reach the root"));
        }
    }
    for u in target.vertices_up_to(depth) {
        if !tree.parent.contains_key(&u) {
            return Err(format!("target vertex {u} missing"));
        }
    }
    let children = tree.children();
    for v in tree.vertices() {
        if v != root && !children.contains_key(&v) && !target.contains(v) {
            return Err(format!("leaf {v} is not a target vertex"));
        }
    }
    Ok(())
}
