//! Exact component structure of `G − S` for an eventually periodic set `S`.
//!
//! Beyond copy `k0` every tail of `G − S` is invariant under shifting by
//! `block` copies. One block of a tail splits into *classes* (components of
//! the block). Classes of consecutive blocks are joined by the inter edges
//! leaving the last copy of a block, which gives a finite graph on classes
//! whose edges raise the block level by one. For a connected piece `K` of
//! that class graph let `g` be the gcd of the level shifts of its cycles:
//!
//! * `g = 0`: the lift of `K` is a periodic family of finite components;
//! * `g > 0`: the lift splits into `g` infinite components.
//!
//! The block is enlarged until every `g` is 0 or 1, so each infinite class
//! component carries exactly one infinite component of the far region.
//! Everything near the start (core, the aperiodic prefix, the lowest levels)
//! is resolved explicitly with union–find; hubs that survive in `G − S`
//! merge whatever they touch.

use std::collections::{BTreeMap, BTreeSet};

use crate::epvs::Epvs;
use crate::presentation::{EpgPresentation, VertexId};
use crate::upis::{gcd, lcm, Upis};

/// A component of `G − S`, or a periodic family of pairwise isomorphic
/// finite components `first`, `first + shift`, `first + 2·shift`, ….
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Piece {
    Single(Epvs),
    Family { first: Epvs, shift: usize },
}

impl Piece {
    /// Member `j` of a family (or the single component itself).
    pub fn member(&self, j: usize) -> Epvs {
        match self {
            Piece::Single(s) => s.clone(),
            Piece::Family { first, shift } => first.translate(j * shift),
        }
    }

    /// Union of all members.
    pub fn union_set(&self) -> Epvs {
        match self {
            Piece::Single(s) => s.clone(),
            Piece::Family { first, shift } => {
                let mut out = Epvs::empty();
                for v in first.finite_vertices().expect("family members are finite") {
                    if let VertexId::Tail { tail, copy, strand } = v {
                        out.add_strand(tail, strand, &Upis::progression(copy, *shift));
                    }
                }
                out
            }
        }
    }

    pub fn is_family(&self) -> bool {
        matches!(self, Piece::Family { .. })
    }

    /// Members of this piece containing some vertex with copy index at most `depth`.
    pub fn members_up_to(&self, depth: usize) -> Vec<Epvs> {
        match self {
            Piece::Single(s) => vec![s.clone()],
            Piece::Family { first, shift } => {
                let min = first
                    .vertices_up_to(first.max_threshold())
                    .iter()
                    .filter_map(|v| v.copy())
                    .min()
                    .unwrap_or(0);
                let mut out = Vec::new();
                let mut j = 0;
                while min + j * shift <= depth {
                    out.push(self.member(j));
                    j += 1;
                }
                out
            }
        }
    }

    pub fn min_vertex(&self) -> Option<VertexId> {
        match self {
            Piece::Single(s) => s.min_vertex(),
            Piece::Family { first, .. } => first.min_vertex(),
        }
    }
}

/// Where a vertex of `G − S` lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Location {
    pub piece: usize,
    /// Member index when the piece is a family.
    pub member: Option<usize>,
}

#[derive(Clone, Debug)]
struct Class {
    cells: Vec<(usize, usize)>,
    hubs: BTreeSet<usize>,
    kcomp: usize,
    potential: i64,
}

#[derive(Clone, Debug)]
struct KComp {
    classes: Vec<usize>,
    gcd: usize,
    /// Infinite: every vertex at level ≥ reach lies in the one infinite component.
    reach: usize,
    /// Finite: members occupy levels `base ..= base + span`.
    span: usize,
    hubs: BTreeSet<usize>,
}

#[derive(Clone, Debug)]
struct TailLayout {
    strands: usize,
    class_of: Vec<Option<usize>>,
    classes: Vec<Class>,
    /// Cross-block edges `(class at level b, class at level b + 1)`.
    cross: Vec<(usize, usize)>,
    kcomps: Vec<KComp>,
}

impl TailLayout {
    fn cell(&self, j: usize, i: usize) -> Option<usize> {
        self.class_of[j * self.strands + i]
    }
}

/// An infinite class component: the far part of one end of `G − S`.
#[derive(Clone, Debug)]
pub struct Lane {
    pub tail: usize,
    pub kcomp: usize,
    /// Cells `(offset within block, strand)` of the lane.
    pub cells: Vec<(usize, usize)>,
    /// All lane vertices at levels ≥ 0.
    pub set: Epvs,
    /// Hubs of `G − S` adjacent to the lane.
    pub hubs: BTreeSet<usize>,
}

#[derive(Clone, Debug)]
pub struct Complement {
    removed: Epvs,
    k0: usize,
    block: usize,
    explicit_levels: usize,
    tails: Vec<TailLayout>,
    explicit: BTreeMap<VertexId, Location>,
    pieces: Vec<Piece>,
    inf_piece: BTreeMap<(usize, usize), usize>,
    absorbed: BTreeMap<(usize, usize), usize>,
    family: BTreeMap<(usize, usize), (usize, i64)>,
    /// Per tail: (inter, intra) edge rules.
    rules: Vec<(Vec<(usize, usize)>, Vec<(usize, usize)>)>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn push(&mut self) -> usize {
        let n = self.0.len();
        self.0.push(n);
        n
    }
    fn find(&mut self, mut a: usize) -> usize {
        while self.0[a] != a {
            self.0[a] = self.0[self.0[a]];
            a = self.0[a];
        }
        a
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi] = lo;
        }
    }
}

fn build_layout(pres: &EpgPresentation, removed: &Epvs, k0: usize, block: usize) -> Vec<TailLayout> {
    let mut out = Vec::new();
    for (t, spec) in pres.tails.iter().enumerate() {
        let p = spec.period;
        let present = |j: usize, i: usize| !removed.contains(VertexId::tail(t, k0 + j, i));
        let idx = |j: usize, i: usize| j * p + i;
        let mut uf = UnionFind::new(block * p);
        for j in 0..block {
            for &(a, b) in &spec.intra {
                if present(j, a) && present(j, b) {
                    uf.union(idx(j, a), idx(j, b));
                }
            }
            if j + 1 < block {
                for &(a, b) in &spec.inter {
                    if present(j, a) && present(j + 1, b) {
                        uf.union(idx(j, a), idx(j + 1, b));
                    }
                }
            }
        }
        let mut class_of = vec![None; block * p];
        let mut root_class: BTreeMap<usize, usize> = BTreeMap::new();
        let mut classes: Vec<Class> = Vec::new();
        for j in 0..block {
            for i in 0..p {
                if !present(j, i) {
                    continue;
                }
                let r = uf.find(idx(j, i));
                let c = *root_class.entry(r).or_insert_with(|| {
                    classes.push(Class {
                        cells: Vec::new(),
                        hubs: BTreeSet::new(),
                        kcomp: 0,
                        potential: 0,
                    });
                    classes.len() - 1
                });
                classes[c].cells.push((j, i));
                class_of[idx(j, i)] = Some(c);
            }
        }
        let mut cross = Vec::new();
        for &(a, b) in &spec.inter {
            if let (Some(x), Some(y)) = (class_of[idx(block - 1, a)], class_of[idx(0, b)]) {
                cross.push((x, y));
            }
        }
        cross.sort_unstable();
        cross.dedup();
        for h in &spec.hubs {
            if removed.contains(VertexId::Core(h.hub)) {
                continue;
            }
            for j in 0..block {
                if h.copies().contains(k0 + j) {
                    if let Some(c) = class_of[idx(j, h.strand)] {
                        classes[c].hubs.insert(h.hub);
                    }
                }
            }
        }

        // class components with level potentials
        let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); classes.len()];
        for &(x, y) in &cross {
            adj[x].push((y, 1));
            adj[y].push((x, -1));
        }
        let mut seen = vec![false; classes.len()];
        let mut kcomps = Vec::new();
        for s in 0..classes.len() {
            if seen[s] {
                continue;
            }
            let kid = kcomps.len();
            let mut members = vec![s];
            seen[s] = true;
            classes[s].potential = 0;
            let mut stack = vec![s];
            let mut g = 0usize;
            while let Some(a) = stack.pop() {
                classes[a].kcomp = kid;
                for &(b, w) in &adj[a] {
                    if !seen[b] {
                        seen[b] = true;
                        classes[b].potential = classes[a].potential + w;
                        members.push(b);
                        stack.push(b);
                    }
                }
            }
            for &a in &members {
                for &(b, w) in &adj[a] {
                    let shift = classes[a].potential + w - classes[b].potential;
                    g = gcd(g, shift.unsigned_abs() as usize);
                }
            }
            members.sort_unstable();
            let hubs = members.iter().flat_map(|&c| classes[c].hubs.iter().copied()).collect();
            kcomps.push(KComp {
                classes: members,
                gcd: g,
                reach: 0,
                span: 0,
                hubs,
            });
        }
        for k in &mut kcomps {
            if k.gcd == 0 {
                let min = k.classes.iter().map(|&c| classes[c].potential).min().unwrap_or(0);
                for &c in &k.classes {
                    classes[c].potential -= min;
                }
                k.span = k
                    .classes
                    .iter()
                    .map(|&c| classes[c].potential as usize)
                    .max()
                    .unwrap_or(0);
            }
        }
        out.push(TailLayout {
            strands: p,
            class_of,
            classes,
            cross,
            kcomps,
        });
    }
    out
}

/// Smallest level from which one infinite class component is connected within levels ≥ 0.
fn reach_of(layout: &TailLayout, k: &KComp) -> usize {
    let pos: BTreeMap<usize, usize> = k.classes.iter().enumerate().map(|(n, &c)| (c, n)).collect();
    let n = k.classes.len();
    let edges: Vec<(usize, usize)> = layout
        .cross
        .iter()
        .filter(|(x, _)| pos.contains_key(x))
        .map(|(x, y)| (pos[x], pos[y]))
        .collect();
    let mut l = 1usize;
    loop {
        let levels = 3 * l + 1;
        let mut uf = UnionFind::new(n * levels);
        for b in 0..levels - 1 {
            for &(x, y) in &edges {
                uf.union(b * n + x, (b + 1) * n + y);
            }
        }
        let r0 = uf.find(l * n);
        let ok = (l..=2 * l).all(|b| (0..n).all(|x| uf.find(b * n + x) == r0));
        if ok {
            return l;
        }
        l *= 2;
        assert!(l < 1 << 16, "infinite class component never connects");
    }
}

impl Complement {
    /// Components of `G − removed`.
    pub fn compute(pres: &EpgPresentation, removed: &Epvs) -> Complement {
        let mut k0 = removed.max_threshold();
        let mut block = removed.period();
        for spec in &pres.tails {
            for h in &spec.hubs {
                k0 = k0.max(h.start);
                block = lcm(block, h.stride.max(1));
            }
        }
        let mut tails = build_layout(pres, removed, k0, block);
        loop {
            let m = tails
                .iter()
                .flat_map(|l| l.kcomps.iter().map(|k| k.gcd))
                .filter(|&g| g > 1)
                .fold(1, lcm);
            if m == 1 {
                break;
            }
            block *= m;
            tails = build_layout(pres, removed, k0, block);
        }
        for layout in &mut tails {
            let reaches: Vec<usize> = layout
                .kcomps
                .iter()
                .map(|k| if k.gcd == 1 { reach_of(layout, k) } else { 0 })
                .collect();
            for (k, r) in layout.kcomps.iter_mut().zip(reaches) {
                k.reach = r;
            }
        }
        let explicit_levels = tails
            .iter()
            .flat_map(|l| l.kcomps.iter())
            .map(|k| if k.gcd == 1 { k.reach + 1 } else { k.span + 1 })
            .max()
            .unwrap_or(1)
            .max(1);

        let mut c = Complement {
            removed: removed.clone(),
            k0,
            block,
            explicit_levels,
            tails,
            explicit: BTreeMap::new(),
            pieces: Vec::new(),
            inf_piece: BTreeMap::new(),
            absorbed: BTreeMap::new(),
            family: BTreeMap::new(),
            rules: pres.tails.iter().map(|s| (s.inter.clone(), s.intra.clone())).collect(),
        };
        c.resolve(pres);
        c
    }

    fn level_of(&self, copy: usize) -> Option<(usize, usize)> {
        (copy >= self.k0).then(|| ((copy - self.k0) / self.block, (copy - self.k0) % self.block))
    }

    fn vertex_at(&self, t: usize, level: usize, j: usize, i: usize) -> VertexId {
        VertexId::tail(t, self.k0 + level * self.block + j, i)
    }

    /// Is this (non-removed) vertex resolved explicitly?
    fn is_explicit(&self, v: VertexId) -> bool {
        match v {
            VertexId::Core(_) => true,
            VertexId::Tail { tail, copy, strand } => match self.level_of(copy) {
                None => true,
                Some((b, j)) => {
                    let layout = &self.tails[tail];
                    let Some(cl) = layout.cell(j, strand) else {
                        return false;
                    };
                    let class = &layout.classes[cl];
                    let k = &layout.kcomps[class.kcomp];
                    if k.gcd == 1 {
                        b < self.explicit_levels
                    } else {
                        (b as i64) - class.potential <= 0
                    }
                }
            },
        }
    }

    fn resolve(&mut self, pres: &EpgPresentation) {
        let mut verts: Vec<VertexId> = (0..pres.core_count)
            .map(VertexId::Core)
            .filter(|&v| !self.removed.contains(v))
            .collect();
        for (t, spec) in pres.tails.iter().enumerate() {
            for k in 0..self.k0 + self.explicit_levels * self.block {
                for i in 0..spec.period {
                    let v = VertexId::tail(t, k, i);
                    if !self.removed.contains(v) && self.is_explicit(v) {
                        verts.push(v);
                    }
                }
            }
        }
        verts.sort_unstable();
        let index: BTreeMap<VertexId, usize> = verts.iter().enumerate().map(|(n, &v)| (v, n)).collect();
        let mut uf = UnionFind::new(verts.len());
        let mut inf_node: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (t, layout) in self.tails.iter().enumerate() {
            for (kid, k) in layout.kcomps.iter().enumerate() {
                if k.gcd == 1 {
                    inf_node.insert((t, kid), uf.push());
                }
            }
        }
        for (n, &v) in verts.iter().enumerate() {
            for u in pres.local_neighbors(v) {
                if self.removed.contains(u) {
                    continue;
                }
                if let Some(&m) = index.get(&u) {
                    uf.union(n, m);
                } else if let VertexId::Tail { tail, copy, strand } = u {
                    let (_, j) = self.level_of(copy).expect("prefix vertices are explicit");
                    let cl = self.tails[tail].cell(j, strand).expect("present cell");
                    let kid = self.tails[tail].classes[cl].kcomp;
                    let node = inf_node
                        .get(&(tail, kid))
                        .expect("explicit vertices only touch infinite far parts");
                    uf.union(n, *node);
                }
            }
            if let VertexId::Tail { tail, copy, strand } = v {
                if let Some((b, j)) = self.level_of(copy) {
                    let layout = &self.tails[tail];
                    let cl = layout.cell(j, strand).unwrap();
                    let kid = layout.classes[cl].kcomp;
                    let k = &layout.kcomps[kid];
                    if k.gcd == 1 && b >= k.reach {
                        uf.union(n, inf_node[&(tail, kid)]);
                    }
                }
            }
        }
        let mut absorbed_hub: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (t, layout) in self.tails.iter().enumerate() {
            for (kid, k) in layout.kcomps.iter().enumerate() {
                let hub_nodes: Vec<usize> = k.hubs.iter().map(|&h| index[&VertexId::Core(h)]).collect();
                if let Some(&first) = hub_nodes.first() {
                    for &h in &hub_nodes[1..] {
                        uf.union(first, h);
                    }
                    if k.gcd == 1 {
                        uf.union(first, inf_node[&(t, kid)]);
                    } else {
                        absorbed_hub.insert((t, kid), first);
                    }
                }
            }
        }

        // group into pieces
        let mut groups: BTreeMap<usize, Epvs> = BTreeMap::new();
        for (n, &v) in verts.iter().enumerate() {
            let r = uf.find(n);
            groups.entry(r).or_default().insert(v);
        }
        let mut inf_root = BTreeMap::new();
        for (&(t, kid), &node) in &inf_node {
            let r = uf.find(node);
            inf_root.insert((t, kid), r);
            let layout = &self.tails[t];
            let far = self.k0 + self.explicit_levels * self.block;
            let set = groups.entry(r).or_default();
            for &cl in &layout.kcomps[kid].classes {
                for &(j, i) in &layout.classes[cl].cells {
                    set.add_strand(t, i, &Upis::progression(far + j, self.block));
                }
            }
        }
        let mut absorbed_root = BTreeMap::new();
        for (&(t, kid), &hub_node) in &absorbed_hub {
            let r = uf.find(hub_node);
            absorbed_root.insert((t, kid), r);
            let layout = &self.tails[t];
            let set = groups.entry(r).or_default();
            for &cl in &layout.kcomps[kid].classes {
                let class = &layout.classes[cl];
                let start_level = 1 + class.potential as usize;
                for &(j, i) in &class.cells {
                    let start = self.k0 + start_level * self.block + j;
                    set.add_strand(t, i, &Upis::progression(start, self.block));
                }
            }
        }
        let mut singles: Vec<(usize, Epvs)> = groups.into_iter().collect();

        // hub-free finite class components form families, starting at base level 1
        let mut families: Vec<((usize, usize), Epvs, i64)> = Vec::new();
        let mut folded: Vec<(usize, (usize, usize), i64)> = Vec::new();
        for (t, layout) in self.tails.iter().enumerate() {
            for (kid, k) in layout.kcomps.iter().enumerate() {
                if k.gcd != 0 || !k.hubs.is_empty() {
                    continue;
                }
                let mut first = Epvs::empty();
                for &cl in &k.classes {
                    let class = &layout.classes[cl];
                    for &(j, i) in &class.cells {
                        first.insert(self.vertex_at(t, 1 + class.potential as usize, j, i));
                    }
                }
                let mut base: i64 = 1;
                // fold explicit copies of the first member back into the family
                while let Some(prev) = translate_down(&first, self.block) {
                    let Some(pos) = singles.iter().position(|(_, s)| *s == prev) else {
                        break;
                    };
                    let (root, _) = singles.remove(pos);
                    base -= 1;
                    folded.push((root, (t, kid), base));
                    first = prev;
                }
                families.push(((t, kid), first, base));
            }
        }

        let mut pieces: Vec<(Piece, Option<usize>, Option<(usize, usize, i64)>)> = Vec::new();
        for (root, set) in singles {
            pieces.push((Piece::Single(set), Some(root), None));
        }
        for ((t, kid), first, base) in families {
            pieces.push((
                Piece::Family {
                    first,
                    shift: self.block,
                },
                None,
                Some((t, kid, base)),
            ));
        }
        pieces.sort_by_key(|(p, _, _)| p.min_vertex());
        let mut root_piece = BTreeMap::new();
        for (n, (piece, root, fam)) in pieces.into_iter().enumerate() {
            if let Some(r) = root {
                root_piece.insert(r, n);
            }
            if let Some((t, kid, base)) = fam {
                self.family.insert((t, kid), (n, base));
            }
            self.pieces.push(piece);
        }
        let mut root_loc: BTreeMap<usize, Location> = root_piece
            .iter()
            .map(|(&r, &piece)| (r, Location { piece, member: None }))
            .collect();
        for (root, key, member_base) in folded {
            let (piece, base) = self.family[&key];
            root_loc.insert(
                root,
                Location {
                    piece,
                    member: Some((member_base - base) as usize),
                },
            );
        }
        for (n, &v) in verts.iter().enumerate() {
            let r = uf.find(n);
            self.explicit.insert(v, root_loc[&r]);
        }
        for (key, r) in inf_root {
            self.inf_piece.insert(key, root_piece[&r]);
        }
        for (key, r) in absorbed_root {
            self.absorbed.insert(key, root_piece[&r]);
        }
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn removed(&self) -> &Epvs {
        &self.removed
    }

    /// True when `G − S` is empty or a single connected piece.
    pub fn piece_count_is_one(&self) -> bool {
        matches!(self.pieces.as_slice(), [] | [Piece::Single(_)])
    }

    /// Copy index from which the periodic description is exact.
    pub fn stable_copy(&self) -> usize {
        self.k0 + self.explicit_levels * self.block
    }

    pub fn block(&self) -> usize {
        self.block
    }

    pub fn k0(&self) -> usize {
        self.k0
    }

    /// The piece (and family member) containing `v`, or `None` when `v ∈ S`.
    pub fn locate(&self, v: VertexId) -> Option<Location> {
        if self.removed.contains(v) {
            return None;
        }
        if let Some(&loc) = self.explicit.get(&v) {
            return Some(loc);
        }
        let VertexId::Tail { tail, copy, strand } = v else {
            return None;
        };
        let (b, j) = self.level_of(copy)?;
        let layout = self.tails.get(tail)?;
        let cl = layout.cell(j, strand)?;
        let class = &layout.classes[cl];
        let kid = class.kcomp;
        if layout.kcomps[kid].gcd == 1 {
            return Some(Location {
                piece: self.inf_piece[&(tail, kid)],
                member: None,
            });
        }
        if let Some(&piece) = self.absorbed.get(&(tail, kid)) {
            return Some(Location { piece, member: None });
        }
        let (piece, base) = self.family[&(tail, kid)];
        let member_base = b as i64 - class.potential;
        Some(Location {
            piece,
            member: Some((member_base - base) as usize),
        })
    }

    /// The component containing `v` as a set.
    pub fn component_of(&self, v: VertexId) -> Option<Epvs> {
        let loc = self.locate(v)?;
        Some(match loc.member {
            None => self.pieces[loc.piece].member(0),
            Some(j) => self.pieces[loc.piece].member(j),
        })
    }

    /// Infinite class components, i.e. the ends of `G − S`, in (tail, strand) order.
    pub fn lanes(&self) -> Vec<Lane> {
        let mut out = Vec::new();
        for (t, layout) in self.tails.iter().enumerate() {
            for (kid, k) in layout.kcomps.iter().enumerate() {
                if k.gcd != 1 {
                    continue;
                }
                let mut cells: Vec<(usize, usize)> = k
                    .classes
                    .iter()
                    .flat_map(|&c| layout.classes[c].cells.iter().copied())
                    .collect();
                cells.sort_unstable();
                let mut set = Epvs::empty();
                for &(j, i) in &cells {
                    set.add_strand(t, i, &Upis::progression(self.k0 + j, self.block));
                }
                out.push(Lane {
                    tail: t,
                    kcomp: kid,
                    cells,
                    set,
                    hubs: k.hubs.clone(),
                });
            }
        }
        out.sort_by_key(|l| {
            let min_strand = l.cells.iter().map(|c| c.1).min().unwrap_or(0);
            let min_cell = l.cells.iter().map(|&(j, i)| (i, j)).min().unwrap_or((0, 0));
            (l.tail, min_strand, min_cell)
        });
        out
    }

    /// A periodic ray inside a lane.
    pub fn lane_ray(&self, lane: &Lane) -> crate::ends::PeriodicRay {
        self.lane_ray_from(lane, 0)
    }

    /// A periodic ray inside a lane whose vertices all sit at level ≥ `min_level`.
    ///
    /// A closed walk in the cell graph with positive level shift lifts to a
    /// periodic walk; its loop erasure is an eventually periodic ray.
    pub fn lane_ray_from(&self, lane: &Lane, min_level: usize) -> crate::ends::PeriodicRay {
        type Cell = (usize, usize);
        let t = lane.tail;
        let (inter, intra) = &self.rules[t];
        let cells: BTreeSet<Cell> = lane.cells.iter().copied().collect();
        let mut adj: BTreeMap<Cell, Vec<(Cell, i64)>> = BTreeMap::new();
        for &(j, i) in &cells {
            let e = adj.entry((j, i)).or_default();
            for &(a, b) in intra {
                if a == i && cells.contains(&(j, b)) {
                    e.push(((j, b), 0));
                }
                if b == i && cells.contains(&(j, a)) {
                    e.push(((j, a), 0));
                }
            }
            for &(a, b) in inter {
                let (nj, w) = if j + 1 < self.block { (j + 1, 0) } else { (0, 1) };
                if a == i && cells.contains(&(nj, b)) {
                    e.push(((nj, b), w));
                }
                let (pj, pw) = if j > 0 { (j - 1, 0) } else { (self.block - 1, -1) };
                if b == i && cells.contains(&(pj, a)) {
                    e.push(((pj, a), pw));
                }
            }
            e.sort_unstable();
            e.dedup();
        }
        let root = *cells.iter().next().expect("lane is nonempty");
        let mut pot: BTreeMap<Cell, i64> = BTreeMap::from([(root, 0)]);
        let mut parent: BTreeMap<Cell, Cell> = BTreeMap::new();
        let mut queue = std::collections::VecDeque::from([root]);
        let mut found = None;
        while let Some(a) = queue.pop_front() {
            for &(b, w) in &adj[&a] {
                match pot.get(&b) {
                    None => {
                        pot.insert(b, pot[&a] + w);
                        parent.insert(b, a);
                        queue.push_back(b);
                    }
                    Some(&pb) if found.is_none() && pot[&a] + w - pb != 0 => {
                        found = Some((a, b, w));
                    }
                    Some(_) => {}
                }
            }
        }
        let (a, b, w) = found.expect("infinite lane has a cycle with nonzero shift");
        let to_root = |mut x: Cell| {
            let mut p = vec![x];
            while let Some(&y) = parent.get(&x) {
                p.push(y);
                x = y;
            }
            p
        };
        let mut walk = to_root(a);
        walk.reverse();
        let ia = walk.len() - 1;
        walk.extend(to_root(b));
        walk.pop();
        let len = walk.len();
        // cumulative levels at positions 0..=len (position len closes the walk)
        let mut full = vec![0i64; len + 1];
        for n in 0..len {
            let next = walk[(n + 1) % len];
            let step = if n == ia { w } else { pot[&next] - pot[&walk[n]] };
            full[n + 1] = full[n] + step;
        }
        let (walk, lv, z) = if full[len] > 0 {
            (walk, full[..len].to_vec(), full[len])
        } else {
            let mut rw: Vec<Cell> = (0..len).map(|n| walk[(len - n) % len]).collect();
            rw.truncate(len);
            let rl: Vec<i64> = (0..len).map(|n| full[len - n] - full[len]).collect();
            (rw, rl, -full[len])
        };
        let start = min_level as i64 - *lv.iter().min().unwrap();
        let at = |i: usize| -> (Cell, i64) {
            let r = i % len;
            (walk[r], start + lv[r] + (i / len) as i64 * z)
        };
        let last_visit = |cell: Cell, level: i64| -> usize {
            (0..len)
                .filter(|&r| walk[r] == cell)
                .filter_map(|r| {
                    let d = level - start - lv[r];
                    (d >= 0 && d % z == 0).then(|| r + (d / z) as usize * len)
                })
                .max()
                .expect("vertex lies on the walk")
        };
        let to_vertex = |(cell, level): (Cell, i64)| self.vertex_at(t, level as usize, cell.0, cell.1);
        let mut out: Vec<(Cell, i64)> = Vec::new();
        let mut seen_residue: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        let (c0, l0) = at(0);
        let mut i = last_visit(c0, l0);
        loop {
            if let Some(&(pos, idx)) = seen_residue.get(&(i % len)) {
                let n = (i - idx) / len;
                return crate::ends::PeriodicRay {
                    prefix: out[..pos].iter().map(|&x| to_vertex(x)).collect(),
                    segment: out[pos..].iter().map(|&x| to_vertex(x)).collect(),
                    shift: n * z as usize * self.block,
                };
            }
            seen_residue.insert(i % len, (out.len(), i));
            out.push(at(i));
            let (c, l) = at(i + 1);
            i = last_visit(c, l);
        }
    }
}

fn translate_down(set: &Epvs, d: usize) -> Option<Epvs> {
    if !set.cores().is_empty() {
        return None;
    }
    let vs = set.finite_vertices()?;
    let mut out = Epvs::empty();
    for v in vs {
        let VertexId::Tail { tail, copy, strand } = v else {
            return None;
        };
        if copy < d {
            return None;
        }
        out.insert(VertexId::tail(tail, copy - d, strand));
    }
    Some(out)
}
