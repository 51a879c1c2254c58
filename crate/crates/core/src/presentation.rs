//! Finite presentations of eventually periodic infinite graphs.
//!
//! A presentation has a finite core and a list of one-way infinite tails.
//! Tail `t` consists of copies `k = 0, 1, 2, …` of a period of `p` strands;
//! the edge rules of a tail are repeated in every copy. Hub rules join a
//! core vertex to an arithmetic progression of copies of one strand, which
//! is the only source of infinite degree.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::epvs::Epvs;
use crate::error::{Error, Result};
use crate::upis::Upis;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexId {
    Core(usize),
    Tail { tail: usize, copy: usize, strand: usize },
}

impl VertexId {
    pub fn tail(tail: usize, copy: usize, strand: usize) -> Self {
        VertexId::Tail { tail, copy, strand }
    }

    pub fn copy(&self) -> Option<usize> {
        match *self {
            VertexId::Core(_) => None,
            VertexId::Tail { copy, .. } => Some(copy),
        }
    }

    /// Moves a tail vertex `d` copies outwards; core vertices are fixed.
    pub fn shifted(&self, d: usize) -> Self {
        match *self {
            VertexId::Core(c) => VertexId::Core(c),
            VertexId::Tail { tail, copy, strand } => VertexId::Tail {
                tail,
                copy: copy + d,
                strand,
            },
        }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::Core(c) => write!(f, "c{c}"),
            VertexId::Tail { tail, copy, strand } => write!(f, "{tail}.{copy}.{strand}"),
        }
    }
}

impl FromStr for VertexId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidVertex(s.to_string());
        if let Some(rest) = s.strip_prefix('c') {
            return rest.parse().map(VertexId::Core).map_err(|_| bad());
        }
        let parts: Vec<&str> = s.split('.').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let n: Vec<usize> = parts
            .iter()
            .map(|p| p.parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        Ok(VertexId::tail(n[0], n[1], n[2]))
    }
}

/// Serialized in text form (`c0`, `0.3.1`).
impl Serialize for VertexId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VertexId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `Core(hub)` is adjacent to `Tail(t, start + m·stride, strand)` for all `m ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HubRule {
    pub hub: usize,
    pub strand: usize,
    pub start: usize,
    pub stride: usize,
}

impl HubRule {
    pub fn copies(&self) -> Upis {
        Upis::progression(self.start, self.stride.max(1))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailSpec {
    pub period: usize,
    /// `(i, j)`: strand `i` and strand `j` of the same copy.
    pub intra: Vec<(usize, usize)>,
    /// `(i, j)`: strand `i` of copy `k` and strand `j` of copy `k + 1`.
    pub inter: Vec<(usize, usize)>,
    /// `(c, i)`: core vertex `c` and strand `i` of copy 0.
    pub attach: Vec<(usize, usize)>,
    pub hubs: Vec<HubRule>,
}

impl TailSpec {
    pub fn new(period: usize) -> Self {
        TailSpec {
            period,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpgPresentation {
    pub name: String,
    pub core_count: usize,
    pub core_edges: Vec<(usize, usize)>,
    pub tails: Vec<TailSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub problems: Vec<String>,
    /// `None` when the presentation is malformed and connectivity was not decided.
    pub connected: Option<bool>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.problems.is_empty()
    }
}

impl EpgPresentation {
    pub fn new(name: impl Into<String>, core_count: usize) -> Self {
        EpgPresentation {
            name: name.into(),
            core_count,
            core_edges: Vec::new(),
            tails: Vec::new(),
        }
    }

    /// Sorts every rule list and orients unordered pairs; does not validate.
    pub fn normalized(mut self) -> Self {
        for e in &mut self.core_edges {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        self.core_edges.sort_unstable();
        for t in &mut self.tails {
            for e in &mut t.intra {
                if e.0 > e.1 {
                    *e = (e.1, e.0);
                }
            }
            t.intra.sort_unstable();
            t.inter.sort_unstable();
            t.attach.sort_unstable();
            t.hubs.sort_unstable();
        }
        self
    }

    pub fn tail_count(&self) -> usize {
        self.tails.len()
    }

    pub fn period(&self, t: usize) -> usize {
        self.tails[t].period
    }

    /// Core vertices owning at least one hub rule.
    pub fn hubs(&self) -> BTreeSet<usize> {
        self.tails
            .iter()
            .flat_map(|t| t.hubs.iter().map(|h| h.hub))
            .collect()
    }

    pub fn is_hub(&self, c: usize) -> bool {
        self.tails.iter().any(|t| t.hubs.iter().any(|h| h.hub == c))
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        match v {
            VertexId::Core(c) => c < self.core_count,
            VertexId::Tail { tail, strand, .. } => {
                tail < self.tails.len() && strand < self.tails[tail].period
            }
        }
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(Error::InvalidVertex(v.to_string()))
        }
    }

    /// Syntax problems only (index ranges, duplicates, self-loops, strides).
    pub fn syntax_problems(&self) -> Vec<String> {
        let mut problems = Vec::new();
        let n = self.core_count;
        let mut seen = BTreeSet::new();
        for &(u, v) in &self.core_edges {
            if u >= n || v >= n {
                problems.push(format!("core_edge {u} {v}: index out of range"));
            } else if u == v {
                problems.push(format!("core_edge {u} {v}: self-loop"));
            } else if !seen.insert((u.min(v), u.max(v))) {
                problems.push(format!("core_edge {u} {v}: duplicate edge"));
            }
        }
        for (t, spec) in self.tails.iter().enumerate() {
            let p = spec.period;
            if p == 0 {
                problems.push(format!("tail {t}: period must be at least 1"));
                continue;
            }
            let mut seen = BTreeSet::new();
            for &(i, j) in &spec.intra {
                if i >= p || j >= p {
                    problems.push(format!("intra {t} {i} {j}: strand out of range"));
                } else if i == j {
                    problems.push(format!("intra {t} {i} {j}: self-loop"));
                } else if !seen.insert((i.min(j), i.max(j))) {
                    problems.push(format!("intra {t} {i} {j}: duplicate edge"));
                }
            }
            let mut seen = BTreeSet::new();
            for &(i, j) in &spec.inter {
                if i >= p || j >= p {
                    problems.push(format!("inter {t} {i} {j}: strand out of range"));
                } else if !seen.insert((i, j)) {
                    problems.push(format!("inter {t} {i} {j}: duplicate edge"));
                }
            }
            let mut seen = BTreeSet::new();
            for &(c, i) in &spec.attach {
                if c >= n || i >= p {
                    problems.push(format!("attach {t} {c} {i}: index out of range"));
                } else if !seen.insert((c, i)) {
                    problems.push(format!("attach {t} {c} {i}: duplicate edge"));
                }
            }
            for (r, h) in spec.hubs.iter().enumerate() {
                let tag = format!("hub {t} {} {} {} {}", h.hub, h.strand, h.start, h.stride);
                if h.stride == 0 {
                    problems.push(format!("{tag}: stride must be >= 1"));
                    continue;
                }
                if h.hub >= n || h.strand >= p {
                    problems.push(format!("{tag}: index out of range"));
                    continue;
                }
                if h.start == 0 && spec.attach.contains(&(h.hub, h.strand)) {
                    problems.push(format!("{tag}: duplicates an attach edge"));
                }
                for other in &spec.hubs[..r] {
                    if other.stride == 0 || other.hub != h.hub || other.strand != h.strand {
                        continue;
                    }
                    if !other.copies().intersect(&h.copies()).is_empty() {
                        problems.push(format!("{tag}: overlaps another hub rule"));
                    }
                }
            }
        }
        problems
    }

    pub fn validate(&self) -> ValidationReport {
        let problems = self.syntax_problems();
        let connected = if problems.is_empty() {
            Some(crate::periodic::Complement::compute(self, &Epvs::empty()).piece_count_is_one())
        } else {
            None
        };
        ValidationReport {
            problems,
            connected,
        }
    }

    /// Fails unless the presentation is well formed.
    pub fn ensure_valid(&self) -> Result<()> {
        let problems = self.syntax_problems();
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidPresentation(problems.join("; ")))
        }
    }

    /// Fails unless the presentation is well formed and connected.
    pub fn ensure_connected(&self) -> Result<()> {
        self.ensure_valid()?;
        if self.validate().connected == Some(true) {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Neighbours of a vertex with finite degree, in ascending order.
    /// Hubs yield only their finitely many non-hub-rule neighbours.
    pub fn local_neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut out = Vec::new();
        match v {
            VertexId::Core(c) => {
                for &(a, b) in &self.core_edges {
                    if a == c {
                        out.push(VertexId::Core(b));
                    } else if b == c {
                        out.push(VertexId::Core(a));
                    }
                }
                for (t, spec) in self.tails.iter().enumerate() {
                    for &(a, i) in &spec.attach {
                        if a == c {
                            out.push(VertexId::tail(t, 0, i));
                        }
                    }
                }
            }
            VertexId::Tail { tail, copy, strand } => {
                let spec = &self.tails[tail];
                for &(i, j) in &spec.intra {
                    if i == strand {
                        out.push(VertexId::tail(tail, copy, j));
                    } else if j == strand {
                        out.push(VertexId::tail(tail, copy, i));
                    }
                }
                for &(i, j) in &spec.inter {
                    if i == strand {
                        out.push(VertexId::tail(tail, copy + 1, j));
                    }
                    if j == strand && copy > 0 {
                        out.push(VertexId::tail(tail, copy - 1, i));
                    }
                }
                if copy == 0 {
                    for &(c, i) in &spec.attach {
                        if i == strand {
                            out.push(VertexId::Core(c));
                        }
                    }
                }
                for h in &spec.hubs {
                    if h.strand == strand && h.copies().contains(copy) {
                        out.push(VertexId::Core(h.hub));
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Exact neighbour set of `v`; infinite exactly when `v` is a hub.
    pub fn neighbors(&self, v: VertexId) -> Result<Epvs> {
        self.check_vertex(v)?;
        let mut n = Epvs::from_vertices(self.local_neighbors(v));
        if let VertexId::Core(c) = v {
            for (t, spec) in self.tails.iter().enumerate() {
                for h in spec.hubs.iter().filter(|h| h.hub == c) {
                    n = n.union(&Epvs::strand_set(t, h.strand, h.copies()));
                }
            }
        }
        Ok(n)
    }

    /// Whether `a` and `b` are adjacent (both must be vertices of the graph).
    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        if !self.contains_vertex(a) || !self.contains_vertex(b) {
            return false;
        }
        match b {
            VertexId::Tail { .. } => self.local_neighbors(b).contains(&a),
            VertexId::Core(_) => self.local_neighbors(a).contains(&b),
        }
    }

    /// All vertices adjacent to some vertex of `set` (may meet `set` itself).
    pub fn adjacent_to(&self, set: &Epvs) -> Epvs {
        let mut out = Epvs::empty();
        for &c in set.cores() {
            if c < self.core_count {
                out = out.union(&self.neighbors(VertexId::Core(c)).expect("core in range"));
            }
        }
        for (t, spec) in self.tails.iter().enumerate() {
            let strand = |i: usize| set.strand(t, i);
            for &(i, j) in &spec.intra {
                out.add_strand(t, j, &strand(i));
                out.add_strand(t, i, &strand(j));
            }
            for &(i, j) in &spec.inter {
                out.add_strand(t, j, &strand(i).shift_up(1));
                out.add_strand(t, i, &strand(j).shift_down(1));
            }
            for &(c, i) in &spec.attach {
                if strand(i).contains(0) {
                    out.insert_core(c);
                }
            }
            for h in &spec.hubs {
                if !strand(h.strand).intersect(&h.copies()).is_empty() {
                    out.insert_core(h.hub);
                }
            }
        }
        out
    }

    /// `N(set)`: vertices outside `set` with a neighbour in `set`.
    pub fn neighborhood(&self, set: &Epvs) -> Epvs {
        self.adjacent_to(set).difference(set)
    }

    /// Every vertex of the graph.
    pub fn all_vertices(&self) -> Epvs {
        let mut all = Epvs::from_vertices((0..self.core_count).map(VertexId::Core));
        for (t, spec) in self.tails.iter().enumerate() {
            for i in 0..spec.period {
                all.add_strand(t, i, &Upis::all());
            }
        }
        all
    }

    /// Checks that every vertex mentioned by `set` exists here.
    pub fn check_set(&self, set: &Epvs) -> Result<()> {
        if let Some(&c) = set.cores().iter().find(|&&c| c >= self.core_count) {
            return Err(Error::MismatchedPresentation(format!("core c{c}")));
        }
        for &(t, i) in set.strands().keys() {
            if t >= self.tails.len() || i >= self.tails[t].period {
                return Err(Error::MismatchedPresentation(format!("strand {t}.{i}")));
            }
        }
        Ok(())
    }

    /// Vertices of the finite unfolding at depth `n` (copies `0..=n`).
    pub fn unfolding_vertices(&self, n: usize) -> Vec<VertexId> {
        let mut vs: Vec<VertexId> = (0..self.core_count).map(VertexId::Core).collect();
        for (t, spec) in self.tails.iter().enumerate() {
            for k in 0..=n {
                for i in 0..spec.period {
                    vs.push(VertexId::tail(t, k, i));
                }
            }
        }
        vs
    }

    /// Induced subgraph on the cores and all tail copies up to `n`.
    pub fn unfold(&self, n: usize) -> crate::finite::FiniteGraph {
        crate::finite::FiniteGraph::unfolding(self, n, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn ray_validates_and_is_connected() {
        let r = zoo::ray().validate();
        assert!(r.is_valid());
        assert_eq!(r.connected, Some(true));
    }

    #[test]
    fn ray_without_attach_is_disconnected() {
        let mut p = zoo::ray();
        p.tails[0].attach.clear();
        let r = p.validate();
        assert!(r.is_valid());
        assert_eq!(r.connected, Some(false));
    }

    #[test]
    fn zero_stride_rejected() {
        let mut p = zoo::fan();
        p.tails[0].hubs[0].stride = 0;
        let r = p.validate();
        assert!(!r.is_valid());
        assert!(r.problems[0].contains("stride"));
    }

    #[test]
    fn overlapping_hub_rules_rejected() {
        let mut p = zoo::fan();
        p.tails[0].hubs.push(HubRule { hub: 0, strand: 0, start: 2, stride: 2 });
        assert!(!p.validate().is_valid());
    }

    #[test]
    fn neighbors_of_hub_is_infinite_progression() {
        let p = zoo::fan();
        let n = p.neighbors(VertexId::Core(0)).unwrap();
        assert_eq!(n.strand(0, 0), Upis::all());
        assert!(!n.is_finite());
    }

    #[test]
    fn ray_neighbors() {
        let p = zoo::ray();
        let n = p.neighbors(VertexId::tail(0, 5, 0)).unwrap();
        assert_eq!(
            n.finite_vertices().unwrap(),
            vec![VertexId::tail(0, 4, 0), VertexId::tail(0, 6, 0)]
        );
    }

    #[test]
    fn ladder_neighbors() {
        let p = zoo::ladder();
        let n = p.neighbors(VertexId::tail(0, 3, 0)).unwrap();
        let expected: BTreeSet<_> = [
            VertexId::tail(0, 3, 1),
            VertexId::tail(0, 2, 0),
            VertexId::tail(0, 4, 0),
        ]
        .into_iter()
        .collect();
        let got: BTreeSet<_> = n.finite_vertices().unwrap().into_iter().collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn invalid_vertex_rejected() {
        assert!(zoo::ray().neighbors(VertexId::tail(0, 0, 3)).is_err());
        assert!(zoo::ray().neighbors(VertexId::Core(7)).is_err());
    }

    #[test]
    fn vertex_text_round_trip() {
        for v in [VertexId::Core(3), VertexId::tail(1, 22, 0)] {
            assert_eq!(v.to_string().parse::<VertexId>().unwrap(), v);
        }
    }
}
