//! Ends, the components `C(X, ε)`, closures and domination.
//!
//! Every end of an eventually periodic graph has a *lane*: the eventually
//! periodic set of tail vertices forming the far part of the end. An end
//! lies in the closure of `M` exactly when `M` meets its lane infinitely
//! often, and the vertices dominating it are the hubs adjacent to infinitely
//! many lane vertices. Vertices of finite degree never dominate an end,
//! since a subdivided infinite star needs a centre of infinite degree.

use serde::Serialize;

use crate::epvs::Epvs;
use crate::error::{Error, Result};
use crate::periodic::Complement;
use crate::presentation::{EpgPresentation, VertexId};

/// An eventually periodic ray: `prefix`, then `segment` repeated, each
/// repetition moved `shift` copies outwards.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicRay {
    pub prefix: Vec<VertexId>,
    pub segment: Vec<VertexId>,
    pub shift: usize,
}

impl PeriodicRay {
    pub fn vertex(&self, n: usize) -> VertexId {
        if n < self.prefix.len() {
            return self.prefix[n];
        }
        let m = n - self.prefix.len();
        let rep = m / self.segment.len();
        self.segment[m % self.segment.len()].shifted(rep * self.shift)
    }

    pub fn take(&self, n: usize) -> Vec<VertexId> {
        (0..n).map(|i| self.vertex(i)).collect()
    }

    pub fn root(&self) -> VertexId {
        self.vertex(0)
    }

    /// Index of the first vertex at or after `from` whose copy index is at least `min_copy`.
    pub fn first_index_beyond(&self, min_copy: usize, from: usize) -> usize {
        let mut n = from;
        loop {
            if self.vertex(n).copy().is_some_and(|k| k >= min_copy) {
                return n;
            }
            n += 1;
        }
    }

    /// Tail vertices of the ray from some point on (all vertices with index ≥ `from`),
    /// as an eventually periodic set.
    pub fn tail_set(&self, from: usize) -> Epvs {
        let start = from.max(self.prefix.len());
        let mut set = Epvs::empty();
        for n in from..start {
            set.insert(self.vertex(n));
        }
        let seg_len = self.segment.len();
        for r in 0..seg_len {
            let n = start + r;
            if let VertexId::Tail { tail, copy, strand } = self.vertex(n) {
                set.add_strand(tail, strand, &crate::upis::Upis::progression(copy, self.shift));
            }
        }
        set
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct End {
    pub id: usize,
    pub tail: usize,
    /// Strands the end's lane runs through.
    pub strands: Vec<usize>,
    /// Far part of the end: tail vertices of the ray class, as an eventually periodic set.
    pub lane: Epvs,
    pub representative: PeriodicRay,
    /// Hubs dominating the end.
    pub dominators: Vec<usize>,
}

impl End {
    pub fn is_topological(&self) -> bool {
        self.dominators.is_empty()
    }

    /// Same end, possibly computed against a different cut: the lanes share infinitely many vertices.
    pub fn same_as(&self, other: &End) -> bool {
        self.tail == other.tail && !self.lane.intersect(&other.lane).is_finite()
    }

    /// A ray vertex beyond copy `min_copy` that avoids `avoid`.
    pub fn far_vertex(&self, min_copy: usize, avoid: &Epvs) -> VertexId {
        let mut n = self.representative.first_index_beyond(min_copy, 0);
        while avoid.contains(self.representative.vertex(n)) {
            n += 1;
        }
        self.representative.vertex(n)
    }
}

/// Hubs in `ambient` adjacent to infinitely many vertices of `lane`.
fn lane_dominators(pres: &EpgPresentation, ambient: &Epvs, tail: usize, lane: &Epvs) -> Vec<usize> {
    let mut out: Vec<usize> = pres.tails[tail]
        .hubs
        .iter()
        .filter(|h| ambient.contains(VertexId::Core(h.hub)))
        .filter(|h| !h.copies().intersect(&lane.strand(tail, h.strand)).is_finite())
        .map(|h| h.hub)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Ends of the induced subgraph `G[ambient]`, ordered by (tail, least strand).
pub fn ends_within(pres: &EpgPresentation, ambient: &Epvs) -> Vec<End> {
    let structure = Complement::compute(pres, &ambient.complement(pres));
    structure
        .lanes()
        .into_iter()
        .enumerate()
        .map(|(id, lane)| {
            let mut strands: Vec<usize> = lane.cells.iter().map(|c| c.1).collect();
            strands.sort_unstable();
            strands.dedup();
            End {
                id,
                tail: lane.tail,
                strands,
                dominators: lane_dominators(pres, ambient, lane.tail, &lane.set),
                representative: structure.lane_ray(&lane),
                lane: lane.set,
            }
        })
        .collect()
}

/// All ends of a connected presentation.
pub fn enumerate_ends(pres: &EpgPresentation) -> Result<Vec<End>> {
    pres.ensure_connected()?;
    Ok(ends_within(pres, &pres.all_vertices()))
}

fn find_end<'a>(ends: &'a [End], end: &End) -> Result<&'a End> {
    ends.iter()
        .find(|e| e.same_as(end))
        .ok_or(Error::UnknownEnd)
}

/// `C(X, ε)` inside `G[ambient]`: the component of `G[ambient] − X` in which `ε` lives.
pub fn component_of_within(pres: &EpgPresentation, ambient: &Epvs, x: &Epvs, end: &End) -> Result<Epvs> {
    if !x.is_finite() {
        return Err(Error::InfiniteSet);
    }
    let removed = ambient.complement(pres).union(x);
    let structure = Complement::compute(pres, &removed);
    let v = end.far_vertex(structure.stable_copy(), &removed);
    structure.component_of(v).ok_or(Error::UnknownEnd)
}

/// `C(X, ε)`: the component of `G − X` in which `ε` lives.
pub fn component_of(pres: &EpgPresentation, x: &Epvs, end: &End) -> Result<Epvs> {
    pres.check_set(x)?;
    if !x.is_finite() {
        return Err(Error::InfiniteSet);
    }
    let ends = enumerate_ends(pres)?;
    let end = find_end(&ends, end)?;
    component_of_within(pres, &pres.all_vertices(), x, end)
}

/// Ends (from `ends`) in the closure of `m`.
pub fn closure_among(ends: &[End], m: &Epvs) -> Vec<End> {
    ends.iter()
        .filter(|e| !e.lane.intersect(m).is_finite())
        .cloned()
        .collect()
}

/// `∂M`: the ends whose every `C(X, ε)` meets `M`.
pub fn closure(pres: &EpgPresentation, m: &Epvs) -> Result<Vec<End>> {
    pres.check_set(m)?;
    Ok(closure_among(&enumerate_ends(pres)?, m))
}

/// Hubs dominating `end`.
pub fn dominators(pres: &EpgPresentation, end: &End) -> Result<Vec<usize>> {
    let ends = enumerate_ends(pres)?;
    let end = find_end(&ends, end)?;
    Ok(lane_dominators(pres, &pres.all_vertices(), end.tail, &end.lane))
}

/// `∂N(W)` for a finite set `W`.
pub fn closure_of_neighborhood(pres: &EpgPresentation, w: &Epvs) -> Result<Vec<End>> {
    pres.check_set(w)?;
    if !w.is_finite() {
        return Err(Error::InfiniteSet);
    }
    closure(pres, &pres.neighborhood(w))
}
