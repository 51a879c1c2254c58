//! Components of complements, adhesion, and connected envelopes.
//!
//! Every computation here runs inside an *ambient* vertex set `A`, which is
//! either the whole graph or a component the caller works in; the plain
//! functions use `A = V(G)`.
//!
//! The envelope of `U` is built directly instead of by attaching combs and
//! stars one at a time: an end whose lane meets `U` only finitely often is
//! *excluded*, and for a large enough cut `X` (all cores plus the low copies)
//! the component of `G[A] − X` holding the far part of an excluded end misses
//! `U`. Deleting those components leaves a set containing `U` whose
//! complementary components have the finite neighbourhoods `⊆ X`; a few
//! shortest paths make it connected. The result is checked against every
//! defining property before it is returned.

use serde::Serialize;

use crate::ends::{closure_among, ends_within, End};
use crate::epvs::Epvs;
use crate::error::{Error, Result};
use crate::finite::FiniteGraph;
use crate::periodic::{Complement, Piece};
use crate::presentation::{EpgPresentation, VertexId};

/// Components of `G[ambient] − s`, with families of isomorphic finite components kept symbolic.
pub fn components_within(pres: &EpgPresentation, ambient: &Epvs, s: &Epvs) -> Vec<Piece> {
    let removed = ambient.complement(pres).union(s);
    Complement::compute(pres, &removed).pieces().to_vec()
}

/// Components of `G − s`.
pub fn components_of_complement(pres: &EpgPresentation, s: &Epvs) -> Vec<Piece> {
    components_within(pres, &pres.all_vertices(), s)
}

/// One component (or family) of the complement and the size of its adhesion set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyAdhesion {
    /// The component, or the first member of a family.
    pub component: Epvs,
    /// Translation between consecutive family members.
    pub shift: Option<usize>,
    /// `|N(C)|`, `None` when infinite.
    pub adhesion: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdhesionReport {
    pub finite_adhesion: bool,
    /// A component with infinite neighbourhood, and that neighbourhood.
    pub witness: Option<(Epvs, Epvs)>,
    pub component_families: Vec<FamilyAdhesion>,
}

/// Adhesion of `s` inside `G[ambient]`: neighbourhoods are taken in `G[ambient]`.
pub fn finite_adhesion_within(pres: &EpgPresentation, ambient: &Epvs, s: &Epvs) -> AdhesionReport {
    let mut report = AdhesionReport {
        finite_adhesion: true,
        witness: None,
        component_families: Vec::new(),
    };
    for piece in components_within(pres, ambient, s) {
        let (component, shift) = match &piece {
            Piece::Single(c) => (c.clone(), None),
            Piece::Family { first, shift } => (first.clone(), Some(*shift)),
        };
        let n = pres.neighborhood(&component).intersect(ambient);
        let adhesion = n.len();
        if adhesion.is_none() && report.witness.is_none() {
            report.finite_adhesion = false;
            report.witness = Some((component.clone(), n));
        }
        report.component_families.push(FamilyAdhesion {
            component,
            shift,
            adhesion,
        });
    }
    report
}

pub fn finite_adhesion(pres: &EpgPresentation, s: &Epvs) -> AdhesionReport {
    finite_adhesion_within(pres, &pres.all_vertices(), s)
}

/// Outcome of checking the envelope properties of `u_star` for `u` inside `G[ambient]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnvelopeCheck {
    pub superset: bool,
    pub connected: bool,
    pub finite_adhesion: bool,
    pub closure_equal: bool,
    /// Ids (within the ambient end list) of the ends in the closure of `u`.
    pub closure_u: Vec<usize>,
    pub closure_u_star: Vec<usize>,
}

impl EnvelopeCheck {
    pub fn passed(&self) -> bool {
        self.superset && self.connected && self.finite_adhesion && self.closure_equal
    }

    fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.superset {
            out.push("not a superset");
        }
        if !self.connected {
            out.push("not connected");
        }
        if !self.finite_adhesion {
            out.push("infinite adhesion");
        }
        if !self.closure_equal {
            out.push("closure changed");
        }
        out
    }
}

/// Whether `G[set]` is connected and nonempty.
pub fn is_connected(pres: &EpgPresentation, set: &Epvs) -> bool {
    let pieces = Complement::compute(pres, &set.complement(pres));
    matches!(pieces.pieces(), [Piece::Single(_)])
}

fn ids(ends: &[End]) -> Vec<usize> {
    ends.iter().map(|e| e.id).collect()
}

pub fn check_envelope_within(pres: &EpgPresentation, ambient: &Epvs, u: &Epvs, u_star: &Epvs) -> EnvelopeCheck {
    let ends = ends_within(pres, ambient);
    let closure_u = ids(&closure_among(&ends, u));
    let closure_u_star = ids(&closure_among(&ends, u_star));
    EnvelopeCheck {
        superset: u.is_subset(u_star) && u_star.is_subset(ambient),
        connected: is_connected(pres, u_star),
        finite_adhesion: finite_adhesion_within(pres, ambient, u_star).finite_adhesion,
        closure_equal: closure_u == closure_u_star,
        closure_u,
        closure_u_star,
    }
}

/// Checks (a) `U ⊆ U*`, (b) `G[U*]` connected, (c) finite adhesion, (d) `∂U* = ∂U`.
pub fn check_envelope(pres: &EpgPresentation, u: &Epvs, u_star: &Epvs) -> EnvelopeCheck {
    check_envelope_within(pres, &pres.all_vertices(), u, u_star)
}

const MAX_CUT: usize = 1 << 12;

/// Vertices of `ambient` that are cores or lie below copy `k`.
fn low_part(pres: &EpgPresentation, ambient: &Epvs, k: usize) -> Epvs {
    if k == 0 {
        return ambient.intersect(&Epvs::from_vertices((0..pres.core_count).map(VertexId::Core)));
    }
    Epvs::from_vertices(pres.unfolding_vertices(k - 1)).intersect(ambient)
}

/// Removes from `ambient` the far components of the ends whose lanes meet `u` finitely often.
fn strip_excluded(pres: &EpgPresentation, ambient: &Epvs, u: &Epvs, excluded: &[&End]) -> Result<Epvs> {
    let mut k = 1 + excluded
        .iter()
        .filter_map(|e| e.lane.intersect(u).max_copy())
        .max()
        .unwrap_or(0);
    loop {
        let x = low_part(pres, ambient, k);
        let removed = ambient.complement(pres).union(&x);
        let structure = Complement::compute(pres, &removed);
        let mut far = Epvs::empty();
        for e in excluded {
            let v = e.far_vertex(structure.stable_copy().max(k), &removed);
            far = far.union(&structure.component_of(v).ok_or(Error::UnknownEnd)?);
        }
        if far.intersect(u).is_empty() && far.is_subset(ambient) {
            return Ok(ambient.difference(&far));
        }
        k *= 2;
        if k > MAX_CUT {
            return Err(Error::Postcondition(
                "far components of excluded ends keep meeting U".into(),
            ));
        }
    }
}

/// Adds shortest `G[ambient]`-paths until `G[set]` is connected.
fn connect(pres: &EpgPresentation, ambient: &Epvs, mut set: Epvs) -> Result<Epvs> {
    loop {
        let structure = Complement::compute(pres, &set.complement(pres));
        let pieces = structure.pieces();
        if pieces.len() <= 1 {
            return Ok(set);
        }
        if pieces.iter().any(Piece::is_family) {
            return Err(Error::Postcondition("infinitely many pieces to connect".into()));
        }
        let first = pieces
            .iter()
            .min_by_key(|p| p.min_vertex())
            .expect("nonempty")
            .union_set();
        let mut depth = structure.stable_copy().max(set.max_threshold()) + 2;
        let path = loop {
            let g = FiniteGraph::unfolding(pres, depth, Some(ambient));
            let sources = first.vertices_up_to(depth);
            let found = g.shortest_path(&sources, |v| set.contains(v) && !first.contains(v));
            if let Some(path) = found {
                break path;
            }
            depth *= 2;
            if depth > MAX_CUT {
                return Err(Error::Postcondition("pieces of the envelope cannot be joined".into()));
            }
        };
        for v in path {
            set.insert(v);
        }
    }
}

/// A connected envelope of `u` inside `G[ambient]`, which must be connected.
pub fn envelope_within(pres: &EpgPresentation, ambient: &Epvs, u: &Epvs) -> Result<Epvs> {
    if u.is_empty() {
        return Err(Error::EmptySet);
    }
    if !u.is_subset(ambient) {
        return Err(Error::NotAComponent(format!("{u} is not inside {ambient}")));
    }
    let ends = ends_within(pres, ambient);
    let excluded: Vec<&End> = ends
        .iter()
        .filter(|e| e.lane.intersect(u).is_finite())
        .collect();
    let base = if excluded.is_empty() {
        ambient.clone()
    } else {
        strip_excluded(pres, ambient, u, &excluded)?
    };
    let u_star = connect(pres, ambient, base)?;
    let check = check_envelope_within(pres, ambient, u, &u_star);
    if !check.passed() {
        return Err(Error::Postcondition(format!(
            "envelope of {u}: {}",
            check.failures().join(", ")
        )));
    }
    Ok(u_star)
}

/// A connected envelope of `u`: connected, of finite adhesion, with the same closure.
pub fn envelope(pres: &EpgPresentation, u: &Epvs) -> Result<Epvs> {
    pres.check_set(u)?;
    pres.ensure_connected()?;
    envelope_within(pres, &pres.all_vertices(), u)
}
