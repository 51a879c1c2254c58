//! A connected exhaustion `H₀ ⊆ H₁ ⊆ ⋯` in which every topological end
//! lives in a unique component of each `G − Hₘ`.
//!
//! `H₀` is the least vertex. For every component `C` of `G − Hₘ` with
//! `W = N(C)`, the set `U_C = N(W) ∩ C` gets a connected envelope `U*_C`
//! inside `G[C]`, and `Hₘ₊₁` is `Hₘ` together with all the `U*_C`. A finite
//! component is its own envelope, which also covers the periodic families
//! of finite components that hubs produce.

use serde::Serialize;

use crate::ends::{closure_among, enumerate_ends, End};
use crate::envelope::{envelope_within, finite_adhesion, is_connected};
use crate::epvs::Epvs;
use crate::error::{Error, Result};
use crate::periodic::{Complement, Piece};
use crate::presentation::{EpgPresentation, VertexId};

/// A component of `G − Hₘ` (or a periodic family of them) with its adhesion set and envelope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentRecord {
    /// The component, or the first member of a family.
    pub component: Epvs,
    /// Translation between consecutive members of a family.
    pub shift: Option<usize>,
    /// `W = N(C)`.
    pub adhesion: Epvs,
    /// `U_C = N(W) ∩ C`.
    pub u_c: Epvs,
    /// `U*_C`, a connected envelope of `U_C` in `G[C]`.
    pub u_star: Epvs,
}

impl ComponentRecord {
    /// Member `j` of the record (the record itself when it is not a family).
    pub fn member(&self, j: usize) -> ComponentRecord {
        let Some(shift) = self.shift else {
            return self.clone();
        };
        let d = j * shift;
        ComponentRecord {
            component: self.component.translate(d),
            shift: None,
            adhesion: self.adhesion.translate(d),
            u_c: self.u_c.translate(d),
            u_star: self.u_star.translate(d),
        }
    }

    /// Members whose least tail vertex has copy index at most `depth`.
    pub fn members_up_to(&self, depth: usize) -> Vec<ComponentRecord> {
        match self.shift {
            None => vec![self.clone()],
            Some(shift) => {
                let lo = self
                    .component
                    .min_vertex()
                    .and_then(|v| v.copy())
                    .unwrap_or(0);
                (0..).take_while(|j| lo + j * shift <= depth).map(|j| self.member(j)).collect()
            }
        }
    }

    /// Union of all members.
    pub fn union_set(&self, f: impl Fn(&ComponentRecord) -> &Epvs) -> Epvs {
        match self.shift {
            None => f(self).clone(),
            Some(shift) => Piece::Family {
                first: f(self).clone(),
                shift,
            }
            .union_set(),
        }
    }
}

/// Properties of one layer, checked when the layer is built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerChecks {
    /// `G[Hₘ]` connected.
    pub connected: bool,
    /// `Hₘ` has finite adhesion.
    pub finite_adhesion: bool,
    /// (i) `N(Hₘ) ⊆ Hₘ₊₁`.
    pub neighbourhood_absorbed: bool,
    /// (ii) no topological end in the closure of `Hₘ`, so each lives in one component.
    pub topological_ends_outside: bool,
    /// (iii) `C ∩ Hₘ₊₁` connected for every component `C` of `G − Hₘ`.
    pub traces_connected: bool,
    /// Dominated ends whose dominator is in `Hₘ` lie in the closure of `Hₘ₊₁`.
    pub dominated_consistent: bool,
}

impl LayerChecks {
    pub fn passed(&self) -> bool {
        self.connected
            && self.finite_adhesion
            && self.neighbourhood_absorbed
            && self.topological_ends_outside
            && self.traces_connected
            && self.dominated_consistent
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Layer {
    pub index: usize,
    pub set: Epvs,
    /// The components of `G − Hₘ`.
    pub components: Vec<ComponentRecord>,
    /// For every topological end (by id), the index of the component it lives in.
    pub end_homes: Vec<(usize, usize)>,
    pub checks: LayerChecks,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exhaustion {
    pub layers: Vec<Layer>,
    /// First index `m` with `Hₘ = V(G)`, if reached.
    pub fixed_point: Option<usize>,
    #[serde(skip)]
    pub ends: Vec<End>,
}

impl Exhaustion {
    pub fn passed(&self) -> bool {
        self.layers.iter().all(|l| l.checks.passed())
    }

    /// `Hₘ`, constant after the fixed point.
    pub fn set(&self, m: usize) -> &Epvs {
        &self.layers[m.min(self.layers.len() - 1)].set
    }
}

fn record(pres: &EpgPresentation, piece: &Piece) -> Result<ComponentRecord> {
    let (component, shift) = match piece {
        Piece::Single(c) => (c.clone(), None),
        Piece::Family { first, shift } => (first.clone(), Some(*shift)),
    };
    let adhesion = pres.neighborhood(&component);
    let u_c = pres.adjacent_to(&adhesion).intersect(&component);
    let u_star = if component.is_finite() {
        component.clone()
    } else {
        envelope_within(pres, &component, &u_c)?
    };
    Ok(ComponentRecord {
        component,
        shift,
        adhesion,
        u_c,
        u_star,
    })
}

fn next_layer(pres: &EpgPresentation, h: &Epvs) -> Result<(Vec<ComponentRecord>, Epvs)> {
    let pieces = Complement::compute(pres, h).pieces().to_vec();
    let mut records = Vec::with_capacity(pieces.len());
    let mut next = h.clone();
    for piece in &pieces {
        let r = record(pres, piece)?;
        next = next.union(&r.union_set(|r| &r.u_star));
        records.push(r);
    }
    Ok((records, next))
}

/// Where the far part of `end` lies among `components`.
fn home(end: &End, components: &[ComponentRecord], h: &Epvs) -> Option<usize> {
    let k = h.max_threshold() + end.lane.max_threshold() + 1;
    let v = end.far_vertex(k, h);
    components
        .iter()
        .position(|r| r.union_set(|r| &r.component).contains(v))
}

fn checks(pres: &EpgPresentation, ends: &[End], h: &Epvs, records: &[ComponentRecord], next: &Epvs) -> LayerChecks {
    let in_closure = closure_among(ends, h);
    let in_next = closure_among(ends, next);
    LayerChecks {
        connected: is_connected(pres, h),
        finite_adhesion: finite_adhesion(pres, h).finite_adhesion,
        neighbourhood_absorbed: pres.neighborhood(h).is_subset(next),
        topological_ends_outside: in_closure.iter().all(|e| !e.is_topological()),
        traces_connected: records
            .iter()
            .all(|r| is_connected(pres, &r.component.intersect(next))),
        dominated_consistent: ends
            .iter()
            .filter(|e| e.dominators.iter().any(|&d| h.contains(VertexId::Core(d))))
            .all(|e| in_next.iter().any(|f| f.id == e.id)),
    }
}

/// Layers `H₀ … H_{n_max}` with their components and checks.
pub fn exhaustion(pres: &EpgPresentation, n_max: usize) -> Result<Exhaustion> {
    pres.ensure_connected()?;
    let ends = enumerate_ends(pres)?;
    let all = pres.all_vertices();
    let first = all.min_vertex().ok_or(Error::EmptySet)?;
    let mut h = Epvs::vertex(first);
    let mut layers: Vec<Layer> = Vec::new();
    let mut fixed_point = None;
    for m in 0..=n_max {
        let (components, next) = next_layer(pres, &h)?;
        let end_homes = ends
            .iter()
            .filter(|e| e.is_topological())
            .filter_map(|e| home(e, &components, &h).map(|c| (e.id, c)))
            .collect();
        let checks = checks(pres, &ends, &h, &components, &next);
        if h == all && fixed_point.is_none() {
            fixed_point = Some(m);
        }
        layers.push(Layer {
            index: m,
            set: h.clone(),
            components,
            end_homes,
            checks,
        });
        if fixed_point.is_some() {
            break;
        }
        h = next;
    }
    let ex = Exhaustion {
        layers,
        fixed_point,
        ends,
    };
    if let Some(bad) = ex.layers.iter().find(|l| !l.checks.passed()) {
        return Err(Error::Postcondition(format!(
            "layer {} fails its checks: {:?}",
            bad.index, bad.checks
        )));
    }
    Ok(ex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::upis::Upis;
    use crate::zoo;

    #[test]
    fn ray_layers_are_balls() {
        let p = zoo::ray();
        let ex = exhaustion(&p, 6).unwrap();
        assert_eq!(ex.layers.len(), 7);
        assert_eq!(ex.set(0), &Epvs::vertex(VertexId::Core(0)));
        for m in 1..=6 {
            let mut ball = Epvs::vertex(VertexId::Core(0));
            ball.add_strand(0, 0, &Upis::below(m));
            assert_eq!(ex.set(m), &ball, "layer {m}");
        }
        assert_eq!(ex.layers[3].end_homes, vec![(0, 0)]);
    }

    #[test]
    fn fan_stops_at_layer_one() {
        let p = zoo::fan();
        let ex = exhaustion(&p, 8).unwrap();
        assert_eq!(ex.fixed_point, Some(1));
        assert_eq!(ex.set(1), &p.all_vertices());
        assert_eq!(ex.set(5), &p.all_vertices());
    }

    #[test]
    fn infstar_leaves_form_a_family() {
        let p = zoo::infstar();
        let ex = exhaustion(&p, 8).unwrap();
        assert_eq!(ex.fixed_point, Some(1));
        let comps = &ex.layers[0].components;
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].shift, Some(1));
    }

    #[test]
    fn whole_zoo_passes() {
        for p in zoo::all() {
            let ex = exhaustion(&p, 8).unwrap();
            assert!(ex.passed(), "{}", p.name);
            for l in &ex.layers {
                let tops = ex.ends.iter().filter(|e| e.is_topological()).count();
                assert_eq!(l.end_homes.len(), tops, "{} layer {}", p.name, l.index);
            }
        }
    }
}
