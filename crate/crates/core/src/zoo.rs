//! Built-in example graphs.

use crate::presentation::{EpgPresentation, HubRule, TailSpec};

pub const NAMES: [&str; 8] = [
    "ray",
    "double_ray",
    "ladder",
    "comb",
    "fan",
    "infstar",
    "twostrand",
    "hubbed_ladder",
];

fn ray_tail() -> TailSpec {
    TailSpec {
        period: 1,
        inter: vec![(0, 0)],
        attach: vec![(0, 0)],
        ..TailSpec::default()
    }
}

/// A single ray `c0 – 0.0.0 – 0.1.0 – …`.
pub fn ray() -> EpgPresentation {
    let mut p = EpgPresentation::new("ray", 1);
    p.tails.push(ray_tail());
    p
}

/// Two rays glued at a core vertex.
pub fn double_ray() -> EpgPresentation {
    let mut p = EpgPresentation::new("double_ray", 1);
    p.tails.push(ray_tail());
    p.tails.push(ray_tail());
    p
}

/// The one-ended ladder: two rails joined by a rung in every copy.
pub fn ladder() -> EpgPresentation {
    let mut p = EpgPresentation::new("ladder", 2);
    p.core_edges.push((0, 1));
    p.tails.push(TailSpec {
        period: 2,
        intra: vec![(0, 1)],
        inter: vec![(0, 0), (1, 1)],
        attach: vec![(0, 0), (1, 1)],
        hubs: Vec::new(),
    });
    p
}

/// A spine (strand 0) with a pendant tooth (strand 1) in every copy.
pub fn comb() -> EpgPresentation {
    let mut p = EpgPresentation::new("comb", 1);
    p.tails.push(TailSpec {
        period: 2,
        intra: vec![(0, 1)],
        inter: vec![(0, 0)],
        attach: vec![(0, 0)],
        hubs: Vec::new(),
    });
    p
}

/// A ray with a hub adjacent to all of it.
pub fn fan() -> EpgPresentation {
    let mut p = EpgPresentation::new("fan", 1);
    p.tails.push(TailSpec {
        period: 1,
        inter: vec![(0, 0)],
        hubs: vec![HubRule { hub: 0, strand: 0, start: 0, stride: 1 }],
        ..TailSpec::default()
    });
    p
}

/// An infinite star: a hub with infinitely many leaves.
pub fn infstar() -> EpgPresentation {
    let mut p = EpgPresentation::new("infstar", 1);
    p.tails.push(TailSpec {
        period: 1,
        hubs: vec![HubRule { hub: 0, strand: 0, start: 0, stride: 1 }],
        ..TailSpec::default()
    });
    p
}

/// Two independent strands in one tail, joined only at the core.
pub fn twostrand() -> EpgPresentation {
    let mut p = EpgPresentation::new("twostrand", 1);
    p.tails.push(TailSpec {
        period: 2,
        inter: vec![(0, 0), (1, 1)],
        attach: vec![(0, 0), (0, 1)],
        ..TailSpec::default()
    });
    p
}

/// The ladder with core `c0` also joined to every later copy of the bottom rail.
pub fn hubbed_ladder() -> EpgPresentation {
    let mut p = ladder();
    p.name = "hubbed_ladder".into();
    p.tails[0].hubs.push(HubRule { hub: 0, strand: 0, start: 1, stride: 1 });
    p
}

pub fn by_name(name: &str) -> Option<EpgPresentation> {
    let p = match name {
        "ray" => ray(),
        "double_ray" => double_ray(),
        "ladder" => ladder(),
        "comb" => comb(),
        "fan" => fan(),
        "infstar" => infstar(),
        "twostrand" => twostrand(),
        "hubbed_ladder" => hubbed_ladder(),
        _ => return None,
    };
    Some(p.normalized())
}

pub fn all() -> Vec<EpgPresentation> {
    NAMES.iter().map(|n| by_name(n).unwrap()).collect()
}
