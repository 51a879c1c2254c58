//! Brute-force oracles on finite unfoldings, shared by the integration tests.

#![allow(dead_code)]

pub mod mutations;

use std::collections::{BTreeSet, VecDeque};

use endscope::finite::FiniteGraph;
use endscope::{EpgPresentation, Epvs, Upis, VertexId};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random index set with threshold and period at most 4.
pub fn random_upis(rng: &mut ChaCha8Rng) -> Upis {
    let k = rng.gen_range(0..=4);
    let p = rng.gen_range(1..=4);
    let explicit = (0..k).map(|_| rng.gen_bool(0.5)).collect();
    let pattern = (0..p).map(|_| rng.gen_bool(0.5)).collect();
    Upis::from_parts(explicit, pattern)
}

/// Random vertex set of `pres`, each strand and core present with probability 1/2.
pub fn random_epvs(rng: &mut ChaCha8Rng, pres: &EpgPresentation) -> Epvs {
    let mut s = Epvs::empty();
    for c in 0..pres.core_count {
        if rng.gen_bool(0.3) {
            s.insert_core(c);
        }
    }
    for (t, spec) in pres.tails.iter().enumerate() {
        for i in 0..spec.period {
            if rng.gen_bool(0.6) {
                s.add_strand(t, i, &random_upis(rng));
            }
        }
    }
    s
}

/// Random finite set of at most `size` vertices with copy index below `max_copy`.
pub fn random_finite_cut(rng: &mut ChaCha8Rng, pres: &EpgPresentation, size: usize, max_copy: usize) -> Epvs {
    let pool = pres.unfolding_vertices(max_copy.saturating_sub(1));
    let n = rng.gen_range(0..=size.min(pool.len()));
    Epvs::from_vertices((0..n).map(|_| pool[rng.gen_range(0..pool.len())]))
}

/// Components of `G[within]` truncated at `depth`, with a flag telling whether
/// the component has an edge leaving the truncation (inside `within`).
pub fn components(pres: &EpgPresentation, within: &Epvs, depth: usize) -> Vec<(Vec<VertexId>, bool)> {
    let g = FiniteGraph::unfolding(pres, depth, Some(within));
    g.components()
        .into_iter()
        .map(|c| {
            let b = g.touches_boundary(&c);
            (c, b)
        })
        .collect()
}

/// Whether `G[set]` looks connected on `unfold(depth)`: either one component, or
/// several that all continue past the horizon.
pub fn looks_connected(pres: &EpgPresentation, set: &Epvs, depth: usize) -> bool {
    let comps = components(pres, set, depth);
    comps.len() <= 1 || comps.iter().all(|(_, b)| *b)
}

/// Number of components of `unfold(depth)` minus the cores and copies `≤ cut`
/// that continue past the horizon.
pub fn end_census(pres: &EpgPresentation, cut: usize, depth: usize) -> usize {
    let g = pres.unfold(depth);
    let mut x = Epvs::empty();
    for v in pres.unfolding_vertices(cut) {
        x.insert(v);
    }
    let h = g.without(&x);
    h.components().iter().filter(|c| h.touches_boundary(c)).count()
}

/// Component of `unfold(depth) − (cores ∪ copies ≤ cut)` containing `v`.
pub fn far_component(pres: &EpgPresentation, cut: usize, depth: usize, v: VertexId) -> Vec<VertexId> {
    let g = pres.unfold(depth);
    let x = Epvs::from_vertices(pres.unfolding_vertices(cut));
    let h = g.without(&x);
    h.components().into_iter().find(|c| c.contains(&v)).unwrap_or_default()
}

/// Maximum number of paths from `source` to `targets`, disjoint except at `source`.
pub fn disjoint_paths(g: &FiniteGraph, source: VertexId, targets: &BTreeSet<VertexId>) -> usize {
    // split every vertex into in/out with capacity one; unit-capacity augmenting paths
    let n = g.len();
    let s = g.index[&source];
    let node_in = |v: usize| 2 * v;
    let node_out = |v: usize| 2 * v + 1;
    let sink = 2 * n;
    let mut cap: Vec<std::collections::BTreeMap<usize, i32>> = vec![Default::default(); 2 * n + 1];
    let add = |cap: &mut Vec<std::collections::BTreeMap<usize, i32>>, a: usize, b: usize, c: i32| {
        *cap[a].entry(b).or_insert(0) += c;
        cap[b].entry(a).or_insert(0);
    };
    for v in 0..n {
        let c = if v == s { n as i32 } else { 1 };
        add(&mut cap, node_in(v), node_out(v), c);
        for &w in &g.adj[v] {
            add(&mut cap, node_out(v), node_in(w), 1);
        }
        if targets.contains(&g.vertices[v]) && v != s {
            add(&mut cap, node_out(v), sink, 1);
        }
    }
    let src = node_out(s);
    let mut flow = 0;
    loop {
        let mut prev = vec![usize::MAX; 2 * n + 1];
        prev[src] = src;
        let mut queue = VecDeque::from([src]);
        while let Some(a) = queue.pop_front() {
            if a == sink {
                break;
            }
            let next: Vec<usize> = cap[a].iter().filter(|(_, &c)| c > 0).map(|(&b, _)| b).collect();
            for b in next {
                if prev[b] == usize::MAX {
                    prev[b] = a;
                    queue.push_back(b);
                }
            }
        }
        if prev[sink] == usize::MAX {
            return flow;
        }
        let mut b = sink;
        while b != src {
            let a = prev[b];
            *cap[a].get_mut(&b).unwrap() -= 1;
            *cap[b].get_mut(&a).unwrap() += 1;
            b = a;
        }
        flow += 1;
    }
}

/// Brute-force closure test: for every cut `X_k = cores ∪ copies ≤ k` with `k ≤ max_cut`,
/// the far component containing `far` (a ray vertex beyond every cut) meets `m`.
pub fn in_closure(pres: &EpgPresentation, m: &Epvs, far: VertexId, max_cut: usize, depth: usize) -> bool {
    (0..=max_cut).all(|k| far_component(pres, k, depth, far).iter().any(|&v| m.contains(v)))
}

/// Two presentations outside the zoo: strands that swap at every step, and a
/// period-3 tail with a sparse hub.
pub fn extra_presentations() -> Vec<EpgPresentation> {
    use endscope::{HubRule, TailSpec};
    let mut swap = EpgPresentation::new("swap", 1);
    swap.tails.push(TailSpec {
        period: 2,
        inter: vec![(0, 1), (1, 0)],
        attach: vec![(0, 0), (0, 1)],
        ..Default::default()
    });
    let mut wide = EpgPresentation::new("wide", 2);
    wide.core_edges.push((0, 1));
    wide.tails.push(TailSpec {
        period: 3,
        intra: vec![(0, 2)],
        inter: vec![(0, 1), (1, 2), (2, 0)],
        attach: vec![(0, 0), (1, 1)],
        hubs: vec![HubRule { hub: 1, strand: 1, start: 2, stride: 3 }],
    });
    vec![swap.normalized(), wide.normalized()]
}

/// Zoo plus the extra presentations.
pub fn test_graphs() -> Vec<EpgPresentation> {
    let mut v = endscope::zoo::all();
    v.extend(extra_presentations());
    v
}

/// `N(C)` of the component containing `v` in `unfold(depth) − s`, or `None` when `v ∈ s`.
pub fn truncated_adhesion(pres: &EpgPresentation, s: &Epvs, depth: usize, v: VertexId) -> Option<usize> {
    if s.contains(v) {
        return None;
    }
    let g = pres.unfold(depth);
    let h = g.without(s);
    let comp = h.components().into_iter().find(|c| c.contains(&v))?;
    let inside: BTreeSet<VertexId> = comp.iter().copied().collect();
    let mut n = BTreeSet::new();
    for u in &comp {
        for w in g.neighbors(*u) {
            if !inside.contains(&w) {
                n.insert(w);
            }
        }
    }
    Some(n.len())
}

/// Compares the symbolic decomposition of `G − s` with BFS on `unfold(depth)`.
pub fn components_agree(pres: &EpgPresentation, s: &Epvs, depth: usize) -> Result<(), String> {
    let engine = endscope::periodic::Complement::compute(pres, s);
    let rest = s.complement(pres);
    let mut low_comp: std::collections::BTreeMap<(usize, Option<usize>), usize> = std::collections::BTreeMap::new();
    for (n, (comp, boundary)) in components(pres, &rest, depth).into_iter().enumerate() {
        let loc = engine
            .locate(comp[0])
            .ok_or_else(|| format!("{} not located", comp[0]))?;
        for &v in &comp {
            if engine.locate(v) != Some(loc) {
                return Err(format!("{} and {} split by the engine", comp[0], v));
            }
        }
        let sym = engine.component_of(comp[0]).unwrap();
        let truncated = Epvs::from_vertices(comp.iter().copied());
        if boundary {
            if sym == truncated {
                return Err(format!("component of {} continues but engine says it is finite", comp[0]));
            }
        } else if sym != truncated {
            return Err(format!("component of {}: engine {} vs oracle {}", comp[0], sym, truncated));
        }
        for &v in &comp {
            if v.copy().is_none_or(|k| k <= 8) {
                let key = (loc.piece, loc.member);
                if *low_comp.entry(key).or_insert(n) != n {
                    return Err(format!("engine joins {} with a separate low component", v));
                }
            }
        }
    }
    Ok(())
}

/// The four envelope properties, judged only on finite unfoldings.
pub fn envelope_verdict(pres: &EpgPresentation, u: &Epvs, u_star: &Epvs, depth: usize, cut: usize) -> Result<(), String> {
    for v in pres.unfolding_vertices(depth) {
        if u.contains(v) && !u_star.contains(v) {
            return Err(format!("(a) {v} lost"));
        }
    }
    if !looks_connected(pres, u_star, depth) {
        return Err("(b) disconnected on the unfolding".into());
    }
    for v in pres.unfolding_vertices(8) {
        let small = truncated_adhesion(pres, u_star, depth / 2, v);
        let big = truncated_adhesion(pres, u_star, depth, v);
        if small != big {
            return Err(format!("(c) adhesion at {v} grows: {small:?} -> {big:?}"));
        }
    }
    for e in endscope::ends::enumerate_ends(pres).unwrap() {
        let far = e.far_vertex(cut + 1, &Epvs::empty());
        let a = in_closure(pres, u, far, cut, depth);
        let b = in_closure(pres, u_star, far, cut, depth);
        if a != b {
            return Err(format!("(d) end {} in closure of U: {a}, of U*: {b}", e.id));
        }
    }
    Ok(())
}
