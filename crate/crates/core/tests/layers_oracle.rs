mod common;

use std::collections::BTreeSet;

use endscope::ends::enumerate_ends;
use endscope::exhaustion::exhaustion;
use endscope::spanning_tree::build_spanning_tree;
use endscope::treedecomp::build_tree_decomposition;
use endscope::verify::{check_display, check_end_faithful, check_td_axioms, check_upwards_disjoint};
use endscope::{Epvs, VertexId};

const N: usize = 40;

#[test]
fn exhaustion_properties_hold_on_the_unfolding() {
    for pres in common::test_graphs() {
        let ex = exhaustion(&pres, 9).unwrap();
        let ends = enumerate_ends(&pres).unwrap();
        let g = pres.unfold(N);
        for l in ex.layers.iter().take(9) {
            let h = &l.set;
            let next = ex.set(l.index + 1);
            assert!(common::looks_connected(&pres, h, N), "{} H{}", pres.name, l.index);
            // (i) neighbours of Hₘ lie in Hₘ₊₁
            for &v in g.vertices.iter().filter(|v| v.copy().is_none_or(|k| k < N - 4)) {
                if !h.contains(v) && g.neighbors(v).iter().any(|&u| h.contains(u)) {
                    assert!(next.contains(v), "{} H{}: neighbour {v} missing", pres.name, l.index);
                }
            }
            // (ii) topological ends stay out of the closure and live in their recorded component
            for e in ends.iter().filter(|e| e.is_topological()) {
                let cut = 12.max(h.max_threshold() + 1);
                let far = e.far_vertex(cut + 1, &Epvs::empty());
                assert!(!common::in_closure(&pres, h, far, cut, N), "{} H{} end {}", pres.name, l.index, e.id);
                let (_, home) = l.end_homes.iter().find(|(id, _)| *id == e.id).unwrap();
                let comp = l.components[*home].union_set(|r| &r.component);
                assert!(comp.contains(far), "{} H{} end {}", pres.name, l.index, e.id);
            }
            // (iii) the trace of every component on the next layer is connected
            for r in &l.components {
                for member in r.members_up_to(10) {
                    let trace = member.component.intersect(next);
                    assert!(common::looks_connected(&pres, &trace, N), "{} H{} {}", pres.name, l.index, member.component);
                }
            }
        }
    }
}

#[test]
fn decompositions_pass_every_checker() {
    for pres in common::test_graphs() {
        for depth in [1, 4, 8] {
            let td = build_tree_decomposition(&pres, depth, N).unwrap();
            let rep = check_td_axioms(&pres, &td, N).unwrap();
            assert!(rep.passed(), "{} depth {depth}\n{rep}", pres.name);
            assert!(check_upwards_disjoint(&td).passed(), "{} depth {depth}", pres.name);
            let rep = check_display(&pres, &td);
            assert!(rep.passed(), "{} depth {depth}\n{rep}", pres.name);
            for n in &td.nodes {
                if let Some(s) = &n.separator {
                    assert!(s.is_finite(), "{} node {}", pres.name, n.id);
                }
            }
        }
    }
}

#[test]
fn spanning_trees_span_their_layers_on_the_unfolding() {
    for pres in common::test_graphs() {
        for r in [20, N] {
            let st = build_spanning_tree(&pres, 6, r).unwrap();
            assert!(check_end_faithful(&pres, &st).passed(), "{} r = {r}", pres.name);
            let g = pres.unfold(4 * r);
            let window: Vec<VertexId> = st.layers[6].vertices_up_to(r);
            let verts: BTreeSet<VertexId> = st.tree.vertices().collect();
            assert!(window.iter().all(|v| verts.contains(v)), "{} r = {r}", pres.name);
            let edges = st.tree.edges();
            assert_eq!(edges.len() + 1, verts.len(), "{} r = {r}", pres.name);
            for &(a, b) in &edges {
                assert!(g.has_edge(a, b), "{} {a} {b}", pres.name);
            }
            // connected through tree edges alone
            let mut reached = BTreeSet::from([st.tree.root.unwrap()]);
            loop {
                let before = reached.len();
                for &(a, b) in &edges {
                    if reached.contains(&a) || reached.contains(&b) {
                        reached.insert(a);
                        reached.insert(b);
                    }
                }
                if reached.len() == before {
                    break;
                }
            }
            assert_eq!(reached, verts, "{} r = {r}", pres.name);
        }
    }
}

#[test]
fn comb_certificate_ray_is_in_the_comb_end() {
    let pres = endscope::zoo::comb();
    let st = build_spanning_tree(&pres, 8, N).unwrap();
    let e = &enumerate_ends(&pres).unwrap()[0];
    let cert = &st.ray_certificates[0];
    let tip = *cert.path.last().unwrap();
    let far = e.far_vertex(tip.copy().unwrap() + 1, &Epvs::empty());
    // no cut up to copy 12 separates the certificate's tip from the end's representative
    let below_tip = tip.copy().unwrap().saturating_sub(1).min(12);
    for k in 0..below_tip {
        let comp = common::far_component(&pres, k, N, far);
        assert!(comp.contains(&tip), "cut {k} separates {tip} from {far}");
    }
    assert!(cert.path[1..].iter().all(|v| matches!(v, VertexId::Tail { strand: 0, .. })));
}
