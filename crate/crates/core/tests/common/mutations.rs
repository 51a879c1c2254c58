//! Fault injection: corrupted copies of builder outputs that the checkers must reject.

use endscope::ends::enumerate_ends;
use endscope::spanning_tree::{build_spanning_tree, SpanningTreePrefix};
use endscope::treedecomp::{build_tree_decomposition, DisplayEntry, Orientation, TreeDecompositionPrefix};
use endscope::verify::{
    canonical_chain, check_display, check_end_faithful, check_nested_chain, check_td_axioms, check_upwards_disjoint,
};
use endscope::{zoo, EpgPresentation, Epvs, Upis, VertexId};

pub struct Mutation<T> {
    pub label: String,
    pub pres: EpgPresentation,
    pub value: T,
}

fn m<T>(label: &str, pres: &EpgPresentation, value: T) -> Mutation<T> {
    Mutation {
        label: format!("{}: {label}", pres.name),
        pres: pres.clone(),
        value,
    }
}

pub const TD_HORIZON: usize = 40;

fn td(pres: &EpgPresentation, depth: usize) -> TreeDecompositionPrefix {
    build_tree_decomposition(pres, depth, TD_HORIZON).unwrap()
}

fn deepest(t: &TreeDecompositionPrefix) -> usize {
    t.nodes.iter().max_by_key(|n| n.layer.map_or(0, |l| l + 1)).unwrap().id
}

pub fn td_axiom_mutations() -> Vec<Mutation<TreeDecompositionPrefix>> {
    let mut out = Vec::new();
    for pres in [zoo::ladder(), zoo::double_ray(), zoo::comb()] {
        let base = td(&pres, 6);
        let g = pres.unfold(12);

        let mut t = base.clone();
        let v = VertexId::tail(0, 1, 0);
        for n in &mut t.nodes {
            n.part = n.part.difference(&Epvs::vertex(v));
        }
        out.push(m("vertex deleted from every part", &pres, t));

        // an edge whose endpoints share exactly one part, and one endpoint also lies elsewhere
        let split = g.edges().into_iter().find_map(|(a, b)| {
            let both: Vec<usize> = base
                .nodes
                .iter()
                .filter(|n| n.part.contains(a) && n.part.contains(b))
                .map(|n| n.id)
                .collect();
            let b_elsewhere = base.nodes.iter().filter(|n| n.part.contains(b)).count() > 1;
            (both.len() == 1 && b_elsewhere).then(|| (both[0], b))
        });
        if let Some((node, b)) = split {
            let mut t = base.clone();
            t.nodes[node].part = t.nodes[node].part.difference(&Epvs::vertex(b));
            out.push(m("part split across an edge", &pres, t));
        }

        let mut t = base.clone();
        let d = deepest(&t);
        t.nodes[d].part.insert(VertexId::Core(0));
        out.push(m("root vertex copied into a deep part", &pres, t));

        let mut t = base.clone();
        t.nodes[2].separator = Some(Epvs::empty());
        out.push(m("separator does not match the parts", &pres, t));

        let mut t = base.clone();
        t.nodes[1].part.insert(VertexId::tail(0, 11, 0));
        out.push(m("far vertex makes a part disconnected", &pres, t));

        let mut t = base.clone();
        let everything = Epvs::strand_set(0, 0, Upis::all());
        t.nodes[0].part = t.nodes[0].part.union(&everything);
        t.nodes[1].part = t.nodes[1].part.union(&everything);
        t.nodes[1].separator = Some(t.nodes[1].part.intersect(&t.nodes[0].part));
        out.push(m("infinite separator", &pres, t));

        let mut t = base.clone();
        t.nodes[1].parent = Some(2);
        t.nodes[2].parent = Some(1);
        out.push(m("parent cycle", &pres, t));

        let mut t = base.clone();
        t.nodes[2].parent = None;
        out.push(m("second root", &pres, t));

        let mut t = base.clone();
        t.nodes[1].parent = Some(999);
        out.push(m("dangling parent", &pres, t));

        let mut t = base.clone();
        t.nodes[1].id = 7;
        out.push(m("node ids out of order", &pres, t));

        let mut t = base.clone();
        t.frontier.clear();
        out.push(m("frontier dropped", &pres, t));

        let mut t = base.clone();
        t.nodes.truncate(t.nodes.len() - 1);
        t.frontier.clear();
        out.push(m("last node dropped", &pres, t));
    }
    out
}

pub fn td_axioms_detect(mu: &Mutation<TreeDecompositionPrefix>) -> bool {
    match check_td_axioms(&mu.pres, &mu.value, TD_HORIZON) {
        Ok(rep) => !rep.passed(),
        Err(_) => true,
    }
}

pub fn upwards_disjoint_mutations() -> Vec<Mutation<TreeDecompositionPrefix>> {
    let mut out = Vec::new();
    for pres in [zoo::ray(), zoo::ladder(), zoo::double_ray()] {
        let base = td(&pres, 8);
        for n in base.nodes.iter().skip(1) {
            for a in base.ancestors(n.id).into_iter().skip(1) {
                let Some(above) = base.nodes[a].separator.clone() else {
                    continue;
                };
                let mut t = base.clone();
                let sep = t.nodes[n.id].separator.get_or_insert_with(Epvs::empty);
                *sep = sep.union(&above);
                out.push(m(&format!("separator of node {a} repeated at node {}", n.id), &pres, t));
            }
        }
    }
    out
}

pub fn upwards_disjoint_detect(mu: &Mutation<TreeDecompositionPrefix>) -> bool {
    !check_upwards_disjoint(&mu.value).passed()
}

pub fn display_mutations() -> Vec<Mutation<TreeDecompositionPrefix>> {
    let mut out = Vec::new();
    for pres in [zoo::double_ray(), zoo::twostrand()] {
        let base = td(&pres, 6);

        let mut t = base.clone();
        let e = t.display_table[0].clone();
        t.display_table.push(e);
        out.push(m("duplicated entry", &pres, t));

        let mut t = base.clone();
        t.display_table.pop();
        out.push(m("entry removed", &pres, t));

        let mut t = base.clone();
        t.display_table[0].end = 99;
        out.push(m("unknown end", &pres, t));

        let mut t = base.clone();
        t.display_table[0].chain.remove(0);
        out.push(m("chain misses its first node", &pres, t));

        let mut t = base.clone();
        t.display_table[0].chain.reverse();
        out.push(m("chain reversed", &pres, t));

        let mut t = base.clone();
        t.display_table[0].chain.push(999);
        out.push(m("chain runs off the tree", &pres, t));

        let mut t = base.clone();
        let (a, b) = (t.display_table[0].chain.clone(), t.display_table[1].chain.clone());
        t.display_table[0].chain = b;
        t.display_table[1].chain = a;
        out.push(m("chains swapped between ends", &pres, t));

        let mut t = base.clone();
        t.display_table[1].chain = t.display_table[0].chain.clone();
        out.push(m("two ends share a chain", &pres, t));

        let mut t = base.clone();
        t.display_table[0].strands = vec![7];
        out.push(m("wrong strand label", &pres, t));

        let mut t = base.clone();
        t.dominated.push(Orientation { end: 0, node: Some(0) });
        out.push(m("topological end oriented to a node", &pres, t));
    }
    for pres in [zoo::fan(), zoo::hubbed_ladder()] {
        let base = td(&pres, 4);

        let mut t = base.clone();
        t.display_table.push(DisplayEntry {
            end: 0,
            tail: 0,
            strands: vec![0],
            chain: vec![1],
        });
        out.push(m("dominated end listed as a ray", &pres, t));

        let mut t = base.clone();
        t.dominated.clear();
        out.push(m("orientation dropped", &pres, t));

        let mut t = base.clone();
        t.dominated[0].node = Some(0);
        out.push(m("orientation at the root", &pres, t));

        let mut t = base.clone();
        t.dominated[0].node = None;
        out.push(m("orientation missing its node", &pres, t));

        let mut t = base.clone();
        let o = t.dominated[0].clone();
        t.dominated.push(o);
        out.push(m("orientation duplicated", &pres, t));
    }
    out
}

pub fn display_detect(mu: &Mutation<TreeDecompositionPrefix>) -> bool {
    !check_display(&mu.pres, &mu.value).passed()
}

pub type Chain = Vec<(Epvs, Epvs)>;

fn chain_of(pres: &EpgPresentation, end: usize, len: usize) -> Chain {
    let ends = enumerate_ends(pres).unwrap();
    canonical_chain(pres, &ends[end], len).unwrap()
}

pub fn nested_chain_mutations() -> Vec<Mutation<Chain>> {
    let mut out = Vec::new();
    for pres in [zoo::ray(), zoo::ladder()] {
        let base = chain_of(&pres, 0, 5);

        let mut c = base.clone();
        c.swap(1, 3);
        out.push(m("two links swapped", &pres, c));

        let mut c = base.clone();
        c.reverse();
        out.push(m("chain reversed", &pres, c));

        let mut c = base.clone();
        c.insert(2, base[2].clone());
        out.push(m("link repeated", &pres, c));

        let mut c = base.clone();
        c[3] = base[0].clone();
        out.push(m("first link reused", &pres, c));

        let mut c = base.clone();
        c[1].0 = Epvs::strand_set(0, 0, Upis::all());
        out.push(m("infinite separator", &pres, c));

        let mut c = base.clone();
        c[2].1 = c[2].1.difference(&Epvs::vertex(c[2].1.min_vertex().unwrap()));
        out.push(m("component trimmed", &pres, c));
    }
    let pres = zoo::double_ray();
    let (a, b) = (chain_of(&pres, 0, 4), chain_of(&pres, 1, 4));
    let mut c = a.clone();
    c[2] = b[2].clone();
    out.push(m("link from another end", &pres, c));
    let mut c = a.clone();
    c.push(b[3].clone());
    out.push(m("chain jumps to another end", &pres, c));
    for pres in [zoo::fan(), zoo::hubbed_ladder()] {
        out.push(m("canonical chain of a dominated end", &pres, chain_of(&pres, 0, 4)));
        let hub = Epvs::vertex(VertexId::Core(0));
        let c: Chain = chain_of(&pres, 0, 4)
            .into_iter()
            .map(|(x, c)| (x.difference(&hub), Epvs::empty().union(&c)))
            .collect();
        out.push(m("hub left out of every separator", &pres, c));
    }
    out
}

pub fn nested_chain_detect(mu: &Mutation<Chain>) -> bool {
    match check_nested_chain(&mu.pres, &mu.value) {
        Ok(rep) => !rep.passed(),
        Err(_) => true,
    }
}

pub const ST_HORIZON: usize = 40;

pub fn end_faithful_mutations() -> Vec<Mutation<SpanningTreePrefix>> {
    let mut out = Vec::new();
    for pres in [zoo::ladder(), zoo::comb(), zoo::double_ray()] {
        let base = build_spanning_tree(&pres, 6, ST_HORIZON).unwrap();
        let root = base.tree.root.unwrap();
        let g = pres.unfold(ST_HORIZON + 4);

        let mut s = base.clone();
        let v = *s.tree.parent.keys().find(|&&v| v != root).unwrap();
        s.tree.parent.insert(root, Some(v));
        out.push(m("root given a parent", &pres, s));

        let mut s = base.clone();
        let leaf = s.ray_certificates[0].path.last().copied().unwrap();
        let mid = s.ray_certificates[0].path[2];
        s.tree.parent.insert(mid, Some(leaf));
        out.push(m("cycle through a certificate path", &pres, s));

        let mut s = base.clone();
        let far = *s.tree.parent.keys().max_by_key(|v| v.copy()).unwrap();
        s.tree.parent.insert(far, Some(root));
        out.push(m("link that is not an edge", &pres, s));

        let mut s = base.clone();
        let v = VertexId::tail(0, 3, 0);
        let orphans: Vec<VertexId> = s.tree.children().get(&v).cloned().unwrap_or_default();
        let p = s.tree.parent.remove(&v).flatten();
        for c in orphans {
            s.tree.parent.insert(c, p);
        }
        out.push(m("layer vertex left out", &pres, s));

        let mut s = base.clone();
        s.ray_certificates.pop();
        out.push(m("certificate removed", &pres, s));

        let mut s = base.clone();
        let c = s.ray_certificates[0].clone();
        s.ray_certificates.push(c);
        out.push(m("certificate duplicated", &pres, s));

        let mut s = base.clone();
        s.ray_certificates[0].chain.remove(1);
        out.push(m("certificate chain skips a component", &pres, s));

        let mut s = base.clone();
        s.ray_certificates[0].path.remove(2);
        out.push(m("certificate path broken", &pres, s));

        let mut s = base.clone();
        let e = s.ray_certificates[0].edges[2];
        s.ray_certificates[0].edges[2] = (e.1, e.0);
        out.push(m("certificate edge reversed", &pres, s));

        let mut s = base.clone();
        s.attachments.remove(1);
        out.push(m("attachment removed", &pres, s));

        let mut s = base.clone();
        let (x, y) = s.attachments[1].edge;
        s.attachments[1].edge = (y, x);
        out.push(m("attachment edge flipped", &pres, s));

        let mut s = base.clone();
        s.layers[0].insert(VertexId::tail(0, 0, 0));
        out.push(m("first layer enlarged", &pres, s));

        // a second ray into the end: hang a vertex of C₂ from outside C₂ by another graph edge
        let cert = &base.ray_certificates[0];
        let c2 = &cert.chain[2];
        let second = g.edges().into_iter().find_map(|(a, b)| {
            let (outside, inside) = if c2.contains(b) { (a, b) } else { (b, a) };
            (c2.contains(inside) && !c2.contains(outside) && (outside, inside) != cert.edges[2])
                .then_some((outside, inside))
        });
        if let Some((outside, inside)) = second {
            let mut s = base.clone();
            s.tree.parent.insert(inside, Some(outside));
            out.push(m("second rooted ray into the end", &pres, s));
        }
    }
    let pres = zoo::hubbed_ladder();
    let mut s = build_spanning_tree(&pres, 4, ST_HORIZON).unwrap();
    s.ray_certificates.push(endscope::spanning_tree::RayCertificate {
        end: 0,
        chain: Vec::new(),
        edges: Vec::new(),
        path: vec![VertexId::Core(0)],
    });
    out.push(m("certificate for a dominated end", &pres, s));
    out
}

pub fn end_faithful_detect(mu: &Mutation<SpanningTreePrefix>) -> bool {
    !check_end_faithful(&mu.pres, &mu.value).passed()
}
