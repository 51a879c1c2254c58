//! Finite graphs, mainly truncations of presentations.

use std::collections::{BTreeMap, VecDeque};

use crate::epvs::Epvs;
use crate::presentation::{EpgPresentation, VertexId};
use crate::upis::Upis;

#[derive(Clone, Debug, Default)]
pub struct FiniteGraph {
    pub vertices: Vec<VertexId>,
    pub index: BTreeMap<VertexId, usize>,
    pub adj: Vec<Vec<usize>>,
    /// Vertex has a neighbour (inside the restriction set) beyond the truncation.
    pub boundary: Vec<bool>,
}

impl FiniteGraph {
    /// Induced subgraph on copies `0..=depth`, optionally intersected with `within`.
    pub fn unfolding(pres: &EpgPresentation, depth: usize, within: Option<&Epvs>) -> Self {
        let keep = |v: VertexId| within.is_none_or(|w| w.contains(v));
        let vertices: Vec<VertexId> = pres
            .unfolding_vertices(depth)
            .into_iter()
            .filter(|&v| keep(v))
            .collect();
        let index: BTreeMap<VertexId, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = vec![Vec::new(); vertices.len()];
        let mut boundary = vec![false; vertices.len()];
        for (a, &v) in vertices.iter().enumerate() {
            for u in pres.local_neighbors(v) {
                if !keep(u) {
                    continue;
                }
                match index.get(&u) {
                    Some(&b) => adj[a].push(b),
                    None => boundary[a] = true,
                }
            }
            if let VertexId::Core(c) = v {
                for (t, spec) in pres.tails.iter().enumerate() {
                    for h in spec.hubs.iter().filter(|h| h.hub == c) {
                        let mut copies = h.copies();
                        if let Some(w) = within {
                            copies = copies.intersect(&w.strand(t, h.strand));
                        }
                        for k in copies.iter_below(depth + 1) {
                            let u = VertexId::tail(t, k, h.strand);
                            if let Some(&b) = index.get(&u) {
                                adj[a].push(b);
                            }
                        }
                        if !copies.difference(&Upis::below(depth + 1)).is_empty() {
                            boundary[a] = true;
                        }
                    }
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        FiniteGraph {
            vertices,
            index,
            adj,
            boundary,
        }
    }

    /// Subgraph induced by the vertices not in `removed`; boundary flags are kept.
    pub fn without(&self, removed: &Epvs) -> Self {
        let keep: Vec<bool> = self.vertices.iter().map(|&v| !removed.contains(v)).collect();
        let mut map = vec![usize::MAX; self.vertices.len()];
        let mut g = FiniteGraph::default();
        for (i, &v) in self.vertices.iter().enumerate() {
            if keep[i] {
                map[i] = g.vertices.len();
                g.index.insert(v, g.vertices.len());
                g.vertices.push(v);
                g.boundary.push(self.boundary[i]);
            }
        }
        g.adj = vec![Vec::new(); g.vertices.len()];
        for (i, list) in self.adj.iter().enumerate() {
            if !keep[i] {
                continue;
            }
            for &j in list {
                if keep[j] {
                    g.adj[map[i]].push(map[j]);
                }
            }
        }
        g
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for (a, list) in self.adj.iter().enumerate() {
            for &b in list {
                if a < b {
                    out.push((self.vertices[a], self.vertices[b]));
                }
            }
        }
        out
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        match (self.index.get(&u), self.index.get(&v)) {
            (Some(&a), Some(&b)) => self.adj[a].binary_search(&b).is_ok(),
            _ => false,
        }
    }

    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        self.index
            .get(&v)
            .map(|&a| self.adj[a].iter().map(|&b| self.vertices[b]).collect())
            .unwrap_or_default()
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(a) = queue.pop_front() {
                for &b in &self.adj[a] {
                    if !seen[b] {
                        seen[b] = true;
                        comp.push(b);
                        queue.push_back(b);
                    }
                }
            }
            let mut vs: Vec<VertexId> = comp.into_iter().map(|i| self.vertices[i]).collect();
            vs.sort_unstable();
            out.push(vs);
        }
        out.sort();
        out
    }

    pub fn touches_boundary(&self, comp: &[VertexId]) -> bool {
        comp.iter().any(|v| self.boundary[self.index[v]])
    }

    /// BFS from `root` with neighbours visited in ascending order; returns parent links.
    pub fn bfs_tree(&self, root: VertexId) -> BTreeMap<VertexId, Option<VertexId>> {
        let mut parent = BTreeMap::new();
        let Some(&r) = self.index.get(&root) else {
            return parent;
        };
        parent.insert(root, None);
        let mut queue = VecDeque::from([r]);
        while let Some(a) = queue.pop_front() {
            for &b in &self.adj[a] {
                let v = self.vertices[b];
                if let std::collections::btree_map::Entry::Vacant(e) = parent.entry(v) {
                    e.insert(Some(self.vertices[a]));
                    queue.push_back(b);
                }
            }
        }
        parent
    }

    /// Shortest path from any source to any target (lexicographically least among
    /// BFS predecessors), or `None`.
    pub fn shortest_path(&self, sources: &[VertexId], is_target: impl Fn(VertexId) -> bool) -> Option<Vec<VertexId>> {
        let mut prev: Vec<Option<usize>> = vec![None; self.len()];
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::new();
        let mut srcs: Vec<usize> = sources.iter().filter_map(|v| self.index.get(v).copied()).collect();
        srcs.sort_unstable();
        for s in srcs {
            if !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(a) = queue.pop_front() {
            if is_target(self.vertices[a]) {
                let mut path = vec![self.vertices[a]];
                let mut cur = a;
                while let Some(p) = prev[cur] {
                    path.push(self.vertices[p]);
                    cur = p;
                }
                path.reverse();
                return Some(path);
            }
            for &b in &self.adj[a] {
                if !seen[b] {
                    seen[b] = true;
                    prev[b] = Some(a);
                    queue.push_back(b);
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn ray_unfolding_is_a_path() {
        let g = zoo::ray().unfold(3);
        assert_eq!(g.len(), 5);
        assert_eq!(g.edge_count(), 4);
        let a3 = VertexId::tail(0, 3, 0);
        assert!(g.boundary[g.index[&a3]]);
        assert_eq!(g.boundary.iter().filter(|&&b| b).count(), 1);
    }

    #[test]
    fn fan_unfolding() {
        let g = zoo::fan().unfold(2);
        assert_eq!(g.len(), 4);
        assert_eq!(g.neighbors(VertexId::Core(0)).len(), 3);
        assert!(g.has_edge(VertexId::tail(0, 0, 0), VertexId::tail(0, 1, 0)));
        assert!(g.boundary[g.index[&VertexId::Core(0)]]);
    }

    #[test]
    fn ladder_edge_count_matches_rule_count() {
        let p = zoo::ladder();
        let n = 10;
        let g = p.unfold(n);
        let spec = &p.tails[0];
        assert_eq!(g.len(), 2 + 2 * (n + 1));
        let expected = spec.intra.len() * (n + 1) + spec.inter.len() * n + spec.attach.len() + p.core_edges.len();
        assert_eq!(g.edge_count(), expected);
    }

    #[test]
    fn unfolding_is_induced_in_the_next() {
        for p in zoo::all() {
            let small = p.unfold(5);
            let big = p.unfold(6);
            for (u, v) in small.edges() {
                assert!(big.has_edge(u, v));
            }
            for &u in &small.vertices {
                for &v in &small.vertices {
                    assert_eq!(small.has_edge(u, v), big.has_edge(u, v));
                }
            }
        }
    }
}
