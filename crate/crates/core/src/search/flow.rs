//! Vertex-disjoint A–B paths by unit-capacity max-flow on the vertex-split graph.
//!
//! Terminal semantics: every vertex carries capacity 1, except that a terminal set
//! consisting of a single vertex is shared by all paths. So for `a = {x}`, `b = {y}`
//! the paths are internally disjoint x–y paths (the classic local connectivity), and
//! for larger sets they are fully disjoint (set version of Menger's theorem).

use crate::error::{param, Result};
use crate::graph::{Graph, VertexSet};
use std::collections::VecDeque;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DisjointPaths {
    /// `want` paths, each from a vertex of A to a vertex of B, internally avoiding A ∪ B.
    Paths(Vec<Vec<usize>>),
    /// Fewer than `want` paths exist. `vertices` meets every A–B path that avoids the
    /// direct edge; `direct_edge` is set when A and B are adjacent singletons, in
    /// which case that edge also counts toward the bound.
    Separator { vertices: Vec<usize>, direct_edge: bool, max_paths: usize },
}

struct Net {
    head: Vec<usize>,
    cap: Vec<i64>,
    adj: Vec<Vec<usize>>,
}

impl Net {
    fn new(nodes: usize) -> Self {
        Net { head: Vec::new(), cap: Vec::new(), adj: vec![Vec::new(); nodes] }
    }

    fn arc(&mut self, u: usize, v: usize, c: i64) {
        self.adj[u].push(self.head.len());
        self.head.push(v);
        self.cap.push(c);
        self.adj[v].push(self.head.len());
        self.head.push(u);
        self.cap.push(0);
    }

    /// One BFS augmentation of one unit; arcs explored in insertion order.
    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut prev = vec![usize::MAX; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            if u == t {
                break;
            }
            for &e in &self.adj[u] {
                let v = self.head[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    prev[v] = e;
                    q.push_back(v);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut v = t;
        while v != s {
            let e = prev[v];
            self.cap[e] -= 1;
            self.cap[e ^ 1] += 1;
            v = self.head[e ^ 1];
        }
        true
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut st = vec![s];
        while let Some(u) = st.pop() {
            for &e in &self.adj[u] {
                let v = self.head[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    st.push(v);
                }
            }
        }
        seen
    }
}

/// `want` vertex-disjoint paths from `a` to `b` inside `within` (terminals must lie
/// in `within`), or a separator certifying that fewer exist.
pub fn vertex_disjoint_paths_within(
    g: &Graph,
    within: &VertexSet,
    a: &VertexSet,
    b: &VertexSet,
    want: usize,
) -> Result<DisjointPaths> {
    if a.is_empty() || b.is_empty() {
        return param("terminal sets must be non-empty");
    }
    if a.intersects(b) {
        return param("terminal sets must be disjoint");
    }
    if !a.is_subset(within) || !b.is_subset(within) {
        return param("terminal sets must lie inside the host set");
    }
    let n = g.order();
    let big = want as i64 + 1;
    let (s, t) = (2 * n, 2 * n + 1);
    let vin = |v: usize| 2 * v;
    let vout = |v: usize| 2 * v + 1;
    let shared_a = a.len() == 1;
    let shared_b = b.len() == 1;
    let mut net = Net::new(2 * n + 2);
    let mut edge_arcs = Vec::new();
    for v in within.iter() {
        let shared = (shared_a && a.contains(v)) || (shared_b && b.contains(v));
        net.arc(vin(v), vout(v), if shared { big } else { 1 });
    }
    for v in a.iter() {
        net.arc(s, vin(v), big);
    }
    for v in b.iter() {
        net.arc(vout(v), t, big);
    }
    let mut direct_edge = false;
    for u in within.iter() {
        for v in g.neighbors(u).iter() {
            if !within.contains(v) || a.contains(v) || b.contains(u) {
                continue;
            }
            let direct = shared_a && shared_b && a.contains(u) && b.contains(v);
            direct_edge |= direct;
            edge_arcs.push((u, v, net.head.len()));
            net.arc(vout(u), vin(v), if direct { 1 } else { big });
        }
    }
    let mut flow = 0;
    while flow < want && net.augment(s, t) {
        flow += 1;
    }
    if flow < want {
        let r = net.reachable(s);
        let vertices: Vec<usize> =
            within.iter().filter(|&v| r[vin(v)] && !r[vout(v)]).collect();
        let direct_cut = direct_edge && {
            let (u, v) = (a.first().unwrap(), b.first().unwrap());
            r[vout(u)] && !r[vin(v)]
        };
        return Ok(DisjointPaths::Separator { vertices, direct_edge: direct_cut, max_paths: flow });
    }
    // Decompose: follow saturated edge arcs from each used source.
    let mut used_out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v, e) in &edge_arcs {
        let sent = if net.cap[e ^ 1] > 0 { net.cap[e ^ 1] } else { 0 };
        for _ in 0..sent {
            used_out[u].push(v);
        }
    }
    let mut paths = Vec::new();
    for x in a.iter() {
        while let Some(first) = used_out[x].pop() {
            let mut path = vec![x, first];
            let mut cur = first;
            while !b.contains(cur) {
                let nxt = used_out[cur].pop().expect("flow conservation");
                path.push(nxt);
                cur = nxt;
            }
            paths.push(trim_path(path, a, b));
        }
    }
    paths.sort();
    Ok(DisjointPaths::Paths(paths))
}

/// Keep the segment from the last A vertex to the first B vertex after it.
fn trim_path(path: Vec<usize>, a: &VertexSet, b: &VertexSet) -> Vec<usize> {
    let first_b = path.iter().position(|&v| b.contains(v)).unwrap();
    let last_a = path[..first_b].iter().rposition(|&v| a.contains(v)).unwrap();
    path[last_a..=first_b].to_vec()
}

pub fn vertex_disjoint_paths(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    want: usize,
) -> Result<DisjointPaths> {
    vertex_disjoint_paths_within(g, &g.vertex_set(), a, b, want)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen;
    use proptest::prelude::*;

    fn check_paths(g: &Graph, a: &VertexSet, b: &VertexSet, paths: &[Vec<usize>]) {
        let mut internal = g.empty_set();
        for p in paths {
            assert!(g.is_path(p));
            assert!(a.contains(p[0]) && b.contains(*p.last().unwrap()));
            for &v in &p[1..p.len() - 1] {
                assert!(!a.contains(v) && !b.contains(v));
                assert!(internal.insert(v), "internal vertex reused");
            }
        }
        if a.len() > 1 {
            let mut starts = g.empty_set();
            assert!(paths.iter().all(|p| starts.insert(p[0])));
        }
    }

    #[test]
    fn cycle_six() {
        let g = gen::cycle(6);
        let (a, b) = (g.set_of(&[0]), g.set_of(&[3]));
        match vertex_disjoint_paths(&g, &a, &b, 2).unwrap() {
            DisjointPaths::Paths(p) => {
                assert_eq!(p, vec![vec![0, 1, 2, 3], vec![0, 5, 4, 3]]);
            }
            other => panic!("{other:?}"),
        }
        match vertex_disjoint_paths(&g, &a, &b, 3).unwrap() {
            DisjointPaths::Separator { vertices, direct_edge, max_paths } => {
                assert_eq!(vertices.len(), 2);
                assert!(!direct_edge);
                assert_eq!(max_paths, 2);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn k4_has_three_paths() {
        let g = gen::complete(4);
        let r = vertex_disjoint_paths(&g, &g.set_of(&[0]), &g.set_of(&[3]), 3).unwrap();
        let DisjointPaths::Paths(p) = r else { panic!() };
        assert_eq!(p, vec![vec![0, 1, 3], vec![0, 2, 3], vec![0, 3]]);
    }

    #[test]
    fn path_cut_vertex() {
        let g = gen::path(3);
        let r = vertex_disjoint_paths(&g, &g.set_of(&[0]), &g.set_of(&[2]), 2).unwrap();
        assert_eq!(r, DisjointPaths::Separator { vertices: vec![1], direct_edge: false, max_paths: 1 });
    }

    #[test]
    fn overlapping_terminals_rejected() {
        let g = gen::path(3);
        assert!(vertex_disjoint_paths(&g, &g.set_of(&[0, 1]), &g.set_of(&[1]), 1).is_err());
    }

    /// Smallest separator by brute force over vertex subsets of V \ (shared terminals).
    fn brute_min_cut(g: &Graph, a: &VertexSet, b: &VertexSet) -> usize {
        let n = g.order();
        let mut best = usize::MAX;
        for mask in 0u32..(1 << n) {
            let cut = VertexSet::from_iter_in(n, (0..n).filter(|&v| mask >> v & 1 == 1));
            if (a.len() == 1 && a.is_subset(&cut)) || (b.len() == 1 && b.is_subset(&cut)) {
                continue;
            }
            let mut extra = 0;
            let mut gg = crate::graph::GraphBuilder::from_graph(g);
            if a.len() == 1 && b.len() == 1 {
                let (x, y) = (a.first().unwrap(), b.first().unwrap());
                if g.has_edge(x, y) {
                    gg.remove_edge(x, y);
                    extra = 1;
                }
            }
            let h = gg.build();
            let live = cut.complement();
            let sources = a.difference(&cut);
            let dist = h.distances_within(&sources, &live);
            if b.iter().all(|v| cut.contains(v) || dist[v].is_none()) {
                best = best.min(cut.len() + extra);
            }
        }
        best
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(80))]
        #[test]
        fn menger_duality(n in 3usize..10, seed in any::<u64>(), p in 0.1f64..0.8,
                          na in 1usize..3, nb in 1usize..3) {
            let g = gen::gnp_seeded(n, p, seed);
            let a = g.set_of(&(0..na).collect::<Vec<_>>());
            let b = g.set_of(&(n - nb..n).collect::<Vec<_>>());
            prop_assume!(!a.intersects(&b));
            let k = brute_min_cut(&g, &a, &b);
            match vertex_disjoint_paths(&g, &a, &b, k).unwrap() {
                DisjointPaths::Paths(ps) => { prop_assert_eq!(ps.len(), k); check_paths(&g, &a, &b, &ps); }
                other => prop_assert!(false, "expected paths, got {:?}", other),
            }
            match vertex_disjoint_paths(&g, &a, &b, k + 1).unwrap() {
                DisjointPaths::Separator { vertices, direct_edge, max_paths } => {
                    prop_assert_eq!(max_paths, k);
                    prop_assert_eq!(vertices.len() + direct_edge as usize, k);
                }
                other => prop_assert!(false, "expected separator, got {:?}", other),
            }
        }
    }
}
