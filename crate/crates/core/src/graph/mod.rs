//! Dense undirected simple graphs on `0..N`, two-colorings of complete graphs, and
//! the induced-subgraph bookkeeping every other module builds on.

pub mod canon;
pub mod gen;
pub mod io;
mod vertex_set;

pub use vertex_set::VertexSet;

use crate::error::{Error, Result};
use std::collections::VecDeque;

/// Immutable simple graph stored as one adjacency bitset per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<VertexSet>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(order={}, edges={:?})", self.order(), self.edges())
    }
}

/// Mutable edge accumulator; `build` freezes it into a [`Graph`].
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    adj: Vec<VertexSet>,
}

impl GraphBuilder {
    pub fn new(order: usize) -> Self {
        GraphBuilder { adj: vec![VertexSet::new(order); order] }
    }

    pub fn from_graph(g: &Graph) -> Self {
        GraphBuilder { adj: g.adj.clone() }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.adj.len();
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, order: n });
            }
        }
        if u == v {
            return Err(Error::Parameter(format!("self-loop at vertex {u}")));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.adj.len() && v < self.adj.len() {
            self.adj[u].remove(v);
            self.adj[v].remove(u);
        }
    }

    pub fn add_path(&mut self, path: &[usize]) -> Result<()> {
        for w in path.windows(2) {
            self.add_edge(w[0], w[1])?;
        }
        Ok(())
    }

    pub fn add_clique(&mut self, vs: &[usize]) -> Result<()> {
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                self.add_edge(u, v)?;
            }
        }
        Ok(())
    }

    pub fn build(self) -> Graph {
        Graph { adj: self.adj }
    }
}

/// An induced subgraph together with the map from its ids back to the host's ids.
#[derive(Clone, Debug)]
pub struct Induced {
    pub graph: Graph,
    /// `map[new] = old`
    pub map: Vec<usize>,
}

impl Induced {
    pub fn lift(&self, v: usize) -> usize {
        self.map[v]
    }

    pub fn lift_all(&self, vs: &[usize]) -> Vec<usize> {
        vs.iter().map(|&v| self.map[v]).collect()
    }

    /// Inverse map from host ids (only those kept) to new ids.
    pub fn index_of(&self, host_order: usize) -> Vec<Option<usize>> {
        let mut inv = vec![None; host_order];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = Some(i);
        }
        inv
    }
}

impl Graph {
    pub fn empty(order: usize) -> Graph {
        GraphBuilder::new(order).build()
    }

    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut b = GraphBuilder::new(order);
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.order() {
            for v in self.adj[u].iter() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.order())
    }

    pub fn set_of(&self, vs: &[usize]) -> VertexSet {
        VertexSet::from_iter_in(self.order(), vs.iter().copied())
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.order() {
            Err(Error::VertexOutOfRange { vertex: v, order: self.order() })
        } else {
            Ok(())
        }
    }

    /// N(S): every vertex adjacent to some member of `s`. May meet `s` itself.
    pub fn neighborhood(&self, s: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.order());
        for v in s.iter() {
            out.union_with(&self.adj[v]);
        }
        out
    }

    /// N_W(S) = N(S) ∩ W.
    pub fn neighborhood_in(&self, s: &VertexSet, w: &VertexSet) -> VertexSet {
        let mut out = self.neighborhood(s);
        out.intersect_with(w);
        out
    }

    /// N(S) ∪ S.
    pub fn closed_neighborhood(&self, s: &VertexSet) -> VertexSet {
        let mut out = self.neighborhood(s);
        out.union_with(s);
        out
    }

    /// Subgraph induced by `keep`, with vertices renumbered in increasing id order.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Induced {
        let map = keep.to_vec();
        let mut inv = vec![usize::MAX; self.order()];
        for (i, &v) in map.iter().enumerate() {
            inv[v] = i;
        }
        let k = map.len();
        let mut adj = vec![VertexSet::new(k); k];
        for (i, &v) in map.iter().enumerate() {
            for u in self.adj[v].iter() {
                if inv[u] != usize::MAX {
                    adj[i].insert(inv[u]);
                }
            }
        }
        Induced { graph: Graph { adj }, map }
    }

    pub fn complement(&self) -> Graph {
        let n = self.order();
        let adj = (0..n)
            .map(|v| {
                let mut s = self.adj[v].complement();
                s.remove(v);
                s
            })
            .collect();
        Graph { adj }
    }

    /// BFS distances from `sources` inside `within` (sources need not lie in `within`).
    pub fn distances_within(&self, sources: &VertexSet, within: &VertexSet) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order()];
        let mut q = VecDeque::new();
        for s in sources.iter() {
            dist[s] = Some(0);
            q.push_back(s);
        }
        while let Some(u) = q.pop_front() {
            let d = dist[u].unwrap();
            for v in self.adj[u].iter() {
                if dist[v].is_none() && within.contains(v) {
                    dist[v] = Some(d + 1);
                    q.push_back(v);
                }
            }
        }
        dist
    }

    /// Shortest path from some vertex of `from` to some vertex of `to`, all internal
    /// vertices in `within`. Ties go to the lowest ids.
    pub fn shortest_path_within(
        &self,
        from: &VertexSet,
        to: &VertexSet,
        within: &VertexSet,
    ) -> Option<Vec<usize>> {
        if let Some(v) = from.intersection(to).first() {
            return Some(vec![v]);
        }
        let n = self.order();
        let mut parent = vec![usize::MAX; n];
        let mut seen = from.clone();
        let mut q: VecDeque<usize> = from.iter().collect();
        while let Some(u) = q.pop_front() {
            for v in self.adj[u].iter() {
                if seen.contains(v) {
                    continue;
                }
                if to.contains(v) {
                    let mut path = vec![v, u];
                    let mut cur = u;
                    while parent[cur] != usize::MAX {
                        cur = parent[cur];
                        path.push(cur);
                    }
                    path.reverse();
                    return Some(path);
                }
                if within.contains(v) {
                    seen.insert(v);
                    parent[v] = u;
                    q.push_back(v);
                }
            }
        }
        None
    }

    /// Connected components of `G[within]`, each sorted, ordered by smallest member.
    pub fn components_within(&self, within: &VertexSet) -> Vec<Vec<usize>> {
        let mut seen = VertexSet::new(self.order());
        let mut out = Vec::new();
        for s in within.iter() {
            if seen.contains(s) {
                continue;
            }
            let mut comp = vec![s];
            seen.insert(s);
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for v in self.adj[u].iter() {
                    if within.contains(v) && seen.insert(v) {
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_within(&self.vertex_set())
    }

    pub fn is_connected(&self) -> bool {
        self.order() <= 1 || self.components().len() == 1
    }

    /// Vertices reachable from `start` inside `within` (start included).
    pub fn reachable_within(&self, start: usize, within: &VertexSet) -> VertexSet {
        let mut seen = VertexSet::new(self.order());
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for v in self.adj[u].iter() {
                if within.contains(v) && seen.insert(v) {
                    stack.push(v);
                }
            }
        }
        seen
    }

    /// Two-coloring of the vertices, if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let n = self.order();
        let mut side: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                let su = side[u].unwrap();
                for v in self.adj[u].iter() {
                    match side[v] {
                        None => {
                            side[v] = Some(!su);
                            q.push_back(v);
                        }
                        Some(sv) if sv == su => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap()).collect())
    }

    /// True iff `path` is a path of `self` (distinct vertices, consecutive ones adjacent).
    pub fn is_path(&self, path: &[usize]) -> bool {
        if path.is_empty() || path.iter().any(|&v| v >= self.order()) {
            return false;
        }
        let mut seen = self.empty_set();
        path.iter().all(|&v| seen.insert(v)) && path.windows(2).all(|w| self.has_edge(w[0], w[1]))
    }

    /// True iff `cycle` lists the vertices of a cycle (at least 3) in cyclic order.
    pub fn is_cycle(&self, cycle: &[usize]) -> bool {
        cycle.len() >= 3
            && self.is_path(cycle)
            && self.has_edge(cycle[0], cycle[cycle.len() - 1])
    }
}

/// A red/blue coloring of the edges of K_N, stored as its red graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoColoring {
    red: Graph,
    blue: Graph,
}

impl TwoColoring {
    pub fn from_red(red: Graph) -> Self {
        let blue = red.complement();
        TwoColoring { red, blue }
    }

    pub fn order(&self) -> usize {
        self.red.order()
    }

    pub fn red(&self) -> &Graph {
        &self.red
    }

    pub fn blue(&self) -> &Graph {
        &self.blue
    }

    pub fn induced(&self, keep: &VertexSet) -> (TwoColoring, Vec<usize>) {
        let ind = self.red.induced_subgraph(keep);
        (TwoColoring::from_red(ind.graph), ind.map)
    }
}
