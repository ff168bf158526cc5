//! Canonical forms for small graphs (at most 16 vertices) and isomorph-free generation
//! by one-vertex augmentation.
//!
//! Labeling uses equitable-partition refinement plus individualization. Interchangeable
//! twins inside a target cell are branched on once, which keeps empty, complete and
//! disjoint-clique graphs cheap.

use super::{Graph, GraphBuilder};
use rayon::prelude::*;

pub const MAX_ORDER: usize = 16;

/// Graph on at most 16 vertices with bitmask adjacency.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SmallGraph {
    pub n: usize,
    pub adj: [u16; MAX_ORDER],
}

/// Upper-triangle adjacency bits of a labeled small graph, row-major over `i < j`.
pub type Code = u128;

impl SmallGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_ORDER);
        SmallGraph { n, adj: [0; MAX_ORDER] }
    }

    pub fn from_graph(g: &Graph) -> Self {
        let mut s = Self::empty(g.order());
        for (u, v) in g.edges() {
            s.add_edge(u, v);
        }
        s
    }

    pub fn to_graph(&self) -> Graph {
        let mut b = GraphBuilder::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    b.add_edge(u, v).unwrap();
                }
            }
        }
        b.build()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    /// Adds vertex `n` adjacent to the vertices in `mask`.
    pub fn extend(&self, mask: u16) -> SmallGraph {
        let mut g = *self;
        let v = g.n;
        g.n += 1;
        for u in 0..v {
            if mask >> u & 1 == 1 {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn code(&self) -> Code {
        code_under(self, &(0..self.n).collect::<Vec<_>>())
    }

    pub fn from_code(n: usize, code: Code) -> Self {
        let mut g = Self::empty(n);
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if code >> k & 1 == 1 {
                    g.add_edge(i, j);
                }
                k += 1;
            }
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let full: u16 = if self.n == 16 { u16::MAX } else { (1 << self.n) - 1 };
        let mut seen: u16 = 1;
        let mut frontier: u16 = 1;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == full
    }
}

fn code_under(g: &SmallGraph, order: &[usize]) -> Code {
    let n = g.n;
    let mut c: Code = 0;
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(order[i], order[j]) {
                c |= 1 << k;
            }
            k += 1;
        }
    }
    c
}

fn refine(g: &SmallGraph, cells: &mut Vec<Vec<usize>>) {
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            let mut splitter: u16 = 0;
            for &v in &cells[s] {
                splitter |= 1 << v;
            }
            let mut i = 0;
            while i < cells.len() {
                if cells[i].len() > 1 {
                    let count = |v: usize| (g.adj[v] & splitter).count_ones();
                    let c0 = count(cells[i][0]);
                    if cells[i].iter().any(|&v| count(v) != c0) {
                        let mut cell = std::mem::take(&mut cells[i]);
                        cell.sort_by_key(|&v| (count(v), v));
                        let mut parts: Vec<Vec<usize>> = Vec::new();
                        let mut last = None;
                        for v in cell {
                            let c = count(v);
                            if last != Some(c) {
                                parts.push(Vec::new());
                                last = Some(c);
                            }
                            parts.last_mut().unwrap().push(v);
                        }
                        let np = parts.len();
                        cells.splice(i..=i, parts);
                        i += np;
                        changed = true;
                        continue;
                    }
                }
                i += 1;
            }
            s += 1;
        }
        if !changed {
            return;
        }
    }
}

fn twins(g: &SmallGraph, u: usize, v: usize) -> bool {
    let mask = !((1u16 << u) | (1u16 << v));
    g.adj[u] & mask == g.adj[v] & mask
}

fn search(g: &SmallGraph, cells: Vec<Vec<usize>>, best: &mut Option<(Code, Vec<usize>)>) {
    let Some(t) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let code = code_under(g, &order);
        if best.as_ref().is_none_or(|(b, _)| code > *b) {
            *best = Some((code, order));
        }
        return;
    };
    let mut reps: Vec<usize> = Vec::new();
    for &v in &cells[t] {
        if !reps.iter().any(|&r| twins(g, r, v)) {
            reps.push(v);
        }
    }
    for v in reps {
        let mut next = cells.clone();
        let rest: Vec<usize> = next[t].iter().copied().filter(|&x| x != v).collect();
        next.splice(t..=t, [vec![v], rest]);
        refine(g, &mut next);
        search(g, next, best);
    }
}

/// Canonical code and a canonical labeling `order` (position -> original vertex).
pub fn canonical(g: &SmallGraph) -> (Code, Vec<usize>) {
    if g.n == 0 {
        return (0, Vec::new());
    }
    let mut cells = vec![(0..g.n).collect::<Vec<_>>()];
    refine(g, &mut cells);
    let mut best = None;
    search(g, cells, &mut best);
    best.unwrap()
}

pub fn canonical_code(g: &SmallGraph) -> Code {
    canonical(g).0
}

/// All one-vertex extensions of the graphs in `level` (all on `n` vertices) that
/// satisfy `keep`, up to isomorphism, as sorted canonical codes on `n + 1` vertices.
pub fn extend_level<F>(level: &[Code], n: usize, keep: F, threads: usize) -> Vec<Code>
where
    F: Fn(&SmallGraph) -> bool + Sync,
{
    assert!(n < MAX_ORDER);
    let work = |&code: &Code| -> Vec<Code> {
        let g = SmallGraph::from_code(n, code);
        let mut out = Vec::new();
        for mask in 0u32..(1u32 << n) {
            let h = g.extend(mask as u16);
            if keep(&h) {
                out.push(canonical_code(&h));
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    };
    let mut all: Vec<Code> = if threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool");
        pool.install(|| level.par_iter().flat_map_iter(work).collect())
    } else {
        level.iter().flat_map(work).collect()
    };
    all.sort_unstable();
    all.dedup();
    all
}

/// Every graph on `n` vertices up to isomorphism.
pub fn all_graphs(n: usize) -> Vec<SmallGraph> {
    if n == 0 {
        return vec![SmallGraph::empty(0)];
    }
    let mut level = vec![0 as Code];
    for k in 1..n {
        level = extend_level(&level, k, |_| true, 1);
    }
    level.into_iter().map(|c| SmallGraph::from_code(n, c)).collect()
}
