//! Standard graph families and seeded random graphs.

use super::{Graph, GraphBuilder};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complete(n: usize) -> Graph {
    let mut b = GraphBuilder::new(n);
    b.add_clique(&(0..n).collect::<Vec<_>>()).unwrap();
    b.build()
}

pub fn path(n: usize) -> Graph {
    let mut b = GraphBuilder::new(n);
    b.add_path(&(0..n).collect::<Vec<_>>()).unwrap();
    b.build()
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    let mut b = GraphBuilder::new(n);
    b.add_path(&(0..n).collect::<Vec<_>>()).unwrap();
    b.add_edge(n - 1, 0).unwrap();
    b.build()
}

pub fn star(leaves: usize) -> Graph {
    let mut b = GraphBuilder::new(leaves + 1);
    for v in 1..=leaves {
        b.add_edge(0, v).unwrap();
    }
    b.build()
}

/// Outer 5-cycle 0..5, inner pentagram 5..10, spokes i ~ i+5.
pub fn petersen() -> Graph {
    let mut b = GraphBuilder::new(10);
    for i in 0..5 {
        b.add_edge(i, (i + 1) % 5).unwrap();
        b.add_edge(5 + i, 5 + (i + 2) % 5).unwrap();
        b.add_edge(i, i + 5).unwrap();
    }
    b.build()
}

/// Complete multipartite graph; parts are consecutive id ranges in the given order.
pub fn complete_multipartite(sizes: &[usize]) -> Graph {
    let n: usize = sizes.iter().sum();
    let mut part = Vec::with_capacity(n);
    for (i, &s) in sizes.iter().enumerate() {
        part.extend(std::iter::repeat(i).take(s));
    }
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if part[u] != part[v] {
                b.add_edge(u, v).unwrap();
            }
        }
    }
    b.build()
}

/// Vertex-disjoint union of cliques with the given sizes, in order.
pub fn disjoint_cliques(sizes: &[usize]) -> Graph {
    complete_multipartite(sizes).complement()
}

pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let n = a.order();
    let mut bl = GraphBuilder::new(n + b.order());
    for (u, v) in a.edges() {
        bl.add_edge(u, v).unwrap();
    }
    for (u, v) in b.edges() {
        bl.add_edge(u + n, v + n).unwrap();
    }
    bl.build()
}

pub fn gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                b.add_edge(u, v).unwrap();
            }
        }
    }
    b.build()
}

pub fn gnp_seeded(n: usize, p: f64, seed: u64) -> Graph {
    gnp(n, p, &mut rng(seed))
}
