//! Paths inside expanders: short connections, connectivity certificates, and paths
//! whose order lies in `[10m, 12m]`.

use super::check::DmnParams;
use crate::error::{construction, param, Result};
use crate::graph::{Graph, VertexSet};
use crate::search::{
    find_cycle_at_least, vertex_disjoint_paths_within, Budget, DisjointPaths, Search,
};
use serde::Serialize;

/// Shortest `x`–`y` path inside `h`, rejected when its order exceeds `3·log₂ m + 2`.
pub fn expander_short_path(
    g: &Graph,
    h: &VertexSet,
    p: DmnParams,
    x: usize,
    y: usize,
) -> Result<Vec<usize>> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if !h.contains(x) || !h.contains(y) {
        return param("endpoints must lie in the expander");
    }
    let bound = 3.0 * (p.m.max(1) as f64).log2() + 2.0;
    let path = g
        .shortest_path_within(&g.set_of(&[x]), &g.set_of(&[y]), h)
        .ok_or_else(|| crate::Error::Construction {
            stage: "short path".into(),
            msg: format!("{x} and {y} are disconnected inside the expander"),
        })?;
    if path.len() as f64 > bound {
        return construction(
            "short path",
            format!("shortest path has order {} > {bound:.2}", path.len()),
        );
    }
    Ok(path)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Connectivity {
    Connected,
    /// Removing `cut` (fewer than `d` vertices) disconnects `G[h]`, or leaves at most
    /// one vertex when `h` is too small to be `d`-connected.
    Cut { cut: Vec<usize> },
}

/// Exact `d`-connectivity of `G[h]` by local connectivity over all non-adjacent pairs.
pub fn expander_connectivity(g: &Graph, h: &VertexSet, d: usize) -> Result<Connectivity> {
    let vs = h.to_vec();
    if vs.len() <= d {
        return Ok(Connectivity::Cut { cut: vs[..vs.len().saturating_sub(1)].to_vec() });
    }
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            if g.has_edge(u, v) {
                continue;
            }
            let r = vertex_disjoint_paths_within(g, h, &g.set_of(&[u]), &g.set_of(&[v]), d)?;
            if let DisjointPaths::Separator { vertices, .. } = r {
                return Ok(Connectivity::Cut { cut: vertices });
            }
        }
    }
    Ok(Connectivity::Connected)
}

/// An `x`–`y` path inside `h` with `10m ≤ order ≤ 12m`.
///
/// A cycle of order at least `20m` is found in `h − x − y`, joined to `x` and `y` by two
/// disjoint paths, and the longer of its two arcs is kept; chords then cut the path down.
pub fn expander_long_path(
    g: &Graph,
    h: &VertexSet,
    p: DmnParams,
    x: usize,
    y: usize,
    budget: &mut Budget,
) -> Result<Vec<usize>> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    let m = p.m;
    if m == 0 {
        return param("m must be positive");
    }
    if h.len() < 61 * m {
        return param(format!("need |H| >= 61m = {}, got {}", 61 * m, h.len()));
    }
    if x == y || !h.contains(x) || !h.contains(y) {
        return param("endpoints must be distinct vertices of the expander");
    }
    let (lo, hi) = (10 * m, 12 * m);
    let mut rest = h.clone();
    rest.remove(x);
    rest.remove(y);
    let ind = g.induced_subgraph(&rest);
    let cycle = match find_cycle_at_least(&ind.graph, 20 * m, budget)? {
        Search::Found(c) => ind.lift_all(&c),
        Search::Absent => return construction("long path", format!("no cycle of order >= {}", 20 * m)),
        Search::BudgetExhausted => return construction("long path", "budget exhausted looking for a long cycle"),
    };
    let on_cycle = g.set_of(&cycle);
    let links = match vertex_disjoint_paths_within(g, h, &g.set_of(&[x, y]), &on_cycle, 2)? {
        DisjointPaths::Paths(ps) => ps,
        DisjointPaths::Separator { vertices, .. } => {
            return construction("long path", format!("{{x, y}} separated from the cycle by {vertices:?}"))
        }
    };
    let px = links.iter().find(|q| q[0] == x).unwrap();
    let py = links.iter().find(|q| q[0] == y).unwrap();
    let (cx, cy) = (*px.last().unwrap(), *py.last().unwrap());
    let len = cycle.len();
    let ix = cycle.iter().position(|&v| v == cx).unwrap();
    let iy = cycle.iter().position(|&v| v == cy).unwrap();
    let forward: Vec<usize> = (0..len).map(|k| cycle[(ix + k) % len]).take((iy + len - ix) % len + 1).collect();
    let backward: Vec<usize> = (0..len).map(|k| cycle[(ix + len - k) % len]).take((ix + len - iy) % len + 1).collect();
    let arc = if forward.len() >= backward.len() { forward } else { backward };
    let mut path: Vec<usize> = px[..px.len() - 1].to_vec();
    path.extend(&arc);
    path.extend(py[..py.len() - 1].iter().rev());
    while path.len() > hi {
        let excess_max = path.len() - lo;
        let mut best: Option<(usize, usize)> = None;
        for i in 0..path.len() {
            for j in i + 2..path.len().min(i + excess_max + 2) {
                if g.has_edge(path[i], path[j]) && best.is_none_or(|(a, b)| j - i > b - a) {
                    best = Some((i, j));
                }
            }
        }
        let Some((i, j)) = best else {
            return construction("long path", format!("no chord shortens a path of order {}", path.len()));
        };
        path.drain(i + 1..j);
    }
    if path.len() < lo {
        return construction("long path", format!("path of order {} is below 10m", path.len()));
    }
    debug_assert!(g.is_path(&path));
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen;

    fn dmn(m: usize) -> DmnParams {
        DmnParams { d: 3.0, m, n: 0 }
    }

    #[test]
    fn short_paths() {
        let k = gen::complete(16);
        assert_eq!(expander_short_path(&k, &k.vertex_set(), dmn(16), 0, 5).unwrap(), vec![0, 5]);
        let c = gen::cycle(4);
        let p = expander_short_path(&c, &c.vertex_set(), dmn(2), 0, 2).unwrap();
        assert_eq!(p.len(), 3);
        let two = gen::disjoint_cliques(&[3, 3]);
        assert!(expander_short_path(&two, &two.vertex_set(), dmn(4), 0, 4).is_err());
        // Too long for the bound: P_8 end to end with m = 2 (bound 5).
        let p8 = gen::path(8);
        assert!(expander_short_path(&p8, &p8.vertex_set(), dmn(2), 0, 7).is_err());
    }

    #[test]
    fn connectivity_verdicts() {
        let k6 = gen::complete(6);
        assert_eq!(expander_connectivity(&k6, &k6.vertex_set(), 5).unwrap(), Connectivity::Connected);
        let p5 = gen::path(5);
        let Connectivity::Cut { cut } = expander_connectivity(&p5, &p5.vertex_set(), 2).unwrap() else {
            panic!()
        };
        assert_eq!(cut.len(), 1);
        assert!((1..4).contains(&cut[0]));
        let c6 = gen::cycle(6);
        assert_eq!(expander_connectivity(&c6, &c6.vertex_set(), 2).unwrap(), Connectivity::Connected);
        let Connectivity::Cut { cut } = expander_connectivity(&c6, &c6.vertex_set(), 3).unwrap() else {
            panic!()
        };
        assert_eq!(cut.len(), 2);
        let mut rest = c6.vertex_set();
        for v in &cut {
            rest.remove(*v);
        }
        assert!(c6.components_within(&rest).len() > 1);
    }

    #[test]
    fn long_path_in_complete_graph() {
        let g = gen::complete(130);
        let p = expander_long_path(&g, &g.vertex_set(), dmn(2), 0, 1, &mut Budget::unlimited()).unwrap();
        assert!((20..=24).contains(&p.len()));
        assert_eq!((p[0], *p.last().unwrap()), (0, 1));
        assert!(g.is_path(&p));
    }

    #[test]
    fn long_path_in_dense_random_graph() {
        let g = gen::gnp_seeded(200, 0.8, 7);
        let p = expander_long_path(&g, &g.vertex_set(), dmn(3), 4, 9, &mut Budget::nodes(1_000_000)).unwrap();
        assert!((30..=36).contains(&p.len()));
        assert_eq!((p[0], *p.last().unwrap()), (4, 9));
        assert!(g.is_path(&p));
    }

    #[test]
    fn long_path_needs_large_host() {
        let g = gen::complete(100);
        assert!(expander_long_path(&g, &g.vertex_set(), dmn(2), 0, 1, &mut Budget::unlimited()).is_err());
    }
}
