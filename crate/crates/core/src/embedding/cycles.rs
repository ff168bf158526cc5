use super::forest::embed_trees;
use super::tree::RootedTree;
use crate::error::{construction, param, Result};
use crate::expander::{check_expands_into, CheckMode, ExpansionParams, Verdict};
use crate::graph::{Graph, VertexSet};
use crate::search::{Budget, Search};
use serde::Serialize;
use std::collections::VecDeque;

fn log2(x: f64) -> f64 {
    x.max(1.0).log2()
}

fn bfs_tree(g: &Graph, root: usize) -> (Vec<Option<usize>>, Vec<usize>) {
    let n = g.order();
    let mut dist = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    dist[root] = Some(0);
    let mut q = VecDeque::from([root]);
    while let Some(u) = q.pop_front() {
        for v in g.neighbors(u).iter() {
            if dist[v].is_none() {
                dist[v] = Some(dist[u].unwrap() + 1);
                parent[v] = u;
                q.push_back(v);
            }
        }
    }
    (dist, parent)
}

/// Lexicographically first edge inside the shallowest BFS level from `root` that has
/// one, as `(depth, u, w)`; `None` unless `2·depth + 1 < limit`.
fn first_level_edge(g: &Graph, root: usize, limit: usize) -> Option<(usize, usize, usize)> {
    let mut seen = g.set_of(&[root]);
    let mut level = seen.clone();
    let mut depth = 0;
    loop {
        let mut next = g.neighborhood(&level);
        next.difference_with(&seen);
        depth += 1;
        if next.is_empty() || 2 * depth + 1 >= limit {
            return None;
        }
        for u in next.iter() {
            if let Some(w) = g.neighbors(u).intersection(&next).iter().find(|&w| w > u) {
                return Some((depth, u, w));
            }
        }
        seen.union_with(&next);
        level = next;
    }
}

/// A shortest odd cycle. For each root the shortest odd closed walk through a BFS
/// level edge is formed; the minimum over roots is a cycle. Ties go to the lowest root
/// and then the lexicographically first level edge.
pub fn shortest_odd_cycle(g: &Graph) -> Result<Vec<usize>> {
    if g.bipartition().is_some() {
        return param("graph is bipartite");
    }
    let mut best: Option<(usize, usize, usize, usize)> = None;
    for root in 0..g.order() {
        let limit = best.map_or(usize::MAX, |b| b.0);
        if let Some((d, u, w)) = first_level_edge(g, root, limit) {
            best = Some((2 * d + 1, root, u, w));
        }
    }
    let (_, root, u, w) = best.unwrap();
    let (_, parent) = bfs_tree(g, root);
    let up = |mut v: usize| {
        let mut p = vec![v];
        while v != root {
            v = parent[v];
            p.push(v);
        }
        p
    };
    let mut left = up(u);
    let right = up(w);
    left.reverse();
    let mut cycle = left;
    cycle.extend(&right[..right.len() - 1]);
    let cycle = trim_closed_walk(cycle);
    let c = cycle;
    if !g.is_cycle(&c) || c.len() % 2 == 0 {
        return construction("shortest odd cycle", "level-edge walk is not an odd cycle");
    }
    if let Err(msg) = geodesic_report(g, &c) {
        return construction("shortest odd cycle", msg);
    }
    Ok(c)
}

/// Drops a shared prefix of the two root paths so the walk becomes a cycle.
fn trim_closed_walk(walk: Vec<usize>) -> Vec<usize> {
    // walk = root .. u w .. (back toward root, root excluded)
    let mut w = walk;
    while w.len() >= 3 && w[1] == *w.last().unwrap() {
        w.remove(0);
        let last = w.pop().unwrap();
        w.insert(0, last);
        w.dedup();
    }
    w
}

/// Checks `d_C(x, y) = d_G(x, y)` for all cycle pairs and `|N(v) ∩ C| ≤ 5` for all `v`.
pub fn geodesic_report(g: &Graph, c: &[usize]) -> std::result::Result<(), String> {
    let len = c.len();
    for (i, &x) in c.iter().enumerate() {
        let d = g.distances_within(&g.set_of(&[x]), &g.vertex_set());
        for (j, &y) in c.iter().enumerate() {
            let dc = (i.abs_diff(j)).min(len - i.abs_diff(j));
            if d[y] != Some(dc) {
                return Err(format!("d_C({x},{y}) = {dc} but d_G = {:?}", d[y]));
            }
        }
    }
    let on = g.set_of(c);
    for v in 0..g.order() {
        let k = g.neighbors(v).intersection_len(&on);
        if k > 5 {
            return Err(format!("vertex {v} has {k} neighbors on the cycle"));
        }
    }
    Ok(())
}

/// Shortest `x`–`y` path, held to `16 log m + 4|G|/(βm) + slack`, with the small-set
/// clause at `(Δ − 5, β, m)` checked into `W \ V(P)`.
pub fn short_path_expansion_preserving(
    g: &Graph,
    w: &VertexSet,
    p: ExpansionParams,
    x: usize,
    y: usize,
    slack: usize,
    mode: CheckMode,
) -> Result<(Vec<usize>, Verdict)> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    let path = g
        .shortest_path_within(&g.set_of(&[x]), &g.set_of(&[y]), &g.vertex_set())
        .ok_or_else(|| crate::Error::Construction {
            stage: "short path".into(),
            msg: format!("{x} and {y} are disconnected"),
        })?;
    let bound = 16.0 * log2(p.m as f64) + 4.0 * g.order() as f64 / (p.beta * p.m as f64) + slack as f64;
    if path.len() as f64 > bound {
        return construction("short path", format!("path of order {} exceeds {bound:.2}", path.len()));
    }
    let rest = w.difference(&g.set_of(&path));
    let verdict = check_expands_into(g, &rest, ExpansionParams { delta: p.delta - 5.0, beta: 0.0, m: p.m }, mode)?;
    Ok((path, verdict))
}

#[derive(Clone, Debug, Serialize)]
pub struct LongOddCycle {
    pub cycle: Vec<usize>,
    /// `r` consecutive cycle vertices removed from the residual graph.
    pub reserved: Vec<usize>,
    /// Vertex set of the residual induced subgraph.
    pub residual: Vec<usize>,
    pub case: &'static str,
    pub certificate: Verdict,
}

/// Lexicographically first run of `r` consecutive vertices along the stored order.
pub(crate) fn first_window(cycle: &[usize], r: usize) -> (usize, Vec<usize>) {
    let len = cycle.len();
    (0..len)
        .map(|s| (s, (0..r).map(|k| cycle[(s + k) % len]).collect::<Vec<_>>()))
        .min_by(|a, b| a.1.cmp(&b.1))
        .unwrap()
}

/// Odd cycle with `r + 2 ≤ |C|`, built from a shortest odd cycle: used directly when
/// long enough; otherwise a path of order `r − (|C|−5)/2` is grown off a vertex `x`
/// and closed back to the antipode `y` either by an edge or by a shortest path, with
/// the arc of the right parity. No side conditions or bounds are checked.
pub(crate) fn long_odd_cycle_unchecked(
    g: &Graph,
    r: usize,
    budget: &mut Budget,
) -> Result<(Vec<usize>, &'static str)> {
    let c = shortest_odd_cycle(g)?;
    let l = c.len();
    if l >= r + 2 {
        return Ok((c, "short cycle already long"));
    }
    // r - (l - 5)/2 with l odd and l <= r.
    let s = (2 * r + 5 - l) / 2;
    let on_c = g.set_of(&c);
    let half = l / 2;
    for i in 0..l {
        let x = c[i];
        let y = c[(i + half) % l];
        // Arcs from x to y: forward has half + 1 vertices, backward l - half + 1.
        let fwd: Vec<usize> = (0..=half).map(|k| c[(i + k) % l]).collect();
        let bwd: Vec<usize> = (0..=l - half).map(|k| c[(i + l - k) % l]).collect();
        let allowed = on_c.complement();
        let tree = vec![(x, RootedTree::path(s))];
        let p = match embed_trees(g, &allowed, &tree, budget)? {
            Search::Found(t) => t[0].vertices.clone(),
            _ => continue,
        };
        let z = *p.last().unwrap();
        // Walk P from x to z, then z..y, then the arc from y back to x (x excluded).
        let close = |q_int: &[usize], arc: &[usize]| {
            let mut cyc = p.clone();
            cyc.extend(q_int);
            cyc.extend(arc.iter().rev().take(arc.len() - 1));
            cyc
        };
        if g.has_edge(z, y) {
            let cyc = close(&[], &fwd);
            let cyc = if cyc.len() % 2 == 1 { cyc } else { close(&[], &bwd) };
            return Ok((cyc, "closed by an edge"));
        }
        let mut within = on_c.union(&g.set_of(&p)).complement();
        within.insert(z);
        let Some(q) = g.shortest_path_within(&g.set_of(&[z]), &g.set_of(&[y]), &within) else {
            continue;
        };
        let q_int = &q[1..q.len() - 1];
        let a = close(q_int, &fwd);
        let cyc = if a.len() % 2 == 1 { a } else { close(q_int, &bwd) };
        return Ok((cyc, "closed by a path"));
    }
    construction("long odd cycle", "no vertex of the short odd cycle admits the extension")
}

/// The long odd cycle with its reserved window of `r` vertices and a residual
/// certificate (small-set clause at `(Δ/4 − 7, β − 3, m)` into `V(G) \ V(C)`).
pub fn long_odd_cycle(
    g: &Graph,
    p: ExpansionParams,
    r: usize,
    slack: usize,
    mode: CheckMode,
    budget: &mut Budget,
) -> Result<LongOddCycle> {
    if r % 2 == 0 {
        return param("r must be odd");
    }
    if r > p.m {
        return param(format!("need r <= m, got r = {r}, m = {}", p.m));
    }
    if p.delta < 20.0 || p.beta < 8.0 * p.delta {
        return param("need delta >= 20 and beta >= 8 delta");
    }
    let (cycle, case) = long_odd_cycle_unchecked(g, r, budget)?;
    let upper = r as f64 + 16.0 * log2(p.m as f64) + 5.0 * g.order() as f64 / (p.beta * p.m as f64) + slack as f64;
    if cycle.len() < r + 2 || cycle.len() as f64 > upper || cycle.len() % 2 == 0 || !g.is_cycle(&cycle) {
        return construction(case, format!("cycle of order {} outside [{}, {upper:.2}]", cycle.len(), r + 2));
    }
    let (_, reserved) = first_window(&cycle, r);
    let residual_set = g.set_of(&reserved).complement();
    let target = g.set_of(&cycle).complement();
    let ind = g.induced_subgraph(&residual_set);
    let inv = ind.index_of(g.order());
    let target_local = VertexSet::from_iter_in(ind.map.len(), target.iter().filter_map(|v| inv[v]));
    let dp = ExpansionParams { delta: p.delta / 4.0 - 7.0, beta: 0.0, m: p.m };
    let mut certificate = check_expands_into(&ind.graph, &target_local, dp, mode)?;
    if let Some(s) = certificate.violating_set.as_mut() {
        *s = ind.lift_all(s);
    }
    Ok(LongOddCycle { cycle, reserved, residual: residual_set.to_vec(), case, certificate })
}
