use super::forest::embed_trees;
use super::tree::RootedTree;
use crate::error::{construction, param, Result};
use crate::expander::ExpansionParams;
use crate::graph::{Graph, VertexSet};
use crate::search::{Budget, Search};

fn log2(x: f64) -> f64 {
    x.max(1.0).log2()
}

/// `8 log m + 2|G|/(βm)`.
pub fn connect_avoiding_bound(order: usize, p: ExpansionParams) -> f64 {
    8.0 * log2(p.m as f64) + 2.0 * order as f64 / (p.beta * p.m as f64)
}

/// `ℓ = 4|G|/(βm) + 10 log(βm)`.
pub fn pair_path_bound(order: usize, p: ExpansionParams) -> f64 {
    let bm = p.beta * p.m as f64;
    4.0 * order as f64 / bm + 10.0 * log2(bm)
}

/// Shortest path from `a` to `b` whose vertices avoid `c`, grown layer by layer from
/// both sides. Side conditions on `|C|` are checked; the output order is held to
/// `8 log m + 2|G|/(βm) + slack`.
pub fn connect_avoiding(
    g: &Graph,
    w: &VertexSet,
    p: ExpansionParams,
    a: &VertexSet,
    b: &VertexSet,
    c: &VertexSet,
    slack: usize,
) -> Result<Vec<usize>> {
    if a.is_empty() || b.is_empty() {
        return param("A and B must be non-empty");
    }
    if a.intersects(b) || a.intersects(c) || b.intersects(c) {
        return param("A, B and C must be disjoint");
    }
    let cw = c.intersection_len(w) as f64;
    let d2 = p.delta - 2.0;
    if d2 * (a.len() as f64) < cw || d2 * (b.len() as f64) < cw {
        return param(format!("need (delta - 2)|A|, (delta - 2)|B| >= |C ∩ W| = {cw}"));
    }
    if p.beta * (p.m as f64) < 2.0 * c.len() as f64 {
        return param(format!("need beta m >= 2|C| = {}", 2 * c.len()));
    }
    let bound = connect_avoiding_bound(g.order(), p) + slack as f64;
    let free = c.complement();
    let path = g.shortest_path_within(a, b, &free).ok_or_else(|| crate::Error::Construction {
        stage: "connect avoiding".into(),
        msg: "the layers grown from A and B never meet".into(),
    })?;
    if path.len() as f64 > bound {
        return construction("connect avoiding", format!("path of order {} exceeds {bound:.2}", path.len()));
    }
    Ok(path)
}

/// Vertex-disjoint `x_i`–`y_i` paths, internal vertices drawn from `allowed`.
///
/// Binary trees of order `tree_order` are embedded at every endpoint, then the tree
/// pairs are joined one at a time by shortest paths that avoid every other tree and
/// every earlier path; each connection is spliced with the two root paths. Tree
/// vertices not used by a path are released.
pub(crate) fn connect_pairs_within(
    g: &Graph,
    allowed: &VertexSet,
    pairs: &[(usize, usize)],
    tree_order: usize,
    budget: &mut Budget,
) -> Result<Vec<Vec<usize>>> {
    let mut ends = g.empty_set();
    for &(x, y) in pairs {
        g.check_vertex(x)?;
        g.check_vertex(y)?;
        if x == y || !ends.insert(x) || !ends.insert(y) {
            return param("pair endpoints must be distinct");
        }
    }
    let allowed = allowed.difference(&ends);
    // Shrink the trees until they fit.
    let mut order = tree_order.max(1);
    let trees = loop {
        let roots: Vec<(usize, RootedTree)> = pairs
            .iter()
            .flat_map(|&(x, y)| [(x, RootedTree::binary(order)), (y, RootedTree::binary(order))])
            .collect();
        match embed_trees(g, &allowed, &roots, budget)? {
            Search::Found(t) => break t,
            _ if order > 1 => order = (order / 2).max(1),
            _ => return construction("connect pairs", "cannot embed even single-vertex trees"),
        }
    };
    let sets: Vec<VertexSet> = trees.iter().map(|t| t.vertex_set(g.order())).collect();
    let mut all_trees = g.empty_set();
    for s in &sets {
        all_trees.union_with(s);
    }
    let mut used = g.empty_set();
    let mut out = Vec::with_capacity(pairs.len());
    for i in 0..pairs.len() {
        let (ta, tb) = (&trees[2 * i], &trees[2 * i + 1]);
        let (sa, sb) = (&sets[2 * i], &sets[2 * i + 1]);
        let mut within = allowed.difference(&all_trees);
        within.difference_with(&used);
        let q = g.shortest_path_within(sa, sb, &within).ok_or_else(|| crate::Error::Construction {
            stage: "connect pairs".into(),
            msg: format!("no path joins the trees at {} and {}", pairs[i].0, pairs[i].1),
        })?;
        let mut path = ta.path_from_root(ta.node_of(q[0]).unwrap());
        path.extend(&q[1..q.len() - 1]);
        let mut tail = tb.path_from_root(tb.node_of(*q.last().unwrap()).unwrap());
        tail.reverse();
        path.extend(tail);
        for &v in &path {
            used.insert(v);
        }
        out.push(path);
    }
    Ok(out)
}

/// Disjoint `x_i`–`y_i` paths of order at most `ℓ + slack`. The endpoints must lie
/// outside `W`, and `(β − 80)m ≥ 4ℓt² + |G \ W|` is checked.
pub fn connect_pairs(
    g: &Graph,
    w: &VertexSet,
    p: ExpansionParams,
    pairs: &[(usize, usize)],
    tree_order_cap: Option<usize>,
    slack: usize,
    budget: &mut Budget,
) -> Result<Vec<Vec<usize>>> {
    let t = pairs.len();
    if pairs.iter().any(|&(x, y)| w.contains(x) || w.contains(y)) {
        return param("pair endpoints must lie outside W");
    }
    let ell = pair_path_bound(g.order(), p);
    let outside = g.order() - w.len();
    let lhs = (p.beta - 80.0) * p.m as f64;
    let rhs = 4.0 * ell * (t * t) as f64 + outside as f64;
    if lhs < rhs {
        return param(format!("need (beta - 80) m >= 4 l t^2 + |G \\ W|: {lhs} < {rhs:.1}"));
    }
    let wanted = (t as f64 * ell).ceil() as usize;
    let order = tree_order_cap.map_or(wanted, |c| wanted.min(c));
    let paths = connect_pairs_within(g, w, pairs, order, budget)?;
    for q in &paths {
        if q.len() as f64 > ell + slack as f64 {
            return construction("connect pairs", format!("path of order {} exceeds {ell:.2}", q.len()));
        }
    }
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen;

    #[test]
    fn complete_graph_direct_edge() {
        let g = gen::complete(10);
        let p = ExpansionParams { delta: 4.0, beta: 2.0, m: 2 };
        let path = connect_avoiding(&g, &g.vertex_set(), p, &g.set_of(&[0]), &g.set_of(&[9]), &g.set_of(&[5]), 2).unwrap();
        assert_eq!(path, vec![0, 9]);
    }

    #[test]
    fn cycle_detour() {
        let g = gen::cycle(8);
        let p = ExpansionParams { delta: 3.0, beta: 1.0, m: 2 };
        let w = g.empty_set();
        let path = connect_avoiding(&g, &w, p, &g.set_of(&[0]), &g.set_of(&[4]), &g.set_of(&[1]), 4).unwrap();
        assert_eq!(path, vec![0, 7, 6, 5, 4]);
    }

    #[test]
    fn avoiding_side_conditions() {
        let g = gen::complete(10);
        let p = ExpansionParams { delta: 4.0, beta: 1.0, m: 1 };
        let c = g.set_of(&[5]);
        assert!(connect_avoiding(&g, &g.vertex_set(), p, &g.set_of(&[0]), &g.set_of(&[9]), &c, 2).is_err());
    }

    fn check_system(g: &Graph, pairs: &[(usize, usize)], paths: &[Vec<usize>]) {
        let mut seen = g.empty_set();
        for (&(x, y), q) in pairs.iter().zip(paths) {
            assert!(g.is_path(q));
            assert_eq!((q[0], *q.last().unwrap()), (x, y));
            for &v in q {
                assert!(seen.insert(v), "paths intersect");
            }
        }
    }

    #[test]
    fn pairs_in_complete_graph() {
        let g = gen::complete(60);
        let pairs = [(0, 1), (2, 3)];
        let w = g.set_of(&[0, 1, 2, 3]).complement();
        // l = 4*60/(2000) + 10 log 2000 ≈ 109.8; (beta - 80) m = 3840 >= 4 l 4 + 4.
        let p = ExpansionParams { delta: 16.0, beta: 1000.0, m: 2 };
        let paths = connect_pairs(&g, &w, p, &pairs, Some(4), 2, &mut Budget::unlimited()).unwrap();
        check_system(&g, &pairs, &paths);
        let single = connect_pairs(&g, &w, p, &[(0, 1)], Some(4), 2, &mut Budget::unlimited()).unwrap();
        assert_eq!(single, vec![vec![0, 1]]);
        let tight = ExpansionParams { delta: 16.0, beta: 100.0, m: 2 };
        assert!(connect_pairs(&g, &w, tight, &pairs, Some(4), 2, &mut Budget::unlimited()).is_err());
    }

    #[test]
    fn pairs_in_sparse_graph_need_detours() {
        // Pairs on a cycle: (0,2) and (5,7) on C_10, each joined by the short side.
        let g = gen::cycle(10);
        let pairs = [(0, 2), (5, 7)];
        let allowed = g.vertex_set();
        let paths = connect_pairs_within(&g, &allowed, &pairs, 1, &mut Budget::unlimited()).unwrap();
        check_system(&g, &pairs, &paths);
        assert_eq!(paths, vec![vec![0, 1, 2], vec![5, 6, 7]]);
    }
}
