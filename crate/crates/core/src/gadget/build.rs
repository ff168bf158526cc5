use super::{Gadget, GadgetKind};
use crate::embedding::{connect_pairs_within, embed_trees, first_window, long_odd_cycle_unchecked, EmbeddedTree, RootedTree};
use crate::error::{construction, param, Error, Result};
use crate::expander::extract_multipartite_expander;
use crate::graph::{Graph, VertexSet};
use crate::profile::{ExpanderConstants, Profile};
use crate::search::{Budget, Search};
use serde::Serialize;

/// Working area for the builders: the vertices not yet used by earlier pieces.
pub(crate) struct GadgetHost<'a> {
    pub g: &'a Graph,
    pub free: VertexSet,
    pub tree_order: usize,
    pub budget: Budget,
}

impl<'a> GadgetHost<'a> {
    pub fn new(g: &'a Graph, free: VertexSet, tree_order: usize, budget: Budget) -> Self {
        GadgetHost { g, free, tree_order, budget }
    }

    fn take(&mut self, vs: &[usize]) {
        for &v in vs {
            self.free.remove(v);
        }
    }

    /// Binary trees at `roots`, inside the free area, shrinking until they fit.
    fn trees_at(&mut self, roots: &[usize]) -> Result<Vec<EmbeddedTree>> {
        let mut order = self.tree_order.max(1);
        loop {
            let spec: Vec<(usize, RootedTree)> = roots.iter().map(|&r| (r, RootedTree::binary(order))).collect();
            let allowed = self.free.clone();
            match embed_trees(self.g, &allowed, &spec, &mut self.budget)? {
                Search::Found(t) => {
                    for tree in &t {
                        self.take(&tree.vertices);
                    }
                    return Ok(t);
                }
                _ if order > 1 => order /= 2,
                _ => return construction("endpoint trees", "cannot embed the endpoint trees"),
            }
        }
    }

    /// Shortest path from the root of `from` to the root of `to` through the two trees
    /// and free vertices. Tree vertices off the path are released.
    fn connect_trees(&mut self, from: &EmbeddedTree, to: &EmbeddedTree) -> Result<Vec<usize>> {
        let mut within = self.free.clone();
        for t in [from, to] {
            for &v in &t.vertices[1..] {
                within.insert(v);
            }
        }
        let g = self.g;
        let path = g
            .shortest_path_within(&g.set_of(&[from.root]), &g.set_of(&[to.root]), &within)
            .ok_or_else(|| Error::Construction {
                stage: "connector".into(),
                msg: format!("no path from {} to {}", from.root, to.root),
            })?;
        let on_path = g.set_of(&path);
        for t in [from, to] {
            for &v in &t.vertices[1..] {
                if !on_path.contains(v) {
                    self.free.insert(v);
                }
            }
        }
        self.take(&path);
        Ok(path)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SmallGadget {
    pub gadget: Gadget,
    pub tree_a: EmbeddedTree,
    pub tree_b: EmbeddedTree,
    /// Odd cycle labeled `a, j_1..j_r, x_1..x_t, b, y_t..y_1`.
    pub cycle: Vec<usize>,
    pub cycle_case: &'static str,
    pub pair_paths: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DoublingGadget {
    pub gadget: Gadget,
    pub tree_a: EmbeddedTree,
    pub tree_b: EmbeddedTree,
    /// Shortfalls of the small gadgets in the order they were joined.
    pub levels: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GadgetWithReturn {
    pub gadget: Gadget,
    pub return_path: Vec<usize>,
    /// `|J_1 ∪ J_2 ∪ Q_a ∪ Q_b| − (λ + 2μ)m + 2`, the shortfall taken from `J_1`.
    pub sandwich: usize,
}

/// An `r`-gadget inside the host's free area.
pub(crate) fn small_gadget_in(host: &mut GadgetHost, r: usize) -> Result<SmallGadget> {
    let g = host.g;
    let ind = g.induced_subgraph(&host.free);
    let (local, case) = long_odd_cycle_unchecked(&ind.graph, r, &mut host.budget).map_err(|e| Error::Construction {
        stage: "small gadget: odd cycle".into(),
        msg: e.to_string(),
    })?;
    let cycle = ind.lift_all(&local);
    let len = cycle.len();
    let (start, _) = first_window(&cycle, r);
    // Rotate so the cycle reads a, j_1..j_r, then the rest.
    let at = |k: usize| cycle[(start + len - 1 + k) % len];
    let labeled: Vec<usize> = (0..len).map(at).collect();
    let a = labeled[0];
    let j: Vec<usize> = labeled[1..=r].to_vec();
    let rest = &labeled[r + 1..];
    let t = (rest.len() - 1) / 2;
    let xs: Vec<usize> = rest[..t].to_vec();
    let b = rest[t];
    let ys: Vec<usize> = (1..=t).map(|i| rest[2 * t + 1 - i]).collect();
    host.take(&labeled);
    let pairs: Vec<(usize, usize)> = xs.iter().copied().zip(ys.iter().copied()).collect();
    let pair_paths = if pairs.is_empty() {
        Vec::new()
    } else {
        let allowed = host.free.clone();
        let ps = connect_pairs_within(g, &allowed, &pairs, host.tree_order, &mut host.budget).map_err(|e| {
            Error::Construction { stage: "small gadget: pair paths".into(), msg: e.to_string() }
        })?;
        for p in &ps {
            host.take(p);
        }
        ps
    };
    // Long witness zigzags through the j's; the short one skips them.
    let mut long = vec![a];
    long.extend(&j);
    let mut short = vec![a];
    for i in 0..t {
        let p = &pair_paths[i];
        let forward = i % 2 == 0;
        let leg: Vec<usize> = if forward { p.clone() } else { p.iter().rev().copied().collect() };
        long.extend(&leg);
        short.extend(leg.iter().rev());
    }
    long.push(b);
    short.push(b);
    let mut vertices: Vec<usize> = labeled.clone();
    for p in &pair_paths {
        vertices.extend(&p[1..p.len() - 1]);
    }
    vertices.sort_unstable();
    let gadget = Gadget { vertices, a, b, shortfall: r, kind: GadgetKind::Exact, witnesses: vec![long, short] };
    gadget.check(g)?;
    let mut trees = host.trees_at(&[a, b])?;
    let tree_b = trees.pop().unwrap();
    let tree_a = trees.pop().unwrap();
    Ok(SmallGadget { gadget, tree_a, tree_b, cycle: labeled, cycle_case: case, pair_paths })
}

/// A `(≤2^r)`-gadget: a `1`-gadget joined in turn to gadgets with shortfall `1`, then
/// `2^{s−1} + 1` for `s = 2..r`. Joining a `(≤p)`-gadget to a `q`-gadget with `q ≤ p + 1`
/// covers every shortfall up to `p + q`.
pub(crate) fn doubling_gadget_in(host: &mut GadgetHost, r: usize) -> Result<DoublingGadget> {
    let g = host.g;
    let first = small_gadget_in(host, 1)?;
    let mut cur = Gadget { kind: GadgetKind::Upto, ..first.gadget };
    let tree_a = first.tree_a;
    let mut tree_b = first.tree_b;
    let mut levels = vec![1];
    for s in 1..=r {
        let q = if s == 1 { 1 } else { (1 << (s - 1)) + 1 };
        let p = cur.shortfall;
        let next = small_gadget_in(host, q)?;
        let conn = host.connect_trees(&tree_b, &next.tree_a)?;
        let inner = &conn[1..conn.len() - 1];
        let target = 1usize << s;
        let mut witnesses = Vec::with_capacity(target + 1);
        for i in 0..=target {
            let (left, right) = if i <= p {
                (cur.witness(i).unwrap(), &next.gadget.witnesses[0])
            } else {
                (cur.witness(i - q).unwrap(), &next.gadget.witnesses[1])
            };
            let mut w = left.to_vec();
            w.extend(inner);
            w.extend(right);
            witnesses.push(w);
        }
        let mut vertices = cur.vertices.clone();
        vertices.extend(inner);
        vertices.extend(&next.gadget.vertices);
        vertices.sort_unstable();
        cur = Gadget { vertices, a: cur.a, b: next.gadget.b, shortfall: target, kind: GadgetKind::Upto, witnesses };
        cur.check(g)?;
        tree_b = next.tree_b;
        levels.push(q);
    }
    Ok(DoublingGadget { gadget: cur, tree_a, tree_b, levels })
}

/// A `(≤λm)`-gadget of order exactly `(λ+μ)m` with an internally disjoint return path
/// of order exactly `μm`. `lm` and `mm` are `λm` and `μm`. With `flexible`, `mm` is
/// only a lower bound and the smallest return length that fits the pieces is used.
pub(crate) fn gadget_with_return_in(host: &mut GadgetHost, lm: usize, mm: usize, flexible: bool) -> Result<GadgetWithReturn> {
    let g = host.g;
    if mm < 2 {
        return param("return path needs at least two vertices");
    }
    let r = (lm.max(1) as f64).log2().ceil() as usize;
    let j1 = doubling_gadget_in(host, r)?;
    let j2 = doubling_gadget_in(host, r)?;
    let qa = host.connect_trees(&j1.tree_a, &j2.tree_a)?;
    let qb = host.connect_trees(&j1.tree_b, &j2.tree_b)?;
    let (o1, o2) = (j1.gadget.order(), j2.gadget.order());
    let total = o1 + o2 + qa.len() + qb.len() - 4;
    let mm = if flexible {
        // The shortfall total + 2 − λm − 2μm must lie in [0, λm], and the ring must
        // hold the return path.
        let lower = (total + 2).saturating_sub(2 * lm).div_ceil(2);
        mm.max(lower).max(o2.saturating_sub(lm))
    } else {
        mm
    };
    let target = lm + 2 * mm;
    if total + 2 < target || total + 2 - target > lm {
        return construction(
            "gadget with return",
            format!("sandwich fails: |J1 ∪ J2 ∪ Qa ∪ Qb| = {total}, (λ+2μ)m = {target}, λm = {lm}"),
        );
    }
    let shortfall = total + 2 - target;
    let q1 = j1.gadget.witness(shortfall).unwrap();
    // R runs a2 -> a1 (Qa reversed), through J1, then b1 -> b2.
    let mut ring: Vec<usize> = qa.iter().rev().copied().collect();
    ring.extend(&q1[1..]);
    ring.extend(&qb[1..]);
    debug_assert_eq!(ring.len(), target - o2);
    if ring.len() < mm {
        return construction("gadget with return", format!("connecting ring has {} < μm = {mm} vertices", ring.len()));
    }
    let len = ring.len();
    let i0 = (len - mm) / 2;
    let pre: Vec<usize> = ring[..=i0].iter().rev().copied().collect();
    let post: Vec<usize> = ring[i0 + mm - 1..].iter().rev().copied().collect();
    let mut inner = j2.gadget.clone();
    inner.witnesses.truncate(lm + 1);
    inner.shortfall = lm;
    let gadget = inner.with_pendant_paths(&pre, &post)?;
    gadget.check(g)?;
    let return_path = ring[i0..i0 + mm].to_vec();
    let jset = gadget.vertex_set(g.order());
    let disjoint = return_path[1..mm - 1].iter().all(|&v| !jset.contains(v));
    if gadget.order() != lm + mm || return_path.len() != mm || !disjoint || !g.is_path(&return_path) {
        return construction("gadget with return", "output sizes or disjointness do not match");
    }
    Ok(GadgetWithReturn { gadget, return_path, sandwich: shortfall })
}

fn expander_host<'a>(
    g: &'a Graph,
    m: usize,
    c: ExpanderConstants,
    profile: &Profile,
    tree_order: usize,
    seed: u64,
) -> Result<GadgetHost<'a>> {
    let h = extract_multipartite_expander(g, m, c.big_m, c.delta, c.beta, profile.check_mode(seed)).map_err(|e| {
        Error::Construction { stage: "expander".into(), msg: e.to_string() }
    })?;
    Ok(GadgetHost::new(g, g.set_of(&h.vertices), tree_order, Budget::nodes(profile.budgets.search_nodes)))
}

fn size_check(g: &Graph, need: f64, what: &str) -> Result<()> {
    if (g.order() as f64) < need {
        return param(format!("{what} needs |G| >= {need}, got {}", g.order()));
    }
    Ok(())
}

/// An `r`-gadget with disjoint binary trees at its endpoints, found inside an expander
/// extracted from `g` (whose complement is claimed `K_m^k`-free).
pub fn build_small_gadget(g: &Graph, m: usize, k: usize, r: usize, profile: &Profile, seed: u64) -> Result<SmallGadget> {
    if r % 2 == 0 {
        return param("r must be odd");
    }
    if r > m {
        return param(format!("need r <= m, got r = {r}, m = {m}"));
    }
    size_check(g, profile.small_gadget_factor * (k * m) as f64, "small gadget")?;
    let mut host = expander_host(g, m, profile.small_gadget, profile, profile.tree_order(m), seed)?;
    small_gadget_in(&mut host, r)
}

/// A `(≤2^r)`-gadget with endpoint trees, inside an extracted expander.
pub fn build_doubling_gadget(g: &Graph, m: usize, k: usize, r: usize, profile: &Profile, seed: u64) -> Result<DoublingGadget> {
    if (1usize << r) > m.max(1) {
        return param(format!("need r <= log m, got r = {r}, m = {m}"));
    }
    size_check(g, profile.doubling_gadget_factor * (k * m) as f64, "doubling gadget")?;
    let mut host = expander_host(g, m, profile.doubling_gadget, profile, profile.tree_order(m), seed)?;
    doubling_gadget_in(&mut host, r)
}

/// Checks the gadget-with-return hypotheses and returns `(λm, μm)`.
pub(crate) fn return_gadget_sizes(order: usize, m: usize, k: usize, lambda: f64, mu: f64, profile: &Profile) -> Result<(usize, usize)> {
    let lm = lambda * m as f64;
    let mm = mu * m as f64;
    if lm.fract() != 0.0 || mm.fract() != 0.0 || lm < 1.0 || mm < 2.0 {
        return param("λm and μm must be integers (μm at least 2)");
    }
    if lambda < 2.0 * mu {
        return param(format!("need λ >= 2μ, got λ = {lambda}, μ = {mu}"));
    }
    let need = profile.return_path_constant * lm.powf(0.75);
    if mm < need {
        return param(format!("need μm >= {} (λm)^(3/4) = {need:.1}", profile.return_path_constant));
    }
    let size = profile.n1 * lambda * mu * (k * m) as f64;
    if (order as f64) < size {
        return param(format!("gadget with return needs |G| >= N_1 λ μ k m = {size}, got {order}"));
    }
    Ok((lm as usize, mm as usize))
}

/// A `(≤λm)`-gadget of order `(λ+μ)m` and a return path of order `μm`, inside an
/// expander extracted at scale `λm`.
pub fn build_gadget_with_return(
    g: &Graph,
    m: usize,
    k: usize,
    lambda: f64,
    mu: f64,
    profile: &Profile,
    seed: u64,
) -> Result<GadgetWithReturn> {
    let (lm, mm) = return_gadget_sizes(g.order(), m, k, lambda, mu, profile)?;
    let mut host = expander_host(g, lm, profile.return_gadget, profile, profile.tree_order(lm), seed)?;
    gadget_with_return_in(&mut host, lm, mm, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadget::{verify_gadget, GadgetVerification};
    use crate::graph::gen;

    fn desk() -> Profile {
        Profile::desk()
    }

    fn all_orders(g: &Graph, gd: &Gadget) -> bool {
        let r = verify_gadget(g, &gd.vertex_set(g.order()), gd.a, gd.b, gd.shortfall, gd.kind, &mut Budget::nodes(5_000_000)).unwrap();
        matches!(r, GadgetVerification::Verified { .. })
    }

    #[test]
    fn small_gadgets_on_dense_random_graph() {
        let g = gen::gnp_seeded(400, 0.7, 11);
        for r in [1, 3] {
            let s = build_small_gadget(&g, 4, 2, r, &desk(), 0).unwrap();
            s.gadget.check(&g).unwrap();
            assert_eq!(s.gadget.witnesses[0].len() - s.gadget.witnesses[1].len(), r);
            assert!(s.tree_a.vertices[1..].iter().all(|v| !s.gadget.vertices.contains(v)));
        }
        assert!(build_small_gadget(&g, 4, 2, 2, &desk(), 0).is_err());
    }

    #[test]
    fn small_gadget_with_pair_paths() {
        // A sparse free area forces a long odd cycle with several x/y pairs.
        let g = gen::gnp_seeded(120, 0.06, 3);
        let mut host = GadgetHost::new(&g, g.vertex_set(), 2, Budget::nodes(2_000_000));
        let s = small_gadget_in(&mut host, 5).unwrap();
        s.gadget.check(&g).unwrap();
        assert_eq!(s.gadget.order(), s.gadget.witnesses[0].len());
    }

    #[test]
    fn doubling_gadgets() {
        let g = gen::gnp_seeded(400, 0.7, 5);
        for r in [1usize, 2] {
            let d = build_doubling_gadget(&g, 4, 2, r, &desk(), 0).unwrap();
            d.gadget.check(&g).unwrap();
            let orders: Vec<usize> = d.gadget.witnesses.iter().map(|w| w.len()).collect();
            let n = d.gadget.order();
            assert_eq!(orders, (0..=1 << r).map(|i| n - i).collect::<Vec<_>>());
            if n <= 14 {
                assert!(all_orders(&g, &d.gadget));
            }
        }
        assert!(build_doubling_gadget(&g, 4, 2, 3, &desk(), 0).is_err());
    }

    #[test]
    fn gadget_with_return_sizes() {
        let g = gen::gnp_seeded(520, 0.7, 9);
        let w = build_gadget_with_return(&g, 4, 2, 16.0, 8.0, &desk(), 0).unwrap();
        assert_eq!(w.gadget.order(), 96);
        assert_eq!(w.return_path.len(), 32);
        assert_eq!((w.return_path[0], *w.return_path.last().unwrap()), (w.gadget.a, w.gadget.b));
        assert_eq!(w.gadget.shortfall, 64);
        w.gadget.check(&g).unwrap();
        assert!(build_gadget_with_return(&g, 4, 2, 6.0, 4.0, &desk(), 0).is_err());
    }

    #[test]
    fn gadget_with_return_small_enough_to_verify() {
        // λm = 2, μm = 2 on a free area taken directly: all orders confirmed exhaustively.
        let g = gen::gnp_seeded(60, 0.8, 1);
        let mut host = GadgetHost::new(&g, g.vertex_set(), 1, Budget::nodes(1_000_000));
        match gadget_with_return_in(&mut host, 2, 6, false) {
            Ok(w) => {
                w.gadget.check(&g).unwrap();
                assert_eq!(w.gadget.order(), 8);
                assert!(all_orders(&g, &w.gadget));
            }
            Err(e) => panic!("{e}"),
        }
    }
}
