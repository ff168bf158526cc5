use super::tree::RootedTree;
use crate::error::{param, Result};
use crate::expander::{check_expands_into, CheckMode, ExpansionParams, Verdict};
use crate::graph::{Graph, VertexSet};
use crate::search::{Budget, Search};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddedTree {
    pub root: usize,
    /// `vertices[node]` is the image of tree node `node`.
    pub vertices: Vec<usize>,
    pub parent: Vec<Option<usize>>,
}

impl EmbeddedTree {
    /// Image path from the root to the image of `node`.
    pub fn path_from_root(&self, node: usize) -> Vec<usize> {
        let mut out = vec![self.vertices[node]];
        let mut cur = node;
        while let Some(p) = self.parent[cur] {
            out.push(self.vertices[p]);
            cur = p;
        }
        out.reverse();
        out
    }

    /// Node whose image is `v`.
    pub fn node_of(&self, v: usize) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }

    pub fn vertex_set(&self, order: usize) -> VertexSet {
        VertexSet::from_iter_in(order, self.vertices.iter().copied())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddedForest {
    pub trees: Vec<EmbeddedTree>,
    pub residual: Verdict,
}

struct Embedder<'a> {
    g: &'a Graph,
    allowed: &'a VertexSet,
    jobs: Vec<(usize, usize, usize)>,
    images: Vec<Vec<usize>>,
    used: VertexSet,
    budget: &'a mut Budget,
    exhausted: bool,
}

impl Embedder<'_> {
    fn rec(&mut self, k: usize) -> bool {
        if k == self.jobs.len() {
            return true;
        }
        if !self.budget.tick() {
            self.exhausted = true;
            return false;
        }
        let (t, node, parent) = self.jobs[k];
        let anchor = self.images[t][parent];
        let mut cands: Vec<(usize, usize)> = self
            .g
            .neighbors(anchor)
            .intersection(self.allowed)
            .difference(&self.used)
            .iter()
            .map(|v| {
                let free = self.g.neighbors(v).intersection(self.allowed).difference(&self.used).len();
                (free, v)
            })
            .collect();
        // Most free neighbors first, lowest id on ties.
        cands.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, v) in cands {
            self.images[t][node] = v;
            self.used.insert(v);
            if self.rec(k + 1) {
                return true;
            }
            self.used.remove(v);
            if self.exhausted {
                return false;
            }
        }
        false
    }
}

/// Disjoint copies of the trees with roots fixed, non-root nodes mapped into
/// `allowed`. Roots themselves never serve as non-root images.
pub(crate) fn embed_trees(
    g: &Graph,
    allowed: &VertexSet,
    roots: &[(usize, RootedTree)],
    budget: &mut Budget,
) -> Result<Search<Vec<EmbeddedTree>>> {
    let mut used = g.empty_set();
    for &(r, _) in roots {
        g.check_vertex(r)?;
        if !used.insert(r) {
            return param(format!("root {r} repeated"));
        }
    }
    let mut allowed = allowed.difference(&used);
    allowed.intersect_with(&g.vertex_set());
    let mut jobs = Vec::new();
    let mut images = Vec::new();
    let mut parents = Vec::new();
    for (t, (r, tree)) in roots.iter().enumerate() {
        let par = tree.parents();
        for (node, p) in par.iter().enumerate().skip(1) {
            jobs.push((t, node, p.unwrap()));
        }
        let mut img = vec![usize::MAX; tree.order()];
        img[0] = *r;
        images.push(img);
        parents.push(par);
    }
    // Breadth-first across the forest: shallow nodes of every tree before deep ones.
    let depth = |t: usize, mut v: usize| {
        let mut d = 0;
        while let Some(p) = parents[t][v] {
            v = p;
            d += 1;
        }
        d
    };
    jobs.sort_by_key(|&(t, node, _)| (depth(t, node), t, node));
    let mut e = Embedder { g, allowed: &allowed, jobs, images, used, budget, exhausted: false };
    let ok = e.rec(0);
    if !ok {
        return Ok(if e.exhausted { Search::BudgetExhausted } else { Search::Absent });
    }
    let trees = e
        .images
        .into_iter()
        .zip(parents)
        .zip(roots)
        .map(|((vertices, parent), (root, _))| EmbeddedTree { root: *root, vertices, parent })
        .collect();
    Ok(Search::Found(trees))
}

/// Embeds `T(x_i)` rooted at each `x_i`, where the roots are exactly `V(G) \ W` and `G`
/// is claimed to `(4Δ, β, m)`-expand into `W` (so `p.delta` is `4Δ`). The residual
/// small-set clause at `(Δ, β, m)` into `W` minus the images is checked on output; the
/// large-set clause does not depend on the target set and is inherited from the claim.
pub fn embed_forest(
    g: &Graph,
    w: &VertexSet,
    p: ExpansionParams,
    roots: &[(usize, RootedTree)],
    mode: CheckMode,
    budget: &mut Budget,
) -> Result<EmbeddedForest> {
    let root_set = VertexSet::from_iter_in(g.order(), roots.iter().map(|r| r.0));
    if root_set != w.complement() {
        return param("roots must be exactly the vertices outside W");
    }
    let delta = p.delta / 4.0;
    if 20.0 * delta > p.beta {
        return param(format!("need 20*delta <= beta with delta = {delta}"));
    }
    if let Some((r, t)) = roots.iter().find(|(_, t)| t.max_degree() as f64 > delta) {
        return param(format!("tree at {r} has maximum degree {} > {delta}", t.max_degree()));
    }
    let total: usize = roots.iter().map(|(_, t)| t.order()).sum();
    let cap = (p.beta - 10.0 * delta) * p.m as f64;
    if total as f64 > cap {
        return param(format!("trees have {total} vertices in total, more than (beta - 10 delta) m = {cap}"));
    }
    let trees = match embed_trees(g, w, roots, budget)? {
        Search::Found(t) => t,
        Search::Absent => return crate::error::construction("embed forest", "no embedding exists"),
        Search::BudgetExhausted => {
            return crate::error::construction("embed forest", "backtracking budget exhausted")
        }
    };
    let mut rest = w.clone();
    for t in &trees {
        for &v in &t.vertices {
            rest.remove(v);
        }
    }
    let residual = check_expands_into(g, &rest, ExpansionParams { delta, beta: 0.0, m: p.m }, mode)?;
    Ok(EmbeddedForest { trees, residual })
}
