use super::{Budget, Search};
use crate::error::{param, Result};
use crate::graph::{Graph, VertexSet};

/// True iff `parts` are pairwise disjoint and every cross pair is an edge.
pub fn is_complete_multipartite(g: &Graph, parts: &[Vec<usize>]) -> bool {
    let mut seen = g.empty_set();
    for p in parts {
        for &v in p {
            if v >= g.order() || !seen.insert(v) {
                return false;
            }
        }
    }
    for (i, p) in parts.iter().enumerate() {
        for q in &parts[i + 1..] {
            for &u in p {
                for &v in q {
                    if !g.has_edge(u, v) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

struct Finder<'a> {
    g: &'a Graph,
    sizes: Vec<usize>,
    /// Largest smaller vertex with the same open neighborhood, if any.
    prev_twin: Vec<Option<usize>>,
    parts: Vec<Vec<usize>>,
    budget: &'a mut Budget,
    exhausted: bool,
}

impl Finder<'_> {
    /// Greedy coloring count of `G[cand]`, an upper bound on its clique number.
    fn color_bound(&self, cand: &VertexSet) -> usize {
        let mut classes: Vec<VertexSet> = Vec::new();
        for v in cand.iter() {
            let nv = self.g.neighbors(v);
            match classes.iter_mut().find(|c| !c.intersects(nv)) {
                Some(c) => {
                    c.insert(v);
                }
                None => {
                    let mut c = VertexSet::new(self.g.order());
                    c.insert(v);
                    classes.push(c);
                }
            }
        }
        classes.len()
    }

    fn rest_total(&self, idx: usize) -> usize {
        self.sizes[idx + 1..].iter().sum()
    }

    fn place_part(&mut self, idx: usize, cand: &VertexSet) -> bool {
        if idx == self.sizes.len() {
            return true;
        }
        let remaining = self.sizes.len() - idx;
        if cand.len() < self.sizes[idx..].iter().sum::<usize>() {
            return false;
        }
        if remaining > 1 && self.color_bound(cand) < remaining {
            return false;
        }
        let min_start = if idx > 0 && self.sizes[idx] == self.sizes[idx - 1] {
            Some(self.parts[idx - 1][0])
        } else {
            None
        };
        let order: Vec<usize> = cand.iter().collect();
        let mut x = Vec::with_capacity(self.sizes[idx]);
        self.grow(idx, cand, &order, 0, &mut x, cand.clone(), min_start)
    }

    #[allow(clippy::too_many_arguments)]
    fn grow(
        &mut self,
        idx: usize,
        cand: &VertexSet,
        order: &[usize],
        from: usize,
        x: &mut Vec<usize>,
        common: VertexSet,
        min_start: Option<usize>,
    ) -> bool {
        if !self.budget.tick() {
            self.exhausted = true;
            return false;
        }
        let size = self.sizes[idx];
        if x.len() == size {
            let mut rest = common;
            for &v in x.iter() {
                rest.remove(v);
            }
            if rest.len() < self.rest_total(idx) {
                return false;
            }
            self.parts.push(x.clone());
            if self.place_part(idx + 1, &rest) {
                return true;
            }
            self.parts.pop();
            return false;
        }
        let need = size - x.len();
        for pos in from..order.len() {
            if order.len() - pos < need {
                break;
            }
            let v = order[pos];
            if x.is_empty() && min_start.is_some_and(|m| v <= m) {
                continue;
            }
            if let Some(u) = self.prev_twin[v] {
                if cand.contains(u) && !x.contains(&u) {
                    continue;
                }
            }
            let mut next = common.intersection(self.g.neighbors(v));
            for &w in x.iter() {
                next.remove(w);
            }
            next.remove(v);
            if next.len() < self.rest_total(idx) {
                continue;
            }
            x.push(v);
            if self.grow(idx, cand, order, pos + 1, x, next, min_start) {
                return true;
            }
            x.pop();
            if self.exhausted {
                return false;
            }
        }
        false
    }
}

/// A copy of the complete multipartite graph with part sizes `sizes` in `g`. Parts
/// come back ordered largest first, each sorted.
pub fn find_complete_multipartite(
    g: &Graph,
    sizes: &[usize],
    budget: &mut Budget,
) -> Result<Search<Vec<Vec<usize>>>> {
    if sizes.is_empty() {
        return param("part sizes must be non-empty");
    }
    if sizes.contains(&0) {
        return param("part sizes must be positive");
    }
    let mut sizes = sizes.to_vec();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let n = g.order();
    if sizes.len() == 1 {
        return Ok(if n >= sizes[0] {
            Search::Found(vec![(0..sizes[0]).collect()])
        } else {
            Search::Absent
        });
    }
    // Non-adjacent vertices with identical neighborhoods are interchangeable and can
    // only ever share a part, so each part takes a prefix of every twin class.
    let mut prev_twin = vec![None; n];
    for v in 0..n {
        for u in (0..v).rev() {
            if !g.has_edge(u, v) && g.neighbors(u) == g.neighbors(v) {
                prev_twin[v] = Some(u);
                break;
            }
        }
    }
    let mut f = Finder { g, sizes, prev_twin, parts: Vec::new(), budget, exhausted: false };
    let all = g.vertex_set();
    let found = f.place_part(0, &all);
    Ok(if found {
        Search::Found(f.parts)
    } else if f.exhausted {
        Search::BudgetExhausted
    } else {
        Search::Absent
    })
}
