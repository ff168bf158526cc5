use super::{Budget, Search};
use crate::error::{param, Result};
use crate::graph::{Graph, VertexSet};

struct CycleDfs<'a> {
    g: &'a Graph,
    start: usize,
    allowed: VertexSet,
    dist_to_start: Vec<Option<usize>>,
    path: Vec<usize>,
    on_path: VertexSet,
    budget: &'a mut Budget,
    /// Exact target when `exact`, otherwise a lower bound.
    target: usize,
    exact: bool,
}

enum Step {
    Found,
    Exhausted,
    Continue,
}

impl CycleDfs<'_> {
    fn closes(&self) -> bool {
        let len = self.path.len();
        len >= 3
            && self.g.has_edge(*self.path.last().unwrap(), self.start)
            && if self.exact { len == self.target } else { len >= self.target }
    }

    fn dfs(&mut self) -> Step {
        if !self.budget.tick() {
            return Step::Exhausted;
        }
        if self.closes() {
            return Step::Found;
        }
        let len = self.path.len();
        if self.exact && len >= self.target {
            return Step::Continue;
        }
        let last = *self.path.last().unwrap();
        let mut free = self.allowed.difference(&self.on_path);
        if self.exact {
            // `target - len` more vertices, then the closing edge.
            let need_edges = self.target - len + 1;
            if self.dist_to_start[last].is_none_or(|d| d > need_edges) {
                return Step::Continue;
            }
        }
        // Vertices still reachable from `last`, and whether the cycle can be closed.
        free.insert(last);
        let reach = self.g.reachable_within(last, &free);
        let still_needed = self.target.saturating_sub(len);
        if reach.len() - 1 < still_needed {
            return Step::Continue;
        }
        if !self.g.neighbors(self.start).intersects(&reach) {
            return Step::Continue;
        }
        let mut cands = self.g.neighbors(last).intersection(&self.allowed);
        cands.difference_with(&self.on_path);
        if self.exact && len + 1 == self.target {
            cands.intersect_with(self.g.neighbors(self.start));
        }
        for v in cands.iter() {
            self.path.push(v);
            self.on_path.insert(v);
            match self.dfs() {
                Step::Continue => {}
                other => return other,
            }
            self.path.pop();
            self.on_path.remove(v);
        }
        Step::Continue
    }
}

fn cycle_search(g: &Graph, target: usize, exact: bool, budget: &mut Budget) -> Search<Vec<usize>> {
    let n = g.order();
    if target > n {
        return Search::Absent;
    }
    for s in 0..n {
        if n - s < target.max(3) {
            break;
        }
        let mut allowed = VertexSet::new(n);
        for v in s + 1..n {
            allowed.insert(v);
        }
        let mut within = allowed.clone();
        within.insert(s);
        let dist = g.distances_within(&g.set_of(&[s]), &within);
        let mut on_path = VertexSet::new(n);
        on_path.insert(s);
        let mut dfs = CycleDfs {
            g,
            start: s,
            allowed,
            dist_to_start: dist,
            path: vec![s],
            on_path,
            budget,
            target,
            exact,
        };
        match dfs.dfs() {
            Step::Found => return Search::Found(dfs.path),
            Step::Exhausted => return Search::BudgetExhausted,
            Step::Continue => {}
        }
    }
    Search::Absent
}

/// A cycle with exactly `n` vertices, listed in cyclic order from its smallest vertex.
pub fn find_cycle_exact(g: &Graph, n: usize, budget: &mut Budget) -> Result<Search<Vec<usize>>> {
    if n < 3 {
        return param(format!("cycle length must be at least 3, got {n}"));
    }
    Ok(cycle_search(g, n, true, budget))
}

/// A cycle with at least `n` vertices (and at least 3).
pub fn find_cycle_at_least(
    g: &Graph,
    n: usize,
    budget: &mut Budget,
) -> Result<Search<Vec<usize>>> {
    Ok(cycle_search(g, n.max(3), false, budget))
}

/// Shortens `cycle` by chords toward exactly `n` vertices. Each step takes the chord
/// removing the most vertices without dropping below `n`. Returns the final cycle,
/// whatever its length.
pub fn shorten_cycle_by_chords(g: &Graph, cycle: &[usize], n: usize) -> Vec<usize> {
    let mut c = cycle.to_vec();
    while c.len() > n.max(3) {
        let len = c.len();
        let excess = len - n;
        let mut best: Option<(usize, usize, usize)> = None;
        for i in 0..len {
            for j in i + 2..len {
                // Chord c[i]c[j] drops the j - i - 1 vertices strictly between them.
                if i == 0 && j == len - 1 {
                    continue;
                }
                let drop = j - i - 1;
                if drop <= excess
                    && g.has_edge(c[i], c[j])
                    && best.is_none_or(|(d, _, _)| drop > d)
                {
                    best = Some((drop, i, j));
                }
            }
        }
        let Some((_, i, j)) = best else { break };
        c.drain(i + 1..j);
    }
    c
}
