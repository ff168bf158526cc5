use super::{Budget, Search};
use crate::error::{param, Result};
use crate::graph::{Graph, VertexSet};

struct PathDfs<'a> {
    g: &'a Graph,
    within: &'a VertexSet,
    target: usize,
    end: usize,
    dist_to_end: Vec<Option<usize>>,
    path: Vec<usize>,
    on_path: VertexSet,
    budget: &'a mut Budget,
    exhausted: bool,
}

impl PathDfs<'_> {
    fn dfs(&mut self) -> bool {
        if !self.budget.tick() {
            self.exhausted = true;
            return false;
        }
        let last = *self.path.last().unwrap();
        let len = self.path.len();
        if last == self.end {
            return len == self.target;
        }
        let edges_left = self.target - len;
        if self.dist_to_end[last].is_none_or(|d| d > edges_left) {
            return false;
        }
        let mut free = self.within.difference(&self.on_path);
        free.insert(last);
        let reach = self.g.reachable_within(last, &free);
        if !reach.contains(self.end) || reach.len() - 1 < edges_left {
            return false;
        }
        let mut cands = self.g.neighbors(last).intersection(&reach);
        cands.remove(last);
        if edges_left > 1 {
            cands.remove(self.end);
        }
        for v in cands.iter() {
            self.path.push(v);
            self.on_path.insert(v);
            if self.dfs() {
                return true;
            }
            self.path.pop();
            self.on_path.remove(v);
            if self.exhausted {
                return false;
            }
        }
        false
    }
}

/// An `a`–`b` path with exactly `order` vertices, all inside `within`.
pub fn find_path_of_order(
    g: &Graph,
    within: &VertexSet,
    a: usize,
    b: usize,
    order: usize,
    budget: &mut Budget,
) -> Result<Search<Vec<usize>>> {
    g.check_vertex(a)?;
    g.check_vertex(b)?;
    if !within.contains(a) || !within.contains(b) {
        return param("path endpoints must lie in the host set");
    }
    if a == b {
        return Ok(if order == 1 { Search::Found(vec![a]) } else { Search::Absent });
    }
    if order < 2 || order > within.len() {
        return Ok(Search::Absent);
    }
    let dist = g.distances_within(&g.set_of(&[b]), within);
    let mut on_path = g.empty_set();
    on_path.insert(a);
    let mut d = PathDfs {
        g,
        within,
        target: order,
        end: b,
        dist_to_end: dist,
        path: vec![a],
        on_path,
        budget,
        exhausted: false,
    };
    Ok(if d.dfs() {
        Search::Found(d.path)
    } else if d.exhausted {
        Search::BudgetExhausted
    } else {
        Search::Absent
    })
}

/// A longest path starting at `v`, by exhaustive DFS. The flag is false when the
/// budget ran out, in which case the path is only the best seen.
pub fn longest_path_exhaustive(g: &Graph, v: usize, budget: &mut Budget) -> (Vec<usize>, bool) {
    fn rec(
        g: &Graph,
        path: &mut Vec<usize>,
        on: &mut VertexSet,
        best: &mut Vec<usize>,
        budget: &mut Budget,
    ) -> bool {
        if !budget.tick() {
            return false;
        }
        if path.len() > best.len() {
            *best = path.clone();
            if best.len() == g.order() {
                return true;
            }
        }
        let last = *path.last().unwrap();
        let mut free = on.complement();
        free.insert(last);
        if g.reachable_within(last, &free).len() + path.len() - 1 <= best.len() {
            return true;
        }
        let cands = g.neighbors(last).difference(on);
        for u in cands.iter() {
            path.push(u);
            on.insert(u);
            let ok = rec(g, path, on, best, budget);
            path.pop();
            on.remove(u);
            if !ok {
                return false;
            }
        }
        true
    }
    let mut best = vec![v];
    let mut on = g.empty_set();
    on.insert(v);
    let complete = rec(g, &mut vec![v], &mut on, &mut best, budget);
    (best, complete)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen;

    #[test]
    fn cycle_paths_between_adjacent_vertices() {
        let g = gen::cycle(5);
        let all = g.vertex_set();
        let mut b = Budget::unlimited();
        assert_eq!(find_path_of_order(&g, &all, 0, 1, 2, &mut b).unwrap().found(), Some(vec![0, 1]));
        assert_eq!(
            find_path_of_order(&g, &all, 0, 1, 5, &mut b).unwrap().found(),
            Some(vec![0, 4, 3, 2, 1])
        );
        assert!(find_path_of_order(&g, &all, 0, 1, 3, &mut b).unwrap().is_absent());
    }

    #[test]
    fn k4_all_orders() {
        let g = gen::complete(4);
        let all = g.vertex_set();
        for order in 2..=4 {
            let p = find_path_of_order(&g, &all, 0, 3, order, &mut Budget::unlimited())
                .unwrap()
                .found()
                .unwrap();
            assert_eq!(p.len(), order);
            assert!(g.is_path(&p));
        }
    }

    #[test]
    fn petersen_longest_path() {
        let (p, complete) = longest_path_exhaustive(&gen::petersen(), 0, &mut Budget::unlimited());
        assert!(complete);
        assert_eq!(p.len(), 10);
    }

    #[test]
    fn star_longest_paths() {
        let g = gen::star(4);
        assert_eq!(longest_path_exhaustive(&g, 0, &mut Budget::unlimited()).0.len(), 2);
        assert_eq!(longest_path_exhaustive(&g, 1, &mut Budget::unlimited()).0.len(), 3);
    }
}
