//! Pósa rotations: for a path `p_1..p_t` and an edge `p_t p_i`, the rotated path
//! `p_1..p_i p_t p_{t−1}..p_{i+1}` keeps the first vertex and the vertex set. Closure
//! under rotations gives the ending-vertex set; rotation plus extension gives long
//! paths; the exact-length connection engine builds on both.

mod connect;

pub use connect::{connect_exact_length, ConnectOutcome, ConnectStep};

use crate::error::{param, Result};
use crate::graph::{Graph, VertexSet};
use crate::search::{longest_path_exhaustive, Budget};
use serde::Serialize;
use std::collections::{HashSet, VecDeque};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RotationState {
    pub base_path: Vec<usize>,
    /// Sorted.
    pub ending_vertices: Vec<usize>,
    /// `derived[i]` is a derived path ending at `ending_vertices[i]`.
    pub derived: Vec<Vec<usize>>,
    /// False when the state cap stopped the closure early.
    pub complete: bool,
}

/// Every single rotation of `p`, pivot index ascending.
fn rotations<'a>(g: &'a Graph, p: &'a [usize]) -> impl Iterator<Item = Vec<usize>> + 'a {
    let t = p.len();
    let end = p[t - 1];
    (0..t.saturating_sub(2)).filter(move |&i| g.has_edge(end, p[i])).map(move |i| {
        let mut q = p[..=i].to_vec();
        q.extend(p[i + 1..].iter().rev());
        q
    })
}

/// Breadth-first closure of `p` under rotations, visiting at most `max_states`
/// distinct paths. Stops early at the first derived path satisfying `stop`.
fn closure(
    g: &Graph,
    p: &[usize],
    max_states: usize,
    mut stop: impl FnMut(&[usize]) -> bool,
) -> (Vec<(usize, Vec<usize>)>, Option<Vec<usize>>, bool) {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut first: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut ends = g.empty_set();
    let mut queue = VecDeque::new();
    seen.insert(p.to_vec());
    queue.push_back(p.to_vec());
    while let Some(q) = queue.pop_front() {
        let end = *q.last().unwrap();
        if ends.insert(end) {
            first.push((end, q.clone()));
        }
        if stop(&q) {
            return (first, Some(q), false);
        }
        for r in rotations(g, &q) {
            if seen.contains(&r) {
                continue;
            }
            if seen.len() >= max_states {
                return (first, None, false);
            }
            seen.insert(r.clone());
            queue.push_back(r);
        }
    }
    (first, None, true)
}

fn check_path(g: &Graph, p: &[usize]) -> Result<()> {
    if p.is_empty() || !g.is_path(p) {
        return param("not a path in the graph");
    }
    Ok(())
}

/// Ending vertices of all paths derived from `p` by rotations.
pub fn ending_vertices(g: &Graph, p: &[usize], max_states: usize) -> Result<RotationState> {
    check_path(g, p)?;
    let (mut first, _, complete) = closure(g, p, max_states, |_| false);
    first.sort_by_key(|(v, _)| *v);
    let (ending_vertices, derived) = first.into_iter().unzip();
    Ok(RotationState { base_path: p.to_vec(), ending_vertices, derived, complete })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PosaVerdict {
    pub holds: bool,
    pub ending_vertices: Vec<usize>,
    /// `|N(S)|`, counting members of `S` that are adjacent to `S`.
    pub neighborhood: usize,
    pub bound: usize,
    pub complete: bool,
}

/// Whether `|N(S)| ≤ 3|S|` for the ending set `S` of `p`. The inequality is only
/// promised when `p` is a longest path from its first vertex; that is not checked.
pub fn check_posa_bound(g: &Graph, p: &[usize], max_states: usize) -> Result<PosaVerdict> {
    let st = ending_vertices(g, p, max_states)?;
    let s = g.set_of(&st.ending_vertices);
    let neighborhood = g.neighborhood(&s).len();
    let bound = 3 * s.len();
    Ok(PosaVerdict {
        holds: neighborhood <= bound,
        ending_vertices: st.ending_vertices,
        neighborhood,
        bound,
        complete: st.complete,
    })
}

/// Extends `p` inside `within` until no derived path has an endpoint with a neighbor
/// in `within` off the path. Returns the final path.
pub(crate) fn rotate_extend(g: &Graph, within: &VertexSet, p: Vec<usize>, max_states: usize) -> Vec<usize> {
    let mut path = p;
    let mut on = g.set_of(&path);
    loop {
        let outside = |q: &[usize], on: &VertexSet| {
            let mut c = g.neighbors(*q.last().unwrap()).intersection(within);
            c.difference_with(on);
            c.first()
        };
        if let Some(w) = outside(&path, &on) {
            path.push(w);
            on.insert(w);
            continue;
        }
        let (_, hit, _) = closure(g, &path, max_states, |q| outside(q, &on).is_some());
        match hit {
            Some(q) => {
                let w = outside(&q, &on).unwrap();
                path = q;
                path.push(w);
                on.insert(w);
            }
            None => return path,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LongestPath {
    pub path: Vec<usize>,
    /// Longest path order from `v` by exhaustive search, on graphs of at most 14 vertices.
    pub exhaustive_max: Option<usize>,
}

/// A path from `v` that rotation-extension cannot lengthen.
pub fn longest_path_from(g: &Graph, v: usize, max_states: usize) -> Result<LongestPath> {
    g.check_vertex(v)?;
    let path = rotate_extend(g, &g.vertex_set(), vec![v], max_states);
    let exhaustive_max = (g.order() <= 14).then(|| {
        let (best, complete) = longest_path_exhaustive(g, v, &mut Budget::unlimited());
        debug_assert!(complete);
        best.len()
    });
    Ok(LongestPath { path, exhaustive_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen;
    use proptest::prelude::*;

    const CAP: usize = 20_000;

    #[test]
    fn path_graph_has_no_rotation() {
        let g = gen::path(5);
        let st = ending_vertices(&g, &[0, 1, 2, 3, 4], CAP).unwrap();
        assert_eq!(st.ending_vertices, vec![4]);
        assert!(st.complete);
    }

    #[test]
    fn five_cycle_ending_set() {
        // 4 ~ 0 gives 0-4-3-2-1; from there only the rotation back is available.
        let g = gen::cycle(5);
        let st = ending_vertices(&g, &[0, 1, 2, 3, 4], CAP).unwrap();
        assert_eq!(st.ending_vertices, vec![1, 4]);
        assert_eq!(st.derived[0], vec![0, 4, 3, 2, 1]);
        let v = check_posa_bound(&g, &[0, 1, 2, 3, 4], CAP).unwrap();
        assert!(v.holds);
        assert_eq!((v.neighborhood, v.bound), (3, 6));
    }

    #[test]
    fn k4_ending_set() {
        let g = gen::complete(4);
        let st = ending_vertices(&g, &[0, 1, 2, 3], CAP).unwrap();
        assert_eq!(st.ending_vertices, vec![1, 2, 3]);
    }

    #[test]
    fn k6_hamiltonian_path_bound() {
        let g = gen::complete(6);
        let v = check_posa_bound(&g, &[2, 0, 1, 3, 4, 5], CAP).unwrap();
        assert!(v.holds);
        assert_eq!(v.ending_vertices, vec![0, 1, 3, 4, 5]);
    }

    #[test]
    fn non_maximal_path_is_reported_as_is() {
        // Star: leaf-center is not maximal; S = {center} and |N(S)| = 4 > 3.
        let g = gen::star(4);
        let v = check_posa_bound(&g, &[1, 0], CAP).unwrap();
        assert!(!v.holds);
        assert!(check_posa_bound(&g, &[1, 2], CAP).is_err());
    }

    #[test]
    fn longest_paths() {
        let k = gen::complete(7);
        assert_eq!(longest_path_from(&k, 3, CAP).unwrap().path.len(), 7);
        let s = gen::star(4);
        assert_eq!(longest_path_from(&s, 0, CAP).unwrap().path.len(), 2);
        assert_eq!(longest_path_from(&s, 2, CAP).unwrap().path.len(), 3);
        let p = gen::petersen();
        let lp = longest_path_from(&p, 0, CAP).unwrap();
        assert!(lp.path.len() >= 9 && p.is_path(&lp.path) && lp.path[0] == 0);
        assert_eq!(lp.exhaustive_max, Some(10));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        /// Every derived path is a path on the same vertex set with the same first vertex.
        #[test]
        fn rotation_closure_preserves_vertex_set(n in 3usize..10, p in 0.3f64..0.9, seed in any::<u64>()) {
            let g = gen::gnp_seeded(n, p, seed);
            let base = rotate_extend(&g, &g.vertex_set(), vec![0], CAP);
            let st = ending_vertices(&g, &base, CAP).unwrap();
            let set = g.set_of(&base);
            for d in &st.derived {
                prop_assert!(g.is_path(d));
                prop_assert_eq!(d[0], base[0]);
                prop_assert_eq!(g.set_of(d), set.clone());
            }
        }

        /// The bound holds wherever exhaustive search certifies the path is longest.
        #[test]
        fn bound_on_certified_longest_paths(n in 3usize..10, p in 0.2f64..0.9, seed in any::<u64>(), v in 0usize..10) {
            let g = gen::gnp_seeded(n, p, seed);
            let v = v % n;
            let (best, complete) = longest_path_exhaustive(&g, v, &mut Budget::unlimited());
            prop_assert!(complete);
            // At most 8! derived paths share a first vertex on 9 vertices.
            let verdict = check_posa_bound(&g, &best, 50_000).unwrap();
            prop_assert!(verdict.holds && verdict.complete);
        }
    }
}
