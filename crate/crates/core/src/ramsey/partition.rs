use super::engines::bfs_order;
use super::{StageStatus, Trace};
use crate::error::{param, Error, Result};
use crate::graph::{Graph, TwoColoring, VertexSet};
use crate::profile::Profile;
use crate::search::{vertex_disjoint_paths_within, DisjointPaths};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    /// `A_1..A_{k−1}`, each sorted, ordered by smallest vertex.
    pub parts: Vec<Vec<usize>>,
    /// The separator `S`, sorted.
    pub leftover: Vec<usize>,
    /// `x_i = max(0, |A_i| − n)`.
    pub surplus: Vec<usize>,
    pub trace: Trace,
}

/// Splits the red graph into `k − 1` parts with no red edges between them, after
/// removing a small set `S`.
///
/// Separator rounds: in every component of `R − S` with at least `4m` vertices, two
/// anchor `2m`-sets are taken from the ends of a breadth-first order; when fewer than
/// `k^e` disjoint paths join them, a minimum separator is added to `S`. Components of
/// the final `R − S` are then packed into `k − 1` parts, largest first into the
/// currently smallest part. The result is certified: no cross edges, every part of
/// order at least `m`, and `|S|` within the profile bound.
pub fn partition_structure(c: &TwoColoring, n: usize, m: usize, k: usize, profile: &Profile) -> Result<Partition> {
    if k < 2 || m == 0 || n < 3 {
        return param("need k >= 2, m >= 1 and n >= 3");
    }
    let red = c.red();
    let mut trace = Trace::default();
    let nm = profile.n3_partition * m as f64;
    trace.hypothesis("threshold", n as f64 >= nm, format!("n = {n}, N_3 m = {nm}"));
    let mk = k.saturating_pow(profile.exp_partition);
    trace.hypothesis("part size", m >= mk, format!("m = {m}, k^e = {mk}"));
    trace.push("freeness", StageStatus::Assumed, "red has no C_n and blue has no K_m^k");

    let want = k.saturating_pow(profile.exp_paths);
    let bound = k.saturating_pow(profile.exp_leftover).saturating_add(profile.slack);
    let mut s = red.empty_set();
    if want > 2 * m {
        trace.push("separators", StageStatus::Skipped, format!("k^e = {want} exceeds the anchor size 2m"));
    } else {
        separator_rounds(red, m, want, bound, &mut s, &mut trace);
    }

    let rest = s.complement();
    let mut comps = red.components_within(&rest);
    comps.sort_by_key(|c| (std::cmp::Reverse(c.len()), c[0]));
    let mut parts: Vec<Vec<usize>> = vec![Vec::new(); k - 1];
    for comp in comps {
        let i = (0..k - 1).min_by_key(|&i| (parts[i].len(), i)).unwrap();
        parts[i].extend(comp);
    }
    for p in &mut parts {
        p.sort_unstable();
    }
    parts.sort_by_key(|p| p.first().copied().unwrap_or(usize::MAX));
    let surplus: Vec<usize> = parts.iter().map(|p| p.len().saturating_sub(n)).collect();
    trace.push("pack", StageStatus::Ok, format!("sizes {:?}, surplus x_i {surplus:?}", parts.iter().map(|p| p.len()).collect::<Vec<_>>()));

    let fail = |trace: &Trace, msg: String| -> Result<Partition> {
        let stages: Vec<String> = trace.0.iter().map(|r| format!("{}: {}", r.stage, r.detail)).collect();
        Err(Error::Construction { stage: "partition".into(), msg: format!("{msg}; trace {stages:?}") })
    };
    let cross = cross_edge(red, &parts);
    assert!(cross.is_none(), "parts are unions of components of R - S, found cross edge {cross:?}");
    if let Some(p) = parts.iter().find(|p| p.len() < m) {
        return fail(&trace, format!("a part has {} < m = {m} vertices", p.len()));
    }
    if s.len() > bound {
        return fail(&trace, format!("|S| = {} exceeds the bound {bound}", s.len()));
    }
    trace.push("certify", StageStatus::Ok, format!("no cross edges, parts >= {m}, |S| = {} <= {bound}", s.len()));
    Ok(Partition { parts, leftover: s.to_vec(), surplus, trace })
}

fn separator_rounds(red: &Graph, m: usize, want: usize, bound: usize, s: &mut VertexSet, trace: &mut Trace) {
    let mut round = 0;
    loop {
        let rest = s.complement();
        let mut cut = None;
        for comp in red.components_within(&rest) {
            if comp.len() < 4 * m {
                continue;
            }
            let within = red.set_of(&comp);
            let ind = red.induced_subgraph(&within);
            let order: Vec<usize> = ind.lift_all(&bfs_order(&ind.graph));
            let a = red.set_of(&order[..2 * m]);
            let b = red.set_of(&order[order.len() - 2 * m..]);
            if let Ok(DisjointPaths::Separator { vertices, .. }) = vertex_disjoint_paths_within(red, &within, &a, &b, want) {
                cut = Some(vertices);
                break;
            }
        }
        let Some(cut) = cut else { break };
        round += 1;
        trace.push("separator", StageStatus::Ok, format!("round {round}: removed {cut:?}"));
        for v in cut {
            s.insert(v);
        }
        if s.len() > bound {
            trace.push("separator", StageStatus::Failed, format!("|S| = {} exceeds {bound}", s.len()));
            break;
        }
    }
    if round == 0 {
        trace.push("separator", StageStatus::Ok, "no anchor pair is separable");
    }
}

fn cross_edge(g: &Graph, parts: &[Vec<usize>]) -> Option<(usize, usize)> {
    let mut owner = vec![usize::MAX; g.order()];
    for (i, p) in parts.iter().enumerate() {
        for &v in p {
            owner[v] = i;
        }
    }
    g.edges().into_iter().find(|&(u, v)| owner[u] != usize::MAX && owner[v] != usize::MAX && owner[u] != owner[v])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen, GraphBuilder};

    #[test]
    fn two_cliques_are_already_parts() {
        let c = TwoColoring::from_red(gen::disjoint_cliques(&[9, 10]));
        let p = partition_structure(&c, 10, 2, 3, &Profile::desk()).unwrap();
        assert_eq!(p.parts, vec![(0..9).collect::<Vec<_>>(), (9..19).collect()]);
        assert!(p.leftover.is_empty());
        assert_eq!(p.surplus, vec![0, 0]);
    }

    #[test]
    fn cut_vertex_is_separated() {
        // Cliques on 0..9 and 10..19, vertex 9 adjacent to both.
        let mut b = GraphBuilder::new(20);
        b.add_clique(&(0..10).collect::<Vec<_>>()).unwrap();
        b.add_clique(&(9..20).collect::<Vec<_>>()).unwrap();
        let c = TwoColoring::from_red(b.build());
        let p = partition_structure(&c, 10, 2, 3, &Profile::desk()).unwrap();
        assert_eq!(p.leftover, vec![9]);
        assert_eq!(p.parts, vec![(0..9).collect::<Vec<_>>(), (10..20).collect()]);
        assert_eq!(p.trace.0.iter().filter(|r| r.stage == "separator").count(), 1);
    }

    #[test]
    fn too_few_components_fail_certification() {
        let c = TwoColoring::from_red(gen::complete(12));
        let e = partition_structure(&c, 10, 2, 3, &Profile::desk()).unwrap_err();
        assert!(matches!(e, Error::Construction { .. }));
    }

    #[test]
    fn surplus_is_nonnegative() {
        let c = TwoColoring::from_red(gen::disjoint_cliques(&[14, 5]));
        let p = partition_structure(&c, 10, 2, 3, &Profile::desk()).unwrap();
        assert_eq!(p.surplus, vec![4, 0]);
    }
}
