//! Gadget-cycles: gadgets `J_1..J_t` joined in cyclic order by connector paths, from
//! which cycles of every length in a window `[a, b]` can be cut out.

mod chain;
mod join;

pub use chain::path_to_gadget_cycle;
pub use join::{join_gadget_cycles, JoinOutcome};

use crate::error::{construction, param, Result};
use crate::gadget::{Gadget, GadgetKind};
use crate::graph::Graph;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetCycle {
    pub gadgets: Vec<Gadget>,
    /// `connectors[i]` runs from `b_i` to `a_{i+1}` (indices mod `t`), endpoints included.
    pub connectors: Vec<Vec<usize>>,
    pub a: usize,
    pub b: usize,
    pub m: usize,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetCycleVerdict {
    pub holds: bool,
    /// Failed clauses among `"i"`..`"iv"`, `"window"` (`a ≤ b`) and `"witness"`.
    pub failed: Vec<&'static str>,
    pub details: Vec<String>,
    pub total: usize,
    pub recomputed_a: usize,
    pub recomputed_b: usize,
}

impl GadgetCycle {
    pub fn t(&self) -> usize {
        self.gadgets.len()
    }

    /// Number of vertices: gadgets plus connector interiors.
    pub fn total_order(&self) -> usize {
        self.gadgets.iter().map(|j| j.order()).sum::<usize>()
            + self.connectors.iter().map(|q| q.len().saturating_sub(2)).sum::<usize>()
    }

    /// Tightest window the contents support: `(total − t·k, total)`.
    pub fn recomputed(&self) -> (usize, usize) {
        let n = self.total_order();
        (n.saturating_sub(self.t() * self.k), n)
    }

    /// The same cycle declared with its recomputed window.
    pub fn tightened(&self) -> GadgetCycle {
        let (a, b) = self.recomputed();
        GadgetCycle { a, b, ..self.clone() }
    }

    /// The cycle through every gadget's full-length witness, starting at `a_1`.
    pub fn traversal(&self) -> Vec<usize> {
        self.traversal_with(&vec![0; self.t()])
    }

    fn traversal_with(&self, shortenings: &[usize]) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.total_order());
        for (i, j) in self.gadgets.iter().enumerate() {
            out.extend(j.witness(shortenings[i]).expect("shortening within range"));
            let q = &self.connectors[i];
            out.extend(&q[1..q.len() - 1]);
        }
        out
    }
}

/// Checks the four defining clauses and every gadget's witnesses.
pub fn verify_gadget_cycle(g: &Graph, c: &GadgetCycle) -> GadgetCycleVerdict {
    let mut failed = Vec::new();
    let mut details = Vec::new();
    let mut fail = |clause: &'static str, msg: String, failed: &mut Vec<&'static str>| {
        if !failed.contains(&clause) {
            failed.push(clause);
        }
        details.push(msg);
    };
    let t = c.t();
    let total = c.total_order();
    if t == 0 || c.connectors.len() != t {
        fail("i", format!("{t} gadgets but {} connectors", c.connectors.len()), &mut failed);
    } else {
        let mut seen = g.empty_set();
        let mut owner_ok = true;
        for (i, j) in c.gadgets.iter().enumerate() {
            for &v in &j.vertices {
                if v >= g.order() || !seen.insert(v) {
                    owner_ok = false;
                    fail("i", format!("gadget {i} reuses or misplaces vertex {v}"), &mut failed);
                }
            }
        }
        if owner_ok {
            for (i, q) in c.connectors.iter().enumerate() {
                let next = &c.gadgets[(i + 1) % t];
                if q.len() < 2 || q[0] != c.gadgets[i].b || *q.last().unwrap() != next.a {
                    fail("i", format!("connector {i} does not run from b_{i} to the next a"), &mut failed);
                    continue;
                }
                if !g.is_path(q) {
                    fail("i", format!("connector {i} is not a path"), &mut failed);
                }
                for &v in &q[1..q.len() - 1] {
                    if v >= g.order() || !seen.insert(v) {
                        fail("i", format!("connector {i} meets a gadget or another connector at {v}"), &mut failed);
                    }
                }
            }
        }
    }
    for (i, j) in c.gadgets.iter().enumerate() {
        if j.order() > c.m {
            fail("ii", format!("|J_{i}| = {} > m = {}", j.order(), c.m), &mut failed);
        }
        if j.kind != GadgetKind::Upto || j.shortfall < c.k {
            fail("witness", format!("gadget {i} is not a (<={})-gadget", c.k), &mut failed);
        } else if let Err(e) = j.check(g) {
            fail("witness", format!("gadget {i}: {e}"), &mut failed);
        }
    }
    if total < c.b {
        fail("iii", format!("total order {total} < b = {}", c.b), &mut failed);
    }
    let (ra, rb) = c.recomputed();
    if ra > c.a {
        fail("iv", format!("total - t k = {ra} > a = {}", c.a), &mut failed);
    }
    if c.a > c.b {
        fail("window", format!("a = {} > b = {}", c.a, c.b), &mut failed);
    }
    GadgetCycleVerdict { holds: failed.is_empty(), failed, details, total, recomputed_a: ra, recomputed_b: rb }
}

/// A cycle of exactly `n` vertices: each gadget in turn is shortened by as much as
/// possible (at most `k`) until the total reaches `n`.
pub fn extract_cycle_of_length(g: &Graph, c: &GadgetCycle, n: usize) -> Result<Vec<usize>> {
    if n < c.a || n > c.b {
        return param(format!("n = {n} outside [a, b] = [{}, {}]", c.a, c.b));
    }
    if n < 3 {
        return param("a cycle needs at least 3 vertices");
    }
    let v = verify_gadget_cycle(g, c);
    if !v.holds {
        return param(format!("not a gadget-cycle: clauses {:?} fail", v.failed));
    }
    let mut need = v.total - n;
    let shortenings: Vec<usize> = (0..c.t())
        .map(|_| {
            let s = need.min(c.k);
            need -= s;
            s
        })
        .collect();
    debug_assert_eq!(need, 0);
    let cyc = c.traversal_with(&shortenings);
    if cyc.len() != n || !g.is_cycle(&cyc) {
        return construction("gadget-cycle extraction", format!("spliced sequence is not a cycle of order {n}"));
    }
    Ok(cyc)
}

/// Splits a cycle (as a vertex sequence) into a gadget-cycle: every gadget of `pool`
/// whose full witness appears as a contiguous run, in either direction, is kept; all
/// other vertices become connector material.
pub(crate) fn assemble(g: &Graph, seq: &[usize], pool: &[Gadget], m: usize, k: usize) -> Result<GadgetCycle> {
    let len = seq.len();
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &v) in seq.iter().enumerate() {
        pos[v] = i;
    }
    let mut kept: Vec<(usize, Gadget)> = Vec::new();
    for j in pool {
        let w = j.witness(0).unwrap();
        let p = pos[w[0]];
        if p == usize::MAX {
            continue;
        }
        if w.iter().enumerate().all(|(s, &v)| seq[(p + s) % len] == v) {
            kept.push((p, j.clone()));
        } else if w.iter().enumerate().all(|(s, &v)| seq[(p + len - s) % len] == v) {
            kept.push(((p + len + 1 - w.len()) % len, j.reversed()));
        }
    }
    if kept.is_empty() {
        return construction("gadget-cycle assembly", "no gadget survives on the cycle");
    }
    kept.sort_by_key(|(p, _)| *p);
    let t = kept.len();
    let mut connectors = Vec::with_capacity(t);
    for i in 0..t {
        let (p, j) = &kept[i];
        let end = p + j.order() - 1;
        let next = kept[(i + 1) % t].0 + if i + 1 == t { len } else { 0 };
        connectors.push((end..=next).map(|s| seq[s % len]).collect());
    }
    let gadgets: Vec<Gadget> = kept.into_iter().map(|(_, j)| j).collect();
    let mut c = GadgetCycle { gadgets, connectors, a: 0, b: 0, m, k };
    let (a, b) = c.recomputed();
    c.a = a;
    c.b = b;
    Ok(c)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::gadget::{verify_gadget, GadgetVerification};
    use crate::graph::{GraphBuilder, VertexSet};
    use crate::search::Budget;

    /// Gadget-cycle whose gadgets are the given blocks (endpoints first and last vertex),
    /// each verified as a `(≤k)`-gadget, joined by the given connector interiors.
    pub(crate) fn from_blocks(g: &Graph, blocks: &[Vec<usize>], inner: &[Vec<usize>], k: usize) -> GadgetCycle {
        let gadgets: Vec<Gadget> = blocks
            .iter()
            .map(|b| {
                let set = VertexSet::from_iter_in(g.order(), b.iter().copied());
                let r = verify_gadget(g, &set, b[0], *b.last().unwrap(), k, GadgetKind::Upto, &mut Budget::unlimited()).unwrap();
                let GadgetVerification::Verified { gadget } = r else { panic!("block {b:?} is not a gadget: {r:?}") };
                gadget
            })
            .collect();
        let t = gadgets.len();
        let connectors = (0..t)
            .map(|i| {
                let mut q = vec![gadgets[i].b];
                q.extend(&inner[i]);
                q.push(gadgets[(i + 1) % t].a);
                q
            })
            .collect();
        let m = gadgets.iter().map(|j| j.order()).max().unwrap();
        GadgetCycle { gadgets, connectors, a: 0, b: 0, m, k }.tightened()
    }

    fn two_k4() -> (Graph, GadgetCycle) {
        let mut b = GraphBuilder::new(8);
        b.add_clique(&[0, 1, 2, 3]).unwrap();
        b.add_clique(&[4, 5, 6, 7]).unwrap();
        b.add_edge(3, 4).unwrap();
        b.add_edge(7, 0).unwrap();
        let g = b.build();
        let c = from_blocks(&g, &[vec![0, 1, 2, 3], vec![4, 5, 6, 7]], &[vec![], vec![]], 2);
        (g, GadgetCycle { a: 4, b: 8, m: 4, ..c })
    }

    #[test]
    fn two_k4_verifies() {
        let (g, c) = two_k4();
        let v = verify_gadget_cycle(&g, &c);
        assert!(v.holds, "{v:?}");
        assert_eq!((v.total, v.recomputed_a, v.recomputed_b), (8, 4, 8));
        let wide = GadgetCycle { b: 9, ..c.clone() };
        assert_eq!(verify_gadget_cycle(&g, &wide).failed, vec!["iii"]);
        let tight = GadgetCycle { a: 3, ..c.clone() };
        assert_eq!(verify_gadget_cycle(&g, &tight).failed, vec!["iv"]);
        let small_m = GadgetCycle { m: 3, ..c };
        assert_eq!(verify_gadget_cycle(&g, &small_m).failed, vec!["ii"]);
    }

    #[test]
    fn connector_through_gadget_fails_clause_i() {
        let mut b = GraphBuilder::new(9);
        b.add_clique(&[0, 1, 2, 3]).unwrap();
        b.add_clique(&[4, 5, 6, 7]).unwrap();
        b.add_path(&[3, 8, 4]).unwrap();
        b.add_edge(7, 0).unwrap();
        b.add_edge(7, 1).unwrap();
        b.add_edge(1, 0).unwrap();
        let g = b.build();
        let mut c = from_blocks(&g, &[vec![0, 1, 2, 3], vec![4, 5, 6, 7]], &[vec![8], vec![]], 2);
        assert!(verify_gadget_cycle(&g, &c).holds);
        c.connectors[1] = vec![7, 1, 0];
        assert!(verify_gadget_cycle(&g, &c).failed.contains(&"i"));
    }

    #[test]
    fn extraction_on_two_k4() {
        let (g, c) = two_k4();
        let full = extract_cycle_of_length(&g, &c, 8).unwrap();
        assert_eq!(full.len(), 8);
        let short = extract_cycle_of_length(&g, &c, 4).unwrap();
        assert_eq!(short, vec![0, 3, 4, 7]);
        for n in 4..=8 {
            assert_eq!(extract_cycle_of_length(&g, &c, n).unwrap().len(), n);
        }
        assert!(matches!(extract_cycle_of_length(&g, &c, 3), Err(crate::Error::Parameter(_))));
        assert!(extract_cycle_of_length(&g, &c, 9).is_err());
    }

    #[test]
    fn widening_b_down_to_total_keeps_validity() {
        // Any (a, b, m)-gadget-cycle is also an (a, |C|, m)-gadget-cycle.
        let (g, c) = two_k4();
        let narrow = GadgetCycle { a: 5, b: 6, ..c };
        assert!(verify_gadget_cycle(&g, &narrow).holds);
        let widened = GadgetCycle { b: narrow.total_order(), ..narrow };
        assert!(verify_gadget_cycle(&g, &widened).holds);
    }

    #[test]
    fn assemble_recovers_reversed_gadgets() {
        let (g, c) = two_k4();
        let mut seq = c.traversal();
        seq.reverse();
        let back = assemble(&g, &seq, &c.gadgets, 4, 2).unwrap();
        assert!(verify_gadget_cycle(&g, &back).holds);
        assert_eq!(back.t(), 2);
        assert_eq!(back.gadgets[0].a, 7);
    }
}
