use super::{assemble, verify_gadget_cycle, GadgetCycle};
use crate::error::{construction, param, Error, Result};
use crate::graph::{Graph, VertexSet};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct JoinOutcome {
    pub cycle: GadgetCycle,
    /// `a_1 + a_2 + 4m + 2ℓ`.
    pub formula_a: usize,
    /// `⌈(b_1 + b_2)(1 − 2/√r)⌉`.
    pub formula_b: usize,
    pub ell: usize,
    /// Indices of the two connecting paths used.
    pub chosen: (usize, usize),
    /// L¹ distance between their endpoint positions.
    pub distance: usize,
}

/// Shortest piece of `p` running from `C_1` to `C_2` with its interior outside both.
fn trim(p: &[usize], v1: &VertexSet, v2: &VertexSet) -> Option<Vec<usize>> {
    let e = p.iter().position(|&v| v2.contains(v))?;
    let s = p[..e].iter().rposition(|&v| v1.contains(v))?;
    Some(p[s..=e].to_vec())
}

/// Positions along the traversal, counted from the lowest-id gadget endpoint.
fn positions(c: &GadgetCycle, order: usize) -> (Vec<usize>, Vec<usize>) {
    let trav = c.traversal();
    let start_vertex = c.gadgets.iter().flat_map(|j| [j.a, j.b]).min().unwrap();
    let s = trav.iter().position(|&v| v == start_vertex).unwrap();
    let mut seq = trav[s..].to_vec();
    seq.extend(&trav[..s]);
    let mut pos = vec![usize::MAX; order];
    for (i, &v) in seq.iter().enumerate() {
        pos[v] = i;
    }
    (seq, pos)
}

/// Joins two disjoint gadget-cycles with a common `k` through two of the `r ≥ 16`
/// disjoint connecting paths whose endpoint positions are closest in L¹ distance.
/// The short stretches between the chosen endpoints are dropped; gadgets cut by an
/// endpoint become connector material. The result is declared with its recomputed
/// window and checked against the formula values.
pub fn join_gadget_cycles(g: &Graph, c1: &GadgetCycle, c2: &GadgetCycle, paths: &[Vec<usize>]) -> Result<JoinOutcome> {
    let r = paths.len();
    if r < 16 {
        return param(format!("need at least 16 connecting paths, got {r}"));
    }
    if c1.k != c2.k {
        return param(format!("cycles have different k ({} and {})", c1.k, c2.k));
    }
    for (name, c) in [("C1", c1), ("C2", c2)] {
        let v = verify_gadget_cycle(g, c);
        if !v.holds {
            return param(format!("{name} is not a gadget-cycle: clauses {:?} fail", v.failed));
        }
    }
    let (seq1, pos1) = positions(c1, g.order());
    let (seq2, pos2) = positions(c2, g.order());
    let v1 = g.set_of(&seq1);
    let v2 = g.set_of(&seq2);
    if v1.intersects(&v2) {
        return param("the two gadget-cycles share vertices");
    }
    let ell = paths.iter().map(|p| p.len().saturating_sub(1)).max().unwrap();
    let mut trimmed = Vec::with_capacity(r);
    let mut seen = g.empty_set();
    for (i, p) in paths.iter().enumerate() {
        if !g.is_path(p) {
            return param(format!("path {i} is not a path"));
        }
        let rev: Vec<usize> = p.iter().rev().copied().collect();
        let q = trim(p, &v1, &v2)
            .or_else(|| trim(&rev, &v1, &v2))
            .ok_or_else(|| Error::Parameter(format!("path {i} does not run between the cycles")))?;
        for &v in &q {
            if !seen.insert(v) {
                return param(format!("connecting paths meet at {v}"));
            }
        }
        trimmed.push(q);
    }
    let (l1, l2) = (seq1.len(), seq2.len());
    let xy: Vec<(usize, usize)> = trimmed.iter().map(|q| (pos1[q[0]], pos2[*q.last().unwrap()])).collect();
    let mut best: Option<(usize, usize, usize)> = None;
    for i in 0..r {
        for j in i + 1..r {
            let d = xy[i].0.abs_diff(xy[j].0) + xy[i].1.abs_diff(xy[j].1);
            if best.is_none_or(|b| d < b.0) {
                best = Some((d, i, j));
            }
        }
    }
    let (distance, bi, bj) = best.unwrap();
    let limit = 2.0 * (l1 + l2) as f64 / (r as f64).sqrt();
    assert!(distance as f64 <= limit, "pigeonhole violated: distance {distance} > {limit}");
    // Orient so that P_i meets C_1 before P_j.
    let (i, j) = if xy[bi].0 < xy[bj].0 { (bi, bj) } else { (bj, bi) };
    let ((pi, qi), (pj, qj)) = (xy[i], xy[j]);
    let mut seq = Vec::new();
    // C_1 from u_j forward round to u_i, skipping the stretch between them.
    seq.extend((0..=l1 - (pj - pi)).map(|s| seq1[(pj + s) % l1]));
    let ti = &trimmed[i];
    seq.extend(&ti[1..ti.len() - 1]);
    // C_2 from v_i to v_j the long way.
    let span2 = l2 - qi.abs_diff(qj);
    if qi < qj {
        seq.extend((0..=span2).map(|s| seq2[(qi + l2 - s) % l2]));
    } else {
        seq.extend((0..=span2).map(|s| seq2[(qi + s) % l2]));
    }
    let tj = &trimmed[j];
    seq.extend(tj[1..tj.len() - 1].iter().rev());
    if !g.is_cycle(&seq) {
        return construction("join", "reassembled sequence is not a cycle");
    }
    let m = c1.m.max(c2.m);
    let pool: Vec<_> = c1.gadgets.iter().chain(&c2.gadgets).cloned().collect();
    let cycle = assemble(g, &seq, &pool, m, c1.k)?;
    let formula_a = c1.a + c2.a + 4 * m + 2 * ell;
    let formula_b = ((c1.b + c2.b) as f64 * (1.0 - 2.0 / (r as f64).sqrt())).ceil() as usize;
    let v = verify_gadget_cycle(g, &cycle);
    if !v.holds {
        return construction("join", format!("output fails clauses {:?}", v.failed));
    }
    let total = v.total;
    if 2 * total < l1 + l2 || cycle.a > formula_a || total < formula_b {
        return construction(
            "join",
            format!("bounds violated: |C| = {total}, a = {} vs {formula_a}, b = {formula_b}", cycle.a),
        );
    }
    Ok(JoinOutcome { cycle, formula_a, formula_b, ell, chosen: (i, j), distance })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadget_cycle::extract_cycle_of_length;
    use crate::gadget_cycle::tests::from_blocks;
    use crate::graph::gen;

    /// Five 5-vertex gadgets, each followed by one connector vertex, on `base..base+30`.
    fn ring(g: &Graph, base: usize) -> GadgetCycle {
        let blocks: Vec<Vec<usize>> = (0..5).map(|i| (base + 5 * i..base + 5 * i + 5).collect()).collect();
        let inner: Vec<Vec<usize>> = (0..5).map(|i| vec![base + 25 + i]).collect();
        from_blocks(g, &blocks, &inner, 2)
    }

    #[test]
    fn join_in_complete_graph() {
        let g = gen::complete(60);
        let (c1, c2) = (ring(&g, 0), ring(&g, 30));
        assert_eq!((c1.a, c1.b), (20, 30));
        let paths: Vec<Vec<usize>> = (0..16).map(|u| vec![u, 30 + (u * 7) % 30]).collect();
        let out = join_gadget_cycles(&g, &c1, &c2, &paths).unwrap();
        assert!(verify_gadget_cycle(&g, &out.cycle).holds);
        assert!(2 * out.cycle.total_order() >= 60);
        assert_eq!(out.formula_a, 20 + 20 + 4 * 5 + 2);
        assert_eq!(out.formula_b, 30);
        let c = &out.cycle;
        for n in c.a.max(3)..=c.b {
            assert_eq!(extract_cycle_of_length(&g, c, n).unwrap().len(), n);
        }
    }

    #[test]
    fn fifteen_paths_rejected() {
        let g = gen::complete(60);
        let (c1, c2) = (ring(&g, 0), ring(&g, 30));
        let paths: Vec<Vec<usize>> = (0..15).map(|u| vec![u, 30 + u]).collect();
        assert!(matches!(join_gadget_cycles(&g, &c1, &c2, &paths), Err(Error::Parameter(_))));
    }

    #[test]
    fn paths_are_trimmed() {
        // Each path wanders through C_1 before leaving; only the last C_1 vertex counts.
        let g = gen::complete(80);
        let (c1, c2) = (ring(&g, 0), ring(&g, 30));
        let mut paths: Vec<Vec<usize>> = (0..16).map(|u| vec![u, 60 + u, 30 + u]).collect();
        paths[0] = vec![16, 0, 60, 30];
        let out = join_gadget_cycles(&g, &c1, &c2, &paths).unwrap();
        assert!(verify_gadget_cycle(&g, &out.cycle).holds);
        assert_eq!(out.ell, 3);
    }
}
