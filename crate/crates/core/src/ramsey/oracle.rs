use super::RamseyInstance;
use crate::error::{param, Result};
use crate::graph::canon::{all_graphs, canonical_code, extend_level, Code, SmallGraph, MAX_ORDER};
use crate::graph::TwoColoring;
use crate::search::{find_complete_multipartite, find_cycle_exact, Budget};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleMode {
    /// Every graph on N vertices up to isomorphism; N ≤ 7.
    Full,
    /// Grows refuting colorings one vertex at a time; both target properties are
    /// hereditary, so every refuting coloring of `K_N` restricts to one of `K_{N−1}`.
    Pruned,
}

/// Largest level the pruned search keeps before giving up with a partial bound.
const LEVEL_CAP: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Refuter {
    pub order: usize,
    pub red_edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    #[serde(rename = "R")]
    pub r: Option<usize>,
    pub bound: String,
    /// A refuting coloring on `R − 1` vertices, or on the largest order examined.
    pub refuter: Option<Refuter>,
    pub mode: OracleMode,
    /// Refuting colorings up to isomorphism, per order `1, 2, …`.
    pub survivors: Vec<usize>,
}

impl Refuter {
    pub fn coloring(&self) -> TwoColoring {
        TwoColoring::from_red(crate::graph::Graph::from_edges(self.order, &self.red_edges).expect("stored edges are valid"))
    }
}

/// True when the coloring with red graph `h` has neither target.
fn refutes(h: &SmallGraph, inst: &RamseyInstance) -> bool {
    let red = h.to_graph();
    if find_cycle_exact(&red, inst.n, &mut Budget::unlimited()).expect("n >= 3").is_found() {
        return false;
    }
    let blue = red.complement();
    !find_complete_multipartite(&blue, &inst.sizes, &mut Budget::unlimited()).expect("sizes positive").is_found()
}

/// Smallest `N ≤ n_max` with no refuting coloring of `K_N`. Colorings are identified
/// by the canonical form of their red graph.
pub fn exact_ramsey_oracle(inst: &RamseyInstance, n_max: usize, mode: OracleMode, threads: usize) -> Result<OracleResult> {
    if n_max == 0 {
        return param("n_max must be positive");
    }
    match mode {
        OracleMode::Full if n_max > 7 => return param(format!("full enumeration supports N <= 7, got {n_max}")),
        OracleMode::Pruned if n_max > MAX_ORDER => {
            return param(format!("pruned enumeration supports N <= {MAX_ORDER}, got {n_max}"))
        }
        _ => {}
    }
    let threads = threads.max(1);
    let mut survivors = Vec::new();
    let mut level: Vec<Code> = Vec::new();
    for order in 1..=n_max {
        let next: Vec<Code> = match mode {
            OracleMode::Full => {
                let mut v: Vec<Code> = all_graphs(order)
                    .into_iter()
                    .filter(|h| refutes(h, inst))
                    .map(|h| canonical_code(&h))
                    .collect();
                v.sort_unstable();
                v
            }
            OracleMode::Pruned if order == 1 => {
                let h = SmallGraph::empty(1);
                if refutes(&h, inst) { vec![canonical_code(&h)] } else { Vec::new() }
            }
            OracleMode::Pruned => extend_level(&level, order - 1, |h| refutes(h, inst), threads),
        };
        survivors.push(next.len());
        if next.is_empty() {
            let refuter = level.first().map(|&c| refuter_of(order - 1, c));
            return Ok(OracleResult { r: Some(order), bound: format!("R = {order}"), refuter, mode, survivors });
        }
        level = next;
        if level.len() > LEVEL_CAP && order < n_max {
            return Ok(OracleResult {
                r: None,
                bound: format!("R >= {} (stopped: {} refuting colorings at N = {order})", order + 1, level.len()),
                refuter: Some(refuter_of(order, level[0])),
                mode,
                survivors,
            });
        }
    }
    Ok(OracleResult {
        r: None,
        bound: format!("R >= {}", n_max + 1),
        refuter: Some(refuter_of(n_max, level[0])),
        mode,
        survivors,
    })
}

fn refuter_of(order: usize, code: Code) -> Refuter {
    Refuter { order, red_edges: SmallGraph::from_code(order, code).to_graph().edges() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ramsey::{lower_bound_coloring, verify_refutation, RefutationVerdict};

    fn r(n: usize, sizes: &[usize], mode: OracleMode) -> OracleResult {
        exact_ramsey_oracle(&RamseyInstance::new(n, sizes).unwrap(), 7, mode, 1).unwrap()
    }

    #[test]
    fn small_values() {
        for mode in [OracleMode::Full, OracleMode::Pruned] {
            assert_eq!(r(3, &[1, 1], mode).r, Some(3));
            assert_eq!(r(5, &[1, 2], mode).r, Some(5));
            assert_eq!(r(4, &[2, 2], mode).r, Some(6));
        }
    }

    #[test]
    fn refuters_refute() {
        for (n, sizes) in [(3, vec![1, 1]), (5, vec![1, 2]), (4, vec![2, 2])] {
            let inst = RamseyInstance::new(n, &sizes).unwrap();
            let out = exact_ramsey_oracle(&inst, 7, OracleMode::Pruned, 2).unwrap();
            let refuter = out.refuter.unwrap();
            assert_eq!(refuter.order + 1, out.r.unwrap());
            assert_eq!(verify_refutation(&refuter.coloring(), &inst, None).unwrap(), RefutationVerdict::Refutes);
        }
    }

    #[test]
    fn full_and_pruned_agree_per_level() {
        for (n, sizes) in [(3, vec![2, 2]), (4, vec![1, 2]), (5, vec![1, 1, 1]), (3, vec![1, 1, 2])] {
            let a = r(n, &sizes, OracleMode::Full);
            let b = r(n, &sizes, OracleMode::Pruned);
            assert_eq!((a.r, &a.survivors), (b.r, &b.survivors), "n={n} sizes={sizes:?}");
        }
    }

    #[test]
    fn open_bound_and_json() {
        let inst = RamseyInstance::new(4, &[2, 2]).unwrap();
        let out = exact_ramsey_oracle(&inst, 4, OracleMode::Pruned, 1).unwrap();
        assert_eq!(out.r, None);
        assert_eq!(out.bound, "R >= 5");
        assert_eq!(out.refuter.as_ref().unwrap().order, 4);
        let j = serde_json::to_value(&out).unwrap();
        assert!(j["R"].is_null());
        assert!(exact_ramsey_oracle(&inst, 8, OracleMode::Full, 1).is_err());
    }

    #[test]
    fn lower_bound_colorings_sit_below_the_oracle_value() {
        for (n, sizes) in [(3, vec![1, 1]), (4, vec![1, 2]), (4, vec![2, 2]), (3, vec![1, 1, 1]), (4, vec![1, 1, 1])] {
            let inst = RamseyInstance::new(n, &sizes).unwrap();
            let c = lower_bound_coloring(&inst, n).unwrap();
            let out = exact_ramsey_oracle(&inst, 10, OracleMode::Pruned, 2).unwrap();
            assert!(out.r.unwrap() > c.order(), "n={n} sizes={sizes:?}");
        }
    }

    #[test]
    fn monotone_in_part_sizes() {
        for n in 3..=5 {
            let v: Vec<usize> = [[1, 1], [1, 2], [2, 2]].iter().map(|s| r(n, s, OracleMode::Pruned).r.unwrap()).collect();
            assert!(v.windows(2).all(|w| w[0] <= w[1]), "n={n}: {v:?}");
        }
    }
}
