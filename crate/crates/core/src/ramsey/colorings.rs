use super::RamseyInstance;
use crate::error::{param, Result};
use crate::graph::{gen, TwoColoring};
use crate::search::{find_complete_multipartite, find_cycle_exact, Budget, Search};
use serde::Serialize;

/// Red disjoint cliques of the given sizes, blue everywhere else.
fn clique_coloring(sizes: &[usize]) -> TwoColoring {
    let sizes: Vec<usize> = sizes.iter().copied().filter(|&s| s > 0).collect();
    TwoColoring::from_red(gen::disjoint_cliques(&sizes))
}

/// `k − 1` red cliques of order `g_order − 1` and one of order `m_1 − 1`, all blue in
/// between: `(g_order − 1)(k − 1) + m_1 − 1` vertices with every red component too
/// small for `C_{g_order}`, while any blue `K_{m_1,…,m_k}` would need a part meeting two
/// cliques or all of the small one.
pub fn lower_bound_coloring(inst: &RamseyInstance, g_order: usize) -> Result<TwoColoring> {
    if g_order < inst.sigma() {
        return param(format!("need |G| >= sigma = {}, got {g_order}", inst.sigma()));
    }
    let mut sizes = vec![g_order - 1; inst.k() - 1];
    sizes.push(inst.sigma() - 1);
    Ok(clique_coloring(&sizes))
}

/// `k − r` red cliques of order `n − 1` and `r` of order `m_r − 1`.
pub fn refuting_coloring_general(inst: &RamseyInstance, r: usize) -> Result<TwoColoring> {
    let k = inst.k();
    if r == 0 || r > k {
        return param(format!("need 1 <= r <= k = {k}, got r = {r}"));
    }
    let mr = inst.sizes[r - 1];
    if inst.n < mr {
        return param(format!("need n >= m_r = {mr}"));
    }
    let mut sizes = vec![inst.n - 1; k - r];
    sizes.extend(std::iter::repeat_n(mr - 1, r));
    Ok(clique_coloring(&sizes))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum RefutationVerdict {
    /// No red `C_n` and no blue `K_{m_1,…,m_k}`, both by exhaustive search.
    Refutes,
    RedCycle { cycle: Vec<usize> },
    BlueMultipartite { parts: Vec<Vec<usize>> },
    Indeterminate { search: &'static str },
}

/// Searches both colors. `nodes` bounds each search; `None` means unbounded.
pub fn verify_refutation(c: &TwoColoring, inst: &RamseyInstance, nodes: Option<u64>) -> Result<RefutationVerdict> {
    let mut budget = Budget::from_option(nodes);
    match find_cycle_exact(c.red(), inst.n, &mut budget)? {
        Search::Found(cycle) => return Ok(RefutationVerdict::RedCycle { cycle }),
        Search::BudgetExhausted => return Ok(RefutationVerdict::Indeterminate { search: "red cycle" }),
        Search::Absent => {}
    }
    let mut budget = Budget::from_option(nodes);
    Ok(match find_complete_multipartite(c.blue(), &inst.sizes, &mut budget)? {
        Search::Found(parts) => RefutationVerdict::BlueMultipartite { parts },
        Search::BudgetExhausted => RefutationVerdict::Indeterminate { search: "blue multipartite" },
        Search::Absent => RefutationVerdict::Refutes,
    })
}
