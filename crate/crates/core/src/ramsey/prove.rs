use super::engines::bipartite_engine;
use super::partition::partition_structure;
use super::{checked, Direct, EngineReport, RamseyInstance, StageStatus, Trace, Verdict};
use crate::error::Result;
use crate::expander::extract_bipartite_expander;
use crate::graph::{Graph, TwoColoring, VertexSet};
use crate::posa::{connect_exact_length, ConnectOutcome};
use crate::profile::Profile;
use crate::search::{find_cycle_at_least, find_cycle_exact, shorten_cycle_by_chords, Budget, Search};

/// Red `C_n` or blue `K_{m_1,…,m_k}` in a coloring of `K_N`, normally with
/// `N = (n − 1)(k − 1) + m_1`.
///
/// Order of attempts: `k = 2` goes to [`bipartite_engine`]; otherwise a direct blue
/// search, then the induction step (a set `W` of `m_k` vertices with
/// `|N(W) ∪ W| < n` leaves a smaller instance on the rest, all blue to `W`), then the
/// partition into parts with no red edges between them and a red-cycle hunt inside
/// each part and each pair of parts together with `S`, then direct exact search on
/// the whole coloring.
pub fn prove_main(c: &TwoColoring, inst: &RamseyInstance, profile: &Profile, seed: u64) -> Result<EngineReport> {
    let mut trace = Trace::default();
    let v = run(c, inst, profile, seed, &mut trace)?;
    let verdict = checked(c, inst, v, &mut trace);
    Ok(EngineReport { verdict, trace })
}

fn run(c: &TwoColoring, inst: &RamseyInstance, profile: &Profile, seed: u64, trace: &mut Trace) -> Result<Verdict> {
    let (n, k) = (inst.n, inst.k());
    let order = c.order();
    trace.hypothesis("order", order >= inst.formula(), format!("N = {order}, (n-1)(k-1)+m_1 = {}", inst.formula()));
    if k == 2 {
        let rep = bipartite_engine(c, n, inst.sizes[0], inst.sizes[1], profile, seed)?;
        trace.nest("bipartite", rep.trace);
        return Ok(rep.verdict);
    }
    let mut direct = Direct::new(c, inst, profile);
    if let Some(v) = direct.blue(trace) {
        return Ok(v);
    }
    if k == 1 {
        return Ok(direct.finish(trace, "blue search", "single part not found"));
    }
    let mk = inst.sizes[k - 1];
    let thr = profile.n3_main * mk as f64;
    trace.hypothesis("threshold", n as f64 >= thr, format!("n = {n}, N_3 m_k = {thr}"));
    let growth = (1..=k).all(|i| inst.sizes[i - 1] >= i.saturating_pow(profile.exp_main));
    trace.hypothesis("part growth", growth, format!("m_i >= i^{}", profile.exp_main));

    // Induction: a small closed neighborhood hands the rest to k − 1 parts.
    if let Some(w) = small_neighborhood_set(c.red(), mk, n) {
        let mut rest = c.red().closed_neighborhood(&c.red().set_of(&w));
        rest = rest.complement();
        trace.push("induction", StageStatus::Ok, format!("W = {w:?}, {} vertices remain", rest.len()));
        let (sub, map) = c.induced(&rest);
        let sub_inst = RamseyInstance::new(n, &inst.sizes[..k - 1])?;
        let rep = prove_main(&sub, &sub_inst, profile, seed)?;
        trace.nest("induction", rep.trace);
        match rep.verdict {
            Verdict::RedCycle { cycle } => {
                return Ok(Verdict::RedCycle { cycle: cycle.iter().map(|&v| map[v]).collect() });
            }
            Verdict::BlueMultipartite { parts } => {
                let mut parts: Vec<Vec<usize>> =
                    parts.iter().map(|p| p.iter().map(|&v| map[v]).collect()).collect();
                parts.push(w);
                parts.sort_by_key(|p| std::cmp::Reverse(p.len()));
                return Ok(Verdict::BlueMultipartite { parts });
            }
            _ => trace.push("induction", StageStatus::Failed, "sub-instance settled nothing usable"),
        }
    } else {
        trace.push("induction", StageStatus::Skipped, format!("no W of size {mk} with |N(W) ∪ W| < {n} found"));
    }

    match partition_structure(c, n, mk, k, profile) {
        Ok(p) => {
            trace.nest("partition", p.trace);
            if let Some(v) = hunt_in_parts(c, inst, &p.parts, &p.leftover, profile, seed, trace) {
                return Ok(v);
            }
        }
        Err(e) => trace.push("partition", StageStatus::Failed, e.to_string()),
    }
    Ok(direct.finish(trace, "structural", "no structural stage produced a witness"))
}

/// Greedy search for `W` of order `size` with `|N(W) ∪ W| < n`: each start vertex
/// grows by the vertex adding the fewest new closed neighbors.
fn small_neighborhood_set(red: &Graph, size: usize, n: usize) -> Option<Vec<usize>> {
    if size > red.order() {
        return None;
    }
    let closed = |v: usize| {
        let mut s = red.neighbors(v).clone();
        s.insert(v);
        s
    };
    for start in 0..red.order() {
        let mut w = vec![start];
        let mut cover = closed(start);
        while w.len() < size {
            let next = (0..red.order())
                .filter(|v| !w.contains(v))
                .min_by_key(|&v| closed(v).difference(&cover).len())
                .expect("enough vertices");
            cover.union_with(&closed(next));
            w.push(next);
        }
        if cover.len() < n {
            w.sort_unstable();
            return Some(w);
        }
    }
    None
}

/// Red cycle searches inside each part, then inside each pair of parts plus `S`.
fn hunt_in_parts(
    c: &TwoColoring,
    inst: &RamseyInstance,
    parts: &[Vec<usize>],
    s: &[usize],
    profile: &Profile,
    seed: u64,
    trace: &mut Trace,
) -> Option<Verdict> {
    let red = c.red();
    let n = inst.n;
    let mk = inst.sizes[inst.k() - 1];
    let mut order: Vec<&Vec<usize>> = parts.iter().collect();
    order.sort_by_key(|p| std::cmp::Reverse(p.len()));
    for (i, part) in order.iter().enumerate() {
        let set = red.set_of(part);
        if set.len() < n {
            trace.push(&format!("part {i}"), StageStatus::Skipped, format!("{} < n vertices", set.len()));
            continue;
        }
        let d = 1.0;
        if (n as f64) > 12.0 * mk as f64 && set.len() >= 16 * mk {
            match extract_bipartite_expander(red, &set, mk, d, n, profile.check_mode(seed)) {
                Ok(b) => trace.push(&format!("part {i}/expander"), StageStatus::Ok, format!("removed {} vertices", b.removed.len())),
                Err(e) => trace.push(&format!("part {i}/expander"), StageStatus::Failed, e.to_string()),
            }
        } else {
            trace.push(&format!("part {i}/expander"), StageStatus::Skipped, "size hypotheses fail");
        }
        if let Some(cycle) = cycle_within(red, &set, n, mk, profile, seed, trace, &format!("part {i}")) {
            return Some(Verdict::RedCycle { cycle });
        }
    }
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let mut set = red.set_of(&parts[i]);
            set.union_with(&red.set_of(&parts[j]));
            for &v in s {
                set.insert(v);
            }
            if set.len() < n {
                continue;
            }
            let label = format!("parts {i}+{j}+S");
            if let Some(cycle) = cycle_within(red, &set, n, mk, profile, seed, trace, &label) {
                return Some(Verdict::RedCycle { cycle });
            }
        }
    }
    None
}

/// Long cycle, chord shortening, exact-length connection, then exact search, all
/// inside `G[set]`.
#[allow(clippy::too_many_arguments)]
fn cycle_within(
    red: &Graph,
    set: &VertexSet,
    n: usize,
    m: usize,
    profile: &Profile,
    seed: u64,
    trace: &mut Trace,
    label: &str,
) -> Option<Vec<usize>> {
    let ind = red.induced_subgraph(set);
    let g = &ind.graph;
    let nodes = profile.budgets.search_nodes;
    if let Search::Found(long) = find_cycle_at_least(g, n, &mut Budget::nodes(nodes)).expect("n >= 3") {
        let short = shorten_cycle_by_chords(g, &long, n);
        if short.len() == n {
            trace.push(&format!("{label}/chords"), StageStatus::Ok, format!("{} -> {n}", long.len()));
            return Some(ind.lift_all(&short));
        }
        if n as f64 >= profile.n2 * m as f64 && short.len() >= 8 * m {
            let (x, y) = (short[0], short[short.len() - 1]);
            match connect_exact_length(g, x, y, &short, m, n, profile, seed) {
                Ok(ConnectOutcome::Path { path, .. }) => {
                    trace.push(&format!("{label}/connect"), StageStatus::Ok, format!("order {}", path.len()));
                    return Some(ind.lift_all(&path));
                }
                Ok(other) => trace.push(&format!("{label}/connect"), StageStatus::Failed, format!("{other:?}")),
                Err(e) => trace.push(&format!("{label}/connect"), StageStatus::Failed, e.to_string()),
            }
        }
    }
    match find_cycle_exact(g, n, &mut Budget::nodes(nodes)).expect("n >= 3") {
        Search::Found(cycle) => {
            trace.push(&format!("{label}/exact"), StageStatus::Ok, "found");
            Some(ind.lift_all(&cycle))
        }
        Search::Absent => {
            trace.push(&format!("{label}/exact"), StageStatus::Ok, "absent");
            None
        }
        Search::BudgetExhausted => {
            trace.push(&format!("{label}/exact"), StageStatus::Failed, "budget exhausted");
            None
        }
    }
}
