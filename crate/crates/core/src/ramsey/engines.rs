use super::{checked, Direct, EngineReport, RamseyInstance, StageStatus, Trace, Verdict};
use crate::error::Result;
use crate::gadget::{gadget_with_return_in, GadgetHost, GadgetWithReturn};
use crate::gadget_cycle::{extract_cycle_of_length, join_gadget_cycles, path_to_gadget_cycle, verify_gadget_cycle, GadgetCycle};
use crate::graph::{gen, Graph, TwoColoring, VertexSet};
use crate::posa::{connect_exact_length, ConnectOutcome, ConnectStep};
use crate::profile::Profile;
use crate::search::{
    find_cycle_at_least, longest_path_exhaustive, shorten_cycle_by_chords, vertex_disjoint_paths,
    vertex_disjoint_paths_within, Budget, DisjointPaths, Search,
};
use rand::seq::SliceRandom;

fn nest_connect(trace: &mut Trace, steps: &[ConnectStep]) {
    for s in steps {
        trace.push(&format!("connect/{}", s.stage), StageStatus::Ok, s.detail.clone());
    }
}

/// Red `C_n` or blue `K_{m_1,m_2}` in a coloring of `K_N` with `N ≥ n + m_1 − 1`.
///
/// A red cycle of order at least `n` is shortened by chords; if that stalls, its ends
/// are fed to [`connect_exact_length`] with the cycle as seed path. A counter-witness
/// from the connection is a blue `K_{m_2,m_2}`. Direct exact searches close the gap.
pub fn bipartite_engine(c: &TwoColoring, n: usize, m1: usize, m2: usize, profile: &Profile, seed: u64) -> Result<EngineReport> {
    let inst = RamseyInstance::new(n, &[m1, m2])?;
    let mut trace = Trace::default();
    let need = n + inst.sigma() - 1;
    trace.hypothesis("order", c.order() >= need, format!("N = {}, n + m_1 - 1 = {need}", c.order()));
    let mut direct = Direct::new(c, &inst, profile);
    let v = run_bipartite(c, &inst, profile, seed, &mut direct, &mut trace);
    let verdict = checked(c, &inst, v, &mut trace);
    Ok(EngineReport { verdict, trace })
}

fn run_bipartite(
    c: &TwoColoring,
    inst: &RamseyInstance,
    profile: &Profile,
    seed: u64,
    direct: &mut Direct,
    trace: &mut Trace,
) -> Verdict {
    let (n, m1, m2) = (inst.n, inst.sizes[0], inst.sizes[1]);
    if let Some(v) = direct.blue(trace) {
        return v;
    }
    let red = c.red();
    let mut budget = Budget::nodes(profile.budgets.search_nodes);
    match find_cycle_at_least(red, n, &mut budget).expect("n >= 3") {
        Search::Found(long) => {
            trace.push("long cycle", StageStatus::Ok, format!("order {}", long.len()));
            let short = shorten_cycle_by_chords(red, &long, n);
            if short.len() == n {
                trace.push("chords", StageStatus::Ok, format!("{} -> {n}", long.len()));
                return Verdict::RedCycle { cycle: short };
            }
            trace.push("chords", StageStatus::Failed, format!("stalled at {}", short.len()));
            let threshold = profile.n2 * m2 as f64;
            let fits = n as f64 >= threshold && short.len() >= 8 * m2;
            trace.hypothesis(
                "connect hypotheses",
                fits,
                format!("n = {n}, N_2 m_2 = {threshold}, seed order {} vs 8 m_2 = {}", short.len(), 8 * m2),
            );
            if fits {
                let (x, y) = (short[0], short[short.len() - 1]);
                match connect_exact_length(red, x, y, &short, m2, n, profile, seed) {
                    Ok(ConnectOutcome::Path { path, trace: t }) => {
                        nest_connect(trace, &t);
                        return Verdict::RedCycle { cycle: path };
                    }
                    Ok(ConnectOutcome::CounterWitness { left, right, trace: t }) => {
                        nest_connect(trace, &t);
                        trace.push("counter-witness", StageStatus::Ok, "blue K_{m,m} between the path middles");
                        return Verdict::BlueMultipartite { parts: vec![left, right[..m1].to_vec()] };
                    }
                    Ok(ConnectOutcome::Failed { stage, reason, trace: t }) => {
                        nest_connect(trace, &t);
                        trace.push(&format!("connect/{stage}"), StageStatus::Failed, reason);
                    }
                    Err(e) => trace.push("connect", StageStatus::Failed, e.to_string()),
                }
            }
        }
        Search::Absent => {
            direct.red_absent = true;
            trace.push("long cycle", StageStatus::Ok, format!("no red cycle of order >= {n} (exhaustive)"));
        }
        Search::BudgetExhausted => trace.push("long cycle", StageStatus::Failed, "budget exhausted"),
    }
    direct.finish(trace, "bipartite", "no stage produced a witness")
}

/// Sampled `(A, B)` pairs of `2m`-sets checked for `want` disjoint red paths.
const SPOT_CHECKS: usize = 8;
/// Most gadget-with-return units the connected engine builds.
const MAX_UNITS: usize = 24;

/// Red `C_n` or blue `K_m^k` in a coloring whose red graph is assumed well connected.
///
/// Pipeline: direct blue search; hypothesis checks (order, sampled connectivity);
/// a maximal family of disjoint gadget-with-return units; an auxiliary graph on
/// the units joined when their return paths carry 12 disjoint red edges; a cover of
/// that graph by paths, each closed into a gadget-cycle; joins of gadget-cycles
/// through 16 or more disjoint paths; extraction of a cycle of order `n` from any
/// cycle whose window contains it; direct exact search last.
pub fn connected_engine(c: &TwoColoring, n: usize, m: usize, k: usize, profile: &Profile, seed: u64) -> Result<EngineReport> {
    let inst = RamseyInstance::new(n, &vec![m; k.max(1)])?;
    let mut trace = Trace::default();
    let mut direct = Direct::new(c, &inst, profile);
    let v = run_connected(c, &inst, m, profile, seed, &mut direct, &mut trace);
    let verdict = checked(c, &inst, v, &mut trace);
    Ok(EngineReport { verdict, trace })
}

fn run_connected(
    c: &TwoColoring,
    inst: &RamseyInstance,
    m: usize,
    profile: &Profile,
    seed: u64,
    direct: &mut Direct,
    trace: &mut Trace,
) -> Verdict {
    let (n, k) = (inst.n, inst.k());
    let red = c.red();
    let order = red.order();
    if let Some(v) = direct.blue(trace) {
        return v;
    }
    let size = 0.07 * (k * n) as f64 + n as f64;
    trace.hypothesis("order", order as f64 >= size, format!("N = {order}, 0.07kn + n = {size:.1}"));
    let nm = profile.n3 * m as f64;
    trace.hypothesis("threshold", n as f64 >= nm, format!("n = {n}, N_3 m = {nm}"));

    let want = k.saturating_pow(profile.exp_paths);
    if 4 * m > order || want > 2 * m {
        trace.push(
            "connectivity",
            StageStatus::Falsified,
            format!("{want} disjoint paths between 2m-sets cannot exist on {order} vertices with m = {m}"),
        );
        return Verdict::Inconclusive {
            stage: "connectivity".into(),
            reason: "connectivity hypothesis falsified".into(),
        };
    }
    let mut rng = gen::rng(seed);
    let mut all: Vec<usize> = (0..order).collect();
    // The first pair sits at the two ends of a breadth-first order, which separates
    // components and sides of small cuts; the rest are random.
    let far = bfs_order(red);
    for s in 0..=SPOT_CHECKS {
        let (a, b) = if s == 0 {
            (red.set_of(&far[..2 * m]), red.set_of(&far[order - 2 * m..]))
        } else {
            all.shuffle(&mut rng);
            (red.set_of(&all[..2 * m]), red.set_of(&all[2 * m..4 * m]))
        };
        if let Ok(DisjointPaths::Separator { vertices, max_paths, .. }) = vertex_disjoint_paths(red, &a, &b, want) {
            trace.push(
                "connectivity",
                StageStatus::Falsified,
                format!("only {max_paths} < {want} disjoint paths; separator {vertices:?}"),
            );
            return Verdict::Inconclusive {
                stage: "connectivity".into(),
                reason: "connectivity hypothesis falsified".into(),
            };
        }
    }
    trace.push("connectivity", StageStatus::Checked, format!("{} sampled pairs have {want} disjoint paths", SPOT_CHECKS + 1));

    let cycles = grow_gadget_cycles(red, m, k, profile, trace);
    let mut cycles = join_all(red, cycles, k, profile, trace);
    cycles.sort_by_key(|c| std::cmp::Reverse(c.total_order()));
    for gc in &cycles {
        for cand in [gc.clone(), gc.tightened()] {
            if !(cand.a..=cand.b).contains(&n) || !verify_gadget_cycle(red, &cand).holds {
                continue;
            }
            match extract_cycle_of_length(red, &cand, n) {
                Ok(cycle) => {
                    trace.push("extract", StageStatus::Ok, format!("window [{}, {}]", cand.a, cand.b));
                    return Verdict::RedCycle { cycle };
                }
                Err(e) => trace.push("extract", StageStatus::Failed, e.to_string()),
            }
        }
    }
    let windows: Vec<String> = cycles.iter().map(|c| format!("[{}, {}]", c.a, c.b)).collect();
    trace.push("extract", StageStatus::Skipped, format!("n = {n} outside every window {windows:?}"));
    direct.finish(trace, "extract", "no gadget-cycle window contains n and direct search was inconclusive")
}

/// Units, their auxiliary graph, a path cover of it, and one gadget-cycle per path.
fn grow_gadget_cycles(red: &Graph, m: usize, k: usize, profile: &Profile, trace: &mut Trace) -> Vec<GadgetCycle> {
    // Twelve matching edges need 12 interior return-path vertices, and λ ≥ 2μ keeps
    // each unit's order within the gadget-cycle's 2λm.
    let mm = ((profile.connected_gadget.mu * m as f64).ceil() as usize).max(14);
    let lm = ((profile.connected_gadget.lambda * m as f64).ceil() as usize).max(2 * mm);
    let budget = Budget::nodes(profile.budgets.search_nodes);
    let mut host = GadgetHost::new(red, red.vertex_set(), profile.tree_order(lm), budget);
    let mut units: Vec<GadgetWithReturn> = Vec::new();
    while units.len() < MAX_UNITS {
        match gadget_with_return_in(&mut host, lm, mm, true) {
            Ok(u) => units.push(u),
            Err(e) => {
                trace.push("units", StageStatus::Ok, format!("{} units; next failed: {e}", units.len()));
                break;
            }
        }
    }
    if units.is_empty() {
        return Vec::new();
    }
    let t = units.len();
    let interiors: Vec<VertexSet> =
        units.iter().map(|u| red.set_of(&u.return_path[1..u.return_path.len() - 1])).collect();
    let mut matchings = vec![vec![None; t]; t];
    let mut aux = crate::graph::GraphBuilder::new(t);
    for i in 0..t {
        for j in i + 1..t {
            let within = interiors[i].union(&interiors[j]);
            let r = vertex_disjoint_paths_within(red, &within, &interiors[i], &interiors[j], 12);
            if let Ok(DisjointPaths::Paths(ps)) = r {
                let mt: Vec<(usize, usize)> = ps.iter().map(|p| (p[0], p[p.len() - 1])).collect();
                matchings[j][i] = Some(mt.iter().map(|&(x, y)| (y, x)).collect::<Vec<_>>());
                matchings[i][j] = Some(mt);
                aux.add_edge(i, j).expect("distinct units");
            }
        }
    }
    let aux = aux.build();
    let alpha = independence_number(&aux);
    trace.hypothesis("independence", alpha < k, format!("alpha(H) = {alpha}, k - 1 = {}", k - 1));
    let cover = path_cover(&aux);
    trace.push("path cover", StageStatus::Ok, format!("{} paths over {t} units", cover.len()));
    let mut out = Vec::new();
    for path in cover {
        let us: Vec<GadgetWithReturn> = path.iter().map(|&i| units[i].clone()).collect();
        let ms: Vec<Vec<(usize, usize)>> =
            path.windows(2).map(|w| matchings[w[0]][w[1]].clone().expect("aux edge")).collect();
        match path_to_gadget_cycle(red, &us, &ms, profile) {
            Ok(gc) => {
                trace.push("gadget-cycle", StageStatus::Ok, format!("{} units, window [{}, {}], total {}, k {}", path.len(), gc.a, gc.b, gc.total_order(), gc.k));
                out.push(gc);
            }
            Err(e) => trace.push("gadget-cycle", StageStatus::Failed, e.to_string()),
        }
    }
    out
}

/// Repeatedly joins the two largest gadget-cycles with a common `k`.
fn join_all(red: &Graph, mut cycles: Vec<GadgetCycle>, k: usize, profile: &Profile, trace: &mut Trace) -> Vec<GadgetCycle> {
    let r = k.saturating_pow(profile.exp_join_paths).max(16);
    loop {
        cycles.sort_by_key(|c| std::cmp::Reverse(c.total_order()));
        let mut joined = None;
        'pairs: for i in 0..cycles.len() {
            for j in i + 1..cycles.len() {
                if cycles[i].k != cycles[j].k {
                    continue;
                }
                let mut within = red.vertex_set();
                for (s, other) in cycles.iter().enumerate() {
                    if s != i && s != j {
                        within.difference_with(&red.set_of(&other.traversal()));
                    }
                }
                let a = red.set_of(&cycles[i].traversal());
                let b = red.set_of(&cycles[j].traversal());
                let Ok(DisjointPaths::Paths(ps)) = vertex_disjoint_paths_within(red, &within, &a, &b, r) else {
                    continue;
                };
                match join_gadget_cycles(red, &cycles[i], &cycles[j], &ps) {
                    Ok(out) => {
                        trace.push("join", StageStatus::Ok, format!("window [{}, {}]", out.cycle.a, out.cycle.b));
                        joined = Some((i, j, out.cycle));
                        break 'pairs;
                    }
                    Err(e) => trace.push("join", StageStatus::Failed, e.to_string()),
                }
            }
        }
        let Some((i, j, c)) = joined else { return cycles };
        cycles.remove(j);
        cycles.remove(i);
        cycles.push(c);
    }
}

/// Vertices in breadth-first order from each component's smallest vertex in turn.
pub(crate) fn bfs_order(g: &Graph) -> Vec<usize> {
    let mut out = Vec::with_capacity(g.order());
    let mut seen = g.empty_set();
    for s in 0..g.order() {
        if !seen.insert(s) {
            continue;
        }
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            out.push(v);
            for w in g.neighbors(v).iter() {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
    }
    out
}

/// Exact independence number; the auxiliary graph has at most [`MAX_UNITS`] vertices.
fn independence_number(g: &Graph) -> usize {
    fn go(g: &Graph, cand: VertexSet, size: usize, best: &mut usize) {
        if size + cand.len() <= *best {
            return;
        }
        let Some(v) = cand.first() else {
            *best = size;
            return;
        };
        let mut with = cand.clone();
        with.remove(v);
        with.difference_with(g.neighbors(v));
        go(g, with, size + 1, best);
        let mut without = cand;
        without.remove(v);
        go(g, without, size, best);
    }
    let mut best = 0;
    go(g, g.vertex_set(), 0, &mut best);
    best
}

/// Greedy cover by vertex-disjoint paths: repeatedly removes a longest path.
fn path_cover(g: &Graph) -> Vec<Vec<usize>> {
    let mut left = g.vertex_set();
    let mut out = Vec::new();
    while !left.is_empty() {
        let ind = g.induced_subgraph(&left);
        let mut best: Vec<usize> = Vec::new();
        for v in 0..ind.graph.order() {
            let (p, _) = longest_path_exhaustive(&ind.graph, v, &mut Budget::nodes(200_000));
            if p.len() > best.len() {
                best = p;
            }
        }
        let p = ind.lift_all(&best);
        for &v in &p {
            left.remove(v);
        }
        out.push(p);
    }
    out
}
