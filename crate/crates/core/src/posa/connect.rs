use super::{closure, rotate_extend};
use crate::error::{param, Result};
use crate::expander::extract_bipartite_expander;
use crate::gadget::{gadget_with_return_in, Gadget, GadgetHost};
use crate::graph::{Graph, VertexSet};
use crate::profile::Profile;
use crate::search::{find_path_of_order, Budget, Search};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectStep {
    pub stage: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum ConnectOutcome {
    /// An `x`–`y` path of exactly the requested order.
    Path { path: Vec<usize>, trace: Vec<ConnectStep> },
    /// Two `m`-sets with no edge between them: a `K_{m,m}` in the complement.
    CounterWitness { left: Vec<usize>, right: Vec<usize>, trace: Vec<ConnectStep> },
    Failed { stage: &'static str, reason: String, trace: Vec<ConnectStep> },
}

impl ConnectOutcome {
    pub fn path(&self) -> Option<&[usize]> {
        match self {
            ConnectOutcome::Path { path, .. } => Some(path),
            _ => None,
        }
    }
}

/// Path through a gadget: `prefix ++ witness(i) ++ suffix`.
struct Assembly {
    prefix: Vec<usize>,
    gadget: Gadget,
    suffix: Vec<usize>,
}

impl Assembly {
    fn full_order(&self) -> usize {
        self.prefix.len() + self.gadget.order() + self.suffix.len()
    }

    fn with_shortfall(&self, i: usize) -> Vec<usize> {
        let mut out = self.prefix.clone();
        out.extend(self.gadget.witness(i).unwrap());
        out.extend(&self.suffix);
        out
    }

    fn vertex_set(&self, order: usize) -> VertexSet {
        VertexSet::from_iter_in(order, self.prefix.iter().chain(&self.gadget.vertices).chain(&self.suffix).copied())
    }
}

fn middle(p: &[usize], m: usize) -> &[usize] {
    let s = (p.len() - (m + 1)) / 2;
    &p[s..s + m + 1]
}

/// Repeatedly replaces the seed by the chord shortcut dropping the most vertices
/// while keeping at least `floor` vertices.
fn trim_by_chords(g: &Graph, p: &[usize], floor: usize) -> Vec<usize> {
    let mut p = p.to_vec();
    loop {
        let t = p.len();
        let mut best: Option<(usize, usize, usize)> = None;
        for i in 0..t {
            for j in (i + 2..t).rev() {
                let drop = j - i - 1;
                if t - drop < floor || best.is_some_and(|b| drop <= b.0) {
                    continue;
                }
                if g.has_edge(p[i], p[j]) {
                    best = Some((drop, i, j));
                    break;
                }
            }
        }
        match best {
            Some((_, i, j)) => {
                p.drain(i + 1..j);
            }
            None => return p,
        }
    }
}

/// An `x`–`y` path of order exactly `n`, following the connection argument: trim the
/// seed path by chords; build a gadget with return path off it; reroute the seed
/// through the gadget using two disjoint edges between the middle `m + 1` vertices of
/// the seed and of the return path; lengthen outside the gadget by detours grown with
/// rotation-extension (inside a bipartite expander when one can be extracted) until
/// the order lies in `[n, n + λm]`; and let the gadget absorb the excess.
///
/// The caller claims that the complement has no `K_{m,m}` and that `|N(A) ∪ A| ≥ n`
/// for every `|A| ≥ m`. A `K_{m,m}` in the complement met on the way is returned as a
/// counter-witness. A returned path always has order `n` and endpoints `x`, `y`.
#[allow(clippy::too_many_arguments)]
pub fn connect_exact_length(
    g: &Graph,
    x: usize,
    y: usize,
    seed_path: &[usize],
    m: usize,
    n: usize,
    profile: &Profile,
    seed: u64,
) -> Result<ConnectOutcome> {
    if m == 0 {
        return param("m must be positive");
    }
    if seed_path.first() != Some(&x) || seed_path.last() != Some(&y) || x == y || !g.is_path(seed_path) {
        return param("seed must be an x-y path");
    }
    if seed_path.len() < 8 * m {
        return param(format!("seed path has order {} < 8m = {}", seed_path.len(), 8 * m));
    }
    let need = profile.n2 * m as f64;
    if (n as f64) < need {
        return param(format!("need n >= N_2 m = {need}, got n = {n}"));
    }
    if n > g.order() {
        return param(format!("n = {n} exceeds the graph order"));
    }
    let mut trace = Vec::new();
    let step = |stage: &'static str, detail: String, trace: &mut Vec<ConnectStep>| {
        trace.push(ConnectStep { stage, detail });
    };
    macro_rules! fail {
        ($stage:expr, $($arg:tt)*) => {
            return Ok(ConnectOutcome::Failed { stage: $stage, reason: format!($($arg)*), trace })
        };
    }

    let p = trim_by_chords(g, seed_path, 8 * m);
    step("trim", format!("seed order {} -> {}", seed_path.len(), p.len()), &mut trace);

    let lm = (profile.connect_gadget.lambda * m as f64).ceil() as usize;
    let mm = ((profile.connect_gadget.mu * m as f64).ceil() as usize).max(m + 3);
    let free = g.set_of(&p).complement();
    let mut host = GadgetHost::new(g, free, profile.tree_order(lm), Budget::nodes(profile.budgets.search_nodes));
    let unit = match gadget_with_return_in(&mut host, lm.max(1), mm, true) {
        Ok(u) => u,
        Err(e) => fail!("gadget", "{e}"),
    };
    let q = unit.return_path.clone();
    step(
        "gadget",
        format!("(<={lm})-gadget of order {}, return path of order {}", unit.gadget.order(), q.len()),
        &mut trace,
    );

    // Two disjoint edges between the middles, or a K_{m,m} in the complement.
    let (pm, qm) = (middle(&p, m), middle(&q, m));
    let edges: Vec<(usize, usize)> =
        pm.iter().flat_map(|&u| qm.iter().filter(move |&&v| g.has_edge(u, v)).map(move |&v| (u, v))).collect();
    let pos = |s: &[usize], v: usize| s.iter().position(|&w| w == v).unwrap();
    let mut best: Option<(usize, (usize, usize), (usize, usize))> = None;
    for (a, &e) in edges.iter().enumerate() {
        for &f in &edges[a + 1..] {
            if e.0 == f.0 || e.1 == f.1 {
                continue;
            }
            let cost = pos(&p, e.0).abs_diff(pos(&p, f.0)) + pos(&q, e.1).abs_diff(pos(&q, f.1));
            if best.is_none_or(|b| cost < b.0) {
                best = Some((cost, e, f));
            }
        }
    }
    let Some((_, e, f)) = best else {
        // At most one vertex covers every edge between the middles; drop it.
        let cover = edges.first().map(|&(u, v)| if edges.iter().all(|&(a, _)| a == u) { u } else { v });
        let left: Vec<usize> = pm.iter().copied().filter(|&v| Some(v) != cover).take(m).collect();
        let right: Vec<usize> = qm.iter().copied().filter(|&v| Some(v) != cover).take(m).collect();
        debug_assert!(left.iter().all(|&u| right.iter().all(|&v| !g.has_edge(u, v))));
        step("reroute", "no two disjoint edges between the middles".into(), &mut trace);
        return Ok(ConnectOutcome::CounterWitness { left, right, trace });
    };
    let (e, f) = if pos(&p, e.0) < pos(&p, f.0) { (e, f) } else { (f, e) };
    let (i, j) = (pos(&p, e.0), pos(&p, f.0));
    let (s, u) = (pos(&q, e.1), pos(&q, f.1));
    let last = q.len() - 1;
    let mut prefix = p[..=i].to_vec();
    let mut suffix;
    let gadget;
    if s < u {
        prefix.extend(q[1..=s].iter().rev());
        gadget = unit.gadget.clone();
        suffix = q[u..last].iter().rev().copied().collect::<Vec<_>>();
    } else {
        prefix.extend(&q[s..last]);
        gadget = unit.gadget.reversed();
        suffix = q[1..=u].to_vec();
    }
    suffix.extend(&p[j..]);
    let mut asm = Assembly { prefix, gadget, suffix };
    debug_assert!(g.is_path(&asm.with_shortfall(0)));
    step("reroute", format!("through edges {e:?}, {f:?}; order {}", asm.full_order()), &mut trace);

    if asm.full_order() > n + lm {
        // Chords outside the gadget, never going below n.
        let mut excess = asm.full_order() - n;
        let mut a = asm.prefix.clone();
        a.push(asm.gadget.a);
        let a = trim_by_chords(g, &a, a.len() - excess.min(a.len() - 2));
        excess -= asm.prefix.len() + 1 - a.len();
        let mut b = vec![asm.gadget.b];
        b.extend(&asm.suffix);
        let b = trim_by_chords(g, &b, b.len() - excess.min(b.len() - 2));
        asm.prefix = a[..a.len() - 1].to_vec();
        asm.suffix = b[1..].to_vec();
        step("shorten", format!("order {}", asm.full_order()), &mut trace);
        if asm.full_order() > n + lm {
            fail!("shorten", "path through the gadget has order {} > n + λm = {}", asm.full_order(), n + lm);
        }
    }

    // Lengthening happens inside a bipartite expander on the unused vertices when one
    // can be extracted, and in all unused vertices otherwise.
    let mut free = asm.vertex_set(g.order()).complement();
    let d = 1.0;
    match extract_bipartite_expander(g, &free, m, d, n, profile.check_mode(seed)) {
        Ok(h) => {
            step("expander", format!("removed {} of {} unused vertices", h.removed.len(), free.len()), &mut trace);
            free = g.set_of(&h.vertices);
        }
        Err(e) => step("expander", format!("skipped: {e}"), &mut trace),
    }
    let states = profile.budgets.rotation_states;
    let mut budget = Budget::nodes(profile.budgets.search_nodes);
    while asm.full_order() < n {
        let want = n - asm.full_order();
        match detour(g, &asm, &free, want, lm, states, &mut budget) {
            Some((side, at, path)) => {
                for &v in &path {
                    free.remove(v);
                }
                let target = if side == 0 { &mut asm.prefix } else { &mut asm.suffix };
                let at = at.min(target.len());
                target.splice(at..at, path.iter().copied());
                step("lengthen", format!("inserted {} vertices; order {}", path.len(), asm.full_order()), &mut trace);
            }
            None => fail!("lengthen", "no detour adds vertices at order {} (need {n})", asm.full_order()),
        }
    }

    let excess = asm.full_order() - n;
    let out = asm.with_shortfall(excess);
    assert!(out.len() == n && out[0] == x && out[n - 1] == y && g.is_path(&out), "connection output invalid");
    step("finish", format!("gadget shortfall {excess}"), &mut trace);
    Ok(ConnectOutcome::Path { path: out, trace })
}

/// A run of unused vertices to splice between two consecutive vertices `u`, `v` outside
/// the gadget, adding between 1 and `want + slack` vertices. Returns the side (0 for
/// the prefix, 1 for the suffix), the insertion index and the run.
fn detour(
    g: &Graph,
    asm: &Assembly,
    free: &VertexSet,
    want: usize,
    slack: usize,
    states: usize,
    budget: &mut Budget,
) -> Option<(usize, usize, Vec<usize>)> {
    // Consecutive pairs, with the gadget endpoints standing in at the joins.
    let mut a = asm.prefix.clone();
    a.push(asm.gadget.a);
    let mut b = vec![asm.gadget.b];
    b.extend(&asm.suffix);
    let cap = want + slack;
    let mut best: Option<(usize, usize, Vec<usize>)> = None;
    for (side, seq) in [(0, &a), (1, &b)] {
        for k in 0..seq.len() - 1 {
            let (u, v) = (seq[k], seq[k + 1]);
            for w in g.neighbors(u).intersection(free).iter() {
                // Grow from w by rotation-extension, then look among the derived paths
                // for the longest prefix whose last vertex sees v.
                let t = rotate_extend(g, free, vec![w], states);
                let mut found: Option<Vec<usize>> = None;
                let mut consider = |d: &[usize]| {
                    let top = d.len().min(cap);
                    if let Some(end) = (0..top).rev().find(|&e| g.has_edge(d[e], v)) {
                        if found.as_ref().is_none_or(|f| end + 1 > f.len()) {
                            found = Some(d[..=end].to_vec());
                        }
                    }
                    found.as_ref().is_some_and(|f| f.len() >= want)
                };
                let _ = closure(g, &t, states, &mut consider);
                if let Some(run) = found {
                    if best.as_ref().is_none_or(|b| run.len() > b.2.len()) {
                        best = Some((side, if side == 0 { k + 1 } else { k }, run));
                    }
                    if best.as_ref().unwrap().2.len() >= want {
                        return best;
                    }
                }
            }
        }
    }
    if best.is_some() {
        return best;
    }
    // Exact-order search between the ends of one edge as a last resort.
    for (side, seq) in [(0, &a), (1, &b)] {
        for k in 0..seq.len() - 1 {
            let (u, v) = (seq[k], seq[k + 1]);
            let mut within = free.clone();
            within.insert(u);
            within.insert(v);
            for extra in (1..=want.min(free.len())).rev() {
                if let Ok(Search::Found(path)) = find_path_of_order(g, &within, u, v, extra + 2, budget) {
                    return Some((side, if side == 0 { k + 1 } else { k }, path[1..path.len() - 1].to_vec()));
                }
                if budget.exhausted() {
                    return None;
                }
            }
        }
    }
    None
}
