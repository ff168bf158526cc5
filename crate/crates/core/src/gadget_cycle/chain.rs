use super::{assemble, verify_gadget_cycle, GadgetCycle};
use crate::error::{construction, param, Result};
use crate::gadget::GadgetWithReturn;
use crate::graph::Graph;
use crate::profile::Profile;
use std::collections::BTreeSet;

/// One merge: two matching edges `(x, y)` with `x` on `Q_i` and `y` on `Q_{i+1}`.
#[derive(Clone, Copy)]
struct Merge {
    e: (usize, usize),
    f: (usize, usize),
    left: (usize, usize),
    right: (usize, usize),
}

fn span(p: usize, q: usize) -> (usize, usize) {
    (p.min(q), p.max(q))
}

fn disjoint(a: (usize, usize), b: (usize, usize)) -> bool {
    a.1 < b.0 || b.1 < a.0
}

/// Closes a path of gadget-with-return units into one gadget-cycle.
///
/// Each unit is the cycle `J_v` plus its return path `Q_v`. Consecutive units are merged
/// through two edges of their matching: the stretch of each return path between the
/// two chosen endpoints is dropped and the two edges close the union into a single
/// cycle. The pairs are chosen by dynamic programming so that the two stretches cut
/// from any one return path are disjoint, dropping as few vertices as possible.
///
/// With σ = Σ|J_v ∪ Q_v| the window is `[0.01σ, 0.99σ]` under the paper profile and
/// `[σ − t·k, Σ|J_v|]` otherwise; the output is verified.
pub fn path_to_gadget_cycle(
    g: &Graph,
    units: &[GadgetWithReturn],
    matchings: &[Vec<(usize, usize)>],
    profile: &Profile,
) -> Result<GadgetCycle> {
    let t = units.len();
    if t == 0 {
        return param("need at least one unit");
    }
    if matchings.len() + 1 != t {
        return param(format!("{t} units need {} matchings, got {}", t - 1, matchings.len()));
    }
    let mut owner = vec![usize::MAX; g.order()];
    for (i, u) in units.iter().enumerate() {
        u.gadget.check(g)?;
        let q = &u.return_path;
        if q.len() < 2 || q[0] != u.gadget.a || *q.last().unwrap() != u.gadget.b || !g.is_path(q) {
            return param(format!("unit {i} has no valid return path"));
        }
        for &v in u.gadget.vertices.iter().chain(&q[1..q.len() - 1]) {
            if owner[v] != usize::MAX {
                return param(format!("units overlap at vertex {v}"));
            }
            owner[v] = i;
        }
    }
    let qpos: Vec<Vec<usize>> = units
        .iter()
        .map(|u| {
            let mut p = vec![usize::MAX; g.order()];
            for (s, &v) in u.return_path.iter().enumerate() {
                p[v] = s;
            }
            p
        })
        .collect();
    // Candidate merges per consecutive pair, edges oriented from Q_i to Q_{i+1}.
    let mut options: Vec<Vec<Merge>> = Vec::with_capacity(t.saturating_sub(1));
    for (i, mt) in matchings.iter().enumerate() {
        if mt.len() < 12 {
            return param(format!("matching {i} has {} < 12 edges", mt.len()));
        }
        let mut ends = BTreeSet::new();
        let mut edges = Vec::with_capacity(mt.len());
        for &(x, y) in mt {
            let (x, y) = if qpos[i].get(x).is_some_and(|&p| p != usize::MAX) { (x, y) } else { (y, x) };
            let on_left = qpos[i].get(x).is_some_and(|&p| p != usize::MAX);
            let on_right = qpos[i + 1].get(y).is_some_and(|&p| p != usize::MAX);
            if !on_left || !on_right || !g.has_edge(x, y) {
                return param(format!("matching {i}: ({x}, {y}) is not an edge between consecutive return paths"));
            }
            if !ends.insert(x) || !ends.insert(y) {
                return param(format!("matching {i} is not a matching"));
            }
            edges.push((x, y));
        }
        let mut opts = Vec::new();
        for a in 0..edges.len() {
            for b in a + 1..edges.len() {
                let (e, f) = (edges[a], edges[b]);
                let left = span(qpos[i][e.0], qpos[i][f.0]);
                let right = span(qpos[i + 1][e.1], qpos[i + 1][f.1]);
                opts.push(Merge { e, f, left, right });
            }
        }
        options.push(opts);
    }
    let chosen = choose_merges(&options)
        .ok_or_else(|| crate::Error::Construction { stage: "unit chain".into(), msg: "no compatible merge pairs".into() })?;
    // Union of the unit cycles, minus the dropped stretches, plus the merge edges.
    let mut edges = BTreeSet::new();
    let key = |u: usize, v: usize| (u.min(v), u.max(v));
    for u in units {
        let mut z = u.gadget.witness(0).unwrap().to_vec();
        z.extend(u.return_path[1..u.return_path.len() - 1].iter().rev());
        for s in 0..z.len() {
            edges.insert(key(z[s], z[(s + 1) % z.len()]));
        }
    }
    for (i, mg) in chosen.iter().enumerate() {
        for (q, (lo, hi)) in [(&units[i].return_path, mg.left), (&units[i + 1].return_path, mg.right)] {
            for s in lo..hi {
                edges.remove(&key(q[s], q[s + 1]));
            }
        }
        edges.insert(key(mg.e.0, mg.e.1));
        edges.insert(key(mg.f.0, mg.f.1));
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); g.order()];
    for &(u, v) in &edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let start = units[0].gadget.a;
    let first = units[0].gadget.witness(0).unwrap()[1];
    let mut seq = vec![start];
    let (mut prev, mut cur) = (start, first);
    while cur != start {
        if adj[cur].len() != 2 || seq.len() > edges.len() {
            return construction("unit chain", "merged edge set is not a single cycle");
        }
        seq.push(cur);
        let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
        prev = cur;
        cur = next;
    }
    if seq.len() != edges.len() || !g.is_cycle(&seq) {
        return construction("unit chain", "merged edge set is not a single cycle");
    }
    let k = units.iter().map(|u| u.gadget.shortfall).min().unwrap();
    let pool: Vec<_> = units.iter().map(|u| u.gadget.clone()).collect();
    let mut c = assemble(g, &seq, &pool, 2 * k, k)?;
    if c.t() != t {
        return construction("unit chain", format!("only {} of {t} gadgets survive", c.t()));
    }
    let sigma: usize = units.iter().map(|u| u.gadget.order() + u.return_path.len() - 2).sum();
    let (a, b) = if profile.is_paper() {
        ((0.01 * sigma as f64).ceil() as usize, (0.99 * sigma as f64).floor() as usize)
    } else {
        (sigma - t * k, units.iter().map(|u| u.gadget.order()).sum())
    };
    c.a = a;
    c.b = b;
    let v = verify_gadget_cycle(g, &c);
    if !v.holds {
        return construction("unit chain", format!("declared window fails clauses {:?}", v.failed));
    }
    Ok(c)
}

/// One merge per consecutive pair such that on every inner return path the stretch
/// cut for the left neighbor and the one cut for the right neighbor are disjoint.
/// Minimizes the number of dropped vertices; ties go to the earliest option.
fn choose_merges(options: &[Vec<Merge>]) -> Option<Vec<Merge>> {
    if options.is_empty() {
        return Some(Vec::new());
    }
    let cost = |m: &Merge| (m.left.1 - m.left.0 - 1) + (m.right.1 - m.right.0 - 1);
    let mut best: Vec<Option<usize>> = options[0].iter().map(|m| Some(cost(m))).collect();
    let mut back: Vec<Vec<usize>> = vec![vec![usize::MAX; options[0].len()]];
    for i in 1..options.len() {
        let mut nb = vec![None; options[i].len()];
        let mut bk = vec![usize::MAX; options[i].len()];
        for (s, m) in options[i].iter().enumerate() {
            for (p, pm) in options[i - 1].iter().enumerate() {
                let Some(c) = best[p] else { continue };
                if !disjoint(pm.right, m.left) {
                    continue;
                }
                let total = c + cost(m);
                if nb[s].is_none_or(|b| total < b) {
                    nb[s] = Some(total);
                    bk[s] = p;
                }
            }
        }
        best = nb;
        back.push(bk);
    }
    let (mut s, _) = best.iter().enumerate().filter_map(|(s, c)| c.map(|c| (s, c))).min_by_key(|&(s, c)| (c, s))?;
    let mut out = vec![options[options.len() - 1][s]];
    for i in (1..options.len()).rev() {
        s = back[i][s];
        out.push(options[i - 1][s]);
    }
    out.reverse();
    Some(out)
}
