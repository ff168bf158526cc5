//! Checkers for the two expansion notions.
//!
//! `(Δ, β, m)` into `W`: (i) `|N_W(S)| ≥ Δ|S|` for every nonempty `|S| < m`, and
//! (ii) `|N(S) ∪ S| ≥ |S| + βm` for every `m ≤ |S| ≤ |G|/2`.
//!
//! `(d, m, n)` for `H ⊆ G`: (i) `|N_H(S)| ≥ d|S|` for nonempty `S ⊆ V(H)`, `|S| < m`,
//! and (ii) `|N_G(S) ∪ S| ≥ n` for `S ⊆ V(H)`, `|S| ≥ m`. Clause (ii) is monotone in
//! `S`, so only sets of size exactly `m` are examined.

use crate::error::{Error, Result};
use crate::graph::{gen, Graph, VertexSet};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

pub const DEFAULT_MAX_SUBSETS: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct ExpansionParams {
    pub delta: f64,
    pub beta: f64,
    pub m: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct DmnParams {
    pub d: f64,
    pub m: usize,
    pub n: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CheckMode {
    /// Enumerate every relevant set; refused when more than `max_subsets` are needed.
    Exact { max_subsets: u64 },
    /// Seeded greedy falsifier; can only ever report genuine violations.
    Randomized { samples: usize, seed: u64 },
    /// Exact when within the subset cap, randomized otherwise.
    Auto { max_subsets: u64, samples: usize, seed: u64 },
}

impl CheckMode {
    pub fn exact() -> Self {
        CheckMode::Exact { max_subsets: DEFAULT_MAX_SUBSETS }
    }

    pub fn randomized(samples: usize, seed: u64) -> Self {
        CheckMode::Randomized { samples, seed }
    }

    pub fn auto(samples: usize, seed: u64) -> Self {
        CheckMode::Auto { max_subsets: DEFAULT_MAX_SUBSETS, samples, seed }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    VerifiedExhaustively,
    Falsified,
    NotFalsified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Clause {
    #[serde(rename = "i")]
    Small,
    #[serde(rename = "ii")]
    Large,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub violating_set: Option<Vec<usize>>,
    pub clause: Option<Clause>,
    pub params: serde_json::Value,
    pub mode: &'static str,
    pub budget_used: u64,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        self.status != Status::Falsified
    }

    pub fn exhaustive(&self) -> bool {
        self.status == Status::VerifiedExhaustively
    }
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

fn count_subsets(pool: usize, min: usize, max: usize) -> u64 {
    (min..=max).fold(0u64, |acc, s| acc.saturating_add(binom(pool as u64, s as u64)))
}

/// Depth-first enumeration of subsets of `pool` in lexicographic order, sizes
/// `1..=max_size`, with incremental neighborhoods. `test(set, N(set))` returns true on
/// a violation; only strictly smaller violators are searched for afterward, so the
/// result is a smallest violator, lexicographically first among those.
struct Enumerator<'a, F: FnMut(&[usize], &VertexSet) -> bool> {
    g: &'a Graph,
    pool: &'a [usize],
    max_size: usize,
    test: F,
    best: Option<Vec<usize>>,
    visited: u64,
}

impl<F: FnMut(&[usize], &VertexSet) -> bool> Enumerator<'_, F> {
    fn run(&mut self) {
        let mut stack = Vec::new();
        let nb = VertexSet::new(self.g.order());
        self.rec(0, &mut stack, &nb);
    }

    fn rec(&mut self, from: usize, stack: &mut Vec<usize>, nb: &VertexSet) {
        let limit = self.best.as_ref().map_or(self.max_size, |b| b.len() - 1);
        if stack.len() >= limit {
            return;
        }
        for i in from..self.pool.len() {
            let v = self.pool[i];
            stack.push(v);
            let next = nb.union(self.g.neighbors(v));
            self.visited += 1;
            if (self.test)(stack, &next) {
                if self.best.as_ref().is_none_or(|b| stack.len() < b.len()) {
                    self.best = Some(stack.clone());
                }
            } else {
                self.rec(i + 1, stack, &next);
            }
            stack.pop();
            let limit = self.best.as_ref().map_or(self.max_size, |b| b.len() - 1);
            if stack.len() >= limit {
                return;
            }
        }
    }
}

fn set_from(n: usize, s: &[usize]) -> VertexSet {
    VertexSet::from_iter_in(n, s.iter().copied())
}

struct Problem<'a> {
    g: &'a Graph,
    /// Vertices the sets range over.
    pool: Vec<usize>,
    /// Clause (i): minimum required `|N(S) ∩ target|` as a function of `|S|`.
    small_target: VertexSet,
    small_factor: f64,
    small_below: usize,
    /// Clause (ii): sizes and required `|N(S) ∪ S|` (as a function of `|S|`).
    large_range: Option<(usize, usize)>,
    large_need: Box<dyn Fn(usize) -> f64 + 'a>,
    params: serde_json::Value,
}

impl Problem<'_> {
    fn violates(&self, s: &[usize], nb: &VertexSet) -> Option<Clause> {
        let k = s.len();
        if k < self.small_below {
            let have = nb.intersection_len(&self.small_target) as f64;
            if have < self.small_factor * k as f64 {
                return Some(Clause::Small);
            }
        }
        if let Some((lo, hi)) = self.large_range {
            if (lo..=hi).contains(&k) {
                let mut closed = nb.clone();
                for &v in s {
                    closed.insert(v);
                }
                if (closed.len() as f64) < (self.large_need)(k) {
                    return Some(Clause::Large);
                }
            }
        }
        None
    }

    fn required_subsets(&self) -> u64 {
        let max = self.max_size();
        count_subsets(self.pool.len(), 1, max)
    }

    fn max_size(&self) -> usize {
        let a = self.small_below.saturating_sub(1);
        let b = self.large_range.map_or(0, |(_, hi)| hi);
        a.max(b).min(self.pool.len())
    }

    fn exact(&self, max_subsets: u64) -> Result<Verdict> {
        let need = self.required_subsets();
        if need > max_subsets {
            return Err(Error::ExactRefused(format!(
                "{need} subsets needed, limit is {max_subsets}"
            )));
        }
        let mut e = Enumerator {
            g: self.g,
            pool: &self.pool,
            max_size: self.max_size(),
            test: |s: &[usize], nb: &VertexSet| self.violates(s, nb).is_some(),
            best: None,
            visited: 0,
        };
        e.run();
        let (best, visited) = (e.best, e.visited);
        let clause = best.as_ref().and_then(|s| {
            let nb = self.g.neighborhood(&set_from(self.g.order(), s));
            self.violates(s, &nb)
        });
        Ok(Verdict {
            status: if best.is_some() { Status::Falsified } else { Status::VerifiedExhaustively },
            violating_set: best,
            clause,
            params: self.params.clone(),
            mode: "exact",
            budget_used: visited,
        })
    }

    fn randomized(&self, samples: usize, seed: u64) -> Verdict {
        let mut rng = gen::rng(seed);
        let n = self.g.order();
        let mut used = 0u64;
        let mut found: Option<(Vec<usize>, Clause)> = None;
        let record = |s: &[usize], c: Clause, found: &mut Option<(Vec<usize>, Clause)>| {
            let mut s = s.to_vec();
            s.sort_unstable();
            if found.as_ref().is_none_or(|(b, _)| s.len() < b.len() || (s.len() == b.len() && s < *b)) {
                *found = Some((s, c));
            }
        };
        if self.pool.is_empty() {
            return self.verdict_from(None, "randomized", 0);
        }
        // Components are the cheapest large-clause violators.
        if let Some((lo, hi)) = self.large_range {
            let pool_set = set_from(n, &self.pool);
            let comps = self.g.components_within(&pool_set);
            let mut acc: Vec<usize> = Vec::new();
            for c in comps.iter() {
                if acc.len() + c.len() <= hi {
                    acc.extend(c);
                    if acc.len() >= lo {
                        let nb = self.g.neighborhood(&set_from(n, &acc));
                        if let Some(cl) = self.violates(&acc, &nb) {
                            record(&acc, cl, &mut found);
                        }
                    }
                }
            }
        }
        let max = self.max_size();
        let pool_set = set_from(n, &self.pool);
        for t in 0..samples {
            used += 1;
            let start = self.pool[rng.gen_range(0..self.pool.len())];
            // Alternate between attacking the small and the large clause.
            let attack_small = t % 2 == 0 && self.small_below > 1;
            let mut s = vec![start];
            let mut in_s = set_from(n, &s);
            let mut nb = self.g.neighbors(start).clone();
            loop {
                if let Some(cl) = self.violates(&s, &nb) {
                    record(&s, cl, &mut found);
                    break;
                }
                if s.len() >= max {
                    break;
                }
                // Candidates: boundary vertices first, a few random ones as well.
                let mut cands: Vec<usize> = nb.intersection(&pool_set).difference(&in_s).iter().collect();
                if cands.is_empty() {
                    cands = pool_set.difference(&in_s).iter().collect();
                }
                if cands.is_empty() {
                    break;
                }
                cands.shuffle(&mut rng);
                cands.truncate(48);
                let score = |u: usize| -> (i64, usize) {
                    let merged = nb.union(self.g.neighbors(u));
                    let val = if attack_small {
                        merged.intersection_len(&self.small_target) as i64
                    } else {
                        let mut c = merged;
                        c.union_with(&in_s);
                        c.insert(u);
                        c.len() as i64
                    };
                    (val, u)
                };
                let best = cands.iter().map(|&u| score(u)).min().unwrap().1;
                s.push(best);
                in_s.insert(best);
                nb.union_with(self.g.neighbors(best));
                if attack_small && s.len() >= self.small_below {
                    break;
                }
            }
        }
        let found = found.map(|(s, c)| (s, Some(c)));
        self.verdict_from(found, "randomized", used)
    }

    fn verdict_from(
        &self,
        found: Option<(Vec<usize>, Option<Clause>)>,
        mode: &'static str,
        used: u64,
    ) -> Verdict {
        match found {
            Some((s, c)) => Verdict {
                status: Status::Falsified,
                violating_set: Some(s),
                clause: c,
                params: self.params.clone(),
                mode,
                budget_used: used,
            },
            None => Verdict {
                status: Status::NotFalsified,
                violating_set: None,
                clause: None,
                params: self.params.clone(),
                mode,
                budget_used: used,
            },
        }
    }

    fn run(&self, mode: CheckMode) -> Result<Verdict> {
        match mode {
            CheckMode::Exact { max_subsets } => self.exact(max_subsets),
            CheckMode::Randomized { samples, seed } => Ok(self.randomized(samples, seed)),
            CheckMode::Auto { max_subsets, samples, seed } => {
                if self.required_subsets() <= max_subsets {
                    self.exact(max_subsets)
                } else {
                    Ok(self.randomized(samples, seed))
                }
            }
        }
    }
}

/// Does `G[host]` `(Δ, β, m)`-expand into `w`? Sets range over `host`.
pub fn check_expands_into_within(
    g: &Graph,
    host: &VertexSet,
    w: &VertexSet,
    p: ExpansionParams,
    mode: CheckMode,
) -> Result<Verdict> {
    let ind = g.induced_subgraph(host);
    let inv = ind.index_of(g.order());
    let w_local = VertexSet::from_iter_in(ind.map.len(), w.iter().filter_map(|v| inv[v]));
    let mut v = check_expands_into(&ind.graph, &w_local, p, mode)?;
    if let Some(s) = v.violating_set.as_mut() {
        *s = ind.lift_all(s);
    }
    Ok(v)
}

/// Does `g` `(Δ, β, m)`-expand into `w`?
pub fn check_expands_into(
    g: &Graph,
    w: &VertexSet,
    p: ExpansionParams,
    mode: CheckMode,
) -> Result<Verdict> {
    if w.universe() != g.order() {
        return Err(Error::Parameter("target set universe differs from graph order".into()));
    }
    let n = g.order();
    let half = n / 2;
    let large = if p.beta * p.m as f64 > 0.0 && p.m <= half { Some((p.m.max(1), half)) } else { None };
    let bm = p.beta * p.m as f64;
    let prob = Problem {
        g,
        pool: (0..n).collect(),
        small_target: w.clone(),
        small_factor: p.delta,
        small_below: p.m,
        large_range: large,
        large_need: Box::new(move |k| k as f64 + bm),
        params: serde_json::to_value(p).unwrap(),
    };
    prob.run(mode)
}

/// Is `h` a `(d, m, n)`-expander in `G[host]`?
pub fn check_dmn_expander_within(
    g: &Graph,
    host: &VertexSet,
    h: &VertexSet,
    p: DmnParams,
    mode: CheckMode,
) -> Result<Verdict> {
    if !h.is_subset(host) {
        return Err(Error::Parameter("expander vertex set must lie inside the host".into()));
    }
    let ind = g.induced_subgraph(host);
    let inv = ind.index_of(g.order());
    let h_local = VertexSet::from_iter_in(ind.map.len(), h.iter().filter_map(|v| inv[v]));
    let gl = &ind.graph;
    let large = if p.m <= h_local.len() && p.m >= 1 { Some((p.m, p.m)) } else { None };
    let need = p.n as f64;
    let prob = Problem {
        g: gl,
        pool: h_local.to_vec(),
        small_target: h_local.clone(),
        small_factor: p.d,
        small_below: p.m,
        large_range: large,
        large_need: Box::new(move |_| need),
        params: serde_json::to_value(p).unwrap(),
    };
    let mut v = prob.run(mode)?;
    if let Some(s) = v.violating_set.as_mut() {
        *s = ind.lift_all(s);
    }
    Ok(v)
}

pub fn check_dmn_expander(g: &Graph, h: &VertexSet, p: DmnParams, mode: CheckMode) -> Result<Verdict> {
    check_dmn_expander_within(g, &g.vertex_set(), h, p, mode)
}
