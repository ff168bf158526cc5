//! Ramsey-level constructions and engines for a red cycle `C_n` against a blue
//! complete multipartite graph `K_{m_1,…,m_k}`.
//!
//! Engines never trust their own reasoning: every witness they return is re-checked
//! in the right color, and anything they cannot settle comes back as
//! [`Verdict::Inconclusive`] together with the stage trace.

mod colorings;
mod engines;
mod oracle;
mod partition;
mod prove;

pub use colorings::{lower_bound_coloring, refuting_coloring_general, verify_refutation, RefutationVerdict};
pub use engines::{bipartite_engine, connected_engine};
pub use oracle::{exact_ramsey_oracle, OracleMode, OracleResult};
pub use partition::{partition_structure, Partition};
pub use prove::prove_main;

use crate::error::{param, Result};
use crate::graph::TwoColoring;
use crate::profile::Profile;
use crate::search::{find_complete_multipartite, find_cycle_exact, is_complete_multipartite, Budget, Search};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamseyInstance {
    pub n: usize,
    /// Ascending.
    pub sizes: Vec<usize>,
}

impl RamseyInstance {
    pub fn new(n: usize, sizes: &[usize]) -> Result<Self> {
        if n < 3 {
            return param(format!("cycle length must be at least 3, got {n}"));
        }
        if sizes.is_empty() || sizes.contains(&0) {
            return param("part sizes must be positive and non-empty");
        }
        let mut sizes = sizes.to_vec();
        sizes.sort_unstable();
        Ok(RamseyInstance { n, sizes })
    }

    /// Number of parts, the chromatic number of the multipartite graph.
    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    /// Smallest part.
    pub fn sigma(&self) -> usize {
        self.sizes[0]
    }

    /// `(n − 1)(k − 1) + m_1`.
    pub fn formula(&self) -> usize {
        (self.n - 1) * (self.k() - 1) + self.sigma()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    RedCycle { cycle: Vec<usize> },
    /// Parts largest first.
    BlueMultipartite { parts: Vec<Vec<usize>> },
    /// Neither structure exists; both searches were exhaustive.
    Refuted { order: usize, red_edges: Vec<(usize, usize)> },
    Inconclusive { stage: String, reason: String },
}

impl Verdict {
    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Verdict::Inconclusive { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Verdict::RedCycle { .. } => "red-cycle",
            Verdict::BlueMultipartite { .. } => "blue-multipartite",
            Verdict::Refuted { .. } => "refuted",
            Verdict::Inconclusive { .. } => "inconclusive",
        }
    }

    fn refuted(c: &TwoColoring) -> Verdict {
        Verdict::Refuted { order: c.order(), red_edges: c.red().edges() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StageStatus {
    /// A hypothesis was tested and holds.
    Checked,
    /// A hypothesis was taken on trust.
    Assumed,
    /// A hypothesis was tested and fails.
    Falsified,
    Skipped,
    Ok,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageRecord {
    pub stage: String,
    pub status: StageStatus,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Trace(pub Vec<StageRecord>);

impl Trace {
    pub fn push(&mut self, stage: &str, status: StageStatus, detail: impl Into<String>) {
        self.0.push(StageRecord { stage: stage.into(), status, detail: detail.into() });
    }

    /// Records a hypothesis as checked or falsified.
    pub fn hypothesis(&mut self, stage: &str, holds: bool, detail: impl Into<String>) {
        let status = if holds { StageStatus::Checked } else { StageStatus::Falsified };
        self.push(stage, status, detail);
    }

    fn nest(&mut self, prefix: &str, inner: Trace) {
        for r in inner.0 {
            self.0.push(StageRecord { stage: format!("{prefix}/{}", r.stage), ..r });
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EngineReport {
    pub verdict: Verdict,
    pub trace: Trace,
}

/// Whether the witness in `v` is genuine for `c`. Refutations are re-proved by
/// exhaustive search; Inconclusive is always accepted.
pub fn verify_verdict(c: &TwoColoring, inst: &RamseyInstance, v: &Verdict) -> bool {
    match v {
        Verdict::RedCycle { cycle } => cycle.len() == inst.n && c.red().is_cycle(cycle),
        Verdict::BlueMultipartite { parts } => blue_witness_ok(c, &inst.sizes, parts),
        Verdict::Refuted { order, red_edges } => {
            *order == c.order()
                && *red_edges == c.red().edges()
                && matches!(verify_refutation(c, inst, None), Ok(RefutationVerdict::Refutes))
        }
        Verdict::Inconclusive { .. } => true,
    }
}

fn blue_witness_ok(c: &TwoColoring, sizes: &[usize], parts: &[Vec<usize>]) -> bool {
    let mut got: Vec<usize> = parts.iter().map(|p| p.len()).collect();
    got.sort_unstable();
    let mut want = sizes.to_vec();
    want.sort_unstable();
    got == want && parts.iter().flatten().all(|&v| v < c.order()) && is_complete_multipartite(c.blue(), parts)
}

/// Direct searches shared by the engines.
struct Direct<'a> {
    c: &'a TwoColoring,
    inst: &'a RamseyInstance,
    nodes: u64,
    blue_absent: bool,
    red_absent: bool,
}

impl<'a> Direct<'a> {
    fn new(c: &'a TwoColoring, inst: &'a RamseyInstance, profile: &Profile) -> Self {
        Direct { c, inst, nodes: profile.budgets.search_nodes, blue_absent: false, red_absent: false }
    }

    fn blue(&mut self, trace: &mut Trace) -> Option<Verdict> {
        let mut budget = Budget::nodes(self.nodes);
        let r = find_complete_multipartite(self.c.blue(), &self.inst.sizes, &mut budget).expect("sizes validated");
        match r {
            Search::Found(parts) => {
                trace.push("blue search", StageStatus::Ok, format!("found after {} nodes", budget.used()));
                return Some(Verdict::BlueMultipartite { parts });
            }
            Search::Absent => {
                self.blue_absent = true;
                trace.push("blue search", StageStatus::Ok, "absent (exhaustive)");
            }
            Search::BudgetExhausted => trace.push("blue search", StageStatus::Failed, "budget exhausted"),
        }
        None
    }

    fn red(&mut self, trace: &mut Trace) -> Option<Verdict> {
        let mut budget = Budget::nodes(self.nodes);
        match find_cycle_exact(self.c.red(), self.inst.n, &mut budget).expect("n validated") {
            Search::Found(cycle) => {
                trace.push("red search", StageStatus::Ok, format!("found after {} nodes", budget.used()));
                Some(Verdict::RedCycle { cycle })
            }
            Search::Absent => {
                self.red_absent = true;
                trace.push("red search", StageStatus::Ok, "absent (exhaustive)");
                None
            }
            Search::BudgetExhausted => {
                trace.push("red search", StageStatus::Failed, "budget exhausted");
                None
            }
        }
    }

    /// Red search, then a refutation if both searches came back exhaustively empty.
    fn finish(&mut self, trace: &mut Trace, stage: &str, reason: &str) -> Verdict {
        if !self.red_absent {
            if let Some(v) = self.red(trace) {
                return v;
            }
        }
        if self.red_absent && !self.blue_absent {
            if let Some(v) = self.blue(trace) {
                return v;
            }
        }
        if self.red_absent && self.blue_absent {
            return Verdict::refuted(self.c);
        }
        Verdict::Inconclusive { stage: stage.into(), reason: reason.into() }
    }
}

/// Re-checks a witness before it leaves an engine; a bad one is a bug, so it is
/// reported as Inconclusive rather than returned.
fn checked(c: &TwoColoring, inst: &RamseyInstance, v: Verdict, trace: &mut Trace) -> Verdict {
    if matches!(v, Verdict::Inconclusive { .. } | Verdict::Refuted { .. }) {
        return v;
    }
    if verify_verdict(c, inst, &v) {
        trace.push("re-verify", StageStatus::Ok, format!("{} witness holds", v.name()));
        v
    } else {
        trace.push("re-verify", StageStatus::Failed, format!("{} witness does not verify", v.name()));
        Verdict::Inconclusive { stage: "re-verify".into(), reason: "engine produced an invalid witness".into() }
    }
}
