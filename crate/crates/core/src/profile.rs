//! Numeric constants for the constructions and engines, with a `paper` preset holding
//! the asymptotic values and a `desk` preset that shrinks multiplicative constants so
//! the same recipes run on graphs with a few hundred vertices.

use crate::error::{param, Error, Result};
use serde::{Deserialize, Serialize};

/// `(Δ, β, M)` used when extracting an expander for one construction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpanderConstants {
    pub big_m: f64,
    pub delta: f64,
    pub beta: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReturnGadgetConstants {
    pub lambda: f64,
    pub mu: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Budgets {
    /// Backtracking nodes per exact search.
    pub search_nodes: u64,
    /// Distinct derived paths explored by a rotation closure.
    pub rotation_states: usize,
    /// Subset cap for exact expansion checks.
    pub exact_subsets: u64,
    /// Samples for the randomized expansion falsifier.
    pub check_samples: usize,
    /// Tree embedding backtracking nodes.
    pub embed_nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Profile {
    pub name: String,
    /// Gadget-with-return size factor: `|G| ≥ N_1 λ μ k m`.
    pub n1: f64,
    /// Exact-length connection threshold: `n ≥ N_2 m`.
    pub n2: f64,
    /// Connected engine threshold: `n ≥ N_3 m`.
    pub n3: f64,
    /// Partition step threshold: `n ≥ N_3' m`.
    pub n3_partition: f64,
    /// Main pipeline threshold: `n ≥ N_3'' m_k`.
    pub n3_main: f64,
    /// Small and doubling gadget size factors: `|G| ≥ c k m`.
    pub small_gadget_factor: f64,
    pub doubling_gadget_factor: f64,
    /// Return-path length constant: `μm ≥ c (λm)^{3/4}`.
    pub return_path_constant: f64,
    pub small_gadget: ExpanderConstants,
    pub doubling_gadget: ExpanderConstants,
    pub return_gadget: ExpanderConstants,
    /// `(λ, μ)` inside the exact-length connection.
    pub connect_gadget: ReturnGadgetConstants,
    /// `(λ, μ)` inside the connected engine.
    pub connected_gadget: ReturnGadgetConstants,
    /// `m_i ≥ i^e` in the main pipeline.
    pub exp_main: u32,
    /// `m ≥ k^e` in the partition step.
    pub exp_partition: u32,
    /// Separator size `k^e` in the partition step and path count in the connected engine.
    pub exp_paths: u32,
    /// Path count used when joining gadget-cycles in the connected engine.
    pub exp_join_paths: u32,
    /// `|S| ≤ k^e` bound on the partition's leftover set.
    pub exp_leftover: u32,
    /// Additive slack on every "≤ bound" check.
    pub slack: usize,
    /// Cap on embedded tree orders; `None` uses the full order.
    pub tree_order_cap: Option<usize>,
    pub budgets: Budgets,
}

impl Default for Profile {
    fn default() -> Self {
        Profile::desk()
    }
}

impl Profile {
    pub fn paper() -> Self {
        Profile {
            name: "paper".into(),
            n1: 1e7,
            n2: 2e49,
            n3: 1e56,
            n3_partition: 1e58,
            n3_main: 1e60,
            small_gadget_factor: 9_100_000.0,
            doubling_gadget_factor: 9_500_000.0,
            return_path_constant: 4100.0,
            small_gadget: ExpanderConstants { big_m: 9_000_000.0, delta: 4000.0, beta: 1_500_000.0 },
            doubling_gadget: ExpanderConstants { big_m: 9_500_000.0, delta: 40_000.0, beta: 1_500_000.0 },
            return_gadget: ExpanderConstants { big_m: 1e7, delta: 40_000.0, beta: 1_500_000.0 },
            connect_gadget: ReturnGadgetConstants { lambda: 1e21, mu: 1e20 },
            connected_gadget: ReturnGadgetConstants { lambda: 1e24, mu: 1e21 },
            exp_main: 22,
            exp_partition: 21,
            exp_paths: 20,
            exp_join_paths: 12,
            exp_leftover: 11,
            slack: 2,
            tree_order_cap: None,
            budgets: Budgets::default_desk(),
        }
    }

    pub fn desk() -> Self {
        let e = ExpanderConstants { big_m: 15.0, delta: 0.5, beta: 1.6 };
        Profile {
            name: "desk".into(),
            n1: 0.25,
            n2: 16.0,
            n3: 4.0,
            n3_partition: 2.0,
            n3_main: 2.0,
            small_gadget_factor: 20.0,
            doubling_gadget_factor: 20.0,
            return_path_constant: 1.0,
            small_gadget: e,
            doubling_gadget: e,
            return_gadget: e,
            connect_gadget: ReturnGadgetConstants { lambda: 2.0, mu: 1.0 },
            connected_gadget: ReturnGadgetConstants { lambda: 2.0, mu: 1.0 },
            exp_main: 0,
            exp_partition: 0,
            exp_paths: 1,
            exp_join_paths: 1,
            exp_leftover: 1,
            slack: 2,
            tree_order_cap: Some(4),
            budgets: Budgets::default_desk(),
        }
    }

    /// `paper`, `desk`, or `file:<path>` (JSON; missing fields take desk values).
    pub fn load(spec: &str) -> Result<Self> {
        match spec {
            "paper" => Ok(Self::paper()),
            "desk" => Ok(Self::desk()),
            s => match s.strip_prefix("file:") {
                Some(path) => {
                    let text = std::fs::read_to_string(path)?;
                    let mut p: Profile = serde_json::from_str(&text)
                        .map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
                    if p.name == "desk" {
                        p.name = format!("file:{path}");
                    }
                    p.validate()?;
                    Ok(p)
                }
                None => param(format!("unknown profile {s:?}; expected paper, desk or file:<path>")),
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            self.n1,
            self.n2,
            self.n3,
            self.n3_partition,
            self.n3_main,
            self.small_gadget_factor,
            self.doubling_gadget_factor,
            self.return_path_constant,
        ];
        if all.iter().any(|&x| !(x > 0.0)) {
            return param("profile constants must be positive");
        }
        Ok(())
    }

    pub fn is_paper(&self) -> bool {
        self.name == "paper"
    }

    pub fn tree_order(&self, wanted: usize) -> usize {
        self.tree_order_cap.map_or(wanted, |c| wanted.min(c)).max(1)
    }

    pub fn check_mode(&self, seed: u64) -> crate::expander::CheckMode {
        crate::expander::CheckMode::Auto {
            max_subsets: self.budgets.exact_subsets,
            samples: self.budgets.check_samples,
            seed,
        }
    }
}

impl Budgets {
    fn default_desk() -> Self {
        Budgets {
            search_nodes: 2_000_000,
            rotation_states: 20_000,
            exact_subsets: 1 << 20,
            check_samples: 64,
            embed_nodes: 200_000,
        }
    }
}
