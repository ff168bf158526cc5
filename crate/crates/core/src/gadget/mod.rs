//! Gadgets: vertex sets `J` with endpoints `a`, `b` and `a`–`b` paths of several
//! prescribed orders. A `k`-gadget has paths of orders `|J|` and `|J| − k`; a
//! `(≤k)`-gadget has every order from `|J| − k` to `|J|`.

mod build;

pub use build::{
    build_doubling_gadget, build_gadget_with_return, build_small_gadget, DoublingGadget,
    GadgetWithReturn, SmallGadget,
};
pub(crate) use build::{gadget_with_return_in, GadgetHost};

use crate::error::{construction, param, Result};
use crate::graph::{Graph, VertexSet};
use crate::search::{find_path_of_order, Budget, Search};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GadgetKind {
    Exact,
    Upto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gadget {
    pub vertices: Vec<usize>,
    pub a: usize,
    pub b: usize,
    pub shortfall: usize,
    pub kind: GadgetKind,
    /// Exact: `[long, short]`. Upto: `witnesses[i]` has order `|J| − i`.
    pub witnesses: Vec<Vec<usize>>,
}

impl Gadget {
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_set(&self, order: usize) -> VertexSet {
        VertexSet::from_iter_in(order, self.vertices.iter().copied())
    }

    /// Shortfalls this gadget can realize.
    pub fn shortfalls(&self) -> Vec<usize> {
        match self.kind {
            GadgetKind::Exact => vec![0, self.shortfall],
            GadgetKind::Upto => (0..=self.shortfall).collect(),
        }
    }

    /// The witness path of order `|J| − i`.
    pub fn witness(&self, i: usize) -> Option<&[usize]> {
        match self.kind {
            GadgetKind::Exact if i == 0 => Some(&self.witnesses[0]),
            GadgetKind::Exact if i == self.shortfall => Some(&self.witnesses[1]),
            GadgetKind::Exact => None,
            GadgetKind::Upto => self.witnesses.get(i).map(|w| w.as_slice()),
        }
    }

    /// Every witness is an `a`–`b` path in `g` inside `J` of its declared order.
    pub fn check(&self, g: &Graph) -> Result<()> {
        if self.a == self.b {
            return construction("gadget", "endpoints coincide");
        }
        let j = self.vertex_set(g.order());
        if j.len() != self.vertices.len() || !j.contains(self.a) || !j.contains(self.b) {
            return construction("gadget", "vertex list invalid or missing an endpoint");
        }
        let want = self.shortfalls();
        if want.len() != self.witnesses.len() {
            return construction("gadget", "wrong number of witnesses");
        }
        for (&i, w) in want.iter().zip(&self.witnesses) {
            let ok = w.len() == self.order() - i
                && w.first() == Some(&self.a)
                && w.last() == Some(&self.b)
                && w.iter().all(|&v| j.contains(v))
                && g.is_path(w);
            if !ok {
                return construction("gadget", format!("witness for shortfall {i} is invalid"));
            }
        }
        Ok(())
    }

    /// Same gadget read from `b` to `a`.
    pub fn reversed(&self) -> Gadget {
        let witnesses = self.witnesses.iter().map(|w| w.iter().rev().copied().collect()).collect();
        Gadget { a: self.b, b: self.a, witnesses, ..self.clone() }
    }

    /// Attaches `pre` (ending at `a`) and `post` (starting at `b`); the result is a
    /// gadget of the same kind and shortfall with the outer ends as endpoints.
    pub fn with_pendant_paths(&self, pre: &[usize], post: &[usize]) -> Result<Gadget> {
        if pre.last() != Some(&self.a) || post.first() != Some(&self.b) {
            return param("pendant paths must end at a and start at b");
        }
        let mut vertices = self.vertices.clone();
        vertices.extend(&pre[..pre.len() - 1]);
        vertices.extend(&post[1..]);
        vertices.sort_unstable();
        let witnesses = self
            .witnesses
            .iter()
            .map(|w| {
                let mut p = pre[..pre.len() - 1].to_vec();
                p.extend(w);
                p.extend(&post[1..]);
                p
            })
            .collect();
        Ok(Gadget {
            vertices,
            a: pre[0],
            b: *post.last().unwrap(),
            shortfall: self.shortfall,
            kind: self.kind,
            witnesses,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum GadgetVerification {
    Verified { gadget: Gadget },
    /// No `a`–`b` path of this order exists inside `J`.
    Refused { missing_order: usize },
    Indeterminate { order: usize },
}

/// Searches `G[j]` for every required `a`–`b` path order.
pub fn verify_gadget(
    g: &Graph,
    j: &VertexSet,
    a: usize,
    b: usize,
    k: usize,
    kind: GadgetKind,
    budget: &mut Budget,
) -> Result<GadgetVerification> {
    if !j.contains(a) || !j.contains(b) {
        return param("endpoints must lie in J");
    }
    if a == b {
        return param("endpoints must differ");
    }
    if k + 2 > j.len() {
        return Ok(GadgetVerification::Refused { missing_order: j.len().saturating_sub(k) });
    }
    let shortfalls: Vec<usize> = match kind {
        GadgetKind::Exact => vec![0, k],
        GadgetKind::Upto => (0..=k).collect(),
    };
    let mut witnesses = Vec::new();
    for i in shortfalls {
        let order = j.len() - i;
        match find_path_of_order(g, j, a, b, order, budget)? {
            Search::Found(p) => witnesses.push(p),
            Search::Absent => return Ok(GadgetVerification::Refused { missing_order: order }),
            Search::BudgetExhausted => return Ok(GadgetVerification::Indeterminate { order }),
        }
    }
    Ok(GadgetVerification::Verified {
        gadget: Gadget { vertices: j.to_vec(), a, b, shortfall: k, kind, witnesses },
    })
}
