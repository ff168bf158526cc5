use crate::error::{param, Result};
use serde::Serialize;

/// Rooted tree on nodes `0..order`, node 0 the root, stored as child lists. Nodes are
/// numbered so that every parent precedes its children.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootedTree {
    children: Vec<Vec<usize>>,
}

impl RootedTree {
    pub fn single() -> Self {
        RootedTree { children: vec![Vec::new()] }
    }

    /// Path rooted at one end.
    pub fn path(order: usize) -> Self {
        let order = order.max(1);
        let mut children = vec![Vec::new(); order];
        for (i, c) in children.iter_mut().enumerate().take(order - 1) {
            c.push(i + 1);
        }
        RootedTree { children }
    }

    pub fn star(leaves: usize) -> Self {
        let mut children = vec![Vec::new(); leaves + 1];
        children[0] = (1..=leaves).collect();
        RootedTree { children }
    }

    /// Heap-shaped binary tree: node `i` has children `2i+1` and `2i+2`.
    pub fn binary(order: usize) -> Self {
        let order = order.max(1);
        let children = (0..order)
            .map(|i| [2 * i + 1, 2 * i + 2].into_iter().filter(|&c| c < order).collect())
            .collect();
        RootedTree { children }
    }

    /// From a parent array (`parent[0]` ignored); parents must precede children.
    pub fn from_parents(parent: &[usize]) -> Result<Self> {
        if parent.is_empty() {
            return param("tree must have a root");
        }
        let mut children = vec![Vec::new(); parent.len()];
        for (v, &p) in parent.iter().enumerate().skip(1) {
            if p >= v {
                return param(format!("parent of node {v} must precede it"));
            }
            children[p].push(v);
        }
        Ok(RootedTree { children })
    }

    pub fn order(&self) -> usize {
        self.children.len()
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn parents(&self) -> Vec<Option<usize>> {
        let mut p = vec![None; self.order()];
        for (v, cs) in self.children.iter().enumerate() {
            for &c in cs {
                p[c] = Some(v);
            }
        }
        p
    }

    pub fn root_degree(&self) -> usize {
        self.children[0].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order())
            .map(|v| self.children[v].len() + usize::from(v != 0))
            .max()
            .unwrap_or(0)
    }

    pub fn depth(&self) -> usize {
        let mut d = vec![0; self.order()];
        for v in 0..self.order() {
            for &c in &self.children[v] {
                d[c] = d[v] + 1;
            }
        }
        d.into_iter().max().unwrap_or(0)
    }
}
