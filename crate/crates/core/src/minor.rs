//! Minor containment: a branch-set search with witnesses, a recursive
//! delete/contract reference implementation, and a fast series-parallel
//! reduction for K4-minor-freeness.

use std::collections::{BTreeSet, HashMap, HashSet};

use thiserror::Error;

use crate::graph::{Graph, MinorModel, Pattern, Vertex};

/// Default node budget for the branch-set search.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MinorError {
    #[error("minor search exceeded its node budget of {budget}")]
    BudgetExceeded { budget: u64 },
    #[error("pattern graph is empty")]
    EmptyPattern,
}

/// Decides whether `pattern` is a minor of `host`, returning a validated
/// branch-set witness when it is. Uses the default node budget.
pub fn has_minor(host: &Graph, pattern: &Graph) -> Result<Option<MinorModel>, MinorError> {
    has_minor_with_budget(host, pattern, DEFAULT_NODE_BUDGET)
}

/// As [`has_minor`] with an explicit node budget; exceeding the budget is
/// reported as an error, never as a negative answer.
pub fn has_minor_with_budget(
    host: &Graph,
    pattern: &Graph,
    budget: u64,
) -> Result<Option<MinorModel>, MinorError> {
    if pattern.vertex_count() == 0 {
        return Err(MinorError::EmptyPattern);
    }
    if pattern.vertex_count() > host.vertex_count()
        || pattern.edge_count() > host.edge_count()
    {
        return Ok(None);
    }
    let mut order: Vec<Vertex> = pattern.vertices().collect();
    // fail-first: highest-degree pattern vertices are placed first
    order.sort_by_key(|&v| (std::cmp::Reverse(pattern.degree(v)), v));
    let mut search = BranchSearch {
        host,
        pattern,
        order,
        sets: Vec::new(),
        used: vec![false; host.vertex_count()],
        witness: None,
        budget,
        nodes: 0,
    };
    if search.place(0)? {
        let found = search.witness.expect("witness recorded on success");
        let mut branch_sets = vec![BTreeSet::new(); pattern.vertex_count()];
        for (k, set) in found.iter().enumerate() {
            branch_sets[search.order[k]] = set.clone();
        }
        let model = MinorModel { branch_sets };
        debug_assert!(model.validate(host, pattern).is_ok());
        Ok(Some(model))
    } else {
        Ok(None)
    }
}

struct BranchSearch<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    order: Vec<Vertex>,
    sets: Vec<BTreeSet<Vertex>>,
    used: Vec<bool>,
    witness: Option<Vec<BTreeSet<Vertex>>>,
    budget: u64,
    nodes: u64,
}

impl BranchSearch<'_> {
    fn place(&mut self, k: usize) -> Result<bool, MinorError> {
        if k == self.order.len() {
            self.witness = Some(self.sets.clone());
            return Ok(true);
        }
        let free: Vec<Vertex> = (0..self.host.vertex_count())
            .filter(|&v| !self.used[v])
            .collect();
        let needed_after = self.order.len() - k - 1;
        if free.len() < needed_after + 1 {
            return Ok(false);
        }
        let max_size = free.len() - needed_after;
        let mut roots = free.clone();
        roots.sort_by_key(|&v| (std::cmp::Reverse(self.host.degree(v)), v));
        // Each root is banned for later roots so every connected subset of
        // the free vertices is enumerated exactly once.
        let mut banned: HashSet<Vertex> = HashSet::new();
        for &r in &roots {
            let set = BTreeSet::from([r]);
            if self.grow(k, set, &banned, max_size)? {
                return Ok(true);
            }
            banned.insert(r);
        }
        Ok(false)
    }

    fn grow(
        &mut self,
        k: usize,
        set: BTreeSet<Vertex>,
        banned: &HashSet<Vertex>,
        max_size: usize,
    ) -> Result<bool, MinorError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(MinorError::BudgetExceeded {
                budget: self.budget,
            });
        }
        if self.back_edges_covered(k, &set) {
            for &v in &set {
                self.used[v] = true;
            }
            self.sets.push(set.clone());
            let found = self.place(k + 1)?;
            self.sets.pop();
            for &v in &set {
                self.used[v] = false;
            }
            if found {
                return Ok(true);
            }
        }
        if set.len() == max_size {
            return Ok(false);
        }
        let mut candidates: Vec<Vertex> = (0..self.host.vertex_count())
            .filter(|&v| {
                !self.used[v]
                    && !banned.contains(&v)
                    && !set.contains(&v)
                    && set.iter().any(|&u| self.host.has_edge(u, v))
            })
            .collect();
        candidates.sort_by_key(|&v| (std::cmp::Reverse(self.host.degree(v)), v));
        let mut local_banned = banned.clone();
        for &c in &candidates {
            let mut next = set.clone();
            next.insert(c);
            if self.grow(k, next, &local_banned, max_size)? {
                return Ok(true);
            }
            local_banned.insert(c);
        }
        Ok(false)
    }

    /// Every pattern edge from the current pattern vertex back to an
    /// already-placed one must be realised by a host edge.
    fn back_edges_covered(&self, k: usize, set: &BTreeSet<Vertex>) -> bool {
        let pk = self.order[k];
        (0..k).all(|j| {
            let pj = self.order[j];
            if !self.pattern.has_edge(pj, pk) {
                return true;
            }
            self.sets[j]
                .iter()
                .any(|&u| set.iter().any(|&v| self.host.has_edge(u, v)))
        })
    }
}

/// True iff `g` has no K4 minor, via series-parallel reduction: repeatedly
/// remove vertices of degree at most 1 and suppress degree-2 vertices,
/// merging any parallel edge immediately. A graph reduces to nothing iff it
/// is K4-minor-free; a stuck graph has minimum degree 3 and so contains a
/// K4 subdivision.
pub fn is_k4_minor_free(g: &Graph) -> bool {
    let mut g = g.clone();
    loop {
        if g.vertex_count() == 0 {
            return true;
        }
        let low = g.vertices().find(|&v| g.degree(v) <= 1);
        if let Some(v) = low {
            g = g.delete_vertex(v).expect("vertex in range");
            continue;
        }
        let deg2 = g.vertices().find(|&v| g.degree(v) == 2);
        let Some(v) = deg2 else {
            return false;
        };
        let nb = g.neighbors(v);
        let (a, b) = (nb[0], nb[1]);
        g = g.delete_vertex(v).expect("vertex in range");
        let map = |x: Vertex| if x > v { x - 1 } else { x };
        let (a, b) = (map(a), map(b));
        if !g.has_edge(a, b) {
            g = g.add_edge(a, b).expect("endpoints in range");
        }
    }
}

/// Returns the first pattern of `family` found as a minor of `g`, with a
/// witness, or `None` if `g` avoids the whole family.
pub fn forbidden_minor_check(
    g: &Graph,
    family: &[Pattern],
) -> Result<Option<(Pattern, MinorModel)>, MinorError> {
    forbidden_minor_check_with_budget(g, family, DEFAULT_NODE_BUDGET)
}

pub fn forbidden_minor_check_with_budget(
    g: &Graph,
    family: &[Pattern],
    budget: u64,
) -> Result<Option<(Pattern, MinorModel)>, MinorError> {
    assert!(!family.is_empty(), "forbidden minor family must be nonempty");
    for &pattern in family {
        if let Some(model) = has_minor_with_budget(g, &pattern.build(), budget)? {
            return Ok(Some((pattern, model)));
        }
    }
    Ok(None)
}

/// Memo table for [`has_minor_recursive`], keyed by canonical forms.
pub type MinorMemo = HashMap<((usize, u128), (usize, u128)), bool>;

/// Reference implementation of minor containment by exhaustive edge
/// deletion, edge contraction and isolated-vertex deletion. Exponential;
/// used as the oracle the branch-set search is tested against.
pub fn has_minor_recursive(host: &Graph, pattern: &Graph, memo: &mut MinorMemo) -> bool {
    if pattern.vertex_count() > host.vertex_count()
        || pattern.edge_count() > host.edge_count()
    {
        return false;
    }
    let key = (host.canonical_key(), pattern.canonical_key());
    if let Some(&hit) = memo.get(&key) {
        return hit;
    }
    let mut found = host.vertex_count() == pattern.vertex_count()
        && host.edge_count() == pattern.edge_count()
        && host.is_isomorphic_to(pattern);
    if !found
        && host.vertex_count() > pattern.vertex_count() {
            if let Some(v) = host.vertices().find(|&v| host.degree(v) == 0) {
                let smaller = host.delete_vertex(v).expect("vertex in range");
                found = has_minor_recursive(&smaller, pattern, memo);
            }
        }
    if !found && host.edge_count() > pattern.edge_count() {
        for (u, v) in host.edge_vec() {
            let smaller = host.delete_edge(u, v).expect("edge present");
            if has_minor_recursive(&smaller, pattern, memo) {
                found = true;
                break;
            }
        }
    }
    if !found && host.vertex_count() > pattern.vertex_count() {
        for (u, v) in host.edge_vec() {
            let smaller = host.contract_edge(u, v).expect("edge present");
            if has_minor_recursive(&smaller, pattern, memo) {
                found = true;
                break;
            }
        }
    }
    memo.insert(key, found);
    found
}

/// All non-isomorphic graphs on exactly `n` vertices, generated by edge
/// augmentation with canonical-form deduplication.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    let mut all = Vec::new();
    let mut level = vec![Graph::empty(n)];
    let mut seen: HashSet<(usize, u128)> = level.iter().map(|g| g.canonical_key()).collect();
    while !level.is_empty() {
        all.extend(level.iter().cloned());
        let mut next = Vec::new();
        for g in &level {
            for u in 0..n {
                for v in u + 1..n {
                    if !g.has_edge(u, v) {
                        let h = g.add_edge(u, v).expect("endpoints in range");
                        if seen.insert(h.canonical_key()) {
                            next.push(h);
                        }
                    }
                }
            }
        }
        level = next;
    }
    all
}
