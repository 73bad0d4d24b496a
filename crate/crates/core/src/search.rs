//! Exact maximum-set computation.
//!
//! Three engines share the [`SearchResult`] certificate type:
//!
//! * [`exhaustive_max`] sweeps all subsets of a small graph — the reference
//!   oracle the other engines are tested against;
//! * [`branch_and_bound_max`] runs an include/exclude search with
//!   variant-sound pruning, seeded with a constructed or greedy lower bound;
//! * [`enumerate_optima`] lists every valid set of a given size, which is how
//!   uniqueness statements are certified.
//!
//! Pruning relies on the fact that the constraints among the chosen vertices
//! only get harder as the set grows: a superset of an invalid partial set is
//! invalid for the in-set pairs of every variant. The complement-side
//! constraints of the dual (and total) variants are not downward closed —
//! removing a vertex creates new required pairs — so those constraints are
//! only used for pruning in the direction that is sound (fixed complement
//! pairs against a growing set) and are re-checked in full at improvement
//! candidates.

use crate::error::{Error, Result};
use crate::graph::{all_pairs_distances, DistanceMatrix, Graph};
use crate::sierpinski::recognize_sierpinski_triangle;
use crate::visibility::{free_path_members, validate_set, Variant, VertexSet};

/// Default vertex-count ceiling for the exhaustive engine.
pub const DEFAULT_EXHAUSTIVE_VERTEX_LIMIT: usize = 20;
/// Default cap on how many optima [`enumerate_optima`] may return.
pub const DEFAULT_OPTIMA_CAP: usize = 100_000;

/// Outcome of an exact search: the optimum, one witness, and bookkeeping.
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub variant: Variant,
    pub optimum: usize,
    pub witness: VertexSet,
    pub nodes_explored: u64,
    /// True only when the engine ran to completion, so the optimum is proven.
    pub exact: bool,
    pub all_optima: Option<Vec<VertexSet>>,
}

/// True maximum by sweeping all `2^n` subsets; refuses graphs larger than
/// `vertex_limit`.
pub fn exhaustive_max(g: &Graph, variant: Variant, vertex_limit: usize) -> Result<SearchResult> {
    let n = g.vertex_count();
    if n > vertex_limit {
        return Err(Error::GraphTooLarge { vertices: n, limit: vertex_limit });
    }
    let dist = all_pairs_distances(g)?;
    let mut best: Option<VertexSet> = None;
    let mut nodes = 0u64;
    for mask in 0u64..(1u64 << n) {
        nodes += 1;
        let verts: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let size = verts.len();
        if size < best.as_ref().map_or(0, |b| b.len()) {
            continue;
        }
        let m = VertexSet::new(n, verts)?;
        if validate_set(g, &dist, &m, variant).is_none() {
            best = match best {
                Some(b) if b.len() > m.len() => Some(b),
                Some(b) if b.len() == m.len() && b.as_slice() <= m.as_slice() => Some(b),
                _ => Some(m),
            };
        }
    }
    let witness = best.expect("the empty set always validates");
    Ok(SearchResult {
        variant,
        optimum: witness.len(),
        witness,
        nodes_explored: nodes,
        exact: true,
        all_optima: None,
    })
}

/// Maximal (not maximum) valid set: adds vertices in ascending order,
/// keeping validity after every step.
pub fn greedy_lower_bound(g: &Graph, dist: &DistanceMatrix, variant: Variant) -> VertexSet {
    let n = g.vertex_count();
    let mut verts: Vec<usize> = Vec::new();
    for v in 0..n {
        verts.push(v);
        let m = VertexSet::new(n, verts.clone()).expect("indices are in range");
        if validate_set(g, dist, &m, variant).is_some() {
            verts.pop();
        }
    }
    VertexSet::new(n, verts).expect("indices are in range")
}

struct Bnb<'a> {
    g: &'a Graph,
    dist: &'a DistanceMatrix,
    variant: Variant,
    /// For each vertex, the pairs it lies strictly between.
    between_pairs: Vec<Vec<(usize, usize)>>,
    in_m: Vec<bool>,
    included: Vec<usize>,
    excluded: Vec<bool>,
    best: VertexSet,
    nodes: u64,
    budget: Option<u64>,
}

impl<'a> Bnb<'a> {
    /// Can `u` join the current set without breaking any constraint that is
    /// already forced? Sound because the in-set constraints of every variant
    /// are downward closed.
    fn compatible(&mut self, u: usize) -> bool {
        self.in_m[u] = true;
        self.included.push(u);
        let ok = self.compatible_inner(u);
        self.included.pop();
        self.in_m[u] = false;
        ok
    }

    fn compatible_inner(&self, u: usize) -> bool {
        let vis = |a: usize, b: usize| {
            free_path_members(self.g, self.dist, a, b, &self.included, |w| self.in_m[w], true)
        };
        match self.variant {
            Variant::Mutual => {
                for &w in &self.included {
                    if w != u && !vis(u, w) {
                        return false;
                    }
                }
                for &(a, b) in &self.between_pairs[u] {
                    if self.in_m[a] && self.in_m[b] && !vis(a, b) {
                        return false;
                    }
                }
                true
            }
            Variant::GeneralPosition => {
                // u between two chosen vertices, or a chosen vertex between
                // u and another chosen vertex
                for (i, &a) in self.included.iter().enumerate() {
                    for &b in &self.included[i + 1..] {
                        if self.dist.strictly_between(a, b, u) {
                            return false;
                        }
                    }
                    for &b in &self.included {
                        if b != a && self.dist.strictly_between(u, b, a) {
                            return false;
                        }
                    }
                }
                true
            }
            Variant::Outer => {
                for v in 0..self.g.vertex_count() {
                    if v != u && !vis(u, v) {
                        return false;
                    }
                }
                for &(a, b) in &self.between_pairs[u] {
                    if (self.in_m[a] || self.in_m[b]) && !vis(a, b) {
                        return false;
                    }
                }
                true
            }
            Variant::Total => {
                for &(a, b) in &self.between_pairs[u] {
                    if !vis(a, b) {
                        return false;
                    }
                }
                true
            }
            Variant::Dual => {
                for &w in &self.included {
                    if w != u && !vis(u, w) {
                        return false;
                    }
                }
                for &(a, b) in &self.between_pairs[u] {
                    let both_in = self.in_m[a] && self.in_m[b];
                    let both_out = self.excluded[a] && self.excluded[b];
                    if (both_in || both_out) && !vis(a, b) {
                        return false;
                    }
                }
                true
            }
        }
    }

    fn recurse(&mut self, candidates: &[usize]) -> Result<()> {
        self.nodes += 1;
        if let Some(budget) = self.budget {
            if self.nodes > budget {
                return Err(Error::NodeBudgetExhausted {
                    budget,
                    best: Box::new(SearchResult {
                        variant: self.variant,
                        optimum: self.best.len(),
                        witness: self.best.clone(),
                        nodes_explored: self.nodes,
                        exact: false,
                        all_optima: None,
                    }),
                });
            }
        }
        if self.included.len() + candidates.len() <= self.best.len() {
            return Ok(());
        }
        let Some((&c, rest)) = candidates.split_first() else {
            if self.included.len() > self.best.len() {
                let m = VertexSet::new(self.g.vertex_count(), self.included.clone())
                    .expect("indices are in range");
                if validate_set(self.g, self.dist, &m, self.variant).is_none() {
                    self.best = m;
                }
            }
            return Ok(());
        };
        // include branch
        self.included.push(c);
        self.in_m[c] = true;
        let filtered: Vec<usize> = rest.iter().copied().filter(|&u| self.compatible(u)).collect();
        self.recurse(&filtered)?;
        self.in_m[c] = false;
        self.included.pop();
        // exclude branch; for dual sets a pair of decided-out vertices that
        // is already blocked can never recover (the set only grows), so the
        // branch dies here
        self.excluded[c] = true;
        let mut dead = false;
        if self.variant == Variant::Dual {
            for v in 0..self.g.vertex_count() {
                if v != c
                    && self.excluded[v]
                    && !free_path_members(
                        self.g,
                        self.dist,
                        c,
                        v,
                        &self.included,
                        |w| self.in_m[w],
                        true,
                    )
                {
                    dead = true;
                    break;
                }
            }
        }
        if !dead {
            self.recurse(rest)?;
        }
        self.excluded[c] = false;
        Ok(())
    }
}

/// Exact maximum via depth-first include/exclude branching with
/// variant-sound pruning. The initial lower bound comes from the closed-form
/// construction when the graph is a recognized, canonically labeled
/// `ST_3^n`, from a greedy pass otherwise. Errors with the best-so-far lower
/// bound when `node_budget` runs out.
pub fn branch_and_bound_max(
    g: &Graph,
    variant: Variant,
    node_budget: Option<u64>,
) -> Result<SearchResult> {
    let n = g.vertex_count();
    let dist = all_pairs_distances(g)?;

    // seed: constructed set when recognized (re-validated in g), else greedy
    let mut seed = greedy_lower_bound(g, &dist, variant);
    if let Some(depth) = recognize_sierpinski_triangle(g) {
        if depth >= 1 {
            if let Ok(c) = crate::constructions::construct_for(
                &crate::sierpinski::build_sierpinski_triangle(depth)?,
                &dist,
                variant,
            ) {
                if c.vertices.len() > seed.len()
                    && validate_set(g, &dist, &c.vertices, variant).is_none()
                {
                    seed = c.vertices;
                }
            }
        }
    }

    // branching order: descending degree, ties by index
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));

    let mut between_pairs = vec![Vec::new(); n];
    for u in 0..n {
        for v in (u + 1)..n {
            for (w, pairs) in between_pairs.iter_mut().enumerate() {
                if dist.strictly_between(u, v, w) {
                    pairs.push((u, v));
                }
            }
        }
    }

    let mut ctx = Bnb {
        g,
        dist: &dist,
        variant,
        between_pairs,
        in_m: vec![false; n],
        included: Vec::new(),
        excluded: vec![false; n],
        best: seed,
        nodes: 0,
        budget: node_budget,
    };
    let roots: Vec<usize> = order.into_iter().filter(|&u| ctx.compatible(u)).collect();
    ctx.recurse(&roots)?;
    Ok(SearchResult {
        variant,
        optimum: ctx.best.len(),
        witness: ctx.best,
        nodes_explored: ctx.nodes,
        exact: true,
        all_optima: None,
    })
}

/// Every valid set of exactly `size` vertices, in lexicographic order.
/// Errors when more than `cap` sets exist.
pub fn enumerate_optima(
    g: &Graph,
    variant: Variant,
    size: usize,
    cap: usize,
) -> Result<Vec<VertexSet>> {
    let _n = g.vertex_count();
    let dist = all_pairs_distances(g)?;
    // downward-closed variants admit prefix pruning; dual does not
    let prefix_prunable = variant != Variant::Dual;
    let mut out: Vec<VertexSet> = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    fn go(
        g: &Graph,
        dist: &DistanceMatrix,
        variant: Variant,
        size: usize,
        cap: usize,
        prefix_prunable: bool,
        start: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<VertexSet>,
    ) -> Result<()> {
        if current.len() == size {
            let m = VertexSet::new(g.vertex_count(), current.clone())?;
            if validate_set(g, dist, &m, variant).is_none() {
                if out.len() == cap {
                    return Err(Error::OptimaCapExceeded { cap });
                }
                out.push(m);
            }
            return Ok(());
        }
        let remaining = size - current.len();
        for v in start..g.vertex_count() {
            if g.vertex_count() - v < remaining {
                break;
            }
            current.push(v);
            let viable = if prefix_prunable {
                let m = VertexSet::new(g.vertex_count(), current.clone())?;
                validate_set(g, dist, &m, variant).is_none()
            } else {
                true
            };
            if viable {
                go(g, dist, variant, size, cap, prefix_prunable, v + 1, current, out)?;
            }
            current.pop();
        }
        Ok(())
    }
    go(g, &dist, variant, size, cap, prefix_prunable, 0, &mut current, &mut out)?;
    Ok(out)
}
