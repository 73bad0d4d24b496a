//! Decision procedures for visibility and general position sets.
//!
//! A set `M` of vertices blocks a pair `u, v` when every shortest `u,v`-path
//! passes through a vertex of `M` other than `u` and `v` themselves. The five
//! variants differ only in which pairs (or triples) are quantified:
//!
//! * mutual visibility: every pair inside `M` must be unblocked;
//! * total visibility: every pair of vertices of the graph;
//! * outer visibility: pairs inside `M` and pairs between `M` and its
//!   complement;
//! * dual visibility: pairs inside `M` and pairs inside the complement;
//! * general position: no vertex of `M` may lie strictly between two others
//!   of `M` on a shortest path.
//!
//! Pair checks are decided by reachability in the shortest-path DAG with the
//! blocked vertices removed, never by enumerating paths.

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};
use crate::sierpinski::{SierpinskiTriangle, SubtriangleAddress};

/// Which of the five set problems an operation targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Mutual,
    Total,
    Outer,
    Dual,
    GeneralPosition,
}

impl Variant {
    pub const ALL: [Variant; 5] =
        [Variant::Mutual, Variant::Total, Variant::Outer, Variant::Dual, Variant::GeneralPosition];

    /// Stable lowercase name, used in CLI flags and file headers.
    pub fn name(self) -> &'static str {
        match self {
            Variant::Mutual => "mutual",
            Variant::Total => "total",
            Variant::Outer => "outer",
            Variant::Dual => "dual",
            Variant::GeneralPosition => "gp",
        }
    }

    pub fn parse(s: &str) -> Result<Variant> {
        match s {
            "mutual" | "mv" => Ok(Variant::Mutual),
            "total" => Ok(Variant::Total),
            "outer" => Ok(Variant::Outer),
            "dual" => Ok(Variant::Dual),
            "gp" | "general-position" => Ok(Variant::GeneralPosition),
            other => Err(Error::InvalidArgument(format!("unknown variant '{other}'"))),
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A set of vertices of a fixed host graph, kept sorted with a membership
/// bitmap for O(1) lookups.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct VertexSet {
    host_size: usize,
    verts: Vec<usize>,
}

impl VertexSet {
    /// Builds a set from indices; sorts them and rejects duplicates and
    /// out-of-range entries.
    pub fn new(host_size: usize, mut verts: Vec<usize>) -> Result<Self> {
        verts.sort_unstable();
        if let Some(&v) = verts.iter().find(|&&v| v >= host_size) {
            return Err(Error::VertexOutOfRange { vertex: v, count: host_size });
        }
        if verts.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("duplicate vertex in set".into()));
        }
        Ok(VertexSet { host_size, verts })
    }

    pub fn empty(host_size: usize) -> Self {
        VertexSet { host_size, verts: Vec::new() }
    }

    pub fn host_size(&self) -> usize {
        self.host_size
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.verts.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.verts.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.verts
    }

    /// Ascending complement within the host graph.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.host_size).filter(|&v| !self.contains(v)).collect()
    }

    /// A copy with one more vertex.
    pub fn with_vertex(&self, v: usize) -> Result<Self> {
        let mut verts = self.verts.clone();
        verts.push(v);
        Self::new(self.host_size, verts)
    }
}

impl std::fmt::Display for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for v in &self.verts {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// Counterexample certificate returned by [`validate_set`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// Every shortest `u,v`-path meets the set strictly inside.
    PairNotVisible { u: usize, v: usize },
    /// `w` lies strictly between `u` and `v`: `d(u,v) = d(u,w) + d(w,v)`.
    CollinearTriple { u: usize, w: usize, v: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::PairNotVisible { u, v } => write!(f, "PAIR_NOT_VISIBLE {u} {v}"),
            Violation::CollinearTriple { u, w, v } => write!(f, "COLLINEAR_TRIPLE {u} {w} {v}"),
        }
    }
}

/// True when a shortest `u,v`-path exists avoiding the blocking set strictly
/// inside; the start `u` is always usable, and the target `v` too unless
/// `exempt_target` is false and `v` itself is in the set.
///
/// `members` lists the blocking set (any order) for the fast pre-scan;
/// `in_set` must agree with it. When no member lies on the interval, any
/// geodesic is free and no traversal happens.
pub(crate) fn free_path_members<F>(
    g: &Graph,
    dist: &DistanceMatrix,
    u: usize,
    v: usize,
    members: &[usize],
    in_set: F,
    exempt_target: bool,
) -> bool
where
    F: Fn(usize) -> bool,
{
    if u == v {
        return true;
    }
    if !exempt_target && in_set(v) {
        return false;
    }
    let total = dist.get(u, v);
    let mut any_blocked = false;
    for &m in members {
        if m != u && m != v && dist.get(u, m) + dist.get(m, v) == total {
            any_blocked = true;
            break;
        }
    }
    if !any_blocked {
        return true;
    }
    // BFS over the shortest-path DAG restricted to unblocked vertices.
    let mut seen = vec![false; g.vertex_count()];
    let mut queue = std::collections::VecDeque::new();
    seen[u] = true;
    queue.push_back(u);
    while let Some(a) = queue.pop_front() {
        for &b in g.neighbors(a) {
            if seen[b]
                || dist.get(u, a) + 1 != dist.get(u, b)
                || dist.get(u, b) + dist.get(b, v) != total
            {
                continue;
            }
            if b == v {
                return true;
            }
            if in_set(b) {
                continue;
            }
            seen[b] = true;
            queue.push_back(b);
        }
    }
    false
}

/// True when `u` and `v` admit a shortest path avoiding `M` except at the
/// endpoints themselves. Symmetric in `u` and `v`; adjacent pairs are always
/// visible. Requires `u != v`.
pub fn pair_visible(
    g: &Graph,
    dist: &DistanceMatrix,
    m: &VertexSet,
    u: usize,
    v: usize,
) -> bool {
    debug_assert_ne!(u, v, "pair_visible is defined for distinct vertices");
    free_path_members(g, dist, u, v, m.as_slice(), |w| m.contains(w), true)
}

/// Checks exactly the quantifier set of the variant, scanning pairs in
/// lexicographic order, and returns the first violation (or `None` when the
/// set is valid).
pub fn validate_set(
    g: &Graph,
    dist: &DistanceMatrix,
    m: &VertexSet,
    variant: Variant,
) -> Option<Violation> {
    let n = g.vertex_count();
    match variant {
        Variant::GeneralPosition => {
            for (i, u) in m.iter().enumerate() {
                for v in m.as_slice()[i + 1..].iter().copied() {
                    for w in m.iter() {
                        if w != u && w != v && dist.on_interval(u, v, w) {
                            return Some(Violation::CollinearTriple { u, w, v });
                        }
                    }
                }
            }
            None
        }
        _ => {
            for u in 0..n {
                for v in (u + 1)..n {
                    let required = match variant {
                        Variant::Mutual => m.contains(u) && m.contains(v),
                        Variant::Total => true,
                        Variant::Outer => m.contains(u) || m.contains(v),
                        Variant::Dual => m.contains(u) == m.contains(v),
                        Variant::GeneralPosition => unreachable!(),
                    };
                    if required && !pair_visible(g, dist, m, u, v) {
                        return Some(Violation::PairNotVisible { u, v });
                    }
                }
            }
            None
        }
    }
}

/// Local properness of `M` on an addressed `ST_3^2` copy: every member of
/// `M` inside the copy sees every extreme of the copy, and no interval
/// between two extremes of the copy meets `M` (endpoints included).
pub fn is_h2_proper(
    st: &SierpinskiTriangle,
    dist: &DistanceMatrix,
    m: &VertexSet,
    addr: &SubtriangleAddress,
) -> Result<bool> {
    let copy = st.subtriangle_vertices(addr)?;
    let members: Vec<usize> = copy.iter().copied().filter(|&v| m.contains(v)).collect();
    if members.is_empty() {
        return Ok(true);
    }
    let ex = st.subtriangle_extremes(addr)?;
    for i in 0..3 {
        for j in (i + 1)..3 {
            if m.iter().any(|w| dist.on_interval(ex[i], ex[j], w)) {
                return Ok(false);
            }
        }
    }
    for &u in &members {
        for &p in &ex {
            if u != p && !pair_visible(st.graph(), dist, m, u, p) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outer-properness of `M` on an addressed `ST_3^2` copy: every vertex of
/// the copy can reach every extreme of the copy along a shortest path that
/// avoids `M` entirely, except for the moving vertex itself. The extreme is
/// not exempted: the copy's corners act as way stations for longer paths, so
/// a corner inside `M` disqualifies the copy.
pub fn is_h2_outer_proper(
    st: &SierpinskiTriangle,
    dist: &DistanceMatrix,
    m: &VertexSet,
    addr: &SubtriangleAddress,
) -> Result<bool> {
    let copy = st.subtriangle_vertices(addr)?;
    let ex = st.subtriangle_extremes(addr)?;
    for &u in &copy {
        for &p in &ex {
            if u == p {
                continue;
            }
            if !free_path_members(st.graph(), dist, u, p, m.as_slice(), |w| m.contains(w), false)
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
