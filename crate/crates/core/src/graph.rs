//! Immutable simple undirected graphs with the metric primitives everything
//! else is built on: BFS distances, intervals, shortest-path DAGs and bounded
//! shortest-path enumeration.

use crate::error::{Error, Result};

/// Distance value type; `INFINITE_DISTANCE` marks unreachable vertices.
pub type Distance = u32;

/// Sentinel for "no path".
pub const INFINITE_DISTANCE: Distance = Distance::MAX;

/// Default cap on the number of shortest paths a single enumeration may produce.
pub const DEFAULT_PATH_CAP: usize = 1_000_000;

/// An immutable simple undirected graph with sorted adjacency lists and an
/// optional per-vertex label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list. Rejects loops,
    /// duplicate edges and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, count: n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, count: n });
            }
            if u == v {
                return Err(Error::InvalidEdge { u, v, reason: "loop".into() });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                let v = list.windows(2).find(|w| w[0] == w[1]).unwrap()[0];
                return Err(Error::InvalidEdge { u, v, reason: "duplicate edge".into() });
            }
        }
        Ok(Graph { adj, labels: None })
    }

    /// Attaches one label per vertex.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.vertex_count() {
            return Err(Error::InvalidArgument(format!(
                "label count {} does not match vertex count {}",
                labels.len(),
                self.vertex_count()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Vertex label, if labels are attached.
    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// All edges as sorted `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.adj.len() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Induced subgraph on `verts` (which must be sorted and in range).
    /// Vertex `i` of the result corresponds to `verts[i]`.
    pub fn induced_subgraph(&self, verts: &[usize]) -> Result<Graph> {
        let mut pos = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in verts.iter().enumerate() {
            if v >= self.vertex_count() {
                return Err(Error::VertexOutOfRange { vertex: v, count: self.vertex_count() });
            }
            pos[v] = i;
        }
        let mut adj = vec![Vec::new(); verts.len()];
        for (i, &v) in verts.iter().enumerate() {
            for &w in &self.adj[v] {
                if pos[w] != usize::MAX {
                    adj[i].push(pos[w]);
                }
            }
            adj[i].sort_unstable();
        }
        Ok(Graph { adj, labels: None })
    }
}

/// All-pairs shortest-path distances of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<Distance>,
}

impl DistanceMatrix {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Distance {
        self.d[u * self.n + v]
    }

    /// Largest entry of the matrix (the graph diameter).
    pub fn max_distance(&self) -> Distance {
        self.d.iter().copied().max().unwrap_or(0)
    }

    /// True when `w` lies on some shortest `u,v`-path (endpoints included).
    #[inline]
    pub fn on_interval(&self, u: usize, v: usize, w: usize) -> bool {
        self.get(u, w) + self.get(w, v) == self.get(u, v)
    }

    /// True when `w` is strictly between `u` and `v` on some shortest path.
    #[inline]
    pub fn strictly_between(&self, u: usize, v: usize, w: usize) -> bool {
        w != u && w != v && self.on_interval(u, v, w)
    }
}

/// Single-source BFS distances; unreachable vertices get `INFINITE_DISTANCE`.
pub fn bfs_distances(g: &Graph, source: usize) -> Result<Vec<Distance>> {
    let n = g.vertex_count();
    if source >= n {
        return Err(Error::VertexOutOfRange { vertex: source, count: n });
    }
    let mut dist = vec![INFINITE_DISTANCE; n];
    dist[source] = 0;
    let mut queue = std::collections::VecDeque::with_capacity(n);
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if dist[v] == INFINITE_DISTANCE {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    Ok(dist)
}

/// All-pairs distances; errors with a witness pair when the graph is
/// disconnected.
pub fn all_pairs_distances(g: &Graph) -> Result<DistanceMatrix> {
    let n = g.vertex_count();
    let mut d = vec![0; n * n];
    for u in 0..n {
        let row = bfs_distances(g, u)?;
        if let Some(v) = row.iter().position(|&x| x == INFINITE_DISTANCE) {
            return Err(Error::Disconnected { from: u, to: v });
        }
        d[u * n..(u + 1) * n].copy_from_slice(&row);
    }
    Ok(DistanceMatrix { n, d })
}

fn check_vertex(g: &Graph, v: usize) -> Result<()> {
    if v >= g.vertex_count() {
        return Err(Error::VertexOutOfRange { vertex: v, count: g.vertex_count() });
    }
    Ok(())
}

/// The interval `I(u, v)`: all vertices on at least one shortest `u,v`-path,
/// endpoints included. Sorted ascending.
pub fn interval(g: &Graph, dist: &DistanceMatrix, u: usize, v: usize) -> Result<Vec<usize>> {
    check_vertex(g, u)?;
    check_vertex(g, v)?;
    Ok((0..g.vertex_count()).filter(|&w| dist.on_interval(u, v, w)).collect())
}

/// The DAG of all shortest `u,v`-paths. Vertices are `interval(u, v)`; an arc
/// `a -> b` is present exactly when `{a, b}` is an edge, both lie on the
/// interval and `d(u, a) + 1 = d(u, b)`.
#[derive(Debug, Clone)]
pub struct ShortestPathDag {
    source: usize,
    target: usize,
    verts: Vec<usize>,
    /// Successor lists parallel to `verts`, holding indices into `verts`.
    succ: Vec<Vec<usize>>,
    /// Distance from the source, parallel to `verts`.
    depth: Vec<Distance>,
}

impl ShortestPathDag {
    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    /// Interval vertices, sorted ascending.
    pub fn vertices(&self) -> &[usize] {
        &self.verts
    }

    /// Arcs as `(a, b)` pairs of original vertex ids, lexicographic order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, succs) in self.succ.iter().enumerate() {
            for &j in succs {
                out.push((self.verts[i], self.verts[j]));
            }
        }
        out.sort_unstable();
        out
    }

    fn position(&self, v: usize) -> Option<usize> {
        self.verts.binary_search(&v).ok()
    }

    /// Number of distinct shortest `u,v`-paths, by DP over the DAG.
    pub fn path_count(&self) -> u128 {
        let n = self.verts.len();
        let target = self.position(self.target).expect("target lies on its own interval");
        let source = self.position(self.source).expect("source lies on its own interval");
        let mut count = vec![0u128; n];
        count[target] = 1;
        // Arcs run from lower to higher source-distance, so decreasing depth
        // is a topological order with successors finished first.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_unstable_by_key(|&i| std::cmp::Reverse(self.depth[i]));
        for i in order {
            if i != target {
                count[i] = self.succ[i].iter().map(|&j| count[j]).sum();
            }
        }
        count[source]
    }
}

/// Builds the shortest-path DAG from `u` to `v`.
pub fn shortest_path_dag(
    g: &Graph,
    dist: &DistanceMatrix,
    u: usize,
    v: usize,
) -> Result<ShortestPathDag> {
    let verts = interval(g, dist, u, v)?;
    let mut succ = vec![Vec::new(); verts.len()];
    let mut depth = vec![0; verts.len()];
    for (i, &a) in verts.iter().enumerate() {
        depth[i] = dist.get(u, a);
        for &b in g.neighbors(a) {
            if dist.on_interval(u, v, b) && dist.get(u, a) + 1 == dist.get(u, b) {
                let j = verts.binary_search(&b).unwrap();
                succ[i].push(j);
            }
        }
        succ[i].sort_unstable();
    }
    Ok(ShortestPathDag { source: u, target: v, verts, succ, depth })
}

/// Enumerates every distinct shortest `u,v`-path as a vertex sequence, in
/// lexicographic order. Errors with `PathCapExceeded` instead of truncating
/// when there are more than `cap` paths.
pub fn enumerate_shortest_paths(
    g: &Graph,
    dist: &DistanceMatrix,
    u: usize,
    v: usize,
    cap: usize,
) -> Result<Vec<Vec<usize>>> {
    if cap == 0 {
        return Err(Error::InvalidArgument("path cap must be at least 1".into()));
    }
    let dag = shortest_path_dag(g, dist, u, v)?;
    let mut out = Vec::new();
    let mut stack = vec![u];
    let upos = dag.position(u).unwrap();
    // Iterative DFS over the DAG; successor lists are sorted, so paths come
    // out in lexicographic order.
    let mut frames: Vec<(usize, usize)> = vec![(upos, 0)];
    while let Some(&mut (i, ref mut next)) = frames.last_mut() {
        if dag.verts[i] == v {
            if out.len() == cap {
                return Err(Error::PathCapExceeded { u, v, cap });
            }
            out.push(stack.clone());
            frames.pop();
            stack.pop();
            continue;
        }
        if *next < dag.succ[i].len() {
            let j = dag.succ[i][*next];
            *next += 1;
            frames.push((j, 0));
            stack.push(dag.verts[j]);
        } else {
            frames.pop();
            stack.pop();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sierpinski::build_sierpinski_triangle;

    pub(crate) fn k3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    fn p3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn c4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap()
    }

    /// Independent oracle: enumerate all simple u,v-paths of length exactly
    /// `len` by DFS over the raw adjacency, without the DAG machinery.
    fn brute_force_paths(g: &Graph, u: usize, v: usize, len: usize) -> Vec<Vec<usize>> {
        fn go(
            g: &Graph,
            v: usize,
            len: usize,
            path: &mut Vec<usize>,
            seen: &mut Vec<bool>,
            out: &mut Vec<Vec<usize>>,
        ) {
            let cur = *path.last().unwrap();
            if path.len() == len + 1 {
                if cur == v {
                    out.push(path.clone());
                }
                return;
            }
            for &w in g.neighbors(cur) {
                if !seen[w] {
                    seen[w] = true;
                    path.push(w);
                    go(g, v, len, path, seen, out);
                    path.pop();
                    seen[w] = false;
                }
            }
        }
        let mut seen = vec![false; g.vertex_count()];
        seen[u] = true;
        let mut out = Vec::new();
        go(g, v, len, &mut vec![u], &mut seen, &mut out);
        out.sort();
        out
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(matches!(
            Graph::from_edges(2, &[(0, 0)]),
            Err(Error::InvalidEdge { .. })
        ));
        assert!(matches!(
            Graph::from_edges(2, &[(0, 1), (1, 0)]),
            Err(Error::InvalidEdge { .. })
        ));
        assert!(matches!(
            Graph::from_edges(2, &[(0, 5)]),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn bfs_on_complete_graph() {
        let d = bfs_distances(&k3(), 0).unwrap();
        assert_eq!(d, vec![0, 1, 1]);
    }

    #[test]
    fn bfs_on_path_graph() {
        let d = bfs_distances(&p3(), 0).unwrap();
        assert_eq!(d, vec![0, 1, 2]);
    }

    #[test]
    fn bfs_rejects_out_of_range_source() {
        assert!(matches!(
            bfs_distances(&k3(), 7),
            Err(Error::VertexOutOfRange { vertex: 7, .. })
        ));
    }

    #[test]
    fn bfs_from_extreme_of_st1_reaches_other_extremes_at_two() {
        let st = build_sierpinski_triangle(1).unwrap();
        let [a, b, c] = st.extreme_vertices();
        let d = bfs_distances(st.graph(), a).unwrap();
        assert_eq!(d[b], 2);
        assert_eq!(d[c], 2);
    }

    #[test]
    fn all_pairs_matches_bfs_rows_and_invariants() {
        let st = build_sierpinski_triangle(2).unwrap();
        let g = st.graph();
        let dist = all_pairs_distances(g).unwrap();
        let n = g.vertex_count();
        for u in 0..n {
            let row = bfs_distances(g, u).unwrap();
            for v in 0..n {
                assert_eq!(dist.get(u, v), row[v]);
                assert_eq!(dist.get(u, v), dist.get(v, u));
                assert_eq!(dist.get(u, v) == 1, g.has_edge(u, v));
            }
            assert_eq!(dist.get(u, u), 0);
        }
        // triangle inequality
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    assert!(dist.get(u, w) <= dist.get(u, v) + dist.get(v, w));
                }
            }
        }
        assert_eq!(dist.max_distance(), 4);
    }

    #[test]
    fn all_pairs_diameter_of_st3_is_eight() {
        let st = build_sierpinski_triangle(3).unwrap();
        let dist = all_pairs_distances(st.graph()).unwrap();
        assert_eq!(dist.max_distance(), 8);
    }

    #[test]
    fn all_pairs_rejects_disconnected() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(all_pairs_distances(&g), Err(Error::Disconnected { .. })));
    }

    #[test]
    fn interval_on_complete_graph_is_endpoints() {
        let g = k3();
        let dist = all_pairs_distances(&g).unwrap();
        assert_eq!(interval(&g, &dist, 0, 1).unwrap(), vec![0, 1]);
    }

    #[test]
    fn interval_of_vertex_with_itself() {
        let g = k3();
        let dist = all_pairs_distances(&g).unwrap();
        assert_eq!(interval(&g, &dist, 2, 2).unwrap(), vec![2]);
    }

    #[test]
    fn interval_between_extremes_of_st1_is_three_vertices() {
        let st = build_sierpinski_triangle(1).unwrap();
        let g = st.graph();
        let dist = all_pairs_distances(g).unwrap();
        let [a, b, _] = st.extreme_vertices();
        // oracle: test d(a,w)+d(w,b) == d(a,b) over all six vertices
        let expect: Vec<usize> = (0..g.vertex_count())
            .filter(|&w| dist.get(a, w) + dist.get(w, b) == dist.get(a, b))
            .collect();
        assert_eq!(expect.len(), 3);
        let got = interval(g, &dist, a, b).unwrap();
        assert_eq!(got, expect);
        // the midpoint is the unique common neighbor of the two extremes
        let mid = got.iter().copied().find(|&w| w != a && w != b).unwrap();
        assert!(g.has_edge(a, mid) && g.has_edge(mid, b));
    }

    #[test]
    fn dag_on_adjacent_pair_is_single_arc() {
        let g = k3();
        let dist = all_pairs_distances(&g).unwrap();
        let dag = shortest_path_dag(&g, &dist, 0, 1).unwrap();
        assert_eq!(dag.arcs(), vec![(0, 1)]);
        assert_eq!(dag.path_count(), 1);
    }

    #[test]
    fn dag_between_st1_extremes_has_two_arcs() {
        let st = build_sierpinski_triangle(1).unwrap();
        let g = st.graph();
        let dist = all_pairs_distances(g).unwrap();
        let [a, b, _] = st.extreme_vertices();
        let dag = shortest_path_dag(g, &dist, a, b).unwrap();
        assert_eq!(dag.arcs().len(), 2);
        assert_eq!(dag.path_count(), 1);
    }

    #[test]
    fn dag_between_st2_extremes_covers_the_side() {
        let st = build_sierpinski_triangle(2).unwrap();
        let g = st.graph();
        let dist = all_pairs_distances(g).unwrap();
        let [a, b, _] = st.extreme_vertices();
        let dag = shortest_path_dag(g, &dist, a, b).unwrap();
        assert_eq!(dag.vertices(), interval(g, &dist, a, b).unwrap().as_slice());
        // oracle: brute-force enumeration of all minimum-length a,b-paths
        let oracle = brute_force_paths(g, a, b, dist.get(a, b) as usize);
        assert_eq!(dag.path_count(), oracle.len() as u128);
        assert_eq!(oracle.len(), 1);
        assert_eq!(dag.vertices().len(), 5);
    }

    #[test]
    fn enumerate_matches_brute_force_on_c4() {
        let g = c4();
        let dist = all_pairs_distances(&g).unwrap();
        let paths = enumerate_shortest_paths(&g, &dist, 0, 2, 100).unwrap();
        assert_eq!(paths, brute_force_paths(&g, 0, 2, 2));
        assert_eq!(paths.len(), 2);
    }

    #[test]
    fn enumerate_single_path_cases() {
        let st = build_sierpinski_triangle(1).unwrap();
        let g = st.graph();
        let dist = all_pairs_distances(g).unwrap();
        let [a, b, _] = st.extreme_vertices();
        let paths = enumerate_shortest_paths(g, &dist, a, b, 10).unwrap();
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].len(), 3);

        let g = k3();
        let dist = all_pairs_distances(&g).unwrap();
        let paths = enumerate_shortest_paths(&g, &dist, 1, 2, 10).unwrap();
        assert_eq!(paths, vec![vec![1, 2]]);
    }

    #[test]
    fn enumerate_refuses_to_truncate() {
        let g = c4();
        let dist = all_pairs_distances(&g).unwrap();
        let err = enumerate_shortest_paths(&g, &dist, 0, 2, 1).unwrap_err();
        assert!(matches!(err, Error::PathCapExceeded { u: 0, v: 2, cap: 1 }));
    }

    #[test]
    fn enumerated_paths_are_shortest_and_lie_on_interval() {
        let st = build_sierpinski_triangle(2).unwrap();
        let g = st.graph();
        let dist = all_pairs_distances(g).unwrap();
        for u in 0..g.vertex_count() {
            for v in 0..g.vertex_count() {
                let paths = enumerate_shortest_paths(g, &dist, u, v, 10_000).unwrap();
                let iv = interval(g, &dist, u, v).unwrap();
                let dag = shortest_path_dag(g, &dist, u, v).unwrap();
                assert_eq!(dag.path_count(), paths.len() as u128);
                let mut sorted = paths.clone();
                sorted.sort();
                assert_eq!(sorted, paths, "lexicographic order");
                for p in &paths {
                    assert_eq!(p.len(), dist.get(u, v) as usize + 1);
                    assert_eq!(p[0], u);
                    assert_eq!(*p.last().unwrap(), v);
                    for w in p.windows(2) {
                        assert!(g.has_edge(w[0], w[1]));
                    }
                    for &w in p {
                        assert!(iv.binary_search(&w).is_ok());
                    }
                }
            }
        }
    }
}
