//! Generators for base-3 Sierpinski graphs `S^n` and Sierpinski triangle
//! graphs `ST_3^n`.
//!
//! `S^n` lives on the ternary words of length `n`; its edge set is defined
//! recursively from three prefixed copies of `S^{n-1}` plus one connecting
//! edge between each pair of copies. `ST_3^n` is obtained from `S^{n+1}` by
//! contracting every non-clique edge, i.e. every edge whose endpoints do not
//! belong to a common innermost triangle. The result is the usual graph
//! approximation of the Sierpinski triangle fractal: `(3^{n+1}+3)/2`
//! vertices, `3^{n+1}` edges, and exactly three corner vertices of degree 2
//! (the extreme vertices).
//!
//! Every copy of `ST_3^k` inside `ST_3^n` is addressed by a ternary prefix of
//! length `n - k`: the copy consists of all contracted classes containing a
//! word that extends the prefix.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default depth limit for `S^n` generation.
pub const DEFAULT_S_DEPTH_LIMIT: usize = 12;
/// Default depth limit for `ST_3^n` generation.
pub const DEFAULT_ST_DEPTH_LIMIT: usize = 9;

/// A word over the digits {0, 1, 2}. The empty word is allowed (it addresses
/// the whole graph, and is the single vertex of `S^0`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TernaryWord(Vec<u8>);

impl TernaryWord {
    pub fn new(digits: Vec<u8>) -> Result<Self> {
        if digits.iter().any(|&d| d > 2) {
            return Err(Error::InvalidArgument(format!(
                "ternary word may only contain digits 0..=2, got {digits:?}"
            )));
        }
        Ok(TernaryWord(digits))
    }

    pub fn empty() -> Self {
        TernaryWord(Vec::new())
    }

    /// The word `d` repeated `len` times.
    pub fn repeated(d: u8, len: usize) -> Result<Self> {
        Self::new(vec![d; len])
    }

    pub fn parse(s: &str) -> Result<Self> {
        let digits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                '2' => Ok(2),
                _ => Err(Error::InvalidArgument(format!("invalid ternary digit '{c}'"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(TernaryWord(digits))
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_prefix_of(&self, other: &TernaryWord) -> bool {
        other.0.len() >= self.0.len() && other.0[..self.0.len()] == self.0[..]
    }

    /// Appends a digit, returning a new word.
    pub fn child(&self, d: u8) -> Result<Self> {
        let mut digits = self.0.clone();
        digits.push(d);
        Self::new(digits)
    }

    /// Numeric value of the word in base 3 (most significant digit first).
    fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, &d| acc * 3 + d as usize)
    }

    fn from_index(mut idx: usize, len: usize) -> Self {
        let mut digits = vec![0u8; len];
        for d in digits.iter_mut().rev() {
            *d = (idx % 3) as u8;
            idx /= 3;
        }
        TernaryWord(digits)
    }
}

impl fmt::Display for TernaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Edge list of `S^n` on word indices (base-3 values of length-`n` words).
fn sierpinski_edge_indices(n: usize) -> Vec<(usize, usize)> {
    if n == 0 {
        return Vec::new();
    }
    let prev = sierpinski_edge_indices(n - 1);
    let block = 3usize.pow((n - 1) as u32);
    let mut edges = Vec::with_capacity(3 * prev.len() + 3);
    for i in 0..3usize {
        for &(s, t) in &prev {
            edges.push((i * block + s, i * block + t));
        }
    }
    // connecting edges {i j^{n-1}, j i^{n-1}} for i < j;
    // the word d^{m} has base-3 value d * (3^m - 1) / 2
    let rep_val = |d: usize| d * (block - 1) / 2;
    for i in 0..3usize {
        for j in (i + 1)..3 {
            edges.push((i * block + rep_val(j), j * block + rep_val(i)));
        }
    }
    edges
}

/// Builds the base-3 Sierpinski graph `S^n`, with each vertex labeled by its
/// ternary word. Vertices are indexed by the base-3 value of their word.
pub fn build_sierpinski(n: usize) -> Result<Graph> {
    build_sierpinski_limited(n, DEFAULT_S_DEPTH_LIMIT)
}

/// As [`build_sierpinski`] with an explicit depth limit.
pub fn build_sierpinski_limited(n: usize, limit: usize) -> Result<Graph> {
    if n > limit {
        return Err(Error::DepthLimit { n, limit });
    }
    let count = 3usize.pow(n as u32);
    let edges = sierpinski_edge_indices(n);
    let labels = (0..count).map(|i| TernaryWord::from_index(i, n).to_string()).collect();
    Graph::from_edges(count, &edges)?.with_labels(labels)
}

/// A Sierpinski triangle graph together with the contraction bookkeeping:
/// which `S^{n+1}` words were merged into each vertex, and where the three
/// extreme vertices sit.
#[derive(Debug, Clone)]
pub struct SierpinskiTriangle {
    n: usize,
    graph: Graph,
    /// Per vertex, the one or two `S^{n+1}` words merged into it, sorted.
    words: Vec<Vec<TernaryWord>>,
    /// Word-index (base-3 value of the `S^{n+1}` word) to vertex.
    word_vertex: Vec<usize>,
    extremes: [usize; 3],
}

/// Addresses a copy of `ST_3^k` inside `ST_3^n` by the common prefix of its
/// words; the prefix length is `n - k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubtriangleAddress {
    prefix: TernaryWord,
}

impl SubtriangleAddress {
    pub fn new(prefix: TernaryWord) -> Self {
        SubtriangleAddress { prefix }
    }

    pub fn prefix(&self) -> &TernaryWord {
        &self.prefix
    }
}

impl fmt::Display for SubtriangleAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prefix.is_empty() {
            write!(f, "(root)")
        } else {
            write!(f, "{}", self.prefix)
        }
    }
}

/// Builds `ST_3^n` by contracting all non-clique edges of `S^{n+1}`.
pub fn build_sierpinski_triangle(n: usize) -> Result<SierpinskiTriangle> {
    build_sierpinski_triangle_limited(n, DEFAULT_ST_DEPTH_LIMIT)
}

/// As [`build_sierpinski_triangle`] with an explicit depth limit.
pub fn build_sierpinski_triangle_limited(n: usize, limit: usize) -> Result<SierpinskiTriangle> {
    if n > limit {
        return Err(Error::DepthLimit { n, limit });
    }
    let m = n + 1; // depth of the underlying S^m
    let word_count = 3usize.pow(m as u32);
    let edges = sierpinski_edge_indices(m);

    // An edge of S^m is a clique edge exactly when its endpoints share the
    // first m-1 digits, i.e. belong to the same innermost triangle.
    let same_triangle = |u: usize, v: usize| u / 3 == v / 3;

    // Union-find over word indices; contract every non-clique edge.
    let mut parent: Vec<usize> = (0..word_count).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(u, v) in &edges {
        if !same_triangle(u, v) {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                // canonical representative: the smaller word
                let (lo, hi) = if ru < rv { (ru, rv) } else { (rv, ru) };
                parent[hi] = lo;
            }
        }
    }

    // Collect classes in representative order; representatives are the
    // lexicographically smaller words, so sorting by representative index
    // yields a deterministic vertex numbering.
    let mut class_of = vec![usize::MAX; word_count];
    let mut reps = Vec::new();
    for w in 0..word_count {
        if find(&mut parent, w) == w {
            class_of[w] = reps.len();
            reps.push(w);
        }
    }
    let mut word_vertex = vec![usize::MAX; word_count];
    let mut words: Vec<Vec<TernaryWord>> = vec![Vec::new(); reps.len()];
    for w in 0..word_count {
        let c = class_of[find(&mut parent, w)];
        word_vertex[w] = c;
        words[c].push(TernaryWord::from_index(w, m));
    }
    if let Some(class) = words.iter().find(|ws| ws.len() > 2) {
        return Err(Error::InvariantViolation(format!(
            "contraction merged more than two words into one vertex: {class:?}"
        )));
    }

    let mut st_edges: Vec<(usize, usize)> = edges
        .iter()
        .filter(|&&(u, v)| same_triangle(u, v))
        .map(|&(u, v)| {
            let (a, b) = (word_vertex[u], word_vertex[v]);
            if a < b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    st_edges.sort_unstable();
    st_edges.dedup();
    let expected_edges = 3usize.pow(m as u32);
    if st_edges.len() != expected_edges {
        return Err(Error::InvariantViolation(format!(
            "ST_3^{n} has {} edges, expected {expected_edges}",
            st_edges.len()
        )));
    }

    let labels: Vec<String> = words
        .iter()
        .map(|ws| ws.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(","))
        .collect();
    let graph = Graph::from_edges(reps.len(), &st_edges)?.with_labels(labels)?;

    // extreme vertices: the contractions of 0^m, 1^m, 2^m
    let corner = |d: usize| word_vertex[d * (word_count - 1) / 2];
    let extremes = [corner(0), corner(1), corner(2)];
    for &e in &extremes {
        if graph.degree(e) != 2 {
            return Err(Error::InvariantViolation(format!(
                "extreme vertex {e} of ST_3^{n} has degree {}",
                graph.degree(e)
            )));
        }
    }

    let expected_vertices = (3usize.pow(m as u32) + 3) / 2;
    if graph.vertex_count() != expected_vertices {
        return Err(Error::InvariantViolation(format!(
            "ST_3^{n} has {} vertices, expected {expected_vertices}",
            graph.vertex_count()
        )));
    }

    Ok(SierpinskiTriangle { n, graph, words, word_vertex, extremes })
}

impl SierpinskiTriangle {
    pub fn depth(&self) -> usize {
        self.n
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// The three degree-2 corner vertices, sorted ascending.
    pub fn extreme_vertices(&self) -> [usize; 3] {
        self.extremes
    }

    /// The `S^{n+1}` words merged into vertex `v` (one or two, sorted).
    pub fn vertex_words(&self, v: usize) -> &[TernaryWord] {
        &self.words[v]
    }

    /// The vertex a given `S^{n+1}` word was contracted into.
    pub fn vertex_of_word(&self, w: &TernaryWord) -> Result<usize> {
        if w.len() != self.n + 1 {
            return Err(Error::InvalidArgument(format!(
                "word {w} has length {}, expected {}",
                w.len(),
                self.n + 1
            )));
        }
        Ok(self.word_vertex[w.index()])
    }

    fn check_address(&self, addr: &SubtriangleAddress) -> Result<usize> {
        let k = self
            .n
            .checked_sub(addr.prefix.len())
            .ok_or_else(|| Error::InvalidArgument(format!(
                "prefix {} is longer than the depth {}",
                addr.prefix, self.n
            )))?;
        Ok(k)
    }

    /// Addresses of all copies of `ST_3^2` inside this graph, sorted.
    pub fn enumerate_h2_copies(&self) -> Result<Vec<SubtriangleAddress>> {
        if self.n < 2 {
            return Err(Error::InvalidArgument(format!(
                "ST_3^{} contains no copies of ST_3^2",
                self.n
            )));
        }
        let len = self.n - 2;
        let count = 3usize.pow(len as u32);
        Ok((0..count)
            .map(|i| SubtriangleAddress::new(TernaryWord::from_index(i, len)))
            .collect())
    }

    /// Vertex set of the addressed copy: every vertex one of whose words
    /// extends the prefix. Sorted ascending.
    pub fn subtriangle_vertices(&self, addr: &SubtriangleAddress) -> Result<Vec<usize>> {
        self.check_address(addr)?;
        let mut out: Vec<usize> = (0..self.vertex_count())
            .filter(|&v| self.words[v].iter().any(|w| addr.prefix.is_prefix_of(w)))
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// The three extreme vertices of the addressed copy: the contractions of
    /// `prefix . d^{k+1}` for each digit `d`. Sorted ascending.
    pub fn subtriangle_extremes(&self, addr: &SubtriangleAddress) -> Result<[usize; 3]> {
        let k = self.check_address(addr)?;
        let mut out = [0; 3];
        for d in 0..3u8 {
            let mut digits = addr.prefix.digits().to_vec();
            digits.extend(std::iter::repeat(d).take(k + 1));
            out[d as usize] = self.word_vertex[TernaryWord(digits).index()];
        }
        out.sort_unstable();
        Ok(out)
    }

    /// The three proper vertices of an addressed `ST_3^2` copy: the vertices
    /// of the copy lying outside all three intervals between its extremes,
    /// computed inside the induced 15-vertex subgraph. Sorted ascending.
    pub fn proper_vertices(&self, addr: &SubtriangleAddress) -> Result<Vec<usize>> {
        let k = self.check_address(addr)?;
        if k != 2 {
            return Err(Error::InvalidArgument(format!(
                "prefix {} addresses a copy of ST_3^{k}, proper vertices are defined for ST_3^2",
                addr.prefix
            )));
        }
        let verts = self.subtriangle_vertices(addr)?;
        let sub = self.graph.induced_subgraph(&verts)?;
        let dist = crate::graph::all_pairs_distances(&sub)?;
        let extremes = self.subtriangle_extremes(addr)?;
        let local: Vec<usize> =
            extremes.iter().map(|e| verts.binary_search(e).unwrap()).collect();
        let mut on_side = vec![false; verts.len()];
        for i in 0..3 {
            for j in (i + 1)..3 {
                for w in 0..verts.len() {
                    if dist.on_interval(local[i], local[j], w) {
                        on_side[w] = true;
                    }
                }
            }
        }
        let proper: Vec<usize> =
            (0..verts.len()).filter(|&w| !on_side[w]).map(|w| verts[w]).collect();
        if proper.len() != 3 {
            return Err(Error::InvariantViolation(format!(
                "copy {} has {} proper vertices, expected 3",
                addr.prefix,
                proper.len()
            )));
        }
        Ok(proper)
    }
}

/// Recognizes a canonically labeled `ST_3^n`: returns `n` when the graph is
/// exactly equal (same vertex numbering, same edges) to the generated one.
pub fn recognize_sierpinski_triangle(g: &Graph) -> Option<usize> {
    let count = g.vertex_count();
    let mut n = 0;
    loop {
        let expected = (3usize.pow((n + 1) as u32) + 3) / 2;
        if expected == count {
            break;
        }
        if expected > count || n > DEFAULT_ST_DEPTH_LIMIT {
            return None;
        }
        n += 1;
    }
    match build_sierpinski_triangle(n) {
        Ok(st) if st.graph().edges() == g.edges() => Some(n),
        _ => None,
    }
}
