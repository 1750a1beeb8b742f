//! Undirected simple graphs with bit-set adjacency rows, file I/O, and the
//! bounded-minrank instance generator.

use crate::gf2::BitVector;
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Hard cap on vertex count; G_8 with 32640 vertices is the largest graph
/// this artifact ever materializes.
pub const MAX_VERTICES: usize = 32768;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<BitVector>,
}

/// Subset of 0..n-1 backed by a bit-set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexSet {
    members: BitVector,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet { members: BitVector::zeros(n) }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for i in 0..n {
            s.members.set(i, true);
        }
        s
    }

    pub fn from_members(n: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        for v in members {
            s.members.set(v, true);
        }
        s
    }

    pub fn range_width(&self) -> usize {
        self.members.width()
    }

    pub fn insert(&mut self, v: usize) {
        self.members.set(v, true);
    }

    pub fn remove(&mut self, v: usize) {
        self.members.set(v, false);
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.get(v)
    }

    pub fn len(&self) -> usize {
        self.members.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_zero()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter_ones()
    }

    pub fn bits(&self) -> &BitVector {
        &self.members
    }

    pub fn bits_mut(&mut self) -> &mut BitVector {
        &mut self.members
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "vertex count {n} exceeds cap {MAX_VERTICES}");
        Graph { n, adj: vec![BitVector::zeros(n); n] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j);
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop {u}");
        self.adj[u].set(v, true);
        self.adj[v].set(u, true);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].set(v, false);
        self.adj[v].set(u, false);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].get(v)
    }

    pub fn neighbors(&self, v: usize) -> &BitVector {
        &self.adj[v]
    }

    pub fn neighbor_set(&self, v: usize) -> VertexSet {
        VertexSet { members: self.adj[v].clone() }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Lowest-index vertex among those of maximum degree.
    pub fn max_degree_vertex(&self) -> Result<usize> {
        if self.n == 0 {
            return Err(Error::Input("empty graph has no vertices".into()));
        }
        let mut best = 0;
        for v in 1..self.n {
            if self.degree(v) > self.degree(best) {
                best = v;
            }
        }
        Ok(best)
    }

    /// Edges as (u, v) with u < v, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.adj[u].iter_ones() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones()).sum::<usize>() / 2
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if !self.has_edge(i, j) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        let members: Vec<usize> = s.iter().collect();
        for (a, &u) in members.iter().enumerate() {
            for &v in &members[a + 1..] {
                if self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }

    /// Induced subgraph on `s`, vertices relabeled 0..|s|-1 in ascending
    /// order; the returned map sends new index -> original vertex.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        if s.range_width() != self.n {
            return Err(Error::Input(format!(
                "vertex set over 0..{} used with graph on {} vertices",
                s.range_width(),
                self.n
            )));
        }
        let map: Vec<usize> = s.iter().collect();
        let mut g = Graph::new(map.len());
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        Ok((g, map))
    }

    /// Parse the edge-list format: header "n m", then m lines "u v".
    /// '#'-prefixed lines are comments. Duplicate edges are collapsed; the
    /// returned flag reports whether any were seen.
    pub fn load_edge_list(text: &str) -> Result<(Graph, bool)> {
        let mut data = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = data
            .next()
            .ok_or_else(|| Error::Parse { line: 1, msg: "empty input".into() })?;
        let mut it = header.split_whitespace();
        let mut dim = |what: &str| -> Result<usize> {
            it.next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse { line: ln, msg: format!("bad header: expected {what}") })
        };
        let n = dim("vertex count")?;
        let m = dim("edge count")?;
        if n > MAX_VERTICES {
            return Err(Error::Parse { line: ln, msg: format!("vertex count {n} exceeds cap {MAX_VERTICES}") });
        }
        let mut g = Graph::new(n);
        let mut duplicates = false;
        for _ in 0..m {
            let (ln, line) = data
                .next()
                .ok_or_else(|| Error::Parse { line: 0, msg: format!("expected {m} edges") })?;
            let mut it = line.split_whitespace();
            let mut endpoint = || -> Result<usize> {
                it.next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::Parse { line: ln, msg: "expected \"u v\"".into() })
            };
            let u = endpoint()?;
            let v = endpoint()?;
            if u == v {
                return Err(Error::Parse { line: ln, msg: format!("self-loop {u}") });
            }
            if u >= n || v >= n {
                return Err(Error::Parse { line: ln, msg: format!("index {} out of range", u.max(v)) });
            }
            if g.has_edge(u, v) {
                duplicates = true;
            } else {
                g.add_edge(u, v);
            }
        }
        Ok((g, duplicates))
    }

    /// Canonical form: "n m" then edges sorted with u < v.
    pub fn save_edge_list(&self) -> String {
        let edges = self.edges();
        let mut s = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

fn int_parity(x: u64) -> bool {
    x.count_ones() & 1 == 1
}

/// Random instance with minrk2(complement) <= k by construction: every vertex
/// gets a G_k label (balanced across label classes, shuffled by seed), and
/// each pair whose labels are adjacent in G_k becomes an edge with
/// probability p. The labels then witness the bound on the complement.
pub fn gen_bounded_minrank_instance(n: usize, k: usize, p: f64, seed: u64) -> Graph {
    assert!((1..=8).contains(&k), "k = {k} out of range");
    assert!((0.0..=1.0).contains(&p), "p = {p} out of range");
    let top = 1u64 << k;
    let mut verts = Vec::new();
    for a in 1..top {
        for b in 1..top {
            if int_parity(a & b) {
                verts.push((a, b));
            }
        }
    }
    let m = verts.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: Vec<usize> = (0..n).map(|i| i % m).collect();
    // Fisher-Yates
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        labels.swap(i, j);
    }
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            let (a1, a2) = verts[labels[i]];
            let (b1, b2) = verts[labels[j]];
            let adjacent = labels[i] != labels[j] && !int_parity(a1 & b2) && !int_parity(b1 & a2);
            if adjacent && rng.random::<f64>() < p {
                g.add_edge(i, j);
            }
        }
    }
    g
}
