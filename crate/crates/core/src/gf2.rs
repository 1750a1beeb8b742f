//! F2 linear algebra: packed bit vectors and matrices, rank by elimination,
//! the representing-matrix predicate, orthogonal bi-representations, and the
//! exact minrank oracle (homomorphism search into G_k).

use crate::graph::Graph;
use crate::{Error, Result};

const WORD: usize = 64;

fn words_for(width: usize) -> usize {
    width.div_ceil(WORD)
}

/// Packed vector over F2. Trailing padding bits are always zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitVector {
    width: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(width: usize) -> Self {
        BitVector { width, words: vec![0; words_for(width)] }
    }

    /// Standard basis vector e_i (bit i set), i counted from 0.
    pub fn unit(width: usize, i: usize) -> Self {
        let mut v = Self::zeros(width);
        v.set(i, true);
        v
    }

    /// Low `width` bits of `x`, bit 0 = coordinate 0.
    pub fn from_u64(width: usize, x: u64) -> Self {
        assert!(width <= WORD);
        let mask = if width == WORD { !0 } else { (1u64 << width) - 1 };
        BitVector { width, words: vec![x & mask] }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.width);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.width);
        let w = &mut self.words[i / WORD];
        if value {
            *w |= 1 << (i % WORD);
        } else {
            *w &= !(1 << (i % WORD));
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Inner product over F2 (parity of the AND).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.width, other.width);
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() & 1 == 1
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.width, other.width);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn and_assign(&mut self, other: &BitVector) {
        assert_eq!(self.width, other.width);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn or_assign(&mut self, other: &BitVector) {
        assert_eq!(self.width, other.width);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Clears every bit that is set in `other`.
    pub fn and_not_assign(&mut self, other: &BitVector) {
        assert_eq!(self.width, other.width);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    /// Indices of set bits, ascending.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(wi * WORD + b)
                }
            })
        })
    }

    pub fn first_one(&self) -> Option<usize> {
        self.iter_ones().next()
    }

    pub fn to_bit_string(&self) -> String {
        (0..self.width).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }

    pub fn from_bit_string(s: &str) -> Result<Self> {
        let mut v = Self::zeros(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '1' => v.set(i, true),
                '0' => {}
                _ => return Err(Error::Input(format!("bad bit character {ch:?}"))),
            }
        }
        Ok(v)
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

/// Dense matrix over F2, rows stored as BitVectors of shared width.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    r: usize,
    c: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(r: usize, c: usize) -> Self {
        BitMatrix { r, c, rows: vec![BitVector::zeros(c); r] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn all_ones(r: usize, c: usize) -> Self {
        let mut m = Self::zeros(r, c);
        for i in 0..r {
            for j in 0..c {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<BitVector>) -> Result<Self> {
        let c = rows.first().map_or(0, |v| v.width());
        if rows.iter().any(|v| v.width() != c) {
            return Err(Error::Input("rows of unequal width".into()));
        }
        Ok(BitMatrix { r: rows.len(), c, rows })
    }

    pub fn rows(&self) -> usize {
        self.r
    }

    pub fn cols(&self) -> usize {
        self.c
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = Self::zeros(self.c, self.r);
        for i in 0..self.r {
            for j in self.rows[i].iter_ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Matrix-vector product over F2.
    pub fn mul_vec(&self, x: &BitVector) -> BitVector {
        assert_eq!(self.c, x.width());
        let mut y = BitVector::zeros(self.r);
        for i in 0..self.r {
            y.set(i, self.rows[i].dot(x));
        }
        y
    }

    /// Inverse over F2 by elimination on the augmented system; None if
    /// singular or non-square.
    pub fn inverse(&self) -> Option<BitMatrix> {
        if self.r != self.c {
            return None;
        }
        let n = self.r;
        let mut a = self.rows.clone();
        let mut inv = BitMatrix::identity(n).rows;
        for col in 0..n {
            let p = (col..n).find(|&i| a[i].get(col))?;
            a.swap(col, p);
            inv.swap(col, p);
            let (pa, pi) = (a[col].clone(), inv[col].clone());
            for i in 0..n {
                if i != col && a[i].get(col) {
                    a[i].xor_assign(&pa);
                    inv[i].xor_assign(&pi);
                }
            }
        }
        Some(BitMatrix { r: n, c: n, rows: inv })
    }

    /// Text form: "r c" header, then one '0'/'1' string per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.r, self.c);
        for row in &self.rows {
            s.push_str(&row.to_bit_string());
            s.push('\n');
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (ln, header) = lines
            .next()
            .ok_or_else(|| Error::Parse { line: 1, msg: "empty input".into() })?;
        let mut it = header.split_whitespace();
        let parse_dim = |tok: Option<&str>| -> Result<usize> {
            tok.and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse { line: ln + 1, msg: "expected \"r c\" header".into() })
        };
        let r = parse_dim(it.next())?;
        let c = parse_dim(it.next())?;
        let mut rows = Vec::with_capacity(r);
        for _ in 0..r {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| Error::Parse { line: r + 1, msg: "missing row".into() })?;
            let row = BitVector::from_bit_string(line.trim())
                .map_err(|e| Error::Parse { line: ln + 1, msg: e.to_string() })?;
            if row.width() != c {
                return Err(Error::Parse { line: ln + 1, msg: format!("row width {} != {c}", row.width()) });
            }
            rows.push(row);
        }
        Ok(BitMatrix { r, c, rows })
    }
}

/// Rank over F2 by row elimination.
pub fn gf2_rank(m: &BitMatrix) -> usize {
    let mut rows: Vec<BitVector> = m.rows.clone();
    let mut rank = 0;
    for col in 0..m.c {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i].get(col)) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row.get(col) {
                row.xor_assign(&pivot);
            }
        }
        rank += 1;
    }
    rank
}

/// Definition of "A represents G": square, unit diagonal, and A[i][j] = 0
/// whenever distinct i, j are non-adjacent.
pub fn represents(a: &BitMatrix, g: &Graph) -> Result<bool> {
    let n = g.n();
    if a.rows() != n || a.cols() != n {
        return Err(Error::Input(format!(
            "matrix is {}x{}, graph has {n} vertices",
            a.rows(),
            a.cols()
        )));
    }
    for i in 0..n {
        if !a.get(i, i) {
            return Ok(false);
        }
        for j in a.row(i).iter_ones() {
            if j != i && !g.has_edge(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Certified upper bound on minrk2(g): the rank of a representing matrix.
pub fn minrank_upper_from_matrix(a: &BitMatrix, g: &Graph) -> Result<usize> {
    if !represents(a, g)? {
        return Err(Error::Input("matrix does not represent the graph".into()));
    }
    Ok(gf2_rank(a))
}

/// One (a1, a2) pair per vertex with <a1, a2> = 1; non-adjacent distinct
/// vertices satisfy <a_i1, a_j2> = <a_j1, a_i2> = 0.
#[derive(Clone, Debug)]
pub struct BiRepresentation {
    pub k: usize,
    pub pairs: Vec<(BitVector, BitVector)>,
}

impl BiRepresentation {
    /// Gram-style assembly A[i][j] = <a_i1, a_j2>; unit diagonal and zeros on
    /// non-edges hold by the defining constraints, and rank <= k because A
    /// factors through F2^k.
    pub fn assemble(&self) -> BitMatrix {
        let n = self.pairs.len();
        let mut a = BitMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                a.set(i, j, self.pairs[i].0.dot(&self.pairs[j].1));
            }
        }
        a
    }

    pub fn check(&self, g: &Graph) -> bool {
        let n = self.pairs.len();
        if n != g.n() {
            return false;
        }
        for i in 0..n {
            if !self.pairs[i].0.dot(&self.pairs[i].1) {
                return false;
            }
            for j in i + 1..n {
                if !g.has_edge(i, j)
                    && (self.pairs[i].0.dot(&self.pairs[j].1) || self.pairs[j].0.dot(&self.pairs[i].1))
                {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinrankOutcome {
    Exact(usize),
    ExceedsKMax,
    /// Node budget exhausted before the search space was covered.
    Unknown,
}

pub const DEFAULT_ORACLE_BUDGET: u64 = 100_000_000;

/// Exact minrank over F2: smallest k <= k_max admitting an orthogonal
/// bi-representation in F2^k, i.e. a homomorphism from the complement of g
/// into G_k (non-adjacent distinct vertices of g must map to adjacent
/// vertices of G_k). Returns the witness labels alongside.
pub fn minrank_oracle(g: &Graph, k_max: usize) -> (MinrankOutcome, Option<BiRepresentation>) {
    minrank_oracle_budgeted(g, k_max, DEFAULT_ORACLE_BUDGET)
}

pub fn minrank_oracle_budgeted(
    g: &Graph,
    k_max: usize,
    budget: u64,
) -> (MinrankOutcome, Option<BiRepresentation>) {
    let n = g.n();
    if n == 0 {
        return (MinrankOutcome::Exact(0), Some(BiRepresentation { k: 0, pairs: vec![] }));
    }
    let mut nodes_left = budget;
    let mut hit_budget = false;
    for k in 1..=k_max.min(8) {
        match hom_search(g, k, &mut nodes_left) {
            SearchOutcome::Found(labels) => {
                let pairs = labels
                    .iter()
                    .map(|&(a, b)| (BitVector::from_u64(k, a), BitVector::from_u64(k, b)))
                    .collect();
                return (MinrankOutcome::Exact(k), Some(BiRepresentation { k, pairs }));
            }
            SearchOutcome::Refuted => {}
            SearchOutcome::Budget => {
                hit_budget = true;
                break;
            }
        }
    }
    if hit_budget || k_max > 8 {
        (MinrankOutcome::Unknown, None)
    } else {
        (MinrankOutcome::ExceedsKMax, None)
    }
}

enum SearchOutcome {
    Found(Vec<(u64, u64)>),
    Refuted,
    Budget,
}

fn parity(x: u64) -> bool {
    x.count_ones() & 1 == 1
}

/// Vertices of G_k as (v1, v2) integer pairs, lexicographic order, with
/// adjacency bitsets. Same order as gk::build_gk.
fn gk_vertices(k: usize) -> (Vec<(u64, u64)>, Vec<BitVector>) {
    let top = 1u64 << k;
    let mut verts = Vec::new();
    for a in 1..top {
        for b in 1..top {
            if parity(a & b) {
                verts.push((a, b));
            }
        }
    }
    let m = verts.len();
    let mut adj = vec![BitVector::zeros(m); m];
    for i in 0..m {
        for j in i + 1..m {
            let (u1, u2) = verts[i];
            let (v1, v2) = verts[j];
            if !parity(u1 & v2) && !parity(v1 & u2) {
                adj[i].set(j, true);
                adj[j].set(i, true);
            }
        }
    }
    (verts, adj)
}

/// Backtracking search for a homomorphism from the complement of g into G_k,
/// with forward checking on candidate sets. Most-constrained vertex first;
/// initial order by descending complement degree.
fn hom_search(g: &Graph, k: usize, nodes_left: &mut u64) -> SearchOutcome {
    let n = g.n();
    let (verts, gk_adj) = gk_vertices(k);
    let m = verts.len();
    let full = {
        let mut v = BitVector::zeros(m);
        for i in 0..m {
            v.set(i, true);
        }
        v
    };
    // neighbors in the complement of g
    let cbar: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && !g.has_edge(i, j)).collect())
        .collect();
    if k == 1 {
        // G_1 is a single vertex with no edges; a hom exists iff no constraint pairs
        return if cbar.iter().all(|v| v.is_empty()) {
            SearchOutcome::Found(vec![(1, 1); n])
        } else {
            SearchOutcome::Refuted
        };
    }
    let mut cands = vec![full; n];
    let mut assigned: Vec<Option<usize>> = vec![None; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(cbar[v].len()));

    struct Ctx<'a> {
        cbar: &'a [Vec<usize>],
        gk_adj: &'a [BitVector],
        nodes_left: &'a mut u64,
    }

    fn dfs(
        depth: usize,
        n: usize,
        ctx: &mut Ctx,
        cands: &mut [BitVector],
        assigned: &mut [Option<usize>],
    ) -> Option<bool> {
        // Some(true) = found, Some(false) = refuted subtree, None = budget
        if depth == n {
            return Some(true);
        }
        // most-constrained unassigned vertex
        let v = (0..n)
            .filter(|&v| assigned[v].is_none())
            .min_by_key(|&v| cands[v].count_ones())
            .unwrap();
        let choices: Vec<usize> = cands[v].iter_ones().collect();
        for label in choices {
            if *ctx.nodes_left == 0 {
                return None;
            }
            *ctx.nodes_left -= 1;
            assigned[v] = Some(label);
            let saved: Vec<(usize, BitVector)> = ctx.cbar[v]
                .iter()
                .filter(|&&u| assigned[u].is_none())
                .map(|&u| (u, cands[u].clone()))
                .collect();
            let mut dead = false;
            for &(u, _) in &saved {
                cands[u].and_assign(&ctx.gk_adj[label]);
                if cands[u].is_zero() {
                    dead = true;
                    break;
                }
            }
            if !dead {
                match dfs(depth + 1, n, ctx, cands, assigned) {
                    Some(true) => return Some(true),
                    Some(false) => {}
                    None => return None,
                }
            }
            for (u, c) in saved {
                cands[u] = c;
            }
            assigned[v] = None;
        }
        Some(false)
    }

    let mut ctx = Ctx { cbar: &cbar, gk_adj: &gk_adj, nodes_left };
    match dfs(0, n, &mut ctx, &mut cands, &mut assigned) {
        Some(true) => {
            let labels = assigned.iter().map(|a| verts[a.unwrap()]).collect();
            SearchOutcome::Found(labels)
        }
        Some(false) => SearchOutcome::Refuted,
        None => SearchOutcome::Budget,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn cycle(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    #[test]
    fn rank_basics() {
        assert_eq!(gf2_rank(&BitMatrix::identity(5)), 5);
        assert_eq!(gf2_rank(&BitMatrix::all_ones(4, 4)), 1);
        assert_eq!(gf2_rank(&BitMatrix::zeros(3, 7)), 0);
        // rank is invariant under transpose
        let mut m = BitMatrix::zeros(3, 5);
        m.set(0, 0, true);
        m.set(0, 3, true);
        m.set(1, 3, true);
        m.set(2, 0, true);
        m.set(2, 3, true); // row2 = row0 + row1
        assert_eq!(gf2_rank(&m), 2);
        assert_eq!(gf2_rank(&m.transpose()), 2);
    }

    #[test]
    fn represents_examples() {
        let k5 = Graph::complete(5);
        assert!(represents(&BitMatrix::all_ones(5, 5), &k5).unwrap());
        assert_eq!(minrank_upper_from_matrix(&BitMatrix::all_ones(5, 5), &k5).unwrap(), 1);
        // identity represents every graph
        let c5 = cycle(5);
        assert!(represents(&BitMatrix::identity(5), &c5).unwrap());
        // a one on a non-edge breaks it
        let mut bad = BitMatrix::identity(5);
        bad.set(0, 2, true);
        assert!(!represents(&bad, &c5).unwrap());
        // dimension mismatch is an input error
        assert!(represents(&BitMatrix::identity(4), &c5).is_err());
    }

    #[test]
    fn oracle_known_values() {
        let (r, w) = minrank_oracle(&Graph::complete(5), 3);
        assert_eq!(r, MinrankOutcome::Exact(1));
        assert!(w.unwrap().check(&Graph::complete(5)));

        let (r, w) = minrank_oracle(&cycle(5), 4);
        assert_eq!(r, MinrankOutcome::Exact(3));
        let w = w.unwrap();
        assert!(w.check(&cycle(5)));
        let a = w.assemble();
        assert!(represents(&a, &cycle(5)).unwrap());
        assert!(gf2_rank(&a) <= 3);

        let (r, _) = minrank_oracle(&cycle(6).complement(), 3);
        assert_eq!(r, MinrankOutcome::Exact(2));

        let (r, _) = minrank_oracle(&Graph::new(4), 5);
        assert_eq!(r, MinrankOutcome::Exact(4));

        // k_max below the true value
        let (r, _) = minrank_oracle(&cycle(5), 2);
        assert_eq!(r, MinrankOutcome::ExceedsKMax);
    }

    #[test]
    fn oracle_budget_reports_unknown() {
        let (r, _) = minrank_oracle_budgeted(&cycle(7), 3, 1);
        assert_eq!(r, MinrankOutcome::Unknown);
    }

    #[test]
    fn inverse_round_trip() {
        let rows = vec![
            BitVector::from_u64(3, 0b011),
            BitVector::from_u64(3, 0b110),
            BitVector::from_u64(3, 0b100),
        ];
        let a = BitMatrix::from_rows(rows).unwrap();
        let inv = a.inverse().expect("matrix is invertible");
        for i in 0..3 {
            let col = BitVector::from_u64(3, 1 << i);
            assert_eq!(a.mul_vec(&inv.mul_vec(&col)), col);
            assert_eq!(inv.mul_vec(&a.mul_vec(&col)), col);
        }
        assert_eq!(inv.inverse().unwrap(), a);
        let singular = BitMatrix::from_rows(vec![
            BitVector::from_u64(2, 0b11),
            BitVector::from_u64(2, 0b11),
        ])
        .unwrap();
        assert!(singular.inverse().is_none());
        let id = BitMatrix::identity(4);
        assert_eq!(id.inverse().unwrap(), id);
    }

    #[test]
    fn matrix_text_round_trip() {
        let mut m = BitMatrix::zeros(2, 3);
        m.set(0, 1, true);
        m.set(1, 2, true);
        let t = m.to_text();
        assert_eq!(t, "2 3\n010\n001\n");
        assert_eq!(BitMatrix::parse_text(&t).unwrap(), m);
        assert!(BitMatrix::parse_text("2 3\n01\n001\n").is_err());
    }

    #[test]
    fn bitvector_ops() {
        let mut v = BitVector::zeros(130);
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(v.count_ones(), 3);
        let u = BitVector::unit(130, 64);
        assert!(v.dot(&u));
        let s = v.to_bit_string();
        assert_eq!(BitVector::from_bit_string(&s).unwrap(), v);
    }
}
