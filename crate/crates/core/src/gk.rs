//! The extremal graph family G_k over F2.
//!
//! Vertices are pairs (v1, v2) of width-k bit vectors with inner product 1;
//! two vertices are adjacent when the cross inner products both vanish. The
//! module builds the labeled graph, exposes explicit automorphisms built
//! from invertible matrices, classifies vertices into the five stabilizer
//! orbit classes, and reduces spectral questions to a 5x5 quotient matrix
//! with closed-form entries.
//!
//! Throughout, bit 0 of a label is coordinate 1; the base vertex is the
//! pair (e1, e1) and the second base vertex is (e2, e2).

use crate::gf2::{BitMatrix, BitVector};
use crate::graph::{Graph, VertexSet};
use crate::spectral;
use crate::{Error, Result};

/// Largest k for which the full graph is materialized (32640 vertices).
pub const MAX_BUILD_K: usize = 8;

/// Largest k for quotient-only computations via the closed-form matrix.
pub const MAX_QUOTIENT_K: usize = 30;

/// A vertex label: a pair of width-k bit vectors with inner product 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkVertex {
    pub v1: BitVector,
    pub v2: BitVector,
}

/// G_k with its vertex labels and, for k >= 3, the five-class orbit tags.
#[derive(Clone, Debug)]
pub struct LabeledGkGraph {
    k: usize,
    graph: Graph,
    labels: Vec<GkVertex>,
    // Same order as labels, packed little-endian for fast lookups.
    raw: Vec<(u64, u64)>,
    orbit_class: Vec<u8>,
}

fn dot1(a: u64, b: u64) -> bool {
    (a & b).count_ones() & 1 == 1
}

fn to_raw(v: &BitVector) -> u64 {
    v.words()[0]
}

/// Class tag in 1..=5 for a vertex label, by the membership predicates:
/// the base vertex alone; both first bits clear; first bits unequal; first
/// bits set with one side equal to e1; first bits set, neither side e1.
fn orbit_class_of(v1: u64, v2: u64) -> u8 {
    if v1 == 1 && v2 == 1 {
        1
    } else if v1 & 1 == 0 && v2 & 1 == 0 {
        2
    } else if (v1 ^ v2) & 1 == 1 {
        3
    } else if v1 == 1 || v2 == 1 {
        4
    } else {
        5
    }
}

/// |V(G_k)| = (2^k - 1) * 2^(k-1).
pub fn vertex_count(k: usize) -> u64 {
    ((1u64 << k) - 1) << (k - 1)
}

/// Degree of the regular graph G_k: (2^(k-1) - 1) * 2^(k-2).
pub fn degree(k: usize) -> u64 {
    if k == 1 {
        return 0;
    }
    ((1u64 << (k - 1)) - 1) << (k - 2)
}

/// Closed-form orbit class sizes for k >= 3, indexed by class - 1.
pub fn orbit_class_sizes(k: usize) -> Result<[u64; 5]> {
    if !(3..=MAX_QUOTIENT_K).contains(&k) {
        return Err(Error::Input(format!("orbit classes need 3 <= k <= {MAX_QUOTIENT_K}, got {k}")));
    }
    let half = (1u64 << (k - 1)) - 1;
    Ok([
        1,
        half << (k - 2),
        half << (k - 1),
        2 * half,
        ((1u64 << (k - 2)) - 1) * half,
    ])
}

/// Builds G_k: enumerates labels lexicographically in (v1, v2), fills
/// adjacency by the cross-product rule, and tags orbit classes for k >= 3.
pub fn build_gk(k: usize) -> Result<LabeledGkGraph> {
    if !(1..=MAX_BUILD_K).contains(&k) {
        return Err(Error::Input(format!("build_gk needs 1 <= k <= {MAX_BUILD_K}, got {k}")));
    }
    let mut raw = Vec::with_capacity(vertex_count(k) as usize);
    for v1 in 1u64..(1 << k) {
        for v2 in 1u64..(1 << k) {
            if dot1(v1, v2) {
                raw.push((v1, v2));
            }
        }
    }
    let n = raw.len();
    let mut graph = Graph::new(n);
    for (i, &(u1, u2)) in raw.iter().enumerate() {
        for (j, &(v1, v2)) in raw.iter().enumerate().skip(i + 1) {
            if !dot1(u1, v2) && !dot1(v1, u2) {
                graph.add_edge(i, j);
            }
        }
    }
    let labels = raw
        .iter()
        .map(|&(v1, v2)| GkVertex {
            v1: BitVector::from_u64(k, v1),
            v2: BitVector::from_u64(k, v2),
        })
        .collect();
    let orbit_class = if k >= 3 {
        raw.iter().map(|&(v1, v2)| orbit_class_of(v1, v2)).collect()
    } else {
        Vec::new()
    };
    Ok(LabeledGkGraph { k, graph, labels, raw, orbit_class })
}

impl LabeledGkGraph {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn labels(&self) -> &[GkVertex] {
        &self.labels
    }

    /// Orbit class tags in 1..=5, one per vertex; empty for k < 3.
    pub fn orbit_class(&self) -> &[u8] {
        &self.orbit_class
    }

    /// Index of a label pair, if present. Labels are sorted by construction.
    pub fn vertex_index(&self, v1: u64, v2: u64) -> Option<usize> {
        self.raw.binary_search(&(v1, v2)).ok()
    }

    /// Index of the base vertex (e1, e1).
    pub fn base_vertex(&self) -> usize {
        self.vertex_index(1, 1).expect("base vertex always present")
    }

    /// Index of the second base vertex (e2, e2); needs k >= 2.
    pub fn second_base_vertex(&self) -> Result<usize> {
        self.vertex_index(2, 2)
            .ok_or_else(|| Error::Input("second base vertex needs k >= 2".into()))
    }

    /// The orbit classes as an explicit 5-part vertex partition (k >= 3).
    pub fn orbit_partition(&self) -> Result<Vec<VertexSet>> {
        if self.k < 3 {
            return Err(Error::Input("orbit partition defined for k >= 3".into()));
        }
        let n = self.graph.n();
        let mut parts = vec![VertexSet::empty(n); 5];
        for (v, &c) in self.orbit_class.iter().enumerate() {
            parts[(c - 1) as usize].insert(v);
        }
        Ok(parts)
    }
}

/// The k vertices {(e_i, e_i)}: pairwise adjacent in G_k, hence an
/// independent set of size k in the complement.
pub fn canonical_independent_set(gk: &LabeledGkGraph) -> VertexSet {
    let mut s = VertexSet::empty(gk.graph.n());
    for i in 0..gk.k {
        let e = 1u64 << i;
        s.insert(gk.vertex_index(e, e).expect("unit pair is a vertex"));
    }
    s
}

/// Permutation composition: applies `inner` first, then `outer`.
fn compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&x| outer[x]).collect()
}

fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0usize; perm.len()];
    for (x, &px) in perm.iter().enumerate() {
        inv[px] = x;
    }
    inv
}

/// Vertex permutation induced by (x, y) -> (Ax, A^(-t)y) for invertible A.
/// The map preserves inner products, so it lands back in the vertex set;
/// edge preservation is verified before returning.
pub fn automorphism_from_matrix(a: &BitMatrix, gk: &LabeledGkGraph) -> Result<Vec<usize>> {
    let k = gk.k;
    if a.rows() != k || a.cols() != k {
        return Err(Error::Input(format!("matrix must be {k}x{k}")));
    }
    let inv_t = a
        .inverse()
        .ok_or_else(|| Error::Input("singular matrix induces no automorphism".into()))?
        .transpose();
    let n = gk.graph.n();
    let mut perm = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for label in &gk.labels {
        let w1 = to_raw(&a.mul_vec(&label.v1));
        let w2 = to_raw(&inv_t.mul_vec(&label.v2));
        let image = gk
            .vertex_index(w1, w2)
            .ok_or_else(|| Error::Contract("image left the vertex set".into()))?;
        if seen[image] {
            return Err(Error::Contract("induced map is not injective".into()));
        }
        seen[image] = true;
        perm.push(image);
    }
    for u in 0..n {
        for v in gk.graph.neighbors(u).iter_ones() {
            if v > u && !gk.graph.has_edge(perm[u], perm[v]) {
                return Err(Error::Contract(format!(
                    "edge ({u},{v}) not preserved by the induced map"
                )));
            }
        }
    }
    Ok(perm)
}

/// Identity matrix with coordinates i and j swapped (no-op when i == j).
pub fn transposition_matrix(k: usize, i: usize, j: usize) -> BitMatrix {
    let mut m = BitMatrix::identity(k);
    if i != j {
        m.set(i, i, false);
        m.set(j, j, false);
        m.set(i, j, true);
        m.set(j, i, true);
    }
    m
}

/// Identity matrix with first column v1 and first row v2. Requires both
/// vectors to start with 1; then the matrix is invertible (the off-corner
/// blocks have inner product 0 because <v1,v2> = 1), it sends e1 to v1, and
/// its inverse transpose sends e1 to v2.
fn bordered_identity(k: usize, v1: u64, v2: u64) -> BitMatrix {
    debug_assert!(v1 & 1 == 1 && v2 & 1 == 1 && dot1(v1, v2));
    let mut m = BitMatrix::identity(k);
    for i in 0..k {
        m.set(i, 0, (v1 >> i) & 1 == 1);
        m.set(0, i, (v2 >> i) & 1 == 1);
    }
    m
}

/// Explicit automorphism sending the base vertex (e1, e1) to `target`:
/// a coordinate transposition into the first position composed with a
/// bordered-identity map.
pub fn automorphism_to_vertex(gk: &LabeledGkGraph, target: usize) -> Result<Vec<usize>> {
    let (t1, t2) = *gk
        .raw
        .get(target)
        .ok_or_else(|| Error::Input(format!("vertex {target} out of range")))?;
    // Some coordinate carries a 1 in both halves since <t1,t2> = 1.
    let i = (t1 & t2).trailing_zeros() as usize;
    let swap = transposition_matrix(gk.k, 0, i);
    let f_swap = automorphism_from_matrix(&swap, gk)?;
    let w = f_swap[target];
    let (w1, w2) = gk.raw[w];
    let f_border = automorphism_from_matrix(&bordered_identity(gk.k, w1, w2), gk)?;
    // The bordered map takes base to w; the involution takes w to target.
    let perm = compose(&f_swap, &f_border);
    if perm[gk.base_vertex()] != target {
        return Err(Error::Contract("composed map missed the target vertex".into()));
    }
    Ok(perm)
}

/// Explicit automorphism carrying the edge {u, v} onto the base edge:
/// u to (e1, e1) and v to (e2, e2).
pub fn automorphism_to_base_edge(gk: &LabeledGkGraph, u: usize, v: usize) -> Result<Vec<usize>> {
    if !gk.graph.has_edge(u, v) {
        return Err(Error::Input(format!("({u},{v}) is not an edge")));
    }
    let base0 = gk.base_vertex();
    let base1 = gk.second_base_vertex()?;
    // Send v to (e2, e2) through the base vertex.
    let v_to_base = invert(&automorphism_to_vertex(gk, v)?);
    let swap01 = automorphism_from_matrix(&transposition_matrix(gk.k, 0, 1), gk)?;
    let f1 = compose(&swap01, &v_to_base);
    // The image of u is adjacent to (e2, e2), so both halves have bit 1
    // clear and share a set bit at some i != 1.
    let (a1, a2) = gk.raw[f1[u]];
    debug_assert!(a1 & 2 == 0 && a2 & 2 == 0);
    let i = (a1 & a2).trailing_zeros() as usize;
    let f2 = automorphism_from_matrix(&transposition_matrix(gk.k, 0, i), gk)?;
    let (b1, b2) = gk.raw[f2[f1[u]]];
    // The bordered map sends base to the image of u and fixes (e2, e2)
    // because bit 1 is clear in both halves; undoing it lands u on base.
    let f3 = automorphism_from_matrix(&bordered_identity(gk.k, b1, b2), gk)?;
    let perm = compose(&invert(&f3), &compose(&f2, &f1));
    if perm[u] != base0 || perm[v] != base1 {
        return Err(Error::Contract("composed map missed the base edge".into()));
    }
    Ok(perm)
}

/// Automorphism fixing the base vertex, induced by the block matrix with
/// a leading 1 and an invertible (k-1)x(k-1) block b on the rest.
pub fn stabilizer_automorphism(gk: &LabeledGkGraph, b: &BitMatrix) -> Result<Vec<usize>> {
    let k = gk.k;
    if b.rows() != k - 1 || b.cols() != k - 1 {
        return Err(Error::Input(format!("stabilizer block must be {0}x{0}", k - 1)));
    }
    let mut a = BitMatrix::zeros(k, k);
    a.set(0, 0, true);
    for i in 0..k - 1 {
        for j in 0..k - 1 {
            a.set(i + 1, j + 1, b.get(i, j));
        }
    }
    let perm = automorphism_from_matrix(&a, gk)?;
    if perm[gk.base_vertex()] != gk.base_vertex() {
        return Err(Error::Contract("stabilizer element moved the base vertex".into()));
    }
    Ok(perm)
}

/// 5x5 class-averaged adjacency matrix of the orbit partition, together
/// with the class sizes needed to symmetrize it.
#[derive(Clone, Debug)]
pub struct QuotientMatrix {
    pub entries: [[f64; 5]; 5],
    pub class_sizes: [u64; 5],
}

impl QuotientMatrix {
    pub fn row_sums(&self) -> [f64; 5] {
        let mut s = [0.0; 5];
        for (i, row) in self.entries.iter().enumerate() {
            s[i] = row.iter().sum();
        }
        s
    }

    /// Eigenvalues, ascending. Real because the matrix is similar to a
    /// symmetric one under the class-size rescaling.
    pub fn eigenvalues(&self, tol: f64) -> Result<Vec<f64>> {
        let rows: Vec<Vec<f64>> = self.entries.iter().map(|r| r.to_vec()).collect();
        let sizes: Vec<usize> = self.class_sizes.iter().map(|&s| s as usize).collect();
        spectral::quotient_eigenvalues(&rows, &sizes, tol)
    }
}

/// Quotient matrix computed from the built graph and its orbit partition.
pub fn quotient_matrix(k: usize) -> Result<QuotientMatrix> {
    if k < 3 {
        return Err(Error::Input("quotient matrix needs k >= 3".into()));
    }
    let gk = build_gk(k)?;
    let parts = gk.orbit_partition()?;
    let q = spectral::partition_quotient(&gk.graph, &parts)?;
    let mut entries = [[0.0; 5]; 5];
    let mut class_sizes = [0u64; 5];
    for a in 0..5 {
        class_sizes[a] = parts[a].len() as u64;
        entries[a].copy_from_slice(&q[a]);
    }
    Ok(QuotientMatrix { entries, class_sizes })
}

/// Closed-form quotient matrix, valid for 3 <= k <= 30 without building
/// the graph. Entries are halves of powers of two.
pub fn quotient_matrix_closed_form(k: usize) -> Result<QuotientMatrix> {
    if !(3..=MAX_QUOTIENT_K).contains(&k) {
        return Err(Error::Input(format!(
            "closed-form quotient needs 3 <= k <= {MAX_QUOTIENT_K}, got {k}"
        )));
    }
    let p = |e: i32| -> f64 { (e as f64).exp2() };
    let kk = k as i32;
    let d = p(kk - 2) * (p(kk - 1) - 1.0);
    let entries = [
        [0.0, d, 0.0, 0.0, 0.0],
        [
            1.0,
            p(kk - 3) * (p(kk - 2) - 1.0),
            p(kk - 2) * (p(kk - 2) - 1.0),
            2.0 * (p(kk - 2) - 1.0),
            (p(kk - 2) - 1.0) * (p(kk - 3) - 1.0),
        ],
        [
            0.0,
            p(kk - 3) * (p(kk - 2) - 1.0),
            p(kk - 2) * (p(kk - 2) - 1.0),
            p(kk - 2),
            p(kk - 3) * (p(kk - 2) - 1.0),
        ],
        [0.0, p(kk - 2) * (p(kk - 2) - 1.0), p(2 * kk - 4), 0.0, 0.0],
        [0.0, p(kk - 2) * (p(kk - 3) - 1.0), p(2 * kk - 4), 0.0, p(2 * kk - 5)],
    ];
    Ok(QuotientMatrix { entries, class_sizes: orbit_class_sizes(k)? })
}

/// The five quotient eigenvalues in closed form, ascending:
/// -2^(3k/2-3), -2^(k-2), 2^(k-3), 2^(3k/2-3), and the degree.
pub fn quotient_eigenvalues_closed_form(k: usize) -> Result<[f64; 5]> {
    if !(3..=MAX_QUOTIENT_K).contains(&k) {
        return Err(Error::Input(format!(
            "closed-form spectrum needs 3 <= k <= {MAX_QUOTIENT_K}, got {k}"
        )));
    }
    let kk = k as f64;
    let big = (1.5 * kk - 3.0).exp2();
    Ok([
        -big,
        -(kk - 2.0).exp2(),
        (kk - 3.0).exp2(),
        big,
        degree(k) as f64,
    ])
}

/// The strict vector chromatic threshold of the family:
/// 2^(k/2) + 1 - 2^(1 - k/2).
pub fn kappa(k: usize) -> f64 {
    assert!(k >= 1, "kappa needs k >= 1");
    let half = k as f64 / 2.0;
    half.exp2() + 1.0 - (1.0 - half).exp2()
}

/// Complement theta value 1 - lambda_max/lambda_min computed from the
/// closed-form quotient spectrum; agrees with kappa(k) to high precision.
pub fn theta_gk_complement(k: usize) -> Result<f64> {
    let vals = quotient_matrix_closed_form(k)?.eigenvalues(1e-12)?;
    let smallest = vals[0];
    let largest = vals[vals.len() - 1];
    Ok(1.0 - largest / smallest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn counts_and_regularity() {
        for k in 1..=6 {
            let gk = build_gk(k).unwrap();
            assert_eq!(gk.graph().n() as u64, vertex_count(k), "k={k}");
            for v in 0..gk.graph().n() {
                assert_eq!(gk.graph().degree(v) as u64, degree(k), "k={k} v={v}");
            }
        }
    }

    #[test]
    fn smallest_members() {
        let g1 = build_gk(1).unwrap();
        assert_eq!(g1.graph().n(), 1);
        assert_eq!(g1.graph().edge_count(), 0);
        assert_eq!(g1.labels()[0].v1.to_bit_string(), "1");
        // k=2 is a perfect matching on 6 vertices.
        let g2 = build_gk(2).unwrap();
        assert_eq!(g2.graph().n(), 6);
        assert_eq!(g2.graph().edge_count(), 3);
    }

    #[test]
    fn adjacency_matches_label_rule() {
        let gk = build_gk(3).unwrap();
        for i in 0..gk.graph().n() {
            let (u1, u2) = gk.raw[i];
            for j in 0..gk.graph().n() {
                let (v1, v2) = gk.raw[j];
                let expected = i != j && !dot1(u1, v2) && !dot1(v1, u2);
                assert_eq!(gk.graph().has_edge(i, j), expected);
            }
        }
    }

    #[test]
    fn orbit_sizes_match_closed_form() {
        for k in 3..=6 {
            let gk = build_gk(k).unwrap();
            let parts = gk.orbit_partition().unwrap();
            let sizes: Vec<u64> = parts.iter().map(|p| p.len() as u64).collect();
            assert_eq!(sizes, orbit_class_sizes(k).unwrap().to_vec(), "k={k}");
            let total: u64 = sizes.iter().sum();
            assert_eq!(total, vertex_count(k));
        }
    }

    #[test]
    fn quotient_k3_entrywise() {
        let q = quotient_matrix(3).unwrap();
        let expected = [
            [0.0, 6.0, 0.0, 0.0, 0.0],
            [1.0, 1.0, 2.0, 2.0, 0.0],
            [0.0, 1.0, 2.0, 2.0, 1.0],
            [0.0, 2.0, 4.0, 0.0, 0.0],
            [0.0, 0.0, 4.0, 0.0, 2.0],
        ];
        assert_eq!(q.entries, expected);
        for s in q.row_sums() {
            assert!((s - 6.0).abs() < 1e-12);
        }
    }

    #[test]
    fn quotient_matches_closed_form() {
        for k in 3..=6 {
            let built = quotient_matrix(k).unwrap();
            let closed = quotient_matrix_closed_form(k).unwrap();
            assert_eq!(built.class_sizes, closed.class_sizes, "k={k}");
            for a in 0..5 {
                for b in 0..5 {
                    assert!(
                        (built.entries[a][b] - closed.entries[a][b]).abs() < 1e-9,
                        "k={k} entry ({a},{b})"
                    );
                }
            }
        }
    }

    #[test]
    fn quotient_spectrum_closed_form() {
        for k in 3..=8 {
            let vals = quotient_matrix_closed_form(k).unwrap().eigenvalues(1e-12).unwrap();
            let expected = quotient_eigenvalues_closed_form(k).unwrap();
            for (v, e) in vals.iter().zip(expected.iter()) {
                assert!((v - e).abs() < 1e-9, "k={k}: {vals:?} vs {expected:?}");
            }
        }
    }

    #[test]
    fn kappa_and_theta_agree() {
        assert!((kappa(2) - 2.0).abs() < 1e-12);
        assert!((kappa(3) - 3.121_320_343_559_642_4).abs() < 1e-12);
        assert!((kappa(4) - 4.5).abs() < 1e-12);
        for k in 3..=8 {
            let theta = theta_gk_complement(k).unwrap();
            assert!((theta - kappa(k)).abs() < 1e-9, "k={k}: {theta} vs {}", kappa(k));
        }
    }

    #[test]
    fn canonical_set_is_a_clique_here() {
        for k in 1..=5 {
            let gk = build_gk(k).unwrap();
            let s = canonical_independent_set(&gk);
            assert_eq!(s.len(), k);
            let members: Vec<usize> = s.iter().collect();
            assert!(gk.graph().complement().is_independent(&s), "k={k}");
            for (idx, &a) in members.iter().enumerate() {
                for &b in &members[idx + 1..] {
                    assert!(gk.graph().has_edge(a, b), "k={k}");
                }
            }
        }
    }

    #[test]
    fn identity_matrix_induces_identity() {
        let gk = build_gk(3).unwrap();
        let perm = automorphism_from_matrix(&BitMatrix::identity(3), &gk).unwrap();
        assert!(perm.iter().enumerate().all(|(i, &p)| i == p));
    }

    #[test]
    fn singular_matrix_rejected() {
        let gk = build_gk(3).unwrap();
        let zero = BitMatrix::zeros(3, 3);
        assert!(automorphism_from_matrix(&zero, &gk).is_err());
    }

    #[test]
    fn transposition_moves_base_to_unit_pair() {
        let gk = build_gk(4).unwrap();
        for i in 1..4 {
            let perm =
                automorphism_from_matrix(&transposition_matrix(4, 0, i), &gk).unwrap();
            let unit = 1u64 << i;
            assert_eq!(perm[gk.base_vertex()], gk.vertex_index(unit, unit).unwrap());
        }
    }

    #[test]
    fn vertex_transitive_everywhere_k3() {
        let gk = build_gk(3).unwrap();
        for v in 0..gk.graph().n() {
            let perm = automorphism_to_vertex(&gk, v).unwrap();
            assert_eq!(perm[gk.base_vertex()], v);
        }
    }

    #[test]
    fn edge_transitive_everywhere_k3() {
        let gk = build_gk(3).unwrap();
        let base0 = gk.base_vertex();
        let base1 = gk.second_base_vertex().unwrap();
        for (u, v) in gk.graph().edges() {
            let perm = automorphism_to_base_edge(&gk, u, v).unwrap();
            assert_eq!((perm[u], perm[v]), (base0, base1));
        }
    }

    #[test]
    fn transitivity_spot_checks_k4() {
        let gk = build_gk(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let edges = gk.graph().edges();
        for _ in 0..20 {
            let v = rng.random_range(0..gk.graph().n());
            assert_eq!(automorphism_to_vertex(&gk, v).unwrap()[gk.base_vertex()], v);
            let (a, b) = edges[rng.random_range(0..edges.len())];
            let perm = automorphism_to_base_edge(&gk, a, b).unwrap();
            assert_eq!(perm[a], gk.base_vertex());
            assert_eq!(perm[b], gk.second_base_vertex().unwrap());
        }
    }

    fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> BitMatrix {
        loop {
            let mut m = BitMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    m.set(i, j, rng.random::<bool>());
                }
            }
            if m.inverse().is_some() {
                return m;
            }
        }
    }

    #[test]
    fn stabilizer_respects_orbit_classes() {
        for k in [3usize, 4] {
            let gk = build_gk(k).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(k as u64);
            for _ in 0..50 {
                let b = random_invertible(&mut rng, k - 1);
                let perm = stabilizer_automorphism(&gk, &b).unwrap();
                for (v, &image) in perm.iter().enumerate() {
                    assert_eq!(
                        gk.orbit_class()[v],
                        gk.orbit_class()[image],
                        "k={k}: vertex {v} changed class"
                    );
                }
            }
        }
    }
}
