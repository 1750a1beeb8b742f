//! Coloring built from repeated independent-set extraction.
//!
//! The driver targets graphs whose complement has bounded minrank over GF(2).
//! That bound k buys structure: at k <= 2 the graph is bipartite, and at any
//! k every neighborhood inherits the bound with k - 1, so an independent-set
//! routine can recurse into the densest neighborhood when thresholds stop
//! paying. `minrank_basic` implements that recursion on top of the Gaussian
//! rounding from `rounding`; `independent_set_minrank3` is the sharper k = 3
//! routine that switches on a degree cutoff of n^0.7426 and runs the shell-
//! augmented rounding below it. `color_graph` turns either routine into a
//! coloring by extracting a class, deleting it, and re-solving the residual
//! graph. `g_exponent` tracks the exponent recursion that justifies the
//! cutoff. Greedy baselines are included for comparison runs.

use crate::graph::{Graph, VertexSet};
use crate::rounding::{self, RoundingParams};
use crate::sdp;
use crate::{gk, Error, Result};
use std::collections::VecDeque;

/// Degree cutoff exponent for the k = 3 routine: neighborhoods of vertices
/// with degree at least n^0.7426 are 2-colored directly.
pub const DELTA_EXPONENT: f64 = 0.7426;

/// Feasibility tolerance passed to the vector-coloring solver.
const SOLVE_TOL: f64 = 1e-5;

/// A proper coloring: one color id per vertex, ids contiguous from 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub count: usize,
}

impl Coloring {
    /// Compacts arbitrary color ids to 0..count in order of first appearance.
    pub fn from_colors(raw: Vec<usize>) -> Coloring {
        let mut remap: Vec<Option<usize>> = Vec::new();
        let mut colors = raw;
        let mut count = 0;
        for c in &mut colors {
            if *c >= remap.len() {
                remap.resize(*c + 1, None);
            }
            let id = *remap[*c].get_or_insert_with(|| {
                count += 1;
                count - 1
            });
            *c = id;
        }
        Coloring { colors, count }
    }

    /// True when no edge is monochromatic and ids are contiguous from 0.
    pub fn is_proper(&self, g: &Graph) -> bool {
        if self.colors.len() != g.n() {
            return false;
        }
        let mut seen = vec![false; self.count];
        for (v, &c) in self.colors.iter().enumerate() {
            if c >= self.count {
                return false;
            }
            seen[c] = true;
            for u in g.neighbors(v).iter_ones() {
                if self.colors[u] == c {
                    return false;
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn class(&self, color: usize) -> VertexSet {
        VertexSet::from_members(
            self.colors.len(),
            self.colors
                .iter()
                .enumerate()
                .filter_map(|(v, &c)| (c == color).then_some(v)),
        )
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.count];
        for &c in &self.colors {
            sizes[c] += 1;
        }
        sizes
    }
}

/// Witness that a graph is not bipartite: the vertices of an odd cycle in
/// order, consecutive pairs (and the wrap-around pair) adjacent.
#[derive(Debug, Clone)]
pub struct NotBipartite {
    pub odd_cycle: Vec<usize>,
}

/// BFS 2-coloring per component. An edgeless graph uses one color. On an odd
/// cycle the error carries the cycle as a witness.
pub fn two_color(g: &Graph) -> std::result::Result<Coloring, NotBipartite> {
    let n = g.n();
    let mut color = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if color[root] != usize::MAX {
            continue;
        }
        color[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u).iter_ones() {
                if color[v] == usize::MAX {
                    color[v] = color[u] ^ 1;
                    parent[v] = u;
                    depth[v] = depth[u] + 1;
                    queue.push_back(v);
                } else if color[v] == color[u] {
                    return Err(NotBipartite { odd_cycle: odd_cycle_witness(u, v, &parent, &depth) });
                }
            }
        }
    }
    let count = if color.contains(&1) { 2 } else { 1 };
    Ok(Coloring { colors: color, count })
}

/// Joins the BFS-tree paths from the endpoints of a same-color edge up to
/// their lowest common ancestor. Equal colors mean equal depth parity, so the
/// resulting cycle is odd.
fn odd_cycle_witness(u: usize, v: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (u, v);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        left.push(a);
        b = parent[b];
        right.push(b);
    }
    // Both paths end at the common ancestor; keep one copy.
    right.pop();
    left.extend(right.into_iter().rev());
    left
}

/// Exponent recursion g(1) = g(2) = 1, g(k) = g(k-1)/(g(k-1) + 1 - 2/kappa_k).
pub fn g_exponent(k: usize) -> f64 {
    assert!(k >= 1, "exponent index starts at 1");
    let mut g = 1.0;
    for j in 3..=k {
        g = g / (g + 1.0 - 2.0 / gk::kappa(j));
    }
    g
}

/// Independent set under a declared minrank bound k on the complement.
///
/// k <= 2: the bound forces bipartiteness, so the larger side of a
/// 2-coloring is returned; an odd cycle converts to a contract violation.
/// k >= 3: the better of Gaussian threshold rounding on solved vectors
/// (threshold tuned to kappa(k), ties won by this branch) and the recursive
/// call on the densest neighborhood with k - 1. The result is always
/// independent in g.
pub fn minrank_basic(g: &Graph, k: usize, seed: u64) -> Result<VertexSet> {
    assert!(k >= 1, "minrank bound must be positive");
    let n = g.n();
    if g.edge_count() == 0 {
        return Ok(VertexSet::full(n));
    }
    if k <= 2 {
        let coloring = two_color(g).map_err(|e| {
            Error::Contract(format!(
                "declared minrank bound {k} implies a bipartite graph, but an odd cycle \
                 of length {} exists: {:?}",
                e.odd_cycle.len(),
                e.odd_cycle
            ))
        })?;
        return Ok(larger_class(&coloring));
    }

    let vc = sdp::solve_vector_coloring(g, true, SOLVE_TOL, seed)?;
    let sigma_k = 1.0 / (gk::kappa(k) - 1.0);
    let params = RoundingParams {
        t_grid: rounding::standard_t_grid(n, g.max_degree(), sigma_k, 0.0),
        trials: rounding::standard_trials(n),
        seed,
        b_grid: Vec::new(),
    };
    let kms_set = rounding::kms_prime(g, &vc, &params);

    let v = g.max_degree_vertex()?;
    let (sub, map) = g.induced_subgraph(&g.neighbor_set(v))?;
    let rec = minrank_basic(&sub, k - 1, seed)?;
    let rec_set = VertexSet::from_members(n, rec.iter().map(|i| map[i]));

    let best = if kms_set.len() >= rec_set.len() { kms_set } else { rec_set };
    assert!(g.is_independent(&best), "extracted set must be independent");
    Ok(best)
}

/// Specialized k = 3 routine: a vertex of degree at least n^0.7426 has a
/// 2-colorable neighborhood whose larger side already has size >= degree/2;
/// below the cutoff the shell-augmented rounding takes over.
pub fn independent_set_minrank3(g: &Graph, seed: u64) -> Result<VertexSet> {
    let n = g.n();
    if g.edge_count() == 0 {
        return Ok(VertexSet::full(n));
    }
    let cutoff = (n as f64).powf(DELTA_EXPONENT);
    if g.max_degree() as f64 >= cutoff {
        let v = g.max_degree_vertex()?;
        let (sub, map) = g.induced_subgraph(&g.neighbor_set(v))?;
        let coloring = two_color(&sub).map_err(|e| {
            Error::Contract(format!(
                "declared minrank bound 3 implies 2-colorable neighborhoods, but the \
                 neighborhood of {v} contains an odd cycle of length {}",
                e.odd_cycle.len()
            ))
        })?;
        let side = larger_class(&coloring);
        let set = VertexSet::from_members(n, side.iter().map(|i| map[i]));
        assert!(g.is_independent(&set), "2-coloring side must be independent");
        return Ok(set);
    }
    Ok(rounding::augmented_kms(g, SOLVE_TOL, seed)?.best)
}

/// Which extraction routine drives `color_graph`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtractionMode {
    /// `minrank_basic` at the declared bound.
    Basic,
    /// `independent_set_minrank3`; requires the bound to be 3.
    Minrank3,
}

/// Colors g by repeatedly extracting an independent set, assigning it the
/// next color, and re-solving on the residual graph. The extraction is
/// `independent_set_minrank3` at k = 3 and `minrank_basic` otherwise; the
/// declared bound is preserved by induced subgraphs, so every recursive call
/// sees the same contract.
pub fn color_graph(g: &Graph, k: usize, seed: u64) -> Result<Coloring> {
    let mode = if k == 3 { ExtractionMode::Minrank3 } else { ExtractionMode::Basic };
    color_graph_mode(g, k, seed, mode)
}

/// `color_graph` with the extraction routine pinned explicitly.
pub fn color_graph_mode(g: &Graph, k: usize, seed: u64, mode: ExtractionMode) -> Result<Coloring> {
    if mode == ExtractionMode::Minrank3 && k != 3 {
        return Err(Error::Input(format!(
            "the degree-cutoff extraction assumes complement minrank at most 3, got bound {k}"
        )));
    }
    let n = g.n();
    let mut colors = vec![usize::MAX; n];
    let mut residual = VertexSet::full(n);
    let mut next = 0;
    while !residual.is_empty() {
        let (sub, map) = g.induced_subgraph(&residual)?;
        let mut extracted = match mode {
            ExtractionMode::Minrank3 => {
                independent_set_minrank3(&sub, seed.wrapping_add(next as u64))?
            }
            ExtractionMode::Basic => minrank_basic(&sub, k, seed.wrapping_add(next as u64))?,
        };
        if extracted.is_empty() {
            // A rounding sweep can in principle come back empty; a singleton
            // keeps the pipeline moving and is always independent.
            extracted = VertexSet::from_members(sub.n(), [0]);
        }
        for i in extracted.iter() {
            colors[map[i]] = next;
            residual.remove(map[i]);
        }
        next += 1;
    }
    let coloring = Coloring { colors, count: next };
    assert!(coloring.is_proper(g), "extraction classes must form a proper coloring");
    Ok(coloring)
}

fn larger_class(coloring: &Coloring) -> VertexSet {
    let zero = coloring.class(0);
    if coloring.count == 1 {
        return zero;
    }
    let one = coloring.class(1);
    if zero.len() >= one.len() {
        zero
    } else {
        one
    }
}

/// Greedy baseline: repeatedly take a vertex of minimum residual degree and
/// delete its closed neighborhood.
pub fn greedy_independent_set(g: &Graph) -> VertexSet {
    let n = g.n();
    let mut alive = VertexSet::full(n);
    let mut out = VertexSet::empty(n);
    while !alive.is_empty() {
        let v = alive
            .iter()
            .min_by_key(|&v| {
                let mut nb = g.neighbors(v).clone();
                nb.and_assign(alive.bits());
                (nb.count_ones(), v)
            })
            .expect("alive set is non-empty");
        out.insert(v);
        alive.remove(v);
        for u in g.neighbors(v).iter_ones() {
            alive.remove(u);
        }
    }
    out
}

/// Greedy baseline: first-fit coloring in ascending vertex order.
pub fn greedy_coloring(g: &Graph) -> Coloring {
    let n = g.n();
    let mut colors = vec![usize::MAX; n];
    let mut used = Vec::new();
    for v in 0..n {
        used.clear();
        used.resize(n, false);
        for u in g.neighbors(v).iter_ones() {
            if colors[u] != usize::MAX {
                used[colors[u]] = true;
            }
        }
        colors[v] = (0..n).find(|&c| !used[c]).expect("first fit always finds a color");
    }
    Coloring::from_colors(colors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen_bounded_minrank_instance;

    fn cycle(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    fn assert_valid_odd_cycle(g: &Graph, cycle: &[usize]) {
        assert!(cycle.len() >= 3 && cycle.len() % 2 == 1);
        let mut seen = std::collections::HashSet::new();
        for &v in cycle {
            assert!(seen.insert(v), "cycle vertices must be distinct");
        }
        for i in 0..cycle.len() {
            let u = cycle[i];
            let v = cycle[(i + 1) % cycle.len()];
            assert!(g.has_edge(u, v), "consecutive cycle vertices must be adjacent");
        }
    }

    #[test]
    fn two_coloring_of_even_cycle() {
        let g = cycle(4);
        let coloring = two_color(&g).unwrap();
        assert_eq!(coloring.count, 2);
        assert!(coloring.is_proper(&g));
        assert_eq!(coloring.class_sizes(), vec![2, 2]);
    }

    #[test]
    fn odd_cycle_is_witnessed() {
        let g = cycle(5);
        let err = two_color(&g).unwrap_err();
        assert_eq!(err.odd_cycle.len(), 5);
        assert_valid_odd_cycle(&g, &err.odd_cycle);

        // A triangle hanging off a path inside a larger graph.
        let mut h = Graph::new(8);
        h.add_edge(0, 1);
        h.add_edge(1, 2);
        h.add_edge(2, 3);
        h.add_edge(3, 4);
        h.add_edge(4, 2);
        let err = two_color(&h).unwrap_err();
        assert_valid_odd_cycle(&h, &err.odd_cycle);
    }

    #[test]
    fn edgeless_graph_needs_one_color() {
        let g = Graph::new(7);
        let coloring = two_color(&g).unwrap();
        assert_eq!(coloring.count, 1);
        assert!(coloring.is_proper(&g));
    }

    #[test]
    fn random_bipartite_graphs_two_color() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..5 {
            let mut g = Graph::new(30);
            for u in 0..15 {
                for v in 15..30 {
                    if rng.random::<f64>() < 0.2 {
                        g.add_edge(u, v);
                    }
                }
            }
            let coloring = two_color(&g).unwrap();
            assert!(coloring.is_proper(&g));
            assert!(coloring.count <= 2);
        }
    }

    #[test]
    fn exponent_recursion_values() {
        assert_eq!(g_exponent(1), 1.0);
        assert_eq!(g_exponent(2), 1.0);
        let g3 = (3.0 + 2.0_f64.sqrt()) / 6.0;
        assert!((g_exponent(3) - g3).abs() <= 1e-12);
        assert!((g_exponent(3) - 0.7357022).abs() <= 1e-7);
        assert!((g_exponent(4) - 0.5697562882542065).abs() <= 1e-12);
        for k in 3..=10 {
            let (gk_, gk1) = (g_exponent(k), g_exponent(k - 1));
            let residual = gk_ * (gk1 + 1.0 - 2.0 / gk::kappa(k)) - gk1;
            assert!(residual.abs() <= 1e-12, "fixed point fails at k = {k}");
        }
    }

    #[test]
    fn balancing_identity_at_the_cutoff() {
        // With Delta = n^g(3), n / Delta^(1 - 2/kappa_3) equals Delta^g(2).
        let n: f64 = 1e6;
        let delta = n.powf(g_exponent(3));
        let lhs = n / delta.powf(1.0 - 2.0 / gk::kappa(3));
        let rhs = delta.powf(g_exponent(2));
        assert!(((lhs - rhs) / rhs).abs() <= 1e-9);
    }

    #[test]
    fn bipartite_base_case_returns_a_side() {
        let g = cycle(4);
        let set = minrank_basic(&g, 2, 0).unwrap();
        assert_eq!(set.len(), 2);
        assert!(g.is_independent(&set));

        let err = minrank_basic(&cycle(5), 2, 0).unwrap_err();
        assert!(matches!(err, Error::Contract(_)));
        assert!(err.to_string().contains("odd cycle"));
    }

    #[test]
    fn basic_extraction_on_the_extremal_graph() {
        let gk3 = gk::build_gk(3).unwrap();
        let set = minrank_basic(gk3.graph(), 3, 1).unwrap();
        assert!(gk3.graph().is_independent(&set));
        assert!(set.len() >= 3);
    }

    #[test]
    fn basic_extraction_on_generated_instances() {
        for seed in 0..3 {
            let g = gen_bounded_minrank_instance(40, 3, 0.6, seed);
            let set = minrank_basic(&g, 3, seed).unwrap();
            assert!(g.is_independent(&set));
            assert!(!set.is_empty());
        }
    }

    #[test]
    fn star_hub_neighborhood_is_taken_whole() {
        let mut g = Graph::new(40);
        for v in 1..40 {
            g.add_edge(0, v);
        }
        let set = independent_set_minrank3(&g, 0).unwrap();
        assert_eq!(set.len(), 39);
        assert!(!set.contains(0));
        assert!(g.is_independent(&set));
    }

    #[test]
    fn planted_hub_gets_half_its_degree() {
        // Bipartite-by-construction hub neighborhood: two disjoint greedy
        // independent sets of a generated instance.
        let base = gen_bounded_minrank_instance(300, 3, 0.6, 11);
        let s1 = greedy_independent_set(&base);
        let mut residual = VertexSet::full(300);
        for v in s1.iter() {
            residual.remove(v);
        }
        let (sub, map) = base.induced_subgraph(&residual).unwrap();
        let s2: Vec<usize> = greedy_independent_set(&sub).iter().map(|i| map[i]).collect();

        let mut g = Graph::new(301);
        for (u, v) in base.edges() {
            g.add_edge(u, v);
        }
        for v in s1.iter().chain(s2.iter().copied()) {
            g.add_edge(300, v);
        }
        let hub_degree = g.degree(300);
        assert!(hub_degree as f64 >= 301.0_f64.powf(DELTA_EXPONENT));
        assert_eq!(g.max_degree_vertex().unwrap(), 300);

        let set = independent_set_minrank3(&g, 0).unwrap();
        assert!(g.is_independent(&set));
        assert!(2 * set.len() >= hub_degree);
    }

    #[test]
    fn low_degree_instances_delegate_to_the_augmented_search() {
        let g = gen_bounded_minrank_instance(30, 3, 0.6, 5);
        assert!((g.max_degree() as f64) < 30.0_f64.powf(DELTA_EXPONENT));
        let set = independent_set_minrank3(&g, 5).unwrap();
        assert!(g.is_independent(&set));
        assert!(!set.is_empty());
    }

    #[test]
    fn coloring_an_edgeless_graph() {
        let g = Graph::new(6);
        let coloring = color_graph(&g, 3, 0).unwrap();
        assert_eq!(coloring.count, 1);
        assert!(coloring.is_proper(&g));
    }

    #[test]
    fn coloring_the_extremal_graph() {
        let gk3 = gk::build_gk(3).unwrap();
        let g = gk3.graph();
        let coloring = color_graph(g, 3, 0).unwrap();
        assert!(coloring.is_proper(g));
        let largest = coloring.class_sizes().into_iter().max().unwrap();
        assert!(coloring.count * largest >= g.n());
        let greedy = greedy_coloring(g);
        assert!(greedy.is_proper(g));
        assert!(coloring.count <= greedy.count);
    }

    #[test]
    fn coloring_a_generated_instance() {
        let g = gen_bounded_minrank_instance(100, 3, 0.6, 3);
        let coloring = color_graph(&g, 3, 3).unwrap();
        assert!(coloring.is_proper(&g));
        let greedy = greedy_coloring(&g);
        assert!(coloring.count <= greedy.count);
    }

    #[test]
    fn coloring_compaction_and_class_accounting() {
        let c = Coloring::from_colors(vec![7, 7, 2, 9, 2]);
        assert_eq!(c.count, 3);
        assert_eq!(c.colors, vec![0, 0, 1, 2, 1]);
        assert_eq!(c.class_sizes(), vec![2, 2, 1]);

        let mut g = Graph::new(2);
        g.add_edge(0, 1);
        let bad = Coloring { colors: vec![0, 0], count: 1 };
        assert!(!bad.is_proper(&g));
    }

    #[test]
    fn greedy_baselines_are_valid() {
        for seed in 0..3 {
            let g = gen_bounded_minrank_instance(60, 3, 0.6, seed);
            let set = greedy_independent_set(&g);
            assert!(g.is_independent(&set));
            assert!(!set.is_empty());
            let coloring = greedy_coloring(&g);
            assert!(coloring.is_proper(&g));
        }
    }
}
