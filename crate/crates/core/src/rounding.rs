//! Gaussian-threshold rounding of vector colorings into independent sets.
//!
//! A strict vector coloring places unit vectors so that every edge has inner
//! product -sigma. Projecting all vectors onto a random Gaussian direction and
//! keeping the vertices above a threshold t selects a spherical cap in which
//! edges are rare; deleting both endpoints of every surviving edge leaves an
//! independent set. `kms_prime` sweeps a threshold grid with repeated trials
//! and keeps the largest survivor set. `augmented_kms` additionally searches
//! vertex-centered inner-product shells: for a center i and level b it
//! re-rounds the subgraph on {j : <w_i, w_j> >= b} with the vectors projected
//! orthogonally to w_i, which wins when the solution geometry clusters around
//! a few directions.
//!
//! The analysis half of the module evaluates the closed forms behind the
//! shell search: `analysis_functions` computes the correlation profile at a
//! shell level, `condition7_margin` measures the feasibility slack of the
//! exponent inequality that the shell constant c must satisfy, and
//! `find_best_c` picks the largest feasible c.

use crate::graph::{Graph, VertexSet};
use crate::sdp::{self, VectorColoring};
use crate::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Shell constant used by `augmented_kms`; the largest value for which the
/// exponent inequality stays feasible at the degree cutoff's fixed point,
/// rounded to five digits.
pub const AUGMENTATION_C: f64 = 0.03678;

/// Number of geometric tail points in the standard threshold grid.
const TAIL_GRID_POINTS: usize = 20;

// ---------------------------------------------------------------------------
// Normal tail
// ---------------------------------------------------------------------------

/// Upper tail of the standard normal, N(s) = P[Z >= s].
///
/// Evaluated through the complementary error function: a Taylor series below
/// 2/sqrt(2) of the argument and a Lentz continued fraction above. Absolute
/// error is below 1e-12 over the whole real line; far tails underflow to 0.
pub fn normal_tail(s: f64) -> f64 {
    let x = s / std::f64::consts::SQRT_2;
    if x >= 0.0 {
        0.5 * erfc_nonneg(x)
    } else {
        1.0 - 0.5 * erfc_nonneg(-x)
    }
}

/// erfc(x) for x >= 0.
fn erfc_nonneg(x: f64) -> f64 {
    if x < 2.0 {
        1.0 - erf_series(x)
    } else {
        erfc_continued_fraction(x)
    }
}

/// Maclaurin series of erf, adequate to machine precision for 0 <= x < 2.
fn erf_series(x: f64) -> f64 {
    let mut term = x;
    let mut sum = x;
    for n in 1..200 {
        term *= -x * x / n as f64;
        let contrib = term / (2 * n + 1) as f64;
        sum += contrib;
        if contrib.abs() < 1e-18 {
            break;
        }
    }
    std::f64::consts::FRAC_2_SQRT_PI * sum
}

/// Continued fraction erfc(x) = exp(-x^2)/sqrt(pi) / (x + K(k/2 / x)),
/// evaluated with the modified Lentz recurrence. Converges fast for x >= 2.
fn erfc_continued_fraction(x: f64) -> f64 {
    let tiny = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for k in 1..300 {
        let a = k as f64 / 2.0;
        d = x + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-(x * x)).exp() / std::f64::consts::PI.sqrt() / f
}

/// Inverse of `normal_tail` by bisection over [-40, 40] to 1e-12.
pub fn inverse_normal_tail(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Input(format!(
            "tail probability {p} outside the open interval (0, 1)"
        )));
    }
    let mut lo = -40.0;
    let mut hi = 40.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if normal_tail(mid) > p {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-12 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

// ---------------------------------------------------------------------------
// Threshold selection
// ---------------------------------------------------------------------------

/// Threshold t with N(t) = Delta^{-(1-sigma)/((1+sigma)(1+c))}, clamped to 0
/// when the target tail reaches 1/2 (small degree or sigma near 1).
///
/// # Panics
/// If sigma is not positive and finite or c is negative.
pub fn kms_threshold(max_degree: usize, sigma: f64, c: f64) -> f64 {
    assert!(sigma.is_finite() && sigma > 0.0, "sigma must be positive");
    assert!(c >= 0.0, "shell constant must be nonnegative");
    if max_degree <= 1 {
        return 0.0;
    }
    let exponent = -(1.0 - sigma) / ((1.0 + sigma) * (1.0 + c));
    let target = (max_degree as f64).powf(exponent);
    if target >= 0.5 {
        return 0.0;
    }
    // Bisection noise can land a hair below zero for targets near 1/2.
    inverse_normal_tail(target).expect("target tail lies in (0, 1/2)").max(0.0)
}

/// Threshold grid for an n-vertex graph of maximum degree `max_degree`: the
/// degree-tuned threshold plus a geometric ladder of `TAIL_GRID_POINTS`
/// thresholds whose tails span [1/n, 1/2], deduplicated at 1e-12.
pub fn standard_t_grid(n: usize, max_degree: usize, sigma: f64, c: f64) -> Vec<f64> {
    t_grid_with_points(n, max_degree, sigma, c, TAIL_GRID_POINTS)
}

/// `standard_t_grid` with an explicit ladder size.
pub fn t_grid_with_points(
    n: usize,
    max_degree: usize,
    sigma: f64,
    c: f64,
    points: usize,
) -> Vec<f64> {
    assert!(n >= 1, "grid needs at least one vertex");
    assert!(points >= 2, "ladder needs at least two points");
    let mut ts = vec![kms_threshold(max_degree, sigma, c)];
    let hi = 0.5_f64;
    let lo = (1.0 / n as f64).min(hi);
    for i in 0..points {
        let frac = i as f64 / (points - 1) as f64;
        let tail = hi * (lo / hi).powf(frac);
        ts.push(inverse_normal_tail(tail).expect("tail lies in (0, 1/2]").max(0.0));
    }
    ts.sort_by(f64::total_cmp);
    ts.dedup_by(|a, b| (*a * 1e12).round() == (*b * 1e12).round());
    ts
}

/// Trials per threshold: ceil(8 ln n), floored at n = 2 so a single-vertex
/// graph still gets a trial.
pub fn standard_trials(n: usize) -> usize {
    (8.0 * (n.max(2) as f64).ln()).ceil() as usize
}

// ---------------------------------------------------------------------------
// Rounding parameters and the threshold rounding pass
// ---------------------------------------------------------------------------

/// Parameters of a rounding run: the threshold grid, the number of Gaussian
/// trials per threshold, the RNG seed, and optionally the shell levels for
/// the augmented search (empty means derive them from Gram quantiles).
#[derive(Debug, Clone)]
pub struct RoundingParams {
    pub t_grid: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub b_grid: Vec<f64>,
}

impl RoundingParams {
    /// Grid and trial counts tuned to the graph: see `standard_t_grid` and
    /// `standard_trials`. Shell levels are left to be derived from the Gram
    /// matrix at run time.
    pub fn standard(g: &Graph, sigma: f64, c: f64, seed: u64) -> RoundingParams {
        RoundingParams {
            t_grid: standard_t_grid(g.n(), g.max_degree(), sigma, c),
            trials: standard_trials(g.n()),
            seed,
            b_grid: Vec::new(),
        }
    }

    fn validate(&self) {
        assert!(!self.t_grid.is_empty(), "threshold grid must be non-empty");
        assert!(self.trials >= 1, "need at least one trial per threshold");
        for w in self.t_grid.windows(2) {
            assert!(w[0] <= w[1], "threshold grid must be ascending");
        }
        for &t in &self.t_grid {
            assert!(t >= 0.0 && t.is_finite(), "thresholds must be finite and >= 0");
        }
    }
}

/// Outcome of a threshold-rounding sweep: the best survivor set and the
/// (threshold, trial) pair that produced it.
#[derive(Debug, Clone)]
pub struct KmsRun {
    pub set: VertexSet,
    pub t: f64,
    pub trial: usize,
}

/// Threshold rounding: for every threshold t and every trial, draw a Gaussian
/// direction, keep the vertices whose vectors project above t, then repeatedly
/// delete both endpoints of the lexicographically first surviving edge. The
/// largest survivor set over all (t, trial) wins; ties keep the earliest pair
/// (smaller t, then smaller trial). The result is independent for any input
/// vectors, valid coloring or not.
///
/// # Panics
/// If the vectors do not cover the graph or the parameters are malformed.
pub fn kms_prime_run(g: &Graph, vc: &VectorColoring, params: &RoundingParams) -> KmsRun {
    params.validate();
    let n = g.n();
    assert!(vc.vectors.len() == n, "one vector per vertex required");
    let nbrs: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).iter_ones().collect()).collect();
    let (members, t, trial) =
        kms_core(&nbrs, &vc.vectors, &params.t_grid, params.trials, params.seed);
    let set = VertexSet::from_members(n, members);
    assert!(g.is_independent(&set), "survivor set must be independent");
    KmsRun { set, t, trial }
}

/// `kms_prime_run` reduced to the winning set, dropping the (t, trial) bookkeeping.
pub fn kms_prime(g: &Graph, vc: &VectorColoring, params: &RoundingParams) -> VertexSet {
    kms_prime_run(g, vc, params).set
}

/// Shared sweep over (threshold, trial) pairs on an adjacency-list graph.
/// All Gaussian draws come from one sequential stream seeded once.
fn kms_core(
    nbrs: &[Vec<usize>],
    vectors: &[Vec<f64>],
    t_grid: &[f64],
    trials: usize,
    seed: u64,
) -> (Vec<usize>, f64, usize) {
    let d = vectors.first().map_or(0, Vec::len);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut zeta = vec![0.0; d];
    let mut best: Vec<usize> = Vec::new();
    let mut best_t = t_grid[0];
    let mut best_trial = 0;
    for &t in t_grid {
        for trial in 0..trials {
            sdp::fill_standard_normal(&mut rng, &mut zeta);
            let mut alive: Vec<bool> = vectors.iter().map(|w| dot(w, &zeta) >= t).collect();
            eliminate_surviving_edges(nbrs, &mut alive);
            let size = alive.iter().filter(|&&a| a).count();
            if size > best.len() {
                best = (0..alive.len()).filter(|&i| alive[i]).collect();
                best_t = t;
                best_trial = trial;
            }
        }
    }
    (best, best_t, best_trial)
}

/// Deletes both endpoints of the lexicographically first surviving edge until
/// none remain. When vertex i is the first live vertex with a live neighbor,
/// every live vertex below i is already isolated, so the chosen edge (i, j)
/// has j > i and is the smallest surviving edge in (i, j) order.
fn eliminate_surviving_edges(nbrs: &[Vec<usize>], alive: &mut [bool]) {
    loop {
        let mut hit = false;
        'scan: for i in 0..alive.len() {
            if !alive[i] {
                continue;
            }
            for &j in &nbrs[i] {
                if alive[j] {
                    alive[i] = false;
                    alive[j] = false;
                    hit = true;
                    break 'scan;
                }
            }
        }
        if !hit {
            return;
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

// ---------------------------------------------------------------------------
// Augmented search over inner-product shells
// ---------------------------------------------------------------------------

/// Result of the augmented search: the solved coloring, the plain full-graph
/// rounding run, and the best independent set found overall. `best` is never
/// smaller than `kms.set` because the full-graph run is one of the candidates.
#[derive(Debug, Clone)]
pub struct AugmentedRounding {
    pub coloring: VectorColoring,
    pub kms: KmsRun,
    pub best: VertexSet,
    pub best_from_shell: bool,
}

/// Solves the strict vector coloring of g, rounds the whole graph, then
/// re-rounds every inner-product shell: for each center i and level b, the
/// vertices with b <= <w_i, w_j> < 1 get their vectors projected orthogonally
/// to w_i and renormalized, and the induced subgraph is rounded with a grid
/// tuned to its own degree and edge products. Returns the largest independent
/// set seen. Solver failures propagate; an edgeless graph yields all vertices.
pub fn augmented_kms(g: &Graph, tol: f64, seed: u64) -> Result<AugmentedRounding> {
    augmented_kms_with_step(g, tol, seed, 0.05)
}

/// `augmented_kms` with an explicit quantile step for the shell level grid.
/// Smaller steps try more levels per center; `b_step` must lie in (0, 0.5].
pub fn augmented_kms_with_step(
    g: &Graph,
    tol: f64,
    seed: u64,
    b_step: f64,
) -> Result<AugmentedRounding> {
    assert!(b_step > 0.0 && b_step <= 0.5, "shell quantile step must lie in (0, 0.5]");
    let n = g.n();
    let coloring = sdp::solve_vector_coloring(g, true, tol, seed)?;
    if g.edge_count() == 0 {
        let set = VertexSet::full(n);
        let kms = KmsRun { set: set.clone(), t: 0.0, trial: 0 };
        return Ok(AugmentedRounding { coloring, kms, best: set, best_from_shell: false });
    }
    let sigma = coloring.sigma();
    let c = AUGMENTATION_C;
    let params = RoundingParams::standard(g, sigma, c, seed);
    let kms = kms_prime_run(g, &coloring, &params);

    let gram = gram_matrix(&coloring.vectors);
    let b_grid = if params.b_grid.is_empty() {
        quantile_b_grid(&gram, sigma, c, b_step)
    } else {
        params.b_grid.clone()
    };

    let mut best = kms.set.clone();
    let mut best_from_shell = false;
    for i in 0..n {
        for &b in &b_grid {
            let Some(shell) = project_shell(g, &coloring.vectors, &gram, i, b) else {
                continue;
            };
            if shell.edges.is_empty() {
                // The shell is already independent; it competes as a whole.
                if shell.members.len() > best.len() {
                    best = VertexSet::from_members(n, shell.members.iter().copied());
                    best_from_shell = true;
                }
                continue;
            }
            let worst = shell
                .edges
                .iter()
                .map(|&(a, bb)| dot(&shell.vectors[a], &shell.vectors[bb]))
                .fold(f64::NEG_INFINITY, f64::max);
            let sigma_eff = if worst < 0.0 { -worst } else { sigma };
            let m = shell.members.len();
            let t_grid = standard_t_grid(m, shell.max_degree, sigma_eff, c);
            let trials = standard_trials(m);
            let sub_seed = shell_seed(seed, i, b);
            let (local, _, _) = kms_core(&shell.nbrs, &shell.vectors, &t_grid, trials, sub_seed);
            if local.len() > best.len() {
                best = VertexSet::from_members(n, local.iter().map(|&idx| shell.members[idx]));
                best_from_shell = true;
            }
        }
    }
    assert!(g.is_independent(&best), "augmented search must return an independent set");
    Ok(AugmentedRounding { coloring, kms, best, best_from_shell })
}

/// A projected shell: original vertex ids, unit vectors orthogonal to the
/// center, induced adjacency, and its edge list and maximum degree.
struct ProjectedShell {
    members: Vec<usize>,
    vectors: Vec<Vec<f64>>,
    nbrs: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    max_degree: usize,
}

/// Builds the shell {j != i : b <= <w_i, w_j> < 1 - 1e-12} with vectors
/// projected orthogonally to w_i and renormalized. Members whose projection
/// is shorter than 1e-6 are dropped. Returns None when fewer than two members
/// survive.
fn project_shell(
    g: &Graph,
    vectors: &[Vec<f64>],
    gram: &[Vec<f64>],
    i: usize,
    b: f64,
) -> Option<ProjectedShell> {
    let n = g.n();
    let mut members = Vec::new();
    let mut zs = Vec::new();
    for j in 0..n {
        if j == i || gram[i][j] < b || gram[i][j] >= 1.0 - 1e-12 {
            continue;
        }
        let p = gram[i][j];
        let mut z: Vec<f64> =
            vectors[j].iter().zip(&vectors[i]).map(|(&wj, &wi)| wj - p * wi).collect();
        let nz = dot(&z, &z).sqrt();
        if nz <= 1e-6 {
            continue;
        }
        for v in &mut z {
            *v /= nz;
        }
        members.push(j);
        zs.push(z);
    }
    if members.len() < 2 {
        return None;
    }
    let m = members.len();
    let mut nbrs = vec![Vec::new(); m];
    let mut edges = Vec::new();
    for a in 0..m {
        for bb in a + 1..m {
            if g.has_edge(members[a], members[bb]) {
                nbrs[a].push(bb);
                nbrs[bb].push(a);
                edges.push((a, bb));
            }
        }
    }
    for list in &mut nbrs {
        list.sort_unstable();
    }
    let max_degree = nbrs.iter().map(Vec::len).max().unwrap_or(0);
    Some(ProjectedShell { members, vectors: zs, nbrs, edges, max_degree })
}

/// Derived stream for the shell at center i and level b; the level enters
/// through its first six decimals so nearby levels get distinct streams.
fn shell_seed(seed: u64, i: usize, b: f64) -> u64 {
    let level_key = (b * 1e6) as i64 as u64;
    (seed ^ (i as u64).wrapping_mul(1009).wrapping_add(level_key)) & 0xffff_ffff
}

fn gram_matrix(vectors: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = vectors.len();
    let mut gram = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let p = dot(&vectors[i], &vectors[j]);
            gram[i][j] = p;
            gram[j][i] = p;
        }
    }
    gram
}

/// Shell levels from the Gram matrix: quantiles of the off-diagonal products
/// at levels step, 2*step, ..., restricted to the window consistent with
/// correlation levels alpha in [0, c/(1+c)] widened by 0.05 on both sides. If
/// the window captures nothing the full quantile list is used, so the search
/// stays non-empty on any geometry.
fn quantile_b_grid(gram: &[Vec<f64>], sigma: f64, c: f64, step: f64) -> Vec<f64> {
    let n = gram.len();
    let mut prods = Vec::with_capacity(n * (n - 1) / 2);
    for (i, row) in gram.iter().enumerate() {
        prods.extend_from_slice(&row[i + 1..]);
    }
    prods.sort_by(f64::total_cmp);
    let mut qs = Vec::new();
    let mut p = step;
    while p < 1.0 - 1e-12 {
        qs.push(linear_quantile(&prods, p));
        p += step;
    }
    let amax = c / (1.0 + c);
    let lo = sigma * sigma - 0.05;
    let hi = sigma * sigma + (1.0 - sigma * sigma) * amax + 0.05;
    let mut grid: Vec<f64> = qs.iter().copied().filter(|&q| q >= lo && q <= hi).collect();
    if grid.is_empty() {
        grid = qs;
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup_by(|a, b| (*a * 1e9).round() == (*b * 1e9).round());
    grid
}

/// Linearly interpolated quantile of a sorted sample.
fn linear_quantile(sorted: &[f64], p: f64) -> f64 {
    assert!(!sorted.is_empty());
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (sorted[hi] - sorted[lo]) * (h - lo as f64)
}

// ---------------------------------------------------------------------------
// Shell analysis closed forms
// ---------------------------------------------------------------------------

/// Correlation profile of a shell at level alpha: mu is the expected product
/// inside the shell, pi the pair density, rho the effective projection gain,
/// s the recentered threshold slope, and phi the exponent slack between the
/// full graph and the shell.
#[derive(Debug, Clone, Copy)]
pub struct AnalysisPoint {
    pub sigma: f64,
    pub c: f64,
    pub alpha_corr: f64,
    pub mu: f64,
    pub pi: f64,
    pub rho: f64,
    pub s: f64,
    pub phi: f64,
}

/// Evaluates the shell closed forms at correlation level `alpha_corr`:
/// mu = sigma^2 + (1 - sigma^2) alpha, pi = (1 - alpha)(1 + sigma^2 +
/// alpha (1 - sigma^2)), rho = 1 + sigma - sigma alpha - sqrt((1 - alpha^2) c),
/// s = (sigma + mu^2)/(1 - mu^2), and phi = (1 - sigma)/((1 + sigma)(1 + c))
/// - (1 - s)/(1 + s).
pub fn analysis_functions(sigma: f64, c: f64, alpha_corr: f64) -> Result<AnalysisPoint> {
    if !(sigma > 0.0 && sigma < 1.0) {
        return Err(Error::Input(format!("sigma {sigma} outside (0, 1)")));
    }
    if c < 0.0 {
        return Err(Error::Input(format!("negative shell constant {c}")));
    }
    let amax = c / (1.0 + c);
    if !(-1e-12..=amax + 1e-12).contains(&alpha_corr) {
        return Err(Error::Input(format!(
            "correlation level {alpha_corr} outside [0, {amax}]"
        )));
    }
    let alpha = alpha_corr.clamp(0.0, amax);
    let sq = sigma * sigma;
    let mu = sq + (1.0 - sq) * alpha;
    let pi = (1.0 - alpha) * (1.0 + sq + alpha * (1.0 - sq));
    let rho = 1.0 + sigma - sigma * alpha - ((1.0 - alpha * alpha) * c).sqrt();
    let s = (sigma + mu * mu) / (1.0 - mu * mu);
    let phi = (1.0 - sigma) / ((1.0 + sigma) * (1.0 + c)) - (1.0 - s) / (1.0 + s);
    Ok(AnalysisPoint { sigma, c, alpha_corr: alpha, mu, pi, rho, s, phi })
}

/// Feasibility margin of the shell exponent inequality:
/// min over alpha in [0, c/(1+c)] of rho^2/(pi (1+c)) + phi, minus 1/delta.
/// The minimum is located on a grid of step 1e-4 and refined by golden-
/// section search to 1e-8.
///
/// # Panics
/// If sigma or delta leave (0, 1) or c is negative.
pub fn condition7_margin(sigma: f64, c: f64, delta: f64) -> f64 {
    assert!(sigma > 0.0 && sigma < 1.0, "sigma must lie in (0, 1)");
    assert!(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
    assert!(c >= 0.0, "shell constant must be nonnegative");
    let amax = c / (1.0 + c);
    let objective = |alpha: f64| {
        let p = analysis_functions(sigma, c, alpha.clamp(0.0, amax))
            .expect("clamped level is in domain");
        p.rho * p.rho / (p.pi * (1.0 + c)) + p.phi
    };
    let mut best_alpha = 0.0;
    let mut best = objective(0.0);
    if amax > 0.0 {
        let steps = (amax / 1e-4).ceil() as usize;
        for i in 1..=steps {
            let alpha = amax * i as f64 / steps as f64;
            let value = objective(alpha);
            if value < best {
                best = value;
                best_alpha = alpha;
            }
        }
        let h = amax / steps as f64;
        let refined = golden_section_min(
            &objective,
            (best_alpha - h).max(0.0),
            (best_alpha + h).min(amax),
            1e-8,
        );
        best = best.min(refined);
    }
    best - 1.0 / delta
}

/// Largest shell constant c with nonnegative margin, by bisection to 1e-6.
/// Returns 0 when even c = 0 is infeasible.
pub fn find_best_c(sigma: f64, delta: f64) -> f64 {
    if condition7_margin(sigma, 0.0, delta) < 0.0 {
        return 0.0;
    }
    let mut lo = 0.0;
    let mut hi = 0.05;
    while condition7_margin(sigma, hi, delta) >= 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > 16.0 {
            return lo;
        }
    }
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if condition7_margin(sigma, mid, delta) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Golden-section minimization of a unimodal-near-the-bracket function;
/// returns the best value seen.
fn golden_section_min(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let inv_phi = 0.5 * (5.0_f64.sqrt() - 1.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    f1.min(f2)
}
