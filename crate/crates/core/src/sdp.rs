//! Vector coloring by low-rank semidefinite optimization.
//!
//! A vector kappa-coloring assigns a unit vector to each vertex so that
//! every edge's inner product is at most -1/(kappa-1); the strict variant
//! demands equality. The solver works on a rank-d factorization of the Gram
//! matrix (d = min(n, 30)):
//!
//! * Small graphs (n <= 60): bisection on kappa, where each feasibility
//!   probe runs projected gradient descent to a loose residual and then a
//!   damped Gauss-Newton pass over the full residual system to certify
//!   feasibility tightly. Gauss-Newton is what makes the tail fast: plain
//!   descent crawls sublinearly through the quartic valley near a solution.
//! * Large graphs: the edge count far exceeds the factorization's degrees
//!   of freedom, and bisection probes routinely stall in spurious local
//!   minima. Instead, a smoothed-max (log-sum-exp) descent with an annealed
//!   sharpness schedule tracks the minimax geometry directly; the achieved
//!   maximum edge product m* < 0 locates kappa = 1 + 1/(-m*), which a
//!   Gauss-Newton pass then certifies, stepping up a small slack ladder if
//!   the exact locate is infeasible.
//!
//! Also here: Gram-average symmetrization over a supplied automorphism set,
//! and the tensor-product combiner that turns a constraint-respecting
//! per-label vector assignment plus a strict coloring of the label graph
//! into a coloring of the labeled instance.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::spectral::{self, SymmetricMatrix};
use crate::{Error, Result};

/// Embedding dimension cap for the low-rank factorization.
pub const RANK_CAP: usize = 30;

/// Vertex count at or below which the bisection path is used.
const SMALL_GRAPH_LIMIT: usize = 60;

/// Edge-product feasibility tolerance certified by Gauss-Newton.
const FEAS_TOL: f64 = 1e-5;

/// Slacks tried above the located kappa on the large-graph path.
const CERTIFY_SLACKS: [f64; 5] = [0.0, 0.005, 0.02, 0.05, 0.15];

/// A unit-vector assignment witnessing vector chromatic number kappa.
#[derive(Clone, Debug)]
pub struct VectorColoring {
    pub d: usize,
    /// One unit vector per vertex, each of length d.
    pub vectors: Vec<Vec<f64>>,
    pub kappa: f64,
    pub strict: bool,
}

impl VectorColoring {
    /// The common edge target is -sigma with sigma = 1/(kappa - 1).
    pub fn sigma(&self) -> f64 {
        1.0 / (self.kappa - 1.0)
    }
}

/// Feasibility residuals of a coloring against a graph.
#[derive(Clone, Copy, Debug)]
pub struct ResidualReport {
    /// max_i | ||w_i|| - 1 |
    pub max_norm_deviation: f64,
    /// Strict: max_edge |<w_i,w_j> + sigma|. Non-strict: max_edge
    /// (<w_i,w_j> + sigma), negative when all edges have slack.
    pub worst_edge_violation: f64,
}

impl ResidualReport {
    pub fn is_valid(&self, tol: f64) -> bool {
        self.max_norm_deviation <= tol && self.worst_edge_violation <= tol
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn row(w: &[f64], i: usize, d: usize) -> &[f64] {
    &w[i * d..(i + 1) * d]
}

fn normalize_rows(w: &mut [f64], d: usize) {
    for chunk in w.chunks_mut(d) {
        let norm = dot(chunk, chunk).sqrt();
        if norm > 0.0 {
            for x in chunk {
                *x /= norm;
            }
        }
    }
}

/// Standard normal samples by the polar method; deterministic per rng state.
pub(crate) fn fill_standard_normal<R: Rng>(rng: &mut R, out: &mut [f64]) {
    let mut i = 0;
    while i < out.len() {
        let (a, b) = loop {
            let u = 2.0 * rng.random::<f64>() - 1.0;
            let v = 2.0 * rng.random::<f64>() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let f = (-2.0 * s.ln() / s).sqrt();
                break (u * f, v * f);
            }
        };
        out[i] = a;
        i += 1;
        if i < out.len() {
            out[i] = b;
            i += 1;
        }
    }
}

fn random_unit_rows<R: Rng>(rng: &mut R, n: usize, d: usize) -> Vec<f64> {
    let mut w = vec![0.0; n * d];
    fill_standard_normal(rng, &mut w);
    normalize_rows(&mut w, d);
    w
}

fn edge_products(w: &[f64], d: usize, edges: &[(usize, usize)], out: &mut [f64]) {
    for (e, &(i, j)) in edges.iter().enumerate() {
        out[e] = dot(row(w, i, d), row(w, j, d));
    }
}

/// Residuals of the strict system: edge products shifted by sigma, and row
/// norm defects.
fn residuals(
    w: &[f64],
    d: usize,
    edges: &[(usize, usize)],
    sigma: f64,
    re: &mut [f64],
    rn: &mut [f64],
) {
    edge_products(w, d, edges, re);
    for r in re.iter_mut() {
        *r += sigma;
    }
    for (i, chunk) in w.chunks(d).enumerate() {
        rn[i] = dot(chunk, chunk) - 1.0;
    }
}

fn max_abs(xs: &[f64]) -> f64 {
    xs.iter().fold(0.0f64, |m, &x| m.max(x.abs()))
}

/// J x for the strict residual system at the current point.
fn apply_jacobian(
    w: &[f64],
    d: usize,
    edges: &[(usize, usize)],
    x: &[f64],
    je: &mut [f64],
    jn: &mut [f64],
) {
    for (e, &(i, j)) in edges.iter().enumerate() {
        je[e] = dot(row(x, i, d), row(w, j, d)) + dot(row(x, j, d), row(w, i, d));
    }
    for (i, chunk) in x.chunks(d).enumerate() {
        jn[i] = 2.0 * dot(chunk, row(w, i, d));
    }
}

/// J^T y accumulated into a fresh gradient-shaped buffer.
fn apply_jacobian_t(
    w: &[f64],
    d: usize,
    edges: &[(usize, usize)],
    ye: &[f64],
    yn: &[f64],
    out: &mut [f64],
) {
    for (i, x) in out.iter_mut().enumerate() {
        *x = 2.0 * yn[i / d] * w[i];
    }
    for (e, &(i, j)) in edges.iter().enumerate() {
        let c = ye[e];
        for t in 0..d {
            out[i * d + t] += c * w[j * d + t];
            out[j * d + t] += c * w[i * d + t];
        }
    }
}

/// Conjugate gradient on (J^T J + lam I) x = b, matrix-free.
fn conjugate_gradient(
    w: &[f64],
    d: usize,
    edges: &[(usize, usize)],
    lam: f64,
    b: &[f64],
) -> Vec<f64> {
    let mut x = vec![0.0; b.len()];
    let mut r = b.to_vec();
    let mut p = r.clone();
    let mut je = vec![0.0; edges.len()];
    let mut jn = vec![0.0; b.len() / d];
    let mut ap = vec![0.0; b.len()];
    let mut rs = dot(&r, &r);
    let rs0 = rs;
    for _ in 0..200 {
        apply_jacobian(w, d, edges, &p, &mut je, &mut jn);
        apply_jacobian_t(w, d, edges, &je, &jn, &mut ap);
        for (a, &pi) in ap.iter_mut().zip(p.iter()) {
            *a += lam * pi;
        }
        let denom = dot(&p, &ap);
        if denom <= 0.0 {
            break;
        }
        let alpha = rs / denom;
        for ((xi, &pi), (ri, &ai)) in
            x.iter_mut().zip(p.iter()).zip(r.iter_mut().zip(ap.iter()))
        {
            *xi += alpha * pi;
            *ri -= alpha * ai;
        }
        let rs_new = dot(&r, &r);
        if rs_new < 0.05 * 0.05 * rs0 {
            break;
        }
        let beta = rs_new / rs;
        for (pi, &ri) in p.iter_mut().zip(r.iter()) {
            *pi = ri + beta * *pi;
        }
        rs = rs_new;
    }
    x
}

/// Levenberg-Marquardt damped Gauss-Newton on the full residual system,
/// unconstrained in W; rows are hard-normalized before the final check so
/// the returned point is exactly on the sphere.
fn gauss_newton(
    mut w: Vec<f64>,
    d: usize,
    edges: &[(usize, usize)],
    sigma: f64,
    feas_tol: f64,
) -> (Vec<f64>, bool) {
    let n = w.len() / d;
    let mut lam = 1e-4;
    let mut re = vec![0.0; edges.len()];
    let mut rn = vec![0.0; n];
    residuals(&w, d, edges, sigma, &mut re, &mut rn);
    let mut f = dot(&re, &re) + dot(&rn, &rn);
    let mut b = vec![0.0; w.len()];
    for _ in 0..80 {
        if max_abs(&re).max(max_abs(&rn)) <= feas_tol {
            let mut wn = w.clone();
            normalize_rows(&mut wn, d);
            let mut re2 = vec![0.0; edges.len()];
            let mut rn2 = vec![0.0; n];
            residuals(&wn, d, edges, sigma, &mut re2, &mut rn2);
            if max_abs(&re2) <= feas_tol {
                return (wn, true);
            }
        }
        apply_jacobian_t(&w, d, edges, &re, &rn, &mut b);
        for bi in b.iter_mut() {
            *bi = -*bi;
        }
        let mut stepped = false;
        for _ in 0..12 {
            let delta = conjugate_gradient(&w, d, edges, lam, &b);
            let wt: Vec<f64> = w.iter().zip(&delta).map(|(x, dx)| x + dx).collect();
            let mut re_t = vec![0.0; edges.len()];
            let mut rn_t = vec![0.0; n];
            residuals(&wt, d, edges, sigma, &mut re_t, &mut rn_t);
            let ft = dot(&re_t, &re_t) + dot(&rn_t, &rn_t);
            if ft < f {
                w = wt;
                re = re_t;
                rn = rn_t;
                f = ft;
                lam = (lam / 3.0).max(1e-12);
                stepped = true;
                break;
            }
            lam *= 10.0;
            if lam > 1e8 {
                break;
            }
        }
        if !stepped {
            break;
        }
    }
    normalize_rows(&mut w, d);
    let mut re2 = vec![0.0; edges.len()];
    let mut rn2 = vec![0.0; n];
    residuals(&w, d, edges, sigma, &mut re2, &mut rn2);
    let ok = max_abs(&re2) <= feas_tol;
    (w, ok)
}

/// Projected gradient descent on the sum of squared edge residuals over
/// the product of unit spheres. Used as the cheap first phase; stops at a
/// loose residual or on stall.
fn projected_descent(
    mut w: Vec<f64>,
    d: usize,
    edges: &[(usize, usize)],
    sigma: f64,
    max_iter: usize,
    stop_tol: f64,
) -> Vec<f64> {
    let n = w.len() / d;
    let mut eta = 0.2;
    let mut r = vec![0.0; edges.len()];
    let mut g = vec![0.0; w.len()];
    let mut hist: Vec<f64> = Vec::new();
    for _ in 0..max_iter {
        edge_products(&w, d, edges, &mut r);
        for x in r.iter_mut() {
            *x += sigma;
        }
        let f = dot(&r, &r);
        if max_abs(&r) <= stop_tol {
            return w;
        }
        g.iter_mut().for_each(|x| *x = 0.0);
        for (e, &(i, j)) in edges.iter().enumerate() {
            let c = 2.0 * r[e];
            for t in 0..d {
                g[i * d + t] += c * w[j * d + t];
                g[j * d + t] += c * w[i * d + t];
            }
        }
        // Project the gradient onto the tangent space of each sphere.
        for i in 0..n {
            let gi = dot(row(&g, i, d), row(&w, i, d));
            for t in 0..d {
                g[i * d + t] -= gi * w[i * d + t];
            }
        }
        let mut accepted = None;
        for _ in 0..60 {
            let mut wn: Vec<f64> = w.iter().zip(&g).map(|(x, gx)| x - eta * gx).collect();
            normalize_rows(&mut wn, d);
            let mut rn = vec![0.0; edges.len()];
            edge_products(&wn, d, edges, &mut rn);
            for x in rn.iter_mut() {
                *x += sigma;
            }
            let fn_ = dot(&rn, &rn);
            if fn_ < f {
                accepted = Some((wn, fn_));
                eta = (eta * 1.3).min(2.0);
                break;
            }
            eta *= 0.5;
        }
        match accepted {
            Some((wn, fn_)) => {
                w = wn;
                hist.push(fn_);
                // Stall: negligible relative progress over a 200-step window.
                if hist.len() > 200 {
                    let old = hist[hist.len() - 201];
                    if old - fn_ < 1e-6 * old {
                        break;
                    }
                }
            }
            None => break,
        }
    }
    w
}

/// Minimizes the log-sum-exp softening of the maximum edge inner product
/// over unit vectors, annealing the sharpness. Returns the point and its
/// exact maximum edge product.
fn smoothed_max_descent<R: Rng>(
    edges: &[(usize, usize)],
    n: usize,
    d: usize,
    rng: &mut R,
) -> (Vec<f64>, f64) {
    let mut w = random_unit_rows(rng, n, d);
    let mut p = vec![0.0; edges.len()];
    let mut g = vec![0.0; n * d];
    let lse = |p: &[f64], beta: f64| -> f64 {
        let m = p.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
        let s: f64 = p.iter().map(|&x| (beta * (x - m)).exp()).sum();
        m + s.ln() / beta
    };
    for &beta in &[20.0, 60.0, 180.0, 500.0] {
        let mut eta = 0.5;
        let mut hist: Vec<f64> = Vec::new();
        for _ in 0..1500 {
            edge_products(&w, d, edges, &mut p);
            let m = p.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
            let weights: Vec<f64> = p.iter().map(|&x| (beta * (x - m)).exp()).collect();
            let wsum: f64 = weights.iter().sum();
            let f = m + wsum.ln() / beta;
            g.iter_mut().for_each(|x| *x = 0.0);
            for (e, &(i, j)) in edges.iter().enumerate() {
                let c = weights[e] / wsum;
                for t in 0..d {
                    g[i * d + t] += c * w[j * d + t];
                    g[j * d + t] += c * w[i * d + t];
                }
            }
            for i in 0..n {
                let gi = dot(row(&g, i, d), row(&w, i, d));
                for t in 0..d {
                    g[i * d + t] -= gi * w[i * d + t];
                }
            }
            let mut accepted = None;
            for _ in 0..40 {
                let mut wn: Vec<f64> =
                    w.iter().zip(&g).map(|(x, gx)| x - eta * gx).collect();
                normalize_rows(&mut wn, d);
                let mut pn = vec![0.0; edges.len()];
                edge_products(&wn, d, edges, &mut pn);
                let fn_ = lse(&pn, beta);
                if fn_ < f {
                    accepted = Some((wn, fn_));
                    eta = (eta * 1.3).min(2.0);
                    break;
                }
                eta *= 0.5;
            }
            match accepted {
                Some((wn, fn_)) => {
                    w = wn;
                    hist.push(fn_);
                    if hist.len() > 100 {
                        let old = hist[hist.len() - 101];
                        if old - fn_ < 1e-7 * old.abs() {
                            break;
                        }
                    }
                }
                None => break,
            }
        }
    }
    edge_products(&w, d, edges, &mut p);
    let m = p.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    (w, m)
}

fn vectors_from_flat(w: &[f64], d: usize) -> Vec<Vec<f64>> {
    w.chunks(d).map(|c| c.to_vec()).collect()
}

/// One strict feasibility attempt from a batch of starts: descent phase to
/// a loose residual, then Gauss-Newton to the certified tolerance.
fn strict_attempt<R: Rng>(
    edges: &[(usize, usize)],
    n: usize,
    d: usize,
    kappa: f64,
    warm: Option<&[f64]>,
    fresh_tries: usize,
    rng: &mut R,
) -> Option<Vec<f64>> {
    let sigma = 1.0 / (kappa - 1.0);
    let mut starts: Vec<Vec<f64>> = Vec::new();
    if let Some(w) = warm {
        starts.push(w.to_vec());
    }
    for _ in 0..fresh_tries {
        starts.push(random_unit_rows(rng, n, d));
    }
    for w0 in starts {
        let w1 = projected_descent(w0, d, edges, sigma, 2000, 1e-2);
        let (w2, ok) = gauss_newton(w1, d, edges, sigma, FEAS_TOL);
        if ok {
            return Some(w2);
        }
    }
    None
}

/// Bisection on kappa for small graphs; each probe must certify strict
/// feasibility. The warm start from the last feasible point keeps probes
/// cheap once the bracket tightens.
fn strict_solve_small(
    g: &Graph,
    edges: &[(usize, usize)],
    d: usize,
    tol: f64,
    seed: u64,
) -> Result<(f64, Vec<f64>)> {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if let Some(w) = strict_attempt(edges, n, d, 2.0, None, 2, &mut rng) {
        return Ok((2.0, w));
    }
    let mut lo = 2.0f64;
    let mut hi = (g.max_degree() as f64 + 1.0).min(n as f64);
    let mut w_hi = strict_attempt(edges, n, d, hi, None, 5, &mut rng);
    while w_hi.is_none() && hi < n as f64 {
        hi = (hi * 2.0).min(n as f64);
        w_hi = strict_attempt(edges, n, d, hi, None, 5, &mut rng);
    }
    let mut w_hi = w_hi.ok_or_else(|| {
        Error::Solver(format!("no strict point certified even at kappa = {hi:.3}"))
    })?;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        match strict_attempt(edges, n, d, mid, Some(&w_hi), 1, &mut rng) {
            Some(w) => {
                hi = mid;
                w_hi = w;
            }
            None => lo = mid,
        }
    }
    Ok((hi, w_hi))
}

/// Locate-then-certify for large graphs: smoothed-max descent finds the
/// minimax point, and Gauss-Newton certifies strictness at the located
/// kappa, climbing a small slack ladder if needed.
fn strict_solve_large(
    g: &Graph,
    edges: &[(usize, usize)],
    d: usize,
    seed: u64,
) -> Result<(f64, Vec<f64>)> {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (w, mstar) = smoothed_max_descent(edges, n, d, &mut rng);
    let kappa_located = if mstar < 0.0 {
        1.0 + 1.0 / (-mstar)
    } else {
        (g.max_degree() as f64 + 1.0).min(n as f64)
    };
    for slack in CERTIFY_SLACKS {
        let kappa = kappa_located + slack;
        let sigma = 1.0 / (kappa - 1.0);
        let w1 = projected_descent(w.clone(), d, edges, sigma, 1500, 1e-2);
        let (w2, ok) = gauss_newton(w1, d, edges, sigma, FEAS_TOL);
        if ok {
            return Ok((kappa, w2));
        }
    }
    Err(Error::Solver(format!(
        "could not certify strict feasibility near located kappa = {kappa_located:.4}"
    )))
}

/// Solves the vector coloring problem. Non-strict minimizes the maximum
/// edge product directly; strict certifies the equality system. Edgeless
/// graphs have kappa 1 by convention.
pub fn solve_vector_coloring(
    g: &Graph,
    strict: bool,
    tol: f64,
    seed: u64,
) -> Result<VectorColoring> {
    let n = g.n();
    if n == 0 {
        return Err(Error::Input("empty graph".into()));
    }
    let edges = g.edges();
    if edges.is_empty() {
        return Ok(VectorColoring {
            d: 1,
            vectors: vec![vec![1.0]; n],
            kappa: 1.0,
            strict,
        });
    }
    let d = n.min(RANK_CAP);
    if strict {
        let (kappa, w) = if n <= SMALL_GRAPH_LIMIT {
            strict_solve_small(g, &edges, d, tol, seed)?
        } else {
            strict_solve_large(g, &edges, d, seed)?
        };
        Ok(VectorColoring { d, vectors: vectors_from_flat(&w, d), kappa, strict: true })
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (w, mstar) = smoothed_max_descent(&edges, n, d, &mut rng);
        if mstar >= 0.0 {
            return Err(Error::Solver(
                "maximum edge product did not go negative: kappa not bounded below 2".into(),
            ));
        }
        let kappa = 1.0 + 1.0 / (-mstar);
        Ok(VectorColoring { d, vectors: vectors_from_flat(&w, d), kappa, strict: false })
    }
}

/// Residuals of a coloring against a graph, per the coloring's own flag.
pub fn check_vector_coloring(g: &Graph, vc: &VectorColoring) -> Result<ResidualReport> {
    if vc.vectors.len() != g.n() {
        return Err(Error::Input(format!(
            "coloring has {} vectors for a graph on {} vertices",
            vc.vectors.len(),
            g.n()
        )));
    }
    if vc.vectors.iter().any(|v| v.len() != vc.d) {
        return Err(Error::Input("vector dimension mismatch".into()));
    }
    let max_norm_deviation = vc
        .vectors
        .iter()
        .fold(0.0f64, |m, v| m.max((dot(v, v).sqrt() - 1.0).abs()));
    let edges = g.edges();
    let worst_edge_violation = if edges.is_empty() {
        0.0
    } else {
        let sigma = vc.sigma();
        edges.iter().fold(f64::NEG_INFINITY, |m, &(i, j)| {
            let r = dot(&vc.vectors[i], &vc.vectors[j]) + sigma;
            m.max(if vc.strict { r.abs() } else { r })
        })
    };
    Ok(ResidualReport { max_norm_deviation, worst_edge_violation })
}

fn is_automorphism(g: &Graph, perm: &[usize]) -> bool {
    let n = g.n();
    if perm.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    g.edges().iter().all(|&(u, v)| g.has_edge(perm[u], perm[v]))
}

/// Averages the Gram matrix over the supplied automorphisms and refactors
/// it. The average of feasible Grams stays feasible at the same kappa; when
/// the set acts transitively on edges, all edge inner products coincide.
pub fn symmetrize_gram(
    vc: &VectorColoring,
    automorphisms: &[Vec<usize>],
    g: &Graph,
) -> Result<VectorColoring> {
    let n = g.n();
    if vc.vectors.len() != n {
        return Err(Error::Input("coloring/graph size mismatch".into()));
    }
    if automorphisms.is_empty() {
        return Err(Error::Input("need at least one automorphism".into()));
    }
    for perm in automorphisms {
        if !is_automorphism(g, perm) {
            return Err(Error::Input("supplied permutation is not an automorphism".into()));
        }
    }
    let mut gram = SymmetricMatrix::zeros(n);
    let scale = 1.0 / automorphisms.len() as f64;
    for i in 0..n {
        for j in i..n {
            let mut acc = 0.0;
            for perm in automorphisms {
                acc += dot(&vc.vectors[perm[i]], &vc.vectors[perm[j]]);
            }
            gram.set_sym(i, j, acc * scale);
        }
    }
    let (vals, vecs) = spectral::eigen_sym(&gram, 1e-12)?;
    // Keep the numerically nonzero spectrum; the Gram is an average of
    // PSD matrices, so negative values are rounding noise.
    let kept: Vec<usize> = (0..n).filter(|&t| vals[t] > 1e-12).collect();
    let d = kept.len().max(1);
    let mut vectors = vec![vec![0.0; d]; n];
    for (col, &t) in kept.iter().enumerate() {
        let s = vals[t].sqrt();
        for i in 0..n {
            vectors[i][col] = s * vecs[t][i];
        }
    }
    for v in vectors.iter_mut() {
        let norm = dot(v, v).sqrt();
        if norm > 0.0 {
            for x in v.iter_mut() {
                *x /= norm;
            }
        } else {
            v[0] = 1.0;
        }
    }
    Ok(VectorColoring { d, vectors, kappa: vc.kappa, strict: vc.strict })
}

/// A per-(vertex, label) vector assignment in a common ambient space. For
/// each vertex the label vectors must be pairwise orthogonal with total
/// squared mass 1.
#[derive(Clone, Debug)]
pub struct SdpAssignment {
    pub ambient_dim: usize,
    /// vectors[x][i] is the vector attached to vertex x and label i.
    pub vectors: Vec<Vec<Vec<f64>>>,
}

impl SdpAssignment {
    /// Worst deviation from the mass and cross-orthogonality constraints.
    pub fn max_constraint_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for per_vertex in &self.vectors {
            let mass: f64 = per_vertex.iter().map(|v| dot(v, v)).sum();
            worst = worst.max((mass - 1.0).abs());
            for (a, va) in per_vertex.iter().enumerate() {
                for vb in per_vertex.iter().skip(a + 1) {
                    worst = worst.max(dot(va, vb).abs());
                }
            }
        }
        worst
    }
}

/// Combines a constraint-respecting assignment with a strict coloring of
/// the label graph into tensor-product vectors, one per vertex. Each output
/// w_x = sum_i v_{x,i} (x) u_i is a unit vector, and edges whose endpoint
/// masses sit on adjacent labels inherit the strict edge product.
pub fn claim51_combine(
    assignment: &SdpAssignment,
    u: &VectorColoring,
    tol: f64,
) -> Result<Vec<Vec<f64>>> {
    if !u.strict {
        return Err(Error::Input("combiner needs a strict coloring of the label graph".into()));
    }
    let m = u.vectors.len();
    if assignment.vectors.iter().any(|per| per.len() != m) {
        return Err(Error::Input(format!("assignment must carry one vector per label ({m})")));
    }
    if assignment
        .vectors
        .iter()
        .flatten()
        .any(|v| v.len() != assignment.ambient_dim)
    {
        return Err(Error::Input("assignment vector dimension mismatch".into()));
    }
    let residual = assignment.max_constraint_residual();
    if residual > tol {
        return Err(Error::Input(format!(
            "assignment constraint residual {residual:.3e} above tolerance {tol:.3e}"
        )));
    }
    let big_d = assignment.ambient_dim;
    let du = u.d;
    let mut out = Vec::with_capacity(assignment.vectors.len());
    for per_vertex in &assignment.vectors {
        let mut w = vec![0.0; big_d * du];
        for (i, v) in per_vertex.iter().enumerate() {
            for (a, &va) in v.iter().enumerate() {
                if va == 0.0 {
                    continue;
                }
                for (b, &ub) in u.vectors[i].iter().enumerate() {
                    w[a * du + b] += va * ub;
                }
            }
        }
        out.push(w);
    }
    Ok(out)
}
