//! Dense symmetric eigensolver and partition-quotient spectrum reduction.
//!
//! The eigensolver is cyclic Jacobi: simple, deterministic, and accurate to
//! machine precision for the matrix sizes this crate works with (at most a
//! few hundred rows for quotient checks, 2000 as a hard ceiling). Quotient
//! reduction maps a vertex partition to its class-averaged adjacency matrix,
//! whose eigenvalues embed in the full spectrum when the partition is
//! equitable.

use crate::graph::{Graph, VertexSet};
use crate::{Error, Result};

/// Maximum order accepted by the eigensolver.
pub const MAX_EIGEN_ORDER: usize = 2000;

/// Jacobi sweep budget; non-convergence past this is reported as an error.
const SWEEP_CAP: usize = 100;

/// Dense real symmetric matrix, row-major storage.
#[derive(Clone, Debug)]
pub struct SymmetricMatrix {
    n: usize,
    a: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        SymmetricMatrix { n, a: vec![0.0; n * n] }
    }

    /// Builds from explicit rows, rejecting any asymmetry outright.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Input("matrix rows of unequal length".into()));
        }
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if x != rows[j][i] {
                    return Err(Error::Input(format!(
                        "asymmetric entries at ({i},{j})"
                    )));
                }
                m.a[i * n + j] = x;
            }
        }
        Ok(m)
    }

    /// 0/1 adjacency matrix of a graph.
    pub fn adjacency(g: &Graph) -> Self {
        let n = g.n();
        let mut m = Self::zeros(n);
        for u in 0..n {
            for v in g.neighbors(u).iter_ones() {
                m.a[u * n + v] = 1.0;
            }
        }
        m
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    /// Sets m[i][j] and m[j][i] together, preserving symmetry.
    pub fn set_sym(&mut self, i: usize, j: usize, value: f64) {
        self.a[i * self.n + j] = value;
        self.a[j * self.n + i] = value;
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.a[i * self.n + i]).sum()
    }

    fn frobenius_norm(&self) -> f64 {
        self.a.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    s += self.a[i * self.n + j].powi(2);
                }
            }
        }
        s.sqrt()
    }
}

/// A run of equal eigenvalues after grouping at a fixed resolution.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenvalueGroup {
    pub value: f64,
    pub multiplicity: usize,
}

/// All eigenvalues of a symmetric matrix, ascending, one entry per
/// dimension. Accuracy is `tol` relative to the Frobenius norm.
pub fn eigenvalues_sym(m: &SymmetricMatrix, tol: f64) -> Result<Vec<f64>> {
    Ok(jacobi(m, tol, false)?.0)
}

/// Full eigendecomposition: ascending eigenvalues paired with orthonormal
/// eigenvectors (one row per eigenvalue).
pub fn eigen_sym(m: &SymmetricMatrix, tol: f64) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let (vals, vecs) = jacobi(m, tol, true)?;
    Ok((vals, vecs.expect("accumulation requested")))
}

/// Ascending eigenvalues plus, when accumulation was requested, the
/// eigenvector columns.
type EigenParts = (Vec<f64>, Option<Vec<Vec<f64>>>);

fn jacobi(m: &SymmetricMatrix, tol: f64, accumulate: bool) -> Result<EigenParts> {
    let n = m.order();
    if n > MAX_EIGEN_ORDER {
        return Err(Error::Input(format!(
            "matrix order {n} exceeds eigensolver ceiling {MAX_EIGEN_ORDER}"
        )));
    }
    let identity = || {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect::<Vec<Vec<f64>>>()
    };
    if n == 0 {
        return Ok((Vec::new(), accumulate.then(Vec::new)));
    }
    let norm = m.frobenius_norm();
    if norm == 0.0 {
        return Ok((vec![0.0; n], accumulate.then(identity)));
    }
    let mut a = m.clone();
    // Columns of v converge to the eigenvectors when accumulation is on.
    let mut v = if accumulate { identity() } else { Vec::new() };
    // Rotations stop once the off-diagonal mass is negligible relative to
    // the matrix norm; tol is floored near machine epsilon since Jacobi
    // cannot do better than that anyway.
    let target = norm * tol.max(1e-15);
    let mut converged = false;
    for _ in 0..SWEEP_CAP {
        if a.off_diagonal_norm() <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                jacobi_rotate(&mut a, p, q, &mut v);
            }
        }
    }
    if !converged {
        return Err(Error::Solver(format!(
            "jacobi failed to converge in {SWEEP_CAP} sweeps (order {n})"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| {
        a.a[x * n + x].partial_cmp(&a.a[y * n + y]).expect("finite eigenvalues")
    });
    let vals: Vec<f64> = order.iter().map(|&i| a.a[i * n + i]).collect();
    let vecs = accumulate.then(|| {
        order
            .iter()
            .map(|&col| (0..n).map(|row| v[row][col]).collect())
            .collect()
    });
    Ok((vals, vecs))
}

/// One Jacobi rotation zeroing a[p][q], applied symmetrically; the same
/// rotation is pushed into the accumulated basis when present.
fn jacobi_rotate(m: &mut SymmetricMatrix, p: usize, q: usize, basis: &mut [Vec<f64>]) {
    let n = m.n;
    let apq = m.a[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = m.a[p * n + p];
    let aqq = m.a[q * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    // Smaller-root tangent keeps the rotation angle below pi/4, the
    // numerically stable choice.
    let t = if theta >= 0.0 {
        1.0 / (theta + (1.0 + theta * theta).sqrt())
    } else {
        -1.0 / (-theta + (1.0 + theta * theta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    for i in 0..n {
        if i == p || i == q {
            continue;
        }
        let aip = m.a[i * n + p];
        let aiq = m.a[i * n + q];
        let nip = c * aip - s * aiq;
        let niq = s * aip + c * aiq;
        m.a[i * n + p] = nip;
        m.a[p * n + i] = nip;
        m.a[i * n + q] = niq;
        m.a[q * n + i] = niq;
    }
    m.a[p * n + p] = app - t * apq;
    m.a[q * n + q] = aqq + t * apq;
    m.a[p * n + q] = 0.0;
    m.a[q * n + p] = 0.0;
    for row in basis.iter_mut() {
        let vp = row[p];
        let vq = row[q];
        row[p] = c * vp - s * vq;
        row[q] = s * vp + c * vq;
    }
}

/// Groups an ascending eigenvalue list into (value, multiplicity) runs.
/// Adjacent values closer than `resolution` land in the same group; the
/// reported value is the group mean.
pub fn group_eigenvalues(values: &[f64], resolution: f64) -> Vec<EigenvalueGroup> {
    let mut groups = Vec::new();
    let mut start = 0;
    while start < values.len() {
        let mut end = start + 1;
        while end < values.len() && values[end] - values[end - 1] <= resolution {
            end += 1;
        }
        let sum: f64 = values[start..end].iter().sum();
        groups.push(EigenvalueGroup {
            value: sum / (end - start) as f64,
            multiplicity: end - start,
        });
        start = end;
    }
    groups
}

/// Result of comparing a partition-quotient spectrum against the full one.
#[derive(Clone, Debug)]
pub struct QuotientSpectrum {
    /// Quotient eigenvalues, ascending, one per class.
    pub eigenvalues: Vec<f64>,
    /// Whether every quotient eigenvalue appears in the full spectrum.
    pub contained: bool,
    /// Absolute tolerance used for the containment matching.
    pub containment_eps: f64,
}

/// Class-averaged adjacency matrix of a partition: entry (a,b) counts the
/// edges from class a to class b divided by |a|, with internal edges on the
/// diagonal counted twice. Classes must tile the vertex set exactly.
pub fn partition_quotient(g: &Graph, partition: &[VertexSet]) -> Result<Vec<Vec<f64>>> {
    validate_partition(g, partition)?;
    let r = partition.len();
    let sizes: Vec<usize> = partition.iter().map(|c| c.len()).collect();
    let mut q = vec![vec![0.0; r]; r];
    for (a, class) in partition.iter().enumerate() {
        for v in class.iter() {
            for (b, other) in partition.iter().enumerate() {
                let mut common = g.neighbors(v).clone();
                common.and_assign(other.bits());
                q[a][b] += common.count_ones() as f64;
            }
        }
        for entry in q[a].iter_mut() {
            *entry /= sizes[a] as f64;
        }
    }
    Ok(q)
}

/// Eigenvalues of a quotient matrix given its class sizes. The quotient is
/// similar to the symmetric matrix S = D^{1/2} Q D^{-1/2} with D the class
/// size diagonal, so its spectrum is real and Jacobi applies.
pub fn quotient_eigenvalues(q: &[Vec<f64>], class_sizes: &[usize], tol: f64) -> Result<Vec<f64>> {
    let r = q.len();
    if class_sizes.len() != r || q.iter().any(|row| row.len() != r) {
        return Err(Error::Input("quotient shape mismatch".into()));
    }
    if class_sizes.contains(&0) {
        return Err(Error::Input("empty partition class".into()));
    }
    let mut s = SymmetricMatrix::zeros(r);
    for a in 0..r {
        for b in a..r {
            let scale = (class_sizes[a] as f64 / class_sizes[b] as f64).sqrt();
            let sab = q[a][b] * scale;
            let sba = q[b][a] / scale;
            // Exact edge-count symmetry gives sab == sba up to rounding;
            // averaging protects against that last-bit noise.
            s.set_sym(a, b, 0.5 * (sab + sba));
        }
    }
    eigenvalues_sym(&s, tol)
}

/// Builds the partition quotient, extracts its spectrum, and checks that
/// each quotient eigenvalue occurs in the full adjacency spectrum.
pub fn quotient_spectrum_check(
    g: &Graph,
    partition: &[VertexSet],
    tol: f64,
) -> Result<QuotientSpectrum> {
    let q = partition_quotient(g, partition)?;
    let sizes: Vec<usize> = partition.iter().map(|c| c.len()).collect();
    let qvals = quotient_eigenvalues(&q, &sizes, tol)?;
    let adjacency = SymmetricMatrix::adjacency(g);
    let full = eigenvalues_sym(&adjacency, tol)?;
    let eps = 10.0 * tol * adjacency.frobenius_norm().max(1.0);
    let contained = qvals
        .iter()
        .all(|qv| full.iter().any(|fv| (qv - fv).abs() <= eps));
    Ok(QuotientSpectrum { eigenvalues: qvals, contained, containment_eps: eps })
}

fn validate_partition(g: &Graph, partition: &[VertexSet]) -> Result<()> {
    let n = g.n();
    let mut seen = vec![false; n];
    for class in partition {
        if class.range_width() != n {
            return Err(Error::Input("partition class width differs from graph order".into()));
        }
        for v in class.iter() {
            if seen[v] {
                return Err(Error::Input(format!("vertex {v} in two partition classes")));
            }
            seen[v] = true;
        }
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(Error::Input(format!("vertex {v} not covered by the partition")));
    }
    Ok(())
}
