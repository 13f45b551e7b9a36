//! Finite-difference cross-check for the tilted-box spectrum.
//!
//! Discretizes `-psi'' - alpha xi psi = beta psi` with Dirichlet walls on a
//! uniform grid of `panels` intervals (`h = 2/panels`), using the standard
//! second-order central stencil. The interior samples satisfy a symmetric
//! tridiagonal eigenproblem with diagonal `2/h^2 - alpha xi_i` and constant
//! off-diagonal `-1/h^2`. Eigenvalues come from Sturm-count bisection — the
//! number of negative pivots in the `LDL^T` factorization of `T - lambda I`
//! counts the eigenvalues below `lambda` — and eigenvectors from shifted
//! inverse iteration with a Thomas solve.
//!
//! Nothing here touches the Airy machinery in [`crate::analytic`], so the
//! two solvers validate each other; agreement is limited only by the
//! `O(h^2)` truncation of the stencil, which shrinks fourfold when the grid
//! is doubled.

use crate::analytic::{FieldProblem, ForceBalance};
use crate::error::{Error, Result};

/// Pivot floor: a pivot this close to zero is replaced (negative by
/// convention) so the Sturm count and the Thomas solve never divide by zero.
const PIVOT_FLOOR: f64 = 1e-300;

/// Inverse-iteration shifts off the bisection eigenvalue, tried in order.
/// The first sits just outside bisection accuracy; the fallback is for the
/// rare solve where `T - sigma I` is too singular for the Thomas sweep.
const SHIFTS: [f64; 2] = [1e-10, 3e-9];

/// Sweep budget per shift for inverse iteration.
const MAX_SWEEPS: usize = 50;

/// One discrete bound state.
#[derive(Clone, Debug)]
pub struct FdState {
    /// 1-based index in order of increasing eigenvalue.
    pub k: usize,
    /// Discrete eigenvalue.
    pub beta: f64,
    /// Interior samples `psi(xi_i)`, `xi_i = -1 + i h` for `i = 1..panels`,
    /// normalized to `(h/2) sum psi_i^2 = 1` and positive next to the left
    /// wall.
    pub psi: Vec<f64>,
    /// Number of grid panels.
    pub panels: usize,
}

impl FdState {
    /// Grid spacing `h = 2/panels`.
    #[must_use]
    pub fn spacing(&self) -> f64 {
        2.0 / self.panels as f64
    }
}

/// Diagonal of the discrete operator; the off-diagonal is `-1/h^2`
/// everywhere.
fn build_diagonal(alpha: f64, panels: usize) -> (Vec<f64>, f64) {
    let h = 2.0 / panels as f64;
    let h2 = h * h;
    let diag = (1..panels)
        .map(|i| {
            let xi = -1.0 + i as f64 * h;
            2.0 / h2 - alpha * xi
        })
        .collect();
    (diag, -1.0 / h2)
}

/// Number of eigenvalues of the tridiagonal operator strictly below
/// `lambda`, by counting negative `LDL^T` pivots.
fn count_below(diag: &[f64], off: f64, lambda: f64) -> usize {
    let off_sq = off * off;
    let mut negatives = 0;
    let mut previous = f64::INFINITY;
    for &d in diag {
        let mut pivot = d - lambda - off_sq / previous;
        if pivot.abs() < PIVOT_FLOOR {
            pivot = -PIVOT_FLOOR;
        }
        if pivot < 0.0 {
            negatives += 1;
        }
        previous = pivot;
    }
    negatives
}

/// The `k`-th (1-based) eigenvalue by bisection on the Sturm count.
fn bisect_eigenvalue(diag: &[f64], off: f64, k: usize) -> f64 {
    // Gershgorin bounds enclose the whole spectrum.
    let radius = 2.0 * off.abs();
    let mut lo = diag.iter().fold(f64::INFINITY, |a, &d| a.min(d)) - radius;
    let mut hi = diag.iter().fold(f64::NEG_INFINITY, |a, &d| a.max(d)) + radius;
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval no longer splits in f64
        }
        if count_below(diag, off, mid) >= k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Solves `(T - sigma I) x = rhs` in place by the Thomas algorithm.
///
/// No pivoting: near the inverse-iteration shift the matrix is nearly
/// singular by design, and a floored pivot only injects a component the
/// renormalized iteration immediately corrects.
fn thomas_solve(diag: &[f64], off: f64, sigma: f64, x: &mut [f64]) {
    let n = diag.len();
    let mut upper = vec![0.0; n];
    let mut denom = diag[0] - sigma;
    if denom.abs() < PIVOT_FLOOR {
        denom = PIVOT_FLOOR;
    }
    upper[0] = off / denom;
    x[0] /= denom;
    for i in 1..n {
        let mut d = diag[i] - sigma - off * upper[i - 1];
        if d.abs() < PIVOT_FLOOR {
            d = PIVOT_FLOOR;
        }
        upper[i] = off / d;
        x[i] = (x[i] - off * x[i - 1]) / d;
    }
    for i in (0..n - 1).rev() {
        x[i] -= upper[i] * x[i + 1];
    }
}

/// `max_i |(T v - lambda v)_i|`.
fn residual_norm(diag: &[f64], off: f64, lambda: f64, v: &[f64]) -> f64 {
    let n = diag.len();
    let mut worst = 0.0f64;
    for i in 0..n {
        let mut row = (diag[i] - lambda) * v[i];
        if i > 0 {
            row += off * v[i - 1];
        }
        if i + 1 < n {
            row += off * v[i + 1];
        }
        worst = worst.max(row.abs());
    }
    worst
}

/// Eigenvector for a bisected eigenvalue, by shifted inverse iteration from
/// a sine start (the exact flat-box eigenvector, and a good first guess for
/// any tilt). Converged when the residual drops below `1e-10 ||T||_inf`.
fn inverse_iteration(diag: &[f64], off: f64, lambda: f64, k: usize) -> Result<Vec<f64>> {
    let n = diag.len();
    let t_norm = diag
        .iter()
        .fold(0.0f64, |a, &d| a.max(d.abs() + 2.0 * off.abs()));
    let tol = 1e-10 * t_norm;

    let mut sweeps = 0;
    let mut last_residual = f64::INFINITY;
    for shift in SHIFTS {
        let sigma = lambda + shift;
        let mut v: Vec<f64> = (1..=n)
            .map(|i| (k as f64 * std::f64::consts::PI * i as f64 / (n + 1) as f64).sin())
            .collect();
        normalize(&mut v);
        for _ in 0..MAX_SWEEPS {
            sweeps += 1;
            thomas_solve(diag, off, sigma, &mut v);
            normalize(&mut v);
            last_residual = residual_norm(diag, off, lambda, &v);
            if last_residual <= tol {
                return Ok(v);
            }
        }
    }
    Err(Error::NonConvergence {
        iterations: sweeps,
        residual: last_residual,
    })
}

/// Rescales to unit 2-norm.
fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in v.iter_mut() {
        *x /= norm;
    }
}

/// The lowest `count` discrete bound states on a grid of `panels` intervals.
///
/// Needs at least four panels, and no more states than interior points.
/// Samples are normalized to the trapezoid analogue of
/// `(1/2) integral psi^2 dxi = 1` (wall values are exactly zero) with a
/// positive sample next to the left wall.
pub fn spectrum(problem: &FieldProblem, panels: usize, count: usize) -> Result<Vec<FdState>> {
    if panels < 4 {
        return Err(Error::Domain(format!(
            "grid of {panels} panels is too coarse (need at least 4)"
        )));
    }
    let interior = panels - 1;
    if count > interior {
        return Err(Error::Domain(format!(
            "{count} states requested but {panels} panels give only {interior} interior points"
        )));
    }

    let (diag, off) = build_diagonal(problem.alpha(), panels);
    let h = 2.0 / panels as f64;
    let mut states = Vec::with_capacity(count);
    for k in 1..=count {
        let beta = bisect_eigenvalue(&diag, off, k);
        let mut psi = inverse_iteration(&diag, off, beta, k).map_err(|e| Error::for_state(k, e))?;
        // (h/2) sum psi_i^2 = 1, positive next to the left wall.
        let weight = (0.5 * h).sqrt();
        let flip = if psi[0] < 0.0 { -1.0 } else { 1.0 };
        for x in psi.iter_mut() {
            *x *= flip / weight;
        }
        states.push(FdState {
            k,
            beta,
            psi,
            panels,
        });
    }
    Ok(states)
}

/// Squared one-sided wall slopes of a discrete state, second order through
/// the wall zeros: `psi'(-1) ~ (4 psi_1 - psi_2) / 2h` and mirrored on the
/// right.
#[must_use]
pub fn boundary_forces(state: &FdState) -> ForceBalance {
    let h = state.spacing();
    let n = state.psi.len();
    let left = (4.0 * state.psi[0] - state.psi[1]) / (2.0 * h);
    let right = (state.psi[n - 2] - 4.0 * state.psi[n - 1]) / (2.0 * h);
    ForceBalance {
        k: state.k,
        beta: state.beta,
        force_left: left * left,
        force_right: right * right,
    }
}
