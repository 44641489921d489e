//! Singular values and nullspaces.
//!
//! Small problems go through one-sided Jacobi (accurate down to machine
//! precision in the small singular values). Wide parameter spaces use a
//! Gram-matrix eigensolve to locate candidate null directions, then a
//! one-sided Jacobi refinement of the candidates only, which restores the
//! accuracy the squared problem loses.

use super::{hermitian_eigensystem, CMatrix, ZERO};
use crate::Result;

#[derive(Clone, Debug)]
pub struct Svd {
    /// Descending.
    pub singular_values: Vec<f64>,
    /// Right singular vectors, columns; unitary.
    pub v: CMatrix,
}

const JACOBI_DIRECT_LIMIT: usize = 192;

/// Right singular pairs of `a` via one-sided Jacobi.
pub fn svd(a: &CMatrix) -> Svd {
    let mut work = a.clone();
    let n = work.cols();
    let mut v = CMatrix::identity(n);
    one_sided_jacobi(&mut work, &mut v);
    let mut sv: Vec<(f64, usize)> = (0..n)
        .map(|j| {
            let s = (0..work.rows()).map(|i| work[(i, j)].norm_sqr()).sum::<f64>().sqrt();
            (s, j)
        })
        .collect();
    sv.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap());
    let singular_values = sv.iter().map(|&(s, _)| s).collect();
    let mut vs = CMatrix::zeros(n, n);
    for (jnew, &(_, jold)) in sv.iter().enumerate() {
        for i in 0..n {
            vs[(i, jnew)] = v[(i, jold)];
        }
    }
    Svd { singular_values, v: vs }
}

fn one_sided_jacobi(a: &mut CMatrix, v: &mut CMatrix) {
    let n = a.cols();
    let m = a.rows();
    if n < 2 {
        return;
    }
    let tol = 1e-14;
    // columns below this norm are numerically zero; rotating them would
    // compute phases from denormal garbage
    let floor = f64::EPSILON * a.fro_norm();
    let floor_sqr = floor * floor;
    for _sweep in 0..64 {
        let mut rotated = false;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = ZERO;
                for i in 0..m {
                    let zp = a[(i, p)];
                    let zq = a[(i, q)];
                    app += zp.norm_sqr();
                    aqq += zq.norm_sqr();
                    apq += zp.conj() * zq;
                }
                if app <= floor_sqr || aqq <= floor_sqr {
                    continue;
                }
                if apq.norm() <= tol * (app * aqq).sqrt() {
                    continue;
                }
                rotated = true;
                let abs_apq = apq.norm();
                let phase = apq / abs_apq; // e^{i φ}
                let tau = (aqq - app) / (2.0 * abs_apq);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let t = if tau == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                // columns: A_p' = c A_p - s conj(phase) A_q
                //          A_q' = s phase A_p + c A_q
                let sp = s * phase.conj();
                let sq = s * phase;
                for i in 0..m {
                    let zp = a[(i, p)];
                    let zq = a[(i, q)];
                    a[(i, p)] = c * zp - sp * zq;
                    a[(i, q)] = sq * zp + c * zq;
                }
                for i in 0..v.rows() {
                    let zp = v[(i, p)];
                    let zq = v[(i, q)];
                    v[(i, p)] = c * zp - sp * zq;
                    v[(i, q)] = sq * zp + c * zq;
                }
            }
        }
        if !rotated {
            break;
        }
    }
}

/// Orthonormal basis of the (right) nullspace of `a` at relative
/// threshold `tol`: directions whose singular value falls below
/// `tol * σ_max`, with `σ_max := 1` when `a` is exactly zero.
///
/// Returns a matrix whose columns form the basis (possibly zero columns
/// wide).
pub fn nullspace(a: &CMatrix, tol: f64) -> Result<CMatrix> {
    let n = a.cols();
    if a.fro_norm() == 0.0 {
        // σ_max := 1 by convention; every direction is null
        return Ok(CMatrix::identity(n));
    }
    if n <= JACOBI_DIRECT_LIMIT {
        let dec = svd(a);
        let smax = dec.singular_values.first().copied().unwrap_or(0.0).max(0.0);
        let thr = tol * if smax > 0.0 { smax } else { 1.0 };
        let null_cols: Vec<usize> =
            (0..n).filter(|&j| dec.singular_values[j] < thr).collect();
        return Ok(collect_columns(&dec.v, &null_cols));
    }

    // Gram route with Jacobi refinement of the candidate directions.
    let gram = a.adjoint().mul(a);
    let eig = hermitian_eigensystem(&gram)?;
    let lmax = eig.values.iter().fold(0.0_f64, |m, &v| m.max(v.max(0.0)));
    let smax = lmax.sqrt();
    if smax == 0.0 {
        return Ok(CMatrix::identity(n));
    }
    // generous candidate cut: everything the squared problem cannot resolve
    let cut = (1e-6_f64).max(tol * 10.0) * smax;
    let cand: Vec<usize> =
        (0..n).filter(|&j| eig.values[j].max(0.0).sqrt() < cut).collect();
    if cand.is_empty() {
        return Ok(CMatrix::zeros(n, 0));
    }
    let v_cand = collect_columns(&eig.vectors, &cand);
    let b = a.mul(&v_cand);
    let dec = svd(&b);
    let thr = tol * smax;
    let keep: Vec<usize> =
        (0..cand.len()).filter(|&j| dec.singular_values[j] < thr).collect();
    Ok(v_cand.mul(&collect_columns(&dec.v, &keep)))
}

fn collect_columns(m: &CMatrix, cols: &[usize]) -> CMatrix {
    let mut out = CMatrix::zeros(m.rows(), cols.len());
    for (jnew, &jold) in cols.iter().enumerate() {
        for i in 0..m.rows() {
            out[(i, jnew)] = m[(i, jold)];
        }
    }
    out
}

/// Rank at relative threshold `tol`: singular values at or above
/// `tol * σ_max`.
pub fn rank(a: &CMatrix, tol: f64) -> Result<usize> {
    Ok(a.cols() - nullspace(a, tol)?.cols())
}
