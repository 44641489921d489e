//! Hermitian eigensolver.
//!
//! Reduction to real symmetric tridiagonal form by complex Householder
//! reflectors, then one of two finishes:
//! - small problems: implicit-shift QL with rotation accumulation
//!   (EISPACK tql2 lineage);
//! - large problems: QL eigenvalues without vectors, real inverse
//!   iteration on the tridiagonal with in-cluster orthogonalization, and
//!   a single reflector back-transform pass. The result is verified on
//!   the tridiagonal; on any miss the solver falls back to the
//!   accumulating path.

use super::{CMatrix, C64, ONE, ZERO};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct Eigensystem {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `j` is the eigenvector of `values[j]`; unitary matrix.
    pub vectors: CMatrix,
}

impl Eigensystem {
    /// `V f(Λ) V*` for a real function of the eigenvalues.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for j in 0..n {
            let fj = f(self.values[j]);
            for i in 0..n {
                scaled[(i, j)] *= fj;
            }
        }
        scaled.mul(&self.vectors.adjoint())
    }
}

/// Relative hermiticity tolerance accepted by the eigensolver.
const HERM_TOL: f64 = 1e-9;

/// Above this order the inverse-iteration finish takes over.
const INVIT_THRESHOLD: usize = 128;

struct Tridiagonalization {
    /// Householder vectors; `reflectors[k]` is supported on rows `k+1..n`.
    reflectors: Vec<(usize, Vec<C64>)>,
    /// Phase factors making the subdiagonal real nonnegative.
    phases: Vec<C64>,
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

pub fn hermitian_eigensystem(a: &CMatrix) -> Result<Eigensystem> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "hermitian_eigensystem: square matrix required, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(Eigensystem { values: vec![], vectors: CMatrix::zeros(0, 0) });
    }
    let scale = a.fro_norm();
    if a.hermiticity_residual() > HERM_TOL * scale.max(1.0) * (n as f64).sqrt() {
        return Err(Error::Contract("hermitian_eigensystem: input is not hermitian".into()));
    }
    if n == 1 {
        return Ok(Eigensystem { values: vec![a[(0, 0)].re], vectors: CMatrix::identity(1) });
    }

    let tri = tridiagonalize(a, scale);

    if n > INVIT_THRESHOLD {
        if let Some(sys) = try_inverse_iteration(&tri, scale) {
            return Ok(sys);
        }
    }
    accumulate_path(&tri)
}

/// Phase convention: the first component of each column whose modulus
/// exceeds `1e-8` times the column norm is made real positive.
pub fn fix_column_phases(m: &mut CMatrix) {
    let rows = m.rows();
    for j in 0..m.cols() {
        let norm = (0..rows).map(|i| m[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let mut phase = ONE;
        for i in 0..rows {
            let z = m[(i, j)];
            if z.norm() > 1e-8 * norm {
                phase = (z / z.norm()).conj();
                break;
            }
        }
        if phase != ONE {
            for i in 0..rows {
                m[(i, j)] *= phase;
            }
        }
    }
}

fn tridiagonalize(a: &CMatrix, scale: f64) -> Tridiagonalization {
    let n = a.rows();
    // hermitian average so round-off in the input cannot bias a triangle
    let mut w = a.add(&a.adjoint()).scale(C64::new(0.5, 0.0));
    let mut reflectors = Vec::with_capacity(n.saturating_sub(2));

    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let mut col = vec![ZERO; m];
        for i in 0..m {
            col[i] = w[(k + 1 + i, k)];
        }
        let nrm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if nrm <= f64::EPSILON * scale {
            continue;
        }
        let phase = if col[0].norm() > 0.0 { col[0] / col[0].norm() } else { ONE };
        let alpha = -phase * nrm;
        let mut v = col;
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm <= f64::EPSILON * scale {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }

        w[(k + 1, k)] = alpha;
        w[(k, k + 1)] = alpha.conj();
        for i in 1..m {
            w[(k + 1 + i, k)] = ZERO;
            w[(k, k + 1 + i)] = ZERO;
        }
        rank2_update(&mut w, k + 1, &v);
        reflectors.push((k, v));
    }

    let mut diag = vec![0.0; n];
    let mut offdiag = vec![0.0; n];
    let mut phases = vec![ONE; n];
    for i in 0..n {
        diag[i] = w[(i, i)].re;
    }
    for i in 0..n - 1 {
        let beta = w[(i + 1, i)];
        let m = beta.norm();
        phases[i + 1] = if m > 0.0 { phases[i] * (beta / m) } else { phases[i] };
        offdiag[i] = m;
    }
    Tridiagonalization { reflectors, phases, diag, offdiag }
}

/// Small-n / fallback path: build the tridiagonalizing unitary explicitly
/// and accumulate QL rotations into it.
fn accumulate_path(tri: &Tridiagonalization) -> Result<Eigensystem> {
    let n = tri.diag.len();
    let mut q = CMatrix::identity(n);
    apply_reflectors(&mut q, &tri.reflectors);
    for j in 1..n {
        let f = tri.phases[j];
        if f != ONE {
            for i in 0..n {
                q[(i, j)] *= f;
            }
        }
    }
    let mut d = tri.diag.clone();
    let mut e = tri.offdiag.clone();
    tql2(&mut d, &mut e, &mut q, true)?;
    sort_and_phase(d, q)
}

/// Large-n path. Returns `None` when verification on the tridiagonal
/// fails, in which case the caller falls back.
fn try_inverse_iteration(tri: &Tridiagonalization, scale: f64) -> Option<Eigensystem> {
    let n = tri.diag.len();
    let mut d = tri.diag.clone();
    let mut e = tri.offdiag.clone();
    let mut dummy = CMatrix::zeros(0, 0);
    tql2(&mut d, &mut e, &mut dummy, false).ok()?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();

    let z = tridiagonal_eigenvectors(&tri.diag, &tri.offdiag, &values, scale)?;

    // back-transform: Q = H_1 ... H_{n-2} (D_phase Z)
    let mut q = CMatrix::from_fn(n, n, |i, j| C64::new(z[j * n + i], 0.0) * tri.phases[i]);
    apply_reflectors(&mut q, &tri.reflectors);
    sort_and_phase(values, q).ok()
}

fn sort_and_phase(d: Vec<f64>, q: CMatrix) -> Result<Eigensystem> {
    let n = d.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (jnew, &jold) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, jnew)] = q[(i, jold)];
        }
    }
    fix_column_phases(&mut vectors);
    Ok(Eigensystem { values, vectors })
}

/// Eigenvectors of the real symmetric tridiagonal `(diag, offdiag)` at the
/// given (ascending) eigenvalues, by inverse iteration with
/// orthogonalization inside eigenvalue clusters. Column-major `n*n` real
/// output. `None` when residual or orthogonality verification fails.
fn tridiagonal_eigenvectors(diag: &[f64], offdiag: &[f64], values: &[f64], scale: f64) -> Option<Vec<f64>> {
    let n = diag.len();
    let norm = scale.max(1.0);
    // spectral norm: the eigenvalues are in hand
    let spec = values
        .iter()
        .fold(0.0_f64, |m, &v| m.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    let sep = (f64::EPSILON * norm).max(f64::MIN_POSITIVE);
    let cluster_gap = 1e-7 * norm;
    // vectors with eigenvalues this close get explicitly orthogonalized;
    // beyond it the residual/gap bound keeps cross-talk at machine level
    let ortho_window = (1e-4 * spec).max(cluster_gap);
    // iterate down to the per-vector floor; accept anything below `loose`
    let tight = 20.0 * f64::EPSILON * spec;
    let loose = 30.0 * f64::EPSILON * spec * (n as f64).sqrt();
    let mut z = vec![0.0_f64; n * n];
    let mut cluster_start = 0usize;
    let mut ortho_start = 0usize;
    let mut lcg: u64 = 0x9e3779b97f4a7c15;
    let mut rand01 = move || {
        lcg = lcg.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((lcg >> 11) as f64) / ((1u64 << 53) as f64)
    };

    for j in 0..n {
        if j > 0 && values[j] - values[j - 1] > cluster_gap {
            cluster_start = j;
        }
        while values[j] - values[ortho_start] > ortho_window {
            ortho_start += 1;
        }
        // perturb identical shifts inside a cluster so the solves differ
        let sigma = values[j] + (j - cluster_start) as f64 * 2.0 * sep;
        let mut x: Vec<f64> = (0..n).map(|_| rand01() - 0.5).collect();
        let mut ok = false;
        'attempts: for _attempt in 0..3 {
            let mut best = f64::INFINITY;
            for _iter in 0..8 {
                let mut y = solve_shifted_tridiagonal(diag, offdiag, sigma, &x)?;
                // orthogonalize against the nearby spectrum found so far
                for prev in ortho_start..j {
                    let col = &z[prev * n..(prev + 1) * n];
                    let dot: f64 = col.iter().zip(&y).map(|(a, b)| a * b).sum();
                    for (yi, ci) in y.iter_mut().zip(col) {
                        *yi -= dot * ci;
                    }
                }
                let nrm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
                if nrm < f64::MIN_POSITIVE.sqrt() {
                    break; // the iterate collapsed; retry with a new start
                }
                for yi in y.iter_mut() {
                    *yi /= nrm;
                }
                x = y;
                let res = tridiagonal_residual(diag, offdiag, values[j], &x);
                if res <= tight {
                    ok = true;
                    break 'attempts;
                }
                let stalled = res > 0.5 * best;
                best = best.min(res);
                if stalled && res <= loose {
                    ok = true;
                    break 'attempts;
                }
            }
            x = (0..n).map(|_| rand01() - 0.5).collect();
        }
        if !ok {
            return None;
        }
        z[j * n..(j + 1) * n].copy_from_slice(&x);
    }

    // orthogonality probe across the whole basis
    if !check_orthogonality(&z, n) {
        return None;
    }
    Some(z)
}

fn tridiagonal_residual(diag: &[f64], offdiag: &[f64], lambda: f64, x: &[f64]) -> f64 {
    let n = diag.len();
    let mut res = 0.0_f64;
    for i in 0..n {
        let mut t = (diag[i] - lambda) * x[i];
        if i > 0 {
            t += offdiag[i - 1] * x[i - 1];
        }
        if i + 1 < n {
            t += offdiag[i] * x[i + 1];
        }
        res += t * t;
    }
    res.sqrt()
}

/// `‖ZᵀZ − I‖_max` below `1e-10` required.
fn check_orthogonality(z: &[f64], n: usize) -> bool {
    let body = |j: usize| -> bool {
        let cj = &z[j * n..(j + 1) * n];
        for k in j + 1..n {
            let ck = &z[k * n..(k + 1) * n];
            let dot: f64 = cj.iter().zip(ck).map(|(a, b)| a * b).sum();
            if dot.abs() > 1e-10 {
                return false;
            }
        }
        true
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        return (0..n).into_par_iter().all(body);
    }
    #[cfg(not(feature = "parallel"))]
    (0..n).all(body)
}

/// Solves `(T - σ I) x = b` for real symmetric tridiagonal `T` by Gaussian
/// elimination with partial pivoting (one superdiagonal of fill-in).
/// Near-zero pivots are floored, not rejected: inverse iteration wants
/// almost-singular solves.
fn solve_shifted_tridiagonal(diag: &[f64], offdiag: &[f64], sigma: f64, b: &[f64]) -> Option<Vec<f64>> {
    let n = diag.len();
    let norm = diag.iter().chain(offdiag.iter()).fold(0.0_f64, |m, &v| m.max(v.abs()));
    let tiny = (f64::EPSILON * norm).max(f64::MIN_POSITIVE);
    let safe = |v: f64| if v.abs() < tiny { if v < 0.0 { -tiny } else { tiny } } else { v };

    let mut main: Vec<f64> = diag.iter().map(|&v| v - sigma).collect();
    let mut sup1: Vec<f64> = offdiag[..n - 1].to_vec();
    let mut sup2 = vec![0.0_f64; n];
    let mut rhs = b.to_vec();

    for i in 0..n - 1 {
        // current row i   : (main[i], sup1[i], sup2[i]) at columns i, i+1, i+2
        // current row i+1 : (sub,     main[i+1], sup1[i+1]) at the same columns,
        // where sub is the untouched symmetric offdiagonal entry
        let sub = offdiag[i];
        let pivot_factor = if sub.abs() > main[i].abs() {
            // row i+1 becomes the pivot row
            let old = (main[i], sup1[i], sup2[i]);
            main[i] = sub;
            sup1[i] = main[i + 1];
            sup2[i] = if i + 1 < n - 1 { sup1[i + 1] } else { 0.0 };
            rhs.swap(i, i + 1);
            main[i + 1] = old.1;
            if i + 1 < n - 1 {
                sup1[i + 1] = old.2;
            }
            old.0 / safe(main[i])
        } else {
            sub / safe(main[i])
        };
        main[i + 1] -= pivot_factor * sup1[i];
        if i + 1 < n - 1 {
            sup1[i + 1] -= pivot_factor * sup2[i];
        }
        rhs[i + 1] -= pivot_factor * rhs[i];
    }

    let mut x = vec![0.0_f64; n];
    for i in (0..n).rev() {
        let mut t = rhs[i];
        if i + 1 < n {
            t -= sup1[i] * x[i + 1];
        }
        if i + 2 < n {
            t -= sup2[i] * x[i + 2];
        }
        x[i] = t / safe(main[i]);
        if !x[i].is_finite() {
            return None;
        }
    }
    Some(x)
}

/// `X <- H_1 H_2 ... H_k X` applying stored reflectors innermost-first.
fn apply_reflectors(x: &mut CMatrix, reflectors: &[(usize, Vec<C64>)]) {
    for (k, v) in reflectors.iter().rev() {
        reflect_rows(x, k + 1, v);
    }
}

/// `X[off.., :] <- (I - 2 v v*) X[off.., :]` over all columns.
fn reflect_rows(x: &mut CMatrix, off: usize, v: &[C64]) {
    let m = v.len();
    let n = x.cols();
    // w = v* X (row vector), then X <- X - 2 v w
    let mut w = vec![ZERO; n];
    {
        let data = x.data();
        let accumulate = |j0: usize, w_chunk: &mut [C64]| {
            for (i, vi) in v.iter().enumerate() {
                let row = &data[(off + i) * n..(off + i + 1) * n];
                let vic = vi.conj();
                for (jj, wj) in w_chunk.iter_mut().enumerate() {
                    *wj += vic * row[j0 + jj];
                }
            }
        };
        #[cfg(feature = "parallel")]
        {
            if m * n >= 16_384 {
                use rayon::prelude::*;
                let chunk = (n / (2 * rayon::current_num_threads()).max(1)).max(64);
                w.par_chunks_mut(chunk)
                    .enumerate()
                    .for_each(|(ci, w_chunk)| accumulate(ci * chunk, w_chunk));
            } else {
                accumulate(0, &mut w);
            }
        }
        #[cfg(not(feature = "parallel"))]
        accumulate(0, &mut w);
    }
    let data = x.data_mut();
    let body = |i: usize, row: &mut [C64]| {
        let f = 2.0 * v[i];
        for (rj, wj) in row.iter_mut().zip(&w) {
            *rj -= f * wj;
        }
    };
    let range = &mut data[off * n..(off + m) * n];
    #[cfg(feature = "parallel")]
    {
        if m * n >= 16_384 {
            use rayon::prelude::*;
            range.par_chunks_mut(n).enumerate().for_each(|(i, row)| body(i, row));
            return;
        }
    }
    for (i, row) in range.chunks_mut(n).enumerate() {
        body(i, row);
    }
}

/// `B <- B - v z* - z v*` with `z = 2(Bv - (v*Bv) v)`, acting on the
/// trailing block starting at `off`.
fn rank2_update(w: &mut CMatrix, off: usize, v: &[C64]) {
    let m = v.len();
    let n = w.cols();
    let mut u = vec![ZERO; m];
    {
        let rows: Vec<&[C64]> = (0..m).map(|i| &w.row(off + i)[off..off + m]).collect();
        maybe_par_map(&mut u, |i, out| {
            let mut acc = ZERO;
            for (a, b) in rows[i].iter().zip(v) {
                acc += a * b;
            }
            *out = acc;
        });
    }
    let kappa: C64 = v.iter().zip(&u).map(|(a, b)| a.conj() * b).sum();
    let z: Vec<C64> = u.iter().zip(v).map(|(ui, vi)| 2.0 * (ui - kappa * vi)).collect();
    let data = w.data_mut();
    let range = &mut data[off * n..(off + m) * n];
    let body = |i: usize, row: &mut [C64]| {
        let vi = v[i];
        let zi = z[i];
        for jj in 0..m {
            row[off + jj] -= vi * z[jj].conj() + zi * v[jj].conj();
        }
    };
    #[cfg(feature = "parallel")]
    {
        if m * m >= 16_384 {
            use rayon::prelude::*;
            range.par_chunks_mut(n).enumerate().for_each(|(i, row)| body(i, row));
            return;
        }
    }
    for (i, row) in range.chunks_mut(n).enumerate() {
        body(i, row);
    }
}

fn maybe_par_map(out: &mut [C64], f: impl Fn(usize, &mut C64) + Sync) {
    #[cfg(feature = "parallel")]
    {
        if out.len() >= 512 {
            use rayon::prelude::*;
            out.par_iter_mut().enumerate().for_each(|(i, z)| f(i, z));
            return;
        }
    }
    for (i, z) in out.iter_mut().enumerate() {
        f(i, z);
    }
}

/// Implicit-shift QL on a real symmetric tridiagonal matrix. When
/// `with_vectors` is set the rotations accumulate into `q`'s columns.
fn tql2(d: &mut [f64], e: &mut [f64], q: &mut CMatrix, with_vectors: bool) -> Result<()> {
    let n = d.len();
    if n == 1 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    let eps = f64::EPSILON;
    let mut f = 0.0_f64;
    let mut tst1 = 0.0_f64;
    let mut rotations: Vec<(usize, f64, f64)> = Vec::new();

    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > 64 {
                    return Err(Error::Contract("tql2: QL iteration failed to converge".into()));
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for i in l + 2..n {
                    d[i] -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0_f64;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0_f64;
                let mut s2 = 0.0_f64;
                rotations.clear();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    rotations.push((i, c, s));
                }
                if with_vectors {
                    apply_rotations(q, &rotations);
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

/// Applies the rotation batch of one QL iteration to columns of `q`:
/// for each `(i, c, s)` in order, columns `i` and `i+1` mix.
/// Row-parallel: every matrix row is processed independently.
pub fn apply_rotations(q: &mut CMatrix, rotations: &[(usize, f64, f64)]) {
    let n = q.cols();
    let rows = q.rows();
    let data = q.data_mut();
    let body = |row: &mut [C64]| {
        for &(i, c, s) in rotations {
            let h = row[i + 1];
            row[i + 1] = s * row[i] + c * h;
            row[i] = c * row[i] - s * h;
        }
    };
    #[cfg(feature = "parallel")]
    {
        if rows * rotations.len() >= 8_192 {
            use rayon::prelude::*;
            data.par_chunks_mut(n).for_each(body);
            return;
        }
    }
    data.chunks_mut(n).for_each(body);
}

/// Sequential twin of [`apply_rotations`] (bench reference).
pub fn apply_rotations_seq(q: &mut CMatrix, rotations: &[(usize, f64, f64)]) {
    let n = q.cols();
    let data = q.data_mut();
    data.chunks_mut(n).for_each(|row| {
        for &(i, c, s) in rotations {
            let h = row[i + 1];
            row[i + 1] = s * row[i] + c * h;
            row[i] = c * row[i] - s * h;
        }
    });
}
