//! Dense complex linear algebra kernels.
//!
//! Conventions, fixed globally:
//! - matrices are row-major;
//! - all tensor products are left-factor major, i.e. `kron(A, B)` indexes
//!   rows as `i_A * rows_B + i_B`;
//! - residuals are Frobenius norms, checks scale them by `sqrt(dim)` and
//!   the operand norms.

mod block;
mod eig;
mod svd;

pub use block::{is_biunitary, swap_operator, BiunitarityReport, BlockMatrix};
pub use eig::{apply_rotations, apply_rotations_seq, fix_column_phases, hermitian_eigensystem, Eigensystem};
pub use svd::{nullspace, rank, svd, Svd};

use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Per-side dimension cap for Kronecker products.
pub const KRON_DIM_CAP: usize = 100_000;

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl std::fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows.min(8) {
            write!(f, "  ")?;
            for j in 0..self.cols.min(8) {
                let z = self[(i, j)];
                write!(f, "{:+.3e}{:+.3e}i ", z.re, z.im)?;
            }
            writeln!(f, "{}", if self.cols > 8 { "..." } else { "" })?;
        }
        if self.rows > 8 {
            writeln!(f, "  ...")?;
        }
        write!(f, "]")
    }
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Matrix unit `e_{ij}` of size `n`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = ONE;
        m
    }

    pub fn diag(entries: &[C64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn diag_real(entries: &[f64]) -> Self {
        Self::diag(&entries.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds from a row-major entry vector; rejects non-finite entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                data.len()
            )));
        }
        if !data.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::Contract("matrix entries must be finite".into()));
        }
        Ok(Self { rows, cols, data })
    }

    /// 2x2 convenience constructor.
    pub fn two_by_two(a: C64, b: C64, c: C64, d: C64) -> Self {
        Self { rows: 2, cols: 2, data: vec![a, b, c, d] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)];
            }
        }
        m
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Conjugate transpose. Identical bit-for-bit to
    /// `self.conj().transpose()`.
    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn scale(&self, z: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|w| w * z).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add: shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sub: shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add_assign: shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }

    /// Matrix product; dispatches to the rayon kernel when the `parallel`
    /// feature is enabled and the problem is large enough to amortize it.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "mul: inner dimensions must agree");
        #[cfg(feature = "parallel")]
        {
            if self.rows * self.cols * other.cols >= 32_768 {
                return matmul_par(self, other);
            }
        }
        matmul_seq(self, other)
    }

    /// Apply to a column vector.
    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "mul_vec: dimension mismatch");
        let mut out = vec![ZERO; self.rows];
        for i in 0..self.rows {
            let row = self.row(i);
            let mut acc = ZERO;
            for (a, b) in row.iter().zip(v) {
                acc += a * b;
            }
            out[i] = acc;
        }
        out
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square(), "trace: square matrix required");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `‖self − other‖_F`.
    pub fn dist(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dist: shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Frobenius inner product, conjugate-linear in `self`.
    pub fn fro_inner(&self, other: &Self) -> C64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "fro_inner: shape mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum()
    }

    /// `‖A A* − I‖_F` and `‖A* A − I‖_F`.
    pub fn unitarity_residuals(&self) -> (f64, f64) {
        let adj = self.adjoint();
        let id = Self::identity(self.rows);
        (self.mul(&adj).dist(&id), adj.mul(self).dist(&id))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        let (r1, r2) = self.unitarity_residuals();
        let scale = tol * (self.rows as f64).sqrt();
        r1 < scale && r2 < scale
    }

    /// `‖A − A*‖_F`.
    pub fn hermiticity_residual(&self) -> f64 {
        self.dist(&self.adjoint())
    }

    /// Sub-block copy, rows `r0..r0+nr`, cols `c0..c0+nc`.
    pub fn slice(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols, "slice: out of bounds");
        let mut m = Self::zeros(nr, nc);
        for i in 0..nr {
            for j in 0..nc {
                m[(i, j)] = self[(r0 + i, c0 + j)];
            }
        }
        m
    }

    pub fn set_slice(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(
            r0 + block.rows <= self.rows && c0 + block.cols <= self.cols,
            "set_slice: out of bounds"
        );
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)];
            }
        }
    }

    pub fn add_slice(&mut self, r0: usize, c0: usize, block: &Self, factor: C64) {
        assert!(
            r0 + block.rows <= self.rows && c0 + block.cols <= self.cols,
            "add_slice: out of bounds"
        );
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] += block[(i, j)] * factor;
            }
        }
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Sequential matrix-product kernel (reference for the benches).
pub fn matmul_seq(a: &CMatrix, b: &CMatrix) -> CMatrix {
    assert_eq!(a.cols, b.rows, "matmul: inner dimensions must agree");
    let mut c = CMatrix::zeros(a.rows, b.cols);
    matmul_rows(&a.data, &b.data, &mut c.data, a.cols, b.cols);
    c
}

/// Rayon matrix-product kernel, row-chunked.
#[cfg(feature = "parallel")]
pub fn matmul_par(a: &CMatrix, b: &CMatrix) -> CMatrix {
    use rayon::prelude::*;
    assert_eq!(a.cols, b.rows, "matmul: inner dimensions must agree");
    let mut c = CMatrix::zeros(a.rows, b.cols);
    let k = a.cols;
    let n = b.cols;
    let chunk = (a.rows / (4 * rayon::current_num_threads()).max(1)).max(4);
    c.data
        .par_chunks_mut(chunk * n)
        .zip(a.data.par_chunks(chunk * k))
        .for_each(|(c_rows, a_rows)| matmul_rows(a_rows, &b.data, c_rows, k, n));
    c
}

/// ikj kernel over a row range: `c_rows` and `a_rows` hold whole rows.
fn matmul_rows(a_rows: &[C64], b: &[C64], c_rows: &mut [C64], k: usize, n: usize) {
    let rows = a_rows.len() / k;
    for i in 0..rows {
        let c_row = &mut c_rows[i * n..(i + 1) * n];
        let a_row = &a_rows[i * k..(i + 1) * k];
        for (kk, &aik) in a_row.iter().enumerate() {
            if aik == ZERO {
                continue;
            }
            let b_row = &b[kk * n..(kk + 1) * n];
            for (cij, bkj) in c_row.iter_mut().zip(b_row) {
                *cij += aik * bkj;
            }
        }
    }
}

/// Kronecker product, left factor major.
pub fn kron(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    let rows = a.rows.checked_mul(b.rows).filter(|&r| r <= KRON_DIM_CAP);
    let cols = a.cols.checked_mul(b.cols).filter(|&c| c <= KRON_DIM_CAP);
    let (rows, cols) = match (rows, cols) {
        (Some(r), Some(c)) => (r, c),
        _ => {
            return Err(Error::Size(format!(
                "kron: {}x{} ⊗ {}x{} exceeds the {} per-side cap",
                a.rows, a.cols, b.rows, b.cols, KRON_DIM_CAP
            )))
        }
    };
    let mut m = CMatrix::zeros(rows, cols);
    for ia in 0..a.rows {
        for ja in 0..a.cols {
            let f = a[(ia, ja)];
            if f == ZERO {
                continue;
            }
            for ib in 0..b.rows {
                for jb in 0..b.cols {
                    m[(ia * b.rows + ib, ja * b.cols + jb)] = f * b[(ib, jb)];
                }
            }
        }
    }
    Ok(m)
}

/// Kronecker product of factors known to fit under the cap.
pub fn kron_all(factors: &[&CMatrix]) -> CMatrix {
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = kron(&acc, f).expect("kron_all: dimension cap exceeded");
    }
    acc
}

/// Transpose, conjugate and adjoint of a matrix in one report.
pub struct Involutions {
    pub transpose: CMatrix,
    pub conjugate: CMatrix,
    pub adjoint: CMatrix,
}

pub fn involutions(a: &CMatrix) -> Involutions {
    Involutions { transpose: a.transpose(), conjugate: a.conj(), adjoint: a.adjoint() }
}

/// Partial trace over the left (major) tensor factor:
/// `out[k, k'] = Σ_h M[(h,k), (h,k')]`.
pub fn partial_trace_left(m: &CMatrix, dim_h: usize, dim_k: usize) -> Result<CMatrix> {
    let n = dim_h * dim_k;
    if m.rows != n || m.cols != n {
        return Err(Error::Shape(format!(
            "partial_trace_left: expected {n}x{n} for dims {dim_h}x{dim_k}, got {}x{}",
            m.rows, m.cols
        )));
    }
    let mut out = CMatrix::zeros(dim_k, dim_k);
    for h in 0..dim_h {
        for k in 0..dim_k {
            for kp in 0..dim_k {
                out[(k, kp)] += m[(h * dim_k + k, h * dim_k + kp)];
            }
        }
    }
    Ok(out)
}

/// Inverse of a small positive (hermitian, positive definite) matrix via
/// its eigensystem.
pub fn positive_inverse(a: &CMatrix, tol: f64) -> Result<CMatrix> {
    let eig = hermitian_eigensystem(a)?;
    let scale = eig.values.iter().fold(0.0_f64, |m, &v| m.max(v.abs()));
    if eig.values.iter().any(|&v| v <= tol * scale.max(1.0)) {
        return Err(Error::Contract("positive_inverse: matrix is not positive invertible".into()));
    }
    let inv_diag = CMatrix::diag_real(&eig.values.iter().map(|&v| 1.0 / v).collect::<Vec<_>>());
    Ok(eig.vectors.mul(&inv_diag).mul(&eig.vectors.adjoint()))
}

/// Determinant by LU with partial pivoting. Intended for small matrices.
pub fn determinant(a: &CMatrix) -> C64 {
    assert!(a.is_square(), "determinant: square matrix required");
    let n = a.rows;
    let mut lu = a.clone();
    let mut det = ONE;
    for k in 0..n {
        let (mut p, mut best) = (k, lu[(k, k)].norm());
        for i in k + 1..n {
            let v = lu[(i, k)].norm();
            if v > best {
                best = v;
                p = i;
            }
        }
        if best == 0.0 {
            return ZERO;
        }
        if p != k {
            for j in 0..n {
                let t = lu[(k, j)];
                lu[(k, j)] = lu[(p, j)];
                lu[(p, j)] = t;
            }
            det = -det;
        }
        let piv = lu[(k, k)];
        det *= piv;
        for i in k + 1..n {
            let f = lu[(i, k)] / piv;
            for j in k + 1..n {
                let sub = f * lu[(k, j)];
                lu[(i, j)] -= sub;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests;
