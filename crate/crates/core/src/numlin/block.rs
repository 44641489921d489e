//! Matrices over a matrix algebra: square grids of equal-size dense blocks.
//!
//! For a block matrix `u` with entries `u_{ij}` the three involutions are
//! kept apart deliberately:
//! - `block_transpose` swaps block positions, leaving contents untouched
//!   (this is `u^t`);
//! - `block_bar` adjoints each block in place (this is `ū = ((u_{ij}^*))`);
//! - `adjoint` of the underlying matrix equals `block_bar ∘ block_transpose`
//!   (this is `u^*`).

use super::{CMatrix, C64, ONE};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockMatrix {
    block_rows: usize,
    block_cols: usize,
    block_dim: usize,
    data: CMatrix,
}

impl BlockMatrix {
    pub fn zeros(block_rows: usize, block_cols: usize, block_dim: usize) -> Self {
        Self {
            block_rows,
            block_cols,
            block_dim,
            data: CMatrix::zeros(block_rows * block_dim, block_cols * block_dim),
        }
    }

    pub fn identity(block_rows: usize, block_dim: usize) -> Self {
        Self {
            block_rows,
            block_cols: block_rows,
            block_dim,
            data: CMatrix::identity(block_rows * block_dim),
        }
    }

    pub fn from_data(block_rows: usize, block_cols: usize, block_dim: usize, data: CMatrix) -> Result<Self> {
        if data.rows() != block_rows * block_dim || data.cols() != block_cols * block_dim {
            return Err(Error::Shape(format!(
                "block grid {}x{} with block dim {} needs a {}x{} matrix, got {}x{}",
                block_rows,
                block_cols,
                block_dim,
                block_rows * block_dim,
                block_cols * block_dim,
                data.rows(),
                data.cols()
            )));
        }
        Ok(Self { block_rows, block_cols, block_dim, data })
    }

    /// Builds from a grid of blocks, row-major over the grid.
    pub fn from_blocks(block_rows: usize, block_cols: usize, blocks: &[CMatrix]) -> Result<Self> {
        if blocks.is_empty() || blocks.len() != block_rows * block_cols {
            return Err(Error::Shape("from_blocks: grid/block count mismatch".into()));
        }
        let d = blocks[0].rows();
        if blocks.iter().any(|b| b.rows() != d || b.cols() != d) {
            return Err(Error::Shape("from_blocks: all blocks must be d x d".into()));
        }
        let mut m = Self::zeros(block_rows, block_cols, d);
        for i in 0..block_rows {
            for j in 0..block_cols {
                m.set_block(i, j, &blocks[i * block_cols + j]);
            }
        }
        Ok(m)
    }

    /// Promotes a scalar matrix entrywise: entry `c` becomes `c · I_d`.
    pub fn promote(scalar: &CMatrix, block_dim: usize) -> Self {
        let mut m = Self::zeros(scalar.rows(), scalar.cols(), block_dim);
        for i in 0..scalar.rows() {
            for j in 0..scalar.cols() {
                let z = scalar[(i, j)];
                for k in 0..block_dim {
                    m.data[(i * block_dim + k, j * block_dim + k)] = z;
                }
            }
        }
        m
    }

    pub fn block_rows(&self) -> usize {
        self.block_rows
    }

    pub fn block_cols(&self) -> usize {
        self.block_cols
    }

    pub fn block_dim(&self) -> usize {
        self.block_dim
    }

    pub fn data(&self) -> &CMatrix {
        &self.data
    }

    pub fn into_data(self) -> CMatrix {
        self.data
    }

    pub fn block(&self, i: usize, j: usize) -> CMatrix {
        let d = self.block_dim;
        self.data.slice(i * d, j * d, d, d)
    }

    pub fn set_block(&mut self, i: usize, j: usize, b: &CMatrix) {
        let d = self.block_dim;
        assert_eq!((b.rows(), b.cols()), (d, d), "set_block: block must be d x d");
        self.data.set_slice(i * d, j * d, b);
    }

    /// `u^t`: block (i,j) of the output is block (j,i) of the input.
    pub fn block_transpose(&self) -> Result<Self> {
        if self.block_rows != self.block_cols {
            return Err(Error::Shape(format!(
                "block_transpose: block grid must be square, got {}x{}",
                self.block_rows, self.block_cols
            )));
        }
        let mut out = Self::zeros(self.block_cols, self.block_rows, self.block_dim);
        for i in 0..self.block_rows {
            for j in 0..self.block_cols {
                out.set_block(j, i, &self.block(i, j));
            }
        }
        Ok(out)
    }

    /// `ū`: adjoint of every block, positions unchanged.
    pub fn block_bar(&self) -> Self {
        let mut out = Self::zeros(self.block_rows, self.block_cols, self.block_dim);
        for i in 0..self.block_rows {
            for j in 0..self.block_cols {
                out.set_block(i, j, &self.block(i, j).adjoint());
            }
        }
        out
    }

    /// `u^*` of the underlying matrix.
    pub fn adjoint(&self) -> Self {
        Self {
            block_rows: self.block_cols,
            block_cols: self.block_rows,
            block_dim: self.block_dim,
            data: self.data.adjoint(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.block_dim, other.block_dim, "mul: block dims must agree");
        assert_eq!(self.block_cols, other.block_rows, "mul: block grids must agree");
        Self {
            block_rows: self.block_rows,
            block_cols: other.block_cols,
            block_dim: self.block_dim,
            data: self.data.mul(&other.data),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            block_rows: self.block_rows,
            block_cols: self.block_cols,
            block_dim: self.block_dim,
            data: self.data.sub(&other.data),
        }
    }

    pub fn scale(&self, z: C64) -> Self {
        Self {
            block_rows: self.block_rows,
            block_cols: self.block_cols,
            block_dim: self.block_dim,
            data: self.data.scale(z),
        }
    }

    pub fn dist(&self, other: &Self) -> f64 {
        self.data.dist(&other.data)
    }

    pub fn fro_norm(&self) -> f64 {
        self.data.fro_norm()
    }

    /// Blockwise direct sum on the auxiliary space: block (i,j) becomes
    /// `diag(self_{ij}, other_{ij})`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.block_rows != other.block_rows || self.block_cols != other.block_cols {
            return Err(Error::Shape("direct_sum: block grids must agree".into()));
        }
        let d1 = self.block_dim;
        let d2 = other.block_dim;
        let mut out = Self::zeros(self.block_rows, self.block_cols, d1 + d2);
        for i in 0..self.block_rows {
            for j in 0..self.block_cols {
                let a = self.block(i, j);
                let b = other.block(i, j);
                let mut blk = CMatrix::zeros(d1 + d2, d1 + d2);
                blk.set_slice(0, 0, &a);
                blk.set_slice(d1, d1, &b);
                out.set_block(i, j, &blk);
            }
        }
        Ok(out)
    }

    /// Scales every block by the identity coefficient, i.e. tensors each
    /// block on the right with `I_extra` (block dim grows).
    pub fn inflate(&self, extra: usize) -> Self {
        let mut out = Self::zeros(self.block_rows, self.block_cols, self.block_dim * extra);
        let id = CMatrix::identity(extra);
        for i in 0..self.block_rows {
            for j in 0..self.block_cols {
                let b = super::kron(&self.block(i, j), &id).expect("inflate: cap exceeded");
                out.set_block(i, j, &b);
            }
        }
        out
    }
}

/// Report from the biunitarity check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BiunitarityReport {
    pub is_unitary: bool,
    pub is_transpose_unitary: bool,
    /// `‖BB*−I‖, ‖B*B−I‖, ‖B^t(B^t)*−I‖, ‖(B^t)*B^t−I‖`.
    pub residuals: [f64; 4],
}

impl BiunitarityReport {
    pub fn is_biunitary(&self) -> bool {
        self.is_unitary && self.is_transpose_unitary
    }
}

/// Checks that both `B` and its block transpose are unitary.
pub fn is_biunitary(b: &BlockMatrix, tol: f64) -> Result<BiunitarityReport> {
    if b.block_rows() != b.block_cols() {
        return Err(Error::Shape("is_biunitary: square block grid required".into()));
    }
    let (r1, r2) = b.data().unitarity_residuals();
    let bt = b.block_transpose()?;
    let (r3, r4) = bt.data().unitarity_residuals();
    let dim = (b.data().rows() as f64).sqrt();
    let thr = tol * dim;
    Ok(BiunitarityReport {
        is_unitary: r1 < thr && r2 < thr,
        is_transpose_unitary: r3 < thr && r4 < thr,
        residuals: [r1, r2, r3, r4],
    })
}

/// The swap operator `Σ e_ij ⊗ e_ji` on `C^d ⊗ C^d`, viewed as a d x d
/// grid of d x d blocks: unitary, but its block transpose is not.
pub fn swap_operator(d: usize) -> BlockMatrix {
    let mut m = BlockMatrix::zeros(d, d, d);
    for i in 0..d {
        for j in 0..d {
            let mut blk = CMatrix::zeros(d, d);
            blk[(j, i)] = ONE;
            m.set_block(i, j, &blk);
        }
    }
    m
}
