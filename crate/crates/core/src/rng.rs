//! Seeded, splittable randomness for reproducible property tests.
//!
//! All randomness flows from a single `u64` seed through ChaCha streams;
//! `split` hands out independent substreams so parallel samplers stay
//! deterministic regardless of scheduling.

use crate::numlin::{CMatrix, C64, ZERO};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct SplitRng {
    rng: ChaCha8Rng,
    seed: u64,
    next_stream: u64,
}

impl SplitRng {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), seed, next_stream: 1 }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent substream; deterministic in the order of split calls.
    pub fn split(&mut self) -> Self {
        let stream = self.next_stream;
        self.next_stream += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream.wrapping_add(self.rng.gen::<u64>() >> 1));
        Self { rng, seed: self.seed, next_stream: 1 }
    }

    pub fn f64(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.f64()
    }

    pub fn usize(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn standard_normal(&mut self) -> f64 {
        // Box-Muller
        let u1: f64 = self.rng.gen::<f64>().max(f64::MIN_POSITIVE);
        let u2: f64 = self.rng.gen();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }

    pub fn complex_normal(&mut self) -> C64 {
        C64::new(self.standard_normal(), self.standard_normal())
    }

    /// Uniform phase on the unit circle.
    pub fn unit_phase(&mut self) -> C64 {
        let t = 2.0 * std::f64::consts::PI * self.f64();
        C64::new(t.cos(), t.sin())
    }

    pub fn complex_matrix(&mut self, rows: usize, cols: usize) -> CMatrix {
        CMatrix::from_fn(rows, cols, |_, _| self.complex_normal())
    }

    pub fn hermitian(&mut self, n: usize) -> CMatrix {
        let g = self.complex_matrix(n, n);
        g.add(&g.adjoint()).scale(C64::new(0.5, 0.0))
    }

    /// Complex symmetric (`A^t = A`), not hermitian in general.
    pub fn complex_symmetric(&mut self, n: usize) -> CMatrix {
        let g = self.complex_matrix(n, n);
        g.add(&g.transpose()).scale(C64::new(0.5, 0.0))
    }

    /// Haar-distributed unitary: QR of a Gaussian matrix with the phase
    /// fix that makes R's diagonal real positive.
    pub fn haar_unitary(&mut self, n: usize) -> CMatrix {
        let g = self.complex_matrix(n, n);
        gram_schmidt_q(&g)
    }

    /// Random positive definite matrix with the given eigenvalues.
    pub fn positive_with_eigenvalues(&mut self, eigs: &[f64]) -> CMatrix {
        let u = self.haar_unitary(eigs.len());
        u.mul(&CMatrix::diag_real(eigs)).mul(&u.adjoint())
    }

    /// Haar unitary normalized to determinant one.
    pub fn special_unitary(&mut self, n: usize) -> CMatrix {
        let u = self.haar_unitary(n);
        let det = crate::numlin::determinant(&u);
        let phase = det / det.norm();
        let zeta = phase.powf(-1.0 / n as f64);
        u.scale(zeta)
    }
}

/// Modified Gram-Schmidt with one reorthogonalization pass; returns Q with
/// the Haar phase convention (diagonal of R real positive).
fn gram_schmidt_q(a: &CMatrix) -> CMatrix {
    let n = a.rows();
    let mut q = a.clone();
    for j in 0..n {
        for _ in 0..2 {
            for k in 0..j {
                let mut dot = ZERO;
                for i in 0..n {
                    dot += q[(i, k)].conj() * q[(i, j)];
                }
                for i in 0..n {
                    let sub = dot * q[(i, k)];
                    q[(i, j)] -= sub;
                }
            }
        }
        let nrm = (0..n).map(|i| q[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        if nrm > 0.0 {
            for i in 0..n {
                q[(i, j)] /= nrm;
            }
        } else {
            // degenerate draw; fall back to a basis vector
            for i in 0..n {
                q[(i, j)] = if i == j { crate::numlin::ONE } else { ZERO };
            }
        }
    }
    // R_jj = <q_j, a_j> phase correction
    let mut out = q.clone();
    for j in 0..n {
        let mut rjj = ZERO;
        for i in 0..n {
            rjj += q[(i, j)].conj() * a[(i, j)];
        }
        let phase = if rjj.norm() > 0.0 { rjj / rjj.norm() } else { crate::numlin::ONE };
        for i in 0..n {
            out[(i, j)] = q[(i, j)] * phase;
        }
    }
    out
}

/// Distinct positive values, pairwise separated and disjoint from `avoid`.
pub fn distinct_positive(rng: &mut SplitRng, n: usize, lo: f64, hi: f64, avoid: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::with_capacity(n);
    let min_gap = (hi - lo) / (20.0 * n as f64);
    while out.len() < n {
        let cand = rng.range(lo, hi);
        let clear = out.iter().chain(avoid.iter()).all(|&x| (x - cand).abs() > min_gap);
        if clear {
            out.push(cand);
        }
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}
