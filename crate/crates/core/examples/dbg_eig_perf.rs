use qiso_core::numlin::*;
use qiso_core::rng::SplitRng;
use std::time::Instant;

fn main() {
    let mut r = SplitRng::new(7);
    for &n in &[384usize, 768, 1152] {
        let a = r.hermitian(n);
        let t0 = Instant::now();
        let eig = hermitian_eigensystem(&a).unwrap();
        let dt = t0.elapsed();
        let recon = eig.apply(|x| x);
        let (u1, u2) = eig.vectors.unitarity_residuals();
        println!("n={n}: {:.2}s, recon {:.2e}, unitarity {:.2e}", dt.as_secs_f64(), recon.dist(&a) / a.fro_norm(), u1.max(u2));
    }
    // degenerate spectrum stress: multiplicities like the Dirac operators have
    let mut eigs = vec![];
    for v in &[1.0f64, 1.0, 1.0, -1.0, -1.0, -1.0, 2.5, 2.5, -2.5, -2.5, 0.0, 0.0] {
        for _ in 0..32 { eigs.push(*v); }
    }
    let u = r.haar_unitary(eigs.len());
    let a = u.mul(&CMatrix::diag_real(&eigs)).mul(&u.adjoint());
    let t0 = Instant::now();
    let eig = hermitian_eigensystem(&a).unwrap();
    let dt = t0.elapsed();
    let recon = eig.apply(|x| x);
    let (u1, u2) = eig.vectors.unitarity_residuals();
    println!("degenerate n={}: {:.2}s, recon {:.2e}, unitarity {:.2e}", eigs.len(), dt.as_secs_f64(), recon.dist(&a) / a.fro_norm(), u1.max(u2));
}
