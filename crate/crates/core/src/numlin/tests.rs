use super::*;
use crate::rng::SplitRng;
use proptest::prelude::*;

fn rng() -> SplitRng {
    SplitRng::new(0x5eed)
}

#[test]
fn kron_identity_factor_is_block_diagonal() {
    let mut r = rng();
    let a = r.complex_matrix(3, 3);
    let k = kron(&CMatrix::identity(2), &a).unwrap();
    assert_eq!(k.rows(), 6);
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(k[(i, j)], a[(i, j)]);
            assert_eq!(k[(3 + i, 3 + j)], a[(i, j)]);
            assert_eq!(k[(i, 3 + j)], ZERO);
            assert_eq!(k[(3 + i, j)], ZERO);
        }
    }
}

#[test]
fn kron_of_matrix_units_lands_on_the_composite_unit() {
    // e_11 ⊗ e_22 has its single entry at composite row/col (0-based) 0*2+1
    let k = kron(&CMatrix::unit(2, 0, 0), &CMatrix::unit(2, 1, 1)).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            let expect = if (i, j) == (1, 1) { ONE } else { ZERO };
            assert_eq!(k[(i, j)], expect);
        }
    }
}

#[test]
fn kron_dimension_arithmetic() {
    let a = CMatrix::zeros(3, 4);
    let b = CMatrix::zeros(5, 2);
    let k = kron(&a, &b).unwrap();
    assert_eq!((k.rows(), k.cols()), (15, 8));
}

#[test]
fn kron_dimension_cap_is_a_size_error() {
    let a = CMatrix::zeros(400, 1);
    let b = CMatrix::zeros(400, 1);
    let err = kron(&a, &b).unwrap_err();
    assert!(matches!(err, crate::Error::Size(_)));
}

#[test]
fn involutions_basics() {
    let a = CMatrix::from_vec(1, 1, vec![I]).unwrap();
    assert_eq!(involutions(&a).adjoint[(0, 0)], -I);

    let s = CMatrix::two_by_two(ONE, C64::new(2.0, 0.0), C64::new(2.0, 0.0), ONE);
    assert_eq!(involutions(&s).adjoint, s);

    let mut r = rng();
    let m = r.complex_matrix(4, 7);
    assert_eq!(m.adjoint().adjoint(), m);
    // adjoint must equal transpose-of-conjugate bit for bit
    assert_eq!(m.adjoint(), m.conj().transpose());
}

#[test]
fn block_transpose_with_unit_blocks_is_plain_transpose() {
    let mut r = rng();
    let m = r.complex_matrix(4, 4);
    let b = BlockMatrix::from_data(4, 4, 1, m.clone()).unwrap();
    assert_eq!(b.block_transpose().unwrap().data(), &m.transpose());
}

#[test]
fn block_transpose_swaps_blocks_without_touching_contents() {
    let mut r = rng();
    let a = r.complex_matrix(2, 2);
    let b = r.complex_matrix(2, 2);
    let m = BlockMatrix::from_blocks(
        2,
        2,
        &[CMatrix::zeros(2, 2), a.clone(), b.clone(), CMatrix::zeros(2, 2)],
    )
    .unwrap();
    let t = m.block_transpose().unwrap();
    assert_eq!(t.block(0, 1), b);
    assert_eq!(t.block(1, 0), a);
}

#[test]
fn block_bar_after_block_transpose_is_the_full_adjoint() {
    // index-level brute force: entry ((i,a),(j,b)) of bar∘transpose must be
    // conj of entry ((j,b),(i,a))
    let mut r = rng();
    let m = BlockMatrix::from_data(2, 2, 2, r.complex_matrix(4, 4)).unwrap();
    let composite = m.block_transpose().unwrap().block_bar();
    for i in 0..2 {
        for a in 0..2 {
            for j in 0..2 {
                for b in 0..2 {
                    let lhs = composite.data()[(i * 2 + a, j * 2 + b)];
                    let rhs = m.data()[(j * 2 + b, i * 2 + a)].conj();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
    assert_eq!(composite.data(), &m.data().adjoint());
}

#[test]
fn biunitarity_of_identity_and_scalar_unitaries() {
    let id = BlockMatrix::identity(3, 2);
    let rep = is_biunitary(&id, 1e-12).unwrap();
    assert!(rep.is_biunitary());
    assert!(rep.residuals.iter().all(|&r| r == 0.0));

    let mut r = rng();
    let u = BlockMatrix::from_data(4, 4, 1, r.haar_unitary(4)).unwrap();
    let rep = is_biunitary(&u, 1e-10).unwrap();
    assert!(rep.is_unitary && rep.is_transpose_unitary);
}

#[test]
fn swap_operator_is_unitary_but_not_block_transpose_unitary() {
    let s = swap_operator(2);
    let rep = is_biunitary(&s, 1e-10).unwrap();
    assert!(rep.is_unitary);
    assert!(!rep.is_transpose_unitary);
    // direct multiplication of the 4x4 matrices as the oracle
    let st = s.block_transpose().unwrap();
    let prod = st.data().mul(&st.data().adjoint());
    assert!(prod.dist(&CMatrix::identity(4)) > 0.5);
}

#[test]
fn biunitarity_with_unit_blocks_reduces_to_unitarity() {
    let mut r = rng();
    for _ in 0..8 {
        let m = if r.f64() < 0.5 { r.haar_unitary(3) } else { r.complex_matrix(3, 3) };
        let b = BlockMatrix::from_data(3, 3, 1, m.clone()).unwrap();
        let rep = is_biunitary(&b, 1e-8).unwrap();
        assert_eq!(rep.is_unitary, m.is_unitary(1e-8));
        // conjugate of a unitary is unitary: the two flags agree at d=1
        assert_eq!(rep.is_unitary, rep.is_transpose_unitary);
    }
}

#[test]
fn eigensystem_diagonal_and_flip() {
    let d = CMatrix::diag_real(&[3.0, 1.0, 2.0]);
    let eig = hermitian_eigensystem(&d).unwrap();
    assert_eq!(eig.values, vec![1.0, 2.0, 3.0]);
    // permutation eigenvectors
    for (j, &orig) in [1usize, 2, 0].iter().enumerate() {
        assert!((eig.vectors[(orig, j)].re - 1.0).abs() < 1e-14);
    }

    let flip = CMatrix::two_by_two(ZERO, ONE, ONE, ZERO);
    let eig = hermitian_eigensystem(&flip).unwrap();
    assert!((eig.values[0] + 1.0).abs() < 1e-14);
    assert!((eig.values[1] - 1.0).abs() < 1e-14);
}

#[test]
fn eigensystem_reconstructs_random_hermitian() {
    let mut r = rng();
    let a = r.hermitian(50);
    let eig = hermitian_eigensystem(&a).unwrap();
    let recon = eig.apply(|x| x);
    assert!(recon.dist(&a) < 1e-12 * a.fro_norm());
    assert!(eig.vectors.is_unitary(1e-12));
    for w in eig.values.windows(2) {
        assert!(w[0] <= w[1]);
    }
}

#[test]
fn eigensystem_rejects_non_hermitian() {
    let mut r = rng();
    let a = r.complex_matrix(5, 5);
    assert!(matches!(hermitian_eigensystem(&a), Err(crate::Error::Contract(_))));
}

#[test]
fn nullspace_of_zero_and_projector() {
    let ns = nullspace(&CMatrix::zeros(3, 3), 1e-9).unwrap();
    assert_eq!(ns.cols(), 3);

    let p = CMatrix::two_by_two(ONE, ZERO, ZERO, ZERO);
    let ns = nullspace(&p, 1e-9).unwrap();
    assert_eq!(ns.cols(), 1);
    assert!(ns[(0, 0)].norm() < 1e-12);
    assert!((ns[(1, 0)].norm() - 1.0).abs() < 1e-12);
}

#[test]
fn nullspace_of_constructed_rank() {
    let mut r = rng();
    for &(rows, cols, rk) in &[(8usize, 6usize, 3usize), (10, 10, 7), (5, 9, 4)] {
        let left = r.complex_matrix(rows, rk);
        let right = r.complex_matrix(rk, cols);
        let a = left.mul(&right);
        let ns = nullspace(&a, 1e-9).unwrap();
        assert_eq!(ns.cols(), cols - rk, "rank {rk} in {rows}x{cols}");
        assert!(a.mul(&ns).fro_norm() < 1e-9 * a.fro_norm().max(1.0));
        // orthonormal columns
        assert!(ns.adjoint().mul(&ns).dist(&CMatrix::identity(cols - rk)) < 1e-10);
    }
}

#[test]
fn nullspace_dimension_invariant_under_left_multiplication() {
    let mut r = rng();
    let left = r.complex_matrix(7, 4);
    let right = r.complex_matrix(4, 7);
    let a = left.mul(&right);
    let base = nullspace(&a, 1e-9).unwrap().cols();
    for _ in 0..4 {
        let g = r.complex_matrix(7, 7); // generically invertible
        let ga = g.mul(&a);
        assert_eq!(nullspace(&ga, 1e-9).unwrap().cols(), base);
    }
}

#[test]
fn partial_trace_of_factorized_operator() {
    let mut r = rng();
    let l = r.complex_matrix(3, 3);
    let n = r.complex_matrix(4, 4);
    let m = kron(&l, &n).unwrap();
    let pt = partial_trace_left(&m, 3, 4).unwrap();
    assert!(pt.dist(&n.scale(l.trace())) < 1e-12 * m.fro_norm());

    let id = CMatrix::identity(12);
    let pt = partial_trace_left(&id, 3, 4).unwrap();
    assert!(pt.dist(&CMatrix::identity(4).scale(C64::new(3.0, 0.0))) < 1e-13);
}

#[test]
fn partial_trace_matches_index_loop_oracle() {
    let mut r = rng();
    let (dh, dk) = (3, 5);
    let m = r.complex_matrix(dh * dk, dh * dk);
    let pt = partial_trace_left(&m, dh, dk).unwrap();
    // independent index loop
    let mut oracle = CMatrix::zeros(dk, dk);
    for h in 0..dh {
        for k in 0..dk {
            for kp in 0..dk {
                oracle[(k, kp)] += m[(h * dk + k, h * dk + kp)];
            }
        }
    }
    assert_eq!(pt, oracle);
}

#[test]
fn partial_trace_shape_error() {
    let m = CMatrix::zeros(5, 5);
    assert!(matches!(partial_trace_left(&m, 2, 2), Err(crate::Error::Shape(_))));
}

#[test]
fn trace_identity_for_biunitary_conjugation() {
    // partial_trace_left(U (L⊗I) U*) = Tr(L)·I for biunitary U
    let mut r = rng();
    let d = 2;
    let n = 3;
    let g = r.haar_unitary(n);
    let ws: Vec<CMatrix> = (0..n).map(|_| r.haar_unitary(d)).collect();
    let mut u = BlockMatrix::zeros(n, n, d);
    for j in 0..n {
        for k in 0..n {
            u.set_block(j, k, &ws[k].scale(g[(j, k)]));
        }
    }
    assert!(is_biunitary(&u, 1e-10).unwrap().is_biunitary());
    let l = r.complex_matrix(n, n);
    let m = u.data().mul(&kron(&l, &CMatrix::identity(d)).unwrap()).mul(&u.data().adjoint());
    let pt = partial_trace_left(&m, n, d).unwrap();
    assert!(pt.dist(&CMatrix::identity(d).scale(l.trace())) < 1e-10 * l.fro_norm().max(1.0));
}

#[test]
fn positive_inverse_inverts() {
    let mut r = rng();
    let a = r.positive_with_eigenvalues(&[0.5, 1.5, 2.5, 4.0]);
    let inv = positive_inverse(&a, 1e-12).unwrap();
    assert!(a.mul(&inv).dist(&CMatrix::identity(4)) < 1e-11);
}

#[test]
fn determinant_of_unitary_has_unit_modulus() {
    let mut r = rng();
    let u = r.haar_unitary(5);
    assert!((determinant(&u).norm() - 1.0).abs() < 1e-12);
    let su = r.special_unitary(4);
    assert!((determinant(&su) - ONE).norm() < 1e-11);
}

#[test]
fn matmul_par_matches_seq() {
    let mut r = rng();
    let a = r.complex_matrix(37, 53);
    let b = r.complex_matrix(53, 41);
    let seq = matmul_seq(&a, &b);
    let via_mul = a.mul(&b);
    assert!(seq.dist(&via_mul) < 1e-12 * seq.fro_norm());
    #[cfg(feature = "parallel")]
    {
        let par = matmul_par(&a, &b);
        assert!(par.dist(&seq) < 1e-12 * seq.fro_norm());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn kron_mixed_product_property(seed in 0u64..1_000_000) {
        let mut r = SplitRng::new(seed);
        let (a, b) = (r.complex_matrix(3, 3), r.complex_matrix(2, 2));
        let (c, d) = (r.complex_matrix(3, 3), r.complex_matrix(2, 2));
        let lhs = kron(&a, &b).unwrap().mul(&kron(&c, &d).unwrap());
        let rhs = kron(&a.mul(&c), &b.mul(&d)).unwrap();
        let scale = lhs.fro_norm().max(1.0);
        prop_assert!(lhs.dist(&rhs) < 1e-12 * scale);
    }

    #[test]
    fn kron_is_associative_and_bilinear(seed in 0u64..1_000_000) {
        let mut r = SplitRng::new(seed);
        let a = r.complex_matrix(2, 3);
        let b = r.complex_matrix(3, 2);
        let c = r.complex_matrix(2, 2);
        let assoc_l = kron(&kron(&a, &b).unwrap(), &c).unwrap();
        let assoc_r = kron(&a, &kron(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(assoc_l.rows(), assoc_r.rows());
        let norm = assoc_l.fro_norm().max(1.0);
        prop_assert!(assoc_l.dist(&assoc_r) < 1e-13 * norm);

        let z = C64::new(r.range(-2.0, 2.0), r.range(-2.0, 2.0));
        let lin = kron(&a.scale(z), &b).unwrap();
        let lin2 = kron(&a, &b).unwrap().scale(z);
        prop_assert!(lin.dist(&lin2) < 1e-13 * norm);
    }

    #[test]
    fn adjoint_is_an_involution(seed in 0u64..1_000_000) {
        let mut r = SplitRng::new(seed);
        let a = r.complex_matrix(4, 6);
        prop_assert_eq!(a.adjoint().adjoint(), a);
    }
}
