use hadamard_tl::linalg::{hadamard_inverse, inverse, kron, mat_mul, unit_root, DenseMatrix, Tolerance};
use num_complex::Complex64;
use proptest::prelude::*;

fn entry() -> impl Strategy<Value = Complex64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = DenseMatrix> {
    prop::collection::vec(entry(), rows * cols).prop_map(move |v| DenseMatrix::from_vec(rows, cols, v).unwrap())
}

fn any_matrix(max: usize) -> impl Strategy<Value = DenseMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| matrix(r, c))
}

fn nonzero_matrix(n: usize) -> impl Strategy<Value = DenseMatrix> {
    prop::collection::vec((0.25..4.0f64, 0.0..std::f64::consts::TAU), n * n).prop_map(move |v| {
        let data = v.into_iter().map(|(r, t)| Complex64::from_polar(r, t)).collect();
        DenseMatrix::from_vec(n, n, data).unwrap()
    })
}

proptest! {
    #[test]
    fn kron_matches_index_formula(a in any_matrix(3), b in any_matrix(3)) {
        let k = kron(&a, &b);
        let (p, q) = b.shape();
        prop_assert_eq!(k.shape(), (a.rows() * p, a.cols() * q));
        for i in 0..k.rows() {
            for j in 0..k.cols() {
                prop_assert_eq!(k[(i, j)], a[(i / p, j / q)] * b[(i % p, j % q)]);
            }
        }
    }

    #[test]
    fn kron_is_associative(a in any_matrix(2), b in any_matrix(2), c in any_matrix(2)) {
        let left = kron(&kron(&a, &b), &c);
        let right = kron(&a, &kron(&b, &c));
        prop_assert!(left.max_diff(&right).unwrap() <= 1e-12);
    }

    #[test]
    fn kron_mixed_product(a in matrix(2, 2), b in matrix(3, 3), c in matrix(2, 2), d in matrix(3, 3)) {
        let lhs = mat_mul(&kron(&a, &b), &kron(&c, &d)).unwrap();
        let rhs = kron(&mat_mul(&a, &c).unwrap(), &mat_mul(&b, &d).unwrap());
        prop_assert!(lhs.max_diff(&rhs).unwrap() <= 1e-11);
    }

    #[test]
    fn inverse_round_trip(n in 1usize..=36, seed in any::<u64>()) {
        let m = DenseMatrix::from_fn(n, n, |i, j| {
            let h = (seed ^ ((i * 131 + j * 7919) as u64)).wrapping_mul(0x9E3779B97F4A7C15);
            let re = ((h >> 11) as f64 / (1u64 << 53) as f64) - 0.5;
            let im = ((h.rotate_left(17) >> 11) as f64 / (1u64 << 53) as f64) - 0.5;
            Complex64::new(re + if i == j { n as f64 } else { 0.0 }, im)
        });
        let inv = inverse(&m, &Tolerance::default()).unwrap();
        let id = DenseMatrix::identity(n);
        prop_assert!(mat_mul(&m, &inv).unwrap().max_diff(&id).unwrap() <= 1e-10);
        prop_assert!(mat_mul(&inv, &m).unwrap().max_diff(&id).unwrap() <= 1e-10);
    }

    #[test]
    fn hadamard_inverse_is_involution(m in (1usize..=5).prop_flat_map(nonzero_matrix)) {
        let twice = hadamard_inverse(&hadamard_inverse(&m).unwrap()).unwrap();
        prop_assert!(twice.max_diff(&m).unwrap() <= 1e-12);
    }

    #[test]
    fn pow_adds_exponents(a in -3i64..=3, b in -3i64..=3) {
        let tol = Tolerance::default();
        let m = DenseMatrix::from_rows(&[
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            [Complex64::new(-1.0, 0.5), Complex64::new(0.3, 0.0)],
        ]);
        let lhs = mat_mul(&m.pow(a, &tol).unwrap(), &m.pow(b, &tol).unwrap()).unwrap();
        prop_assert!(lhs.max_diff(&m.pow(a + b, &tol).unwrap()).unwrap() <= 1e-9);
    }

    #[test]
    fn unit_roots_are_roots(k in -50i64..50, m in 1u64..=64) {
        let z = unit_root(k, m);
        prop_assert!((z.norm() - 1.0).abs() <= 1e-15);
        prop_assert!((z.powu(m as u32) - Complex64::new(1.0, 0.0)).norm() <= 1e-12);
    }
}
