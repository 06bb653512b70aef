#![allow(dead_code)]

use hadamard_tl::hadamard::{apply_equivalence, f4_family, fourier, EquivalenceMove};
use hadamard_tl::linalg::{ComplexValue, DenseMatrix, Tolerance};
use hadamard_tl::master::{master_matrix, MasterSpec};
use hadamard_tl::tlrep::{reconstruct_m, TLAnsatz};
use num_complex::Complex64;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

pub fn tol() -> Tolerance {
    Tolerance::default()
}

pub fn random_phase<R: Rng>(rng: &mut R) -> ComplexValue {
    Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU))
}

/// Nonzero entry with modulus in `[1/2, 2]`.
pub fn random_nonzero<R: Rng>(rng: &mut R) -> ComplexValue {
    random_phase(rng) * 2f64.powf(rng.random_range(-1.0..=1.0))
}

pub fn random_perm<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Random equivalence move; unitary diagonals when `unitary` is set.
pub fn random_move<R: Rng>(rng: &mut R, n: usize, unitary: bool) -> EquivalenceMove {
    let draw = |rng: &mut R| if unitary { random_phase(rng) } else { random_nonzero(rng) };
    EquivalenceMove {
        left_perm: random_perm(rng, n),
        left_diag: (0..n).map(|_| draw(rng)).collect(),
        right_diag: (0..n).map(|_| draw(rng)).collect(),
        right_perm: random_perm(rng, n),
    }
}

/// A random GHM of size `n`: an equivalent of a Fourier or `F4(a)` matrix.
pub fn random_ghm<R: Rng>(rng: &mut R, n: usize) -> DenseMatrix {
    let seed = if n == 4 && rng.random_bool(0.5) {
        f4_family(random_nonzero(rng)).unwrap()
    } else {
        let ells: Vec<i64> = (1..n as i64).filter(|l| gcd(*l, n as i64) == 1).collect();
        fourier(n, *ells.choose(rng).unwrap_or(&1)).unwrap()
    };
    apply_equivalence(&seed, &random_move(rng, n, false)).unwrap()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Plain ansatz with `M` reconstructed from `spec` and the eigenvector matrix `h`.
pub fn ansatz_from_master(spec: &MasterSpec, h: &DenseMatrix, sites: usize) -> TLAnsatz {
    let m = reconstruct_m(&master_matrix(spec), h, spec.lambdas(), &tol()).unwrap();
    TLAnsatz::new(m, spec.exponents_i64(), sites).unwrap()
}
