//! Seeded random states, rotations and measurements for tests and benches.

use nalgebra::{DMatrix, Matrix3, Quaternion, UnitQuaternion, Vector3};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::covariance::DirectionAssignment;
use crate::fisher::Povm;
use crate::linalg::herm_eigen;
use crate::qstate::{dicke_state, Direction, MixedState, PureState};
use crate::{Result, C64};

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(normal(rng), normal(rng))
}

/// Haar-distributed pure state.
pub fn random_pure<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Result<PureState> {
    let v: Vec<C64> = (0..1usize << n_qubits)
        .map(|_| complex_normal(rng))
        .collect();
    PureState::normalized(v)
}

/// Symmetric state with i.i.d. complex Gaussian Dicke coefficients.
pub fn random_symmetric<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Result<PureState> {
    let dim = 1usize << n_qubits;
    let mut v = nalgebra::DVector::<C64>::zeros(dim);
    for k in 0..=n_qubits {
        let m = k as f64 - n_qubits as f64 / 2.0;
        v += dicke_state(n_qubits, m)?.amplitudes() * complex_normal(rng);
    }
    PureState::normalized(v.iter().copied().collect())
}

/// Product of independent Haar-random qubits.
pub fn random_product_state<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Result<PureState> {
    let factors: Vec<[C64; 2]> = (0..n_qubits)
        .map(|_| {
            let (a, b) = (complex_normal(rng), complex_normal(rng));
            let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
            [a / norm, b / norm]
        })
        .collect();
    PureState::product(&factors)
}

/// `G G† / tr(G G†)` with a `2^N × rank` complex Gaussian `G`.
pub fn random_mixed<R: Rng + ?Sized>(
    n_qubits: usize,
    rank: usize,
    rng: &mut R,
) -> Result<MixedState> {
    let dim = 1usize << n_qubits;
    let g = DMatrix::from_fn(dim, rank.max(1), |_, _| complex_normal(rng));
    let rho = &g * g.adjoint();
    let trace = rho.trace();
    MixedState::new(rho / trace)
}

/// Haar-random rotation from a uniformly distributed unit quaternion.
pub fn random_rotation<R: Rng + ?Sized>(rng: &mut R) -> Matrix3<f64> {
    loop {
        let q = Quaternion::new(normal(rng), normal(rng), normal(rng), normal(rng));
        if q.norm() > 1e-6 {
            return *UnitQuaternion::from_quaternion(q)
                .to_rotation_matrix()
                .matrix();
        }
    }
}

/// Uniformly distributed unit vector.
pub fn random_direction<R: Rng + ?Sized>(rng: &mut R) -> Direction {
    loop {
        let v = Vector3::new(normal(rng), normal(rng), normal(rng));
        if v.norm() > 1e-6 {
            return Direction::normalize(v).expect("nonzero vector");
        }
    }
}

pub fn random_assignment<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> DirectionAssignment {
    DirectionAssignment::new((0..n_qubits).map(|_| random_direction(rng)).collect())
}

/// Hermitian matrix with complex Gaussian entries.
pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DMatrix<C64> {
    let g = DMatrix::from_fn(dim, dim, |_, _| complex_normal(rng));
    (&g + g.adjoint()) * C64::new(0.5, 0.0)
}

/// Random POVM `E_i = S^{-1/2} A_i S^{-1/2}` from positive `A_i = G_i G_i†`.
pub fn random_povm<R: Rng + ?Sized>(dim: usize, outcomes: usize, rng: &mut R) -> Result<Povm> {
    let raw: Vec<DMatrix<C64>> = (0..outcomes.max(1))
        .map(|_| {
            let g = DMatrix::from_fn(dim, dim, |_, _| complex_normal(rng));
            &g * g.adjoint()
        })
        .collect();
    let sum = raw
        .iter()
        .fold(DMatrix::<C64>::zeros(dim, dim), |acc, a| acc + a);
    let (values, vectors) = herm_eigen(&sum);
    let inv_sqrt = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        dim,
        values.iter().map(|&v| C64::new(1.0 / v.sqrt(), 0.0)),
    ));
    let s = &vectors * inv_sqrt * vectors.adjoint();
    let elements = raw
        .iter()
        .map(|a| {
            let e = &s * a * &s;
            (&e + e.adjoint()) * C64::new(0.5, 0.0)
        })
        .collect();
    Povm::new(elements)
}
