//! Collective and local covariance matrices and the optimisation of the
//! phase-shift generator over them.
//!
//! `γ_C` is the symmetrised covariance of `(J_x, J_y, J_z)` and `γ_R` the one
//! of all `3N` single-qubit Paulis, so that `F_Q[ψ, J_n] = 4 nᵀγ_C n` and
//! `F_Q[ψ, ½Σ_k n_k·σ_k] = mᵀγ_R m` with `m` the stacked `n_k`. For mixed
//! states the same identities hold for `Γ_C` and `Γ_R`.

use nalgebra::{DMatrix, DVector, Matrix3, Vector3};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::config::Tolerances;
use crate::fisher::Spectrum;
use crate::linalg::{lex_max_unit, sym_eigen3_desc, sym_eigen_desc};
use crate::qstate::{
    apply_collective, apply_pauli, is_symmetric, lambda_of, Axis, Direction, MixedState, PureState,
    QuantumState,
};
use crate::{Error, Result, C64};

const TOL: Tolerances = Tolerances::DEFAULT;

/// Default number of random restarts for [`lu_optimize`].
pub const DEFAULT_RESTARTS: usize = 16;

const MAX_SWEEPS: usize = 20_000;

/// Whether a covariance matrix came from a pure or a mixed state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CovarianceSource {
    Pure,
    Mixed,
}

/// `γ_C` (pure) or `Γ_C` (mixed).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollectiveCovariance {
    matrix: Matrix3<f64>,
    source: CovarianceSource,
}

impl CollectiveCovariance {
    pub fn new(matrix: Matrix3<f64>, source: CovarianceSource) -> Result<Self> {
        check_symmetric(&DMatrix::from_column_slice(3, 3, matrix.as_slice()))?;
        Ok(CollectiveCovariance {
            matrix: (matrix + matrix.transpose()) * 0.5,
            source,
        })
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.matrix
    }

    pub fn source(&self) -> CovarianceSource {
        self.source
    }

    /// `4 nᵀγ_C n`.
    pub fn fisher(&self, direction: &Direction) -> f64 {
        let n = direction.components();
        4.0 * n.dot(&(self.matrix * n))
    }
}

/// `γ_R` (pure) or `Γ_R` (mixed) with rows ordered `(k, x), (k, y), (k, z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalCovariance {
    n_qubits: usize,
    matrix: DMatrix<f64>,
    source: CovarianceSource,
}

impl LocalCovariance {
    pub fn new(n_qubits: usize, matrix: DMatrix<f64>, source: CovarianceSource) -> Result<Self> {
        if n_qubits == 0 || matrix.nrows() != 3 * n_qubits || matrix.ncols() != 3 * n_qubits {
            return Err(Error::DimensionMismatch {
                expected: 3 * n_qubits,
                found: matrix.nrows().max(matrix.ncols()),
            });
        }
        check_symmetric(&matrix)?;
        let matrix = (&matrix + matrix.transpose()) * 0.5;
        Ok(LocalCovariance {
            n_qubits,
            matrix,
            source,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn source(&self) -> CovarianceSource {
        self.source
    }

    /// 3×3 block coupling qubits `k` and `l` (1-indexed).
    pub fn block(&self, k: usize, l: usize) -> Matrix3<f64> {
        self.matrix
            .fixed_view::<3, 3>(3 * (k - 1), 3 * (l - 1))
            .into_owned()
    }

    /// `mᵀγ_R m`.
    pub fn value(&self, assignment: &DirectionAssignment) -> f64 {
        let m = assignment.stacked();
        m.dot(&(&self.matrix * &m))
    }

    /// `¼ Σ_kl γ_R[k, l]`, the collective matrix of the same state.
    pub fn collective(&self) -> CollectiveCovariance {
        let mut sum = Matrix3::zeros();
        for k in 1..=self.n_qubits {
            for l in 1..=self.n_qubits {
                sum += self.block(k, l);
            }
        }
        CollectiveCovariance {
            matrix: sum * 0.25,
            source: self.source,
        }
    }

    fn blocks(&self) -> Vec<Matrix3<f64>> {
        let n = self.n_qubits;
        let mut out = Vec::with_capacity(n * n);
        for k in 1..=n {
            for l in 1..=n {
                out.push(self.block(k, l));
            }
        }
        out
    }
}

fn check_symmetric(m: &DMatrix<f64>) -> Result<()> {
    let dev = (m - m.transpose()).camax();
    if dev > TOL.symmetry || m.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "covariance matrix not symmetric (deviation {dev:e})"
        )));
    }
    Ok(())
}

/// One unit vector per qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionAssignment {
    directions: Vec<Direction>,
}

impl DirectionAssignment {
    pub fn new(directions: Vec<Direction>) -> Self {
        DirectionAssignment { directions }
    }

    pub fn uniform(n_qubits: usize, direction: Direction) -> Self {
        DirectionAssignment {
            directions: vec![direction; n_qubits],
        }
    }

    /// Splits a `3N` vector into blocks and rescales each onto the sphere.
    pub fn from_stacked(m: &DVector<f64>) -> Result<Self> {
        if !m.len().is_multiple_of(3) || m.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 3 * (m.len() / 3).max(1),
                found: m.len(),
            });
        }
        let directions = (0..m.len() / 3)
            .map(|k| Direction::normalize(Vector3::new(m[3 * k], m[3 * k + 1], m[3 * k + 2])))
            .collect::<Result<_>>()?;
        Ok(DirectionAssignment { directions })
    }

    pub fn directions(&self) -> &[Direction] {
        &self.directions
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn stacked(&self) -> DVector<f64> {
        DVector::from_iterator(
            3 * self.directions.len(),
            self.directions.iter().flat_map(|d| d.as_array()),
        )
    }
}

/// Optimal collective direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CluOptimum {
    /// Unit eigenvector of `λ_max`; the lexicographically largest one when
    /// the eigenvalue is degenerate.
    pub direction: Direction,
    /// `4 λ_max`.
    pub fq: f64,
    pub degenerate: bool,
    /// Dimension of the maximal eigenspace.
    pub multiplicity: usize,
}

/// Result of the LU search.
#[derive(Debug, Clone, PartialEq)]
pub struct LuOptimum {
    /// `N λ_max[γ_R]`.
    pub upper_bound: f64,
    pub best_value: f64,
    pub best_assignment: DirectionAssignment,
    /// The best value reaches the upper bound within the certification gap.
    pub certified: bool,
}

/// Block structure of `γ_R` for a permutation-symmetric pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricSpectrum {
    pub n_qubits: usize,
    /// `λ_max[A + (N−1)B]`.
    pub lambda1: f64,
    /// `λ_max[A − B]`.
    pub lambda2: f64,
    /// Maximal eigenvector of `A + (N−1)B`.
    pub n_max: Direction,
    /// Maximal eigenvector of `A − B`.
    pub n_max_relative: Direction,
    /// Eigenvalues of `A + (N−1)B`, decreasing.
    pub collective_eigs: [f64; 3],
    /// Eigenvalues of `A − B`, decreasing; each has multiplicity `N − 1` in `γ_R`.
    pub relative_eigs: [f64; 3],
    /// Eigenvalues of `(N−1)T − N s sᵀ`, decreasing.
    pub shifted_eigs: [f64; 3],
    /// `λ1` and `λ2` coincide within the degeneracy tolerance.
    pub tie: bool,
}

impl SymmetricSpectrum {
    /// Full `γ_R` spectrum, decreasing.
    pub fn full_spectrum(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self.collective_eigs.to_vec();
        for _ in 1..self.n_qubits {
            out.extend_from_slice(&self.relative_eigs);
        }
        out.sort_by(|a, b| b.total_cmp(a));
        out
    }
}

/// `Re⟨A_iψ|A_jψ⟩ − ⟨A_i⟩⟨A_j⟩`.
fn pure_covariance(psi: &DVector<C64>, applied: &[DVector<C64>]) -> DMatrix<f64> {
    let means: Vec<f64> = applied.iter().map(|a| psi.dotc(a).re).collect();
    let n = applied.len();
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j < i {
                        0.0
                    } else {
                        applied[i].dotc(&applied[j]).re - means[i] * means[j]
                    }
                })
                .collect()
        })
        .collect();
    DMatrix::from_fn(n, n, |i, j| if j >= i { rows[i][j] } else { rows[j][i] })
}

fn to_matrix3(m: &DMatrix<f64>) -> Matrix3<f64> {
    Matrix3::from_fn(|i, j| m[(i, j)])
}

/// `γ_C` of a pure state.
pub fn gamma_c(state: &PureState) -> CollectiveCovariance {
    let n = state.n_qubits();
    let psi = state.amplitudes();
    let applied: Vec<_> = Axis::ALL
        .iter()
        .map(|&a| apply_collective(psi, n, a))
        .collect();
    CollectiveCovariance {
        matrix: to_matrix3(&pure_covariance(psi, &applied)),
        source: CovarianceSource::Pure,
    }
}

/// `Γ_C` of a mixed state.
pub fn gamma_c_mixed(state: &MixedState) -> Result<CollectiveCovariance> {
    let n = state.n_qubits();
    let spectrum = Spectrum::of(state)?;
    let applied: Vec<_> = Axis::ALL
        .iter()
        .map(|&a| spectrum.apply(|v| apply_collective(v, n, a)))
        .collect();
    Ok(CollectiveCovariance {
        matrix: to_matrix3(&spectrum.weighted_covariance(&applied)),
        source: CovarianceSource::Mixed,
    })
}

/// `γ_R` of a pure state.
pub fn gamma_r(state: &PureState) -> LocalCovariance {
    let n = state.n_qubits();
    let psi = state.amplitudes();
    let applied: Vec<_> = (1..=n)
        .flat_map(|k| Axis::ALL.into_iter().map(move |a| (k, a)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(k, a)| apply_pauli(psi, n, k, a))
        .collect();
    LocalCovariance {
        n_qubits: n,
        matrix: pure_covariance(psi, &applied),
        source: CovarianceSource::Pure,
    }
}

/// `Γ_R` of a mixed state.
pub fn gamma_r_mixed(state: &MixedState) -> Result<LocalCovariance> {
    let n = state.n_qubits();
    let spectrum = Spectrum::of(state)?;
    let applied: Vec<_> = (1..=n)
        .flat_map(|k| Axis::ALL.into_iter().map(move |a| (k, a)))
        .map(|(k, a)| spectrum.apply(|v| apply_pauli(v, n, k, a)))
        .collect();
    Ok(LocalCovariance {
        n_qubits: n,
        matrix: spectrum.weighted_covariance(&applied),
        source: CovarianceSource::Mixed,
    })
}

/// Number of leading entries of a decreasing list equal to the first one
/// within the relative degeneracy tolerance.
fn leading_multiplicity(values: &[f64]) -> usize {
    let scale = values[0].abs().max(1.0);
    values
        .iter()
        .take_while(|&&v| values[0] - v <= TOL.degeneracy * scale)
        .count()
}

/// Deterministic representative of the maximal eigenspace.
fn top_direction(values: &[f64; 3], vectors: &Matrix3<f64>) -> (Direction, usize) {
    let mult = leading_multiplicity(values);
    let basis: Vec<DVector<f64>> = (0..mult)
        .map(|i| DVector::from_column_slice(vectors.column(i).as_slice()))
        .collect();
    let v = lex_max_unit(&basis, 1e-12);
    let dir =
        Direction::normalize(Vector3::new(v[0], v[1], v[2])).expect("eigenvectors have unit norm");
    (dir, mult)
}

/// Optimal collective generator: `F_Q = 4 λ_max[γ_C]`.
pub fn best_clu(cov: &CollectiveCovariance) -> CluOptimum {
    let (values, vectors) = sym_eigen3_desc(&cov.matrix);
    let (direction, multiplicity) = top_direction(&values, &vectors);
    CluOptimum {
        direction,
        fq: 4.0 * values[0],
        degenerate: multiplicity > 1,
        multiplicity,
    }
}

/// `N λ_max[γ_R]`, an upper bound on the LU-optimal Fisher information.
pub fn lu_upper_bound(cov: &LocalCovariance) -> f64 {
    let (values, _) = sym_eigen_desc(&cov.matrix);
    cov.n_qubits as f64 * values[0]
}

/// Maximises `nᵀA n + 2 bᵀn` over unit vectors `n`.
///
/// The stationary points satisfy `(μ − A) n = b`; the maximiser has the
/// largest multiplier `μ ≥ a_max`, found by bisection on the secular
/// equation `Σ c_i²/(μ − a_i)² = 1` in the eigenbasis of `A`.
pub(crate) fn solve_block(
    a: &Matrix3<f64>,
    b: &Vector3<f64>,
    current: &Vector3<f64>,
) -> Vector3<f64> {
    let (vals, q) = sym_eigen3_desc(a);
    let c = q.transpose() * b;
    let scale = vals[0].abs().max(vals[2].abs()).max(1.0);
    let top = vals
        .iter()
        .take_while(|&&v| vals[0] - v <= 1e-12 * scale)
        .count();

    // projection of the current iterate onto the top eigenspace, used to
    // break ties without jumping around
    let top_fallback = || {
        let mut u = Vector3::zeros();
        for i in 0..top {
            let col = q.column(i).into_owned();
            u += col * col.dot(current);
        }
        if u.norm() > 1e-8 {
            u.normalize()
        } else {
            q.column(0).into_owned()
        }
    };

    let cnorm = c.norm();
    if cnorm <= 1e-15 * scale {
        return top_fallback();
    }

    let c_top = (0..top).map(|i| c[i] * c[i]).sum::<f64>().sqrt();
    if c_top <= 1e-14 * cnorm {
        let rest: f64 = (top..3).map(|i| (c[i] / (vals[0] - vals[i])).powi(2)).sum();
        if rest <= 1.0 {
            let mut n = Vector3::zeros();
            for i in top..3 {
                n += q.column(i) * (c[i] / (vals[0] - vals[i]));
            }
            let u = top_fallback();
            return (n + u * (1.0 - rest).sqrt()).normalize();
        }
    }

    let secular =
        |mu: f64| -> f64 { (0..3).map(|i| (c[i] / (mu - vals[i])).powi(2)).sum::<f64>() - 1.0 };
    let (mut lo, mut hi) = (vals[0], vals[0] + cnorm);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if secular(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mu = hi;
    let mut n = Vector3::zeros();
    for i in 0..3 {
        n += q.column(i) * (c[i] / (mu - vals[i]));
    }
    let norm = n.norm();
    if norm > 0.0 && norm.is_finite() {
        n / norm
    } else {
        top_fallback()
    }
}

fn objective(blocks: &[Matrix3<f64>], m: &[Vector3<f64>]) -> f64 {
    let n = m.len();
    let mut total = 0.0;
    for k in 0..n {
        for l in 0..n {
            total += m[k].dot(&(blocks[k * n + l] * m[l]));
        }
    }
    total
}

/// Block-coordinate ascent from `m`; every step solves its block exactly, so
/// the objective never decreases.
fn ascend(blocks: &[Matrix3<f64>], mut m: Vec<Vector3<f64>>) -> (f64, Vec<Vector3<f64>>) {
    let n = m.len();
    let mut value = objective(blocks, &m);
    for _ in 0..MAX_SWEEPS {
        for k in 0..n {
            let mut b = Vector3::zeros();
            for l in 0..n {
                if l != k {
                    b += blocks[k * n + l] * m[l];
                }
            }
            m[k] = solve_block(&blocks[k * n + k], &b, &m[k]);
        }
        let next = objective(blocks, &m);
        let gain = next - value;
        value = next.max(value);
        if gain <= 1e-15 * value.abs().max(1.0) {
            break;
        }
    }
    canonical_sign(&mut m);
    (objective(blocks, &m), m)
}

/// `f(m) = f(−m)`; pick the sign whose first nonzero entry is positive.
fn canonical_sign(m: &mut [Vector3<f64>]) {
    let first = m.iter().flat_map(|v| v.iter()).find(|x| x.abs() > 1e-12);
    if let Some(&x) = first {
        if x < 0.0 {
            for v in m.iter_mut() {
                *v = -*v;
            }
        }
    }
}

fn random_unit(rng: &mut ChaCha8Rng) -> Vector3<f64> {
    loop {
        let v = Vector3::from_fn(|_, _| StandardNormal.sample(rng));
        let norm: f64 = v.norm();
        if norm > 1e-6 {
            return v / norm;
        }
    }
}

fn renormalize_blocks(v: &DVector<f64>, n: usize, fallback: Vector3<f64>) -> Vec<Vector3<f64>> {
    (0..n)
        .map(|k| {
            let b = Vector3::new(v[3 * k], v[3 * k + 1], v[3 * k + 2]);
            if b.norm() > 1e-12 {
                b.normalize()
            } else {
                fallback
            }
        })
        .collect()
}

/// `true` if `a` comes strictly after `b` in lexicographic order.
fn lex_greater(a: &[Vector3<f64>], b: &[Vector3<f64>]) -> bool {
    let fa = a.iter().flat_map(|v| v.iter());
    let fb = b.iter().flat_map(|v| v.iter());
    for (x, y) in fa.zip(fb) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Greater => return true,
            std::cmp::Ordering::Less => return false,
            std::cmp::Ordering::Equal => {}
        }
    }
    false
}

/// Searches the LU-optimal generator `max mᵀγ_R m` with unit blocks.
///
/// Runs block-coordinate ascent from `restarts` seeded random starts, from
/// the maximal eigenvector of `γ_R` with renormalised blocks, and from the
/// best collective direction repeated on every qubit. The last start makes
/// the result never worse than the CLU optimum. Restarts run in parallel;
/// restart `i` draws from stream `i` of a ChaCha8 generator seeded with
/// `seed`, and ties are broken by the lexicographic order of the assignment,
/// so the output does not depend on scheduling.
pub fn lu_optimize(cov: &LocalCovariance, restarts: usize, seed: u64) -> LuOptimum {
    let n = cov.n_qubits;
    let blocks = cov.blocks();
    let (values, vectors) = sym_eigen_desc(&cov.matrix);
    let upper_bound = n as f64 * values[0];

    let clu = best_clu(&cov.collective()).direction.components();
    let eigen_start = renormalize_blocks(&vectors.column(0).into_owned(), n, clu);

    let mut starts: Vec<Vec<Vector3<f64>>> = vec![eigen_start, vec![clu; n]];
    starts.extend((0..restarts).map(|i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        (0..n).map(|_| random_unit(&mut rng)).collect()
    }));

    let results: Vec<(f64, Vec<Vector3<f64>>)> =
        starts.into_par_iter().map(|m| ascend(&blocks, m)).collect();

    let mut best = &results[0];
    for r in &results[1..] {
        let better =
            r.0 > best.0 + 1e-12 || ((r.0 - best.0).abs() <= 1e-12 && lex_greater(&r.1, &best.1));
        if better {
            best = r;
        }
    }
    let best_value = best.0;
    let best_assignment = DirectionAssignment::new(
        best.1
            .iter()
            .map(|v| Direction::normalize(*v).expect("unit blocks"))
            .collect(),
    );
    LuOptimum {
        upper_bound,
        best_value,
        best_assignment,
        certified: best_value >= upper_bound - TOL.certification,
    }
}

/// Eigenstructure of `γ_R` for a symmetric pure state from the two-qubit
/// reduction alone: with `A = 𝟙 − s sᵀ` and `B = T − s sᵀ`, the spectrum is
/// that of `A + (N−1)B` together with `A − B` repeated `N − 1` times.
pub fn symmetric_spectrum(state: &PureState, require_symmetric: bool) -> Result<SymmetricSpectrum> {
    let n = state.n_qubits();
    if n < 2 {
        return Err(Error::InvalidParameter(
            "symmetric spectrum needs at least two qubits".into(),
        ));
    }
    if require_symmetric && !is_symmetric(state) {
        return Err(Error::NotSymmetric);
    }
    let lambda = lambda_of(&state.reduce(&[1, 2])?)?;
    let s = lambda.s();
    let t = lambda.t();
    let t = (t + t.transpose()) * 0.5;
    let sst = s * s.transpose();
    let a = Matrix3::identity() - sst;
    let b = t - sst;
    let nf = n as f64;

    let (collective_eigs, cvec) = sym_eigen3_desc(&(a + b * (nf - 1.0)));
    let (relative_eigs, rvec) = sym_eigen3_desc(&(a - b));
    let (shifted_eigs, _) = sym_eigen3_desc(&(t * (nf - 1.0) - sst * nf));
    let (n_max, _) = top_direction(&collective_eigs, &cvec);
    let (n_max_relative, _) = top_direction(&relative_eigs, &rvec);
    let (lambda1, lambda2) = (collective_eigs[0], relative_eigs[0]);
    let tie = (lambda1 - lambda2).abs() <= TOL.degeneracy * lambda1.abs().max(1.0);
    Ok(SymmetricSpectrum {
        n_qubits: n,
        lambda1,
        lambda2,
        n_max,
        n_max_relative,
        collective_eigs,
        relative_eigs,
        shifted_eigs,
        tie,
    })
}
