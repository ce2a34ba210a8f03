//! Classical and quantum Fisher information, Cramér-Rao bound, shot-noise
//! and Heisenberg limits.

use nalgebra::{DMatrix, DVector};

use crate::config::Tolerances;
use crate::linalg::herm_eigen;
use crate::qstate::{variance, MixedState, PureState};
use crate::{Error, Result, C64};

const TOL: Tolerances = Tolerances::DEFAULT;

/// Discrete positive operator valued measure.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    elements: Vec<DMatrix<C64>>,
}

impl Povm {
    pub fn new(elements: Vec<DMatrix<C64>>) -> Result<Self> {
        let Some(first) = elements.first() else {
            return Err(Error::InvalidPovm("no elements".into()));
        };
        let dim = first.nrows();
        let mut sum = DMatrix::<C64>::zeros(dim, dim);
        for (k, e) in elements.iter().enumerate() {
            if e.nrows() != dim || e.ncols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: e.nrows().max(e.ncols()),
                });
            }
            let herm = (e - e.adjoint()).camax();
            if herm > TOL.psd {
                return Err(Error::InvalidPovm(format!("element {k} is not Hermitian")));
            }
            let (values, _) = herm_eigen(e);
            if values[0] < -TOL.psd {
                return Err(Error::InvalidPovm(format!(
                    "element {k} has eigenvalue {:e}",
                    values[0]
                )));
            }
            sum += e;
        }
        let dev = (sum - DMatrix::<C64>::identity(dim, dim)).camax();
        if dev > TOL.psd {
            return Err(Error::InvalidPovm(format!(
                "elements sum to identity only within {dev:e}"
            )));
        }
        Ok(Povm { elements })
    }

    /// Rank-one projectors onto the columns of a unitary.
    pub fn from_basis(basis: &DMatrix<C64>) -> Result<Self> {
        let elements = basis
            .column_iter()
            .map(|c| c * c.adjoint())
            .collect::<Vec<_>>();
        Self::new(elements)
    }

    /// Measurement in the computational basis.
    pub fn computational(n_qubits: usize) -> Result<Self> {
        let dim = 1usize << n_qubits;
        Self::from_basis(&DMatrix::identity(dim, dim))
    }

    /// Spectral projectors of a Hermitian observable, grouping eigenvalues
    /// closer than `1e-9`.
    pub fn spectral(observable: &DMatrix<C64>) -> Result<Self> {
        let (values, vectors) = herm_eigen(observable);
        let dim = values.len();
        let mut elements = Vec::new();
        let mut start = 0;
        while start < dim {
            let mut end = start + 1;
            while end < dim && (values[end] - values[start]).abs() < 1e-9 {
                end += 1;
            }
            let block = vectors.columns(start, end - start);
            elements.push(block * block.adjoint());
            start = end;
        }
        Self::new(elements)
    }

    pub fn elements(&self) -> &[DMatrix<C64>] {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.elements[0].nrows()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Cramér-Rao bound `Δθ ≥ 1/√(m F)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensitivityBound {
    pub fisher: f64,
    pub repetitions: u64,
    /// `f64::INFINITY` when the Fisher information vanishes.
    pub delta_theta: f64,
}

impl SensitivityBound {
    pub fn is_infinite(&self) -> bool {
        self.delta_theta.is_infinite()
    }
}

pub fn cramer_rao(fisher: f64, repetitions: u64) -> Result<SensitivityBound> {
    if fisher.is_nan() || fisher < 0.0 || !fisher.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "Fisher information must be finite and nonnegative, got {fisher}"
        )));
    }
    if repetitions == 0 {
        return Err(Error::InvalidParameter(
            "repetitions must be positive".into(),
        ));
    }
    let delta_theta = if fisher == 0.0 {
        f64::INFINITY
    } else {
        1.0 / (repetitions as f64 * fisher).sqrt()
    };
    Ok(SensitivityBound {
        fisher,
        repetitions,
        delta_theta,
    })
}

/// `1/√N`.
pub fn shot_noise_limit(n_qubits: usize) -> f64 {
    1.0 / (n_qubits as f64).sqrt()
}

/// `1/(√m N)`: Heisenberg limit with `m` and `N` fixed separately.
pub fn heisenberg_limit(repetitions: u64, n_qubits: usize) -> f64 {
    1.0 / ((repetitions as f64).sqrt() * n_qubits as f64)
}

/// `1/N_tot` with `N_tot = m N`: Heisenberg limit at fixed total resources.
pub fn heisenberg_limit_total(repetitions: u64, n_qubits: usize) -> f64 {
    1.0 / (repetitions as f64 * n_qubits as f64)
}

/// `F_Q = 4 ⟨ΔH²⟩` for pure states.
pub fn qfi_pure(state: &PureState, generator: &DMatrix<C64>) -> Result<f64> {
    Ok(4.0 * variance(state, generator)?)
}

/// `F_Q = 2 Σ_{jk} (λ_j − λ_k)²/(λ_j + λ_k) |⟨j|H|k⟩|²` over pairs with
/// `λ_j + λ_k` above threshold.
pub fn qfi_mixed(state: &MixedState, generator: &DMatrix<C64>) -> Result<f64> {
    if generator.nrows() != state.dim() || generator.ncols() != state.dim() {
        return Err(Error::DimensionMismatch {
            expected: state.dim(),
            found: generator.nrows().max(generator.ncols()),
        });
    }
    let spectrum = Spectrum::of(state)?;
    let applied = vec![spectrum.apply(|v| generator * v)];
    let gamma = spectrum.weighted_covariance(&applied);
    Ok((4.0 * gamma[(0, 0)]).max(0.0))
}

/// Support of a density matrix: eigenpairs whose eigenvalue could contribute
/// to a pair above the `λ_j + λ_k` threshold.
pub(crate) struct Spectrum {
    values: Vec<f64>,
    vectors: Vec<DVector<C64>>,
}

impl Spectrum {
    pub(crate) fn of(state: &MixedState) -> Result<Self> {
        let (values, vectors) = state.eigen();
        if values[0] < -TOL.psd {
            return Err(Error::NotPositive(values[0]));
        }
        let cutoff = 0.5 * TOL.eigen_pair;
        let mut out_values = Vec::new();
        let mut out_vectors = Vec::new();
        for (i, &v) in values.iter().enumerate() {
            if v > cutoff {
                out_values.push(v);
                out_vectors.push(vectors.column(i).into_owned());
            }
        }
        Ok(Spectrum {
            values: out_values,
            vectors: out_vectors,
        })
    }

    /// Applies an operator to every support vector.
    pub(crate) fn apply<F>(&self, op: F) -> Vec<DVector<C64>>
    where
        F: Fn(&DVector<C64>) -> DVector<C64>,
    {
        self.vectors.iter().map(op).collect()
    }

    /// `Γ_ab = ½ Σ_{lm} (λ_l − λ_m)²/(λ_l + λ_m) ⟨l|A_a|m⟩⟨m|A_b|l⟩` given
    /// `applied[a][l] = A_a|l⟩`.
    ///
    /// Pairs with `m` outside the support carry weight `λ_l`; their sum over
    /// `m` is folded into `⟨l|A_a (1 − P) A_b|l⟩` so only the support is
    /// ever touched.
    pub(crate) fn weighted_covariance(&self, applied: &[Vec<DVector<C64>>]) -> DMatrix<f64> {
        let r = self.values.len();
        let n_ops = applied.len();
        // elements[a][(l, m)] = ⟨l|A_a|m⟩
        let elements: Vec<DMatrix<C64>> = applied
            .iter()
            .map(|av| DMatrix::from_fn(r, r, |l, m| self.vectors[l].dotc(&av[m])))
            .collect();
        let mut weights = DMatrix::<f64>::zeros(r, r);
        for l in 0..r {
            for m in 0..r {
                let (a, b) = (self.values[l], self.values[m]);
                weights[(l, m)] = (a - b).powi(2) / (a + b);
            }
        }
        let mut out = DMatrix::<f64>::zeros(n_ops, n_ops);
        for a in 0..n_ops {
            for b in a..n_ops {
                let (ea, eb) = (&elements[a], &elements[b]);
                let mut inner = 0.0;
                let mut outer = C64::new(0.0, 0.0);
                for l in 0..r {
                    let mut within = C64::new(0.0, 0.0);
                    for m in 0..r {
                        let prod = ea[(l, m)] * eb[(m, l)];
                        inner += weights[(l, m)] * prod.re;
                        within += prod;
                    }
                    let full = applied[a][l].dotc(&applied[b][l]);
                    outer += (full - within) * self.values[l];
                }
                let value = 0.5 * inner + outer.re;
                out[(a, b)] = value;
                out[(b, a)] = value;
            }
        }
        out
    }
}

/// `exp(−i H θ)` for Hermitian `H`.
pub fn unitary_evolution(generator: &DMatrix<C64>, theta: f64) -> DMatrix<C64> {
    let (values, vectors) = herm_eigen(generator);
    let phases = DVector::from_iterator(
        values.len(),
        values.iter().map(|&v| C64::from_polar(1.0, -v * theta)),
    );
    &vectors * DMatrix::from_diagonal(&phases) * vectors.adjoint()
}

pub fn evolve_pure(state: &PureState, generator: &DMatrix<C64>, theta: f64) -> Result<PureState> {
    check_dim(state.dim(), generator)?;
    let u = unitary_evolution(generator, theta);
    Ok(PureState::from_vector_unchecked(
        state.n_qubits(),
        u * state.amplitudes(),
    ))
}

pub fn evolve_mixed(
    state: &MixedState,
    generator: &DMatrix<C64>,
    theta: f64,
) -> Result<MixedState> {
    check_dim(state.dim(), generator)?;
    let u = unitary_evolution(generator, theta);
    let m = &u * state.matrix() * u.adjoint();
    Ok(MixedState::from_matrix_unchecked(state.n_qubits(), m))
}

fn check_dim(dim: usize, op: &DMatrix<C64>) -> Result<()> {
    if op.nrows() != dim || op.ncols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: op.nrows().max(op.ncols()),
        });
    }
    Ok(())
}

fn trace_product(a: &DMatrix<C64>, b: &DMatrix<C64>) -> C64 {
    a.iter()
        .zip(b.transpose().iter())
        .fold(C64::new(0.0, 0.0), |acc, (x, y)| acc + x * y)
}

/// Outcome probabilities `P(ξ|θ)` and their analytic derivatives
/// `∂_θ P = tr(E_ξ · (−i)[H, ρ(θ)])`.
pub fn outcome_statistics(
    state: &MixedState,
    generator: &DMatrix<C64>,
    povm: &Povm,
    theta: f64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    check_dim(state.dim(), generator)?;
    if povm.dim() != state.dim() {
        return Err(Error::DimensionMismatch {
            expected: state.dim(),
            found: povm.dim(),
        });
    }
    if !theta.is_finite() {
        return Err(Error::InvalidParameter(format!("theta = {theta}")));
    }
    let rho = evolve_mixed(state, generator, theta)?;
    let rho = rho.matrix();
    let commutator = (generator * rho - rho * generator) * C64::new(0.0, -1.0);
    let probs = povm
        .elements()
        .iter()
        .map(|e| trace_product(e, rho).re)
        .collect();
    let derivs = povm
        .elements()
        .iter()
        .map(|e| trace_product(e, &commutator).re)
        .collect();
    Ok((probs, derivs))
}

/// `F = Σ_ξ (∂_θ P)² / P` for a discrete POVM.
pub fn classical_fisher(
    state: &MixedState,
    generator: &DMatrix<C64>,
    povm: &Povm,
    theta: f64,
) -> Result<f64> {
    let (probs, derivs) = outcome_statistics(state, generator, povm, theta)?;
    let mut fisher = 0.0;
    for (outcome, (&p, &d)) in probs.iter().zip(&derivs).enumerate() {
        if p < TOL.zero_probability {
            if d.abs() < TOL.zero_derivative {
                continue;
            }
            return Err(Error::SingularOutcome {
                outcome,
                derivative: d,
            });
        }
        fisher += d * d / p;
    }
    Ok(fisher)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{collective_spin_matrix, pauli_matrix, Axis, Direction};
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn noon(n: usize) -> PureState {
        let mut v = vec![c(0.0); 1 << n];
        v[0] = c(FRAC_1_SQRT_2);
        v[(1 << n) - 1] = c(FRAC_1_SQRT_2);
        PureState::new(v).unwrap()
    }

    #[test]
    fn qfi_pure_examples() {
        for n in 1..=6 {
            let jz = collective_spin_matrix(n, &Direction::z()).unwrap();
            let jx = collective_spin_matrix(n, &Direction::x()).unwrap();
            let nn = n as f64;
            assert!((qfi_pure(&noon(n), &jz).unwrap() - nn * nn).abs() < 1e-11);
            let zeros = PureState::basis(n, 0).unwrap();
            assert!((qfi_pure(&zeros, &jx).unwrap() - nn).abs() < 1e-12);
        }
    }

    #[test]
    fn qfi_mixed_examples() {
        let jz = collective_spin_matrix(3, &Direction::z()).unwrap();
        let f = qfi_mixed(&noon(3).to_density(), &jz).unwrap();
        assert!((f - 9.0).abs() < 1e-10);

        for n in 1..=3 {
            let d = Direction::normalize(nalgebra::Vector3::new(0.2, 0.7, -0.4)).unwrap();
            let j = collective_spin_matrix(n, &d).unwrap();
            let f = qfi_mixed(&MixedState::maximally_mixed(n).unwrap(), &j).unwrap();
            assert!(f.abs() < 1e-14);
        }

        // ½|0⟩⟨0| + ½|1⟩⟨1| with J_x: λ₁ = λ₂ so every pair weight vanishes
        let jx = collective_spin_matrix(1, &Direction::x()).unwrap();
        let rho = MixedState::maximally_mixed(1).unwrap();
        assert_eq!(qfi_mixed(&rho, &jx).unwrap(), 0.0);
    }

    #[test]
    fn qfi_mixed_bounded_by_variance() {
        // ρ = 0.7|+⟩⟨+| + 0.3|0⟩⟨0|, hand-computable QFI against J_z
        let plus = PureState::new(vec![c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)]).unwrap();
        let zero = PureState::basis(1, 0).unwrap();
        let rho = MixedState::mixture(0.7, &plus.to_density(), &zero.to_density()).unwrap();
        let jz = collective_spin_matrix(1, &Direction::z()).unwrap();
        let f = qfi_mixed(&rho, &jz).unwrap();
        assert!(f <= 4.0 * variance(&rho, &jz).unwrap() + 1e-12);
        // Bloch vector r = (0.7, 0, 0.3); for a qubit F_Q = r_⊥² w.r.t. the generator axis
        assert!((f - 0.49).abs() < 1e-12);
    }

    #[test]
    fn qfi_dimension_mismatch() {
        let jz = collective_spin_matrix(2, &Direction::z()).unwrap();
        assert!(qfi_pure(&noon(3), &jz).is_err());
        assert!(qfi_mixed(&noon(3).to_density(), &jz).is_err());
    }

    #[test]
    fn classical_fisher_zero_for_population_measurement() {
        let jz = collective_spin_matrix(2, &Direction::z()).unwrap();
        let povm = Povm::spectral(&jz).unwrap();
        assert_eq!(povm.len(), 3);
        let f = classical_fisher(&noon(2).to_density(), &jz, &povm, PI / 4.0).unwrap();
        assert!(f.abs() < 1e-14);
    }

    #[test]
    fn classical_fisher_saturates_qfi_for_plus_state() {
        let plus = PureState::new(vec![c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)]).unwrap();
        let h = pauli_matrix(1, 1, Axis::Z).unwrap() * c(0.5);
        let sy = pauli_matrix(1, 1, Axis::Y).unwrap();
        let povm = Povm::spectral(&sy).unwrap();
        // P(±) = (1 ± sin θ)/2 → F = cos²θ/(1 − sin²θ) = 1 at θ = 0
        let f = classical_fisher(&plus.to_density(), &h, &povm, 0.0).unwrap();
        assert!((f - 1.0).abs() < 1e-12);
        assert!((f - qfi_pure(&plus, &h).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn zero_probability_outcomes() {
        // |0⟩ rotated about x: P(1) = sin²(θ/2), ∂P(1) = sin(θ)/2
        let zero = PureState::basis(1, 0).unwrap().to_density();
        let h = pauli_matrix(1, 1, Axis::X).unwrap() * c(0.5);
        let povm = Povm::computational(1).unwrap();
        // θ = 0: both vanish, the term is skipped
        assert!(classical_fisher(&zero, &h, &povm, 0.0).unwrap().abs() < 1e-12);
        // θ = 1e-7: P ≈ 2.5e-15 below threshold while ∂P ≈ 5e-8 is not
        assert!(matches!(
            classical_fisher(&zero, &h, &povm, 1e-7),
            Err(Error::SingularOutcome { outcome: 1, .. })
        ));
        // away from the pole the Fisher information is exactly 1
        let f = classical_fisher(&zero, &h, &povm, 0.3).unwrap();
        assert!((f - 1.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_povms() {
        let half = DMatrix::<C64>::identity(2, 2) * c(0.5);
        assert!(matches!(
            Povm::new(vec![half.clone()]),
            Err(Error::InvalidPovm(_))
        ));
        let mut neg = DMatrix::<C64>::identity(2, 2);
        neg[(1, 1)] = c(-0.5);
        let fix = DMatrix::from_diagonal(&DVector::from_vec(vec![c(0.0), c(1.5)]));
        assert!(Povm::new(vec![neg, fix]).is_err());
        assert!(Povm::new(vec![]).is_err());
    }

    #[test]
    fn cramer_rao_examples() {
        for n in 1..=8u64 {
            let nn = n as f64;
            let b = cramer_rao(nn * nn, 1).unwrap();
            assert!((b.delta_theta - 1.0 / nn).abs() < 1e-15);
            for m in [1u64, 3, 10] {
                let b = cramer_rao(nn, m).unwrap();
                assert!((b.delta_theta - 1.0 / (m as f64 * nn).sqrt()).abs() < 1e-15);
            }
        }
        assert!(cramer_rao(0.0, 5).unwrap().is_infinite());
        assert!(cramer_rao(-1.0, 1).is_err());
        assert!(cramer_rao(1.0, 0).is_err());
    }

    #[test]
    fn limits() {
        assert_eq!(shot_noise_limit(4), 0.5);
        assert_eq!(heisenberg_limit(1, 4), 0.25);
        assert_eq!(heisenberg_limit(4, 4), 0.125);
        assert_eq!(heisenberg_limit_total(1, 4), 0.25);
        assert_eq!(heisenberg_limit_total(4, 4), 1.0 / 16.0);
    }
}
