//! Usefulness of pure states for sub-shot-noise interferometry.
//!
//! For symmetric states the verdict follows from the two-qubit reduction:
//! every symmetric entangled state beats the shot-noise limit with a suitable
//! collective generator unless it is, up to a common rotation, a GHZ-type
//! superposition `√q|0…0⟩ + e^{iφ}√(1−q)|1…1⟩` with `q` close to 0 or 1. LU
//! operations never help symmetric states beyond the CLU optimum.

use nalgebra::{Matrix2, Matrix3, Rotation3, Vector3};

use crate::config::Tolerances;
use crate::covariance::{
    best_clu, gamma_c, gamma_r, gamma_r_mixed, lu_optimize, symmetric_spectrum, DEFAULT_RESTARTS,
};
use crate::qstate::{
    apply_local_rotations, is_pure_entangled, is_symmetric, lambda_of, Direction, LocalRotationSet,
    MixedState, PureState, QuantumState,
};
use crate::statelib::ghz_q;
use crate::{Error, Result, C64};

const TOL: Tolerances = Tolerances::DEFAULT;

/// Optimal collective direction, or a representative of a degenerate set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OptimalDirection {
    Unique(Direction),
    Degenerate {
        representative: Direction,
        multiplicity: usize,
    },
}

impl OptimalDirection {
    pub fn representative(&self) -> Direction {
        match *self {
            OptimalDirection::Unique(d) => d,
            OptimalDirection::Degenerate { representative, .. } => representative,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, OptimalDirection::Degenerate { .. })
    }
}

/// Whether the state is a rotated GHZ-type superposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FamilyDetection {
    None,
    GhzQ { q: f64, phi: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct UsefulnessVerdict {
    pub n_qubits: usize,
    pub useful_clu: bool,
    pub useful_lu: bool,
    pub fq_clu: f64,
    pub fq_lu: f64,
    pub optimal_direction: OptimalDirection,
    pub family_detected: FamilyDetection,
    /// `F_Q` equals `N` within the boundary tolerance.
    pub boundary: bool,
    /// The collective and relative block eigenvalues tie, so a
    /// non-collective generator reaches the same optimum.
    pub lu_tie: bool,
}

fn require_symmetric(state: &PureState) -> Result<()> {
    if !is_symmetric(state) {
        return Err(Error::NotSymmetric);
    }
    if state.n_qubits() < 2 {
        return Err(Error::InvalidParameter(
            "at least two qubits are required".into(),
        ));
    }
    Ok(())
}

/// Two-qubit correlator test `⟨σ_n⊗σ_n⟩ > N/(N−1) ⟨σ_n⟩²`, equivalent to
/// `F_Q[ψ, J_n] > N` for symmetric states.
pub fn symmetric_condition(state: &PureState, direction: &Direction) -> Result<bool> {
    require_symmetric(state)?;
    let lambda = lambda_of(&state.reduce(&[1, 2])?)?;
    let n = direction.components();
    let nf = state.n_qubits() as f64;
    let corr = n.dot(&(lambda.t() * n));
    let mean = n.dot(&lambda.s());
    Ok(corr - nf / (nf - 1.0) * mean * mean > 1e-10)
}

/// CLU rotation taking the Bloch vector to the nearer pole, or diagonalizing
/// `T` (eigenvalues decreasing along x, y, z) when the Bloch vector vanishes.
fn canonical_rotation(s: &Vector3<f64>, t: &Matrix3<f64>) -> Matrix3<f64> {
    if s.norm() > TOL.family {
        let target = if s.z < 0.0 {
            -Vector3::z()
        } else {
            Vector3::z()
        };
        return Rotation3::rotation_between(s, &target)
            .map(|r| *r.matrix())
            .unwrap_or_else(Matrix3::identity);
    }
    let (_, vectors) = crate::linalg::sym_eigen3_desc(t);
    let mut r = vectors.transpose();
    if r.determinant() < 0.0 {
        r.row_mut(2).neg_mut();
    }
    r
}

fn detect_family(state: &PureState) -> Result<FamilyDetection> {
    let n = state.n_qubits();
    let lambda = lambda_of(&state.reduce(&[1, 2])?)?;
    let s = lambda.s();
    let t = lambda.t();
    let r = canonical_rotation(&s, &t);
    let tc = r * t * r.transpose();
    let block_vanishes = [(0, 0), (0, 1), (1, 0), (1, 1)]
        .iter()
        .all(|&(i, j)| tc[(i, j)].abs() < TOL.family);
    if !block_vanishes {
        return Ok(FamilyDetection::None);
    }
    let delta = (r * s).z;
    let q = (0.5 * (1.0 + delta)).clamp(0.0, 1.0);
    let rotated = apply_local_rotations(state, &LocalRotationSet::uniform(n, r)?)?;
    let a0 = rotated.amplitude(0);
    let a1 = rotated.amplitude(rotated.dim() - 1);
    let phi = if a0.norm() > 1e-8 && a1.norm() > 1e-8 {
        (a1 * a0.conj()).arg()
    } else {
        0.0
    };
    Ok(FamilyDetection::GhzQ { q, phi })
}

/// Verdict for a symmetric entangled pure state.
pub fn classify_symmetric(state: &PureState) -> Result<UsefulnessVerdict> {
    require_symmetric(state)?;
    if !is_pure_entangled(state) {
        return Err(Error::Separable);
    }
    let n = state.n_qubits();
    let nf = n as f64;
    let clu = best_clu(&gamma_c(state));
    let spectrum = symmetric_spectrum(state, false)?;
    let family = detect_family(state)?;

    let fq_clu = clu.fq;
    let fq_lu = nf * spectrum.lambda1;
    let boundary = (fq_clu - nf).abs() <= TOL.boundary;
    let family_excluded = match family {
        FamilyDetection::GhzQ { q, .. } => !ghz_q_useful(n, q)?,
        FamilyDetection::None => false,
    };
    let useful_clu = !family_excluded && fq_clu > nf + TOL.boundary;
    let optimal_direction = if clu.degenerate {
        OptimalDirection::Degenerate {
            representative: clu.direction,
            multiplicity: clu.multiplicity,
        }
    } else {
        OptimalDirection::Unique(clu.direction)
    };
    Ok(UsefulnessVerdict {
        n_qubits: n,
        useful_clu,
        useful_lu: useful_clu,
        fq_clu,
        fq_lu,
        optimal_direction,
        family_detected: family,
        boundary,
        lu_tie: spectrum.tie,
    })
}

/// Closed-form usefulness of `ghz_q(N, q, φ)`, independent of `φ`.
pub fn ghz_q_useful(n_qubits: usize, q: f64) -> Result<bool> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidParameter(format!("q = {q} outside [0, 1]")));
    }
    match n_qubits {
        0 | 1 => Err(Error::InvalidParameter(
            "at least two qubits are required".into(),
        )),
        2 => Ok(q > 0.0 && q < 1.0),
        n => {
            let nf = n as f64;
            Ok((q - 0.5).powi(2) < (nf - 1.0) / (4.0 * nf) - 1e-12)
        }
    }
}

/// `e(ρ) = max[0, max_LU F_Q − N]` bracketed by the LU search and the
/// eigenvalue bound.
pub fn usefulness_measure(state: &MixedState, restarts: usize, seed: u64) -> Result<(f64, f64)> {
    let cov = gamma_r_mixed(state)?;
    Ok(bracket(state.n_qubits(), lu_optimize(&cov, restarts, seed)))
}

/// [`usefulness_measure`] for pure states without forming the density matrix.
pub fn usefulness_measure_pure(state: &PureState, restarts: usize, seed: u64) -> (f64, f64) {
    bracket(
        state.n_qubits(),
        lu_optimize(&gamma_r(state), restarts, seed),
    )
}

fn bracket(n_qubits: usize, opt: crate::covariance::LuOptimum) -> (f64, f64) {
    let nf = n_qubits as f64;
    let upper = (opt.upper_bound - nf).max(0.0);
    let lower = (opt.best_value - nf).max(0.0).min(upper);
    (lower, upper)
}

/// Local filtering of one qubit of `ghz_q(N, q, φ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LoccDemo {
    pub input: PureState,
    /// Diagonal Kraus operators acting on qubit 1.
    pub kraus: [Matrix2<C64>; 2],
    pub branch1: (f64, PureState),
    pub branch2: (f64, PureState),
    /// Usefulness measure of the input and of both branches.
    pub e_input: f64,
    pub e_branch1: f64,
    pub e_branch2: f64,
}

impl LoccDemo {
    /// Probability-weighted usefulness after filtering.
    pub fn average_e(&self) -> f64 {
        self.branch1.0 * self.e_branch1 + self.branch2.0 * self.e_branch2
    }

    /// The filter increases the usefulness measure on average.
    pub fn increases_on_average(&self) -> bool {
        self.e_input < self.average_e()
    }
}

pub fn locc_filter_demo(n_qubits: usize, q: f64, phi: f64) -> Result<LoccDemo> {
    if n_qubits < 2 {
        return Err(Error::InvalidParameter(
            "at least two qubits are required".into(),
        ));
    }
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::InvalidParameter(format!("q = {q} outside (0, 1)")));
    }
    let input = ghz_q(n_qubits, q, phi)?;
    let (a, b) = (C64::new((1.0 - q).sqrt(), 0.0), C64::new(q.sqrt(), 0.0));
    let zero = C64::new(0.0, 0.0);
    let kraus = [
        Matrix2::new(a, zero, zero, b),
        Matrix2::new(b, zero, zero, a),
    ];
    let mask = 1usize << (n_qubits - 1);
    let branch = |k: &Matrix2<C64>| -> Result<(f64, PureState)> {
        let mut v = input.amplitudes().clone();
        for (i, x) in v.iter_mut().enumerate() {
            *x *= if i & mask == 0 { k[(0, 0)] } else { k[(1, 1)] };
        }
        let p = v.norm_squared();
        Ok((p, PureState::normalized(v.iter().copied().collect())?))
    };
    let branch1 = branch(&kraus[0])?;
    let branch2 = branch(&kraus[1])?;
    let e = |s: &PureState| usefulness_measure_pure(s, DEFAULT_RESTARTS, 0).0;
    Ok(LoccDemo {
        e_input: e(&input),
        e_branch1: e(&branch1.1),
        e_branch2: e(&branch2.1),
        input,
        kraus,
        branch1,
        branch2,
    })
}
