//! Numerical tolerances and dimension caps.

/// Every numerical threshold used by the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Norm of pure states, Hermiticity and trace of density matrices.
    pub norm: f64,
    /// Smallest eigenvalue a density matrix may have.
    pub psd: f64,
    /// Imaginary residue accepted on expectation values.
    pub imaginary: f64,
    /// Amplitude invariance under transpositions.
    pub symmetry: f64,
    /// Linear entropy above which a single-qubit reduction counts as mixed.
    pub entanglement: f64,
    /// Pairs of density-matrix eigenvalues whose sum is below this are skipped.
    pub eigen_pair: f64,
    /// Relative gap under which eigenvalues are reported as degenerate.
    pub degeneracy: f64,
    /// Gap between the LU bound and the best value that counts as certified.
    pub certification: f64,
    /// Margin around F_Q = N that is reported as the shot-noise boundary.
    pub boundary: f64,
    /// Threshold on the x–y block of the canonical correlation matrix.
    pub family: f64,
    /// Outcome probability below which a Fisher term is considered singular.
    pub zero_probability: f64,
    /// Derivative below which a zero-probability outcome is skipped.
    pub zero_derivative: f64,
    /// Orthogonality and determinant checks on rotation matrices.
    pub rotation: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        norm: 1e-12,
        psd: 1e-10,
        imaginary: 1e-10,
        symmetry: 1e-10,
        entanglement: 1e-9,
        eigen_pair: 1e-12,
        degeneracy: 1e-9,
        certification: 1e-7,
        boundary: 1e-9,
        family: 1e-9,
        zero_probability: 1e-12,
        zero_derivative: 1e-9,
        rotation: 1e-10,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Caps on the number of qubits for dense representations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Pure states (vectors of length 2^N).
    pub max_pure_qubits: usize,
    /// Density matrices and dense operators (2^N × 2^N).
    pub max_mixed_qubits: usize,
    /// Largest N for which the Cabello singlet is built combinatorially.
    pub max_singlet_qubits: usize,
}

impl Limits {
    pub const DEFAULT: Limits = Limits {
        max_pure_qubits: 14,
        max_mixed_qubits: 10,
        max_singlet_qubits: 12,
    };

    pub fn check_pure(&self, n_qubits: usize) -> crate::Result<()> {
        check(n_qubits, self.max_pure_qubits)
    }

    pub fn check_mixed(&self, n_qubits: usize) -> crate::Result<()> {
        check(n_qubits, self.max_mixed_qubits)
    }
}

impl Default for Limits {
    fn default() -> Self {
        Self::DEFAULT
    }
}

fn check(n_qubits: usize, cap: usize) -> crate::Result<()> {
    if n_qubits > cap {
        Err(crate::Error::DimensionCap { n_qubits, cap })
    } else {
        Ok(())
    }
}

/// Tolerances and limits together.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Config {
    pub tol: Tolerances,
    pub limits: Limits,
}

impl Config {
    pub const DEFAULT: Config = Config {
        tol: Tolerances::DEFAULT,
        limits: Limits::DEFAULT,
    };
}
