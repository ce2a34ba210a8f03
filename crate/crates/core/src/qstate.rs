//! Dense N-qubit states, Pauli and collective spin operators.
//!
//! Qubit `k` (1-indexed) lives at bit position `n_qubits - k` of the basis
//! index, so qubit 1 is the most significant bit. `|0⟩` is the `σ_z = +1`
//! eigenstate.

use std::fmt;

use nalgebra::{DMatrix, DVector, Matrix2, Matrix3, Matrix4, Rotation3, UnitQuaternion, Vector3};

use crate::config::{Limits, Tolerances};
use crate::linalg::herm_eigen;
use crate::{Error, Result, C64};

const TOL: Tolerances = Tolerances::DEFAULT;
const ZERO: C64 = C64::new(0.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Pauli axis, indexed 1..=3 as x, y, z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// Index in 1..=3.
    pub fn index(self) -> usize {
        self.offset() + 1
    }

    /// Index in 0..3.
    pub fn offset(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn from_offset(i: usize) -> Option<Axis> {
        Axis::ALL.get(i).copied()
    }

    pub fn unit(self) -> Vector3<f64> {
        let mut v = Vector3::zeros();
        v[self.offset()] = 1.0;
        v
    }

    pub fn matrix(self) -> Matrix2<C64> {
        let o = C64::new(1.0, 0.0);
        match self {
            Axis::X => Matrix2::new(ZERO, o, o, ZERO),
            Axis::Y => Matrix2::new(ZERO, -I, I, ZERO),
            Axis::Z => Matrix2::new(o, ZERO, ZERO, -o),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

/// Unit 3-vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction(Vector3<f64>);

impl Direction {
    pub fn new(v: Vector3<f64>) -> Result<Self> {
        let norm = v.norm();
        if (norm - 1.0).abs() > TOL.norm || !norm.is_finite() {
            return Err(Error::InvalidDirection(norm));
        }
        Ok(Direction(v))
    }

    /// Rescale a nonzero vector onto the sphere.
    pub fn normalize(v: Vector3<f64>) -> Result<Self> {
        let norm = v.norm();
        if norm < 1e-300 || !norm.is_finite() {
            return Err(Error::InvalidDirection(norm));
        }
        Ok(Direction(v / norm))
    }

    pub fn axis(axis: Axis) -> Self {
        Direction(axis.unit())
    }

    pub fn x() -> Self {
        Self::axis(Axis::X)
    }

    pub fn y() -> Self {
        Self::axis(Axis::Y)
    }

    pub fn z() -> Self {
        Self::axis(Axis::Z)
    }

    pub fn components(&self) -> Vector3<f64> {
        self.0
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.0[0], self.0[1], self.0[2]]
    }
}

impl std::ops::Neg for Direction {
    type Output = Direction;

    fn neg(self) -> Direction {
        Direction(-self.0)
    }
}

/// One proper rotation per qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalRotationSet {
    rotations: Vec<Matrix3<f64>>,
}

impl LocalRotationSet {
    pub fn new(rotations: Vec<Matrix3<f64>>) -> Result<Self> {
        for (k, o) in rotations.iter().enumerate() {
            let dev = (o.transpose() * o - Matrix3::identity()).camax();
            if dev > TOL.rotation {
                return Err(Error::InvalidRotation(format!(
                    "rotation {} deviates from orthogonality by {dev:e}",
                    k + 1
                )));
            }
            let det = o.determinant();
            if (det - 1.0).abs() > TOL.rotation {
                return Err(Error::InvalidRotation(format!(
                    "rotation {} has determinant {det}",
                    k + 1
                )));
            }
        }
        Ok(LocalRotationSet { rotations })
    }

    /// The same rotation on every qubit (a CLU operation).
    pub fn uniform(n_qubits: usize, rotation: Matrix3<f64>) -> Result<Self> {
        Self::new(vec![rotation; n_qubits])
    }

    pub fn identity(n_qubits: usize) -> Self {
        LocalRotationSet {
            rotations: vec![Matrix3::identity(); n_qubits],
        }
    }

    pub fn rotations(&self) -> &[Matrix3<f64>] {
        &self.rotations
    }

    pub fn len(&self) -> usize {
        self.rotations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rotations.is_empty()
    }
}

/// SU(2) lift `U` of `O` with `U† σ⃗ U = O σ⃗`.
///
/// The sign is fixed so that `Re U₀₀ ≥ 0`, and `Im U₀₀ ≥ 0` when the real
/// part vanishes.
pub fn su2_lift(rotation: &Matrix3<f64>) -> Matrix2<C64> {
    let q = UnitQuaternion::from_rotation_matrix(&Rotation3::from_matrix_unchecked(*rotation));
    let (w, x, y, z) = (q.w, q.i, q.j, q.k);
    // U = w·1 − i(x σx + y σy + z σz)
    let mut u = Matrix2::new(
        C64::new(w, -z),
        C64::new(-y, -x),
        C64::new(y, -x),
        C64::new(w, z),
    );
    let u00 = u[(0, 0)];
    if u00.re < -1e-15 || (u00.re.abs() <= 1e-15 && u00.im < 0.0) {
        u = -u;
    }
    u
}

/// Unit-norm amplitude vector over `2^n_qubits` basis states.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: DVector<C64>,
}

impl PureState {
    /// Validate the norm against the default tolerance.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        Self::with_limits(amplitudes, &Limits::DEFAULT)
    }

    pub fn with_limits(amplitudes: Vec<C64>, limits: &Limits) -> Result<Self> {
        let n_qubits = qubits_for_len(amplitudes.len())?;
        limits.check_pure(n_qubits)?;
        let amplitudes = DVector::from_vec(amplitudes);
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > TOL.norm {
            return Err(Error::NotNormalized(norm));
        }
        Ok(PureState {
            n_qubits,
            amplitudes,
        })
    }

    /// Normalize arbitrary nonzero amplitudes.
    pub fn normalized(amplitudes: Vec<C64>) -> Result<Self> {
        let n_qubits = qubits_for_len(amplitudes.len())?;
        Limits::DEFAULT.check_pure(n_qubits)?;
        let v = DVector::from_vec(amplitudes);
        let norm = v.norm();
        if norm < 1e-300 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm));
        }
        Ok(PureState {
            n_qubits,
            amplitudes: v / C64::new(norm, 0.0),
        })
    }

    pub(crate) fn from_vector_unchecked(n_qubits: usize, amplitudes: DVector<C64>) -> Self {
        PureState {
            n_qubits,
            amplitudes,
        }
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::InvalidParameter("n_qubits must be positive".into()));
        }
        Limits::DEFAULT.check_pure(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::InvalidParameter(format!(
                "basis index {index} out of range for {n_qubits} qubits"
            )));
        }
        let mut v = DVector::zeros(dim);
        v[index] = C64::new(1.0, 0.0);
        Ok(PureState {
            n_qubits,
            amplitudes: v,
        })
    }

    /// Tensor product of single-qubit states, qubit 1 first.
    pub fn product(factors: &[[C64; 2]]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidParameter("empty product".into()));
        }
        Limits::DEFAULT.check_pure(factors.len())?;
        let mut v = DVector::from_element(1, C64::new(1.0, 0.0));
        for f in factors {
            let norm = (f[0].norm_sqr() + f[1].norm_sqr()).sqrt();
            let single = DVector::from_vec(vec![f[0] / norm, f[1] / norm]);
            v = v.kronecker(&single);
        }
        Ok(PureState {
            n_qubits: factors.len(),
            amplitudes: v,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amplitudes[index]
    }

    /// `σ_axis` on `qubit` (1-indexed) applied to the amplitudes.
    pub fn apply_pauli(&self, qubit: usize, axis: Axis) -> DVector<C64> {
        apply_pauli(&self.amplitudes, self.n_qubits, qubit, axis)
    }

    /// `J_axis |ψ⟩`.
    pub fn apply_collective(&self, axis: Axis) -> DVector<C64> {
        apply_collective(&self.amplitudes, self.n_qubits, axis)
    }

    /// `|⟨φ|ψ⟩|`, which is 1 iff the states agree up to a global phase.
    pub fn overlap(&self, other: &PureState) -> f64 {
        self.amplitudes.dotc(&other.amplitudes).norm()
    }

    /// Largest amplitude distance after removing the best global phase.
    pub fn distance_up_to_phase(&self, other: &PureState) -> f64 {
        let ip = other.amplitudes.dotc(&self.amplitudes);
        let phase = if ip.norm() > 1e-300 {
            ip / ip.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        (&self.amplitudes - &other.amplitudes * phase).camax()
    }

    pub fn to_density(&self) -> MixedState {
        MixedState {
            n_qubits: self.n_qubits,
            matrix: &self.amplitudes * self.amplitudes.adjoint(),
        }
    }
}

fn qubits_for_len(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(len));
    }
    Ok(len.trailing_zeros() as usize)
}

#[inline]
pub(crate) fn qubit_mask(n_qubits: usize, qubit: usize) -> usize {
    1usize << (n_qubits - qubit)
}

pub(crate) fn apply_pauli(
    v: &DVector<C64>,
    n_qubits: usize,
    qubit: usize,
    axis: Axis,
) -> DVector<C64> {
    let mask = qubit_mask(n_qubits, qubit);
    let mut out = DVector::zeros(v.len());
    match axis {
        Axis::X => {
            for i in 0..v.len() {
                out[i] = v[i ^ mask];
            }
        }
        Axis::Y => {
            for i in 0..v.len() {
                // ⟨0|σy|1⟩ = −i, ⟨1|σy|0⟩ = i
                out[i] = if i & mask == 0 {
                    -I * v[i ^ mask]
                } else {
                    I * v[i ^ mask]
                };
            }
        }
        Axis::Z => {
            for i in 0..v.len() {
                out[i] = if i & mask == 0 { v[i] } else { -v[i] };
            }
        }
    }
    out
}

pub(crate) fn apply_collective(v: &DVector<C64>, n_qubits: usize, axis: Axis) -> DVector<C64> {
    let mut out = DVector::zeros(v.len());
    for k in 1..=n_qubits {
        out += apply_pauli(v, n_qubits, k, axis);
    }
    out * C64::new(0.5, 0.0)
}

/// Hermitian, unit-trace, positive-semidefinite density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedState {
    n_qubits: usize,
    matrix: DMatrix<C64>,
}

impl MixedState {
    pub fn new(matrix: DMatrix<C64>) -> Result<Self> {
        Self::with_limits(matrix, &Limits::DEFAULT)
    }

    pub fn with_limits(matrix: DMatrix<C64>, limits: &Limits) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        let n_qubits = qubits_for_len(matrix.nrows())?;
        limits.check_mixed(n_qubits)?;
        let herm_dev = (&matrix - matrix.adjoint()).camax();
        if herm_dev > TOL.norm {
            return Err(Error::NotHermitian(herm_dev));
        }
        let matrix = (&matrix + matrix.adjoint()) * C64::new(0.5, 0.0);
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > TOL.norm {
            return Err(Error::NotUnitTrace(trace));
        }
        let (values, _) = herm_eigen(&matrix);
        if values[0] < -TOL.psd {
            return Err(Error::NotPositive(values[0]));
        }
        Ok(MixedState { n_qubits, matrix })
    }

    pub(crate) fn from_matrix_unchecked(n_qubits: usize, matrix: DMatrix<C64>) -> Self {
        MixedState { n_qubits, matrix }
    }

    pub fn maximally_mixed(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::InvalidParameter("n_qubits must be positive".into()));
        }
        Limits::DEFAULT.check_mixed(n_qubits)?;
        let dim = 1usize << n_qubits;
        Ok(MixedState {
            n_qubits,
            matrix: DMatrix::identity(dim, dim) * C64::new(1.0 / dim as f64, 0.0),
        })
    }

    /// `p ρ₁ + (1 − p) ρ₂`.
    pub fn mixture(p: f64, a: &MixedState, b: &MixedState) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!(
                "mixing weight {p} outside [0, 1]"
            )));
        }
        if a.n_qubits != b.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                found: b.dim(),
            });
        }
        Ok(MixedState {
            n_qubits: a.n_qubits,
            matrix: &a.matrix * C64::new(p, 0.0) + &b.matrix * C64::new(1.0 - p, 0.0),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    /// Spectral decomposition, eigenvalues ascending.
    pub fn eigen(&self) -> (Vec<f64>, DMatrix<C64>) {
        herm_eigen(&self.matrix)
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }
}

/// Common interface of pure and mixed states.
pub trait QuantumState {
    fn n_qubits(&self) -> usize;

    fn dim(&self) -> usize {
        1usize << self.n_qubits()
    }

    /// `⟨op⟩` including the imaginary part.
    fn raw_expectation(&self, op: &DMatrix<C64>) -> Result<C64>;

    /// `⟨op²⟩` for Hermitian `op`.
    fn second_moment(&self, op: &DMatrix<C64>) -> Result<f64>;

    /// Reduced state on `keep` (1-indexed, in the given order).
    fn reduce(&self, keep: &[usize]) -> Result<MixedState>;

    fn density(&self) -> MixedState;
}

fn check_op_dim(dim: usize, op: &DMatrix<C64>) -> Result<()> {
    if op.nrows() != dim || op.ncols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: op.nrows().max(op.ncols()),
        });
    }
    Ok(())
}

impl QuantumState for PureState {
    fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    fn raw_expectation(&self, op: &DMatrix<C64>) -> Result<C64> {
        check_op_dim(self.dim(), op)?;
        Ok(self.amplitudes.dotc(&(op * &self.amplitudes)))
    }

    fn second_moment(&self, op: &DMatrix<C64>) -> Result<f64> {
        check_op_dim(self.dim(), op)?;
        Ok((op * &self.amplitudes).norm_squared())
    }

    fn reduce(&self, keep: &[usize]) -> Result<MixedState> {
        let layout = KeepLayout::new(self.n_qubits, keep)?;
        let dk = 1usize << keep.len();
        let dr = 1usize << (self.n_qubits - keep.len());
        let mut psi = DMatrix::<C64>::zeros(dk, dr);
        for i in 0..self.dim() {
            let (a, r) = layout.split(i);
            psi[(a, r)] = self.amplitudes[i];
        }
        Ok(MixedState {
            n_qubits: keep.len(),
            matrix: &psi * psi.adjoint(),
        })
    }

    fn density(&self) -> MixedState {
        self.to_density()
    }
}

impl QuantumState for MixedState {
    fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    fn raw_expectation(&self, op: &DMatrix<C64>) -> Result<C64> {
        check_op_dim(self.dim(), op)?;
        // tr(ρ A) = Σ_ij ρ_ij A_ji
        let mut acc = ZERO;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                acc += self.matrix[(i, j)] * op[(j, i)];
            }
        }
        Ok(acc)
    }

    fn second_moment(&self, op: &DMatrix<C64>) -> Result<f64> {
        check_op_dim(self.dim(), op)?;
        let sq = op * op;
        Ok(self.raw_expectation(&sq)?.re)
    }

    fn reduce(&self, keep: &[usize]) -> Result<MixedState> {
        let layout = KeepLayout::new(self.n_qubits, keep)?;
        let dk = 1usize << keep.len();
        let dr = 1usize << (self.n_qubits - keep.len());
        let mut index = vec![0usize; dk * dr];
        for i in 0..self.dim() {
            let (a, r) = layout.split(i);
            index[a * dr + r] = i;
        }
        let mut out = DMatrix::<C64>::zeros(dk, dk);
        for a in 0..dk {
            for b in 0..dk {
                let mut acc = ZERO;
                for r in 0..dr {
                    acc += self.matrix[(index[a * dr + r], index[b * dr + r])];
                }
                out[(a, b)] = acc;
            }
        }
        Ok(MixedState {
            n_qubits: keep.len(),
            matrix: out,
        })
    }

    fn density(&self) -> MixedState {
        self.clone()
    }
}

/// Maps a full basis index onto (kept index, traced index).
struct KeepLayout {
    keep_masks: Vec<usize>,
    rest_masks: Vec<usize>,
}

impl KeepLayout {
    fn new(n_qubits: usize, keep: &[usize]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::EmptyKeep);
        }
        let mut seen = vec![false; n_qubits + 1];
        for &k in keep {
            if k == 0 || k > n_qubits {
                return Err(Error::QubitOutOfRange { index: k, n_qubits });
            }
            if seen[k] {
                return Err(Error::DuplicateQubit(k));
            }
            seen[k] = true;
        }
        let keep_masks = keep.iter().map(|&k| qubit_mask(n_qubits, k)).collect();
        let rest_masks = (1..=n_qubits)
            .filter(|&k| !seen[k])
            .map(|k| qubit_mask(n_qubits, k))
            .collect();
        Ok(KeepLayout {
            keep_masks,
            rest_masks,
        })
    }

    fn split(&self, i: usize) -> (usize, usize) {
        let pack = |masks: &[usize]| {
            masks
                .iter()
                .fold(0usize, |acc, &m| (acc << 1) | usize::from(i & m != 0))
        };
        (pack(&self.keep_masks), pack(&self.rest_masks))
    }
}

/// `J_n = ½ Σ_k n·σ⁽ᵏ⁾` as a dense matrix.
pub fn collective_spin_matrix(n_qubits: usize, direction: &Direction) -> Result<DMatrix<C64>> {
    local_spin_matrix(&vec![*direction; n_qubits])
}

/// `J' = ½ Σ_k n⁽ᵏ⁾·σ⁽ᵏ⁾` with one direction per qubit.
pub fn local_spin_matrix(directions: &[Direction]) -> Result<DMatrix<C64>> {
    let n = directions.len();
    if n == 0 {
        return Err(Error::InvalidParameter("n_qubits must be positive".into()));
    }
    Limits::DEFAULT.check_mixed(n)?;
    let dim = 1usize << n;
    let mut m = DMatrix::<C64>::zeros(dim, dim);
    for (k, d) in directions.iter().enumerate() {
        let mask = qubit_mask(n, k + 1);
        let [nx, ny, nz] = d.as_array();
        for i in 0..dim {
            let up = i & mask == 0;
            m[(i, i)] += C64::new(0.5 * if up { nz } else { -nz }, 0.0);
            // column i: σx|b⟩ = |b̄⟩, σy|0⟩ = i|1⟩, σy|1⟩ = −i|0⟩
            let y = if up { I } else { -I };
            m[(i ^ mask, i)] += (C64::new(nx, 0.0) + y * ny) * 0.5;
        }
    }
    Ok(m)
}

/// `σ_axis` acting on `qubit` (1-indexed) as a dense matrix.
pub fn pauli_matrix(n_qubits: usize, qubit: usize, axis: Axis) -> Result<DMatrix<C64>> {
    if qubit == 0 || qubit > n_qubits {
        return Err(Error::QubitOutOfRange {
            index: qubit,
            n_qubits,
        });
    }
    Limits::DEFAULT.check_mixed(n_qubits)?;
    let dim = 1usize << n_qubits;
    let mut m = DMatrix::<C64>::zeros(dim, dim);
    for i in 0..dim {
        let mut e = DVector::zeros(dim);
        e[i] = C64::new(1.0, 0.0);
        m.set_column(i, &apply_pauli(&e, n_qubits, qubit, axis));
    }
    Ok(m)
}

/// Real expectation value; fails if the imaginary residue exceeds tolerance.
pub fn expectation<S: QuantumState + ?Sized>(state: &S, op: &DMatrix<C64>) -> Result<f64> {
    let v = state.raw_expectation(op)?;
    let scale = 1.0f64.max(v.re.abs());
    if v.im.abs() > TOL.imaginary * scale {
        return Err(Error::NotHermitian(v.im.abs()));
    }
    Ok(v.re)
}

/// `⟨op²⟩ − ⟨op⟩²`, clamped at zero.
pub fn variance<S: QuantumState + ?Sized>(state: &S, op: &DMatrix<C64>) -> Result<f64> {
    let mean = expectation(state, op)?;
    let var = state.second_moment(op)? - mean * mean;
    if var < -1e-10 * 1.0f64.max(mean * mean) {
        return Err(Error::NotPositive(var));
    }
    Ok(var.max(0.0))
}

/// Reduced density matrix of the listed qubits (1-indexed).
pub fn partial_trace<S: QuantumState + ?Sized>(state: &S, keep: &[usize]) -> Result<MixedState> {
    state.reduce(keep)
}

/// Symmetric Dicke state `|N/2, m⟩` with `N/2 − m` excitations.
pub fn dicke_state(n_qubits: usize, m: f64) -> Result<PureState> {
    if n_qubits == 0 {
        return Err(Error::InvalidParameter("n_qubits must be positive".into()));
    }
    Limits::DEFAULT.check_pure(n_qubits)?;
    let ones = n_qubits as f64 / 2.0 - m;
    let ones_int = ones.round();
    if (ones - ones_int).abs() > 1e-9 || ones_int < 0.0 || ones_int > n_qubits as f64 {
        return Err(Error::InvalidParameter(format!(
            "m = {m} is not in {{-{n}/2, …, {n}/2}}",
            n = n_qubits
        )));
    }
    let ones = ones_int as u32;
    let dim = 1usize << n_qubits;
    let mut v = DVector::<C64>::zeros(dim);
    let mut count = 0usize;
    for i in 0..dim {
        if i.count_ones() == ones {
            v[i] = C64::new(1.0, 0.0);
            count += 1;
        }
    }
    v /= C64::new((count as f64).sqrt(), 0.0);
    Ok(PureState::from_vector_unchecked(n_qubits, v))
}

/// Two-qubit correlation matrix `λ_ij = ⟨σ_i ⊗ σ_j⟩`, `i, j ∈ 0..=3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaMatrix {
    entries: Matrix4<f64>,
}

impl LambdaMatrix {
    pub fn entries(&self) -> &Matrix4<f64> {
        &self.entries
    }

    /// Single-qubit Bloch vector of the first qubit, `s_i = λ_i0`.
    pub fn s(&self) -> Vector3<f64> {
        Vector3::new(
            self.entries[(1, 0)],
            self.entries[(2, 0)],
            self.entries[(3, 0)],
        )
    }

    /// Bloch vector of the second qubit, `λ_0j`.
    pub fn s_second(&self) -> Vector3<f64> {
        Vector3::new(
            self.entries[(0, 1)],
            self.entries[(0, 2)],
            self.entries[(0, 3)],
        )
    }

    /// Correlation block `T_ij = λ_ij`, `i, j ∈ 1..=3`.
    pub fn t(&self) -> Matrix3<f64> {
        self.entries.fixed_view::<3, 3>(1, 1).into_owned()
    }

    /// `¼ Σ λ_ij σ_i ⊗ σ_j`.
    pub fn reconstruct(&self) -> DMatrix<C64> {
        let mut out = DMatrix::<C64>::zeros(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                out += sigma4(i, j) * C64::new(0.25 * self.entries[(i, j)], 0.0);
            }
        }
        out
    }
}

fn sigma2(i: usize) -> DMatrix<C64> {
    match Axis::from_offset(i.wrapping_sub(1)) {
        None => DMatrix::identity(2, 2),
        Some(a) => {
            let m = a.matrix();
            DMatrix::from_column_slice(2, 2, m.as_slice())
        }
    }
}

fn sigma4(i: usize, j: usize) -> DMatrix<C64> {
    sigma2(i).kronecker(&sigma2(j))
}

pub fn lambda_of(rho2: &MixedState) -> Result<LambdaMatrix> {
    if rho2.n_qubits() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho2.dim(),
        });
    }
    let mut entries = Matrix4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            entries[(i, j)] = rho2.raw_expectation(&sigma4(i, j))?.re;
        }
    }
    Ok(LambdaMatrix { entries })
}

/// Applies `U_1 ⊗ … ⊗ U_N` with `U_k† σ⃗ U_k = O_k σ⃗`; Bloch vectors map as
/// `s⁽ᵏ⁾ → O_k s⁽ᵏ⁾`.
pub fn apply_local_rotations(state: &PureState, rotations: &LocalRotationSet) -> Result<PureState> {
    let n = state.n_qubits();
    if rotations.len() != n {
        return Err(Error::RotationCountMismatch {
            expected: n,
            found: rotations.len(),
        });
    }
    let mut v = state.amplitudes.clone();
    for (k, o) in rotations.rotations().iter().enumerate() {
        let u = su2_lift(o);
        let mask = qubit_mask(n, k + 1);
        for i in 0..v.len() {
            if i & mask == 0 {
                let (a0, a1) = (v[i], v[i | mask]);
                v[i] = u[(0, 0)] * a0 + u[(0, 1)] * a1;
                v[i | mask] = u[(1, 0)] * a0 + u[(1, 1)] * a1;
            }
        }
    }
    Ok(PureState::from_vector_unchecked(n, v))
}

/// Invariance of the amplitudes under every adjacent transposition.
pub fn is_symmetric(state: &PureState) -> bool {
    let n = state.n_qubits();
    let amps = state.amplitudes();
    (1..n).all(|k| {
        let (ma, mb) = (qubit_mask(n, k), qubit_mask(n, k + 1));
        (0..amps.len()).all(|i| {
            let (ba, bb) = (i & ma != 0, i & mb != 0);
            if ba == bb {
                return true;
            }
            let j = i ^ ma ^ mb;
            (amps[i] - amps[j]).norm() <= TOL.symmetry
        })
    })
}

/// Linear entropy `1 − tr ρ_k²` of each single-qubit reduction.
pub fn single_qubit_linear_entropies(state: &PureState) -> Vec<f64> {
    (1..=state.n_qubits())
        .map(|k| {
            let v = bloch_vector(state, k);
            0.5 * (1.0 - v.norm_squared())
        })
        .collect()
}

/// `(⟨σ_x⁽ᵏ⁾⟩, ⟨σ_y⁽ᵏ⁾⟩, ⟨σ_z⁽ᵏ⁾⟩)`.
pub fn bloch_vector(state: &PureState, qubit: usize) -> Vector3<f64> {
    let mut s = Vector3::zeros();
    for axis in Axis::ALL {
        s[axis.offset()] = state.amplitudes.dotc(&state.apply_pauli(qubit, axis)).re;
    }
    s
}

/// A pure state is entangled iff some single-qubit reduction is mixed.
pub fn is_pure_entangled(state: &PureState) -> bool {
    single_qubit_linear_entropies(state)
        .into_iter()
        .any(|e| e > TOL.entanglement)
}
