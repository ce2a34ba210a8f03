//! Named states and graph-state stabilizer machinery.

use std::collections::BTreeSet;
use std::fmt;

use nalgebra::{DMatrix, DVector};

use crate::config::Limits;
use crate::qstate::{dicke_state, MixedState, PureState};
use crate::{Error, Result, C64};

/// `(|0…0⟩ + |1…1⟩)/√2`.
pub fn noon(n_qubits: usize) -> Result<PureState> {
    ghz_q(n_qubits, 0.5, 0.0)
}

/// `√q |0…0⟩ + e^{iφ} √(1−q) |1…1⟩`.
pub fn ghz_q(n_qubits: usize, q: f64, phi: f64) -> Result<PureState> {
    if n_qubits == 0 {
        return Err(Error::InvalidParameter("n_qubits must be positive".into()));
    }
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidParameter(format!("q = {q} outside [0, 1]")));
    }
    if !phi.is_finite() {
        return Err(Error::InvalidParameter(format!("phi = {phi}")));
    }
    Limits::DEFAULT.check_pure(n_qubits)?;
    let dim = 1usize << n_qubits;
    let mut v = DVector::<C64>::zeros(dim);
    v[0] = C64::new(q.sqrt(), 0.0);
    v[dim - 1] += C64::from_polar((1.0 - q).sqrt(), phi);
    Ok(PureState::from_vector_unchecked(n_qubits, v))
}

fn check_even(n_qubits: usize) -> Result<()> {
    if n_qubits < 2 || !n_qubits.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "an even number of qubits ≥ 2 is required, got {n_qubits}"
        )));
    }
    Ok(())
}

/// Twin-Fock state `|N/2, 0⟩`.
pub fn twin_fock(n_qubits: usize) -> Result<PureState> {
    check_even(n_qubits)?;
    dicke_state(n_qubits, 0.0)
}

/// `(|N/2, 1⟩ + |N/2, −1⟩)/√2`.
pub fn ps_state(n_qubits: usize) -> Result<PureState> {
    check_even(n_qubits)?;
    let a = dicke_state(n_qubits, 1.0)?;
    let b = dicke_state(n_qubits, -1.0)?;
    let v = (a.amplitudes() + b.amplitudes()) * C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    Ok(PureState::from_vector_unchecked(n_qubits, v))
}

/// Unnormalized Cabello singlet: one term per distinct arrangement of `N/2`
/// zeros and `N/2` ones, weighted by `z!(N/2−z)!(−1)^{N/2−z}` where `z`
/// counts zeros among the first `N/2` qubits.
fn cabello_unnormalized(n_qubits: usize) -> DVector<C64> {
    let half = n_qubits / 2;
    let fact = |k: usize| (1..=k).map(|x| x as f64).product::<f64>();
    let dim = 1usize << n_qubits;
    let first_half_mask = ((1usize << half) - 1) << half;
    let mut v = DVector::<C64>::zeros(dim);
    for i in 0..dim {
        if i.count_ones() as usize != half {
            continue;
        }
        let ones_first = (i & first_half_mask).count_ones() as usize;
        let z = half - ones_first;
        let sign = if (half - z).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        v[i] = C64::new(sign * fact(z) * fact(half - z), 0.0);
    }
    v
}

/// Cabello's N-qubit singlet state with total spin zero.
pub fn cabello_singlet(n_qubits: usize) -> Result<PureState> {
    check_even(n_qubits)?;
    let cap = Limits::DEFAULT.max_singlet_qubits;
    if n_qubits > cap {
        return Err(Error::DimensionCap { n_qubits, cap });
    }
    let v = cabello_unnormalized(n_qubits);
    let half = n_qubits / 2;
    let prefactor = (1..=half).map(|x| x as f64).product::<f64>() * ((half + 1) as f64).sqrt();
    let norm = v.norm();
    debug_assert!((norm / prefactor - 1.0).abs() < 1e-12);
    Ok(PureState::from_vector_unchecked(
        n_qubits,
        v / C64::new(norm, 0.0),
    ))
}

/// Undirected simple graph on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n_vertices: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(n_vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n_vertices == 0 {
            return Err(Error::InvalidGraph(
                "graph needs at least one vertex".into(),
            ));
        }
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a == 0 || b == 0 || a > n_vertices || b > n_vertices {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) outside vertices 1..={n_vertices}"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop on vertex {a}")));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({a}, {b})")));
            }
        }
        Ok(Graph {
            n_vertices,
            edges: set,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Edges as `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    /// `K_i = σ_x⁽ⁱ⁾ ⊗_{j∈N(i)} σ_z⁽ʲ⁾`.
    pub fn stabilizer(&self, vertex: usize) -> PauliString {
        let mut factors = vec![Pauli::I; self.n_vertices];
        factors[vertex - 1] = Pauli::X;
        for j in self.neighbors(vertex) {
            factors[j - 1] = Pauli::Z;
        }
        PauliString { sign: 1, factors }
    }
}

/// Path `1 – 2 – … – n`.
pub fn linear_cluster(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidGraph("linear cluster needs n ≥ 2".into()));
    }
    let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
    Graph::new(n, &edges)
}

/// Cycle on `n ≥ 3` vertices.
pub fn ring_cluster(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidGraph("ring cluster needs n ≥ 3".into()));
    }
    let mut edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
    edges.push((1, n));
    Graph::new(n, &edges)
}

/// Open-boundary square lattice, vertices numbered row-major from 1.
pub fn grid_cluster(rows: usize, cols: usize) -> Result<Graph> {
    if rows == 0 || cols == 0 || rows * cols < 2 {
        return Err(Error::InvalidGraph(
            "grid cluster needs rows·cols ≥ 2".into(),
        ));
    }
    let id = |r: usize, c: usize| r * cols + c + 1;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::new(rows * cols, &edges)
}

/// Vertex 1 joined to every other vertex.
pub fn star_graph(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidGraph("star graph needs n ≥ 2".into()));
    }
    let edges: Vec<_> = (2..=n).map(|i| (1, i)).collect();
    Graph::new(n, &edges)
}

/// Graph state from controlled-Z gates on every edge of `|+⟩^⊗N`.
pub fn graph_state(graph: &Graph) -> Result<PureState> {
    let n = graph.n_vertices();
    Limits::DEFAULT.check_pure(n)?;
    let dim = 1usize << n;
    let amp = 1.0 / (dim as f64).sqrt();
    let masks: Vec<usize> = graph
        .edges()
        .map(|(a, b)| (1usize << (n - a)) | (1usize << (n - b)))
        .collect();
    let v = DVector::from_fn(dim, |i, _| {
        let flips = masks.iter().filter(|&&m| i & m == m).count();
        C64::new(if flips % 2 == 0 { amp } else { -amp }, 0.0)
    });
    Ok(PureState::from_vector_unchecked(n, v))
}

/// Single-qubit Pauli factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// `self · other = i^k · result`.
    fn mul(self, other: Pauli) -> (u8, Pauli) {
        use Pauli::*;
        match (self, other) {
            (I, p) | (p, I) => (0, p),
            (a, b) if a == b => (0, I),
            (X, Y) => (1, Z),
            (Y, Z) => (1, X),
            (Z, X) => (1, Y),
            (Y, X) => (3, Z),
            (Z, Y) => (3, X),
            (X, Z) => (3, Y),
            _ => unreachable!(),
        }
    }

    pub fn matrix(self) -> DMatrix<C64> {
        let o = C64::new(1.0, 0.0);
        let z = C64::new(0.0, 0.0);
        let i = C64::new(0.0, 1.0);
        let entries = match self {
            Pauli::I => [o, z, z, o],
            Pauli::X => [z, o, o, z],
            Pauli::Y => [z, -i, i, z],
            Pauli::Z => [o, z, z, -o],
        };
        DMatrix::from_row_slice(2, 2, &entries)
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pauli::I => "I",
            Pauli::X => "X",
            Pauli::Y => "Y",
            Pauli::Z => "Z",
        })
    }
}

/// Tensor product of Pauli factors with a real sign.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    pub sign: i8,
    pub factors: Vec<Pauli>,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString {
            sign: 1,
            factors: vec![Pauli::I; n],
        }
    }

    /// Product `self · other`; fails when the phase is imaginary.
    pub fn checked_mul(&self, other: &PauliString) -> Result<PauliString> {
        assert_eq!(self.factors.len(), other.factors.len());
        let mut quarter = 0u8;
        let factors = self
            .factors
            .iter()
            .zip(&other.factors)
            .map(|(&a, &b)| {
                let (k, p) = a.mul(b);
                quarter += k;
                p
            })
            .collect();
        let sign = match quarter % 4 {
            0 => 1,
            2 => -1,
            _ => return Err(Error::ImaginaryPhase),
        };
        Ok(PauliString {
            sign: sign * self.sign * other.sign,
            factors,
        })
    }

    /// `true` if the factor on every qubit not in `keep` is the identity.
    pub fn is_identity_outside(&self, keep: &[usize]) -> bool {
        self.factors
            .iter()
            .enumerate()
            .all(|(k, &p)| p == Pauli::I || keep.contains(&(k + 1)))
    }

    /// Factors on `keep` (1-indexed), in that order.
    pub fn restrict(&self, keep: &[usize]) -> PauliString {
        PauliString {
            sign: self.sign,
            factors: keep.iter().map(|&k| self.factors[k - 1]).collect(),
        }
    }

    pub fn to_matrix(&self) -> DMatrix<C64> {
        let m = self
            .factors
            .iter()
            .fold(DMatrix::from_element(1, 1, C64::new(1.0, 0.0)), |acc, p| {
                acc.kronecker(&p.matrix())
            });
        m * C64::new(f64::from(self.sign), 0.0)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.sign < 0 { "-" } else { "+" })?;
        for p in &self.factors {
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Largest number of kept qubits handled by [`stabilizer_reduced_state`].
pub const MAX_STABILIZER_KEEP: usize = 3;

/// Reduced state of a graph state read off from the stabilizer group.
///
/// Only products of generators indexed by kept vertices can be the identity
/// on the traced-out qubits, so at most `2^|keep|` products are examined.
pub fn stabilizer_reduced_state(graph: &Graph, keep: &[usize]) -> Result<MixedState> {
    let n = graph.n_vertices();
    if keep.is_empty() {
        return Err(Error::EmptyKeep);
    }
    if keep.len() > MAX_STABILIZER_KEEP {
        return Err(Error::KeepTooLarge {
            got: keep.len(),
            max: MAX_STABILIZER_KEEP,
        });
    }
    for (i, &k) in keep.iter().enumerate() {
        if k == 0 || k > n {
            return Err(Error::QubitOutOfRange {
                index: k,
                n_qubits: n,
            });
        }
        if keep[..i].contains(&k) {
            return Err(Error::DuplicateQubit(k));
        }
    }
    let p = keep.len();
    let dim = 1usize << p;
    let mut rho = DMatrix::<C64>::zeros(dim, dim);
    for subset in 0..(1usize << p) {
        let mut product = PauliString::identity(n);
        for (bit, &v) in keep.iter().enumerate() {
            if subset & (1 << bit) != 0 {
                product = product.checked_mul(&graph.stabilizer(v))?;
            }
        }
        if product.is_identity_outside(keep) {
            rho += product.restrict(keep).to_matrix();
        }
    }
    rho /= C64::new(dim as f64, 0.0);
    Ok(MixedState::from_matrix_unchecked(p, rho))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{
        collective_spin_matrix, expectation, is_pure_entangled, is_symmetric, partial_trace,
        variance, Direction,
    };
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn noon_and_ghz_q() {
        let s = noon(2).unwrap();
        assert!((s.amplitude(0) - c(FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!((s.amplitude(3) - c(FRAC_1_SQRT_2)).norm() < 1e-15);
        assert_eq!(s, ghz_q(2, 0.5, 0.0).unwrap());

        let s = ghz_q(3, 1.0, 0.0).unwrap();
        assert_eq!(s.amplitude(0), c(1.0));
        assert_eq!(s.amplitudes().iter().filter(|a| a.norm() > 0.0).count(), 1);

        let s = ghz_q(2, 0.25, PI).unwrap();
        assert!((s.amplitude(0) - c(0.5)).norm() < 1e-15);
        assert!((s.amplitude(3) - c(-(0.75f64).sqrt())).norm() < 1e-15);

        assert!(ghz_q(3, 1.2, 0.0).is_err());
        assert!(ghz_q(0, 0.5, 0.0).is_err());
    }

    #[test]
    fn twin_fock_and_ps() {
        let tf = twin_fock(2).unwrap();
        assert!((tf.amplitude(0b01) - c(FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!((tf.amplitude(0b10) - c(FRAC_1_SQRT_2)).norm() < 1e-15);
        for n in [2, 4, 6, 8] {
            let jz = collective_spin_matrix(n, &Direction::z()).unwrap();
            let tf = twin_fock(n).unwrap();
            assert!(variance(&tf, &jz).unwrap() < 1e-14);
            let ps = ps_state(n).unwrap();
            assert!(is_symmetric(&ps) && is_symmetric(&tf));
            assert!(expectation(&ps, &jz).unwrap().abs() < 1e-14);
        }
        let ps = ps_state(4).unwrap();
        let a = dicke_state(4, 1.0).unwrap();
        let b = dicke_state(4, -1.0).unwrap();
        assert!((ps.overlap(&a) - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((ps.overlap(&b) - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(twin_fock(3).is_err());
        assert!(ps_state(5).is_err());
    }

    #[test]
    fn cabello_two_qubits_is_singlet() {
        let s = cabello_singlet(2).unwrap();
        assert!((s.amplitude(0b01) - c(FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!((s.amplitude(0b10) - c(-FRAC_1_SQRT_2)).norm() < 1e-15);
    }

    #[test]
    fn cabello_prefactor_matches_distinct_arrangements() {
        for n in [2, 4, 6, 8, 10] {
            let half = n / 2;
            let fact: f64 = (1..=half).map(|x| x as f64).product();
            let expected = fact * ((half + 1) as f64).sqrt();
            let norm = cabello_unnormalized(n).norm();
            assert!((norm / expected - 1.0).abs() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn cabello_total_spin_vanishes() {
        for n in [2, 4, 6, 8] {
            let s = cabello_singlet(n).unwrap();
            let mut total = 0.0;
            for d in [Direction::x(), Direction::y(), Direction::z()] {
                let j = collective_spin_matrix(n, &d).unwrap();
                let jv = &j * s.amplitudes();
                assert!(jv.camax() < 1e-10);
                total += jv.norm_squared();
            }
            assert!(total < 1e-9);
            assert!(is_pure_entangled(&s));
        }
    }

    #[test]
    fn cabello_half_swap_sign() {
        for n in [2, 4, 6, 8] {
            let s = cabello_singlet(n).unwrap();
            let half = n / 2;
            let low = (1usize << half) - 1;
            let sign = if half % 2 == 0 { 1.0 } else { -1.0 };
            for i in 0..s.dim() {
                let swapped = ((i & low) << half) | (i >> half);
                assert!((s.amplitude(swapped) - s.amplitude(i) * sign).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn cabello_errors() {
        assert!(cabello_singlet(3).is_err());
        assert!(matches!(
            cabello_singlet(14),
            Err(Error::DimensionCap { cap: 12, .. })
        ));
    }

    #[test]
    fn graph_constructors() {
        let g = linear_cluster(4).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 2), (2, 3), (3, 4)]);
        let g = ring_cluster(5).unwrap();
        assert_eq!(g.n_edges(), 5);
        assert!((1..=5).all(|v| g.neighbors(v).len() == 2));
        assert_eq!(grid_cluster(2, 3).unwrap().n_edges(), 7);
        let g = star_graph(4).unwrap();
        assert_eq!(g.neighbors(1), vec![2, 3, 4]);
        assert!(linear_cluster(1).is_err());
        assert!(ring_cluster(2).is_err());
        assert!(grid_cluster(1, 1).is_err());
        assert!(star_graph(1).is_err());
    }

    #[test]
    fn graph_validation() {
        assert!(Graph::new(3, &[(1, 1)]).is_err());
        assert!(Graph::new(3, &[(1, 2), (2, 1)]).is_err());
        assert!(Graph::new(3, &[(1, 4)]).is_err());
        assert!(Graph::new(0, &[]).is_err());
    }

    #[test]
    fn empty_graph_is_plus_product() {
        let g = Graph::new(3, &[]).unwrap();
        let s = graph_state(&g).unwrap();
        let amp = 1.0 / 8f64.sqrt();
        assert!(s.amplitudes().iter().all(|a| (a - c(amp)).norm() < 1e-15));
        for v in 1..=3 {
            assert_eq!(g.stabilizer(v).to_string(), {
                let mut s = String::from("+III");
                s.replace_range(v..v + 1, "X");
                s
            });
        }
    }

    #[test]
    fn single_edge_graph_state() {
        let s = graph_state(&Graph::new(2, &[(1, 2)]).unwrap()).unwrap();
        // (|0+⟩ + |1−⟩)/√2 = ½(|00⟩ + |01⟩ + |10⟩ − |11⟩)
        let expected = [0.5, 0.5, 0.5, -0.5];
        for (i, e) in expected.iter().enumerate() {
            assert!((s.amplitude(i) - c(*e)).norm() < 1e-15);
        }
        assert!(is_pure_entangled(&s));
    }

    #[test]
    fn graph_states_are_stabilized() {
        let graphs = [
            linear_cluster(5).unwrap(),
            ring_cluster(6).unwrap(),
            grid_cluster(2, 3).unwrap(),
            star_graph(4).unwrap(),
        ];
        for g in &graphs {
            let s = graph_state(g).unwrap();
            for v in 1..=g.n_vertices() {
                let k = g.stabilizer(v).to_matrix();
                assert!((expectation(&s, &k).unwrap() - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn pauli_products() {
        let x = PauliString {
            sign: 1,
            factors: vec![Pauli::X, Pauli::Z],
        };
        let z = PauliString {
            sign: 1,
            factors: vec![Pauli::Z, Pauli::X],
        };
        // XZ ⊗ ZX = (−iY)(iY) = Y ⊗ Y
        let p = x.checked_mul(&z).unwrap();
        assert_eq!(p.to_string(), "+YY");
        let lhs = x.to_matrix() * z.to_matrix();
        assert!((lhs - p.to_matrix()).camax() < 1e-15);

        let single_x = PauliString {
            sign: 1,
            factors: vec![Pauli::X],
        };
        let single_z = PauliString {
            sign: 1,
            factors: vec![Pauli::Z],
        };
        assert_eq!(
            single_x.checked_mul(&single_z).unwrap_err(),
            Error::ImaginaryPhase
        );
    }

    fn pauli2(a: Pauli, b: Pauli) -> DMatrix<C64> {
        a.matrix().kronecker(&b.matrix())
    }

    #[test]
    fn stabilizer_reduction_examples() {
        let quarter = c(0.25);
        let r = stabilizer_reduced_state(&ring_cluster(5).unwrap(), &[1, 2]).unwrap();
        assert!((r.matrix() - DMatrix::identity(4, 4) * quarter).camax() < 1e-15);

        let r = stabilizer_reduced_state(&linear_cluster(4).unwrap(), &[1, 2]).unwrap();
        let expected = (DMatrix::identity(4, 4) + pauli2(Pauli::X, Pauli::Z)) * quarter;
        assert!((r.matrix() - expected).camax() < 1e-15);

        let r = stabilizer_reduced_state(&star_graph(4).unwrap(), &[2, 3]).unwrap();
        let expected = (DMatrix::identity(4, 4) + pauli2(Pauli::X, Pauli::X)) * quarter;
        assert!((r.matrix() - expected).camax() < 1e-15);
    }

    #[test]
    fn stabilizer_single_qubit_reductions() {
        let g = Graph::new(3, &[(1, 2)]).unwrap();
        let r = stabilizer_reduced_state(&g, &[3]).unwrap();
        let expected = (DMatrix::identity(2, 2) + Pauli::X.matrix()) * c(0.5);
        assert!((r.matrix() - expected).camax() < 1e-15);
        let r = stabilizer_reduced_state(&g, &[1]).unwrap();
        assert!((r.matrix() - DMatrix::identity(2, 2) * c(0.5)).camax() < 1e-15);
    }

    #[test]
    fn stabilizer_reduction_matches_dense_three_qubits() {
        let g = grid_cluster(2, 3).unwrap();
        let s = graph_state(&g).unwrap();
        for keep in [[1, 2, 3], [2, 5, 4], [6, 1, 3]] {
            let a = stabilizer_reduced_state(&g, &keep).unwrap();
            let b = partial_trace(&s, &keep).unwrap();
            assert!((a.matrix() - b.matrix()).camax() < 1e-10);
        }
    }

    #[test]
    fn stabilizer_reduction_errors() {
        let g = linear_cluster(5).unwrap();
        assert!(matches!(
            stabilizer_reduced_state(&g, &[1, 2, 3, 4]),
            Err(Error::KeepTooLarge { got: 4, max: 3 })
        ));
        assert_eq!(
            stabilizer_reduced_state(&g, &[]).unwrap_err(),
            Error::EmptyKeep
        );
        assert!(stabilizer_reduced_state(&g, &[6]).is_err());
        assert!(stabilizer_reduced_state(&g, &[2, 2]).is_err());
    }
}
