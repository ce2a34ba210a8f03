//! Brute-force cross-checks, deliberately independent of the fast paths.

use nalgebra::{DMatrix, Vector3};

use crate::covariance::{DirectionAssignment, LocalCovariance};
use crate::linalg::sym_eigen_desc;
use crate::qstate::{partial_trace, Direction};
use crate::statelib::{graph_state, stabilizer_reduced_state, Graph, PauliString};
use crate::{Error, Result, C64};

/// Largest N accepted by [`grid_lu`].
pub const GRID_LU_MAX_QUBITS: usize = 3;
/// Largest N accepted by [`stabilizer_sum_projector`].
pub const STABILIZER_SUM_MAX_QUBITS: usize = 5;
/// Product-grid size above which the per-qubit grid is coarsened.
pub const GRID_BUDGET: usize = 1_000_000;

const POLISH_STARTS: usize = 8;

/// Outcome of the exhaustive direction search.
#[derive(Debug, Clone, PartialEq)]
pub struct GridLuResult {
    pub value: f64,
    pub assignment: DirectionAssignment,
    /// Grid value before local polishing.
    pub grid_value: f64,
    pub points_per_qubit: usize,
    /// Angular spacing actually used, in degrees.
    pub effective_resolution: f64,
}

/// Near-uniform points on the unit sphere with roughly `resolution` degrees
/// between neighbours.
pub fn fibonacci_sphere(count: usize) -> Vec<Vector3<f64>> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / count as f64;
            let r = (1.0 - z * z).sqrt();
            let theta = golden * i as f64;
            Vector3::new(r * theta.cos(), r * theta.sin(), z)
        })
        .collect()
}

fn points_for_resolution(deg: f64) -> usize {
    let rad = deg.to_radians();
    ((4.0 * std::f64::consts::PI / (rad * rad)).ceil() as usize).max(4)
}

fn resolution_for_points(count: usize) -> f64 {
    (4.0 * std::f64::consts::PI / count as f64)
        .sqrt()
        .to_degrees()
}

/// Maximises `mᵀγ_R m` over unit blocks by enumerating a spherical grid per
/// qubit and polishing the best grid points.
///
/// The first qubit is restricted to the upper hemisphere since the objective
/// is even in `m`. When the product grid would exceed [`GRID_BUDGET`] points,
/// the per-qubit grid is coarsened and the polish recovers the accuracy.
/// Polishing uses the shifted power step `m_k ← normalize((γ_R m)_k + σ m_k)`,
/// which never decreases the objective once `γ_R + σ𝟙` is positive.
pub fn grid_lu(cov: &LocalCovariance, resolution_deg: f64) -> Result<GridLuResult> {
    let n = cov.n_qubits();
    if n > GRID_LU_MAX_QUBITS {
        return Err(Error::DimensionCap {
            n_qubits: n,
            cap: GRID_LU_MAX_QUBITS,
        });
    }
    if !(resolution_deg > 0.0 && resolution_deg.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "resolution {resolution_deg} must be positive"
        )));
    }
    let mut count = points_for_resolution(resolution_deg);
    let total = |c: usize| (c / 2).max(1) * c.pow(n as u32 - 1);
    while total(count) > GRID_BUDGET {
        count = (count as f64 * 0.9) as usize;
    }
    let points = fibonacci_sphere(count);
    let upper: Vec<Vector3<f64>> = points.iter().copied().filter(|p| p.z >= 0.0).collect();

    let g = cov.matrix();
    let block = |k: usize, l: usize| g.fixed_view::<3, 3>(3 * k, 3 * l).into_owned();
    let blocks: Vec<Vec<nalgebra::Matrix3<f64>>> = (0..n)
        .map(|k| (0..n).map(|l| block(k, l)).collect())
        .collect();
    let eval = |m: &[Vector3<f64>]| -> f64 {
        let mut s = 0.0;
        for k in 0..n {
            for l in 0..n {
                s += m[k].dot(&(blocks[k][l] * m[l]));
            }
        }
        s
    };

    // keep the best few grid points as polishing seeds
    let mut top: Vec<(f64, Vec<Vector3<f64>>)> = Vec::new();
    let mut idx = vec![0usize; n];
    let sizes: Vec<usize> = (0..n)
        .map(|k| if k == 0 { upper.len() } else { points.len() })
        .collect();
    loop {
        let m: Vec<Vector3<f64>> = (0..n)
            .map(|k| {
                if k == 0 {
                    upper[idx[0]]
                } else {
                    points[idx[k]]
                }
            })
            .collect();
        let v = eval(&m);
        if top.len() < POLISH_STARTS || v > top[top.len() - 1].0 {
            top.push((v, m));
            top.sort_by(|a, b| b.0.total_cmp(&a.0));
            top.truncate(POLISH_STARTS);
        }
        let mut k = n;
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < sizes[k] {
                break;
            }
            idx[k] = 0;
            if k == 0 {
                k = usize::MAX;
                break;
            }
        }
        if k == usize::MAX {
            break;
        }
    }

    let (eigs, _) = sym_eigen_desc(g);
    let shift = eigs[0].abs().max(eigs[eigs.len() - 1].abs()) + 1.0;
    let grid_value = top[0].0;
    let mut best = top[0].clone();
    for (_, start) in top {
        let mut m = start;
        let mut value = eval(&m);
        for _ in 0..200_000 {
            let stacked =
                nalgebra::DVector::from_iterator(3 * n, m.iter().flat_map(|v| v.iter().copied()));
            let gm = g * stacked;
            let next: Vec<Vector3<f64>> = (0..n)
                .map(|k| {
                    let v = Vector3::new(gm[3 * k], gm[3 * k + 1], gm[3 * k + 2]) + m[k] * shift;
                    v.normalize()
                })
                .collect();
            let nv = eval(&next);
            let gain = nv - value;
            m = next;
            value = nv;
            if gain <= 1e-15 * value.abs().max(1.0) {
                break;
            }
        }
        if value > best.0 {
            best = (value, m);
        }
    }
    let assignment = DirectionAssignment::new(
        best.1
            .iter()
            .map(|v| Direction::normalize(*v))
            .collect::<Result<_>>()?,
    );
    Ok(GridLuResult {
        value: best.0,
        assignment,
        grid_value,
        points_per_qubit: count,
        effective_resolution: resolution_for_points(count),
    })
}

/// `|G⟩⟨G| = 2^{-N} Σ_{S ∈ stabilizer group} S`.
pub fn stabilizer_sum_projector(graph: &Graph) -> Result<DMatrix<C64>> {
    let n = graph.n_vertices();
    if n > STABILIZER_SUM_MAX_QUBITS {
        return Err(Error::DimensionCap {
            n_qubits: n,
            cap: STABILIZER_SUM_MAX_QUBITS,
        });
    }
    let dim = 1usize << n;
    let generators: Vec<PauliString> = (1..=n).map(|v| graph.stabilizer(v)).collect();
    let mut sum = DMatrix::<C64>::zeros(dim, dim);
    for subset in 0..(1usize << n) {
        let mut product = PauliString::identity(n);
        for (i, g) in generators.iter().enumerate() {
            if subset & (1 << i) != 0 {
                product = product.checked_mul(g)?;
            }
        }
        sum += product.to_matrix();
    }
    Ok(sum / C64::new(dim as f64, 0.0))
}

/// Largest entrywise gap between the stabilizer-sum projector and the
/// projector onto the controlled-Z construction.
pub fn stabilizer_sum_gap(graph: &Graph) -> Result<f64> {
    let projector = stabilizer_sum_projector(graph)?;
    let psi = graph_state(graph)?;
    let direct = psi.to_density();
    Ok((projector - direct.matrix()).camax())
}

/// Largest entrywise gap between stabilizer-derived and dense reductions over
/// every 1- and 2-qubit subset.
pub fn dense_reduction_gap(graph: &Graph) -> Result<f64> {
    let n = graph.n_vertices();
    let psi = graph_state(graph)?;
    let mut subsets: Vec<Vec<usize>> = (1..=n).map(|i| vec![i]).collect();
    for i in 1..=n {
        for j in i + 1..=n {
            subsets.push(vec![i, j]);
        }
    }
    let mut gap: f64 = 0.0;
    for keep in subsets {
        let a = stabilizer_reduced_state(graph, &keep)?;
        let b = partial_trace(&psi, &keep)?;
        gap = gap.max((a.matrix() - b.matrix()).camax());
    }
    Ok(gap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covariance::{gamma_r, CovarianceSource};
    use crate::statelib::{linear_cluster, noon, ring_cluster, star_graph};

    #[test]
    fn sphere_points_are_unit_and_spread() {
        let pts = fibonacci_sphere(500);
        assert!(pts.iter().all(|p| (p.norm() - 1.0).abs() < 1e-12));
        let mean: Vector3<f64> = pts.iter().sum::<Vector3<f64>>() / 500.0;
        assert!(mean.norm() < 1e-2);
    }

    #[test]
    fn grid_noon_two_qubits() {
        let r = grid_lu(&gamma_r(&noon(2).unwrap()), 2.0).unwrap();
        assert!((r.value - 4.0).abs() < 1e-6);
        assert!(r.grid_value <= r.value + 1e-12);
    }

    #[test]
    fn grid_single_qubit_is_top_eigenvalue() {
        let m = DMatrix::from_row_slice(3, 3, &[1.0, 0.2, 0.0, 0.2, 0.5, 0.1, 0.0, 0.1, 0.3]);
        let cov = LocalCovariance::new(1, m.clone(), CovarianceSource::Mixed).unwrap();
        let r = grid_lu(&cov, 2.0).unwrap();
        let (eigs, _) = sym_eigen_desc(&m);
        assert!((r.value - eigs[0]).abs() < 1e-8);
    }

    #[test]
    fn grid_cap() {
        let cov = gamma_r(&noon(4).unwrap());
        assert!(matches!(
            grid_lu(&cov, 2.0),
            Err(Error::DimensionCap { cap: 3, .. })
        ));
    }

    #[test]
    fn stabilizer_sum_matches_cz_construction() {
        for g in [
            star_graph(4).unwrap(),
            linear_cluster(5).unwrap(),
            ring_cluster(3).unwrap(),
        ] {
            assert!(stabilizer_sum_gap(&g).unwrap() < 1e-10);
        }
        assert!(stabilizer_sum_projector(&linear_cluster(6).unwrap()).is_err());
    }

    #[test]
    fn dense_reduction_linear_cluster() {
        assert!(dense_reduction_gap(&linear_cluster(4).unwrap()).unwrap() < 1e-10);
    }
}
