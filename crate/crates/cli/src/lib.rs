//! Command implementations behind the `qfisher` binary.

use std::fmt::Write as _;
use std::path::Path;

use qfisher::oracle::{dense_reduction_gap, grid_lu, stabilizer_sum_gap};
use qfisher::{
    best_clu, classify_symmetric, gamma_c, gamma_r, ghz_q, heisenberg_limit,
    heisenberg_limit_total, is_pure_entangled, is_symmetric, lu_optimize, shot_noise_limit, Error,
    PureState,
};

pub mod json;
pub mod report;
pub mod spec;

pub use report::{AnalysisReport, OracleReport};
pub use spec::StateSpec;

pub const DEFAULT_RESTARTS: usize = qfisher::covariance::DEFAULT_RESTARTS;
pub const DEFAULT_SEED: u64 = 0;

/// Margin above `N` required to call a state useful.
const USEFUL_MARGIN: f64 = 1e-9;

pub const GRID_LU_TOLERANCE: f64 = 1e-4;
pub const EXACT_ORACLE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    InvalidSpec(String),
    DimensionCap(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::InvalidSpec(_) => 2,
            CliError::DimensionCap(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::InvalidSpec(m) => write!(f, "invalid spec: {m}"),
            CliError::DimensionCap(m) => write!(f, "dimension cap: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::DimensionCap { .. } => CliError::DimensionCap(e.to_string()),
            other => CliError::InvalidSpec(other.to_string()),
        }
    }
}

fn verdict(
    state: &PureState,
    symmetric: bool,
    entangled: bool,
    lu: &qfisher::LuOptimum,
) -> Result<report::VerdictReport, CliError> {
    let nf = state.n_qubits() as f64;
    if symmetric && entangled && state.n_qubits() >= 2 {
        let v = classify_symmetric(state)?;
        return Ok(report::VerdictReport {
            useful_clu: v.useful_clu,
            useful_lu: Some(v.useful_lu),
            fq_clu: v.fq_clu,
            fq_lu: v.fq_lu,
            optimal_direction: v.optimal_direction.into(),
            family_detected: v.family_detected.into(),
            boundary: v.boundary,
            lu_tie: Some(v.lu_tie),
        });
    }
    let clu = best_clu(&gamma_c(state));
    let useful_lu = if lu.best_value > nf + USEFUL_MARGIN {
        Some(true)
    } else if lu.upper_bound <= nf + USEFUL_MARGIN {
        Some(false)
    } else {
        None
    };
    let optimal_direction = if clu.degenerate {
        qfisher::OptimalDirection::Degenerate {
            representative: clu.direction,
            multiplicity: clu.multiplicity,
        }
    } else {
        qfisher::OptimalDirection::Unique(clu.direction)
    };
    Ok(report::VerdictReport {
        useful_clu: clu.fq > nf + USEFUL_MARGIN,
        useful_lu,
        fq_clu: clu.fq,
        fq_lu: lu.best_value,
        optimal_direction: optimal_direction.into(),
        family_detected: report::FamilyReport::None,
        boundary: (clu.fq - nf).abs() <= USEFUL_MARGIN,
        lu_tie: None,
    })
}

pub fn analyze(spec: &StateSpec, restarts: usize, seed: u64) -> Result<AnalysisReport, CliError> {
    let state = spec.build()?;
    let n = state.n_qubits();
    let symmetric = is_symmetric(&state);
    let entangled = is_pure_entangled(&state);
    let collective = gamma_c(&state);
    let clu = best_clu(&collective);
    let lu = lu_optimize(&gamma_r(&state), restarts, seed);
    let verdict = verdict(&state, symmetric, entangled, &lu)?;
    let m = collective.matrix();
    let nf = n as f64;
    Ok(AnalysisReport {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        seed,
        restarts,
        spec: spec.clone(),
        n_qubits: n,
        symmetric,
        entangled,
        gamma_c: [0, 1, 2].map(|i| [m[(i, 0)], m[(i, 1)], m[(i, 2)]]),
        clu: report::CluReport {
            direction: clu.direction.as_array(),
            fq: clu.fq,
            degenerate: clu.degenerate,
            multiplicity: clu.multiplicity,
        },
        lu: report::LuReport {
            upper: lu.upper_bound,
            lower: lu.best_value,
            certified: lu.certified,
            assignment: lu
                .best_assignment
                .directions()
                .iter()
                .map(|d| d.as_array())
                .collect(),
        },
        verdict,
        references: report::References {
            repetitions: 1,
            shot_noise_fq: nf,
            shot_noise_delta: shot_noise_limit(n),
            heisenberg_fq: nf * nf,
            heisenberg_delta: heisenberg_limit(1, n),
            heisenberg_delta_total: heisenberg_limit_total(1, n),
        },
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRequest {
    pub n: usize,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub restarts: usize,
    pub seed: u64,
}

pub const SWEEP_HEADER: &str = "q,fq_clu,fq_lu_lower,fq_lu_upper,useful";

/// CSV rows for `ghz_q(n, q)` on a uniform grid from `from` to `to`.
pub fn sweep_csv(req: &SweepRequest) -> Result<String, CliError> {
    if !(0.0 <= req.from && req.from < req.to && req.to <= 1.0) {
        return Err(CliError::InvalidSpec(format!(
            "need 0 <= from < to <= 1, got from = {}, to = {}",
            req.from, req.to
        )));
    }
    if req.steps < 2 {
        return Err(CliError::InvalidSpec("steps must be at least 2".into()));
    }
    if req.n < 2 {
        return Err(CliError::InvalidSpec("n must be at least 2".into()));
    }
    let mut out = String::new();
    out.push_str(SWEEP_HEADER);
    out.push('\n');
    for i in 0..req.steps {
        let q = if i + 1 == req.steps {
            req.to
        } else {
            req.from + (req.to - req.from) * i as f64 / (req.steps - 1) as f64
        };
        let state = ghz_q(req.n, q, 0.0)?;
        let clu = best_clu(&gamma_c(&state));
        let lu = lu_optimize(&gamma_r(&state), req.restarts, req.seed);
        let useful = is_pure_entangled(&state) && classify_symmetric(&state)?.useful_clu;
        let _ = writeln!(
            out,
            "{q},{:.16e},{:.16e},{:.16e},{useful}",
            clu.fq, lu.best_value, lu.upper_bound
        );
    }
    Ok(out)
}

pub fn write_output(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleCheck {
    GridLu,
    DenseReduction,
    StabilizerSum,
}

impl OracleCheck {
    pub fn name(self) -> &'static str {
        match self {
            OracleCheck::GridLu => "grid_lu",
            OracleCheck::DenseReduction => "dense_reduction",
            OracleCheck::StabilizerSum => "stabilizer_sum",
        }
    }
}

pub fn oracle(
    spec: &StateSpec,
    check: OracleCheck,
    resolution_deg: f64,
    restarts: usize,
    seed: u64,
) -> Result<OracleReport, CliError> {
    let (n, oracle_value, library_value, gap, tolerance) = match check {
        OracleCheck::GridLu => {
            let state = spec.build()?;
            let local = gamma_r(&state);
            let grid = grid_lu(&local, resolution_deg)?;
            let lib = lu_optimize(&local, restarts, seed).best_value;
            let gap = (grid.value - lib).abs();
            (
                state.n_qubits(),
                Some(grid.value),
                Some(lib),
                gap,
                GRID_LU_TOLERANCE,
            )
        }
        OracleCheck::DenseReduction | OracleCheck::StabilizerSum => {
            let graph = spec.graph()?.ok_or_else(|| {
                CliError::InvalidSpec(format!("{} needs a graph-state spec", check.name()))
            })?;
            let gap = if check == OracleCheck::DenseReduction {
                spec.build()?;
                dense_reduction_gap(&graph)?
            } else {
                stabilizer_sum_gap(&graph)?
            };
            (graph.n_vertices(), None, None, gap, EXACT_ORACLE_TOLERANCE)
        }
    };
    Ok(OracleReport {
        check: check.name().to_string(),
        n_qubits: n,
        oracle_value,
        library_value,
        gap,
        tolerance,
        pass: gap <= tolerance,
    })
}
