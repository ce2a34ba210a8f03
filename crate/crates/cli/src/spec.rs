use serde::{Deserialize, Serialize};

use qfisher::{
    cabello_singlet, dicke_state, ghz_q, graph_state, grid_cluster, linear_cluster, noon, ps_state,
    ring_cluster, star_graph, twin_fock, Graph, Limits, PureState, C64,
};

use crate::CliError;

/// Distance from unit norm within which amplitude input is renormalized.
pub const AMPLITUDE_NORM_SLACK: f64 = 1e-6;

/// A named state or an explicit amplitude vector, tagged by `kind`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StateSpec {
    Noon {
        n: usize,
    },
    GhzQ {
        n: usize,
        q: f64,
        #[serde(default)]
        phi: f64,
    },
    TwinFock {
        n: usize,
    },
    Ps {
        n: usize,
    },
    Dicke {
        n: usize,
        m: f64,
    },
    Singlet {
        n: usize,
    },
    Graph {
        n: usize,
        edges: Vec<[usize; 2]>,
    },
    LinearCluster {
        n: usize,
    },
    RingCluster {
        n: usize,
    },
    GridCluster {
        rows: usize,
        cols: usize,
    },
    Star {
        n: usize,
    },
    /// Computational-basis amplitudes as `[re, im]` pairs, qubit 1 most
    /// significant.
    Amplitudes {
        amplitudes: Vec<[f64; 2]>,
    },
}

impl StateSpec {
    /// Parses either an inline JSON object or the path of a file holding one.
    pub fn load(arg: &str) -> Result<StateSpec, CliError> {
        let text = if arg.trim_start().starts_with('{') {
            arg.to_string()
        } else {
            std::fs::read_to_string(arg)
                .map_err(|e| CliError::InvalidSpec(format!("cannot read {arg}: {e}")))?
        };
        serde_json::from_str(&text).map_err(|e| CliError::InvalidSpec(e.to_string()))
    }

    /// Number of qubits implied by the parameters, without building anything.
    pub fn n_qubits(&self) -> Option<usize> {
        match self {
            StateSpec::Noon { n }
            | StateSpec::GhzQ { n, .. }
            | StateSpec::TwinFock { n }
            | StateSpec::Ps { n }
            | StateSpec::Dicke { n, .. }
            | StateSpec::Singlet { n }
            | StateSpec::Graph { n, .. }
            | StateSpec::LinearCluster { n }
            | StateSpec::RingCluster { n }
            | StateSpec::Star { n } => Some(*n),
            StateSpec::GridCluster { rows, cols } => rows.checked_mul(*cols),
            StateSpec::Amplitudes { amplitudes } => {
                let len = amplitudes.len();
                (len.is_power_of_two()).then(|| len.trailing_zeros() as usize)
            }
        }
    }

    /// The graph behind a graph-state spec.
    pub fn graph(&self) -> Result<Option<Graph>, CliError> {
        let g = match self {
            StateSpec::Graph { n, edges } => {
                let edges: Vec<(usize, usize)> = edges.iter().map(|e| (e[0], e[1])).collect();
                Graph::new(*n, &edges)?
            }
            StateSpec::LinearCluster { n } => linear_cluster(*n)?,
            StateSpec::RingCluster { n } => ring_cluster(*n)?,
            StateSpec::GridCluster { rows, cols } => grid_cluster(*rows, *cols)?,
            StateSpec::Star { n } => star_graph(*n)?,
            _ => return Ok(None),
        };
        Ok(Some(g))
    }

    pub fn build(&self) -> Result<PureState, CliError> {
        let n = self.n_qubits().ok_or_else(|| match self {
            StateSpec::Amplitudes { amplitudes } => CliError::InvalidSpec(format!(
                "amplitude count {} is not a power of two",
                amplitudes.len()
            )),
            _ => CliError::InvalidSpec("grid size overflows".into()),
        })?;
        let cap = Limits::DEFAULT.max_pure_qubits;
        if n > cap {
            return Err(CliError::DimensionCap(format!(
                "{n} qubits exceeds the cap of {cap}"
            )));
        }
        if let Some(g) = self.graph()? {
            return Ok(graph_state(&g)?);
        }
        let state = match self {
            StateSpec::Noon { n } => noon(*n)?,
            StateSpec::GhzQ { n, q, phi } => ghz_q(*n, *q, *phi)?,
            StateSpec::TwinFock { n } => twin_fock(*n)?,
            StateSpec::Ps { n } => ps_state(*n)?,
            StateSpec::Dicke { n, m } => dicke_state(*n, *m)?,
            StateSpec::Singlet { n } => cabello_singlet(*n)?,
            StateSpec::Amplitudes { amplitudes } => from_amplitudes(amplitudes)?,
            _ => unreachable!("graph kinds handled above"),
        };
        Ok(state)
    }
}

fn from_amplitudes(pairs: &[[f64; 2]]) -> Result<PureState, CliError> {
    if pairs.len() < 2 {
        return Err(CliError::InvalidSpec(
            "at least one qubit (two amplitudes) is required".into(),
        ));
    }
    if pairs.iter().flatten().any(|x| !x.is_finite()) {
        return Err(CliError::InvalidSpec("amplitudes must be finite".into()));
    }
    let v: Vec<C64> = pairs.iter().map(|p| C64::new(p[0], p[1])).collect();
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > AMPLITUDE_NORM_SLACK {
        return Err(CliError::InvalidSpec(format!(
            "amplitude norm {norm} is not within {AMPLITUDE_NORM_SLACK:e} of 1"
        )));
    }
    Ok(PureState::normalized(v)?)
}
