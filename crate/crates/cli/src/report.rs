use std::fmt::Write;

use serde::{Deserialize, Serialize};

use qfisher::{FamilyDetection, OptimalDirection};

use crate::spec::StateSpec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CluReport {
    pub direction: [f64; 3],
    pub fq: f64,
    pub degenerate: bool,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LuReport {
    /// `N λ_max[γ_R]`.
    pub upper: f64,
    /// Best value found by the search.
    pub lower: f64,
    pub certified: bool,
    pub assignment: Vec<[f64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DirectionReport {
    Unique {
        direction: [f64; 3],
    },
    Degenerate {
        representative: [f64; 3],
        multiplicity: usize,
    },
}

impl From<OptimalDirection> for DirectionReport {
    fn from(d: OptimalDirection) -> Self {
        match d {
            OptimalDirection::Unique(d) => DirectionReport::Unique {
                direction: d.as_array(),
            },
            OptimalDirection::Degenerate {
                representative,
                multiplicity,
            } => DirectionReport::Degenerate {
                representative: representative.as_array(),
                multiplicity,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilyReport {
    None,
    GhzQ { q: f64, phi: f64 },
}

impl From<FamilyDetection> for FamilyReport {
    fn from(f: FamilyDetection) -> Self {
        match f {
            FamilyDetection::None => FamilyReport::None,
            FamilyDetection::GhzQ { q, phi } => FamilyReport::GhzQ { q, phi },
        }
    }
}

/// Usefulness verdict. For symmetric entangled states every field is
/// decided in closed form; otherwise `useful_lu` is `null` when the LU
/// search and the eigenvalue bound straddle `N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictReport {
    pub useful_clu: bool,
    pub useful_lu: Option<bool>,
    pub fq_clu: f64,
    pub fq_lu: f64,
    pub optimal_direction: DirectionReport,
    pub family_detected: FamilyReport,
    pub boundary: bool,
    /// Only defined for symmetric states.
    pub lu_tie: Option<bool>,
}

/// Reference precisions for one shot (`m = 1`) of an `N`-qubit probe.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct References {
    pub repetitions: u64,
    /// `F_Q = N`.
    pub shot_noise_fq: f64,
    /// `1/√(mN)`.
    pub shot_noise_delta: f64,
    /// `F_Q = N²`.
    pub heisenberg_fq: f64,
    /// `1/(√m N)` with `m` and `N` fixed separately.
    pub heisenberg_delta: f64,
    /// `1/(mN)` at fixed total particle number.
    pub heisenberg_delta_total: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisReport {
    pub tool_version: String,
    pub seed: u64,
    pub restarts: usize,
    pub spec: StateSpec,
    pub n_qubits: usize,
    pub symmetric: bool,
    pub entangled: bool,
    pub gamma_c: [[f64; 3]; 3],
    pub clu: CluReport,
    pub lu: LuReport,
    pub verdict: VerdictReport,
    pub references: References,
}

fn vec3(v: &[f64; 3]) -> String {
    format!("({:+.9}, {:+.9}, {:+.9})", v[0], v[1], v[2])
}

impl AnalysisReport {
    /// Human-readable view. Never parsed back.
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let yes_no = |b: bool| if b { "yes" } else { "no" };
        let _ = writeln!(s, "qubits            {}", self.n_qubits);
        let _ = writeln!(s, "symmetric         {}", yes_no(self.symmetric));
        let _ = writeln!(s, "entangled         {}", yes_no(self.entangled));
        for (i, row) in self.gamma_c.iter().enumerate() {
            let label = if i == 0 { "gamma_c" } else { "" };
            let _ = writeln!(s, "{label:<18}{}", vec3(row));
        }
        let _ = writeln!(s, "clu fq            {:.9}", self.clu.fq);
        let _ = writeln!(s, "clu direction     {}", vec3(&self.clu.direction));
        if self.clu.degenerate {
            let _ = writeln!(
                s,
                "clu degenerate    multiplicity {}",
                self.clu.multiplicity
            );
        }
        let _ = writeln!(s, "lu lower          {:.9}", self.lu.lower);
        let _ = writeln!(s, "lu upper          {:.9}", self.lu.upper);
        let _ = writeln!(s, "lu certified      {}", yes_no(self.lu.certified));
        for (k, d) in self.lu.assignment.iter().enumerate() {
            let _ = writeln!(s, "  qubit {:<10}{}", k + 1, vec3(d));
        }
        let v = &self.verdict;
        let _ = writeln!(s, "useful (CLU)      {}", yes_no(v.useful_clu));
        let lu = match v.useful_lu {
            Some(b) => yes_no(b),
            None => "undecided",
        };
        let _ = writeln!(s, "useful (LU)       {lu}");
        if v.boundary {
            let _ = writeln!(s, "boundary          F_Q = N");
        }
        if let FamilyReport::GhzQ { q, phi } = v.family_detected {
            let _ = writeln!(s, "family            ghz_q q={q:.9} phi={phi:.9}");
        }
        let r = &self.references;
        let _ = writeln!(
            s,
            "shot noise        F_Q = {:.3}, delta = {:.9}",
            r.shot_noise_fq, r.shot_noise_delta
        );
        let _ = writeln!(
            s,
            "Heisenberg        F_Q = {:.3}, delta = {:.9} (total {:.9})",
            r.heisenberg_fq, r.heisenberg_delta, r.heisenberg_delta_total
        );
        let _ = writeln!(s, "seed              {}", self.seed);
        s
    }
}

/// Oracle comparison printed by the `oracle` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleReport {
    pub check: String,
    pub n_qubits: usize,
    /// Scalar compared by the oracle, when the check has one.
    pub oracle_value: Option<f64>,
    pub library_value: Option<f64>,
    pub gap: f64,
    pub tolerance: f64,
    pub pass: bool,
}
