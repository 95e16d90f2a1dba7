//! The bipartite pure state of a graph and its reduced density matrices.
//!
//! The state lives in `H_V ⊗ H_E` with `H_E = H_V ⊗ H_V`, so it has `n³`
//! amplitudes indexed `vertex·n² + arc_source·n + arc_sink`:
//!
//! ```text
//! ψ_G = (1/√2) Σ_{i<j, {i,j} ∈ E} (v_i/√d_i − v_j/√d_j) ⊗ (v_ij − v_ji)
//! ```
//!
//! Tracing out the arc factor of `ψ_G ψ_Gᵀ` gives `𝓛`; normalizing by
//! `‖ψ_G‖² = Tr 𝓛 = n` gives the purification `|ψ_G⟩` of `ρ_V = 𝓛/n`.

use serde::Serialize;

use crate::entropy::{self, ProbabilityVector};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::laplacian;
use crate::linalg::{
    jacobi_eigen, outer_sym, partial_trace, partial_trace_pure, Keep, Spectrum, SymMatrix,
    DEFAULT_JACOBI_TOL, EIG_CLAMP_EPS,
};

/// Largest vertex count for which states are built (`n³` amplitudes).
pub const MAX_STATE_N: usize = 7;

/// Eigenvalues below this magnitude are treated as zero when comparing spectra.
pub const NONZERO_THRESHOLD: f64 = 1e-9;

/// Agreement tolerance for nonzero spectra and for the Schmidt entropy equality.
pub const SPECTRAL_TOL: f64 = 1e-9;

const TRACE_TOL: f64 = 1e-12;

/// Real vector in the vertex ⊗ arc space.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n: usize,
    amplitudes: Vec<f64>,
}

impl PureState {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    /// Composite index of `vertex ⊗ (source → sink)`.
    pub fn index(&self, vertex: usize, source: usize, sink: usize) -> usize {
        (vertex * self.n + source) * self.n + sink
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> PureState {
        let norm = self.norm();
        PureState {
            n: self.n,
            amplitudes: self.amplitudes.iter().map(|a| a / norm).collect(),
        }
    }

    /// Factor dimensions `(n, n²)`.
    pub fn dims(&self) -> (usize, usize) {
        (self.n, self.n * self.n)
    }

    /// `Tr_E{ψψᵀ}`: the `n × n` vertex marginal.
    pub fn trace_out_arcs(&self) -> SymMatrix {
        partial_trace_pure(&self.amplitudes, self.dims(), Keep::First).expect("dims match")
    }

    /// `Tr_V{ψψᵀ}`: the `n² × n²` arc marginal.
    pub fn trace_out_vertices(&self) -> SymMatrix {
        partial_trace_pure(&self.amplitudes, self.dims(), Keep::Second).expect("dims match")
    }

    /// Reference path through the full `n³ × n³` density matrix.
    pub fn trace_out_full(&self, keep: Keep) -> SymMatrix {
        partial_trace(&outer_sym(&self.amplitudes), self.dims(), keep).expect("dims match")
    }
}

fn check_state_input(g: &Graph) -> Result<()> {
    if g.n() < 2 {
        return Err(Error::InvalidParameter("state needs at least two vertices".into()));
    }
    if g.n() > MAX_STATE_N {
        return Err(Error::InvalidParameter(format!(
            "state construction supports n <= {MAX_STATE_N}, got {}",
            g.n()
        )));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// Unnormalized `ψ_G`; its squared norm is `n`.
pub fn psi(g: &Graph) -> Result<PureState> {
    check_state_input(g)?;
    let n = g.n();
    let mut state = PureState {
        n,
        amplitudes: vec![0.0; n * n * n],
    };
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for &(i, j) in g.edges() {
        let wi = h / (g.degree(i) as f64).sqrt();
        let wj = -h / (g.degree(j) as f64).sqrt();
        for (vertex, w) in [(i, wi), (j, wj)] {
            let fwd = state.index(vertex, i, j);
            let rev = state.index(vertex, j, i);
            state.amplitudes[fwd] += w;
            state.amplitudes[rev] -= w;
        }
    }
    Ok(state)
}

/// Normalized `|ψ_G⟩ = ψ_G/√n`.
pub fn ket(g: &Graph) -> Result<PureState> {
    Ok(psi(g)?.normalized())
}

/// Symmetric PSD matrix with unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: SymMatrix,
}

impl DensityMatrix {
    /// Validates unit trace; positivity is checked when the spectrum is taken.
    pub fn new(matrix: SymMatrix) -> Result<Self> {
        let tr = matrix.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::NotNormalized(tr));
        }
        Ok(DensityMatrix { matrix })
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Clamped eigenvalues.
    pub fn spectrum(&self, jacobi_tol: f64) -> Result<Spectrum> {
        jacobi_eigen(&self.matrix, jacobi_tol)?.clamped(EIG_CLAMP_EPS)
    }

    pub fn probabilities(&self, jacobi_tol: f64) -> Result<ProbabilityVector> {
        ProbabilityVector::from_spectrum(&self.spectrum(jacobi_tol)?)
    }
}

fn require_connected(g: &Graph) -> Result<()> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// `ρ_V = 𝓛 / n`.
pub fn rho_v(g: &Graph) -> Result<DensityMatrix> {
    require_connected(g)?;
    let l = laplacian::symmetric(g)?;
    DensityMatrix::new(l.scale(1.0 / g.n() as f64))
}

/// `ρ_E = 𝓛⁺ / n`.
pub fn rho_e(g: &Graph) -> Result<DensityMatrix> {
    require_connected(g)?;
    let l = laplacian::positive_symmetric(g)?;
    DensityMatrix::new(l.scale(1.0 / g.n() as f64))
}

/// Outcome of checking both partial-trace identities of `ψ_G ψ_Gᵀ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartialTraceReport {
    pub n: usize,
    pub bipartite: bool,
    /// `max |Tr_E{ψψᵀ} − 𝓛|` is within the requested tolerance.
    pub tr_e_matches: bool,
    pub tr_e_residual: f64,
    /// Nonzero spectrum of `Tr_V{ψψᵀ}`.
    pub tr_v_spectrum: Vec<f64>,
    /// Nonzero spectrum of `𝓛⁺`.
    pub lplus_spectrum: Vec<f64>,
    /// Nonzero spectrum of `𝓛`.
    pub l_spectrum: Vec<f64>,
    /// `Tr_V{ψψᵀ}` and `𝓛⁺` share their nonzero spectrum.
    pub tr_v_isospectral: bool,
    /// `Tr_V{ψψᵀ}` and `𝓛` share their nonzero spectrum.
    pub tr_v_matches_l_spectrum: bool,
    /// `|H(Tr_E) − H(Tr_V)|` for the normalized state.
    pub schmidt_entropy_gap: f64,
}

fn spectra_agree(a: &Spectrum, b: &Spectrum) -> bool {
    a.max_abs_diff(b).is_some_and(|d| d <= SPECTRAL_TOL)
}

/// Computes both partial traces of `ψ_G ψ_Gᵀ` and compares them with `𝓛` and `𝓛⁺`.
///
/// The arc-side comparison is reported, never asserted.
pub fn verify_partial_traces(g: &Graph, tol: f64) -> Result<PartialTraceReport> {
    let state = psi(g)?;
    let n = g.n() as f64;

    let l = laplacian::symmetric(g)?;
    let lplus = laplacian::positive_symmetric(g)?;
    let tr_e = state.trace_out_arcs();
    let tr_v = state.trace_out_vertices();
    let tr_e_residual = tr_e.max_abs_diff(&l)?;

    let eig = |m: &SymMatrix| -> Result<Spectrum> {
        jacobi_eigen(m, DEFAULT_JACOBI_TOL)?.clamped(EIG_CLAMP_EPS)
    };
    let tr_e_spec = eig(&tr_e)?;
    let tr_v_spec = eig(&tr_v)?;
    let l_spec = eig(&l)?.nonzero(NONZERO_THRESHOLD);
    let lplus_spec = eig(&lplus)?.nonzero(NONZERO_THRESHOLD);
    let tr_v_nonzero = tr_v_spec.nonzero(NONZERO_THRESHOLD);

    let h_e = entropy::von_neumann(&ProbabilityVector::from_spectrum(&tr_e_spec.map(|x| x / n))?);
    let h_v = entropy::von_neumann(&ProbabilityVector::from_spectrum(&tr_v_spec.map(|x| x / n))?);

    Ok(PartialTraceReport {
        n: g.n(),
        bipartite: g.is_bipartite(),
        tr_e_matches: tr_e_residual <= tol,
        tr_e_residual,
        tr_v_isospectral: spectra_agree(&tr_v_nonzero, &lplus_spec),
        tr_v_matches_l_spectrum: spectra_agree(&tr_v_nonzero, &l_spec),
        tr_v_spectrum: tr_v_nonzero.values().to_vec(),
        lplus_spectrum: lplus_spec.values().to_vec(),
        l_spectrum: l_spec.values().to_vec(),
        schmidt_entropy_gap: (h_e - h_v).abs(),
    })
}
