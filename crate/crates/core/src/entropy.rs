//! Spectral entropies (Von Neumann, Rényi-p, structural), closed forms for
//! named graph families, and majorization.
//!
//! All functions return nats; [`LogBase::convert`] rescales to bits.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::laplacian;
use crate::linalg::{jacobi_eigen, Spectrum, DEFAULT_JACOBI_TOL, EIG_CLAMP_EPS};

/// Tolerance on `Σ p_i = 1`.
pub const SUM_TOL: f64 = 1e-10;

/// Eigenvalues above this count toward the rank in `H_0`.
pub const RANK_EPS: f64 = 1e-9;

/// Slack on prefix-sum comparisons in [`majorizes`].
pub const MAJORIZATION_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum LogBase {
    #[default]
    #[serde(rename = "e")]
    E,
    #[serde(rename = "2")]
    Two,
}

impl LogBase {
    /// Rescales a value in nats.
    pub fn convert(self, nats: f64) -> f64 {
        match self {
            LogBase::E => nats,
            LogBase::Two => nats / std::f64::consts::LN_2,
        }
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LogBase::E => "e",
            LogBase::Two => "2",
        })
    }
}

impl FromStr for LogBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "e" => Ok(LogBase::E),
            "2" => Ok(LogBase::Two),
            other => Err(Error::InvalidParameter(format!(
                "log base must be 'e' or '2', got {other:?}"
            ))),
        }
    }
}

/// Non-negative entries summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(&neg) = values.iter().find(|v| !(**v >= 0.0)) {
            return Err(Error::NegativeEigenvalue(neg));
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::NotNormalized(sum));
        }
        Ok(ProbabilityVector(values))
    }

    pub fn uniform(n: usize) -> Self {
        ProbabilityVector(vec![1.0 / n as f64; n])
    }

    /// Clamps rounding noise below zero, then validates.
    pub fn from_spectrum(spec: &Spectrum) -> Result<Self> {
        Self::new(spec.clamped(EIG_CLAMP_EPS)?.values().to_vec())
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn sorted_desc(&self) -> Vec<f64> {
        let mut v = self.0.clone();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }
}

/// `−Σ λ log λ` with `0 log 0 = 0`.
pub fn von_neumann(p: &ProbabilityVector) -> f64 {
    -p.0
        .iter()
        .map(|&x| if x == 0.0 { 0.0 } else { x * x.ln() })
        .sum::<f64>()
}

/// Rényi-p entropy with the default rank threshold.
pub fn renyi(p: &ProbabilityVector, order: f64) -> Result<f64> {
    renyi_with(p, order, RANK_EPS)
}

/// Rényi-p entropy. Order 1 is the Von Neumann entropy, order 0 the log of the
/// number of entries above `rank_eps`.
pub fn renyi_with(p: &ProbabilityVector, order: f64, rank_eps: f64) -> Result<f64> {
    if !(order >= 0.0) || order.is_infinite() {
        return Err(Error::InvalidParameter(format!(
            "Rényi order must be a finite value >= 0, got {order}"
        )));
    }
    if order == 0.0 {
        let rank = p.0.iter().filter(|&&x| x > rank_eps).count();
        return Ok((rank as f64).ln());
    }
    if order == 1.0 {
        return Ok(von_neumann(p));
    }
    // Below order 1, x^p amplifies eigensolver residue on a zero eigenvalue
    // (1e-17 becomes 3e-9 at p = 1/2), so such entries count as zero like in H_0.
    let floor = if order < 1.0 { rank_eps } else { 0.0 };
    let s: f64 = p.0.iter().filter(|&&x| x > floor).map(|&x| x.powf(order)).sum();
    Ok(s.ln() / (1.0 - order))
}

/// Probabilities of `ρ_V = 𝓛/n` for a connected graph.
pub fn graph_probabilities(g: &Graph, jacobi_tol: f64) -> Result<ProbabilityVector> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let l = laplacian::symmetric(g)?;
    let n = g.n() as f64;
    let spec = jacobi_eigen(&l, jacobi_tol)?.map(|x| x / n);
    ProbabilityVector::from_spectrum(&spec)
}

/// Structural entropy `H − H_2` of a connected graph, in nats.
pub fn structural(g: &Graph) -> Result<f64> {
    let p = graph_probabilities(g, DEFAULT_JACOBI_TOL)?;
    Ok(von_neumann(&p) - renyi(&p, 2.0)?)
}

/// Knobs shared by the entropy report and the CLI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropySettings {
    pub base: LogBase,
    pub jacobi_tol: f64,
    pub rank_eps: f64,
}

impl Default for EntropySettings {
    fn default() -> Self {
        EntropySettings {
            base: LogBase::E,
            jacobi_tol: DEFAULT_JACOBI_TOL,
            rank_eps: RANK_EPS,
        }
    }
}

/// Entropies of one graph, expressed in `base`.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyReport {
    pub n: usize,
    pub m: usize,
    pub degrees: Vec<usize>,
    /// Clamped spectrum of `ρ_V`, non-increasing.
    pub spectrum: Vec<f64>,
    pub vn: f64,
    /// `(order, H_order)` in the requested order.
    pub renyi: Vec<(f64, f64)>,
    pub structural: f64,
    pub base: LogBase,
}

impl EntropyReport {
    pub fn compute(g: &Graph, orders: &[f64], settings: &EntropySettings) -> Result<Self> {
        let p = graph_probabilities(g, settings.jacobi_tol)?;
        let vn = von_neumann(&p);
        let h2 = renyi_with(&p, 2.0, settings.rank_eps)?;
        let base = settings.base;
        let renyi = orders
            .iter()
            .map(|&o| Ok((o, base.convert(renyi_with(&p, o, settings.rank_eps)?))))
            .collect::<Result<Vec<_>>>()?;
        Ok(EntropyReport {
            n: g.n(),
            m: g.m(),
            degrees: g.degrees().to_vec(),
            spectrum: p.values().to_vec(),
            vn: base.convert(vn),
            renyi,
            structural: base.convert(vn - h2),
            base,
        })
    }
}

/// Closed-form entropies of named families, in nats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedForm {
    /// `H(K_n) = log(n − 1)`.
    CompleteVn { n: usize },
    /// `H_2(R_{k,n}) = log(n / (1 + 1/k))`.
    RegularRenyi2 { n: usize, k: usize },
    /// `H(K_{n−k,k}) = log n − (2/n) log 2`, independent of the split.
    BipartiteVn { n: usize },
    /// `H_2(K_{n−k,k}) = −log((n + 2)/n²)`, independent of the split.
    BipartiteRenyi2 { n: usize },
}

impl ClosedForm {
    pub fn value(self) -> Result<f64> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match self {
            ClosedForm::CompleteVn { n } => {
                if n < 2 {
                    return bad(format!("complete graph needs n >= 2, got {n}"));
                }
                Ok(((n - 1) as f64).ln())
            }
            ClosedForm::RegularRenyi2 { n, k } => {
                if k < 1 || k >= n || (n * k) % 2 == 1 {
                    return bad(format!("no connected {k}-regular graph on {n} vertices"));
                }
                if k == 1 && n != 2 {
                    return bad("a connected 1-regular graph has exactly 2 vertices".into());
                }
                Ok((n as f64 / (1.0 + 1.0 / k as f64)).ln())
            }
            ClosedForm::BipartiteVn { n } => {
                if n < 2 {
                    return bad(format!("complete bipartite graph needs n >= 2, got {n}"));
                }
                let n = n as f64;
                Ok(n.ln() - 2.0 / n * std::f64::consts::LN_2)
            }
            ClosedForm::BipartiteRenyi2 { n } => {
                if n < 2 {
                    return bad(format!("complete bipartite graph needs n >= 2, got {n}"));
                }
                let n = n as f64;
                Ok(-((n + 2.0) / (n * n)).ln())
            }
        }
    }
}

/// True iff `b` majorizes `a` (`a ≺ b`): after sorting both non-increasing,
/// every prefix sum of `a` is at most the matching prefix sum of `b`.
pub fn majorizes(a: &ProbabilityVector, b: &ProbabilityVector) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "majorization of lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    let (sa, sb) = (a.sorted_desc(), b.sorted_desc());
    let (mut pa, mut pb) = (0.0, 0.0);
    for (x, y) in sa.iter().zip(&sb) {
        pa += x;
        pb += y;
        if pa > pb + MAJORIZATION_SLACK {
            return Ok(false);
        }
    }
    Ok(true)
}
