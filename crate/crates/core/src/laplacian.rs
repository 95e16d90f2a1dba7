//! Graph Laplacians and incidence factorizations.
//!
//! * `L = Δ − A` (combinatorial), `L⁺ = Δ + A` (positive)
//! * `𝓛 = Δ^{-1/2} L Δ^{-1/2}` (symmetric), `𝓛⁺ = Δ^{-1/2} L⁺ Δ^{-1/2}`
//! * `M`: oriented vertex-by-edge incidence, `M Mᵀ = L`
//! * `S̄`: incidence over doubled arcs, `S̄ S̄ᵀ = 2𝓛`

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{Matrix, SymMatrix};

/// Allowed gap between the matrix-product and entrywise constructions of `𝓛`.
pub const SYMMETRIC_CROSS_CHECK_TOL: f64 = 1e-14;

fn degree_matrix(g: &Graph) -> SymMatrix {
    SymMatrix::diagonal(&g.degrees().iter().map(|&d| d as f64).collect::<Vec<_>>())
}

fn signed_laplacian(g: &Graph, sign: f64) -> SymMatrix {
    let mut l = degree_matrix(g);
    for &(i, j) in g.edges() {
        l.set(i, j, sign);
    }
    l
}

/// `Δ^{-1/2}` diagonal, failing on isolated vertices.
fn inv_sqrt_degrees(g: &Graph) -> Result<Vec<f64>> {
    g.degrees()
        .iter()
        .enumerate()
        .map(|(v, &d)| {
            if d == 0 {
                Err(Error::IsolatedVertex(v))
            } else {
                Ok(1.0 / (d as f64).sqrt())
            }
        })
        .collect()
}

/// Combinatorial Laplacian `L = Δ − A`.
pub fn combinatorial(g: &Graph) -> SymMatrix {
    signed_laplacian(g, -1.0)
}

/// Positive (signless) Laplacian `L⁺ = Δ + A`.
pub fn positive(g: &Graph) -> SymMatrix {
    signed_laplacian(g, 1.0)
}

fn congruence_by_inv_sqrt_degrees(g: &Graph, l: &SymMatrix) -> Result<SymMatrix> {
    let s = inv_sqrt_degrees(g)?;
    let d = SymMatrix::diagonal(&s).to_matrix();
    let prod = d.mul(&l.to_matrix())?.mul(&d)?;
    SymMatrix::from_matrix(&prod, 0.0)
}

/// Symmetric Laplacian `𝓛 = Δ^{-1/2} L Δ^{-1/2}` from the matrix product,
/// cross-checked against [`symmetric_entrywise`].
pub fn symmetric(g: &Graph) -> Result<SymMatrix> {
    let product = congruence_by_inv_sqrt_degrees(g, &combinatorial(g))?;
    let entrywise = symmetric_entrywise(g)?;
    let gap = product.max_abs_diff(&entrywise)?;
    if gap > SYMMETRIC_CROSS_CHECK_TOL {
        return Err(Error::IdentityFailure(format!(
            "symmetric Laplacian constructions differ by {gap:e}"
        )));
    }
    Ok(product)
}

/// `𝓛` from its closed entrywise form: 1 on the diagonal, `−1/√(d_i d_j)` on edges.
pub fn symmetric_entrywise(g: &Graph) -> Result<SymMatrix> {
    inv_sqrt_degrees(g)?;
    let d = g.degrees();
    Ok(SymMatrix::from_fn(g.n(), |i, j| {
        if i == j {
            1.0
        } else if g.has_edge(i, j) {
            -1.0 / ((d[i] * d[j]) as f64).sqrt()
        } else {
            0.0
        }
    }))
}

/// Positive symmetric Laplacian `𝓛⁺ = Δ^{-1/2} L⁺ Δ^{-1/2}`.
pub fn positive_symmetric(g: &Graph) -> Result<SymMatrix> {
    congruence_by_inv_sqrt_degrees(g, &positive(g))
}

/// Vertex-by-edge incidence matrix with a recorded orientation.
///
/// Column `k` belongs to `g.edges()[k]` and carries `+1` at the source, `−1` at the sink.
#[derive(Debug, Clone, PartialEq)]
pub struct OrientedIncidence {
    matrix: Matrix,
    orientation: Vec<(usize, usize)>,
}

impl OrientedIncidence {
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Per-edge `(source, sink)`.
    pub fn orientation(&self) -> &[(usize, usize)] {
        &self.orientation
    }

    /// `S = Δ^{-1/2} M`.
    pub fn normalized(&self, g: &Graph) -> Result<Matrix> {
        let s = inv_sqrt_degrees(g)?;
        Ok(Matrix::from_fn(self.matrix.rows(), self.matrix.cols(), |v, e| {
            s[v] * self.matrix.get(v, e)
        }))
    }
}

/// Incidence matrix with `sources[k]` as the source of edge `k` (either endpoint).
pub fn incidence(g: &Graph, sources: &[usize]) -> Result<OrientedIncidence> {
    if sources.len() != g.m() {
        return Err(Error::DimensionMismatch(format!(
            "{} sources for {} edges",
            sources.len(),
            g.m()
        )));
    }
    let mut matrix = Matrix::zeros(g.n(), g.m());
    let mut orientation = Vec::with_capacity(g.m());
    for (k, (&(i, j), &src)) in g.edges().iter().zip(sources).enumerate() {
        let sink = if src == i {
            j
        } else if src == j {
            i
        } else {
            return Err(Error::InvalidParameter(format!(
                "vertex {src} is not an endpoint of edge {{{i}, {j}}}"
            )));
        };
        matrix.set(src, k, 1.0);
        matrix.set(sink, k, -1.0);
        orientation.push((src, sink));
    }
    Ok(OrientedIncidence {
        matrix,
        orientation,
    })
}

/// Incidence with every edge oriented from its smaller endpoint.
pub fn canonical_incidence(g: &Graph) -> OrientedIncidence {
    let sources: Vec<usize> = g.edges().iter().map(|&(i, _)| i).collect();
    incidence(g, &sources).expect("canonical sources are endpoints")
}

/// Arc order of the doubled edge space: forward arcs `(i, j)`, `i < j`, then the
/// reversed arcs `(j, i)`, each block lexicographic.
pub fn doubled_arcs(g: &Graph) -> Vec<(usize, usize)> {
    let mut reversed: Vec<(usize, usize)> = g.edges().iter().map(|&(i, j)| (j, i)).collect();
    reversed.sort_unstable();
    g.edges().iter().copied().chain(reversed).collect()
}

/// `S̄` (n × 2m): column of forward arc `(i, j)` is `v_i/√d_i − v_j/√d_j`,
/// column of its reverse is the negation.
pub fn doubled_incidence(g: &Graph) -> Result<Matrix> {
    let s = inv_sqrt_degrees(g)?;
    let arcs = doubled_arcs(g);
    let mut out = Matrix::zeros(g.n(), arcs.len());
    for (col, &(a, b)) in arcs.iter().enumerate() {
        // forward arcs have a < b; the same formula with (a, b) covers the reversed block
        out.set(a, col, s[a]);
        out.set(b, col, -s[b]);
    }
    Ok(out)
}
