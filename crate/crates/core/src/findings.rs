//! Exhaustive tabulations over small connected graphs:
//!
//! * the arc-side partial trace of `ψ_G ψ_Gᵀ` compared spectrally with `𝓛⁺` and
//!   with `𝓛`, split by bipartiteness;
//! * the neighbor-inverse-sum inequality per vertex and in summed form.
//!
//! Both are informational; neither feeds any exit status.

use std::fmt::Write as _;

use serde::Serialize;

use crate::bounds::{neighbor_sum_check, map_partitions, NeighborSumSummary};
use crate::error::{Error, Result};
use crate::graph::enumerate_connected_range;
use crate::qstate::{verify_partial_traces, MAX_STATE_N};

/// Tolerance on `Tr_E{ψψᵀ} = 𝓛` in the tabulation.
pub const TRACE_IDENTITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct PartialTraceRow {
    pub n: usize,
    pub bipartite: bool,
    pub graphs: usize,
    /// Arc marginal shares its nonzero spectrum with `𝓛⁺`.
    pub agrees_with_lplus: usize,
    /// Arc marginal shares its nonzero spectrum with `𝓛`.
    pub agrees_with_l: usize,
    /// Graphs where `Tr_E{ψψᵀ} = 𝓛` failed.
    pub vertex_trace_failures: usize,
    pub max_vertex_trace_residual: f64,
    pub max_schmidt_entropy_gap: f64,
}

impl PartialTraceRow {
    fn merge(&mut self, o: &PartialTraceRow) {
        self.graphs += o.graphs;
        self.agrees_with_lplus += o.agrees_with_lplus;
        self.agrees_with_l += o.agrees_with_l;
        self.vertex_trace_failures += o.vertex_trace_failures;
        self.max_vertex_trace_residual = self.max_vertex_trace_residual.max(o.max_vertex_trace_residual);
        self.max_schmidt_entropy_gap = self.max_schmidt_entropy_gap.max(o.max_schmidt_entropy_gap);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NeighborSumRow {
    pub n: usize,
    pub graphs: usize,
    #[serde(flatten)]
    pub summary: NeighborSumSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Findings {
    pub partial_trace: Vec<PartialTraceRow>,
    pub neighbor_sum: Vec<NeighborSumRow>,
}

/// Non-bipartite and bipartite rows for one `n`.
pub fn partial_trace_rows(n: usize, threads: usize) -> Result<[PartialTraceRow; 2]> {
    if !(2..=MAX_STATE_N).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "partial-trace tabulation supports 2 <= n <= {MAX_STATE_N}, got {n}"
        )));
    }
    let parts = map_partitions(n, threads, |range| {
        let mut rows = [false, true].map(|bipartite| PartialTraceRow {
            n,
            bipartite,
            ..Default::default()
        });
        for (_, g) in enumerate_connected_range(n, range)? {
            let rep = verify_partial_traces(&g, TRACE_IDENTITY_TOL)?;
            let row = &mut rows[usize::from(rep.bipartite)];
            row.graphs += 1;
            row.agrees_with_lplus += usize::from(rep.tr_v_isospectral);
            row.agrees_with_l += usize::from(rep.tr_v_matches_l_spectrum);
            row.vertex_trace_failures += usize::from(!rep.tr_e_matches);
            row.max_vertex_trace_residual = row.max_vertex_trace_residual.max(rep.tr_e_residual);
            row.max_schmidt_entropy_gap = row.max_schmidt_entropy_gap.max(rep.schmidt_entropy_gap);
        }
        Ok(rows)
    })?;
    let mut total = [false, true].map(|bipartite| PartialTraceRow {
        n,
        bipartite,
        ..Default::default()
    });
    for p in &parts {
        total[0].merge(&p[0]);
        total[1].merge(&p[1]);
    }
    Ok(total)
}

pub fn neighbor_sum_row(n: usize, threads: usize) -> Result<NeighborSumRow> {
    let parts = map_partitions(n, threads, |range| {
        let mut graphs = 0;
        let mut summary = NeighborSumSummary::default();
        for (_, g) in enumerate_connected_range(n, range)? {
            graphs += 1;
            summary.add(&neighbor_sum_check(&g)?);
        }
        Ok((graphs, summary))
    })?;
    let mut row = NeighborSumRow {
        n,
        graphs: 0,
        summary: NeighborSumSummary::default(),
    };
    for (graphs, s) in parts {
        row.graphs += graphs;
        row.summary.merge(&s);
    }
    Ok(row)
}

/// Both tables for `2 <= n <= max_n`.
pub fn collect(max_n: usize, threads: usize) -> Result<Findings> {
    let mut partial_trace = Vec::new();
    let mut neighbor_sum = Vec::new();
    for n in 2..=max_n {
        partial_trace.extend(partial_trace_rows(n, threads)?);
        neighbor_sum.push(neighbor_sum_row(n, threads)?);
    }
    Ok(Findings {
        partial_trace,
        neighbor_sum,
    })
}

impl Findings {
    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        s.push_str("## Arc-side partial trace vs L+ (nonzero spectra)\n\n");
        s.push_str(
            "| n | bipartite | graphs | Tr_V ~ L+ | Tr_V ~ L | Tr_E = L failures | max Tr_E residual | max Schmidt entropy gap |\n",
        );
        s.push_str("|---|---|---|---|---|---|---|---|\n");
        for r in &self.partial_trace {
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} | {} | {:.3e} | {:.3e} |",
                r.n,
                if r.bipartite { "yes" } else { "no" },
                r.graphs,
                r.agrees_with_lplus,
                r.agrees_with_l,
                r.vertex_trace_failures,
                r.max_vertex_trace_residual,
                r.max_schmidt_entropy_gap
            );
        }
        s.push_str("\n## Neighbor-inverse-sum inequality\n\n");
        s.push_str(
            "| n | graphs | vertex checks | vertex failures | graphs with a failing vertex | summed-form failures | worst lhs/rhs |\n",
        );
        s.push_str("|---|---|---|---|---|---|---|\n");
        for r in &self.neighbor_sum {
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} | {} | {:.6} |",
                r.n,
                r.graphs,
                r.summary.vertex_checks,
                r.summary.vertex_failures,
                r.summary.graphs_with_vertex_failure,
                r.summary.aggregate_failures,
                r.summary.worst_vertex_ratio
            );
        }
        s
    }
}
