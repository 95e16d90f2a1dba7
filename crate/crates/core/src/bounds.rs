//! Entropy bounds for connected graphs and exhaustive scans over all labeled
//! connected graphs of a given order.
//!
//! Every inequality is recorded as an [`Inequality`] with `margin` oriented so
//! that a non-negative margin means the inequality holds. Margins down to
//! `-BOUNDARY_SLACK` still count as holding; such cases are flagged as
//! boundary hits instead of violations.

use std::collections::HashMap;
use std::ops::Range;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::entropy::{graph_probabilities, renyi, von_neumann, ClosedForm, ProbabilityVector};
use crate::error::{Error, Result};
use crate::graph::{bitmask_count, enumerate_connected_range, Family, Graph};
use crate::laplacian;
use crate::linalg::{jacobi_eigen, DEFAULT_JACOBI_TOL};

/// Tolerance on inequality margins.
pub const BOUNDARY_SLACK: f64 = 1e-10;

/// Slack on each per-vertex neighbor-inverse-sum comparison.
pub const NEIGHBOR_SUM_SLACK: f64 = 1e-12;

/// Tolerance on the numerical identities checked during a scan.
pub const IDENTITY_TOL: f64 = 1e-10;

/// Tolerance on `S̄ S̄ᵀ = 2𝓛`.
pub const DOUBLED_INCIDENCE_TOL: f64 = 1e-12;

/// Largest `n` scanned without an explicit opt-in.
pub const MAX_DEFAULT_SCAN_N: usize = 6;

/// Rényi orders checked by default in scans.
pub const DEFAULT_ORDERS: [f64; 3] = [1.0, 2.0, 3.0];

/// Order grid for the monotonicity identity.
pub const MONOTONICITY_GRID: [f64; 7] = [0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 10.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
}

/// One evaluated inequality `lhs <relation> rhs`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Inequality {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub relation: Relation,
    pub holds: bool,
    pub margin: f64,
    /// Holds only within [`BOUNDARY_SLACK`], or a strict inequality met with equality.
    pub boundary: bool,
}

impl Inequality {
    pub fn new(name: impl Into<String>, lhs: f64, relation: Relation, rhs: f64) -> Self {
        let margin = match relation {
            Relation::Le | Relation::Lt => rhs - lhs,
            Relation::Ge | Relation::Gt => lhs - rhs,
        };
        let strict = matches!(relation, Relation::Lt | Relation::Gt);
        let holds = margin > -BOUNDARY_SLACK;
        let boundary = holds && (margin < 0.0 || (strict && margin <= BOUNDARY_SLACK));
        Inequality {
            name: name.into(),
            lhs,
            rhs,
            relation,
            holds,
            margin,
            boundary,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct BoundReport {
    pub checks: Vec<Inequality>,
}

impl BoundReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn get(&self, name: &str) -> Option<&Inequality> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, c: Inequality) {
        self.checks.push(c);
    }
}

/// Per-`n` comparison values: the cycle and the complete graph on the same vertex count.
#[derive(Debug, Clone)]
pub struct Reference {
    pub n: usize,
    /// `H(R_{2,n})` by eigensolving the n-cycle.
    pub cycle_vn: f64,
    /// `H_2(R_{2,n}) = log(2n/3)`.
    pub cycle_renyi2: f64,
    complete: ProbabilityVector,
}

impl Reference {
    fn compute(n: usize) -> Result<Self> {
        let cycle = Family::Cycle(n).generate()?;
        let complete = Family::Complete(n).generate()?;
        Ok(Reference {
            n,
            cycle_vn: von_neumann(&graph_probabilities(&cycle, DEFAULT_JACOBI_TOL)?),
            cycle_renyi2: ClosedForm::RegularRenyi2 { n, k: 2 }.value()?,
            complete: graph_probabilities(&complete, DEFAULT_JACOBI_TOL)?,
        })
    }

    /// Memoized per `n` (n >= 3).
    pub fn for_n(n: usize) -> Result<Arc<Reference>> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Reference>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(r) = cache.lock().unwrap().get(&n) {
            return Ok(r.clone());
        }
        let r = Arc::new(Reference::compute(n)?);
        cache.lock().unwrap().insert(n, r.clone());
        Ok(r)
    }

    /// `H_p(K_n)` through the same spectral pipeline as any other graph.
    pub fn complete_renyi(&self, order: f64) -> Result<f64> {
        renyi(&self.complete, order)
    }
}

/// Spectral quantities reused by every check on one graph.
#[derive(Debug, Clone)]
pub struct GraphEntropies {
    pub probabilities: ProbabilityVector,
    pub vn: f64,
    pub renyi2: f64,
}

impl GraphEntropies {
    pub fn compute(g: &Graph) -> Result<Self> {
        let probabilities = graph_probabilities(g, DEFAULT_JACOBI_TOL)?;
        Ok(GraphEntropies {
            vn: von_neumann(&probabilities),
            renyi2: renyi(&probabilities, 2.0)?,
            probabilities,
        })
    }
}

fn connected_with_min_n(g: &Graph, min_n: usize) -> Result<()> {
    if g.n() < min_n {
        return Err(Error::InvalidParameter(format!(
            "check needs n >= {min_n}, got {}",
            g.n()
        )));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// `log(n² / (n + Σ_i 1/√d_i))`.
pub fn degree_renyi2_bound(g: &Graph) -> f64 {
    let n = g.n() as f64;
    let s: f64 = g.degrees().iter().map(|&d| 1.0 / (d as f64).sqrt()).sum();
    (n * n / (n + s)).ln()
}

/// The two lower bounds on `H_2` and the Von Neumann bound against the cycle.
pub fn lower_bound_check(g: &Graph) -> Result<BoundReport> {
    connected_with_min_n(g, 3)?;
    let e = GraphEntropies::compute(g)?;
    lower_bound_from(g, &e, &*Reference::for_n(g.n())?)
}

pub fn lower_bound_from(g: &Graph, e: &GraphEntropies, r: &Reference) -> Result<BoundReport> {
    let n = g.n() as f64;
    let bound = degree_renyi2_bound(g);
    let mut rep = BoundReport::default();
    rep.push(Inequality::new("renyi2_ge_degree_bound", e.renyi2, Relation::Ge, bound));
    rep.push(Inequality::new(
        "degree_bound_gt_log_half_n",
        bound,
        Relation::Gt,
        n.ln() - std::f64::consts::LN_2,
    ));
    rep.push(Inequality::new(
        "renyi2_gt_cycle_minus_log_4_3",
        e.renyi2,
        Relation::Gt,
        r.cycle_renyi2 - (4.0f64 / 3.0).ln(),
    ));
    rep.push(Inequality::new(
        "vn_gt_cycle_minus_log_4sqrt2_3",
        e.vn,
        Relation::Gt,
        r.cycle_vn - (4.0 * std::f64::consts::SQRT_2 / 3.0).ln(),
    ));
    Ok(rep)
}

fn check_orders(orders: &[f64]) -> Result<()> {
    if let Some(&bad) = orders.iter().find(|&&p| !(p >= 1.0) || p.is_infinite()) {
        return Err(Error::InvalidParameter(format!(
            "maximality is only claimed for finite orders p >= 1, got {bad}"
        )));
    }
    Ok(())
}

/// `H_p(G) <= H_p(K_n)` for each order, plus `H(G) <= log(n − 1)`.
pub fn maximality_check(g: &Graph, orders: &[f64]) -> Result<BoundReport> {
    check_orders(orders)?;
    connected_with_min_n(g, 2)?;
    let e = GraphEntropies::compute(g)?;
    if g.n() == 2 {
        // K_2 is the only connected graph on two vertices
        let mut rep = BoundReport::default();
        for &p in orders {
            let h = renyi(&e.probabilities, p)?;
            rep.push(Inequality::new(format!("renyi_{p}_le_complete"), h, Relation::Le, h));
        }
        rep.push(Inequality::new("vn_le_log_n_minus_1", e.vn, Relation::Le, 0.0));
        return Ok(rep);
    }
    maximality_from(g, &e, &*Reference::for_n(g.n())?, orders)
}

pub fn maximality_from(
    g: &Graph,
    e: &GraphEntropies,
    r: &Reference,
    orders: &[f64],
) -> Result<BoundReport> {
    check_orders(orders)?;
    let mut rep = BoundReport::default();
    for &p in orders {
        rep.push(Inequality::new(
            format!("renyi_{p}_le_complete"),
            renyi(&e.probabilities, p)?,
            Relation::Le,
            r.complete_renyi(p)?,
        ));
    }
    rep.push(Inequality::new(
        "vn_le_log_n_minus_1",
        e.vn,
        Relation::Le,
        ((g.n() - 1) as f64).ln(),
    ));
    Ok(rep)
}

/// `0 <= H − H_2 <= ½ log 2`.
pub fn structural_bound_check(g: &Graph) -> Result<BoundReport> {
    connected_with_min_n(g, 2)?;
    Ok(structural_bound_from(&GraphEntropies::compute(g)?))
}

pub fn structural_bound_from(e: &GraphEntropies) -> BoundReport {
    let s = e.vn - e.renyi2;
    BoundReport {
        checks: vec![
            Inequality::new("structural_ge_0", s, Relation::Ge, 0.0),
            Inequality::new(
                "structural_le_half_log_2",
                s,
                Relation::Le,
                0.5 * std::f64::consts::LN_2,
            ),
        ],
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NeighborSumVertex {
    pub vertex: usize,
    pub degree: usize,
    /// `(1/d_i) Σ_{j ~ i} 1/d_j`
    pub lhs: f64,
    /// `1/√d_i`
    pub rhs: f64,
    pub holds: bool,
}

/// Neighbor-inverse-sum inequality per vertex, and summed over vertices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NeighborSumReport {
    pub vertices: Vec<NeighborSumVertex>,
    /// `Σ_i (1/d_i) Σ_{j ~ i} 1/d_j`
    pub aggregate_lhs: f64,
    /// `Σ_i 1/√d_i`
    pub aggregate_rhs: f64,
    pub aggregate_holds: bool,
}

impl NeighborSumReport {
    pub fn vertex_failures(&self) -> usize {
        self.vertices.iter().filter(|v| !v.holds).count()
    }
}

/// Evaluates `(1/d_i) Σ_{j≠i} (j∼i)/d_j <= 1/√d_i` at every vertex, and the summed form.
pub fn neighbor_sum_check(g: &Graph) -> Result<NeighborSumReport> {
    connected_with_min_n(g, 2)?;
    let inv: Vec<f64> = g.degrees().iter().map(|&d| 1.0 / d as f64).collect();
    let vertices: Vec<NeighborSumVertex> = (0..g.n())
        .map(|i| {
            let lhs = inv[i] * g.neighbors(i).iter().map(|&j| inv[j]).sum::<f64>();
            let rhs = inv[i].sqrt();
            NeighborSumVertex {
                vertex: i,
                degree: g.degree(i),
                lhs,
                rhs,
                holds: lhs <= rhs + NEIGHBOR_SUM_SLACK,
            }
        })
        .collect();
    let aggregate_lhs = vertices.iter().map(|v| v.lhs).sum();
    let aggregate_rhs = vertices.iter().map(|v| v.rhs).sum();
    Ok(NeighborSumReport {
        aggregate_holds: aggregate_lhs <= aggregate_rhs + NEIGHBOR_SUM_SLACK,
        vertices,
        aggregate_lhs,
        aggregate_rhs,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplitRenyi2 {
    pub k: usize,
    /// Eigensolved `H_2(K_{n−k,k})`.
    pub renyi2: f64,
}

/// Star, complete-bipartite and cycle entropies on `n` vertices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StarReport {
    pub n: usize,
    /// `log n − (2/n) log 2`
    pub star_vn_closed_form: f64,
    pub star_vn_eigen: f64,
    pub cycle_vn: f64,
    /// `H(R_{2,n}) < H(K_{1,n−1})`
    pub cycle_below_star: Inequality,
    /// `−log((n + 2)/n²)`
    pub bipartite_renyi2_closed_form: f64,
    pub bipartite_renyi2_by_split: Vec<SplitRenyi2>,
    /// `H_2(K_{n−k,k}) >= H_2(R_{2,n})` for the closed form.
    pub bipartite_renyi2_vs_cycle: Inequality,
    /// `log(n − 1) − H(K_{1,n−1})`
    pub gap_to_maximum: f64,
}

pub fn star_comparison(n: usize) -> Result<StarReport> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!(
            "star comparison needs n >= 4, got {n}"
        )));
    }
    let star = Family::Star(n).generate()?;
    let cycle = Family::Cycle(n).generate()?;
    let star_vn_eigen = von_neumann(&graph_probabilities(&star, DEFAULT_JACOBI_TOL)?);
    let cycle_vn = von_neumann(&graph_probabilities(&cycle, DEFAULT_JACOBI_TOL)?);
    let star_vn_closed_form = ClosedForm::BipartiteVn { n }.value()?;
    let bipartite_renyi2_closed_form = ClosedForm::BipartiteRenyi2 { n }.value()?;
    let bipartite_renyi2_by_split = (1..n)
        .map(|k| {
            let g = Family::CompleteBipartite(n - k, k).generate()?;
            let p = graph_probabilities(&g, DEFAULT_JACOBI_TOL)?;
            Ok(SplitRenyi2 {
                k,
                renyi2: renyi(&p, 2.0)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StarReport {
        n,
        star_vn_closed_form,
        star_vn_eigen,
        cycle_vn,
        cycle_below_star: Inequality::new(
            "cycle_vn_lt_star_vn",
            cycle_vn,
            Relation::Lt,
            star_vn_eigen,
        ),
        bipartite_renyi2_closed_form,
        bipartite_renyi2_by_split,
        bipartite_renyi2_vs_cycle: Inequality::new(
            "bipartite_renyi2_ge_cycle",
            bipartite_renyi2_closed_form,
            Relation::Ge,
            ClosedForm::RegularRenyi2 { n, k: 2 }.value()?,
        ),
        gap_to_maximum: ((n - 1) as f64).ln() - star_vn_eigen,
    })
}

/// A failed (or boundary) check on one enumerated graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Finding {
    pub bitmask: u64,
    pub check: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

impl Finding {
    fn from_inequality(bitmask: u64, c: &Inequality) -> Self {
        Finding {
            bitmask,
            check: c.name.clone(),
            lhs: c.lhs,
            rhs: c.rhs,
            margin: c.margin,
        }
    }
}

/// Extremum with the smallest bitmask winning exact ties.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Extremum {
    pub value: f64,
    pub bitmask: u64,
}

impl Extremum {
    fn better(a: Option<Extremum>, b: Option<Extremum>, want_max: bool) -> Option<Extremum> {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(x), Some(y)) => {
                let y_wins = if want_max {
                    y.value > x.value
                } else {
                    y.value < x.value
                };
                if y_wins || (y.value == x.value && y.bitmask < x.bitmask) {
                    Some(y)
                } else {
                    Some(x)
                }
            }
        }
    }
}

/// Neighbor-inverse-sum outcomes aggregated over a scan; informational only.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct NeighborSumSummary {
    pub vertex_checks: usize,
    pub vertex_failures: usize,
    pub graphs_with_vertex_failure: usize,
    pub aggregate_failures: usize,
    /// Largest `lhs / rhs` over all vertices.
    pub worst_vertex_ratio: f64,
}

impl NeighborSumSummary {
    pub fn add(&mut self, r: &NeighborSumReport) {
        self.vertex_checks += r.vertices.len();
        let f = r.vertex_failures();
        self.vertex_failures += f;
        self.graphs_with_vertex_failure += usize::from(f > 0);
        self.aggregate_failures += usize::from(!r.aggregate_holds);
        for v in &r.vertices {
            self.worst_vertex_ratio = self.worst_vertex_ratio.max(v.lhs / v.rhs);
        }
    }

    pub fn merge(&mut self, o: &NeighborSumSummary) {
        self.vertex_checks += o.vertex_checks;
        self.vertex_failures += o.vertex_failures;
        self.graphs_with_vertex_failure += o.graphs_with_vertex_failure;
        self.aggregate_failures += o.aggregate_failures;
        self.worst_vertex_ratio = self.worst_vertex_ratio.max(o.worst_vertex_ratio);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanResult {
    pub n: usize,
    pub orders: Vec<f64>,
    pub graph_count: usize,
    pub min_vn: Extremum,
    pub max_vn: Extremum,
    pub min_renyi2: Extremum,
    pub max_structural: Extremum,
    /// Bound and structural-entropy checks that failed.
    pub violations: Vec<Finding>,
    /// Construction identities that failed (`S̄S̄ᵀ = 2𝓛`, entrywise `H_2`, ...).
    pub identity_failures: Vec<Finding>,
    /// Checks that held only at the tolerance boundary.
    pub boundary_cases: Vec<Finding>,
    pub neighbor_sum: NeighborSumSummary,
}

#[derive(Debug, Clone, Default)]
struct Partial {
    graph_count: usize,
    min_vn: Option<Extremum>,
    max_vn: Option<Extremum>,
    min_renyi2: Option<Extremum>,
    max_structural: Option<Extremum>,
    violations: Vec<Finding>,
    identity_failures: Vec<Finding>,
    boundary_cases: Vec<Finding>,
    neighbor_sum: NeighborSumSummary,
}

impl Partial {
    fn merge(mut self, o: Partial) -> Partial {
        self.graph_count += o.graph_count;
        self.min_vn = Extremum::better(self.min_vn, o.min_vn, false);
        self.max_vn = Extremum::better(self.max_vn, o.max_vn, true);
        self.min_renyi2 = Extremum::better(self.min_renyi2, o.min_renyi2, false);
        self.max_structural = Extremum::better(self.max_structural, o.max_structural, true);
        self.violations.extend(o.violations);
        self.identity_failures.extend(o.identity_failures);
        self.boundary_cases.extend(o.boundary_cases);
        self.neighbor_sum.merge(&o.neighbor_sum);
        self
    }

    fn record(&mut self, mask: u64, rep: &BoundReport) {
        for c in &rep.checks {
            if !c.holds {
                self.violations.push(Finding::from_inequality(mask, c));
            } else if c.boundary {
                self.boundary_cases.push(Finding::from_inequality(mask, c));
            }
        }
    }

    fn identity(&mut self, mask: u64, check: &str, lhs: f64, rhs: f64, tol: f64) {
        let gap = (lhs - rhs).abs();
        if !(gap <= tol) {
            self.identity_failures.push(Finding {
                bitmask: mask,
                check: check.into(),
                lhs,
                rhs,
                margin: tol - gap,
            });
        }
    }
}

/// Construction identities checked on every scanned graph.
fn scan_identities(part: &mut Partial, mask: u64, g: &Graph, e: &GraphEntropies) -> Result<()> {
    let n = g.n() as f64;
    let l = laplacian::symmetric(g)?;

    // S̄ S̄ᵀ = 2𝓛
    let sbar = laplacian::doubled_incidence(g)?;
    let gap = sbar.gram().max_abs_diff(&l.scale(2.0))?;
    part.identity(mask, "doubled_incidence_gram", gap, 0.0, DOUBLED_INCIDENCE_TOL);

    // H_2 from Σ 𝓛_ij² / n²
    let sq: f64 = l.as_slice().iter().map(|x| x * x).sum();
    part.identity(mask, "renyi2_entrywise", e.renyi2, -(sq / (n * n)).ln(), IDENTITY_TOL);

    // regular graphs: H_2 = log(n² / (n + Σ 1/d_i))
    let d0 = g.degree(0);
    if g.degrees().iter().all(|&d| d == d0) {
        let s: f64 = g.degrees().iter().map(|&d| 1.0 / d as f64).sum();
        part.identity(mask, "renyi2_regular", e.renyi2, (n * n / (n + s)).ln(), IDENTITY_TOL);
    }

    // spectrum of 𝓛 inside [0, 2], single zero eigenvalue
    let spec: Vec<f64> = e.probabilities.values().iter().map(|p| p * n).collect();
    let top = spec[0];
    part.identity(mask, "laplacian_spectrum_le_2", top.max(2.0), 2.0, 1e-10);
    let h0 = renyi(&e.probabilities, 0.0)?;
    part.identity(mask, "renyi0_log_n_minus_1", h0, (n - 1.0).ln(), 1e-9);

    // Rényi entropy non-increasing in the order
    let hs = MONOTONICITY_GRID
        .iter()
        .map(|&p| renyi(&e.probabilities, p))
        .collect::<Result<Vec<_>>>()?;
    for w in hs.windows(2) {
        part.identity(mask, "renyi_monotone", w[1].min(w[0]), w[1], IDENTITY_TOL);
    }
    Ok(())
}

fn scan_range(n: usize, orders: &[f64], range: Range<u64>) -> Result<Partial> {
    let r = Reference::for_n(n)?;
    let mut part = Partial::default();
    for (mask, g) in enumerate_connected_range(n, range)? {
        let e = GraphEntropies::compute(&g)?;
        part.graph_count += 1;
        let here = |value| {
            Some(Extremum {
                value,
                bitmask: mask,
            })
        };
        part.min_vn = Extremum::better(part.min_vn, here(e.vn), false);
        part.max_vn = Extremum::better(part.max_vn, here(e.vn), true);
        part.min_renyi2 = Extremum::better(part.min_renyi2, here(e.renyi2), false);
        part.max_structural = Extremum::better(part.max_structural, here(e.vn - e.renyi2), true);

        part.record(mask, &maximality_from(&g, &e, &r, orders)?);
        part.record(mask, &lower_bound_from(&g, &e, &r)?);
        part.record(mask, &structural_bound_from(&e));
        part.neighbor_sum.add(&neighbor_sum_check(&g)?);
        scan_identities(&mut part, mask, &g, &e)?;
    }
    Ok(part)
}

/// Splits the bitmask space of order `n` into `parts` contiguous ranges.
pub fn partition_bitmasks(n: usize, parts: usize) -> Vec<Range<u64>> {
    let total = bitmask_count(n);
    let parts = (parts.max(1) as u64).min(total);
    let chunk = total.div_ceil(parts);
    (0..parts)
        .map(|k| k * chunk..((k + 1) * chunk).min(total))
        .filter(|r| !r.is_empty())
        .collect()
}

/// Runs `work` over a partition of the bitmask space on `threads` scoped threads,
/// returning results in bitmask order.
pub fn map_partitions<T: Send>(
    n: usize,
    threads: usize,
    work: impl Fn(Range<u64>) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    let ranges = partition_bitmasks(n, threads);
    if ranges.len() <= 1 {
        return ranges.into_iter().map(&work).collect();
    }
    std::thread::scope(|s| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|r| {
                let work = &work;
                s.spawn(move || work(r))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("scan worker panicked"))
            .collect()
    })
}

/// Checks every labeled connected graph on `n` vertices.
///
/// `3 <= n <= 6`; `n = 7` requires `allow_large`.
pub fn scan(n: usize, orders: &[f64], threads: usize, allow_large: bool) -> Result<ScanResult> {
    let max = if allow_large { 7 } else { MAX_DEFAULT_SCAN_N };
    if !(3..=max).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "scan supports 3 <= n <= {max}, got {n}"
        )));
    }
    check_orders(orders)?;
    let merged = map_partitions(n, threads, |r| scan_range(n, orders, r))?
        .into_iter()
        .fold(Partial::default(), Partial::merge);
    let get = |x: Option<Extremum>| x.expect("at least one connected graph");
    Ok(ScanResult {
        n,
        orders: orders.to_vec(),
        graph_count: merged.graph_count,
        min_vn: get(merged.min_vn),
        max_vn: get(merged.max_vn),
        min_renyi2: get(merged.min_renyi2),
        max_structural: get(merged.max_structural),
        violations: merged.violations,
        identity_failures: merged.identity_failures,
        boundary_cases: merged.boundary_cases,
        neighbor_sum: merged.neighbor_sum,
    })
}

/// `H(K_{n−k,k})` by eigensolve, for callers comparing splits.
pub fn bipartite_vn(n: usize, k: usize) -> Result<f64> {
    if k == 0 || k >= n {
        return Err(Error::InvalidParameter(format!("split {k} invalid for n = {n}")));
    }
    let g = Family::CompleteBipartite(n - k, k).generate()?;
    Ok(von_neumann(&graph_probabilities(&g, DEFAULT_JACOBI_TOL)?))
}

/// Spectrum of `𝓛` for any connected graph, mostly for reports.
pub fn laplacian_spectrum(g: &Graph) -> Result<Vec<f64>> {
    Ok(jacobi_eigen(&laplacian::symmetric(g)?, DEFAULT_JACOBI_TOL)?
        .values()
        .to_vec())
}
