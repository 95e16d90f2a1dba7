//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails. Built with `harness = false`.

use std::fmt::Display;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use symlap::bounds::{scan, star_comparison, ScanResult, DEFAULT_ORDERS};
use symlap::entropy::{
    graph_probabilities, majorizes, renyi, von_neumann, ClosedForm, ProbabilityVector,
};
use symlap::findings::{neighbor_sum_row, partial_trace_rows, Findings};
use symlap::graph::bitmask_count;
use symlap::laplacian::{incidence, symmetric};
use symlap::linalg::{jacobi_eigen, Matrix, SymMatrix, DEFAULT_JACOBI_TOL};
use symlap::{Family, Graph, Result};

const CLOSED_FORM_TOL: f64 = 1e-9;
const SPLIT_INDEPENDENCE_TOL: f64 = 1e-12;
const TRACE_RESIDUAL_TOL: f64 = 1e-12;
const SCHMIDT_GAP_TOL: f64 = 1e-9;
const MAXIMALITY_SLACK: f64 = 1e-10;
const ROUND_TRIP_TOL: f64 = 1e-9;
const ORIENTATION_TOL: f64 = 1e-12;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Display) -> Result<Outcome> {
    Ok(Outcome {
        pass,
        detail: detail.to_string(),
    })
}

fn vn(g: &Graph) -> Result<f64> {
    Ok(von_neumann(&graph_probabilities(g, DEFAULT_JACOBI_TOL)?))
}

fn renyi2(g: &Graph) -> Result<f64> {
    renyi(&graph_probabilities(g, DEFAULT_JACOBI_TOL)?, 2.0)
}

fn complete_graph_entropy() -> Result<Outcome> {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for n in 3..=10 {
        let h = vn(&Family::Complete(n).generate()?)?;
        worst = worst.max((h - ((n - 1) as f64).ln()).abs());
    }
    let t = start.elapsed();
    outcome(
        worst < CLOSED_FORM_TOL && t < Duration::from_secs(1),
        format!("n=3..10 max |H - log(n-1)| = {worst:.2e}, {t:.2?}"),
    )
}

/// Cycle plus the distance-2 chords: 4-regular for n >= 5.
fn circulant_4(n: usize) -> Result<Graph> {
    let mut edges = Vec::new();
    for i in 0..n {
        for step in [1, 2] {
            let j = (i + step) % n;
            let e = (i.min(j), i.max(j));
            if !edges.contains(&e) {
                edges.push(e);
            }
        }
    }
    Graph::new(n, edges)
}

fn regular_renyi2() -> Result<Outcome> {
    let start = Instant::now();
    let mut cycle_worst = 0.0f64;
    for n in 3..=12 {
        let want = (2.0 * n as f64 / 3.0).ln();
        cycle_worst = cycle_worst.max((renyi2(&Family::Cycle(n).generate()?)? - want).abs());
    }
    let mut circ_worst = 0.0f64;
    for n in 5..=12 {
        let g = circulant_4(n)?;
        assert!(g.degrees().iter().all(|&d| d == 4));
        let want = (n as f64 / 1.25).ln();
        circ_worst = circ_worst.max((renyi2(&g)? - want).abs());
    }
    let t = start.elapsed();
    outcome(
        cycle_worst < CLOSED_FORM_TOL && circ_worst < CLOSED_FORM_TOL && t < Duration::from_secs(1),
        format!(
            "cycles n=3..12 max err {cycle_worst:.2e}; 4-regular circulants n=5..12 max err {circ_worst:.2e}; {t:.2?}"
        ),
    )
}

fn complete_bipartite_forms() -> Result<Outcome> {
    let (mut spec_err, mut vn_err, mut r2_err, mut spread) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for n in 4..=10 {
        let mut want = vec![2.0];
        want.extend(std::iter::repeat_n(1.0, n - 2));
        want.push(0.0);
        let vn_form = ClosedForm::BipartiteVn { n }.value()?;
        let r2_form = ClosedForm::BipartiteRenyi2 { n }.value()?;
        let (mut vns, mut r2s) = (Vec::new(), Vec::new());
        for k in 1..n {
            let g = Family::CompleteBipartite(n - k, k).generate()?;
            let spec = jacobi_eigen(&symmetric(&g)?, DEFAULT_JACOBI_TOL)?;
            for (a, b) in spec.values().iter().zip(&want) {
                spec_err = spec_err.max((a - b).abs());
            }
            let p = graph_probabilities(&g, DEFAULT_JACOBI_TOL)?;
            vns.push(von_neumann(&p));
            r2s.push(renyi(&p, 2.0)?);
        }
        for (h, h2) in vns.iter().zip(&r2s) {
            vn_err = vn_err.max((h - vn_form).abs());
            r2_err = r2_err.max((h2 - r2_form).abs());
            spread = spread.max((h - vns[0]).abs()).max((h2 - r2s[0]).abs());
        }
    }
    outcome(
        spec_err < CLOSED_FORM_TOL
            && vn_err < CLOSED_FORM_TOL
            && r2_err < CLOSED_FORM_TOL
            && spread < SPLIT_INDEPENDENCE_TOL,
        format!(
            "n=4..10 all splits: spectrum err {spec_err:.2e}, H err {vn_err:.2e}, H_2 err {r2_err:.2e}, split spread {spread:.2e}"
        ),
    )
}

fn vertex_marginal(findings: &Findings, n6_time: Duration) -> Result<Outcome> {
    let rows = &findings.partial_trace;
    let graphs: usize = rows.iter().map(|r| r.graphs).sum();
    let failures: usize = rows.iter().map(|r| r.vertex_trace_failures).sum();
    let residual = rows.iter().map(|r| r.max_vertex_trace_residual).fold(0.0, f64::max);
    let gap = rows.iter().map(|r| r.max_schmidt_entropy_gap).fold(0.0, f64::max);
    outcome(
        failures == 0
            && residual < TRACE_RESIDUAL_TOL
            && gap < SCHMIDT_GAP_TOL
            && n6_time < Duration::from_secs(600),
        format!(
            "{graphs} graphs n=2..6: max Tr_E residual {residual:.2e}, max Schmidt entropy gap {gap:.2e}; n=6 single-threaded {n6_time:.2?}"
        ),
    )
}

const ENTROPY_CHECKS: [&str; 6] = [
    "renyi2_ge_degree_bound",
    "degree_bound_gt_log_half_n",
    "renyi2_gt_cycle_minus_log_4_3",
    "vn_gt_cycle_minus_log_4sqrt2_3",
    "structural_ge_0",
    "structural_le_half_log_2",
];

fn lower_bound_scan(scans: &[(ScanResult, Duration)]) -> Result<Outcome> {
    let mut pass = true;
    let mut parts = Vec::new();
    for (r, t) in scans {
        let bad = r
            .violations
            .iter()
            .filter(|f| ENTROPY_CHECKS.contains(&f.check.as_str()))
            .count();
        pass &= bad == 0;
        if r.n == 6 {
            pass &= *t < Duration::from_secs(120);
        }
        parts.push(format!("n={}: {} graphs, {bad} violations, {t:.2?}", r.n, r.graph_count));
    }
    outcome(pass, parts.join("; "))
}

fn maximality_scan(scans: &[(ScanResult, Duration)]) -> Result<Outcome> {
    let mut pass = true;
    let mut parts = Vec::new();
    for (r, _) in scans {
        let bad = r
            .violations
            .iter()
            .filter(|f| f.check.starts_with("renyi_") || f.check == "vn_le_log_n_minus_1")
            .filter(|f| f.margin <= -MAXIMALITY_SLACK)
            .count();
        let complete = bitmask_count(r.n) - 1;
        let argmax_ok = r.max_vn.bitmask == complete;
        pass &= bad == 0 && argmax_ok;
        parts.push(format!(
            "n={}: {bad} violations, argmax H at {:#x} (K_n {:#x})",
            r.n, r.max_vn.bitmask, complete
        ));
    }
    outcome(pass, format!("p in {{1,2,3}}; {}", parts.join("; ")))
}

fn star_vs_cycle() -> Result<Outcome> {
    let mut pass = true;
    let mut parts = Vec::new();
    for n in 4..=10 {
        let r = star_comparison(n)?;
        let c = &r.cycle_below_star;
        // n = 4: the 4-cycle is K_{2,2}, which shares the star's spectrum, so the
        // margin is zero and the check can only hold at the tolerance boundary.
        pass &= c.holds && (c.margin > 0.0 || n == 4);
        let tag = if c.boundary { " (boundary)" } else { "" };
        parts.push(format!("n={n} margin {:.4e}{tag}", c.margin));
    }
    outcome(pass, parts.join(", "))
}

fn random_probability_vector(len: usize, rng: &mut ChaCha8Rng) -> ProbabilityVector {
    // occasionally zero out entries so rank-deficient vectors are covered
    let w: Vec<f64> = (0..len)
        .map(|_| if rng.gen_bool(0.1) { 0.0 } else { rng.gen::<f64>() })
        .collect();
    let s: f64 = w.iter().sum();
    if s == 0.0 {
        return ProbabilityVector::uniform(len);
    }
    ProbabilityVector::new(w.iter().map(|x| x / s).collect()).expect("normalized")
}

fn random_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> Result<Matrix> {
    let mut q = Matrix::from_fn(n, n, |i, j| f64::from(u8::from(i == j)));
    for _ in 0..n {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let vv: f64 = v.iter().map(|x| x * x).sum();
        if vv > 1e-8 {
            let h = Matrix::from_fn(n, n, |i, j| {
                f64::from(u8::from(i == j)) - 2.0 * v[i] * v[j] / vv
            });
            q = q.mul(&h)?;
        }
    }
    Ok(q)
}

fn random_connected(n: usize, rng: &mut ChaCha8Rng) -> Result<Graph> {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    let density: f64 = rng.gen();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < density && !edges.contains(&(i, j)) {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, edges)
}

fn property_suites(scans: &[(ScanResult, Duration)]) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let grid = [0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 10.0];

    // (a) monotonicity on random spectra, and on every scan graph
    let mut mono_fail = 0;
    for _ in 0..1000 {
        let len = rng.gen_range(2..=12);
        let p = random_probability_vector(len, &mut rng);
        let hs = grid.iter().map(|&o| renyi(&p, o)).collect::<Result<Vec<_>>>()?;
        mono_fail += hs.windows(2).filter(|w| w[1] > w[0] + 1e-12).count();
    }
    let scan_mono: usize = scans
        .iter()
        .map(|(r, _)| r.identity_failures.iter().filter(|f| f.check == "renyi_monotone").count())
        .sum();
    let a = mono_fail == 0 && scan_mono == 0;

    // (b) uniform is majorized by everything; a transfer toward balance is
    // majorized by the original and cannot lower any Rényi entropy
    let mut maj_fail = 0;
    for n in 2..=8 {
        let u = ProbabilityVector::uniform(n);
        for _ in 0..1000 {
            let p = random_probability_vector(n, &mut rng);
            let v = p.values();
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let (hi, lo) = if v[i] >= v[j] { (i, j) } else { (j, i) };
            let delta = rng.gen::<f64>() * (v[hi] - v[lo]) / 2.0;
            let mut w = v.to_vec();
            w[hi] -= delta;
            w[lo] += delta;
            let q = ProbabilityVector::new(w)?;
            maj_fail += usize::from(!majorizes(&u, &p)? || !majorizes(&q, &p)?);
            for order in DEFAULT_ORDERS {
                let hp = renyi(&p, order)?;
                maj_fail += usize::from(renyi(&u, order)? < hp - 1e-12);
                maj_fail += usize::from(renyi(&q, order)? < hp - 1e-12);
            }
        }
    }
    let b = maj_fail == 0;

    // (c) planted spectra come back out of the eigensolver
    let mut rt_worst = 0.0f64;
    for _ in 0..500 {
        let n = rng.gen_range(1..=10);
        let q = random_orthogonal(n, &mut rng)?;
        let mut d: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let a = Matrix::from_fn(n, n, |i, j| (0..n).map(|k| q.get(i, k) * d[k] * q.get(j, k)).sum());
        let spec = jacobi_eigen(&SymMatrix::from_matrix(&a, 1e-9)?, DEFAULT_JACOBI_TOL)?;
        d.sort_by(|x, y| y.total_cmp(x));
        for (g, w) in spec.values().iter().zip(&d) {
            rt_worst = rt_worst.max((g - w).abs());
        }
    }
    let c = rt_worst < ROUND_TRIP_TOL;

    // (d) S Sᵀ = 𝓛 for every orientation
    let mut orient_worst = 0.0f64;
    for _ in 0..100 {
        let g = random_connected(rng.gen_range(2..=10), &mut rng)?;
        let l = symmetric(&g)?;
        for _ in 0..20 {
            let sources: Vec<usize> =
                g.edges().iter().map(|&(i, j)| if rng.gen() { i } else { j }).collect();
            let s = incidence(&g, &sources)?.normalized(&g)?;
            orient_worst = orient_worst.max(s.gram().max_abs_diff(&l)?);
        }
    }
    let d = orient_worst < ORIENTATION_TOL;

    // (e) doubled incidence on every scan graph
    let sbar_fail: usize = scans
        .iter()
        .map(|(r, _)| {
            r.identity_failures
                .iter()
                .filter(|f| f.check == "doubled_incidence_gram")
                .count()
        })
        .sum();
    let e = sbar_fail == 0;

    let mark = |ok: bool| if ok { "ok" } else { "FAIL" };
    outcome(
        a && b && c && d && e,
        format!(
            "(a) {} [{mono_fail}+{scan_mono} failures] (b) {} [{maj_fail}] (c) {} [max err {rt_worst:.2e}] (d) {} [max err {orient_worst:.2e}] (e) {} [{sbar_fail}]",
            mark(a),
            mark(b),
            mark(c),
            mark(d),
            mark(e)
        ),
    )
}

fn findings_report(findings: &Findings) -> Result<Outcome> {
    let md = findings.to_markdown();
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("findings.md");
    let written = std::fs::write(&path, &md).is_ok();
    println!("{md}");
    outcome(written, format!("informational tables written to {}", path.display()))
}

fn run(name: &str, failed: &mut Vec<String>, f: impl FnOnce() -> Result<Outcome>) {
    match f() {
        Ok(o) => {
            println!("{name} {} {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
            if !o.pass {
                failed.push(name.to_string());
            }
        }
        Err(e) => {
            println!("{name} FAIL error: {e}");
            failed.push(name.to_string());
        }
    }
}

fn main() -> ExitCode {
    let mut failed = Vec::new();

    let scans: Vec<(ScanResult, Duration)> = [4, 5, 6]
        .into_iter()
        .map(|n| {
            let start = Instant::now();
            let r = scan(n, &DEFAULT_ORDERS, 1, false).expect("scan");
            (r, start.elapsed())
        })
        .collect();

    let mut n6_time = Duration::ZERO;
    let mut findings = Findings {
        partial_trace: Vec::new(),
        neighbor_sum: Vec::new(),
    };
    for n in 2..=6 {
        let start = Instant::now();
        findings.partial_trace.extend(partial_trace_rows(n, 1).expect("partial traces"));
        if n == 6 {
            n6_time = start.elapsed();
        }
        findings.neighbor_sum.push(neighbor_sum_row(n, 1).expect("neighbor sums"));
    }

    println!();
    run("AC1", &mut failed, complete_graph_entropy);
    run("AC2", &mut failed, regular_renyi2);
    run("AC3", &mut failed, complete_bipartite_forms);
    run("AC4", &mut failed, || vertex_marginal(&findings, n6_time));
    run("AC5", &mut failed, || lower_bound_scan(&scans));
    run("AC6", &mut failed, || maximality_scan(&scans));
    run("AC7", &mut failed, star_vs_cycle);
    run("AC8", &mut failed, || property_suites(&scans));
    run("AC9", &mut failed, || findings_report(&findings));
    println!();

    if failed.is_empty() {
        println!("acceptance: all 9 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed {}", failed.join(", "));
        ExitCode::FAILURE
    }
}
