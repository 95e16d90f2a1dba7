//! The `symlap` command line.
//!
//! Exit codes: 0 ok, 2 usage or parse error, 3 precondition (disconnected input
//! or isolated vertex), 4 construction-identity or numerical failure, 5 bound
//! violation found by a scan. All configuration is by flags.

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::bounds::{self, Finding, ScanResult, StarReport, DEFAULT_ORDERS};
use crate::entropy::{EntropyReport, EntropySettings, LogBase, RANK_EPS};
use crate::error::Error;
use crate::findings;
use crate::graph::{Family, Graph};
use crate::laplacian;
use crate::linalg::DEFAULT_JACOBI_TOL;
use crate::qstate::{self, PartialTraceReport};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_PRECONDITION: u8 = 3;
pub const EXIT_IDENTITY: u8 = 4;
pub const EXIT_VIOLATION: u8 = 5;

/// Tolerance on both construction identities checked by `verify`.
pub const VERIFY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaseArg {
    E,
    #[value(name = "2")]
    Two,
}

impl From<BaseArg> for LogBase {
    fn from(b: BaseArg) -> Self {
        match b {
            BaseArg::E => LogBase::E,
            BaseArg::Two => LogBase::Two,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "symlap", version, about = "Symmetric-Laplacian quantum states and their entropies")]
struct Cli {
    /// Logarithm base for every reported entropy.
    #[arg(long, value_enum, default_value = "e", global = true)]
    base: BaseArg,

    /// Relative off-diagonal tolerance of the Jacobi eigensolver (`entropy`).
    #[arg(long, default_value_t = DEFAULT_JACOBI_TOL, global = true)]
    tol_eig: f64,

    /// Eigenvalues above this count toward the rank in H_0 (`entropy`).
    #[arg(long, default_value_t = RANK_EPS, global = true)]
    rank_eps: f64,

    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,

    /// Worker threads for `scan` and `findings`.
    #[arg(long, default_value_t = 1, global = true)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a named graph as an edge list: complete N | complete_bipartite A B | star N | cycle N.
    Gen {
        family: String,
        params: Vec<usize>,
    },
    /// Entropies of the graph's vertex density matrix.
    Entropy {
        /// Edge-list file, or "-" for standard input.
        path: PathBuf,
        /// Rényi orders to report.
        #[arg(long = "p", value_delimiter = ',', default_value = "2")]
        orders: Vec<f64>,
    },
    /// Check the partial-trace identities of the graph state and S̄S̄ᵀ = 2𝓛.
    Verify { path: PathBuf },
    /// Check every entropy bound over all labeled connected graphs on N vertices.
    Scan {
        n: usize,
        /// Allow n = 7 (about 2.1M candidate bitmasks).
        #[arg(long)]
        large: bool,
        /// Rényi orders (>= 1) for the maximality check.
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_ORDERS.to_vec())]
        orders: Vec<f64>,
    },
    /// Compare star, complete-bipartite and cycle entropies on N vertices.
    Star { n: usize },
    /// Tabulate the arc-side partial trace and neighbor-sum outcomes for n <= MAX_N.
    Findings {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub base: LogBase,
    pub tol_eig: f64,
    pub rank_eps: f64,
    pub format: Format,
    pub threads: usize,
}

impl RunConfig {
    fn validate(&self) -> Result<(), Error> {
        if !(self.tol_eig > 0.0) || !(self.rank_eps > 0.0) {
            return Err(Error::InvalidParameter("tolerances must be > 0".into()));
        }
        if self.threads == 0 {
            return Err(Error::InvalidParameter("--threads must be >= 1".into()));
        }
        Ok(())
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Disconnected | Error::IsolatedVertex(_) => EXIT_PRECONDITION,
        Error::IdentityFailure(_)
        | Error::NonConvergence { .. }
        | Error::NegativeEigenvalue(_)
        | Error::NotNormalized(_) => EXIT_IDENTITY,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let cfg = RunConfig {
        base: cli.base.into(),
        tol_eig: cli.tol_eig,
        rank_eps: cli.rank_eps,
        format: cli.format,
        threads: cli.threads,
    };
    let result = cfg.validate().and_then(|_| dispatch(&cli.command, &cfg, out));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cmd: &Command, cfg: &RunConfig, out: &mut dyn Write) -> Result<u8, Error> {
    match cmd {
        Command::Gen { family, params } => cmd_gen(family, params, out),
        Command::Entropy { path, orders } => cmd_entropy(&read_graph(path)?, orders, cfg, out),
        Command::Verify { path } => cmd_verify(&read_graph(path)?, cfg, out),
        Command::Scan { n, large, orders } => cmd_scan(*n, *large, orders, cfg, out),
        Command::Star { n } => cmd_star(*n, cfg, out),
        Command::Findings { max_n } => cmd_findings(*max_n, cfg, out),
    }
}

fn io_err(e: io::Error) -> Error {
    Error::InvalidParameter(format!("I/O error: {e}"))
}

fn read_graph(path: &PathBuf) -> Result<Graph, Error> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text).map_err(io_err)?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))?;
    }
    Graph::from_edge_list(&text)
}

/// Formats floats with 17 significant digits.
struct Sig17;

impl serde_json::ser::Formatter for Sig17 {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(fmt17(value).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
}

/// `value` with 17 significant digits in scientific notation.
pub fn fmt17(value: f64) -> String {
    format!("{value:.16e}")
}

/// JSON with every float written with 17 significant digits, newline-terminated.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17);
    value.serialize(&mut ser).expect("in-memory serialization");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

fn write_str(out: &mut dyn Write, s: &str) -> Result<(), Error> {
    out.write_all(s.as_bytes()).map_err(io_err)
}

fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out)
}

fn csv_err(e: csv::Error) -> Error {
    Error::InvalidParameter(format!("CSV output failed: {e}"))
}

fn cmd_gen(family: &str, params: &[usize], out: &mut dyn Write) -> Result<u8, Error> {
    let want = |k: usize| -> Result<(), Error> {
        if params.len() == k {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "{family} takes {k} parameter(s), got {}",
                params.len()
            )))
        }
    };
    let fam = match family {
        "complete" => want(1).map(|_| Family::Complete(params[0]))?,
        "complete_bipartite" => want(2).map(|_| Family::CompleteBipartite(params[0], params[1]))?,
        "star" => want(1).map(|_| Family::Star(params[0]))?,
        "cycle" => want(1).map(|_| Family::Cycle(params[0]))?,
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown family {other:?} (complete, complete_bipartite, star, cycle)"
            )))
        }
    };
    write_str(out, &fam.generate()?.to_edge_list())?;
    Ok(EXIT_OK)
}

struct OrderedRenyi<'a>(&'a [(f64, f64)]);

impl Serialize for OrderedRenyi<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (p, h) in self.0 {
            map.serialize_entry(&p.to_string(), h)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct EntropyJson<'a> {
    n: usize,
    m: usize,
    degrees: &'a [usize],
    spectrum: &'a [f64],
    vn: f64,
    renyi: OrderedRenyi<'a>,
    structural: f64,
    base: LogBase,
}

fn join<T>(xs: &[T], f: impl Fn(&T) -> String) -> String {
    xs.iter().map(f).collect::<Vec<_>>().join(" ")
}

fn cmd_entropy(
    g: &Graph,
    orders: &[f64],
    cfg: &RunConfig,
    out: &mut dyn Write,
) -> Result<u8, Error> {
    let settings = EntropySettings {
        base: cfg.base,
        jacobi_tol: cfg.tol_eig,
        rank_eps: cfg.rank_eps,
    };
    let r = EntropyReport::compute(g, orders, &settings)?;
    match cfg.format {
        Format::Json => write_str(
            out,
            &to_json(&EntropyJson {
                n: r.n,
                m: r.m,
                degrees: &r.degrees,
                spectrum: &r.spectrum,
                vn: r.vn,
                renyi: OrderedRenyi(&r.renyi),
                structural: r.structural,
                base: r.base,
            }),
        )?,
        Format::Csv => {
            let mut w = csv_writer(out);
            let mut header = vec!["n", "m", "degrees", "spectrum", "vn"]
                .into_iter()
                .map(String::from)
                .collect::<Vec<_>>();
            header.extend(r.renyi.iter().map(|(p, _)| format!("renyi_{p}")));
            header.extend(["structural".to_string(), "base".to_string()]);
            w.write_record(&header).map_err(csv_err)?;
            let mut row = vec![
                r.n.to_string(),
                r.m.to_string(),
                join(&r.degrees, |d| d.to_string()),
                join(&r.spectrum, |x| fmt17(*x)),
                fmt17(r.vn),
            ];
            row.extend(r.renyi.iter().map(|(_, h)| fmt17(*h)));
            row.extend([fmt17(r.structural), r.base.to_string()]);
            w.write_record(&row).map_err(csv_err)?;
            w.flush().map_err(io_err)?;
        }
        Format::Text => {
            let mut s = format!("n = {}, m = {}\n", r.n, r.m);
            s += &format!("degrees: {}\n", join(&r.degrees, |d| d.to_string()));
            s += &format!("spectrum(rho_V): {}\n", join(&r.spectrum, |x| format!("{x:.12}")));
            s += &format!("H = {:.12} (base {})\n", r.vn, r.base);
            for (p, h) in &r.renyi {
                s += &format!("H_{p} = {h:.12}\n");
            }
            s += &format!("H - H_2 = {:.12}\n", r.structural);
            write_str(out, &s)?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    #[serde(flatten)]
    traces: PartialTraceReport,
    doubled_incidence_residual: f64,
    doubled_incidence_ok: bool,
}

fn cmd_verify(g: &Graph, cfg: &RunConfig, out: &mut dyn Write) -> Result<u8, Error> {
    let mut traces = qstate::verify_partial_traces(g, VERIFY_TOL)?;
    traces.schmidt_entropy_gap = cfg.base.convert(traces.schmidt_entropy_gap);
    let sbar = laplacian::doubled_incidence(g)?;
    let residual = sbar.gram().max_abs_diff(&laplacian::symmetric(g)?.scale(2.0))?;
    let rep = VerifyReport {
        doubled_incidence_ok: residual <= VERIFY_TOL,
        doubled_incidence_residual: residual,
        traces,
    };
    match cfg.format {
        Format::Json => write_str(out, &to_json(&rep))?,
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record([
                "n",
                "bipartite",
                "tr_e_matches",
                "tr_e_residual",
                "tr_v_isospectral",
                "tr_v_matches_l_spectrum",
                "schmidt_entropy_gap",
                "doubled_incidence_ok",
                "doubled_incidence_residual",
            ])
            .map_err(csv_err)?;
            let l = &rep.traces;
            w.write_record([
                l.n.to_string(),
                l.bipartite.to_string(),
                l.tr_e_matches.to_string(),
                fmt17(l.tr_e_residual),
                l.tr_v_isospectral.to_string(),
                l.tr_v_matches_l_spectrum.to_string(),
                fmt17(l.schmidt_entropy_gap),
                rep.doubled_incidence_ok.to_string(),
                fmt17(rep.doubled_incidence_residual),
            ])
            .map_err(csv_err)?;
            w.flush().map_err(io_err)?;
        }
        Format::Text => {
            let l = &rep.traces;
            let verdict = |ok: bool| if ok { "pass" } else { "FAIL" };
            let mut s = String::new();
            s += &format!(
                "Tr_E(psi psi^T) = L: {} (max residual {:.3e})\n",
                verdict(l.tr_e_matches),
                l.tr_e_residual
            );
            s += &format!(
                "Sbar Sbar^T = 2L: {} (max residual {:.3e})\n",
                verdict(rep.doubled_incidence_ok),
                rep.doubled_incidence_residual
            );
            s += &format!(
                "Tr_V nonzero spectrum: {}\n",
                join(&l.tr_v_spectrum, |x| format!("{x:.12}"))
            );
            s += &format!(
                "L+ nonzero spectrum:   {}\n",
                join(&l.lplus_spectrum, |x| format!("{x:.12}"))
            );
            s += &format!(
                "Tr_V isospectral with L+: {} (with L: {}; bipartite: {}) [informational]\n",
                l.tr_v_isospectral, l.tr_v_matches_l_spectrum, l.bipartite
            );
            s += &format!("Schmidt entropy gap: {:.3e}\n", l.schmidt_entropy_gap);
            write_str(out, &s)?;
        }
    }
    if rep.traces.tr_e_matches && rep.doubled_incidence_ok {
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_IDENTITY)
    }
}

fn rescale_findings(fs: &mut [Finding], base: LogBase) {
    for f in fs {
        f.lhs = base.convert(f.lhs);
        f.rhs = base.convert(f.rhs);
        f.margin = base.convert(f.margin);
    }
}

/// Converts every entropy-valued field of a scan; construction-identity residuals stay raw.
fn rescale_scan(r: &mut ScanResult, base: LogBase) {
    for e in [
        &mut r.min_vn,
        &mut r.max_vn,
        &mut r.min_renyi2,
        &mut r.max_structural,
    ] {
        e.value = base.convert(e.value);
    }
    rescale_findings(&mut r.violations, base);
    rescale_findings(&mut r.boundary_cases, base);
}

#[derive(Serialize)]
struct ScanJson<'a> {
    #[serde(flatten)]
    result: &'a ScanResult,
    base: LogBase,
}

fn cmd_scan(
    n: usize,
    large: bool,
    orders: &[f64],
    cfg: &RunConfig,
    out: &mut dyn Write,
) -> Result<u8, Error> {
    let mut r = bounds::scan(n, orders, cfg.threads, large)?;
    rescale_scan(&mut r, cfg.base);
    match cfg.format {
        Format::Json => write_str(out, &to_json(&ScanJson { result: &r, base: cfg.base }))?,
        Format::Csv => write_scan_csv(&r, cfg.base, out)?,
        Format::Text => write_str(out, &scan_text(&r, cfg.base))?,
    }
    Ok(if !r.violations.is_empty() {
        EXIT_VIOLATION
    } else if !r.identity_failures.is_empty() {
        EXIT_IDENTITY
    } else {
        EXIT_OK
    })
}

fn write_scan_csv(r: &ScanResult, base: LogBase, out: &mut dyn Write) -> Result<(), Error> {
    let mut w = csv_writer(out);
    let rec = |w: &mut csv::Writer<&mut dyn Write>, fields: [String; 7]| -> Result<(), Error> {
        w.write_record(&fields).map_err(csv_err)
    };
    let s = String::new;
    rec(&mut w, ["record", "name", "bitmask", "value", "lhs", "rhs", "margin"].map(String::from))?;
    rec(&mut w, ["summary".into(), "n".into(), s(), r.n.to_string(), s(), s(), s()])?;
    rec(&mut w, ["summary".into(), "graph_count".into(), s(), r.graph_count.to_string(), s(), s(), s()])?;
    rec(&mut w, ["summary".into(), "base".into(), s(), base.to_string(), s(), s(), s()])?;
    for (name, e) in [
        ("min_vn", r.min_vn),
        ("max_vn", r.max_vn),
        ("min_renyi2", r.min_renyi2),
        ("max_structural", r.max_structural),
    ] {
        rec(&mut w, ["extremum".into(), name.into(), e.bitmask.to_string(), fmt17(e.value), s(), s(), s()])?;
    }
    for (kind, list) in [
        ("violation", &r.violations),
        ("identity_failure", &r.identity_failures),
        ("boundary", &r.boundary_cases),
    ] {
        for f in list {
            rec(
                &mut w,
                [
                    kind.into(),
                    f.check.clone(),
                    f.bitmask.to_string(),
                    s(),
                    fmt17(f.lhs),
                    fmt17(f.rhs),
                    fmt17(f.margin),
                ],
            )?;
        }
    }
    let ns = &r.neighbor_sum;
    for (name, v) in [
        ("neighbor_sum_vertex_checks", ns.vertex_checks.to_string()),
        ("neighbor_sum_vertex_failures", ns.vertex_failures.to_string()),
        ("neighbor_sum_graphs_with_vertex_failure", ns.graphs_with_vertex_failure.to_string()),
        ("neighbor_sum_aggregate_failures", ns.aggregate_failures.to_string()),
        ("neighbor_sum_worst_vertex_ratio", fmt17(ns.worst_vertex_ratio)),
    ] {
        rec(&mut w, ["informational".into(), name.into(), s(), v, s(), s(), s()])?;
    }
    w.flush().map_err(io_err)
}

fn scan_text(r: &ScanResult, base: LogBase) -> String {
    let mut s = format!(
        "n = {}: {} labeled connected graphs (entropies in base {base})\n",
        r.n, r.graph_count
    );
    for (name, e) in [
        ("min H", r.min_vn),
        ("max H", r.max_vn),
        ("min H_2", r.min_renyi2),
        ("max H - H_2", r.max_structural),
    ] {
        s += &format!("{name:<12} {:.12}  (bitmask {:#x})\n", e.value, e.bitmask);
    }
    s += &format!("bound violations: {}\n", r.violations.len());
    for f in &r.violations {
        s += &format!("  {:#x} {} margin {:.3e}\n", f.bitmask, f.check, f.margin);
    }
    s += &format!("identity failures: {}\n", r.identity_failures.len());
    for f in &r.identity_failures {
        s += &format!("  {:#x} {} lhs {:.6e} rhs {:.6e}\n", f.bitmask, f.check, f.lhs, f.rhs);
    }
    s += &format!("boundary cases: {}\n", r.boundary_cases.len());
    let ns = &r.neighbor_sum;
    s += &format!(
        "neighbor-sum (informational): {} of {} vertex checks fail in {} graphs; summed form fails {} times; worst lhs/rhs {:.6}\n",
        ns.vertex_failures,
        ns.vertex_checks,
        ns.graphs_with_vertex_failure,
        ns.aggregate_failures,
        ns.worst_vertex_ratio
    );
    s
}

fn rescale_star(r: &mut StarReport, base: LogBase) {
    for x in [
        &mut r.star_vn_closed_form,
        &mut r.star_vn_eigen,
        &mut r.cycle_vn,
        &mut r.bipartite_renyi2_closed_form,
        &mut r.gap_to_maximum,
    ] {
        *x = base.convert(*x);
    }
    for split in &mut r.bipartite_renyi2_by_split {
        split.renyi2 = base.convert(split.renyi2);
    }
    for c in [&mut r.cycle_below_star, &mut r.bipartite_renyi2_vs_cycle] {
        c.lhs = base.convert(c.lhs);
        c.rhs = base.convert(c.rhs);
        c.margin = base.convert(c.margin);
    }
}

fn cmd_star(n: usize, cfg: &RunConfig, out: &mut dyn Write) -> Result<u8, Error> {
    let mut r = bounds::star_comparison(n)?;
    rescale_star(&mut r, cfg.base);
    match cfg.format {
        Format::Json => write_str(out, &to_json(&r))?,
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record([
                "n",
                "star_vn_closed_form",
                "star_vn_eigen",
                "cycle_vn",
                "cycle_below_star_margin",
                "bipartite_renyi2_closed_form",
                "bipartite_renyi2_vs_cycle_margin",
                "gap_to_maximum",
            ])
            .map_err(csv_err)?;
            w.write_record([
                r.n.to_string(),
                fmt17(r.star_vn_closed_form),
                fmt17(r.star_vn_eigen),
                fmt17(r.cycle_vn),
                fmt17(r.cycle_below_star.margin),
                fmt17(r.bipartite_renyi2_closed_form),
                fmt17(r.bipartite_renyi2_vs_cycle.margin),
                fmt17(r.gap_to_maximum),
            ])
            .map_err(csv_err)?;
            w.flush().map_err(io_err)?;
        }
        Format::Text => {
            let mut s = format!("n = {} (base {})\n", r.n, cfg.base);
            s += &format!(
                "H(star) = {:.12} (closed form {:.12})\n",
                r.star_vn_eigen, r.star_vn_closed_form
            );
            s += &format!("H(cycle) = {:.12}\n", r.cycle_vn);
            s += &format!(
                "H(cycle) < H(star): margin {:.3e}{}\n",
                r.cycle_below_star.margin,
                if r.cycle_below_star.boundary { " (boundary)" } else { "" }
            );
            s += &format!(
                "H_2(K_(n-k,k)) = {:.12}, >= H_2(cycle) margin {:.3e}\n",
                r.bipartite_renyi2_closed_form, r.bipartite_renyi2_vs_cycle.margin
            );
            s += &format!("log(n-1) - H(star) = {:.12}\n", r.gap_to_maximum);
            write_str(out, &s)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_findings(max_n: usize, cfg: &RunConfig, out: &mut dyn Write) -> Result<u8, Error> {
    if !(2..=6).contains(&max_n) {
        return Err(Error::InvalidParameter(format!(
            "findings supports 2 <= max-n <= 6, got {max_n}"
        )));
    }
    let f = findings::collect(max_n, cfg.threads)?;
    match cfg.format {
        Format::Json => write_str(out, &to_json(&f))?,
        Format::Text | Format::Csv => write_str(out, &f.to_markdown())?,
    }
    Ok(EXIT_OK)
}
