//! `on3`: command-line front end for the tensor-model combinatorics library.
//!
//! Subcommands: `analyze`, `census`, `trees`, `series`, `critical`, `fit`.
//! Each writes deterministic CSV artifacts (and SVG plots with `--svg`)
//! plus a human-readable summary on stdout.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use on3_core::census::{
    self, census_theorem_check, enumerate_trees_with_budget, merge_reports, partition_count,
    CensusConfig, CensusReport, DEFAULT_NODE_BUDGET, DEFAULT_TREE_BUDGET,
};
use on3_core::crit::{critical_curve, negative_mu_check};
use on3_core::graph::{builtin, parse_graph, BUILTIN_NAMES};
use on3_core::melon::{reduce, Verdict};
use on3_core::series::{
    alpha_coeffs_at, c_pq, flo_series, gnlo_reduced_series, ln_rational, nlo_h_coeffs_at,
};
use on3_core::{EdgeColoredGraph, Error};

const EXIT_VALIDATION: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(name = "on3", version, about = "O(N)^3 tensor model combinatorics")]
struct Cli {
    /// Output directory for CSV/SVG artifacts (default: $ON3_OUT_DIR or the
    /// current directory).
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,

    /// Also emit SVG plots where a command supports them.
    #[arg(long, global = true)]
    svg: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Faces, jackets, degree, bipartiteness and reduction verdict of one
    /// graph (a built-in name or a graph file path).
    Analyze(AnalyzeArgs),
    /// Exhaustive Wick-pairing census of connected vacuum graphs.
    Census(CensusArgs),
    /// Brute-force count of binary-quaternary plane trees, with the
    /// closed-form cross-check.
    Trees(TreesArgs),
    /// Exact coefficient tables of the 2-point series and the free energy.
    Series(SeriesArgs),
    /// The critical curve (G_c, g_c, K) over a mu grid, plus the
    /// negative-mu exclusion scan.
    Critical(CriticalArgs),
    /// Exponent fit (growth rate, subexponential power) on exact
    /// coefficients at fixed mu.
    Fit(FitArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Built-in graph name or path to a graph file.
    graph: String,
}

#[derive(Args)]
struct CensusArgs {
    /// Number of tetrahedral bubbles.
    #[arg(long)]
    n1: usize,
    /// Pillow bubbles per distinguished color, as three comma-separated
    /// counts.
    #[arg(long, default_value = "0,0,0")]
    n2: String,
    /// Hard cap on total nodes.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    node_budget: usize,
}

#[derive(Args)]
struct TreesArgs {
    /// Quaternary (4-valent) internal vertices.
    #[arg(long)]
    p: u64,
    /// Binary internal vertices.
    #[arg(long)]
    q: u64,
    /// Budget on the tree weight 4p + 2q.
    #[arg(long, default_value_t = DEFAULT_TREE_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct SeriesArgs {
    /// Truncation order in g.
    #[arg(long, default_value_t = 20)]
    order: usize,
    /// Optional exact rational mu ("3", "-1/2", "0.25"); adds evaluated
    /// single-variable tables.
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
}

#[derive(Args)]
struct CriticalArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    mu_min: f64,
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    mu_max: f64,
    #[arg(long, default_value_t = 0.5)]
    step: f64,
}

#[derive(Args)]
struct FitArgs {
    /// Exact rational mu.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    mu: String,
    /// Highest coefficient index used.
    #[arg(long, default_value_t = 400)]
    nmax: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out_dir = cli
        .out_dir
        .clone()
        .or_else(|| std::env::var_os("ON3_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    let ctx = Ctx {
        out_dir,
        svg: cli.svg,
    };
    let result = match &cli.command {
        Command::Analyze(a) => cmd_analyze(&ctx, a),
        Command::Census(a) => cmd_census(&ctx, a),
        Command::Trees(a) => cmd_trees(&ctx, a),
        Command::Series(a) => cmd_series(&ctx, a),
        Command::Critical(a) => cmd_critical(&ctx, a),
        Command::Fit(a) => cmd_fit(&ctx, a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Core(Error::BudgetExceeded(_)) => EXIT_BUDGET,
                CliError::Core(Error::InternalInconsistency(_)) => EXIT_INTERNAL,
                _ => EXIT_VALIDATION,
            })
        }
    }
}

struct Ctx {
    out_dir: PathBuf,
    svg: bool,
}

impl Ctx {
    fn write(&self, name: &str, contents: &str) -> Result<(), CliError> {
        std::fs::create_dir_all(&self.out_dir)
            .map_err(|e| CliError::Io(self.out_dir.display().to_string(), e))?;
        let path = self.out_dir.join(name);
        std::fs::write(&path, contents)
            .map_err(|e| CliError::Io(path.display().to_string(), e))?;
        println!("wrote {}", path.display());
        Ok(())
    }
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Io(String, std::io::Error),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{path}: {e}"),
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

fn load_graph(spec: &str) -> Result<(String, EdgeColoredGraph), CliError> {
    if let Some(g) = builtin(spec) {
        return Ok((spec.to_string(), g));
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(CliError::Usage(format!(
            "'{spec}' is neither a built-in graph ({}) nor an existing file",
            BUILTIN_NAMES.join(", ")
        )));
    }
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Io(spec.to_string(), e))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| spec.to_string());
    Ok((name, parse_graph(&text)?))
}

fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::Usage(format!("cannot parse '{s}' as an exact rational"));
    if let Ok(r) = BigRational::from_str(s) {
        return Ok(r);
    }
    // Decimal form: shift the point into a power-of-ten denominator.
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1i32, rest),
        None => (1, s),
    };
    let (int_part, frac_part) = body.split_once('.').ok_or_else(bad)?;
    if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{}{}", if int_part.is_empty() { "0" } else { int_part }, frac_part);
    let numer = num_bigint::BigInt::from_str(&digits).map_err(|_| bad())?;
    let denom = num_bigint::BigInt::from(10u32).pow(frac_part.len() as u32);
    let r = BigRational::new(numer, denom);
    Ok(if sign < 0 { -r } else { r })
}

fn omega_str(two_omega: i64) -> String {
    if two_omega % 2 == 0 {
        format!("{}", two_omega / 2)
    } else {
        format!("{two_omega}/2")
    }
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::MelonicBaseI => "melonic-base-I",
        Verdict::MelonicBaseII => "melonic-base-II",
        Verdict::Infinity(1) => "infinity-1",
        Verdict::Infinity(2) => "infinity-2",
        Verdict::Infinity(3) => "infinity-3",
        Verdict::Infinity(_) => "infinity",
        Verdict::OtherCore => "other-core",
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn cmd_analyze(ctx: &Ctx, args: &AnalyzeArgs) -> Result<(), CliError> {
    let (name, g) = load_graph(&args.graph)?;
    println!("graph {name}: {} nodes, {} propagators", g.node_count(), g.line_count());
    println!("bipartite: {}", g.is_bipartite());
    let bubbles = g.bubbles();
    println!("bubbles: {}", bubbles.len());
    for (i, b) in bubbles.iter().enumerate() {
        println!(
            "  bubble {i}: {:?}, {} nodes, F_b = {}, 2*rho = {}, delta = {:?}",
            b.kind, b.node_count, b.face_count, b.rho2, b.delta
        );
    }
    if !g.is_closed() {
        println!("open graph ({} external legs); degree is defined for vacuum graphs only",
            g.external().len());
        return Ok(());
    }
    let deg = g.degree()?;
    println!("faces: {}", deg.faces.len());
    for l in 1..=3u8 {
        let lengths: Vec<usize> = deg
            .faces
            .iter()
            .filter(|f| f.color == l)
            .map(|f| f.length)
            .collect();
        println!("  color {l}: {} faces, lengths {lengths:?}", lengths.len());
    }
    for j in &deg.jackets {
        println!(
            "jacket J_{}: {} component(s), demigenus sum {}, delta = {}",
            j.color,
            j.components.len(),
            j.demigenus_sum(),
            j.delta
        );
    }
    println!(
        "degree omega = {} (direct) = {} (jackets); amplitude scales as N^({}/2)",
        omega_str(deg.omega2),
        omega_str(deg.omega2_jacket),
        deg.amplitude_exponent2()
    );
    let core = reduce(&g)?;
    println!(
        "reduction: {} contraction(s) ({} type I, {} type II), verdict {}",
        core.contractions.len(),
        core.p,
        core.q,
        verdict_str(core.verdict)
    );

    let mut csv = String::from(
        "name,nodes,propagators,faces,two_omega,two_omega_jacket,bipartite,verdict\n",
    );
    writeln!(
        csv,
        "{name},{},{},{},{},{},{},{}",
        g.node_count(),
        g.line_count(),
        deg.faces.len(),
        deg.omega2,
        deg.omega2_jacket,
        g.is_bipartite(),
        verdict_str(core.verdict)
    )
    .unwrap();
    ctx.write(&format!("analyze_{name}.csv"), &csv)
}

fn run_census(config: &CensusConfig) -> Result<CensusReport, Error> {
    let parts: Result<Vec<CensusReport>, Error> = (0..partition_count(config))
        .into_par_iter()
        .map(|k| census::enumerate_vacuum_partition(config, k))
        .collect();
    merge_reports(parts?)
}

fn cmd_census(ctx: &Ctx, args: &CensusArgs) -> Result<(), CliError> {
    let n2: Vec<usize> = args
        .n2
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("--n2 expects three counts, got '{}'", args.n2)))?;
    if n2.len() != 3 {
        return Err(CliError::Usage(format!(
            "--n2 expects three counts, got {}",
            n2.len()
        )));
    }
    let mut config = CensusConfig::new(args.n1, [n2[0], n2[1], n2[2]]);
    config.node_budget = args.node_budget;
    let report = run_census(&config)?;
    let check = census_theorem_check(&report)?;

    println!(
        "census n1 = {}, n2 = {:?}: {} nodes, {} labelled pairings",
        config.n1,
        config.n2,
        config.node_count(),
        report.labelled_total()
    );
    println!(
        "connected: {} pairings in {} isomorphism classes ({} disconnected)",
        report.connected_total,
        report.class_count(),
        report.disconnected_total
    );
    for (omega2, count) in report.classes_by_omega2() {
        println!("  omega = {}: {count} class(es)", omega_str(omega2));
    }
    println!(
        "checks: omega >= 0 {}; LO <=> melonic {}; NLO <=> infinity {}; face lemma {}; multiplicity sum {}",
        check.omega_nonnegative,
        check.lo_iff_melonic,
        check.nlo_iff_infinity,
        check.face_lemma,
        check.multiplicity_sum
    );
    if !check.all_pass() {
        return Err(CliError::Core(Error::InternalInconsistency(
            "census theorem check failed".into(),
        )));
    }

    let mut csv =
        String::from("canonical_form,n1,n2_1,n2_2,n2_3,multiplicity,two_omega,verdict\n");
    for c in &report.classes {
        writeln!(
            csv,
            "{},{},{},{},{},{},{},{}",
            hex(&c.canonical),
            config.n1,
            config.n2[0],
            config.n2[1],
            config.n2[2],
            c.multiplicity,
            c.omega2,
            verdict_str(c.verdict)
        )
        .unwrap();
    }
    let tag = format!("{}_{}_{}_{}", config.n1, config.n2[0], config.n2[1], config.n2[2]);
    ctx.write(&format!("census_{tag}.csv"), &csv)?;

    let mut bundle = String::new();
    for (i, c) in report.classes.iter().enumerate() {
        writeln!(
            bundle,
            "# class {i}: multiplicity {}, two_omega {}, verdict {}",
            c.multiplicity,
            c.omega2,
            verdict_str(c.verdict)
        )
        .unwrap();
        bundle.push_str(&c.representative.to_text());
        bundle.push('\n');
    }
    ctx.write(&format!("census_{tag}_representatives.txt"), &bundle)
}

fn cmd_trees(ctx: &Ctx, args: &TreesArgs) -> Result<(), CliError> {
    let brute = enumerate_trees_with_budget(args.p, args.q, args.budget)?;
    let closed = c_pq(args.p, args.q);
    println!(
        "trees with p = {}, q = {}: {brute} by direct enumeration",
        args.p, args.q
    );
    println!(
        "closed form (4p+2q)! / (p! q! (3p+q+1)!) = {closed}: {}",
        if brute == closed { "agree" } else { "MISMATCH" }
    );
    if brute != closed {
        return Err(CliError::Core(Error::InternalInconsistency(
            "tree count disagrees with the closed form".into(),
        )));
    }
    let mut csv = String::from("p,q,count_enumerated,count_closed_form\n");
    writeln!(csv, "{},{},{brute},{closed}", args.p, args.q).unwrap();
    ctx.write(&format!("trees_{}_{}.csv", args.p, args.q), &csv)
}

fn rational_row(n: usize, q: u32, c: &BigRational) -> String {
    format!("{n},{q},{},{}\n", c.numer(), c.denom())
}

fn cmd_series(ctx: &Ctx, args: &SeriesArgs) -> Result<(), CliError> {
    let order = args.order;
    if order == 0 {
        return Err(CliError::Usage("--order must be positive".into()));
    }
    if order > 200 {
        return Err(CliError::Core(Error::BudgetExceeded(format!(
            "series order {order} above the symbolic-table cap of 200"
        ))));
    }
    let glo = on3_core::series::glo_series(order);
    let h = gnlo_reduced_series(order);
    let flo = flo_series(order);

    // Bivariate tables: exact integer strings, coefficient of g^n mu^q as
    // numerator/denominator.
    let header = "n,q,numerator,denominator\n";
    let mut alpha_csv = String::from(header);
    let mut h_csv = String::from(header);
    let mut flo_csv = String::from(header);
    for n in 0..=order {
        for (q, c) in glo.coeff(n).terms() {
            alpha_csv.push_str(&rational_row(n, q, c));
        }
        for (q, c) in h.series.coeff(n).terms() {
            h_csv.push_str(&rational_row(n, q, c));
        }
        for (q, c) in flo.coeff(n).terms() {
            flo_csv.push_str(&rational_row(n, q, c));
        }
    }
    println!("exact tables through g^{order}: alpha_n (LO), h_n (NLO reduced), F_LO");
    println!("NLO convention: G_NLO = -sqrt(g) * h(g, mu)");
    ctx.write("series_alpha.csv", &alpha_csv)?;
    ctx.write("series_h.csv", &h_csv)?;
    ctx.write("series_flo.csv", &flo_csv)?;

    if let Some(mu_str) = &args.mu {
        let mu = parse_rational(mu_str)?;
        let a = alpha_coeffs_at(&mu, order);
        let hn = nlo_h_coeffs_at(&mu, order);
        let mut csv = String::from("n,alpha_numerator,alpha_denominator,h_numerator,h_denominator\n");
        for n in 0..=order {
            writeln!(
                csv,
                "{n},{},{},{},{}",
                a[n].numer(),
                a[n].denom(),
                hn[n].numer(),
                hn[n].denom()
            )
            .unwrap();
        }
        println!("evaluated at mu = {mu}");
        ctx.write("series_at_mu.csv", &csv)?;
        if ctx.svg {
            let pts: Vec<(f64, f64)> = (1..=order)
                .filter(|&n| !a[n].is_zero())
                .map(|n| (n as f64, ln_rational(&a[n].abs())))
                .collect();
            ctx.write(
                "series_at_mu.svg",
                &svg_polyline(&pts, "n", "ln |alpha_n(mu)|"),
            )?;
        }
    }
    Ok(())
}

fn cmd_critical(ctx: &Ctx, args: &CriticalArgs) -> Result<(), CliError> {
    // The critical curve lives at mu >= 0; any negative part of the grid is
    // covered by the exclusion scan below instead.
    let mut positive_start = args.mu_min;
    while positive_start < 0.0 {
        positive_start += args.step;
    }
    let curve = critical_curve(positive_start, args.mu_max, args.step)?;
    let mut csv = String::from("mu,G_c,g_c,K\n");
    for cp in &curve {
        writeln!(csv, "{},{},{},{}", cp.mu, cp.big_g, cp.g_c, cp.k).unwrap();
    }
    println!(
        "critical curve: {} points on mu in [{}, {}] (float columns)",
        curve.len(),
        args.mu_min,
        args.mu_max
    );
    for cp in &curve {
        println!(
            "  mu = {:>6.3}: G_c = {:.6}, g_c = {:.6} (1/g_c = {:.4}), K = {:.6}",
            cp.mu,
            cp.big_g,
            cp.g_c,
            1.0 / cp.g_c,
            cp.k
        );
    }
    ctx.write("critical.csv", &csv)?;
    if ctx.svg {
        let pts: Vec<(f64, f64)> = curve.iter().map(|cp| (cp.mu, cp.g_c)).collect();
        ctx.write("critical.svg", &svg_polyline(&pts, "mu", "g_c"))?;
    }

    if args.mu_min < 0.0 {
        let mut mu = args.mu_min;
        println!("negative-mu exclusion scan:");
        while mu < 0.0 {
            let report = negative_mu_check(mu)?;
            let cand = report
                .candidates
                .iter()
                .map(|c| format!("(G = {:.6}, g = {:.6})", c.big_g, c.g))
                .collect::<Vec<_>>()
                .join(", ");
            println!(
                "  mu = {:>6.3}: {} (bound g_c(|mu|) = {:.6}; candidates: {})",
                mu,
                if report.excluded { "excluded" } else { "SINGULAR" },
                report.domain_bound,
                if cand.is_empty() { "none".to_string() } else { cand }
            );
            mu += args.step;
        }
    }
    Ok(())
}

fn cmd_fit(ctx: &Ctx, args: &FitArgs) -> Result<(), CliError> {
    let mu = parse_rational(&args.mu)?;
    if args.nmax > 5000 {
        return Err(CliError::Core(Error::BudgetExceeded(format!(
            "nmax {} above the exact-coefficient cap of 5000",
            args.nmax
        ))));
    }
    println!("exponent fits at mu = {mu}, n <= {} (float columns)", args.nmax);
    for (label, coeffs) in [
        ("lo", alpha_coeffs_at(&mu, args.nmax)),
        ("nlo", nlo_h_coeffs_at(&mu, args.nmax)),
    ] {
        let ln: Vec<f64> = coeffs.iter().map(|c| ln_rational(&c.abs())).collect();
        let fit = on3_core::crit::fit_exponents_ln(&ln)?;
        println!(
            "  {label}: growth = {:.6}, power = {:.4}, residual = {:.2e}",
            fit.growth, fit.power, fit.residual
        );
        let mut csv = String::from("n_max,growth,power,residual\n");
        writeln!(csv, "{},{},{},{}", args.nmax, fit.growth, fit.power, fit.residual).unwrap();
        ctx.write(&format!("fit_{label}.csv"), &csv)?;
        if ctx.svg {
            let pts: Vec<(f64, f64)> = (1..ln.len()).map(|n| (n as f64, ln[n])).collect();
            ctx.write(
                &format!("fit_{label}.svg"),
                &svg_polyline(&pts, "n", "ln coefficient"),
            )?;
        }
    }
    Ok(())
}

/// Minimal line plot: one polyline on a white canvas with axis labels.
fn svg_polyline(points: &[(f64, f64)], x_label: &str, y_label: &str) -> String {
    let (w, h, margin) = (640.0, 420.0, 50.0);
    let (mut x0, mut x1) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in points {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() || x1 <= x0 {
        x1 = x0 + 1.0;
    }
    if !y0.is_finite() || y1 <= y0 {
        y1 = y0 + 1.0;
    }
    let sx = |x: f64| margin + (x - x0) / (x1 - x0) * (w - 2.0 * margin);
    let sy = |y: f64| h - margin - (y - y0) / (y1 - y0) * (h - 2.0 * margin);
    let path: Vec<String> = points
        .iter()
        .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
        .collect();
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" ",
            "viewBox=\"0 0 {w} {h}\">\n",
            "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n",
            "<polyline points=\"{path}\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\"/>\n",
            "<text x=\"{xc}\" y=\"{yb}\" text-anchor=\"middle\" font-size=\"13\">{xl}</text>\n",
            "<text x=\"14\" y=\"{yc}\" text-anchor=\"middle\" font-size=\"13\" ",
            "transform=\"rotate(-90 14 {yc})\">{yl}</text>\n",
            "</svg>\n"
        ),
        w = w,
        h = h,
        path = path.join(" "),
        xc = w / 2.0,
        yb = h - 12.0,
        yc = h / 2.0,
        xl = x_label,
        yl = y_label,
    )
}
