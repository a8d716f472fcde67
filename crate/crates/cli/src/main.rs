//! `cylschur`: command-line front end for the cylschur library.
//!
//! Exit codes: 0 on success, 2 on malformed input, 3 when a cost guard is
//! hit, 1 when `verify` finds a mismatch or output cannot be written.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cylschur::combinat::{parse_list, parse_signed_list, Partition};
use cylschur::config::Limits;
use cylschur::cylindric::{count_cssyt, enumerate_cssyt, schur_monomial, schur_symmetric, CylindricDiagram};
use cylschur::flagged::{
    contingency_count, contingency_tables, enumerate_flagged_ssyt, flagged_kostka, flagged_schur,
    flagged_schur_by_enumeration, flagged_schur_jt, kostka_via_contingency, lr_coefficient, ContingencySpec,
    FlagPair, SkewShape,
};
use cylschur::gt::{enumerate_cylindric_gt, enumerate_flagged_gt, GtPattern, WrapCondition};
use cylschur::polyring::{expand_in_powersum, BasisExpansion, SparsePolynomial};
use cylschur::ribbon::{classify_stacked, enumerate_ribbon_tableaux, mn_expansion, verify_stacked_formula};
use cylschur::saturation::{
    cylindric_as_flagged, fit_sequence, saturation_scan_cylindric, saturation_scan_flagged, stretch_values_cylindric,
    stretch_values_flagged, SaturationScan, StretchFit,
};
use cylschur::scenarios::{self, ScenarioReport};
use cylschur::tiling::{
    enumerate_tilings, epsilon_k, height_histogram, is_good_pair, parity_report, PairingFloor,
};
use cylschur::Error;

#[derive(Parser)]
#[command(name = "cylschur", version, about = "Cylindric and flagged Schur function combinatorics")]
struct Cli {
    /// Emit one JSON record per line instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the output to a file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Largest strict-edge set for the 2^|E| signed sum.
    #[arg(long, global = true)]
    max_edges: Option<usize>,
    /// Largest n for sums over permutations of n.
    #[arg(long, global = true)]
    max_perm: Option<usize>,
    /// Largest diagram accepted by the tiling search.
    #[arg(long, global = true)]
    max_boxes: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cylindric Schur function of a diagram.
    Schur(SchurArgs),
    /// Murnaghan-Nakayama expansion in power sums.
    Mn(DiagramArg),
    /// Ribbon tableaux of a diagram for a given ribbon-size partition.
    Ribbons(RibbonsArgs),
    /// k-ribbon tilings of a diagram.
    Tilings(TilingArgs),
    /// Good-pair test, pairing parity and tiling parities.
    Parity(TilingArgs),
    /// Flagged Schur polynomial, or the first-column expansion of a diagram.
    Flagged(FlaggedArgs),
    /// Flagged skew Kostka number.
    Kostka(KostkaArgs),
    /// Flagged contingency table count.
    Contingency(ContingencyArgs),
    /// Gelfand-Tsetlin patterns, flagged or cylindric.
    Gt(GtArgs),
    /// Positivity of stretched Kostka numbers.
    Saturate(StretchArgs),
    /// Stretched Kostka numbers and their polynomial fit.
    Stretch(StretchArgs),
    /// Littlewood-Richardson coefficient computed three ways.
    Lr(LrArgs),
    /// Run the golden suite of worked examples.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct DiagramArg {
    /// `skew lambda=.. mu=.. shift=.. rows=..` or `cyl x=.. y=.. inner=W@a,b outer=W@a,b`.
    #[arg(long)]
    diagram: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchurBasis {
    /// Monomial symmetric functions.
    M,
    /// Power sums.
    P,
    /// Polynomial in `--nvars` variables.
    Poly,
}

#[derive(Args)]
struct SchurArgs {
    #[command(flatten)]
    diagram: DiagramArg,
    #[arg(long, value_enum, default_value = "m")]
    basis: SchurBasis,
    /// Variables for `--basis poly` (default: the number of boxes).
    #[arg(long)]
    nvars: Option<usize>,
    /// Also list tableaux of this weight.
    #[arg(long)]
    weight: Option<String>,
}

#[derive(Args)]
struct RibbonsArgs {
    #[command(flatten)]
    diagram: DiagramArg,
    /// Ribbon sizes, e.g. 3,1,1.
    #[arg(long)]
    mu: String,
    /// Print only the count and the signed sum.
    #[arg(long)]
    count_only: bool,
}

#[derive(Args)]
struct TilingArgs {
    #[command(flatten)]
    diagram: DiagramArg,
    #[arg(short, long)]
    k: usize,
    /// Print each tiling.
    #[arg(long)]
    show: bool,
}

#[derive(Args, Clone)]
struct FlagArgs {
    /// Skew shape `lambda/mu`, e.g. 4,3/2.
    #[arg(long)]
    shape: Option<String>,
    /// Lower flags, one per row.
    #[arg(long)]
    a: Option<String>,
    /// Upper flags, one per row.
    #[arg(long)]
    b: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlaggedMethod {
    Tableaux,
    Enumerate,
    Jt,
}

#[derive(Args)]
struct FlaggedArgs {
    #[command(flatten)]
    flags: FlagArgs,
    #[arg(long)]
    nvars: Option<usize>,
    #[arg(long, value_enum, default_value = "tableaux")]
    method: FlaggedMethod,
    /// Expand this diagram over the fillings of a cut column instead.
    #[arg(long)]
    diagram: Option<String>,
    /// Column to cut at (default: leftmost column of rows 1..y).
    #[arg(long, allow_hyphen_values = true)]
    cut: Option<i64>,
}

#[derive(Args)]
struct KostkaArgs {
    #[command(flatten)]
    flags: FlagArgs,
    #[arg(long)]
    weight: String,
    /// Also compute the signed contingency sum.
    #[arg(long)]
    contingency: bool,
    /// List the tableaux.
    #[arg(long)]
    list: bool,
}

#[derive(Args)]
struct ContingencyArgs {
    /// Column sums.
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    /// Row sums.
    #[arg(long, allow_hyphen_values = true)]
    beta: String,
    /// Lowest allowed row per column (default 1).
    #[arg(long)]
    a: Option<String>,
    /// Highest allowed row per column (default: number of rows).
    #[arg(long)]
    b: Option<String>,
    /// List the tables.
    #[arg(long)]
    list: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Wrap {
    Interlacing,
    SameLevel,
}

#[derive(Args)]
struct GtArgs {
    #[command(flatten)]
    flags: FlagArgs,
    #[arg(long)]
    diagram: Option<String>,
    #[arg(long)]
    weight: String,
    /// Seam condition for cylindric patterns.
    #[arg(long, value_enum, default_value = "interlacing")]
    wrap: Wrap,
}

#[derive(Args)]
struct StretchArgs {
    #[command(flatten)]
    flags: FlagArgs,
    #[arg(long)]
    diagram: Option<String>,
    #[arg(long)]
    weight: Option<String>,
    #[arg(long, default_value_t = 5)]
    kmax: u32,
    /// Fit a given sequence instead (stretch only).
    #[arg(long)]
    values: Option<String>,
    /// Index of the first value in `--values`.
    #[arg(long, default_value_t = 0)]
    start: i64,
    /// Largest quasipolynomial period tried.
    #[arg(long, default_value_t = 4)]
    max_period: usize,
}

#[derive(Args)]
struct LrArgs {
    #[arg(long)]
    lambda: String,
    #[arg(long)]
    mu: String,
    #[arg(long)]
    nu: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Scenario names (default: all).
    names: Vec<String>,
    /// List registered scenarios.
    #[arg(long)]
    list: bool,
}

/// Collected output: text lines or JSON records.
struct Out {
    json: bool,
    buf: String,
}

impl Out {
    fn text(&mut self, s: impl AsRef<str>) {
        if !self.json {
            self.buf.push_str(s.as_ref());
            if !s.as_ref().ends_with('\n') {
                self.buf.push('\n');
            }
        }
    }

    fn record(&mut self, v: Value) {
        if self.json {
            self.buf.push_str(&v.to_string());
            self.buf.push('\n');
        }
    }
}

/// Input errors that do not come from the library.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Usage(msg.into()))
}

fn diagram(s: &str) -> anyhow::Result<CylindricDiagram> {
    Ok(s.parse::<CylindricDiagram>()?)
}

fn u32_list(s: &str) -> anyhow::Result<Vec<u32>> {
    Ok(parse_list(s)?)
}

fn expansion_json(e: &BasisExpansion) -> Value {
    let m: BTreeMap<String, String> = e
        .iter()
        .map(|(i, c)| (i.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","), c.to_string()))
        .collect();
    json!({ "basis": e.kind.symbol(), "coefficients": m })
}

fn poly_json(p: &SparsePolynomial) -> Value {
    let terms: Vec<Value> = p
        .records()
        .into_iter()
        .map(|r| json!({ "exponent": r.exponent, "coefficient": format!("{}/{}", r.num, r.den).trim_end_matches("/1") }))
        .collect();
    json!({ "nvars": p.nvars(), "terms": terms })
}

/// Prints an expansion; a constant prints as the bare number.
fn expansion_text(e: &BasisExpansion) -> String {
    let only_constant = e.len() == 1 && e.iter().all(|(i, _)| i.is_empty());
    if only_constant {
        e.iter().map(|(_, c)| c.to_string()).collect()
    } else {
        e.to_string()
    }
}

fn flag_inputs(f: &FlagArgs, nvars: Option<usize>) -> anyhow::Result<(SkewShape, FlagPair, usize)> {
    let shape: SkewShape = f
        .shape
        .as_deref()
        .ok_or_else(|| usage("--shape is required"))?
        .parse()?;
    let rows = shape.rows();
    let a = match &f.a {
        Some(s) => u32_list(s)?,
        None => vec![1; rows],
    };
    let default_n = nvars.unwrap_or_else(|| f.b.as_deref().map_or(rows.max(1), |_| 0));
    let b = match &f.b {
        Some(s) => u32_list(s)?,
        None => vec![default_n as u32; rows],
    };
    let flags = FlagPair::new(a, b)?;
    let n = nvars.unwrap_or_else(|| flags.b().iter().copied().max().unwrap_or(1) as usize);
    Ok((shape, flags, n))
}

fn scan_output(out: &mut Out, scan: &SaturationScan) {
    out.text("k\tcount\tpositive");
    for r in &scan.rows {
        out.text(format!("{}\t{}\t{}", r.k, r.count, r.positive));
        out.record(json!({ "k": r.k, "count": r.count.to_string(), "positive": r.positive }));
    }
    out.text(format!("violations: {}", scan.violations.len()));
    out.record(json!({ "violations": scan.violations }));
}

fn fit_output(out: &mut Out, fit: &StretchFit) {
    out.text(format!("values: {:?}", fit.values));
    out.text(format!("fit: {:?} {}", fit.kind, fit.describe()));
    out.text(format!("period: {}  onset: k = {}  residual: {}", fit.period, fit.onset, fit.residual));
    out.text(format!("non-negative coefficients: {}", fit.nonnegative_coefficients));
    out.record(json!({
        "values": fit.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "kind": format!("{:?}", fit.kind),
        "period": fit.period,
        "onset": fit.onset,
        "components": fit.components.iter().map(|c| c.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "residual": fit.residual.to_string(),
        "nonnegative": fit.nonnegative_coefficients,
    }));
}

fn run(cli: &Cli, out: &mut Out) -> anyhow::Result<bool> {
    let mut limits = Limits::from_env()?;
    if let Some(v) = cli.max_edges {
        limits.max_strict_edges = v;
    }
    if let Some(v) = cli.max_perm {
        limits.max_perm_n = v;
    }
    if let Some(v) = cli.max_boxes {
        limits.max_tiling_boxes = v;
    }
    match &cli.command {
        Command::Schur(a) => {
            let d = diagram(&a.diagram.diagram)?;
            match a.basis {
                SchurBasis::M => {
                    let e = schur_symmetric(&d)?;
                    out.text(expansion_text(&e));
                    out.record(json!({ "diagram": d.to_spec_string(), "boxes": d.size(), "expansion": expansion_json(&e) }));
                }
                SchurBasis::P => {
                    let s = schur_monomial(&d, d.size().max(1))?;
                    let e = expand_in_powersum(&s)?;
                    out.text(expansion_text(&e));
                    out.record(json!({ "diagram": d.to_spec_string(), "expansion": expansion_json(&e) }));
                }
                SchurBasis::Poly => {
                    let n = a.nvars.unwrap_or(d.size().max(1));
                    let p = schur_monomial(&d, n)?;
                    out.text(p.to_string());
                    out.record(json!({ "diagram": d.to_spec_string(), "polynomial": poly_json(&p) }));
                }
            }
            if let Some(w) = &a.weight {
                let w = u32_list(w)?;
                let ts = enumerate_cssyt(&d, w.len(), Some(&w))?;
                out.text(format!("{} tableaux of weight {w:?}", ts.len()));
                for t in &ts {
                    out.text(d.render(Some(&t.labels(&d))));
                    out.record(json!({ "tableau": t.values }));
                }
                out.record(json!({ "weight": w, "count": count_cssyt(&d, &w).to_string() }));
            }
        }
        Command::Mn(a) => {
            let d = diagram(&a.diagram)?;
            let e = mn_expansion(&d)?;
            out.text(expansion_text(&e));
            out.record(json!({ "diagram": d.to_spec_string(), "expansion": expansion_json(&e) }));
        }
        Command::Ribbons(a) => {
            let d = diagram(&a.diagram.diagram)?;
            let mu: Partition = a.mu.parse()?;
            let ts = enumerate_ribbon_tableaux(&d, &mu)?;
            let signed: i64 = ts.iter().map(|t| t.weight()).sum();
            out.text(format!("{} ribbon tableaux of type {mu}, signed sum {signed}", ts.len()));
            if !a.count_only {
                for t in &ts {
                    let labels: Vec<String> = t.classes.iter().map(|c| format!("{:?} h={} w={}", c.tag, c.height, c.width)).collect();
                    out.text(format!("weight {}: {}", t.weight(), labels.join(", ")));
                    out.text(t.render(&d));
                }
            }
            out.record(json!({ "mu": mu.parts(), "count": ts.len(), "signed_sum": signed }));
            let stacked = verify_stacked_formula(&d, &limits).ok();
            if let (Some(r), Ok(c)) = (stacked, classify_stacked(&d)) {
                out.text(format!("whole diagram: {:?}, height {}, oracle {}, closed form {}", c.tag, c.height, r.oracle, r.closed_form));
                out.record(json!({ "tag": format!("{:?}", c.tag), "height": c.height, "width": c.width, "oracle": r.oracle, "closed_form": r.closed_form }));
            }
        }
        Command::Tilings(a) => {
            let d = diagram(&a.diagram.diagram)?;
            let r = enumerate_tilings(&d, a.k, &limits)?;
            out.text(format!("{} tilings by {}-ribbons, {} distinct cores", r.tilings.len(), a.k, r.cores.len()));
            let hist = height_histogram(&r);
            for (h, c) in &hist {
                out.text(format!("total height {h}: {c}"));
            }
            if a.show {
                for t in &r.tilings {
                    out.text(format!("heights {:?}, core size {}", t.heights, t.core_size));
                    out.text(t.render(&d));
                }
            }
            out.record(json!({
                "k": a.k,
                "tilings": r.tilings.len(),
                "total_heights": r.total_heights,
                "core_sizes": r.tilings.iter().map(|t| t.core_size).collect::<Vec<_>>(),
                "cores": r.cores.len(),
            }));
        }
        Command::Parity(a) => {
            let d = diagram(&a.diagram.diagram)?;
            let rep = parity_report(&d, a.k, &limits)?;
            let w = d.outer_loop().word().to_vec();
            let n = w.len();
            out.text(format!("outer word {}", d.outer_loop().word_string()));
            if n % a.k == 0 {
                let g = is_good_pair(&d, a.k)?;
                let eps = epsilon_k(&w, a.k, PairingFloor::Total)?;
                out.text(format!("good pair: {} (ones per class {:?})", g.good, g.one_counts));
                out.text(format!("epsilon_{}: {eps}", a.k));
                out.record(json!({ "good": g.good, "one_counts": g.one_counts, "epsilon": eps }));
            } else {
                out.text(format!("{} does not divide x + y = {n}", a.k));
            }
            out.text(format!("inner strict: {}", rep.inner_strict));
            out.text(format!("parities of empty-core tilings: {:?}", rep.parities_observed));
            out.text(format!("cancellation free: {}", rep.cancellation_free));
            out.record(json!({
                "inner_strict": rep.inner_strict,
                "parities": rep.parities_observed,
                "cancellation_free": rep.cancellation_free,
            }));
        }
        Command::Flagged(a) => {
            if let Some(spec) = &a.diagram {
                let d = diagram(spec)?;
                let n = a.nvars.ok_or_else(|| usage("--nvars is required with --diagram"))?;
                let e = cylindric_as_flagged(&d, n, a.cut)?;
                out.text(format!("cut at column {}: {} terms, residual shape {}", e.cut, e.terms.len(), e.residual));
                for t in &e.terms {
                    out.text(format!("column {:?}  {}", t.column, t.flags));
                    out.record(json!({ "column": t.column, "content": t.content, "a": t.flags.a(), "b": t.flags.b() }));
                }
                let same = e.recombine()? == schur_monomial(&d, n)?;
                out.text(format!("recombination equals s_D: {same}"));
                out.record(json!({ "cut": e.cut, "terms": e.terms.len(), "residual": e.residual.to_string(), "recombines": same }));
                return Ok(true);
            }
            let (shape, flags, n) = flag_inputs(&a.flags, a.nvars)?;
            let p = match a.method {
                FlaggedMethod::Tableaux => flagged_schur(&shape, &flags, n)?,
                FlaggedMethod::Enumerate => flagged_schur_by_enumeration(&shape, &flags, n)?,
                FlaggedMethod::Jt => flagged_schur_jt(&shape, &flags, n)?,
            };
            out.text(p.to_string());
            out.record(json!({ "shape": shape.to_string(), "flags": flags.to_string(), "polynomial": poly_json(&p) }));
        }
        Command::Kostka(a) => {
            let w = u32_list(&a.weight)?;
            let (shape, flags, _) = flag_inputs(&a.flags, Some(w.len()))?;
            let k = flagged_kostka(&shape, &w, &flags)?;
            out.text(k.to_string());
            let mut rec = json!({ "shape": shape.to_string(), "flags": flags.to_string(), "weight": w, "kostka": k.to_string() });
            if a.contingency {
                let c = kostka_via_contingency(&shape, &w, &flags, &limits)?;
                out.text(format!("signed contingency sum: {c}"));
                rec["contingency"] = json!(c.to_string());
            }
            out.record(rec);
            if a.list {
                for t in enumerate_flagged_ssyt(&shape, &flags, w.len(), Some(&w))? {
                    out.text(t.render(&shape));
                    out.record(json!({ "tableau": t.rows }));
                }
            }
        }
        Command::Contingency(a) => {
            let alpha = parse_signed_list(&a.alpha)?;
            let beta = parse_signed_list(&a.beta)?;
            let rows = beta.len() as u32;
            let lo = match &a.a {
                Some(s) => u32_list(s)?,
                None => vec![1; alpha.len()],
            };
            let hi = match &a.b {
                Some(s) => u32_list(s)?,
                None => vec![rows; alpha.len()],
            };
            let spec = ContingencySpec::new(alpha, beta, FlagPair::unchecked(lo, hi)?)?;
            let n = contingency_count(&spec);
            out.text(n.to_string());
            out.record(json!({ "alpha": spec.alpha, "beta": spec.beta, "count": n.to_string() }));
            if a.list {
                for t in contingency_tables(&spec) {
                    for row in &t {
                        out.text(row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
                    }
                    out.text("");
                    out.record(json!({ "table": t }));
                }
            }
        }
        Command::Gt(a) => {
            let w = u32_list(&a.weight)?;
            let patterns: Vec<GtPattern> = if let Some(spec) = &a.diagram {
                let wrap = match a.wrap {
                    Wrap::Interlacing => WrapCondition::Interlacing,
                    Wrap::SameLevel => WrapCondition::SameLevel,
                };
                enumerate_cylindric_gt(&diagram(spec)?, &w, wrap)
            } else {
                let (shape, flags, _) = flag_inputs(&a.flags, Some(w.len()))?;
                enumerate_flagged_gt(&shape, &flags, &w)?
            };
            out.text(format!("{} patterns", patterns.len()));
            for p in &patterns {
                out.text(p.render());
                out.record(json!({ "levels": p.levels(), "wrap_shift": p.wrap_shift() }));
            }
        }
        Command::Saturate(a) => {
            let w = u32_list(a.weight.as_deref().ok_or_else(|| usage("--weight is required"))?)?;
            let scan = if let Some(spec) = &a.diagram {
                saturation_scan_cylindric(&diagram(spec)?, &w, a.kmax)?
            } else {
                let (shape, flags, _) = flag_inputs(&a.flags, Some(w.len()))?;
                saturation_scan_flagged(&shape, &w, &flags, a.kmax)?
            };
            scan_output(out, &scan);
        }
        Command::Stretch(a) => {
            let (start, values) = if let Some(v) = &a.values {
                (a.start, parse_signed_list(v)?.into_iter().map(i128::from).collect::<Vec<_>>())
            } else {
                let w = u32_list(a.weight.as_deref().ok_or_else(|| usage("--weight or --values is required"))?)?;
                let v = if let Some(spec) = &a.diagram {
                    stretch_values_cylindric(&diagram(spec)?, &w, a.kmax)?
                } else {
                    let (shape, flags, _) = flag_inputs(&a.flags, Some(w.len()))?;
                    stretch_values_flagged(&shape, &w, &flags, a.kmax)?
                };
                (0, v)
            };
            let fit = fit_sequence(start, &values, a.max_period)?;
            fit_output(out, &fit);
        }
        Command::Lr(a) => {
            let lambda: Partition = a.lambda.parse()?;
            let mu: Partition = a.mu.parse()?;
            let nu: Partition = a.nu.parse()?;
            let r = lr_coefficient(&lambda, &mu, &nu, &limits)?;
            out.text(r.tableaux.to_string());
            out.text(format!("kostant {}  contingency {}  tableaux {}  agree {}", r.kostant, r.contingency, r.tableaux, r.agree()));
            out.record(json!({
                "lambda": lambda.parts(), "mu": mu.parts(), "nu": nu.parts(),
                "kostant": r.kostant.to_string(), "contingency": r.contingency.to_string(),
                "tableaux": r.tableaux.to_string(), "agree": r.agree(),
            }));
            return Ok(r.agree());
        }
        Command::Verify(a) => {
            if a.list {
                for s in scenarios::SCENARIOS {
                    out.text(format!("{}\t{}", s.name, s.summary));
                    out.record(json!({ "name": s.name, "summary": s.summary }));
                }
                return Ok(true);
            }
            let names: Vec<&str> = if a.names.is_empty() {
                scenarios::names()
            } else {
                a.names.iter().map(String::as_str).collect()
            };
            for n in &names {
                scenarios::find(n)?;
            }
            let reports: Vec<ScenarioReport> = scenarios::run_suite(&names)?;
            for r in &reports {
                out.text(r.to_string());
                out.record(serde_json::to_value(r)?);
            }
            let failed = reports.iter().filter(|r| !r.passed).count();
            out.text(format!("{} scenarios, {failed} failed", reports.len()));
            return Ok(failed == 0);
        }
    }
    Ok(true)
}

fn exit_code_for(e: &anyhow::Error) -> u8 {
    if let Some(err) = e.downcast_ref::<Error>() {
        return match err {
            Error::CostGuard { .. } => 3,
            Error::Violation(_) => 1,
            _ => 2,
        };
    }
    if e.downcast_ref::<Usage>().is_some() {
        return 2;
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Out {
        json: cli.json,
        buf: String::new(),
    };
    let result = run(&cli, &mut out);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &out.buf),
        None => std::io::stdout().write_all(out.buf.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(1);
    }
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
