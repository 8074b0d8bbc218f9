//! Command-line front end: argument definitions, dispatch to the library,
//! and deterministic JSON / JSON-lines / CSV emission.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::curves::{comparison_tables, sweep, CountContext, CurveKind, SweepSelection};
use crate::error::{Error, Result};
use crate::field::{FiniteField, Polynomial, Tower, DEFAULT_BUDGET};
use crate::graded::{check_rth_power, graded_tensor_induce, graded_trace, random_graded_rep, GradedLimits, GradedRep};
use crate::rep::random::random_cyclic_rep;
use crate::rep::serial::InductionInput;
use crate::rep::{
    induced_matrix, tensor_induction, tensor_induction_via_cocycle, FiniteGroup, MatrixRep, Scalar, Subgroup,
};
use crate::sums::{
    dft, fiber_sums, fubini_check, inverse_dft, kernel_trace_function, BoundStatus, FiberMaps, SumContext, SumMode,
    TOLERANCE,
};

/// Environment variable overriding the field-size budget.
pub const BUDGET_ENV: &str = "FROBSUM_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "frobsum", version, about = "Tensor induction, restricted character sums and curve point counts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Jsonl)]
    pub format: Format,
    /// Write records here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest field size to enumerate (overrides FROBSUM_BUDGET).
    #[arg(long, global = true)]
    pub budget: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Jsonl,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tensor-induce a subgroup representation and check the trace identity.
    TensorInduct(TensorInductArgs),
    /// Graded tensor induction with Koszul signs and its trace identities.
    TraceIdentity(TraceIdentityArgs),
    /// Trace- or norm-restricted sums of the kernel trace function of f.
    Sum(SumArgs),
    /// Fubini identity between fiber sums and pulled-back characters.
    DftCheck(DftArgs),
    /// Point count of one Artin–Schreier or superelliptic curve.
    CurveCount(CurveArgs),
    /// The C_{d,r} comparison tables.
    Tables(TablesArgs),
    /// Point counts over many polynomials of one degree.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct TensorInductArgs {
    /// JSON file describing the group, subgroup and generator matrices.
    #[arg(long, conflicts_with = "cyclic")]
    pub input: Option<PathBuf>,
    /// Random instances on the cyclic group of this order.
    #[arg(long, required_unless_present = "input")]
    pub cyclic: Option<usize>,
    /// Index of the subgroup in the cyclic group.
    #[arg(long, default_value_t = 2)]
    pub index: usize,
    /// Dimension of the random representations.
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// Number of random instances.
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// Include the induced matrices in the records.
    #[arg(long)]
    pub matrices: bool,
}

#[derive(Debug, Args)]
pub struct TraceIdentityArgs {
    /// JSON file with a graded representation: {"pieces": {"<degree>": matrix}}.
    #[arg(long, conflicts_with = "random")]
    pub input: Option<PathBuf>,
    /// Number of random graded representations.
    #[arg(long, required_unless_present = "input")]
    pub random: Option<usize>,
    /// Induction degrees.
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    pub r: Vec<usize>,
    #[arg(long, default_value_t = -2, allow_hyphen_values = true)]
    pub min_degree: i64,
    #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
    pub max_degree: i64,
    #[arg(long, default_value_t = 2)]
    pub max_dim: usize,
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    /// Characteristic.
    #[arg(long)]
    pub p: u64,
    /// Degree of k over GF(p).
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Degree of k_r over k.
    #[arg(long)]
    pub r: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Trace,
    Norm,
}

impl From<ModeArg> for SumMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Trace => SumMode::Trace,
            ModeArg::Norm => SumMode::Norm,
        }
    }
}

#[derive(Debug, Args)]
pub struct SumArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Coefficients of f over k_r, constant term first, e.g. 0,0,1.
    #[arg(long)]
    pub f: String,
    #[arg(long, value_enum)]
    pub mode: ModeArg,
    /// Target a ∈ k in digit notation, or "all".
    #[arg(long, default_value = "all")]
    pub a: String,
}

#[derive(Debug, Args)]
pub struct DftArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub f: String,
    /// Mode to check; both when omitted.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    As,
    Se,
}

impl From<KindArg> for CurveKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::As => CurveKind::ArtinSchreier,
            KindArg::Se => CurveKind::Superelliptic,
        }
    }
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub f: String,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    #[arg(long, default_value_t = 5)]
    pub d: u64,
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,10,20")]
    pub rs: Vec<u64>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[command(flatten)]
    pub field: FieldArgs,
    /// Degree of the monic polynomials.
    #[arg(long)]
    pub d: usize,
    /// Sample this many polynomials instead of visiting all of them.
    #[arg(long)]
    pub sample: Option<usize>,
    /// Emit only the aggregate record.
    #[arg(long)]
    pub summary_only: bool,
}

/// Records of one run plus the tally of checks.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunResult {
    pub records: Vec<Value>,
    /// `(header, key)` pairs for CSV output.
    pub columns: Vec<(&'static str, &'static str)>,
    pub passed: usize,
    pub failed: usize,
    pub not_asserted: usize,
}

impl RunResult {
    fn new(columns: &[(&'static str, &'static str)]) -> Self {
        Self { columns: columns.to_vec(), ..Self::default() }
    }

    fn check(&mut self, ok: bool) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }

    fn status(&mut self, s: BoundStatus) {
        match s {
            BoundStatus::Holds => self.passed += 1,
            BoundStatus::Violated => self.failed += 1,
            BoundStatus::NotAsserted => self.not_asserted += 1,
        }
    }

    fn push(&mut self, v: impl Serialize) -> Result<()> {
        let v = serde_json::to_value(v).map_err(|e| Error::Parse(e.to_string()))?;
        self.records.push(normalize(v));
        Ok(())
    }

    pub fn exit_ok(&self) -> bool {
        self.failed == 0
    }
}

/// Rounds floats to 12 significant digits so output bytes do not depend on
/// the last bits of floating-point evaluation.
fn normalize(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap();
            let rounded: f64 = format!("{x:.11e}").parse().unwrap();
            let rounded = if rounded == 0.0 { 0.0 } else { rounded };
            json!(rounded)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(normalize).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, normalize(v))).collect::<Map<_, _>>()),
        other => other,
    }
}

/// Budget from `--budget`, else `FROBSUM_BUDGET`, else the default.
pub fn resolve_budget(flag: Option<u64>) -> Result<u64> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| Error::Parse(format!("{BUDGET_ENV}={s:?} is not an integer"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn tower(args: &FieldArgs, budget: u64) -> Result<Tower> {
    if args.n == 0 || args.r == 0 {
        return Err(Error::InvalidArgument("n and r must be positive".into()));
    }
    let base = FiniteField::with_budget(args.p, args.n, budget)?;
    let top = base.sibling(args.n * args.r)?;
    Tower::new(&base, &top)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Runs one subcommand.
pub fn dispatch(cli: &Cli) -> Result<RunResult> {
    let budget = resolve_budget(cli.budget)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    match &cli.command {
        Command::TensorInduct(a) => run_tensor_induct(a, &mut rng),
        Command::TraceIdentity(a) => run_trace_identity(a, &mut rng),
        Command::Sum(a) => run_sum(a, budget),
        Command::DftCheck(a) => run_dft(a, budget),
        Command::CurveCount(a) => run_curve(a, budget),
        Command::Tables(a) => run_tables(a),
        Command::Sweep(a) => run_sweep(a, budget, cli.seed),
    }
}

const INDUCT_COLUMNS: &[(&str, &str)] = &[
    ("instance", "instance"),
    ("group_order", "group_order"),
    ("index", "index"),
    ("dim", "dim"),
    ("induced_dim", "induced_dim"),
    ("homomorphism_ok", "homomorphism_ok"),
    ("cocycle_ok", "cocycle_ok"),
    ("frobenius_ok", "frobenius_ok"),
];

fn induct_record(
    instance: usize,
    h: &Subgroup,
    rep: &MatrixRep<BigRational>,
    with_matrices: bool,
    out: &mut RunResult,
) -> Result<()> {
    let group = h.parent();
    let ind = tensor_induction(h, rep)?;
    let hom = ind.check_homomorphism().is_ok();
    out.check(hom);
    let cocycle_ok = if h.is_normal() {
        match tensor_induction_via_cocycle(h, rep, h.coset_reps()) {
            Ok(via) => Some(via.same_matrices(&ind)),
            Err(Error::InvalidCocycle(_)) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    if let Some(ok) = cocycle_ok {
        out.check(ok);
    }
    let r = h.index();
    let mut frobenius = Vec::new();
    let mut frobenius_ok = None;
    if group.is_cyclic() {
        let mut all = true;
        for g in 0..group.order() {
            // order of gH in G/H
            let mut k = 1;
            let mut x = g;
            while !h.contains(x) {
                x = group.mul(x, g);
                k += 1;
            }
            let generator = k == r;
            let lhs = induced_matrix(h, rep, g).trace();
            let rhs = rep.image(group.pow(g, r as u64)).trace();
            let holds = lhs == rhs;
            if generator {
                out.check(holds);
                all &= holds;
            } else {
                out.not_asserted += 1;
            }
            frobenius.push(json!({
                "element": g,
                "generates_quotient": generator,
                "lhs": lhs.to_exact_string(),
                "rhs": rhs.to_exact_string(),
                "holds": holds,
            }));
        }
        frobenius_ok = Some(all);
    }
    let mut record = json!({
        "instance": instance,
        "group_order": group.order(),
        "subgroup": h.members(),
        "coset_reps": h.coset_reps(),
        "index": r,
        "dim": rep.dim(),
        "induced_dim": ind.dim(),
        "homomorphism_ok": hom,
        "cocycle_ok": cocycle_ok,
        "character": ind.character().iter().map(|(_, t)| t.to_exact_string()).collect::<Vec<_>>(),
        "frobenius": frobenius,
        "frobenius_ok": frobenius_ok,
    });
    if with_matrices {
        record["matrices"] = serde_json::to_value(ind.images()).map_err(|e| Error::Parse(e.to_string()))?;
    }
    out.push(record)
}

fn run_tensor_induct(a: &TensorInductArgs, rng: &mut ChaCha8Rng) -> Result<RunResult> {
    let mut out = RunResult::new(INDUCT_COLUMNS);
    if let Some(path) = &a.input {
        let input: InductionInput<BigRational> = read_json(path)?;
        let (h, rep) = input.build()?;
        induct_record(0, &h, &rep, a.matrices, &mut out)?;
        return Ok(out);
    }
    let n = a.cyclic.expect("clap enforces --cyclic or --input");
    if n == 0 || a.index == 0 || !n.is_multiple_of(a.index) {
        return Err(Error::InvalidArgument(format!("index {} does not divide {n}", a.index)));
    }
    if a.dim == 0 || a.dim > 3 {
        return Err(Error::InvalidArgument("random representations have dimension 1..=3".into()));
    }
    let group = std::sync::Arc::new(FiniteGroup::cyclic(n)?);
    let h = Subgroup::of_index_in_cyclic(&group, a.index)?;
    for i in 0..a.count {
        let rep = random_cyclic_rep(&h, a.dim, rng)?.map_scalars(|x| BigRational::from_i64(*x));
        induct_record(i, &h, &rep, a.matrices, &mut out)?;
    }
    Ok(out)
}

const GRADED_COLUMNS: &[(&str, &str)] = &[
    ("instance", "instance"),
    ("r", "r"),
    ("alternating_sum", "alternating_sum"),
    ("expected_alternating_sum", "expected_alternating_sum"),
    ("per_degree_ok", "per_degree_ok"),
    ("rth_power_ok", "rth_power_ok"),
    ("holds", "holds"),
];

fn graded_records(instance: usize, p: &GradedRep<BigRational>, rs: &[usize], out: &mut RunResult) -> Result<()> {
    for &r in rs {
        let q = graded_tensor_induce(p, r)?;
        let report = graded_trace(p, &q);
        let power_ok = check_rth_power(p, &q);
        out.check(report.per_degree_ok());
        out.check(report.alternating_ok());
        out.check(power_ok);
        let mut v = serde_json::to_value(&report).map_err(|e| Error::Parse(e.to_string()))?;
        v["instance"] = json!(instance);
        v["source_dims"] = json!(p.pieces().iter().map(|(i, m)| (i.to_string(), json!(m.rows()))).collect::<Map<_, _>>());
        v["per_degree_ok"] = json!(report.per_degree_ok());
        v["rth_power_ok"] = json!(power_ok);
        v["holds"] = json!(report.holds() && power_ok);
        out.push(v)?;
    }
    Ok(())
}

fn run_trace_identity(a: &TraceIdentityArgs, rng: &mut ChaCha8Rng) -> Result<RunResult> {
    let mut out = RunResult::new(GRADED_COLUMNS);
    if a.r.is_empty() || a.r.contains(&0) {
        return Err(Error::InvalidArgument("--r needs positive integers".into()));
    }
    if let Some(path) = &a.input {
        let p: GradedRep<BigRational> = read_json(path)?;
        p.validate(&GradedLimits::default())?;
        graded_records(0, &p, &a.r, &mut out)?;
        return Ok(out);
    }
    let limits = GradedLimits::default();
    if a.min_degree > a.max_degree || a.min_degree < limits.min_degree || a.max_degree > limits.max_degree {
        return Err(Error::InvalidArgument("degree range must lie in [-8, 8]".into()));
    }
    if a.max_dim == 0 || a.max_dim > limits.max_piece_dim {
        return Err(Error::InvalidArgument("--max-dim must be in 1..=4".into()));
    }
    for i in 0..a.random.expect("clap enforces --random or --input") {
        let p = random_graded_rep(a.min_degree..=a.max_degree, a.max_dim, rng);
        let p = GradedRep::new(p.pieces().iter().map(|(&d, m)| (d, m.map(|x| BigRational::from_i64(*x)))).collect())?;
        graded_records(i, &p, &a.r, &mut out)?;
    }
    Ok(out)
}

const SUM_COLUMNS: &[(&str, &str)] = &[
    ("mode", "mode"),
    ("p", "p"),
    ("n", "n"),
    ("r", "r"),
    ("f", "f"),
    ("d", "d"),
    ("a", "a"),
    ("fiber_size", "fiber_size"),
    ("sum", "exact"),
    ("abs", "abs"),
    ("generic", "generic"),
    ("bound", "bound"),
    ("status", "status"),
];

fn run_sum(a: &SumArgs, budget: u64) -> Result<RunResult> {
    let tower = tower(&a.field, budget)?;
    let f = Polynomial::parse(tower.top(), &a.f)?;
    let mode = SumMode::from(a.mode);
    let t = kernel_trace_function(&f, mode.domain())?;
    let ctx = SumContext::new(&t, &tower)?;
    let reports = if a.a == "all" {
        ctx.report_all(mode)?
    } else {
        vec![ctx.report(mode, &tower.base().parse_element(&a.a)?)?]
    };
    let mut out = RunResult::new(SUM_COLUMNS);
    for rep in reports {
        out.status(rep.status);
        out.push(&rep)?;
    }
    Ok(out)
}

const DFT_COLUMNS: &[(&str, &str)] = &[
    ("mode", "mode"),
    ("p", "p"),
    ("n", "n"),
    ("r", "r"),
    ("f", "f"),
    ("characters", "characters"),
    ("max_error", "max_error"),
    ("roundtrip_error", "roundtrip_error"),
    ("holds", "holds"),
];

fn run_dft(a: &DftArgs, budget: u64) -> Result<RunResult> {
    let tower = tower(&a.field, budget)?;
    let f = Polynomial::parse(tower.top(), &a.f)?;
    let modes = match a.mode {
        Some(m) => vec![SumMode::from(m)],
        None => vec![SumMode::Trace, SumMode::Norm],
    };
    let maps = FiberMaps::new(&tower);
    let mut out = RunResult::new(DFT_COLUMNS);
    for mode in modes {
        let t = kernel_trace_function(&f, mode.domain())?;
        let report = fubini_check(&t, &tower, mode)?;
        let beta = fiber_sums(&t, &tower, mode, &maps)?;
        let back = inverse_dft(&dft(&beta));
        let roundtrip = beta.domain_indices().map(|i| (back.complex_at(i) - beta.complex_at(i)).norm()).fold(0.0, f64::max);
        out.check(report.holds);
        out.check(roundtrip <= TOLERANCE);
        let mut v = serde_json::to_value(&report).map_err(|e| Error::Parse(e.to_string()))?;
        v["f"] = json!(f.to_cli_string());
        v["roundtrip_error"] = json!(roundtrip);
        v["holds"] = json!(report.holds && roundtrip <= TOLERANCE);
        out.push(v)?;
    }
    Ok(out)
}

const CURVE_COLUMNS: &[(&str, &str)] = &[
    ("kind", "kind"),
    ("p", "p"),
    ("n", "n"),
    ("r", "r"),
    ("f", "f"),
    ("d", "d"),
    ("N", "N"),
    ("main_term", "main_term"),
    ("deviation", "deviation"),
    ("bound", "bound"),
    ("generic", "generic"),
    ("identity_ok", "identity_ok"),
    ("bound_ok", "bound_status"),
];

fn run_curve(a: &CurveArgs, budget: u64) -> Result<RunResult> {
    let tower = tower(&a.field, budget)?;
    let f = Polynomial::parse(tower.top(), &a.f)?;
    let rep = CountContext::new(&tower).count(a.kind.into(), &f)?;
    let mut out = RunResult::new(CURVE_COLUMNS);
    out.check(rep.counts_agree());
    out.check(rep.identity_ok);
    out.status(rep.bound_status);
    out.push(&rep)?;
    Ok(out)
}

const TABLE_COLUMNS: &[(&str, &str)] =
    &[("table", "table"), ("d", "d"), ("r", "r"), ("c_value", "c_value"), ("power_value", "power_value")];

fn run_tables(a: &TablesArgs) -> Result<RunResult> {
    let mut out = RunResult::new(TABLE_COLUMNS);
    for row in comparison_tables(a.d, &a.rs)? {
        out.push(&row)?;
    }
    Ok(out)
}

const SWEEP_SUMMARY_COLUMNS: &[(&str, &str)] = &[
    ("kind", "kind"),
    ("p", "p"),
    ("n", "n"),
    ("r", "r"),
    ("d", "d"),
    ("total", "total"),
    ("count_mismatches", "count_mismatches"),
    ("identity_failures", "identity_failures"),
    ("bound_holds", "bound_holds"),
    ("bound_violations", "bound_violations"),
    ("not_asserted", "not_asserted"),
];

fn run_sweep(a: &SweepArgs, budget: u64, seed: u64) -> Result<RunResult> {
    let tower = tower(&a.field, budget)?;
    let selection = match a.sample {
        Some(count) => SweepSelection::Sample { count, seed },
        None => SweepSelection::All,
    };
    let report = sweep(a.kind.into(), &tower, a.d, selection)?;
    let mut out = RunResult::new(if a.summary_only { SWEEP_SUMMARY_COLUMNS } else { CURVE_COLUMNS });
    for rep in &report.reports {
        out.check(rep.counts_agree());
        out.check(rep.identity_ok);
        out.status(rep.bound_status);
    }
    if a.summary_only {
        let mut v = serde_json::to_value(&report).map_err(|e| Error::Parse(e.to_string()))?;
        v.as_object_mut().unwrap().remove("reports");
        out.push(v)?;
    } else {
        for rep in &report.reports {
            out.push(rep)?;
        }
    }
    Ok(out)
}

fn csv_cell(v: Option<&Value>) -> String {
    match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    }
}

/// Writes the records in the chosen format.
pub fn emit<W: Write>(result: &RunResult, format: Format, mut w: W) -> Result<()> {
    let io = |e: std::io::Error| Error::Parse(format!("write failed: {e}"));
    match format {
        Format::Jsonl => {
            for r in &result.records {
                writeln!(w, "{r}").map_err(io)?;
            }
        }
        Format::Json => {
            let text = serde_json::to_string_pretty(&result.records).map_err(|e| Error::Parse(e.to_string()))?;
            writeln!(w, "{text}").map_err(io)?;
        }
        Format::Csv => {
            let mut cw = csv::Writer::from_writer(w);
            let csv_err = |e: csv::Error| Error::Parse(format!("write failed: {e}"));
            cw.write_record(result.columns.iter().map(|(h, _)| *h)).map_err(csv_err)?;
            for r in &result.records {
                cw.write_record(result.columns.iter().map(|(_, k)| csv_cell(r.get(*k)))).map_err(csv_err)?;
            }
            cw.flush().map_err(io)?;
        }
    }
    Ok(())
}

/// Runs `cli`, writes the records and the summary line, and
/// returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let start = Instant::now();
    let result = match dispatch(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::File::create(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
            .and_then(|f| emit(&result, cli.format, std::io::BufWriter::new(f))),
        None => emit(&result, cli.format, std::io::stdout().lock()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 2;
    }
    eprintln!(
        "records={} passed={} failed={} not_asserted={} wall_time={:.3}s",
        result.records.len(),
        result.passed,
        result.failed,
        result.not_asserted,
        start.elapsed().as_secs_f64()
    );
    if result.exit_ok() {
        0
    } else {
        1
    }
}
