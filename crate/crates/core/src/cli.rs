//! Command-line front end. `main` forwards to [`run`].

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::json;

use crate::budget::Budget;
use crate::census::{run_census, write_csv_header, write_csv_record, CensusSummary, CubicFieldRecord};
use crate::constants::{
    dh_count_estimate, leading_coefficient, secondary_coefficient, zeta_ratio, BoundedReal, ConstantEvaluator,
    DEFAULT_CUTOFF,
};
use crate::forms::EnumerationConfig;
use crate::heilbronn::{
    compute_bf_with_budget, criterion_applies, estimate_b_with, weight, ConductorFamily, PrimeProduct,
};
use crate::padic::{discriminant_condition_series, maximal_lift_count_mod9, normalized_factor, triple_root_forms_mod3};
use crate::{Error, Result, Sign};

#[derive(Debug, Parser)]
#[command(name = "cubic-genus", version, about = "Cubic field census and genus statistics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate cubic fields with |Δ| ≤ X and classify their genus numbers.
    Census(CensusArgs),
    /// Compare census statistics with the theoretical constants.
    Verify(VerifyArgs),
    /// Evaluate the limiting constants with certified error bounds.
    Constants(ConstantsArgs),
    /// Exact Heilbronn weight b_F for one F.
    Bf(BfArgs),
    /// Partial sum and certified enclosure of the constant B.
    Bfsum(BfsumArgs),
    /// 3-adic counts behind the density of triple-root maximal forms.
    Padic(PadicArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Pos,
    Neg,
    Both,
}

impl SignArg {
    fn signs(self) -> Vec<Sign> {
        match self {
            SignArg::Pos => vec![Sign::Positive],
            SignArg::Neg => vec![Sign::Negative],
            SignArg::Both => vec![Sign::Negative, Sign::Positive],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct EnumerationArgs {
    /// Largest |Δ| to enumerate.
    #[arg(long)]
    pub max_disc: u64,
    #[arg(long, value_enum, default_value = "both")]
    pub sign: SignArg,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Bytes allowed for a single sieve or factor table.
    #[arg(long, env = crate::budget::MEMORY_ENV)]
    pub memory_budget: Option<u64>,
}

impl EnumerationArgs {
    fn config(&self) -> Result<EnumerationConfig> {
        if self.max_disc == 0 {
            return Err(Error::Usage("--max-disc must be at least 1".into()));
        }
        let mut config = EnumerationConfig::default();
        if let Some(w) = self.workers {
            if w == 0 {
                return Err(Error::Usage("--workers must be at least 1".into()));
            }
            config.workers = w;
        }
        if let Some(m) = self.memory_budget {
            config.budget.memory_bytes = m;
        }
        Ok(config)
    }
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[command(flatten)]
    pub enumeration: EnumerationArgs,
    /// Record file; standard output when absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Summary file; standard error when absent.
    #[arg(long)]
    pub summary: Option<PathBuf>,
    /// `csv` or `json` (one JSON object per line).
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Also count totally real genus-one fields where Heilbronn's criterion applies.
    #[arg(long)]
    pub heilbronn: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub enumeration: EnumerationArgs,
    /// Prime cutoff for the Euler products.
    #[arg(long, default_value_t = DEFAULT_CUTOFF)]
    pub cutoff: u64,
    /// Include the Heilbronn criterion statistics for totally real fields.
    #[arg(long)]
    pub heilbronn: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Genus1,
    Average,
    Distribution,
    P1,
    ZetaRatio,
    Secondary,
    Leading,
    All,
}

#[derive(Debug, Args)]
pub struct ConstantsArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub which: Which,
    #[arg(long, default_value_t = DEFAULT_CUTOFF)]
    pub cutoff: u64,
    /// Significant digits to certify.
    #[arg(long, default_value_t = 7)]
    pub digits: usize,
    /// Largest genus exponent listed by `--which distribution`.
    #[arg(long, default_value_t = 4)]
    pub max_k: u32,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BfArgs {
    #[arg(long = "F")]
    pub f: u64,
    /// List the eligible primes, their weights and the Heilbronn pairs.
    #[arg(long)]
    pub list_pairs: bool,
    /// Print b_F as a reduced fraction.
    #[arg(long)]
    pub exact: bool,
    /// Memoized states allowed in the subset search.
    #[arg(long, env = crate::budget::NODE_ENV)]
    pub node_budget: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProductArg {
    /// ∏ over p | F.
    BigF,
    /// ∏ over p | f, leaving out 3.
    SmallF,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    GenusOne,
    All,
}

#[derive(Debug, Args)]
pub struct BfsumArgs {
    #[arg(long = "max-F", default_value_t = 300)]
    pub max_f: u64,
    #[arg(long, value_enum, default_value = "big-f")]
    pub product: ProductArg,
    #[arg(long, value_enum, default_value = "genus-one")]
    pub family: FamilyArg,
    #[arg(long, default_value_t = 1_000_000)]
    pub cutoff: u64,
    #[arg(long, env = crate::budget::NODE_ENV)]
    pub node_budget: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct PadicArgs {
    #[arg(long, default_value_t = 4)]
    pub max_exponent: u32,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

/// Parse `args`, run, report errors on standard error and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match execute(&cli, &mut out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Census(a) => cmd_census(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Constants(a) => cmd_constants(a, out),
        Command::Bf(a) => cmd_bf(a, out),
        Command::Bfsum(a) => cmd_bfsum(a, out),
        Command::Padic(a) => cmd_padic(a, out),
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn heilbronn_applies(record: &CubicFieldRecord) -> Result<bool> {
    if record.delta > 0 && record.genus_exponent == 0 {
        criterion_applies(record)
    } else {
        Ok(false)
    }
}

pub fn cmd_census(args: &CensusArgs, out: &mut dyn Write) -> Result<()> {
    let config = args.enumeration.config()?;
    if args.format == Format::Text {
        return Err(Error::Usage("census writes csv or json records".into()));
    }
    let mut file;
    let sink: &mut dyn Write = match &args.output {
        Some(path) => {
            file = BufWriter::new(File::create(path)?);
            &mut file
        }
        None => out,
    };
    if args.format == Format::Csv {
        write_csv_header(sink)?;
    }
    let mut summaries = Vec::new();
    for sign in args.enumeration.sign.signs() {
        let mut applicable = 0u64;
        let mut summary = run_census(args.enumeration.max_disc, sign, &config, |r| {
            if args.heilbronn && heilbronn_applies(r)? {
                applicable += 1;
            }
            match args.format {
                Format::Csv => write_csv_record(sink, r),
                _ => {
                    serde_json::to_writer(&mut *sink, r).map_err(io::Error::from)?;
                    writeln!(sink)?;
                    Ok(())
                }
            }
        })?;
        if args.heilbronn && sign == Sign::Positive {
            summary.heilbronn_applicable_count = Some(applicable);
        }
        summaries.push(summary);
    }
    sink.flush()?;
    let report = json!({ "summaries": summaries });
    match &args.summary {
        Some(path) => write_json(&mut BufWriter::new(File::create(path)?), &report),
        None => write_json(&mut io::stderr().lock(), &report),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub quantity: String,
    pub empirical: f64,
    pub theoretical: BoundedReal,
    /// `empirical − theoretical value`.
    pub deviation: f64,
}

impl Comparison {
    fn new(quantity: impl Into<String>, empirical: f64, theoretical: BoundedReal) -> Self {
        let deviation = empirical - theoretical.value;
        Comparison { quantity: quantity.into(), empirical, theoretical, deviation }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub summary: CensusSummary,
    pub rows: Vec<Comparison>,
}

/// Census plus the theoretical value beside every statistic.
pub fn verify_report(
    x: u64,
    sign: Sign,
    config: &EnumerationConfig,
    ev: &ConstantEvaluator,
    heilbronn: bool,
) -> Result<VerifyReport> {
    let mut applicable = 0u64;
    let mut summary = run_census(x, sign, config, |r| {
        if heilbronn && heilbronn_applies(r)? {
            applicable += 1;
        }
        Ok(())
    })?;
    let mut rows = vec![
        Comparison::new("field_count", summary.total_count as f64, dh_count_estimate(x as f64, sign)),
        Comparison::new("genus_one_proportion", summary.genus_one_proportion, ev.genus_one_density()),
        Comparison::new("average_genus", summary.average_genus, ev.average_genus()),
    ];
    let top = summary.counts_by_genus_exponent.keys().max().copied().unwrap_or(0).max(2);
    for k in 0..=top {
        rows.push(Comparison::new(format!("genus_exponent_{k}"), summary.proportion(k), ev.genus_distribution(k)));
    }
    if heilbronn && sign == Sign::Positive {
        summary.heilbronn_applicable_count = Some(applicable);
        let b = estimate_b_with(300, PrimeProduct::DividesF, ConductorFamily::GenusOne, &config.budget, 1_000_000)?;
        let b = BoundedReal::from_interval(b.lower, b.upper);
        rows.push(Comparison::new("heilbronn_per_disc", applicable as f64 / x as f64, b));
        let genus_one = summary.counts_by_genus_exponent.get(&0).copied().unwrap_or(0).max(1);
        let share = b.div(&leading_coefficient(sign).mul(&ev.genus_one_density()));
        rows.push(Comparison::new("heilbronn_among_genus_one", applicable as f64 / genus_one as f64, share));
    }
    Ok(VerifyReport { summary, rows })
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<()> {
    let config = args.enumeration.config()?;
    let ev = ConstantEvaluator::new(args.cutoff)?;
    let mut reports = Vec::new();
    for sign in args.enumeration.sign.signs() {
        reports.push(verify_report(args.enumeration.max_disc, sign, &config, &ev, args.heilbronn)?);
    }
    if args.format == Format::Json {
        return write_json(out, &json!({ "reports": reports }));
    }
    for r in &reports {
        writeln!(out, "sign {}  X = {}  fields = {}", r.summary.sign, r.summary.x, r.summary.total_count)?;
        writeln!(out, "{:<28} {:>16} {:>16} {:>12} {:>12}", "quantity", "empirical", "theoretical", "± bound", "deviation")?;
        for c in &r.rows {
            writeln!(
                out,
                "{:<28} {:>16.8} {:>16.8} {:>12.2e} {:>+12.2e}",
                c.quantity, c.empirical, c.theoretical.value, c.theoretical.abs_error, c.deviation
            )?;
        }
        writeln!(out)?;
    }
    Ok(())
}


pub fn cmd_constants(args: &ConstantsArgs, out: &mut dyn Write) -> Result<()> {
    let ev = ConstantEvaluator::new(args.cutoff)?;
    let w = args.which;
    let want = |x: Which| w == x || w == Which::All;
    let mut rows = Vec::new();
    if want(Which::Genus1) {
        rows.push(("genus_one_density".to_string(), ev.genus_one_density()));
    }
    if want(Which::Average) {
        rows.push(("average_genus".to_string(), ev.average_genus()));
    }
    if want(Which::Distribution) {
        for k in 0..=args.max_k {
            rows.push((format!("genus_exponent_{k}"), ev.genus_distribution(k)));
        }
    }
    if want(Which::P1) {
        rows.push(("p1".to_string(), ev.p1()));
    }
    if want(Which::ZetaRatio) {
        rows.push(("zeta3_over_zeta2".to_string(), zeta_ratio()));
        rows.push(("euler_product_zeta_ratio".to_string(), ev.zeta_ratio_product()));
    }
    if want(Which::Secondary) {
        rows.push(("secondary_coefficient".to_string(), secondary_coefficient()));
    }
    if want(Which::Leading) {
        rows.push(("leading_pos".to_string(), leading_coefficient(Sign::Positive)));
        rows.push(("leading_neg".to_string(), leading_coefficient(Sign::Negative)));
    }
    if args.format == Format::Json {
        let rows: Vec<_> = rows
            .iter()
            .map(|(name, v)| {
                json!({ "name": name, "value": v.value, "abs_error": v.abs_error, "certified": v.certified_significant(args.digits) })
            })
            .collect();
        return write_json(out, &json!({ "cutoff": args.cutoff, "constants": rows }));
    }
    for (name, v) in &rows {
        let certified = v.certified_significant(args.digits).unwrap_or_else(|| "(not certified)".into());
        writeln!(out, "{name:<26} {certified}  value {:.12} ± {:.1e}", v.value, v.abs_error)?;
    }
    Ok(())
}

pub fn cmd_bf(args: &BfArgs, out: &mut dyn Write) -> Result<()> {
    let mut budget = Budget::from_env();
    if let Some(n) = args.node_budget {
        budget.bf_nodes = n;
    }
    let r = compute_bf_with_budget(args.f, &budget)?;
    let decimal = r.b_f.to_f64().unwrap_or(f64::NAN);
    if args.format == Format::Json {
        return write_json(out, &json!({
            "F": r.f,
            "b_F": r.b_f.to_string(),
            "b_F_decimal": decimal,
            "admissible_count": r.admissible_count.as_ref().map(|c| c.to_string()),
            "eligible_primes": r.pairs.eligible_primes,
            "pairs": r.pairs.pairs,
            "nodes": r.nodes,
        }));
    }
    if args.list_pairs {
        for &p in &r.pairs.eligible_primes {
            writeln!(out, "prime {p}  w_in {}  w_out {}", weight(p, true), weight(p, false))?;
        }
        for (p, q) in &r.pairs.pairs {
            writeln!(out, "pair {{{p},{q}}}")?;
        }
        if let Some(c) = &r.admissible_count {
            writeln!(out, "admissible sets {c}")?;
        }
    }
    if args.exact {
        writeln!(out, "{}", r.b_f)?;
    } else {
        writeln!(out, "{decimal:.10}")?;
    }
    Ok(())
}

pub fn cmd_bfsum(args: &BfsumArgs, out: &mut dyn Write) -> Result<()> {
    let mut budget = Budget::from_env();
    if let Some(n) = args.node_budget {
        budget.bf_nodes = n;
    }
    let product = match args.product {
        ProductArg::BigF => PrimeProduct::DividesF,
        ProductArg::SmallF => PrimeProduct::DividesSmallF,
    };
    let family = match args.family {
        FamilyArg::GenusOne => ConductorFamily::GenusOne,
        FamilyArg::All => ConductorFamily::AllSquarefree,
    };
    let e = estimate_b_with(args.max_f, product, family, &budget, args.cutoff)?;
    if args.format == Format::Json {
        return write_json(out, &e);
    }
    writeln!(out, "terms {}  partial {:.6e}  tail ≤ {:.6e}", e.terms, e.partial.value, e.tail.hi())?;
    writeln!(out, "B in [{:.6e}, {:.6e}]", e.lower, e.upper)?;
    Ok(())
}

pub fn cmd_padic(args: &PadicArgs, out: &mut dyn Write) -> Result<()> {
    let series = discriminant_condition_series(args.max_exponent)?;
    let mu3 = series[0].density.clone();
    let factor = normalized_factor(&mu3);
    let base = triple_root_forms_mod3().len();
    let lifts = maximal_lift_count_mod9();
    if args.format == Format::Json {
        return write_json(out, &json!({
            "triple_root_forms_mod3": base,
            "maximal_lifts_mod9": lifts,
            "series": series,
            "mu3": mu3.to_string(),
            "normalized_factor": factor.to_string(),
        }));
    }
    writeln!(out, "triple-root forms mod 3: {base}")?;
    writeln!(out, "maximal lifts mod 9: {lifts}")?;
    for c in &series {
        writeln!(out, "k = {}  considered {}  passing {}  density {}", c.modulus_exponent, c.total_considered, c.passing, c.density)?;
    }
    writeln!(out, "mu3 = {mu3}")?;
    writeln!(out, "normalized factor = {factor}")?;
    Ok(())
}
