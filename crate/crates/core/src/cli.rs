//! The `quasiq` command line: argument parsing, dispatch and report emission.
//!
//! Every report serializes to canonical JSON (sorted keys, compact) carrying
//! `"schema": "quasiq/1"`, or to plain-text tables in which roots of unity
//! are written `z^k` under a legend line defining `z`.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::bosonize::{coinvariants_roundtrip, verify_majid_axioms, MajidAlgebra, RoundtripReport};
use crate::classify::{
    enumerate_admissible, present_majid, tag_family, z2cubed_report, CensusOptions, CensusReport,
    ClassificationReport, EnumerateOptions, Frame, Presentation, SeriesEntry, SCHEMA,
};
use crate::group::{
    verify_cocycle, AbelianGroup, Cocycle, CocycleJson, GroupElem, PairParam, TripleParam, VerifyMode, VerifyOptions,
};
use crate::nichols::verify::{SuiteOptions, SuiteReport};
use crate::nichols::BraidedSpace;
use crate::qchar::{solve_quasicharacters, QcharError, SeriesJson};

/// Exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit status when a checked property fails.
pub const EXIT_FAILED: i32 = 1;
/// Exit status for bad arguments or configuration.
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "quasiq", version, about = "Finite quasi-quantum linear spaces over abelian groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the 3-cocycle identity and every induced 2-cocycle.
    VerifyCocycle(VerifyArgs),
    /// List the quasi-characters of one degree or of every degree.
    SolveChars(SolveArgs),
    /// Enumerate admissible series of a given length.
    Enumerate(EnumerateArgs),
    /// Print generators and relations of the bosonization of one series.
    Present(SeriesArgs),
    /// Run the braided Hopf, quasi-Hopf and coinvariant checks for one series.
    CheckAxioms(AxiomArgs),
    /// The census over Z2 x Z2 x Z2.
    Z2cubedReport(CensusArgs),
}

#[derive(Args, Debug, Clone, Default)]
pub struct CocycleArgs {
    /// Cyclic factor orders, e.g. `2,2,2`.
    #[arg(long, value_delimiter = ',')]
    pub group: Option<Vec<u32>>,
    /// Single-index parameters, one per factor.
    #[arg(long, value_delimiter = ',')]
    pub a: Option<Vec<u32>>,
    /// Pair parameters `s:t=v` (1-based, s < t).
    #[arg(long, value_delimiter = ',')]
    pub a2: Vec<String>,
    /// Triple parameters `r:s:t=v` (1-based, r < s < t).
    #[arg(long, value_delimiter = ',')]
    pub a3: Vec<String>,
    /// JSON file with `moduli`, `a`, `a2`, `a3` and optional run settings.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct OutputArgs {
    /// Emit canonical JSON instead of text.
    #[arg(long)]
    pub json: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub cocycle: CocycleArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Sample tuples instead of checking all of them.
    #[arg(long)]
    pub sampled: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 200_000)]
    pub samples: u64,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    pub cocycle: CocycleArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Exponent vector of the degree, e.g. `1,0,0`; all degrees if omitted.
    #[arg(long, value_delimiter = ',')]
    pub degree: Option<Vec<i64>>,
}

#[derive(Args, Debug, Clone)]
pub struct SelectionArgs {
    /// Number of characters; defaults to the rank of the group.
    #[arg(long)]
    pub rank: Option<usize>,
    #[arg(long)]
    pub frame: Option<Frame>,
    /// One series per orbit under permutation of indices.
    #[arg(long)]
    pub up_to_perm: bool,
    /// Flag entries whose algebra dimension exceeds this.
    #[arg(long)]
    pub dim_limit: Option<u128>,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub cocycle: CocycleArgs,
    #[command(flatten)]
    pub select: SelectionArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub cocycle: CocycleArgs,
    #[command(flatten)]
    pub select: SelectionArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Index of the series in the enumeration order.
    #[arg(long)]
    pub series: Option<usize>,
}

#[derive(Args, Debug)]
pub struct AxiomArgs {
    #[command(flatten)]
    pub target: SeriesArgs,
    /// Check every tuple regardless of size.
    #[arg(long, conflicts_with = "sampled")]
    pub exhaustive: bool,
    /// Sample tuples regardless of size (needs `--seed`).
    #[arg(long)]
    pub sampled: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
}

#[derive(Args, Debug)]
pub struct CensusArgs {
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, default_value_t = 7)]
    pub max_rank: usize,
    /// Include every series in the report.
    #[arg(long)]
    pub entries: bool,
}

/// Settings read from `--config`; command-line flags take precedence.
#[derive(Debug, Clone, Default, Deserialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub cocycle: Option<CocycleJson>,
    pub rank: Option<usize>,
    pub series: Option<usize>,
    pub seed: Option<u64>,
    pub frame: Option<Frame>,
    #[serde(default)]
    pub up_to_perm: bool,
    pub dim_limit: Option<u128>,
}

/// A failure that ends the run with a specific exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

type Outcome<T> = Result<T, Failure>;

// ---- reports ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleCheckSummary {
    pub holds: bool,
    pub exhaustive: bool,
    pub tuples: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vec<u32>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedSummary {
    pub degree: Vec<u32>,
    pub symmetric: bool,
    pub check: CocycleCheckSummary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleReport {
    pub schema: String,
    pub cocycle: CocycleJson,
    pub three_cocycle: CocycleCheckSummary,
    pub induced: Vec<InducedSummary>,
}

impl CocycleReport {
    pub fn holds(&self) -> bool {
        self.three_cocycle.holds && self.induced.iter().all(|i| i.check.holds)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterRow {
    /// `χ(e_l)` as exponents of `ζ_M`.
    pub values: Vec<u32>,
    /// `χ(g)` at the degree itself.
    pub self_value: u32,
    #[serde(rename = "N")]
    pub nilpotency: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCharacters {
    pub degree: Vec<u32>,
    pub obstructed: bool,
    pub characters: Vec<CharacterRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharactersReport {
    pub schema: String,
    pub cocycle: CocycleJson,
    pub ambient: u32,
    pub degrees: Vec<DegreeCharacters>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomsReport {
    pub schema: String,
    pub cocycle: CocycleJson,
    pub series: SeriesJson,
    pub exhaustive: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub dim_space: usize,
    pub dim_algebra: usize,
    pub braided: SuiteReport,
    pub majid: SuiteReport,
    pub roundtrip: RoundtripReport,
}

impl AxiomsReport {
    pub fn holds(&self) -> bool {
        self.braided.all_hold() && self.majid.all_hold() && self.roundtrip.holds()
    }
}

// ---- emission ----

/// Canonical JSON: object keys sorted, no insignificant whitespace.
pub fn to_canonical_json<T: Serialize>(report: &T) -> String {
    let value = serde_json::to_value(report).expect("reports serialize");
    serde_json::to_string(&value).expect("values serialize")
}

/// Parses a report emitted by [`to_canonical_json`].
pub fn from_json<T: DeserializeOwned>(text: &str) -> serde_json::Result<T> {
    serde_json::from_str(text)
}

fn zpow(exp: u32) -> String {
    match exp {
        0 => "1".into(),
        1 => "z".into(),
        e => format!("z^{e}"),
    }
}

fn legend(m: u32) -> String {
    format!("z = exp(2πi/{m})")
}

/// Left-aligned columns separated by two spaces.
pub fn render_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> =
            cells.iter().zip(&widths).map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = line(headers.to_vec());
    out.push('\n');
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
        out.push('\n');
    }
    out
}

fn describe_cocycle(c: &CocycleJson) -> String {
    let group: Vec<String> = c.moduli.iter().map(|m| format!("Z{m}")).collect();
    let mut s = format!("group {}, a = ({})", group.join(" x "), join(&c.a));
    if !c.a2.is_empty() {
        let pairs: Vec<String> = c.a2.iter().map(|p| format!("{}:{}={}", p.s, p.t, p.v)).collect();
        let _ = write!(s, ", a2 = {}", pairs.join(","));
    }
    if !c.a3.is_empty() {
        let triples: Vec<String> = c.a3.iter().map(|p| format!("{}:{}:{}={}", p.r, p.s, p.t, p.v)).collect();
        let _ = write!(s, ", a3 = {}", triples.join(","));
    }
    s
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn fmt_exps(group: &AbelianGroup, exps: &[u32]) -> String {
    let v: Vec<i64> = exps.iter().map(|&x| x as i64).collect();
    group.elem(&v).map(|g| group.fmt_elem(g)).unwrap_or_else(|_| join(exps))
}

fn fmt_values(values: &[u32]) -> String {
    values.iter().map(|&e| zpow(e)).collect::<Vec<_>>().join(",")
}

fn fmt_witness(group: &AbelianGroup, w: &[GroupElem]) -> String {
    let parts: Vec<String> = w.iter().map(|&g| group.fmt_elem(g)).collect();
    format!("({})", parts.join(", "))
}

pub fn render_cocycle_report(r: &CocycleReport) -> String {
    let mut s = String::new();
    let group = AbelianGroup::new(&r.cocycle.moduli).expect("validated moduli");
    let witness = |w: &Option<Vec<Vec<u32>>>| {
        w.as_ref()
            .map(|w| {
                let els: Vec<GroupElem> =
                    w.iter().map(|e| group.elem(&e.iter().map(|&x| x as i64).collect::<Vec<_>>()).unwrap()).collect();
                format!(" at {}", fmt_witness(&group, &els))
            })
            .unwrap_or_default()
    };
    let t = &r.three_cocycle;
    let mode = if t.exhaustive { "" } else { " sampled" };
    if t.holds {
        let _ = writeln!(s, "OK: 3-cocycle condition holds ({}{mode} tuples)", t.tuples);
    } else {
        let _ = writeln!(s, "FAILED: 3-cocycle condition{}", witness(&t.witness));
    }
    let bad: Vec<&InducedSummary> = r.induced.iter().filter(|i| !i.check.holds).collect();
    if bad.is_empty() {
        let symmetric = r.induced.iter().filter(|i| i.symmetric).count();
        let _ = writeln!(
            s,
            "OK: induced 2-cocycle condition holds at all {} degrees ({symmetric} symmetric)",
            r.induced.len()
        );
    }
    for i in bad {
        let _ = writeln!(s, "FAILED: induced 2-cocycle at {}{}", fmt_exps(&group, &i.degree), witness(&i.check.witness));
    }
    s
}

pub fn render_characters(r: &CharactersReport) -> String {
    let group = AbelianGroup::new(&r.cocycle.moduli).expect("validated moduli");
    let mut s = format!("{}\n{}\n", describe_cocycle(&r.cocycle), legend(r.ambient));
    let mut rows = Vec::new();
    for d in &r.degrees {
        let deg = fmt_exps(&group, &d.degree);
        if d.obstructed {
            rows.push(vec![deg, "-".into(), "obstructed".into(), "-".into(), "-".into()]);
            continue;
        }
        for (k, c) in d.characters.iter().enumerate() {
            rows.push(vec![deg.clone(), k.to_string(), fmt_values(&c.values), zpow(c.self_value), c.nilpotency.to_string()]);
        }
    }
    s.push_str(&render_table(&["degree", "#", "χ(e_l)", "χ(g)", "N"], &rows));
    s
}

fn series_rows(group: &AbelianGroup, entries: &[SeriesEntry]) -> Vec<Vec<String>> {
    entries
        .iter()
        .enumerate()
        .map(|(id, e)| {
            let degs: Vec<String> = e.alpha.iter().map(|a| fmt_exps(group, a)).collect();
            let vals: Vec<String> = e.values.iter().map(|v| format!("[{}]", fmt_values(v))).collect();
            vec![
                id.to_string(),
                degs.join(" "),
                vals.join(" "),
                join(&e.nilpotency),
                e.dim.to_string(),
                e.family.map(|f| f.to_string()).unwrap_or_else(|| "-".into()),
            ]
        })
        .collect()
}

pub fn render_classification(r: &ClassificationReport) -> String {
    let group = AbelianGroup::new(&r.group).expect("validated moduli");
    let cocycle = Cocycle::new(group.clone(), r.cocycle.parse().expect("validated cocycle").1).expect("valid");
    let frame = match r.frame {
        Frame::Standard => "standard",
        Frame::All => "all",
    };
    let mut s = format!("{}\n", describe_cocycle(&r.cocycle));
    let _ = writeln!(
        s,
        "rank {}, frame {frame}{}: {} series",
        r.rank,
        if r.up_to_perm { ", up to permutation" } else { "" },
        r.count
    );
    if let Some(o) = &r.obstruction {
        let degs: Vec<String> = o.obstructed.iter().map(|d| fmt_exps(&group, d)).collect();
        let _ = writeln!(
            s,
            "obstructed degrees: {} (remaining degrees {} G)",
            if degs.is_empty() { "none".into() } else { degs.join(" ") },
            if o.unobstructed_generate { "generate" } else { "do not generate" }
        );
    }
    if !r.family_counts.is_empty() {
        let fams: Vec<String> = r.family_counts.iter().map(|(k, v)| format!("({k}): {v}")).collect();
        let _ = writeln!(s, "families: {}", fams.join(", "));
    }
    let _ = writeln!(s, "{}", legend(cocycle.ambient()));
    s.push_str(&render_table(&["id", "degrees", "χ_i(e_l)", "N", "dim", "family"], &series_rows(&group, &r.entries)));
    s
}

pub fn render_axioms(r: &AxiomsReport) -> String {
    let mut s = format!("{}\n", describe_cocycle(&r.cocycle));
    let _ = writeln!(
        s,
        "dim S(V) = {}, dim M = {}, {}",
        r.dim_space,
        r.dim_algebra,
        match r.seed {
            Some(seed) if !r.exhaustive => format!("sampled with seed {seed}"),
            _ => "exhaustive".into(),
        }
    );
    let _ = writeln!(s, "braided Hopf structure on S(V):");
    for c in &r.braided.checks {
        let _ = writeln!(s, "  {c}");
    }
    let _ = writeln!(s, "quasi-Hopf structure on M:");
    for c in &r.majid.checks {
        let _ = writeln!(s, "  {c}");
    }
    let rt = &r.roundtrip;
    let _ = writeln!(
        s,
        "coinvariants: dim {} (expected {}), {}",
        rt.dim_coinvariants,
        rt.expected_dim,
        if rt.holds() { "structure recovered".to_string() } else { format!("FAILED {}", rt.witness.clone().unwrap_or_default()) }
    );
    let _ = writeln!(s, "{}", if r.holds() { "OK: all axioms hold" } else { "FAILED: some axioms fail" });
    s
}

pub fn render_census(r: &CensusReport) -> String {
    let mut s = format!("census over Z2 x Z2 x Z2, standard frame, ranks up to {}\n", r.max_rank);
    let mut rows = Vec::new();
    for c in &r.cocycles {
        for k in &c.ranks {
            let fams: Vec<String> = k.family_counts.iter().map(|(f, n)| format!("({f}):{n}")).collect();
            rows.push(vec![
                format!("({})", join(&c.a)),
                k.rank.to_string(),
                k.count.to_string(),
                if c.tagged { fams.join(" ") } else { "-".into() },
            ]);
        }
    }
    s.push_str(&render_table(&["a", "rank", "series", "families"], &rows));
    if let Some(t) = r.cocycles.iter().find(|c| c.tagged) {
        let _ = writeln!(s, "family (1) occurs at ranks {}", join(&t.family_one_ranks));
    }
    if !r.pair_parameter_counts.is_empty() {
        let total: usize = r.pair_parameter_counts.iter().map(|p| p.count).sum();
        let _ = writeln!(
            s,
            "pair parameters: {} configurations checked at ranks 3 and 4, {total} series",
            r.pair_parameter_counts.len() / 2
        );
    }
    s
}

// ---- argument resolution ----

fn parse_pair(entry: &str) -> Outcome<PairParam> {
    let bad = || usage(format!("bad --a2 entry `{entry}` (expected s:t=v)"));
    let (idx, v) = entry.split_once('=').ok_or_else(bad)?;
    let idx: Vec<usize> = idx.split(':').map(str::parse).collect::<Result<_, _>>().map_err(|_| bad())?;
    let v: u32 = v.parse().map_err(|_| bad())?;
    match idx.as_slice() {
        [s, t] => Ok(PairParam { s: *s, t: *t, v }),
        _ => Err(bad()),
    }
}

fn parse_triple(entry: &str) -> Outcome<TripleParam> {
    let bad = || usage(format!("bad --a3 entry `{entry}` (expected r:s:t=v)"));
    let (idx, v) = entry.split_once('=').ok_or_else(bad)?;
    let idx: Vec<usize> = idx.split(':').map(str::parse).collect::<Result<_, _>>().map_err(|_| bad())?;
    let v: u32 = v.parse().map_err(|_| bad())?;
    match idx.as_slice() {
        [r, s, t] => Ok(TripleParam { r: *r, s: *s, t: *t, v }),
        _ => Err(bad()),
    }
}

fn load_config(args: &CocycleArgs) -> Outcome<RunConfig> {
    let Some(path) = &args.config else { return Ok(RunConfig::default()) };
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let mut value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    // The cocycle part is optional; only flatten it when moduli are present.
    let has_cocycle = value.get("moduli").is_some();
    if !has_cocycle {
        if let Some(obj) = value.as_object_mut() {
            obj.retain(|k, _| !["a", "a2", "a3"].contains(&k.as_str()));
        }
    }
    let mut cfg: RunConfig = serde_json::from_value(value).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    if !has_cocycle {
        cfg.cocycle = None;
    }
    Ok(cfg)
}

/// Resolves flags and config into a validated cocycle.
fn resolve_cocycle(args: &CocycleArgs, cfg: &RunConfig) -> Outcome<Cocycle> {
    let mut json = cfg.cocycle.clone().unwrap_or(CocycleJson { moduli: Vec::new(), a: Vec::new(), a2: Vec::new(), a3: Vec::new() });
    if let Some(g) = &args.group {
        json.moduli = g.clone();
    }
    if json.moduli.is_empty() {
        return Err(usage("no group given (use --group or --config)"));
    }
    if let Some(a) = &args.a {
        json.a = a.clone();
    }
    if !args.a2.is_empty() {
        json.a2 = args.a2.iter().map(|s| parse_pair(s)).collect::<Outcome<_>>()?;
    }
    if !args.a3.is_empty() {
        json.a3 = args.a3.iter().map(|s| parse_triple(s)).collect::<Outcome<_>>()?;
    }
    let (group, data) = json.parse().map_err(|e| usage(e.to_string()))?;
    Cocycle::new(group, data).map_err(|e| usage(e.to_string()))
}

fn emit<T: Serialize>(report: &T, text: impl FnOnce(&T) -> String, out: &OutputArgs, config: Option<&PathBuf>, stdout: &mut dyn Write) -> Outcome<()> {
    let body = if out.json { to_canonical_json(report) + "\n" } else { text(report) };
    match &out.out {
        Some(path) => {
            if config.is_some_and(|c| c == path) {
                return Err(usage("refusing to overwrite the config file"));
            }
            std::fs::write(path, body).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
        }
        None => stdout.write_all(body.as_bytes()).map_err(|e| usage(e.to_string())),
    }
}

fn enumerate_opts(select: &SelectionArgs, cfg: &RunConfig, cocycle: &Cocycle) -> EnumerateOptions {
    EnumerateOptions {
        up_to_perm: select.up_to_perm || cfg.up_to_perm,
        dim_limit: select.dim_limit.or(cfg.dim_limit),
        frame: select.frame.or(cfg.frame).unwrap_or_default(),
        obstruction_scan: !cocycle.is_reduced(),
    }
}

/// Family tags apply to `Z2³` with `a = (1,1,1)` in the standard frame.
fn taggable(cocycle: &Cocycle, opts: &EnumerateOptions) -> bool {
    cocycle.group().moduli() == [2, 2, 2] && cocycle.data().a == [1, 1, 1] && cocycle.is_reduced() && opts.frame == Frame::Standard
}

fn run_enumeration(cocycle: &Cocycle, select: &SelectionArgs, cfg: &RunConfig) -> Outcome<ClassificationReport> {
    let rank = select.rank.or(cfg.rank).unwrap_or(cocycle.group().rank());
    if rank == 0 {
        return Err(usage("--rank must be positive"));
    }
    let opts = enumerate_opts(select, cfg, cocycle);
    let mut report = enumerate_admissible(cocycle, rank, &opts).map_err(|e| usage(e.to_string()))?;
    if taggable(cocycle, &opts) {
        for e in &mut report.entries {
            let tag = tag_family(e).map_err(|err| Failure { code: EXIT_FAILED, message: err.to_string() })?;
            e.family = Some(tag);
            *report.family_counts.entry(tag.to_string()).or_insert(0) += 1;
        }
    }
    Ok(report)
}

fn pick_series(args: &SeriesArgs, cocycle: &Cocycle, cfg: &RunConfig) -> Outcome<SeriesEntry> {
    let id = args.series.or(cfg.series).ok_or_else(|| usage("no series given (use --series <id>)"))?;
    let report = run_enumeration(cocycle, &args.select, cfg)?;
    report.entry(id).cloned().map_err(|e| usage(format!("{e} ({} series at this rank)", report.count)))
}

// ---- commands ----

fn summarize(group: &AbelianGroup, c: &crate::group::CocycleCheck) -> CocycleCheckSummary {
    CocycleCheckSummary {
        holds: c.holds,
        exhaustive: c.exhaustive,
        tuples: c.tuples_checked,
        witness: c.witness.as_ref().map(|w| w.iter().map(|&g| group.exponents(g).to_vec()).collect()),
    }
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Outcome<i32> {
    let cfg = load_config(&a.cocycle)?;
    let cocycle = resolve_cocycle(&a.cocycle, &cfg)?;
    let seed = a.seed.or(cfg.seed);
    if a.sampled && seed.is_none() {
        return Err(usage("sampled verification needs --seed"));
    }
    let opts = VerifyOptions {
        mode: if a.sampled { VerifyMode::Sampled } else { VerifyMode::Auto },
        seed: seed.unwrap_or(0),
        samples: a.samples,
        ..VerifyOptions::default()
    };
    let group = cocycle.group();
    let three = verify_cocycle(group, &cocycle, &opts).map_err(|e| usage(e.to_string()))?;
    let mut induced = Vec::new();
    for g in group.elements() {
        let check = verify_cocycle(group, &cocycle.induced(g), &opts).map_err(|e| usage(e.to_string()))?;
        induced.push(InducedSummary {
            degree: group.exponents(g).to_vec(),
            symmetric: cocycle.phi_tilde_symmetric(g),
            check: summarize(group, &check),
        });
    }
    let report = CocycleReport {
        schema: SCHEMA.into(),
        cocycle: cocycle.data().to_json(group),
        three_cocycle: summarize(group, &three),
        induced,
    };
    emit(&report, render_cocycle_report, &a.output, a.cocycle.config.as_ref(), out)?;
    Ok(if report.holds() { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_solve(a: &SolveArgs, out: &mut dyn Write) -> Outcome<i32> {
    let cfg = load_config(&a.cocycle)?;
    let cocycle = resolve_cocycle(&a.cocycle, &cfg)?;
    let group = cocycle.group();
    let degrees: Vec<GroupElem> = match &a.degree {
        Some(d) => vec![group.elem(d).map_err(|e| usage(e.to_string()))?],
        None => group.elements().collect(),
    };
    let mut rows = Vec::new();
    let mut obstructed_request = false;
    for g in degrees {
        let entry = match solve_quasicharacters(&cocycle, g) {
            Ok(chars) => DegreeCharacters {
                degree: group.exponents(g).to_vec(),
                obstructed: false,
                characters: chars
                    .iter()
                    .map(|c| CharacterRow {
                        values: c.gen_exps().to_vec(),
                        self_value: c.value_exp(g),
                        nilpotency: c.char_value(g).root_order(),
                    })
                    .collect(),
            },
            Err(QcharError::NonSymmetricCocycle(_)) => {
                obstructed_request = a.degree.is_some();
                DegreeCharacters { degree: group.exponents(g).to_vec(), obstructed: true, characters: Vec::new() }
            }
            Err(e) => return Err(usage(e.to_string())),
        };
        rows.push(entry);
    }
    let report = CharactersReport {
        schema: SCHEMA.into(),
        cocycle: cocycle.data().to_json(group),
        ambient: cocycle.ambient(),
        degrees: rows,
    };
    emit(&report, render_characters, &a.output, a.cocycle.config.as_ref(), out)?;
    Ok(if obstructed_request { EXIT_FAILED } else { EXIT_OK })
}

fn cmd_enumerate(a: &EnumerateArgs, out: &mut dyn Write) -> Outcome<i32> {
    let cfg = load_config(&a.cocycle)?;
    let cocycle = resolve_cocycle(&a.cocycle, &cfg)?;
    let report = run_enumeration(&cocycle, &a.select, &cfg)?;
    emit(&report, render_classification, &a.output, a.cocycle.config.as_ref(), out)?;
    Ok(EXIT_OK)
}

fn cmd_present(a: &SeriesArgs, out: &mut dyn Write) -> Outcome<i32> {
    let cfg = load_config(&a.cocycle)?;
    let cocycle = resolve_cocycle(&a.cocycle, &cfg)?;
    let entry = pick_series(a, &cocycle, &cfg)?;
    let series = entry.series(&cocycle).map_err(|e| usage(e.to_string()))?;
    let p: Presentation = present_majid(&cocycle, &series).map_err(|e| usage(e.to_string()))?;
    let text = |p: &Presentation| format!("{}\n{p}", describe_cocycle(&p.cocycle));
    emit(&p, text, &a.output, a.cocycle.config.as_ref(), out)?;
    Ok(if p.closed_form_agrees == Some(false) { EXIT_FAILED } else { EXIT_OK })
}

/// Largest algebra built by `check-axioms` unless `--dim-limit` says otherwise.
const DEFAULT_AXIOM_DIM_LIMIT: u128 = 4096;

fn cmd_axioms(a: &AxiomArgs, out: &mut dyn Write) -> Outcome<i32> {
    let t = &a.target;
    let cfg = load_config(&t.cocycle)?;
    let cocycle = resolve_cocycle(&t.cocycle, &cfg)?;
    let entry = pick_series(t, &cocycle, &cfg)?;
    let limit = t.select.dim_limit.or(cfg.dim_limit).unwrap_or(DEFAULT_AXIOM_DIM_LIMIT);
    if entry.dim > limit {
        return Err(usage(format!("dimension {} exceeds the limit {limit} (raise --dim-limit)", entry.dim)));
    }
    let group_order = cocycle.group().order();
    let exhaustive = a.exhaustive || (!a.sampled && group_order <= 32 && entry.dim <= 128);
    let seed = a.seed.or(cfg.seed);
    if !exhaustive && seed.is_none() {
        return Err(usage("this algebra is verified by sampling; pass --seed (or --exhaustive)"));
    }
    let opts = SuiteOptions {
        exhaustive_dim: if exhaustive { usize::MAX } else { 0 },
        samples: a.samples,
        seed: seed.unwrap_or(0),
    };
    let series = entry.series(&cocycle).map_err(|e| usage(e.to_string()))?;
    let series_json = series.to_json(cocycle.group());
    let cocycle_json = cocycle.data().to_json(cocycle.group());
    let space = BraidedSpace::<i64>::new(cocycle, series).map_err(|e| usage(e.to_string()))?;
    let braided = space.check_all(&opts);
    let m = MajidAlgebra::new(space);
    let majid = verify_majid_axioms(&m, &opts);
    let roundtrip = coinvariants_roundtrip(&m);
    let report = AxiomsReport {
        schema: SCHEMA.into(),
        cocycle: cocycle_json,
        series: series_json,
        exhaustive,
        seed: if exhaustive { None } else { seed },
        dim_space: m.space().dim(),
        dim_algebra: m.dim(),
        braided,
        majid,
        roundtrip,
    };
    emit(&report, render_axioms, &t.output, t.cocycle.config.as_ref(), out)?;
    Ok(if report.holds() { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_census(a: &CensusArgs, out: &mut dyn Write) -> Outcome<i32> {
    let opts = CensusOptions { max_rank: a.max_rank, include_entries: a.entries, ..CensusOptions::default() };
    let report = z2cubed_report(&opts).map_err(|e| Failure { code: EXIT_FAILED, message: e.to_string() })?;
    emit(&report, render_census, &a.output, None, out)?;
    Ok(EXIT_OK)
}

/// Caps the worker pool at `QUASIQ_THREADS` when set.
pub fn configure_threads() {
    if let Some(n) = std::env::var("QUASIQ_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // Ignored if a pool already exists (e.g. in tests).
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing the report to `out` and diagnostics to `err`.
pub fn dispatch<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let result = match &cli.command {
        Command::VerifyCocycle(a) => cmd_verify(a, out),
        Command::SolveChars(a) => cmd_solve(a, out),
        Command::Enumerate(a) => cmd_enumerate(a, out),
        Command::Present(a) => cmd_present(a, out),
        Command::CheckAxioms(a) => cmd_axioms(a, out),
        Command::Z2cubedReport(a) => cmd_census(a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
