//! Command-line front end. Every subcommand produces one JSON [`Report`]; exit status
//! 0 means a verdict was reached (a refutation counts), 1 means inconclusive or out
//! of budget, 2 means bad usage or unreadable input.

use crate::error::Error;
use crate::gadget::{build_doubling_gadget, build_gadget_with_return, build_small_gadget};
use crate::graph::{gen, io, Graph, TwoColoring};
use crate::profile::Profile;
use crate::ramsey::{
    bipartite_engine, connected_engine, exact_ramsey_oracle, lower_bound_coloring, partition_structure, prove_main,
    refuting_coloring_general, verify_refutation, EngineReport, OracleMode, RamseyInstance, RefutationVerdict,
    Verdict,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use std::time::Instant;

#[derive(Parser, Debug)]
#[command(name = "cycle-goodness", version, about = "Red cycles versus blue complete multipartite graphs")]
pub struct Cli {
    /// `paper`, `desk`, or `file:<path>`.
    #[arg(long, global = true, default_value = "desk")]
    pub profile: String,
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Record wall-clock time in the report (otherwise `elapsed_ms` is null).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a refuting clique coloring.
    Generate {
        #[arg(value_enum)]
        kind: GenerateKind,
        #[command(flatten)]
        inst: InstanceArgs,
        /// Order of the cycle-side graph for `lower-bound` (defaults to n).
        #[arg(long)]
        g_order: Option<usize>,
        /// Number of small cliques for `refuting`.
        #[arg(long)]
        r: Option<usize>,
        /// Also write the coloring in the text format.
        #[arg(long)]
        coloring_out: Option<String>,
    },
    /// Search a coloring for a red C_n and a blue K_{m_1..m_k}.
    Verify {
        #[arg(long)]
        coloring: String,
        #[command(flatten)]
        inst: InstanceArgs,
        /// Node budget per search; unbounded when absent.
        #[arg(long)]
        nodes: Option<u64>,
    },
    /// Build a gadget in a host graph.
    Gadget {
        #[arg(value_enum)]
        kind: GadgetKindArg,
        #[command(flatten)]
        host: HostArgs,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        /// Shortfall for `small` (odd) or doubling depth for `doubling`.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        mu: Option<f64>,
    },
    /// Run a proof engine on a coloring.
    Engine {
        #[arg(value_enum)]
        kind: EngineKind,
        #[command(flatten)]
        host: HostArgs,
        #[command(flatten)]
        inst: InstanceArgs,
    },
    /// Exact Ramsey number by enumeration.
    Oracle {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long)]
        nmax: usize,
        #[arg(long, value_enum, default_value = "pruned")]
        mode: ModeArg,
    },
    /// Quick end-to-end checks.
    Selftest,
}

#[derive(Args, Debug)]
pub struct InstanceArgs {
    /// Cycle length.
    #[arg(long)]
    pub n: usize,
    /// Part sizes, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
}

/// A graph or coloring from a file, or a seeded G(N, p).
#[derive(Args, Debug)]
pub struct HostArgs {
    /// Coloring file (`red-of-complete N` header) or, for `gadget`, an edge list.
    #[arg(long, alias = "graph", conflicts_with = "random")]
    pub coloring: Option<String>,
    /// Order of a random red graph G(N, p) drawn from `--seed`.
    #[arg(long, requires = "density")]
    pub random: Option<usize>,
    #[arg(long)]
    pub density: Option<f64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum GenerateKind {
    LowerBound,
    Refuting,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum GadgetKindArg {
    Small,
    Doubling,
    Return,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum EngineKind {
    Bipartite,
    Connected,
    Main,
    Partition,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Full,
    Pruned,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub profile: Profile,
    pub instance: Value,
    pub verdict: String,
    pub witness: Value,
    pub trace: Value,
    pub seed: u64,
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

/// Usage problems (exit 2) versus everything the report can describe.
#[derive(Debug)]
pub struct UsageError(pub String);

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        UsageError(e.to_string())
    }
}

type Outcome = (i32, Report);

fn read(path: &str) -> Result<String, UsageError> {
    std::fs::read_to_string(path).map_err(|e| UsageError(format!("{path}: {e}")))
}

impl HostArgs {
    fn graph(&self, seed: u64, edge_list: bool) -> Result<Graph, UsageError> {
        match (&self.coloring, self.random, self.density) {
            (Some(path), _, _) => {
                let text = read(path)?;
                let g = if edge_list && !text.trim_start().starts_with("red-of-complete") {
                    io::parse_edge_list(&text)?
                } else {
                    io::parse_coloring(&text)?.red().clone()
                };
                Ok(g)
            }
            (None, Some(n), Some(p)) if (0.0..=1.0).contains(&p) => Ok(gen::gnp_seeded(n, p, seed)),
            (None, Some(_), Some(p)) => Err(UsageError(format!("density must lie in [0, 1], got {p}"))),
            _ => Err(UsageError("give --coloring FILE or --random N --density P".into())),
        }
    }
}

fn verdict_outcome(v: &Verdict) -> (i32, &'static str) {
    (if v.is_inconclusive() { 1 } else { 0 }, v.name())
}

fn verdict_witness(v: &Verdict) -> Value {
    match v {
        Verdict::RedCycle { cycle } => json!({"kind": "cycle", "vertices": cycle}),
        Verdict::BlueMultipartite { parts } => json!({"kind": "multipartite", "parts": parts}),
        Verdict::Refuted { order, red_edges } => json!({"kind": "coloring", "order": order, "red_edges": red_edges}),
        Verdict::Inconclusive { stage, reason } => json!({"kind": "none", "stage": stage, "reason": reason}),
    }
}

/// Runs one parsed command. `Err` is a usage error.
pub fn dispatch(cli: &Cli) -> Result<Outcome, UsageError> {
    let profile = Profile::load(&cli.profile)?;
    let start = Instant::now();
    let seed = cli.seed;
    let base = |command: String, instance: Value| Report {
        command,
        profile: profile.clone(),
        instance,
        verdict: String::new(),
        witness: Value::Null,
        trace: json!([]),
        seed,
        elapsed_ms: None,
    };
    let (code, report) = match &cli.command {
        Command::Generate { kind, inst, g_order, r, coloring_out } => {
            let ri = RamseyInstance::new(inst.n, &inst.sizes)?;
            let (name, c) = match kind {
                GenerateKind::LowerBound => {
                    ("generate lower-bound", lower_bound_coloring(&ri, g_order.unwrap_or(ri.n))?)
                }
                GenerateKind::Refuting => {
                    let r = r.ok_or_else(|| UsageError("refuting needs --r".into()))?;
                    ("generate refuting", refuting_coloring_general(&ri, r)?)
                }
            };
            if let Some(path) = coloring_out {
                std::fs::write(path, io::write_coloring(&c)).map_err(|e| UsageError(format!("{path}: {e}")))?;
            }
            let check = verify_refutation(&c, &ri, Some(profile.budgets.search_nodes))?;
            let mut rep = base(name.into(), json!(ri));
            rep.verdict = refutation_name(&check).into();
            rep.witness = json!({"kind": "coloring", "order": c.order(), "red_edges": c.red().edges()});
            rep.trace = json!([{"stage": "verify", "result": check}]);
            (if matches!(check, RefutationVerdict::Indeterminate { .. }) { 1 } else { 0 }, rep)
        }
        Command::Verify { coloring, inst, nodes } => {
            let ri = RamseyInstance::new(inst.n, &inst.sizes)?;
            let c = io::parse_coloring(&read(coloring)?)?;
            let check = verify_refutation(&c, &ri, *nodes)?;
            let mut rep = base("verify".into(), json!(ri));
            rep.verdict = refutation_name(&check).into();
            rep.witness = match &check {
                RefutationVerdict::RedCycle { cycle } => json!({"kind": "cycle", "vertices": cycle}),
                RefutationVerdict::BlueMultipartite { parts } => json!({"kind": "multipartite", "parts": parts}),
                _ => Value::Null,
            };
            (if matches!(check, RefutationVerdict::Indeterminate { .. }) { 1 } else { 0 }, rep)
        }
        Command::Gadget { kind, host, m, k, r, lambda, mu } => {
            let g = host.graph(seed, true)?;
            let instance = json!({"order": g.order(), "m": m, "k": k, "r": r, "lambda": lambda, "mu": mu});
            let built = match kind {
                GadgetKindArg::Small => {
                    let r = r.ok_or_else(|| UsageError("small needs --r".into()))?;
                    build_small_gadget(&g, *m, *k, r, &profile, seed).map(|x| json!(x))
                }
                GadgetKindArg::Doubling => {
                    let r = r.ok_or_else(|| UsageError("doubling needs --r".into()))?;
                    build_doubling_gadget(&g, *m, *k, r, &profile, seed).map(|x| json!(x))
                }
                GadgetKindArg::Return => {
                    let (Some(l), Some(u)) = (lambda, mu) else {
                        return Err(UsageError("return needs --lambda and --mu".into()));
                    };
                    build_gadget_with_return(&g, *m, *k, *l, *u, &profile, seed).map(|x| json!(x))
                }
            };
            let mut rep = base(format!("gadget {}", kind_name(*kind)), instance);
            match built {
                Ok(w) => {
                    rep.verdict = "built".into();
                    rep.witness = w;
                    (0, rep)
                }
                Err(Error::Parameter(msg)) => return Err(UsageError(msg)),
                Err(e) => {
                    rep.verdict = "failed".into();
                    rep.trace = json!([{"stage": "build", "error": e.to_string()}]);
                    (1, rep)
                }
            }
        }
        Command::Engine { kind, host, inst } => {
            let ri = RamseyInstance::new(inst.n, &inst.sizes)?;
            let c = TwoColoring::from_red(host.graph(seed, false)?);
            paper_guard(&profile, *kind, &ri, c.order())?;
            let mut rep = base(format!("engine {}", engine_name(*kind)), json!(ri));
            let er: EngineReport = match kind {
                EngineKind::Bipartite => {
                    if ri.k() != 2 {
                        return Err(UsageError("bipartite engine needs exactly two part sizes".into()));
                    }
                    bipartite_engine(&c, ri.n, ri.sizes[0], ri.sizes[1], &profile, seed)?
                }
                EngineKind::Connected => {
                    if ri.sizes.iter().any(|&s| s != ri.sizes[0]) {
                        return Err(UsageError("connected engine needs equal part sizes".into()));
                    }
                    connected_engine(&c, ri.n, ri.sizes[0], ri.k(), &profile, seed)?
                }
                EngineKind::Main => prove_main(&c, &ri, &profile, seed)?,
                EngineKind::Partition => {
                    let m = *ri.sizes.last().unwrap();
                    let code = match partition_structure(&c, ri.n, m, ri.k(), &profile) {
                        Ok(p) => {
                            rep.verdict = "partitioned".into();
                            rep.witness = json!({"parts": p.parts, "leftover": p.leftover, "surplus": p.surplus});
                            rep.trace = json!(p.trace);
                            0
                        }
                        Err(Error::Parameter(msg)) => return Err(UsageError(msg)),
                        Err(e) => {
                            rep.verdict = "failed".into();
                            rep.trace = json!([{"stage": "partition", "error": e.to_string()}]);
                            1
                        }
                    };
                    return Ok(finish(code, rep, start, cli.timing));
                }
            };
            let (code, name) = verdict_outcome(&er.verdict);
            rep.verdict = name.into();
            rep.witness = verdict_witness(&er.verdict);
            rep.trace = json!(er.trace);
            (code, rep)
        }
        Command::Oracle { inst, nmax, mode } => {
            let ri = RamseyInstance::new(inst.n, &inst.sizes)?;
            let mode = match mode {
                ModeArg::Full => OracleMode::Full,
                ModeArg::Pruned => OracleMode::Pruned,
            };
            let out = exact_ramsey_oracle(&ri, *nmax, mode, cli.threads)?;
            let mut rep = base("oracle".into(), json!(ri));
            rep.verdict = match out.r {
                Some(r) => format!("R = {r}"),
                None => out.bound.clone(),
            };
            let code = if out.r.is_some() { 0 } else { 1 };
            rep.witness = json!(out);
            (code, rep)
        }
        Command::Selftest => {
            let (ok, trace) = selftest(&profile, cli.threads);
            let mut rep = base("selftest".into(), Value::Null);
            rep.verdict = if ok { "pass" } else { "fail" }.into();
            rep.trace = trace;
            (if ok { 0 } else { 1 }, rep)
        }
    };
    Ok(finish(code, report, start, cli.timing))
}

fn finish(code: i32, mut rep: Report, start: Instant, timing: bool) -> Outcome {
    rep.elapsed_ms = timing.then(|| start.elapsed().as_millis() as u64);
    (code, rep)
}

fn refutation_name(v: &RefutationVerdict) -> &'static str {
    match v {
        RefutationVerdict::Refutes => "refutes",
        RefutationVerdict::RedCycle { .. } => "red-cycle",
        RefutationVerdict::BlueMultipartite { .. } => "blue-multipartite",
        RefutationVerdict::Indeterminate { .. } => "indeterminate",
    }
}

fn kind_name(k: GadgetKindArg) -> &'static str {
    match k {
        GadgetKindArg::Small => "small",
        GadgetKindArg::Doubling => "doubling",
        GadgetKindArg::Return => "return",
    }
}

fn engine_name(k: EngineKind) -> &'static str {
    match k {
        EngineKind::Bipartite => "bipartite",
        EngineKind::Connected => "connected",
        EngineKind::Main => "main",
        EngineKind::Partition => "partition",
    }
}

/// Under the paper profile, engines whose size hypotheses cannot hold are refused.
fn paper_guard(profile: &Profile, kind: EngineKind, inst: &RamseyInstance, order: usize) -> Result<(), UsageError> {
    if !profile.is_paper() {
        return Ok(());
    }
    let mk = *inst.sizes.last().unwrap() as f64;
    let (what, need) = match kind {
        EngineKind::Bipartite => ("n >= N_2 m_2", profile.n2 * mk),
        EngineKind::Connected => ("n >= N_3 m", profile.n3 * mk),
        EngineKind::Partition => ("n >= N_3 m", profile.n3_partition * mk),
        EngineKind::Main => ("n >= N_3 m_k", profile.n3_main * mk),
    };
    if (inst.n as f64) < need || (order as f64) < need {
        return Err(UsageError(format!(
            "the paper profile needs {what} = {need:e}, but n = {} on {order} vertices; use --profile desk",
            inst.n
        )));
    }
    Ok(())
}

/// Oracle values, refutations of the clique colorings and one engine run each.
pub fn selftest(profile: &Profile, threads: usize) -> (bool, Value) {
    let mut trace = Vec::new();
    let mut ok = true;
    let mut record = |name: &str, pass: bool, detail: String| {
        ok &= pass;
        trace.push(json!({"check": name, "pass": pass, "detail": detail}));
    };
    for (n, sizes, want) in [(3, vec![1, 1], 3), (5, vec![1, 2], 5), (4, vec![2, 2], 6)] {
        let inst = RamseyInstance::new(n, &sizes).expect("valid");
        let got = exact_ramsey_oracle(&inst, 7, OracleMode::Pruned, threads).ok().and_then(|o| o.r);
        record("oracle", got == Some(want), format!("n = {n}, sizes = {sizes:?}: {got:?}"));
    }
    for (n, sizes) in [(6, vec![2, 2, 2]), (7, vec![1, 2, 3]), (5, vec![3, 3])] {
        let inst = RamseyInstance::new(n, &sizes).expect("valid");
        let c = lower_bound_coloring(&inst, n).expect("valid");
        let v = verify_refutation(&c, &inst, None);
        record("lower bound", matches!(v, Ok(RefutationVerdict::Refutes)), format!("n = {n}, sizes = {sizes:?}"));
    }
    let inst = RamseyInstance::new(5, &[1, 1, 2]).expect("valid");
    let c = lower_bound_coloring(&inst, 5).expect("valid");
    let v = prove_main(&c, &inst, profile, 0).map(|r| r.verdict);
    record("prove_main", matches!(v, Ok(Verdict::Refuted { .. })), "lower-bound coloring on N - 1 vertices".into());
    let red = gen::gnp_seeded(60, 0.8, 1);
    let c = TwoColoring::from_red(red);
    let rep = bipartite_engine(&c, 30, 2, 2, profile, 0);
    let good = rep.as_ref().is_ok_and(|r| {
        crate::ramsey::verify_verdict(&c, &RamseyInstance::new(30, &[2, 2]).unwrap(), &r.verdict)
            && !r.verdict.is_inconclusive()
    });
    record("bipartite engine", good, "G(60, 0.8), n = 30".into());
    (ok, Value::Array(trace))
}

/// Parses `args` (without the program name handled specially) and runs them.
/// Returns the exit status and the text to print.
pub fn run_args<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    match dispatch(&cli) {
        Ok((code, rep)) => {
            let text = rep.to_json();
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &text) {
                    return (2, format!("error: {path}: {e}\n"));
                }
                return (code, String::new());
            }
            (code, text)
        }
        Err(UsageError(msg)) => (2, format!("error: {msg}\n")),
    }
}
