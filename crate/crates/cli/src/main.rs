//! `ulrc`: bounds, constructions, analysis, profile optimization and erasure
//! simulation for codes with unequal locality.
//!
//! Exit codes: 0 on success, 2 on a precondition or validation error, 3 when
//! an oracle ran out of budget (`ULRC_SUBSET_BUDGET`, `ULRC_DUAL_BUDGET`).

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use ulrc::galois::smallest_prime_power_at_least;
use ulrc::{
    canonicalize, exhaustive_optimal_profiles, gabidulin_lrc, gopalan_report, greedy_optimal_profile, objective,
    pyramid_unequal, simulate, unequal_all_symbol_bound, unequal_info_bound, witness_set_from,
    AllSymbolLocalityProfile, BoundError, BoundReport, CodeError, CodeFile, ConstructionDescriptor, Field,
    InfoLocalityProfile, LocalityRequirement, OptimizeError, OracleConfig, SimError,
};

#[derive(Parser)]
#[command(name = "ulrc", version, about = "Codes with unequal locality")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a distance bound.
    Bound {
        #[command(subcommand)]
        kind: BoundCmd,
    },
    /// Build a code and write it to a JSON file.
    Construct {
        #[command(subcommand)]
        kind: ConstructCmd,
    },
    /// Measure distance and locality of a stored code and compare with the bounds.
    Analyze { file: PathBuf },
    /// Find an optimal information locality profile for a requirement.
    OptimizeProfile {
        /// Minimum counts per locality, e.g. 0,3,3.
        #[arg(long)]
        requirement: LocalityRequirement,
        /// Confirm optimality by exhaustive search.
        #[arg(long)]
        certify: bool,
        /// Also transform this optimal profile into the greedy one, logging each step.
        #[arg(long)]
        canonicalize: Option<InfoLocalityProfile>,
    },
    /// Seeded random-erasure simulation.
    Simulate {
        file: PathBuf,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long)]
        erasures: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct Dims {
    #[arg(short)]
    n: usize,
    #[arg(short)]
    k: usize,
}

#[derive(Subcommand)]
enum BoundCmd {
    /// Bound for an information locality profile.
    Info {
        #[command(flatten)]
        dims: Dims,
        #[arg(long)]
        profile: InfoLocalityProfile,
    },
    /// Bound for an all-symbol locality profile.
    AllSymbol {
        #[command(flatten)]
        dims: Dims,
        #[arg(long)]
        profile: AllSymbolLocalityProfile,
    },
    /// Single-locality bound d <= n - k - ceil(k/r) + 2.
    Gopalan {
        #[command(flatten)]
        dims: Dims,
        #[arg(short)]
        r: usize,
    },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Pyramid code with an unequal information locality profile.
    Pyramid {
        #[arg(long)]
        profile: InfoLocalityProfile,
        #[arg(short)]
        d: usize,
        /// Field size; defaults to the smallest prime power >= k + d - 1.
        #[arg(short)]
        q: Option<u64>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Gabidulin-precoded code with an all-symbol locality profile.
    Gabidulin {
        #[arg(short)]
        k: usize,
        #[arg(long)]
        nprofile: AllSymbolLocalityProfile,
        #[arg(short)]
        q: u64,
        /// Extension degree; defaults to the precode length N.
        #[arg(short)]
        m: Option<usize>,
        #[arg(short, long)]
        output: PathBuf,
    },
}

/// Text lines for humans, a JSON value for scripts.
struct Output {
    lines: Vec<String>,
    value: Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = OracleConfig::from_env();
    match run(&cli.command, &cfg) {
        Ok((out, code)) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.value).expect("json values serialize")
                );
            } else {
                for line in out.lines {
                    println!("{line}");
                }
            }
            ExitCode::from(code)
        }
        Err(err) => {
            let code = exit_code(&err);
            if cli.json {
                let v = json!({"error": format!("{err:#}"), "exit_code": code});
                println!("{}", serde_json::to_string_pretty(&v).expect("json values serialize"));
            } else {
                eprintln!("error: {err:#}");
            }
            ExitCode::from(code)
        }
    }
}

fn is_budget(err: &CodeError) -> bool {
    matches!(err, CodeError::BudgetExceeded { .. })
}

fn exit_code(err: &anyhow::Error) -> u8 {
    let budget = err.chain().any(|e| {
        if let Some(c) = e.downcast_ref::<CodeError>() {
            return is_budget(c);
        }
        if let Some(BoundError::Code(c)) = e.downcast_ref::<BoundError>() {
            return is_budget(c);
        }
        if let Some(SimError::Code(c)) = e.downcast_ref::<SimError>() {
            return is_budget(c);
        }
        matches!(
            e.downcast_ref::<OptimizeError>(),
            Some(OptimizeError::BudgetExceeded { .. })
        )
    });
    if budget {
        3
    } else {
        2
    }
}

fn run(cmd: &Command, cfg: &OracleConfig) -> Result<(Output, u8)> {
    match cmd {
        Command::Bound { kind } => Ok((cmd_bound(kind)?, 0)),
        Command::Construct { kind } => Ok((cmd_construct(kind)?, 0)),
        Command::Analyze { file } => cmd_analyze(file, cfg),
        Command::OptimizeProfile {
            requirement,
            certify,
            canonicalize,
        } => Ok((cmd_optimize(requirement, *certify, canonicalize.as_ref())?, 0)),
        Command::Simulate {
            file,
            trials,
            erasures,
            seed,
        } => Ok((cmd_simulate(file, *trials, *erasures, *seed, cfg)?, 0)),
    }
}

fn bound_output(report: &BoundReport) -> Output {
    let mut lines = report.trace();
    lines.push(format!("bound: {}", report.bound));
    Output {
        lines,
        value: serde_json::to_value(report).expect("reports serialize"),
    }
}

fn cmd_bound(kind: &BoundCmd) -> Result<Output> {
    let report = match kind {
        BoundCmd::Info { dims, profile } => unequal_info_bound(dims.n, dims.k, profile)?,
        BoundCmd::Gopalan { dims, r } => gopalan_report(dims.n, dims.k, *r)?,
        BoundCmd::AllSymbol { dims, profile } => match unequal_all_symbol_bound(dims.n, dims.k, profile) {
            Ok(r) => r,
            Err(e @ (BoundError::RUndefined { .. } | BoundError::RPrimeUndefined { .. })) => {
                let ra = profile.max_locality();
                let fallback = gopalan_report(dims.n, dims.k, ra)
                    .map(|g| format!("; the single-locality bound with r = {ra} gives {}", g.bound))
                    .unwrap_or_default();
                return Err(anyhow!("{e}{fallback}"));
            }
            Err(e) => return Err(e.into()),
        },
    };
    Ok(bound_output(&report))
}

fn cmd_construct(kind: &ConstructCmd) -> Result<Output> {
    let (file, output, summary) = match kind {
        ConstructCmd::Pyramid { profile, d, q, output } => {
            let q = q.unwrap_or_else(|| smallest_prime_power_at_least((profile.total() + d.saturating_sub(1)) as u64));
            let field = Field::with_order(q)?;
            let p = pyramid_unequal(profile, *d, &field)?;
            let summary = json!({
                "kind": "pyramid",
                "n": p.code.n(),
                "k": p.code.k(),
                "q": q,
                "intended_profile": p.intended_profile,
                "designed_profile": p.designed_profile(),
                "design_distance": p.d_design,
            });
            (CodeFile::from(&p), output, summary)
        }
        ConstructCmd::Gabidulin {
            k,
            nprofile,
            q,
            m,
            output,
        } => {
            let n_precode: usize = nprofile
                .counts()
                .iter()
                .enumerate()
                .map(|(i, &c)| c * (i + 1) / (i + 2))
                .sum();
            let m = m.unwrap_or(n_precode);
            let g = gabidulin_lrc(*k, nprofile, *q, m)?;
            let d = unequal_all_symbol_bound(g.code.n(), *k, nprofile).ok().map(|r| r.bound);
            let summary = json!({
                "kind": "gabidulin",
                "n": g.code.n(),
                "k": g.code.k(),
                "q": q,
                "m": m,
                "n_precode": g.n_precode,
                "intended_profile": g.intended_profile,
                "design_distance": d,
            });
            (CodeFile::from(&g), output, summary)
        }
    };
    file.write(output)?;
    let mut lines = vec![format!(
        "wrote {} ({}, {}) {} code",
        output.display(),
        summary["n"],
        summary["k"],
        summary["kind"].as_str().unwrap_or_default()
    )];
    lines.push(format!("intended profile: {}", braces(&summary["intended_profile"])));
    if let Some(p) = summary
        .get("designed_profile")
        .filter(|p| *p != &summary["intended_profile"])
    {
        lines.push(format!("designed profile: {} (short last groups)", braces(p)));
    }
    lines.push(format!("design distance: {}", summary["design_distance"]));
    let mut value = summary;
    value["file"] = json!(output.display().to_string());
    Ok(Output { lines, value })
}

/// `[1,2,3]` -> `{1,2,3}`, the notation profiles are written in.
fn braces(v: &Value) -> String {
    let parts: Vec<String> = v.as_array().into_iter().flatten().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn load(path: &PathBuf) -> Result<(CodeFile, ulrc::LinearCode)> {
    let file = CodeFile::read(path)?;
    let code = file
        .to_code()
        .with_context(|| format!("invalid code in {}", path.display()))?;
    Ok((file, code))
}

fn cmd_analyze(path: &PathBuf, cfg: &OracleConfig) -> Result<(Output, u8)> {
    let (file, code) = load(path)?;
    let (n, k) = (code.n(), code.k());
    let mut lines = vec![format!("code: n = {n}, k = {k}, GF({})", code.field().order())];
    let mut value = json!({"n": n, "k": k, "field_order": code.field().order()});
    let mut omitted: Vec<String> = Vec::new();
    let mut budget_hit = false;
    let mut omit = |what: &str, err: &dyn std::fmt::Display, budget: bool, omitted: &mut Vec<String>| {
        budget_hit |= budget;
        omitted.push(format!("{what}: {err}"));
    };

    let distance = match code.min_distance(cfg) {
        Ok(d) => {
            lines.push(format!("minimum distance: {d}"));
            value["min_distance"] = json!(d);
            Some(d)
        }
        Err(e) => {
            omit("minimum distance", &e, is_budget(&e), &mut omitted);
            None
        }
    };

    let localities = match code.localities(cfg) {
        Ok(l) => Some(l),
        Err(e) => {
            omit("localities", &e, is_budget(&e), &mut omitted);
            None
        }
    };
    let mut bounds = serde_json::Map::new();
    if let Some(loc) = &localities {
        let values: Vec<Option<usize>> = loc.iter().map(|l| l.value()).collect();
        value["localities"] = json!(values);
        match code.all_symbol_profile_from(loc) {
            Ok(p) => {
                lines.push(format!("all-symbol profile: {p}"));
                value["all_symbol_profile"] = json!(p);
                match unequal_all_symbol_bound(n, k, &p) {
                    Ok(r) => {
                        bounds.insert("all_symbol".into(), json!(r));
                    }
                    Err(e) => omit("all-symbol bound", &e, false, &mut omitted),
                }
            }
            Err(e) => omit("all-symbol profile", &e, false, &mut omitted),
        }
        match code.info_profile_from(loc) {
            Ok(p) => {
                lines.push(format!("information profile: {p}"));
                value["info_profile"] = json!(p);
                match unequal_info_bound(n, k, &p) {
                    Ok(r) => {
                        bounds.insert("info".into(), json!(r));
                    }
                    Err(e) => omit("information bound", &e, false, &mut omitted),
                }
            }
            Err(e) => omit("information profile", &e, false, &mut omitted),
        }
        match witness_set_from(&code, loc) {
            Ok(w) => {
                lines.push(format!(
                    "witness set: {:?} (size {}, rank {})",
                    w.coordinates,
                    w.len(),
                    w.rank
                ));
                if let Some(d) = distance {
                    let holds = w.len() + d <= n;
                    lines.push(format!(
                        "witness check |S| <= n - d: {} <= {} {}",
                        w.len(),
                        n - d,
                        if holds { "holds" } else { "VIOLATED" }
                    ));
                    value["witness_check"] = json!({"size": w.len(), "n_minus_d": n - d, "holds": holds});
                }
                value["witness_set"] = json!(w);
            }
            Err(e) => omit("witness set", &e, false, &mut omitted),
        }
    }

    for (name, label) in [("info", "information"), ("all_symbol", "all-symbol")] {
        if let Some(b) = bounds.get(name) {
            let bound = b["bound"].as_i64().unwrap_or_default();
            match distance {
                Some(d) => lines.push(format!("{label} bound: {bound}, gap {}", bound - d as i64)),
                None => lines.push(format!("{label} bound: {bound}")),
            }
            if let Some(d) = distance {
                bounds.get_mut(name).expect("present")["gap"] = json!(bound - d as i64);
            }
        }
    }
    value["bounds"] = Value::Object(bounds);

    if let Some(desc) = &file.construction {
        let (intended, measured) = match desc {
            ConstructionDescriptor::Pyramid { profile, .. } => (profile.to_string(), value.get("info_profile")),
            ConstructionDescriptor::Gabidulin { nprofile, .. } => {
                (nprofile.to_string(), value.get("all_symbol_profile"))
            }
        };
        let measured_text = measured.map(braces);
        lines.push(format!(
            "construction: intended profile {intended}, measured {}",
            measured_text.as_deref().unwrap_or("unavailable")
        ));
        value["construction"] = json!({
            "descriptor": desc,
            "intended_profile": intended,
            "measured_profile": measured_text,
        });
    }

    for o in &omitted {
        lines.push(format!("omitted: {o}"));
    }
    value["omitted"] = json!(omitted);
    Ok((Output { lines, value }, if budget_hit { 3 } else { 0 }))
}

fn cmd_optimize(req: &LocalityRequirement, certify: bool, start: Option<&InfoLocalityProfile>) -> Result<Output> {
    let (profile, trace) = greedy_optimal_profile(req);
    let obj = objective(profile.counts());
    let mut lines = vec![format!("requirement: {req} (k = {})", req.k())];
    for s in &trace.steps {
        lines.push(format!("j = {}: b = {}, g = {}, k*_j = {}", s.j, s.b, s.g, s.k_star));
    }
    lines.push(format!("optimal profile: {profile}"));
    lines.push(format!("objective: {obj}"));
    let mut value = json!({
        "requirement": req,
        "k": req.k(),
        "profile": profile,
        "objective": obj,
        "trace": trace,
    });
    if certify {
        let (best, optima) = exhaustive_optimal_profiles(req)?;
        let agrees = best == obj;
        lines.push(format!(
            "exhaustive optimum: {best} over {} optimal profiles ({})",
            optima.len(),
            if agrees { "confirmed" } else { "MISMATCH" }
        ));
        value["certificate"] = json!({"exhaustive_objective": best, "optimal_profiles": optima, "confirmed": agrees});
        if !agrees {
            return Err(anyhow!("greedy objective {obj} differs from exhaustive optimum {best}"));
        }
    }
    if let Some(p) = start {
        let c = canonicalize(p, req)?;
        lines.push(format!("transform from {p} (objective {}):", c.initial_objective));
        for s in &c.steps {
            lines.push(format!(
                "  {:?} {} -> {} x{}: {:?}, objective {}",
                s.kind, s.from, s.to, s.amount, s.profile, s.objective
            ));
        }
        value["canonicalization"] = json!(c);
    }
    Ok(Output { lines, value })
}

fn cmd_simulate(path: &PathBuf, trials: usize, erasures: usize, seed: u64, cfg: &OracleConfig) -> Result<Output> {
    let (_, code) = load(path)?;
    let report = simulate(&code, trials, erasures, seed, cfg)?;
    let mut lines = vec![
        format!("seed {seed}, {trials} trials, {erasures} erasures per trial"),
        format!(
            "decoded: {}/{} ({:.2}%), insufficient rank {}, inconsistent {}",
            report.successes,
            report.trials,
            100.0 * report.success_rate(),
            report.insufficient_rank,
            report.inconsistent
        ),
    ];
    for c in &report.repair {
        let class = c
            .locality
            .map_or("unrecoverable".to_string(), |r| format!("locality {r}"));
        lines.push(format!(
            "{class}: {} erased, {} local, {} global, {} lost, reads {:?}",
            c.erased, c.local, c.global, c.lost, c.reads
        ));
    }
    Ok(Output {
        lines,
        value: serde_json::to_value(&report).expect("reports serialize"),
    })
}
