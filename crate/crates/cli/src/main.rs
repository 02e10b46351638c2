use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use srg_core::exactlin::{fmt_rat, parse_rat, RatMatrix};
use srg_core::graphs::{
    check_representation, mu_marks, neighborhood_cycles, parse_graph6, parse_json_graph, verify_srg, Graph,
    GraphError,
};
use srg_core::params::{cosine_sequence, feasibility_report, fmt_cosines, spectrum, validate_params, Eigenvalue};
use srg_core::replay::{
    replay_all, replay_stage, run_code_search, stage_names, CodeSearchConfig, CodeSearchOutcome, FinalVerdict,
    ReplayConfig, ReplayError, ReplayReport, StageVerdict, DEFAULT_BUDGET,
};
use srg_core::roots::{classify, short_vectors, LatticeGram};
use srg_core::{ParamsError, Rat};

const OK: u8 = 0;
const REFUTED: u8 = 1;
const ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "srg", version, about = "Exact tools for strongly regular graphs")]
struct Cli {
    /// Write the result to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Feasibility screens, spectrum and cosine sequences of (v,k,λ,μ).
    Params {
        v: i64,
        k: i64,
        #[arg(allow_negative_numbers = true)]
        lambda: i64,
        #[arg(allow_negative_numbers = true)]
        mu: i64,
        #[arg(long)]
        json: bool,
    },
    /// Verify a graph (graph6 or JSON) and check its representation Gram matrices.
    CheckGraph {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        theta: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Neighbourhood cycles of a vertex, and the marks of a second-layer vertex.
    Local {
        file: PathBuf,
        #[arg(long)]
        vertex: usize,
        #[arg(long)]
        witness: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Replay the non-existence argument for srg(76,21,2,7).
    Replay76 {
        #[arg(long)]
        json: bool,
        /// Run one stage only.
        #[arg(long)]
        stage: Option<String>,
    },
    /// Enumerate and classify the norm-2 vectors of a lattice.
    Roots {
        /// JSON square matrix of integers or "p/q" strings.
        #[arg(long)]
        gram: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Search for words pairwise agreeing in exactly `agreement` positions.
    Codes {
        n_words: usize,
        length: usize,
        alphabet: usize,
        agreement: usize,
        /// Node budget; defaults to SRG_WITNESS_BUDGET or 10^8.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        json: bool,
    },
}

/// Text to emit and the exit code, or a diagnostic for exit code 2.
type Outcome = Result<(String, u8), String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Params { v, k, lambda, mu, json } => params(v, k, lambda, mu, json),
        Command::CheckGraph { file, theta, json } => check_graph(&file, theta, json),
        Command::Local {
            file,
            vertex,
            witness,
            json,
        } => local(&file, vertex, witness, json),
        Command::Replay76 { json, stage } => replay(json, stage.as_deref()),
        Command::Roots { gram, json } => roots(&gram, json),
        Command::Codes {
            n_words,
            length,
            alphabet,
            agreement,
            budget,
            json,
        } => codes(n_words, length, alphabet, agreement, budget, json),
    };
    match result {
        Ok((text, code)) => {
            if let Some(path) = &cli.output {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(ERROR);
                }
            } else {
                print!("{text}");
            }
            ExitCode::from(code)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(ERROR)
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn params(v: i64, k: i64, lambda: i64, mu: i64, as_json: bool) -> Outcome {
    let p = match validate_params(v, k, lambda, mu) {
        Ok(p) => p,
        Err(e @ ParamsError::IdentityViolation { .. }) => {
            let text = if as_json {
                pretty(&json!({ "params": [v, k, lambda, mu], "feasible": false, "reason": e.to_string() }))
            } else {
                format!("parameters ({v},{k},{lambda},{mu})\n{e}\nverdict: INFEASIBLE\n")
            };
            return Ok((text, REFUTED));
        }
        Err(e) => return Err(e.to_string()),
    };
    let report = feasibility_report(&p);
    let sp = spectrum(&p).ok();
    let (r, s) = srg_core::params::eigenvalues(&p);
    let cosines: Vec<_> = [r, s]
        .iter()
        .filter_map(Eigenvalue::as_integer)
        .filter_map(|t| cosine_sequence(&p, t).ok())
        .collect();
    let code = if report.feasible() { OK } else { REFUTED };
    if as_json {
        let v = json!({
            "params": p,
            "eigenvalues": [p.k.to_string(), r.to_string(), s.to_string()],
            "spectrum": sp,
            "cosines": cosines,
            "feasibility": report,
            "feasible": report.feasible(),
        });
        return Ok((pretty(&v), code));
    }
    let mut out = String::new();
    writeln!(out, "parameters {p}").unwrap();
    writeln!(out, "eigenvalues: {}, {r}, {s}", p.k).unwrap();
    match &sp {
        Some(sp) => writeln!(out, "multiplicities: {}, {}, {}", sp.mult_k, sp.mult_plus, sp.mult_minus).unwrap(),
        None => writeln!(out, "multiplicities: not integral").unwrap(),
    }
    for c in &cosines {
        writeln!(out, "cosines θ={}: {}", c.eigenvalue, fmt_cosines(c)).unwrap();
    }
    if cosines.is_empty() {
        writeln!(out, "cosines: eigenvalues are irrational; no rational cosine sequence").unwrap();
    }
    for d in &report.details {
        let values: Vec<String> = d.values.iter().map(|(k, v)| format!("{k} = {v}")).collect();
        let status = if d.passed { "pass" } else { "FAIL" };
        writeln!(out, "{:<15} {status}  {}", d.name, values.join(", ")).unwrap();
    }
    writeln!(out, "verdict: {}", if report.feasible() { "FEASIBLE" } else { "INFEASIBLE" }).unwrap();
    Ok((out, code))
}

fn load_graph(path: &Path) -> Result<Graph, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let parsed = if text.trim_start().starts_with('{') {
        parse_json_graph(&text)
    } else {
        parse_graph6(text.trim())
    };
    parsed.map_err(|e| e.to_string())
}

/// Structural failures of a well-formed graph are refutations; anything
/// else is an input error.
fn graph_failure(e: GraphError) -> Outcome {
    match e {
        GraphError::NotRegular { .. }
        | GraphError::NotStronglyRegular { .. }
        | GraphError::Degenerate(_)
        | GraphError::TooSmall
        | GraphError::NotDegreeTwo { .. } => Ok((format!("{e}\nverdict: REFUTED\n"), REFUTED)),
        other => Err(other.to_string()),
    }
}

fn check_graph(path: &Path, theta: Option<i64>, as_json: bool) -> Outcome {
    let g = load_graph(path)?;
    let p = match verify_srg(&g) {
        Ok(p) => p,
        Err(e) => return graph_failure(e),
    };
    let thetas: Vec<i64> = match theta {
        Some(t) => vec![t],
        None => {
            let (r, s) = srg_core::params::eigenvalues(&p);
            [r, s].iter().filter_map(Eigenvalue::as_integer).collect()
        }
    };
    let mut checks = Vec::new();
    for t in &thetas {
        checks.push(check_representation(&g, *t).map_err(|e| e.to_string())?);
    }
    let holds = checks.iter().all(|c| c.holds());
    let code = if holds { OK } else { REFUTED };
    if as_json {
        let v = json!({ "params": p, "representations": checks, "verified": holds });
        return Ok((pretty(&v), code));
    }
    let mut out = format!("strongly regular with parameters {p}\n");
    if thetas.is_empty() {
        out.push_str("eigenvalues are irrational: no rational representation to check\n");
    }
    for c in &checks {
        writeln!(
            out,
            "θ = {}: Gram matrix {}, rank {}, multiplicity {}",
            c.theta,
            if c.is_psd { "PSD" } else { "not PSD" },
            c.rank,
            c.multiplicity
        )
        .unwrap();
    }
    writeln!(out, "verdict: {}", if holds { "VERIFIED" } else { "REFUTED" }).unwrap();
    Ok((out, code))
}

fn local(path: &Path, vertex: usize, witness: Option<usize>, as_json: bool) -> Outcome {
    let g = load_graph(path)?;
    let dec = match neighborhood_cycles(&g, vertex) {
        Ok(d) => d,
        Err(e) => return graph_failure(e),
    };
    let marks = match witness {
        Some(w) => Some(mu_marks(&g, vertex, w).map_err(|e| e.to_string())?),
        None => None,
    };
    if as_json {
        let mut v = json!({ "vertex": vertex, "cycles": dec.cycles });
        if let Some(m) = &marks {
            v["witness"] = json!(witness);
            v["marks"] = json!(m);
            v["total_marks"] = json!(m.iter().map(|c| c.s()).sum::<usize>());
        }
        return Ok((pretty(&v), OK));
    }
    let mut out = format!("neighbourhood of {vertex}: {} cycle(s)\n", dec.cycles.len());
    for (i, c) in dec.cycles.iter().enumerate() {
        let verts: Vec<String> = c.iter().map(usize::to_string).collect();
        write!(out, "  cycle {i} (length {}): {}", c.len(), verts.join(" ")).unwrap();
        if let Some(m) = &marks {
            let marked: Vec<String> = m[i].marks().iter().map(|&j| c[j].to_string()).collect();
            write!(out, "  marks: [{}]", marked.join(" ")).unwrap();
        }
        out.push('\n');
    }
    if let Some(m) = &marks {
        writeln!(out, "total marks: {}", m.iter().map(|c| c.s()).sum::<usize>()).unwrap();
    }
    Ok((out, OK))
}

fn render_report(r: &ReplayReport) -> String {
    let mut out = format!("replay of srg{} with θ = {}\n", r.params, r.theta);
    for s in &r.stages {
        writeln!(out, "{:<22} {:<22} {}", s.name, s.verdict.as_str(), s.summary).unwrap();
    }
    writeln!(out, "final verdict: {}", r.final_verdict.as_str()).unwrap();
    out
}

fn replay(as_json: bool, stage: Option<&str>) -> Outcome {
    let cfg = ReplayConfig::default();
    let report = match stage {
        None => replay_all(),
        Some(name) => replay_stage(name, &cfg).map_err(|e| match e {
            ReplayError::UnknownStage(_) => format!("{e}; stages are: {}", stage_names().join(", ")),
            other => other.to_string(),
        })?,
    };
    let code = match stage {
        None => match report.final_verdict {
            FinalVerdict::Nonexistent => REFUTED,
            FinalVerdict::Inconclusive => ERROR,
        },
        Some(_) => match report.stages[0].verdict {
            StageVerdict::Verified => OK,
            StageVerdict::ContradictionReached => REFUTED,
            StageVerdict::Failed => ERROR,
        },
    };
    let text = if as_json {
        let mut s = report.to_json();
        s.push('\n');
        s
    } else {
        render_report(&report)
    };
    Ok((text, code))
}

fn parse_entry(v: &Value) -> Option<Rat> {
    match v {
        Value::Number(n) => n.as_i64().map(srg_core::exactlin::int),
        Value::String(s) => parse_rat(s),
        _ => None,
    }
}

fn read_gram(path: &Path) -> Result<RatMatrix, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let raw: Vec<Vec<Value>> = serde_json::from_str(&text).map_err(|e| format!("invalid Gram matrix: {e}"))?;
    let rows = raw
        .iter()
        .map(|row| row.iter().map(parse_entry).collect::<Option<Vec<Rat>>>())
        .collect::<Option<Vec<_>>>()
        .ok_or("Gram entries must be integers or \"p/q\" strings")?;
    let m = RatMatrix::from_rows(rows).map_err(|e| e.to_string())?;
    if !m.is_symmetric() {
        return Err("Gram matrix is not symmetric".into());
    }
    Ok(m)
}

fn roots(path: &Path, as_json: bool) -> Outcome {
    let lat = LatticeGram::new(read_gram(path)?).map_err(|e| e.to_string())?;
    let rs = short_vectors(&lat, &srg_core::exactlin::int(2)).map_err(|e| e.to_string())?;
    let class = classify(&rs, &lat).map_err(|e| e.to_string())?;
    if as_json {
        let v = json!({ "rank": lat.rank(), "roots": rs.roots, "classification": class });
        return Ok((pretty(&v), OK));
    }
    let mut out = format!("lattice of rank {}: {} vectors of norm 2\n", lat.rank(), rs.len());
    if class.components.is_empty() {
        out.push_str("root system: empty\n");
    }
    for c in &class.components {
        writeln!(out, "component {c}").unwrap();
    }
    let gram_note: Vec<String> = lat.gram().row(0).iter().map(fmt_rat).collect();
    writeln!(out, "first Gram row: [{}]", gram_note.join(", ")).unwrap();
    Ok((out, OK))
}

fn codes(n: usize, len: usize, q: usize, agreement: usize, budget: Option<u64>, as_json: bool) -> Outcome {
    let budget = match budget {
        Some(b) => b,
        None => match std::env::var("SRG_WITNESS_BUDGET") {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| format!("SRG_WITNESS_BUDGET must be a nonnegative integer, got {s:?}"))?,
            Err(_) => DEFAULT_BUDGET,
        },
    };
    let mut cfg = CodeSearchConfig::new(n, len, q, agreement);
    cfg.budget = budget;
    let outcome = run_code_search(&cfg).map_err(|e| e.to_string())?;
    let code = if outcome.is_feasible() { OK } else { REFUTED };
    if as_json {
        return Ok((pretty(&serde_json::to_value(&outcome).expect("outcome serializes")), code));
    }
    let text = match &outcome {
        CodeSearchOutcome::Feasible { words, nodes } => {
            let mut out = format!("FEASIBLE after {nodes} nodes\n");
            for w in words {
                let letters: Vec<String> = w.iter().map(u8::to_string).collect();
                let sep = if q <= 10 { "" } else { " " };
                writeln!(out, "{}", letters.join(sep)).unwrap();
            }
            out
        }
        CodeSearchOutcome::Infeasible { nodes } => format!("INFEASIBLE: search completed after {nodes} nodes\n"),
    };
    Ok((text, code))
}
