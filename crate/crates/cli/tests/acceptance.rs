//! One PASS/FAIL line per acceptance criterion. Run with
//! `cargo test -p srg-cli --test acceptance -- --nocapture` to see the table.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use srg_core::exactlin::{det, gram_cycle, gram_path, int, rank, rat};
use srg_core::graphs::families::{paley, petersen, rook};
use srg_core::graphs::{check_representation, mu_marks, neighborhood_cycles, parse_graph6, write_graph6, Graph};
use srg_core::params::{cosine_sequence, eigenvalues, spectrum, validate_params, Eigenvalue};
use srg_core::replay::{
    agreement_code_search, hat_inner, lemma_cliques_bound, min_projection, verify_agreement_code, CodeSearchOutcome,
    HatRelation, InnerModel,
};
use srg_core::roots::{cartan, classify, max_roots, short_vectors, LatticeGram, RootType};

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    check: fn() -> Result<(), String>,
}

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn spectrum_reproduction() -> Result<(), String> {
    let p = validate_params(76, 21, 2, 7).map_err(|e| e.to_string())?;
    let s = spectrum(&p).map_err(|e| e.to_string())?;
    let (r, t) = eigenvalues(&p);
    ensure(
        (p.k, r, t) == (21, Eigenvalue::Integral(2), Eigenvalue::Integral(-7)),
        "eigenvalues are not {21, 2, -7}",
    )?;
    ensure((s.mult_k, s.mult_plus, s.mult_minus) == (1, 56, 19), "multiplicities are not {1, 56, 19}")?;
    let c = cosine_sequence(&p, -7).map_err(|e| e.to_string())?;
    ensure((c.w0, c.w1, c.w2) == (int(1), rat(-1, 3), rat(1, 9)), "cosines are not (1, -1/3, 1/9)")
}

fn determinant_law() -> Result<(), String> {
    for r in 1..=50 {
        ensure(det(&gram_path(r)) == int(r as i64 + 1), format!("det(gram_path({r})) ≠ {}", r + 1))?;
    }
    for t in 3..=20 {
        ensure(rank(&gram_cycle(t)) == t - 1, format!("rank(gram_cycle({t})) ≠ {}", t - 1))?;
    }
    Ok(())
}

fn inner_tables() -> Result<(), String> {
    let m = InnerModel::srg76();
    let want = [
        int(2),
        int(-1),
        int(0),
        int(5),
        rat(-7, 4),
        rat(1, 2),
        int(-1),
        rat(1, 2),
    ];
    for (rel, w) in HatRelation::ALL.iter().zip(want) {
        ensure(hat_inner(&m, *rel) == w, format!("{} differs", rel.name()))?;
    }
    Ok(())
}

fn projection_minimization() -> Result<(), String> {
    let m = InnerModel::srg76();
    for s in 1..=5 {
        let r = min_projection(&m, s, false).map_err(|e| e.to_string())?;
        ensure(r.min_value == rat(s as i64, 2) && r.certifies(), format!("s = {s}: free minimum"))?;
        ensure(r.argmin.iter().all(|c| c.marks.is_evenly_spaced()), format!("s = {s}: minimizer shape"))?;
        ensure(r.argmin.len() == 1, format!("s = {s}: minimizer is not unique"))?;
        if s >= 2 {
            let r = min_projection(&m, s, true).map_err(|e| e.to_string())?;
            ensure(r.min_value == rat(s as i64 + 3, 2) && r.certifies(), format!("s = {s}: forced-pair minimum"))?;
            ensure(r.argmin.len() == 1, format!("s = {s}: forced minimizer is not unique"))?;
        }
    }
    Ok(())
}

fn clique_gap() -> Result<(), String> {
    let m = InnerModel::srg76();
    for s in 2..=5 {
        let c = lemma_cliques_bound(&m, s).map_err(|e| e.to_string())?;
        ensure(c.min_inner == int(-1) && c.enumerated_min == int(-1), format!("s = {s}: bound is not -1"))?;
        ensure(c.min_inner > rat(-7, 4) && c.gap == rat(3, 4), format!("s = {s}: gap is not 3/4"))?;
    }
    Ok(())
}

fn root_system_bound() -> Result<(), String> {
    let lat = LatticeGram::new(cartan(RootType::D, 4).unwrap()).map_err(|e| e.to_string())?;
    let rs = short_vectors(&lat, &int(2)).map_err(|e| e.to_string())?;
    ensure(rs.len() == 24, format!("{} roots instead of 24", rs.len()))?;
    let c = classify(&rs, &lat).map_err(|e| e.to_string())?;
    let parts: Vec<_> = c.components.iter().map(|x| (x.kind, x.rank, x.root_count)).collect();
    ensure(parts == vec![(RootType::D, 4, 24)], format!("classified as {parts:?}"))?;
    ensure(max_roots(4) == Ok(24), "max_roots(4) ≠ 24")
}

fn endgame_search() -> Result<(), String> {
    let r = agreement_code_search(5, 7, 3, 1).map_err(|e| e.to_string())?;
    ensure(!r.is_feasible(), "(5,7,3,1) has a witness")?;
    match agreement_code_search(2, 7, 3, 1).map_err(|e| e.to_string())? {
        CodeSearchOutcome::Feasible { words, .. } => {
            ensure(verify_agreement_code(&words, 7, 3, 1) && words.len() == 2, "(2,7,3,1) witness is invalid")
        }
        CodeSearchOutcome::Infeasible { .. } => Err("(2,7,3,1) reported infeasible".into()),
    }
}

fn full_replay() -> Result<(), String> {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_srg"))
            .args(["replay76", "--json"])
            .output()
            .map_err(|e| e.to_string())
    };
    let a = run()?;
    let b = run()?;
    ensure(a.status.code() == Some(1), format!("exit code {:?}", a.status.code()))?;
    ensure(a.stdout == b.stdout, "reports differ between runs")?;
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).map_err(|e| e.to_string())?;
    ensure(v["final_verdict"] == "NONEXISTENT", "final verdict is not NONEXISTENT")?;
    let stages = v["stages"].as_array().ok_or("no stages")?;
    ensure(stages.len() >= 15, "fewer than 15 stages")?;
    for s in stages {
        let verdict = s["verdict"].as_str().unwrap_or("");
        ensure(
            verdict == "VERIFIED" || verdict == "CONTRADICTION-REACHED",
            format!("stage {} is {verdict}", s["name"]),
        )?;
    }
    Ok(())
}

fn representation_suite() -> Result<(), String> {
    for (name, g, thetas, mults) in [
        ("Petersen", petersen(), [1, -2], [5, 4]),
        ("rook(3)", rook(3), [1, -2], [4, 4]),
    ] {
        for (theta, mult) in thetas.into_iter().zip(mults) {
            let c = check_representation(&g, theta).map_err(|e| e.to_string())?;
            ensure(c.is_psd && c.rank == mult, format!("{name}, θ = {theta}: {c:?}"))?;
        }
    }
    let g = paley(13);
    let dec = neighborhood_cycles(&g, 0).map_err(|e| e.to_string())?;
    ensure(dec.cycle_lengths() == vec![6], format!("Paley(13) cycles {:?}", dec.cycle_lengths()))?;
    for w in 1..13 {
        if !g.has_edge(0, w) {
            let total: usize = mu_marks(&g, 0, w).map_err(|e| e.to_string())?.iter().map(|m| m.s()).sum();
            ensure(total == 3, format!("vertex {w} has {total} marks"))?;
        }
    }
    Ok(())
}

/// The graph6 definition transcribed literally.
fn reference_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut bits = Vec::new();
    for j in 1..n {
        for i in 0..j {
            bits.push(g.has_edge(i, j));
        }
    }
    bits.resize(bits.len().div_ceil(6) * 6, false);
    let mut s = String::from((n as u8 + 63) as char);
    for c in bits.chunks(6) {
        s.push((c.iter().fold(0u8, |a, &b| (a << 1) | b as u8) + 63) as char);
    }
    s
}

fn graph6_round_trip() -> Result<(), String> {
    for f in ["@", "A_", "Bw"] {
        let g = parse_graph6(f).map_err(|e| e.to_string())?;
        ensure(write_graph6(&g).map_err(|e| e.to_string())? == f, format!("fixture {f}"))?;
    }
    let mut rng = StdRng::seed_from_u64(500);
    for i in 0..500 {
        let n = rng.gen_range(0..=30);
        let p: f64 = rng.gen();
        let mut g = Graph::new(n);
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(a, b);
                }
            }
        }
        let s = write_graph6(&g).map_err(|e| e.to_string())?;
        ensure(s == reference_graph6(&g), format!("graph {i}: encoding differs from reference"))?;
        ensure(parse_graph6(&s).map_err(|e| e.to_string())? == g, format!("graph {i}: round trip"))?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria = [
        Criterion { id: 1, name: "spectrum reproduction", limit: Duration::from_millis(1), check: spectrum_reproduction },
        Criterion { id: 2, name: "determinant law", limit: Duration::from_secs(1), check: determinant_law },
        Criterion { id: 3, name: "inner-product tables", limit: Duration::from_millis(1), check: inner_tables },
        Criterion { id: 4, name: "projection minimization", limit: Duration::from_secs(10), check: projection_minimization },
        Criterion { id: 5, name: "clique-forcing gap", limit: Duration::from_secs(1), check: clique_gap },
        Criterion { id: 6, name: "root-system bound", limit: Duration::from_secs(1), check: root_system_bound },
        Criterion { id: 7, name: "endgame search", limit: Duration::from_secs(60), check: endgame_search },
        Criterion { id: 8, name: "full replay", limit: Duration::from_secs(120), check: full_replay },
        Criterion { id: 9, name: "representation suite", limit: Duration::from_secs(1), check: representation_suite },
        Criterion { id: 10, name: "graph6 round trip", limit: Duration::from_secs(1), check: graph6_round_trip },
    ];
    let mut failures = Vec::new();
    for c in &criteria {
        // warm-up run for the sub-millisecond limits
        if c.limit < Duration::from_millis(10) {
            let _ = (c.check)();
        }
        let start = Instant::now();
        let result = (c.check)();
        let elapsed = start.elapsed();
        let verdict = match &result {
            Ok(()) if elapsed <= c.limit => "PASS".to_string(),
            Ok(()) => format!("FAIL (took {elapsed:?}, limit {:?})", c.limit),
            Err(e) => format!("FAIL ({e})"),
        };
        println!("criterion {:>2} {:<24} {verdict}  [{elapsed:.2?}]", c.id, c.name);
        if !verdict.starts_with("PASS") {
            failures.push(c.id);
        }
    }
    assert!(failures.is_empty(), "failing criteria: {failures:?}");
}
