//! The staged replay and its JSON report.

use serde::Serialize;
use serde_json::{json, Value};

use super::codes::{run_code_search, CodeSearchConfig, CodeSearchOutcome, DEFAULT_BUDGET};
use super::lemmas::*;
use super::model::{hat_inner, HatRelation, InnerModel};
use super::ReplayError;
use crate::exactlin::{det, gram_cycle, gram_path, int, rank, rat, Rat};
use crate::params::{cosine_sequence, feasibility_report, fmt_cosines, spectrum, SrgParams};
use crate::roots::{cartan, classify, max_root_system, short_vectors, LatticeGram, RootType};

pub const SCHEMA_VERSION: &str = "1";
pub const STAGE_LIST: &str = "srg76-v1";

const STAGES: [&str; 19] = [
    "params",
    "spectrum",
    "feasibility",
    "cosines",
    "inner-tables",
    "lemma-dimension",
    "lemma-three",
    "component-sizes",
    "component-bound",
    "cycle-length-bound",
    "lemma-lowest",
    "lemma-projections",
    "lemma-cliques",
    "dimensions",
    "circ-table",
    "root-system-maximum",
    "pigeonhole",
    "opposite-root-case",
    "agreement-code-search",
];

pub fn stage_names() -> &'static [&'static str] {
    &STAGES
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StageVerdict {
    #[serde(rename = "VERIFIED")]
    Verified,
    #[serde(rename = "CONTRADICTION-REACHED")]
    ContradictionReached,
    #[serde(rename = "FAILED")]
    Failed,
}

impl StageVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            StageVerdict::Verified => "VERIFIED",
            StageVerdict::ContradictionReached => "CONTRADICTION-REACHED",
            StageVerdict::Failed => "FAILED",
        }
    }

    pub fn accepted(self) -> bool {
        self != StageVerdict::Failed
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FinalVerdict {
    #[serde(rename = "NONEXISTENT")]
    Nonexistent,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl FinalVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            FinalVerdict::Nonexistent => "NONEXISTENT",
            FinalVerdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageRecord {
    pub name: String,
    pub verdict: StageVerdict,
    pub summary: String,
    pub certificate: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplayReport {
    pub schema_version: String,
    pub stage_list: String,
    pub params: SrgParams,
    pub theta: i64,
    pub stages: Vec<StageRecord>,
    pub final_verdict: FinalVerdict,
}

impl ReplayReport {
    pub fn failing_stage(&self) -> Option<&StageRecord> {
        self.stages.iter().find(|s| !s.verdict.accepted())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayConfig {
    pub code_alphabet: usize,
    pub code_budget: u64,
}

impl Default for ReplayConfig {
    fn default() -> Self {
        ReplayConfig {
            code_alphabet: 3,
            code_budget: DEFAULT_BUDGET,
        }
    }
}

fn rj(r: &Rat) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("certificate serializes")
}

struct Outcome {
    verdict: StageVerdict,
    summary: String,
    certificate: Value,
}

fn ok(summary: impl Into<String>, certificate: Value) -> Outcome {
    Outcome {
        verdict: StageVerdict::Verified,
        summary: summary.into(),
        certificate,
    }
}

fn contradiction(summary: impl Into<String>, certificate: Value) -> Outcome {
    Outcome {
        verdict: StageVerdict::ContradictionReached,
        summary: summary.into(),
        certificate,
    }
}

fn failed(summary: impl Into<String>, certificate: Value) -> Outcome {
    Outcome {
        verdict: StageVerdict::Failed,
        summary: summary.into(),
        certificate,
    }
}

fn expect(cond: bool, pass: impl Into<String>, fail: impl Into<String>, certificate: Value) -> Outcome {
    if cond {
        ok(pass, certificate)
    } else {
        failed(fail, certificate)
    }
}

/// Two root-system vectors attached to second-layer vertices with `β`
/// common neighbours have inner product `3 - β`. Equal roots force β = 1
/// and opposite roots force β = 5; two vertices each adjacent to five of the
/// seven neighbours carried by a third meet in at least three of them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OppositeRootCase {
    pub beta_equal_roots: usize,
    pub beta_opposite_roots: usize,
    pub subset: usize,
    pub universe: usize,
    pub min_common: usize,
    pub verdict: StageVerdict,
}

pub fn opposite_root_case() -> OppositeRootCase {
    opposite_root_case_with(&InnerModel::srg76()).expect("endgame applies to srg(76,21,2,7)")
}

pub fn opposite_root_case_with(model: &InnerModel) -> Result<OppositeRootCase, ReplayError> {
    let same = circ_inner(model, CircRelation::Same, 0)?.value;
    let beta_equal = beta_for_inner(model, &same)?
        .ok_or_else(|| ReplayError::EndgameShape("no β gives equal roots".into()))?;
    let beta_opp = beta_for_inner(model, &-same)?
        .ok_or_else(|| ReplayError::EndgameShape("no β gives opposite roots".into()))?;
    let universe = model.params.mu as usize;
    let min_common = min_intersection(beta_opp, beta_opp, universe);
    let verdict = if min_common > beta_equal {
        StageVerdict::ContradictionReached
    } else {
        StageVerdict::Failed
    };
    Ok(OppositeRootCase {
        beta_equal_roots: beta_equal,
        beta_opposite_roots: beta_opp,
        subset: beta_opp,
        universe,
        min_common,
        verdict,
    })
}

fn run_stage(name: &str, model: &InnerModel, cfg: &ReplayConfig) -> Result<Outcome, ReplayError> {
    let p = model.params;
    Ok(match name {
        "params" => {
            let lhs = p.k * (p.k - p.lambda - 1);
            let rhs = (p.v - p.k - 1) * p.mu;
            expect(
                lhs == rhs,
                format!("k(k-λ-1) = (v-k-1)μ = {lhs}"),
                "parameter identity fails",
                json!({ "params": to_value(&p), "lhs": lhs, "rhs": rhs }),
            )
        }
        "spectrum" => {
            let s = spectrum(&p)?;
            let good = s.multiplicity_of(model.theta) == Some(model.multiplicity);
            expect(
                good && s.integral,
                format!(
                    "eigenvalues {}, {}, {} with multiplicities {}, {}, {}",
                    s.k, s.theta_plus, s.theta_minus, s.mult_k, s.mult_plus, s.mult_minus
                ),
                "spectrum does not match the model",
                to_value(&s),
            )
        }
        "feasibility" => {
            let r = feasibility_report(&p);
            expect(r.feasible(), "standard feasibility screens pass", "a feasibility screen fails", to_value(&r))
        }
        "cosines" => {
            let c = cosine_sequence(&p, model.theta)?;
            let res = c.residuals(&p);
            expect(
                res.iter().all(|r| *r == int(0)) && c == model.cosines,
                format!("θ = {}: {}", model.theta, fmt_cosines(&c)),
                "cosine recurrence fails",
                json!({ "cosines": to_value(&c), "residuals": res.iter().map(rj).collect::<Vec<_>>() }),
            )
        }
        "inner-tables" => {
            let entries: Vec<Value> = HatRelation::ALL
                .iter()
                .map(|&r| json!({ "relation": r.name(), "value": rj(&hat_inner(model, r)) }))
                .collect();
            let ortho = model.against_base(1) == int(0) && model.against_base(2) == int(0);
            expect(
                ortho,
                "hatted vectors are orthogonal to u; eight table entries computed",
                "hat transform is not orthogonal to u",
                json!({ "layer1": to_value(&model.layer1), "layer2": to_value(&model.layer2), "entries": entries }),
            )
        }
        "lemma-dimension" => {
            let mut rows = Vec::new();
            let mut good = true;
            for t in 3..=15usize {
                let d = det(&gram_path(t - 1));
                let g = cycle_gram(model, t);
                let rk = rank(&g);
                good &= d == int(t as i64) && rk == t - 1 && g == gram_cycle(t);
                rows.push(json!({ "t": t, "path_det": rj(&d), "cycle_rank": rk }));
            }
            expect(
                good,
                "a t-cycle of hatted vectors spans dimension t-1 for t = 3..15",
                "cycle Gram ranks deviate from t-1",
                Value::Array(rows),
            )
        }
        "lemma-three" => {
            let mut rows = Vec::new();
            let mut good = true;
            for t in 3..=21usize {
                match lemma_three(model, t) {
                    Ok(l) => {
                        good &= t % 3 == 0 && 3 * l.s == t;
                        rows.push(json!({ "t": t, "s": l.s }));
                    }
                    Err(ReplayError::Infeasible { s, .. }) => {
                        good &= t % 3 != 0;
                        rows.push(json!({ "t": t, "s": s.as_ref().map(rj), "infeasible": true }));
                    }
                    Err(e) => return Err(e),
                }
            }
            expect(good, "cycle lengths are t = 3s", "cycle lengths are not multiples of 3", Value::Array(rows))
        }
        "component-sizes" => {
            let four = lemma_three(model, 4);
            let three = lemma_three(model, 3)?;
            let good = matches!(four, Err(ReplayError::Infeasible { .. })) && three.s == 1;
            expect(
                good,
                "a 3-path in M would put a 4-cycle in a neighbourhood, and a triangle carries one mark, \
                 so components of M have size 1 or 2",
                "component size argument fails",
                json!({
                    "four_cycle": four.as_ref().err().map(|e| e.to_string()),
                    "triangle_marks": three.s,
                }),
            )
        }
        "component-bound" => {
            let b = component_size_bound(model)?;
            expect(
                b.max_k <= 1,
                format!("at most {} two-vertex component in M", b.max_k),
                format!("{} two-vertex components fit", b.max_k),
                to_value(&b),
            )
        }
        "cycle-length-bound" => {
            let k = p.k as usize;
            let dim = model.multiplicity as usize - 1;
            let min_cycles = k.saturating_sub(dim);
            let max_t = k - 3 * (min_cycles.max(1) - 1);
            let max_s = max_t / 3;
            expect(
                min_cycles >= 1 && max_t == 15 && max_s == 5,
                format!("at least {min_cycles} cycles, so t ≤ {max_t} and s ≤ {max_s}"),
                "cycle length bound differs",
                json!({ "span_dimension": dim, "min_cycles": min_cycles, "max_t": max_t, "max_s": max_s }),
            )
        }
        "lemma-lowest" => {
            let mut certs = Vec::new();
            let mut good = true;
            for s in 1..=5 {
                let m = min_projection(model, s, false)?;
                good &= m.certifies() && m.min_value == rat(s as i64, 2);
                certs.push(to_value(&m));
            }
            expect(
                good,
                "min (p,p) = s/2, attained only at evenly spaced marks, s = 1..5",
                "projection minimum differs from s/2",
                Value::Array(certs),
            )
        }
        "lemma-projections" => {
            let mut certs = Vec::new();
            let mut good = true;
            for s in 2..=5 {
                let m = min_projection(model, s, true)?;
                good &= m.certifies() && m.min_value == rat(s as i64 + 3, 2);
                certs.push(to_value(&m));
            }
            expect(
                good,
                "with an adjacent pair, min (p,p) = (s+3)/2, attained only with gaps of 2, s = 2..5",
                "forced-pair minimum differs from (s+3)/2",
                Value::Array(certs),
            )
        }
        "lemma-cliques" => {
            let mut certs = Vec::new();
            let mut good = true;
            for s in 2..=5 {
                let c = lemma_cliques_bound(model, s)?;
                good &= c.contradiction;
                certs.push(to_value(&c));
            }
            if good {
                contradiction("(ŵ,ŵ') ≥ -1 > -7/4 for s = 2..5: every neighbourhood cycle is a triangle", Value::Array(certs))
            } else {
                failed("clique inequality does not separate", Value::Array(certs))
            }
        }
        "dimensions" => {
            let d = post_clique_dimensions(model)?;
            expect(
                d.gram_rank == d.dim_s,
                format!("dim S = {}, dim T = {}", d.dim_s, d.dim_t),
                "rank of the triangle span differs from dim S",
                to_value(&d),
            )
        }
        "circ-table" => {
            let same = circ_inner(model, CircRelation::Same, 0)?;
            let adj = circ_inner(model, CircRelation::Adjacent, 0)?;
            let (lo, hi) = same.admissible;
            let mut non = Vec::new();
            let mut good = same.value == int(2);
            for beta in lo..=hi {
                let v = circ_inner(model, CircRelation::Nonadjacent, beta)?.value;
                good &= v == int(3 - beta as i64);
                non.push(json!({ "beta": beta, "value": rj(&v) }));
            }
            expect(
                good && adj.value == int(-1),
                format!("(w°,w°) = 2, adjacent -1, nonadjacent 3-β with {lo} ≤ β ≤ {hi}"),
                "w° table differs",
                json!({ "same": rj(&same.value), "adjacent": rj(&adj.value), "nonadjacent": non, "admissible": [lo, hi] }),
            )
        }
        "root-system-maximum" => {
            let d = post_clique_dimensions(model)?;
            let (max, best) = max_root_system(d.dim_t)?;
            let lat = LatticeGram::new(cartan(RootType::D, 4).expect("D4"))?;
            let roots = short_vectors(&lat, &int(2))?;
            let class = classify(&roots, &lat)?;
            expect(
                max == 24 && roots.len() == 24,
                format!("largest root system in dimension {} has {max} roots ({} pairs)", d.dim_t, max / 2),
                "root system maximum differs",
                json!({ "dimension": d.dim_t, "max_roots": max, "pairs": max / 2, "maximizer": to_value(&best), "d4_check": to_value(&class) }),
            )
        }
        "pigeonhole" => {
            let population = (p.v - p.k - 1) as usize;
            let d = post_clique_dimensions(model)?;
            let pairs = max_root_system(d.dim_t)?.0 / 2;
            let load = pigeonhole_pairs(population, pairs)?;
            expect(
                load >= 5,
                format!("{population} vertices over {pairs} root pairs: some pair carries {load}"),
                "pigeonhole bound too weak",
                json!({ "population": population, "buckets": pairs, "max_load": load }),
            )
        }
        "opposite-root-case" => {
            let c = opposite_root_case_with(model)?;
            let summary = format!(
                "{}-subsets of a {}-set share ≥ {} > {} elements: the five vertices share one root",
                c.subset, c.universe, c.min_common, c.beta_equal_roots
            );
            if c.verdict.accepted() {
                contradiction(summary, to_value(&c))
            } else {
                failed(summary, to_value(&c))
            }
        }
        "agreement-code-search" => {
            let triangles = (p.k / 3) as usize;
            let mut sc = CodeSearchConfig::new(5, triangles, cfg.code_alphabet, 1);
            sc.budget = cfg.code_budget;
            let cert_base = json!({ "n_words": 5, "length": triangles, "alphabet": cfg.code_alphabet, "agreement": 1 });
            match run_code_search(&sc) {
                Ok(CodeSearchOutcome::Infeasible { nodes }) => {
                    let mut c = cert_base;
                    c["nodes"] = json!(nodes);
                    c["outcome"] = json!("INFEASIBLE");
                    contradiction(
                        format!("no 5 words of length {triangles} over {} letters agree pairwise exactly once ({nodes} nodes)", cfg.code_alphabet),
                        c,
                    )
                }
                Ok(CodeSearchOutcome::Feasible { words, nodes }) => {
                    let mut c = cert_base;
                    c["nodes"] = json!(nodes);
                    c["outcome"] = json!("FEASIBLE");
                    c["words"] = json!(words);
                    failed("a compatible code exists", c)
                }
                Err(e) => failed(e.to_string(), cert_base),
            }
        }
        other => return Err(ReplayError::UnknownStage(other.to_string())),
    })
}

fn record(name: &str, model: &InnerModel, cfg: &ReplayConfig) -> Result<StageRecord, ReplayError> {
    let o = match run_stage(name, model, cfg) {
        Ok(o) => o,
        Err(ReplayError::UnknownStage(s)) => return Err(ReplayError::UnknownStage(s)),
        Err(e) => failed(e.to_string(), json!({ "error": e.to_string() })),
    };
    Ok(StageRecord {
        name: name.to_string(),
        verdict: o.verdict,
        summary: o.summary,
        certificate: o.certificate,
    })
}

fn finish(model: &InnerModel, stages: Vec<StageRecord>) -> ReplayReport {
    let final_verdict = if stages.iter().all(|s| s.verdict.accepted()) {
        FinalVerdict::Nonexistent
    } else {
        FinalVerdict::Inconclusive
    };
    ReplayReport {
        schema_version: SCHEMA_VERSION.to_string(),
        stage_list: STAGE_LIST.to_string(),
        params: model.params,
        theta: model.theta,
        stages,
        final_verdict,
    }
}

pub fn replay_all() -> ReplayReport {
    replay_with(&ReplayConfig::default())
}

pub fn replay_with(cfg: &ReplayConfig) -> ReplayReport {
    let model = InnerModel::srg76();
    let stages = STAGES
        .iter()
        .map(|s| record(s, &model, cfg).expect("stage names are known"))
        .collect();
    finish(&model, stages)
}

/// A report holding one stage. Its final verdict reflects that stage only.
pub fn replay_stage(name: &str, cfg: &ReplayConfig) -> Result<ReplayReport, ReplayError> {
    let model = InnerModel::srg76();
    let rec = record(name, &model, cfg)?;
    Ok(finish(&model, vec![rec]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn opposite_roots() {
        let c = opposite_root_case();
        assert_eq!((c.beta_equal_roots, c.beta_opposite_roots, c.min_common), (1, 5, 3));
        assert_eq!(c.verdict, StageVerdict::ContradictionReached);
    }

    #[test]
    fn unknown_stage() {
        assert_eq!(
            replay_stage("nope", &ReplayConfig::default()).unwrap_err(),
            ReplayError::UnknownStage("nope".into())
        );
    }

    #[test]
    fn each_cheap_stage_passes() {
        for name in STAGES.iter().filter(|&&s| s != "agreement-code-search") {
            let r = replay_stage(name, &ReplayConfig::default()).unwrap();
            assert_eq!(r.final_verdict, FinalVerdict::Nonexistent, "{name}: {:?}", r.stages[0]);
        }
    }
}
