//! Exact replay of the non-existence argument for srg(76,21,2,7).
//!
//! Every step is computed from an [`InnerModel`] (the two hat transforms on
//! top of a cosine sequence) and reported with the exact data it rests on.

mod codes;
mod lemmas;
mod model;
mod report;

use thiserror::Error;

use crate::exactlin::{fmt_rat, LinError, Rat};
use crate::graphs::MarkedCycle;
use crate::params::ParamsError;
use crate::roots::RootsError;

pub use codes::{
    agreement_code_search, run_code_search, verify_agreement_code, CodeSearchConfig, CodeSearchOutcome,
    DEFAULT_BUDGET,
};
pub use lemmas::{
    arrangement_projection, beta_for_inner, circ_inner, clique_dimensions, component_size_bound,
    component_size_bound_with_norm, cycle_gram, cycle_length_for, has_pair_pattern, lemma_cliques_bound,
    lemma_three, min_intersection, min_projection, pigeonhole_pairs, post_clique_dimensions, CircRelation,
    CircValue, CliquesCertificate, ComponentBound, Dimensions, LemmaThree, MinProjection, ProjectionCertificate,
};
pub use model::{build_inner_model, hat_inner, HatRelation, HatTransform, InnerModel};
pub use report::{
    opposite_root_case, opposite_root_case_with, replay_all, replay_stage, replay_with, stage_names, FinalVerdict,
    ReplayConfig, ReplayReport, StageRecord, StageVerdict, STAGE_LIST,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("cosine {} makes the hat transform degenerate", fmt_rat(.0))]
    DegenerateCosine(Rat),
    #[error("scale factor squared {} is not a rational square", fmt_rat(.0))]
    NonRationalScale(Rat),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("no cycle of length {t} fits (forced mark count {})", .s.as_ref().map_or("undefined".to_string(), fmt_rat))]
    Infeasible { t: usize, s: Option<Rat> },
    #[error("no number of two-vertex components satisfies the norm bound")]
    NoAdmissibleComponentCount,
    #[error("marked cycle {0:?} is inconsistent with the cross table")]
    InconsistentArrangement(MarkedCycle),
    #[error("no admissible arrangement of {s} marks on a {t}-cycle")]
    NoArrangements { s: usize, t: usize },
    #[error("degree {0} is not divisible by 3")]
    NotDivisible(usize),
    #[error("span of dimension {dim_s} does not fit in an eigenspace of dimension {multiplicity}")]
    DimensionOverflow { dim_s: usize, multiplicity: usize },
    #[error("β = {beta} lies outside the admissible range {lo}..={hi}")]
    BetaOutOfRange { beta: usize, lo: usize, hi: usize },
    #[error("endgame does not apply: {0}")]
    EndgameShape(String),
    #[error("search exceeded its budget of {nodes} nodes")]
    ResourceLimit { nodes: u64 },
    #[error("unknown stage {0:?}")]
    UnknownStage(String),
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error(transparent)]
    Roots(#[from] RootsError),
}
