//! Neighbourhood and second-layer lemmas: cycle lengths, component sizes,
//! projection minima, and the inequality that forces every neighbourhood
//! cycle to be a triangle.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::model::{hat_inner, HatRelation, InnerModel};
use super::ReplayError;
use crate::exactlin::{dot, int, nullspace, projection_sq_norm, solve, LinError, Rat, RatMatrix};
use crate::graphs::MarkedCycle;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaThree {
    pub t: usize,
    pub s: usize,
    /// `(v̂, w)` for `v` adjacent to `w`.
    #[serde(with = "crate::exactlin::serde_rat")]
    pub marked_value: Rat,
    #[serde(with = "crate::exactlin::serde_rat")]
    pub unmarked_value: Rat,
}

/// The hatted cycle vectors sum to zero, so `s·A + (t-s)·B = 0` where `A`,
/// `B` are the inner products of a marked / unmarked hatted vector with `w`.
/// Returns the forced number of marks `s`.
pub fn lemma_three(model: &InnerModel, t: usize) -> Result<LemmaThree, ReplayError> {
    let a = model.layer1_against_raw(true);
    let b = model.layer1_against_raw(false);
    let denom = &b - &a;
    if denom.is_zero() {
        return Err(ReplayError::Infeasible { t, s: None });
    }
    let s = int(t as i64) * &b / denom;
    if !s.is_integer() || s.is_negative() || s > int(t as i64) {
        return Err(ReplayError::Infeasible { t, s: Some(s) });
    }
    Ok(LemmaThree {
        t,
        s: s.to_integer().to_usize().expect("small"),
        marked_value: a,
        unmarked_value: b,
    })
}

/// Cycle length carrying `s` marks, inverting [`lemma_three`].
pub fn cycle_length_for(model: &InnerModel, s: usize) -> Result<usize, ReplayError> {
    let a = model.layer1_against_raw(true);
    let b = model.layer1_against_raw(false);
    let t = int(s as i64) * (&b - &a) / &b;
    if !t.is_integer() || !t.is_positive() {
        return Err(ReplayError::InvalidInput(format!("no cycle length carries {s} marks")));
    }
    Ok(t.to_integer().to_usize().expect("small"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentBound {
    pub max_k: usize,
    pub mu: usize,
    /// Squared projection of `ŵ` onto one isolated neighbour.
    #[serde(with = "crate::exactlin::serde_rat")]
    pub single: Rat,
    /// Squared projection of `ŵ` onto the span of an adjacent neighbour pair.
    #[serde(with = "crate::exactlin::serde_rat")]
    pub pair: Rat,
    #[serde(with = "crate::exactlin::serde_rat")]
    pub norm: Rat,
}

fn single_and_pair(model: &InnerModel) -> (Rat, Rat) {
    let n1 = hat_inner(model, HatRelation::L1Same);
    let e = hat_inner(model, HatRelation::L1Adjacent);
    let a = hat_inner(model, HatRelation::CrossAdjacent);
    let single = projection_sq_norm(&RatMatrix::diag(std::slice::from_ref(&n1)), std::slice::from_ref(&a)).expect("positive norm");
    let pair_gram = RatMatrix::from_rows(vec![vec![n1.clone(), e.clone()], vec![e, n1]]).unwrap();
    let pair = projection_sq_norm(&pair_gram, &[a.clone(), a]).expect("pair Gram is definite");
    (single, pair)
}

/// Largest number `k` of two-vertex components among the μ neighbours of a
/// second-layer vertex compatible with Bessel's inequality:
/// `k·pair + (μ - 2k)·single ≤ (ŵ, ŵ)`.
pub fn component_size_bound(model: &InnerModel) -> Result<ComponentBound, ReplayError> {
    component_size_bound_with_norm(model, &model.layer2.sq_norm)
}

/// [`component_size_bound`] against an arbitrary second-layer norm.
pub fn component_size_bound_with_norm(model: &InnerModel, norm: &Rat) -> Result<ComponentBound, ReplayError> {
    let (single, pair) = single_and_pair(model);
    let mu = model.params.mu as usize;
    let fits = |k: usize| int(k as i64) * &pair + int((mu - 2 * k) as i64) * &single <= *norm;
    let max_k = (0..=mu / 2)
        .filter(|&k| fits(k))
        .max()
        .ok_or(ReplayError::NoAdmissibleComponentCount)?;
    Ok(ComponentBound {
        max_k,
        mu,
        single,
        pair,
        norm: norm.clone(),
    })
}

/// Gram matrix of the hatted vectors around a neighbourhood cycle of length `t`.
pub fn cycle_gram(model: &InnerModel, t: usize) -> RatMatrix {
    let same = hat_inner(model, HatRelation::L1Same);
    let adj = hat_inner(model, HatRelation::L1Adjacent);
    let non = hat_inner(model, HatRelation::L1Nonadjacent);
    RatMatrix::from_fn(t, |i, j| {
        let d = i.abs_diff(j);
        if d == 0 {
            same.clone()
        } else if d == 1 || d == t - 1 {
            adj.clone()
        } else {
            non.clone()
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectionCertificate {
    pub t: usize,
    pub marks: MarkedCycle,
    pub forced_pair: bool,
    /// `(p, p)` for the projection `p` of `ŵ` onto the cycle space.
    #[serde(with = "crate::exactlin::serde_rat")]
    pub value: Rat,
    /// Closed-form lower bound for arrangements of this kind.
    #[serde(with = "crate::exactlin::serde_rat")]
    pub lower_bound: Rat,
    /// Whether `value` attains `lower_bound`.
    pub optimal: bool,
    /// Coefficients of `p` in the hatted cycle vectors. Defined up to the
    /// all-ones kernel; normalized to vanish just after the longest run of
    /// marks.
    #[serde(with = "crate::exactlin::serde_rat::vec")]
    pub coefficient_vector: Vec<Rat>,
}

fn bound_for(model: &InnerModel, s: usize, forced_pair: bool) -> Rat {
    let (single, pair) = single_and_pair(model);
    if !forced_pair {
        return int(s as i64) * single;
    }
    // a forced pair plus s-1 runs of two consecutive unmarked vertices
    let n1 = hat_inner(model, HatRelation::L1Same);
    let e = hat_inner(model, HatRelation::L1Adjacent);
    let b = hat_inner(model, HatRelation::CrossNonadjacent);
    let run_gram = RatMatrix::from_rows(vec![vec![n1.clone(), e.clone()], vec![e, n1]]).unwrap();
    let run = projection_sq_norm(&run_gram, &[b.clone(), b]).expect("run Gram is definite");
    pair + int(s as i64 - 1) * run
}

/// Exact `(p, p)` for one marked arrangement on a neighbourhood cycle.
pub fn arrangement_projection(
    model: &InnerModel,
    mc: &MarkedCycle,
    pair_positions: Option<(usize, usize)>,
) -> Result<ProjectionCertificate, ReplayError> {
    let t = mc.t();
    if t < 3 {
        return Err(ReplayError::InvalidInput("cycle length must be at least 3".into()));
    }
    if let Some((i, j)) = pair_positions {
        let adjacent = (i + 1) % t == j % t || (j + 1) % t == i % t;
        if !adjacent || !mc.is_marked(i) || !mc.is_marked(j) {
            return Err(ReplayError::InvalidInput(format!(
                "({i}, {j}) is not an adjacent pair of marks"
            )));
        }
    }
    let gram = cycle_gram(model, t);
    let a = hat_inner(model, HatRelation::CrossAdjacent);
    let b = hat_inner(model, HatRelation::CrossNonadjacent);
    let rhs: Vec<Rat> = (0..t)
        .map(|i| if mc.is_marked(i) { a.clone() } else { b.clone() })
        .collect();
    let mut x = solve(&gram, &rhs).map_err(|e| match e {
        LinError::InconsistentSystem => ReplayError::InconsistentArrangement(mc.clone()),
        other => ReplayError::Lin(other),
    })?;

    let kernel = nullspace(&gram);
    if kernel.len() == 1 {
        let anchor = mc
            .components()
            .iter()
            .max_by_key(|c| (c.len(), std::cmp::Reverse(c[0])))
            .map_or(0, |run| (run.last().unwrap() + 1) % t);
        let k = &kernel[0];
        if !k[anchor].is_zero() {
            let shift = &x[anchor] / &k[anchor];
            for (xi, ki) in x.iter_mut().zip(k) {
                *xi -= &shift * ki;
            }
        }
    }
    let value = dot(&rhs, &x);
    let forced_pair = pair_positions.is_some();
    let lower_bound = bound_for(model, mc.s(), forced_pair);
    Ok(ProjectionCertificate {
        t,
        marks: mc.clone(),
        forced_pair,
        optimal: value == lower_bound,
        value,
        lower_bound,
        coefficient_vector: x,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinProjection {
    pub s: usize,
    pub t: usize,
    pub forced_pair: bool,
    #[serde(with = "crate::exactlin::serde_rat")]
    pub min_value: Rat,
    #[serde(with = "crate::exactlin::serde_rat")]
    pub closed_form: Rat,
    /// Minimizing arrangements, one per dihedral class.
    pub argmin: Vec<ProjectionCertificate>,
    pub subsets_enumerated: usize,
    pub classes_checked: usize,
}

impl MinProjection {
    /// The minimum equals the closed form and every minimizer has the
    /// extremal shape: evenly spaced marks, or the forced pair followed by
    /// unmarked runs of length two.
    pub fn certifies(&self) -> bool {
        self.min_value == self.closed_form
            && !self.argmin.is_empty()
            && self.argmin.iter().all(|c| {
                if self.forced_pair {
                    has_pair_pattern(&c.marks)
                } else {
                    c.marks.is_evenly_spaced()
                }
            })
    }
}

/// One pair of adjacent marks, all other marks isolated, and every gap
/// between consecutive marks of length two except the two gaps bordering
/// the pair, which have length three.
pub fn has_pair_pattern(mc: &MarkedCycle) -> bool {
    let comps = mc.components();
    let Some(pi) = comps.iter().position(|c| c.len() == 2) else {
        return false;
    };
    if comps.iter().filter(|c| c.len() != 1).count() != 1 {
        return false;
    }
    let gaps = mc.gaps();
    let c = comps.len();
    if c == 1 {
        // only the pair: the 3s - 2 = 4 remaining vertices form one gap
        return gaps[0] == mc.t() - 2 && mc.t() == 6;
    }
    gaps.iter().enumerate().all(|(i, &g)| {
        let borders_pair = i == pi || (i + 1) % c == pi;
        g == if borders_pair { 3 } else { 2 }
    })
}

fn combinations(n: usize, r: usize, mut f: impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == r {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < r - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, r, cur, f);
            cur.pop();
        }
    }
    rec(0, n, r, &mut Vec::with_capacity(r), &mut f);
}

/// Exhaustive minimum of `(p, p)` over all placements of `s` marks on the
/// cycle of length `t` dictated by [`lemma_three`]. With `forced_pair`, only
/// placements consisting of one adjacent pair and isolated marks count.
pub fn min_projection(model: &InnerModel, s: usize, forced_pair: bool) -> Result<MinProjection, ReplayError> {
    if s == 0 {
        return Err(ReplayError::InvalidInput("need at least one mark".into()));
    }
    let t = cycle_length_for(model, s)?;
    if t < 3 {
        return Err(ReplayError::InvalidInput(format!("cycle length {t} is too short")));
    }
    let mut classes = BTreeSet::new();
    let mut subsets = 0;
    combinations(t, s, |marks| {
        subsets += 1;
        let mc = MarkedCycle::new(t, marks.iter().copied());
        let sizes = mc.component_sizes();
        let admissible = if forced_pair {
            sizes.iter().filter(|&&c| c == 2).count() == 1 && sizes.iter().all(|&c| c <= 2)
        } else {
            true
        };
        if admissible {
            classes.insert(mc.canonical());
        }
    });
    if classes.is_empty() {
        return Err(ReplayError::NoArrangements { s, t });
    }
    let mut certs = Vec::with_capacity(classes.len());
    for mc in &classes {
        let pair = if forced_pair {
            mc.components()
                .into_iter()
                .find(|c| c.len() == 2)
                .map(|c| (c[0], c[1]))
        } else {
            None
        };
        certs.push(arrangement_projection(model, mc, pair)?);
    }
    let min_value = certs.iter().map(|c| c.value.clone()).min().expect("nonempty");
    let closed_form = bound_for(model, s, forced_pair);
    let argmin = certs.into_iter().filter(|c| c.value == min_value).collect();
    Ok(MinProjection {
        s,
        t,
        forced_pair,
        min_value,
        closed_form,
        argmin,
        subsets_enumerated: subsets,
        classes_checked: classes.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliquesCertificate {
    pub s: usize,
    pub t: usize,
    #[serde(with = "crate::exactlin::serde_rat")]
    pub min_inner: Rat,
    #[serde(with = "crate::exactlin::serde_rat")]
    pub enumerated_min: Rat,
    pub patterns_enumerated: u64,
    /// `(ŵ, ŵ')` that adjacent second-layer vertices must have.
    #[serde(with = "crate::exactlin::serde_rat")]
    pub required: Rat,
    #[serde(with = "crate::exactlin::serde_rat")]
    pub gap: Rat,
    pub contradiction: bool,
    pub assumption: String,
}

/// Group of cycle positions sharing a coefficient in `p`, with the adjacency
/// patterns `w'` may have on it.
struct Group {
    positions: Vec<usize>,
    allowed: Vec<Vec<bool>>,
}

/// Lower bound on `(ŵ, ŵ')` when `w` sees a forced pair on a cycle of length
/// `3s` and `w'` is the next vertex after `w` on a long cycle in the
/// neighbourhood of the pair's first vertex.
///
/// `ŵ` lies in the span of the first layer, so `(ŵ, ŵ') = Σ (p_j, ŵ')`.
/// On the pair's cycle `w'` is adjacent to the first pair vertex only and to
/// at most one vertex of each half-pair; every other neighbour of `w`
/// contributes independently. The closed form takes each group's minimum;
/// an independent sweep over all adjacency patterns confirms it.
pub fn lemma_cliques_bound(model: &InnerModel, s: usize) -> Result<CliquesCertificate, ReplayError> {
    if s < 2 {
        return Err(ReplayError::InvalidInput("the pair lemma needs s ≥ 2".into()));
    }
    let best = min_projection(model, s, true)?;
    let cert = best
        .argmin
        .first()
        .ok_or(ReplayError::NoArrangements { s, t: best.t })?;
    let t = cert.t;
    let x = &cert.coefficient_vector;
    let a = hat_inner(model, HatRelation::CrossAdjacent);
    let b = hat_inner(model, HatRelation::CrossNonadjacent);
    let outside_coef = &a / hat_inner(model, HatRelation::L1Same);
    let outside = model.params.mu as usize - s;

    let pair = cert
        .marks
        .components()
        .into_iter()
        .find(|c| c.len() == 2)
        .expect("forced pair present");
    let mut groups = vec![Group {
        positions: pair.clone(),
        allowed: vec![vec![true, false]],
    }];
    // remaining nonzero coefficients come in runs of equal values (half-pairs)
    let mut i = 0;
    while i < t {
        if pair.contains(&i) || x[i].is_zero() {
            i += 1;
            continue;
        }
        let mut run = vec![i];
        while i + 1 < t && !pair.contains(&(i + 1)) && x[i + 1] == x[i] {
            i += 1;
            run.push(i);
        }
        let allowed = (0..1u32 << run.len())
            .map(|m| (0..run.len()).map(|j| m >> j & 1 == 1).collect::<Vec<bool>>())
            .filter(|p| p.iter().filter(|&&q| q).count() <= 1)
            .collect();
        groups.push(Group { positions: run, allowed });
        i += 1;
    }

    let contribution = |coef: &Rat, adjacent: bool| coef * if adjacent { &a } else { &b };
    let mut closed = Rat::zero();
    for g in &groups {
        closed += g
            .allowed
            .iter()
            .map(|p| {
                g.positions
                    .iter()
                    .zip(p)
                    .fold(Rat::zero(), |acc, (&pos, &adj)| acc + contribution(&x[pos], adj))
            })
            .min()
            .expect("at least one pattern");
    }
    let out_min = std::cmp::min(contribution(&outside_coef, true), contribution(&outside_coef, false));
    closed += int(outside as i64) * out_min;

    // brute force over every adjacency pattern on the cycle and outside,
    // scaled to integers
    let mut terms: Vec<(Rat, Rat)> = x.iter().map(|c| (contribution(c, true), contribution(c, false))).collect();
    terms.extend((0..outside).map(|_| (contribution(&outside_coef, true), contribution(&outside_coef, false))));
    let scale = terms
        .iter()
        .flat_map(|(p, q)| [p.denom().clone(), q.denom().clone()])
        .fold(BigInt::one(), |acc, d| acc.lcm(&d));
    let scaled: Vec<(i64, i64)> = terms
        .iter()
        .map(|(p, q)| {
            let f = |r: &Rat| (r * Rat::from_integer(scale.clone())).to_integer().to_i64().expect("small");
            (f(p), f(q))
        })
        .collect();
    let admissible = |mask: u64| {
        groups.iter().all(|g| {
            let pat: Vec<bool> = g.positions.iter().map(|&p| mask >> p & 1 == 1).collect();
            g.allowed.contains(&pat)
        })
    };
    let total_bits = scaled.len();
    let mut enumerated_min: Option<i64> = None;
    let mut patterns = 0u64;
    for mask in 0..1u64 << total_bits {
        if !admissible(mask) {
            continue;
        }
        patterns += 1;
        let v: i64 = scaled
            .iter()
            .enumerate()
            .map(|(j, &(on, off))| if mask >> j & 1 == 1 { on } else { off })
            .sum();
        enumerated_min = Some(enumerated_min.map_or(v, |m| m.min(v)));
    }
    let enumerated_min = Rat::new(BigInt::from(enumerated_min.expect("some pattern")), scale);

    let required = hat_inner(model, HatRelation::L2Adjacent);
    let gap = &closed - &required;
    Ok(CliquesCertificate {
        s,
        t,
        contradiction: gap.is_positive() && enumerated_min == closed,
        min_inner: closed,
        enumerated_min,
        patterns_enumerated: patterns,
        required,
        gap,
        assumption: "a cycle of length ≥ 6 in the neighbourhood of the first pair vertex \
                     supplies adjacent w, w' at distance two from u, with w seeing the pair \
                     and w' seeing only its first vertex"
            .into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Dimensions {
    pub triangles: usize,
    pub dim_s: usize,
    pub dim_t: usize,
    /// Rank of the Gram matrix of `u` and its neighbours arranged in triangles.
    pub gram_rank: usize,
}

/// `dim S = 1 + 2·(k/3)` once the neighbourhood is `k/3` triangles, and
/// `dim T = multiplicity - dim S`.
pub fn clique_dimensions(k: usize, multiplicity: usize) -> Result<(usize, usize), ReplayError> {
    if !k.is_multiple_of(3) {
        return Err(ReplayError::NotDivisible(k));
    }
    let dim_s = 1 + 2 * (k / 3);
    let dim_t = multiplicity
        .checked_sub(dim_s)
        .ok_or(ReplayError::DimensionOverflow { dim_s, multiplicity })?;
    Ok((dim_s, dim_t))
}

pub fn post_clique_dimensions(model: &InnerModel) -> Result<Dimensions, ReplayError> {
    let k = model.params.k as usize;
    let (dim_s, dim_t) = clique_dimensions(k, model.multiplicity as usize)?;
    let c = &model.cosines;
    let gram = RatMatrix::from_fn(k + 1, |i, j| {
        if i == j {
            c.w0.clone()
        } else if i == 0 || j == 0 || (i - 1) / 3 == (j - 1) / 3 {
            c.w1.clone()
        } else {
            c.w2.clone()
        }
    });
    Ok(Dimensions {
        triangles: k / 3,
        dim_s,
        dim_t,
        gram_rank: crate::exactlin::rank(&gram),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CircRelation {
    Same,
    Adjacent,
    Nonadjacent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CircValue {
    #[serde(with = "crate::exactlin::serde_rat")]
    pub value: Rat,
    /// Range of common-neighbour counts β compatible with `|(w°, w'°)| ≤ 2`.
    pub admissible: (usize, usize),
}

/// Ingredients of the rescaled residual vectors `w°`: the projection onto
/// the triangles' span is `c·Σ x̂` with one `x` per triangle.
struct Endgame {
    triangles: usize,
    scale: Rat,
    same_vertex: Rat,
    other_vertex: Rat,
    norm: Rat,
}

fn endgame(model: &InnerModel) -> Result<Endgame, ReplayError> {
    let k = model.params.k as usize;
    let mu = model.params.mu as usize;
    if !k.is_multiple_of(3) || mu != k / 3 {
        return Err(ReplayError::EndgameShape(format!(
            "need μ = k/3 neighbours, one per triangle; have k = {k}, μ = {mu}"
        )));
    }
    let n1 = hat_inner(model, HatRelation::L1Same);
    let coef = hat_inner(model, HatRelation::CrossAdjacent) / &n1;
    let same_vertex = &coef * &coef * &n1;
    let other_vertex = &coef * &coef * hat_inner(model, HatRelation::L1Adjacent);
    let residual = &model.layer2.sq_norm - int(mu as i64) * &same_vertex;
    if !residual.is_positive() {
        return Err(ReplayError::EndgameShape("no residual outside the triangles".into()));
    }
    let norm = int(2);
    Ok(Endgame {
        triangles: mu,
        scale: &norm / residual,
        same_vertex,
        other_vertex,
        norm,
    })
}

fn circ_value(e: &Endgame, model: &InnerModel, relation: CircRelation, beta: usize) -> Rat {
    let full = match relation {
        CircRelation::Same => return e.norm.clone(),
        CircRelation::Adjacent => hat_inner(model, HatRelation::L2Adjacent),
        CircRelation::Nonadjacent => hat_inner(model, HatRelation::L2Nonadjacent),
    };
    let projected = int(beta as i64) * &e.same_vertex + int((e.triangles - beta) as i64) * &e.other_vertex;
    &e.scale * (full - projected)
}

/// `(w°, w'°)` for two second-layer vertices with `beta` common neighbours
/// among the neighbours of `u`. Adjacent vertices share exactly one, the
/// third vertex of their line.
pub fn circ_inner(model: &InnerModel, relation: CircRelation, beta: usize) -> Result<CircValue, ReplayError> {
    let e = endgame(model)?;
    let admissible = {
        let ok: Vec<usize> = (0..=e.triangles)
            .filter(|&b| circ_value(&e, model, CircRelation::Nonadjacent, b).abs() <= e.norm)
            .collect();
        (*ok.first().unwrap_or(&0), *ok.last().unwrap_or(&0))
    };
    let beta = match relation {
        CircRelation::Same => e.triangles,
        CircRelation::Adjacent => 1,
        CircRelation::Nonadjacent => {
            if beta < admissible.0 || beta > admissible.1 {
                return Err(ReplayError::BetaOutOfRange {
                    beta,
                    lo: admissible.0,
                    hi: admissible.1,
                });
            }
            beta
        }
    };
    Ok(CircValue {
        value: circ_value(&e, model, relation, beta),
        admissible,
    })
}

/// Common-neighbour count β at which `(w°, w'°)` equals `target`.
pub fn beta_for_inner(model: &InnerModel, target: &Rat) -> Result<Option<usize>, ReplayError> {
    let e = endgame(model)?;
    Ok((0..=e.triangles).find(|&b| circ_value(&e, model, CircRelation::Nonadjacent, b) == *target))
}

/// Guaranteed maximum bucket load, `⌈population / buckets⌉`.
pub fn pigeonhole_pairs(population: usize, buckets: usize) -> Result<usize, ReplayError> {
    if population == 0 || buckets == 0 {
        return Err(ReplayError::InvalidInput("pigeonhole needs positive inputs".into()));
    }
    Ok(population.div_ceil(buckets))
}

/// Least possible intersection of two subsets of sizes `a`, `b` of a set of size `universe`.
pub fn min_intersection(a: usize, b: usize, universe: usize) -> usize {
    (a + b).saturating_sub(universe)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;

    fn m() -> InnerModel {
        InnerModel::srg76()
    }

    #[test]
    fn lemma_three_examples() {
        assert_eq!(lemma_three(&m(), 6).unwrap().s, 2);
        assert_eq!(lemma_three(&m(), 9).unwrap().s, 3);
        assert_eq!(
            lemma_three(&m(), 7),
            Err(ReplayError::Infeasible { t: 7, s: Some(rat(7, 3)) })
        );
        let c = lemma_three(&m(), 3).unwrap();
        assert_eq!((c.marked_value, c.unmarked_value), (rat(-4, 9), rat(2, 9)));
        assert!(lemma_three(&m(), 4).is_err());
    }

    #[test]
    fn component_bound_examples() {
        let b = component_size_bound(&m()).unwrap();
        assert_eq!((b.max_k, b.single.clone(), b.pair.clone()), (1, rat(1, 2), int(2)));
        assert_eq!(component_size_bound_with_norm(&m(), &rat(7, 2)).unwrap().max_k, 0);
        assert_eq!(component_size_bound_with_norm(&m(), &rat(11, 2)).unwrap().max_k, 2);
        assert_eq!(
            component_size_bound_with_norm(&m(), &int(3)),
            Err(ReplayError::NoAdmissibleComponentCount)
        );
    }

    #[test]
    fn arrangement_examples() {
        let c = arrangement_projection(&m(), &MarkedCycle::new(3, [0]), None).unwrap();
        assert_eq!(c.value, rat(1, 2));
        assert!(c.optimal);
        let c = arrangement_projection(&m(), &MarkedCycle::new(6, [0, 3]), None).unwrap();
        assert_eq!(c.value, int(1));
        assert_eq!(
            c.coefficient_vector,
            vec![rat(-1, 2), int(0), int(0), rat(-1, 2), int(0), int(0)]
        );
        let c = arrangement_projection(&m(), &MarkedCycle::new(6, [0, 2]), None).unwrap();
        assert!(c.value > int(1));
        assert!(!c.optimal);
    }

    #[test]
    fn arrangement_errors() {
        let mc = MarkedCycle::new(6, [0, 3]);
        assert!(matches!(
            arrangement_projection(&m(), &mc, Some((0, 3))),
            Err(ReplayError::InvalidInput(_))
        ));
        assert!(matches!(
            arrangement_projection(&m(), &MarkedCycle::new(6, [0]), None),
            Err(ReplayError::InconsistentArrangement(_))
        ));
    }

    #[test]
    fn forced_pair_coefficients_match_minus_pair_and_half_pairs() {
        let c = arrangement_projection(&m(), &MarkedCycle::new(9, [0, 1, 5]), Some((0, 1))).unwrap();
        assert_eq!(c.value, int(3));
        let h = rat(1, 2);
        let z = int(0);
        assert_eq!(
            c.coefficient_vector,
            vec![int(-1), int(-1), z.clone(), h.clone(), h.clone(), z.clone(), h.clone(), h, z]
        );
    }

    #[test]
    fn min_projection_examples() {
        let r = min_projection(&m(), 2, false).unwrap();
        assert_eq!(r.min_value, int(1));
        assert_eq!(r.argmin.len(), 1);
        assert_eq!(r.argmin[0].marks, MarkedCycle::new(6, [0, 3]));
        let r = min_projection(&m(), 2, true).unwrap();
        assert_eq!(r.min_value, rat(5, 2));
        assert!(r.certifies());
        let r = min_projection(&m(), 1, false).unwrap();
        assert_eq!((r.min_value.clone(), r.classes_checked), (rat(1, 2), 1));
        assert_eq!(
            min_projection(&m(), 1, true),
            Err(ReplayError::NoArrangements { s: 1, t: 3 })
        );
    }

    #[test]
    fn cliques_bound_is_minus_one() {
        for s in 2..=3 {
            let c = lemma_cliques_bound(&m(), s).unwrap();
            assert_eq!(c.min_inner, int(-1));
            assert_eq!(c.enumerated_min, int(-1));
            assert_eq!(c.gap, rat(3, 4));
            assert!(c.contradiction);
        }
    }

    #[test]
    fn dimension_examples() {
        let d = post_clique_dimensions(&m()).unwrap();
        assert_eq!((d.dim_s, d.dim_t, d.gram_rank), (15, 4, 15));
        assert_eq!(clique_dimensions(12, 11), Ok((9, 2)));
        assert_eq!(clique_dimensions(10, 11), Err(ReplayError::NotDivisible(10)));
    }

    #[test]
    fn circ_table() {
        let same = circ_inner(&m(), CircRelation::Same, 0).unwrap();
        assert_eq!(same.value, int(2));
        assert_eq!(same.admissible, (1, 5));
        assert_eq!(circ_inner(&m(), CircRelation::Adjacent, 0).unwrap().value, int(-1));
        assert_eq!(circ_inner(&m(), CircRelation::Nonadjacent, 2).unwrap().value, int(1));
        for beta in 1..=5 {
            let v = circ_inner(&m(), CircRelation::Nonadjacent, beta).unwrap().value;
            assert_eq!(v, int(3 - beta as i64));
        }
        assert_eq!(
            circ_inner(&m(), CircRelation::Nonadjacent, 0),
            Err(ReplayError::BetaOutOfRange { beta: 0, lo: 1, hi: 5 })
        );
        assert_eq!(beta_for_inner(&m(), &int(-2)), Ok(Some(5)));
    }

    #[test]
    fn pigeonhole_and_intersections() {
        assert_eq!(pigeonhole_pairs(54, 12), Ok(5));
        assert_eq!(pigeonhole_pairs(12, 12), Ok(1));
        assert_eq!(pigeonhole_pairs(25, 12), Ok(3));
        assert!(pigeonhole_pairs(5, 0).is_err());
        assert_eq!(min_intersection(5, 5, 7), 3);
        assert_eq!(min_intersection(4, 4, 7), 1);
        assert_eq!(min_intersection(3, 3, 7), 0);
    }
}
