//! Strongly regular parameter arithmetic: the defining identity, the
//! spectrum, cosine sequences of the integral eigenspaces, and the classical
//! feasibility screens.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::exactlin::{fmt_rat, int, rat, Rat};
use crate::quadratic::{exact_sqrt, Quad};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamsError {
    #[error("parameter identity fails: k(k-λ-1) = {lhs} but (v-k-1)μ = {rhs}")]
    IdentityViolation { lhs: i64, rhs: i64 },
    #[error("parameters out of range: {0}")]
    RangeViolation(String),
    #[error("multiplicities are not nonnegative integers: f = {plus}, g = {minus}")]
    NonIntegralMultiplicity { plus: String, minus: String },
    #[error("{theta} is not a nontrivial eigenvalue (eigenvalues are {plus} and {minus})")]
    NotAnEigenvalue {
        theta: i64,
        plus: String,
        minus: String,
    },
    #[error("nontrivial eigenvalues are irrational (discriminant {0})")]
    NonIntegralEigenvalue(i64),
}

/// A parameter quadruple that passed [`validate_params`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SrgParams {
    pub v: i64,
    pub k: i64,
    pub lambda: i64,
    pub mu: i64,
}

impl fmt::Display for SrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.v, self.k, self.lambda, self.mu)
    }
}

impl SrgParams {
    /// Parameters of the complementary graph.
    pub fn complement(&self) -> (i64, i64, i64, i64) {
        let SrgParams { v, k, lambda, mu } = *self;
        (v, v - k - 1, v - 2 - 2 * k + mu, v - 2 * k + lambda)
    }

    pub fn intersection_array(&self) -> IntersectionArray {
        IntersectionArray {
            b0: self.k,
            b1: self.k - self.lambda - 1,
            c1: 1,
            c2: self.mu,
            a1: self.lambda,
            a2: self.k - self.mu,
        }
    }

    /// `(λ-μ)² + 4(k-μ)`, the discriminant of the eigenvalue quadratic.
    pub fn discriminant(&self) -> i64 {
        let d = self.lambda - self.mu;
        d * d + 4 * (self.k - self.mu)
    }
}

/// Checks ranges and the identity `k(k-λ-1) = (v-k-1)μ`.
///
/// Besides `0 < k < v`, `λ < k` and `1 ≤ μ ≤ k`, the complete graph
/// (`k = v-1`) is rejected: it satisfies the identity for any μ but has no
/// non-adjacent pairs.
pub fn validate_params(v: i64, k: i64, lambda: i64, mu: i64) -> Result<SrgParams, ParamsError> {
    let range = |msg: &str| Err(ParamsError::RangeViolation(msg.to_string()));
    if v < 0 || k < 0 || lambda < 0 || mu < 0 {
        return range("all parameters must be nonnegative");
    }
    if !(0 < k && k < v) {
        return range("need 0 < k < v");
    }
    if lambda >= k {
        return range("need λ < k");
    }
    if !(1 <= mu && mu <= k) {
        return range("need 1 ≤ μ ≤ k");
    }
    if k == v - 1 {
        return range("k = v-1 is the complete graph");
    }
    let lhs = k * (k - lambda - 1);
    let rhs = (v - k - 1) * mu;
    if lhs != rhs {
        return Err(ParamsError::IdentityViolation { lhs, rhs });
    }
    Ok(SrgParams { v, k, lambda, mu })
}

/// Intersection numbers of a connected strongly regular graph viewed as a
/// distance-regular graph of diameter two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IntersectionArray {
    pub b0: i64,
    pub b1: i64,
    pub c1: i64,
    pub c2: i64,
    pub a1: i64,
    pub a2: i64,
}

/// A nontrivial eigenvalue: an integer, or `(trace ± √discriminant)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Eigenvalue {
    Integral(i64),
    Quadratic {
        trace: i64,
        sign: i8,
        discriminant: i64,
    },
}

impl Eigenvalue {
    pub fn as_integer(&self) -> Option<i64> {
        match *self {
            Eigenvalue::Integral(x) => Some(x),
            Eigenvalue::Quadratic { .. } => None,
        }
    }

    fn as_quad(&self, d: i64) -> Quad {
        match *self {
            Eigenvalue::Integral(x) => Quad::rational(int(x), d),
            Eigenvalue::Quadratic {
                trace,
                sign,
                discriminant,
            } => Quad::new(rat(trace, 2), rat(sign as i64, 2), discriminant),
        }
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Eigenvalue::Integral(x) => write!(f, "{x}"),
            Eigenvalue::Quadratic {
                trace,
                sign,
                discriminant,
            } => {
                let s = if sign < 0 { '-' } else { '+' };
                write!(f, "({trace} {s} √{discriminant})/2")
            }
        }
    }
}

/// The two nontrivial eigenvalues `(r, s)` with `r > s`, the roots of
/// `x² - (λ-μ)x - (k-μ)`.
pub fn eigenvalues(p: &SrgParams) -> (Eigenvalue, Eigenvalue) {
    let trace = p.lambda - p.mu;
    let disc = p.discriminant();
    match exact_sqrt(disc) {
        Some(root) => (
            Eigenvalue::Integral((trace + root) / 2),
            Eigenvalue::Integral((trace - root) / 2),
        ),
        None => (
            Eigenvalue::Quadratic {
                trace,
                sign: 1,
                discriminant: disc,
            },
            Eigenvalue::Quadratic {
                trace,
                sign: -1,
                discriminant: disc,
            },
        ),
    }
}

/// Multiplicities `(f, g)` of `(r, s)` as elements of `Q(√Δ)`.
fn multiplicities(p: &SrgParams) -> (Quad, Quad) {
    let disc = p.discriminant();
    let half = rat(p.v - 1, 2);
    // f, g = ((v-1) ∓ (2k + (v-1)(λ-μ))/√Δ)/2 and 1/√Δ = √Δ/Δ
    let skew = 2 * p.k + (p.v - 1) * (p.lambda - p.mu);
    let coef = rat(skew, 2 * disc);
    (
        Quad::new(half.clone(), -coef.clone(), disc),
        Quad::new(half, coef, disc),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Spectrum {
    pub k: i64,
    pub discriminant: i64,
    pub theta_plus: Eigenvalue,
    pub theta_minus: Eigenvalue,
    pub mult_k: u64,
    pub mult_plus: u64,
    pub mult_minus: u64,
    pub integral: bool,
}

impl Spectrum {
    /// Multiplicity of an integral eigenvalue, including `k` itself.
    pub fn multiplicity_of(&self, theta: i64) -> Option<u64> {
        if theta == self.k {
            Some(self.mult_k)
        } else if self.theta_plus.as_integer() == Some(theta) {
            Some(self.mult_plus)
        } else if self.theta_minus.as_integer() == Some(theta) {
            Some(self.mult_minus)
        } else {
            None
        }
    }
}

fn as_count(q: &Quad) -> Option<u64> {
    if !q.is_rational() || !q.a.is_integer() || q.a < Rat::zero() {
        return None;
    }
    q.a.numer().to_string().parse().ok()
}

pub fn spectrum(p: &SrgParams) -> Result<Spectrum, ParamsError> {
    let (r, s) = eigenvalues(p);
    let (f, g) = multiplicities(p);
    let (Some(mult_plus), Some(mult_minus)) = (as_count(&f), as_count(&g)) else {
        return Err(ParamsError::NonIntegralMultiplicity {
            plus: f.to_string(),
            minus: g.to_string(),
        });
    };
    Ok(Spectrum {
        k: p.k,
        discriminant: p.discriminant(),
        theta_plus: r,
        theta_minus: s,
        mult_k: 1,
        mult_plus,
        mult_minus,
        integral: r.as_integer().is_some(),
    })
}

/// Inner products `(w0, w1, w2)` of representation vectors at distance 0, 1, 2
/// inside the eigenspace of `eigenvalue`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosineSequence {
    pub eigenvalue: i64,
    #[serde(with = "crate::exactlin::serde_rat")]
    pub w0: Rat,
    #[serde(with = "crate::exactlin::serde_rat")]
    pub w1: Rat,
    #[serde(with = "crate::exactlin::serde_rat")]
    pub w2: Rat,
}

impl CosineSequence {
    /// Value for a pair at the given distance (0, 1 or 2).
    pub fn at(&self, distance: usize) -> &Rat {
        match distance {
            0 => &self.w0,
            1 => &self.w1,
            _ => &self.w2,
        }
    }

    pub fn residuals(&self, p: &SrgParams) -> [Rat; 2] {
        recurrence_residuals(p, self.eigenvalue, &self.w0, &self.w1, &self.w2)
    }
}

/// Residuals of the two cosine recurrences of a diameter-two graph:
/// `θ·w1 - (c1·w0 + a1·w1 + b1·w2)` and `θ·w2 - (c2·w1 + a2·w2)`.
pub fn recurrence_residuals(p: &SrgParams, theta: i64, w0: &Rat, w1: &Rat, w2: &Rat) -> [Rat; 2] {
    let ia = p.intersection_array();
    let th = int(theta);
    [
        &th * w1 - (int(ia.c1) * w0 + int(ia.a1) * w1 + int(ia.b1) * w2),
        &th * w2 - (int(ia.c2) * w1 + int(ia.a2) * w2),
    ]
}

pub fn cosine_sequence(p: &SrgParams, theta: i64) -> Result<CosineSequence, ParamsError> {
    let (r, s) = eigenvalues(p);
    let (Some(ri), Some(si)) = (r.as_integer(), s.as_integer()) else {
        return Err(ParamsError::NonIntegralEigenvalue(p.discriminant()));
    };
    if theta != ri && theta != si {
        return Err(ParamsError::NotAnEigenvalue {
            theta,
            plus: ri.to_string(),
            minus: si.to_string(),
        });
    }
    let ia = p.intersection_array();
    let w0 = int(1);
    let w1 = rat(theta, p.k);
    let w2 = (int(theta) * &w1 - &w0 - int(ia.a1) * &w1) / int(ia.b1);
    Ok(CosineSequence {
        eigenvalue: theta,
        w0,
        w1,
        w2,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckDetail {
    pub name: String,
    pub passed: bool,
    /// `(quantity, exact value)` pairs backing the verdict.
    pub values: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeasibilityReport {
    pub params: SrgParams,
    pub identity_ok: bool,
    pub integrality_ok: bool,
    pub krein_ok: bool,
    pub absolute_bound_ok: bool,
    pub details: Vec<CheckDetail>,
}

impl FeasibilityReport {
    pub fn feasible(&self) -> bool {
        self.identity_ok && self.integrality_ok && self.krein_ok && self.absolute_bound_ok
    }
}

fn check(name: &str, passed: bool, values: Vec<(&str, String)>) -> CheckDetail {
    CheckDetail {
        name: name.to_string(),
        passed,
        values: values.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
    }
}

/// Runs every screen in order identity → integrality → Krein → absolute
/// bound. Nothing short-circuits; the quadratic-field arithmetic lets the
/// Krein and absolute-bound screens run even for conference parameters.
pub fn feasibility_report(p: &SrgParams) -> FeasibilityReport {
    let d = p.discriminant();
    let q = |x: i64| Quad::rational(int(x), d);
    let mut details = Vec::new();

    let lhs = p.k * (p.k - p.lambda - 1);
    let rhs = (p.v - p.k - 1) * p.mu;
    let identity_ok = lhs == rhs;
    details.push(check(
        "identity",
        identity_ok,
        vec![("k(k-λ-1)", lhs.to_string()), ("(v-k-1)μ", rhs.to_string())],
    ));

    let (f, g) = multiplicities(p);
    let integrality_ok = as_count(&f).is_some() && as_count(&g).is_some();
    details.push(check(
        "integrality",
        integrality_ok,
        vec![("f", f.to_string()), ("g", g.to_string())],
    ));

    let (re, se) = eigenvalues(p);
    let (r, s) = (re.as_quad(d), se.as_quad(d));
    let k = q(p.k);
    let one = q(1);
    let rs2 = q(2) * r.clone() * s.clone();
    let krein1_lhs = (r.clone() + one.clone()) * (k.clone() + r.clone() + rs2.clone());
    let krein1_rhs = (k.clone() + r.clone()) * (s.clone() + one.clone()) * (s.clone() + one.clone());
    let krein2_lhs = (s.clone() + one.clone()) * (k.clone() + s.clone() + rs2);
    let krein2_rhs = (k + s) * (r.clone() + one.clone()) * (r + one);
    let k1 = (krein1_rhs.clone() - krein1_lhs.clone()).is_nonnegative();
    let k2 = (krein2_rhs.clone() - krein2_lhs.clone()).is_nonnegative();
    details.push(check(
        "krein-1",
        k1,
        vec![
            ("(r+1)(k+r+2rs)", krein1_lhs.to_string()),
            ("(k+r)(s+1)²", krein1_rhs.to_string()),
        ],
    ));
    details.push(check(
        "krein-2",
        k2,
        vec![
            ("(s+1)(k+s+2rs)", krein2_lhs.to_string()),
            ("(k+s)(r+1)²", krein2_rhs.to_string()),
        ],
    ));

    let bound = |m: &Quad| {
        let m3 = m.clone() + q(3);
        let half = Quad::rational(rat(1, 2), d);
        half * m.clone() * m3
    };
    let bf = bound(&f);
    let bg = bound(&g);
    let ab_f = (bf.clone() - q(p.v)).is_nonnegative();
    let ab_g = (bg.clone() - q(p.v)).is_nonnegative();
    details.push(check(
        "absolute-bound",
        ab_f && ab_g,
        vec![
            ("v", p.v.to_string()),
            ("f(f+3)/2", bf.to_string()),
            ("g(g+3)/2", bg.to_string()),
        ],
    ));

    FeasibilityReport {
        params: *p,
        identity_ok,
        integrality_ok,
        krein_ok: k1 && k2,
        absolute_bound_ok: ab_f && ab_g,
        details,
    }
}

/// `p/q` rendering of a cosine triple.
pub fn fmt_cosines(c: &CosineSequence) -> String {
    format!("({}, {}, {})", fmt_rat(&c.w0), fmt_rat(&c.w1), fmt_rat(&c.w2))
}
