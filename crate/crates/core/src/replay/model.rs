use serde::Serialize;

use num_traits::{One, Signed};

use super::ReplayError;
use crate::exactlin::{int, Rat};
use crate::params::{cosine_sequence, spectrum, CosineSequence, SrgParams};

/// Rescaling `x ↦ alpha·x + beta·u` of the vectors at distance `layer`
/// from the base vertex `u`, chosen so the result is orthogonal to `u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HatTransform {
    pub layer: u8,
    #[serde(with = "crate::exactlin::serde_rat")]
    pub alpha: Rat,
    #[serde(with = "crate::exactlin::serde_rat")]
    pub beta: Rat,
    #[serde(with = "crate::exactlin::serde_rat")]
    pub sq_norm: Rat,
}

impl HatTransform {
    fn new(layer: u8, alpha: Rat, w: &Rat) -> Self {
        let beta = -(&alpha * w);
        let sq_norm = &alpha * &alpha * (Rat::one() - w * w);
        HatTransform {
            layer,
            alpha,
            beta,
            sq_norm,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InnerModel {
    pub params: SrgParams,
    pub theta: i64,
    pub multiplicity: u64,
    pub cosines: CosineSequence,
    pub layer1: HatTransform,
    pub layer2: HatTransform,
}

/// Pair types whose hatted inner product the model evaluates. `L1`/`L2`
/// name the layer of both vectors; `Cross*` pairs a first-layer vector with
/// a second-layer one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HatRelation {
    L1Same,
    L1Adjacent,
    L1Nonadjacent,
    L2Same,
    L2Adjacent,
    L2Nonadjacent,
    CrossAdjacent,
    CrossNonadjacent,
}

impl HatRelation {
    pub const ALL: [HatRelation; 8] = [
        HatRelation::L1Same,
        HatRelation::L1Adjacent,
        HatRelation::L1Nonadjacent,
        HatRelation::L2Same,
        HatRelation::L2Adjacent,
        HatRelation::L2Nonadjacent,
        HatRelation::CrossAdjacent,
        HatRelation::CrossNonadjacent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HatRelation::L1Same => "L1-same",
            HatRelation::L1Adjacent => "L1-adjacent",
            HatRelation::L1Nonadjacent => "L1-nonadjacent",
            HatRelation::L2Same => "L2-same",
            HatRelation::L2Adjacent => "L2-adjacent",
            HatRelation::L2Nonadjacent => "L2-nonadjacent",
            HatRelation::CrossAdjacent => "cross-adjacent",
            HatRelation::CrossNonadjacent => "cross-nonadjacent",
        }
    }
}

/// Exact square root of a nonnegative rational, when it is rational.
fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rat::new(n, d))
}

/// Builds the two hat transforms for the eigenspace of `theta`.
///
/// First-layer vectors are scaled to squared norm `layer1_sq_norm`. The
/// second layer uses `alpha2 = layer1_sq_norm / (1 - w2)`; at (76,21,2,7),
/// θ = -7 this is the familiar `ŵ = (9/4)w - (1/4)u` of squared norm 5.
pub fn build_inner_model(
    params: &SrgParams,
    theta: i64,
    layer1_sq_norm: &Rat,
) -> Result<InnerModel, ReplayError> {
    let cosines = cosine_sequence(params, theta)?;
    let multiplicity = spectrum(params)?
        .multiplicity_of(theta)
        .expect("cosine_sequence accepted theta");
    let one = Rat::one();
    for w in [&cosines.w1, &cosines.w2] {
        if w.abs() >= one {
            return Err(ReplayError::DegenerateCosine(w.clone()));
        }
    }
    if !layer1_sq_norm.is_positive() {
        return Err(ReplayError::InvalidInput("layer-1 norm must be positive".into()));
    }
    let alpha1_sq = layer1_sq_norm / (&one - &cosines.w1 * &cosines.w1);
    let alpha1 = rat_sqrt(&alpha1_sq).ok_or_else(|| ReplayError::NonRationalScale(alpha1_sq.clone()))?;
    let alpha2 = layer1_sq_norm / (&one - &cosines.w2);
    let layer1 = HatTransform::new(1, alpha1, &cosines.w1);
    let layer2 = HatTransform::new(2, alpha2, &cosines.w2);
    Ok(InnerModel {
        params: *params,
        theta,
        multiplicity,
        cosines,
        layer1,
        layer2,
    })
}

impl InnerModel {
    /// The model the replay of (76,21,2,7) runs on: θ = -7, layer-1 norm 2.
    pub fn srg76() -> InnerModel {
        let p = crate::params::validate_params(76, 21, 2, 7).expect("valid parameters");
        build_inner_model(&p, -7, &int(2)).expect("model for srg(76,21,2,7)")
    }

    fn layer(&self, l: u8) -> (&HatTransform, &Rat) {
        match l {
            1 => (&self.layer1, &self.cosines.w1),
            _ => (&self.layer2, &self.cosines.w2),
        }
    }

    /// `(x̂, ŷ)` for `x` in layer `la` and `y` in layer `lb` whose raw inner
    /// product is `raw`.
    fn expand(&self, la: u8, lb: u8, raw: &Rat) -> Rat {
        let ((ta, wa), (tb, wb)) = (self.layer(la), self.layer(lb));
        &ta.alpha * &tb.alpha * raw + &ta.alpha * &tb.beta * wa + &ta.beta * &tb.alpha * wb + &ta.beta * &tb.beta
    }

    /// `(v̂, u)` for a vector of the given layer; zero by construction.
    pub fn against_base(&self, layer: u8) -> Rat {
        let (t, w) = self.layer(layer);
        &t.alpha * w + &t.beta
    }

    /// `(v̂, w)` for a hatted first-layer `v` and an unhatted second-layer `w`.
    pub fn layer1_against_raw(&self, adjacent: bool) -> Rat {
        let raw = if adjacent { &self.cosines.w1 } else { &self.cosines.w2 };
        &self.layer1.alpha * raw + &self.layer1.beta * &self.cosines.w2
    }
}

/// Exact value of one entry of the three inner-product tables.
pub fn hat_inner(model: &InnerModel, relation: HatRelation) -> Rat {
    let c = &model.cosines;
    let (la, lb, raw) = match relation {
        HatRelation::L1Same => (1, 1, &c.w0),
        HatRelation::L1Adjacent => (1, 1, &c.w1),
        HatRelation::L1Nonadjacent => (1, 1, &c.w2),
        HatRelation::L2Same => (2, 2, &c.w0),
        HatRelation::L2Adjacent => (2, 2, &c.w1),
        HatRelation::L2Nonadjacent => (2, 2, &c.w2),
        HatRelation::CrossAdjacent => (1, 2, &c.w1),
        HatRelation::CrossNonadjacent => (1, 2, &c.w2),
    };
    model.expand(la, lb, raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;
    use num_traits::Zero;
    use crate::params::validate_params;

    #[test]
    fn srg76_transforms() {
        let m = InnerModel::srg76();
        assert_eq!((m.layer1.alpha.clone(), m.layer1.beta.clone()), (rat(3, 2), rat(1, 2)));
        assert_eq!(m.layer1.sq_norm, int(2));
        assert_eq!((m.layer2.alpha.clone(), m.layer2.beta.clone()), (rat(9, 4), rat(-1, 4)));
        assert_eq!(m.layer2.sq_norm, int(5));
        assert!(m.against_base(1).is_zero());
        assert!(m.against_base(2).is_zero());
        assert_eq!(m.layer1_against_raw(true), rat(-4, 9));
        assert_eq!(m.layer1_against_raw(false), rat(2, 9));
    }

    #[test]
    fn srg76_tables() {
        let m = InnerModel::srg76();
        let got: Vec<Rat> = HatRelation::ALL.iter().map(|&r| hat_inner(&m, r)).collect();
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
        assert_eq!(got, want);
    }

    #[test]
    fn same_pairs_reproduce_transform_norms() {
        let m = InnerModel::srg76();
        assert_eq!(hat_inner(&m, HatRelation::L1Same), m.layer1.sq_norm);
        assert_eq!(hat_inner(&m, HatRelation::L2Same), m.layer2.sq_norm);
    }

    #[test]
    fn irrational_scale_is_rejected() {
        // Petersen θ = -2: 1 - w1² = 5/9, so alpha1² = 18/5 for norm 2
        let p = validate_params(10, 3, 0, 1).unwrap();
        assert!(matches!(
            build_inner_model(&p, -2, &int(2)),
            Err(ReplayError::NonRationalScale(_))
        ));
        // norm 5/9 · 4 = 20/9 gives alpha1 = 2
        let m = build_inner_model(&p, -2, &rat(20, 9)).unwrap();
        assert_eq!(m.layer1.alpha, int(2));
        assert!(m.against_base(1).is_zero() && m.against_base(2).is_zero());
        assert_eq!(m.layer1.beta, -(&m.layer1.alpha * &m.cosines.w1));
    }
}
