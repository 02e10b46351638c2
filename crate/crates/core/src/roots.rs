//! Norm-2 vectors of integral lattices and their simply-laced root systems.
//!
//! Lattices are given by a rational positive definite basis Gram matrix.
//! Enumeration is Fincke–Pohst with every bound evaluated in exact rational
//! arithmetic; the resulting root systems are split into irreducible parts
//! and each part is named by its (rank, root count) pair, which determines
//! an ADE type uniquely.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactlin::{int, psd_rank, rank_rows, Rat, RatMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootsError {
    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("target norm must be positive")]
    NonPositiveTarget,
    #[error("roots {0:?} and {1:?} have a non-integral inner product")]
    NonIntegralInnerProduct(Vec<i64>, Vec<i64>),
    #[error("component of rank {rank} with {count} roots is not an ADE root system")]
    UnrecognizedComponent { rank: usize, count: usize },
    #[error("rank {0} is outside the certified range 1..=4")]
    RankUnsupported(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeGram {
    gram: RatMatrix,
}

impl LatticeGram {
    pub fn new(gram: RatMatrix) -> Result<Self, RootsError> {
        match psd_rank(&gram) {
            Ok((true, r)) if r == gram.dim() => Ok(LatticeGram { gram }),
            _ => Err(RootsError::NotPositiveDefinite),
        }
    }

    pub fn rank(&self) -> usize {
        self.gram.dim()
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn inner(&self, x: &[i64], y: &[i64]) -> Rat {
        let xs: Vec<Rat> = x.iter().map(|&a| int(a)).collect();
        let ys: Vec<Rat> = y.iter().map(|&a| int(a)).collect();
        self.gram.bilinear(&xs, &ys)
    }
}

/// Lattice vectors (coordinates in the lattice basis) of one fixed norm,
/// sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootSet {
    pub roots: Vec<Vec<i64>>,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn is_negation_closed(&self) -> bool {
        self.roots.iter().all(|r| {
            let neg: Vec<i64> = r.iter().map(|x| -x).collect();
            self.roots.binary_search(&neg).is_ok()
        })
    }
}

/// `Q(x) = Σ_i q_ii (x_i + Σ_{j>i} q_ij x_j)²`.
fn quadratic_decomposition(g: &RatMatrix) -> Vec<Vec<Rat>> {
    let n = g.dim();
    let mut q = g.to_rows();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let delta = &q[k][i] * &q[i][l];
                q[k][l] -= delta;
            }
        }
    }
    q
}

fn floor_int(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

/// Every `x` in `Z^n` with `xᵀ G x = target`.
pub fn short_vectors(lat: &LatticeGram, target: &Rat) -> Result<RootSet, RootsError> {
    if !target.is_positive() {
        return Err(RootsError::NonPositiveTarget);
    }
    let n = lat.rank();
    let q = quadratic_decomposition(&lat.gram);
    let mut x = vec![0i64; n];
    let mut out = Vec::new();
    enumerate(&q, n, target.clone(), &mut x, &mut out);
    out.sort();
    Ok(RootSet { roots: out })
}

fn enumerate(q: &[Vec<Rat>], level: usize, remaining: Rat, x: &mut [i64], out: &mut Vec<Vec<i64>>) {
    if level == 0 {
        if remaining.is_zero() {
            out.push(x.to_vec());
        }
        return;
    }
    let i = level - 1;
    let n = x.len();
    let center = (i + 1..n).fold(Rat::zero(), |acc, j| acc + &q[i][j] * int(x[j]));
    // integer window that certainly contains every x_i with q_ii (x_i + c)² ≤ remaining
    let radius = floor_int(&(&remaining / &q[i][i])).sqrt() + BigInt::one();
    let mid = floor_int(&-center.clone());
    let lo = (&mid - &radius).to_i64().expect("coordinate fits i64");
    let hi = (&mid + &radius + BigInt::one()).to_i64().expect("coordinate fits i64");
    for xi in lo..=hi {
        let shifted = int(xi) + &center;
        let used = &q[i][i] * &shifted * &shifted;
        if used > remaining {
            continue;
        }
        x[i] = xi;
        enumerate(q, i, &remaining - used, x, out);
    }
    x[i] = 0;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RootType {
    A,
    D,
    E,
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            RootType::A => 'A',
            RootType::D => 'D',
            RootType::E => 'E',
        };
        write!(f, "{c}")
    }
}

/// Number of roots of the irreducible system, or `None` if no such type.
pub fn root_count(kind: RootType, rank: usize) -> Option<usize> {
    match (kind, rank) {
        (RootType::A, n) if n >= 1 => Some(n * (n + 1)),
        (RootType::D, n) if n >= 4 => Some(2 * n * (n - 1)),
        (RootType::E, 6) => Some(72),
        (RootType::E, 7) => Some(126),
        (RootType::E, 8) => Some(240),
        _ => None,
    }
}

/// Simple-root Gram (Cartan) matrix of an irreducible simply-laced type.
pub fn cartan(kind: RootType, rank: usize) -> Option<RatMatrix> {
    root_count(kind, rank)?;
    // chain 0-1-...-(n-1) plus one extra bond for D and E
    let extra = match kind {
        RootType::A => None,
        RootType::D => Some((rank - 3, rank - 1)),
        RootType::E => Some((2, rank - 1)),
    };
    let chain_len = if extra.is_some() { rank - 1 } else { rank };
    Some(RatMatrix::from_fn(rank, |i, j| {
        if i == j {
            return int(2);
        }
        let (a, b) = (i.min(j), i.max(j));
        let bonded = (b < chain_len && b == a + 1) || extra == Some((a, b));
        if bonded {
            int(-1)
        } else {
            Rat::zero()
        }
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub kind: RootType,
    pub rank: usize,
    pub root_count: usize,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{} ({} roots)", self.kind, self.rank, self.root_count)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootClassification {
    pub components: Vec<Component>,
}

impl RootClassification {
    pub fn total_roots(&self) -> usize {
        self.components.iter().map(|c| c.root_count).sum()
    }

    pub fn total_rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }
}

fn identify(rank: usize, count: usize) -> Option<RootType> {
    [RootType::A, RootType::D, RootType::E]
        .into_iter()
        .find(|&k| root_count(k, rank) == Some(count))
}

/// Splits a complete norm-2 set into classes of the "not orthogonal"
/// relation and names each class. Components are listed in order of their
/// first root.
pub fn classify(rs: &RootSet, lat: &LatticeGram) -> Result<RootClassification, RootsError> {
    let m = rs.roots.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    for a in 0..m {
        for b in a + 1..m {
            let ip = lat.inner(&rs.roots[a], &rs.roots[b]);
            if !ip.is_integer() {
                return Err(RootsError::NonIntegralInnerProduct(
                    rs.roots[a].clone(),
                    rs.roots[b].clone(),
                ));
            }
            if !ip.is_zero() {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for a in 0..m {
        let r = find(&mut parent, a);
        match groups.iter_mut().find(|(root, _)| *root == r) {
            Some((_, members)) => members.push(a),
            None => groups.push((r, vec![a])),
        }
    }
    let components = groups
        .into_iter()
        .map(|(_, members)| {
            let rows = members
                .iter()
                .map(|&a| rs.roots[a].iter().map(|&c| int(c)).collect())
                .collect();
            let rank = rank_rows(rows);
            let count = members.len();
            identify(rank, count)
                .map(|kind| Component {
                    kind,
                    rank,
                    root_count: count,
                })
                .ok_or(RootsError::UnrecognizedComponent { rank, count })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RootClassification { components })
}

/// Largest total root count of a direct sum of irreducible ADE systems with
/// total rank at most `rank`, together with one maximizing sum.
pub fn max_root_system(rank: usize) -> Result<(usize, Vec<Component>), RootsError> {
    if !(1..=4).contains(&rank) {
        return Err(RootsError::RankUnsupported(rank));
    }
    let irreducible: Vec<Component> = (1..=rank)
        .flat_map(|n| [RootType::A, RootType::D, RootType::E].map(|k| (k, n)))
        .filter_map(|(kind, n)| {
            root_count(kind, n).map(|c| Component {
                kind,
                rank: n,
                root_count: c,
            })
        })
        .collect();

    fn search(items: &[Component], from: usize, left: usize, chosen: &mut Vec<Component>, best: &mut (usize, Vec<Component>)) {
        let total: usize = chosen.iter().map(|c| c.root_count).sum();
        if total > best.0 {
            *best = (total, chosen.clone());
        }
        for i in from..items.len() {
            if items[i].rank <= left {
                chosen.push(items[i].clone());
                search(items, i, left - items[i].rank, chosen, best);
                chosen.pop();
            }
        }
    }
    let mut best = (0, Vec::new());
    search(&irreducible, 0, rank, &mut Vec::new(), &mut best);
    Ok(best)
}

pub fn max_roots(rank: usize) -> Result<usize, RootsError> {
    max_root_system(rank).map(|(n, _)| n)
}
