//! Concrete graphs: ingestion, strong-regularity verification, the Gram
//! matrix of the unit-vector representation, and the neighbourhood cycle
//! structure used when λ = 2.

pub mod families;
mod graph6;
mod json;

use std::collections::BTreeSet;

use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::exactlin::{psd_rank, Rat, RatMatrix};
use crate::params::{cosine_sequence, spectrum, validate_params, ParamsError, SrgParams};

pub use graph6::{parse_graph6, write_graph6};
pub use json::{parse_json_graph, write_json_graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("malformed graph6 header: {0}")]
    MalformedHeader(String),
    #[error("graph6 bit vector truncated: expected {expected} bytes, found {found}")]
    TruncatedBitVector { expected: usize, found: usize },
    #[error("trailing garbage in graph6 input: {0}")]
    TrailingGarbage(String),
    #[error("graph with {0} vertices is too large for graph6")]
    TooLarge(usize),
    #[error("invalid JSON graph: {0}")]
    Json(String),
    #[error("need at least 2 vertices")]
    TooSmall,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("not regular: vertex {vertex} has degree {degree}, vertex 0 has {expected}")]
    NotRegular {
        vertex: usize,
        degree: usize,
        expected: usize,
    },
    #[error(
        "not strongly regular: {u} and {w} ({relation}) have {common} common neighbours, expected {expected}"
    )]
    NotStronglyRegular {
        u: usize,
        w: usize,
        relation: &'static str,
        common: usize,
        expected: usize,
    },
    #[error("degenerate strongly regular graph: {0}")]
    Degenerate(String),
    #[error("vertex {vertex} has degree {degree} inside the neighbourhood, expected 2")]
    NotDegreeTwo { vertex: usize, degree: usize },
    #[error("vertices {u} and {w} are not at distance two")]
    NotAtDistanceTwo { u: usize, w: usize },
    #[error(transparent)]
    Params(#[from] ParamsError),
}

/// Simple undirected graph on vertices `0..n`, adjacency stored as bit rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn order(&self) -> usize {
        self.n
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    /// Adds `{a, b}`; loops are ignored.
    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a < self.n && b < self.n, "vertex out of range");
        if a == b {
            return;
        }
        self.rows[a * self.words + b / 64] |= 1 << (b % 64);
        self.rows[b * self.words + a / 64] |= 1 << (a % 64);
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.row(a)[b / 64] >> (b % 64) & 1 == 1
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, u: usize) -> Vec<usize> {
        (0..self.n).filter(|&w| self.has_edge(u, w)).collect()
    }

    pub fn common_neighbors(&self, a: usize, b: usize) -> usize {
        self.row(a)
            .iter()
            .zip(self.row(b))
            .map(|(x, y)| (x & y).count_ones() as usize)
            .sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| (i + 1..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.has_edge(i, j))
            .collect()
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if !self.has_edge(i, j) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    fn check_vertex(&self, u: usize) -> Result<(), GraphError> {
        if u < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange(u))
        }
    }
}

/// Reads the parameters off a graph, checking every pair.
pub fn verify_srg(g: &Graph) -> Result<SrgParams, GraphError> {
    let n = g.order();
    if n < 2 {
        return Err(GraphError::TooSmall);
    }
    let k = g.degree(0);
    if let Some(vertex) = (1..n).find(|&u| g.degree(u) != k) {
        return Err(GraphError::NotRegular {
            vertex,
            degree: g.degree(vertex),
            expected: k,
        });
    }
    if k == 0 {
        return Err(GraphError::Degenerate("empty graph".into()));
    }
    if k == n - 1 {
        return Err(GraphError::Degenerate("complete graph".into()));
    }
    let mut lambda = None;
    let mut mu = None;
    for u in 0..n {
        for w in u + 1..n {
            let adjacent = g.has_edge(u, w);
            let slot = if adjacent { &mut lambda } else { &mut mu };
            let common = g.common_neighbors(u, w);
            match *slot {
                None => *slot = Some(common),
                Some(expected) if expected != common => {
                    return Err(GraphError::NotStronglyRegular {
                        u,
                        w,
                        relation: if adjacent { "adjacent" } else { "non-adjacent" },
                        common,
                        expected,
                    })
                }
                Some(_) => {}
            }
        }
    }
    let (lambda, mu) = (lambda.unwrap_or(0), mu.unwrap_or(0));
    if mu == 0 {
        return Err(GraphError::Degenerate(
            "μ = 0 (disjoint union of cliques)".into(),
        ));
    }
    Ok(validate_params(n as i64, k as i64, lambda as i64, mu as i64)?)
}

/// Gram matrix `I + w1·A + w2·(J - I - A)` of the unit vectors representing
/// `g` in the eigenspace of `theta`.
pub fn representation_gram(g: &Graph, theta: i64) -> Result<RatMatrix, GraphError> {
    let params = verify_srg(g)?;
    let cos = cosine_sequence(&params, theta)?;
    Ok(RatMatrix::from_fn(g.order(), |i, j| {
        if i == j {
            Rat::one()
        } else if g.has_edge(i, j) {
            cos.w1.clone()
        } else {
            cos.w2.clone()
        }
    }))
}

/// Outcome of checking the representation Gram matrix for one eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepresentationCheck {
    pub theta: i64,
    pub multiplicity: u64,
    pub is_psd: bool,
    pub rank: usize,
}

impl RepresentationCheck {
    pub fn holds(&self) -> bool {
        self.is_psd && self.rank as u64 == self.multiplicity
    }
}

pub fn check_representation(g: &Graph, theta: i64) -> Result<RepresentationCheck, GraphError> {
    let params = verify_srg(g)?;
    let sp = spectrum(&params)?;
    let gram = representation_gram(g, theta)?;
    let (is_psd, rank) = psd_rank(&gram).expect("representation Gram matrices are symmetric");
    Ok(RepresentationCheck {
        theta,
        multiplicity: sp.multiplicity_of(theta).unwrap_or(0),
        is_psd,
        rank,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NeighborhoodDecomposition {
    pub center: usize,
    pub cycles: Vec<Vec<usize>>,
}

impl NeighborhoodDecomposition {
    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }
}

/// Splits the 2-regular subgraph induced on the neighbourhood of `u` into
/// its cycles. Each cycle starts at its smallest unvisited vertex and leaves
/// through the smaller-labelled neighbour.
pub fn neighborhood_cycles(g: &Graph, u: usize) -> Result<NeighborhoodDecomposition, GraphError> {
    g.check_vertex(u)?;
    let nbrs = g.neighbors(u);
    let local = |x: usize| -> Vec<usize> {
        nbrs.iter().copied().filter(|&y| g.has_edge(x, y)).collect()
    };
    for &x in &nbrs {
        let d = local(x).len();
        if d != 2 {
            return Err(GraphError::NotDegreeTwo {
                vertex: x,
                degree: d,
            });
        }
    }
    let mut unvisited: BTreeSet<usize> = nbrs.iter().copied().collect();
    let mut cycles = Vec::new();
    while let Some(&start) = unvisited.iter().next() {
        let mut cycle = vec![start];
        unvisited.remove(&start);
        let mut prev = start;
        let mut cur = local(start)[0];
        while cur != start {
            cycle.push(cur);
            unvisited.remove(&cur);
            let next = local(cur).into_iter().find(|&y| y != prev).expect("degree two");
            prev = cur;
            cur = next;
        }
        cycles.push(cycle);
    }
    Ok(NeighborhoodDecomposition { center: u, cycles })
}

/// A cycle of length `t` with a marked subset of positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MarkedCycle {
    t: usize,
    marks: Vec<usize>,
}

impl MarkedCycle {
    /// Positions are reduced mod `t`; duplicates collapse.
    pub fn new(t: usize, marks: impl IntoIterator<Item = usize>) -> Self {
        assert!(t > 0, "cycle length must be positive");
        let set: BTreeSet<usize> = marks.into_iter().map(|m| m % t).collect();
        MarkedCycle {
            t,
            marks: set.into_iter().collect(),
        }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn marks(&self) -> &[usize] {
        &self.marks
    }

    pub fn s(&self) -> usize {
        self.marks.len()
    }

    pub fn is_marked(&self, pos: usize) -> bool {
        self.marks.binary_search(&(pos % self.t)).is_ok()
    }

    pub fn rotate(&self, by: usize) -> Self {
        MarkedCycle::new(self.t, self.marks.iter().map(|&m| m + by))
    }

    pub fn reflect(&self) -> Self {
        MarkedCycle::new(self.t, self.marks.iter().map(|&m| self.t - m))
    }

    /// Lexicographically least image under rotations and reflections.
    pub fn canonical(&self) -> Self {
        let reflected = self.reflect();
        (0..self.t)
            .flat_map(|r| [self.rotate(r), reflected.rotate(r)])
            .min()
            .expect("t > 0")
    }

    /// Maximal runs of consecutive marked positions, in cyclic order. A run
    /// wrapping past position `t-1` is listed from its first position.
    pub fn components(&self) -> Vec<Vec<usize>> {
        if self.marks.len() == self.t {
            return vec![self.marks.clone()];
        }
        let starts = self
            .marks
            .iter()
            .copied()
            .filter(|&m| !self.is_marked(m + self.t - 1));
        starts
            .map(|s| {
                let mut run = vec![s];
                let mut next = (s + 1) % self.t;
                while self.is_marked(next) {
                    run.push(next);
                    next = (next + 1) % self.t;
                }
                run
            })
            .collect()
    }

    pub fn component_sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.components().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        sizes
    }

    /// Lengths of the unmarked runs between consecutive components, read in
    /// cyclic order starting after the first component.
    pub fn gaps(&self) -> Vec<usize> {
        let comps = self.components();
        let c = comps.len();
        (0..c)
            .map(|i| {
                let end = *comps[i].last().unwrap();
                let next = comps[(i + 1) % c][0];
                (next + self.t - end - 1) % self.t
            })
            .collect()
    }

    /// Every component is a single mark and all gaps are equal.
    pub fn is_evenly_spaced(&self) -> bool {
        let s = self.s();
        s > 0
            && self.t.is_multiple_of(s)
            && self.component_sizes().iter().all(|&c| c == 1)
            && self.gaps().iter().all(|&g| g + 1 == self.t / s)
    }
}

/// Marks, on each neighbourhood cycle of `u`, the positions adjacent to `w`.
pub fn mu_marks(g: &Graph, u: usize, w: usize) -> Result<Vec<MarkedCycle>, GraphError> {
    g.check_vertex(w)?;
    if u == w || g.has_edge(u, w) || g.common_neighbors(u, w) == 0 {
        return Err(GraphError::NotAtDistanceTwo { u, w });
    }
    let dec = neighborhood_cycles(g, u)?;
    Ok(dec
        .cycles
        .iter()
        .map(|c| {
            MarkedCycle::new(
                c.len(),
                c.iter()
                    .enumerate()
                    .filter(|&(_, &x)| g.has_edge(x, w))
                    .map(|(i, _)| i),
            )
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;
    use crate::exactlin::rank;

    #[test]
    fn named_graphs_verify() {
        assert_eq!(verify_srg(&petersen()).unwrap(), validate_params(10, 3, 0, 1).unwrap());
        assert_eq!(verify_srg(&paley(13)).unwrap(), validate_params(13, 6, 2, 3).unwrap());
        assert_eq!(verify_srg(&rook(3)).unwrap(), validate_params(9, 4, 1, 2).unwrap());
        assert_eq!(verify_srg(&cycle(5)).unwrap(), validate_params(5, 2, 0, 1).unwrap());
    }

    #[test]
    fn verification_failures() {
        assert!(matches!(verify_srg(&path(3)), Err(GraphError::NotRegular { .. })));
        assert!(matches!(verify_srg(&complete(4)), Err(GraphError::Degenerate(_))));
        assert!(matches!(verify_srg(&Graph::new(4)), Err(GraphError::Degenerate(_))));
        let two_triangles = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        assert!(matches!(verify_srg(&two_triangles), Err(GraphError::Degenerate(_))));
        assert!(matches!(
            verify_srg(&cycle(6)),
            Err(GraphError::NotStronglyRegular { .. })
        ));
        assert_eq!(verify_srg(&Graph::new(1)), Err(GraphError::TooSmall));
    }

    #[test]
    fn representation_grams_have_eigenspace_rank() {
        for (g, theta, mult) in [(petersen(), -2, 4), (petersen(), 1, 5), (rook(3), 1, 4), (rook(3), -2, 4)] {
            let gram = representation_gram(&g, theta).unwrap();
            assert_eq!(psd_rank(&gram), Ok((true, mult)));
            assert_eq!(rank(&gram), mult);
            for i in 0..g.order() {
                assert_eq!(gram[(i, i)], Rat::one());
            }
            assert!(check_representation(&g, theta).unwrap().holds());
        }
        assert!(matches!(
            representation_gram(&petersen(), 2),
            Err(GraphError::Params(ParamsError::NotAnEigenvalue { .. }))
        ));
    }

    #[test]
    fn neighbourhoods() {
        let k4 = neighborhood_cycles(&complete(4), 2).unwrap();
        assert_eq!(k4.cycle_lengths(), vec![3]);
        let p = neighborhood_cycles(&paley(13), 0).unwrap();
        assert_eq!(p.cycles, vec![vec![1, 4, 3, 12, 9, 10]]);
        assert!(matches!(
            neighborhood_cycles(&petersen(), 0),
            Err(GraphError::NotDegreeTwo { degree: 0, .. })
        ));
    }

    #[test]
    fn paley_marks_sum_to_mu() {
        let g = paley(13);
        for w in 1..13 {
            if g.has_edge(0, w) {
                continue;
            }
            let marks = mu_marks(&g, 0, w).unwrap();
            assert_eq!(marks.iter().map(MarkedCycle::s).sum::<usize>(), 3);
        }
        assert!(matches!(
            mu_marks(&complete(4), 0, 1),
            Err(GraphError::NotAtDistanceTwo { .. })
        ));
    }

    #[test]
    fn marked_cycle_structure() {
        let mc = MarkedCycle::new(9, [0, 1, 5]);
        assert_eq!(mc.components(), vec![vec![0, 1], vec![5]]);
        assert_eq!(mc.component_sizes(), vec![1, 2]);
        assert_eq!(mc.gaps(), vec![3, 3]);
        let wrap = MarkedCycle::new(6, [5, 0, 3]);
        assert_eq!(wrap.components(), vec![vec![3], vec![5, 0]]);
        assert!(MarkedCycle::new(6, [1, 4]).is_evenly_spaced());
        assert!(!MarkedCycle::new(6, [0, 2]).is_evenly_spaced());
        assert_eq!(MarkedCycle::new(6, [2, 5]).canonical(), MarkedCycle::new(6, [0, 3]));
        assert_eq!(MarkedCycle::new(6, [4, 5]).canonical(), MarkedCycle::new(6, [0, 1]));
        assert_eq!(MarkedCycle::new(3, [4]).marks(), &[1]);
    }

    #[test]
    fn complement_of_petersen() {
        let c = verify_srg(&petersen().complement()).unwrap();
        assert_eq!((c.v, c.k, c.lambda, c.mu), verify_srg(&petersen()).unwrap().complement());
    }
}
