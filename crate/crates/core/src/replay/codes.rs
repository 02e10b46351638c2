//! Exhaustive search for sets of words of fixed length over a small
//! alphabet in which every two words agree in exactly a prescribed number
//! of positions.

use serde::Serialize;

use super::ReplayError;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSearchConfig {
    pub n_words: usize,
    pub length: usize,
    pub alphabet: usize,
    pub agreement: usize,
    pub budget: u64,
    /// Order in which positions are compared when sorting candidate words.
    pub position_order: Vec<usize>,
    /// Order of letters; the first letter fills the fixed first word.
    pub letter_order: Vec<u8>,
}

impl CodeSearchConfig {
    pub fn new(n_words: usize, length: usize, alphabet: usize, agreement: usize) -> Self {
        CodeSearchConfig {
            n_words,
            length,
            alphabet,
            agreement,
            budget: DEFAULT_BUDGET,
            position_order: (0..length).collect(),
            letter_order: (0..alphabet.min(256) as u16).map(|l| l as u8).collect(),
        }
    }

    fn check(&self) -> Result<(), ReplayError> {
        if self.n_words == 0 || self.length == 0 || self.alphabet == 0 {
            return Err(ReplayError::InvalidInput("all search parameters must be positive".into()));
        }
        if self.alphabet > 256 {
            return Err(ReplayError::InvalidInput("alphabet is limited to 256 letters".into()));
        }
        let mut p = self.position_order.clone();
        p.sort_unstable();
        if p != (0..self.length).collect::<Vec<_>>() {
            return Err(ReplayError::InvalidInput("position order is not a permutation".into()));
        }
        let mut l = self.letter_order.clone();
        l.sort_unstable();
        if l.iter().map(|&x| x as usize).ne(0..self.alphabet) {
            return Err(ReplayError::InvalidInput("letter order is not a permutation".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum CodeSearchOutcome {
    #[serde(rename = "FEASIBLE")]
    Feasible { words: Vec<Vec<u8>>, nodes: u64 },
    #[serde(rename = "INFEASIBLE")]
    Infeasible { nodes: u64 },
}

impl CodeSearchOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, CodeSearchOutcome::Feasible { .. })
    }

    pub fn nodes(&self) -> u64 {
        match self {
            CodeSearchOutcome::Feasible { nodes, .. } | CodeSearchOutcome::Infeasible { nodes } => *nodes,
        }
    }
}

fn agreements(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x == y).count()
}

/// Checks that `words` have the given length and alphabet and pairwise
/// agreement exactly `agreement`.
pub fn verify_agreement_code(words: &[Vec<u8>], length: usize, alphabet: usize, agreement: usize) -> bool {
    words
        .iter()
        .all(|w| w.len() == length && w.iter().all(|&l| (l as usize) < alphabet))
        && words
            .iter()
            .enumerate()
            .all(|(i, a)| words[i + 1..].iter().all(|b| agreements(a, b) == agreement))
}

pub fn agreement_code_search(
    n_words: usize,
    length: usize,
    alphabet: usize,
    agreement: usize,
) -> Result<CodeSearchOutcome, ReplayError> {
    run_code_search(&CodeSearchConfig::new(n_words, length, alphabet, agreement))
}

/// Depth-first search. Any code can be moved by a letter permutation in each
/// position so that its first word is constant; the remaining words are then
/// chosen in increasing order from the candidates agreeing with that word.
pub fn run_code_search(cfg: &CodeSearchConfig) -> Result<CodeSearchOutcome, ReplayError> {
    cfg.check()?;
    let first = vec![cfg.letter_order[0]; cfg.length];
    if cfg.n_words == 1 {
        return Ok(CodeSearchOutcome::Feasible {
            words: vec![first],
            nodes: 1,
        });
    }
    if cfg.agreement > cfg.length {
        return Ok(CodeSearchOutcome::Infeasible { nodes: 1 });
    }

    let mut rank = [0usize; 256];
    for (i, &l) in cfg.letter_order.iter().enumerate() {
        rank[l as usize] = i;
    }
    let total = (cfg.alphabet as u128).checked_pow(cfg.length as u32);
    if total.is_none_or(|t| t > 50_000_000) {
        return Err(ReplayError::InvalidInput("word space too large to enumerate".into()));
    }
    let mut candidates: Vec<Vec<u8>> = Vec::new();
    let mut word = vec![0u8; cfg.length];
    loop {
        if word != first && agreements(&word, &first) == cfg.agreement {
            candidates.push(word.clone());
        }
        let mut i = 0;
        while i < cfg.length && word[i] as usize == cfg.alphabet - 1 {
            word[i] = 0;
            i += 1;
        }
        if i == cfg.length {
            break;
        }
        word[i] += 1;
    }
    candidates.sort_by_key(|w| cfg.position_order.iter().map(|&p| rank[w[p] as usize]).collect::<Vec<_>>());

    let c = candidates.len();
    let compatible: Vec<Vec<bool>> = (0..c)
        .map(|i| {
            (0..c)
                .map(|j| agreements(&candidates[i], &candidates[j]) == cfg.agreement)
                .collect()
        })
        .collect();

    struct Search<'a> {
        compatible: &'a [Vec<bool>],
        need: usize,
        budget: u64,
        nodes: u64,
        chosen: Vec<usize>,
    }

    impl Search<'_> {
        fn dfs(&mut self, pool: &[usize]) -> Result<bool, ReplayError> {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(ReplayError::ResourceLimit { nodes: self.budget });
            }
            if self.chosen.len() == self.need {
                return Ok(true);
            }
            if pool.len() < self.need - self.chosen.len() {
                return Ok(false);
            }
            for (idx, &cand) in pool.iter().enumerate() {
                let next: Vec<usize> = pool[idx + 1..]
                    .iter()
                    .copied()
                    .filter(|&o| self.compatible[cand][o])
                    .collect();
                self.chosen.push(cand);
                if self.dfs(&next)? {
                    return Ok(true);
                }
                self.chosen.pop();
            }
            Ok(false)
        }
    }

    let mut search = Search {
        compatible: &compatible,
        need: cfg.n_words - 1,
        budget: cfg.budget,
        nodes: 0,
        chosen: Vec::new(),
    };
    let pool: Vec<usize> = (0..c).collect();
    if search.dfs(&pool)? {
        let mut words = vec![first];
        words.extend(search.chosen.iter().map(|&i| candidates[i].clone()));
        Ok(CodeSearchOutcome::Feasible {
            words,
            nodes: search.nodes,
        })
    } else {
        Ok(CodeSearchOutcome::Infeasible { nodes: search.nodes })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_instances() {
        let r = agreement_code_search(2, 7, 3, 1).unwrap();
        let CodeSearchOutcome::Feasible { words, .. } = &r else {
            panic!("expected a witness");
        };
        assert_eq!(words, &vec![vec![0; 7], vec![0, 1, 1, 1, 1, 1, 1]]);
        assert!(verify_agreement_code(words, 7, 3, 1));
        assert!(agreement_code_search(1, 7, 3, 1).unwrap().is_feasible());
        assert!(agreement_code_search(3, 7, 3, 1).unwrap().is_feasible());
    }

    #[test]
    fn endgame_instances() {
        assert!(!agreement_code_search(5, 7, 3, 1).unwrap().is_feasible());
        assert!(!agreement_code_search(4, 7, 3, 1).unwrap().is_feasible());
        let r = agreement_code_search(5, 7, 4, 1).unwrap();
        let CodeSearchOutcome::Feasible { words, .. } = &r else {
            panic!("four letters should leave room");
        };
        assert!(verify_agreement_code(words, 7, 4, 1));
    }

    #[test]
    fn budget_is_enforced() {
        let mut cfg = CodeSearchConfig::new(5, 7, 3, 1);
        cfg.budget = 10;
        assert_eq!(run_code_search(&cfg), Err(ReplayError::ResourceLimit { nodes: 10 }));
    }

    #[test]
    fn verdict_survives_reordering() {
        let mut cfg = CodeSearchConfig::new(5, 7, 3, 1);
        cfg.position_order = vec![6, 2, 4, 0, 1, 5, 3];
        cfg.letter_order = vec![2, 0, 1];
        assert!(!run_code_search(&cfg).unwrap().is_feasible());
        let mut cfg = CodeSearchConfig::new(3, 7, 3, 1);
        cfg.position_order = vec![3, 1, 0, 6, 5, 4, 2];
        cfg.letter_order = vec![1, 2, 0];
        let r = run_code_search(&cfg).unwrap();
        let CodeSearchOutcome::Feasible { words, .. } = r else {
            panic!("expected a witness");
        };
        assert!(verify_agreement_code(&words, 7, 3, 1));
        assert_eq!(words[0], vec![1; 7]);
    }

    #[test]
    fn malformed_configs() {
        assert!(agreement_code_search(0, 7, 3, 1).is_err());
        let mut cfg = CodeSearchConfig::new(2, 3, 2, 1);
        cfg.position_order = vec![0, 0, 1];
        assert!(run_code_search(&cfg).is_err());
        assert!(!verify_agreement_code(&[vec![0, 0], vec![0, 0]], 2, 2, 1));
    }
}
