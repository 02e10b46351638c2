//! Small named graphs used as fixtures and CLI demos.

use super::Graph;

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            g.add_edge(i, j);
        }
    }
    g
}

pub fn path(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for i in 1..n {
        g.add_edge(i - 1, i);
    }
    g
}

pub fn cycle(n: usize) -> Graph {
    let mut g = path(n);
    if n >= 3 {
        g.add_edge(n - 1, 0);
    }
    g
}

/// Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i ~ i+5`.
pub fn petersen() -> Graph {
    let mut g = Graph::new(10);
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
        g.add_edge(i, i + 5);
    }
    g
}

/// Paley graph on `Z_q` for a prime `q ≡ 1 (mod 4)`: `i ~ j` iff `j - i` is a
/// nonzero square.
pub fn paley(q: usize) -> Graph {
    assert!(q % 4 == 1, "Paley graphs need q ≡ 1 mod 4");
    let squares: Vec<bool> = {
        let mut s = vec![false; q];
        for x in 1..q {
            s[x * x % q] = true;
        }
        s
    };
    let mut g = Graph::new(q);
    for i in 0..q {
        for j in i + 1..q {
            if squares[j - i] {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// `m × m` rook graph: cell `(r, c)` is vertex `m·r + c`, adjacent to cells
/// sharing its row or column.
pub fn rook(m: usize) -> Graph {
    let mut g = Graph::new(m * m);
    for a in 0..m * m {
        for b in a + 1..m * m {
            if a / m == b / m || a % m == b % m {
                g.add_edge(a, b);
            }
        }
    }
    g
}
