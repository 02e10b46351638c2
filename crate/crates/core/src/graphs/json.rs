//! JSON adjacency lists: `{"n": 4, "edges": [[0, 1], [1, 2]]}`.

use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

#[derive(Serialize, Deserialize)]
struct AdjacencyList {
    n: usize,
    edges: Vec<[usize; 2]>,
}

pub fn parse_json_graph(text: &str) -> Result<Graph, GraphError> {
    let adj: AdjacencyList =
        serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
    let mut g = Graph::new(adj.n);
    for [a, b] in adj.edges {
        if a >= adj.n || b >= adj.n {
            return Err(GraphError::Json(format!("edge ({a}, {b}) out of range")));
        }
        if a == b {
            return Err(GraphError::Json(format!("self-loop at {a}")));
        }
        g.add_edge(a, b);
    }
    Ok(g)
}

pub fn write_json_graph(g: &Graph) -> String {
    let adj = AdjacencyList {
        n: g.order(),
        edges: g.edges().into_iter().map(|(a, b)| [a, b]).collect(),
    };
    serde_json::to_string(&adj).expect("adjacency lists serialize")
}
