use std::collections::HashMap;

use crate::graph::{Graph, VertexPartition};

/// Coarsest equitable partition refining `initial`, by repeatedly splitting
/// blocks on the vector of neighbour counts into every block.
///
/// Blocks come out ordered by their smallest vertex.
pub fn equitable_refinement(g: &Graph, initial: &VertexPartition) -> VertexPartition {
    let n = g.order();
    assert_eq!(initial.order(), n, "partition does not cover the graph");
    let mut color = initial.block_of();
    let mut classes = initial.len();
    loop {
        let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let mut next = vec![0; n];
        for v in 0..n {
            let mut counts = vec![0; classes];
            for w in g.neighbors(v) {
                counts[color[w]] += 1;
            }
            let fresh = ids.len();
            next[v] = *ids.entry((color[v], counts)).or_insert(fresh);
        }
        let refined = ids.len();
        color = next;
        if refined == classes {
            break;
        }
        classes = refined;
    }
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); classes];
    for (v, &c) in color.iter().enumerate() {
        blocks[c].push(v);
    }
    blocks.sort_by_key(|b| b[0]);
    VertexPartition::new(n, blocks).expect("refinement of a valid partition")
}

/// Every vertex of a block has the same number of neighbours in each block.
pub fn is_equitable(g: &Graph, part: &VertexPartition) -> bool {
    super::quotient::check_equitable(g, part).is_ok()
}
