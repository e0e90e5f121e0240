//! Exact maximum independent set for graphs with at most 128 vertices.

/// Adjacency rows as bitsets; returns the vertex set of one maximum
/// independent set. Ties are resolved deterministically.
pub(crate) fn maximum_independent_set(adj: &[u128]) -> u128 {
    debug_assert!(adj.len() <= 128);
    let all = if adj.len() == 128 { u128::MAX } else { (1u128 << adj.len()) - 1 };
    let mut best = 0u128;
    search(adj, all, 0, &mut best);
    best
}

fn search(adj: &[u128], candidates: u128, chosen: u128, best: &mut u128) {
    if chosen.count_ones() + candidates.count_ones() <= best.count_ones() {
        return;
    }
    // Highest degree inside the candidate set, lowest index on ties.
    let mut pivot = None;
    let mut pivot_degree = 0;
    let mut rest = candidates;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (adj[v] & candidates).count_ones();
        if pivot.is_none() || d > pivot_degree {
            pivot = Some(v);
            pivot_degree = d;
        }
    }
    let Some(v) = pivot else {
        *best = chosen;
        return;
    };
    if pivot_degree == 0 {
        *best = chosen | candidates;
        return;
    }
    let bit = 1u128 << v;
    search(adj, candidates & !adj[v] & !bit, chosen | bit, best);
    search(adj, candidates & !bit, chosen, best);
}
