use crate::geometry::{BoxRepresentation, Interval};
use crate::graph::Graph;

/// Representation with at most `max(1, n/2)` dimensions: each dimension takes
/// the lexicographically first non-adjacent pair `{a, b}` of the remaining
/// vertices, realizes every non-edge at `a` or `b`, and retires both.
pub fn pair_elimination_rep(g: &Graph) -> BoxRepresentation {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut columns: Vec<Vec<Interval>> = Vec::new();
    let mut start = 0;
    while let Some((a, b)) = next_pair(g, &alive, &mut start) {
        let col = (0..n)
            .map(|w| {
                if !alive[w] {
                    Interval::FULL
                } else if w == a {
                    Interval::new(-2, -1)
                } else if w == b {
                    Interval::new(1, 2)
                } else {
                    match (g.has_edge(w, a), g.has_edge(w, b)) {
                        (true, true) => Interval::new(-2, 2),
                        (true, false) => Interval::new(-2, 0),
                        (false, true) => Interval::new(0, 2),
                        (false, false) => Interval::point(0),
                    }
                }
            })
            .collect();
        columns.push(col);
        alive[a] = false;
        alive[b] = false;
    }
    if columns.is_empty() {
        columns.push(vec![Interval::point(0); n]);
    }
    BoxRepresentation::from_columns(n, &columns).expect("columns have n entries")
}

fn next_pair(g: &Graph, alive: &[bool], start: &mut usize) -> Option<(usize, usize)> {
    let n = g.n();
    while *start < n {
        let a = *start;
        if alive[a] {
            if let Some(b) = (a + 1..n).find(|&b| alive[b] && !g.has_edge(a, b)) {
                return Some((a, b));
            }
        }
        // a has no remaining non-neighbour after it, and later rounds only shrink the set
        *start += 1;
    }
    None
}
