//! Deterministic instance generators.

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::builders::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pipelines::Layering;
use crate::poset::Poset;
use crate::seed;

/// `G(n, p)` with every vertex degree capped at `max_degree`: pairs are
/// visited in a random order and an edge is kept only if both ends are below
/// the cap.
pub fn gnp_capped(n: usize, p: f64, max_degree: usize, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::param(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = seed::rng(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut g = Graph::empty(n);
    let mut deg = vec![0usize; n];
    for (i, &u) in order.iter().enumerate() {
        for &v in &order[i + 1..] {
            if rng.gen_bool(p) && deg[u] < max_degree && deg[v] < max_degree {
                g.add_edge(u, v)?;
                deg[u] += 1;
                deg[v] += 1;
            }
        }
    }
    Ok(g)
}

/// Random bipartite graph on `A = 0..a`, `B = a..a+b` with degree caps per side.
pub fn bipartite_capped(
    a: usize,
    b: usize,
    p: f64,
    cap_a: usize,
    cap_b: usize,
    seed: u64,
) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::param(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = seed::rng(seed);
    let mut g = Graph::empty(a + b);
    let mut deg = vec![0usize; a + b];
    let mut pairs: Vec<(usize, usize)> = (0..a)
        .flat_map(|u| (a..a + b).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(&mut rng);
    for (u, v) in pairs {
        if rng.gen_bool(p) && deg[u] < cap_a && deg[v] < cap_b {
            g.add_edge(u, v)?;
            deg[u] += 1;
            deg[v] += 1;
        }
    }
    Ok(g)
}

/// `rows x cols` grid; vertex `(r, c)` is `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    Graph::from_edges(rows * cols, &edges).expect("grid edges are simple")
}

/// Path decomposition of a grid whose bags are two consecutive columns.
pub fn grid_td(rows: usize, cols: usize) -> TreeDecomposition {
    let column = |c: usize| (0..rows).map(move |r| r * cols + c);
    let bags: Vec<Vec<usize>> = if cols <= 1 {
        vec![(0..rows * cols).collect()]
    } else {
        (0..cols - 1)
            .map(|c| {
                let mut b: Vec<usize> = column(c).chain(column(c + 1)).collect();
                b.sort_unstable();
                b
            })
            .collect()
    };
    let edges = (1..bags.len()).map(|i| (i - 1, i)).collect();
    TreeDecomposition {
        n: rows * cols,
        bags,
        edges,
    }
}

/// BFS layering of a grid from the corner `(0, 0)`: layer `r + c`.
pub fn grid_layers(rows: usize, cols: usize) -> Layering {
    Layering {
        layer: (0..rows * cols).map(|v| v / cols + v % cols).collect(),
    }
}

/// Complement of a perfect matching on `n` (even) vertices: `2i` and `2i+1`
/// are the only non-adjacent pairs.
pub fn matching_complement(n: usize) -> Result<Graph> {
    if !n.is_multiple_of(2) {
        return Err(Error::param(format!(
            "matching complement needs an even vertex count, got {n}"
        )));
    }
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !(u % 2 == 0 && v == u + 1))
        .collect();
    Graph::from_edges(n, &edges)
}

/// Crown `S_m`.
pub fn crown(m: usize) -> Poset {
    Poset::standard_example(m)
}

/// Height-two poset: minimal elements `0..lo`, maximal `lo..lo+hi`, each
/// relation present with probability `p` subject to a comparability-degree cap.
pub fn height_two_poset(lo: usize, hi: usize, p: f64, cap: usize, seed: u64) -> Result<Poset> {
    let g = bipartite_capped(lo, hi, p, cap, cap, seed)?;
    Poset::from_relations(lo + hi, &g.edges().collect::<Vec<_>>())
}

/// Random order: `u < v` added with probability `p` for `u < v` in a random
/// labelling, then closed.
pub fn random_poset(n: usize, p: f64, seed: u64) -> Result<Poset> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::param(format!(
            "relation probability {p} outside [0, 1]"
        )));
    }
    let mut rng = seed::rng(seed);
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(&mut rng);
    let mut rels = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                rels.push((label[i], label[j]));
            }
        }
    }
    Poset::from_relations(n, &rels)
}
