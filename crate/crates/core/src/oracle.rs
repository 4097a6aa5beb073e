//! Exact boxicity and dimension of very small instances by exhaustive search.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geometry::{BoxRepresentation, Interval};
use crate::graph::Graph;
use crate::poset::{Poset, Realizer};
use crate::verify::{verify_box_rep, verify_realizer};

pub const INTERVAL_MAX_N: usize = 12;
pub const BOXICITY_MAX_N: usize = 8;
pub const DIMENSION_MAX_N: usize = 8;
/// Search nodes allowed per oracle call.
pub const ORACLE_BUDGET: u64 = 200_000_000;

struct Budget(u64);

impl Budget {
    fn tick(&mut self) -> Result<()> {
        if self.0 == 0 {
            return Err(Error::param("oracle search budget exhausted"));
        }
        self.0 -= 1;
        Ok(())
    }
}

/// An interval model of `g` if `g` is an interval graph.
///
/// Searches for a vertex ordering without `u < v < w`, `uw ∈ E`, `uv ∉ E`;
/// such an ordering gives each vertex `[pos(v), max pos over N[v]]`.
pub fn is_interval_graph(g: &Graph) -> Result<Option<Vec<Interval>>> {
    let n = g.n();
    if n > INTERVAL_MAX_N {
        return Err(Error::param(format!(
            "interval oracle handles n <= {INTERVAL_MAX_N}, got {n}"
        )));
    }
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut closed = vec![false; n];
    let mut budget = Budget(ORACLE_BUDGET);
    if !extend_order(g, &mut order, &mut placed, &mut closed, &mut budget)? {
        return Ok(None);
    }
    let col = ordering_intervals(g, &order);
    debug_assert!(verify_box_rep(
        g,
        &BoxRepresentation::from_columns(n, std::slice::from_ref(&col)).unwrap()
    )
    .unwrap()
    .is_clean());
    Ok(Some(col))
}

/// A placed vertex is closed once a non-neighbour follows it; no later
/// vertex may then be adjacent to it.
fn extend_order(
    g: &Graph,
    order: &mut Vec<usize>,
    placed: &mut [bool],
    closed: &mut [bool],
    budget: &mut Budget,
) -> Result<bool> {
    let n = g.n();
    if order.len() == n {
        return Ok(true);
    }
    for w in 0..n {
        if placed[w] || g.neighbors(w).iter().any(|&u| closed[u]) {
            continue;
        }
        budget.tick()?;
        let newly: Vec<usize> = order
            .iter()
            .copied()
            .filter(|&u| !closed[u] && !g.has_edge(u, w))
            .collect();
        // a closed vertex with an unplaced neighbour other than w is a dead end
        let dead = newly
            .iter()
            .any(|&u| g.neighbors(u).iter().any(|&x| !placed[x] && x != w));
        if dead {
            continue;
        }
        placed[w] = true;
        order.push(w);
        for &u in &newly {
            closed[u] = true;
        }
        if extend_order(g, order, placed, closed, budget)? {
            return Ok(true);
        }
        for &u in &newly {
            closed[u] = false;
        }
        order.pop();
        placed[w] = false;
    }
    Ok(false)
}

fn ordering_intervals(g: &Graph, order: &[usize]) -> Vec<Interval> {
    let mut pos = vec![0i64; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i as i64;
    }
    (0..g.n())
        .map(|v| {
            let reach = g
                .neighbors(v)
                .iter()
                .map(|&w| pos[w])
                .fold(pos[v], i64::max);
            Interval::new(pos[v], reach)
        })
        .collect()
}

/// Rearranges `p` into the next permutation in lexicographic order.
fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Drops duplicate and non-maximal sets; returns the survivors with the
/// index of a representative.
fn maximal_sets(sets: Vec<(u64, usize)>) -> Vec<(u64, usize)> {
    let mut seen: HashMap<u64, usize> = HashMap::new();
    for (m, i) in sets {
        seen.entry(m).or_insert(i);
    }
    let mut all: Vec<(u64, usize)> = seen.into_iter().collect();
    all.sort_by_key(|&(m, i)| (std::cmp::Reverse(m.count_ones()), m, i));
    let mut kept: Vec<(u64, usize)> = Vec::new();
    for (m, i) in all {
        let dominated = kept
            .iter()
            .any(|&(k, _)| k.count_ones() > m.count_ones() && k & m == m);
        if !dominated {
            kept.push((m, i));
        }
    }
    kept
}

/// Fewest sets (by index) covering `universe`, trying sizes `1..=max_k`.
fn min_cover(
    universe: u64,
    sets: &[u64],
    max_k: usize,
    budget: &mut Budget,
) -> Result<Option<Vec<usize>>> {
    if universe == 0 {
        return Ok(Some(Vec::new()));
    }
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); 64];
    for (i, &s) in sets.iter().enumerate() {
        for (e, c) in containing.iter_mut().enumerate() {
            if s >> e & 1 == 1 {
                c.push(i);
            }
        }
    }
    let widest = sets
        .iter()
        .map(|s| (s & universe).count_ones())
        .max()
        .unwrap_or(0);
    let exact: HashMap<u64, usize> = sets
        .iter()
        .enumerate()
        .map(|(i, &s)| (s & universe, i))
        .collect();
    let mut chosen = Vec::new();
    for k in 1..=max_k {
        if cover_dfs(
            universe,
            k,
            sets,
            &containing,
            widest,
            &exact,
            &mut chosen,
            budget,
        )? {
            return Ok(Some(chosen));
        }
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn cover_dfs(
    uncovered: u64,
    left: usize,
    sets: &[u64],
    containing: &[Vec<usize>],
    widest: u32,
    exact: &HashMap<u64, usize>,
    chosen: &mut Vec<usize>,
    budget: &mut Budget,
) -> Result<bool> {
    if uncovered == 0 {
        return Ok(true);
    }
    if left == 0 || uncovered.count_ones() > left as u32 * widest {
        return Ok(false);
    }
    budget.tick()?;
    if left == 1 {
        if let Some(&i) = exact.get(&uncovered) {
            chosen.push(i);
            return Ok(true);
        }
    }
    let e = uncovered.trailing_zeros() as usize;
    for &i in &containing[e] {
        if left == 1 && sets[i] & uncovered != uncovered {
            continue;
        }
        chosen.push(i);
        if cover_dfs(
            uncovered & !sets[i],
            left - 1,
            sets,
            containing,
            widest,
            exact,
            chosen,
            budget,
        )? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}

/// Boxicity of `g` with a witness. Every interval supergraph of `g` contains
/// the supergraph read off some vertex ordering, so the inclusion-maximal
/// sets of non-edges separated by an ordering are set-covered.
pub fn exact_boxicity(g: &Graph) -> Result<(usize, BoxRepresentation)> {
    let n = g.n();
    if n > BOXICITY_MAX_N {
        return Err(Error::param(format!(
            "boxicity oracle handles n <= {BOXICITY_MAX_N}, got {n}"
        )));
    }
    let non_edges: Vec<(usize, usize)> = g.non_edges().collect();
    if non_edges.is_empty() {
        return Ok((1, BoxRepresentation::universal(n, 1)));
    }
    let universe = if non_edges.len() == 64 {
        u64::MAX
    } else {
        (1u64 << non_edges.len()) - 1
    };
    let mut orders: Vec<Vec<usize>> = Vec::new();
    let mut masks = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let col = ordering_intervals(g, &perm);
        let mut m = 0u64;
        for (b, &(u, v)) in non_edges.iter().enumerate() {
            if !col[u].meets(&col[v]) {
                m |= 1 << b;
            }
        }
        masks.push((m, orders.len()));
        orders.push(perm.clone());
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let kept = maximal_sets(masks);
    let sets: Vec<u64> = kept.iter().map(|&(m, _)| m).collect();
    let mut budget = Budget(ORACLE_BUDGET);
    let cover = min_cover(universe, &sets, (n / 2).max(1), &mut budget)?
        .ok_or_else(|| Error::structural("no cover within floor(n/2) dimensions"))?;
    let columns: Vec<Vec<Interval>> = cover
        .iter()
        .map(|&i| ordering_intervals(g, &orders[kept[i].1]))
        .collect();
    let rep = BoxRepresentation::from_columns(n, &columns)?;
    verify_box_rep(g, &rep)?.into_result()?;
    Ok((cover.len(), rep))
}

/// Dimension of `p` with a realizer: linear extensions are set-covered
/// against the critical pairs `(x, y)` (incomparable, everything below `x`
/// is below `y`, everything above `y` is above `x`), each of which must be
/// reversed by some extension.
pub fn exact_dimension(p: &Poset) -> Result<(usize, Realizer)> {
    let n = p.n();
    if n > DIMENSION_MAX_N {
        return Err(Error::param(format!(
            "dimension oracle handles n <= {DIMENSION_MAX_N}, got {n}"
        )));
    }
    let critical: Vec<(usize, usize)> = p
        .incomparable_pairs()
        .into_iter()
        .filter(|&(x, y)| {
            (0..n).all(|z| (!p.less(z, x) || p.less(z, y)) && (!p.less(y, z) || p.less(x, z)))
        })
        .collect();
    let mut budget = Budget(ORACLE_BUDGET);
    let mut exts: Vec<Vec<usize>> = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    linear_extensions(p, &mut prefix, &mut placed, &mut exts, &mut budget)?;
    if critical.is_empty() {
        let r = Realizer::new(vec![exts[0].clone()]);
        return Ok((1, r));
    }
    let universe = (1u64 << critical.len()) - 1;
    let masks: Vec<(u64, usize)> = exts
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let mut rank = vec![0; n];
            for (j, &v) in e.iter().enumerate() {
                rank[v] = j;
            }
            let m = critical
                .iter()
                .enumerate()
                .filter(|(_, &(x, y))| rank[y] < rank[x])
                .fold(0u64, |m, (b, _)| m | 1 << b);
            (m, i)
        })
        .collect();
    let kept = maximal_sets(masks);
    let sets: Vec<u64> = kept.iter().map(|&(m, _)| m).collect();
    let cover = min_cover(universe, &sets, n.max(1), &mut budget)?
        .ok_or_else(|| Error::structural("no realizer found"))?;
    let r = Realizer::new(cover.iter().map(|&i| exts[kept[i].1].clone()).collect());
    verify_realizer(p, &r.orders)?.into_result()?;
    Ok((r.len(), r))
}

fn linear_extensions(
    p: &Poset,
    prefix: &mut Vec<usize>,
    placed: &mut [bool],
    out: &mut Vec<Vec<usize>>,
    budget: &mut Budget,
) -> Result<()> {
    let n = p.n();
    if prefix.len() == n {
        out.push(prefix.clone());
        return Ok(());
    }
    for v in 0..n {
        if placed[v] || (0..n).any(|u| !placed[u] && p.less(u, v)) {
            continue;
        }
        budget.tick()?;
        placed[v] = true;
        prefix.push(v);
        linear_extensions(p, prefix, placed, out, budget)?;
        prefix.pop();
        placed[v] = false;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn interval_recognition() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(is_interval_graph(&p4).unwrap().is_some());
        assert!(is_interval_graph(&cycle(4)).unwrap().is_none());
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(is_interval_graph(&star).unwrap().is_some());
        assert!(is_interval_graph(&Graph::empty(13)).is_err());
    }

    #[test]
    fn small_boxicities() {
        assert_eq!(exact_boxicity(&Graph::complete(5)).unwrap().0, 1);
        assert_eq!(exact_boxicity(&cycle(4)).unwrap().0, 2);
        let mut k222 = Graph::complete(6);
        k222 = Graph::from_edges(
            6,
            &k222
                .edges()
                .filter(|&(u, v)| !(u % 2 == 0 && v == u + 1))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(exact_boxicity(&k222).unwrap().0, 3);
        assert_eq!(exact_boxicity(&Graph::empty(8)).unwrap().0, 1);
    }

    #[test]
    fn small_dimensions() {
        assert_eq!(exact_dimension(&Poset::chain(4)).unwrap().0, 1);
        assert_eq!(exact_dimension(&Poset::antichain(2)).unwrap().0, 2);
        assert_eq!(exact_dimension(&Poset::antichain(8)).unwrap().0, 2);
        assert_eq!(exact_dimension(&Poset::standard_example(3)).unwrap().0, 3);
        assert_eq!(exact_dimension(&Poset::standard_example(4)).unwrap().0, 4);
    }

    #[test]
    fn permutations_enumerate_all() {
        let mut p = vec![0, 1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 24);
    }
}
