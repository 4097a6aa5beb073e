use serde::{Deserialize, Serialize};

use super::span::{span_gadget, SpanGadgetSpec};
use crate::error::{Error, Result};
use crate::geometry::{BoxRepresentation, Interval};
use crate::graph::Graph;
use crate::lll::{colour_count, colouring_count, family_colourings, ColouringFamily};
use crate::options::Options;
use crate::seed::SeedStream;
use crate::suitable::build_suitable;

/// Parameters of the suitable-permutation construction for a bipartite pair
/// `(A, B)` with degrees at most `d` on `A` and `Δ` on `B`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BipartiteParams {
    pub d: usize,
    pub delta: usize,
    /// `⌈√(ln d)⌉`
    pub r: usize,
    /// `⌈e (e d / (r+1))^{1+1/r}⌉`
    pub l: usize,
    /// `⌈ln(4 d Δ)⌉`
    pub t: usize,
    /// `r Δ + 1`
    pub h: usize,
    /// `(r+1) 2^{r+1} ln ln h`
    pub p_bound: f64,
    /// Size of the `(r+1)`-suitable family of `[h]` that was used.
    pub p_max: usize,
    /// Number of `(j, α)` blocks with at least one non-edge.
    pub blocks: usize,
    /// `4 t ℓ p_max`
    pub target_d: usize,
}

/// `(r, ℓ, t, h, p_bound)` from `(d, Δ)`.
pub fn bipartite_formulas(d: usize, delta: usize) -> (usize, usize, usize, usize, f64) {
    let r = ((d as f64).ln().sqrt().ceil() as usize).max(1);
    let l = colour_count(d, r);
    let t = colouring_count(d, delta);
    let h = r * delta + 1;
    let p_bound = (r as f64 + 1.0) * 2f64.powi(r as i32 + 1) * (h as f64).ln().ln();
    (r, l, t, h, p_bound)
}

#[derive(Debug, Clone)]
pub struct BipartiteRep {
    pub rep: BoxRepresentation,
    pub params: BipartiteParams,
    pub colourings: ColouringFamily,
}

/// Representation of `G<A,B>` (cliques added on `A` and on `B`) from
/// colourings of `B`, a proper colouring of each block's conflict graph and
/// an `(r+1)`-suitable family of its colour classes. Every permutation gives
/// two span gadgets (classes in forward and in reversed internal order); a
/// gadget is kept only if it separates a pair not separated before.
pub fn bipartite_suitable_rep(
    g: &Graph,
    a: &[usize],
    b: &[usize],
    d: usize,
    delta: usize,
    seed: u64,
    opts: &Options,
) -> Result<BipartiteRep> {
    let n = g.n();
    if !(delta >= d && d >= 2) {
        return Err(Error::param(format!(
            "need Δ >= d >= 2, got d={d}, Δ={delta}"
        )));
    }
    let in_a = g.membership(a, "A")?;
    let in_b = g.membership(b, "B")?;
    if let Some(v) = (0..n).find(|&v| in_a[v] && in_b[v]) {
        return Err(Error::param(format!("A and B overlap at vertex {v}")));
    }
    let da = a
        .iter()
        .map(|&v| g.neighbors(v).iter().filter(|&&w| in_b[w]).count())
        .max()
        .unwrap_or(0);
    let db = b
        .iter()
        .map(|&w| g.neighbors(w).iter().filter(|&&v| in_a[v]).count())
        .max()
        .unwrap_or(0);
    if da > d || db > delta {
        return Err(Error::param(format!(
            "side degrees ({da}, {db}) exceed (d, Δ) = ({d}, {delta})"
        )));
    }
    let (r, l, t, h, p_bound) = bipartite_formulas(d, delta);
    let mut stream = SeedStream::new(seed);
    let colourings = family_colourings(g, a, b, r, l, t, stream.fork(), opts)?;
    let family = build_suitable(h, r + 1, stream.fork(), opts)?;
    let class_pos = family.positions();

    let mut columns: Vec<Vec<Interval>> = Vec::new();
    let mut blocks = 0;
    for j in 0..t {
        let aj: Vec<usize> = colourings
            .a
            .iter()
            .zip(&colourings.assignment)
            .filter(|&(_, &i)| i == j)
            .map(|(&v, _)| v)
            .collect();
        if aj.is_empty() {
            continue;
        }
        let mut by_colour: Vec<Vec<usize>> = vec![Vec::new(); l];
        for (idx, &w) in colourings.b.iter().enumerate() {
            by_colour[colourings.colours[j][idx]].push(w);
        }
        for block in by_colour.iter().filter(|blk| !blk.is_empty()) {
            let non_edges = aj
                .iter()
                .map(|&v| block.iter().filter(|&&w| !g.has_edge(v, w)).count())
                .sum::<usize>();
            if non_edges == 0 {
                continue;
            }
            blocks += 1;
            columns.extend(block_columns(g, &aj, block, h, &class_pos)?);
        }
    }
    let target_d = 4 * t * l * family.len();
    let params = BipartiteParams {
        d,
        delta,
        r,
        l,
        t,
        h,
        p_bound,
        p_max: family.len(),
        blocks,
        target_d,
    };
    let rep = if columns.is_empty() {
        BoxRepresentation::universal(n, 1)
    } else {
        BoxRepresentation::from_columns(n, &columns)?
    };
    let target = g.bipartite_supergraph(a, b)?;
    super::ensure(&target, &rep)?;
    Ok(BipartiteRep {
        rep,
        params,
        colourings,
    })
}

/// Gadget columns for one block `G<A_j, B_{j,α}>`.
fn block_columns(
    g: &Graph,
    aj: &[usize],
    block: &[usize],
    h: usize,
    class_pos: &[Vec<usize>],
) -> Result<Vec<Vec<Interval>>> {
    let n = g.n();
    let mut local = vec![usize::MAX; n];
    for (i, &w) in block.iter().enumerate() {
        local[w] = i;
    }
    let nbrs: Vec<Vec<usize>> = aj
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .copied()
                .filter(|&w| local[w] != usize::MAX)
                .collect()
        })
        .collect();
    // conflict graph: block vertices sharing a neighbour in A_j
    let m = block.len();
    let mut conflict: Vec<Vec<usize>> = vec![Vec::new(); m];
    for ns in &nbrs {
        for (i, &x) in ns.iter().enumerate() {
            for &y in &ns[i + 1..] {
                conflict[local[x]].push(local[y]);
                conflict[local[y]].push(local[x]);
            }
        }
    }
    for c in conflict.iter_mut() {
        c.sort_unstable();
        c.dedup();
    }
    let mut by_degree: Vec<usize> = (0..m).collect();
    by_degree.sort_by_key(|&i| (std::cmp::Reverse(conflict[i].len()), i));
    let mut colour = vec![usize::MAX; m];
    for &i in &by_degree {
        let used: Vec<usize> = conflict[i]
            .iter()
            .map(|&x| colour[x])
            .filter(|&c| c != usize::MAX)
            .collect();
        colour[i] = (0..).find(|c| !used.contains(c)).unwrap();
    }
    let classes_used = colour.iter().max().map_or(0, |&c| c + 1);
    if classes_used > h {
        return Err(Error::structural(format!(
            "conflict graph needed {classes_used} colours, more than h={h}"
        )));
    }
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); classes_used];
    for i in 0..m {
        classes[colour[i]].push(block[i]);
    }

    // separated[a][i]: non-edge (aj[a], block[i]) already handled
    let mut separated: Vec<Vec<bool>> = nbrs
        .iter()
        .map(|ns| (0..m).map(|i| ns.iter().any(|&w| local[w] == i)).collect())
        .collect();
    let mut remaining: usize = separated
        .iter()
        .map(|s| s.iter().filter(|&&x| !x).count())
        .sum();
    let mut out = Vec::new();
    for pos in class_pos {
        if remaining == 0 {
            break;
        }
        let mut order_classes: Vec<usize> = (0..classes_used).collect();
        order_classes.sort_by_key(|&q| pos[q]);
        for reversed in [false, true] {
            let order: Vec<usize> = order_classes
                .iter()
                .flat_map(|&q| {
                    let c = &classes[q];
                    let it: Box<dyn Iterator<Item = &usize>> = if reversed {
                        Box::new(c.iter().rev())
                    } else {
                        Box::new(c.iter())
                    };
                    it.copied()
                })
                .collect();
            let mut at = vec![0usize; m];
            for (p, &w) in order.iter().enumerate() {
                at[local[w]] = p + 1;
            }
            let mut gained = 0;
            for (ai, ns) in nbrs.iter().enumerate() {
                let (lo, hi) = match ns.iter().map(|&w| at[local[w]]).fold(
                    None,
                    |acc: Option<(usize, usize)>, p| {
                        Some(acc.map_or((p, p), |(lo, hi)| (lo.min(p), hi.max(p))))
                    },
                ) {
                    Some(s) => s,
                    None => (usize::MAX, 0),
                };
                for i in 0..m {
                    if !separated[ai][i] && (at[i] < lo || at[i] > hi) {
                        separated[ai][i] = true;
                        gained += 1;
                    }
                }
            }
            if gained > 0 {
                remaining -= gained;
                let spec = SpanGadgetSpec::from_graph(g, aj, &order);
                let gadget = span_gadget(&spec, n)?;
                out.push(gadget.column(0));
                out.push(gadget.column(1));
            }
        }
    }
    if remaining > 0 {
        return Err(Error::structural(
            "suitable family left a block non-edge unseparated",
        ));
    }
    Ok(out)
}
