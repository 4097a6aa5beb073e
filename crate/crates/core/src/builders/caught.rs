use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::span::{span_gadget, SpanGadgetSpec};
use crate::error::{Error, Result};
use crate::geometry::{BoxRepresentation, Interval};
use crate::graph::Graph;
use crate::options::Options;
use crate::seed::SeedStream;

/// `⌈(3/2)(k+1) ln n⌉`, at least 1.
pub fn caught_count(k: usize, n: usize) -> usize {
    let t = (1.5 * (k as f64 + 1.0) * (n.max(1) as f64).ln()).ceil() as usize;
    t.max(1)
}

/// Whether `sigma` (positions of `B`, 0 for vertices outside `B`) places `w`
/// strictly between two neighbours of `v`.
pub fn catches(g: &Graph, v: usize, w: usize, pos: &[usize]) -> bool {
    let mut lo = usize::MAX;
    let mut hi = 0;
    for &x in g.neighbors(v) {
        if pos[x] > 0 {
            lo = lo.min(pos[x]);
            hi = hi.max(pos[x]);
        }
    }
    lo < pos[w] && pos[w] < hi
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaughtParams {
    pub k: usize,
    /// Size of `A ∪ B`.
    pub n: usize,
    pub t: usize,
    pub attempts: u64,
}

#[derive(Debug, Clone)]
pub struct CaughtRep {
    pub rep: BoxRepresentation,
    pub params: CaughtParams,
    /// The `t` permutations of `B`.
    pub perms: Vec<Vec<usize>>,
}

/// Representation of `G<A,B>` from `t` random permutations of `B` such that
/// every non-edge between `A` and `B` is left uncaught by one of them; one
/// span gadget per permutation.
pub fn caught_permutation_rep(
    g: &Graph,
    a: &[usize],
    b: &[usize],
    k: usize,
    seed: u64,
    opts: &Options,
) -> Result<CaughtRep> {
    let n = g.n();
    let in_a = g.membership(a, "A")?;
    let in_b = g.membership(b, "B")?;
    if let Some(v) = (0..n).find(|&v| in_a[v] && in_b[v]) {
        return Err(Error::param(format!("A and B overlap at vertex {v}")));
    }
    let deg = a
        .iter()
        .map(|&v| g.neighbors(v).iter().filter(|&&w| in_b[w]).count())
        .max()
        .unwrap_or(0);
    if deg > k && !opts.force {
        return Err(Error::param(format!(
            "an A-vertex has {deg} neighbours in B, more than k={k}"
        )));
    }
    let size = a.len() + b.len();
    let t = caught_count(k, size);
    let mut stream = SeedStream::new(seed);
    let mut attempts = 0;
    let perms = loop {
        if attempts >= opts.retry_cap {
            return Err(Error::RandomizedFailure {
                what: "caught_permutation_rep".into(),
                attempts,
            });
        }
        attempts += 1;
        let mut rng = stream.fork_rng();
        let perms: Vec<Vec<usize>> = (0..t)
            .map(|_| {
                let mut p = b.to_vec();
                p.shuffle(&mut rng);
                p
            })
            .collect();
        if all_uncaught(g, a, b, &perms) {
            break perms;
        }
    };
    let mut columns: Vec<Vec<Interval>> = Vec::with_capacity(2 * t);
    for p in &perms {
        let gadget = span_gadget(&SpanGadgetSpec::from_graph(g, a, p), n)?;
        columns.push(gadget.column(0));
        columns.push(gadget.column(1));
    }
    let rep = BoxRepresentation::from_columns(n, &columns)?;
    let target = g.bipartite_supergraph(a, b)?;
    super::ensure(&target, &rep)?;
    Ok(CaughtRep {
        rep,
        params: CaughtParams {
            k,
            n: size,
            t,
            attempts,
        },
        perms,
    })
}

/// Every non-edge `vw` (`v ∈ A`, `w ∈ B`) is uncaught by some permutation.
pub fn all_uncaught(g: &Graph, a: &[usize], b: &[usize], perms: &[Vec<usize>]) -> bool {
    let positions: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| {
            let mut pos = vec![0; g.n()];
            for (i, &w) in p.iter().enumerate() {
                pos[w] = i + 1;
            }
            pos
        })
        .collect();
    a.iter().all(|&v| {
        b.iter()
            .all(|&w| g.has_edge(v, w) || positions.iter().any(|pos| !catches(g, v, w, pos)))
    })
}
