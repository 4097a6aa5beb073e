//! Resampling samplers for the two local-lemma partitions.
//!
//! Both follow the Moser–Tardos loop: draw every variable uniformly, then
//! while some bad event holds, pick the lowest one and redraw exactly its
//! variables. Outputs are re-checked from scratch before they are returned.

use std::collections::{BTreeSet, HashMap};

use rand::Rng as _;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::options::Options;
use crate::seed;

/// Relative margin applied to the floating-point bound checks.
pub const BOUND_MARGIN: f64 = 1e-9;

/// `value >= bound`, with the bound inflated by [`BOUND_MARGIN`].
pub(crate) fn meets_bound(value: f64, bound: f64) -> bool {
    value >= bound * (1.0 + BOUND_MARGIN)
}

/// Classes are `0..k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub k: usize,
    #[serde(rename = "classes")]
    pub cls: Vec<usize>,
}

impl Partition {
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k];
        for (v, &c) in self.cls.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// Largest `|N(v) ∩ V_c|` over all vertices and classes.
    pub fn max_class_degree(&self, g: &Graph) -> usize {
        let mut best = 0;
        let mut cnt: HashMap<usize, usize> = HashMap::new();
        for v in 0..g.n() {
            cnt.clear();
            for &w in g.neighbors(v) {
                let e = cnt.entry(self.cls[w]).or_default();
                *e += 1;
                best = best.max(*e);
            }
        }
        best
    }
}

/// Smallest class count for which the partition lemma applies:
/// `((4d+4)^{1/d} e / d) Δ^{1+1/d}`.
pub fn partition_class_bound(max_degree: usize, d: usize) -> f64 {
    let d_f = d as f64;
    (4.0 * d_f + 4.0).powf(1.0 / d_f) * std::f64::consts::E / d_f
        * (max_degree as f64).powf(1.0 + 1.0 / d_f)
}

/// Partition into `k` classes in which every vertex has at most `d`
/// neighbours in each class.
pub fn partition_bounded_mono(
    g: &Graph,
    d: usize,
    k: usize,
    seed: u64,
    opts: &Options,
) -> Result<Partition> {
    let n = g.n();
    let delta = g.max_degree();
    if d == 0 || k == 0 {
        return Err(Error::param(format!(
            "need d >= 1 and k >= 1, got d={d}, k={k}"
        )));
    }
    if delta > 0 && d < delta && !opts.force {
        let bound = partition_class_bound(delta, d);
        if !meets_bound(k as f64, bound) {
            return Err(Error::param(format!(
                "k={k} below the required {bound:.3} for Δ={delta}, d={d}"
            )));
        }
    }
    let mut rng = seed::rng(seed);
    let mut cls: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
    // per-vertex class counts and number of overfull classes
    let mut counts: Vec<HashMap<usize, usize>> = vec![HashMap::new(); n];
    let mut over = vec![0usize; n];
    for v in 0..n {
        for &w in g.neighbors(v) {
            *counts[v].entry(cls[w]).or_default() += 1;
        }
        over[v] = counts[v].values().filter(|&&c| c > d).count();
    }
    let mut bad: BTreeSet<usize> = (0..n).filter(|&v| over[v] > 0).collect();
    let events = (0..n).filter(|&v| g.degree(v) > d).count().max(1) as u64;
    let cap = opts.resample_factor.saturating_mul(events);
    let mut steps = 0u64;
    while let Some(&v) = bad.iter().next() {
        if steps >= cap {
            return Err(Error::RandomizedFailure {
                what: "partition_bounded_mono".into(),
                attempts: steps,
            });
        }
        steps += 1;
        let c = *counts[v]
            .iter()
            .filter(|(_, &x)| x > d)
            .map(|(c, _)| c)
            .min()
            .expect("bad vertex has an overfull class");
        let subset: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| cls[w] == c)
            .take(d + 1)
            .collect();
        for u in subset {
            let old = cls[u];
            let new = rng.gen_range(0..k);
            if new == old {
                continue;
            }
            cls[u] = new;
            for &w in g.neighbors(u) {
                let before = over[w];
                let e = counts[w].get_mut(&old).unwrap();
                if *e == d + 1 {
                    over[w] -= 1;
                }
                *e -= 1;
                if *e == 0 {
                    counts[w].remove(&old);
                }
                let e = counts[w].entry(new).or_default();
                *e += 1;
                if *e == d + 1 {
                    over[w] += 1;
                }
                if before == 0 && over[w] > 0 {
                    bad.insert(w);
                } else if before > 0 && over[w] == 0 {
                    bad.remove(&w);
                }
            }
        }
    }
    let p = Partition { k, cls };
    if p.max_class_degree(g) > d {
        return Err(Error::structural(
            "partition sampler produced an overfull class",
        ));
    }
    Ok(p)
}

/// `(d, k) = (⌈100 ln Δ⌉, ⌈3Δ/d⌉)`, or `(Δ, 1)` when `d >= Δ`.
pub fn auto_params_partition(max_degree: usize) -> Result<(usize, usize)> {
    if max_degree < 2 {
        return Err(Error::param(format!(
            "automatic partition parameters need Δ >= 2, got {max_degree}"
        )));
    }
    let d = (100.0 * (max_degree as f64).ln()).ceil() as usize;
    if d >= max_degree {
        return Ok((max_degree, 1));
    }
    Ok((d, (3 * max_degree).div_ceil(d)))
}

/// `t` colourings of `B` with `ℓ` colours, and for each vertex of `A` an index
/// `i` such that no colour appears on more than `r` of its neighbours under `c_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColouringFamily {
    pub t: usize,
    pub l: usize,
    pub r: usize,
    /// Sorted vertices of `A`.
    pub a: Vec<usize>,
    /// Sorted vertices of `B`.
    pub b: Vec<usize>,
    /// `colours[i][j]`: colour of `b[j]` under colouring `i`, in `0..l`.
    pub colours: Vec<Vec<usize>>,
    /// `assignment[j]`: certifying colouring of `a[j]`.
    pub assignment: Vec<usize>,
}

impl ColouringFamily {
    /// Re-checks every assignment against the graph.
    pub fn check(&self, g: &Graph) -> bool {
        let pos = index_map(g.n(), &self.b);
        self.a
            .iter()
            .zip(&self.assignment)
            .all(|(&v, &i)| i < self.t && certifies(g, v, &pos, &self.colours[i], self.r))
    }
}

fn index_map(n: usize, set: &[usize]) -> Vec<usize> {
    let mut pos = vec![usize::MAX; n];
    for (j, &v) in set.iter().enumerate() {
        pos[v] = j;
    }
    pos
}

fn certifies(g: &Graph, v: usize, pos: &[usize], colouring: &[usize], r: usize) -> bool {
    let mut seen: HashMap<usize, usize> = HashMap::new();
    for &w in g.neighbors(v) {
        if pos[w] != usize::MAX {
            let e = seen.entry(colouring[pos[w]]).or_default();
            *e += 1;
            if *e > r {
                return false;
            }
        }
    }
    true
}

/// Colour count `⌈e (e d / (r+1))^{1+1/r}⌉`.
pub fn colour_count(d: usize, r: usize) -> usize {
    let e = std::f64::consts::E;
    (e * (e * d as f64 / (r as f64 + 1.0)).powf(1.0 + 1.0 / r as f64)).ceil() as usize
}

/// Colouring count `⌈ln(4 d Δ)⌉`.
pub fn colouring_count(d: usize, max_degree: usize) -> usize {
    (4.0 * d as f64 * max_degree as f64).ln().ceil() as usize
}

#[allow(clippy::too_many_arguments)]
pub fn family_colourings(
    g: &Graph,
    a: &[usize],
    b: &[usize],
    r: usize,
    l: usize,
    t: usize,
    seed: u64,
    opts: &Options,
) -> Result<ColouringFamily> {
    let n = g.n();
    let in_a = g.membership(a, "A")?;
    let in_b = g.membership(b, "B")?;
    if (0..n).any(|v| in_a[v] && in_b[v]) {
        return Err(Error::param("A and B overlap"));
    }
    if r == 0 || l == 0 || t == 0 {
        return Err(Error::param(format!(
            "need r, l, t >= 1, got r={r}, l={l}, t={t}"
        )));
    }
    let mut a: Vec<usize> = a.to_vec();
    let mut b: Vec<usize> = b.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    let pos = index_map(n, &b);
    let pos = &pos;
    let nb = |v: usize| {
        g.neighbors(v)
            .iter()
            .copied()
            .filter(move |&w| pos[w] != usize::MAX)
    };
    let d = a.iter().map(|&v| nb(v).count()).max().unwrap_or(0);
    let delta = b
        .iter()
        .map(|&w| g.neighbors(w).iter().filter(|&&u| in_a[u]).count())
        .max()
        .unwrap_or(0);
    if d > r && !opts.force {
        let lb = std::f64::consts::E
            * (std::f64::consts::E * d as f64 / (r as f64 + 1.0)).powf(1.0 + 1.0 / r as f64);
        if !meets_bound(l as f64, lb) {
            return Err(Error::param(format!(
                "l={l} below e(ed/(r+1))^(1+1/r) = {lb:.3} for d={d}, r={r}"
            )));
        }
        let tb = (4.0 * d as f64 * delta as f64).ln();
        if !meets_bound(t as f64, tb) {
            return Err(Error::param(format!(
                "t={t} below ln(4dΔ) = {tb:.3} for d={d}, Δ={delta}"
            )));
        }
    }
    let mut rng = seed::rng(seed);
    let mut colours: Vec<Vec<usize>> = (0..t)
        .map(|_| (0..b.len()).map(|_| rng.gen_range(0..l)).collect())
        .collect();
    let find =
        |colours: &[Vec<usize>], v: usize| (0..t).find(|&i| certifies(g, v, pos, &colours[i], r));
    let mut bad: BTreeSet<usize> = a
        .iter()
        .copied()
        .filter(|&v| find(&colours, v).is_none())
        .collect();
    let events = a.iter().filter(|&&v| nb(v).count() > r).count().max(1) as u64;
    let cap = opts.resample_factor.saturating_mul(events);
    let mut steps = 0u64;
    while let Some(&v) = bad.iter().next() {
        if steps >= cap {
            return Err(Error::RandomizedFailure {
                what: "family_colourings".into(),
                attempts: steps,
            });
        }
        steps += 1;
        let block: Vec<usize> = nb(v).collect();
        for col in colours.iter_mut() {
            for &w in &block {
                col[pos[w]] = rng.gen_range(0..l);
            }
        }
        // only A-vertices sharing a resampled neighbour can change status
        let mut touched: BTreeSet<usize> = BTreeSet::new();
        for &w in &block {
            touched.extend(g.neighbors(w).iter().copied().filter(|&u| in_a[u]));
        }
        for u in touched {
            if find(&colours, u).is_none() {
                bad.insert(u);
            } else {
                bad.remove(&u);
            }
        }
    }
    let assignment = a
        .iter()
        .map(|&v| find(&colours, v).expect("no bad events remain"))
        .collect();
    let fam = ColouringFamily {
        t,
        l,
        r,
        a,
        b,
        colours,
        assignment,
    };
    if !fam.check(g) {
        return Err(Error::structural(
            "colouring sampler produced an uncertified vertex",
        ));
    }
    Ok(fam)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn auto_params_values() {
        assert_eq!(auto_params_partition(1000).unwrap(), (691, 5));
        assert_eq!(auto_params_partition(2).unwrap(), (2, 1));
        assert!(auto_params_partition(1).is_err());
    }

    #[test]
    fn class_bound_values() {
        let b = partition_class_bound(30, 3);
        assert!((b - 212.84).abs() < 0.01, "{b}");
        // d = 1 reduces to 8e Δ^2
        let b1 = partition_class_bound(5, 1);
        assert!((b1 - 8.0 * std::f64::consts::E * 25.0).abs() < 1e-9);
    }

    #[test]
    fn edgeless_and_large_d_are_one_pass() {
        let opts = Options::default();
        let p = partition_bounded_mono(&Graph::empty(10), 1, 3, 5, &opts).unwrap();
        assert_eq!(p.cls.len(), 10);
        let p = partition_bounded_mono(&cycle(9), 2, 1, 5, &opts).unwrap();
        assert!(p.cls.iter().all(|&c| c == 0));
    }

    #[test]
    fn bound_is_enforced_unless_forced() {
        let g = cycle(12);
        assert!(matches!(
            partition_bounded_mono(&g, 1, 3, 1, &Options::default()),
            Err(Error::Parameter(_))
        ));
        let forced = Options {
            force: true,
            ..Options::default()
        };
        let p = partition_bounded_mono(&g, 1, 3, 1, &forced).unwrap();
        assert!(p.max_class_degree(&g) <= 1);
    }

    #[test]
    fn colourings_trivial_cases() {
        let opts = Options::default();
        let g = Graph::from_edges(4, &[(0, 2), (1, 3)]).unwrap();
        let f = family_colourings(&g, &[0, 1], &[2, 3], 1, 1, 1, 3, &opts).unwrap();
        assert!(f.check(&g));
        let f = family_colourings(&g, &[0, 1, 2, 3], &[], 1, 2, 1, 3, &opts).unwrap();
        assert!(f.colours[0].is_empty());
        assert!(f.check(&g));
    }
}
