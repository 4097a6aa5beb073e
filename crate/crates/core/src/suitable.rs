//! Scrambling set families and `k`-suitable permutation families.
//!
//! A family of permutations of `0..n` is `k`-suitable when for every
//! `k`-subset `S` and every `x` in `S` some permutation puts `x` before the
//! rest of `S`. The builder follows the scrambling-set construction: pick a
//! `(k-1)`-scrambling family `S_1..S_M` of subsets of `[s]`, give each element
//! a distinct code `Q_a` (its binary expansion, a subset of `[M]`), and for
//! each `i` in `[s]` order the elements by their lowest differing code bit,
//! with the direction at bit `j` flipped according to whether `i` is in `S_j`.

use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::options::Options;
use crate::seed;

/// Exhaustive verification refuses inputs with more requirements than this.
pub const EXHAUSTIVE_BUDGET: u128 = 100_000_000;

/// Subsets `S_1..S_r` of `{1..s}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScramblingFamily {
    pub s: usize,
    pub t: usize,
    /// Each set as sorted 1-based elements.
    pub sets: Vec<Vec<usize>>,
}

impl ScramblingFamily {
    /// Membership code of every ground element: bit `j` set iff the element is in `S_{j+1}`.
    fn element_codes(&self) -> Vec<u64> {
        assert!(self.sets.len() <= 64, "at most 64 sets supported");
        let mut codes = vec![0u64; self.s];
        for (j, set) in self.sets.iter().enumerate() {
            for &e in set {
                codes[e - 1] |= 1 << j;
            }
        }
        codes
    }

    fn contains(&self, set: usize, element: usize) -> bool {
        self.sets[set].binary_search(&element).is_ok()
    }
}

/// Which construction produced a [`PermutationFamily`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "route", rename_all = "snake_case")]
pub enum SuitableRoute {
    /// `s` orders from a scrambling family of `m` sets.
    Scrambling { s: usize, m: usize },
    /// All cyclic rotations of the identity (used when it is smaller).
    Rotations,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PermutationFamily {
    pub n: usize,
    pub k: usize,
    /// Each permutation as the sequence of elements, first to last.
    pub perms: Vec<Vec<usize>>,
    pub route: SuitableRoute,
}

impl PermutationFamily {
    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    /// `positions()[i][v]`: 0-based position of `v` in permutation `i`.
    pub fn positions(&self) -> Vec<Vec<usize>> {
        self.perms
            .iter()
            .map(|p| {
                let mut pos = vec![0; self.n];
                for (i, &v) in p.iter().enumerate() {
                    pos[v] = i;
                }
                pos
            })
            .collect()
    }
}

/// Checks the Venn condition: for all `I` with `|I| <= t` and `A ⊆ I`, the cell
/// `∩_{i∈A} S_i ∩ ∩_{j∈I\A} ([s] \ S_j)` is non-empty.
pub fn verify_scrambling(f: &ScramblingFamily) -> bool {
    let r = f.sets.len();
    if r == 0 {
        return f.s >= 1;
    }
    let codes = f.element_codes();
    // cells over a t-set refine the cells over its subsets, so |I| = min(t, r) suffices
    let size = f.t.min(r);
    let mut ok = true;
    for_each_subset(r, size, |idx| {
        let mut seen = vec![false; 1 << size];
        for &c in &codes {
            let mut pat = 0usize;
            for (b, &j) in idx.iter().enumerate() {
                if c >> j & 1 == 1 {
                    pat |= 1 << b;
                }
            }
            seen[pat] = true;
        }
        ok = seen.iter().all(|&x| x);
        ok
    });
    ok
}

/// Left-hand side of `2^t C(m,t) (1 - 2^-t)^s < 1`.
pub fn scrambling_claim_lhs(s: usize, t: usize, m: usize) -> f64 {
    let ln = t as f64 * std::f64::consts::LN_2
        + ln_binomial(m, t)
        + s as f64 * (-(0.5f64.powi(t as i32))).ln_1p();
    ln.exp()
}

fn ln_binomial(m: usize, t: usize) -> f64 {
    if t > m {
        return f64::NEG_INFINITY;
    }
    (0..t)
        .map(|i| ((m - i) as f64).ln() - ((i + 1) as f64).ln())
        .sum()
}

/// Constructive lower bound `⌊(t/2e) e^{s/(t 2^t)}⌋` on the size of a
/// `t`-scrambling family over `[s]`.
pub fn scrambling_size_bound(s: usize, t: usize) -> usize {
    let t_f = t as f64;
    let v = t_f / (2.0 * std::f64::consts::E) * (s as f64 / (t_f * 2f64.powi(t as i32))).exp();
    if v >= usize::MAX as f64 {
        usize::MAX
    } else {
        v.floor() as usize
    }
}

/// Random `t`-scrambling family of `m` subsets of `[s]`, rejection-sampled.
pub fn build_scrambling(
    s: usize,
    t: usize,
    m: usize,
    seed: u64,
    opts: &Options,
) -> Result<ScramblingFamily> {
    if t == 0 || s < t {
        return Err(Error::param(format!("need s >= t >= 1, got s={s}, t={t}")));
    }
    if m == 0 || m > 64 {
        return Err(Error::param(format!("family size m={m} outside 1..=64")));
    }
    let lhs = scrambling_claim_lhs(s, t, m);
    if lhs.is_nan() || lhs * (1.0 + 1e-9) >= 1.0 {
        return Err(Error::param(format!(
            "2^t C(m,t) (1-2^-t)^s = {lhs:.4} is not below 1 for s={s}, t={t}, m={m}"
        )));
    }
    let mut stream = seed::SeedStream::new(seed);
    for _ in 0..opts.retry_cap {
        let mut rng = stream.fork_rng();
        let sets: Vec<Vec<usize>> = (0..m)
            .map(|_| (1..=s).filter(|_| rng.gen_bool(0.5)).collect())
            .collect();
        let fam = ScramblingFamily { s, t, sets };
        if verify_scrambling(&fam) {
            return Ok(fam);
        }
    }
    Err(Error::RandomizedFailure {
        what: "build_scrambling".into(),
        attempts: opts.retry_cap,
    })
}

/// Smallest `s >= t` whose constructive bound reaches `need` sets.
pub fn minimal_ground_size(t: usize, need: usize) -> usize {
    let mut s = t.max(1);
    while scrambling_size_bound(s, t) < need {
        s += 1;
    }
    s
}

/// Number of code bits needed for `n` distinct codes.
fn code_bits(n: usize) -> usize {
    (usize::BITS - (n - 1).leading_zeros()) as usize
}

/// Builds a `k`-suitable family of permutations of `0..n`.
pub fn build_suitable(n: usize, k: usize, seed: u64, opts: &Options) -> Result<PermutationFamily> {
    if n < 2 || k < 2 {
        return Err(Error::param(format!(
            "build_suitable needs n >= 2 and k >= 2, got n={n}, k={k}"
        )));
    }
    let k_eff = k.min(n);
    let t = k_eff - 1;
    let m = code_bits(n).max(1);
    let s = minimal_ground_size(t, m);
    let family = if s > n {
        rotations(n, k)
    } else {
        match build_scrambling(s, t, m, seed, opts) {
            Ok(scr) => PermutationFamily {
                n,
                k,
                perms: orders_from_scrambling(n, &scr),
                route: SuitableRoute::Scrambling { s, m },
            },
            Err(Error::RandomizedFailure { .. }) => rotations(n, k),
            Err(e) => return Err(e),
        }
    };
    let mode = if requirement_count(n, k_eff) <= 1_000_000 {
        VerifyMode::Exhaustive
    } else {
        VerifyMode::Sampled {
            trials: 20_000,
            seed: seed::derive(seed, u64::MAX),
        }
    };
    if !verify_suitable(&family, mode)? {
        // unreachable for a correct construction; rotations are always suitable
        return Ok(rotations(n, k));
    }
    Ok(family)
}

fn rotations(n: usize, k: usize) -> PermutationFamily {
    let perms = (0..n)
        .map(|r| (0..n).map(|i| (r + i) % n).collect())
        .collect();
    PermutationFamily {
        n,
        k,
        perms,
        route: SuitableRoute::Rotations,
    }
}

/// One order per ground element `i` of the scrambling family.
fn orders_from_scrambling(n: usize, scr: &ScramblingFamily) -> Vec<Vec<usize>> {
    let m = scr.sets.len();
    (1..=scr.s)
        .map(|i| {
            let flip: Vec<bool> = (0..m).map(|j| scr.contains(j, i)).collect();
            let key = |a: usize| -> u64 {
                let mut key = 0u64;
                for (j, &f) in flip.iter().enumerate() {
                    let bit = (a >> j & 1) as u64;
                    // i ∈ S_j puts codes containing j first
                    let kb = if f { 1 - bit } else { bit };
                    key |= kb << (m - 1 - j);
                }
                key
            };
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&a| key(a));
            order
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    Exhaustive,
    Sampled { trials: u64, seed: u64 },
}

fn requirement_count(n: usize, k: usize) -> u128 {
    let mut c: u128 = 1;
    for i in 0..k as u128 {
        c = c * (n as u128 - i) / (i + 1);
    }
    c * k as u128
}

/// Checks `k`-suitability (subsets of size `min(k, n)`).
pub fn verify_suitable(f: &PermutationFamily, mode: VerifyMode) -> Result<bool> {
    let n = f.n;
    let k = f.k.min(n);
    if k == 0 {
        return Ok(true);
    }
    let pos = f.positions();
    for p in &f.perms {
        crate::poset::check_permutation(p, n)?;
    }
    let witnessed = |subset: &[usize], x: usize| -> bool {
        pos.iter()
            .any(|ps| subset.iter().all(|&y| y == x || ps[x] < ps[y]))
    };
    match mode {
        VerifyMode::Exhaustive => {
            if requirement_count(n, k) > EXHAUSTIVE_BUDGET {
                return Err(Error::param(format!(
                    "exhaustive check of C({n},{k})*{k} requirements exceeds budget {EXHAUSTIVE_BUDGET}"
                )));
            }
            let mut ok = true;
            for_each_subset(n, k, |subset| {
                // elements that come first in some permutation
                let mut first = vec![false; k];
                for ps in &pos {
                    let (arg, _) = subset
                        .iter()
                        .enumerate()
                        .min_by_key(|(_, &y)| ps[y])
                        .unwrap();
                    first[arg] = true;
                }
                ok = first.iter().all(|&b| b);
                ok
            });
            Ok(ok)
        }
        VerifyMode::Sampled { trials, seed } => {
            let mut rng = seed::rng(seed);
            let all: Vec<usize> = (0..n).collect();
            for _ in 0..trials {
                let subset: Vec<usize> = all.choose_multiple(&mut rng, k).copied().collect();
                let x = subset[rng.gen_range(0..k)];
                if !witnessed(&subset, x) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order until it returns `false`.
pub(crate) fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
