//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test --test acceptance`. Exits non-zero if any criterion fails.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::Rng as _;
use rayon::prelude::*;

use boxlab::bridge::{boxes_from_realizer, dimension_pipeline, graph_to_doubled_poset};
use boxlab::builders::{
    bipartite_suitable_rep, caught_permutation_rep, degenerate_rep, pair_elimination_rep,
    treewidth_rep, TreeDecomposition,
};
use boxlab::certificate::{genus_k, Certificate, GenusBranch, Params, Target};
use boxlab::generate::{gnp_capped, grid, grid_td, matching_complement, random_poset};
use boxlab::geometry::BoxRepresentation;
use boxlab::graph::Graph;
use boxlab::lll::{
    auto_params_partition, colour_count, colouring_count, family_colourings, partition_bounded_mono,
};
use boxlab::options::Options;
use boxlab::oracle::{exact_boxicity, exact_dimension};
use boxlab::pipelines::{
    bounded_degree_rep, genus_rep, group_components_ok, layered_tw_rep, Layering,
};
use boxlab::poset::Poset;
use boxlab::seed::{derive, rng};
use boxlab::suitable::{build_suitable, verify_suitable, VerifyMode};
use boxlab::verify::{verify_box_rep, verify_fk_realizer};

// Wall-clock limits per criterion.
const LIMIT_ORACLE: Duration = Duration::from_secs(10);
const LIMIT_VALIDITY: Duration = Duration::from_secs(600);
const LIMIT_ROBERTS: Duration = Duration::from_secs(300);
const LIMIT_SUITABLE: Duration = Duration::from_secs(600);
const LIMIT_LLL: Duration = Duration::from_secs(600);
const LIMIT_ROUND_TRIP: Duration = Duration::from_secs(300);
const LIMIT_OTHER: Duration = Duration::from_secs(300);

const VALIDITY_GRAPHS: usize = 200;
const VALIDITY_MAX_N: usize = 300;
const VALIDITY_POSETS: usize = 100;
const VALIDITY_POSET_MAX_N: usize = 60;
const ROBERTS_SAMPLES: usize = 10_000;
const SUITABLE_SEEDS: u64 = 20;
const SUITABLE_LARGE_N: usize = 10_000;
const SUITABLE_LARGE_MAX: usize = 53;
const SUITABLE_TRIALS: u64 = 1_000_000;
const LLL_SEEDS: u64 = 20;
const LTW_TARGET: usize = 22;

type Check = std::result::Result<String, String>;
type Criterion = (u32, &'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(ctx: &str) -> impl FnOnce(E) -> String + '_ {
    move |e| format!("{ctx}: {e}")
}

/// Boxes clean against the target, recorded formulas replay, and the
/// independent recomputation below agrees.
fn check_certificate(g: &Graph, c: &Certificate, ctx: &str) -> std::result::Result<(), String> {
    let report = c.verify(g).map_err(err(ctx))?;
    ensure(report.is_clean(), || format!("{ctx}: {report}"))?;
    c.replay_params().map_err(err(ctx))?;
    let t = recompute_target(&c.params).map_err(|e| format!("{ctx}: {e}"))?;
    ensure(t == c.target_d, || {
        format!("{ctx}: target_d {} but recomputed {t}", c.target_d)
    })?;
    ensure(c.d <= c.target_d || c.fallback, || {
        format!("{ctx}: d {} > target {} without fallback", c.d, c.target_d)
    })
}

fn ln(x: f64) -> f64 {
    x.ln()
}

/// Dimension bound recomputed from first principles; every formula value
/// stored in the parameters must match bit for bit.
fn recompute_target(p: &Params) -> std::result::Result<usize, String> {
    let e = std::f64::consts::E;
    Ok(match p {
        Params::Universal | Params::Lift { .. } => 1,
        Params::PairElimination { vertices } => (vertices / 2).max(1),
        Params::Components { .. } => 2,
        Params::Supplied { d } => *d,
        Params::Treewidth(t) => t.width + 2,
        Params::Degenerate(q) => {
            let want = if q.n < 2 {
                1
            } else {
                ((q.k + 2) * (2.0 * e * ln(q.n as f64)).ceil() as usize).max(1)
            };
            ensure(q.target_d == want, || {
                format!("degenerate target {} vs {want}", q.target_d)
            })?;
            want
        }
        Params::Caught(q) => {
            let t = ((1.5 * (q.k as f64 + 1.0) * ln(q.n.max(1) as f64)).ceil() as usize).max(1);
            ensure(q.t == t, || format!("caught t {} vs {t}", q.t))?;
            2 * t
        }
        Params::Bipartite(q) => {
            let d = q.d as f64;
            let r = (ln(d).sqrt().ceil() as usize).max(1);
            let rf = r as f64;
            let l = (e * (e * d / (rf + 1.0)).powf(1.0 + 1.0 / rf)).ceil() as usize;
            let t = ln(4.0 * d * q.delta as f64).ceil() as usize;
            let h = r * q.delta + 1;
            let p_bound = (rf + 1.0) * 2f64.powi(r as i32 + 1) * ln(h as f64).ln();
            ensure((q.r, q.l, q.t, q.h) == (r, l, t, h), || {
                format!("(r,l,t,h) {:?} vs {:?}", (q.r, q.l, q.t, q.h), (r, l, t, h))
            })?;
            ensure(q.p_bound.to_bits() == p_bound.to_bits(), || {
                format!("p bound {} vs {p_bound}", q.p_bound)
            })?;
            ensure(q.target_d == 4 * t * l * q.p_max, || {
                "bipartite target".into()
            })?;
            4 * t * l * q.p_max
        }
        Params::SuitableGadget { x_size, p, p_bound } => {
            let b = 24.0 * ln(*x_size as f64).ln();
            ensure(p_bound.to_bits() == b.to_bits(), || {
                format!("gadget bound {p_bound} vs {b}")
            })?;
            2 * p
        }
        Params::Degree {
            delta,
            d,
            k,
            pieces,
        } => {
            if *delta >= 2 {
                let dd = (100.0 * ln(*delta as f64)).ceil() as usize;
                let (dd, kk) = if dd >= *delta {
                    (*delta, 1)
                } else {
                    (dd, (3 * delta).div_ceil(dd))
                };
                ensure((*d, *k) == (Some(dd), Some(kk)), || {
                    format!("degree (d,k) {:?} vs {:?}", (d, k), (dd, kk))
                })?;
            }
            sum_pieces(pieces)?
        }
        Params::Genus {
            g,
            branch,
            k,
            pieces,
            ..
        } => {
            if *branch == GenusBranch::Suitable {
                let want = if *g <= 1 {
                    8
                } else {
                    7 + ((*g as f64) / ln(*g as f64)).sqrt().ceil() as usize
                };
                ensure(*k == Some(want), || format!("genus k {k:?} vs {want}"))?;
            }
            sum_pieces(pieces)?
        }
        Params::Ltw { ltw, .. } => 6 * ltw + 4,
    })
}

fn sum_pieces(pieces: &[boxlab::certificate::Piece]) -> std::result::Result<usize, String> {
    if pieces.is_empty() {
        return Ok(1);
    }
    let mut s = 0;
    for p in pieces {
        let t = recompute_target(&p.params)?;
        ensure(t == p.target_d, || {
            format!("piece {} target {} vs {t}", p.name, p.target_d)
        })?;
        s += t;
    }
    Ok(s)
}

fn whole(
    name: &str,
    seed: u64,
    params: Params,
    rep: BoxRepresentation,
    fallback: bool,
) -> Certificate {
    Certificate::new(
        name,
        seed,
        Target::Whole,
        params,
        serde_json::Value::Null,
        rep,
        fallback,
    )
    .unwrap()
}

/// Certificates from every builder and the degree pipeline.
fn all_certificates(g: &Graph, seed: u64) -> std::result::Result<Vec<Certificate>, String> {
    let opts = Options::default();
    let n = g.n();
    let mut out = Vec::new();
    out.push(bounded_degree_rep(g, seed, &opts).map_err(err("degree"))?);
    out.push(whole(
        "pairs",
        0,
        Params::PairElimination { vertices: n },
        pair_elimination_rep(g),
        false,
    ));
    let r = degenerate_rep(g, g.degeneracy(), seed, &opts).map_err(err("degenerate"))?;
    let fb = r.params.fallback;
    out.push(whole(
        "degenerate",
        seed,
        Params::Degenerate(r.params),
        r.rep,
        fb,
    ));
    let td = TreeDecomposition::min_degree_heuristic(g);
    let r = treewidth_rep(g, &td, seed).map_err(err("treewidth"))?;
    out.push(whole(
        "treewidth",
        seed,
        Params::Treewidth(r.params),
        r.rep,
        false,
    ));

    let mut rr = rng(derive(seed, 99));
    let (a, b): (Vec<usize>, Vec<usize>) = (0..n).partition(|_| rr.gen_bool(0.5));
    let side = |from: &[usize], to: &[usize]| {
        from.iter()
            .map(|&v| to.iter().filter(|&&w| g.has_edge(v, w)).count())
            .max()
            .unwrap_or(0)
    };
    let (da, db) = (side(&a, &b), side(&b, &a));
    let d = da.max(2);
    let delta = db.max(d);
    let r = bipartite_suitable_rep(g, &a, &b, d, delta, seed, &opts).map_err(err("bipartite"))?;
    let target = Target::Bipartite {
        a: a.clone(),
        b: b.clone(),
    };
    out.push(
        Certificate::new(
            "bipartite",
            seed,
            target.clone(),
            Params::Bipartite(r.params),
            serde_json::Value::Null,
            r.rep,
            false,
        )
        .unwrap(),
    );
    let r = caught_permutation_rep(g, &a, &b, da, seed, &opts).map_err(err("caught"))?;
    out.push(
        Certificate::new(
            "caught",
            seed,
            target,
            Params::Caught(r.params),
            serde_json::Value::Null,
            r.rep,
            false,
        )
        .unwrap(),
    );
    Ok(out)
}

fn validity_graph(i: usize) -> Graph {
    let seed = derive(2024, i as u64);
    let mut r = rng(seed);
    let n = r.gen_range(2..=VALIDITY_MAX_N);
    let p = [0.01, 0.03, 0.08, 0.2, 0.5, 0.9][i % 6];
    let cap = [3, 8, 20, 60, VALIDITY_MAX_N][(i / 6) % 5];
    gnp_capped(n, p, cap, seed).unwrap()
}

fn c1_oracle() -> Check {
    let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
    let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    let b2 = Poset::from_relations(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
    let bx = |g: &Graph| exact_boxicity(g).map(|r| r.0).map_err(|e| e.to_string());
    let dim = |p: &Poset| exact_dimension(p).map(|r| r.0).map_err(|e| e.to_string());
    let got = [
        ("bx(K6)", bx(&Graph::complete(6))?, 1),
        ("bx(P4)", bx(&p4)?, 1),
        ("bx(C4)", bx(&c4)?, 2),
        ("bx(K2,2,2)", bx(&matching_complement(6).unwrap())?, 3),
        ("dim(chain5)", dim(&Poset::chain(5))?, 1),
        ("dim(antichain2)", dim(&Poset::antichain(2))?, 2),
        ("dim(B2)", dim(&b2)?, 2),
        ("dim(S3)", dim(&Poset::standard_example(3))?, 3),
    ];
    for (name, v, want) in got {
        ensure(v == want, || format!("{name} = {v}, expected {want}"))?;
    }
    Ok("8/8 values exact".into())
}

fn c2_validity() -> Check {
    let results: Vec<std::result::Result<usize, String>> = (0..VALIDITY_GRAPHS)
        .into_par_iter()
        .map(|i| {
            let g = validity_graph(i);
            let certs = all_certificates(&g, i as u64).map_err(|e| format!("graph {i}: {e}"))?;
            for c in &certs {
                check_certificate(&g, c, &format!("graph {i} {}", c.construction))?;
            }
            Ok(certs.len())
        })
        .collect();
    let mut certs = 0;
    for r in results {
        certs += r?;
    }
    let posets: Vec<std::result::Result<(), String>> = (0..VALIDITY_POSETS)
        .into_par_iter()
        .map(|i| {
            let seed = derive(77, i as u64);
            let mut r = rng(seed);
            let n = r.gen_range(1..=VALIDITY_POSET_MAX_N);
            let p = [0.02, 0.05, 0.1, 0.3][i % 4];
            let poset = random_poset(n, p, seed).unwrap();
            let (orders, cert) =
                dimension_pipeline(&poset, seed, &Options::default()).map_err(err("dim"))?;
            ensure(orders.len() == 2 * cert.d, || {
                format!("poset {i}: {} orders for d={}", orders.len(), cert.d)
            })?;
            let rep = verify_fk_realizer(&poset, &orders).map_err(err("fk"))?;
            ensure(rep.is_clean(), || format!("poset {i}: {rep}"))
        })
        .collect();
    for r in posets {
        r?;
    }
    Ok(format!(
        "{VALIDITY_GRAPHS} graphs / {certs} certificates clean, {VALIDITY_POSETS} posets FK-valid"
    ))
}

fn c3_roberts() -> Check {
    let mut r = rng(3);
    for i in 0..ROBERTS_SAMPLES {
        let n = 1 + i % 7;
        let p: f64 = r.gen();
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if r.gen_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        let rep = pair_elimination_rep(&g);
        ensure(rep.dim() <= (n / 2).max(1), || {
            format!("n={n}: dimension {}", rep.dim())
        })?;
        ensure(verify_box_rep(&g, &rep).unwrap().is_clean(), || {
            format!("sample {i} not clean")
        })?;
    }
    for n in [4, 6] {
        let g = matching_complement(n).unwrap();
        let d = pair_elimination_rep(&g).dim();
        let (bx, _) = exact_boxicity(&g).map_err(err("oracle"))?;
        ensure(d == n / 2 && bx == n / 2, || {
            format!("matching complement n={n}: d={d}, bx={bx}")
        })?;
    }
    Ok(format!(
        "{ROBERTS_SAMPLES} samples within max(1, n/2); matching complements n=4,6 tight"
    ))
}

fn c4_suitable() -> Check {
    let opts = Options::default();
    (0..SUITABLE_SEEDS).into_par_iter().try_for_each(|s| {
        let n = 30 + (s as usize % 11);
        let f = build_suitable(n, 3, s, &opts).map_err(err("build"))?;
        let ok = verify_suitable(&f, VerifyMode::Exhaustive).map_err(err("verify"))?;
        ensure(ok, || format!("n={n}, seed={s}: not 3-suitable"))
    })?;
    let big = build_suitable(SUITABLE_LARGE_N, 3, 1, &opts).map_err(err("build"))?;
    ensure(big.len() <= SUITABLE_LARGE_MAX, || {
        format!("n=10^4: size {} > {SUITABLE_LARGE_MAX}", big.len())
    })?;
    let ok = verify_suitable(
        &big,
        VerifyMode::Sampled {
            trials: SUITABLE_TRIALS,
            seed: 5,
        },
    )
    .map_err(err("verify"))?;
    ensure(ok, || "n=10^4: sampled counterexample".into())?;
    Ok(format!(
        "{SUITABLE_SEEDS} exhaustive checks; n=10^4 size {} <= {SUITABLE_LARGE_MAX}",
        big.len()
    ))
}

fn c5_lll() -> Check {
    let opts = Options::default();
    (0..LLL_SEEDS).into_par_iter().try_for_each(|s| {
        let g = gnp_capped(1500, 0.03, 30, derive(s, 0)).unwrap();
        let p = partition_bounded_mono(&g, 3, 213, derive(s, 1), &opts)
            .map_err(err("partition d=3"))?;
        ensure(p.max_class_degree(&g) <= 3, || {
            format!("seed {s}: class degree {}", p.max_class_degree(&g))
        })?;

        let g = gnp_capped(1400, 0.9, 1000, derive(s, 2)).unwrap();
        let (d, k) = auto_params_partition(g.max_degree()).map_err(err("auto"))?;
        let p =
            partition_bounded_mono(&g, d, k, derive(s, 3), &opts).map_err(err("partition auto"))?;
        ensure(p.max_class_degree(&g) <= d, || {
            format!(
                "seed {s}: auto class degree {} > {d}",
                p.max_class_degree(&g)
            )
        })?;

        let g = boxlab::generate::bipartite_capped(400, 100, 0.3, 16, 64, derive(s, 4)).unwrap();
        let a: Vec<usize> = (0..400).collect();
        let b: Vec<usize> = (400..500).collect();
        let (r, l, t) = (2, colour_count(16, 2), colouring_count(16, 64));
        let f = family_colourings(&g, &a, &b, r, l, t, derive(s, 5), &opts)
            .map_err(err("colourings"))?;
        let ok = f.a.iter().zip(&f.assignment).all(|(&v, &i)| {
            let mut cnt = vec![0usize; l];
            g.neighbors(v).iter().filter(|&&w| w >= 400).all(|&w| {
                let c = f.colours[i][f.b.binary_search(&w).unwrap()];
                cnt[c] += 1;
                cnt[c] <= r
            })
        });
        ensure(ok && f.check(&g), || {
            format!("seed {s}: colouring assignment fails")
        })
    })?;
    Ok(format!("{LLL_SEEDS} seeds: partitions (Δ=30,d=3,k=213) and auto Δ=1000 exact; colourings certified"))
}

fn genus_inputs(i: u64) -> (Graph, Vec<usize>, BoxRepresentation) {
    let mut r = rng(derive(8, i));
    let n = r.gen_range(12..=60);
    let g = gnp_capped(n, r.gen_range(0.05..0.4), n, derive(8, i + 1000)).unwrap();
    let size = r.gen_range(0..=10);
    let mut x: Vec<usize> = rand::seq::index::sample(&mut r, n, size).into_vec();
    x.sort_unstable();
    let rest: Vec<usize> = (0..n).filter(|v| !x.contains(v)).collect();
    let rep = pair_elimination_rep(&g.induced(&rest))
        .embed(&rest, n)
        .unwrap();
    (g, x, rep)
}

fn suitable_genus_input() -> (Graph, Vec<usize>, BoxRepresentation) {
    let base = grid(6, 6);
    let mut edges: Vec<(usize, usize)> = base.edges().collect();
    let x: Vec<usize> = (36..76).collect();
    for (i, &v) in x.iter().enumerate() {
        for j in 0..=(i % 4) {
            edges.push((v, (i * 7 + j * 5) % 36));
        }
    }
    let g = Graph::from_edges(76, &edges).unwrap();
    let rest: Vec<usize> = (0..36).collect();
    let rep = pair_elimination_rep(&g.induced(&rest))
        .embed(&rest, 76)
        .unwrap();
    (g, x, rep)
}

fn ltw_input(cols: usize) -> (Graph, TreeDecomposition, Layering) {
    let g = grid(5, cols);
    let l = Layering::bfs(&g, 0);
    (g, grid_td(5, cols), l)
}

/// One certificate of each kind, for the formula and determinism checks.
fn showcase(seed: u64) -> std::result::Result<Vec<(Graph, Certificate)>, String> {
    let opts = Options::default();
    let mut out = Vec::new();
    for i in [3, 40, 101] {
        let g = validity_graph(i);
        for c in all_certificates(&g, seed)? {
            out.push((g.clone(), c));
        }
    }
    let (g, x, rep) = genus_inputs(seed);
    out.push((
        g.clone(),
        genus_rep(&g, 2, &x, &rep, seed, &opts).map_err(err("genus"))?,
    ));
    let (g, x, rep) = suitable_genus_input();
    let small = Options {
        genus_threshold: 10,
        ..Options::default()
    };
    out.push((
        g.clone(),
        genus_rep(&g, 5, &x, &rep, seed, &small).map_err(err("genus suitable"))?,
    ));
    let (g, td, l) = ltw_input(9);
    out.push((
        g.clone(),
        layered_tw_rep(&g, &td, &l, Some(3), seed).map_err(err("ltw"))?,
    ));
    let p = random_poset(40, 0.08, seed).unwrap();
    let (_, c) = dimension_pipeline(&p, seed, &opts).map_err(err("dim"))?;
    out.push((p.comparability_graph(), c));
    Ok(out)
}

fn c6_formulas() -> Check {
    let certs = showcase(11)?;
    let mut kinds = HashSet::new();
    for (g, c) in &certs {
        check_certificate(g, c, &c.construction)?;
        kinds.insert(c.construction.clone());
    }
    ensure(
        genus_k(5) == 7 + ((5f64 / 5f64.ln()).sqrt().ceil() as usize),
        || "genus k".into(),
    )?;
    Ok(format!(
        "{} certificates over {} constructions recompute exactly",
        certs.len(),
        kinds.len()
    ))
}

/// Graphs on `n` vertices, one per isomorphism class.
fn graphs_up_to_iso(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let perms = permutations(n);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let canon = perms
            .iter()
            .map(|p| {
                let mut e: Vec<(usize, usize)> = edges
                    .iter()
                    .map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v])))
                    .collect();
                e.sort_unstable();
                e
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(Graph::from_edges(n, &edges).unwrap());
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn c7_round_trip() -> Check {
    let four = graphs_up_to_iso(4);
    ensure(four.len() == 11, || {
        format!("{} graphs on 4 vertices", four.len())
    })?;
    let mut count = 0;
    for n in 1..=4 {
        for g in graphs_up_to_iso(n) {
            let dp = graph_to_doubled_poset(&g);
            let (dim, realizer) = exact_dimension(&dp.poset).map_err(err("dim"))?;
            let (bx, _) = exact_boxicity(&g).map_err(err("bx"))?;
            ensure(dim >= bx, || {
                format!("n={n}, m={}: dim {dim} < bx {bx}", g.m())
            })?;
            let rep = boxes_from_realizer(&g, &realizer.orders).map_err(err("boxes"))?;
            ensure(rep.dim() == dim, || {
                format!("rep has {} dims, dim is {dim}", rep.dim())
            })?;
            ensure(verify_box_rep(&g, &rep).unwrap().is_clean(), || {
                format!("n={n}, m={}: rep not clean", g.m())
            })?;
            count += 1;
        }
    }
    Ok(format!(
        "{count} graphs on <= 4 vertices (11 on 4): dim >= bx, realizer boxes clean"
    ))
}

fn c8_genus_deletion() -> Check {
    for i in 0..20 {
        let (g, x, rep) = genus_inputs(i);
        let c = genus_rep(&g, 1 + i as usize % 3, &x, &rep, i, &Options::default())
            .map_err(err("genus"))?;
        ensure(
            matches!(
                c.params,
                Params::Genus {
                    branch: GenusBranch::Deletion,
                    ..
                }
            ),
            || "branch".into(),
        )?;
        ensure(c.d == rep.dim() + x.len(), || {
            format!("graph {i}: d={} vs {} + {}", c.d, rep.dim(), x.len())
        })?;
        check_certificate(&g, &c, "genus")?;
    }
    Ok("20 graphs: d = d(rep of G-X) + |X|, verified".into())
}

fn c9_ltw() -> Check {
    let mut worst = 0;
    for cols in 1..=20 {
        let (g, td, l) = ltw_input(cols);
        let w = l.layered_width(&td);
        ensure(w <= 3, || format!("5x{cols}: layered width {w}"))?;
        ensure(group_components_ok(&g, &l), || {
            format!("5x{cols}: group components span more than two layers")
        })?;
        let c = layered_tw_rep(&g, &td, &l, Some(3), cols as u64).map_err(err("ltw"))?;
        check_certificate(&g, &c, "ltw")?;
        let Params::Ltw { d_sub, .. } = c.params else {
            return Err("params".into());
        };
        ensure(c.d == 3 * d_sub + 1, || {
            format!("5x{cols}: d={} vs 3*{d_sub}+1", c.d)
        })?;
        ensure(c.target_d == LTW_TARGET, || {
            format!("target {}", c.target_d)
        })?;
        worst = worst.max(c.d);
    }
    Ok(format!("5xk grids k<=20: d = 3 D_sub + 1, groups ok; max achieved d {worst} vs target {LTW_TARGET}"))
}

fn c10_determinism() -> Check {
    let a = showcase(23)?;
    let b = showcase(23)?;
    ensure(a.len() == b.len(), || "different certificate counts".into())?;
    for ((g, x), (_, y)) in a.iter().zip(&b) {
        let (jx, jy) = (x.to_json(), y.to_json());
        ensure(jx == jy, || {
            format!("{} differs between runs", x.construction)
        })?;
        let back = Certificate::from_json(&jx).map_err(err("json"))?;
        check_certificate(g, &back, "reloaded")?;
        ensure(back.to_json() == jx, || {
            format!("{} JSON round trip differs", x.construction)
        })?;
    }
    let f = |s| {
        serde_json::to_string(&build_suitable(200, 3, s, &Options::default()).unwrap()).unwrap()
    };
    ensure(f(9) == f(9), || "suitable family differs".into())?;
    Ok(format!(
        "{} certificates byte-identical on regeneration",
        a.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "oracle ground truth", LIMIT_ORACLE, c1_oracle),
        (2, "universal validity", LIMIT_VALIDITY, c2_validity),
        (3, "pair elimination bound", LIMIT_ROBERTS, c3_roberts),
        (4, "suitable families", LIMIT_SUITABLE, c4_suitable),
        (5, "local lemma samplers", LIMIT_LLL, c5_lll),
        (6, "formula fidelity", LIMIT_OTHER, c6_formulas),
        (7, "reduction round trip", LIMIT_ROUND_TRIP, c7_round_trip),
        (8, "genus deletion branch", LIMIT_OTHER, c8_genus_deletion),
        (9, "layered treewidth", LIMIT_OTHER, c9_ltw),
        (10, "determinism", LIMIT_OTHER, c10_determinism),
    ];
    let mut failed = 0;
    for (id, name, limit, f) in criteria {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let res = res.and_then(|m| {
            if took > limit {
                Err(format!("{m}; took {took:.1?} > {limit:?}"))
            } else {
                Ok(m)
            }
        });
        match res {
            Ok(m) => println!("criterion {id:>2} PASS  {name}: {m} ({took:.2?})"),
            Err(m) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name}: {m} ({took:.2?})");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
