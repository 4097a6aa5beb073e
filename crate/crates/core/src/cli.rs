//! Command-line front end.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::bridge::dimension_pipeline;
use crate::builders::{
    bipartite_suitable_rep, caught_permutation_rep, degenerate_rep, pair_elimination_rep,
    treewidth_rep, TreeDecomposition,
};
use crate::certificate::{Certificate, Params, Target};
use crate::error::{Error, Result};
use crate::generate;
use crate::io;
use crate::lll::partition_bounded_mono;
use crate::options::Options;
use crate::oracle::{exact_boxicity, exact_dimension};
use crate::pipelines::{bounded_degree_rep, genus_rep, layered_tw_rep, Layering};
use crate::seed::derive;
use crate::suitable::{build_suitable, verify_suitable, VerifyMode};

#[derive(Parser, Debug)]
#[command(
    name = "boxlab",
    version,
    about = "Verified box representations and poset realizers"
)]
pub struct Cli {
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Run constructions even when a parameter precondition fails (output is still verified).
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct SeedArg {
    /// Random seed; a fresh one is drawn and recorded when omitted.
    #[arg(long)]
    seed: Option<u64>,
}

impl SeedArg {
    fn get(self) -> u64 {
        self.seed.unwrap_or_else(rand::random)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// k-suitable family of permutations of 0..n.
    Suitable {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, value_enum)]
        verify: Option<SuitableCheck>,
        /// Trials for sampled verification.
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
    },
    /// Partition with at most d neighbours of any vertex in each of k classes.
    Partition {
        graph: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Bounded-degree construction.
    Degree {
        graph: PathBuf,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Construction from a vertex set X and a representation of G - X.
    Genus {
        graph: PathBuf,
        /// Euler genus.
        #[arg(long)]
        g: usize,
        /// File with the vertices of X.
        #[arg(long)]
        cut: PathBuf,
        /// Certificate whose boxes represent G - X (no boxes on X).
        #[arg(long)]
        rep: PathBuf,
        /// |X| at or above which the suitable-family branch is used.
        #[arg(long, default_value_t = 10_000)]
        threshold: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Construction from a tree decomposition and a layering.
    Ltw {
        graph: PathBuf,
        #[arg(long)]
        td: PathBuf,
        /// Layer file; BFS layers from vertex 0 when omitted.
        #[arg(long)]
        layers: Option<PathBuf>,
        /// Claimed layered width used for the target (at least the measured one).
        #[arg(long)]
        ltw: Option<usize>,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Realizer of a poset through its comparability graph.
    Dim {
        poset: PathBuf,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Exact values for tiny instances.
    Oracle {
        #[command(subcommand)]
        what: OracleCmd,
    },
    /// Check a certificate against a graph.
    Verify {
        graph: PathBuf,
        certificate: PathBuf,
    },
    /// Generate an instance.
    Gen {
        #[command(subcommand)]
        family: GenCmd,
    },
    /// Timing runs; appends CSV rows.
    Bench {
        #[command(subcommand)]
        what: BenchCmd,
    },
    /// Run a single builder.
    Build {
        #[command(subcommand)]
        builder: BuildCmd,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum SuitableCheck {
    Exhaustive,
    Sampled,
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    Bx { graph: PathBuf },
    Dim { poset: PathBuf },
}

#[derive(Subcommand, Debug)]
enum GenCmd {
    /// G(n, p) with degrees capped at delta.
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        delta: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Random bipartite graph on A = 0..a, B = a..a+b with side degree caps.
    Bipartite {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        cap_a: usize,
        #[arg(long)]
        cap_b: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Grid graph; optionally also writes a column-pair decomposition and corner BFS layers.
    Grid {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        td: Option<PathBuf>,
        #[arg(long)]
        layers: Option<PathBuf>,
    },
    /// Crown (standard example) S_m as a poset.
    Crown {
        #[arg(long)]
        m: usize,
    },
    /// Complement of a perfect matching.
    MatchingComplement {
        #[arg(long)]
        n: usize,
    },
    /// Random height-two poset.
    HeightTwo {
        #[arg(long)]
        lo: usize,
        #[arg(long)]
        hi: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        cap: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
}

#[derive(Subcommand, Debug)]
enum BenchCmd {
    /// Bounded-degree construction on capped G(n, p) for Δ = 8, 16, ... up to dmax.
    Degree {
        #[arg(long)]
        dmax: usize,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        /// Vertex count; 2Δ when omitted.
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        seed: SeedArg,
        /// Skip the external re-check (the builders' own checks still run).
        #[arg(long)]
        no_verify: bool,
    },
}

#[derive(Subcommand, Debug)]
enum BuildCmd {
    /// Pair elimination, at most max(1, n/2) dimensions.
    Pairs { graph: PathBuf },
    /// k-degenerate construction.
    Degenerate {
        graph: PathBuf,
        /// Degeneracy bound; the graph's degeneracy when omitted.
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Tree-decomposition construction; a min-degree heuristic decomposition is used when --td is omitted.
    Treewidth {
        graph: PathBuf,
        #[arg(long)]
        td: Option<PathBuf>,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Suitable-permutation construction for G<A,B>.
    Bipartite {
        graph: PathBuf,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        delta: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Random-permutation construction for G<A,B>.
    Caught {
        graph: PathBuf,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

fn read_graph(path: &Path) -> Result<crate::graph::Graph> {
    io::parse_graph(&read(path)?)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => {
            let mut so = std::io::stdout().lock();
            let res = so.write_all(text.as_bytes()).and_then(|_| {
                if text.ends_with('\n') {
                    Ok(())
                } else {
                    so.write_all(b"\n")
                }
            });
            match res {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                r => r?,
            }
        }
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

/// Verifies, writes and summarizes a certificate.
fn emit_certificate(
    out: &Option<PathBuf>,
    g: &crate::graph::Graph,
    cert: &Certificate,
) -> Result<()> {
    cert.verify(g)?.into_result()?;
    cert.replay_params()?;
    emit(out, &cert.to_json())?;
    eprintln!(
        "{} n={} d={} target_d={} fallback={} seed={} verified=true",
        cert.construction, cert.n, cert.d, cert.target_d, cert.fallback, cert.seed
    );
    Ok(())
}

/// Parses arguments and runs; returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::Verification(r) = &e {
                for v in &r.violations {
                    eprintln!("  {:?} {} {}", v.kind, v.u, v.v);
                }
            }
            e.exit_code()
        }
    }
}

pub fn run(cli: Cli) -> Result<()> {
    let mut opts = Options::from_env();
    opts.force = cli.force;
    let out = &cli.out;
    match cli.cmd {
        Command::Suitable {
            n,
            k,
            seed,
            verify,
            trials,
        } => {
            let seed = seed.get();
            let f = build_suitable(n, k, seed, &opts)?;
            let checked = match verify {
                None => None,
                Some(SuitableCheck::Exhaustive) => {
                    Some(verify_suitable(&f, VerifyMode::Exhaustive)?)
                }
                Some(SuitableCheck::Sampled) => Some(verify_suitable(
                    &f,
                    VerifyMode::Sampled {
                        trials,
                        seed: derive(seed, 99),
                    },
                )?),
            };
            if checked == Some(false) {
                return Err(Error::structural("family failed the suitability check"));
            }
            emit(
                out,
                &to_json(
                    &json!({ "n": n, "k": k, "seed": seed, "size": f.len(), "route": f.route, "verified": checked, "perms": f.perms }),
                ),
            )?;
            eprintln!("suitable n={n} k={k} size={} seed={seed}", f.len());
        }
        Command::Partition { graph, d, k, seed } => {
            let g = read_graph(&graph)?;
            let seed = seed.get();
            let p = partition_bounded_mono(&g, d, k, seed, &opts)?;
            let worst = p.max_class_degree(&g);
            emit(
                out,
                &to_json(
                    &json!({ "d": d, "k": k, "seed": seed, "max_class_degree": worst, "classes": p.cls }),
                ),
            )?;
            eprintln!(
                "partition n={} d={d} k={k} max_class_degree={worst} seed={seed}",
                g.n()
            );
        }
        Command::Degree { graph, seed } => {
            let g = read_graph(&graph)?;
            let cert = bounded_degree_rep(&g, seed.get(), &opts)?;
            emit_certificate(out, &g, &cert)?;
        }
        Command::Genus {
            graph,
            g: genus,
            cut,
            rep,
            threshold,
            seed,
        } => {
            let g = read_graph(&graph)?;
            let x = io::parse_vertex_set(&read(&cut)?, g.n())?;
            let input = Certificate::from_json(&read(&rep)?)?;
            opts.genus_threshold = threshold;
            let cert = genus_rep(&g, genus, &x, &input.boxes, seed.get(), &opts)?;
            if let Params::Genus {
                advisory: Some(a), ..
            } = &cert.params
            {
                eprintln!("warning: {a}");
            }
            emit_certificate(out, &g, &cert)?;
        }
        Command::Ltw {
            graph,
            td,
            layers,
            ltw,
            seed,
        } => {
            let g = read_graph(&graph)?;
            let td = io::parse_td(&read(&td)?)?;
            let layering = match layers {
                Some(p) => io::parse_layers(&read(&p)?, g.n())?,
                None => Layering::bfs(&g, 0),
            };
            let cert = layered_tw_rep(&g, &td, &layering, ltw, seed.get())?;
            emit_certificate(out, &g, &cert)?;
        }
        Command::Dim { poset, seed } => {
            let p = io::parse_poset(&read(&poset)?)?;
            let (orders, cert) = dimension_pipeline(&p, seed.get(), &opts)?;
            let value = json!({ "orders": orders, "certificate": serde_json::to_value(&cert)? });
            emit(out, &to_json(&value))?;
            eprintln!(
                "dim n={} orders={} d={} seed={} verified=true",
                p.n(),
                orders.len(),
                cert.d,
                cert.seed
            );
        }
        Command::Oracle { what } => match what {
            OracleCmd::Bx { graph } => {
                let g = read_graph(&graph)?;
                let (d, rep) = exact_boxicity(&g)?;
                let witness = Certificate::new(
                    "oracle",
                    0,
                    Target::Whole,
                    Params::Supplied { d },
                    serde_json::Value::Null,
                    rep,
                    false,
                )?;
                emit(
                    out,
                    &to_json(&json!({ "value": d, "witness": serde_json::to_value(&witness)? })),
                )?;
            }
            OracleCmd::Dim { poset } => {
                let p = io::parse_poset(&read(&poset)?)?;
                let (k, r) = exact_dimension(&p)?;
                emit(out, &to_json(&json!({ "value": k, "witness": r.orders })))?;
            }
        },
        Command::Verify { graph, certificate } => {
            let g = read_graph(&graph)?;
            let cert = Certificate::from_json(&read(&certificate)?)?;
            cert.verify(&g)?.into_result()?;
            cert.replay_params()?;
            println!(
                "{} n={} d={} target_d={} verified=true",
                cert.construction, cert.n, cert.d, cert.target_d
            );
        }
        Command::Gen { family } => gen(out, family)?,
        Command::Bench { what } => match what {
            BenchCmd::Degree {
                dmax,
                trials,
                n,
                seed,
                no_verify,
            } => bench_degree(out, dmax, trials, n, seed.get(), no_verify, &opts)?,
        },
        Command::Build { builder } => build(out, builder, &opts)?,
    }
    Ok(())
}

fn gen(out: &Option<PathBuf>, family: GenCmd) -> Result<()> {
    let text = match family {
        GenCmd::Gnp { n, p, delta, seed } => {
            io::write_graph(&generate::gnp_capped(n, p, delta, seed.get())?)
        }
        GenCmd::Bipartite {
            a,
            b,
            p,
            cap_a,
            cap_b,
            seed,
        } => io::write_graph(&generate::bipartite_capped(
            a,
            b,
            p,
            cap_a,
            cap_b,
            seed.get(),
        )?),
        GenCmd::Grid {
            rows,
            cols,
            td,
            layers,
        } => {
            if let Some(path) = td {
                fs::write(path, io::write_td(&generate::grid_td(rows, cols)))?;
            }
            if let Some(path) = layers {
                fs::write(path, io::write_layers(&generate::grid_layers(rows, cols)))?;
            }
            io::write_graph(&generate::grid(rows, cols))
        }
        GenCmd::Crown { m } => io::write_poset(&generate::crown(m)),
        GenCmd::MatchingComplement { n } => io::write_graph(&generate::matching_complement(n)?),
        GenCmd::HeightTwo {
            lo,
            hi,
            p,
            cap,
            seed,
        } => io::write_poset(&generate::height_two_poset(lo, hi, p, cap, seed.get())?),
    };
    emit(out, &text)
}

#[derive(Serialize)]
struct BenchRow {
    delta: usize,
    n: usize,
    d: usize,
    target_d: usize,
    seconds: f64,
    seed: u64,
    fallback: bool,
    verified: bool,
}

fn bench_degree(
    out: &Option<PathBuf>,
    dmax: usize,
    trials: usize,
    n: Option<usize>,
    seed: u64,
    no_verify: bool,
    opts: &Options,
) -> Result<()> {
    let mut deltas = Vec::new();
    let mut d = 8;
    while d < dmax {
        deltas.push(d);
        d *= 2;
    }
    deltas.push(dmax);
    let jobs: Vec<(usize, u64)> = deltas
        .iter()
        .flat_map(|&d| (0..trials).map(move |t| (d, t as u64)))
        .enumerate()
        .map(|(i, (d, _))| (d, derive(seed, i as u64)))
        .collect();
    let rows: Vec<BenchRow> = jobs
        .par_iter()
        .map(|&(delta, s)| {
            let n = n.unwrap_or(2 * delta).max(delta + 1);
            let g = generate::gnp_capped(n, (1.5 * delta as f64 / n as f64).min(1.0), delta, s)?;
            let start = Instant::now();
            let cert = bounded_degree_rep(&g, s, opts)?;
            let seconds = start.elapsed().as_secs_f64();
            let verified = if no_verify {
                false
            } else {
                cert.verify(&g)?.is_clean()
            };
            Ok(BenchRow {
                delta: g.max_degree(),
                n,
                d: cert.d,
                target_d: cert.target_d,
                seconds,
                seed: s,
                fallback: cert.fallback,
                verified,
            })
        })
        .collect::<Result<_>>()?;
    let sink: Box<dyn std::io::Write> = match out {
        Some(p) => Box::new(fs::OpenOptions::new().create(true).append(true).open(p)?),
        None => Box::new(std::io::stdout()),
    };
    let fresh = out
        .as_ref()
        .is_none_or(|p| fs::metadata(p).map_or(true, |m| m.len() == 0));
    let mut w = csv::WriterBuilder::new()
        .has_headers(fresh)
        .from_writer(sink);
    for r in &rows {
        w.serialize(r)
            .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    }
    w.flush()?;
    Ok(())
}

fn build(out: &Option<PathBuf>, builder: BuildCmd, opts: &Options) -> Result<()> {
    let (g, cert) = match builder {
        BuildCmd::Pairs { graph } => {
            let g = read_graph(&graph)?;
            let rep = pair_elimination_rep(&g);
            let cert = Certificate::new(
                "pairs",
                0,
                Target::Whole,
                Params::PairElimination { vertices: g.n() },
                serde_json::Value::Null,
                rep,
                false,
            )?;
            (g, cert)
        }
        BuildCmd::Degenerate { graph, k, seed } => {
            let g = read_graph(&graph)?;
            let seed = seed.get();
            let r = degenerate_rep(&g, k.unwrap_or_else(|| g.degeneracy()), seed, opts)?;
            let fb = r.params.fallback;
            let cert = Certificate::new(
                "degenerate",
                seed,
                Target::Whole,
                Params::Degenerate(r.params),
                serde_json::Value::Null,
                r.rep,
                fb,
            )?;
            (g, cert)
        }
        BuildCmd::Treewidth { graph, td, seed } => {
            let g = read_graph(&graph)?;
            let seed = seed.get();
            let (td, heuristic) = match td {
                Some(p) => (io::parse_td(&read(&p)?)?, false),
                None => (TreeDecomposition::min_degree_heuristic(&g), true),
            };
            let r = treewidth_rep(&g, &td, seed)?;
            let witness = json!({ "heuristic_decomposition": heuristic, "decomposition": td });
            let cert = Certificate::new(
                "treewidth",
                seed,
                Target::Whole,
                Params::Treewidth(r.params),
                witness,
                r.rep,
                false,
            )?;
            (g, cert)
        }
        BuildCmd::Bipartite {
            graph,
            a,
            b,
            d,
            delta,
            seed,
        } => {
            let g = read_graph(&graph)?;
            let seed = seed.get();
            let a = io::parse_vertex_set(&read(&a)?, g.n())?;
            let b = io::parse_vertex_set(&read(&b)?, g.n())?;
            let r = bipartite_suitable_rep(&g, &a, &b, d, delta, seed, opts)?;
            let witness = serde_json::to_value(&r.colourings)?;
            let cert = Certificate::new(
                "bipartite",
                seed,
                Target::Bipartite { a, b },
                Params::Bipartite(r.params),
                witness,
                r.rep,
                false,
            )?;
            (g, cert)
        }
        BuildCmd::Caught {
            graph,
            a,
            b,
            k,
            seed,
        } => {
            let g = read_graph(&graph)?;
            let seed = seed.get();
            let a = io::parse_vertex_set(&read(&a)?, g.n())?;
            let b = io::parse_vertex_set(&read(&b)?, g.n())?;
            let r = caught_permutation_rep(&g, &a, &b, k, seed, opts)?;
            let witness = json!({ "perms": r.perms });
            let cert = Certificate::new(
                "caught",
                seed,
                Target::Bipartite { a, b },
                Params::Caught(r.params),
                witness,
                r.rep,
                false,
            )?;
            (g, cert)
        }
    };
    emit_certificate(out, &g, &cert)
}
