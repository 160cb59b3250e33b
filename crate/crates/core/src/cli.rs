//! Command-line front end: reads a graph file, runs one analysis, writes a
//! deterministic text report.
//!
//! Exit codes: 0 on success, 1 on I/O, parse or numerical errors, 2 when a
//! theorem's hypotheses do not hold for the input.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::consensus::{detect_clusters, predict_clusters, simulate, SimulationConfig};
use crate::definiteness::{multi_edge_verdict, Classification, BOUNDARY_REL_TOL};
use crate::error::{Error, Result};
use crate::graph::{decompose, SignedGraph};
use crate::io::{parse_vector, read_graph};
use crate::laplacian::build_bundle;
use crate::resistance::{effective_resistance_detailed, resistance_report};
use crate::spectra::{signature, signature_of_similar_nonsymmetric};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Signatures of L, the essential edge Laplacian and R W Rᵀ.
    Signature,
    /// Effective resistances (requested pairs, or negative edges over G₊).
    Resistance,
    /// Largest admissible magnitude for each negative edge.
    Threshold,
    /// PSD classification with spectral cross-check.
    CheckPsd,
    /// Consensus trajectory as CSV.
    Simulate,
    /// Cluster prediction for a single-cycle boundary graph.
    PredictClusters,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Signature => "signature",
            Command::Resistance => "resistance",
            Command::Threshold => "threshold",
            Command::CheckPsd => "check-psd",
            Command::Simulate => "simulate",
            Command::PredictClusters => "predict-clusters",
        }
    }
}

#[derive(Debug, Clone, Parser)]
#[command(name = "signlap", version, about = "Definiteness of signed graph Laplacians")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Graph file (`nodes N` then `u v w` per line).
    pub input: PathBuf,
    /// Zero tolerance for eigenvalue counts (default: dim · eps · max|λ|).
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 20.0)]
    pub t_final: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub step: f64,
    /// Record every N-th integration step.
    #[arg(long, default_value_t = 10)]
    pub stride: usize,
    /// Seed for the random initial state when `--x0` is not given.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Initial state file (whitespace separated values).
    #[arg(long)]
    pub x0: Option<PathBuf>,
    /// Report destination (stdout if omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Node pair for `resistance`, as `U,V`. Repeatable.
    #[arg(long = "pair", value_parser = parse_pair)]
    pub pairs: Vec<(usize, usize)>,
    /// Cluster report destination for `simulate`.
    #[arg(long)]
    pub clusters: Option<PathBuf>,
    #[arg(long, default_value_t = crate::consensus::DEFAULT_CLUSTER_TOL)]
    pub cluster_tol: f64,
}

fn parse_pair(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected U,V, got `{s}`"))?;
    let u = a.trim().parse().map_err(|e| format!("{e}"))?;
    let v = b.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((u, v))
}

/// Twelve significant digits, shortest form.
pub fn fmt_num(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("valid float");
    if rounded == 0.0 {
        return "0".into();
    }
    let a = rounded.abs();
    if (1e-5..1e15).contains(&a) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

fn header(cfg: &RunConfig, g: &SignedGraph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# signlap {}", cfg.command.name());
    let _ = writeln!(s, "# nodes={} edges={}", g.node_count(), g.edge_count());
    let _ = writeln!(s, "# seed={}", cfg.seed);
    let _ = writeln!(
        s,
        "# tol={}",
        cfg.tol.map_or_else(|| "default".to_string(), fmt_num)
    );
    let _ = writeln!(s, "# boundary_rel_tol={}", fmt_num(BOUNDARY_REL_TOL));
    if cfg.command == Command::Simulate {
        let _ = writeln!(
            s,
            "# t_final={} step={} stride={} cluster_tol={}",
            fmt_num(cfg.t_final),
            fmt_num(cfg.step),
            cfg.stride,
            fmt_num(cfg.cluster_tol)
        );
        let _ = writeln!(
            s,
            "# x0={}",
            if cfg.x0.is_some() { "file" } else { "seeded-random uniform[0,1)" }
        );
    }
    s
}

/// Seeded uniform `[0, 1)` initial state.
pub fn random_state(n: usize, seed: u64) -> DVector<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    DVector::from_iterator(n, (0..n).map(|_| rng.gen::<f64>()))
}

/// Outputs of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Reports {
    pub main: String,
    pub clusters: Option<String>,
}

/// Runs a command against an already-loaded graph.
pub fn execute(cfg: &RunConfig, g: &SignedGraph) -> Result<Reports> {
    let mut out = header(cfg, g);
    let mut clusters = None;
    match cfg.command {
        Command::Signature => {
            let d = decompose(g);
            let b = build_bundle(g, &d);
            let sl = signature(&b.laplacian, cfg.tol)?;
            let se = signature_of_similar_nonsymmetric(&b.forest_edge_laplacian, &b.cut_gram, cfg.tol)?;
            let sr = signature(&b.cut_gram, cfg.tol)?;
            let _ = writeln!(out, "sigma(L)={sl}");
            let _ = writeln!(out, "sigma(L_ess)={se}");
            let _ = writeln!(out, "sigma(RWR^T)={sr}");
            let _ = writeln!(out, "components={}", d.component_count);
            let _ = writeln!(out, "tol_used(L)={}", fmt_num(sl.tolerance_used));
            let _ = writeln!(
                out,
                "near_singular={}",
                sl.near_singular || se.near_singular || sr.near_singular
            );
        }
        Command::Resistance => {
            if cfg.pairs.is_empty() {
                let r = resistance_report(g)?;
                if r.pairs.is_empty() {
                    let _ = writeln!(out, "no negative edges (use --pair U,V for explicit pairs)");
                }
                for &(k, u, v, value) in &r.pairs {
                    let _ = writeln!(out, "edge {k} ({u},{v}): R(G+)={}", fmt_num(value));
                }
                let _ = writeln!(out, "R_tot={}", fmt_num(r.r_tot));
            } else {
                for &(u, v) in &cfg.pairs {
                    let r = effective_resistance_detailed(g, u, v)?;
                    let _ = write!(out, "R({u},{v})={}", fmt_num(r.value));
                    if !r.all_positive {
                        let _ = write!(out, " [signed graph: outside threshold hypotheses]");
                    }
                    out.push('\n');
                }
            }
        }
        Command::Threshold => {
            let v = multi_edge_verdict(g, cfg.tol)?;
            for e in &v.per_edge {
                let _ = writeln!(out, "edge ({},{}): max |w-| = {}", e.u, e.v, fmt_num(e.threshold));
                let _ = writeln!(
                    out,
                    "  index={} |w-|={} R(G+)={} margin={}",
                    e.edge,
                    fmt_num(e.magnitude),
                    fmt_num(e.resistance),
                    fmt_num(e.margin)
                );
            }
            let _ = writeln!(out, "disjoint_path_sets={}", v.disjointness_hypothesis_holds);
            if !v.theorem_applied {
                let _ = writeln!(out, "per-edge thresholds not conclusive: path-edge sets overlap");
            }
        }
        Command::CheckPsd => {
            if g.negative_edge_indices().is_empty() {
                let sig = signature(&g.laplacian(), cfg.tol)?;
                let class = Classification::from_signature(&sig, g.component_count());
                let _ = writeln!(out, "{class}, sigma={sig}");
                let _ = writeln!(out, "no negative edges");
            } else {
                let v = multi_edge_verdict(g, cfg.tol)?;
                let _ = writeln!(out, "{}, sigma={}", v.classification, v.spectrum);
                let _ = writeln!(out, "theorem_applied={}", v.theorem_applied);
                let _ = writeln!(out, "spectral_agreement={}", v.spectral_agreement);
                let _ = writeln!(out, "near_singular={}", v.spectrum.near_singular);
                let _ = writeln!(
                    out,
                    "corollary6: sum|w|^-1={} R_tot={} satisfied={}",
                    fmt_num(v.corollary6.inverse_weight_sum),
                    fmt_num(v.corollary6.r_tot),
                    v.corollary6.satisfied
                );
                for e in &v.per_edge {
                    let _ = writeln!(
                        out,
                        "edge ({},{}): |w-|={} threshold={} margin={}",
                        e.u,
                        e.v,
                        fmt_num(e.magnitude),
                        fmt_num(e.threshold),
                        fmt_num(e.margin)
                    );
                }
            }
        }
        Command::Simulate => {
            let x0 = match &cfg.x0 {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                    parse_vector(&text)?
                }
                None => random_state(g.node_count(), cfg.seed),
            };
            let sim = SimulationConfig {
                t_final: cfg.t_final,
                step: cfg.step,
                stride: cfg.stride,
            };
            let traj = simulate(g, &x0, &sim)?;
            out.push('t');
            for i in 0..g.node_count() {
                let _ = write!(out, ",x{i}");
            }
            out.push('\n');
            for (r, t) in traj.times.iter().enumerate() {
                out.push_str(&fmt_num(*t));
                for x in traj.states.row(r).iter() {
                    out.push(',');
                    out.push_str(&fmt_num(*x));
                }
                out.push('\n');
            }
            let mut rep = header(cfg, g);
            match detect_clusters(&traj, cfg.cluster_tol) {
                Ok(p) => {
                    let _ = writeln!(rep, "# clusters={}", p.count());
                    rep.push_str("node,cluster,value\n");
                    for (i, &c) in p.assignment.iter().enumerate() {
                        let _ = writeln!(rep, "{i},{c},{}", fmt_num(p.values[c]));
                    }
                }
                Err(e) => {
                    let _ = writeln!(rep, "# {e}");
                }
            }
            clusters = Some(rep);
        }
        Command::PredictClusters => {
            let p = predict_clusters(g)?;
            let _ = writeln!(out, "# q={}", p.q);
            let _ = writeln!(out, "# R_uv(G+)={}", fmt_num(p.resistance));
            let _ = writeln!(out, "# residual={}", fmt_num(p.residual));
            out.push_str("node,cluster,value\n");
            for (i, &c) in p.component_map.iter().enumerate() {
                let _ = writeln!(out, "{i},{c},{}", fmt_num(p.null_vector[i]));
            }
        }
    }
    Ok(Reports { main: out, clusters })
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_hypothesis_violation() {
        2
    } else {
        1
    }
}

/// Loads the input, executes, writes reports. Returns the process exit code.
pub fn run(cfg: &RunConfig) -> i32 {
    let result = read_graph(&cfg.input)
        .and_then(|g| execute(cfg, &g))
        .and_then(|reports| {
            match &cfg.out {
                Some(path) => std::fs::write(path, &reports.main)
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?,
                None => print!("{}", reports.main),
            }
            if let (Some(path), Some(text)) = (&cfg.clusters, &reports.clusters) {
                std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            }
            Ok(())
        });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
