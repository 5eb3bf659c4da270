//! `rainbow`: command-line front end for rainbow-core.
//!
//! Exit status: 0 on success, 1 when a check fails, 2 on usage errors.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rainbow_core::bounds::{bound_table, check_scalar_lemmas, variance_bound_check};
use rainbow_core::generators::{Family, GenSpec};
use rainbow_core::graph::format::{parse_instance, Instance};
use rainbow_core::harness::{run_trials, summarize, write_records, CampaignConfig};
use rainbow_core::reductions::{pipeline_main, pipeline_n_plus_k, PipelineParams, PipelineReport};
use rainbow_core::search::{brute_force_rainbow_girth, directed_girth, rainbow_girth_exact, undirected_girth};
use rainbow_core::{CycleCertificate, SearchError, SearchLimits};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "rainbow", version, about = "Short rainbow cycles in edge-colored graphs")]
struct Cli {
    /// Seed for randomized generators and pipelines.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Input graph file (defaults to standard input).
    #[arg(long = "in", global = true)]
    input: Option<PathBuf>,
    /// Write the main output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Run the pipelines with a scaled constant, e.g. `--scale c=10`.
    #[arg(long, global = true, value_parser = parse_scale)]
    scale: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum FamilyArg {
    Circulant,
    RandomMinOutdeg,
    RandomColored,
    StarCirculant,
    StarRandomMinOutdeg,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Which {
    Main,
    NPlusK,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate an instance.
    Gen {
        #[arg(value_enum)]
        family: FamilyArg,
        /// Number of vertices.
        #[arg(long)]
        n: usize,
        /// Out-degree, or class size for random colored graphs.
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Circulant offsets; defaults to 1..=k.
        #[arg(long, value_delimiter = ',')]
        steps: Option<Vec<usize>>,
        /// Number of color classes for random colored graphs; defaults to n.
        #[arg(long)]
        colors: Option<usize>,
        /// Also write the generator spec as JSON.
        #[arg(long)]
        spec_out: Option<PathBuf>,
    },
    /// Girth of a colored graph, or directed girth of a digraph.
    Girth,
    /// Exact rainbow girth.
    RainbowGirth {
        /// Longest cycle length to search for.
        #[arg(long, default_value_t = rainbow_core::search::DEFAULT_MAX_LEN)]
        max_len: usize,
        /// Search-tree node budget before giving up.
        #[arg(long, default_value_t = rainbow_core::search::DEFAULT_NODE_BUDGET)]
        budget: u64,
        /// Use exhaustive enumeration (n <= 12) instead.
        #[arg(long)]
        brute_force: bool,
    },
    /// Shortest directed cycle.
    DirectedGirth,
    /// Run a reduction pipeline and print its report.
    Pipeline {
        /// Class-size parameter k of the instance.
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Which::Main)]
        which: Which,
        /// Override the required class size.
        #[arg(long)]
        class_size: Option<usize>,
        /// Override the domination threshold.
        #[arg(long)]
        threshold: Option<f64>,
        /// Resampling attempts for the deletion step.
        #[arg(long)]
        retry_cap: Option<u32>,
    },
    /// Closed-form bounds for given n and k.
    Bounds {
        /// Number of vertices.
        #[arg(long)]
        n: u64,
        /// Class size or out-degree.
        #[arg(long)]
        k: u64,
    },
    /// Sweep the scalar inequalities over k_lo..=k_hi; with --variance, check
    /// the variance inequality at (k, r) instead.
    Lemmas {
        /// Smallest k of the sweep.
        #[arg(long, default_value_t = 2)]
        lo: u64,
        /// Largest k of the sweep.
        #[arg(long, default_value_t = 1 << 20)]
        hi: u64,
        /// Check the variance inequality at this (k, r).
        #[arg(long, num_args = 2, value_names = ["K", "R"])]
        variance: Option<Vec<f64>>,
        /// Class-size constant.
        #[arg(long, default_value_t = 1e9)]
        c: f64,
        /// Grid points for the variance check.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Run a verification campaign.
    Verify {
        /// Campaign config (JSON).
        #[arg(long)]
        config: PathBuf,
    },
}

fn parse_scale(s: &str) -> Result<f64, String> {
    let v = s.strip_prefix("c=").ok_or("expected c=<value>")?;
    let c: f64 = v.parse().map_err(|e| format!("{e}"))?;
    if c > 0.0 && c.is_finite() {
        Ok(c)
    } else {
        Err("c must be positive".into())
    }
}

enum Outcome {
    Pass,
    CheckFailed,
}

struct Output {
    json: Value,
    text: String,
    outcome: Outcome,
}

impl Output {
    fn pass(json: Value, text: String) -> Self {
        Output {
            json,
            text,
            outcome: Outcome::Pass,
        }
    }

    fn check(ok: bool, json: Value, text: String) -> Self {
        Output {
            json,
            text,
            outcome: if ok { Outcome::Pass } else { Outcome::CheckFailed },
        }
    }
}

/// `key  value` lines with the values aligned.
fn table(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0) + 2;
    rows.iter().fold(String::new(), |mut s, (k, v)| {
        let _ = writeln!(s, "{k:<width$}{v}");
        s
    })
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn cycle_rows(c: &CycleCertificate) -> [(&'static str, String); 2] {
    [("cycle", join(&c.vertices)), ("edges", join(&c.edge_ids))]
}

fn read_instance(cli: &Cli) -> Result<Instance> {
    let text = match &cli.input {
        Some(p) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    Ok(parse_instance(&text)?)
}

fn params(cli: &Cli, which: Which) -> PipelineParams {
    match (cli.scale, which) {
        (Some(c), _) => PipelineParams::scaled(c),
        (None, Which::Main) => PipelineParams::main_theorem(),
        (None, Which::NPlusK) => PipelineParams::n_plus_k(),
    }
}

fn report_text(r: &PipelineReport) -> String {
    let s = &r.sizes;
    let mut rows = vec![
        ("pipeline", r.pipeline.clone()),
        ("branch", format!("{:?}", r.branch)),
        ("status", format!("{:?}", r.status)),
        ("seed", r.seed.to_string()),
        ("n", r.n.to_string()),
        ("k", r.k.to_string()),
        ("colors", r.num_colors.to_string()),
    ];
    let opt = |x: Option<usize>| x.map(|v| v.to_string());
    for (name, v) in [
        ("hitting_set", opt(s.hitting_set)),
        ("star_count", opt(s.star_count)),
        ("representative", opt(s.representative_edges)),
        ("contracted", opt(s.contracted_order)),
        ("contracted_girth", opt(s.contracted_girth)),
        ("dominated", opt(s.dominated)),
        ("h_size", opt(s.h_size)),
        ("deleted", opt(s.deleted)),
        ("bad_colors", opt(s.bad_colors)),
    ] {
        if let Some(v) = v {
            rows.push((name, v));
        }
    }
    if let (Some(c), Some(b)) = (&r.certificate, r.bound) {
        rows.push(("length", c.length.to_string()));
        rows.push(("bound", b.to_string()));
        rows.extend(cycle_rows(c));
    }
    rows.push(("n/k", format!("{:.3}", r.theorem_bound)));
    rows.push(("ceil(n/k)", r.conjecture_bound.to_string()));
    if let Some(d) = &r.detail {
        rows.push(("detail", d.clone()));
    }
    table(&rows)
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Gen {
            family,
            n,
            k,
            steps,
            colors,
            spec_out,
        } => {
            let (n, k) = (*n, *k);
            let steps = steps.clone().unwrap_or_else(|| (1..=k).collect());
            let family = match family {
                FamilyArg::Circulant => Family::Circulant { n, steps },
                FamilyArg::StarCirculant => Family::StarCirculant { n, steps },
                FamilyArg::RandomMinOutdeg => Family::RandomMinOutdeg { n, k },
                FamilyArg::StarRandomMinOutdeg => Family::StarRandomMinOutdeg { n, k },
                FamilyArg::RandomColored => Family::RandomColored {
                    n,
                    colors: colors.unwrap_or(n),
                    class_size: k,
                },
            };
            let spec = GenSpec::new(family, cli.seed);
            let instance = spec.generate()?;
            if let Some(path) = spec_out {
                std::fs::write(path, spec.to_json())?;
            }
            let text = instance.to_text();
            Ok(Output::pass(json!({ "spec": spec, "instance": text }), text))
        }
        Command::Girth => {
            let (girth, cert) = match read_instance(cli)? {
                Instance::Colored(g) => undirected_girth(&g).unzip(),
                Instance::Directed(d) => directed_girth(&d).unzip(),
            };
            let mut rows = vec![("girth", girth.map_or("none".into(), |g| g.to_string()))];
            if let Some(c) = &cert {
                rows.extend(cycle_rows(c));
            }
            Ok(Output::pass(json!({ "girth": girth, "certificate": cert }), table(&rows)))
        }
        Command::DirectedGirth => {
            let Instance::Directed(d) = read_instance(cli)? else {
                bail!("directed-girth needs a digraph (dg) file");
            };
            let (girth, cert) = directed_girth(&d).unzip();
            let mut rows = vec![("directed_girth", girth.map_or("none".into(), |g| g.to_string()))];
            if let Some(c) = &cert {
                rows.extend(cycle_rows(c));
            }
            Ok(Output::pass(json!({ "directed_girth": girth, "certificate": cert }), table(&rows)))
        }
        Command::RainbowGirth {
            max_len,
            budget,
            brute_force,
        } => {
            let g = match read_instance(cli)? {
                Instance::Colored(g) => g,
                Instance::Directed(_) => bail!("rainbow-girth needs an edge-colored (ecg) file"),
            };
            if *brute_force {
                let girth = brute_force_rainbow_girth(&g)?;
                let rows = [("rainbow_girth", girth.map_or("none".into(), |x| x.to_string()))];
                return Ok(Output::pass(json!({ "rainbow_girth": girth, "method": "brute_force" }), table(&rows)));
            }
            let limits = SearchLimits::new(*max_len, *budget)?;
            match rainbow_girth_exact(&g, limits) {
                Ok(found) => {
                    let (girth, cert) = found.unzip();
                    let mut rows = vec![("rainbow_girth", girth.map_or("none".into(), |x| x.to_string()))];
                    if let Some(c) = &cert {
                        rows.extend(cycle_rows(c));
                    }
                    let json = json!({ "rainbow_girth": girth, "certificate": cert, "max_len": limits.max_len });
                    Ok(Output::pass(json, table(&rows)))
                }
                Err(SearchError::BudgetExceeded { best, nodes }) => {
                    let mut rows = vec![
                        ("rainbow_girth", "unknown (budget exceeded)".to_string()),
                        ("nodes", nodes.to_string()),
                    ];
                    if let Some(c) = &best {
                        rows.push(("best_length", c.length.to_string()));
                        rows.extend(cycle_rows(c));
                    }
                    let json = json!({ "rainbow_girth": null, "budget_exceeded": true, "nodes": nodes, "best": best });
                    Ok(Output::check(false, json, table(&rows)))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Pipeline {
            k,
            which,
            class_size,
            threshold,
            retry_cap,
        } => {
            let g = match read_instance(cli)? {
                Instance::Colored(g) => g,
                Instance::Directed(_) => bail!("pipeline needs an edge-colored (ecg) file"),
            };
            let mut p = params(cli, *which);
            p.class_size = class_size.or(p.class_size);
            p.domination_threshold = threshold.or(p.domination_threshold);
            p.retry_cap = retry_cap.unwrap_or(p.retry_cap);
            let r = match which {
                Which::Main => pipeline_main(&g, *k, &p, cli.seed),
                Which::NPlusK => pipeline_n_plus_k(&g, *k, &p, cli.seed),
            };
            let ok = r.is_ok() && r.is_sound(&g);
            Ok(Output::check(ok, serde_json::to_value(&r)?, report_text(&r)))
        }
        Command::Bounds { n, k } => {
            let t = bound_table(*n, *k)?;
            Ok(Output::pass(serde_json::to_value(&t)?, t.to_text()))
        }
        Command::Lemmas {
            lo,
            hi,
            variance,
            c,
            samples,
        } => {
            if let Some(kr) = variance {
                let v = variance_bound_check(kr[0], kr[1], *c, *samples)?;
                let rows = [
                    ("k", v.k.to_string()),
                    ("r", v.r.to_string()),
                    ("c", v.c.to_string()),
                    ("max_ratio", format!("{:.6}", v.max_ratio)),
                    ("argmax", format!("{:.9}", v.argmax)),
                    ("ratio_at_x", format!("{:.6}", v.ratio_at_x)),
                    ("pass", v.pass.to_string()),
                ];
                return Ok(Output::check(v.pass, serde_json::to_value(&v)?, table(&rows)));
            }
            let report = check_scalar_lemmas(*lo, *hi)?;
            let rows: Vec<(&str, String)> = report
                .lemmas
                .iter()
                .map(|l| {
                    let verdict = match l.first_failure {
                        None if l.passed => "pass".to_string(),
                        None => "fail (exact check)".to_string(),
                        Some(k) => format!("fail at k = {k}"),
                    };
                    (l.statement.as_str(), verdict)
                })
                .collect();
            Ok(Output::check(report.all_pass, serde_json::to_value(&report)?, table(&rows)))
        }
        Command::Verify { config } => {
            let mut cfg = CampaignConfig::load(config)?;
            if cli.out.is_some() {
                cfg.output = None;
            }
            let (records, skipped) = run_trials(&cfg)?;
            let summary = summarize(&records, skipped);
            let mut jsonl = Vec::new();
            write_records(&records, &mut jsonl)?;
            if let Some(path) = cfg.output.as_ref().or(cli.out.as_ref()) {
                std::fs::write(path, &jsonl)?;
            }
            let mut rows = vec![
                ("trials", summary.trials.to_string()),
                ("passed", summary.passed.to_string()),
                ("failed", summary.failed.to_string()),
                ("budget_exceeded", summary.budget_exceeded.to_string()),
                ("skipped", summary.skipped.to_string()),
            ];
            let names: Vec<String> = summary
                .checks
                .iter()
                .map(|(name, (p, f))| format!("{name}: {p} pass, {f} fail"))
                .collect();
            rows.extend(names.into_iter().map(|s| ("check", s)));
            if !summary.failures.is_empty() {
                rows.push(("failing", join(&summary.failures)));
            }
            Ok(Output::check(summary.all_passed(), serde_json::to_value(&summary)?, table(&rows)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let body = if cli.json {
        format!("{}\n", out.json)
    } else {
        out.text
    };
    // `verify` writes its records to --out itself; everything else goes there
    let to_file = !matches!(cli.command, Command::Verify { .. });
    let written = match (&cli.out, to_file) {
        (Some(path), true) => std::fs::write(path, body).map_err(|e| anyhow!("writing {}: {e}", path.display())),
        _ => std::io::stdout().write_all(body.as_bytes()).map_err(Into::into),
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match out.outcome {
        Outcome::Pass => ExitCode::SUCCESS,
        Outcome::CheckFailed => ExitCode::from(1),
    }
}
