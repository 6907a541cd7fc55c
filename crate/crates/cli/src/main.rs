use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use politrigon::construct::{best_lower_bound, family_11n11, family_11n9, family_9n6, hexagram};
use politrigon::ds::{refute_target, upper_bound, RefuteError, RefuteOptions, RefuteOutcome};
use politrigon::io::{parse_outcome, parse_scene, render_svg, verify, write_outcome, write_scene, SvgOptions, OUTCOME_HEADER};
use politrigon::search::{optimize_canonical, search_max_sides, CanonOptions, SearchOptions};

/// Unions of triangles whose boundary is a simple polygon with many sides.
#[derive(Parser)]
#[command(name = "politrigon", version)]
struct Cli {
    /// Cap on worker threads for search and refutation.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Certify a scene file and print its report.
    Verify {
        scene: PathBuf,
        /// Print `key=value` lines instead of prose.
        #[arg(long)]
        kv: bool,
    },
    /// Write a generated scene.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
    /// Print the counting upper bound and the best construction for `n`.
    Bound {
        #[arg(long)]
        n: usize,
    },
    /// Exhaustively search the inscribed boundary-word model for `target` sides.
    Refute {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        target: usize,
        /// Node budget.
        #[arg(long)]
        budget: Option<u64>,
        /// Write the per-branch audit log here.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Anneal inscribed configurations for many sides.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Gap pattern: an outcome file, or whitespace/comma separated numbers.
        #[arg(long)]
        template: Option<PathBuf>,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
    /// Improve area over squared side lengths without changing the side count.
    Canon {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
    /// Draw a scene as SVG.
    Render {
        scene: PathBuf,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
        #[arg(long)]
        label_vertices: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Hexagram,
    #[value(name = "9n6")]
    NineN6,
    #[value(name = "11n11")]
    ElevenN11,
    #[value(name = "11n9")]
    ElevenN9,
}

const EXIT_REJECTED: u8 = 2;
const EXIT_BUDGET: u8 = 3;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn template_gaps(path: &Path) -> Result<Vec<f64>> {
    let text = read(path)?;
    if text.starts_with(OUTCOME_HEADER) {
        return Ok(parse_outcome(&text)?.config.gaps);
    }
    let gaps: Result<Vec<f64>, _> = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect();
    let gaps = gaps.context("template must hold positive numbers")?;
    if gaps.is_empty() || gaps.iter().any(|g| !(g.is_finite() && *g > 0.0)) {
        bail!("template must hold positive numbers");
    }
    Ok(gaps)
}

fn run(cli: Cli, buf: &mut String) -> Result<u8> {
    match cli.cmd {
        Cmd::Verify { scene, kv } => {
            let s = parse_scene(&read(&scene)?)?;
            let r = verify(&s);
            buf.push_str(&if kv { r.to_key_values() } else { r.to_human() });
            Ok(if r.is_simple() { 0 } else { EXIT_REJECTED })
        }
        Cmd::Construct { family, n, out } => {
            let s = match family {
                Family::Hexagram => {
                    if n != 2 {
                        bail!("the hexagram has n = 2");
                    }
                    hexagram()
                }
                Family::NineN6 => family_9n6(n)?,
                Family::ElevenN11 => family_11n11(n)?,
                Family::ElevenN9 => family_11n9(n)?,
            };
            write(&out, &write_scene(&s))?;
            let r = verify(&s);
            buf.push_str(&r.to_human());
            Ok(0)
        }
        Cmd::Bound { n } => {
            if n == 0 {
                bail!("n must be positive");
            }
            writeln!(buf, "upper_bound={}", upper_bound(n))?;
            let (lb, how) = best_lower_bound(n).expect("n >= 1");
            writeln!(buf, "lower_bound={lb}")?;
            writeln!(buf, "lower_bound_source={how}")?;
            writeln!(buf, "family_9n6={}", 9 * n - 6)?;
            Ok(0)
        }
        Cmd::Refute { n, target, budget, log } => {
            let mut opts = RefuteOptions::for_target(n, target);
            opts.threads = cli.threads;
            if let Some(b) = budget {
                opts.budget = b;
            }
            match refute_target(n, target, &opts) {
                Ok(report) => {
                    if let Some(path) = &log {
                        write(path, &report.audit_log())?;
                    }
                    match &report.outcome {
                        RefuteOutcome::Refuted => {
                            writeln!(buf, "refuted n={n} target={target} nodes={}", report.nodes)?;
                            Ok(0)
                        }
                        RefuteOutcome::Witness(c) => {
                            writeln!(buf, "witness n={n} target={target} nodes={}", report.nodes)?;
                            writeln!(buf, "{c}")?;
                            Ok(EXIT_REJECTED)
                        }
                    }
                }
                Err(RefuteError::BudgetExceeded(report)) => {
                    if let Some(path) = &log {
                        write(path, &report.audit_log())?;
                    }
                    writeln!(buf, "budget exceeded n={n} target={target} nodes={}", report.nodes)?;
                    Ok(EXIT_BUDGET)
                }
                Err(e) => Err(e.into()),
            }
        }
        Cmd::Search { n, budget, restarts, seed, template, out } => {
            if n == 0 {
                bail!("n must be positive");
            }
            let mut opts = SearchOptions { threads: cli.threads, ..Default::default() };
            if let Some(b) = budget {
                opts.budget = b;
            }
            if let Some(r) = restarts {
                opts.restarts = r;
            }
            if let Some(s) = seed {
                opts.seed = s;
            }
            if let Some(t) = &template {
                opts.template = Some(template_gaps(t)?);
            }
            match search_max_sides(n, &opts) {
                Some(o) => {
                    write(&out, &write_outcome(&o))?;
                    writeln!(buf, "sides={}", o.sides)?;
                    Ok(0)
                }
                None => {
                    writeln!(buf, "no simple configuration found within the budget")?;
                    Ok(EXIT_BUDGET)
                }
            }
        }
        Cmd::Canon { input, budget, out } => {
            let start = parse_outcome(&read(&input)?)?;
            let mut opts = CanonOptions::default();
            if let Some(b) = budget {
                opts.budget = b;
            }
            let r = optimize_canonical(&start, &opts);
            write(&out, &write_outcome(&r.outcome))?;
            writeln!(buf, "sides={}", r.outcome.sides)?;
            writeln!(buf, "canonical_score={:.10}", r.score)?;
            writeln!(buf, "evaluations={}", r.evaluations)?;
            Ok(0)
        }
        Cmd::Render { scene, out, label_vertices } => {
            let s = parse_scene(&read(&scene)?)?;
            write(&out, &render_svg(&s, &SvgOptions { label_vertices, ..Default::default() }))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(t) = cli.threads {
        // only fails if a pool already exists, which cannot happen this early
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    let mut buf = String::new();
    let result = run(cli, &mut buf);
    // a closed stdout (e.g. piped into `head`) is not an error
    let _ = std::io::stdout().write_all(buf.as_bytes());
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
