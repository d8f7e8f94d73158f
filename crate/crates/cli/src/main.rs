//! `qcprelift`: build, analyse, search and simulate pre-lifted QC-LDPC codes.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use qcprelift::conditions::{self, condition_set, grid_perms};
use qcprelift::girth::spec_girth;
use qcprelift::search::{ShiftSearchOptions, ShiftSearchReport};
use qcprelift::sim::parse_snr_range;
use qcprelift::*;

/// Seed used by every randomized command when `--seed` is not given.
const DEFAULT_SEED: u64 = 1;

#[derive(Parser)]
#[command(name = "qcprelift", version, about = "Pre-lifted quasi-cyclic LDPC code toolkit")]
struct Cli {
    /// Worker threads (default: all cores). 1 is the determinism reference.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Expand a QC spec and optionally export it as alist.
    Lift {
        input: String,
        /// Write the expanded matrix in alist format (`-` for stdout).
        #[arg(long)]
        alist: Option<String>,
    },
    /// Girth of a spec, pre-lift grid, base matrix or alist matrix.
    Girth { input: String },
    /// Fixed-column conditions of a 3×4 spec.
    Conditions {
        input: String,
        #[arg(long, default_value_t = 8)]
        target: usize,
        /// Use the condition set of the masked base.
        #[arg(long)]
        masked: bool,
    },
    /// Permanent upper bound on the minimum distance.
    Bound { input: String },
    /// Minimum distance of a spec or alist matrix.
    Mindist {
        input: String,
        #[arg(long, value_enum, default_value_t = Mode::Search)]
        mode: Mode,
        /// Information sets tried by the search.
        #[arg(long, default_value_t = 2000)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Enumeration work for a certified lower bound (0 skips it).
        #[arg(long, default_value_t = 0)]
        lower_bound_work: u64,
    },
    /// Enumerate and rank the m-covers of a base matrix.
    Sieve {
        input: String,
        #[arg(long)]
        m: usize,
        /// Write the class table as CSV (`-` for stdout).
        #[arg(long)]
        csv: Option<String>,
    },
    /// Search circulant shifts of a pre-lift grid for a target girth.
    Shiftsearch {
        input: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        girth: usize,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Solutions kept and ranked by distance.
        #[arg(long, default_value_t = 8)]
        keep: usize,
        /// Information sets per kept solution (0 skips ranking).
        #[arg(long, default_value_t = 200)]
        distance_iterations: u64,
        /// Write the best spec here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// BPSK/AWGN sum-product simulation.
    Simulate {
        input: String,
        /// Eb/N0 in dB: `a:b:step`, a single value, or `inf`.
        #[arg(long)]
        ebn0: String,
        #[arg(long, default_value_t = 100_000)]
        max_frames: u64,
        #[arg(long, default_value_t = 100)]
        target_fe: u64,
        #[arg(long, default_value_t = 100)]
        max_iter: usize,
        #[arg(long, default_value_t = qcprelift::sim::DEFAULT_CLIP)]
        clip: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// CSV destination (default stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Canonical form with identity first block row and column.
    Canon { input: String },
    /// Named codes.
    Corpus {
        #[command(subcommand)]
        action: CorpusCmd,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    List,
    Build {
        name: String,
        #[arg(long, value_enum, default_value_t = Format::Qc)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Search,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Qc,
    Alist,
}

enum Input {
    Spec(QcLiftSpec),
    Grid(PreLiftGrid),
    Base(BaseMatrix),
    Matrix(ParityCheck),
}

fn read_text(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

/// Detects the format from the first non-comment line.
fn load(path: &str) -> Result<Input> {
    let text = read_text(path)?;
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or_else(|| anyhow!("{path}: empty input"))?;
    let input = match first.split_whitespace().next() {
        Some("qc") => Input::Spec(QcLiftSpec::parse(&text)?),
        Some("prelift") => Input::Grid(PreLiftGrid::parse(&text)?),
        Some("base") => Input::Base(BaseMatrix::parse(&text)?),
        _ => Input::Matrix(ParityCheck::from_alist(&text).with_context(|| format!("{path}: not a qc, prelift, base or alist file"))?),
    };
    Ok(input)
}

fn load_matrix(path: &str) -> Result<(ParityCheck, Option<usize>)> {
    match load(path)? {
        Input::Spec(s) => Ok((s.expand()?, Some(s.r()))),
        Input::Matrix(h) => Ok((h, None)),
        _ => bail!("{path}: expected a qc spec or alist matrix"),
    }
}

fn load_spec(path: &str) -> Result<QcLiftSpec> {
    match load(path)? {
        Input::Spec(s) => Ok(s),
        _ => bail!("{path}: expected a qc spec"),
    }
}

fn load_grid(path: &str) -> Result<PreLiftGrid> {
    match load(path)? {
        Input::Grid(g) => Ok(g),
        Input::Base(b) => Ok(PreLiftGrid::identity(&b, 1)),
        Input::Spec(s) => Ok(s.grid()),
        Input::Matrix(_) => bail!("{path}: expected a prelift grid, base or qc spec"),
    }
}

fn load_base(path: &str) -> Result<BaseMatrix> {
    match load(path)? {
        Input::Base(b) => Ok(b),
        Input::Grid(g) => Ok(g.matrix()),
        _ => bail!("{path}: expected a base matrix"),
    }
}

fn write_to(dest: Option<&str>, text: &str) -> Result<()> {
    match dest {
        None | Some("-") => io::stdout().write_all(text.as_bytes())?,
        Some(p) => fs::write(p, text).with_context(|| format!("writing {p}"))?,
    }
    Ok(())
}

fn cmd_lift(input: &str, alist: Option<&str>) -> Result<()> {
    let spec = load_spec(input)?;
    let h = spec.expand()?;
    let rank = gf2_rank(&h);
    if alist == Some("-") {
        return write_to(None, &h.to_alist());
    }
    println!("rows: {}\ncols: {}\nrank: {rank}\nk: {}", h.rows(), h.cols(), h.cols() - rank);
    if let Some(p) = alist {
        write_to(Some(p), &h.to_alist())?;
    }
    Ok(())
}

fn cmd_girth(input: &str) -> Result<()> {
    let g = match load(input)? {
        Input::Spec(s) => spec_girth(&s, usize::MAX)?,
        Input::Grid(g) => TannerGraph::from_base(&g.matrix())?.girth(),
        Input::Base(b) => TannerGraph::from_base(&b)?.girth(),
        Input::Matrix(h) => compute_girth(&h)?,
    };
    println!("{g}");
    Ok(())
}

fn cmd_conditions(input: &str, target: usize, masked: bool) -> Result<()> {
    let spec = load_spec(input)?.canonicalize()?;
    let exprs = condition_set(target, masked)?;
    let pruned = prune_conditions(&grid_perms(&spec.grid())?, &exprs)?;
    let results = check_conditions(&conditions::spec_entries(&spec)?, &exprs)?;
    println!("conditions: {}", exprs.len());
    println!("after pruning: {}", pruned.len());
    for (e, ok) in &results {
        let tag = if pruned.contains(e) { "" } else { " (pruned)" };
        println!("{} {e}{tag}", if *ok { "pass" } else { "FAIL" });
    }
    let failed = results.iter().filter(|(_, ok)| !ok).count();
    if failed == 0 {
        println!("all satisfied: girth >= {target}");
    } else {
        println!("{failed} failed: girth >= {target} not guaranteed");
    }
    Ok(())
}

fn cmd_bound(input: &str) -> Result<()> {
    let (matrix, spec) = match load(input)? {
        Input::Base(b) => (b, None),
        Input::Grid(g) => (g.matrix(), None),
        Input::Spec(s) => (s.grid().matrix(), Some(s)),
        Input::Matrix(_) => bail!("{input}: the bound needs a base, grid or spec"),
    };
    println!("{}", qc_distance_bound(&matrix)?);
    if let Some(b) = spec.as_ref().and_then(commuting_grid_bound) {
        println!("commuting grid bound: {b}");
    }
    Ok(())
}

fn cmd_mindist(input: &str, mode: Mode, budget: u64, seed: u64, lower_bound_work: u64) -> Result<()> {
    let (h, r) = load_matrix(input)?;
    let opts = SearchOptions {
        iterations: budget,
        seed,
        lower_bound_work,
        qc_block: r,
        ..Default::default()
    };
    let method = match mode {
        Mode::Exhaustive => Method::Exhaustive,
        Mode::Search => Method::Search,
    };
    print!("{}", min_distance(&h, method, &opts)?.to_key_values());
    Ok(())
}

fn cmd_sieve(input: &str, m: usize, csv: Option<&str>) -> Result<()> {
    let base = load_base(input)?;
    let rep = sieve(&base, m)?;
    println!("{}", rep.summary());
    println!("connected: {}\nfloor: {}\nbest: {}", rep.connected(), rep.floor, rep.best());
    for c in rep.survivors() {
        let b = c.bound.as_ref().map_or(0, |b| b.value);
        println!("survivor class {}: bound {b}, {} members, {}", c.id, c.members, search::grid_label(&c.representative));
    }
    if let Some(dest) = csv {
        write_to(Some(dest), &rep.to_csv())?;
    }
    Ok(())
}

fn print_shift_report(rep: &ShiftSearchReport) {
    println!("r: {}\ntarget girth: {}\nfree shifts: {}", rep.r, rep.target_girth, rep.free);
    match rep.space {
        Some(s) => println!("space: {s}"),
        None => println!("space: overflow"),
    }
    println!(
        "mode: {}\nevaluated: {}\nsolutions: {}",
        if rep.exhaustive { "exhaustive" } else { "sampled" },
        rep.evaluated,
        rep.solutions
    );
    for (i, c) in rep.best.iter().enumerate() {
        let d = c.d_upper.map_or("-".to_string(), |d| d.to_string());
        println!("candidate {}: girth {}, d_upper {d}", i + 1, c.girth);
    }
}

fn cmd_shiftsearch(input: &str, r: usize, girth: usize, opts: ShiftSearchOptions, out: Option<PathBuf>) -> Result<()> {
    let grid = load_grid(input)?;
    let rep = shift_search(&grid, r, girth, &opts)?;
    print_shift_report(&rep);
    let Some(best) = rep.best.first() else {
        bail!("no shift assignment reaches girth {girth} at r = {r} within the budget");
    };
    match out {
        Some(p) => fs::write(&p, best.spec.to_text()).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{}", best.spec.to_text()),
    }
    Ok(())
}

fn cmd_simulate(input: &str, ebn0: &str, opts: SimOptions, out: Option<PathBuf>) -> Result<()> {
    let (h, _) = load_matrix(input)?;
    let points = parse_snr_range(ebn0)?;
    let results = simulate(&h, &points, &opts)?;
    let mut csv = format!("{}\n", SimResult::CSV_HEADER);
    for r in &results {
        csv.push_str(&r.to_csv_row());
        csv.push('\n');
    }
    match out {
        Some(p) => fs::write(&p, csv).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn cmd_corpus(action: CorpusCmd) -> Result<()> {
    match action {
        CorpusCmd::List => {
            for e in corpus::entries() {
                let k = e.k.map_or("?".to_string(), |k| k.to_string());
                println!("{:<22} [{}, {k}]  {}", e.name, e.n, e.summary);
            }
            for (name, what) in corpus::FAMILIES {
                println!("{name:<22} {what}");
            }
        }
        CorpusCmd::Build { name, format } => {
            let spec = corpus::build(&name)?;
            match format {
                Format::Qc => print!("{}", spec.to_text()),
                Format::Alist => print!("{}", spec.expand()?.to_alist()),
            }
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring worker threads")?;
    }
    match cli.cmd {
        Cmd::Lift { input, alist } => cmd_lift(&input, alist.as_deref()),
        Cmd::Girth { input } => cmd_girth(&input),
        Cmd::Conditions { input, target, masked } => cmd_conditions(&input, target, masked),
        Cmd::Bound { input } => cmd_bound(&input),
        Cmd::Mindist {
            input,
            mode,
            budget,
            seed,
            lower_bound_work,
        } => cmd_mindist(&input, mode, budget, seed, lower_bound_work),
        Cmd::Sieve { input, m, csv } => cmd_sieve(&input, m, csv.as_deref()),
        Cmd::Shiftsearch {
            input,
            r,
            girth,
            budget,
            seed,
            keep,
            distance_iterations,
            out,
        } => cmd_shiftsearch(
            &input,
            r,
            girth,
            ShiftSearchOptions {
                budget,
                seed,
                keep,
                distance_iterations,
            },
            out,
        ),
        Cmd::Simulate {
            input,
            ebn0,
            max_frames,
            target_fe,
            max_iter,
            clip,
            seed,
            out,
        } => cmd_simulate(
            &input,
            &ebn0,
            SimOptions {
                max_frames,
                target_frame_errors: target_fe,
                max_iter,
                clip,
                seed,
                rate: None,
            },
            out,
        ),
        Cmd::Canon { input } => {
            print!("{}", load_spec(&input)?.canonicalize()?.to_text());
            Ok(())
        }
        Cmd::Corpus { action } => cmd_corpus(action),
    }
}
