use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use pancake::exact::{
    bfs_distances_threaded, candidate_set, greedy_lb_burnt_limited, greedy_lb_unburnt,
    DistanceSlices, Solver, SolverConfig,
};
use pancake::experiments::{average_flips, run_algorithm, with_threads, Algorithm, SampleMode};
use pancake::trace::parse_flip_list;
use pancake::{
    lower_bound_potential, potential, unrank, AnyStack, FlipTrace, PancakeError, Variant,
};

#[derive(Parser)]
#[command(
    name = "pancake",
    version,
    about = "Sort stacks of burnt and unburnt pancakes"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for searches and sampling.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Burnt,
    Unburnt,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Burnt => Variant::Burnt,
            VariantArg::Unburnt => Variant::Unburnt,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    BurntAvg,
    UnburntRand,
    Greedy,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::BurntAvg => Algorithm::BurntAverage,
            AlgoArg::UnburntRand => Algorithm::UnburntRandomized,
            AlgoArg::Greedy => Algorithm::GreedyLookahead,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sort a stack and print the flip sequence.
    Sort {
        #[arg(long, value_enum)]
        algo: AlgoArg,
        /// Stack, top first, e.g. "+3 -1 +2" or -I5.
        #[arg(long, allow_hyphen_values = true)]
        stack: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also print every intermediate stack.
        #[arg(long)]
        states: bool,
    },
    /// Lower bounds on the flips needed to sort a stack.
    Bound {
        #[arg(long, allow_hyphen_values = true)]
        stack: String,
        /// Search nodes for the greedy bound.
        #[arg(long, default_value_t = 100_000)]
        greedy_nodes: u64,
    },
    /// Exact flip distance by A*.
    Exact {
        #[arg(long, allow_hyphen_values = true)]
        stack: String,
        /// Largest reduced stack answered from a precomputed table.
        #[arg(long, default_value_t = 7)]
        table_size: usize,
        #[arg(long, default_value_t = 1_000_000)]
        node_limit: u64,
    },
    /// Distances of every stack of a size, by breadth-first search.
    Bfs {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        variant: VariantArg,
        /// Write the distance table to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stacks of size n that may need at least m flips.
    Candidates {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u8,
        #[arg(long, value_enum)]
        variant: VariantArg,
        /// Solve every candidate and report the distances found.
        #[arg(long)]
        solve: bool,
    },
    /// Average flips of a sorter over sampled or all stacks.
    Bench {
        #[arg(long, value_enum)]
        algo: AlgoArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run every stack of size n instead of samples.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Check that a flip sequence sorts a stack.
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        stack: String,
        /// Comma separated flip sizes.
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        flips: String,
    },
}

/// Rendered output and the exit status that goes with it.
struct Output {
    text: String,
    status: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, status: 0 }
    }
}

type CmdResult = Result<Output, PancakeError>;

fn render(format: Format, text: String, csv: String, json: serde_json::Value) -> String {
    match format {
        Format::Text => text,
        Format::Csv => csv,
        Format::Json => format!("{json:#}\n"),
    }
}

fn parse_stack(text: &str) -> Result<AnyStack, PancakeError> {
    text.parse()
}

fn join(flips: &[usize], sep: &str) -> String {
    flips
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn sort(format: Format, algo: Algorithm, stack: &str, seed: u64, states: bool) -> CmdResult {
    let stack = parse_stack(stack)?;
    let out = run_algorithm(algo, &stack, pancake::experiments::sample_rng(seed, 0))?;
    let flips = &out.trace.flips;
    let mut text = format!("stack: {stack}\n");
    if states {
        let all = out.trace.states()?;
        for (s, k) in all.iter().zip(flips) {
            text += &format!("  {s}  flip {k}\n");
        }
        text += &format!("  {}\n", all[all.len() - 1]);
    }
    let shown = if flips.is_empty() {
        "none".into()
    } else {
        join(flips, " ")
    };
    text += &format!("trace: {shown}\nflips: {}\n", out.flips_used);
    let csv = format!(
        "algo,stack,seed,flips_used,trace\n{},{stack},{seed},{},{}\n",
        algo.name(),
        out.flips_used,
        join(flips, " ")
    );
    let mut json = json!({
        "algo": algo.name(),
        "stack": stack.to_string(),
        "seed": seed,
        "trace": flips,
        "flips_used": out.flips_used,
        "iterations": out.iterations,
    });
    if states {
        json["states"] = out.trace.states()?.iter().map(|s| s.to_string()).collect();
    }
    Ok(Output::ok(render(format, text, csv, json)))
}

fn bound(format: Format, stack: &str, greedy_nodes: u64) -> CmdResult {
    let stack = parse_stack(stack)?;
    let (pot, lb_pot, greedy) = match &stack {
        AnyStack::Burnt(s) => (
            Some(potential(s).value_thirds),
            Some(lower_bound_potential(s)),
            greedy_lb_burnt_limited(s, greedy_nodes),
        ),
        AnyStack::Unburnt(s) => (None, None, greedy_lb_unburnt(s)),
        AnyStack::Mixed(_) => {
            return Err(PancakeError::InvalidArgument(
                "bounds need a burnt or unburnt stack".into(),
            ))
        }
    };
    let best = lb_pot.unwrap_or(0).max(greedy.bound);
    let mut text = format!("bound: {best}\n");
    if let (Some(v), Some(lb)) = (pot, lb_pot) {
        text += &format!("potential: {v}/3, bound {lb}\n");
    }
    text += &format!(
        "greedy: {}{}\n",
        greedy.bound,
        if greedy.exact { " (exact)" } else { "" }
    );
    let opt = |x: Option<i64>| x.map(|v| v.to_string()).unwrap_or_default();
    let csv = format!(
        "stack,bound,potential_thirds,potential_bound,greedy_bound,greedy_exact\n{stack},{best},{},{},{},{}\n",
        opt(pot),
        opt(lb_pot.map(i64::from)),
        greedy.bound,
        greedy.exact
    );
    let json = json!({
        "stack": stack.to_string(),
        "bound": best,
        "potential_thirds": pot,
        "potential_bound": lb_pot,
        "greedy_bound": greedy.bound,
        "greedy_exact": greedy.exact,
        "greedy_truncated": greedy.truncated,
    });
    Ok(Output::ok(render(format, text, csv, json)))
}

fn exact(format: Format, stack: &str, table_size: usize, node_limit: u64) -> CmdResult {
    let stack = parse_stack(stack)?;
    let solver = Solver::new(SolverConfig {
        endgame_table_size: table_size,
        node_limit,
        ..SolverConfig::default()
    })?;
    let d = solver.distance(&stack)?;
    let text = format!("stack: {stack}\ndistance: {d}\n");
    let csv = format!("stack,distance\n{stack},{d}\n");
    let json = json!({ "stack": stack.to_string(), "distance": d });
    Ok(Output::ok(render(format, text, csv, json)))
}

fn bfs(
    format: Format,
    n: usize,
    variant: Variant,
    out: Option<PathBuf>,
    threads: usize,
) -> CmdResult {
    let table = bfs_distances_threaded(n, variant, threads)?;
    if let Some(path) = &out {
        let io =
            |e: std::io::Error| PancakeError::InvalidArgument(format!("{}: {e}", path.display()));
        let mut w = BufWriter::new(File::create(path).map_err(io)?);
        table.write_to(&mut w).map_err(io)?;
        w.flush().map_err(io)?;
    }
    let rows: Vec<(u8, u64)> = (0..=table.max_distance())
        .map(|d| (d, table.count_at(d)))
        .collect();
    let mut text = format!(
        "{} n={n}: {} stacks, max distance {}\n",
        variant.name(),
        table.total(),
        table.max_distance()
    );
    for (d, c) in &rows {
        text += &format!("{d:>4} {c:>12}\n");
    }
    let json = json!({
        "n": n,
        "variant": variant.name(),
        "states": table.total(),
        "max_distance": table.max_distance(),
        "histogram": rows.iter().map(|&(d, c)| json!({"distance": d, "count": c})).collect::<Vec<_>>(),
    });
    Ok(Output::ok(render(
        format,
        text,
        table.histogram_csv(),
        json,
    )))
}

fn candidates(
    format: Format,
    n: usize,
    m: u8,
    variant: Variant,
    solve: bool,
    threads: usize,
) -> CmdResult {
    if n < 2 {
        return Err(PancakeError::InvalidArgument(
            "candidate sets need n >= 2".into(),
        ));
    }
    let prev = bfs_distances_threaded(n - 1, variant, threads)?;
    let slices = DistanceSlices::from_table(&prev, m.saturating_sub(2));
    drop(prev);
    let set = candidate_set(&slices, m)?;
    let name = variant.name();
    let mut text = format!(
        "{name} n={n}: {} candidates for distance >= {m}\n",
        set.len()
    );
    let mut csv = format!("n,variant,m,candidates\n{n},{name},{m},{}\n", set.len());
    let mut json = json!({ "n": n, "variant": name, "m": m, "candidates": set.len() });
    if solve {
        use rayon::prelude::*;
        let solver = Solver::new(SolverConfig::default())?;
        let dists = set
            .stacks
            .par_iter()
            .map(|&r| solver.distance(&unrank(r, n, variant)?))
            .collect::<Result<Vec<u32>, _>>()?;
        let mut hist = std::collections::BTreeMap::<u32, u64>::new();
        for d in dists {
            *hist.entry(d).or_default() += 1;
        }
        csv = "n,variant,distance,count\n".to_string();
        for (d, c) in &hist {
            text += &format!("{d:>4} {c:>12}\n");
            csv += &format!("{n},{name},{d},{c}\n");
        }
        json["histogram"] = hist
            .iter()
            .map(|(d, c)| json!({"distance": d, "count": c}))
            .collect();
    }
    Ok(Output::ok(render(format, text, csv, json)))
}

fn bench(
    format: Format,
    algo: Algorithm,
    n: usize,
    samples: u64,
    seed: u64,
    exhaustive: bool,
) -> CmdResult {
    let mode = if exhaustive {
        SampleMode::Exhaustive
    } else {
        SampleMode::Sampled(samples)
    };
    let r = average_flips(algo, n, mode, seed)?;
    let csv = format!(
        "{}\n{}\n",
        pancake::experiments::ExperimentReport::CSV_HEADER,
        r.csv_row()
    );
    let json = serde_json::to_value(&r).map_err(|e| PancakeError::Internal(e.to_string()))?;
    Ok(Output::ok(render(format, r.to_string(), csv, json)))
}

fn verify(format: Format, stack: &str, flips: &str) -> CmdResult {
    let stack = parse_stack(stack)?;
    let flips = parse_flip_list(flips)?;
    let trace = FlipTrace::new(stack.clone(), flips);
    let end = trace.replay()?;
    let sorted = end.is_sorted();
    let text = format!("final: {end}\nsorted: {sorted}\n");
    let csv = format!(
        "stack,flips,final,sorted\n{stack},{},{end},{sorted}\n",
        join(&trace.flips, " ")
    );
    let json = json!({
        "stack": stack.to_string(),
        "flips": trace.flips,
        "final": end.to_string(),
        "sorted": sorted,
    });
    Ok(Output {
        text: render(format, text, csv, json),
        status: if sorted { 0 } else { 1 },
    })
}

fn run(cli: Cli) -> CmdResult {
    let f = cli.format;
    match cli.command {
        Command::Sort {
            algo,
            stack,
            seed,
            states,
        } => sort(f, algo.into(), &stack, seed, states),
        Command::Bound {
            stack,
            greedy_nodes,
        } => bound(f, &stack, greedy_nodes),
        Command::Exact {
            stack,
            table_size,
            node_limit,
        } => exact(f, &stack, table_size, node_limit),
        Command::Bfs { n, variant, out } => bfs(f, n, variant.into(), out, cli.threads),
        Command::Candidates {
            n,
            m,
            variant,
            solve,
        } => candidates(f, n, m, variant.into(), solve, cli.threads),
        Command::Bench {
            algo,
            n,
            samples,
            seed,
            exhaustive,
        } => bench(f, algo.into(), n, samples, seed, exhaustive),
        Command::Verify { stack, flips } => verify(f, &stack, &flips),
    }
}

fn exit_code(e: &PancakeError) -> u8 {
    match e {
        PancakeError::ResourceLimit(_) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads.max(1);
    let result = with_threads(threads, move || run(cli)).and_then(|r| r);
    match result {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
