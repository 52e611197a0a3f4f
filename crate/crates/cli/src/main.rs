use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use listcolor::generate::{gen_random_instance, GenSpec};
use listcolor::graph::parse_graph6;
use listcolor::instance::{
    coloring_from_json, coloring_to_json, emit_instance, parse_instance, parse_instance_relaxed,
};
use listcolor::oracle::{exact_list_color, is_k_choosable, validate_coloring, Budget, DEFAULT_BUDGET};
use listcolor::solver::{solve, SolveError, SolveOptions};
use rayon::prelude::*;
use serde_json::{json, Value};

const OK: u8 = 0;
const FALSE: u8 = 1;
const UNSAT: u8 = 2;
const INVALID: u8 = 3;
const BUDGET: u8 = 4;

#[derive(Parser)]
#[command(name = "listcolor", version, about = "List coloring of graphs drawn with at most two crossings")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Color one or more instance files
    Solve {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// fail instead of falling back to exact search
        #[arg(long)]
        no_fallback: bool,
        /// also write the stats JSON to this file
        #[arg(long)]
        stats: Option<PathBuf>,
        /// worker threads for several files
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// node limit for exact search
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// record a trace of the recursion in the stats
        #[arg(long)]
        trace: bool,
    },
    /// Check a coloring against an instance
    Verify { file: PathBuf, coloring: PathBuf },
    /// Generate a random instance
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        crossings: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 15)]
        palette: usize,
        #[arg(long, default_value_t = 5)]
        list_size: usize,
    },
    /// Decide k-choosability of a graph given in graph6
    Choosable {
        graph6: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        palette: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Color an instance by exact search only
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

struct Outcome {
    code: u8,
    out: Value,
}

fn fail(code: u8, msg: impl ToString) -> Outcome {
    let msg = msg.to_string();
    eprintln!("listcolor: {msg}");
    Outcome { code, out: json!({ "error": msg }) }
}

fn read(path: &Path) -> Result<String, Outcome> {
    fs::read_to_string(path).map_err(|e| fail(INVALID, format!("{}: {e}", path.display())))
}

fn solve_file(path: &Path, opts: &SolveOptions) -> (Outcome, Option<Value>) {
    let text = match read(path) {
        Ok(t) => t,
        Err(o) => return (o, None),
    };
    let inst = match parse_instance(&text) {
        Ok(i) => i,
        Err(e) => return (fail(INVALID, e), None),
    };
    match solve(&inst, opts) {
        Ok((c, stats)) => {
            let stats = serde_json::to_value(&stats).expect("stats serialize");
            (Outcome { code: OK, out: json!({ "colors": coloring_to_json(&c), "stats": stats }) }, Some(stats))
        }
        Err(e) => {
            let code = match e {
                SolveError::Invalid(_) => INVALID,
                SolveError::Unsatisfiable | SolveError::TheoremViolation => UNSAT,
                SolveError::Budget(_) => BUDGET,
                SolveError::PipelineIncomplete(_) => FALSE,
            };
            (fail(code, e), None)
        }
    }
}

fn run(cmd: Cmd) -> Outcome {
    match cmd {
        Cmd::Solve { files, no_fallback, stats, jobs, budget, trace } => {
            let opts = SolveOptions { budget, fallback: !no_fallback, trace };
            let results: Vec<(Outcome, Option<Value>)> = if files.len() == 1 {
                vec![solve_file(&files[0], &opts)]
            } else {
                let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
                    Ok(p) => p,
                    Err(e) => return fail(INVALID, e),
                };
                pool.install(|| files.par_iter().map(|f| solve_file(f, &opts)).collect())
            };
            let code = results.iter().map(|(o, _)| o.code).max().unwrap_or(OK);
            let (out, all_stats) = if files.len() == 1 {
                let (o, s) = results.into_iter().next().unwrap();
                (o.out, s.unwrap_or(Value::Null))
            } else {
                let mut outs = Vec::new();
                let mut st = Vec::new();
                for (f, (o, s)) in files.iter().zip(results) {
                    let name = f.display().to_string();
                    let mut entry = json!({ "file": name, "code": o.code });
                    if let Value::Object(m) = o.out {
                        entry.as_object_mut().unwrap().extend(m);
                    }
                    outs.push(entry);
                    st.push(json!({ "file": name, "stats": s }));
                }
                (Value::Array(outs), Value::Array(st))
            };
            if let Some(p) = stats {
                let text = serde_json::to_string_pretty(&all_stats).unwrap();
                if let Err(e) = fs::write(&p, text) {
                    return fail(INVALID, format!("{}: {e}", p.display()));
                }
            }
            Outcome { code, out }
        }
        Cmd::Verify { file, coloring } => {
            let (text, ctext) = match (read(&file), read(&coloring)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(o), _) | (_, Err(o)) => return o,
            };
            let inst = match parse_instance_relaxed(&text) {
                Ok(i) => i,
                Err(e) => return fail(INVALID, e),
            };
            let c = match coloring_from_json(&ctext) {
                Ok(c) => c,
                Err(e) => return fail(INVALID, e),
            };
            let bad = validate_coloring(inst.graph(), &inst.lists, &c);
            for v in &bad {
                eprintln!("violation: {v}");
            }
            let code = if bad.is_empty() { OK } else { FALSE };
            Outcome { code, out: json!({ "ok": bad.is_empty(), "violations": bad }) }
        }
        Cmd::Gen { n, crossings, seed, palette, list_size } => {
            let spec = GenSpec { n, crossings, seed, palette, list_size };
            match gen_random_instance(&spec) {
                Ok(inst) => {
                    eprintln!("seed {seed}");
                    let out = serde_json::from_str(&emit_instance(&inst)).expect("instance JSON");
                    Outcome { code: OK, out }
                }
                Err(e) => fail(INVALID, e),
            }
        }
        Cmd::Choosable { graph6, k, palette, budget } => {
            let g = match parse_graph6(graph6.trim()) {
                Ok(g) => g,
                Err(e) => return fail(INVALID, e),
            };
            let palette = palette.unwrap_or(k * g.vertex_count().max(1));
            if palette < k {
                return fail(INVALID, format!("palette {palette} is smaller than k = {k}"));
            }
            match is_k_choosable(&g, k, palette, &mut Budget::new(budget)) {
                Ok((yes, witness)) => {
                    let witness = witness.map(|w| {
                        Value::Object(
                            w.iter()
                                .enumerate()
                                .map(|(v, l)| (v.to_string(), json!(l.iter().collect::<Vec<_>>())))
                                .collect(),
                        )
                    });
                    Outcome { code: if yes { OK } else { FALSE }, out: json!({ "choosable": yes, "witness": witness }) }
                }
                Err(e) => fail(BUDGET, e),
            }
        }
        Cmd::Oracle { file, budget } => {
            let text = match read(&file) {
                Ok(t) => t,
                Err(o) => return o,
            };
            let inst = match parse_instance_relaxed(&text) {
                Ok(i) => i,
                Err(e) => return fail(INVALID, e),
            };
            let mut b = Budget::new(budget);
            match exact_list_color(inst.graph(), &inst.lists, &mut b) {
                Ok(Some(c)) => Outcome { code: OK, out: json!({ "colors": coloring_to_json(&c), "nodes": b.used() }) },
                Ok(None) => Outcome { code: UNSAT, out: json!({ "colors": null, "nodes": b.used() }) },
                Err(e) => fail(BUDGET, e),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { INVALID } else { OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let o = run(cli.cmd);
    println!("{}", serde_json::to_string(&o.out).expect("output serializes"));
    ExitCode::from(o.code)
}
