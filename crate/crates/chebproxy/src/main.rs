use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use chebproxy::bench::bench;
use chebproxy::parallel::Pool;
use chebproxy::report::Report;
use chebproxy::tau::{subdivision_degrees, tau_table};
use chebproxy::tensor_file::TensorFile;
use chebproxy::verify;
use chebproxy_core::{
    cheb_proxy_solve_with, parse_expression, IntervalBox, PolyTarget, ProxyProblem, SolveConfig,
    TargetFunction,
};
use clap::{ArgAction, Parser, Subcommand};

/// Real zeros of smooth systems on a box via Chebyshev proxies.
#[derive(Parser)]
#[command(name = "chebproxy", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find all zeros of n functions of x1..xn on a box.
    ///
    /// Exit status is 0 on success, 2 when any root carries a warning flag
    /// and 1 on error.
    Solve {
        /// An expression in x1..xn, or @PATH for a coefficient tensor file
        /// (the tensor lives on the box given by --interval).
        #[arg(long = "func", required = true, action = ArgAction::Append)]
        funcs: Vec<String>,
        /// lo,hi for one dimension; repeat once per dimension.
        #[arg(long = "interval", required = true, action = ArgAction::Append)]
        intervals: Vec<String>,
        /// Largest accepted root box edge before re-solving.
        #[arg(long)]
        max_interval_size: Option<f64>,
        /// Relative tolerance of the approximation (times the largest sample).
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Write the document here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Numerical degree ratio D/n of T_n(alpha x + beta).
    Tau {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        /// Comma-separated degrees.
        #[arg(long = "n", value_delimiter = ',', required = true)]
        ns: Vec<usize>,
    },
    /// Degrees of T_n on the dyadic subintervals of [0, 1], one level per line.
    SubdivDegrees {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        levels: usize,
    },
    /// Time the polynomial solver on seeded random systems.
    Bench {
        #[arg(long)]
        dim: usize,
        /// Comma-separated total degrees.
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Run the acceptance criteria and print a pass/fail matrix.
    Verify {
        /// Comma-separated criterion numbers; all when omitted.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse_from(spread_values(std::env::args()))) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Solve {
            funcs,
            intervals,
            max_interval_size,
            tol,
            threads,
            out,
        } => {
            let bbox = parse_box(&intervals)?;
            let n = bbox.dims();
            ensure!(
                funcs.len() == n,
                "{} functions given for {n} intervals",
                funcs.len()
            );
            let mut cfg = SolveConfig::default();
            if let Some(m) = max_interval_size {
                cfg.max_interval_size = m;
            }
            if let Some(t) = tol {
                cfg.approx_rel_tol = t;
            }
            let functions = funcs
                .iter()
                .map(|f| load_function(f, n, &bbox))
                .collect::<Result<Vec<_>>>()?;
            let problem = ProxyProblem::new(functions, bbox.clone(), cfg)?;
            let pool = Pool::new(threads)?;
            let started = Instant::now();
            let solved = cheb_proxy_solve_with(&problem, &pool)?;
            let report = Report::new(&bbox, &solved, started.elapsed().as_secs_f64());
            let text = report.to_json();
            match out {
                Some(path) => std::fs::write(&path, text)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => println!("{text}"),
            }
            Ok(if report.flagged() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Tau { alpha, beta, ns } => {
            let table = tau_table(alpha, beta, &ns)?;
            println!("# n D D/n conjectured");
            for row in table {
                println!("{} {} {} {}", row.n, row.degree, row.ratio, row.conjectured);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::SubdivDegrees { n, levels } => {
            for (level, row) in subdivision_degrees(n, levels)?.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(usize::to_string).collect();
                println!("{} {}", level + 1, cells.join(" "));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench {
            dim,
            degrees,
            trials,
            seed,
            threads,
        } => {
            let report = bench(dim, &degrees, trials, seed, &Pool::new(threads)?)?;
            println!("# degree mean_seconds roots max_error log_average_error");
            for r in &report.rows {
                println!(
                    "{} {} {} {:e} {:e}",
                    r.degree, r.mean_seconds, r.roots, r.max_error, r.log_average_error
                );
            }
            match report.slope {
                Some(s) => println!("# log-log slope {s:.3}"),
                None => println!("# log-log slope unavailable"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { only } => {
            if let Some(bad) = only
                .iter()
                .find(|&&i| !(1..=verify::CRITERIA.len()).contains(&i))
            {
                bail!("no criterion {bad}");
            }
            let outcomes = verify::run(&only)?;
            for o in &outcomes {
                println!("{}", o.line());
                eprintln!("criterion {} took {:.1} s", o.id, o.seconds);
            }
            Ok(if outcomes.iter().all(|o| o.passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

/// Rewrites `--func a b --interval c d` as `--func=a --func=b --interval=c
/// --interval=d`, so that values such as `-x1` or `-1,1` are not taken for
/// flags. A list ends at the next token starting with `--`.
fn spread_values(args: impl IntoIterator<Item = String>) -> Vec<String> {
    const LISTS: [&str; 2] = ["--func", "--interval"];
    let mut out = Vec::new();
    let mut list: Option<&str> = None;
    for arg in args {
        if arg.starts_with("--") {
            list = LISTS.iter().copied().find(|&l| l == arg);
            if list.is_none() {
                out.push(arg);
            }
        } else if let Some(flag) = list {
            out.push(format!("{flag}={arg}"));
        } else {
            out.push(arg);
        }
    }
    out
}

fn parse_box(intervals: &[String]) -> Result<IntervalBox> {
    let pairs = intervals
        .iter()
        .map(|s| {
            let (lo, hi) = s
                .split_once(',')
                .with_context(|| format!("interval {s:?} is not lo,hi"))?;
            let lo: f64 = lo
                .trim()
                .parse()
                .with_context(|| format!("bad lower bound in {s:?}"))?;
            let hi: f64 = hi
                .trim()
                .parse()
                .with_context(|| format!("bad upper bound in {s:?}"))?;
            Ok((lo, hi))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntervalBox::from_pairs(&pairs)?)
}

fn load_function(arg: &str, n: usize, bbox: &IntervalBox) -> Result<Box<dyn TargetFunction>> {
    if let Some(path) = arg.strip_prefix('@') {
        let t = TensorFile::read(path.as_ref())?;
        ensure!(
            t.dims == n,
            "{path}: tensor has {} dimensions, expected {n}",
            t.dims
        );
        return Ok(Box::new(PolyTarget::new(
            t.to_poly()?,
            t.eps(),
            bbox.clone(),
        )?));
    }
    let expr = parse_expression(arg, n).with_context(|| format!("in {arg:?}"))?;
    Ok(Box::new(expr))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &[&str]) -> Vec<String> {
        s.iter().map(|a| a.to_string()).collect()
    }

    fn exit(s: &[&str]) -> ExitCode {
        let cli = Cli::try_parse_from(spread_values(args(s))).expect("valid arguments");
        run(cli).unwrap_or(ExitCode::from(1))
    }

    #[test]
    fn lists_are_spread() {
        let got = spread_values(args(&[
            "chebproxy",
            "solve",
            "--func",
            "-x1",
            "x2",
            "--interval",
            "-1,1",
            "-2,2",
            "--threads",
            "2",
        ]));
        let want = args(&[
            "chebproxy",
            "solve",
            "--func=-x1",
            "--func=x2",
            "--interval=-1,1",
            "--interval=-2,2",
            "--threads",
            "2",
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn parsed_lists() {
        let cli = Cli::try_parse_from(spread_values(args(&[
            "chebproxy",
            "solve",
            "--func",
            "-x1",
            "x2",
            "--interval",
            "-1,1",
            "0,2",
        ])))
        .unwrap();
        let Command::Solve {
            funcs, intervals, ..
        } = cli.command
        else {
            panic!("not solve")
        };
        assert_eq!(funcs, ["-x1", "x2"]);
        assert_eq!(intervals, ["-1,1", "0,2"]);
    }

    #[test]
    fn exit_codes() {
        let dir = std::env::temp_dir().join(format!("chebproxy-main-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let out = dir.join("r.json");
        let out = out.to_str().unwrap();
        let simple = exit(&[
            "chebproxy",
            "solve",
            "--func",
            "x1",
            "--interval",
            "-1,1",
            "--out",
            out,
        ]);
        assert_eq!(simple, ExitCode::SUCCESS);
        let double = exit(&[
            "chebproxy",
            "solve",
            "--func",
            "x1^2",
            "--interval",
            "-1,1",
            "--out",
            out,
        ]);
        assert_eq!(double, ExitCode::from(2));
        let bad = exit(&[
            "chebproxy",
            "solve",
            "--func",
            "x1",
            "x2",
            "--interval",
            "-1,1",
        ]);
        assert_eq!(bad, ExitCode::from(1));
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn boxes() {
        let b = parse_box(&args(&["-1,1", " 0 , 2 "])).unwrap();
        assert_eq!(b.dims(), 2);
        assert!(parse_box(&args(&["1"])).is_err());
        assert!(parse_box(&args(&["1,0"])).is_err());
    }
}
