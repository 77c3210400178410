use clap::Args;
use serde_json::json;

use hyperturan::extremal::{
    canonical_key, exact_ex, export_csv, heuristic_lower, ExtremalRecord, HeuristicOptions, Mode,
};
use hyperturan::hypercore::PatternSpec;
use hyperturan::{Error, UniformHypergraph};

use crate::exit::{CliResult, Exit, OK};
use crate::{Format, Global};

#[derive(Args, Debug)]
pub struct ExArgs {
    /// Vertex counts: `N`, `A..B` or `A..=B` (both inclusive).
    #[arg(long, default_value = "4..6")]
    pub n: String,
    /// Counted pattern T.
    #[arg(long = "T", value_name = "PATTERN")]
    pub t: String,
    /// Forbidden pattern F.
    #[arg(long = "F", value_name = "PATTERN")]
    pub f: String,
    /// Fall back to the randomized lower bound when exact search is
    /// infeasible or times out.
    #[arg(long)]
    pub heuristic: bool,
    /// Greedy restarts of the randomized search.
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    /// Perturbation steps per restart.
    #[arg(long, default_value_t = 400)]
    pub steps: usize,
}

pub fn parse_range(src: &str) -> CliResult<Vec<usize>> {
    let bad = || Exit::usage(format!("bad range `{src}` (expected N, A..B or A..=B)"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let (lo, hi) = if let Some((a, b)) = src.split_once("..=") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = src.split_once("..") {
        (num(a)?, num(b)?)
    } else {
        let v = num(src)?;
        (v, v)
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

pub fn pattern(src: &str) -> CliResult<UniformHypergraph> {
    PatternSpec::parse(src)
        .and_then(|p| p.build())
        .map_err(|e| Exit::usage(format!("pattern `{src}`: {e}")))
}

fn compute(g: &Global, args: &ExArgs, n: usize, t: &UniformHypergraph, f: &UniformHypergraph) -> CliResult<ExtremalRecord> {
    let cache = g.cache();
    if let Some(c) = &cache {
        if let Some(rec) = c.get(n, t, f, Mode::Exact)? {
            return Ok(rec);
        }
    }
    let heuristic = || {
        let opts = HeuristicOptions {
            seed: g.seed,
            restarts: args.restarts,
            steps: args.steps,
        };
        heuristic_lower(n, t, f, &opts).map_err(Exit::from)
    };
    match exact_ex(n, t, f, &g.exact_options()?) {
        Ok(rec) if rec.stats.timed_out => {
            if args.heuristic {
                Ok(rec)
            } else {
                Err(Exit::infeasible(format!(
                    "exact search for n = {n} timed out (best found {}); pass --heuristic to accept it",
                    rec.value
                )))
            }
        }
        Ok(rec) => {
            if let Some(c) = &cache {
                c.put(&rec)?;
            }
            Ok(rec)
        }
        Err(Error::Infeasible(_)) if args.heuristic => heuristic(),
        Err(Error::Infeasible(msg)) => Err(Exit::infeasible(format!(
            "{msg}; pass --heuristic for a lower bound or --augment to raise the guard"
        ))),
        Err(e) => Err(e.into()),
    }
}

pub fn run(g: &Global, args: &ExArgs) -> CliResult<u8> {
    let ns = parse_range(&args.n)?;
    let t = pattern(&args.t)?;
    let f = pattern(&args.f)?;
    if t.uniformity() != f.uniformity() {
        return Err(Exit::usage(format!(
            "T is {}-uniform but F is {}-uniform",
            t.uniformity(),
            f.uniformity()
        )));
    }
    let records = ns
        .iter()
        .map(|&n| compute(g, args, n, &t, &f))
        .collect::<CliResult<Vec<_>>>()?;
    match g.format.unwrap_or(Format::Csv) {
        Format::Csv => print!("{}", export_csv(&records)?),
        Format::Json => {
            let rows = records
                .iter()
                .map(|r| {
                    Ok(json!({
                        "n": r.n,
                        "T": args.t,
                        "F": args.f,
                        "T_key": canonical_key(&r.pattern)?.to_string(),
                        "F_key": canonical_key(&r.forbidden)?.to_string(),
                        "value": r.value,
                        "mode": r.mode,
                        "witness": r.witness.edge_lists(),
                    }))
                })
                .collect::<hyperturan::Result<Vec<_>>>()?;
            println!("{}", serde_json::to_string_pretty(&rows).expect("json"));
        }
        Format::Text => {
            for r in &records {
                println!("ex({}, {}, {}) = {} [{}]", r.n, args.t, args.f, r.value, r.mode);
            }
        }
    }
    Ok(OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("4..6").unwrap(), vec![4, 5, 6]);
        assert_eq!(parse_range("4..=5").unwrap(), vec![4, 5]);
        assert_eq!(parse_range("7").unwrap(), vec![7]);
        assert!(parse_range("6..4").is_err());
        assert!(parse_range("x").is_err());
    }
}
