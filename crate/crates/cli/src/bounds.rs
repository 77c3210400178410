use clap::Args;
use serde_json::{json, Value};

use hyperturan::counting::exponents::{format_exponent, to_f64};
use hyperturan::counting::{exponents, ExponentReport};

use crate::exit::{CliResult, Exit, OK, REFUTED};
use crate::{Format, Global};

#[derive(Args, Debug)]
pub struct BoundsArgs {
    #[arg(long)]
    pub r: usize,
    /// Sorted class sizes a_1,...,a_r; all sorted tuples up to --max-a if absent.
    #[arg(long, value_delimiter = ',')]
    pub a: Vec<u64>,
    #[arg(long, default_value_t = 5)]
    pub max_a: u64,
}

/// Non-decreasing tuples of length `r` over `1..=max`, in lexicographic order.
fn sorted_tuples(r: usize, max: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = vec![1u64; r];
    loop {
        out.push(cur.clone());
        let Some(i) = (0..r).rev().find(|&i| cur[i] < max) else {
            return out;
        };
        let v = cur[i] + 1;
        for x in &mut cur[i..] {
            *x = v;
        }
    }
}

fn join(a: &[u64]) -> String {
    a.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn to_json(rep: &ExponentReport) -> Value {
    json!({
        "r": rep.r,
        "a": rep.a,
        "upper": format_exponent(&rep.upper),
        "upper_decimal": to_f64(&rep.upper),
        "lowers": rep.lowers.iter().map(|l| json!({
            "kind": l.kind.label(),
            "exponent": format_exponent(&l.exponent),
            "decimal": to_f64(&l.exponent),
            "condition": l.kind.condition(),
        })).collect::<Vec<_>>(),
        "consistent": rep.is_consistent(),
    })
}

pub fn run(g: &Global, args: &BoundsArgs) -> CliResult<u8> {
    if args.r < 3 {
        return Err(Exit::usage(format!("r = {} must be at least 3", args.r)));
    }
    let tuples = if args.a.is_empty() {
        if args.max_a == 0 {
            return Err(Exit::usage("--max-a must be positive"));
        }
        sorted_tuples(args.r, args.max_a)
    } else {
        vec![args.a.clone()]
    };
    let reports = tuples
        .iter()
        .map(|a| exponents(args.r, a))
        .collect::<hyperturan::Result<Vec<_>>>()?;
    match g.format.unwrap_or(Format::Text) {
        Format::Json => {
            let rows: Vec<Value> = reports.iter().map(to_json).collect();
            println!("{}", serde_json::to_string_pretty(&rows).expect("json"));
        }
        Format::Csv => {
            println!("r,a,bound,kind,exponent,decimal");
            for rep in &reports {
                let a = join(&rep.a);
                println!("{},\"{a}\",upper,,{},{}", rep.r, format_exponent(&rep.upper), to_f64(&rep.upper));
                for l in &rep.lowers {
                    println!(
                        "{},\"{a}\",lower,{},{},{}",
                        rep.r,
                        l.kind.label(),
                        format_exponent(&l.exponent),
                        to_f64(&l.exponent)
                    );
                }
            }
        }
        Format::Text => {
            for rep in &reports {
                println!(
                    "r={} a=({}) upper {} ({:.6})",
                    rep.r,
                    join(&rep.a),
                    format_exponent(&rep.upper),
                    to_f64(&rep.upper)
                );
                for l in &rep.lowers {
                    println!(
                        "    lower {} ({:.6}) [{}: {}]",
                        format_exponent(&l.exponent),
                        to_f64(&l.exponent),
                        l.kind.label(),
                        l.kind.condition()
                    );
                }
            }
        }
    }
    if reports.iter().all(ExponentReport::is_consistent) {
        Ok(OK)
    } else {
        eprintln!("an exponent report is inconsistent");
        Ok(REFUTED)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_enumeration() {
        let t = sorted_tuples(3, 2);
        assert_eq!(t.len(), 4);
        assert_eq!(t[0], vec![1, 1, 1]);
        assert_eq!(t[3], vec![2, 2, 2]);
        assert_eq!(sorted_tuples(6, 5).len(), 210);
    }
}
