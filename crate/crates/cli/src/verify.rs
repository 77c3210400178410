use std::io::Write as _;
use std::path::PathBuf;

use clap::Args;
use serde_json::{json, Value};

use hyperturan::constructions::{verify_lbap_properties, ConstructionCertificate, LbapClaim};
use hyperturan::counting::{cliques, complete_subsets, count_complete_subsets, edge_multiplicity, is_free_of};
use hyperturan::extremal::chain_check;
use hyperturan::hypercore::text::{self, TextDocument};
use hyperturan::hypercore::PatternSpec;
use hyperturan::proofprocs::{
    edge_disjoint_greedy, find_blowup, shared_edge_count, thin_cliques, FindOptions,
};
use hyperturan::{PartitionMap, UniformHypergraph};

use crate::construct::LBAP_TAG;
use crate::exit::{CliResult, Exit, OK, REFUTED};
use crate::{Format, Global};

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Hypergraph file in the text format.
    #[arg(long)]
    pub host: PathBuf,
    /// One of free:PATTERN, cliques:N, edge-disjoint:N, lbap-properties, chain:PATTERN.
    #[arg(long)]
    pub claim: String,
    /// Write a JSON-lines trace of the constructive pipeline here.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Partition attempts for the blowup finder in the trace.
    #[arg(long, default_value_t = 200)]
    pub retries: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Claim {
    Free(String),
    Cliques(u64),
    EdgeDisjoint(usize),
    LbapProperties,
    Chain(String),
}

impl std::str::FromStr for Claim {
    type Err = Exit;

    fn from_str(s: &str) -> CliResult<Claim> {
        let count = |v: &str| {
            v.parse()
                .map_err(|_| Exit::usage(format!("claim `{s}`: `{v}` is not a count")))
        };
        match s.split_once(':') {
            Some(("free", p)) if !p.is_empty() => Ok(Claim::Free(p.to_string())),
            Some(("cliques", v)) => Ok(Claim::Cliques(count(v)? as u64)),
            Some(("edge-disjoint", v)) => Ok(Claim::EdgeDisjoint(count(v)?)),
            Some(("chain", p)) if !p.is_empty() => Ok(Claim::Chain(p.to_string())),
            None if s == "lbap-properties" => Ok(Claim::LbapProperties),
            _ => Err(Exit::usage(format!(
                "unknown claim `{s}` (free:PATTERN, cliques:N, edge-disjoint:N, lbap-properties, chain:PATTERN)"
            ))),
        }
    }
}

struct Outcome {
    verified: bool,
    detail: Value,
}

pub fn run(g: &Global, args: &VerifyArgs) -> CliResult<u8> {
    let claim: Claim = args.claim.parse()?;
    let doc = text::read_file(&args.host)?;
    let host = &doc.hypergraph;
    let mut trace = vec![json!({
        "step": "host",
        "digest": text::digest(host),
        "vertices": host.n(),
        "uniformity": host.uniformity(),
        "edges": host.edge_count(),
    })
    .to_string()];
    let outcome = match &claim {
        Claim::Free(src) => free(g, args, host, src, &mut trace)?,
        Claim::Cliques(n) => {
            let counted = count_complete_subsets(host, host.uniformity() + 1);
            Outcome {
                verified: counted == *n,
                detail: json!({ "order": host.uniformity() + 1, "counted": counted }),
            }
        }
        Claim::EdgeDisjoint(n) => edge_disjoint(host, *n, &mut trace)?,
        Claim::LbapProperties => {
            let certs = lbap_from_document(&doc);
            match certs {
                Ok(c) => Outcome { verified: true, detail: serde_json::to_value(&c).expect("json") },
                Err(e) if e.code == REFUTED => Outcome { verified: false, detail: json!(e.message) },
                Err(e) => return Err(e),
            }
        }
        Claim::Chain(src) => {
            let f = crate::ex::pattern(src)?;
            let report = chain_check(host.n(), &f, &g.exact_options()?)?;
            Outcome {
                verified: report.is_non_decreasing(),
                detail: json!({
                    "n": report.n,
                    "r": report.r,
                    "values": report.values(),
                    "first_violation": report.first_violation(),
                }),
            }
        }
    };
    let result = json!({
        "claim": args.claim,
        "host": text::digest(host),
        "verified": outcome.verified,
        "detail": outcome.detail,
    });
    match g.format.unwrap_or(Format::Json) {
        Format::Text => println!("{}: {}", args.claim, if outcome.verified { "verified" } else { "refuted" }),
        _ => println!("{}", serde_json::to_string_pretty(&result).expect("json")),
    }
    if let Some(path) = &args.trace {
        trace.push(json!({ "step": "claim", "claim": args.claim, "verified": outcome.verified }).to_string());
        let mut file = std::fs::File::create(path)?;
        for line in &trace {
            writeln!(file, "{line}")?;
        }
    }
    if outcome.verified {
        Ok(OK)
    } else {
        if !matches!(g.format, Some(Format::Text)) {
            eprintln!("claim {} refuted", args.claim);
        }
        Ok(REFUTED)
    }
}

fn free(
    g: &Global,
    args: &VerifyArgs,
    host: &UniformHypergraph,
    src: &str,
    trace: &mut Vec<String>,
) -> CliResult<Outcome> {
    let f = crate::ex::pattern(src)?;
    let res = is_free_of(host, &f)?;
    if args.trace.is_some() {
        pipeline_trace(g, args, host, src, trace)?;
    }
    Ok(Outcome {
        verified: res.free,
        detail: json!({ "witness": res.witness.map(|w| w.map().to_vec()) }),
    })
}

/// Thinning and blowup-finder runs on the host, for the trace only.
fn pipeline_trace(
    g: &Global,
    args: &VerifyArgs,
    host: &UniformHypergraph,
    src: &str,
    trace: &mut Vec<String>,
) -> CliResult<()> {
    let Some(spec) = PatternSpec::parse(src)?.blowup_spec()? else {
        return Ok(());
    };
    let s = host.uniformity();
    let a = spec.sizes().iter().copied().max().unwrap_or(1);
    if s >= 2 && a >= 2 {
        let r = s + 1;
        let shared = shared_edge_count(host, r, a)?;
        trace.push(json!({
            "step": "shared-edges",
            "r": r,
            "a": a,
            "groups": shared.groups.to_string(),
            "bound": shared.bound.to_string(),
            "max_co_neighborhood": shared.max_co_neighborhood,
        })
        .to_string());
        let family = cliques(host, r)?;
        trace.push(thin_cliques(&family, a, g.seed)?.trace_line());
    }
    let base = spec.base();
    let uniform = spec.sizes().iter().all(|&x| x == a);
    if uniform && base.n() > s && base.uniformity() == s {
        let opts = FindOptions {
            seed: g.seed,
            retries: args.retries,
            ..Default::default()
        };
        trace.extend(find_blowup(host, base, a, &opts)?.trace_lines());
    }
    Ok(())
}

fn edge_disjoint(host: &UniformHypergraph, n: usize, trace: &mut Vec<String>) -> CliResult<Outcome> {
    let r = host.uniformity() + 1;
    let family = cliques(host, r)?;
    let b = edge_multiplicity(host, &family)?.max.max(1) + 1;
    let out = edge_disjoint_greedy(host, &family, b)?;
    trace.push(json!({
        "step": "edge-disjoint",
        "cliques": family.len(),
        "b": b,
        "selected": out.len(),
    })
    .to_string());
    Ok(Outcome {
        verified: out.len() >= n,
        detail: json!({
            "cliques": family.len(),
            "multiplicity_bound": b,
            "selected": out.len(),
            "members": out.members().iter().map(|e| e.to_vec()).collect::<Vec<_>>(),
        }),
    })
}

/// Rebuilds the r-graph of an lbap output from its cliques and metadata
/// comment, then re-checks properties (1)-(3).
pub fn lbap_from_document(doc: &TextDocument) -> CliResult<ConstructionCertificate> {
    let meta = doc
        .comments
        .iter()
        .find_map(|c| c.strip_prefix(LBAP_TAG))
        .ok_or_else(|| Exit::usage("host file has no lbap metadata comment"))?;
    let meta: Value = serde_json::from_str(meta).map_err(|e| Exit::usage(format!("lbap metadata: {e}")))?;
    let field = |k: &str| {
        meta[k]
            .as_u64()
            .map(|v| v as usize)
            .ok_or_else(|| Exit::usage(format!("lbap metadata lacks `{k}`")))
    };
    let (n, r) = (field("n")?, field("r")?);
    let sizes: Vec<usize> = meta["parts"]
        .as_array()
        .ok_or_else(|| Exit::usage("lbap metadata lacks `parts`"))?
        .iter()
        .map(|v| v.as_u64().map(|x| x as usize))
        .collect::<Option<_>>()
        .ok_or_else(|| Exit::usage("lbap parts must be counts"))?;
    let ap_size = meta["ap_set"].as_array().map_or(0, Vec::len);
    let g = &doc.hypergraph;
    if g.uniformity() + 1 != r || sizes.iter().sum::<usize>() != g.n() {
        return Err(Exit::refuted("host does not match its lbap metadata"));
    }
    let h = UniformHypergraph::from_edges(g.n(), r, complete_subsets(g, r))?;
    let parts = PartitionMap::consecutive(&sizes);
    let cert = verify_lbap_properties(&h, &parts, &LbapClaim { n, r, ap_size });
    Ok(cert.into_checked()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claim_syntax() {
        assert_eq!("free:K3_2(1,1,2)".parse::<Claim>().unwrap(), Claim::Free("K3_2(1,1,2)".into()));
        assert_eq!("cliques:0".parse::<Claim>().unwrap(), Claim::Cliques(0));
        assert_eq!("edge-disjoint:3".parse::<Claim>().unwrap(), Claim::EdgeDisjoint(3));
        assert_eq!("lbap-properties".parse::<Claim>().unwrap(), Claim::LbapProperties);
        assert!("cliques:x".parse::<Claim>().is_err());
        assert!("bogus".parse::<Claim>().is_err());
        assert!("free:".parse::<Claim>().is_err());
    }
}
