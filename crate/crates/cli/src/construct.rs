use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde_json::json;

use hyperturan::constructions::{
    apfree_set, deletion_construct, lb4_construct, lb4_split, lbap_hypergraph, lbap_part_sizes,
    lbap_shadow_graph, suggested_probability, verify_lbap_properties, ApMode,
    ConstructionCertificate, LbapClaim,
};
use hyperturan::counting::{contains, count_complete_subsets};
use hyperturan::extremal::exact_ex;
use hyperturan::hypercore::{complete_partite, partite_name, text, PatternSpec};
use hyperturan::UniformHypergraph;

use crate::exit::{CliResult, Exit, OK};
use crate::Global;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Lb4,
    Lbap,
    Deletion,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 3)]
    pub r: usize,
    /// Class sizes a_1,...,a_r of the forbidden blowup (lb4).
    #[arg(long, value_delimiter = ',')]
    pub a: Vec<usize>,
    /// Base (r-1)-graph on ceil((r-1)n/r) vertices (lb4); computed exactly if absent.
    #[arg(long)]
    pub base: Option<PathBuf>,
    /// Forbidden blowup `Kl_s(...)` with s = r - 1 (deletion).
    #[arg(long = "F", value_name = "PATTERN")]
    pub f: Option<String>,
    /// Edge probability (deletion); defaults to the balancing value.
    #[arg(long)]
    pub p: Option<f64>,
    /// How the progression-free set is chosen (lbap).
    #[arg(long, default_value = "exact")]
    pub ap_mode: String,
    /// Output hypergraph file.
    #[arg(long)]
    pub out: PathBuf,
    /// Certificate file; printed to standard output if absent.
    #[arg(long)]
    pub cert: Option<PathBuf>,
    /// Also write the r-graph H of the lbap construction here.
    #[arg(long)]
    pub hyper: Option<PathBuf>,
    /// Re-read the written file and re-check every claim.
    #[arg(long)]
    pub verify: bool,
}

/// Metadata comment recording the partition of an lbap output.
pub const LBAP_TAG: &str = "lbap ";

pub fn run(g: &Global, args: &ConstructArgs) -> CliResult<u8> {
    let (h, certs, comments) = match args.kind {
        Kind::Lbap => lbap(args)?,
        Kind::Lb4 => lb4(g, args)?,
        Kind::Deletion => deletion(g, args)?,
    };
    text::write_file(&args.out, &h, &comments)?;
    if args.verify {
        reverify(args, &certs)?;
    }
    let json = if certs.len() == 1 {
        certs[0].to_json_pretty()
    } else {
        serde_json::to_string_pretty(&certs).expect("json")
    };
    match &args.cert {
        Some(path) => std::fs::write(path, json + "\n")?,
        None => println!("{json}"),
    }
    Ok(OK)
}

type Built = (UniformHypergraph, Vec<ConstructionCertificate>, Vec<String>);

fn lbap(args: &ConstructArgs) -> CliResult<Built> {
    let mode: ApMode = args.ap_mode.parse()?;
    let set = apfree_set(args.n as u64, args.r, mode)?;
    let (h, parts) = lbap_hypergraph(args.n, args.r, &set)?;
    let claim = LbapClaim {
        n: args.n,
        r: args.r,
        ap_size: set.len(),
    };
    let props = verify_lbap_properties(&h, &parts, &claim).into_checked()?;
    let (g, shadow_cert) = lbap_shadow_graph(&h)?;
    if let Some(path) = &args.hyper {
        text::write_file(path, &h, &[format!("lbap hypergraph n={} r={}", args.n, args.r)])?;
    }
    let meta = json!({
        "n": args.n,
        "r": args.r,
        "ap_mode": args.ap_mode,
        "ap_set": set.elements,
        "parts": lbap_part_sizes(args.n, args.r),
    });
    let comments = vec![format!("{LBAP_TAG}{meta}")];
    Ok((g, vec![shadow_cert, props], comments))
}

fn lb4(g: &Global, args: &ConstructArgs) -> CliResult<Built> {
    let r = args.r;
    if args.a.len() != r {
        return Err(Exit::usage(format!("--a needs {r} class sizes, got {}", args.a.len())));
    }
    let (_, nb) = lb4_split(args.n, r);
    let base = match &args.base {
        Some(path) => text::read_file(path)?.hypergraph,
        None => {
            let edge = UniformHypergraph::complete(r - 1, r - 1)?;
            let (forbidden, _) = complete_partite(r - 1, &args.a[..r - 1])?;
            exact_ex(nb, &edge, &forbidden, &g.exact_options()?)?.witness
        }
    };
    let (h, cert) = lb4_construct(args.n, r, &args.a, &base)?;
    let comments = vec![format!("lb4 n={} r={} a={:?}", args.n, r, args.a)];
    Ok((h, vec![cert], comments))
}

fn deletion(g: &Global, args: &ConstructArgs) -> CliResult<Built> {
    let src = args
        .f
        .as_deref()
        .ok_or_else(|| Exit::usage("--F is required for the deletion construction"))?;
    let spec = PatternSpec::parse(src)
        .and_then(|p| p.blowup_spec())
        .map_err(|e| Exit::usage(format!("pattern `{src}`: {e}")))?
        .ok_or_else(|| Exit::usage("the deletion construction needs a `Kl_s(...)` pattern"))?;
    let p = match args.p {
        Some(p) => p,
        None => suggested_probability(args.n, &spec)?.1,
    };
    let (h, cert) = deletion_construct(args.n, args.r, &spec, p, g.seed)?;
    let comments = vec![format!("deletion n={} r={} F={src} p={p} seed={}", args.n, args.r, g.seed)];
    Ok((h, vec![cert], comments))
}

/// Reads the output back and re-runs the checks behind each certificate.
fn reverify(args: &ConstructArgs, certs: &[ConstructionCertificate]) -> CliResult<()> {
    let doc = text::read_file(&args.out)?;
    let h = &doc.hypergraph;
    let main = &certs[0];
    if !main.matches(h) {
        return Err(Exit::refuted("written file does not match the certificate digest"));
    }
    for c in certs {
        c.clone().into_checked()?;
    }
    let r = h.uniformity() + 1;
    if let Some(claimed) = main.claimed_cliques {
        let counted = count_complete_subsets(h, r);
        if counted != claimed {
            return Err(Exit::refuted(format!("counted {counted} cliques, certificate says {claimed}")));
        }
    }
    let forbidden = match args.kind {
        Kind::Lbap => Some(partite_name(r - 1, &[&vec![1; r - 1][..], &[2]].concat())),
        Kind::Lb4 => Some(partite_name(r - 1, &args.a)),
        Kind::Deletion => args.f.clone(),
    };
    if let Some(src) = forbidden {
        let f = crate::ex::pattern(&src)?;
        if let Some(emb) = contains(h, &f)? {
            return Err(Exit::refuted(format!("output contains {src} via {:?}", emb.map())));
        }
    }
    if args.kind == Kind::Lbap {
        crate::verify::lbap_from_document(&doc)?;
    }
    Ok(())
}
