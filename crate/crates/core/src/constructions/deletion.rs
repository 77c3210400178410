//! Random `(r-1)`-graphs with every copy of a forbidden blowup destroyed.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{Claim, ConstructionCertificate};
use crate::counting::exponents::{deletion_edge_exponent, to_f64, Exponent};
use crate::counting::{automorphisms, binomial, count_complete_subsets, first_embedding, is_blowup_free, Plan};
use crate::error::{Error, Result};
use crate::hypercore::{blowup, mask_subsets, BlowupSpec, Edge, EdgeIndex, UniformHypergraph};

/// The balancing probability `p = n^{-(v-s)/(e-1)}` for the blown-up
/// pattern with `v` vertices and `e` edges, with its exponent.
pub fn suggested_probability(n: usize, spec: &BlowupSpec) -> Result<(Exponent, f64)> {
    let (f, _) = blowup(spec)?;
    let x = deletion_edge_exponent(f.uniformity(), f.n(), f.edge_count())?;
    Ok((x, (n as f64).powf(-to_f64(&x))))
}

/// Samples each `(r-1)`-subset of `[n]` with probability `p` (in lex order,
/// one draw per subset from ChaCha8 seeded by `seed`), then repeatedly takes
/// the first copy of `blowup(spec)` found by the fixed search order and
/// deletes the smallest edge of that copy, until none is left.
pub fn deletion_construct(
    n: usize,
    r: usize,
    spec: &BlowupSpec,
    p: f64,
    seed: u64,
) -> Result<(UniformHypergraph, ConstructionCertificate)> {
    let s = spec.base().uniformity();
    if r < 3 || s != r - 1 {
        return Err(Error::InvalidParameter(format!(
            "need r >= 3 and a pattern of uniformity r - 1 = {}, got {s}",
            r.saturating_sub(1)
        )));
    }
    if !(p.is_finite() && (0.0..=1.0).contains(&p)) {
        return Err(Error::InvalidParameter(format!("p = {p} must lie in [0, 1]")));
    }
    let (f, _) = blowup(spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut index = EdgeIndex::new(n, s);
    let mut sampled = 0usize;
    for m in mask_subsets(all, s) {
        if rng.gen::<f64>() < p {
            index.insert(Edge::from_mask(m));
            sampled += 1;
        }
    }
    let plan = Plan::new(&f, &[]);
    let mut deleted = 0usize;
    while let Some(emb) = first_embedding(&index, n, &plan) {
        let victim = f
            .edges()
            .iter()
            .map(|&e| emb.image(e))
            .min()
            .expect("pattern has edges");
        index.remove(victim);
        deleted += 1;
    }
    let survivors: Vec<Edge> = mask_subsets(all, s)
        .map(Edge::from_mask)
        .filter(|&e| index.contains(e))
        .collect();
    let h = UniformHypergraph::from_edges(n, s, survivors)?;

    let mut cert = ConstructionCertificate::new("deletion", &h);
    cert.forbidden = Some(describe(spec));
    let slots = binomial(n as u64, s as u64) as f64;
    let mut params = BTreeMap::from([
        ("n".to_string(), json!(n)),
        ("r".to_string(), json!(r)),
        ("p".to_string(), json!(p)),
        ("seed".to_string(), json!(seed)),
        ("sampled_edges".to_string(), json!(sampled)),
        ("deleted_edges".to_string(), json!(deleted)),
        ("expected_sampled_edges".to_string(), json!(p * slots)),
    ]);
    if let Some(copies) = copies_in_complete(n, &f)? {
        let bound = p * slots - p.powi(f.edge_count() as i32) * copies;
        params.insert("pattern_copies_in_complete".to_string(), json!(copies));
        params.insert("expected_survivors_lower_bound".to_string(), json!(bound));
    }
    cert.parameters = params;
    let free = is_blowup_free(&h, spec)?;
    cert.claims.push(match free.witness {
        None => Claim::proved("free of the forbidden pattern", "exhaustive containment search".into()),
        Some(emb) => Claim::failed("free of the forbidden pattern", format!("embedding {:?}", emb.map())),
    });
    cert.claimed_cliques = Some(count_complete_subsets(&h, r));
    let cert = cert.into_checked()?;
    Ok((h, cert))
}

/// Copies of `f` in the complete hypergraph on `n` vertices:
/// `n!/(n-v)! / |Aut(f)|`, when automorphisms are computable.
fn copies_in_complete(n: usize, f: &UniformHypergraph) -> Result<Option<f64>> {
    let v = f.n();
    if v > n {
        return Ok(Some(0.0));
    }
    let Ok(auts) = automorphisms(f) else {
        return Ok(None);
    };
    let falling: f64 = (0..v).map(|i| (n - i) as f64).product();
    Ok(Some(falling / auts.len() as f64))
}

fn describe(spec: &BlowupSpec) -> String {
    let base = spec.base();
    if crate::counting::is_complete(base) {
        crate::hypercore::partite_name(base.uniformity(), spec.sizes())
    } else {
        format!("blowup of a {}-graph on {} vertices by {:?}", base.uniformity(), base.n(), spec.sizes())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: usize, sizes: &[usize]) -> BlowupSpec {
        BlowupSpec::new(UniformHypergraph::complete(sizes.len(), s).unwrap(), sizes.to_vec()).unwrap()
    }

    #[test]
    fn zero_probability_is_empty() {
        let (h, cert) = deletion_construct(8, 3, &spec(2, &[1, 1, 2]), 0.0, 5).unwrap();
        assert_eq!(h.edge_count(), 0);
        assert!(cert.passed());
    }

    #[test]
    fn complete_graph_becomes_locally_linear() {
        let (h, cert) = deletion_construct(10, 3, &spec(2, &[1, 1, 2]), 1.0, 0).unwrap();
        assert!(cert.passed());
        assert!(is_blowup_free(&h, &spec(2, &[1, 1, 2])).unwrap().free);
        assert_eq!(cert.parameters["sampled_edges"], json!(45));
    }

    #[test]
    fn reproducible_and_suggested_p() {
        let c4 = spec(2, &[2, 2]);
        let (x, p) = suggested_probability(12, &c4).unwrap();
        assert_eq!(x, Exponent::new(2, 3));
        let a = deletion_construct(12, 3, &c4, p, 9).unwrap();
        let b = deletion_construct(12, 3, &c4, p, 9).unwrap();
        assert_eq!(a.0, b.0);
        assert_eq!(a.1, b.1);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(deletion_construct(8, 3, &spec(2, &[1, 1, 2]), 1.5, 0).is_err());
        assert!(deletion_construct(8, 4, &spec(2, &[1, 1, 2]), 0.5, 0).is_err());
    }
}
