//! `r`-partite `r`-graphs built from AP-free sets whose `(r-1)`-shadows
//! have many cliques but no two sharing an edge.
//!
//! Edges are parameterized by translations `t_1, ..., t_{r-2} ∈ [n]` and a
//! difference `d ∈ S`:
//!
//! ```text
//! x_i     = t_i                              (i ≤ r - 2)
//! x_{r-1} = d + Σ_i (r - 1 - i) t_i
//! x_r     = d + Σ_i (r - i) t_i
//! ```
//!
//! so every edge satisfies the single relation
//! `x_1 + ... + x_{r-2} + x_{r-1} - x_r = 0`, and `d` is the linear form
//! `x_{r-1} - Σ_i (r - 1 - i) x_i`. Any `r - 1` coordinates determine the
//! last one. If `x` is not an edge but each single-coordinate replacement
//! is, the differences of the `r` replaced edges form an `r`-term
//! progression in `S` with nonzero step, which `S` forbids. The parts have
//! sizes `n` (`r - 2` times), `n(1 + (r-1)(r-2)/2)` and `n r(r-1)/2`, in
//! total `(r-1) r n` vertices, and there are `n^{r-2} |S|` edges.

use std::collections::BTreeMap;

use serde_json::json;

use super::apfree::ApFreeSet;
use super::{Claim, ConstructionCertificate};
use crate::counting::{contains, count_complete_subsets};
use crate::error::{Error, Result};
use crate::hypercore::{
    complete_partite, mask_subsets, partite_name, shadow, Edge, PartitionMap, UniformHypergraph,
    MAX_VERTICES,
};

/// Parameters the verifier checks property (3) against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LbapClaim {
    pub n: usize,
    pub r: usize,
    /// `|S|`, the size of the AP-free set used.
    pub ap_size: usize,
}

/// Part sizes `|V_1|, ..., |V_r|`.
pub fn lbap_part_sizes(n: usize, r: usize) -> Vec<usize> {
    let mut sizes = vec![n; r - 2];
    sizes.push(n * (1 + (r - 1) * (r - 2) / 2));
    sizes.push(n * r * (r - 1) / 2);
    sizes
}

pub fn lbap_hypergraph(
    n: usize,
    r: usize,
    s: &ApFreeSet,
) -> Result<(UniformHypergraph, PartitionMap)> {
    if r < 3 || n == 0 {
        return Err(Error::InvalidParameter(format!("need r >= 3 and n >= 1, got r = {r}, n = {n}")));
    }
    if s.n != n as u64 || s.r != r {
        return Err(Error::InvalidParameter(format!(
            "AP-free set is for (n, r) = ({}, {}), construction asked for ({n}, {r})",
            s.n, s.r
        )));
    }
    s.verify()?;
    let sizes = lbap_part_sizes(n, r);
    let total: usize = sizes.iter().sum();
    if total > MAX_VERTICES {
        return Err(Error::TooManyVertices { n: total, max: MAX_VERTICES });
    }
    let parts = PartitionMap::consecutive(&sizes);
    let offsets: Vec<usize> = parts.classes().iter().map(|c| c[0]).collect();
    let mut edges = Vec::new();
    let mut t = vec![1usize; r - 2];
    loop {
        for &d in &s.elements {
            let d = d as usize;
            let mut coords: Vec<usize> = t.clone();
            let lower: usize = t.iter().enumerate().map(|(i, &ti)| (r - 2 - i) * ti).sum();
            let upper: usize = t.iter().enumerate().map(|(i, &ti)| (r - 1 - i) * ti).sum();
            coords.push(d + lower);
            coords.push(d + upper);
            let mask = coords
                .iter()
                .enumerate()
                .fold(0u64, |m, (i, &x)| m | 1u64 << (offsets[i] + x - 1));
            edges.push(Edge::from_mask(mask));
        }
        // next translation vector, odometer style
        let mut i = 0;
        while i < t.len() && t[i] == n {
            t[i] = 1;
            i += 1;
        }
        if i == t.len() {
            break;
        }
        t[i] += 1;
    }
    let h = UniformHypergraph::from_edges(total, r, edges)?;
    Ok((h, parts))
}

/// Checks properties (1)–(3) of the construction on an arbitrary
/// `r`-partite `r`-graph.
///
/// (2) is decided exhaustively: a violating choice of pairs `{x_i, y_i}`
/// makes `x^{(1)}` (the tuple with `x_1` replaced by `y_1`) an edge, so it
/// suffices to run over edges `e` and replacements `x_1 ≠ e_1` and ask
/// whether every other coordinate of `x` can be swapped into an edge.
pub fn verify_lbap_properties(
    h: &UniformHypergraph,
    parts: &PartitionMap,
    claim: &LbapClaim,
) -> ConstructionCertificate {
    let r = claim.r;
    let mut cert = ConstructionCertificate::new("lbap-properties", h);
    cert.parameters = params(claim);
    cert.claims.push(property_one(h));
    cert.claims.push(property_two(h, parts, r));
    cert.claims.push(property_three(h, claim));
    cert
}

fn params(claim: &LbapClaim) -> BTreeMap<String, serde_json::Value> {
    BTreeMap::from([
        ("n".to_string(), json!(claim.n)),
        ("r".to_string(), json!(claim.r)),
        ("ap_size".to_string(), json!(claim.ap_size)),
    ])
}

fn property_one(h: &UniformHypergraph) -> Claim {
    let name = "(1) every (r-1)-set lies in at most one edge";
    let s = h.uniformity();
    for e in h.edges() {
        for sub in mask_subsets(e.mask(), s - 1) {
            let link = h.index().link(Edge::from_mask(sub));
            if link.count_ones() > 1 {
                let mut it = (0..64).filter(|v| link >> v & 1 == 1);
                let (a, b) = (it.next().unwrap(), it.next().unwrap());
                let sub = Edge::from_mask(sub);
                return Claim::failed(
                    name,
                    format!(
                        "the set {sub:?} lies in edges {:?} and {:?}",
                        sub.with(a),
                        sub.with(b)
                    ),
                );
            }
        }
    }
    Claim::proved(name, format!("checked all {} edges", h.edge_count()))
}

fn property_two(h: &UniformHypergraph, parts: &PartitionMap, r: usize) -> Claim {
    let name = "(2) no choice of pairs {x_i, y_i} makes every replacement an edge";
    if parts.class_count() != r || parts.vertex_count() != h.n() || h.uniformity() != r {
        return Claim::failed(
            name,
            format!(
                "expected an {r}-uniform hypergraph with {r} parts on its {} vertices",
                h.n()
            ),
        );
    }
    if let Some(e) = h.edges().iter().find(|e| !parts.is_crossing(**e)) {
        return Claim::failed(name, format!("edge {e:?} is not crossing"));
    }
    let coords = |e: Edge| -> Vec<usize> {
        let mut c = vec![0; r];
        for v in e.vertices() {
            c[parts.class_of(v)] = v;
        }
        c
    };
    let mut checked = 0u64;
    for &e in h.edges() {
        let ce = coords(e);
        for &x1 in &parts.classes()[0] {
            if x1 == ce[0] {
                continue;
            }
            checked += 1;
            let mut x = ce.clone();
            x[0] = x1;
            let xmask = x.iter().fold(0u64, |m, &v| m | 1u64 << v);
            let all = (1..r).all(|i| {
                let rest = Edge::from_mask(xmask & !(1u64 << x[i]));
                let options = h.index().link(rest) & parts.class_mask(i) & !(1u64 << x[i]);
                options != 0
            });
            if all {
                return Claim::failed(
                    name,
                    format!("x = {x:?} with y_1 = {} has every replacement an edge", ce[0]),
                );
            }
        }
    }
    Claim::proved(name, format!("exhaustive over {checked} configurations"))
}

fn property_three(h: &UniformHypergraph, claim: &LbapClaim) -> Claim {
    let name = "(3) (r-1) r n vertices and n^(r-2) |S| edges";
    let (n, r) = (claim.n, claim.r);
    let vertices = (r - 1) * r * n;
    let edges = (n as u128).pow(r as u32 - 2) * claim.ap_size as u128;
    let detail = format!(
        "vertices {} (expected {vertices}), edges {} (expected {edges})",
        h.n(),
        h.edge_count()
    );
    if h.n() == vertices && h.edge_count() as u128 == edges {
        Claim::proved(name, detail)
    } else {
        Claim::failed(name, detail)
    }
}

/// `∂^{(r-1)} H` with a certificate that it is `K_r^{(r-1)}(1,...,1,2)`-free
/// and has exactly `|E(H)|` cliques.
pub fn lbap_shadow_graph(h: &UniformHypergraph) -> Result<(UniformHypergraph, ConstructionCertificate)> {
    let r = h.uniformity();
    if r < 3 {
        return Err(Error::InvalidParameter(format!("need uniformity >= 3, got {r}")));
    }
    let g = shadow(h, r - 1)?;
    let mut sizes = vec![1; r];
    sizes[r - 1] = 2;
    let (pattern, _) = complete_partite(r - 1, &sizes)?;
    let mut cert = ConstructionCertificate::new("lbap-shadow", &g);
    cert.forbidden = Some(partite_name(r - 1, &sizes));
    cert.parameters = BTreeMap::from([
        ("r".to_string(), json!(r)),
        ("source_edges".to_string(), json!(h.edge_count())),
    ]);
    let free = "shadow is free of the forbidden pattern";
    cert.claims.push(match contains(&g, &pattern)? {
        None => Claim::proved(free, "exhaustive containment search".to_string()),
        Some(emb) => Claim::failed(free, format!("embedding {:?}", emb.map())),
    });
    let cliques = count_complete_subsets(&g, r);
    let detail = format!("{cliques} cliques, {} source edges", h.edge_count());
    cert.claims.push(if cliques == h.edge_count() as u64 {
        Claim::proved("clique count equals source edge count", detail)
    } else {
        Claim::failed("clique count equals source edge count", detail)
    });
    cert.claimed_cliques = Some(cliques);
    Ok((g, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::apfree::{apfree_set, ApMode};

    fn set(n: u64, r: usize, elements: Vec<u64>) -> ApFreeSet {
        ApFreeSet { n, r, elements, exact: false }
    }

    #[test]
    fn two_three_one() {
        let (h, parts) = lbap_hypergraph(2, 3, &set(2, 3, vec![1])).unwrap();
        assert_eq!(parts.sizes(), vec![2, 4, 6]);
        assert_eq!(h.n(), 12);
        assert_eq!(h.edge_count(), 2);
        // (t, t + d, 2t + d) for t = 1, 2
        assert_eq!(h.edge_lists(), vec![vec![0, 3, 8], vec![1, 4, 10]]);
        let claim = LbapClaim { n: 2, r: 3, ap_size: 1 };
        let cert = verify_lbap_properties(&h, &parts, &claim);
        assert!(cert.passed(), "{cert:?}");
        let (g, gc) = lbap_shadow_graph(&h).unwrap();
        assert!(gc.passed());
        assert_eq!(count_complete_subsets(&g, 3), 2);
    }

    #[test]
    fn exact_sets_r3() {
        for n in [4usize, 6, 8] {
            let s = apfree_set(n as u64, 3, ApMode::Exact).unwrap();
            let (h, parts) = lbap_hypergraph(n, 3, &s).unwrap();
            assert_eq!(h.edge_count(), n * s.len());
            let claim = LbapClaim { n, r: 3, ap_size: s.len() };
            assert!(verify_lbap_properties(&h, &parts, &claim).passed());
            let (_, gc) = lbap_shadow_graph(&h).unwrap();
            assert!(gc.passed(), "{gc:?}");
        }
    }

    #[test]
    fn higher_uniformity() {
        let s = apfree_set(2, 4, ApMode::Exact).unwrap();
        let (h, parts) = lbap_hypergraph(2, 4, &s).unwrap();
        assert_eq!(h.n(), 24);
        assert_eq!(h.edge_count(), 2 * 2 * 2);
        let claim = LbapClaim { n: 2, r: 4, ap_size: 2 };
        assert!(verify_lbap_properties(&h, &parts, &claim).passed());
        assert!(lbap_shadow_graph(&h).unwrap().1.passed());
    }

    #[test]
    fn progression_in_s_breaks_property_two() {
        let bad = set(4, 3, vec![1, 2, 3]);
        assert!(lbap_hypergraph(4, 3, &bad).is_err());
    }

    #[test]
    fn empty_and_duplicated() {
        let (h, parts) = lbap_hypergraph(3, 3, &set(3, 3, vec![])).unwrap();
        assert_eq!(h.edge_count(), 0);
        let ok = verify_lbap_properties(&h, &parts, &LbapClaim { n: 3, r: 3, ap_size: 0 });
        assert!(ok.passed());
        let mismatch = verify_lbap_properties(&h, &parts, &LbapClaim { n: 3, r: 3, ap_size: 2 });
        assert!(mismatch.claims[0].is_ok() && mismatch.claims[1].is_ok());
        assert!(!mismatch.claims[2].is_ok());

        let parts = PartitionMap::consecutive(&[1, 1, 2]);
        let dup = UniformHypergraph::new(4, 3, [[0, 1, 2], [0, 1, 3]]).unwrap();
        let cert = verify_lbap_properties(&dup, &parts, &LbapClaim { n: 1, r: 3, ap_size: 1 });
        assert!(!cert.claims[0].is_ok());
        assert!(cert.claims[0].detail.contains("{0, 1}"), "{}", cert.claims[0].detail);
    }
}
