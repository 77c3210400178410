//! A free base `(r-1)`-graph on `B` plus a set `A` of apex vertices whose
//! links are complete on `B`.

use std::collections::BTreeMap;

use serde_json::json;

use super::{Claim, ConstructionCertificate};
use crate::counting::{contains, count_complete_subsets};
use crate::error::{Error, Result};
use crate::extremal::ExtremalRecord;
use crate::hypercore::{complete_partite, mask_subsets, partite_name, Edge, UniformHypergraph};

/// `(|A|, |B|) = (⌊n/r⌋, ⌈(r-1)n/r⌉)`.
pub fn lb4_split(n: usize, r: usize) -> (usize, usize) {
    (n / r, ((r - 1) * n).div_ceil(r))
}

/// Builds the construction on vertices `B = 0..|B|` (carrying `base`) and
/// `A = |B|..n`. Fails if the base is not free of
/// `K_{r-1}^{(r-1)}(a_1, ..., a_{r-1})` or any certificate claim fails.
pub fn lb4_construct(
    n: usize,
    r: usize,
    a: &[usize],
    base: &UniformHypergraph,
) -> Result<(UniformHypergraph, ConstructionCertificate)> {
    if r < 3 || a.len() != r {
        return Err(Error::InvalidParameter(format!(
            "need r >= 3 and r class sizes, got r = {r} and {} sizes",
            a.len()
        )));
    }
    if a.contains(&0) || a.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidParameter(format!(
            "class sizes {a:?} must be positive and ascending"
        )));
    }
    let (na, nb) = lb4_split(n, r);
    if base.uniformity() != r - 1 || base.n() != nb {
        return Err(Error::Precondition(format!(
            "base must be an {}-graph on {nb} vertices, got uniformity {} on {} vertices",
            r - 1,
            base.uniformity(),
            base.n()
        )));
    }
    let (base_pattern, _) = complete_partite(r - 1, &a[..r - 1])?;
    if let Some(emb) = contains(base, &base_pattern)? {
        return Err(Error::Precondition(format!(
            "base contains {} via {:?}",
            partite_name(r - 1, &a[..r - 1]),
            emb.map()
        )));
    }

    let b_mask = if nb == 64 { u64::MAX } else { (1u64 << nb) - 1 };
    let mut edges: Vec<Edge> = base.edges().to_vec();
    for apex in nb..n {
        edges.extend(mask_subsets(b_mask, r - 2).map(|m| Edge::from_mask(m | 1u64 << apex)));
    }
    let h = UniformHypergraph::from_edges(n, r - 1, edges)?;

    let mut cert = ConstructionCertificate::new("lb4", &h);
    cert.forbidden = Some(partite_name(r - 1, a));
    cert.parameters = BTreeMap::from([
        ("n".to_string(), json!(n)),
        ("r".to_string(), json!(r)),
        ("a".to_string(), json!(a)),
        ("apex_vertices".to_string(), json!(na)),
        ("base_vertices".to_string(), json!(nb)),
        ("base_edges".to_string(), json!(base.edge_count())),
    ]);

    let a_mask = !b_mask & if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let twice = h.edges().iter().find(|e| (e.mask() & a_mask).count_ones() >= 2);
    cert.claims.push(match twice {
        None => Claim::proved("no edge meets A twice", String::new()),
        Some(e) => Claim::failed("no edge meets A twice", format!("edge {e:?}")),
    });
    let restricted: Vec<Edge> = h
        .edges()
        .iter()
        .copied()
        .filter(|e| e.mask() & a_mask == 0)
        .collect();
    cert.claims.push(if restricted == base.edges() {
        Claim::proved("restriction to B equals the base", String::new())
    } else {
        Claim::failed(
            "restriction to B equals the base",
            format!("{} edges inside B, base has {}", restricted.len(), base.edge_count()),
        )
    });
    let (pattern, _) = complete_partite(r - 1, a)?;
    cert.claims.push(match contains(&h, &pattern)? {
        None => Claim::proved("free of the forbidden pattern", "exhaustive containment search".into()),
        Some(emb) => Claim::failed("free of the forbidden pattern", format!("embedding {:?}", emb.map())),
    });
    let cliques = count_complete_subsets(&h, r);
    let bound = (na * base.edge_count()) as u64;
    let detail = format!("{cliques} cliques, bound {na} * {} = {bound}", base.edge_count());
    cert.claims.push(if cliques >= bound {
        Claim::proved("clique count at least |A| * e(base)", detail)
    } else {
        Claim::failed("clique count at least |A| * e(base)", detail)
    });
    cert.claimed_cliques = Some(cliques);
    let cert = cert.into_checked()?;
    Ok((h, cert))
}

/// [`lb4_construct`] with the witness of an extremal record as base.
pub fn lb4_from_record(
    n: usize,
    r: usize,
    a: &[usize],
    base: &ExtremalRecord,
) -> Result<(UniformHypergraph, ConstructionCertificate)> {
    lb4_construct(n, r, a, &base.witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::{exact_ex, ExactOptions};

    fn c4_free_base(n: usize) -> ExtremalRecord {
        let k2 = UniformHypergraph::complete(2, 2).unwrap();
        let c4 = complete_partite(2, &[2, 2]).unwrap().0;
        exact_ex(n, &k2, &c4, &ExactOptions::default()).unwrap()
    }

    #[test]
    fn six_vertices_c4_base() {
        let base = c4_free_base(4);
        assert_eq!(base.value, 4);
        let (h, cert) = lb4_from_record(6, 3, &[2, 2, 2], &base).unwrap();
        assert_eq!(h.n(), 6);
        assert!(cert.claimed_cliques.unwrap() >= 2 * 4);
    }

    #[test]
    fn matching_base() {
        let matching = UniformHypergraph::new(6, 2, [[0, 1], [2, 3], [4, 5]]).unwrap();
        let (_, cert) = lb4_construct(9, 3, &[1, 2, 2], &matching).unwrap();
        assert!(cert.claimed_cliques.unwrap() >= 9);
    }

    #[test]
    fn trivial_case_has_no_cliques() {
        let empty = UniformHypergraph::empty(4, 2).unwrap();
        let (_, cert) = lb4_construct(6, 3, &[1, 1, 3], &empty).unwrap();
        assert_eq!(cert.claimed_cliques, Some(0));
    }

    #[test]
    fn rejects_bad_base() {
        let k4 = UniformHypergraph::complete(4, 2).unwrap();
        assert!(matches!(
            lb4_construct(6, 3, &[2, 2, 2], &k4),
            Err(Error::Precondition(_))
        ));
        let wrong_size = UniformHypergraph::empty(5, 2).unwrap();
        assert!(lb4_construct(6, 3, &[2, 2, 2], &wrong_size).is_err());
    }
}
