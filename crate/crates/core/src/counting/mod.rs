//! Clique enumeration, subgraph containment, copy counting, blowup-freeness
//! and the exponent arithmetic of the known bounds.
//!
//! Copies are counted unlabelled: the number of embeddings divided by the
//! number of automorphisms of the pattern.

mod cliques;
mod embed;
pub mod exponents;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use cliques::{cliques, complete_subsets, count_complete_subsets, CliqueFamily};
pub use embed::{
    automorphisms, binomial, contains, count_copies, count_embeddings, is_complete, Embedding,
    MAX_AUT_VERTICES,
};
pub(crate) use embed::{first_embedding, CopyCounter, Plan, ThroughSearch};
pub use exponents::{exponents, ExponentReport, LowerBound, LowerKind};

use crate::error::{Error, Result};
use crate::hypercore::{blowup, text, BlowupSpec, Edge, UniformHypergraph};

/// Outcome of a blowup-freeness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Freeness {
    pub free: bool,
    /// An embedding of the materialized blowup when `free` is false.
    pub witness: Option<Embedding>,
}

/// Whether `g` contains no copy of the blowup described by `spec`.
pub fn is_blowup_free(g: &UniformHypergraph, spec: &BlowupSpec) -> Result<Freeness> {
    let (pattern, _) = blowup(spec)?;
    is_free_of(g, &pattern)
}

/// Whether `g` contains no copy of `pattern`.
pub fn is_free_of(g: &UniformHypergraph, pattern: &UniformHypergraph) -> Result<Freeness> {
    let witness = contains(g, pattern)?;
    Ok(Freeness {
        free: witness.is_none(),
        witness,
    })
}

/// For each host edge, how many family members contain it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplicity {
    pub counts: BTreeMap<Edge, usize>,
    pub max: usize,
}

impl Multiplicity {
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }
}

pub fn edge_multiplicity(g: &UniformHypergraph, family: &CliqueFamily) -> Result<Multiplicity> {
    let s = g.uniformity();
    if family.r() != s + 1 {
        return Err(Error::UniformityMismatch {
            expected: family.r() - 1,
            got: s,
        });
    }
    let mut counts: BTreeMap<Edge, usize> = g.edges().iter().map(|&e| (e, 0)).collect();
    for m in family.members() {
        for sub in m.subsets(s) {
            match counts.get_mut(&sub) {
                Some(c) => *c += 1,
                None => {
                    return Err(Error::Precondition(format!(
                        "family member {m:?} uses non-edge {sub:?}"
                    )))
                }
            }
        }
    }
    let max = counts.values().copied().max().unwrap_or(0);
    Ok(Multiplicity { counts, max })
}

/// Serializable record of an embedding, checkable against the host file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingCertificate {
    /// Pattern in the text hypergraph format.
    pub pattern: String,
    /// SHA-256 of the host's canonical text form.
    pub host_digest: String,
    pub map: Vec<usize>,
}

impl EmbeddingCertificate {
    pub fn new(pattern: &UniformHypergraph, host: &UniformHypergraph, emb: &Embedding) -> Self {
        EmbeddingCertificate {
            pattern: text::to_text(pattern),
            host_digest: text::digest(host),
            map: emb.map().to_vec(),
        }
    }

    /// Re-checks the certificate against `host`.
    pub fn verify(&self, host: &UniformHypergraph) -> Result<()> {
        if self.host_digest != text::digest(host) {
            return Err(Error::Verification("host digest mismatch".into()));
        }
        let pattern = text::from_text(&self.pattern)?;
        Embedding::new(self.map.clone()).validate(&pattern, host)
    }
}

/// Serializable multiplicity table: `edge -> count` rows plus the maximum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityCertificate {
    pub host_digest: String,
    pub rows: Vec<(Vec<usize>, usize)>,
    pub max: usize,
}

impl MultiplicityCertificate {
    pub fn new(host: &UniformHypergraph, m: &Multiplicity) -> Self {
        MultiplicityCertificate {
            host_digest: text::digest(host),
            rows: m.counts.iter().map(|(e, &c)| (e.to_vec(), c)).collect(),
            max: m.max,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::complete_partite;

    fn k(n: usize, s: usize) -> UniformHypergraph {
        UniformHypergraph::complete(n, s).unwrap()
    }

    fn diamond_spec() -> BlowupSpec {
        BlowupSpec::new(k(3, 2), vec![1, 1, 2]).unwrap()
    }

    #[test]
    fn cliques_examples() {
        assert_eq!(cliques(&k(4, 2), 3).unwrap().len(), 4);
        assert_eq!(cliques(&k(4, 3), 4).unwrap().len(), 1);
        assert!(cliques(&k(4, 3), 3).is_err());
        assert!(cliques(&k(4, 1), 2).is_err());
    }

    #[test]
    fn clique_order_is_lexicographic() {
        let fam = cliques(&k(5, 2), 3).unwrap();
        assert!(fam.members().windows(2).all(|w| w[0] < w[1]));
        assert_eq!(fam.members()[0], Edge::from_vertices(&[0, 1, 2]));
    }

    #[test]
    fn blowup_freeness_examples() {
        let tri_plus = UniformHypergraph::new(4, 2, [[0, 1], [1, 2], [0, 2]]).unwrap();
        let f = is_blowup_free(&tri_plus, &diamond_spec()).unwrap();
        assert!(f.free && f.witness.is_none());
        let f = is_blowup_free(&k(4, 2), &diamond_spec()).unwrap();
        assert!(!f.free);
        let (d, _) = complete_partite(2, &[1, 1, 2]).unwrap();
        f.witness.unwrap().validate(&d, &k(4, 2)).unwrap();
    }

    #[test]
    fn multiplicity_examples() {
        let g = k(4, 2);
        let m = edge_multiplicity(&g, &cliques(&g, 3).unwrap()).unwrap();
        assert!(m.counts.values().all(|&c| c == 2));
        let g5 = k(5, 2);
        let m5 = edge_multiplicity(&g5, &cliques(&g5, 3).unwrap()).unwrap();
        assert!(m5.counts.values().all(|&c| c == 3));
        assert_eq!(m5.total(), 3 * 10);
        // two edge-disjoint triangles sharing vertex 0
        let bow = UniformHypergraph::new(5, 2, [[0, 1], [1, 2], [0, 2], [0, 3], [3, 4], [0, 4]]).unwrap();
        let fam = cliques(&bow, 3).unwrap();
        assert_eq!(fam.len(), 2);
        assert_eq!(edge_multiplicity(&bow, &fam).unwrap().max, 1);
    }

    #[test]
    fn family_validation() {
        let g = k(4, 2).without_edges(&[Edge::from_vertices(&[0, 1])]);
        assert!(CliqueFamily::new(&g, 3, vec![Edge::from_vertices(&[0, 1, 2])]).is_err());
        assert!(CliqueFamily::new(&g, 3, vec![Edge::from_vertices(&[1, 2, 3])]).is_ok());
        let dup = vec![Edge::from_vertices(&[1, 2, 3]); 2];
        assert!(CliqueFamily::new(&g, 3, dup).is_err());
    }

    #[test]
    fn certificate_roundtrip() {
        let (d, _) = complete_partite(2, &[1, 1, 2]).unwrap();
        let g = k(4, 2);
        let emb = contains(&g, &d).unwrap().unwrap();
        let cert = EmbeddingCertificate::new(&d, &g, &emb);
        cert.verify(&g).unwrap();
        let json = serde_json::to_string(&cert).unwrap();
        let back: EmbeddingCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
        assert!(cert.verify(&k(5, 2)).is_err());
    }
}
