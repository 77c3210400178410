//! Lower-bound constructions, each returned with a certificate whose claims
//! were checked by the counting routines before the value is handed out.

pub mod apfree;
mod deletion;
mod lb4;
mod lbap;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use apfree::{apfree_set, find_progression, ApFreeSet, ApMode};
pub use deletion::{deletion_construct, suggested_probability};
pub use lb4::{lb4_construct, lb4_from_record, lb4_split};
pub use lbap::{lbap_hypergraph, lbap_part_sizes, lbap_shadow_graph, verify_lbap_properties, LbapClaim};

use crate::error::{Error, Result};
use crate::hypercore::{text, UniformHypergraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimStatus {
    /// Checked exhaustively.
    Proved,
    /// Checked on a sample only.
    Sampled,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub name: String,
    pub status: ClaimStatus,
    pub detail: String,
}

impl Claim {
    pub fn proved(name: &str, detail: String) -> Claim {
        Claim {
            name: name.to_string(),
            status: ClaimStatus::Proved,
            detail,
        }
    }

    pub fn failed(name: &str, detail: String) -> Claim {
        Claim {
            name: name.to_string(),
            status: ClaimStatus::Failed,
            detail,
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status != ClaimStatus::Failed
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionCertificate {
    pub construction: String,
    pub parameters: BTreeMap<String, serde_json::Value>,
    /// Shorthand of the pattern the output claims to avoid.
    pub forbidden: Option<String>,
    /// Clique count (exact, as counted on the output).
    pub claimed_cliques: Option<u64>,
    pub host_digest: String,
    pub vertices: usize,
    pub edges: usize,
    pub claims: Vec<Claim>,
}

impl ConstructionCertificate {
    pub fn new(construction: &str, host: &UniformHypergraph) -> ConstructionCertificate {
        ConstructionCertificate {
            construction: construction.to_string(),
            parameters: BTreeMap::new(),
            forbidden: None,
            claimed_cliques: None,
            host_digest: text::digest(host),
            vertices: host.n(),
            edges: host.edge_count(),
            claims: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.claims.iter().all(Claim::is_ok)
    }

    pub fn failures(&self) -> Vec<&Claim> {
        self.claims.iter().filter(|c| !c.is_ok()).collect()
    }

    /// Turns failed claims into an error carrying their details.
    pub fn into_checked(self) -> Result<ConstructionCertificate> {
        if self.passed() {
            return Ok(self);
        }
        let msg: Vec<String> = self
            .failures()
            .iter()
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect();
        Err(Error::Verification(format!(
            "{} certificate failed: {}",
            self.construction,
            msg.join("; ")
        )))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    /// Whether the certificate describes `host`.
    pub fn matches(&self, host: &UniformHypergraph) -> bool {
        self.host_digest == text::digest(host)
    }
}
