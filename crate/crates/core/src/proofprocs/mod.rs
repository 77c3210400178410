//! Constructive steps of the upper-bound arguments: shadow lifting, greedy
//! edge-disjoint clique extraction, the shared-edge family and its
//! probabilistic thinning, and the aligned-partition blowup finder.

mod blowup;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

pub use blowup::{
    aligned_copies, auxiliary_h, find_blowup, search_partition, BlowupEmbedding, FindOptions,
    FindReport, PartitionSampler, PartitionSearch, TryOutcome, TryRecord,
};

use crate::counting::{binomial, complete_subsets, edge_multiplicity, CliqueFamily};
use crate::error::{Error, Result};
use crate::hypercore::{co_neighborhood, Edge, UniformHypergraph};

/// One lifting step: the `(s+1)`-graph of `(s+1)`-sets all of whose
/// `s`-subsets are edges of `g`.
pub fn lift_shadow(g: &UniformHypergraph) -> Result<UniformHypergraph> {
    let s = g.uniformity();
    if s < 2 {
        return Err(Error::InvalidParameter(format!("lifting needs uniformity >= 2, got {s}")));
    }
    UniformHypergraph::from_edges(g.n(), s + 1, complete_subsets(g, s + 1))
}

/// Repeated [`lift_shadow`] up to uniformity `r`.
pub fn lift_to(g: &UniformHypergraph, r: usize) -> Result<UniformHypergraph> {
    if r < g.uniformity() {
        return Err(Error::InvalidParameter(format!(
            "target uniformity {r} below {}",
            g.uniformity()
        )));
    }
    let mut h = g.clone();
    while h.uniformity() < r {
        h = lift_shadow(&h)?;
    }
    Ok(h)
}

/// Maximal greedy subfamily of pairwise edge-disjoint cliques, members
/// taken in lexicographic order. Requires every host edge to lie in fewer
/// than `b` members; the output then has at least `|family| / (r(b-1))`
/// members.
pub fn edge_disjoint_greedy(
    g: &UniformHypergraph,
    family: &CliqueFamily,
    b: usize,
) -> Result<CliqueFamily> {
    if b < 2 {
        return Err(Error::InvalidParameter(format!("multiplicity bound b = {b} below 2")));
    }
    let mult = edge_multiplicity(g, family)?;
    if mult.max >= b {
        return Err(Error::Precondition(format!(
            "an edge lies in {} family cliques, bound is below {b}",
            mult.max
        )));
    }
    let r = family.r();
    let mut members = family.members().to_vec();
    members.sort_unstable();
    let mut used: FxHashSet<Edge> = FxHashSet::default();
    let mut out = Vec::new();
    for m in members {
        let subs = m.subsets(r - 1);
        if subs.iter().all(|e| !used.contains(e)) {
            used.extend(subs);
            out.push(m);
        }
    }
    if out.len() * r * (b - 1) < family.len() {
        return Err(Error::Verification(format!(
            "greedy kept {} of {} cliques, below the bound for r = {r}, b = {b}",
            out.len(),
            family.len()
        )));
    }
    Ok(CliqueFamily::from_trusted(r, out))
}

/// Size of the family of `a`-sets of cliques sharing a common edge,
/// with the pair-count upper bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharedEdgeCount {
    pub r: usize,
    pub a: usize,
    /// Number of groups.
    pub groups: u128,
    /// `sum over a-sets V of |co-neighborhood(V)|`.
    pub pair_count: u128,
    /// Largest co-neighborhood over all `a`-sets.
    pub max_co_neighborhood: usize,
    /// `C(n, a) * max_co_neighborhood`.
    pub bound: u128,
}

/// Counts groups of `a` cliques of `g` through a common edge.
///
/// Two distinct `r`-sets share at most one `(r-1)`-set, so a group has
/// exactly one common edge and `|groups| = sum_e C(c(e), a)`, where `c(e)`
/// counts cliques through `e`. The same groups correspond one-to-one to
/// pairs `(apex set V, edge of G(V))`, which gives `pair_count`.
pub fn shared_edge_count(g: &UniformHypergraph, r: usize, a: usize) -> Result<SharedEdgeCount> {
    if a < 2 {
        return Err(Error::InvalidParameter(format!("group size a = {a} below 2")));
    }
    let family = crate::counting::cliques(g, r)?;
    let groups = groups_by_edge(&family)
        .values()
        .map(|c| binomial(c.len() as u64, a as u64) as u128)
        .sum();
    let mut pair_count = 0u128;
    let mut max_co = 0usize;
    for vs in crate::hypercore::mask_subsets(g.vertex_mask(), a) {
        let vs: Vec<usize> = Edge::from_mask(vs).to_vec();
        let k = co_neighborhood(g, &vs)?.edge_count();
        pair_count += k as u128;
        max_co = max_co.max(k);
    }
    let bound = binomial(g.n() as u64, a as u64) as u128 * max_co as u128;
    Ok(SharedEdgeCount {
        r,
        a,
        groups,
        pair_count,
        max_co_neighborhood: max_co,
        bound,
    })
}

/// For each edge, the indices of family members through it, ascending.
fn groups_by_edge(family: &CliqueFamily) -> FxHashMap<Edge, Vec<usize>> {
    let mut by_edge: FxHashMap<Edge, Vec<usize>> = FxHashMap::default();
    for (i, m) in family.members().iter().enumerate() {
        for e in m.subsets(family.r() - 1) {
            by_edge.entry(e).or_default().push(i);
        }
    }
    by_edge
}

/// Retention probability `p` with `p^{a-1} = N / (2A)`, so that
/// `p^a A = pN / 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThinningPlan {
    /// `N`, the number of cliques.
    pub cliques: u64,
    /// `A`, the number of groups.
    pub groups: u128,
    pub a: usize,
    /// `p^{a-1}` exactly; `None` when `A = 0`.
    pub p_power: Option<Ratio<u128>>,
    /// `p` in floating point; infinite when `A = 0`.
    pub p: f64,
    pub seed: u64,
}

impl ThinningPlan {
    pub fn new(cliques: u64, groups: u128, a: usize, seed: u64) -> Result<ThinningPlan> {
        if a < 2 {
            return Err(Error::InvalidParameter(format!("group size a = {a} below 2")));
        }
        let (p_power, p) = if groups == 0 {
            (None, f64::INFINITY)
        } else {
            let x = Ratio::new(cliques as u128, 2 * groups);
            let f = *x.numer() as f64 / *x.denom() as f64;
            (Some(x), f.powf(1.0 / (a - 1) as f64))
        };
        Ok(ThinningPlan {
            cliques,
            groups,
            a,
            p_power,
            p,
            seed,
        })
    }

    /// Whether `p <= 1`, decided on the exact rational `p^{a-1}`.
    pub fn is_probability(&self) -> bool {
        self.p_power.is_some_and(|x| x <= Ratio::from_integer(1))
    }

    /// `p^{a-1} A = N / 2`, checked exactly.
    pub fn balance_holds(&self) -> bool {
        match self.p_power {
            None => self.groups == 0,
            Some(x) => x * Ratio::from_integer(self.groups) == Ratio::new(self.cliques as u128, 2),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThinningBranch {
    /// `|groups| <= N/2`: delete one clique per group directly.
    Direct,
    /// Sample with the plan's `p`, then delete.
    Sampled,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThinningOutcome {
    pub branch: ThinningBranch,
    pub plan: ThinningPlan,
    /// Members left after sampling, before deletion.
    pub sampled: usize,
    pub deleted: usize,
    pub family: CliqueFamily,
}

impl ThinningOutcome {
    /// One JSON object summarizing the run.
    pub fn trace_line(&self) -> String {
        serde_json::json!({
            "step": "thin",
            "branch": self.branch,
            "cliques": self.plan.cliques,
            "groups": self.plan.groups.to_string(),
            "a": self.plan.a,
            "p_power": self.plan.p_power.map(|x| x.to_string()),
            "p": if self.plan.p.is_finite() { Some(self.plan.p) } else { None },
            "seed": self.plan.seed,
            "sampled": self.sampled,
            "deleted": self.deleted,
            "kept": self.family.len(),
        })
        .to_string()
    }
}

/// Thins `family` so that no host edge lies in `a` or more of its members.
///
/// If the groups number at most `N/2` cliques are deleted directly;
/// otherwise each member is kept independently with probability `p` from
/// [`ThinningPlan`] (one ChaCha8 draw per member in lexicographic order)
/// before deleting. Deletion walks host edges in lexicographic order and,
/// while `a` survivors contain the edge, removes the first of them.
pub fn thin_cliques(family: &CliqueFamily, a: usize, seed: u64) -> Result<ThinningOutcome> {
    if a < 2 {
        return Err(Error::InvalidParameter(format!("group size a = {a} below 2")));
    }
    let mut members = family.members().to_vec();
    members.sort_unstable();
    let sorted = CliqueFamily::from_trusted(family.r(), members);
    let by_edge = groups_by_edge(&sorted);
    let groups: u128 = by_edge
        .values()
        .map(|c| binomial(c.len() as u64, a as u64) as u128)
        .sum();
    let n = sorted.len() as u64;
    let plan = ThinningPlan::new(n, groups, a, seed)?;
    let mut alive = vec![true; sorted.len()];
    let branch = if 2 * groups <= n as u128 {
        ThinningBranch::Direct
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for slot in alive.iter_mut() {
            *slot = rng.gen::<f64>() < plan.p;
        }
        ThinningBranch::Sampled
    };
    let sampled = alive.iter().filter(|&&x| x).count();
    let mut edges: Vec<(&Edge, &Vec<usize>)> = by_edge.iter().filter(|(_, c)| c.len() >= a).collect();
    edges.sort_unstable_by_key(|(e, _)| **e);
    let mut deleted = 0;
    for (_, through) in edges {
        loop {
            let live: Vec<usize> = through.iter().copied().filter(|&i| alive[i]).take(a).collect();
            if live.len() < a {
                break;
            }
            alive[live[0]] = false;
            deleted += 1;
        }
    }
    let kept = sorted
        .members()
        .iter()
        .zip(&alive)
        .filter(|(_, &keep)| keep)
        .map(|(m, _)| *m)
        .collect();
    let out = CliqueFamily::from_trusted(sorted.r(), kept);
    if let Some(max) = max_multiplicity(&out) {
        if max >= a {
            return Err(Error::Verification(format!(
                "thinned family still has an edge in {max} cliques"
            )));
        }
    }
    Ok(ThinningOutcome {
        branch,
        plan,
        sampled,
        deleted,
        family: out,
    })
}

fn max_multiplicity(family: &CliqueFamily) -> Option<usize> {
    groups_by_edge(family).values().map(Vec::len).max()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::cliques;
    use crate::hypercore::shadow;

    fn k(n: usize, s: usize) -> UniformHypergraph {
        UniformHypergraph::complete(n, s).unwrap()
    }

    #[test]
    fn lifting_examples() {
        assert_eq!(lift_shadow(&k(4, 2)).unwrap(), k(4, 3));
        let c5 = UniformHypergraph::new(5, 2, [[0, 1], [1, 2], [2, 3], [3, 4], [0, 4]]).unwrap();
        assert_eq!(lift_shadow(&c5).unwrap().edge_count(), 0);
        assert_eq!(lift_to(&k(6, 2), 4).unwrap(), k(6, 4));
        let lifted = lift_shadow(&k(5, 2)).unwrap();
        assert_eq!(shadow(&lifted, 2).unwrap(), k(5, 2));
    }

    #[test]
    fn greedy_on_k4() {
        let g = k(4, 2);
        let fam = cliques(&g, 3).unwrap();
        let out = edge_disjoint_greedy(&g, &fam, 3).unwrap();
        assert_eq!(out.members(), &[Edge::from_vertices(&[0, 1, 2])]);
        assert!(edge_disjoint_greedy(&g, &fam, 2).is_err());
    }

    #[test]
    fn shared_edge_examples() {
        let c4 = shared_edge_count(&k(4, 2), 3, 2).unwrap();
        assert_eq!((c4.groups, c4.pair_count), (6, 6));
        let c5 = shared_edge_count(&k(5, 2), 3, 2).unwrap();
        assert_eq!(c5.groups, 30);
        assert!(c5.bound >= c5.groups);
        let tri = UniformHypergraph::new(4, 2, [[0, 1], [1, 2], [0, 2], [2, 3]]).unwrap();
        assert_eq!(shared_edge_count(&tri, 3, 2).unwrap().groups, 0);
    }

    #[test]
    fn plan_balance() {
        let plan = ThinningPlan::new(4, 6, 2, 0).unwrap();
        assert_eq!(plan.p_power, Some(Ratio::new(1, 3)));
        assert!(plan.is_probability() && plan.balance_holds());
        let loose = ThinningPlan::new(10, 2, 3, 0).unwrap();
        assert!(!loose.is_probability() && loose.balance_holds());
        assert!(!ThinningPlan::new(3, 0, 2, 0).unwrap().is_probability());
    }

    #[test]
    fn thinning_k4_triangles() {
        let fam = cliques(&k(4, 2), 3).unwrap();
        for seed in 0..20 {
            let out = thin_cliques(&fam, 2, seed).unwrap();
            assert_eq!(out.branch, ThinningBranch::Sampled);
            assert!(out.family.len() <= 1);
        }
    }

    #[test]
    fn disjoint_family_is_unchanged() {
        let g = UniformHypergraph::new(6, 2, [[0, 1], [1, 2], [0, 2], [3, 4], [4, 5], [3, 5]]).unwrap();
        let fam = cliques(&g, 3).unwrap();
        let out = thin_cliques(&fam, 2, 1).unwrap();
        assert_eq!(out.branch, ThinningBranch::Direct);
        assert_eq!(out.family, fam);
    }
}
