//! Subgraph embeddings: backtracking search with link-mask candidate pruning.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercore::{Edge, EdgeIndex, UniformHypergraph};

/// Largest pattern for which automorphisms are enumerated exhaustively.
pub const MAX_AUT_VERTICES: usize = 8;

/// An injective map from pattern vertices to host vertices under which every
/// pattern edge lands on a host edge (not necessarily induced).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Embedding {
    map: Vec<usize>,
}

impl Embedding {
    pub fn new(map: Vec<usize>) -> Embedding {
        Embedding { map }
    }

    /// `map()[i]` is the host image of pattern vertex `i`.
    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn image(&self, e: Edge) -> Edge {
        Edge::from_mask(e.vertices().fold(0u64, |m, v| m | 1u64 << self.map[v]))
    }

    /// Image of the pattern's vertex set.
    pub fn vertex_image(&self) -> Edge {
        Edge::from_vertices(&self.map)
    }

    /// Checks injectivity, ranges and edge preservation.
    pub fn validate(&self, pattern: &UniformHypergraph, host: &UniformHypergraph) -> Result<()> {
        if self.map.len() != pattern.n() {
            return Err(Error::Verification(format!(
                "map covers {} of {} pattern vertices",
                self.map.len(),
                pattern.n()
            )));
        }
        let mut seen = 0u64;
        for (p, &h) in self.map.iter().enumerate() {
            if h >= host.n() {
                return Err(Error::Verification(format!(
                    "pattern vertex {p} maps outside the host"
                )));
            }
            if seen >> h & 1 == 1 {
                return Err(Error::Verification(format!("host vertex {h} used twice")));
            }
            seen |= 1 << h;
        }
        for e in pattern.edges() {
            if !host.has_edge(self.image(*e)) {
                return Err(Error::Verification(format!(
                    "pattern edge {e:?} maps to non-edge {:?}",
                    self.image(*e)
                )));
            }
        }
        Ok(())
    }
}

/// A search order for one pattern, possibly with some pattern vertices
/// pinned in advance.
#[derive(Clone, Debug)]
pub(crate) struct Plan {
    order: Vec<usize>,
    /// Per position: pattern-vertex masks `e - v` of edges completed there.
    checks: Vec<Vec<u64>>,
    degrees: Vec<usize>,
    pinned: usize,
}

impl Plan {
    /// Pattern vertices in `pinned` come first, in the given order. The rest
    /// follow greedily by (edges completed, degree), ties to the lower label.
    pub(crate) fn new(pattern: &UniformHypergraph, pinned: &[usize]) -> Plan {
        let k = pattern.n();
        let degrees: Vec<usize> = (0..k).map(|v| pattern.degree(v)).collect();
        let mut order: Vec<usize> = pinned.to_vec();
        let mut placed = Edge::from_vertices(pinned);
        while order.len() < k {
            let mut best: Option<(usize, usize, usize)> = None;
            for v in (0..k).filter(|&v| !placed.contains(v)) {
                let done = pattern
                    .edges()
                    .iter()
                    .filter(|e| e.contains(v) && e.without(v).is_subset_of(placed))
                    .count();
                let key = (done, degrees[v], v);
                let better = match best {
                    None => true,
                    Some((d, g, u)) => (done, degrees[v]) > (d, g) || ((done, degrees[v]) == (d, g) && v < u),
                };
                if better {
                    best = Some(key);
                }
            }
            let v = best.expect("unplaced vertex exists").2;
            order.push(v);
            placed = placed.with(v);
        }
        let mut checks = Vec::with_capacity(k);
        let mut before = Edge::EMPTY;
        for &v in &order {
            let c = pattern
                .edges()
                .iter()
                .filter(|e| e.contains(v) && e.without(v).is_subset_of(before))
                .map(|e| e.without(v).mask())
                .collect();
            checks.push(c);
            before = before.with(v);
        }
        Plan {
            order,
            checks,
            degrees,
            pinned: pinned.len(),
        }
    }

    /// Runs the search; `pinned_hosts[i]` is the forced image of the `i`-th
    /// pinned pattern vertex. The visitor receives the full map and returns
    /// `false` to stop. Returns `false` if stopped early.
    pub(crate) fn run(
        &self,
        host: &EdgeIndex,
        n: usize,
        pinned_hosts: &[usize],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        self.run_within(host, n, pinned_hosts, None, visit)
    }

    /// As [`Plan::run`], with `allowed[v]` the host vertices pattern vertex
    /// `v` may map to.
    pub(crate) fn run_within(
        &self,
        host: &EdgeIndex,
        n: usize,
        pinned_hosts: &[usize],
        allowed: Option<&[u64]>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        debug_assert_eq!(pinned_hosts.len(), self.pinned);
        let k = self.order.len();
        if k > n {
            return true;
        }
        let mut map = vec![usize::MAX; k];
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut st = State {
            plan: self,
            host,
            all,
            pinned_hosts,
            allowed,
            map: &mut map,
            visit,
        };
        st.descend(0, 0)
    }
}

struct State<'a> {
    plan: &'a Plan,
    host: &'a EdgeIndex,
    all: u64,
    pinned_hosts: &'a [usize],
    allowed: Option<&'a [u64]>,
    map: &'a mut Vec<usize>,
    visit: &'a mut dyn FnMut(&[usize]) -> bool,
}

impl State<'_> {
    fn descend(&mut self, pos: usize, used: u64) -> bool {
        if pos == self.plan.order.len() {
            return (self.visit)(self.map);
        }
        let p = self.plan.order[pos];
        let mut cand = self.all & !used;
        if pos < self.plan.pinned {
            cand &= 1u64 << self.pinned_hosts[pos];
        }
        if let Some(allowed) = self.allowed {
            cand &= allowed[p];
        }
        for &rest in &self.plan.checks[pos] {
            let mut img = 0u64;
            let mut r = rest;
            while r != 0 {
                let v = r.trailing_zeros() as usize;
                r &= r - 1;
                img |= 1u64 << self.map[v];
            }
            cand &= self.host.link(Edge::from_mask(img));
            if cand == 0 {
                return true;
            }
        }
        let need = self.plan.degrees[p];
        while cand != 0 {
            let h = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            if self.host.degree(h) < need {
                continue;
            }
            self.map[p] = h;
            if !self.descend(pos + 1, used | 1u64 << h) {
                return false;
            }
        }
        self.map[p] = usize::MAX;
        true
    }
}

fn check_uniformity(host: &UniformHypergraph, pattern: &UniformHypergraph) -> Result<()> {
    if host.uniformity() != pattern.uniformity() {
        return Err(Error::UniformityMismatch {
            expected: host.uniformity(),
            got: pattern.uniformity(),
        });
    }
    Ok(())
}

/// Some embedding of `pattern` into `host`, if one exists. The result is the
/// first one met in a fixed search order, so it is deterministic.
pub fn contains(host: &UniformHypergraph, pattern: &UniformHypergraph) -> Result<Option<Embedding>> {
    check_uniformity(host, pattern)?;
    if pattern.n() > host.n() || pattern.edge_count() > host.edge_count() {
        return Ok(None);
    }
    Ok(first_embedding(host.index(), host.n(), &Plan::new(pattern, &[])))
}

pub(crate) fn first_embedding(host: &EdgeIndex, n: usize, plan: &Plan) -> Option<Embedding> {
    let mut found = None;
    plan.run(host, n, &[], &mut |m| {
        found = Some(Embedding::new(m.to_vec()));
        false
    });
    found
}

/// Number of embeddings (labelled copies) of `pattern` in `host`.
pub fn count_embeddings(host: &UniformHypergraph, pattern: &UniformHypergraph) -> Result<u64> {
    check_uniformity(host, pattern)?;
    let mut count = 0u64;
    Plan::new(pattern, &[]).run(host.index(), host.n(), &[], &mut |_| {
        count += 1;
        true
    });
    Ok(count)
}

/// Every automorphism of `pattern`, by brute force over all vertex permutations.
pub fn automorphisms(pattern: &UniformHypergraph) -> Result<Vec<Vec<usize>>> {
    let k = pattern.n();
    if k > MAX_AUT_VERTICES {
        return Err(Error::PatternTooLarge {
            vertices: k,
            max: MAX_AUT_VERTICES,
        });
    }
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..k).collect();
    permute(&mut perm, 0, &mut |p| {
        let ok = pattern.edges().iter().all(|e| {
            let img = e.vertices().fold(0u64, |m, v| m | 1u64 << p[v]);
            pattern.has_edge(Edge::from_mask(img))
        });
        if ok {
            out.push(p.to_vec());
        }
    });
    out.sort();
    Ok(out)
}

fn permute(perm: &mut [usize], i: usize, f: &mut dyn FnMut(&[usize])) {
    if i == perm.len() {
        f(perm);
        return;
    }
    for j in i..perm.len() {
        perm.swap(i, j);
        permute(perm, i + 1, f);
        perm.swap(i, j);
    }
}

/// Number of unlabelled copies of `pattern` in `host`: embeddings divided by
/// `|Aut(pattern)|`. Complete patterns are counted directly as complete subsets.
pub fn count_copies(host: &UniformHypergraph, pattern: &UniformHypergraph) -> Result<u64> {
    check_uniformity(host, pattern)?;
    let k = pattern.n();
    if k > MAX_AUT_VERTICES {
        return Err(Error::PatternTooLarge {
            vertices: k,
            max: MAX_AUT_VERTICES,
        });
    }
    if is_complete(pattern) {
        return Ok(super::cliques::count_complete_subsets(host, k));
    }
    let aut = automorphisms(pattern)?.len() as u64;
    Ok(count_embeddings(host, pattern)? / aut)
}

/// Prepared copy counter for repeated counts of one pattern.
pub(crate) struct CopyCounter {
    k: usize,
    complete: bool,
    plan: Plan,
    aut: u64,
}

impl CopyCounter {
    pub(crate) fn new(pattern: &UniformHypergraph) -> Result<CopyCounter> {
        let k = pattern.n();
        if k > MAX_AUT_VERTICES {
            return Err(Error::PatternTooLarge {
                vertices: k,
                max: MAX_AUT_VERTICES,
            });
        }
        Ok(CopyCounter {
            k,
            complete: is_complete(pattern),
            plan: Plan::new(pattern, &[]),
            aut: automorphisms(pattern)?.len() as u64,
        })
    }

    pub(crate) fn count(&self, host: &EdgeIndex, n: usize) -> u64 {
        if self.complete {
            return super::cliques::count_complete_subsets_in(host, n, self.k);
        }
        let mut count = 0u64;
        self.plan.run(host, n, &[], &mut |_| {
            count += 1;
            true
        });
        count / self.aut
    }
}

/// Whether `pattern` has every `s`-subset of its vertices as an edge.
pub fn is_complete(pattern: &UniformHypergraph) -> bool {
    pattern.edge_count() as u128 == binomial(pattern.n() as u64, pattern.uniformity() as u64)
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Searches for an embedding whose image contains the host edge `through`.
/// Used to test only the copies created by adding that edge.
pub(crate) struct ThroughSearch {
    /// One plan per pattern edge, with that edge's vertices pinned first.
    plans: Vec<(Vec<usize>, Plan)>,
}

impl ThroughSearch {
    pub(crate) fn new(pattern: &UniformHypergraph) -> ThroughSearch {
        let reps = edge_orbit_representatives(pattern);
        let plans = reps
            .into_iter()
            .map(|e| {
                let pinned = e.to_vec();
                let plan = Plan::new(pattern, &pinned);
                (pinned, plan)
            })
            .collect();
        ThroughSearch { plans }
    }

    pub(crate) fn find(&self, host: &EdgeIndex, n: usize, through: Edge) -> Option<Embedding> {
        let hosts = through.to_vec();
        let mut found = None;
        for (_, plan) in &self.plans {
            let mut perm = hosts.clone();
            permute_until(&mut perm, 0, &mut |p| {
                plan.run(host, n, p, &mut |m| {
                    found = Some(Embedding::new(m.to_vec()));
                    false
                });
                found.is_none()
            });
            if found.is_some() {
                break;
            }
        }
        found
    }
}

fn permute_until(perm: &mut [usize], i: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if i == perm.len() {
        return f(perm);
    }
    for j in i..perm.len() {
        perm.swap(i, j);
        let go = permute_until(perm, i + 1, f);
        perm.swap(i, j);
        if !go {
            return false;
        }
    }
    true
}

/// One edge per orbit of `Aut(pattern)` on edges; every edge when the
/// pattern is too large for exhaustive automorphisms.
fn edge_orbit_representatives(pattern: &UniformHypergraph) -> Vec<Edge> {
    let Ok(auts) = automorphisms(pattern) else {
        return pattern.edges().to_vec();
    };
    let mut reps = Vec::new();
    let mut covered = rustc_hash::FxHashSet::default();
    for &e in pattern.edges() {
        if covered.contains(&e) {
            continue;
        }
        reps.push(e);
        for a in &auts {
            covered.insert(Edge::from_mask(e.vertices().fold(0u64, |m, v| m | 1u64 << a[v])));
        }
    }
    reps
}
