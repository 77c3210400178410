//! Aligned copies of a pattern over a vertex partition, the auxiliary
//! `(l-1)`-graph they span, and the search for a blowup through it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::counting::{count_copies, Embedding, Plan};
use crate::error::{Error, Result};
use crate::hypercore::{blowup, complete_partite, BlowupSpec, Edge, PartitionMap, UniformHypergraph};

/// Pattern embeddings collected up front for the anchored sampler.
const ANCHOR_SAMPLE: usize = 4096;

/// Embeddings `v_i -> x_i` of `f` into `g` with `x_i` in class `W_i`.
pub fn aligned_copies(
    g: &UniformHypergraph,
    f: &UniformHypergraph,
    partition: &PartitionMap,
) -> Result<Vec<Embedding>> {
    check_inputs(g, f, partition)?;
    let allowed: Vec<u64> = (0..f.n()).map(|i| partition.class_mask(i)).collect();
    let mut out = Vec::new();
    Plan::new(f, &[]).run_within(g.index(), g.n(), &[], Some(&allowed), &mut |m| {
        out.push(Embedding::new(m.to_vec()));
        true
    });
    out.sort_unstable_by(|a, b| a.map().cmp(b.map()));
    Ok(out)
}

fn check_inputs(g: &UniformHypergraph, f: &UniformHypergraph, partition: &PartitionMap) -> Result<()> {
    if f.uniformity() != g.uniformity() {
        return Err(Error::UniformityMismatch {
            expected: g.uniformity(),
            got: f.uniformity(),
        });
    }
    if partition.class_count() != f.n() {
        return Err(Error::InvalidPartition(format!(
            "{} classes for a pattern on {} vertices",
            partition.class_count(),
            f.n()
        )));
    }
    if partition.vertex_count() != g.n() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} vertices, host has {}",
            partition.vertex_count(),
            g.n()
        )));
    }
    Ok(())
}

/// The `(l-1)`-graph of all `(l-1)`-subsets of aligned copies.
pub fn auxiliary_h(
    g: &UniformHypergraph,
    f: &UniformHypergraph,
    partition: &PartitionMap,
) -> Result<UniformHypergraph> {
    let copies = aligned_copies(g, f, partition)?;
    auxiliary_from(g.n(), f.n(), &copies)
}

fn auxiliary_from(n: usize, l: usize, copies: &[Embedding]) -> Result<UniformHypergraph> {
    if l < 2 {
        return Err(Error::InvalidParameter(format!("pattern on {l} vertices is too small")));
    }
    let mut edges = Vec::with_capacity(copies.len() * l);
    for c in copies {
        let all = c.vertex_image();
        edges.extend(c.map().iter().map(|&x| all.without(x)));
    }
    Ok(UniformHypergraph::assemble(n, l - 1, edges))
}

/// Disjoint host classes `U_1, ..., U_l` with `U_i` replacing pattern vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupEmbedding {
    pub pattern: UniformHypergraph,
    pub classes: Vec<Vec<usize>>,
}

impl BlowupEmbedding {
    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// The embedding of the materialized blowup this describes.
    pub fn embedding(&self) -> Result<(UniformHypergraph, Embedding)> {
        if self.classes.len() != self.pattern.n() {
            return Err(Error::Verification(format!(
                "{} classes for a pattern on {} vertices",
                self.classes.len(),
                self.pattern.n()
            )));
        }
        let spec = BlowupSpec::new(self.pattern.clone(), self.sizes())?;
        let (b, parts) = blowup(&spec)?;
        let mut map = vec![0; b.n()];
        for (i, class) in parts.classes().iter().enumerate() {
            for (k, &u) in class.iter().enumerate() {
                map[u] = self.classes[i][k];
            }
        }
        Ok((b, Embedding::new(map)))
    }

    /// Checks disjointness and that every crossing choice of vertices maps
    /// each pattern edge onto a host edge.
    pub fn validate(&self, host: &UniformHypergraph) -> Result<()> {
        let (b, emb) = self.embedding()?;
        emb.validate(&b, host)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "pattern": self.pattern.edge_lists(),
            "pattern_vertices": self.pattern.n(),
            "classes": self.classes,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PartitionSampler {
    /// Every vertex gets an independent uniform class.
    Uniform,
    /// A random copy of the pattern fixes one vertex per class; every other
    /// vertex joins a random class whose copy vertex it can replace, or a
    /// uniform class if there is none.
    Anchored,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TryOutcome {
    BelowThreshold,
    NoBlowup,
    Found,
}

/// One partition attempt, as written to the trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TryRecord {
    pub attempt: usize,
    pub classes: Vec<Vec<usize>>,
    pub aligned: usize,
    pub threshold: u64,
    pub aux_edges: Option<usize>,
    pub outcome: TryOutcome,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FindOptions {
    pub seed: u64,
    pub retries: usize,
    pub sampler: PartitionSampler,
}

impl Default for FindOptions {
    fn default() -> Self {
        FindOptions {
            seed: 0,
            retries: 200,
            sampler: PartitionSampler::Anchored,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FindReport {
    /// Copies of the pattern in the host.
    pub copies: u64,
    /// `ceil(copies / l^l)`.
    pub threshold: u64,
    /// Attempts up to and including the first success.
    pub tries: Vec<TryRecord>,
    pub found: Option<BlowupEmbedding>,
}

impl FindReport {
    /// JSON lines: one per attempt, then a summary.
    pub fn trace_lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .tries
            .iter()
            .map(|t| {
                let mut v = serde_json::to_value(t).expect("record serializes");
                v["step"] = "partition".into();
                v.to_string()
            })
            .collect();
        out.push(
            serde_json::json!({
                "step": "result",
                "copies": self.copies,
                "threshold": self.threshold,
                "attempts": self.tries.len(),
                "found": self.found.as_ref().map(BlowupEmbedding::to_json),
            })
            .to_string(),
        );
        out
    }
}

struct Ctx<'a> {
    g: &'a UniformHypergraph,
    f: &'a UniformHypergraph,
    seed: u64,
    sampler: PartitionSampler,
    threshold: u64,
    anchors: Vec<Embedding>,
}

impl Ctx<'_> {
    fn new<'a>(
        g: &'a UniformHypergraph,
        f: &'a UniformHypergraph,
        seed: u64,
        sampler: PartitionSampler,
    ) -> Result<(Ctx<'a>, u64)> {
        let copies = count_copies(g, f)?;
        let l = f.n() as u32;
        let threshold = (l as u128)
            .checked_pow(l)
            .map_or(1, |d| (copies as u128).div_ceil(d) as u64);
        let mut anchors = Vec::new();
        if sampler == PartitionSampler::Anchored {
            Plan::new(f, &[]).run(g.index(), g.n(), &[], &mut |m| {
                anchors.push(Embedding::new(m.to_vec()));
                anchors.len() < ANCHOR_SAMPLE
            });
        }
        let ctx = Ctx {
            g,
            f,
            seed,
            sampler,
            threshold,
            anchors,
        };
        Ok((ctx, copies))
    }

    fn partition(&self, attempt: usize) -> Result<PartitionMap> {
        let l = self.f.n();
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(attempt as u64);
        let mut labels = vec![usize::MAX; self.g.n()];
        if self.sampler == PartitionSampler::Anchored && !self.anchors.is_empty() {
            let anchor = &self.anchors[rng.gen_range(0..self.anchors.len())];
            let x = anchor.map();
            for (i, &xi) in x.iter().enumerate() {
                labels[xi] = i;
            }
            let copy = anchor.vertex_image();
            for v in (0..self.g.n()).filter(|&v| !copy.contains(v)) {
                let fits: Vec<usize> = (0..l).filter(|&i| self.replaces(x, i, v)).collect();
                labels[v] = if fits.is_empty() {
                    rng.gen_range(0..l)
                } else {
                    fits[rng.gen_range(0..fits.len())]
                };
            }
        } else {
            for label in labels.iter_mut() {
                *label = rng.gen_range(0..l);
            }
        }
        PartitionMap::from_labels(&labels, l)
    }

    /// Whether `x` with `x_i` replaced by `v` is still an embedding.
    fn replaces(&self, x: &[usize], i: usize, v: usize) -> bool {
        self.f.edges().iter().filter(|e| e.contains(i)).all(|e| {
            let img = e
                .vertices()
                .fold(Edge::EMPTY, |acc, u| acc.with(if u == i { v } else { x[u] }));
            self.g.has_edge(img)
        })
    }

    fn attempt(&self, attempt: usize, target: Option<&(UniformHypergraph, PartitionMap)>) -> Result<(TryRecord, Option<BlowupEmbedding>)> {
        let partition = self.partition(attempt)?;
        let copies = aligned_copies(self.g, self.f, &partition)?;
        let mut record = TryRecord {
            attempt,
            classes: partition.classes().to_vec(),
            aligned: copies.len(),
            threshold: self.threshold,
            aux_edges: None,
            outcome: TryOutcome::BelowThreshold,
        };
        if (copies.len() as u64) < self.threshold {
            return Ok((record, None));
        }
        let Some((pattern, parts)) = target else {
            record.outcome = TryOutcome::Found;
            return Ok((record, None));
        };
        let h = auxiliary_from(self.g.n(), self.f.n(), &copies)?;
        record.aux_edges = Some(h.edge_count());
        record.outcome = TryOutcome::NoBlowup;
        let allowed: Vec<u64> = (0..pattern.n())
            .map(|u| partition.class_mask(parts.class_of(u)))
            .collect();
        let mut hit = None;
        Plan::new(pattern, &[]).run_within(h.index(), h.n(), &[], Some(&allowed), &mut |m| {
            hit = Some(m.to_vec());
            false
        });
        let Some(map) = hit else {
            return Ok((record, None));
        };
        let classes = parts
            .classes()
            .iter()
            .map(|c| {
                let mut us: Vec<usize> = c.iter().map(|&u| map[u]).collect();
                us.sort_unstable();
                us
            })
            .collect();
        let found = BlowupEmbedding {
            pattern: self.f.clone(),
            classes,
        };
        found.validate(self.g).map_err(|e| {
            Error::Verification(format!("auxiliary blowup did not pull back: {e}"))
        })?;
        record.outcome = TryOutcome::Found;
        Ok((record, Some(found)))
    }

    /// Runs attempts `0..retries` in parallel batches and stops at the
    /// lowest-numbered attempt with outcome `Found`.
    fn run(
        &self,
        retries: usize,
        target: Option<&(UniformHypergraph, PartitionMap)>,
    ) -> Result<(Vec<TryRecord>, Option<BlowupEmbedding>)> {
        let batch = 2 * rayon::current_num_threads().max(1);
        let mut tries = Vec::new();
        let mut start = 0;
        while start < retries {
            let end = (start + batch).min(retries);
            let results: Vec<_> = (start..end)
                .into_par_iter()
                .map(|i| self.attempt(i, target))
                .collect();
            for res in results {
                let (record, found) = res?;
                let done = record.outcome == TryOutcome::Found;
                tries.push(record);
                if done {
                    return Ok((tries, found));
                }
            }
            start = end;
        }
        Ok((tries, None))
    }
}

/// The first partition (over attempts `0..retries`) with at least
/// `ceil(N / l^l)` aligned copies, `N` the number of copies of `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionSearch {
    pub copies: u64,
    pub threshold: u64,
    pub tries: Vec<TryRecord>,
    pub partition: Option<PartitionMap>,
}

pub fn search_partition(
    g: &UniformHypergraph,
    f: &UniformHypergraph,
    seed: u64,
    retries: usize,
    sampler: PartitionSampler,
) -> Result<PartitionSearch> {
    let (ctx, copies) = Ctx::new(g, f, seed, sampler)?;
    let (tries, _) = ctx.run(retries, None)?;
    let partition = match tries.last() {
        Some(t) if t.outcome == TryOutcome::Found => Some(PartitionMap::new(g.n(), t.classes.clone())?),
        _ => None,
    };
    Ok(PartitionSearch {
        copies,
        threshold: ctx.threshold,
        tries,
        partition,
    })
}

/// Looks for `f(a, ..., a)` in `g`: partitions passing the aligned-copy
/// threshold give an auxiliary `(l-1)`-graph, in which a copy of
/// `K_l^{(l-1)}(a)` with class `i` inside `W_i` is searched for and pulled
/// back to `g`. Every returned embedding has been validated against `g`.
pub fn find_blowup(
    g: &UniformHypergraph,
    f: &UniformHypergraph,
    a: usize,
    opts: &FindOptions,
) -> Result<FindReport> {
    let l = f.n();
    if l < g.uniformity() + 1 {
        return Err(Error::Precondition(format!(
            "pattern has {l} vertices, need at least {}",
            g.uniformity() + 1
        )));
    }
    if a == 0 {
        return Err(Error::InvalidParameter("blowup size a must be positive".into()));
    }
    let (ctx, copies) = Ctx::new(g, f, opts.seed, opts.sampler)?;
    let target = complete_partite(l - 1, &vec![a; l])?;
    let (tries, found) = ctx.run(opts.retries, Some(&target))?;
    Ok(FindReport {
        copies,
        threshold: ctx.threshold,
        tries,
        found,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blown(s: usize, l: usize, a: usize) -> (UniformHypergraph, PartitionMap) {
        complete_partite(s, &vec![a; l]).unwrap()
    }

    #[test]
    fn aligned_in_natural_partition() {
        let (g, parts) = blown(2, 3, 2);
        let k3 = UniformHypergraph::complete(3, 2).unwrap();
        assert_eq!(aligned_copies(&g, &k3, &parts).unwrap().len(), 8);
        let h = auxiliary_h(&g, &k3, &parts).unwrap();
        assert_eq!(h.edge_count(), 12);
    }

    #[test]
    fn single_copy_gives_one_clique() {
        let k3 = UniformHypergraph::complete(3, 2).unwrap();
        let parts = PartitionMap::consecutive(&[1, 1, 1]);
        let h = auxiliary_h(&k3, &k3, &parts).unwrap();
        assert_eq!(h.edge_count(), 3);
        let empty = UniformHypergraph::empty(3, 2).unwrap();
        assert_eq!(auxiliary_h(&empty, &k3, &parts).unwrap().edge_count(), 0);
    }

    #[test]
    fn finds_triangle_blowup() {
        let (g, _) = blown(2, 3, 3);
        let k3 = UniformHypergraph::complete(3, 2).unwrap();
        let report = find_blowup(&g, &k3, 2, &FindOptions::default()).unwrap();
        let found = report.found.expect("blowup present");
        assert_eq!(found.sizes(), vec![2, 2, 2]);
        found.validate(&g).unwrap();
    }

    #[test]
    fn reports_none_when_absent() {
        let c6 = UniformHypergraph::new(6, 2, [[0, 1], [1, 2], [2, 3], [3, 4], [4, 5], [0, 5]]).unwrap();
        let k3 = UniformHypergraph::complete(3, 2).unwrap();
        let report = find_blowup(&c6, &k3, 2, &FindOptions { retries: 5, ..Default::default() }).unwrap();
        assert!(report.found.is_none());
        assert_eq!(report.tries.len(), 5);
    }

    #[test]
    fn rejects_small_pattern() {
        let g = UniformHypergraph::complete(5, 3).unwrap();
        let f = UniformHypergraph::complete(3, 3).unwrap();
        assert!(find_blowup(&g, &f, 2, &FindOptions::default()).is_err());
    }
}
