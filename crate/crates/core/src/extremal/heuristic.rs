//! Randomized local search for `F`-free hosts with many copies of `T`.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ExtremalRecord, Mode, SearchStats};
use crate::counting::{CopyCounter, ThroughSearch};
use crate::error::{Error, Result};
use crate::hypercore::{mask_subsets, Edge, EdgeIndex, UniformHypergraph};

#[derive(Clone, Debug)]
pub struct HeuristicOptions {
    pub seed: u64,
    /// Independent greedy starts.
    pub restarts: usize,
    /// Perturbation steps after each start.
    pub steps: usize,
}

impl Default for HeuristicOptions {
    fn default() -> Self {
        HeuristicOptions {
            seed: 0,
            restarts: 8,
            steps: 400,
        }
    }
}

struct State {
    index: EdgeIndex,
    edges: Vec<Edge>,
}

impl State {
    fn new(n: usize, s: usize) -> State {
        State {
            index: EdgeIndex::new(n, s),
            edges: Vec::new(),
        }
    }

    fn from_edges(n: usize, s: usize, edges: &[Edge]) -> State {
        State {
            index: EdgeIndex::from_edges(n, s, edges.iter().copied()),
            edges: edges.to_vec(),
        }
    }

    /// Adds every set of `order` that keeps the host free, in order.
    fn saturate(&mut self, order: &[Edge], through: &ThroughSearch, n: usize) {
        for &e in order {
            if self.index.contains(e) {
                continue;
            }
            self.index.insert(e);
            if through.find(&self.index, n, e).is_some() {
                self.index.remove(e);
            } else {
                self.edges.push(e);
            }
        }
    }

    fn remove_at(&mut self, i: usize) {
        let e = self.edges.swap_remove(i);
        self.index.remove(e);
    }
}

/// A lower bound on `ex(n, t, f)`: greedy saturation from random orders,
/// then random removals followed by re-saturation, keeping changes that do
/// not lower the count. Reproducible for a fixed seed.
pub fn heuristic_lower(
    n: usize,
    t: &UniformHypergraph,
    f: &UniformHypergraph,
    opts: &HeuristicOptions,
) -> Result<ExtremalRecord> {
    if t.uniformity() != f.uniformity() {
        return Err(Error::UniformityMismatch {
            expected: t.uniformity(),
            got: f.uniformity(),
        });
    }
    let s = f.uniformity();
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let empty = UniformHypergraph::empty(n, s)?;
    if f.edge_count() == 0 || t.n() > n {
        return Ok(ExtremalRecord {
            n,
            pattern: t.clone(),
            forbidden: f.clone(),
            value: 0,
            witness: empty,
            mode: Mode::Heuristic,
            stats: SearchStats {
                nodes: 0,
                elapsed: started.elapsed(),
                timed_out: false,
            },
        });
    }
    let counter = CopyCounter::new(t)?;
    let through = ThroughSearch::new(f);
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut pool: Vec<Edge> = mask_subsets(all, s).map(Edge::from_mask).collect();

    let mut best: (u64, Vec<Edge>) = (0, Vec::new());
    let mut nodes = 0u64;
    for _ in 0..opts.restarts.max(1) {
        pool.shuffle(&mut rng);
        let mut cur = State::new(n, s);
        cur.saturate(&pool, &through, n);
        let mut value = counter.count(&cur.index, n);
        nodes += 1;
        if value > best.0 || best.1.is_empty() && value == best.0 {
            best = (value, cur.edges.clone());
        }
        for _ in 0..opts.steps {
            if cur.edges.is_empty() {
                break;
            }
            let saved = cur.edges.clone();
            let drops = rng.gen_range(1..=cur.edges.len().min(3));
            for _ in 0..drops {
                let i = rng.gen_range(0..cur.edges.len());
                cur.remove_at(i);
            }
            pool.shuffle(&mut rng);
            cur.saturate(&pool, &through, n);
            let next = counter.count(&cur.index, n);
            nodes += 1;
            if next >= value {
                value = next;
                if value > best.0 {
                    best = (value, cur.edges.clone());
                }
            } else {
                cur = State::from_edges(n, s, &saved);
            }
        }
    }
    let witness = UniformHypergraph::from_edges(n, s, best.1)?;
    Ok(ExtremalRecord {
        n,
        pattern: t.clone(),
        forbidden: f.clone(),
        value: best.0,
        witness,
        mode: Mode::Heuristic,
        stats: SearchStats {
            nodes,
            elapsed: started.elapsed(),
            timed_out: false,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::complete_partite;

    #[test]
    fn c4_free_edges_on_ten_vertices() {
        let k2 = UniformHypergraph::complete(2, 2).unwrap();
        let c4 = complete_partite(2, &[2, 2]).unwrap().0;
        let rec = heuristic_lower(10, &k2, &c4, &HeuristicOptions::default()).unwrap();
        rec.verify().unwrap();
        assert!(rec.value >= 15, "got {}", rec.value);
    }

    #[test]
    fn reproducible() {
        let k3 = UniformHypergraph::complete(3, 2).unwrap();
        let diamond = complete_partite(2, &[1, 1, 2]).unwrap().0;
        let opts = HeuristicOptions { seed: 7, ..Default::default() };
        let a = heuristic_lower(6, &k3, &diamond, &opts).unwrap();
        let b = heuristic_lower(6, &k3, &diamond, &opts).unwrap();
        assert_eq!(a.witness, b.witness);
        assert!(a.value >= 2);
        a.verify().unwrap();
    }
}
