//! Orderly generation of `F`-free hypergraphs up to isomorphism.
//!
//! A node is a canonical hypergraph (its own labelling maximizes the
//! incidence bitstring). Its children add one potential edge of colex rank
//! above every present edge and are kept when `F`-free and canonical.
//! Canonicity is hereditary under removing the last edge, so each
//! isomorphism class is visited exactly once.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::canon::{Binomials, Labeller};
use super::{ExtremalRecord, Mode, SearchStats};
use crate::counting::{binomial, contains, CopyCounter, ThroughSearch};
use crate::error::{Error, Result};
use crate::hypercore::{mask_subsets, Edge, EdgeIndex, UniformHypergraph};

/// Largest `C(n, s)` searched by default.
pub const DEFAULT_SLOT_LIMIT: u128 = 36;
/// Largest `C(n, s)` searched when the extended guard is enabled.
pub const EXTENDED_SLOT_LIMIT: u128 = 60;

#[derive(Clone, Debug, Default)]
pub struct ExactOptions {
    /// Worker threads; 0 uses the global pool.
    pub workers: usize,
    pub timeout: Option<Duration>,
    /// Raise the guard from [`DEFAULT_SLOT_LIMIT`] to [`EXTENDED_SLOT_LIMIT`].
    pub extended: bool,
}

impl ExactOptions {
    pub fn slot_limit(&self) -> u128 {
        if self.extended {
            EXTENDED_SLOT_LIMIT
        } else {
            DEFAULT_SLOT_LIMIT
        }
    }
}

/// Best node so far. Larger value wins, then the smaller canonical bitstring.
#[derive(Clone, Debug)]
struct Best {
    value: u64,
    bits: u128,
    edges: Vec<Edge>,
}

impl Best {
    fn cmp_rank(&self, other: &Best) -> Ordering {
        self.value
            .cmp(&other.value)
            .then_with(|| other.bits.cmp(&self.bits))
    }

    fn merge(a: Option<Best>, b: Option<Best>) -> Option<Best> {
        match (a, b) {
            (Some(x), Some(y)) => Some(if y.cmp_rank(&x) == Ordering::Greater { y } else { x }),
            (x, None) => x,
            (None, y) => y,
        }
    }
}

struct Ctx<'a> {
    n: usize,
    s: usize,
    slots: usize,
    /// Potential edges in colex order.
    sets: Vec<Edge>,
    binom: Binomials,
    through: ThroughSearch,
    counter: &'a CopyCounter,
    stop: AtomicBool,
    deadline: Option<Instant>,
}

impl Ctx<'_> {
    fn bit(&self, rank: usize) -> u128 {
        1u128 << (self.slots - 1 - rank)
    }

    fn is_canonical(&self, edges: &[Edge]) -> bool {
        let g = UniformHypergraph::assemble(self.n, self.s, edges.to_vec());
        Labeller::new(&g, &self.binom)
            .map(|l| l.identity_is_max())
            .unwrap_or(false)
    }
}

struct Walk {
    index: EdgeIndex,
    edges: Vec<Edge>,
    last: Option<usize>,
    bits: u128,
    nodes: u64,
    best: Option<Best>,
}

impl Walk {
    fn new(ctx: &Ctx<'_>, ranks: &[usize]) -> Walk {
        let edges: Vec<Edge> = ranks.iter().map(|&r| ctx.sets[r]).collect();
        Walk {
            index: EdgeIndex::from_edges(ctx.n, ctx.s, edges.iter().copied()),
            edges,
            last: ranks.last().copied(),
            bits: ranks.iter().fold(0, |acc, &r| acc | ctx.bit(r)),
            nodes: 0,
            best: None,
        }
    }

    fn visit(&mut self, ctx: &Ctx<'_>) {
        self.nodes += 1;
        if self.nodes % 256 == 0 {
            if let Some(d) = ctx.deadline {
                if Instant::now() >= d {
                    ctx.stop.store(true, AtomicOrdering::Relaxed);
                }
            }
        }
        let here = Best {
            value: ctx.counter.count(&self.index, ctx.n),
            bits: self.bits,
            edges: Vec::new(),
        };
        let better = match &self.best {
            None => true,
            Some(b) => here.cmp_rank(b) == Ordering::Greater,
        };
        if better {
            self.best = Some(Best {
                edges: self.edges.clone(),
                ..here
            });
        }
    }

    /// Ranks of the children of the current node.
    fn children(&mut self, ctx: &Ctx<'_>) -> Vec<usize> {
        let start = self.last.map_or(0, |l| l + 1);
        let mut out = Vec::new();
        for rank in start..ctx.slots {
            if self.try_push(ctx, rank) {
                out.push(rank);
                self.pop(ctx);
            }
        }
        out
    }

    fn try_push(&mut self, ctx: &Ctx<'_>, rank: usize) -> bool {
        let e = ctx.sets[rank];
        self.index.insert(e);
        if ctx.through.find(&self.index, ctx.n, e).is_some() {
            self.index.remove(e);
            return false;
        }
        self.edges.push(e);
        if !ctx.is_canonical(&self.edges) {
            self.edges.pop();
            self.index.remove(e);
            return false;
        }
        self.bits |= ctx.bit(rank);
        true
    }

    fn pop(&mut self, ctx: &Ctx<'_>) {
        let e = self.edges.pop().expect("pushed edge");
        self.index.remove(e);
        let rank = ctx.sets.iter().position(|&x| x == e).expect("potential edge");
        self.bits &= !ctx.bit(rank);
    }

    fn dfs(&mut self, ctx: &Ctx<'_>) {
        self.visit(ctx);
        if ctx.stop.load(AtomicOrdering::Relaxed) {
            return;
        }
        let start = self.last.map_or(0, |l| l + 1);
        let saved = self.last;
        for rank in start..ctx.slots {
            if self.try_push(ctx, rank) {
                self.last = Some(rank);
                self.dfs(ctx);
                self.last = saved;
                self.pop_known(ctx, rank);
                if ctx.stop.load(AtomicOrdering::Relaxed) {
                    return;
                }
            }
        }
    }

    fn pop_known(&mut self, ctx: &Ctx<'_>, rank: usize) {
        let e = self.edges.pop().expect("pushed edge");
        self.index.remove(e);
        self.bits &= !ctx.bit(rank);
    }
}

fn check_pair(t: &UniformHypergraph, f: &UniformHypergraph) -> Result<()> {
    if t.uniformity() != f.uniformity() {
        return Err(Error::UniformityMismatch {
            expected: t.uniformity(),
            got: f.uniformity(),
        });
    }
    Ok(())
}

/// Record for a trivial instance whose answer is known without search.
fn direct(
    n: usize,
    t: &UniformHypergraph,
    f: &UniformHypergraph,
    witness: UniformHypergraph,
    started: Instant,
) -> Result<ExtremalRecord> {
    let value = crate::counting::count_copies(&witness, t)?;
    Ok(ExtremalRecord {
        n,
        pattern: t.clone(),
        forbidden: f.clone(),
        value,
        witness,
        mode: Mode::Exact,
        stats: SearchStats {
            nodes: 1,
            elapsed: started.elapsed(),
            timed_out: false,
        },
    })
}

/// The exact maximum number of copies of `t` in an `f`-free `s`-graph on
/// `n` vertices, with the maximizer of least canonical bitstring as witness.
///
/// Fails when `C(n, s)` exceeds the guard or when no `n`-vertex hypergraph is
/// `f`-free. If the time budget runs out, the best hypergraph seen so far is
/// returned with mode [`Mode::Heuristic`].
pub fn exact_ex(
    n: usize,
    t: &UniformHypergraph,
    f: &UniformHypergraph,
    opts: &ExactOptions,
) -> Result<ExtremalRecord> {
    check_pair(t, f)?;
    let s = f.uniformity();
    let slots = binomial(n as u64, s as u64);
    if slots > opts.slot_limit() {
        return Err(Error::Infeasible(format!(
            "C({n},{s}) = {slots} potential edges exceeds the exact-search limit {}",
            opts.slot_limit()
        )));
    }
    if f.edge_count() == 0 && f.n() <= n {
        return Err(Error::Infeasible(format!(
            "every {n}-vertex hypergraph contains the edgeless forbidden hypergraph"
        )));
    }
    let started = Instant::now();
    let empty = UniformHypergraph::empty(n, s)?;
    if t.n() > n {
        return direct(n, t, f, empty, started);
    }
    let counter = CopyCounter::new(t)?;
    let complete = UniformHypergraph::complete(n, s)?;
    if contains(&complete, f)?.is_none() {
        return direct(n, t, f, complete, started);
    }

    let binom = Binomials::new();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut sets: Vec<Edge> = mask_subsets(all, s).map(Edge::from_mask).collect();
    sets.sort_by_key(|e| binom.colex_rank(e.mask()));
    let ctx = Ctx {
        n,
        s,
        slots: slots as usize,
        sets,
        binom,
        through: ThroughSearch::new(f),
        counter: &counter,
        stop: AtomicBool::new(false),
        deadline: opts.timeout.map(|d| started + d),
    };

    let run = || search(&ctx, opts.workers.max(1));
    let (best, nodes) = if opts.workers == 0 {
        run()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.workers)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?
            .install(run)
    };
    let best = best.expect("the empty hypergraph is always visited");
    let timed_out = ctx.stop.load(AtomicOrdering::Relaxed);
    let witness = UniformHypergraph::assemble(n, s, best.edges);
    Ok(ExtremalRecord {
        n,
        pattern: t.clone(),
        forbidden: f.clone(),
        value: best.value,
        witness,
        mode: if timed_out { Mode::Heuristic } else { Mode::Exact },
        stats: SearchStats {
            nodes,
            elapsed: started.elapsed(),
            timed_out,
        },
    })
}

/// Expands the tree breadth-first until the frontier can feed every worker,
/// then searches the frontier subtrees in parallel.
fn search(ctx: &Ctx<'_>, workers: usize) -> (Option<Best>, u64) {
    let target = 16 * workers.max(rayon::current_num_threads());
    let mut best = None;
    let mut nodes = 0u64;
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    while !frontier.is_empty() && frontier.len() < target {
        let mut next = Vec::new();
        for ranks in &frontier {
            let mut walk = Walk::new(ctx, ranks);
            walk.visit(ctx);
            nodes += walk.nodes;
            best = Best::merge(best, walk.best.take());
            for child in walk.children(ctx) {
                let mut r = ranks.clone();
                r.push(child);
                next.push(r);
            }
        }
        frontier = next;
        if ctx.stop.load(AtomicOrdering::Relaxed) {
            return (best, nodes);
        }
    }
    let (sub_best, sub_nodes) = frontier
        .par_iter()
        .map(|ranks| {
            let mut walk = Walk::new(ctx, ranks);
            walk.dfs(ctx);
            (walk.best, walk.nodes)
        })
        .reduce(|| (None, 0), |a, b| (Best::merge(a.0, b.0), a.1 + b.1));
    (Best::merge(best, sub_best), nodes + sub_nodes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::complete_partite;

    fn k(n: usize, s: usize) -> UniformHypergraph {
        UniformHypergraph::complete(n, s).unwrap()
    }

    #[test]
    fn diamond_free_triangles() {
        let diamond = complete_partite(2, &[1, 1, 2]).unwrap().0;
        let opts = ExactOptions::default();
        let r4 = exact_ex(4, &k(3, 2), &diamond, &opts).unwrap();
        assert_eq!(r4.value, 1);
        let r5 = exact_ex(5, &k(3, 2), &diamond, &opts).unwrap();
        assert_eq!(r5.value, 2);
        r5.verify().unwrap();
        assert_eq!(r5.mode, Mode::Exact);
    }

    #[test]
    fn triangle_free_edges_is_mantel() {
        for n in 1..=7 {
            let r = exact_ex(n, &k(2, 2), &k(3, 2), &ExactOptions::default()).unwrap();
            assert_eq!(r.value as usize, n * n / 4, "n = {n}");
        }
    }

    #[test]
    fn guard_and_edgeless() {
        assert!(matches!(
            exact_ex(10, &k(3, 2), &k(3, 2), &ExactOptions::default()),
            Err(Error::Infeasible(_))
        ));
        let edgeless = UniformHypergraph::empty(2, 2).unwrap();
        assert!(exact_ex(4, &k(2, 2), &edgeless, &ExactOptions::default()).is_err());
    }

    #[test]
    fn workers_agree() {
        let c4 = complete_partite(2, &[2, 2]).unwrap().0;
        let one = exact_ex(7, &k(2, 2), &c4, &ExactOptions { workers: 1, ..Default::default() }).unwrap();
        let four = exact_ex(7, &k(2, 2), &c4, &ExactOptions { workers: 4, ..Default::default() }).unwrap();
        assert_eq!(one.value, 9);
        assert_eq!(one.witness, four.witness);
        assert_eq!(one.stats.nodes, four.stats.nodes);
    }
}
