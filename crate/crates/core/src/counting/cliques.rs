use crate::error::{Error, Result};
use crate::hypercore::{mask_subsets, Edge, EdgeIndex, UniformHypergraph};

/// Cliques `K_r^{(r-1)}` of an `(r-1)`-graph: `r`-sets all of whose
/// `(r-1)`-subsets are host edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueFamily {
    r: usize,
    members: Vec<Edge>,
}

impl CliqueFamily {
    /// Validates that every member spans a clique in `host` and members are distinct.
    pub fn new(host: &UniformHypergraph, r: usize, members: Vec<Edge>) -> Result<CliqueFamily> {
        if host.uniformity() + 1 != r {
            return Err(Error::UniformityMismatch {
                expected: r - 1,
                got: host.uniformity(),
            });
        }
        let mut seen = rustc_hash::FxHashSet::default();
        for m in &members {
            if m.len() != r || !spans_complete(host.index(), *m) {
                return Err(Error::Precondition(format!(
                    "{m:?} does not span a K_{r}^({}) in the host",
                    r - 1
                )));
            }
            if !seen.insert(*m) {
                return Err(Error::Precondition(format!("{m:?} listed twice")));
            }
        }
        Ok(CliqueFamily { r, members })
    }

    pub(crate) fn from_trusted(r: usize, members: Vec<Edge>) -> CliqueFamily {
        CliqueFamily { r, members }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn members(&self) -> &[Edge] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Whether every `s`-subset of `set` is an edge (`s` = index uniformity).
pub(crate) fn spans_complete(index: &EdgeIndex, set: Edge) -> bool {
    let s = index.uniformity();
    mask_subsets(set.mask(), s).all(|t| index.contains(Edge::from_mask(t)))
}

/// All `k`-sets of vertices whose `s`-subsets are all edges of `g`, in
/// lexicographic order. For `k = s` these are the edges; for `k < s` every
/// `k`-set qualifies vacuously.
pub fn complete_subsets(g: &UniformHypergraph, k: usize) -> Vec<Edge> {
    let mut out = Vec::new();
    visit_complete_subsets(g.index(), g.n(), k, &mut |e| {
        out.push(e);
        true
    });
    out
}

pub fn count_complete_subsets(g: &UniformHypergraph, k: usize) -> u64 {
    count_complete_subsets_in(g.index(), g.n(), k)
}

pub(crate) fn count_complete_subsets_in(index: &EdgeIndex, n: usize, k: usize) -> u64 {
    let mut count = 0u64;
    visit_complete_subsets(index, n, k, &mut |_| {
        count += 1;
        true
    });
    count
}

/// Depth-first enumeration in lexicographic order. The visitor returns
/// `false` to stop early.
pub(crate) fn visit_complete_subsets(
    index: &EdgeIndex,
    n: usize,
    k: usize,
    visit: &mut dyn FnMut(Edge) -> bool,
) {
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let s = index.uniformity();
    let start = if s == 1 { all & index.link(Edge::EMPTY) } else { all };
    extend(index, s, k, Edge::EMPTY, 0, start, visit);
}

/// `cand` holds the vertices above the current maximum `w` such that
/// `T + w` is an edge for every `(s-1)`-subset `T` of `cur`.
fn extend(
    index: &EdgeIndex,
    s: usize,
    k: usize,
    cur: Edge,
    size: usize,
    cand: u64,
    visit: &mut dyn FnMut(Edge) -> bool,
) -> bool {
    if size == k {
        return visit(cur);
    }
    let need = k - size;
    let mut rest = cand;
    while rest.count_ones() as usize >= need {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let mut next = rest;
        if s >= 2 {
            for u in mask_subsets(cur.mask(), s - 2) {
                next &= index.link(Edge::from_mask(u).with(v));
                if next == 0 {
                    break;
                }
            }
        }
        if !extend(index, s, k, cur.with(v), size + 1, next, visit) {
            return false;
        }
    }
    true
}

/// All cliques `K_r^{(r-1)}` of the `(r-1)`-graph `g`, lexicographically ordered.
pub fn cliques(g: &UniformHypergraph, r: usize) -> Result<CliqueFamily> {
    if r < 3 {
        return Err(Error::InvalidParameter(format!("clique order {r} below 3")));
    }
    if g.uniformity() + 1 != r {
        return Err(Error::UniformityMismatch {
            expected: r - 1,
            got: g.uniformity(),
        });
    }
    Ok(CliqueFamily {
        r,
        members: complete_subsets(g, r),
    })
}
