//! Canonical forms by lexicographically maximal incidence bitstrings.
//!
//! Potential edges are ranked in colex order, so all `s`-sets inside the
//! labels `0..=k` precede any set containing label `k + 1`. The incidence
//! string of a labelling reads these ranks from most to least significant
//! bit; the canonical form is the maximum over all labellings. Labels are
//! assigned one at a time and a branch is cut as soon as its prefix falls
//! below the best prefix. Interchangeable vertices (those whose transposition
//! is an automorphism) are tried once per level.

use std::fmt;
use std::str::FromStr;

use crate::counting::binomial;
use crate::error::{Error, Result};
use crate::hypercore::{Edge, UniformHypergraph};

/// Largest number of potential edges a canonical bitstring can hold.
pub const MAX_CANON_SLOTS: u128 = 128;

/// Isomorphism-invariant key of a uniform hypergraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    pub s: usize,
    pub n: usize,
    pub bits: u128,
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}-{:x}", self.s, self.n, self.bits)
    }
}

impl FromStr for CanonicalKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<CanonicalKey> {
        let bad = || Error::InvalidParameter(format!("malformed canonical key `{s}`"));
        let mut parts = s.splitn(3, '-');
        let su = parts.next().and_then(|p| p.parse().ok()).ok_or_else(bad)?;
        let n = parts.next().and_then(|p| p.parse().ok()).ok_or_else(bad)?;
        let bits = parts
            .next()
            .and_then(|p| u128::from_str_radix(p, 16).ok())
            .ok_or_else(bad)?;
        Ok(CanonicalKey { s: su, n, bits })
    }
}

/// Binomial table `c[m][j] = C(m, j)` for `m ≤ 64`, `j ≤ 8`.
pub(crate) struct Binomials {
    table: Vec<[u32; 9]>,
}

impl Binomials {
    pub(crate) fn new() -> Binomials {
        let mut table = vec![[0u32; 9]; 65];
        for (m, row) in table.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = binomial(m as u64, j as u64).min(u32::MAX as u128) as u32;
            }
        }
        Binomials { table }
    }

    #[inline]
    pub(crate) fn get(&self, m: usize, j: usize) -> u32 {
        if j > 8 {
            return binomial(m as u64, j as u64) as u32;
        }
        self.table[m][j]
    }

    /// Colex rank of a set of labels.
    #[inline]
    pub(crate) fn colex_rank(&self, labels: u64) -> u32 {
        let mut rank = 0;
        let mut rest = labels;
        let mut i = 1;
        while rest != 0 {
            let c = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            rank += self.get(c, i);
            i += 1;
        }
        rank
    }
}

/// Bookkeeping for labelling searches over one hypergraph.
pub(crate) struct Labeller<'a> {
    g: &'a UniformHypergraph,
    s: usize,
    n: usize,
    slots: u32,
    binom: &'a Binomials,
    /// For each vertex, the edges through it with that vertex removed.
    through: Vec<Vec<u64>>,
    /// Twin class representative for each vertex.
    twin: Vec<usize>,
}

impl<'a> Labeller<'a> {
    pub(crate) fn new(g: &'a UniformHypergraph, binom: &'a Binomials) -> Result<Labeller<'a>> {
        let n = g.n();
        let s = g.uniformity();
        let slots = binomial(n as u64, s as u64);
        if slots > MAX_CANON_SLOTS {
            return Err(Error::Infeasible(format!(
                "canonical form supports at most {MAX_CANON_SLOTS} potential edges, C({n},{s}) = {slots}"
            )));
        }
        let mut through = vec![Vec::new(); n];
        for e in g.edges() {
            for v in e.vertices() {
                through[v].push(e.without(v).mask());
            }
        }
        let twin = twin_classes(g);
        Ok(Labeller {
            g,
            s,
            n,
            slots: slots as u32,
            binom,
            through,
            twin,
        })
    }

    #[inline]
    fn bit(&self, rank: u32) -> u128 {
        1u128 << (self.slots - 1 - rank)
    }

    /// Mask of bit positions with rank below `C(k + 1, s)`.
    #[inline]
    fn prefix_mask(&self, k: usize) -> u128 {
        let end = self.binom.get(k + 1, self.s);
        if end == 0 {
            return 0;
        }
        let width = end;
        if width >= 128 {
            u128::MAX
        } else {
            ((1u128 << width) - 1) << (self.slots - width)
        }
    }

    /// Bitstring of the identity labelling.
    pub(crate) fn identity_bits(&self) -> u128 {
        self.g
            .edges()
            .iter()
            .fold(0u128, |acc, e| acc | self.bit(self.binom.colex_rank(e.mask())))
    }

    /// Bits contributed when original vertex `u` receives label `k`, given
    /// the labels of already-placed vertices.
    #[inline]
    fn block(&self, u: usize, k: usize, placed: u64, label: &[usize]) -> u128 {
        let base = self.binom.get(k, self.s);
        let mut acc = 0u128;
        for &rest in &self.through[u] {
            if rest & !placed != 0 {
                continue;
            }
            let mut lab = 0u64;
            let mut r = rest;
            while r != 0 {
                let v = r.trailing_zeros() as usize;
                r &= r - 1;
                lab |= 1u64 << label[v];
            }
            acc |= self.bit(base + self.binom.colex_rank(lab));
        }
        acc
    }

    /// Maximum bitstring over all labellings, and a labelling attaining it
    /// (`perm[v]` = label of `v`).
    pub(crate) fn maximize(&self) -> (u128, Vec<usize>) {
        let mut best = Search {
            lab: self,
            target: 0,
            best_perm: (0..self.n).collect(),
            label: vec![usize::MAX; self.n],
            have_best: false,
            mode: Mode::Maximize,
        };
        best.descend(0, 0, 0);
        let Search { target, best_perm, .. } = best;
        (target, best_perm)
    }

    /// Whether no labelling beats the identity.
    pub(crate) fn identity_is_max(&self) -> bool {
        let mut search = Search {
            lab: self,
            target: self.identity_bits(),
            best_perm: Vec::new(),
            label: vec![usize::MAX; self.n],
            have_best: true,
            mode: Mode::Refute,
        };
        search.descend(0, 0, 0)
    }

    #[allow(dead_code)]
    pub(crate) fn graph(&self) -> &UniformHypergraph {
        self.g
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Track the maximum.
    Maximize,
    /// Stop as soon as a labelling beats the target.
    Refute,
}

struct Search<'l, 'a> {
    lab: &'l Labeller<'a>,
    target: u128,
    best_perm: Vec<usize>,
    label: Vec<usize>,
    have_best: bool,
    mode: Mode,
}

impl Search<'_, '_> {
    /// Returns false (Refute mode only) when a larger labelling was found.
    fn descend(&mut self, k: usize, placed: u64, acc: u128) -> bool {
        let n = self.lab.n;
        if k == n {
            if self.mode == Mode::Maximize && (!self.have_best || acc > self.target) {
                self.target = acc;
                self.best_perm = self.label.clone();
                self.have_best = true;
            }
            return true;
        }
        let mask = self.lab.prefix_mask(k);
        let mut tried_twins = 0u64;
        for u in 0..n {
            if placed >> u & 1 == 1 {
                continue;
            }
            let rep = self.lab.twin[u];
            if tried_twins >> rep & 1 == 1 {
                continue;
            }
            tried_twins |= 1 << rep;
            self.label[u] = k;
            let next = acc | self.lab.block(u, k, placed, &self.label);
            let goal = self.target & mask;
            let go = if !self.have_best || next > goal {
                if self.mode == Mode::Refute {
                    self.label[u] = usize::MAX;
                    return false;
                }
                // strictly better prefix: any completion beats the old best
                self.have_best = false;
                true
            } else {
                next == goal
            };
            if go && !self.descend(k + 1, placed | 1 << u, next) {
                self.label[u] = usize::MAX;
                return false;
            }
            self.label[u] = usize::MAX;
        }
        true
    }
}

/// `twin[v]` is the least vertex `w` such that swapping `v` and `w` is an
/// automorphism. The relation is an equivalence since conjugating one
/// transposition by another yields the third.
fn twin_classes(g: &UniformHypergraph) -> Vec<usize> {
    let n = g.n();
    let mut twin: Vec<usize> = (0..n).collect();
    for v in 0..n {
        if twin[v] != v {
            continue;
        }
        for w in v + 1..n {
            if twin[w] == w && swap_is_automorphism(g, v, w) {
                twin[w] = v;
            }
        }
    }
    twin
}

fn swap_is_automorphism(g: &UniformHypergraph, v: usize, w: usize) -> bool {
    let pair = (1u64 << v) | (1u64 << w);
    g.edges().iter().all(|e| {
        let m = e.mask();
        let hit = m & pair;
        if hit == 0 || hit == pair {
            return true;
        }
        g.has_edge(Edge::from_mask(m ^ pair))
    })
}

/// Canonical key and a canonical labelling (`perm[v]` = new label of `v`).
pub fn canonical_form(g: &UniformHypergraph) -> Result<(CanonicalKey, Vec<usize>)> {
    let binom = Binomials::new();
    let lab = Labeller::new(g, &binom)?;
    let (bits, perm) = if g.edge_count() == 0 {
        (0, (0..g.n()).collect())
    } else {
        lab.maximize()
    };
    Ok((
        CanonicalKey {
            s: g.uniformity(),
            n: g.n(),
            bits,
        },
        perm,
    ))
}

pub fn canonical_key(g: &UniformHypergraph) -> Result<CanonicalKey> {
    canonical_form(g).map(|(k, _)| k)
}

/// The canonical representative: `g` relabelled by its canonical labelling.
pub fn canonical_graph(g: &UniformHypergraph) -> Result<UniformHypergraph> {
    let (_, perm) = canonical_form(g)?;
    g.relabel(&perm)
}

/// Whether `g`'s own labelling is its canonical one.
pub fn is_canonical(g: &UniformHypergraph) -> Result<bool> {
    let binom = Binomials::new();
    Ok(Labeller::new(g, &binom)?.identity_is_max())
}

/// Rebuilds a hypergraph from its key.
pub fn from_key(key: &CanonicalKey) -> Result<UniformHypergraph> {
    let binom = Binomials::new();
    let slots = binomial(key.n as u64, key.s as u64);
    if slots > MAX_CANON_SLOTS {
        return Err(Error::Infeasible("key too wide".into()));
    }
    let all = if key.n == 64 { u64::MAX } else { (1u64 << key.n) - 1 };
    let edges = crate::hypercore::mask_subsets(all, key.s)
        .filter(|&m| {
            let rank = binom.colex_rank(m) as u128;
            key.bits >> (slots - 1 - rank) & 1 == 1
        })
        .map(Edge::from_mask);
    UniformHypergraph::from_edges(key.n, key.s, edges)
}
