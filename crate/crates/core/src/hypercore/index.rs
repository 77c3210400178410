use rustc_hash::FxHashMap;

use super::edge::Edge;

/// Mutable incidence index of an `s`-uniform edge set.
///
/// For every `(s-1)`-set `T` lying in some edge, `link(T)` is the mask of
/// vertices `v` with `T + v` an edge. Membership, link queries and degree
/// queries are all O(1).
#[derive(Clone, Debug, Default)]
pub struct EdgeIndex {
    n: usize,
    s: usize,
    links: FxHashMap<u64, u64>,
    degrees: Vec<usize>,
    edges: usize,
}

impl EdgeIndex {
    pub fn new(n: usize, s: usize) -> EdgeIndex {
        EdgeIndex {
            n,
            s,
            links: FxHashMap::default(),
            degrees: vec![0; n],
            edges: 0,
        }
    }

    pub fn from_edges(n: usize, s: usize, edges: impl IntoIterator<Item = Edge>) -> EdgeIndex {
        let mut idx = EdgeIndex::new(n, s);
        for e in edges {
            idx.insert(e);
        }
        idx
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn uniformity(&self) -> usize {
        self.s
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    #[inline]
    pub fn contains(&self, e: Edge) -> bool {
        let m = e.mask();
        if m == 0 {
            return false;
        }
        let v = m.trailing_zeros();
        let rest = m & (m - 1);
        self.links.get(&rest).is_some_and(|l| l >> v & 1 == 1)
    }

    /// Vertices completing the `(s-1)`-set `t` to an edge.
    #[inline]
    pub fn link(&self, t: Edge) -> u64 {
        self.links.get(&t.mask()).copied().unwrap_or(0)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    /// Returns false if the edge was already present.
    pub fn insert(&mut self, e: Edge) -> bool {
        if self.contains(e) {
            return false;
        }
        for v in e.vertices() {
            *self.links.entry(e.without(v).mask()).or_insert(0) |= 1u64 << v;
            self.degrees[v] += 1;
        }
        self.edges += 1;
        true
    }

    /// Returns false if the edge was absent.
    pub fn remove(&mut self, e: Edge) -> bool {
        if !self.contains(e) {
            return false;
        }
        for v in e.vertices() {
            let key = e.without(v).mask();
            let slot = self.links.get_mut(&key).expect("indexed edge has links");
            *slot &= !(1u64 << v);
            if *slot == 0 {
                self.links.remove(&key);
            }
            self.degrees[v] -= 1;
        }
        self.edges -= 1;
        true
    }
}
