use std::fmt;

use super::edge::{Edge, MAX_VERTICES};
use super::index::EdgeIndex;
use crate::error::{Error, Result};

/// An `s`-uniform hypergraph on the vertices `0..n`.
///
/// Edges are kept sorted lexicographically and deduplicated, so two values
/// are equal exactly when `(n, s, edges)` agree. Values are immutable.
#[derive(Clone)]
pub struct UniformHypergraph {
    n: usize,
    s: usize,
    edges: Vec<Edge>,
    index: EdgeIndex,
}

impl UniformHypergraph {
    /// Builds a hypergraph from vertex lists, rejecting malformed edges.
    pub fn new<E: AsRef<[usize]>>(
        n: usize,
        s: usize,
        edges: impl IntoIterator<Item = E>,
    ) -> Result<UniformHypergraph> {
        check_shape(n, s)?;
        let mut out = Vec::new();
        for e in edges {
            let vs = e.as_ref();
            if vs.len() != s {
                return Err(Error::EdgeSize {
                    edge: vs.to_vec(),
                    got: vs.len(),
                    expected: s,
                });
            }
            let mut mask = 0u64;
            for &v in vs {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if mask >> v & 1 == 1 {
                    return Err(Error::RepeatedVertex {
                        edge: vs.to_vec(),
                        vertex: v,
                    });
                }
                mask |= 1u64 << v;
            }
            out.push(Edge::from_mask(mask));
        }
        Ok(Self::assemble(n, s, out))
    }

    /// Builds a hypergraph from bitmask edges.
    pub fn from_edges(
        n: usize,
        s: usize,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<UniformHypergraph> {
        check_shape(n, s)?;
        let universe = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut out = Vec::new();
        for e in edges {
            if e.len() != s {
                return Err(Error::EdgeSize {
                    edge: e.to_vec(),
                    got: e.len(),
                    expected: s,
                });
            }
            if e.mask() & !universe != 0 {
                let v = (e.mask() & !universe).trailing_zeros() as usize;
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            out.push(e);
        }
        Ok(Self::assemble(n, s, out))
    }

    pub(crate) fn assemble(n: usize, s: usize, mut edges: Vec<Edge>) -> UniformHypergraph {
        edges.sort_unstable();
        edges.dedup();
        let index = EdgeIndex::from_edges(n, s, edges.iter().copied());
        UniformHypergraph { n, s, edges, index }
    }

    pub fn empty(n: usize, s: usize) -> Result<UniformHypergraph> {
        Self::from_edges(n, s, std::iter::empty())
    }

    /// The complete `s`-graph on `n` vertices.
    pub fn complete(n: usize, s: usize) -> Result<UniformHypergraph> {
        check_shape(n, s)?;
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let edges = super::edge::mask_subsets(all, s).map(Edge::from_mask).collect();
        Ok(Self::assemble(n, s, edges))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn uniformity(&self) -> usize {
        self.s
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn has_edge(&self, e: Edge) -> bool {
        e.len() == self.s && self.index.contains(e)
    }

    pub fn has_edge_vertices(&self, vs: &[usize]) -> bool {
        vs.iter().all(|&v| v < self.n) && self.has_edge(Edge::from_vertices(vs))
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.index.degree(v)
    }

    pub fn index(&self) -> &EdgeIndex {
        &self.index
    }

    /// Mask of all vertices `0..n`.
    pub fn vertex_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Edge lists as sorted vertex vectors.
    pub fn edge_lists(&self) -> Vec<Vec<usize>> {
        self.edges.iter().map(|e| e.to_vec()).collect()
    }

    /// The same edge set with vertex `v` relabelled to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<UniformHypergraph> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "permutation has length {}, expected {}",
                perm.len(),
                self.n
            )));
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || seen >> p & 1 == 1 {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
            seen |= 1 << p;
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::from_mask(e.vertices().fold(0u64, |m, v| m | 1u64 << perm[v])))
            .collect();
        Ok(Self::assemble(self.n, self.s, edges))
    }

    /// Adds edges, returning a new value.
    pub fn with_edges(&self, extra: impl IntoIterator<Item = Edge>) -> Result<UniformHypergraph> {
        Self::from_edges(self.n, self.s, self.edges.iter().copied().chain(extra))
    }

    /// Removes edges, returning a new value.
    pub fn without_edges(&self, drop: &[Edge]) -> UniformHypergraph {
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|e| !drop.contains(e))
            .collect();
        Self::assemble(self.n, self.s, edges)
    }
}

fn check_shape(n: usize, s: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n,
            max: MAX_VERTICES,
        });
    }
    if s == 0 {
        return Err(Error::InvalidParameter("uniformity must be at least 1".into()));
    }
    Ok(())
}

impl PartialEq for UniformHypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.s == other.s && self.edges == other.edges
    }
}

impl Eq for UniformHypergraph {}

impl fmt::Debug for UniformHypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UniformHypergraph")
            .field("n", &self.n)
            .field("s", &self.s)
            .field("edges", &self.edges)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_triangle() {
        let g = UniformHypergraph::new(3, 2, [[0, 1], [1, 2], [0, 2]]).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.edge_lists(), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn make_single_triple() {
        let g = UniformHypergraph::new(3, 3, [[0, 1, 2]]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge_vertices(&[2, 0, 1]));
    }

    #[test]
    fn make_rejects_malformed_edges() {
        assert!(matches!(
            UniformHypergraph::new(3, 2, [[0, 0]]),
            Err(Error::RepeatedVertex { vertex: 0, .. })
        ));
        assert!(matches!(
            UniformHypergraph::new(3, 2, [[0, 3]]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
        assert!(matches!(
            UniformHypergraph::new(3, 2, [vec![0, 1, 2]]),
            Err(Error::EdgeSize { got: 3, .. })
        ));
        assert!(matches!(
            UniformHypergraph::empty(65, 2),
            Err(Error::TooManyVertices { .. })
        ));
    }

    #[test]
    fn duplicates_and_order_normalize() {
        let a = UniformHypergraph::new(4, 2, [[2, 3], [0, 1], [1, 0]]).unwrap();
        let b = UniformHypergraph::new(4, 2, [[0, 1], [3, 2]]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, UniformHypergraph::new(5, 2, [[0, 1], [2, 3]]).unwrap());
    }

    #[test]
    fn relabel_is_an_isomorphism() {
        let g = UniformHypergraph::new(4, 2, [[0, 1], [1, 2]]).unwrap();
        let h = g.relabel(&[3, 2, 1, 0]).unwrap();
        assert_eq!(h.edge_lists(), vec![vec![1, 2], vec![2, 3]]);
        assert!(g.relabel(&[0, 0, 1, 2]).is_err());
    }
}
