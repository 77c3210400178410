use std::cmp::Ordering;
use std::fmt;

/// Largest vertex count a hypergraph may have; vertex sets are `u64` masks.
pub const MAX_VERTICES: usize = 64;

/// A set of vertices stored as a bitmask.
///
/// Edges of equal size are ordered lexicographically by their sorted vertex
/// lists, so `{0,1,5} < {0,2,3}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Edge(u64);

impl Edge {
    pub const EMPTY: Edge = Edge(0);

    pub fn from_mask(mask: u64) -> Edge {
        Edge(mask)
    }

    /// Builds an edge from vertices below [`MAX_VERTICES`]. Duplicates collapse.
    pub fn from_vertices(vertices: &[usize]) -> Edge {
        let mut mask = 0u64;
        for &v in vertices {
            debug_assert!(v < MAX_VERTICES);
            mask |= 1u64 << v;
        }
        Edge(mask)
    }

    #[inline]
    pub fn mask(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn with(self, v: usize) -> Edge {
        Edge(self.0 | 1u64 << v)
    }

    #[inline]
    pub fn without(self, v: usize) -> Edge {
        Edge(self.0 & !(1u64 << v))
    }

    #[inline]
    pub fn is_subset_of(self, other: Edge) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn intersects(self, other: Edge) -> bool {
        self.0 & other.0 != 0
    }

    pub fn min_vertex(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn max_vertex(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn vertices(self) -> Vertices {
        Vertices(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.vertices().collect()
    }

    /// All subsets of this edge with exactly `k` elements, in lexicographic order.
    pub fn subsets(self, k: usize) -> Vec<Edge> {
        mask_subsets(self.0, k).map(Edge).collect()
    }
}

impl Ord for Edge {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let lowest = diff & diff.wrapping_neg();
        if self.0 & lowest != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for Edge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.vertices()).finish()
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in self.vertices() {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// Ascending iterator over the vertices of an [`Edge`].
#[derive(Clone)]
pub struct Vertices(u64);

impl Iterator for Vertices {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Vertices {}

/// Iterates over all `k`-subsets of `mask` (as bitmasks) in increasing numeric order.
pub(crate) fn mask_subsets(mask: u64, k: usize) -> impl Iterator<Item = u64> {
    let bits: Vec<u64> = Vertices(mask).map(|v| 1u64 << v).collect();
    let m = bits.len();
    let mut idx: Vec<usize> = (0..k).collect();
    let mut done = k > m;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = idx.iter().fold(0u64, |acc, &i| acc | bits[i]);
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if idx[i] < m - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_order_matches_sorted_lists() {
        let a = Edge::from_vertices(&[0, 1, 5]);
        let b = Edge::from_vertices(&[0, 2, 3]);
        let c = Edge::from_vertices(&[1, 2, 3]);
        assert!(a < b);
        assert!(b < c);
        let mut all = vec![c, a, b];
        all.sort();
        assert_eq!(all, vec![a, b, c]);
    }

    #[test]
    fn subsets_enumerates_all() {
        let e = Edge::from_vertices(&[1, 3, 4, 7]);
        let two = e.subsets(2);
        assert_eq!(two.len(), 6);
        assert!(two.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(e.subsets(4), vec![e]);
        assert_eq!(e.subsets(0), vec![Edge::EMPTY]);
        assert!(e.subsets(5).is_empty());
    }

    #[test]
    fn mask_subsets_counts() {
        let m = 0b1011_0110u64;
        assert_eq!(mask_subsets(m, 2).count(), 10);
        assert_eq!(mask_subsets(m, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(mask_subsets(m, 5).collect::<Vec<_>>(), vec![m]);
        assert_eq!(mask_subsets(m, 6).count(), 0);
    }
}
