use super::edge::Edge;
use super::hypergraph::UniformHypergraph;
use crate::error::{Error, Result};

/// An ordered partition of `0..n` into disjoint classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionMap {
    classes: Vec<Vec<usize>>,
    owner: Vec<usize>,
}

impl PartitionMap {
    /// Validates that `classes` are disjoint and cover `0..n`. Each class is sorted.
    pub fn new(n: usize, classes: Vec<Vec<usize>>) -> Result<PartitionMap> {
        let mut owner = vec![usize::MAX; n];
        let mut classes = classes;
        for (i, class) in classes.iter_mut().enumerate() {
            class.sort_unstable();
            for &v in class.iter() {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if owner[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {v} lies in classes {} and {i}",
                        owner[v]
                    )));
                }
                owner[v] = i;
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::InvalidPartition(format!("vertex {v} is in no class")));
        }
        Ok(PartitionMap { classes, owner })
    }

    /// Consecutive classes of the given sizes: `0..a1`, `a1..a1+a2`, ...
    pub fn consecutive(sizes: &[usize]) -> PartitionMap {
        let mut classes = Vec::with_capacity(sizes.len());
        let mut owner = Vec::new();
        let mut next = 0;
        for (i, &a) in sizes.iter().enumerate() {
            classes.push((next..next + a).collect());
            owner.extend(std::iter::repeat(i).take(a));
            next += a;
        }
        PartitionMap { classes, owner }
    }

    /// Builds a partition from a class label per vertex.
    pub fn from_labels(labels: &[usize], class_count: usize) -> Result<PartitionMap> {
        let mut classes = vec![Vec::new(); class_count];
        for (v, &c) in labels.iter().enumerate() {
            if c >= class_count {
                return Err(Error::InvalidPartition(format!(
                    "vertex {v} has class {c} of {class_count}"
                )));
            }
            classes[c].push(v);
        }
        Ok(PartitionMap {
            classes,
            owner: labels.to_vec(),
        })
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.owner.len()
    }

    /// Index of the class holding `v`.
    pub fn class_of(&self, v: usize) -> usize {
        self.owner[v]
    }

    pub fn class_mask(&self, i: usize) -> u64 {
        Edge::from_vertices(&self.classes[i]).mask()
    }

    /// True when `e` meets every class at most once.
    pub fn is_crossing(&self, e: Edge) -> bool {
        let mut seen = 0u64;
        for v in e.vertices() {
            let c = self.owner[v];
            if seen >> c & 1 == 1 {
                return false;
            }
            seen |= 1 << c;
        }
        true
    }
}

/// A blowup request: replace vertex `i` of `base` by `sizes[i]` copies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupSpec {
    base: UniformHypergraph,
    sizes: Vec<usize>,
}

impl BlowupSpec {
    pub fn new(base: UniformHypergraph, sizes: Vec<usize>) -> Result<BlowupSpec> {
        if sizes.len() != base.n() {
            return Err(Error::InvalidParameter(format!(
                "{} class sizes for a base on {} vertices",
                sizes.len(),
                base.n()
            )));
        }
        if sizes.iter().any(|&a| a == 0) {
            return Err(Error::InvalidParameter("blowup class sizes must be positive".into()));
        }
        Ok(BlowupSpec { base, sizes })
    }

    /// `F(a, ..., a)`.
    pub fn uniform(base: UniformHypergraph, a: usize) -> Result<BlowupSpec> {
        let n = base.n();
        Self::new(base, vec![a; n])
    }

    pub fn base(&self) -> &UniformHypergraph {
        &self.base
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn vertex_count(&self) -> usize {
        self.sizes.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_validates() {
        assert!(PartitionMap::new(4, vec![vec![0, 2], vec![1, 3]]).is_ok());
        assert!(PartitionMap::new(4, vec![vec![0, 2], vec![2, 3]]).is_err());
        assert!(PartitionMap::new(4, vec![vec![0, 2], vec![3]]).is_err());
        assert!(PartitionMap::new(3, vec![vec![0, 5], vec![1, 2]]).is_err());
    }

    #[test]
    fn consecutive_classes() {
        let p = PartitionMap::consecutive(&[1, 2, 3]);
        assert_eq!(p.classes(), &[vec![0], vec![1, 2], vec![3, 4, 5]]);
        assert_eq!(p.class_of(4), 2);
        assert!(p.is_crossing(Edge::from_vertices(&[0, 1, 5])));
        assert!(!p.is_crossing(Edge::from_vertices(&[1, 2])));
    }

    #[test]
    fn spec_rejects_bad_sizes() {
        let k2 = UniformHypergraph::new(2, 2, [[0, 1]]).unwrap();
        assert!(BlowupSpec::new(k2.clone(), vec![1]).is_err());
        assert!(BlowupSpec::new(k2.clone(), vec![1, 0]).is_err());
        assert_eq!(BlowupSpec::uniform(k2, 3).unwrap().vertex_count(), 6);
    }
}
