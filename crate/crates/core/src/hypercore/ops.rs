//! Structural operators on uniform hypergraphs.

use super::edge::{mask_subsets, Edge, MAX_VERTICES};
use super::hypergraph::UniformHypergraph;
use super::partition::{BlowupSpec, PartitionMap};
use crate::error::{Error, Result};

/// The complete `l`-partite `s`-graph `K_l^{(s)}(a_1, ..., a_l)` with
/// consecutive vertex classes.
pub fn complete_partite(s: usize, sizes: &[usize]) -> Result<(UniformHypergraph, PartitionMap)> {
    if s == 0 || sizes.len() < s {
        return Err(Error::InvalidParameter(format!(
            "complete partite needs at least s = {s} classes, got {}",
            sizes.len()
        )));
    }
    let base = UniformHypergraph::complete(sizes.len(), s)?;
    blowup(&BlowupSpec::new(base, sizes.to_vec())?)
}

/// `F(a_1, ..., a_l)`: vertex `i` of the base becomes class `i` (consecutive
/// labels), and each base edge becomes all crossing sets over its classes.
pub fn blowup(spec: &BlowupSpec) -> Result<(UniformHypergraph, PartitionMap)> {
    let total = spec.vertex_count();
    if total > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n: total,
            max: MAX_VERTICES,
        });
    }
    let parts = PartitionMap::consecutive(spec.sizes());
    let mut edges = Vec::new();
    for e in spec.base().edges() {
        let classes: Vec<&[usize]> = e.vertices().map(|i| parts.classes()[i].as_slice()).collect();
        crossing_product(&classes, 0, 0, &mut edges);
    }
    let h = UniformHypergraph::assemble(total, spec.base().uniformity(), edges);
    Ok((h, parts))
}

fn crossing_product(classes: &[&[usize]], depth: usize, acc: u64, out: &mut Vec<Edge>) {
    if depth == classes.len() {
        out.push(Edge::from_mask(acc));
        return;
    }
    for &v in classes[depth] {
        crossing_product(classes, depth + 1, acc | 1u64 << v, out);
    }
}

/// The `s`-shadow: all `s`-subsets of edges of `f`, on the same vertex set.
pub fn shadow(f: &UniformHypergraph, s: usize) -> Result<UniformHypergraph> {
    if s < 2 || s > f.uniformity() {
        return Err(Error::InvalidParameter(format!(
            "shadow uniformity {s} outside 2..={}",
            f.uniformity()
        )));
    }
    if s == f.uniformity() {
        return Ok(f.clone());
    }
    let edges = f
        .edges()
        .iter()
        .flat_map(|e| mask_subsets(e.mask(), s).map(Edge::from_mask))
        .collect();
    Ok(UniformHypergraph::assemble(f.n(), s, edges))
}

/// `G(v_1) ∩ ... ∩ G(v_a)` for an `(r-1)`-graph `G`.
///
/// An `(r-1)`-set `w` disjoint from `vs` is an edge iff `w + v_i` spans a
/// clique `K_r^{(r-1)}` for every `v_i`. The result keeps the labels of `G`;
/// the vertices of `vs` are isolated in it.
pub fn co_neighborhood(g: &UniformHypergraph, vs: &[usize]) -> Result<UniformHypergraph> {
    if vs.is_empty() {
        return Err(Error::InvalidParameter("co-neighborhood of an empty vertex set".into()));
    }
    let mut apex = 0u64;
    for &v in vs {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
        if apex >> v & 1 == 1 {
            return Err(Error::InvalidParameter(format!("vertex {v} repeated")));
        }
        apex |= 1 << v;
    }
    let s = g.uniformity();
    let edges = g
        .edges()
        .iter()
        .copied()
        .filter(|w| w.mask() & apex == 0)
        .filter(|w| vs.iter().all(|&v| spans_clique_with(g, *w, v, s)))
        .collect();
    Ok(UniformHypergraph::assemble(g.n(), s, edges))
}

/// Whether every `s`-subset of `w + v` other than `w` itself is an edge.
fn spans_clique_with(g: &UniformHypergraph, w: Edge, v: usize, s: usize) -> bool {
    mask_subsets(w.mask(), s - 1).all(|t| g.has_edge(Edge::from_mask(t).with(v)))
}

/// The subhypergraph induced on `vs`, relabelled `0..|vs|` in sorted order.
pub fn induced(g: &UniformHypergraph, vs: &[usize]) -> Result<UniformHypergraph> {
    let mut sorted = vs.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut label = vec![usize::MAX; g.n()];
    for (i, &v) in sorted.iter().enumerate() {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
        label[v] = i;
    }
    let keep = Edge::from_vertices(&sorted);
    let edges = g
        .edges()
        .iter()
        .filter(|e| e.is_subset_of(keep))
        .map(|e| Edge::from_mask(e.vertices().fold(0u64, |m, v| m | 1u64 << label[v])))
        .collect();
    Ok(UniformHypergraph::assemble(sorted.len(), g.uniformity(), edges))
}
