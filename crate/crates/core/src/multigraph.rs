//! Finite multigraphs, k-labelled graphs and the gluing product.
//!
//! Graphs may carry loops and parallel edges. Every edge has a stable index
//! (its position in [`Multigraph::edges`]), and every structural operation
//! here documents how edge indices of its output relate to those of its
//! inputs, so that cycle-matroid correspondences stay explicit.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Circuit enumeration refuses graphs with more edges than this by default.
pub const CIRCUIT_BOUND: usize = 12;
/// Brute-force matroid isomorphism refuses graphs with more edges than this by default.
pub const MATROID_ISO_BOUND: usize = 8;
/// Enumeration deduplicates isomorphic copies only up to this many vertices.
pub const DEDUP_MAX_VERTICES: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::invalid(
                    format!("edges[{i}]"),
                    format!("endpoint out of range ({u}, {v}) with {vertex_count} vertices"),
                ));
            }
        }
        Ok(Multigraph {
            vertex_count,
            edges,
        })
    }

    pub fn empty(vertex_count: usize) -> Self {
        Multigraph {
            vertex_count,
            edges: Vec::new(),
        }
    }

    /// Path with `len` edges on `len + 1` vertices.
    pub fn path(len: usize) -> Self {
        Multigraph {
            vertex_count: len + 1,
            edges: (0..len).map(|i| (i, i + 1)).collect(),
        }
    }

    /// Cycle of length `len >= 1`; length 1 is a loop, length 2 a double edge.
    pub fn cycle(len: usize) -> Self {
        assert!(len >= 1, "cycle needs at least one edge");
        Multigraph {
            vertex_count: len,
            edges: (0..len).map(|i| (i, (i + 1) % len)).collect(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Multigraph {
            vertex_count: n,
            edges,
        }
    }

    /// Star K_{1,leaves} with centre 0.
    pub fn star(leaves: usize) -> Self {
        Multigraph {
            vertex_count: leaves + 1,
            edges: (1..=leaves).map(|v| (0, v)).collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_loop(&self, edge: usize) -> bool {
        let (u, v) = self.edges[edge];
        u == v
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, vertex: usize) -> usize {
        self.edges
            .iter()
            .map(|&(u, v)| (u == vertex) as usize + (v == vertex) as usize)
            .sum()
    }

    /// Disjoint union; `other`'s vertices and edges are appended after `self`'s.
    pub fn disjoint_union(&self, other: &Multigraph) -> Multigraph {
        let shift = self.vertex_count;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Multigraph {
            vertex_count: shift + other.vertex_count,
            edges,
        }
    }

    /// Relabels vertices by `perm` (vertex `v` becomes `perm[v]`); edge order is kept.
    pub fn permute_vertices(&self, perm: &[usize]) -> Multigraph {
        Multigraph {
            vertex_count: self.vertex_count,
            edges: self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect(),
        }
    }

    /// Sorted, endpoint-normalized edge list; equal for graphs that differ
    /// only in edge order and edge orientation.
    pub fn edge_multiset(&self) -> Vec<(usize, usize)> {
        let mut list: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        list.sort_unstable();
        list
    }

    /// Isomorphism-invariant key, minimizing the edge multiset over all
    /// permutations of the vertices `fixed..n` (the first `fixed` vertices stay put).
    /// Cost is (n - fixed)! times |E| log |E|.
    pub fn canonical_key(&self, fixed: usize) -> Vec<(usize, usize)> {
        let n = self.vertex_count;
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Vec<(usize, usize)>> = None;
        loop {
            let key = self.permute_vertices(&perm).edge_multiset();
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
            if !next_permutation(&mut perm[fixed.min(n)..]) {
                break;
            }
        }
        best.unwrap_or_default()
    }

    /// Brute-force isomorphism test for small graphs.
    pub fn is_isomorphic(&self, other: &Multigraph) -> bool {
        self.vertex_count == other.vertex_count
            && self.edges.len() == other.edges.len()
            && self.canonical_key(0) == other.canonical_key(0)
    }
}

/// Lexicographic next permutation in place; false once the last one is reached.
pub(crate) fn next_permutation(items: &mut [usize]) -> bool {
    let n = items.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && items[i - 1] >= items[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while items[j] <= items[i - 1] {
        j -= 1;
    }
    items.swap(i - 1, j);
    items[i..].reverse();
    true
}

/// Union-find over `0..n` tracking the number of sets.
#[derive(Debug, Clone)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
    sets: usize,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            sets: n,
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if `a` and `b` were in different sets.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        self.sets -= 1;
        true
    }

    pub(crate) fn sets(&self) -> usize {
        self.sets
    }
}

/// Number of connected components and a component id per vertex
/// (ids numbered by first appearance in vertex order).
pub fn components(graph: &Multigraph) -> (usize, Vec<usize>) {
    let mut ds = DisjointSets::new(graph.vertex_count);
    for &(u, v) in &graph.edges {
        ds.union(u, v);
    }
    let mut ids = vec![usize::MAX; graph.vertex_count];
    let mut root_id = vec![usize::MAX; graph.vertex_count];
    let mut next = 0;
    for v in 0..graph.vertex_count {
        let r = ds.find(v);
        if root_id[r] == usize::MAX {
            root_id[r] = next;
            next += 1;
        }
        ids[v] = root_id[r];
    }
    (next, ids)
}

pub fn component_count(graph: &Multigraph) -> usize {
    components(graph).0
}

/// Rank r(A) = |V| - c(V, A) of the spanning subgraph on the edge subset `subset`.
pub fn rank(graph: &Multigraph, subset: &[usize]) -> Result<usize> {
    let mut ds = DisjointSets::new(graph.vertex_count);
    for &e in subset {
        let &(u, v) = graph.edges.get(e).ok_or(Error::EdgeOutOfRange {
            index: e,
            edges: graph.edge_count(),
        })?;
        ds.union(u, v);
    }
    Ok(graph.vertex_count - ds.sets())
}

/// Rank of the whole graph, r(F) = |V| - c(F).
pub fn graph_rank(graph: &Multigraph) -> usize {
    graph.vertex_count - component_count(graph)
}

/// Rank of the edge subset encoded as a bitmask (edge `i` is bit `i`).
pub(crate) fn rank_of_mask(graph: &Multigraph, mask: u64) -> usize {
    let mut ds = DisjointSets::new(graph.vertex_count);
    let mut rest = mask;
    while rest != 0 {
        let e = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let (u, v) = graph.edges[e];
        ds.union(u, v);
    }
    graph.vertex_count - ds.sets()
}

/// A multigraph with `k` distinct labelled vertices; `labels[i]` carries label `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    graph: Multigraph,
    labels: Vec<usize>,
}

impl LabeledGraph {
    pub fn new(graph: Multigraph, labels: Vec<usize>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (i, &l) in labels.iter().enumerate() {
            if l >= graph.vertex_count {
                return Err(Error::invalid(
                    format!("labels[{i}]"),
                    format!("vertex {l} out of range ({} vertices)", graph.vertex_count),
                ));
            }
            if !seen.insert(l) {
                return Err(Error::invalid(
                    format!("labels[{i}]"),
                    format!("vertex {l} labelled twice"),
                ));
            }
        }
        Ok(LabeledGraph { graph, labels })
    }

    pub fn unlabeled(graph: Multigraph) -> Self {
        LabeledGraph {
            graph,
            labels: Vec::new(),
        }
    }

    /// `k` labelled vertices and no edges.
    pub fn points(k: usize) -> Self {
        LabeledGraph {
            graph: Multigraph::empty(k),
            labels: (0..k).collect(),
        }
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn into_graph(self) -> Multigraph {
        self.graph
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn k(&self) -> usize {
        self.labels.len()
    }

    /// Swaps labels 1 and 2 of a 2-labelled graph.
    pub fn transpose(&self) -> Result<LabeledGraph> {
        if self.k() != 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                found: self.k(),
            });
        }
        Ok(LabeledGraph {
            graph: self.graph.clone(),
            labels: vec![self.labels[1], self.labels[0]],
        })
    }

    /// Gluing product: disjoint union with equally-labelled vertices identified.
    ///
    /// Vertices of `self` keep their ids, the unlabelled vertices of `other`
    /// follow in their original order. Edges of `self` come first, then the
    /// edges of `other`, so edge `i` of the product is edge `i` of `self` for
    /// `i < |E(self)|` and edge `i - |E(self)|` of `other` otherwise.
    pub fn glue(&self, other: &LabeledGraph) -> Result<LabeledGraph> {
        if self.k() != other.k() {
            return Err(Error::ArityMismatch {
                expected: self.k(),
                found: other.k(),
            });
        }
        let mut map = vec![usize::MAX; other.graph.vertex_count];
        for (i, &l) in other.labels.iter().enumerate() {
            map[l] = self.labels[i];
        }
        let mut next = self.graph.vertex_count;
        for slot in map.iter_mut() {
            if *slot == usize::MAX {
                *slot = next;
                next += 1;
            }
        }
        let mut edges = self.graph.edges.clone();
        edges.extend(other.graph.edges.iter().map(|&(u, v)| (map[u], map[v])));
        Ok(LabeledGraph {
            graph: Multigraph {
                vertex_count: next,
                edges,
            },
            labels: self.labels.clone(),
        })
    }

    /// Labelled canonical key: labelled vertices are moved to `0..k` and only
    /// the unlabelled vertices are permuted.
    pub fn canonical_key(&self) -> Vec<(usize, usize)> {
        self.normalized().graph.canonical_key(self.k())
    }

    /// Same graph with the labelled vertices renumbered to `0..k` in label order.
    pub fn normalized(&self) -> LabeledGraph {
        let n = self.graph.vertex_count;
        let mut perm = vec![usize::MAX; n];
        for (i, &l) in self.labels.iter().enumerate() {
            perm[l] = i;
        }
        let mut next = self.k();
        for slot in perm.iter_mut() {
            if *slot == usize::MAX {
                *slot = next;
                next += 1;
            }
        }
        LabeledGraph {
            graph: self.graph.permute_vertices(&perm),
            labels: (0..self.k()).collect(),
        }
    }
}

/// Whitney flip: the underlying graphs of `F1 . F2` and `F1^T . F2`.
///
/// Both outputs list the edges of `F1` first and then those of `F2`, so the
/// identity on edge indices is the natural bijection between them.
pub fn whitney_flip(f1: &LabeledGraph, f2: &LabeledGraph) -> Result<(Multigraph, Multigraph)> {
    for f in [f1, f2] {
        if f.k() != 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                found: f.k(),
            });
        }
    }
    let plain = f1.glue(f2)?.into_graph();
    let flipped = f1.transpose()?.glue(f2)?.into_graph();
    Ok((plain, flipped))
}

/// One-point join of two 1-labelled graphs at their labelled vertices.
pub fn identify_vertices(f1: &LabeledGraph, f2: &LabeledGraph) -> Result<Multigraph> {
    for f in [f1, f2] {
        if f.k() != 1 {
            return Err(Error::ArityMismatch {
                expected: 1,
                found: f.k(),
            });
        }
    }
    Ok(f1.glue(f2)?.into_graph())
}

/// Result of separating a graph at a set of cut vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub left: LabeledGraph,
    pub right: LabeledGraph,
    /// `origin[i]` is the index in the separated graph of edge `i` of the
    /// disjoint union `left ⊔ right` (left edges first).
    pub origin: Vec<usize>,
}

/// Groups the edges of `graph` by the component of `graph - cut` they attach
/// to. An edge with both endpoints in `cut` (including a loop there) forms a
/// group of its own. Groups are ordered by their smallest edge index.
pub fn edge_groups(graph: &Multigraph, cut: &[usize]) -> Vec<Vec<usize>> {
    let in_cut = |v: usize| cut.contains(&v);
    let mut ds = DisjointSets::new(graph.vertex_count);
    for &(u, v) in &graph.edges {
        if !in_cut(u) && !in_cut(v) {
            ds.union(u, v);
        }
    }
    let mut groups: Vec<(Option<usize>, Vec<usize>)> = Vec::new();
    for (e, &(u, v)) in graph.edges.iter().enumerate() {
        let anchor = if !in_cut(u) {
            Some(ds.find(u))
        } else if !in_cut(v) {
            Some(ds.find(v))
        } else {
            None
        };
        match anchor.and_then(|a| groups.iter_mut().find(|(g, _)| *g == Some(a))) {
            Some((_, list)) => list.push(e),
            None => groups.push((anchor, vec![e])),
        }
    }
    groups.into_iter().map(|(_, list)| list).collect()
}

/// Splits `graph` into two labelled pieces sharing only the `cut` vertices:
/// `left` holds the edges in `left_edges` (which must be a union of
/// [`edge_groups`]) and `right` the remaining edges and isolated vertices.
/// Cut vertices become labels `1..=|cut|` on both sides.
pub fn separate(graph: &Multigraph, cut: &[usize], left_edges: &[usize]) -> Result<Separation> {
    let n = graph.vertex_count;
    for &c in cut {
        if c >= n {
            return Err(Error::invalid("cut", format!("vertex {c} out of range")));
        }
    }
    let mut on_left = vec![false; graph.edge_count()];
    for &e in left_edges {
        if e >= graph.edge_count() {
            return Err(Error::EdgeOutOfRange {
                index: e,
                edges: graph.edge_count(),
            });
        }
        on_left[e] = true;
    }
    let mut left_vertex = vec![false; n];
    for (e, &(u, v)) in graph.edges.iter().enumerate() {
        if on_left[e] {
            left_vertex[u] = true;
            left_vertex[v] = true;
        }
    }
    for (e, &(u, v)) in graph.edges.iter().enumerate() {
        let crosses = |x: usize| left_vertex[x] && !cut.contains(&x);
        if !on_left[e] && (crosses(u) || crosses(v)) {
            return Err(Error::invalid(
                "left_edges",
                format!("edge {e} shares a non-cut vertex with the left side"),
            ));
        }
    }
    let build = |keep_vertex: &dyn Fn(usize) -> bool, keep_edge: &dyn Fn(usize) -> bool| {
        let mut map = vec![usize::MAX; n];
        for (i, &c) in cut.iter().enumerate() {
            map[c] = i;
        }
        let mut next = cut.len();
        for v in 0..n {
            if map[v] == usize::MAX && keep_vertex(v) {
                map[v] = next;
                next += 1;
            }
        }
        let mut edges = Vec::new();
        let mut origin = Vec::new();
        for (e, &(u, v)) in graph.edges.iter().enumerate() {
            if keep_edge(e) {
                edges.push((map[u], map[v]));
                origin.push(e);
            }
        }
        let piece = LabeledGraph {
            graph: Multigraph {
                vertex_count: next,
                edges,
            },
            labels: (0..cut.len()).collect(),
        };
        (piece, origin)
    };
    let (left, mut origin) = build(&|v| left_vertex[v], &|e| on_left[e]);
    let (right, right_origin) = build(&|v| !left_vertex[v], &|e| !on_left[e]);
    origin.extend(right_origin);
    Ok(Separation {
        left,
        right,
        origin,
    })
}

/// Inverse of [`identify_vertices`]: splits `graph` at `vertex` into two
/// 1-labelled pieces whose edge sets meet only there. The first edge group
/// at the vertex goes left, everything else right.
pub fn split_at_cut(graph: &Multigraph, vertex: usize) -> Result<Separation> {
    if vertex >= graph.vertex_count {
        return Err(Error::invalid(
            "vertex",
            format!("{vertex} out of range ({} vertices)", graph.vertex_count),
        ));
    }
    let groups = edge_groups(graph, &[vertex]);
    if groups.len() < 2 {
        return Err(Error::NotSeparating { vertex });
    }
    separate(graph, &[vertex], &groups[0])
}

/// True when the edge subset (a bitmask) is the edge set of a cycle: connected
/// and 2-regular on the vertices it touches, loops contributing degree 2.
fn is_cycle_mask(graph: &Multigraph, mask: u64) -> bool {
    let mut degree = vec![0u8; graph.vertex_count];
    let mut ds = DisjointSets::new(graph.vertex_count);
    let mut rest = mask;
    let mut touched = 0usize;
    while rest != 0 {
        let e = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let (u, v) = graph.edges[e];
        for x in [u, v] {
            if degree[x] == 0 {
                touched += 1;
            }
            degree[x] += 1;
            if degree[x] > 2 {
                return false;
            }
        }
        ds.union(u, v);
    }
    if degree.iter().any(|&d| d == 1) {
        return false;
    }
    // connected on the touched vertices
    let untouched = graph.vertex_count - touched;
    ds.sets() == untouched + 1
}

/// All circuits of the cycle matroid, each as a sorted list of edge indices,
/// ordered by bitmask value.
pub fn circuits(graph: &Multigraph) -> Result<Vec<Vec<usize>>> {
    circuits_bounded(graph, CIRCUIT_BOUND)
}

pub fn circuits_bounded(graph: &Multigraph, bound: usize) -> Result<Vec<Vec<usize>>> {
    let m = graph.edge_count();
    if m > bound || m > 30 {
        return Err(Error::BoundExceeded {
            what: "edge count for circuit enumeration",
            size: m,
            bound: bound.min(30),
        });
    }
    Ok(circuit_masks(graph)
        .into_iter()
        .map(mask_to_list)
        .collect())
}

pub(crate) fn circuit_masks(graph: &Multigraph) -> Vec<u64> {
    let m = graph.edge_count();
    (1u64..(1u64 << m))
        .filter(|&mask| is_cycle_mask(graph, mask))
        .collect()
}

pub(crate) fn mask_to_list(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// Cycle matroid M(F) with a rank oracle and (for small ground sets) its circuits.
#[derive(Debug, Clone)]
pub struct CycleMatroidView {
    graph: Multigraph,
    circuits: Option<Vec<Vec<usize>>>,
}

impl CycleMatroidView {
    pub fn new(graph: &Multigraph) -> Self {
        CycleMatroidView {
            circuits: circuits(graph).ok(),
            graph: graph.clone(),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn rank(&self, subset: &[usize]) -> Result<usize> {
        rank(&self.graph, subset)
    }

    /// `None` when the ground set exceeds [`CIRCUIT_BOUND`].
    pub fn circuits(&self) -> Option<&[Vec<usize>]> {
        self.circuits.as_deref()
    }
}

/// Checks that `bijection` (edge `i` of `a` goes to edge `bijection[i]` of `b`)
/// maps the circuits of `a` exactly onto the circuits of `b`.
pub fn is_matroid_isomorphism(
    a: &Multigraph,
    b: &Multigraph,
    bijection: &[usize],
    bound: usize,
) -> Result<bool> {
    let m = a.edge_count();
    if b.edge_count() != m || bijection.len() != m {
        return Ok(false);
    }
    let mut seen = vec![false; m];
    for &t in bijection {
        if t >= m || std::mem::replace(&mut seen[t], true) {
            return Ok(false);
        }
    }
    circuits_bounded(a, bound)?;
    circuits_bounded(b, bound)?;
    let ca = circuit_masks(a);
    let cb: HashSet<u64> = circuit_masks(b).into_iter().collect();
    if ca.len() != cb.len() {
        return Ok(false);
    }
    Ok(ca
        .iter()
        .all(|&mask| cb.contains(&map_mask(mask, bijection))))
}

fn map_mask(mask: u64, bijection: &[usize]) -> u64 {
    let mut out = 0u64;
    let mut rest = mask;
    while rest != 0 {
        let e = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        out |= 1 << bijection[e];
    }
    out
}

/// Searches for an edge bijection carrying the circuits of `a` onto those of
/// `b`. Exhaustive backtracking, pruned by each edge's circuit-size profile
/// and by every circuit that becomes fully assigned.
pub fn matroid_isomorphic(a: &Multigraph, b: &Multigraph) -> Result<Option<Vec<usize>>> {
    matroid_isomorphic_bounded(a, b, MATROID_ISO_BOUND)
}

pub fn matroid_isomorphic_bounded(
    a: &Multigraph,
    b: &Multigraph,
    bound: usize,
) -> Result<Option<Vec<usize>>> {
    let m = a.edge_count();
    for size in [m, b.edge_count()] {
        if size > bound {
            return Err(Error::BoundExceeded {
                what: "edge count for matroid isomorphism",
                size,
                bound,
            });
        }
    }
    if b.edge_count() != m {
        return Ok(None);
    }
    let ca = circuit_masks(a);
    let cb = circuit_masks(b);
    let sizes = |cs: &[u64]| {
        let mut s: Vec<u32> = cs.iter().map(|c| c.count_ones()).collect();
        s.sort_unstable();
        s
    };
    if sizes(&ca) != sizes(&cb) {
        return Ok(None);
    }
    let profile = |cs: &[u64], e: usize| {
        let mut p: Vec<u32> = cs
            .iter()
            .filter(|&&c| c >> e & 1 == 1)
            .map(|c| c.count_ones())
            .collect();
        p.sort_unstable();
        p
    };
    let pa: Vec<_> = (0..m).map(|e| profile(&ca, e)).collect();
    let pb: Vec<_> = (0..m).map(|e| profile(&cb, e)).collect();
    let cb_set: HashSet<u64> = cb.iter().copied().collect();

    // circuits of `a` completed once edges 0..=i are assigned
    let mut closing: Vec<Vec<u64>> = vec![Vec::new(); m];
    for &c in &ca {
        let top = 63 - c.leading_zeros() as usize;
        closing[top].push(c);
    }

    struct Search<'a> {
        m: usize,
        pa: &'a [Vec<u32>],
        pb: &'a [Vec<u32>],
        closing: &'a [Vec<u64>],
        cb: &'a HashSet<u64>,
        image: Vec<usize>,
        used: Vec<bool>,
    }
    impl Search<'_> {
        fn run(&mut self, e: usize) -> bool {
            if e == self.m {
                return true;
            }
            for t in 0..self.m {
                if self.used[t] || self.pa[e] != self.pb[t] {
                    continue;
                }
                self.image[e] = t;
                let ok = self.closing[e]
                    .iter()
                    .all(|&c| self.cb.contains(&map_mask(c, &self.image)));
                if ok {
                    self.used[t] = true;
                    if self.run(e + 1) {
                        return true;
                    }
                    self.used[t] = false;
                }
            }
            false
        }
    }
    let mut search = Search {
        m,
        pa: &pa,
        pb: &pb,
        closing: &closing,
        cb: &cb_set,
        image: vec![0; m],
        used: vec![false; m],
    };
    Ok(search.run(0).then_some(search.image))
}

/// All multisets of size `size` drawn from `0..kinds`, in lexicographic order.
fn multisets(kinds: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn rec(kinds: usize, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..kinds {
            cur.push(i);
            rec(kinds, size, i, cur, out);
            cur.pop();
        }
    }
    rec(kinds, size, 0, &mut current, &mut out);
    out
}

fn vertex_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u..n {
            pairs.push((u, v));
        }
    }
    pairs
}

/// Every multigraph with at most `max_vertices` vertices and `max_edges`
/// edges, up to isomorphism, ordered by (vertices, edges) and then
/// lexicographically. Isomorphic duplicates are removed for vertex counts up
/// to [`DEDUP_MAX_VERTICES`] and kept above it.
///
/// Cost: for each n, the number of edge multisets is C(n(n+1)/2 + e - 1, e)
/// summed over e, each canonicalized in n! steps.
pub fn enumerate_multigraphs(max_vertices: usize, max_edges: usize) -> Vec<Multigraph> {
    enumerate_labeled(0, max_vertices, max_edges)
        .into_iter()
        .map(LabeledGraph::into_graph)
        .collect()
}

/// Every k-labelled multigraph (labels on vertices `0..k`) with at most
/// `max_vertices` vertices and `max_edges` edges, up to label-preserving
/// isomorphism, in the same order as [`enumerate_multigraphs`].
pub fn enumerate_labeled(k: usize, max_vertices: usize, max_edges: usize) -> Vec<LabeledGraph> {
    let mut out = Vec::new();
    for n in k..=max_vertices {
        let pairs = vertex_pairs(n);
        for e in 0..=max_edges {
            if pairs.is_empty() && e > 0 {
                break;
            }
            let mut seen = HashSet::new();
            for choice in multisets(pairs.len(), e) {
                let graph = Multigraph {
                    vertex_count: n,
                    edges: choice.iter().map(|&i| pairs[i]).collect(),
                };
                if n <= DEDUP_MAX_VERTICES && !seen.insert(graph.canonical_key(k)) {
                    continue;
                }
                out.push(LabeledGraph {
                    graph,
                    labels: (0..k).collect(),
                });
            }
        }
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDocument {
    vertices: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<usize>>,
}

impl Serialize for Multigraph {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        GraphDocument {
            vertices: self.vertex_count,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
            labels: None,
        }
        .serialize(ser)
    }
}

impl Serialize for LabeledGraph {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        GraphDocument {
            vertices: self.graph.vertex_count,
            edges: self.graph.edges.iter().map(|&(u, v)| [u, v]).collect(),
            labels: (!self.labels.is_empty()).then(|| self.labels.clone()),
        }
        .serialize(ser)
    }
}

/// Parses `{"vertices": n, "edges": [[u,v], ...], "labels": [...]}`.
pub fn parse_graph(text: &str) -> Result<LabeledGraph> {
    let doc: GraphDocument = serde_json::from_str(text).map_err(|e| Error::from_json(&e))?;
    let graph = Multigraph::new(doc.vertices, doc.edges.iter().map(|e| (e[0], e[1])).collect())?;
    LabeledGraph::new(graph, doc.labels.unwrap_or_default())
}

/// Serializes in the format read by [`parse_graph`]; `labels` is omitted when k = 0.
pub fn graph_to_json(graph: &LabeledGraph) -> String {
    serde_json::to_string(graph).expect("graph serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> Multigraph {
        Multigraph::new(n, edges.to_vec()).unwrap()
    }

    fn lg(n: usize, edges: &[(usize, usize)], labels: &[usize]) -> LabeledGraph {
        LabeledGraph::new(g(n, edges), labels.to_vec()).unwrap()
    }

    #[test]
    fn component_counts() {
        assert_eq!(component_count(&Multigraph::empty(0)), 0);
        assert_eq!(component_count(&Multigraph::empty(3)), 3);
        let tri_plus = g(4, &[(0, 1), (1, 2), (2, 0)]);
        let (c, ids) = components(&tri_plus);
        assert_eq!(c, 2);
        assert_eq!(ids, vec![0, 0, 0, 1]);
        // loops and multiplicities don't matter
        assert_eq!(component_count(&g(2, &[(0, 0), (0, 1), (1, 0)])), 1);
    }

    #[test]
    fn ranks() {
        let tri = Multigraph::cycle(3);
        assert_eq!(rank(&tri, &[0, 1, 2]).unwrap(), 2);
        assert_eq!(rank(&tri, &[]).unwrap(), 0);
        assert_eq!(rank(&Multigraph::cycle(2), &[0, 1]).unwrap(), 1);
        assert_eq!(
            rank(&tri, &[3]),
            Err(Error::EdgeOutOfRange { index: 3, edges: 3 })
        );
    }

    #[test]
    fn glue_examples() {
        let dot = LabeledGraph::points(1);
        assert_eq!(dot.glue(&dot).unwrap(), dot);

        let pendant = lg(2, &[(0, 1)], &[0]);
        let p3 = pendant.glue(&pendant).unwrap();
        assert!(p3.graph().is_isomorphic(&Multigraph::path(2)));

        let looped = lg(1, &[(0, 0)], &[0]);
        let two_loops = looped.glue(&looped).unwrap();
        assert_eq!(two_loops.graph(), &g(1, &[(0, 0), (0, 0)]));

        let e2 = lg(2, &[(0, 1)], &[0, 1]);
        assert!(matches!(
            pendant.glue(&e2),
            Err(Error::ArityMismatch { expected: 1, found: 2 })
        ));
    }

    #[test]
    fn glue_component_count_for_one_label() {
        let a = lg(4, &[(0, 1), (2, 3)], &[0]);
        let b = lg(3, &[(1, 2)], &[2]);
        let ab = a.glue(&b).unwrap();
        assert_eq!(
            component_count(ab.graph()),
            component_count(a.graph()) + component_count(b.graph()) - 1
        );
    }

    #[test]
    fn transpose_examples() {
        let path = lg(3, &[(0, 1), (1, 2)], &[0, 1]);
        let t = path.transpose().unwrap();
        assert_eq!(t.labels(), &[1, 0]);
        assert_eq!(t.transpose().unwrap(), path);
        assert!(LabeledGraph::points(1).transpose().is_err());
        let edge = lg(2, &[(0, 1)], &[0, 1]);
        assert_eq!(
            edge.transpose().unwrap().canonical_key(),
            edge.canonical_key()
        );
    }

    #[test]
    fn whitney_flip_examples() {
        let edge = lg(2, &[(0, 1)], &[0, 1]);
        let (a, b) = whitney_flip(&edge, &edge).unwrap();
        assert_eq!(a, g(2, &[(0, 1), (0, 1)]));
        assert!(b.is_isomorphic(&a));

        let path = lg(3, &[(0, 2), (2, 1)], &[0, 1]);
        let (a, b) = whitney_flip(&path, &edge).unwrap();
        assert!(a.is_isomorphic(&Multigraph::cycle(3)));
        assert!(b.is_isomorphic(&Multigraph::cycle(3)));

        // triangle 0-1-2 with a leaf 3 on vertex 0, labels on 0 and 1, glued
        // to a pendant edge at label 1 (a plain 1-2 edge is flip-symmetric)
        let tri_leaf = lg(4, &[(0, 1), (1, 2), (2, 0), (0, 3)], &[0, 1]);
        let pendant = lg(3, &[(0, 2)], &[0, 1]);
        let (a, b) = whitney_flip(&tri_leaf, &pendant).unwrap();
        assert!(!a.is_isomorphic(&b));
        assert!(is_matroid_isomorphism(&a, &b, &[0, 1, 2, 3, 4], CIRCUIT_BOUND).unwrap());
        assert_eq!(circuits(&a).unwrap(), circuits(&b).unwrap());
    }

    #[test]
    fn identify_and_split() {
        let pendant = lg(2, &[(0, 1)], &[0]);
        let p3 = identify_vertices(&pendant, &pendant).unwrap();
        assert!(p3.is_isomorphic(&Multigraph::path(2)));

        let split = split_at_cut(&Multigraph::path(2), 1).unwrap();
        let union = split.left.graph().disjoint_union(split.right.graph());
        assert!(union.is_isomorphic(&g(4, &[(0, 1), (2, 3)])));
        assert_eq!(split.origin, vec![0, 1]);

        assert_eq!(
            split_at_cut(&Multigraph::path(2), 0),
            Err(Error::NotSeparating { vertex: 0 })
        );
        assert_eq!(
            split_at_cut(&Multigraph::cycle(4), 2),
            Err(Error::NotSeparating { vertex: 2 })
        );
    }

    #[test]
    fn split_inverts_identify() {
        let tri = LabeledGraph::new(Multigraph::cycle(3), vec![0]).unwrap();
        let bowtie = identify_vertices(&tri, &tri).unwrap();
        let split = split_at_cut(&bowtie, 0).unwrap();
        assert!(split.left.graph().is_isomorphic(tri.graph()));
        assert!(split.right.graph().is_isomorphic(tri.graph()));
        let rejoined = identify_vertices(&split.left, &split.right).unwrap();
        assert!(rejoined.is_isomorphic(&bowtie));
    }

    #[test]
    fn circuit_examples() {
        assert_eq!(circuits(&g(1, &[(0, 0)])).unwrap(), vec![vec![0]]);
        assert_eq!(circuits(&Multigraph::cycle(2)).unwrap(), vec![vec![0, 1]]);
        assert_eq!(circuits(&Multigraph::cycle(4)).unwrap(), vec![vec![0, 1, 2, 3]]);
        assert!(circuits(&Multigraph::path(3)).unwrap().is_empty());
        assert!(matches!(
            circuits(&Multigraph::path(13)),
            Err(Error::BoundExceeded { .. })
        ));
        // K4 has 4 triangles and 3 four-cycles
        assert_eq!(circuits(&Multigraph::complete(4)).unwrap().len(), 7);
    }

    #[test]
    fn matroid_isomorphism_examples() {
        let tri = Multigraph::cycle(3);
        assert!(matroid_isomorphic(&tri, &tri).unwrap().is_some());
        assert!(matroid_isomorphic(&tri, &Multigraph::path(3)).unwrap().is_none());
        assert!(matroid_isomorphic(&Multigraph::path(3), &Multigraph::star(3))
            .unwrap()
            .is_some());
        // a cycle of length 3 and a loop plus two bridges differ in circuit sizes
        let loopy = g(3, &[(0, 0), (0, 1), (1, 2)]);
        assert!(matroid_isomorphic(&tri, &loopy).unwrap().is_none());
        assert!(matroid_isomorphic(&Multigraph::path(9), &Multigraph::path(9)).is_err());
    }

    #[test]
    fn cycle_matroid_view() {
        let view = CycleMatroidView::new(&Multigraph::complete(4));
        assert_eq!(view.ground_size(), 6);
        assert_eq!(view.rank(&[]).unwrap(), 0);
        for c in view.circuits().unwrap() {
            assert_eq!(view.rank(c).unwrap(), c.len() - 1);
        }
    }

    #[test]
    fn enumeration_examples() {
        let small = enumerate_multigraphs(1, 1);
        assert!(small.contains(&Multigraph::empty(1)));
        assert!(small.contains(&g(1, &[(0, 0)])));

        let empties = enumerate_multigraphs(2, 0);
        assert!(empties.contains(&Multigraph::empty(1)));
        assert!(empties.contains(&Multigraph::empty(2)));

        let three = enumerate_multigraphs(3, 3);
        assert!(three.iter().any(|f| f.is_isomorphic(&Multigraph::cycle(3))));

        // deterministic and duplicate-free at small sizes
        assert_eq!(three, enumerate_multigraphs(3, 3));
        let keys: HashSet<_> = three
            .iter()
            .map(|f| (f.vertex_count(), f.canonical_key(0)))
            .collect();
        assert_eq!(keys.len(), three.len());
    }

    #[test]
    fn labeled_enumeration_has_labels_first() {
        let list = enumerate_labeled(2, 3, 2);
        assert!(list.iter().all(|f| f.labels() == [0, 1]));
        assert!(list.contains(&lg(2, &[(0, 1)], &[0, 1])));
        // the path 1-x-2 appears once
        let paths = list
            .iter()
            .filter(|f| f.canonical_key() == lg(3, &[(0, 2), (1, 2)], &[0, 1]).canonical_key())
            .count();
        assert_eq!(paths, 1);
    }

    #[test]
    fn json_round_trip_and_diagnostics() {
        let text = r#"{"vertices": 4, "edges": [[0,1],[1,2],[1,2],[3,3]], "labels": [0,2]}"#;
        let f = parse_graph(text).unwrap();
        assert_eq!(f.k(), 2);
        assert_eq!(f.graph().edge_count(), 4);
        assert_eq!(parse_graph(&graph_to_json(&f)).unwrap(), f);

        let err = parse_graph(r#"{"vertices": 2, "edges": [[0,5]]}"#).unwrap_err();
        assert!(err.to_string().contains("edges[0]"), "{err}");
        let err = parse_graph(r#"{"vertices": 2, "edges": [], "labels": [1,1]}"#).unwrap_err();
        assert!(err.to_string().contains("labels[1]"), "{err}");
        let err = parse_graph("{\n\"vertices\": 2,\n\"edgez\": []}").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    }
}
