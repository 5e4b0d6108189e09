//! Weighted homomorphism counts, the normalized invariant h, homomorphism
//! tensors of labelled graphs and the invariant-subspace rank test.
//!
//! `hom` is the definition evaluated literally and serves as the oracle;
//! `hom_fast` and `hom_tensor` share a variable-elimination contraction
//! whose cost is exponential only in the elimination width.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::multigraph::{component_count, enumerate_labeled, LabeledGraph, Multigraph};
use crate::rational::{self, Rational};
use crate::span::RowSpace;
use crate::weighted::{AutomorphismGroup, WeightedGraph};

/// Largest intermediate table (in entries) the elimination will build
/// before falling back to brute force.
pub const TABLE_CAP: usize = 1 << 22;
/// Largest tensor (in entries) `hom_tensor` will materialize.
pub const TENSOR_CAP: usize = 1 << 24;

/// hom(F, G(a, B)) by summing over every map V(F) → [n]. Cost n^|V| · (|V| + |E|).
pub fn hom(graph: &Multigraph, target: &WeightedGraph) -> Rational {
    let n = target.n();
    let vc = graph.vertex_count();
    if vc == 0 {
        return rational::one();
    }
    if n == 0 {
        return rational::zero();
    }
    let mut phi = vec![0usize; vc];
    let mut total = rational::zero();
    loop {
        let mut term = rational::one();
        for &v in &phi {
            term *= &target.a()[v];
        }
        for &(u, v) in graph.edges() {
            if term.is_zero() {
                break;
            }
            term *= &target.b()[phi[u]][phi[v]];
        }
        total += term;
        if !advance(&mut phi, n) {
            return total;
        }
    }
}

/// Odometer step over `[0, n)^len`, last position fastest.
fn advance(digits: &mut [usize], n: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < n {
            return true;
        }
        *d = 0;
    }
    false
}

/// Same value as [`hom`], by sequential vertex elimination.
pub fn hom_fast(graph: &Multigraph, target: &WeightedGraph) -> Rational {
    match contract(graph, target, &[], TABLE_CAP) {
        Some(table) => table.into_iter().next().expect("scalar table"),
        None => hom(graph, target),
    }
}

/// h(F, G) = hom(F, G) / (Σ a_i)^c(F).
pub fn h(graph: &Multigraph, target: &WeightedGraph) -> Result<Rational> {
    let sum = target.weight_sum();
    if sum.is_zero() {
        return Err(Error::ZeroWeightSum);
    }
    let denom = rational::pow(&sum, component_count(graph));
    Ok(hom_fast(graph, target) / denom)
}

/// A factor of the contraction: a table over the assignments of `scope`
/// (first scope vertex most significant).
#[derive(Debug, Clone)]
struct Factor {
    scope: Vec<usize>,
    table: Vec<Rational>,
}

/// Sums out every vertex not in `keep`, weighting only those vertices by `a`,
/// and returns the table over the assignments of `keep` (mixed radix, first
/// kept vertex most significant). `None` if a table would exceed `cap`.
fn contract(
    graph: &Multigraph,
    target: &WeightedGraph,
    keep: &[usize],
    cap: usize,
) -> Option<Vec<Rational>> {
    let n = target.n();
    let vc = graph.vertex_count();
    let out_len = checked_pow(n, keep.len())?;
    if out_len > cap {
        return None;
    }
    if n == 0 {
        // no maps at all unless F is empty
        return Some(if vc == 0 { vec![rational::one()] } else { vec![rational::zero(); out_len] });
    }

    let mut by_scope: BTreeMap<Vec<usize>, Factor> = BTreeMap::new();
    let mut push = |factor: Factor| match by_scope.get_mut(&factor.scope) {
        Some(existing) => {
            for (x, y) in existing.table.iter_mut().zip(&factor.table) {
                *x *= y;
            }
        }
        None => {
            by_scope.insert(factor.scope.clone(), factor);
        }
    };
    for v in 0..vc {
        if !keep.contains(&v) {
            push(Factor {
                scope: vec![v],
                table: target.a().to_vec(),
            });
        }
    }
    for &(u, v) in graph.edges() {
        if u == v {
            push(Factor {
                scope: vec![u],
                table: (0..n).map(|i| target.b()[i][i].clone()).collect(),
            });
        } else {
            let (lo, hi) = (u.min(v), u.max(v));
            let mut table = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    table.push(target.b()[i][j].clone());
                }
            }
            push(Factor {
                scope: vec![lo, hi],
                table,
            });
        }
    }
    let mut factors: Vec<Factor> = by_scope.into_values().collect();
    let mut pending: Vec<usize> = (0..vc).filter(|v| !keep.contains(v)).collect();

    while !pending.is_empty() {
        // vertex with the fewest distinct neighbours among current factors
        let (pos, neighbours) = pending
            .iter()
            .enumerate()
            .map(|(pos, &v)| {
                let mut nb: Vec<usize> = factors
                    .iter()
                    .filter(|f| f.scope.contains(&v))
                    .flat_map(|f| f.scope.iter().copied())
                    .filter(|&u| u != v)
                    .collect();
                nb.sort_unstable();
                nb.dedup();
                (pos, nb)
            })
            .min_by_key(|(pos, nb)| (nb.len(), *pos))
            .expect("pending is nonempty");
        let v = pending.swap_remove(pos);
        if checked_pow(n, neighbours.len() + 1)? > cap {
            return None;
        }
        let (involved, rest): (Vec<Factor>, Vec<Factor>) =
            factors.into_iter().partition(|f| f.scope.contains(&v));
        factors = rest;
        let mut scope = neighbours.clone();
        scope.push(v);
        let full = product_over(&scope, &involved, n);
        // v is the last (fastest) coordinate: sum consecutive blocks of n
        let table: Vec<Rational> = full
            .chunks(n)
            .map(|chunk| chunk.iter().sum())
            .collect();
        factors.push(Factor {
            scope: neighbours,
            table,
        });
    }
    Some(product_over(keep, &factors, n))
}

/// Pointwise product of `factors` (whose scopes lie inside `scope`) tabulated over `scope`.
fn product_over(scope: &[usize], factors: &[Factor], n: usize) -> Vec<Rational> {
    let len = n.pow(scope.len() as u32);
    let positions: Vec<Vec<usize>> = factors
        .iter()
        .map(|f| {
            f.scope
                .iter()
                .map(|v| scope.iter().position(|u| u == v).expect("factor scope inside target scope"))
                .collect()
        })
        .collect();
    let mut digits = vec![0usize; scope.len()];
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        let mut value = rational::one();
        for (f, pos) in factors.iter().zip(&positions) {
            let idx = pos.iter().fold(0, |acc, &p| acc * n + digits[p]);
            let entry = &f.table[idx];
            if entry.is_zero() {
                value = rational::zero();
                break;
            }
            value *= entry;
        }
        out.push(value);
        advance(&mut digits, n);
    }
    out
}

fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    base.checked_pow(exp as u32)
}

/// Dense rank-k tensor over [n]^k, entry φ at index Σ φ(i) n^(k-1-i).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomTensor {
    k: usize,
    n: usize,
    entries: Vec<Rational>,
}

impl HomTensor {
    pub fn new(k: usize, n: usize, entries: Vec<Rational>) -> Result<Self> {
        let expected = n.checked_pow(k as u32).ok_or_else(|| Error::ShapeMismatch("n^k overflows".into()))?;
        if entries.len() != expected {
            return Err(Error::ShapeMismatch(format!(
                "expected {expected} entries for k = {k}, n = {n}, found {}",
                entries.len()
            )));
        }
        Ok(HomTensor { k, n, entries })
    }

    /// The basis tensor e_φ.
    pub fn basis(k: usize, n: usize, phi: &[usize]) -> Self {
        let mut entries = vec![rational::zero(); n.pow(k as u32)];
        entries[index_of(phi, n)] = rational::one();
        HomTensor { k, n, entries }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, phi: &[usize]) -> &Rational {
        &self.entries[index_of(phi, self.n)]
    }

    /// Swaps the two coordinates of a k = 2 tensor.
    pub fn transpose(&self) -> Result<HomTensor> {
        if self.k != 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                found: self.k,
            });
        }
        let n = self.n;
        let entries = (0..n * n)
            .map(|idx| self.entries[(idx % n) * n + idx / n].clone())
            .collect();
        Ok(HomTensor { k: 2, n, entries })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Product of vertex weights a_φ(1) ⋯ a_φ(k) for every φ.
    pub fn label_weights(k: usize, target: &WeightedGraph) -> HomTensor {
        let n = target.n();
        let mut entries = Vec::with_capacity(n.pow(k as u32));
        let mut phi = vec![0; k];
        for _ in 0..n.pow(k as u32) {
            entries.push(phi.iter().map(|&i| target.a()[i].clone()).product());
            advance(&mut phi, n);
        }
        HomTensor { k, n, entries }
    }
}

fn index_of(phi: &[usize], n: usize) -> usize {
    phi.iter().fold(0, |acc, &i| acc * n + i)
}

/// p_{a,B}(F): for each φ: [k] → [n] the weighted count of extensions of φ
/// to V(F), with vertex weights on unlabelled vertices only.
pub fn hom_tensor(graph: &LabeledGraph, target: &WeightedGraph) -> Result<HomTensor> {
    let k = graph.k();
    let n = target.n();
    let size = n.checked_pow(k as u32).unwrap_or(usize::MAX);
    if size > TENSOR_CAP {
        return Err(Error::BoundExceeded {
            what: "tensor size n^k",
            size,
            bound: TENSOR_CAP,
        });
    }
    let entries = match contract(graph.graph(), target, graph.labels(), TABLE_CAP.max(size)) {
        Some(table) => table,
        None => hom_tensor_brute(graph, target).entries,
    };
    Ok(HomTensor { k, n, entries })
}

/// Literal evaluation of p_{a,B}(F) over all maps V(F) → [n].
pub fn hom_tensor_brute(graph: &LabeledGraph, target: &WeightedGraph) -> HomTensor {
    let k = graph.k();
    let n = target.n();
    let f = graph.graph();
    let mut entries = vec![rational::zero(); n.pow(k as u32)];
    if n > 0 || f.vertex_count() == 0 {
        let labels = graph.labels();
        let mut psi = vec![0usize; f.vertex_count()];
        loop {
            if n == 0 {
                entries[0] = rational::one();
                break;
            }
            let mut term = rational::one();
            for (v, &i) in psi.iter().enumerate() {
                if !labels.contains(&v) {
                    term *= &target.a()[i];
                }
            }
            for &(u, v) in f.edges() {
                term *= &target.b()[psi[u]][psi[v]];
            }
            let phi: Vec<usize> = labels.iter().map(|&l| psi[l]).collect();
            entries[index_of(&phi, n)] += term;
            if !advance(&mut psi, n) {
                break;
            }
        }
    }
    HomTensor { k, n, entries }
}

fn check_shape(t1: &HomTensor, t2: &HomTensor) -> Result<()> {
    if t1.k != t2.k || t1.n != t2.n {
        return Err(Error::ShapeMismatch(format!(
            "(k, n) = ({}, {}) vs ({}, {})",
            t1.k, t1.n, t2.k, t2.n
        )));
    }
    Ok(())
}

/// The bilinear form (e_φ, e_ψ) = δ_φψ.
pub fn pairing(t1: &HomTensor, t2: &HomTensor) -> Result<Rational> {
    check_shape(t1, t2)?;
    Ok(t1.entries.iter().zip(&t2.entries).map(|(x, y)| x * y).sum())
}

/// Pairing with each φ weighted by a_φ(1) ⋯ a_φ(k), so that
/// `pairing_a(p(F1), p(F2)) = hom(F1 · F2)` for arbitrary vertex weights.
pub fn pairing_a(t1: &HomTensor, t2: &HomTensor, target: &WeightedGraph) -> Result<Rational> {
    check_shape(t1, t2)?;
    if target.n() != t1.n {
        return Err(Error::ShapeMismatch(format!("tensor n = {} but target n = {}", t1.n, target.n())));
    }
    let weights = HomTensor::label_weights(t1.k, target);
    Ok(t1
        .entries
        .iter()
        .zip(&t2.entries)
        .zip(&weights.entries)
        .map(|((x, y), w)| x * y * w)
        .sum())
}

/// Projection (1/|Γ|) Σ_γ γt onto the Γ-invariant tensors.
pub fn group_average(t: &HomTensor, group: &AutomorphismGroup) -> Result<HomTensor> {
    if group.degree() != t.n {
        return Err(Error::ShapeMismatch(format!(
            "group degree {} but tensor n = {}",
            group.degree(),
            t.n
        )));
    }
    let mut out = vec![rational::zero(); t.entries.len()];
    let mut phi = vec![0usize; t.k];
    for value in &t.entries {
        if !value.is_zero() {
            for g in group.elements() {
                let image: Vec<usize> = phi.iter().map(|&i| g.apply(i)).collect();
                out[index_of(&image, t.n)] += value;
            }
        }
        advance(&mut phi, t.n);
    }
    let order = Rational::from_integer(group.order().into());
    for x in out.iter_mut() {
        *x /= &order;
    }
    Ok(HomTensor {
        k: t.k,
        n: t.n,
        entries: out,
    })
}

/// The default corpus for the rank test: all k-labelled graphs with at most
/// k + 2 vertices and k + 3 edges.
pub fn default_corpus(k: usize) -> Vec<LabeledGraph> {
    enumerate_labeled(k, k + 2, k + 3)
}

/// Tensors of every corpus graph, evaluated in parallel, in corpus order.
pub fn corpus_tensors(target: &WeightedGraph, corpus: &[LabeledGraph]) -> Result<Vec<HomTensor>> {
    corpus
        .par_iter()
        .map(|f| hom_tensor(f, target))
        .collect()
}

/// Exact rank of the span of p(F) over the corpus. Requires a twin-free target.
pub fn invariant_rank(target: &WeightedGraph, k: usize, corpus: &[LabeledGraph]) -> Result<usize> {
    if let Some((i, j)) = target.twin_pair() {
        return Err(Error::NotTwinFree(i, j));
    }
    for f in corpus {
        if f.k() != k {
            return Err(Error::ArityMismatch {
                expected: k,
                found: f.k(),
            });
        }
    }
    let tensors = corpus_tensors(target, corpus)?;
    let mut space = RowSpace::new(target.n().pow(k as u32));
    for t in &tensors {
        space.insert(t.entries());
    }
    Ok(space.rank())
}

/// True when `t` is fixed by every element of `group`.
pub fn is_invariant(t: &HomTensor, group: &AutomorphismGroup) -> bool {
    let mut phi = vec![0usize; t.k];
    for value in &t.entries {
        for g in group.elements() {
            let image: Vec<usize> = phi.iter().map(|&i| g.apply(i)).collect();
            if &t.entries[index_of(&image, t.n)] != value {
                return false;
            }
        }
        advance(&mut phi, t.n);
    }
    true
}

/// Sum of all entries of `t`.
pub fn total(t: &HomTensor) -> Rational {
    t.entries.iter().sum()
}

impl std::fmt::Display for HomTensor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut phi = vec![0usize; self.k];
        for value in &self.entries {
            let coords: Vec<String> = phi.iter().map(|i| i.to_string()).collect();
            writeln!(f, "[{}] {}", coords.join(","), value)?;
            advance(&mut phi, self.n);
        }
        Ok(())
    }
}
