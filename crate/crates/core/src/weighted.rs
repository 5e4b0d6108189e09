//! Weighted target graphs G(a, B), their automorphism groups and twin reduction.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multigraph::next_permutation;
use crate::rational::{self, RawRational, Rational};

/// Default largest target handled by the automorphism search.
pub const AUT_MAX_VERTICES: usize = 16;
/// Default largest group the automorphism search will list.
pub const AUT_MAX_ORDER: usize = 1 << 20;

/// Vertex weights `a` (all nonzero) and a symmetric edge-weight matrix `B`.
///
/// `n = 0` only arises as the output of [`twin_reduce`] when every twin class
/// cancels; it cannot be constructed directly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedGraph {
    a: Vec<Rational>,
    b: Vec<Vec<Rational>>,
}

impl WeightedGraph {
    pub fn new(a: Vec<Rational>, b: Vec<Vec<Rational>>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::invalid("n", "target needs at least one vertex"));
        }
        Self::checked(a, b)
    }

    fn checked(a: Vec<Rational>, b: Vec<Vec<Rational>>) -> Result<Self> {
        let n = a.len();
        if b.len() != n {
            return Err(Error::invalid("B", format!("expected {n} rows, found {}", b.len())));
        }
        for (i, row) in b.iter().enumerate() {
            if row.len() != n {
                return Err(Error::invalid(
                    format!("B[{i}]"),
                    format!("expected {n} entries, found {}", row.len()),
                ));
            }
        }
        for (i, w) in a.iter().enumerate() {
            if w.is_zero() {
                return Err(Error::invalid(format!("a[{i}]"), "vertex weight must be nonzero"));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if b[i][j] != b[j][i] {
                    return Err(Error::invalid(
                        format!("B[{i}][{j}]"),
                        format!("matrix not symmetric: {} != B[{j}][{i}] = {}", b[i][j], b[j][i]),
                    ));
                }
            }
        }
        Ok(WeightedGraph { a, b })
    }

    /// The empty target produced when twin reduction cancels every class.
    pub fn empty() -> Self {
        WeightedGraph {
            a: Vec::new(),
            b: Vec::new(),
        }
    }

    /// Unit vertex weights and a 0/1 adjacency matrix.
    pub fn from_simple_graph(adjacency: &[Vec<bool>]) -> Result<Self> {
        let b = adjacency
            .iter()
            .map(|row| row.iter().map(|&x| if x { rational::one() } else { rational::zero() }).collect())
            .collect();
        Self::new(vec![rational::one(); adjacency.len()], b)
    }

    /// Unit vertex weights; `B[i][j]` counts the edges between `i` and `j`
    /// (a loop contributes 1 to the diagonal).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut b = vec![vec![rational::zero(); n]; n];
        for (k, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("edges[{k}]"), "endpoint out of range"));
            }
            b[u][v] += rational::one();
            if u != v {
                b[v][u] += rational::one();
            }
        }
        Self::new(vec![rational::one(); n], b)
    }

    pub fn complete_graph(n: usize) -> Self {
        Self::tutte_target(n, &rational::zero())
    }

    /// G(1, (y-1)I + J).
    pub fn tutte_target(n: usize, y: &Rational) -> Self {
        let diag = y.clone();
        let b = (0..n)
            .map(|i| (0..n).map(|j| if i == j { diag.clone() } else { rational::one() }).collect())
            .collect();
        Self::new(vec![rational::one(); n], b).expect("n >= 1")
    }

    /// Cayley graph of Z_m with connection set `set`: `u ~ v` iff `v - u ∈ set`.
    pub fn cayley_cyclic(m: usize, set: &[usize]) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("m", "modulus must be positive"));
        }
        let mut member = vec![false; m];
        for &s in set {
            member[s % m] = true;
        }
        for s in 0..m {
            if member[s] && !member[(m - s) % m] {
                return Err(Error::invalid(
                    "S",
                    format!("connection set is not symmetric: {s} in S but {} is not", (m - s) % m),
                ));
            }
        }
        let b = (0..m)
            .map(|u| {
                (0..m)
                    .map(|v| if member[(v + m - u) % m] { rational::one() } else { rational::zero() })
                    .collect()
            })
            .collect();
        Self::new(vec![rational::one(); m], b)
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[Rational] {
        &self.a
    }

    pub fn b(&self) -> &[Vec<Rational>] {
        &self.b
    }

    pub fn weight_sum(&self) -> Rational {
        self.a.iter().sum()
    }

    pub fn has_unit_weights(&self) -> bool {
        self.a.iter().all(One::is_one)
    }

    pub fn is_twin_free(&self) -> bool {
        self.twin_pair().is_none()
    }

    /// Some pair of twins, if one exists.
    pub fn twin_pair(&self) -> Option<(usize, usize)> {
        twin_classes(self)
            .into_iter()
            .find(|c| c.len() > 1)
            .map(|c| (c[0], c[1]))
    }

    /// Restriction to the vertices in `keep` (in that order).
    fn restrict(&self, keep: &[usize], a: Vec<Rational>) -> WeightedGraph {
        let b = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| self.b[i][j].clone()).collect())
            .collect();
        WeightedGraph { a, b }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TargetDocument {
    n: usize,
    a: Vec<serde_json::Value>,
    #[serde(rename = "B")]
    b: Vec<Vec<serde_json::Value>>,
}

fn rational_field(value: &serde_json::Value, field: String) -> Result<Rational> {
    let raw: RawRational = serde_json::from_value(value.clone())
        .map_err(|_| Error::invalid(field.clone(), format!("expected a rational string, found {value}")))?;
    raw.into_rational()
        .map_err(|e| Error::invalid(field, e.to_string()))
}

/// Parses `{"n": 3, "a": ["1", ...], "B": [["-2", "1", ...], ...]}`.
pub fn parse_target(text: &str) -> Result<WeightedGraph> {
    let doc: TargetDocument = serde_json::from_str(text).map_err(|e| Error::from_json(&e))?;
    if doc.a.len() != doc.n {
        return Err(Error::invalid("a", format!("expected {} weights, found {}", doc.n, doc.a.len())));
    }
    let a = doc
        .a
        .iter()
        .enumerate()
        .map(|(i, v)| rational_field(v, format!("a[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let b = doc
        .b
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, v)| rational_field(v, format!("B[{i}][{j}]")))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if doc.n == 0 {
        if b.is_empty() {
            return Ok(WeightedGraph::empty());
        }
        return Err(Error::invalid("B", "expected 0 rows for n = 0"));
    }
    WeightedGraph::new(a, b)
}

pub fn target_to_json(target: &WeightedGraph) -> String {
    let text = |r: &Rational| serde_json::Value::String(rational::format(r));
    let doc = TargetDocument {
        n: target.n(),
        a: target.a.iter().map(text).collect(),
        b: target.b.iter().map(|row| row.iter().map(text).collect()).collect(),
    };
    serde_json::to_string(&doc).expect("target serializes")
}

/// A bijection of `0..n`, `images[i]` being the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::invalid("permutation", format!("{images:?} is not a bijection")));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|&(i, &j)| i == j).count()
    }

    pub fn is_automorphism_of(&self, target: &WeightedGraph) -> bool {
        let n = target.n();
        self.degree() == n
            && (0..n).all(|i| {
                target.a[self.images[i]] == target.a[i]
                    && (0..n).all(|j| target.b[self.images[i]][self.images[j]] == target.b[i][j])
            })
    }
}

/// The full list of weight-preserving vertex permutations of a target, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphismGroup {
    n: usize,
    elements: Vec<Permutation>,
}

impl AutomorphismGroup {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    /// Closure under composition and inversion, presence of the identity,
    /// and Lagrange's divisibility |Γ| | n!.
    pub fn verify_group_axioms(&self) -> bool {
        let set: std::collections::HashSet<&Permutation> = self.elements.iter().collect();
        let id = Permutation::identity(self.n);
        let factorial_divisible = {
            let mut rem = self.order();
            for f in (1..=self.n).rev() {
                let g = num_integer::gcd(rem, f);
                rem /= g;
            }
            rem == 1
        };
        set.len() == self.elements.len()
            && set.contains(&id)
            && factorial_divisible
            && self.elements.iter().all(|g| set.contains(&g.inverse()))
            && self
                .elements
                .iter()
                .all(|g| self.elements.iter().all(|h| set.contains(&g.compose(h))))
    }

    /// Vertex orbits, each sorted, ordered by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.n];
        let mut out = Vec::new();
        for v in 0..self.n {
            if assigned[v] {
                continue;
            }
            let mut orbit: Vec<usize> = self.elements.iter().map(|g| g.apply(v)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &u in &orbit {
                assigned[u] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() <= 1
    }

    /// Every pair of vertices is swapped by some element.
    pub fn is_generously_transitive(&self) -> bool {
        let generous = (0..self.n).all(|u| {
            (u + 1..self.n).all(|v| self.elements.iter().any(|g| g.apply(u) == v && g.apply(v) == u))
        });
        debug_assert!(!generous || self.is_transitive());
        generous
    }

    /// A pair of vertices no element swaps, if any.
    pub fn unswappable_pair(&self) -> Option<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| (u + 1..self.n).map(move |v| (u, v)))
            .find(|&(u, v)| !self.elements.iter().any(|g| g.apply(u) == v && g.apply(v) == u))
    }
}

/// Automorphism group by backtracking with default bounds.
pub fn automorphisms(target: &WeightedGraph) -> Result<AutomorphismGroup> {
    automorphisms_bounded(target, AUT_MAX_VERTICES, AUT_MAX_ORDER)
}

/// Backtracking search: vertices are assigned in order, each only to vertices
/// with the same (weight, sorted row) profile, and every new assignment is
/// checked against all earlier ones.
pub fn automorphisms_bounded(
    target: &WeightedGraph,
    max_vertices: usize,
    max_order: usize,
) -> Result<AutomorphismGroup> {
    let n = target.n();
    if n > max_vertices {
        return Err(Error::BoundExceeded {
            what: "target size for automorphism search",
            size: n,
            bound: max_vertices,
        });
    }
    let profile: Vec<(Rational, Vec<Rational>)> = (0..n)
        .map(|i| {
            let mut row = target.b[i].clone();
            row.sort();
            (target.a[i].clone(), row)
        })
        .collect();
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| profile[j] == profile[i]).collect())
        .collect();

    struct Search<'a> {
        target: &'a WeightedGraph,
        candidates: &'a [Vec<usize>],
        image: Vec<usize>,
        used: Vec<bool>,
        found: Vec<Permutation>,
        max_order: usize,
        overflow: bool,
    }
    impl Search<'_> {
        fn run(&mut self, i: usize) {
            let n = self.image.len();
            if self.overflow {
                return;
            }
            if i == n {
                if self.found.len() == self.max_order {
                    self.overflow = true;
                    return;
                }
                self.found.push(Permutation {
                    images: self.image.clone(),
                });
                return;
            }
            for idx in 0..self.candidates[i].len() {
                let j = self.candidates[i][idx];
                if self.used[j] {
                    continue;
                }
                let b = &self.target.b;
                let consistent = b[j][j] == b[i][i]
                    && (0..i).all(|p| b[j][self.image[p]] == b[i][p]);
                if !consistent {
                    continue;
                }
                self.image[i] = j;
                self.used[j] = true;
                self.run(i + 1);
                self.used[j] = false;
            }
        }
    }
    let mut search = Search {
        target,
        candidates: &candidates,
        image: vec![0; n],
        used: vec![false; n],
        found: Vec::new(),
        max_order,
        overflow: false,
    };
    search.run(0);
    if search.overflow {
        return Err(Error::BoundExceeded {
            what: "automorphism group order",
            size: max_order + 1,
            bound: max_order,
        });
    }
    let mut elements = search.found;
    elements.sort();
    let group = AutomorphismGroup { n, elements };
    debug_assert!(n > 7 || group.verify_group_axioms());
    Ok(group)
}

/// Reference search over all n! permutations; only for small n.
pub fn automorphisms_brute_force(target: &WeightedGraph) -> Result<AutomorphismGroup> {
    let n = target.n();
    if n > 8 {
        return Err(Error::BoundExceeded {
            what: "target size for exhaustive automorphism scan",
            size: n,
            bound: 8,
        });
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut elements = Vec::new();
    loop {
        let p = Permutation {
            images: perm.clone(),
        };
        if p.is_automorphism_of(target) {
            elements.push(p);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(AutomorphismGroup { n, elements })
}

/// Classes of vertices with identical rows of `B`, ignoring vertex weights.
/// Each class is sorted; classes are ordered by smallest element.
pub fn twin_classes(target: &WeightedGraph) -> Vec<Vec<usize>> {
    let mut classes: BTreeMap<&[Rational], Vec<usize>> = BTreeMap::new();
    for (i, row) in target.b.iter().enumerate() {
        classes.entry(row.as_slice()).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = classes.into_values().collect();
    out.sort_by_key(|c| c[0]);
    out
}

/// Merges each twin class into its smallest vertex with the summed weight,
/// drops classes whose weight cancels to zero, and repeats until no twins
/// remain (dropping a vertex can make two rows equal).
pub fn twin_reduce(target: &WeightedGraph) -> WeightedGraph {
    let mut current = target.clone();
    loop {
        let classes = twin_classes(&current);
        if classes.iter().all(|c| c.len() == 1) && current.a.iter().all(|w| !w.is_zero()) {
            return current;
        }
        let mut keep = Vec::new();
        let mut weights = Vec::new();
        for class in &classes {
            let w: Rational = class.iter().map(|&i| current.a[i].clone()).sum();
            if !w.is_zero() {
                keep.push(class[0]);
                weights.push(w);
            }
        }
        current = current.restrict(&keep, weights);
    }
}

/// Number of orbits of Γ on maps [k] → [n], by Burnside: the average of fix(γ)^k.
pub fn orbit_count(group: &AutomorphismGroup, k: usize) -> usize {
    if group.order() == 0 {
        return 0;
    }
    let total: u128 = group
        .elements
        .iter()
        .map(|g| (g.fixed_points() as u128).pow(k as u32))
        .sum();
    debug_assert_eq!(total % group.order() as u128, 0);
    (total / group.order() as u128) as usize
}

pub fn target_orbit_count(target: &WeightedGraph, k: usize) -> Result<usize> {
    Ok(orbit_count(&automorphisms(target)?, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use std::collections::HashSet;

    fn p3() -> WeightedGraph {
        WeightedGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn c5() -> WeightedGraph {
        WeightedGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    fn ints(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn validation() {
        assert!(WeightedGraph::new(vec![int(1), int(0)], ints(&[&[0, 1], &[1, 0]])).is_err());
        let err = WeightedGraph::new(vec![int(1), int(1)], ints(&[&[0, 1], &[2, 0]])).unwrap_err();
        assert!(err.to_string().contains("B[0][1]"), "{err}");
        assert!(WeightedGraph::new(vec![], vec![]).is_err());
    }

    #[test]
    fn automorphism_examples() {
        assert_eq!(automorphisms(&WeightedGraph::complete_graph(3)).unwrap().order(), 6);
        let g = automorphisms(&p3()).unwrap();
        assert_eq!(g.order(), 2);
        assert!(g.elements().contains(&Permutation::new(vec![2, 1, 0]).unwrap()));
        let weighted = WeightedGraph::new(vec![int(1), int(2)], ints(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(automorphisms(&weighted).unwrap().order(), 1);
    }

    #[test]
    fn backtracking_matches_exhaustive_scan() {
        let targets = [
            p3(),
            c5(),
            WeightedGraph::complete_graph(4),
            WeightedGraph::tutte_target(3, &int(-2)),
            WeightedGraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap(),
            WeightedGraph::new(
                vec![int(1), int(1), frac(1, 2)],
                ints(&[&[1, 2, 0], &[2, 1, 0], &[0, 0, 3]]),
            )
            .unwrap(),
        ];
        for t in &targets {
            let fast = automorphisms(t).unwrap();
            assert_eq!(fast, automorphisms_brute_force(t).unwrap());
            assert!(fast.verify_group_axioms());
        }
    }

    #[test]
    fn bound_is_enforced() {
        let big = WeightedGraph::complete_graph(17);
        assert!(matches!(automorphisms(&big), Err(Error::BoundExceeded { .. })));
        let k9 = WeightedGraph::complete_graph(9);
        assert!(matches!(
            automorphisms_bounded(&k9, 16, 1000),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn transitivity_examples() {
        for n in 1..=5 {
            let g = automorphisms(&WeightedGraph::complete_graph(n)).unwrap();
            assert!(g.is_generously_transitive());
        }
        let c5g = automorphisms(&c5()).unwrap();
        assert_eq!(c5g.order(), 10);
        assert!(c5g.is_generously_transitive());
        let p3g = automorphisms(&p3()).unwrap();
        assert!(!p3g.is_transitive());
        assert!(!p3g.is_generously_transitive());
        assert_eq!(p3g.orbits(), vec![vec![0, 2], vec![1]]);
    }

    #[test]
    fn twin_class_examples() {
        let ones2 = WeightedGraph::new(vec![int(1), int(1)], ints(&[&[1, 1], &[1, 1]])).unwrap();
        assert_eq!(twin_classes(&ones2), vec![vec![0, 1]]);
        assert_eq!(
            twin_classes(&WeightedGraph::complete_graph(3)),
            vec![vec![0], vec![1], vec![2]]
        );
        let j3 = WeightedGraph::tutte_target(3, &int(1));
        assert_eq!(twin_classes(&j3), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn twin_reduce_examples() {
        let ones2 = WeightedGraph::new(vec![int(1), int(1)], ints(&[&[1, 1], &[1, 1]])).unwrap();
        let r = twin_reduce(&ones2);
        assert_eq!(r.a(), &[int(2)]);
        assert_eq!(r.b(), &ints(&[&[1]])[..]);

        let k3 = WeightedGraph::complete_graph(3);
        assert_eq!(twin_reduce(&k3), k3);

        let cancel = WeightedGraph::new(vec![int(1), int(-1)], ints(&[&[1, 1], &[1, 1]])).unwrap();
        assert_eq!(twin_reduce(&cancel).n(), 0);

        let pr = twin_reduce(&p3());
        assert_eq!(pr.a(), &[int(2), int(1)]);
        assert!(pr.is_twin_free());
    }

    #[test]
    fn twin_reduce_repeats_after_dropping_a_class() {
        // rows 0 and 1 differ only in the column of the cancelling class {2, 3}
        let b = ints(&[&[0, 0, 1, 1], &[0, 0, 2, 2], &[1, 2, 5, 5], &[1, 2, 5, 5]]);
        let g = WeightedGraph::new(vec![int(1), int(1), int(1), int(-1)], b).unwrap();
        let r = twin_reduce(&g);
        assert_eq!(r.n(), 1);
        assert_eq!(r.a(), &[int(2)]);
    }

    fn orbit_count_by_enumeration(group: &AutomorphismGroup, k: usize) -> usize {
        let n = group.degree();
        let total = n.pow(k as u32);
        let decode = |mut x: usize| {
            let mut phi = vec![0; k];
            for slot in phi.iter_mut().rev() {
                *slot = x % n;
                x /= n;
            }
            phi
        };
        let mut seen = HashSet::new();
        let mut orbits = 0;
        for x in 0..total {
            let phi = decode(x);
            if seen.contains(&phi) {
                continue;
            }
            orbits += 1;
            for g in group.elements() {
                seen.insert(phi.iter().map(|&i| g.apply(i)).collect::<Vec<_>>());
            }
        }
        orbits
    }

    #[test]
    fn orbit_count_examples() {
        let k3 = automorphisms(&WeightedGraph::complete_graph(3)).unwrap();
        assert_eq!(orbit_count(&k3, 1), 1);
        assert_eq!(orbit_count(&k3, 2), 2);
        let p3g = automorphisms(&p3()).unwrap();
        assert_eq!(orbit_count(&p3g, 1), 2);
        for group in [k3, p3g, automorphisms(&c5()).unwrap()] {
            for k in 0..=3 {
                assert_eq!(orbit_count(&group, k), orbit_count_by_enumeration(&group, k));
            }
        }
    }

    #[test]
    fn constructors() {
        assert_eq!(WeightedGraph::tutte_target(3, &int(0)), WeightedGraph::complete_graph(3));
        let t = WeightedGraph::tutte_target(3, &int(-2));
        assert_eq!(t.b()[1][1], int(-2));
        assert_eq!(t.b()[0][2], int(1));
        assert_eq!(WeightedGraph::cayley_cyclic(5, &[1, 4]).unwrap(), c5());
        assert_eq!(
            WeightedGraph::cayley_cyclic(4, &[1, 2, 3]).unwrap(),
            WeightedGraph::complete_graph(4)
        );
        assert!(WeightedGraph::cayley_cyclic(5, &[1]).is_err());
        let adj = vec![vec![false, true], vec![true, false]];
        assert_eq!(
            WeightedGraph::from_simple_graph(&adj).unwrap(),
            WeightedGraph::complete_graph(2)
        );
    }

    #[test]
    fn cayley_targets_are_generously_transitive() {
        for m in 1..=7usize {
            for mask in 0u32..(1 << m) {
                let set: Vec<usize> = (0..m).filter(|s| mask >> s & 1 == 1).collect();
                if let Ok(g) = WeightedGraph::cayley_cyclic(m, &set) {
                    assert!(automorphisms(&g).unwrap().is_generously_transitive());
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"n": 3, "a": ["1","1","1"], "B": [["-2","1","1"],["1","-2","1"],["1","1","-2"]]}"#;
        let t = parse_target(text).unwrap();
        assert_eq!(t, WeightedGraph::tutte_target(3, &int(-2)));
        assert_eq!(parse_target(&target_to_json(&t)).unwrap(), t);
        let err = parse_target(r#"{"n": 2, "a": ["1","0"], "B": [["0","1"],["1","0"]]}"#).unwrap_err();
        assert!(err.to_string().contains("a[1]"), "{err}");
        let err = parse_target(r#"{"n": 2, "a": ["1","1"], "B": [["0","1/2"],["1","0"]]}"#).unwrap_err();
        assert!(err.to_string().contains("symmetric"), "{err}");
        let err = parse_target(r#"{"n": 1, "a": ["x"], "B": [["0"]]}"#).unwrap_err();
        assert!(err.to_string().contains("a[0]"), "{err}");
    }
}
