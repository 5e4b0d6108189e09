//! Tutte, chromatic and flow polynomials, their brute-force counting
//! oracles, and tension counting for cyclic Cayley targets.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hom::hom_fast;
use crate::multigraph::{component_count, graph_rank, rank_of_mask, DisjointSets, Multigraph};
use crate::rational::{self, Rational};
use crate::weighted::WeightedGraph;

/// Largest edge count for the subset expansion (2^|E| subsets).
pub const SUBSET_BOUND: usize = 20;
/// Default call budget for deletion-contraction.
pub const DC_BUDGET: usize = 1 << 24;
/// Default cap on the number of assignments a brute-force oracle enumerates.
pub const ORACLE_BUDGET: u128 = 1 << 27;

/// Polynomial in x and y with rational coefficients; zero terms are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn one() -> Self {
        Self::constant(rational::one())
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, rational::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, rational::one())
    }

    pub fn monomial(deg_x: u32, deg_y: u32, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(deg_x, deg_y, c);
        p
    }

    pub fn add_term(&mut self, deg_x: u32, deg_y: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((deg_x, deg_y)).or_insert_with(rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(deg_x, deg_y));
        }
    }

    pub fn coefficient(&self, deg_x: u32, deg_y: u32) -> Rational {
        self.terms.get(&(deg_x, deg_y)).cloned().unwrap_or_else(rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending (deg_x, deg_y) order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.terms.iter().rev().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn add(&self, other: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (&(i, j), v) in &self.terms {
            out.add_term(i, j, v * c);
        }
        out
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c * rational::pow(x, i as usize) * rational::pow(y, j as usize))
            .sum()
    }

    pub fn to_json(&self) -> String {
        let doc = PolyDocument {
            terms: self
                .terms()
                .map(|(x, y, c)| TermDocument {
                    x,
                    y,
                    c: rational::format(c),
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("polynomial serializes")
    }

    pub fn from_json(text: &str) -> Result<BivariatePoly> {
        let doc: PolyDocument = serde_json::from_str(text).map_err(|e| Error::from_json(&e))?;
        let mut p = BivariatePoly::zero();
        for (i, t) in doc.terms.into_iter().enumerate() {
            let c = rational::parse(&t.c).map_err(|e| Error::invalid(format!("terms[{i}].c"), e.to_string()))?;
            p.add_term(t.x, t.y, c);
        }
        Ok(p)
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyDocument {
    terms: Vec<TermDocument>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDocument {
    x: u32,
    y: u32,
    c: String,
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (i, j, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if !magnitude.is_one() || (i == 0 && j == 0) {
                factors.push(magnitude.to_string());
            }
            for (var, deg) in [("x", i), ("y", j)] {
                match deg {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    d => factors.push(format!("{var}^{d}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

fn binomial_row(k: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for i in 0..k {
        let next = &row[i as usize] * BigInt::from(k - i) / BigInt::from(i + 1);
        row.push(next);
    }
    row
}

/// Σ count · (x-1)^i (y-1)^j over the given (i, j) → count table.
fn expand_shifted(counts: &BTreeMap<(u32, u32), u64>) -> BivariatePoly {
    let mut p = BivariatePoly::zero();
    for (&(i, j), &count) in counts {
        let bi = binomial_row(i);
        let bj = binomial_row(j);
        for a in 0..=i {
            for b in 0..=j {
                let sign = if (i - a + j - b) % 2 == 0 { 1 } else { -1 };
                let c = BigInt::from(count) * &bi[a as usize] * &bj[b as usize] * sign;
                p.add_term(a, b, Rational::from_integer(c));
            }
        }
    }
    p
}

/// T(F; x, y) = Σ_{A ⊆ E} (x-1)^(r(E)-r(A)) (y-1)^(|A|-r(A)).
pub fn tutte_subset_expansion(graph: &Multigraph) -> Result<BivariatePoly> {
    let m = graph.edge_count();
    if m > SUBSET_BOUND {
        return Err(Error::BoundExceeded {
            what: "edge count for subset expansion",
            size: m,
            bound: SUBSET_BOUND,
        });
    }
    let full_rank = graph_rank(graph) as u32;
    let total = 1u64 << m;
    let chunk = 1u64 << m.saturating_sub(6).min(14);
    let counts = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut local: BTreeMap<(u32, u32), u64> = BTreeMap::new();
            for mask in c * chunk..((c + 1) * chunk).min(total) {
                let r = rank_of_mask(graph, mask) as u32;
                *local.entry((full_rank - r, mask.count_ones() - r)).or_default() += 1;
            }
            local
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    Ok(expand_shifted(&counts))
}

/// Tutte polynomial by deletion-contraction with loop and bridge base cases.
pub fn tutte_deletion_contraction(graph: &Multigraph, budget: usize) -> Result<BivariatePoly> {
    let mut calls = 0usize;
    dc(graph.vertex_count(), graph.edges().to_vec(), budget, &mut calls)
}

fn dc(
    vertices: usize,
    mut edges: Vec<(usize, usize)>,
    budget: usize,
    calls: &mut usize,
) -> Result<BivariatePoly> {
    *calls += 1;
    if *calls > budget {
        return Err(Error::BoundExceeded {
            what: "deletion-contraction calls",
            size: *calls,
            bound: budget,
        });
    }
    let Some((u, v)) = edges.pop() else {
        return Ok(BivariatePoly::one());
    };
    if u == v {
        return Ok(BivariatePoly::y().mul(&dc(vertices, edges, budget, calls)?));
    }
    let mut ds = DisjointSets::new(vertices);
    for &(a, b) in &edges {
        ds.union(a, b);
    }
    let bridge = ds.find(u) != ds.find(v);
    // contraction: merge v into u, renumber the last vertex into v's slot
    let last = vertices - 1;
    let relabel = |x: usize| {
        let x = if x == v { u } else { x };
        if x == last {
            v
        } else {
            x
        }
    };
    let contracted: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(a, b)| (relabel(a), relabel(b)))
        .collect();
    let contracted_poly = dc(vertices - 1, contracted, budget, calls)?;
    if bridge {
        return Ok(BivariatePoly::x().mul(&contracted_poly));
    }
    Ok(dc(vertices, edges, budget, calls)?.add(&contracted_poly))
}

/// Subset expansion up to [`SUBSET_BOUND`] edges, deletion-contraction beyond.
pub fn tutte(graph: &Multigraph) -> Result<BivariatePoly> {
    if graph.edge_count() <= SUBSET_BOUND {
        tutte_subset_expansion(graph)
    } else {
        tutte_deletion_contraction(graph, DC_BUDGET)
    }
}

fn sign(exp: usize) -> Rational {
    if exp % 2 == 0 {
        rational::one()
    } else {
        rational::int(-1)
    }
}

/// χ(F; n) = (-1)^r(F) n^c(F) T(F; 1-n, 0).
pub fn chromatic_value(graph: &Multigraph, n: u64) -> Result<Rational> {
    let t = tutte(graph)?;
    let nr = Rational::from_integer(n.into());
    Ok(sign(graph_rank(graph))
        * rational::pow(&nr, component_count(graph))
        * t.eval(&(rational::one() - &nr), &rational::zero()))
}

/// φ(F; n) = (-1)^(|E| - r(F)) T(F; 0, 1-n).
pub fn flow_value(graph: &Multigraph, n: u64) -> Result<Rational> {
    let t = tutte(graph)?;
    let nr = Rational::from_integer(n.into());
    Ok(sign(graph.edge_count() - graph_rank(graph))
        * t.eval(&rational::zero(), &(rational::one() - &nr)))
}

fn check_budget(base: u64, exp: usize, what: &'static str) -> Result<()> {
    let mut size: u128 = 1;
    for _ in 0..exp {
        size = size.saturating_mul(base as u128);
    }
    if size > ORACLE_BUDGET {
        return Err(Error::BoundExceeded {
            what,
            size: usize::try_from(size).unwrap_or(usize::MAX),
            bound: ORACLE_BUDGET as usize,
        });
    }
    Ok(())
}

fn step(digits: &mut [u64], base: u64) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Number of maps V → [n] with no monochromatic edge.
pub fn count_proper_colorings(graph: &Multigraph, n: u64) -> Result<u64> {
    if graph.edges().iter().any(|&(u, v)| u == v) {
        return Ok(0);
    }
    let vc = graph.vertex_count();
    if vc == 0 {
        return Ok(1);
    }
    if n == 0 {
        return Ok(0);
    }
    check_budget(n, vc, "colourings to enumerate")?;
    let mut colour = vec![0u64; vc];
    let mut count = 0;
    loop {
        if graph.edges().iter().all(|&(u, v)| colour[u] != colour[v]) {
            count += 1;
        }
        if !step(&mut colour, n) {
            return Ok(count);
        }
    }
}

/// A (tail, head) pair for every edge of a multigraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    arcs: Vec<(usize, usize)>,
}

impl Orientation {
    /// Tail is the smaller endpoint.
    pub fn canonical(graph: &Multigraph) -> Self {
        Orientation {
            arcs: graph.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect(),
        }
    }

    pub fn from_arcs(graph: &Multigraph, arcs: Vec<(usize, usize)>) -> Result<Self> {
        if arcs.len() != graph.edge_count() {
            return Err(Error::ShapeMismatch(format!(
                "{} arcs for {} edges",
                arcs.len(),
                graph.edge_count()
            )));
        }
        for (i, (&(t, h), &(u, v))) in arcs.iter().zip(graph.edges()).enumerate() {
            if !((t, h) == (u, v) || (t, h) == (v, u)) {
                return Err(Error::invalid(format!("arcs[{i}]"), "arc does not match its edge"));
            }
        }
        Ok(Orientation { arcs })
    }

    /// Flips the edges whose bit is set in `mask`.
    pub fn flipped(&self, mask: u64) -> Self {
        Orientation {
            arcs: self
                .arcs
                .iter()
                .enumerate()
                .map(|(i, &(t, h))| if mask >> (i % 64) & 1 == 1 { (h, t) } else { (t, h) })
                .collect(),
        }
    }

    pub fn reversed(&self) -> Self {
        self.flipped(u64::MAX)
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }
}

/// Number of assignments E → Z_n \ {0} with zero net flow at every vertex.
pub fn count_nz_flows(graph: &Multigraph, n: u64, orientation: &Orientation) -> Result<u64> {
    let m = graph.edge_count();
    if orientation.arcs.len() != m {
        return Err(Error::ShapeMismatch("orientation does not cover the edges".into()));
    }
    if m == 0 {
        return Ok(1);
    }
    if n <= 1 {
        return Ok(0);
    }
    check_budget(n - 1, m, "flow assignments to enumerate")?;
    let mut values = vec![0u64; m];
    let mut net = vec![0u64; graph.vertex_count()];
    let mut count = 0;
    loop {
        net.iter_mut().for_each(|x| *x = 0);
        for (&(t, h), &val) in orientation.arcs.iter().zip(&values) {
            let val = val + 1;
            net[h] = (net[h] + val) % n;
            net[t] = (net[t] + n - val) % n;
        }
        if net.iter().all(|&x| x == 0) {
            count += 1;
        }
        if !step(&mut values, n - 1) {
            return Ok(count);
        }
    }
}

/// Both sides of hom(F, G(1, (y-1)I + J)) = n^c (y-1)^r T(F; (y-1+n)/(y-1), y),
/// plus the counting oracle on the two special lines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TutteHomReport {
    #[serde(with = "crate::rational")]
    pub lhs: Rational,
    #[serde(with = "crate::rational")]
    pub rhs: Rational,
    pub holds: bool,
    /// For y = 0: the number of proper n-colourings. For y = 1 - n:
    /// (-1)^|E| n^|V| times the number of nowhere-zero Z_n-flows.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_rational")]
    pub oracle: Option<Rational>,
}

fn opt_rational<S: serde::Serializer>(value: &Option<Rational>, ser: S) -> std::result::Result<S::Ok, S::Error> {
    match value {
        Some(v) => ser.serialize_str(&rational::format(v)),
        None => ser.serialize_none(),
    }
}

impl TutteHomReport {
    /// Both sides agree, and so does the oracle when one was evaluated.
    pub fn consistent(&self) -> bool {
        self.holds && self.oracle.as_ref().is_none_or(|o| *o == self.lhs)
    }
}

pub fn verify_tutte_hom_identity(graph: &Multigraph, n: usize, y: &Rational) -> Result<TutteHomReport> {
    if y.is_one() {
        return Err(Error::DegenerateY);
    }
    if n == 0 {
        return Err(Error::invalid("n", "target needs at least one vertex"));
    }
    let target = WeightedGraph::tutte_target(n, y);
    let lhs = hom_fast(graph, &target);
    let nr = Rational::from_integer(BigInt::from(n));
    let ym1 = y - rational::one();
    let x = (&ym1 + &nr) / &ym1;
    let t = tutte(graph)?;
    let rhs = rational::pow(&nr, component_count(graph))
        * rational::pow(&ym1, graph_rank(graph))
        * t.eval(&x, y);
    let oracle = if y.is_zero() {
        Some(Rational::from_integer(count_proper_colorings(graph, n as u64)?.into()))
    } else if *y == rational::one() - &nr {
        let flows = count_nz_flows(graph, n as u64, &Orientation::canonical(graph))?;
        Some(
            sign(graph.edge_count())
                * rational::pow(&nr, graph.vertex_count())
                * Rational::from_integer(flows.into()),
        )
    } else {
        None
    };
    Ok(TutteHomReport {
        holds: lhs == rhs,
        lhs,
        rhs,
        oracle,
    })
}

/// Number of S-valued Z_m-tensions under `orientation`, via vertex potentials:
/// each tension lifts to exactly m^c(F) potentials p with p(head) - p(tail) on every arc.
pub fn count_tensions(
    graph: &Multigraph,
    m: u64,
    set: &[u64],
    orientation: &Orientation,
) -> Result<u64> {
    if m == 0 {
        return Err(Error::invalid("m", "modulus must be positive"));
    }
    if orientation.arcs.len() != graph.edge_count() {
        return Err(Error::ShapeMismatch("orientation does not cover the edges".into()));
    }
    let vc = graph.vertex_count();
    check_budget(m, vc, "potentials to enumerate")?;
    let mut member = vec![false; m as usize];
    for &s in set {
        member[(s % m) as usize] = true;
    }
    let mut potential = vec![0u64; vc];
    let mut count: u128 = 0;
    loop {
        if orientation
            .arcs
            .iter()
            .all(|&(t, h)| member[((potential[h] + m - potential[t]) % m) as usize])
        {
            count += 1;
        }
        if vc == 0 || !step(&mut potential, m) {
            break;
        }
    }
    let divisor = (m as u128).pow(component_count(graph) as u32);
    if count % divisor != 0 {
        return Err(Error::NonExactDivision {
            count: count.to_string(),
            divisor: divisor.to_string(),
        });
    }
    Ok((count / divisor) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::enumerate_multigraphs;
    use crate::rational::int;

    fn g(n: usize, edges: &[(usize, usize)]) -> Multigraph {
        Multigraph::new(n, edges.to_vec()).unwrap()
    }

    fn poly(terms: &[(u32, u32, i64)]) -> BivariatePoly {
        let mut p = BivariatePoly::zero();
        for &(i, j, c) in terms {
            p.add_term(i, j, int(c));
        }
        p
    }

    #[test]
    fn tutte_examples() {
        assert_eq!(tutte(&Multigraph::path(1)).unwrap(), BivariatePoly::x());
        assert_eq!(tutte(&g(1, &[(0, 0)])).unwrap(), BivariatePoly::y());
        let tri = poly(&[(2, 0, 1), (1, 0, 1), (0, 1, 1)]);
        assert_eq!(tutte(&Multigraph::cycle(3)).unwrap(), tri);
        assert_eq!(tutte_deletion_contraction(&Multigraph::cycle(3), 100).unwrap(), tri);
        assert_eq!(tutte(&Multigraph::empty(3)).unwrap(), BivariatePoly::one());
        // K4: x^3 + 3x^2 + 2x + 4xy + 2y + 3y^2 + y^3
        let k4 = poly(&[(3, 0, 1), (2, 0, 3), (1, 0, 2), (1, 1, 4), (0, 1, 2), (0, 2, 3), (0, 3, 1)]);
        assert_eq!(tutte(&Multigraph::complete(4)).unwrap(), k4);
    }

    #[test]
    fn deletion_contraction_budget() {
        assert!(matches!(
            tutte_deletion_contraction(&Multigraph::complete(5), 10),
            Err(Error::BoundExceeded { .. })
        ));
        assert!(matches!(
            tutte_subset_expansion(&Multigraph::path(21)),
            Err(Error::BoundExceeded { .. })
        ));
        // large inputs route through deletion-contraction
        let long = tutte(&Multigraph::path(22)).unwrap();
        assert_eq!(long, BivariatePoly::monomial(22, 0, int(1)));
    }

    #[test]
    fn two_routes_agree() {
        for f in enumerate_multigraphs(4, 5) {
            assert_eq!(
                tutte_subset_expansion(&f).unwrap(),
                tutte_deletion_contraction(&f, DC_BUDGET).unwrap(),
                "{f:?}"
            );
        }
    }

    #[test]
    fn tutte_multiplies_over_one_point_joins() {
        let tri = crate::multigraph::LabeledGraph::new(Multigraph::cycle(3), vec![0]).unwrap();
        let bowtie = crate::multigraph::identify_vertices(&tri, &tri).unwrap();
        let t = tutte(&Multigraph::cycle(3)).unwrap();
        assert_eq!(tutte(&bowtie).unwrap(), t.mul(&t));
        let union = Multigraph::cycle(3).disjoint_union(&Multigraph::cycle(3));
        assert_eq!(tutte(&union).unwrap(), t.mul(&t));
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_value(&Multigraph::cycle(3), 3).unwrap(), int(6));
        assert_eq!(count_proper_colorings(&Multigraph::cycle(3), 3).unwrap(), 6);
        assert_eq!(chromatic_value(&Multigraph::cycle(4), 3).unwrap(), int(18));
        assert_eq!(count_proper_colorings(&Multigraph::cycle(4), 3).unwrap(), 18);
        let looped = g(2, &[(0, 1), (1, 1)]);
        for n in 0..5 {
            assert_eq!(chromatic_value(&looped, n).unwrap(), int(0));
            assert_eq!(count_proper_colorings(&looped, n).unwrap(), 0);
        }
    }

    #[test]
    fn flow_examples() {
        let tri = Multigraph::cycle(3);
        assert_eq!(count_nz_flows(&tri, 3, &Orientation::canonical(&tri)).unwrap(), 2);
        assert_eq!(flow_value(&tri, 3).unwrap(), int(2));
        let bridged = g(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]);
        for n in 1..5 {
            assert_eq!(count_nz_flows(&bridged, n, &Orientation::canonical(&bridged)).unwrap(), 0);
            assert_eq!(flow_value(&bridged, n).unwrap(), int(0));
        }
        let lp = g(1, &[(0, 0)]);
        assert_eq!(count_nz_flows(&lp, 2, &Orientation::canonical(&lp)).unwrap(), 1);
        assert_eq!(flow_value(&lp, 2).unwrap(), int(1));
    }

    #[test]
    fn flows_do_not_depend_on_orientation() {
        for f in enumerate_multigraphs(3, 4) {
            let base = Orientation::canonical(&f);
            for n in 1..=4 {
                let a = count_nz_flows(&f, n, &base).unwrap();
                assert_eq!(a, count_nz_flows(&f, n, &base.reversed()).unwrap());
                assert_eq!(a, count_nz_flows(&f, n, &base.flipped(0b101)).unwrap());
            }
        }
    }

    #[test]
    fn tutte_hom_identity_examples() {
        let c3 = Multigraph::cycle(3);
        let r = verify_tutte_hom_identity(&c3, 3, &int(-2)).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (int(-54), int(-54)));
        assert!(r.consistent());
        assert_eq!(r.oracle, Some(int(-54)));
        let r = verify_tutte_hom_identity(&c3, 3, &int(0)).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone(), r.oracle.clone()), (int(6), int(6), Some(int(6))));
        for y in [-3, 0, 2, 5] {
            let r = verify_tutte_hom_identity(&Multigraph::empty(1), 4, &int(y)).unwrap();
            assert_eq!((r.lhs, r.rhs), (int(4), int(4)));
        }
        assert_eq!(verify_tutte_hom_identity(&c3, 3, &int(1)), Err(Error::DegenerateY));
    }

    #[test]
    fn tension_examples() {
        let edge = Multigraph::path(1);
        assert_eq!(count_tensions(&edge, 3, &[1, 2], &Orientation::canonical(&edge)).unwrap(), 2);
        let tri = Multigraph::cycle(3);
        assert_eq!(count_tensions(&tri, 3, &[1, 2], &Orientation::canonical(&tri)).unwrap(), 2);
        for f in enumerate_multigraphs(3, 3) {
            let all: Vec<u64> = (0..4).collect();
            let expected = 4u64.pow(graph_rank(&f) as u32);
            assert_eq!(count_tensions(&f, 4, &all, &Orientation::canonical(&f)).unwrap(), expected);
        }
    }

    #[test]
    fn serialization_is_sorted_and_round_trips() {
        let tri = tutte(&Multigraph::cycle(3)).unwrap();
        let json = tri.to_json();
        assert_eq!(
            json,
            r#"{"terms":[{"x":2,"y":0,"c":"1"},{"x":1,"y":0,"c":"1"},{"x":0,"y":1,"c":"1"}]}"#
        );
        assert_eq!(BivariatePoly::from_json(&json).unwrap(), tri);
        assert_eq!(tri.to_string(), "x^2 + x + y");
        let mut p = poly(&[(0, 0, -2), (1, 2, 3)]);
        p.add_term(0, 0, rational::frac(1, 2));
        assert_eq!(p.to_string(), "3*x*y^2 - 3/2");
    }
}
