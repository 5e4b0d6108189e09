//! Executable checks of when `h(·, G)` is a cycle matroid invariant.
//!
//! The lemma checks work on the span of corpus tensors: both sides of each
//! biconditional are bilinear in `p(F1)` and `p(F2)`, so testing a basis of the
//! span covers every pair in the corpus exactly. Witnesses are then searched
//! pair by pair in order of total size and confirmed by direct counting.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hom::{corpus_tensors, h, hom_fast, HomTensor};
use crate::multigraph::{
    components, edge_groups, enumerate_labeled, is_matroid_isomorphism, matroid_isomorphic,
    separate, whitney_flip, LabeledGraph, Multigraph, MATROID_ISO_BOUND,
};
use crate::rational::Rational;
use crate::span::RowSpace;
use crate::weighted::{automorphisms, twin_reduce, WeightedGraph};

/// Circuit enumeration bound used when confirming witness bijections.
pub const WITNESS_CIRCUIT_BOUND: usize = 20;

/// Largest vertex count accepted by [`exhaustive_survey`].
pub const SURVEY_MAX_VERTICES: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CorpusBounds {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl CorpusBounds {
    pub const fn new(max_vertices: usize, max_edges: usize) -> Self {
        CorpusBounds {
            max_vertices,
            max_edges,
        }
    }
}

/// Default then escalated corpus for the multiplicativity check.
pub const LEMMA1_SCHEDULE: [CorpusBounds; 2] = [CorpusBounds::new(3, 4), CorpusBounds::new(4, 6)];

/// Default then escalated corpus for flip checks and witness search.
pub const FLIP_SCHEDULE: [CorpusBounds; 2] = [CorpusBounds::new(4, 5), CorpusBounds::new(5, 7)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// Finite search agrees with the group property.
    Consistent,
    /// Search contradicts the group property.
    Inconsistent,
    /// The group property fails but no violation was found within bounds.
    Inconclusive,
}

impl Verdict {
    fn from_search(property: bool, violation_found: bool) -> Verdict {
        match (property, violation_found) {
            (true, false) | (false, true) => Verdict::Consistent,
            (true, true) => Verdict::Inconsistent,
            (false, false) => Verdict::Inconclusive,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Consistent => "consistent",
            Verdict::Inconsistent => "inconsistent",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Corpus of k-labelled graphs, built once per bounds and shared.
pub fn corpus(k: usize, bounds: CorpusBounds) -> Arc<Vec<LabeledGraph>> {
    type Cache = Mutex<HashMap<(usize, CorpusBounds), Arc<Vec<LabeledGraph>>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(found) = cache.lock().expect("corpus cache").get(&(k, bounds)) {
        return found.clone();
    }
    let built = Arc::new(enumerate_labeled(k, bounds.max_vertices, bounds.max_edges));
    cache
        .lock()
        .expect("corpus cache")
        .entry((k, bounds))
        .or_insert(built)
        .clone()
}

fn require_lemma_hypotheses(target: &WeightedGraph) -> Result<()> {
    if let Some((i, j)) = target.twin_pair() {
        return Err(Error::NotTwinFree(i, j));
    }
    if target.weight_sum().is_zero() {
        return Err(Error::Hypothesis("vertex weights sum to zero".into()));
    }
    Ok(())
}

fn require_arity(corpus: &[LabeledGraph], k: usize) -> Result<()> {
    match corpus.iter().find(|f| f.k() != k) {
        Some(f) => Err(Error::ArityMismatch {
            expected: k,
            found: f.k(),
        }),
        None => Ok(()),
    }
}

/// Index pairs `(i, j)` ordered by total vertices, then total edges, then
/// the size classes involved, then position. With `symmetric` only `i <= j`.
fn ordered_pairs(corpus: &[LabeledGraph], symmetric: bool) -> impl Iterator<Item = (usize, usize)> + '_ {
    let size = |f: &LabeledGraph| (f.graph().vertex_count(), f.graph().edge_count());
    let mut classes: Vec<((usize, usize), Vec<usize>)> = Vec::new();
    for (i, f) in corpus.iter().enumerate() {
        match classes.iter_mut().find(|(s, _)| *s == size(f)) {
            Some((_, list)) => list.push(i),
            None => classes.push((size(f), vec![i])),
        }
    }
    classes.sort_by_key(|(s, _)| *s);
    let mut class_pairs = Vec::new();
    for a in 0..classes.len() {
        for b in 0..classes.len() {
            if symmetric && b < a {
                continue;
            }
            let ((v1, e1), (v2, e2)) = (classes[a].0, classes[b].0);
            class_pairs.push(((v1 + v2, e1 + e2, a, b), a, b));
        }
    }
    class_pairs.sort();
    class_pairs.into_iter().flat_map(move |(_, a, b)| {
        let left = classes[a].1.clone();
        let right = classes[b].1.clone();
        let same = a == b;
        left.into_iter().flat_map(move |i| {
            right
                .clone()
                .into_iter()
                .filter(move |&j| !(symmetric && same && j < i))
                .map(move |j| (i, j))
        })
    })
}

fn span_basis(tensors: &[HomTensor], dim: usize) -> (usize, Vec<Vec<Rational>>) {
    let mut space = RowSpace::new(dim);
    for t in tensors {
        space.insert(t.entries());
    }
    (space.rank(), space.basis())
}

fn weighted_dot(x: &[Rational], y: &[Rational], weights: &[Rational]) -> Rational {
    x.iter().zip(y).zip(weights).map(|((p, q), w)| p * q * w).sum()
}

#[derive(Debug, Clone, Serialize)]
pub struct Lemma1Witness {
    pub f1: LabeledGraph,
    pub f2: LabeledGraph,
    #[serde(with = "crate::rational")]
    pub h1: Rational,
    #[serde(with = "crate::rational")]
    pub h2: Rational,
    #[serde(with = "crate::rational")]
    pub h_glued: Rational,
}

#[derive(Debug, Clone, Serialize)]
pub struct Lemma1Report {
    pub transitive: bool,
    /// `h(F1)h(F2) = h(F1·F2)` held on every corpus pair.
    pub multiplicative: bool,
    pub corpus_size: usize,
    pub span_rank: usize,
    pub pairs_tested: u64,
    pub bounds: Option<CorpusBounds>,
    pub witness: Option<Lemma1Witness>,
    pub verdict: Verdict,
}

/// Multiplicativity of `h` under one-point gluing over every pair of the
/// 1-labelled corpus, against transitivity of the automorphism group.
pub fn check_lemma1(target: &WeightedGraph, corpus: &[LabeledGraph]) -> Result<Lemma1Report> {
    require_lemma_hypotheses(target)?;
    require_arity(corpus, 1)?;
    let transitive = automorphisms(target)?.is_transitive();
    let s = target.weight_sum();
    let a = target.a();
    let tensors = corpus_tensors(target, corpus)?;
    let (span_rank, basis) = span_basis(&tensors, target.n());
    // Q(x, y) = S Σ a_i x_i y_i − (Σ a_i x_i)(Σ a_i y_i) vanishes on all pairs
    // exactly when it vanishes on a basis.
    let q = |x: &[Rational], y: &[Rational]| {
        let sx: Rational = x.iter().zip(a).map(|(p, w)| p * w).sum();
        let sy: Rational = y.iter().zip(a).map(|(p, w)| p * w).sum();
        &s * weighted_dot(x, y, a) - sx * sy
    };
    let multiplicative = basis
        .iter()
        .enumerate()
        .all(|(r, x)| basis[r..].iter().all(|y| q(x, y).is_zero()));
    let witness = if multiplicative {
        None
    } else {
        let (i, j) = ordered_pairs(corpus, true)
            .find(|&(i, j)| !q(tensors[i].entries(), tensors[j].entries()).is_zero())
            .expect("a nonzero form on the span has a nonzero corpus pair");
        Some(lemma1_witness(&corpus[i], &corpus[j], target)?)
    };
    let n = corpus.len() as u64;
    Ok(Lemma1Report {
        transitive,
        multiplicative,
        corpus_size: corpus.len(),
        span_rank,
        pairs_tested: n * n,
        bounds: None,
        verdict: Verdict::from_search(transitive, witness.is_some()),
        witness,
    })
}

fn lemma1_witness(f1: &LabeledGraph, f2: &LabeledGraph, target: &WeightedGraph) -> Result<Lemma1Witness> {
    let glued = f1.glue(f2)?;
    let h1 = h(f1.graph(), target)?;
    let h2 = h(f2.graph(), target)?;
    let h_glued = h(glued.graph(), target)?;
    if &h1 * &h2 == h_glued {
        return Err(Error::Hypothesis(
            "witness pair failed direct recount".into(),
        ));
    }
    Ok(Lemma1Witness {
        f1: f1.clone(),
        f2: f2.clone(),
        h1,
        h2,
        h_glued,
    })
}

/// [`check_lemma1`] over `schedule`, stopping at the first conclusive corpus.
pub fn run_lemma1(target: &WeightedGraph, schedule: &[CorpusBounds]) -> Result<Lemma1Report> {
    run_schedule(schedule, |bounds| {
        let mut report = check_lemma1(target, &corpus(1, bounds))?;
        report.bounds = Some(bounds);
        Ok(report)
    }, |r| r.verdict)
}

fn run_schedule<R>(
    schedule: &[CorpusBounds],
    mut run: impl FnMut(CorpusBounds) -> Result<R>,
    verdict: impl Fn(&R) -> Verdict,
) -> Result<R> {
    let mut last = None;
    for &bounds in schedule {
        let report = run(bounds)?;
        if verdict(&report) != Verdict::Inconclusive {
            return Ok(report);
        }
        last = Some(report);
    }
    last.ok_or_else(|| Error::invalid("schedule", "no corpus bounds given"))
}

#[derive(Debug, Clone, Serialize)]
pub struct Lemma2Witness {
    pub f1: LabeledGraph,
    pub f2: LabeledGraph,
    #[serde(with = "crate::rational")]
    pub hom_glued: Rational,
    #[serde(with = "crate::rational")]
    pub hom_flipped: Rational,
}

#[derive(Debug, Clone, Serialize)]
pub struct Lemma2Report {
    pub generously_transitive: bool,
    /// `hom(F1·F2) = hom(F1^T·F2)` held on every corpus pair.
    pub flip_invariant: bool,
    pub corpus_size: usize,
    pub span_rank: usize,
    pub pairs_tested: u64,
    pub bounds: Option<CorpusBounds>,
    pub witness: Option<Lemma2Witness>,
    pub verdict: Verdict,
}

/// Flip invariance of gluing over every ordered pair of the 2-labelled
/// corpus, against generous transitivity of the automorphism group.
pub fn check_lemma2(target: &WeightedGraph, corpus: &[LabeledGraph]) -> Result<Lemma2Report> {
    require_lemma_hypotheses(target)?;
    require_arity(corpus, 2)?;
    let generously_transitive = automorphisms(target)?.is_generously_transitive();
    let weights = HomTensor::label_weights(2, target);
    let tensors = corpus_tensors(target, corpus)?;
    let differences: Vec<Vec<Rational>> = tensors
        .iter()
        .map(|t| {
            let tt = t.transpose().expect("2-labelled tensor");
            t.entries().iter().zip(tt.entries()).map(|(x, y)| x - y).collect()
        })
        .collect();
    let (span_rank, basis) = span_basis(&tensors, target.n() * target.n());
    let flip_invariant = differences
        .par_iter()
        .all(|d| basis.iter().all(|b| weighted_dot(d, b, weights.entries()).is_zero()));
    let witness = if flip_invariant {
        None
    } else {
        let (i, j) = ordered_pairs(corpus, false)
            .find(|&(i, j)| !weighted_dot(&differences[i], tensors[j].entries(), weights.entries()).is_zero())
            .expect("a nonzero difference on the span has a nonzero corpus pair");
        Some(lemma2_witness(&corpus[i], &corpus[j], target)?)
    };
    let n = corpus.len() as u64;
    Ok(Lemma2Report {
        generously_transitive,
        flip_invariant,
        corpus_size: corpus.len(),
        span_rank,
        pairs_tested: n * n,
        bounds: None,
        verdict: Verdict::from_search(generously_transitive, witness.is_some()),
        witness,
    })
}

fn lemma2_witness(f1: &LabeledGraph, f2: &LabeledGraph, target: &WeightedGraph) -> Result<Lemma2Witness> {
    let (plain, flipped) = whitney_flip(f1, f2)?;
    let hom_glued = hom_fast(&plain, target);
    let hom_flipped = hom_fast(&flipped, target);
    if hom_glued == hom_flipped {
        return Err(Error::Hypothesis(
            "witness pair failed direct recount".into(),
        ));
    }
    Ok(Lemma2Witness {
        f1: f1.clone(),
        f2: f2.clone(),
        hom_glued,
        hom_flipped,
    })
}

/// [`check_lemma2`] over `schedule`, stopping at the first conclusive corpus.
pub fn run_lemma2(target: &WeightedGraph, schedule: &[CorpusBounds]) -> Result<Lemma2Report> {
    run_schedule(schedule, |bounds| {
        let mut report = check_lemma2(target, &corpus(2, bounds))?;
        report.bounds = Some(bounds);
        Ok(report)
    }, |r| r.verdict)
}

/// One step of a 2-isomorphism sequence, in the vertex numbering of the
/// graph it was applied to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum WhitneyOp {
    /// Reverse the piece holding `edges` across the separation at `{u, v}`.
    Flip { u: usize, v: usize, edges: Vec<usize> },
    /// Merge `y` into `x`; they lie in different components.
    Identify { x: usize, y: usize },
    /// Detach the piece holding `edges` at cut vertex `vertex`.
    Split { vertex: usize, edges: Vec<usize> },
}

#[derive(Debug, Clone, Serialize)]
pub struct TwoIsomorphicPair {
    pub left: Multigraph,
    pub right: Multigraph,
    /// `bijection[e]` is the edge of `right` corresponding to edge `e` of `left`.
    pub bijection: Vec<usize>,
    pub operations: Vec<WhitneyOp>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GeneratorBounds {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_operations: usize,
}

impl Default for GeneratorBounds {
    fn default() -> Self {
        GeneratorBounds {
            max_vertices: 6,
            max_edges: MATROID_ISO_BOUND,
            max_operations: 4,
        }
    }
}

/// Endless deterministic stream of 2-isomorphic pairs: a random base
/// multigraph and the result of 1 to `max_operations` random Whitney
/// operations applied to it (none when `max_operations` is 0).
pub fn generate_two_isomorphic_pairs(
    bounds: GeneratorBounds,
    seed: u64,
) -> impl Iterator<Item = TwoIsomorphicPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    std::iter::repeat_with(move || {
        let n = rng.gen_range(1..=bounds.max_vertices.max(1));
        let m = rng.gen_range(0..=bounds.max_edges);
        let edges = (0..m)
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
            .collect();
        let base = Multigraph::new(n, edges).expect("endpoints in range");
        let steps = if bounds.max_operations == 0 {
            0
        } else {
            rng.gen_range(1..=bounds.max_operations)
        };
        apply_random_operations(&base, steps, &mut rng)
    })
}

/// Applies `steps` random Whitney operations to `base`, tracking edges.
pub fn apply_random_operations(base: &Multigraph, steps: usize, rng: &mut impl Rng) -> TwoIsomorphicPair {
    let mut current = base.clone();
    let mut bijection: Vec<usize> = (0..base.edge_count()).collect();
    let mut operations = Vec::new();
    for _ in 0..steps {
        let Some((op, next, origin)) = random_operation(&current, rng) else {
            break;
        };
        // origin[i] = old index of new edge i
        let mut position = vec![0; origin.len()];
        for (new, &old) in origin.iter().enumerate() {
            position[old] = new;
        }
        for e in bijection.iter_mut() {
            *e = position[*e];
        }
        current = next;
        operations.push(op);
    }
    TwoIsomorphicPair {
        left: base.clone(),
        right: current,
        bijection,
        operations,
    }
}

type Step = (WhitneyOp, Multigraph, Vec<usize>);

fn random_operation(graph: &Multigraph, rng: &mut impl Rng) -> Option<Step> {
    let mut kinds = [0u8, 1, 2];
    kinds.shuffle(rng);
    kinds.into_iter().find_map(|kind| match kind {
        0 => random_flip(graph, rng),
        1 => random_identify(graph, rng),
        _ => random_split(graph, rng),
    })
}

/// A nonempty proper sub-union of the groups, as a sorted edge list.
fn random_side(groups: &[Vec<usize>], rng: &mut impl Rng) -> Vec<usize> {
    let count = groups.len();
    let mask = rng.gen_range(1..(1u64 << count) - 1);
    let mut side: Vec<usize> = (0..count)
        .filter(|i| mask >> i & 1 == 1)
        .flat_map(|i| groups[i].iter().copied())
        .collect();
    side.sort_unstable();
    side
}

fn random_flip(graph: &Multigraph, rng: &mut impl Rng) -> Option<Step> {
    let n = graph.vertex_count();
    if n < 2 {
        return None;
    }
    let mut cuts: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| edge_groups(graph, &[u, v]).len() >= 2)
        .collect();
    if cuts.is_empty() {
        cuts = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    }
    let (u, v) = *cuts.choose(rng)?;
    let groups = edge_groups(graph, &[u, v]);
    let side = if groups.len() >= 2 {
        random_side(&groups, rng)
    } else {
        groups.into_iter().flatten().collect()
    };
    let sep = separate(graph, &[u, v], &side).ok()?;
    let next = sep.left.transpose().ok()?.glue(&sep.right).ok()?.into_graph();
    Some((WhitneyOp::Flip { u, v, edges: side }, next, sep.origin))
}

fn random_identify(graph: &Multigraph, rng: &mut impl Rng) -> Option<Step> {
    let (count, ids) = components(graph);
    if count < 2 {
        return None;
    }
    let n = graph.vertex_count();
    let x = rng.gen_range(0..n);
    let others: Vec<usize> = (0..n).filter(|&y| ids[y] != ids[x]).collect();
    let y = *others.choose(rng)?;
    // y disappears; the last vertex takes its number
    let last = n - 1;
    let relabel = |w: usize| {
        let w = if w == y { x } else { w };
        if w == last && y != last {
            y
        } else {
            w
        }
    };
    let edges = graph.edges().iter().map(|&(a, b)| (relabel(a), relabel(b))).collect();
    let next = Multigraph::new(n - 1, edges).ok()?;
    Some((WhitneyOp::Identify { x, y }, next, (0..graph.edge_count()).collect()))
}

fn random_split(graph: &Multigraph, rng: &mut impl Rng) -> Option<Step> {
    let cuts: Vec<usize> = (0..graph.vertex_count())
        .filter(|&v| edge_groups(graph, &[v]).len() >= 2)
        .collect();
    let vertex = *cuts.choose(rng)?;
    let side = random_side(&edge_groups(graph, &[vertex]), rng);
    let sep = separate(graph, &[vertex], &side).ok()?;
    let next = sep.left.graph().disjoint_union(sep.right.graph());
    Some((WhitneyOp::Split { vertex, edges: side }, next, sep.origin))
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremWitness {
    pub f1: LabeledGraph,
    pub f2: LabeledGraph,
    pub left: Multigraph,
    pub right: Multigraph,
    pub bijection: Vec<usize>,
    #[serde(with = "crate::rational")]
    pub h_left: Rational,
    #[serde(with = "crate::rational")]
    pub h_right: Rational,
    /// The bijection maps circuits onto circuits.
    pub circuits_preserved: bool,
    /// Independent isomorphism search, run when there are few edges.
    pub matroid_isomorphic: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvarianceVerdict {
    pub target: String,
    pub reduced_vertices: usize,
    pub transitive: bool,
    pub generously_transitive: bool,
    /// Random 2-isomorphic pairs compared, plus corpus flip pairs covered.
    pub pairs_tested: u64,
    pub random_pairs: u64,
    pub flip_pairs: u64,
    pub bounds: Option<CorpusBounds>,
    pub witness: Option<TheoremWitness>,
    pub consistent: bool,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremBounds {
    pub random_pairs: usize,
    pub seed: u64,
    pub generator: GeneratorBounds,
    pub schedule: Vec<CorpusBounds>,
}

impl Default for TheoremBounds {
    fn default() -> Self {
        TheoremBounds {
            random_pairs: 200,
            seed: 0,
            generator: GeneratorBounds::default(),
            schedule: FLIP_SCHEDULE.to_vec(),
        }
    }
}

/// Decides whether `h(·, G)` behaves as a cycle matroid invariant, for a
/// target with unit vertex weights, by comparing with generous transitivity
/// of the twin-reduced target.
pub fn check_theorem1(target: &WeightedGraph, description: &str, bounds: &TheoremBounds) -> Result<InvarianceVerdict> {
    if !target.has_unit_weights() {
        return Err(Error::Hypothesis("vertex weights must all be 1".into()));
    }
    let reduced = twin_reduce(target);
    let group = automorphisms(&reduced)?;
    let transitive = group.is_transitive();
    let generously_transitive = group.is_generously_transitive();
    let flips = run_lemma2(&reduced, &bounds.schedule)?;
    let flip_pairs = flips.pairs_tested;
    let mut verdict = InvarianceVerdict {
        target: description.to_string(),
        reduced_vertices: reduced.n(),
        transitive,
        generously_transitive,
        pairs_tested: flip_pairs,
        random_pairs: 0,
        flip_pairs,
        bounds: flips.bounds,
        witness: None,
        consistent: true,
        verdict: Verdict::Consistent,
    };
    if generously_transitive {
        let pairs: Vec<TwoIsomorphicPair> = generate_two_isomorphic_pairs(bounds.generator, bounds.seed)
            .take(bounds.random_pairs)
            .collect();
        let all_equal = pairs.par_iter().all(|p| {
            matches!(
                (h(&p.left, &reduced), h(&p.right, &reduced)),
                (Ok(x), Ok(y)) if x == y
            )
        });
        verdict.random_pairs = pairs.len() as u64;
        verdict.pairs_tested += verdict.random_pairs;
        verdict.consistent = all_equal && flips.flip_invariant;
        verdict.verdict = if verdict.consistent {
            Verdict::Consistent
        } else {
            Verdict::Inconsistent
        };
        return Ok(verdict);
    }
    match flips.witness {
        Some(found) => {
            let witness = theorem_witness(&found.f1, &found.f2, &reduced)?;
            verdict.consistent = witness.h_left != witness.h_right
                && witness.circuits_preserved
                && witness.matroid_isomorphic != Some(false);
            verdict.verdict = if verdict.consistent {
                Verdict::Consistent
            } else {
                Verdict::Inconsistent
            };
            verdict.witness = Some(witness);
        }
        None => verdict.verdict = Verdict::Inconclusive,
    }
    Ok(verdict)
}

fn theorem_witness(f1: &LabeledGraph, f2: &LabeledGraph, target: &WeightedGraph) -> Result<TheoremWitness> {
    let (left, right) = whitney_flip(f1, f2)?;
    let bijection: Vec<usize> = (0..left.edge_count()).collect();
    let circuits_preserved = is_matroid_isomorphism(&left, &right, &bijection, WITNESS_CIRCUIT_BOUND)?;
    let matroid_isomorphic = (left.edge_count() <= MATROID_ISO_BOUND)
        .then(|| matroid_isomorphic(&left, &right).map(|b| b.is_some()))
        .transpose()?;
    Ok(TheoremWitness {
        f1: f1.clone(),
        f2: f2.clone(),
        h_left: h(&left, target)?,
        h_right: h(&right, target)?,
        left,
        right,
        bijection,
        circuits_preserved,
        matroid_isomorphic,
    })
}

/// Simple graphs on `n` vertices up to isomorphism, each as its edge list
/// in the labelling with the smallest upper-triangle bit string.
pub fn simple_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut slot_index = vec![vec![0usize; n]; n];
    for (i, &(u, v)) in slots.iter().enumerate() {
        slot_index[u][v] = i;
        slot_index[v][u] = i;
    }
    let mut perms = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        perms.push(perm.clone());
        if !crate::multigraph::next_permutation(&mut perm) {
            break;
        }
    }
    let total = 1usize << slots.len();
    let mut seen = vec![false; total];
    let mut reps = Vec::new();
    for mask in 0..total {
        if seen[mask] {
            continue;
        }
        let mut least = mask;
        for p in &perms {
            let mut image = 0usize;
            for (i, &(u, v)) in slots.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    image |= 1 << slot_index[p[u]][p[v]];
                }
            }
            seen[image] = true;
            least = least.min(image);
        }
        reps.push(least);
    }
    reps.sort_unstable();
    reps.into_iter()
        .map(|mask| {
            slots
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect()
        })
        .collect()
}

/// graph6 text for a simple graph with fewer than 63 vertices.
pub fn graph6(n: usize, edges: &[(usize, usize)]) -> String {
    assert!(n < 63, "graph6 short form needs n < 63");
    let mut adjacent = vec![vec![false; n]; n];
    for &(u, v) in edges {
        adjacent[u][v] = true;
        adjacent[v][u] = true;
    }
    let bits: Vec<bool> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).map(|(i, j)| adjacent[i][j]).collect();
    let mut out = String::new();
    out.push((n as u8 + 63) as char);
    for chunk in bits.chunks(6) {
        let mut value = 0u8;
        for b in 0..6 {
            value = value << 1 | u8::from(chunk.get(b).copied().unwrap_or(false));
        }
        out.push((value + 63) as char);
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct SurveyRow {
    pub id: String,
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub reduced_vertices: usize,
    pub transitive: bool,
    pub generously_transitive: bool,
    pub lemma1: Verdict,
    pub lemma2: Verdict,
    pub theorem1: Verdict,
    pub pairs_tested: u64,
    /// Random 2-isomorphic pairs compared (generously transitive rows).
    pub random_pairs: u64,
    pub lemma1_witness: Option<Lemma1Witness>,
    pub witness: Option<TheoremWitness>,
    /// All verdicts consistent and the group properties of the target and
    /// its twin reduction agree.
    pub consistent: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SurveyOptions {
    pub jobs: Option<usize>,
    pub theorem: TheoremBounds,
}

/// Runs every check on every simple graph with up to `max_vertices`
/// vertices. Rows are in order of vertex count, then canonical edge mask.
pub fn exhaustive_survey(max_vertices: usize, options: &SurveyOptions) -> Result<Vec<SurveyRow>> {
    if max_vertices > SURVEY_MAX_VERTICES {
        return Err(Error::BoundExceeded {
            what: "survey vertices",
            size: max_vertices,
            bound: SURVEY_MAX_VERTICES,
        });
    }
    let graphs: Vec<(usize, Vec<(usize, usize)>)> = (1..=max_vertices)
        .flat_map(|n| simple_graphs(n).into_iter().map(move |e| (n, e)))
        .collect();
    let run = || {
        graphs
            .par_iter()
            .enumerate()
            .map(|(row, (n, edges))| survey_row(*n, edges, row as u64, options))
            .collect::<Result<Vec<_>>>()
    };
    match options.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| Error::invalid("jobs", e.to_string()))?
            .install(run),
        None => run(),
    }
}

fn survey_row(n: usize, edges: &[(usize, usize)], row: u64, options: &SurveyOptions) -> Result<SurveyRow> {
    let target = WeightedGraph::from_edges(n, edges)?;
    let id = graph6(n, edges);
    let group = automorphisms(&target)?;
    let reduced = twin_reduce(&target);
    let lemma1 = run_lemma1(&reduced, &LEMMA1_SCHEDULE)?;
    let bounds = TheoremBounds {
        seed: options.theorem.seed.wrapping_add(row),
        ..options.theorem.clone()
    };
    let theorem = check_theorem1(&target, &id, &bounds)?;
    let lemma2 = if theorem.generously_transitive {
        Verdict::from_search(true, false)
    } else {
        Verdict::from_search(false, theorem.witness.is_some())
    };
    let transitive = group.is_transitive();
    let generously_transitive = group.is_generously_transitive();
    let consistent = transitive == theorem.transitive
        && generously_transitive == theorem.generously_transitive
        && transitive == lemma1.transitive
        && lemma1.verdict == Verdict::Consistent
        && theorem.verdict == Verdict::Consistent;
    Ok(SurveyRow {
        id,
        vertices: n,
        edges: edges.to_vec(),
        reduced_vertices: reduced.n(),
        transitive,
        generously_transitive,
        lemma1: lemma1.verdict,
        lemma2,
        theorem1: theorem.verdict,
        pairs_tested: theorem.pairs_tested + lemma1.pairs_tested,
        random_pairs: theorem.random_pairs,
        lemma1_witness: lemma1.witness,
        witness: theorem.witness,
        consistent,
    })
}

/// One JSON object per row, newline terminated.
pub fn survey_json_lines(rows: &[SurveyRow]) -> String {
    rows.iter()
        .map(|r| serde_json::to_string(r).expect("row serializes") + "\n")
        .collect()
}

pub fn survey_table(rows: &[SurveyRow]) -> String {
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let mut out = format!(
        "{:<8} {:>2} {:>2} {:>5} {:>8} {:<12} {:<12} {:<12} {:>9}  {}\n",
        "id", "n", "m", "trans", "gentrans", "lemma1", "lemma2", "theorem1", "pairs", "witness"
    );
    for r in rows {
        let witness = match &r.witness {
            Some(w) => format!("h = {} vs {} on {} edges", w.h_left, w.h_right, w.left.edge_count()),
            None => "-".to_string(),
        };
        out.push_str(&format!(
            "{:<8} {:>2} {:>2} {:>5} {:>8} {:<12} {:<12} {:<12} {:>9}  {}\n",
            r.id,
            r.vertices,
            r.edges.len(),
            yes_no(r.transitive),
            yes_no(r.generously_transitive),
            r.lemma1.as_str(),
            r.lemma2.as_str(),
            r.theorem1.as_str(),
            r.pairs_tested,
            witness
        ));
    }
    out
}
