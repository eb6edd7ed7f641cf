//! Constructive metric realizations for sparse hypergraphs.
//!
//! The base construction assigns, per hyperedge, a label vertex x_e and sets
//! d(x,y) = 1 when {x,y} lies in an edge labeled inside the pair, 2 when the
//! label is the third vertex, and 3/2 for pairs in no edge. It is well
//! defined whenever two edges share at most one vertex, and realizes any
//! such hypergraph exactly when no six vertices carry three edges.
//!
//! Hypergraphs that satisfy the weaker ceil(k/2) subset budget may contain
//! small dense cores. Those are carved out as induced sub-hypergraphs whose
//! removal leaves a base-construction-safe remainder, realized separately
//! over the {1, 3/2, 2} alphabet, and stitched over the base pattern. Every
//! produced metric is revalidated and extracted back to the input before it
//! is returned; nothing rests on the structural theorems being right.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::{Hypergraph, SparsityParams, SparsityWitness, Triple};
use crate::metric::{pair_index, rat, rat_int, FiniteMetric, Rat};
use crate::oracle::{self, OracleBudget};
use crate::search::{alphabet_search, alphabet_search_all, standard_alphabet, SearchError};

#[derive(Error, Debug)]
pub enum RealizeError {
    #[error("not (6,2)-sparse: {} vertices induce {} edges", .0.subset.len(), .0.induced_edges)]
    NotKlSparse(SparsityWitness),
    #[error("not f0-sparse: {} vertices induce {} edges (budget {})",
            .0.subset.len(), .0.induced_edges, .0.budget)]
    NotF0Sparse(SparsityWitness),
    #[error("edges {0} and {1} share two vertices")]
    SharingPair(Triple, Triple),
    #[error("no valid decomposition found: {0}")]
    NoDecomposition(String),
    #[error("alphabet search error: {0}")]
    Search(#[from] SearchError),
    #[error("oracle budget exhausted during fallback")]
    OracleBudget,
    #[error("internal verification failure: {0}")]
    Verification(String),
}

/// A chosen label vertex per hyperedge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeLabeling(BTreeMap<Triple, usize>);

impl EdgeLabeling {
    /// Labels every edge with its smallest vertex.
    pub fn auto(h: &Hypergraph) -> EdgeLabeling {
        EdgeLabeling(h.edges().map(|e| (*e, e.vertices()[0])).collect())
    }

    pub fn random(h: &Hypergraph, rng: &mut impl Rng) -> EdgeLabeling {
        EdgeLabeling(
            h.edges()
                .map(|e| {
                    let vs = e.vertices();
                    (*e, vs[rng.gen_range(0..3)])
                })
                .collect(),
        )
    }

    pub fn from_map(map: BTreeMap<Triple, usize>) -> Option<EdgeLabeling> {
        if map.iter().all(|(e, v)| e.contains(*v)) {
            Some(EdgeLabeling(map))
        } else {
            None
        }
    }

    pub fn label(&self, e: &Triple) -> Option<usize> {
        self.0.get(e).copied()
    }
}

/// The three-valued base construction. Requires every two edges to share at
/// most one vertex and the (6,2) subset budget; the result is revalidated
/// and extracts back to `h` exactly.
pub fn rho0_construct(
    h: &Hypergraph,
    labeling: &EdgeLabeling,
) -> Result<FiniteMetric, RealizeError> {
    if let Some((e, f)) = h.two_sharing_pair() {
        return Err(RealizeError::SharingPair(e, f));
    }
    if let Some(w) = h.kl_witness(SparsityParams::new(6, 2)) {
        return Err(RealizeError::NotKlSparse(w));
    }
    let metric = rho0_raw(h, labeling)?;
    verify_realizes(&metric, h, "base construction")?;
    Ok(metric)
}

/// The raw value pattern without precondition checks; pairs inside two
/// different edges would be ambiguous, so callers must guarantee pairwise
/// intersections of at most one vertex.
fn rho0_raw(h: &Hypergraph, labeling: &EdgeLabeling) -> Result<FiniteMetric, RealizeError> {
    let n = h.n();
    let mut d = vec![rat(3, 2); n * (n - 1) / 2];
    for e in h.edges() {
        let label = labeling
            .label(e)
            .ok_or_else(|| RealizeError::Verification(format!("edge {e} has no label")))?;
        let [a, b, c] = e.vertices();
        for (x, y) in [(a, b), (a, c), (b, c)] {
            let v = if x == label || y == label { rat_int(1) } else { rat_int(2) };
            d[pair_index(x, y)] = v;
        }
    }
    FiniteMetric::from_upper(n, d)
        .map_err(|e| RealizeError::Verification(format!("base pattern is not a metric: {e}")))
}

fn verify_realizes(
    m: &FiniteMetric,
    h: &Hypergraph,
    what: &str,
) -> Result<(), RealizeError> {
    m.check()
        .map_err(|e| RealizeError::Verification(format!("{what}: metric axioms fail: {e}")))?;
    if &m.betweenness_hypergraph() != h {
        return Err(RealizeError::Verification(format!(
            "{what}: extracted hypergraph differs from the input"
        )));
    }
    Ok(())
}

/// Realizes any (6,2)-sparse hypergraph: small instances by alphabet search,
/// components of six or more vertices by the base construction, joined with
/// dominated cross distances.
pub fn realize_62sparse(h: &Hypergraph) -> Result<FiniteMetric, RealizeError> {
    if let Some(w) = h.kl_witness(SparsityParams::new(6, 2)) {
        return Err(RealizeError::NotKlSparse(w));
    }
    let metric = realize_62_unchecked(h)?;
    verify_realizes(&metric, h, "(6,2) realization")?;
    Ok(metric)
}

fn realize_62_unchecked(h: &Hypergraph) -> Result<FiniteMetric, RealizeError> {
    let n = h.n();
    if h.edge_count() == 0 {
        return Ok(FiniteMetric::equilateral(n, rat_int(1)));
    }
    if n <= 5 {
        return alphabet_search(h, &standard_alphabet())?.ok_or_else(|| {
            RealizeError::Verification("small instance has no alphabet realization".into())
        });
    }
    if h.pairwise_intersections_small() {
        // the base construction applies directly, connected or not
        return rho0_raw(h, &EdgeLabeling::auto(h));
    }
    let comps = h.components();
    if comps.len() == 1 {
        // a connected (6,2)-sparse hypergraph on >= 6 vertices cannot
        // contain two edges sharing two vertices; reaching this means the
        // structural guarantee failed
        let (e, f) = h.two_sharing_pair().expect("pairwise check above");
        return Err(RealizeError::Verification(format!(
            "connected instance with edges {e} and {f} sharing two vertices"
        )));
    }
    // realize components separately and join them; the cross distance grows
    // monotonically with each join, so it is a constant per later component
    let mut part_metrics = Vec::with_capacity(comps.len());
    for comp in &comps {
        let (sub, _) = h.induced(comp);
        part_metrics.push(realize_62_unchecked(&sub)?);
    }
    let mut cross = vec![Rat::zero(); comps.len()];
    let mut running_max = part_metrics[0].max_distance();
    for i in 1..comps.len() {
        running_max = running_max.max(part_metrics[i].max_distance());
        cross[i] = running_max.clone() + rat(1, 2);
        running_max = cross[i].clone();
    }
    let mut comp_of = vec![0usize; n];
    let mut local = vec![0usize; n];
    for (ci, comp) in comps.iter().enumerate() {
        for (li, &v) in comp.iter().enumerate() {
            comp_of[v] = ci;
            local[v] = li;
        }
    }
    let mut d = Vec::with_capacity(n * (n - 1) / 2);
    for j in 1..n {
        for i in 0..j {
            let (ci, cj) = (comp_of[i], comp_of[j]);
            let v = if ci == cj {
                part_metrics[ci].dist(local[i], local[j])
            } else {
                cross[ci.max(cj)].clone()
            };
            d.push(v);
        }
    }
    FiniteMetric::from_upper(n, d)
        .map_err(|e| RealizeError::Verification(format!("component join: {e}")))
}

// ---------------------------------------------------------------------------
// decomposition into dense cores
// ---------------------------------------------------------------------------

/// A dense core: the vertex support of an induced sub-hypergraph whose edges
/// are carved out of the input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Core {
    pub support: Vec<usize>,
    pub edges: Vec<Triple>,
}

/// Cores plus the remaining hypergraph on the original vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub cores: Vec<Core>,
    pub remainder: Hypergraph,
}

/// A violated structural claim, reported rather than silently accepted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum StructuralIssue {
    TooManyCoresInComponent { component: Vec<usize>, count: usize },
    CoreOverlap { first: usize, second: usize, shared: Vec<usize> },
    RemainderNotSparse { subset: Vec<usize>, induced: usize },
    RemainderSharingPair { first: Triple, second: Triple },
    RemainderEdgeMeetsCorePair { edge: Triple, met: Vec<usize> },
    EdgeAccountingMismatch,
}

/// True when a hypergraph needs no carving: every two edges share at most
/// one vertex and the (6,2) subset budget holds.
pub fn remainder_safe(h: &Hypergraph) -> bool {
    h.pairwise_intersections_small() && h.is_kl_sparse(SparsityParams::new(6, 2))
}

impl Decomposition {
    /// Checks every structural claim of the decomposition against `h`.
    pub fn verify(&self, h: &Hypergraph) -> Vec<StructuralIssue> {
        let mut issues = Vec::new();
        let comps = h.components();
        for comp in &comps {
            let set: BTreeSet<usize> = comp.iter().copied().collect();
            let count = self
                .cores
                .iter()
                .filter(|c| c.support.iter().any(|v| set.contains(v)))
                .count();
            if count > 2 {
                issues.push(StructuralIssue::TooManyCoresInComponent {
                    component: comp.clone(),
                    count,
                });
            }
        }
        for i in 0..self.cores.len() {
            for j in i + 1..self.cores.len() {
                let a: BTreeSet<usize> = self.cores[i].support.iter().copied().collect();
                let shared: Vec<usize> = self.cores[j]
                    .support
                    .iter()
                    .copied()
                    .filter(|v| a.contains(v))
                    .collect();
                if shared.len() > 1 {
                    issues.push(StructuralIssue::CoreOverlap { first: i, second: j, shared });
                }
            }
        }
        let mut removed: BTreeSet<Triple> = BTreeSet::new();
        for core in &self.cores {
            removed.extend(core.edges.iter().copied());
        }
        let expected = h.remove_edges(&removed);
        if expected != self.remainder {
            issues.push(StructuralIssue::EdgeAccountingMismatch);
        }
        if let Some(w) = self.remainder.kl_witness(SparsityParams::new(6, 2)) {
            issues.push(StructuralIssue::RemainderNotSparse {
                subset: w.subset,
                induced: w.induced_edges,
            });
        }
        if let Some((e, f)) = self.remainder.two_sharing_pair() {
            issues.push(StructuralIssue::RemainderSharingPair { first: e, second: f });
        }
        // when two cores share a vertex, remainder edges must meet their
        // union in at most one vertex
        for i in 0..self.cores.len() {
            for j in i + 1..self.cores.len() {
                let a: BTreeSet<usize> = self.cores[i].support.iter().copied().collect();
                let b: BTreeSet<usize> = self.cores[j].support.iter().copied().collect();
                if a.intersection(&b).next().is_none() {
                    continue;
                }
                let union: BTreeSet<usize> = a.union(&b).copied().collect();
                for e in self.remainder.edges() {
                    let met: Vec<usize> =
                        e.vertices().iter().copied().filter(|v| union.contains(v)).collect();
                    if met.len() > 1 {
                        issues.push(StructuralIssue::RemainderEdgeMeetsCorePair {
                            edge: *e,
                            met,
                        });
                    }
                }
            }
        }
        issues
    }
}

/// Candidate cores of one component: vertex sets inducing a sub-hypergraph
/// that itself fails the remainder conditions.
fn failing_subsets(h: &Hypergraph, comp: &[usize]) -> Vec<(Vec<usize>, Vec<Triple>)> {
    let mut out = Vec::new();
    let k = comp.len();
    if k < 4 || k > 20 {
        return out;
    }
    for mask in 0u32..(1u32 << k) {
        if (mask.count_ones() as usize) < 4 {
            continue;
        }
        let subset: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| comp[i]).collect();
        let edges = h.induced_edges(&subset);
        if edges.len() < 2 {
            continue;
        }
        let (sub, _) = h.induced(&subset);
        if !remainder_safe(&sub) {
            // tighten to the actual support of the carved edges
            let mut support: Vec<usize> = edges.iter().flat_map(|e| e.vertices()).collect();
            support.sort_unstable();
            support.dedup();
            if support.len() == subset.len() {
                out.push((subset, edges));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn edge_meets(e: &Triple, set: &BTreeSet<usize>) -> usize {
    e.vertices().iter().filter(|v| set.contains(v)).count()
}

/// Core choices for one failing component, cheapest removal first. Each
/// choice leaves the component's remaining edges pairwise small, within the
/// (6,2) budget, and meeting every carved support in at most one vertex.
pub(crate) fn component_options(h: &Hypergraph, comp: &[usize]) -> Vec<Vec<Core>> {
    let comp_edges: Vec<Triple> = h.induced_edges(comp);
    let comp_sub = Hypergraph::new(h.n(), comp_edges.iter().copied()).unwrap();
    if remainder_safe(&comp_sub) {
        return vec![Vec::new()];
    }
    let candidates = failing_subsets(h, comp);
    let mut options: Vec<Vec<Core>> = Vec::new();
    let ok_remainder = |removed: &BTreeSet<Triple>, supports: &[&Vec<usize>]| -> bool {
        let rest: Vec<Triple> =
            comp_edges.iter().filter(|e| !removed.contains(e)).copied().collect();
        let rest_h = Hypergraph::new(h.n(), rest.iter().copied()).unwrap();
        if !remainder_safe(&rest_h) {
            return false;
        }
        let sets: Vec<BTreeSet<usize>> =
            supports.iter().map(|s| s.iter().copied().collect()).collect();
        // remainder edges touch each core at most once; for intersecting
        // core pairs, their union at most once
        for e in &rest {
            for set in &sets {
                if edge_meets(e, set) > 1 {
                    return false;
                }
            }
        }
        if sets.len() == 2 && sets[0].intersection(&sets[1]).next().is_some() {
            let union: BTreeSet<usize> = sets[0].union(&sets[1]).copied().collect();
            for e in &rest {
                if edge_meets(e, &union) > 1 {
                    return false;
                }
            }
        }
        true
    };
    for (support, edges) in &candidates {
        let removed: BTreeSet<Triple> = edges.iter().copied().collect();
        if ok_remainder(&removed, &[support]) {
            options.push(vec![Core { support: support.clone(), edges: edges.clone() }]);
        }
    }
    for i in 0..candidates.len() {
        for j in i + 1..candidates.len() {
            let (s1, e1) = &candidates[i];
            let (s2, e2) = &candidates[j];
            let a: BTreeSet<usize> = s1.iter().copied().collect();
            let shared = s2.iter().filter(|v| a.contains(v)).count();
            if shared > 1 {
                continue;
            }
            let mut removed: BTreeSet<Triple> = e1.iter().copied().collect();
            removed.extend(e2.iter().copied());
            if ok_remainder(&removed, &[s1, s2]) {
                options.push(vec![
                    Core { support: s1.clone(), edges: e1.clone() },
                    Core { support: s2.clone(), edges: e2.clone() },
                ]);
            }
        }
    }
    let weight = |cores: &Vec<Core>| -> (usize, usize, Vec<Vec<usize>>) {
        (
            cores.iter().map(|c| c.edges.len()).sum(),
            cores.iter().map(|c| c.support.len()).sum(),
            cores.iter().map(|c| c.support.clone()).collect(),
        )
    };
    options.sort_by_key(weight);
    options.truncate(40);
    options
}

/// All candidate decompositions in preference order (fewest removed edges,
/// then smallest support, then lexicographic), capped.
pub fn candidate_decompositions(h: &Hypergraph, cap: usize) -> Vec<Decomposition> {
    let comps = h.components();
    let mut per_comp: Vec<Vec<Vec<Core>>> = Vec::new();
    for comp in &comps {
        let opts = component_options(h, comp);
        if opts.is_empty() {
            return Vec::new();
        }
        per_comp.push(opts);
    }
    let mut combos: Vec<Vec<Core>> = vec![Vec::new()];
    for opts in &per_comp {
        let mut next = Vec::new();
        for combo in &combos {
            for opt in opts {
                let mut merged = combo.clone();
                merged.extend(opt.iter().cloned());
                next.push(merged);
            }
        }
        combos = next;
        if combos.len() > 4096 {
            combos.truncate(4096);
        }
    }
    let weight = |cores: &Vec<Core>| -> (usize, usize, Vec<Vec<usize>>) {
        (
            cores.iter().map(|c| c.edges.len()).sum(),
            cores.iter().map(|c| c.support.len()).sum(),
            cores.iter().map(|c| c.support.clone()).collect(),
        )
    };
    combos.sort_by_key(weight);
    combos.truncate(cap);
    combos
        .into_iter()
        .map(|cores| {
            let mut removed: BTreeSet<Triple> = BTreeSet::new();
            for core in &cores {
                removed.extend(core.edges.iter().copied());
            }
            Decomposition { cores, remainder: h.remove_edges(&removed) }
        })
        .collect()
}

/// First decomposition in preference order. Structural claims are verified;
/// any violation is an error, never silently returned.
pub fn decompose_f0(h: &Hypergraph) -> Result<Decomposition, RealizeError> {
    if let Some(w) = h.f0_witness() {
        return Err(RealizeError::NotF0Sparse(w));
    }
    let candidates = candidate_decompositions(h, 8);
    let dec = candidates.into_iter().next().ok_or_else(|| {
        RealizeError::NoDecomposition(
            "no core choice leaves a realizable remainder".into(),
        )
    })?;
    let issues = dec.verify(h);
    if !issues.is_empty() {
        return Err(RealizeError::Verification(format!(
            "decomposition violates structural claims: {issues:?}"
        )));
    }
    Ok(dec)
}

// ---------------------------------------------------------------------------
// stitched realization
// ---------------------------------------------------------------------------

/// Counters describing how a realization was obtained.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RealizeStats {
    pub decompositions_tried: usize,
    pub stitch_attempts: usize,
    pub whole_search_fallback: bool,
    pub oracle_fallback: bool,
}

/// A realization result: the metric, the decomposition used (when the
/// stitched path produced it), and fallback accounting.
#[derive(Debug)]
pub struct Realization {
    pub metric: FiniteMetric,
    pub decomposition: Option<Decomposition>,
    pub stats: RealizeStats,
}

/// Realizes any f0-sparse hypergraph. Hypergraphs already within the (6,2)
/// budget delegate to [`realize_62sparse`]; otherwise dense cores are carved,
/// realized over the {1, 3/2, 2} alphabet, and stitched over the base
/// pattern; every candidate is verified exactly before being accepted.
pub fn realize_f0(h: &Hypergraph) -> Result<Realization, RealizeError> {
    realize_f0_with(h, None)
}

/// [`realize_f0`] with a catalog: matching cores reuse the catalog metric
/// before falling back to direct search.
pub fn realize_f0_with(
    h: &Hypergraph,
    catalog: Option<&crate::catalog::Catalog>,
) -> Result<Realization, RealizeError> {
    if let Some(w) = h.f0_witness() {
        return Err(RealizeError::NotF0Sparse(w));
    }
    let mut stats = RealizeStats::default();
    // delegate when the base construction applies as-is; hypergraphs within
    // the (6,2) budget but with two-sharing edge pairs go through the core
    // path so the pairs get carved
    if remainder_safe(h) {
        let metric = realize_62sparse(h)?;
        return Ok(Realization { metric, decomposition: None, stats });
    }

    let decompositions = candidate_decompositions(h, 16);
    const MAX_STITCHES: usize = 50_000;
    for dec in &decompositions {
        stats.decompositions_tried += 1;
        if let Some(metric) = try_stitch(h, dec, catalog, &mut stats, MAX_STITCHES)? {
            verify_realizes(&metric, h, "stitched realization")?;
            return Ok(Realization {
                metric,
                decomposition: Some(dec.clone()),
                stats,
            });
        }
        if stats.stitch_attempts >= MAX_STITCHES {
            break;
        }
    }

    // exhaustive fallback over the construction alphabet; the theory says
    // this cannot fail for an f0-sparse input
    if h.n() <= crate::search::SEARCH_MAX_N {
        if let Some(metric) = alphabet_search(h, &standard_alphabet())? {
            stats.whole_search_fallback = true;
            verify_realizes(&metric, h, "alphabet fallback")?;
            return Ok(Realization { metric, decomposition: None, stats });
        }
    }

    stats.oracle_fallback = true;
    let budget = OracleBudget { max_n: h.n().max(9), ..Default::default() };
    match oracle::decide_metric(h, &budget)
        .map_err(|e| RealizeError::Verification(format!("oracle fallback failed: {e}")))?
    {
        oracle::MetricityVerdict::Metric { witness, .. } => {
            verify_realizes(&witness, h, "oracle fallback")?;
            Ok(Realization { metric: witness, decomposition: None, stats })
        }
        oracle::MetricityVerdict::Nonmetric { .. } => Err(RealizeError::Verification(
            "oracle refutes an f0-sparse instance; this contradicts the realizability \
             guarantee"
                .into(),
        )),
        oracle::MetricityVerdict::BudgetExceeded { .. } => Err(RealizeError::OracleBudget),
    }
}

/// Tries all core-metric choices and remainder labelings for one
/// decomposition, in deterministic order, until a stitched candidate
/// verifies.
fn try_stitch(
    h: &Hypergraph,
    dec: &Decomposition,
    catalog: Option<&crate::catalog::Catalog>,
    stats: &mut RealizeStats,
    max_stitches: usize,
) -> Result<Option<FiniteMetric>, RealizeError> {
    const CORE_METRIC_LIMIT: usize = 6;
    let mut core_metrics: Vec<Vec<FiniteMetric>> = Vec::with_capacity(dec.cores.len());
    for core in &dec.cores {
        let (sub, _) = {
            let edge_h = Hypergraph::new(h.n(), core.edges.iter().copied()).unwrap();
            edge_h.induced(&core.support)
        };
        let mut metrics = Vec::new();
        if let Some(cat) = catalog {
            if let Some(m) = cat.transported_metric(&sub) {
                metrics.push(m);
            }
        }
        if sub.n() <= crate::search::SEARCH_MAX_N {
            for m in alphabet_search_all(&sub, &standard_alphabet(), CORE_METRIC_LIMIT)? {
                if !metrics.contains(&m) {
                    metrics.push(m);
                }
            }
        }
        if metrics.is_empty() {
            return Ok(None);
        }
        core_metrics.push(metrics);
    }

    let rem_edges: Vec<Triple> = dec.remainder.edge_vec();
    let labeling_count = 3usize.checked_pow(rem_edges.len() as u32).unwrap_or(usize::MAX);

    let mut combo = vec![0usize; dec.cores.len()];
    loop {
        for labeling_idx in 0..labeling_count {
            stats.stitch_attempts += 1;
            if stats.stitch_attempts > max_stitches {
                return Ok(None);
            }
            let labels: Vec<usize> = {
                let mut idx = labeling_idx;
                rem_edges
                    .iter()
                    .map(|e| {
                        let digit = idx % 3;
                        idx /= 3;
                        e.vertices()[digit]
                    })
                    .collect()
            };
            if let Some(metric) = stitch(h, dec, &core_metrics, &combo, &rem_edges, &labels) {
                if metric.betweenness_hypergraph() == *h {
                    return Ok(Some(metric));
                }
            }
        }
        // advance the core-metric combination
        let mut i = 0;
        loop {
            if i == combo.len() {
                return Ok(None);
            }
            combo[i] += 1;
            if combo[i] < core_metrics[i].len() {
                break;
            }
            combo[i] = 0;
            i += 1;
        }
    }
}

/// Assembles the stitched distance pattern: core pairs take the core metric,
/// remainder-edge pairs take the labeled 1/2 values, everything else 3/2.
/// Returns None when the assembly is not a metric.
fn stitch(
    h: &Hypergraph,
    dec: &Decomposition,
    core_metrics: &[Vec<FiniteMetric>],
    combo: &[usize],
    rem_edges: &[Triple],
    labels: &[usize],
) -> Option<FiniteMetric> {
    let n = h.n();
    let mut d = vec![rat(3, 2); n * (n - 1) / 2];
    for (e, &label) in rem_edges.iter().zip(labels) {
        let [a, b, c] = e.vertices();
        for (x, y) in [(a, b), (a, c), (b, c)] {
            d[pair_index(x, y)] =
                if x == label || y == label { rat_int(1) } else { rat_int(2) };
        }
    }
    for (ci, core) in dec.cores.iter().enumerate() {
        let m = &core_metrics[ci][combo[ci]];
        for (li, &u) in core.support.iter().enumerate() {
            for (lj, &v) in core.support.iter().enumerate().skip(li + 1) {
                let (a, b) = if u < v { (u, v) } else { (v, u) };
                d[pair_index(a, b)] = m.dist(li, lj);
            }
        }
    }
    FiniteMetric::from_upper(n, d).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use rand::SeedableRng;

    #[test]
    fn rho0_single_edge_case_table() {
        let h = Hypergraph::from_raw(3, &[[0, 1, 2]]).unwrap();
        let m = rho0_construct(&h, &EdgeLabeling::auto(&h)).unwrap();
        assert_eq!(m.dist(0, 1), rat_int(1));
        assert_eq!(m.dist(0, 2), rat_int(1));
        assert_eq!(m.dist(1, 2), rat_int(2));
        assert_eq!(m.betweenness_hypergraph(), h);
        assert!(m.is_between(1, 0, 2).unwrap());
    }

    #[test]
    fn rho0_disjoint_edges_use_the_default_value() {
        let h = Hypergraph::from_raw(6, &[[0, 1, 2], [3, 4, 5]]).unwrap();
        let m = rho0_construct(&h, &EdgeLabeling::auto(&h)).unwrap();
        for x in 0..3 {
            for y in 3..6 {
                assert_eq!(m.dist(x, y), rat(3, 2));
            }
        }
        assert_eq!(m.betweenness_hypergraph(), h);
    }

    #[test]
    fn rho0_rejects_sharing_pairs() {
        let h = Hypergraph::from_raw(4, &[[0, 1, 2], [0, 1, 3]]).unwrap();
        assert!(matches!(
            rho0_construct(&h, &EdgeLabeling::auto(&h)),
            Err(RealizeError::SharingPair(_, _))
        ));
    }

    #[test]
    fn rho0_succeeds_for_random_labelings() {
        let h = Hypergraph::from_raw(8, &[[0, 1, 2], [2, 3, 4], [4, 5, 6], [0, 6, 7]]).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            let lab = EdgeLabeling::random(&h, &mut rng);
            let m = rho0_construct(&h, &lab).unwrap();
            assert_eq!(m.betweenness_hypergraph(), h);
        }
    }

    #[test]
    fn realize_62_rejects_fano_with_witness() {
        match realize_62sparse(&generators::fano()) {
            Err(RealizeError::NotKlSparse(w)) => {
                assert_eq!(w.subset.len(), 6);
                assert!(w.induced_edges >= 3);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn realize_62_two_sharing_edges_small_case() {
        let h = Hypergraph::from_raw(4, &[[0, 1, 2], [0, 1, 3]]).unwrap();
        let m = realize_62sparse(&h).unwrap();
        assert_eq!(m.dist(0, 1), rat_int(1));
        assert_eq!(m.dist(0, 2), rat_int(1));
        assert_eq!(m.dist(0, 3), rat_int(1));
        assert_eq!(m.dist(1, 2), rat_int(2));
        assert_eq!(m.dist(1, 3), rat_int(2));
        assert_eq!(m.dist(2, 3), rat(3, 2));
        assert_eq!(m.betweenness_hypergraph(), h);
    }

    #[test]
    fn realize_62_empty_is_unit_equilateral() {
        let h = Hypergraph::empty(5);
        let m = realize_62sparse(&h).unwrap();
        for j in 1..5 {
            for i in 0..j {
                assert_eq!(m.dist(i, j), rat_int(1));
            }
        }
    }

    #[test]
    fn decompose_trivial_when_already_safe() {
        let h = Hypergraph::from_raw(6, &[[0, 1, 2], [2, 3, 4]]).unwrap();
        let dec = decompose_f0(&h).unwrap();
        assert!(dec.cores.is_empty());
        assert_eq!(dec.remainder, h);
    }

    #[test]
    fn decompose_carves_a_sharing_pair() {
        let h = Hypergraph::from_raw(7, &[[0, 1, 2], [0, 1, 3], [4, 5, 6]]).unwrap();
        let dec = decompose_f0(&h).unwrap();
        assert_eq!(dec.cores.len(), 1);
        assert_eq!(dec.cores[0].support, vec![0, 1, 2, 3]);
        assert_eq!(dec.remainder.edge_count(), 1);
        assert!(dec.verify(&h).is_empty());
    }

    #[test]
    fn decompose_two_disjoint_cores() {
        let h =
            Hypergraph::from_raw(8, &[[0, 1, 2], [0, 1, 3], [4, 5, 6], [4, 5, 7]]).unwrap();
        let dec = decompose_f0(&h).unwrap();
        assert_eq!(dec.cores.len(), 2);
        assert_eq!(dec.remainder.edge_count(), 0);
        assert!(dec.verify(&h).is_empty());
    }

    #[test]
    fn realize_f0_matches_62_on_sharing_pair_via_core_path() {
        let h = Hypergraph::from_raw(4, &[[0, 1, 2], [0, 1, 3]]).unwrap();
        let r = realize_f0(&h).unwrap();
        let dec = r.decomposition.expect("the sharing pair is carved as a core");
        assert_eq!(dec.cores.len(), 1);
        assert_eq!(r.metric, realize_62sparse(&h).unwrap());
    }

    #[test]
    fn realize_f0_stitches_core_plus_remainder() {
        let h = Hypergraph::from_raw(7, &[[0, 1, 2], [0, 1, 3], [4, 5, 6]]).unwrap();
        let r = realize_f0(&h).unwrap();
        assert!(!r.stats.oracle_fallback && !r.stats.whole_search_fallback);
        assert_eq!(r.metric.betweenness_hypergraph(), h);
        let dec = r.decomposition.expect("stitched path");
        assert_eq!(dec.cores.len(), 1);
        assert_eq!(dec.cores[0].support, vec![0, 1, 2, 3]);
        // remainder edge realized by the base pattern, all mixed pairs 3/2
        assert_eq!(r.metric.dist(4, 5), rat_int(1));
        assert_eq!(r.metric.dist(4, 6), rat_int(1));
        assert_eq!(r.metric.dist(5, 6), rat_int(2));
        for x in 0..4 {
            for y in 4..7 {
                assert_eq!(r.metric.dist(x, y), rat(3, 2));
            }
        }
    }

    #[test]
    fn realize_f0_handles_a_chained_core() {
        // the third edge overlaps the sharing-pair support twice, so the
        // whole five-vertex piece is carved as one core
        let h =
            Hypergraph::from_raw(8, &[[0, 1, 2], [0, 1, 3], [2, 3, 4], [5, 6, 7]]).unwrap();
        let r = realize_f0(&h).unwrap();
        assert!(!r.stats.oracle_fallback && !r.stats.whole_search_fallback);
        assert_eq!(r.metric.betweenness_hypergraph(), h);
        let dec = r.decomposition.expect("stitched path");
        assert_eq!(dec.cores.len(), 1);
        assert_eq!(dec.cores[0].support, vec![0, 1, 2, 3, 4]);
        assert_eq!(dec.remainder.edge_count(), 1);
    }

    #[test]
    fn realize_f0_rejects_fano() {
        assert!(matches!(
            realize_f0(&generators::fano()),
            Err(RealizeError::NotF0Sparse(_))
        ));
    }
}
