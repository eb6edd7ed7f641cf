//! Complete decision procedure for metricity of small hypergraphs.
//!
//! The search branches over the middle vertex of every hyperedge. A branch
//! fixes, per edge {x,y,z} with middle y, the equality d(x,z) = d(x,y) +
//! d(y,z); every non-edge triple contributes strict triangle inequalities in
//! all three orientations, and all distances are positive. The whole system
//! is homogeneous of degree one, so a strict solution can be scaled until
//! every distance and every strict slack is at least 1. Substituting
//! d = 1 + y turns a branch into feasibility of
//!
//!   { y >= 0 :  y_xz - y_xy - y_yz = 1 per edge,
//!               y_xy + y_yz - y_xz >= 0 per non-edge orientation }.
//!
//! A branch is refuted in one of three ways, each exact:
//!   * the equality prefix reduces (by incremental Gaussian elimination) to
//!     an inconsistent or sign-impossible row over y >= 0;
//!   * a Farkas certificate found by a fast float simplex passes exact
//!     rational re-verification;
//!   * the exact simplex itself decides the branch.
//! Feasibility is only ever concluded from an exact rational witness, which
//! is revalidated and extracted back to the input hypergraph.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::{Hypergraph, Triple};
use crate::lp::{self, LinearConstraint, LpVerdict};
use crate::metric::{pair_index, rat_int, FiniteMetric, Rat};

#[derive(Error, Debug)]
pub enum OracleError {
    #[error("hypergraph has {n} vertices, above the configured cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("internal verification failure: {0}")]
    Internal(String),
}

/// Exploration limits. `max_nodes` counts middle-assignment tree nodes.
#[derive(Clone, Debug)]
pub struct OracleBudget {
    pub max_nodes: u64,
    pub max_millis: Option<u64>,
    pub max_n: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_nodes: 10_000_000, max_millis: None, max_n: 9 }
    }
}

/// How branches were refuted.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct PruneCounts {
    /// equality prefix reduced to 0 = c with c nonzero
    pub echelon_inconsistent: u64,
    /// equality prefix reduced to a row impossible over y >= 0
    pub echelon_sign: u64,
    /// float-found, exactly verified Farkas certificate
    pub lp_certificate: u64,
    /// exact simplex verdict
    pub lp_exact: u64,
}

impl PruneCounts {
    pub fn total(&self) -> u64 {
        self.echelon_inconsistent + self.echelon_sign + self.lp_certificate + self.lp_exact
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleStats {
    pub nodes: u64,
    pub leaves_covered: u64,
    pub float_lp_calls: u64,
    pub exact_lp_calls: u64,
    pub prunes: PruneCounts,
    pub elapsed_ms: u128,
}

/// The collinearity orientation chosen per edge: edge -> middle vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MiddleAssignment(pub BTreeMap<Triple, usize>);

#[derive(Debug)]
pub enum MetricityVerdict {
    Metric {
        witness: FiniteMetric,
        middles: MiddleAssignment,
        stats: OracleStats,
    },
    Nonmetric {
        /// middle assignments refuted, in total (equals 3^m on completion)
        branches_explored: u64,
        reasons: PruneCounts,
        stats: OracleStats,
    },
    BudgetExceeded {
        stats: OracleStats,
    },
}

impl MetricityVerdict {
    pub fn is_metric(&self) -> bool {
        matches!(self, MetricityVerdict::Metric { .. })
    }
    pub fn is_nonmetric(&self) -> bool {
        matches!(self, MetricityVerdict::Nonmetric { .. })
    }
}

// ---------------------------------------------------------------------------
// incremental equality echelon over y >= 0
// ---------------------------------------------------------------------------

enum Insert {
    Added,
    Redundant,
    Inconsistent,
    SignImpossible,
}

struct Echelon {
    nv: usize,
    rows: Vec<(Vec<Rat>, Rat)>, // normalized: leading coefficient 1
    pivots: Vec<usize>,
}

impl Echelon {
    fn new(nv: usize) -> Echelon {
        Echelon { nv, rows: Vec::new(), pivots: Vec::new() }
    }

    fn len(&self) -> usize {
        self.rows.len()
    }

    fn truncate(&mut self, len: usize) {
        self.rows.truncate(len);
        self.pivots.truncate(len);
    }

    fn insert(&mut self, con: &LinearConstraint) -> Insert {
        let mut row = vec![Rat::zero(); self.nv];
        for (j, c) in &con.coeffs {
            row[*j] += c;
        }
        let mut rhs = con.rhs.clone();
        for ((prow, prhs), &pcol) in self.rows.iter().zip(&self.pivots) {
            if !row[pcol].is_zero() {
                let f = row[pcol].clone();
                for (v, pv) in row.iter_mut().zip(prow) {
                    if !pv.is_zero() {
                        *v -= &f * pv;
                    }
                }
                rhs -= &f * prhs;
            }
        }
        let lead = row.iter().position(|v| !v.is_zero());
        let Some(lead) = lead else {
            return if rhs.is_zero() { Insert::Redundant } else { Insert::Inconsistent };
        };
        let any_pos = row.iter().any(|v| v.is_positive());
        let any_neg = row.iter().any(|v| v.is_negative());
        if (!any_pos && rhs.is_positive()) || (!any_neg && rhs.is_negative()) {
            return Insert::SignImpossible;
        }
        let inv = row[lead].recip();
        for v in row.iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        rhs *= &inv;
        self.rows.push((row, rhs));
        self.pivots.push(lead);
        Insert::Added
    }
}

// ---------------------------------------------------------------------------
// branch engine
// ---------------------------------------------------------------------------

struct MiddleOption {
    middle: usize,
    constraint: LinearConstraint,
    var_mask: u128,
}

enum Flow {
    Exhausted,
    Found(FiniteMetric, MiddleAssignment),
    Budget,
}

struct Engine<'a> {
    h: &'a Hypergraph,
    np: usize,
    edges: Vec<Triple>,
    options: Vec<Vec<MiddleOption>>,
    ineqs: Vec<LinearConstraint>,
    eqs: Vec<LinearConstraint>,
    chosen: Vec<usize>,
    masks: Vec<u128>, // cumulative variable mask per depth
    echelon: Echelon,
    farkas: lp::FarkasSolver,
    stats: OracleStats,
    budget: &'a OracleBudget,
    start: Instant,
    pow3: Vec<u64>,
}

fn sat_pow3(k: usize) -> u64 {
    let mut v: u64 = 1;
    for _ in 0..k {
        v = v.saturating_mul(3);
    }
    v
}

impl<'a> Engine<'a> {
    fn new(h: &'a Hypergraph, budget: &'a OracleBudget) -> Engine<'a> {
        let n = h.n();
        let np = n * (n - 1) / 2;
        // edges with many vertex overlaps first: their equalities interact
        // and die early
        let mut edges = h.edge_vec();
        let overlap = |e: &Triple| -> usize {
            h.edges().filter(|f| *f != e).map(|f| e.common_count(f)).sum()
        };
        edges.sort_by_key(|e| (usize::MAX - overlap(e), *e));

        let mut options = Vec::with_capacity(edges.len());
        for e in &edges {
            let vs = e.vertices();
            let mut opts = Vec::with_capacity(3);
            for &mid in &vs {
                let rest: Vec<usize> = vs.iter().copied().filter(|v| *v != mid).collect();
                let far = pidx(rest[0], rest[1]);
                let n1 = pidx(rest[0], mid);
                let n2 = pidx(mid, rest[1]);
                let constraint = LinearConstraint::new(
                    vec![(far, rat_int(1)), (n1, rat_int(-1)), (n2, rat_int(-1))],
                    rat_int(1),
                );
                let var_mask = (1u128 << far) | (1u128 << n1) | (1u128 << n2);
                opts.push(MiddleOption { middle: mid, constraint, var_mask });
            }
            options.push(opts);
        }

        let mut ineqs = Vec::new();
        for t in crate::hypergraph::all_triples(n) {
            if h.has_edge(&t) {
                continue;
            }
            let [a, b, c] = t.vertices();
            for (x, y, z) in [(a, b, c), (b, a, c), (a, c, b)] {
                ineqs.push(LinearConstraint::new(
                    vec![
                        (pidx(x, y), rat_int(1)),
                        (pidx(y, z), rat_int(1)),
                        (pidx(x, z), rat_int(-1)),
                    ],
                    rat_int(0),
                ));
            }
        }

        let m = edges.len();
        Engine {
            h,
            np,
            edges,
            options,
            ineqs,
            eqs: Vec::with_capacity(m),
            chosen: Vec::with_capacity(m),
            masks: Vec::with_capacity(m),
            echelon: Echelon::new(np),
            farkas: lp::FarkasSolver::new(),
            stats: OracleStats {
                nodes: 0,
                leaves_covered: 0,
                float_lp_calls: 0,
                exact_lp_calls: 0,
                prunes: PruneCounts::default(),
                elapsed_ms: 0,
            },
            budget,
            start: Instant::now(),
            pow3: (0..=m).map(sat_pow3).collect(),
        }
    }

    fn over_budget(&self) -> bool {
        if self.stats.nodes > self.budget.max_nodes {
            return true;
        }
        if let Some(ms) = self.budget.max_millis {
            if self.stats.nodes % 256 == 0 && self.start.elapsed().as_millis() > ms as u128 {
                return true;
            }
        }
        false
    }

    /// Certified infeasibility check of the current prefix system; never
    /// claims infeasibility without an exactly verified certificate.
    fn certified_infeasible(&mut self) -> bool {
        self.stats.float_lp_calls += 1;
        if self.farkas.certified(self.np, &self.eqs, &self.ineqs).is_some() {
            self.stats.prunes.lp_certificate += 1;
            return true;
        }
        false
    }

    fn leaf(&mut self) -> Result<Flow, OracleError> {
        if self.certified_infeasible() {
            self.stats.leaves_covered = self.stats.leaves_covered.saturating_add(1);
            return Ok(Flow::Exhausted);
        }
        // exact decision
        self.stats.exact_lp_calls += 1;
        match lp::feasible_nonneg(self.np, &self.eqs, &self.ineqs) {
            LpVerdict::Feasible(y) => {
                let d: Vec<Rat> = y.into_iter().map(|v| v + rat_int(1)).collect();
                let witness = FiniteMetric::from_upper(self.h.n(), d).map_err(|e| {
                    OracleError::Internal(format!("branch witness fails metric axioms: {e}"))
                })?;
                if witness.betweenness_hypergraph() != *self.h {
                    return Err(OracleError::Internal(
                        "branch witness does not extract back to the input".into(),
                    ));
                }
                let middles = MiddleAssignment(
                    self.edges.iter().copied().zip(self.chosen.iter().copied()).collect(),
                );
                Ok(Flow::Found(witness, middles))
            }
            LpVerdict::Infeasible => {
                self.stats.prunes.lp_exact += 1;
                self.stats.leaves_covered = self.stats.leaves_covered.saturating_add(1);
                Ok(Flow::Exhausted)
            }
        }
    }

    fn explore(&mut self, depth: usize) -> Result<Flow, OracleError> {
        if depth == self.edges.len() {
            return self.leaf();
        }
        let remaining = self.pow3[self.edges.len() - depth - 1];
        for oi in 0..3 {
            self.stats.nodes += 1;
            if self.over_budget() {
                return Ok(Flow::Budget);
            }
            let (constraint, mask, middle) = {
                let opt = &self.options[depth][oi];
                (opt.constraint.clone(), opt.var_mask, opt.middle)
            };
            let check = self.echelon.len();
            let outcome = self.echelon.insert(&constraint);
            match outcome {
                Insert::Inconsistent => {
                    self.stats.prunes.echelon_inconsistent += 1;
                    self.stats.leaves_covered =
                        self.stats.leaves_covered.saturating_add(remaining);
                    self.echelon.truncate(check);
                    continue;
                }
                Insert::SignImpossible => {
                    self.stats.prunes.echelon_sign += 1;
                    self.stats.leaves_covered =
                        self.stats.leaves_covered.saturating_add(remaining);
                    self.echelon.truncate(check);
                    continue;
                }
                Insert::Added | Insert::Redundant => {}
            }
            let prev_mask = self.masks.last().copied().unwrap_or(0);
            self.eqs.push(constraint);
            self.chosen.push(middle);
            self.masks.push(prev_mask | mask);

            // interior certificate pruning pays off only when the new
            // equality shares variables with earlier ones; for pair-disjoint
            // systems it cannot introduce a contradiction on its own
            let interior_prune = depth + 1 < self.edges.len()
                && matches!(outcome, Insert::Added)
                && (prev_mask & mask) != 0
                && self.certified_infeasible();

            let flow = if interior_prune {
                self.stats.leaves_covered =
                    self.stats.leaves_covered.saturating_add(remaining);
                Flow::Exhausted
            } else {
                self.explore(depth + 1)?
            };

            self.echelon.truncate(check);
            self.eqs.pop();
            self.chosen.pop();
            self.masks.pop();

            match flow {
                Flow::Exhausted => {}
                other => return Ok(other),
            }
        }
        Ok(Flow::Exhausted)
    }
}

fn pidx(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    pair_index(a, b)
}

/// Decides whether `h` is the betweenness hypergraph of some finite metric
/// space. Complete within the budget: `Metric` carries an exact revalidated
/// witness, `Nonmetric` means every middle assignment was exactly refuted.
pub fn decide_metric(
    h: &Hypergraph,
    budget: &OracleBudget,
) -> Result<MetricityVerdict, OracleError> {
    if h.n() > budget.max_n {
        return Err(OracleError::CapExceeded { n: h.n(), cap: budget.max_n });
    }
    let mut engine = Engine::new(h, budget);
    let flow = engine.explore(0)?;
    let mut stats = engine.stats;
    stats.elapsed_ms = engine.start.elapsed().as_millis();
    Ok(match flow {
        Flow::Found(witness, middles) => MetricityVerdict::Metric { witness, middles, stats },
        Flow::Budget => MetricityVerdict::BudgetExceeded { stats },
        Flow::Exhausted => {
            let reasons = stats.prunes.clone();
            MetricityVerdict::Nonmetric {
                branches_explored: stats.leaves_covered,
                reasons,
                stats,
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn single_edge_is_metric() {
        let h = Hypergraph::from_raw(3, &[[0, 1, 2]]).unwrap();
        let v = decide_metric(&h, &OracleBudget::default()).unwrap();
        match v {
            MetricityVerdict::Metric { witness, middles, .. } => {
                assert_eq!(witness.betweenness_hypergraph(), h);
                let (&e, &m) = middles.0.iter().next().unwrap();
                assert!(e.contains(m));
            }
            other => panic!("expected metric, got {other:?}"),
        }
    }

    #[test]
    fn complete_four_is_metric() {
        let h = generators::complete(4);
        let v = decide_metric(&h, &OracleBudget::default()).unwrap();
        match v {
            MetricityVerdict::Metric { witness, .. } => {
                assert_eq!(witness.betweenness_hypergraph(), h);
            }
            other => panic!("expected metric, got {other:?}"),
        }
    }

    #[test]
    fn empty_hypergraph_is_metric() {
        let h = Hypergraph::empty(5);
        let v = decide_metric(&h, &OracleBudget::default()).unwrap();
        assert!(v.is_metric());
    }

    #[test]
    fn fano_is_nonmetric_with_exhausted_branches() {
        let v = decide_metric(&generators::fano(), &OracleBudget::default()).unwrap();
        match v {
            MetricityVerdict::Nonmetric { branches_explored, reasons, .. } => {
                assert_eq!(branches_explored, 2187);
                assert_eq!(reasons.total() > 0, true);
            }
            other => panic!("expected nonmetric, got {other:?}"),
        }
    }

    #[test]
    fn cap_is_enforced() {
        let h = Hypergraph::empty(10);
        assert!(matches!(
            decide_metric(&h, &OracleBudget::default()),
            Err(OracleError::CapExceeded { .. })
        ));
    }

    #[test]
    fn budget_exceeded_is_reported() {
        let h = generators::steiner_triple_system(9).unwrap();
        let budget = OracleBudget { max_nodes: 50, ..Default::default() };
        let v = decide_metric(&h, &budget).unwrap();
        assert!(matches!(v, MetricityVerdict::BudgetExceeded { .. }));
    }
}
