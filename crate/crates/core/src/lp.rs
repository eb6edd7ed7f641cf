//! Exact linear feasibility over the rationals, plus a float-guided
//! Farkas-certificate path used by the branch oracle.
//!
//! The exact solver is a dense phase-one simplex with Bland's rule: free
//! variables are split into nonnegative pairs, every row gets an artificial
//! variable, and the system is feasible iff the artificial sum can be driven
//! to zero. It is exact and total, intended for the small systems that arise
//! per branch.
//!
//! The oracle cannot afford an exact simplex per branch, so infeasibility is
//! usually established in two steps: a fast f64 simplex searches for a Farkas
//! certificate (multipliers u for the equalities, v >= 0 for the
//! inequalities with u'E + v'A <= 0 and u'e > 0 over the nonnegative
//! variable cone), the floats are rounded to small rationals, and the
//! certificate is re-verified with exact arithmetic. A verified certificate
//! is a proof; anything that fails verification falls back to the exact
//! solver. Feasibility claims are never taken from floats.

use num_traits::{Signed, Zero};

use crate::metric::{rat, Rat};

/// A linear constraint `sum(coeffs · x) (= or >=) rhs`; the comparison is
/// determined by which argument list it is passed in.
#[derive(Clone, Debug)]
pub struct LinearConstraint {
    pub coeffs: Vec<(usize, Rat)>,
    pub rhs: Rat,
}

impl LinearConstraint {
    pub fn new(coeffs: Vec<(usize, Rat)>, rhs: Rat) -> LinearConstraint {
        LinearConstraint { coeffs, rhs }
    }

    fn eval(&self, x: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (j, c) in &self.coeffs {
            acc += c * &x[*j];
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpVerdict {
    Feasible(Vec<Rat>),
    Infeasible,
}

/// Exact Farkas certificate of infeasibility for a system over x >= 0:
/// multipliers `eq_mult` (free) and `ineq_mult` (>= 0) with
/// `eq_mult'E + ineq_mult'A <= 0` componentwise and
/// `eq_mult'e + ineq_mult'b > 0`.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub eq_mult: Vec<Rat>,
    pub ineq_mult: Vec<Rat>,
}

/// Verifies a candidate certificate with exact arithmetic.
pub fn verify_certificate(
    num_vars: usize,
    equalities: &[LinearConstraint],
    inequalities: &[LinearConstraint],
    cert: &Certificate,
) -> bool {
    if cert.eq_mult.len() != equalities.len() || cert.ineq_mult.len() != inequalities.len() {
        return false;
    }
    if cert.ineq_mult.iter().any(|v| v.is_negative()) {
        return false;
    }
    let mut combined = vec![Rat::zero(); num_vars];
    let mut rhs = Rat::zero();
    for (mult, con) in cert.eq_mult.iter().zip(equalities) {
        if mult.is_zero() {
            continue;
        }
        for (j, c) in &con.coeffs {
            combined[*j] += mult * c;
        }
        rhs += mult * &con.rhs;
    }
    for (mult, con) in cert.ineq_mult.iter().zip(inequalities) {
        if mult.is_zero() {
            continue;
        }
        for (j, c) in &con.coeffs {
            combined[*j] += mult * c;
        }
        rhs += mult * &con.rhs;
    }
    combined.iter().all(|c| !c.is_positive()) && rhs.is_positive()
}

// ---------------------------------------------------------------------------
// exact phase-one simplex
// ---------------------------------------------------------------------------

struct RatTableau {
    ncols: usize,
    rows: Vec<Vec<Rat>>, // each row: ncols coefficients then rhs
    basis: Vec<usize>,
    obj: Vec<Rat>, // ncols coefficients then objective constant
}

impl RatTableau {
    /// `rows`: (dense coefficients, rhs). Adds one artificial per row and
    /// sets up the phase-one objective.
    fn new(ncols_structural: usize, rows_in: Vec<(Vec<Rat>, Rat)>) -> RatTableau {
        let m = rows_in.len();
        let ncols = ncols_structural + m;
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        for (i, (mut coeffs, mut rhs)) in rows_in.into_iter().enumerate() {
            if rhs.is_negative() {
                for c in coeffs.iter_mut() {
                    *c = -c.clone();
                }
                rhs = -rhs;
            }
            coeffs.resize(ncols, Rat::zero());
            coeffs[ncols_structural + i] = Rat::from_integer(1.into());
            coeffs.push(rhs);
            rows.push(coeffs);
            basis.push(ncols_structural + i);
        }
        // phase-one objective: sum of all rows over structural columns
        let mut obj = vec![Rat::zero(); ncols + 1];
        for row in &rows {
            for j in 0..ncols_structural {
                obj[j] += &row[j];
            }
            obj[ncols] += &row[ncols];
        }
        RatTableau { ncols, rows, basis, obj }
    }

    /// Bland's rule phase-one; returns true when the artificial sum reaches
    /// zero (the system is feasible).
    fn solve(&mut self, structural: usize) -> bool {
        loop {
            // entering: smallest structural column with positive reduced cost
            let mut enter = None;
            for j in 0..structural {
                if self.obj[j].is_positive() {
                    enter = Some(j);
                    break;
                }
            }
            let Some(enter) = enter else {
                return self.obj[self.ncols].is_zero();
            };
            // leaving: minimum ratio, ties by smallest basis index
            let mut leave: Option<(usize, Rat)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[enter].is_positive() {
                    let ratio = &row[self.ncols] / &row[enter];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((pivot_row, _)) = leave else {
                // the phase-one objective is bounded below by zero, so a
                // positive reduced cost always has a blocking row
                debug_assert!(false, "phase-one column without blocking row");
                return false;
            };
            self.pivot(pivot_row, enter);
        }
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let inv = {
            let p = &self.rows[pr][pc];
            debug_assert!(!p.is_zero());
            p.recip()
        };
        for v in self.rows[pr].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let prow = self.rows[pr].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == pr || row[pc].is_zero() {
                continue;
            }
            let f = row[pc].clone();
            for (v, pv) in row.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        if !self.obj[pc].is_zero() {
            let f = self.obj[pc].clone();
            for (v, pv) in self.obj.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[pr] = pc;
    }

    fn value_of(&self, col: usize) -> Rat {
        for (i, &b) in self.basis.iter().enumerate() {
            if b == col {
                return self.rows[i][self.ncols].clone();
            }
        }
        Rat::zero()
    }
}

/// Exact feasibility of {x free : E x = e, A x >= b}. Free variables are
/// split internally; the witness satisfies every constraint exactly.
pub fn feasible(
    num_vars: usize,
    equalities: &[LinearConstraint],
    inequalities: &[LinearConstraint],
) -> LpVerdict {
    // columns: x+ (nv), x- (nv), surplus per inequality
    let nv = num_vars;
    let structural = 2 * nv + inequalities.len();
    let mut rows = Vec::with_capacity(equalities.len() + inequalities.len());
    for con in equalities {
        let mut row = vec![Rat::zero(); structural];
        for (j, c) in &con.coeffs {
            row[*j] += c;
            row[nv + *j] -= c;
        }
        rows.push((row, con.rhs.clone()));
    }
    for (t, con) in inequalities.iter().enumerate() {
        let mut row = vec![Rat::zero(); structural];
        for (j, c) in &con.coeffs {
            row[*j] += c;
            row[nv + *j] -= c;
        }
        row[2 * nv + t] = rat(-1, 1);
        rows.push((row, con.rhs.clone()));
    }
    let mut tab = RatTableau::new(structural, rows);
    if !tab.solve(structural) {
        return LpVerdict::Infeasible;
    }
    let x: Vec<Rat> = (0..nv).map(|j| tab.value_of(j) - tab.value_of(nv + j)).collect();
    debug_assert!(equalities.iter().all(|c| c.eval(&x) == c.rhs));
    debug_assert!(inequalities.iter().all(|c| c.eval(&x) >= c.rhs));
    LpVerdict::Feasible(x)
}

/// Exact feasibility of {x >= 0 : E x = e, A x >= b}.
pub fn feasible_nonneg(
    num_vars: usize,
    equalities: &[LinearConstraint],
    inequalities: &[LinearConstraint],
) -> LpVerdict {
    let nv = num_vars;
    let structural = nv + inequalities.len();
    let mut rows = Vec::with_capacity(equalities.len() + inequalities.len());
    for con in equalities {
        let mut row = vec![Rat::zero(); structural];
        for (j, c) in &con.coeffs {
            row[*j] += c;
        }
        rows.push((row, con.rhs.clone()));
    }
    for (t, con) in inequalities.iter().enumerate() {
        let mut row = vec![Rat::zero(); structural];
        for (j, c) in &con.coeffs {
            row[*j] += c;
        }
        row[nv + t] = rat(-1, 1);
        rows.push((row, con.rhs.clone()));
    }
    let mut tab = RatTableau::new(structural, rows);
    if !tab.solve(structural) {
        return LpVerdict::Infeasible;
    }
    let x: Vec<Rat> = (0..nv).map(|j| tab.value_of(j)).collect();
    debug_assert!(equalities.iter().all(|c| c.eval(&x) == c.rhs));
    debug_assert!(inequalities.iter().all(|c| c.eval(&x) >= c.rhs));
    LpVerdict::Feasible(x)
}

/// Exact Farkas certificate for the nonnegative-variable system
/// {x >= 0 : E x = e, A x >= b}, or `None` when the system is feasible.
/// By Farkas' lemma exactly one of the two outcomes holds.
pub fn farkas_exact(
    num_vars: usize,
    equalities: &[LinearConstraint],
    inequalities: &[LinearConstraint],
) -> Option<Certificate> {
    // F: over (u free, v >= 0): u'E + v'A <= 0 (per x-column), u'e + v'b = 1
    let ne = equalities.len();
    let ni = inequalities.len();
    let structural = 2 * ne + ni + num_vars; // u+, u-, v, slack per x-column
    let mut rows = Vec::with_capacity(num_vars + 1);
    // column constraints
    let mut col_rows: Vec<Vec<Rat>> = vec![vec![Rat::zero(); structural]; num_vars];
    for (l, con) in equalities.iter().enumerate() {
        for (j, c) in &con.coeffs {
            col_rows[*j][l] += c;
            col_rows[*j][ne + l] -= c;
        }
    }
    for (t, con) in inequalities.iter().enumerate() {
        for (j, c) in &con.coeffs {
            col_rows[*j][2 * ne + t] += c;
        }
    }
    for (j, mut row) in col_rows.into_iter().enumerate() {
        row[2 * ne + ni + j] = rat(1, 1); // slack: u'E + v'A + s = 0
        rows.push((row, Rat::zero()));
    }
    // normalization u'e + v'b = 1
    let mut norm = vec![Rat::zero(); structural];
    for (l, con) in equalities.iter().enumerate() {
        norm[l] += &con.rhs;
        norm[ne + l] -= &con.rhs;
    }
    for (t, con) in inequalities.iter().enumerate() {
        norm[2 * ne + t] += &con.rhs;
    }
    rows.push((norm, rat(1, 1)));

    let mut tab = RatTableau::new(structural, rows);
    if !tab.solve(structural) {
        return None;
    }
    let eq_mult: Vec<Rat> = (0..ne).map(|l| tab.value_of(l) - tab.value_of(ne + l)).collect();
    let ineq_mult: Vec<Rat> = (0..ni).map(|t| tab.value_of(2 * ne + t)).collect();
    let cert = Certificate { eq_mult, ineq_mult };
    debug_assert!(verify_certificate(num_vars, equalities, inequalities, &cert));
    Some(cert)
}

// ---------------------------------------------------------------------------
// float Farkas search
// ---------------------------------------------------------------------------

const EPS: f64 = 1e-9;

struct FloatTableau {
    ncols: usize,
    stride: usize,
    a: Vec<f64>, // m rows of (ncols + 1)
    basis: Vec<usize>,
    obj: Vec<f64>,
}

impl FloatTableau {
    fn new(ncols_structural: usize, rows_in: Vec<(Vec<f64>, f64)>) -> FloatTableau {
        let m = rows_in.len();
        let ncols = ncols_structural + m;
        let stride = ncols + 1;
        let mut a = vec![0.0; m * stride];
        let mut basis = Vec::with_capacity(m);
        for (i, (coeffs, rhs)) in rows_in.into_iter().enumerate() {
            let flip = rhs < 0.0;
            let row = &mut a[i * stride..(i + 1) * stride];
            for (j, &c) in coeffs.iter().enumerate() {
                row[j] = if flip { -c } else { c };
            }
            row[ncols_structural + i] = 1.0;
            row[ncols] = if flip { -rhs } else { rhs };
            basis.push(ncols_structural + i);
        }
        let mut obj = vec![0.0; stride];
        for i in 0..m {
            let row = &a[i * stride..(i + 1) * stride];
            for j in 0..ncols_structural {
                obj[j] += row[j];
            }
            obj[ncols] += row[ncols];
        }
        FloatTableau { ncols, stride, a, basis, obj }
    }

    /// Returns true when the artificial sum reaches (numerical) zero.
    fn solve(&mut self, structural: usize, max_iters: usize) -> bool {
        let m = self.basis.len();
        for iter in 0..max_iters {
            if self.obj[self.ncols] < EPS {
                return true;
            }
            let bland = iter > max_iters / 2;
            let mut enter = None;
            if bland {
                for j in 0..structural {
                    if self.obj[j] > EPS {
                        enter = Some(j);
                        break;
                    }
                }
            } else {
                let mut best = EPS;
                for j in 0..structural {
                    if self.obj[j] > best {
                        best = self.obj[j];
                        enter = Some(j);
                    }
                }
            }
            let Some(enter) = enter else {
                return self.obj[self.ncols] < EPS;
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..m {
                let aij = self.a[i * self.stride + enter];
                if aij > EPS {
                    let ratio = self.a[i * self.stride + self.ncols] / aij;
                    let better = match leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < lr - EPS
                                || ((ratio - lr).abs() <= EPS
                                    && self.basis[i] < self.basis[li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((pr, _)) = leave else {
                return false;
            };
            self.pivot(pr, enter);
        }
        self.obj[self.ncols] < EPS
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let stride = self.stride;
        let p = self.a[pr * stride + pc];
        let inv = 1.0 / p;
        for v in self.a[pr * stride..(pr + 1) * stride].iter_mut() {
            *v *= inv;
        }
        let (before, rest) = self.a.split_at_mut(pr * stride);
        let (prow, after) = rest.split_at_mut(stride);
        for chunk in before.chunks_exact_mut(stride).chain(after.chunks_exact_mut(stride)) {
            let f = chunk[pc];
            if f != 0.0 {
                for (v, pv) in chunk.iter_mut().zip(prow.iter()) {
                    *v -= f * pv;
                }
                chunk[pc] = 0.0;
            }
        }
        let f = self.obj[pc];
        if f != 0.0 {
            for (v, pv) in self.obj.iter_mut().zip(prow.iter()) {
                *v -= f * pv;
            }
            self.obj[pc] = 0.0;
        }
        self.basis[pr] = pc;
    }

    fn value_of(&self, col: usize) -> f64 {
        for (i, &b) in self.basis.iter().enumerate() {
            if b == col {
                return self.a[i * self.stride + self.ncols];
            }
        }
        0.0
    }
}

/// Continued-fraction rounding of a float to a rational with a bounded
/// denominator.
pub fn rationalize(x: f64, max_den: u64) -> Rat {
    if !x.is_finite() {
        return Rat::zero();
    }
    if x.abs() < 1e-9 {
        return Rat::zero();
    }
    let neg = x < 0.0;
    let mut v = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    for _ in 0..40 {
        let a = v.floor();
        if a > 1e17 {
            break;
        }
        let ai = a as i64;
        let p2 = ai.saturating_mul(p1).saturating_add(p0);
        let q2 = ai.saturating_mul(q1).saturating_add(q0);
        if q2 as u64 > max_den || p2 < 0 || q2 < 0 {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let frac = v - a;
        if frac < 1e-12 {
            break;
        }
        v = 1.0 / frac;
    }
    if q1 == 0 {
        return Rat::zero();
    }
    let r = rat(p1, q1);
    if neg {
        -r
    } else {
        r
    }
}

/// Searches for a Farkas certificate with an f64 simplex and rounds the
/// multipliers to rationals. The result is a candidate only: callers must
/// run [`verify_certificate`] before trusting it.
pub fn farkas_float_candidate(
    num_vars: usize,
    equalities: &[LinearConstraint],
    inequalities: &[LinearConstraint],
) -> Option<Certificate> {
    let all: Vec<usize> = (0..inequalities.len()).collect();
    farkas_float_restricted(num_vars, equalities, inequalities, &all)
}

/// Float Farkas search restricted to the inequality columns in `active`.
/// A certificate found over a column subset is a certificate of the full
/// system (the remaining multipliers are zero); failure over a subset
/// decides nothing.
fn farkas_float_restricted(
    num_vars: usize,
    equalities: &[LinearConstraint],
    inequalities: &[LinearConstraint],
    active: &[usize],
) -> Option<Certificate> {
    let ne = equalities.len();
    let na = active.len();
    let structural = 2 * ne + na + num_vars;
    let mut col_rows: Vec<Vec<f64>> = vec![vec![0.0; structural]; num_vars];
    for (l, con) in equalities.iter().enumerate() {
        for (j, c) in &con.coeffs {
            let cf = rat_to_f64(c);
            col_rows[*j][l] += cf;
            col_rows[*j][ne + l] -= cf;
        }
    }
    for (k, &t) in active.iter().enumerate() {
        for (j, c) in &inequalities[t].coeffs {
            col_rows[*j][2 * ne + k] += rat_to_f64(c);
        }
    }
    let mut rows = Vec::with_capacity(num_vars + 1);
    for (j, mut row) in col_rows.into_iter().enumerate() {
        row[2 * ne + na + j] = 1.0;
        rows.push((row, 0.0));
    }
    let mut norm = vec![0.0; structural];
    for (l, con) in equalities.iter().enumerate() {
        let rf = rat_to_f64(&con.rhs);
        norm[l] += rf;
        norm[ne + l] -= rf;
    }
    for (k, &t) in active.iter().enumerate() {
        norm[2 * ne + k] += rat_to_f64(&inequalities[t].rhs);
    }
    rows.push((norm, 1.0));

    let mut tab = FloatTableau::new(structural, rows);
    if !tab.solve(structural, 60 + 6 * (num_vars + ne + na)) {
        return None;
    }
    const MAX_DEN: u64 = 1 << 24;
    let eq_mult: Vec<Rat> = (0..ne)
        .map(|l| rationalize(tab.value_of(l) - tab.value_of(ne + l), MAX_DEN))
        .collect();
    let mut ineq_mult = vec![Rat::zero(); inequalities.len()];
    for (k, &t) in active.iter().enumerate() {
        let v = tab.value_of(2 * ne + k);
        if v > EPS {
            ineq_mult[t] = rationalize(v, MAX_DEN);
        }
    }
    Some(Certificate { eq_mult, ineq_mult })
}

/// Stateful certificate search that remembers which inequality columns
/// recent certificates used. Sibling subproblems in a branch tree share
/// certificate structure, so a small active column set usually suffices and
/// the full-width solve runs only on misses.
pub struct FarkasSolver {
    active: Vec<usize>,
}

const ACTIVE_CAP: usize = 56;

impl Default for FarkasSolver {
    fn default() -> Self {
        FarkasSolver { active: Vec::new() }
    }
}

impl FarkasSolver {
    pub fn new() -> FarkasSolver {
        FarkasSolver::default()
    }

    /// A verified exact certificate, or None (which decides nothing).
    pub fn certified(
        &mut self,
        num_vars: usize,
        equalities: &[LinearConstraint],
        inequalities: &[LinearConstraint],
    ) -> Option<Certificate> {
        if !self.active.is_empty() && self.active.len() < inequalities.len() {
            let active = std::mem::take(&mut self.active);
            let hit = farkas_float_restricted(num_vars, equalities, inequalities, &active)
                .filter(|c| verify_certificate(num_vars, equalities, inequalities, c));
            self.active = active;
            if let Some(cert) = hit {
                self.remember(&cert);
                return Some(cert);
            }
        }
        let cert = farkas_float_candidate(num_vars, equalities, inequalities)
            .filter(|c| verify_certificate(num_vars, equalities, inequalities, c))?;
        self.remember(&cert);
        Some(cert)
    }

    fn remember(&mut self, cert: &Certificate) {
        let support: Vec<usize> = cert
            .ineq_mult
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(t, _)| t)
            .collect();
        let mut merged = support;
        for &t in &self.active {
            if !merged.contains(&t) {
                merged.push(t);
            }
            if merged.len() >= ACTIVE_CAP {
                break;
            }
        }
        self.active = merged;
    }
}

pub(crate) fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::rat_int;

    fn con(coeffs: &[(usize, i64)], rhs: i64) -> LinearConstraint {
        LinearConstraint::new(
            coeffs.iter().map(|(j, c)| (*j, rat_int(*c))).collect(),
            rat_int(rhs),
        )
    }

    // variables d01=0, d02=1, d12=2

    #[test]
    fn single_betweenness_equality_is_feasible() {
        // d01 = d02 + d12, all >= 1
        let eqs = [con(&[(0, 1), (1, -1), (2, -1)], 0)];
        let ineqs = [con(&[(0, 1)], 1), con(&[(1, 1)], 1), con(&[(2, 1)], 1)];
        match feasible(3, &eqs, &ineqs) {
            LpVerdict::Feasible(x) => {
                assert_eq!(x[0], &x[1] + &x[2]);
                assert!(x.iter().all(|v| *v >= rat_int(1)));
            }
            LpVerdict::Infeasible => panic!("expected feasible"),
        }
    }

    #[test]
    fn opposite_equalities_are_infeasible() {
        // d01 = d02 + d12 and d02 = d01 + d12 force d12 = -d12
        let eqs = [
            con(&[(0, 1), (1, -1), (2, -1)], 0),
            con(&[(1, 1), (0, -1), (2, -1)], 0),
        ];
        let ineqs = [con(&[(0, 1)], 1), con(&[(1, 1)], 1), con(&[(2, 1)], 1)];
        assert_eq!(feasible(3, &eqs, &ineqs), LpVerdict::Infeasible);
        // the same system over x >= 0 has an exact certificate
        let cert = farkas_exact(3, &eqs, &ineqs).expect("infeasible system");
        assert!(verify_certificate(3, &eqs, &ineqs, &cert));
    }

    #[test]
    fn farkas_exact_agrees_with_feasible() {
        let eqs = [con(&[(0, 1), (1, -1)], 1)];
        let ineqs = [con(&[(0, -1)], 0), con(&[(1, 1)], 0)];
        // x0 - x1 = 1, -x0 >= 0, x1 >= 0, x >= 0 forces x0 = 0, x1 = -1
        assert!(farkas_exact(2, &eqs, &ineqs).is_some());
        assert_eq!(feasible_nonneg(2, &eqs, &ineqs), LpVerdict::Infeasible);

        let eqs = [con(&[(0, 1), (1, 1)], 2)];
        let ineqs = [con(&[(0, 1)], 1)];
        assert!(farkas_exact(2, &eqs, &ineqs).is_none());
        assert!(matches!(feasible_nonneg(2, &eqs, &ineqs), LpVerdict::Feasible(_)));
    }

    #[test]
    fn float_candidate_verifies_on_a_simple_contradiction() {
        let eqs = [
            con(&[(0, 1), (1, -1), (2, -1)], 1),
            con(&[(1, 1), (0, -1), (2, -1)], 1),
        ];
        let cand = farkas_float_candidate(3, &eqs, &[]).expect("candidate");
        assert!(verify_certificate(3, &eqs, &[], &cand));
    }

    #[test]
    fn rationalize_recovers_simple_fractions() {
        assert_eq!(rationalize(0.5, 1 << 20), rat(1, 2));
        assert_eq!(rationalize(-1.5, 1 << 20), rat(-3, 2));
        assert_eq!(rationalize(1e-12, 1 << 20), Rat::zero());
        assert_eq!(rationalize(1.0 / 3.0, 1 << 20), rat(1, 3));
    }
}
