//! Exact-rational finite metric spaces: validation, betweenness, extraction
//! of the collinearity hypergraph, disjoint unions and scaling.
//!
//! All arithmetic is exact; betweenness is an equality between rationals and
//! floats would corrupt it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::hypergraph::{Hypergraph, Triple};

/// Exact rational scalar used for every distance value.
pub type Rat = BigRational;

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// Renders a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q`, an integer, or a decimal such as `1.5` (converted exactly).
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| format!("bad numerator in '{s}'"))?;
        let q: BigInt = q.trim().parse().map_err(|_| format!("bad denominator in '{s}'"))?;
        if q.is_zero() {
            return Err(format!("zero denominator in '{s}'"));
        }
        return Ok(Rat::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let sign = if int.trim_start().starts_with('-') { -1 } else { 1 };
        let int: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| format!("bad decimal in '{s}'"))?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad decimal in '{s}'"));
        }
        let digits = frac.len() as u32;
        let frac_num: BigInt = frac.parse().map_err(|_| format!("bad decimal in '{s}'"))?;
        let denom = BigInt::from(10u32).pow(digits);
        let whole = int * &denom + BigInt::from(sign) * frac_num;
        return Ok(Rat::new(whole, denom));
    }
    let p: BigInt = s.parse().map_err(|_| format!("bad rational '{s}'"))?;
    Ok(Rat::from_integer(p))
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum MetricError {
    #[error("distance matrix has {got} off-diagonal entries, expected {expected}")]
    BadShape { got: usize, expected: usize },
    #[error("distance between {i} and {j} is not positive")]
    NonPositive { i: usize, j: usize },
    #[error("triangle inequality fails on ({i}, {j}, {k}): d({i},{k}) > d({i},{j}) + d({j},{k})")]
    TriangleViolation { i: usize, j: usize, k: usize },
    #[error("betweenness query with repeated point ids ({0}, {1}, {2})")]
    RepeatedPoints(usize, usize, usize),
    #[error("scaling factor must be positive")]
    NonPositiveScale,
}

/// A finite metric space on points {0, .., n-1} with an exact symmetric
/// distance matrix. Construction validates positivity and every triangle
/// inequality, so a value of this type is always a genuine metric.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteMetric {
    n: usize,
    // upper triangle, indexed by pairs (i < j) in colex order
    d: Vec<Rat>,
}

impl std::fmt::Debug for FiniteMetric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteMetric(n={}", self.n)?;
        for j in 1..self.n {
            for i in 0..j {
                write!(f, ", d({i},{j})={}", format_rat(&self.dist(i, j)))?;
            }
        }
        write!(f, ")")
    }
}

pub(crate) fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

/// All pairs (i, j), i < j, in the colex order used by the flat storage.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for j in 1..n {
        for i in 0..j {
            out.push((i, j));
        }
    }
    out
}

impl FiniteMetric {
    /// Builds and validates a metric from its upper triangle in colex pair
    /// order ((0,1), (0,2), (1,2), (0,3), ...).
    pub fn from_upper(n: usize, d: Vec<Rat>) -> Result<FiniteMetric, MetricError> {
        let expected = n * (n - 1) / 2;
        if d.len() != expected {
            return Err(MetricError::BadShape { got: d.len(), expected });
        }
        let m = FiniteMetric { n, d };
        m.check()?;
        Ok(m)
    }

    /// Revalidates every axiom; reports the first violated pair or triple.
    pub fn check(&self) -> Result<(), MetricError> {
        for j in 1..self.n {
            for i in 0..j {
                if !self.d[pair_index(i, j)].is_positive() {
                    return Err(MetricError::NonPositive { i, j });
                }
            }
        }
        for k in 2..self.n {
            for j in 1..k {
                for i in 0..j {
                    let ij = &self.d[pair_index(i, j)];
                    let jk = &self.d[pair_index(j, k)];
                    let ik = &self.d[pair_index(i, k)];
                    if ik > &(ij + jk) {
                        return Err(MetricError::TriangleViolation { i, j: j, k });
                    }
                    if ij > &(ik + jk) {
                        return Err(MetricError::TriangleViolation { i: i, j: k, k: j });
                    }
                    if jk > &(ij + ik) {
                        return Err(MetricError::TriangleViolation { i: j, j: i, k });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn equilateral(n: usize, value: Rat) -> FiniteMetric {
        assert!(value.is_positive());
        FiniteMetric { n, d: vec![value; n * (n - 1) / 2] }
    }

    /// Points on a line at the given strictly increasing coordinates.
    pub fn line(coords: &[Rat]) -> FiniteMetric {
        let n = coords.len();
        let mut d = Vec::with_capacity(n * (n - 1) / 2);
        for j in 1..n {
            for i in 0..j {
                d.push(&coords[j] - &coords[i]);
            }
        }
        FiniteMetric::from_upper(n, d).expect("line coordinates must increase")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dist(&self, i: usize, j: usize) -> Rat {
        if i == j {
            return Rat::zero();
        }
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.d[pair_index(i, j)].clone()
    }

    pub fn upper(&self) -> &[Rat] {
        &self.d
    }

    pub fn max_distance(&self) -> Rat {
        self.d.iter().max().cloned().unwrap_or_else(Rat::zero)
    }

    /// True iff y lies between x and z: d(x,z) = d(x,y) + d(y,z) exactly.
    pub fn is_between(&self, x: usize, y: usize, z: usize) -> Result<bool, MetricError> {
        if x == y || y == z || x == z {
            return Err(MetricError::RepeatedPoints(x, y, z));
        }
        Ok(self.dist(x, z) == self.dist(x, y) + self.dist(y, z))
    }

    /// True iff one of the three points lies between the other two.
    pub fn is_collinear(&self, x: usize, y: usize, z: usize) -> Result<bool, MetricError> {
        Ok(self.is_between(x, y, z)?
            || self.is_between(y, x, z)?
            || self.is_between(x, z, y)?)
    }

    /// The hypergraph whose edges are exactly the collinear triples.
    pub fn betweenness_hypergraph(&self) -> Hypergraph {
        let mut edges = Vec::new();
        for c in 2..self.n {
            for b in 1..c {
                for a in 0..b {
                    if self.is_collinear(a, b, c).unwrap() {
                        edges.push(Triple::new(a, b, c).unwrap());
                    }
                }
            }
        }
        Hypergraph::new(self.n, edges).unwrap()
    }

    /// Uniform positive scaling; the collinearity pattern is unchanged.
    pub fn scale(&self, c: &Rat) -> Result<FiniteMetric, MetricError> {
        if !c.is_positive() {
            return Err(MetricError::NonPositiveScale);
        }
        Ok(FiniteMetric { n: self.n, d: self.d.iter().map(|x| x * c).collect() })
    }

    /// Joins two metric spaces on disjoint point sets: points of `other` are
    /// re-indexed after `self`, internal distances are kept, and every cross
    /// distance is the constant max(internal) + 1/2. The constant strictly
    /// dominates all internal distances, so no cross triple is collinear and
    /// the extracted hypergraph is the disjoint union of the parts'.
    pub fn disjoint_union(&self, other: &FiniteMetric) -> FiniteMetric {
        let m = self.max_distance().max(other.max_distance()) + rat(1, 2);
        let n = self.n + other.n;
        let mut d = Vec::with_capacity(n * (n - 1) / 2);
        for j in 1..n {
            for i in 0..j {
                let v = if j < self.n {
                    self.dist(i, j)
                } else if i >= self.n {
                    other.dist(i - self.n, j - self.n)
                } else {
                    m.clone()
                };
                d.push(v);
            }
        }
        FiniteMetric { n, d }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rat {
        rat(p, q)
    }

    #[test]
    fn rational_parsing_and_formatting() {
        assert_eq!(parse_rat("3/2").unwrap(), r(3, 2));
        assert_eq!(parse_rat("1.5").unwrap(), r(3, 2));
        assert_eq!(parse_rat("2").unwrap(), r(2, 1));
        assert_eq!(parse_rat("-0.25").unwrap(), r(-1, 4));
        assert_eq!(format_rat(&r(3, 2)), "3/2");
        assert_eq!(format_rat(&r(4, 2)), "2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn equilateral_validates() {
        let m = FiniteMetric::equilateral(4, rat_int(1));
        assert!(m.check().is_ok());
    }

    #[test]
    fn triangle_violation_is_reported() {
        let err = FiniteMetric::from_upper(3, vec![rat_int(1), rat_int(3), rat_int(1)])
            .unwrap_err();
        assert!(matches!(err, MetricError::TriangleViolation { .. }));
    }

    #[test]
    fn betweenness_on_a_line() {
        let m = FiniteMetric::line(&[rat_int(0), rat_int(1), rat_int(2)]);
        assert!(m.is_between(0, 1, 2).unwrap());
        assert!(!m.is_between(1, 0, 2).unwrap());
        assert!(m.is_between(2, 1, 0).unwrap());
        assert!(m.is_between(0, 1, 2).is_ok());
        assert!(m.is_between(0, 0, 2).is_err());
    }

    #[test]
    fn equilateral_has_no_collinear_triples() {
        let m = FiniteMetric::equilateral(5, rat_int(1));
        assert_eq!(m.betweenness_hypergraph().edge_count(), 0);
    }

    #[test]
    fn line_extracts_to_complete_hypergraph() {
        let m = FiniteMetric::line(&[rat_int(0), rat_int(1), rat_int(2), rat_int(3)]);
        let h = m.betweenness_hypergraph();
        assert_eq!(h.edge_count(), 4);
    }

    #[test]
    fn union_of_single_points() {
        let p = FiniteMetric::equilateral(1, rat_int(1));
        let u = p.disjoint_union(&p);
        assert_eq!(u.n(), 2);
        assert_eq!(u.dist(0, 1), r(1, 2));
        assert_eq!(u.betweenness_hypergraph().edge_count(), 0);
    }

    #[test]
    fn union_of_two_lines() {
        let line = FiniteMetric::line(&[rat_int(0), rat_int(1), rat_int(2)]);
        let u = line.disjoint_union(&line);
        assert_eq!(u.dist(0, 3), r(5, 2));
        let h = u.betweenness_hypergraph();
        assert_eq!(h.edge_count(), 2);
        assert!(h.has_edge(&Triple::new(0, 1, 2).unwrap()));
        assert!(h.has_edge(&Triple::new(3, 4, 5).unwrap()));
    }

    #[test]
    fn union_of_equilateral_pairs() {
        let pair = FiniteMetric::equilateral(2, rat_int(1));
        let u = pair.disjoint_union(&pair);
        assert_eq!(u.dist(0, 2), r(3, 2));
        assert_eq!(u.betweenness_hypergraph().edge_count(), 0);
    }

    #[test]
    fn scaling_preserves_extraction() {
        let m = FiniteMetric::line(&[rat_int(0), rat_int(1), rat_int(2), rat_int(3)]);
        let h = m.betweenness_hypergraph();
        for c in [r(2, 1), r(1, 3)] {
            let s = m.scale(&c).unwrap();
            assert!(s.check().is_ok());
            assert_eq!(s.betweenness_hypergraph(), h);
        }
        assert!(m.scale(&rat_int(0)).is_err());
    }

    #[test]
    fn at_most_one_middle_per_triple() {
        // two simultaneous betweenness equalities would force a zero distance
        let m = FiniteMetric::line(&[rat_int(0), rat_int(1), rat_int(2)]);
        let mids = [
            m.is_between(1, 0, 2).unwrap(),
            m.is_between(0, 1, 2).unwrap(),
            m.is_between(0, 2, 1).unwrap(),
        ];
        assert_eq!(mids.iter().filter(|b| **b).count(), 1);
    }
}
