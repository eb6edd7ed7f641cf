//! Exhaustive backtracking search for a metric over a finite distance
//! alphabet whose collinear triples are exactly the edges of a given
//! hypergraph.
//!
//! Pairs are assigned in colex order ((0,1), (0,2), (1,2), (0,3), ...), so
//! every time a pair (i, j) receives a value, all triples {a, i, j} with
//! a < i become fully assigned and are checked immediately: the triangle
//! inequalities must hold and the triple must be collinear iff it is an
//! edge. Values are tried in the order given by the alphabet slice, and the
//! first completed assignment in that order is returned.

use thiserror::Error;

use crate::hypergraph::{Hypergraph, Triple};
use crate::metric::{pairs, FiniteMetric, Rat};

/// Vertex cap for the exhaustive pair search.
pub const SEARCH_MAX_N: usize = 10;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("alphabet search supports at most {max} vertices, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error("alphabet must be non-empty with positive values")]
    BadAlphabet,
}

/// The distance alphabet used by all constructive realizations.
pub fn standard_alphabet() -> Vec<Rat> {
    vec![crate::metric::rat(3, 2), crate::metric::rat_int(1), crate::metric::rat_int(2)]
}

struct Assignment<'a> {
    h: &'a Hypergraph,
    alphabet: &'a [Rat],
    pair_list: Vec<(usize, usize)>,
    values: Vec<usize>, // alphabet index per assigned pair
}

impl<'a> Assignment<'a> {
    fn dist(&self, x: usize, y: usize) -> &'a Rat {
        let (x, y) = if x < y { (x, y) } else { (y, x) };
        &self.alphabet[self.values[crate::metric::pair_index(x, y)]]
    }

    /// Checks the triple {a, i, j} (all pairs assigned): triangle
    /// inequalities plus collinear-iff-edge.
    fn triple_ok(&self, a: usize, i: usize, j: usize) -> bool {
        let ai = self.dist(a, i);
        let aj = self.dist(a, j);
        let ij = self.dist(i, j);
        let s_ai = aj.clone() + ij; // side sums
        let s_aj = ai.clone() + ij;
        let s_ij = ai.clone() + aj;
        if *ai > s_ai || *aj > s_aj || *ij > s_ij {
            return false;
        }
        let collinear = *ai == s_ai || *aj == s_aj || *ij == s_ij;
        collinear == self.h.has_edge(&Triple::new(a, i, j).unwrap())
    }

    fn extend(&mut self, depth: usize, found: &mut dyn FnMut(FiniteMetric) -> bool) -> bool {
        if depth == self.pair_list.len() {
            let d: Vec<Rat> =
                self.values.iter().map(|&vi| self.alphabet[vi].clone()).collect();
            let m = FiniteMetric::from_upper(self.h.n(), d)
                .expect("incremental checks guarantee a valid metric");
            return found(m);
        }
        let (i, j) = self.pair_list[depth];
        for vi in 0..self.alphabet.len() {
            self.values.push(vi);
            let ok = (0..i).all(|a| self.triple_ok(a, i, j));
            if ok && self.extend(depth + 1, found) {
                return true;
            }
            self.values.pop();
        }
        false
    }
}

fn run(
    h: &Hypergraph,
    alphabet: &[Rat],
    found: &mut dyn FnMut(FiniteMetric) -> bool,
) -> Result<(), SearchError> {
    if h.n() > SEARCH_MAX_N {
        return Err(SearchError::TooLarge { n: h.n(), max: SEARCH_MAX_N });
    }
    if alphabet.is_empty() || alphabet.iter().any(|v| *v <= crate::metric::rat_int(0)) {
        return Err(SearchError::BadAlphabet);
    }
    let mut a = Assignment {
        h,
        alphabet,
        pair_list: pairs(h.n()),
        values: Vec::with_capacity(h.n() * (h.n() - 1) / 2),
    };
    a.extend(0, found);
    Ok(())
}

/// First metric over the alphabet realizing `h` exactly, or `None` when the
/// exhaustive search rules one out.
pub fn alphabet_search(
    h: &Hypergraph,
    alphabet: &[Rat],
) -> Result<Option<FiniteMetric>, SearchError> {
    let mut result = None;
    run(h, alphabet, &mut |m| {
        result = Some(m);
        true
    })?;
    Ok(result)
}

/// Up to `limit` realizations, in search order.
pub fn alphabet_search_all(
    h: &Hypergraph,
    alphabet: &[Rat],
    limit: usize,
) -> Result<Vec<FiniteMetric>, SearchError> {
    let mut out = Vec::new();
    run(h, alphabet, &mut |m| {
        out.push(m);
        out.len() >= limit
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::metric::{rat, rat_int};

    #[test]
    fn realizes_the_two_edge_pair() {
        let h = Hypergraph::from_raw(4, &[[0, 1, 2], [0, 1, 3]]).unwrap();
        let m = alphabet_search(&h, &standard_alphabet()).unwrap().expect("realizable");
        assert_eq!(m.betweenness_hypergraph(), h);
        // search order pins the witness exactly
        assert_eq!(m.dist(0, 1), rat_int(1));
        assert_eq!(m.dist(0, 2), rat_int(1));
        assert_eq!(m.dist(1, 2), rat_int(2));
        assert_eq!(m.dist(0, 3), rat_int(1));
        assert_eq!(m.dist(1, 3), rat_int(2));
        assert_eq!(m.dist(2, 3), rat(3, 2));
    }

    #[test]
    fn fano_has_no_alphabet_realization() {
        let found = alphabet_search(&generators::fano(), &standard_alphabet()).unwrap();
        assert!(found.is_none());
    }

    #[test]
    fn empty_hypergraph_over_singleton_alphabet() {
        let h = Hypergraph::empty(3);
        let m = alphabet_search(&h, &[rat_int(1)]).unwrap().expect("equilateral");
        assert_eq!(m.dist(0, 1), rat_int(1));
        assert_eq!(m.betweenness_hypergraph().edge_count(), 0);
    }

    #[test]
    fn find_all_returns_distinct_realizations() {
        let h = Hypergraph::from_raw(3, &[[0, 1, 2]]).unwrap();
        let all = alphabet_search_all(&h, &standard_alphabet(), 10).unwrap();
        assert!(!all.is_empty());
        for m in &all {
            assert_eq!(m.betweenness_hypergraph(), h);
        }
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                assert_ne!(all[i], all[j]);
            }
        }
    }

    #[test]
    fn size_cap() {
        let h = Hypergraph::empty(11);
        assert!(alphabet_search(&h, &standard_alphabet()).is_err());
    }
}
