//! Named and random test instances: the Fano plane, the order-9 Steiner
//! triple system, complete hypergraphs, and random sparse hypergraphs.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::hypergraph::{all_triples, Hypergraph, SparsityParams, Triple};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("unsupported Steiner triple system order {0} (supported: 7, 9)")]
    UnsupportedOrder(usize),
    #[error("dropped triple {0} is not an edge of the complete hypergraph")]
    BadDrop(Triple),
}

/// The Fano plane: 7 points, 7 lines, every pair of points on exactly one line.
pub fn fano() -> Hypergraph {
    Hypergraph::from_raw(
        7,
        &[
            [0, 1, 2],
            [0, 3, 4],
            [0, 5, 6],
            [1, 3, 5],
            [1, 4, 6],
            [2, 3, 6],
            [2, 4, 5],
        ],
    )
    .unwrap()
}

/// A Steiner triple system of the given order. Order 7 is the Fano plane;
/// order 9 is the affine plane of order 3 (point p = 3x + y, lines are the
/// triples with componentwise zero sum mod 3).
pub fn steiner_triple_system(order: usize) -> Result<Hypergraph, GeneratorError> {
    match order {
        7 => Ok(fano()),
        9 => {
            let coords = |p: usize| (p / 3, p % 3);
            let mut lines = Vec::new();
            for t in all_triples(9) {
                let [a, b, c] = t.vertices();
                let (xa, ya) = coords(a);
                let (xb, yb) = coords(b);
                let (xc, yc) = coords(c);
                if (xa + xb + xc) % 3 == 0 && (ya + yb + yc) % 3 == 0 {
                    lines.push(t);
                }
            }
            Ok(Hypergraph::new(9, lines).unwrap())
        }
        other => Err(GeneratorError::UnsupportedOrder(other)),
    }
}

/// All C(n,3) triples.
pub fn complete(n: usize) -> Hypergraph {
    Hypergraph::new(n, all_triples(n)).unwrap()
}

/// All triples except the dropped ones.
pub fn complete_minus(n: usize, drop: &[Triple]) -> Result<Hypergraph, GeneratorError> {
    let full = complete(n);
    for t in drop {
        if !full.has_edge(t) {
            return Err(GeneratorError::BadDrop(*t));
        }
    }
    let edges = full.edges().filter(|e| !drop.contains(e)).copied().collect::<Vec<_>>();
    Ok(Hypergraph::new(n, edges).unwrap())
}

fn random_sparse(
    n: usize,
    target: usize,
    seed: u64,
    keep: impl Fn(&Hypergraph) -> bool,
) -> Hypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool = all_triples(n);
    pool.shuffle(&mut rng);
    let mut h = Hypergraph::empty(n);
    for t in pool {
        if h.edge_count() >= target {
            break;
        }
        // full predicate re-check after every tentative addition
        let ext = h.with_edge(t).unwrap();
        if keep(&ext) {
            h = ext;
        }
    }
    h
}

/// A random hypergraph kept (6,2)-sparse by rejection sampling; at most
/// `target_m` edges, deterministic under the seed.
pub fn random_62_sparse(n: usize, target_m: usize, seed: u64) -> Hypergraph {
    random_sparse(n, target_m, seed, |h| h.is_kl_sparse(SparsityParams::new(6, 2)))
}

/// A random hypergraph kept f0-sparse by rejection sampling, saturated over
/// one shuffled pass of all candidate triples; deterministic under the seed.
pub fn random_f0_sparse(n: usize, seed: u64) -> Hypergraph {
    random_sparse(n, usize::MAX, seed, |h| h.is_f0_sparse())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::f0_budget;

    fn pairs_covered_exactly_once(h: &Hypergraph) {
        let n = h.n();
        let mut count = vec![vec![0usize; n]; n];
        for e in h.edges() {
            let [a, b, c] = e.vertices();
            count[a][b] += 1;
            count[a][c] += 1;
            count[b][c] += 1;
        }
        for j in 1..n {
            for i in 0..j {
                assert_eq!(count[i][j], 1, "pair ({i},{j}) covered {} times", count[i][j]);
            }
        }
    }

    #[test]
    fn fano_shape() {
        let f = fano();
        assert_eq!(f.edge_count(), 7);
        assert!(f.degrees().iter().all(|&d| d == 3));
        pairs_covered_exactly_once(&f);
    }

    #[test]
    fn sts9_shape() {
        let s = steiner_triple_system(9).unwrap();
        assert_eq!(s.edge_count(), 12);
        assert!(s.degrees().iter().all(|&d| d == 4));
        pairs_covered_exactly_once(&s);
        assert!(steiner_triple_system(13).is_err());
    }

    #[test]
    fn complete_counts() {
        assert_eq!(complete(4).edge_count(), 4);
        let t = Triple::new(0, 1, 2).unwrap();
        assert_eq!(complete_minus(6, &[t]).unwrap().edge_count(), 19);
        let bad = Triple::new(7, 8, 9).unwrap();
        assert!(complete_minus(6, &[bad]).is_err());
    }

    #[test]
    fn random_generators_respect_their_predicates() {
        for seed in 0..10 {
            let h = random_62_sparse(9, 12, seed);
            assert!(h.is_kl_sparse(SparsityParams::new(6, 2)));
            let g = random_f0_sparse(9, seed);
            assert!(g.is_f0_sparse());
            assert!(g.edge_count() <= f0_budget(9));
        }
    }

    #[test]
    fn random_generators_are_deterministic() {
        assert_eq!(random_62_sparse(10, 8, 42), random_62_sparse(10, 8, 42));
        assert_eq!(random_f0_sparse(10, 42), random_f0_sparse(10, 42));
        assert_ne!(random_62_sparse(10, 8, 1), random_62_sparse(10, 8, 2));
    }
}
