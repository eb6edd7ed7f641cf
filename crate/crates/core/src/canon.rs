//! Canonical forms and isomorphism for small 3-uniform hypergraphs, plus
//! enumeration of isomorphism classes.
//!
//! The canonical form is the lexicographically minimal incidence bit string
//! of the edge set over all vertex permutations. Bits are ordered by the
//! combinatorial rank of each triple ({a<b<c} ranks at C(a,1)+C(b,2)+C(c,3)),
//! so that once the first p positions of a permutation are fixed, the first
//! C(p,3) bits are determined and the search can be pruned against the best
//! encoding found so far. Candidate vertices are visited low-degree-first,
//! which reaches the minimal encoding early on the sparse instances this
//! crate works with.

use std::collections::HashSet;

use crate::hypergraph::{Hypergraph, HypergraphError, Triple};

/// Hard cap on the vertex count for exact canonicalization.
pub const CANONICAL_MAX_N: usize = 12;

/// An isomorphism-invariant fingerprint: equal iff the hypergraphs are
/// isomorphic (at equal vertex counts).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl std::fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

struct Search<'a> {
    h: &'a Hypergraph,
    n: usize,
    // candidate visit order, low degree first
    order: Vec<usize>,
    chosen: Vec<usize>,
    used: Vec<bool>,
    // bits determined so far for the current partial permutation
    bits: Vec<bool>,
    best: Option<(Vec<bool>, Vec<usize>)>,
}

impl<'a> Search<'a> {
    fn run(h: &'a Hypergraph) -> (Vec<bool>, Vec<usize>) {
        let n = h.n();
        let deg = h.degrees();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (deg[v], v));
        let mut s = Search {
            h,
            n,
            order,
            chosen: Vec::with_capacity(n),
            used: vec![false; n],
            bits: Vec::new(),
            best: None,
        };
        s.descend(false);
        s.best.expect("canonical search always yields a labeling")
    }

    /// `ahead` is set once the current prefix is strictly smaller than the
    /// best encoding, at which point no further comparisons are needed.
    fn descend(&mut self, ahead: bool) {
        let pos = self.chosen.len();
        if pos == self.n {
            if ahead || self.best.is_none() {
                // chosen[pos] = old vertex; invert to old -> new
                let mut perm = vec![0usize; self.n];
                for (new, &old) in self.chosen.iter().enumerate() {
                    perm[old] = new;
                }
                self.best = Some((self.bits.clone(), perm));
            }
            return;
        }
        for oi in 0..self.n {
            let v = self.order[oi];
            if self.used[v] {
                continue;
            }
            self.used[v] = true;
            self.chosen.push(v);

            // bits for triples {i, j, pos} over already placed positions
            let added = if pos >= 2 {
                let mut k = 0;
                for j in 1..pos {
                    for i in 0..j {
                        let present = self
                            .h
                            .has_edge(&triple_of(self.chosen[i], self.chosen[j], v));
                        self.bits.push(present);
                        k += 1;
                    }
                }
                k
            } else {
                0
            };

            let start = self.bits.len() - added;
            let verdict = if ahead || self.best.is_none() {
                Prefix::Smaller
            } else {
                compare_segment(
                    &self.bits[start..],
                    &self.best.as_ref().unwrap().0[start..start + added],
                )
            };
            match verdict {
                Prefix::Larger => {}
                Prefix::Equal => self.descend(ahead),
                Prefix::Smaller => self.descend(true),
            }

            self.bits.truncate(start);
            self.chosen.pop();
            self.used[v] = false;
        }
    }
}

#[derive(PartialEq)]
enum Prefix {
    Smaller,
    Equal,
    Larger,
}

fn compare_segment(current: &[bool], best: &[bool]) -> Prefix {
    for (c, b) in current.iter().zip(best) {
        if c != b {
            return if *b { Prefix::Smaller } else { Prefix::Larger };
        }
    }
    Prefix::Equal
}

fn triple_of(a: usize, b: usize, c: usize) -> Triple {
    Triple::new(a, b, c).unwrap()
}

fn encode(n: usize, bits: &[bool]) -> CanonicalForm {
    let mut s = format!("n{n}:");
    for chunk in bits.chunks(4) {
        let mut nibble = 0u8;
        for (i, &b) in chunk.iter().enumerate() {
            if b {
                nibble |= 1 << i;
            }
        }
        s.push(char::from_digit(nibble as u32, 16).unwrap());
    }
    CanonicalForm(s)
}

fn check_size(h: &Hypergraph) -> Result<(), HypergraphError> {
    if h.n() > CANONICAL_MAX_N {
        return Err(HypergraphError::TooLarge { n: h.n(), max: CANONICAL_MAX_N });
    }
    Ok(())
}

/// The canonical fingerprint of `h`; errors above [`CANONICAL_MAX_N`].
pub fn canonical_form(h: &Hypergraph) -> Result<CanonicalForm, HypergraphError> {
    check_size(h)?;
    let (bits, _) = Search::run(h);
    Ok(encode(h.n(), &bits))
}

/// Canonical fingerprint together with a permutation (old id -> new id)
/// realizing it.
pub fn canonical_labeling(
    h: &Hypergraph,
) -> Result<(CanonicalForm, Vec<usize>), HypergraphError> {
    check_size(h)?;
    let (bits, perm) = Search::run(h);
    Ok((encode(h.n(), &bits), perm))
}

/// The canonical representative of the isomorphism class of `h`.
pub fn canonicalize(h: &Hypergraph) -> Result<Hypergraph, HypergraphError> {
    let (_, perm) = canonical_labeling(h)?;
    Ok(h.relabel(&perm))
}

pub fn are_isomorphic(g: &Hypergraph, h: &Hypergraph) -> Result<bool, HypergraphError> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(g)? == canonical_form(h)?)
}

/// A vertex bijection carrying edges of `g` exactly onto edges of `h`,
/// if the two are isomorphic. `map[v_of_g] = v_of_h`.
pub fn isomorphism(
    g: &Hypergraph,
    h: &Hypergraph,
) -> Result<Option<Vec<usize>>, HypergraphError> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let (fg, pg) = canonical_labeling(g)?;
    let (fh, ph) = canonical_labeling(h)?;
    if fg != fh {
        return Ok(None);
    }
    // invert ph: canonical id -> h id
    let mut ph_inv = vec![0usize; h.n()];
    a_invert(&ph, &mut ph_inv);
    let map: Vec<usize> = pg.iter().map(|&c| ph_inv[c]).collect();
    debug_assert_eq!(&g.relabel(&map), h);
    Ok(Some(map))
}

fn a_invert(perm: &[usize], out: &mut [usize]) {
    for (old, &new) in perm.iter().enumerate() {
        out[new] = old;
    }
}

/// All automorphisms-modulo nothing: every isomorphism from `g` onto `h`.
/// Exhaustive permutation backtracking; intended for the small cores only.
pub fn all_isomorphisms(g: &Hypergraph, h: &Hypergraph) -> Vec<Vec<usize>> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return Vec::new();
    }
    let n = g.n();
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        g: &Hypergraph,
        h: &Hypergraph,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        v: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = g.n();
        if v == n {
            if &g.relabel(map) == h {
                out.push(map.clone());
            }
            return;
        }
        for t in 0..n {
            if used[t] {
                continue;
            }
            map[v] = t;
            // partial consistency: any g-edge fully mapped must be an h-edge
            let ok = g.edges().all(|e| {
                let vs = e.vertices();
                if vs.iter().all(|&x| map[x] != usize::MAX) {
                    h.has_edge(&triple_of(map[vs[0]], map[vs[1]], map[vs[2]]))
                } else {
                    true
                }
            });
            if ok {
                used[t] = true;
                extend(g, h, map, used, v + 1, out);
                used[t] = false;
            }
            map[v] = usize::MAX;
        }
    }
    extend(g, h, &mut map, &mut used, 0, &mut out);
    out
}

/// Options for [`enumerate_classes`].
#[derive(Clone, Copy)]
pub struct EnumerateOptions {
    /// Keep only hypergraphs where every vertex lies in an edge.
    pub spanning: bool,
    /// Keep only connected hypergraphs.
    pub connected: bool,
    pub max_edges: Option<usize>,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { spanning: false, connected: false, max_edges: None }
    }
}

/// Enumerates one representative per isomorphism class of hypergraphs on
/// exactly `n` vertices satisfying the hereditary predicate `keep` (it must
/// be closed under edge removal, e.g. a sparsity condition). The `spanning` /
/// `connected` filters apply to the output only, not to the search, so
/// classes reachable only through non-spanning sub-hypergraphs are still
/// found. Representatives are canonically labeled.
pub fn enumerate_classes(
    n: usize,
    opts: EnumerateOptions,
    mut keep: impl FnMut(&Hypergraph) -> bool,
) -> Result<Vec<Hypergraph>, HypergraphError> {
    if n > CANONICAL_MAX_N {
        return Err(HypergraphError::TooLarge { n, max: CANONICAL_MAX_N });
    }
    let triples = crate::hypergraph::all_triples(n);
    let empty = Hypergraph::empty(n);
    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    seen.insert(canonical_form(&empty)?);
    let mut frontier = vec![empty.clone()];
    let mut out = Vec::new();
    let accept = |h: &Hypergraph| {
        (!opts.spanning || h.is_spanning()) && (!opts.connected || h.is_connected())
    };
    if keep(&empty) && accept(&empty) {
        out.push(empty);
    }
    let max_edges = opts.max_edges.unwrap_or(triples.len());
    for _level in 0..max_edges {
        let mut next = Vec::new();
        for rep in &frontier {
            for t in &triples {
                if rep.has_edge(t) {
                    continue;
                }
                let ext = rep.with_edge(*t).unwrap();
                if !keep(&ext) {
                    continue;
                }
                let (form, perm) = canonical_labeling(&ext)?;
                if seen.insert(form) {
                    let canon = ext.relabel(&perm);
                    if accept(&canon) {
                        out.push(canon.clone());
                    }
                    next.push(canon);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::hypergraph::SparsityParams;

    #[test]
    fn relabelings_share_a_canonical_form() {
        let a = Hypergraph::from_raw(4, &[[0, 1, 2]]).unwrap();
        let b = Hypergraph::from_raw(4, &[[1, 2, 3]]).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn different_intersection_profiles_differ() {
        let a = Hypergraph::from_raw(5, &[[0, 1, 2], [0, 1, 3]]).unwrap();
        let b = Hypergraph::from_raw(5, &[[0, 1, 2], [0, 3, 4]]).unwrap();
        assert_ne!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn fano_differs_from_any_sts9_restriction() {
        let fano = generators::fano();
        let sts9 = generators::steiner_triple_system(9).unwrap();
        let fano_form = canonical_form(&fano).unwrap();
        crate::hypergraph::for_each_subset(9, 7, |subset| {
            let (sub, _) = sts9.induced(subset);
            // five lines survive deleting two points of the affine plane
            assert_eq!(sub.edge_count(), 5);
            assert_ne!(canonical_form(&sub).unwrap(), fano_form);
            false
        });
    }

    #[test]
    fn size_cap_is_enforced() {
        let h = Hypergraph::empty(13);
        assert!(canonical_form(&h).is_err());
    }

    #[test]
    fn isomorphism_maps_edges_onto_edges() {
        let g = Hypergraph::from_raw(5, &[[0, 1, 2], [2, 3, 4]]).unwrap();
        let h = Hypergraph::from_raw(5, &[[4, 3, 2], [2, 1, 0]]).unwrap();
        let map = isomorphism(&g, &h).unwrap().expect("isomorphic");
        assert_eq!(&g.relabel(&map), &h);
        assert!(!all_isomorphisms(&g, &h).is_empty());
    }

    #[test]
    fn enumerate_small_classes() {
        // on 4 vertices there is exactly one class per edge count 0..=4
        let classes = enumerate_classes(4, EnumerateOptions::default(), |_| true).unwrap();
        assert_eq!(classes.len(), 5);

        // (6,2)-sparse classes on 6 vertices: 0, 1 or 2 edges; the 2-edge
        // classes split by intersection size 0, 1, 2
        let sparse = enumerate_classes(6, EnumerateOptions::default(), |h| {
            h.is_kl_sparse(SparsityParams::new(6, 2))
        })
        .unwrap();
        assert_eq!(sparse.len(), 5);
    }

    #[test]
    fn enumeration_is_deterministic() {
        let opts = EnumerateOptions { spanning: true, connected: true, max_edges: None };
        let a = enumerate_classes(6, opts, |h| h.is_f0_sparse()).unwrap();
        let b = enumerate_classes(6, opts, |h| h.is_f0_sparse()).unwrap();
        assert_eq!(a, b);
    }
}
