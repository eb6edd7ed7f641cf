//! The derived catalog of dense cores.
//!
//! A core is a connected hypergraph, every vertex in an edge, within the
//! ceil(k/2) subset budget, that fails the remainder conditions (some pair
//! of edges shares two vertices, or some six vertices carry three edges) and
//! cannot be fixed by carving out proper induced parts: every admissible
//! carving must take the whole vertex set. Cores are enumerated up to
//! isomorphism by exhaustive search and realized over the {1, 3/2, 2}
//! distance alphabet, so the catalog is derived, not transcribed.
//!
//! Entries are named by vertex count with a disambiguating index in
//! canonical order (H4, H5_1, H5_2, ...). The catalog is persisted as JSON
//! and rebuilt deterministically; a rebuild must reproduce the file byte for
//! byte.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::{canonical_form, enumerate_classes, isomorphism, CanonicalForm, EnumerateOptions};
use crate::hypergraph::{Hypergraph, HypergraphError, Triple};
use crate::metric::{format_rat, parse_rat, FiniteMetric};
use crate::realize::{component_options, remainder_safe};
use crate::search::{alphabet_search, standard_alphabet};

/// Vertex cap for catalog derivation.
pub const CATALOG_MAX_N: usize = 10;

#[derive(Error, Debug)]
pub enum CatalogError {
    #[error("catalog derivation supports at most {max} vertices, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error("hypergraph error: {0}")]
    Hypergraph(#[from] HypergraphError),
    #[error("search error: {0}")]
    Search(#[from] crate::search::SearchError),
    #[error("bad catalog file: {0}")]
    Format(String),
}

/// One dense core with its alphabet realization.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub core: Hypergraph,
    pub metric: FiniteMetric,
    pub canonical: CanonicalForm,
}

/// The derived core catalog up to a vertex count.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub max_n: usize,
    pub entries: Vec<CatalogEntry>,
    /// cores the alphabet search could not realize; expected empty, and any
    /// entry here is a discrepancy to report
    pub unrealizable: Vec<Hypergraph>,
    by_form: HashMap<CanonicalForm, usize>,
}

/// True when `g` (connected, spanning, within the f0 budget) is a core:
/// it fails the remainder conditions and every admissible carving removes
/// everything.
pub fn is_core(g: &Hypergraph) -> bool {
    if remainder_safe(g) {
        return false;
    }
    let all: Vec<usize> = (0..g.n()).collect();
    let options = component_options(g, &all);
    !options.is_empty()
        && options
            .iter()
            .all(|cores| cores.iter().any(|c| c.support.len() == g.n()))
}

/// Enumerates all cores with up to `max_n` vertices, up to isomorphism, and
/// realizes each over the {1, 3/2, 2} alphabet.
pub fn enumerate_f0_cores(max_n: usize) -> Result<Catalog, CatalogError> {
    if max_n > CATALOG_MAX_N {
        return Err(CatalogError::TooLarge { n: max_n, max: CATALOG_MAX_N });
    }
    let mut entries = Vec::new();
    let mut unrealizable = Vec::new();
    for n in 4..=max_n {
        let opts = EnumerateOptions { spanning: true, connected: true, max_edges: None };
        let classes = enumerate_classes(n, opts, |h| h.is_f0_sparse())?;
        let mut cores: Vec<Hypergraph> = classes.into_iter().filter(is_core).collect();
        cores.sort_by_key(|c| canonical_form(c).unwrap());
        let per_n = cores.len();
        for (i, core) in cores.into_iter().enumerate() {
            let name = if per_n == 1 {
                format!("H{n}")
            } else {
                format!("H{n}_{}", i + 1)
            };
            let canonical = canonical_form(&core)?;
            match alphabet_search(&core, &standard_alphabet())? {
                Some(metric) => {
                    debug_assert_eq!(metric.betweenness_hypergraph(), core);
                    entries.push(CatalogEntry { name, core, metric, canonical });
                }
                None => unrealizable.push(core),
            }
        }
    }
    let by_form = entries
        .iter()
        .enumerate()
        .map(|(i, e)| (e.canonical.clone(), i))
        .collect();
    Ok(Catalog { max_n, entries, unrealizable, by_form })
}

impl Catalog {
    pub fn entry_by_name(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Canonical-form lookup of a candidate core.
    pub fn match_core(&self, g: &Hypergraph) -> Option<&CatalogEntry> {
        if g.n() > crate::canon::CANONICAL_MAX_N {
            return None;
        }
        let form = canonical_form(g).ok()?;
        self.by_form.get(&form).map(|&i| &self.entries[i])
    }

    /// The matched entry's metric transported onto `g`'s labels through an
    /// explicit isomorphism.
    pub fn transported_metric(&self, g: &Hypergraph) -> Option<FiniteMetric> {
        let entry = self.match_core(g)?;
        let map = isomorphism(g, &entry.core).ok()??;
        let n = g.n();
        let mut d = Vec::with_capacity(n * (n - 1) / 2);
        for j in 1..n {
            for i in 0..j {
                d.push(entry.metric.dist(map[i], map[j]));
            }
        }
        let metric = FiniteMetric::from_upper(n, d).ok()?;
        debug_assert_eq!(&metric.betweenness_hypergraph(), g);
        Some(metric)
    }

    /// Vertex counts of the entries, ascending.
    pub fn vertex_counts(&self) -> Vec<usize> {
        let mut counts: Vec<usize> = self.entries.iter().map(|e| e.core.n()).collect();
        counts.sort_unstable();
        counts
    }

    pub fn shape_report(&self) -> ShapeReport {
        let expected = vec![4, 5, 5, 5, 6, 7, 7, 9];
        let observed = self.vertex_counts();
        let mut missing = expected.clone();
        for v in &observed {
            if let Some(pos) = missing.iter().position(|m| m == v) {
                missing.remove(pos);
            }
        }
        let mut unexpected = observed.clone();
        for v in &expected {
            if let Some(pos) = unexpected.iter().position(|m| m == v) {
                unexpected.remove(pos);
            }
        }
        let matches =
            missing.is_empty() && unexpected.is_empty() && self.unrealizable.is_empty();
        ShapeReport {
            expected,
            observed,
            missing,
            unexpected,
            unrealizable: self.unrealizable.iter().map(hypergraph_to_file).collect(),
            matches,
        }
    }

    pub fn to_json(&self) -> String {
        let file = CatalogFile {
            max_n: self.max_n,
            entries: self
                .entries
                .iter()
                .map(|e| EntryFile {
                    name: e.name.clone(),
                    n: e.core.n(),
                    edges: e.core.edges().map(|t| t.vertices()).collect(),
                    metric: e.metric.upper().iter().map(format_rat).collect(),
                    canonical_form: e.canonical.to_string(),
                })
                .collect(),
            unrealizable: self.unrealizable.iter().map(hypergraph_to_file).collect(),
        };
        let mut s = serde_json::to_string_pretty(&file).expect("catalog serializes");
        s.push('\n');
        s
    }

    pub fn from_json(input: &str) -> Result<Catalog, CatalogError> {
        let file: CatalogFile = serde_json::from_str(input)
            .map_err(|e| CatalogError::Format(e.to_string()))?;
        let mut entries = Vec::with_capacity(file.entries.len());
        for ef in file.entries {
            let core = Hypergraph::from_raw(ef.n, &ef.edges)?;
            let d = ef
                .metric
                .iter()
                .map(|s| parse_rat(s))
                .collect::<Result<Vec<_>, _>>()
                .map_err(CatalogError::Format)?;
            let metric = FiniteMetric::from_upper(ef.n, d)
                .map_err(|e| CatalogError::Format(e.to_string()))?;
            let canonical = canonical_form(&core)?;
            if canonical.as_str() != ef.canonical_form {
                return Err(CatalogError::Format(format!(
                    "entry {}: stored canonical form does not match the edges",
                    ef.name
                )));
            }
            if metric.betweenness_hypergraph() != core {
                return Err(CatalogError::Format(format!(
                    "entry {}: stored metric does not realize the stored core",
                    ef.name
                )));
            }
            entries.push(CatalogEntry { name: ef.name, core, metric, canonical });
        }
        let mut unrealizable = Vec::new();
        for hf in file.unrealizable {
            unrealizable.push(Hypergraph::from_raw(hf.n, &hf.edges)?);
        }
        let by_form = entries
            .iter()
            .enumerate()
            .map(|(i, e)| (e.canonical.clone(), i))
            .collect();
        Ok(Catalog { max_n: file.max_n, entries, unrealizable, by_form })
    }
}

fn hypergraph_to_file(h: &Hypergraph) -> HypergraphFile {
    HypergraphFile { n: h.n(), edges: h.edges().map(Triple::vertices).collect() }
}

#[derive(Serialize, Deserialize)]
struct CatalogFile {
    max_n: usize,
    entries: Vec<EntryFile>,
    unrealizable: Vec<HypergraphFile>,
}

#[derive(Serialize, Deserialize)]
struct EntryFile {
    name: String,
    n: usize,
    edges: Vec<[usize; 3]>,
    metric: Vec<String>,
    canonical_form: String,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct HypergraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 3]>,
}

/// Expected-shape comparison for the derived catalog.
#[derive(Serialize, Clone, Debug)]
pub struct ShapeReport {
    pub expected: Vec<usize>,
    pub observed: Vec<usize>,
    pub missing: Vec<usize>,
    pub unexpected: Vec<usize>,
    pub unrealizable: Vec<HypergraphFile>,
    pub matches: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{rat, rat_int};

    #[test]
    fn the_four_vertex_core_is_the_sharing_pair() {
        let cat = enumerate_f0_cores(4).unwrap();
        assert_eq!(cat.entries.len(), 1);
        let e = &cat.entries[0];
        assert_eq!(e.name, "H4");
        assert_eq!(e.core.n(), 4);
        assert_eq!(e.core.edge_count(), 2);
        assert!(!e.core.pairwise_intersections_small());
        assert!(cat.unrealizable.is_empty());
    }

    #[test]
    fn entry_metrics_extract_to_their_cores() {
        let cat = enumerate_f0_cores(6).unwrap();
        assert!(!cat.entries.is_empty());
        for e in &cat.entries {
            assert_eq!(e.metric.betweenness_hypergraph(), e.core);
            for v in e.metric.upper() {
                assert!(
                    *v == rat_int(1) || *v == rat(3, 2) || *v == rat_int(2),
                    "alphabet violation in {}",
                    e.name
                );
            }
        }
    }

    #[test]
    fn match_core_examples() {
        let cat = enumerate_f0_cores(5).unwrap();
        let pair = Hypergraph::from_raw(4, &[[1, 2, 3], [0, 2, 3]]).unwrap();
        let hit = cat.match_core(&pair).expect("isomorphic to the 4-vertex core");
        assert_eq!(hit.name, "H4");
        let m = cat.transported_metric(&pair).unwrap();
        assert_eq!(m.betweenness_hypergraph(), pair);

        let single = Hypergraph::from_raw(3, &[[0, 1, 2]]).unwrap();
        assert!(cat.match_core(&single).is_none());
        assert!(cat.match_core(&crate::generators::fano()).is_none());
    }

    #[test]
    fn json_roundtrip_is_identical() {
        let cat = enumerate_f0_cores(5).unwrap();
        let json = cat.to_json();
        let back = Catalog::from_json(&json).unwrap();
        assert_eq!(back.to_json(), json);
        assert_eq!(back.entries.len(), cat.entries.len());
    }

    #[test]
    fn cap_is_enforced() {
        assert!(enumerate_f0_cores(11).is_err());
    }
}
