//! The standard corpus of named instances.

use std::collections::BTreeMap;

use classbound_core::bounds::{BoundFn, BoundParams, NoncoprimeBound};
use classbound_core::gf::Mixing;
use classbound_core::sampling::rng;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::spec::{l_subnormal_positions, Degree, FrobeniusParams, InstanceSpec, Lemd4Part, WreathParams};

/// Seed for the random choices made while assembling the corpus.
pub const CORPUS_SEED: u64 = 2024;
/// Seeds of the random kernels `N ≤ L×L`.
pub const KERNEL_SEEDS_P2: std::ops::RangeInclusive<u64> = 1..=10;
pub const KERNEL_SEEDS_P3: std::ops::RangeInclusive<u64> = 1..=3;
/// Seeds of the mixed induced groups on `GF(5)⁴`.
pub const INDUCED_SEEDS: std::ops::RangeInclusive<u64> = 1..=6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// A value stated in the literature.
    Stated,
    /// A value computed independently and frozen.
    Computed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub value: i64,
    pub source: Source,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusItem {
    pub name: String,
    pub spec: InstanceSpec,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub expected: BTreeMap<String, Expected>,
}

impl CorpusItem {
    pub fn new(name: impl Into<String>, spec: InstanceSpec) -> Self {
        Self { name: name.into(), spec, expected: BTreeMap::new() }
    }

    pub fn expect(mut self, key: &str, value: i64, source: Source) -> Self {
        self.expected.insert(key.to_string(), Expected { value, source });
        self
    }
}

fn deg(n: usize) -> Degree {
    Degree { n }
}

fn wreath_c2(base: InstanceSpec) -> InstanceSpec {
    InstanceSpec::Wreath { params: WreathParams { base: Box::new(base), top: Box::new(InstanceSpec::Cyclic { params: deg(2) }) } }
}

fn matrix(dim: usize, generators: &[&[u32]]) -> InstanceSpec {
    InstanceSpec::MatrixGfp { p: 5, dim, generators: generators.iter().map(|g| g.to_vec()).collect(), module: None, blocks: None, mixing_seed: None }
}

fn frobenius_fixed(q: u32, p: u32) -> i64 {
    if q == 2 {
        p as i64 + 1
    } else {
        (1 + (p - 1) / q + q - 1) as i64
    }
}

/// The standard corpus, in a fixed order with unique names.
pub fn corpus_standard() -> Vec<CorpusItem> {
    use InstanceSpec::*;
    let mut items = Vec::new();
    for n in 2..=7 {
        items.push(CorpusItem::new(format!("S{n}"), Symmetric { params: deg(n) }));
    }
    for n in 3..=7 {
        items.push(CorpusItem::new(format!("A{n}"), Alternating { params: deg(n) }));
    }
    for n in [4, 6, 8, 12] {
        items.push(CorpusItem::new(format!("C{n}"), Cyclic { params: deg(n) }));
    }
    for n in [4, 5, 6] {
        items.push(CorpusItem::new(format!("D{}", 2 * n), Dihedral { params: deg(n) }));
    }
    items.push(CorpusItem::new("Q8", Quaternion));
    let pairs = [(2, 3), (2, 5), (2, 7), (3, 7), (3, 13)];
    for (q, p) in pairs {
        items.push(CorpusItem::new(format!("frobenius-q{q}p{p}"), Frobenius { params: FrobeniusParams { q, p } }));
    }
    items.push(
        CorpusItem::new("ex0.3a", wreath_c2(Symmetric { params: deg(3) }))
            .expect("k(N)", 6, Source::Stated)
            .expect("fixed", 4, Source::Stated)
            .expect("lem2-bound", 6, Source::Stated),
    );
    for (q, p) in pairs {
        let source = if (q, p) == (3, 7) { Source::Stated } else { Source::Computed };
        items.push(
            CorpusItem::new(format!("frobenius-wr-q{q}p{p}"), wreath_c2(Frobenius { params: FrobeniusParams { q, p } })).expect(
                "fixed",
                frobenius_fixed(q, p),
                source,
            ),
        );
    }
    items.push(CorpusItem::new("L-gl25", LGl25).expect("order", 96, Source::Stated).expect("dual-orbits", 2, Source::Stated));
    items.push(CorpusItem::new("L-lattice", LLattice));
    items.push(CorpusItem::new("C2-fpf", matrix(2, &[&[4, 0, 0, 4]])).expect("k(NV)", 14, Source::Stated));
    items.push(CorpusItem::new("C4-fpf", matrix(2, &[&[2, 0, 0, 2]])).expect("k(NV)", 10, Source::Stated));
    items.push(CorpusItem::new("Q8-fpf", matrix(2, &[&[0, 4, 1, 0], &[0, 2, 2, 0]])).expect("k(NV)", 8, Source::Stated));
    items.push(CorpusItem::new("C4-diag21", matrix(2, &[&[2, 0, 0, 1]])).expect("k(NV)", 25, Source::Computed));
    items.push(CorpusItem::new("unipotent-gf5", matrix(2, &[&[1, 1, 0, 1]])));
    items.push(CorpusItem::new("C2xC2-gf5^3", matrix(3, &[&[4, 0, 0, 0, 1, 0, 0, 0, 1], &[1, 0, 0, 0, 4, 0, 0, 0, 4]])));
    for p in [2, 3] {
        items.push(CorpusItem::new(format!("L-block-p{p}"), LBlock { p, kernel_seed: None }));
    }
    for s in KERNEL_SEEDS_P2 {
        items.push(CorpusItem::new(format!("L-block-p2-seed{s}"), LBlock { p: 2, kernel_seed: Some(s) }));
    }
    for s in KERNEL_SEEDS_P3 {
        items.push(CorpusItem::new(format!("L-block-p3-seed{s}"), LBlock { p: 3, kernel_seed: Some(s) }));
    }
    items.push(CorpusItem::new("L-wr-C2", Induced { h1: None, mixing: Mixing::Full }));
    let subnormal = l_subnormal_positions().expect("L and its subgroup lattice are small");
    for s in INDUCED_SEEDS {
        let h1 = subnormal[rng(CORPUS_SEED ^ s).gen_range(0..subnormal.len())];
        items.push(CorpusItem::new(format!("induced-H{h1}-seed{s}"), Induced { h1: Some(h1), mixing: Mixing::Seeded(s) }));
    }
    items.push(CorpusItem::new("theorem-c-excluded", TheoremCExcluded));
    items.push(CorpusItem::new("lemd4-logW47-n2", Lemd4 { log_w: 47, n: 2, parts: Lemd4Part::all() }).expect("n2-holds", 1, Source::Stated));
    items.push(CorpusItem::new("lemd4-logW19-n2", Lemd4 { log_w: 19, n: 2, parts: vec![Lemd4Part::PartB] }).expect("part-b-holds", 1, Source::Stated));
    items.push(CorpusItem::new("lemd4-logW18-n2", Lemd4 { log_w: 18, n: 2, parts: Vec::new() }).expect("part-b-holds", 0, Source::Computed));
    items.push(CorpusItem::new("corf3-constant", Corf3));
    let l_params = BoundParams { n: 2, v1: 25.0, group_order: Some(96.0), ..Default::default() };
    items.push(CorpusItem::new("noncoprime-d1-L", Noncoprime { bound: NoncoprimeBound::TheoremD1, params: l_params.clone() }));
    items.push(CorpusItem::new(
        "noncoprime-f2-L-wr-C2",
        Noncoprime {
            bound: NoncoprimeBound::TheoremF2,
            params: BoundParams { n1: Some(96.0), quotient_order: Some(2.0), t0: Some(1.0), bound_fn: Some(BoundFn::Linear { c: 1.0 }), ..l_params.clone() },
        },
    ));
    items.push(CorpusItem::new(
        "noncoprime-corf3-n5",
        Noncoprime { bound: NoncoprimeBound::CorF3, params: BoundParams { n: 5, n1: Some(96.0), c: Some(1.0), t0: Some(1.0), ..l_params.clone() } },
    ));
    items.push(CorpusItem::new(
        "noncoprime-74-L",
        Noncoprime { bound: NoncoprimeBound::Theorem74, params: BoundParams { n1: Some(1.0), c1: Some(0.0), c2: Some(1.0), ..l_params } },
    ));
    items
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_stable() {
        let a = corpus_standard();
        let mut names: Vec<&str> = a.iter().map(|i| i.name.as_str()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), a.len());
        assert_eq!(a, corpus_standard());
    }

    #[test]
    fn documented_items() {
        let c = corpus_standard();
        let get = |n: &str| c.iter().find(|i| i.name == n).unwrap();
        assert_eq!(get("ex0.3a").expected["k(N)"].value, 6);
        assert_eq!(get("ex0.3a").expected["fixed"].value, 4);
        assert_eq!(get("ex0.3a").expected["lem2-bound"].value, 6);
        assert_eq!(get("frobenius-wr-q3p7").expected["fixed"].value, 5);
        assert_eq!(get("L-gl25").expected["order"].value, 96);
        assert_eq!(get("L-gl25").expected["dual-orbits"].value, 2);
        assert_eq!(c.iter().filter(|i| i.name.starts_with("induced-")).count(), 6);
    }
}
