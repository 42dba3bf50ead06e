//! Seeded corpora shared by the integration suites.
#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use pspan::group::FiniteGroup;
use pspan::groupoid::ParityGroupoid;
use pspan::random::{connected_sum, ComponentSpec, Generator};
use pspan::span::PSpan;
use pspan::Sign;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

/// A composable pair `S → J → T`, feet with up to 4 components and vertex
/// groups from the whole catalog, parities random.
pub fn composable_pair(seed: u64) -> (PSpan, PSpan) {
    let mut gen = Generator::new(seed);
    let foot = |gen: &mut Generator, prefix: &str| {
        let comps = gen.rng_range(1, 4);
        Arc::new(gen.parity_groupoid(prefix, comps, 2, 6))
    };
    let s = foot(&mut gen, "s");
    let j = foot(&mut gen, "j");
    let t = foot(&mut gen, "t");
    let a = gen.span(s, j.clone(), 3, 2, 6);
    let b = gen.span(j, t, 3, 2, 6);
    (a, b)
}

/// A foot with `n` orientable components (vertex group trivial or an even
/// `C2`), optionally plus one component with an odd `C2`.
pub fn det_foot(gen: &mut Generator, n: usize, max_objects: usize, odd_extra: bool) -> Arc<ParityGroupoid> {
    let mut specs = Vec::new();
    for _ in 0..n {
        let group = if gen.rng_range(0, 1) == 1 { FiniteGroup::cyclic(2) } else { FiniteGroup::trivial() };
        let parity = vec![Sign::Plus; group.order()];
        specs.push(ComponentSpec { group, parity, objects: gen.rng_range(1, max_objects) });
    }
    if odd_extra {
        specs.push(ComponentSpec { group: FiniteGroup::cyclic(2), parity: vec![Sign::Plus, Sign::Minus], objects: 1 });
    }
    let total: usize = specs.iter().map(|s| s.objects).sum();
    let taus: Vec<Sign> = (0..total).map(|_| gen.sign()).collect();
    Arc::new(connected_sum("x", &specs, &taus).0)
}

/// Endo-spans with top degree 1, 2 or 3: signed digraphs, groupoid feet
/// with even `C2` automorphisms, and feet with an extra odd component.
pub fn det_corpus(count: u64) -> Vec<PSpan> {
    (0..count)
        .map(|seed| {
            let mut gen = Generator::new(1000 + seed);
            let n = 1 + (seed % 3) as usize;
            match (seed / 3) % 3 {
                0 => gen.digraph_span(n, 2 * n + 1),
                1 => {
                    let foot = det_foot(&mut gen, n, if n == 3 { 1 } else { 2 }, false);
                    gen.endo_span(foot, n + 1, 2, 2)
                }
                _ => {
                    let foot = det_foot(&mut gen, n, 1, n < 3);
                    gen.endo_span(foot, n + 1, if n == 3 { 1 } else { 2 }, 2)
                }
            }
        })
        .collect()
}

/// Extension used by the corpora.
pub trait RangeExt {
    fn rng_range(&mut self, lo: usize, hi: usize) -> usize;
}

impl RangeExt for Generator {
    fn rng_range(&mut self, lo: usize, hi: usize) -> usize {
        use rand::Rng;
        self.rng().gen_range(lo..=hi)
    }
}
