//! Fixed workloads for the kernel benchmarks.

use pcert_core::generate::{base_context, Generator, Sample};
use pcert_core::translate::Translator;
use pcert_core::{Context, Fuel, Term};

/// `n` generated samples at the given depth, the same on every run.
pub fn samples(n: usize, depth: u32) -> Vec<Sample> {
    (0..n as u64).map(|i| Generator::new(i).sample(depth)).collect()
}

/// Encodings of `samples(n, depth)` with the encoded base context.
pub fn encoded(n: usize, depth: u32) -> (Context, Vec<Term>) {
    let ctx = base_context();
    let mut fuel = Fuel::default();
    let mut tr = Translator::new(&mut fuel);
    let lf_ctx = tr.ctx(&ctx).expect("base context translates");
    let terms = samples(n, depth)
        .iter()
        .map(|s| tr.term(&ctx, &s.term).expect("samples translate"))
        .collect();
    (lf_ctx, terms)
}
