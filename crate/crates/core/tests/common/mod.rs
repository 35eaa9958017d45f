#![allow(dead_code)]

use std::sync::OnceLock;

use pcert_core::generate::{base_context, Generator, Sample};
use pcert_core::translate::Translator;
use pcert_core::{Context, Fuel, Term};

pub const DEPTH: u32 = 4;

pub fn ctx() -> &'static Context {
    static CTX: OnceLock<Context> = OnceLock::new();
    CTX.get_or_init(base_context)
}

pub fn lf_ctx() -> &'static Context {
    static CTX: OnceLock<Context> = OnceLock::new();
    CTX.get_or_init(|| Translator::new(&mut Fuel::default()).ctx(ctx()).unwrap())
}

pub fn sample(seed: u64) -> Sample {
    Generator::new(seed).sample(DEPTH)
}

/// `⟦M⟧` and `⟦T⟧_type` for a generated sample.
pub fn encoded(s: &Sample) -> (Term, Term) {
    let mut f = Fuel::default();
    let mut tr = Translator::new(&mut f);
    let m = tr.term(ctx(), &s.term).unwrap();
    let t = tr.ty(ctx(), &s.ty).unwrap();
    (m, t)
}
