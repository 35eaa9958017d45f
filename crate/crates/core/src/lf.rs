//! The λΠ-calculus modulo the encoding of PVS-Cert.
//!
//! Encoded sorts `Kind`, `Type` and `Prop` are nullary symbols, distinct
//! from the framework sorts `TYPE` and `KIND`.

use std::sync::OnceLock;

use crate::context::{Context, Signature, SymbolBuilder, Visibility};
use crate::kernel::{Comparison, TypeError, TypeResult, TypeSystem};
use crate::rewrite::{Fuel, RewriteRule, RuleSet};
use crate::term::{PathStep, Sort, Term, TermKind, TermPath};

pub const PAIR_ERASED: &str = "pair'";

fn v(x: &str) -> Term {
    Term::var(x)
}

fn c(f: &str) -> Term {
    Term::sym(f, vec![])
}

pub fn enc_kind() -> Term {
    c("Kind")
}

pub fn enc_type() -> Term {
    c("Type")
}

pub fn enc_prop() -> Term {
    c("Prop")
}

pub fn el(t: Term) -> Term {
    Term::sym("El", vec![t])
}

pub fn prf(p: Term) -> Term {
    Term::sym("Prf", vec![p])
}

fn lf_type() -> Term {
    Term::sort(Sort::LfType)
}

/// Σ^λHOL, Σ^psub and the protected `pair'`.
pub fn signature() -> Signature {
    let mut sig = Signature::new();
    let nullary = |res: Term, s: Sort| SymbolBuilder::new().result(res, s);
    sig.declare("Kind", nullary(lf_type(), Sort::LfKind));
    sig.declare("Type", nullary(lf_type(), Sort::LfKind));
    sig.declare("Prop", nullary(lf_type(), Sort::LfKind));
    sig.declare("type", nullary(enc_kind(), Sort::LfType));
    sig.declare("prop", nullary(enc_type(), Sort::LfType));
    sig.declare(
        "El",
        SymbolBuilder::new()
            .param("t", enc_type())
            .result(lf_type(), Sort::LfKind),
    );
    sig.declare(
        "Prf",
        SymbolBuilder::new()
            .param("p", enc_prop())
            .result(lf_type(), Sort::LfKind),
    );
    let tp = || {
        SymbolBuilder::new()
            .param("t", enc_type())
            .param("p", Term::arrow(el(v("t")), enc_prop()))
    };
    sig.declare("fa", tp().result(enc_prop(), Sort::LfType));
    sig.declare(
        "impd",
        SymbolBuilder::new()
            .param("p", enc_prop())
            .param("q", Term::arrow(prf(v("p")), enc_prop()))
            .result(enc_prop(), Sort::LfType),
    );
    sig.declare(
        "arrd",
        SymbolBuilder::new()
            .param("t", enc_type())
            .param("u", Term::arrow(el(v("t")), enc_type()))
            .result(enc_type(), Sort::LfType),
    );
    let psub_tp = || el(Term::sym("psub", vec![v("t"), v("p")]));
    sig.declare("psub", tp().result(enc_type(), Sort::LfType));
    sig.declare(
        "pair",
        tp().param("m", el(v("t")))
            .param("h", prf(Term::app(v("p"), v("m"))))
            .result(psub_tp(), Sort::LfType),
    );
    sig.declare(
        "fst",
        tp().param("m", psub_tp()).result(el(v("t")), Sort::LfType),
    );
    sig.declare(
        "snd",
        tp().param("m", psub_tp()).result(
            prf(Term::app(v("p"), Term::sym("fst", vec![v("t"), v("p"), v("m")]))),
            Sort::LfType,
        ),
    );
    sig.declare(
        PAIR_ERASED,
        tp().param("m", el(v("t"))).result(psub_tp(), Sort::LfType),
    );
    sig.protect(PAIR_ERASED);
    sig
}

/// The rewrite system deciding conversion: β plus six symbol rules.
pub fn rules() -> RuleSet {
    let rules = vec![
        RewriteRule::new(
            "pair-proof",
            Term::sym("pair", vec![v("t"), v("p"), v("m"), v("h")]),
            Term::sym(PAIR_ERASED, vec![v("t"), v("p"), v("m")]),
        ),
        RewriteRule::new(
            "fst-pair",
            Term::sym(
                "fst",
                vec![
                    v("t0"),
                    v("p0"),
                    Term::sym(PAIR_ERASED, vec![v("t1"), v("p1"), v("m")]),
                ],
            ),
            v("m"),
        ),
        RewriteRule::new("El-prop", el(c("prop")), enc_prop()),
        RewriteRule::new(
            "Prf-fa",
            prf(Term::sym("fa", vec![v("t"), v("p")])),
            Term::prod("x", el(v("t")), prf(Term::app(v("p"), v("x")))),
        ),
        RewriteRule::new(
            "El-arrd",
            el(Term::sym("arrd", vec![v("t"), v("u")])),
            Term::prod("x", el(v("t")), el(Term::app(v("u"), v("x")))),
        ),
        RewriteRule::new(
            "Prf-impd",
            prf(Term::sym("impd", vec![v("p"), v("q")])),
            Term::prod("h", prf(v("p")), prf(Term::app(v("q"), v("h")))),
        ),
    ];
    RuleSet::new(rules, true).expect("encoding rules are well formed")
}

pub fn system() -> &'static TypeSystem {
    static SYSTEM: OnceLock<TypeSystem> = OnceLock::new();
    SYSTEM.get_or_init(|| TypeSystem {
        name: "lf",
        sorts: vec![Sort::LfType, Sort::LfKind],
        axioms: vec![(Sort::LfType, Sort::LfKind)],
        products: vec![
            (Sort::LfType, Sort::LfType, Sort::LfType),
            (Sort::LfType, Sort::LfKind, Sort::LfKind),
        ],
        signature: signature(),
        rules: rules(),
        comparison: Comparison::Syntactic,
    })
}

/// Rejects terms that mention a protected symbol, reporting the
/// leftmost-outermost occurrence.
pub fn assert_public(t: &Term, sig: &Signature) -> TypeResult<()> {
    fn go(t: &Term, sig: &Signature, path: &TermPath) -> TypeResult<()> {
        match t.kind() {
            TermKind::Sort(_) | TermKind::Bound(_) | TermKind::Free(_) => Ok(()),
            TermKind::App(f, a) => {
                go(f, sig, &path.child(PathStep::Fun))?;
                go(a, sig, &path.child(PathStep::Arg))
            }
            TermKind::Abs(_, a, b) => {
                go(a, sig, &path.child(PathStep::Annot))?;
                go(b, sig, &path.child(PathStep::Body))
            }
            TermKind::Prod(_, a, b) => {
                go(a, sig, &path.child(PathStep::Dom))?;
                go(b, sig, &path.child(PathStep::Cod))
            }
            TermKind::Sym(f, args) => {
                if sig.get(f).map(|s| s.visibility) == Some(Visibility::Protected) {
                    return Err(TypeError::ProtectedSymbol {
                        symbol: f.clone(),
                        path: path.clone(),
                    });
                }
                for (i, a) in args.iter().enumerate() {
                    go(a, sig, &path.child(PathStep::SymArg(i)))?;
                }
                Ok(())
            }
        }
    }
    go(t, sig, &TermPath::root())
}

pub fn check_wf_lf(ctx: &Context, fuel: &mut Fuel) -> TypeResult<()> {
    for e in ctx.entries() {
        assert_public(&e.ty, &system().signature)?;
        if let Some(val) = &e.value {
            assert_public(val, &system().signature)?;
        }
    }
    system().check_wf(ctx, fuel)
}

/// Type of user input `m`; protected symbols are rejected up front.
pub fn infer_lf(ctx: &Context, m: &Term, fuel: &mut Fuel) -> TypeResult<Term> {
    assert_public(m, &system().signature)?;
    system().infer(ctx, m, fuel)
}

/// Convertibility modulo the encoding rules, without unfolding definitions.
pub fn convertible(a: &Term, b: &Term, fuel: &mut Fuel) -> TypeResult<bool> {
    Ok(system().rules.convertible(a, b, fuel)?)
}

pub fn conv_lf(ctx: &Context, a: &Term, b: &Term, fuel: &mut Fuel) -> TypeResult<bool> {
    system().conv(ctx, a, b, fuel)
}
