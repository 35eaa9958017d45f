//! PVS-Cert: higher-order logic with predicate subtypes and proof
//! irrelevance.

use std::sync::OnceLock;

use crate::context::{Context, Signature, SymbolBuilder};
use crate::kernel::{Comparison, TypeResult, TypeSystem};
use crate::rewrite::{Fuel, RewriteRule, RuleSet};
use crate::term::{Sort, Term, TermKind};

/// Head of the proof-erased pair produced by [`pi_erase`]. The `#` keeps it
/// out of reach of the surface syntax.
pub const ERASED_PAIR: &str = "pair#erased";

fn prop() -> Term {
    Term::sort(Sort::Prop)
}

fn ty() -> Term {
    Term::sort(Sort::Type)
}

fn v(x: &str) -> Term {
    Term::var(x)
}

fn psub(t: Term, p: Term) -> Term {
    Term::sym("psub", vec![t, p])
}

/// The four predicate-subtyping symbols.
pub fn signature() -> Signature {
    let tp = || {
        SymbolBuilder::new()
            .param("T", ty())
            .param("p", Term::arrow(v("T"), prop()))
    };
    let mut sig = Signature::new();
    sig.declare("psub", tp().result(ty(), Sort::Kind));
    sig.declare(
        "pair",
        tp().param("m", v("T"))
            .param("h", Term::app(v("p"), v("m")))
            .result(psub(v("T"), v("p")), Sort::Type),
    );
    sig.declare(
        "fst",
        tp().param("m", psub(v("T"), v("p")))
            .result(v("T"), Sort::Type),
    );
    sig.declare(
        "snd",
        tp().param("m", psub(v("T"), v("p"))).result(
            Term::app(v("p"), Term::sym("fst", vec![v("T"), v("p"), v("m")])),
            Sort::Prop,
        ),
    );
    sig
}

/// β together with `fst(t₀, p₀, pair(t₁, p₁, m, h)) ⟶ m`.
pub fn rules() -> RuleSet {
    let lhs = Term::sym(
        "fst",
        vec![
            v("t0"),
            v("p0"),
            Term::sym("pair", vec![v("t1"), v("p1"), v("m"), v("h")]),
        ],
    );
    RuleSet::new(vec![RewriteRule::new("fst-pair", lhs, v("m"))], true)
        .expect("projection rule is well formed")
}

pub fn system() -> &'static TypeSystem {
    static SYSTEM: OnceLock<TypeSystem> = OnceLock::new();
    SYSTEM.get_or_init(|| TypeSystem {
        name: "pcert",
        sorts: vec![Sort::Prop, Sort::Type, Sort::Kind],
        axioms: vec![(Sort::Prop, Sort::Type), (Sort::Type, Sort::Kind)],
        products: vec![
            (Sort::Prop, Sort::Prop, Sort::Prop),
            (Sort::Type, Sort::Type, Sort::Type),
            (Sort::Type, Sort::Prop, Sort::Prop),
        ],
        signature: signature(),
        rules: rules(),
        comparison: Comparison::ModuloProofs,
    })
}

/// Replaces every `pair(t, p, m, h)` by a proof-free marker `(t, p, m)`.
pub fn pi_erase(t: &Term) -> Term {
    match t.kind() {
        TermKind::Sort(_) | TermKind::Bound(_) | TermKind::Free(_) => t.clone(),
        TermKind::App(f, a) => Term::app(pi_erase(f), pi_erase(a)),
        TermKind::Abs(x, a, b) => Term::abs_raw(x.clone(), pi_erase(a), pi_erase(b)),
        TermKind::Prod(x, a, b) => Term::prod_raw(x.clone(), pi_erase(a), pi_erase(b)),
        TermKind::Sym(f, args) if &**f == "pair" && args.len() == 4 => {
            Term::sym(ERASED_PAIR, args[..3].iter().map(pi_erase).collect())
        }
        TermKind::Sym(f, args) => Term::sym_named(f.clone(), args.iter().map(pi_erase).collect()),
    }
}

pub fn check_wf_pcert(ctx: &Context, fuel: &mut Fuel) -> TypeResult<()> {
    system().check_wf(ctx, fuel)
}

pub fn infer_pcert(ctx: &Context, m: &Term, fuel: &mut Fuel) -> TypeResult<Term> {
    system().infer(ctx, m, fuel)
}

pub fn conv_pcert(ctx: &Context, a: &Term, b: &Term, fuel: &mut Fuel) -> TypeResult<bool> {
    system().conv(ctx, a, b, fuel)
}

/// Sort of a PVS-Cert type, `Kind` included.
pub fn sort_of(ctx: &Context, t: &Term, fuel: &mut Fuel) -> TypeResult<Sort> {
    system().infer_sort(ctx, t, fuel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::TypeError;
    use crate::term::name;

    fn subtype_ctx() -> Context {
        Context::from_decls([
            ("T", ty()),
            ("p", Term::arrow(v("T"), prop())),
            ("m", v("T")),
            ("h", Term::app(v("p"), v("m"))),
        ])
    }

    fn pair() -> Term {
        Term::sym("pair", vec![v("T"), v("p"), v("m"), v("h")])
    }

    #[test]
    fn signature_is_well_typed() {
        system().validate_signature().unwrap();
    }

    #[test]
    fn prop_has_type_type() {
        let mut f = Fuel::default();
        assert_eq!(infer_pcert(&Context::new(), &prop(), &mut f).unwrap(), ty());
    }

    #[test]
    fn kind_has_no_type() {
        let mut f = Fuel::default();
        let e = infer_pcert(&Context::new(), &Term::sort(Sort::Kind), &mut f).unwrap_err();
        assert_eq!(e, TypeError::SortHasNoType(Sort::Kind));
    }

    #[test]
    fn pair_has_subtype() {
        let mut f = Fuel::default();
        let t = infer_pcert(&subtype_ctx(), &pair(), &mut f).unwrap();
        assert_eq!(t, psub(v("T"), v("p")));
    }

    #[test]
    fn identity_on_prop() {
        let mut f = Fuel::default();
        let id = Term::abs("x", prop(), v("x"));
        let t = infer_pcert(&Context::new(), &id, &mut f).unwrap();
        assert_eq!(t, Term::arrow(prop(), prop()));
    }

    #[test]
    fn snd_type_is_unreduced() {
        let mut f = Fuel::default();
        let snd = Term::sym("snd", vec![v("T"), v("p"), pair()]);
        let t = infer_pcert(&subtype_ctx(), &snd, &mut f).unwrap();
        let expected = Term::app(v("p"), Term::sym("fst", vec![v("T"), v("p"), pair()]));
        assert_eq!(t, expected);
    }

    #[test]
    fn wf_examples() {
        let mut f = Fuel::default();
        check_wf_pcert(&Context::new(), &mut f).unwrap();
        let ctx = Context::from_decls([("T", ty()), ("p", Term::arrow(v("T"), prop()))]);
        check_wf_pcert(&ctx, &mut f).unwrap();
        let bad = Context::from_decls([("x", Term::abs("y", prop(), v("y")))]);
        assert!(matches!(
            check_wf_pcert(&bad, &mut f),
            Err(TypeError::NotASort { .. })
        ));
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let mut f = Fuel::default();
        let ctx = Context::from_decls([("A", prop()), ("A", prop())]);
        assert_eq!(
            check_wf_pcert(&ctx, &mut f),
            Err(TypeError::DuplicateName(name("A")))
        );
    }

    #[test]
    fn projection_computes() {
        let mut f = Fuel::default();
        let fst = Term::sym("fst", vec![v("T"), v("p"), pair()]);
        assert!(conv_pcert(&subtype_ctx(), &fst, &v("m"), &mut f).unwrap());
    }

    #[test]
    fn proofs_are_irrelevant() {
        let ctx = subtype_ctx().push(name("h'"), Term::app(v("p"), v("m")));
        let other = Term::sym("pair", vec![v("T"), v("p"), v("m"), v("h'")]);
        let mut f = Fuel::default();
        assert!(conv_pcert(&ctx, &pair(), &other, &mut f).unwrap());
        assert_eq!(pi_erase(&pair()), pi_erase(&other));
        assert_ne!(pair(), other);
    }

    #[test]
    fn erase_under_binder() {
        let t = Term::abs(
            "x",
            v("T"),
            Term::sym("pair", vec![v("T"), v("p"), v("x"), v("h")]),
        );
        let expected = Term::abs("x", v("T"), Term::sym(ERASED_PAIR, vec![v("T"), v("p"), v("x")]));
        assert_eq!(pi_erase(&t), expected);
        assert_eq!(pi_erase(&v("x")), v("x"));
    }

    #[test]
    fn illegal_product_is_reported() {
        // Πx:Prop. Type would need (Type, Kind, _)
        let mut f = Fuel::default();
        let t = Term::prod("x", prop(), ty());
        assert_eq!(
            infer_pcert(&Context::new(), &t, &mut f),
            Err(TypeError::IllegalProduct {
                dom: Sort::Type,
                cod: Sort::Kind
            })
        );
    }
}
