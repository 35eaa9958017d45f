//! Random well-typed PVS-Cert terms over a fixed base context.
//!
//! Generation is type directed: a goal type is drawn first and a term is
//! built to inhabit it. Terms include β-redexes, projections of pairs and
//! proofs that only check up to conversion.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::context::Context;
use crate::rewrite::Fuel;
use crate::syntax::{parse_file, Decl, Development, Mode};
use crate::term::{name, Name, Sort, Term, TermKind};

/// Declarations every generated term lives in.
pub const BASE: &str = "#MODE pcert
symbol nat : Type;
symbol bool : Type;
symbol zero : nat;
symbol succ : nat -> nat;
symbol dbl : nat -> nat;
symbol tt : bool;
symbol f : nat -> bool;
symbol even : nat -> Prop;
symbol le : nat -> nat -> Prop;
symbol ev_zero : even zero;
symbol ev_dbl : !n: nat. even (dbl n);
symbol le_refl : !n: nat. le n n;
symbol q : Prop;
symbol r : Prop;
symbol hq : q;
symbol hqr : q -> r;
definition evens : Type := psub(nat, even);
";

pub fn base_development() -> Development {
    parse_file(BASE, "<base>").expect("base context parses")
}

pub fn base_context() -> Context {
    crate::session::check_development(&base_development(), Fuel::default())
        .expect("base context checks")
        .ctx
}

fn v(x: &str) -> Term {
    Term::var(x)
}

fn nat() -> Term {
    v("nat")
}

fn le_pred() -> Term {
    Term::abs("n", nat(), Term::apps(v("le"), [v("n"), v("n")]))
}

/// Types of data.
#[derive(Clone, Debug, PartialEq)]
pub enum Ty {
    Nat,
    Bool,
    Arrow(Box<Ty>, Box<Ty>),
    /// `psub(nat, even)`
    Evens,
    /// The definition `evens`, unfolding to `Evens`.
    EvensDef,
    /// `{n: nat | le n n}`
    Refl,
}

impl Ty {
    pub fn to_term(&self) -> Term {
        match self {
            Ty::Nat => nat(),
            Ty::Bool => v("bool"),
            Ty::Arrow(a, b) => Term::arrow(a.to_term(), b.to_term()),
            Ty::Evens => Term::sym("psub", vec![nat(), v("even")]),
            Ty::EvensDef => v("evens"),
            Ty::Refl => Term::sym("psub", vec![nat(), le_pred()]),
        }
    }
}

/// Propositions.
#[derive(Clone, Debug, PartialEq)]
pub enum Pr {
    Q,
    R,
    EvenZero,
    EvenDbl(Term),
    LeRefl(Term),
    Imp(Box<Pr>, Box<Pr>),
    AllEvenDbl,
    AllLe,
    /// `even (fst(nat, even, e))`
    EvenFst(Term),
}

impl Pr {
    pub fn to_term(&self) -> Term {
        match self {
            Pr::Q => v("q"),
            Pr::R => v("r"),
            Pr::EvenZero => Term::app(v("even"), v("zero")),
            Pr::EvenDbl(m) => Term::app(v("even"), Term::app(v("dbl"), m.clone())),
            Pr::LeRefl(m) => Term::apps(v("le"), [m.clone(), m.clone()]),
            Pr::Imp(a, b) => Term::arrow(a.to_term(), b.to_term()),
            Pr::AllEvenDbl => Term::prod(
                "n",
                nat(),
                Term::app(v("even"), Term::app(v("dbl"), v("n"))),
            ),
            Pr::AllLe => Term::prod("n", nat(), Term::apps(v("le"), [v("n"), v("n")])),
            Pr::EvenFst(e) => Term::app(
                v("even"),
                Term::sym("fst", vec![nat(), v("even"), e.clone()]),
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Goal {
    Data(Ty),
    Proof(Pr),
}

/// A generated term together with its type.
#[derive(Clone, Debug)]
pub struct Sample {
    pub term: Term,
    pub ty: Term,
}

/// A sample typed in the base context extended with `var : dom`, and a
/// closed inhabitant `arg` of `dom`.
#[derive(Clone, Debug)]
pub struct OpenSample {
    pub var: Name,
    pub dom: Term,
    pub body: Sample,
    pub arg: Term,
}

pub struct Generator {
    rng: ChaCha8Rng,
    scope: Vec<(Name, Goal)>,
    counter: usize,
}

impl Generator {
    pub fn new(seed: u64) -> Generator {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            scope: Vec::new(),
            counter: 0,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn fresh(&mut self, base: &str) -> Name {
        self.counter += 1;
        name(&format!("{base}{}", self.counter))
    }

    fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    /// `λx:A. body` where `body` may use `x`.
    fn bind(&mut self, base: &str, goal: Goal, dom: Term, body: impl FnOnce(&mut Self) -> Term) -> Term {
        let x = self.fresh(base);
        self.scope.push((x.clone(), goal));
        let b = body(self);
        self.scope.pop();
        Term::abs(&x, dom, b)
    }

    fn in_scope(&mut self, goal: &Goal) -> Option<Term> {
        let hits: Vec<Name> = self
            .scope
            .iter()
            .filter(|(_, g)| g == goal)
            .map(|(x, _)| x.clone())
            .collect();
        hits.choose(&mut self.rng).map(|x| Term::free(x.clone()))
    }

    pub fn ty(&mut self, depth: u32) -> Ty {
        let k = if depth == 0 { 5 } else { 6 };
        match self.rng.gen_range(0..k) {
            0 => Ty::Nat,
            1 => Ty::Bool,
            2 => Ty::Evens,
            3 => Ty::EvensDef,
            4 => Ty::Refl,
            _ => Ty::Arrow(Box::new(self.ty(depth - 1)), Box::new(self.ty(depth - 1))),
        }
    }

    pub fn pr(&mut self, depth: u32) -> Pr {
        let k = if depth == 0 { 5 } else { 9 };
        match self.rng.gen_range(0..k) {
            0 => Pr::Q,
            1 => Pr::R,
            2 => Pr::EvenZero,
            3 => Pr::AllEvenDbl,
            4 => Pr::AllLe,
            5 => Pr::EvenDbl(self.data(&Ty::Nat, depth - 1)),
            6 => Pr::LeRefl(self.data(&Ty::Nat, depth - 1)),
            7 => Pr::EvenFst(self.data(&Ty::Evens, depth - 1)),
            _ => Pr::Imp(Box::new(self.pr(depth - 1)), Box::new(self.pr(depth - 1))),
        }
    }

    /// Wraps `make` in a β-redex `(λx:A. _) a` with an unused or used `x`.
    fn redex(&mut self, depth: u32, make: impl FnOnce(&mut Self) -> Term) -> Term {
        let a = self.ty(0);
        let arg = self.data(&a, depth);
        let lam = self.bind("x", Goal::Data(a.clone()), a.to_term(), make);
        Term::app(lam, arg)
    }

    /// An inhabitant of `ty`.
    pub fn data(&mut self, ty: &Ty, depth: u32) -> Term {
        let goal = Goal::Data(ty.clone());
        if depth > 0 && self.coin(0.15) {
            return self.redex(depth - 1, |g| g.data(ty, depth - 1));
        }
        if self.coin(0.2) {
            if let Some(x) = self.in_scope(&goal) {
                return x;
            }
        }
        if depth > 0 && self.coin(0.15) {
            // application of a generated function
            let a = self.ty(0);
            let fun = self.data(&Ty::Arrow(Box::new(a.clone()), Box::new(ty.clone())), depth - 1);
            let arg = self.data(&a, depth - 1);
            return Term::app(fun, arg);
        }
        let d = depth.saturating_sub(1);
        match ty {
            Ty::Nat => match if depth == 0 { 0 } else { self.rng.gen_range(0..5) } {
                0 => v("zero"),
                1 => Term::app(v("succ"), self.data(&Ty::Nat, d)),
                2 => Term::app(v("dbl"), self.data(&Ty::Nat, d)),
                3 => Term::sym("fst", vec![nat(), v("even"), self.data(&Ty::Evens, d)]),
                _ => Term::sym("fst", vec![nat(), le_pred(), self.data(&Ty::Refl, d)]),
            },
            Ty::Bool => {
                if depth == 0 || self.coin(0.3) {
                    v("tt")
                } else {
                    Term::app(v("f"), self.data(&Ty::Nat, d))
                }
            }
            Ty::Arrow(a, b) => {
                if **a == Ty::Nat && **b == Ty::Nat && self.coin(0.3) {
                    v(if self.coin(0.5) { "succ" } else { "dbl" })
                } else {
                    let body_ty = (**b).clone();
                    self.bind("x", Goal::Data((**a).clone()), a.to_term(), |g| g.data(&body_ty, d))
                }
            }
            Ty::Evens | Ty::EvensDef => {
                if depth == 0 || self.coin(0.25) {
                    Term::sym("pair", vec![nat(), v("even"), v("zero"), v("ev_zero")])
                } else {
                    let m = self.data(&Ty::Nat, d);
                    let h = self.proof(&Pr::EvenDbl(m.clone()), d);
                    Term::sym(
                        "pair",
                        vec![nat(), v("even"), Term::app(v("dbl"), m), h],
                    )
                }
            }
            Ty::Refl => {
                let m = self.data(&Ty::Nat, d);
                let h = self.proof(&Pr::LeRefl(m.clone()), d);
                Term::sym("pair", vec![nat(), le_pred(), m, h])
            }
        }
    }

    /// A proof of `pr`.
    pub fn proof(&mut self, pr: &Pr, depth: u32) -> Term {
        let goal = Goal::Proof(pr.clone());
        if depth > 0 && self.coin(0.1) {
            return self.redex(depth - 1, |g| g.proof(pr, depth - 1));
        }
        if self.coin(0.3) {
            if let Some(h) = self.in_scope(&goal) {
                return h;
            }
        }
        let d = depth.saturating_sub(1);
        match pr {
            Pr::Q => v("hq"),
            Pr::R => Term::app(v("hqr"), self.proof(&Pr::Q, d)),
            Pr::EvenZero => v("ev_zero"),
            Pr::EvenDbl(m) => {
                if depth > 0 && self.coin(0.3) {
                    // a proof about a projection, equal to m only by computation
                    let h = Term::app(v("ev_dbl"), m.clone());
                    let p = Term::sym("pair", vec![nat(), v("even"), Term::app(v("dbl"), m.clone()), h]);
                    Term::sym("snd", vec![nat(), v("even"), p])
                } else {
                    Term::app(v("ev_dbl"), m.clone())
                }
            }
            Pr::LeRefl(m) => Term::app(v("le_refl"), m.clone()),
            Pr::Imp(a, b) => {
                let b = (**b).clone();
                self.bind("h", Goal::Proof((**a).clone()), a.to_term(), |g| g.proof(&b, d))
            }
            Pr::AllEvenDbl => {
                if self.coin(0.5) {
                    v("ev_dbl")
                } else {
                    self.bind("n", Goal::Data(Ty::Nat), nat(), |g| {
                        let n = g.scope.last().unwrap().0.clone();
                        Term::app(v("ev_dbl"), Term::free(n))
                    })
                }
            }
            Pr::AllLe => {
                if self.coin(0.5) {
                    v("le_refl")
                } else {
                    self.bind("n", Goal::Data(Ty::Nat), nat(), |g| {
                        let n = g.scope.last().unwrap().0.clone();
                        Term::app(v("le_refl"), Term::free(n))
                    })
                }
            }
            Pr::EvenFst(e) => Term::sym("snd", vec![nat(), v("even"), e.clone()]),
        }
    }

    /// A closed (over the base context) term with its type.
    pub fn sample(&mut self, depth: u32) -> Sample {
        match self.rng.gen_range(0..8) {
            0..=3 => {
                let ty = self.ty(depth.min(2));
                let term = self.data(&ty, depth);
                Sample { term, ty: ty.to_term() }
            }
            4 | 5 => {
                let pr = self.pr(depth.min(3));
                let term = self.proof(&pr, depth);
                Sample { term, ty: pr.to_term() }
            }
            6 => Sample {
                term: self.ty(depth.min(3)).to_term(),
                ty: Term::sort(Sort::Type),
            },
            _ => Sample {
                term: self.pr(depth.min(3)).to_term(),
                ty: Term::sort(Sort::Prop),
            },
        }
    }

    pub fn open_sample(&mut self, depth: u32) -> OpenSample {
        let a = self.ty(1);
        let arg = self.data(&a, depth);
        let var = self.fresh("v");
        self.scope.push((var.clone(), Goal::Data(a.clone())));
        let body = self.sample(depth);
        self.scope.pop();
        OpenSample {
            var,
            dom: a.to_term(),
            body,
            arg,
        }
    }

    /// A predicate `λx:A. P` with its domain.
    pub fn predicate(&mut self, depth: u32) -> (Ty, Term) {
        let a = self.ty(1);
        let p = self.bind("x", Goal::Data(a.clone()), a.to_term(), |g| g.pr(depth).to_term());
        (a, p)
    }
}

/// The base development extended with one definition per sample, named
/// `g0`, `g1`, ….
pub fn sample_development(samples: &[Sample]) -> Development {
    let mut dev = base_development();
    for (i, s) in samples.iter().enumerate() {
        dev.push(Decl::Definition {
            name: format!("g{i}"),
            ty: Some(s.ty.clone()),
            body: s.term.clone(),
        });
    }
    debug_assert_eq!(dev.mode, Mode::Pcert);
    dev
}

/// Kinds of single equational steps on PVS-Cert terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    Beta,
    Projection,
    ProofSwap,
}

fn candidates(t: &Term, out: &mut Vec<StepKind>) {
    match t.kind() {
        TermKind::Sort(_) | TermKind::Bound(_) | TermKind::Free(_) => {}
        TermKind::App(f, a) => {
            if matches!(f.kind(), TermKind::Abs(..)) {
                out.push(StepKind::Beta);
            }
            candidates(f, out);
            candidates(a, out);
        }
        TermKind::Abs(_, a, b) | TermKind::Prod(_, a, b) => {
            candidates(a, out);
            candidates(b, out);
        }
        TermKind::Sym(f, args) => {
            if &**f == "fst" && args[2].is_sym("pair") {
                out.push(StepKind::Projection);
            }
            if &**f == "pair" {
                out.push(StepKind::ProofSwap);
            }
            for a in args {
                candidates(a, out);
            }
        }
    }
}

/// Counts down to the chosen candidate; true exactly once.
fn here(n: &mut usize) -> bool {
    if *n == 0 {
        *n = usize::MAX;
        return true;
    }
    *n -= 1;
    false
}

/// Rewrites the `n`-th candidate in traversal order.
fn rewrite_nth(t: &Term, n: &mut usize) -> Term {
    if *n == usize::MAX {
        return t.clone();
    }
    match t.kind() {
        TermKind::Sort(_) | TermKind::Bound(_) | TermKind::Free(_) => t.clone(),
        TermKind::App(f, a) => {
            if let TermKind::Abs(_, _, body) = f.kind() {
                if here(n) {
                    return body.instantiate(a);
                }
            }
            let f2 = rewrite_nth(f, n);
            let a2 = rewrite_nth(a, n);
            Term::app(f2, a2)
        }
        TermKind::Abs(x, a, b) => {
            let a2 = rewrite_nth(a, n);
            Term::abs_raw(x.clone(), a2, rewrite_nth(b, n))
        }
        TermKind::Prod(x, a, b) => {
            let a2 = rewrite_nth(a, n);
            Term::prod_raw(x.clone(), a2, rewrite_nth(b, n))
        }
        TermKind::Sym(f, args) => {
            if &**f == "fst" && args[2].is_sym("pair") && here(n) {
                return args[2].as_sym().unwrap().1[2].clone();
            }
            if &**f == "pair" && here(n) {
                let snd = Term::sym("snd", vec![args[0].clone(), args[1].clone(), t.clone()]);
                return Term::sym(
                    "pair",
                    vec![args[0].clone(), args[1].clone(), args[2].clone(), snd],
                );
            }
            let args = args.iter().map(|a| rewrite_nth(a, n)).collect();
            Term::sym_named(f.clone(), args)
        }
    }
}

/// Applies up to `steps` random β, projection or proof-swap steps; returns
/// the result and the kinds of the steps taken.
pub fn equational_steps(rng: &mut impl Rng, t: &Term, steps: usize) -> (Term, Vec<StepKind>) {
    let mut cur = t.clone();
    let mut taken = Vec::new();
    for _ in 0..steps {
        let mut cs = Vec::new();
        candidates(&cur, &mut cs);
        if cs.is_empty() {
            break;
        }
        let k = rng.gen_range(0..cs.len());
        taken.push(cs[k]);
        let mut n = k;
        cur = rewrite_nth(&cur, &mut n);
    }
    (cur, taken)
}
