//! End-to-end acceptance checks. Runs without the libtest harness so that
//! the PASS/FAIL line of every criterion is always printed; the process
//! exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use pcert_cli::{cmd_check, cmd_roundtrip, cmd_translate, ExitStatus};
use pcert_core::generate::{base_context, equational_steps, sample_development, Generator, Pr, Sample, Ty};
use pcert_core::inverse::{roundtrip_development, RoundTripError};
use pcert_core::lf::{self, el, prf};
use pcert_core::syntax::{Decl, Development};
use pcert_core::translate::Translator;
use pcert_core::{
    check_orthogonality, conv_pcert, infer_lf, infer_pcert, parse_file, print_file, translate_development,
    Context, Fuel, Term,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn corpus(file: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/corpus").join(file)
}

const PCERT_CORPUS: [&str; 4] = ["stacks.pcert", "bounded_lists.pcert", "even.pcert", "prelude.pcert"];

fn fuel() -> Fuel {
    Fuel::default()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn quiet() -> Vec<u8> {
    Vec::new()
}

/// The random set shared by criteria 2 and 3: depths cycle through 1..=6.
fn random_set() -> Vec<Sample> {
    (0..200u64)
        .map(|i| Generator::new(1_000 + i).sample(1 + (i % 6) as u32))
        .collect()
}

fn random_files(dir: &TempDir) -> Vec<PathBuf> {
    random_set()
        .into_iter()
        .enumerate()
        .map(|(i, s)| write(dir, &format!("g{i}.pcert"), &print_file(&sample_development(&[s]))))
        .collect()
}

fn tally(label: &str, ok: usize, total: usize, failures: &[String]) -> Outcome {
    if ok == total && failures.is_empty() {
        Ok(format!("{ok}/{total} {label}"))
    } else {
        Err(format!("{ok}/{total} {label}; first failures: {:?}", &failures[..failures.len().min(3)]))
    }
}

fn corpus_soundness() -> Outcome {
    let mut failures = Vec::new();
    let files = ["stacks.pcert", "bounded_lists.pcert", "even.pcert"];
    for f in files {
        let mut err = quiet();
        let s = cmd_check(&corpus(f), fuel(), &mut err);
        if s != ExitStatus::Ok {
            failures.push(format!("{f}: exit {s}: {}", String::from_utf8_lossy(&err)));
        }
    }
    tally("corpus files check in pcert mode", files.len() - failures.len(), files.len(), &failures)
}

fn correctness() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut inputs: Vec<PathBuf> = PCERT_CORPUS.iter().map(|f| corpus(f)).collect();
    inputs.extend(random_files(&dir));
    let mut failures = Vec::new();
    for (i, input) in inputs.iter().enumerate() {
        let out = dir.path().join(format!("out{i}.lf"));
        let mut err = quiet();
        let s = cmd_translate(input, &out, fuel(), &mut err);
        let recheck = if s == ExitStatus::Ok {
            cmd_check(&out, fuel(), &mut err)
        } else {
            s
        };
        if recheck != ExitStatus::Ok {
            failures.push(format!("{}: exit {recheck}: {}", input.display(), String::from_utf8_lossy(&err)));
        }
    }
    let n = inputs.len();
    tally("files (4 corpus, 200 random) translate and re-check in lf mode", n - failures.len(), n, &failures)
}

fn inverse_round_trip() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut inputs: Vec<PathBuf> = PCERT_CORPUS.iter().map(|f| corpus(f)).collect();
    inputs.extend(random_files(&dir));
    let mut failures = Vec::new();
    let mut not_in_image = 0;
    let mut definitions = 0;
    for input in &inputs {
        let mut err = quiet();
        let s = cmd_roundtrip(input, fuel(), &mut err);
        let dev = parse_file(&std::fs::read_to_string(input).unwrap(), "x").unwrap();
        definitions += dev.decls.iter().filter(|d| matches!(d.decl, Decl::Definition { .. })).count();
        let report = roundtrip_development(&dev, fuel()).map_err(|e| e.to_string());
        match report {
            Ok(fs) => {
                not_in_image += fs.iter().filter(|f| matches!(f.error, RoundTripError::NotInImage(_))).count();
            }
            Err(e) => failures.push(e),
        }
        if s != ExitStatus::Ok {
            failures.push(format!("{}: exit {s}: {}", input.display(), String::from_utf8_lossy(&err)));
        }
    }
    let n = inputs.len();
    tally(
        &format!("files round-trip ({definitions} definitions, {not_in_image} reported not in image)"),
        n - failures.len(),
        n,
        &failures,
    )
}

fn preservation_of_equivalence() -> Outcome {
    let ctx = base_context();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut pairs = 0;
    let mut failures = Vec::new();
    let mut seed = 0u64;
    while pairs < 200 {
        seed += 1;
        let m = Generator::new(seed).sample(4).term;
        let k = rng.gen_range(1..=5);
        let (n, taken) = equational_steps(&mut rng, &m, k);
        if taken.is_empty() {
            continue;
        }
        pairs += 1;
        let pc = conv_pcert(&ctx, &m, &n, &mut fuel());
        let mut f = fuel();
        let mut tr = Translator::new(&mut f);
        let (a, b) = (tr.term(&ctx, &m).unwrap(), tr.term(&ctx, &n).unwrap());
        let r = lf::convertible(&a, &b, &mut fuel());
        if pc != Ok(true) || r != Ok(true) {
            failures.push(format!("{m} ~ {n}: pcert {pc:?}, R {r:?}"));
        }
    }
    tally("step-related pairs convertible in both systems", pairs - failures.len(), pairs, &failures)
}

fn definition_body<'a>(dev: &'a Development, name: &str) -> &'a Term {
    dev.decls
        .iter()
        .find_map(|d| match &d.decl {
            Decl::Definition { name: n, body, .. } if n == name => Some(body),
            _ => None,
        })
        .unwrap_or_else(|| panic!("no definition {name}"))
}

fn proof_irrelevance() -> Outcome {
    let src = std::fs::read_to_string(corpus("bounded_lists.pcert")).unwrap();
    let dev = parse_file(&src, "bounded_lists.pcert").unwrap();
    let (l1, l2) = (definition_body(&dev, "l1"), definition_body(&dev, "l2"));
    let uses = |t: &Term, x: &str| t.occurs_free(x);
    if !(uses(l1, "p1") && !uses(l1, "p2") && uses(l2, "p2") && !uses(l2, "p1")) {
        return Err("l1 and l2 do not carry the distinct axioms p1 and p2".into());
    }
    let lf = translate_development(&dev, fuel()).map_err(|e| e.to_string())?;
    let (t1, t2) = (definition_body(&lf, "l1"), definition_body(&lf, "l2"));
    if t1 == t2 {
        return Err("translations are syntactically equal".into());
    }
    match lf::convertible(t1, t2, &mut fuel()) {
        Ok(true) => Ok("⟦l1⟧ and ⟦l2⟧ are R-convertible with proofs p1 ≠ p2".into()),
        other => Err(format!("convertible(⟦l1⟧, ⟦l2⟧) = {other:?}")),
    }
}

/// `pair(t, p, m, h)` ↦ `pair'(t, p, m)` everywhere.
fn erase_pairs(t: &Term) -> Term {
    t.map_symbols(&mut |f, args| {
        if &**f == "pair" {
            Term::sym("pair'", args[..3].to_vec())
        } else {
            Term::sym_named(f.clone(), args)
        }
    })
}

fn protected_symbol() -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for (f, want) in [("pair_erased.lf", ExitStatus::ProtectedSymbol), ("pair_with_proof.lf", ExitStatus::Ok)] {
        cases += 1;
        let s = cmd_check(&corpus(f), fuel(), &mut quiet());
        if s != want {
            failures.push(format!("{f}: exit {s}, expected {want}"));
        }
    }
    // generated encodings with pairs, and the same with pair' substituted
    let dir = tempfile::tempdir().unwrap();
    let base = translate_development(&pcert_core::generate::base_development(), fuel()).unwrap();
    let ctx = base_context();
    let mut seed = 0;
    let mut instances = 0;
    while instances < 50 {
        seed += 1;
        let s = Generator::new(10_000 + seed).sample(4);
        if !s.term.symbols().contains("pair") {
            continue;
        }
        instances += 1;
        let mut f = fuel();
        let mut tr = Translator::new(&mut f);
        let (m, t) = (tr.term(&ctx, &s.term).unwrap(), tr.ty(&ctx, &s.ty).unwrap());
        for (term, want, tag) in [(m.clone(), ExitStatus::Ok, "with"), (erase_pairs(&m), ExitStatus::ProtectedSymbol, "erased")] {
            cases += 1;
            let mut dev = base.clone();
            dev.push(Decl::AssertJudgment { subject: term, ty: t.clone() });
            let path = write(&dir, &format!("p{seed}_{tag}.lf"), &print_file(&dev));
            let got = cmd_check(&path, fuel(), &mut quiet());
            if got != want {
                failures.push(format!("{}: exit {got}, expected {want}", path.display()));
            }
        }
    }
    tally("lf inputs exit 4 with pair' and 0 with pair", cases - failures.len(), cases, &failures)
}

fn orthogonality_and_confluence() -> Outcome {
    let issues = check_orthogonality(&lf::rules());
    if !issues.is_empty() {
        return Err(format!("orthogonality violations: {issues:?}"));
    }
    let ctx = base_context();
    let rs = lf::rules();
    let mut terms = Vec::new();
    let mut seed = 0;
    while terms.len() < 1000 {
        seed += 1;
        let s = Generator::new(20_000 + seed).sample(1 + (seed % 6) as u32);
        let mut f = fuel();
        let mut tr = Translator::new(&mut f);
        terms.push(tr.term(&ctx, &s.term).unwrap());
        terms.push(tr.ty(&ctx, &s.ty).unwrap());
    }
    let mut failures = Vec::new();
    let mut exhausted = 0;
    for t in &terms {
        let outer = rs.normalize(t, &mut Fuel::new(10_000));
        let inner = rs.normalize_innermost(t, &mut Fuel::new(10_000));
        match (outer, inner) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(a), Ok(b)) => failures.push(format!("{t}: {a} vs {b}")),
            _ => exhausted += 1,
        }
    }
    if exhausted > 0 {
        failures.push(format!("{exhausted} fuel exhaustions"));
    }
    let agree = terms.len() - failures.len().min(terms.len());
    tally("encoding terms agree across strategies, no orthogonality violations", agree, terms.len(), &failures)
}

fn equation_suite() -> Outcome {
    let pctx = base_context();
    let lctx: Context = Translator::new(&mut fuel()).ctx(&pctx).unwrap();
    let tr = |t: &Term| Translator::new(&mut fuel()).term(&pctx, t).unwrap();
    let lf_eq = |a: &Term, b: &Term| -> bool {
        infer_lf(&lctx, a, &mut fuel()).is_ok()
            && infer_lf(&lctx, b, &mut fuel()).is_ok()
            && lf::convertible(a, b, &mut fuel()) == Ok(true)
    };
    let pc_eq = |a: &Term, b: &Term| -> bool {
        infer_pcert(&pctx, a, &mut fuel()).is_ok()
            && infer_pcert(&pctx, b, &mut fuel()).is_ok()
            && conv_pcert(&pctx, a, b, &mut fuel()) == Ok(true)
    };
    let mut counts = [0usize; 6];
    let mut failures = Vec::new();
    for i in 0..50u64 {
        let mut g = Generator::new(30_000 + i);
        // El prop ≡ Prop; the equation has no parameters
        let prop = Term::sym("prop", vec![]);
        if lf_eq(&el(prop), &Term::sym("Prop", vec![])) {
            counts[0] += 1;
        } else {
            failures.push("El prop".to_string());
        }
        // Prf (fa t p) ≡ Πx:El t. Prf (p x)
        let (a, pred) = g.predicate(2);
        let (t, p) = (tr(&a.to_term()), tr(&pred));
        let lhs = prf(Term::sym("fa", vec![t.clone(), p.clone()]));
        let rhs = Term::prod("x", el(t), prf(Term::app(p, Term::var("x"))));
        if lf_eq(&lhs, &rhs) {
            counts[1] += 1;
        } else {
            failures.push(format!("{lhs} ≡ {rhs}"));
        }
        // Prf (impd p q) ≡ Πh:Prf p. Prf (q h)
        let pp = g.pr(2).to_term();
        let qq = Term::abs("h", pp.clone(), g.pr(2).to_term());
        let (p, q) = (tr(&pp), tr(&qq));
        let lhs = prf(Term::sym("impd", vec![p.clone(), q.clone()]));
        let rhs = Term::prod("h", prf(p), prf(Term::app(q, Term::var("h"))));
        if lf_eq(&lhs, &rhs) {
            counts[2] += 1;
        } else {
            failures.push(format!("{lhs} ≡ {rhs}"));
        }
        // El (arrd t u) ≡ Πx:El t. El (u x)
        let a = g.ty(1).to_term();
        let uu = Term::abs("x", a.clone(), g.ty(1).to_term());
        let (t, u) = (tr(&a), tr(&uu));
        let lhs = el(Term::sym("arrd", vec![t.clone(), u.clone()]));
        let rhs = Term::prod("x", el(t), el(Term::app(u, Term::var("x"))));
        if lf_eq(&lhs, &rhs) {
            counts[3] += 1;
        } else {
            failures.push(format!("{lhs} ≡ {rhs}"));
        }
        // pair T p m h0 ≡ pair T p m h1 and fst T p (pair T p m h) ≡ m
        let m = g.data(&Ty::Nat, 3);
        let pr = Pr::EvenDbl(m.clone());
        let (h0, h1) = (g.proof(&pr, 3), g.proof(&pr, 3));
        let dm = Term::app(Term::var("dbl"), m);
        let pair = |h: Term| Term::sym("pair", vec![Term::var("nat"), Term::var("even"), dm.clone(), h]);
        let h1 = if h0 == h1 {
            Term::sym("snd", vec![Term::var("nat"), Term::var("even"), pair(h0.clone())])
        } else {
            h1
        };
        if pc_eq(&pair(h0.clone()), &pair(h1)) {
            counts[4] += 1;
        } else {
            failures.push(format!("pair proofs {h0}"));
        }
        let proj = Term::sym("fst", vec![Term::var("nat"), Term::var("even"), pair(h0)]);
        if pc_eq(&proj, &dm) {
            counts[5] += 1;
        } else {
            failures.push(format!("{proj} ≡ {dm}"));
        }
    }
    let ok: usize = counts.iter().sum();
    tally(
        &format!("instances hold (per equation: {counts:?})"),
        ok,
        300,
        &failures,
    )
}

fn parser_round_trip() -> Outcome {
    let files = [
        "stacks.pcert",
        "bounded_lists.pcert",
        "even.pcert",
        "prelude.pcert",
        "pair_erased.lf",
        "pair_with_proof.lf",
    ];
    let mut failures = Vec::new();
    for f in files {
        let src = std::fs::read_to_string(corpus(f)).unwrap();
        let once = parse_file(&src, f).unwrap();
        let printed = print_file(&once);
        let twice = parse_file(&printed, f).unwrap();
        if once != twice {
            failures.push(format!("{f}: parse∘print∘parse differs"));
        } else if print_file(&twice) != printed {
            failures.push(format!("{f}: printing is not stable"));
        }
    }
    tally("corpus files stable under parse∘print", files.len() - failures.len(), files.len(), &failures)
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("corpus soundness", corpus_soundness),
        ("correctness of the translation", correctness),
        ("inverse round trip", inverse_round_trip),
        ("preservation of equivalence", preservation_of_equivalence),
        ("proof irrelevance end to end", proof_irrelevance),
        ("protected symbol", protected_symbol),
        ("orthogonality and confluence smoke test", orthogonality_and_confluence),
        ("conversion equations", equation_suite),
        ("parser round trip", parser_round_trip),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {} ({name}): PASS: {detail}", i + 1),
            Err(detail) => {
                println!("criterion {} ({name}): FAIL: {detail}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", criteria.len());
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
