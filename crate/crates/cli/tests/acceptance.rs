//! Acceptance run: one PASS/FAIL line per criterion.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use deltacat::cofree::{
    audit_coalgebra, audit_comonad_laws, audit_cofunctor_triangle, audit_lens_triangle, coalgebra_to_lens, factorize, lens_to_coalgebra,
};
use deltacat::cofunctor::{coproduct_cof, from_span, to_span, validate_cof_morphism, validate_cofunctor};
use deltacat::format::{self, Document, Kind};
use deltacat::lens::{audit_lens_morphism, coproduct_lens, validate_lens};
use deltacat::oracle::{
    enumerate_coalgebras, enumerate_cof_morphisms, enumerate_cofunctors, enumerate_functors, enumerate_lens_morphisms, enumerate_lenses,
    enumerate_lenses_over, lens_candidates, EnumBounds,
};
use deltacat::{cofree_lens, fixtures, Cofunctor, DeltaLens, LawCheck, Mode};

type Outcome = Result<String, String>;

/// Name, time limit in seconds, and the check itself.
type Criterion = (&'static str, Option<u64>, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_pass(checks: &[LawCheck], label: &str) -> Result<usize, String> {
    match checks.iter().find(|c| !c.passed()) {
        Some(c) => Err(format!("{label}: {} fails: {}", c.law, c.failures[0])),
        None => Ok(checks.iter().map(|c| c.domain).sum()),
    }
}

struct Corpus {
    cofunctors: Vec<(String, Cofunctor)>,
    lenses: Vec<(String, DeltaLens)>,
}

fn corpus() -> Corpus {
    let bounds = EnumBounds::default();
    let (mut cofunctors, mut lenses) = (Vec::new(), Vec::new());
    for (an, a) in fixtures::all() {
        for (bn, b) in fixtures::all() {
            let label = format!("{an} -> {bn}");
            cofunctors.extend(enumerate_cofunctors(&a, &b, &bounds).unwrap().items.into_iter().map(|p| (label.clone(), p)));
            lenses.extend(enumerate_lenses(&a, &b, &bounds).unwrap().items.into_iter().map(|l| (label.clone(), l)));
        }
    }
    Corpus { cofunctors, lenses }
}

fn law_suites() -> Outcome {
    let c = corpus();
    let mut checked = 0;
    for (label, phi) in &c.cofunctors {
        checked += all_pass(&phi.audit(Mode::AllWitnesses), label)?;
    }
    for (label, l) in &c.lenses {
        checked += all_pass(&l.audit(Mode::AllWitnesses), label)?;
    }
    Ok(format!("{} cofunctors, {} lenses, {checked} instances", c.cofunctors.len(), c.lenses.len()))
}

fn span_equivalence() -> Outcome {
    let c = corpus();
    for (label, phi) in &c.cofunctors {
        let s = to_span(phi);
        ensure(s.left.is_bijective_on_objects(), || format!("{label}: left leg not bijective on objects"))?;
        ensure(s.right.is_discrete_opfibration(), || format!("{label}: right leg not a discrete opfibration"))?;
        let back = from_span(&s).map_err(|e| format!("{label}: {e}"))?;
        ensure(back == *phi, || format!("{label}: from_span . to_span differs"))?;
    }
    Ok(format!("{} round trips", c.cofunctors.len()))
}

fn lens_is_cof_morphism() -> Outcome {
    let bounds = EnumBounds::default();
    let (mut valid, mut invalid) = (0, 0);
    for (an, a) in fixtures::all() {
        for (bn, b) in fixtures::all() {
            let trivial = Cofunctor::identity(&b);
            for (f, puts) in lens_candidates(&a, &b, &bounds).map_err(|e| e.to_string())? {
                let as_lens = validate_lens(f.clone(), puts.clone()).is_ok();
                let phi = validate_cofunctor(a.clone(), b.clone(), f.obj_map().to_vec(), puts);
                let as_morphism = phi.as_ref().is_ok_and(|phi| validate_cof_morphism(&f, phi, &trivial).is_ok());
                ensure(as_lens == as_morphism, || format!("{an} -> {bn}: lens {as_lens}, morphism {as_morphism}"))?;
                if as_lens {
                    valid += 1;
                } else {
                    invalid += 1;
                }
            }
        }
    }
    Ok(format!("{valid} valid and {invalid} invalid candidates agree"))
}

fn counting_law() -> Outcome {
    let c = corpus();
    let mut pairs = 0;
    for (label, phi) in &c.cofunctors {
        let r = cofree_lens(phi);
        let (a, b) = (phi.source(), phi.base());
        ensure(r.apex().object_count() == a.object_count(), || format!("{label}: |P_0| != |A_0|"))?;
        for x in a.objects() {
            for y in a.objects() {
                let want = a.hom_size(x, y) * b.hom_size(phi.obj(x), phi.obj(y));
                ensure(r.hom_size(x, y) == want, || format!("{label}: |P({x:?}, {y:?})| = {} != {want}", r.hom_size(x, y)))?;
                pairs += 1;
            }
        }
        ensure(r.agrees_with_pullback().unwrap_or(false), || format!("{label}: pair category differs from the pullback"))?;
    }
    Ok(format!("{pairs} object pairs"))
}

fn triangles() -> Outcome {
    let c = corpus();
    let mut checked = 0;
    for (label, phi) in &c.cofunctors {
        checked += all_pass(&audit_cofunctor_triangle(phi, Mode::AllWitnesses), label)?;
    }
    for (label, l) in &c.lenses {
        checked += all_pass(&audit_lens_triangle(l, Mode::AllWitnesses), label)?;
    }
    Ok(format!("{checked} morphisms"))
}

fn comonad_laws() -> Outcome {
    let c = corpus();
    let mut checked = 0;
    for (label, phi) in &c.cofunctors {
        checked += all_pass(&audit_comonad_laws(phi, Mode::AllWitnesses), label)?;
    }
    Ok(format!("{} cofunctors, {checked} morphisms", c.cofunctors.len()))
}

fn coalgebras_are_lenses() -> Outcome {
    let bounds = EnumBounds::default();
    let c = corpus();
    let mut total = 0;
    for (label, phi) in &c.cofunctors {
        let coalgebras = enumerate_coalgebras(phi, &bounds).map_err(|e| e.to_string())?;
        let lenses = enumerate_lenses_over(phi, &bounds).map_err(|e| e.to_string())?;
        ensure(coalgebras.len() == lenses.len(), || format!("{label}: {} coalgebras, {} lenses", coalgebras.len(), lenses.len()))?;
        for k in &coalgebras.items {
            let l = coalgebra_to_lens(k).map_err(|e| format!("{label}: {e}"))?;
            ensure(lenses.items.contains(&l), || format!("{label}: converted lens not enumerated"))?;
            ensure(lens_to_coalgebra(&l) == *k, || format!("{label}: coalgebra does not round trip"))?;
        }
        for l in &lenses.items {
            let k = lens_to_coalgebra(l);
            all_pass(&audit_coalgebra(phi, k.carrier(), Mode::AllWitnesses).map_err(|e| e.to_string())?.checks, label)?;
            ensure(coalgebra_to_lens(&k).as_ref() == Ok(l), || format!("{label}: lens does not round trip"))?;
        }
        total += lenses.len();
    }
    Ok(format!("{total} coalgebra/lens pairs over {} cofunctors", c.cofunctors.len()))
}

fn coproducts() -> Outcome {
    const WIDE: EnumBounds = EnumBounds { max_objects: 6, max_morphisms: 18 };
    let c = corpus();
    let mut cocones = 0;
    for (_, b) in fixtures::all() {
        let over: Vec<_> = c.lenses.iter().filter(|(_, l)| l.base() == &b).map(|(_, l)| l).collect();
        let small: Vec<_> = over.iter().filter(|l| l.source().object_count() == 1).collect();
        for l1 in &small {
            for l2 in &small {
                let cp = coproduct_lens(l1, l2).map_err(|e| e.to_string())?;
                let direct = coproduct_cof(&l1.underlying_cofunctor(), &l2.underlying_cofunctor()).map_err(|e| e.to_string())?;
                ensure(cp.sum.underlying_cofunctor() == direct.sum, || "L(l1 + l2) != L l1 + L l2".into())?;
                for (inj, dom) in [(&cp.inl, *l1), (&cp.inr, *l2)] {
                    let checks = audit_lens_morphism(inj.carrier(), dom, &cp.sum, Mode::AllWitnesses).map_err(|e| e.to_string())?.checks;
                    all_pass(&checks, "injection")?;
                }
                for l3 in over.iter().filter(|l| l.source().object_count() <= 2) {
                    let ms = enumerate_lens_morphisms(&cp.sum, l3, &WIDE).map_err(|e| e.to_string())?.items;
                    let hs = enumerate_lens_morphisms(l1, l3, &WIDE).map_err(|e| e.to_string())?.items;
                    let ks = enumerate_lens_morphisms(l2, l3, &WIDE).map_err(|e| e.to_string())?.items;
                    for h in &hs {
                        for k in &ks {
                            let fits: Vec<_> = ms
                                .iter()
                                .filter(|m| {
                                    m.after(&cp.inl).is_ok_and(|x| x.carrier() == h.carrier())
                                        && m.after(&cp.inr).is_ok_and(|x| x.carrier() == k.carrier())
                                })
                                .collect();
                            ensure(fits.len() == 1, || format!("{} mediating morphisms", fits.len()))?;
                            ensure(cp.copair(h, k).as_ref() == Ok(fits[0]), || "copair is not the mediating morphism".into())?;
                            cocones += 1;
                        }
                    }
                }
            }
        }
    }
    for (label, p) in c.cofunctors.iter().filter(|(_, p)| p.source().object_count() == 1) {
        for (_, q) in c.cofunctors.iter().filter(|(_, q)| q.source().object_count() == 1 && q.base() == p.base()) {
            let cp = coproduct_cof(p, q).map_err(|e| format!("{label}: {e}"))?;
            for r in c.cofunctors.iter().map(|(_, r)| r).filter(|r| r.base() == p.base() && r.source().object_count() <= 2) {
                let ms = enumerate_cof_morphisms(&cp.sum, r, &WIDE).map_err(|e| e.to_string())?.items;
                let hs = enumerate_cof_morphisms(p, r, &WIDE).map_err(|e| e.to_string())?.items;
                let ks = enumerate_cof_morphisms(q, r, &WIDE).map_err(|e| e.to_string())?.items;
                for h in &hs {
                    for k in &ks {
                        let fits: Vec<_> = ms
                            .iter()
                            .filter(|m| {
                                m.after(&cp.inl).is_ok_and(|x| x.carrier() == h.carrier())
                                    && m.after(&cp.inr).is_ok_and(|x| x.carrier() == k.carrier())
                            })
                            .collect();
                        ensure(fits.len() == 1, || format!("{label}: {} mediating morphisms", fits.len()))?;
                        ensure(cp.copair(h, k).as_ref() == Ok(fits[0]), || format!("{label}: copair is not the mediating morphism"))?;
                        cocones += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{cocones} cocones, each with a unique mediator"))
}

fn factorisation() -> Outcome {
    let c = corpus();
    for (label, l) in &c.lenses {
        let f = factorize(l);
        ensure(f.first.carrier().is_bijective_on_objects(), || format!("{label}: first factor not bijective on objects"))?;
        ensure(f.reassemble().as_ref() == Ok(l), || format!("{label}: reassembly differs"))?;
    }
    Ok(format!("{} lenses", c.lenses.len()))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run_cli(args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_deltacat"))
        .args(args)
        .env_remove("DELTACAT_FIXTURES")
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

fn round_trip(doc: &Document, dir: &Path, label: &str) -> Result<(), String> {
    let text = doc.to_canonical_json();
    let again = format::parse_str(&text, doc.kind(), dir).map_err(|e| format!("{label}: {e}"))?;
    ensure(again == *doc, || format!("{label}: parse . serialize is not the identity"))?;
    ensure(again.to_canonical_json() == text, || format!("{label}: serialization is not stable"))
}

fn cli_round_trip() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let c = corpus();
    let mut docs = 0;
    for (name, cat) in fixtures::all() {
        round_trip(&Document::Category(cat), dir.path(), name)?;
        docs += 1;
    }
    for (name, a) in fixtures::all() {
        for (_, b) in fixtures::all() {
            for f in enumerate_functors(&a, &b, &EnumBounds::default()).map_err(|e| e.to_string())?.items {
                round_trip(&Document::Functor(f), dir.path(), name)?;
                docs += 1;
            }
        }
    }
    for (label, phi) in &c.cofunctors {
        round_trip(&Document::Cofunctor(phi.clone()), dir.path(), label)?;
        docs += 1;
    }
    for (label, l) in &c.lenses {
        round_trip(&Document::Lens(l.clone()), dir.path(), label)?;
        round_trip(&Document::Coalgebra(Box::new(lens_to_coalgebra(l))), dir.path(), label)?;
        docs += 2;
    }

    for f in ["loop.cof.json", "two.lens.json", "loop.coalg.json"] {
        let path = fixture(f);
        let doc = format::load(&path).map_err(|e| format!("{f}: {e}"))?;
        let kind = Kind::from_path(&path).map_err(|e| e.to_string())?;
        let text = doc.to_canonical_json();
        ensure(format::parse_str(&text, kind, dir.path()).as_ref() == Ok(&doc), || format!("{f}: does not round trip"))?;
    }

    let runs: Vec<_> = (0..2)
        .map(|i| {
            let out = dir.path().join(format!("p{i}.lens.json"));
            run_cli(&["cofree", fixture("loop.cof.json").to_str().unwrap(), "--out", out.to_str().unwrap()])?;
            fs::read(&out).map_err(|e| e.to_string())
        })
        .collect::<Result<_, _>>()?;
    ensure(runs[0] == runs[1], || "cofree output differs between runs".into())?;
    let sweeps = [run_cli(&["--format", "json", "enumerate"])?, run_cli(&["--format", "json", "enumerate"])?];
    ensure(sweeps[0] == sweeps[1], || "enumerate report differs between runs".into())?;

    let broken = dir.path().join("broken.cat.json");
    fs::write(&broken, "{\"objects\": [").map_err(|e| e.to_string())?;
    let cases = [
        (fixture("two.lens.json"), 0),
        (fixture("loop.coalg.json"), 0),
        (fixture("bad.coalg.json"), 1),
        (broken, 2),
    ];
    for (path, want) in &cases {
        let (code, _) = run_cli(&["check", path.to_str().unwrap()])?;
        ensure(code == *want, || format!("{}: exit {code}, expected {want}", path.display()))?;
    }
    Ok(format!("{docs} documents, 2 byte-stable runs, {} exit codes", cases.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("law suites", Some(5), law_suites),
        ("span equivalence", None, span_equivalence),
        ("lens as a morphism into the trivial cofunctor", None, lens_is_cof_morphism),
        ("counting law", None, counting_law),
        ("triangle identities", Some(10), triangles),
        ("comonad laws", None, comonad_laws),
        ("coalgebras are lenses", Some(30), coalgebras_are_lenses),
        ("coproduct creation", None, coproducts),
        ("factorisation", None, factorisation),
        ("cli round trip", None, cli_round_trip),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit.map(Duration::from_secs)) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took longer than {}s", limit.as_secs())),
            (o, _) => o,
        };
        let (mark, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{mark} {:>2} {name} ({:.2}s): {detail}", i + 1, elapsed.as_secs_f64());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
