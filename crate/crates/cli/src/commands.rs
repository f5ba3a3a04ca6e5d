use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use deltacat::cofree::{
    audit_coalgebra, audit_cofunctor_triangle, audit_comonad_laws, audit_lens_triangle, coalgebra_to_lens, cofree_lens, factorize,
    lens_to_coalgebra,
};
use deltacat::cofunctor::{audit_cof_morphism, coproduct_cof};
use deltacat::format::{self, Document, Kind};
use deltacat::laws::Audit;
use deltacat::lens::{audit_lens_morphism, coproduct_lens};
use deltacat::oracle::{enumerate_coalgebras, enumerate_cofunctors, enumerate_functors, enumerate_lenses, enumerate_lenses_over, EnumBounds};
use deltacat::{fixtures, Cofunctor, DeltaLens, Error, FinCategory, Functor, LawCheck, Mode, Result};
use serde_json::json;

use crate::report::Report;

pub struct Ctx {
    pub all_witnesses: bool,
    pub fixtures: Option<PathBuf>,
}

const MODE: Mode = Mode::AllWitnesses;

fn prefixed(prefix: &str, checks: Vec<LawCheck>) -> Vec<LawCheck> {
    checks
        .into_iter()
        .map(|mut c| {
            c.law = format!("{prefix}: {}", c.law);
            c
        })
        .collect()
}

impl Ctx {
    fn report(&self, checks: Vec<LawCheck>) -> Report {
        Report::new(checks, self.all_witnesses)
    }

    fn add(&self, report: &mut Report, checks: Vec<LawCheck>) {
        report.extend(checks, self.all_witnesses);
    }

    /// Loads a file, recording every law checked on the way.
    fn load(&self, path: &Path, report: &mut Report) -> Result<Option<Document>> {
        let audited = format::audit_file(path, MODE)?;
        self.add(report, audited.checks);
        Ok(audited.value)
    }

    fn write(&self, path: &Path, doc: &Document, report: &mut Report) -> Result<()> {
        format::write(path, doc)?;
        report.artifacts_written.push(path.display().to_string());
        Ok(())
    }

    pub fn check(&self, path: &Path) -> Result<Report> {
        let mut report = self.report(Vec::new());
        self.load(path, &mut report)?;
        Ok(report)
    }

    fn lens(&self, path: &Path, report: &mut Report) -> Result<Option<DeltaLens>> {
        match self.load(path, report)? {
            Some(Document::Lens(l)) => Ok(Some(l)),
            Some(other) => Err(wrong_kind(path, other.kind(), "a lens")),
            None => Ok(None),
        }
    }

    /// A cofunctor file, or the underlying cofunctor of a lens file.
    fn cofunctor(&self, path: &Path, report: &mut Report) -> Result<Option<Cofunctor>> {
        match self.load(path, report)? {
            Some(Document::Cofunctor(phi)) => Ok(Some(phi)),
            Some(Document::Lens(l)) => Ok(Some(l.underlying_cofunctor())),
            Some(other) => Err(wrong_kind(path, other.kind(), "a cofunctor or lens")),
            None => Ok(None),
        }
    }

    pub fn get(&self, path: &Path, w: &str) -> Result<Report> {
        let mut report = self.report(Vec::new());
        if let Some(l) = self.lens(path, &mut report)? {
            report.output = Some(json!(l.get_named(w)?));
        }
        Ok(report)
    }

    pub fn put(&self, path: &Path, a: &str, u: &str) -> Result<Report> {
        let mut report = self.report(Vec::new());
        if let Some(l) = self.lens(path, &mut report)? {
            report.output = Some(json!(l.put_named(a, u)?));
        }
        Ok(report)
    }

    pub fn cofree(&self, path: &Path, out: Option<&Path>) -> Result<Report> {
        let mut report = self.report(Vec::new());
        let Some(phi) = self.cofunctor(path, &mut report)? else { return Ok(report) };
        let r = cofree_lens(&phi);
        self.add(&mut report, prefixed("cofree lens", r.lens().audit(MODE)));

        let (a, b) = (phi.source(), phi.base());
        let mut audit = Audit::new(MODE);
        audit.law("cofree: P equals the pullback over codisc(B_0)");
        let agrees = r.agrees_with_pullback()?;
        let _ = audit.expect(agrees, || Error::BoundaryMismatch("pullback apex differs from the pair category".into()));
        audit.law("cofree: |P(a, a')| = |A(a, a')| * |B(phi a, phi a')|");
        for x in a.objects() {
            for y in a.objects() {
                let (p, want) = (r.hom_size(x, y), a.hom_size(x, y) * b.hom_size(phi.obj(x), phi.obj(y)));
                let _ = audit.expect(p == want, || {
                    Error::BoundaryMismatch(format!("P({}, {}) has {p} morphisms, expected {want}", a.object_name(x), a.object_name(y)))
                });
            }
        }
        let (span, c) = r.comparison();
        audit.law("cofree: comparison X -> P is bijective on objects");
        let _ = audit.expect(c.is_bijective_on_objects(), || Error::NotBoo("comparison".into()));
        audit.law("cofree: pi_B . comparison = phi-bar");
        let _ = audit.expect(r.get().after(&c)? == span.right, || Error::GetNotPreserved("comparison".into()));
        self.add(&mut report, audit.into_checks());

        report.output = Some(json!({ "objects": r.apex().object_count(), "morphisms": r.apex().morphism_count() }));
        if let Some(out) = out {
            self.write(out, &Document::Lens(r.lens().clone()), &mut report)?;
        }
        Ok(report)
    }

    pub fn factorize(&self, path: &Path, out: Option<&Path>) -> Result<Report> {
        let mut report = self.report(Vec::new());
        let Some(l) = self.lens(path, &mut report)? else { return Ok(report) };
        let f = factorize(&l);
        let first = f.first.carrier();
        let morphism = audit_lens_morphism(first, f.first.dom(), f.first.cod(), MODE)?;
        self.add(&mut report, prefixed("first factor", morphism.checks));

        let mut audit = Audit::new(MODE);
        audit.law("first factor is bijective on objects");
        let _ = audit.expect(first.is_bijective_on_objects(), || Error::NotBoo("first factor".into()));
        audit.law("reassembly equals the lens");
        let back = f.reassemble();
        let _ = audit.expect(back.as_ref().is_ok_and(|m| *m == l), || match &back {
            Err(e) => e.clone(),
            Ok(_) => Error::GetNotPreserved("reassembled lens differs".into()),
        });
        self.add(&mut report, audit.into_checks());

        report.output = Some(json!({ "first": format::functor_file(first).morphism_map }));
        if let Some(dir) = out {
            fs::create_dir_all(dir).map_err(|e| Error::MalformedInput(format!("{}: {e}", dir.display())))?;
            self.write(&dir.join("first.fun.json"), &Document::Functor(first.clone()), &mut report)?;
            self.write(&dir.join("second.lens.json"), &Document::Lens(f.second.lens().clone()), &mut report)?;
        }
        Ok(report)
    }

    pub fn coalgebra_verify(&self, path: &Path) -> Result<Report> {
        let mut report = self.report(Vec::new());
        match self.load(path, &mut report)? {
            Some(Document::Coalgebra(c)) => {
                let mut audit = Audit::new(MODE);
                audit.law("forced shape: identity on objects");
                let _ = audit.expect(c.is_identity_on_objects(), || Error::CounitLawViolation("carrier moves an object".into()));
                audit.law("forced shape: h = <1_A, f>");
                let _ = audit.expect(c.preserves_first_component(), || Error::CounitLawViolation("first component changes".into()));
                self.add(&mut report, audit.into_checks());
            }
            Some(other) => return Err(wrong_kind(path, other.kind(), "a coalgebra")),
            None => {}
        }
        Ok(report)
    }

    pub fn coalgebra_from_lens(&self, path: &Path, out: Option<&Path>) -> Result<Report> {
        let mut report = self.report(Vec::new());
        let Some(l) = self.lens(path, &mut report)? else { return Ok(report) };
        let c = lens_to_coalgebra(&l);
        let audited = audit_coalgebra(c.cofunctor(), c.carrier(), MODE)?;
        self.add(&mut report, prefixed("coalgebra", audited.checks));
        report.output = Some(json!(format::functor_file(c.carrier()).morphism_map));
        if let Some(out) = out {
            self.write(out, &Document::Coalgebra(Box::new(c)), &mut report)?;
        }
        Ok(report)
    }

    pub fn coalgebra_to_lens(&self, path: &Path, out: Option<&Path>) -> Result<Report> {
        let mut report = self.report(Vec::new());
        let c = match self.load(path, &mut report)? {
            Some(Document::Coalgebra(c)) => c,
            Some(other) => return Err(wrong_kind(path, other.kind(), "a coalgebra")),
            None => return Ok(report),
        };
        let l = coalgebra_to_lens(&c)?;
        self.add(&mut report, prefixed("lens", l.audit(MODE)));
        report.output = Some(json!(format::functor_file(l.get_functor()).morphism_map));
        if let Some(out) = out {
            self.write(out, &Document::Lens(l), &mut report)?;
        }
        Ok(report)
    }

    pub fn coproduct(&self, left: &Path, right: &Path, out: Option<&Path>) -> Result<Report> {
        let mut report = self.report(Vec::new());
        let (Some(x), Some(y)) = (self.load(left, &mut report)?, self.load(right, &mut report)?) else { return Ok(report) };
        let sum = match (x, y) {
            (Document::Lens(l1), Document::Lens(l2)) => {
                let cp = coproduct_lens(&l1, &l2)?;
                self.add(&mut report, prefixed("sum", cp.sum.audit(MODE)));
                for (name, inj, dom) in [("inl", &cp.inl, &l1), ("inr", &cp.inr, &l2)] {
                    let checks = audit_lens_morphism(inj.carrier(), dom, &cp.sum, MODE)?.checks;
                    self.add(&mut report, prefixed(name, checks));
                }
                let mut audit = Audit::new(MODE);
                audit.law("L(l1 + l2) = L l1 + L l2");
                let _ = audit.expect(cp.sum.underlying_cofunctor() == cp.cofunctors.sum, || {
                    Error::LiftNotPreserved("underlying cofunctor of the sum differs".into())
                });
                self.add(&mut report, audit.into_checks());
                Document::Lens(cp.sum)
            }
            (Document::Cofunctor(phi), Document::Cofunctor(gamma)) => {
                let cp = coproduct_cof(&phi, &gamma)?;
                self.add(&mut report, prefixed("sum", cp.sum.audit(MODE)));
                for (name, inj, dom) in [("inl", &cp.inl, &phi), ("inr", &cp.inr, &gamma)] {
                    let checks = audit_cof_morphism(inj.carrier(), dom, &cp.sum, MODE)?.checks;
                    self.add(&mut report, prefixed(name, checks));
                }
                Document::Cofunctor(cp.sum)
            }
            _ => return Err(Error::MalformedInput("coproduct needs two lenses or two cofunctors".into())),
        };
        if let Some(out) = out {
            self.write(out, &sum, &mut report)?;
        }
        Ok(report)
    }

    pub fn triangles(&self, path: &Path) -> Result<Report> {
        let mut report = self.report(Vec::new());
        match self.load(path, &mut report)? {
            Some(Document::Lens(l)) => {
                self.add(&mut report, audit_lens_triangle(&l, MODE));
                self.add(&mut report, audit_cofunctor_triangle(&l.underlying_cofunctor(), MODE));
            }
            Some(Document::Cofunctor(phi)) => self.add(&mut report, audit_cofunctor_triangle(&phi, MODE)),
            Some(other) => return Err(wrong_kind(path, other.kind(), "a cofunctor or lens")),
            None => {}
        }
        Ok(report)
    }

    pub fn comonad_laws(&self, path: &Path) -> Result<Report> {
        let mut report = self.report(Vec::new());
        if let Some(phi) = self.cofunctor(path, &mut report)? {
            self.add(&mut report, audit_comonad_laws(&phi, MODE));
        }
        Ok(report)
    }

    /// A category given as a path, a name in the fixture directory, or a
    /// built-in fixture name.
    fn category(&self, arg: &str) -> Result<(String, Arc<FinCategory>)> {
        let as_path = Path::new(arg);
        let path = if arg.ends_with(Kind::Category.extension()) {
            Some(as_path.to_path_buf())
        } else {
            self.fixtures.as_ref().map(|dir| dir.join(format!("{arg}{}", Kind::Category.extension())))
        };
        let label = arg.strip_suffix(Kind::Category.extension()).unwrap_or(arg);
        let label = Path::new(label).file_name().and_then(|n| n.to_str()).unwrap_or(label).to_owned();
        match path {
            Some(p) => match format::load(&p)? {
                Document::Category(c) => Ok((label, c)),
                other => Err(wrong_kind(&p, other.kind(), "a category")),
            },
            None => fixtures::by_name(arg)
                .map(|c| (label, c))
                .ok_or_else(|| Error::MalformedInput(format!("unknown fixture `{arg}`; known: {}", fixtures::NAMES.join(", ")))),
        }
    }

    fn fixture_set(&self) -> Result<Vec<(String, Arc<FinCategory>)>> {
        let Some(dir) = &self.fixtures else {
            return Ok(fixtures::all().into_iter().map(|(n, c)| (n.to_owned(), c)).collect());
        };
        let entries = fs::read_dir(dir).map_err(|e| Error::MalformedInput(format!("{}: {e}", dir.display())))?;
        let mut names: Vec<String> = entries
            .filter_map(|e| e.ok()?.file_name().into_string().ok())
            .filter_map(|n| n.strip_suffix(Kind::Category.extension()).map(str::to_owned))
            .collect();
        names.sort();
        names.iter().map(|n| self.category(n)).collect()
    }

    pub fn enumerate(&self, source: Option<&str>, base: Option<&str>, bounds: EnumBounds, out: Option<&Path>) -> Result<Report> {
        let pairs = match (source, base) {
            (Some(s), Some(b)) => vec![(self.category(s)?, self.category(b)?)],
            (None, None) => {
                let set = self.fixture_set()?;
                let mut pairs = Vec::new();
                for a in &set {
                    for b in &set {
                        pairs.push((a.clone(), b.clone()));
                    }
                }
                pairs
            }
            _ => return Err(Error::MalformedInput("give both a source and a base, or neither".into())),
        };

        let mut report = self.report(Vec::new());
        let mut rows = Vec::new();
        let mut audit = Audit::new(MODE);
        audit.law("|coalgebras(phi)| = |lenses over phi| for every enumerated cofunctor");
        for ((an, a), (bn, b)) in pairs {
            let functors = enumerate_functors(&a, &b, &bounds)?;
            let cofunctors = enumerate_cofunctors(&a, &b, &bounds)?;
            let lenses = enumerate_lenses(&a, &b, &bounds)?;
            let (mut coalgebras, mut over) = (Vec::new(), 0);
            for phi in &cofunctors.items {
                let cs = enumerate_coalgebras(phi, &bounds)?;
                let ls = enumerate_lenses_over(phi, &bounds)?;
                let _ = audit.expect(cs.len() == ls.len(), || {
                    Error::ComultLawViolation(format!("{an} -> {bn}: {} coalgebras but {} lenses", cs.len(), ls.len()))
                });
                over += ls.len();
                coalgebras.extend(cs.items);
            }
            let mut row = BTreeMap::new();
            row.insert("source", json!(an));
            row.insert("base", json!(bn));
            row.insert("functors", json!(functors.len()));
            row.insert("cofunctors", json!(cofunctors.len()));
            row.insert("lenses", json!(lenses.len()));
            row.insert("coalgebras", json!(coalgebras.len()));
            row.insert("lenses_over_cofunctors", json!(over));
            row.insert("candidates", json!(functors.candidates + cofunctors.candidates + lenses.candidates));
            rows.push(row);

            if let Some(dir) = out {
                let dir = dir.join(format!("{an}--{bn}"));
                fs::create_dir_all(&dir).map_err(|e| Error::MalformedInput(format!("{}: {e}", dir.display())))?;
                let docs = functors
                    .items
                    .into_iter()
                    .map(|f: Functor| ("functor", Document::Functor(f)))
                    .chain(cofunctors.items.into_iter().map(|c| ("cofunctor", Document::Cofunctor(c))))
                    .chain(lenses.items.into_iter().map(|l| ("lens", Document::Lens(l))))
                    .chain(coalgebras.into_iter().map(|c| ("coalgebra", Document::Coalgebra(Box::new(c)))));
                let mut counters: BTreeMap<&str, usize> = BTreeMap::new();
                for (kind, doc) in docs {
                    let i = counters.entry(kind).or_default();
                    let path = dir.join(format!("{kind}-{i}{}", doc.kind().extension()));
                    *i += 1;
                    self.write(&path, &doc, &mut report)?;
                }
            }
        }
        self.add(&mut report, audit.into_checks());
        report.output = Some(json!(rows));
        Ok(report)
    }
}

fn wrong_kind(path: &Path, got: Kind, want: &str) -> Error {
    Error::MalformedInput(format!("{}: expected {want}, found a {} file", path.display(), got.extension()))
}
