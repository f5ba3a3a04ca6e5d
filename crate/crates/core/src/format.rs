//! JSON files for every structure, and their canonical serialized form.
//!
//! | extension     | contents                                   |
//! |---------------|--------------------------------------------|
//! | `.cat.json`   | a category                                 |
//! | `.fun.json`   | a functor                                  |
//! | `.cof.json`   | a cofunctor                                |
//! | `.lens.json`  | a delta lens                               |
//! | `.coalg.json` | a coalgebra structure on a cofunctor        |
//!
//! Categories and cofunctors referenced from another file are either
//! inlined or given as a path relative to the referencing file. Identities
//! may be left out of morphism maps; lift tables list every applicable
//! pair, identities included.
//!
//! The canonical form inlines every reference, sorts keys and arrays, omits
//! identities from morphism maps, and ends with a single newline.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::cofree::{audit_coalgebra_in, cofree_lens, Coalgebra};
use crate::cofunctor::{audit_cofunctor, Cofunctor, LiftTable};
use crate::error::{Error, Result};
use crate::fincat::{audit_category, audit_functor, FinCategory, Functor, Obj, RawCategory};
use crate::laws::{Audited, LawCheck, Mode};
use crate::lens::{audit_lens, DeltaLens};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CategoryRef {
    Path(String),
    Inline(RawCategory),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftEntry {
    pub at: String,
    pub chosen: String,
    pub over: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorFile {
    pub base: CategoryRef,
    #[serde(default)]
    pub morphism_map: BTreeMap<String, String>,
    pub object_map: BTreeMap<String, String>,
    pub source: CategoryRef,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CofunctorFile {
    pub base: CategoryRef,
    #[serde(default)]
    pub lifts: Vec<LiftEntry>,
    pub object_map: BTreeMap<String, String>,
    pub source: CategoryRef,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LensFile {
    pub get: FunctorFile,
    #[serde(default)]
    pub puts: Vec<LiftEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CofunctorRef {
    Path(String),
    Inline(CofunctorFile),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoalgebraFile {
    #[serde(default)]
    pub carrier_morphism_map: BTreeMap<String, String>,
    pub carrier_object_map: BTreeMap<String, String>,
    pub cofunctor: CofunctorRef,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Category,
    Functor,
    Cofunctor,
    Lens,
    Coalgebra,
}

impl Kind {
    pub const ALL: [Kind; 5] = [Kind::Category, Kind::Functor, Kind::Cofunctor, Kind::Lens, Kind::Coalgebra];

    pub fn extension(self) -> &'static str {
        match self {
            Kind::Category => ".cat.json",
            Kind::Functor => ".fun.json",
            Kind::Cofunctor => ".cof.json",
            Kind::Lens => ".lens.json",
            Kind::Coalgebra => ".coalg.json",
        }
    }

    pub fn from_path(path: &Path) -> Result<Kind> {
        let name = path.file_name().and_then(|n| n.to_str()).unwrap_or_default();
        Kind::ALL.into_iter().find(|k| name.ends_with(k.extension())).ok_or_else(|| {
            Error::MalformedInput(format!("{}: unrecognised extension, expected one of .cat/.fun/.cof/.lens/.coalg.json", path.display()))
        })
    }
}

/// Any value that can live in a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Category(Arc<FinCategory>),
    Functor(Functor),
    Cofunctor(Cofunctor),
    Lens(DeltaLens),
    Coalgebra(Box<Coalgebra>),
}

impl Document {
    pub fn kind(&self) -> Kind {
        match self {
            Document::Category(_) => Kind::Category,
            Document::Functor(_) => Kind::Functor,
            Document::Cofunctor(_) => Kind::Cofunctor,
            Document::Lens(_) => Kind::Lens,
            Document::Coalgebra(_) => Kind::Coalgebra,
        }
    }

    /// The canonical serialized form.
    pub fn to_canonical_json(&self) -> String {
        match self {
            Document::Category(c) => canonical(&c.to_raw()),
            Document::Functor(f) => canonical(&functor_file(f)),
            Document::Cofunctor(phi) => canonical(&cofunctor_file(phi)),
            Document::Lens(l) => canonical(&lens_file(l)),
            Document::Coalgebra(c) => canonical(&coalgebra_file(c)),
        }
    }
}

fn canonical<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("file types always serialize");
    s.push('\n');
    s
}

fn malformed(path: &Path, what: impl std::fmt::Display) -> Error {
    Error::MalformedInput(format!("{}: {what}", path.display()))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| malformed(path, e))?;
    serde_json::from_str(&text).map_err(|e| malformed(path, e))
}

/// Reads and validates a file; the first failed law becomes the error.
pub fn load(path: impl AsRef<Path>) -> Result<Document> {
    audit_file(path, Mode::FirstFailure)?.into_result()
}

/// Reads a file and audits every law of the value and of everything it
/// references. Unreadable or ill-formed input is an `Err`.
pub fn audit_file(path: impl AsRef<Path>, mode: Mode) -> Result<Audited<Document>> {
    let path = path.as_ref();
    let mut loader = Loader { mode, checks: Vec::new() };
    let value = loader.document(path)?;
    Ok(Audited { value: if loader.checks.iter().all(LawCheck::passed) { value } else { None }, checks: loader.checks })
}

/// Parses a document from a string, resolving relative paths against `dir`.
pub fn parse_str(text: &str, kind: Kind, dir: &Path) -> Result<Document> {
    let mut loader = Loader { mode: Mode::FirstFailure, checks: Vec::new() };
    let origin = dir.join(format!("<input>{}", kind.extension()));
    let value = loader.parse(text, kind, &origin)?;
    Audited { value: if loader.checks.iter().all(LawCheck::passed) { value } else { None }, checks: loader.checks }.into_result()
}

pub fn write(path: impl AsRef<Path>, doc: &Document) -> Result<()> {
    let path = path.as_ref();
    let kind = Kind::from_path(path)?;
    if kind != doc.kind() {
        return Err(malformed(path, format!("extension does not match the value, expected {}", doc.kind().extension())));
    }
    fs::write(path, doc.to_canonical_json()).map_err(|e| malformed(path, e))
}

struct Loader {
    mode: Mode,
    checks: Vec<LawCheck>,
}

fn dir_of(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

impl Loader {
    fn absorb(&mut self, role: &str, checks: Vec<LawCheck>) {
        self.checks.extend(checks.into_iter().map(|mut c| {
            c.law = format!("{role}: {}", c.law);
            c
        }));
    }

    fn document(&mut self, path: &Path) -> Result<Option<Document>> {
        let kind = Kind::from_path(path)?;
        let text = fs::read_to_string(path).map_err(|e| malformed(path, e))?;
        self.parse(&text, kind, path)
    }

    fn parse(&mut self, text: &str, kind: Kind, path: &Path) -> Result<Option<Document>> {
        let de = |e: serde_json::Error| malformed(path, e);
        let dir = dir_of(path);
        Ok(match kind {
            Kind::Category => {
                let raw: RawCategory = serde_json::from_str(text).map_err(de)?;
                self.category(&CategoryRef::Inline(raw), &dir, "category")?.map(Document::Category)
            }
            Kind::Functor => {
                let file: FunctorFile = serde_json::from_str(text).map_err(de)?;
                self.functor(&file, &dir)?.map(Document::Functor)
            }
            Kind::Cofunctor => {
                let file: CofunctorFile = serde_json::from_str(text).map_err(de)?;
                self.cofunctor(&file, &dir)?.map(Document::Cofunctor)
            }
            Kind::Lens => {
                let file: LensFile = serde_json::from_str(text).map_err(de)?;
                self.lens(&file, &dir)?.map(Document::Lens)
            }
            Kind::Coalgebra => {
                let file: CoalgebraFile = serde_json::from_str(text).map_err(de)?;
                self.coalgebra(&file, &dir)?.map(|c| Document::Coalgebra(Box::new(c)))
            }
        })
    }

    fn category(&mut self, r: &CategoryRef, dir: &Path, role: &str) -> Result<Option<Arc<FinCategory>>> {
        let raw = match r {
            CategoryRef::Inline(raw) => raw.clone(),
            CategoryRef::Path(p) => read_json(&dir.join(p))?,
        };
        let audited = audit_category(&raw, self.mode)?;
        self.absorb(role, audited.checks);
        Ok(audited.value.map(Arc::new))
    }

    fn pair(&mut self, source: &CategoryRef, base: &CategoryRef, dir: &Path) -> Result<Option<(Arc<FinCategory>, Arc<FinCategory>)>> {
        let a = self.category(source, dir, "source")?;
        let b = self.category(base, dir, "base")?;
        Ok(a.zip(b))
    }

    fn functor(&mut self, file: &FunctorFile, dir: &Path) -> Result<Option<Functor>> {
        let Some((a, b)) = self.pair(&file.source, &file.base, dir)? else { return Ok(None) };
        let (obj_map, mor_map) = resolve_maps(&a, &b, &file.object_map, &file.morphism_map)?;
        let audited = audit_functor(a, b, obj_map, mor_map, self.mode)?;
        self.absorb("functor", audited.checks);
        Ok(audited.value)
    }

    fn cofunctor(&mut self, file: &CofunctorFile, dir: &Path) -> Result<Option<Cofunctor>> {
        let Some((a, b)) = self.pair(&file.source, &file.base, dir)? else { return Ok(None) };
        let obj_map = resolve_objects(&a, &b, &file.object_map)?;
        let lifts = resolve_lifts(&a, &b, &obj_map, &file.lifts)?;
        let audited = audit_cofunctor(a, b, obj_map, lifts, self.mode)?;
        self.absorb("cofunctor", audited.checks);
        Ok(audited.value)
    }

    fn lens(&mut self, file: &LensFile, dir: &Path) -> Result<Option<DeltaLens>> {
        let Some(get) = self.functor(&file.get, dir)? else { return Ok(None) };
        let puts = resolve_lifts(get.source(), get.target(), get.obj_map(), &file.puts)?;
        let audited = audit_lens(get, puts, self.mode)?;
        self.absorb("lens", audited.checks);
        Ok(audited.value)
    }

    fn coalgebra(&mut self, file: &CoalgebraFile, dir: &Path) -> Result<Option<Coalgebra>> {
        let phi = match &file.cofunctor {
            CofunctorRef::Inline(inner) => self.cofunctor(inner, dir)?,
            CofunctorRef::Path(p) => {
                let path = dir.join(p);
                let inner: CofunctorFile = read_json(&path)?;
                self.cofunctor(&inner, &dir_of(&path))?
            }
        };
        let Some(phi) = phi else { return Ok(None) };
        let cofree = cofree_lens(&phi);
        let (obj_map, mor_map) = resolve_maps(phi.source(), cofree.apex(), &file.carrier_object_map, &file.carrier_morphism_map)?;
        let carrier = audit_functor(phi.source().clone(), cofree.apex().clone(), obj_map, mor_map, self.mode)?;
        self.absorb("carrier", carrier.checks);
        let Some(carrier) = carrier.value else { return Ok(None) };
        let audited = audit_coalgebra_in(&cofree, &carrier, self.mode)?;
        self.absorb("coalgebra", audited.checks);
        Ok(audited.value)
    }
}

fn resolve_objects(a: &FinCategory, b: &FinCategory, map: &BTreeMap<String, String>) -> Result<Vec<Obj>> {
    for k in map.keys() {
        a.obj(k)?;
    }
    a.objects()
        .map(|x| {
            let name = a.object_name(x);
            let image = map.get(name).ok_or_else(|| Error::MalformedInput(format!("object map has no entry for `{name}`")))?;
            b.obj(image)
        })
        .collect()
}

fn resolve_maps(
    a: &FinCategory,
    b: &FinCategory,
    objects: &BTreeMap<String, String>,
    morphisms: &BTreeMap<String, String>,
) -> Result<(Vec<Obj>, Vec<crate::fincat::Mor>)> {
    let obj_map = resolve_objects(a, b, objects)?;
    for k in morphisms.keys() {
        a.mor(k)?;
    }
    let mor_map = a
        .morphisms()
        .map(|w| match morphisms.get(a.morphism_name(w)) {
            Some(image) => b.mor(image),
            None if a.is_identity(w) => Ok(b.identity(obj_map[a.src(w).0])),
            None => Err(Error::MalformedInput(format!("morphism map has no entry for `{}`", a.morphism_name(w)))),
        })
        .collect::<Result<_>>()?;
    Ok((obj_map, mor_map))
}

fn resolve_lifts(a: &FinCategory, b: &FinCategory, obj_map: &[Obj], entries: &[LiftEntry]) -> Result<LiftTable> {
    LiftTable::from_named(a, b, obj_map, entries.iter().map(|e| (e.at.as_str(), e.over.as_str(), e.chosen.as_str())))
}

fn inline(c: &FinCategory) -> CategoryRef {
    CategoryRef::Inline(c.to_raw())
}

fn object_map(f: &Functor) -> BTreeMap<String, String> {
    f.source().objects().map(|x| (f.source().object_name(x).to_owned(), f.target().object_name(f.obj(x)).to_owned())).collect()
}

fn morphism_map(f: &Functor) -> BTreeMap<String, String> {
    let (a, b) = (f.source(), f.target());
    a.morphisms()
        .filter(|&w| !a.is_identity(w))
        .map(|w| (a.morphism_name(w).to_owned(), b.morphism_name(f.mor(w)).to_owned()))
        .collect()
}

fn lift_entries(a: &FinCategory, b: &FinCategory, table: &LiftTable) -> Vec<LiftEntry> {
    let mut entries: Vec<LiftEntry> = table
        .rows()
        .map(|(x, u, w)| LiftEntry {
            at: a.object_name(x).to_owned(),
            chosen: a.morphism_name(w).to_owned(),
            over: b.morphism_name(u).to_owned(),
        })
        .collect();
    entries.sort();
    entries
}

pub fn functor_file(f: &Functor) -> FunctorFile {
    FunctorFile { base: inline(f.target()), morphism_map: morphism_map(f), object_map: object_map(f), source: inline(f.source()) }
}

pub fn cofunctor_file(phi: &Cofunctor) -> CofunctorFile {
    let (a, b) = (phi.source(), phi.base());
    CofunctorFile {
        base: inline(b),
        lifts: lift_entries(a, b, phi.lifts()),
        object_map: a.objects().map(|x| (a.object_name(x).to_owned(), b.object_name(phi.obj(x)).to_owned())).collect(),
        source: inline(a),
    }
}

pub fn lens_file(l: &DeltaLens) -> LensFile {
    LensFile { get: functor_file(l.get_functor()), puts: lift_entries(l.source(), l.base(), l.puts()) }
}

pub fn coalgebra_file(c: &Coalgebra) -> CoalgebraFile {
    CoalgebraFile {
        carrier_morphism_map: morphism_map(c.carrier()),
        carrier_object_map: object_map(c.carrier()),
        cofunctor: CofunctorRef::Inline(cofunctor_file(c.cofunctor())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn category_round_trip() {
        for (_, c) in fixtures::all() {
            let doc = Document::Category(c);
            let text = doc.to_canonical_json();
            let back = parse_str(&text, Kind::Category, Path::new(".")).unwrap();
            assert_eq!(back, doc);
            assert_eq!(back.to_canonical_json(), text);
            assert!(text.ends_with("}\n"));
        }
    }

    #[test]
    fn lens_round_trip() {
        let doc = Document::Lens(DeltaLens::identity(&fixtures::idempotent()));
        let text = doc.to_canonical_json();
        let back = parse_str(&text, Kind::Lens, Path::new(".")).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_canonical_json(), text);
    }

    #[test]
    fn unknown_source_object() {
        let text = r#"{"objects": ["0"], "morphisms": [{"name": "u", "src": "0", "tgt": "9"}]}"#;
        let err = parse_str(text, Kind::Category, Path::new(".")).unwrap_err();
        assert!(err.is_malformed(), "{err}");
    }

    #[test]
    fn syntax_errors_carry_a_position() {
        let err = parse_str("{\"objects\": [\n", Kind::Category, Path::new(".")).unwrap_err();
        assert!(matches!(&err, Error::MalformedInput(m) if m.contains("line 2")), "{err}");
    }

    #[test]
    fn extensions() {
        assert_eq!(Kind::from_path(Path::new("a/b.lens.json")).unwrap(), Kind::Lens);
        assert!(Kind::from_path(Path::new("b.json")).is_err());
    }
}
