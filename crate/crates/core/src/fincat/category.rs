use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{CategoryFault, Error, Result};
use crate::laws::{Audit, Audited, Flow, Mode};
use crate::names::{self, Cell};

/// Index of an object inside one [`FinCategory`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Obj(pub usize);

/// Index of a morphism inside one [`FinCategory`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mor(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: Obj,
    pub tgt: Obj,
}

/// Unchecked category description, as stored in `.cat.json` files.
///
/// Identities are implicit. A composite is listed as `[f, g, gf]` in
/// application order, so `gf` is `g` after `f`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCategory {
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
    #[serde(default)]
    pub morphisms: Vec<RawMorphism>,
    pub objects: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMorphism {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

impl RawMorphism {
    pub fn new(name: impl Into<String>, src: impl Into<String>, tgt: impl Into<String>) -> Self {
        Self { name: name.into(), src: src.into(), tgt: tgt.into() }
    }
}

/// A finite category with a total composition table.
///
/// Objects and morphisms are stored in lexicographic name order, so indices
/// and iteration order are deterministic. Equality is strict: same names,
/// same boundaries, same table.
#[derive(Debug, Clone)]
pub struct FinCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<Mor>,
    /// `comp[g * n + f]` is `g . f` when `src g == tgt f`.
    comp: Vec<Option<Mor>>,
    outgoing: Vec<Vec<Mor>>,
    object_index: HashMap<String, Obj>,
    morphism_index: HashMap<String, Mor>,
}

impl PartialEq for FinCategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects && self.arrows == other.arrows && self.comp == other.comp
    }
}

impl Eq for FinCategory {}

pub fn validate_category(raw: &RawCategory) -> Result<FinCategory> {
    audit_category(raw, Mode::FirstFailure)?.into_result()
}

/// Checks a raw description. Structural problems (bad names, dangling
/// references, ill-typed composites) are returned as `Err`; law failures
/// (unit laws, missing composites, associativity) are recorded in the audit.
pub fn audit_category(raw: &RawCategory, mode: Mode) -> Result<Audited<FinCategory>> {
    let mut objects = Vec::with_capacity(raw.objects.len());
    let mut seen = BTreeSet::new();
    for o in &raw.objects {
        names::check_identifier(o, Cell::Object)?;
        if !seen.insert(o.as_str()) {
            return Err(Error::category(CategoryFault::DuplicateName, format!("object `{o}` declared twice")));
        }
        objects.push(o.clone());
    }
    objects.sort();
    let object_index: HashMap<String, Obj> = objects.iter().enumerate().map(|(i, o)| (o.clone(), Obj(i))).collect();
    let find_obj = |name: &str, ctx: &str| {
        object_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::category(CategoryFault::Dangling, format!("{ctx} refers to unknown object `{name}`")))
    };

    let mut arrows = Vec::with_capacity(raw.morphisms.len() + objects.len());
    let mut seen = BTreeSet::new();
    for m in &raw.morphisms {
        names::check_identifier(&m.name, Cell::Morphism)?;
        if m.name.starts_with(names::IDENTITY_PREFIX) {
            return Err(Error::category(
                CategoryFault::ReservedName,
                format!("morphism `{}` uses the reserved prefix `{}`", m.name, names::IDENTITY_PREFIX),
            ));
        }
        if !seen.insert(m.name.as_str()) {
            return Err(Error::category(CategoryFault::DuplicateName, format!("morphism `{}` declared twice", m.name)));
        }
        let ctx = format!("morphism `{}`", m.name);
        arrows.push(Arrow { name: m.name.clone(), src: find_obj(&m.src, &ctx)?, tgt: find_obj(&m.tgt, &ctx)? });
    }
    for (i, o) in objects.iter().enumerate() {
        arrows.push(Arrow { name: names::identity(o), src: Obj(i), tgt: Obj(i) });
    }
    arrows.sort_by(|a, b| a.name.cmp(&b.name));
    let morphism_index: HashMap<String, Mor> = arrows.iter().enumerate().map(|(i, a)| (a.name.clone(), Mor(i))).collect();
    let identities: Vec<Mor> = objects.iter().map(|o| morphism_index[&names::identity(o)]).collect();

    let n = arrows.len();
    let find_mor = |name: &str| {
        morphism_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::category(CategoryFault::Dangling, format!("composite entry refers to unknown morphism `{name}`")))
    };
    let mut declared: HashMap<(Mor, Mor), Mor> = HashMap::new();
    for [f, g, gf] in &raw.compose {
        let (fm, gm, gfm) = (find_mor(f)?, find_mor(g)?, find_mor(gf)?);
        let (fa, ga, gfa) = (&arrows[fm.0], &arrows[gm.0], &arrows[gfm.0]);
        if ga.src != fa.tgt {
            return Err(Error::category(
                CategoryFault::IllTypedComposite,
                format!("[{f}, {g}, {gf}]: `{g}` does not start where `{f}` ends"),
            ));
        }
        if gfa.src != fa.src || gfa.tgt != ga.tgt {
            return Err(Error::category(
                CategoryFault::IllTypedComposite,
                format!("[{f}, {g}, {gf}]: `{gf}` must run from `{}` to `{}`", objects[fa.src.0], objects[ga.tgt.0]),
            ));
        }
        if let Some(prev) = declared.insert((gm, fm), gfm) {
            if prev != gfm {
                return Err(Error::category(
                    CategoryFault::ConflictingComposite,
                    format!("{g} . {f} declared as both `{}` and `{gf}`", arrows[prev.0].name),
                ));
            }
        }
    }

    let mut outgoing = vec![Vec::new(); objects.len()];
    for (i, a) in arrows.iter().enumerate() {
        outgoing[a.src.0].push(Mor(i));
    }

    let mut cat = FinCategory { objects, arrows, identities, comp: vec![None; n * n], outgoing, object_index, morphism_index };
    let mut audit = Audit::new(mode);
    let _ = cat.fill_and_check(&declared, &mut audit);
    Ok(audit.conclude(|| cat))
}

impl FinCategory {
    fn fill_and_check(&mut self, declared: &HashMap<(Mor, Mor), Mor>, audit: &mut Audit) -> Flow {
        let n = self.arrows.len();
        for (&(g, f), &gf) in declared {
            self.comp[g.0 * n + f.0] = Some(gf);
        }

        audit.law("identity laws");
        for i in 0..n {
            let f = Mor(i);
            let left = self.identities[self.arrows[i].tgt.0];
            let right = self.identities[self.arrows[i].src.0];
            for (g, h, side) in [(left, f, "left"), (f, right, "right")] {
                let got = self.comp[g.0 * n + h.0];
                audit.expect(got.is_none() || got == Some(f), || {
                    Error::category(
                        CategoryFault::Unit,
                        format!(
                            "{side} unit law for `{}`: `{} . {}` declared as `{}`",
                            self.arrows[i].name,
                            self.arrows[g.0].name,
                            self.arrows[h.0].name,
                            self.arrows[got.unwrap().0].name
                        ),
                    )
                })?;
                self.comp[g.0 * n + h.0] = Some(f);
            }
        }

        audit.law("composites defined");
        for f in 0..n {
            for &g in &self.outgoing[self.arrows[f].tgt.0] {
                audit.expect(self.comp[g.0 * n + f].is_some(), || {
                    Error::category(
                        CategoryFault::MissingComposite,
                        format!("no composite for `{}` after `{}`", self.arrows[g.0].name, self.arrows[f].name),
                    )
                })?;
            }
        }

        audit.law("associativity");
        for f in 0..n {
            for &g in &self.outgoing[self.arrows[f].tgt.0] {
                for &h in &self.outgoing[self.arrows[g.0].tgt.0] {
                    let gf = self.comp[g.0 * n + f];
                    let hg = self.comp[h.0 * n + g.0];
                    let (Some(gf), Some(hg)) = (gf, hg) else { continue };
                    let lhs = self.comp[h.0 * n + gf.0];
                    let rhs = self.comp[hg.0 * n + f];
                    audit.expect(lhs.is_some() && lhs == rhs, || {
                        let show = |m: Option<Mor>| m.map_or("undefined", |m| self.arrows[m.0].name.as_str()).to_owned();
                        Error::category(
                            CategoryFault::Associativity,
                            format!(
                                "(f, g, h) = ({}, {}, {}): h . (g . f) = {} but (h . g) . f = {}",
                                self.arrows[f].name,
                                self.arrows[g.0].name,
                                self.arrows[h.0].name,
                                show(lhs),
                                show(rhs)
                            ),
                        )
                    })?;
                }
            }
        }
        Flow::Continue(())
    }

    /// Builds a category from a description that is correct by construction.
    pub(crate) fn assemble(raw: &RawCategory) -> Arc<FinCategory> {
        match validate_category(raw) {
            Ok(c) => Arc::new(c),
            Err(e) => panic!("constructed category is invalid: {e}"),
        }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> impl ExactSizeIterator<Item = Obj> + Clone {
        (0..self.objects.len()).map(Obj)
    }

    pub fn morphisms(&self) -> impl ExactSizeIterator<Item = Mor> + Clone {
        (0..self.arrows.len()).map(Mor)
    }

    pub fn object_name(&self, a: Obj) -> &str {
        &self.objects[a.0]
    }

    pub fn morphism_name(&self, m: Mor) -> &str {
        &self.arrows[m.0].name
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn arrow(&self, m: Mor) -> &Arrow {
        &self.arrows[m.0]
    }

    pub fn src(&self, m: Mor) -> Obj {
        self.arrows[m.0].src
    }

    pub fn tgt(&self, m: Mor) -> Obj {
        self.arrows[m.0].tgt
    }

    pub fn identity(&self, a: Obj) -> Mor {
        self.identities[a.0]
    }

    pub fn is_identity(&self, m: Mor) -> bool {
        self.identities[self.src(m).0] == m
    }

    /// Morphisms with source `a`, in name order.
    pub fn outgoing(&self, a: Obj) -> &[Mor] {
        &self.outgoing[a.0]
    }

    pub fn hom(&self, a: Obj, b: Obj) -> impl Iterator<Item = Mor> + '_ {
        self.outgoing[a.0].iter().copied().filter(move |&m| self.tgt(m) == b)
    }

    pub fn hom_size(&self, a: Obj, b: Obj) -> usize {
        self.hom(a, b).count()
    }

    /// `g . f`, or `None` when `src g != tgt f`.
    pub fn comp(&self, g: Mor, f: Mor) -> Option<Mor> {
        self.comp[g.0 * self.arrows.len() + f.0]
    }

    pub fn compose(&self, g: Mor, f: Mor) -> Result<Mor> {
        self.comp(g, f).ok_or_else(|| Error::NotComposable {
            g: self.morphism_name(g).to_owned(),
            f: self.morphism_name(f).to_owned(),
        })
    }

    /// Name-level composition: `g` after `f`.
    pub fn compose_named(&self, g: &str, f: &str) -> Result<&str> {
        let m = self.compose(self.mor(g)?, self.mor(f)?)?;
        Ok(self.morphism_name(m))
    }

    pub fn obj(&self, name: &str) -> Result<Obj> {
        self.object_index.get(name).copied().ok_or_else(|| Error::UnknownObject(name.to_owned()))
    }

    pub fn mor(&self, name: &str) -> Result<Mor> {
        self.morphism_index.get(name).copied().ok_or_else(|| Error::UnknownMorphism(name.to_owned()))
    }

    /// Canonical description: identities implicit, composites listed only for
    /// pairs of non-identities, everything sorted.
    pub fn to_raw(&self) -> RawCategory {
        let mut morphisms: Vec<RawMorphism> = self
            .morphisms()
            .filter(|&m| !self.is_identity(m))
            .map(|m| RawMorphism::new(self.morphism_name(m), self.object_name(self.src(m)), self.object_name(self.tgt(m))))
            .collect();
        morphisms.sort();
        let mut compose = Vec::new();
        for f in self.morphisms().filter(|&m| !self.is_identity(m)) {
            for &g in self.outgoing(self.tgt(f)) {
                if self.is_identity(g) {
                    continue;
                }
                let gf = self.comp(g, f).expect("validated categories have total composition");
                compose.push([f, g, gf].map(|m| self.morphism_name(m).to_owned()));
            }
        }
        compose.sort();
        RawCategory { compose, morphisms, objects: self.objects.clone() }
    }

    /// Renames objects (and their identities); other morphism names are kept.
    pub fn rename_objects(&self, rename: impl Fn(&str) -> String) -> Result<FinCategory> {
        let raw = self.to_raw();
        let objects = raw.objects.iter().map(|o| rename(o)).collect();
        let morphisms = raw
            .morphisms
            .iter()
            .map(|m| RawMorphism::new(m.name.clone(), rename(&m.src), rename(&m.tgt)))
            .collect();
        let identity_renames: HashMap<String, String> =
            raw.objects.iter().map(|o| (names::identity(o), names::identity(&rename(o)))).collect();
        let compose = raw
            .compose
            .iter()
            .map(|t| t.clone().map(|m| identity_renames.get(&m).cloned().unwrap_or(m)))
            .collect();
        validate_category(&RawCategory { compose, morphisms, objects })
    }
}

impl fmt::Display for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "category with {} objects and {} morphisms", self.object_count(), self.morphism_count())
    }
}
