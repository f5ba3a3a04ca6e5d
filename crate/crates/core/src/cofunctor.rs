//! Cofunctors, in both presentations, and the category `Cof(B)`.
//!
//! A cofunctor `phi: A -/-> B` is an object map `phi_0: A_0 -> B_0` with a
//! lifting operation `phi(a, u)` for every `u: phi_0 a -> b`, subject to
//!
//! 1. `phi_0(tgt phi(a, u)) = tgt u`
//! 2. `phi(a, id) = id_a`
//! 3. `phi(a, v . u) = phi(a', v) . phi(a, u)` where `a' = tgt phi(a, u)`.
//!
//! Equivalently it is a span `A <- X -> B` whose left leg is bijective on
//! objects and whose right leg is a discrete opfibration; [`to_span`] and
//! [`from_span`] convert between the two.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{coproduct_cat, same_category, Coproduct, FinCategory, Functor, Mor, Obj, RawCategory, RawMorphism};
use crate::laws::{Audit, Audited, Flow, Mode};
use crate::names;

/// Dense table of chosen lifts, keyed by `(source object, base morphism)`.
///
/// Only applicable pairs (`src u = phi_0 a`) ever hold an entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftTable {
    stride: usize,
    chosen: Vec<Option<Mor>>,
}

impl LiftTable {
    pub fn new(source_objects: usize, base_morphisms: usize) -> Self {
        Self { stride: base_morphisms, chosen: vec![None; source_objects * base_morphisms] }
    }

    pub fn get(&self, a: Obj, u: Mor) -> Option<Mor> {
        self.chosen.get(a.0 * self.stride + u.0).copied().flatten()
    }

    /// Returns the previous entry, if any.
    pub fn set(&mut self, a: Obj, u: Mor, w: Mor) -> Option<Mor> {
        self.chosen[a.0 * self.stride + u.0].replace(w)
    }

    /// Entries `(a, u, chosen)` in index order.
    pub fn rows(&self) -> impl Iterator<Item = (Obj, Mor, Mor)> + '_ {
        self.chosen
            .iter()
            .enumerate()
            .filter_map(move |(i, w)| w.map(|w| (Obj(i / self.stride), Mor(i % self.stride), w)))
    }

    pub fn len(&self) -> usize {
        self.chosen.iter().filter(|w| w.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn dims(&self) -> (usize, usize) {
        self.chosen.len().checked_div(self.stride).map_or((0, 0), |rows| (rows, self.stride))
    }

    /// Builds a table from named `(at, over, chosen)` triples, rejecting
    /// unknown names, duplicate keys and pairs that are not applicable.
    pub fn from_named<'a>(
        source: &FinCategory,
        base: &FinCategory,
        obj_map: &[Obj],
        entries: impl IntoIterator<Item = (&'a str, &'a str, &'a str)>,
    ) -> Result<LiftTable> {
        let mut table = LiftTable::new(source.object_count(), base.morphism_count());
        for (at, over, chosen) in entries {
            let (a, u, w) = (source.obj(at)?, base.mor(over)?, source.mor(chosen)?);
            if base.src(u) != obj_map[a.0] {
                return Err(Error::NotApplicable(format!(
                    "`{over}` starts at `{}`, not at the image `{}` of `{at}`",
                    base.object_name(base.src(u)),
                    base.object_name(obj_map[a.0])
                )));
            }
            if table.set(a, u, w).is_some() {
                return Err(Error::MalformedInput(format!("lift at `{at}` over `{over}` given twice")));
            }
        }
        Ok(table)
    }
}

pub(crate) fn pair_witness(source: &FinCategory, base: &FinCategory, a: Obj, u: Mor) -> String {
    format!("(a, u) = ({}, {})", source.object_name(a), base.morphism_name(u))
}

/// Shared structural checks on an object map and lift table.
pub(crate) fn check_table_shape(source: &FinCategory, base: &FinCategory, obj_map: &[Obj], lifts: &LiftTable) -> Result<()> {
    if obj_map.len() != source.object_count() || obj_map.iter().any(|o| o.0 >= base.object_count()) {
        return Err(Error::MalformedInput("object map must send every source object to a base object".into()));
    }
    if lifts.dims() != (source.object_count(), base.morphism_count()) && !(lifts.chosen.is_empty() && source.object_count() == 0) {
        return Err(Error::MalformedInput("lift table has the wrong shape".into()));
    }
    for (a, u, w) in lifts.rows() {
        if w.0 >= source.morphism_count() {
            return Err(Error::MalformedInput("lift table chooses a morphism outside the source".into()));
        }
        if base.src(u) != obj_map[a.0] {
            return Err(Error::NotApplicable(pair_witness(source, base, a, u)));
        }
    }
    Ok(())
}

/// The three lifting axioms. With `get` present, axiom (1) is the delta-lens
/// form `f(phi(a, u)) = u`; otherwise the cofunctor form on targets.
pub(crate) fn check_lifting_laws(
    source: &FinCategory,
    base: &FinCategory,
    obj_map: &[Obj],
    lifts: &LiftTable,
    get: Option<&Functor>,
    audit: &mut Audit,
) -> Flow {
    let pairs = || source.objects().flat_map(move |a| base.outgoing(obj_map[a.0]).iter().map(move |&u| (a, u)));

    audit.law("lift table total");
    for (a, u) in pairs() {
        audit.expect(lifts.get(a, u).is_some(), || Error::LiftMissing(pair_witness(source, base, a, u)))?;
    }

    audit.law("lift sources");
    for (a, u) in pairs() {
        let Some(w) = lifts.get(a, u) else { continue };
        audit.expect(source.src(w) == a, || {
            Error::LiftSource(format!("{}: chosen `{}` starts at `{}`", pair_witness(source, base, a, u), source.morphism_name(w), source.object_name(source.src(w))))
        })?;
    }

    match get {
        None => {
            audit.law("axiom 1: lifts end over the target");
            for (a, u) in pairs() {
                let Some(w) = lifts.get(a, u) else { continue };
                let end = obj_map[source.tgt(w).0];
                audit.expect(end == base.tgt(u), || {
                    Error::axiom(
                        1,
                        format!(
                            "{}: chosen `{}` ends at `{}` over `{}`, but `{}` ends at `{}`",
                            pair_witness(source, base, a, u),
                            source.morphism_name(w),
                            source.object_name(source.tgt(w)),
                            base.object_name(end),
                            base.morphism_name(u),
                            base.object_name(base.tgt(u))
                        ),
                    )
                })?;
            }
        }
        Some(f) => {
            audit.law("axiom 1 (PutGet): get(put(a, u)) = u");
            for (a, u) in pairs() {
                let Some(w) = lifts.get(a, u) else { continue };
                audit.expect(f.mor(w) == u, || {
                    Error::axiom(
                        1,
                        format!(
                            "{}: put = `{}` but get(put) = `{}`",
                            pair_witness(source, base, a, u),
                            source.morphism_name(w),
                            base.morphism_name(f.mor(w))
                        ),
                    )
                })?;
            }
        }
    }

    audit.law(if get.is_some() { "axiom 2 (PutId): put(a, id) = id" } else { "axiom 2: lifts of identities" });
    for a in source.objects() {
        let u = base.identity(obj_map[a.0]);
        let Some(w) = lifts.get(a, u) else { continue };
        audit.expect(w == source.identity(a), || {
            Error::axiom(2, format!("{}: chosen `{}` is not an identity", pair_witness(source, base, a, u), source.morphism_name(w)))
        })?;
    }

    audit.law(if get.is_some() { "axiom 3 (PutPut): put(a, v.u) = put(a', v).put(a, u)" } else { "axiom 3: lifts of composites" });
    for (a, u) in pairs() {
        for &v in base.outgoing(base.tgt(u)) {
            let vu = base.comp(v, u).expect("validated base");
            let lhs = lifts.get(a, vu);
            let first = lifts.get(a, u);
            let rhs = first.and_then(|w| lifts.get(source.tgt(w), v).and_then(|w2| source.comp(w2, w)));
            if lhs.is_none() || first.is_none() {
                continue;
            }
            audit.expect(lhs == rhs, || {
                let show = |m: Option<Mor>| m.map_or("undefined".to_owned(), |m| format!("`{}`", source.morphism_name(m)));
                Error::axiom(
                    3,
                    format!(
                        "(a, u, v) = ({}, {}, {}): lift of v.u is {} but composite of lifts is {}",
                        source.object_name(a),
                        base.morphism_name(u),
                        base.morphism_name(v),
                        show(lhs),
                        show(rhs)
                    ),
                )
            })?;
        }
    }
    Flow::Continue(())
}

/// A cofunctor `A -/-> B` in lifting-operation form.
#[derive(Debug, Clone)]
pub struct Cofunctor {
    source: Arc<FinCategory>,
    base: Arc<FinCategory>,
    obj_map: Vec<Obj>,
    lifts: LiftTable,
}

impl PartialEq for Cofunctor {
    fn eq(&self, other: &Self) -> bool {
        self.obj_map == other.obj_map
            && self.lifts == other.lifts
            && same_category(&self.source, &other.source)
            && same_category(&self.base, &other.base)
    }
}

impl Eq for Cofunctor {}

pub fn validate_cofunctor(source: Arc<FinCategory>, base: Arc<FinCategory>, obj_map: Vec<Obj>, lifts: LiftTable) -> Result<Cofunctor> {
    audit_cofunctor(source, base, obj_map, lifts, Mode::FirstFailure)?.into_result()
}

pub fn audit_cofunctor(
    source: Arc<FinCategory>,
    base: Arc<FinCategory>,
    obj_map: Vec<Obj>,
    lifts: LiftTable,
    mode: Mode,
) -> Result<Audited<Cofunctor>> {
    check_table_shape(&source, &base, &obj_map, &lifts)?;
    let mut audit = Audit::new(mode);
    let _ = check_lifting_laws(&source, &base, &obj_map, &lifts, None, &mut audit);
    Ok(audit.conclude(|| Cofunctor { source, base, obj_map, lifts }))
}

impl Cofunctor {
    /// Used where the laws are known to hold by construction.
    pub(crate) fn from_parts_unchecked(source: Arc<FinCategory>, base: Arc<FinCategory>, obj_map: Vec<Obj>, lifts: LiftTable) -> Self {
        Self { source, base, obj_map, lifts }
    }

    /// The trivial cofunctor `1_B`: `phi(b, u) = u`.
    pub fn identity(base: &Arc<FinCategory>) -> Cofunctor {
        let mut lifts = LiftTable::new(base.object_count(), base.morphism_count());
        for u in base.morphisms() {
            lifts.set(base.src(u), u, u);
        }
        Cofunctor { source: base.clone(), base: base.clone(), obj_map: base.objects().collect(), lifts }
    }

    pub fn source(&self) -> &Arc<FinCategory> {
        &self.source
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }

    pub fn obj(&self, a: Obj) -> Obj {
        self.obj_map[a.0]
    }

    pub fn obj_map(&self) -> &[Obj] {
        &self.obj_map
    }

    pub fn lifts(&self) -> &LiftTable {
        &self.lifts
    }

    /// `phi(a, u)`, or `None` when `src u != phi_0 a`.
    pub fn lift_at(&self, a: Obj, u: Mor) -> Option<Mor> {
        self.lifts.get(a, u)
    }

    pub fn lift(&self, a: &str, u: &str) -> Result<&str> {
        let (ai, ui) = (self.source.obj(a)?, self.base.mor(u)?);
        match self.lift_at(ai, ui) {
            Some(w) => Ok(self.source.morphism_name(w)),
            None => Err(Error::NotApplicable(format!(
                "`{u}` starts at `{}`, not at the image `{}` of `{a}`",
                self.base.object_name(self.base.src(ui)),
                self.base.object_name(self.obj(ai))
            ))),
        }
    }

    /// Re-runs every law on this cofunctor.
    pub fn audit(&self, mode: Mode) -> Vec<crate::laws::LawCheck> {
        let mut audit = Audit::new(mode);
        let _ = check_lifting_laws(&self.source, &self.base, &self.obj_map, &self.lifts, None, &mut audit);
        audit.into_checks()
    }
}

/// A cofunctor as a span `A <- X -> B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CofSpan {
    pub apex: Arc<FinCategory>,
    pub left: Functor,
    pub right: Functor,
}

impl CofSpan {
    /// The apex morphism out of the object over `a` lying over `u`.
    pub fn row(&self, a: Obj, u: Mor) -> Option<Mor> {
        let x = self.left.obj_map().iter().position(|&o| o == a)?;
        self.right.opfibration_lift(Obj(x), u)
    }
}

/// Apex objects are the source objects; the apex morphism for the row
/// `(a, u)` is named `(a,u)` (or `id_a` when `u` is an identity).
pub fn to_span(phi: &Cofunctor) -> CofSpan {
    let (a, b) = (&phi.source, &phi.base);
    let row_name = |x: Obj, u: Mor| {
        if b.is_identity(u) {
            names::identity(a.object_name(x))
        } else {
            names::pair(a.object_name(x), b.morphism_name(u))
        }
    };
    let rows: Vec<(Obj, Mor, Mor)> = phi.lifts.rows().collect();
    let mut raw = RawCategory { objects: a.object_names().to_vec(), ..Default::default() };
    for &(x, u, w) in &rows {
        if !b.is_identity(u) {
            raw.morphisms.push(RawMorphism::new(row_name(x, u), a.object_name(x), a.object_name(a.tgt(w))));
        }
    }
    for &(x, u, w) in &rows {
        let x2 = a.tgt(w);
        for &v in b.outgoing(b.tgt(u)) {
            let vu = b.comp(v, u).expect("validated base");
            raw.compose.push([row_name(x, u), row_name(x2, v), row_name(x, vu)]);
        }
    }
    let apex = FinCategory::assemble(&raw);
    let (mut lm, mut rm) = (vec![Mor(0); apex.morphism_count()], vec![Mor(0); apex.morphism_count()]);
    for &(x, u, w) in &rows {
        let m = apex.mor(&row_name(x, u)).expect("row morphism");
        lm[m.0] = w;
        rm[m.0] = u;
    }
    let left = Functor::assemble(apex.clone(), a.clone(), a.objects().collect(), lm);
    let right = Functor::assemble(apex.clone(), b.clone(), phi.obj_map.clone(), rm);
    CofSpan { apex, left, right }
}

pub fn from_span(span: &CofSpan) -> Result<Cofunctor> {
    if !same_category(span.left.source(), &span.apex) || !same_category(span.right.source(), &span.apex) {
        return Err(Error::BoundaryMismatch("span legs must start at the apex".into()));
    }
    if !span.left.is_bijective_on_objects() {
        return Err(Error::NotBoo(format!(
            "object map {:?} is not a bijection onto {} objects",
            span.left.obj_map().iter().map(|&o| span.left.target().object_name(o)).collect::<Vec<_>>(),
            span.left.target().object_count()
        )));
    }
    if let Some((x, u, n)) = span.right.first_opfibration_failure() {
        return Err(Error::NotDopf(format!(
            "`{}` at `{}` has {n} lifts",
            span.right.target().morphism_name(u),
            span.apex.object_name(x)
        )));
    }
    let (a, b) = (span.left.target().clone(), span.right.target().clone());
    let mut inverse = vec![Obj(0); a.object_count()];
    for x in span.apex.objects() {
        inverse[span.left.obj(x).0] = x;
    }
    let obj_map: Vec<Obj> = a.objects().map(|o| span.right.obj(inverse[o.0])).collect();
    let mut lifts = LiftTable::new(a.object_count(), b.morphism_count());
    for o in a.objects() {
        for &u in b.outgoing(obj_map[o.0]) {
            let w = span.right.opfibration_lift(inverse[o.0], u).expect("discrete opfibration");
            lifts.set(o, u, span.left.mor(w));
        }
    }
    validate_cofunctor(a, b, obj_map, lifts)
}

/// The isomorphism of apexes between two spans presenting the same
/// cofunctor, when one exists; it commutes with both legs.
pub fn span_isomorphism(s: &CofSpan, t: &CofSpan) -> Result<Functor> {
    let mut obj_map = Vec::new();
    for x in s.apex.objects() {
        let a = s.left.obj(x);
        let y = t
            .left
            .obj_map()
            .iter()
            .position(|&o| o == a)
            .ok_or_else(|| Error::NotBoo(format!("no apex object over `{}`", s.left.target().object_name(a))))?;
        obj_map.push(Obj(y));
    }
    let mut mor_map = Vec::new();
    for m in s.apex.morphisms() {
        let y = obj_map[s.apex.src(m).0];
        let n = t
            .right
            .opfibration_lift(y, s.right.mor(m))
            .ok_or_else(|| Error::NotDopf(format!("no unique lift of `{}`", s.apex.morphism_name(m))))?;
        mor_map.push(n);
    }
    let iso = crate::fincat::validate_functor(s.apex.clone(), t.apex.clone(), obj_map, mor_map)?;
    if !iso.is_bijective_on_objects() || !iso.is_bijective_on_morphisms() {
        return Err(Error::BoundaryMismatch("apex comparison is not bijective".into()));
    }
    if t.left.after(&iso)? != s.left || t.right.after(&iso)? != s.right {
        return Err(Error::BoundaryMismatch("apex comparison does not commute with the legs".into()));
    }
    Ok(iso)
}

/// A morphism of `Cof(B)`: a functor between sources preserving object
/// maps and chosen lifts. Only the carrier is stored; the apex functor is
/// recomputed on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CofMorphism {
    from: Cofunctor,
    to: Cofunctor,
    carrier: Functor,
}

pub fn validate_cof_morphism(carrier: &Functor, from: &Cofunctor, to: &Cofunctor) -> Result<CofMorphism> {
    audit_cof_morphism(carrier, from, to, Mode::FirstFailure)?.into_result()
}

pub fn audit_cof_morphism(carrier: &Functor, from: &Cofunctor, to: &Cofunctor, mode: Mode) -> Result<Audited<CofMorphism>> {
    check_cof_boundaries(carrier, from, to)?;
    let mut audit = Audit::new(mode);
    let _ = check_cof_morphism_laws(carrier, from, to, &mut audit);
    Ok(audit.conclude(|| CofMorphism { from: from.clone(), to: to.clone(), carrier: carrier.clone() }))
}

fn check_cof_boundaries(carrier: &Functor, from: &Cofunctor, to: &Cofunctor) -> Result<()> {
    if !same_category(&from.base, &to.base) {
        return Err(Error::BoundaryMismatch("cofunctors have different bases".into()));
    }
    if !same_category(carrier.source(), &from.source) || !same_category(carrier.target(), &to.source) {
        return Err(Error::BoundaryMismatch("carrier does not run between the two sources".into()));
    }
    Ok(())
}

pub(crate) fn check_cof_morphism_laws(h: &Functor, from: &Cofunctor, to: &Cofunctor, audit: &mut Audit) -> Flow {
    let (a, c, b) = (&from.source, &to.source, &from.base);
    audit.law("object maps commute: gamma_0(h a) = phi_0(a)");
    for x in a.objects() {
        audit.expect(to.obj(h.obj(x)) == from.obj(x), || {
            Error::ObjectMapMismatch(format!(
                "`{}` lies over `{}` but h sends it to `{}` over `{}`",
                a.object_name(x),
                b.object_name(from.obj(x)),
                c.object_name(h.obj(x)),
                b.object_name(to.obj(h.obj(x)))
            ))
        })?;
    }
    audit.law("lifts preserved: h(phi(a, u)) = gamma(h a, u)");
    for (x, u, w) in from.lifts.rows() {
        let want = to.lift_at(h.obj(x), u);
        audit.expect(want == Some(h.mor(w)), || {
            Error::LiftNotPreserved(format!(
                "{}: h(phi(a, u)) = `{}` but gamma(h a, u) = {}",
                pair_witness(a, b, x, u),
                c.morphism_name(h.mor(w)),
                want.map_or("undefined".to_owned(), |m| format!("`{}`", c.morphism_name(m)))
            ))
        })?;
    }
    Flow::Continue(())
}

impl CofMorphism {
    pub(crate) fn from_parts_unchecked(from: Cofunctor, to: Cofunctor, carrier: Functor) -> Self {
        Self { from, to, carrier }
    }

    pub fn identity(phi: &Cofunctor) -> CofMorphism {
        CofMorphism { from: phi.clone(), to: phi.clone(), carrier: Functor::identity(&phi.source) }
    }

    pub fn from(&self) -> &Cofunctor {
        &self.from
    }

    pub fn to(&self) -> &Cofunctor {
        &self.to
    }

    pub fn carrier(&self) -> &Functor {
        &self.carrier
    }

    /// `self` after `inner`.
    pub fn after(&self, inner: &CofMorphism) -> Result<CofMorphism> {
        if inner.to != self.from {
            return Err(Error::BoundaryMismatch("Cof(B) morphisms are not composable".into()));
        }
        Ok(CofMorphism { from: inner.from.clone(), to: self.to.clone(), carrier: self.carrier.after(&inner.carrier)? })
    }

    /// The induced functor between span apexes, `(a, u) |-> (h a, u)`.
    pub fn apex_functor(&self) -> (CofSpan, CofSpan, Functor) {
        let (s, t) = (to_span(&self.from), to_span(&self.to));
        let obj_map = s.apex.objects().map(|x| self.carrier.obj(s.left.obj(x))).collect();
        let mor_map = s
            .apex
            .morphisms()
            .map(|m| {
                let x = s.apex.src(m);
                t.row(self.carrier.obj(s.left.obj(x)), s.right.mor(m)).expect("lift preserved")
            })
            .collect();
        let hbar = Functor::assemble(s.apex.clone(), t.apex.clone(), obj_map, mor_map);
        (s, t, hbar)
    }

    /// Both squares of the morphism diagram commute on the nose.
    pub fn apex_square_commutes(&self) -> bool {
        let (s, t, hbar) = self.apex_functor();
        t.left.after(&hbar).ok() == self.carrier.after(&s.left).ok() && t.right.after(&hbar).ok() == Some(s.right.clone())
    }
}

/// `phi + gamma` in `Cof(B)` with its injections.
#[derive(Debug, Clone)]
pub struct CofCoproduct {
    pub sum: Cofunctor,
    pub inl: CofMorphism,
    pub inr: CofMorphism,
    pub sources: Coproduct,
}

pub fn coproduct_cof(phi: &Cofunctor, gamma: &Cofunctor) -> Result<CofCoproduct> {
    if !same_category(&phi.base, &gamma.base) {
        return Err(Error::BoundaryMismatch("coproduct summands have different bases".into()));
    }
    let sources = coproduct_cat(&phi.source, &gamma.source);
    let sum_cat = sources.sum.clone();
    let mut obj_map = vec![Obj(0); sum_cat.object_count()];
    let mut lifts = LiftTable::new(sum_cat.object_count(), phi.base.morphism_count());
    for (part, inj) in [(phi, &sources.inl), (gamma, &sources.inr)] {
        for x in part.source.objects() {
            obj_map[inj.obj(x).0] = part.obj(x);
        }
        for (x, u, w) in part.lifts.rows() {
            lifts.set(inj.obj(x), u, inj.mor(w));
        }
    }
    let sum = validate_cofunctor(sum_cat, phi.base.clone(), obj_map, lifts)?;
    let inl = validate_cof_morphism(&sources.inl, phi, &sum)?;
    let inr = validate_cof_morphism(&sources.inr, gamma, &sum)?;
    Ok(CofCoproduct { sum, inl, inr, sources })
}

impl CofCoproduct {
    /// The mediating morphism `[h, k]: phi + gamma -> delta`.
    pub fn copair(&self, h: &CofMorphism, k: &CofMorphism) -> Result<CofMorphism> {
        if h.to != k.to {
            return Err(Error::BoundaryMismatch("cocone legs have different codomains".into()));
        }
        let carrier = self.sources.copair(&h.carrier, &k.carrier)?;
        validate_cof_morphism(&carrier, &self.sum, &h.to)
    }
}
