use std::sync::Arc;

use crate::error::{Error, Result};
use crate::laws::{Audit, Audited, Flow, Mode};

use super::category::{FinCategory, Mor, Obj};

/// A functor between finite categories, stored as dense object and
/// morphism maps indexed by the source's cells.
#[derive(Debug, Clone)]
pub struct Functor {
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    obj_map: Vec<Obj>,
    mor_map: Vec<Mor>,
}

impl PartialEq for Functor {
    fn eq(&self, other: &Self) -> bool {
        self.obj_map == other.obj_map
            && self.mor_map == other.mor_map
            && same_category(&self.source, &other.source)
            && same_category(&self.target, &other.target)
    }
}

impl Eq for Functor {}

pub(crate) fn same_category(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub fn validate_functor(
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    obj_map: Vec<Obj>,
    mor_map: Vec<Mor>,
) -> Result<Functor> {
    audit_functor(source, target, obj_map, mor_map, Mode::FirstFailure)?.into_result()
}

/// Checks that the maps are total and well-indexed (`Err` otherwise) and
/// audits boundary, identity and composition preservation.
pub fn audit_functor(
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    obj_map: Vec<Obj>,
    mor_map: Vec<Mor>,
    mode: Mode,
) -> Result<Audited<Functor>> {
    if obj_map.len() != source.object_count() || mor_map.len() != source.morphism_count() {
        return Err(Error::MalformedInput(format!(
            "functor maps must cover {} objects and {} morphisms, got {} and {}",
            source.object_count(),
            source.morphism_count(),
            obj_map.len(),
            mor_map.len()
        )));
    }
    if obj_map.iter().any(|o| o.0 >= target.object_count()) || mor_map.iter().any(|m| m.0 >= target.morphism_count()) {
        return Err(Error::MalformedInput("functor maps into cells outside the target".into()));
    }
    let f = Functor { source, target, obj_map, mor_map };
    let mut audit = Audit::new(mode);
    let _ = f.check_laws(&mut audit);
    Ok(audit.conclude(|| f))
}

impl Functor {
    fn check_laws(&self, audit: &mut Audit) -> Flow {
        let (a, b) = (&*self.source, &*self.target);
        audit.law("functor preserves boundaries");
        for w in a.morphisms() {
            let fw = self.mor(w);
            audit.expect(b.src(fw) == self.obj(a.src(w)) && b.tgt(fw) == self.obj(a.tgt(w)), || {
                Error::NotAFunctor(format!(
                    "`{}`: {} -> {} is sent to `{}`: {} -> {}, expected {} -> {}",
                    a.morphism_name(w),
                    a.object_name(a.src(w)),
                    a.object_name(a.tgt(w)),
                    b.morphism_name(fw),
                    b.object_name(b.src(fw)),
                    b.object_name(b.tgt(fw)),
                    b.object_name(self.obj(a.src(w))),
                    b.object_name(self.obj(a.tgt(w)))
                ))
            })?;
        }
        audit.law("functor preserves identities");
        for x in a.objects() {
            let got = self.mor(a.identity(x));
            let want = b.identity(self.obj(x));
            audit.expect(got == want, || {
                Error::NotAFunctor(format!(
                    "identity of `{}` is sent to `{}`, expected `{}`",
                    a.object_name(x),
                    b.morphism_name(got),
                    b.morphism_name(want)
                ))
            })?;
        }
        audit.law("functor preserves composition");
        for f in a.morphisms() {
            for &g in a.outgoing(a.tgt(f)) {
                let gf = a.comp(g, f).expect("validated category");
                let lhs = self.mor(gf);
                let rhs = b.comp(self.mor(g), self.mor(f));
                audit.expect(rhs == Some(lhs), || {
                    Error::NotAFunctor(format!(
                        "F({} . {}) = `{}` but F({}) . F({}) = {}",
                        a.morphism_name(g),
                        a.morphism_name(f),
                        b.morphism_name(lhs),
                        a.morphism_name(g),
                        a.morphism_name(f),
                        rhs.map_or("undefined".to_owned(), |m| format!("`{}`", b.morphism_name(m)))
                    ))
                })?;
            }
        }
        Flow::Continue(())
    }

    /// Builds a functor whose laws hold by construction.
    pub(crate) fn assemble(source: Arc<FinCategory>, target: Arc<FinCategory>, obj_map: Vec<Obj>, mor_map: Vec<Mor>) -> Functor {
        match validate_functor(source, target, obj_map, mor_map) {
            Ok(f) => f,
            Err(e) => panic!("constructed functor is invalid: {e}"),
        }
    }

    pub fn identity(c: &Arc<FinCategory>) -> Functor {
        Functor {
            source: c.clone(),
            target: c.clone(),
            obj_map: c.objects().collect(),
            mor_map: c.morphisms().collect(),
        }
    }

    /// `self` after `inner`.
    pub fn after(&self, inner: &Functor) -> Result<Functor> {
        if !same_category(&inner.target, &self.source) {
            return Err(Error::BoundaryMismatch(format!(
                "cannot compose: inner functor lands in a {}, outer starts from a {}",
                inner.target, self.source
            )));
        }
        Ok(Functor {
            source: inner.source.clone(),
            target: self.target.clone(),
            obj_map: inner.obj_map.iter().map(|&o| self.obj(o)).collect(),
            mor_map: inner.mor_map.iter().map(|&m| self.mor(m)).collect(),
        })
    }

    pub fn source(&self) -> &Arc<FinCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCategory> {
        &self.target
    }

    pub fn obj(&self, a: Obj) -> Obj {
        self.obj_map[a.0]
    }

    pub fn mor(&self, m: Mor) -> Mor {
        self.mor_map[m.0]
    }

    pub fn obj_map(&self) -> &[Obj] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[Mor] {
        &self.mor_map
    }

    /// Name-level action on morphisms.
    pub fn apply(&self, w: &str) -> Result<&str> {
        Ok(self.target.morphism_name(self.mor(self.source.mor(w)?)))
    }

    pub fn apply_obj(&self, a: &str) -> Result<&str> {
        Ok(self.target.object_name(self.obj(self.source.obj(a)?)))
    }

    pub fn is_bijective_on_objects(&self) -> bool {
        let mut hit = vec![false; self.target.object_count()];
        for &o in &self.obj_map {
            if std::mem::replace(&mut hit[o.0], true) {
                return false;
            }
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijective_on_morphisms(&self) -> bool {
        let mut hit = vec![false; self.target.morphism_count()];
        for &m in &self.mor_map {
            if std::mem::replace(&mut hit[m.0], true) {
                return false;
            }
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective_on_morphisms(&self) -> bool {
        let mut hit = vec![false; self.target.morphism_count()];
        self.mor_map.iter().all(|m| !std::mem::replace(&mut hit[m.0], true))
    }

    /// Every `(a, u: F a -> b)` has exactly one `w` out of `a` with `F w = u`.
    pub fn is_discrete_opfibration(&self) -> bool {
        self.first_opfibration_failure().is_none()
    }

    /// A pair `(a, u)` with zero or several lifts, if any.
    pub fn first_opfibration_failure(&self) -> Option<(Obj, Mor, usize)> {
        for a in self.source.objects() {
            for &u in self.target.outgoing(self.obj(a)) {
                let lifts = self.source.outgoing(a).iter().filter(|&&w| self.mor(w) == u).count();
                if lifts != 1 {
                    return Some((a, u, lifts));
                }
            }
        }
        None
    }

    /// The unique lift of `u` at `a` when this is a discrete opfibration.
    pub fn opfibration_lift(&self, a: Obj, u: Mor) -> Option<Mor> {
        let mut it = self.source.outgoing(a).iter().copied().filter(|&w| self.mor(w) == u);
        let w = it.next()?;
        it.next().is_none().then_some(w)
    }

    /// First morphism (in source order) where two parallel functors differ.
    pub fn first_difference(&self, other: &Functor) -> Option<Mor> {
        self.source.morphisms().find(|&m| self.mor(m) != other.mor(m))
    }
}
