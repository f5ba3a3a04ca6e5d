//! Delta lenses and the slice category `Lens(B) = Cof(B) / 1_B`.

use std::sync::Arc;

use crate::cofunctor::{
    check_cof_morphism_laws, check_lifting_laws, check_table_shape, coproduct_cof, CofCoproduct, CofMorphism, Cofunctor,
    LiftTable,
};
use crate::error::{Error, Result};
use crate::fincat::{same_category, FinCategory, Functor, Mor, Obj};
use crate::laws::{Audit, Audited, Flow, LawCheck, Mode};

/// A delta lens `A => B`: a Get functor and a Put lifting table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaLens {
    get: Functor,
    puts: LiftTable,
}

pub fn validate_lens(get: Functor, puts: LiftTable) -> Result<DeltaLens> {
    audit_lens(get, puts, Mode::FirstFailure)?.into_result()
}

pub fn audit_lens(get: Functor, puts: LiftTable, mode: Mode) -> Result<Audited<DeltaLens>> {
    check_table_shape(get.source(), get.target(), get.obj_map(), &puts)?;
    let mut audit = Audit::new(mode);
    let _ = check_lifting_laws(get.source(), get.target(), get.obj_map(), &puts, Some(&get), &mut audit);
    Ok(audit.conclude(|| DeltaLens { get, puts }))
}

impl DeltaLens {
    /// Pairs a functor with the lifts of a cofunctor on the same source and
    /// base. Fails unless the object maps agree and the lens laws hold.
    pub fn from_parts(get: Functor, put: &Cofunctor) -> Result<DeltaLens> {
        if !same_category(get.source(), put.source()) || !same_category(get.target(), put.base()) {
            return Err(Error::BoundaryMismatch("get and put run between different categories".into()));
        }
        if let Some(x) = get.source().objects().find(|&x| get.obj(x) != put.obj(x)) {
            return Err(Error::ObjectMapMismatch(format!(
                "get sends `{}` to `{}` but put lifts from `{}`",
                get.source().object_name(x),
                get.target().object_name(get.obj(x)),
                get.target().object_name(put.obj(x))
            )));
        }
        validate_lens(get, put.lifts().clone())
    }

    pub(crate) fn from_parts_unchecked(get: Functor, puts: LiftTable) -> Self {
        Self { get, puts }
    }

    /// The identity lens `1_B`.
    pub fn identity(base: &Arc<FinCategory>) -> DeltaLens {
        DeltaLens { get: Functor::identity(base), puts: Cofunctor::identity(base).lifts().clone() }
    }

    pub fn source(&self) -> &Arc<FinCategory> {
        self.get.source()
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        self.get.target()
    }

    pub fn get_functor(&self) -> &Functor {
        &self.get
    }

    pub fn puts(&self) -> &LiftTable {
        &self.puts
    }

    pub fn get(&self, w: Mor) -> Mor {
        self.get.mor(w)
    }

    pub fn put(&self, a: Obj, u: Mor) -> Option<Mor> {
        self.puts.get(a, u)
    }

    pub fn get_named(&self, w: &str) -> Result<&str> {
        self.get.apply(w)
    }

    pub fn put_named(&self, a: &str, u: &str) -> Result<&str> {
        let (x, m) = (self.source().obj(a)?, self.base().mor(u)?);
        match self.put(x, m) {
            Some(w) => Ok(self.source().morphism_name(w)),
            None => Err(Error::NotApplicable(format!(
                "`{u}` starts at `{}`, but get sends `{a}` to `{}`",
                self.base().object_name(self.base().src(m)),
                self.base().object_name(self.get.obj(x))
            ))),
        }
    }

    /// The Put part alone (the forgetful functor `L`).
    pub fn underlying_cofunctor(&self) -> Cofunctor {
        Cofunctor::from_parts_unchecked(self.source().clone(), self.base().clone(), self.get.obj_map().to_vec(), self.puts.clone())
    }

    pub fn audit(&self, mode: Mode) -> Vec<LawCheck> {
        let mut audit = Audit::new(mode);
        let _ = check_lifting_laws(self.source(), self.base(), self.get.obj_map(), &self.puts, Some(&self.get), &mut audit);
        audit.into_checks()
    }
}

/// A morphism of `Lens(B)`: a `Cof(B)` morphism between the underlying
/// cofunctors whose carrier also commutes with the Gets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LensMorphism {
    dom: DeltaLens,
    cod: DeltaLens,
    carrier: Functor,
}

pub fn validate_lens_morphism(carrier: &Functor, dom: &DeltaLens, cod: &DeltaLens) -> Result<LensMorphism> {
    audit_lens_morphism(carrier, dom, cod, Mode::FirstFailure)?.into_result()
}

pub fn audit_lens_morphism(carrier: &Functor, dom: &DeltaLens, cod: &DeltaLens, mode: Mode) -> Result<Audited<LensMorphism>> {
    let (from, to) = (dom.underlying_cofunctor(), cod.underlying_cofunctor());
    if !same_category(from.base(), to.base()) {
        return Err(Error::BoundaryMismatch("lenses have different bases".into()));
    }
    if !same_category(carrier.source(), dom.source()) || !same_category(carrier.target(), cod.source()) {
        return Err(Error::BoundaryMismatch("carrier does not run between the two sources".into()));
    }
    let mut audit = Audit::new(mode);
    let _ = (|| -> Flow {
        check_cof_morphism_laws(carrier, &from, &to, &mut audit)?;
        audit.law("get preserved: g . h = f");
        let a = dom.source();
        for w in a.morphisms() {
            let (via, direct) = (cod.get(carrier.mor(w)), dom.get(w));
            audit.expect(via == direct, || {
                Error::GetNotPreserved(format!(
                    "`{}`: g(h w) = `{}` but f w = `{}`",
                    a.morphism_name(w),
                    dom.base().morphism_name(via),
                    dom.base().morphism_name(direct)
                ))
            })?;
        }
        Flow::Continue(())
    })();
    Ok(audit.conclude(|| LensMorphism { dom: dom.clone(), cod: cod.clone(), carrier: carrier.clone() }))
}

impl LensMorphism {
    pub(crate) fn from_parts_unchecked(dom: DeltaLens, cod: DeltaLens, carrier: Functor) -> Self {
        Self { dom, cod, carrier }
    }

    pub fn identity(l: &DeltaLens) -> LensMorphism {
        LensMorphism { dom: l.clone(), cod: l.clone(), carrier: Functor::identity(l.source()) }
    }

    pub fn dom(&self) -> &DeltaLens {
        &self.dom
    }

    pub fn cod(&self) -> &DeltaLens {
        &self.cod
    }

    pub fn carrier(&self) -> &Functor {
        &self.carrier
    }

    /// The image under the forgetful functor `L`.
    pub fn cof_part(&self) -> CofMorphism {
        CofMorphism::from_parts_unchecked(self.dom.underlying_cofunctor(), self.cod.underlying_cofunctor(), self.carrier.clone())
    }

    pub fn after(&self, inner: &LensMorphism) -> Result<LensMorphism> {
        if inner.cod != self.dom {
            return Err(Error::BoundaryMismatch("lens morphisms are not composable".into()));
        }
        Ok(LensMorphism { dom: inner.dom.clone(), cod: self.cod.clone(), carrier: self.carrier.after(&inner.carrier)? })
    }
}

/// `l1 + l2` in `Lens(B)`, created from the coproduct of the underlying
/// cofunctors.
#[derive(Debug, Clone)]
pub struct LensCoproduct {
    pub sum: DeltaLens,
    pub inl: LensMorphism,
    pub inr: LensMorphism,
    pub cofunctors: CofCoproduct,
}

pub fn coproduct_lens(l1: &DeltaLens, l2: &DeltaLens) -> Result<LensCoproduct> {
    let cofunctors = coproduct_cof(&l1.underlying_cofunctor(), &l2.underlying_cofunctor())?;
    let get = cofunctors.sources.copair(&l1.get, &l2.get)?;
    let sum = DeltaLens::from_parts(get, &cofunctors.sum)?;
    let inl = validate_lens_morphism(&cofunctors.sources.inl, l1, &sum)?;
    let inr = validate_lens_morphism(&cofunctors.sources.inr, l2, &sum)?;
    Ok(LensCoproduct { sum, inl, inr, cofunctors })
}

impl LensCoproduct {
    pub fn copair(&self, h: &LensMorphism, k: &LensMorphism) -> Result<LensMorphism> {
        if h.cod != k.cod {
            return Err(Error::BoundaryMismatch("cocone legs have different codomains".into()));
        }
        let carrier = self.cofunctors.sources.copair(&h.carrier, &k.carrier)?;
        validate_lens_morphism(&carrier, &self.sum, &h.cod)
    }
}
