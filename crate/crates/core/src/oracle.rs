//! Brute-force enumeration of small functors, cofunctors, lenses and
//! coalgebras.
//!
//! Every enumerator generates raw candidates (object maps, then morphism
//! maps respecting boundaries, then lift tables drawn from the morphisms
//! out of each object) and keeps those that pass the corresponding
//! validator. Nothing here relies on the constructions it is used to check.
//! Results come out in lexicographic order of the underlying indices, which
//! follow identifier order.

use std::sync::Arc;

use itertools::Itertools;

use crate::cofree::{audit_coalgebra_in, cofree_lens, Coalgebra};
use crate::cofunctor::{validate_cof_morphism, validate_cofunctor, CofMorphism, Cofunctor, LiftTable};
use crate::error::{Error, Result};
use crate::fincat::{validate_functor, FinCategory, Functor, Mor, Obj};
use crate::laws::Mode;
use crate::lens::{validate_lens, validate_lens_morphism, DeltaLens, LensMorphism};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumBounds {
    pub max_objects: usize,
    pub max_morphisms: usize,
}

impl Default for EnumBounds {
    fn default() -> Self {
        Self { max_objects: 3, max_morphisms: 9 }
    }
}

impl EnumBounds {
    pub fn check(&self, c: &FinCategory) -> Result<()> {
        if c.object_count() > self.max_objects || c.morphism_count() > self.max_morphisms {
            return Err(Error::BoundsExceeded(format!(
                "{c} exceeds the bounds of {} objects and {} morphisms",
                self.max_objects, self.max_morphisms
            )));
        }
        Ok(())
    }
}

/// The surviving items and the number of raw candidates examined.
#[derive(Debug, Clone)]
pub struct Enumeration<T> {
    pub items: Vec<T>,
    pub candidates: u64,
}

impl<T> Enumeration<T> {
    fn new() -> Self {
        Self { items: Vec::new(), candidates: 0 }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

/// All tuples picking one element from each list, in lexicographic order.
fn product<T: Clone + 'static>(choices: Vec<Vec<T>>) -> Box<dyn Iterator<Item = Vec<T>>> {
    if choices.is_empty() {
        Box::new(std::iter::once(Vec::new()))
    } else {
        Box::new(choices.into_iter().map(Vec::into_iter).multi_cartesian_product())
    }
}

fn object_maps(a: &FinCategory, b: &FinCategory) -> Box<dyn Iterator<Item = Vec<Obj>>> {
    product(vec![b.objects().collect::<Vec<_>>(); a.object_count()])
}

/// Morphism maps over a fixed object map: identities go to identities,
/// every other morphism to any morphism with the matching boundary.
fn morphism_maps(a: &FinCategory, b: &FinCategory, obj_map: &[Obj]) -> Box<dyn Iterator<Item = Vec<Mor>>> {
    let choices = a
        .morphisms()
        .map(|w| {
            let (x, y) = (obj_map[a.src(w).0], obj_map[a.tgt(w).0]);
            if a.is_identity(w) {
                vec![b.identity(x)]
            } else {
                b.hom(x, y).collect()
            }
        })
        .collect();
    product(choices)
}

fn functors_with(a: &Arc<FinCategory>, b: &Arc<FinCategory>, obj_map: Vec<Obj>, out: &mut Enumeration<Functor>) {
    for mor_map in morphism_maps(a, b, &obj_map) {
        out.candidates += 1;
        if let Ok(f) = validate_functor(a.clone(), b.clone(), obj_map.clone(), mor_map) {
            out.items.push(f);
        }
    }
}

fn all_functors(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> Enumeration<Functor> {
    let mut out = Enumeration::new();
    for obj_map in object_maps(a, b) {
        functors_with(a, b, obj_map, &mut out);
    }
    out
}

pub fn enumerate_functors(a: &Arc<FinCategory>, b: &Arc<FinCategory>, bounds: &EnumBounds) -> Result<Enumeration<Functor>> {
    bounds.check(a)?;
    bounds.check(b)?;
    Ok(all_functors(a, b))
}

/// Every lift table over `obj_map` whose entries start at the right object.
fn lift_tables(a: &FinCategory, b: &FinCategory, obj_map: &[Obj]) -> Box<dyn Iterator<Item = LiftTable>> {
    let mut keys = Vec::new();
    let mut choices = Vec::new();
    for x in a.objects() {
        for &u in b.outgoing(obj_map[x.0]) {
            keys.push((x, u));
            choices.push(a.outgoing(x).to_vec());
        }
    }
    let (n, m) = (a.object_count(), b.morphism_count());
    Box::new(product(choices).map(move |ws| {
        let mut t = LiftTable::new(n, m);
        for (&(x, u), w) in keys.iter().zip(ws) {
            t.set(x, u, w);
        }
        t
    }))
}

pub fn enumerate_cofunctors(a: &Arc<FinCategory>, b: &Arc<FinCategory>, bounds: &EnumBounds) -> Result<Enumeration<Cofunctor>> {
    bounds.check(a)?;
    bounds.check(b)?;
    let mut out = Enumeration::new();
    for obj_map in object_maps(a, b) {
        for lifts in lift_tables(a, b, &obj_map) {
            out.candidates += 1;
            if let Ok(phi) = validate_cofunctor(a.clone(), b.clone(), obj_map.clone(), lifts) {
                out.items.push(phi);
            }
        }
    }
    Ok(out)
}

/// Every pair of a functor `A -> B` and a raw lift table over it, valid or
/// not.
pub fn lens_candidates(a: &Arc<FinCategory>, b: &Arc<FinCategory>, bounds: &EnumBounds) -> Result<Vec<(Functor, LiftTable)>> {
    let functors = enumerate_functors(a, b, bounds)?;
    let mut out = Vec::new();
    for f in functors.items {
        for t in lift_tables(a, b, f.obj_map()) {
            out.push((f.clone(), t));
        }
    }
    Ok(out)
}

pub fn enumerate_lenses(a: &Arc<FinCategory>, b: &Arc<FinCategory>, bounds: &EnumBounds) -> Result<Enumeration<DeltaLens>> {
    let candidates = lens_candidates(a, b, bounds)?;
    let mut out = Enumeration::new();
    out.candidates = candidates.len() as u64;
    out.items = candidates.into_iter().filter_map(|(f, t)| validate_lens(f, t).ok()).collect();
    Ok(out)
}

/// Lenses whose underlying cofunctor is `phi`: functors extending `phi_0`
/// that satisfy the lens laws with `phi`'s lifts.
pub fn enumerate_lenses_over(phi: &Cofunctor, bounds: &EnumBounds) -> Result<Enumeration<DeltaLens>> {
    let (a, b) = (phi.source(), phi.base());
    bounds.check(a)?;
    bounds.check(b)?;
    let mut functors = Enumeration::new();
    functors_with(a, b, phi.obj_map().to_vec(), &mut functors);
    let items = functors.items.into_iter().filter_map(|f| validate_lens(f, phi.lifts().clone()).ok()).collect();
    Ok(Enumeration { items, candidates: functors.candidates })
}

/// Every functor `A -> P` into the cofree apex that is a coalgebra
/// structure map.
pub fn enumerate_coalgebras(phi: &Cofunctor, bounds: &EnumBounds) -> Result<Enumeration<Coalgebra>> {
    bounds.check(phi.source())?;
    bounds.check(phi.base())?;
    let cofree = cofree_lens(phi);
    let candidates = all_functors(phi.source(), cofree.apex());
    let mut out = Enumeration::new();
    out.candidates = candidates.candidates;
    for h in candidates.items {
        if let Some(c) = audit_coalgebra_in(&cofree, &h, Mode::FirstFailure)?.value {
            out.items.push(c);
        }
    }
    Ok(out)
}

pub fn enumerate_cof_morphisms(phi: &Cofunctor, gamma: &Cofunctor, bounds: &EnumBounds) -> Result<Enumeration<CofMorphism>> {
    bounds.check(phi.source())?;
    bounds.check(gamma.source())?;
    let candidates = all_functors(phi.source(), gamma.source());
    let items = candidates.items.iter().filter_map(|h| validate_cof_morphism(h, phi, gamma).ok()).collect();
    Ok(Enumeration { items, candidates: candidates.candidates })
}

pub fn enumerate_lens_morphisms(dom: &DeltaLens, cod: &DeltaLens, bounds: &EnumBounds) -> Result<Enumeration<LensMorphism>> {
    bounds.check(dom.source())?;
    bounds.check(cod.source())?;
    let candidates = all_functors(dom.source(), cod.source());
    let items = candidates.items.iter().filter_map(|h| validate_lens_morphism(h, dom, cod).ok()).collect();
    Ok(Enumeration { items, candidates: candidates.candidates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{discrete_two, idempotent, one, two};

    fn b() -> EnumBounds {
        EnumBounds::default()
    }

    #[test]
    fn product_edge_cases() {
        assert_eq!(product::<u8>(vec![]).count(), 1);
        assert_eq!(product(vec![vec![1, 2], vec![]]).count(), 0);
        assert_eq!(product(vec![vec![1, 2], vec![3, 4]]).collect::<Vec<_>>(), [[1, 3], [1, 4], [2, 3], [2, 4]]);
    }

    #[test]
    fn functor_counts() {
        assert_eq!(enumerate_functors(&one(), &one(), &b()).unwrap().len(), 1);
        assert_eq!(enumerate_functors(&one(), &two(), &b()).unwrap().len(), 2);
        assert_eq!(enumerate_functors(&two(), &two(), &b()).unwrap().len(), 3);
    }

    #[test]
    fn cofunctor_counts() {
        assert_eq!(enumerate_cofunctors(&one(), &one(), &b()).unwrap().len(), 1);
        let phis = enumerate_cofunctors(&one(), &two(), &b()).unwrap();
        assert_eq!(phis.len(), 1);
        assert_eq!(phis.items[0].obj(Obj(0)), two().obj("1").unwrap());
        assert_eq!(enumerate_cofunctors(&idempotent(), &one(), &b()).unwrap().len(), 1);
    }

    #[test]
    fn lenses_over_identities() {
        for c in [one(), two(), idempotent(), discrete_two()] {
            let ls = enumerate_lenses_over(&Cofunctor::identity(&c), &b()).unwrap();
            assert_eq!(ls.len(), 1);
            assert_eq!(ls.items[0], DeltaLens::identity(&c));
        }
    }

    #[test]
    fn coalgebras_match_lenses_on_small_cases() {
        for c in [one(), idempotent(), two()] {
            let phi = Cofunctor::identity(&c);
            let coalgebras = enumerate_coalgebras(&phi, &b()).unwrap();
            assert_eq!(coalgebras.len(), enumerate_lenses_over(&phi, &b()).unwrap().len());
        }
    }

    #[test]
    fn bounds_are_enforced() {
        let tight = EnumBounds { max_objects: 1, max_morphisms: 9 };
        assert!(matches!(enumerate_functors(&two(), &one(), &tight), Err(Error::BoundsExceeded(_))));
    }
}
