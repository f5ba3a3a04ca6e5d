//! Exhaustive sweeps over every ordered pair of fixtures.

use deltacat::cofree::{
    audit_comonad_laws, audit_triangle_identities, coalgebra_to_lens, cofree_lens, factorize, lens_to_coalgebra, validate_coalgebra,
};
use deltacat::cofunctor::{from_span, to_span, validate_cof_morphism, validate_cofunctor};
use deltacat::fixtures;
use deltacat::lens::validate_lens;
use deltacat::oracle::{enumerate_coalgebras, enumerate_cofunctors, enumerate_lenses, enumerate_lenses_over, lens_candidates, EnumBounds};
use deltacat::{Cofunctor, DeltaLens, Mode};

fn pairs() -> impl Iterator<Item = (String, Cofunctor)> {
    let bounds = EnumBounds::default();
    fixtures::all().into_iter().flat_map(move |(an, a)| {
        fixtures::all().into_iter().flat_map(move |(bn, b)| {
            let label = format!("{an} -> {bn}");
            enumerate_cofunctors(&a, &b, &bounds).unwrap().items.into_iter().map(move |phi| (label.clone(), phi))
        })
    })
}

fn lenses() -> impl Iterator<Item = (String, DeltaLens)> {
    let bounds = EnumBounds::default();
    fixtures::all().into_iter().flat_map(move |(an, a)| {
        fixtures::all().into_iter().flat_map(move |(bn, b)| {
            let label = format!("{an} => {bn}");
            enumerate_lenses(&a, &b, &bounds).unwrap().items.into_iter().map(move |l| (label.clone(), l))
        })
    })
}

#[test]
fn enumerated_structures_satisfy_their_axioms() {
    let mut n = 0;
    for (label, phi) in pairs() {
        assert!(phi.audit(Mode::AllWitnesses).iter().all(|c| c.passed()), "{label}");
        n += 1;
    }
    assert!(n > 36);
    for (label, l) in lenses() {
        assert!(l.audit(Mode::AllWitnesses).iter().all(|c| c.passed()), "{label}");
        let phi = l.underlying_cofunctor();
        assert!(phi.audit(Mode::FirstFailure).iter().all(|c| c.passed()), "{label}");
    }
}

#[test]
fn span_round_trip() {
    for (label, phi) in pairs() {
        let s = to_span(&phi);
        assert!(s.left.is_bijective_on_objects(), "{label}");
        assert!(s.right.is_discrete_opfibration(), "{label}");
        assert_eq!(from_span(&s).unwrap(), phi, "{label}");
    }
}

#[test]
fn lens_is_a_morphism_into_the_trivial_cofunctor() {
    let bounds = EnumBounds::default();
    let (mut valid, mut invalid) = (0, 0);
    for (_, a) in fixtures::all() {
        for (_, b) in fixtures::all() {
            let trivial = Cofunctor::identity(&b);
            for (f, puts) in lens_candidates(&a, &b, &bounds).unwrap() {
                let as_lens = validate_lens(f.clone(), puts.clone()).is_ok();
                let phi = validate_cofunctor(a.clone(), b.clone(), f.obj_map().to_vec(), puts);
                let as_morphism = phi.as_ref().is_ok_and(|phi| validate_cof_morphism(&f, phi, &trivial).is_ok());
                assert_eq!(as_lens, as_morphism);
                if as_lens {
                    valid += 1;
                } else {
                    invalid += 1;
                }
            }
        }
    }
    assert!(valid > 0 && invalid > 0);
}

#[test]
fn counting_law_and_pullback_agreement() {
    for (label, phi) in pairs() {
        let r = cofree_lens(&phi);
        let (a, b) = (phi.source(), phi.base());
        assert_eq!(r.apex().object_count(), a.object_count());
        for x in a.objects() {
            for y in a.objects() {
                assert_eq!(r.hom_size(x, y), a.hom_size(x, y) * b.hom_size(phi.obj(x), phi.obj(y)), "{label}");
            }
        }
        assert!(r.agrees_with_pullback().unwrap(), "{label}");
        validate_lens(r.get().clone(), r.lens().puts().clone()).unwrap();
        let (span, c) = r.comparison();
        assert!(c.is_bijective_on_objects());
        assert_eq!(r.get().after(&c).unwrap(), span.right);
    }
}

#[test]
fn triangles_and_comonad_laws() {
    let phis: Vec<_> = pairs().collect();
    let ls: Vec<_> = lenses().collect();
    for (label, phi) in &phis {
        for (_, l) in ls.iter().filter(|(_, l)| l.base() == phi.base()).take(1) {
            assert!(audit_triangle_identities(phi, l, Mode::FirstFailure).iter().all(|c| c.passed()), "{label}");
        }
        assert!(audit_comonad_laws(phi, Mode::FirstFailure).iter().all(|c| c.passed()), "{label}");
    }
    for (label, l) in &ls {
        let phi = l.underlying_cofunctor();
        assert!(audit_triangle_identities(&phi, l, Mode::FirstFailure).iter().all(|c| c.passed()), "{label}");
    }
}

#[test]
fn coalgebras_are_lenses() {
    let bounds = EnumBounds::default();
    for (label, phi) in pairs() {
        let coalgebras = enumerate_coalgebras(&phi, &bounds).unwrap();
        let lenses = enumerate_lenses_over(&phi, &bounds).unwrap();
        assert_eq!(coalgebras.len(), lenses.len(), "{label}");
        for c in &coalgebras.items {
            assert!(c.is_identity_on_objects() && c.preserves_first_component(), "{label}");
            let l = coalgebra_to_lens(c).unwrap();
            assert!(lenses.items.contains(&l), "{label}");
            assert_eq!(&lens_to_coalgebra(&l), c, "{label}");
        }
        for l in &lenses.items {
            let c = lens_to_coalgebra(l);
            validate_coalgebra(&phi, c.structure()).unwrap();
            assert_eq!(&coalgebra_to_lens(&c).unwrap(), l, "{label}");
        }
    }
}

#[test]
fn factorisation_reassembles() {
    for (label, l) in lenses() {
        let f = factorize(&l);
        assert!(f.first.carrier().is_bijective_on_objects(), "{label}");
        assert_eq!(f.reassemble().unwrap(), l, "{label}");
    }
}
