//! Universal properties checked against brute-force enumeration.

use deltacat::cofree::r_on_morphism;
use deltacat::cofunctor::coproduct_cof;
use deltacat::fincat::validate_functor;
use deltacat::lens::{coproduct_lens, validate_lens_morphism};
use deltacat::oracle::{enumerate_cof_morphisms, enumerate_cofunctors, enumerate_lens_morphisms, enumerate_lenses, EnumBounds};
use deltacat::{cofree_lens, fixtures, CofMorphism, Cofunctor, DeltaLens, Error, LensMorphism};

const WIDE: EnumBounds = EnumBounds { max_objects: 6, max_morphisms: 18 };

fn lenses_over(base: &str, max_objects: usize) -> Vec<DeltaLens> {
    let b = fixtures::by_name(base).unwrap();
    fixtures::all()
        .into_iter()
        .filter(|(_, a)| a.object_count() <= max_objects)
        .flat_map(|(_, a)| enumerate_lenses(&a, &b, &EnumBounds::default()).unwrap().items)
        .collect()
}

fn cofunctors_over(base: &str, max_objects: usize) -> Vec<Cofunctor> {
    let b = fixtures::by_name(base).unwrap();
    fixtures::all()
        .into_iter()
        .filter(|(_, a)| a.object_count() <= max_objects)
        .flat_map(|(_, a)| enumerate_cofunctors(&a, &b, &EnumBounds::default()).unwrap().items)
        .collect()
}

#[test]
fn lens_coproduct_mediators_are_unique() {
    for base in ["one", "two", "loop"] {
        let small = lenses_over(base, 1);
        let targets = lenses_over(base, 2);
        let mut cocones = 0;
        for l1 in &small {
            for l2 in &small {
                let cp = coproduct_lens(l1, l2).unwrap();
                assert_eq!(cp.sum.underlying_cofunctor(), cp.cofunctors.sum);
                for l3 in &targets {
                    let ms = enumerate_lens_morphisms(&cp.sum, l3, &WIDE).unwrap().items;
                    let hs = enumerate_lens_morphisms(l1, l3, &WIDE).unwrap().items;
                    let ks = enumerate_lens_morphisms(l2, l3, &WIDE).unwrap().items;
                    assert_eq!(ms.len(), hs.len() * ks.len());
                    for h in &hs {
                        for k in &ks {
                            let m = cp.copair(h, k).unwrap();
                            let fits = |m: &&_| m_restricts(m, &cp.inl, h) && m_restricts(m, &cp.inr, k);
                            let found: Vec<_> = ms.iter().filter(fits).collect();
                            assert_eq!(found, [&m]);
                            cocones += 1;
                        }
                    }
                }
            }
        }
        assert!(cocones > 0, "{base}");
    }
}

fn m_restricts(m: &LensMorphism, inj: &LensMorphism, leg: &LensMorphism) -> bool {
    m.after(inj).is_ok_and(|c| c.carrier() == leg.carrier())
}

#[test]
fn cofunctor_coproduct_mediators_are_unique() {
    for base in ["one", "two", "discrete-2"] {
        let small = cofunctors_over(base, 1);
        let targets = cofunctors_over(base, 2);
        for p1 in &small {
            for p2 in &small {
                let cp = coproduct_cof(p1, p2).unwrap();
                for p3 in &targets {
                    let ms = enumerate_cof_morphisms(&cp.sum, p3, &WIDE).unwrap().items;
                    let hs = enumerate_cof_morphisms(p1, p3, &WIDE).unwrap().items;
                    let ks = enumerate_cof_morphisms(p2, p3, &WIDE).unwrap().items;
                    assert_eq!(ms.len(), hs.len() * ks.len());
                    for h in &hs {
                        for k in &ks {
                            let m = cp.copair(h, k).unwrap();
                            let restricts = |m: &CofMorphism| {
                                m.after(&cp.inl).is_ok_and(|c| c.carrier() == h.carrier())
                                    && m.after(&cp.inr).is_ok_and(|c| c.carrier() == k.carrier())
                            };
                            assert_eq!(ms.iter().filter(|m| restricts(m)).collect::<Vec<_>>(), [&m]);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn r_preserves_identities_and_composites() {
    for base in ["one", "two", "loop"] {
        let phis = cofunctors_over(base, 2);
        for phi in &phis {
            let id = CofMorphism::identity(phi);
            assert_eq!(r_on_morphism(&id).unwrap(), LensMorphism::identity(cofree_lens(phi).lens()));
        }
        for p in &phis {
            for q in &phis {
                let fs = enumerate_cof_morphisms(p, q, &WIDE).unwrap().items;
                for r in &phis {
                    let gs = enumerate_cof_morphisms(q, r, &WIDE).unwrap().items;
                    for f in &fs {
                        for g in &gs {
                            let gf = g.after(f).unwrap();
                            let composite = r_on_morphism(g).unwrap().after(&r_on_morphism(f).unwrap()).unwrap();
                            assert_eq!(r_on_morphism(&gf).unwrap(), composite);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn carrier_that_moves_get_is_rejected() {
    let p = cofree_lens(&Cofunctor::identity(&fixtures::idempotent()));
    let apex = p.apex();
    let name = |m| apex.morphism_name(m).to_owned();
    let swap: Vec<_> = apex
        .morphisms()
        .map(|m| match name(m).as_str() {
            "(e,id_*)" => apex.mor("(id_*,e)").unwrap(),
            "(id_*,e)" => apex.mor("(e,id_*)").unwrap(),
            _ => m,
        })
        .collect();
    let h = validate_functor(apex.clone(), apex.clone(), apex.objects().collect(), swap).unwrap();
    let err = validate_lens_morphism(&h, p.lens(), p.lens()).unwrap_err();
    assert!(matches!(err, Error::GetNotPreserved(_)), "{err}");
}
