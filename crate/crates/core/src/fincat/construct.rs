//! Codiscrete categories, pullbacks and binary coproducts of finite categories.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::names;

use super::category::{FinCategory, Mor, Obj, RawCategory, RawMorphism};
use super::functor::{same_category, Functor};

/// The codiscrete category on a list of object names: exactly one morphism
/// between every ordered pair.
pub fn codiscrete(objects: &[String]) -> Arc<FinCategory> {
    let mut morphisms = Vec::new();
    for a in objects {
        for b in objects {
            if a != b {
                morphisms.push(RawMorphism::new(names::codiscrete_arrow(a, b), a, b));
            }
        }
    }
    let arrow = |a: &String, b: &String| if a == b { names::identity(a) } else { names::codiscrete_arrow(a, b) };
    let mut compose = Vec::new();
    for a in objects {
        for b in objects {
            for c in objects {
                if a != b && b != c {
                    compose.push([arrow(a, b), arrow(b, c), arrow(a, c)]);
                }
            }
        }
    }
    FinCategory::assemble(&RawCategory { compose, morphisms, objects: objects.to_vec() })
}

/// The unit `C -> codisc(C_0)`: identity on objects, collapsing hom-sets.
pub fn codiscrete_unit(c: &Arc<FinCategory>) -> (Arc<FinCategory>, Functor) {
    let d = codiscrete(c.object_names());
    let eta = codiscrete_map(c, &d, c.objects().collect());
    (d, eta)
}

/// The unique functor into a codiscrete category with the given object map.
pub fn codiscrete_map(source: &Arc<FinCategory>, target: &Arc<FinCategory>, obj_map: Vec<Obj>) -> Functor {
    let mor_map = source
        .morphisms()
        .map(|w| {
            let (a, b) = (obj_map[source.src(w).0], obj_map[source.tgt(w).0]);
            target.hom(a, b).next().expect("codiscrete categories have every hom-set inhabited")
        })
        .collect();
    Functor::assemble(source.clone(), target.clone(), obj_map, mor_map)
}

/// A pullback square `left: P -> A`, `right: P -> B` over `F: A -> C`, `G: B -> C`.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub apex: Arc<FinCategory>,
    pub left: Functor,
    pub right: Functor,
    along_left: Functor,
    along_right: Functor,
    objects: HashMap<(Obj, Obj), Obj>,
    morphisms: HashMap<(Mor, Mor), Mor>,
}

/// Objects `(a, b)` with `F a = G b`; morphisms `(w, u)` with `F w = G u`;
/// composition componentwise.
pub fn pullback(f: &Functor, g: &Functor) -> Result<Pullback> {
    if !same_category(f.target(), g.target()) {
        return Err(Error::BoundaryMismatch("pullback legs have different targets".into()));
    }
    let (a, b) = (f.source().clone(), g.source().clone());
    let obj_name = |x: Obj, y: Obj| names::pair(a.object_name(x), b.object_name(y));
    let mor_name = |w: Mor, u: Mor| {
        if a.is_identity(w) && b.is_identity(u) {
            names::identity(&obj_name(a.src(w), b.src(u)))
        } else {
            names::pair(a.morphism_name(w), b.morphism_name(u))
        }
    };

    let mut objects = Vec::new();
    for x in a.objects() {
        for y in b.objects() {
            if f.obj(x) == g.obj(y) {
                objects.push(obj_name(x, y));
            }
        }
    }
    let mut pairs = Vec::new();
    for w in a.morphisms() {
        for u in b.morphisms() {
            if f.mor(w) == g.mor(u) {
                pairs.push((w, u));
            }
        }
    }
    let morphisms = pairs
        .iter()
        .filter(|&&(w, u)| !(a.is_identity(w) && b.is_identity(u)))
        .map(|&(w, u)| RawMorphism::new(mor_name(w, u), obj_name(a.src(w), b.src(u)), obj_name(a.tgt(w), b.tgt(u))))
        .collect();
    let mut compose = Vec::new();
    for &(w, u) in &pairs {
        for &(w2, u2) in &pairs {
            if let (Some(ww), Some(uu)) = (a.comp(w2, w), b.comp(u2, u)) {
                compose.push([mor_name(w, u), mor_name(w2, u2), mor_name(ww, uu)]);
            }
        }
    }
    let apex = FinCategory::assemble(&RawCategory { compose, morphisms, objects });

    let mut object_index = HashMap::new();
    let (mut lo, mut ro) = (vec![Obj(0); apex.object_count()], vec![Obj(0); apex.object_count()]);
    for x in a.objects() {
        for y in b.objects() {
            if f.obj(x) == g.obj(y) {
                let p = apex.obj(&obj_name(x, y)).expect("pair object exists");
                lo[p.0] = x;
                ro[p.0] = y;
                object_index.insert((x, y), p);
            }
        }
    }
    let mut morphism_index = HashMap::new();
    let (mut lm, mut rm) = (vec![Mor(0); apex.morphism_count()], vec![Mor(0); apex.morphism_count()]);
    for &(w, u) in &pairs {
        let p = apex.mor(&mor_name(w, u)).expect("pair morphism exists");
        lm[p.0] = w;
        rm[p.0] = u;
        morphism_index.insert((w, u), p);
    }
    let left = Functor::assemble(apex.clone(), a, lo, lm);
    let right = Functor::assemble(apex.clone(), b, ro, rm);
    Ok(Pullback {
        apex,
        left,
        right,
        along_left: f.clone(),
        along_right: g.clone(),
        objects: object_index,
        morphisms: morphism_index,
    })
}

impl Pullback {
    /// The mediating functor `X -> P` for a commuting cone `(p: X -> A, q: X -> B)`.
    pub fn mediate(&self, p: &Functor, q: &Functor) -> Result<Functor> {
        if !same_category(p.source(), q.source())
            || !same_category(p.target(), self.left.target())
            || !same_category(q.target(), self.right.target())
        {
            return Err(Error::BoundaryMismatch("cone legs do not match the pullback".into()));
        }
        if self.along_left.after(p)? != self.along_right.after(q)? {
            return Err(Error::BoundaryMismatch("cone does not commute".into()));
        }
        let x = p.source();
        let obj_map = x.objects().map(|o| self.objects[&(p.obj(o), q.obj(o))]).collect();
        let mor_map = x.morphisms().map(|m| self.morphisms[&(p.mor(m), q.mor(m))]).collect();
        Ok(Functor::assemble(x.clone(), self.apex.clone(), obj_map, mor_map))
    }

    pub fn pair_morphism(&self, w: Mor, u: Mor) -> Option<Mor> {
        self.morphisms.get(&(w, u)).copied()
    }
}

/// `A + C` with its two injections. Cells are prefixed `inl.` / `inr.`.
#[derive(Debug, Clone)]
pub struct Coproduct {
    pub sum: Arc<FinCategory>,
    pub inl: Functor,
    pub inr: Functor,
}

pub fn coproduct_cat(a: &Arc<FinCategory>, c: &Arc<FinCategory>) -> Coproduct {
    let mut raw = RawCategory::default();
    for (cat, tag) in [(a, names::inl as fn(&str) -> String), (c, names::inr)] {
        let tag_mor = |m: Mor| {
            if cat.is_identity(m) {
                names::identity(&tag(cat.object_name(cat.src(m))))
            } else {
                tag(cat.morphism_name(m))
            }
        };
        raw.objects.extend(cat.object_names().iter().map(|o| tag(o)));
        for m in cat.morphisms().filter(|&m| !cat.is_identity(m)) {
            raw.morphisms.push(RawMorphism::new(
                tag(cat.morphism_name(m)),
                tag(cat.object_name(cat.src(m))),
                tag(cat.object_name(cat.tgt(m))),
            ));
        }
        for f in cat.morphisms() {
            for &g in cat.outgoing(cat.tgt(f)) {
                let gf = cat.comp(g, f).expect("validated category");
                raw.compose.push([tag_mor(f), tag_mor(g), tag_mor(gf)]);
            }
        }
    }
    let sum = FinCategory::assemble(&raw);
    let inject = |cat: &Arc<FinCategory>, tag: fn(&str) -> String| {
        let obj_map = cat.objects().map(|o| sum.obj(&tag(cat.object_name(o))).expect("tagged object")).collect();
        let mor_map = cat
            .morphisms()
            .map(|m| {
                if cat.is_identity(m) {
                    sum.identity(sum.obj(&tag(cat.object_name(cat.src(m)))).expect("tagged object"))
                } else {
                    sum.mor(&tag(cat.morphism_name(m))).expect("tagged morphism")
                }
            })
            .collect();
        Functor::assemble(cat.clone(), sum.clone(), obj_map, mor_map)
    };
    let inl = inject(a, names::inl);
    let inr = inject(c, names::inr);
    Coproduct { sum, inl, inr }
}

impl Coproduct {
    /// Which side a cell of the sum came from, with its index there.
    fn side_of_obj(&self, o: Obj) -> (bool, Obj) {
        match self.inl.obj_map().iter().position(|&x| x == o) {
            Some(i) => (true, Obj(i)),
            None => (false, Obj(self.inr.obj_map().iter().position(|&x| x == o).expect("object of the sum"))),
        }
    }

    fn side_of_mor(&self, m: Mor) -> (bool, Mor) {
        match self.inl.mor_map().iter().position(|&x| x == m) {
            Some(i) => (true, Mor(i)),
            None => (false, Mor(self.inr.mor_map().iter().position(|&x| x == m).expect("morphism of the sum"))),
        }
    }

    /// The functor `[f, g]: A + C -> D`.
    pub fn copair(&self, f: &Functor, g: &Functor) -> Result<Functor> {
        if !same_category(f.source(), self.inl.source())
            || !same_category(g.source(), self.inr.source())
            || !same_category(f.target(), g.target())
        {
            return Err(Error::BoundaryMismatch("copair legs do not match the coproduct".into()));
        }
        let obj_map = self
            .sum
            .objects()
            .map(|o| match self.side_of_obj(o) {
                (true, x) => f.obj(x),
                (false, x) => g.obj(x),
            })
            .collect();
        let mor_map = self
            .sum
            .morphisms()
            .map(|m| match self.side_of_mor(m) {
                (true, x) => f.mor(x),
                (false, x) => g.mor(x),
            })
            .collect();
        Ok(Functor::assemble(self.sum.clone(), f.target().clone(), obj_map, mor_map))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::category::validate_category;
    use crate::fixtures::{self, idempotent, one, two};

    #[test]
    fn codiscrete_counts() {
        let (d, eta) = codiscrete_unit(&one());
        assert_eq!((d.object_count(), d.morphism_count()), (1, 1));
        assert!(eta.is_bijective_on_objects());

        let t = two();
        let (d, eta) = codiscrete_unit(&t);
        assert_eq!(d.morphism_count(), 4);
        assert_eq!(eta.apply("u").unwrap(), "0~>1");

        let (d, eta) = codiscrete_unit(&idempotent());
        assert_eq!(d.morphism_count(), 1);
        assert_eq!(eta.apply("e").unwrap(), "id_*");
    }

    #[test]
    fn codiscrete_unit_is_bijective_on_objects_everywhere() {
        for (_, c) in fixtures::all() {
            let (d, eta) = codiscrete_unit(&c);
            assert!(eta.is_bijective_on_objects());
            let n = c.object_count();
            assert_eq!(d.morphism_count(), n * n);
        }
    }

    #[test]
    fn pullback_of_identities_is_the_diagonal() {
        let t = two();
        let id = Functor::identity(&t);
        let pb = pullback(&id, &id).unwrap();
        assert_eq!(pb.apex.object_count(), 2);
        assert_eq!(pb.apex.morphism_count(), 3);
        assert!(pb.apex.mor("(u,u)").is_ok());
        assert!(pb.apex.mor("id_(0,0)").is_ok());
    }

    #[test]
    fn pullback_over_terminal_is_the_product() {
        let (t, o) = (two(), one());
        let bang = Functor::assemble(t.clone(), o.clone(), vec![Obj(0); 2], vec![Mor(0); 3]);
        let pb = pullback(&bang, &bang).unwrap();
        // brute-force count of pairs (w, u) lying over the same morphism
        let count = t.morphisms().flat_map(|w| t.morphisms().map(move |u| (w, u))).filter(|&(w, u)| bang.mor(w) == bang.mor(u)).count();
        assert_eq!(count, 9);
        assert_eq!(pb.apex.object_count(), 4);
        assert_eq!(pb.apex.morphism_count(), count);
        validate_category(&pb.apex.to_raw()).unwrap();
    }

    #[test]
    fn pullback_mediates_commuting_cones() {
        let t = two();
        let id = Functor::identity(&t);
        let pb = pullback(&id, &id).unwrap();
        let m = pb.mediate(&id, &id).unwrap();
        assert_eq!(pb.left.after(&m).unwrap(), id);
        assert_eq!(pb.right.after(&m).unwrap(), id);
        assert!(m.is_bijective_on_objects() && m.is_bijective_on_morphisms());
    }

    #[test]
    fn coproduct_counts() {
        let cases = [(one(), one(), 2, 2), (two(), one(), 3, 4), (idempotent(), idempotent(), 2, 4)];
        for (a, c, objs, mors) in cases {
            let cp = coproduct_cat(&a, &c);
            assert_eq!((cp.sum.object_count(), cp.sum.morphism_count()), (objs, mors));
            assert!(cp.inl.is_injective_on_morphisms() && cp.inr.is_injective_on_morphisms());
            let cp_raw = cp.sum.to_raw();
            validate_category(&cp_raw).unwrap();
        }
    }

    #[test]
    fn copair_restricts_to_its_legs() {
        let (t, o) = (two(), one());
        let cp = coproduct_cat(&t, &o);
        let f = Functor::identity(&t);
        let one_at_1 = Functor::assemble(o.clone(), t.clone(), vec![t.obj("1").unwrap()], vec![t.identity(t.obj("1").unwrap())]);
        let m = cp.copair(&f, &one_at_1).unwrap();
        assert_eq!(m.after(&cp.inl).unwrap(), f);
        assert_eq!(m.after(&cp.inr).unwrap(), one_at_1);
    }
}
