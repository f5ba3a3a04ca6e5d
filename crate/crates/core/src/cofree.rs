//! The cofree delta lens on a cofunctor and the comonad `LR` on `Cof(B)`.
//!
//! For `phi: A -/-> B` the category `P` has the objects of `A`, and a
//! morphism `a -> a'` of `P` is a pair `(w: a -> a', u: phi_0 a -> phi_0 a')`.
//! Projecting to `u` is a delta lens `R phi` whose Put is
//! `(a, u) |-> (phi(a, u), u)`. `R` is right adjoint to the forgetful
//! functor `L: Lens(B) -> Cof(B)`, and its coalgebras are exactly the
//! delta lenses.
//!
//! `P` is built directly from pairs. [`CofreeLens::via_pullback`] builds the
//! same category as a pullback over the codiscrete category on `B_0`, and
//! [`CofreeLens::agrees_with_pullback`] compares the two.

use std::collections::HashMap;
use std::sync::Arc;

use crate::cofunctor::{audit_cof_morphism, to_span, CofMorphism, CofSpan, Cofunctor, LiftTable};
use crate::error::{Error, Result, Triangle};
use crate::fincat::{codiscrete_map, codiscrete_unit, pullback, same_category, FinCategory, Functor, Mor, Obj, Pullback, RawCategory, RawMorphism};
use crate::laws::{Audit, Audited, Flow, LawCheck, Mode};
use crate::lens::{validate_lens, DeltaLens, LensMorphism};
use crate::names;

/// `R phi`: the pair category `P`, its two projections, and the lens
/// structure on `pi_B`.
#[derive(Debug, Clone)]
pub struct CofreeLens {
    cofunctor: Cofunctor,
    lens: DeltaLens,
    lr: Cofunctor,
    proj: Functor,
    embed: Vec<Obj>,
    pairs: HashMap<(Mor, Mor), Mor>,
}

pub fn cofree_lens(phi: &Cofunctor) -> CofreeLens {
    let (a, b) = (phi.source(), phi.base());
    let name = |w: Mor, u: Mor| {
        if a.is_identity(w) && b.is_identity(u) {
            names::identity(a.object_name(a.src(w)))
        } else {
            names::pair(a.morphism_name(w), b.morphism_name(u))
        }
    };
    let over = |w: Mor| b.hom(phi.obj(a.src(w)), phi.obj(a.tgt(w)));

    let mut raw = RawCategory { objects: a.object_names().to_vec(), ..Default::default() };
    let mut pairs = Vec::new();
    for w in a.morphisms() {
        for u in over(w) {
            pairs.push((w, u));
            if !(a.is_identity(w) && b.is_identity(u)) {
                raw.morphisms.push(RawMorphism::new(name(w, u), a.object_name(a.src(w)), a.object_name(a.tgt(w))));
            }
        }
    }
    for &(w, u) in &pairs {
        for &w2 in a.outgoing(a.tgt(w)) {
            for u2 in over(w2) {
                let ww = a.comp(w2, w).expect("validated category");
                let uu = b.comp(u2, u).expect("validated base");
                raw.compose.push([name(w, u), name(w2, u2), name(ww, uu)]);
            }
        }
    }
    let apex = FinCategory::assemble(&raw);

    let embed: Vec<Obj> = a.objects().map(|x| apex.obj(a.object_name(x)).expect("shared object")).collect();
    let mut unembed = vec![Obj(0); apex.object_count()];
    for x in a.objects() {
        unembed[embed[x.0].0] = x;
    }
    let mut index = HashMap::with_capacity(pairs.len());
    let (mut pm, mut gm) = (vec![Mor(0); apex.morphism_count()], vec![Mor(0); apex.morphism_count()]);
    for &(w, u) in &pairs {
        let p = apex.mor(&name(w, u)).expect("pair morphism");
        pm[p.0] = w;
        gm[p.0] = u;
        index.insert((w, u), p);
    }
    let proj = Functor::assemble(apex.clone(), a.clone(), unembed.clone(), pm);
    let get = Functor::assemble(apex.clone(), b.clone(), unembed.iter().map(|&x| phi.obj(x)).collect(), gm);

    let mut puts = LiftTable::new(apex.object_count(), b.morphism_count());
    for (x, u, w) in phi.lifts().rows() {
        puts.set(embed[x.0], u, index[&(w, u)]);
    }
    let lens = DeltaLens::from_parts_unchecked(get, puts);
    let lr = lens.underlying_cofunctor();
    CofreeLens { cofunctor: phi.clone(), lens, lr, proj, embed, pairs: index }
}

impl CofreeLens {
    /// The cofunctor `phi` this lens is cofree on.
    pub fn cofunctor(&self) -> &Cofunctor {
        &self.cofunctor
    }

    pub fn apex(&self) -> &Arc<FinCategory> {
        self.lens.source()
    }

    pub fn lens(&self) -> &DeltaLens {
        &self.lens
    }

    /// `pi_A: P -> A`.
    pub fn proj(&self) -> &Functor {
        &self.proj
    }

    /// `pi_B: P -> B`, the Get of the cofree lens.
    pub fn get(&self) -> &Functor {
        self.lens.get_functor()
    }

    /// `LR phi`, the underlying cofunctor of the cofree lens.
    pub fn lr(&self) -> &Cofunctor {
        &self.lr
    }

    /// The object of `P` corresponding to an object of `A`.
    pub fn embed(&self, a: Obj) -> Obj {
        self.embed[a.0]
    }

    /// The morphism `(w, u)` of `P`, if the boundaries match.
    pub fn pair(&self, w: Mor, u: Mor) -> Option<Mor> {
        self.pairs.get(&(w, u)).copied()
    }

    /// `|P(a, a')|` for objects of `A`.
    pub fn hom_size(&self, a: Obj, a2: Obj) -> usize {
        self.apex().hom_size(self.embed(a), self.embed(a2))
    }

    /// The pairing `<p, q>: X -> P` of functors with `phi_0 . p_0 = q_0`.
    pub fn mediate(&self, p: &Functor, q: &Functor) -> Result<Functor> {
        let (a, b) = (self.cofunctor.source(), self.cofunctor.base());
        if !same_category(p.source(), q.source()) || !same_category(p.target(), a) || !same_category(q.target(), b) {
            return Err(Error::BoundaryMismatch("pairing legs do not land in the source and base".into()));
        }
        let x = p.source();
        if let Some(o) = x.objects().find(|&o| self.cofunctor.obj(p.obj(o)) != q.obj(o)) {
            return Err(Error::ObjectMapMismatch(format!(
                "`{}` goes to `{}` over `{}` but also to `{}`",
                x.object_name(o),
                a.object_name(p.obj(o)),
                b.object_name(self.cofunctor.obj(p.obj(o))),
                b.object_name(q.obj(o))
            )));
        }
        let obj_map = x.objects().map(|o| self.embed(p.obj(o))).collect();
        let mor_map = x.morphisms().map(|m| self.pair(p.mor(m), q.mor(m)).expect("boundaries agree")).collect();
        Ok(Functor::assemble(x.clone(), self.apex().clone(), obj_map, mor_map))
    }

    /// The comparison `<phi, phi-bar>: X -> P` from the span apex.
    pub fn comparison(&self) -> (CofSpan, Functor) {
        let span = to_span(&self.cofunctor);
        let c = self.mediate(&span.left, &span.right).expect("span legs commute over B_0");
        (span, c)
    }

    /// The counit `LR phi -> phi`, carried by `pi_A`.
    pub fn counit(&self) -> CofMorphism {
        CofMorphism::from_parts_unchecked(self.lr.clone(), self.cofunctor.clone(), self.proj.clone())
    }

    /// `P` as the pullback of `eta_B: B -> codisc(B_0)` along
    /// `codisc(phi_0) . eta_A`.
    pub fn via_pullback(&self) -> Pullback {
        let (a, b) = (self.cofunctor.source(), self.cofunctor.base());
        let (d, eta_b) = codiscrete_unit(b);
        let along = codiscrete_map(a, &d, self.cofunctor.obj_map().to_vec());
        pullback(&along, &eta_b).expect("both legs land in the same codiscrete category")
    }

    /// The pullback apex, with `(a, phi_0 a)` renamed to `a`, equals `P`
    /// exactly, and both have the same pairs.
    pub fn agrees_with_pullback(&self) -> Result<bool> {
        let pb = self.via_pullback();
        let renamed = pb.apex.rename_objects(|n| names::split_pair(n).map_or(n, |(a, _)| a).to_owned())?;
        let same_pairs = pb.apex.morphisms().all(|q| self.pair(pb.left.mor(q), pb.right.mor(q)).is_some())
            && self.apex().morphisms().all(|p| pb.pair_morphism(self.proj.mor(p), self.get().mor(p)).is_some());
        Ok(renamed == **self.apex() && same_pairs)
    }
}

/// `<1_A, f>: A -> P` as a lens morphism `l -> target`, where `target` must
/// be the cofree lens on `L l`.
pub fn unit_into(l: &DeltaLens, target: &CofreeLens) -> Result<LensMorphism> {
    if l.underlying_cofunctor() != target.cofunctor {
        return Err(Error::BoundaryMismatch("the cofree lens is not built on the lens's cofunctor".into()));
    }
    let carrier = target.mediate(&Functor::identity(l.source()), l.get_functor())?;
    Ok(LensMorphism::from_parts_unchecked(l.clone(), target.lens.clone(), carrier))
}

/// The unit `l -> R L l` of the adjunction.
pub fn unit(l: &DeltaLens) -> LensMorphism {
    unit_into(l, &cofree_lens(&l.underlying_cofunctor())).expect("cofree on its own cofunctor")
}

pub fn counit(phi: &Cofunctor) -> CofMorphism {
    cofree_lens(phi).counit()
}

/// `R m` between given cofree lenses on `m.from()` and `m.to()`:
/// `(w, u) |-> (h w, u)`.
pub fn r_between(m: &CofMorphism, from: &CofreeLens, to: &CofreeLens) -> Result<LensMorphism> {
    if from.cofunctor != *m.from() || to.cofunctor != *m.to() {
        return Err(Error::BoundaryMismatch("cofree lenses do not match the morphism's ends".into()));
    }
    let h = m.carrier();
    let (p, q) = (from.apex(), to.apex());
    let obj_map = p.objects().map(|x| to.embed(h.obj(from.proj.obj(x)))).collect();
    let mut mor_map = Vec::with_capacity(p.morphism_count());
    for x in p.morphisms() {
        let (w, u) = (from.proj.mor(x), from.get().mor(x));
        let y = to.pair(h.mor(w), u).ok_or_else(|| {
            Error::ObjectMapMismatch(format!("`({},{})` has no image pair", from.cofunctor.source().morphism_name(w), to.cofunctor.base().morphism_name(u)))
        })?;
        mor_map.push(y);
    }
    let carrier = Functor::assemble(p.clone(), q.clone(), obj_map, mor_map);
    Ok(LensMorphism::from_parts_unchecked(from.lens.clone(), to.lens.clone(), carrier))
}

/// `R: Cof(B) -> Lens(B)` on morphisms.
pub fn r_on_morphism(m: &CofMorphism) -> Result<LensMorphism> {
    r_between(m, &cofree_lens(m.from()), &cofree_lens(m.to()))
}

/// The comonad `LR` on morphisms.
pub fn lr_on_morphism(m: &CofMorphism) -> Result<CofMorphism> {
    Ok(r_on_morphism(m)?.cof_part())
}

/// `delta = L(unit at R phi): LR phi -> LRLR phi`, `p |-> (p, pi_B p)`.
pub fn comultiplication(phi: &Cofunctor) -> CofMorphism {
    let r = cofree_lens(phi);
    let rr = cofree_lens(&r.lr);
    unit_into(&r.lens, &rr).expect("cofree on its own cofunctor").cof_part()
}

fn expect_identity(audit: &mut Audit, composite: &Functor, err: impl Fn(String) -> Error) -> Flow {
    let c = composite.source();
    let t = composite.target();
    for m in c.morphisms() {
        let got = composite.mor(m);
        audit.expect(got == m, || err(format!("`{}` is sent to `{}`", c.morphism_name(m), t.morphism_name(got))))?;
    }
    Flow::Continue(())
}

fn expect_equal(audit: &mut Audit, lhs: &Functor, rhs: &Functor, err: impl Fn(String) -> Error) -> Flow {
    let c = lhs.source();
    let t = lhs.target();
    for m in c.morphisms() {
        let (x, y) = (lhs.mor(m), rhs.mor(m));
        audit.expect(x == y, || {
            err(format!("`{}`: left side gives `{}`, right side gives `{}`", c.morphism_name(m), t.morphism_name(x), t.morphism_name(y)))
        })?;
    }
    Flow::Continue(())
}

fn check_lens_triangle(l: &DeltaLens, r: &CofreeLens, unit_carrier: &Functor, audit: &mut Audit) -> Result<Flow> {
    let composite = r.proj.after(unit_carrier)?;
    if !same_category(composite.target(), l.source()) {
        return Err(Error::BoundaryMismatch("unit carrier does not start at the lens source".into()));
    }
    audit.law(format!("triangle: {}", Triangle::Lens));
    Ok(expect_identity(audit, &composite, |w| Error::TriangleViolation { which: Triangle::Lens, witness: w }))
}

fn check_cofunctor_triangle(r: &CofreeLens, rr: &CofreeLens, unit_carrier: &Functor, audit: &mut Audit) -> Result<Flow> {
    let r_counit = r_between(&r.counit(), rr, r)?;
    let composite = r_counit.carrier().after(unit_carrier)?;
    if !same_category(composite.target(), r.apex()) {
        return Err(Error::BoundaryMismatch("unit carrier does not start at the cofree apex".into()));
    }
    audit.law(format!("triangle: {}", Triangle::Cofunctor));
    Ok(expect_identity(audit, &composite, |w| Error::TriangleViolation { which: Triangle::Cofunctor, witness: w }))
}

/// `counit(L l) . L(unit l) = 1`, with the unit carrier supplied.
pub fn lens_triangle(l: &DeltaLens, unit_carrier: &Functor) -> Result<()> {
    let r = cofree_lens(&l.underlying_cofunctor());
    let mut audit = Audit::new(Mode::FirstFailure);
    let _ = check_lens_triangle(l, &r, unit_carrier, &mut audit)?;
    audit.conclude(|| ()).into_result()
}

/// `R(counit phi) . unit(R phi) = 1`, with the carrier of `unit(R phi)`
/// supplied.
pub fn cofunctor_triangle(phi: &Cofunctor, unit_carrier: &Functor) -> Result<()> {
    let r = cofree_lens(phi);
    let rr = cofree_lens(&r.lr);
    let mut audit = Audit::new(Mode::FirstFailure);
    let _ = check_cofunctor_triangle(&r, &rr, unit_carrier, &mut audit)?;
    audit.conclude(|| ()).into_result()
}

/// `counit(L l) . L(unit l) = 1` for the actual unit.
pub fn audit_lens_triangle(l: &DeltaLens, mode: Mode) -> Vec<LawCheck> {
    let r = cofree_lens(&l.underlying_cofunctor());
    let eta = unit_into(l, &r).expect("cofree on its own cofunctor");
    let mut audit = Audit::new(mode);
    let _ = check_lens_triangle(l, &r, eta.carrier(), &mut audit).expect("well-typed unit");
    audit.into_checks()
}

/// `R(counit phi) . unit(R phi) = 1` for the actual unit.
pub fn audit_cofunctor_triangle(phi: &Cofunctor, mode: Mode) -> Vec<LawCheck> {
    let r = cofree_lens(phi);
    let rr = cofree_lens(&r.lr);
    let eta = unit_into(&r.lens, &rr).expect("cofree on its own cofunctor");
    let mut audit = Audit::new(mode);
    let _ = check_cofunctor_triangle(&r, &rr, eta.carrier(), &mut audit).expect("well-typed unit");
    audit.into_checks()
}

/// Both triangle identities, for the lens `l` and the cofunctor `phi`.
pub fn audit_triangle_identities(phi: &Cofunctor, l: &DeltaLens, mode: Mode) -> Vec<LawCheck> {
    let mut checks = audit_lens_triangle(l, mode);
    if mode == Mode::AllWitnesses || checks.iter().all(LawCheck::passed) {
        checks.extend(audit_cofunctor_triangle(phi, mode));
    }
    checks
}

pub fn check_triangle_identities(phi: &Cofunctor, l: &DeltaLens) -> Result<()> {
    first_witness(audit_triangle_identities(phi, l, Mode::FirstFailure))
}

/// Counitality on both sides and coassociativity of `delta` at `phi`.
pub fn audit_comonad_laws(phi: &Cofunctor, mode: Mode) -> Vec<LawCheck> {
    let r = cofree_lens(phi);
    let rr = cofree_lens(&r.lr);
    let rrr = cofree_lens(&rr.lr);
    let delta = unit_into(&r.lens, &rr).expect("cofree on its own cofunctor").cof_part();
    let delta_lr = unit_into(&rr.lens, &rrr).expect("cofree on its own cofunctor").cof_part();
    let lr_counit = r_between(&r.counit(), &rr, &r).expect("counit is a Cof(B) morphism").cof_part();
    let lr_delta = r_between(&delta, &rr, &rrr).expect("delta is a Cof(B) morphism").cof_part();
    let d = delta.carrier();

    let mut audit = Audit::new(mode);
    let violation = |law: &'static str| move |w| Error::ComonadLawViolation { law, witness: w };
    let _ = (|| -> Flow {
        audit.law("counitality: counit(LR) . delta = 1");
        expect_identity(&mut audit, &rr.proj.after(d).expect("composable"), violation("counit(LR) . delta = 1"))?;
        audit.law("counitality: LR(counit) . delta = 1");
        expect_identity(&mut audit, &lr_counit.carrier().after(d).expect("composable"), violation("LR(counit) . delta = 1"))?;
        audit.law("coassociativity: LR(delta) . delta = delta(LR) . delta");
        expect_equal(
            &mut audit,
            &lr_delta.carrier().after(d).expect("composable"),
            &delta_lr.carrier().after(d).expect("composable"),
            violation("LR(delta) . delta = delta(LR) . delta"),
        )
    })();
    audit.into_checks()
}

pub fn check_comonad_laws(phi: &Cofunctor) -> Result<()> {
    first_witness(audit_comonad_laws(phi, Mode::FirstFailure))
}

fn first_witness(checks: Vec<LawCheck>) -> Result<()> {
    match checks.into_iter().flat_map(|c| c.failures).next() {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// A coalgebra for `LR`: a `Cof(B)` morphism `h: phi -> LR phi` compatible
/// with the counit and the comultiplication.
#[derive(Debug, Clone)]
pub struct Coalgebra {
    structure: CofMorphism,
    cofree: CofreeLens,
}

impl PartialEq for Coalgebra {
    fn eq(&self, other: &Self) -> bool {
        self.structure == other.structure
    }
}

impl Eq for Coalgebra {}

pub fn validate_coalgebra(phi: &Cofunctor, structure: &CofMorphism) -> Result<Coalgebra> {
    if structure.from() != phi {
        return Err(Error::BoundaryMismatch("structure map does not start at the cofunctor".into()));
    }
    audit_coalgebra(phi, structure.carrier(), Mode::FirstFailure)?.into_result()
}

/// Audits a candidate carrier `A -> P`: first as a `Cof(B)` morphism
/// `phi -> LR phi`, then against the counit and comultiplication laws.
pub fn audit_coalgebra(phi: &Cofunctor, carrier: &Functor, mode: Mode) -> Result<Audited<Coalgebra>> {
    let cofree = cofree_lens(phi);
    audit_coalgebra_in(&cofree, carrier, mode)
}

pub(crate) fn audit_coalgebra_in(cofree: &CofreeLens, carrier: &Functor, mode: Mode) -> Result<Audited<Coalgebra>> {
    let phi = &cofree.cofunctor;
    let morphism = audit_cof_morphism(carrier, phi, &cofree.lr, mode)?;
    let Some(structure) = morphism.value else {
        return Ok(Audited { value: None, checks: morphism.checks });
    };
    let mut audit = Audit::new(mode);
    let _ = (|| -> Flow {
        audit.absorb(morphism.checks)?;
        audit.law("counit law: counit . h = 1");
        let back = cofree.proj.after(carrier).expect("carrier lands in P");
        expect_identity(&mut audit, &back, Error::CounitLawViolation)?;

        audit.law("comultiplication law: LR(h) . h = delta . h");
        let rr = cofree_lens(&cofree.lr);
        let lr_h = r_between(&structure, cofree, &rr).expect("h is a Cof(B) morphism");
        let delta = unit_into(&cofree.lens, &rr).expect("cofree on its own cofunctor");
        expect_equal(
            &mut audit,
            &lr_h.carrier().after(carrier).expect("composable"),
            &delta.carrier().after(carrier).expect("composable"),
            Error::ComultLawViolation,
        )
    })();
    Ok(audit.conclude(|| Coalgebra { structure, cofree: cofree.clone() }))
}

impl Coalgebra {
    pub fn cofunctor(&self) -> &Cofunctor {
        self.structure.from()
    }

    pub fn structure(&self) -> &CofMorphism {
        &self.structure
    }

    pub fn carrier(&self) -> &Functor {
        self.structure.carrier()
    }

    pub fn cofree(&self) -> &CofreeLens {
        &self.cofree
    }

    pub fn is_identity_on_objects(&self) -> bool {
        let h = self.carrier();
        h.source().objects().all(|a| h.obj(a) == self.cofree.embed(a))
    }

    /// `pi_A . h = 1_A`, i.e. `h` has the form `<1_A, f>`.
    pub fn preserves_first_component(&self) -> bool {
        self.cofree.proj.after(self.carrier()).is_ok_and(|c| c == Functor::identity(self.cofunctor().source()))
    }
}

/// The lens `(pi_B . h, phi)` presented by a coalgebra.
pub fn coalgebra_to_lens(c: &Coalgebra) -> Result<DeltaLens> {
    let get = c.cofree.get().after(c.carrier())?;
    DeltaLens::from_parts(get, c.cofunctor())
}

/// `L(unit l)` read as a coalgebra on `L l`.
pub fn lens_to_coalgebra(l: &DeltaLens) -> Coalgebra {
    let cofree = cofree_lens(&l.underlying_cofunctor());
    let structure = unit_into(l, &cofree).expect("cofree on its own cofunctor").cof_part();
    Coalgebra { structure, cofree }
}

/// A lens as a bijective-on-objects functor followed by a cofree lens.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub first: LensMorphism,
    pub second: CofreeLens,
}

pub fn factorize(l: &DeltaLens) -> Factorization {
    let second = cofree_lens(&l.underlying_cofunctor());
    let first = unit_into(l, &second).expect("cofree on its own cofunctor");
    Factorization { first, second }
}

impl Factorization {
    /// Rebuilds the lens: Get is `pi_B . <1, f>` and each Put is the
    /// cofree Put pulled back along the first factor.
    pub fn reassemble(&self) -> Result<DeltaLens> {
        let h = self.first.carrier();
        let get = self.second.get().after(h)?;
        let a = h.source();
        let mut preimage = HashMap::with_capacity(a.morphism_count());
        for w in a.morphisms() {
            if preimage.insert(h.mor(w), w).is_some() {
                return Err(Error::BoundaryMismatch("first factor is not injective on morphisms".into()));
            }
        }
        let b = get.target();
        let mut puts = LiftTable::new(a.object_count(), b.morphism_count());
        for x in a.objects() {
            for &u in b.outgoing(get.obj(x)) {
                let p = self.second.lens.put(h.obj(x), u).expect("cofree lens is total");
                let w = preimage.get(&p).ok_or_else(|| {
                    Error::LiftNotPreserved(format!("cofree put `{}` is not in the image of the first factor", self.second.apex().morphism_name(p)))
                })?;
                puts.set(x, u, *w);
            }
        }
        validate_lens(get, puts)
    }
}
