//! Instances shared by the benchmarks.

use std::sync::Arc;

use deltacat::fincat::{validate_category, RawMorphism};
use deltacat::{cofree_lens, fixtures, Cofunctor, FinCategory, RawCategory};

/// The total order `0 -> 1 -> ... -> n-1` as a category.
pub fn chain(n: usize) -> Arc<FinCategory> {
    let obj = |i: usize| format!("c{i}");
    let mor = |i: usize, j: usize| format!("m{i}_{j}");
    let mut raw = RawCategory { objects: (0..n).map(obj).collect(), ..Default::default() };
    for i in 0..n {
        for j in i + 1..n {
            raw.morphisms.push(RawMorphism::new(mor(i, j), obj(i), obj(j)));
            for k in j + 1..n {
                raw.compose.push([mor(i, j), mor(j, k), mor(i, k)]);
            }
        }
    }
    Arc::new(validate_category(&raw).expect("chains are categories"))
}

/// The cofunctor `chain(n) -> Two` sending the first `split` objects to `0`
/// and the rest to `1`, lifting `u` to the morphism into the first object
/// over `1`.
pub fn split_chain(n: usize, split: usize) -> Cofunctor {
    let a = chain(n);
    let two = fixtures::two();
    let (zero, one) = (two.obj("0").unwrap(), two.obj("1").unwrap());
    let u = two.mor("u").unwrap();
    let obj_map: Vec<_> = (0..n).map(|i| if i < split { zero } else { one }).collect();
    let mut lifts = deltacat::LiftTable::new(n, two.morphism_count());
    for (i, x) in a.objects().enumerate() {
        lifts.set(x, two.identity(obj_map[i]), a.identity(x));
        if i < split {
            lifts.set(x, u, a.mor(&format!("m{i}_{split}")).unwrap());
        }
    }
    deltacat::cofunctor::validate_cofunctor(a, two, obj_map, lifts).expect("split chains are cofunctors")
}

/// `phi`, `LR phi`, `LR LR phi`, ... up to `depth` applications.
pub fn cofree_tower(phi: &Cofunctor, depth: usize) -> Vec<Cofunctor> {
    let mut tower = vec![phi.clone()];
    for _ in 0..depth {
        let next = cofree_lens(tower.last().unwrap()).lens().underlying_cofunctor();
        tower.push(next);
    }
    tower
}
