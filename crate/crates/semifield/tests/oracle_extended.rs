//! Generator-image search at the upper end of its bound: automorphism counts
//! for class representatives of the order-2401 and order-4096 towers, and the
//! gap between algebra automorphisms over F and plain ring automorphisms.

use std::sync::Arc;

use semifield::autgroup::{predicted_sandler_aut_order, sandler_automorphism_count};
use semifield::classify::enumerate_classes;
use semifield::gf::FieldTower;
use semifield::oracle::{brute_force_automorphisms, brute_force_ring_automorphisms};
use semifield::sandler::SandlerParams;

#[test]
fn counts_match_search_up_to_order_4096() {
    for (p, e, n) in [(7u64, 1u32, 2u32), (2, 3, 2)] {
        let t = Arc::new(FieldTower::new(p, e, n).unwrap());
        let report = enumerate_classes(&t);
        assert!(report.class_count >= 4);
        for class in &report.classes {
            let pr = SandlerParams::new(t.clone(), class.representative.clone()).unwrap();
            let count = sandler_automorphism_count(&pr);
            assert_eq!(count, predicted_sandler_aut_order(&pr).unwrap());
            let brute = brute_force_automorphisms(&pr.to_spec()).unwrap();
            assert_eq!(
                brute.len() as u64,
                count,
                "p={p} e={e} n={n} a={}",
                t.render(pr.a())
            );
        }
    }
}

#[test]
fn ring_automorphisms_can_exceed_algebra_automorphisms() {
    // Over F_64/F_8 with twist T+1 (multiplicative order 21), conjugating F_8
    // by its own Frobenius extends to the algebra: 27 ring automorphisms
    // sit above the 9 automorphisms fixing F_8.
    let t = Arc::new(FieldTower::new(2, 3, 2).unwrap());
    let a = t.parse("T+1").unwrap();
    let pr = SandlerParams::new(t.clone(), a).unwrap();
    let spec = pr.to_spec();
    let fixed = brute_force_automorphisms(&spec).unwrap();
    let ring = brute_force_ring_automorphisms(&spec).unwrap();
    assert_eq!(fixed.len(), 9);
    assert_eq!(sandler_automorphism_count(&pr), 9);
    assert_eq!(ring.len(), 27);
    // the F-fixing maps are among the ring maps
    for m in &fixed {
        assert!(ring.contains(m));
    }

    // over a prime base field the two notions coincide
    let t = Arc::new(FieldTower::new(3, 1, 2).unwrap());
    let pr = SandlerParams::new(t.clone(), t.gen()).unwrap();
    let spec = pr.to_spec();
    assert_eq!(
        brute_force_automorphisms(&spec).unwrap(),
        brute_force_ring_automorphisms(&spec).unwrap()
    );
}
