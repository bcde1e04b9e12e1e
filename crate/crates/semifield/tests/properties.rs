//! Property tests: text round trips, arithmetic laws on random elements,
//! and agreement of the associator with its trilinear basis expansion.

use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semifield::algebra::{AlgElement, Family, SemifieldSpec};
use semifield::gf::FieldTower;

fn tower_strategy() -> impl Strategy<Value = Arc<FieldTower>> {
    prop_oneof![
        Just((2u64, 1u32, 2u32)),
        Just((2, 1, 3)),
        Just((2, 2, 2)),
        Just((3, 1, 2)),
        Just((5, 1, 2)),
        Just((2, 1, 6)),
        Just((7, 1, 2)),
    ]
    .prop_map(|(p, e, n)| Arc::new(FieldTower::new(p, e, n).unwrap()))
}

proptest! {
    #[test]
    fn element_text_roundtrip((t, idx) in tower_strategy().prop_flat_map(|t| {
        let order = t.order();
        (Just(t), 0..order)
    })) {
        let x = t.from_index(idx);
        let text = t.render(&x);
        let parsed = t.parse(&text).unwrap();
        prop_assert_eq!(parsed, x);
    }

    #[test]
    fn norm_is_multiplicative((t, i, j) in tower_strategy().prop_flat_map(|t| {
        let order = t.order();
        (Just(t), 0..order, 0..order)
    })) {
        let x = t.from_index(i);
        let y = t.from_index(j);
        prop_assert_eq!(t.norm(&t.mul(&x, &y)), t.mul(&t.norm(&x), &t.norm(&y)));
        prop_assert!(t.in_base_field(&t.norm(&x)));
    }

    #[test]
    fn frobenius_is_a_field_automorphism((t, i, j, k) in tower_strategy().prop_flat_map(|t| {
        let order = t.order();
        let n = t.n() as i64;
        (Just(t), 0..order, 0..order, 0..n)
    })) {
        let x = t.from_index(i);
        let y = t.from_index(j);
        prop_assert_eq!(
            t.frobenius(&t.mul(&x, &y), k),
            t.mul(&t.frobenius(&x, k), &t.frobenius(&y, k))
        );
        prop_assert_eq!(
            t.frobenius(&t.add(&x, &y), k),
            t.add(&t.frobenius(&x, k), &t.frobenius(&y, k))
        );
    }
}

fn sample_specs() -> Vec<SemifieldSpec> {
    let f9 = Arc::new(FieldTower::new(3, 1, 2).unwrap());
    let f8 = Arc::new(FieldTower::new(2, 1, 3).unwrap());
    vec![
        SemifieldSpec::sandler(f9.clone(), f9.gen()).unwrap(),
        SemifieldSpec::sandler(f8.clone(), f8.parse("T^2+T").unwrap()).unwrap(),
        SemifieldSpec::family(f9.clone(), Family::Hk, f9.parse("T+1").unwrap(), f9.one(), 1)
            .unwrap(),
        SemifieldSpec::family(f8.clone(), Family::Kn1, f8.gen(), f8.parse("T^2").unwrap(), 2)
            .unwrap(),
        SemifieldSpec::family(f8.clone(), Family::Kn2, f8.one(), f8.zero(), 1).unwrap(),
    ]
}

fn random_element(spec: &SemifieldSpec, rng: &mut ChaCha8Rng) -> AlgElement {
    let t = spec.tower();
    let coords = (0..spec.dim())
        .map(|_| t.from_index(rng.gen_range(0..t.order())))
        .collect();
    spec.element(coords)
}

#[test]
fn multiplication_is_bilinear_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for spec in sample_specs() {
        for _ in 0..300 {
            let x = random_element(&spec, &mut rng);
            let y = random_element(&spec, &mut rng);
            let z = random_element(&spec, &mut rng);
            assert_eq!(
                spec.mul(&spec.add(&x, &y), &z),
                spec.add(&spec.mul(&x, &z), &spec.mul(&y, &z))
            );
            assert_eq!(
                spec.mul(&x, &spec.add(&y, &z)),
                spec.add(&spec.mul(&x, &y), &spec.mul(&x, &z))
            );
        }
    }
}

#[test]
fn associator_matches_trilinear_expansion() {
    // the associator of arbitrary elements equals the triple sum of basis
    // associators weighted by flat coordinates
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for spec in sample_specs() {
        let m = spec.flat_dim();
        let p = spec.tower().p();
        let basis: Vec<AlgElement> = (0..m)
            .map(|k| {
                let mut flat = vec![0u64; m];
                flat[k] = 1;
                spec.from_flat(&flat)
            })
            .collect();
        let mut basis_assoc = Vec::with_capacity(m * m * m);
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    basis_assoc.push(spec.to_flat(&spec.associator(&basis[i], &basis[j], &basis[k])));
                }
            }
        }
        for _ in 0..1000 {
            let x = random_element(&spec, &mut rng);
            let y = random_element(&spec, &mut rng);
            let z = random_element(&spec, &mut rng);
            let direct = spec.to_flat(&spec.associator(&x, &y, &z));
            let (fx, fy, fz) = (spec.to_flat(&x), spec.to_flat(&y), spec.to_flat(&z));
            let mut expanded = vec![0u64; m];
            for (i, &xi) in fx.iter().enumerate() {
                if xi == 0 {
                    continue;
                }
                for (j, &yj) in fy.iter().enumerate() {
                    if yj == 0 {
                        continue;
                    }
                    for (k, &zk) in fz.iter().enumerate() {
                        if zk == 0 {
                            continue;
                        }
                        let w = xi * yj % p * zk % p;
                        let row = &basis_assoc[(i * m + j) * m + k];
                        for (o, &v) in expanded.iter_mut().zip(row) {
                            *o = (*o + w * v) % p;
                        }
                    }
                }
            }
            assert_eq!(direct, expanded);
        }
    }
}
