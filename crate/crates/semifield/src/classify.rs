//! Isomorphism of cyclic-construction algebras: the witness-based pairwise
//! test, equivalence classes of twists, and the closed-form class counts.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::AlgElement;
use crate::error::{Error, Result};
use crate::gf::{is_prime, prime_power, FieldElement, FieldTower};
use crate::sandler::SandlerParams;

/// Witness for an isomorphism A_a -> A_b: sigma^power(a) = scalar · b with
/// scalar in F*, and norm_preimage an element of norm equal to scalar.
#[derive(Clone, Debug)]
pub struct IsoWitness {
    pub power: u32,
    pub scalar: FieldElement,
    pub norm_preimage: FieldElement,
}

/// Test A_a ≅ A_b. On success the witness is returned and the induced map is
/// verified multiplicative on a deterministic random sample of pairs.
pub fn are_isomorphic(pa: &SandlerParams, pb: &SandlerParams) -> Result<Option<IsoWitness>> {
    if pa.tower() != pb.tower() {
        return Err(Error::TowerMismatch);
    }
    let t = pa.tower();
    let b_inv = t.inv(pb.a()).expect("twist elements are nonzero");
    for power in 0..t.n() {
        let scalar = t.mul(&t.frobenius(pa.a(), power as i64), &b_inv);
        if !t.in_base_field(&scalar) {
            continue;
        }
        let fiber = t.norm_fiber(&scalar)?;
        let norm_preimage = fiber
            .into_iter()
            .next()
            .expect("the norm maps onto F*, so every scalar has a preimage");
        let witness = IsoWitness {
            power,
            scalar,
            norm_preimage,
        };
        assert!(
            verify_iso_map(pa, pb, &witness, 128),
            "witnessed map failed the multiplicativity sample"
        );
        return Ok(Some(witness));
    }
    Ok(None)
}

/// Image of x under the map induced by a witness: coordinate j picks up
/// sigma^power and the factor l sigma(l) ... sigma^{j-1}(l).
pub fn iso_image(pa: &SandlerParams, witness: &IsoWitness, x: &AlgElement) -> AlgElement {
    let t = pa.tower();
    let n = t.n() as usize;
    let spec = pa.to_spec();
    let mut factor = t.one();
    let mut coords = Vec::with_capacity(n);
    for (j, c) in x.coords.iter().enumerate() {
        coords.push(t.mul(&t.frobenius(c, witness.power as i64), &factor));
        factor = t.mul(&factor, &t.frobenius(&witness.norm_preimage, j as i64));
    }
    spec.element(coords)
}

fn verify_iso_map(pa: &SandlerParams, pb: &SandlerParams, witness: &IsoWitness, samples: usize) -> bool {
    let t = pa.tower();
    let spec_a = pa.to_spec();
    let spec_b = pb.to_spec();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_CAFE);
    let order = t.order();
    let n = t.n() as usize;
    let random_element = |rng: &mut ChaCha8Rng| {
        let coords: Vec<FieldElement> = (0..n)
            .map(|_| t.from_index(rng.gen_range(0..order)))
            .collect();
        spec_a.element(coords)
    };
    for _ in 0..samples {
        let x = random_element(&mut rng);
        let y = random_element(&mut rng);
        let lhs = iso_image(pa, witness, &spec_a.mul(&x, &y));
        let rhs = spec_b.mul(&iso_image(pa, witness, &x), &iso_image(pa, witness, &y));
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// One equivalence class of twists: members sorted by element index, the
/// representative is the smallest.
#[derive(Clone, Debug)]
pub struct IsoClass {
    pub representative: FieldElement,
    pub members: Vec<FieldElement>,
    pub size: usize,
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub class_count: usize,
    /// Closed-form count; present exactly when the extension degree is prime.
    pub formula_count: Option<u64>,
    pub classes: Vec<IsoClass>,
}

/// Partition L \ F under a ~ k·sigma^i(a), k in F*, 0 <= i < n.
pub fn enumerate_classes(tower: &Arc<FieldTower>) -> ClassificationReport {
    let t = tower;
    let base_units: Vec<FieldElement> = t
        .nonzero_elements()
        .filter(|x| t.in_base_field(x))
        .collect();
    let order = t.order();
    let mut seen = vec![false; order as usize];
    let mut classes = Vec::new();
    for idx in 0..order {
        if seen[idx as usize] {
            continue;
        }
        let a = t.from_index(idx);
        if a.is_zero() || t.in_base_field(&a) {
            seen[idx as usize] = true;
            continue;
        }
        let mut member_idx = Vec::new();
        for i in 0..t.n() {
            let conj = t.frobenius(&a, i as i64);
            for k in &base_units {
                let m = t.mul(k, &conj);
                let mi = t.index_of(&m);
                if !seen[mi as usize] {
                    seen[mi as usize] = true;
                    member_idx.push(mi);
                }
            }
        }
        member_idx.sort_unstable();
        let members: Vec<FieldElement> = member_idx.iter().map(|&i| t.from_index(i)).collect();
        classes.push(IsoClass {
            representative: members[0].clone(),
            size: members.len(),
            members,
        });
    }
    let formula_count = if is_prime(t.n() as u64) {
        Some(
            predicted_class_count(t.q(), t.n())
                .expect("prime degree over a prime power is in the formula's domain"),
        )
    } else {
        None
    };
    ClassificationReport {
        class_count: classes.len(),
        formula_count,
        classes,
    }
}

/// Closed-form number of classes for prime degree r over F_q:
/// r-1 + (q^r - q - (q-1)(r-1)) / (r(q-1)) when r divides q-1,
/// (q^r - q) / (r(q-1)) otherwise.
pub fn predicted_class_count(q: u64, r: u32) -> Result<u64> {
    if !is_prime(r as u64) {
        return Err(Error::CompositeDegree(r));
    }
    if prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    let qr = (q as u128)
        .checked_pow(r)
        .ok_or(Error::SearchTooLarge {
            order: u128::MAX,
            bound: u128::MAX,
        })?;
    let q = q as u128;
    let r = r as u128;
    let denom = r * (q - 1);
    let count = if (q - 1).is_multiple_of(r) {
        let numer = qr - q - (q - 1) * (r - 1);
        if !numer.is_multiple_of(denom) {
            return Err(Error::NonIntegerCount {
                q: q as u64,
                r: r as u32,
            });
        }
        (r - 1) + numer / denom
    } else {
        let numer = qr - q;
        if !numer.is_multiple_of(denom) {
            return Err(Error::NonIntegerCount {
                q: q as u64,
                r: r as u32,
            });
        }
        numer / denom
    };
    Ok(count as u64)
}
