//! Brute-force verifiers: raw zero-divisor scans, generator-image
//! automorphism search (with a full GL fallback for tiny algebras), and
//! pairwise-isomorphism class partitions. Deliberately dumb; every formula
//! layer result is checked against these at desk scale.

use std::sync::Arc;

use crate::algebra::{odometer_step, AlgElement, SemifieldSpec, StructureTable};
use crate::autgroup::matrix_is_multiplicative;
use crate::classify::are_isomorphic;
use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldTower};
use crate::linalg::{MatFp, RowSpace};
use crate::sandler::SandlerParams;

/// Largest algebra order accepted by the raw zero-divisor scan. Overridable
/// downward through SEMIFIELD_MAX_ORDER.
pub fn scan_order_bound() -> u128 {
    std::env::var("SEMIFIELD_MAX_ORDER")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1 << 16)
}

/// Largest algebra order accepted by the generator-image search.
pub const AUT_SEARCH_BOUND: u128 = 1 << 12;

/// Largest field order accepted by the pairwise class partition.
pub const CLASS_SEARCH_BOUND: u64 = 729;

#[derive(Clone, Debug)]
pub struct ScanOutcome {
    pub is_division: bool,
    pub witness: Option<(AlgElement, AlgElement)>,
    pub pairs_scanned: u128,
}

/// Direct double loop over all nonzero pairs, exiting at the first product
/// equal to zero.
pub fn zero_divisor_scan(spec: &SemifieldSpec) -> Result<ScanOutcome> {
    let order = spec.order();
    let bound = scan_order_bound();
    if order > bound {
        return Err(Error::SearchTooLarge { order, bound });
    }
    let (division, witness, pairs) = scan_table(spec.table());
    Ok(ScanOutcome {
        is_division: division,
        witness: witness.map(|(x, y)| (spec.from_flat(&x), spec.from_flat(&y))),
        pairs_scanned: pairs,
    })
}

/// The scan itself, on a bare structure table. Exposed so the machinery can
/// be pointed at a known field, where no zero divisors may appear.
pub fn scan_table(table: &StructureTable) -> (bool, Option<(Vec<u64>, Vec<u64>)>, u128) {
    let m = table.dim();
    let p = table.modulus();
    let order = (p as u128).pow(m as u32);
    let mut pairs = 0u128;
    if p == 2 {
        let masks = table.f2_masks();
        let order = order as u64;
        for xi in 1..order {
            // columns of left multiplication by x, as masks
            let mut cols = vec![0u32; m];
            let mut bits = xi;
            while bits != 0 {
                let s = bits.trailing_zeros() as usize;
                for (k, c) in cols.iter_mut().enumerate() {
                    *c ^= masks[s * m + k];
                }
                bits &= bits - 1;
            }
            // walk y in Gray-code order, updating the product by one column
            let mut acc = 0u32;
            let mut y = 0u64;
            for g in 1..order {
                let k = g.trailing_zeros() as usize;
                y ^= 1 << k;
                acc ^= cols[k];
                pairs += 1;
                if acc == 0 {
                    let xv = unpack_bits(xi, m);
                    let yv = unpack_bits(y, m);
                    return (false, Some((xv, yv)), pairs);
                }
            }
        }
        return (true, None, pairs);
    }
    let mut x = vec![0u64; m];
    for _ in 1..order {
        odometer_step(&mut x, p);
        let cols: Vec<Vec<u64>> = (0..m).map(|k| table.vec_times_basis(&x, k)).collect();
        // walk y with an odometer, adding column k once per digit step
        let mut y = vec![0u64; m];
        let mut acc = vec![0u64; m];
        for _ in 1..order {
            let mut k = 0;
            loop {
                y[k] += 1;
                for (a, &c) in acc.iter_mut().zip(&cols[k]) {
                    *a = (*a + c) % p;
                }
                if y[k] < p {
                    break;
                }
                y[k] = 0;
                k += 1;
            }
            pairs += 1;
            if acc.iter().all(|&v| v == 0) {
                return (false, Some((x.clone(), y.clone())), pairs);
            }
        }
    }
    (true, None, pairs)
}

fn unpack_bits(v: u64, m: usize) -> Vec<u64> {
    (0..m).map(|k| (v >> k) & 1).collect()
}

// Word basis generated from the unit by right multiplication with the two
// generators; records how each basis vector was produced so a candidate
// image assignment extends mechanically.
struct GeneratedBasis {
    recipes: Vec<(usize, usize)>, // (parent word, generator index), word 0 is the unit
    products_in_words: Vec<Vec<u64>>, // b_i ∘ b_j in word coordinates, index i*m+j
    // embedded basis of F as (word coordinates, flat vector) pairs
    base_field: Vec<(Vec<u64>, Vec<u64>)>,
}

fn generated_basis(spec: &SemifieldSpec, gens: &[Vec<u64>; 2]) -> Result<GeneratedBasis> {
    let table = spec.table();
    let m = spec.flat_dim();
    let p = spec.tower().p();
    let mut vectors: Vec<Vec<u64>> = vec![spec.to_flat(&spec.one())];
    let mut recipes: Vec<(usize, usize)> = vec![(0, 0)];
    let mut span = RowSpace::new(p, m);
    span.insert(vectors[0].clone());
    let mut cursor = 0usize;
    while vectors.len() < m && cursor < vectors.len() {
        for (gi, g) in gens.iter().enumerate() {
            if vectors.len() == m {
                break;
            }
            let v = table.product(&vectors[cursor], g);
            if span.insert(v.clone()) {
                vectors.push(v);
                recipes.push((cursor, gi));
            }
        }
        cursor += 1;
    }
    if vectors.len() < m {
        return Err(Error::GeneratorsDoNotSpan);
    }
    let basis_mat = MatFp::from_cols(p, m, &vectors);
    let basis_inv = basis_mat.inverse().expect("word basis is independent");
    let mut products_in_words = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let prod = table.product(&vectors[i], &vectors[j]);
            products_in_words.push(basis_inv.apply(&prod));
        }
    }
    let base_field = spec
        .tower()
        .base_field_basis()
        .iter()
        .map(|f| {
            let flat = spec.to_flat(&spec.embed(f));
            (basis_inv.apply(&flat), flat)
        })
        .collect();
    Ok(GeneratedBasis {
        recipes,
        products_in_words,
        base_field,
    })
}

/// All automorphisms fixing F pointwise, by generator-image search: try every
/// pair of images for (w, z), where w is the modulus root embedded in slot 0
/// and z the slot-1 unit; accept a pair exactly when it extends to a
/// multiplicative linear bijection fixing the unit and F. Returns matrices
/// sorted by encoding.
pub fn brute_force_automorphisms(spec: &SemifieldSpec) -> Result<Vec<MatFp>> {
    generator_image_search(spec, true)
}

/// The same search without requiring F to stay fixed: all multiplicative
/// bijective maps linear over the prime field. A strict superset of
/// `brute_force_automorphisms` is possible once F exceeds the prime field,
/// through maps acting on F by a power of its Frobenius.
pub fn brute_force_ring_automorphisms(spec: &SemifieldSpec) -> Result<Vec<MatFp>> {
    generator_image_search(spec, false)
}

fn generator_image_search(spec: &SemifieldSpec, fix_base_field: bool) -> Result<Vec<MatFp>> {
    let order = spec.order();
    if order > AUT_SEARCH_BOUND {
        return Err(Error::SearchTooLarge {
            order,
            bound: AUT_SEARCH_BOUND,
        });
    }
    let t = spec.tower();
    let table = spec.table();
    let m = spec.flat_dim();
    let p = t.p();
    let w = spec.to_flat(&spec.embed(&t.gen()));
    let z = spec.to_flat(&spec.monomial(&t.one(), 1));
    let basis = generated_basis(spec, &[w, z])?;
    let modulus = t.modulus().to_vec();

    let order = order as u64;
    let mut found: Vec<MatFp> = Vec::new();
    let mut gw = vec![0u64; m];
    for _ in 1..order {
        odometer_step(&mut gw, p);
        if !flat_satisfies_polynomial(table, &gw, &modulus) {
            continue;
        }
        let mut gz = vec![0u64; m];
        for _ in 1..order {
            odometer_step(&mut gz, p);
            if let Some(mat) = extend_candidate(spec, &basis, &gw, &gz, fix_base_field) {
                found.push(mat);
            }
        }
    }
    found.sort_by(|a, b| a.encoding().cmp(b.encoding()));
    Ok(found)
}

// Evaluate the monic polynomial at a flat element of the algebra; the image
// of w must satisfy the modulus, which prunes the outer loop.
fn flat_satisfies_polynomial(table: &StructureTable, x: &[u64], poly: &[u64]) -> bool {
    let m = table.dim();
    let p = table.modulus();
    let mut acc = vec![0u64; m];
    acc[0] = poly[0] % p;
    let mut power = vec![0u64; m];
    power[0] = 1;
    for &c in &poly[1..] {
        power = table.product(&power, x);
        for (a, &v) in acc.iter_mut().zip(&power) {
            *a = (*a + c * v) % p;
        }
    }
    acc.iter().all(|&v| v == 0)
}

fn extend_candidate(
    spec: &SemifieldSpec,
    basis: &GeneratedBasis,
    gw: &[u64],
    gz: &[u64],
    fix_base_field: bool,
) -> Option<MatFp> {
    let table = spec.table();
    let m = spec.flat_dim();
    let p = spec.tower().p();
    let gens = [gw, gz];
    // images of the word basis under the candidate assignment
    let mut imgs: Vec<Vec<u64>> = Vec::with_capacity(m);
    let mut unit = vec![0u64; m];
    unit[0] = 1;
    imgs.push(unit);
    for &(parent, gi) in &basis.recipes[1..] {
        let img = table.product(&imgs[parent], gens[gi]);
        imgs.push(img);
    }
    // multiplicativity on word-basis pairs, early exit
    for i in 0..m {
        for j in 0..m {
            let wordcoords = &basis.products_in_words[i * m + j];
            let mut lhs = vec![0u64; m];
            for (k, &c) in wordcoords.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (o, &v) in lhs.iter_mut().zip(&imgs[k]) {
                    *o = (*o + c * v) % p;
                }
            }
            let rhs = table.product(&imgs[i], &imgs[j]);
            if lhs != rhs {
                return None;
            }
        }
    }
    if fix_base_field {
        for (word_coords, flat) in &basis.base_field {
            let mut image = vec![0u64; m];
            for (k, &c) in word_coords.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (o, &v) in image.iter_mut().zip(&imgs[k]) {
                    *o = (*o + c * v) % p;
                }
            }
            if image != *flat {
                return None;
            }
        }
    }
    // assemble the matrix in the standard basis and require bijectivity
    let img_mat = MatFp::from_cols(p, m, &imgs);
    let basis_vectors: Vec<Vec<u64>> = {
        // recompute word vectors from recipes against the true generators
        let w = spec.to_flat(&spec.embed(&spec.tower().gen()));
        let z = spec.to_flat(&spec.monomial(&spec.tower().one(), 1));
        let true_gens = [&w, &z];
        let mut vecs: Vec<Vec<u64>> = Vec::with_capacity(m);
        let mut unit = vec![0u64; m];
        unit[0] = 1;
        vecs.push(unit);
        for &(parent, gi) in &basis.recipes[1..] {
            vecs.push(table.product(&vecs[parent], true_gens[gi]));
        }
        vecs
    };
    let basis_mat = MatFp::from_cols(p, m, &basis_vectors);
    let mat = img_mat.mul(&basis_mat.inverse()?);
    if !mat.is_invertible() {
        return None;
    }
    Some(mat)
}

/// Exhaustive search over all of GL for the smallest algebras (order 16 over
/// F_2): validates the generator-image search itself.
pub fn gl_automorphism_search(spec: &SemifieldSpec) -> Result<Vec<MatFp>> {
    let m = spec.flat_dim();
    let p = spec.tower().p();
    let order = spec.order();
    if p != 2 || m > 4 {
        return Err(Error::SearchTooLarge { order, bound: 16 });
    }
    let table = spec.table();
    let base_field: Vec<Vec<u64>> = spec
        .tower()
        .base_field_basis()
        .iter()
        .map(|f| spec.to_flat(&spec.embed(f)))
        .collect();
    let mut found = Vec::new();
    for code in 0u32..1 << (m * m) {
        let mut mat = MatFp::zeros(2, m, m);
        for i in 0..m {
            for j in 0..m {
                mat.set(i, j, ((code >> (i * m + j)) & 1) as u64);
            }
        }
        // must fix the unit e_0: first column is e_0
        if (0..m).any(|i| mat.get(i, 0) != u64::from(i == 0)) {
            continue;
        }
        if !mat.is_invertible() {
            continue;
        }
        if !matrix_is_multiplicative(table, &mat) {
            continue;
        }
        if base_field.iter().any(|f| mat.apply(f) != *f) {
            continue;
        }
        found.push(mat);
    }
    found.sort_by(|a, b| a.encoding().cmp(b.encoding()));
    Ok(found)
}

/// Partition of the twists by pairwise isomorphism tests; each test carries
/// its own witness verification. Classes sorted by representative index,
/// members ascending.
pub fn brute_force_classes(tower: &Arc<FieldTower>) -> Result<Vec<Vec<FieldElement>>> {
    if tower.order() > CLASS_SEARCH_BOUND {
        return Err(Error::SearchTooLarge {
            order: tower.order() as u128,
            bound: CLASS_SEARCH_BOUND as u128,
        });
    }
    let mut classes: Vec<(SandlerParams, Vec<FieldElement>)> = Vec::new();
    for idx in 0..tower.order() {
        let a = tower.from_index(idx);
        if a.is_zero() || tower.in_base_field(&a) {
            continue;
        }
        let pa = SandlerParams::new(tower.clone(), a.clone())?;
        let mut placed = false;
        for (rep, members) in classes.iter_mut() {
            if are_isomorphic(&pa, rep)?.is_some() {
                members.push(a.clone());
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push((pa, vec![a]));
        }
    }
    Ok(classes.into_iter().map(|(_, members)| members).collect())
}
