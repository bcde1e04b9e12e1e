//! Towers of finite fields F_p ⊂ F_q ⊂ L = F_{q^n} with exact arithmetic.
//!
//! L is represented once over the prime field as F_p[T]/(modulus) with the
//! modulus of degree d = e·n. The distinguished subfield F = F_q is the fixed
//! field of sigma = (x -> x^q), the generator of the Galois group of L over F;
//! membership is the test sigma(x) = x. Sigma and its powers are precomputed
//! as F_p-linear maps, so Galois action costs one matrix apply.

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{MatFp, RowSpace};
use crate::poly;

/// Largest permitted |L|. Exhaustive per-tower enumeration (norm fibers,
/// eigen scans) stays cheap up to this size.
pub const MAX_FIELD_ORDER: u128 = 1 << 16;

/// Element of L as a length-d coefficient vector over F_p (little-endian in
/// the power basis of the modulus root T).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl std::fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", poly::render(&self.coeffs))
    }
}

/// The tower F_p ⊂ F_{p^e} = F ⊂ L = F_{q^n}.
pub struct FieldTower {
    p: u64,
    e: u32,
    n: u32,
    modulus: Vec<u64>,
    canonical: bool,
    sigma_mats: Vec<MatFp>,
    norm_table: OnceLock<Vec<u32>>,
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.n == other.n && self.modulus == other.modulus
    }
}
impl Eq for FieldTower {}

impl std::fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "F_{}^{} over F_{} (n={}, modulus {})",
            self.p,
            self.degree(),
            self.q(),
            self.n,
            poly::render(&self.modulus)
        )
    }
}

impl FieldTower {
    /// Tower with the canonical modulus: the lexicographically smallest monic
    /// irreducible of degree e·n, coefficient tuples compared as base-p
    /// integers. Deterministic across runs.
    pub fn new(p: u64, e: u32, n: u32) -> Result<Self> {
        Self::check_shape(p, e, n)?;
        let d = (e * n) as usize;
        let modulus = poly::canonical_irreducible(p, d);
        Self::build(p, e, n, modulus, true)
    }

    /// Tower with an explicit modulus (full little-endian coefficients,
    /// monic, degree e·n, irreducible).
    pub fn with_modulus(p: u64, e: u32, n: u32, modulus: Vec<u64>) -> Result<Self> {
        Self::check_shape(p, e, n)?;
        let d = (e * n) as usize;
        let modulus = poly::trim(modulus);
        if poly::deg(&modulus) != Some(d) || modulus[d] != 1 || !poly::is_irreducible(p, &modulus) {
            return Err(Error::BadModulus(poly::render(&modulus)));
        }
        let canonical = modulus == poly::canonical_irreducible(p, d);
        Self::build(p, e, n, modulus, canonical)
    }

    fn check_shape(p: u64, e: u32, n: u32) -> Result<()> {
        if !poly::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 || n < 2 {
            return Err(Error::DegreeTooSmall(n));
        }
        let order = (p as u128).checked_pow(e * n);
        match order {
            Some(o) if o <= MAX_FIELD_ORDER => Ok(()),
            _ => Err(Error::FieldTooLarge {
                order: order.unwrap_or(u128::MAX),
                bound: MAX_FIELD_ORDER,
            }),
        }
    }

    fn build(p: u64, e: u32, n: u32, modulus: Vec<u64>, canonical: bool) -> Result<Self> {
        let mut tower = FieldTower {
            p,
            e,
            n,
            modulus,
            canonical,
            sigma_mats: Vec::new(),
            norm_table: OnceLock::new(),
        };
        tower.sigma_mats = tower.build_sigma_mats();
        debug_assert!(tower.frobenius(&tower.gen(), tower.n as i64) == tower.gen());
        Ok(tower)
    }

    // Matrix of sigma^i for each i in 0..n; column t of sigma^i is (T^t)^{q^i}.
    fn build_sigma_mats(&self) -> Vec<MatFp> {
        let d = self.degree();
        let q = self.q() as u128;
        (0..self.n)
            .map(|i| {
                let qi = q.pow(i);
                let cols: Vec<Vec<u64>> = (0..d)
                    .map(|t| {
                        let mut unit = vec![0u64; d];
                        unit[t] = 1;
                        poly::powmod(self.p, &unit, qi, &self.modulus)
                    })
                    .collect();
                MatFp::from_cols(self.p, d, &cols)
            })
            .collect()
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Degree of L over the prime field: d = e·n.
    pub fn degree(&self) -> usize {
        (self.e * self.n) as usize
    }

    /// q = p^e, the order of the distinguished subfield F.
    pub fn q(&self) -> u64 {
        self.p.pow(self.e)
    }

    /// |L| = q^n.
    pub fn order(&self) -> u64 {
        self.p.pow(self.e * self.n)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn modulus_text(&self) -> String {
        poly::render(&self.modulus)
    }

    pub fn has_canonical_modulus(&self) -> bool {
        self.canonical
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.degree()],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_index(1)
    }

    /// The modulus root T.
    pub fn gen(&self) -> FieldElement {
        let mut coeffs = vec![0; self.degree()];
        coeffs[1] = 1;
        FieldElement { coeffs }
    }

    /// Scalar c·1 for c in F_p.
    pub fn scalar(&self, c: u64) -> FieldElement {
        let mut coeffs = vec![0; self.degree()];
        coeffs[0] = c % self.p;
        FieldElement { coeffs }
    }

    /// Element from arbitrary little-endian coefficients, reduced mod p and
    /// mod the modulus.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElement {
        let reduced: Vec<u64> = coeffs.iter().map(|&c| c % self.p).collect();
        let coeffs = poly::rem(self.p, &reduced, &self.modulus);
        FieldElement { coeffs }
    }

    /// Element with index written base p, little-endian.
    pub fn from_index(&self, mut idx: u64) -> FieldElement {
        let mut coeffs = vec![0u64; self.degree()];
        for c in coeffs.iter_mut() {
            *c = idx % self.p;
            idx /= self.p;
        }
        debug_assert_eq!(idx, 0, "index out of range");
        FieldElement { coeffs }
    }

    pub fn index_of(&self, x: &FieldElement) -> u64 {
        let mut idx = 0u64;
        for &c in x.coeffs.iter().rev() {
            idx = idx * self.p + c;
        }
        idx
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(|i| self.from_index(i))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.order()).map(|i| self.from_index(i))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        FieldElement { coeffs }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let prod = poly::mul(self.p, &a.coeffs, &b.coeffs);
        let coeffs = poly::rem(self.p, &prod, &self.modulus);
        FieldElement { coeffs }
    }

    pub fn scalar_mul(&self, c: u64, a: &FieldElement) -> FieldElement {
        let c = c % self.p;
        let coeffs = a.coeffs.iter().map(|&x| x * c % self.p).collect();
        FieldElement { coeffs }
    }

    pub fn pow(&self, a: &FieldElement, k: u128) -> FieldElement {
        FieldElement {
            coeffs: poly::powmod(self.p, &a.coeffs, k, &self.modulus),
        }
    }

    /// Multiplicative inverse; None for zero.
    pub fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        Some(self.pow(a, (self.order() - 2) as u128))
    }

    /// sigma^i(x) = x^{q^i}; i is reduced mod n, negatives allowed.
    pub fn frobenius(&self, x: &FieldElement, i: i64) -> FieldElement {
        let i = i.rem_euclid(self.n as i64) as usize;
        FieldElement {
            coeffs: self.sigma_mats[i].apply(&x.coeffs),
        }
    }

    /// Membership in F: x is fixed by sigma, i.e. x^q = x.
    pub fn in_base_field(&self, x: &FieldElement) -> bool {
        self.frobenius(x, 1) == *x
    }

    /// F_p-basis of F inside L (kernel of sigma - id).
    pub fn base_field_basis(&self) -> Vec<FieldElement> {
        let d = self.degree();
        let mut rs = RowSpace::new(self.p, d);
        let sigma = &self.sigma_mats[1];
        for i in 0..d {
            let mut row = Vec::with_capacity(d);
            for j in 0..d {
                let mut v = sigma.get(i, j);
                if i == j {
                    v = (v + self.p - 1) % self.p;
                }
                row.push(v);
            }
            rs.insert(row);
        }
        rs.kernel_basis()
            .into_iter()
            .map(|coeffs| FieldElement { coeffs })
            .collect()
    }

    /// Norm from L to F: the product of all Galois conjugates.
    pub fn norm(&self, x: &FieldElement) -> FieldElement {
        let mut acc = x.clone();
        for i in 1..self.n {
            let conj = self.frobenius(x, i as i64);
            acc = self.mul(&acc, &conj);
        }
        acc
    }

    fn norm_indices(&self) -> &[u32] {
        self.norm_table.get_or_init(|| {
            (0..self.order())
                .map(|i| self.index_of(&self.norm(&self.from_index(i))) as u32)
                .collect()
        })
    }

    /// All x in L with norm k, ascending by index. k must lie in F.
    pub fn norm_fiber(&self, k: &FieldElement) -> Result<Vec<FieldElement>> {
        if !self.in_base_field(k) {
            return Err(Error::NotInBaseField);
        }
        let target = self.index_of(k) as u32;
        Ok(self
            .norm_indices()
            .iter()
            .enumerate()
            .filter(|&(_, &v)| v == target)
            .map(|(i, _)| self.from_index(i as u64))
            .collect())
    }

    /// Number of elements with norm k, without materializing the fiber.
    pub fn norm_fiber_size(&self, k: &FieldElement) -> Result<usize> {
        if !self.in_base_field(k) {
            return Err(Error::NotInBaseField);
        }
        let target = self.index_of(k) as u32;
        Ok(self.norm_indices().iter().filter(|&&v| v == target).count())
    }

    /// Smallest d dividing n with x in F_{q^d}, i.e. sigma^d(x) = x.
    pub fn subfield_degree(&self, x: &FieldElement) -> u32 {
        for d in 1..=self.n {
            if self.n.is_multiple_of(d) && self.frobenius(x, d as i64) == *x {
                return d;
            }
        }
        unreachable!("sigma^n is the identity")
    }

    /// Eigen decomposition of sigma^i on L*: all pairs (k, x) with
    /// sigma^i(x) = k·x and k in F. Grouped by eigenvalue, ascending by
    /// eigenvalue index, eigenvectors ascending by index.
    pub fn eigen_elements(&self, i: i64) -> Vec<(FieldElement, Vec<FieldElement>)> {
        let mut buckets: Vec<(u64, Vec<FieldElement>)> = Vec::new();
        for x in self.nonzero_elements() {
            let image = self.frobenius(&x, i);
            let ratio = self.mul(&image, &self.inv(&x).unwrap());
            if !self.in_base_field(&ratio) {
                continue;
            }
            let key = self.index_of(&ratio);
            match buckets.iter_mut().find(|(k, _)| *k == key) {
                Some((_, v)) => v.push(x),
                None => buckets.push((key, vec![x])),
            }
        }
        buckets.sort_by_key(|(k, _)| *k);
        buckets
            .into_iter()
            .map(|(k, v)| (self.from_index(k), v))
            .collect()
    }

    pub fn parse(&self, text: &str) -> Result<FieldElement> {
        let coeffs = poly::parse(self.p, text)?;
        if poly::deg(&coeffs).is_some_and(|d| d >= self.degree()) {
            return Err(Error::Parse(text.to_string()));
        }
        Ok(self.from_coeffs(&coeffs))
    }

    pub fn render(&self, x: &FieldElement) -> String {
        poly::render(&x.coeffs)
    }

    /// Parse a modulus override such as `T^2-2`.
    pub fn parse_modulus(p: u64, text: &str) -> Result<Vec<u64>> {
        poly::parse(p, text)
    }
}

/// Whether F_q contains a primitive r-th root of unity, for prime r:
/// true exactly when r divides q-1.
pub fn has_primitive_rth_root(q: u64, r: u64) -> Result<bool> {
    if !poly::is_prime(r) {
        return Err(Error::NotPrime(r));
    }
    if poly::prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    Ok((q - 1).is_multiple_of(r))
}

pub fn is_prime(n: u64) -> bool {
    poly::is_prime(n)
}

/// Decompose q = p^e with p prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    poly::prime_power(q)
}
