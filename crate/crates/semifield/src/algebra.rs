//! Generic nonassociative-algebra layer over a field tower: elements,
//! multiplication dispatch, associator, division test, nuclei and centers.
//!
//! Every algebra here is an L-vector space with a twisted multiplication:
//! either the cyclic construction on ⊕ L z^i (twist element a) or one of the
//! four pair constructions on L ⊕ L (parameters eta, mu, sigma). Exact linear
//! algebra over F_p does the structural work: nuclei and centers are kernels
//! of constraint maps assembled from basis products.

use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldTower};
use crate::linalg::{MatFp, RowSpace};

/// The four pair constructions, plus the mirrored variant of `Hk` obtained
/// by reversing its multiplication.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Family {
    Kn1,
    Kn2,
    Kn3,
    Hk,
    HkOp,
}

impl Family {
    /// The four basic constructions, in catalog order.
    pub const CONSTRUCTIONS: [Family; 4] = [Family::Hk, Family::Kn1, Family::Kn2, Family::Kn3];

    pub fn name(&self) -> &'static str {
        match self {
            Family::Kn1 => "kn1",
            Family::Kn2 => "kn2",
            Family::Kn3 => "kn3",
            Family::Hk => "hk",
            Family::HkOp => "hk-op",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        match s {
            "kn1" => Some(Family::Kn1),
            "kn2" => Some(Family::Kn2),
            "kn3" => Some(Family::Kn3),
            "hk" => Some(Family::Hk),
            "hk-op" => Some(Family::HkOp),
            _ => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AlgebraKind {
    Sandler {
        a: FieldElement,
    },
    Family {
        family: Family,
        eta: FieldElement,
        mu: FieldElement,
        sigma_index: u32,
    },
}

/// Element as a coordinate vector over L: length n for the cyclic
/// construction, length 2 for the pair constructions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AlgElement {
    pub coords: Vec<FieldElement>,
}

/// Nucleus slot selector.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Middle,
    Right,
}

impl Side {
    pub const ALL: [Side; 3] = [Side::Left, Side::Middle, Side::Right];
}

/// A tower plus a multiplication: the complete description of one algebra.
#[derive(Clone)]
pub struct SemifieldSpec {
    tower: Arc<FieldTower>,
    kind: AlgebraKind,
    table: OnceLock<StructureTable>,
}

impl PartialEq for SemifieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.tower == other.tower && self.kind == other.kind
    }
}
impl Eq for SemifieldSpec {}

impl std::fmt::Debug for SemifieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.kind {
            AlgebraKind::Sandler { a } => {
                write!(f, "sandler(a={}) over {:?}", self.tower.render(a), self.tower)
            }
            AlgebraKind::Family {
                family,
                eta,
                mu,
                sigma_index,
            } => write!(
                f,
                "{}(eta={}, mu={}, sigma={}) over {:?}",
                family.name(),
                self.tower.render(eta),
                self.tower.render(mu),
                sigma_index,
                self.tower
            ),
        }
    }
}

impl SemifieldSpec {
    /// Cyclic construction with twist a; a must lie outside F.
    pub fn sandler(tower: Arc<FieldTower>, a: FieldElement) -> Result<Self> {
        if tower.in_base_field(&a) {
            return Err(Error::TwistInBaseField);
        }
        Ok(SemifieldSpec {
            tower,
            kind: AlgebraKind::Sandler { a },
            table: OnceLock::new(),
        })
    }

    /// Pair construction; eta must be nonzero and sigma nontrivial.
    pub fn family(
        tower: Arc<FieldTower>,
        family: Family,
        eta: FieldElement,
        mu: FieldElement,
        sigma_index: u32,
    ) -> Result<Self> {
        if eta.is_zero() {
            return Err(Error::ZeroEta);
        }
        let sigma_index = sigma_index % tower.n();
        if sigma_index == 0 {
            return Err(Error::TrivialSigma);
        }
        Ok(SemifieldSpec {
            tower,
            kind: AlgebraKind::Family {
                family,
                eta,
                mu,
                sigma_index,
            },
            table: OnceLock::new(),
        })
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.kind
    }

    /// Number of L-coordinates.
    pub fn dim(&self) -> usize {
        match self.kind {
            AlgebraKind::Sandler { .. } => self.tower.n() as usize,
            AlgebraKind::Family { .. } => 2,
        }
    }

    /// Dimension over the prime field.
    pub fn flat_dim(&self) -> usize {
        self.dim() * self.tower.degree()
    }

    pub fn order(&self) -> u128 {
        (self.tower.order() as u128).pow(self.dim() as u32)
    }

    pub fn zero(&self) -> AlgElement {
        AlgElement {
            coords: vec![self.tower.zero(); self.dim()],
        }
    }

    pub fn one(&self) -> AlgElement {
        let mut coords = vec![self.tower.zero(); self.dim()];
        coords[0] = self.tower.one();
        AlgElement { coords }
    }

    pub fn element(&self, coords: Vec<FieldElement>) -> AlgElement {
        assert_eq!(coords.len(), self.dim(), "coordinate count mismatch");
        AlgElement { coords }
    }

    /// l placed in coordinate slot i.
    pub fn monomial(&self, l: &FieldElement, i: usize) -> AlgElement {
        assert!(i < self.dim(), "slot out of range");
        let mut coords = vec![self.tower.zero(); self.dim()];
        coords[i] = l.clone();
        AlgElement { coords }
    }

    /// Embed an element of L as the slot-0 coordinate.
    pub fn embed(&self, l: &FieldElement) -> AlgElement {
        self.monomial(l, 0)
    }

    pub fn add(&self, x: &AlgElement, y: &AlgElement) -> AlgElement {
        let coords = x
            .coords
            .iter()
            .zip(&y.coords)
            .map(|(a, b)| self.tower.add(a, b))
            .collect();
        AlgElement { coords }
    }

    pub fn sub(&self, x: &AlgElement, y: &AlgElement) -> AlgElement {
        let coords = x
            .coords
            .iter()
            .zip(&y.coords)
            .map(|(a, b)| self.tower.sub(a, b))
            .collect();
        AlgElement { coords }
    }

    pub fn is_zero(&self, x: &AlgElement) -> bool {
        x.coords.iter().all(|c| c.is_zero())
    }

    /// The product in this algebra.
    pub fn mul(&self, x: &AlgElement, y: &AlgElement) -> AlgElement {
        assert_eq!(x.coords.len(), self.dim(), "dimension mismatch");
        assert_eq!(y.coords.len(), self.dim(), "dimension mismatch");
        let t = &self.tower;
        match &self.kind {
            AlgebraKind::Sandler { a } => {
                let n = t.n() as usize;
                let mut coords = vec![t.zero(); n];
                for i in 0..n {
                    if x.coords[i].is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        if y.coords[j].is_zero() {
                            continue;
                        }
                        let term = t.mul(&x.coords[i], &t.frobenius(&y.coords[j], i as i64));
                        if i + j < n {
                            coords[i + j] = t.add(&coords[i + j], &term);
                        } else {
                            let wrapped = t.mul(&term, a);
                            coords[i + j - n] = t.add(&coords[i + j - n], &wrapped);
                        }
                    }
                }
                AlgElement { coords }
            }
            AlgebraKind::Family {
                family,
                eta,
                mu,
                sigma_index,
            } => {
                let s = *sigma_index as i64;
                let fr = |z: &FieldElement, k: i64| t.frobenius(z, k * s);
                let (a, b) = (&x.coords[0], &x.coords[1]);
                let (u, v) = (&y.coords[0], &y.coords[1]);
                // first slot: au + eta * twist(v-part, b-part)
                // second slot: va + b*sigma(u) + mu * twist
                let (first_twist, second_twist) = match family {
                    Family::Kn1 => (
                        t.mul(&fr(v, 1), &fr(b, -2)),
                        t.mul(&fr(v, 1), &fr(b, -1)),
                    ),
                    Family::Kn2 => (
                        t.mul(&fr(v, -1), &fr(b, -2)),
                        t.mul(v, &fr(b, -1)),
                    ),
                    Family::Kn3 => (t.mul(&fr(v, -1), b), t.mul(v, b)),
                    Family::Hk => (t.mul(&fr(v, 1), b), t.mul(&fr(v, 1), b)),
                    Family::HkOp => {
                        // (a,b)(u,v) = (au + eta σ(b) v, bu + σ(a) v + mu σ(b) v)
                        let sb = fr(b, 1);
                        let c0 = t.add(&t.mul(a, u), &t.mul(eta, &t.mul(&sb, v)));
                        let c1 = t.add(
                            &t.add(&t.mul(b, u), &t.mul(&fr(a, 1), v)),
                            &t.mul(mu, &t.mul(&sb, v)),
                        );
                        return AlgElement {
                            coords: vec![c0, c1],
                        };
                    }
                };
                let c0 = t.add(&t.mul(a, u), &t.mul(eta, &first_twist));
                let c1 = t.add(
                    &t.add(&t.mul(v, a), &t.mul(b, &fr(u, 1))),
                    &t.mul(mu, &second_twist),
                );
                AlgElement {
                    coords: vec![c0, c1],
                }
            }
        }
    }

    /// (xy)z - x(yz).
    pub fn associator(&self, x: &AlgElement, y: &AlgElement, z: &AlgElement) -> AlgElement {
        let lhs = self.mul(&self.mul(x, y), z);
        let rhs = self.mul(x, &self.mul(y, z));
        self.sub(&lhs, &rhs)
    }

    pub fn to_flat(&self, x: &AlgElement) -> Vec<u64> {
        let d = self.tower.degree();
        let mut out = Vec::with_capacity(self.flat_dim());
        for c in &x.coords {
            debug_assert_eq!(c.coeffs().len(), d);
            out.extend_from_slice(c.coeffs());
        }
        out
    }

    pub fn from_flat(&self, flat: &[u64]) -> AlgElement {
        let d = self.tower.degree();
        assert_eq!(flat.len(), self.flat_dim());
        let coords = flat
            .chunks(d)
            .map(|c| self.tower.from_coeffs(c))
            .collect();
        AlgElement { coords }
    }

    /// Iterate all elements; meant for algebras of desk-scale order.
    pub fn elements(&self) -> impl Iterator<Item = AlgElement> + '_ {
        let m = self.flat_dim();
        let p = self.tower.p();
        let order = self.order();
        assert!(order <= 1 << 24, "algebra too large to enumerate");
        (0..order as u64).map(move |idx| {
            let mut flat = vec![0u64; m];
            let mut v = idx;
            for c in flat.iter_mut() {
                *c = v % p;
                v /= p;
            }
            self.from_flat(&flat)
        })
    }

    pub fn render(&self, x: &AlgElement) -> String {
        let parts: Vec<String> = x.coords.iter().map(|c| self.tower.render(c)).collect();
        format!("({})", parts.join(", "))
    }

    /// Structure constants in the flat F_p basis, built on first use.
    pub fn table(&self) -> &StructureTable {
        self.table.get_or_init(|| StructureTable::build(self))
    }

    /// Division test: the left-multiplication matrix of every nonzero element
    /// is invertible. Exits early at the first singular one.
    pub fn is_division(&self) -> bool {
        self.table().all_left_mul_invertible()
    }

    /// F_p-basis of the requested nucleus.
    pub fn nucleus(&self, side: Side) -> Vec<AlgElement> {
        let mut rs = RowSpace::new(self.tower.p(), self.flat_dim());
        self.nucleus_constraints(side, &mut rs);
        rs.kernel_basis()
            .into_iter()
            .map(|v| self.from_flat(&v))
            .collect()
    }

    pub fn nucleus_dims(&self) -> [usize; 3] {
        [
            self.nucleus(Side::Left).len(),
            self.nucleus(Side::Middle).len(),
            self.nucleus(Side::Right).len(),
        ]
    }

    // Insert the linear constraints "associator vanishes with the variable in
    // `side` against all basis pairs" into rs. Trilinearity makes basis pairs
    // sufficient.
    fn nucleus_constraints(&self, side: Side, rs: &mut RowSpace) {
        let table = self.table();
        let m = self.flat_dim();
        let full_rank = m - 1; // the unit is always in the kernel
        for i in 0..m {
            for j in 0..m {
                // columns of the constraint block: associator with e_k in the slot
                let cols: Vec<Vec<u64>> = (0..m)
                    .map(|k| {
                        let (lhs, rhs) = match side {
                            Side::Left => (
                                table.vec_times_basis(table.basis_product(k, i), j),
                                table.basis_times_vec(k, table.basis_product(i, j)),
                            ),
                            Side::Middle => (
                                table.vec_times_basis(table.basis_product(i, k), j),
                                table.basis_times_vec(i, table.basis_product(k, j)),
                            ),
                            Side::Right => (
                                table.vec_times_basis(table.basis_product(i, j), k),
                                table.basis_times_vec(i, table.basis_product(j, k)),
                            ),
                        };
                        sub_mod(&lhs, &rhs, self.tower.p())
                    })
                    .collect();
                for c in 0..m {
                    let row: Vec<u64> = (0..m).map(|k| cols[k][c]).collect();
                    rs.insert(row);
                }
                if rs.rank() == full_rank {
                    return;
                }
            }
        }
    }

    /// (center basis, commutative-centre basis). The commutative centre is
    /// everything commuting with the whole algebra; the center additionally
    /// lies in all three nuclei.
    pub fn center_and_commutative_centre(&self) -> (Vec<AlgElement>, Vec<AlgElement>) {
        let table = self.table();
        let m = self.flat_dim();
        let p = self.tower.p();
        let mut comm = RowSpace::new(p, m);
        for i in 0..m {
            let cols: Vec<Vec<u64>> = (0..m)
                .map(|k| sub_mod(table.basis_product(k, i), table.basis_product(i, k), p))
                .collect();
            for c in 0..m {
                comm.insert((0..m).map(|k| cols[k][c]).collect());
            }
        }
        let commutative_centre: Vec<AlgElement> = comm
            .kernel_basis()
            .into_iter()
            .map(|v| self.from_flat(&v))
            .collect();
        let mut all = comm;
        for side in Side::ALL {
            self.nucleus_constraints(side, &mut all);
        }
        let center = all
            .kernel_basis()
            .into_iter()
            .map(|v| self.from_flat(&v))
            .collect();
        (center, commutative_centre)
    }

    pub fn center_dim(&self) -> usize {
        self.center_and_commutative_centre().0.len()
    }

    /// Basis of the copy of L sitting in slot 0.
    pub fn embedded_field_basis(&self) -> Vec<AlgElement> {
        let d = self.tower.degree();
        (0..d)
            .map(|t| {
                let mut coeffs = vec![0u64; d];
                coeffs[t] = 1;
                self.embed(&self.tower.from_coeffs(&coeffs))
            })
            .collect()
    }

    /// Whether the span of `basis` is exactly the embedded copy of L.
    pub fn span_is_embedded_field(&self, basis: &[AlgElement]) -> bool {
        let d = self.tower.degree();
        basis.len() == d && self.span_contains_embedded_field(basis)
    }

    /// Whether the span of `basis` contains the embedded copy of L.
    pub fn span_contains_embedded_field(&self, basis: &[AlgElement]) -> bool {
        let mut rs = RowSpace::new(self.tower.p(), self.flat_dim());
        for b in basis {
            rs.insert(self.to_flat(b));
        }
        self.embedded_field_basis()
            .iter()
            .all(|b| rs.contains(&self.to_flat(b)))
    }

    /// Invariant summary used in reports and catalogs. The division flag uses
    /// the construction-specific criterion, which the test suite checks
    /// against the matrix test and the raw scan.
    pub fn fingerprint(&self) -> Fingerprint {
        let t = &self.tower;
        let (kind, params, is_division) = match &self.kind {
            AlgebraKind::Sandler { a } => (
                "sandler".to_string(),
                serde_json::json!({ "a": t.render(a) }),
                t.subfield_degree(a) == t.n(),
            ),
            AlgebraKind::Family {
                family,
                eta,
                mu,
                sigma_index,
            } => (
                family.name().to_string(),
                serde_json::json!({
                    "eta": t.render(eta),
                    "mu": t.render(mu),
                    "sigma": sigma_index,
                }),
                crate::family::division_criterion(t, *sigma_index, eta, mu),
            ),
        };
        let (center, _) = self.center_and_commutative_centre();
        Fingerprint {
            order: self.order(),
            kind,
            params,
            is_division,
            nucleus_dims: self.nucleus_dims(),
            center_dim: center.len(),
        }
    }
}

/// JSON-facing invariant record for one algebra.
#[derive(Clone, Debug, Serialize)]
pub struct Fingerprint {
    pub order: u128,
    pub kind: String,
    pub params: serde_json::Value,
    pub is_division: bool,
    pub nucleus_dims: [usize; 3],
    pub center_dim: usize,
}

pub(crate) fn odometer_step(digits: &mut [u64], p: u64) {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < p {
            return;
        }
        *d = 0;
    }
}

fn sub_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    a.iter().zip(b).map(|(&x, &y)| (x + p - y) % p).collect()
}

/// Multiplication tensor in the flat F_p basis: basis_product(s, t) is the
/// flat vector of e_s ∘ e_t.
#[derive(Clone)]
pub struct StructureTable {
    p: u64,
    m: usize,
    c: Vec<Vec<u64>>,
}

impl StructureTable {
    fn build(spec: &SemifieldSpec) -> Self {
        let m = spec.flat_dim();
        let p = spec.tower.p();
        let mut c = Vec::with_capacity(m * m);
        let basis: Vec<AlgElement> = (0..m)
            .map(|k| {
                let mut flat = vec![0u64; m];
                flat[k] = 1;
                spec.from_flat(&flat)
            })
            .collect();
        for s in 0..m {
            for t in 0..m {
                c.push(spec.to_flat(&spec.mul(&basis[s], &basis[t])));
            }
        }
        StructureTable { p, m, c }
    }

    /// The multiplication of L itself in the power basis; gives the scan
    /// machinery a known-associative reference algebra.
    pub fn from_field(tower: &FieldTower) -> Self {
        let d = tower.degree();
        let mut c = Vec::with_capacity(d * d);
        for s in 0..d {
            for t in 0..d {
                let mut a = vec![0u64; d];
                a[s] = 1;
                let mut b = vec![0u64; d];
                b[t] = 1;
                let prod = tower.mul(&tower.from_coeffs(&a), &tower.from_coeffs(&b));
                c.push(prod.coeffs().to_vec());
            }
        }
        StructureTable {
            p: tower.p(),
            m: d,
            c,
        }
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn basis_product(&self, s: usize, t: usize) -> &[u64] {
        &self.c[s * self.m + t]
    }

    /// x ∘ y for flat vectors.
    pub fn product(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.m];
        for (s, &xs) in x.iter().enumerate() {
            if xs == 0 {
                continue;
            }
            for (t, &yt) in y.iter().enumerate() {
                if yt == 0 {
                    continue;
                }
                let f = xs * yt % self.p;
                let row = self.basis_product(s, t);
                for (o, &r) in out.iter_mut().zip(row) {
                    *o = (*o + f * r) % self.p;
                }
            }
        }
        out
    }

    /// v ∘ e_t.
    pub fn vec_times_basis(&self, v: &[u64], t: usize) -> Vec<u64> {
        let mut out = vec![0u64; self.m];
        for (s, &vs) in v.iter().enumerate() {
            if vs == 0 {
                continue;
            }
            let row = self.basis_product(s, t);
            for (o, &r) in out.iter_mut().zip(row) {
                *o = (*o + vs * r) % self.p;
            }
        }
        out
    }

    /// e_s ∘ v.
    pub fn basis_times_vec(&self, s: usize, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.m];
        for (t, &vt) in v.iter().enumerate() {
            if vt == 0 {
                continue;
            }
            let row = self.basis_product(s, t);
            for (o, &r) in out.iter_mut().zip(row) {
                *o = (*o + vt * r) % self.p;
            }
        }
        out
    }

    /// Matrix of y -> x ∘ y over F_p.
    pub fn left_mul_matrix(&self, x: &[u64]) -> MatFp {
        let cols: Vec<Vec<u64>> = (0..self.m).map(|t| self.vec_times_basis(x, t)).collect();
        MatFp::from_cols(self.p, self.m, &cols)
    }

    /// Invertibility of every nonzero left-multiplication matrix, with an
    /// early exit at the first singular one. Bit-packed over F_2, scratch
    /// buffers elsewhere; the scan touches every element of the algebra.
    pub fn all_left_mul_invertible(&self) -> bool {
        let m = self.m;
        let order = (self.p as u128).pow(m as u32);
        assert!(order <= 1 << 24, "algebra too large for the matrix scan");
        if self.p == 2 {
            let masks = self.f2_masks();
            for x in 1..order as u32 {
                if !f2_columns_full_rank(&masks, m, x) {
                    return false;
                }
            }
            return true;
        }
        let mut digits = vec![0u64; m];
        let mut cols = vec![0u64; m * m];
        let mut scratch = vec![0u64; m * m];
        for _ in 1..order {
            odometer_step(&mut digits, self.p);
            cols.iter_mut().for_each(|c| *c = 0);
            for (s, &xs) in digits.iter().enumerate() {
                if xs == 0 {
                    continue;
                }
                for j in 0..m {
                    let row = self.basis_product(s, j);
                    let col = &mut cols[j * m..(j + 1) * m];
                    for (o, &r) in col.iter_mut().zip(row) {
                        *o = (*o + xs * r) % self.p;
                    }
                }
            }
            scratch.copy_from_slice(&cols);
            if !full_rank_in_place(&mut scratch, m, self.p) {
                return false;
            }
        }
        true
    }

    // basis_product vectors packed into bitmasks, for fast F_2 scans:
    // entry s*m + j is the mask of e_s ∘ e_j.
    pub(crate) fn f2_masks(&self) -> Vec<u32> {
        assert_eq!(self.p, 2);
        assert!(self.m <= 32);
        self.c
            .iter()
            .map(|v| v.iter().enumerate().fold(0u32, |acc, (k, &b)| acc | ((b as u32 & 1) << k)))
            .collect()
    }
}

// Rank check for the matrix whose j-th column is XOR of masks[s*m + j]
// over the set bits s of x.
fn f2_columns_full_rank(masks: &[u32], m: usize, x: u32) -> bool {
    let mut pivots = [0u32; 32];
    for j in 0..m {
        let mut col = 0u32;
        let mut bits = x;
        while bits != 0 {
            let s = bits.trailing_zeros() as usize;
            col ^= masks[s * m + j];
            bits &= bits - 1;
        }
        loop {
            if col == 0 {
                return false;
            }
            let lead = 31 - col.leading_zeros() as usize;
            if pivots[lead] == 0 {
                pivots[lead] = col;
                break;
            }
            col ^= pivots[lead];
        }
    }
    true
}

// In-place full-rank test on an m x m buffer (column-major or row-major is
// irrelevant for rank).
fn full_rank_in_place(buf: &mut [u64], m: usize, p: u64) -> bool {
    for col in 0..m {
        let pivot = match (col..m).find(|&r| !buf[r * m + col].is_multiple_of(p)) {
            Some(r) => r,
            None => return false,
        };
        if pivot != col {
            for j in 0..m {
                buf.swap(pivot * m + j, col * m + j);
            }
        }
        let inv = crate::poly::inv_mod(buf[col * m + col] % p, p);
        for r in col + 1..m {
            let f = buf[r * m + col] % p * inv % p;
            if f == 0 {
                continue;
            }
            for j in col..m {
                buf[r * m + j] = (buf[r * m + j] + p * p - f * buf[col * m + j] % p) % p;
            }
        }
    }
    true
}
