//! Automorphism groups: enumeration for both constructions, closed-form
//! order predictions, and identification of the abstract group.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::algebra::{Family, SemifieldSpec, StructureTable};
use crate::error::{Error, Result};
use crate::family::FamilyParams;
use crate::gf::FieldElement;
use crate::linalg::MatFp;
use crate::sandler::SandlerParams;

/// Defining data of one automorphism, plus its matrix over F_p. The matrix
/// fixes the unit and is multiplicative on all basis pairs; both are checked
/// exactly at construction.
#[derive(Clone, Debug)]
pub struct Automorphism {
    pub kind: AutKind,
    pub matrix: MatFp,
}

#[derive(Clone, Debug)]
pub enum AutKind {
    /// Cyclic construction: x_i z^i -> sigma^power(x_i) · l sigma(l) ... sigma^{i-1}(l) z^i.
    Sandler { power: u32, l: FieldElement },
    /// Pair construction: (x, y) -> (tau(x), tau(y) b) with tau the tau_power-th
    /// power of the tower generator.
    Family { tau_power: u32, b: FieldElement },
}

impl Automorphism {
    /// Validate a candidate matrix: unit fixed, bijective, multiplicative on
    /// every basis pair. Returns None when any check fails.
    pub fn try_new(spec: &SemifieldSpec, kind: AutKind, matrix: MatFp) -> Option<Automorphism> {
        let unit = spec.to_flat(&spec.one());
        if matrix.apply(&unit) != unit {
            return None;
        }
        if !matrix.is_invertible() {
            return None;
        }
        if !matrix_is_multiplicative(spec.table(), &matrix) {
            return None;
        }
        Some(Automorphism { kind, matrix })
    }
}

/// phi(e_i ∘ e_j) = phi(e_i) ∘ phi(e_j) for all basis pairs; bilinearity
/// extends the check to the whole algebra.
pub fn matrix_is_multiplicative(table: &StructureTable, mat: &MatFp) -> bool {
    let m = table.dim();
    let p = table.modulus();
    let cols: Vec<Vec<u64>> = (0..m)
        .map(|j| (0..m).map(|i| mat.get(i, j)).collect())
        .collect();
    // partial[s*m + j] = e_s ∘ phi(e_j)
    let mut partial = Vec::with_capacity(m * m);
    for s in 0..m {
        for j in 0..m {
            partial.push(table.basis_times_vec(s, &cols[j]));
        }
    }
    for i in 0..m {
        for j in 0..m {
            let lhs = mat.apply(table.basis_product(i, j));
            let mut rhs = vec![0u64; m];
            for (s, &f) in cols[i].iter().enumerate() {
                if f == 0 {
                    continue;
                }
                for (o, &v) in rhs.iter_mut().zip(&partial[s * m + j]) {
                    *o = (*o + f * v) % p;
                }
            }
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

// Factors c_i = l sigma(l) ... sigma^{i-1}(l) for i in 0..n.
fn twist_factors(params: &SandlerParams, l: &FieldElement) -> Vec<FieldElement> {
    let t = params.tower();
    let n = t.n() as usize;
    let mut out = Vec::with_capacity(n);
    let mut acc = t.one();
    for i in 0..n {
        out.push(acc.clone());
        acc = t.mul(&acc, &t.frobenius(l, i as i64));
    }
    out
}

fn sandler_matrix(params: &SandlerParams, power: u32, l: &FieldElement) -> MatFp {
    let t = params.tower();
    let spec = params.to_spec();
    let n = t.n() as usize;
    let d = t.degree();
    let factors = twist_factors(params, l);
    let mut cols = Vec::with_capacity(n * d);
    for i in 0..n {
        for k in 0..d {
            let mut coeffs = vec![0u64; d];
            coeffs[k] = 1;
            let image = t.mul(
                &t.frobenius(&t.from_coeffs(&coeffs), power as i64),
                &factors[i],
            );
            cols.push(spec.to_flat(&spec.monomial(&image, i)));
        }
    }
    MatFp::from_cols(t.p(), n * d, &cols)
}

// Verify the enumerated set is a group: closed under composition, closed
// under inverse, contains the identity.
fn assert_group_closure(maps: &[Automorphism]) {
    let index: HashMap<Vec<u64>, usize> = maps
        .iter()
        .enumerate()
        .map(|(i, a)| (a.matrix.encoding().to_vec(), i))
        .collect();
    assert_eq!(index.len(), maps.len(), "duplicate automorphisms");
    let dim = maps[0].matrix.nrows();
    let id = MatFp::identity(maps[0].matrix.modulus(), dim);
    assert!(index.contains_key(id.encoding()), "identity missing");
    for a in maps {
        for b in maps {
            let prod = a.matrix.mul(&b.matrix);
            assert!(
                index.contains_key(prod.encoding()),
                "composition left the set"
            );
        }
        let inv = a.matrix.inverse().expect("automorphisms are invertible");
        assert!(index.contains_key(inv.encoding()), "inverse left the set");
    }
}

/// All automorphisms of the cyclic construction: pairs (power, l) with
/// sigma^power(a) = N(l)·a, materialized as validated matrices and verified
/// to form a group. Ordered by (power, index of l).
pub fn sandler_automorphisms(params: &SandlerParams) -> Vec<Automorphism> {
    let t = params.tower();
    let spec = params.to_spec();
    let a_inv = t.inv(params.a()).expect("twist is nonzero");
    let mut maps = Vec::new();
    for power in 0..t.n() {
        let k = t.mul(&t.frobenius(params.a(), power as i64), &a_inv);
        if !t.in_base_field(&k) {
            continue;
        }
        for l in t.norm_fiber(&k).expect("k lies in F") {
            let matrix = sandler_matrix(params, power, &l);
            let map = Automorphism::try_new(&spec, AutKind::Sandler { power, l }, matrix)
                .expect("maps satisfying the twist relation are automorphisms");
            maps.push(map);
        }
    }
    assert_group_closure(&maps);
    maps
}

/// |Aut| by direct enumeration of the defining data, without materializing
/// matrices; suitable for large parameter sweeps.
pub fn sandler_automorphism_count(params: &SandlerParams) -> u64 {
    let t = params.tower();
    let a_inv = t.inv(params.a()).expect("twist is nonzero");
    let mut count = 0u64;
    for power in 0..t.n() {
        let k = t.mul(&t.frobenius(params.a(), power as i64), &a_inv);
        if t.in_base_field(&k) {
            count += t.norm_fiber_size(&k).expect("k lies in F") as u64;
        }
    }
    count
}

/// Whether sigma^i(a) is an F*-multiple of a for some 1 <= i < n.
pub fn has_eigen_relation(params: &SandlerParams) -> bool {
    let t = params.tower();
    let a_inv = t.inv(params.a()).expect("twist is nonzero");
    (1..t.n()).any(|i| {
        let k = t.mul(&t.frobenius(params.a(), i as i64), &a_inv);
        t.in_base_field(&k)
    })
}

/// Closed-form |Aut| for prime degree r: s = (q^r-1)/(q-1) in general,
/// r·s when the twist satisfies an eigen relation.
pub fn predicted_sandler_aut_order(params: &SandlerParams) -> Result<u64> {
    let t = params.tower();
    let r = t.n();
    if !crate::gf::is_prime(r as u64) {
        return Err(Error::CompositeDegree(r));
    }
    let q = t.q();
    let s = (t.order() - 1) / (q - 1);
    Ok(if has_eigen_relation(params) {
        r as u64 * s
    } else {
        s
    })
}

// Powers t such that gen^t commutes with the construction's sigma. For these
// towers the Galois group is cyclic so this is everything, but it is computed
// rather than assumed.
fn centralizer_powers(params: &FamilyParams) -> Vec<u32> {
    let t = params.tower();
    let s = params.sigma_index() as i64;
    let gen = t.gen();
    (0..t.n())
        .filter(|&tp| {
            let lhs = t.frobenius(&t.frobenius(&gen, s), tp as i64);
            let rhs = t.frobenius(&t.frobenius(&gen, tp as i64), s);
            lhs == rhs
        })
        .collect()
}

fn pair_map_matrix(params: &FamilyParams, tau_power: u32, b: &FieldElement) -> MatFp {
    let t = params.tower();
    let spec = params.to_spec();
    let d = t.degree();
    let mut cols = Vec::with_capacity(2 * d);
    for slot in 0..2 {
        for k in 0..d {
            let mut coeffs = vec![0u64; d];
            coeffs[k] = 1;
            let mut image = t.frobenius(&t.from_coeffs(&coeffs), tau_power as i64);
            if slot == 1 {
                image = t.mul(&image, b);
            }
            cols.push(spec.to_flat(&spec.monomial(&image, slot)));
        }
    }
    MatFp::from_cols(t.p(), 2 * d, &cols)
}

// The b-conditions making (x,y) -> (tau(x), tau(y)b) multiplicative, derived
// directly from each defining formula. An automorphism of an algebra is an
// automorphism of its reversal, so the mirrored Hk shares the Hk conditions.
fn pair_conditions_hold(params: &FamilyParams, tau_power: u32, b: &FieldElement) -> bool {
    let t = params.tower();
    let tau = |x: &FieldElement| t.frobenius(x, tau_power as i64);
    let sigma = |x: &FieldElement, k: i64| params.sigma(x, k);
    let eta = params.eta();
    let mu = params.mu();
    match params.family() {
        Family::Hk | Family::HkOp => {
            t.mul(eta, &t.mul(b, &sigma(b, 1))) == tau(eta)
                && t.mul(mu, &sigma(b, 1)) == tau(mu)
        }
        Family::Kn2 => {
            t.mul(eta, &t.mul(&sigma(b, -1), &sigma(b, -2))) == tau(eta)
                && t.mul(mu, &sigma(b, -1)) == tau(mu)
        }
        Family::Kn3 => {
            t.mul(eta, &t.mul(b, &sigma(b, -1))) == tau(eta) && t.mul(mu, b) == tau(mu)
        }
        Family::Kn1 => {
            t.mul(eta, &t.mul(&sigma(b, 1), &sigma(b, -2))) == tau(eta)
                && t.mul(mu, &t.mul(&sigma(b, 1), &sigma(b, -1))) == t.mul(&tau(mu), b)
        }
    }
}

/// All automorphisms (tau, b) of an Hk, Kn2 or Kn3 algebra, validated and
/// group-checked. Rejects Kn1, whose full automorphism group has no closed
/// description; use `kn1_candidate_automorphisms` there.
pub fn family_automorphisms(params: &FamilyParams) -> Result<Vec<Automorphism>> {
    if params.family() == Family::Kn1 {
        return Err(Error::WrongFamily("kn1"));
    }
    let t = params.tower();
    let spec = params.to_spec();
    let mut maps = Vec::new();
    for tau_power in centralizer_powers(params) {
        for b in t.nonzero_elements() {
            if !pair_conditions_hold(params, tau_power, &b) {
                continue;
            }
            let matrix = pair_map_matrix(params, tau_power, &b);
            let map = Automorphism::try_new(
                &spec,
                AutKind::Family { tau_power, b },
                matrix,
            )
            .expect("maps satisfying the defining relations are automorphisms");
            maps.push(map);
        }
    }
    assert_group_closure(&maps);
    Ok(maps)
}

/// The subgroup of Galois powers fixing mu·sigma(mu)/sigma(eta); defined for
/// mu != 0, where it is isomorphic to the automorphism group.
pub fn family_aut_stabilizer(params: &FamilyParams) -> Result<Vec<u32>> {
    if params.family() == Family::Kn1 {
        return Err(Error::WrongFamily("kn1"));
    }
    if params.mu().is_zero() {
        return Err(Error::ZeroMu);
    }
    let t = params.tower();
    let fixed = t.mul(
        &t.mul(params.mu(), &params.sigma(params.mu(), 1)),
        &t.inv(&params.sigma(params.eta(), 1))
            .expect("eta is nonzero"),
    );
    Ok(centralizer_powers(params)
        .into_iter()
        .filter(|&tp| t.frobenius(&fixed, tp as i64) == fixed)
        .collect())
}

/// The L-preserving automorphism candidates of a Kn1 algebra: pairs (tau, b)
/// satisfying the defining relations, kept only when the induced matrix
/// really is multiplicative. Possibly incomplete; compare against the
/// brute-force search.
pub fn kn1_candidate_automorphisms(params: &FamilyParams) -> Result<Vec<Automorphism>> {
    if params.family() != Family::Kn1 {
        return Err(Error::WrongFamily(params.family().name()));
    }
    let t = params.tower();
    let spec = params.to_spec();
    let mut maps = Vec::new();
    for tau_power in centralizer_powers(params) {
        for b in t.nonzero_elements() {
            if !pair_conditions_hold(params, tau_power, &b) {
                continue;
            }
            let matrix = pair_map_matrix(params, tau_power, &b);
            if let Some(map) =
                Automorphism::try_new(&spec, AutKind::Family { tau_power, b }, matrix)
            {
                maps.push(map);
            }
        }
    }
    Ok(maps)
}

/// Abstract-group identification of a finite matrix group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupId {
    pub order: usize,
    pub abelian: bool,
    pub label: GroupLabel,
    /// Sorted (element order, multiplicity) pairs.
    pub signature: Vec<(u64, usize)>,
    /// Indices into the input slice witnessing the label: the cyclic
    /// generator, or the dicyclic pair (x, y).
    pub generators: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupLabel {
    Cyclic(usize),
    Quaternion8,
    Dicyclic(usize),
    Other(String),
}

impl std::fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupLabel::Cyclic(n) => write!(f, "C{n}"),
            GroupLabel::Quaternion8 => write!(f, "Q8"),
            GroupLabel::Dicyclic(m) => write!(f, "Dic{m}"),
            GroupLabel::Other(s) => write!(f, "{s}"),
        }
    }
}

struct GroupTable {
    n: usize,
    prod: Vec<usize>,
    identity: usize,
}

impl GroupTable {
    fn from_matrices(mats: &[&MatFp]) -> Result<Self> {
        let n = mats.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty set".to_string()));
        }
        let mut index = HashMap::new();
        for (i, m) in mats.iter().enumerate() {
            if index.insert(m.encoding().to_vec(), i).is_some() {
                return Err(Error::NotAGroup("duplicate elements".to_string()));
            }
        }
        let id = MatFp::identity(mats[0].modulus(), mats[0].nrows());
        let identity = *index
            .get(id.encoding())
            .ok_or_else(|| Error::NotAGroup("identity missing".to_string()))?;
        let mut prod = vec![0usize; n * n];
        for i in 0..n {
            for j in 0..n {
                let m = mats[i].mul(mats[j]);
                prod[i * n + j] = *index
                    .get(m.encoding())
                    .ok_or_else(|| Error::NotAGroup("not closed under composition".to_string()))?;
            }
        }
        // cancellation: every row and column is a permutation
        for i in 0..n {
            let row: BTreeSet<usize> = (0..n).map(|j| prod[i * n + j]).collect();
            let col: BTreeSet<usize> = (0..n).map(|j| prod[j * n + i]).collect();
            if row.len() != n || col.len() != n {
                return Err(Error::NotAGroup("cancellation fails".to_string()));
            }
        }
        Ok(GroupTable { n, prod, identity })
    }

    fn mul(&self, i: usize, j: usize) -> usize {
        self.prod[i * self.n + j]
    }

    fn inv(&self, i: usize) -> usize {
        (0..self.n)
            .find(|&j| self.mul(i, j) == self.identity)
            .expect("finite cancellative tables have inverses")
    }

    fn order_of(&self, i: usize) -> u64 {
        let mut acc = i;
        let mut ord = 1u64;
        while acc != self.identity {
            acc = self.mul(acc, i);
            ord += 1;
        }
        ord
    }

    fn generated(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = [self.identity].into();
        let mut frontier: Vec<usize> = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }
}

/// Classify the group formed by `maps` under composition. Fails when the set
/// is not closed, lacks the identity, or violates cancellation.
pub fn identify_group(maps: &[Automorphism]) -> Result<GroupId> {
    let mats: Vec<&MatFp> = maps.iter().map(|a| &a.matrix).collect();
    let gt = GroupTable::from_matrices(&mats)?;
    let n = gt.n;
    let orders: Vec<u64> = (0..n).map(|i| gt.order_of(i)).collect();
    let mut sig_map: BTreeMap<u64, usize> = BTreeMap::new();
    for &o in &orders {
        *sig_map.entry(o).or_insert(0) += 1;
    }
    let signature: Vec<(u64, usize)> = sig_map.into_iter().collect();
    let abelian = (0..n).all(|i| (0..n).all(|j| gt.mul(i, j) == gt.mul(j, i)));

    if let Some(g) = orders.iter().position(|&o| o == n as u64) {
        return Ok(GroupId {
            order: n,
            abelian,
            label: GroupLabel::Cyclic(n),
            signature,
            generators: vec![g],
        });
    }

    if n % 4 == 0 && n >= 8 {
        let m = n / 4;
        if let Some((x, y)) = find_dicyclic_generators(&gt, &orders, m) {
            let involutions = orders.iter().filter(|&&o| o == 2).count();
            let label = if m == 2 && !abelian && involutions == 1 {
                GroupLabel::Quaternion8
            } else {
                GroupLabel::Dicyclic(m)
            };
            return Ok(GroupId {
                order: n,
                abelian,
                label,
                signature,
                generators: vec![x, y],
            });
        }
    }

    // fallback: signature label and a greedy generating set
    let sig_text = signature
        .iter()
        .map(|(o, c)| format!("{o}^{c}"))
        .collect::<Vec<_>>()
        .join(",");
    let mut generators = Vec::new();
    let mut span = gt.generated(&[]);
    while span.len() < n {
        let next = (0..n).find(|i| !span.contains(i)).unwrap();
        generators.push(next);
        span = gt.generated(&generators);
    }
    Ok(GroupId {
        order: n,
        abelian,
        label: GroupLabel::Other(format!("ord{n}[{sig_text}]")),
        signature,
        generators,
    })
}

// Generators satisfying y^{2m} = 1 (exact order 2m), x^2 = y^m,
// x^{-1} y x = y^{-1}, generating the whole group of order 4m.
fn find_dicyclic_generators(gt: &GroupTable, orders: &[u64], m: usize) -> Option<(usize, usize)> {
    let n = gt.n;
    for y in 0..n {
        if orders[y] != 2 * m as u64 {
            continue;
        }
        let mut y_m = gt.identity;
        for _ in 0..m {
            y_m = gt.mul(y_m, y);
        }
        let y_inv = gt.inv(y);
        for x in 0..n {
            if gt.mul(x, x) != y_m {
                continue;
            }
            let conj = gt.mul(gt.inv(x), gt.mul(y, x));
            if conj != y_inv {
                continue;
            }
            if gt.generated(&[x, y]).len() == n {
                return Some((x, y));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldTower;
    use std::sync::Arc;

    fn sandler(p: u64, e: u32, n: u32, a: &str) -> SandlerParams {
        let t = Arc::new(FieldTower::new(p, e, n).unwrap());
        let a = t.parse(a).unwrap();
        SandlerParams::new(t, a).unwrap()
    }

    #[test]
    fn f9_twist_t_has_eight_maps_forming_q8() {
        let pr = sandler(3, 1, 2, "T");
        let t = pr.tower().clone();
        let maps = sandler_automorphisms(&pr);
        assert_eq!(maps.len(), 8);
        // powers 0 and 1, each with a fiber of four scale factors
        let mut by_power: BTreeMap<u32, Vec<String>> = BTreeMap::new();
        for m in &maps {
            if let AutKind::Sandler { power, l } = &m.kind {
                by_power.entry(*power).or_default().push(t.render(l));
            }
        }
        assert_eq!(by_power[&0], ["1", "2", "T", "2T"]);
        assert_eq!(by_power[&1], ["T+1", "T+2", "2T+1", "2T+2"]);
        let id = identify_group(&maps).unwrap();
        assert_eq!(id.label, GroupLabel::Quaternion8);
        assert!(!id.abelian);
        // the unique involution is the scale-by-2 map
        let involutions: Vec<&Automorphism> = maps
            .iter()
            .filter(|m| {
                let sq = m.matrix.mul(&m.matrix);
                sq == MatFp::identity(3, 4) && m.matrix != MatFp::identity(3, 4)
            })
            .collect();
        assert_eq!(involutions.len(), 1);
        match &involutions[0].kind {
            AutKind::Sandler { power, l } => {
                assert_eq!(*power, 0);
                assert_eq!(*l, t.scalar(2));
            }
            _ => panic!("wrong kind"),
        }
    }

    #[test]
    fn f9_twist_t_plus_one_is_cyclic_of_order_four() {
        let pr = sandler(3, 1, 2, "T+1");
        let maps = sandler_automorphisms(&pr);
        assert_eq!(maps.len(), 4);
        let id = identify_group(&maps).unwrap();
        assert_eq!(id.label, GroupLabel::Cyclic(4));
        assert!(id.abelian);
    }

    #[test]
    fn f4_has_three_maps() {
        let pr = sandler(2, 1, 2, "T");
        let maps = sandler_automorphisms(&pr);
        assert_eq!(maps.len(), 3);
        assert!(maps.iter().all(|m| matches!(
            m.kind,
            AutKind::Sandler { power: 0, .. }
        )));
        assert_eq!(
            identify_group(&maps).unwrap().label,
            GroupLabel::Cyclic(3)
        );
    }

    #[test]
    fn predicted_orders() {
        assert_eq!(predicted_sandler_aut_order(&sandler(3, 1, 2, "T")).unwrap(), 8);
        assert_eq!(
            predicted_sandler_aut_order(&sandler(3, 1, 2, "T+1")).unwrap(),
            4
        );
        for idx in 0..8u64 {
            let t = Arc::new(FieldTower::new(2, 1, 3).unwrap());
            let a = t.from_index(idx);
            if a.is_zero() || t.in_base_field(&a) {
                continue;
            }
            let pr = SandlerParams::new(t, a).unwrap();
            assert_eq!(predicted_sandler_aut_order(&pr).unwrap(), 7);
            assert_eq!(sandler_automorphism_count(&pr), 7);
        }
        // composite degree has no closed form
        let pr = sandler(2, 1, 4, "T");
        assert!(matches!(
            predicted_sandler_aut_order(&pr),
            Err(Error::CompositeDegree(4))
        ));
    }

    #[test]
    fn count_matches_materialization() {
        for (p, e, n, a) in [(3u64, 1u32, 2u32, "T"), (3, 1, 2, "T+1"), (2, 1, 3, "T"), (2, 2, 2, "T")] {
            let pr = sandler(p, e, n, a);
            assert_eq!(
                sandler_automorphism_count(&pr),
                sandler_automorphisms(&pr).len() as u64
            );
        }
    }

    #[test]
    fn composition_relations_quadratic() {
        // scale maps compose by multiplying their factors; conjugate maps
        // compose into the scale map of m sigma(m')
        let pr = sandler(3, 1, 2, "T");
        let t = pr.tower().clone();
        let maps = sandler_automorphisms(&pr);
        let find = |power: u32, l: &FieldElement| {
            maps.iter()
                .find(|m| match &m.kind {
                    AutKind::Sandler { power: p2, l: l2 } => *p2 == power && l2 == l,
                    _ => false,
                })
                .unwrap()
        };
        let scales: Vec<&FieldElement> = maps
            .iter()
            .filter_map(|m| match &m.kind {
                AutKind::Sandler { power: 0, l } => Some(l),
                _ => None,
            })
            .collect();
        for li in &scales {
            for lj in &scales {
                let lhs = find(0, li).matrix.mul(&find(0, lj).matrix);
                let rhs = find(0, &t.mul(li, lj));
                assert_eq!(lhs, rhs.matrix);
            }
        }
        let twists: Vec<&FieldElement> = maps
            .iter()
            .filter_map(|m| match &m.kind {
                AutKind::Sandler { power: 1, l } => Some(l),
                _ => None,
            })
            .collect();
        for mi in &twists {
            for mj in &twists {
                let lhs = find(1, mi).matrix.mul(&find(1, mj).matrix);
                let rhs = find(0, &t.mul(mi, &t.frobenius(mj, 1)));
                assert_eq!(lhs, rhs.matrix);
            }
        }
    }

    #[test]
    fn dicyclic_for_eigenvector_twists() {
        // q = 5: order 12 = 2q+2betw, Dic_3
        let pr = sandler(5, 1, 2, "T");
        let maps = sandler_automorphisms(&pr);
        assert_eq!(maps.len(), 12);
        let id = identify_group(&maps).unwrap();
        assert_eq!(id.label, GroupLabel::Dicyclic(3));
        // off the eigenvector line: cyclic of order q+1
        let pr = sandler(5, 1, 2, "T+1");
        let maps = sandler_automorphisms(&pr);
        assert_eq!(maps.len(), 6);
        assert_eq!(identify_group(&maps).unwrap().label, GroupLabel::Cyclic(6));
    }

    fn family(p: u64, e: u32, n: u32, fam: Family, eta: &str, mu: &str) -> FamilyParams {
        let t = Arc::new(FieldTower::new(p, e, n).unwrap());
        let eta = t.parse(eta).unwrap();
        let mu = t.parse(mu).unwrap();
        FamilyParams::new(t, fam, eta, mu, 1).unwrap()
    }

    #[test]
    fn quadratic_family_aut_sizes() {
        // eta in F: exactly two maps; eta outside F: identity only
        let pr = family(2, 1, 2, Family::Hk, "1", "1");
        assert!(pr.is_division());
        let maps = family_automorphisms(&pr).unwrap();
        assert_eq!(maps.len(), 2);
        let pr = family(3, 1, 2, Family::Hk, "T", "1");
        let maps = family_automorphisms(&pr).unwrap();
        assert_eq!(maps.len(), 1);
    }

    #[test]
    fn stabilizer_matches_enumeration() {
        for fam in [Family::Hk, Family::Kn2, Family::Kn3] {
            for eta_idx in 1..9u64 {
                for mu_idx in 1..9u64 {
                    let t = Arc::new(FieldTower::new(3, 1, 2).unwrap());
                    let eta = t.from_index(eta_idx);
                    let mu = t.from_index(mu_idx);
                    let pr = FamilyParams::new(t, fam, eta, mu, 1).unwrap();
                    let maps = family_automorphisms(&pr).unwrap();
                    let stab = family_aut_stabilizer(&pr).unwrap();
                    assert_eq!(maps.len(), stab.len());
                    // the identity Galois power always fixes the element
                    assert!(stab.contains(&0));
                }
            }
        }
    }

    #[test]
    fn stabilizer_requires_nonzero_mu() {
        let pr = family(3, 1, 2, Family::Hk, "T", "0");
        assert!(matches!(family_aut_stabilizer(&pr), Err(Error::ZeroMu)));
    }

    #[test]
    fn kn2_mu_zero_solutions() {
        // with mu = 0 the b-condition degenerates to the eta equation alone
        let pr = family(3, 1, 2, Family::Kn2, "T+1", "0");
        let t = pr.tower().clone();
        let maps = family_automorphisms(&pr).unwrap();
        let manual: usize = (0..2u32)
            .map(|tp| {
                t.nonzero_elements()
                    .filter(|b| {
                        t.mul(pr.eta(), &t.mul(&pr.sigma(b, -1), &pr.sigma(b, -2)))
                            == t.frobenius(pr.eta(), tp as i64)
                    })
                    .count()
            })
            .sum();
        assert!(!maps.is_empty());
        assert_eq!(maps.len(), manual);
    }

    #[test]
    fn kn1_candidates_contain_identity() {
        let pr = family(3, 1, 2, Family::Kn1, "T", "1");
        let maps = kn1_candidate_automorphisms(&pr).unwrap();
        assert!(maps.iter().any(|m| m.matrix == MatFp::identity(3, 4)));
        // the enumalted family API rejects kn1
        assert!(matches!(
            family_automorphisms(&pr),
            Err(Error::WrongFamily("kn1"))
        ));
        assert!(matches!(
            kn1_candidate_automorphisms(&family(3, 1, 2, Family::Hk, "T", "1")),
            Err(Error::WrongFamily("hk"))
        ));
    }

    #[test]
    fn identify_rejects_non_groups() {
        let pr = sandler(3, 1, 2, "T");
        let maps = sandler_automorphisms(&pr);
        // drop the identity: no longer a group
        let broken: Vec<Automorphism> = maps
            .iter()
            .filter(|m| m.matrix != MatFp::identity(3, 4))
            .cloned()
            .collect();
        assert!(matches!(identify_group(&broken), Err(Error::NotAGroup(_))));
        assert!(matches!(identify_group(&[]), Err(Error::NotAGroup(_))));
    }

    #[test]
    fn identify_small_cyclic() {
        let pr = sandler(2, 1, 2, "T");
        let maps = sandler_automorphisms(&pr);
        let id = identify_group(&maps).unwrap();
        assert_eq!(id.label, GroupLabel::Cyclic(3));
        assert_eq!(id.signature, vec![(1, 1), (3, 2)]);
        assert_eq!(id.generators.len(), 1);
    }
}
