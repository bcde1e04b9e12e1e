//! The four pair constructions on L ⊕ L: parameters, the shared division
//! criterion, predicted nucleus patterns, opposite algebras and the mutual
//! non-isomorphism report.

use std::sync::Arc;

use crate::algebra::{Family, SemifieldSpec, Side};
use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldTower};

/// Parameters (sigma, eta, mu) for one pair construction. sigma is the
/// `sigma_index`-th power of the tower generator and must be nontrivial;
/// eta must be nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FamilyParams {
    tower: Arc<FieldTower>,
    family: Family,
    eta: FieldElement,
    mu: FieldElement,
    sigma_index: u32,
}

impl FamilyParams {
    pub fn new(
        tower: Arc<FieldTower>,
        family: Family,
        eta: FieldElement,
        mu: FieldElement,
        sigma_index: u32,
    ) -> Result<Self> {
        if eta.is_zero() {
            return Err(Error::ZeroEta);
        }
        if sigma_index.is_multiple_of(tower.n()) {
            return Err(Error::TrivialSigma);
        }
        Ok(FamilyParams {
            sigma_index: sigma_index % tower.n(),
            tower,
            family,
            eta,
            mu,
        })
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn eta(&self) -> &FieldElement {
        &self.eta
    }

    pub fn mu(&self) -> &FieldElement {
        &self.mu
    }

    pub fn sigma_index(&self) -> u32 {
        self.sigma_index
    }

    /// sigma^k applied through the tower generator.
    pub fn sigma(&self, x: &FieldElement, k: i64) -> FieldElement {
        self.tower.frobenius(x, k * self.sigma_index as i64)
    }

    pub fn to_spec(&self) -> SemifieldSpec {
        SemifieldSpec::family(
            self.tower.clone(),
            self.family,
            self.eta.clone(),
            self.mu.clone(),
            self.sigma_index,
        )
        .expect("parameters validated at construction")
    }

    /// Pair product in this construction.
    pub fn multiply(&self, x: (&FieldElement, &FieldElement), y: (&FieldElement, &FieldElement)) -> (FieldElement, FieldElement) {
        let spec = self.to_spec();
        let out = spec.mul(
            &spec.element(vec![x.0.clone(), x.1.clone()]),
            &spec.element(vec![y.0.clone(), y.1.clone()]),
        );
        (out.coords[0].clone(), out.coords[1].clone())
    }

    /// Division criterion for this construction.
    pub fn is_division(&self) -> bool {
        division_criterion(&self.tower, self.sigma_index, &self.eta, &self.mu)
    }

    /// sigma^2 = Id and mu = 0, where all four multiplications coincide.
    pub fn is_degenerate(&self) -> bool {
        (2 * self.sigma_index).is_multiple_of(self.tower.n()) && self.mu.is_zero()
    }

    /// Which nuclei equal L for this construction (left, middle, right).
    /// Fails for the degenerate case, where the question collapses.
    pub fn predicted_nuclei(&self) -> Result<NucleusPattern> {
        if self.is_degenerate() {
            return Err(Error::Degenerate(
                "sigma^2 = Id and mu = 0: the four multiplications coincide".to_string(),
            ));
        }
        Ok(predicted_pattern(self.family))
    }

    /// Nucleus pattern computed by the kernel solver: per side, whether the
    /// nucleus equals the embedded L, and whether it contains it.
    pub fn computed_nuclei(&self) -> ComputedNuclei {
        let spec = self.to_spec();
        let mut equals = [false; 3];
        let mut contains = [false; 3];
        let mut dims = [0usize; 3];
        for (k, side) in Side::ALL.iter().enumerate() {
            let basis = spec.nucleus(*side);
            dims[k] = basis.len();
            equals[k] = spec.span_is_embedded_field(&basis);
            contains[k] = spec.span_contains_embedded_field(&basis);
        }
        ComputedNuclei {
            equals_l: equals,
            contains_l: contains,
            dims,
        }
    }

    /// Whether the computed nuclei agree with the predicted pattern:
    /// the named nuclei equal L exactly and the others do not contain L.
    pub fn nuclei_match_prediction(&self) -> Result<bool> {
        let predicted = self.predicted_nuclei()?;
        let computed = self.computed_nuclei();
        Ok(computed.matches(&predicted))
    }

    /// The reversed algebra; defined for the Hk pair.
    pub fn opposite(&self) -> Result<FamilyParams> {
        let family = match self.family {
            Family::Hk => Family::HkOp,
            Family::HkOp => Family::Hk,
            other => return Err(Error::WrongFamily(other.name())),
        };
        Ok(FamilyParams {
            family,
            ..self.clone()
        })
    }
}

/// True when w sigma(w) + mu w - eta = 0 has no solution w in L, the shared
/// division criterion of all four constructions. Permits eta = 0, where w = 0
/// is always a root.
pub fn division_criterion(
    tower: &FieldTower,
    sigma_index: u32,
    eta: &FieldElement,
    mu: &FieldElement,
) -> bool {
    let s = sigma_index as i64;
    for w in tower.elements() {
        let val = tower.add(
            &tower.mul(&w, &tower.frobenius(&w, s)),
            &tower.mul(mu, &w),
        );
        if val == *eta {
            return false;
        }
    }
    true
}

fn predicted_pattern(family: Family) -> NucleusPattern {
    match family {
        Family::Kn2 => NucleusPattern {
            left: false,
            middle: true,
            right: true,
        },
        Family::Kn3 => NucleusPattern {
            left: true,
            middle: false,
            right: true,
        },
        Family::Hk => NucleusPattern {
            left: true,
            middle: true,
            right: false,
        },
        // reversal swaps left and right
        Family::HkOp => NucleusPattern {
            left: false,
            middle: true,
            right: true,
        },
        Family::Kn1 => NucleusPattern {
            left: false,
            middle: false,
            right: false,
        },
    }
}

/// Per-side flags: does the nucleus equal the embedded L?
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct NucleusPattern {
    pub left: bool,
    pub middle: bool,
    pub right: bool,
}

impl NucleusPattern {
    pub fn as_array(&self) -> [bool; 3] {
        [self.left, self.middle, self.right]
    }
}

#[derive(Clone, Debug)]
pub struct ComputedNuclei {
    pub equals_l: [bool; 3],
    pub contains_l: [bool; 3],
    pub dims: [usize; 3],
}

impl ComputedNuclei {
    pub fn matches(&self, predicted: &NucleusPattern) -> bool {
        predicted
            .as_array()
            .iter()
            .enumerate()
            .all(|(k, &named)| {
                if named {
                    self.equals_l[k]
                } else {
                    !self.contains_l[k]
                }
            })
    }
}

/// Outcome of comparing the four constructions at fixed (sigma, eta, mu).
#[derive(Clone, Debug)]
pub struct MutualIsoReport {
    pub degenerate: bool,
    /// (family, equals-L flags, dims) for each of the four constructions;
    /// empty in the degenerate case.
    pub patterns: Vec<(Family, [bool; 3], [usize; 3])>,
    /// All four nucleus patterns pairwise distinct (non-degenerate case).
    pub pairwise_distinct: Option<bool>,
    /// All four multiplication tables identical (degenerate case).
    pub tables_identical: Option<bool>,
}

/// Compare the four constructions: distinct nucleus fingerprints when
/// sigma^2 != Id or mu != 0, identical multiplications otherwise.
pub fn mutual_isomorphism_check(
    tower: &Arc<FieldTower>,
    sigma_index: u32,
    eta: &FieldElement,
    mu: &FieldElement,
) -> Result<MutualIsoReport> {
    if eta.is_zero() {
        return Err(Error::ZeroEta);
    }
    if sigma_index.is_multiple_of(tower.n()) {
        return Err(Error::TrivialSigma);
    }
    let degenerate = (2 * sigma_index).is_multiple_of(tower.n()) && mu.is_zero();
    if degenerate {
        let tables: Vec<Vec<Vec<u64>>> = Family::CONSTRUCTIONS
            .iter()
            .map(|&family| {
                let spec = SemifieldSpec::family(
                    tower.clone(),
                    family,
                    eta.clone(),
                    mu.clone(),
                    sigma_index,
                )
                .unwrap();
                let m = spec.flat_dim();
                let table = spec.table();
                (0..m * m)
                    .map(|st| table.basis_product(st / m, st % m).to_vec())
                    .collect()
            })
            .collect();
        let identical = tables.windows(2).all(|w| w[0] == w[1]);
        return Ok(MutualIsoReport {
            degenerate,
            patterns: Vec::new(),
            pairwise_distinct: None,
            tables_identical: Some(identical),
        });
    }
    let mut patterns = Vec::new();
    for family in Family::CONSTRUCTIONS {
        let params = FamilyParams::new(
            tower.clone(),
            family,
            eta.clone(),
            mu.clone(),
            sigma_index,
        )?;
        let computed = params.computed_nuclei();
        patterns.push((family, computed.equals_l, computed.dims));
    }
    let mut distinct = true;
    for i in 0..patterns.len() {
        for j in i + 1..patterns.len() {
            if patterns[i].1 == patterns[j].1 {
                distinct = false;
            }
        }
    }
    Ok(MutualIsoReport {
        degenerate,
        patterns,
        pairwise_distinct: Some(distinct),
        tables_identical: None,
    })
}

/// The common multiplication in the degenerate case:
/// (x,y)(u,v) = (xu + eta y sigma(v), xv + y sigma(u)).
pub fn degenerate_multiplication(
    tower: &FieldTower,
    sigma_index: u32,
    eta: &FieldElement,
    x: (&FieldElement, &FieldElement),
    y: (&FieldElement, &FieldElement),
) -> (FieldElement, FieldElement) {
    let s = sigma_index as i64;
    let (a, b) = x;
    let (u, v) = y;
    let c0 = tower.add(
        &tower.mul(a, u),
        &tower.mul(eta, &tower.mul(b, &tower.frobenius(v, s))),
    );
    let c1 = tower.add(&tower.mul(a, v), &tower.mul(b, &tower.frobenius(u, s)));
    (c0, c1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Arc<FieldTower> {
        Arc::new(FieldTower::new(2, 1, 2).unwrap())
    }

    fn f9() -> Arc<FieldTower> {
        Arc::new(FieldTower::new(3, 1, 2).unwrap())
    }

    #[test]
    fn kn3_formula() {
        let t = f9();
        let params =
            FamilyParams::new(t.clone(), Family::Kn3, t.gen(), t.parse("T+2").unwrap(), 1)
                .unwrap();
        for x in t.elements().step_by(2) {
            for y in t.elements().step_by(3) {
                for u in [t.one(), t.gen()] {
                    for v in [t.parse("2T").unwrap(), t.parse("T+1").unwrap()] {
                        let (c0, c1) = params.multiply((&x, &y), (&u, &v));
                        let exp0 = t.add(
                            &t.mul(&x, &u),
                            &t.mul(&t.gen(), &t.mul(&params.sigma(&v, -1), &y)),
                        );
                        let exp1 = t.add(
                            &t.add(&t.mul(&v, &x), &t.mul(&y, &params.sigma(&u, 1))),
                            &t.mul(params.mu(), &t.mul(&v, &y)),
                        );
                        assert_eq!((c0, c1), (exp0, exp1));
                    }
                }
            }
        }
    }

    #[test]
    fn embedded_field_is_a_subalgebra() {
        let t = f4();
        for family in Family::CONSTRUCTIONS {
            let params = FamilyParams::new(t.clone(), family, t.gen(), t.one(), 1).unwrap();
            for x in t.elements() {
                for u in t.elements() {
                    let (c0, c1) = params.multiply((&x, &t.zero()), (&u, &t.zero()));
                    assert_eq!(c0, t.mul(&x, &u));
                    assert!(c1.is_zero());
                }
            }
        }
    }

    #[test]
    fn division_criterion_examples() {
        let t = f4();
        // eta = 0 never divides
        for mu_idx in 0..4 {
            assert!(!division_criterion(&t, 1, &t.zero(), &t.from_index(mu_idx)));
        }
        // eta = 1, mu = 1: image of w sigma(w) + w misses 1
        assert!(division_criterion(&t, 1, &t.one(), &t.one()));
        let image: std::collections::BTreeSet<u64> = t
            .elements()
            .map(|w| {
                let v = t.add(&t.mul(&w, &t.frobenius(&w, 1)), &t.mul(&t.one(), &w));
                t.index_of(&v)
            })
            .collect();
        let rendered: Vec<String> = image.iter().map(|&i| t.render(&t.from_index(i))).collect();
        assert_eq!(rendered, ["0", "T", "T+1"]);
        // eta = T, mu = 1: w = T+1 is a root
        assert!(!division_criterion(&t, 1, &t.gen(), &t.one()));
    }

    #[test]
    fn division_matches_matrix_test() {
        let t = f4();
        for family in Family::CONSTRUCTIONS {
            for eta_idx in 1..4 {
                for mu_idx in 0..4 {
                    let eta = t.from_index(eta_idx);
                    let mu = t.from_index(mu_idx);
                    let params =
                        FamilyParams::new(t.clone(), family, eta, mu, 1).unwrap();
                    assert_eq!(params.is_division(), params.to_spec().is_division());
                }
            }
        }
    }

    #[test]
    fn division_matches_matrix_test_sampled_large_towers() {
        use rand::{Rng, SeedableRng};
        // deterministic sample above the full-sweep bound, |L| up to 64
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(97);
        for (p, e, n) in [(5u64, 1u32, 2u32), (3, 1, 3), (2, 1, 5), (7, 1, 2), (2, 1, 6)] {
            let t = Arc::new(FieldTower::new(p, e, n).unwrap());
            for _ in 0..8 {
                let eta = t.from_index(rng.gen_range(1..t.order()));
                let mu = t.from_index(rng.gen_range(0..t.order()));
                let sigma = rng.gen_range(1..t.n());
                let family = Family::CONSTRUCTIONS[rng.gen_range(0..4)];
                let params =
                    FamilyParams::new(t.clone(), family, eta, mu, sigma).unwrap();
                assert_eq!(params.is_division(), params.to_spec().is_division());
            }
        }
    }

    #[test]
    fn predicted_nuclei_patterns() {
        let t = f9();
        let cases = [
            (Family::Kn2, [false, true, true]),
            (Family::Kn3, [true, false, true]),
            (Family::Hk, [true, true, false]),
            (Family::Kn1, [false, false, false]),
        ];
        for (family, expected) in cases {
            let params = FamilyParams::new(t.clone(), family, t.gen(), t.one(), 1).unwrap();
            assert_eq!(params.predicted_nuclei().unwrap().as_array(), expected);
            assert!(params.nuclei_match_prediction().unwrap(), "{family:?}");
        }
    }

    #[test]
    fn degenerate_case_flagged() {
        let t = f4();
        let params = FamilyParams::new(t.clone(), Family::Hk, t.gen(), t.zero(), 1).unwrap();
        assert!(params.is_degenerate());
        assert!(matches!(
            params.predicted_nuclei(),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn opposite_reverses_multiplication() {
        let t = f9();
        let params =
            FamilyParams::new(t.clone(), Family::Hk, t.parse("T+1").unwrap(), t.one(), 1)
                .unwrap();
        let op = params.opposite().unwrap();
        let spec = params.to_spec();
        let op_spec = op.to_spec();
        for x in spec.elements().step_by(7) {
            for y in spec.elements().step_by(5) {
                assert_eq!(op_spec.mul(&x, &y), spec.mul(&y, &x));
            }
        }
        // reversal is an involution
        assert_eq!(op.opposite().unwrap(), params);
        // nucleus dims swap left and right, middle unchanged
        let d = params.computed_nuclei().dims;
        let od = op.computed_nuclei().dims;
        assert_eq!(od, [d[2], d[1], d[0]]);
        // only defined for the Hk pair
        let kn1 = FamilyParams::new(t.clone(), Family::Kn1, t.gen(), t.one(), 1).unwrap();
        assert!(matches!(kn1.opposite(), Err(Error::WrongFamily(_))));
    }

    #[test]
    fn mutual_check_distinct_patterns() {
        // sigma of order 3, mu = 0
        let t8 = Arc::new(FieldTower::new(2, 1, 3).unwrap());
        let report = mutual_isomorphism_check(&t8, 1, &t8.gen(), &t8.zero()).unwrap();
        assert!(!report.degenerate);
        assert_eq!(report.pairwise_distinct, Some(true));
        // sigma^2 = Id but mu != 0
        let t = f9();
        let report = mutual_isomorphism_check(&t, 1, &t.gen(), &t.one()).unwrap();
        assert!(!report.degenerate);
        assert_eq!(report.pairwise_distinct, Some(true));
    }

    #[test]
    fn mutual_check_degenerate_tables() {
        let t = f4();
        let report = mutual_isomorphism_check(&t, 1, &t.gen(), &t.zero()).unwrap();
        assert!(report.degenerate);
        assert_eq!(report.tables_identical, Some(true));
        // and the common multiplication follows the closed form
        let spec = SemifieldSpec::family(t.clone(), Family::Kn2, t.gen(), t.zero(), 1).unwrap();
        for x in spec.elements() {
            for y in spec.elements() {
                let prod = spec.mul(&x, &y);
                let (c0, c1) = degenerate_multiplication(
                    &t,
                    1,
                    &t.gen(),
                    (&x.coords[0], &x.coords[1]),
                    (&y.coords[0], &y.coords[1]),
                );
                assert_eq!(prod.coords, vec![c0, c1]);
            }
        }
    }

    #[test]
    fn degenerate_case_is_a_cyclic_algebra() {
        // over F = E the degenerate pair multiplication coincides with the
        // cyclic construction of degree 2 and twist eta
        let t = f4();
        let eta = t.gen();
        let pair = SemifieldSpec::family(t.clone(), Family::Hk, eta.clone(), t.zero(), 1).unwrap();
        let cyc = SemifieldSpec::sandler(t.clone(), eta).unwrap();
        for x in pair.elements() {
            for y in pair.elements() {
                let lhs = pair.mul(&x, &y);
                let rhs = cyc.mul(&cyc.element(x.coords.clone()), &cyc.element(y.coords.clone()));
                assert_eq!(lhs.coords, rhs.coords);
            }
        }

        // sigma of order 2 inside a degree-4 tower: same flat representation
        // as the quadratic tower over the fixed field F_4
        let t16 = Arc::new(FieldTower::new(2, 1, 4).unwrap());
        let t16_over_f4 = Arc::new(FieldTower::new(2, 2, 2).unwrap());
        assert_eq!(t16.modulus(), t16_over_f4.modulus());
        let eta = t16.gen(); // primitive, so outside the fixed field F_4
        let pair = SemifieldSpec::family(t16.clone(), Family::Kn3, eta.clone(), t16.zero(), 2)
            .unwrap();
        let cyc = SemifieldSpec::sandler(t16_over_f4.clone(), t16_over_f4.gen()).unwrap();
        for x in pair.elements().step_by(13) {
            for y in pair.elements().step_by(17) {
                let lhs = pair.mul(&x, &y);
                let rhs = cyc.mul(
                    &cyc.element(
                        x.coords
                            .iter()
                            .map(|c| t16_over_f4.from_coeffs(c.coeffs()))
                            .collect(),
                    ),
                    &cyc.element(
                        y.coords
                            .iter()
                            .map(|c| t16_over_f4.from_coeffs(c.coeffs()))
                            .collect(),
                    ),
                );
                let lhs_flat: Vec<u64> = lhs.coords.iter().flat_map(|c| c.coeffs().to_vec()).collect();
                let rhs_flat: Vec<u64> = rhs.coords.iter().flat_map(|c| c.coeffs().to_vec()).collect();
                assert_eq!(lhs_flat, rhs_flat);
            }
        }
    }

    #[test]
    fn validation() {
        let t = f4();
        assert!(matches!(
            FamilyParams::new(t.clone(), Family::Hk, t.zero(), t.one(), 1),
            Err(Error::ZeroEta)
        ));
        assert!(matches!(
            FamilyParams::new(t.clone(), Family::Hk, t.one(), t.one(), 0),
            Err(Error::TrivialSigma)
        ));
    }
}
