//! The cyclic construction on ⊕ L z^i with twist a ∈ L \ F: monomial
//! products, the three division predicates, and the closed-form left nucleus.

use std::sync::Arc;

use crate::algebra::{AlgElement, SemifieldSpec, Side};
use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldTower};
use crate::linalg::RowSpace;

/// Tower plus twist element a ∈ L \ F.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SandlerParams {
    tower: Arc<FieldTower>,
    a: FieldElement,
}

impl SandlerParams {
    pub fn new(tower: Arc<FieldTower>, a: FieldElement) -> Result<Self> {
        if tower.in_base_field(&a) {
            return Err(Error::TwistInBaseField);
        }
        Ok(SandlerParams { tower, a })
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn a(&self) -> &FieldElement {
        &self.a
    }

    pub fn to_spec(&self) -> SemifieldSpec {
        SemifieldSpec::sandler(self.tower.clone(), self.a.clone())
            .expect("validated at construction")
    }

    /// Product of the monomials (l z^i)(m z^j): l sigma^i(m) z^{i+j}, with a
    /// factor of a when the exponent wraps past n.
    pub fn multiply_monomial(
        &self,
        l: &FieldElement,
        i: usize,
        m: &FieldElement,
        j: usize,
    ) -> Result<AlgElement> {
        let n = self.tower.n() as usize;
        for idx in [i, j] {
            if idx >= n {
                return Err(Error::IndexOutOfRange {
                    index: idx,
                    degree: self.tower.n(),
                });
            }
        }
        let spec = self.to_spec();
        let coeff = self
            .tower
            .mul(l, &self.tower.frobenius(m, i as i64));
        Ok(if i + j < n {
            spec.monomial(&coeff, i + j)
        } else {
            spec.monomial(&self.tower.mul(&coeff, &self.a), i + j - n)
        })
    }

    /// Division test by linear independence of 1, a, ..., a^{n-1} over F,
    /// as a rank computation over the prime field.
    pub fn is_division_by_independence(&self) -> bool {
        let t = &self.tower;
        let n = t.n();
        let base = t.base_field_basis();
        let mut rs = RowSpace::new(t.p(), t.degree());
        let mut power = t.one();
        for _ in 0..n {
            for f in &base {
                rs.insert(t.mul(f, &power).coeffs().to_vec());
            }
            power = t.mul(&power, &self.a);
        }
        rs.rank() == (n * t.e()) as usize
    }

    /// Division test by subfield membership: a generates all of L over F.
    pub fn is_semifield(&self) -> bool {
        self.tower.subfield_degree(&self.a) == self.tower.n()
    }

    /// Smallest positive s with sigma^s(a) = a; divides n, and equals n
    /// exactly when a lies in no proper intermediate field.
    pub fn twist_period(&self) -> u32 {
        for s in 1..=self.tower.n() {
            if self.tower.n().is_multiple_of(s) && self.tower.frobenius(&self.a, s as i64) == self.a {
                return s;
            }
        }
        unreachable!("sigma^n fixes everything")
    }

    /// Closed-form left nucleus: L ⊕ L z^s ⊕ L z^{2s} ⊕ ... where s is the
    /// twist period. For a semifield this collapses to L alone.
    pub fn predicted_left_nucleus(&self) -> LeftNucleusPrediction {
        let t = &self.tower;
        let s = self.twist_period();
        let n = t.n();
        let d = t.degree();
        let spec = self.to_spec();
        let mut basis = Vec::new();
        let mut slot = 0u32;
        while slot < n {
            for k in 0..d {
                let mut coeffs = vec![0u64; d];
                coeffs[k] = 1;
                basis.push(spec.monomial(&t.from_coeffs(&coeffs), slot as usize));
            }
            slot += s;
        }
        LeftNucleusPrediction {
            s,
            dim: basis.len(),
            basis,
        }
    }

    /// Whether the kernel-solver left nucleus equals the predicted span.
    pub fn left_nucleus_matches_prediction(&self) -> bool {
        let spec = self.to_spec();
        let predicted = self.predicted_left_nucleus();
        let computed = spec.nucleus(Side::Left);
        if computed.len() != predicted.dim {
            return false;
        }
        let mut rs = RowSpace::new(self.tower.p(), spec.flat_dim());
        for b in &computed {
            rs.insert(spec.to_flat(b));
        }
        predicted.basis.iter().all(|b| rs.contains(&spec.to_flat(b)))
    }
}

#[derive(Clone, Debug)]
pub struct LeftNucleusPrediction {
    /// Twist period: the generator exponent of the subgroup fixing a.
    pub s: u32,
    /// Dimension over the prime field.
    pub dim: usize,
    pub basis: Vec<AlgElement>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, e: u32, n: u32, a: &str) -> SandlerParams {
        let t = Arc::new(FieldTower::new(p, e, n).unwrap());
        let a = t.parse(a).unwrap();
        SandlerParams::new(t, a).unwrap()
    }

    #[test]
    fn twist_must_avoid_base_field() {
        let t = Arc::new(FieldTower::new(3, 1, 2).unwrap());
        assert!(matches!(
            SandlerParams::new(t.clone(), t.scalar(2)),
            Err(Error::TwistInBaseField)
        ));
    }

    #[test]
    fn monomial_products() {
        // wrap case with n = 2: z * z = a
        let pr = params(2, 1, 2, "T");
        let t = pr.tower().clone();
        let out = pr.multiply_monomial(&t.one(), 1, &t.one(), 1).unwrap();
        assert_eq!(out, pr.to_spec().embed(&t.gen()));
        // left slot-0 unit: (1 z^0)(m z^j) = m z^j
        let m = t.parse("T+1").unwrap();
        let out = pr.multiply_monomial(&t.one(), 0, &m, 1).unwrap();
        assert_eq!(out, pr.to_spec().monomial(&m, 1));
        // F_9 with a = T: (T z)(T z) = T sigma(T) a z^0 = T
        let pr = params(3, 1, 2, "T");
        let t = pr.tower().clone();
        let out = pr.multiply_monomial(&t.gen(), 1, &t.gen(), 1).unwrap();
        assert_eq!(out, pr.to_spec().embed(&t.gen()));
        // index validation
        assert!(matches!(
            pr.multiply_monomial(&t.one(), 2, &t.one(), 0),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn monomial_rule_agrees_with_full_product() {
        let pr = params(2, 1, 3, "T");
        let spec = pr.to_spec();
        let t = pr.tower().clone();
        for i in 0..3 {
            for j in 0..3 {
                for l in t.nonzero_elements() {
                    let m = t.parse("T^2+1").unwrap();
                    let by_rule = pr.multiply_monomial(&l, i, &m, j).unwrap();
                    let by_mul = spec.mul(&spec.monomial(&l, i), &spec.monomial(&m, j));
                    assert_eq!(by_rule, by_mul);
                }
            }
        }
    }

    #[test]
    fn independence_test() {
        // prime degree: every twist works
        for a_idx in 2..9 {
            let t = Arc::new(FieldTower::new(3, 1, 2).unwrap());
            let a = t.from_index(a_idx);
            if t.in_base_field(&a) {
                continue;
            }
            let pr = SandlerParams::new(t, a).unwrap();
            assert!(pr.is_division_by_independence());
        }
        // twist in the quadratic subfield of a quartic extension: dependent
        let pr = params(2, 1, 4, "T^2+T");
        assert!(!pr.is_division_by_independence());
        // primitive twist: independent
        let pr = params(2, 1, 4, "T");
        assert!(pr.is_division_by_independence());
    }

    #[test]
    fn semifield_examples() {
        assert!(params(2, 1, 2, "T").is_semifield());
        assert!(!params(2, 1, 4, "T^2+T").is_semifield());
        assert!(params(3, 1, 2, "T+1").is_semifield());
    }

    #[test]
    fn predicted_left_nucleus_subfield_case() {
        let pr = params(2, 1, 4, "T^2+T");
        let pred = pr.predicted_left_nucleus();
        assert_eq!(pred.s, 2);
        assert_eq!(pred.dim, 8);
        assert!(pr.left_nucleus_matches_prediction());
    }

    #[test]
    fn predicted_left_nucleus_primitive_case() {
        let pr = params(3, 1, 2, "T");
        let pred = pr.predicted_left_nucleus();
        assert_eq!(pred.s, 2);
        assert_eq!(pred.dim, 2);
        assert!(pr.left_nucleus_matches_prediction());
    }

    #[test]
    fn division_predicates_agree_on_small_towers() {
        for (p, e, n) in [(2u64, 1u32, 2u32), (3, 1, 2), (2, 1, 3), (2, 2, 2), (2, 1, 4)] {
            let t = Arc::new(FieldTower::new(p, e, n).unwrap());
            for idx in 0..t.order() {
                let a = t.from_index(idx);
                if t.in_base_field(&a) {
                    continue;
                }
                let pr = SandlerParams::new(t.clone(), a).unwrap();
                let by_independence = pr.is_division_by_independence();
                let by_subfield = pr.is_semifield();
                let by_matrix = pr.to_spec().is_division();
                assert_eq!(by_independence, by_subfield);
                assert_eq!(by_independence, by_matrix);
            }
        }
    }
}
