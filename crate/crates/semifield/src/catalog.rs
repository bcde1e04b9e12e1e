//! Catalog generation: one row per cyclic-construction isomorphism class and
//! one per pair-construction division instance, up to a maximum order.
//! Output is a pure function of the bound: canonical moduli, default sigma,
//! rows sorted by (order, kind, parameters).

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Family, SemifieldSpec};
use crate::autgroup::{family_automorphisms, identify_group, sandler_automorphisms};
use crate::classify::enumerate_classes;
use crate::error::{Error, Result};
use crate::family::{division_criterion, FamilyParams};
use crate::gf::FieldTower;
use crate::sandler::SandlerParams;

/// Default order bound for catalog generation, overridable through
/// SEMIFIELD_MAX_ORDER.
pub fn default_catalog_bound() -> u128 {
    std::env::var("SEMIFIELD_MAX_ORDER")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1 << 12)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CatalogRecord {
    pub order: u128,
    pub kind: String,
    /// Canonical text form carrying everything needed to rebuild the algebra.
    pub params: String,
    pub is_division: bool,
    pub nucleus_dims: [usize; 3],
    pub center_dim: usize,
    /// True on cyclic-construction rows, which stand for a whole class.
    pub class_representative: bool,
    /// Absent on kn1 rows, whose full group has no closed enumeration.
    pub aut_order: Option<u64>,
    pub group_label: Option<String>,
}

fn small_primes(limit: u64) -> impl Iterator<Item = u64> {
    (2..=limit).filter(|&p| crate::gf::is_prime(p))
}

/// All rows with algebra order at most `max_order`.
pub fn generate(max_order: u128) -> Vec<CatalogRecord> {
    let mut rows = Vec::new();
    // cyclic construction: order q^{n^2}
    for p in small_primes(64) {
        for e in 1..=16u32 {
            for n in 2..=16u32 {
                let order = (p as u128).checked_pow(e * n * n);
                match order {
                    Some(o) if o <= max_order => {}
                    _ => continue,
                }
                let t = match FieldTower::new(p, e, n) {
                    Ok(t) => Arc::new(t),
                    Err(_) => continue,
                };
                for class in enumerate_classes(&t).classes {
                    let pr = SandlerParams::new(t.clone(), class.representative).unwrap();
                    rows.push(sandler_record(&pr));
                }
            }
        }
    }
    // pair constructions: order q^{2n}, default sigma, division rows only
    for p in small_primes(64) {
        for e in 1..=16u32 {
            for n in 2..=16u32 {
                let order = (p as u128).checked_pow(2 * e * n);
                match order {
                    Some(o) if o <= max_order => {}
                    _ => continue,
                }
                let t = match FieldTower::new(p, e, n) {
                    Ok(t) => Arc::new(t),
                    Err(_) => continue,
                };
                for eta_idx in 1..t.order() {
                    for mu_idx in 0..t.order() {
                        let eta = t.from_index(eta_idx);
                        let mu = t.from_index(mu_idx);
                        if !division_criterion(&t, 1, &eta, &mu) {
                            continue;
                        }
                        for family in Family::CONSTRUCTIONS {
                            let pr = FamilyParams::new(
                                t.clone(),
                                family,
                                eta.clone(),
                                mu.clone(),
                                1,
                            )
                            .unwrap();
                            rows.push(family_record(&pr));
                        }
                    }
                }
            }
        }
    }
    rows.sort_by(|a, b| {
        (a.order, &a.kind, &a.params).cmp(&(b.order, &b.kind, &b.params))
    });
    rows
}

fn sandler_record(pr: &SandlerParams) -> CatalogRecord {
    let t = pr.tower();
    let spec = pr.to_spec();
    let maps = sandler_automorphisms(pr);
    let label = identify_group(&maps).map(|g| g.label.to_string()).ok();
    CatalogRecord {
        order: spec.order(),
        kind: "sandler".to_string(),
        params: format!(
            "p={};e={};n={};a={}",
            t.p(),
            t.e(),
            t.n(),
            t.render(pr.a())
        ),
        is_division: pr.is_semifield(),
        nucleus_dims: spec.nucleus_dims(),
        center_dim: spec.center_dim(),
        class_representative: true,
        aut_order: Some(maps.len() as u64),
        group_label: label,
    }
}

fn family_record(pr: &FamilyParams) -> CatalogRecord {
    let t = pr.tower();
    let spec = pr.to_spec();
    let (aut_order, group_label) = if pr.family() == Family::Kn1 {
        (None, None)
    } else {
        let maps = family_automorphisms(pr).expect("not kn1");
        let label = identify_group(&maps).map(|g| g.label.to_string()).ok();
        (Some(maps.len() as u64), label)
    };
    CatalogRecord {
        order: spec.order(),
        kind: pr.family().name().to_string(),
        params: format!(
            "p={};e={};n={};sigma={};eta={};mu={}",
            t.p(),
            t.e(),
            t.n(),
            pr.sigma_index(),
            t.render(pr.eta()),
            t.render(pr.mu())
        ),
        is_division: pr.is_division(),
        nucleus_dims: spec.nucleus_dims(),
        center_dim: spec.center_dim(),
        class_representative: false,
        aut_order,
        group_label,
    }
}

/// Rebuild the algebra a record describes; used to re-verify catalog rows.
pub fn reconstruct(record: &CatalogRecord) -> Result<SemifieldSpec> {
    let mut fields = std::collections::HashMap::new();
    for part in record.params.split(';') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(record.params.clone()))?;
        fields.insert(k.to_string(), v.to_string());
    }
    let get = |k: &str| {
        fields
            .get(k)
            .cloned()
            .ok_or_else(|| Error::Parse(format!("missing {k} in `{}`", record.params)))
    };
    let p: u64 = get("p")?.parse().map_err(|_| Error::Parse(record.params.clone()))?;
    let e: u32 = get("e")?.parse().map_err(|_| Error::Parse(record.params.clone()))?;
    let n: u32 = get("n")?.parse().map_err(|_| Error::Parse(record.params.clone()))?;
    let t = Arc::new(FieldTower::new(p, e, n)?);
    if record.kind == "sandler" {
        let a = t.parse(&get("a")?)?;
        SemifieldSpec::sandler(t, a)
    } else {
        let family = Family::from_name(&record.kind)
            .ok_or_else(|| Error::Parse(record.kind.clone()))?;
        let eta = t.parse(&get("eta")?)?;
        let mu = t.parse(&get("mu")?)?;
        let sigma: u32 = get("sigma")?
            .parse()
            .map_err(|_| Error::Parse(record.params.clone()))?;
        SemifieldSpec::family(t, family, eta, mu, sigma)
    }
}
