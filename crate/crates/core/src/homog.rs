//! Star-homogeneous ideals: detection, regrouping and comaximal factorization.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domains::{Domain, Element, Ideal, MaxIdeal, Residue};
use crate::error::{Error, Result};
use crate::star::{self, StarOp};

/// A proper star-ideal together with the unique maximal star-ideal containing it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomogCertificate {
    pub ideal: Ideal,
    pub spawned: MaxIdeal,
    pub star: StarOp,
}

/// Mutually star-comaximal homog factors in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComaximalFactorization {
    pub star: StarOp,
    pub factors: Vec<HomogCertificate>,
    /// Star-product of the inputs the factorization was built from.
    pub product_check: Ideal,
}

impl ComaximalFactorization {
    pub fn ideals(&self) -> Vec<Ideal> {
        self.factors.iter().map(|c| c.ideal.clone()).collect()
    }
}

/// The unique maximal star-ideal over a proper integral ideal.
pub fn spawned_maximal(dom: &Domain, i: &Ideal, star: StarOp) -> Result<MaxIdeal> {
    let mut maxes = dom.maximal_ideals_containing(i, star)?;
    if maxes.len() != 1 {
        return Err(Error::NotHomog(
            maxes.iter().map(|m| dom.format_ideal(&m.ideal)).collect(),
        ));
    }
    Ok(maxes.pop().expect("one element"))
}

/// A certificate when `I` is a proper star-ideal lying in exactly one maximal star-ideal.
pub fn is_homog(dom: &Domain, i: &Ideal, star: StarOp) -> Result<Option<HomogCertificate>> {
    if !i.is_proper() || !star::is_star_ideal(dom, i, star)? {
        return Ok(None);
    }
    let mut maxes = dom.maximal_ideals_containing(i, star)?;
    if maxes.len() != 1 {
        return Ok(None);
    }
    Ok(Some(HomogCertificate {
        ideal: i.clone(),
        spawned: maxes.pop().expect("one element"),
        star,
    }))
}

/// Re-derive a certificate and compare.
pub fn check_certificate(dom: &Domain, cert: &HomogCertificate, star: StarOp) -> Result<()> {
    if cert.star != star {
        return Err(Error::InvalidCertificate(format!(
            "certificate for {} is for star {}, expected {star}",
            dom.format_ideal(&cert.ideal),
            cert.star
        )));
    }
    match is_homog(dom, &cert.ideal, star)? {
        Some(c) if c.spawned == cert.spawned => Ok(()),
        Some(c) => Err(Error::InvalidCertificate(format!(
            "{} is spawned by {}, not {}",
            dom.format_ideal(&cert.ideal),
            dom.format_ideal(&c.spawned.ideal),
            dom.format_ideal(&cert.spawned.ideal)
        ))),
        None => Err(Error::InvalidCertificate(format!(
            "{} is not {star}-homog",
            dom.format_ideal(&cert.ideal)
        ))),
    }
}

/// Membership in `M(I)` by its defining property: `(x, I)* ≠ D`.
pub fn in_spawned_by_definition(dom: &Domain, i: &Ideal, x: &Element, star: StarOp) -> Result<bool> {
    let xi = dom.principal(x)?;
    Ok(!star::star_sum(dom, &xi, i, star)?.is_unit_ideal())
}

/// Merge similar factors (same spawned maximal) and return the canonical factorization.
pub fn regroup_comaximal(
    dom: &Domain,
    factors: &[HomogCertificate],
    star: StarOp,
) -> Result<ComaximalFactorization> {
    regroup_inner(dom, factors, star, true)
}

pub(crate) fn regroup_inner(
    dom: &Domain,
    factors: &[HomogCertificate],
    star: StarOp,
    merge: bool,
) -> Result<ComaximalFactorization> {
    if factors.is_empty() {
        return Err(Error::InvalidCertificate("empty factor list".into()));
    }
    for c in factors {
        check_certificate(dom, c, star)?;
    }
    let mut product_check = dom.one();
    for c in factors {
        product_check = star::star_product(dom, &product_check, &c.ideal, star)?;
    }
    let out = if merge {
        let mut groups: BTreeMap<&MaxIdeal, Ideal> = BTreeMap::new();
        for c in factors {
            let acc = match groups.remove(&c.spawned) {
                None => c.ideal.clone(),
                Some(prev) => star::star_product(dom, &prev, &c.ideal, star)?,
            };
            groups.insert(&c.spawned, acc);
        }
        groups
            .into_iter()
            .map(|(m, ideal)| HomogCertificate {
                ideal,
                spawned: m.clone(),
                star,
            })
            .collect()
    } else {
        // negative control: similar factors stay separate, in input order
        let mut v = factors.to_vec();
        v.sort_by(|a, b| a.spawned.cmp(&b.spawned));
        v
    };
    Ok(ComaximalFactorization {
        star,
        factors: out,
        product_check,
    })
}

fn factor_over_maximals(dom: &Domain, i: &Ideal, star: StarOp) -> Result<ComaximalFactorization> {
    let maxes = dom.maximal_ideals_containing(i, star)?;
    let factors = maxes
        .par_iter()
        .map(|m| {
            let part = dom.local_contract(i, m)?;
            is_homog(dom, &part, star)?.ok_or_else(|| {
                Error::InvalidCertificate(format!(
                    "component {} at {} is not {star}-homog",
                    dom.format_ideal(&part),
                    dom.format_ideal(&m.ideal)
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut product_check = dom.one();
    for c in &factors {
        product_check = star::star_product(dom, &product_check, &c.ideal, star)?;
    }
    Ok(ComaximalFactorization {
        star,
        factors,
        product_check,
    })
}

/// Factor `xD` as a star-product of mutually comaximal homog ideals, one per maximal star-ideal over `x`.
pub fn factor_principal(dom: &Domain, x: &Element, star: StarOp) -> Result<ComaximalFactorization> {
    dom.check_nonunit(x)?;
    let i = dom.principal(x)?;
    factor_over_maximals(dom, &i, star)
}

/// Factor a proper star-invertible star-ideal.
pub fn factor_invertible(dom: &Domain, i: &Ideal, star: StarOp) -> Result<ComaximalFactorization> {
    if !i.is_proper() {
        return Err(Error::NotProper(dom.format_ideal(i)));
    }
    if !star::is_star_ideal(dom, i, star)? {
        return Err(Error::NotStarIdeal(dom.format_ideal(i), star.as_char()));
    }
    if !star::is_star_invertible(dom, i, star)? {
        return Err(Error::NotInvertible(dom.format_ideal(i)));
    }
    factor_over_maximals(dom, i, star)
}

/// Outcome of a star-gcd computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GcdOutcome {
    Factors(ComaximalFactorization),
    /// No maximal star-ideal contains both elements; the lists show the disjoint supports.
    UnitWitness {
        maximals_a: Vec<MaxIdeal>,
        maximals_b: Vec<MaxIdeal>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdResult {
    /// `(a, b)*`.
    pub ideal: Ideal,
    pub outcome: GcdOutcome,
}

/// `(a, b)*` and, when proper, its local factors.
pub fn gcd_star(dom: &Domain, a: &Element, b: &Element, star: StarOp) -> Result<GcdResult> {
    for x in [a, b] {
        dom.check_element(x)?;
        if x.is_zero() {
            return Err(Error::ZeroInput);
        }
        if !dom.is_integral_element(x)? {
            return Err(Error::NotInDomain(dom.format_element(x)));
        }
    }
    let ideal = star::closure(dom, &dom.ideal_from_generators(&[a.clone(), b.clone()])?, star)?;
    if ideal.is_unit_ideal() {
        let over = |x: &Element| -> Result<Vec<MaxIdeal>> {
            dom.max_star_ideals_over(&dom.principal(x)?, star)
        };
        return Ok(GcdResult {
            ideal,
            outcome: GcdOutcome::UnitWitness {
                maximals_a: over(a)?,
                maximals_b: over(b)?,
            },
        });
    }
    let fac = factor_over_maximals(dom, &ideal, star)?;
    Ok(GcdResult {
        ideal,
        outcome: GcdOutcome::Factors(fac),
    })
}

// ---- reports -------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRecord {
    pub ideal: String,
    pub generators: String,
    pub spawned: String,
    pub residue: Residue,
    pub star_invertible: bool,
    pub principal_generator: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationReport {
    pub domain: String,
    pub star: StarOp,
    pub input: String,
    pub factors: Vec<FactorRecord>,
    pub product_check: String,
    pub product_matches_input: bool,
}

pub fn describe_factorization(
    dom: &Domain,
    input: &Ideal,
    fac: &ComaximalFactorization,
) -> Result<FactorizationReport> {
    let factors = fac
        .factors
        .iter()
        .map(|c| {
            Ok(FactorRecord {
                ideal: dom.format_ideal(&c.ideal),
                generators: dom.ideal_literal(&c.ideal),
                spawned: dom.format_ideal(&c.spawned.ideal),
                residue: c.spawned.residue.clone(),
                star_invertible: star::is_star_invertible(dom, &c.ideal, fac.star)?,
                principal_generator: dom.is_principal(&c.ideal)?.map(|g| dom.format_element(&g)),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FactorizationReport {
        domain: dom.name(),
        star: fac.star,
        input: dom.format_ideal(input),
        factors,
        product_check: dom.format_ideal(&fac.product_check),
        product_matches_input: fac.product_check == star::closure(dom, input, fac.star)?,
    })
}
