//! The ideal taxonomy (type 1, type 2, super, f, af, wf, waf) and domain reports.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domains::{Domain, Element, GroupDescriptor, Ideal, MaxIdeal};
use crate::error::{Error, Result};
use crate::homog::{self, is_homog};
use crate::star::{self, StarOp};

/// Answer to a possibly bounded question.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TriState {
    Yes,
    No,
    /// The search was exhausted at `bound` without a decision.
    Unknown { bound: u64 },
}

impl TriState {
    pub fn from_bool(b: bool) -> Self {
        if b {
            TriState::Yes
        } else {
            TriState::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == TriState::Yes
    }

    pub fn is_no(self) -> bool {
        self == TriState::No
    }

    pub fn is_unknown(self) -> bool {
        matches!(self, TriState::Unknown { .. })
    }

    /// Conjunction: No dominates, then Unknown.
    pub fn and(self, other: TriState) -> TriState {
        match (self, other) {
            (TriState::No, _) | (_, TriState::No) => TriState::No,
            (TriState::Unknown { bound }, _) | (_, TriState::Unknown { bound }) => TriState::Unknown { bound },
            _ => TriState::Yes,
        }
    }
}

impl fmt::Display for TriState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriState::Yes => write!(f, "yes"),
            TriState::No => write!(f, "no"),
            TriState::Unknown { bound } => write!(f, "unknown (bound {bound})"),
        }
    }
}

/// Classification of one ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeReport {
    pub star: StarOp,
    pub ideal: String,
    pub homog: bool,
    pub spawned: Option<String>,
    pub invertible: bool,
    pub principal: bool,
    pub type1: TriState,
    /// Largest exponent needed on the generators of `M(I)` for the type-1 condition.
    pub type1_generator_exp: Option<u32>,
    pub type2: TriState,
    pub type2_n: Option<u32>,
    #[serde(rename = "super")]
    pub super_homog: TriState,
    pub f: TriState,
    pub af: TriState,
    /// Least common multiple of the least exponents making each containing ideal principal.
    pub af_exp: Option<u64>,
    pub wf: TriState,
    pub waf: TriState,
    pub waf_exp: Option<u64>,
    /// `wf` and `waf` hold only because the ideal is not star-invertible.
    pub weak_vacuous: bool,
    pub supideals_examined: Option<usize>,
}

/// `(premise, conclusion)` pairs that every report must respect.
pub const IMPLICATIONS: [(&str, &str); 7] = [
    ("f", "super"),
    ("f", "wf"),
    ("af", "super"),
    ("af", "waf"),
    ("type2", "type1"),
    ("f", "af"),
    ("wf", "waf"),
];

impl TypeReport {
    pub fn flag(&self, name: &str) -> Option<TriState> {
        Some(match name {
            "homog" => TriState::from_bool(self.homog),
            "type1" => self.type1,
            "type2" => self.type2,
            "super" => self.super_homog,
            "f" => self.f,
            "af" => self.af,
            "wf" => self.wf,
            "waf" => self.waf,
            _ => return None,
        })
    }

    fn flag_mut(&mut self, name: &str) -> &mut TriState {
        match name {
            "type1" => &mut self.type1,
            "type2" => &mut self.type2,
            "super" => &mut self.super_homog,
            "f" => &mut self.f,
            "af" => &mut self.af,
            "wf" => &mut self.wf,
            "waf" => &mut self.waf,
            _ => unreachable!("unknown flag {name}"),
        }
    }

    /// Implications whose premise is Yes and conclusion No.
    pub fn implication_violations(&self) -> Vec<(&'static str, &'static str)> {
        IMPLICATIONS
            .iter()
            .copied()
            .filter(|(a, b)| self.flag(a).unwrap().is_yes() && self.flag(b).unwrap().is_no())
            .collect()
    }

    /// Fill Unknown flags from decided ones along the implications, in both directions.
    fn propagate(&mut self) {
        loop {
            let mut changed = false;
            for (a, b) in IMPLICATIONS {
                let (fa, fb) = (self.flag(a).unwrap(), self.flag(b).unwrap());
                if fa.is_yes() && fb.is_unknown() {
                    *self.flag_mut(b) = TriState::Yes;
                    changed = true;
                }
                if fb.is_no() && fa.is_unknown() {
                    *self.flag_mut(a) = TriState::No;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }

    fn not_homog(star: StarOp, ideal: String, invertible: bool, principal: bool) -> Self {
        TypeReport {
            star,
            ideal,
            homog: false,
            spawned: None,
            invertible,
            principal,
            type1: TriState::No,
            type1_generator_exp: None,
            type2: TriState::No,
            type2_n: None,
            super_homog: TriState::No,
            f: TriState::No,
            af: TriState::No,
            af_exp: None,
            wf: TriState::No,
            waf: TriState::No,
            waf_exp: None,
            weak_vacuous: false,
            supideals_examined: None,
        }
    }
}

/// A few nonzero elements of a maximal star-ideal: its lattice basis, or a
/// principal power of the prime in the monoid model.
pub(crate) fn maximal_sample_elements(dom: &Domain, m: &MaxIdeal) -> Result<Vec<Element>> {
    if dom.is_quadratic() {
        Ok(dom
            .generators(&m.ideal)?
            .into_iter()
            .filter(|x| !x.is_zero())
            .collect())
    } else {
        let d = m.ideal.as_divisor().expect("monoid ideal");
        let n = dom.monoid().expect("monoid").class_order(d) as i64;
        Ok(vec![Element::Divisor(d.scale(n))])
    }
}

struct Supideal {
    invertible: bool,
    principal: bool,
    /// Least `n` with `(Jⁿ)*` principal, searched up to the power bound.
    power: Option<u32>,
}

fn examine(dom: &Domain, j: &Ideal, star: StarOp, power_bound: u32) -> Result<Supideal> {
    let invertible = star::is_star_invertible(dom, j, star)?;
    let principal = dom.is_principal(j)?.is_some();
    let power = if principal {
        Some(1)
    } else if invertible {
        dom.principal_power(j, star, power_bound)?
    } else {
        None
    };
    Ok(Supideal {
        invertible,
        principal,
        power,
    })
}

/// Classify an integral ideal. Enumeration overflow yields Unknown, never an error.
pub fn classify_ideal(dom: &Domain, i: &Ideal, star: StarOp, bound: u32) -> Result<TypeReport> {
    let bound = bound.max(1);
    let name = dom.format_ideal(i);
    if !i.is_integral() {
        return Err(Error::NotProper(name));
    }
    let invertible = star::is_star_invertible(dom, i, star)?;
    let principal = dom.is_principal(i)?.is_some();
    let Some(cert) = is_homog(dom, i, star)? else {
        return Ok(TypeReport::not_homog(star, name, invertible, principal));
    };
    let m = &cert.spawned;

    // exponent searches are complete once the class-group exponent is known
    let class_exp = dom.class_group(star).ok().map(|g| g.exponent);
    let power_bound = class_exp.map(|e| e as u32).unwrap_or(bound);
    let power_unknown = TriState::Unknown {
        bound: power_bound as u64,
    };

    // type 1: every element of M(I) has a power whose M(I)-component lies in I.
    // Both backends have dimension one, where this holds for every homog ideal;
    // the generators of M(I) are still checked explicitly.
    let mut gen_exp: Option<u32> = Some(0);
    for x in maximal_sample_elements(dom, m)? {
        let xi = dom.principal(&x)?;
        let mut pow = dom.one();
        let mut found = None;
        for n in 1..=bound {
            pow = dom.product(&pow, &xi)?;
            if dom.contains(i, &dom.local_contract(&pow, m)?)? {
                found = Some(n);
                break;
            }
        }
        gen_exp = match (gen_exp, found) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
    }
    let structural_dim_one = true;
    let type1 = if structural_dim_one || gen_exp.is_some() {
        TriState::Yes
    } else {
        TriState::Unknown { bound: bound as u64 }
    };

    // type 2: I = (M^n)* for some n; the powers strictly decrease, so stop once I is not inside.
    let mut type2 = TriState::No;
    let mut type2_n = None;
    let mut pw = dom.one();
    let mut n = 0u32;
    loop {
        n += 1;
        let next = star::star_product(dom, &pw, &m.ideal, star)?;
        if next == *i {
            type2 = TriState::Yes;
            type2_n = Some(n);
            break;
        }
        if next == pw || !dom.contains(&next, i)? {
            break;
        }
        pw = next;
    }

    // containing star-ideals; when enumeration overflows fall back to {I, M(I)}
    let (sups, complete) = match dom.enumerate_supideals(i) {
        Ok(list) => {
            let mut out = Vec::with_capacity(list.len());
            for j in list {
                if star::is_star_ideal(dom, &j, star)? {
                    out.push(j);
                }
            }
            (out, true)
        }
        Err(Error::BoundExceeded { .. }) => (vec![i.clone(), m.ideal.clone()], false),
        Err(e) => return Err(e),
    };
    let enum_unknown = TriState::Unknown {
        bound: dom.limits().supideal_cap,
    };
    let examined = sups
        .iter()
        .map(|j| examine(dom, j, star, power_bound))
        .collect::<Result<Vec<_>>>()?;

    let decide = |fails: bool, open: bool| -> TriState {
        if fails {
            TriState::No
        } else if open {
            enum_unknown
        } else {
            TriState::Yes
        }
    };
    let super_homog = decide(examined.iter().any(|s| !s.invertible), !complete);
    let f = decide(examined.iter().any(|s| !s.principal), !complete);

    let lcm_powers = |items: &mut dyn Iterator<Item = &Supideal>| -> (TriState, Option<u64>) {
        let mut exp = 1u64;
        let mut open = !complete;
        for s in items {
            if !s.invertible {
                return (TriState::No, None);
            }
            match s.power {
                Some(n) => exp = num_integer::lcm(exp, n as u64),
                None if class_exp.is_some() => return (TriState::No, None),
                None => open = true,
            }
        }
        if open {
            let unknown = if complete { power_unknown } else { enum_unknown };
            (unknown, None)
        } else {
            (TriState::Yes, Some(exp))
        }
    };
    let (af, af_exp) = lcm_powers(&mut examined.iter());

    let (wf, waf, waf_exp, weak_vacuous) = if invertible {
        let inv: Vec<&Supideal> = examined.iter().filter(|s| s.invertible).collect();
        let wf = decide(inv.iter().any(|s| !s.principal), !complete);
        let (waf, waf_exp) = lcm_powers(&mut inv.iter().copied());
        (wf, waf, waf_exp, false)
    } else {
        (TriState::Yes, TriState::Yes, None, true)
    };

    let mut report = TypeReport {
        star,
        ideal: name,
        homog: true,
        spawned: Some(dom.format_ideal(&m.ideal)),
        invertible,
        principal,
        type1,
        type1_generator_exp: gen_exp,
        type2,
        type2_n,
        super_homog,
        f,
        af,
        af_exp,
        wf,
        waf,
        waf_exp,
        weak_vacuous,
        supideals_examined: complete.then_some(sups.len()),
    };
    report.propagate();
    Ok(report)
}

/// Whether the principal divisors of `x` form a chain: a single homog factor
/// whose principal supideals are totally ordered.
pub fn is_rigid_element(dom: &Domain, x: &Element, star: StarOp) -> Result<TriState> {
    let fac = homog::factor_principal(dom, x, star)?;
    if fac.factors.len() != 1 {
        return Ok(TriState::No);
    }
    let xd = dom.principal(x)?;
    let sups = match dom.enumerate_supideals(&xd) {
        Ok(s) => s,
        Err(Error::BoundExceeded { .. }) => {
            return Ok(TriState::Unknown {
                bound: dom.limits().supideal_cap,
            })
        }
        Err(e) => return Err(e),
    };
    let mut principal = Vec::new();
    for j in sups {
        if dom.is_principal(&j)?.is_some() {
            principal.push(j);
        }
    }
    for (k, a) in principal.iter().enumerate() {
        for b in &principal[k + 1..] {
            if !dom.contains(a, b)? && !dom.contains(b, a)? {
                return Ok(TriState::No);
            }
        }
    }
    Ok(TriState::Yes)
}

// ---- domain reports ----------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Settled by a structural property of the backend.
    Structural,
    /// Settled by the sample.
    Sampled,
    /// Structural answer, with the sample consulted for counterexamples.
    StructuralAndSampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvidenceKind {
    Witness,
    Counterexample,
}

/// A replayable observation behind a domain-level flag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    /// Domain-level flag this supports.
    pub domain_flag: String,
    pub kind: EvidenceKind,
    /// Ideal-level flag (`type2`, `super`, ...), or `principal`, `gcd`, `agcd`, `factorization`.
    pub check: String,
    pub element: Option<String>,
    pub element_b: Option<String>,
    /// Ideal literal readable by `Domain::parse_ideal`.
    pub ideal: Option<String>,
    pub observed: TriState,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRow {
    pub element: String,
    pub report: TypeReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainReport {
    pub domain: String,
    pub star: StarOp,
    pub elements_factored: usize,
    pub ideals_classified: usize,
    pub sh: TriState,
    pub wkd: TriState,
    pub krull: TriState,
    pub irkt: TriState,
    pub gkd: TriState,
    pub class_group: Option<GroupDescriptor>,
    pub class_group_error: Option<String>,
    pub wf_sh: TriState,
    pub waf_sh: TriState,
    pub gcd: TriState,
    pub agcd: TriState,
    /// Every star-invertible homog ideal seen (sample factors and the homog
    /// parts of non-principal class representatives) is principal exactly when `wf_sh` is Yes.
    pub wf_cross_check: bool,
    /// Sampled gcd and agcd failures agree with the structural answer.
    pub gcd_cross_check: bool,
    pub provenance: BTreeMap<String, Provenance>,
    pub rows: Vec<FactorRow>,
    pub evidence: Vec<Evidence>,
}

impl DomainReport {
    pub fn implication_violations(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.krull.is_yes() && self.wkd.is_no() {
            out.push("krull => wkd");
        }
        if self.gkd.is_yes() && (self.irkt.is_no() || self.wkd.is_no()) {
            out.push("gkd => irkt and wkd");
        }
        out
    }
}

const EVIDENCE_CAP: usize = 16;
const PAIR_CAP: usize = 64;

/// Replay one evidence record through the public operations.
pub fn reverify(dom: &Domain, star: StarOp, ev: &Evidence, bound: u32) -> Result<bool> {
    let ideal = ev.ideal.as_deref().map(|s| dom.parse_ideal(s)).transpose()?;
    let elem = |s: &Option<String>| -> Result<Element> {
        dom.parse_element(s.as_deref().ok_or_else(|| Error::Parse("missing element".into()))?)
    };
    let observed = match ev.check.as_str() {
        "principal" => {
            let i = ideal.ok_or_else(|| Error::Parse("missing ideal".into()))?;
            TriState::from_bool(dom.is_principal(&i)?.is_some())
        }
        "gcd" => {
            let (a, b) = (elem(&ev.element)?, elem(&ev.element_b)?);
            let g = star::closure(dom, &dom.ideal_from_generators(&[a, b])?, StarOp::V)?;
            TriState::from_bool(dom.is_principal(&g)?.is_some())
        }
        "agcd" => {
            let (a, b) = (elem(&ev.element)?, elem(&ev.element_b)?);
            agcd_pair(dom, &a, &b, bound)?
        }
        "factorization" => {
            let x = elem(&ev.element)?;
            TriState::from_bool(factorization_ok(dom, &x, star)?)
        }
        flag => {
            let i = ideal.ok_or_else(|| Error::Parse("missing ideal".into()))?;
            classify_ideal(dom, &i, star, bound)?
                .flag(flag)
                .ok_or_else(|| Error::Parse(format!("unknown flag {flag:?}")))?
        }
    };
    Ok(observed == ev.observed)
}

fn factorization_ok(dom: &Domain, x: &Element, star: StarOp) -> Result<bool> {
    match homog::factor_principal(dom, x, star) {
        Ok(f) => Ok(f.product_check == star::closure(dom, &dom.principal(x)?, star)?),
        Err(Error::InvalidCertificate(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

fn agcd_pair(dom: &Domain, a: &Element, b: &Element, bound: u32) -> Result<TriState> {
    for n in 1..=bound.max(1) {
        let g = dom.ideal_from_generators(&[dom.element_pow(a, n)?, dom.element_pow(b, n)?])?;
        if dom.is_principal(&star::closure(dom, &g, StarOp::V)?)?.is_some() {
            return Ok(TriState::Yes);
        }
    }
    Ok(TriState::Unknown { bound: bound as u64 })
}

/// Factor every sample element, classify every factor, and aggregate.
pub fn classify_domain(dom: &Domain, star: StarOp, sample: &[Element], bound: u32) -> Result<DomainReport> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    for x in sample {
        dom.check_nonunit(x)?;
    }
    let names: Vec<String> = sample.iter().map(|x| dom.format_element(x)).collect();
    let mut evidence: Vec<Evidence> = Vec::new();
    let mut push = |ev: Evidence| {
        if evidence.iter().filter(|e| e.domain_flag == ev.domain_flag).count() < EVIDENCE_CAP {
            evidence.push(ev);
        }
    };

    // factor and classify, in parallel, merged in sample order
    let per_element: Vec<(bool, Vec<(Ideal, TypeReport)>)> = sample
        .par_iter()
        .map(|x| -> Result<_> {
            if !factorization_ok(dom, x, star)? {
                return Ok((false, Vec::new()));
            }
            let fac = homog::factor_principal(dom, x, star)?;
            let rows = fac
                .factors
                .iter()
                .map(|c| Ok((c.ideal.clone(), classify_ideal(dom, &c.ideal, star, bound)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok((true, rows))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut rows = Vec::new();
    let mut factor_ideals = Vec::new();
    let mut sh = TriState::Yes;
    for ((ok, items), name) in per_element.into_iter().zip(&names) {
        if !ok {
            sh = TriState::No;
            push(Evidence {
                domain_flag: "sh".into(),
                kind: EvidenceKind::Counterexample,
                check: "factorization".into(),
                element: Some(name.clone()),
                element_b: None,
                ideal: None,
                observed: TriState::No,
            });
        }
        for (ideal, report) in items {
            factor_ideals.push((name.clone(), ideal));
            rows.push(FactorRow {
                element: name.clone(),
                report,
            });
        }
    }

    let closed = dom.is_integrally_closed();
    let mut sampled_flag = |domain_flag: &str, ideal_flag: &str, structural: Option<bool>| -> TriState {
        let mut value = structural.map(TriState::from_bool).unwrap_or(TriState::Yes);
        for (row, (_, ideal)) in rows.iter().zip(&factor_ideals) {
            let v = row.report.flag(ideal_flag).expect("known flag");
            if v.is_no() {
                value = TriState::No;
                push(Evidence {
                    domain_flag: domain_flag.into(),
                    kind: EvidenceKind::Counterexample,
                    check: ideal_flag.into(),
                    element: Some(row.element.clone()),
                    element_b: None,
                    ideal: Some(dom.ideal_literal(ideal)),
                    observed: v,
                });
            } else if v.is_unknown() && structural.is_none() && value.is_yes() {
                value = v;
            }
        }
        value
    };
    // one-dimensional backends: every homog ideal is of type 1
    let wkd = sampled_flag("wkd", "type1", Some(true));
    let krull = sampled_flag("krull", "type2", Some(closed));
    let irkt = sampled_flag("irkt", "super", Some(closed));
    let gkd = irkt.and(wkd);
    // finite class groups are torsion
    let waf_sh = sampled_flag("waf_sh", "waf", Some(true));

    let (class_group, class_group_error) = match dom.class_group(star) {
        Ok(g) => (Some(g), None),
        Err(e) => (None, Some(e.to_string())),
    };

    // invertible homog ideals seen: sample factors plus homog parts of class representatives
    let mut inv_homog: Vec<Ideal> = rows
        .iter()
        .zip(&factor_ideals)
        .filter(|(r, _)| r.report.invertible)
        .map(|(_, (_, i))| i.clone())
        .collect();
    if class_group.is_some() {
        for w in dom.class_group_witnesses(star)? {
            if w.is_proper() {
                if let Ok(f) = homog::factor_invertible(dom, &w, star) {
                    inv_homog.extend(f.ideals());
                }
            }
        }
    }
    let mut all_principal = true;
    for i in &inv_homog {
        if dom.is_principal(i)?.is_none() {
            if all_principal {
                push(Evidence {
                    domain_flag: "wf_sh".into(),
                    kind: EvidenceKind::Counterexample,
                    check: "principal".into(),
                    element: None,
                    element_b: None,
                    ideal: Some(dom.ideal_literal(i)),
                    observed: TriState::No,
                });
            }
            all_principal = false;
        }
    }
    let (wf_sh, wf_prov) = match &class_group {
        Some(g) => (TriState::from_bool(g.is_trivial()), Provenance::StructuralAndSampled),
        None if !all_principal => (TriState::No, Provenance::Sampled),
        None => (TriState::Unknown { bound: bound as u64 }, Provenance::Sampled),
    };
    let per_factor_wf_ok = !wf_sh.is_yes() || rows.iter().all(|r| !r.report.invertible || r.report.wf.is_yes());
    let wf_cross_check = per_factor_wf_ok
        && match wf_sh {
            TriState::Yes => all_principal,
            TriState::No => !all_principal,
            TriState::Unknown { .. } => true,
        };

    // gcd / agcd on sampled pairs
    let mut gcd_seen_no = false;
    let mut agcd_seen_no = false;
    let mut pairs = 0u64;
    'outer: for a in 0..sample.len() {
        for b in a + 1..sample.len() {
            if pairs as usize >= PAIR_CAP {
                break 'outer;
            }
            pairs += 1;
            let g = star::closure(dom, &dom.ideal_from_generators(&[sample[a].clone(), sample[b].clone()])?, StarOp::V)?;
            if dom.is_principal(&g)?.is_none() && !gcd_seen_no {
                gcd_seen_no = true;
                push(Evidence {
                    domain_flag: "gcd".into(),
                    kind: EvidenceKind::Counterexample,
                    check: "gcd".into(),
                    element: Some(names[a].clone()),
                    element_b: Some(names[b].clone()),
                    ideal: None,
                    observed: TriState::No,
                });
            }
            let ag = agcd_pair(dom, &sample[a], &sample[b], bound)?;
            if ag.is_unknown() && !agcd_seen_no && class_group.is_some() {
                // with a finite class group a missing principal power is a genuine failure
                agcd_seen_no = true;
                push(Evidence {
                    domain_flag: "agcd".into(),
                    kind: EvidenceKind::Counterexample,
                    check: "agcd".into(),
                    element: Some(names[a].clone()),
                    element_b: Some(names[b].clone()),
                    ideal: None,
                    observed: ag,
                });
            }
        }
    }
    // Krull: GCD iff the class group is trivial, AGCD iff it is torsion.
    // GCD domains are integrally closed.
    let krull_group = class_group.as_ref().filter(|_| closed);
    let (gcd, gcd_prov) = match krull_group {
        _ if gcd_seen_no => (TriState::No, Provenance::StructuralAndSampled),
        Some(g) => (TriState::from_bool(g.is_trivial()), Provenance::StructuralAndSampled),
        None if !closed => (TriState::No, Provenance::Structural),
        None => (TriState::Unknown { bound: pairs }, Provenance::Sampled),
    };
    let (agcd, agcd_prov) = match krull_group {
        _ if agcd_seen_no => (TriState::No, Provenance::Sampled),
        Some(_) => (TriState::Yes, Provenance::StructuralAndSampled),
        None => (TriState::Unknown { bound: pairs }, Provenance::Sampled),
    };
    let gcd_cross_check = !(gcd_seen_no && krull_group.is_some_and(|g| g.is_trivial()))
        && !(agcd_seen_no && krull_group.is_some());

    let mut provenance = BTreeMap::new();
    for k in ["sh", "wkd", "krull", "irkt", "gkd", "waf_sh"] {
        provenance.insert(k.to_string(), Provenance::StructuralAndSampled);
    }
    provenance.insert("wf_sh".into(), wf_prov);
    provenance.insert("gcd".into(), gcd_prov);
    provenance.insert("agcd".into(), agcd_prov);

    Ok(DomainReport {
        domain: dom.name(),
        star,
        elements_factored: sample.len(),
        ideals_classified: rows.len(),
        sh,
        wkd,
        krull,
        irkt,
        gkd,
        class_group,
        class_group_error,
        wf_sh,
        waf_sh,
        gcd,
        agcd,
        wf_cross_check,
        gcd_cross_check,
        provenance,
        rows,
        evidence,
    })
}
