//! Computable integral domains with exact fractional-ideal arithmetic.
//!
//! Two backends share one surface: quadratic orders (ideals as HNF lattices)
//! and Krull monoid models (ideals as divisors). A [`Domain`] is immutable;
//! every operation is a pure function of its arguments.

mod group;
pub mod literal;
pub mod monoid;
pub mod quadratic;

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use group::GroupDescriptor;
pub use monoid::Divisor;
pub use quadratic::{Lattice, QuadResidue};

use crate::error::{Error, Result};
use crate::star::{self, StarOp};
use monoid::KrullMonoid;
use quadratic::{QuadraticOrder, Vec2};

/// Class vector of a prime in the monoid model; a bare integer is accepted for cyclic groups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassVector {
    Scalar(u64),
    Vector(Vec<u64>),
}

impl ClassVector {
    fn components(&self) -> Vec<u64> {
        match self {
            ClassVector::Scalar(c) => vec![*c],
            ClassVector::Vector(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeSpec {
    pub label: String,
    pub cls: ClassVector,
}

fn default_conductor() -> i64 {
    1
}

/// Description of a domain, as read from a domain spec file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "backend")]
pub enum DomainSpec {
    /// The order of conductor `f` in `Q(√d)`.
    #[serde(rename = "quadratic_order")]
    QuadraticOrder {
        d: i64,
        #[serde(default = "default_conductor")]
        f: i64,
    },
    #[serde(rename = "krull_monoid")]
    KrullMonoidModel {
        class_group: Vec<u64>,
        primes: Vec<PrimeSpec>,
    },
}

impl DomainSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("domain spec: {e}")))
    }
}

/// Enumeration caps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest quotient `|D/I|` (or supideal count) for supideal enumeration.
    pub supideal_cap: u64,
    /// Largest `|disc|` for which the quadratic class group is enumerated.
    pub class_group_disc_cap: u64,
    /// Largest class group handled for the monoid model.
    pub group_size_cap: u64,
    /// Default bound for "some positive integer n" searches.
    pub default_search_bound: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            supideal_cap: 1_000_000,
            class_group_disc_cap: 100_000,
            group_size_cap: 100_000,
            default_search_bound: 32,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum DomainKey {
    Quadratic { d: i64, f: u64 },
    Monoid(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IdealRepr {
    Lattice(Lattice),
    Divisor(Divisor),
}

/// A nonzero fractional ideal in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ideal {
    key: DomainKey,
    repr: IdealRepr,
}

impl Ideal {
    pub fn repr(&self) -> &IdealRepr {
        &self.repr
    }

    pub fn as_lattice(&self) -> Option<&Lattice> {
        match &self.repr {
            IdealRepr::Lattice(l) => Some(l),
            IdealRepr::Divisor(_) => None,
        }
    }

    pub fn as_divisor(&self) -> Option<&Divisor> {
        match &self.repr {
            IdealRepr::Divisor(d) => Some(d),
            IdealRepr::Lattice(_) => None,
        }
    }

    /// Norm for lattices (`a·c/den²`), degree for divisors.
    pub fn size(&self) -> BigRational {
        match &self.repr {
            IdealRepr::Lattice(l) => l.norm(),
            IdealRepr::Divisor(d) => BigRational::from_integer(BigInt::from(d.degree())),
        }
    }

    pub fn is_integral(&self) -> bool {
        match &self.repr {
            IdealRepr::Lattice(l) => l.is_integral(),
            IdealRepr::Divisor(d) => d.is_integral(),
        }
    }

    pub fn is_unit_ideal(&self) -> bool {
        match &self.repr {
            IdealRepr::Lattice(l) => l.is_unit_ideal(),
            IdealRepr::Divisor(d) => d.is_zero(),
        }
    }

    /// Integral and strictly inside the domain.
    pub fn is_proper(&self) -> bool {
        self.is_integral() && !self.is_unit_ideal()
    }
}

impl Ord for Ideal {
    /// Norm (or degree) first, then the HNF tuple; divisors compare so that
    /// earlier labels sort first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.key
            .cmp(&other.key)
            .then_with(|| self.size().cmp(&other.size()))
            .then_with(|| match (&self.repr, &other.repr) {
                (IdealRepr::Lattice(a), IdealRepr::Lattice(b)) => a.cmp(b),
                (IdealRepr::Divisor(a), IdealRepr::Divisor(b)) => b.cmp(a),
                (IdealRepr::Lattice(_), IdealRepr::Divisor(_)) => Ordering::Less,
                (IdealRepr::Divisor(_), IdealRepr::Lattice(_)) => Ordering::Greater,
            })
    }
}

impl PartialOrd for Ideal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A nonzero element of the quotient field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Element {
    /// `u + v·√d`.
    Quadratic { u: BigRational, v: BigRational },
    /// A principal divisor; unit multiples are not tracked.
    Divisor(Divisor),
}

impl Element {
    pub fn integer(n: i64) -> Self {
        Element::Quadratic {
            u: BigRational::from_integer(BigInt::from(n)),
            v: BigRational::zero(),
        }
    }

    pub fn quadratic(u: i64, v: i64) -> Self {
        Element::Quadratic {
            u: BigRational::from_integer(BigInt::from(u)),
            v: BigRational::from_integer(BigInt::from(v)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Element::Quadratic { u, v } => u.is_zero() && v.is_zero(),
            Element::Divisor(_) => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Residue {
    Quadratic(QuadResidue),
    Prime { label: String },
}

/// A maximal star-ideal with its residue descriptor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MaxIdeal {
    pub ideal: Ideal,
    pub residue: Residue,
}

impl Ord for MaxIdeal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ideal.cmp(&other.ideal)
    }
}

impl PartialOrd for MaxIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

type ClassGroupData = (GroupDescriptor, Vec<Ideal>);

#[derive(Debug)]
#[allow(clippy::large_enum_variant)]
enum Backend {
    Quadratic(QuadraticOrder),
    Monoid(KrullMonoid),
}

/// An immutable computable domain.
#[derive(Debug)]
pub struct Domain {
    spec: DomainSpec,
    limits: Limits,
    backend: Backend,
    key: DomainKey,
    class_groups: [OnceLock<Result<ClassGroupData>>; 4],
}

impl Domain {
    pub fn new(spec: DomainSpec) -> Result<Self> {
        Self::with_limits(spec, Limits::default())
    }

    pub fn with_limits(spec: DomainSpec, limits: Limits) -> Result<Self> {
        let (backend, key) = match &spec {
            DomainSpec::QuadraticOrder { d, f } => {
                let q = QuadraticOrder::new(*d, *f)?;
                let key = DomainKey::Quadratic { d: *d, f: q.conductor() };
                (Backend::Quadratic(q), key)
            }
            DomainSpec::KrullMonoidModel { class_group, primes } => {
                let ps: Vec<(String, Vec<u64>)> = primes
                    .iter()
                    .map(|p| (p.label.clone(), p.cls.components()))
                    .collect();
                let m = KrullMonoid::new(class_group, &ps)?;
                let key = DomainKey::Monoid(m.fingerprint());
                (Backend::Monoid(m), key)
            }
        };
        Ok(Domain {
            spec,
            limits,
            backend,
            key,
            class_groups: Default::default(),
        })
    }

    pub fn quadratic(d: i64, f: i64) -> Result<Self> {
        Self::new(DomainSpec::QuadraticOrder { d, f })
    }

    /// Monoid model with a cyclic or product class group; `primes` are `(label, class)` pairs.
    pub fn krull_monoid(class_group: &[u64], primes: &[(&str, &[u64])]) -> Result<Self> {
        Self::new(DomainSpec::KrullMonoidModel {
            class_group: class_group.to_vec(),
            primes: primes
                .iter()
                .map(|(l, c)| PrimeSpec {
                    label: l.to_string(),
                    cls: ClassVector::Vector(c.to_vec()),
                })
                .collect(),
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::new(DomainSpec::from_json(text)?)
    }

    pub fn spec(&self) -> &DomainSpec {
        &self.spec
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn is_quadratic(&self) -> bool {
        matches!(self.backend, Backend::Quadratic(_))
    }

    /// Short human-readable name.
    pub fn name(&self) -> String {
        match &self.backend {
            Backend::Quadratic(q) => {
                let gen = if q.d() % 4 == 1 || q.d() % 4 == -3 {
                    format!("(1+√{})/2", q.d())
                } else {
                    format!("√{}", q.d())
                };
                if q.conductor() == 1 {
                    format!("Z[{gen}]")
                } else {
                    format!("Z[{}·{gen}]", q.conductor())
                }
            }
            Backend::Monoid(m) => format!(
                "Krull monoid model (class group {:?}, primes {})",
                m.group_factors(),
                m.labels().join(",")
            ),
        }
    }

    /// Whether the domain is known to be integrally closed (a maximal order, or the Krull model).
    pub fn is_integrally_closed(&self) -> bool {
        match &self.backend {
            Backend::Quadratic(q) => q.is_maximal_order(),
            Backend::Monoid(_) => true,
        }
    }

    pub(crate) fn quad(&self) -> Option<&QuadraticOrder> {
        match &self.backend {
            Backend::Quadratic(q) => Some(q),
            Backend::Monoid(_) => None,
        }
    }

    pub(crate) fn monoid(&self) -> Option<&KrullMonoid> {
        match &self.backend {
            Backend::Monoid(m) => Some(m),
            Backend::Quadratic(_) => None,
        }
    }

    // ---- construction ------------------------------------------------------

    fn wrap_lattice(&self, l: Lattice) -> Ideal {
        Ideal {
            key: self.key,
            repr: IdealRepr::Lattice(l),
        }
    }

    fn wrap_divisor(&self, d: Divisor) -> Ideal {
        Ideal {
            key: self.key,
            repr: IdealRepr::Divisor(d),
        }
    }

    /// The unit ideal `D`.
    pub fn one(&self) -> Ideal {
        match &self.backend {
            Backend::Quadratic(_) => self.wrap_lattice(Lattice::unit()),
            Backend::Monoid(m) => self.wrap_divisor(Divisor::zero(m.rank())),
        }
    }

    /// Build an ideal from an HNF tuple, checking canonical form.
    pub fn lattice_ideal(&self, den: i64, a: i64, b: i64, c: i64) -> Result<Ideal> {
        let q = self.quad().ok_or(Error::MixedDomains)?;
        let raw = [
            Vec2::new(BigInt::from(a), BigInt::zero()),
            Vec2::new(BigInt::from(b), BigInt::from(c)),
        ];
        let l = q.lattice_from_vectors(&raw, &BigInt::from(den))?;
        if !q.is_ideal_lattice(&l) {
            return Err(Error::Parse(format!("hnf ({a},{b},{c}) is not an ideal")));
        }
        Ok(self.wrap_lattice(l))
    }

    /// Build a divisor ideal from `(label, exponent)` pairs.
    pub fn divisor_ideal(&self, parts: &[(&str, i64)]) -> Result<Ideal> {
        let m = self.monoid().ok_or(Error::MixedDomains)?;
        let mut d = Divisor::zero(m.rank());
        for (label, e) in parts {
            let i = m
                .label_index(label)
                .ok_or_else(|| Error::Parse(format!("unknown prime label {label:?}")))?;
            d.0[i] += e;
        }
        Ok(self.wrap_divisor(d))
    }

    /// A principal-divisor element from `(label, exponent)` pairs.
    pub fn divisor_element(&self, parts: &[(&str, i64)]) -> Result<Element> {
        let d = self.divisor_ideal(parts)?;
        let div = d.as_divisor().expect("monoid ideal").clone();
        self.check_element(&Element::Divisor(div.clone()))?;
        Ok(Element::Divisor(div))
    }

    pub(crate) fn check_element(&self, x: &Element) -> Result<()> {
        match (&self.backend, x) {
            (Backend::Quadratic(_), Element::Quadratic { .. }) => Ok(()),
            (Backend::Monoid(m), Element::Divisor(d)) => {
                if d.0.len() != m.rank() {
                    return Err(Error::MixedDomains);
                }
                if !m.is_principal(d) {
                    return Err(Error::NotInDomain(format!(
                        "divisor {} has nonzero class",
                        literal::format_divisor(m, d)
                    )));
                }
                Ok(())
            }
            _ => Err(Error::MixedDomains),
        }
    }

    fn check_ideal(&self, i: &Ideal) -> Result<()> {
        if i.key != self.key {
            return Err(Error::MixedDomains);
        }
        Ok(())
    }

    /// `x·D`.
    pub fn principal(&self, x: &Element) -> Result<Ideal> {
        self.ideal_from_generators(std::slice::from_ref(x))
    }

    /// Canonical form of the ideal generated by `gens`.
    pub fn ideal_from_generators(&self, gens: &[Element]) -> Result<Ideal> {
        for g in gens {
            self.check_element(g)?;
        }
        match &self.backend {
            Backend::Quadratic(q) => {
                let parts: Vec<(Vec2, BigInt)> = gens
                    .iter()
                    .filter(|g| !g.is_zero())
                    .map(|g| match g {
                        Element::Quadratic { u, v } => q.to_tau(u, v),
                        Element::Divisor(_) => unreachable!(),
                    })
                    .collect();
                if parts.is_empty() {
                    return Err(Error::ZeroIdeal);
                }
                let den = parts
                    .iter()
                    .fold(BigInt::one(), |acc, (_, m)| crate::arith::lcm(&acc, m));
                let vs: Vec<Vec2> = parts
                    .iter()
                    .map(|(v, m)| Vec2::new(&v.x * (&den / m), &v.y * (&den / m)))
                    .collect();
                Ok(self.wrap_lattice(q.ideal_from_vectors(&vs, &den)?))
            }
            Backend::Monoid(_) => {
                let mut acc: Option<Divisor> = None;
                for g in gens {
                    if let Element::Divisor(d) = g {
                        acc = Some(match acc {
                            None => d.clone(),
                            Some(a) => a.meet(d),
                        });
                    }
                }
                acc.map(|d| self.wrap_divisor(d)).ok_or(Error::ZeroIdeal)
            }
        }
    }

    /// Z-basis (quadratic) or a single divisor (monoid) as elements where possible.
    pub fn generators(&self, i: &Ideal) -> Result<Vec<Element>> {
        self.check_ideal(i)?;
        match (&self.backend, &i.repr) {
            (Backend::Quadratic(q), IdealRepr::Lattice(l)) => {
                let (basis, den) = q.generators(l);
                Ok(basis
                    .iter()
                    .map(|v| {
                        let (u, w) = q.tau_to_sqrt(v, &den);
                        Element::Quadratic { u, v: w }
                    })
                    .collect())
            }
            (Backend::Monoid(_), IdealRepr::Divisor(d)) => Ok(vec![Element::Divisor(d.clone())]),
            _ => Err(Error::MixedDomains),
        }
    }

    // ---- ideal arithmetic ----------------------------------------------------

    fn binary(
        &self,
        i: &Ideal,
        j: &Ideal,
        lat: impl Fn(&QuadraticOrder, &Lattice, &Lattice) -> Lattice,
        div: impl Fn(&Divisor, &Divisor) -> Divisor,
    ) -> Result<Ideal> {
        self.check_ideal(i)?;
        self.check_ideal(j)?;
        match (&self.backend, &i.repr, &j.repr) {
            (Backend::Quadratic(q), IdealRepr::Lattice(a), IdealRepr::Lattice(b)) => {
                Ok(self.wrap_lattice(lat(q, a, b)))
            }
            (Backend::Monoid(_), IdealRepr::Divisor(a), IdealRepr::Divisor(b)) => {
                Ok(self.wrap_divisor(div(a, b)))
            }
            _ => Err(Error::MixedDomains),
        }
    }

    pub fn product(&self, i: &Ideal, j: &Ideal) -> Result<Ideal> {
        self.binary(i, j, |q, a, b| q.product(a, b), Divisor::add)
    }

    pub fn sum(&self, i: &Ideal, j: &Ideal) -> Result<Ideal> {
        self.binary(i, j, |q, a, b| q.sum(a, b), Divisor::meet)
    }

    pub fn intersect(&self, i: &Ideal, j: &Ideal) -> Result<Ideal> {
        self.binary(i, j, |q, a, b| q.intersect(a, b), Divisor::join)
    }

    /// `(I : J) = {x ∈ K : xJ ⊆ I}`.
    pub fn colon(&self, i: &Ideal, j: &Ideal) -> Result<Ideal> {
        self.binary(i, j, |q, a, b| q.colon(a, b), Divisor::sub)
    }

    /// `I⁻¹ = (D : I)`.
    pub fn inverse(&self, i: &Ideal) -> Result<Ideal> {
        self.colon(&self.one(), i)
    }

    pub fn power(&self, i: &Ideal, n: u32) -> Result<Ideal> {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.product(&acc, i)?;
        }
        Ok(acc)
    }

    /// `small ⊆ big`.
    pub fn contains(&self, big: &Ideal, small: &Ideal) -> Result<bool> {
        self.check_ideal(big)?;
        self.check_ideal(small)?;
        match (&self.backend, &big.repr, &small.repr) {
            (Backend::Quadratic(q), IdealRepr::Lattice(a), IdealRepr::Lattice(b)) => Ok(q.contains(a, b)),
            (Backend::Monoid(_), IdealRepr::Divisor(a), IdealRepr::Divisor(b)) => Ok(a.le(b)),
            _ => Err(Error::MixedDomains),
        }
    }

    pub fn contains_element(&self, i: &Ideal, x: &Element) -> Result<bool> {
        self.check_ideal(i)?;
        self.check_element(x)?;
        match (&self.backend, &i.repr, x) {
            (Backend::Quadratic(q), IdealRepr::Lattice(l), Element::Quadratic { u, v }) => {
                if x.is_zero() {
                    return Ok(true);
                }
                let (w, m) = q.to_tau(u, v);
                Ok(q.contains_element(l, &w, &m))
            }
            (Backend::Monoid(_), IdealRepr::Divisor(d), Element::Divisor(e)) => Ok(d.le(e)),
            _ => Err(Error::MixedDomains),
        }
    }

    /// `x·I`.
    pub fn scale(&self, i: &Ideal, x: &Element) -> Result<Ideal> {
        self.check_ideal(i)?;
        self.check_element(x)?;
        if x.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        match (&self.backend, &i.repr, x) {
            (Backend::Quadratic(q), IdealRepr::Lattice(l), Element::Quadratic { u, v }) => {
                let (w, m) = q.to_tau(u, v);
                Ok(self.wrap_lattice(q.scale(l, &w, &m)?))
            }
            (Backend::Monoid(_), IdealRepr::Divisor(d), Element::Divisor(e)) => Ok(self.wrap_divisor(d.add(e))),
            _ => Err(Error::MixedDomains),
        }
    }

    // ---- elements -----------------------------------------------------------

    pub fn element_mul(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check_element(x)?;
        self.check_element(y)?;
        match (x, y) {
            (Element::Quadratic { u: u1, v: v1 }, Element::Quadratic { u: u2, v: v2 }) => {
                let d = BigRational::from_integer(BigInt::from(self.quad().expect("quadratic").d()));
                Ok(Element::Quadratic {
                    u: u1 * u2 + v1 * v2 * d,
                    v: u1 * v2 + u2 * v1,
                })
            }
            (Element::Divisor(a), Element::Divisor(b)) => Ok(Element::Divisor(a.add(b))),
            _ => Err(Error::MixedDomains),
        }
    }

    pub fn element_pow(&self, x: &Element, n: u32) -> Result<Element> {
        let mut acc = self.element_one();
        for _ in 0..n {
            acc = self.element_mul(&acc, x)?;
        }
        Ok(acc)
    }

    pub fn element_one(&self) -> Element {
        match &self.backend {
            Backend::Quadratic(_) => Element::integer(1),
            Backend::Monoid(m) => Element::Divisor(Divisor::zero(m.rank())),
        }
    }

    /// `1/x`.
    pub fn element_inverse(&self, x: &Element) -> Result<Element> {
        self.check_element(x)?;
        if x.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(match x {
            Element::Quadratic { u, v } => {
                let n = self.element_norm(x).expect("quadratic");
                Element::Quadratic {
                    u: u / &n,
                    v: -v / &n,
                }
            }
            Element::Divisor(d) => Element::Divisor(d.scale(-1)),
        })
    }

    /// A nonzero element `x` of `D` with `x·I` integral.
    pub(crate) fn integral_multiplier(&self, i: &Ideal) -> Element {
        match (&self.backend, &i.repr) {
            (Backend::Quadratic(_), IdealRepr::Lattice(l)) => Element::Quadratic {
                u: BigRational::from_integer(l.den.clone()),
                v: BigRational::zero(),
            },
            (Backend::Monoid(m), IdealRepr::Divisor(d)) => {
                let lift = d.0.iter().map(|&e| (-e).max(0)).max().unwrap_or(0);
                let exp = m.group_factors().iter().copied().fold(1u64, num_integer::lcm) as i64;
                let k = (lift + exp - 1) / exp * exp;
                Element::Divisor(Divisor(vec![k; m.rank()]))
            }
            _ => self.element_one(),
        }
    }

    /// Whether `x` lies in `D` (rather than only in its quotient field).
    pub fn is_integral_element(&self, x: &Element) -> Result<bool> {
        self.check_element(x)?;
        Ok(match (&self.backend, x) {
            (Backend::Quadratic(q), Element::Quadratic { u, v }) => q.to_tau(u, v).1.is_one(),
            (_, Element::Divisor(d)) => d.is_integral(),
            _ => false,
        })
    }

    pub fn is_unit(&self, x: &Element) -> Result<bool> {
        self.check_element(x)?;
        Ok(match (&self.backend, x) {
            (Backend::Quadratic(q), Element::Quadratic { u, v }) => {
                let (w, m) = q.to_tau(u, v);
                q.is_unit_vec(&w, &m)
            }
            (_, Element::Divisor(d)) => d.is_zero(),
            _ => false,
        })
    }

    /// Validate a nonzero non-unit element of `D`.
    pub fn check_nonunit(&self, x: &Element) -> Result<()> {
        self.check_element(x)?;
        if x.is_zero() {
            return Err(Error::ZeroInput);
        }
        if !self.is_integral_element(x)? {
            return Err(Error::NotInDomain(self.format_element(x)));
        }
        if self.is_unit(x)? {
            return Err(Error::UnitInput);
        }
        Ok(())
    }

    // ---- maximal ideals and localization ---------------------------------------

    /// All maximal ideals of the ring containing an integral ideal, before any star filter.
    fn ring_maximals(&self, i: &Ideal) -> Result<Vec<MaxIdeal>> {
        match (&self.backend, &i.repr) {
            (Backend::Quadratic(q), IdealRepr::Lattice(l)) => Ok(q
                .maximal_containing(l)?
                .into_iter()
                .map(|(m, r)| MaxIdeal {
                    ideal: self.wrap_lattice(m),
                    residue: Residue::Quadratic(r),
                })
                .collect()),
            (Backend::Monoid(m), IdealRepr::Divisor(d)) => Ok(d
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(k, _)| MaxIdeal {
                    ideal: self.wrap_divisor(m.prime(k)),
                    residue: Residue::Prime {
                        label: m.labels()[k].clone(),
                    },
                })
                .collect()),
            _ => Err(Error::MixedDomains),
        }
    }

    /// Maximal star-ideals containing an integral ideal; empty for `D` itself.
    pub(crate) fn max_star_ideals_over(&self, i: &Ideal, star: StarOp) -> Result<Vec<MaxIdeal>> {
        self.check_ideal(i)?;
        if !i.is_integral() {
            return Err(Error::NotProper(self.format_ideal(i)));
        }
        if i.is_unit_ideal() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for m in self.ring_maximals(i)? {
            // in dimension one the maximal star-ideals are the star-closed maximal ideals
            if star::closure(self, &m.ideal, star)? == m.ideal {
                out.push(m);
            }
        }
        out.sort();
        Ok(out)
    }

    /// The complete, sorted list of maximal star-ideals containing a proper integral ideal.
    pub fn maximal_ideals_containing(&self, i: &Ideal, star: StarOp) -> Result<Vec<MaxIdeal>> {
        if !i.is_proper() {
            return Err(Error::NotProper(self.format_ideal(i)));
        }
        self.max_star_ideals_over(i, star)
    }

    /// `I·D_M ∩ D` for an integral ideal `I`.
    pub fn local_contract(&self, i: &Ideal, m: &MaxIdeal) -> Result<Ideal> {
        self.check_ideal(i)?;
        self.check_ideal(&m.ideal)?;
        if !i.is_integral() {
            return Err(Error::NotProper(self.format_ideal(i)));
        }
        match (&self.backend, &i.repr, &m.ideal.repr) {
            (Backend::Quadratic(q), IdealRepr::Lattice(l), IdealRepr::Lattice(ml)) => {
                Ok(self.wrap_lattice(q.local_contract(l, ml)?))
            }
            (Backend::Monoid(mm), IdealRepr::Divisor(d), IdealRepr::Divisor(md)) => {
                let k = md
                    .0
                    .iter()
                    .position(|&e| e == 1)
                    .ok_or_else(|| Error::InvalidCertificate("not a prime divisor".into()))?;
                let mut out = Divisor::zero(mm.rank());
                out.0[k] = d.0[k].max(0);
                Ok(self.wrap_divisor(out))
            }
            _ => Err(Error::MixedDomains),
        }
    }

    /// A generator when `I` is principal.
    pub fn is_principal(&self, i: &Ideal) -> Result<Option<Element>> {
        self.check_ideal(i)?;
        match (&self.backend, &i.repr) {
            (Backend::Quadratic(q), IdealRepr::Lattice(l)) => Ok(q.principal_generator(l)?.map(|(v, den)| {
                let (u, w) = q.tau_to_sqrt(&v, &den);
                Element::Quadratic { u, v: w }
            })),
            (Backend::Monoid(m), IdealRepr::Divisor(d)) => {
                Ok(m.is_principal(d).then(|| Element::Divisor(d.clone())))
            }
            _ => Err(Error::MixedDomains),
        }
    }

    /// All integral ideals `J` with `I ⊆ J ⊆ D`, largest norm first.
    pub fn enumerate_supideals(&self, i: &Ideal) -> Result<Vec<Ideal>> {
        self.check_ideal(i)?;
        if !i.is_proper() {
            return Err(Error::NotProper(self.format_ideal(i)));
        }
        let mut out: Vec<Ideal> = match (&self.backend, &i.repr) {
            (Backend::Quadratic(q), IdealRepr::Lattice(l)) => {
                let n = &l.a * &l.c;
                if n > BigInt::from(self.limits.supideal_cap) {
                    return Err(Error::BoundExceeded {
                        what: "quotient size |D/I|",
                        value: n.to_string(),
                        cap: self.limits.supideal_cap.to_string(),
                    });
                }
                q.supideals(l)?.into_iter().map(|s| self.wrap_lattice(s)).collect()
            }
            (Backend::Monoid(m), IdealRepr::Divisor(d)) => m
                .supideals(d, self.limits.supideal_cap)?
                .into_iter()
                .map(|s| self.wrap_divisor(s))
                .collect(),
            _ => return Err(Error::MixedDomains),
        };
        out.sort_by(|a, b| b.cmp(a));
        Ok(out)
    }

    /// Invariant factors of the star class group.
    pub fn class_group(&self, star: StarOp) -> Result<GroupDescriptor> {
        self.class_group_data(star).map(|(g, _)| g)
    }

    /// Non-principal star-invertible star-ideals, one per nontrivial class
    /// (quadratic) or one per prime of nonzero class (monoid).
    pub fn class_group_witnesses(&self, star: StarOp) -> Result<Vec<Ideal>> {
        self.class_group_data(star).map(|(_, w)| w)
    }

    fn class_group_data(&self, star: StarOp) -> Result<(GroupDescriptor, Vec<Ideal>)> {
        self.class_groups[star.index()]
            .get_or_init(|| self.compute_class_group(star))
            .clone()
    }

    fn compute_class_group(&self, star: StarOp) -> Result<(GroupDescriptor, Vec<Ideal>)> {
        match &self.backend {
            Backend::Monoid(m) => {
                let elems = m.generated_subgroup(self.limits.group_size_cap as usize)?;
                let order = elems.len() as u64;
                let group = group::invariant_factors(order, |k| {
                    elems.iter().filter(|x| m.times(x, k).iter().all(|&c| c == 0)).count() as u64
                });
                let witnesses = (0..m.rank())
                    .map(|k| m.prime(k))
                    .filter(|p| !m.is_principal(p))
                    .map(|p| self.wrap_divisor(p))
                    .collect();
                Ok((group, witnesses))
            }
            Backend::Quadratic(q) => {
                let absd = q.discriminant().abs();
                if absd > BigInt::from(self.limits.class_group_disc_cap) {
                    return Err(Error::BoundExceeded {
                        what: "discriminant",
                        value: absd.to_string(),
                        cap: self.limits.class_group_disc_cap.to_string(),
                    });
                }
                let bound = q.minkowski_bound().floor() as u64;
                let mut reps: Vec<Ideal> = vec![self.one()];
                for n in 2..=bound {
                    for l in q.ideals_of_norm(n) {
                        let j = self.wrap_lattice(l);
                        if star::closure(self, &j, star)? != j || !star::is_star_invertible(self, &j, star)? {
                            continue;
                        }
                        if self.class_index(&reps, &j, star)?.is_none() {
                            reps.push(j);
                        }
                    }
                }
                let h = reps.len();
                let mut table = vec![vec![0usize; h]; h];
                for a in 0..h {
                    for b in a..h {
                        let prod = star::star_product(self, &reps[a], &reps[b], star)?;
                        let c = self
                            .class_index(&reps, &prod, star)?
                            .expect("representatives cover every class");
                        table[a][b] = c;
                        table[b][a] = c;
                    }
                }
                let group = group::invariant_factors(h as u64, |k| {
                    (0..h)
                        .filter(|&x| {
                            let mut acc = 0usize;
                            for _ in 0..k {
                                acc = table[acc][x];
                            }
                            acc == 0
                        })
                        .count() as u64
                });
                reps.remove(0);
                Ok((group, reps))
            }
        }
    }

    fn class_index(&self, reps: &[Ideal], j: &Ideal, star: StarOp) -> Result<Option<usize>> {
        for (k, r) in reps.iter().enumerate() {
            let q = star::closure(self, &self.product(j, &self.inverse(r)?)?, star)?;
            if self.is_principal(&q)?.is_some() {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }

    /// Order of the class of a star-invertible ideal: least `n` with `(Iⁿ)*` principal, up to `limit`.
    pub fn principal_power(&self, i: &Ideal, star: StarOp, limit: u32) -> Result<Option<u32>> {
        if let (Backend::Monoid(m), IdealRepr::Divisor(d)) = (&self.backend, &i.repr) {
            let n = m.class_order(d);
            return Ok((n <= limit as u64).then_some(n as u32));
        }
        let mut acc = self.one();
        for n in 1..=limit {
            acc = star::closure(self, &self.product(&acc, i)?, star)?;
            if self.is_principal(&acc)?.is_some() {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }

    // ---- text forms ---------------------------------------------------------------

    pub fn format_element(&self, x: &Element) -> String {
        match (&self.backend, x) {
            (_, Element::Quadratic { u, v }) => literal::format_quadratic(u, v),
            (Backend::Monoid(m), Element::Divisor(d)) => literal::format_divisor(m, d),
            (Backend::Quadratic(_), Element::Divisor(d)) => format!("{:?}", d.0),
        }
    }

    /// Canonical text: `hnf(a,b,c)` with an optional `/den`, or a divisor map.
    pub fn format_ideal(&self, i: &Ideal) -> String {
        match (&self.backend, &i.repr) {
            (_, IdealRepr::Lattice(l)) => {
                if l.den.is_one() {
                    format!("hnf({},{},{})", l.a, l.b, l.c)
                } else {
                    format!("hnf({},{},{})/{}", l.a, l.b, l.c, l.den)
                }
            }
            (Backend::Monoid(m), IdealRepr::Divisor(d)) => literal::format_divisor(m, d),
            (Backend::Quadratic(_), IdealRepr::Divisor(d)) => format!("{:?}", d.0),
        }
    }

    /// Generators as an ideal literal that [`Domain::parse_ideal`] reads back.
    pub fn ideal_literal(&self, i: &Ideal) -> String {
        match &i.repr {
            IdealRepr::Divisor(_) => self.format_ideal(i),
            IdealRepr::Lattice(_) => {
                let gens = self.generators(i).expect("own ideal");
                let parts: Vec<String> = gens.iter().map(|g| self.format_element(g)).collect();
                format!("[{}]", parts.join(", "))
            }
        }
    }

    pub fn parse_element(&self, text: &str) -> Result<Element> {
        match &self.backend {
            Backend::Quadratic(_) => {
                let (u, v) = literal::parse_quadratic(text)?;
                Ok(Element::Quadratic { u, v })
            }
            Backend::Monoid(m) => {
                let d = literal::parse_divisor(m, text)?;
                let x = Element::Divisor(d);
                self.check_element(&x)?;
                Ok(x)
            }
        }
    }

    /// Ideal literal: a bracketed or comma-separated list of element literals.
    /// For the monoid model each entry is a divisor map and need not be principal.
    pub fn parse_ideal(&self, text: &str) -> Result<Ideal> {
        let items = literal::split_list(text)?;
        if items.is_empty() {
            return Err(Error::Parse("empty ideal literal".into()));
        }
        match &self.backend {
            Backend::Quadratic(_) => {
                let gens = items
                    .iter()
                    .map(|s| self.parse_element(s))
                    .collect::<Result<Vec<_>>>()?;
                self.ideal_from_generators(&gens)
            }
            Backend::Monoid(m) => {
                let mut acc: Option<Divisor> = None;
                for s in &items {
                    let d = literal::parse_divisor(m, s)?;
                    acc = Some(match acc {
                        None => d,
                        Some(a) => a.meet(&d),
                    });
                }
                Ok(self.wrap_divisor(acc.expect("nonempty")))
            }
        }
    }

    /// Rational value of a quadratic element's norm; the monoid has none.
    pub fn element_norm(&self, x: &Element) -> Option<BigRational> {
        match (&self.backend, x) {
            (Backend::Quadratic(q), Element::Quadratic { u, v }) => {
                let d = BigRational::from_integer(BigInt::from(q.d()));
                Some(u * u - v * v * d)
            }
            _ => None,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zm5() -> Domain {
        Domain::quadratic(-5, 1).unwrap()
    }

    #[test]
    fn make_domain_errors() {
        assert_eq!(Domain::quadratic(12, 1).unwrap_err(), Error::NonSquarefree(12));
        assert_eq!(Domain::quadratic(1, 1).unwrap_err(), Error::NonSquarefree(1));
        assert_eq!(Domain::quadratic(-5, 0).unwrap_err(), Error::BadConductor(0));
        assert!(matches!(
            Domain::krull_monoid(&[2], &[("p", &[3])]).unwrap_err(),
            Error::BadClassVector(_)
        ));
    }

    #[test]
    fn spec_json_round_trip() {
        let d = Domain::from_json(r#"{"backend":"quadratic_order","d":-5,"f":1}"#).unwrap();
        assert!(d.is_quadratic());
        let m = Domain::from_json(
            r#"{"backend":"krull_monoid","class_group":[1],"primes":[{"label":"p","cls":0},{"label":"q","cls":[0]}]}"#,
        )
        .unwrap();
        assert!(!m.is_quadratic());
        let text = serde_json::to_string(m.spec()).unwrap();
        assert_eq!(DomainSpec::from_json(&text).unwrap(), *m.spec());
    }

    #[test]
    fn generators_of_p() {
        let d = zm5();
        let p = d
            .ideal_from_generators(&[Element::integer(2), Element::quadratic(1, 1)])
            .unwrap();
        assert_eq!(d.format_ideal(&p), "hnf(2,1,1)");
        let unit = d.ideal_from_generators(&[Element::integer(1)]).unwrap();
        assert_eq!(unit, d.one());
        let two = d
            .ideal_from_generators(&[Element::integer(4), Element::quadratic(2, 2), Element::quadratic(-4, 2)])
            .unwrap();
        assert_eq!(d.format_ideal(&two), "hnf(2,0,2)");
        assert_eq!(
            d.ideal_from_generators(&[Element::integer(0)]).unwrap_err(),
            Error::ZeroIdeal
        );
    }

    #[test]
    fn mixed_domains_rejected() {
        let d = zm5();
        let g = Domain::quadratic(-1, 1).unwrap();
        assert_eq!(d.product(&d.one(), &g.one()).unwrap_err(), Error::MixedDomains);
    }

    #[test]
    fn inverse_of_p() {
        let d = zm5();
        let p = d.lattice_ideal(1, 2, 1, 1).unwrap();
        let inv = d.inverse(&p).unwrap();
        assert_eq!(d.format_ideal(&inv), "hnf(2,1,1)/2");
        assert_eq!(d.product(&p, &inv).unwrap(), d.one());
    }

    #[test]
    fn monoid_arithmetic() {
        let m = Domain::krull_monoid(&[1], &[("p", &[0]), ("q", &[0])]).unwrap();
        let a = m.divisor_ideal(&[("p", 1)]).unwrap();
        let b = m.divisor_ideal(&[("p", 1), ("q", 2)]).unwrap();
        assert_eq!(m.product(&a, &b).unwrap(), m.divisor_ideal(&[("p", 2), ("q", 2)]).unwrap());
        assert_eq!(m.sum(&a, &b).unwrap(), a);
        assert_eq!(m.intersect(&a, &b).unwrap(), b);
        assert_eq!(m.colon(&b, &a).unwrap(), m.divisor_ideal(&[("q", 2)]).unwrap());
    }

    #[test]
    fn class_groups() {
        assert_eq!(zm5().class_group(StarOp::D).unwrap().invariant_factors, vec![2]);
        assert!(Domain::quadratic(-1, 1).unwrap().class_group(StarOp::D).unwrap().is_trivial());
        assert_eq!(
            Domain::quadratic(-14, 1).unwrap().class_group(StarOp::D).unwrap().invariant_factors,
            vec![4]
        );
        assert_eq!(
            Domain::quadratic(-21, 1).unwrap().class_group(StarOp::D).unwrap().invariant_factors,
            vec![2, 2]
        );
        assert_eq!(
            Domain::quadratic(10, 1).unwrap().class_group(StarOp::D).unwrap().invariant_factors,
            vec![2]
        );
        let m = Domain::krull_monoid(&[2, 4], &[("p", &[1, 0]), ("q", &[0, 2])]).unwrap();
        assert_eq!(m.class_group(StarOp::T).unwrap().invariant_factors, vec![2, 2]);
    }
}
