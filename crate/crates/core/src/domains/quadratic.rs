//! Quadratic orders `Z[f·ω_K]` with fractional ideals stored as Hermite normal forms.
//!
//! Elements of the order are written `x + y·τ` with `τ = f·ω_K`, where
//! `τ² = T·τ − N`. An integral ideal is the lattice `Z·a + Z·(b + c·τ)` with
//! `c | a`, `c | b` and `0 ≤ b < a`; a fractional ideal adds a positive
//! denominator that is as small as possible.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, big, crt, exact_sqrt, ext_gcd, gcd, lcm, modp};
use crate::error::{Error, Result};

/// Integral vector `x + y·τ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Vec2 {
    pub x: BigInt,
    pub y: BigInt,
}

impl Vec2 {
    pub fn new(x: BigInt, y: BigInt) -> Self {
        Vec2 { x, y }
    }

    fn scale(&self, m: &BigInt) -> Vec2 {
        Vec2::new(&self.x * m, &self.y * m)
    }

    fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

/// Canonical fractional ideal `(1/den)·(Z·a + Z·(b + c·τ))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Lattice {
    pub den: BigInt,
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl Lattice {
    pub fn unit() -> Self {
        Lattice {
            den: BigInt::one(),
            a: BigInt::one(),
            b: BigInt::zero(),
            c: BigInt::one(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_unit_ideal(&self) -> bool {
        *self == Lattice::unit()
    }

    /// Index-style norm `a·c / den²`.
    pub fn norm(&self) -> BigRational {
        BigRational::new(&self.a * &self.c, &self.den * &self.den)
    }

    fn basis(&self) -> [Vec2; 2] {
        [
            Vec2::new(self.a.clone(), BigInt::zero()),
            Vec2::new(self.b.clone(), self.c.clone()),
        ]
    }

    /// Whether the integral vector `(x + yτ)/m` lies in the ideal.
    fn contains_vec(&self, v: &Vec2, m: &BigInt) -> bool {
        let nx = &v.x * &self.den;
        let ny = &v.y * &self.den;
        if !nx.is_multiple_of(m) || !ny.is_multiple_of(m) {
            return false;
        }
        let (x, y) = (nx / m, ny / m);
        if !y.is_multiple_of(&self.c) {
            return false;
        }
        let t = &y / &self.c;
        (x - t * &self.b).is_multiple_of(&self.a)
    }
}

/// Residue data for a maximal ideal of a quadratic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadResidue {
    /// Rational prime below the ideal.
    pub p: u64,
    /// Residue degree (1 or 2).
    pub degree: u32,
    /// For degree 1, the image of `τ` in `Z/p`.
    pub root: Option<u64>,
}

#[derive(Debug)]
pub struct QuadraticOrder {
    d: i64,
    f: u64,
    // tau = tau_p + tau_q * sqrt(d)
    tau_p: BigRational,
    tau_q: BigRational,
    trace: BigInt,
    norm: BigInt,
    disc: BigInt,
    unit: OnceLock<Result<FundamentalUnit>>,
}

#[derive(Debug, Clone)]
struct FundamentalUnit {
    /// Real embedding of the unit, greater than one.
    log_size: f64,
}

/// Upper limit on the Pell search for a real order's fundamental unit.
const UNIT_SEARCH_CAP: i128 = 5_000_000;

impl QuadraticOrder {
    pub fn new(d: i64, f: i64) -> Result<Self> {
        if d == 1 || !arith::is_squarefree(d) {
            return Err(Error::NonSquarefree(d));
        }
        if f < 1 {
            return Err(Error::BadConductor(f));
        }
        let fb = big(f);
        let one_mod_four = d.rem_euclid(4) == 1;
        let (tau_p, tau_q, trace, norm) = if one_mod_four {
            let half = BigRational::new(fb.clone(), big(2));
            let nrm = &fb * &fb * big((1 - d) / 4);
            (half.clone(), half, fb.clone(), nrm)
        } else {
            (
                BigRational::zero(),
                BigRational::from_integer(fb.clone()),
                BigInt::zero(),
                -(&fb * &fb * big(d)),
            )
        };
        let disc = &trace * &trace - big(4) * &norm;
        Ok(QuadraticOrder {
            d,
            f: f as u64,
            tau_p,
            tau_q,
            trace,
            norm,
            disc,
            unit: OnceLock::new(),
        })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn conductor(&self) -> u64 {
        self.f
    }

    /// Discriminant of the order, `T² − 4N = f²·disc(K)`.
    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    pub fn is_imaginary(&self) -> bool {
        self.d < 0
    }

    pub fn is_maximal_order(&self) -> bool {
        self.f == 1
    }

    // ---- element level -------------------------------------------------

    pub(crate) fn mul_vec(&self, p: &Vec2, q: &Vec2) -> Vec2 {
        let yy = &p.y * &q.y;
        Vec2::new(
            &p.x * &q.x - &self.norm * &yy,
            &p.x * &q.y + &q.x * &p.y + &self.trace * yy,
        )
    }

    pub(crate) fn conj_vec(&self, p: &Vec2) -> Vec2 {
        Vec2::new(&p.x + &self.trace * &p.y, -p.y.clone())
    }

    pub(crate) fn norm_vec(&self, p: &Vec2) -> BigInt {
        &p.x * &p.x + &self.trace * &p.x * &p.y + &self.norm * &p.y * &p.y
    }

    /// `u + v√d` to `(x + yτ)/m` with integral `x, y` and `m > 0`.
    pub(crate) fn to_tau(&self, u: &BigRational, v: &BigRational) -> (Vec2, BigInt) {
        let y = v / &self.tau_q;
        let x = u - &y * &self.tau_p;
        let m = lcm(x.denom(), y.denom());
        let xi = x.numer() * (&m / x.denom());
        let yi = y.numer() * (&m / y.denom());
        (Vec2::new(xi, yi), m)
    }

    /// `(x + yτ)/m` back to `u + v√d`.
    pub(crate) fn tau_to_sqrt(&self, v: &Vec2, m: &BigInt) -> (BigRational, BigRational) {
        let x = BigRational::new(v.x.clone(), m.clone());
        let y = BigRational::new(v.y.clone(), m.clone());
        (&x + &y * &self.tau_p, &y * &self.tau_q)
    }

    // ---- canonical forms ------------------------------------------------

    /// HNF of the Z-span of `vs`, divided by `den`, in lowest terms.
    pub(crate) fn lattice_from_vectors(&self, vs: &[Vec2], den: &BigInt) -> Result<Lattice> {
        let mut a = BigInt::zero();
        let mut b = BigInt::zero();
        let mut c = BigInt::zero();
        for v in vs {
            if v.y.is_zero() {
                a = gcd(&a, &v.x);
                continue;
            }
            if c.is_zero() {
                b = v.x.clone();
                c = v.y.clone();
                continue;
            }
            let (g, s, t) = ext_gcd(&c, &v.y);
            let z = (&v.y / &g) * &b - (&c / &g) * &v.x;
            b = &s * &b + &t * &v.x;
            c = g;
            a = gcd(&a, &z);
        }
        if a.is_zero() || c.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        if c.is_negative() {
            c = -c;
            b = -b;
        }
        b = modp(&b, &a);
        let g = gcd(&gcd(&gcd(&a, &b), &c), den);
        let lat = Lattice {
            den: den.abs() / &g,
            a: a / &g,
            b: b / &g,
            c: c / &g,
        };
        debug_assert!(self.is_ideal_lattice(&lat));
        Ok(lat)
    }

    /// O-module generated by the integral vectors `vs`, over `den`.
    pub(crate) fn ideal_from_vectors(&self, vs: &[Vec2], den: &BigInt) -> Result<Lattice> {
        let tau = Vec2::new(BigInt::zero(), BigInt::one());
        let mut span = Vec::with_capacity(vs.len() * 2);
        for v in vs.iter().filter(|v| !v.is_zero()) {
            span.push(v.clone());
            span.push(self.mul_vec(v, &tau));
        }
        self.lattice_from_vectors(&span, den)
    }

    /// Multiplication by `τ` preserves the lattice.
    pub(crate) fn is_ideal_lattice(&self, l: &Lattice) -> bool {
        if !l.a.is_multiple_of(&l.c) || !l.b.is_multiple_of(&l.c) {
            return false;
        }
        let ap = &l.a / &l.c;
        let bp = &l.b / &l.c;
        (&bp * &bp + &self.trace * &bp + &self.norm).is_multiple_of(&ap)
    }

    // ---- ideal arithmetic -----------------------------------------------

    pub fn product(&self, i: &Lattice, j: &Lattice) -> Lattice {
        let bi = i.basis();
        let bj = j.basis();
        let vs: Vec<Vec2> = bi
            .iter()
            .flat_map(|p| bj.iter().map(move |q| (p, q)))
            .map(|(p, q)| self.mul_vec(p, q))
            .collect();
        self.lattice_from_vectors(&vs, &(&i.den * &j.den))
            .expect("product of nonzero ideals is nonzero")
    }

    pub fn sum(&self, i: &Lattice, j: &Lattice) -> Lattice {
        let k = lcm(&i.den, &j.den);
        let si = &k / &i.den;
        let sj = &k / &j.den;
        let mut vs: Vec<Vec2> = i.basis().iter().map(|v| v.scale(&si)).collect();
        vs.extend(j.basis().iter().map(|v| v.scale(&sj)));
        self.lattice_from_vectors(&vs, &k)
            .expect("sum of nonzero ideals is nonzero")
    }

    pub fn intersect(&self, i: &Lattice, j: &Lattice) -> Lattice {
        let k = lcm(&i.den, &j.den);
        let si = &k / &i.den;
        let sj = &k / &j.den;
        let (a1, b1, c1) = (&i.a * &si, &i.b * &si, &i.c * &si);
        let (a2, b2, c2) = (&j.a * &sj, &j.b * &sj, &j.c * &sj);
        // (x, y) lies in Z·a + Z·(b + cτ) iff c | y and x ≡ (y/c)·b (mod a).
        let cc = lcm(&c1, &c2);
        let beta1 = (&cc / &c1) * &b1;
        let beta2 = (&cc / &c2) * &b2;
        let g = gcd(&a1, &a2);
        let u0 = &g / gcd(&g, &(&beta1 - &beta2));
        let (x0, aa) = crt(
            &modp(&(&u0 * &beta1), &a1),
            &a1,
            &modp(&(&u0 * &beta2), &a2),
            &a2,
        )
        .expect("congruences are compatible by choice of u0");
        let vs = [
            Vec2::new(aa, BigInt::zero()),
            Vec2::new(x0, cc * u0),
        ];
        self.lattice_from_vectors(&vs, &k)
            .expect("intersection of nonzero ideals is nonzero")
    }

    /// `(x + yτ)/m · I`.
    pub(crate) fn scale(&self, i: &Lattice, v: &Vec2, m: &BigInt) -> Result<Lattice> {
        if v.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let vs: Vec<Vec2> = i.basis().iter().map(|b| self.mul_vec(b, v)).collect();
        self.lattice_from_vectors(&vs, &(&i.den * m))
    }

    /// `(I : J) = ∩ g⁻¹·I` over the two HNF generators `g` of `J`.
    pub fn colon(&self, i: &Lattice, j: &Lattice) -> Lattice {
        let mut acc: Option<Lattice> = None;
        for g in j.basis().iter().filter(|g| !g.is_zero()) {
            // g/den_J inverted: den_J · conj(g) / N(g)
            let n = self.norm_vec(g);
            let mut w = self.conj_vec(g).scale(&j.den);
            if n.is_negative() {
                w = w.scale(&big(-1));
            }
            let part = self
                .scale(i, &w, &n.abs())
                .expect("nonzero generator has nonzero inverse");
            acc = Some(match acc {
                None => part,
                Some(prev) => self.intersect(&prev, &part),
            });
        }
        acc.expect("ideal has a nonzero generator")
    }

    pub fn contains(&self, big_ideal: &Lattice, small: &Lattice) -> bool {
        small
            .basis()
            .iter()
            .all(|v| big_ideal.contains_vec(v, &small.den))
    }

    pub(crate) fn contains_element(&self, i: &Lattice, v: &Vec2, m: &BigInt) -> bool {
        i.contains_vec(v, m)
    }

    /// Generators `a/den` and `(b + cτ)/den` as integral vectors over `den`.
    pub(crate) fn generators(&self, i: &Lattice) -> ([Vec2; 2], BigInt) {
        (i.basis(), i.den.clone())
    }

    // ---- enumeration ----------------------------------------------------

    /// All integral ideals `J` with `I ⊆ J ⊆ O`, for integral `I`.
    pub(crate) fn supideals(&self, i: &Lattice) -> Result<Vec<Lattice>> {
        debug_assert!(i.is_integral());
        let mut out = Vec::new();
        let cs = arith::divisors(&i.c)?;
        let as_ = arith::divisors(&i.a)?;
        for c2 in &cs {
            for a2 in &as_ {
                if !a2.is_multiple_of(c2) {
                    continue;
                }
                let ap = a2 / c2;
                // b2 = c2·t; containment of b + cτ needs c·t ≡ b (mod a2).
                let g = gcd(&i.c, a2);
                if !i.b.is_multiple_of(&g) {
                    continue;
                }
                let step = a2 / &g;
                let t0 = if step.is_one() {
                    BigInt::zero()
                } else {
                    let (_, inv, _) = ext_gcd(&(&i.c / &g), &step);
                    modp(&(&i.b / &g * inv), &step)
                };
                let mut t = t0;
                while t < ap {
                    if (&t * &t + &self.trace * &t + &self.norm).is_multiple_of(&ap) {
                        out.push(Lattice {
                            den: BigInt::one(),
                            a: a2.clone(),
                            b: c2 * &t,
                            c: c2.clone(),
                        });
                    }
                    t += &step;
                }
            }
        }
        Ok(out)
    }

    /// All integral ideals of index exactly `n`.
    pub(crate) fn ideals_of_norm(&self, n: u64) -> Vec<Lattice> {
        let mut out = Vec::new();
        let mut c = 1u64;
        while c * c <= n {
            if n.is_multiple_of(c * c) {
                let ap = n / (c * c);
                let apb = BigInt::from(ap);
                for t in 0..ap {
                    let tb = BigInt::from(t);
                    if (&tb * &tb + &self.trace * &tb + &self.norm).is_multiple_of(&apb) {
                        out.push(Lattice {
                            den: BigInt::one(),
                            a: BigInt::from(c * ap),
                            b: BigInt::from(c * t),
                            c: BigInt::from(c),
                        });
                    }
                }
            }
            c += 1;
        }
        out
    }

    /// Maximal ideals of the order lying over the rational prime `p`.
    pub(crate) fn maximal_over_prime(&self, p: u64) -> Vec<(Lattice, QuadResidue)> {
        let degree_one: Vec<_> = self
            .ideals_of_norm(p)
            .into_iter()
            .map(|l| {
                let root = modp(&(-l.b.clone()), &BigInt::from(p)).to_u64();
                (
                    l,
                    QuadResidue {
                        p,
                        degree: 1,
                        root,
                    },
                )
            })
            .collect();
        if !degree_one.is_empty() {
            return degree_one;
        }
        let pb = BigInt::from(p);
        vec![(
            Lattice {
                den: BigInt::one(),
                a: pb.clone(),
                b: BigInt::zero(),
                c: pb,
            },
            QuadResidue {
                p,
                degree: 2,
                root: None,
            },
        )]
    }

    /// Every maximal ideal containing the integral ideal `i`.
    pub(crate) fn maximal_containing(&self, i: &Lattice) -> Result<Vec<(Lattice, QuadResidue)>> {
        let mut out = Vec::new();
        for p in arith::prime_divisors(&i.a)? {
            for (m, r) in self.maximal_over_prime(p) {
                if self.contains(&m, i) {
                    out.push((m, r));
                }
            }
        }
        Ok(out)
    }

    /// `I·D_M ∩ D` computed as the saturation `(I : s^∞)` for an `s` lying in
    /// every other maximal ideal over `I` but outside `M`.
    pub(crate) fn local_contract(&self, i: &Lattice, m: &Lattice) -> Result<Lattice> {
        if !self.contains(m, i) {
            return Ok(Lattice::unit());
        }
        let others: Vec<Lattice> = self
            .maximal_containing(i)?
            .into_iter()
            .map(|(l, _)| l)
            .filter(|l| l != m)
            .collect();
        if others.is_empty() {
            return Ok(i.clone());
        }
        let prod = others
            .iter()
            .skip(1)
            .fold(others[0].clone(), |acc, l| self.product(&acc, l));
        let s = prod
            .basis()
            .into_iter()
            .find(|v| !m.contains_vec(v, &BigInt::one()))
            .expect("comaximal product has a generator outside M");
        let s_conj = self.conj_vec(&s);
        let ns = self.norm_vec(&s);
        let (w, n) = if ns.is_negative() {
            (s_conj.scale(&big(-1)), -ns)
        } else {
            (s_conj, ns)
        };
        let unit = Lattice::unit();
        let mut cur = i.clone();
        loop {
            let next = self.intersect(&self.scale(&cur, &w, &n)?, &unit);
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
    }

    // ---- principality -----------------------------------------------------

    /// A generator of `I` when principal, as an integral vector over `den`.
    pub(crate) fn principal_generator(&self, i: &Lattice) -> Result<Option<(Vec2, BigInt)>> {
        let n = &i.a * &i.c;
        let found = if self.is_imaginary() {
            self.search_imaginary(i, &n)
        } else {
            self.search_real(i, &n)?
        };
        Ok(found.map(|v| (v, i.den.clone())))
    }

    fn check_candidate(&self, i: &Lattice, t: &BigInt, sq: &BigInt) -> Option<Vec2> {
        let y = t * &i.c;
        for s in [sq.clone(), -sq.clone()] {
            let x2 = &s - &self.trace * &y;
            if !x2.is_even() {
                continue;
            }
            let x = x2 / 2;
            let v = Vec2::new(x, y.clone());
            if i.contains_vec(&v, &i.den) {
                return Some(v);
            }
        }
        None
    }

    fn search_imaginary(&self, i: &Lattice, n: &BigInt) -> Option<Vec2> {
        // 4·N(x + yτ) = (2x + Ty)² + |Δ|·y², so |Δ|·y² ≤ 4n.
        let absd = self.disc.abs();
        let four_n = n * 4;
        let mut t = BigInt::zero();
        loop {
            let mut any = false;
            for tt in [t.clone(), -t.clone()] {
                if t.is_zero() && tt.is_negative() {
                    continue;
                }
                let y = &tt * &i.c;
                let rem: BigInt = &four_n - &absd * &y * &y;
                if rem.is_negative() {
                    continue;
                }
                any = true;
                if let Some(sq) = exact_sqrt(&rem) {
                    if let Some(v) = self.check_candidate(i, &tt, &sq) {
                        return Some(v);
                    }
                }
            }
            if !any {
                return None;
            }
            t += 1;
        }
    }

    fn fundamental_unit(&self) -> Result<FundamentalUnit> {
        self.unit
            .get_or_init(|| {
                let disc = self.disc.to_i128().ok_or(Error::BoundExceeded {
                    what: "discriminant",
                    value: self.disc.to_string(),
                    cap: i128::MAX.to_string(),
                })?;
                for y in 1..=UNIT_SEARCH_CAP {
                    for sign in [-4i128, 4] {
                        let Some(val) = disc.checked_mul(y * y).and_then(|v| v.checked_add(sign)) else {
                            return Err(Error::BoundExceeded {
                                what: "unit search",
                                value: y.to_string(),
                                cap: UNIT_SEARCH_CAP.to_string(),
                            });
                        };
                        if val < 0 {
                            continue;
                        }
                        let s = isqrt_i128(val);
                        if s * s == val {
                            let eps = (s as f64 + (y as f64) * (disc as f64).sqrt()) / 2.0;
                            return Ok(FundamentalUnit { log_size: eps.ln() });
                        }
                    }
                }
                Err(Error::BoundExceeded {
                    what: "fundamental unit search",
                    value: format!("d = {}", self.d),
                    cap: UNIT_SEARCH_CAP.to_string(),
                })
            })
            .clone()
    }

    fn search_real(&self, i: &Lattice, n: &BigInt) -> Result<Option<Vec2>> {
        // Every generator has a unit multiple with |σ1| in [√n, √n·ε); then
        // |y| = |σ1 − σ2|/√Δ ≤ √n·(ε + 1)/√Δ.
        let unit = self.fundamental_unit()?;
        let nf = n.to_f64().unwrap_or(f64::INFINITY);
        let df = self.disc.to_f64().unwrap_or(f64::INFINITY);
        let cf = i.c.to_f64().unwrap_or(f64::INFINITY);
        let bound = nf.sqrt() * (unit.log_size.exp() + 1.0) / df.sqrt() / cf + 2.0;
        if !bound.is_finite() || bound > 1e7 {
            return Err(Error::BoundExceeded {
                what: "principal-generator search range",
                value: format!("{bound:.0}"),
                cap: "10000000".into(),
            });
        }
        let tmax = bound.ceil() as i64;
        for t in 0..=tmax {
            for tt in [t, -t] {
                if t == 0 && tt < 0 {
                    continue;
                }
                let tb = big(tt);
                let y = &tb * &i.c;
                let dy2 = &self.disc * &y * &y;
                for s in [big(4) * n, big(-4) * n] {
                    if let Some(sq) = exact_sqrt(&(&dy2 + s)) {
                        if let Some(v) = self.check_candidate(i, &tb, &sq) {
                            return Ok(Some(v));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    /// Minkowski-type bound below which every ideal class has an integral representative.
    pub(crate) fn minkowski_bound(&self) -> f64 {
        let absd = self.disc.abs().to_f64().unwrap_or(f64::INFINITY);
        if self.is_imaginary() {
            2.0 / std::f64::consts::PI * absd.sqrt()
        } else {
            absd.sqrt() / 2.0
        }
    }

    pub(crate) fn is_unit_vec(&self, v: &Vec2, m: &BigInt) -> bool {
        m.is_one() && self.norm_vec(v).abs().is_one()
    }
}

fn isqrt_i128(n: i128) -> i128 {
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}
