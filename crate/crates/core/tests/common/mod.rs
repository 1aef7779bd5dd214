//! Brute-force lattice oracle for ideals of Z[√d], d ≡ 2, 3 mod 4.
//!
//! An integral ideal with index N contains N·Z², so it is determined by its
//! image in (Z/N)², computed here by closing the generators under addition.
//! Nothing below shares code with the library's Hermite-normal-form routines.

#![allow(dead_code)]

use std::collections::BTreeSet;

use homog_core::{Domain, Element, Ideal};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

pub type V = (i64, i64);

pub fn mul(d: i64, x: V, y: V) -> V {
    (x.0 * y.0 + d * x.1 * y.1, x.0 * y.1 + x.1 * y.0)
}

/// Z-generators of the ideal generated by `gens`.
pub fn ring_span(d: i64, gens: &[V]) -> Vec<V> {
    gens.iter().flat_map(|&g| [g, mul(d, g, (0, 1))]).collect()
}

/// Index of the Z-span of `vs` in Z², 0 when the span has rank below 2.
pub fn index(vs: &[V]) -> i64 {
    let mut g = 0i64;
    for (k, a) in vs.iter().enumerate() {
        for b in &vs[k + 1..] {
            g = g.gcd(&(a.0 * b.1 - a.1 * b.0));
        }
    }
    g.abs()
}

/// Image of the Z-span of `vs` in (Z/m)².
pub fn residues(vs: &[V], m: i64) -> BTreeSet<V> {
    let gens: Vec<V> = vs.iter().map(|v| (v.0.rem_euclid(m), v.1.rem_euclid(m))).collect();
    let mut seen = BTreeSet::from([(0, 0)]);
    let mut stack = vec![(0, 0)];
    while let Some(p) = stack.pop() {
        for g in &gens {
            let q = ((p.0 + g.0) % m, (p.1 + g.1) % m);
            if seen.insert(q) {
                stack.push(q);
            }
        }
    }
    seen
}

pub fn product(d: i64, i: &[V], j: &[V]) -> Vec<V> {
    i.iter().flat_map(|&a| j.iter().map(move |&b| mul(d, a, b))).collect()
}

/// `{x ∈ Z² : x·J ⊆ I}` modulo the index of `I`.
pub fn integral_colon(d: i64, i: &[V], j: &[V]) -> BTreeSet<V> {
    let n = index(i);
    let set_i = residues(i, n);
    let mut out = BTreeSet::new();
    for x in 0..n {
        for y in 0..n {
            let ok = j.iter().all(|&g| {
                let p = mul(d, (x, y), g);
                set_i.contains(&(p.0.rem_euclid(n), p.1.rem_euclid(n)))
            });
            if ok {
                out.insert((x, y));
            }
        }
    }
    out
}

pub fn to_element(v: V) -> Element {
    Element::quadratic(v.0, v.1)
}

/// Integer coordinates of the library's Z-basis of an integral ideal.
pub fn lib_basis(dom: &Domain, i: &Ideal) -> Vec<V> {
    dom.generators(i)
        .unwrap()
        .into_iter()
        .map(|e| match e {
            Element::Quadratic { u, v } => {
                assert!(u.is_integer() && v.is_integer(), "non-integral basis vector");
                (u.to_integer().to_i64().unwrap(), v.to_integer().to_i64().unwrap())
            }
            Element::Divisor(_) => panic!("quadratic domain expected"),
        })
        .collect()
}

/// Two random generators with a nonzero ideal of index at most `cap`.
pub fn random_gens(rng: &mut impl Rng, d: i64, range: i64, cap: i64) -> Vec<V> {
    loop {
        let g: Vec<V> = (0..2)
            .map(|_| (rng.gen_range(-range..=range), rng.gen_range(-range..=range)))
            .collect();
        let n = index(&ring_span(d, &g));
        if n > 0 && n <= cap {
            return g;
        }
    }
}

/// Whether the library ideal equals the lattice with oracle index `n` and image `set` mod `m`.
pub fn agrees(dom: &Domain, lib: &Ideal, n: i64, set: &BTreeSet<V>, m: i64) -> bool {
    let basis = lib_basis(dom, lib);
    index(&basis) == n && residues(&basis, m) == *set
}

/// One random instance: product, sum and integral colon of two ideals.
pub fn check_instance(rng: &mut impl Rng, d: i64) -> Result<(), String> {
    let dom = Domain::quadratic(d, 1).unwrap();
    let gi = random_gens(rng, d, 4, 40);
    let gj = random_gens(rng, d, 4, 40);
    let (si, sj) = (ring_span(d, &gi), ring_span(d, &gj));
    let lift = |g: &[V]| dom.ideal_from_generators(&g.iter().map(|&v| to_element(v)).collect::<Vec<_>>()).unwrap();
    let (i, j) = (lift(&gi), lift(&gj));
    let what = format!("d={d} I={gi:?} J={gj:?}");
    let (ni, nj) = (index(&si), index(&sj));
    if !agrees(&dom, &i, ni, &residues(&si, ni), ni) || !agrees(&dom, &j, nj, &residues(&sj, nj), nj) {
        return Err(format!("ideal construction differs: {what}"));
    }
    let p = product(d, &si, &sj);
    let np = index(&p);
    if !agrees(&dom, &dom.product(&i, &j).unwrap(), np, &residues(&p, np), np) {
        return Err(format!("product differs: {what}"));
    }
    let s: Vec<V> = si.iter().chain(&sj).copied().collect();
    let ns = index(&s);
    if !agrees(&dom, &dom.sum(&i, &j).unwrap(), ns, &residues(&s, ns), ns) {
        return Err(format!("sum differs: {what}"));
    }
    let colon = dom.intersect(&dom.colon(&i, &j).unwrap(), &dom.one()).unwrap();
    let oracle = integral_colon(d, &si, &gj);
    let nc = (ni * ni) / oracle.len() as i64;
    if !agrees(&dom, &colon, nc, &oracle, ni) {
        return Err(format!("colon differs: {what}"));
    }
    Ok(())
}

pub const ORACLE_DISCRIMINANTS: [i64; 8] = [-5, -1, -2, -6, -10, 2, 3, 7];
