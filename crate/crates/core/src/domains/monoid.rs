//! Divisor-theory model of a Krull domain: a free abelian monoid on labelled
//! primes with a class map into a finite abelian group. Ideals are divisors
//! (t-ideals of the modelled domain); elements are the principal divisors,
//! i.e. those of class zero.

use std::collections::{BTreeSet, HashMap};
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector indexed by the model's (label-sorted) primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Divisor(pub Vec<i64>);

impl Divisor {
    pub fn zero(n: usize) -> Self {
        Divisor(vec![0; n])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    fn zip(&self, other: &Divisor, f: impl Fn(i64, i64) -> i64) -> Divisor {
        Divisor(self.0.iter().zip(&other.0).map(|(&a, &b)| f(a, b)).collect())
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        self.zip(other, |a, b| a - b)
    }

    pub fn meet(&self, other: &Divisor) -> Divisor {
        self.zip(other, i64::min)
    }

    pub fn join(&self, other: &Divisor) -> Divisor {
        self.zip(other, i64::max)
    }

    pub fn scale(&self, k: i64) -> Divisor {
        Divisor(self.0.iter().map(|&e| e * k).collect())
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Divisor) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

#[derive(Debug)]
pub struct KrullMonoid {
    factors: Vec<u64>,
    labels: Vec<String>,
    classes: Vec<Vec<u64>>,
    fingerprint: u64,
}

impl KrullMonoid {
    pub fn new(factors: &[u64], primes: &[(String, Vec<u64>)]) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::BadClassVector(
                "invariant factors must be positive".into(),
            ));
        }
        let mut seen = BTreeSet::new();
        for (label, cls) in primes {
            if !seen.insert(label.clone()) {
                return Err(Error::BadClassVector(format!("duplicate prime label {label:?}")));
            }
            if label.is_empty() || !label.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::BadClassVector(format!("bad prime label {label:?}")));
            }
            if cls.len() != factors.len() {
                return Err(Error::BadClassVector(format!(
                    "class of {label} has {} components, group has {}",
                    cls.len(),
                    factors.len()
                )));
            }
            if let Some((c, n)) = cls.iter().zip(factors).find(|(c, n)| c >= n) {
                return Err(Error::BadClassVector(format!(
                    "class of {label}: component {c} not reduced modulo {n}"
                )));
            }
        }
        let mut sorted: Vec<(String, Vec<u64>)> = primes.to_vec();
        sorted.sort();
        let mut h = std::collections::hash_map::DefaultHasher::new();
        factors.hash(&mut h);
        sorted.hash(&mut h);
        let (labels, classes) = sorted.into_iter().unzip();
        Ok(KrullMonoid {
            factors: factors.to_vec(),
            labels,
            classes,
            fingerprint: h.finish(),
        })
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn group_factors(&self) -> &[u64] {
        &self.factors
    }

    /// Class of a divisor in the declared group.
    pub fn class_of(&self, div: &Divisor) -> Vec<u64> {
        let mut acc = vec![0i128; self.factors.len()];
        for (e, cls) in div.0.iter().zip(&self.classes) {
            for (slot, c) in acc.iter_mut().zip(cls) {
                *slot += *e as i128 * *c as i128;
            }
        }
        acc.iter()
            .zip(&self.factors)
            .map(|(&v, &n)| v.rem_euclid(n as i128) as u64)
            .collect()
    }

    pub fn is_principal(&self, div: &Divisor) -> bool {
        self.class_of(div).iter().all(|&c| c == 0)
    }

    pub fn prime(&self, i: usize) -> Divisor {
        let mut d = Divisor::zero(self.rank());
        d.0[i] = 1;
        d
    }

    /// Divisors `J` with `0 <= J <= I`, i.e. integral ideals containing `I`.
    pub fn supideals(&self, div: &Divisor, cap: u64) -> Result<Vec<Divisor>> {
        let count = div
            .0
            .iter()
            .try_fold(1u64, |acc, &e| acc.checked_mul(e as u64 + 1))
            .unwrap_or(u64::MAX);
        if count > cap {
            return Err(Error::BoundExceeded {
                what: "supideal count",
                value: count.to_string(),
                cap: cap.to_string(),
            });
        }
        let mut out = vec![Divisor::zero(self.rank())];
        for (i, &e) in div.0.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for d in &out {
                for k in 0..=e {
                    let mut nd = d.clone();
                    nd.0[i] = k;
                    next.push(nd);
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// The subgroup of the declared class group generated by the prime classes,
    /// as a list of elements (identity first).
    pub fn generated_subgroup(&self, cap: usize) -> Result<Vec<Vec<u64>>> {
        let zero = vec![0u64; self.factors.len()];
        let mut index: HashMap<Vec<u64>, usize> = HashMap::new();
        index.insert(zero.clone(), 0);
        let mut elems = vec![zero];
        let mut frontier = 0;
        while frontier < elems.len() {
            let cur = elems[frontier].clone();
            frontier += 1;
            for cls in &self.classes {
                let next: Vec<u64> = cur
                    .iter()
                    .zip(cls)
                    .zip(&self.factors)
                    .map(|((a, b), n)| (a + b) % n)
                    .collect();
                if !index.contains_key(&next) {
                    if elems.len() >= cap {
                        return Err(Error::BoundExceeded {
                            what: "class group size",
                            value: format!(">{cap}"),
                            cap: cap.to_string(),
                        });
                    }
                    index.insert(next.clone(), elems.len());
                    elems.push(next);
                }
            }
        }
        Ok(elems)
    }

    pub fn times(&self, x: &[u64], m: u64) -> Vec<u64> {
        x.iter()
            .zip(&self.factors)
            .map(|(&a, &n)| ((a as u128 * m as u128) % n as u128) as u64)
            .collect()
    }

    /// Exponent of the class of `div`: least `n >= 1` with `n·cls = 0`.
    pub fn class_order(&self, div: &Divisor) -> u64 {
        let c = self.class_of(div);
        c.iter()
            .zip(&self.factors)
            .map(|(&a, &n)| n / num_integer::gcd(a, n))
            .fold(1, num_integer::lcm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2_model() -> KrullMonoid {
        KrullMonoid::new(&[2], &[("q".into(), vec![1]), ("p".into(), vec![1])]).unwrap()
    }

    #[test]
    fn labels_are_sorted() {
        let m = z2_model();
        assert_eq!(m.labels(), &["p".to_string(), "q".to_string()]);
    }

    #[test]
    fn class_sums() {
        let m = z2_model();
        assert!(m.is_principal(&Divisor(vec![2, 0])));
        assert!(m.is_principal(&Divisor(vec![1, 1])));
        assert!(!m.is_principal(&Divisor(vec![1, 0])));
        assert_eq!(m.class_order(&Divisor(vec![1, 0])), 2);
    }

    #[test]
    fn rejects_bad_classes() {
        assert!(KrullMonoid::new(&[2], &[("p".into(), vec![2])]).is_err());
        assert!(KrullMonoid::new(&[2], &[("p".into(), vec![1]), ("p".into(), vec![0])]).is_err());
        assert!(KrullMonoid::new(&[2, 3], &[("p".into(), vec![1])]).is_err());
    }

    #[test]
    fn exponent_lattice() {
        let m = z2_model();
        let s = m.supideals(&Divisor(vec![2, 0]), 100).unwrap();
        assert_eq!(s.len(), 3);
        assert!(m.supideals(&Divisor(vec![9, 9]), 50).is_err());
    }
}
