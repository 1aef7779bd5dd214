use serde::{Deserialize, Serialize};

use crate::arith::{factor_u64, lcm_u64};

/// Invariant-factor description of a finite abelian group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupDescriptor {
    /// Factors greater than one, each dividing the next. Empty for the trivial group.
    pub invariant_factors: Vec<u64>,
    pub exponent: u64,
}

impl GroupDescriptor {
    pub fn trivial() -> Self {
        GroupDescriptor {
            invariant_factors: Vec::new(),
            exponent: 1,
        }
    }

    pub fn from_factors(mut factors: Vec<u64>) -> Self {
        factors.retain(|&n| n > 1);
        factors.sort_unstable();
        let exponent = factors.iter().copied().fold(1, lcm_u64);
        GroupDescriptor {
            invariant_factors: factors,
            exponent,
        }
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

impl std::fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|n| format!("Z/{n}"))
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Invariant factors of a finite abelian group of order `order`, given a
/// counter for `#{x : m·x = 0}`.
pub(crate) fn invariant_factors(order: u64, killed_by: impl Fn(u64) -> u64) -> GroupDescriptor {
    if order <= 1 {
        return GroupDescriptor::trivial();
    }
    // per prime: cyclic p-power factors, largest first
    let mut columns: Vec<Vec<u64>> = Vec::new();
    for (p, _) in factor_u64(order) {
        // s[k] = log_p #{x : p^k x = 0}
        let mut s = vec![0u32];
        let mut pk = 1u64;
        loop {
            pk *= p;
            let cnt = killed_by(pk);
            let sk = log_exact(cnt, p);
            if sk == *s.last().unwrap() {
                break;
            }
            s.push(sk);
        }
        // r[k] = number of cyclic factors of order >= p^k
        let r: Vec<u32> = s.windows(2).map(|w| w[1] - w[0]).collect();
        let mut col = Vec::new();
        for k in (0..r.len()).rev() {
            let next = r.get(k + 1).copied().unwrap_or(0);
            for _ in 0..(r[k] - next) {
                col.push(p.pow(k as u32 + 1));
            }
        }
        columns.push(col);
    }
    let width = columns.iter().map(Vec::len).max().unwrap_or(0);
    let factors = (0..width)
        .map(|i| columns.iter().filter_map(|c| c.get(i)).product())
        .collect();
    GroupDescriptor::from_factors(factors)
}

fn log_exact(n: u64, p: u64) -> u32 {
    let mut k = 0;
    let mut m = n;
    while m > 1 {
        debug_assert_eq!(m % p, 0, "subgroup sizes are powers of p");
        m /= p;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product_group(ns: &[u64]) -> GroupDescriptor {
        let order: u64 = ns.iter().product();
        invariant_factors(order, |m| ns.iter().map(|&n| num_integer::gcd(n, m)).product())
    }

    #[test]
    fn recovers_invariant_factors() {
        assert_eq!(product_group(&[2]).invariant_factors, vec![2]);
        assert_eq!(product_group(&[2, 3]).invariant_factors, vec![6]);
        assert_eq!(product_group(&[2, 4]).invariant_factors, vec![2, 4]);
        assert_eq!(product_group(&[6, 4]).invariant_factors, vec![2, 12]);
        assert_eq!(product_group(&[6, 4]).exponent, 12);
        assert!(product_group(&[1]).is_trivial());
    }
}
