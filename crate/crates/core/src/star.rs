//! The closures d, v, t, w and star-level arithmetic.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::domains::{Domain, Ideal};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StarOp {
    D,
    V,
    T,
    W,
}

impl StarOp {
    pub const ALL: [StarOp; 4] = [StarOp::D, StarOp::V, StarOp::T, StarOp::W];

    pub(crate) fn index(self) -> usize {
        self as usize
    }

    pub fn as_char(self) -> char {
        match self {
            StarOp::D => 'd',
            StarOp::V => 'v',
            StarOp::T => 't',
            StarOp::W => 'w',
        }
    }
}

impl fmt::Display for StarOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl FromStr for StarOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "d" => Ok(StarOp::D),
            "v" => Ok(StarOp::V),
            "t" => Ok(StarOp::T),
            "w" => Ok(StarOp::W),
            other => Err(Error::Parse(format!("unknown star operation {other:?} (expected d, v, t or w)"))),
        }
    }
}

/// `I*`.
pub fn closure(dom: &Domain, i: &Ideal, star: StarOp) -> Result<Ideal> {
    match star {
        StarOp::D => Ok(i.clone()),
        StarOp::V => v_closure(dom, i),
        // every ideal either backend produces is finitely generated, where t = v
        StarOp::T => v_closure(dom, i),
        StarOp::W => w_closure(dom, i),
    }
}

fn v_closure(dom: &Domain, i: &Ideal) -> Result<Ideal> {
    let inv = dom.inverse(i)?;
    dom.inverse(&inv)
}

fn w_closure(dom: &Domain, i: &Ideal) -> Result<Ideal> {
    let x = dom.integral_multiplier(i);
    let j = dom.scale(i, &x)?;
    let maxes = dom.max_star_ideals_over(&j, StarOp::T)?;
    let mut acc = dom.one();
    for m in &maxes {
        let comp = dom.local_contract(&j, m)?;
        acc = dom.intersect(&acc, &comp)?;
    }
    dom.scale(&acc, &dom.element_inverse(&x)?)
}

/// `(IJ)*`.
pub fn star_product(dom: &Domain, i: &Ideal, j: &Ideal, star: StarOp) -> Result<Ideal> {
    closure(dom, &dom.product(i, j)?, star)
}

/// `(I + J)*`.
pub fn star_sum(dom: &Domain, i: &Ideal, j: &Ideal, star: StarOp) -> Result<Ideal> {
    closure(dom, &dom.sum(i, j)?, star)
}

/// `(I·I⁻¹)* = D`.
pub fn is_star_invertible(dom: &Domain, i: &Ideal, star: StarOp) -> Result<bool> {
    let inv = dom.inverse(i)?;
    Ok(star_product(dom, i, &inv, star)?.is_unit_ideal())
}

/// `(I + J)* = D`.
pub fn is_star_comaximal(dom: &Domain, i: &Ideal, j: &Ideal, star: StarOp) -> Result<bool> {
    let by_sum = star_sum(dom, i, j, star)?.is_unit_ideal();
    if i.is_integral() && j.is_integral() {
        debug_assert_eq!(by_sum, !shares_maximal(dom, i, j, star)?);
    }
    Ok(by_sum)
}

/// Whether two integral ideals lie in a common maximal star-ideal.
pub fn shares_maximal(dom: &Domain, i: &Ideal, j: &Ideal, star: StarOp) -> Result<bool> {
    let a = dom.max_star_ideals_over(i, star)?;
    let b = dom.max_star_ideals_over(j, star)?;
    Ok(a.iter().any(|m| b.contains(m)))
}

/// Whether `I* = I`.
pub fn is_star_ideal(dom: &Domain, i: &Ideal, star: StarOp) -> Result<bool> {
    Ok(closure(dom, i, star)? == *i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::Element;

    fn zm5() -> Domain {
        Domain::quadratic(-5, 1).unwrap()
    }

    #[test]
    fn parse_and_print() {
        for s in StarOp::ALL {
            assert_eq!(s.to_string().parse::<StarOp>().unwrap(), s);
        }
        assert!("x".parse::<StarOp>().is_err());
        assert_eq!(serde_json::to_string(&StarOp::W).unwrap(), "\"w\"");
    }

    #[test]
    fn closures_of_p() {
        let d = zm5();
        let p = d.lattice_ideal(1, 2, 1, 1).unwrap();
        for s in StarOp::ALL {
            assert_eq!(closure(&d, &p, s).unwrap(), p);
        }
        let half = d.scale(&p, &d.parse_element("1/3").unwrap()).unwrap();
        assert_eq!(closure(&d, &half, StarOp::W).unwrap(), half);
    }

    #[test]
    fn products_and_sums() {
        let d = zm5();
        let p = d.lattice_ideal(1, 2, 1, 1).unwrap();
        let q = d.lattice_ideal(1, 3, 1, 1).unwrap();
        let pq = star_product(&d, &p, &q, StarOp::D).unwrap();
        assert_eq!(d.format_ideal(&pq), "hnf(6,1,1)");
        assert!(d.is_principal(&pq).unwrap().is_some());
        assert_eq!(star_sum(&d, &p, &q, StarOp::D).unwrap(), d.one());
        assert!(is_star_comaximal(&d, &p, &q, StarOp::D).unwrap());
        let two = d.principal(&Element::integer(2)).unwrap();
        assert!(!is_star_comaximal(&d, &two, &p, StarOp::D).unwrap());
    }

    #[test]
    fn non_maximal_order() {
        let d = Domain::quadratic(-3, 2).unwrap();
        let m = d.parse_ideal("[2, 1+1*w]").unwrap();
        assert!(!is_star_invertible(&d, &m, StarOp::D).unwrap());
        // the order is Gorenstein, so M is divisorial yet not t-invertible either
        assert_eq!(closure(&d, &m, StarOp::V).unwrap(), m);
        assert!(!is_star_invertible(&d, &m, StarOp::T).unwrap());
    }

    #[test]
    fn monoid_closures() {
        let m = Domain::krull_monoid(&[2], &[("p", &[1]), ("q", &[1])]).unwrap();
        let i = m.divisor_ideal(&[("p", 1), ("q", 1)]).unwrap();
        for s in StarOp::ALL {
            assert_eq!(closure(&m, &i, s).unwrap(), i);
            assert!(is_star_invertible(&m, &i, s).unwrap());
        }
        let f = m.divisor_ideal(&[("p", -2), ("q", 1)]).unwrap();
        assert_eq!(closure(&m, &f, StarOp::W).unwrap(), f);
        let a = m.divisor_ideal(&[("p", 1)]).unwrap();
        let b = m.divisor_ideal(&[("p", 2)]).unwrap();
        assert_eq!(
            star_product(&m, &a, &b, StarOp::T).unwrap(),
            m.divisor_ideal(&[("p", 3)]).unwrap()
        );
        let c = m.divisor_ideal(&[("p", 3)]).unwrap();
        let e = m.divisor_ideal(&[("q", 1)]).unwrap();
        assert!(is_star_comaximal(&m, &c, &e, StarOp::T).unwrap());
    }
}
