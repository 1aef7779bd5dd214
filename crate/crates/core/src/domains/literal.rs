//! Text forms for elements and ideals.
//!
//! Quadratic elements: sums of terms `r` and `r*w` (or bare `w`), where `r` is
//! an integer or `p/q` and `w` stands for `√d`. Monoid divisors: `{p:1,q:2}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monoid::{Divisor, KrullMonoid};
use crate::error::{Error, Result};

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn format_quadratic(u: &BigRational, v: &BigRational) -> String {
    if v.is_zero() {
        return fmt_rat(u);
    }
    if u.is_zero() {
        return format!("{}*w", fmt_rat(v));
    }
    if v.is_negative() {
        format!("{}-{}*w", fmt_rat(u), fmt_rat(&-v))
    } else {
        format!("{}+{}*w", fmt_rat(u), fmt_rat(v))
    }
}

fn parse_rat(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// Parse `u+v*w` into `(u, v)`.
pub fn parse_quadratic(text: &str) -> Result<(BigRational, BigRational)> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty element literal".into()));
    }
    let mut u = BigRational::zero();
    let mut v = BigRational::zero();
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (k, ch) in s.chars().enumerate() {
        if (ch == '+' || ch == '-') && k > 0 {
            terms.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if (ch == '+' || ch == '-') && k == 0 {
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    terms.push((neg, cur));
    for (neg, t) in terms {
        if t.is_empty() {
            return Err(Error::Parse(format!("empty term in {text:?}")));
        }
        let sign = if neg { -BigRational::one() } else { BigRational::one() };
        if let Some(coef) = t.strip_suffix('w') {
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let c = if coef.is_empty() { BigRational::one() } else { parse_rat(coef)? };
            v += sign * c;
        } else {
            u += sign * parse_rat(&t)?;
        }
    }
    Ok((u, v))
}

pub fn format_divisor(m: &KrullMonoid, d: &Divisor) -> String {
    let parts: Vec<String> = m
        .labels()
        .iter()
        .zip(&d.0)
        .filter(|(_, &e)| e != 0)
        .map(|(l, e)| format!("{l}:{e}"))
        .collect();
    format!("{{{}}}", parts.join(","))
}

/// Parse `{p:1,q:2}`; a bare label means exponent 1, repeated labels add up.
pub fn parse_divisor(m: &KrullMonoid, text: &str) -> Result<Divisor> {
    let s = text.trim();
    let inner = s
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| Error::Parse(format!("divisor literal must be braced: {s:?}")))?;
    let mut d = Divisor::zero(m.rank());
    for item in inner.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let (label, e) = match item.split_once(':') {
            Some((l, e)) => (
                l.trim(),
                e.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad exponent in {item:?}")))?,
            ),
            None => (item, 1),
        };
        let i = m
            .label_index(label)
            .ok_or_else(|| Error::Parse(format!("unknown prime label {label:?}")))?;
        d.0[i] += e;
    }
    Ok(d)
}

/// Split `[a, b, c]` (brackets optional) at top-level commas.
pub fn split_list(text: &str) -> Result<Vec<String>> {
    let s = text.trim();
    let s = match s.strip_prefix('[') {
        Some(r) => r
            .strip_suffix(']')
            .ok_or_else(|| Error::Parse(format!("unbalanced brackets in {text:?}")))?,
        None => s,
    };
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '{' => depth += 1,
            '}' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced braces in {text:?}")));
        }
        if ch == ',' && depth == 0 {
            out.push(std::mem::take(&mut cur).trim().to_string());
        } else {
            cur.push(ch);
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced braces in {text:?}")));
    }
    if !cur.trim().is_empty() || !out.is_empty() {
        out.push(cur.trim().to_string());
    }
    if out.iter().any(String::is_empty) {
        return Err(Error::Parse(format!("empty item in {text:?}")));
    }
    Ok(out)
}
