//! Plain-text summaries. The JSON written by `--out` carries everything.

use std::fmt::Write;

use homog_core::classify::{DomainReport, TriState, TypeReport};
use homog_core::homog::FactorizationReport;
use homog_core::verify::VerifyReport;
use homog_core::StarOp;
use serde::Serialize;

#[derive(Serialize)]
pub struct GcdReport {
    pub domain: String,
    pub star: StarOp,
    pub a: String,
    pub b: String,
    pub ideal: String,
    /// `(a, b)* = D`.
    pub comaximal: bool,
    pub factors: Option<FactorizationReport>,
    pub maximals_a: Vec<String>,
    pub maximals_b: Vec<String>,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn with_exp(t: TriState, e: Option<u64>) -> String {
    match e {
        Some(e) if t.is_yes() => format!("{t} (exponent {e})"),
        _ => t.to_string(),
    }
}

fn factor_lines(out: &mut String, r: &FactorizationReport) {
    for (k, f) in r.factors.iter().enumerate() {
        let _ = writeln!(out, "factor {}: {}", k + 1, f.ideal);
        let _ = writeln!(out, "  generators: {}", f.generators);
        let _ = writeln!(out, "  spawned maximal: {}", f.spawned);
        let _ = writeln!(out, "  star-invertible: {}", yes_no(f.star_invertible));
        match &f.principal_generator {
            Some(g) => {
                let _ = writeln!(out, "  principal: yes, generated by {g}");
            }
            None => {
                let _ = writeln!(out, "  principal: no");
            }
        }
    }
    let _ = writeln!(
        out,
        "product check: {} ({})",
        r.product_check,
        if r.product_matches_input { "matches input" } else { "DOES NOT match input" }
    );
}

pub fn factorization(r: &FactorizationReport, element: Option<&str>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "domain: {}", r.domain);
    let _ = writeln!(out, "star: {}", r.star);
    if let Some(x) = element {
        let _ = writeln!(out, "element: {x}");
    }
    let _ = writeln!(out, "input: {}", r.input);
    factor_lines(&mut out, r);
    out
}

pub fn type_report(domain: &str, r: &TypeReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "domain: {domain}");
    let _ = writeln!(out, "star: {}", r.star);
    let _ = writeln!(out, "ideal: {}", r.ideal);
    let _ = writeln!(out, "homog: {}", yes_no(r.homog));
    if let Some(m) = &r.spawned {
        let _ = writeln!(out, "spawned maximal: {m}");
    }
    let _ = writeln!(out, "star-invertible: {}", yes_no(r.invertible));
    let _ = writeln!(out, "principal: {}", yes_no(r.principal));
    let _ = writeln!(out, "type 1: {}", r.type1);
    let type2 = match r.type2_n {
        Some(n) if r.type2.is_yes() => format!("{} (n = {n})", r.type2),
        _ => r.type2.to_string(),
    };
    let _ = writeln!(out, "type 2: {type2}");
    let _ = writeln!(out, "super: {}", r.super_homog);
    let _ = writeln!(out, "f: {}", r.f);
    let _ = writeln!(out, "af: {}", with_exp(r.af, r.af_exp));
    let _ = writeln!(out, "wf: {}", r.wf);
    let _ = writeln!(out, "waf: {}", with_exp(r.waf, r.waf_exp));
    if r.weak_vacuous {
        let _ = writeln!(out, "note: wf and waf hold vacuously (not star-invertible)");
    }
    if let Some(n) = r.supideals_examined {
        let _ = writeln!(out, "containing ideals examined: {n}");
    }
    out
}

pub fn domain_report(r: &DomainReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "domain: {}", r.domain);
    let _ = writeln!(out, "star: {}", r.star);
    let _ = writeln!(
        out,
        "sample: {} elements factored, {} ideals classified",
        r.elements_factored, r.ideals_classified
    );
    match (&r.class_group, &r.class_group_error) {
        (Some(g), _) => {
            let _ = writeln!(out, "class group: {g}");
        }
        (None, Some(e)) => {
            let _ = writeln!(out, "class group: unavailable ({e})");
        }
        _ => {}
    }
    for (name, t) in [
        ("sh", r.sh),
        ("wkd", r.wkd),
        ("krull", r.krull),
        ("irkt", r.irkt),
        ("gkd", r.gkd),
        ("wf_sh", r.wf_sh),
        ("waf_sh", r.waf_sh),
        ("gcd", r.gcd),
        ("agcd", r.agcd),
    ] {
        let how = r
            .provenance
            .get(name)
            .map(|p| format!(" [{}]", serde_json::to_value(p).unwrap().as_str().unwrap_or("")))
            .unwrap_or_default();
        let _ = writeln!(out, "{name}: {t}{how}");
    }
    let _ = writeln!(out, "principal-factor cross-check: {}", if r.wf_cross_check { "consistent" } else { "INCONSISTENT" });
    let _ = writeln!(out, "gcd cross-check: {}", if r.gcd_cross_check { "consistent" } else { "INCONSISTENT" });
    let _ = writeln!(out, "evidence records: {}", r.evidence.len());
    out
}

pub fn gcd(r: &GcdReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "domain: {}", r.domain);
    let _ = writeln!(out, "star: {}", r.star);
    let _ = writeln!(out, "(a, b)* for a = {}, b = {}: {}", r.a, r.b, r.ideal);
    if r.comaximal {
        let _ = writeln!(out, "a and b are star-comaximal");
        let _ = writeln!(out, "maximals over a: {}", r.maximals_a.join(", "));
        let _ = writeln!(out, "maximals over b: {}", r.maximals_b.join(", "));
    } else if let Some(f) = &r.factors {
        factor_lines(&mut out, f);
    }
    out
}

pub fn verify(r: &VerifyReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "domain: {}", r.domain);
    let stars: Vec<String> = r.config.stars.iter().map(|s| s.to_string()).collect();
    let _ = writeln!(out, "seed {} trials {} stars {}", r.config.seed, r.config.trials, stars.join(","));
    let width = r.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
    for c in &r.checks {
        let status = if c.failures == 0 { "pass" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{status} {:width$} {} applicable {}/{} failures {}",
            c.id, c.star, c.applicable, c.trials, c.failures
        );
        if let Some(cx) = &c.counterexample {
            let _ = writeln!(out, "     trial {}: {}", cx.trial, cx.message);
        }
    }
    let a = &r.closure_agreement;
    let _ = writeln!(
        out,
        "closure agreement on {} ideals: d=w {}, w=t {}, t=v {}",
        a.sampled, a.d_eq_w, a.w_eq_t, a.t_eq_v
    );
    let _ = writeln!(out, "{}: {} failures", if r.passed { "PASSED" } else { "FAILED" }, r.failures);
    out
}
