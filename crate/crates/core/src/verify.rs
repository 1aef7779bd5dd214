//! Randomized property harness over a domain.
//!
//! Every check is a pure function of a serialized instance, so each recorded
//! counterexample can be replayed with [`replay`]. Seeds are derived per
//! (check, star, trial), which makes parallel and serial runs agree.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{classify_domain, classify_ideal, maximal_sample_elements, reverify, TriState};
use crate::domains::{Divisor, Domain, DomainSpec, Element, Ideal, MaxIdeal};
use crate::error::{Error, Result};
use crate::homog::{self, is_homog, HomogCertificate};
use crate::star::{self, StarOp};

/// Deliberate defects used to confirm that the harness can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    /// Regrouping leaves similar factors unmerged.
    SkipMergeInRegroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: u32,
    /// Random coefficients are drawn from `[-coeff_range, coeff_range]`.
    pub coeff_range: i64,
    /// Largest norm (or degree) of a random ideal or element.
    pub norm_cap: u64,
    pub stars: Vec<StarOp>,
    /// Bound for exponent searches when the class group is unavailable.
    pub bound: u32,
    #[serde(default)]
    pub mutation: Option<Mutation>,
    /// Run only these check ids (all when empty).
    #[serde(default)]
    pub only: Vec<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            trials: 100,
            coeff_range: 5,
            norm_cap: 10_000,
            stars: StarOp::ALL.to_vec(),
            bound: 32,
            mutation: None,
            only: Vec::new(),
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Parse("trials must be at least 1".into()));
        }
        if self.coeff_range < 1 {
            return Err(Error::Parse("coefficient range must be at least 1".into()));
        }
        if self.norm_cap < 2 {
            return Err(Error::Parse("norm cap must be at least 2".into()));
        }
        if self.stars.is_empty() {
            return Err(Error::Parse("star list is empty".into()));
        }
        for id in &self.only {
            if !CHECKS.iter().any(|c| c.id == id) {
                return Err(Error::Parse(format!("unknown check id {id:?}")));
            }
        }
        Ok(())
    }
}

/// Serialized check input: element and ideal literals plus two orderings.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ideals: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub order_a: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub order_b: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub check: String,
    pub star: StarOp,
    pub trial: u32,
    pub instance: Instance,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub statement: String,
    pub star: StarOp,
    pub trials: u32,
    /// Trials whose instance met the check's hypotheses.
    pub applicable: u32,
    pub failures: u32,
    pub counterexample: Option<Counterexample>,
}

/// How often distinct closures agreed on sampled ideals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureAgreement {
    pub sampled: u32,
    pub d_eq_w: u32,
    pub w_eq_t: u32,
    pub t_eq_v: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub domain: String,
    pub spec: DomainSpec,
    pub config: SuiteConfig,
    pub checks: Vec<CheckRecord>,
    pub closure_agreement: ClosureAgreement,
    pub failures: u64,
    pub passed: bool,
}

enum Outcome {
    Pass,
    Skip,
    Fail(String),
}

struct Ctx<'a> {
    dom: &'a Domain,
    star: StarOp,
    cfg: &'a SuiteConfig,
}

type GenFn = fn(&Ctx, &mut ChaCha8Rng) -> Result<Instance>;
type RunFn = fn(&Ctx, &Instance) -> Result<Outcome>;

struct Check {
    id: &'static str,
    statement: &'static str,
    gen: GenFn,
    run: RunFn,
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Ok(Outcome::Fail(format!($($msg)+)));
        }
    };
}

const CHECKS: &[Check] = &[
    Check {
        id: "closure-axioms",
        statement: "I ⊆ I*, (I*)* = I*, I ⊆ J ⇒ I* ⊆ J*, (x)* = (x), (xI)* = x·I*",
        gen: gen_two_ideals_and_element,
        run: run_closure_axioms,
    },
    Check {
        id: "closure-order",
        statement: "I ⊆ I_w ⊆ I_t = I_v for every sampled ideal",
        gen: gen_two_ideals_and_element,
        run: run_closure_order,
    },
    Check {
        id: "closure-interchange",
        statement: "(IJ)* = (I*J*)* = (IJ*)*",
        gen: gen_two_ideals_and_element,
        run: run_interchange,
    },
    Check {
        id: "invertible-closure-and-inverse-closed",
        statement: "if I is star-invertible then I* and I⁻¹ are star-ideals",
        gen: gen_two_ideals_and_element,
        run: run_invertible_closed,
    },
    Check {
        id: "comaximal-iff-no-shared-maximal",
        statement: "(I + J)* = D exactly when no maximal star-ideal contains both",
        gen: gen_two_ideals_and_element,
        run: run_comaximal_iff,
    },
    Check {
        id: "homog-matches-pairwise-definition",
        statement: "a proper star-ideal lies in one maximal star-ideal iff no two proper star-ideals containing it are star-comaximal",
        gen: gen_two_ideals_and_element,
        run: run_raw_homog,
    },
    Check {
        id: "spawned-maximal-membership",
        statement: "for homog I, x ∈ M(I) iff (x, I)* ≠ D",
        gen: gen_homog_and_elements,
        run: run_spawned_membership,
    },
    Check {
        id: "dissimilar-homog-share-no-homog",
        statement: "if M(I) ≠ M(J) then no homog ideal lies in M(I) ∩ M(J)",
        gen: gen_three_homog,
        run: run_dissimilar,
    },
    Check {
        id: "similar-product-is-homog",
        statement: "the star-product of two homog ideals with the same spawned maximal is homog with that maximal",
        gen: gen_similar_pair,
        run: run_similar_product,
    },
    Check {
        id: "homog-contraction-identity",
        statement: "for homog I, I·D_M(I) ∩ D = I",
        gen: gen_homog_and_elements,
        run: run_contraction_identity,
    },
    Check {
        id: "local-contract-fixed-points",
        statement: "I·D_M ∩ D = I exactly when M is the only maximal star-ideal over I",
        gen: gen_two_ideals_and_element,
        run: run_local_fixed_points,
    },
    Check {
        id: "homog-splitting",
        statement: "for homog I and star-comaximal A, B with AB ⊆ I: A ⊆ I or B ⊆ I",
        gen: gen_splitting,
        run: run_splitting,
    },
    Check {
        id: "comaximal-product-contraction",
        statement: "for homog B and A with (A + B)* = D: (AB)*·D_M(B) ∩ D = B*",
        gen: gen_homog_and_ideal,
        run: run_comaximal_contraction,
    },
    Check {
        id: "regroup-unique",
        statement: "regrouping homog factors is independent of their order and idempotent",
        gen: gen_factor_list,
        run: run_regroup,
    },
    Check {
        id: "principal-round-trip",
        statement: "the factors of xD are invertible homog ideals, fixed by contraction, whose star-product is xD",
        gen: gen_element,
        run: run_round_trip,
    },
    Check {
        id: "maximals-over-element-independent",
        statement: "finitely many maximal star-ideals lie over x and they are pairwise star-comaximal",
        gen: gen_element,
        run: run_independent_maximals,
    },
    Check {
        id: "maximal-contains-invertible-homog",
        statement: "every maximal star-ideal over x contains a star-invertible homog ideal",
        gen: gen_element,
        run: run_maximal_has_homog,
    },
    Check {
        id: "super-homog-supideals",
        statement: "for super homog I, every proper finitely generated A ⊇ I has A* super homog",
        gen: gen_homog_and_elements,
        run: run_super_supideals,
    },
    Check {
        id: "super-homog-comparable",
        statement: "super homog I, J with the same spawned maximal satisfy I ⊆ J* or J ⊆ I*",
        gen: gen_similar_pair,
        run: run_super_comparable,
    },
    Check {
        id: "super-homog-products",
        statement: "the star-product of similar super homog ideals is super homog",
        gen: gen_similar_pair,
        run: run_super_products,
    },
    Check {
        id: "super-homog-powers",
        statement: "(Iⁿ)* is super homog for super homog I and n = 2, 3",
        gen: gen_homog_and_elements,
        run: run_super_powers,
    },
    Check {
        id: "super-homog-local-closure",
        statement: "for super homog I, I* = I·D_M(I) ∩ D",
        gen: gen_homog_and_elements,
        run: run_super_local_closure,
    },
    Check {
        id: "super-regroup-unique",
        statement: "star-products of super homog ideals regroup uniquely into comaximal super homog factors",
        gen: gen_factor_list,
        run: run_super_regroup,
    },
    Check {
        id: "gcd-local-factors",
        statement: "in an integrally closed model (a, b)* is D or a product of super homog ideals I with (a, b)D_M(I) equal to aD_M(I) or bD_M(I)",
        gen: gen_two_elements,
        run: run_gcd_local,
    },
    Check {
        id: "almost-gcd-powers",
        statement: "when every homog ideal has a principal power, (aⁿ, bⁿ)_v is principal for some n dividing the class-group exponent",
        gen: gen_two_elements,
        run: run_almost_gcd,
    },
    Check {
        id: "trivial-class-group-weakly-factorial",
        statement: "with trivial class group every invertible homog ideal is principal and wf-homog; wf-homog invertible ideals are principal",
        gen: gen_homog_and_elements,
        run: run_trivial_wf,
    },
    Check {
        id: "torsion-class-group-almost-weakly-factorial",
        statement: "with finite class group every invertible homog ideal is waf-homog with exponent dividing the group exponent",
        gen: gen_homog_and_elements,
        run: run_torsion_waf,
    },
    Check {
        id: "taxonomy-implications",
        statement: "f ⇒ super, wf, af; af ⇒ super, waf; type2 ⇒ type1; wf ⇒ waf on every classification",
        gen: gen_homog_and_elements,
        run: run_taxonomy,
    },
    Check {
        id: "domain-report-evidence-replays",
        statement: "domain reports are self-consistent and their evidence replays",
        gen: gen_sample,
        run: run_domain_report,
    },
];

/// Ids and statements of the registered checks.
pub fn check_ids() -> Vec<(&'static str, &'static str)> {
    CHECKS.iter().map(|c| (c.id, c.statement)).collect()
}

fn trial_seed(seed: u64, check: usize, star: StarOp, trial: u32) -> u64 {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for v in [check as u64, star.index() as u64, trial as u64] {
        h = (h ^ v).wrapping_mul(0x1000_0000_01b3).rotate_left(29) ^ (h >> 31);
    }
    h
}

fn run_one(check: &Check, ctx: &Ctx, inst: &Instance) -> Outcome {
    match (check.run)(ctx, inst) {
        Ok(o) => o,
        Err(Error::BoundExceeded { .. }) => Outcome::Skip,
        Err(e) => Outcome::Fail(format!("error: {e}")),
    }
}

/// Run every registered check for `trials` instances per star.
pub fn run_suite(dom: &Domain, cfg: &SuiteConfig) -> Result<VerifyReport> {
    cfg.validate()?;
    let mut checks = Vec::new();
    for (ci, check) in CHECKS.iter().enumerate() {
        if !cfg.only.is_empty() && !cfg.only.iter().any(|o| o == check.id) {
            continue;
        }
        for &star in &cfg.stars {
            let ctx = Ctx { dom, star, cfg };
            let outcomes: Vec<(Instance, Outcome)> = (0..cfg.trials)
                .into_par_iter()
                .map(|t| {
                    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(cfg.seed, ci, star, t));
                    match (check.gen)(&ctx, &mut rng) {
                        Ok(inst) => {
                            let o = run_one(check, &ctx, &inst);
                            (inst, o)
                        }
                        Err(Error::BoundExceeded { .. }) => (Instance::default(), Outcome::Skip),
                        Err(e) => (Instance::default(), Outcome::Fail(format!("generation error: {e}"))),
                    }
                })
                .collect();
            let mut rec = CheckRecord {
                id: check.id.into(),
                statement: check.statement.into(),
                star,
                trials: cfg.trials,
                applicable: 0,
                failures: 0,
                counterexample: None,
            };
            for (t, (inst, o)) in outcomes.into_iter().enumerate() {
                match o {
                    Outcome::Pass => rec.applicable += 1,
                    Outcome::Skip => {}
                    Outcome::Fail(message) => {
                        rec.applicable += 1;
                        rec.failures += 1;
                        if rec.counterexample.is_none() {
                            rec.counterexample = Some(Counterexample {
                                check: check.id.into(),
                                star,
                                trial: t as u32,
                                instance: inst,
                                message,
                            });
                        }
                    }
                }
            }
            checks.push(rec);
        }
    }
    let closure_agreement = closure_agreement(dom, cfg)?;
    let failures = checks.iter().map(|c| c.failures as u64).sum();
    Ok(VerifyReport {
        domain: dom.name(),
        spec: dom.spec().clone(),
        config: cfg.clone(),
        checks,
        closure_agreement,
        failures,
        passed: failures == 0,
    })
}

/// Re-run a recorded counterexample; true when it still fails.
pub fn replay(dom: &Domain, cfg: &SuiteConfig, cx: &Counterexample) -> Result<bool> {
    let check = CHECKS
        .iter()
        .find(|c| c.id == cx.check)
        .ok_or_else(|| Error::Parse(format!("unknown check id {:?}", cx.check)))?;
    let ctx = Ctx {
        dom,
        star: cx.star,
        cfg,
    };
    Ok(matches!(run_one(check, &ctx, &cx.instance), Outcome::Fail(_)))
}

fn closure_agreement(dom: &Domain, cfg: &SuiteConfig) -> Result<ClosureAgreement> {
    let ctx = Ctx {
        dom,
        star: StarOp::D,
        cfg,
    };
    let rows: Vec<Result<[bool; 3]>> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(cfg.seed, usize::MAX, StarOp::D, t));
            let i = rand_ideal(&ctx, &mut rng)?;
            let c = |s| star::closure(dom, &i, s);
            let (w, tt, v) = (c(StarOp::W)?, c(StarOp::T)?, c(StarOp::V)?);
            Ok([i == w, w == tt, tt == v])
        })
        .collect();
    let mut out = ClosureAgreement {
        sampled: 0,
        d_eq_w: 0,
        w_eq_t: 0,
        t_eq_v: 0,
    };
    for r in rows {
        let Ok([a, b, c]) = r else { continue };
        out.sampled += 1;
        out.d_eq_w += a as u32;
        out.w_eq_t += b as u32;
        out.t_eq_v += c as u32;
    }
    Ok(out)
}

// ---- random instances -------------------------------------------------------

const RETRIES: usize = 64;

fn coeff(ctx: &Ctx, rng: &mut ChaCha8Rng) -> i64 {
    rng.gen_range(-ctx.cfg.coeff_range..=ctx.cfg.coeff_range)
}

fn quad_element(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Element {
    let q = ctx.dom.quad().expect("quadratic");
    let v = crate::domains::quadratic::Vec2::new(coeff(ctx, rng).into(), coeff(ctx, rng).into());
    let (u, w) = q.tau_to_sqrt(&v, &1.into());
    Element::Quadratic { u, v: w }
}

fn rand_divisor(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Divisor {
    let rank = ctx.dom.monoid().expect("monoid").rank();
    Divisor(
        (0..rank)
            .map(|_| if rng.gen_bool(0.5) { 0 } else { rng.gen_range(1..=5) })
            .collect(),
    )
}

fn within_cap(ctx: &Ctx, i: &Ideal) -> bool {
    i.size() <= num_rational::BigRational::from_integer(ctx.cfg.norm_cap.into())
}

/// A nonzero non-unit of `D`.
fn rand_element(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Element> {
    let dom = ctx.dom;
    if dom.is_quadratic() {
        for _ in 0..RETRIES {
            let x = quad_element(ctx, rng);
            if x.is_zero() || dom.is_unit(&x)? {
                continue;
            }
            if within_cap(ctx, &dom.principal(&x)?) {
                return Ok(x);
            }
        }
        Ok(Element::integer(2))
    } else {
        let m = dom.monoid().expect("monoid");
        for _ in 0..RETRIES {
            let d = rand_divisor(ctx, rng);
            if !d.is_zero() && m.is_principal(&d) {
                return Ok(Element::Divisor(d));
            }
        }
        let k = rng.gen_range(0..m.rank());
        let p = m.prime(k);
        let n = m.class_order(&p) as i64;
        Ok(Element::Divisor(p.scale(n)))
    }
}

/// A nonzero integral ideal, possibly `D`.
fn rand_ideal(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Ideal> {
    let dom = ctx.dom;
    if dom.is_quadratic() {
        for _ in 0..RETRIES {
            let k = rng.gen_range(2..=3);
            let gens: Vec<Element> = (0..k).map(|_| quad_element(ctx, rng)).collect();
            if gens.iter().all(Element::is_zero) {
                continue;
            }
            let i = dom.ideal_from_generators(&gens)?;
            if within_cap(ctx, &i) {
                return Ok(i);
            }
        }
        dom.principal(&Element::integer(2))
    } else {
        let d = rand_divisor(ctx, rng);
        dom.parse_ideal(&crate::domains::literal::format_divisor(dom.monoid().expect("monoid"), &d))
    }
}

fn rand_proper_ideal(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Ideal> {
    for _ in 0..RETRIES {
        let i = rand_ideal(ctx, rng)?;
        if i.is_proper() {
            return Ok(i);
        }
    }
    ctx.dom.principal(&rand_element(ctx, rng)?)
}

fn pick_maximal(ctx: &Ctx, rng: &mut ChaCha8Rng, i: &Ideal) -> Result<MaxIdeal> {
    let maxes = ctx.dom.maximal_ideals_containing(i, ctx.star)?;
    maxes
        .choose(rng)
        .cloned()
        .ok_or_else(|| Error::NotProper(ctx.dom.format_ideal(i)))
}

/// The `M`-component of a random ideal inside `M`.
fn rand_homog_at(ctx: &Ctx, rng: &mut ChaCha8Rng, m: &MaxIdeal) -> Result<Ideal> {
    let j = rand_ideal(ctx, rng)?;
    let k = star::closure(ctx.dom, &ctx.dom.product(&j, &m.ideal)?, ctx.star)?;
    ctx.dom.local_contract(&k, m)
}

fn rand_homog(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Ideal> {
    let j = star::closure(ctx.dom, &rand_proper_ideal(ctx, rng)?, ctx.star)?;
    let m = pick_maximal(ctx, rng, &j)?;
    ctx.dom.local_contract(&j, &m)
}

fn lit(ctx: &Ctx, i: &Ideal) -> String {
    ctx.dom.ideal_literal(i)
}

fn elit(ctx: &Ctx, x: &Element) -> String {
    ctx.dom.format_element(x)
}

fn gen_two_ideals_and_element(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Instance> {
    let (i, j) = (rand_ideal(ctx, rng)?, rand_ideal(ctx, rng)?);
    let x = rand_element(ctx, rng)?;
    Ok(Instance {
        ideals: vec![lit(ctx, &i), lit(ctx, &j)],
        elements: vec![elit(ctx, &x)],
        ..Default::default()
    })
}

fn gen_homog_and_elements(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Instance> {
    let i = rand_homog(ctx, rng)?;
    let xs = (0..3)
        .map(|_| rand_element(ctx, rng).map(|x| elit(ctx, &x)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Instance {
        ideals: vec![lit(ctx, &i)],
        elements: xs,
        ..Default::default()
    })
}

fn gen_homog_and_ideal(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Instance> {
    let b = rand_homog(ctx, rng)?;
    let a = rand_ideal(ctx, rng)?;
    Ok(Instance {
        ideals: vec![lit(ctx, &b), lit(ctx, &a)],
        ..Default::default()
    })
}

fn gen_three_homog(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Instance> {
    let v = (0..3)
        .map(|_| rand_homog(ctx, rng).map(|i| lit(ctx, &i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Instance {
        ideals: v,
        ..Default::default()
    })
}

fn gen_similar_pair(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Instance> {
    let i = rand_homog(ctx, rng)?;
    let m = pick_maximal(ctx, rng, &i)?;
    let j = rand_homog_at(ctx, rng, &m)?;
    Ok(Instance {
        ideals: vec![lit(ctx, &i), lit(ctx, &j)],
        ..Default::default()
    })
}

fn gen_splitting(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Instance> {
    let (a, b) = (rand_proper_ideal(ctx, rng)?, rand_proper_ideal(ctx, rng)?);
    let ab = star::star_product(ctx.dom, &a, &b, ctx.star)?;
    let m = pick_maximal(ctx, rng, &ab)?;
    let i = ctx.dom.local_contract(&ab, &m)?;
    Ok(Instance {
        ideals: vec![lit(ctx, &i), lit(ctx, &a), lit(ctx, &b)],
        ..Default::default()
    })
}

fn gen_factor_list(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Instance> {
    let base = rand_proper_ideal(ctx, rng)?;
    let maxes = ctx.dom.maximal_ideals_containing(&base, ctx.star)?;
    let n = rng.gen_range(maxes.len() + 1..=maxes.len() + 3);
    let mut ideals = Vec::with_capacity(n);
    for _ in 0..n {
        let m = maxes.choose(rng).expect("proper ideal has a maximal");
        ideals.push(lit(ctx, &rand_homog_at(ctx, rng, m)?));
    }
    let mut order_a: Vec<usize> = (0..n).collect();
    let mut order_b = order_a.clone();
    order_a.shuffle(rng);
    order_b.shuffle(rng);
    Ok(Instance {
        ideals,
        order_a,
        order_b,
        ..Default::default()
    })
}

fn gen_element(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Instance> {
    Ok(Instance {
        elements: vec![elit(ctx, &rand_element(ctx, rng)?)],
        ..Default::default()
    })
}

fn gen_two_elements(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Instance> {
    Ok(Instance {
        elements: vec![elit(ctx, &rand_element(ctx, rng)?), elit(ctx, &rand_element(ctx, rng)?)],
        ..Default::default()
    })
}

fn gen_sample(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Instance> {
    let xs = (0..3)
        .map(|_| rand_element(ctx, rng).map(|x| elit(ctx, &x)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Instance {
        elements: xs,
        ..Default::default()
    })
}

// ---- parsing helpers ------------------------------------------------------------

fn ideals(ctx: &Ctx, inst: &Instance) -> Result<Vec<Ideal>> {
    inst.ideals.iter().map(|s| ctx.dom.parse_ideal(s)).collect()
}

fn elements(ctx: &Ctx, inst: &Instance) -> Result<Vec<Element>> {
    inst.elements.iter().map(|s| ctx.dom.parse_element(s)).collect()
}

fn cl(ctx: &Ctx, i: &Ideal) -> Result<Ideal> {
    star::closure(ctx.dom, i, ctx.star)
}

fn fmt(ctx: &Ctx, i: &Ideal) -> String {
    ctx.dom.format_ideal(i)
}

fn cert(ctx: &Ctx, i: &Ideal) -> Result<Option<HomogCertificate>> {
    is_homog(ctx.dom, i, ctx.star)
}

fn is_super(ctx: &Ctx, i: &Ideal) -> Result<TriState> {
    Ok(classify_ideal(ctx.dom, i, ctx.star, ctx.cfg.bound)?.super_homog)
}

// ---- checks ---------------------------------------------------------------------

fn run_closure_axioms(ctx: &Ctx, inst: &Instance) -> Result<Outcome> {
    let dom = ctx.dom;
    let v = ideals(ctx, inst)?;
    let (i, j) = (&v[0], &v[1]);
    let x = &elements(ctx, inst)?[0];
    let ci = cl(ctx, i)?;
    ensure!(dom.contains(&ci, i)?, "{} not inside its closure {}", fmt(ctx, i), fmt(ctx, &ci));
    ensure!(cl(ctx, &ci)? == ci, "closure of {} not idempotent", fmt(ctx, i));
    let big = dom.sum(i, j)?;
    ensure!(dom.contains(&cl(ctx, &big)?, &ci)?, "monotonicity fails for {} ⊆ {}", fmt(ctx, i), fmt(ctx, &big));
    let xd = dom.principal(x)?;
    ensure!(cl(ctx, &xd)? == xd, "principal ideal {} not closed", fmt(ctx, &xd));
    for y in [x.clone(), dom.element_inverse(x)?] {
        let lhs = cl(ctx, &dom.scale(i, &y)?)?;
        let rhs = dom.scale(&ci, &y)?;
        ensure!(lhs == rhs, "(xI)* = {} but x·I* = {}", fmt(ctx, &lhs), fmt(ctx, &rhs));
    }
    Ok(Outcome::Pass)
}

fn run_closure_order(ctx: &Ctx, inst: &Instance) -> Result<Outcome> {
    let dom = ctx.dom;
    let v = ideals(ctx, inst)?;
    let x = &elements(ctx, inst)?[0];
    for i in [v[0].clone(), dom.scale(&v[0], &dom.element_inverse(x)?)?] {
        let c = |s| star::closure(dom, &i, s);
        let (w, t, vv) = (c(StarOp::W)?, c(StarOp::T)?, c(StarOp::V)?);
        ensure!(dom.contains(&w, &i)?, "I ⊄ I_w for {}", fmt(ctx, &i));
        ensure!(dom.contains(&t, &w)?, "I_w ⊄ I_t for {}", fmt(ctx, &i));
        ensure!(t == vv, "I_t ≠ I_v for {}", fmt(ctx, &i));
    }
    Ok(Outcome::Pass)
}

fn run_interchange(ctx: &Ctx, inst: &Instance) -> Result<Outcome> {
    let dom = ctx.dom;
    let v = ideals(ctx, inst)?;
    let (i, j) = (&v[0], &v[1]);
    let a = cl(ctx, &dom.product(i, j)?)?;
    let b = cl(ctx, &dom.product(&cl(ctx, i)?, &cl(ctx, j)?)?)?;
    let c = cl(ctx, &dom.product(i, &cl(ctx, j)?)?)?;
    ensure!(a == b && b == c, "(IJ)* = {}, (I*J*)* = {}, (IJ*)* = {}", fmt(ctx, &a), fmt(ctx, &b), fmt(ctx, &c));
    Ok(Outcome::Pass)
}

fn run_invertible_closed(ctx: &Ctx, inst: &Instance) -> Result<Outcome> {
    let dom = ctx.dom;
    let i = &ideals(ctx, inst)?[0];
    if !star::is_star_invertible(dom, i, ctx.star)? {
        return Ok(Outcome::Skip);
    }
    let ci = cl(ctx, i)?;
    let inv = dom.inverse(i)?;
    ensure!(star::is_star_ideal(dom, &ci, ctx.star)?, "I* not closed");
    ensure!(star::is_star_ideal(dom, &inv, ctx.star)?, "I⁻¹ = {} not closed", fmt(ctx, &inv));
    Ok(Outcome::Pass)
}

fn run_comaximal_iff(ctx: &Ctx, inst: &Instance) -> Result<Outcome> {
    let dom = ctx.dom;
    let v = ideals(ctx, inst)?;
    let by_sum = star::star_sum(dom, &v[0], &v[1], ctx.star)?.is_unit_ideal();
    let shared = star::shares_maximal(dom, &v[0], &v[1], ctx.star)?;
    ensure!(by_sum != shared, "sum test says {by_sum}, shared maximal says {shared}");
    Ok(Outcome::Pass)
}

fn run_raw_homog(ctx: &Ctx, inst: &Instance) -> Result<Outcome> {
    let dom = ctx.dom;
    let i = cl(ctx, &ideals(ctx, inst)?[0])?;
    if !i.is_proper() {
        return Ok(Outcome::Skip);
    }
    let mut proper = Vec::new();
    for j in dom.enumerate_supideals(&i)? {
        if j.is_proper() && star::is_star_ideal(dom, &j, ctx.star)? {
            proper.push(j);
        }
    }
    let mut raw = true;
    'outer: for (k, a) in proper.iter().enumerate() {
        for b in &proper[k..] {
            if star::star_sum(dom, a, b, ctx.star)?.is_unit_ideal() {
                raw = false;
                break 'outer;
            }
        }
    }
    let by_max = cert(ctx, &i)?.is_some();
    ensure!(raw == by_max, "{}: pairwise definition {raw}, unique maximal {by_max}", fmt(ctx, &i));
    Ok(Outcome::Pass)
}

fn run_spawned_membership(ctx: &Ctx, inst: &Instance) -> Result<Outcome> {
    let dom = ctx.dom;
    let i = &ideals(ctx, inst)?[0];
    let Some(c) = cert(ctx, i)? else {
        return Ok(Outcome::Skip);
    };
    let mut xs = elements(ctx, inst)?;
    xs.extend(maximal_sample_elements(dom, &c.spawned)?);
    for x in &xs {
        let by_lattice = dom.contains_element(&c.spawned.ideal, x)?;
        let by_def = homog::in_spawned_by_definition(dom, i, x, ctx.star)?;
        ensure!(by_lattice == by_def, "x = {}: x ∈ M(I) is {by_lattice}, (x, I)* ≠ D is {by_def}", elit(ctx, x));
    }
    Ok(Outcome::Pass)
}

fn run_dissimilar(ctx: &Ctx, inst: &Instance) -> Result<Outcome> {
    let dom = ctx.dom;
    let v = ideals(ctx, inst)?;
    let (Some(a), Some(b), Some(k)) = (cert(ctx, &v[0])?, cert(ctx, &v[1])?, cert(ctx, &v[2])?) else {
        return Ok(Outcome::Skip);
    };
    if a.spawned == b.spawned {
        return Ok(Outcome::Skip);
    }
    let both = dom.contains(&a.spawned.ideal, &k.ideal)? && dom.contains(&b.spawned.ideal, &k.ideal)?;
    ensure!(!both, "{} lies in two distinct spawned maximals", fmt(ctx, &k.ideal));
    Ok(Outcome::Pass)
}

fn run_similar_product(ctx: &Ctx, inst: &Instance) -> Result<Outcome> {
    let v = ideals(ctx, inst)?;
    let (Some(a), Some(b)) = (cert(ctx, &v[0])?, cert(ctx, &v[1])?) else {
        return Ok(Outcome::Skip);
    };
    if a.spawned != b.spawned {
        return Ok(Outcome::Skip);
    }
    let p = star::star_product(ctx.dom, &a.ideal, &b.ideal, ctx.star)?;
    match cert(ctx, &p)? {
        Some(c) => ensure!(c.spawned == a.spawned, "product spawned by a different maximal"),
        None => return Ok(Outcome::Fail(format!("product {} not homog", fmt(ctx, &p)))),
    }
    Ok(Outcome::Pass)
}

fn run_contraction_identity(ctx: &Ctx, inst: &Instance) -> Result<Outcome> {
    let i = &ideals(ctx, inst)?[0];
    let Some(c) = cert(ctx, i)? else {
        return Ok(Outcome::Skip);
    };
    let l = ctx.dom.local_contract(i, &c.spawned)?;
    ensure!(l == *i, "I·D_M ∩ D = {} ≠ {}", fmt(ctx, &l), fmt(ctx, i));
    Ok(Outcome::Pass)
}

fn run_local_fixed_points(ctx: &Ctx, inst: &Instance) -> Result<Outcome> {
    let dom = ctx.dom;
    let i = cl(ctx, &ideals(ctx, inst)?[0])?;
    if !i.is_proper() {
        return Ok(Outcome::Skip);
    }
    let maxes = dom.maximal_ideals_containing(&i, ctx.star)?;
    for m in &maxes {
        let fixed = dom.local_contract(&i, m)? == i;
        ensure!(fixed == (maxes.len() == 1), "{} at {}: fixed {fixed} with {} maximals", fmt(ctx, &i), fmt(ctx, &m.ideal), maxes.len());
    }
    Ok(Outcome::Pass)
}

fn run_splitting(ctx: &Ctx, inst: &Instance) -> Result<Outcome> {
    let dom = ctx.dom;
    let v = ideals(ctx, inst)?;
    let (i, a, b) = (&v[0], &v[1], &v[2]);
    if cert(ctx, i)?.is_none()
        || !star::is_star_comaximal(dom, a, b, ctx.star)?
        || !dom.contains(i, &dom.product(a, b)?)?
    {
        return Ok(Outcome::Skip);
    }
    let ok = dom.contains(i, &cl(ctx, a)?)? || dom.contains(i, &cl(ctx, b)?)?;
    ensure!(ok, "neither factor lies in {}", fmt(ctx, i));
    Ok(Outcome::Pass)
}

fn run_comaximal_contraction(ctx: &Ctx, inst: &Instance) -> Result<Outcome> {
    let dom = ctx.dom;
    let v = ideals(ctx, inst)?;
    let (b, a) = (&v[0], &v[1]);
    let Some(c) = cert(ctx, b)? else {
        return Ok(Outcome::Skip);
    };
    if !star::star_sum(dom, a, b, ctx.star)?.is_unit_ideal() {
        return Ok(Outcome::Skip);
    }
    let ab = star::star_product(dom, a, b, ctx.star)?;
    let l = dom.local_contract(&ab, &c.spawned)?;
    ensure!(l == cl(ctx, b)?, "(AB)*·D_M ∩ D = {} ≠ B* = {}", fmt(ctx, &l), fmt(ctx, b));
    Ok(Outcome::Pass)
}

fn certs_in_order(ctx: &Ctx, list: &[Ideal], order: &[usize]) -> Result<Option<Vec<HomogCertificate>>> {
    let mut out = Vec::with_capacity(order.len());
    for &k in order {
        match list.get(k) {
            Some(i) => match cert(ctx, i)? {
                Some(c) => out.push(c),
                None => return Ok(None),
            },
            None => return Err(Error::Parse(format!("order index {k} out of range"))),
        }
    }
    Ok(Some(out))
}

fn regroup(ctx: &Ctx, certs: &[HomogCertificate]) -> Result<homog::ComaximalFactorization> {
    let merge = ctx.cfg.mutation != Some(Mutation::SkipMergeInRegroup);
    homog::regroup_inner(ctx.dom, certs, ctx.star, merge)
}

fn run_regroup(ctx: &Ctx, inst: &Instance) -> Result<Outcome> {
    let list = ideals(ctx, inst)?;
    let (Some(a), Some(b)) = (
        certs_in_order(ctx, &list, &inst.order_a)?,
        certs_in_order(ctx, &list, &inst.order_b)?,
    ) else {
        return Ok(Outcome::Skip);
    };
    let fa = regroup(ctx, &a)?;
    let fb = regroup(ctx, &b)?;
    let names = |f: &homog::ComaximalFactorization| f.factors.iter().map(|c| fmt(ctx, &c.ideal)).collect::<Vec<_>>().join(" ");
    ensure!(fa == fb, "orderings give [{}] and [{}]", names(&fa), names(&fb));
    let again = regroup(ctx, &fa.factors)?;
    ensure!(again.factors == fa.factors && again.product_check == fa.product_check, "regrouping is not idempotent");
    for (k, x) in fa.factors.iter().enumerate() {
        for y in &fa.factors[k + 1..] {
            ensure!(star::is_star_comaximal(ctx.dom, &x.ideal, &y.ideal, ctx.star)?, "factors not comaximal");
        }
    }
    Ok(Outcome::Pass)
}

fn run_round_trip(ctx: &Ctx, inst: &Instance) -> Result<Outcome> {
    let dom = ctx.dom;
    let x = &elements(ctx, inst)?[0];
    let f = homog::factor_principal(dom, x, ctx.star)?;
    let xd = cl(ctx, &dom.principal(x)?)?;
    ensure!(f.product_check == xd, "product {} ≠ xD = {}", fmt(ctx, &f.product_check), fmt(ctx, &xd));
    let mut prod = dom.one();
    for c in &f.factors {
        prod = star::star_product(dom, &prod, &c.ideal, ctx.star)?;
        match cert(ctx, &c.ideal)? {
            Some(k) => ensure!(k.spawned == c.spawned, "factor {} has a different spawned maximal", fmt(ctx, &c.ideal)),
            None => return Ok(Outcome::Fail(format!("factor {} not homog", fmt(ctx, &c.ideal)))),
        }
        ensure!(star::is_star_invertible(dom, &c.ideal, ctx.star)?, "factor {} not invertible", fmt(ctx, &c.ideal));
        ensure!(dom.local_contract(&c.ideal, &c.spawned)? == c.ideal, "factor {} moved by contraction", fmt(ctx, &c.ideal));
    }
    ensure!(prod == xd, "recomputed product {} ≠ {}", fmt(ctx, &prod), fmt(ctx, &xd));
    for w in f.factors.windows(2) {
        ensure!(w[0].spawned < w[1].spawned, "factors not in canonical order");
    }
    Ok(Outcome::Pass)
}

fn run_independent_maximals(ctx: &Ctx, inst: &Instance) -> Result<Outcome> {
    let dom = ctx.dom;
    let x = &elements(ctx, inst)?[0];
    let maxes = dom.maximal_ideals_containing(&dom.principal(x)?, ctx.star)?;
    ensure!(!maxes.is_empty(), "no maximal star-ideal over a non-unit");
    for (k, a) in maxes.iter().enumerate() {
        for b in &maxes[k + 1..] {
            ensure!(
                star::is_star_comaximal(dom, &a.ideal, &b.ideal, ctx.star)?,
                "{} and {} not comaximal",
                fmt(ctx, &a.ideal),
                fmt(ctx, &b.ideal)
            );
        }
    }
    Ok(Outcome::Pass)
}

fn run_maximal_has_homog(ctx: &Ctx, inst: &Instance) -> Result<Outcome> {
    let dom = ctx.dom;
    let x = &elements(ctx, inst)?[0];
    let xd = dom.principal(x)?;
    for m in dom.maximal_ideals_containing(&xd, ctx.star)? {
        let part = dom.local_contract(&xd, &m)?;
        let ok = cert(ctx, &part)?.is_some_and(|c| c.spawned == m)
            && star::is_star_invertible(dom, &part, ctx.star)?
            && dom.contains(&m.ideal, &part)?;
        ensure!(ok, "{} contains no invertible homog ideal from x", fmt(ctx, &m.ideal));
    }
    Ok(Outcome::Pass)
}

/// The homog ideal of the instance when it is super homog.
fn super_input(ctx: &Ctx, inst: &Instance) -> Result<Option<HomogCertificate>> {
    let i = &ideals(ctx, inst)?[0];
    match cert(ctx, i)? {
        Some(c) if is_super(ctx, i)?.is_yes() => Ok(Some(c)),
        _ => Ok(None),
    }
}

fn run_super_supideals(ctx: &Ctx, inst: &Instance) -> Result<Outcome> {
    let dom = ctx.dom;
    let Some(c) = super_input(ctx, inst)? else {
        return Ok(Outcome::Skip);
    };
    let mut any = false;
    for x in elements(ctx, inst)?.iter().chain(maximal_sample_elements(dom, &c.spawned)?.iter()) {
        let a = cl(ctx, &dom.sum(&c.ideal, &dom.principal(x)?)?)?;
        if !a.is_proper() {
            continue;
        }
        any = true;
        let s = is_super(ctx, &a)?;
        ensure!(!s.is_no(), "{} ⊇ I is not super homog", fmt(ctx, &a));
    }
    Ok(if any { Outcome::Pass } else { Outcome::Skip })
}

fn similar_super_pair(ctx: &Ctx, inst: &Instance) -> Result<Option<(Ideal, Ideal)>> {
    let v = ideals(ctx, inst)?;
    let (Some(a), Some(b)) = (cert(ctx, &v[0])?, cert(ctx, &v[1])?) else {
        return Ok(None);
    };
    if a.spawned != b.spawned || !is_super(ctx, &a.ideal)?.is_yes() || !is_super(ctx, &b.ideal)?.is_yes() {
        return Ok(None);
    }
    Ok(Some((a.ideal, b.ideal)))
}

fn run_super_comparable(ctx: &Ctx, inst: &Instance) -> Result<Outcome> {
    let dom = ctx.dom;
    let Some((i, j)) = similar_super_pair(ctx, inst)? else {
        return Ok(Outcome::Skip);
    };
    let ok = dom.contains(&cl(ctx, &j)?, &i)? || dom.contains(&cl(ctx, &i)?, &j)?;
    ensure!(ok, "{} and {} incomparable", fmt(ctx, &i), fmt(ctx, &j));
    Ok(Outcome::Pass)
}

fn run_super_products(ctx: &Ctx, inst: &Instance) -> Result<Outcome> {
    let Some((i, j)) = similar_super_pair(ctx, inst)? else {
        return Ok(Outcome::Skip);
    };
    let p = star::star_product(ctx.dom, &i, &j, ctx.star)?;
    ensure!(cert(ctx, &p)?.is_some(), "product {} not homog", fmt(ctx, &p));
    ensure!(!is_super(ctx, &p)?.is_no(), "product {} not super homog", fmt(ctx, &p));
    Ok(Outcome::Pass)
}

fn run_super_powers(ctx: &Ctx, inst: &Instance) -> Result<Outcome> {
    let Some(c) = super_input(ctx, inst)? else {
        return Ok(Outcome::Skip);
    };
    for n in 2..=3 {
        let p = cl(ctx, &ctx.dom.power(&c.ideal, n)?)?;
        ensure!(!is_super(ctx, &p)?.is_no(), "power {n}: {} not super homog", fmt(ctx, &p));
    }
    Ok(Outcome::Pass)
}

fn run_super_local_closure(ctx: &Ctx, inst: &Instance) -> Result<Outcome> {
    let Some(c) = super_input(ctx, inst)? else {
        return Ok(Outcome::Skip);
    };
    let l = ctx.dom.local_contract(&c.ideal, &c.spawned)?;
    ensure!(l == cl(ctx, &c.ideal)?, "I·D_M ∩ D = {} ≠ I*", fmt(ctx, &l));
    Ok(Outcome::Pass)
}

fn run_super_regroup(ctx: &Ctx, inst: &Instance) -> Result<Outcome> {
    let list = ideals(ctx, inst)?;
    let Some(a) = certs_in_order(ctx, &list, &inst.order_a)? else {
        return Ok(Outcome::Skip);
    };
    for c in &a {
        if !is_super(ctx, &c.ideal)?.is_yes() {
            return Ok(Outcome::Skip);
        }
    }
    let Some(b) = certs_in_order(ctx, &list, &inst.order_b)? else {
        return Ok(Outcome::Skip);
    };
    let (fa, fb) = (regroup(ctx, &a)?, regroup(ctx, &b)?);
    ensure!(fa == fb, "orderings regroup differently");
    for c in &fa.factors {
        ensure!(!is_super(ctx, &c.ideal)?.is_no(), "merged factor {} not super homog", fmt(ctx, &c.ideal));
    }
    Ok(Outcome::Pass)
}

fn run_gcd_local(ctx: &Ctx, inst: &Instance) -> Result<Outcome> {
    let dom = ctx.dom;
    if !dom.is_integrally_closed() {
        return Ok(Outcome::Skip);
    }
    let xs = elements(ctx, inst)?;
    let (a, b) = (&xs[0], &xs[1]);
    let g = homog::gcd_star(dom, a, b, ctx.star)?;
    let (ad, bd) = (dom.principal(a)?, dom.principal(b)?);
    match g.outcome {
        homog::GcdOutcome::UnitWitness { maximals_a, maximals_b } => {
            ensure!(maximals_a.iter().all(|m| !maximals_b.contains(m)), "unit gcd but a shared maximal");
        }
        homog::GcdOutcome::Factors(f) => {
            for c in &f.factors {
                ensure!(!is_super(ctx, &c.ideal)?.is_no(), "factor {} not super homog", fmt(ctx, &c.ideal));
                ensure!(
                    dom.contains_element(&c.ideal, a)? && dom.contains_element(&c.ideal, b)?,
                    "factor {} misses a or b",
                    fmt(ctx, &c.ideal)
                );
                let loc = dom.local_contract(&g.ideal, &c.spawned)?;
                let ok = loc == dom.local_contract(&ad, &c.spawned)? || loc == dom.local_contract(&bd, &c.spawned)?;
                ensure!(ok, "(a, b) is not locally generated by a or b at {}", fmt(ctx, &c.spawned.ideal));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn run_almost_gcd(ctx: &Ctx, inst: &Instance) -> Result<Outcome> {
    let dom = ctx.dom;
    if !dom.is_integrally_closed() {
        return Ok(Outcome::Skip);
    }
    let Ok(group) = dom.class_group(ctx.star) else {
        return Ok(Outcome::Skip);
    };
    let xs = elements(ctx, inst)?;
    let e = group.exponent as u32;
    let v_of_powers = |n: u32| -> Result<Ideal> {
        let g = dom.ideal_from_generators(&[dom.element_pow(&xs[0], n)?, dom.element_pow(&xs[1], n)?])?;
        star::closure(dom, &g, StarOp::V)
    };
    let mut first = None;
    for n in 1..=e {
        if dom.is_principal(&v_of_powers(n)?)?.is_some() {
            first = Some(n);
            break;
        }
    }
    match first {
        Some(n) => ensure!(e.is_multiple_of(n) || dom.is_principal(&v_of_powers(e)?)?.is_some(), "exponent {n} does not divide {e}"),
        None => return Ok(Outcome::Fail(format!("no principal (aⁿ, bⁿ)_v for n ≤ {e}"))),
    }
    Ok(Outcome::Pass)
}

fn invertible_homog_report(ctx: &Ctx, inst: &Instance) -> Result<Option<(Ideal, crate::classify::TypeReport)>> {
    let i = &ideals(ctx, inst)?[0];
    if cert(ctx, i)?.is_none() || !star::is_star_invertible(ctx.dom, i, ctx.star)? {
        return Ok(None);
    }
    Ok(Some((i.clone(), classify_ideal(ctx.dom, i, ctx.star, ctx.cfg.bound)?)))
}

fn run_trivial_wf(ctx: &Ctx, inst: &Instance) -> Result<Outcome> {
    let Some((i, r)) = invertible_homog_report(ctx, inst)? else {
        return Ok(Outcome::Skip);
    };
    let principal = ctx.dom.is_principal(&i)?.is_some();
    if r.wf.is_yes() {
        ensure!(principal, "wf-homog {} is not principal", fmt(ctx, &i));
    }
    if ctx.dom.class_group(ctx.star).is_ok_and(|g| g.is_trivial()) {
        ensure!(principal, "{} not principal under a trivial class group", fmt(ctx, &i));
        ensure!(r.wf.is_yes(), "{} not wf-homog under a trivial class group", fmt(ctx, &i));
    }
    Ok(Outcome::Pass)
}

fn run_torsion_waf(ctx: &Ctx, inst: &Instance) -> Result<Outcome> {
    let Ok(group) = ctx.dom.class_group(ctx.star) else {
        return Ok(Outcome::Skip);
    };
    let Some((i, r)) = invertible_homog_report(ctx, inst)? else {
        return Ok(Outcome::Skip);
    };
    ensure!(r.waf.is_yes(), "{} not waf-homog", fmt(ctx, &i));
    let divides = |e: Option<u64>| e.is_some_and(|e| group.exponent % e == 0);
    ensure!(divides(r.waf_exp), "waf exponent {:?} does not divide {}", r.waf_exp, group.exponent);
    if r.af.is_yes() {
        ensure!(divides(r.af_exp), "af exponent {:?} does not divide {}", r.af_exp, group.exponent);
    }
    Ok(Outcome::Pass)
}

fn run_taxonomy(ctx: &Ctx, inst: &Instance) -> Result<Outcome> {
    let i = &ideals(ctx, inst)?[0];
    let mut reports = vec![classify_ideal(ctx.dom, i, ctx.star, ctx.cfg.bound)?];
    if let Some(c) = cert(ctx, i)? {
        reports.push(classify_ideal(ctx.dom, &c.spawned.ideal, ctx.star, ctx.cfg.bound)?);
    }
    for r in &reports {
        let v = r.implication_violations();
        ensure!(v.is_empty(), "{}: violated {:?}", r.ideal, v);
    }
    Ok(Outcome::Pass)
}

fn run_domain_report(ctx: &Ctx, inst: &Instance) -> Result<Outcome> {
    let xs = elements(ctx, inst)?;
    let r = classify_domain(ctx.dom, ctx.star, &xs, ctx.cfg.bound)?;
    ensure!(r.wf_cross_check, "class group and sampled principality disagree");
    ensure!(r.gcd_cross_check, "class group and sampled gcd pairs disagree");
    ensure!(r.implication_violations().is_empty(), "domain flags violate {:?}", r.implication_violations());
    for row in &r.rows {
        ensure!(row.report.implication_violations().is_empty(), "{} violates the taxonomy", row.report.ideal);
    }
    for ev in &r.evidence {
        ensure!(reverify(ctx.dom, ctx.star, ev, ctx.cfg.bound)?, "evidence {ev:?} does not replay");
    }
    Ok(Outcome::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(trials: u32, stars: Vec<StarOp>) -> SuiteConfig {
        SuiteConfig {
            seed: 7,
            trials,
            stars,
            ..Default::default()
        }
    }

    #[test]
    fn config_validation() {
        assert!(small(0, vec![StarOp::D]).validate().is_err());
        assert!(small(1, vec![]).validate().is_err());
        let mut c = small(1, vec![StarOp::D]);
        c.only = vec!["nope".into()];
        assert!(c.validate().is_err());
    }

    #[test]
    fn seeds_differ() {
        let a = trial_seed(7, 0, StarOp::D, 0);
        assert_ne!(a, trial_seed(7, 0, StarOp::D, 1));
        assert_ne!(a, trial_seed(7, 1, StarOp::D, 0));
        assert_ne!(a, trial_seed(7, 0, StarOp::V, 0));
        assert_ne!(a, trial_seed(8, 0, StarOp::D, 0));
    }

    #[test]
    fn small_suites_pass() {
        let d = Domain::quadratic(-5, 1).unwrap();
        let r = run_suite(&d, &small(6, vec![StarOp::D, StarOp::W])).unwrap();
        let bad: Vec<_> = r.checks.iter().filter(|c| c.failures > 0).collect();
        assert!(bad.is_empty(), "{bad:#?}");
        let m = Domain::krull_monoid(&[2], &[("p", &[1]), ("q", &[1]), ("r", &[0])]).unwrap();
        let r = run_suite(&m, &small(6, vec![StarOp::T])).unwrap();
        let bad: Vec<_> = r.checks.iter().filter(|c| c.failures > 0).collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }
}
