//! The decision engine: evaluate every test of a space, combine them into a
//! verdict with a readable derivation, and scan parameter boxes.
//!
//! "Excluded" means the implemented tests prove that no compact quotient
//! exists. "Not excluded" carries no claim of existence.

use std::fmt;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::catalog::{
    known_existence, tests_for, Arity, ExistenceNote, FamilyId, ObstructionTest, Recipe, SpaceSpec,
    Summand, SupportingFact,
};
use crate::jorders::{j_order, ProjectiveKind};
use crate::kring::cp::working_degree;
use crate::kring::{
    cp_realify_normalize, cp_restriction_classes, extract_divisibility, hp_normalize,
    hp_restriction_classes, pairing, rp_restriction_classes, CpClass, CpMixedClass,
    DivisibilityCondition, HpClass, ObstructionForm, QuatClass, RpClass,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Excludes,
    DoesNotExclude,
    RangeRuleExcludes,
}

impl Outcome {
    pub fn excludes(self) -> bool {
        !matches!(self, Outcome::DoesNotExclude)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Excludes => "excludes",
            Outcome::DoesNotExclude => "does not exclude",
            Outcome::RangeRuleExcludes => "excludes (range rule)",
        })
    }
}

/// One evaluated test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TestResult {
    pub test: ObstructionTest,
    pub form: Option<ObstructionForm>,
    pub condition: Option<DivisibilityCondition>,
    pub outcome: Outcome,
    /// The J-order the condition is taken against, `None` for range rules.
    #[serde(serialize_with = "crate::serde_big::opt_biguint")]
    pub j_value: Option<BigUint>,
    /// E.g. `[N]|RP^3 = 3 + 4·t`, or `2·[N]|HP^2 = ...` for doubled forms.
    pub equation: Option<String>,
}

impl TestResult {
    pub fn citation(&self) -> &str {
        &self.test.citation
    }
}

/// The combined outcome for one space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub spec: SpaceSpec,
    /// `G/H` with the parameters substituted.
    pub space: String,
    pub associated: Option<String>,
    pub excluded: bool,
    #[serde(rename = "tests")]
    pub results: Vec<TestResult>,
    pub existence: Option<ExistenceNote>,
}

pub const NOT_EXCLUDED_FOOTER: &str =
    "\"not excluded\" only means these tests are inconclusive; it is never a claim of existence";

impl Verdict {
    pub fn headline(&self) -> &'static str {
        if self.excluded {
            "EXCLUDED"
        } else {
            "NOT EXCLUDED BY THESE TESTS"
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.spec, self.space)?;
        if let Some(a) = &self.associated {
            writeln!(f, "  same verdict for {a}")?;
        }
        for (i, r) in self.results.iter().enumerate() {
            let t = &r.test;
            write!(f, "  test {}: {}", i + 1, t.kind)?;
            if let Some(j) = t.j_order {
                write!(f, " on {}^{}", j.field.symbol(), j.n)?;
            }
            if let Some(via) = t.via {
                write!(f, " (via {via})")?;
            }
            writeln!(f)?;
            writeln!(f, "    bundle: {}", t.bundle())?;
            writeln!(f, "    reason: {}", t.citation)?;
            if let Recipe::RangeRule { facts } = &t.recipe {
                writeln!(f, "    cited, supporting facts verified:")?;
                for fact in facts {
                    writeln!(f, "      {fact}")?;
                }
            }
            if let Some(eq) = &r.equation {
                writeln!(f, "    {eq}")?;
            }
            if let (Some(j), Some(value), Some(c)) = (t.j_order, &r.j_value, &r.condition) {
                let kind = if c.exact {
                    "exact".to_string()
                } else {
                    format!("odd part of {value}")
                };
                writeln!(f, "    {j} = {value}; need {c} ({kind})")?;
            }
            writeln!(f, "    => {}", r.outcome)?;
        }
        writeln!(f, "verdict: {}", self.headline())?;
        if let Some(note) = &self.existence {
            writeln!(
                f,
                "known compact quotients: {} [{}]",
                note.description, note.reference
            )?;
        }
        if !self.excluded {
            writeln!(f, "note: {NOT_EXCLUDED_FOOTER}")?;
        }
        Ok(())
    }
}

fn not_supported(what: &str) -> Error {
    Error::Invariant(format!("recipe not supported: {what}"))
}

fn rp_summand(r: &crate::kring::RpRestrictions, s: Summand) -> Result<RpClass> {
    match s {
        Summand::Sym2 => Ok(r.sym2.clone()),
        Summand::Lambda2 => Ok(r.lambda2.clone()),
        _ => Err(not_supported("hermitian summand over RP")),
    }
}

fn cp_summand(r: &crate::kring::CpRestrictions, s: Summand) -> Result<CpClass> {
    match s {
        Summand::Sym2 => Ok(r.sym2.clone()),
        Summand::Lambda2 => Ok(r.lambda2.clone()),
        _ => Err(not_supported("skew-hermitian summand over CP")),
    }
}

/// Rank of `Sym^2` or `Λ^2` of a rank `n` bundle.
fn square_rank(n: u64, s: Summand) -> BigInt {
    let n = BigInt::from(n);
    match s {
        Summand::Sym2 => &n * (&n + 1) / 2,
        _ => &n * (&n - 1) / 2,
    }
}

/// Builds the restricted class of a test and rewrites it in normal form.
pub fn evaluate_form(test: &ObstructionTest) -> Result<ObstructionForm> {
    use ProjectiveKind::{Cp, Hp, Rp};
    let (p, q) = (test.p, test.q);
    match &test.recipe {
        Recipe::Restriction {
            field: Rp, summand, ..
        } => {
            let r = rp_restriction_classes(p, q)?;
            let mut x = r.tensor.clone();
            if let Some(s) = summand {
                x = x + rp_summand(&r, *s)?;
            }
            Ok(ObstructionForm::from_rp(&x))
        }
        Recipe::Restriction {
            field: Cp,
            conj,
            summand,
        } => {
            let r = cp_restriction_classes(p, q)?;
            let base = if *conj {
                r.conj_tensor.clone()
            } else {
                CpMixedClass::from(r.tensor.clone())
            };
            match summand {
                None => cp_realify_normalize(&base),
                Some(Summand::Herm) => cp_realify_normalize(&base)?.checked_add(&r.herm),
                Some(s) => {
                    let extra = CpMixedClass::from(cp_summand(&r, *s)?);
                    cp_realify_normalize(&base.checked_add(&extra)?)
                }
            }
        }
        Recipe::Restriction {
            field: Hp, summand, ..
        } => {
            let r = hp_restriction_classes(p, q)?;
            let extra = match summand {
                None => HpClass::zero(),
                Some(Summand::Herm) => r.herm.clone(),
                Some(Summand::SkewHerm) => r.skew_herm.clone(),
                Some(_) => return Err(not_supported("Sym^2/Λ^2 summand over HP")),
            };
            Ok(hp_normalize(&(r.tensor.clone() + extra)))
        }
        Recipe::Complement { field, summand } => {
            // on KP^q the complement of Taut restricts to L + (p - 1)
            let rank = square_rank(p + q, *summand);
            match field {
                Rp => {
                    let r = rp_restriction_classes(q, p)?;
                    Ok(ObstructionForm::from_rp(
                        &(RpClass::scalar(rank) - rp_summand(&r, *summand)?),
                    ))
                }
                Cp => {
                    let r = cp_restriction_classes(q, p)?;
                    let s = cp_summand(&r, *summand)?;
                    let x = CpClass::constant(s.degree(), rank).checked_sub(&s)?;
                    cp_realify_normalize(&x.into())
                }
                Hp => Err(not_supported("complement over HP")),
            }
        }
        Recipe::TautMultiple { field, n } => {
            let k = BigInt::from(p);
            match field {
                Rp => Ok(ObstructionForm::from_rp(&RpClass::taut()).scale(&k)),
                Cp => {
                    let x = CpClass::taut(working_degree(*n)).scale(&k);
                    cp_realify_normalize(&x.into())
                }
                Hp => {
                    let x = pairing(&QuatClass::taut(), &QuatClass::trivial(1)).scale(&k);
                    Ok(hp_normalize(&x))
                }
            }
        }
        Recipe::RangeRule { .. } => Err(not_supported("range rules have no normal form")),
    }
}

fn verify_facts(facts: &[SupportingFact]) -> Result<()> {
    for fact in facts {
        if !fact.verify()? {
            return Err(Error::Invariant(format!(
                "supporting fact of a range rule does not hold: {fact}"
            )));
        }
    }
    Ok(())
}

/// Evaluates a single test.
pub fn evaluate_test(test: &ObstructionTest) -> Result<TestResult> {
    if let Recipe::RangeRule { facts } = &test.recipe {
        verify_facts(facts)?;
        return Ok(TestResult {
            test: test.clone(),
            form: None,
            condition: None,
            outcome: Outcome::RangeRuleExcludes,
            j_value: None,
            equation: None,
        });
    }
    let jref = test
        .j_order
        .ok_or_else(|| Error::Invariant(format!("test {} has no J-order", test.label())))?;
    let form = evaluate_form(test)?;
    let j = j_order(jref.field, jref.n)?;
    let condition = extract_divisibility(&form, &j)?;
    let prefix = if form.doubled { "2·" } else { "" };
    let equation = format!("{prefix}{} = {form}", test.label());
    let outcome = if condition.satisfied {
        Outcome::DoesNotExclude
    } else {
        Outcome::Excludes
    };
    Ok(TestResult {
        test: test.clone(),
        form: Some(form),
        condition: Some(condition),
        outcome,
        j_value: Some(j.value().clone()),
        equation: Some(equation),
    })
}

/// Replaces linear expressions in `p`, `q`, `q'` that appear as arguments
/// (right after `(` or `,`) by their values.
fn instantiate(template: &str, p: u64, q: u64, q2: u64) -> String {
    let chars: Vec<char> = template.chars().collect();
    let mut out = String::new();
    let mut i = 0;
    while i < chars.len() {
        let at_arg = i > 0 && matches!(chars[i - 1], '(' | ',');
        if at_arg {
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_digit() || "pq'+".contains(chars[j])) {
                j += 1;
            }
            let run: String = chars[i..j].iter().collect();
            if run.contains(['p', 'q']) {
                if let Some(v) = eval_linear(&run, p, q, q2) {
                    out.push_str(&v.to_string());
                    i = j;
                    continue;
                }
            }
        }
        out.push(chars[i]);
        i += 1;
    }
    out
}

fn eval_linear(expr: &str, p: u64, q: u64, q2: u64) -> Option<u64> {
    let mut total = 0u64;
    for term in expr.split('+') {
        let (coeff, var) = match term.find(['p', 'q']) {
            Some(k) => (&term[..k], &term[k..]),
            None => (term, ""),
        };
        let c: u64 = if coeff.is_empty() {
            1
        } else {
            coeff.parse().ok()?
        };
        let v = match var {
            "" => 1,
            "p" => p,
            "q" => q,
            "q'" => q2,
            _ => return None,
        };
        total = total.checked_add(c.checked_mul(v)?)?;
    }
    Some(total)
}

fn space_names(spec: &SpaceSpec) -> (String, Option<String>) {
    let info = spec.family.info();
    let (p, q, q2) = match spec.family {
        FamilyId::ComplexSphere => (spec.p, 0, 0),
        _ => (spec.p, spec.q.unwrap_or(0), spec.q2.unwrap_or(1)),
    };
    let sub = |s: &str| {
        if spec.family == FamilyId::ComplexSphere {
            s.replace("n+1", &(p + 1).to_string())
                .replace("(n,", &format!("({p},"))
        } else {
            instantiate(s, p, q, q2)
        }
    };
    let g = sub(info.g);
    let main = format!("{g}/{}", wrap(&sub(info.h)));
    let assoc = info
        .h_assoc
        .filter(|ha| *ha != info.h)
        .map(|ha| format!("{g}/{}", sub(ha)));
    (main, assoc)
}

fn wrap(h: &str) -> String {
    if h.contains('×') {
        format!("({h})")
    } else {
        h.to_string()
    }
}

/// Evaluates every test of `spec`; all tests run even after one excludes.
pub fn check(spec: &SpaceSpec) -> Result<Verdict> {
    let tests = tests_for(spec)?;
    let results = tests
        .iter()
        .map(evaluate_test)
        .collect::<Result<Vec<_>>>()?;
    let excluded = results.iter().any(|r| r.outcome.excludes());
    let existence = known_existence(spec);
    if excluded && existence.is_some() {
        return Err(Error::Invariant(format!(
            "{spec} is excluded by the tests but has a known compact quotient"
        )));
    }
    let (space, associated) = space_names(spec);
    Ok(Verdict {
        spec: *spec,
        space,
        associated,
        excluded,
        results,
        existence,
    })
}

/// All in-domain parameters in the box `1..=pmax × 1..=qmax` that no test
/// excludes, sorted. One-parameter families only use `pmax`; three-parameter
/// families take `q'` from `1..=qmax` as well.
pub fn scan_exceptions(family: FamilyId, pmax: u64, qmax: u64) -> Result<Vec<SpaceSpec>> {
    if pmax == 0 || qmax == 0 {
        return Err(Error::invalid("scan bounds must be at least 1"));
    }
    let mut candidates = Vec::new();
    for p in 1..=pmax {
        match family.arity() {
            Arity::One => candidates.push(SpaceSpec::single(family, p)),
            Arity::Two => candidates.extend((1..=qmax).map(|q| SpaceSpec::pq(family, p, q))),
            Arity::Three => {
                for q in 1..=qmax {
                    candidates.extend((1..=qmax).map(|q2| SpaceSpec::grass(family, p, q, q2)));
                }
            }
        }
    }
    let mut survivors = Vec::new();
    for spec in candidates {
        if spec.validate().is_err() {
            continue;
        }
        if !check(&spec)?.excluded {
            survivors.push(spec);
        }
    }
    survivors.sort();
    Ok(survivors)
}

/// One row of the admissibility table for `H^{p,q}_K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibleRow {
    pub q: u64,
    /// Compact quotients of `H^{p,q}_K` force this to divide `p`.
    #[serde(serialize_with = "crate::serde_big::biguint")]
    pub divisor: BigUint,
}

/// `j_{KP^q}` for `q = 1..=qmax`; for `K = R` this is `2^nu(q)`.
pub fn hpq_admissible_table(field: ProjectiveKind, qmax: u64) -> Result<Vec<AdmissibleRow>> {
    if qmax == 0 {
        return Err(Error::invalid("qmax must be at least 1"));
    }
    (1..=qmax)
        .map(|q| {
            Ok(AdmissibleRow {
                q,
                divisor: j_order(field, q)?.value().clone(),
            })
        })
        .collect()
}

/// Renders a scan result as `(1,1) (3,1)`, or `(none)`.
pub fn format_exceptions(specs: &[SpaceSpec]) -> String {
    if specs.is_empty() {
        return "(none)".to_string();
    }
    let mut out = String::new();
    for (i, s) in specs.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{}", s.params());
    }
    out
}
