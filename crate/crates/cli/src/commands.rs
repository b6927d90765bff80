use std::collections::BTreeMap;
use std::path::Path;

use affdet::achievers::{achieve, decide_membership, is_classified, Decision, Verdict, Witness};
use affdet::detengine::{check_start_independence, compute_a, compute_b, compute_report_with, DetReport};
use affdet::element::GroupRingElement;
use affdet::field::{exponent_vector, field_spec_for_q, FieldSpec};
use affdet::oracle::brute_force_d_with_cap;
use affdet::search::{reproduce_section, ReproduceReport, Section};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::config::Config;
use crate::failure::Failure;

/// Accepted element files: the canonical serialization, or `q` plus notation.
#[derive(Deserialize)]
#[serde(untagged)]
enum ElementFile {
    Full(GroupRingElement),
    Notation { q: u64, element: String },
}

pub fn read_element(path: &Path) -> Result<GroupRingElement, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let file: ElementFile = serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("{}: not an element file ({e})", path.display())))?;
    match file {
        ElementFile::Full(e) => Ok(e),
        ElementFile::Notation { q, element } => Ok(GroupRingElement::parse(&field_spec_for_q(q)?, &element)?),
    }
}

pub fn parse_int(s: &str, what: &str) -> Result<BigInt, Failure> {
    s.trim().parse().map_err(|_| Failure::Input(format!("{what} must be an integer, got {s:?}")))
}

pub fn compute(cfg: &Config, path: &Path, oracle: bool) -> Result<(DetReport, bool), Failure> {
    let elem = read_element(path)?;
    let report = compute_report_with(&elem, oracle, &cfg.caps())?;
    let ok = report.all_ok();
    Ok((report, ok))
}

#[derive(Default, Serialize)]
pub struct Tally {
    pub passed: usize,
    pub total: usize,
}

impl Tally {
    fn record(&mut self, ok: bool) {
        self.total += 1;
        self.passed += ok as usize;
    }

    fn all(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Serialize)]
pub struct VerifySummary {
    pub q: u64,
    pub samples: usize,
    pub coeff_bound: i64,
    pub seed: u64,
    pub congruence: Tally,
    pub identity: Tally,
    pub start_independence: Tally,
    pub oracle: Option<Tally>,
    pub zero_case: Value,
    pub counterexample: Option<String>,
    pub pass: bool,
}

struct SampleOutcome {
    congruence: bool,
    identity: bool,
    start: bool,
    oracle: Option<bool>,
}

impl SampleOutcome {
    fn ok(&self) -> bool {
        self.congruence && self.identity && self.start && self.oracle != Some(false)
    }
}

fn check_sample(
    cfg: &Config,
    elem: &GroupRingElement,
    starts: Option<&[Vec<u64>]>,
    oracle: bool,
) -> affdet::Result<SampleOutcome> {
    let report = compute_report_with(elem, false, &cfg.caps())?;
    let start = check_start_independence(elem, starts)?;
    let oracle = if oracle { Some(brute_force_d_with_cap(elem, cfg.oracle_cap)? == report.d) } else { None };
    Ok(SampleOutcome { congruence: report.congruence_ok, identity: report.avg_identity_ok, start, oracle })
}

/// `1 + Y_0 + ... + Y_0^{p-1}`, which must give `(p^{q-1}, 0)`.
fn zero_case(spec: &FieldSpec) -> Result<(Value, bool), Failure> {
    let y = if spec.k() <= 3 { "y" } else { "y0" };
    let src = (0..spec.p())
        .map(|e| match e {
            0 => "1".to_string(),
            1 => y.to_string(),
            _ => format!("{y}^{e}"),
        })
        .collect::<Vec<_>>()
        .join(" + ");
    let elem = GroupRingElement::parse(spec, &src)?;
    let a = compute_a(&elem);
    let b = compute_b(&elem)?;
    let ok = a == Pow::pow(BigInt::from(spec.p()), spec.n() as u32) && b.is_zero();
    Ok((json!({"element": src, "A": a.to_string(), "B": b.to_string(), "ok": ok}), ok))
}

pub fn verify(
    cfg: &Config,
    q: u64,
    samples: usize,
    bound: i64,
    oracle: bool,
    dump: &Path,
) -> Result<VerifySummary, Failure> {
    if bound < 0 {
        return Err(Failure::Input("coefficient bound must be nonnegative".into()));
    }
    let spec = field_spec_for_q(q)?;
    let order = q * (q - 1);
    if oracle && order > cfg.oracle_cap {
        return Err(affdet::Error::CapExceeded { what: "group order", size: order, cap: cfg.oracle_cap }.into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let cases: Vec<(GroupRingElement, Option<Vec<Vec<u64>>>)> = (0..samples)
        .map(|_| {
            let e = GroupRingElement::random(&spec, bound, &mut rng);
            let starts = (q > 9).then(|| {
                (0..3)
                    .map(|_| exponent_vector(spec.p(), spec.k() as usize, rng.gen_range(1..spec.y_count())))
                    .collect()
            });
            (e, starts)
        })
        .collect();
    let outcomes: Vec<SampleOutcome> = cases
        .par_iter()
        .map(|(e, starts)| check_sample(cfg, e, starts.as_deref(), oracle))
        .collect::<affdet::Result<_>>()?;

    let mut summary = VerifySummary {
        q,
        samples,
        coeff_bound: bound,
        seed: cfg.seed,
        congruence: Tally::default(),
        identity: Tally::default(),
        start_independence: Tally::default(),
        oracle: oracle.then(Tally::default),
        zero_case: Value::Null,
        counterexample: None,
        pass: false,
    };
    for o in &outcomes {
        summary.congruence.record(o.congruence);
        summary.identity.record(o.identity);
        summary.start_independence.record(o.start);
        if let (Some(t), Some(ok)) = (summary.oracle.as_mut(), o.oracle) {
            t.record(ok);
        }
    }
    let (zero, zero_ok) = zero_case(&spec)?;
    summary.zero_case = zero;
    if let Some(i) = outcomes.iter().position(|o| !o.ok()) {
        let text = serde_json::to_string_pretty(&cases[i].0).expect("element serializes");
        std::fs::write(dump, text + "\n")
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", dump.display())))?;
        summary.counterexample = Some(dump.display().to_string());
    }
    summary.pass = summary.congruence.all()
        && summary.identity.all()
        && summary.start_independence.all()
        && summary.oracle.as_ref().is_none_or(Tally::all)
        && zero_ok;
    Ok(summary)
}

pub fn achieve_pair(q: u64, a: &BigInt, b: &BigInt) -> Result<Witness, Failure> {
    let spec = field_spec_for_q(q)?;
    Ok(achieve(&spec, a, b)?)
}

pub fn decide(q: u64, d: &BigInt) -> Result<Decision, Failure> {
    let spec = field_spec_for_q(q)?;
    Ok(decide_membership(&spec, d)?)
}

pub fn reproduce(section: &str) -> Result<ReproduceReport, Failure> {
    Ok(reproduce_section(Section::parse(section)?)?)
}

/// One distinct determinant found by `classify`.
#[derive(Clone)]
struct Hit {
    index: u64,
    a: BigInt,
    b: BigInt,
}

#[derive(Default)]
struct Found {
    hits: BTreeMap<BigInt, Hit>,
    congruence_failures: u64,
}

impl Found {
    fn merge(mut self, other: Found) -> Found {
        self.congruence_failures += other.congruence_failures;
        for (d, h) in other.hits {
            match self.hits.get(&d) {
                Some(old) if old.index <= h.index => {}
                _ => {
                    self.hits.insert(d, h);
                }
            }
        }
        self
    }
}

pub struct Classification {
    pub lines: Vec<Value>,
    pub pass: bool,
}

fn enumerated_element(spec: &FieldSpec, bound: i64, index: u64, exhaustive: bool, seed: u64) -> GroupRingElement {
    if exhaustive {
        let base = (2 * bound + 1) as u64;
        let mut rest = index;
        let coeffs = (0..spec.n() * spec.y_count())
            .map(|_| {
                let digit = rest % base;
                rest /= base;
                BigInt::from(digit as i64 - bound)
            })
            .collect();
        GroupRingElement::from_coeffs(spec.clone(), coeffs).expect("length matches")
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        GroupRingElement::random(spec, bound, &mut rng)
    }
}

pub fn classify(cfg: &Config, q: u64, bound: i64, max_abs: &BigInt, limit: u64) -> Result<Classification, Failure> {
    if bound < 0 {
        return Err(Failure::Input("coefficient bound must be nonnegative".into()));
    }
    let spec = field_spec_for_q(q)?;
    let len = (spec.n() * spec.y_count()) as u32;
    let space = ((2 * bound + 1) as u64).checked_pow(len);
    let exhaustive = space.is_some_and(|s| s <= limit);
    let count = if exhaustive { space.unwrap() } else { limit };
    let qb = BigInt::from(q);
    let exp = spec.n() as u32;

    let found = (0..count)
        .into_par_iter()
        .fold(Found::default, |mut acc, i| {
            let e = enumerated_element(&spec, bound, i, exhaustive, cfg.seed);
            let a = compute_a(&e);
            let b = compute_b(&e).expect("determinant of an integral element");
            if !(&b - &a).is_multiple_of(&qb) {
                acc.congruence_failures += 1;
            }
            let d = &a * Pow::pow(&b, exp);
            if d.abs() <= *max_abs {
                let hit = Hit { index: i, a, b };
                acc = acc.merge(Found { hits: BTreeMap::from([(d, hit)]), congruence_failures: 0 });
            }
            acc
        })
        .reduce(Found::default, Found::merge);

    let classified = is_classified(q);
    let verdicts: Vec<Option<Verdict>> = found
        .hits
        .par_iter()
        .map(|(d, _)| {
            classified.then(|| decide_membership(&spec, d).map(|r| r.verdict)).transpose()
        })
        .collect::<affdet::Result<_>>()?;

    let mut lines = Vec::new();
    let mut conflicts = 0u64;
    for ((d, hit), verdict) in found.hits.iter().zip(&verdicts) {
        if *verdict == Some(Verdict::No) {
            conflicts += 1;
        }
        let e = enumerated_element(&spec, bound, hit.index, exhaustive, cfg.seed);
        lines.push(json!({
            "D": d.to_string(),
            "A": hit.a.to_string(),
            "B": hit.b.to_string(),
            "decider": verdict,
            "witness": e.to_notation(),
        }));
    }
    let pass = found.congruence_failures == 0 && conflicts == 0;
    lines.push(json!({
        "summary": {
            "q": q,
            "coeff_bound": bound,
            "max_abs": max_abs.to_string(),
            "exhaustive": exhaustive,
            "enumerated": count,
            "seed": cfg.seed,
            "distinct_D": found.hits.len(),
            "congruence_failures": found.congruence_failures,
            "decider_conflicts": if classified { Some(conflicts) } else { None },
            "pass": pass,
        }
    }));
    Ok(Classification { lines, pass })
}
