//! Verification suites swept over every homeomorphism class on `n` points.
//!
//! Hard suites check statements that must hold on all finite spaces in
//! their hypothesis; exploratory suites report counterexamples as findings.
//! Auxiliary inputs (subsets, families, closed pairs) are exhaustive for
//! `n <= 4` and sampled for `n = 5` by a ChaCha generator keyed on the seed
//! and the class code, so parallel sweeps draw the same inputs.

mod suites;

use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::catalog::{topology_classes, CanonicalCode};
use crate::error::{Error, Result};
use crate::lattice::DEFAULT_ENUMERATION_LIMIT;
use crate::pointset::PointSet;
use crate::space::FiniteSpace;

pub use suites::*;

/// Largest `n` with exhaustive auxiliary inputs.
pub const EXHAUSTIVE_LIMIT: usize = 4;
/// Largest `n` the harness accepts.
pub const HARNESS_LIMIT: usize = DEFAULT_ENUMERATION_LIMIT;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteKind {
    Hard,
    Exploratory,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    /// Violations of an exploratory suite.
    Findings,
    /// Violations of a hard suite.
    Fail,
    /// A computation inside the sweep returned an error.
    Error,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Findings => "FINDINGS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub code: CanonicalCode,
    pub inputs: Value,
    pub expected: String,
    pub observed: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub kind: SuiteKind,
    pub n: usize,
    pub seed: u64,
    pub samples: usize,
    pub instances_checked: usize,
    pub hypothesis_satisfied: usize,
    pub violations: Vec<Violation>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl VerificationReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// One-line summary for terminals.
    pub fn summary(&self) -> String {
        format!(
            "{} n={} {}: {} instances, {} in hypothesis, {} violations",
            self.suite,
            self.n,
            self.status,
            self.instances_checked,
            self.hypothesis_satisfied,
            self.violations.len()
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Inputs drawn per class and input kind when sampling.
    pub samples: usize,
    /// Largest family of subsets tried by the intersection suites.
    pub max_family: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0,
            samples: 48,
            max_family: 3,
        }
    }
}

/// Source of auxiliary inputs for one class.
pub struct Sampler {
    exhaustive: bool,
    samples: usize,
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(n: usize, code: &CanonicalCode, options: &SuiteOptions) -> Self {
        let mut h = Sha256::new();
        h.update(options.seed.to_le_bytes());
        h.update(code.to_string().as_bytes());
        Sampler {
            exhaustive: n <= EXHAUSTIVE_LIMIT,
            samples: options.samples,
            rng: ChaCha8Rng::from_seed(h.finalize().into()),
        }
    }

    pub fn is_exhaustive(&self) -> bool {
        self.exhaustive
    }

    /// All items when exhaustive, otherwise a sample keeping the original order.
    pub fn pick<T>(&mut self, items: Vec<T>) -> Vec<T> {
        if self.exhaustive || items.len() <= self.samples {
            return items;
        }
        let mut idx: Vec<usize> = sample(&mut self.rng, items.len(), self.samples).into_vec();
        idx.sort_unstable();
        let mut slots: Vec<Option<T>> = items.into_iter().map(Some).collect();
        idx.into_iter().map(|i| slots[i].take().unwrap()).collect()
    }
}

/// Per-class tallies returned by a suite.
#[derive(Clone, Debug, Default)]
pub struct ClassOutcome {
    pub instances: usize,
    pub satisfied: usize,
    pub findings: Vec<Finding>,
}

impl ClassOutcome {
    /// Counts one instance; returns `hypothesis` so callers can branch on it.
    pub fn instance(&mut self, hypothesis: bool) -> bool {
        self.instances += 1;
        if hypothesis {
            self.satisfied += 1;
        }
        hypothesis
    }

    pub fn find(&mut self, inputs: Value, expected: impl Into<String>, observed: impl Into<String>) {
        self.findings.push(Finding {
            inputs,
            expected: expected.into(),
            observed: observed.into(),
        });
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Finding {
    pub inputs: Value,
    pub expected: String,
    pub observed: String,
}

pub trait Suite: Send + Sync {
    fn name(&self) -> &'static str;
    fn kind(&self) -> SuiteKind;
    fn check_class(&self, space: &FiniteSpace, sampler: &mut Sampler, options: &SuiteOptions) -> Result<ClassOutcome>;
}

pub struct SuiteRegistry {
    suites: BTreeMap<String, Box<dyn Suite>>,
    order: Vec<String>,
}

impl SuiteRegistry {
    pub fn new() -> Self {
        SuiteRegistry {
            suites: BTreeMap::new(),
            order: Vec::new(),
        }
    }

    pub fn standard() -> Self {
        let mut r = Self::new();
        for s in suites::standard_suites() {
            r.register(s);
        }
        r
    }

    pub fn register(&mut self, suite: Box<dyn Suite>) {
        let name = suite.name().to_string();
        if self.suites.insert(name.clone(), suite).is_none() {
            self.order.push(name);
        }
    }

    pub fn get(&self, name: &str) -> Result<&dyn Suite> {
        self.suites
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| Error::UnknownSuite(name.to_string()))
    }

    /// Names in registration order.
    pub fn names(&self) -> Vec<&str> {
        self.order.iter().map(String::as_str).collect()
    }

    pub fn names_of_kind(&self, kind: SuiteKind) -> Vec<&str> {
        self.order
            .iter()
            .filter(|n| self.suites[*n].kind() == kind)
            .map(String::as_str)
            .collect()
    }

    pub fn run(&self, name: &str, n: usize, options: &SuiteOptions) -> Result<VerificationReport> {
        let suite = self.get(name)?;
        let classes = harness_classes(n)?;
        Ok(run_over(suite, n, &classes, options))
    }

    /// Every registered suite, sharing one enumeration of the classes.
    pub fn run_all(&self, n: usize, options: &SuiteOptions) -> Result<Vec<VerificationReport>> {
        let classes = harness_classes(n)?;
        Ok(self
            .order
            .iter()
            .map(|name| run_over(self.suites[name].as_ref(), n, &classes, options))
            .collect())
    }

    /// Re-runs a suite on the class of a logged violation and reports whether
    /// the same violation comes back.
    pub fn reproduce(&self, report: &VerificationReport, violation: &Violation) -> Result<bool> {
        let suite = self.get(&report.suite)?;
        let options = SuiteOptions {
            seed: report.seed,
            samples: report.samples,
            ..SuiteOptions::default()
        };
        let space = violation.code.decode()?;
        let mut sampler = Sampler::new(space.n(), &violation.code, &options);
        let out = suite.check_class(&space, &mut sampler, &options)?;
        Ok(out.findings.iter().any(|f| {
            f.inputs == violation.inputs && f.expected == violation.expected && f.observed == violation.observed
        }))
    }
}

impl Default for SuiteRegistry {
    fn default() -> Self {
        Self::standard()
    }
}

fn harness_classes(n: usize) -> Result<Vec<(CanonicalCode, FiniteSpace)>> {
    if n > HARNESS_LIMIT {
        return Err(Error::SizeGuardExceeded {
            what: "verification sweep",
            n,
            limit: HARNESS_LIMIT,
        });
    }
    Ok(topology_classes(n, HARNESS_LIMIT)?
        .into_iter()
        .map(|c| (c.code, c.space))
        .collect())
}

fn run_over(
    suite: &dyn Suite,
    n: usize,
    classes: &[(CanonicalCode, FiniteSpace)],
    options: &SuiteOptions,
) -> VerificationReport {
    let outcomes: Vec<Result<ClassOutcome>> = classes
        .par_iter()
        .map(|(code, space)| {
            let mut sampler = Sampler::new(n, code, options);
            suite.check_class(space, &mut sampler, options)
        })
        .collect();
    let mut report = VerificationReport {
        suite: suite.name().to_string(),
        kind: suite.kind(),
        n,
        seed: options.seed,
        samples: options.samples,
        instances_checked: 0,
        hypothesis_satisfied: 0,
        violations: Vec::new(),
        status: Status::Pass,
        error: None,
    };
    for ((code, _), outcome) in classes.iter().zip(outcomes) {
        match outcome {
            Ok(o) => {
                report.instances_checked += o.instances;
                report.hypothesis_satisfied += o.satisfied;
                report.violations.extend(o.findings.into_iter().map(|f| Violation {
                    code: code.clone(),
                    inputs: f.inputs,
                    expected: f.expected,
                    observed: f.observed,
                }));
            }
            Err(e) if report.error.is_none() => report.error = Some(format!("{code}: {e}")),
            Err(_) => {}
        }
    }
    report.status = if report.error.is_some() {
        Status::Error
    } else if report.violations.is_empty() {
        Status::Pass
    } else if suite.kind() == SuiteKind::Hard {
        Status::Fail
    } else {
        Status::Findings
    };
    report
}

/// A point set as a JSON index list.
pub(crate) fn set_json(s: PointSet) -> Value {
    Value::from(s.to_vec())
}
