//! Executable identity checks binding the combinatorial, monomial, and
//! toric layers, with machine-readable reports.
//!
//! Every check returns a [`CheckReport`]. A `fail` verdict always carries
//! a concrete witness (an exponent vector, a weight, or a curve of base
//! points); a `skipped` verdict states the violated precondition.
//! Randomized suites record their seed in the report.

mod checks;
mod random;
mod suite;

pub use checks::{
    check_adjoint_product_factor, check_adjoint_theorem, check_colon_duality,
    check_duality_colength, check_injectivity, check_maximal_pullout, check_product_inclusion,
    check_subadditivity, check_transform_commutes, check_vanishing, ColonDualityParams,
};
pub use random::{random_d2_m_primary, random_d3_finitely_supported};
pub use suite::{
    default_suite, exit_code, run_check, run_suite, sweep_csv, SuiteEntry, SweepParams,
};

use crate::monomial::{CurveWitness, MonomialIdeal};
use crate::toric::CohomOptions;
use serde::{Deserialize, Serialize};
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// An exponent vector separating two ideals.
    Monomial { exponents: Vec<i64> },
    /// A weight with an unexpected cohomology contribution.
    Weight { weight: Vec<i64> },
    /// A positive-dimensional base locus.
    Curve { curve: CurveWitness },
    Note { text: String },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub inputs: serde_json::Value,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub details: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub time_ms: u128,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn one_line(&self) -> String {
        let tag = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "SKIP",
            Verdict::Inconclusive => "INCONCLUSIVE",
        };
        let mut line = format!("[{tag}] {} ({} ms)", self.name, self.time_ms);
        if let Some(w) = &self.witness {
            line.push_str(&format!(" witness: {}", witness_text(w)));
        }
        line
    }
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Monomial { exponents } => format!("monomial {exponents:?}"),
        Witness::Weight { weight } => format!("weight {weight:?}"),
        Witness::Curve { curve } => format!(
            "curve in chart {:?}: coordinates {:?} of {} vanish",
            curve.chart_path, curve.vanishing, curve.transform
        ),
        Witness::Note { text } => text.clone(),
    }
}

/// Incremental report builder used by all checks.
pub(crate) struct Runner {
    name: String,
    inputs: serde_json::Value,
    details: Vec<String>,
    witness: Option<Witness>,
    failed: bool,
    seed: Option<u64>,
    start: Instant,
}

impl Runner {
    pub(crate) fn new(name: &str, inputs: serde_json::Value) -> Self {
        Runner {
            name: name.into(),
            inputs,
            details: Vec::new(),
            witness: None,
            failed: false,
            seed: None,
            start: Instant::now(),
        }
    }

    pub(crate) fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub(crate) fn note(&mut self, line: impl Into<String>) {
        self.details.push(line.into());
    }

    /// Record a named assertion; keeps the first failure's witness.
    pub(crate) fn claim(&mut self, what: &str, ok: bool, witness: impl FnOnce() -> Witness) {
        if ok {
            self.details.push(format!("ok: {what}"));
        } else {
            self.details.push(format!("FAILED: {what}"));
            if !self.failed {
                self.witness = Some(witness());
            }
            self.failed = true;
        }
    }

    pub(crate) fn claim_ideals_equal(
        &mut self,
        what: &str,
        lhs: &MonomialIdeal,
        rhs: &MonomialIdeal,
    ) {
        let sep = ideal_separator(lhs, rhs);
        self.claim(what, sep.is_none(), || Witness::Monomial {
            exponents: sep.clone().unwrap(),
        });
    }

    pub(crate) fn skip(self, reason: impl Into<String>) -> CheckReport {
        let mut details = self.details;
        details.push(format!("skipped: {}", reason.into()));
        CheckReport {
            name: self.name,
            inputs: self.inputs,
            verdict: Verdict::Skipped,
            witness: None,
            details,
            seed: self.seed,
            time_ms: self.start.elapsed().as_millis(),
        }
    }

    pub(crate) fn inconclusive(self, reason: impl Into<String>) -> CheckReport {
        let mut details = self.details;
        details.push(format!("inconclusive: {}", reason.into()));
        CheckReport {
            name: self.name,
            inputs: self.inputs,
            verdict: Verdict::Inconclusive,
            witness: None,
            details,
            seed: self.seed,
            time_ms: self.start.elapsed().as_millis(),
        }
    }

    pub(crate) fn finish(self) -> CheckReport {
        CheckReport {
            name: self.name,
            inputs: self.inputs,
            verdict: if self.failed {
                Verdict::Fail
            } else {
                Verdict::Pass
            },
            witness: self.witness,
            details: self.details,
            seed: self.seed,
            time_ms: self.start.elapsed().as_millis(),
        }
    }
}

/// First monomial separating two ideals (a generator of one outside the
/// other), or `None` when they are equal.
pub fn ideal_separator(a: &MonomialIdeal, b: &MonomialIdeal) -> Option<Vec<i64>> {
    if a == b {
        return None;
    }
    for g in a.gens() {
        if !b.contains(g) {
            return Some(g.clone());
        }
    }
    for g in b.gens() {
        if !a.contains(g) {
            return Some(g.clone());
        }
    }
    None
}

/// Cohomology window options honoring the `NPC_WINDOW_CAP` environment
/// override.
pub fn cohom_options(d: usize) -> CohomOptions {
    let mut opts = CohomOptions::for_dim(d);
    if let Ok(v) = std::env::var("NPC_WINDOW_CAP") {
        if let Ok(cap) = v.trim().parse::<i64>() {
            opts.window_cap = cap.max(1);
            opts.initial_window = opts.initial_window.min(opts.window_cap);
        }
    }
    opts
}

/// `J^t` with the convention that nonpositive powers are the unit ideal.
pub(crate) fn power_or_unit(j: &MonomialIdeal, t: i64) -> MonomialIdeal {
    if t <= 0 {
        MonomialIdeal::unit(j.dim())
    } else {
        j.pow(t as u32)
    }
}
