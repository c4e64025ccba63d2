use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::Serialize;

use super::{express_all, numeric_check, tp_matrix, MinorId, PositivityError};
use crate::graph::{enumerate, EnumerateOptions};
use crate::label::{non_fixed_minors, ClassKey, LabelSet};
use crate::quiver::neighbors;
use crate::wiring::{chamber_labels, standard_word};

/// Largest `n` for which every class is checked.
pub const FULL_MAX_STRINGS: usize = 4;
/// Largest `n` accepted at all (sampled only above [`FULL_MAX_STRINGS`]).
pub const SAMPLE_MAX_STRINGS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Full,
    /// This many distinct random classes, each against every non-fixed minor.
    Sample(usize),
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub scope: Scope,
    pub threads: usize,
    pub seed: u64,
    /// Also evaluate every expression on a random totally positive matrix.
    pub numeric: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { scope: Scope::Full, threads: 1, seed: 0, numeric: false }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub base: String,
    pub target: String,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub classes: usize,
    pub pairs: usize,
    pub positive: usize,
    pub numeric_checked: usize,
    pub failures: Vec<Failure>,
    pub max_terms: usize,
    /// `(base class, target)` of an expression with `max_terms` terms.
    pub max_terms_at: Option<(String, String)>,
    pub wall_seconds: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.positive == self.pairs
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// `count` distinct classes met on a seeded random walk of move steps.
pub fn sample_classes(n: usize, count: usize, seed: u64) -> Vec<LabelSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = chamber_labels(&standard_word(n));
    let mut seen: FxHashSet<ClassKey> = FxHashSet::default();
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count && attempts < count * 50 {
        attempts += 1;
        for _ in 0..n * n {
            let next = neighbors(&s);
            s = next.choose(&mut rng).expect("every class has a move").1.clone();
        }
        if seen.insert(s.key()) {
            out.push(s.clone());
        }
    }
    out
}

/// Expresses every non-fixed minor in the chamber minors of each class in
/// scope and records positivity.
pub fn verify_conjecture(n: usize, opts: &VerifyOptions) -> Result<VerificationReport, PositivityError> {
    let start = Instant::now();
    if !(2..=SAMPLE_MAX_STRINGS).contains(&n) || (opts.scope == Scope::Full && n > FULL_MAX_STRINGS) {
        return Err(PositivityError::ScopeTooLarge(format!(
            "full verification supports n = 2..={FULL_MAX_STRINGS}, sampled up to n = {SAMPLE_MAX_STRINGS}; got n = {n}"
        )));
    }
    let classes: Vec<LabelSet> = match opts.scope {
        Scope::Full => {
            let e = enumerate(n, &EnumerateOptions { threads: opts.threads, ..Default::default() })?;
            let g = e.graph.expect("exact enumeration builds the graph");
            g.keys().iter().map(|k| k.labels()).collect()
        }
        Scope::Sample(k) => sample_classes(n, k, opts.seed),
    };
    let targets: Vec<MinorId> =
        non_fixed_minors(n).into_iter().map(|l| MinorId::new(l, n)).collect::<Result<_, _>>()?;
    let matrix = if opts.numeric { Some(tp_matrix(n, opts.seed)?) } else { None };

    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.threads.max(1)).build().expect("thread pool");
    let per_class: Vec<ClassOutcome> =
        pool.install(|| classes.par_iter().map(|base| check_class(base, &targets, matrix.as_ref())).collect());

    let mut report = VerificationReport {
        n,
        classes: classes.len(),
        pairs: 0,
        positive: 0,
        numeric_checked: 0,
        failures: Vec::new(),
        max_terms: 0,
        max_terms_at: None,
        wall_seconds: 0.0,
    };
    for (base, outcome) in classes.iter().zip(per_class) {
        report.pairs += outcome.pairs;
        report.positive += outcome.positive;
        report.numeric_checked += outcome.numeric_checked;
        report.failures.extend(outcome.failures);
        if outcome.max_terms > report.max_terms {
            report.max_terms = outcome.max_terms;
            report.max_terms_at = outcome.max_target.map(|t| (base.to_string(), t.to_string()));
        }
    }
    report.wall_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

#[derive(Default)]
struct ClassOutcome {
    pairs: usize,
    positive: usize,
    numeric_checked: usize,
    failures: Vec<Failure>,
    max_terms: usize,
    max_target: Option<MinorId>,
}

fn check_class(base: &LabelSet, targets: &[MinorId], matrix: Option<&super::RationalMatrix>) -> ClassOutcome {
    let mut out = ClassOutcome { pairs: targets.len(), ..Default::default() };
    let fail = |target: String, reason: String| Failure { base: base.to_string(), target, reason };
    let reports = match express_all(base, targets) {
        Ok(r) => r,
        Err(e) => {
            out.failures.push(fail("*".into(), e.to_string()));
            return out;
        }
    };
    for (t, r) in targets.iter().zip(reports) {
        let r = match r {
            Ok(r) => r,
            Err(e) => {
                out.failures.push(fail(t.to_string(), e.to_string()));
                continue;
            }
        };
        if r.positive {
            out.positive += 1;
        } else {
            out.failures.push(fail(t.to_string(), format!("not positive: {}", r.expression)));
        }
        if r.term_count > out.max_terms {
            out.max_terms = r.term_count;
            out.max_target = Some(*t);
        }
        if let Some(m) = matrix {
            match numeric_check(&r, m) {
                Ok(true) => out.numeric_checked += 1,
                Ok(false) => out.failures.push(fail(t.to_string(), "numeric value differs from the minor".into())),
                Err(e) => out.failures.push(fail(t.to_string(), e.to_string())),
            }
        }
    }
    out
}
