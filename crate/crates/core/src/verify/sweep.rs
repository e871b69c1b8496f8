use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::claims::{check_claims_with_report, ClaimResult, CLAIM_IDS};
use super::report::{analyze, HeightReport};
use crate::constructions::ConstructionRecipe;
use crate::enumerate::{enumerate_semigroups, EnumerationConfig};
use crate::error::{Error, Result};
use crate::mtab::to_mtab;
use crate::semigroup::FiniteSemigroup;

/// Where the inputs of a sweep come from.
#[derive(Clone, Debug)]
pub enum SweepSource {
    Enumeration(EnumerationConfig),
    Recipes(Vec<String>),
    /// Explicit semigroups with their provenance labels.
    Semigroups(Vec<(String, FiniteSemigroup)>),
}

#[derive(Clone, Debug, Default)]
pub struct SweepOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputInfo {
    pub provenance: String,
    pub order: usize,
}

/// One analysed input, in the JSON report layout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputRecord {
    pub input: InputInfo,
    pub report: HeightReport,
    pub claims: Vec<ClaimResult>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub claim_id: String,
    /// The offending table in mtab form, re-analysable as is.
    pub semigroup: String,
    pub provenance: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimTally {
    pub evaluated: usize,
    pub applicable: usize,
    pub held: usize,
    pub violated: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub inputs: usize,
    pub claims: BTreeMap<String, ClaimTally>,
    /// Every `(H_L, H_R, H_J)` seen. Recorded for inspection only.
    pub triples: BTreeSet<(usize, usize, usize)>,
}

impl SweepSummary {
    /// Number of (input, claim) evaluations.
    pub fn evaluations(&self) -> usize {
        self.claims.values().map(|t| t.evaluated).sum()
    }

    pub fn violations(&self) -> usize {
        self.claims.values().map(|t| t.violated).sum()
    }
}

#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub records: Vec<InputRecord>,
    pub summary: SweepSummary,
    /// Sorted by provenance, then claim id.
    pub violations: Vec<Violation>,
}

fn enumeration_label(config: &EnumerationConfig, i: usize) -> String {
    let mode = match (config.up_to_isomorphism, config.include_anti_isomorphs) {
        (false, _) => "labelled",
        (true, true) => "iso",
        (true, false) => "iso-anti",
    };
    format!("enum:{}:{mode}:{i:06}", config.order)
}

fn collect_inputs(source: &SweepSource) -> Result<Vec<(String, FiniteSemigroup)>> {
    match source {
        SweepSource::Enumeration(config) => Ok(enumerate_semigroups(config)?
            .enumerate()
            .map(|(i, s)| (enumeration_label(config, i), s))
            .collect()),
        SweepSource::Recipes(recipes) => recipes
            .iter()
            .map(|text| {
                let built = ConstructionRecipe::parse(text).and_then(|r| r.build());
                match built {
                    Ok(s) => Ok((text.trim().to_string(), s)),
                    Err(e @ (Error::Recipe { .. } | Error::Inconsistency(_))) => Err(e),
                    Err(e) => Err(Error::Recipe {
                        recipe: text.trim().to_string(),
                        message: e.to_string(),
                    }),
                }
            })
            .collect(),
        SweepSource::Semigroups(list) => Ok(list.clone()),
    }
}

fn analyse_one(provenance: &str, s: &FiniteSemigroup) -> Result<InputRecord> {
    let with_provenance = |e: Error| match e {
        Error::Inconsistency(m) => Error::Inconsistency(format!("{provenance}: {m}")),
        other => other,
    };
    let report = analyze(s).map_err(with_provenance)?;
    let claims = check_claims_with_report(s, &report).map_err(with_provenance)?;
    Ok(InputRecord {
        input: InputInfo {
            provenance: provenance.to_string(),
            order: s.order(),
        },
        report,
        claims,
    })
}

/// Analyses every input and evaluates every claim on it.
///
/// Inputs are processed in parallel; the output does not depend on the
/// number of workers. The first error (including any internal
/// inconsistency) aborts the sweep.
pub fn sweep(source: &SweepSource, options: &SweepOptions) -> Result<SweepOutcome> {
    let inputs = collect_inputs(source)?;
    let run = || -> Result<Vec<InputRecord>> {
        inputs.par_iter().map(|(p, s)| analyse_one(p, s)).collect()
    };
    let records = match options.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| Error::Range(format!("cannot start {jobs} workers: {e}")))?
            .install(run)?,
        None => run()?,
    };

    let mut summary = SweepSummary {
        inputs: records.len(),
        claims: CLAIM_IDS
            .iter()
            .map(|id| (id.to_string(), ClaimTally::default()))
            .collect(),
        triples: BTreeSet::new(),
    };
    let mut violations = Vec::new();
    for (record, (_, s)) in records.iter().zip(&inputs) {
        summary.triples.insert(record.report.triple());
        for c in &record.claims {
            let tally = summary.claims.entry(c.claim_id.clone()).or_default();
            tally.evaluated += 1;
            if c.applicable {
                tally.applicable += 1;
                if c.holds {
                    tally.held += 1;
                } else {
                    tally.violated += 1;
                    violations.push(Violation {
                        claim_id: c.claim_id.clone(),
                        semigroup: to_mtab(s),
                        provenance: record.input.provenance.clone(),
                    });
                }
            }
        }
    }
    violations.sort_by(|a, b| (&a.provenance, &a.claim_id).cmp(&(&b.provenance, &b.claim_id)));
    Ok(SweepOutcome {
        records,
        summary,
        violations,
    })
}
