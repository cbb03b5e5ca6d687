//! Batch verification over families of partitions.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::record::{compute_record, RecordKey, RunCache, RunRecord};
use super::ToolConfig;
use crate::characters::{character_hooks, character_legs, character_theorem4, weights_from_character};
use crate::exact_poly::{
    parity_conjugation_checks, schur_specialized, squarefree_certificate, wronskian_for_partition, AppellSpec,
};
use crate::moser::one_row_identity_check;
use crate::partitions::{partition_from_contents, partitions_up_to, IntegerMultiset};
use crate::wilson::{charpoly_constant, m_diagonal_multiset, verify_relations, WilsonData};
use crate::{Partition, Result};

/// Locus residual accepted after refinement.
pub const LOCUS_TOL: f64 = 1e-9;
/// Rounding residual accepted for the spectrum of `M`.
pub const SPEC_M_TOL: f64 = 1e-6;
/// Rounding residual accepted for the spectrum of `K`.
pub const SPEC_K_TOL: f64 = 1e-5;
/// Lower bound for `|[K, M]|` at the poles of `u_(3,1)`.
pub const COMMUTATOR_FLOOR: f64 = 1e-3;
/// Accepted `|K - (M + I)^2|` at Hermite roots.
pub const ONE_ROW_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    WronskianProps,
    SchurBridge,
    WilsonRelations,
    Prop8,
    Characters,
    Theorem1Numeric,
    HessianNumeric,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::WronskianProps,
        Suite::SchurBridge,
        Suite::WilsonRelations,
        Suite::Prop8,
        Suite::Characters,
        Suite::Theorem1Numeric,
        Suite::HessianNumeric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::WronskianProps => "wronskian-props",
            Suite::SchurBridge => "schur-bridge",
            Suite::WilsonRelations => "wilson-relations",
            Suite::Prop8 => "prop8",
            Suite::Characters => "characters",
            Suite::Theorem1Numeric => "theorem1-numeric",
            Suite::HessianNumeric => "hessian-numeric",
        }
    }

    fn is_numeric(self) -> bool {
        matches!(self, Suite::Theorem1Numeric | Suite::HessianNumeric)
    }
}

/// Pass/fail counts for one suite; failures carry a short reason.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: Suite,
    pub max_size: usize,
    pub checked: usize,
    pub passed: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn from_checks(suite: Suite, max_size: usize, checks: Vec<(String, std::result::Result<(), String>)>) -> Self {
        let checked = checks.len();
        let failures: Vec<String> = checks
            .into_iter()
            .filter_map(|(label, r)| r.err().map(|why| format!("{label}: {why}")))
            .collect();
        SuiteResult {
            suite,
            max_size,
            checked,
            passed: checked - failures.len(),
            failures,
        }
    }
}

/// Plain-text summary table.
pub fn summary_table(results: &[SuiteResult]) -> String {
    let mut out = format!("{:<18} {:>8} {:>8} {:>8}\n", "suite", "checked", "passed", "failed");
    for r in results {
        let _ = writeln!(
            out,
            "{:<18} {:>8} {:>8} {:>8}",
            r.suite.name(),
            r.checked,
            r.passed,
            r.failures.len()
        );
        for f in &r.failures {
            let _ = writeln!(out, "  FAIL {f}");
        }
    }
    out
}

fn is_squarefree(lambda: &Partition) -> bool {
    lambda.is_empty() || squarefree_certificate(&wronskian_for_partition(lambda)).is_ok_and(|c| c.squarefree)
}

/// Partitions for the numerical checks: rows and columns up to `rows_max`,
/// doubled partitions of size up to `doubled_max`, and every partition of
/// size up to `all_max`; only those with a squarefree Wronskian are kept.
pub fn gated_family(rows_max: usize, doubled_max: usize, all_max: usize) -> Vec<Partition> {
    let mut set: BTreeSet<(usize, Partition)> = BTreeSet::new();
    let mut add = |p: Partition| {
        set.insert((p.size(), p));
    };
    for n in 1..=rows_max {
        add(Partition::row(n));
        add(Partition::column(n));
    }
    for mu in partitions_up_to(doubled_max / 2) {
        if !mu.is_empty() {
            add(mu.doubled());
        }
    }
    for p in partitions_up_to(all_max) {
        if !p.is_empty() {
            add(p);
        }
    }
    set.into_iter()
        .map(|(_, p)| p)
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter(is_squarefree)
        .collect()
}

type Check = (String, std::result::Result<(), String>);

fn check(label: &Partition, ok: bool, why: impl FnOnce() -> String) -> Check {
    (label.to_string(), if ok { Ok(()) } else { Err(why()) })
}

fn exact_check(suite: Suite, lambda: &Partition) -> Check {
    match suite {
        Suite::WronskianProps => {
            let w = wronskian_for_partition(lambda);
            let (parity, conj) = parity_conjugation_checks(lambda);
            let deg_ok = w.degree() == Some(lambda.size());
            check(lambda, deg_ok && parity && conj, || {
                format!("degree {:?}, parity {parity}, conjugation {conj}", w.degree())
            })
        }
        Suite::SchurBridge => {
            let w = wronskian_for_partition(lambda).monic();
            let s = schur_specialized(lambda, &AppellSpec::hermite()).monic();
            check(lambda, w == s, || format!("monic W = {w}, monic s = {s}"))
        }
        Suite::WilsonRelations => match WilsonData::new(lambda) {
            Ok(d) => {
                let rel = verify_relations(&d);
                let diag_ok = m_diagonal_multiset(&d.m) == lambda.contents();
                check(lambda, rel.all_pass() && diag_ok, || {
                    format!("{rel:?}, diag(M) = contents: {diag_ok}")
                })
            }
            Err(e) => (lambda.to_string(), Err(e.to_string())),
        },
        Suite::Prop8 => match charpoly_constant(lambda) {
            Ok(a) => check(lambda, a.is_some(), || "det(zI - Q) is not proportional to W".into()),
            Err(e) => (lambda.to_string(), Err(e.to_string())),
        },
        Suite::Characters => {
            let chi = character_theorem4(lambda);
            let legs = character_legs(lambda);
            let hooks = character_hooks(lambda);
            let weights_ok = weights_from_character(&chi).is_ok_and(|w| w.squares() == lambda.hooks().map(|h| h * h));
            let ok = chi == legs
                && chi == hooks
                && chi.eval_at_one() == 2 * lambda.size() as i64
                && chi.is_symmetric()
                && chi == character_theorem4(&lambda.conjugate())
                && weights_ok;
            check(lambda, ok, || format!("theorem4 {chi}, legs {legs}, hooks {hooks}"))
        }
        Suite::Theorem1Numeric | Suite::HessianNumeric => unreachable!("numeric suites use run records"),
    }
}

fn theorem1_check(lambda: &Partition, rec: &RunRecord) -> Check {
    let Some(spec) = &rec.spec_m else {
        return (lambda.to_string(), Err("no Moser spectrum".into()));
    };
    let resid = rec.locus_residual.unwrap_or(f64::INFINITY);
    let rounded: IntegerMultiset = spec.rounded.iter().copied().collect();
    let inverted = partition_from_contents(&rounded).ok();
    let ok = resid <= LOCUS_TOL
        && spec.residual <= SPEC_M_TOL
        && rounded == lambda.contents()
        && inverted.as_ref() == Some(lambda);
    check(lambda, ok, || {
        format!(
            "locus residual {resid:e}, spec M residual {:e}, rounded {:?}, inverted {inverted:?}",
            spec.residual, spec.rounded
        )
    })
}

fn hessian_check(lambda: &Partition, rec: &RunRecord) -> Check {
    let Some(spec) = &rec.spec_k else {
        return (lambda.to_string(), Err("no Hessian spectrum".into()));
    };
    let rounded: IntegerMultiset = spec.rounded.iter().copied().collect();
    let hooks2 = lambda.hooks().map(|h| h * h);
    let cm2 = lambda.cm_exponents().map(|s| s * s);
    let char2 = weights_from_character(&character_theorem4(lambda))
        .map(|w| w.squares())
        .ok();
    let ok = spec.residual <= SPEC_K_TOL && rounded == hooks2 && rounded == cm2 && char2.as_ref() == Some(&hooks2);
    check(lambda, ok, || {
        format!(
            "spec K residual {:e}, rounded {:?}, hooks^2 {:?}",
            spec.residual,
            spec.rounded,
            hooks2.to_sorted_vec()
        )
    })
}

/// Records for `family`, reusing cached ones and appending the rest.
fn numeric_records(family: &[Partition], tool: &ToolConfig) -> Result<Vec<std::result::Result<RunRecord, String>>> {
    let cache = tool.cache.as_ref().map(RunCache::new);
    let known: HashMap<RecordKey, RunRecord> = match &cache {
        Some(c) => c.index()?,
        None => HashMap::new(),
    };
    let cfg = &tool.numerics;
    let results: Vec<(bool, std::result::Result<RunRecord, String>)> = tool.install(|| {
        family
            .par_iter()
            .map(|lambda| match known.get(&RecordKey::new(lambda, cfg)) {
                Some(r) => (false, Ok(r.clone())),
                None => (true, compute_record(lambda, cfg).map_err(|e| e.to_string())),
            })
            .collect()
    });
    if let Some(c) = cache {
        let fresh: Vec<RunRecord> = results
            .iter()
            .filter_map(|(new, r)| if *new { r.as_ref().ok().cloned() } else { None })
            .collect();
        c.append(&fresh)?;
    }
    Ok(results.into_iter().map(|(_, r)| r).collect())
}

pub fn run_suite(suite: Suite, max_size: usize, tool: &ToolConfig) -> Result<SuiteResult> {
    Ok(run_suites(&[suite], max_size, tool)?.remove(0))
}

/// Runs the selected suites (all of them if `suites` is empty), in order.
pub fn run_suites(suites: &[Suite], max_size: usize, tool: &ToolConfig) -> Result<Vec<SuiteResult>> {
    tool.validate()?;
    let suites: Vec<Suite> = if suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        suites.to_vec()
    };

    let numeric = if suites.iter().any(|s| s.is_numeric()) {
        let family = tool.install(|| gated_family(max_size, max_size, max_size));
        let records = numeric_records(&family, tool)?;
        Some((family, records))
    } else {
        None
    };

    let mut out = Vec::new();
    for suite in suites {
        let checks: Vec<Check> = if let Some((family, records)) = numeric.as_ref().filter(|_| suite.is_numeric()) {
            let mut checks: Vec<Check> = family
                .iter()
                .zip(records)
                .map(|(lambda, rec)| match rec {
                    Err(e) => (lambda.to_string(), Err(e.clone())),
                    Ok(r) if suite == Suite::Theorem1Numeric => theorem1_check(lambda, r),
                    Ok(r) => hessian_check(lambda, r),
                })
                .collect();
            if suite == Suite::HessianNumeric {
                checks.extend(tool.install(|| one_row_checks(max_size, tool)));
            }
            checks
        } else {
            let family: Vec<Partition> = partitions_up_to(max_size)
                .into_iter()
                // Wilson data needs at least one box
                .filter(|p| !p.is_empty() || !matches!(suite, Suite::WilsonRelations | Suite::Prop8))
                .collect();
            tool.install(|| family.par_iter().map(|lambda| exact_check(suite, lambda)).collect())
        };
        out.push(SuiteResult::from_checks(suite, max_size, checks));
    }
    Ok(out)
}

/// `K = (M + I)^2` at Hermite roots, and `[K, M] != 0` for `(3,1)`.
fn one_row_checks(max_size: usize, tool: &ToolConfig) -> Vec<Check> {
    if max_size < 4 {
        return Vec::new();
    }
    (1..=max_size)
        .into_par_iter()
        .map(|n| {
            let label = format!("one-row K = (M+I)^2, n = {n}");
            let r = match one_row_identity_check(n, &tool.numerics) {
                Ok(rep) if rep.identity_residual <= ONE_ROW_TOL && rep.commutator_31 > COMMUTATOR_FLOOR => Ok(()),
                Ok(rep) => Err(format!(
                    "identity residual {:e}, |[K,M]| at (3,1) {:e}",
                    rep.identity_residual, rep.commutator_31
                )),
                Err(e) => Err(e.to_string()),
            };
            (label, r)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_passes() {
        let tool = ToolConfig {
            jobs: 2,
            ..Default::default()
        };
        let results = run_suites(&[], 6, &tool).unwrap();
        assert_eq!(results.len(), 7);
        for r in &results {
            assert!(r.ok(), "{}", summary_table(&results));
            assert!(r.checked > 0);
        }
        assert!(summary_table(&results).starts_with("suite"));
    }

    #[test]
    fn family_is_gated_and_deduplicated() {
        let fam = gated_family(4, 8, 4);
        assert!(!fam.contains(&Partition::new(vec![2, 1]).unwrap()));
        assert!(fam.contains(&Partition::new(vec![3, 3, 1, 1]).unwrap()));
        let unique: BTreeSet<&Partition> = fam.iter().collect();
        assert_eq!(unique.len(), fam.len());
    }
}
