use serde::{Deserialize, Serialize};

use super::identity::{ExpectedStatus, Family, Identity, Target};
use super::sampler::ParamSampler;
use super::verify::{verify_identity, VerifyOptions};
use crate::exec::Execution;

/// Per-identity audit outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditEntry {
    pub id: String,
    pub paper_anchor: String,
    pub draws: usize,
    pub passes: usize,
    /// Largest relative residual seen; infinite when a draw errored.
    pub worst_rel_residual: f64,
    pub status: String,
}

/// Which catalog entries take part in an audit.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AuditFilter {
    /// Empty means every family.
    pub families: Vec<Family>,
    /// Empty means both targets.
    pub targets: Vec<Target>,
    pub include_suspected: bool,
    pub include_twins: bool,
}

impl AuditFilter {
    /// Every entry, including suspected entries and their corrections.
    pub fn everything() -> Self {
        AuditFilter {
            include_suspected: true,
            include_twins: true,
            ..Default::default()
        }
    }

    pub fn admits(&self, ident: &Identity) -> bool {
        (self.families.is_empty() || self.families.contains(&ident.family))
            && (self.targets.is_empty() || self.targets.contains(&ident.target))
            && (self.include_suspected || ident.expected_status != ExpectedStatus::SuspectedTypo)
            && (self.include_twins || !ident.is_twin())
    }
}

fn status_of(ident: &Identity, draws: usize, passes: usize) -> &'static str {
    match ident.expected_status {
        ExpectedStatus::Verified if passes == draws => "verified",
        ExpectedStatus::Verified => "regression",
        ExpectedStatus::SuspectedTypo if passes == 0 => "suspected_typo",
        ExpectedStatus::SuspectedTypo if passes == draws => "status_contradiction",
        ExpectedStatus::SuspectedTypo => "inconclusive",
    }
}

/// Run every admitted identity at `sampler.draws` points; entries keep
/// catalog order regardless of how the work is scheduled.
pub fn audit_catalog(
    catalog: &[Identity],
    sampler: &ParamSampler,
    opts: &VerifyOptions,
    filter: &AuditFilter,
    exec: Execution,
) -> Vec<AuditEntry> {
    if sampler.draws == 0 {
        return vec![];
    }
    let chosen: Vec<&Identity> = catalog.iter().filter(|i| filter.admits(i)).collect();
    let jobs: Vec<(usize, u64)> = (0..chosen.len())
        .flat_map(|i| (0..sampler.draws as u64).map(move |d| (i, d)))
        .collect();
    let results = exec.map(&jobs, |&(i, d)| {
        let ident = chosen[i];
        let point = sampler.draw(ident, d);
        match verify_identity(ident, &point, opts) {
            Ok(r) => (r.pass, r.rel_residual),
            Err(_) => (false, f64::INFINITY),
        }
    });
    chosen
        .iter()
        .zip(results.chunks(sampler.draws))
        .map(|(ident, rs)| {
            let passes = rs.iter().filter(|(p, _)| *p).count();
            let worst = rs
                .iter()
                .map(|(_, r)| if r.is_nan() { f64::INFINITY } else { *r })
                .fold(0.0, f64::max);
            AuditEntry {
                id: ident.id.clone(),
                paper_anchor: ident.anchor.clone(),
                draws: sampler.draws,
                passes,
                worst_rel_residual: worst,
                status: status_of(ident, sampler.draws, passes).to_string(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_catalog;

    #[test]
    fn status_table() {
        let cat = builtin_catalog();
        let ok = cat.iter().find(|i| i.id == "F41.diffrel.1").unwrap();
        let typo = cat.iter().find(|i| i.id == "F41.rec.5").unwrap();
        assert_eq!(status_of(ok, 5, 5), "verified");
        assert_eq!(status_of(ok, 5, 4), "regression");
        assert_eq!(status_of(typo, 5, 0), "suspected_typo");
        assert_eq!(status_of(typo, 5, 5), "status_contradiction");
        assert_eq!(status_of(typo, 5, 2), "inconclusive");
    }

    #[test]
    fn filter_defaults_skip_suspected_and_twins() {
        let cat = builtin_catalog();
        let f = AuditFilter::default();
        assert_eq!(cat.iter().filter(|i| f.admits(i)).count(), 157);
        let all = AuditFilter::everything();
        assert!(cat.iter().all(|i| all.admits(i)));
    }
}
