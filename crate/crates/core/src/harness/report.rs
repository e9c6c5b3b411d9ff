//! Report data model and bundle serialization.
//!
//! One JSON document per theorem plus a delimiter-separated summary
//! table. Bundles are byte-deterministic for a fixed configuration and
//! catalog: wall-clock timings are kept in memory for display but never
//! serialized.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// Outcome of one theorem check over the whole catalog.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub theorem_id: String,
    pub groups_scanned: u64,
    pub factorizations_scanned: u64,
    pub hypothesis_hits: u64,
    pub violations: Vec<Violation>,
    pub negative_controls: Vec<ControlEntry>,
    /// Display-only; excluded from the serialized bundle so that repeated
    /// runs are byte-identical.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn new(theorem_id: &str) -> Self {
        VerificationReport {
            theorem_id: theorem_id.to_string(),
            groups_scanned: 0,
            factorizations_scanned: 0,
            hypothesis_hits: 0,
            violations: Vec::new(),
            negative_controls: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn absorb(&mut self, other: VerificationReport) {
        debug_assert_eq!(self.theorem_id, other.theorem_id);
        self.groups_scanned += other.groups_scanned;
        self.factorizations_scanned += other.factorizations_scanned;
        self.hypothesis_hits += other.hypothesis_hits;
        self.violations.extend(other.violations);
        self.negative_controls.extend(other.negative_controls);
    }
}

/// Which body of claims a violation contradicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ViolationKind {
    /// One of the statements this suite verifies directly.
    MainClaim,
    /// A supporting result imported from the literature (currently only
    /// the Hall-subgroup factorization existence used by the `Dπ`
    /// closure check).
    CitedTheorem,
}

/// Fully serialized counterexample description; contains enough data to
/// replay the single failing instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Violation {
    pub theorem_id: String,
    pub kind: ViolationKind,
    pub group: GroupDescriptor,
    pub subgroups: Vec<SubgroupDescriptor>,
    pub params: BTreeMap<String, String>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubgroupDescriptor {
    pub role: String,
    pub order: u64,
    pub elements: Vec<String>,
}

/// A hypothesis-adjacent instance recorded to show a filter is doing
/// work (e.g. supersoluble factors whose product fails msp and is not
/// supersoluble).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ControlEntry {
    pub control: String,
    pub group: String,
    pub a_order: u64,
    pub b_order: u64,
    pub detail: String,
}

/// Cap overruns and other intentionally skipped work.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SkipEntry {
    pub group: String,
    pub what: String,
    pub reason: String,
}

/// Consistency sweep over the class predicates: the inclusion chain
/// `U ⊆ wU ⊆ vU ⊆ D` and the agreement of `wU`/`vU` with their
/// characterizations, on every catalog group.
#[derive(Debug, Clone, Serialize)]
pub struct ClassConsistencyReport {
    pub groups_scanned: u64,
    pub chain_violations: Vec<String>,
    pub characterization_disagreements: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ClassConsistencyReport {
    pub fn new() -> Self {
        ClassConsistencyReport {
            groups_scanned: 0,
            chain_violations: Vec::new(),
            characterization_disagreements: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn clean(&self) -> bool {
        self.chain_violations.is_empty() && self.characterization_disagreements.is_empty()
    }
}

impl Default for ClassConsistencyReport {
    fn default() -> Self {
        Self::new()
    }
}

/// Configuration echo stored at the top of every bundle.
#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub max_order: u64,
    pub lattice_cap: u64,
    pub theorems: Vec<String>,
    pub classes: Vec<String>,
    pub dedup_conjugate_pairs: bool,
    pub workers: usize,
    pub catalog_groups: u64,
    pub extra_groups: Vec<String>,
}

/// Everything a campaign produces.
#[derive(Debug)]
pub struct CampaignOutcome {
    pub config: ConfigEcho,
    pub reports: Vec<VerificationReport>,
    pub consistency: Option<ClassConsistencyReport>,
    pub skips: Vec<SkipEntry>,
}

impl CampaignOutcome {
    pub fn total_violations(&self) -> usize {
        let consistency_bad = self
            .consistency
            .as_ref()
            .map(|c| c.chain_violations.len() + c.characterization_disagreements.len())
            .unwrap_or(0);
        self.reports.iter().map(|r| r.violations.len()).sum::<usize>() + consistency_bad
    }

    /// Summary rows: theorem_id, groups, factorizations, hits, violations,
    /// seconds. The seconds column is `-` in serialized form to keep
    /// bundles deterministic; [`VerificationReport::elapsed`] carries the
    /// measured value for display.
    pub fn summary_rows(&self) -> Vec<[String; 6]> {
        let mut rows: Vec<[String; 6]> = self
            .reports
            .iter()
            .map(|r| {
                [
                    r.theorem_id.clone(),
                    r.groups_scanned.to_string(),
                    r.factorizations_scanned.to_string(),
                    r.hypothesis_hits.to_string(),
                    r.violations.len().to_string(),
                    "-".to_string(),
                ]
            })
            .collect();
        if let Some(c) = &self.consistency {
            rows.push([
                "class_consistency".into(),
                c.groups_scanned.to_string(),
                "0".into(),
                c.groups_scanned.to_string(),
                (c.chain_violations.len() + c.characterization_disagreements.len()).to_string(),
                "-".into(),
            ]);
        }
        rows
    }

    /// Writes the bundle: `config.json`, `summary.tsv`, `skips.json`, and
    /// one JSON document per theorem under `reports/`.
    pub fn write_bundle(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir.join("reports"))?;
        fs::write(
            dir.join("config.json"),
            serde_json::to_string_pretty(&self.config).expect("serializable") + "\n",
        )?;
        let mut summary = String::from("theorem_id\tgroups\tfactorizations\thits\tviolations\tseconds\n");
        for row in self.summary_rows() {
            summary.push_str(&row.join("\t"));
            summary.push('\n');
        }
        fs::write(dir.join("summary.tsv"), summary)?;
        fs::write(
            dir.join("skips.json"),
            serde_json::to_string_pretty(&self.skips).expect("serializable") + "\n",
        )?;
        for report in &self.reports {
            fs::write(
                dir.join("reports").join(format!("{}.json", report.theorem_id)),
                serde_json::to_string_pretty(report).expect("serializable") + "\n",
            )?;
        }
        if let Some(c) = &self.consistency {
            fs::write(
                dir.join("reports").join("class_consistency.json"),
                serde_json::to_string_pretty(c).expect("serializable") + "\n",
            )?;
        }
        Ok(())
    }
}
