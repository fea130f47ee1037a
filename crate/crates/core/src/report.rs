//! End-to-end verification runs and their JSON/text reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{self, CatalogEntry};
use crate::cd::{self, CdReport};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::lattice::{self, LatticeOptions, SubgroupLattice};
use crate::spec::GroupSpec;
use crate::theorem::{self, TheoremReport, Truth};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub lattice: LatticeOptions,
    /// Run the CD(G) structural checks (they enumerate a second lattice
    /// for the maximal member).
    pub check_properties: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            lattice: LatticeOptions {
                max_order: catalog::CATALOG_MAX_ORDER,
                ..LatticeOptions::default()
            },
            check_properties: true,
        }
    }
}

/// Everything computed for one group.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub lattice: SubgroupLattice,
    pub cd: CdReport,
    pub theorem: TheoremReport,
    /// Lattice id of the least member of CD(G).
    pub cd_subgroup: usize,
}

impl Analysis {
    pub fn group(&self) -> &Group {
        self.lattice.group()
    }

    /// Failed theorem conclusions and failed CD(G) checks. Any entry here
    /// means the implementation is wrong somewhere.
    pub fn violations(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .theorem
            .violations()
            .into_iter()
            .map(String::from)
            .collect();
        v.extend(self.cd.failures().map(|p| p.name.to_string()));
        v
    }
}

pub fn analyze(g: &Group, opts: &VerifyOptions) -> Result<Analysis> {
    let lattice = lattice::all_subgroups_with(g, &opts.lattice)?;
    let cd = if opts.check_properties {
        cd::cd_lattice_with(&lattice, &opts.lattice)?
    } else {
        let (measures, m_star, cd_members) = cd::measure_table(&lattice);
        CdReport {
            label: g.label().to_string(),
            measures,
            m_star,
            cd_members,
            properties: Vec::new(),
        }
    };
    let cd_subgroup = cd::chermak_delgado_subgroup(&cd, &lattice)?;
    let mut theorem = theorem::verify_theorem(&lattice);
    theorem.corollary = Some(theorem::verify_corollary(&lattice, &cd));
    Ok(Analysis {
        lattice,
        cd,
        theorem,
        cd_subgroup,
    })
}

/// Builds the group a spec describes and analyzes it, refusing before
/// construction when the spec's order exceeds the configured cap.
pub fn run_verify(spec: &GroupSpec, opts: &VerifyOptions) -> Result<Analysis> {
    let order = spec.order();
    if order > opts.lattice.max_order {
        return Err(Error::capacity(
            "group order",
            opts.lattice.max_order,
            order,
        ));
    }
    analyze(&spec.build()?, opts)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureJson {
    pub id: usize,
    pub size: usize,
    pub centralizer_size: usize,
    pub measure: u64,
}

/// JSON form of a single-group verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub group: String,
    pub order: usize,
    pub m_star: u64,
    pub cd_member_count: usize,
    pub hypothesis: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound_slack: Option<i64>,
    pub conclusions: BTreeMap<String, String>,
    pub measures: Vec<MeasureJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub common_measure: Option<u64>,
    pub condition_a: String,
    pub condition_b: String,
    pub recognition: String,
    pub subgroup_count: usize,
    pub cd_members: Vec<usize>,
    pub chermak_delgado_subgroup: usize,
}

impl VerifyReport {
    pub fn from_analysis(a: &Analysis) -> VerifyReport {
        let t = &a.theorem;
        let mut conclusions: BTreeMap<String, String> = t
            .conclusions
            .iter()
            .map(|(n, v)| (n.to_string(), v.as_str().to_string()))
            .collect();
        let cor = t.corollary.as_ref();
        if let Some(c) = cor {
            conclusions.insert(theorem::CP_OR_Q8.into(), c.conclusion.as_str().into());
        }
        for p in &a.cd.properties {
            let v = if p.passed { "pass" } else { "fail" };
            conclusions.insert(p.name.into(), v.into());
        }
        VerifyReport {
            group: a.group().label().to_string(),
            order: a.group().order(),
            m_star: a.cd.m_star,
            cd_member_count: a.cd.cd_members.len(),
            hypothesis: t.hypothesis.as_str().into(),
            n: t.n,
            m: t.m,
            k: t.k,
            bound_slack: t.bound_slack,
            conclusions,
            measures: a
                .cd
                .measures
                .iter()
                .map(|r| MeasureJson {
                    id: r.id,
                    size: r.size,
                    centralizer_size: r.centralizer_size,
                    measure: r.measure,
                })
                .collect(),
            prime: t.prime,
            common_measure: t.common_measure,
            condition_a: cor.map_or("vacuous", |c| c.condition_a.as_str()).into(),
            condition_b: cor.map_or("vacuous", |c| c.condition_b.as_str()).into(),
            recognition: cor.map_or_else(|| "neither".into(), |c| c.recognition.to_string()),
            subgroup_count: a.lattice.len(),
            cd_members: a.cd.cd_members.clone(),
            chermak_delgado_subgroup: a.cd_subgroup,
        }
    }
}

/// JSON schema of [`VerifyReport`], shipped with the crate.
pub const VERIFY_SCHEMA: &str = include_str!("../schema/verify_report.schema.json");

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Abelian,
    Nonabelian,
    PGroup,
    /// Entries whose name starts with the given text.
    Prefix(String),
}

impl std::str::FromStr for Family {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s {
            "abelian" => Family::Abelian,
            "nonabelian" => Family::Nonabelian,
            "p-group" => Family::PGroup,
            other => Family::Prefix(other.to_string()),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepFilter {
    pub min_order: usize,
    pub max_order: usize,
    /// An entry is kept when it matches any family (or the list is empty).
    pub families: Vec<Family>,
}

impl SweepFilter {
    pub fn orders(min_order: usize, max_order: usize) -> Self {
        SweepFilter {
            min_order,
            max_order,
            families: Vec::new(),
        }
    }

    fn matches(&self, e: &CatalogEntry, g: &Group) -> bool {
        self.families.is_empty()
            || self.families.iter().any(|f| match f {
                Family::Abelian => g.is_abelian(),
                Family::Nonabelian => !g.is_abelian(),
                Family::PGroup => crate::arith::prime_power(g.order() as u64).is_some(),
                Family::Prefix(p) => e.name.starts_with(p.as_str()),
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub group: String,
    pub order: usize,
    pub abelian: bool,
    pub hypothesis: String,
    pub condition_a: String,
    pub condition_b: String,
    pub recognition: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound_slack: Option<i64>,
    pub m_star: u64,
    pub cd_member_count: usize,
    pub subgroup_count: usize,
    pub violations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl SweepRow {
    fn failed(e: &CatalogEntry, abelian: bool, err: String) -> SweepRow {
        SweepRow {
            group: e.name.clone(),
            order: e.order,
            abelian,
            hypothesis: "error".into(),
            condition_a: "error".into(),
            condition_b: "error".into(),
            recognition: "neither".into(),
            n: None,
            m: None,
            k: None,
            bound_slack: None,
            m_star: 0,
            cd_member_count: 0,
            subgroup_count: 0,
            violations: Vec::new(),
            error: Some(err),
        }
    }

    pub fn hypothesis_holds(&self) -> bool {
        self.hypothesis == Truth::True.as_str()
    }

    pub fn corollary_condition_holds(&self) -> bool {
        self.condition_a == "true" || self.condition_b == "true"
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub total: usize,
    pub hypothesis_count: usize,
    pub errors: usize,
    pub violations: usize,
    pub hypothesis_groups: Vec<String>,
    pub nonabelian_hypothesis_groups: Vec<String>,
    pub corollary_groups: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub summary: SweepSummary,
}

fn sweep_row(e: &CatalogEntry, filter: &SweepFilter, opts: &VerifyOptions) -> Option<SweepRow> {
    // The trivial group only has a vacuous verdict and never enters a sweep.
    if e.order == 1 {
        return None;
    }
    let g = match e.build() {
        Ok(g) => g,
        Err(err) => return Some(SweepRow::failed(e, false, err.to_string())),
    };
    if !filter.matches(e, &g) {
        return None;
    }
    let abelian = g.is_abelian();
    let a = match analyze(&g, opts) {
        Ok(a) => a,
        Err(err) => return Some(SweepRow::failed(e, abelian, err.to_string())),
    };
    let t = &a.theorem;
    let cor = t.corollary.as_ref().expect("analyze fills the corollary");
    Some(SweepRow {
        group: e.name.clone(),
        order: e.order,
        abelian,
        hypothesis: t.hypothesis.as_str().into(),
        condition_a: cor.condition_a.as_str().into(),
        condition_b: cor.condition_b.as_str().into(),
        recognition: cor.recognition.to_string(),
        n: t.n,
        m: t.m,
        k: t.k,
        bound_slack: t.bound_slack,
        m_star: a.cd.m_star,
        cd_member_count: a.cd.cd_members.len(),
        subgroup_count: a.lattice.len(),
        violations: a.violations(),
        error: None,
    })
}

/// Evaluates catalog entries in parallel; rows come back sorted by order,
/// then name.
pub fn run_sweep(filter: &SweepFilter, opts: &VerifyOptions) -> SweepReport {
    let entries = catalog::entries_in(filter.min_order, filter.max_order);
    sweep_entries(&entries, filter, opts)
}

pub fn sweep_entries(
    entries: &[CatalogEntry],
    filter: &SweepFilter,
    opts: &VerifyOptions,
) -> SweepReport {
    let mut rows: Vec<SweepRow> = entries
        .par_iter()
        .filter_map(|e| sweep_row(e, filter, opts))
        .collect();
    rows.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.group.cmp(&b.group)));

    let mut summary = SweepSummary {
        total: rows.len(),
        ..Default::default()
    };
    for r in &rows {
        if r.error.is_some() {
            summary.errors += 1;
        }
        if !r.violations.is_empty() {
            summary.violations += 1;
        }
        if r.hypothesis_holds() {
            summary.hypothesis_count += 1;
            summary.hypothesis_groups.push(r.group.clone());
            if !r.abelian {
                summary.nonabelian_hypothesis_groups.push(r.group.clone());
            }
        }
        if r.corollary_condition_holds() {
            summary.corollary_groups.push(r.group.clone());
        }
    }
    SweepReport { rows, summary }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".into(), |x| x.to_string())
}

/// Overall result of a sweep. Violations outrank row errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepOutcome {
    Clean,
    Errors,
    Violations,
}

impl SweepOutcome {
    /// Process exit status used by the CLI.
    pub fn exit_code(self) -> u8 {
        match self {
            SweepOutcome::Clean => 0,
            SweepOutcome::Errors => 2,
            SweepOutcome::Violations => 3,
        }
    }
}

impl SweepReport {
    pub fn outcome(&self) -> SweepOutcome {
        if self.rows.iter().any(|r| !r.violations.is_empty()) {
            SweepOutcome::Violations
        } else if self.rows.iter().any(|r| r.error.is_some()) {
            SweepOutcome::Errors
        } else {
            SweepOutcome::Clean
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<24} {:>5} {:>5} {:>8} {:>6} {:>6} {:>4} {:>4} {:>4} {:>5} {:>8} {:>5} {:>7}  status",
            "group", "order", "ab", "hyp", "cor.a", "cor.b", "n", "m", "k", "slack", "m*", "|CD|", "|L(G)|"
        );
        for r in &self.rows {
            let status = match (&r.error, r.violations.is_empty()) {
                (Some(e), _) => format!("error: {e}"),
                (None, true) => "ok".into(),
                (None, false) => format!("VIOLATION: {}", r.violations.join(",")),
            };
            let _ = writeln!(
                out,
                "{:<24} {:>5} {:>5} {:>8} {:>6} {:>6} {:>4} {:>4} {:>4} {:>5} {:>8} {:>5} {:>7}  {}",
                r.group,
                r.order,
                if r.abelian { "yes" } else { "no" },
                r.hypothesis,
                r.condition_a,
                r.condition_b,
                opt(r.n),
                opt(r.m),
                opt(r.k),
                opt(r.bound_slack),
                r.m_star,
                r.cd_member_count,
                r.subgroup_count,
                status
            );
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "\n{} groups, {} satisfy the hypothesis, {} errors, {} with violations",
            s.total, s.hypothesis_count, s.errors, s.violations
        );
        let _ = writeln!(out, "hypothesis holds: {}", s.hypothesis_groups.join(", "));
        let _ = writeln!(
            out,
            "non-abelian: {}",
            s.nonabelian_hypothesis_groups.join(", ")
        );
        let _ = writeln!(
            out,
            "corollary conditions hold: {}",
            s.corollary_groups.join(", ")
        );
        out
    }
}
