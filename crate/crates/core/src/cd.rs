//! Chermak–Delgado measures and lattices.
//!
//! `m_G(H) = |H|·|C_G(H)|`. The subgroups of maximal measure form a
//! modular, self-dual sublattice of the subgroup lattice; [`cd_lattice`]
//! computes it and checks the structural facts known about it. None of
//! those checks can fail for a correct enumeration, so a failed check
//! points at a bug rather than at the group.

use std::collections::HashSet;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::lattice::{self, LatticeOptions, Subgroup, SubgroupLattice};

/// `|H| · |C_G(H)|`.
pub fn measure(g: &Group, h: &Subgroup) -> u64 {
    h.size() as u64 * lattice::centralizer(g, h).size() as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeasureRow {
    pub id: usize,
    pub size: usize,
    pub centralizer_id: usize,
    pub centralizer_size: usize,
    pub measure: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

impl PropertyCheck {
    fn pass(name: &'static str) -> Self {
        PropertyCheck {
            name,
            passed: true,
            witness: None,
        }
    }

    fn fail(name: &'static str, witness: impl Into<String>) -> Self {
        PropertyCheck {
            name,
            passed: false,
            witness: Some(witness.into()),
        }
    }

    fn from_first_failure(name: &'static str, failure: Option<String>) -> Self {
        match failure {
            None => Self::pass(name),
            Some(w) => Self::fail(name, w),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdReport {
    pub label: String,
    /// One row per subgroup, indexed by lattice id.
    pub measures: Vec<MeasureRow>,
    pub m_star: u64,
    /// Lattice ids attaining `m_star`, ascending.
    pub cd_members: Vec<usize>,
    pub properties: Vec<PropertyCheck>,
}

impl CdReport {
    pub fn is_member(&self, id: usize) -> bool {
        self.cd_members.binary_search(&id).is_ok()
    }

    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(|p| p.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyCheck> {
        self.properties.iter().filter(|p| !p.passed)
    }

    pub fn property(&self, name: &str) -> Option<&PropertyCheck> {
        self.properties.iter().find(|p| p.name == name)
    }
}

/// Measure table, `m*` and members, without the property checks.
pub fn measure_table(l: &SubgroupLattice) -> (Vec<MeasureRow>, u64, Vec<usize>) {
    let rows: Vec<MeasureRow> = (0..l.len())
        .map(|id| {
            let cid = l.centralizer_id(id);
            let size = l.subgroup(id).size();
            let csize = l.subgroup(cid).size();
            MeasureRow {
                id,
                size,
                centralizer_id: cid,
                centralizer_size: csize,
                measure: size as u64 * csize as u64,
            }
        })
        .collect();
    let m_star = rows.iter().map(|r| r.measure).max().unwrap_or(0);
    let members = rows
        .iter()
        .filter(|r| r.measure == m_star)
        .map(|r| r.id)
        .collect();
    (rows, m_star, members)
}

pub fn cd_lattice(l: &SubgroupLattice) -> Result<CdReport> {
    cd_lattice_with(l, &LatticeOptions::default())
}

/// Full report. `opts` bounds the extra enumeration of the maximal
/// member's own lattice.
pub fn cd_lattice_with(l: &SubgroupLattice, opts: &LatticeOptions) -> Result<CdReport> {
    let g = l.group();
    let (measures, m_star, cd_members) = measure_table(l);
    let member_set: HashSet<usize> = cd_members.iter().copied().collect();
    let c = |id: usize| measures[id].centralizer_id;
    let mut properties = Vec::new();

    // P1
    let mut ineq = None;
    let mut collapse = None;
    for r in &measures {
        let cm = measures[r.centralizer_id].measure;
        if r.measure > cm && ineq.is_none() {
            ineq = Some(format!("H={} has measure {} > {}", r.id, r.measure, cm));
        }
        if r.measure == cm && c(c(r.id)) != r.id && collapse.is_none() {
            collapse = Some(format!("H={} has C(C(H))={}", r.id, c(c(r.id))));
        }
    }
    properties.push(PropertyCheck::from_first_failure(
        "p1_duality_inequality",
        ineq,
    ));
    properties.push(PropertyCheck::from_first_failure(
        "p1_double_centralizer",
        collapse,
    ));

    // P2
    let outside = cd_members
        .iter()
        .find(|&&h| !member_set.contains(&c(h)))
        .map(|&h| format!("C({h})={} is not a member", c(h)));
    properties.push(PropertyCheck::from_first_failure(
        "p2_centralizer_in_cd",
        outside,
    ));
    let not_involutive = cd_members
        .iter()
        .find(|&&h| c(c(h)) != h)
        .map(|&h| format!("C(C({h}))={}", c(c(h))));
    properties.push(PropertyCheck::from_first_failure(
        "p2_double_centralizer",
        not_involutive,
    ));

    // P3
    let modularity = l.is_modular(&cd_members);
    let closed = match &modularity {
        Ok(_) => PropertyCheck::pass("p3_meet_join_closed"),
        Err(e) => PropertyCheck::fail("p3_meet_join_closed", e.to_string()),
    };
    let closure_ok = closed.passed;
    properties.push(closed);
    properties.push(match modularity {
        Ok(m) => match m.counterexample {
            None => PropertyCheck::pass("p3_modular"),
            Some((a, b, cc)) => {
                PropertyCheck::fail("p3_modular", format!("triple ({a}, {b}, {cc})"))
            }
        },
        Err(_) => PropertyCheck::fail("p3_modular", "not a sublattice"),
    });
    properties.push(PropertyCheck::from_first_failure(
        "p3_self_dual",
        self_duality_failure(l, &cd_members, &member_set, &c),
    ));

    // P4 and P5 need the extreme members.
    let min = cd_members.iter().copied().reduce(|a, b| l.meet(a, b));
    let max = cd_members.iter().copied().reduce(|a, b| l.join(a, b));
    let center = lattice::center(g);
    match min.filter(|m| member_set.contains(m)) {
        Some(m) => {
            let h = l.subgroup(m);
            properties.push(if h.is_abelian(g) {
                PropertyCheck::pass("p4_min_abelian")
            } else {
                PropertyCheck::fail("p4_min_abelian", format!("M(G)={m} is not abelian"))
            });
            properties.push(if center.is_subgroup_of(h) {
                PropertyCheck::pass("p4_min_contains_center")
            } else {
                PropertyCheck::fail("p4_min_contains_center", format!("Z(G) not in M(G)={m}"))
            });
            properties.push(if g.is_normal(h.members()) {
                PropertyCheck::pass("p4_min_normal")
            } else {
                PropertyCheck::fail("p4_min_normal", format!("M(G)={m} is not normal"))
            });
        }
        None => {
            for name in ["p4_min_abelian", "p4_min_contains_center", "p4_min_normal"] {
                properties.push(PropertyCheck::fail(name, "no minimal member"));
            }
        }
    }
    match max.filter(|m| member_set.contains(m) && closure_ok) {
        Some(m) => {
            let h = l.subgroup(m);
            properties.push(if g.is_normal(h.members()) {
                PropertyCheck::pass("p5_max_normal")
            } else {
                PropertyCheck::fail("p5_max_normal", format!("max member {m} is not normal"))
            });
            properties.push(max_member_check(l, m, &cd_members, opts)?);
        }
        None => {
            for name in ["p5_max_normal", "p5_max_cd_equal"] {
                properties.push(PropertyCheck::fail(name, "no maximal member"));
            }
        }
    }

    Ok(CdReport {
        label: g.label().to_string(),
        measures,
        m_star,
        cd_members,
        properties,
    })
}

fn self_duality_failure(
    l: &SubgroupLattice,
    members: &[usize],
    member_set: &HashSet<usize>,
    c: &impl Fn(usize) -> usize,
) -> Option<String> {
    let image: HashSet<usize> = members.iter().map(|&h| c(h)).collect();
    if image.len() != members.len() || !image.is_subset(member_set) {
        return Some("centralizer map is not a bijection of CD(G)".into());
    }
    for &h in members {
        if c(c(h)) != h {
            return Some(format!("C is not an involution at {h}"));
        }
        for &k in members {
            if l.leq(h, k) && !l.leq(c(k), c(h)) {
                return Some(format!("{h} <= {k} but C({k}) is not below C({h})"));
            }
        }
    }
    None
}

/// CD(M) = CD(G) for the maximal member M, compared as element sets of G
/// through the embedding of M.
fn max_member_check(
    l: &SubgroupLattice,
    max: usize,
    cd_members: &[usize],
    opts: &LatticeOptions,
) -> Result<PropertyCheck> {
    const NAME: &str = "p5_max_cd_equal";
    if max == l.top() {
        // M = G and the embedding is the identity.
        return Ok(PropertyCheck::pass(NAME));
    }
    let g = l.group();
    let (mg, embed) = g.induced(l.subgroup(max).members())?;
    let ml = lattice::all_subgroups_with(&mg, opts)?;
    let (_, _, m_members) = measure_table(&ml);
    let mapped: HashSet<ElementSet> = m_members
        .iter()
        .map(|&id| {
            ElementSet::from_indices(
                g.order(),
                ml.subgroup(id).members().iter().map(|x| embed[x]),
            )
        })
        .collect();
    let ours: HashSet<ElementSet> = cd_members
        .iter()
        .map(|&id| l.subgroup(id).members().clone())
        .collect();
    Ok(if mapped == ours {
        PropertyCheck::pass(NAME)
    } else {
        PropertyCheck::fail(
            NAME,
            format!("|CD(M)| = {}, |CD(G)| = {}", mapped.len(), ours.len()),
        )
    })
}

/// The least member of CD(G), i.e. the meet of all members.
pub fn chermak_delgado_subgroup(report: &CdReport, l: &SubgroupLattice) -> Result<usize> {
    let min = report
        .cd_members
        .iter()
        .copied()
        .reduce(|a, b| l.meet(a, b))
        .ok_or_else(|| Error::InternalInconsistency("CD(G) is empty".into()))?;
    if report.is_member(min) {
        Ok(min)
    } else {
        Err(Error::InternalInconsistency(format!(
            "meet of CD(G) is subgroup {min}, which is not a member"
        )))
    }
}
