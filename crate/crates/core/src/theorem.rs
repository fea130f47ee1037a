//! Groups whose non-trivial cyclic subgroups all have the same
//! Chermak–Delgado measure.
//!
//! Such a group must be a p-group, say `|G| = p^n`, `exp(G) = p^m`,
//! `|Z(G)| = p^k`, with `Ω₁(G) = Z(G)` (every element of order p is
//! central), common measure `p^(n+1)` and `k ≤ n − 2m + 2`. If moreover
//! every cyclic measure equals `m*(G)`, or all non-trivial abelian
//! subgroups share one measure, the group is `C_p` or `Q8`.
//!
//! The functions here decide the hypotheses on an explicit lattice and
//! check each consequence separately, recording failures as data.

use std::fmt;

use crate::arith::{is_prime, prime_power, valuation};
use crate::bitset::ElementSet;
use crate::cd::{measure_table, CdReport};
use crate::lattice::{self, SubgroupLattice};

/// A hypothesis verdict. The trivial group satisfies every "for all
/// non-trivial subgroups" condition vacuously and is reported as such.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Truth {
    True,
    False,
    Vacuous,
}

impl Truth {
    fn from_bool(b: bool) -> Self {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }

    pub fn holds(self) -> bool {
        self == Truth::True
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Truth::True => "true",
            Truth::False => "false",
            Truth::Vacuous => "vacuous",
        }
    }
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl Verdict {
    fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "n/a",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Recognition {
    Cp(u64),
    Q8,
    Neither,
}

impl fmt::Display for Recognition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recognition::Cp(p) => write!(f, "C{p}"),
            Recognition::Q8 => f.write_str("Q8"),
            Recognition::Neither => f.write_str("neither"),
        }
    }
}

pub const P_GROUP: &str = "p_group";
pub const OMEGA1_EQUALS_CENTER: &str = "omega1_equals_center";
pub const CENTER_ELEMENTARY: &str = "center_elementary_abelian";
pub const COMMON_VALUE: &str = "common_value";
pub const ORDER_BOUND: &str = "order_bound";
pub const DIVISIBILITY: &str = "divisibility";
pub const CP_OR_Q8: &str = "cp_or_q8";

const CONCLUSIONS: [&str; 6] = [
    P_GROUP,
    OMEGA1_EQUALS_CENTER,
    CENTER_ELEMENTARY,
    COMMON_VALUE,
    ORDER_BOUND,
    DIVISIBILITY,
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorollaryReport {
    /// Every non-trivial cyclic subgroup has measure `m*(G)`.
    pub condition_a: Truth,
    /// Every non-trivial abelian subgroup has the same measure.
    pub condition_b: Truth,
    pub recognition: Recognition,
    pub conclusion: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub label: String,
    pub hypothesis: Truth,
    pub common_measure: Option<u64>,
    /// Set when `|G|` is a prime power.
    pub prime: Option<u64>,
    pub n: Option<u32>,
    pub m: Option<u32>,
    pub k: Option<u32>,
    /// `n − 2m + 2 − k`.
    pub bound_slack: Option<i64>,
    pub conclusions: Vec<(&'static str, Verdict)>,
    pub corollary: Option<CorollaryReport>,
}

impl TheoremReport {
    pub fn conclusion(&self, name: &str) -> Option<Verdict> {
        self.conclusions
            .iter()
            .find(|(n, _)| *n == name)
            .map(|&(_, v)| v)
    }

    /// Names of conclusions (and the corollary) that failed.
    pub fn violations(&self) -> Vec<&'static str> {
        let mut out: Vec<&'static str> = self
            .conclusions
            .iter()
            .filter(|(_, v)| *v == Verdict::Fail)
            .map(|&(n, _)| n)
            .collect();
        if self
            .corollary
            .as_ref()
            .is_some_and(|c| c.conclusion == Verdict::Fail)
        {
            out.push(CP_OR_Q8);
        }
        out
    }
}

/// Ids of the cyclic subgroups other than the trivial one.
pub fn nontrivial_cyclic_subgroups(l: &SubgroupLattice) -> Vec<usize> {
    let g = l.group();
    (0..l.len())
        .filter(|&id| {
            let h = l.subgroup(id);
            !h.is_trivial() && h.is_cyclic(g)
        })
        .collect()
}

fn cyclic_measures(l: &SubgroupLattice) -> Vec<u64> {
    nontrivial_cyclic_subgroups(l)
        .into_iter()
        .map(|id| l.subgroup(id).size() as u64 * l.subgroup(l.centralizer_id(id)).size() as u64)
        .collect()
}

/// Whether all non-trivial cyclic subgroups have one common measure.
pub fn equal_cyclic_measure(l: &SubgroupLattice) -> Truth {
    if l.group().order() == 1 {
        return Truth::Vacuous;
    }
    let ms = cyclic_measures(l);
    Truth::from_bool(ms.windows(2).all(|w| w[0] == w[1]))
}

/// `C_p` when `|G|` is prime; `Q8` when `G` has order 8, is non-abelian
/// and has exactly one involution (the only such group of order 8).
pub fn recognize_cp_or_q8(g: &crate::group::Group) -> Recognition {
    let n = g.order() as u64;
    if is_prime(n) {
        return Recognition::Cp(n);
    }
    if n == 8 && !g.is_abelian() {
        let involutions = g.elements().filter(|&x| g.order_of(x) == 2).count();
        if involutions == 1 {
            return Recognition::Q8;
        }
    }
    Recognition::Neither
}

/// Decides the equal-cyclic-measure hypothesis and, when it holds,
/// checks every consequence.
pub fn verify_theorem(l: &SubgroupLattice) -> TheoremReport {
    let g = l.group();
    let hypothesis = equal_cyclic_measure(l);
    let measures = cyclic_measures(l);
    let common_measure = (hypothesis == Truth::True).then(|| measures[0]);

    let center = lattice::center(g);
    let pk = prime_power(g.order() as u64);
    let (prime, n, m, k, bound_slack) = match pk {
        Some((p, n)) => {
            let m = valuation(lattice::exponent(g), p);
            let k = valuation(center.size() as u64, p);
            let slack = n as i64 - 2 * m as i64 + 2 - k as i64;
            (Some(p), Some(n), Some(m), Some(k), Some(slack))
        }
        None => (None, None, None, None, None),
    };

    let conclusions = if hypothesis != Truth::True {
        CONCLUSIONS
            .iter()
            .map(|&c| (c, Verdict::NotApplicable))
            .collect()
    } else if let (Some(p), Some(n), Some(m), Some(k), Some(slack)) = (prime, n, m, k, bound_slack)
    {
        let omega = lattice::omega1(g, p).expect("p divides |G|");
        let common = common_measure.expect("hypothesis holds");
        vec![
            (P_GROUP, Verdict::Pass),
            (OMEGA1_EQUALS_CENTER, Verdict::from_bool(omega == center)),
            (
                CENTER_ELEMENTARY,
                Verdict::from_bool(lattice::subgroup_exponent(g, &center) == p),
            ),
            (COMMON_VALUE, Verdict::from_bool(common == p.pow(n + 1))),
            (ORDER_BOUND, Verdict::from_bool(slack >= 0)),
            (
                DIVISIBILITY,
                Verdict::from_bool(divisibility_holds(l, &center, p, m, k)),
            ),
        ]
    } else {
        let mut v = vec![(P_GROUP, Verdict::Fail)];
        v.extend(CONCLUSIONS[1..].iter().map(|&c| (c, Verdict::Fail)));
        v
    };

    TheoremReport {
        label: g.label().to_string(),
        hypothesis,
        common_measure,
        prime,
        n,
        m,
        k,
        bound_slack,
        conclusions,
        corollary: None,
    }
}

/// For every `b` of maximal order `p^m`: `|<b>Z(G)| = p^(m+k−1)` and this
/// divides `|C_G(<b>)|`.
fn divisibility_holds(
    l: &SubgroupLattice,
    center: &lattice::Subgroup,
    p: u64,
    m: u32,
    k: u32,
) -> bool {
    let g = l.group();
    let top = p.pow(m);
    let expected = p.pow(m + k - 1);
    g.elements()
        .filter(|&b| g.order_of(b) as u64 == top)
        .all(|b| {
            let cyclic = lattice::subgroup_generated(g, &[b]).expect("b in range");
            let mut product = ElementSet::empty(g.order());
            for x in cyclic.members().iter() {
                for z in center.members().iter() {
                    product.insert(g.mul(x, z));
                }
            }
            let id = l.id_of(cyclic.members()).expect("lattice is complete");
            let csize = l.subgroup(l.centralizer_id(id)).size() as u64;
            let size = product.len() as u64;
            size == expected && csize.is_multiple_of(size)
        })
}

/// Evaluates both corollary conditions and checks the recognition.
pub fn verify_corollary(l: &SubgroupLattice, cd: &CdReport) -> CorollaryReport {
    let g = l.group();
    let recognition = recognize_cp_or_q8(g);
    if g.order() == 1 {
        return CorollaryReport {
            condition_a: Truth::Vacuous,
            condition_b: Truth::Vacuous,
            recognition,
            conclusion: Verdict::NotApplicable,
        };
    }
    let rows = &cd.measures;
    let condition_a = Truth::from_bool(
        nontrivial_cyclic_subgroups(l)
            .iter()
            .all(|&id| rows[id].measure == cd.m_star),
    );
    let abelian: Vec<u64> = rows
        .iter()
        .filter(|r| r.size > 1 && l.leq(r.id, r.centralizer_id))
        .map(|r| r.measure)
        .collect();
    let condition_b = Truth::from_bool(abelian.windows(2).all(|w| w[0] == w[1]));
    let conclusion = if condition_a.holds() || condition_b.holds() {
        Verdict::from_bool(recognition != Recognition::Neither)
    } else {
        Verdict::NotApplicable
    };
    CorollaryReport {
        condition_a,
        condition_b,
        recognition,
        conclusion,
    }
}

/// Theorem and corollary together, computing the measure table as needed.
pub fn verify_all(l: &SubgroupLattice) -> TheoremReport {
    let (measures, m_star, cd_members) = measure_table(l);
    let cd = CdReport {
        label: l.group().label().to_string(),
        measures,
        m_star,
        cd_members,
        properties: Vec::new(),
    };
    let mut report = verify_theorem(l);
    report.corollary = Some(verify_corollary(l, &cd));
    report
}
