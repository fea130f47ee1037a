//! Subgroups, subgroup lattices and the element-level subgroups the
//! theory needs (centralizers, centre, Ω₁).
//!
//! The lattice is enumerated by a join fixpoint: starting from the trivial
//! subgroup, every known subgroup is joined with every cyclic subgroup it
//! does not already contain. Every subgroup is a join of cyclic subgroups,
//! so this reaches all of them. The same pass yields the Hasse diagram,
//! because each cover of `H` has the form `<H, g>` and is minimal among
//! those joins.

use std::collections::{HashMap, HashSet};

use crate::arith::{self, is_prime};
use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::group::{Group, MAX_CONSTRUCTION_ORDER};

/// A subset of a group's elements that is closed under the operation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: ElementSet,
    size: usize,
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup{:?}", self.members)
    }
}

impl Subgroup {
    fn from_members(members: ElementSet) -> Subgroup {
        let size = members.len();
        Subgroup { members, size }
    }

    /// Wraps `members` after checking it is a subgroup of `g`.
    pub fn new(g: &Group, members: ElementSet) -> Result<Subgroup> {
        if members.universe() != g.order() {
            return Err(Error::param("element set has the wrong universe"));
        }
        if !members.contains(g.identity()) {
            return Err(Error::param("set does not contain the identity"));
        }
        let list: Vec<usize> = members.iter().collect();
        for &a in &list {
            if !members.contains(g.inverse(a)) {
                return Err(Error::param(format!(
                    "set is not closed under inverses at {a}"
                )));
            }
            for &b in &list {
                if !members.contains(g.mul(a, b)) {
                    return Err(Error::param(format!("set is not closed: {a}·{b}")));
                }
            }
        }
        Ok(Subgroup::from_members(members))
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(i)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_trivial(&self) -> bool {
        self.size == 1
    }

    /// A small generating set, picked greedily in index order.
    pub fn generators(&self, g: &Group) -> Vec<usize> {
        let mut span = ElementSet::from_indices(g.order(), [g.identity()]);
        let mut gens = Vec::new();
        for x in self.members.iter() {
            if !span.contains(x) {
                span = extend(g, &span, &gens, x);
                gens.push(x);
            }
        }
        gens
    }

    pub fn is_abelian(&self, g: &Group) -> bool {
        let gens = self.generators(g);
        gens.iter()
            .enumerate()
            .all(|(i, &a)| gens[i + 1..].iter().all(|&b| g.commute(a, b)))
    }

    /// True when the subgroup is generated by a single element, i.e. some
    /// member has order equal to the subgroup size.
    pub fn is_cyclic(&self, g: &Group) -> bool {
        self.members.iter().any(|x| g.order_of(x) == self.size)
    }
}

/// Smallest subgroup containing `old ∪ {s}`, where `gens` generate `old`.
///
/// Dimino's coset extension: the result is a union of right cosets of
/// `old`, closed under right multiplication by every generator.
fn extend(g: &Group, old: &ElementSet, gens: &[usize], s: usize) -> ElementSet {
    if old.contains(s) {
        return old.clone();
    }
    let base: Vec<usize> = old.iter().collect();
    let mut out = old.clone();
    let mut reps = vec![g.identity(), s];
    for &h in &base {
        out.insert(g.mul(h, s));
    }
    let mut i = 0;
    while i < reps.len() {
        let r = reps[i];
        for &t in gens.iter().chain(std::iter::once(&s)) {
            let x = g.mul(r, t);
            if !out.contains(x) {
                for &h in &base {
                    out.insert(g.mul(h, x));
                }
                reps.push(x);
            }
        }
        i += 1;
    }
    out
}

fn cyclic_members(g: &Group, x: usize) -> ElementSet {
    let mut s = ElementSet::empty(g.order());
    let mut y = g.identity();
    loop {
        s.insert(y);
        y = g.mul(y, x);
        if y == g.identity() {
            return s;
        }
    }
}

/// Closure of `gens` under the group operation.
pub fn subgroup_generated(g: &Group, gens: &[usize]) -> Result<Subgroup> {
    if let Some(&bad) = gens.iter().find(|&&x| x >= g.order()) {
        return Err(Error::param(format!(
            "element {bad} out of range for order {}",
            g.order()
        )));
    }
    let mut members = ElementSet::from_indices(g.order(), [g.identity()]);
    let mut used = Vec::new();
    for &s in gens {
        if !members.contains(s) {
            members = extend(g, &members, &used, s);
            used.push(s);
        }
    }
    Ok(Subgroup::from_members(members))
}

fn centralizer_of_gens(g: &Group, gens: &[usize]) -> ElementSet {
    ElementSet::from_indices(
        g.order(),
        g.elements()
            .filter(|&x| gens.iter().all(|&h| g.commute(x, h))),
    )
}

/// `C_G(H)`: elements commuting with every element of `H`.
pub fn centralizer(g: &Group, h: &Subgroup) -> Subgroup {
    Subgroup::from_members(centralizer_of_gens(g, &h.generators(g)))
}

/// `Z(G)`.
pub fn center(g: &Group) -> Subgroup {
    Subgroup::from_members(ElementSet::from_indices(
        g.order(),
        g.elements()
            .filter(|&z| g.elements().all(|x| g.commute(z, x))),
    ))
}

/// Subgroup generated by the elements `x` with `x^p = 1`.
pub fn omega1(g: &Group, p: u64) -> Result<Subgroup> {
    if !is_prime(p) {
        return Err(Error::param(format!("{p} is not prime")));
    }
    if !(g.order() as u64).is_multiple_of(p) {
        return Err(Error::param(format!(
            "{p} does not divide |G| = {}",
            g.order()
        )));
    }
    let gens: Vec<usize> = g
        .elements()
        .filter(|&x| g.order_of(x) as u64 == p)
        .collect();
    subgroup_generated(g, &gens)
}

/// Least common multiple of the element orders.
pub fn exponent(g: &Group) -> u64 {
    g.elements()
        .fold(1, |acc, x| arith::lcm(acc, g.order_of(x) as u64))
}

/// Exponent of a subgroup, computed from its members.
pub fn subgroup_exponent(g: &Group, h: &Subgroup) -> u64 {
    h.members()
        .iter()
        .fold(1, |acc, x| arith::lcm(acc, g.order_of(x) as u64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeOptions {
    /// Refuse groups larger than this.
    pub max_order: usize,
    /// Abort enumeration once this many subgroups have been found.
    pub max_subgroups: usize,
    /// Build the Hasse diagram only up to this many subgroups.
    pub max_hasse: usize,
}

impl Default for LatticeOptions {
    fn default() -> Self {
        LatticeOptions {
            max_order: MAX_CONSTRUCTION_ORDER,
            max_subgroups: 100_000,
            max_hasse: 20_000,
        }
    }
}

/// All subgroups of a group, sorted canonically (by size, then by member
/// list), with meet/join lookups and the optional Hasse diagram.
///
/// Subgroup ids are positions in the canonical order, so id 0 is the
/// trivial subgroup and the last id is the whole group.
#[derive(Clone)]
pub struct SubgroupLattice {
    group: Group,
    subgroups: Vec<Subgroup>,
    generators: Vec<Vec<usize>>,
    index: HashMap<ElementSet, usize>,
    hasse: Option<Vec<(usize, usize)>>,
}

impl std::fmt::Debug for SubgroupLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SubgroupLattice")
            .field("group", &self.group.label())
            .field("subgroups", &self.subgroups.len())
            .field("hasse", &self.hasse.as_ref().map(Vec::len))
            .finish()
    }
}

/// Outcome of a modularity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Modularity {
    /// `(a, b, c)` with `a ≤ c` and `a ∨ (b ∧ c) ≠ (a ∨ b) ∧ c`.
    pub counterexample: Option<(usize, usize, usize)>,
}

impl Modularity {
    pub fn is_modular(&self) -> bool {
        self.counterexample.is_none()
    }
}

pub fn all_subgroups(g: &Group) -> Result<SubgroupLattice> {
    all_subgroups_with(g, &LatticeOptions::default())
}

pub fn all_subgroups_with(g: &Group, opts: &LatticeOptions) -> Result<SubgroupLattice> {
    if g.order() > opts.max_order {
        return Err(Error::capacity("group order", opts.max_order, g.order()));
    }

    let mut seen = HashSet::new();
    let mut cyclics: Vec<(ElementSet, usize)> = Vec::new();
    for x in g.elements() {
        if x == g.identity() {
            continue;
        }
        let c = cyclic_members(g, x);
        if seen.insert(c.clone()) {
            cyclics.push((c, x));
        }
    }

    let trivial = ElementSet::from_indices(g.order(), [g.identity()]);
    let mut sets = vec![trivial.clone()];
    let mut gens: Vec<Vec<usize>> = vec![Vec::new()];
    let mut index = HashMap::from([(trivial, 0usize)]);
    let mut above: Vec<Vec<usize>> = Vec::new();

    let mut next = 0;
    while next < sets.len() {
        let current = sets[next].clone();
        let mut joins = Vec::new();
        for (c, x) in &cyclics {
            if c.is_subset(&current) {
                continue;
            }
            let joined = extend(g, &current, &gens[next], *x);
            let id = match index.get(&joined) {
                Some(&id) => id,
                None => {
                    let id = sets.len();
                    if id >= opts.max_subgroups {
                        return Err(Error::capacity(
                            "subgroup count",
                            opts.max_subgroups,
                            id + 1,
                        ));
                    }
                    let mut ng = gens[next].clone();
                    ng.push(*x);
                    index.insert(joined.clone(), id);
                    sets.push(joined);
                    gens.push(ng);
                    id
                }
            };
            joins.push(id);
        }
        joins.sort_unstable();
        joins.dedup();
        above.push(joins);
        next += 1;
    }

    let mut order: Vec<usize> = (0..sets.len()).collect();
    order.sort_by(|&a, &b| sets[a].canonical_cmp(&sets[b]));
    let mut rank = vec![0; sets.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }

    let hasse = (sets.len() <= opts.max_hasse).then(|| {
        let mut edges = Vec::new();
        for (h, cands) in above.iter().enumerate() {
            for &c in cands {
                let minimal = cands
                    .iter()
                    .all(|&d| d == c || !sets[d].is_subset(&sets[c]));
                if minimal {
                    edges.push((rank[h], rank[c]));
                }
            }
        }
        edges.sort_unstable();
        edges
    });

    let mut subgroups = Vec::with_capacity(sets.len());
    let mut sorted_gens = Vec::with_capacity(sets.len());
    for &old in &order {
        subgroups.push(Subgroup::from_members(sets[old].clone()));
        sorted_gens.push(std::mem::take(&mut gens[old]));
    }
    for v in index.values_mut() {
        *v = rank[*v];
    }

    Ok(SubgroupLattice {
        group: g.clone(),
        subgroups,
        generators: sorted_gens,
        index,
        hasse,
    })
}

impl SubgroupLattice {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, id: usize) -> &Subgroup {
        &self.subgroups[id]
    }

    /// A generating set for subgroup `id` (empty for the trivial subgroup).
    pub fn generators(&self, id: usize) -> &[usize] {
        &self.generators[id]
    }

    pub fn id_of(&self, members: &ElementSet) -> Option<usize> {
        self.index.get(members).copied()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.subgroups[a].is_subgroup_of(&self.subgroups[b])
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        let m = self.subgroups[a]
            .members
            .intersection(&self.subgroups[b].members);
        self.index[&m]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        let mut members = self.subgroups[a].members.clone();
        let mut used = self.generators[a].clone();
        for &s in &self.generators[b] {
            if !members.contains(s) {
                members = extend(&self.group, &members, &used, s);
                used.push(s);
            }
        }
        self.index[&members]
    }

    /// Id of `C_G(H)` for subgroup `id`.
    pub fn centralizer_id(&self, id: usize) -> usize {
        let c = centralizer_of_gens(&self.group, &self.generators[id]);
        self.index[&c]
    }

    /// Cover relations `(lower, upper)`, when the lattice was small enough
    /// for them to be built.
    pub fn hasse(&self) -> Option<&[(usize, usize)]> {
        self.hasse.as_deref()
    }

    /// Checks that `members` is closed under meet and join, then tests the
    /// modular law on every triple.
    pub fn is_modular(&self, members: &[usize]) -> Result<Modularity> {
        let k = members.len();
        let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut meets = vec![0; k * k];
        let mut joins = vec![0; k * k];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                let m = self.meet(a, b);
                let jn = self.join(a, b);
                meets[i * k + j] = *pos.get(&m).ok_or_else(|| {
                    Error::NotASublattice(format!("meet of {a} and {b} is {m}, not a member"))
                })?;
                joins[i * k + j] = *pos.get(&jn).ok_or_else(|| {
                    Error::NotASublattice(format!("join of {a} and {b} is {jn}, not a member"))
                })?;
            }
        }
        for a in 0..k {
            for c in 0..k {
                if !self.leq(members[a], members[c]) {
                    continue;
                }
                for b in 0..k {
                    let lhs = joins[a * k + meets[b * k + c]];
                    let rhs = meets[joins[a * k + b] * k + c];
                    if lhs != rhs {
                        return Ok(Modularity {
                            counterexample: Some((members[a], members[b], members[c])),
                        });
                    }
                }
            }
        }
        Ok(Modularity {
            counterexample: None,
        })
    }
}
