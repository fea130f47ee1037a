//! Small-group catalog.
//!
//! Complete up to isomorphism through order 16; beyond that it covers the
//! abelian groups, dihedral and dicyclic groups, split metacyclic groups
//! `C_m ⋊ C_n`, products of the small non-abelian groups and a handful of
//! named groups, up to [`CATALOG_MAX_ORDER`]. Entries are recipes in the
//! spec language, so every entry can be rebuilt from its name.

use std::collections::{BTreeMap, HashSet};

use crate::arith::{factorize, gcd};
use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::group::{self, Group};
use crate::lattice::{center, exponent, subgroup_generated};
use crate::spec::GroupSpec;

pub const CATALOG_MAX_ORDER: usize = 128;

/// Named groups that have no direct spec-language recipe.
const NAMED: &[(&str, usize)] = &[
    ("A4", 12),
    ("G16_3", 16),
    ("Pauli16", 16),
    ("SL23", 24),
    ("S4", 24),
    ("Heis27", 27),
    ("A5", 60),
    ("Heis125", 125),
];

pub fn named_order(name: &str) -> Option<usize> {
    NAMED.iter().find(|(n, _)| *n == name).map(|&(_, o)| o)
}

pub fn named_groups() -> impl Iterator<Item = &'static str> {
    NAMED.iter().map(|&(n, _)| n)
}

/// Permutation of `target` induced by sending generator `gens[i]` of
/// `source` to `images[i]`, extended multiplicatively. Fails when the
/// assignment does not extend to a well-defined map.
fn hom_from_generators(
    source: &Group,
    gens: &[usize],
    images: &[usize],
    target: &Group,
) -> Result<Vec<usize>> {
    let mut map = vec![usize::MAX; source.order()];
    map[source.identity()] = target.identity();
    let mut queue = vec![source.identity()];
    while let Some(x) = queue.pop() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = source.mul(x, s);
            let img = target.mul(map[x], t);
            if map[y] == usize::MAX {
                map[y] = img;
                queue.push(y);
            } else if map[y] != img {
                return Err(Error::action(
                    "generator images do not define a homomorphism",
                ));
            }
        }
    }
    if map.contains(&usize::MAX) {
        return Err(Error::action("generators do not generate the group"));
    }
    Ok(map)
}

fn powers_of(perm: &[usize], count: usize) -> Vec<Vec<usize>> {
    let mut out = vec![(0..perm.len()).collect::<Vec<_>>()];
    for _ in 1..count {
        let last = out.last().unwrap();
        out.push(last.iter().map(|&x| perm[x]).collect());
    }
    out
}

/// Group generated by permutations of `0..degree`, identity first.
fn permutation_group(label: &str, degree: usize, gens: &[Vec<usize>]) -> Result<Group> {
    let identity: Vec<usize> = (0..degree).collect();
    let mut elems = vec![identity];
    let mut seen: HashSet<Vec<usize>> = elems.iter().cloned().collect();
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let p: Vec<usize> = elems[i].iter().map(|&x| g[x]).collect();
            if seen.insert(p.clone()) {
                elems.push(p);
            }
        }
        i += 1;
    }
    let pos: std::collections::HashMap<&Vec<usize>, usize> =
        elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
    // (a·b)(x) = b(a(x)): apply a first.
    let rows: Vec<Vec<usize>> = elems
        .iter()
        .map(|a| {
            elems
                .iter()
                .map(|b| pos[&a.iter().map(|&x| b[x]).collect::<Vec<_>>()])
                .collect()
        })
        .collect();
    Group::from_table(label, &rows)
}

/// Heisenberg group mod p: `(C_p × C_p) ⋊ C_p` with `(x, y) ↦ (x, x + y)`.
fn heisenberg(p: usize) -> Result<Group> {
    let cp = group::make_cyclic(p)?;
    let plane = group::direct_product(&cp, &cp)?;
    let shear: Vec<usize> = (0..p * p)
        .map(|v| (v / p) * p + (v / p + v % p) % p)
        .collect();
    group::semidirect_general(&plane, &cp, &powers_of(&shear, p))
}

pub fn build_named(name: &str) -> Result<Group> {
    let g = match name {
        "A4" => {
            // C3 permuting the three involutions of C2 x C2
            let c2 = group::make_cyclic(2)?;
            let v4 = group::direct_product(&c2, &c2)?;
            group::semidirect_general(&v4, &group::make_cyclic(3)?, &powers_of(&[0, 2, 3, 1], 3))?
        }
        "G16_3" => {
            // (C4 x C2) ⋊ C2 with a ↦ ab, b ↦ b
            let base = group::direct_product(&group::make_cyclic(4)?, &group::make_cyclic(2)?)?;
            let twist: Vec<usize> = (0..8).map(|v| (v / 2) * 2 + (v / 2 + v % 2) % 2).collect();
            group::semidirect_general(&base, &group::make_cyclic(2)?, &powers_of(&twist, 2))?
        }
        "Pauli16" => {
            // central product D8 ∘ C4: identify r² in D8 with the square in C4
            let g = group::direct_product(&group::make_dihedral(8)?, &group::make_cyclic(4)?)?;
            let diag = subgroup_generated(&g, &[2 * 4 + 2])?;
            group::quotient(&g, &diag)?
        }
        "SL23" => {
            // Q8 ⋊ C3 rotating i -> j -> k
            let q8 = group::make_dicyclic(2)?;
            let rot = hom_from_generators(&q8, &[1, 4], &[4, 5], &q8)?;
            group::semidirect_general(&q8, &group::make_cyclic(3)?, &powers_of(&rot, 3))?
        }
        "S4" => permutation_group(name, 4, &[vec![1, 2, 3, 0], vec![1, 0, 2, 3]])?,
        "A5" => permutation_group(name, 5, &[vec![1, 2, 0, 3, 4], vec![1, 2, 3, 4, 0]])?,
        "Heis27" => heisenberg(3)?,
        "Heis125" => heisenberg(5)?,
        _ => return Err(Error::param(format!("unknown group name '{name}'"))),
    };
    Ok(g.with_label(name))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub order: usize,
    pub recipe: GroupSpec,
    /// Position in the standard numbering of groups of this order, for
    /// orders up to 16.
    pub iso_tag: Option<usize>,
}

impl CatalogEntry {
    fn new(name: &str, iso_tag: Option<usize>) -> CatalogEntry {
        let recipe = GroupSpec::parse(name).expect("catalog recipes parse");
        CatalogEntry {
            name: recipe.canonical(),
            order: recipe.order(),
            recipe,
            iso_tag,
        }
    }

    pub fn build(&self) -> Result<Group> {
        self.recipe.build()
    }
}

fn partitions(k: u32, max: u32) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=k.min(max)).rev() {
        for mut rest in partitions(k - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Labels of all abelian groups of order `n` in invariant-factor form
/// (largest factor first), e.g. `C12xC2`.
pub fn abelian_labels(n: usize) -> Vec<String> {
    if n == 1 {
        return vec!["C1".into()];
    }
    let mut combos: Vec<Vec<usize>> = vec![Vec::new()];
    for (p, k) in factorize(n as u64) {
        let mut next = Vec::new();
        for combo in &combos {
            for part in partitions(k, k) {
                let len = combo.len().max(part.len());
                let factors: Vec<usize> = (0..len)
                    .map(|i| {
                        combo.get(i).copied().unwrap_or(1)
                            * part.get(i).map_or(1, |&e| (p as usize).pow(e))
                    })
                    .collect();
                next.push(factors);
            }
        }
        combos = next;
    }
    combos
        .into_iter()
        .map(|fs| {
            fs.iter()
                .map(|f| format!("C{f}"))
                .collect::<Vec<_>>()
                .join("x")
        })
        .collect()
}

/// The non-abelian groups of order at most 16, with their standard
/// numbering positions.
const SMALL_NONABELIAN: &[(&str, usize)] = &[
    ("D6", 1),
    ("D8", 3),
    ("Q8", 4),
    ("D10", 1),
    ("Dic3", 1),
    ("A4", 3),
    ("D12", 4),
    ("D14", 1),
    ("G16_3", 3),
    ("SDP(4,4,3)", 4),
    ("SDP(8,2,5)", 6),
    ("D16", 7),
    ("SDP(8,2,3)", 8),
    ("Q16", 9),
    ("D8xC2", 11),
    ("Q8xC2", 12),
    ("Pauli16", 13),
];

fn abelian_tag(label: &str) -> Option<usize> {
    const TAGS: &[(&str, usize)] = &[
        ("C4", 1),
        ("C2xC2", 2),
        ("C6", 2),
        ("C8", 1),
        ("C4xC2", 2),
        ("C2xC2xC2", 5),
        ("C9", 1),
        ("C3xC3", 2),
        ("C10", 2),
        ("C12", 2),
        ("C6xC2", 5),
        ("C14", 2),
        ("C16", 1),
        ("C4xC4", 2),
        ("C8xC2", 5),
        ("C4xC2xC2", 10),
        ("C2xC2xC2xC2", 14),
    ];
    TAGS.iter()
        .find(|(l, _)| *l == label)
        .map(|&(_, t)| t)
        .or(Some(1))
}

/// One `t` per cyclic subgroup `<t>` of the units mod `m` whose order is
/// greater than 1 and divides `n`. Replacing `t` by another generator of
/// `<t>` gives an isomorphic group.
fn metacyclic_twists(m: usize, n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for t in 2..m {
        if gcd(t as u64, m as u64) != 1 {
            continue;
        }
        let mut d = 1;
        let mut x = t;
        while x != 1 {
            x = x * t % m;
            d += 1;
        }
        if !n.is_multiple_of(d) {
            continue;
        }
        let mut smallest = t;
        let mut y = 1;
        for j in 1..d {
            y = y * t % m;
            if gcd(j as u64, d as u64) == 1 {
                smallest = smallest.min(y);
            }
        }
        if smallest == t {
            out.push(t);
        }
    }
    out
}

/// All catalog entries of order at most [`CATALOG_MAX_ORDER`], sorted by
/// order and then name.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = Vec::new();
    let mut names = HashSet::new();
    let mut push = |out: &mut Vec<CatalogEntry>, name: &str, tag: Option<usize>| {
        let e = CatalogEntry::new(name, tag);
        if e.order <= CATALOG_MAX_ORDER && names.insert(e.name.clone()) {
            out.push(e);
        }
    };

    for n in 1..=CATALOG_MAX_ORDER {
        for label in abelian_labels(n) {
            let tag = if n <= 16 { abelian_tag(&label) } else { None };
            push(&mut out, &label, tag);
        }
    }
    for &(name, tag) in SMALL_NONABELIAN {
        push(&mut out, name, Some(tag));
    }

    // Beyond order 16: families, not up to isomorphism.
    for two_n in (18..=CATALOG_MAX_ORDER).step_by(2) {
        push(&mut out, &format!("D{two_n}"), None);
    }
    for n in 5..=CATALOG_MAX_ORDER / 4 {
        push(&mut out, &format!("Dic{n}"), None);
    }
    for m in 3..=CATALOG_MAX_ORDER / 2 {
        for n in 2..=CATALOG_MAX_ORDER / m {
            if m * n <= 16 {
                continue;
            }
            for t in metacyclic_twists(m, n) {
                push(&mut out, &format!("SDP({m},{n},{t})"), None);
            }
        }
    }
    let small: Vec<&str> = SMALL_NONABELIAN
        .iter()
        .map(|&(n, _)| n)
        .filter(|n| !n.contains('x'))
        .collect();
    for g in &small {
        let go = GroupSpec::parse(g).unwrap().order();
        for a in 2..=CATALOG_MAX_ORDER / go {
            if go * a <= 16 {
                continue;
            }
            for label in abelian_labels(a) {
                push(&mut out, &format!("{g}x{label}"), None);
            }
        }
    }
    for name in [
        "SL23",
        "S4",
        "Heis27",
        "A5",
        "Heis125",
        "Q8xQ8",
        "Q8xD8",
        "SL23xC2",
        "S4xC2",
        "Heis27xC3",
        "Q8xC2xC2xC2xC2",
        "SDP(4,4,3)xC2xC2xC2",
        "SDP(4,4,3)xSDP(4,4,3)",
        "SDP(9,9,4)",
    ] {
        push(&mut out, name, None);
    }

    out.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.name.cmp(&b.name)));
    out
}

/// Entries with `min <= order <= max`.
pub fn entries_in(min: usize, max: usize) -> Vec<CatalogEntry> {
    catalog()
        .into_iter()
        .filter(|e| e.order >= min && e.order <= max)
        .collect()
}

/// Isomorphism invariants used to tell catalog entries apart.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Invariants {
    pub order: usize,
    pub abelian: bool,
    pub exponent: u64,
    pub center_order: usize,
    /// element order -> number of elements of that order
    pub order_histogram: BTreeMap<usize, usize>,
    /// Number of distinct squares `x²`.
    pub square_count: usize,
}

pub fn invariants(g: &Group) -> Invariants {
    let mut hist = BTreeMap::new();
    for x in g.elements() {
        *hist.entry(g.order_of(x)).or_insert(0) += 1;
    }
    let squares = ElementSet::from_indices(g.order(), g.elements().map(|x| g.mul(x, x)));
    Invariants {
        order: g.order(),
        abelian: g.is_abelian(),
        exponent: exponent(g),
        center_order: center(g).size(),
        order_histogram: hist,
        square_count: squares.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_groups_build() {
        for name in named_groups() {
            let g = build_named(name).unwrap();
            assert_eq!(g.order(), named_order(name).unwrap(), "{name}");
            assert_eq!(g.label(), name);
        }
        assert!(!build_named("A4").unwrap().is_abelian());
        assert_eq!(exponent(&build_named("Heis27").unwrap()), 3);
        assert_eq!(center(&build_named("SL23").unwrap()).size(), 2);
        assert_eq!(center(&build_named("A5").unwrap()).size(), 1);
        assert!(build_named("nope").is_err());
    }

    #[test]
    fn a4_has_no_subgroup_of_order_six() {
        let l = crate::lattice::all_subgroups(&build_named("A4").unwrap()).unwrap();
        assert!(l.subgroups().iter().all(|h| h.size() != 6));
        assert_eq!(l.len(), 10);
    }

    #[test]
    fn abelian_label_counts() {
        assert_eq!(abelian_labels(16).len(), 5);
        assert_eq!(abelian_labels(12), vec!["C12", "C6xC2"]);
        assert_eq!(abelian_labels(1), vec!["C1"]);
        assert_eq!(abelian_labels(64).len(), 11);
        assert_eq!(abelian_labels(72).len(), 6);
    }

    #[test]
    fn twists() {
        assert_eq!(metacyclic_twists(4, 4), vec![3]);
        assert_eq!(metacyclic_twists(9, 9), vec![4]);
        assert_eq!(metacyclic_twists(8, 2), vec![3, 5, 7]);
        assert!(metacyclic_twists(7, 2).contains(&6));
    }

    #[test]
    fn hom_extension_rejects_inconsistent_images() {
        let c4 = group::make_cyclic(4).unwrap();
        let c3 = group::make_cyclic(3).unwrap();
        assert!(hom_from_generators(&c4, &[1], &[1], &c3).is_err());
    }
}
