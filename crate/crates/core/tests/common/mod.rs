//! Brute-force reference computations. Nothing here calls the lattice,
//! CD or theorem modules; only the multiplication table is trusted.

#![allow(dead_code)]

use std::collections::BTreeSet;

use cdlattice::Group;

pub type Members = Vec<usize>;

pub fn element_order(g: &Group, x: usize) -> usize {
    let mut y = x;
    let mut k = 1;
    while y != g.identity() {
        y = g.mul(y, x);
        k += 1;
    }
    k
}

pub fn commute(g: &Group, a: usize, b: usize) -> bool {
    g.mul(a, b) == g.mul(b, a)
}

pub fn is_abelian(g: &Group) -> bool {
    (0..g.order()).all(|a| (0..a).all(|b| commute(g, a, b)))
}

/// Elements commuting with every member of `set`.
pub fn centralizer_scan(g: &Group, set: &[usize]) -> Members {
    (0..g.order())
        .filter(|&x| set.iter().all(|&h| commute(g, x, h)))
        .collect()
}

pub fn center_scan(g: &Group) -> Members {
    let all: Members = (0..g.order()).collect();
    centralizer_scan(g, &all)
}

/// Closure of `gens` under multiplication. Finite, so this is ⟨gens⟩.
pub fn closure(g: &Group, gens: &[usize]) -> Members {
    let mut set: BTreeSet<usize> = BTreeSet::from([g.identity()]);
    let mut frontier: Vec<usize> = vec![g.identity()];
    while let Some(x) = frontier.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set.into_iter().collect()
}

pub fn cyclic(g: &Group, x: usize) -> Members {
    closure(g, &[x])
}

pub fn is_normal_scan(g: &Group, h: &[usize]) -> bool {
    let set: BTreeSet<usize> = h.iter().copied().collect();
    (0..g.order()).all(|x| {
        let xi = g.inverse(x);
        h.iter().all(|&y| set.contains(&g.mul(g.mul(x, y), xi)))
    })
}

/// `|H|·|C_G(H)|` by scanning all elements against all members.
pub fn measure_scan(g: &Group, h: &[usize]) -> u64 {
    (h.len() * centralizer_scan(g, h).len()) as u64
}

/// `(p, n)` with `|G| = pⁿ`, if the order is a prime power above 1.
pub fn prime_power(mut n: usize) -> Option<(usize, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d)).unwrap();
    let mut k = 0;
    while n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    (n == 1).then_some((p, k))
}

pub fn log_p(mut x: usize, p: usize) -> Option<u32> {
    let mut k = 0;
    while x > 1 {
        if !x.is_multiple_of(p) {
            return None;
        }
        x /= p;
        k += 1;
    }
    Some(k)
}

pub fn is_elementary_abelian(g: &Group) -> bool {
    match prime_power(g.order()) {
        Some((p, _)) => {
            is_abelian(g) && (0..g.order()).all(|x| x == g.identity() || element_order(g, x) == p)
        }
        None => false,
    }
}

/// Every non-trivial cyclic subgroup has the same measure. Vacuous for
/// the trivial group, reported here as `None`.
pub fn equal_cyclic_measure_scan(g: &Group) -> Option<bool> {
    if g.order() == 1 {
        return None;
    }
    let mut values = (0..g.order())
        .filter(|&x| x != g.identity())
        .map(|x| (element_order(g, x) * centralizer_scan(g, &[x]).len()) as u64);
    let first = values.next().unwrap();
    Some(values.all(|v| v == first))
}

/// All subgroups by exhaustive subset search. Each candidate contains
/// the identity, has size dividing `|G|`, and is checked for closure.
/// Subsets of the non-identity elements are walked with Gosper's hack.
pub fn subgroups_by_subsets(g: &Group) -> BTreeSet<Members> {
    let n = g.order();
    assert!(n <= 32, "subset oracle limited to order 32");
    let e = g.identity();
    let others: Vec<usize> = (0..n).filter(|&x| x != e).collect();
    let r = others.len();
    let mut found = BTreeSet::new();
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        let k = d - 1;
        if k == 0 {
            found.insert(vec![e]);
            continue;
        }
        let limit: u64 = 1u64 << r;
        let mut sub: u64 = (1u64 << k) - 1;
        while sub < limit {
            let mut mask: u64 = 1u64 << e;
            let mut elems = Vec::with_capacity(d);
            elems.push(e);
            let mut bits = sub;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                mask |= 1u64 << others[i];
                elems.push(others[i]);
            }
            let closed = elems
                .iter()
                .all(|&a| elems.iter().all(|&b| mask >> g.mul(a, b) & 1 == 1));
            if closed {
                elems.sort_unstable();
                found.insert(elems);
            }
            let c = sub & sub.wrapping_neg();
            let rr = sub + c;
            sub = (((rr ^ sub) >> 2) / c) | rr;
        }
    }
    found
}
